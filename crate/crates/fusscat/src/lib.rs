//! Finite Coxeter groups, positive Artin monoids and the higher Fuss-Catalan families
//! (noncrossing partitions, sortable elements and cluster complexes), computed exactly.

pub mod cluster;
pub mod coxeter;
pub mod error;
pub mod field;
pub mod garside;
pub mod noncrossing;
pub mod poset;
pub mod sortable;
pub mod subword;

pub use cluster::ClusterComplex;
pub use coxeter::{CartanChoice, ColoredRoot, CoxeterSystem, Elem, Parabolic, Word};
pub use error::{FcError, Result};
pub use garside::{Braid, MWeakInterval};
pub use noncrossing::{DeltaSequence, NcFrame};
pub use poset::Poset;
pub use sortable::{SortFrame, SortableElement};
pub use subword::{SubwordComplex, SubwordQuery};
