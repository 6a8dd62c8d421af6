//! The positive Artin monoid in Garside normal form.

use crate::coxeter::{CoxeterSystem, Elem, Word};
use crate::error::{FcError, Result};
use std::collections::HashMap;

/// A positive braid stored as its left-greedy normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Braid {
    factors: Vec<Elem>,
}

pub const DEFAULT_CAP: usize = 1_000_000;

impl Braid {
    pub fn identity() -> Braid {
        Braid { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[Elem] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn length(&self) -> usize {
        self.factors.iter().map(|f| f.length()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn from_elem(w: &Elem) -> Braid {
        if w.is_identity() {
            Braid::identity()
        } else {
            Braid { factors: vec![w.clone()] }
        }
    }

    /// Normal form of the product of arbitrary factors.
    pub fn from_factors(sys: &CoxeterSystem, factors: Vec<Elem>) -> Braid {
        let mut b = Braid { factors };
        b.settle(sys);
        b
    }

    pub fn from_word(sys: &CoxeterSystem, word: &[usize]) -> Braid {
        let mut b = Braid::identity();
        for &s in word {
            b.push_atom(sys, s);
        }
        b
    }

    /// The m-th power of the longest element.
    pub fn w0_power(sys: &CoxeterSystem, m: usize) -> Braid {
        if sys.rank() == 0 {
            return Braid::identity();
        }
        Braid { factors: vec![sys.longest(); m] }
    }

    /// Concatenation of the lexicographically first reduced words of the factors.
    pub fn word(&self, sys: &CoxeterSystem) -> Word {
        self.factors.iter().flat_map(|f| sys.reduced_word(f)).collect()
    }

    pub fn to_string(&self, sys: &CoxeterSystem) -> String {
        if self.factors.is_empty() {
            return "e".to_string();
        }
        self.factors.iter().map(|f| sys.elem_string(f)).collect::<Vec<_>>().join(".")
    }

    pub fn parse(sys: &CoxeterSystem, text: &str) -> Result<Braid> {
        Ok(Braid::from_word(sys, &sys.parse_word(text)?))
    }

    /// The image in W.
    pub fn project(&self, sys: &CoxeterSystem) -> Elem {
        self.factors.iter().fold(sys.identity(), |acc, f| sys.mul(&acc, f))
    }

    /// Left-weight the pair (a, b): move left descents of b that are not right descents of a.
    fn weight_pair(sys: &CoxeterSystem, a: &mut Elem, b: &mut Elem) -> bool {
        let mut changed = false;
        loop {
            let t = sys
                .left_descents(b)
                .into_iter()
                .find(|&t| !sys.has_right_descent(a, t));
            match t {
                Some(t) => {
                    *a = sys.mul_gen(a, t);
                    *b = sys.gen_mul(t, b);
                    changed = true;
                }
                None => return changed,
            }
        }
    }

    fn settle(&mut self, sys: &CoxeterSystem) {
        self.factors.retain(|f| !f.is_identity());
        loop {
            let mut changed = false;
            for i in (1..self.factors.len()).rev() {
                let (l, r) = self.factors.split_at_mut(i);
                if Braid::weight_pair(sys, &mut l[i - 1], &mut r[0]) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.factors.retain(|f| !f.is_identity());
    }

    pub fn push_atom(&mut self, sys: &CoxeterSystem, s: usize) {
        match self.factors.last_mut() {
            Some(last) if !sys.has_right_descent(last, s) => {
                *last = sys.mul_gen(last, s);
                self.settle(sys);
            }
            _ => self.factors.push(sys.gen(s)),
        }
    }

    pub fn mul_atom(&self, sys: &CoxeterSystem, s: usize) -> Braid {
        let mut b = self.clone();
        b.push_atom(sys, s);
        b
    }

    pub fn multiply(&self, sys: &CoxeterSystem, other: &Braid) -> Braid {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Braid::from_factors(sys, factors)
    }

    pub fn atom_left_divides(&self, sys: &CoxeterSystem, s: usize) -> bool {
        self.factors.first().is_some_and(|f| sys.has_left_descent(f, s))
    }

    /// s^-1 w for an atom s dividing w on the left.
    pub fn strip_atom(&self, sys: &CoxeterSystem, s: usize) -> Result<Braid> {
        if !self.atom_left_divides(sys, s) {
            return Err(FcError::NotDivisible);
        }
        let mut factors = self.factors.clone();
        factors[0] = sys.gen_mul(s, &factors[0]);
        Ok(Braid::from_factors(sys, factors))
    }

    pub fn left_divides(&self, sys: &CoxeterSystem, w: &Braid) -> bool {
        self.quotient(sys, w).is_ok()
    }

    /// v with self * v = w.
    pub fn quotient(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Braid> {
        if self.length() > w.length() {
            return Err(FcError::NotDivisible);
        }
        let mut cur = w.clone();
        for s in self.word(sys) {
            cur = cur.strip_atom(sys, s)?;
        }
        Ok(cur)
    }

    /// Meet in left-divisibility order, by stripping common atoms.
    pub fn gcd(&self, sys: &CoxeterSystem, other: &Braid) -> Braid {
        let mut u = self.clone();
        let mut v = other.clone();
        let mut g = Braid::identity();
        while let Some(s) =
            (0..sys.rank()).find(|&s| u.atom_left_divides(sys, s) && v.atom_left_divides(sys, s))
        {
            g.push_atom(sys, s);
            u = u.strip_atom(sys, s).unwrap();
            v = v.strip_atom(sys, s).unwrap();
        }
        g
    }

    /// Join in left-divisibility order, by right word reversing.
    pub fn lcm(&self, sys: &CoxeterSystem, other: &Braid) -> Braid {
        let mut seq: Vec<(usize, bool)> = self.word(sys).into_iter().rev().map(|s| (s, false)).collect();
        seq.extend(other.word(sys).into_iter().map(|s| (s, true)));
        while let Some(i) = (0..seq.len().saturating_sub(1)).find(|&i| !seq[i].1 && seq[i + 1].1) {
            let (s, t) = (seq[i].0, seq[i + 1].0);
            let replacement: Vec<(usize, bool)> = if s == t {
                Vec::new()
            } else {
                let k = sys.m(s, t) as usize - 1;
                let pos = alternating(t, s, k);
                let neg = alternating(s, t, k);
                pos.into_iter()
                    .map(|x| (x, true))
                    .chain(neg.into_iter().rev().map(|x| (x, false)))
                    .collect()
            };
            seq.splice(i..i + 2, replacement);
        }
        let tail: Vec<usize> = seq.iter().filter(|x| x.1).map(|x| x.0).collect();
        let mut out = self.clone();
        for s in tail {
            out.push_atom(sys, s);
        }
        out
    }

    pub fn left_descents(&self, sys: &CoxeterSystem) -> Vec<usize> {
        (0..sys.rank()).filter(|&s| self.atom_left_divides(sys, s)).collect()
    }

    pub fn right_descents(&self, sys: &CoxeterSystem) -> Vec<usize> {
        self.rev(sys).left_descents(sys)
    }

    pub fn in_m_weak(&self, m: usize) -> bool {
        self.degree() <= m
    }

    pub fn rev(&self, sys: &CoxeterSystem) -> Braid {
        let mut w = self.word(sys);
        w.reverse();
        Braid::from_word(sys, &w)
    }

    /// The braid v with v * w = w_o^m.
    pub fn phi(&self, sys: &CoxeterSystem, m: usize) -> Result<Braid> {
        if self.degree() > m {
            return Err(FcError::NotInInterval);
        }
        let top = Braid::w0_power(sys, m);
        let q = self.rev(sys).quotient(sys, &top).map_err(|_| FcError::NotInInterval)?;
        Ok(q.rev(sys))
    }

    /// w = w_J * w^J with w_J = gcd(w, w_o(J)^m).
    pub fn parabolic_factor(&self, sys: &CoxeterSystem, j: &[usize], m: usize) -> Result<(Braid, Braid)> {
        if self.degree() > m {
            return Err(FcError::NotInInterval);
        }
        let wj = sys.longest_in(j);
        let top = if wj.is_identity() {
            Braid::identity()
        } else {
            Braid { factors: vec![wj; m] }
        };
        let low = self.gcd(sys, &top);
        let high = low.quotient(sys, self)?;
        Ok((low, high))
    }

    pub fn support(&self, sys: &CoxeterSystem) -> Vec<usize> {
        let mut v: Vec<usize> = self.factors.iter().flat_map(|f| sys.support(f)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Positions in c^infinity of the lexicographically first subword spelling this braid.
    pub fn sorting_positions(&self, sys: &CoxeterSystem, c: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        let n = c.len();
        let mut p = 0;
        while !cur.is_identity() {
            let s = c[p % n];
            if cur.atom_left_divides(sys, s) {
                out.push(p);
                cur = cur.strip_atom(sys, s).unwrap();
            }
            p += 1;
        }
        out
    }

    pub fn sorting_word(&self, sys: &CoxeterSystem, c: &[usize]) -> Word {
        let n = c.len();
        self.sorting_positions(sys, c).iter().map(|&p| c[p % n]).collect()
    }
}

fn alternating(a: usize, b: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// The interval [e, w_o^m] in right weak order on the positive monoid.
#[derive(Clone, Debug)]
pub struct MWeakInterval {
    pub m: usize,
    pub elements: Vec<Braid>,
    /// (lower, upper, atom) with upper = lower * atom.
    pub covers: Vec<(usize, usize, usize)>,
    index: HashMap<Braid, usize>,
}

impl MWeakInterval {
    pub fn enumerate(sys: &CoxeterSystem, m: usize, cap: usize) -> Result<MWeakInterval> {
        let mut elements = vec![Braid::identity()];
        let mut index = HashMap::new();
        index.insert(Braid::identity(), 0);
        let mut covers = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for s in 0..sys.rank() {
                let x = elements[i].mul_atom(sys, s);
                if x.degree() > m {
                    continue;
                }
                let j = match index.get(&x) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= cap {
                            return Err(FcError::TooLarge { cap });
                        }
                        index.insert(x.clone(), j);
                        elements.push(x);
                        j
                    }
                };
                covers.push((i, j, s));
            }
            i += 1;
        }
        Ok(MWeakInterval { m, elements, covers, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, b: &Braid) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        let top = self.elements.iter().map(|b| b.length()).max().unwrap_or(0);
        let mut v = vec![0; top + 1];
        for b in &self.elements {
            v[b.length()] += 1;
        }
        v
    }
}
