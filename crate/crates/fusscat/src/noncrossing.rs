//! Noncrossing partitions below a Coxeter element, delta sequences, their encoding as facets
//! of a dual subword complex, Kreweras maps, shifts and increasing flips.

use crate::coxeter::{CoxeterSystem, Elem, Word};
use crate::error::{FcError, Result};
use crate::poset::Poset;
use crate::subword::{commutation_prefix, SubwordQuery};
use serde_json::{json, Value};
use std::collections::{HashMap, HashSet, VecDeque};

/// A Coxeter element of a standard parabolic subgroup, fixed by a reduced word, with the
/// reflection order it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcFrame {
    c: Word,
    ce: Elem,
    /// Positive roots of the parabolic in the order of invs(w_o(c)).
    order: Vec<usize>,
    rank: HashMap<usize, usize>,
}

/// (delta_0, ..., delta_m) with delta_0 ... delta_m = c and additive reflection lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaSequence {
    pub parts: Vec<Elem>,
}

impl DeltaSequence {
    pub fn m(&self) -> usize {
        self.parts.len() - 1
    }
}

/// One move of the Cambrian recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecurrenceStep {
    /// s lay in delta_0; the sequence now lives in the parabolic without s.
    Descend(NcFrame, DeltaSequence),
    Shift(NcFrame, DeltaSequence),
}

/// An edge of the Cambrian poset or graph: `to` is `from` after `steps` increasing flips at
/// the reflection `root`, which started in copy `color`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcFlipEdge {
    pub from: usize,
    pub to: usize,
    pub root: usize,
    pub color: usize,
    pub steps: usize,
}

impl NcFrame {
    /// `c` may use any subset of the generators, each at most once.
    pub fn new(sys: &CoxeterSystem, c: &[usize]) -> Result<NcFrame> {
        let mut seen = vec![false; sys.rank()];
        for &s in c {
            if s >= sys.rank() || std::mem::replace(&mut seen[s], true) {
                return Err(FcError::NotCoxeterElement(sys.word_string(c)));
            }
        }
        let w0 = sys.longest_in(c);
        let order = sys.inversion_sequence(&sys.sorting_word(&w0, c));
        let rank = order.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        Ok(NcFrame { c: c.to_vec(), ce: sys.word_elem(c), order, rank })
    }

    pub fn word(&self) -> &[usize] {
        &self.c
    }

    pub fn element(&self) -> &Elem {
        &self.ce
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    /// Reflections (as positive roots) in increasing c-order.
    pub fn reflection_order(&self) -> &[usize] {
        &self.order
    }

    pub fn n_reflections(&self) -> usize {
        self.order.len()
    }

    pub fn is_noncrossing(&self, sys: &CoxeterSystem, w: &Elem) -> bool {
        sys.absolute_leq(w, &self.ce)
    }

    /// [e, c] in absolute order, breadth first with reflections in c-order.
    pub fn elements(&self, sys: &CoxeterSystem) -> Vec<Elem> {
        let mut out = vec![sys.identity()];
        let mut seen: HashSet<Elem> = out.iter().cloned().collect();
        let mut queue = VecDeque::from([sys.identity()]);
        while let Some(w) = queue.pop_front() {
            let l = sys.reflection_length(&w);
            for &r in &self.order {
                let x = sys.mul(&w, sys.reflection(r));
                if seen.contains(&x) || sys.reflection_length(&x) != l + 1 || !self.is_noncrossing(sys, &x) {
                    continue;
                }
                seen.insert(x.clone());
                out.push(x.clone());
                queue.push_back(x);
            }
        }
        out
    }

    /// The noncrossing partition lattice on `elements()`.
    pub fn lattice(&self, sys: &CoxeterSystem) -> (Vec<Elem>, Poset) {
        let els = self.elements(sys);
        let mut rel = Vec::new();
        for (i, u) in els.iter().enumerate() {
            for (j, w) in els.iter().enumerate() {
                if i != j && sys.absolute_leq(u, w) {
                    rel.push((i, j));
                }
            }
        }
        let p = Poset::from_relations(els.len(), &rel).expect("absolute order is acyclic");
        (els, p)
    }

    pub fn kreweras(&self, sys: &CoxeterSystem, w: &Elem) -> Result<Elem> {
        if !self.is_noncrossing(sys, w) {
            return Err(FcError::NotNoncrossing);
        }
        Ok(sys.mul(&self.ce, &sys.inverse(w)))
    }

    /// The reduced reflection word for w that increases in c-order, as positive roots.
    pub fn factorization(&self, sys: &CoxeterSystem, w: &Elem) -> Result<Vec<usize>> {
        if !self.is_noncrossing(sys, w) {
            return Err(FcError::NotNoncrossing);
        }
        let mut out = Vec::new();
        if self.factor_from(sys, w, 0, &mut out) {
            Ok(out)
        } else {
            Err(FcError::NotNoncrossing)
        }
    }

    fn factor_from(&self, sys: &CoxeterSystem, w: &Elem, start: usize, out: &mut Vec<usize>) -> bool {
        if w.is_identity() {
            return true;
        }
        let l = sys.reflection_length(w);
        for k in start..self.order.len() {
            let r = self.order[k];
            let rest = sys.mul(sys.reflection(r), w);
            if sys.reflection_length(&rest) + 1 != l {
                continue;
            }
            out.push(r);
            if self.factor_from(sys, &rest, k + 1, out) {
                return true;
            }
            out.pop();
        }
        false
    }

    pub fn is_delta(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> bool {
        if d.parts.is_empty() {
            return false;
        }
        let prod = d.parts.iter().fold(sys.identity(), |acc, x| sys.mul(&acc, x));
        let total: usize = d.parts.iter().map(|x| sys.reflection_length(x)).sum();
        prod == self.ce && total == self.rank()
    }

    fn check_delta(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Result<()> {
        if self.is_delta(sys, d) {
            Ok(())
        } else {
            Err(FcError::InvalidDelta)
        }
    }

    /// The bottom sequence (c, e, ..., e).
    pub fn bottom(&self, sys: &CoxeterSystem, m: usize) -> DeltaSequence {
        let mut parts = vec![sys.identity(); m + 1];
        parts[0] = self.ce.clone();
        DeltaSequence { parts }
    }

    /// (c w_1^-1, w_1 w_2^-1, ..., w_{m-1} w_m^-1, w_m) for c >= w_1 >= ... >= w_m.
    pub fn chain_to_delta(&self, sys: &CoxeterSystem, chain: &[Elem]) -> Result<DeltaSequence> {
        let mut parts = Vec::with_capacity(chain.len() + 1);
        let mut prev = self.ce.clone();
        for w in chain {
            parts.push(sys.mul(&prev, &sys.inverse(w)));
            prev = w.clone();
        }
        parts.push(prev);
        let d = DeltaSequence { parts };
        if self.is_delta(sys, &d) {
            Ok(d)
        } else {
            Err(FcError::InvalidChain)
        }
    }

    /// w_i = delta_i ... delta_m.
    pub fn delta_to_chain(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Result<Vec<Elem>> {
        self.check_delta(sys, d)?;
        let mut chain = vec![sys.identity(); d.m()];
        let mut acc = sys.identity();
        for i in (1..=d.m()).rev() {
            acc = sys.mul(&d.parts[i], &acc);
            chain[i - 1] = acc.clone();
        }
        Ok(chain)
    }

    /// (delta_1, ..., delta_m, c^-1 delta_0 c).
    pub fn m_kreweras(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Result<DeltaSequence> {
        self.check_delta(sys, d)?;
        let mut parts: Vec<Elem> = d.parts[1..].to_vec();
        parts.push(sys.conj(&sys.inverse(&self.ce), &d.parts[0]));
        Ok(DeltaSequence { parts })
    }

    /// All delta sequences with m + 1 parts, in the order of the multichains they come from.
    pub fn deltas(&self, sys: &CoxeterSystem, m: usize) -> Vec<DeltaSequence> {
        let els = self.elements(sys);
        let below: Vec<Vec<usize>> = (0..els.len())
            .map(|j| (0..els.len()).filter(|&i| sys.absolute_leq(&els[i], &els[j])).collect())
            .collect();
        let top = els.iter().position(|w| *w == self.ce).expect("c is noncrossing");
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(m);
        self.chains_from(sys, &els, &below, top, m, &mut chain, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn chains_from(
        &self,
        sys: &CoxeterSystem,
        els: &[Elem],
        below: &[Vec<usize>],
        top: usize,
        left: usize,
        chain: &mut Vec<Elem>,
        out: &mut Vec<DeltaSequence>,
    ) {
        if left == 0 {
            out.push(self.chain_to_delta(sys, chain).expect("multichain"));
            return;
        }
        for &i in &below[top] {
            chain.push(els[i].clone());
            self.chains_from(sys, els, below, i, left - 1, chain, out);
            chain.pop();
        }
    }

    /// The reflection word invs_R(w_o(c))^(m+1) carrying the facets.
    pub fn facet_word(&self, m: usize) -> Word {
        self.order.iter().copied().cycle().take(self.order.len() * (m + 1)).collect()
    }

    pub fn subword_query(&self, sys: &CoxeterSystem, m: usize) -> Result<SubwordQuery> {
        SubwordQuery::reflections(sys, self.facet_word(m), self.ce.clone(), self.rank())
    }

    /// Positions in `facet_word(m)`: delta_i's factorization goes into copy i.
    pub fn delta_to_facet(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Result<Vec<usize>> {
        self.check_delta(sys, d)?;
        let n = self.order.len();
        let mut out = Vec::with_capacity(self.rank());
        for (i, x) in d.parts.iter().enumerate() {
            for r in self.factorization(sys, x)? {
                out.push(i * n + self.rank[&r]);
            }
        }
        Ok(out)
    }

    pub fn facet_to_delta(&self, sys: &CoxeterSystem, facet: &[usize], m: usize) -> Result<DeltaSequence> {
        let n = self.order.len();
        if facet.windows(2).any(|w| w[0] >= w[1]) || facet.iter().any(|&p| p >= n * (m + 1)) {
            return Err(FcError::NotAFacet);
        }
        let mut parts = vec![sys.identity(); m + 1];
        for &p in facet {
            parts[p / n] = sys.mul(&parts[p / n], sys.reflection(self.order[p % n]));
        }
        let d = DeltaSequence { parts };
        if self.is_delta(sys, &d) && facet.len() == self.rank() {
            Ok(d)
        } else {
            Err(FcError::NotAFacet)
        }
    }

    /// (root, color) of each facet position.
    pub fn colored_reflections(&self, facet: &[usize]) -> Vec<(usize, usize)> {
        let n = self.order.len();
        facet.iter().map(|&p| (self.order[p % n], p / n)).collect()
    }

    pub fn support(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Vec<usize> {
        let w = d.parts[1..].iter().fold(sys.identity(), |acc, x| sys.mul(&acc, x));
        sys.support(&w)
    }

    /// The frame for s^-1 c s, when s is initial in c up to commutations.
    pub fn shifted(&self, sys: &CoxeterSystem, s: usize) -> Result<NcFrame> {
        let pos = commutation_prefix(sys, &self.c, &[s]).ok_or(FcError::NotInitial)?;
        let mut c = self.c.clone();
        c.remove(pos[0]);
        c.push(s);
        NcFrame::new(sys, &c)
    }

    fn contains(&self, sys: &CoxeterSystem, x: &Elem, s: usize) -> Result<bool> {
        Ok(self.factorization(sys, x)?.contains(&s))
    }

    /// Shift_s, landing over s^-1 c s.
    pub fn shift(&self, sys: &CoxeterSystem, d: &DeltaSequence, s: usize) -> Result<(NcFrame, DeltaSequence)> {
        self.check_delta(sys, d)?;
        let next = self.shifted(sys, s)?;
        let g = sys.gen(s);
        let m = d.m();
        let mut parts: Vec<Elem>;
        if self.contains(sys, &d.parts[0], s)? {
            parts = d.parts.clone();
            parts[0] = sys.gen_mul(s, &parts[0]);
            parts[m] = sys.mul_gen(&parts[m], s);
        } else {
            parts = d.parts.iter().map(|x| sys.conj(&g, x)).collect();
            let mut hit = None;
            for i in 1..=m {
                if self.contains(sys, &d.parts[i], s)? {
                    hit = Some(i);
                    break;
                }
            }
            if let Some(i) = hit {
                parts[i - 1] = sys.gen_mul(s, &d.parts[i - 1]);
                parts[i] = sys.mul_gen(&d.parts[i], s);
            }
        }
        Ok((next, DeltaSequence { parts }))
    }

    /// Shifts along every letter of c in turn.
    pub fn cambrian_rotation(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Result<DeltaSequence> {
        let mut frame = self.clone();
        let mut cur = d.clone();
        for &s in &self.c {
            let (f, x) = frame.shift(sys, &cur, s)?;
            frame = f;
            cur = x;
        }
        Ok(cur)
    }

    /// With s = the first letter of c: strip s from delta_0 if it occurs there, otherwise shift.
    pub fn recurrence_step(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Result<RecurrenceStep> {
        let &s = self.c.first().ok_or(FcError::NotInitial)?;
        self.check_delta(sys, d)?;
        if self.contains(sys, &d.parts[0], s)? {
            let mut parts = d.parts.clone();
            parts[0] = sys.gen_mul(s, &parts[0]);
            let frame = NcFrame::new(sys, &self.c[1..])?;
            Ok(RecurrenceStep::Descend(frame, DeltaSequence { parts }))
        } else {
            let (f, x) = self.shift(sys, d, s)?;
            Ok(RecurrenceStep::Shift(f, x))
        }
    }

    /// Recurrence steps until the rank drops to zero.
    pub fn recurrence_path(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Result<Vec<(NcFrame, DeltaSequence)>> {
        let mut out = vec![(self.clone(), d.clone())];
        let cap = 4 * (self.order.len() + 1) * (d.m() + 2) * (self.rank() + 1);
        while out.last().unwrap().0.rank() > 0 {
            if out.len() > cap {
                return Err(FcError::InvalidDelta);
            }
            let (f, x) = out.last().unwrap();
            let next = match f.recurrence_step(sys, x)? {
                RecurrenceStep::Descend(f, x) | RecurrenceStep::Shift(f, x) => (f, x),
            };
            out.push(next);
        }
        Ok(out)
    }

    /// Move the letter at position `p` of a facet one copy to the right (or left), conjugating
    /// the reflections it passes.
    fn flip(&self, sys: &CoxeterSystem, facet: &[usize], m: usize, p: usize, up: bool) -> Result<Vec<usize>> {
        let n = self.order.len();
        facet.binary_search(&p).map_err(|_| FcError::NotFlippable)?;
        let copy = p / n;
        if (up && copy >= m) || (!up && copy == 0) {
            return Err(FcError::NotFlippable);
        }
        let r = self.order[p % n];
        let t = sys.reflection(r);
        let (lo, hi) = if up { (p, p + n) } else { (p - n, p) };
        let passed: Vec<usize> = facet.iter().copied().filter(|&q| q > lo && q < hi && q != p).collect();
        let mut out: Vec<usize> = facet.iter().copied().filter(|&q| q <= lo || q >= hi).filter(|&q| q != p).collect();
        out.push(if up { hi } else { lo });
        // The conjugates land in the window, possibly reordered among commuting reflections.
        for q in passed {
            let x = sys.conj(t, sys.reflection(self.order[q % n]));
            let root = sys.reflection_index(&x).expect("conjugate of a reflection");
            let mut pos = lo - lo % n + self.rank[&root];
            if pos <= lo {
                pos += n;
            }
            out.push(pos);
        }
        out.sort_unstable();
        if !self.subword_query(sys, m)?.is_facet(sys, &out) {
            return Err(FcError::NotFlippable);
        }
        Ok(out)
    }

    /// Increasing flip at the reflection in position `p`.
    pub fn flip_up(&self, sys: &CoxeterSystem, facet: &[usize], m: usize, p: usize) -> Result<Vec<usize>> {
        self.flip(sys, facet, m, p, true)
    }

    pub fn flip_down(&self, sys: &CoxeterSystem, facet: &[usize], m: usize, p: usize) -> Result<Vec<usize>> {
        self.flip(sys, facet, m, p, false)
    }

    /// Facets of the complex in lexicographic order together with their delta sequences.
    pub fn facets(&self, sys: &CoxeterSystem, m: usize) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> =
            self.deltas(sys, m).iter().map(|d| self.delta_to_facet(sys, d).expect("valid delta")).collect();
        v.sort();
        v
    }

    /// Flip edges between facets; `max_steps` = 1 gives the Cambrian poset, m the Cambrian graph.
    pub fn flip_edges(&self, sys: &CoxeterSystem, facets: &[Vec<usize>], m: usize, max_steps: usize) -> Vec<NcFlipEdge> {
        let index: HashMap<&[usize], usize> = facets.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let n = self.order.len();
        let mut out = Vec::new();
        for (a, f) in facets.iter().enumerate() {
            for &p in f {
                let root = self.order[p % n];
                let color = p / n;
                let mut cur = f.clone();
                let mut at = p;
                for k in 1..=max_steps {
                    if color + k > m {
                        break;
                    }
                    cur = self.flip_up(sys, &cur, m, at).expect("increasing flip stays in the complex");
                    at += n;
                    out.push(NcFlipEdge { from: a, to: index[cur.as_slice()], root, color, steps: k });
                }
            }
        }
        out
    }

    /// The Cambrian poset on facets (lexicographic order) and its single-step flips.
    pub fn cambrian_poset(&self, sys: &CoxeterSystem, m: usize) -> (Vec<Vec<usize>>, Poset, Vec<NcFlipEdge>) {
        let facets = self.facets(sys, m);
        let edges = self.flip_edges(sys, &facets, m, 1);
        let rel: Vec<(usize, usize)> = edges.iter().map(|e| (e.from, e.to)).collect();
        let p = Poset::from_relations(facets.len(), &rel).expect("flips are acyclic");
        (facets, p, edges)
    }

    pub fn cambrian_graph(&self, sys: &CoxeterSystem, m: usize) -> (Vec<Vec<usize>>, Vec<NcFlipEdge>) {
        let facets = self.facets(sys, m);
        let edges = self.flip_edges(sys, &facets, m, m);
        (facets, edges)
    }

    pub fn delta_string(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> String {
        let parts: Vec<String> = d.parts.iter().map(|x| sys.elem_string(x)).collect();
        format!("({})", parts.join(","))
    }

    /// Each part as its increasing reflection word.
    pub fn delta_json(&self, sys: &CoxeterSystem, d: &DeltaSequence) -> Value {
        let parts: Vec<Value> = d
            .parts
            .iter()
            .map(|x| {
                let f = self.factorization(sys, x).unwrap_or_default();
                Value::from(f.iter().map(|&r| sys.reflection_string(r)).collect::<Vec<_>>())
            })
            .collect();
        Value::from(parts)
    }

    pub fn facet_json(&self, sys: &CoxeterSystem, facet: &[usize]) -> Value {
        Value::from(
            self.colored_reflections(facet)
                .into_iter()
                .map(|(r, k)| json!([sys.reflection_string(r), k]))
                .collect::<Vec<_>>(),
        )
    }
}
