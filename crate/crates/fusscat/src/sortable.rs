//! Coxeter-sortable elements of the interval [e, w_o^m] in the positive monoid: sorting words,
//! skip sets, shifts, the sortable Cambrian lattice and the chain model in shard order.

use crate::coxeter::{ColoredRoot, CoxeterSystem, Elem, Word};
use crate::error::{FcError, Result};
use crate::garside::Braid;
use crate::noncrossing::{DeltaSequence, NcFrame};
use crate::poset::Poset;
use crate::subword::commutation_prefix;
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};

/// A Coxeter element of a standard parabolic (as a reduced word) together with m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortFrame {
    c: Word,
    m: usize,
}

/// A sortable element with its sorting positions in c^infinity and its skip set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortableElement {
    pub braid: Braid,
    pub positions: Vec<usize>,
    pub skips: Vec<ColoredRoot>,
}

impl SortableElement {
    pub fn to_json(&self, sys: &CoxeterSystem) -> Value {
        json!({
            "element": self.braid.to_string(sys),
            "positions": self.positions,
            "skips": self.skips.iter().map(|x| json!([sys.reflection_string(x.root), x.color])).collect::<Vec<_>>(),
        })
    }
}

/// One move of the Cambrian recurrence on sortable elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SortStep {
    /// s was a left ascent; the element is read in the parabolic without s.
    Descend(SortFrame, Braid),
    Strip(SortFrame, Braid),
}

impl SortFrame {
    pub fn new(sys: &CoxeterSystem, c: &[usize], m: usize) -> Result<SortFrame> {
        NcFrame::new(sys, c)?;
        Ok(SortFrame { c: c.to_vec(), m })
    }

    pub fn word(&self) -> &[usize] {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nc_frame(&self, sys: &CoxeterSystem) -> NcFrame {
        NcFrame::new(sys, &self.c).expect("checked on construction")
    }

    fn in_frame(&self, sys: &CoxeterSystem, w: &Braid) -> Result<()> {
        if w.degree() > self.m || w.support(sys).iter().any(|s| !self.c.contains(s)) {
            return Err(FcError::NotInInterval);
        }
        Ok(())
    }

    /// Positions in c^infinity of the c-sorting word.
    pub fn sorting_positions(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Vec<usize>> {
        self.in_frame(sys, w)?;
        Ok(w.sorting_positions(sys, &self.c))
    }

    pub fn sorting_word(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Word> {
        self.in_frame(sys, w)?;
        Ok(w.sorting_word(sys, &self.c))
    }

    /// The letters used in each copy of c must form a weakly decreasing chain of sets.
    pub fn is_sortable(&self, sys: &CoxeterSystem, w: &Braid) -> Result<bool> {
        let pos = self.sorting_positions(sys, w)?;
        let n = self.c.len();
        let copies = pos.last().map_or(0, |p| p / n + 1);
        let mut sets = vec![0u64; copies];
        for p in pos {
            sets[p / n] |= 1 << (p % n);
        }
        Ok(sets.windows(2).all(|x| x[1] & !x[0] == 0))
    }

    /// All sortable elements, generated by running the Cambrian recurrence backwards.
    pub fn sortables(&self, sys: &CoxeterSystem) -> Vec<Braid> {
        let top = self.m * sys.longest_in(&self.c).length();
        let mut memo = HashMap::new();
        let mut v = generate(sys, &self.c, self.m, top, &mut memo);
        v.sort_by_key(|b| (b.length(), b.clone()));
        v
    }

    /// All sortable elements, by filtering the interval.
    pub fn sortables_by_filter(&self, sys: &CoxeterSystem) -> Result<Vec<Braid>> {
        let iv = crate::garside::MWeakInterval::enumerate(sys, self.m, crate::garside::DEFAULT_CAP)?;
        let mut v: Vec<Braid> = iv
            .elements
            .into_iter()
            .filter(|b| self.is_sortable(sys, b).unwrap_or(false))
            .collect();
        v.sort_by_key(|b| (b.length(), b.clone()));
        Ok(v)
    }

    /// Garside factors checked one at a time against restricted Coxeter elements.
    pub fn factorwise_check(&self, sys: &CoxeterSystem, w: &Braid) -> Result<bool> {
        self.in_frame(sys, w)?;
        Ok(self.factor_frames(sys, w).is_some())
    }

    /// The Coxeter element for each Garside factor, if w is factorwise sortable.
    fn factor_frames(&self, sys: &CoxeterSystem, w: &Braid) -> Option<Vec<Word>> {
        let mut c = self.c.clone();
        let mut out = Vec::new();
        let mut prev: Option<&Elem> = None;
        for f in w.factors() {
            if let Some(p) = prev {
                let des = sys.right_descents(p);
                if sys.support(f).iter().any(|s| !des.contains(s)) {
                    return None;
                }
                c = restriction(sys, &c, p);
            }
            let one = SortFrame { c: c.clone(), m: 1 };
            if !one.is_sortable(sys, &Braid::from_elem(f)).ok()? {
                return None;
            }
            out.push(c.clone());
            prev = Some(f);
        }
        Some(out)
    }

    /// Concatenated sorting words of the Garside factors for their restricted Coxeter elements.
    pub fn garside_sorting_word(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Word> {
        self.in_frame(sys, w)?;
        let frames = self.factor_frames(sys, w).ok_or(FcError::NotInInterval)?;
        Ok(w.factors().iter().zip(frames).flat_map(|(f, c)| sys.sorting_word(f, &c)).collect())
    }

    /// Checked constructor for `SortableElement`.
    pub fn element(&self, sys: &CoxeterSystem, w: &Braid) -> Result<SortableElement> {
        if !self.is_sortable(sys, w)? {
            return Err(FcError::NotSortable);
        }
        Ok(SortableElement { braid: w.clone(), positions: self.sorting_positions(sys, w)?, skips: self.skip_set(sys, w)? })
    }

    /// The colored root where each letter of c is first skipped, ordered by color and then by
    /// the reflection order of c.
    pub fn skip_set(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Vec<ColoredRoot>> {
        if !self.is_sortable(sys, w)? {
            return Err(FcError::NotSortable);
        }
        let pos = self.sorting_positions(sys, w)?;
        let n = self.c.len();
        let word: Word = pos.iter().map(|&p| self.c[p % n]).collect();
        let used: BTreeSet<usize> = pos.iter().copied().collect();
        let mut v: Vec<ColoredRoot> = (0..n)
            .map(|i| {
                let mut q = i;
                while used.contains(&q) {
                    q += n;
                }
                let k = pos.partition_point(|&p| p < q);
                sys.act_colored_word(&word[..k], ColoredRoot::new(self.c[i], 0))
            })
            .collect();
        let rank = self.root_rank(sys);
        v.sort_by_key(|x| (x.color, rank[&x.root]));
        Ok(v)
    }

    fn root_rank(&self, sys: &CoxeterSystem) -> HashMap<usize, usize> {
        self.nc_frame(sys).reflection_order().iter().enumerate().map(|(i, &r)| (r, i)).collect()
    }

    /// Inverse of `skip_set`: read c^infinity and delete each letter from its first skip on.
    pub fn reconstruct(&self, sys: &CoxeterSystem, skips: &[ColoredRoot]) -> Result<Braid> {
        let n = self.c.len();
        if skips.len() != n {
            return Err(FcError::InvalidSkipSet);
        }
        let wanted: BTreeSet<ColoredRoot> = skips.iter().copied().collect();
        if wanted.len() != n {
            return Err(FcError::InvalidSkipSet);
        }
        let mut deleted = vec![false; n];
        let mut word = Vec::new();
        let cap = (self.m + 2) * (sys.longest_in(&self.c).length() + 1) * n.max(1);
        let mut p = 0;
        while deleted.iter().any(|d| !d) {
            if p > cap {
                return Err(FcError::InvalidSkipSet);
            }
            let i = p % n;
            p += 1;
            if deleted[i] {
                continue;
            }
            let s = self.c[i];
            if wanted.contains(&sys.act_colored_word(&word, ColoredRoot::new(s, 0))) {
                deleted[i] = true;
            } else {
                word.push(s);
            }
        }
        let b = Braid::from_word(sys, &word);
        if b.degree() > self.m || b.length() != word.len() {
            return Err(FcError::InvalidSkipSet);
        }
        let got: BTreeSet<ColoredRoot> = self.skip_set(sys, &b).map_err(|_| FcError::InvalidSkipSet)?.into_iter().collect();
        if got != wanted {
            return Err(FcError::InvalidSkipSet);
        }
        Ok(b)
    }

    /// Positions of the corresponding facet of the noncrossing subword complex.
    pub fn to_nc(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Vec<usize>> {
        let n = self.nc_frame(sys).n_reflections();
        let rank = self.root_rank(sys);
        let mut v: Vec<usize> = self
            .skip_set(sys, w)?
            .into_iter()
            .map(|x| x.color as usize * n + rank[&x.root])
            .collect();
        v.sort_unstable();
        Ok(v)
    }

    pub fn to_delta(&self, sys: &CoxeterSystem, w: &Braid) -> Result<DeltaSequence> {
        self.nc_frame(sys).facet_to_delta(sys, &self.to_nc(sys, w)?, self.m)
    }

    pub fn meet(&self, sys: &CoxeterSystem, u: &Braid, v: &Braid) -> Result<Braid> {
        let x = u.gcd(sys, v);
        self.element(sys, &x)?;
        Ok(x)
    }

    pub fn join(&self, sys: &CoxeterSystem, u: &Braid, v: &Braid) -> Result<Braid> {
        let x = u.lcm(sys, v);
        self.element(sys, &x)?;
        Ok(x)
    }

    /// Colored inversion multiset, read off the sorting word.
    pub fn colored_inversions(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Vec<ColoredRoot>> {
        let mut v = sys.colored_inversion_sequence(&self.sorting_word(sys, w)?);
        v.sort_unstable();
        Ok(v)
    }

    pub fn shifted(&self, sys: &CoxeterSystem, s: usize) -> Result<SortFrame> {
        let pos = commutation_prefix(sys, &self.c, &[s]).ok_or(FcError::NotInitial)?;
        let mut c = self.c.clone();
        c.remove(pos[0]);
        c.push(s);
        Ok(SortFrame { c, m: self.m })
    }

    /// w v s^m if s is a left ascent, s^-1 w otherwise; the result is read over s^-1 c s.
    pub fn shift(&self, sys: &CoxeterSystem, w: &Braid, s: usize) -> Result<(SortFrame, Braid)> {
        self.in_frame(sys, w)?;
        let next = self.shifted(sys, s)?;
        let x = if w.atom_left_divides(sys, s) {
            w.strip_atom(sys, s)?
        } else {
            w.lcm(sys, &Braid::from_word(sys, &vec![s; self.m]))
        };
        Ok((next, x))
    }

    pub fn cambrian_rotation(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Braid> {
        let mut frame = self.clone();
        let mut cur = w.clone();
        for &s in &self.c {
            let (f, x) = frame.shift(sys, &cur, s)?;
            frame = f;
            cur = x;
        }
        Ok(cur)
    }

    pub fn recurrence_step(&self, sys: &CoxeterSystem, w: &Braid) -> Result<SortStep> {
        let &s = self.c.first().ok_or(FcError::NotInitial)?;
        self.in_frame(sys, w)?;
        if w.atom_left_divides(sys, s) {
            let (f, x) = (self.shifted(sys, s)?, w.strip_atom(sys, s)?);
            Ok(SortStep::Strip(f, x))
        } else {
            Ok(SortStep::Descend(SortFrame { c: self.c[1..].to_vec(), m: self.m }, w.clone()))
        }
    }

    pub fn recurrence_path(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Vec<(SortFrame, Braid)>> {
        let mut out = vec![(self.clone(), w.clone())];
        while !out.last().unwrap().0.c.is_empty() {
            let (f, x) = out.last().unwrap();
            out.push(match f.recurrence_step(sys, x)? {
                SortStep::Descend(f, x) | SortStep::Strip(f, x) => (f, x),
            });
        }
        Ok(out)
    }

    /// The sortable elements ordered as in the interval of the monoid.
    pub fn cambrian_poset(&self, sys: &CoxeterSystem) -> (Vec<Braid>, Poset) {
        let els = self.sortables(sys);
        let mut rel = Vec::new();
        for (i, u) in els.iter().enumerate() {
            for (j, v) in els.iter().enumerate() {
                if i != j && u.length() < v.length() && u.left_divides(sys, v) {
                    rel.push((i, j));
                }
            }
        }
        let p = Poset::from_relations(els.len(), &rel).expect("divisibility is acyclic");
        (els, p)
    }

    /// The noncrossing partition attached to a c-sortable group element: the product of its
    /// covered reflections in the order of the reflection sequence of its sorting word.
    pub fn covered_product(&self, sys: &CoxeterSystem, w: &Elem) -> Elem {
        let cov = sys.cover_down(w);
        sys.inversion_sequence(&sys.sorting_word(w, &self.c))
            .into_iter()
            .filter(|r| cov.contains(r))
            .fold(sys.identity(), |acc, r| sys.mul(&acc, sys.reflection(r)))
    }

    /// (w_1 >= ... >= w_m) of c-sortable group elements in shard order, to a sortable element.
    pub fn chain_to_element(&self, sys: &CoxeterSystem, chain: &[Elem]) -> Result<Braid> {
        if chain.len() != self.m {
            return Err(FcError::InvalidChain);
        }
        let factors = chain_to_factors(sys, &self.c, chain)?;
        let b = Braid::from_factors(sys, factors.clone());
        let kept: Vec<Elem> = factors.into_iter().filter(|f| !f.is_identity()).collect();
        if b.factors() != kept.as_slice() {
            return Err(FcError::InvalidChain);
        }
        Ok(b)
    }

    /// Noncrossing multichain to sortable element and back through the subword complex.
    /// Returns the first multichain that does not come back to itself.
    pub fn commuting_square_check(&self, sys: &CoxeterSystem) -> Result<Option<Vec<Elem>>> {
        let nc = self.nc_frame(sys);
        let ones = SortFrame { c: self.c.clone(), m: 1 }.sortables(sys);
        let by_nc: HashMap<Elem, Elem> = ones
            .iter()
            .map(|b| {
                let x = b.project(sys);
                (self.covered_product(sys, &x), x)
            })
            .collect();
        for d in nc.deltas(sys, self.m) {
            let chain = nc.delta_to_chain(sys, &d)?;
            let sorts: Vec<Elem> = chain.iter().map(|u| by_nc.get(u).cloned().ok_or(FcError::NotNoncrossing)).collect::<Result<_>>()?;
            let w = self.chain_to_element(sys, &sorts)?;
            let back = nc.delta_to_chain(sys, &self.to_delta(sys, &w)?)?;
            if back != chain {
                return Ok(Some(chain));
            }
        }
        Ok(None)
    }

    pub fn element_to_chain(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Vec<Elem>> {
        if !self.is_sortable(sys, w)? {
            return Err(FcError::InvalidChain);
        }
        factors_to_chain(sys, &self.c, w.factors(), self.m)
    }
}

fn generate(sys: &CoxeterSystem, c: &[usize], m: usize, len: usize, memo: &mut HashMap<(Word, usize), Vec<Braid>>) -> Vec<Braid> {
    if c.is_empty() || len == 0 {
        return vec![Braid::identity()];
    }
    let key = (c.to_vec(), len);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let s = c[0];
    let mut out = generate(sys, &c[1..], m, len, memo);
    let mut rotated = c[1..].to_vec();
    rotated.push(s);
    for u in generate(sys, &rotated, m, len - 1, memo) {
        let mut word = vec![s];
        word.extend(u.word(sys));
        let w = Braid::from_word(sys, &word);
        if w.degree() <= m {
            out.push(w);
        }
    }
    memo.insert(key, out.clone());
    out
}

/// c|_w: the right descents of w ordered by the c-order of the reflections w s w^-1.
pub fn restriction(sys: &CoxeterSystem, c: &[usize], w: &Elem) -> Word {
    let f = NcFrame::new(sys, c).expect("Coxeter word");
    let rank: HashMap<usize, usize> = f.reflection_order().iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut des = sys.right_descents(w);
    des.sort_by_key(|&s| rank.get(&sys.abs_root(sys.act(w, s))).copied().unwrap_or(usize::MAX));
    des
}

/// Positive roots of the reflection subgroup generated by the given reflections.
pub fn reflection_closure(sys: &CoxeterSystem, roots: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = roots.iter().copied().collect();
    let mut todo: Vec<usize> = set.iter().copied().collect();
    while let Some(b) = todo.pop() {
        let t = sys.reflection(b).clone();
        let snapshot: Vec<usize> = set.iter().copied().collect();
        for g in snapshot {
            for (x, y) in [(&t, g), (sys.reflection(g), b)] {
                let r = sys.abs_root(sys.act(x, y));
                if set.insert(r) {
                    todo.push(r);
                }
            }
        }
    }
    set
}

/// u below v in the shard intersection order.
pub fn shard_leq(sys: &CoxeterSystem, u: &Elem, v: &Elem) -> bool {
    let iu = sys.inversions(u);
    let iv: BTreeSet<usize> = sys.inversions(v).into_iter().collect();
    if !iu.iter().all(|r| iv.contains(r)) {
        return false;
    }
    let gv = reflection_closure(sys, &sys.cover_down(v));
    sys.cover_down(u).iter().all(|r| gv.contains(r))
}

/// The element with the given (left) inversion set, if there is one.
pub fn from_inversions(sys: &CoxeterSystem, inv: &BTreeSet<usize>) -> Option<Elem> {
    let mut set = inv.clone();
    let mut word = Vec::new();
    while !set.is_empty() {
        let s = (0..sys.rank()).find(|s| set.contains(s))?;
        set.remove(&s);
        let t = sys.gen(s);
        let mut next = BTreeSet::new();
        for &b in &set {
            let r = sys.act(&t, b);
            if !sys.is_positive(r) {
                return None;
            }
            next.insert(r);
        }
        set = next;
        word.push(s);
    }
    let w = sys.word_elem(&word);
    let got: BTreeSet<usize> = sys.inversions(&w).into_iter().collect();
    (got == *inv).then_some(w)
}

fn is_sortable_elem(sys: &CoxeterSystem, c: &[usize], w: &Elem) -> bool {
    let f = SortFrame { c: c.to_vec(), m: 1 };
    f.is_sortable(sys, &Braid::from_elem(w)).unwrap_or(false)
}

fn chain_to_factors(sys: &CoxeterSystem, c: &[usize], chain: &[Elem]) -> Result<Vec<Elem>> {
    let Some(w) = chain.first() else {
        return Ok(Vec::new());
    };
    if chain.iter().any(|u| !is_sortable_elem(sys, c, u)) || chain.windows(2).any(|x| !shard_leq(sys, &x[1], &x[0])) {
        return Err(FcError::InvalidChain);
    }
    let cov = reflection_closure(sys, &sys.cover_down(w));
    let winv = sys.inverse(w);
    let mut rest = Vec::with_capacity(chain.len() - 1);
    for u in &chain[1..] {
        let set: BTreeSet<usize> = sys
            .inversions(u)
            .into_iter()
            .filter(|r| cov.contains(r))
            .map(|r| sys.abs_root(sys.act(&winv, r)))
            .collect();
        rest.push(from_inversions(sys, &set).ok_or(FcError::InvalidChain)?);
    }
    let mut out = vec![w.clone()];
    out.extend(chain_to_factors(sys, &restriction(sys, c, w), &rest)?);
    Ok(out)
}

fn factors_to_chain(sys: &CoxeterSystem, c: &[usize], factors: &[Elem], m: usize) -> Result<Vec<Elem>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let w = factors.first().cloned().unwrap_or_else(|| sys.identity());
    let tail = if factors.is_empty() { factors } else { &factors[1..] };
    let below = factors_to_chain(sys, &restriction(sys, c, &w), tail, m - 1)?;
    let cov = reflection_closure(sys, &sys.cover_down(&w));
    let candidates = SortFrame { c: c.to_vec(), m: 1 }.sortables(sys);
    let mut out = vec![w.clone()];
    for u in below {
        let want: BTreeSet<usize> = sys.inversions(&u).into_iter().map(|r| sys.abs_root(sys.act(&w, r))).collect();
        // the unique c-sortable element of [e, w] in shard order with this trace on the covers
        let hit = candidates.iter().map(|b| b.project(sys)).find(|x| {
            let trace: BTreeSet<usize> = sys.inversions(x).into_iter().filter(|r| cov.contains(r)).collect();
            trace == want && shard_leq(sys, x, &w)
        });
        out.push(hit.ok_or(FcError::InvalidChain)?);
    }
    Ok(out)
}
