//! Subword complexes on words in simple reflections and dual subword complexes on
//! words in reflections, with root configurations and flips.

use crate::coxeter::{ColoredRoot, CoxeterSystem, Elem, Word};
use crate::error::{FcError, Result};
use crate::poset::Poset;
use serde_json::{json, Value};
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letters {
    /// Letters are simple generators; facets are complements of words for the target.
    Simple,
    /// Letters are reflections (positive root indices); facets spell the target.
    Reflection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubwordQuery {
    pub kind: Letters,
    pub word: Word,
    pub target: Elem,
    /// a for simple words, b for reflection words.
    pub length: usize,
}

/// One flip of a facet: position `removed` is exchanged for `added`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flip {
    pub facet: Vec<usize>,
    pub removed: usize,
    pub added: usize,
    pub direction: ColoredRoot,
    pub increasing: bool,
}

impl SubwordQuery {
    pub fn simple(sys: &CoxeterSystem, word: Word, target: Elem, a: usize) -> Result<SubwordQuery> {
        sys.check(&target)?;
        if word.iter().any(|&s| s >= sys.rank()) {
            return Err(FcError::Parse("letter out of range".into()));
        }
        let l = target.length();
        if a < l || !(a - l).is_multiple_of(2) || a > word.len() {
            return Err(FcError::Parse(format!("length {a} incompatible with target of length {l}")));
        }
        Ok(SubwordQuery { kind: Letters::Simple, word, target, length: a })
    }

    pub fn reflections(sys: &CoxeterSystem, word: Word, target: Elem, b: usize) -> Result<SubwordQuery> {
        sys.check(&target)?;
        if word.iter().any(|&r| r >= sys.n_pos()) {
            return Err(FcError::Parse("reflection out of range".into()));
        }
        let l = sys.reflection_length(&target);
        if b < l || !(b - l).is_multiple_of(2) || b > word.len() {
            return Err(FcError::Parse(format!("length {b} incompatible with target of reflection length {l}")));
        }
        Ok(SubwordQuery { kind: Letters::Reflection, word, target, length: b })
    }

    fn letter(&self, sys: &CoxeterSystem, i: usize) -> Elem {
        match self.kind {
            Letters::Simple => sys.gen(self.word[i]),
            Letters::Reflection => sys.reflection(self.word[i]).clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn facet_size(&self) -> usize {
        match self.kind {
            Letters::Simple => self.word.len() - self.length,
            Letters::Reflection => self.length,
        }
    }

    /// Positions whose letters are multiplied to give the target.
    fn spelled(&self, facet: &[usize]) -> Vec<usize> {
        match self.kind {
            Letters::Simple => (0..self.word.len()).filter(|i| facet.binary_search(i).is_err()).collect(),
            Letters::Reflection => facet.to_vec(),
        }
    }

    pub fn is_facet(&self, sys: &CoxeterSystem, facet: &[usize]) -> bool {
        if facet.len() != self.facet_size() || facet.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if facet.last().is_some_and(|&i| i >= self.word.len()) {
            return false;
        }
        let prod = self.spelled(facet).iter().fold(sys.identity(), |acc, &i| sys.mul(&acc, &self.letter(sys, i)));
        prod == self.target
    }

    /// All facets in lexicographic order.
    pub fn facets(&self, sys: &CoxeterSystem) -> Vec<Vec<usize>> {
        let p = self.word.len();
        let k = self.length;
        let letters: Vec<Elem> = (0..p).map(|i| self.letter(sys, i)).collect();
        // reach[i] holds (x, j) such that some j letters of word[i..] multiply to x.
        let mut reach: Vec<HashSet<(Elem, usize)>> = vec![HashSet::new(); p + 1];
        reach[p].insert((sys.identity(), 0));
        for i in (0..p).rev() {
            let mut next = reach[i + 1].clone();
            for (x, j) in &reach[i + 1] {
                if *j < k {
                    next.insert((sys.mul(&letters[i], x), j + 1));
                }
            }
            reach[i] = next;
        }
        let mut chosen = Vec::new();
        let mut out = Vec::new();
        let need = sys.identity();
        self.search(sys, &letters, &reach, 0, &need, k, &mut chosen, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        sys: &CoxeterSystem,
        letters: &[Elem],
        reach: &[HashSet<(Elem, usize)>],
        i: usize,
        prefix: &Elem,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let rest = sys.mul(&sys.inverse(prefix), &self.target);
        if !reach[i].contains(&(rest, left)) {
            return;
        }
        if i == letters.len() {
            let facet = match self.kind {
                Letters::Simple => (0..letters.len()).filter(|j| !chosen.contains(j)).collect(),
                Letters::Reflection => chosen.clone(),
            };
            out.push(facet);
            return;
        }
        if left > 0 {
            chosen.push(i);
            let x = sys.mul(prefix, &letters[i]);
            self.search(sys, letters, reach, i + 1, &x, left - 1, chosen, out);
            chosen.pop();
        }
        self.search(sys, letters, reach, i + 1, prefix, left, chosen, out);
    }

    /// The dual reflection query with the same facets.
    ///
    /// The reflection word is invs_R(Q); a facet I = {i_1 < ... < i_b} satisfies
    /// r_{i_1} ... r_{i_b} = w s_p ... s_1.
    pub fn dualize(&self, sys: &CoxeterSystem) -> Result<SubwordQuery> {
        if self.kind != Letters::Simple {
            return Err(FcError::Parse("only simple-letter queries can be dualized".into()));
        }
        let refl = sys.inversion_sequence(&self.word);
        let q = sys.word_elem(&self.word);
        let target = sys.mul(&self.target, &sys.inverse(&q));
        Ok(SubwordQuery { kind: Letters::Reflection, word: refl, target, length: self.word.len() - self.length })
    }

    /// Colored root r(I, i) at every position, omitting the facet letters.
    pub fn root_function(&self, sys: &CoxeterSystem, facet: &[usize]) -> Result<Vec<ColoredRoot>> {
        if self.kind != Letters::Simple || !self.is_facet(sys, facet) {
            return Err(FcError::NotAFacet);
        }
        let mut prefix: Word = Vec::new();
        let mut out = Vec::with_capacity(self.word.len());
        for (i, &s) in self.word.iter().enumerate() {
            out.push(sys.act_colored_word(&prefix, ColoredRoot::new(s, 0)));
            if facet.binary_search(&i).is_err() {
                prefix.push(s);
            }
        }
        Ok(out)
    }

    pub fn root_configuration(&self, sys: &CoxeterSystem, facet: &[usize]) -> Result<Vec<ColoredRoot>> {
        let r = self.root_function(sys, facet)?;
        Ok(facet.iter().map(|&i| r[i]).collect())
    }

    /// All facets adjacent to `facet` across the ridge `facet` minus `i`, by added position.
    /// For words of the form c w_o^m(c) every ridge lies in m + 1 facets.
    pub fn partners(&self, sys: &CoxeterSystem, facet: &[usize], i: usize) -> Result<Vec<Flip>> {
        let roots = self.root_function(sys, facet)?;
        if facet.binary_search(&i).is_err() {
            return Err(FcError::NoPartner);
        }
        let dir = roots[i];
        let mut out = Vec::new();
        for j in 0..self.word.len() {
            if facet.binary_search(&j).is_ok() || roots[j].root != dir.root {
                continue;
            }
            let mut g: Vec<usize> = facet.iter().copied().filter(|&x| x != i).collect();
            g.push(j);
            g.sort_unstable();
            if self.is_facet(sys, &g) {
                out.push(Flip { facet: g, removed: i, added: j, direction: dir, increasing: i < j });
            }
        }
        Ok(out)
    }

    /// The increasing flip at `i` to the nearest partner on the right.
    pub fn flip_up(&self, sys: &CoxeterSystem, facet: &[usize], i: usize) -> Result<Flip> {
        self.partners(sys, facet, i)?.into_iter().find(|f| f.increasing).ok_or(FcError::NoPartner)
    }

    /// The decreasing flip at `i` to the nearest partner on the left.
    pub fn flip_down(&self, sys: &CoxeterSystem, facet: &[usize], i: usize) -> Result<Flip> {
        self.partners(sys, facet, i)?.into_iter().rev().find(|f| !f.increasing).ok_or(FcError::NoPartner)
    }

    /// Moves the first letter to the end, conjugated by the target w_o^m.
    /// Facet positions shift down by one, with position 0 going to the end.
    pub fn rotate(&self, sys: &CoxeterSystem) -> Result<SubwordQuery> {
        if self.kind != Letters::Simple || self.word.is_empty() {
            return Err(FcError::TargetNotRotatable);
        }
        let s = self.word[0];
        let last = if self.target.is_identity() {
            s
        } else if self.target == sys.longest() {
            sys.psi(s)
        } else {
            return Err(FcError::TargetNotRotatable);
        };
        let mut word = self.word[1..].to_vec();
        word.push(last);
        Ok(SubwordQuery { kind: self.kind, word, target: self.target.clone(), length: self.length })
    }

    pub fn rotate_facet(&self, facet: &[usize]) -> Vec<usize> {
        let p = self.word.len();
        let mut v: Vec<usize> = facet.iter().map(|&i| (i + p - 1) % p).collect();
        v.sort_unstable();
        v
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> Value {
        let letters: Vec<String> = match self.kind {
            Letters::Simple => self.word.iter().map(|&s| sys.gen_name(s).to_string()).collect(),
            Letters::Reflection => self.word.iter().map(|&r| sys.reflection_string(r)).collect(),
        };
        json!({
            "kind": match self.kind { Letters::Simple => "S", Letters::Reflection => "R" },
            "word": letters,
            "target": sys.elem_string(&self.target),
            "length": self.length,
        })
    }
}

/// A subword complex stored as its lexicographically sorted facet list.
#[derive(Clone, Debug)]
pub struct SubwordComplex {
    pub query: SubwordQuery,
    pub facets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// An increasing flip between facets (by index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipEdge {
    pub from: usize,
    pub to: usize,
    pub removed: usize,
    pub added: usize,
    pub direction: ColoredRoot,
    /// Color of the root vector at the added position in the new facet.
    pub target_color: u32,
}

impl SubwordComplex {
    pub fn new(sys: &CoxeterSystem, query: SubwordQuery) -> SubwordComplex {
        let facets = query.facets(sys);
        SubwordComplex::from_facets(query, facets)
    }

    pub fn from_facets(query: SubwordQuery, facets: Vec<Vec<usize>>) -> SubwordComplex {
        let index = facets.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        SubwordComplex { query, facets, index }
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn index_of(&self, facet: &[usize]) -> Option<usize> {
        self.index.get(facet).copied()
    }

    /// Pairs of facets differing in exactly one position, as (a, b, removed from a, added in b)
    /// with removed < added.
    pub fn adjacencies(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut by_ridge: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
        for (k, f) in self.facets.iter().enumerate() {
            for (pos, &i) in f.iter().enumerate() {
                let mut ridge = f.clone();
                ridge.remove(pos);
                by_ridge.entry(ridge).or_default().push((k, i));
            }
        }
        let mut out = Vec::new();
        for list in by_ridge.values() {
            for x in 0..list.len() {
                for y in 0..list.len() {
                    let ((a, i), (b, j)) = (list[x], list[y]);
                    if i < j {
                        out.push((a, b, i, j));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All increasing flips; requires a simple-letter query.
    pub fn increasing_flips(&self, sys: &CoxeterSystem) -> Result<Vec<FlipEdge>> {
        let roots: Vec<Vec<ColoredRoot>> =
            self.facets.iter().map(|f| self.query.root_function(sys, f)).collect::<Result<_>>()?;
        Ok(self
            .adjacencies()
            .into_iter()
            .map(|(a, b, i, j)| FlipEdge {
                from: a,
                to: b,
                removed: i,
                added: j,
                direction: roots[a][i],
                target_color: roots[b][j].color,
            })
            .collect())
    }

    pub fn flip_poset(&self, sys: &CoxeterSystem) -> Result<(Poset, Vec<FlipEdge>)> {
        let flips = self.increasing_flips(sys)?;
        let rel: Vec<(usize, usize)> = flips.iter().map(|e| (e.from, e.to)).collect();
        let p = Poset::from_relations(self.len(), &rel).ok_or(FcError::InvalidChain)?;
        Ok((p, flips))
    }

    pub fn is_connected(&self) -> bool {
        if self.facets.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.len()];
        for (a, b, _, _) in self.adjacencies() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut q = VecDeque::from([0]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    q.push_back(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Checks that the lexicographic facet order is a shelling; returns the first violating facet.
    pub fn shelling_check(&self) -> std::result::Result<(), usize> {
        for k in 1..self.len() {
            let f = &self.facets[k];
            let ridges: Vec<&Vec<usize>> = self.facets[..k]
                .iter()
                .filter(|g| intersection_len(f, g) + 1 == f.len())
                .collect();
            for g in &self.facets[..k] {
                let covered = ridges.iter().any(|r| f.iter().all(|x| g.binary_search(x).is_err() || r.binary_search(x).is_ok()));
                if !covered {
                    return Err(k);
                }
            }
        }
        Ok(())
    }

    /// Facets whose whole boundary lies in earlier facets of the lexicographic order.
    pub fn homology_facets(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| {
                let f = &self.facets[k];
                f.iter().all(|x| {
                    self.facets[..k].iter().any(|g| f.iter().all(|y| y == x || g.binary_search(y).is_ok()))
                })
            })
            .collect()
    }

    /// Recursive vertex-decomposability test on the facet list.
    pub fn is_vertex_decomposable(&self) -> bool {
        vertex_decomposable(&self.facets)
    }

    pub fn facets_json(&self) -> Value {
        json!(self.facets)
    }
}

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

/// Vertex-decomposability of the pure complex with the given facets (in the sense of Provan-Billera).
pub fn vertex_decomposable(facets: &[Vec<usize>]) -> bool {
    if facets.len() <= 1 {
        return true;
    }
    let mut vertices: Vec<usize> = facets.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let dim = facets[0].len();
    for &v in &vertices {
        let link: Vec<Vec<usize>> = facets
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| f.iter().copied().filter(|&x| x != v).collect())
            .collect();
        let del: Vec<Vec<usize>> = facets.iter().filter(|f| !f.contains(&v)).cloned().collect();
        if del.is_empty() {
            // a cone over its link
            return vertex_decomposable(&link);
        }
        // v is a shedding vertex when the deletion stays pure of full dimension
        let shed = del.iter().all(|f| f.len() == dim)
            && link.iter().all(|l| del.iter().any(|f| l.iter().all(|x| f.contains(x))));
        if shed && vertex_decomposable(&link) && vertex_decomposable(&del) {
            return true;
        }
    }
    false
}

/// Positions of `prefix` inside `word` showing that `word` starts with `prefix` up to commutations.
pub fn commutation_prefix(sys: &CoxeterSystem, word: &[usize], prefix: &[usize]) -> Option<Vec<usize>> {
    let mut used = vec![false; word.len()];
    let mut out = Vec::with_capacity(prefix.len());
    for &s in prefix {
        let mut found = None;
        for (j, &t) in word.iter().enumerate() {
            if used[j] {
                continue;
            }
            if t == s {
                found = Some(j);
                break;
            }
            if !sys.commute(s, t) {
                return None;
            }
        }
        let j = found?;
        used[j] = true;
        out.push(j);
    }
    Some(out)
}
