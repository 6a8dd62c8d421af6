//! m-colored cluster complexes as subword complexes on c w_o^m(c), with the tau maps,
//! compatibility, the Fomin-Reading map and the bijections to noncrossing and sortable objects.

use crate::coxeter::{ColoredRoot, CoxeterSystem, Word};
use crate::error::{FcError, Result};
use crate::garside::Braid;
use crate::noncrossing::NcFrame;
use crate::poset::Poset;
use crate::sortable::SortFrame;
use crate::subword::{commutation_prefix, FlipEdge, SubwordComplex, SubwordQuery};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap, HashSet};

/// tau^m_s on m-colored almost positive roots; colors are read modulo m + 1.
pub fn tau(sys: &CoxeterSystem, s: usize, x: ColoredRoot, m: usize) -> ColoredRoot {
    let m = m as u32;
    if x.root == s {
        ColoredRoot::new(s, (x.color + m) % (m + 1))
    } else if x.color == m {
        x
    } else {
        ColoredRoot::new(sys.abs_root(sys.act(&sys.gen(s), x.root)), x.color)
    }
}

pub fn tau_inverse(sys: &CoxeterSystem, s: usize, x: ColoredRoot, m: usize) -> ColoredRoot {
    let m32 = m as u32;
    if x.root == s {
        ColoredRoot::new(s, (x.color + 1) % (m32 + 1))
    } else {
        tau(sys, s, x, m)
    }
}

pub fn is_almost_positive(sys: &CoxeterSystem, x: ColoredRoot, m: usize) -> bool {
    x.root < sys.n_pos() && ((x.color as usize) < m || (x.color as usize == m && x.root < sys.rank()))
}

/// All m-colored almost positive roots: colors below m for every positive root, color m for simples.
pub fn almost_positive_roots(sys: &CoxeterSystem, m: usize) -> Vec<ColoredRoot> {
    let mut v: Vec<ColoredRoot> = (0..m as u32).flat_map(|k| (0..sys.n_pos()).map(move |r| ColoredRoot::new(r, k))).collect();
    v.extend((0..sys.rank()).map(|s| ColoredRoot::new(s, m as u32)));
    v
}

/// The Fomin-Reading map on m-colored almost positive roots; tau_L acts before tau_R.
pub fn fr_map(sys: &CoxeterSystem, x: ColoredRoot, m: usize) -> ColoredRoot {
    if (x.color as usize) + 1 < m {
        return ColoredRoot::new(x.root, x.color + 1);
    }
    // read as an almost positive root: color 1 marks a negative simple root
    let mut y = ColoredRoot::new(x.root, u32::from(x.color as usize == m));
    let (left, right) = sys.bipartition();
    for &s in left.iter().chain(right) {
        y = tau(sys, s, y, 1);
    }
    if y.color == 1 {
        ColoredRoot::new(y.root, m as u32)
    } else {
        ColoredRoot::new(y.root, 0)
    }
}

/// The m-colored c-cluster complex Sub(c w_o^m(c), w_o^m, mN) with the letter labelling.
#[derive(Clone, Debug)]
pub struct ClusterComplex {
    c: Word,
    m: usize,
    complex: SubwordComplex,
    labels: Vec<ColoredRoot>,
    label_index: HashMap<ColoredRoot, usize>,
    /// Compatible pairs of positions (i < j).
    pairs: HashSet<(usize, usize)>,
}

/// c followed by m alternating copies of w_o(c) and its image under psi.
pub fn cluster_word(sys: &CoxeterSystem, c: &[usize], m: usize) -> Word {
    let w0c = sys.w0_word(c);
    let twisted = sys.psi_word(&w0c);
    let mut word = c.to_vec();
    for i in 0..m {
        word.extend(if i % 2 == 0 { &w0c } else { &twisted });
    }
    word
}

impl ClusterComplex {
    pub fn new(sys: &CoxeterSystem, c: &[usize], m: usize) -> Result<ClusterComplex> {
        sys.check_coxeter_word(c)?;
        let word = cluster_word(sys, c, m);
        let n = c.len();
        let target = if m % 2 == 1 { sys.longest() } else { sys.identity() };
        let query = SubwordQuery::simple(sys, word.clone(), target, m * sys.n_pos())?;
        let complex = SubwordComplex::new(sys, query);
        let mut labels: Vec<ColoredRoot> = c.iter().map(|&s| ColoredRoot::new(s, m as u32)).collect();
        labels.extend(sys.colored_inversion_sequence(&word[n..]));
        let label_index = labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut pairs = HashSet::new();
        for f in &complex.facets {
            for (a, &i) in f.iter().enumerate() {
                for &j in &f[a + 1..] {
                    pairs.insert((i, j));
                }
            }
        }
        Ok(ClusterComplex { c: c.to_vec(), m, complex, labels, label_index, pairs })
    }

    pub fn word(&self) -> &[usize] {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn search_word(&self) -> &[usize] {
        &self.complex.query.word
    }

    pub fn complex(&self) -> &SubwordComplex {
        &self.complex
    }

    /// Facets as position sets, in lexicographic order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.complex.facets
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn label(&self, i: usize) -> ColoredRoot {
        self.labels[i]
    }

    pub fn position(&self, x: ColoredRoot) -> Option<usize> {
        self.label_index.get(&x).copied()
    }

    /// The labelled facet; its colored roots in position order.
    pub fn labelled(&self, facet: &[usize]) -> Vec<ColoredRoot> {
        facet.iter().map(|&i| self.labels[i]).collect()
    }

    pub fn from_labels(&self, roots: &[ColoredRoot]) -> Result<Vec<usize>> {
        let mut v: Vec<usize> = roots.iter().map(|&x| self.position(x).ok_or(FcError::NotAFacet)).collect::<Result<_>>()?;
        v.sort_unstable();
        if self.complex.index_of(&v).is_none() {
            return Err(FcError::NotAFacet);
        }
        Ok(v)
    }

    pub fn compatible(&self, x: ColoredRoot, y: ColoredRoot) -> bool {
        match (self.position(x), self.position(y)) {
            (Some(i), Some(j)) if i != j => self.pairs.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }

    /// Every maximal set of pairwise compatible positions is a facet.
    pub fn is_flag(&self) -> bool {
        let p = self.search_word().len();
        let mut adj = vec![BTreeSet::new(); p];
        for &(i, j) in &self.pairs {
            adj[i].insert(j);
            adj[j].insert(i);
        }
        let mut ok = true;
        bron_kerbosch(&adj, Vec::new(), (0..p).collect(), BTreeSet::new(), &mut |clique| {
            let mut c = clique.to_vec();
            c.sort_unstable();
            ok &= self.complex.index_of(&c).is_some();
        });
        ok
    }

    /// The first letters of c that may be moved to the front.
    pub fn initial_letters(&self, sys: &CoxeterSystem) -> Vec<usize> {
        self.c.iter().copied().filter(|&s| commutation_prefix(sys, &self.c, &[s]).is_some()).collect()
    }

    /// Shift_s as the complex for s^-1 c s together with the position map.
    pub fn shift(&self, sys: &CoxeterSystem, s: usize) -> Result<(ClusterComplex, Vec<usize>)> {
        let at = commutation_prefix(sys, &self.c, &[s]).ok_or(FcError::NotInitial)?[0];
        let word = self.search_word();
        let front = commutation_prefix(sys, word, &[s]).ok_or(FcError::NotInitial)?[0];
        let mut c2 = self.c.clone();
        c2.remove(at);
        c2.push(s);
        let next = ClusterComplex::new(sys, &c2, self.m)?;
        // rotate the letter at `front` to the end (twisted by psi when m is odd)
        let mut order: Vec<usize> = (0..word.len()).filter(|&i| i != front).collect();
        order.push(front);
        let mut rotated: Word = order.iter().map(|&i| word[i]).collect();
        if self.m % 2 == 1 {
            *rotated.last_mut().unwrap() = sys.psi(s);
        }
        let matched = commutation_prefix(sys, &rotated, next.search_word()).ok_or(FcError::NotCoxeterElement("shift".into()))?;
        let mut map = vec![0; word.len()];
        for (j, &k) in matched.iter().enumerate() {
            map[order[k]] = j;
        }
        Ok((next, map))
    }

    pub fn shift_facet(map: &[usize], facet: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = facet.iter().map(|&i| map[i]).collect();
        v.sort_unstable();
        v
    }

    /// Composite of the shifts along c; returns the image of every facet by index.
    pub fn cambrian_rotation(&self, sys: &CoxeterSystem) -> Result<Vec<usize>> {
        let mut cur = self.clone();
        let mut maps: Vec<Vec<usize>> = Vec::new();
        for &s in &self.c {
            let (next, map) = cur.shift(sys, s)?;
            maps.push(map);
            cur = next;
        }
        if cur.c != self.c {
            return Err(FcError::NotCoxeterElement("rotation".into()));
        }
        self.facets()
            .iter()
            .map(|f| {
                let g = maps.iter().fold(f.clone(), |acc, m| ClusterComplex::shift_facet(m, &acc));
                self.complex.index_of(&g).ok_or(FcError::NotAFacet)
            })
            .collect()
    }

    pub fn rotation_order(&self, sys: &CoxeterSystem) -> Result<usize> {
        let perm = self.cambrian_rotation(sys)?;
        let mut seen = vec![false; perm.len()];
        let mut order = 1usize;
        for i in 0..perm.len() {
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
                len += 1;
            }
            if len > 0 {
                order = num::integer::lcm(order, len);
            }
        }
        Ok(order)
    }

    /// mh + 2 when psi is nontrivial and m is odd, (mh + 2) / 2 otherwise.
    pub fn expected_rotation_order(sys: &CoxeterSystem, m: usize) -> usize {
        let h = sys.coxeter_number() as usize;
        let trivial = (0..sys.rank()).all(|s| sys.psi(s) == s);
        if !trivial && m % 2 == 1 {
            m * h + 2
        } else {
            (m * h + 2) / 2
        }
    }

    pub fn root_configuration(&self, sys: &CoxeterSystem, facet: &[usize]) -> Result<Vec<ColoredRoot>> {
        self.complex.query.root_configuration(sys, facet)
    }

    /// Root configuration read as a facet of the noncrossing subword complex.
    pub fn to_nc_facet(&self, sys: &CoxeterSystem, facet: &[usize]) -> Result<Vec<usize>> {
        let nc = NcFrame::new(sys, &self.c)?;
        let n = nc.n_reflections();
        let rank: HashMap<usize, usize> = nc.reflection_order().iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut v: Vec<usize> =
            self.root_configuration(sys, facet)?.into_iter().map(|x| x.color as usize * n + rank[&x.root]).collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Colored roots at the last occurrence of each letter of the sorting word, and
    /// alpha_s^(m) for letters outside the support.
    pub fn lastset(&self, sys: &CoxeterSystem, w: &Braid) -> Result<Vec<usize>> {
        let f = SortFrame::new(sys, &self.c, self.m)?;
        if !f.is_sortable(sys, w)? {
            return Err(FcError::NotSortable);
        }
        let word = f.sorting_word(sys, w)?;
        let inv = sys.colored_inversion_sequence(&word);
        let roots: Vec<ColoredRoot> = self
            .c
            .iter()
            .map(|&s| match word.iter().rposition(|&x| x == s) {
                Some(k) => inv[k],
                None => ColoredRoot::new(s, self.m as u32),
            })
            .collect();
        self.from_labels(&roots)
    }

    /// Facets avoiding the copy of w_o(c) at the start of the search word.
    pub fn homology_facets(&self, sys: &CoxeterSystem) -> Vec<usize> {
        let block: HashSet<usize> = commutation_prefix(sys, self.search_word(), &sys.w0_word(&self.c))
            .map(|v| v.into_iter().collect())
            .unwrap_or_default();
        (0..self.len()).filter(|&k| self.facets()[k].iter().all(|i| !block.contains(i))).collect()
    }

    pub fn cambrian_poset(&self, sys: &CoxeterSystem) -> Result<(Poset, Vec<FlipEdge>)> {
        self.complex.flip_poset(sys)
    }

    /// Coefficients of the h-polynomial from the in-degrees of the flip poset.
    pub fn h_polynomial(&self, sys: &CoxeterSystem) -> Result<Vec<u64>> {
        let (p, _) = self.cambrian_poset(sys)?;
        Ok(crate::poset::degree_polynomial(&p.in_degrees()))
    }

    pub fn h_polynomial_out(&self, sys: &CoxeterSystem) -> Result<Vec<u64>> {
        let (p, _) = self.cambrian_poset(sys)?;
        Ok(crate::poset::degree_polynomial(&p.out_degrees()))
    }

    /// Whether the labelled facets are permuted by the Fomin-Reading map (bipartite c only).
    pub fn fr_invariant(&self, sys: &CoxeterSystem) -> Result<bool> {
        if !self.is_bipartite(sys) {
            return Err(FcError::NotBipartite);
        }
        let set: HashSet<BTreeSet<ColoredRoot>> = self.facets().iter().map(|f| self.labelled(f).into_iter().collect()).collect();
        Ok(set.iter().all(|f| set.contains(&f.iter().map(|&x| fr_map(sys, x, self.m)).collect::<BTreeSet<_>>())))
    }

    pub fn is_bipartite(&self, sys: &CoxeterSystem) -> bool {
        let b = sys.bipartite_coxeter_word();
        b.len() == self.c.len() && commutation_prefix(sys, &self.c, &b).is_some()
    }

    /// Facets of the Artin version (complement spells w_o^m in the positive monoid),
    /// for comparison only.
    pub fn artin_facets(&self, sys: &CoxeterSystem) -> Vec<Vec<usize>> {
        let top = Braid::w0_power(sys, self.m);
        let word = self.search_word();
        self.facets()
            .iter()
            .filter(|f| {
                let rest: Word = (0..word.len()).filter(|i| f.binary_search(i).is_err()).map(|i| word[i]).collect();
                Braid::from_word(sys, &rest) == top
            })
            .cloned()
            .collect()
    }

    pub fn facet_json(&self, sys: &CoxeterSystem, facet: &[usize]) -> Value {
        let roots: Vec<Value> =
            self.labelled(facet).iter().map(|x| json!([sys.reflection_string(x.root), x.color])).collect();
        json!({ "positions": facet, "roots": roots })
    }
}

fn bron_kerbosch(adj: &[BTreeSet<usize>], r: Vec<usize>, p: BTreeSet<usize>, x: BTreeSet<usize>, out: &mut impl FnMut(&[usize])) {
    if p.is_empty() && x.is_empty() {
        out(&r);
        return;
    }
    let (mut p, mut x) = (p, x);
    for v in p.clone() {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}
