//! Finite posets given by cover candidates, with closure, reduction, lattice tests
//! and isomorphism search.

use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// below[b][a] is true when a <= b.
    below: Vec<Vec<bool>>,
}

impl Poset {
    /// The reflexive transitive closure of `edges` (a, b) meaning a < b.
    /// Returns None if the relation has a cycle.
    pub fn from_relations(n: usize, edges: &[(usize, usize)]) -> Option<Poset> {
        let mut out = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in edges {
            if a == b {
                continue;
            }
            out[a].push(b);
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() < n {
            return None;
        }
        let mut below = vec![vec![false; n]; n];
        for &v in &order {
            below[v][v] = true;
            for &w in &out[v] {
                let (src, dst) = if v < w {
                    let (l, r) = below.split_at_mut(w);
                    (&l[v], &mut r[0])
                } else {
                    let (l, r) = below.split_at_mut(v);
                    (&r[0], &mut l[w])
                };
                for (d, &s) in dst.iter_mut().zip(src.iter()) {
                    *d |= s;
                }
            }
        }
        Some(Poset { n, below })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b][a]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.below[b][a]
    }

    /// Cover relations of the transitive reduction, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for b in 0..self.n {
            for a in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    v.push((a, b));
                }
            }
        }
        v.sort_unstable();
        v
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.n).filter(|&b| (0..self.n).all(|a| !self.lt(a, b))).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| (0..self.n).all(|b| !self.lt(a, b))).collect()
    }

    pub fn dual(&self) -> Poset {
        let mut below = vec![vec![false; self.n]; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                below[a][b] = self.below[b][a];
            }
        }
        Poset { n: self.n, below }
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n).filter(|&x| self.leq(x, a) && self.leq(x, b)).collect();
        lower.iter().copied().find(|&x| lower.iter().all(|&y| self.leq(y, x)))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n).filter(|&x| self.leq(a, x) && self.leq(b, x)).collect();
        upper.iter().copied().find(|&x| upper.iter().all(|&y| self.leq(x, y)))
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some()))
    }

    fn up_size(&self, a: usize) -> usize {
        (0..self.n).filter(|&b| self.below[b][a]).count()
    }

    fn down_size(&self, b: usize) -> usize {
        self.below[b].iter().filter(|&&x| x).count()
    }

    /// Whether `map` (a bijection from self to other) preserves and reflects the order.
    pub fn is_isomorphism(&self, other: &Poset, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &x in map {
            if x >= self.n || std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) == other.leq(map[a], map[b])))
    }

    /// Some order isomorphism to `other`, by refinement on up/down sizes and backtracking.
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let key = |p: &Poset, a: usize| (p.down_size(a), p.up_size(a));
        let ka: Vec<_> = (0..self.n).map(|a| key(self, a)).collect();
        let kb: Vec<_> = (0..other.n).map(|a| key(other, a)).collect();
        let mut hist: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for k in &ka {
            *hist.entry(*k).or_default() += 1;
        }
        for k in &kb {
            *hist.entry(*k).or_default() -= 1;
        }
        if hist.values().any(|&v| v != 0) {
            return None;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| (ka[a].0, a));
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.extend(other, &order, 0, &ka, &kb, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        other: &Poset,
        order: &[usize],
        depth: usize,
        ka: &[(usize, usize)],
        kb: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let a = order[depth];
        for b in 0..other.n {
            if used[b] || ka[a] != kb[b] {
                continue;
            }
            let ok = order[..depth].iter().all(|&x| {
                let y = map[x];
                self.leq(x, a) == other.leq(y, b) && self.leq(a, x) == other.leq(b, y)
            });
            if !ok {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if self.extend(other, order, depth + 1, ka, kb, map, used) {
                return true;
            }
            used[b] = false;
            map[a] = usize::MAX;
        }
        false
    }

    /// Number of lower covers of each element.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (_, b) in self.hasse() {
            d[b] += 1;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (a, _) in self.hasse() {
            d[a] += 1;
        }
        d
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize) -> String, edge: impl Fn(usize, usize) -> Option<String>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name);
        for a in 0..self.n {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", a, label(a));
        }
        for (a, b) in self.hasse() {
            match edge(a, b) {
                Some(l) => {
                    let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", a, b, l);
                }
                None => {
                    let _ = writeln!(s, "  n{} -> n{};", a, b);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Generating function of a degree sequence: coefficient k counts entries equal to k.
pub fn degree_polynomial(degrees: &[usize]) -> Vec<u64> {
    let top = degrees.iter().copied().max().unwrap_or(0);
    let mut v = vec![0; top + 1];
    for &d in degrees {
        v[d] += 1;
    }
    v
}
