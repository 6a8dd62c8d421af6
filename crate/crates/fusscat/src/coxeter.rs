//! Finite Coxeter systems with explicit root systems.
//!
//! After a one-time exact enumeration of the roots, a group element is stored as
//! the permutation it induces on root indices. Positive roots have indices
//! `0..N` (simple roots first) and the negative of root `i` is `i + N`.

use crate::error::{FcError, Result};
use crate::field::{Field, FieldElem};
use num::{BigRational, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

pub type Word = Vec<usize>;

/// Largest group for which the reflection-length table is tabulated.
pub const REFLECTION_TABLE_CAP: u128 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    perm: Box<[u16]>,
    len: u32,
}

impl Elem {
    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    pub fn length(&self) -> usize {
        self.len as usize
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredRoot {
    pub root: usize,
    pub color: u32,
}

impl ColoredRoot {
    pub fn new(root: usize, color: u32) -> Self {
        ColoredRoot { root, color }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanChoice {
    Symmetric,
    Crystallographic,
}

#[derive(Debug)]
pub struct CoxeterSystem {
    label: String,
    rank: usize,
    coxeter: Vec<Vec<u32>>,
    field: Field,
    cartan: Vec<Vec<FieldElem>>,
    roots: Vec<Vec<FieldElem>>,
    root_depth: Vec<usize>,
    root_parent: Vec<Option<(usize, usize)>>,
    action: Vec<Box<[u16]>>,
    reflections: Vec<Elem>,
    refl_lookup: HashMap<Elem, usize>,
    identity: Elem,
    w0: Elem,
    psi: Vec<usize>,
    components: Vec<Vec<usize>>,
    component_degrees: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    bipartition: (Vec<usize>, Vec<usize>),
    names: Vec<String>,
    order: u128,
    lr_table: OnceLock<Option<HashMap<Elem, u8>>>,
}

fn named_coxeter(kind: &str, n: usize, param: Option<u32>) -> Result<Vec<Vec<u32>>> {
    let bad = || FcError::Parse(format!("unknown type {kind}{n}"));
    let mut m = vec![vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let edge = |a: usize, b: usize, v: u32, m: &mut Vec<Vec<u32>>| {
        m[a][b] = v;
        m[b][a] = v;
    };
    match kind {
        "A" => {
            if n < 1 || param.is_some() {
                return Err(bad());
            }
            for i in 1..n {
                edge(i - 1, i, 3, &mut m);
            }
        }
        "B" | "C" => {
            if n < 2 || param.is_some() {
                return Err(bad());
            }
            for i in 1..n {
                edge(i - 1, i, 3, &mut m);
            }
            edge(n - 2, n - 1, 4, &mut m);
        }
        "D" => {
            if n < 4 || param.is_some() {
                return Err(bad());
            }
            for i in 1..n - 1 {
                edge(i - 1, i, 3, &mut m);
            }
            edge(n - 3, n - 1, 3, &mut m);
        }
        "E" => {
            if !(6..=8).contains(&n) || param.is_some() {
                return Err(bad());
            }
            edge(0, 2, 3, &mut m);
            edge(1, 3, 3, &mut m);
            for i in 3..n {
                edge(i - 1, i, 3, &mut m);
            }
        }
        "F" => {
            if n != 4 || param.is_some() {
                return Err(bad());
            }
            edge(0, 1, 3, &mut m);
            edge(1, 2, 4, &mut m);
            edge(2, 3, 3, &mut m);
        }
        "G" => {
            if n != 2 || param.is_some() {
                return Err(bad());
            }
            edge(0, 1, 6, &mut m);
        }
        "H" => {
            if !(n == 3 || n == 4) || param.is_some() {
                return Err(bad());
            }
            edge(0, 1, 5, &mut m);
            for i in 2..n {
                edge(i - 1, i, 3, &mut m);
            }
        }
        "I" => {
            let p = param.ok_or_else(bad)?;
            if n != 2 || p < 2 {
                return Err(bad());
            }
            edge(0, 1, p, &mut m);
        }
        _ => return Err(bad()),
    }
    Ok(m)
}

/// Integer Cartan matrix in Bourbaki conventions, where `s(alpha_t) = alpha_t - a[s][t] alpha_s`.
fn named_crystallographic(kind: &str, n: usize, m: &[Vec<u32>]) -> Result<Vec<Vec<i64>>> {
    let mut a = vec![vec![0i64; n]; n];
    for s in 0..n {
        for t in 0..n {
            a[s][t] = match m[s][t] {
                1 => 2,
                2 => 0,
                3 => -1,
                _ => 0,
            };
        }
    }
    match kind {
        "A" | "D" | "E" => {}
        "B" => {
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
        }
        "C" => {
            a[n - 2][n - 1] = -2;
            a[n - 1][n - 2] = -1;
        }
        "F" => {
            a[1][2] = -1;
            a[2][1] = -2;
        }
        "G" => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
        _ => {
            return Err(FcError::BadMatrix(format!(
                "type {kind}{n} has no crystallographic Cartan matrix"
            )))
        }
    }
    Ok(a)
}

fn parse_component(tok: &str) -> Result<(String, usize, Option<u32>)> {
    let tok = tok.trim();
    let bad = || FcError::Parse(format!("cannot parse type '{tok}'"));
    let mut chars = tok.chars();
    let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase().to_string();
    let rest: String = chars.collect();
    let (num, param) = match rest.find('(') {
        Some(i) => {
            let close = rest.rfind(')').ok_or_else(bad)?;
            let p: u32 = rest[i + 1..close].trim().parse().map_err(|_| bad())?;
            (rest[..i].trim().to_string(), Some(p))
        }
        None => (rest.trim().to_string(), None),
    };
    let n: usize = num.trim_start_matches('_').parse().map_err(|_| bad())?;
    Ok((kind, n, param))
}

fn block_diag<T: Clone>(blocks: &[Vec<Vec<T>>], off: T) -> Vec<Vec<T>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![off; n]; n];
    let mut base = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[base + i][base + j] = v.clone();
            }
        }
        base += b.len();
    }
    out
}

impl CoxeterSystem {
    /// Parse "A3", "B2", "I2(5)", "A1xA1" or a JSON Coxeter matrix.
    pub fn build(name: &str) -> Result<CoxeterSystem> {
        CoxeterSystem::build_with(name, CartanChoice::Symmetric)
    }

    pub fn build_with(name: &str, choice: CartanChoice) -> Result<CoxeterSystem> {
        let name = name.trim();
        if name.starts_with('[') {
            let m: Vec<Vec<u32>> =
                serde_json::from_str(name).map_err(|e| FcError::Parse(e.to_string()))?;
            if choice == CartanChoice::Crystallographic {
                return Err(FcError::BadMatrix(
                    "crystallographic Cartan matrices need a named type".into(),
                ));
            }
            return CoxeterSystem::from_coxeter_matrix(&m, name);
        }
        let parts: Vec<&str> = name
            .split(['x', 'X', '*', '×'])
            .filter(|p| !p.trim().is_empty())
            .collect();
        if parts.is_empty() {
            return Err(FcError::Parse("empty type".into()));
        }
        let mut blocks = Vec::new();
        let mut cartans = Vec::new();
        for p in &parts {
            let (kind, n, param) = parse_component(p)?;
            let m = named_coxeter(&kind, n, param)?;
            if choice == CartanChoice::Crystallographic {
                cartans.push(named_crystallographic(&kind, n, &m)?);
            }
            blocks.push(m);
        }
        let m = block_diag(&blocks, 2);
        let label = parts.iter().map(|p| p.trim()).collect::<Vec<_>>().join("x");
        match choice {
            CartanChoice::Symmetric => CoxeterSystem::from_coxeter_matrix(&m, &label),
            CartanChoice::Crystallographic => {
                let a = block_diag(&cartans, 0);
                CoxeterSystem::from_integer_cartan(&m, &a, &label)
            }
        }
    }

    pub fn from_coxeter_matrix(m: &[Vec<u32>], label: &str) -> Result<CoxeterSystem> {
        validate_coxeter(m)?;
        let field = Field::for_orders(m.iter().flatten().copied());
        let n = m.len();
        let cartan: Vec<Vec<FieldElem>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        if s == t {
                            field.from_int(2)
                        } else {
                            field.neg(&field.two_cos(m[s][t]))
                        }
                    })
                    .collect()
            })
            .collect();
        CoxeterSystem::from_parts(label, m.to_vec(), field, cartan)
    }

    pub fn from_integer_cartan(m: &[Vec<u32>], a: &[Vec<i64>], label: &str) -> Result<CoxeterSystem> {
        validate_coxeter(m)?;
        if m.iter().flatten().any(|&v| ![1, 2, 3, 4, 6].contains(&v)) {
            return Err(FcError::BadMatrix("integer Cartan matrices need m in {2,3,4,6}".into()));
        }
        let field = Field::rational();
        let n = m.len();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(FcError::BadMatrix("Cartan matrix has the wrong shape".into()));
        }
        let cartan: Vec<Vec<FieldElem>> =
            a.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        CoxeterSystem::from_parts(label, m.to_vec(), field, cartan)
    }

    fn from_parts(
        label: &str,
        coxeter: Vec<Vec<u32>>,
        field: Field,
        cartan: Vec<Vec<FieldElem>>,
    ) -> Result<CoxeterSystem> {
        let n = coxeter.len();
        for s in 0..n {
            if cartan[s][s] != field.from_int(2) {
                return Err(FcError::BadMatrix("Cartan diagonal must be 2".into()));
            }
            for t in 0..n {
                if s == t {
                    continue;
                }
                if field.sign(&cartan[s][t]) == Ordering::Greater {
                    return Err(FcError::BadMatrix("Cartan entries must be nonpositive".into()));
                }
                let prod = field.mul(&cartan[s][t], &cartan[t][s]);
                if prod != field.four_cos_sq(coxeter[s][t]) {
                    return Err(FcError::BadMatrix(format!(
                        "a_st a_ts must equal 4cos^2(pi/m) at ({s},{t})"
                    )));
                }
            }
        }
        check_positive_definite(&coxeter)?;

        // Close the simple roots under the simple reflections.
        let mut roots: Vec<Vec<FieldElem>> = Vec::new();
        let mut lookup: HashMap<Vec<FieldElem>, usize> = HashMap::new();
        let mut depth = Vec::new();
        let mut parent = Vec::new();
        for s in 0..n {
            let mut v = vec![field.zero(); n];
            v[s] = field.one();
            lookup.insert(v.clone(), s);
            roots.push(v);
            depth.push(0);
            parent.push(None);
        }
        let mut pos_action: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut i = 0;
        while i < roots.len() {
            for s in 0..n {
                if i == s {
                    pos_action[s].push(usize::MAX);
                    continue;
                }
                let beta = roots[i].clone();
                let mut coef = field.zero();
                for (t, b) in beta.iter().enumerate() {
                    coef = field.add(&coef, &field.mul(&cartan[s][t], b));
                }
                let mut gamma = beta;
                gamma[s] = field.sub(&gamma[s], &coef);
                if field.sign(&gamma[s]) == Ordering::Less {
                    return Err(FcError::BadMatrix("root closure produced a mixed-sign root".into()));
                }
                let idx = match lookup.get(&gamma) {
                    Some(&j) => j,
                    None => {
                        let j = roots.len();
                        if j > 4096 {
                            return Err(FcError::InfiniteGroup);
                        }
                        lookup.insert(gamma.clone(), j);
                        roots.push(gamma);
                        depth.push(depth[i] + 1);
                        parent.push(Some((s, i)));
                        j
                    }
                };
                pos_action[s].push(idx);
            }
            i += 1;
        }
        let big_n = roots.len();
        let action: Vec<Box<[u16]>> = (0..n)
            .map(|s| {
                let mut p = vec![0u16; 2 * big_n];
                for i in 0..big_n {
                    let img = if i == s { s + big_n } else { pos_action[s][i] };
                    p[i] = img as u16;
                    p[i + big_n] = ((img + big_n) % (2 * big_n)) as u16;
                }
                p.into_boxed_slice()
            })
            .collect();

        let identity = Elem { perm: (0..2 * big_n as u16).collect(), len: 0 };
        let mut sys = CoxeterSystem {
            label: label.to_string(),
            rank: n,
            coxeter,
            field,
            cartan,
            roots,
            root_depth: depth,
            root_parent: parent,
            action,
            reflections: Vec::new(),
            refl_lookup: HashMap::new(),
            identity: identity.clone(),
            w0: identity,
            psi: (0..n).collect(),
            components: Vec::new(),
            component_degrees: Vec::new(),
            degrees: Vec::new(),
            bipartition: (Vec::new(), Vec::new()),
            names: Vec::new(),
            order: 1,
            lr_table: OnceLock::new(),
        };
        sys.names = if n <= 2 {
            ["s", "t"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("s{i}")).collect()
        };

        let mut refl = Vec::with_capacity(big_n);
        for i in 0..big_n {
            let r = match sys.root_parent[i] {
                None => sys.gen(i),
                Some((s, j)) => {
                    let g = sys.gen(s);
                    let rj: &Elem = &refl[j];
                    sys.mul(&sys.mul(&g, rj), &g)
                }
            };
            refl.push(r);
        }
        sys.refl_lookup = refl.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        sys.reflections = refl;

        let mut w0 = sys.identity.clone();
        loop {
            match (0..n).find(|&s| !sys.has_right_descent(&w0, s)) {
                Some(s) => w0 = sys.mul_gen(&w0, s),
                None => break,
            }
        }
        sys.psi = (0..n)
            .map(|s| {
                let c = sys.mul(&sys.mul(&w0, &sys.gen(s)), &w0);
                (0..n).find(|&t| sys.gen(t) == c).expect("w0 normalizes S")
            })
            .collect();
        sys.w0 = w0;

        sys.components = diagram_components(&sys.coxeter);
        sys.component_degrees =
            sys.components.iter().map(|comp| sys.degrees_of(comp)).collect();
        let mut degrees: Vec<u32> = sys.component_degrees.iter().flatten().copied().collect();
        degrees.sort_unstable();
        sys.order = degrees.iter().map(|&d| d as u128).product();
        sys.degrees = degrees;
        sys.bipartition = bipartition(&sys.coxeter, &sys.components);
        Ok(sys)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn n_pos(&self) -> usize {
        self.roots.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.coxeter[s][t]
    }

    pub fn commute(&self, s: usize, t: usize) -> bool {
        self.coxeter[s][t] == 2
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn cartan_matrix(&self) -> &[Vec<FieldElem>] {
        &self.cartan
    }

    pub fn root_coords(&self, i: usize) -> &[FieldElem] {
        &self.roots[i]
    }

    pub fn root_depth(&self, i: usize) -> usize {
        self.root_depth[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_degrees(&self) -> &[Vec<u32>] {
        &self.component_degrees
    }

    pub fn coxeter_number(&self) -> u32 {
        self.degrees.last().copied().unwrap_or(0)
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn bipartition(&self) -> (&[usize], &[usize]) {
        (&self.bipartition.0, &self.bipartition.1)
    }

    pub fn bipartite_coxeter_word(&self) -> Word {
        let (l, r) = self.bipartition();
        l.iter().chain(r.iter()).copied().collect()
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    /// Fuss-Catalan number, taken as the product over irreducible components.
    pub fn fuss_catalan(&self, m: u32) -> u128 {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for degs in &self.component_degrees {
            let h = *degs.last().unwrap() as u128;
            for &d in degs {
                num *= m as u128 * h + d as u128;
                den *= d as u128;
            }
        }
        num / den
    }

    // ---------- elements ----------

    pub fn identity(&self) -> Elem {
        self.identity.clone()
    }

    pub fn gen(&self, s: usize) -> Elem {
        Elem { perm: self.action[s].clone(), len: 1 }
    }

    pub fn longest(&self) -> Elem {
        self.w0.clone()
    }

    fn with_perm(&self, perm: Box<[u16]>) -> Elem {
        let n = self.n_pos();
        let len = perm[..n].iter().filter(|&&p| p as usize >= n).count() as u32;
        Elem { perm, len }
    }

    pub fn check(&self, w: &Elem) -> Result<()> {
        if w.perm.len() == 2 * self.n_pos() {
            Ok(())
        } else {
            Err(FcError::SystemMismatch)
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.with_perm(b.perm.iter().map(|&i| a.perm[i as usize]).collect())
    }

    pub fn mul_gen(&self, w: &Elem, s: usize) -> Elem {
        let act = &self.action[s];
        let up = (w.perm[s] as usize) < self.n_pos();
        Elem {
            perm: act.iter().map(|&i| w.perm[i as usize]).collect(),
            len: if up { w.len + 1 } else { w.len - 1 },
        }
    }

    pub fn gen_mul(&self, s: usize, w: &Elem) -> Elem {
        let act = &self.action[s];
        self.with_perm(w.perm.iter().map(|&i| act[i as usize]).collect())
    }

    pub fn inverse(&self, w: &Elem) -> Elem {
        let mut p = vec![0u16; w.perm.len()];
        for (i, &j) in w.perm.iter().enumerate() {
            p[j as usize] = i as u16;
        }
        Elem { perm: p.into_boxed_slice(), len: w.len }
    }

    pub fn conj(&self, w: &Elem, x: &Elem) -> Elem {
        self.mul(&self.mul(w, x), &self.inverse(w))
    }

    pub fn word_elem(&self, word: &[usize]) -> Elem {
        word.iter().fold(self.identity(), |w, &s| self.mul_gen(&w, s))
    }

    pub fn power(&self, w: &Elem, k: usize) -> Elem {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, w))
    }

    pub fn order_of(&self, w: &Elem) -> usize {
        let mut k = 1;
        let mut x = w.clone();
        while !x.is_identity() {
            x = self.mul(&x, w);
            k += 1;
        }
        k
    }

    /// Image of root index `i` under `w`.
    pub fn act(&self, w: &Elem, i: usize) -> usize {
        w.perm[i] as usize
    }

    pub fn neg(&self, i: usize) -> usize {
        (i + self.n_pos()) % (2 * self.n_pos())
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos()
    }

    pub fn abs_root(&self, i: usize) -> usize {
        i % self.n_pos()
    }

    pub fn has_right_descent(&self, w: &Elem, s: usize) -> bool {
        w.perm[s] as usize >= self.n_pos()
    }

    pub fn has_left_descent(&self, w: &Elem, s: usize) -> bool {
        let pre = w.perm.iter().position(|&j| j as usize == s).unwrap();
        pre >= self.n_pos()
    }

    pub fn right_descents(&self, w: &Elem) -> Vec<usize> {
        (0..self.rank).filter(|&s| self.has_right_descent(w, s)).collect()
    }

    pub fn left_descents(&self, w: &Elem) -> Vec<usize> {
        (0..self.rank).filter(|&s| self.has_left_descent(w, s)).collect()
    }

    pub fn right_ascents(&self, w: &Elem) -> Vec<usize> {
        (0..self.rank).filter(|&s| !self.has_right_descent(w, s)).collect()
    }

    pub fn left_ascents(&self, w: &Elem) -> Vec<usize> {
        (0..self.rank).filter(|&s| !self.has_left_descent(w, s)).collect()
    }

    /// inv(w): positive roots sent to negative roots by the inverse of w, sorted.
    pub fn inversions(&self, w: &Elem) -> Vec<usize> {
        let n = self.n_pos();
        let mut v: Vec<usize> = w.perm[n..]
            .iter()
            .map(|&j| j as usize)
            .filter(|&j| j < n)
            .collect();
        v.sort_unstable();
        v
    }

    /// Covered reflections (as positive root indices) w s w^-1 for s in des_R(w).
    pub fn cover_down(&self, w: &Elem) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.right_descents(w).iter().map(|&s| self.abs_root(self.act(w, s))).collect();
        v.sort_unstable();
        v
    }

    pub fn cover_up(&self, w: &Elem) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.right_ascents(w).iter().map(|&s| self.abs_root(self.act(w, s))).collect();
        v.sort_unstable();
        v
    }

    /// Lexicographically first reduced word.
    pub fn reduced_word(&self, w: &Elem) -> Word {
        let mut out = Vec::with_capacity(w.length());
        let mut x = w.clone();
        while !x.is_identity() {
            let s = (0..self.rank).find(|&s| self.has_left_descent(&x, s)).unwrap();
            out.push(s);
            x = self.gen_mul(s, &x);
        }
        out
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.word_elem(word).length() == word.len()
    }

    pub fn support(&self, w: &Elem) -> Vec<usize> {
        let mut v = self.reduced_word(w);
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn psi(&self, s: usize) -> usize {
        self.psi[s]
    }

    /// The root involution beta -> -w_o(beta) on positive roots.
    pub fn psi_root(&self, i: usize) -> usize {
        self.neg(self.act(&self.w0, i))
    }

    pub fn psi_word(&self, word: &[usize]) -> Word {
        word.iter().map(|&s| self.psi[s]).collect()
    }

    // ---------- reflections ----------

    pub fn reflection(&self, root: usize) -> &Elem {
        &self.reflections[root]
    }

    pub fn reflections(&self) -> &[Elem] {
        &self.reflections
    }

    pub fn reflection_index(&self, w: &Elem) -> Option<usize> {
        self.refl_lookup.get(w).copied()
    }

    fn lr_table(&self) -> Option<&HashMap<Elem, u8>> {
        self.lr_table
            .get_or_init(|| {
                if self.order > REFLECTION_TABLE_CAP {
                    return None;
                }
                let mut dist: HashMap<Elem, u8> = HashMap::new();
                dist.insert(self.identity(), 0);
                let mut queue = VecDeque::from([self.identity()]);
                while let Some(w) = queue.pop_front() {
                    let d = dist[&w];
                    for t in &self.reflections {
                        let x = self.mul(&w, t);
                        if !dist.contains_key(&x) {
                            dist.insert(x.clone(), d + 1);
                            queue.push_back(x);
                        }
                    }
                }
                Some(dist)
            })
            .as_ref()
    }

    /// Reflection length, by table lookup when the group is small enough.
    pub fn reflection_length(&self, w: &Elem) -> usize {
        match self.lr_table() {
            Some(t) => t[w] as usize,
            None => self.reflection_length_by_rank(w),
        }
    }

    /// Reflection length as the rank of w - 1 on the reflection representation.
    pub fn reflection_length_by_rank(&self, w: &Elem) -> usize {
        let f = &self.field;
        let n = self.rank;
        let mut mat: Vec<Vec<FieldElem>> = (0..n)
            .map(|s| {
                let img = self.act(w, s);
                let mut col: Vec<FieldElem> = self.roots[self.abs_root(img)].clone();
                if !self.is_positive(img) {
                    col = col.iter().map(|x| f.neg(x)).collect();
                }
                col[s] = f.sub(&col[s], &f.one());
                col
            })
            .collect();
        rank_of(f, &mut mat)
    }

    pub fn absolute_leq(&self, u: &Elem, w: &Elem) -> bool {
        let uw = self.mul(&self.inverse(u), w);
        self.reflection_length(w) == self.reflection_length(u) + self.reflection_length(&uw)
    }

    /// All group elements in breadth-first order; fails above `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Elem>> {
        self.elements_in(&self.generators(), cap)
    }

    /// Elements of the standard parabolic subgroup generated by `j`.
    pub fn elements_in(&self, j: &[usize], cap: usize) -> Result<Vec<Elem>> {
        let mut seen: HashSet<Elem> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut i = 0;
        while i < out.len() {
            for &s in j {
                if self.has_right_descent(&out[i], s) {
                    continue;
                }
                let x = self.mul_gen(&out[i], s);
                if seen.insert(x.clone()) {
                    out.push(x);
                    if out.len() > cap {
                        return Err(FcError::TooLarge { cap });
                    }
                }
            }
            i += 1;
        }
        Ok(out)
    }

    // ---------- degrees ----------

    /// Degrees of the parabolic subgroup generated by `k`, by factoring its Poincare polynomial.
    pub fn degrees_of(&self, k: &[usize]) -> Vec<u32> {
        let mut poly: Vec<i128> = vec![1];
        for idx in 0..k.len() {
            let coset = self.min_coset_reps(&k[..=idx], &k[..idx]);
            let maxlen = coset.iter().map(|w| w.length()).max().unwrap_or(0);
            let mut gen = vec![0i128; maxlen + 1];
            for w in &coset {
                gen[w.length()] += 1;
            }
            poly = poly_mul_i(&poly, &gen);
        }
        factor_poincare(&poly, k.len())
    }

    /// Minimal length representatives of W_K / W_J, found by growing on the left.
    fn min_coset_reps(&self, k: &[usize], j: &[usize]) -> Vec<Elem> {
        let mut seen: HashSet<Elem> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut i = 0;
        while i < out.len() {
            for &s in k {
                let x = self.gen_mul(s, &out[i]);
                if x.length() < out[i].length() {
                    continue;
                }
                if j.iter().any(|&t| self.has_right_descent(&x, t)) {
                    continue;
                }
                if seen.insert(x.clone()) {
                    out.push(x);
                }
            }
            i += 1;
        }
        out
    }

    pub fn poincare_polynomial(&self) -> Vec<u128> {
        let mut poly: Vec<u128> = vec![1];
        for &d in &self.degrees {
            let q: Vec<u128> = vec![1; d as usize];
            let mut out = vec![0u128; poly.len() + q.len() - 1];
            for (i, a) in poly.iter().enumerate() {
                for (j, b) in q.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            poly = out;
        }
        poly
    }

    // ---------- Coxeter elements and sorting ----------

    pub fn check_coxeter_word(&self, c: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.rank];
        if c.len() != self.rank {
            return Err(FcError::NotCoxeterElement(self.word_string(c)));
        }
        for &s in c {
            if s >= self.rank || seen[s] {
                return Err(FcError::NotCoxeterElement(self.word_string(c)));
            }
            seen[s] = true;
        }
        Ok(())
    }

    /// Positions in c^infinity of the c-sorting word of w.
    pub fn sorting_positions(&self, w: &Elem, c: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = w.clone();
        let n = c.len();
        let mut p = 0;
        while !x.is_identity() {
            let s = c[p % n];
            if self.has_left_descent(&x, s) {
                out.push(p);
                x = self.gen_mul(s, &x);
            }
            p += 1;
        }
        out
    }

    pub fn sorting_word(&self, w: &Elem, c: &[usize]) -> Word {
        let n = c.len();
        self.sorting_positions(w, c).iter().map(|&p| c[p % n]).collect()
    }

    /// w_o(c), the c-sorting word of the longest element.
    pub fn w0_word(&self, c: &[usize]) -> Word {
        self.sorting_word(&self.w0, c)
    }

    /// Positive roots in the order of invs(w_o(c)).
    pub fn root_order(&self, c: &[usize]) -> Vec<usize> {
        self.inversion_sequence(&self.w0_word(c))
    }

    /// rank[beta] = position of beta in invs(w_o(c)).
    pub fn root_order_rank(&self, c: &[usize]) -> Vec<usize> {
        let mut rank = vec![0; self.n_pos()];
        for (i, r) in self.root_order(c).into_iter().enumerate() {
            rank[r] = i;
        }
        rank
    }

    /// Uncolored inversion sequence s_1...s_{i-1}(alpha_{s_i}), as root indices (possibly negative).
    pub fn inversion_sequence_signed(&self, word: &[usize]) -> Vec<usize> {
        let mut prefix = self.identity();
        let mut out = Vec::with_capacity(word.len());
        for &s in word {
            out.push(self.act(&prefix, s));
            prefix = self.mul_gen(&prefix, s);
        }
        out
    }

    /// Positive roots of the reflection sequence invs_R(word).
    pub fn inversion_sequence(&self, word: &[usize]) -> Vec<usize> {
        self.inversion_sequence_signed(word).into_iter().map(|r| self.abs_root(r)).collect()
    }

    pub fn act_colored_gen(&self, s: usize, x: ColoredRoot) -> ColoredRoot {
        if x.root == s {
            ColoredRoot::new(s, x.color + 1)
        } else {
            ColoredRoot::new(self.action[s][x.root] as usize, x.color)
        }
    }

    /// Letter-by-letter colored action, rightmost letter first.
    pub fn act_colored_word(&self, word: &[usize], x: ColoredRoot) -> ColoredRoot {
        word.iter().rev().fold(x, |acc, &s| self.act_colored_gen(s, acc))
    }

    /// Colored action of a group element (through any reduced word).
    pub fn act_colored(&self, w: &Elem, x: ColoredRoot) -> Result<ColoredRoot> {
        self.check(w)?;
        let img = self.act(w, x.root);
        Ok(if self.is_positive(img) {
            ColoredRoot::new(img, x.color)
        } else {
            ColoredRoot::new(self.abs_root(img), x.color + 1)
        })
    }

    pub fn colored_inversion_sequence(&self, word: &[usize]) -> Vec<ColoredRoot> {
        (0..word.len())
            .map(|i| self.act_colored_word(&word[..i], ColoredRoot::new(word[i], 0)))
            .collect()
    }

    // ---------- parabolic subgroups ----------

    /// Positive roots of the parabolic root subsystem for `j`.
    pub fn parabolic_roots(&self, j: &[usize]) -> Vec<usize> {
        (0..self.n_pos())
            .filter(|&r| {
                (0..self.rank).all(|s| j.contains(&s) || self.field.is_zero(&self.roots[r][s]))
            })
            .collect()
    }

    pub fn in_parabolic(&self, w: &Elem, j: &[usize]) -> bool {
        self.support(w).iter().all(|s| j.contains(s))
    }

    pub fn longest_in(&self, j: &[usize]) -> Elem {
        let mut w = self.identity();
        while let Some(&s) = j.iter().find(|&&s| !self.has_right_descent(&w, s)) {
            w = self.mul_gen(&w, s);
        }
        w
    }

    pub fn parabolic(&self, j: &[usize]) -> Parabolic {
        let mut gens = j.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let coxeter: Vec<Vec<u32>> =
            gens.iter().map(|&s| gens.iter().map(|&t| self.coxeter[s][t]).collect()).collect();
        let cartan: Vec<Vec<FieldElem>> = gens
            .iter()
            .map(|&s| gens.iter().map(|&t| self.cartan[s][t].clone()).collect())
            .collect();
        let label = format!("{}[{}]", self.label, self.word_string(&gens));
        let mut system = CoxeterSystem::from_parts(&label, coxeter, self.field.clone(), cartan)
            .expect("parabolic of a finite system is finite");
        system.names = gens.iter().map(|&s| self.names[s].clone()).collect();
        let mut root_map = vec![0; system.n_pos()];
        for i in 0..system.n_pos() {
            root_map[i] = match system.root_parent[i] {
                None => gens[i],
                Some((s, p)) => self.action[gens[s]][root_map[p]] as usize,
            };
        }
        Parabolic { gens, system, root_map }
    }

    // ---------- names and parsing ----------

    pub fn gen_name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|&s| self.names[s].as_str()).collect()
    }

    pub fn elem_string(&self, w: &Elem) -> String {
        self.word_string(&self.reduced_word(w))
    }

    /// Parse a word such as "s t s", "sts", "s1 s2 s3", "s1s2s3", "1 2 3" or "e".
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let bad = || FcError::Parse(format!("cannot parse word '{text}'"));
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_whitespace() || ch == ',' || ch == '|' || ch == '.' || ch == '_' {
                i += 1;
                continue;
            }
            if ch == 'e' {
                i += 1;
                continue;
            }
            let mut j = i;
            if ch == 's' || ch == 't' {
                j += 1;
            }
            let mut k = j;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s = if k > j {
                let idx: usize = chars[j..k].iter().collect::<String>().parse().map_err(|_| bad())?;
                if ch == 't' || idx == 0 {
                    return Err(bad());
                }
                idx - 1
            } else if ch == 's' && self.rank <= 2 {
                0
            } else if ch == 't' && self.rank == 2 {
                1
            } else {
                return Err(bad());
            };
            if s >= self.rank {
                return Err(bad());
            }
            out.push(s);
            i = k;
        }
        Ok(out)
    }

    pub fn root_name(&self, i: usize) -> String {
        let n = self.n_pos();
        let base = self.abs_root(i);
        let name = if self.rank <= 2 && n <= 26 {
            ((b'a' + base as u8) as char).to_string()
        } else {
            let digits: Option<String> = self.roots[base]
                .iter()
                .map(|x| {
                    let v = &x.0;
                    let int = v.iter().skip(1).all(|c| c.is_zero())
                        && v[0].is_integer()
                        && v[0] >= BigRational::zero()
                        && v[0] < BigRational::from_integer(10.into());
                    int.then(|| v[0].to_string())
                })
                .collect();
            digits.unwrap_or_else(|| format!("r{base}"))
        };
        if self.is_positive(i) {
            name
        } else {
            format!("-{name}")
        }
    }

    pub fn colored_root_name(&self, x: ColoredRoot) -> String {
        format!("{}^{}", self.root_name(x.root), x.color)
    }

    pub fn root_by_name(&self, name: &str) -> Option<usize> {
        (0..self.n_pos()).find(|&i| self.root_name(i) == name)
    }

    pub fn reflection_string(&self, root: usize) -> String {
        self.elem_string(self.reflection(root))
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let coeffs = |x: &FieldElem| -> Value {
            Value::Array(x.0.iter().map(|c| Value::String(c.to_string())).collect())
        };
        let roots: Vec<Value> = (0..self.n_pos())
            .map(|i| {
                json!({
                    "index": i,
                    "name": self.root_name(i),
                    "coords": self.roots[i].iter().map(coeffs).collect::<Vec<_>>(),
                    "reflection": self.reflection_string(i),
                })
            })
            .collect();
        json!({
            "type": self.label,
            "rank": self.rank,
            "generators": self.names,
            "coxeter_matrix": self.coxeter,
            "field": {
                "description": f.describe(),
                "modulus": f.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            },
            "cartan_matrix": self.cartan.iter().map(|r| r.iter().map(coeffs).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "positive_roots": roots,
            "degrees": self.degrees,
            "coxeter_number": self.coxeter_number(),
            "order": self.order.to_string(),
            "bipartition": [self.bipartition.0.clone(), self.bipartition.1.clone()],
        })
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "type {} rank {} field {}", self.label, self.rank, self.field.describe());
        let _ = writeln!(s, "N = {} h = {} |W| = {}", self.n_pos(), self.coxeter_number(), self.order);
        let _ = writeln!(s, "degrees {:?}", self.degrees);
        s
    }
}

/// A standard parabolic subgroup realized as a Coxeter system of its own.
#[derive(Debug)]
pub struct Parabolic {
    pub gens: Vec<usize>,
    pub system: CoxeterSystem,
    pub root_map: Vec<usize>,
}

impl Parabolic {
    pub fn embed(&self, parent: &CoxeterSystem, w: &Elem) -> Elem {
        let word: Word = self.system.reduced_word(w).iter().map(|&s| self.gens[s]).collect();
        parent.word_elem(&word)
    }

    pub fn restrict(&self, parent: &CoxeterSystem, w: &Elem) -> Option<Elem> {
        let word = parent.reduced_word(w);
        let local: Option<Word> =
            word.iter().map(|s| self.gens.iter().position(|g| g == s)).collect();
        local.map(|l| self.system.word_elem(&l))
    }

    pub fn local_gen(&self, s: usize) -> Option<usize> {
        self.gens.iter().position(|&g| g == s)
    }
}

fn validate_coxeter(m: &[Vec<u32>]) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(FcError::BadMatrix("matrix is not square".into()));
        }
        if row[i] != 1 {
            return Err(FcError::BadMatrix("diagonal entries must be 1".into()));
        }
        for j in 0..n {
            if i != j && (row[j] < 2 || row[j] != m[j][i]) {
                return Err(FcError::BadMatrix(format!(
                    "entry ({i},{j}) must be symmetric and at least 2"
                )));
            }
        }
    }
    Ok(())
}

fn check_positive_definite(m: &[Vec<u32>]) -> Result<()> {
    let n = m.len();
    let field = Field::for_orders(m.iter().flatten().copied());
    let f = &field;
    let half = BigRational::new(1.into(), 2.into());
    let mut a: Vec<Vec<FieldElem>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    if s == t {
                        f.one()
                    } else {
                        f.neg(&f.scale(&f.two_cos(m[s][t]), &half))
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        if f.sign(&a[k][k]) != Ordering::Greater {
            return Err(FcError::InfiniteGroup);
        }
        let inv = f.inv(&a[k][k]).unwrap();
        for i in k + 1..n {
            let factor = f.mul(&a[i][k], &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in k..n {
                let t = f.mul(&factor, &a[k][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
        }
    }
    Ok(())
}

fn rank_of(f: &Field, mat: &mut [Vec<FieldElem>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !f.is_zero(&mat[r][col])) else {
            continue;
        };
        mat.swap(rank, p);
        let inv = f.inv(&mat[rank][col]).unwrap();
        for r in 0..rows {
            if r != rank && !f.is_zero(&mat[r][col]) {
                let factor = f.mul(&mat[r][col], &inv);
                for c in col..cols {
                    let t = f.mul(&factor, &mat[rank][c]);
                    mat[r][c] = f.sub(&mat[r][c], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn diagram_components(m: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < members.len() {
            let s = members[i];
            for t in 0..n {
                if comp[t] == usize::MAX && m[s][t] >= 3 {
                    comp[t] = id;
                    members.push(t);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Two-colouring of the Coxeter diagram with the smallest generator of each component on the left.
fn bipartition(m: &[Vec<u32>], components: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let n = m.len();
    let mut side = vec![0u8; n];
    for comp in components {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([comp[0]]);
        seen[comp[0]] = true;
        while let Some(s) = queue.pop_front() {
            for t in 0..n {
                if !seen[t] && m[s][t] >= 3 {
                    seen[t] = true;
                    side[t] = 1 - side[s];
                    queue.push_back(t);
                }
            }
        }
    }
    let left = (0..n).filter(|&s| side[s] == 0).collect();
    let right = (0..n).filter(|&s| side[s] == 1).collect();
    (left, right)
}

fn poly_mul_i(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Write P(q) as a product of q-integers [d]_q, returning the sorted d's.
fn factor_poincare(p: &[i128], rank: usize) -> Vec<u32> {
    let mut poly = p.to_vec();
    for _ in 0..rank {
        poly = poly_mul_i(&poly, &[1, -1]);
    }
    let mut degrees = Vec::new();
    for _ in 0..rank {
        let d = (1..poly.len()).find(|&k| poly[k] != 0).expect("Poincare polynomial factors");
        let mut quo = vec![0i128; poly.len() - d];
        for j in 0..quo.len() {
            quo[j] = poly[j] + if j >= d { quo[j - d] } else { 0 };
        }
        degrees.push(d as u32);
        while quo.len() > 1 && *quo.last().unwrap() == 0 {
            quo.pop();
        }
        poly = quo;
    }
    assert_eq!(poly, vec![1], "Poincare polynomial is not a product of q-integers");
    degrees.sort_unstable();
    degrees
}

/// Lexicographically least word in the commutation class of `word`, given as a permutation of
/// the original positions.
pub fn commutation_normal_order<T: Ord>(word: &[T], commute: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let mut remaining: Vec<usize> = (0..word.len()).collect();
    let mut out = Vec::with_capacity(word.len());
    while !remaining.is_empty() {
        let mut best = 0;
        for k in 1..remaining.len() {
            let p = remaining[k];
            if word[p] >= word[remaining[best]] {
                continue;
            }
            let movable = remaining[..k]
                .iter()
                .all(|&q| word[q] != word[p] && commute(&word[q], &word[p]));
            if movable {
                best = k;
            }
        }
        out.push(remaining.remove(best));
    }
    out
}

impl CoxeterSystem {
    pub fn commutation_normal_form(&self, word: &[usize]) -> Word {
        commutation_normal_order(word, |&a, &b| self.commute(a, b))
            .into_iter()
            .map(|i| word[i])
            .collect()
    }

    pub fn commutation_equivalent(&self, a: &[usize], b: &[usize]) -> bool {
        a.len() == b.len() && self.commutation_normal_form(a) == self.commutation_normal_form(b)
    }

    /// Matches positions of two commutation-equivalent words by the k-th occurrence of each letter.
    pub fn commutation_bijection(&self, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
        if !self.commutation_equivalent(a, b) {
            return None;
        }
        Some(occurrence_matching(a, b))
    }

    /// Reflection sequences up to commutation of commuting reflections.
    pub fn reflection_words_equivalent(&self, a: &[usize], b: &[usize]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let commute = |&x: &usize, &y: &usize| {
            let (tx, ty) = (self.reflection(x), self.reflection(y));
            self.mul(tx, ty) == self.mul(ty, tx)
        };
        let na: Vec<usize> = commutation_normal_order(a, commute).into_iter().map(|i| a[i]).collect();
        let nb: Vec<usize> = commutation_normal_order(b, commute).into_iter().map(|i| b[i]).collect();
        na == nb
    }
}

/// For two words with the same letter multiset, send the k-th occurrence of a letter in `a` to
/// the k-th occurrence of the same letter in `b`.
pub fn occurrence_matching<T: PartialEq>(a: &[T], b: &[T]) -> Vec<usize> {
    let mut used = vec![false; b.len()];
    a.iter()
        .map(|x| {
            let j = (0..b.len()).find(|&j| !used[j] && b[j] == *x).expect("same letters");
            used[j] = true;
            j
        })
        .collect()
}
