use fusscat::cluster::{almost_positive_roots, fr_map, is_almost_positive, tau, tau_inverse, ClusterComplex};
use fusscat::poset::degree_polynomial;
use fusscat::{Braid, ColoredRoot, CoxeterSystem, FcError, NcFrame, SortFrame};
use std::collections::{BTreeSet, HashMap, HashSet};

fn sys(t: &str) -> CoxeterSystem {
    CoxeterSystem::build(t).unwrap()
}

fn cx(w: &CoxeterSystem, c: &str, m: usize) -> ClusterComplex {
    ClusterComplex::new(w, &w.parse_word(c).unwrap(), m).unwrap()
}

/// A2 colored roots written like "g1" for (alpha_s + alpha_t)^(1).
fn cr(w: &CoxeterSystem, name: &str) -> ColoredRoot {
    let root = match &name[..1] {
        "a" => 0,
        "b" => 1,
        _ => (0..w.n_pos()).find(|&r| w.reflection_string(r) == "sts").unwrap(),
    };
    ColoredRoot::new(root, name[1..].parse().unwrap())
}

/// (sortable, labelled facet, root configuration) for A2, m = 2, c = st, by rotation orbit.
const ASSO_A22: [(&str, [&str; 2], [&str; 2]); 12] = [
    ("e", ["a2", "b2"], ["a0", "b0"]),
    ("sts.sts", ["g1", "b1"], ["a2", "b2"]),
    ("sts.t", ["b0", "a1"], ["g1", "a2"]),
    ("st", ["a0", "g0"], ["b0", "g1"]),
    ("s", ["b2", "a0"], ["g0", "a1"]),
    ("t.t", ["a2", "b1"], ["a0", "b2"]),
    ("sts.ts", ["a1", "g1"], ["b1", "g2"]),
    ("sts", ["g0", "b0"], ["a1", "b1"]),
    ("t", ["a2", "b0"], ["a0", "b1"]),
    ("st.t", ["a0", "g1"], ["b0", "g2"]),
    ("s.s", ["b2", "a1"], ["g0", "a2"]),
    ("sts.s", ["g0", "b1"], ["a1", "b2"]),
];

#[test]
fn tau_maps() {
    let w = sys("A2");
    let m = 2;
    assert_eq!(tau(&w, 0, cr(&w, "a0"), m), cr(&w, "a2"));
    assert_eq!(tau(&w, 0, cr(&w, "g1"), m), cr(&w, "b1"));
    assert_eq!(tau(&w, 0, cr(&w, "b2"), m), cr(&w, "b2"));
    for t in ["A2", "B3", "A1xA1"] {
        let w = sys(t);
        for m in 1..=3 {
            let all = almost_positive_roots(&w, m);
            assert_eq!(all.len(), m * w.n_pos() + w.rank());
            for s in 0..w.rank() {
                // an isolated generator fixes every other root
                let isolated = (0..w.rank()).all(|t| t == s || w.commute(s, t));
                let order = if isolated { m + 1 } else { num::integer::lcm(m + 1, 2) };
                for &x in &all {
                    let mut y = x;
                    let mut k = 0;
                    loop {
                        y = tau(&w, s, y, m);
                        k += 1;
                        assert!(is_almost_positive(&w, y, m));
                        if y == x {
                            break;
                        }
                    }
                    assert_eq!(order % k, 0);
                    assert_eq!(tau_inverse(&w, s, tau(&w, s, x, m), m), x);
                }
                let full = all.iter().map(|&x| {
                    let mut y = x;
                    (1..).find(|_| {
                        y = tau(&w, s, y, m);
                        y == x
                    })
                    .unwrap()
                });
                assert_eq!(full.fold(1, num::integer::lcm), order, "{t} m={m} s={s}");
            }
        }
    }
}

#[test]
fn a22_table() {
    let w = sys("A2");
    let a = cx(&w, "st", 2);
    assert_eq!(w.word_string(a.search_word()), "ststststst"[..8].to_string());
    assert_eq!(a.len(), 12);
    let f = SortFrame::new(&w, &[0, 1], 2).unwrap();
    let mut seen = HashSet::new();
    for (name, labels, roots) in ASSO_A22 {
        let b = Braid::parse(&w, name).unwrap();
        let facet = a.lastset(&w, &b).unwrap();
        let want: Vec<ColoredRoot> = labels.iter().map(|x| cr(&w, x)).collect();
        assert_eq!(a.labelled(&facet), want, "{name}");
        let want: Vec<ColoredRoot> = roots.iter().map(|x| cr(&w, x)).collect();
        assert_eq!(a.root_configuration(&w, &facet).unwrap(), want, "{name}");
        assert_eq!(a.to_nc_facet(&w, &facet).unwrap(), f.to_nc(&w, &b).unwrap());
        assert!(seen.insert(facet));
    }
    assert_eq!(a.facets()[0], [0, 1]);
    assert_eq!(a.labelled(&[0, 1]), [cr(&w, "a2"), cr(&w, "b2")]);
    assert_eq!(a.lastset(&w, &Braid::parse(&w, "ts").unwrap()), Err(FcError::NotSortable));
}

#[test]
fn counts() {
    let cases = [
        ("A1", "s", vec![0, 1, 2, 3]),
        ("A2", "s t", vec![0, 1, 2, 3]),
        ("B2", "t s", vec![1, 2, 3]),
        ("G2", "s t", vec![1, 2]),
        ("A1xA1", "s1 s2", vec![1, 2]),
        ("A3", "s1 s2 s3", vec![1, 2]),
        ("A3", "s2 s1 s3", vec![2]),
        ("B3", "s3 s1 s2", vec![1]),
        ("H3", "s1 s2 s3", vec![1]),
    ];
    for (t, c, ms) in cases {
        let w = sys(t);
        for m in ms {
            let a = cx(&w, c, m);
            assert_eq!(a.len() as u128, w.fuss_catalan(m as u32), "{t} m={m}");
            assert!(a.is_flag(), "{t} m={m}");
            assert!(a.complex().shelling_check().is_ok());
            let f = SortFrame::new(&w, a.word(), m).unwrap();
            let mut images: Vec<Vec<usize>> = f.sortables(&w).iter().map(|b| a.lastset(&w, b).unwrap()).collect();
            images.sort();
            assert_eq!(images, a.facets());
        }
    }
    let w = sys("A2");
    assert_eq!(cx(&w, "st", 0).facets(), [vec![0, 1]]);
    assert!(cx(&w, "st", 2).complex().is_vertex_decomposable());
}

#[test]
fn compatibility_axioms() {
    for (t, c, m) in [("A2", "s t", 1), ("A2", "s t", 2), ("A2", "t s", 3), ("B2", "s t", 2), ("A3", "s1 s2 s3", 2), ("A3", "s2 s1 s3", 1), ("A1xA1", "s1 s2", 2)] {
        let w = sys(t);
        let a = cx(&w, c, m);
        let all = almost_positive_roots(&w, m);
        for &x in &all {
            for &y in &all {
                assert_eq!(a.compatible(x, y), a.compatible(y, x));
                if x.color as usize == m && x != y {
                    let inside = !w.support(w.reflection(y.root)).contains(&x.root);
                    assert_eq!(a.compatible(x, y), inside, "{t} {x:?} {y:?}");
                }
            }
        }
        for s in a.initial_letters(&w) {
            let (b, _) = a.shift(&w, s).unwrap();
            for &x in &all {
                for &y in &all {
                    assert_eq!(a.compatible(x, y), b.compatible(tau(&w, s, x, m), tau(&w, s, y, m)), "{t} s={s}");
                }
            }
        }
    }
}

#[test]
fn shifts_act_by_tau() {
    for (t, c, m) in [("A2", "s t", 2), ("B2", "t s", 3), ("A3", "s1 s3 s2", 2), ("A1xA1", "s1 s2", 1)] {
        let w = sys(t);
        let a = cx(&w, c, m);
        for s in a.initial_letters(&w) {
            let (b, map) = a.shift(&w, s).unwrap();
            for i in 0..a.search_word().len() {
                assert_eq!(b.label(map[i]), tau(&w, s, a.label(i), m));
            }
            for f in a.facets() {
                assert!(b.complex().index_of(&ClusterComplex::shift_facet(&map, f)).is_some());
            }
        }
    }
    // the orbit of the initial facet under alternating shifts
    let w = sys("A2");
    let mut a = cx(&w, "st", 2);
    let mut f = vec![0, 1];
    let mut orbit = vec![f.clone()];
    for k in 0..8 {
        let (b, map) = a.shift(&w, [0, 1][k % 2]).unwrap();
        f = ClusterComplex::shift_facet(&map, &f);
        orbit.push(f.clone());
        a = b;
    }
    assert_eq!(orbit, [[0, 1], [0, 7], [6, 7], [5, 6], [4, 5], [3, 4], [2, 3], [1, 2], [0, 1]]);
    assert_eq!(cx(&w, "st", 2).shift(&w, 1).err(), Some(FcError::NotInitial));
}

#[test]
fn rotation_orders() {
    let cases = [
        ("A1", "s", vec![1, 2, 3]),
        ("A2", "s t", vec![1, 2, 3]),
        ("B2", "s t", vec![1, 2, 3]),
        ("G2", "t s", vec![1, 2]),
        ("I2(5)", "s t", vec![1, 2]),
        ("A1xA1", "s1 s2", vec![1, 2, 3]),
        ("A3", "s1 s2 s3", vec![1, 2]),
        ("B3", "s1 s2 s3", vec![1]),
    ];
    for (t, c, ms) in cases {
        let w = sys(t);
        for m in ms {
            let a = cx(&w, c, m);
            assert_eq!(a.rotation_order(&w).unwrap(), ClusterComplex::expected_rotation_order(&w, m), "{t} m={m}");
        }
    }
    let w = sys("A2");
    let a = cx(&w, "st", 2);
    assert_eq!(a.rotation_order(&w).unwrap(), 4);
    let perm = a.cambrian_rotation(&w).unwrap();
    let mut sizes = Vec::new();
    let mut seen = vec![false; perm.len()];
    for i in 0..perm.len() {
        let mut k = 0;
        let mut j = i;
        while !std::mem::replace(&mut seen[j], true) {
            j = perm[j];
            k += 1;
        }
        if k > 0 {
            sizes.push(k);
        }
    }
    sizes.sort();
    assert_eq!(sizes, [2, 2, 4, 4]);
    assert_eq!(ClusterComplex::expected_rotation_order(&sys("A1xA1"), 1), 2);
    assert_eq!(ClusterComplex::expected_rotation_order(&sys("A2"), 1), 5);
    assert_eq!(ClusterComplex::expected_rotation_order(&sys("B2"), 1), 3);
}

#[test]
fn bijections_commute_with_rotation() {
    for (t, c, m) in [("A2", "s t", 2), ("A2", "t s", 3), ("B2", "s t", 2), ("A3", "s1 s2 s3", 2), ("A3", "s2 s1 s3", 1)] {
        let w = sys(t);
        let a = cx(&w, c, m);
        let nc = NcFrame::new(&w, a.word()).unwrap();
        let sf = SortFrame::new(&w, a.word(), m).unwrap();
        let perm = a.cambrian_rotation(&w).unwrap();
        let ncf: HashSet<Vec<usize>> = nc.facets(&w, m).into_iter().collect();
        let mut images = HashSet::new();
        for (i, f) in a.facets().iter().enumerate() {
            let g = a.to_nc_facet(&w, f).unwrap();
            assert!(ncf.contains(&g));
            images.insert(g.clone());
            let d = nc.facet_to_delta(&w, &g, m).unwrap();
            let r = nc.facet_to_delta(&w, &a.to_nc_facet(&w, &a.facets()[perm[i]]).unwrap(), m).unwrap();
            assert_eq!(nc.cambrian_rotation(&w, &d).unwrap(), r);
        }
        assert_eq!(images.len(), a.len());
        for b in sf.sortables(&w) {
            let r = sf.cambrian_rotation(&w, &b).unwrap();
            let i = a.complex().index_of(&a.lastset(&w, &b).unwrap()).unwrap();
            assert_eq!(a.lastset(&w, &r).unwrap(), a.facets()[perm[i]]);
            assert_eq!(a.to_nc_facet(&w, &a.facets()[i]).unwrap(), sf.to_nc(&w, &b).unwrap());
        }
    }
}

#[test]
fn homology_and_h_vectors() {
    for (t, c, ms) in [("A1", "s", vec![1, 2]), ("A2", "s t", vec![1, 2, 3]), ("B2", "t s", vec![2]), ("A3", "s1 s2 s3", vec![1, 2]), ("A3", "s3 s1 s2", vec![2]), ("H3", "s2 s1 s3", vec![1])] {
        let w = sys(t);
        for m in ms {
            let a = cx(&w, c, m);
            let h = a.homology_facets(&w);
            assert_eq!(h.len() as u128, w.fuss_catalan(m as u32 - 1), "{t} m={m}");
            assert_eq!(h, a.complex().homology_facets());
            let hp = a.h_polynomial(&w).unwrap();
            assert_eq!(hp, a.h_polynomial_out(&w).unwrap());
            let nc = NcFrame::new(&w, a.word()).unwrap();
            let lr: Vec<usize> = nc
                .deltas(&w, m)
                .iter()
                .map(|d| w.reflection_length(&d.parts[1..].iter().fold(w.identity(), |acc, x| w.mul(&acc, x))))
                .collect();
            assert_eq!(hp, degree_polynomial(&lr), "{t} m={m}");
        }
    }
    let w = sys("A2");
    assert_eq!(cx(&w, "st", 2).h_polynomial(&w).unwrap(), [1, 6, 5]);
    assert_eq!(cx(&w, "st", 1).h_polynomial(&w).unwrap(), [1, 3, 1]);
    assert_eq!(cx(&w, "st", 0).h_polynomial(&w).unwrap(), [1]);
}

#[test]
fn fomin_reading_map() {
    for t in ["A1", "A2", "B2", "A3", "B3", "A1xA1", "H3"] {
        let w = sys(t);
        let c = w.bipartite_coxeter_word();
        for m in 1..=3 {
            let all = almost_positive_roots(&w, m);
            let image: HashSet<ColoredRoot> = all.iter().map(|&x| fr_map(&w, x, m)).collect();
            assert_eq!(image.len(), all.len());
            for &x in &all {
                if (x.color as usize) + 1 < m {
                    assert_eq!(fr_map(&w, x, m), ColoredRoot::new(x.root, x.color + 1));
                }
            }
            // the inverse applies tau along the sorting word of w_o, first letter first, then psi
            let w0 = w.w0_word(&c);
            for &x in &all {
                let y = w0.iter().fold(fr_map(&w, x, m), |acc, &s| tau(&w, s, acc, m));
                assert_eq!(ColoredRoot::new(w.psi_root(y.root), y.color), x, "{t} m={m} {x:?}");
            }
            if m <= 2 || w.rank() <= 2 {
                assert!(cx(&w, &w.word_string(&c), m).fr_invariant(&w).unwrap(), "{t} m={m}");
            }
        }
    }
    let a1 = sys("A1");
    let x = ColoredRoot::new(0, 1);
    assert_eq!(fr_map(&a1, x, 1), ColoredRoot::new(0, 0));
    assert_eq!(fr_map(&a1, fr_map(&a1, x, 1), 1), x);
    let a3 = sys("A3");
    assert_eq!(cx(&a3, "s1 s2 s3", 1).fr_invariant(&a3), Err(FcError::NotBipartite));
}

#[test]
fn cambrian_posets_agree() {
    for (t, c, m) in [("A2", "s t", 2), ("A2", "t s", 3), ("B2", "t s", 2), ("A3", "s1 s2 s3", 2), ("A1xA1", "s1 s2", 2)] {
        let w = sys(t);
        let a = cx(&w, c, m);
        let (p, _) = a.cambrian_poset(&w).unwrap();
        let nc = NcFrame::new(&w, a.word()).unwrap();
        let (facets, q, _) = nc.cambrian_poset(&w, m);
        let map: Vec<usize> = a.facets().iter().map(|f| facets.binary_search(&a.to_nc_facet(&w, f).unwrap()).unwrap()).collect();
        assert!(p.is_isomorphism(&q, &map), "{t} m={m}");
        // duality with the psi-reversed Coxeter element
        let rev: Vec<usize> = a.word().iter().rev().map(|&s| w.psi(s)).collect();
        let b = ClusterComplex::new(&w, &rev, m).unwrap();
        let (pb, _) = b.cambrian_poset(&w).unwrap();
        assert!(p.find_isomorphism(&pb.dual()).is_some(), "{t} m={m}");
    }
    let w = sys("A2");
    let a = cx(&w, "st", 2);
    let (p, edges) = a.cambrian_poset(&w).unwrap();
    let names: HashMap<Vec<usize>, &str> = [
        (vec![0, 1], "e"), (vec![1, 2], "s"), (vec![0, 4], "t"), (vec![2, 3], "st"), (vec![3, 4], "sts"),
        (vec![3, 7], "sts.s"), (vec![4, 5], "sts.t"), (vec![5, 6], "sts.ts"), (vec![6, 7], "sts.sts"),
        (vec![1, 5], "s.s"), (vec![0, 7], "t.t"), (vec![2, 6], "st.t"),
    ]
    .into_iter()
    .collect();
    let mut hasse: Vec<(&str, &str)> = p.hasse().into_iter().map(|(x, y)| (names[&a.facets()[x]], names[&a.facets()[y]])).collect();
    hasse.sort();
    let mut want = vec![
        ("e", "s"), ("s", "st"), ("st", "sts"), ("sts", "sts.s"), ("sts.s", "sts.sts"),
        ("e", "t"), ("t", "sts"), ("sts", "sts.t"), ("sts.t", "sts.ts"), ("sts.ts", "sts.sts"),
        ("s", "s.s"), ("s.s", "sts.t"), ("t", "t.t"), ("t.t", "sts.s"), ("st", "st.t"), ("st.t", "sts.ts"),
    ];
    want.sort();
    assert_eq!(hasse, want);
    // the Hasse edges are flips in one step
    let cover: BTreeSet<(usize, usize)> = p.hasse().into_iter().collect();
    assert!(cover.iter().all(|e| edges.iter().any(|f| (f.from, f.to) == *e)));
    let f = SortFrame::new(&w, &[0, 1], 2).unwrap();
    for (pos, name) in &names {
        assert_eq!(&a.lastset(&w, &Braid::parse(&w, name).unwrap()).unwrap(), pos);
    }
    let _ = f;
}

#[test]
fn artin_diagnostic_runs() {
    let w = sys("A2");
    let a = cx(&w, "st", 2);
    let artin = a.artin_facets(&w);
    assert!(artin.len() <= a.len());
    assert!(artin.contains(&vec![0, 1]));
}
