//! Root data checked against the Euclidean realisations of the classical
//! types and G2, plus lattice and Smith-form oracles.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rootform_core::mat::{imul, Mat};
use rootform_core::scalar::{Field, Q};
use rootform_core::snf::smith_normal_form;
use rootform_core::{CartanDatum, LatticePair, RootSystem};

type V = Vec<i64>;

fn e(n: usize, i: usize) -> V {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
fn add(a: &V, b: &V) -> V {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
fn sc(c: i64, a: &V) -> V {
    a.iter().map(|x| c * x).collect()
}
fn dot(a: &V, b: &V) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// (simple roots, all roots) in an ambient ℤ^N.
fn euclidean(t: &str) -> (Vec<V>, Vec<V>) {
    let series = t.as_bytes()[0];
    let n: usize = t[1..].parse().unwrap();
    let mut roots = Vec::new();
    let simple: Vec<V>;
    match series {
        b'A' => {
            let m = n + 1;
            simple = (0..n).map(|i| add(&e(m, i), &sc(-1, &e(m, i + 1)))).collect();
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        roots.push(add(&e(m, i), &sc(-1, &e(m, j))));
                    }
                }
            }
        }
        b'B' | b'C' | b'D' => {
            let mut s: Vec<V> = (0..n - 1).map(|i| add(&e(n, i), &sc(-1, &e(n, i + 1)))).collect();
            s.push(match series {
                b'B' => e(n, n - 1),
                b'C' => sc(2, &e(n, n - 1)),
                _ => add(&e(n, n - 2), &e(n, n - 1)),
            });
            simple = s;
            for i in 0..n {
                for j in i + 1..n {
                    for si in [-1, 1] {
                        for sj in [-1, 1] {
                            roots.push(add(&sc(si, &e(n, i)), &sc(sj, &e(n, j))));
                        }
                    }
                }
                for s in [-1, 1] {
                    match series {
                        b'B' => roots.push(sc(s, &e(n, i))),
                        b'C' => roots.push(sc(2 * s, &e(n, i))),
                        _ => {}
                    }
                }
            }
        }
        b'G' => {
            simple = vec![vec![1, -1, 0], vec![-2, 1, 1]];
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        roots.push(add(&e(3, i), &sc(-1, &e(3, j))));
                        let k = 3 - i - j;
                        let v = add(&sc(2, &e(3, i)), &sc(-1, &add(&e(3, j), &e(3, k))));
                        if !roots.contains(&v) {
                            roots.push(v.clone());
                            roots.push(sc(-1, &v));
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    (simple, roots)
}

/// Coordinates of `v` in the basis `simple`, by an exact rational solve.
fn coords(simple: &[V], v: &V) -> Option<V> {
    let n = simple.len();
    let amb = v.len();
    let m: Mat<Q> = Mat::from_fn(amb, n + 1, |r, c| {
        if c < n {
            Q::from_i64(simple[c][r])
        } else {
            Q::from_i64(v[r])
        }
    });
    let (red, piv) = m.row_reduce();
    if piv.contains(&n) {
        return None;
    }
    let mut out = vec![0; n];
    for (row, &pc) in piv.iter().enumerate() {
        let x = red.get(row, n);
        if !x.is_integer() {
            return None;
        }
        out[pc] = rootform_core::scalar::q_to_i64(x)?;
    }
    Some(out)
}

const ORACLE_TYPES: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2"];

#[test]
fn cartan_matches_euclidean_realisation() {
    for t in ORACLE_TYPES {
        let (simple, _) = euclidean(t);
        let cd: CartanDatum = t.parse().unwrap();
        let n = simple.len();
        let min_norm = simple.iter().map(|s| dot(s, s)).min().unwrap();
        for i in 0..n {
            assert_eq!(cd.d[i], dot(&simple[i], &simple[i]) / min_norm, "{t} d");
            for j in 0..n {
                let num = 2 * dot(&simple[i], &simple[j]);
                let den = dot(&simple[j], &simple[j]);
                assert_eq!(cd.a[i][j], num / den, "{t} a[{i}][{j}]");
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(cd.a[i][j] * cd.d[j], cd.a[j][i] * cd.d[i]);
            }
        }
    }
}

#[test]
fn roots_match_euclidean_root_sets() {
    for t in ORACLE_TYPES {
        let (simple, roots) = euclidean(t);
        let oracle: BTreeSet<V> = roots.iter().map(|r| coords(&simple, r).expect("root in lattice")).collect();
        let rs = RootSystem::generate(&t.parse().unwrap());
        let ours: BTreeSet<V> = rs.all_roots().into_iter().collect();
        assert_eq!(ours, oracle, "{t}");
        assert_eq!(rs.num_positive() * 2, oracle.len());
    }
}

#[test]
fn small_root_counts_and_heights() {
    let a2 = RootSystem::generate(&"A2".parse().unwrap());
    assert_eq!(a2.all_roots().len(), 6);
    let g2 = RootSystem::generate(&"G2".parse().unwrap());
    let mut h: Vec<i64> = g2.positive.iter().map(|r| r.height).collect();
    h.sort();
    assert_eq!(h, vec![1, 1, 2, 3, 4, 5]);
    let a1 = RootSystem::generate(&"A1".parse().unwrap());
    assert_eq!(a1.all_roots(), vec![vec![1], vec![-1]]);
}

#[test]
fn root_strings_match_pairing() {
    let types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"];
    for t in types {
        let rs = RootSystem::generate(&t.parse().unwrap());
        let all = rs.all_roots();
        for a in &all {
            for b in &all {
                let nb: V = sc(-1, b);
                if a == b || *a == nb {
                    assert!(rs.root_string(a, b).is_err());
                    continue;
                }
                let (p, q) = rs.root_string(a, b).unwrap();
                let pairing = 2 * rs.cartan.inner(b, a) / rs.cartan.inner(a, a);
                assert_eq!(p - q, pairing, "{t}");
            }
        }
    }
}

#[test]
fn named_root_strings() {
    let a2 = RootSystem::generate(&"A2".parse().unwrap());
    assert_eq!(a2.root_string(&[1, 0], &[0, 1]).unwrap(), (0, 1));
    let g2 = RootSystem::generate(&"G2".parse().unwrap());
    assert_eq!(g2.root_string(&[1, 0], &[0, 1]).unwrap(), (0, 3));
    let b2 = RootSystem::generate(&"A3".parse().unwrap());
    assert_eq!(b2.root_string(&[1, 0, 0], &[0, 0, 1]).unwrap(), (0, 0));
}

#[test]
fn simple_reflections_permute_roots() {
    for t in ["A3", "B3", "C3", "D4", "F4", "G2"] {
        let rs = RootSystem::generate(&t.parse().unwrap());
        let all: BTreeSet<V> = rs.all_roots().into_iter().collect();
        for i in 0..rs.rank() {
            let img: BTreeSet<V> = all.iter().map(|r| rs.cartan.reflect(i, r)).collect();
            assert_eq!(img, all, "{t}");
        }
    }
}

/// Count X/Q cosets among weights in a box by exact rational membership.
fn coset_count(t: &str, bound: i64) -> usize {
    let cd: CartanDatum = t.parse().unwrap();
    let lp = LatticePair::new(&cd);
    let basis = lp.root_lattice_basis();
    let n = cd.rank;
    let in_q = |v: &V| coords(&basis, v).is_some();
    let mut reps: Vec<V> = Vec::new();
    let total = (2 * bound + 1).pow(n as u32);
    for k in 0..total {
        let mut v = vec![0; n];
        let mut r = k;
        for c in v.iter_mut() {
            *c = r % (2 * bound + 1) - bound;
            r /= 2 * bound + 1;
        }
        if !reps.iter().any(|rep| in_q(&add(&v, &sc(-1, rep)))) {
            reps.push(v);
        }
    }
    reps.len()
}

#[test]
fn lattice_index_matches_coset_count() {
    for (t, idx) in [("A2", 3), ("A3", 4), ("G2", 1), ("B2", 2), ("A1", 2), ("D4", 4)] {
        let lp = LatticePair::new(&t.parse().unwrap());
        assert_eq!(lp.index(), idx, "{t}");
        assert_eq!(coset_count(t, 2) as i64, idx, "{t}");
    }
}

#[test]
fn root_lattice_membership() {
    let lp = LatticePair::new(&"A2".parse().unwrap());
    assert!(lp.in_root_lattice(&[1, 1]));
    assert!(!lp.in_root_lattice(&[1, 0]));
    assert!(lp.in_root_lattice(&[3, 0]));
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let mq: Mat<Q> = Mat::from_i64(m);
    rootform_core::scalar::q_to_i64(&mq.det()).unwrap()
}

proptest! {
    #[test]
    fn smith_form_reproduces_input(entries in prop::collection::vec(-9i64..10, 9)) {
        let m: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        prop_assume!(det_i64(&m) != 0);
        let s = smith_normal_form(&m).unwrap();
        let d = imul(&imul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
        prop_assert_eq!(det_i64(&s.u).abs(), 1);
        prop_assert_eq!(det_i64(&s.v).abs(), 1);
        for w in s.diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert_eq!(s.index(), det_i64(&m).abs());
    }
}
