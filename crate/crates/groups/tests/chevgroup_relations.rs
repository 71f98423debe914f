use std::collections::BTreeMap;

use rootform_core::mat::Mat;
use rootform_core::scalar::{Field, Fp, Qs, Q};
use rootform_core::LieAlgebra;
use rootform_groups::chevgroup::{ChevalleyGroup, DegreeBounds};

fn group(t: &str) -> ChevalleyGroup {
    ChevalleyGroup::new(&t.parse().unwrap()).unwrap()
}

const SMALL: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

#[test]
fn conjugation_relations_hold_with_sign_eta() {
    for t in SMALL {
        let g = group(t);
        let r = g.verify_conjugation_relations(11);
        for rel in &r.relations {
            assert!(rel.passed(), "{t} {}: {:?}", rel.name, rel.witness);
            assert!(rel.cases > 0, "{t} {}", rel.name);
        }
        assert!(r.eta_shift_consistent, "{t}");
        for row in &r.eta {
            assert!(row.iter().all(|&e| e == 0 || e == 1 || e == -1), "{t}");
        }
    }
}

#[test]
fn steinberg_relations_over_rationals() {
    for t in SMALL {
        let r = group(t).verify_steinberg_rational(5).unwrap();
        for rel in &r.relations {
            assert!(rel.passed(), "{t} {}: {:?}", rel.name, rel.witness);
        }
    }
}

fn fp_sweep<const P: u64>(g: &ChevalleyGroup, t: &str) {
    let r = g.verify_steinberg_fp::<P>(5).unwrap();
    for rel in &r.relations {
        assert!(rel.passed(), "{t} F_{P} {}: {:?}", rel.name, rel.witness);
    }
}

#[test]
fn steinberg_relations_over_prime_fields() {
    for t in ["A2", "B2", "G2"] {
        let g = group(t);
        fp_sweep::<2>(&g, t);
        fp_sweep::<3>(&g, t);
        fp_sweep::<5>(&g, t);
        fp_sweep::<7>(&g, t);
        fp_sweep::<11>(&g, t);
        fp_sweep::<13>(&g, t);
    }
}

#[test]
fn generator_basics() {
    for t in ["A2", "B2", "G2"] {
        let g = group(t);
        let id = Mat::<Q>::identity(g.dim());
        for x in 0..g.n_obj() {
            assert_eq!(g.e(x, &Q::zero()), id);
            assert_eq!(g.h(x, &Q::one()).unwrap(), id);
            let two = Q::from_i64(2);
            assert_eq!(g.n(x, &two).unwrap().mul(&g.n_inv(x, &two).unwrap()), id);
            assert_eq!(g.hbar(x, &two).unwrap(), g.h(x, &two).unwrap());
            assert!(g.h(x, &Q::zero()).is_err());
        }
    }
    let a1 = group("A1");
    let n = a1.n(0, &Q::one()).unwrap();
    assert!(n.pow(4).is_identity());
    // In the adjoint image n² = h(-1) acts by (-1)^{±2} = 1.
    assert!(n.pow(2).is_identity());
    assert_eq!(n.pow(2), a1.h(0, &Q::from_i64(-1)).unwrap());
    assert!(!n.is_identity());
    let v = n.get(a1.shift(0), 0);
    assert!(*v == Q::one() || *v == Q::one().neg());
}

#[test]
fn e_action_on_cartan_and_opposite() {
    for t in ["A2", "B2", "G2"] {
        let g = group(t);
        let lie = &g.lie;
        for x in 0..g.n_obj() {
            let tx = g.shift(x);
            // Polynomial coefficients of E_X(t) on u_X, H'_S and u_TX.
            let fixed = g.table.entry_poly(x, x, x);
            assert_eq!(fixed[0], 1);
            assert!(fixed[1..].iter().all(|&c| c == 0));
            for j in 0..lie.rank() {
                let col = lie.cartan_index(j);
                let s = lie.rc.simple(j);
                let e1: Vec<i64> = (0..g.dim()).map(|i| g.table.coeff(x, 1)[i][col]).collect();
                let mut want = vec![0; g.dim()];
                want[x] = cartan_coeff(lie, j, x);
                assert_eq!(e1, want, "{t} H'_{j} under E_{x}");
                assert_eq!(want[x], lie.rc.a(s, x), "{t}");
                if g.table.degree(x) >= 2 {
                    assert!((0..g.dim()).all(|i| g.table.coeff(x, 2)[i][col] == 0));
                }
            }
            // u_TX ↦ u_TX + t H'_X + t² u_X, since [u_X, H'_X] = A_XX u_X = 2 u_X
            let h = lie.hprime(x);
            for j in 0..lie.rank() {
                assert_eq!(g.table.coeff(x, 1)[lie.cartan_index(j)][tx], h[j]);
            }
            assert_eq!(g.table.coeff(x, 2)[x][tx], 1);
        }
    }
}

/// Coefficient of `u_X` in `[u_X, H'_{S_j}]`, read off the bracket table.
fn cartan_coeff(lie: &LieAlgebra, j: usize, x: usize) -> i64 {
    lie.bracket_basis(x, lie.cartan_index(j))
        .iter()
        .find(|(k, _)| *k == x)
        .map_or(0, |&(_, v)| v)
}

#[test]
fn commutator_constants_named_values() {
    let a2 = group("A2");
    let (x, y) = (a2.lie.rc.simple(0), a2.lie.rc.simple(1));
    let c = a2.commutator_constants(x, y, 1).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!((c[0].i, c[0].j), (1, 1));
    assert!(c[0].c == 1 || c[0].c == -1);

    let b2 = group("B2");
    let (x, y) = (b2.lie.rc.simple(0), b2.lie.rc.simple(1));
    let long_short = if b2.lie.rc.d(x) > b2.lie.rc.d(y) { (y, x) } else { (x, y) };
    let c = b2.commutator_constants(long_short.0, long_short.1, 1).unwrap();
    let ij: Vec<(i64, i64)> = c.iter().map(|f| (f.i, f.j)).collect();
    assert_eq!(ij, vec![(1, 1), (2, 1)]);
    assert!(c.iter().all(|f| f.c != 0));

    let a3 = group("A3");
    let (x, z) = (a3.lie.rc.simple(0), a3.lie.rc.simple(2));
    assert!(a3.commutator_constants(x, z, 1).unwrap().is_empty());
    assert!(a3.commutator(x, z, &Q::from_i64(3), &Q::from_i64(-2)).is_identity());
}

#[test]
fn bracket_preserved_by_words() {
    for t in ["A2", "B2", "G2"] {
        let r = group(t).verify_bracket_preservation(4, 6, 9);
        assert!(r.passed(), "{t}: {:?}", r.witness);
        assert_eq!(r.cases, 24);
    }
}

#[test]
fn center_named_cases() {
    let a1 = group("A1").center_solutions(5).unwrap();
    let mut sols = a1.solutions.clone();
    sols.sort();
    assert_eq!(sols, vec![vec![1], vec![4]]);
    assert_eq!(a1.formula_count, 2);

    let a2 = group("A2").center_solutions(7).unwrap();
    assert_eq!(a2.formula_count, 3);
    assert_eq!(a2.solutions.len(), 3);

    for t in ["A1", "A2", "B2", "G2"] {
        let r = group(t).center_solutions(2).unwrap();
        assert_eq!(r.solutions, vec![vec![1; r.invariant_factors.len()]], "{t}");
    }
}

#[test]
fn center_counts_match_brute_force() {
    for t in ["A1", "A2", "A3", "B2"] {
        let g = group(t);
        for p in [2, 3, 5, 7, 11, 13] {
            let r = g.center_solutions(p).unwrap();
            assert!(r.passed(), "{t} p={p}");
            assert_eq!(r.solutions.len() as u64, r.formula_count, "{t} p={p}");
            let mut a = r.solutions.clone();
            let mut b = r.brute_force.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{t} p={p}");
        }
    }
}

#[test]
fn center_over_the_circle() {
    // A1: h(-1) is central; A3: a cyclic group of order 4.
    let gens = group("A1").center_circle_generators().unwrap();
    assert_eq!(gens.len(), 1);
    assert!((gens[0][0].fract().abs() - 0.5).abs() < 1e-12);
    let gens = group("A3").center_circle_generators().unwrap();
    assert_eq!(gens.len(), 1);
    let order4 = gens[0].iter().all(|th| ((th * 4.0) - (th * 4.0).round()).abs() < 1e-12);
    assert!(order4);
    assert!(group("G2").center_circle_generators().unwrap().is_empty());
}

// ---------------------------------------------------------------------------
// Symbolic oracle for the degree bounds: Laurent polynomials in (t, s).

#[derive(Clone, Debug, PartialEq)]
struct Laurent(BTreeMap<(i32, i32), Q>);

impl Laurent {
    fn mono(a: i32, b: i32) -> Self {
        let mut m = BTreeMap::new();
        m.insert((a, b), Q::one());
        Laurent(m)
    }
    fn range(&self) -> Option<[(i32, i32); 2]> {
        let keys: Vec<_> = self.0.keys().collect();
        if keys.is_empty() {
            return None;
        }
        let ts = keys.iter().map(|k| k.0);
        let ss = keys.iter().map(|k| k.1);
        Some([(ts.clone().min()?, ts.max()?), (ss.clone().min()?, ss.max()?)])
    }
}

impl Field for Laurent {
    fn zero() -> Self {
        Laurent(BTreeMap::new())
    }
    fn one() -> Self {
        Self::mono(0, 0)
    }
    fn from_i64(n: i64) -> Self {
        Self::one().mul(&Laurent([((0, 0), Q::from_i64(n))].into_iter().filter(|(_, v)| *v != Q::zero()).collect()))
    }
    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(Q::zero);
            *e = &*e + v;
            if *e == Q::zero() {
                m.remove(k);
            }
        }
        Laurent(m)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, v1) in &self.0 {
            for (k2, v2) in &o.0 {
                let term = Laurent([((k1.0 + k2.0, k1.1 + k2.1), v1 * v2)].into_iter().collect());
                out = out.add(&term);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Laurent(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }
    fn inv(&self) -> Option<Self> {
        if self.0.len() != 1 {
            return None;
        }
        let (k, v) = self.0.iter().next()?;
        Some(Laurent([((-k.0, -k.1), v.recip())].into_iter().collect()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn domain_name() -> String {
        "laurent".into()
    }
}

fn assert_within(m: &Mat<Laurent>, b: &DegreeBounds, label: &str) {
    for i in 0..m.rows {
        for j in 0..m.cols {
            let Some(actual) = m.get(i, j).range() else { continue };
            let bound = b.entry(i, j).unwrap_or_else(|| panic!("{label}: ({i},{j}) nonzero outside bound"));
            for v in 0..2 {
                assert!(bound[v].0 <= actual[v].0 && actual[v].1 <= bound[v].1, "{label} ({i},{j}): {actual:?} vs {bound:?}");
            }
        }
    }
}

#[test]
fn degree_bounds_cover_symbolic_entries() {
    for ty in ["A2", "B2", "G2"] {
        let g = group(ty);
        let t = Laurent::mono(1, 0);
        let s = Laurent::mono(0, 1);
        for x in 0..g.n_obj() {
            assert_within(&g.e(x, &t), &g.deg_e(x, [1, 0]), "E");
            assert_within(&g.h(x, &t).unwrap(), &g.deg_h(x, [1, 0]), "h");
            assert_within(&g.n(x, &t).unwrap(), &g.deg_n(x, [1, 0]), "n");
            for y in 0..g.n_obj() {
                if y == x || y == g.shift(x) {
                    continue;
                }
                let em = g.deg_e(x, [1, 0]);
                let en = g.deg_e(y, [0, 1]);
                let em_inv = g.deg_e(x, [1, 0]);
                let en_inv = g.deg_e(y, [0, 1]);
                let bound = em.mul(&en).mul(&em_inv).mul(&en_inv);
                assert_within(&g.commutator(x, y, &t, &s), &bound, "commutator");
            }
        }
    }
}

#[test]
fn mutated_gamma_breaks_a_relation() {
    let mut lie = LieAlgebra::new(&"A2".parse().unwrap()).unwrap();
    let (x, y) = (lie.rc.simple(0), lie.rc.simple(1));
    lie.flip_gamma_sign(x, y);
    match ChevalleyGroup::from_lie(lie) {
        Err(_) => {}
        Ok(g) => {
            let conj = g.verify_conjugation_relations(1);
            let bracket = g.verify_bracket_preservation(3, 3, 1);
            assert!(!conj.passed() || !bracket.passed());
        }
    }
}

#[test]
fn small_sampling_domain_is_exact() {
    let a = Qs::new(1, 3);
    let b = Qs::new(-2, 5);
    assert_eq!(a.add(&b), Qs::new(-1, 15));
    assert_eq!(a.mul(&b).inv().unwrap(), Qs::new(-15, 2));
    assert!(Qs::zero().inv().is_none());
    assert_eq!(Fp::<7>::new(3).inv().unwrap(), Fp::<7>::new(5));
}
