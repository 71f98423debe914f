use rootform_core::mat::Mat;
use rootform_core::scalar::{q, Field, GaussQ, Q};
use rootform_core::{CartanDatum, Error};
use rootform_reps::hwmodules::{divided_power, xh_injectivity_probe};
use rootform_reps::{freudenthal_multiplicities, weyl_dimension, Generators, WeightModule};

fn datum(t: &str) -> CartanDatum {
    t.parse().unwrap()
}

fn fundamentals(d: &CartanDatum) -> Vec<Vec<i64>> {
    (0..d.rank)
        .map(|i| {
            let mut w = vec![0; d.rank];
            w[i] = 1;
            w
        })
        .collect()
}

#[test]
fn named_dimensions() {
    let a1 = WeightModule::build(&datum("A1"), &[1]).unwrap();
    assert_eq!(a1.dim(), 2);
    assert_eq!(a1.basis_weights(), vec![vec![1], vec![-1]]);
    let a2 = datum("A2");
    assert_eq!(WeightModule::build(&a2, &[1, 0]).unwrap().dim(), 3);
    assert_eq!(WeightModule::build(&a2, &[0, 1]).unwrap().dim(), 3);
    assert_eq!(WeightModule::build(&a2, &[1, 1]).unwrap().dim(), 8);
    // the short simple root of G2 is the second node here
    let g2 = datum("G2");
    let dims: Vec<usize> = fundamentals(&g2)
        .iter()
        .map(|w| WeightModule::build(&g2, w).unwrap().dim())
        .collect();
    assert!(dims.contains(&7) && dims.contains(&14), "{dims:?}");
}

#[test]
fn weyl_oracle_values() {
    assert_eq!(weyl_dimension(&datum("A3"), &[0, 1, 0]), 6);
    assert_eq!(weyl_dimension(&datum("B3"), &[0, 0, 1]), 8);
    assert_eq!(weyl_dimension(&datum("C3"), &[1, 0, 0]), 6);
    assert_eq!(weyl_dimension(&datum("E8"), &[0; 8]), 1);
    let m = freudenthal_multiplicities(&datum("A2"), &[1, 1]);
    assert_eq!(m[&vec![0, 0]], 2);
    assert_eq!(m.values().sum::<u64>(), 8);
}

#[test]
fn fundamental_modules_all_checks() {
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let d = datum(t);
        for w in fundamentals(&d) {
            let m = WeightModule::build(&d, &w).unwrap();
            for rep in [
                m.serre_check(),
                m.contravariance_check(),
                m.positivity_check(),
                m.multiplicity_check(),
                m.binomial_step_check(10),
            ] {
                assert!(rep.passed() && rep.cases > 0, "{t} {w:?}: {rep:?}");
            }
        }
    }
}

#[test]
fn non_fundamental_weights() {
    for (t, w, dim) in [("A1", vec![4], 5), ("A2", vec![2, 1], 15), ("B2", vec![1, 1], 16), ("G2", vec![1, 1], 64)] {
        let m = WeightModule::build(&datum(t), &w).unwrap();
        assert_eq!(m.dim(), dim, "{t} {w:?}");
        assert!(m.multiplicity_check().passed());
        assert!(m.positivity_check().passed());
        assert!(m.serre_check().passed());
    }
}

#[test]
fn highest_vector_normalised_and_spaces_orthogonal() {
    let m = WeightModule::build(&datum("B2"), &[1, 1]).unwrap();
    let g = m.gram();
    assert_eq!(g.get(0, 0), &Q::one());
    let wts = m.basis_weights();
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            if wts[r] != wts[c] {
                assert!(g.get(r, c).is_zero());
            }
        }
    }
}

#[test]
fn errors() {
    let a2 = datum("A2");
    assert!(matches!(WeightModule::build(&a2, &[-1, 0]), Err(Error::NotDominant(_))));
    match WeightModule::build_with_cap(&a2, &[3, 3], 50) {
        Err(Error::DimensionCap { dim, cap }) => assert_eq!((dim, cap), (64, 50)),
        other => panic!("{other:?}"),
    }
    assert!(WeightModule::build(&a2, &[1]).is_err());
    let g = Generators::<Q>::new(&WeightModule::build(&a2, &[1, 0]).unwrap());
    assert!(g.t(0, &Q::zero()).is_err());
}

#[test]
fn binomial_step_a1_double_fundamental() {
    // λ = 2ω, y = η: (F η, F η) = (η, E F η) = ⟨1, λ⟩ = 2 = binom(2·1 + 0, 1).
    let m = WeightModule::build(&datum("A1"), &[2]).unwrap();
    let f = m.f(0);
    let g = m.gram();
    let mut eta = vec![Q::zero(); 3];
    eta[0] = Q::one();
    let x = f.mul_vec(&eta);
    let gx = g.mul_vec(&x);
    let lhs: Q = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
    assert_eq!(lhs, Q::from_i64(2));
    // s = 2: (F^{(2)} η, F^{(2)} η) = binom(4 - 2, 2) = 1
    let x2 = divided_power(&f, 2).mul_vec(&eta);
    let gx2 = g.mul_vec(&x2);
    let lhs2: Q = x2.iter().zip(&gx2).map(|(a, b)| a * b).sum();
    assert_eq!(lhs2, Q::one());
    assert!(m.binomial_step_check(10).passed());
}

#[test]
fn generator_identities_and_adjoint() {
    for t in ["A1", "A2", "B2", "G2"] {
        let d = datum(t);
        for w in fundamentals(&d) {
            let m = WeightModule::build(&d, &w).unwrap();
            let r = m.generator_identities_check();
            assert!(r.passed(), "{t} {w:?}: {r:?}");
            let r = m.adjoint_check();
            assert!(r.passed(), "{t} {w:?}: {r:?}");
            let (r, worst) = m.unitarity_numeric(5, 1e-10, 3);
            assert!(r.passed(), "{t} {w:?}: {worst:e}");
        }
    }
}

#[test]
fn torus_element_values() {
    let m = WeightModule::build(&datum("A2"), &[1, 0]).unwrap();
    let g = Generators::<Q>::new(&m);
    let t = g.t(0, &Q::from_i64(2)).unwrap();
    let diag: Vec<Q> = (0..3).map(|k| t.get(k, k).clone()).collect();
    assert_eq!(diag, vec![Q::from_i64(2), q(1, 2), Q::one()]);
    // s''_i sends η to a vector of weight s_i λ
    let s = g.s2(0);
    let col: Vec<Q> = (0..3).map(|k| s.get(k, 0).clone()).collect();
    assert!(col[0].is_zero() && !col[1].is_zero() && col[2].is_zero());
}

#[test]
fn unit_circle_torus_is_unitary() {
    let m = WeightModule::build(&datum("B2"), &[0, 1]).unwrap();
    let g = Generators::<GaussQ>::new(&m);
    let u = GaussQ::new(q(5, 13), q(-12, 13));
    for i in 0..2 {
        let t = g.t_diagonal(i, &u).unwrap();
        assert!(g.dagger(&t).mul(&t).is_identity());
        assert_eq!(g.t(i, &u).unwrap(), t);
    }
    // a non-unit modulus is not unitary
    let t = g.t_diagonal(0, &GaussQ::from_i64(2)).unwrap();
    assert!(!g.dagger(&t).mul(&t).is_identity());
}

#[test]
fn mutated_action_breaks_adjoint_law() {
    let m = WeightModule::build(&datum("A2"), &[1, 1]).unwrap();
    let mut g = Generators::<GaussQ>::new(&m);
    let e = g.e[0].clone();
    let (r, c) = (0..e.rows)
        .flat_map(|r| (0..e.cols).map(move |c| (r, c)))
        .find(|&(r, c)| !e.get(r, c).is_zero())
        .unwrap();
    g.e[0].set(r, c, e.get(r, c).mul(&GaussQ::from_i64(2)));
    assert_ne!(g.dagger(&g.e[0]), g.f[0]);
}

#[test]
fn xh_probe() {
    let r = xh_injectivity_probe(&datum("A1"), 100, 1).unwrap();
    assert!(r.passed() && r.cases >= 100);
    let r = xh_injectivity_probe(&datum("A2"), 100, 1).unwrap();
    assert!(r.passed() && r.cases >= 100, "{r:?}");
}

#[test]
fn divided_power_of_nilpotent() {
    let n = Mat::from_fn(3, 3, |r, c| if c == r + 1 { Q::one() } else { Q::zero() });
    let d2 = divided_power(&n, 2);
    assert_eq!(d2.get(0, 2), &q(1, 2));
    assert!(divided_power(&n, 3).is_zero());
}
