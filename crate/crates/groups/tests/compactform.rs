use rootform_core::scalar::{Field, GaussQ, Q};
use rootform_groups::compactform::{EXP_TOL, GRAM_TOL};
use rootform_groups::{CompactForm, TrigPoly};

fn cf(t: &str) -> CompactForm {
    CompactForm::new(&t.parse().unwrap()).unwrap()
}

fn unit(c: &CompactForm, b: usize) -> Vec<i64> {
    let mut v = vec![0; c.dim()];
    v[b] = 1;
    v
}

#[test]
fn full_sweep_small_types() {
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let c = cf(t);
        let r = c.verify_all(17).unwrap();
        for ch in &r.checks {
            assert!(ch.passed(), "{t} {}: {:?}", ch.name, ch.witness);
        }
        assert_eq!(r.generated_rank, c.dim(), "{t}");
        assert!(r.exp_worst <= EXP_TOL && r.gram_worst <= GRAM_TOL && r.expbeta_worst <= EXP_TOL);
        assert_eq!(c.dim(), c.lie().dim(), "{t}");
    }
}

#[test]
fn defining_brackets() {
    let c = cf("B2");
    let m = c.rank();
    let n = c.n_pos();
    let rc = &c.lie().rc;
    for x in 0..n {
        let (bx, xx) = (m + x, m + n + x);
        let minus_two_alpha: Vec<i64> = c.alpha(x).iter().map(|v| -2 * v).collect();
        assert_eq!(c.bracket_basis(bx, xx), minus_two_alpha);
        for j in 0..m {
            assert!(c.bracket_basis(j, (j + 1) % m).iter().all(|&v| v == 0));
            let a = c.lie().a(rc.simple(j), x);
            let want: Vec<i64> = c.beta(x).iter().map(|v| a * v).collect();
            assert_eq!(c.bracket_basis(j, xx), want);
            let want: Vec<i64> = c.xi(x).iter().map(|v| -a * v).collect();
            assert_eq!(c.bracket_basis(j, bx), want);
        }
    }
    // β and ξ on shifted objects
    for x in 0..n {
        assert_eq!(c.beta(rc.shift(x)), c.beta(x));
        let neg: Vec<i64> = c.xi(x).iter().map(|v| -v).collect();
        assert_eq!(c.xi(rc.shift(x)), neg);
        let neg: Vec<i64> = c.alpha(x).iter().map(|v| -v).collect();
        assert_eq!(c.alpha(rc.shift(x)), neg);
    }
}

#[test]
fn phi_named_images() {
    let c = cf("A2");
    let lie = c.lie();
    let x = lie.rc.simple(0);
    let img = c.phi(&unit(&c, 0));
    for (k, v) in img.iter().enumerate() {
        let want = if k == lie.cartan_index(0) { GaussQ::i() } else { GaussQ::zero() };
        assert_eq!(*v, want);
    }
    // φ[β_X, ξ_X] = -2i H'_X
    let br = c.phi(&c.bracket_basis(c.rank() + x, c.rank() + c.n_pos() + x));
    let mut want = vec![GaussQ::zero(); lie.dim()];
    for (j, h) in lie.hprime(x).iter().enumerate() {
        want[lie.cartan_index(j)] = GaussQ::i().mul(&GaussQ::from_i64(-2 * h));
    }
    assert_eq!(br, want);
    assert!(c.phi(&vec![0; c.dim()]).iter().all(|v| v.is_zero()));
}

#[test]
fn killing_on_r_values() {
    let c = cf("A1");
    let g = c.killing_on_r().unwrap();
    assert_eq!(g[1][1], Q::from_i64(-8));
    assert_eq!(g[2][2], Q::from_i64(-8));
    assert_eq!(g[0][1], Q::zero());
    for t in ["A4", "B4", "C4", "D4", "F4"] {
        let (rep, minors) = cf(t).definiteness_check().unwrap();
        assert!(rep.passed(), "{t}: {:?}", rep.witness);
        assert_eq!(minors.len(), cf(t).dim());
    }
}

#[test]
fn d_named_values() {
    let a2 = cf("A2");
    let rc = &a2.lie().rc;
    let (x, y) = (rc.simple(0), rc.simple(1));
    assert_eq!(rc.pq(x, y).unwrap(), (0, 1));
    let g = a2.lie().gamma_entry(x, y).unwrap().1;
    assert_eq!(a2.d_poly(x, y, 0).unwrap(), TrigPoly::c());
    assert_eq!(a2.d_poly(x, y, 1).unwrap(), TrigPoly::s().scale(&Q::from_i64(g)));
    assert!(a2.d_poly(x, y, 2).is_err());
    assert!(a2.d_poly(x, y, -1).is_err());

    // orthogonal pair: D_0 = 1
    let a3 = cf("A3");
    let rc3 = &a3.lie().rc;
    assert_eq!(a3.d_poly(rc3.simple(0), rc3.simple(2), 0).unwrap(), TrigPoly::one());

    // p = q = 1, k = 0: 1 - 2s²
    let b2 = cf("B2");
    let rcb = &b2.lie().rc;
    let one_minus = TrigPoly::one().sub(&TrigPoly::monomial(Q::from_i64(2), 2, 0));
    let mut seen = 0;
    for x in 0..rcb.len() {
        for y in 0..rcb.len() {
            if rcb.is_admissible_pair(x, y) && rcb.pq(x, y).unwrap() == (1, 1) {
                assert_eq!(b2.d_poly(x, y, 0).unwrap(), one_minus);
                assert_eq!(b2.dprime_poly(x, y, 0).unwrap(), one_minus);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn exponential_special_values() {
    let c = cf("G2");
    let id = nalgebra::DMatrix::<f64>::identity(c.dim(), c.dim());
    let rc = &c.lie().rc;
    for x in 0..c.n_pos() {
        assert!((c.exp_alpha(x, 0.0) - &id).amax() < 1e-15);
        assert!((c.exp_beta(x, 0.0).unwrap() - &id).amax() < 1e-15);
        assert!((c.exp_xi(x, 0.0).unwrap() - &id).amax() < 1e-15);
        let tx = rc.shift(x);
        assert!((c.exp_beta(tx, 0.7).unwrap() - c.exp_beta(x, 0.7).unwrap()).amax() < 1e-15);
        assert!((c.exp_xi(tx, 0.7).unwrap() - c.exp_xi(x, -0.7).unwrap()).amax() < 1e-15);
        // ad β_X has eigenvalues in iℤ, so t ↦ exp(t ad β_X) has period 2π
        let full = c.exp_beta(x, 2.0 * std::f64::consts::PI).unwrap();
        assert!((full - &id).amax() < 1e-9);
    }
}

#[test]
fn mutated_a_breaks_jacobi() {
    let mut c = cf("A2");
    let y = c.lie().rc.simple(1);
    c.mutate_a(0, y, 1);
    let r = c.jacobi_check();
    assert!(!r.passed());
    assert!(r.witness.is_some());
    assert!(!c.phi_homomorphism_check().passed());
}
