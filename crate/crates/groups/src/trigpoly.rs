//! Trigonometric polynomials: the ring `F[s, c, c⁻¹] / (s² + c² - 1)` with
//! `s = sin t`, `c = cos t`.
//!
//! As a module over `F[c, c⁻¹]` the ring is free on `{1, s}`, so every
//! element has a unique normal form `Σ_e (a_e + b_e s) c^e`. Equality of
//! normal forms decides identities such as those involving `tan = s c⁻¹`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rootform_core::scalar::{q_to_f64, Field, GaussQ, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly<F> {
    /// `e ↦ (a_e, b_e)`; no entry has both parts zero.
    terms: BTreeMap<i32, (F, F)>,
}

impl<F: Field> TrigPoly<F> {
    pub fn constant(a: F) -> Self {
        let mut p = TrigPoly { terms: BTreeMap::new() };
        p.add_term(0, a, F::zero());
        p
    }

    /// `coef · s^s_pow · c^c_pow`.
    pub fn monomial(coef: F, s_pow: u32, c_pow: i32) -> Self {
        // s^{2k} = (1 - c²)^k, then one more s if odd.
        let k = s_pow / 2;
        let odd = s_pow % 2 == 1;
        let mut out = TrigPoly { terms: BTreeMap::new() };
        let mut binom: i64 = 1;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let c = coef.mul(&F::from_i64(sign * binom));
            let e = c_pow + 2 * j as i32;
            if odd {
                out.add_term(e, F::zero(), c);
            } else {
                out.add_term(e, c, F::zero());
            }
            binom = binom * (k - j) as i64 / (j as i64 + 1);
        }
        out
    }

    pub fn s() -> Self {
        Self::monomial(F::one(), 1, 0)
    }

    pub fn c() -> Self {
        Self::monomial(F::one(), 0, 1)
    }

    /// `tan = s c⁻¹`.
    pub fn tan() -> Self {
        Self::monomial(F::one(), 1, -1)
    }

    /// `sec = c⁻¹`.
    pub fn sec() -> Self {
        Self::monomial(F::one(), 0, -1)
    }

    fn add_term(&mut self, e: i32, a: F, b: F) {
        let slot = self.terms.entry(e).or_insert_with(|| (F::zero(), F::zero()));
        slot.0 = slot.0.add(&a);
        slot.1 = slot.1.add(&b);
        if slot.0.is_zero() && slot.1.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &F, &F)> {
        self.terms.iter().map(|(&e, (a, b))| (e, a, b))
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut out = TrigPoly { terms: BTreeMap::new() };
        for (&e, (a, b)) in &self.terms {
            out.add_term(e, a.mul(k), b.mul(k));
        }
        out
    }

    /// `d/dt`, using `s' = c` and `c' = -s`.
    pub fn deriv(&self) -> Self {
        let mut out = TrigPoly { terms: BTreeMap::new() };
        for (&e, (a, b)) in &self.terms {
            // (a c^e)' = -e a s c^{e-1}
            if e != 0 {
                out.add_term(e - 1, F::zero(), a.mul(&F::from_i64(-(e as i64))));
            }
            // (b s c^e)' = b c^{e+1} - e b s² c^{e-1} = b c^{e+1} - e b c^{e-1} + e b c^{e+1}
            let eb = b.mul(&F::from_i64(e as i64));
            out.add_term(e + 1, b.add(&eb), F::zero());
            if e != 0 {
                out.add_term(e - 1, eb.neg(), F::zero());
            }
        }
        out
    }

    /// Value at `t = 0` (`s = 0`, `c = 1`).
    pub fn at_zero(&self) -> F {
        let mut acc = F::zero();
        for (a, _) in self.terms.values() {
            acc = acc.add(a);
        }
        acc
    }

    pub fn eval_with(&self, t: f64, conv: impl Fn(&F) -> Complex64) -> Complex64 {
        let (s, c) = t.sin_cos();
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, (a, b)) in &self.terms {
            let ce = c.powi(e);
            acc += (conv(a) + conv(b) * s) * ce;
        }
        acc
    }

    /// Largest negative power of `c`; multiplying by `c^N` clears denominators.
    pub fn c_denominator(&self) -> i32 {
        self.terms.keys().next().map_or(0, |&e| (-e).max(0))
    }
}

impl TrigPoly<Q> {
    pub fn eval(&self, t: f64) -> f64 {
        self.eval_with(t, |q| Complex64::new(q_to_f64(q), 0.0)).re
    }
}

impl TrigPoly<GaussQ> {
    pub fn eval(&self, t: f64) -> Complex64 {
        self.eval_with(t, |g| Complex64::new(q_to_f64(&g.re), q_to_f64(&g.im)))
    }
}

impl<F: Field> Field for TrigPoly<F> {
    fn zero() -> Self {
        TrigPoly { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, (a, b)) in &o.terms {
            out.add_term(e, a.clone(), b.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = TrigPoly { terms: BTreeMap::new() };
        for (&e1, (a1, b1)) in &self.terms {
            for (&e2, (a2, b2)) in &o.terms {
                // (a1 + b1 s)(a2 + b2 s) = a1a2 + b1b2(1 - c²) + (a1b2 + a2b1) s
                let bb = b1.mul(b2);
                out.add_term(e1 + e2, a1.mul(a2).add(&bb), a1.mul(b2).add(&a2.mul(b1)));
                if !bb.is_zero() {
                    out.add_term(e1 + e2 + 2, bb.neg(), F::zero());
                }
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }
    /// Only the units `k·c^e` are inverted.
    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, (a, b)) = self.terms.iter().next().unwrap();
        if !b.is_zero() {
            return None;
        }
        Some(Self::monomial(a.inv()?, 0, -e))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn domain_name() -> String {
        format!("trig[{}]", F::domain_name())
    }
}
