//! Scalar domains: exact rationals, Gaussian rationals, prime fields and
//! double-precision complex numbers behind one small trait.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

/// Exact rational numbers.
pub type Q = BigRational;

/// Tolerance used by [`Field::approx_eq`] on the floating domain.
pub const FLOAT_TOL: f64 = 1e-10;

/// Arithmetic needed by the matrix kernels. Exact domains compare exactly,
/// the float domain compares with [`FLOAT_TOL`].
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Complex conjugation (identity on real and finite domains).
    fn conj(&self) -> Self {
        self.clone()
    }
    /// Size used for pivot selection; exact domains only distinguish zero.
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn approx_eq(&self, o: &Self) -> bool {
        self == o
    }
    fn is_exact() -> bool {
        true
    }
    fn domain_name() -> String;

    fn from_ratio(num: i64, den: i64) -> Option<Self> {
        Self::from_i64(den).inv().map(|d| Self::from_i64(num).mul(&d))
    }

    /// Integer power; negative exponents need an invertible base.
    fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Some(acc)
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q::from_integer(BigInt::from(0))
    }
    fn one() -> Self {
        Q::from_integer(BigInt::from(1))
    }
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn domain_name() -> String {
        "rational".into()
    }
}

/// Rationals with `i128` parts. Much faster than [`Q`] for the group
/// sweeps, where sample points are small; every operation is checked and
/// overflow panics rather than wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Qs(pub Ratio<i128>);

impl Qs {
    pub fn new(num: i128, den: i128) -> Self {
        Qs(Ratio::new(num, den))
    }
    pub fn to_q(&self) -> Q {
        Q::new(BigInt::from(*self.0.numer()), BigInt::from(*self.0.denom()))
    }
    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl Field for Qs {
    fn zero() -> Self {
        Qs(Ratio::from_integer(0))
    }
    fn one() -> Self {
        Qs(Ratio::from_integer(1))
    }
    fn from_i64(n: i64) -> Self {
        Qs(Ratio::from_integer(n as i128))
    }
    fn add(&self, o: &Self) -> Self {
        Qs(self.0.checked_add(&o.0).expect("Qs overflow"))
    }
    fn sub(&self, o: &Self) -> Self {
        Qs(self.0.checked_sub(&o.0).expect("Qs overflow"))
    }
    fn mul(&self, o: &Self) -> Self {
        Qs(self.0.checked_mul(&o.0).expect("Qs overflow"))
    }
    fn neg(&self) -> Self {
        Qs(-self.0)
    }
    fn inv(&self) -> Option<Self> {
        if *self.0.numer() == 0 {
            None
        } else {
            Some(Qs(self.0.recip()))
        }
    }
    fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }
    fn domain_name() -> String {
        "rational".into()
    }
}

/// Elements `re + i·im` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }
    pub fn i() -> Self {
        GaussQ::new(<Q as Field>::zero(), <Q as Field>::one())
    }
    pub fn from_q(re: Q) -> Self {
        GaussQ::new(re, <Q as Field>::zero())
    }
    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Field for GaussQ {
    fn zero() -> Self {
        GaussQ::new(<Q as Field>::zero(), <Q as Field>::zero())
    }
    fn one() -> Self {
        GaussQ::new(<Q as Field>::one(), <Q as Field>::zero())
    }
    fn from_i64(n: i64) -> Self {
        GaussQ::from_q(<Q as Field>::from_i64(n))
    }
    fn add(&self, o: &Self) -> Self {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        GaussQ::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        GaussQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        GaussQ::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        if num_traits::Zero::is_zero(&n) {
            return None;
        }
        Some(GaussQ::new(&self.re / &n, -&self.im / &n))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.re) && num_traits::Zero::is_zero(&self.im)
    }
    fn conj(&self) -> Self {
        GaussQ::new(self.re.clone(), -&self.im)
    }
    fn domain_name() -> String {
        "gaussian".into()
    }
}

/// The prime field 𝔽_P.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }
    /// All elements 0..P.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Fp)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 * o.0) % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2).
        let mut acc = 1u64;
        let mut b = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        Some(Fp(acc))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn domain_name() -> String {
        format!("F{}", P)
    }
}

/// Double-precision complex numbers with tolerance-based equality.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct C64(pub Complex64);

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64(Complex64::new(re, im))
    }
    pub fn re(&self) -> f64 {
        self.0.re
    }
    pub fn im(&self) -> f64 {
        self.0.im
    }
    pub fn abs(&self) -> f64 {
        self.0.norm()
    }
    pub fn from_q(q: &Q) -> Self {
        C64::new(q_to_f64(q), 0.0)
    }
    pub fn from_gauss(g: &GaussQ) -> Self {
        C64::new(q_to_f64(&g.re), q_to_f64(&g.im))
    }
    pub fn expi(theta: f64) -> Self {
        C64(Complex64::from_polar(1.0, theta))
    }
}

impl Field for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        C64(self.0 + o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        C64(self.0 - o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        C64(self.0 * o.0)
    }
    fn neg(&self) -> Self {
        C64(-self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.norm() == 0.0 {
            None
        } else {
            Some(C64(self.0.inv()))
        }
    }
    fn is_zero(&self) -> bool {
        self.0.norm() <= FLOAT_TOL
    }
    fn conj(&self) -> Self {
        C64(self.0.conj())
    }
    fn magnitude(&self) -> f64 {
        self.0.norm()
    }
    fn approx_eq(&self, o: &Self) -> bool {
        let scale = 1.0f64.max(self.0.norm()).max(o.0.norm());
        (self.0 - o.0).norm() <= FLOAT_TOL * scale
    }
    fn is_exact() -> bool {
        false
    }
    fn domain_name() -> String {
        "complex64".into()
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators: fall back to a ratio of f64s.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact integer value of a rational, if it is one.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn q_is_positive(x: &Q) -> bool {
    x.is_positive()
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}
