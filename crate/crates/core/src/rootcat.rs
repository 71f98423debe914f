//! Combinatorial model of the root category of a Dynkin quiver.
//!
//! An indecomposable is a positive root together with a parity bit; the shift
//! `T` flips the parity and negates the Grothendieck class. Parity 0 plays the
//! role of the hereditary (module) side.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{CartanDatum, RootSystem};

pub type ObjId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCatObject {
    /// Index into `RootSystem::positive`.
    pub root: usize,
    pub parity: u8,
    /// `ζ_X = (−1)^parity · root`.
    pub class: Vec<i64>,
    pub d: i64,
}

#[derive(Clone, Debug)]
pub struct RootCategory {
    pub roots: RootSystem,
    pub objects: Vec<RootCatObject>,
}

impl RootCategory {
    /// Objects are numbered `0..N` for parity 0 and `N..2N` for their shifts.
    pub fn new(cartan: &CartanDatum) -> RootCategory {
        let roots = RootSystem::generate(cartan);
        let n = roots.num_positive();
        let mut objects = Vec::with_capacity(2 * n);
        for parity in 0..2u8 {
            for (k, r) in roots.positive.iter().enumerate() {
                let sign = if parity == 0 { 1 } else { -1 };
                objects.push(RootCatObject {
                    root: k,
                    parity,
                    class: r.coeffs.iter().map(|c| sign * c).collect(),
                    d: r.d(),
                });
            }
        }
        RootCategory { roots, objects }
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.roots.cartan
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn shift(&self, x: ObjId) -> ObjId {
        let n = self.roots.num_positive();
        (x + n) % (2 * n)
    }

    pub fn class(&self, x: ObjId) -> &[i64] {
        &self.objects[x].class
    }

    pub fn d(&self, x: ObjId) -> i64 {
        self.objects[x].d
    }

    /// The parity-0 object over the i-th simple root.
    pub fn simple(&self, i: usize) -> ObjId {
        self.roots.simple_index(i)
    }

    pub fn name(&self, x: ObjId) -> String {
        let o = &self.objects[x];
        let c: Vec<String> = self.roots.positive[o.root].coeffs.iter().map(|v| v.to_string()).collect();
        if o.parity == 0 {
            format!("X[{}]", c.join(""))
        } else {
            format!("TX[{}]", c.join(""))
        }
    }

    /// The object whose class is `v`, if `v` is a root.
    pub fn object_of_class(&self, v: &[i64]) -> Option<ObjId> {
        let (k, sign) = self.roots.find(v)?;
        Some(if sign > 0 { k } else { k + self.roots.num_positive() })
    }

    /// `(H_X | H_Y)`.
    pub fn euler(&self, x: ObjId, y: ObjId) -> i64 {
        self.cartan().inner(self.class(x), self.class(y))
    }

    /// `A_{XY} = (H_X | H_Y) / d(X)`.
    pub fn a(&self, x: ObjId, y: ObjId) -> i64 {
        let e = self.euler(x, y);
        let d = self.d(x);
        assert!(e % d == 0, "A_XY not integral for ({x},{y})");
        e / d
    }

    pub fn is_admissible_pair(&self, x: ObjId, y: ObjId) -> bool {
        x != y && x != self.shift(y)
    }

    /// `(p_{XY}, q_{XY})`.
    pub fn pq(&self, x: ObjId, y: ObjId) -> Result<(i64, i64)> {
        if !self.is_admissible_pair(x, y) {
            return Err(Error::Pair(format!("{} vs {}", self.name(x), self.name(y))));
        }
        self.roots.root_string(self.class(x), self.class(y))
    }

    /// `L_{X,Y,i,j}`: the object of class `iζ_X + jζ_Y`, when that is a root.
    pub fn ext(&self, x: ObjId, y: ObjId, i: i64, j: i64) -> Option<ObjId> {
        let v: Vec<i64> = self
            .class(x)
            .iter()
            .zip(self.class(y))
            .map(|(a, b)| i * a + j * b)
            .collect();
        self.object_of_class(&v)
    }

    /// `ω_M(N)`.
    pub fn omega(&self, m: ObjId, n: ObjId) -> ObjId {
        if !self.is_admissible_pair(m, n) {
            return self.shift(n);
        }
        let (p, q) = self.pq(m, n).expect("admissible");
        if p - q > 0 {
            self.ext(self.shift(m), n, p - q, 1)
        } else {
            self.ext(m, n, q - p, 1)
        }
        .expect("ω lands on a root")
    }

    /// Coefficients `k_S` of `ζ_X = Σ k_S ζ_S` over simple objects.
    pub fn simple_decomposition(&self, x: ObjId) -> &[i64] {
        self.class(x)
    }

    /// `H'_X` in the basis `H'_{S_1..S_m}`: `d(X)H'_X = Σ d(S) k_S H'_S`.
    pub fn hprime_coeffs(&self, x: ObjId) -> Vec<i64> {
        let dx = self.d(x);
        let cl = self.class(x);
        (0..self.rank())
            .map(|s| {
                let num = self.cartan().d[s] * cl[s];
                assert!(num % dx == 0, "coroot coefficient not integral");
                num / dx
            })
            .collect()
    }
}
