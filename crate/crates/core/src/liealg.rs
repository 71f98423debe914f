//! The integer form `g_ℤ` spanned by `u_X` (one per indecomposable) and
//! `H'_{S_1..S_m}` (simple objects on the module side).
//!
//! The bracket is
//! `[u_X, u_Y] = γ_{XY}^L u_L` for `Y ≇ TX`, `[u_X, u_{TX}] = H'_X`,
//! `[H'_X, u_Y] = −A_{XY} u_Y` and `[H', H'] = 0`.
//! Structure constants come from Chevalley-basis signs transported by
//! `u_X = (−1)^parity e_{ζ_X}`, `H'_X = −h_{ζ_X}`.

use serde::Serialize;

use crate::chevalley::ChevalleySigns;
use crate::error::{Error, Result};
use crate::rootcat::{ObjId, RootCategory};
use crate::rootdata::CartanDatum;

/// Dense coefficient vector in the basis `u_0..u_{n-1}, H'_{S_1}..H'_{S_m}`.
pub type Elem = Vec<i64>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub rc: RootCategory,
    /// `gamma[x*n + y] = Some((L, γ_{XY}^L))`.
    gamma: Vec<Option<(ObjId, i64)>>,
    /// `H'_X` in the simple basis.
    hprime: Vec<Vec<i64>>,
    amat: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn merge(&mut self, other: &CheckReport) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness.clone_from(&other.witness);
        }
    }
}

impl LieAlgebra {
    /// Builds the γ table and validates it; any violated constraint aborts.
    pub fn new(cartan: &CartanDatum) -> Result<LieAlgebra> {
        let rc = RootCategory::new(cartan);
        let signs = ChevalleySigns::new(&rc.roots);
        let n = rc.len();
        let sigma = |x: ObjId| if rc.objects[x].parity == 0 { 1 } else { -1 };
        let mut gamma = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                if !rc.is_admissible_pair(x, y) {
                    continue;
                }
                if let Some(l) = rc.ext(x, y, 1, 1) {
                    let nv = signs.n(rc.class(x), rc.class(y));
                    gamma[x * n + y] = Some((l, sigma(x) * sigma(y) * sigma(l) * nv));
                }
            }
        }
        let lie = Self::from_parts(rc, gamma);
        lie.validate()?;
        Ok(lie)
    }

    fn from_parts(rc: RootCategory, gamma: Vec<Option<(ObjId, i64)>>) -> LieAlgebra {
        let n = rc.len();
        let hprime = (0..n).map(|x| rc.hprime_coeffs(x)).collect();
        let amat = (0..n).map(|x| (0..n).map(|y| rc.a(x, y)).collect()).collect();
        LieAlgebra {
            rc,
            gamma,
            hprime,
            amat,
        }
    }

    /// Constraint sweep: antisymmetry, class grading, `|γ| = p + 1`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_obj();
        for x in 0..n {
            for y in 0..n {
                if !self.rc.is_admissible_pair(x, y) {
                    continue;
                }
                let g = self.gamma[x * n + y];
                let gt = self.gamma[y * n + x];
                let (p, _) = self.rc.pq(x, y)?;
                match (g, gt, self.rc.ext(x, y, 1, 1)) {
                    (None, None, None) => {}
                    (Some((l, v)), Some((l2, w)), Some(l3)) if l == l2 && l == l3 => {
                        if v != -w || v.abs() != p + 1 {
                            return Err(Error::Structure(format!(
                                "γ({},{})={} γ({},{})={} p={}",
                                self.rc.name(x),
                                self.rc.name(y),
                                v,
                                self.rc.name(y),
                                self.rc.name(x),
                                w,
                                p
                            )));
                        }
                    }
                    _ => {
                        return Err(Error::Structure(format!(
                            "grading violated at ({}, {})",
                            self.rc.name(x),
                            self.rc.name(y)
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_obj(&self) -> usize {
        self.rc.len()
    }

    pub fn rank(&self) -> usize {
        self.rc.rank()
    }

    pub fn dim(&self) -> usize {
        self.n_obj() + self.rank()
    }

    pub fn cartan_index(&self, j: usize) -> usize {
        self.n_obj() + j
    }

    pub fn basis_name(&self, b: usize) -> String {
        if b < self.n_obj() {
            format!("u_{}", self.rc.name(b))
        } else {
            format!("H'_S{}", b - self.n_obj() + 1)
        }
    }

    /// `γ_{XY}^L`, zero unless `ζ_L = ζ_X + ζ_Y`.
    pub fn gamma(&self, x: ObjId, y: ObjId, l: ObjId) -> i64 {
        match self.gamma[x * self.n_obj() + y] {
            Some((l2, v)) if l2 == l => v,
            _ => 0,
        }
    }

    /// The unique nonzero term of `[u_X, u_Y]` when `Y ≇ TX`.
    pub fn gamma_entry(&self, x: ObjId, y: ObjId) -> Option<(ObjId, i64)> {
        self.gamma[x * self.n_obj() + y]
    }

    pub fn a(&self, x: ObjId, y: ObjId) -> i64 {
        self.amat[x][y]
    }

    pub fn hprime(&self, x: ObjId) -> &[i64] {
        &self.hprime[x]
    }

    /// Flip the sign of `γ_{XY}` and `γ_{YX}` (mutation fixture).
    pub fn flip_gamma_sign(&mut self, x: ObjId, y: ObjId) {
        let n = self.n_obj();
        for idx in [x * n + y, y * n + x] {
            if let Some((l, v)) = self.gamma[idx] {
                self.gamma[idx] = Some((l, -v));
            }
        }
    }

    /// Bracket of two basis vectors, as sparse terms.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Vec<(usize, i64)> {
        let n = self.n_obj();
        match (a < n, b < n) {
            (true, true) => {
                if b == self.rc.shift(a) {
                    self.hprime[a]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(j, &c)| (n + j, c))
                        .collect()
                } else {
                    match self.gamma[a * n + b] {
                        Some((l, v)) => vec![(l, v)],
                        None => vec![],
                    }
                }
            }
            (false, true) => {
                let s = self.rc.simple(a - n);
                let c = -self.amat[s][b];
                if c == 0 {
                    vec![]
                } else {
                    vec![(b, c)]
                }
            }
            (true, false) => {
                let s = self.rc.simple(b - n);
                let c = self.amat[s][a];
                if c == 0 {
                    vec![]
                } else {
                    vec![(a, c)]
                }
            }
            (false, false) => vec![],
        }
    }

    pub fn basis_vec(&self, b: usize) -> Elem {
        let mut v = vec![0; self.dim()];
        v[b] = 1;
        v
    }

    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Elem {
        let mut out = vec![0i64; self.dim()];
        for (a, &ca) in x.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in y.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                for (k, v) in self.bracket_basis(a, b) {
                    out[k] += ca * cb * v;
                }
            }
        }
        out
    }

    /// `ad(x)` with `m[i][j]` the `i`-th coefficient of `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[i64]) -> Vec<Vec<i64>> {
        let dim = self.dim();
        let mut m = vec![vec![0i64; dim]; dim];
        for (a, &ca) in x.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for j in 0..dim {
                for (k, v) in self.bracket_basis(a, j) {
                    m[k][j] += ca * v;
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, b: usize) -> Vec<Vec<i64>> {
        self.ad_matrix(&self.basis_vec(b))
    }

    /// `tr(ad x · ad y)` for basis vectors.
    pub fn trace_form(&self, a: usize, b: usize) -> i64 {
        let ma = self.ad_basis(a);
        let mb = self.ad_basis(b);
        let dim = self.dim();
        let mut t = 0;
        for i in 0..dim {
            for j in 0..dim {
                t += ma[i][j] * mb[j][i];
            }
        }
        t
    }

    /// Exhaustive Jacobi identity over basis triples.
    pub fn jacobi_check(&self) -> CheckReport {
        let dim = self.dim();
        let mut rep = CheckReport::new("jacobi");
        let mut acc = vec![0i64; dim];
        for a in 0..dim {
            for b in 0..dim {
                let ab = self.bracket_basis(a, b);
                for c in 0..dim {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for &(k, v) in &ab {
                        for (m, w) in self.bracket_basis(k, c) {
                            acc[m] += v * w;
                        }
                    }
                    for (k, v) in self.bracket_basis(b, c) {
                        for (m, w) in self.bracket_basis(k, a) {
                            acc[m] += v * w;
                        }
                    }
                    for (k, v) in self.bracket_basis(c, a) {
                        for (m, w) in self.bracket_basis(k, b) {
                            acc[m] += v * w;
                        }
                    }
                    let ok = acc.iter().all(|&x| x == 0);
                    rep.record(ok, || {
                        format!(
                            "({}, {}, {})",
                            self.basis_name(a),
                            self.basis_name(b),
                            self.basis_name(c)
                        )
                    });
                }
            }
        }
        rep
    }

    /// Gram matrix of the root-category form:
    /// `(H'_S, H'_T) = Σ_Z A_{SZ} A_{TZ}`, `(H, u) = 0`,
    /// `(u_X, u_{TX}) = −4 + Σ_Y γ_{TX,Y}^L γ_{X,L}^Y`.
    pub fn killing_def36(&self) -> Vec<Vec<i64>> {
        let n = self.n_obj();
        let m = self.rank();
        let dim = self.dim();
        let mut g = vec![vec![0i64; dim]; dim];
        for s in 0..m {
            for t in 0..m {
                let (os, ot) = (self.rc.simple(s), self.rc.simple(t));
                g[n + s][n + t] = (0..n).map(|z| self.amat[os][z] * self.amat[ot][z]).sum();
            }
        }
        for x in 0..n {
            let tx = self.rc.shift(x);
            let mut v = -4;
            for y in 0..n {
                if let Some((l, c1)) = self.gamma_entry(tx, y) {
                    v += c1 * self.gamma(x, l, y);
                }
            }
            g[x][tx] = v;
        }
        g
    }

    /// The full `tr(ad·ad)` Gram matrix.
    pub fn trace_gram(&self) -> Vec<Vec<i64>> {
        let dim = self.dim();
        let ads: Vec<Vec<Vec<i64>>> = (0..dim).map(|b| self.ad_basis(b)).collect();
        let mut g = vec![vec![0i64; dim]; dim];
        for a in 0..dim {
            for b in a..dim {
                let mut t = 0;
                for i in 0..dim {
                    for j in 0..dim {
                        if ads[a][i][j] != 0 {
                            t += ads[a][i][j] * ads[b][j][i];
                        }
                    }
                }
                g[a][b] = t;
                g[b][a] = t;
            }
        }
        g
    }

    /// `([x,y], z) = (x, [y,z])` on all basis triples.
    pub fn invariance_check(&self, gram: &[Vec<i64>]) -> CheckReport {
        let dim = self.dim();
        let mut rep = CheckReport::new("form_invariance");
        for x in 0..dim {
            for y in 0..dim {
                let xy = self.bracket_basis(x, y);
                for z in 0..dim {
                    let lhs: i64 = xy.iter().map(|&(k, v)| v * gram[k][z]).sum();
                    let rhs: i64 = self.bracket_basis(y, z).iter().map(|&(k, v)| v * gram[x][k]).sum();
                    rep.record(lhs == rhs, || format!("({x},{y},{z})"));
                }
            }
        }
        rep
    }

    /// `γ_{XY}^L · γ_{X,TL}^{TY} ∈ {−1,−2,−3,−4}` whenever nonzero.
    pub fn gamma_product_check(&self) -> CheckReport {
        let n = self.n_obj();
        let mut rep = CheckReport::new("gamma_product_values");
        for x in 0..n {
            for y in 0..n {
                if let Some((l, g1)) = self.gamma_entry(x, y) {
                    let g2 = self.gamma(x, self.rc.shift(l), self.rc.shift(y));
                    let prod = g1 * g2;
                    rep.record((-4..=-1).contains(&prod), || {
                        format!("X={} Y={} product={}", self.rc.name(x), self.rc.name(y), prod)
                    });
                }
            }
        }
        rep
    }

    /// `γ_{TZ,X}^Y d(X) = γ_{YZ}^X d(Y)` wherever the left side is defined.
    pub fn triangle_law_check(&self) -> CheckReport {
        let n = self.n_obj();
        let mut rep = CheckReport::new("triangle_sign_law");
        for z in 0..n {
            let tz = self.rc.shift(z);
            for x in 0..n {
                if let Some((y, g1)) = self.gamma_entry(tz, x) {
                    let g2 = self.gamma(y, z, x);
                    rep.record(g1 * self.rc.d(x) == g2 * self.rc.d(y), || {
                        format!("X={} Y={} Z={}", self.rc.name(x), self.rc.name(y), self.rc.name(z))
                    });
                }
            }
        }
        rep
    }

    /// Largest root-string length `q` over admissible pairs.
    pub fn q_max(&self) -> i64 {
        let n = self.n_obj();
        let mut best = 0;
        for x in 0..n {
            for y in 0..n {
                if self.rc.is_admissible_pair(x, y) {
                    best = best.max(self.rc.pq(x, y).expect("admissible").1);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lie(t: &str) -> LieAlgebra {
        LieAlgebra::new(&t.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_killing_is_minus_four() {
        let g = lie("A1");
        let k = g.killing_def36();
        assert_eq!(k[0][1], -4);
        assert_eq!(g.trace_form(0, 1), -4);
    }

    #[test]
    fn g2_jacobi() {
        assert!(lie("G2").jacobi_check().passed());
    }

    #[test]
    fn mutation_breaks_jacobi() {
        let mut g = lie("A2");
        let (x, y) = (g.rc.simple(0), g.rc.simple(1));
        g.flip_gamma_sign(x, y);
        let r = g.jacobi_check();
        assert!(r.failures > 0 && r.witness.is_some());
    }
}
