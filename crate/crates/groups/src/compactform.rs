//! The compact real form 𝔲 of g built from the root category, its
//! embedding φ into g ⊗ ℚ(i), the Killing form restricted to it, and the
//! closed-form one-parameter subgroups `exp(t ad α_X)`, `exp(t ad β_X)`,
//! `exp(t ad ξ_X)`.
//!
//! Basis order: `α_{S_1..S_m}`, then `β_X` and `ξ_X` for the `N` parity-0
//! objects. `β_{TX} = β_X`, `ξ_{TX} = -ξ_X`, and `α` is additive in the class:
//! `d(X)α_X = Σ d(S) k_S α_S` for `ζ_X = Σ k_S ζ_S`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootform_core::liealg::Elem;
use rootform_core::mat::Mat;
use rootform_core::scalar::{q, Field, GaussQ, Q, C64};
use rootform_core::{CartanDatum, CheckReport, Error, LieAlgebra, ObjId, Result};
use serde::Serialize;

use crate::chevgroup::ChevalleyGroup;
use crate::trigpoly::TrigPoly;

#[derive(Clone, Debug)]
pub struct CompactForm {
    pub group: ChevalleyGroup,
    /// `A_{S_j, Y}` for simple `S_j` and every object `Y`; a private copy so
    /// the mutation fixture can perturb it without touching g.
    a_simple: Vec<Vec<i64>>,
}

fn fact(n: i64) -> i64 {
    (1..=n).product()
}

impl CompactForm {
    pub fn new(cartan: &CartanDatum) -> Result<CompactForm> {
        Ok(Self::from_group(ChevalleyGroup::new(cartan)?))
    }

    pub fn from_group(group: ChevalleyGroup) -> CompactForm {
        let lie = &group.lie;
        let a_simple = (0..lie.rank())
            .map(|j| (0..lie.n_obj()).map(|y| lie.a(lie.rc.simple(j), y)).collect())
            .collect();
        CompactForm { group, a_simple }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.group.lie
    }

    /// Number of parity-0 objects.
    pub fn n_pos(&self) -> usize {
        self.lie().n_obj() / 2
    }

    pub fn rank(&self) -> usize {
        self.lie().rank()
    }

    pub fn dim(&self) -> usize {
        self.rank() + 2 * self.n_pos()
    }

    /// Perturb `A_{S_j, Y}` in the `α`-bracket only (negative fixture).
    pub fn mutate_a(&mut self, j: usize, y: ObjId, delta: i64) {
        self.a_simple[j][y] += delta;
    }

    pub fn basis_name(&self, b: usize) -> String {
        let m = self.rank();
        let n = self.n_pos();
        let rc = &self.lie().rc;
        if b < m {
            format!("α_{}", rc.name(rc.simple(b)))
        } else if b < m + n {
            format!("β_{}", rc.name(b - m))
        } else {
            format!("ξ_{}", rc.name(b - m - n))
        }
    }

    fn rep(&self, x: ObjId) -> (usize, i64) {
        let n = self.n_pos();
        if x < n {
            (x, 1)
        } else {
            (x - n, -1)
        }
    }

    /// `α_X` in the simple `α` coordinates (also valid for parity 1).
    pub fn alpha(&self, x: ObjId) -> Elem {
        let mut v = vec![0; self.dim()];
        for (j, c) in self.lie().rc.hprime_coeffs(x).into_iter().enumerate() {
            v[j] = c;
        }
        v
    }

    pub fn beta(&self, x: ObjId) -> Elem {
        let mut v = vec![0; self.dim()];
        v[self.rank() + self.rep(x).0] = 1;
        v
    }

    pub fn xi(&self, x: ObjId) -> Elem {
        let mut v = vec![0; self.dim()];
        let (r, sign) = self.rep(x);
        v[self.rank() + self.n_pos() + r] = sign;
        v
    }

    fn add_scaled(out: &mut [i64], c: i64, v: &[i64]) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }

    /// `Σ_L γ_{XY}^L v_L` where `v` is `β` or `ξ`.
    fn gamma_sum(&self, out: &mut [i64], sign: i64, x: ObjId, y: ObjId, v: impl Fn(&Self, ObjId) -> Elem) {
        if let Some((l, g)) = self.lie().gamma_entry(x, y) {
            Self::add_scaled(out, sign * g, &v(self, l));
        }
    }

    /// Bracket of two basis vectors of 𝔲.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Elem {
        let m = self.rank();
        let n = self.n_pos();
        let dim = self.dim();
        let mut out = vec![0; dim];
        if a == b {
            return out;
        }
        #[derive(Clone, Copy, PartialEq)]
        enum K {
            Alpha(usize),
            Beta(ObjId),
            Xi(ObjId),
        }
        let kind = |i: usize| {
            if i < m {
                K::Alpha(i)
            } else if i < m + n {
                K::Beta(i - m)
            } else {
                K::Xi(i - m - n)
            }
        };
        let shift = |x| self.lie().rc.shift(x);
        match (kind(a), kind(b)) {
            (K::Alpha(_), K::Alpha(_)) => {}
            (K::Alpha(j), K::Beta(y)) => Self::add_scaled(&mut out, -self.a_simple[j][y], &self.xi(y)),
            (K::Alpha(j), K::Xi(y)) => Self::add_scaled(&mut out, self.a_simple[j][y], &self.beta(y)),
            (K::Beta(x), K::Beta(y)) => {
                self.gamma_sum(&mut out, 1, x, y, Self::beta);
                self.gamma_sum(&mut out, 1, x, shift(y), Self::beta);
            }
            (K::Xi(x), K::Xi(y)) => {
                self.gamma_sum(&mut out, -1, x, y, Self::beta);
                self.gamma_sum(&mut out, 1, x, shift(y), Self::beta);
            }
            (K::Beta(x), K::Xi(y)) => {
                if x == y {
                    Self::add_scaled(&mut out, -2, &self.alpha(x));
                } else {
                    self.gamma_sum(&mut out, 1, x, y, Self::xi);
                    self.gamma_sum(&mut out, -1, x, shift(y), Self::xi);
                }
            }
            _ => {
                let r = self.bracket_basis(b, a);
                return r.into_iter().map(|v| -v).collect();
            }
        }
        out
    }

    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Elem {
        let mut out = vec![0; self.dim()];
        for (a, &ca) in x.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in y.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                Self::add_scaled(&mut out, ca * cb, &self.bracket_basis(a, b));
            }
        }
        out
    }

    /// `ad(b)` on 𝔲 for a basis vector, `m[i][j]` = coordinate `i` of `[b, b_j]`.
    pub fn ad_basis(&self, b: usize) -> Vec<Vec<i64>> {
        let dim = self.dim();
        let mut m = vec![vec![0; dim]; dim];
        for j in 0..dim {
            for (i, v) in self.bracket_basis(b, j).into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        m
    }

    pub fn ad(&self, x: &[i64]) -> Vec<Vec<i64>> {
        let dim = self.dim();
        let mut m = vec![vec![0; dim]; dim];
        for (b, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let a = self.ad_basis(b);
            for i in 0..dim {
                for j in 0..dim {
                    m[i][j] += c * a[i][j];
                }
            }
        }
        m
    }

    pub fn jacobi_check(&self) -> CheckReport {
        let dim = self.dim();
        let mut rep = CheckReport::new("compact_jacobi");
        let basis: Vec<Elem> = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect();
        let table: Vec<Vec<Elem>> = (0..dim)
            .map(|a| (0..dim).map(|b| self.bracket_basis(a, b)).collect())
            .collect();
        for a in 0..dim {
            for b in a..dim {
                for c in b..dim {
                    let t1 = self.bracket(&basis[a], &table[b][c]);
                    let t2 = self.bracket(&basis[b], &table[c][a]);
                    let t3 = self.bracket(&basis[c], &table[a][b]);
                    let ok = (0..dim).all(|k| t1[k] + t2[k] + t3[k] == 0);
                    rep.record(ok, || {
                        format!("({}, {}, {})", self.basis_name(a), self.basis_name(b), self.basis_name(c))
                    });
                }
            }
        }
        rep
    }

    /// Antisymmetry and the defining cases, as a table check.
    pub fn antisymmetry_check(&self) -> CheckReport {
        let dim = self.dim();
        let mut rep = CheckReport::new("compact_antisymmetry");
        for a in 0..dim {
            for b in 0..dim {
                let x = self.bracket_basis(a, b);
                let y = self.bracket_basis(b, a);
                rep.record(x.iter().zip(&y).all(|(p, q)| p + q == 0), || {
                    format!("({}, {})", self.basis_name(a), self.basis_name(b))
                });
            }
        }
        rep
    }

    // -----------------------------------------------------------------------
    // φ: 𝔲 → g ⊗ ℚ(i)

    /// Image of a basis vector of 𝔲.
    pub fn phi_basis(&self, b: usize) -> Vec<GaussQ> {
        let lie = self.lie();
        let m = self.rank();
        let n = self.n_pos();
        let mut v = vec![GaussQ::zero(); lie.dim()];
        let i = GaussQ::i();
        if b < m {
            v[lie.cartan_index(b)] = i;
        } else if b < m + n {
            let x = b - m;
            v[x] = GaussQ::one();
            v[lie.rc.shift(x)] = GaussQ::one();
        } else {
            let x = b - m - n;
            v[x] = i.clone();
            v[lie.rc.shift(x)] = i.neg();
        }
        v
    }

    pub fn phi(&self, x: &[i64]) -> Vec<GaussQ> {
        let mut out = vec![GaussQ::zero(); self.lie().dim()];
        for (b, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = self.phi_basis(b);
            let cq = GaussQ::from_i64(c);
            for (o, v) in out.iter_mut().zip(&img) {
                *o = o.add(&v.mul(&cq));
            }
        }
        out
    }

    /// `φ[a, b] = [φa, φb]` on all basis pairs, plus injectivity via rank.
    pub fn phi_homomorphism_check(&self) -> CheckReport {
        let dim = self.dim();
        let bt = &self.group.brackets;
        let mut rep = CheckReport::new("phi_homomorphism");
        let imgs: Vec<Vec<GaussQ>> = (0..dim).map(|b| self.phi_basis(b)).collect();
        for a in 0..dim {
            for b in 0..dim {
                let lhs = self.phi(&self.bracket_basis(a, b));
                let rhs = bt.bracket(&imgs[a], &imgs[b]);
                rep.record(lhs == rhs, || format!("({}, {})", self.basis_name(a), self.basis_name(b)));
            }
        }
        // Injective: the images are ℝ-independent, i.e. their real and
        // imaginary parts span a space of dimension dim 𝔲.
        let g = self.lie().dim();
        let real: Mat<Q> = Mat::from_fn(dim, 2 * g, |r, c| {
            if c < g {
                imgs[r][c].re.clone()
            } else {
                imgs[r][c - g].im.clone()
            }
        });
        rep.record(real.rank() == dim, || "φ not injective".into());
        rep
    }

    /// The image of φ is fixed by θ: `θ(u_X) = u_{TX}`, `θ(H'_X) = H'_{TX} =
    /// -H'_X`, antilinear.
    pub fn theta_fixed_check(&self) -> CheckReport {
        let lie = self.lie();
        let mut rep = CheckReport::new("phi_image_theta_fixed");
        for b in 0..self.dim() {
            let v = self.phi_basis(b);
            let mut th = vec![GaussQ::zero(); lie.dim()];
            for x in 0..lie.n_obj() {
                th[lie.rc.shift(x)] = v[x].conj();
            }
            for j in 0..lie.rank() {
                let k = lie.cartan_index(j);
                th[k] = v[k].conj().neg();
            }
            rep.record(th == v, || self.basis_name(b));
        }
        rep
    }

    // -----------------------------------------------------------------------
    // Killing form on 𝔯

    /// Gram matrix of the Killing form pulled back along φ.
    pub fn killing_on_r(&self) -> Result<Vec<Vec<Q>>> {
        let kg = self.lie().killing_def36();
        let dim = self.dim();
        let imgs: Vec<Vec<GaussQ>> = (0..dim).map(|b| self.phi_basis(b)).collect();
        let gdim = self.lie().dim();
        let mut gram = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = GaussQ::zero();
                for k in 0..gdim {
                    if imgs[a][k].is_zero() {
                        continue;
                    }
                    for l in 0..gdim {
                        if kg[k][l] == 0 || imgs[b][l].is_zero() {
                            continue;
                        }
                        acc = acc.add(&imgs[a][k].mul(&imgs[b][l]).mul(&GaussQ::from_i64(kg[k][l])));
                    }
                }
                if !acc.im.is_zero() {
                    return Err(Error::Structure(format!(
                        "form not real on ({}, {})",
                        self.basis_name(a),
                        self.basis_name(b)
                    )));
                }
                gram[a][b] = acc.re;
            }
        }
        Ok(gram)
    }

    /// Block structure of the Gram matrix and negative-definiteness by
    /// leading principal minors.
    pub fn definiteness_check(&self) -> Result<(CheckReport, Vec<Q>)> {
        let gram = self.killing_on_r()?;
        let kg = self.lie().killing_def36();
        let m = self.rank();
        let n = self.n_pos();
        let dim = self.dim();
        let mut rep = CheckReport::new("killing_on_r");
        for a in 0..m {
            for b in m..dim {
                rep.record(gram[a][b].is_zero(), || format!("α-block mixes with {}", self.basis_name(b)));
            }
        }
        for x in 0..n {
            let two = Q::from_i64(2 * kg[x][self.lie().rc.shift(x)]);
            rep.record(gram[m + x][m + x] == two && gram[m + n + x][m + n + x] == two, || {
                format!("(β,β), (ξ,ξ) ≠ 2(u,u_T) at {}", self.lie().rc.name(x))
            });
            for y in 0..n {
                if x != y {
                    rep.record(gram[m + x][m + y].is_zero() && gram[m + n + x][m + n + y].is_zero(), || {
                        format!("off-diagonal at ({x}, {y})")
                    });
                }
                rep.record(gram[m + x][m + n + y].is_zero(), || format!("(β,ξ) ≠ 0 at ({x}, {y})"));
            }
        }
        let g: Mat<Q> = Mat::from_fn(dim, dim, |i, j| gram[i][j].clone());
        let minors = g.leading_minors();
        for (k, mk) in minors.iter().enumerate() {
            let signed = if (k + 1) % 2 == 0 { mk.clone() } else { -mk.clone() };
            rep.record(rootform_core::scalar::q_is_positive(&signed), || format!("minor {} = {}", k + 1, mk));
        }
        Ok((rep, minors))
    }

    // -----------------------------------------------------------------------
    // The constants C_{X,Y,j,1}, D and D'

    /// `C_{X,Y,j,1} = (1/j!) γ_{XY}^{L_{1,1}} γ_{X,L_{1,1}}^{L_{2,1}} ⋯`, and
    /// 0 when the chain leaves the root set.
    pub fn c_chain(&self, x: ObjId, y: ObjId, j: i64) -> Q {
        let lie = self.lie();
        let mut prod: i64 = 1;
        let mut cur = y;
        for _ in 0..j {
            if !lie.rc.is_admissible_pair(x, cur) {
                return Q::zero();
            }
            match lie.gamma_entry(x, cur) {
                Some((l, g)) => {
                    prod *= g;
                    cur = l;
                }
                None => return Q::zero(),
            }
        }
        q(prod, fact(j))
    }

    /// `L_{X,Y,k,1}` for `k` of either sign.
    pub fn l_k(&self, x: ObjId, y: ObjId, k: i64) -> Option<ObjId> {
        self.lie().rc.ext(x, y, k, 1)
    }

    pub fn d_poly(&self, x: ObjId, y: ObjId, k: i64) -> Result<TrigPoly<Q>> {
        let rc = &self.lie().rc;
        let (p, qq) = rc.pq(x, y)?;
        if k < -p || k > qq {
            return Err(Error::Other(format!("k = {k} outside [-{p}, {qq}]")));
        }
        let tx = rc.shift(x);
        let mut out = TrigPoly::<Q>::zero();
        for j in (-k).max(0)..=p {
            let lmj = self.l_k(x, y, -j).expect("in string");
            let coef = self.c_chain(tx, y, j) * self.c_chain(x, lmj, j + k);
            let term = TrigPoly::monomial(coef, (2 * j + k) as u32, (qq - p - k) as i32);
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn dprime_poly(&self, x: ObjId, y: ObjId, k: i64) -> Result<TrigPoly<Q>> {
        let rc = &self.lie().rc;
        let (p, qq) = rc.pq(x, y)?;
        if k < -p || k > qq {
            return Err(Error::Other(format!("k = {k} outside [-{p}, {qq}]")));
        }
        let (tx, ty) = (rc.shift(x), rc.shift(y));
        let mut out = TrigPoly::<Q>::zero();
        for j in k.max(0)..=qq {
            // L_{-j,-1} = L_{TX,TY,j,1}
            let l = rc.ext(tx, ty, j, 1).expect("in string");
            let coef = self.c_chain(x, y, j) * self.c_chain(x, l, j - k);
            let term = TrigPoly::monomial(coef, (2 * j - k) as u32, (p - qq + k) as i32);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// The factorial identity for chains with `p_{XY} = 0`.
    pub fn lemma_gamma1_check(&self) -> CheckReport {
        let lie = self.lie();
        let rc = &lie.rc;
        let mut rep = CheckReport::new("gamma_factorial_identity");
        let n = lie.n_obj();
        for x in 0..n {
            for y in 0..n {
                if !rc.is_admissible_pair(x, y) {
                    continue;
                }
                let (p, qq) = rc.pq(x, y).unwrap();
                if p != 0 {
                    continue;
                }
                for k in 0..=qq {
                    for j in k..=qq {
                        let mut prod: i64 = 1;
                        for i in k..j {
                            let li = rc.ext(x, y, i, 1).unwrap();
                            let li1 = rc.ext(x, y, i + 1, 1).unwrap();
                            prod *= lie.gamma(x, li, li1);
                            prod *= lie.gamma(x, rc.shift(li1), rc.shift(li));
                        }
                        let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                        let rhs = q(sign * fact(qq - k) * fact(j), fact(qq - j) * fact(k));
                        rep.record(Q::from_i64(prod) == rhs, || {
                            format!("X={} Y={} k={k} j={j}: {prod} vs {rhs}", rc.name(x), rc.name(y))
                        });
                    }
                }
            }
        }
        rep
    }

    /// `D_{X,Y,k} = D'_{X,Y,k}` in normal form for every admissible pair.
    pub fn lemma_gamma2_check(&self) -> CheckReport {
        let lie = self.lie();
        let rc = &lie.rc;
        let mut rep = CheckReport::new("d_equals_dprime");
        let n = lie.n_obj();
        for x in 0..n {
            for y in 0..n {
                if !rc.is_admissible_pair(x, y) {
                    continue;
                }
                let (p, qq) = rc.pq(x, y).unwrap();
                for k in -p..=qq {
                    let d = self.d_poly(x, y, k).unwrap();
                    let dp = self.dprime_poly(x, y, k).unwrap();
                    rep.record(d == dp, || format!("X={} Y={} k={k}", rc.name(x), rc.name(y)));
                }
            }
        }
        rep
    }

    // -----------------------------------------------------------------------
    // Closed-form exponentials on 𝔲 (float)

    fn put(m: &mut DMatrix<f64>, col: usize, c: f64, v: &[i64]) {
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                m[(i, col)] += c * x as f64;
            }
        }
    }

    fn a_simple_f(&self, j: usize, x: ObjId) -> f64 {
        // A_{S_j, X} from the α-bracket table, which is what exp(ad α) uses.
        self.a_simple[j][x] as f64
    }

    /// `exp(t ad α_X)` in 𝔲 coordinates.
    pub fn exp_alpha(&self, x: ObjId, t: f64) -> DMatrix<f64> {
        let dim = self.dim();
        let (m, n) = (self.rank(), self.n_pos());
        let mut out = DMatrix::<f64>::zeros(dim, dim);
        for j in 0..m {
            out[(j, j)] = 1.0;
        }
        // α_X = Σ_j c_j α_{S_j}, so A_{X,Y} = Σ_j c_j A_{S_j,Y}.
        let cx = self.lie().rc.hprime_coeffs(x);
        for y in 0..n {
            let a: f64 = (0..m).map(|j| cx[j] as f64 * self.a_simple_f(j, y)).sum();
            let (c, s) = ((t * a).cos(), (t * a).sin());
            Self::put(&mut out, m + y, c, &self.beta(y));
            Self::put(&mut out, m + y, -s, &self.xi(y));
            Self::put(&mut out, m + n + y, s, &self.beta(y));
            Self::put(&mut out, m + n + y, c, &self.xi(y));
        }
        out
    }

    /// `exp(t ad β_X)`.
    pub fn exp_beta(&self, x: ObjId, t: f64) -> Result<DMatrix<f64>> {
        let (x0, _) = self.rep(x);
        self.exp_beta_xi(x0, t, false)
    }

    /// `exp(t ad ξ_X)`; `ξ_{TX} = -ξ_X`.
    pub fn exp_xi(&self, x: ObjId, t: f64) -> Result<DMatrix<f64>> {
        let (x0, sign) = self.rep(x);
        self.exp_beta_xi(x0, sign as f64 * t, true)
    }

    fn exp_beta_xi(&self, x: ObjId, t: f64, is_xi: bool) -> Result<DMatrix<f64>> {
        let dim = self.dim();
        let (m, n) = (self.rank(), self.n_pos());
        let lie = self.lie();
        let mut out = DMatrix::<f64>::zeros(dim, dim);
        let ax = self.alpha(x);
        let (c2, s2) = ((2.0 * t).cos(), (2.0 * t).sin());
        // α columns.
        for j in 0..m {
            let a = lie.a(lie.rc.simple(j), x) as f64;
            out[(j, j)] += 1.0;
            Self::put(&mut out, j, (c2 - 1.0) / 2.0 * a, &ax);
            if is_xi {
                Self::put(&mut out, j, -s2 / 2.0 * a, &self.beta(x));
            } else {
                Self::put(&mut out, j, s2 / 2.0 * a, &self.xi(x));
            }
        }
        for y in 0..n {
            let (cb, cx) = (m + y, m + n + y);
            if y == x {
                if is_xi {
                    Self::put(&mut out, cb, c2, &self.beta(x));
                    Self::put(&mut out, cb, s2, &ax);
                    Self::put(&mut out, cx, 1.0, &self.xi(x));
                } else {
                    Self::put(&mut out, cb, 1.0, &self.beta(x));
                    Self::put(&mut out, cx, c2, &self.xi(x));
                    Self::put(&mut out, cx, -s2, &ax);
                }
                continue;
            }
            let (p, qq) = lie.rc.pq(x, y)?;
            for k in -p..=qq {
                let d = self.d_poly(x, y, k)?.eval(t);
                let l = self.l_k(x, y, k).expect("in string");
                if !is_xi {
                    Self::put(&mut out, cb, d, &self.beta(l));
                    Self::put(&mut out, cx, d, &self.xi(l));
                } else if k.rem_euclid(2) == 1 {
                    let e_b = if (k - 1).div_euclid(2) % 2 == 0 { 1.0 } else { -1.0 };
                    let e_x = if (k + 1).div_euclid(2) % 2 == 0 { 1.0 } else { -1.0 };
                    Self::put(&mut out, cb, e_b * d, &self.xi(l));
                    Self::put(&mut out, cx, e_x * d, &self.beta(l));
                } else {
                    let e = if k.div_euclid(2) % 2 == 0 { 1.0 } else { -1.0 };
                    Self::put(&mut out, cb, e * d, &self.beta(l));
                    Self::put(&mut out, cx, e * d, &self.xi(l));
                }
            }
        }
        Ok(out)
    }

    /// `ad` of a basis vector as a float matrix.
    pub fn ad_f64(&self, b: usize) -> DMatrix<f64> {
        let a = self.ad_basis(b);
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |i, j| a[i][j] as f64)
    }

    pub fn gram_f64(&self) -> Result<DMatrix<f64>> {
        let g = self.killing_on_r()?;
        let dim = self.dim();
        Ok(DMatrix::from_fn(dim, dim, |i, j| rootform_core::scalar::q_to_f64(&g[i][j])))
    }

    /// Closed forms against `expm(t·ad)` for `samples` random `(X, t)` per
    /// generator kind; returns the report and the worst deviation seen.
    pub fn exp_oracle_check(&self, samples: usize, tol: f64, seed: u64) -> Result<(CheckReport, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rep = CheckReport::new("closed_form_exponentials");
        let (m, n) = (self.rank(), self.n_pos());
        let mut worst: f64 = 0.0;
        for kind in 0..3 {
            for _ in 0..samples {
                let t: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                let (closed, b, label) = match kind {
                    0 => {
                        let j = rng.gen_range(0..m);
                        (self.exp_alpha(self.lie().rc.simple(j), t), j, "alpha")
                    }
                    1 => {
                        let x = rng.gen_range(0..n);
                        (self.exp_beta(x, t)?, m + x, "beta")
                    }
                    _ => {
                        let x = rng.gen_range(0..n);
                        (self.exp_xi(x, t)?, m + n + x, "xi")
                    }
                };
                let oracle = (self.ad_f64(b) * t).exp();
                let err = (&closed - &oracle).amax();
                worst = worst.max(err);
                rep.record(err <= tol, || format!("{label} {} t={t}: {err:e}", self.basis_name(b)));
            }
        }
        Ok((rep, worst))
    }

    /// Random words of length `1..=max_len` in the closed-form generators
    /// preserve the Gram form: `kᵀ G k = G`.
    pub fn gram_preservation_check(&self, words_per_len: usize, max_len: usize, tol: f64, seed: u64) -> Result<(CheckReport, f64)> {
        let g = self.gram_f64()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rep = CheckReport::new("gram_preservation");
        let (m, n) = (self.rank(), self.n_pos());
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for len in 1..=max_len {
            for _ in 0..words_per_len {
                let mut k = DMatrix::<f64>::identity(dim, dim);
                let mut word = Vec::new();
                for _ in 0..len {
                    let t: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                    let gen = match rng.gen_range(0..3) {
                        0 => {
                            let j = rng.gen_range(0..m);
                            word.push(format!("expα{j}({t:.3})"));
                            self.exp_alpha(self.lie().rc.simple(j), t)
                        }
                        1 => {
                            let x = rng.gen_range(0..2 * n);
                            word.push(format!("expβ{x}({t:.3})"));
                            self.exp_beta(x, t)?
                        }
                        _ => {
                            let x = rng.gen_range(0..2 * n);
                            word.push(format!("expξ{x}({t:.3})"));
                            self.exp_xi(x, t)?
                        }
                    };
                    k = k * gen;
                }
                let err = (k.transpose() * &g * &k - &g).amax();
                worst = worst.max(err);
                rep.record(err <= tol, || format!("{}: {err:e}", word.join("·")));
            }
        }
        Ok((rep, worst))
    }

    /// The Lie algebra generated by `ad α_S, ad β_S, ad ξ_S` (simple `S`)
    /// has dimension `dim 𝔲`, and `ad` is injective on 𝔲.
    pub fn generated_rank(&self) -> (usize, usize) {
        let dim = self.dim();
        let flat = |m: &Vec<Vec<i64>>| -> Vec<Q> { m.iter().flatten().map(|&v| Q::from_i64(v)).collect() };
        let all: Vec<Vec<Q>> = (0..dim).map(|b| flat(&self.ad_basis(b))).collect();
        let ad_rank = Mat::from_fn(dim, dim * dim, |i, j| all[i][j].clone()).rank();

        let (m, n) = (self.rank(), self.n_pos());
        let rc = &self.lie().rc;
        let mut gens = Vec::new();
        for j in 0..m {
            let s = rc.simple(j);
            gens.push(self.ad_basis(j));
            gens.push(self.ad_basis(m + s));
            gens.push(self.ad_basis(m + n + s));
        }
        let imul = rootform_core::mat::imul;
        let mut span: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut rank = 0;
        let mut frontier = gens.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for cand in frontier {
                let mut rows: Vec<Vec<Q>> = span.iter().map(&flat).collect();
                rows.push(flat(&cand));
                let r = Mat::from_fn(rows.len(), dim * dim, |i, j| rows[i][j].clone()).rank();
                if r > rank {
                    rank = r;
                    for g in &gens {
                        let a = imul(g, &cand);
                        let b = imul(&cand, g);
                        let c: Vec<Vec<i64>> = a
                            .iter()
                            .zip(&b)
                            .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
                            .collect();
                        next.push(c);
                    }
                    span.push(cand);
                }
            }
            frontier = next;
        }
        (rank, ad_rank)
    }

    // -----------------------------------------------------------------------
    // exp(t ad(u_X + u_TX)) as a Chevalley group product

    /// `E_X(tan t) h_X(sec t) E_{TX}(tan t)` over trigonometric polynomials,
    /// or the Gaussian variant `E_X(i tan t) h_X(sec t) E_{TX}(-i tan t)`.
    pub fn expbeta_product_symbolic(&self, x: ObjId, gaussian: bool) -> Mat<TrigPoly<GaussQ>> {
        let g = &self.group;
        let tan = TrigPoly::<GaussQ>::tan();
        let (a1, a2) = if gaussian {
            let i = TrigPoly::constant(GaussQ::i());
            (tan.mul(&i), tan.mul(&i).neg())
        } else {
            (tan.clone(), tan)
        };
        let sec = TrigPoly::<GaussQ>::sec();
        g.e(x, &a1)
            .mul(&g.h(x, &sec).expect("sec is a unit"))
            .mul(&g.e(g.shift(x), &a2))
    }

    /// `Z = u_X + u_TX` (or `i(u_X - u_TX)`) as a vector in g ⊗ ℚ(i).
    fn expbeta_generator(&self, x: ObjId, gaussian: bool) -> Vec<GaussQ> {
        let lie = self.lie();
        let mut z = vec![GaussQ::zero(); lie.dim()];
        if gaussian {
            z[x] = GaussQ::i();
            z[lie.rc.shift(x)] = GaussQ::i().neg();
        } else {
            z[x] = GaussQ::one();
            z[lie.rc.shift(x)] = GaussQ::one();
        }
        z
    }

    /// The product `R(t)` equals `exp(t ad Z)`: `R(0) = 1` and
    /// `R' = ad Z · R` hold exactly in the trigonometric normal form, which
    /// pins `R` down as the unique solution of that linear ODE.
    pub fn lemma_expbeta_symbolic_check(&self) -> CheckReport {
        let mut rep = CheckReport::new("expbeta_symbolic");
        let lie = self.lie();
        for x in 0..lie.n_obj() {
            for gaussian in [false, true] {
                let r = self.expbeta_product_symbolic(x, gaussian);
                let z = self.expbeta_generator(x, gaussian);
                let adz = self.group.brackets.ad(&z).map(|v| TrigPoly::constant(v.clone()));
                let at0 = r.map(|p| p.at_zero());
                let deriv = r.map(|p| p.deriv());
                let ok = at0.is_identity() && deriv == adz.mul(&r);
                rep.record(ok, || format!("X={} gaussian={gaussian}", lie.rc.name(x)));
            }
        }
        rep
    }

    /// Numeric form of the same factorisation against `expm`, at `samples`
    /// random `t` per object (in `(-π/2, π/2)` where `tan` is finite).
    pub fn lemma_expbeta_numeric_check(&self, samples: usize, tol: f64, seed: u64) -> (CheckReport, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rep = CheckReport::new("expbeta_numeric");
        let lie = self.lie();
        let dim = lie.dim();
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x = rng.gen_range(0..lie.n_obj());
            let t: f64 = rng.gen_range(-1.4..1.4);
            for gaussian in [false, true] {
                let z = self.expbeta_generator(x, gaussian);
                let adz = self.group.brackets.ad(&z);
                let oracle = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| {
                    let g = adz.get(i, j);
                    Complex64::new(
                        rootform_core::scalar::q_to_f64(&g.re),
                        rootform_core::scalar::q_to_f64(&g.im),
                    ) * t
                })
                .exp();
                let tan = t.tan();
                let (a1, a2) = if gaussian {
                    (C64::new(0.0, tan), C64::new(0.0, -tan))
                } else {
                    (C64::new(tan, 0.0), C64::new(tan, 0.0))
                };
                let g = &self.group;
                let prod = g
                    .e(x, &a1)
                    .mul(&g.h(x, &C64::new(1.0 / t.cos(), 0.0)).unwrap())
                    .mul(&g.e(g.shift(x), &a2));
                let mut err: f64 = 0.0;
                for i in 0..dim {
                    for j in 0..dim {
                        err = err.max((prod.get(i, j).0 - oracle[(i, j)]).norm());
                    }
                }
                worst = worst.max(err);
                rep.record(err <= tol, || format!("X={} t={t} gaussian={gaussian}: {err:e}", lie.rc.name(x)));
            }
        }
        (rep, worst)
    }

    /// The column `exp(t ad(u_X + u_TX)) u_Y` of the symbolic product equals
    /// `Σ_k D_{X,Y,k} u_{L_{k,1}}`.
    pub fn d_matches_group_check(&self) -> CheckReport {
        let mut rep = CheckReport::new("d_matches_group_column");
        let lie = self.lie();
        let rc = &lie.rc;
        let n = lie.n_obj();
        let to_g = |p: &TrigPoly<Q>| -> TrigPoly<GaussQ> {
            let mut out = TrigPoly::<GaussQ>::zero();
            for (e, a, b) in p.terms() {
                out = out.add(&TrigPoly::monomial(GaussQ::from_q(a.clone()), 0, e));
                out = out.add(&TrigPoly::monomial(GaussQ::from_q(b.clone()), 1, e));
            }
            out
        };
        for x in 0..n {
            let r = self.expbeta_product_symbolic(x, false);
            for y in 0..n {
                if !rc.is_admissible_pair(x, y) {
                    continue;
                }
                let (p, qq) = rc.pq(x, y).unwrap();
                let mut expect = vec![TrigPoly::<GaussQ>::zero(); lie.dim()];
                for k in -p..=qq {
                    let l = self.l_k(x, y, k).unwrap();
                    expect[l] = to_g(&self.d_poly(x, y, k).unwrap());
                }
                rep.record(r.column(y) == expect, || format!("X={} Y={}", rc.name(x), rc.name(y)));
            }
        }
        rep
    }
}

/// Aggregate of the compact-form checks for one type.
#[derive(Clone, Debug, Serialize)]
pub struct CompactReport {
    pub checks: Vec<CheckReport>,
    pub minors: Vec<String>,
    pub exp_worst: f64,
    pub gram_worst: f64,
    pub expbeta_worst: f64,
    pub generated_rank: usize,
    pub dim: usize,
}

impl CompactReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed()) && self.generated_rank == self.dim
    }
}

/// Tolerance for closed-form exponentials against `expm`.
pub const EXP_TOL: f64 = 1e-10;
/// Tolerance for Gram preservation by long words.
pub const GRAM_TOL: f64 = 1e-9;

impl CompactForm {
    pub fn verify_all(&self, seed: u64) -> Result<CompactReport> {
        self.verify_all_with(seed, EXP_TOL, GRAM_TOL)
    }

    pub fn verify_all_with(&self, seed: u64, exp_tol: f64, gram_tol: f64) -> Result<CompactReport> {
        let (def, minors) = self.definiteness_check()?;
        let (exp, exp_worst) = self.exp_oracle_check(20, exp_tol, seed)?;
        let (gram, gram_worst) = self.gram_preservation_check(3, 6, gram_tol, seed + 1)?;
        let (eb, expbeta_worst) = self.lemma_expbeta_numeric_check(20, exp_tol, seed + 2);
        let (generated_rank, _) = self.generated_rank();
        Ok(CompactReport {
            checks: vec![
                self.antisymmetry_check(),
                self.jacobi_check(),
                self.phi_homomorphism_check(),
                self.theta_fixed_check(),
                def,
                self.lemma_gamma1_check(),
                self.lemma_gamma2_check(),
                exp,
                gram,
                self.lemma_expbeta_symbolic_check(),
                eb,
                self.d_matches_group_check(),
            ],
            minors: minors.iter().map(|m| m.to_string()).collect(),
            exp_worst,
            gram_worst,
            expbeta_worst,
            generated_rank,
            dim: self.dim(),
        })
    }
}
