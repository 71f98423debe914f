//! Finite-dimensional irreducible highest-weight modules `Λ_λ` at `v = 1`,
//! built over ℚ from the contravariant form: each weight space is spanned
//! by `F_i` applied to the weight space above it, and the span is cut down
//! to the quotient by the radical of the form.
//!
//! Weights are stored in fundamental-weight coordinates, so `⟨i, μ⟩ = μ_i`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootform_core::mat::Mat;
use rootform_core::scalar::{q, q_is_positive, q_to_f64, Field, GaussQ, C64, Q};
use rootform_core::{CartanDatum, CheckReport, Error, Result, RootSystem};
use serde::Serialize;

/// Default cap on `dim Λ_λ`.
pub const DEFAULT_DIM_CAP: u64 = 5000;

/// Scalars that contain ℚ.
pub trait Lift: Field {
    fn lift(x: &Q) -> Self;
}

impl Lift for Q {
    fn lift(x: &Q) -> Self {
        x.clone()
    }
}

impl Lift for GaussQ {
    fn lift(x: &Q) -> Self {
        GaussQ::from_q(x.clone())
    }
}

impl Lift for C64 {
    fn lift(x: &Q) -> Self {
        C64::from_q(x)
    }
}

pub fn lift_mat<F: Lift>(m: &Mat<Q>) -> Mat<F> {
    m.map(F::lift)
}

#[derive(Clone, Debug)]
pub struct WeightSpace {
    /// Fundamental coordinates.
    pub weight: Vec<i64>,
    /// `λ - μ` in simple-root coordinates.
    pub depth: Vec<i64>,
    pub offset: usize,
    pub dim: usize,
    /// Contravariant form on the chosen basis.
    pub gram: Mat<Q>,
    /// Spanning vectors `F_i b` before the radical is removed, as `(i, b)`
    /// with `b` a basis index of the space at `μ + α_i`.
    pub raw_labels: Vec<(usize, usize)>,
    pub raw_gram: Mat<Q>,
}

#[derive(Clone, Debug)]
pub struct WeightModule {
    pub datum: CartanDatum,
    pub highest: Vec<i64>,
    pub spaces: Vec<WeightSpace>,
    index: HashMap<Vec<i64>, usize>,
    /// `e[i][s]`: `E_i` from space `s` to the space at weight `+α_i`.
    e: Vec<HashMap<usize, Mat<Q>>>,
    /// `f[i][s]`: `F_i` from space `s` to the space at weight `-α_i`.
    f: Vec<HashMap<usize, Mat<Q>>>,
    dim: usize,
}

/// `α_i` in fundamental coordinates.
fn simple_weight(datum: &CartanDatum, i: usize) -> Vec<i64> {
    let mut e = vec![0; datum.rank];
    e[i] = 1;
    datum.to_weight(&e)
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Weyl dimension formula: `∏_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
pub fn weyl_dimension(datum: &CartanDatum, lambda: &[i64]) -> u64 {
    let rs = RootSystem::generate(datum);
    let mut num = Q::one();
    let mut den = Q::one();
    for r in &rs.positive {
        // α^∨ = Σ c_i (d_i / d_α) α_i^∨
        let mut top = Q::zero();
        let mut bot = Q::zero();
        for i in 0..datum.rank {
            let c = q(r.coeffs[i] * datum.d[i], r.d());
            top = top + &c * Q::from_i64(lambda[i] + 1);
            bot = bot + c;
        }
        num = num * top;
        den = den * bot;
    }
    let v = num / den;
    assert!(v.is_integer(), "Weyl dimension not integral");
    v.to_integer().try_into().expect("dimension fits u64")
}

/// Weight multiplicities by Freudenthal's recursion.
pub fn freudenthal_multiplicities(datum: &CartanDatum, lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let n = datum.rank;
    let rs = RootSystem::generate(datum);
    let alphas: Vec<Vec<i64>> = (0..n).map(|i| simple_weight(datum, i)).collect();
    // (ν, β) for ν in fundamental and β in simple-root coordinates.
    let pair = |nu: &[i64], beta: &[i64]| -> i64 { (0..n).map(|j| beta[j] * datum.d[j] * nu[j]).sum() };
    let pos: Vec<(Vec<i64>, Vec<i64>)> = rs
        .positive
        .iter()
        .map(|r| (r.coeffs.clone(), datum.to_weight(&r.coeffs)))
        .collect();
    let mut mult: HashMap<Vec<i64>, (Vec<i64>, i64)> = HashMap::new();
    mult.insert(lambda.to_vec(), (vec![0; n], 1));
    let mut level = vec![(lambda.to_vec(), vec![0i64; n])];
    while !level.is_empty() {
        let mut next: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        for (mu, depth) in &level {
            for i in 0..n {
                let nu: Vec<i64> = mu.iter().zip(&alphas[i]).map(|(a, b)| a - b).collect();
                let mut dp = depth.clone();
                dp[i] += 1;
                next.entry(nu).or_insert(dp);
            }
        }
        level.clear();
        for (mu, depth) in next {
            if mult.contains_key(&mu) {
                continue;
            }
            // (λ+ρ, λ+ρ) - (μ+ρ, μ+ρ) = (λ - μ, λ + μ + 2ρ)
            let sum: Vec<i64> = (0..n).map(|j| lambda[j] + mu[j] + 2).collect();
            let den = pair(&sum, &depth);
            if den <= 0 {
                continue;
            }
            let mut numer = 0;
            for (coeffs, wt) in &pos {
                let mut k = 1;
                loop {
                    let dk: Vec<i64> = (0..n).map(|j| depth[j] - k * coeffs[j]).collect();
                    if dk.iter().any(|&v| v < 0) {
                        break;
                    }
                    let nu: Vec<i64> = (0..n).map(|j| mu[j] + k * wt[j]).collect();
                    if let Some((_, m)) = mult.get(&nu) {
                        numer += m * pair(&nu, coeffs);
                    }
                    k += 1;
                }
            }
            let m = 2 * numer / den;
            assert_eq!(2 * numer % den, 0, "Freudenthal quotient not integral");
            if m > 0 {
                mult.insert(mu.clone(), (depth.clone(), m));
                level.push((mu, depth));
            }
        }
    }
    mult.into_iter().map(|(k, (_, m))| (k, m as u64)).collect()
}

impl WeightModule {
    pub fn build(datum: &CartanDatum, lambda: &[i64]) -> Result<WeightModule> {
        Self::build_with_cap(datum, lambda, DEFAULT_DIM_CAP)
    }

    pub fn build_with_cap(datum: &CartanDatum, lambda: &[i64], cap: u64) -> Result<WeightModule> {
        let n = datum.rank;
        if lambda.len() != n {
            return Err(Error::Shape(format!("weight has {} entries, rank is {n}", lambda.len())));
        }
        if lambda.iter().any(|&v| v < 0) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let expected = weyl_dimension(datum, lambda);
        if expected > cap {
            return Err(Error::DimensionCap { dim: expected, cap });
        }
        let alphas: Vec<Vec<i64>> = (0..n).map(|i| simple_weight(datum, i)).collect();
        let mut m = WeightModule {
            datum: datum.clone(),
            highest: lambda.to_vec(),
            spaces: vec![WeightSpace {
                weight: lambda.to_vec(),
                depth: vec![0; n],
                offset: 0,
                dim: 1,
                gram: Mat::identity(1),
                raw_labels: vec![],
                raw_gram: Mat::identity(1),
            }],
            index: HashMap::new(),
            e: vec![HashMap::new(); n],
            f: vec![HashMap::new(); n],
            dim: 1,
        };
        m.index.insert(lambda.to_vec(), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
            for &s in &level {
                for i in 0..n {
                    let sp = &m.spaces[s];
                    let nu: Vec<i64> = sp.weight.iter().zip(&alphas[i]).map(|(a, b)| a - b).collect();
                    let mut dp = sp.depth.clone();
                    dp[i] += 1;
                    next.entry(dp).or_insert(nu);
                }
            }
            level.clear();
            for (depth, nu) in next {
                if let Some(s) = m.add_space(nu, depth, &alphas) {
                    level.push(s);
                }
            }
        }
        if m.dim as u64 != expected {
            return Err(Error::Structure(format!(
                "built dimension {} differs from Weyl dimension {expected}",
                m.dim
            )));
        }
        Ok(m)
    }

    fn shifted(&self, w: &[i64], alpha: &[i64], sign: i64) -> Option<usize> {
        let v: Vec<i64> = w.iter().zip(alpha).map(|(a, b)| a + sign * b).collect();
        self.index.get(&v).copied()
    }

    /// `E_i F_j b` for `b` a basis vector of space `p` (so `F_j b` has weight
    /// `ν = wt(p) - α_j`), as coordinates in the space at `ν + α_i`.
    fn e_of_f(&self, i: usize, j: usize, p: usize, b: usize, alphas: &[Vec<i64>]) -> Vec<Q> {
        let wp = &self.spaces[p].weight;
        let nu: Vec<i64> = wp.iter().zip(&alphas[j]).map(|(a, c)| a - c).collect();
        let target = self.shifted(&nu, &alphas[i], 1).expect("target space exists");
        let mut out = vec![Q::zero(); self.spaces[target].dim];
        // F_j E_i b
        if let Some(qi) = self.shifted(wp, &alphas[i], 1) {
            let eb = self.e[i][&p].column(b);
            let fj = &self.f[j][&qi];
            for (r, o) in out.iter_mut().enumerate() {
                for (c, v) in eb.iter().enumerate() {
                    if !v.is_zero() {
                        *o = &*o + fj.get(r, c) * v;
                    }
                }
            }
        }
        if i == j {
            out[b] = &out[b] + Q::from_i64(wp[i]);
        }
        out
    }

    fn add_space(&mut self, nu: Vec<i64>, depth: Vec<i64>, alphas: &[Vec<i64>]) -> Option<usize> {
        let n = self.datum.rank;
        // Spanning set F_i b.
        let mut cands: Vec<(usize, usize, usize)> = Vec::new();
        let mut above: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            if let Some(p) = self.shifted(&nu, &alphas[i], 1) {
                above[i] = Some(p);
                for b in 0..self.spaces[p].dim {
                    cands.push((i, p, b));
                }
            }
        }
        if cands.is_empty() {
            return None;
        }
        // w[c][i] = E_i (candidate c) in the space above along α_i.
        let w: Vec<Vec<Option<Vec<Q>>>> = cands
            .iter()
            .map(|&(j, p, b)| {
                (0..n)
                    .map(|i| above[i].map(|_| self.e_of_f(i, j, p, b, alphas)))
                    .collect()
            })
            .collect();
        let k = cands.len();
        // (F_i b, F_j b') = (b, E_i F_j b')
        let raw = Mat::from_fn(k, k, |r, c| {
            let (i, p, b) = cands[r];
            let g = &self.spaces[p].gram;
            let v = w[c][i].as_ref().expect("space above exists");
            let mut acc = Q::zero();
            for (t, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc = acc + g.get(b, t) * x;
                }
            }
            acc
        });
        let (_, pivots) = raw.row_reduce();
        let dim = pivots.len();
        if dim == 0 {
            return None;
        }
        let gb = Mat::from_fn(dim, dim, |r, c| raw.get(pivots[r], pivots[c]).clone());
        let gb_inv = gb.inverse().expect("pivot block is nonsingular");
        let coords = gb_inv.mul(&Mat::from_fn(dim, k, |r, c| raw.get(pivots[r], c).clone()));
        let s = self.spaces.len();
        for i in 0..n {
            let Some(p) = above[i] else { continue };
            let pd = self.spaces[p].dim;
            let first = cands.iter().position(|&(ci, cp, _)| ci == i && cp == p).unwrap();
            self.f[i].insert(p, Mat::from_fn(dim, pd, |r, b| coords.get(r, first + b).clone()));
            self.e[i].insert(
                s,
                Mat::from_fn(pd, dim, |r, c| w[pivots[c]][i].as_ref().unwrap()[r].clone()),
            );
        }
        self.spaces.push(WeightSpace {
            weight: nu.clone(),
            depth,
            offset: self.dim,
            dim,
            gram: gb,
            raw_labels: cands.iter().map(|&(i, _, b)| (i, b)).collect(),
            raw_gram: raw,
        });
        self.index.insert(nu, s);
        self.dim += dim;
        Some(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn space_of(&self, weight: &[i64]) -> Option<&WeightSpace> {
        self.index.get(weight).map(|&s| &self.spaces[s])
    }

    /// Weight of each basis vector.
    pub fn basis_weights(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.dim);
        for sp in &self.spaces {
            for _ in 0..sp.dim {
                out.push(sp.weight.clone());
            }
        }
        out
    }

    pub fn multiplicities(&self) -> BTreeMap<Vec<i64>, u64> {
        self.spaces.iter().map(|s| (s.weight.clone(), s.dim as u64)).collect()
    }

    fn assemble(&self, blocks: &HashMap<usize, Mat<Q>>, alpha: &[i64], sign: i64) -> Mat<Q> {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (&src, blk) in blocks {
            let sp = &self.spaces[src];
            let tgt = &self.spaces[self.shifted(&sp.weight, alpha, sign).unwrap()];
            for r in 0..tgt.dim {
                for c in 0..sp.dim {
                    out.set(tgt.offset + r, sp.offset + c, blk.get(r, c).clone());
                }
            }
        }
        out
    }

    pub fn e(&self, i: usize) -> Mat<Q> {
        self.assemble(&self.e[i], &simple_weight(&self.datum, i), 1)
    }

    pub fn f(&self, i: usize) -> Mat<Q> {
        self.assemble(&self.f[i], &simple_weight(&self.datum, i), -1)
    }

    pub fn h(&self, i: usize) -> Mat<Q> {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (k, w) in self.basis_weights().iter().enumerate() {
            out.set(k, k, Q::from_i64(w[i]));
        }
        out
    }

    /// Block-diagonal contravariant Gram matrix.
    pub fn gram(&self) -> Mat<Q> {
        let mut out = Mat::zeros(self.dim, self.dim);
        for sp in &self.spaces {
            for r in 0..sp.dim {
                for c in 0..sp.dim {
                    out.set(sp.offset + r, sp.offset + c, sp.gram.get(r, c).clone());
                }
            }
        }
        out
    }

    /// Projection onto the weight space of `weight`.
    pub fn projector(&self, weight: &[i64]) -> Mat<Q> {
        let mut out = Mat::zeros(self.dim, self.dim);
        if let Some(sp) = self.space_of(weight) {
            for k in 0..sp.dim {
                out.set(sp.offset + k, sp.offset + k, Q::one());
            }
        }
        out
    }

    // -----------------------------------------------------------------------
    // Checks

    /// `[E_i, F_j] = δ_ij H_i`, `[H_i, E_j] = ⟨i, α_j⟩ E_j`, and the Serre
    /// relations for `E` and for `F`.
    pub fn serre_check(&self) -> CheckReport {
        let n = self.rank();
        let mut rep = CheckReport::new("serre_relations");
        let es: Vec<Mat<Q>> = (0..n).map(|i| self.e(i)).collect();
        let fs: Vec<Mat<Q>> = (0..n).map(|i| self.f(i)).collect();
        let hs: Vec<Mat<Q>> = (0..n).map(|i| self.h(i)).collect();
        let a = &self.datum.a;
        for i in 0..n {
            for j in 0..n {
                let c = es[i].commutator(&fs[j]);
                let ok = if i == j { c == hs[i] } else { c.is_zero() };
                rep.record(ok, || format!("[E_{i}, F_{j}]"));
                let c = hs[i].commutator(&es[j]);
                rep.record(c == es[j].scale(&Q::from_i64(a[j][i])), || format!("[H_{i}, E_{j}]"));
                if i == j {
                    continue;
                }
                let top = 1 - a[j][i];
                for ops in [&es, &fs] {
                    let mut acc = Mat::<Q>::zeros(self.dim, self.dim);
                    for p in 0..=top {
                        let qq = top - p;
                        let term = divided_power(&ops[i], p).mul(&ops[j]).mul(&divided_power(&ops[i], qq));
                        acc = if qq % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                    }
                    rep.record(acc.is_zero(), || format!("Serre ({i}, {j})"));
                }
            }
        }
        rep
    }

    /// `(F_i x, y) = (x, E_i y)` on the whole module and weight spaces
    /// mutually orthogonal (the latter by construction of the block Gram).
    pub fn contravariance_check(&self) -> CheckReport {
        let mut rep = CheckReport::new("contravariant_form");
        let g = self.gram();
        for i in 0..self.rank() {
            let lhs = self.f(i).transpose().mul(&g);
            let rhs = g.mul(&self.e(i));
            rep.record(lhs == rhs, || format!("i = {i}"));
        }
        rep.record(*self.spaces[0].gram.get(0, 0) == Q::one(), || "(η, η) ≠ 1".into());
        rep
    }

    /// Exact positive-definiteness per weight space by leading minors.
    pub fn positivity_check(&self) -> CheckReport {
        let mut rep = CheckReport::new("gram_positive_definite");
        for sp in &self.spaces {
            let ok = sp.gram.leading_minors().iter().all(q_is_positive);
            rep.record(ok, || format!("weight {:?}", sp.weight));
        }
        rep
    }

    /// Built multiplicities against the Freudenthal recursion and the total
    /// dimension against Weyl's formula.
    pub fn multiplicity_check(&self) -> CheckReport {
        let mut rep = CheckReport::new("weight_multiplicities");
        let oracle = freudenthal_multiplicities(&self.datum, &self.highest);
        let built = self.multiplicities();
        rep.record(oracle == built, || format!("built {built:?} vs Freudenthal {oracle:?}"));
        let w = weyl_dimension(&self.datum, &self.highest);
        rep.record(w == self.dim as u64, || format!("dim {} vs Weyl {w}", self.dim));
        rep
    }

    /// `(F_j^{(s)} y, F_j^{(s)} y) = [2s + ⟨j, wt x⟩ choose s]·(y, y)` for `y`
    /// killed by `E_j`, `x = F_j^{(s)} y`. Exhaustive over a basis of
    /// `ker E_j` in weight spaces of dimension at most `max_space_dim`.
    pub fn binomial_step_check(&self, max_space_dim: usize) -> CheckReport {
        let mut rep = CheckReport::new("binomial_norm_step");
        let g = self.gram();
        for j in 0..self.rank() {
            let e = self.e(j);
            let f = self.f(j);
            for sp in &self.spaces {
                if sp.dim > max_space_dim {
                    continue;
                }
                // ker E_j on this weight space
                let blk = Mat::from_fn(self.dim, sp.dim, |r, c| e.get(r, sp.offset + c).clone());
                for kv in blk.null_space() {
                    let mut y = vec![Q::zero(); self.dim];
                    for (c, v) in kv.into_iter().enumerate() {
                        y[sp.offset + c] = v;
                    }
                    let yy = form(&g, &y, &y);
                    let n = sp.weight[j];
                    let mut x = y.clone();
                    for s in 0..=n + 1 {
                        if s > 0 {
                            x = f.mul_vec(&x).into_iter().map(|v| v / Q::from_i64(s)).collect();
                        }
                        let lhs = form(&g, &x, &x);
                        let wt_x = n - 2 * s;
                        let rhs = Q::from_i64(binom(2 * s + wt_x, s)) * &yy;
                        rep.record(lhs == rhs, || format!("j={j} weight {:?} s={s}", sp.weight));
                    }
                }
            }
        }
        rep
    }
}

fn form(g: &Mat<Q>, x: &[Q], y: &[Q]) -> Q {
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// `M^{(c)} = M^c / c!`.
pub fn divided_power<F: Field>(m: &Mat<F>, c: i64) -> Mat<F> {
    let mut out = Mat::identity(m.rows);
    for k in 1..=c {
        out = out.mul(m).scale(&F::from_ratio(1, k).expect("characteristic zero"));
    }
    out
}

/// `Σ_c h^c M^{(c)}` for nilpotent `M`.
pub fn exp_nilpotent<F: Field>(m: &Mat<F>, h: &F) -> Mat<F> {
    let mut out = Mat::identity(m.rows);
    let mut term = Mat::identity(m.rows);
    let mut k = 1;
    loop {
        term = term.mul(m).scale(&h.mul(&F::from_ratio(1, k).expect("characteristic zero")));
        if term.is_zero() {
            return out;
        }
        out = out.add(&term);
        k += 1;
    }
}

/// Lusztig's generators on a module, over any scalar domain containing ℚ.
pub struct Generators<F> {
    pub e: Vec<Mat<F>>,
    pub f: Vec<Mat<F>>,
    weights: Vec<Vec<i64>>,
    gram: Mat<F>,
    gram_inv: Mat<F>,
}

impl<F: Lift> Generators<F> {
    pub fn new(m: &WeightModule) -> Self {
        let gram = m.gram();
        Generators {
            e: (0..m.rank()).map(|i| lift_mat(&m.e(i))).collect(),
            f: (0..m.rank()).map(|i| lift_mat(&m.f(i))).collect(),
            weights: m.basis_weights(),
            gram_inv: lift_mat(&gram.inverse().expect("Gram is nonsingular")),
            gram: lift_mat(&gram),
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn x(&self, i: usize, h: &F) -> Mat<F> {
        exp_nilpotent(&self.e[i], h)
    }

    pub fn y(&self, i: usize, h: &F) -> Mat<F> {
        exp_nilpotent(&self.f[i], h)
    }

    /// `s''_i = x_i(1) y_i(-1) x_i(1)`.
    pub fn s2(&self, i: usize) -> Mat<F> {
        let one = F::one();
        self.x(i, &one).mul(&self.y(i, &one.neg())).mul(&self.x(i, &one))
    }

    /// `Σ_μ Σ_{l+m=⟨i,μ⟩} (-1)^l F_i^{(l)} 1_μ E_i^{(m)}`.
    pub fn s2_double_sum(&self, i: usize) -> Mat<F> {
        let d = self.dim();
        let mut out = Mat::<F>::zeros(d, d);
        let mut seen: Vec<&Vec<i64>> = Vec::new();
        for w in &self.weights {
            if seen.contains(&w) {
                continue;
            }
            seen.push(w);
            let proj = Mat::from_fn(d, d, |r, c| if r == c && &self.weights[r] == w { F::one() } else { F::zero() });
            let total = w[i];
            for l in 0..=total {
                let m = total - l;
                if m < 0 {
                    continue;
                }
                let term = divided_power(&self.f[i], l).mul(&proj).mul(&divided_power(&self.e[i], m));
                out = if l % 2 == 0 { out.add(&term) } else { out.sub(&term) };
            }
        }
        out
    }

    /// `t_i(u) = x_i(u-1) y_i(1) x_i(u⁻¹-1) y_i(-u)`.
    pub fn t(&self, i: usize, u: &F) -> Result<Mat<F>> {
        let uinv = u.inv().ok_or_else(|| Error::DivisionByZero("t_i(0)".into()))?;
        let one = F::one();
        Ok(self
            .x(i, &u.sub(&one))
            .mul(&self.y(i, &one))
            .mul(&self.x(i, &uinv.sub(&one)))
            .mul(&self.y(i, &u.neg())))
    }

    /// `Σ_μ u^{⟨i,μ⟩} 1_μ`.
    pub fn t_diagonal(&self, i: usize, u: &F) -> Result<Mat<F>> {
        let d = self.dim();
        let mut out = Mat::zeros(d, d);
        for (k, w) in self.weights.iter().enumerate() {
            let v = u.powi(w[i]).ok_or_else(|| Error::DivisionByZero("u = 0".into()))?;
            out.set(k, k, v);
        }
        Ok(out)
    }

    /// Adjoint for `(x, y) = Σ x_a conj(y_b) G_ab`: `M† = G⁻¹ conj(M)ᵀ G`.
    pub fn dagger(&self, m: &Mat<F>) -> Mat<F> {
        self.gram_inv.mul(&m.adjoint()).mul(&self.gram)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub checks: Vec<CheckReport>,
}

impl GeneratorReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

/// Sample parameters for the rational identities.
pub fn sample_units() -> Vec<Q> {
    vec![Q::from_i64(2), Q::from_i64(-1), q(3, 5)]
}

impl WeightModule {
    /// Additivity of `x_i`, the product formula for `t_i(u)`, the double-sum
    /// formula for `s''_i`, and torus conjugation, exactly over ℚ.
    pub fn generator_identities_check(&self) -> CheckReport {
        let g = Generators::<Q>::new(self);
        let n = self.rank();
        let mut rep = CheckReport::new("generator_identities");
        let hs = [Q::from_i64(1), q(-2, 3), Q::from_i64(5)];
        for i in 0..n {
            for a in &hs {
                for b in &hs {
                    let ok = g.x(i, a).mul(&g.x(i, b)) == g.x(i, &(a + b));
                    rep.record(ok, || format!("x_{i}({a}) x_{i}({b})"));
                    let ok = g.y(i, a).mul(&g.y(i, b)) == g.y(i, &(a + b));
                    rep.record(ok, || format!("y_{i}({a}) y_{i}({b})"));
                }
            }
            rep.record(g.s2(i) == g.s2_double_sum(i), || format!("s''_{i}"));
            for u in sample_units() {
                let t = g.t(i, &u).unwrap();
                rep.record(t == g.t_diagonal(i, &u).unwrap(), || format!("t_{i}({u}) diagonal"));
            }
        }
        for j in 0..n {
            for u in sample_units() {
                let t = g.t(j, &u).unwrap();
                let t_inv = g.t(j, &u.recip()).unwrap();
                rep.record(t.mul(&t_inv).is_identity(), || format!("t_{j}({u}) t_{j}(1/{u})"));
                for i in 0..n {
                    let chi = Field::powi(&u, self.datum.a[i][j]).unwrap();
                    for h in &hs {
                        let lhs = t.mul(&g.x(i, h)).mul(&t_inv);
                        let ok = lhs == g.x(i, &(&chi * h));
                        rep.record(ok, || format!("t_{j}({u}) x_{i}({h}) t⁻¹"));
                    }
                }
            }
        }
        rep
    }

    /// Exactly over ℚ(i): `E_i† = F_i`, `x_i(h)† = y_i(conj h)`, and that
    /// `s''_i` and `t_i(u)` with `|u| = 1` are unitary.
    pub fn adjoint_check(&self) -> CheckReport {
        let g = Generators::<GaussQ>::new(self);
        let mut rep = CheckReport::new("adjoint_law");
        let hs = [
            GaussQ::new(Q::one(), Q::from_i64(2)),
            GaussQ::new(q(-3, 4), q(1, 5)),
            GaussQ::from_i64(2),
        ];
        let unit = GaussQ::new(q(3, 5), q(4, 5));
        for i in 0..self.rank() {
            rep.record(g.dagger(&g.e[i]) == g.f[i], || format!("E_{i}†"));
            rep.record(g.dagger(&g.f[i]) == g.e[i], || format!("F_{i}†"));
            for h in &hs {
                rep.record(g.dagger(&g.x(i, h)) == g.y(i, &h.conj()), || format!("x_{i}({h})†"));
            }
            let s = g.s2(i);
            rep.record(g.dagger(&s).mul(&s).is_identity(), || format!("s''_{i} unitary"));
            let t = g.t(i, &unit).unwrap();
            rep.record(g.dagger(&t).mul(&t).is_identity(), || format!("t_{i}(3/5+4i/5) unitary"));
        }
        rep
    }

    /// `exp(t(E_i - F_i))` and `exp(it(E_i + F_i))` preserve the hermitian
    /// form, numerically via `expm`.
    pub fn unitarity_numeric(&self, samples: usize, tol: f64, seed: u64) -> (CheckReport, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rep = CheckReport::new("unitary_one_parameter_subgroups");
        let d = self.dim;
        let to_c = |m: &Mat<Q>| DMatrix::<Complex64>::from_fn(d, d, |r, c| Complex64::new(q_to_f64(m.get(r, c)), 0.0));
        let g = to_c(&self.gram());
        let mut worst: f64 = 0.0;
        for i in 0..self.rank() {
            let e = to_c(&self.e(i));
            let f = to_c(&self.f(i));
            for _ in 0..samples {
                let t: f64 = rng.gen_range(-3.0..3.0);
                for (label, gen) in [
                    ("E-F", (&e - &f) * Complex64::new(t, 0.0)),
                    ("i(E+F)", (&e + &f) * Complex64::new(0.0, t)),
                ] {
                    let u = gen.exp();
                    // (ux, uy) = (x, y)  ⇔  uᵀ G conj(u) = G
                    let err = (u.transpose() * &g * u.map(|z| z.conj()) - &g).map(|z| z.norm()).max();
                    worst = worst.max(err);
                    rep.record(err <= tol, || format!("exp(t {label}_{i}) t={t}: {err:e}"));
                }
            }
        }
        (rep, worst)
    }
}

/// Direct sum of all fundamental modules.
pub fn fundamental_sum(datum: &CartanDatum) -> Result<Vec<WeightModule>> {
    (0..datum.rank)
        .map(|i| {
            let mut w = vec![0; datum.rank];
            w[i] = 1;
            WeightModule::build(datum, &w)
        })
        .collect()
}

/// For a reduced word of `w₀`, the products `x_{i₁}(h₁)⋯x_{iₙ}(hₙ)` on the
/// sum of fundamental modules are pairwise distinct over `samples` random
/// positive rational vectors `h`. The zero vector gives the identity.
pub fn xh_injectivity_probe(datum: &CartanDatum, samples: usize, seed: u64) -> Result<CheckReport> {
    let mods = fundamental_sum(datum)?;
    let gens: Vec<Generators<Q>> = mods.iter().map(Generators::new).collect();
    let word: Vec<usize> = RootSystem::generate(datum).longest_word().iter().map(|i| i - 1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::new("positive_part_injective");
    let x_h = |h: &[Q]| -> Vec<Mat<Q>> {
        gens.iter()
            .map(|g| {
                word.iter()
                    .zip(h)
                    .fold(Mat::identity(g.dim()), |acc, (&i, hk)| acc.mul(&g.x(i, hk)))
            })
            .collect()
    };
    let zero = vec![Q::zero(); word.len()];
    rep.record(x_h(&zero).iter().all(|m| m.is_identity()), || "x_0 ≠ 1".into());
    let mut seen: Vec<(Vec<Q>, Vec<Mat<Q>>)> = Vec::new();
    while seen.len() < samples {
        let h: Vec<Q> = (0..word.len()).map(|_| q(rng.gen_range(1..1000), rng.gen_range(1..8))).collect();
        if seen.iter().any(|(k, _)| *k == h) {
            continue;
        }
        let m = x_h(&h);
        for (k, other) in &seen {
            rep.record(*other != m, || format!("x_h collides for {h:?} and {k:?}"));
        }
        seen.push((h, m));
    }
    Ok(rep)
}
