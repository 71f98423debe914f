//! Matrix coefficients and Peter-Weyl on finite truncations, Haar
//! quadrature on SU(2), Weyl integration on a maximal torus, and the
//! analytically integral lattice of the compact adjoint group.
//!
//! A function in the truncation is stored blockwise by its operator
//! coordinates: `f_{z,z'}(u) = (u z, z')` corresponds to `T = z z'^H G`,
//! so that `f(u) = tr(π(u) T)`. With this normalisation the Fourier image
//! of `f` is the block family `T_λ = (dim Λ_λ) f̂(π_λ)`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootform_core::mat::Mat;
use rootform_core::scalar::{q, q_to_f64, Field, GaussQ, Q};
use rootform_core::{CartanDatum, CheckReport, LatticePair, LieAlgebra, Result, RootSystem};
use serde::Serialize;

use crate::hwmodules::{lift_mat, WeightModule};

/// One `Λ_λ` with its hermitian Gram matrix.
#[derive(Clone, Debug)]
pub struct Block {
    pub module: WeightModule,
    pub gram: Mat<GaussQ>,
    gram_inv: Mat<GaussQ>,
}

impl Block {
    pub fn new(module: WeightModule) -> Block {
        let gram: Mat<GaussQ> = lift_mat(&module.gram());
        let gram_inv = gram.inverse().expect("contravariant form is nondegenerate");
        Block { module, gram, gram_inv }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `(x, y) = Σ x_a conj(y_b) G_ab`.
    pub fn form(&self, x: &[GaussQ], y: &[GaussQ]) -> GaussQ {
        let gx = self.gram.mul_vec(x);
        y.iter().zip(&gx).fold(GaussQ::zero(), |acc, (b, a)| acc.add(&b.conj().mul(a)))
    }

    /// Adjoint with respect to the form: `A* = G⁻¹ A^H G`.
    pub fn star(&self, a: &Mat<GaussQ>) -> Mat<GaussQ> {
        self.gram_inv.mul(&a.adjoint()).mul(&self.gram)
    }

    /// `T_{z,z'} = z z'^H G`.
    pub fn operator(&self, z: &[GaussQ], zp: &[GaussQ]) -> Mat<GaussQ> {
        let d = self.dim();
        let outer = Mat::from_fn(d, d, |r, c| z[r].mul(&zp[c].conj()));
        outer.mul(&self.gram)
    }

    /// Columns form a basis orthonormal for the form (float, via Cholesky).
    pub fn orthonormal_basis(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let g = DMatrix::<f64>::from_fn(d, d, |r, c| q_to_f64(&self.gram.get(r, c).re));
        let l = g.cholesky().expect("Gram is positive definite").l();
        // G = L Lᵀ, so P = L^{-T} has Pᵀ G P = 1.
        let p = l.transpose().try_inverse().expect("triangular factor is invertible");
        p.map(|x| Complex64::new(x, 0.0))
    }
}

/// `u ↦ (u z, z')_λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixCoefficient {
    pub lambda: Vec<i64>,
    pub z: Vec<GaussQ>,
    pub zp: Vec<GaussQ>,
}

/// Linear combination of matrix coefficients.
pub type Combination = Vec<(GaussQ, MatrixCoefficient)>;

/// Blocks `A_λ ∈ End(Λ_λ)`, in the module basis of each `Λ_λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierImage {
    pub blocks: BTreeMap<Vec<i64>, Mat<GaussQ>>,
}

/// A finite set `S ⊂ X⁺` with the modules built.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub datum: CartanDatum,
    pub blocks: BTreeMap<Vec<i64>, Block>,
}

impl Truncation {
    pub fn new(datum: &CartanDatum, weights: &[Vec<i64>]) -> Result<Truncation> {
        let mut blocks = BTreeMap::new();
        for w in weights {
            blocks.insert(w.clone(), Block::new(WeightModule::build(datum, w)?));
        }
        Ok(Truncation {
            datum: datum.clone(),
            blocks,
        })
    }

    pub fn block(&self, lambda: &[i64]) -> &Block {
        &self.blocks[lambda]
    }

    /// `(f_{z₁,z₁'}, f_{z₂,z₂'}) = (z₁,z₂)(z₂',z₁') / dim Λ_λ`, and 0 across
    /// different `λ`.
    pub fn inner_product(&self, f: &MatrixCoefficient, g: &MatrixCoefficient) -> GaussQ {
        if f.lambda != g.lambda {
            return GaussQ::zero();
        }
        let b = self.block(&f.lambda);
        let dim = GaussQ::from_i64(b.dim() as i64);
        b.form(&f.z, &g.z)
            .mul(&b.form(&g.zp, &f.zp))
            .div(&dim)
            .expect("nonzero dimension")
    }

    /// Sesquilinear extension to combinations.
    pub fn combination_inner(&self, f: &Combination, g: &Combination) -> GaussQ {
        let mut acc = GaussQ::zero();
        for (a, x) in f {
            for (b, y) in g {
                acc = acc.add(&a.mul(&b.conj()).mul(&self.inner_product(x, y)));
            }
        }
        acc
    }

    pub fn zero_image(&self) -> FourierImage {
        FourierImage {
            blocks: self
                .blocks
                .iter()
                .map(|(k, b)| (k.clone(), Mat::zeros(b.dim(), b.dim())))
                .collect(),
        }
    }

    /// `f_{z,z'} ↦ T_{z,z'}` blockwise, extended linearly.
    pub fn fourier(&self, f: &Combination) -> FourierImage {
        let mut out = self.zero_image();
        for (c, m) in f {
            let b = self.block(&m.lambda);
            let t = b.operator(&m.z, &m.zp).scale(c);
            let slot = out.blocks.get_mut(&m.lambda).unwrap();
            *slot = slot.add(&t);
        }
        out
    }

    /// `(A, B) = Σ_λ tr(B* A) / dim Λ_λ`.
    pub fn image_inner(&self, a: &FourierImage, b: &FourierImage) -> GaussQ {
        let mut acc = GaussQ::zero();
        for (k, blk) in &self.blocks {
            let t = blk.star(&b.blocks[k]).mul(&a.blocks[k]).trace();
            acc = acc.add(&t.div(&GaussQ::from_i64(blk.dim() as i64)).unwrap());
        }
        acc
    }

    /// Blockwise `(dim Λ_λ)⁻¹ A_λ B_λ`.
    pub fn convolve(&self, a: &FourierImage, b: &FourierImage) -> FourierImage {
        let mut out = self.zero_image();
        for (k, blk) in &self.blocks {
            let inv = GaussQ::from_ratio(1, blk.dim() as i64).unwrap();
            out.blocks.insert(k.clone(), a.blocks[k].mul(&b.blocks[k]).scale(&inv));
        }
        out
    }

    /// Convolution of combinations term by term, from Schur orthogonality:
    /// `f_{z₁,z₁'} * f_{z₂,z₂'} = (z₂, z₁') / dim · f_{z₁,z₂'}`.
    pub fn convolve_combinations(&self, f: &Combination, g: &Combination) -> Combination {
        let mut out = Vec::new();
        for (a, x) in f {
            for (b, y) in g {
                if x.lambda != y.lambda {
                    continue;
                }
                let blk = self.block(&x.lambda);
                let c = blk
                    .form(&y.z, &x.zp)
                    .div(&GaussQ::from_i64(blk.dim() as i64))
                    .unwrap()
                    .mul(a)
                    .mul(b);
                out.push((
                    c,
                    MatrixCoefficient {
                        lambda: x.lambda.clone(),
                        z: x.z.clone(),
                        zp: y.zp.clone(),
                    },
                ));
            }
        }
        out
    }

    /// The element whose `λ`-block is `dim Λ_λ · 1` and all others vanish;
    /// convolution with it projects onto the `λ`-block.
    pub fn block_unit(&self, lambda: &[i64]) -> FourierImage {
        let mut out = self.zero_image();
        let d = self.block(lambda).dim();
        out.blocks
            .insert(lambda.to_vec(), Mat::identity(d).scale(&GaussQ::from_i64(d as i64)));
        out
    }

    /// Fourier coordinates computed the long way: inner products of `f`
    /// against the matrix coefficients `f_{p_i,p_j}` of a form-orthonormal
    /// basis `p`, scaled by `dim`. Entry `(i, j)` is in that basis.
    pub fn fourier_via_orthonormal_basis(&self, f: &Combination) -> BTreeMap<Vec<i64>, DMatrix<Complex64>> {
        let mut out = BTreeMap::new();
        for (k, blk) in &self.blocks {
            let d = blk.dim();
            let p = blk.orthonormal_basis();
            let g = to_complex(&blk.gram);
            let form = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..d {
                    for b in 0..d {
                        acc += x[a] * y[b].conj() * g[(a, b)];
                    }
                }
                acc
            };
            let basis: Vec<Vec<Complex64>> = (0..d).map(|j| p.column(j).iter().copied().collect()).collect();
            let mut m = DMatrix::<Complex64>::zeros(d, d);
            for (c, mc) in f.iter().filter(|(_, mc)| &mc.lambda == k) {
                let c = gauss_to_c(c);
                let z: Vec<Complex64> = mc.z.iter().map(gauss_to_c).collect();
                let zp: Vec<Complex64> = mc.zp.iter().map(gauss_to_c).collect();
                for i in 0..d {
                    for j in 0..d {
                        // ⟨f_{z,z'}, f_{p_i,p_j}⟩ = (z, p_i)(p_j, z') / dim
                        let ip = c * form(&z, &basis[i]) * form(&basis[j], &zp) / d as f64;
                        m[(i, j)] += ip * d as f64;
                    }
                }
            }
            out.insert(k.clone(), m);
        }
        out
    }

    /// Express an exact block in the orthonormal basis of its module.
    pub fn in_orthonormal_basis(&self, lambda: &[i64], a: &Mat<GaussQ>) -> DMatrix<Complex64> {
        let p = self.block(lambda).orthonormal_basis();
        let pinv = p.clone().try_inverse().expect("basis matrix is invertible");
        pinv * to_complex(a) * p
    }
}

impl FourierImage {
    /// Blocks that are not identically zero.
    pub fn support(&self) -> BTreeSet<Vec<i64>> {
        self.blocks
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, _)| k.clone())
            .collect()
    }
}

pub fn gauss_to_c(g: &GaussQ) -> Complex64 {
    Complex64::new(q_to_f64(&g.re), q_to_f64(&g.im))
}

pub fn to_complex(m: &Mat<GaussQ>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows, m.cols, |r, c| gauss_to_c(m.get(r, c)))
}

// ---------------------------------------------------------------------------
// SU(2) Haar quadrature

/// How the polar angle is discretised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThetaRule {
    /// Gauss-Legendre in `cos θ`; exact on the polynomial integrands that
    /// arise from matrix coefficients.
    GaussLegendre,
    /// Midpoint in `θ` with weight `sin θ`; second-order accurate.
    Midpoint,
}

/// Euler-angle grid on SU(2), `u = e^{φX} e^{θY} e^{ψX}` with Haar weight
/// `sin θ / 16π²` over `[0,2π] × [0,π] × [0,4π]`. Midpoint in `φ` and `ψ`.
#[derive(Clone, Debug)]
pub struct Su2Grid {
    pub n: usize,
    pub rule: ThetaRule,
    /// `(θ, weight)` with the full normalisation folded in.
    theta: Vec<(f64, f64)>,
}

impl Su2Grid {
    pub fn new(n: usize, rule: ThetaRule) -> Su2Grid {
        let cell = (2.0 * PI / n as f64) * (4.0 * PI / n as f64) / (16.0 * PI * PI);
        let theta = match rule {
            ThetaRule::GaussLegendre => {
                let gl = GaussLegendre::new(NonZeroUsize::new(n).expect("n > 0"));
                gl.as_node_weight_pairs().iter().map(|&(x, w)| (x.acos(), w * cell)).collect()
            }
            ThetaRule::Midpoint => (0..n)
                .map(|k| {
                    let t = (k as f64 + 0.5) * PI / n as f64;
                    (t, t.sin() * PI / n as f64 * cell)
                })
                .collect(),
        };
        Su2Grid { n, rule, theta }
    }

    fn phi(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * 2.0 * PI / self.n as f64
    }

    fn psi(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * 4.0 * PI / self.n as f64
    }

    /// `Σ w(φ,θ,ψ) f(φ,θ,ψ)` over the grid.
    pub fn integrate(&self, mut f: impl FnMut(f64, usize, f64) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (ti, &(_, w)) in self.theta.iter().enumerate() {
            let mut inner = Complex64::new(0.0, 0.0);
            for a in 0..self.n {
                for c in 0..self.n {
                    inner += f(self.phi(a), ti, self.psi(c));
                }
            }
            acc += inner * w;
        }
        acc
    }

    pub fn volume(&self) -> f64 {
        self.integrate(|_, _, _| Complex64::new(1.0, 0.0)).re
    }

    pub fn theta(&self, ti: usize) -> f64 {
        self.theta[ti].0
    }
}

/// An A1 module `Λ_λ` with the SU(2) action in Euler angles.
#[derive(Clone, Debug)]
pub struct Su2Rep {
    pub block: Block,
    /// Eigenvalues of `H` on the basis.
    h: Vec<f64>,
    /// `e^{θ(E-F)/2}` at each polar node of the grid.
    middle: Vec<DMatrix<Complex64>>,
    gram: DMatrix<Complex64>,
}

impl Su2Rep {
    pub fn new(lambda: i64, grid: &Su2Grid) -> Result<Su2Rep> {
        let datum: CartanDatum = "A1".parse()?;
        let block = Block::new(WeightModule::build(&datum, &[lambda])?);
        let m = &block.module;
        let y = to_complex(&lift_mat::<GaussQ>(&m.e(0).sub(&m.f(0)))) * Complex64::new(0.5, 0.0);
        let middle = (0..grid.theta.len())
            .map(|ti| (&y * Complex64::new(grid.theta(ti), 0.0)).exp())
            .collect();
        let h = m.basis_weights().iter().map(|w| w[0] as f64).collect();
        let gram = to_complex(&block.gram);
        Ok(Su2Rep { block, h, middle, gram })
    }

    pub fn dim(&self) -> usize {
        self.block.dim()
    }

    fn diag(&self, angle: f64) -> Vec<Complex64> {
        self.h.iter().map(|&h| Complex64::from_polar(1.0, angle * h / 2.0)).collect()
    }

    /// `π(u)` at grid node `(φ, θ_ti, ψ)`.
    pub fn rho(&self, phi: f64, ti: usize, psi: f64) -> DMatrix<Complex64> {
        let (a, c) = (self.diag(phi), self.diag(psi));
        let m = &self.middle[ti];
        DMatrix::from_fn(self.dim(), self.dim(), |r, s| a[r] * m[(r, s)] * c[s])
    }

    /// `π(u)⁻¹`.
    pub fn rho_inv(&self, phi: f64, ti: usize, psi: f64) -> DMatrix<Complex64> {
        let (a, c) = (self.diag(-psi), self.diag(-phi));
        let m = self.middle[ti].clone().try_inverse().expect("group element");
        DMatrix::from_fn(self.dim(), self.dim(), |r, s| a[r] * m[(r, s)] * c[s])
    }

    /// `(π(u) w, v)`.
    pub fn coefficient(&self, rho: &DMatrix<Complex64>, w: &[Complex64], v: &[Complex64]) -> Complex64 {
        let uw = rho * DMatrix::from_column_slice(w.len(), 1, w);
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                acc += uw[(a, 0)] * v[b].conj() * self.gram[(a, b)];
            }
        }
        acc
    }
}

/// `∫ (π₁(x)w₁, v₁) conj((π₂(x)w₂, v₂)) dx` by quadrature.
pub fn schur_quadrature_su2(
    grid: &Su2Grid,
    r1: &Su2Rep,
    r2: &Su2Rep,
    w1: &[Complex64],
    v1: &[Complex64],
    w2: &[Complex64],
    v2: &[Complex64],
) -> Complex64 {
    grid.integrate(|phi, ti, psi| {
        let a = r1.coefficient(&r1.rho(phi, ti, psi), w1, v1);
        let b = r2.coefficient(&r2.rho(phi, ti, psi), w2, v2);
        a * b.conj()
    })
}

/// `(f * g)(x) = ∫ f(y⁻¹x) g(y) dy` by quadrature for `f(u) = tr(π(u)A)`,
/// `g(u) = tr(π(u)B)` on the same SU(2) module; `x` given by its matrix.
pub fn convolution_quadrature_su2(
    grid: &Su2Grid,
    rep: &Su2Rep,
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    x: &DMatrix<Complex64>,
) -> Complex64 {
    grid.integrate(|phi, ti, psi| {
        let yinv_x = rep.rho_inv(phi, ti, psi) * x;
        let f = (yinv_x * a).trace();
        let g = (rep.rho(phi, ti, psi) * b).trace();
        f * g
    })
}

// ---------------------------------------------------------------------------
// Weyl integration on the torus

/// `|W|` as the size of the orbit of the regular weight `ρ`.
pub fn weyl_group_order(datum: &CartanDatum) -> usize {
    let n = datum.rank;
    let alphas: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            datum.to_weight(&e)
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut stack = vec![vec![1i64; n]];
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for i in 0..n {
            let c = w[i];
            let v: Vec<i64> = (0..n).map(|k| w[k] - c * alphas[i][k]).collect();
            stack.push(v);
        }
    }
    seen.len()
}

/// `(1/|W|) ∫_T χ_λ conj(χ_μ) |Δ|²` on a uniform `n^r` grid in the
/// coordinates `t = exp(i Σ θ_k α_k^∨)`.
pub fn char_orthonormality(datum: &CartanDatum, lambda: &[i64], mu: &[i64], n: usize) -> Result<Complex64> {
    let r = datum.rank;
    let ml = WeightModule::build(datum, lambda)?.multiplicities();
    let mm = WeightModule::build(datum, mu)?.multiplicities();
    let roots: Vec<Vec<i64>> = RootSystem::generate(datum)
        .positive
        .iter()
        .map(|a| datum.to_weight(&a.coeffs))
        .collect();
    let w = weyl_group_order(datum) as f64;
    let total = n.pow(r as u32);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut theta = vec![0.0; r];
    for idx in 0..total {
        let mut k = idx;
        for th in theta.iter_mut() {
            *th = (k % n) as f64 * 2.0 * PI / n as f64;
            k /= n;
        }
        let pair = |wt: &[i64]| -> f64 { wt.iter().zip(&theta).map(|(a, t)| *a as f64 * t).sum() };
        let chi = |m: &BTreeMap<Vec<i64>, u64>| -> Complex64 {
            m.iter().map(|(wt, &c)| Complex64::from_polar(c as f64, pair(wt))).sum()
        };
        let delta: f64 = roots
            .iter()
            .map(|a| (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, pair(a))).norm_sqr())
            .product();
        acc += chi(&ml) * chi(&mm).conj() * delta;
    }
    Ok(acc / (total as f64 * w))
}

// ---------------------------------------------------------------------------
// Analytically integral forms

#[derive(Clone, Debug, Serialize)]
pub struct IntegralLatticeReport {
    pub type_label: String,
    /// Rows `b/2π` spanning `{H = Σ b_j iH'_{S_j} : exp(ad H) = 1}`.
    pub kernel_basis: Vec<Vec<String>>,
    /// Basis of the analytically integral forms, fundamental coordinates.
    pub analytic_basis: Vec<Vec<i64>>,
    pub root_lattice_basis: Vec<Vec<i64>>,
    /// `exp(ad H) = 1` verified on every `u_Y` for each kernel generator.
    pub kernel_verified: bool,
    pub roots_integral: bool,
    pub analytic_in_root_lattice: bool,
    pub root_lattice_in_analytic: bool,
    /// `[X : Q]` from invariant factors.
    pub fundamental_group_order: i64,
    pub invariant_factors: Vec<i64>,
}

impl IntegralLatticeReport {
    pub fn passed(&self) -> bool {
        self.kernel_verified && self.roots_integral && self.analytic_in_root_lattice && self.root_lattice_in_analytic
    }
}

/// `M[j][k] = A_{S_j, S_k}`.
fn simple_a(lie: &LieAlgebra) -> Mat<Q> {
    let rc = &lie.rc;
    let m = lie.rank();
    Mat::from_fn(m, m, |j, k| Q::from_i64(lie.a(rc.simple(j), rc.simple(k))))
}

/// Does `H = Σ b_j·2π·iH'_{S_j}` satisfy `exp(ad H) = 1`? The torus element
/// `∏ h_{S_j}(e^{-2πi b_j})` acts on `u_Y` by `e^{-2πi Σ b_j A_{S_j Y}}`.
pub fn exp_ad_trivial(lie: &LieAlgebra, b: &[Q]) -> bool {
    let rc = &lie.rc;
    (0..lie.n_obj()).all(|y| {
        let e: Q = (0..lie.rank()).fold(Q::zero(), |acc, j| acc + &b[j] * Q::from_i64(lie.a(rc.simple(j), y)));
        e.is_integer()
    })
}

pub fn integral_lattice_k(datum: &CartanDatum) -> Result<IntegralLatticeReport> {
    let lie = LieAlgebra::new(datum)?;
    let m = lie.rank();
    let ma = simple_a(&lie);
    // bᵀ M ∈ ℤ^m  ⇔  b is an integer combination of the rows of M⁻¹.
    let minv = ma.inverse().ok_or(rootform_core::Error::Singular)?;
    let kernel: Vec<Vec<Q>> = (0..m).map(|k| (0..m).map(|j| minv.get(k, j).clone()).collect()).collect();
    let kernel_verified = kernel.iter().all(|b| exp_ad_trivial(&lie, b));
    // Dual lattice: λ with b·λ ∈ ℤ for all kernel rows is spanned by the
    // columns of (M⁻¹)⁻¹ = M.
    let kmat = Mat::from_fn(m, m, |r, c| kernel[r][c].clone());
    let dual = kmat.inverse().ok_or(rootform_core::Error::Singular)?;
    let analytic_basis: Vec<Vec<i64>> = (0..m)
        .map(|c| {
            (0..m)
                .map(|r| {
                    let v = dual.get(r, c);
                    assert!(v.is_integer(), "dual basis not integral");
                    v.to_integer().try_into().unwrap()
                })
                .collect()
        })
        .collect();
    let integral = |lambda: &[i64]| -> bool {
        kernel.iter().all(|b| {
            let s = (0..m).fold(Q::zero(), |acc, j| acc + &b[j] * Q::from_i64(lambda[j]));
            s.is_integer()
        })
    };
    let lp = LatticePair::new(datum);
    let root_basis = lp.root_lattice_basis();
    let rs = RootSystem::generate(datum);
    let roots_integral = rs.positive.iter().all(|r| integral(&datum.to_weight(&r.coeffs)));
    let analytic_in_root_lattice = analytic_basis.iter().all(|v| lp.in_root_lattice(v));
    let root_lattice_in_analytic = root_basis.iter().all(|v| integral(v));
    let snf = lp.smith();
    Ok(IntegralLatticeReport {
        type_label: datum.label(),
        kernel_basis: kernel.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        analytic_basis,
        root_lattice_basis: root_basis,
        kernel_verified,
        roots_integral,
        analytic_in_root_lattice,
        root_lattice_in_analytic,
        fundamental_group_order: snf.diag.iter().product::<i64>().abs(),
        invariant_factors: snf.diag.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct A3Counterexample {
    pub statement: Vec<String>,
    pub exp_ad_trivial: bool,
    /// `λ(H) / 2πi`.
    pub lambda_over_2pi_i: String,
    pub reproduced: bool,
}

/// In A3, `H = iπ(H'_{S₁} + H'_{S₃})` has `exp(ad H) = 1`, yet the weight
/// `λ` with `λ(H'_{S₁}) = 1`, `λ(H'_{S₂}) = λ(H'_{S₃}) = 0` gives
/// `λ(H) = iπ ∉ 2πiℤ`.
pub fn a3_counterexample() -> Result<A3Counterexample> {
    let datum: CartanDatum = "A3".parse()?;
    let lie = LieAlgebra::new(&datum)?;
    let b = vec![q(1, 2), Q::zero(), q(1, 2)];
    let trivial = exp_ad_trivial(&lie, &b);
    let lambda = [1i64, 0, 0];
    let val = (0..3).fold(Q::zero(), |acc, j| acc + &b[j] * Q::from_i64(lambda[j]));
    let reproduced = trivial && !val.is_integer();
    Ok(A3Counterexample {
        statement: vec![
            "H = iπ(H'_S1 + H'_S3)".into(),
            format!("exp(ad H) = 1: {trivial}"),
            "λ(H'_S1) = 1, λ(H'_S2) = λ(H'_S3) = 0".into(),
            format!("λ(H) = iπ ∉ 2πiℤ: {}", !val.is_integer()),
        ],
        exp_ad_trivial: trivial,
        lambda_over_2pi_i: val.to_string(),
        reproduced,
    })
}

/// Dominant weights in the root lattice with coordinate sum at most `bound`.
pub fn q_plus_enumerate(datum: &CartanDatum, bound: i64) -> Vec<Vec<i64>> {
    let n = datum.rank;
    let lp = LatticePair::new(datum);
    let mut out = Vec::new();
    let mut w = vec![0i64; n];
    loop {
        if lp.in_root_lattice(&w) {
            out.push(w.clone());
        }
        // next composition with sum ≤ bound
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
                return out;
            }
            w[i] += 1;
            if w.iter().sum::<i64>() <= bound {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Reports

fn random_gauss_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<GaussQ> {
    (0..d)
        .map(|_| GaussQ::new(q(rng.gen_range(-4..5), rng.gen_range(1..4)), Q::from_i64(rng.gen_range(-3..4))))
        .collect()
}

impl Truncation {
    /// A combination of `terms` random coefficients with small Gaussian
    /// rational data, spread over the blocks.
    pub fn random_combination(&self, rng: &mut ChaCha8Rng, terms: usize) -> Combination {
        let keys: Vec<&Vec<i64>> = self.blocks.keys().collect();
        (0..terms)
            .map(|_| {
                let lambda = keys[rng.gen_range(0..keys.len())].clone();
                let d = self.block(&lambda).dim();
                let c = GaussQ::new(Q::from_i64(rng.gen_range(-3..4)), Q::from_i64(rng.gen_range(-3..4)));
                let (z, zp) = (random_gauss_vec(rng, d), random_gauss_vec(rng, d));
                (c, MatrixCoefficient { lambda, z, zp })
            })
            .collect()
    }

    /// Parseval, the convolution homomorphism, block separation and the
    /// block-unit projector, exactly, on `trials` random pairs; plus the
    /// float orthonormal-basis route against the exact one.
    pub fn plancherel_checks(&self, seed: u64, trials: usize) -> (Vec<CheckReport>, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut parseval = CheckReport::new("parseval_isometry");
        let mut hom = CheckReport::new("fourier_homomorphism");
        let mut ideal = CheckReport::new("no_block_mixing");
        let mut unit = CheckReport::new("block_unit_projector");
        let mut routes = CheckReport::new("orthonormal_route_agrees");
        let mut worst: f64 = 0.0;
        for trial in 0..trials {
            let terms = 1 + trial % 6;
            let f = self.random_combination(&mut rng, terms);
            let g = self.random_combination(&mut rng, terms);
            let (ff, fg) = (self.fourier(&f), self.fourier(&g));
            let lhs = self.combination_inner(&f, &g);
            let rhs = self.image_inner(&ff, &fg);
            parseval.record(lhs == rhs, || format!("trial {trial}: {lhs} vs {rhs}"));
            let prod = self.convolve(&ff, &fg);
            let direct = self.fourier(&self.convolve_combinations(&f, &g));
            hom.record(direct == prod, || format!("trial {trial}"));
            let both: BTreeSet<_> = ff.support().intersection(&fg.support()).cloned().collect();
            ideal.record(prod.support().is_subset(&both), || format!("trial {trial}"));
            for lam in self.blocks.keys() {
                let p = self.block_unit(lam);
                let out = self.convolve(&p, &ff);
                let ok = out.blocks.iter().all(|(k, b)| if k == lam { b == &ff.blocks[k] } else { b.is_zero() });
                unit.record(ok, || format!("trial {trial} block {lam:?}"));
            }
            let long = self.fourier_via_orthonormal_basis(&f);
            for (lam, a) in &ff.blocks {
                let err = (self.in_orthonormal_basis(lam, a) - &long[lam]).map(|z| z.norm()).max();
                worst = worst.max(err);
                routes.record(err <= 1e-9, || format!("trial {trial} block {lam:?}: {err:e}"));
            }
        }
        (vec![parseval, hom, ideal, unit, routes], worst)
    }
}

/// One Schur-orthogonality integral against its predicted value.
#[derive(Clone, Debug, Serialize)]
pub struct SchurCase {
    pub label: String,
    pub value: [f64; 2],
    pub expected: [f64; 2],
    pub error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurReport {
    pub lambda1: i64,
    pub lambda2: i64,
    pub grid: usize,
    pub theta_rule: ThetaRule,
    pub volume_error: f64,
    pub cases: Vec<SchurCase>,
    pub worst: f64,
}

fn random_cvec(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn cform(g: &DMatrix<Complex64>, x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..x.len() {
        for b in 0..y.len() {
            acc += x[a] * y[b].conj() * g[(a, b)];
        }
    }
    acc
}

/// Schur integrals for `Λ_{λ₁}`, `Λ_{λ₂}` of A1: the highest vectors in
/// every slot, then `samples` random vector quadruples.
pub fn schur_report(lambda1: i64, lambda2: i64, n: usize, rule: ThetaRule, samples: usize, seed: u64) -> Result<SchurReport> {
    let grid = Su2Grid::new(n, rule);
    let r1 = Su2Rep::new(lambda1, &grid)?;
    let r2 = Su2Rep::new(lambda2, &grid)?;
    let (d1, d2) = (r1.dim(), r2.dim());
    let g1 = to_complex(&r1.block.gram);
    let expected = |w1: &[Complex64], v1: &[Complex64], w2: &[Complex64], v2: &[Complex64]| {
        if lambda1 != lambda2 {
            Complex64::new(0.0, 0.0)
        } else {
            cform(&g1, w1, w2) * cform(&g1, v2, v1) / d1 as f64
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eta = |d: usize| -> Vec<Complex64> { (0..d).map(|k| Complex64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0)).collect() };
    let mut quads = vec![("highest vectors".to_string(), eta(d1), eta(d1), eta(d2), eta(d2))];
    for s in 0..samples {
        quads.push((
            format!("random {s}"),
            random_cvec(&mut rng, d1),
            random_cvec(&mut rng, d1),
            random_cvec(&mut rng, d2),
            random_cvec(&mut rng, d2),
        ));
    }
    let mut cases = Vec::new();
    let mut worst: f64 = 0.0;
    for (label, w1, v1, w2, v2) in quads {
        let value = schur_quadrature_su2(&grid, &r1, &r2, &w1, &v1, &w2, &v2);
        let exp = expected(&w1, &v1, &w2, &v2);
        let error = (value - exp).norm();
        worst = worst.max(error);
        cases.push(SchurCase {
            label,
            value: [value.re, value.im],
            expected: [exp.re, exp.im],
            error,
        });
    }
    Ok(SchurReport {
        lambda1,
        lambda2,
        grid: n,
        theta_rule: rule,
        volume_error: (grid.volume() - 1.0).abs(),
        cases,
        worst,
    })
}

/// Quadrature convolution of two random coefficient combinations on
/// `Λ_λ` of A1 against the exact block product, at `points` grid nodes.
pub fn su2_convolution_error(lambda: i64, n: usize, points: usize, seed: u64) -> Result<f64> {
    let grid = Su2Grid::new(n, ThetaRule::GaussLegendre);
    let rep = Su2Rep::new(lambda, &grid)?;
    let datum: CartanDatum = "A1".parse()?;
    let tr = Truncation::new(&datum, &[vec![lambda]])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = tr.random_combination(&mut rng, 2);
    let g = tr.random_combination(&mut rng, 2);
    let key = vec![lambda];
    let a = to_complex(&tr.fourier(&f).blocks[&key]);
    let b = to_complex(&tr.fourier(&g).blocks[&key]);
    let ab = to_complex(&tr.fourier(&tr.convolve_combinations(&f, &g)).blocks[&key]);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let x = rep.rho(rng.gen_range(0.0..2.0 * PI), rng.gen_range(0..n), rng.gen_range(0.0..4.0 * PI));
        let numeric = convolution_quadrature_su2(&grid, &rep, &a, &b, &x);
        worst = worst.max((numeric - (&x * &ab).trace()).norm());
    }
    Ok(worst)
}

/// Weyl-integration Gram matrix of characters for `weights`, against the
/// identity.
pub fn char_orthonormality_check(datum: &CartanDatum, weights: &[Vec<i64>], n: usize, tol: f64) -> Result<(CheckReport, f64)> {
    let mut rep = CheckReport::new("character_orthonormality");
    let mut worst: f64 = 0.0;
    for (i, a) in weights.iter().enumerate() {
        for (j, b) in weights.iter().enumerate() {
            let v = char_orthonormality(datum, a, b, n)?;
            let err = (v - if i == j { 1.0 } else { 0.0 }).norm();
            worst = worst.max(err);
            rep.record(err <= tol, || format!("{a:?} vs {b:?}: {v}"));
        }
    }
    Ok((rep, worst))
}
