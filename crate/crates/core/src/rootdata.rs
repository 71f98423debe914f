//! Finite-type Cartan data, root systems and the weight/root lattice pair.
//!
//! Conventions: Bourbaki node numbering, `a[i][j] = 2(α_i, α_j)/(α_j, α_j)`,
//! and the invariant form normalised so that short roots have `(α, α) = 2`.
//! The symmetrizer `d_i = (α_i, α_i)/2` then makes `a[i][j]·d[j]` symmetric.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, SmithForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn from_char(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanDatum {
    pub series: Series,
    pub rank: usize,
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl CartanDatum {
    /// Cartan matrix and symmetrizers of a finite Dynkin type.
    pub fn build(series: Series, rank: usize) -> Result<CartanDatum> {
        let valid = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !valid {
            return Err(Error::InvalidType(format!("{}{}", series, rank)));
        }
        let gram = gram_matrix(series, rank);
        let n = rank;
        let a = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let d = (0..n).map(|i| gram[i][i] / 2).collect();
        Ok(CartanDatum { series, rank, a, d })
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    /// Invariant form on simple roots, `(α_i, α_j) = a[i][j]·d[j]`.
    pub fn sym(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.a[i][j] * self.d[j]).collect())
            .collect()
    }

    /// `(x, y)` for vectors in the simple-root basis.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += x[i] * self.a[i][j] * self.d[j] * y[j];
            }
        }
        s
    }

    /// `⟨β, α_i^∨⟩ = 2(β, α_i)/(α_i, α_i)`.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| beta[j] * self.a[j][i]).sum()
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let c = self.coroot_pairing(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    /// Root in the fundamental-weight coordinates: `⟨α, α_i^∨⟩` for each i.
    pub fn to_weight(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.coroot_pairing(beta, i)).collect()
    }
}

impl FromStr for CartanDatum {
    type Err = Error;

    /// Parses labels such as `A2`, `g2`, `B3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_char)
            .ok_or_else(|| Error::InvalidType(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
        CartanDatum::build(series, rank).map_err(|_| Error::InvalidType(s.into()))
    }
}

fn gram_matrix(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match series {
        Series::A => {
            for i in 0..n {
                g[i][i] = 2;
                if i + 1 < n {
                    link(&mut g, i, i + 1, -1);
                }
            }
        }
        Series::B => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 4 } else { 2 };
                if i + 1 < n {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Series::C => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 2 } else { 4 };
                if i + 2 < n {
                    link(&mut g, i, i + 1, -1);
                } else if i + 1 < n {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Series::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Series::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Series::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Series::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub height: i64,
    /// `(α, α) = 2·d_α`.
    pub norm: i64,
}

impl Root {
    pub fn d(&self) -> i64 {
        self.norm / 2
    }
}

/// Positive roots ordered by (height, lexicographic coefficients).
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: CartanDatum,
    pub positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    /// Closure of the simple roots under simple reflections.
    pub fn generate(cartan: &CartanDatum) -> RootSystem {
        let n = cartan.rank;
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let r = cartan.reflect(i, &b);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), ());
                    queue.push_back(r);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_keys().filter(|v| v.iter().all(|&c| c >= 0)).collect();
        pos.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| x.cmp(y))
        });
        let positive: Vec<Root> = pos
            .iter()
            .map(|c| Root {
                coeffs: c.clone(),
                height: c.iter().sum(),
                norm: cartan.inner(c, c),
            })
            .collect();
        let index = pos.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
        RootSystem {
            cartan: cartan.clone(),
            positive,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Locate `v` as `sign · positive[k]`.
    pub fn find(&self, v: &[i64]) -> Option<(usize, i64)> {
        if let Some(&k) = self.index.get(v) {
            return Some((k, 1));
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.index.get(&neg).map(|&k| (k, -1))
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.find(v).is_some()
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.positive.iter().map(|r| r.coeffs.clone()).collect();
        out.extend(self.positive.iter().map(|r| r.coeffs.iter().map(|x| -x).collect::<Vec<_>>()));
        out
    }

    /// Symmetrizer of any (signed) root vector.
    pub fn d_of(&self, v: &[i64]) -> i64 {
        self.cartan.inner(v, v) / 2
    }

    /// `(p, q)`: largest `r`, `s` with `β − rα`, `β + sα` roots.
    pub fn root_string(&self, alpha: &[i64], beta: &[i64]) -> Result<(i64, i64)> {
        if !self.is_root(alpha) || !self.is_root(beta) {
            return Err(Error::RootString("argument is not a root".into()));
        }
        let negb: Vec<i64> = beta.iter().map(|x| -x).collect();
        if alpha == beta || alpha == negb.as_slice() {
            return Err(Error::RootString("β = ±α".into()));
        }
        let step = |sign: i64| {
            let mut k = 0;
            loop {
                let v: Vec<i64> = beta.iter().zip(alpha).map(|(b, a)| b + sign * (k + 1) * a).collect();
                if !self.is_root(&v) {
                    return k;
                }
                k += 1;
            }
        };
        Ok((step(-1), step(1)))
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("nonempty root system")
    }

    pub fn simple_index(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index[&e]
    }

    /// A reduced word for the longest Weyl element (1-based node labels).
    pub fn longest_word(&self) -> Vec<usize> {
        // Walk ρ to −ρ, reflecting along any positive coordinate.
        let n = self.rank();
        let mut w: Vec<i64> = vec![1; n];
        let mut word = Vec::new();
        while let Some(i) = (0..n).find(|&i| w[i] > 0) {
            // s_i acts on fundamental coordinates by μ ↦ μ − μ_i α_i.
            let mut e = vec![0; n];
            e[i] = 1;
            let ai = self.cartan.to_weight(&e);
            let c = w[i];
            for j in 0..n {
                w[j] -= c * ai[j];
            }
            word.push(i + 1);
        }
        word
    }
}

/// Weight lattice X (fundamental coordinates) with the root lattice Q inside.
#[derive(Clone, Debug)]
pub struct LatticePair {
    pub cartan: CartanDatum,
}

impl LatticePair {
    pub fn new(cartan: &CartanDatum) -> Self {
        LatticePair { cartan: cartan.clone() }
    }

    /// Rows are the simple roots in fundamental-weight coordinates.
    pub fn root_lattice_basis(&self) -> Vec<Vec<i64>> {
        let n = self.cartan.rank;
        (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                self.cartan.to_weight(&e)
            })
            .collect()
    }

    /// `⟨α_i^∨, μ⟩` for μ in fundamental coordinates is its i-th coordinate.
    pub fn pairing(&self, i: usize, mu: &[i64]) -> i64 {
        mu[i]
    }

    pub fn smith(&self) -> SmithForm {
        smith_normal_form(&self.cartan.a).expect("Cartan matrices are nonsingular")
    }

    /// `[X : Q]`.
    pub fn index(&self) -> i64 {
        self.smith().index()
    }

    /// Is μ (fundamental coordinates) in the root lattice?
    pub fn in_root_lattice(&self, mu: &[i64]) -> bool {
        // μ = Σ c_j α_j  ⇔  μ = cᵀ·B with B the root basis rows; solve via SNF.
        let b = self.root_lattice_basis();
        let s = smith_normal_form(&b).expect("nonsingular");
        // u·B·v = D  ⇒  B = u⁻¹ D v⁻¹ ; cᵀ B = μ ⇔ (cᵀ u⁻¹) D = μ v.
        let n = mu.len();
        let mv: Vec<i64> = (0..n).map(|j| (0..n).map(|k| mu[k] * s.v[k][j]).sum()).collect();
        mv.iter().zip(&s.diag).all(|(x, d)| x % d == 0)
    }
}

pub fn lattice_index(pair: &LatticePair) -> i64 {
    pair.index()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_and_g2_tables() {
        let a2 = CartanDatum::build(Series::A, 2).unwrap();
        assert_eq!(a2.a, vec![vec![2, -1], vec![-1, 2]]);
        let g2 = CartanDatum::build(Series::G, 2).unwrap();
        assert_eq!(g2.a, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(g2.d, vec![1, 3]);
    }

    #[test]
    fn parse_rejects_unknown_series() {
        assert!("H3".parse::<CartanDatum>().is_err());
        assert!("D3".parse::<CartanDatum>().is_err());
        assert!("G2".parse::<CartanDatum>().is_ok());
    }

    #[test]
    fn longest_word_lengths() {
        for (t, len) in [("A2", 3), ("B2", 4), ("G2", 6), ("A3", 6), ("D4", 12)] {
            let rs = RootSystem::generate(&t.parse().unwrap());
            assert_eq!(rs.longest_word().len(), len, "{t}");
        }
    }
}
