//! Dense square/rectangular matrices over a [`Field`], plus a few integer
//! matrix helpers.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_i64(m: &[Vec<i64>]) -> Self {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        Self::from_fn(rows, cols, |i, j| F::from_i64(m[i][j]))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Product skipping zero entries of the left factor; group elements here
    /// are close to monomial so this is the dominant saving.
    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Mat::<F>::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (k, vk) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !vk.is_zero() {
                        acc = acc.add(&a.mul(vk));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat<F> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn approx_eq(&self, o: &Mat<F>) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.data.iter().zip(&o.data).all(|(a, b)| a.approx_eq(b))
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&Mat::identity(self.rows))
    }

    pub fn commutator(&self, o: &Mat<F>) -> Mat<F> {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, mut e: u32) -> Mat<F> {
        let mut acc = Mat::<F>::identity(self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Row reduction; returns (reduced matrix, pivot columns).
    pub fn row_reduce(&self) -> (Mat<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let (best, mag) = (r..m.rows)
                .map(|i| (i, m.get(i, c).magnitude()))
                .fold((r, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag == 0.0 || m.get(best, c).is_zero() {
                continue;
            }
            m.swap_rows(r, best);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::<F>::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (red, piv) = aug.row_reduce();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let (best, mag) = (c..n)
                .map(|i| (i, m.get(i, c).magnitude()))
                .fold((c, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag == 0.0 {
                return F::zero();
            }
            if best != c {
                m.swap_rows(best, c);
                det = det.neg();
            }
            let p = m.get(c, c).clone();
            det = det.mul(&p);
            let inv = p.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Leading principal minors det(M[..k, ..k]) for k = 1..=n.
    pub fn leading_minors(&self) -> Vec<F> {
        (1..=self.rows)
            .map(|k| Mat::from_fn(k, k, |i, j| self.get(i, j).clone()).det())
            .collect()
    }

    /// Basis of the null space (column vectors) via reduced row echelon form.
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let (red, piv) = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = red.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Integer matrix product.
pub fn imul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, &aik) in a[i].iter().enumerate() {
            if aik == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j]
                    .checked_add(aik.checked_mul(b[k][j]).expect("overflow"))
                    .expect("overflow");
            }
        }
    }
    out
}

pub fn iidentity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}
