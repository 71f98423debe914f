//! Smith normal form of integer matrices with recorded unimodular transforms.

use crate::error::{Error, Result};

/// `u · m · v = diag`, with `u`, `v` unimodular and the diagonal a divisor chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

impl SmithForm {
    /// Product of the invariant factors.
    pub fn index(&self) -> i64 {
        self.diag.iter().product()
    }
}

fn to_i64(m: &[Vec<i128>]) -> Vec<Vec<i64>> {
    m.iter()
        .map(|r| r.iter().map(|&x| i64::try_from(x).expect("SNF entry overflow")).collect())
        .collect()
}

fn ident(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Smith normal form of a full-rank square integer matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Result<SmithForm> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("smith_normal_form needs a square matrix".into()));
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = ident(n);
    let mut v = ident(n);

    for t in 0..n {
        // Bring the smallest nonzero entry of the trailing block to (t, t),
        // then clear its row and column; repeat until it divides everything.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Err(Error::Singular);
            };
            a.swap(t, bi);
            u.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }

            let mut dirty = false;
            for i in t + 1..n {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    for j in 0..n {
                        a[i][j] -= f * a[t][j];
                        u[i][j] -= f * u[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..n {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    for i in 0..n {
                        a[i][j] -= f * a[i][t];
                        v[i][j] -= f * v[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // Divisibility of the remaining block.
            let p = a[t][t];
            let bad = (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in 0..n {
                        a[t][j] += a[i][j];
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..n {
                a[t][j] = -a[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    let diag = (0..n).map(|i| i64::try_from(a[i][i]).expect("overflow")).collect();
    Ok(SmithForm {
        diag,
        u: to_i64(&u),
        v: to_i64(&v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::imul;

    #[test]
    fn reproduces_input() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = imul(&imul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn singular_is_rejected() {
        assert!(smith_normal_form(&[vec![1, 2], vec![2, 4]]).is_err());
    }
}
