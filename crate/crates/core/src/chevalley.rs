//! Chevalley-basis structure constants `N_{α,β}` from the root system alone.
//!
//! Signs are fixed by declaring `N_{r,s} = +(p+1)` on every extraspecial pair
//! (with positive roots ordered by height then lexicographically) and
//! propagating through the standard identities
//! `N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)` for `a+b+c = 0`,
//! `N_{−a,−b} = −N_{a,b}` and the four-root identity.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::rootdata::RootSystem;
use crate::scalar::{q, Q};

#[derive(Clone, Debug)]
pub struct ChevalleySigns {
    rs: RootSystem,
    /// `N_{r,s}` on positive pairs `r < s` (by index) with `r + s` a root.
    table: HashMap<(usize, usize), i64>,
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

impl ChevalleySigns {
    pub fn new(rs: &RootSystem) -> ChevalleySigns {
        let mut me = ChevalleySigns {
            rs: rs.clone(),
            table: HashMap::new(),
        };
        let pos: Vec<Vec<i64>> = rs.positive.iter().map(|r| r.coeffs.clone()).collect();
        for (xi_idx, xi) in pos.iter().enumerate() {
            let mut special: Vec<(usize, usize)> = Vec::new();
            for r in 0..xi_idx {
                let s_vec: Vec<i64> = xi.iter().zip(&pos[r]).map(|(a, b)| a - b).collect();
                if let Some((s, 1)) = rs.find(&s_vec) {
                    if r < s {
                        special.push((r, s));
                    }
                }
            }
            let Some(&(r0, s0)) = special.first() else {
                continue;
            };
            let (p, _) = rs.root_string(&pos[r0], &pos[s0]).expect("distinct roots");
            let n0 = p + 1;
            me.table.insert((r0, s0), n0);
            let xi_norm = rs.cartan.inner(xi, xi);
            for &(r, s) in &special[1..] {
                let (rv, sv) = (&pos[r], &pos[s]);
                let (r0v, s0v) = (&pos[r0], &pos[s0]);
                let mut acc = Q::zero();
                // N_{s,−r0} N_{r,−s0} / (s−r0, s−r0)
                let a1 = me.n(sv, &neg(r0v));
                let a2 = me.n(rv, &neg(s0v));
                if a1 != 0 && a2 != 0 {
                    let v = add(sv, &neg(r0v));
                    acc += q(a1 * a2, rs.cartan.inner(&v, &v));
                }
                // N_{−r0,r} N_{s,−s0} / (r−r0, r−r0)
                let b1 = me.n(&neg(r0v), rv);
                let b2 = me.n(sv, &neg(s0v));
                if b1 != 0 && b2 != 0 {
                    let v = add(rv, &neg(r0v));
                    acc += q(b1 * b2, rs.cartan.inner(&v, &v));
                }
                let val = acc * q(xi_norm, n0);
                assert!(val.is_integer(), "non-integral structure constant");
                me.table.insert((r, s), val.to_integer().to_i64().expect("small"));
            }
        }
        me
    }

    /// `N_{a,b}` for arbitrary roots `a`, `b`; zero when `a + b` is not a root.
    pub fn n(&self, a: &[i64], b: &[i64]) -> i64 {
        let sum = add(a, b);
        if sum.iter().all(|&x| x == 0) || !self.rs.is_root(&sum) {
            return 0;
        }
        let (ia, sa) = self.rs.find(a).expect("root");
        let (ib, sb) = self.rs.find(b).expect("root");
        match (sa, sb) {
            (1, 1) => {
                if ia < ib {
                    self.table[&(ia, ib)]
                } else {
                    -self.table[&(ib, ia)]
                }
            }
            (-1, -1) => -self.n(&neg(a), &neg(b)),
            _ => {
                let c = neg(&sum);
                let (_, sc) = self.rs.find(&c).expect("root");
                let cc = self.rs.cartan.inner(&c, &c);
                let (num, other) = if sc == sa {
                    (cc * self.n(&c, a), self.rs.cartan.inner(b, b))
                } else {
                    (cc * self.n(b, &c), self.rs.cartan.inner(a, a))
                };
                assert!(num % other == 0, "non-integral structure constant");
                num / other
            }
        }
    }
}
