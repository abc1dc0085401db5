//! Small dense linear algebra over exact fields, used to split the class
//! algebra into its simultaneous eigenspaces.

use num_traits::{One, Zero};

use crate::cyclotomic::Cyc;

pub(crate) trait Field: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp {
            v: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp {
            v: 1 % self.p,
            p: self.p,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + o.v) % self.p,
            p: self.p,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + self.p - o.v) % self.p,
            p: self.p,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp {
            v: self.v * o.v % self.p,
            p: self.p,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero in F_p");
        self.pow(self.p - 2)
    }
}

impl Field for Cyc {
    fn zero_like(&self) -> Self {
        Cyc::zero()
    }
    fn one_like(&self) -> Self {
        Cyc::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn inv(&self) -> Self {
        Cyc::inv(self).expect("inverse of zero in a cyclotomic field")
    }
}

/// Basis of the null space `{c : M c = 0}` of an `rows × cols` matrix.
pub(crate) fn nullspace<F: Field>(mut m: Vec<Vec<F>>, cols: usize, zero: &F) -> Vec<Vec<F>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_elem() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![zero.zero_like(); cols];
            v[fc] = zero.one_like();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = zero.zero_like().sub(&m[i][fc]);
            }
            v
        })
        .collect()
}

/// Splits the span of `basis` (vectors of length `r`) into eigenspaces of
/// the `r × r` matrix `a` acting on column vectors, trying the eigenvalue
/// candidates in order. Returns `None` when the candidates do not account
/// for the whole subspace (i.e. it is not diagonalizable over them).
pub(crate) fn split_eigenspaces<F: Field>(
    a: &[Vec<F>],
    basis: &[Vec<F>],
    candidates: impl IntoIterator<Item = F>,
    zero: &F,
) -> Option<Vec<Vec<Vec<F>>>> {
    let r = a.len();
    let k = basis.len();
    // Columns A b_i of the restricted operator.
    let images: Vec<Vec<F>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|row| {
                    (0..r).fold(zero.zero_like(), |acc, col| {
                        acc.add(&a[row][col].mul(&b[col]))
                    })
                })
                .collect()
        })
        .collect();
    let mut found = 0;
    let mut out = Vec::new();
    for lambda in candidates {
        // (A − λ) B c = 0, an r × k system in c.
        let m: Vec<Vec<F>> = (0..r)
            .map(|row| {
                (0..k)
                    .map(|i| images[i][row].sub(&lambda.mul(&basis[i][row])))
                    .collect()
            })
            .collect();
        let ns = nullspace(m, k, zero);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        let space: Vec<Vec<F>> = ns
            .iter()
            .map(|c| {
                (0..r)
                    .map(|row| {
                        (0..k).fold(zero.zero_like(), |acc, i| {
                            acc.add(&c[i].mul(&basis[i][row]))
                        })
                    })
                    .collect()
            })
            .collect();
        out.push(space);
        if found == k {
            return Some(out);
        }
    }
    None
}
