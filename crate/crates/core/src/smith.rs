//! Smith normal form over `Z` with transformation matrices, and the linear
//! algebra modulo `q` built on top of it.
//!
//! Everything modulo a composite `q` goes through the integer Smith form:
//! `U A V = D` with `U`, `V` unimodular, so `A x = b (mod q)` becomes the
//! diagonal system `D y = U b (mod q)` with `x = V y`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d1 | d2 | ...`, nonnegative, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `D`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Checks the defining identities exactly against `a`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let diag = self.diagonal();
        let chain = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        });
        chain
            && diag.iter().all(|x| !x.is_negative())
            && self.d.is_diagonal()
            && &(&self.u * a) * &self.v == self.d
            && self.u.determinant().abs().is_one()
            && self.v.determinant().abs().is_one()
    }
}

/// Reduces `a` to Smith normal form.
///
/// The pivot is the nonzero entry of least absolute value in the remaining
/// block, first in row-major order. Deterministic for a given input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = least_pivot(&d, t) else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut leftover = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let k = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                leftover |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let k = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                leftover |= !d[(t, j)].is_zero();
            }
            if leftover {
                continue;
            }

            // the pivot must divide the whole remaining block
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &d[(t, t)]).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

fn least_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(p, _)| p)
}

fn reduce(x: &BigInt, q: &BigInt) -> BigInt {
    x.mod_floor(q)
}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`; `0` when `m = 1`.
fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = reduce(a, m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    reduce(&e.x, m)
}

fn diag_entry(diag: &[BigInt], i: usize) -> BigInt {
    diag.get(i).cloned().unwrap_or_default()
}

/// A solution `x` in `[0, q)^cols` to `a x = b (mod q)`, if one exists.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], q: u64) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let q = BigInt::from(q);
    let s = smith_normal_form(a);
    let c = s.u.mul_vec(b);
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let di = diag_entry(&diag, i);
        let g = di.gcd(&q);
        if !(ci % &g).is_zero() {
            return Ok(None);
        }
        if i < y.len() {
            let modulus = &q / &g;
            y[i] = reduce(&((ci / &g) * inverse_mod(&(&di / &g), &modulus)), &modulus);
        }
    }
    let x: Vec<BigInt> = s.v.mul_vec(&y).iter().map(|x| reduce(x, &q)).collect();
    debug_assert!(a.mul_vec(&x).iter().zip(b).all(|(l, r)| reduce(&(l - r), &q).is_zero()));
    Ok(Some(x))
}

/// Whether `b` lies in the image of `a` modulo `q`.
pub fn image_contains_mod(a: &IntMatrix, b: &[BigInt], q: u64) -> Result<bool> {
    Ok(solve_mod(a, b, q)?.is_some())
}

/// Generators of `{x : a x = 0 (mod q)}` as a `Z/q`-module, entries in `[0, q)`.
/// Zero generators are dropped, so the trivial kernel gives an empty list.
pub fn kernel_generators_mod(a: &IntMatrix, q: u64) -> Vec<Vec<BigInt>> {
    let qb = BigInt::from(q);
    let s = smith_normal_form(a);
    let diag = s.diagonal();
    let mut gens = Vec::new();
    for j in 0..a.cols() {
        let g = diag_entry(&diag, j).gcd(&qb);
        let step = &qb / &g;
        let col: Vec<BigInt> = s.v.column(j).iter().map(|x| reduce(&(x * &step), &qb)).collect();
        if col.iter().any(|x| !x.is_zero()) {
            gens.push(col);
        }
    }
    gens
}

/// Whether every generator lies in the image of `b` modulo `q`.
pub fn subgroup_contained_mod(gens: &[Vec<BigInt>], b: &IntMatrix, q: u64) -> Result<bool> {
    for g in gens {
        if !image_contains_mod(b, g, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order of the submodule of `(Z/q)^dim` spanned by `gens`.
pub fn span_order_mod(gens: &[Vec<BigInt>], dim: usize, q: u64) -> Result<BigUint> {
    if let Some(g) = gens.iter().find(|g| g.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
    }
    if gens.is_empty() {
        return Ok(BigUint::one());
    }
    let qb = BigInt::from(q);
    let m = IntMatrix::from_columns(dim, gens);
    let order = smith_normal_form(&m)
        .diagonal()
        .iter()
        .map(|d| &qb / d.gcd(&qb))
        .fold(BigInt::one(), |acc, x| acc * x);
    Ok(order.to_biguint().expect("positive"))
}

/// Reduces a vector into `[0, q)`.
pub fn reduce_vec(v: &[BigInt], q: u64) -> Vec<BigInt> {
    let q = BigInt::from(q);
    v.iter().map(|x| reduce(x, &q)).collect()
}
