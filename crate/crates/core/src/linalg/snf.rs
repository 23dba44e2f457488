use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::is_unimodular;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `left * A * right = diag`, with `diag` the same shape as `A`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diag.rows().min(self.diag.cols());
        (0..k).map(|i| self.diag.get(i, i).clone()).collect()
    }
}

/// Smith normal form of a tall matrix: `p * A * q = [s; 0]`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub p: IntMatrix,
    pub s: IntMatrix,
    pub q: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows()).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Product of the diagonal, i.e. the gcd of all maximal minors when the
    /// input has full column rank.
    pub fn det_gcd(&self) -> BigInt {
        self.diagonal().iter().product()
    }

    /// Checks `p * a * q = [s; 0]`, unimodularity and the divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let Ok(paq) = self.p.mul(a).and_then(|pa| pa.mul(&self.q)) else {
            return false;
        };
        let n = self.s.rows();
        for i in 0..paq.rows() {
            for j in 0..paq.cols() {
                let expected = if i < n { self.s.get(i, j) } else { &BigInt::ZERO };
                if paq.get(i, j) != expected {
                    return false;
                }
            }
        }
        let d = self.diagonal();
        let diagonal_ok = (0..n).all(|i| {
            (0..n).all(|j| i == j || self.s.get(i, j).is_zero()) && !d[i].is_negative()
        });
        let chain_ok = d.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        });
        diagonal_ok && chain_ok && is_unimodular(&self.p) && is_unimodular(&self.q)
    }
}

/// Smith normal form of an arbitrary integer matrix with both transforms.
///
/// Pivoting picks the smallest nonzero entry in absolute value of the active
/// block, ties broken by lowest (row, col).
pub fn smith_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                return SmithForm {
                    left,
                    diag: d,
                    right,
                };
            };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / &pivot);
                d.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / &pivot);
                d.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithForm {
        left,
        diag: d,
        right,
    }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form with transforms for `m >= n`.
pub fn snf_with_transforms(a: &IntMatrix) -> Result<SnfResult> {
    if a.rows() < a.cols() {
        return Err(Error::Dimension(format!(
            "Smith form expects m >= n, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let f = smith_form(a);
    let n = a.cols();
    let s = f.diag.select_rows(&(0..n).collect::<Vec<_>>());
    Ok(SnfResult {
        p: f.left,
        s,
        q: f.right,
    })
}
