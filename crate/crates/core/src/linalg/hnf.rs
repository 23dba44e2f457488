use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{bareiss, greedy_basis_rows, is_unimodular};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A matrix brought into the adapted Hermite layout: a leading identity
/// block, then the rows with diagonal entries `deltas` (each >= 2), then the
/// corner row, with the last column nonnegative everywhere.
///
/// Row `r` of `permuted` equals `sign_flips[r] * (A * col_transform)[row_perm[r]]`.
#[derive(Clone, Debug)]
pub struct HnfProfile {
    pub permuted: IntMatrix,
    pub row_perm: Vec<usize>,
    pub sign_flips: Vec<i8>,
    pub col_transform: IntMatrix,
    pub deltas: Vec<BigInt>,
    pub l: usize,
    pub corner: BigInt,
    /// Input rows forming the nonsingular block, in input order.
    pub basis_rows: Vec<usize>,
}

impl HnfProfile {
    pub fn n(&self) -> usize {
        self.permuted.cols()
    }

    /// Size of the leading identity block.
    pub fn identity_size(&self) -> usize {
        let n = self.n();
        if self.deltas.is_empty() && self.corner.is_one() {
            n
        } else {
            n - self.l - 1
        }
    }

    /// Original index of row `r` of `permuted`.
    pub fn original_row(&self, r: usize) -> usize {
        self.row_perm[r]
    }

    pub fn original_rows(&self, rows: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = rows.iter().map(|&r| self.row_perm[r]).collect();
        out.sort_unstable();
        out
    }

    /// Recomputes the permuted matrix from `a` and compares.
    pub fn reconstructs(&self, a: &IntMatrix) -> bool {
        let Ok(au) = a.mul(&self.col_transform) else {
            return false;
        };
        if au.rows() != self.permuted.rows() {
            return false;
        }
        for (r, (&src, &s)) in self.row_perm.iter().zip(&self.sign_flips).enumerate() {
            for j in 0..au.cols() {
                let v = if s < 0 {
                    -au.get(src, j)
                } else {
                    au.get(src, j).clone()
                };
                if &v != self.permuted.get(r, j) {
                    return false;
                }
            }
        }
        is_unimodular(&self.col_transform)
    }

    /// Checks every structural predicate of the adapted layout.
    pub fn check_structure(&self) -> bool {
        let p = &self.permuted;
        let n = p.cols();
        let id = self.identity_size();
        for i in 0..n {
            let d = p.get(i, i);
            if !d.is_positive() {
                return false;
            }
            for j in 0..n {
                let v = p.get(i, j);
                if j > i && !v.is_zero() {
                    return false;
                }
                if j < i && (v.is_negative() || v >= d) {
                    return false;
                }
            }
            if i < id && !d.is_one() {
                return false;
            }
        }
        for (k, delta) in self.deltas.iter().enumerate() {
            if delta < &BigInt::from(2) || p.get(id + k, id + k) != delta {
                return false;
            }
        }
        if self.deltas.len() != self.l || p.get(n - 1, n - 1) != &self.corner {
            return false;
        }
        let prod: BigInt = self.deltas.iter().product::<BigInt>() * &self.corner;
        if bareiss(&p.select_rows(&(0..n).collect::<Vec<_>>())).abs() != prod {
            return false;
        }
        (0..p.rows()).all(|r| !p.get(r, n - 1).is_negative())
    }
}

/// Transforms `a` into the adapted Hermite layout with respect to the
/// nonsingular row block `basis_rows`, or the greedy leftmost-independent
/// rows when omitted.
pub fn adapted_hnf(a: &IntMatrix, basis_rows: Option<&[usize]>) -> Result<HnfProfile> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::Dimension(format!("need m >= n, got {m}x{n}")));
    }
    let basis: Vec<usize> = match basis_rows {
        Some(rows) => {
            let mut rows = rows.to_vec();
            rows.sort_unstable();
            rows.dedup();
            if rows.len() != n || rows.iter().any(|&r| r >= m) {
                return Err(Error::Contract(format!(
                    "basis must be {n} distinct row indices"
                )));
            }
            if bareiss(&a.select_rows(&rows)).is_zero() {
                return Err(Error::Singular);
            }
            rows
        }
        None => {
            let rows = greedy_basis_rows(a);
            if rows.len() < n {
                return Err(Error::RankDeficient {
                    rank: rows.len(),
                    cols: n,
                });
            }
            rows
        }
    };

    let mut order = basis.clone();
    order.extend((0..m).filter(|r| !basis.contains(r)));
    let mut w = a.select_rows(&order);
    let mut u = IntMatrix::identity(n);

    for i in 0..n {
        for j in i + 1..n {
            if w.get(i, j).is_zero() {
                continue;
            }
            let x = w.get(i, i).clone();
            let y = w.get(i, j).clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let nx = -(&y / &g);
            let ny = &x / &g;
            w.combine_cols(i, j, &s, &t, &nx, &ny);
            u.combine_cols(i, j, &s, &t, &nx, &ny);
        }
        if w.get(i, i).is_negative() {
            w.negate_col(i);
            u.negate_col(i);
        }
        let d = w.get(i, i).clone();
        debug_assert!(d.is_positive());
        for j in 0..i {
            let q = -w.get(i, j).div_floor(&d);
            w.add_col_multiple(j, i, &q);
            u.add_col_multiple(j, i, &q);
        }
    }

    let diag: Vec<BigInt> = (0..n).map(|i| w.get(i, i).clone()).collect();
    let mut col_order: Vec<usize> = (0..n).filter(|&i| diag[i].is_one()).collect();
    let non_unit: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
    col_order.extend(&non_unit);

    let mut row_order: Vec<usize> = col_order.clone();
    row_order.extend(n..m);
    let mut permuted = w.submatrix(&row_order, &col_order);
    let col_transform = u.select_cols(&col_order);
    let row_perm: Vec<usize> = row_order.iter().map(|&r| order[r]).collect();
    let mut sign_flips = vec![1i8; m];
    for r in n..m {
        if permuted.get(r, n - 1).is_negative() {
            permuted.negate_row(r);
            sign_flips[r] = -1;
        }
    }

    let (deltas, corner) = match non_unit.split_last() {
        Some((&last, rest)) => (
            rest.iter().map(|&i| diag[i].clone()).collect::<Vec<_>>(),
            diag[last].clone(),
        ),
        None => (Vec::new(), BigInt::one()),
    };
    Ok(HnfProfile {
        permuted,
        row_perm,
        sign_flips,
        col_transform,
        l: deltas.len(),
        deltas,
        corner,
        basis_rows: basis,
    })
}
