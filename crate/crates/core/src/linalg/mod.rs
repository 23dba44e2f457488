//! Exact integer and rational linear algebra.
//!
//! Everything works over `BigInt`/`BigRational`; there is no fixed-width path.

mod hnf;
mod snf;

pub use hnf::{adapted_hnf, HnfProfile};
pub use snf::{smith_form, snf_with_transforms, SmithForm, SnfResult};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RationalVector};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(bareiss(m))
}

fn bareiss(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// |det| of the square submatrix on `rows` (all columns).
pub fn abs_minor(m: &IntMatrix, rows: &[usize]) -> BigInt {
    bareiss(&m.select_rows(rows)).abs()
}

/// Rows chosen greedily from the top that extend the row space. The result
/// is the leftmost-independent basis; its length is the rank.
pub fn greedy_basis_rows(m: &IntMatrix) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut chosen = Vec::new();
    for r in 0..m.rows() {
        if echelon.len() == m.cols() {
            break;
        }
        let mut v = m.row(r).to_vec();
        for (p, b) in &echelon {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            let g = b[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x * &g - &f * y;
            }
            let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if content > BigInt::one() {
                v.iter_mut().for_each(|x| *x /= &content);
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((p, v));
            chosen.push(r);
        }
    }
    chosen
}

/// Leftmost rows that are linearly independent modulo the prime `p`.
pub fn basis_rows_mod_prime(m: &IntMatrix, p: &BigInt) -> Vec<usize> {
    let reduce = |x: &BigInt| x.mod_floor(p);
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut chosen = Vec::new();
    for r in 0..m.rows() {
        if echelon.len() == m.cols() {
            break;
        }
        let mut v: Vec<BigInt> = m.row(r).iter().map(reduce).collect();
        for (piv, b) in &echelon {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x = reduce(&(&*x - &f * y));
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            // normalize the pivot to 1 so elimination is a plain subtraction
            let inv = v[piv].extended_gcd(p).x.mod_floor(p);
            v.iter_mut().for_each(|x| *x = reduce(&(&*x * &inv)));
            echelon.push((piv, v));
            chosen.push(r);
        }
    }
    chosen
}

pub fn rank(m: &IntMatrix) -> usize {
    greedy_basis_rows(m).len()
}

/// Fails with `RankDeficient` unless `m` has full column rank and at least
/// as many rows as columns.
pub fn require_full_column_rank(m: &IntMatrix) -> Result<Vec<usize>> {
    if m.rows() < m.cols() {
        return Err(Error::Dimension(format!(
            "need m >= n, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let basis = greedy_basis_rows(m);
    if basis.len() < m.cols() {
        return Err(Error::RankDeficient {
            rank: basis.len(),
            cols: m.cols(),
        });
    }
    Ok(basis)
}

/// Solves `m x = rhs` exactly for nonsingular square `m`.
pub fn solve_rational(m: &IntMatrix, rhs: &RationalVector) -> Result<RationalVector> {
    if !m.is_square() || rhs.len() != m.rows() {
        return Err(Error::Dimension("solve needs a square system".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                m.row(i).iter().cloned().map(BigRational::from_integer).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    gauss_jordan(&mut a, n)?;
    Ok(RationalVector(a.into_iter().map(|r| r[n].clone()).collect()))
}

/// In-place Gauss-Jordan on the leading `n` columns of an augmented matrix.
fn gauss_jordan(a: &mut [Vec<BigRational>], n: usize) -> Result<()> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(piv, col);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    Ok(())
}

/// Exact inverse over the rationals.
pub fn inverse_rational(m: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                m.row(i).iter().cloned().map(BigRational::from_integer).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    gauss_jordan(&mut a, n)?;
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let d = determinant(m)?;
    if d.abs() != BigInt::one() {
        return Err(Error::NotUnimodular(d.to_string()));
    }
    let inv = inverse_rational(m)?;
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, n);
    for (i, row) in inv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            debug_assert!(x.is_integer());
            out.set(i, j, x.to_integer());
        }
    }
    Ok(out)
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && bareiss(m).abs().is_one()
}
