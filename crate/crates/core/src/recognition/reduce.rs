use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{require_full_column_rank, snf_with_transforms};
use crate::matrix::IntMatrix;

/// `A·Q·S⁻¹` for the Smith form `P·A·Q = [S; 0]`, together with
/// gcd(D(A)) = ∏S. Each maximal minor of the result is the minor of `A` on
/// the same rows divided by gcd(D(A)), up to sign.
#[derive(Clone, Debug)]
pub struct GcdNormalized {
    pub matrix: IntMatrix,
    pub det_gcd: BigInt,
    /// The unimodular `Q`.
    pub col_transform: IntMatrix,
    pub scaling: Vec<BigInt>,
}

pub fn normalize_gcd(a: &IntMatrix) -> Result<GcdNormalized> {
    require_full_column_rank(a)?;
    let snf = snf_with_transforms(a)?;
    let mut m = a.mul(&snf.q)?;
    let scaling = snf.diagonal();
    for (j, s) in scaling.iter().enumerate() {
        for i in 0..m.rows() {
            let (q, r) = m.get(i, j).div_rem(s);
            if !r.is_zero() {
                return Err(Error::Internal("A·Q column not divisible by S".into()));
            }
            m.set(i, j, q);
        }
    }
    Ok(GcdNormalized {
        matrix: m,
        det_gcd: snf.det_gcd(),
        col_transform: snf.q,
        scaling,
    })
}

#[derive(Clone, Debug)]
pub enum GcdReduction {
    /// D(matrix) = D(A) / gamma.
    Reduced { matrix: IntMatrix, gamma: BigInt },
    GcdMismatch { det_gcd: BigInt, expected: BigInt },
}

/// Reduces testing D(A) = {a, b, 0} to testing D(A') = {a/γ, b/γ, 0} with
/// γ = gcd(a, b), or reports gcd(D(A)) ≠ γ.
pub fn gcd_reduce(a: &IntMatrix, a_val: &BigInt, b_val: &BigInt) -> Result<GcdReduction> {
    if a_val <= &BigInt::zero() || b_val <= &BigInt::zero() {
        return Err(Error::Contract("a and b must be positive".into()));
    }
    let gamma = a_val.gcd(b_val);
    let norm = normalize_gcd(a)?;
    if norm.det_gcd != gamma {
        return Ok(GcdReduction::GcdMismatch {
            det_gcd: norm.det_gcd,
            expected: gamma,
        });
    }
    Ok(GcdReduction::Reduced {
        matrix: norm.matrix,
        gamma,
    })
}
