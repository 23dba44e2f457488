use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, require_full_column_rank, snf_with_transforms, unimodular_inverse};
use crate::matrix::{dot, IntMatrix};

/// max{c·x : B x = b, x >= 0 integral}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardIP {
    pub b_mat: IntMatrix,
    pub b: Vec<BigInt>,
    pub c: Vec<BigInt>,
}

impl StandardIP {
    pub fn new(b_mat: IntMatrix, b: Vec<BigInt>, c: Vec<BigInt>) -> Result<Self> {
        if b.len() != b_mat.rows() || c.len() != b_mat.cols() {
            return Err(Error::Dimension(format!(
                "B is {}x{} but |b| = {} and |c| = {}",
                b_mat.rows(),
                b_mat.cols(),
                b.len(),
                c.len()
            )));
        }
        Ok(StandardIP { b_mat, b, c })
    }

    pub fn is_feasible(&self, x: &[BigInt]) -> bool {
        x.len() == self.b_mat.cols()
            && x.iter().all(|v| v >= &BigInt::zero())
            && self.b_mat.mul_vec(x) == self.b
    }

    pub fn objective(&self, x: &[BigInt]) -> BigInt {
        dot(&self.c, x)
    }
}

/// x = offset + linear · y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub offset: Vec<BigInt>,
    pub linear: IntMatrix,
}

impl AffineMap {
    pub fn apply(&self, y: &[BigInt]) -> Vec<BigInt> {
        let ly = self.linear.mul_vec(y);
        self.offset.iter().zip(ly).map(|(o, v)| o + v).collect()
    }

    /// The image of a direction, without the offset.
    pub fn apply_linear(&self, r: &[BigInt]) -> Vec<BigInt> {
        self.linear.mul_vec(r)
    }
}

/// max{h·y : C y <= g, y integral}, plus the data to map back to a
/// standard-form source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityIP {
    pub c_mat: IntMatrix,
    pub g: Vec<BigInt>,
    pub h: Vec<BigInt>,
    pub objective_offset: BigInt,
    pub back_map: AffineMap,
    /// gcd of the maximal minors of `Bᵀ`; D(C) is D(Bᵀ) divided by it.
    pub det_gcd: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Reduced(InequalityIP),
    /// `B x = b` has no integral solution at all.
    Infeasible,
}

/// Rewrites a standard-form IP over `n - m` free integer variables.
///
/// With the Smith form `B = P [S | 0] Q`, integral solutions of `B x = b`
/// are `x = Q⁻¹[b'; y]` with `b' = S⁻¹P⁻¹b`, which must be integral. Then
/// `x >= 0` reads `C y <= g` for `C = -Q⁻¹` restricted to its last `n - m`
/// columns and `g = Q⁻¹_{·,[m]} b'`.
pub fn standard_to_inequality(ip: &StandardIP) -> Result<Reduction> {
    let (m, n) = (ip.b_mat.rows(), ip.b_mat.cols());
    let bt = ip.b_mat.transpose();
    require_full_column_rank(&bt)?;
    // p Bᵀ q = [s; 0]  ⇔  B = q⁻ᵀ [s | 0] p⁻ᵀ, so Q⁻¹ = pᵀ and P⁻¹ = qᵀ
    let snf = snf_with_transforms(&bt)?;
    let qt_b = snf.q.transpose().mul_vec(&ip.b);
    let mut b_prime = Vec::with_capacity(m);
    for (v, s) in qt_b.iter().zip(snf.diagonal()) {
        let (quot, rem) = v.div_rem(&s);
        if !rem.is_zero() {
            return Ok(Reduction::Infeasible);
        }
        b_prime.push(quot);
    }
    let qinv = snf.p.transpose();
    let g: Vec<BigInt> = (0..n)
        .map(|i| (0..m).map(|r| qinv.get(i, r) * &b_prime[r]).sum())
        .collect();
    let free: Vec<usize> = (m..n).collect();
    let linear = qinv.select_cols(&free);
    let mut c_mat = linear.clone();
    for i in 0..n {
        for j in 0..n - m {
            let v = -c_mat.get(i, j);
            c_mat.set(i, j, v);
        }
    }
    let h = linear.transpose().mul_vec(&ip.c);
    Ok(Reduction::Reduced(InequalityIP {
        objective_offset: dot(&ip.c, &g),
        back_map: AffineMap {
            offset: g.clone(),
            linear,
        },
        det_gcd: snf.det_gcd(),
        c_mat,
        g,
        h,
    }))
}

/// Checks det(Q_{I,J}) = det(Q)·(-1)^{ΣI+ΣJ}·det(Q⁻¹ restricted to the
/// complements of J and I) for a unimodular `Q`.
pub fn jacobi_check(q: &IntMatrix, rows: &[usize], cols: &[usize]) -> Result<bool> {
    let n = q.rows();
    if !q.is_square() || rows.len() != cols.len() {
        return Err(Error::Dimension("Jacobi check needs a square matrix and |I| = |J|".into()));
    }
    let valid = |s: &[usize]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len() == s.len() && v.iter().all(|&i| i < n)
    };
    if !valid(rows) || !valid(cols) {
        return Err(Error::Contract("index sets must be distinct indices within range".into()));
    }
    let mut rows = rows.to_vec();
    let mut cols = cols.to_vec();
    rows.sort_unstable();
    cols.sort_unstable();
    let (rows, cols) = (&rows[..], &cols[..]);
    let inv = unimodular_inverse(q)?;
    let det_q = determinant(q)?;
    let complement = |s: &[usize]| -> Vec<usize> { (0..n).filter(|i| !s.contains(i)).collect() };
    let sub_det = |m: &IntMatrix, r: &[usize], c: &[usize]| -> Result<BigInt> {
        if r.is_empty() {
            Ok(BigInt::one())
        } else {
            determinant(&m.submatrix(r, c))
        }
    };
    let lhs = sub_det(q, rows, cols)?;
    let parity = rows.iter().chain(cols).sum::<usize>() % 2;
    let sign = if parity == 0 { BigInt::one() } else { -BigInt::one() };
    let rhs = det_q * sign * sub_det(&inv, &complement(cols), &complement(rows))?;
    Ok(lhs == rhs)
}
