//! Brute-force ground truth. Nothing here prunes: every subdeterminant and
//! every lattice point of the box is visited, subject to an explicit budget.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{abs_minor, greedy_basis_rows, inverse_rational};
use crate::matrix::{dot, rat, IntMatrix};
use crate::recognition::DetSet;
use crate::util::{binomial, Combinations};

pub const DEFAULT_DSET_BUDGET: u64 = 1_000_000;
pub const DEFAULT_IP_BUDGET: u64 = 10_000_000;

/// Budget override from `ABCMOD_BUDGET`, if set and parseable.
pub fn budget_from_env() -> Option<u64> {
    std::env::var("ABCMOD_BUDGET").ok()?.trim().parse().ok()
}

/// Exact D(A) with the lexicographically first witness for each value.
pub fn det_set_bruteforce(a: &IntMatrix, budget: u64) -> Result<DetSet> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::Dimension(format!("need m >= n, got {m}x{n}")));
    }
    let count = binomial(m, n);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: count.to_string(),
            budget,
        });
    }
    let mut d = DetSet::new();
    for rows in Combinations::new(m, n) {
        let v = abs_minor(a, &rows);
        d.insert(v, rows);
    }
    Ok(d)
}

/// Per-coordinate integer bounds, `lower <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Box {
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
}

impl Box {
    pub fn new(lower: Vec<BigInt>, upper: Vec<BigInt>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Dimension("box bound lengths differ".into()));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::Contract("box lower bound exceeds upper bound".into()));
        }
        Ok(Box { lower, upper })
    }

    pub fn uniform(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo.into(); dim], vec![hi.into(); dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> BigInt {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| u - l + 1)
            .product()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    pub fn enlarged(&self, by: i64) -> Box {
        Box {
            lower: self.lower.iter().map(|l| l - by).collect(),
            upper: self.upper.iter().map(|u| u + by).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxIpOutcome {
    Optimal { point: Vec<BigInt>, value: BigInt },
    InfeasibleInBox,
}

impl BoxIpOutcome {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            BoxIpOutcome::Optimal { value, .. } => Some(value),
            BoxIpOutcome::InfeasibleInBox => None,
        }
    }
}

fn check_budget(volume: &BigInt, budget: u64) -> Result<()> {
    if volume > &BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: volume.to_string(),
            budget,
        });
    }
    Ok(())
}

fn better(value: &BigInt, point: &[BigInt], best: &Option<(BigInt, Vec<BigInt>)>) -> bool {
    match best {
        None => true,
        Some((bv, bp)) => value > bv || (value == bv && point < bp.as_slice()),
    }
}

/// max{w.y : C y <= g, y in box, y integral}. Ties go to the
/// lexicographically smallest point.
pub fn ip_bruteforce(
    c: &IntMatrix,
    g: &[BigInt],
    w: &[BigInt],
    bx: &Box,
    budget: u64,
) -> Result<BoxIpOutcome> {
    let k = c.cols();
    if g.len() != c.rows() || w.len() != k || bx.dim() != k {
        return Err(Error::Dimension("ip_bruteforce operand sizes differ".into()));
    }
    check_budget(&bx.volume(), budget)?;
    let mut y = bx.lower.clone();
    // running C*y, updated per odometer step
    let mut cy = c.mul_vec(&y);
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    loop {
        if cy.iter().zip(g).all(|(l, r)| l <= r) {
            let v = dot(w, &y);
            if better(&v, &y, &best) {
                best = Some((v, y.clone()));
            }
        }
        let mut j = k;
        loop {
            if j == 0 {
                return Ok(match best {
                    Some((value, point)) => BoxIpOutcome::Optimal { point, value },
                    None => BoxIpOutcome::InfeasibleInBox,
                });
            }
            j -= 1;
            if y[j] < bx.upper[j] {
                y[j] += 1;
                for (i, s) in cy.iter_mut().enumerate() {
                    *s += c.get(i, j);
                }
                break;
            }
            let span = &bx.upper[j] - &bx.lower[j];
            if !span.is_zero() {
                for (i, s) in cy.iter_mut().enumerate() {
                    *s -= c.get(i, j) * &span;
                }
            }
            y[j] = bx.lower[j].clone();
        }
    }
}

/// max{c.x : B x = b, x in box, x integral} for a full-row-rank `B`.
///
/// Enumerates the box over a set of nonbasic coordinates and solves for the
/// basic ones exactly, so the work is the box volume over `n - m`
/// coordinates rather than all `n`.
pub fn ip_bruteforce_standard(
    b_mat: &IntMatrix,
    b: &[BigInt],
    c: &[BigInt],
    bx: &Box,
    budget: u64,
) -> Result<BoxIpOutcome> {
    let (m, n) = (b_mat.rows(), b_mat.cols());
    if b.len() != m || c.len() != n || bx.dim() != n {
        return Err(Error::Dimension("standard-form operand sizes differ".into()));
    }
    let basis = greedy_basis_rows(&b_mat.transpose());
    if basis.len() < m {
        return Err(Error::RankDeficient {
            rank: basis.len(),
            cols: m,
        });
    }
    let nonbasic: Vec<usize> = (0..n).filter(|j| !basis.contains(j)).collect();
    let free_box = Box {
        lower: nonbasic.iter().map(|&j| bx.lower[j].clone()).collect(),
        upper: nonbasic.iter().map(|&j| bx.upper[j].clone()).collect(),
    };
    check_budget(&free_box.volume(), budget)?;
    let inv = inverse_rational(&b_mat.select_cols(&basis))?;
    let b_n = b_mat.select_cols(&nonbasic);

    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let mut xn = free_box.lower.clone();
    loop {
        let rhs: Vec<BigRational> = b
            .iter()
            .zip(b_n.mul_vec(&xn))
            .map(|(bi, s)| rat(&(bi - s)))
            .collect();
        let mut x = vec![BigInt::zero(); n];
        let mut ok = true;
        for (r, &j) in basis.iter().enumerate() {
            let v: BigRational = inv[r]
                .iter()
                .zip(&rhs)
                .map(|(p, q)| p * q)
                .sum();
            if !v.is_integer() {
                ok = false;
                break;
            }
            let v = v.to_integer();
            if v < bx.lower[j] || v > bx.upper[j] {
                ok = false;
                break;
            }
            x[j] = v;
        }
        if ok {
            for (t, &j) in nonbasic.iter().enumerate() {
                x[j] = xn[t].clone();
            }
            let v = dot(c, &x);
            if better(&v, &x, &best) {
                best = Some((v, x));
            }
        }
        if !advance(&mut xn, &free_box) {
            break;
        }
    }
    Ok(match best {
        Some((value, point)) => BoxIpOutcome::Optimal { point, value },
        None => BoxIpOutcome::InfeasibleInBox,
    })
}

fn advance(y: &mut [BigInt], bx: &Box) -> bool {
    for j in (0..y.len()).rev() {
        if y[j] < bx.upper[j] {
            y[j] += 1;
            return true;
        }
        y[j] = bx.lower[j].clone();
    }
    false
}

/// Largest absolute entry as u64, saturating. Used to size test boxes.
pub fn max_abs_u64(a: &IntMatrix) -> u64 {
    a.max_abs().to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn set(v: &[i64]) -> std::collections::BTreeSet<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dset_examples() {
        let d = det_set_bruteforce(&IntMatrix::identity(3), DEFAULT_DSET_BUDGET).unwrap();
        assert_eq!(d.value_set(), set(&[1]));
        let a = IntMatrix::from_rows(&[[1, 0], [0, 1], [0, 2]]);
        let d = det_set_bruteforce(&a, DEFAULT_DSET_BUDGET).unwrap();
        assert_eq!(d.value_set(), set(&[0, 1, 2]));
        assert!(d.verify(&a));
        let a = IntMatrix::from_rows(&[[1, 0], [0, 3], [1, 1], [1, 0]]);
        let d = det_set_bruteforce(&a, DEFAULT_DSET_BUDGET).unwrap();
        assert_eq!(d.value_set(), set(&[0, 1, 3]));
        assert_eq!(d.witness(&BigInt::from(0)), Some(&[0usize, 3][..]));
    }

    #[test]
    fn dset_budget_is_enforced() {
        let a = IntMatrix::zeros(30, 3);
        assert!(matches!(
            det_set_bruteforce(&a, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn ip_examples() {
        // 0 <= y <= 1 encoded by the box only
        let c = IntMatrix::zeros(1, 2);
        let g = vec![BigInt::zero()];
        let w = vec![BigInt::one(), BigInt::one()];
        let out = ip_bruteforce(&c, &g, &w, &Box::uniform(2, 0, 1).unwrap(), 100).unwrap();
        assert_eq!(
            out,
            BoxIpOutcome::Optimal {
                point: vec![1.into(), 1.into()],
                value: 2.into()
            }
        );

        // y1 + y2 <= -1 with y >= 0 in the box: empty
        let c = IntMatrix::from_rows(&[[1, 1]]);
        let out = ip_bruteforce(&c, &[BigInt::from(-1)], &w, &Box::uniform(2, 0, 3).unwrap(), 100)
            .unwrap();
        assert_eq!(out, BoxIpOutcome::InfeasibleInBox);

        // 2y1 + y2 <= 3, y >= 0; optimum 3 attained at (0,3) and (1,1)? (1,1)
        // has value 2, so the unique argmax of value 3 is (0,3).
        let c = IntMatrix::from_rows(&[[2, 1], [-1, 0], [0, -1]]);
        let g: Vec<BigInt> = vec![3.into(), 0.into(), 0.into()];
        let out = ip_bruteforce(&c, &g, &w, &Box::uniform(2, 0, 3).unwrap(), 100).unwrap();
        assert_eq!(
            out,
            BoxIpOutcome::Optimal {
                point: vec![0.into(), 3.into()],
                value: 3.into()
            }
        );
    }

    #[test]
    fn ip_box_monotone() {
        let c = IntMatrix::from_rows(&[[2, 1], [-1, 3]]);
        let g: Vec<BigInt> = vec![5.into(), 4.into()];
        let w: Vec<BigInt> = vec![1.into(), 1.into()];
        let small = Box::uniform(2, 0, 1).unwrap();
        let mut prev = None;
        for grow in 0..4 {
            let out = ip_bruteforce(&c, &g, &w, &small.enlarged(grow), 10_000).unwrap();
            let v = out.value().cloned();
            if let (Some(p), Some(v)) = (&prev, &v) {
                assert!(v >= p);
            }
            prev = v;
        }
    }

    #[test]
    fn standard_form_matches_plain_enumeration() {
        let bm = IntMatrix::from_rows(&[[1, 1, 1, 0], [1, -1, 0, 1]]);
        let b: Vec<BigInt> = vec![4.into(), 1.into()];
        let c: Vec<BigInt> = vec![3.into(), 1.into(), 0.into(), (-1).into()];
        let bx = Box::uniform(4, 0, 6).unwrap();
        let fast = ip_bruteforce_standard(&bm, &b, &c, &bx, 10_000).unwrap();
        // same problem as inequalities: B x <= b, -B x <= -b
        let neg = {
            let mut n = bm.clone();
            for i in 0..n.rows() {
                n.negate_row(i);
            }
            n
        };
        let ineq = bm.vstack(&neg).unwrap();
        let mut g = b.clone();
        g.extend(b.iter().map(|x| -x));
        let slow = ip_bruteforce(&ineq, &g, &c, &bx, 10_000).unwrap();
        assert_eq!(fast, slow);
    }
}
