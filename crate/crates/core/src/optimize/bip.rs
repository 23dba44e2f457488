use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lp::{integral_multiple, lp_solve_exact, LpOutcome};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::{dot, rat, IntMatrix};
use crate::util::ceil_sqrt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IpOutcome {
    Optimal { point: Vec<BigInt>, value: BigInt },
    Infeasible,
    /// `point` is feasible and integral; `ray` is an integral direction with
    /// `C·ray <= 0` and positive objective.
    Unbounded { point: Vec<BigInt>, ray: Vec<BigInt> },
}

/// max{w·y : C y <= g, y integral} by exact branch and bound.
///
/// The search runs inside a box around an LP optimum whose radius is
/// `cols · Δ`, where `Δ` bounds every subdeterminant of `C` (Hadamard). Some
/// integer optimum always lies in that box when the problem is feasible, so
/// the search is finite and exact. An unbounded relaxation is settled by
/// maximizing the first row of `C`, which is bounded.
pub fn bip_solve(c: &IntMatrix, g: &[BigInt], w: &[BigInt]) -> Result<IpOutcome> {
    if g.len() != c.rows() || w.len() != c.cols() {
        return Err(Error::Dimension("IP operand sizes differ".into()));
    }
    if rank(c) < c.cols() {
        return Err(Error::Contract("IP constraint matrix needs full column rank".into()));
    }
    match lp_solve_exact(c, g, w)? {
        LpOutcome::Infeasible => Ok(IpOutcome::Infeasible),
        LpOutcome::Unbounded { ray, .. } => {
            let probe = c.row(0).to_vec();
            match bip_solve(c, g, &probe)? {
                IpOutcome::Optimal { point, .. } => Ok(IpOutcome::Unbounded {
                    point,
                    ray: integral_multiple(&ray.0),
                }),
                IpOutcome::Infeasible => Ok(IpOutcome::Infeasible),
                IpOutcome::Unbounded { .. } => {
                    Err(Error::Internal("row objective cannot be unbounded".into()))
                }
            }
        }
        LpOutcome::VertexOptimal { tight, .. } => {
            let radius = rat(&(hadamard_bound(c) * BigInt::from(c.cols())));
            let lower = tight.vertex.0.iter().map(|v| (v - &radius).ceil().to_integer()).collect();
            let upper = tight.vertex.0.iter().map(|v| (v + &radius).floor().to_integer()).collect();
            branch_and_bound(c, g, w, lower, upper)
        }
    }
}

/// Lexicographic optimum: maximize `objectives[0]`, then `objectives[1]`
/// among those maximizers, and so on. Every stage must be bounded.
pub fn ip_lexicographic(c: &IntMatrix, g: &[BigInt], objectives: &[Vec<BigInt>]) -> Result<IpOutcome> {
    let mut c = c.clone();
    let mut g = g.to_vec();
    let mut last = IpOutcome::Infeasible;
    for (stage, w) in objectives.iter().enumerate() {
        last = bip_solve(&c, &g, w)?;
        match &last {
            IpOutcome::Optimal { value, .. } => {
                let neg: Vec<BigInt> = w.iter().map(|x| -x).collect();
                c = c.vstack(&IntMatrix::from_big_rows(&[neg], c.cols())?)?;
                g.push(-value);
            }
            IpOutcome::Infeasible if stage == 0 => return Ok(last),
            _ => return Err(Error::Internal("lexicographic stage is not bounded".into())),
        }
    }
    Ok(last)
}

/// Product of the `cols` largest row norms, each rounded up and at least 1.
pub(crate) fn hadamard_bound(c: &IntMatrix) -> BigInt {
    let mut norms: Vec<BigInt> = (0..c.rows())
        .map(|i| ceil_sqrt(&c.row(i).iter().map(|x| x * x).sum()).max(BigInt::one()))
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    norms.into_iter().take(c.cols()).product()
}

fn branch_and_bound(
    c: &IntMatrix,
    g: &[BigInt],
    w: &[BigInt],
    lower: Vec<BigInt>,
    upper: Vec<BigInt>,
) -> Result<IpOutcome> {
    let k = c.cols();
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let mut stack = vec![(lower, upper)];
    while let Some((lo, hi)) = stack.pop() {
        if lo.iter().zip(&hi).any(|(l, u)| l > u) {
            continue;
        }
        let (bc, bg) = with_bounds(c, g, &lo, &hi)?;
        let LpOutcome::VertexOptimal { tight, value, .. } = lp_solve_exact(&bc, &bg, w)? else {
            continue;
        };
        let bound = value.floor().to_integer();
        if best.as_ref().is_some_and(|(b, _)| &bound <= b) {
            continue;
        }
        let v = &tight.vertex.0;
        match (0..k).find(|&j| !v[j].is_integer()) {
            None => {
                let y: Vec<BigInt> = v.iter().map(BigRational::to_integer).collect();
                best = Some((dot(w, &y), y));
            }
            Some(j) => {
                let mut down_hi = hi.clone();
                down_hi[j] = v[j].floor().to_integer();
                let mut up_lo = lo.clone();
                up_lo[j] = v[j].ceil().to_integer();
                stack.push((up_lo, hi));
                stack.push((lo, down_hi));
            }
        }
    }
    Ok(match best {
        Some((value, point)) => IpOutcome::Optimal { point, value },
        None => IpOutcome::Infeasible,
    })
}

fn with_bounds(c: &IntMatrix, g: &[BigInt], lo: &[BigInt], hi: &[BigInt]) -> Result<(IntMatrix, Vec<BigInt>)> {
    let k = c.cols();
    let mut rows: Vec<Vec<BigInt>> = (0..c.rows()).map(|i| c.row(i).to_vec()).collect();
    let mut rhs = g.to_vec();
    for j in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[j] = BigInt::one();
        rows.push(e.clone());
        rhs.push(hi[j].clone());
        e[j] = -BigInt::one();
        rows.push(e);
        rhs.push(-&lo[j]);
    }
    Ok((IntMatrix::from_big_rows(&rows, k)?, rhs))
}

/// Whether `y` satisfies `C y <= g`; returns the first violated row.
pub(crate) fn first_violation(c: &IntMatrix, g: &[BigInt], y: &[BigInt]) -> Option<usize> {
    (0..c.rows()).find(|&i| dot(c.row(i), y) > g[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{ip_bruteforce, Box, BoxIpOutcome};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn is_ray(c: &IntMatrix, w: &[BigInt], r: &[BigInt]) -> bool {
        (0..c.rows()).all(|i| !dot(c.row(i), r).is_positive()) && dot(w, r).is_positive()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn unit_square() {
        let c = IntMatrix::from_rows(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        assert_eq!(
            bip_solve(&c, &ints(&[1, 1, 0, 0]), &ints(&[1, 1])).unwrap(),
            IpOutcome::Optimal { point: ints(&[1, 1]), value: 2.into() }
        );
    }

    #[test]
    fn triangle_matches_enumeration() {
        let c = IntMatrix::from_rows(&[[2, 1], [-1, 0], [0, -1]]);
        let g = ints(&[3, 0, 0]);
        let w = ints(&[1, 1]);
        let out = bip_solve(&c, &g, &w).unwrap();
        let oracle = ip_bruteforce(&c, &g, &w, &Box::uniform(2, -3, 3).unwrap(), 1000).unwrap();
        assert_eq!(out.clone().value(), oracle.value().cloned());
        assert_eq!(oracle.value(), Some(&BigInt::from(3)));
        if let IpOutcome::Optimal { point, .. } = out {
            assert_eq!(first_violation(&c, &g, &point), None);
        }
    }

    #[test]
    fn fractional_cone() {
        let c = IntMatrix::from_rows(&[[2, 1], [1, 2]]);
        let g = ints(&[1, 1]);
        let w = ints(&[1, 1]);
        let out = bip_solve(&c, &g, &w).unwrap();
        let oracle = ip_bruteforce(&c, &g, &w, &Box::uniform(2, -3, 3).unwrap(), 1000).unwrap();
        assert_eq!(out.value(), oracle.value().cloned());
    }

    #[test]
    fn unbounded_and_infeasible() {
        let c = IntMatrix::from_rows(&[[-1, 0], [0, -1]]);
        match bip_solve(&c, &ints(&[0, 0]), &ints(&[1, 0])).unwrap() {
            IpOutcome::Unbounded { point, ray } => {
                assert_eq!(first_violation(&c, &ints(&[0, 0]), &point), None);
                assert!(is_ray(&c, &ints(&[1, 0]), &ray));
            }
            other => panic!("{other:?}"),
        }
        // 1/3 <= y <= 2/3 has no integer point although the LP is feasible
        let c = IntMatrix::from_rows(&[[3, 0], [-3, 0], [0, 1]]);
        assert_eq!(bip_solve(&c, &ints(&[2, -1, 0]), &ints(&[0, 1])).unwrap(), IpOutcome::Infeasible);
        // same strip, now unbounded above in the second coordinate
        assert_eq!(bip_solve(&c, &ints(&[2, -1, 0]), &ints(&[0, -1])).unwrap(), IpOutcome::Infeasible);
    }

    #[test]
    fn lexicographic_tie_break() {
        // y1 + y2 <= 2 in the nonnegative quadrant: maximize y1 + y2, then y2
        let c = IntMatrix::from_rows(&[[1, 1], [-1, 0], [0, -1]]);
        let out = ip_lexicographic(&c, &ints(&[2, 0, 0]), &[ints(&[1, 1]), ints(&[0, 1])]).unwrap();
        assert!(matches!(out, IpOutcome::Optimal { ref point, .. } if point == &ints(&[0, 2])));
    }

    impl IpOutcome {
        fn value(self) -> Option<BigInt> {
            match self {
                IpOutcome::Optimal { value, .. } => Some(value),
                _ => None,
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_enumeration(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 1..5),
            g in proptest::collection::vec(-4i64..=6, 5),
            w in proptest::collection::vec(-3i64..=3, 2),
        ) {
            // box rows keep the oracle finite
            let mut all = rows.clone();
            all.extend([vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
            let c = IntMatrix::from_rows(&all);
            let mut rhs = ints(&g[..rows.len()]);
            rhs.extend(ints(&[4, 4, 4, 4]));
            let w = ints(&w);
            let out = bip_solve(&c, &rhs, &w).unwrap();
            let oracle = ip_bruteforce(&c, &rhs, &w, &Box::uniform(2, -4, 4).unwrap(), 1000).unwrap();
            match (&out, &oracle) {
                (IpOutcome::Optimal { point, value }, BoxIpOutcome::Optimal { value: ov, .. }) => {
                    prop_assert_eq!(value, ov);
                    prop_assert_eq!(first_violation(&c, &rhs, point), None);
                }
                (IpOutcome::Infeasible, BoxIpOutcome::InfeasibleInBox) => {}
                _ => prop_assert!(false, "{:?} vs {:?}", out, oracle),
            }
        }
    }
}
