use num_bigint::BigInt;
use num_rational::BigRational;

use super::lp::{lp_solve_exact, LpOutcome};
use crate::error::{Error, Result};
use crate::linalg::is_unimodular;
use crate::matrix::{dot, IntMatrix};
use crate::tu::is_tu;

/// `C·U = [T | d_col]` with `T` totally unimodular and `U` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuSplit {
    pub u: IntMatrix,
    pub t: IntMatrix,
    pub d_col: Vec<BigInt>,
}

impl TuSplit {
    /// Splits `C·U` and checks the invariants.
    pub fn new(c: &IntMatrix, u: IntMatrix) -> Result<Self> {
        if !is_unimodular(&u) || u.rows() != c.cols() {
            return Err(Error::Contract("column transform must be unimodular".into()));
        }
        let cu = c.mul(&u)?;
        let k = cu.cols();
        let t = cu.select_cols(&(0..k - 1).collect::<Vec<_>>());
        if !is_tu(&t) {
            return Err(Error::Contract("leading columns of C·U are not totally unimodular".into()));
        }
        Ok(TuSplit {
            u,
            t,
            d_col: cu.column(k - 1),
        })
    }

    /// `[T | d_col]`.
    pub fn matrix(&self) -> IntMatrix {
        let d = IntMatrix::column_vector(&self.d_col);
        if self.t.cols() == 0 {
            d
        } else {
            self.t.hstack(&d).expect("row counts agree")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MilpOutcome {
    /// An integral optimum of the mixed program.
    Optimal { point: Vec<BigInt>, value: BigRational },
    Infeasible,
    /// `point` is an integral feasible point; the objective is unbounded.
    Unbounded { point: Vec<BigInt> },
}

/// max{w·z : [T|d] z <= g, z real, z_last integral}, returned as a fully
/// integral optimum.
///
/// The value of the LP with `z_last` fixed to `s` is concave in `s` and
/// peaks at the relaxation optimum, so the integral `z_last` is the floor or
/// the ceiling of that peak. With `z_last` fixed, a vertex of the remaining
/// LP is integral because `T` is totally unimodular.
pub fn milp_single_integer(split: &TuSplit, g: &[BigInt], w: &[BigInt]) -> Result<MilpOutcome> {
    let full = split.matrix();
    let k = full.cols();
    if g.len() != full.rows() || w.len() != k {
        return Err(Error::Dimension("MILP operand sizes differ".into()));
    }
    let peak = match lp_solve_exact(&full, g, w)? {
        LpOutcome::Infeasible => return Ok(MilpOutcome::Infeasible),
        LpOutcome::Unbounded { .. } => {
            let probe = full.row(0).to_vec();
            return Ok(match milp_single_integer(split, g, &probe)? {
                MilpOutcome::Optimal { point, .. } => MilpOutcome::Unbounded { point },
                MilpOutcome::Infeasible => MilpOutcome::Infeasible,
                MilpOutcome::Unbounded { .. } => {
                    return Err(Error::Internal("row objective cannot be unbounded".into()))
                }
            });
        }
        LpOutcome::VertexOptimal { tight, .. } => tight.vertex[k - 1].clone(),
    };

    let mut candidates = vec![peak.floor().to_integer()];
    if !peak.is_integer() {
        candidates.push(peak.ceil().to_integer());
    }
    let mut best: Option<(BigRational, Vec<BigInt>)> = None;
    for s in candidates {
        let rhs: Vec<BigInt> = g.iter().zip(&split.d_col).map(|(gi, di)| gi - di * &s).collect();
        let LpOutcome::VertexOptimal { tight, .. } = lp_solve_exact(&split.t, &rhs, &w[..k - 1])? else {
            continue;
        };
        let mut point = tight
            .vertex
            .to_integers()
            .ok_or_else(|| Error::Internal("vertex over a totally unimodular block is fractional".into()))?;
        point.push(s);
        let value = BigRational::from_integer(dot(w, &point));
        if best.as_ref().is_none_or(|(b, _)| &value > b) {
            best = Some((value, point));
        }
    }
    Ok(match best {
        Some((value, point)) => MilpOutcome::Optimal { point, value },
        None => MilpOutcome::Infeasible,
    })
}
