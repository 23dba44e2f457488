use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{greedy_basis_rows, rank, solve_rational};
use crate::matrix::{rat, rat_dot, IntMatrix, RationalVector};

/// An LP vertex together with every constraint tight at it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightSet {
    pub vertex: RationalVector,
    pub rows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    VertexOptimal {
        tight: TightSet,
        value: BigRational,
        /// `cols` linearly independent tight rows defining the vertex.
        basis: Vec<usize>,
    },
    /// `point` is feasible, `C·ray <= 0` and `w·ray > 0`.
    Unbounded { point: RationalVector, ray: RationalVector },
    Infeasible,
}

/// max{w·y : C y <= g} over the reals, exactly, for `C` of full column rank.
///
/// Vertex-to-vertex simplex with Bland's rule. A first vertex comes from an
/// auxiliary problem with one extra variable absorbing all violations.
pub fn lp_solve_exact(c: &IntMatrix, g: &[BigInt], w: &[BigInt]) -> Result<LpOutcome> {
    let (m, k) = (c.rows(), c.cols());
    if g.len() != m || w.len() != k {
        return Err(Error::Dimension("LP operand sizes differ".into()));
    }
    if k == 0 {
        return Ok(if g.iter().all(|x| !x.is_negative()) {
            LpOutcome::VertexOptimal {
                tight: TightSet {
                    vertex: RationalVector(vec![]),
                    rows: (0..m).filter(|&i| g[i].is_zero()).collect(),
                },
                value: BigRational::zero(),
                basis: vec![],
            }
        } else {
            LpOutcome::Infeasible
        });
    }
    if rank(c) < k {
        return Err(Error::Contract("LP feasible region is not pointed".into()));
    }
    let Some((basis, v)) = first_vertex(c, g)? else {
        return Ok(LpOutcome::Infeasible);
    };
    Ok(match simplex(c, g, w, basis, v)? {
        Phase::Optimal { basis, vertex } => {
            let rows = tight_rows(c, g, &vertex);
            LpOutcome::VertexOptimal {
                value: rat_dot(w, &vertex),
                tight: TightSet {
                    vertex: RationalVector(vertex),
                    rows,
                },
                basis,
            }
        }
        Phase::Unbounded { point, ray } => LpOutcome::Unbounded {
            point: RationalVector(point),
            ray: RationalVector(ray),
        },
    })
}

enum Phase {
    Optimal { basis: Vec<usize>, vertex: Vec<BigRational> },
    Unbounded { point: Vec<BigRational>, ray: Vec<BigRational> },
}

pub(crate) fn tight_rows(c: &IntMatrix, g: &[BigInt], v: &[BigRational]) -> Vec<usize> {
    (0..c.rows()).filter(|&i| rat_dot(c.row(i), v) == rat(&g[i])).collect()
}

/// A feasible vertex with a defining basis, or `None` if {C y <= g} is empty.
fn first_vertex(c: &IntMatrix, g: &[BigInt]) -> Result<Option<(Vec<usize>, Vec<BigRational>)>> {
    let (m, k) = (c.rows(), c.cols());
    let basis = greedy_basis_rows(c);
    let y0 = solve_rational(&c.select_rows(&basis), &RationalVector::from_ints(&basis.iter().map(|&i| g[i].clone()).collect::<Vec<_>>()))?.0;
    let excess: Vec<BigRational> = (0..m).map(|i| rat_dot(c.row(i), &y0) - rat(&g[i])).collect();
    let worst = (0..m)
        .filter(|&i| excess[i].is_positive())
        .max_by(|&i, &j| excess[i].cmp(&excess[j]).then(j.cmp(&i)));
    let Some(worst) = worst else {
        return Ok(Some((basis, y0)));
    };

    // rows C_i y - [violated] t <= g_i, then -t <= 0; maximize -t
    let mut aux = IntMatrix::zeros(m + 1, k + 1);
    for i in 0..m {
        for j in 0..k {
            aux.set(i, j, c.get(i, j).clone());
        }
        if excess[i].is_positive() {
            aux.set(i, k, -BigInt::one());
        }
    }
    aux.set(m, k, -BigInt::one());
    let mut aux_g = g.to_vec();
    aux_g.push(BigInt::zero());
    let mut aux_w = vec![BigInt::zero(); k];
    aux_w.push(-BigInt::one());
    let mut start = y0;
    start.push(excess[worst].clone());
    let mut aux_basis = basis;
    aux_basis.push(worst);

    let Phase::Optimal { vertex, .. } = simplex(&aux, &aux_g, &aux_w, aux_basis, start)? else {
        return Err(Error::Internal("auxiliary LP is bounded by construction".into()));
    };
    if !vertex[k].is_zero() {
        return Ok(None);
    }
    let y = vertex[..k].to_vec();
    let tight = tight_rows(c, g, &y);
    let local = greedy_basis_rows(&c.select_rows(&tight));
    if local.len() < k {
        return Err(Error::Internal("auxiliary optimum is not a vertex".into()));
    }
    Ok(Some((local.into_iter().map(|r| tight[r]).collect(), y)))
}

fn simplex(
    c: &IntMatrix,
    g: &[BigInt],
    w: &[BigInt],
    mut basis: Vec<usize>,
    mut v: Vec<BigRational>,
) -> Result<Phase> {
    let (m, k) = (c.rows(), c.cols());
    let w_rat = RationalVector::from_ints(w);
    loop {
        let cb = c.select_rows(&basis);
        let lambda = solve_rational(&cb.transpose(), &w_rat)?;
        let leave = (0..k)
            .filter(|&p| lambda[p].is_negative())
            .min_by_key(|&p| basis[p]);
        let Some(p) = leave else {
            return Ok(Phase::Optimal { basis, vertex: v });
        };
        let mut e = vec![BigRational::zero(); k];
        e[p] = -BigRational::one();
        let d = solve_rational(&cb, &RationalVector(e))?.0;

        let mut enter: Option<(usize, BigRational)> = None;
        for i in (0..m).filter(|i| !basis.contains(i)) {
            let cd = rat_dot(c.row(i), &d);
            if !cd.is_positive() {
                continue;
            }
            let t = (rat(&g[i]) - rat_dot(c.row(i), &v)) / cd;
            if enter.as_ref().is_none_or(|(_, best)| &t < best) {
                enter = Some((i, t));
            }
        }
        let Some((i, t)) = enter else {
            return Ok(Phase::Unbounded { point: v, ray: d });
        };
        for (x, dx) in v.iter_mut().zip(&d) {
            *x += &t * dx;
        }
        basis[p] = i;
    }
}

/// Scales a rational vector by the lcm of its denominators.
pub(crate) fn integral_multiple(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * rat(&l)).to_integer()).collect()
}
