use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::bip::{bip_solve, first_violation, ip_lexicographic, IpOutcome};
use super::lp::{integral_multiple, lp_solve_exact, LpOutcome, TightSet};
use super::milp::{milp_single_integer, MilpOutcome, TuSplit};
use super::reduction::{standard_to_inequality, Reduction, StandardIP};
use crate::error::{Error, Result};
use crate::linalg::{require_full_column_rank, snf_with_transforms};
use crate::matrix::{dot, IntMatrix};
use crate::recognition::{
    decompose_ab0, int_json, minor_off_prime, nondegenerate_probe, recognize, DecomposeOutcome, DetSet,
    ProbeOutcome, RecognitionOutcome,
};
use crate::util::smallest_prime_factor;

/// Why D(C) has at least four elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtLeastFourCertificate {
    /// Four or more witnessed values of D(C); rows refer to `C`.
    Witnessed(DetSet),
    /// D(C) contains {2, 1, 0}, yet an optimum over the cone of constraints
    /// tight at the LP optimum violates row `violated_row`. That cannot
    /// happen when D(C) = {2, 1, 0}.
    ConeOptimumInfeasible {
        known: DetSet,
        point: Vec<BigInt>,
        violated_row: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Optimal { point: Vec<BigInt>, value: BigInt },
    Infeasible,
    /// A feasible integral point and an integral improving direction.
    Unbounded { point: Vec<BigInt>, ray: Vec<BigInt> },
    AtLeastFour(AtLeastFourCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    /// Set when the generic branch and bound replaced the structured path.
    pub fallback: bool,
    /// D(Bᵀ) = det_gcd · D(C) for a standard-form source, 1 otherwise.
    pub det_gcd: BigInt,
    /// Number of standard-form variables, when solving a standard-form IP.
    pub source_vars: Option<usize>,
}

impl SolveReport {
    pub fn status(&self) -> &'static str {
        match self.outcome {
            SolveOutcome::Optimal { .. } => "optimal",
            SolveOutcome::Infeasible => "infeasible",
            SolveOutcome::Unbounded { .. } => "unbounded",
            SolveOutcome::AtLeastFour(_) => "at_least_four",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({ "status": self.status(), "fallback": self.fallback });
        let ints = |v: &[BigInt]| Value::Array(v.iter().map(int_json).collect());
        match &self.outcome {
            SolveOutcome::Optimal { point, value } => {
                out["x"] = ints(point);
                out["value"] = json!(value.to_string());
            }
            SolveOutcome::Infeasible => {}
            SolveOutcome::Unbounded { point, ray } => {
                out["x"] = ints(point);
                out["certificate"] = json!({ "kind": "ray", "ray": ints(ray) });
            }
            SolveOutcome::AtLeastFour(cert) => {
                let (known, extra) = match cert {
                    AtLeastFourCertificate::Witnessed(d) => (d, json!({ "kind": "witnessed" })),
                    AtLeastFourCertificate::ConeOptimumInfeasible {
                        known,
                        point,
                        violated_row,
                    } => (
                        known,
                        json!({
                            "kind": "cone_optimum_infeasible",
                            "point": ints(point),
                            "violated_row": violated_row + 1,
                        }),
                    ),
                };
                let mut c = extra;
                c["values"] = Value::Array(known.values.keys().map(|v| int_json(&(v * &self.det_gcd))).collect());
                c["witnesses"] = self.witnesses(known);
                out["certificate"] = c;
            }
        }
        out
    }

    /// Witness index sets, 1-based. For a standard-form source a value `v`
    /// of D(C) on rows `R` is the value `det_gcd · v` of D(Bᵀ) on the
    /// columns of `B` outside `R`.
    fn witnesses(&self, d: &DetSet) -> Value {
        Value::Object(
            d.values
                .iter()
                .map(|(v, rows)| {
                    let idx: Vec<usize> = match self.source_vars {
                        Some(n) => (0..n).filter(|j| !rows.contains(j)).map(|j| j + 1).collect(),
                        None => rows.iter().map(|r| r + 1).collect(),
                    };
                    ((v * &self.det_gcd).to_string(), json!(idx))
                })
                .collect(),
        )
    }
}

/// Solves max{c·x : B x = b, x >= 0 integral} exactly, or reports that
/// D(Bᵀ) has at least four elements.
pub fn solve_standard(ip: &StandardIP) -> Result<SolveReport> {
    let n = ip.b_mat.cols();
    let red = match standard_to_inequality(ip)? {
        Reduction::Infeasible => {
            return Ok(SolveReport {
                outcome: SolveOutcome::Infeasible,
                fallback: false,
                det_gcd: BigInt::one(),
                source_vars: Some(n),
            })
        }
        Reduction::Reduced(red) => red,
    };
    let inner = solve_inequality(&red.c_mat, &red.g, &red.h)?;
    let outcome = match inner.outcome {
        SolveOutcome::Optimal { point, .. } => {
            let x = red.back_map.apply(&point);
            let value = ip.objective(&x);
            debug_assert_eq!(value, &red.objective_offset + dot(&red.h, &point));
            SolveOutcome::Optimal { point: x, value }
        }
        SolveOutcome::Unbounded { point, ray } => SolveOutcome::Unbounded {
            point: red.back_map.apply(&point),
            ray: red.back_map.apply_linear(&ray),
        },
        other => other,
    };
    Ok(SolveReport {
        outcome,
        fallback: inner.fallback,
        det_gcd: red.det_gcd,
        source_vars: Some(n),
    })
}

/// Solves max{h·y : C y <= g, y integral} for `C` of full column rank.
///
/// The structured path needs gcd(D(C)) = 1; other inputs go to the generic
/// branch and bound and are flagged as a fallback.
pub fn solve_inequality(c: &IntMatrix, g: &[BigInt], h: &[BigInt]) -> Result<SolveReport> {
    if g.len() != c.rows() || h.len() != c.cols() {
        return Err(Error::Dimension("inequality IP operand sizes differ".into()));
    }
    let report = |outcome, fallback| SolveReport {
        outcome,
        fallback,
        det_gcd: BigInt::one(),
        source_vars: None,
    };
    if c.cols() == 0 {
        let outcome = if g.iter().all(|x| !x.is_negative()) {
            SolveOutcome::Optimal {
                point: vec![],
                value: BigInt::zero(),
            }
        } else {
            SolveOutcome::Infeasible
        };
        return Ok(report(outcome, false));
    }
    require_full_column_rank(c)?;
    let solver = Solver { c, g };
    if !snf_with_transforms(c)?.det_gcd().is_one() {
        return Ok(report(solver.generic(h)?, true));
    }
    let (outcome, fallback) = solver.run(h)?;
    Ok(report(outcome, fallback))
}

struct Solver<'a> {
    c: &'a IntMatrix,
    g: &'a [BigInt],
}

impl Solver<'_> {
    fn run(&self, h: &[BigInt]) -> Result<(SolveOutcome, bool)> {
        match lp_solve_exact(self.c, self.g, h)? {
            LpOutcome::Infeasible => Ok((SolveOutcome::Infeasible, false)),
            LpOutcome::Unbounded { ray, .. } => {
                // max of the first row is bounded by g_0; any feasible point
                // of it certifies unboundedness
                let probe = self.c.row(0).to_vec();
                let (outcome, fallback) = self.run(&probe)?;
                let outcome = match outcome {
                    SolveOutcome::Optimal { point, .. } => SolveOutcome::Unbounded {
                        point,
                        ray: integral_multiple(&ray.0),
                    },
                    SolveOutcome::Unbounded { .. } => {
                        return Err(Error::Internal("row objective cannot be unbounded".into()))
                    }
                    other => other,
                };
                Ok((outcome, fallback))
            }
            LpOutcome::VertexOptimal { tight, .. } => self.bounded(h, &tight),
        }
    }

    fn bounded(&self, h: &[BigInt], tight: &TightSet) -> Result<(SolveOutcome, bool)> {
        match recognize(self.c)? {
            RecognitionOutcome::AtLeastFour(d) => {
                Ok((SolveOutcome::AtLeastFour(AtLeastFourCertificate::Witnessed(d)), false))
            }
            RecognitionOutcome::Computed(d) => {
                if !d.contains(&BigInt::zero()) {
                    return Ok((self.generic(h)?, true));
                }
                Ok((self.split_and_solve(h, &d)?, false))
            }
            RecognitionOutcome::Duplicative { k1, rows1, k2, rows2 } => {
                let mut known = DetSet::new();
                known.insert(BigInt::zero(), self.zero_witness()?);
                known.insert(k1.clone(), rows1);
                known.insert(k2, rows2);
                Ok((self.duplicative(h, tight, &k1, known)?, false))
            }
        }
    }

    fn generic(&self, h: &[BigInt]) -> Result<SolveOutcome> {
        Ok(match bip_solve(self.c, self.g, h)? {
            IpOutcome::Optimal { point, value } => SolveOutcome::Optimal { point, value },
            IpOutcome::Infeasible => SolveOutcome::Infeasible,
            IpOutcome::Unbounded { point, ray } => SolveOutcome::Unbounded { point, ray },
        })
    }

    /// D(C) is {1, 0} or {a, b, 0} without a duplicative relation: bring the
    /// leading columns to a totally unimodular block and solve the program
    /// with a single integer variable.
    fn split_and_solve(&self, h: &[BigInt], d: &DetSet) -> Result<SolveOutcome> {
        let k = self.c.cols();
        let nonzero: Vec<&BigInt> = d.values.keys().filter(|v| !v.is_zero()).collect();
        let u = match nonzero.as_slice() {
            [one] if one.is_one() => IntMatrix::identity(k),
            [b, a] => match decompose_ab0(self.c, a, b)? {
                DecomposeOutcome::Decomposition(dec) => dec.col_transform,
                DecomposeOutcome::Certificate(cert) => {
                    return Err(Error::Internal(format!("confirmed value set has a certificate {cert:?}")))
                }
            },
            _ => return Err(Error::Internal(format!("unexpected value set {:?}", d.value_set()))),
        };
        let split = TuSplit::new(self.c, u)?;
        let w = split.u.transpose().mul_vec(h);
        match milp_single_integer(&split, self.g, &w)? {
            MilpOutcome::Optimal { point, .. } => {
                let y = split.u.mul_vec(&point);
                Ok(SolveOutcome::Optimal {
                    value: dot(h, &y),
                    point: y,
                })
            }
            MilpOutcome::Infeasible => Ok(SolveOutcome::Infeasible),
            MilpOutcome::Unbounded { .. } => Err(Error::Internal("bounded relaxation turned unbounded".into())),
        }
    }

    fn zero_witness(&self) -> Result<Vec<usize>> {
        match nondegenerate_probe(self.c, 3)? {
            ProbeOutcome::DegeneracyWitness(rows) => Ok(rows),
            ProbeOutcome::DetSet(d) | ProbeOutcome::AtLeast(d) => d
                .witness(&BigInt::zero())
                .map(<[usize]>::to_vec)
                .ok_or_else(|| Error::Internal("duplicative input without a zero minor".into())),
        }
    }

    /// {2k, k, 0} ⊆ D(C) is known and the relaxation is bounded.
    fn duplicative(&self, h: &[BigInt], tight: &TightSet, k: &BigInt, mut known: DetSet) -> Result<SolveOutcome> {
        let witnessed = |d: DetSet| Ok(SolveOutcome::AtLeastFour(AtLeastFourCertificate::Witnessed(d)));
        if !k.is_one() {
            // gcd(D(C)) = 1, so some minor avoids a prime factor of k
            let p = smallest_prime_factor(k).expect("k > 1");
            let (v, rows) = minor_off_prime(self.c, &p)?;
            known.insert(v, rows);
            return witnessed(known);
        }
        if let Some(point) = tight.vertex.to_integers() {
            return Ok(SolveOutcome::Optimal {
                value: dot(h, &point),
                point,
            });
        }

        let rows = &tight.rows;
        let ci = self.c.select_rows(rows);
        let gi: Vec<BigInt> = rows.iter().map(|&r| self.g[r].clone()).collect();
        let lift = |local: &[usize]| -> Vec<usize> {
            let mut out: Vec<usize> = local.iter().map(|&r| rows[r]).collect();
            out.sort_unstable();
            out
        };
        let two = BigInt::from(2);
        match recognize(&ci)? {
            RecognitionOutcome::AtLeastFour(d) => return witnessed(d.remap_rows(|r| rows[r])),
            RecognitionOutcome::Duplicative { k1, k2, rows2, .. } => {
                if k1.is_one() {
                    return Err(Error::Internal("unit minor at a fractional vertex".into()));
                }
                known.insert(k2, lift(&rows2));
                return witnessed(known);
            }
            RecognitionOutcome::Computed(d) => {
                if let Some((t, r)) = d.values.iter().find(|(t, _)| !t.is_zero() && *t != &two) {
                    if t.is_one() {
                        return Err(Error::Internal("unit minor at a fractional vertex".into()));
                    }
                    known.insert(t.clone(), lift(r));
                    return witnessed(known);
                }
            }
        }

        // tight rows are bimodular; perturbing h by the sum of the tight
        // rows makes the vertex the unique LP optimum, which for integer
        // points amounts to a second lexicographic objective
        let s: Vec<BigInt> = (0..ci.cols()).map(|j| ci.column(j).iter().sum()).collect();
        match ip_lexicographic(&ci, &gi, &[h.to_vec(), s])? {
            IpOutcome::Infeasible => Ok(SolveOutcome::Infeasible),
            IpOutcome::Optimal { point, .. } => Ok(match first_violation(self.c, self.g, &point) {
                None => SolveOutcome::Optimal {
                    value: dot(h, &point),
                    point,
                },
                Some(violated_row) => SolveOutcome::AtLeastFour(AtLeastFourCertificate::ConeOptimumInfeasible {
                    known,
                    point,
                    violated_row,
                }),
            }),
            IpOutcome::Unbounded { .. } => Err(Error::Internal("cone program over a bounded LP is unbounded".into())),
        }
    }
}
