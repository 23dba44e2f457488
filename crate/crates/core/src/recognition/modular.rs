use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::decompose::{decompose_ab0, ordered_pair, DecomposeOutcome, Decomposition};
use super::probe::{nondegenerate_probe, ProbeOutcome};
use super::reduce::{gcd_reduce, GcdReduction};
use super::AbzCertificate;
use crate::error::{Error, Result};
use crate::linalg::{abs_minor, adapted_hnf, require_full_column_rank};
use crate::matrix::IntMatrix;
use crate::tu::test_tu;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModularityVerdict {
    /// D(A) = {a, b, 0}.
    Confirmed,
    NotModular(AbzCertificate),
}

/// Decides whether D(A) = {a, b, 0} for `a, b > 0` with `2b ≠ a` (after
/// ordering so that a >= b). `a = b` tests D(A) = {a, 0}.
pub fn test_ab0_modular(a: &IntMatrix, a_val: &BigInt, b_val: &BigInt) -> Result<ModularityVerdict> {
    let (av, bv) = if a_val >= b_val {
        (a_val.clone(), b_val.clone())
    } else {
        (b_val.clone(), a_val.clone())
    };
    if !bv.is_positive() {
        return Err(Error::Contract("a and b must be positive".into()));
    }
    if &bv * 2 == av {
        return Err(Error::Contract(format!("2·{bv} = {av} is a duplicative pair")));
    }
    require_full_column_rank(a)?;
    let not = |c: AbzCertificate| Ok(ModularityVerdict::NotModular(c));
    let allowed = |v: &BigInt| v.is_zero() || v == &av || v == &bv;

    match nondegenerate_probe(a, 3)? {
        ProbeOutcome::DetSet(d) => {
            return match d.values.iter().find(|(v, _)| !allowed(v)) {
                Some((v, rows)) => not(AbzCertificate::ExtraElement {
                    value: v.clone(),
                    rows: rows.clone(),
                }),
                None => not(AbzCertificate::StrictSubset(d)),
            };
        }
        ProbeOutcome::AtLeast(d) => {
            let (v, rows) = d
                .values
                .iter()
                .find(|(v, _)| !allowed(v))
                .expect("four values cannot fit in {a,b,0}");
            return not(AbzCertificate::ExtraElement {
                value: v.clone(),
                rows: rows.clone(),
            });
        }
        ProbeOutcome::DegeneracyWitness(_) => {}
    }

    let (reduced, gamma) = match gcd_reduce(a, &av, &bv)? {
        GcdReduction::GcdMismatch { det_gcd, expected } => {
            return not(AbzCertificate::GcdMismatch { det_gcd, expected })
        }
        GcdReduction::Reduced { matrix, gamma } => (matrix, gamma),
    };
    let (ra, rb) = (&av / &gamma, &bv / &gamma);
    let lift = |c: AbzCertificate| not(c.scaled(&gamma));

    if ra == rb {
        let profile = adapted_hnf(&reduced, None)?;
        let n = reduced.cols();
        if profile.identity_size() < n {
            let rows = profile.basis_rows.clone();
            return lift(AbzCertificate::ExtraElement {
                value: abs_minor(&reduced, &rows),
                rows,
            });
        }
        return match test_tu(&profile.permuted).certificate {
            None => Ok(ModularityVerdict::Confirmed),
            Some(cert) => {
                let mut rows = cert.rows.clone();
                rows.extend((0..n).filter(|j| !cert.cols.contains(j)));
                let rows = profile.original_rows(&rows);
                lift(AbzCertificate::ExtraElement {
                    value: abs_minor(&reduced, &rows),
                    rows,
                })
            }
        };
    }

    ordered_pair(&ra, &rb)?;
    let d = match decompose_ab0(&reduced, &ra, &rb)? {
        DecomposeOutcome::Certificate(c) => return lift(c),
        DecomposeOutcome::Decomposition(d) => d,
    };
    match side_violation(&reduced, &d)? {
        Some(c) => lift(c),
        None => Ok(ModularityVerdict::Confirmed),
    }
}

/// Checks that every nonsingular maximal minor on the rows with last entry
/// `a` or 0 equals ±a, and likewise for `b`. The last column of each row
/// restriction is divided by `a` (resp. `b`), which leaves a {0,±1} matrix
/// containing the first n-1 unit rows, so the condition is total
/// unimodularity. A violating submatrix has determinant ±2 and involves the
/// last column; it extends to a maximal minor of ±2a (resp. ±2b).
fn side_violation(a: &IntMatrix, d: &Decomposition) -> Result<Option<AbzCertificate>> {
    let lay = d.layout(a)?;
    let (m, n) = (lay.rows(), lay.cols());
    let last = n - 1;
    let unit_row = |j: usize| -> Option<usize> {
        (0..m).find(|&i| (0..n).all(|c| lay.get(i, c) == &BigInt::from(i64::from(c == j))))
    };
    for (value, side) in [(&d.a, true), (&d.b, false)] {
        let rows: Vec<usize> = (0..m)
            .filter(|&i| {
                let v = lay.get(i, last);
                v.is_zero() || (v == value && (i < d.m1) == side)
            })
            .collect();
        let mut sub = lay.select_rows(&rows);
        for i in 0..sub.rows() {
            let q = sub.get(i, last) / value;
            sub.set(i, last, q);
        }
        let Some(cert) = test_tu(&sub).certificate else {
            continue;
        };
        if !cert.cols.contains(&last) {
            return Err(Error::Internal("violation avoids the last column".into()));
        }
        let mut lay_rows: Vec<usize> = cert.rows.iter().map(|&r| rows[r]).collect();
        for j in (0..last).filter(|j| !cert.cols.contains(j)) {
            lay_rows.push(unit_row(j).ok_or_else(|| Error::Internal("missing unit row".into()))?);
        }
        let mut orig: Vec<usize> = lay_rows.iter().map(|&r| d.row_perm[r]).collect();
        orig.sort_unstable();
        let v = abs_minor(a, &orig);
        if v.is_zero() || v == d.a || v == d.b {
            return Err(Error::Internal(format!("side violation produced allowed minor {v}")));
        }
        return Ok(Some(AbzCertificate::ExtraElement { value: v, rows: orig }));
    }
    Ok(None)
}
