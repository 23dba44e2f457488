use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use super::certificate::{int_json, witnesses_json};
use super::modular::{test_ab0_modular, ModularityVerdict};
use super::probe::{nondegenerate_probe, ProbeOutcome};
use super::reduce::normalize_gcd;
use super::{AbzCertificate, DetSet};
use crate::error::{Error, Result};
use crate::linalg::{abs_minor, adapted_hnf, basis_rows_mod_prime, greedy_basis_rows, require_full_column_rank};
use crate::matrix::IntMatrix;
use crate::tu::test_tu;
use crate::util::smallest_prime_factor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionOutcome {
    /// The exact D(A).
    Computed(DetSet),
    /// At least four witnessed values of D(A).
    AtLeastFour(DetSet),
    /// Two witnessed nonzero values with `2·k1 = k2`.
    Duplicative {
        k1: BigInt,
        rows1: Vec<usize>,
        k2: BigInt,
        rows2: Vec<usize>,
    },
}

impl RecognitionOutcome {
    /// Rechecks every witness against `a`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        match self {
            RecognitionOutcome::Computed(d) => d.verify(a),
            RecognitionOutcome::AtLeastFour(d) => d.len() >= 4 && d.verify(a),
            RecognitionOutcome::Duplicative { k1, rows1, k2, rows2 } => {
                !k1.is_zero()
                    && &(k1 * 2) == k2
                    && rows1.len() == a.cols()
                    && rows2.len() == a.cols()
                    && &abs_minor(a, rows1) == k1
                    && &abs_minor(a, rows2) == k2
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let set = |variant: &str, d: &DetSet| {
            json!({
                "variant": variant,
                "values": d.values.keys().map(int_json).collect::<Vec<_>>(),
                "witnesses": witnesses_json(d),
            })
        };
        match self {
            RecognitionOutcome::Computed(d) => set("computed", d),
            RecognitionOutcome::AtLeastFour(d) => set("at_least_four", d),
            RecognitionOutcome::Duplicative { k1, rows1, k2, rows2 } => {
                let mut d = DetSet::new();
                d.insert(k1.clone(), rows1.clone());
                d.insert(k2.clone(), rows2.clone());
                json!({
                    "variant": "duplicative",
                    "values": [int_json(k1), int_json(k2)],
                    "witnesses": witnesses_json(&d),
                })
            }
        }
    }
}

/// Computes D(A), or finds four of its values, or finds a duplicative pair.
pub fn recognize(a: &IntMatrix) -> Result<RecognitionOutcome> {
    require_full_column_rank(a)?;
    let zero_rows = match nondegenerate_probe(a, 3)? {
        ProbeOutcome::DetSet(d) => return Ok(RecognitionOutcome::Computed(d)),
        ProbeOutcome::AtLeast(d) => return Ok(RecognitionOutcome::AtLeastFour(d)),
        ProbeOutcome::DegeneracyWitness(rows) => rows,
    };
    let rows1 = greedy_basis_rows(a);
    let k1 = abs_minor(a, &rows1);
    let mut known = DetSet::new();
    known.insert(BigInt::zero(), zero_rows);
    known.insert(k1.clone(), rows1.clone());
    if test_ab0_modular(a, &k1, &k1)? == ModularityVerdict::Confirmed {
        return Ok(RecognitionOutcome::Computed(known));
    }

    let (k2, rows2) = second_value(a, &k1)?;
    known.insert(k2.clone(), rows2.clone());
    let ((small, small_rows), (big, big_rows)) = if k1 < k2 {
        ((k1, rows1), (k2, rows2))
    } else {
        ((k2, rows2), (k1, rows1))
    };
    if &small * 2 == big {
        return Ok(RecognitionOutcome::Duplicative {
            k1: small,
            rows1: small_rows,
            k2: big,
            rows2: big_rows,
        });
    }
    match test_ab0_modular(a, &big, &small)? {
        ModularityVerdict::Confirmed => Ok(RecognitionOutcome::Computed(known)),
        ModularityVerdict::NotModular(AbzCertificate::ExtraElement { value, rows }) => {
            known.insert(value, rows);
            Ok(RecognitionOutcome::AtLeastFour(known))
        }
        ModularityVerdict::NotModular(AbzCertificate::GcdMismatch { .. }) => {
            let (value, rows) = coprime_witness(a, &big, &small)?;
            known.insert(value, rows);
            Ok(RecognitionOutcome::AtLeastFour(known))
        }
        ModularityVerdict::NotModular(AbzCertificate::StrictSubset(_)) => Err(Error::Internal(
            "three witnessed values reported as a proper subset".into(),
        )),
    }
}

/// A nonzero value of D(A) other than `k1`, given that one exists.
///
/// After dividing out gcd(D(A)), two distinct nonzero entries in the last
/// column of the Hermite layout give two distinct minors. Otherwise that
/// column is 0/1, the top rows form the identity, and a violator of total
/// unimodularity gives a minor of absolute value at least 2 next to the
/// unit minor.
fn second_value(a: &IntMatrix, k1: &BigInt) -> Result<(BigInt, Vec<usize>)> {
    let n = a.cols();
    let norm = normalize_gcd(a)?;
    let profile = adapted_hnf(&norm.matrix, None)?;
    let w = &profile.permuted;
    let last = n - 1;
    let units: Vec<usize> = (0..last).collect();
    let with = |extra: &[usize]| {
        let mut rows = units.clone();
        rows.extend_from_slice(extra);
        profile.original_rows(&rows)
    };

    let nonzero: Vec<usize> = (0..w.rows()).filter(|&i| !w.get(i, last).is_zero()).collect();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    if let Some(&p) = nonzero.first() {
        if let Some(&q) = nonzero.iter().find(|&&q| w.get(q, last) != w.get(p, last)) {
            candidates.push(with(&[p]));
            candidates.push(with(&[q]));
        }
    }
    if candidates.is_empty() {
        let Some(cert) = test_tu(w).certificate else {
            return Err(Error::Internal("no second minor value in a unimodular layout".into()));
        };
        let mut rows = cert.rows.clone();
        rows.extend((0..n).filter(|j| !cert.cols.contains(j)));
        candidates.push(profile.original_rows(&rows));
        candidates.push(profile.original_rows(&(0..n).collect::<Vec<_>>()));
    }
    candidates
        .into_iter()
        .map(|rows| (abs_minor(a, &rows), rows))
        .find(|(v, _)| !v.is_zero() && v != k1)
        .ok_or_else(|| Error::Internal("candidate minors coincide".into()))
}

/// A minor outside {k1, k2, 0} when gcd(D(A)) is smaller than gcd(k1, k2).
fn coprime_witness(a: &IntMatrix, k1: &BigInt, k2: &BigInt) -> Result<(BigInt, Vec<usize>)> {
    let norm = normalize_gcd(a)?;
    let excess = k1.gcd(k2) / &norm.det_gcd;
    let p = smallest_prime_factor(&excess)
        .ok_or_else(|| Error::Internal("gcd mismatch without an excess factor".into()))?;
    let (value, rows) = minor_off_prime(a, &p)?;
    if value.is_zero() || &value == k1 || &value == k2 {
        return Err(Error::Internal("prime witness is not a new value".into()));
    }
    Ok((value, rows))
}

/// A maximal minor whose quotient by gcd(D(A)) is not divisible by the
/// prime `p`.
///
/// The gcd-normalized matrix has a maximal minor equal to ±1, so it keeps
/// full rank modulo `p`; rows independent modulo `p` give the witness.
pub(crate) fn minor_off_prime(a: &IntMatrix, p: &BigInt) -> Result<(BigInt, Vec<usize>)> {
    let norm = normalize_gcd(a)?;
    let rows = basis_rows_mod_prime(&norm.matrix, p);
    if rows.len() < a.cols() {
        return Err(Error::Internal("normalized matrix singular modulo a prime".into()));
    }
    Ok((abs_minor(a, &rows), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::det_set_bruteforce;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn examples() {
        let a = IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]);
        match recognize(&a).unwrap() {
            RecognitionOutcome::Computed(d) => assert_eq!(d.value_set(), [big(1)].into()),
            other => panic!("{other:?}"),
        }

        let a = IntMatrix::from_rows(&[[1, 0], [0, 1], [0, 2]]);
        match recognize(&a).unwrap() {
            RecognitionOutcome::Duplicative { k1, k2, .. } => assert_eq!((k1, k2), (big(1), big(2))),
            other => panic!("{other:?}"),
        }

        let a = IntMatrix::from_rows(&[[1, 0], [0, 3], [1, 1], [1, 0]]);
        match recognize(&a).unwrap() {
            RecognitionOutcome::Computed(d) => {
                assert_eq!(d.value_set(), [big(0), big(1), big(3)].into());
                assert!(d.verify(&a));
            }
            other => panic!("{other:?}"),
        }

        let a = IntMatrix::from_rows(&[[1], [3], [4], [5]]);
        match recognize(&a).unwrap() {
            RecognitionOutcome::AtLeastFour(d) => {
                assert_eq!(d.value_set(), [big(1), big(3), big(4), big(5)].into())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gcd_route_finds_a_fourth_value() {
        // D = {0, 1, 4, 6}: 4 and 6 share the factor 2 that 1 lacks
        let a = IntMatrix::from_rows(&[[1, 0], [0, 4], [0, 6], [0, 1], [1, 0]]);
        let oracle = det_set_bruteforce(&a, 1000).unwrap();
        let out = recognize(&a).unwrap();
        assert!(out.verify(&a));
        match out {
            RecognitionOutcome::AtLeastFour(d) => assert!(d.value_set().is_subset(&oracle.value_set())),
            RecognitionOutcome::Duplicative { k1, k2, .. } => {
                assert!(oracle.contains(&k1) && oracle.contains(&k2))
            }
            RecognitionOutcome::Computed(d) => assert_eq!(d, oracle),
        }
    }

    #[test]
    fn json_shape() {
        let out = recognize(&IntMatrix::identity(3)).unwrap();
        let j = out.to_json();
        assert_eq!(j["variant"], "computed");
        assert_eq!(j["values"], json!([1]));
        assert_eq!(j["witnesses"]["1"], json!([1, 2, 3]));
    }
}
