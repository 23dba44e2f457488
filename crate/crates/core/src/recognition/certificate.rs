use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use super::DetSet;
use crate::linalg::{abs_minor, snf_with_transforms};
use crate::matrix::IntMatrix;

/// Why a matrix is not {a,b,0}-modular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbzCertificate {
    /// A maximal minor outside {a, b, 0}.
    ExtraElement { value: BigInt, rows: Vec<usize> },
    /// gcd(D(A)) differs from gcd(a, b).
    GcdMismatch { det_gcd: BigInt, expected: BigInt },
    /// D(A) is this proper subset of {a, b, 0}.
    StrictSubset(DetSet),
}

impl AbzCertificate {
    /// Multiplies every reported value by `factor`, as needed after undoing
    /// a gcd reduction.
    pub fn scaled(&self, factor: &BigInt) -> Self {
        match self {
            AbzCertificate::ExtraElement { value, rows } => AbzCertificate::ExtraElement {
                value: value * factor,
                rows: rows.clone(),
            },
            AbzCertificate::GcdMismatch { det_gcd, expected } => AbzCertificate::GcdMismatch {
                det_gcd: det_gcd * factor,
                expected: expected * factor,
            },
            AbzCertificate::StrictSubset(d) => AbzCertificate::StrictSubset(d.scaled(factor)),
        }
    }

    /// Rechecks the certificate against `a`. For `StrictSubset` only the
    /// witnesses and the proper-subset relation are checked; equality with
    /// D(A) needs an exhaustive enumeration.
    pub fn verify(&self, a: &IntMatrix, a_val: &BigInt, b_val: &BigInt) -> bool {
        let allowed = |v: &BigInt| v.is_zero() || v == a_val || v == b_val;
        match self {
            AbzCertificate::ExtraElement { value, rows } => {
                rows.len() == a.cols()
                    && rows.iter().all(|&r| r < a.rows())
                    && &abs_minor(a, rows) == value
                    && !allowed(value)
            }
            AbzCertificate::GcdMismatch { det_gcd, expected } => {
                let Ok(snf) = snf_with_transforms(a) else {
                    return false;
                };
                &snf.det_gcd() == det_gcd
                    && expected == &a_val.gcd(b_val)
                    && det_gcd != expected
            }
            AbzCertificate::StrictSubset(d) => {
                let full: std::collections::BTreeSet<BigInt> =
                    [a_val.clone(), b_val.clone(), BigInt::zero()].into();
                let mine = d.value_set();
                d.verify(a) && mine.is_subset(&full) && mine != full
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AbzCertificate::ExtraElement { value, rows } => json!({
                "kind": "extra_element",
                "value": int_json(value),
                "rows": one_based(rows),
            }),
            AbzCertificate::GcdMismatch { det_gcd, expected } => json!({
                "kind": "gcd_mismatch",
                "det_gcd": int_json(det_gcd),
                "expected": int_json(expected),
            }),
            AbzCertificate::StrictSubset(d) => json!({
                "kind": "strict_subset",
                "values": d.values.keys().map(int_json).collect::<Vec<_>>(),
                "witnesses": witnesses_json(d),
            }),
        }
    }
}

pub(crate) fn one_based(rows: &[usize]) -> Vec<usize> {
    rows.iter().map(|r| r + 1).collect()
}

pub(crate) fn witnesses_json(d: &DetSet) -> Value {
    Value::Object(
        d.values
            .iter()
            .map(|(v, rows)| (v.to_string(), json!(one_based(rows))))
            .collect(),
    )
}

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
pub fn int_json(x: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}
