use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::DetSet;
use crate::error::{Error, Result};
use crate::linalg::{abs_minor, adapted_hnf, require_full_column_rank};
use crate::matrix::IntMatrix;
use crate::util::Combinations;

/// Result of the nondegeneracy probe for a bound `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// The full D(A); it does not contain 0 and has at most `d` values.
    DetSet(DetSet),
    /// `d + 1` distinct witnessed values of D(A).
    AtLeast(DetSet),
    /// Rows of a singular n×n submatrix, so 0 is in D(A).
    DegeneracyWitness(Vec<usize>),
}

/// Largest row count of a nondegenerate n-column matrix with |D(A)| <= d
/// (n >= 2).
pub fn probe_row_bound(n: usize, d: usize) -> usize {
    (n - 1) + d * (2 * d + 1)
}

/// Either computes D(A), or exhibits `d + 1` of its values, or exhibits a
/// zero maximal minor.
///
/// Small inputs (n = 1, or m within [`probe_row_bound`]) are enumerated
/// exhaustively in lexicographic row order. A zero minor is reported only
/// when fewer than `d + 1` values exist. Taller inputs are brought into the
/// adapted Hermite layout and scanned through the minors on rows
/// `0..n-2` plus two more rows, which must expose one of the two
/// certificates.
pub fn nondegenerate_probe(a: &IntMatrix, d: usize) -> Result<ProbeOutcome> {
    require_full_column_rank(a)?;
    if d == 0 {
        return Err(Error::Contract("probe bound d must be positive".into()));
    }
    let (m, n) = (a.rows(), a.cols());
    if n == 1 || m <= probe_row_bound(n, d) {
        return Ok(exhaustive(a, d));
    }
    hnf_sweep(a, d)
}

fn exhaustive(a: &IntMatrix, d: usize) -> ProbeOutcome {
    let mut values = DetSet::new();
    let mut zero: Option<Vec<usize>> = None;
    for rows in Combinations::new(a.rows(), a.cols()) {
        let v = abs_minor(a, &rows);
        if v.is_zero() && zero.is_none() {
            zero = Some(rows.clone());
        }
        values.insert(v, rows);
        if values.len() > d {
            return ProbeOutcome::AtLeast(values);
        }
    }
    match zero {
        Some(rows) => ProbeOutcome::DegeneracyWitness(rows),
        None => ProbeOutcome::DetSet(values),
    }
}

fn hnf_sweep(a: &IntMatrix, d: usize) -> Result<ProbeOutcome> {
    let profile = adapted_hnf(a, None)?;
    let p = &profile.permuted;
    let (m, n) = (p.rows(), p.cols());
    // Theta(i, j): minor on permuted rows 0..n-2 plus {i, j}
    let theta = |i: usize, j: usize| -> (BigInt, Vec<usize>) {
        let mut rows: Vec<usize> = (0..n - 2).collect();
        rows.push(i);
        rows.push(j);
        let orig = profile.original_rows(&rows);
        (abs_minor(a, &orig), orig)
    };

    let mut found = DetSet::new();
    let pivot = n - 2;
    for j in n - 1..m {
        let (v, rows) = theta(pivot, j);
        if v.is_zero() {
            return Ok(ProbeOutcome::DegeneracyWitness(rows));
        }
        found.insert(v, rows);
        if found.len() > d {
            return Ok(ProbeOutcome::AtLeast(found));
        }
    }

    let mut bins: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for j in n - 1..m {
        bins.entry(p.get(j, n - 1)).or_default().push(j);
    }
    for members in bins.values().filter(|b| b.len() > 2 * d + 1) {
        let (&first, rest) = members.split_first().expect("nonempty bin");
        let mut seen: BTreeMap<&BigInt, usize> = BTreeMap::new();
        for &j in rest {
            if let Some(&other) = seen.get(p.get(j, n - 2)) {
                let (v, rows) = theta(other, j);
                if v.is_zero() {
                    return Ok(ProbeOutcome::DegeneracyWitness(rows));
                }
            }
            seen.insert(p.get(j, n - 2), j);
            let (v, rows) = theta(first, j);
            if v.is_zero() {
                return Ok(ProbeOutcome::DegeneracyWitness(rows));
            }
            found.insert(v, rows);
            if found.len() > d {
                return Ok(ProbeOutcome::AtLeast(found));
            }
        }
    }
    Err(Error::Internal(
        "row bound exceeded without a probe certificate".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::det_set_bruteforce;

    fn set(v: &[i64]) -> std::collections::BTreeSet<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        let a = IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]);
        match nondegenerate_probe(&a, 3).unwrap() {
            ProbeOutcome::DetSet(d) => {
                assert_eq!(d.value_set(), set(&[1]));
                assert!(d.verify(&a));
            }
            other => panic!("{other:?}"),
        }

        let a = IntMatrix::from_rows(&[[1, 0], [0, 1], [0, 2]]);
        assert_eq!(
            nondegenerate_probe(&a, 3).unwrap(),
            ProbeOutcome::DegeneracyWitness(vec![1, 2])
        );

        let a = IntMatrix::from_rows(&[[1], [2], [3], [4], [5]]);
        match nondegenerate_probe(&a, 3).unwrap() {
            ProbeOutcome::AtLeast(d) => assert_eq!(d.value_set(), set(&[1, 2, 3, 4])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rank_deficiency_is_an_error() {
        let a = IntMatrix::from_rows(&[[1, 2], [2, 4], [3, 6]]);
        assert!(matches!(
            nondegenerate_probe(&a, 3),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn tall_inputs_use_the_sweep() {
        // 30 rows of [1, k]: every minor |k1 - k2| is nonzero but takes many values
        let rows: Vec<[i64; 2]> = (0..30).map(|k| [1, k]).collect();
        let a = IntMatrix::from_rows(&rows);
        match nondegenerate_probe(&a, 3).unwrap() {
            ProbeOutcome::AtLeast(d) => {
                assert_eq!(d.len(), 4);
                assert!(d.verify(&a));
            }
            other => panic!("{other:?}"),
        }

        // a repeated row forces a zero minor
        let mut rows: Vec<[i64; 2]> = (0..2).map(|k| [1, k]).collect();
        rows.extend(std::iter::repeat_n([1, 1], 28));
        let a = IntMatrix::from_rows(&rows);
        match nondegenerate_probe(&a, 3).unwrap() {
            ProbeOutcome::DegeneracyWitness(r) => assert!(abs_minor(&a, &r).is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tall_outcomes_match_oracle() {
        for seed in 0..40i64 {
            let rows: Vec<[i64; 3]> = (0..26)
                .map(|i| {
                    let x = (i * 7 + seed * 13) % 5 - 2;
                    let y = (i * i + seed) % 3;
                    [1, x, y + 1]
                })
                .collect();
            let a = IntMatrix::from_rows(&rows);
            if crate::linalg::rank(&a) < 3 {
                continue;
            }
            let oracle = det_set_bruteforce(&a, 1_000_000).unwrap();
            match nondegenerate_probe(&a, 3).unwrap() {
                ProbeOutcome::DetSet(d) => assert_eq!(d, oracle),
                ProbeOutcome::AtLeast(d) => {
                    assert_eq!(d.len(), 4);
                    assert!(d.verify(&a));
                }
                ProbeOutcome::DegeneracyWitness(r) => assert!(abs_minor(&a, &r).is_zero()),
            }
        }
    }
}
