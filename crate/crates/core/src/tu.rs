//! Total unimodularity by the Ghouila-Houri criterion.
//!
//! A matrix with entries in {0,±1} is TU iff every subset of its rows can be
//! signed so that the signed row sum lies in {0,±1}^n. The test runs over the
//! smaller dimension (TU is closed under transposition), so it is exponential
//! in min(m, n) and meant for desk-scale inputs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::linalg::determinant;
use crate::matrix::IntMatrix;
use crate::util::Combinations;

/// A square submatrix with |det| >= 2. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuCertificate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: BigInt,
}

impl TuCertificate {
    pub fn verify(&self, m: &IntMatrix) -> bool {
        self.rows.len() == self.cols.len()
            && self.det.abs() >= BigInt::from(2)
            && determinant(&m.submatrix(&self.rows, &self.cols)).ok().as_ref() == Some(&self.det)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuVerdict {
    pub is_tu: bool,
    pub certificate: Option<TuCertificate>,
}

pub fn test_tu(m: &IntMatrix) -> TuVerdict {
    if let Some(cert) = large_entry(m) {
        return TuVerdict {
            is_tu: false,
            certificate: Some(cert),
        };
    }
    let small: Vec<Vec<i8>> = if m.rows() <= m.cols() {
        to_small(m)
    } else {
        to_small(&m.transpose())
    };
    if ghouila_houri(&small) {
        return TuVerdict {
            is_tu: true,
            certificate: None,
        };
    }
    TuVerdict {
        is_tu: false,
        certificate: Some(find_violator(m)),
    }
}

pub fn is_tu(m: &IntMatrix) -> bool {
    test_tu(m).is_tu
}

fn large_entry(m: &IntMatrix) -> Option<TuCertificate> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v.abs() >= BigInt::from(2) {
                return Some(TuCertificate {
                    rows: vec![i],
                    cols: vec![j],
                    det: v.clone(),
                });
            }
        }
    }
    None
}

fn to_small(m: &IntMatrix) -> Vec<Vec<i8>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i8().unwrap_or(0)).collect())
        .collect()
}

/// True iff every row subset admits an equitable signing.
fn ghouila_houri(rows: &[Vec<i8>]) -> bool {
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let n = rows[0].len();
    for mask in 1u64..(1u64 << k) {
        let subset: Vec<&[i8]> = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| rows[i].as_slice())
            .collect();
        // remaining[t][j] = nonzeros in column j among subset[t..]
        let mut remaining = vec![vec![0i32; n]; subset.len() + 1];
        for t in (0..subset.len()).rev() {
            for j in 0..n {
                remaining[t][j] = remaining[t + 1][j] + i32::from(subset[t][j] != 0);
            }
        }
        let mut sum = vec![0i32; n];
        if !signable(&subset, &remaining, 0, &mut sum) {
            return false;
        }
    }
    true
}

fn signable(subset: &[&[i8]], remaining: &[Vec<i32>], t: usize, sum: &mut [i32]) -> bool {
    if t == subset.len() {
        return sum.iter().all(|s| s.abs() <= 1);
    }
    if sum
        .iter()
        .zip(&remaining[t])
        .any(|(s, r)| s.abs() - r > 1)
    {
        return false;
    }
    // the first row's sign is fixed; flipping every sign preserves validity
    let signs: &[i32] = if t == 0 { &[1] } else { &[1, -1] };
    for &s in signs {
        for (x, &e) in sum.iter_mut().zip(subset[t]) {
            *x += s * i32::from(e);
        }
        let ok = signable(subset, remaining, t + 1, sum);
        for (x, &e) in sum.iter_mut().zip(subset[t]) {
            *x -= s * i32::from(e);
        }
        if ok {
            return true;
        }
    }
    false
}

/// Smallest square submatrix with |det| >= 2, lexicographic in (rows, cols)
/// within each size.
fn find_violator(m: &IntMatrix) -> TuCertificate {
    for size in 1..=m.rows().min(m.cols()) {
        for rows in Combinations::new(m.rows(), size) {
            for cols in Combinations::new(m.cols(), size) {
                let det = determinant(&m.submatrix(&rows, &cols)).expect("square");
                if det.abs() >= BigInt::from(2) {
                    return TuCertificate { rows, cols, det };
                }
            }
        }
    }
    unreachable!("Ghouila-Houri failure implies a violating minor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive reference: every square minor in {0,±1}.
    fn tu_by_minors(m: &IntMatrix) -> bool {
        for size in 1..=m.rows().min(m.cols()) {
            for rows in Combinations::new(m.rows(), size) {
                for cols in Combinations::new(m.cols(), size) {
                    if determinant(&m.submatrix(&rows, &cols)).unwrap().abs() > BigInt::from(1) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn examples() {
        assert!(test_tu(&IntMatrix::identity(4)).is_tu);
        let v = test_tu(&IntMatrix::from_rows(&[[1, 1], [-1, 1]]));
        assert!(!v.is_tu);
        let c = v.certificate.unwrap();
        assert_eq!((c.rows.clone(), c.cols.clone()), (vec![0, 1], vec![0, 1]));
        assert_eq!(c.det, BigInt::from(2));
        assert!(test_tu(&IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]])).is_tu);
    }

    #[test]
    fn large_entry_certificate() {
        let m = IntMatrix::from_rows(&[[1, 0], [0, -3]]);
        let v = test_tu(&m);
        let c = v.certificate.unwrap();
        assert_eq!((c.rows, c.cols, c.det), (vec![1], vec![1], BigInt::from(-3)));
    }

    #[test]
    fn odd_cycle_is_not_tu() {
        let m = IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]);
        let v = test_tu(&m);
        assert!(!v.is_tu);
        let c = v.certificate.unwrap();
        assert!(c.verify(&m));
        assert_eq!(c.det.abs(), BigInt::from(2));
    }

    #[test]
    fn tall_and_wide_agree() {
        let m = IntMatrix::from_rows(&[[1, 0], [1, 1], [0, 1], [1, -1]]);
        assert_eq!(test_tu(&m).is_tu, tu_by_minors(&m));
        assert_eq!(test_tu(&m.transpose()).is_tu, tu_by_minors(&m));
    }

    proptest! {
        #[test]
        fn agrees_with_minor_enumeration(
            r in 1usize..=6,
            c in 1usize..=6,
            seed in proptest::collection::vec(-1i64..=1, 36)
        ) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| seed[i * 6..i * 6 + c].to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            let v = test_tu(&m);
            prop_assert_eq!(v.is_tu, tu_by_minors(&m));
            if let Some(cert) = v.certificate {
                prop_assert!(cert.verify(&m));
                prop_assert_eq!(cert.det.abs(), BigInt::from(2));
            }
        }
    }
}
