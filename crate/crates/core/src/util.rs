use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Lexicographic k-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Smallest prime factor by trial division. Inputs here are subdeterminant
/// values of desk-scale matrices, so this stays cheap.
pub fn smallest_prime_factor(n: &BigInt) -> Option<BigInt> {
    let n = n.abs();
    if n <= BigInt::one() {
        return None;
    }
    let two = BigInt::from(2);
    if n.is_even() {
        return Some(two);
    }
    let mut p = BigInt::from(3);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            return Some(p);
        }
        p += &two;
    }
    Some(n)
}

/// Integer ceiling of the square root.
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}

pub fn to_u64_saturating(x: &BigInt) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}
