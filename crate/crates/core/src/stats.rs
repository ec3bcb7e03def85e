//! Eulerian numbers, the Möbius function and the binary Lyndon word count.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// Coefficients `A(n,0) .. A(n,n-1)` of the Eulerian polynomial: `A(n,k)` is
/// the number of permutations of degree `n` with `k` descents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerianRow {
    pub n: usize,
    #[serde(serialize_with = "decimal_strings")]
    pub coefficients: Vec<BigUint>,
}

fn decimal_strings<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(BigUint::to_string))
}

impl EulerianRow {
    pub fn sum(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }
}

/// Row `n` from `A(n,k) = (n-k) A(n-1,k-1) + (k+1) A(n-1,k)`, with `A(1) = (1)`.
pub fn eulerian_row(n: usize) -> EulerianRow {
    assert!(n >= 1, "n must be positive");
    let mut row = vec![BigUint::from(1u32)];
    for m in 2..=n {
        let mut next = Vec::with_capacity(m);
        for k in 0..m {
            let mut v = BigUint::zero();
            if k >= 1 {
                v += BigUint::from(m - k) * &row[k - 1];
            }
            if k < row.len() {
                v += BigUint::from(k + 1) * &row[k];
            }
            next.push(v);
        }
        row = next;
    }
    EulerianRow { n, coefficients: row }
}

/// Möbius function by trial division.
pub fn mobius(m: u64) -> i8 {
    assert!(m >= 1, "mobius is defined on positive integers");
    let mut m = m;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Number of binary Lyndon words of length `n`:
/// `(1/n) * sum over d | n of mobius(n/d) * 2^d`.
pub fn lyndon_count(n: usize) -> BigUint {
    assert!(n >= 1, "n must be positive");
    let mut total = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let term = BigInt::from(1) << d;
        match mobius((n / d) as u64) {
            1 => total += term,
            -1 => total -= term,
            _ => {}
        }
    }
    let n_big = BigInt::from(n);
    assert!((&total % &n_big).is_zero(), "Lyndon sum not divisible by n");
    let q = total / n_big;
    assert!(!q.is_negative());
    q.to_biguint().expect("non-negative")
}
