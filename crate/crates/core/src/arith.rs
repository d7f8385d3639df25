//! Integer helpers: primality, prime parts, p-adic digits, binomials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut d = 2u64;
    while !m.is_one() && !m.is_zero() {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            // what remains is prime; it fits since all inputs are group orders
            // with small prime factors
            out.push(u64::try_from(&m).expect("prime factor exceeds u64"));
            break;
        }
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += 1;
    }
    out
}

/// The largest power of `p` dividing `n` (the p-part `|n|_p`).
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let bp = BigUint::from(p);
    let mut m = n.clone();
    let mut part = BigUint::one();
    if m.is_zero() {
        return part;
    }
    while (&m % &bp).is_zero() {
        m /= &bp;
        part *= &bp;
    }
    part
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    let mut m = n;
    while m > 1 && m % p == 0 {
        m /= p;
    }
    m == 1
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Base-`p` digits of a positive integer, most significant digit first:
/// `n = a_f p^f + ... + a_1 p + a_0` with `a_f > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicProfile {
    prime: u64,
    /// `digits[i]` is the coefficient of `p^i`.
    digits: Vec<u64>,
}

impl PadicProfile {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        check_prime(p)?;
        if n == 0 {
            return Err(Error::OutOfDomain("p-adic profile of 0".into()));
        }
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push(m % p);
            m /= p;
        }
        Ok(PadicProfile { prime: p, digits })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Index `f` of the leading digit.
    pub fn top(&self) -> usize {
        self.digits.len() - 1
    }

    /// Coefficient of `p^i`; zero beyond the leading digit.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Digits from `a_0` upward.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.prime + d)
    }

    /// `a_1 + a_2 + ... + a_f`.
    pub fn upper_digit_sum(&self) -> u64 {
        self.digits.iter().skip(1).sum()
    }
}
