//! Small finite fields by table lookup.
//!
//! An element of `GF(p^k)` is stored as the integer whose base-`p` digits are
//! its polynomial coefficients, constant term first. Each nonprime field uses
//! a fixed monic irreducible modulus.

use crate::error::{Error, Result};

/// Field sizes with a fixed construction.
pub const SUPPORTED: [u64; 11] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 32];

/// Modulus coefficients, constant term first, leading 1 included.
fn modulus(p: u64, k: u32) -> Vec<u64> {
    match (p, k) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (2, 5) => vec![1, 0, 1, 0, 0, 1],
        (3, 2) => vec![2, 2, 1],
        _ => unreachable!("only supported sizes reach here"),
    }
}

#[derive(Debug, Clone)]
pub struct SmallField {
    p: u64,
    k: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl SmallField {
    pub fn new(q: u64) -> Result<Self> {
        if !SUPPORTED.contains(&q) {
            return Err(Error::UnsupportedField(q));
        }
        let p = crate::arith::prime_divisors(&q.into())[0];
        let k = (1..).find(|&k| p.pow(k) == q).unwrap();
        let modulus = modulus(p, k);
        let q = q as usize;
        let digits = |x: usize| -> Vec<u64> {
            let mut x = x as u64;
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |d: &[u64]| -> u16 { d.iter().rev().fold(0, |acc, &c| acc * p + c) as u16 };

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);

                let mut prod = vec![0u64; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce by the monic modulus from the top down
                for top in (k as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    for (i, m) in modulus.iter().enumerate() {
                        let at = top - k as usize + i;
                        prod[at] = (prod[at] + (p - c) * m) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..k as usize]);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u16
                }
            })
            .collect();
        Ok(SmallField {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut result = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    /// The elements `p^i`, an `F_p`-basis.
    pub fn prime_basis(&self) -> Vec<usize> {
        (0..self.k).map(|i| (self.p as usize).pow(i)).collect()
    }

    /// Smallest element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> usize {
        (1..self.q)
            .find(|&a| self.multiplicative_order(a) == self.q - 1)
            .expect("multiplicative group is cyclic")
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        assert_ne!(a, 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_exhaustively() {
        for q in SUPPORTED {
            let f = SmallField::new(q).unwrap();
            let n = f.order();
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0, "zero divisor in GF({q})");
                    }
                    for c in 0..n {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        for q in SUPPORTED {
            let f = SmallField::new(q).unwrap();
            let images: std::collections::HashSet<usize> = (0..f.order()).map(|a| f.frobenius(a)).collect();
            assert_eq!(images.len(), f.order());
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
                // a^q = a
                assert_eq!(f.pow(a, q), a);
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in SUPPORTED {
            let f = SmallField::new(q).unwrap();
            let g = f.primitive_element();
            let powers: std::collections::HashSet<usize> = (0..q - 1).map(|e| f.pow(g, e)).collect();
            assert_eq!(powers.len() as u64, q - 1);
        }
    }

    #[test]
    fn unsupported_sizes() {
        for q in [0, 1, 6, 10, 25, 27, 64] {
            assert!(matches!(SmallField::new(q), Err(Error::UnsupportedField(_))));
        }
        let f = SmallField::new(8).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!((f.characteristic(), f.degree()), (2, 3));
        assert_eq!(f.prime_basis(), vec![1, 2, 4]);
    }
}
