//! Permutations of `{1, ..., n}` stored as image tables.
//!
//! Points are 1-based everywhere in the public API. Products apply the left
//! factor first: `a.compose(&b)` maps `i` to `b(a(i))`. In cycle notation
//! `(1 2) * (2 3) = (1 3 2)`.
//!
//! Cycle notation is written `(1 2 3)(4 5)`, the identity is `()`. Parsing
//! ignores whitespace and accepts commas between points; printing is
//! canonical (each cycle starts at its smallest point, cycles ordered by that
//! point, fixed points omitted).

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based image table; lexicographic order on it is the element order
    // used by every sorted listing.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image table {:?} is not a bijection",
                    images
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::PointOutOfRange { point: pt, degree });
                }
                if std::mem::replace(&mut used[pt - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears twice"
                    )));
                }
            }
            for (k, &pt) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation into a permutation of the given degree.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        if max > degree {
            return Err(Error::PointOutOfRange { point: max, degree });
        }
        Permutation::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image table.
    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> Result<usize> {
        if point == 0 || point > self.degree() {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree(),
            });
        }
        Ok(self.images[point - 1] as usize + 1)
    }

    #[inline]
    pub(crate) fn image0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Product applying `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // x^g maps g(i) to g(x(i))
        let mut out = vec![0u32; self.degree()];
        for (i, &xi) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[xi as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(&x, &y)| other.images[x as usize] == self.images[y as usize])
    }

    /// Disjoint cycles of length at least 2, 1-based, in canonical order.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.extend(std::iter::repeat_n(1, self.fixed_point_count()));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i as u32 == j)
            .count()
    }

    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }

    /// True if the order is a power of `p` (the identity counts).
    pub fn is_p_element(&self, p: u64) -> bool {
        self.cycles()
            .iter()
            .all(|c| crate::arith::is_power_of(c.len() as u64, p))
    }

    /// True if every prime dividing the order lies in `primes`.
    pub fn is_pi_element(&self, primes: &[u64]) -> bool {
        self.cycles().iter().all(|c| {
            let mut m = c.len() as u64;
            for &p in primes {
                while m % p == 0 {
                    m /= p;
                }
            }
            m == 1
        })
    }

    /// Extends the permutation to a larger degree, fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        debug_assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] to get an error.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Degree is the largest point mentioned (at least 1).
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        Permutation::from_cycles(degree, &cycles)
    }
}

/// Parses `(a b c)(d e)` into 1-based cycles. Byte offsets in errors refer to
/// `text`.
pub(crate) fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    parse_cycles_at(text, 0)
}

pub(crate) fn parse_cycles_at(text: &str, base: usize) -> Result<Vec<Vec<usize>>> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(Error::syntax(base + i, "empty permutation; write () for the identity"));
    }
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(Error::syntax(base + i, "expected `(`"));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b',' && !cycle.is_empty() {
                i += 1;
                skip_ws(&mut i);
            }
            match bytes.get(i) {
                Some(b')') => {
                    i += 1;
                    break;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: usize = text[start..i]
                        .parse()
                        .map_err(|_| Error::syntax(base + start, "point too large"))?;
                    if n == 0 {
                        return Err(Error::syntax(base + start, "points are 1-based"));
                    }
                    if cycle.contains(&n) {
                        return Err(Error::syntax(base + start, format!("point {n} repeated in cycle")));
                    }
                    cycle.push(n);
                }
                Some(_) => return Err(Error::syntax(base + i, "expected a point or `)`")),
                None => return Err(Error::syntax(base + i, "unterminated cycle")),
            }
        }
        if cycle.len() >= 2 {
            cycles.push(cycle);
        }
        skip_ws(&mut i);
    }
    let mut seen = std::collections::HashSet::new();
    for c in &cycles {
        for &p in c {
            if !seen.insert(p) {
                return Err(Error::syntax(base, format!("point {p} appears in two cycles")));
            }
        }
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert!(p("(1 2)", 3).compose(&p("(1 2)", 3)).unwrap().is_identity());
        assert_eq!(p("(1 2 3)", 3).compose(&p("(1 2 3)", 3)).unwrap(), p("(1 3 2)", 3));
        // apply (1 2) first: 1->2->3, 3->3->2, 2->1->1
        assert_eq!(p("(1 2)", 3).compose(&p("(2 3)", 3)).unwrap(), p("(1 3 2)", 3));
        assert_eq!(
            p("(1 2)", 3).compose(&p("(1 2)", 4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn cycle_notation() {
        let x: Permutation = " ( 1, 2 ,3)(4 5) ".parse().unwrap();
        assert_eq!(x.degree(), 5);
        assert_eq!(x.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("(3 1 2)", 3).to_string(), "(1 2 3)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p("()", 4), Permutation::identity(4));
        assert_eq!(p("(5)", 5), Permutation::identity(5));
        assert!(matches!(Permutation::parse("(1 2", 3), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(Permutation::parse("(1 2)(2 3)", 3), Err(Error::Syntax { .. })));
        assert!(matches!(Permutation::parse("(0 1)", 3), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(Permutation::parse("x", 3), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(Permutation::parse("(1 7)", 3), Err(Error::PointOutOfRange { .. })));
        assert!(Permutation::parse("", 3).is_err());
    }

    #[test]
    fn element_properties() {
        let x = p("(1 2 3 4)(5 6)", 6);
        assert_eq!(x.order(), BigUint::from(4u32));
        assert!(x.is_even());
        assert!(x.is_p_element(2));
        assert!(!x.is_p_element(3));
        assert_eq!(x.cycle_type(), vec![4, 2]);
        assert_eq!(x.pow(4), Permutation::identity(6));
        assert_eq!(x.fixed_point_count(), 0);
        assert!(!p("(1 2 3)(4 5)", 5).is_p_element(2));
        assert!(p("(1 2 3)(4 5)", 5).is_pi_element(&[2, 3]));
        assert_eq!(x.apply(5).unwrap(), 6);
        assert!(x.apply(7).is_err());
    }

    #[test]
    fn conjugation() {
        let x = p("(1 2 3)", 4);
        let g = p("(3 4)", 4);
        assert_eq!(x.conjugate_by(&g), &(&g.inverse() * &x) * &g);
        assert_eq!(x.conjugate_by(&g), p("(1 2 4)", 4));
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (1usize..12).prop_flat_map(|n| {
            Just((0..n as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(x in arb_perm()) {
            let back = Permutation::parse(&x.to_string(), x.degree()).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert!(x.compose(&x.inverse()).unwrap().is_identity());
        }

        #[test]
        fn composition_is_associative(v in (2usize..9).prop_flat_map(|n| {
            let one = Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle();
            (one.clone(), one.clone(), one)
        })) {
            let (a, b, c) = (
                Permutation::from_images(v.0).unwrap(),
                Permutation::from_images(v.1).unwrap(),
                Permutation::from_images(v.2).unwrap(),
            );
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
