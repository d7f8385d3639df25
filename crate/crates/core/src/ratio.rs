//! Exact rationals for fixed point ratios, Sylow ratios and probabilities.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::new(num.into(), den.into()))
    }

    pub fn from_biguint(num: &BigUint, den: &BigUint) -> Self {
        Self::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for ExactRatio {
    fn from(r: BigRational) -> Self {
        ExactRatio(r)
    }
}

macro_rules! ratio_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&ExactRatio> for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl std::ops::$trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio(std::ops::$trait::$method(self.0, rhs.0))
            }
        }
    };
}

ratio_binop!(Add, add);
ratio_binop!(Sub, sub);
ratio_binop!(Mul, mul);
ratio_binop!(Div, div);

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    /// Accepts `a/b` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::syntax(0, format!("bad ratio `{s}`"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(ExactRatio::new(n, d))
    }
}

/// Integers serialize as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise.
pub fn bigint_json(n: &BigInt) -> serde_json::Value {
    if let Some(v) = n.to_i64() {
        serde_json::Value::from(v)
    } else if let Some(v) = n.to_u64() {
        serde_json::Value::from(v)
    } else {
        serde_json::Value::String(n.to_string())
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExactRatio", 2)?;
        st.serialize_field("num", &bigint_json(self.numer()))?;
        st.serialize_field("den", &bigint_json(self.denom()))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = ExactRatio::new(4, 10);
        assert_eq!(r, ExactRatio::new(2, 5));
        assert_eq!(r.to_string(), "2/5");
        assert_eq!(ExactRatio::new(-3, -6).to_string(), "1/2");
        assert_eq!(ExactRatio::new(6, 3).to_string(), "2");
        assert_eq!("10/16".parse::<ExactRatio>().unwrap(), ExactRatio::new(5, 8));
        assert!("1/0".parse::<ExactRatio>().is_err());
        assert!(ExactRatio::new(1, 3) < ExactRatio::new(2, 5));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(ExactRatio::new(4, 10)).unwrap();
        assert_eq!(v, serde_json::json!({"num": 2, "den": 5}));
    }
}
