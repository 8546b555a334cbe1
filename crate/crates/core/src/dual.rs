//! Dual integers `a + αε` with `ε² = 0` over arbitrary-precision integers.
//!
//! The canonical text form is `a` when the shadow vanishes and `a+αe` or
//! `a-|α|e` otherwise, with ASCII `e` standing for ε. The JSON form is
//! `{"a": "<decimal>", "alpha": "<decimal>"}` with both parts as strings.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A dual integer `real + shadow·ε`.
///
/// Negative parts are allowed; positivity is a property checked on triples
/// and tree nodes, not enforced here.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DualInt {
    pub real: BigInt,
    pub shadow: BigInt,
}

impl DualInt {
    pub fn new(real: impl Into<BigInt>, shadow: impl Into<BigInt>) -> Self {
        DualInt {
            real: real.into(),
            shadow: shadow.into(),
        }
    }

    pub fn from_real(real: impl Into<BigInt>) -> Self {
        DualInt::new(real, 0)
    }

    /// `1 + shadow·ε`, the shape of every entry of a fundamental triple.
    pub fn unit_with_shadow(shadow: impl Into<BigInt>) -> Self {
        DualInt::new(1, shadow)
    }

    pub fn zero() -> Self {
        DualInt::default()
    }

    pub fn one() -> Self {
        DualInt::from_real(1)
    }

    pub fn is_zero(&self) -> bool {
        self.real.is_zero() && self.shadow.is_zero()
    }

    /// Both parts strictly positive.
    pub fn is_positive(&self) -> bool {
        self.real.is_positive() && self.shadow.is_positive()
    }

    /// `a² + 2aα ε`.
    pub fn square(&self) -> DualInt {
        DualInt {
            real: &self.real * &self.real,
            shadow: (&self.real * &self.shadow) << 1,
        }
    }

    /// Multiply both parts by an integer.
    pub fn scale(&self, k: &BigInt) -> DualInt {
        DualInt {
            real: &self.real * k,
            shadow: &self.shadow * k,
        }
    }

    /// Exact quotient `self / den`.
    ///
    /// The real part is `a / d` and the shadow is `(α − q·δ) / d`; both
    /// divisions must leave no remainder.
    pub fn exact_div(&self, den: &DualInt) -> Result<DualInt> {
        if den.real.is_zero() {
            return Err(Error::ZeroRealPart);
        }
        let real = exact_int_div(&self.real, &den.real)?;
        let residue = &self.shadow - &real * &den.shadow;
        let shadow = exact_int_div(&residue, &den.real)?;
        Ok(DualInt { real, shadow })
    }
}

fn exact_int_div(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NotDivisible {
            numerator: num.to_string(),
            denominator: den.to_string(),
        })
    }
}

impl From<i64> for DualInt {
    fn from(real: i64) -> Self {
        DualInt::from_real(real)
    }
}

impl From<BigInt> for DualInt {
    fn from(real: BigInt) -> Self {
        DualInt::from_real(real)
    }
}

impl<'a> Add<&'a DualInt> for &'a DualInt {
    type Output = DualInt;
    fn add(self, rhs: &'a DualInt) -> DualInt {
        DualInt {
            real: &self.real + &rhs.real,
            shadow: &self.shadow + &rhs.shadow,
        }
    }
}

impl<'a> Sub<&'a DualInt> for &'a DualInt {
    type Output = DualInt;
    fn sub(self, rhs: &'a DualInt) -> DualInt {
        DualInt {
            real: &self.real - &rhs.real,
            shadow: &self.shadow - &rhs.shadow,
        }
    }
}

impl<'a> Mul<&'a DualInt> for &'a DualInt {
    type Output = DualInt;
    fn mul(self, rhs: &'a DualInt) -> DualInt {
        DualInt {
            real: &self.real * &rhs.real,
            shadow: &self.real * &rhs.shadow + &rhs.real * &self.shadow,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<DualInt> for DualInt {
            type Output = DualInt;
            fn $method(self, rhs: DualInt) -> DualInt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a DualInt> for DualInt {
            type Output = DualInt;
            fn $method(self, rhs: &'a DualInt) -> DualInt {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<DualInt> for &'a DualInt {
            type Output = DualInt;
            fn $method(self, rhs: DualInt) -> DualInt {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&DualInt> for DualInt {
    fn add_assign(&mut self, rhs: &DualInt) {
        self.real += &rhs.real;
        self.shadow += &rhs.shadow;
    }
}

impl Neg for DualInt {
    type Output = DualInt;
    fn neg(self) -> DualInt {
        DualInt {
            real: -self.real,
            shadow: -self.shadow,
        }
    }
}

impl Neg for &DualInt {
    type Output = DualInt;
    fn neg(self) -> DualInt {
        -self.clone()
    }
}

impl std::iter::Sum for DualInt {
    fn sum<I: Iterator<Item = DualInt>>(iter: I) -> DualInt {
        iter.fold(DualInt::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for DualInt {
    fn product<I: Iterator<Item = DualInt>>(iter: I) -> DualInt {
        iter.fold(DualInt::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for DualInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shadow.is_zero() {
            write!(f, "{}", self.real)
        } else if self.shadow.is_negative() {
            write!(f, "{}-{}e", self.real, -&self.shadow)
        } else {
            write!(f, "{}+{}e", self.real, self.shadow)
        }
    }
}

impl FromStr for DualInt {
    type Err = Error;

    /// Accepts the canonical form, with optional whitespace, and a bare `e`
    /// for a unit shadow (`1+e`).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid dual integer {s:?}"));
        if compact.is_empty() {
            return Err(bad());
        }
        let Some(body) = compact.strip_suffix(['e', 'ε']) else {
            let real = compact.parse::<BigInt>().map_err(|_| bad())?;
            return Ok(DualInt::from_real(real));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let (real_str, shadow_str) = body.split_at(split);
        let real = real_str.parse::<BigInt>().map_err(|_| bad())?;
        let shadow = match shadow_str {
            "+" => BigInt::one(),
            "-" => -BigInt::one(),
            other => other
                .strip_prefix('+')
                .unwrap_or(other)
                .parse::<BigInt>()
                .map_err(|_| bad())?,
        };
        Ok(DualInt { real, shadow })
    }
}

#[derive(Serialize, Deserialize)]
struct DualIntJson {
    a: String,
    alpha: String,
}

impl Serialize for DualInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DualIntJson {
            a: self.real.to_string(),
            alpha: self.shadow.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = DualIntJson::deserialize(deserializer)?;
        let real = raw.a.parse().map_err(serde::de::Error::custom)?;
        let shadow = raw.alpha.parse().map_err(serde::de::Error::custom)?;
        Ok(DualInt { real, shadow })
    }
}
