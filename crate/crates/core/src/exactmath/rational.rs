use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RatNum(BigRational);

impl RatNum {
    pub fn new(numer: i64, denom: i64) -> Result<Self, ExactError> {
        if denom == 0 {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatNum(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatNum(BigRational::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        RatNum(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        RatNum(BigRational::zero())
    }

    pub fn one() -> Self {
        RatNum(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatNum(self.0.recip()))
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = RatNum::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for RatNum {
    fn from(n: i64) -> Self {
        RatNum::integer(n)
    }
}

impl From<BigInt> for RatNum {
    fn from(n: BigInt) -> Self {
        RatNum(BigRational::from_integer(n))
    }
}

impl From<BigRational> for RatNum {
    fn from(q: BigRational) -> Self {
        RatNum(q)
    }
}

impl fmt::Display for RatNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for RatNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatNum {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ExactError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => RatNum::from_bigints(parse(n)?, parse(d)?),
            None => Ok(RatNum::from(parse(s)?)),
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a RatNum>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&RatNum> for &RatNum {
            type Output = RatNum;
            fn $method(self, rhs: &RatNum) -> RatNum {
                RatNum((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<RatNum> for RatNum {
            type Output = RatNum;
            fn $method(self, rhs: RatNum) -> RatNum {
                RatNum(self.0.$method(rhs.0))
            }
        }
        impl $trait<&RatNum> for RatNum {
            type Output = RatNum;
            fn $method(self, rhs: &RatNum) -> RatNum {
                RatNum(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&RatNum> for &RatNum {
    type Output = RatNum;

    /// Panics on a zero divisor; use [`RatNum::recip`] for a checked variant.
    fn div(self, rhs: &RatNum) -> RatNum {
        assert!(!rhs.is_zero(), "rational division by zero");
        RatNum(&self.0 / &rhs.0)
    }
}

impl Neg for RatNum {
    type Output = RatNum;
    fn neg(self) -> RatNum {
        RatNum(-self.0)
    }
}

impl Neg for &RatNum {
    type Output = RatNum;
    fn neg(self) -> RatNum {
        RatNum(-&self.0)
    }
}

impl AddAssign<&RatNum> for RatNum {
    fn add_assign(&mut self, rhs: &RatNum) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&RatNum> for RatNum {
    fn sub_assign(&mut self, rhs: &RatNum) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&RatNum> for RatNum {
    fn mul_assign(&mut self, rhs: &RatNum) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for RatNum {
    fn sum<I: Iterator<Item = RatNum>>(iter: I) -> Self {
        iter.fold(RatNum::zero(), |acc, x| acc + x)
    }
}

impl serde::Serialize for RatNum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
