use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{ExactError, RatNum};

/// An element `a + b·μ` of Q(μ), where μ = e^{iπ/3} satisfies μ² = μ − 1.
///
/// The pair `(a, b)` is the unique coordinate vector in the basis {1, μ}, so
/// derived equality and ordering are exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CycloNum {
    pub a: RatNum,
    pub b: RatNum,
}

impl CycloNum {
    pub fn new(a: RatNum, b: RatNum) -> Self {
        CycloNum { a, b }
    }

    pub fn zero() -> Self {
        CycloNum::default()
    }

    pub fn one() -> Self {
        CycloNum::rational(RatNum::one())
    }

    pub fn mu() -> Self {
        CycloNum::new(RatNum::zero(), RatNum::one())
    }

    pub fn rational(a: RatNum) -> Self {
        CycloNum::new(a, RatNum::zero())
    }

    pub fn integer(n: i64) -> Self {
        CycloNum::rational(RatNum::integer(n))
    }

    /// `a + b·μ` for integers `a`, `b`.
    pub fn from_ints(a: i64, b: i64) -> Self {
        CycloNum::new(RatNum::integer(a), RatNum::integer(b))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == RatNum::one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation, the automorphism μ ↦ 1 − μ.
    pub fn conj(&self) -> Self {
        CycloNum::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `x · conj(x) = a² + ab + b²`, always rational and ≥ 0.
    pub fn norm(&self) -> RatNum {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm().recip()?;
        let c = self.conj();
        Ok(CycloNum::new(&c.a * &n, &c.b * &n))
    }

    pub fn checked_div(&self, rhs: &CycloNum) -> Result<Self, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, q: &RatNum) -> Self {
        CycloNum::new(&self.a * q, &self.b * q)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        CycloNum::integer(n)
    }
}

impl From<RatNum> for CycloNum {
    fn from(q: RatNum) -> Self {
        CycloNum::rational(q)
    }
}

impl Add<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        CycloNum::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        &self + &rhs
    }
}

impl Sub<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        CycloNum::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        &self - &rhs
    }
}

impl Mul<&CycloNum> for &CycloNum {
    type Output = CycloNum;
    // (a + bμ)(c + dμ) = ac + (ad + bc)μ + bd(μ − 1)
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        let bd = &self.b * &rhs.b;
        CycloNum::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a + bd,
        )
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        &self * &rhs
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum::new(-&self.a, -&self.b)
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write_mu_term(f, &self.b, false),
            (false, false) => {
                write!(f, "{}", self.a)?;
                write_mu_term(f, &self.b, true)
            }
        }
    }
}

fn write_mu_term(f: &mut fmt::Formatter<'_>, b: &RatNum, signed: bool) -> fmt::Result {
    let one = RatNum::one();
    let sign = if b.is_negative() {
        "-"
    } else if signed {
        "+"
    } else {
        ""
    };
    let abs = if b.is_negative() { -b } else { b.clone() };
    if abs == one {
        write!(f, "{sign}mu")
    } else {
        write!(f, "{sign}{abs}*mu")
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> RatNum {
        RatNum::new(n, d).unwrap()
    }

    #[test]
    fn mu_squared_is_mu_minus_one() {
        let mu = CycloNum::mu();
        assert_eq!(&mu * &mu, CycloNum::from_ints(-1, 1));
    }

    #[test]
    fn one_is_identity() {
        let x = CycloNum::new(q(3, 7), q(-2, 5));
        assert_eq!(&CycloNum::one() * &x, x);
    }

    #[test]
    fn product_of_one_plus_mu_and_one_minus_mu() {
        let lhs = &CycloNum::from_ints(1, 1) * &CycloNum::from_ints(1, -1);
        assert_eq!(lhs, CycloNum::from_ints(2, -1));
    }

    #[test]
    fn inverses() {
        assert_eq!(
            CycloNum::integer(2).inv().unwrap(),
            CycloNum::rational(q(1, 2))
        );
        assert_eq!(CycloNum::mu().inv().unwrap(), CycloNum::from_ints(1, -1));
        assert_eq!(
            CycloNum::from_ints(1, 1).inv().unwrap(),
            CycloNum::new(q(2, 3), q(-1, 3))
        );
        assert_eq!(CycloNum::zero().inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        let r = CycloNum::rational(q(-4, 9));
        assert_eq!(r.conj(), r);
        assert_eq!(CycloNum::mu().conj(), CycloNum::from_ints(1, -1));
        // μ is a primitive 6th root of unity
        assert_eq!(CycloNum::mu().pow(6), CycloNum::one());
        assert_eq!(CycloNum::mu().pow(3), CycloNum::integer(-1));
    }

    #[test]
    fn display() {
        assert_eq!(CycloNum::from_ints(-1, 1).to_string(), "-1+mu");
        assert_eq!(CycloNum::new(q(1, 2), q(-3, 4)).to_string(), "1/2-3/4*mu");
        assert_eq!(CycloNum::from_ints(0, -1).to_string(), "-mu");
        assert_eq!(CycloNum::zero().to_string(), "0");
    }
}
