//! Exact rational arithmetic with a machine-word fast path.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// An exact rational number.
///
/// Values whose reduced numerator and denominator both fit in an `i64` are
/// stored inline; anything larger falls back to a boxed [`BigRational`].
/// Both representations keep the denominator positive and the fraction in
/// lowest terms, and a value that fits inline is never stored boxed, so
/// derived equality compares values exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct Rat(Repr);

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    /// Builds `num/den` in lowest terms.  Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "denominator is zero");
        Self::from_i128(num as i128, den as i128)
    }

    /// The integer `n` as a rational.
    pub fn integer(n: i64) -> Self {
        Rat(Repr::Small(n, 1))
    }

    pub fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }

    /// Reduces `num/den` and picks the smallest representation that fits.
    /// The caller guarantees `den != 0`.
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Rat(Repr::Small(0, 1));
        }
        let g = num_integer::gcd(num.unsigned_abs(), den.unsigned_abs());
        let num = num / (g as i128);
        let den = den / (g as i128);
        if num >= i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
            Rat(Repr::Small(num as i64, den as i64))
        } else {
            Rat(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))))
        }
    }

    /// Stores a reduced `BigRational`, demoting it when it fits inline.
    pub(crate) fn from_big(value: BigRational) -> Self {
        if let (Some(num), Some(den)) = (value.numer().to_i64(), value.denom().to_i64()) {
            Rat(Repr::Small(num, den))
        } else {
            Rat(Repr::Big(Box::new(value)))
        }
    }

    /// The value as a `BigRational`, for interop and reference checks.
    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.numer().sign() == num_bigint::Sign::Minus,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// The multiplicative inverse.  Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    #[cfg(test)]
    fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::integer(n)
    }
}

fn add_impl(lhs: &Rat, rhs: &Rat) -> Rat {
    match (&lhs.0, &rhs.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
            Rat::from_i128(n1 * d2 + n2 * d1, d1 * d2)
        }
        _ => Rat::from_big(lhs.to_big() + rhs.to_big()),
    }
}

fn sub_impl(lhs: &Rat, rhs: &Rat) -> Rat {
    match (&lhs.0, &rhs.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
            Rat::from_i128(n1 * d2 - n2 * d1, d1 * d2)
        }
        _ => Rat::from_big(lhs.to_big() - rhs.to_big()),
    }
}

fn mul_impl(lhs: &Rat, rhs: &Rat) -> Rat {
    match (&lhs.0, &rhs.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            Rat::from_i128(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
        }
        _ => Rat::from_big(lhs.to_big() * rhs.to_big()),
    }
}

fn div_impl(lhs: &Rat, rhs: &Rat) -> Rat {
    assert!(!rhs.is_zero(), "division by zero");
    match (&lhs.0, &rhs.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            Rat::from_i128(*n1 as i128 * *d2 as i128, *d1 as i128 * *n2 as i128)
        }
        _ => Rat::from_big(lhs.to_big() / rhs.to_big()),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $func:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $func(self, rhs)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $func(&self, &rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $func(&self, rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $func(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = add_impl(self, rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = sub_impl(self, rhs);
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = mul_impl(self, rhs);
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat::from_i128(-(*n as i128), *d as i128),
            Repr::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                let lhs = *n1 as i128 * *d2 as i128;
                let rhs = *n2 as i128 * *d1 as i128;
                lhs.cmp(&rhs)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_str
            .parse()
            .map_err(|_| format!("invalid numerator `{num_str}`"))?;
        let den: BigInt = match den_str {
            Some(d) => d
                .parse()
                .map_err(|_| format!("invalid denominator `{d}`"))?,
            None => BigInt::from(1),
        };
        if den == BigInt::from(0) {
            return Err("denominator is zero".to_string());
        }
        Ok(Rat::from_big(BigRational::new(num, den)))
    }
}
