//! Exact rational numbers.
//!
//! [`Rational`] is a thin newtype over [`num_rational::BigRational`]. The
//! backing type keeps every value in lowest terms with a positive
//! denominator; the wrapper adds checked division, the `p/q` text grammar and
//! an explicitly approximate float rendering for human-facing output.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ArithError;

/// An arbitrary-precision fraction in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Shorthand for small literals. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("zero denominator in Rational::frac")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// `1/self`, or an error for zero.
    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// `self / rhs`, or an error when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Approximate decimal value. For display only.
    pub fn to_f64_approx(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `"~1.234567"` style rendering, marked approximate.
    pub fn approx_string(&self) -> String {
        format!("~{:.9}", self.to_f64_approx())
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Accepts `p` or `p/q` with optional sign on `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) if d.starts_with(['+', '-']) => return Err(bad()),
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        Rational::new(num, den)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division through the operator panics on zero like the integer types do;
// fallible callers use `checked_div`.
impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes() {
        let x = Rational::frac(2, 4);
        assert_eq!(x.to_string(), "1/2");
        assert_eq!(Rational::frac(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::frac(4, 2).to_string(), "2");
    }

    #[test]
    fn basic_ops() {
        assert_eq!(r("1/3") + r("1/6"), r("1/2"));
        assert_eq!(r("1/2") - r("3/4"), r("-1/4"));
        assert_eq!(r("2/3") * r("9/4"), r("3/2"));
        assert_eq!(r("2/3") / r("4/9"), r("3/2"));
        // parallel rule, symmetric unit case
        let parallel = (Rational::one().recip().unwrap() + Rational::one().recip().unwrap()).recip().unwrap();
        assert_eq!(parallel, r("1/2"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rational::zero().recip(), Err(ArithError::DivisionByZero));
        assert_eq!(r("1").checked_div(&Rational::zero()), Err(ArithError::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(r("7"), Rational::from_integer(7));
        assert_eq!(r("-10/4"), Rational::frac(-5, 2));
        assert_eq!(r(" 3/9 "), Rational::frac(1, 3));
        for bad in ["", "1/", "/2", "a/b", "1/-2", "1.5", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn approx_is_labeled() {
        assert!(Rational::frac(1, 3).approx_string().starts_with('~'));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| Rational::frac(p, q))
    }

    proptest! {
        #[test]
        fn renormalize_idempotent(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = Rational::frac(p, q);
            let again = Rational::new(x.numer().clone(), x.denom().clone()).unwrap();
            prop_assert_eq!(&x, &again);
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert!(num_integer::Integer::gcd(x.numer(), x.denom()).is_one());
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }

        #[test]
        fn ratio_times_inverse(a in small(), b in small()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ab = a.checked_div(&b).unwrap();
            let ba = b.checked_div(&a).unwrap();
            prop_assert_eq!(ab * ba, Rational::one());
        }

        #[test]
        fn order_matches_cross_multiplication(
            pairs in proptest::collection::vec((small(), small()), 1000..=1000)
        ) {
            for (a, b) in pairs {
                let lhs = a.numer() * b.denom();
                let rhs = b.numer() * a.denom();
                prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
            }
        }
    }
}
