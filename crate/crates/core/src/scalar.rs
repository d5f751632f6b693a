//! Exact coefficient rings: Gaussian rationals and dual numbers over them.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Operations shared by every coefficient ring used for forms and operators.
///
/// Methods take references so that generic code never has to clone big
/// rationals just to combine them.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    /// Multiplicative inverse, `None` for non-units.
    fn inverse(&self) -> Option<Self>;
    /// Complex conjugation on every component.
    fn conj(&self) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_scalar(&Scalar::from(i))
    }

    fn scaled(&self, s: &Scalar) -> Self {
        self.times(&Self::from_scalar(s))
    }
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::real(ratio(num, den))
    }

    /// The Gaussian integer `re + im·i`.
    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    /// `iᵏ` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::gaussian(1, 0),
            1 => Scalar::gaussian(0, 1),
            2 => Scalar::gaussian(-1, 0),
            _ => Scalar::gaussian(0, -1),
        }
    }

    /// `(-1)ᵏ`.
    pub fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Scalar::from(1)
        } else {
            Scalar::from(-1)
        }
    }

    /// `k!` as an exact scalar, `None` for negative `k`.
    pub fn factorial(k: i64) -> Option<Self> {
        if k < 0 {
            return None;
        }
        let mut acc = BigInt::one();
        for f in 2..=k {
            acc *= f;
        }
        Some(Scalar::real(BigRational::from_integer(acc)))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let inv = rhs.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.times(&inv))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        <Scalar as Ring>::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::gaussian(v, 0)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::real(v)
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn one() -> Self {
        Scalar::from(1)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return <Scalar as Ring>::zero();
        }
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => Scalar::real(&self.re * &rhs.re),
            (true, false) => Scalar {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => Scalar {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => Scalar {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }

    fn negated(&self) -> Self {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Scalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    fn conj(&self) -> Self {
        self.conjugate()
    }

    fn scaled(&self, s: &Scalar) -> Self {
        self.times(s)
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Prints in the expression grammar: `3/2`, `-i`, `(1/2 + 3*i)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = BigRational::one();
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => {
                if self.im == one {
                    write!(f, "i")
                } else if self.im == -one {
                    write!(f, "-i")
                } else {
                    fmt_rational(&self.im, f)?;
                    write!(f, "*i")
                }
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rational(&self.re, f)?;
                let mag = self.im.abs();
                write!(f, " {} ", if self.im.is_negative() { "-" } else { "+" })?;
                if mag == one {
                    write!(f, "i")?;
                } else {
                    fmt_rational(&mag, f)?;
                    write!(f, "*i")?;
                }
                write!(f, ")")
            }
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $trait:ident, $method:ident, $ring:ident) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                Ring::$ring(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                Ring::$ring(self, rhs)
            }
        }
    };
}

forward_binop!(Scalar, Add, add, plus);
forward_binop!(Scalar, Sub, sub, minus);
forward_binop!(Scalar, Mul, mul, times);
forward_binop!(DualScalar, Add, add, plus);
forward_binop!(DualScalar, Sub, sub, minus);
forward_binop!(DualScalar, Mul, mul, times);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        self.negated()
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.checked_div(&rhs).expect("division by zero")
    }
}

/// Panics when the divisor has zero body; use [`DualScalar::checked_div`].
impl Div for DualScalar {
    type Output = DualScalar;
    fn div(self, rhs: DualScalar) -> DualScalar {
        self.checked_div(&rhs).expect("dual number not invertible")
    }
}

/// `body + ε·slope` with `ε² = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DualScalar {
    pub body: Scalar,
    pub slope: Scalar,
}

impl DualScalar {
    pub fn new(body: Scalar, slope: Scalar) -> Self {
        DualScalar { body, slope }
    }

    /// `ε` itself.
    pub fn epsilon() -> Self {
        DualScalar::new(<Scalar as Ring>::zero(), Scalar::from(1))
    }

    /// `ε·s`.
    pub fn infinitesimal(s: Scalar) -> Self {
        DualScalar::new(<Scalar as Ring>::zero(), s)
    }

    pub fn checked_div(&self, rhs: &DualScalar) -> Result<DualScalar> {
        let inv = rhs.inverse().ok_or(Error::NotInvertible)?;
        Ok(self.times(&inv))
    }
}

impl From<Scalar> for DualScalar {
    fn from(body: Scalar) -> Self {
        DualScalar::new(body, <Scalar as Ring>::zero())
    }
}

impl Ring for DualScalar {
    fn zero() -> Self {
        DualScalar::default()
    }

    fn one() -> Self {
        DualScalar::from(Scalar::from(1))
    }

    fn is_zero(&self) -> bool {
        self.body.is_zero() && self.slope.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        DualScalar::new(self.body.plus(&rhs.body), self.slope.plus(&rhs.slope))
    }

    fn minus(&self, rhs: &Self) -> Self {
        DualScalar::new(self.body.minus(&rhs.body), self.slope.minus(&rhs.slope))
    }

    fn times(&self, rhs: &Self) -> Self {
        DualScalar::new(
            self.body.times(&rhs.body),
            self.body.times(&rhs.slope).plus(&self.slope.times(&rhs.body)),
        )
    }

    fn negated(&self) -> Self {
        DualScalar::new(self.body.negated(), self.slope.negated())
    }

    fn from_scalar(s: &Scalar) -> Self {
        DualScalar::from(s.clone())
    }

    fn inverse(&self) -> Option<Self> {
        let b = self.body.inverse()?;
        let slope = b.times(&b).times(&self.slope).negated();
        Some(DualScalar::new(b, slope))
    }

    fn conj(&self) -> Self {
        DualScalar::new(self.body.conjugate(), self.slope.conjugate())
    }

    fn scaled(&self, s: &Scalar) -> Self {
        DualScalar::new(self.body.times(s), self.slope.times(s))
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "{} + eps*{}", self.body, self.slope)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    #[test]
    fn gaussian_products() {
        assert_eq!(Scalar::gaussian(1, 1) * Scalar::gaussian(1, -1), Scalar::from(2));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from(-1));
        assert_eq!(q(3, 2) / q(1, 2), Scalar::from(3));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Scalar::from(1).checked_div(&<Scalar as Ring>::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn dual_arithmetic() {
        let one_plus = DualScalar::new(Scalar::from(1), Scalar::from(1));
        let one_minus = DualScalar::new(Scalar::from(1), Scalar::from(-1));
        assert_eq!(one_plus * one_minus, <DualScalar as Ring>::one());

        let x = DualScalar::new(Scalar::from(2), Scalar::from(3));
        assert_eq!(
            x.inverse().unwrap(),
            DualScalar::new(q(1, 2), q(-3, 4))
        );

        let eps = DualScalar::epsilon();
        assert!((eps.clone() * eps.clone()).is_zero());
        assert_eq!(
            <DualScalar as Ring>::one().checked_div(&eps),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn powers_and_factorials() {
        assert_eq!(Scalar::i_pow(-1), Scalar::gaussian(0, -1));
        assert_eq!(Scalar::i_pow(6), Scalar::from(-1));
        assert_eq!(Scalar::factorial(5), Some(Scalar::from(120)));
        assert_eq!(Scalar::factorial(0), Some(Scalar::from(1)));
        assert_eq!(Scalar::factorial(-1), None);
    }

    #[test]
    fn display_uses_expression_syntax() {
        assert_eq!(q(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::gaussian(0, -1).to_string(), "-i");
        assert_eq!(Scalar::new(ratio(1, 2), ratio(-3, 1)).to_string(), "(1/2 - 3*i)");
    }
}
