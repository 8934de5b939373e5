use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::gcd_subresultant_q;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Arbitrary-precision rational; always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Exact coefficient field usable by [`Poly`](super::Poly).
///
/// Implemented for [`Rational`] and [`GaussRational`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: Rational) -> Self;

    fn conj(&self) -> Self;

    fn to_complex(&self) -> Complex64;

    /// Real part if the value is real.
    fn as_real(&self) -> Option<Rational>;

    /// Lcm of all denominators appearing in the value.
    fn denominator_lcm(&self) -> BigInt;

    fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    /// Monic gcd computed on integer coefficients where the ring allows it;
    /// `None` falls back to the generic computation.
    fn integral_gcd(_f: &Poly<Self>, _g: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }
}

impl Coeff for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn as_real(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn denominator_lcm(&self) -> BigInt {
        self.denom().clone()
    }

    fn integral_gcd(f: &Poly<Self>, g: &Poly<Self>) -> Option<Poly<Self>> {
        Some(gcd_subresultant_q(f, g))
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact dyadic rational equal to a finite `f64`.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?,
        ),
    };
    Ok(parsed)
}

/// Serialized form `"p/q"`, denominator always written.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn i() -> Self {
        GaussRational::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl From<Rational> for GaussRational {
    fn from(re: Rational) -> Self {
        GaussRational { re, im: Rational::zero() }
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::new(Rational::one(), Rational::zero())
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::from(self.re * rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussRational::new(re, im)
    }
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if rhs.im.is_zero() {
            return GaussRational::new(self.re / &rhs.re, self.im / &rhs.re);
        }
        let n = rhs.norm_sqr();
        let num = self * rhs.conj();
        GaussRational::new(num.re / &n, num.im / n)
    }
}

impl Coeff for GaussRational {
    fn from_rational(r: Rational) -> Self {
        GaussRational::from(r)
    }

    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn as_real(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn rationals_stay_reduced() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-6/4").unwrap(), r);
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gauss_field_ops() {
        let a = GaussRational::new(q(1, 2), q(3, 1));
        let b = GaussRational::new(q(-2, 1), q(1, 3));
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert_eq!(a.conj().re, a.re);
        assert_eq!(a.conj().im, -a.im.clone());
        let i = GaussRational::i();
        assert_eq!(i.clone() * i, -GaussRational::one());
    }
}
