use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::coeff::{Coeff, GaussRational, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial with exact coefficients.
///
/// `coeffs[i]` is the coefficient of `z^i`. Trailing zeros are stripped, so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type QPoly = Poly<Rational>;
pub type GaussPoly = Poly<GaussRational>;

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| C::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// `z - root`
    pub fn linear(root: C) -> Self {
        Poly::new(vec![-root, C::one()])
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn from_roots(roots: &[C]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear(r.clone()))
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * x + c.to_complex())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * C::from_int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, t: usize) -> Self {
        (0..t).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = C::one() / lc.clone();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        Poly::new(self.coeffs.iter().map(Coeff::conj).collect())
    }

    /// Multiplies by the lcm of all coefficient denominators, so every
    /// coefficient becomes integral. Leading-coefficient sign is preserved.
    pub fn clear_denominators(&self) -> Self {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        if l.is_one() {
            self.clone()
        } else {
            self.scale(&C::from_rational(Rational::from_integer(l)))
        }
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
        let lc_inv = C::one() / divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![C::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Pseudo-remainder `prem(self, divisor)`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self`, computed without
    /// division.
    pub fn pseudo_rem(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::invalid("pseudo-division by the zero polynomial"))?;
        let Some(nd) = self.degree() else {
            return Ok(Poly::zero());
        };
        if nd < dd {
            return Ok(self.clone());
        }
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut steps = nd - dd + 1;
        for top in (dd..=nd).rev() {
            let c = rem[top].clone();
            for r in rem.iter_mut().take(top + 1) {
                *r = r.clone() * lc.clone();
            }
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let k = top - dd + j;
                    rem[k] = rem[k].clone() - c.clone() * dc.clone();
                }
            }
            steps -= 1;
        }
        debug_assert_eq!(steps, 0);
        rem.truncate(dd);
        Ok(Poly::new(rem))
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::invalid("polynomial division is not exact"))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(Coeff::to_complex).collect()
    }

    /// The same polynomial over Q if all coefficients are real.
    pub fn to_real(&self) -> Option<QPoly> {
        self.coeffs
            .iter()
            .map(Coeff::as_real)
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_real().is_some())
    }
}

impl QPoly {
    pub fn to_gauss(&self) -> GaussPoly {
        self.map_coeffs(|c| GaussRational::from(c.clone()))
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c:?}"),
                1 => format!("{c:?}*z"),
                _ => format!("{c:?}*z^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn strips_trailing_zeros() {
        let a = p(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[0]).is_zero());
    }

    #[test]
    fn division_identity() {
        let a = p(&[-1, 0, 0, 2, 5]);
        let b = p(&[3, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
        assert!(a.div_rem(&QPoly::zero()).is_err());
    }

    #[test]
    fn pseudo_remainder_matches_scaled_remainder() {
        let a = p(&[1, -3, 0, 7, 2]);
        let b = p(&[5, 0, 3]);
        let pr = a.pseudo_rem(&b).unwrap();
        let lc = Rational::from_integer(3.into());
        let scaled = a.scale(&(0..3).fold(Rational::one(), |acc, _| acc * lc.clone()));
        assert_eq!(pr, scaled.rem(&b).unwrap());
    }

    #[test]
    fn derivatives() {
        let z3 = p(&[0, 0, 0, 1]);
        assert_eq!(z3.derivative(), p(&[0, 0, 3]));
        assert_eq!(z3.nth_derivative(2), p(&[0, 6]));
        assert_eq!(z3.nth_derivative(4), QPoly::zero());
    }

    #[test]
    fn from_roots_expands() {
        let r: Vec<Rational> = [1, 2, 3].iter().map(|&x| Rational::from_integer(x.into())).collect();
        assert_eq!(QPoly::from_roots(&r), p(&[-6, 11, -6, 1]));
    }
}
