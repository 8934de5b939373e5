use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::coeff::{Coeff, Rational};
use super::poly::{Poly, QPoly};
use crate::error::{Error, Result};

fn pow<C: Coeff>(base: &C, e: usize) -> C {
    (0..e).fold(C::one(), |acc, _| acc * base.clone())
}

/// Monic gcd via the subresultant polynomial remainder sequence.
///
/// Inputs are scaled to integral coefficients first; the subresultant
/// divisions then keep every intermediate integral and of controlled size.
pub fn gcd_subresultant<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> Result<Poly<C>> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::invalid("gcd of two zero polynomials")),
        (true, false) => return Ok(g.monic()),
        (false, true) => return Ok(f.monic()),
        _ => {}
    }
    if let Some(g) = C::integral_gcd(f, g) {
        return Ok(g);
    }
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.clear_denominators(), g.clear_denominators())
    } else {
        (g.clear_denominators(), f.clear_denominators())
    };
    let mut lead = C::one();
    let mut h = C::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(&b)?;
        if r.is_zero() {
            return Ok(b.monic());
        }
        if r.is_constant() {
            return Ok(Poly::one());
        }
        let divisor = lead.clone() * pow(&h, delta);
        a = b;
        b = r.scale(&(C::one() / divisor));
        lead = a.leading().unwrap().clone();
        // h <- lead^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            pow(&lead, delta) / pow(&h, delta - 1)
        };
    }
}

/// Monic gcd via the plain Euclidean algorithm over the coefficient field.
///
/// Kept as an independent route for cross-checking [`gcd_subresultant`].
pub fn gcd_euclid<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> Result<Poly<C>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::invalid("gcd of two zero polynomials"));
    }
    let (mut a, mut b) = (f.monic(), g.monic());
    while !b.is_zero() {
        let r = a.rem(&b)?.monic();
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Monic gcd of a whole family. Zero members are ignored.
pub fn gcd_all<'a, C: Coeff + 'a>(polys: impl IntoIterator<Item = &'a Poly<C>>) -> Result<Poly<C>> {
    let mut acc = Poly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            p.monic()
        } else {
            gcd_subresultant(&acc, p)?
        };
        if acc.is_constant() {
            break;
        }
    }
    if acc.is_zero() {
        return Err(Error::invalid("gcd of an all-zero family"));
    }
    Ok(acc)
}

/// `f / gcd(f, f')`, made monic: same roots as `f`, all simple.
pub fn squarefree_part<C: Coeff>(f: &Poly<C>) -> Result<Poly<C>> {
    if f.is_zero() {
        return Err(Error::invalid("squarefree part of the zero polynomial"));
    }
    if f.is_constant() {
        return Ok(Poly::one());
    }
    let g = gcd_subresultant(f, &f.derivative())?;
    Ok(f.exact_div(&g)?.monic())
}

/// Resultant by the subresultant recurrence: every division is exact, so
/// integral inputs stay integral throughout.
pub fn resultant<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> Result<C> {
    if f.is_zero() || g.is_zero() {
        return Ok(C::zero());
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = C::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut lead = C::one();
    let mut h = C::one();
    while b.degree().unwrap() > 0 {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b)?;
        if r.is_zero() {
            return Ok(C::zero());
        }
        let divisor = lead.clone() * pow(&h, delta);
        a = b;
        b = r.scale(&(C::one() / divisor));
        lead = a.leading().unwrap().clone();
        if delta > 0 {
            h = pow(&lead, delta) / pow(&h, delta - 1);
        }
    }
    let da = a.degree().unwrap();
    let last = b.leading().unwrap().clone();
    // h^(1 - deg a) * lc(b)^(deg a)
    let out = if da == 0 { C::one() } else { pow(&last, da) / pow(&h, da - 1) };
    Ok(sign * out)
}

fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (na, nb) = (a.len() - 1, b.len() - 1);
    let lc = &b[nb];
    let mut rem = a.to_vec();
    for top in (nb..=na).rev() {
        let c = rem[top].clone();
        for r in rem.iter_mut().take(top + 1) {
            *r *= lc;
        }
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                rem[top - nb + j] -= &c * bc;
            }
        }
    }
    rem.truncate(nb);
    while rem.last().is_some_and(Zero::is_zero) {
        rem.pop();
    }
    rem
}

fn to_primitive_ints(p: &QPoly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &l).to_integer()).collect();
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    v.into_iter().map(|c| c / &content).collect()
}

/// [`gcd_subresultant`] on nonzero rational polynomials, run on integers.
pub(crate) fn gcd_subresultant_q(f: &QPoly, g: &QPoly) -> QPoly {
    let (mut a, mut b) = (to_primitive_ints(f), to_primitive_ints(g));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut lead = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if b.len() == 1 {
            return QPoly::one();
        }
        let delta = (a.len() - b.len()) as u32;
        let r = int_prem(&a, &b);
        if r.is_empty() {
            let lc = b.last().unwrap().clone();
            return QPoly::new(b.into_iter().map(|c| Rational::new(c, lc.clone())).collect());
        }
        let divisor = &lead * h.pow(delta);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        lead = a.last().unwrap().clone();
        if delta > 0 {
            h = lead.pow(delta) / h.pow(delta - 1);
        }
    }
}

/// Same recurrence as [`resultant`] run on machine-independent integers:
/// denominators are cleared first and the scaling undone at the end.
/// Much faster than the field version for rational inputs.
pub fn resultant_q(f: &QPoly, g: &QPoly) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Ok(Rational::zero());
    }
    let to_ints = |p: &QPoly| -> (Vec<BigInt>, BigInt) {
        let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        (p.coeffs().iter().map(|c| (c * &l).to_integer()).collect(), l)
    };
    let (mut a, la) = to_ints(f);
    let (mut b, lb) = to_ints(g);
    let (df, dg) = (a.len() - 1, b.len() - 1);
    let mut sign = BigInt::one();
    if a.len() < b.len() {
        if df % 2 == 1 && dg % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut lead = BigInt::one();
    let mut h = BigInt::one();
    while b.len() > 1 {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = int_prem(&a, &b);
        if r.is_empty() {
            return Ok(Rational::zero());
        }
        let divisor = &lead * h.pow(delta as u32);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        lead = a.last().unwrap().clone();
        if delta > 0 {
            h = lead.pow(delta as u32) / h.pow(delta as u32 - 1);
        }
    }
    let da = a.len() - 1;
    let out = if da == 0 { BigInt::one() } else { b[0].pow(da as u32) / h.pow(da as u32 - 1) };
    // res(la f, lb g) = la^deg g * lb^deg f * res(f, g)
    let scale = la.pow(dg as u32) * lb.pow(df as u32);
    Ok(Rational::new(sign * out, scale))
}
