use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coeff::Rational;
use super::poly::QPoly;
use crate::error::{Error, Result};

/// Interval for [`sturm_count`]. `Open(lo, hi)` counts roots with
/// `lo < x < hi`.
#[derive(Clone, Debug, PartialEq)]
pub enum Interval {
    WholeLine,
    Open(Rational, Rational),
}

/// Sturm chain `f, f', -rem(f, f'), ...` of a squarefree polynomial.
///
/// Each element after the first is rescaled by a positive constant, which
/// leaves sign patterns untouched.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<QPoly>,
}

fn to_ints(f: &QPoly) -> Vec<BigInt> {
    f.clear_denominators().coeffs().iter().map(|c| c.to_integer()).collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Divides out the (positive) content.
fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// A positive multiple of `a mod b` over integer coefficients.
fn positive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (na, nb) = (a.len() - 1, b.len() - 1);
    if na < nb {
        return a.to_vec();
    }
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
    // the multiplier is lc^(na - nb + 1)
    if lc.is_negative() && (na - nb) % 2 == 0 {
        rem.iter_mut().for_each(|c| *c = -&*c);
    }
    trim(rem)
}

impl SturmChain {
    /// Builds the chain on primitive integer polynomials, so coefficient
    /// growth stays bounded.
    pub fn new(f: &QPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::invalid("Sturm chain of the zero polynomial"));
        }
        if f.is_constant() {
            return Ok(SturmChain { chain: vec![f.clone()] });
        }
        let head = primitive(to_ints(f));
        let second = primitive(to_ints(&QPoly::new(head.iter().cloned().map(Rational::from_integer).collect()).derivative()));
        let mut ints = vec![head, second];
        loop {
            let n = ints.len();
            let r = positive_prem(&ints[n - 2], &ints[n - 1]);
            if r.is_empty() {
                break;
            }
            ints.push(primitive(r.into_iter().map(|c| -c).collect()));
        }
        if ints.last().unwrap().len() > 1 {
            return Err(Error::ContractViolation(format!(
                "Sturm chain stopped at a degree-{} element: input is not squarefree",
                ints.last().unwrap().len() - 1
            )));
        }
        let mut chain: Vec<QPoly> =
            ints.into_iter().map(|v| QPoly::new(v.into_iter().map(Rational::from_integer).collect())).collect();
        chain[0] = f.clone();
        Ok(SturmChain { chain })
    }

    pub fn polys(&self) -> &[QPoly] {
        &self.chain
    }

    fn sign_changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    fn changes_at(&self, x: &Rational) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| p.eval(x).cmp(&Rational::zero())))
    }

    fn changes_at_infinity(&self, positive: bool) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| {
            let lc_sign = p.leading().unwrap().cmp(&Rational::zero());
            let odd = p.degree().unwrap() % 2 == 1;
            if !positive && odd {
                lc_sign.reverse()
            } else {
                lc_sign
            }
        }))
    }

    /// Distinct real roots of the chain's head in `interval`.
    pub fn count(&self, interval: &Interval) -> Result<usize> {
        match interval {
            Interval::WholeLine => Ok(self.changes_at_infinity(false) - self.changes_at_infinity(true)),
            Interval::Open(lo, hi) => {
                if lo >= hi {
                    return Err(Error::invalid("Sturm interval needs lo < hi"));
                }
                // V(lo) - V(hi) counts roots in (lo, hi]
                let half_open = self.changes_at(lo) - self.changes_at(hi);
                let hi_is_root = self.chain[0].eval(hi).is_zero();
                Ok(half_open - usize::from(hi_is_root))
            }
        }
    }
}

/// Number of distinct real roots of a squarefree `f` in `interval`.
pub fn sturm_count(f: &QPoly, interval: &Interval) -> Result<usize> {
    SturmChain::new(f)?.count(interval)
}
