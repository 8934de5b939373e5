//! Seeded random polynomials and members.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyarith::{QPoly, Rational};
use crate::spaces::{is_member, Family, HplusParity, SpaceId, System};

/// Coefficient bound `B` for integer draws.
pub const COEFF_BOUND: i64 = 10;

/// Draws per member before giving up.
pub const MAX_ATTEMPTS: usize = 100_000;

/// Independent stream `stream` split from `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Monic degree-`d` polynomial with integer coefficients uniform in `[-bound, bound]`.
pub fn random_monic_int<R: Rng>(rng: &mut R, d: usize, bound: i64) -> QPoly {
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    QPoly::from_ints(&c)
}

/// `p / q` with `p` uniform in `[-num_bound, num_bound]`, `q` in `1..=max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, num_bound: i64, max_den: i64) -> Rational {
    let p = rng.gen_range(-num_bound..=num_bound);
    let q = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone, Debug)]
pub struct MemberDraw {
    pub system: System,
    /// Non-member draws discarded before this one.
    pub rejections: usize,
}

fn draw_slot<R: Rng>(rng: &mut R, space: &SpaceId, k: usize, bound: i64) -> QPoly {
    let d = space.slot_degree(k);
    match space.hplus_parity() {
        Some(HplusParity::Odd) => {
            let marker = QPoly::linear(Rational::from_integer(BigInt::from(k as i64 + 1)));
            &marker * &random_monic_int(rng, d - 1, bound)
        }
        _ => random_monic_int(rng, d, bound),
    }
}

/// Rejection-samples a member of `space` from integer-coefficient draws.
/// Complex families are sampled on their real points.
pub fn random_member<R: Rng>(rng: &mut R, space: &SpaceId, bound: i64) -> Result<MemberDraw> {
    for rejections in 0..MAX_ATTEMPTS {
        let polys = (0..space.m).map(|k| draw_slot(rng, space, k, bound)).collect();
        let system = System::from_q(space.clone(), polys)?;
        if is_member(&system) {
            return Ok(MemberDraw { system, rejections });
        }
    }
    Err(Error::UnsupportedParameters(format!(
        "no member of {} (d={}, m={}, n={}) in {MAX_ATTEMPTS} draws",
        space.family.name(),
        space.d,
        space.m,
        space.n
    )))
}

/// Random member of `Poly^{d,m}_n(R)` with default bound; convenience for tests.
pub fn random_real_member(seed: u64, stream: u64, d: usize, m: usize, n: usize) -> Result<MemberDraw> {
    let space = SpaceId::new(Family::PolyR, d, m, n)?;
    random_member(&mut seeded_rng(seed, stream), &space, COEFF_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_members_and_reproducible() {
        for family in Family::ALL {
            let space = SpaceId::new(family, 4, 2, 2).unwrap();
            let a = random_member(&mut seeded_rng(7, 1), &space, COEFF_BOUND).unwrap();
            let b = random_member(&mut seeded_rng(7, 1), &space, COEFF_BOUND).unwrap();
            assert!(is_member(&a.system));
            assert_eq!(a.system, b.system);
        }
        let odd = SpaceId::new(Family::PolyRHplus, 3, 2, 1).unwrap();
        assert!(is_member(&random_member(&mut seeded_rng(1, 0), &odd, COEFF_BOUND).unwrap().system));
    }

    #[test]
    fn streams_differ() {
        let a = random_monic_int(&mut seeded_rng(3, 0), 6, COEFF_BOUND);
        let b = random_monic_int(&mut seeded_rng(3, 1), 6, COEFF_BOUND);
        assert_ne!(a, b);
        assert!(a.is_monic() && a.degree() == Some(6));
    }
}
