//! Membership fuzzing with planted common roots, and unplanted draws whose
//! non-members are re-derived on an independent gcd route.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{random_monic_int, random_rational, seeded_rng, COEFF_BOUND};
use crate::error::{Error, Result};
use crate::polyarith::{gcd_euclid, QPoly, Rational};
use crate::spaces::{has_common_root_at, is_member, stratum_signature, Family, SpaceId, System, SystemJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FuzzKind {
    Planted,
    Unplanted,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzFailure {
    pub trial: u64,
    pub reason: String,
    pub system: SystemJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub kind: FuzzKind,
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub member_count: u64,
    /// Non-members by stratum, keyed `"i,j"`.
    pub histogram: BTreeMap<String, u64>,
    pub planted_real: u64,
    pub planted_pair: u64,
    /// Non-members confirmed by the independent route.
    pub verified_exceptions: u64,
    pub failures: Vec<FuzzFailure>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn member_rate(&self) -> f64 {
        self.member_count as f64 / self.trials as f64
    }

    /// Members among the draws that are not confirmed non-members.
    pub fn member_rate_excluding_verified(&self) -> f64 {
        let rest = self.trials - self.verified_exceptions;
        if rest == 0 {
            return 1.0;
        }
        self.member_count as f64 / rest as f64
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

enum Plant {
    Real(Rational),
    Pair(QPoly),
}

enum Outcome {
    Member,
    NonMember { i: usize, j: usize, verified: bool },
    Failure(String),
}

/// Common root locus recomputed with plain Euclidean gcds.
fn euclid_locus(polys: &[QPoly], n: usize) -> Result<QPoly> {
    let mut g = QPoly::zero();
    for f in polys {
        let mut d = f.clone();
        for _ in 0..n {
            g = if g.is_zero() { d.monic() } else { gcd_euclid(&g, &d)? };
            d = d.derivative();
        }
    }
    Ok(g)
}

fn classify(sys: &System, plant: Option<&Plant>) -> Result<Outcome> {
    let n = sys.space().n;
    let real = sys.real_polys().expect("real family");
    let fast = is_member(sys);
    if fast && plant.is_none() {
        // only flagged draws are re-derived
        return Ok(Outcome::Member);
    }
    let locus = euclid_locus(&real, n)?;
    let independent = locus.is_constant();
    if fast != independent {
        return Ok(Outcome::Failure(format!("fast path says member={fast}, euclid route says {independent}")));
    }
    if fast {
        return Ok(match plant {
            Some(_) => Outcome::Failure("planted system classified as member".into()),
            None => Outcome::Member,
        });
    }
    let sig = stratum_signature(sys)?.expect("non-member has a stratum");
    if !sig.fits_budget(sys.space().d, n) {
        return Ok(Outcome::Failure(format!("stratum ({}, {}) exceeds the degree budget", sig.i, sig.j)));
    }
    let verified = match plant {
        Some(Plant::Real(alpha)) => {
            if sig.i == 0 {
                return Ok(Outcome::Failure("planted real root missing from stratum".into()));
            }
            has_common_root_at(&real, n, alpha)
        }
        Some(Plant::Pair(q)) => {
            if sig.j == 0 {
                return Ok(Outcome::Failure("planted conjugate pair missing from stratum".into()));
            }
            locus.rem(q)?.is_zero()
        }
        None => true,
    };
    if !verified {
        return Ok(Outcome::Failure("planted root not recovered by the independent route".into()));
    }
    Ok(Outcome::NonMember { i: sig.i, j: sig.j, verified })
}

fn plant<R: Rng>(rng: &mut R, d: usize, n: usize) -> (Plant, QPoly) {
    let pair_fits = d >= 2 * n;
    if pair_fits && rng.gen_bool(0.5) {
        // z^2 + bz + c with c > b^2/4
        let b = random_rational(rng, 20, 4);
        let c = &b * &b / Rational::from_integer(4.into()) + Rational::new(rng.gen_range(1..=40).into(), 4.into());
        let q = QPoly::new(vec![c, b, Rational::from_integer(1.into())]);
        let power = q.pow(n as u32);
        (Plant::Pair(q), power)
    } else {
        let alpha = random_rational(rng, 20, 4);
        let power = QPoly::linear(alpha.clone()).pow(n as u32);
        (Plant::Real(alpha), power)
    }
}

fn run_trials(
    kind: FuzzKind,
    d: usize,
    m: usize,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<SampleReport> {
    let space = SpaceId::new(Family::PolyR, d, m, n)?;
    if n > d {
        return Err(Error::invalid(format!("fuzzing needs n <= d, got n={n}, d={d}")));
    }
    let results: Vec<(Option<bool>, Outcome, SystemJson)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seeded_rng(seed, t);
            let (planted, polys) = match kind {
                FuzzKind::Planted => {
                    let (p, power) = plant(&mut rng, d, n);
                    let cof = d - power.degree().unwrap();
                    let polys: Vec<QPoly> =
                        (0..m).map(|_| &power * &random_monic_int(&mut rng, cof, COEFF_BOUND)).collect();
                    (Some(p), polys)
                }
                FuzzKind::Unplanted => (None, (0..m).map(|_| random_monic_int(&mut rng, d, COEFF_BOUND)).collect()),
            };
            let sys = System::from_q(space.clone(), polys)?;
            let is_real_plant = planted.as_ref().map(|p| matches!(p, Plant::Real(_)));
            let outcome = classify(&sys, planted.as_ref())?;
            Ok((is_real_plant, outcome, sys.to_json()))
        })
        .collect::<Result<_>>()?;

    let mut report = SampleReport {
        kind,
        d,
        m,
        n,
        trials,
        seed,
        member_count: 0,
        histogram: BTreeMap::new(),
        planted_real: 0,
        planted_pair: 0,
        verified_exceptions: 0,
        failures: Vec::new(),
    };
    for (t, (real_plant, outcome, json)) in results.into_iter().enumerate() {
        match real_plant {
            Some(true) => report.planted_real += 1,
            Some(false) => report.planted_pair += 1,
            None => {}
        }
        match outcome {
            Outcome::Member => report.member_count += 1,
            Outcome::NonMember { i, j, verified } => {
                *report.histogram.entry(format!("{i},{j}")).or_insert(0) += 1;
                if verified {
                    report.verified_exceptions += 1;
                }
            }
            Outcome::Failure(reason) => {
                report.failures.push(FuzzFailure { trial: t as u64, reason, system: json });
            }
        }
    }
    Ok(report)
}

/// Plants a real `n`-fold root or an `n`-fold conjugate pair into every slot
/// of a random real system and checks it is classified into the right stratum.
/// Trial `t` uses RNG stream `t` of `seed`.
pub fn planted_root_fuzz(d: usize, m: usize, n: usize, trials: u64, seed: u64) -> Result<SampleReport> {
    run_trials(FuzzKind::Planted, d, m, n, trials, seed)
}

/// Plain integer-coefficient draws; every non-member must be confirmed on
/// the Euclidean gcd route.
pub fn unplanted_fuzz(d: usize, m: usize, n: usize, trials: u64, seed: u64) -> Result<SampleReport> {
    run_trials(FuzzKind::Unplanted, d, m, n, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_small_run() {
        let r = planted_root_fuzz(4, 2, 2, 200, 11).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.member_count, 0);
        assert_eq!(r.histogram.values().sum::<u64>(), r.trials);
        assert!(r.planted_real > 0 && r.planted_pair > 0);
    }

    #[test]
    fn unplanted_small_run() {
        let r = unplanted_fuzz(3, 2, 1, 300, 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.member_count + r.histogram.values().sum::<u64>(), r.trials);
        assert_eq!(r.member_rate_excluding_verified(), 1.0);
    }

    #[test]
    fn reproducible_from_seed() {
        let a = planted_root_fuzz(3, 1, 2, 50, 99).unwrap().to_json();
        let b = planted_root_fuzz(3, 1, 2, 50, 99).unwrap().to_json();
        assert_eq!(a, b);
        assert!(planted_root_fuzz(1, 1, 2, 5, 0).is_err());
    }
}
