//! Sampling the components of `Poly^{d,1}_2(R)`, the real squarefree monic
//! polynomials of degree `d`.

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::seeded_rng;
use crate::error::{Error, Result};
use crate::polyarith::{resultant_q, squarefree_part, sturm_count, Interval, QPoly, Rational};
use crate::scanning::component_index_12;

/// Interpolation steps along each straight-line path.
pub const PATH_STEPS: usize = 100;
/// Same-label paths checked per experiment.
pub const PATH_TARGET: usize = 100;
const PATH_ATTEMPT_CAP: usize = 200_000;
const PATH_BATCH: usize = 32;
// samples kept per label as path endpoints
const BUCKET_SIZE: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct PathReport {
    /// Pairs with matching labels whose segment was tested.
    pub attempted: usize,
    /// Segments staying inside the squarefree locus.
    pub member_paths: usize,
    /// Member paths along which the label changed.
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi0Report {
    pub d: usize,
    pub trials: u64,
    pub seed: u64,
    /// `histogram[j]` counts samples with `j` conjugate pairs.
    pub histogram: Vec<u64>,
    pub missing_labels: Vec<usize>,
    /// Draws discarded for a repeated root.
    pub rejections: u64,
    pub paths: PathReport,
}

impl Pi0Report {
    pub fn labels(&self) -> Vec<usize> {
        (0..self.histogram.len()).filter(|&j| self.histogram[j] > 0).collect()
    }

    /// Every label seen, no label changed on a member path, and enough
    /// member paths were found.
    pub fn consistent(&self) -> bool {
        self.missing_labels.is_empty() && self.paths.violations == 0 && self.paths.member_paths >= PATH_TARGET
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Product of `floor(d/2)` random real quadratics `z^2 + bz + c` (times one
/// linear factor for odd `d`); `b, c` are integers in `[-5, 5]`.
/// Whether each quadratic splits over R is left to chance, so every label
/// has positive probability.
fn draw<R: Rng>(rng: &mut R, d: usize) -> QPoly {
    let mut f = QPoly::one();
    for _ in 0..d / 2 {
        let b = q(rng.gen_range(-5..=5));
        let c = q(rng.gen_range(-5..=5));
        f = &f * &QPoly::new(vec![c, b, q(1)]);
    }
    if d % 2 == 1 {
        f = &f * &QPoly::linear(q(rng.gen_range(-5..=5)));
    }
    f
}

fn lerp(f: &QPoly, g: &QPoly, s: &Rational) -> QPoly {
    &f.scale(&(q(1) - s)) + &g.scale(s)
}

/// Newton-form interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> QPoly {
    let k = xs.len();
    let mut coef = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut out = QPoly::constant(coef[k - 1].clone());
    for i in (0..k - 1).rev() {
        out = &(&out * &QPoly::linear(xs[i].clone())) + &QPoly::constant(coef[i].clone());
    }
    out
}

const SIGN_GRID: usize = 32;

/// Sign variations of `(1 + u)^n r(1 / (1 + u))`: an upper bound on the
/// number of roots of `r` in `(0, 1)`.
fn descartes_bound_unit(r: &QPoly) -> usize {
    let n = r.degree().unwrap_or(0);
    let mut t = vec![Rational::zero(); n + 1];
    for (i, c) in r.coeffs().iter().enumerate() {
        // c (1 + u)^(n - i)
        let mut binom = Rational::one();
        for k in 0..=n - i {
            t[k] += c * &binom;
            binom = binom * q((n - i - k) as i64) / q(k as i64 + 1);
        }
    }
    let signs: Vec<bool> = t.iter().filter(|c| !c.is_zero()).map(|c| *c > Rational::zero()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// True when every point of the segment from `f` to `g` is squarefree,
/// decided exactly from the discriminant along the segment.
pub fn segment_is_member(f: &QPoly, g: &QPoly) -> Result<bool> {
    let d = f.degree().ok_or_else(|| Error::invalid("zero polynomial"))?;
    if g.degree() != Some(d) || !f.is_monic() || !g.is_monic() {
        return Err(Error::invalid("segment endpoints must be monic of equal degree"));
    }
    // res(f_s, f_s') has degree <= 2d - 1 in s
    let xs: Vec<Rational> = (0..2 * d as i64 + 1).map(q).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for s in &xs {
        let h = lerp(f, g, s);
        ys.push(resultant_q(&h, &h.derivative())?);
    }
    let r = interpolate(&xs, &ys);
    if r.eval(&q(0)).is_zero() || r.eval(&q(1)).is_zero() {
        return Ok(false);
    }
    if r.is_constant() {
        return Ok(true);
    }
    // cheap certificates first: a sign change on a grid, then Descartes'
    // rule on (1 + u)^n r(1 / (1 + u)), whose positive roots are the roots
    // of r in (0, 1)
    let positive = r.eval(&q(0)) > Rational::zero();
    for k in 1..SIGN_GRID {
        let x = Rational::new((k as i64).into(), (SIGN_GRID as i64).into());
        if (r.eval(&x) > Rational::zero()) != positive && !r.eval(&x).is_zero() {
            return Ok(false);
        }
    }
    if descartes_bound_unit(&r) == 0 {
        return Ok(true);
    }
    let unit = Interval::Open(q(0), q(1));
    let roots = match sturm_count(&r, &unit) {
        Err(Error::ContractViolation(_)) => sturm_count(&squarefree_part(&r)?, &unit)?,
        other => other?,
    };
    Ok(roots == 0)
}

/// Labels random members by their number of conjugate root pairs, then
/// checks labels stay constant along same-label straight-line paths that
/// stay inside the member locus. Path checks are evidence of connectivity,
/// not a proof.
pub fn pi0_experiment_12(d: usize, trials: u64, seed: u64) -> Result<Pi0Report> {
    if d == 0 {
        return Err(Error::invalid("pi0 experiment needs d >= 1"));
    }
    // trial t draws from stream t until it hits a squarefree polynomial
    let draws: Vec<(QPoly, usize, u64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seeded_rng(seed, t);
            let mut rejected = 0;
            loop {
                let f = draw(&mut rng, d);
                match component_index_12(&f) {
                    Ok(j) => return Ok((f, j, rejected)),
                    Err(Error::InvalidInput(_)) => rejected += 1,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut histogram = vec![0u64; d / 2 + 1];
    let mut by_label: Vec<Vec<QPoly>> = vec![Vec::new(); d / 2 + 1];
    let mut rejections = 0;
    for (f, j, rejected) in draws {
        histogram[j] += 1;
        rejections += rejected;
        if by_label[j].len() < BUCKET_SIZE {
            by_label[j].push(f);
        }
    }
    let missing_labels = (0..histogram.len()).filter(|&j| histogram[j] == 0).collect();

    let mut paths = PathReport { attempted: 0, member_paths: 0, violations: 0 };
    let pool: Vec<usize> = (0..by_label.len()).filter(|&j| by_label[j].len() >= 2).collect();
    let mut path_rng = seeded_rng(seed, u64::MAX);
    while !pool.is_empty() && paths.member_paths < PATH_TARGET && paths.attempted < PATH_ATTEMPT_CAP {
        let batch: Vec<(usize, usize, usize)> = (0..PATH_BATCH)
            .map(|i| {
                let j = pool[(paths.attempted + i) % pool.len()];
                let len = by_label[j].len();
                let a = path_rng.gen_range(0..len);
                (j, a, (a + path_rng.gen_range(1..len)) % len)
            })
            .collect();
        let outcomes: Vec<Option<bool>> = batch
            .par_iter()
            .map(|&(j, a, b)| check_path(&by_label[j][a], &by_label[j][b], j))
            .collect::<Result<_>>()?;
        for outcome in outcomes {
            if paths.member_paths == PATH_TARGET {
                break;
            }
            paths.attempted += 1;
            if let Some(violated) = outcome {
                paths.member_paths += 1;
                paths.violations += usize::from(violated);
            }
        }
    }
    Ok(Pi0Report { d, trials, seed, histogram, missing_labels, rejections, paths })
}

/// `None` if the segment leaves the member locus, else whether the label
/// changed at one of the interpolation steps.
fn check_path(f: &QPoly, g: &QPoly, j: usize) -> Result<Option<bool>> {
    if !segment_is_member(f, g)? {
        return Ok(None);
    }
    let d = f.degree().unwrap();
    for step in 0..=PATH_STEPS {
        // (N - k) f + k g is a positive multiple of the point at s = k/N
        let h = &f.scale(&q((PATH_STEPS - step) as i64)) + &g.scale(&q(step as i64));
        if (d - sturm_count(&h, &Interval::WholeLine)?) / 2 != j {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = QPoly::from_ints(&[3, -1, 0, 2]);
        let xs: Vec<Rational> = (0..4).map(q).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn segment_membership() {
        // z^2 - 1 to z^2 - 4 keeps two simple real roots
        assert!(segment_is_member(&QPoly::from_ints(&[-1, 0, 1]), &QPoly::from_ints(&[-4, 0, 1])).unwrap());
        // z^2 - 1 to z^2 + 1 passes through z^2
        assert!(!segment_is_member(&QPoly::from_ints(&[-1, 0, 1]), &QPoly::from_ints(&[1, 0, 1])).unwrap());
    }

    #[test]
    fn small_degrees() {
        let r = pi0_experiment_12(1, 100, 3).unwrap();
        assert_eq!(r.labels(), vec![0]);
        let r = pi0_experiment_12(2, 2000, 3).unwrap();
        assert_eq!(r.labels(), vec![0, 1]);
        assert_eq!(r.paths.violations, 0);
        let r = pi0_experiment_12(5, 2000, 4).unwrap();
        assert_eq!(r.labels(), vec![0, 1, 2]);
    }
}
