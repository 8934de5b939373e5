//! Numeric evaluation of the natural maps into projective space and loop
//! spaces, and their discrete invariants.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyarith::{
    rational_from_f64, rational_to_f64, sturm_count, Coeff, GaussPoly, GaussRational, Interval, QPoly,
    Rational,
};
use crate::spaces::{is_member, jet, jet_family, Family, System};

/// Largest chordal step allowed between consecutive loop samples.
pub const MAX_CHORDAL_STEP: f64 = 0.5;
/// Sample cap for adaptive refinement.
pub const MAX_LOOP_POINTS: usize = 1 << 20;

/// A point of real projective space as a unit vector whose first nonzero
/// coordinate is positive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjPoint {
    pub coords: Vec<f64>,
}

impl ProjPoint {
    pub fn normalize(v: &[f64]) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::numerical("projective point with zero or non-finite coordinates", norm));
        }
        let sign = match v.iter().find(|x| **x != 0.0) {
            Some(x) if *x < 0.0 => -1.0,
            _ => 1.0,
        };
        Ok(ProjPoint { coords: v.iter().map(|x| sign * x / norm).collect() })
    }

    /// Distance in projective space: the smaller of `|u - v|` and `|u + v|`.
    pub fn chordal(&self, other: &ProjPoint) -> f64 {
        let (mut minus, mut plus) = (0.0, 0.0);
        for (a, b) in self.coords.iter().zip(&other.coords) {
            minus += (a - b) * (a - b);
            plus += (a + b) * (a + b);
        }
        minus.min(plus).sqrt()
    }
}

/// The loop `α ↦ [F_n(f_1)(α) : ... : F_n(f_m)(α)]` on `R ∪ ∞`, sampled at
/// `α = tan(π t / 2)` for `t` in `[-1, 1]`.
#[derive(Clone, Debug, Serialize)]
pub struct LoopSample {
    pub ts: Vec<f64>,
    pub alphas: Vec<f64>,
    pub points: Vec<ProjPoint>,
    pub basepoint: ProjPoint,
}

impl LoopSample {
    pub fn max_step(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].chordal(&w[1])).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let dim = self.basepoint.coords.len();
        let mut out = String::from("t,alpha");
        for i in 0..dim {
            let _ = write!(out, ",x{i}");
        }
        out.push('\n');
        for ((t, a), p) in self.ts.iter().zip(&self.alphas).zip(&self.points) {
            let _ = write!(out, "{t},{a}");
            for x in &p.coords {
                let _ = write!(out, ",{x}");
            }
            out.push('\n');
        }
        out
    }
}

fn alpha_of(t: f64) -> f64 {
    if t <= -1.0 {
        f64::NEG_INFINITY
    } else if t >= 1.0 {
        f64::INFINITY
    } else {
        (FRAC_PI_2 * t).tan()
    }
}

/// Exact evaluation of the jet family at `alpha`, divided by `|alpha|^d`
/// when `|alpha| > 1` so large parameters stay in range, then rounded.
///
/// Returns the projective point and the unit vector on the lift of the loop
/// over the real line; the positive rescaling keeps the lift continuous,
/// with limit `(±1)^d (1, ..., 1)` at `α = ±∞`.
fn jet_point(jets: &[QPoly], d: usize, alpha: f64) -> Result<(ProjPoint, Vec<f64>)> {
    let values: Vec<f64> = if alpha.is_infinite() {
        let sign = if alpha < 0.0 && d % 2 == 1 { -1.0 } else { 1.0 };
        vec![sign; jets.len()]
    } else {
        let a = rational_from_f64(alpha).ok_or_else(|| Error::numerical("non-finite parameter", alpha))?;
        let scale = if a.abs() > Rational::one() { a.abs().pow(d as i32) } else { Rational::one() };
        jets.iter().map(|p| rational_to_f64(&(p.eval(&a) / &scale))).collect()
    };
    let point = ProjPoint::normalize(&values)?;
    let norm = values.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok((point, values.iter().map(|x| x / norm).collect()))
}

/// Step between consecutive samples measured along the lift, so a
/// coordinate flipping sign between samples forces refinement.
fn lifted_step(p: &(ProjPoint, Vec<f64>), q: &(ProjPoint, Vec<f64>)) -> f64 {
    p.1.iter().zip(&q.1).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Samples the loop of a `Q_R` member, refining adaptively until every step
/// along the lift is below `MAX_CHORDAL_STEP` (projective steps are never
/// longer). `resolution` is the initial number of grid intervals.
pub fn eval_real_loop(sys: &System, resolution: usize) -> Result<LoopSample> {
    let space = sys.space();
    if space.m * space.n < 3 {
        return Err(Error::UnsupportedParameters("loop evaluation needs mn >= 3".into()));
    }
    if sys.family() != Family::QR || !is_member(sys) {
        return Err(Error::invalid("loop evaluation needs a member of Q_R"));
    }
    if !space.is_equal_degree() {
        return Err(Error::invalid("loop evaluation needs equal degrees"));
    }
    let d = space.d;
    let jets: Vec<QPoly> = sys
        .real_polys()
        .expect("real family")
        .iter()
        .flat_map(|f| jet(f, space.n))
        .collect();
    let resolution = resolution.max(2);
    let mut ts: Vec<f64> = (0..=resolution).map(|i| -1.0 + 2.0 * i as f64 / resolution as f64).collect();
    let mut points: Vec<(ProjPoint, Vec<f64>)> =
        ts.par_iter().map(|&t| jet_point(&jets, d, alpha_of(t))).collect::<Result<_>>()?;
    loop {
        let bad: Vec<usize> = (0..ts.len() - 1)
            .filter(|&i| lifted_step(&points[i], &points[i + 1]) >= MAX_CHORDAL_STEP)
            .collect();
        if bad.is_empty() {
            break;
        }
        if ts.len() + bad.len() > MAX_LOOP_POINTS {
            return Err(Error::numerical(
                format!("loop refinement exceeded {MAX_LOOP_POINTS} points"),
                points.windows(2).map(|w| lifted_step(&w[0], &w[1])).fold(0.0, f64::max),
            ));
        }
        let mids: Vec<f64> = bad.iter().map(|&i| 0.5 * (ts[i] + ts[i + 1])).collect();
        let new_points: Vec<(ProjPoint, Vec<f64>)> =
            mids.par_iter().map(|&t| jet_point(&jets, d, alpha_of(t))).collect::<Result<_>>()?;
        let mut merged_t = Vec::with_capacity(ts.len() + mids.len());
        let mut merged_p = Vec::with_capacity(ts.len() + mids.len());
        let mut next = bad.iter().zip(mids.into_iter().zip(new_points)).peekable();
        for (i, (t, p)) in ts.into_iter().zip(points).enumerate() {
            merged_t.push(t);
            merged_p.push(p);
            if let Some((_, (mt, mp))) = next.next_if(|(&b, _)| b == i) {
                merged_t.push(mt);
                merged_p.push(mp);
            }
        }
        ts = merged_t;
        points = merged_p;
    }
    let alphas = ts.iter().map(|&t| alpha_of(t)).collect();
    let points: Vec<ProjPoint> = points.into_iter().map(|(p, _)| p).collect();
    let basepoint = points[0].clone();
    Ok(LoopSample { ts, alphas, points, basepoint })
}

/// Lifts the projective loop to the sphere by sign continuation; 0 if the
/// lift closes up, 1 if it ends at the antipode of its start.
pub fn loop_class_mod2(sample: &LoopSample) -> Result<u8> {
    let mut current = sample.basepoint.coords.clone();
    for (i, p) in sample.points.iter().enumerate().skip(1) {
        let (mut minus, mut plus) = (0.0, 0.0);
        for (a, b) in current.iter().zip(&p.coords) {
            minus += (a - b) * (a - b);
            plus += (a + b) * (a + b);
        }
        let step = minus.min(plus).sqrt();
        if step >= 1.0 {
            return Err(Error::RefineFirst { index: i, step });
        }
        let sign = if minus <= plus { 1.0 } else { -1.0 };
        current = p.coords.iter().map(|x| sign * x).collect();
    }
    let closes: f64 = current.iter().zip(&sample.basepoint.coords).map(|(a, b)| a * b).sum();
    Ok(if closes > 0.0 { 0 } else { 1 })
}

/// Number of conjugate root pairs of a real squarefree polynomial, which
/// indexes its component in `Poly^{d,1}_2(R)`.
pub fn component_index_12(f: &QPoly) -> Result<usize> {
    let d = f.degree().ok_or_else(|| Error::invalid("zero polynomial"))?;
    if d == 0 || !f.is_monic() {
        return Err(Error::invalid("component index needs a monic polynomial of degree >= 1"));
    }
    // the Sturm chain itself detects a repeated root
    let real = sturm_count(f, &Interval::WholeLine).map_err(|e| match e {
        Error::ContractViolation(_) => Error::invalid("component index needs a squarefree polynomial"),
        other => other,
    })?;
    Ok((d - real) / 2)
}

/// `Σ c_{k,t} (f_k + f_k^{(t)})` over the jet family, weights ordered slot
/// by slot.
pub fn hyperplane_pullback(sys: &System, weights: &[Rational]) -> Result<GaussPoly> {
    let jets = jet_family(sys);
    if weights.len() != jets.len() {
        return Err(Error::invalid(format!("expected {} weights, got {}", jets.len(), weights.len())));
    }
    if weights.iter().all(Zero::is_zero) {
        return Err(Error::invalid("weights must not all vanish"));
    }
    let mut out = GaussPoly::zero();
    for (p, c) in jets.iter().zip(weights) {
        out = &out + &p.scale(&GaussRational::from_rational(c.clone()));
    }
    Ok(out)
}

/// `1 + Σ 1/(z - a_k)` on the grid; `None` where a grid point hits a root.
pub fn electric_field_samples(roots: &[Complex64], grid: &[Complex64]) -> Result<Vec<Option<Complex64>>> {
    for (i, a) in roots.iter().enumerate() {
        if roots[..i].contains(a) {
            return Err(Error::invalid("electric field needs distinct roots"));
        }
    }
    Ok(grid
        .iter()
        .map(|z| {
            if roots.contains(z) {
                return None;
            }
            Some(roots.iter().fold(Complex64::new(1.0, 0.0), |acc, a| acc + (z - a).inv()))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceId;

    fn qr(d: usize, m: usize, n: usize, polys: &[&[i64]]) -> System {
        let space = SpaceId::new(Family::QR, d, m, n).unwrap();
        System::from_q(space, polys.iter().map(|c| QPoly::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn loop_points() {
        let sys = qr(1, 3, 1, &[&[0, 1], &[-1, 1], &[-2, 1]]);
        let s = eval_real_loop(&sys, 16).unwrap();
        let mid = s.ts.iter().position(|&t| t == 0.0).unwrap();
        assert_eq!(s.points[mid], ProjPoint::normalize(&[0.0, -1.0, -2.0]).unwrap());
        assert_eq!(s.points[0], ProjPoint::normalize(&[1.0, 1.0, 1.0]).unwrap());
        assert_eq!(s.points.last(), Some(&s.basepoint));
        assert!(s.max_step() < MAX_CHORDAL_STEP);
        assert_eq!(loop_class_mod2(&s).unwrap(), 1);

        let sys = qr(2, 3, 1, &[&[-1, 0, 1], &[-2, 0, 1], &[-3, 0, 1]]);
        assert_eq!(loop_class_mod2(&eval_real_loop(&sys, 8).unwrap()).unwrap(), 0);
    }

    #[test]
    fn coarse_sample_needs_refinement() {
        let a = ProjPoint::normalize(&[1.0, 0.0, 0.0]).unwrap();
        let b = ProjPoint::normalize(&[0.0, 1.0, 0.0]).unwrap();
        let s = LoopSample { ts: vec![-1.0, 1.0], alphas: vec![0.0; 2], points: vec![a.clone(), b], basepoint: a };
        assert!(matches!(loop_class_mod2(&s), Err(Error::RefineFirst { index: 1, .. })));
    }

    #[test]
    fn component_index_examples() {
        assert_eq!(component_index_12(&QPoly::from_ints(&[1, 0, 1])).unwrap(), 1);
        assert_eq!(component_index_12(&QPoly::from_ints(&[-1, 0, 1])).unwrap(), 0);
        let f = &(&QPoly::from_ints(&[1, 0, 1]) * &QPoly::from_ints(&[4, 0, 1])) * &QPoly::from_ints(&[-1, 1]);
        assert_eq!(component_index_12(&f).unwrap(), 2);
        assert!(component_index_12(&QPoly::from_ints(&[1, 2, 1])).is_err());
    }

    #[test]
    fn pullback_examples() {
        let space = SpaceId::new(Family::PolyR, 1, 2, 1).unwrap();
        let sys = System::from_q(space, vec![QPoly::from_ints(&[0, 1]), QPoly::from_ints(&[-1, 1])]).unwrap();
        let one = Rational::one();
        let p = hyperplane_pullback(&sys, &[one.clone(), one.clone()]).unwrap();
        assert_eq!(p, QPoly::from_ints(&[-1, 2]).to_gauss());
        let p = hyperplane_pullback(&sys, &[one.clone(), -one.clone()]).unwrap();
        assert_eq!(p, GaussPoly::one());
        assert!(hyperplane_pullback(&sys, &[Rational::zero(), Rational::zero()]).is_err());
    }

    #[test]
    fn electric_field_examples() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let v = electric_field_samples(&[c(0.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(v, vec![Some(c(2.0, 0.0)), None]);
        let v = electric_field_samples(&[c(0.0, 1.0), c(0.0, -1.0)], &[c(0.0, 0.0)]).unwrap();
        assert!((v[0].unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let v = electric_field_samples(&[c(1.0, 0.0), c(2.0, 0.0)], &[c(0.0, 0.0)]).unwrap();
        assert!((v[0].unwrap() - c(-0.5, 0.0)).norm() < 1e-15);
        assert!(electric_field_samples(&[c(1.0, 0.0), c(1.0, 0.0)], &[]).is_err());
    }

    #[test]
    fn conjugate_parameter_conjugates_values() {
        let space = SpaceId::new(Family::PolyC, 3, 2, 2).unwrap();
        let sys = System::new(
            space,
            vec![
                GaussPoly::new(vec![GaussRational::from_ints(1, 2), GaussRational::from_ints(0, -1), GaussRational::from_ints(0, 0), GaussRational::from_ints(1, 0)]),
                QPoly::from_ints(&[5, 0, -3, 1]).to_gauss(),
            ],
        )
        .unwrap();
        let alpha = GaussRational::from_ints(2, 3);
        for (p, pc) in jet_family(&sys).iter().zip(jet_family(&sys.conj())) {
            assert_eq!(pc.eval(&alpha.conj()), p.eval(&alpha).conj());
        }
    }
}
