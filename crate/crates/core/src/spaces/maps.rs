use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::membership::is_member;
use super::region::{RegionMap, REGION_MAP_VERSION};
use super::system::{Family, HplusParity, SpaceId, System};
use crate::error::{Error, Result};
use crate::polyarith::{
    derivative_coeffs, horner, poly_from_roots, rational_from_f64, roots_numeric, roots_of_coeffs, GaussPoly,
    GaussRational, QPoly,
};

/// Minimum jet residual a numeric output must keep at every candidate
/// common root.
pub const RECHECK_THRESHOLD: f64 = 1e-6;

/// Residual tolerance for root extraction inside the maps.
pub const ROOT_TOL: f64 = 1e-8;

/// Imaginary parts of real-family outputs must be below this (relative).
pub const REALNESS_TOL: f64 = 1e-8;

/// Result of a root-transplanting map: floating-point coefficients, tagged
/// with the region-map version that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSystem {
    space: SpaceId,
    polys: Vec<Vec<Complex64>>,
}

impl NumericSystem {
    fn new(space: SpaceId, mut polys: Vec<Vec<Complex64>>) -> Result<Self> {
        if space.family.is_real() {
            for p in polys.iter_mut() {
                for c in p.iter_mut() {
                    let limit = REALNESS_TOL * c.re.abs().max(1.0);
                    if c.im.abs() > limit {
                        return Err(Error::numerical("real-family output has a non-real coefficient", c.im.abs()));
                    }
                    c.im = 0.0;
                }
            }
        }
        Ok(NumericSystem { space, polys })
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn polys(&self) -> &[Vec<Complex64>] {
        &self.polys
    }

    pub fn region_map_version(&self) -> &'static str {
        REGION_MAP_VERSION
    }

    /// Largest normalized value of the jet family at `alpha`:
    /// `max_{k, t<n} |f_k^(t)(alpha)| / (1 + |alpha|)^deg f_k`.
    pub fn jet_residual(&self, alpha: Complex64) -> f64 {
        let scale = 1.0 + alpha.norm();
        let mut worst = 0.0_f64;
        for p in &self.polys {
            let deg = p.len() as i32 - 1;
            let mut der = p.clone();
            for _ in 0..self.space.n {
                if der.is_empty() {
                    break;
                }
                worst = worst.max(horner(&der, alpha).norm() / scale.powi(deg));
                der = derivative_coeffs(&der);
            }
        }
        worst
    }

    /// Numeric membership re-check. Returns the minimum jet residual over
    /// the candidate common roots (roots of every component).
    pub fn recheck(&self, threshold: f64) -> Result<f64> {
        let mut candidates = Vec::new();
        for p in &self.polys {
            candidates.extend(roots_of_coeffs(p, ROOT_TOL)?);
        }
        if self.space.family == Family::QR {
            candidates.retain(|r| r.im.abs() <= 1e-6 * (1.0 + r.norm()));
        }
        let min_residual = candidates
            .iter()
            .map(|&r| self.jet_residual(r))
            .fold(f64::INFINITY, f64::min);
        if min_residual <= threshold {
            return Err(Error::numerical("output lost membership: near-common root", min_residual));
        }
        if let Some(parity) = self.space.hplus_parity() {
            self.check_hplus_shape(parity)?;
        }
        Ok(min_residual)
    }

    fn check_hplus_shape(&self, parity: HplusParity) -> Result<()> {
        for (k, p) in self.polys.iter().enumerate() {
            let roots = roots_of_coeffs(p, ROOT_TOL)?;
            let real: Vec<Complex64> =
                roots.iter().copied().filter(|r| r.im.abs() <= 1e-7 * (1.0 + r.norm())).collect();
            let ok = match parity {
                HplusParity::Even => real.is_empty(),
                HplusParity::Odd => real.len() == 1 && (real[0].re - (k + 1) as f64).abs() < 1e-6,
            };
            if !ok {
                let worst = real.iter().map(|r| r.im.abs()).fold(0.0, f64::max);
                return Err(Error::numerical(format!("component {} leaves the half-plane shape", k + 1), worst));
            }
        }
        Ok(())
    }

    /// Exact system whose coefficients are the dyadic rationals equal to the
    /// stored doubles.
    pub fn to_exact(&self) -> Result<System> {
        let to_q = |x: f64| rational_from_f64(x).ok_or_else(|| Error::numerical("non-finite coefficient", x));
        let mut polys = Vec::with_capacity(self.polys.len());
        for p in &self.polys {
            let n = p.len();
            let mut coeffs = Vec::with_capacity(n);
            for (i, c) in p.iter().enumerate() {
                if i + 1 == n {
                    coeffs.push(GaussRational::from_ints(1, 0));
                } else {
                    coeffs.push(GaussRational::new(to_q(c.re)?, to_q(c.im)?));
                }
            }
            polys.push(GaussPoly::new(coeffs));
        }
        System::new(self.space.clone(), polys)
    }

    pub fn to_json(&self) -> NumericSystemJson {
        NumericSystemJson {
            family: self.space.family,
            d: self.space.d,
            m: self.space.m,
            n: self.space.n,
            degrees: self.space.explicit_degrees().map(<[usize]>::to_vec),
            region_map: REGION_MAP_VERSION.to_string(),
            polys: self.polys.iter().map(|p| p.iter().map(|c| [c.re, c.im]).collect()).collect(),
        }
    }
}

/// Wire form of a numeric system: each coefficient is `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericSystemJson {
    pub family: Family,
    pub d: usize,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    pub region_map: String,
    pub polys: Vec<Vec<[f64; 2]>>,
}

fn transplanted_roots(f: &GaussPoly, map: RegionMap) -> Result<Vec<Complex64>> {
    Ok(roots_numeric(f, ROOT_TOL)?.into_iter().map(|r| map.apply(r)).collect())
}

fn require_member(sys: &System, what: &str) -> Result<()> {
    if is_member(sys) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} requires a member of {}", sys.space())))
    }
}

/// Anchor points `x_{d,k} = d + k/(m+1)`, `k = 1..m`, inside `(d, d+1)`.
pub fn stabilization_anchors(d: usize, m: usize) -> Vec<f64> {
    (1..=m).map(|k| d as f64 + k as f64 / (m as f64 + 1.0)).collect()
}

/// Degree-raising map: moves every root into `Re < d` with `phi_d` and
/// appends the real root `x_{d,k}` in slot `k`.
///
/// Half-plane systems leave their literal `(z - k)` shape, so the output of
/// a `Poly_R_Hplus` input is declared in `Poly_R`.
pub fn stabilize(sys: &System) -> Result<NumericSystem> {
    let space = sys.space();
    if !space.is_equal_degree() {
        return Err(Error::UnsupportedParameters(
            "stabilize needs equal degrees; use stabilize_slot".into(),
        ));
    }
    require_member(sys, "stabilize")?;
    let d = space.d;
    let map = RegionMap::PhiD(d as f64);
    let anchors = stabilization_anchors(d, space.m);
    let polys = sys
        .polys()
        .iter()
        .zip(&anchors)
        .map(|(f, &x)| {
            let mut roots = transplanted_roots(f, map)?;
            roots.push(Complex64::new(x, 0.0));
            Ok(poly_from_roots(&roots))
        })
        .collect::<Result<Vec<_>>>()?;
    let family = match space.family {
        Family::PolyRHplus => Family::PolyR,
        f => f,
    };
    let out = NumericSystem::new(SpaceId::new(family, d + 1, space.m, space.n)?, polys)?;
    out.recheck(RECHECK_THRESHOLD)?;
    Ok(out)
}

/// Raises the degree of one slot only (`slot` is 0-based): all roots move
/// into `Re < d` for `d = max_k d_k`, and slot `slot` gains the root `d + 1/2`.
pub fn stabilize_slot(sys: &System, slot: usize) -> Result<NumericSystem> {
    let space = sys.space();
    if slot >= space.m {
        return Err(Error::invalid(format!("slot {slot} out of range")));
    }
    if !matches!(space.family, Family::PolyC | Family::PolyR) {
        return Err(Error::UnsupportedParameters(format!(
            "slot stabilization is defined for Poly_C and Poly_R, not {}",
            space.family
        )));
    }
    require_member(sys, "stabilize_slot")?;
    let d = space.d;
    let map = RegionMap::PhiD(d as f64);
    let mut degrees = space.degrees();
    degrees[slot] += 1;
    let polys = sys
        .polys()
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let mut roots = transplanted_roots(f, map)?;
            if k == slot {
                roots.push(Complex64::new(d as f64 + 0.5, 0.0));
            }
            Ok(poly_from_roots(&roots))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = NumericSystem::new(SpaceId::with_degrees(space.family, degrees, space.n)?, polys)?;
    out.recheck(RECHECK_THRESHOLD)?;
    Ok(out)
}

/// Loop product: roots of `a` go to the right half plane, roots of `b` to
/// the left, and the slots are multiplied.
pub fn loop_product(a: &System, b: &System) -> Result<NumericSystem> {
    let (sa, sb) = (a.space(), b.space());
    if sa.m != sb.m || sa.n != sb.n || sa.family != sb.family {
        return Err(Error::invalid("loop product needs the same (m, n, family)"));
    }
    require_member(a, "loop_product")?;
    require_member(b, "loop_product")?;
    let polys = a
        .polys()
        .iter()
        .zip(b.polys())
        .map(|(f, g)| {
            let mut roots = transplanted_roots(f, RegionMap::PhiRight)?;
            roots.extend(transplanted_roots(g, RegionMap::PsiLeft)?);
            Ok(poly_from_roots(&roots))
        })
        .collect::<Result<Vec<_>>>()?;
    let degrees: Vec<usize> = sa.degrees().iter().zip(sb.degrees()).map(|(x, y)| x + y).collect();
    let family = match sa.family {
        Family::PolyRHplus if degrees.iter().any(|d| d % 2 == 1) => Family::PolyR,
        f => f,
    };
    let out = NumericSystem::new(SpaceId::with_degrees(family, degrees, sa.n)?, polys)?;
    out.recheck(RECHECK_THRESHOLD)?;
    Ok(out)
}

/// Sends a `Poly_C` system of degree `d0` to a half-plane system of degree
/// `2 d0`: each root `a` becomes the conjugate pair `psi(a), conj(psi(a))`.
pub fn double_to_hplus(sys: &System) -> Result<NumericSystem> {
    let space = sys.space();
    if !space.is_equal_degree() {
        return Err(Error::UnsupportedParameters("doubling needs equal degrees".into()));
    }
    let as_c = sys.view_as(Family::PolyC)?;
    require_member(&as_c, "double_to_hplus")?;
    let polys = sys
        .polys()
        .iter()
        .map(|f| {
            let mut roots = Vec::with_capacity(2 * space.d);
            for w in transplanted_roots(f, RegionMap::PsiDouble)? {
                roots.push(w);
                roots.push(w.conj());
            }
            Ok(poly_from_roots(&roots))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = NumericSystem::new(SpaceId::new(Family::PolyRHplus, 2 * space.d, space.m, space.n)?, polys)?;
    out.recheck(RECHECK_THRESHOLD)?;
    Ok(out)
}

/// Exact real polynomial closest to a numeric real one (dyadic rounding).
pub fn numeric_to_qpoly(coeffs: &[Complex64]) -> Result<QPoly> {
    coeffs
        .iter()
        .map(|c| rational_from_f64(c.re).ok_or_else(|| Error::numerical("non-finite coefficient", c.re)))
        .collect::<Result<Vec<_>>>()
        .map(QPoly::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn sys(family: Family, d: usize, n: usize, polys: Vec<QPoly>) -> System {
        System::from_q(SpaceId::new(family, d, polys.len(), n).unwrap(), polys).unwrap()
    }

    fn close(got: &[Complex64], want: &[f64], tol: f64) -> bool {
        got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - Complex64::new(*w, 0.0)).norm() < tol)
    }

    #[test]
    fn doubling_examples() {
        let out = double_to_hplus(&sys(Family::PolyC, 1, 2, vec![p(&[0, 1])])).unwrap();
        assert!(close(&out.polys()[0], &[1.0, 0.0, 1.0], 1e-12));
        let out = double_to_hplus(&sys(Family::PolyC, 1, 2, vec![p(&[-1, 1])])).unwrap();
        assert!(close(&out.polys()[0], &[2.0, -2.0, 1.0], 1e-12));
        let out = double_to_hplus(&sys(Family::PolyC, 1, 1, vec![p(&[0, 1]), p(&[-1, 1])])).unwrap();
        assert!(close(&out.polys()[0], &[1.0, 0.0, 1.0], 1e-12));
        assert!(close(&out.polys()[1], &[2.0, -2.0, 1.0], 1e-12));
        assert_eq!(out.space().family, Family::PolyRHplus);
        assert_eq!(out.space().d, 2);
    }

    #[test]
    fn loop_product_example() {
        let f = sys(Family::PolyR, 1, 2, vec![p(&[0, 1])]);
        let out = loop_product(&f, &f).unwrap();
        assert!(close(&out.polys()[0], &[-1.0, 0.0, 1.0], 1e-12));
        assert_eq!(out.space().d, 2);
    }

    #[test]
    fn stabilize_example() {
        let s = sys(Family::PolyR, 1, 1, vec![p(&[0, 1]), p(&[-1, 1])]);
        let out = stabilize(&s).unwrap();
        let x = stabilization_anchors(1, 2);
        assert!((x[0] - 4.0 / 3.0).abs() < 1e-15 && (x[1] - 5.0 / 3.0).abs() < 1e-15);
        let r1 = 1.0 - (-1.0_f64).exp();
        let want0 = poly_from_roots(&[Complex64::new(x[0], 0.0), Complex64::new(0.0, 0.0)]);
        let want1 = poly_from_roots(&[Complex64::new(x[1], 0.0), Complex64::new(r1, 0.0)]);
        for (got, want) in out.polys().iter().zip([want0, want1]) {
            assert!(got.iter().zip(&want).all(|(g, w)| (g - w).norm() < 1e-10));
        }
        assert_eq!(out.space().d, 2);
    }

    #[test]
    fn maps_reject_non_members() {
        let bad = sys(Family::PolyR, 2, 1, vec![p(&[1, 0, 1]), p(&[1, 0, 1])]);
        assert!(matches!(stabilize(&bad), Err(Error::InvalidInput(_))));
        assert!(matches!(loop_product(&bad, &bad), Err(Error::InvalidInput(_))));
        assert!(matches!(double_to_hplus(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn slot_stabilization_raises_one_degree() {
        let s = sys(Family::PolyR, 2, 1, vec![p(&[1, 0, 1]), p(&[-1, 0, 1])]);
        let out = stabilize_slot(&s, 1).unwrap();
        assert_eq!(out.space().degrees(), vec![2, 3]);
        assert!(stabilize_slot(&s, 2).is_err());
    }

    #[test]
    fn recheck_flags_common_root() {
        let space = SpaceId::new(Family::PolyR, 1, 2, 1).unwrap();
        let z = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let ns = NumericSystem::new(space, vec![z.clone(), z]).unwrap();
        assert!(matches!(ns.recheck(RECHECK_THRESHOLD), Err(Error::NumericalFailure { .. })));
    }

    #[test]
    fn to_exact_round_trips_dyadics() {
        let f = sys(Family::PolyR, 1, 2, vec![p(&[0, 1])]);
        let out = loop_product(&f, &f).unwrap();
        let exact = out.to_exact().unwrap();
        assert!(is_member(&exact));
        assert_eq!(exact.space().d, 2);
    }
}
