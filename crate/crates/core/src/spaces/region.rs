use num_complex::Complex64;

/// Version tag attached to every output of a root-transplanting map. Outputs
/// depend pointwise on the concrete homeomorphisms below.
pub const REGION_MAP_VERSION: &str = "exp-v1";

/// The fixed homeomorphisms used to move roots into regions of the plane.
///
/// All of them act separately on real and imaginary parts, so the three
/// horizontal maps commute with complex conjugation exactly in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegionMap {
    /// `x + iy -> e^x + iy`, onto `Re > 0`.
    PhiRight,
    /// `x + iy -> -e^(-x) + iy`, onto `Re < 0`.
    PsiLeft,
    /// `x + iy -> (d - e^(-x)) + iy`, onto `Re < d`.
    PhiD(f64),
    /// `x + iy -> x + i e^y`, onto the upper half plane.
    PsiDouble,
}

impl RegionMap {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        match *self {
            RegionMap::PhiRight => Complex64::new(z.re.exp(), z.im),
            RegionMap::PsiLeft => Complex64::new(-(-z.re).exp(), z.im),
            RegionMap::PhiD(d) => Complex64::new(d - (-z.re).exp(), z.im),
            RegionMap::PsiDouble => Complex64::new(z.re, z.im.exp()),
        }
    }

    /// Whether `w` lies in the image region.
    pub fn contains(&self, w: Complex64) -> bool {
        match *self {
            RegionMap::PhiRight => w.re > 0.0,
            RegionMap::PsiLeft => w.re < 0.0,
            RegionMap::PhiD(d) => w.re < d,
            RegionMap::PsiDouble => w.im > 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RegionMap::PhiRight => "phi_right",
            RegionMap::PsiLeft => "psi_left",
            RegionMap::PhiD(_) => "phi_d",
            RegionMap::PsiDouble => "psi_double",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_equivariance_is_exact() {
        let samples = [Complex64::new(0.3, -1.7), Complex64::new(-4.0, 2.5), Complex64::new(1e-3, 0.0)];
        for map in [RegionMap::PhiRight, RegionMap::PsiLeft, RegionMap::PhiD(3.0)] {
            for z in samples {
                assert_eq!(map.apply(z.conj()), map.apply(z).conj());
                assert!(map.contains(map.apply(z)));
            }
            assert_eq!(map.apply(Complex64::new(0.7, 0.0)).im, 0.0);
        }
        for z in samples {
            assert!(RegionMap::PsiDouble.contains(RegionMap::PsiDouble.apply(z)));
        }
    }

    #[test]
    fn anchor_values() {
        assert_eq!(RegionMap::PhiRight.apply(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
        assert_eq!(RegionMap::PsiLeft.apply(Complex64::new(0.0, 0.0)), Complex64::new(-1.0, 0.0));
        assert_eq!(RegionMap::PhiD(1.0).apply(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
        assert_eq!(RegionMap::PsiDouble.apply(Complex64::new(1.0, 0.0)), Complex64::new(1.0, 1.0));
    }
}
