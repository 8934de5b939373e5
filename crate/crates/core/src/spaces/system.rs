use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyarith::{CoeffJson, GaussPoly, QPoly};

/// Which of the four spaces a system is declared to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// No common root of multiplicity `>= n` over C.
    #[serde(rename = "Poly_C")]
    PolyC,
    /// Real coefficients, no common root of multiplicity `>= n` over C.
    #[serde(rename = "Poly_R")]
    PolyR,
    /// Real coefficients, no common *real* root of multiplicity `>= n`.
    #[serde(rename = "Q_R")]
    QR,
    /// `Poly_R` systems whose components have all roots in the upper/lower
    /// half planes (even degree), or are `(z - k) h_k` with such `h_k` in
    /// slot `k` (odd degree).
    #[serde(rename = "Poly_R_Hplus")]
    PolyRHplus,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::PolyC, Family::PolyR, Family::QR, Family::PolyRHplus];

    pub fn is_real(self) -> bool {
        self != Family::PolyC
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PolyC => "Poly_C",
            Family::PolyR => "Poly_R",
            Family::QR => "Q_R",
            Family::PolyRHplus => "Poly_R_Hplus",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace(['_', '-'], "");
        match norm.as_str() {
            "polyc" => Ok(Family::PolyC),
            "polyr" => Ok(Family::PolyR),
            "qr" => Ok(Family::QR),
            "polyrhplus" | "hplus" => Ok(Family::PolyRHplus),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parity handling for `Poly_R_Hplus`: even degree is the plain half-plane
/// condition, odd degree carries the extra real root `k` in slot `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HplusParity {
    Even,
    Odd,
}

/// A space `family^{d,m}_n`, optionally with per-slot degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceId {
    pub family: Family,
    pub d: usize,
    pub m: usize,
    pub n: usize,
    degrees: Option<Vec<usize>>,
}

impl SpaceId {
    pub fn new(family: Family, d: usize, m: usize, n: usize) -> Result<Self> {
        if d == 0 || m == 0 || n == 0 {
            return Err(Error::invalid("d, m, n must be positive"));
        }
        if (m, n) == (1, 1) {
            return Err(Error::invalid("(m, n) = (1, 1) is excluded"));
        }
        Ok(SpaceId { family, d, m, n, degrees: None })
    }

    /// Space of tuples with per-slot degrees `degrees[k]`. Only `Poly_C` and
    /// `Poly_R` are defined for unequal degrees.
    pub fn with_degrees(family: Family, degrees: Vec<usize>, n: usize) -> Result<Self> {
        let m = degrees.len();
        let d = degrees.iter().copied().max().unwrap_or(0);
        let mut id = SpaceId::new(family, d, m, n)?;
        if degrees.iter().any(|&x| x == 0) {
            return Err(Error::invalid("slot degrees must be positive"));
        }
        if degrees.iter().all(|&x| x == d) {
            return Ok(id);
        }
        if !matches!(family, Family::PolyC | Family::PolyR) {
            return Err(Error::UnsupportedParameters(format!(
                "{family} is only defined for equal degrees"
            )));
        }
        id.degrees = Some(degrees);
        Ok(id)
    }

    pub fn slot_degree(&self, k: usize) -> usize {
        self.degrees.as_ref().map_or(self.d, |v| v[k])
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.m).map(|k| self.slot_degree(k)).collect()
    }

    pub fn explicit_degrees(&self) -> Option<&[usize]> {
        self.degrees.as_deref()
    }

    pub fn is_equal_degree(&self) -> bool {
        self.degrees.is_none()
    }

    pub fn hplus_parity(&self) -> Option<HplusParity> {
        (self.family == Family::PolyRHplus).then(|| {
            if self.d % 2 == 0 {
                HplusParity::Even
            } else {
                HplusParity::Odd
            }
        })
    }

    pub fn with_family(&self, family: Family) -> Result<Self> {
        match &self.degrees {
            Some(deg) => SpaceId::with_degrees(family, deg.clone(), self.n),
            None => SpaceId::new(family, self.d, self.m, self.n),
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.degrees {
            None => write!(f, "{}^{{{},{}}}_{}", self.family, self.d, self.m, self.n),
            Some(deg) => write!(f, "{}^{{{:?};{}}}_{}", self.family, deg, self.m, self.n),
        }
    }
}

/// An m-tuple of monic polynomials declared to lie in a space.
///
/// Coefficients are stored over Q(i); real families are validated to carry
/// purely real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct System {
    space: SpaceId,
    polys: Vec<GaussPoly>,
}

impl System {
    pub fn new(space: SpaceId, polys: Vec<GaussPoly>) -> Result<Self> {
        if polys.len() != space.m {
            return Err(Error::invalid(format!("expected {} polynomials, got {}", space.m, polys.len())));
        }
        for (k, p) in polys.iter().enumerate() {
            if !p.is_monic() {
                return Err(Error::invalid(format!("polynomial {} is not monic", k + 1)));
            }
            if p.degree() != Some(space.slot_degree(k)) {
                return Err(Error::invalid(format!(
                    "polynomial {} has degree {:?}, expected {}",
                    k + 1,
                    p.degree(),
                    space.slot_degree(k)
                )));
            }
            if space.family.is_real() && !p.is_real() {
                return Err(Error::invalid(format!(
                    "{} requires real coefficients (polynomial {})",
                    space.family,
                    k + 1
                )));
            }
        }
        Ok(System { space, polys })
    }

    pub fn from_q(space: SpaceId, polys: Vec<QPoly>) -> Result<Self> {
        System::new(space, polys.iter().map(QPoly::to_gauss).collect())
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn family(&self) -> Family {
        self.space.family
    }

    pub fn polys(&self) -> &[GaussPoly] {
        &self.polys
    }

    pub fn is_real(&self) -> bool {
        self.polys.iter().all(GaussPoly::is_real)
    }

    /// The components over Q, if every coefficient is real.
    pub fn real_polys(&self) -> Option<Vec<QPoly>> {
        self.polys.iter().map(GaussPoly::to_real).collect()
    }

    /// Same tuple, declared in another family.
    pub fn view_as(&self, family: Family) -> Result<Self> {
        System::new(self.space.with_family(family)?, self.polys.clone())
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        System { space: self.space.clone(), polys: self.polys.iter().map(GaussPoly::conj).collect() }
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            family: self.space.family,
            d: self.space.d,
            m: self.space.m,
            n: self.space.n,
            degrees: self.space.explicit_degrees().map(<[usize]>::to_vec),
            polys: self
                .polys
                .iter()
                .map(|p| p.coeffs().iter().map(CoeffJson::from_gauss).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &SystemJson) -> Result<Self> {
        let space = match &json.degrees {
            Some(deg) => {
                if deg.len() != json.m {
                    return Err(Error::invalid("\"degrees\" must have m entries"));
                }
                SpaceId::with_degrees(json.family, deg.clone(), json.n)?
            }
            None => SpaceId::new(json.family, json.d, json.m, json.n)?,
        };
        let polys = json
            .polys
            .iter()
            .map(|c| crate::polyarith::json_coeffs_to_poly(c))
            .collect::<Result<Vec<_>>>()?;
        System::new(space, polys)
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let json: SystemJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        System::from_json(&json)
    }
}

/// Wire form: `{"family":"Poly_R","d":4,"m":2,"n":2,"polys":[[...],[...]]}`,
/// with an optional `"degrees"` overriding `d` slot by slot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub family: Family,
    #[serde(default)]
    pub d: usize,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    pub polys: Vec<Vec<CoeffJson>>,
}

/// Indexes the stratum of non-members whose common n-fold roots are `i`
/// distinct real points and `j` distinct conjugate pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumSignature {
    pub i: usize,
    pub j: usize,
}

impl StratumSignature {
    pub fn k(&self) -> usize {
        self.i + self.j
    }

    /// Every common n-fold root uses `n` degrees of each component, and each
    /// conjugate pair counts twice.
    pub fn fits_budget(&self, d: usize, n: usize) -> bool {
        n * (self.k() + self.j) <= d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_parameters() {
        assert!(SpaceId::new(Family::PolyR, 3, 1, 1).is_err());
        assert!(SpaceId::new(Family::PolyR, 0, 2, 1).is_err());
        assert!(SpaceId::with_degrees(Family::QR, vec![2, 3], 2).is_err());
        let s = SpaceId::with_degrees(Family::PolyR, vec![2, 3], 2).unwrap();
        assert_eq!(s.degrees(), vec![2, 3]);
        assert_eq!(s.d, 3);
        assert!(SpaceId::with_degrees(Family::QR, vec![3, 3], 2).unwrap().is_equal_degree());
    }

    #[test]
    fn rejects_malformed_systems() {
        let space = SpaceId::new(Family::PolyR, 2, 1, 2).unwrap();
        assert!(System::from_q(space.clone(), vec![QPoly::from_ints(&[0, 0, 2])]).is_err());
        assert!(System::from_q(space.clone(), vec![QPoly::from_ints(&[0, 1])]).is_err());
        let complex = GaussPoly::new(vec![crate::polyarith::GaussRational::i(), Default::default(), num_traits::One::one()]);
        assert!(System::new(space, vec![complex]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"family":"Poly_R","d":4,"m":2,"n":2,"polys":[["1/1","0/1","0","0","1"],["-1","0","0","0","1"]]}"#;
        let sys = System::parse_json(s).unwrap();
        assert_eq!(sys.space().d, 4);
        let again = System::from_json(&sys.to_json()).unwrap();
        assert_eq!(again, sys);

        let uneven = r#"{"family":"Poly_C","m":2,"n":1,"degrees":[1,2],"polys":[["0","1"],[{"re":"0","im":"1"},"0","1"]]}"#;
        let sys = System::parse_json(uneven).unwrap();
        assert_eq!(sys.space().degrees(), vec![1, 2]);
        assert!(!sys.is_real());
    }

    #[test]
    fn budget() {
        assert!(StratumSignature { i: 1, j: 1 }.fits_budget(6, 2));
        assert!(!StratumSignature { i: 1, j: 1 }.fits_budget(5, 2));
    }
}
