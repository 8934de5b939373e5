use serde::{Deserialize, Serialize};

use super::coeff::{format_rational, parse_rational, GaussRational};
use super::poly::{GaussPoly, QPoly};
use crate::error::Result;

/// One serialized coefficient: `"p/q"` for real values,
/// `{"re": "p/q", "im": "p/q"}` for Gaussian ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Real(String),
    Gauss { re: String, im: String },
}

impl CoeffJson {
    pub fn parse(&self) -> Result<GaussRational> {
        match self {
            CoeffJson::Real(s) => Ok(GaussRational::from(parse_rational(s)?)),
            CoeffJson::Gauss { re, im } => Ok(GaussRational::new(parse_rational(re)?, parse_rational(im)?)),
        }
    }

    pub fn from_gauss(c: &GaussRational) -> Self {
        if c.is_real() {
            CoeffJson::Real(format_rational(&c.re))
        } else {
            CoeffJson::Gauss { re: format_rational(&c.re), im: format_rational(&c.im) }
        }
    }
}

/// `{"coeffs": [...]}`, ascending degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<CoeffJson>,
}

impl PolyJson {
    pub fn from_gauss(p: &GaussPoly) -> Self {
        PolyJson { coeffs: p.coeffs().iter().map(CoeffJson::from_gauss).collect() }
    }

    pub fn from_q(p: &QPoly) -> Self {
        PolyJson::from_gauss(&p.to_gauss())
    }

    pub fn to_gauss(&self) -> Result<GaussPoly> {
        json_coeffs_to_poly(&self.coeffs)
    }
}

pub fn json_coeffs_to_poly(coeffs: &[CoeffJson]) -> Result<GaussPoly> {
    Ok(GaussPoly::new(coeffs.iter().map(CoeffJson::parse).collect::<Result<_>>()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p = GaussPoly::new(vec![GaussRational::i(), GaussRational::from_ints(1, 0)]);
        let s = serde_json::to_string(&PolyJson::from_gauss(&p)).unwrap();
        assert_eq!(s, r#"{"coeffs":[{"re":"0/1","im":"1/1"},"1/1"]}"#);
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_gauss().unwrap(), p);
    }
}
