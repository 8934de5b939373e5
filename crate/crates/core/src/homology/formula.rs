use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::braid::{dj_from_table, BraidTable};
use super::graded::{FieldChoice, GradedDims};
use crate::error::{Error, Result};

/// Building block of a wedge: a sphere or a Snaith summand `D_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SummandKind {
    Sphere(usize),
    Dj(usize),
}

/// `Σ^shift` of a sphere or of `D_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub shift: usize,
    pub kind: SummandKind,
}

impl Summand {
    pub fn sphere(dim: usize) -> Self {
        Summand { shift: 0, kind: SummandKind::Sphere(dim) }
    }

    pub fn suspended_dj(shift: usize, j: usize) -> Self {
        Summand { shift, kind: SummandKind::Dj(j) }
    }

    /// Lowest degree carrying reduced homology (over either field).
    pub fn connectivity_bound(&self) -> usize {
        match self.kind {
            SummandKind::Sphere(a) => self.shift + a,
            SummandKind::Dj(j) => self.shift + j,
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SummandKind::Sphere(a) => write!(f, "S^{}", self.shift + a),
            SummandKind::Dj(j) if self.shift == 0 => write!(f, "D_{j}"),
            SummandKind::Dj(j) => write!(f, "Σ^{}D_{}", self.shift, j),
        }
    }
}

/// A wedge of suspended summands; reduced homology is the direct sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFormula {
    pub summands: Vec<Summand>,
}

impl SpaceFormula {
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn wedge(mut self, other: SpaceFormula) -> Self {
        self.summands.extend(other.summands);
        self
    }

    /// Summands in a canonical order, for comparisons.
    pub fn sorted(&self) -> Vec<Summand> {
        let mut v = self.summands.clone();
        v.sort();
        v
    }

    /// Largest `j` among the `D_j` summands.
    pub fn max_j(&self) -> usize {
        self.summands
            .iter()
            .filter_map(|s| match s.kind {
                SummandKind::Dj(j) => Some(j),
                SummandKind::Sphere(_) => None,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for SpaceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "*");
        }
        let parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ∨ "))
    }
}

/// The spaces the engine has stable splittings for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    PolyC,
    PolyR,
    QR,
    /// Mixed summands `Σ^{(mn-2)(i+2j)} D_j`, `i, j >= 1`.
    B,
    /// Model space `Poly_C(floor(d/2)) ∨ B ∨ Q_R` matching the E1 page.
    P,
}

impl SpaceKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "polyc" => Ok(SpaceKind::PolyC),
            "polyr" => Ok(SpaceKind::PolyR),
            "qr" | "q" => Ok(SpaceKind::QR),
            "b" => Ok(SpaceKind::B),
            "p" => Ok(SpaceKind::P),
            _ => Err(Error::Parse(format!("unknown space {s:?}"))),
        }
    }
}

/// Stable splitting of a space as a wedge of spheres and suspended `D_j`.
pub fn space_formula(space: SpaceKind, d: usize, m: usize, n: usize) -> Result<SpaceFormula> {
    if m * n < 3 {
        return Err(Error::UnsupportedParameters(format!("splittings need mn >= 3, got mn = {}", m * n)));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let k = d / n;
    let a = m * n - 2;
    let mut summands = Vec::new();
    match space {
        SpaceKind::PolyC => {
            summands.extend((1..=k).map(|j| Summand::suspended_dj(2 * a * j, j)));
        }
        SpaceKind::QR => {
            summands.extend((1..=k).map(|i| Summand::sphere(a * i)));
        }
        SpaceKind::PolyR => {
            summands.extend((1..=k).map(|i| Summand::sphere(a * i)));
            for j in 1..=k / 2 {
                for i in 0..=k - 2 * j {
                    summands.push(Summand::suspended_dj(a * (i + 2 * j), j));
                }
            }
        }
        SpaceKind::B => {
            for j in 1..=k / 2 {
                for i in 1..=k - 2 * j {
                    summands.push(Summand::suspended_dj(a * (i + 2 * j), j));
                }
            }
        }
        SpaceKind::P => {
            return Ok(space_formula(SpaceKind::PolyC, d / 2, m, n)?
                .wedge(space_formula(SpaceKind::B, d, m, n)?)
                .wedge(space_formula(SpaceKind::QR, d, m, n)?));
        }
    }
    Ok(SpaceFormula { summands })
}

/// Betti-number engine: holds the braid homology cache and, for harness
/// tests, optional replacement tables for individual `D_j`.
#[derive(Clone, Debug)]
pub struct HomologyEngine {
    table: BraidTable,
    overrides: HashMap<(usize, FieldChoice), GradedDims>,
}

impl HomologyEngine {
    pub fn new(jmax: usize, qmax: usize) -> Self {
        HomologyEngine { table: BraidTable::new(jmax.max(1), qmax), overrides: HashMap::new() }
    }

    /// Replaces the reduced homology used for `D_j` over `field`.
    pub fn with_dj_override(mut self, j: usize, field: FieldChoice, dims: GradedDims) -> Self {
        self.overrides.insert((j, field), dims);
        self
    }

    pub fn qmax(&self) -> usize {
        self.table.qmax()
    }

    pub fn jmax(&self) -> usize {
        self.table.jmax()
    }

    fn ensure(&self, j: usize, qmax: usize) {
        assert!(
            j <= self.table.jmax() && qmax <= self.table.qmax(),
            "engine sized for j <= {}, q <= {}; asked j = {j}, q = {qmax}",
            self.table.jmax(),
            self.table.qmax()
        );
    }

    /// Reduced homology of `D_j` through `qmax`.
    pub fn dj(&self, j: usize, field: FieldChoice, qmax: usize) -> GradedDims {
        if let Some(o) = self.overrides.get(&(j, field)) {
            let mut out = GradedDims::zeros(field, qmax, true);
            out.add_shifted(o, 0);
            return out;
        }
        self.ensure(j, qmax);
        dj_from_table(&self.table, j, field, qmax)
    }

    /// Unreduced `dim H_*(C_j(C); F2)`.
    pub fn cj(&self, j: usize, qmax: usize) -> GradedDims {
        self.ensure(j, qmax);
        self.table.cj(j, qmax)
    }

    pub fn summand_betti(&self, s: &Summand, field: FieldChoice, qmax: usize) -> GradedDims {
        let mut out = GradedDims::zeros(field, qmax, true);
        match s.kind {
            SummandKind::Sphere(a) => out.add_at(s.shift + a, 1),
            SummandKind::Dj(j) => {
                if s.connectivity_bound() <= qmax {
                    out.add_shifted(&self.dj(j, field, qmax - s.shift), s.shift);
                }
            }
        }
        out
    }

    /// Reduced homology of a wedge.
    pub fn betti_of_formula(&self, formula: &SpaceFormula, field: FieldChoice, qmax: usize) -> GradedDims {
        let mut out = GradedDims::zeros(field, qmax, true);
        for s in &formula.summands {
            out.add_shifted(&self.summand_betti(s, field, qmax), 0);
        }
        out
    }
}

/// Reduced homology of a wedge, with a freshly sized engine.
pub fn betti_of_formula(formula: &SpaceFormula, field: FieldChoice, qmax: usize) -> GradedDims {
    HomologyEngine::new(formula.max_j(), qmax).betti_of_formula(formula, field, qmax)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(v: Vec<Summand>) -> Vec<Summand> {
        SpaceFormula { summands: v }.sorted()
    }

    #[test]
    fn formula_examples() {
        let f = space_formula(SpaceKind::PolyR, 4, 2, 2).unwrap();
        assert_eq!(
            f.sorted(),
            sorted(vec![Summand::sphere(2), Summand::sphere(4), Summand::suspended_dj(4, 1)])
        );
        let q = space_formula(SpaceKind::QR, 9, 2, 2).unwrap();
        assert_eq!(q.sorted(), sorted((1..=4).map(|i| Summand::sphere(2 * i)).collect()));
        assert!(space_formula(SpaceKind::B, 4, 2, 2).unwrap().is_empty());
        let f = space_formula(SpaceKind::PolyR, 6, 2, 2).unwrap();
        assert_eq!(
            f.sorted(),
            sorted(vec![
                Summand::sphere(2),
                Summand::sphere(4),
                Summand::sphere(6),
                Summand::suspended_dj(4, 1),
                Summand::suspended_dj(6, 1),
            ])
        );
        assert!(matches!(space_formula(SpaceKind::PolyR, 4, 1, 2), Err(Error::UnsupportedParameters(_))));
    }

    #[test]
    fn betti_examples() {
        let f = space_formula(SpaceKind::PolyR, 4, 2, 2).unwrap();
        let b = betti_of_formula(&f, FieldChoice::F2, 8);
        assert_eq!(b.dims, vec![0, 0, 1, 0, 1, 1, 0, 0, 0]);
        for field in FieldChoice::BOTH {
            let q = betti_of_formula(&space_formula(SpaceKind::QR, 9, 2, 2).unwrap(), field, 10);
            assert_eq!(q.dims, vec![0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0]);
        }
        assert_eq!(betti_of_formula(&SpaceFormula::default(), FieldChoice::Q, 3).total(), 0);
    }

    #[test]
    fn p_is_a_wedge_of_three() {
        let p = space_formula(SpaceKind::P, 12, 2, 2).unwrap();
        let parts = space_formula(SpaceKind::PolyC, 6, 2, 2).unwrap().summands.len()
            + space_formula(SpaceKind::B, 12, 2, 2).unwrap().summands.len()
            + space_formula(SpaceKind::QR, 12, 2, 2).unwrap().summands.len();
        assert_eq!(p.summands.len(), parts);
        assert_eq!(format!("{}", space_formula(SpaceKind::QR, 4, 2, 2).unwrap()), "S^2 ∨ S^4");
    }
}
