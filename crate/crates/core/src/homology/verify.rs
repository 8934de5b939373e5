//! Degree-by-degree checks of the stable-range theorems against the engine.

use rayon::prelude::*;
use serde::Serialize;

use super::e1::{e1_table_with, JRange};
use super::formula::{space_formula, HomologyEngine, SpaceKind, Summand};
use super::graded::{FieldChoice, GradedDims};
use super::loops::{betti_loop_model, omega2_sphere};
use crate::error::{Error, Result};

/// Stability dimensions `(D(d;m,n), D(d;m,n;C))`:
/// `(mn-2)(floor(d/n)+1) - 1` and `(2mn-3)(floor(d/n)+1) - 1`.
pub fn stability_dims(d: usize, m: usize, n: usize) -> Result<(usize, usize)> {
    if (m, n) == (1, 1) || m == 0 || n == 0 {
        return Err(Error::invalid("(m, n) must be positive and not (1, 1)"));
    }
    if d == 0 {
        return Err(Error::invalid("d must be positive"));
    }
    let k1 = d / n + 1;
    let mn = m * n;
    Ok(((mn - 2) * k1 - 1, (2 * mn - 3) * k1 - 1))
}

/// Default degree bound: the complex stability dimension plus 10, so reports
/// always cross the stable-range boundary.
pub fn default_qmax(d: usize, m: usize, n: usize) -> Result<usize> {
    Ok(stability_dims(d, m, n)?.1 + 10)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckId {
    /// Poly_R splitting vs `Ω²S^{2mn-1} × ΩS^{mn-1}` through `D(d;m,n)`.
    #[serde(rename = "a")]
    RealLoopModel,
    /// Poly_C splitting vs `Ω²S^{2mn-1}` through `D(d;m,n;C)`.
    #[serde(rename = "b")]
    ComplexLoopModel,
    /// Q_R splitting vs the James stage of `ΩS^{mn-1}` through `D(d;m,n)`.
    #[serde(rename = "c")]
    JamesModel,
    /// E1 antidiagonal totals vs the model space `P`.
    #[serde(rename = "d")]
    E1Totals,
    /// `Poly_R(d,m,n)` vs `Poly_R(floor(d/n), mn, 1)`.
    #[serde(rename = "e")]
    DegreeShift,
    /// `Poly_R(d)` vs `Poly_R(d+1)`.
    #[serde(rename = "f")]
    Stabilization,
    /// Snaith summands vs `Ω²S^{2mn-1}`.
    #[serde(rename = "g")]
    Snaith,
}

impl CheckId {
    pub const ALL: [CheckId; 7] = [
        CheckId::RealLoopModel,
        CheckId::ComplexLoopModel,
        CheckId::JamesModel,
        CheckId::E1Totals,
        CheckId::DegreeShift,
        CheckId::Stabilization,
        CheckId::Snaith,
    ];

    pub fn letter(self) -> char {
        match self {
            CheckId::RealLoopModel => 'a',
            CheckId::ComplexLoopModel => 'b',
            CheckId::JamesModel => 'c',
            CheckId::E1Totals => 'd',
            CheckId::DegreeShift => 'e',
            CheckId::Stabilization => 'f',
            CheckId::Snaith => 'g',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub q: usize,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    /// Degrees `0..=through` were compared.
    pub through: usize,
    pub passed: bool,
    pub failures: Vec<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub field: FieldChoice,
    pub qmax: usize,
    pub d_real: usize,
    pub d_complex: usize,
    /// For `mn = 3` the real-case statements are homology equivalences only.
    pub homology_only: bool,
    /// First degree above `D(d;m,n)` where check (a) disagrees, if any
    /// within `qmax`.
    pub first_disagreement_above_range: Option<usize>,
    pub checks: Vec<CheckResult>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: CheckId) -> &CheckResult {
        self.checks.iter().find(|c| c.id == id).expect("all checks are run")
    }

    /// `(check, q, lhs, rhs)` for every failed degree.
    pub fn failures(&self) -> Vec<(char, usize, u64, u64)> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| (c.id.letter(), f.q, f.lhs, f.rhs)))
            .collect()
    }
}

fn compare(id: CheckId, lhs: &GradedDims, rhs: &GradedDims, through: usize) -> CheckResult {
    let failures: Vec<Discrepancy> = (0..=through)
        .filter(|&q| lhs.get(q) != rhs.get(q))
        .map(|q| Discrepancy { q, lhs: lhs.get(q), rhs: rhs.get(q) })
        .collect();
    CheckResult { id, through, passed: failures.is_empty(), failures }
}

/// Engine sized for every summand `verify_theorems` touches at `(d, m, n, qmax)`.
pub fn engine_for_verify(d: usize, m: usize, n: usize, qmax: usize) -> HomologyEngine {
    let mn = m * n;
    let snaith_j = qmax / (2 * mn - 3).max(1) + 1;
    HomologyEngine::new((d / n + 1).max(snaith_j), qmax)
}

/// `⊕_{j>=1} H~(Σ^{2(mn-2)j} D_j)` through `qmax`.
pub fn snaith_sum(engine: &HomologyEngine, mn: usize, field: FieldChoice, qmax: usize) -> GradedDims {
    let mut out = GradedDims::zeros(field, qmax, true);
    let mut j = 1;
    loop {
        let s = Summand::suspended_dj(2 * (mn - 2) * j, j);
        if s.connectivity_bound() > qmax {
            break;
        }
        out.add_shifted(&engine.summand_betti(&s, field, qmax), 0);
        j += 1;
    }
    out
}

/// Runs checks (a)-(g) for one parameter cell.
pub fn verify_theorems(d: usize, m: usize, n: usize, field: FieldChoice, qmax: Option<usize>) -> Result<TheoremReport> {
    let qmax = match qmax {
        Some(q) => q,
        None => default_qmax(d, m, n)?,
    };
    verify_with_engine(&engine_for_verify(d, m, n, qmax), d, m, n, field, qmax)
}

pub fn verify_with_engine(
    engine: &HomologyEngine,
    d: usize,
    m: usize,
    n: usize,
    field: FieldChoice,
    qmax: usize,
) -> Result<TheoremReport> {
    let mn = m * n;
    if mn < 3 {
        return Err(Error::UnsupportedParameters(format!("theorem checks need mn >= 3, got {mn}")));
    }
    let (d_real, d_complex) = stability_dims(d, m, n)?;
    let k = d / n;
    let betti = |kind: SpaceKind, d: usize, m: usize, n: usize| -> Result<GradedDims> {
        Ok(engine.betti_of_formula(&space_formula(kind, d, m, n)?, field, qmax))
    };

    let poly_r = betti(SpaceKind::PolyR, d, m, n)?.unreduced();
    let loop_model = betti_loop_model(Some(mn - 1), mn - 1, field, qmax, None)?;
    let omega2 = omega2_sphere(mn - 1, field, qmax)?;
    let mut checks = Vec::with_capacity(7);

    checks.push(compare(CheckId::RealLoopModel, &poly_r, &loop_model, d_real.min(qmax)));
    let first_disagreement_above_range =
        (d_real + 1..=qmax).find(|&q| poly_r.get(q) != loop_model.get(q));

    let poly_c = betti(SpaceKind::PolyC, d, m, n)?.unreduced();
    checks.push(compare(CheckId::ComplexLoopModel, &poly_c, &omega2, d_complex.min(qmax)));

    let q_r = betti(SpaceKind::QR, d, m, n)?.unreduced();
    let james = betti_loop_model(None, mn - 1, field, qmax, Some(k))?;
    checks.push(compare(CheckId::JamesModel, &q_r, &james, d_real.min(qmax)));

    let e1 = e1_table_with(engine, d, m, n, field, JRange::Truncated)?;
    let p = betti(SpaceKind::P, d, m, n)?;
    checks.push(compare(CheckId::E1Totals, &e1.totals(qmax), &p, qmax));

    let shifted = betti(SpaceKind::PolyR, k, mn, 1)?.unreduced();
    checks.push(compare(CheckId::DegreeShift, &poly_r, &shifted, qmax));

    let next = betti(SpaceKind::PolyR, d + 1, m, n)?.unreduced();
    let through = if (d + 1) / n == k { qmax } else { d_real.min(qmax) };
    checks.push(compare(CheckId::Stabilization, &poly_r, &next, through));

    let snaith = snaith_sum(engine, mn, field, qmax);
    checks.push(compare(CheckId::Snaith, &snaith, &omega2.reduced(), qmax));

    Ok(TheoremReport {
        d,
        m,
        n,
        field,
        qmax,
        d_real,
        d_complex,
        homology_only: mn == 3,
        first_disagreement_above_range,
        checks,
    })
}

/// One `(d, m, n)` parameter cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GridCell {
    pub d: usize,
    pub m: usize,
    pub n: usize,
}

/// Parameter grid in a small flag grammar: `;`-separated clauses
/// `mn in {3,4}`, `m in {..}`, `n in {..}`, `d<=N`, `d>=N`.
/// `d` ranges over `max(n, d_min)..=d_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub mn: Vec<usize>,
    pub m: Option<Vec<usize>>,
    pub n: Option<Vec<usize>>,
    pub d_min: usize,
    pub d_max: usize,
}

fn parse_set(s: &str) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{...}}, got {s:?}")))?;
    inner
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let mut spec = GridSpec { mn: vec![], m: None, n: None, d_min: 1, d_max: 0 };
        for clause in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let compact: String = clause.chars().filter(|c| !c.is_whitespace()).collect();
            if let Some(rest) = compact.strip_prefix("mnin") {
                spec.mn = parse_set(rest)?;
            } else if let Some(rest) = compact.strip_prefix("min") {
                spec.m = Some(parse_set(rest)?);
            } else if let Some(rest) = compact.strip_prefix("nin") {
                spec.n = Some(parse_set(rest)?);
            } else if let Some(rest) = compact.strip_prefix("d<=") {
                spec.d_max = rest.parse().map_err(|e| Error::Parse(format!("{clause:?}: {e}")))?;
            } else if let Some(rest) = compact.strip_prefix("d>=") {
                spec.d_min = rest.parse().map_err(|e| Error::Parse(format!("{clause:?}: {e}")))?;
            } else {
                return Err(Error::Parse(format!("unknown grid clause {clause:?}")));
            }
        }
        if spec.mn.is_empty() {
            return Err(Error::Parse("grid needs an `mn in {...}` clause".into()));
        }
        if spec.d_max == 0 {
            return Err(Error::Parse("grid needs a `d<=N` clause".into()));
        }
        Ok(spec)
    }

    /// Cells in a fixed order: by `mn` as listed, then `n`, then `d`.
    pub fn cells(&self) -> Vec<GridCell> {
        let mut out = Vec::new();
        for &mn in &self.mn {
            for n in 1..=mn {
                if mn % n != 0 {
                    continue;
                }
                let m = mn / n;
                if (m, n) == (1, 1)
                    || self.m.as_ref().is_some_and(|s| !s.contains(&m))
                    || self.n.as_ref().is_some_and(|s| !s.contains(&n))
                {
                    continue;
                }
                for d in n.max(self.d_min)..=self.d_max {
                    out.push(GridCell { d, m, n });
                }
            }
        }
        out
    }
}

/// Runs every cell for every field in parallel; output order follows
/// `cells` then `fields`.
pub fn verify_grid(cells: &[GridCell], fields: &[FieldChoice], qmax: Option<usize>) -> Result<Vec<TheoremReport>> {
    let jobs: Vec<(GridCell, FieldChoice)> =
        cells.iter().flat_map(|c| fields.iter().map(move |f| (*c, *f))).collect();
    jobs.par_iter()
        .map(|(c, f)| verify_theorems(c.d, c.m, c.n, *f, qmax))
        .collect()
}
