use std::collections::BTreeMap;

use serde::Serialize;

use super::formula::{HomologyEngine, Summand};
use super::graded::{FieldChoice, GradedDims};
use crate::error::{Error, Result};

/// Range of `j` summed in the `A_{k,s}` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JRange {
    /// `1 <= j <= min(k, floor(d/n) - k)`: the root budget `k + j <= floor(d/n)`.
    Truncated,
    /// `1 <= j <= k`, the range as printed without the budget.
    Untruncated,
}

/// Sparse E1 page: `(k, s) -> dim`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct E1Table {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub field: FieldChoice,
    pub j_range: JRange,
    entries: BTreeMap<(usize, usize), u64>,
}

impl E1Table {
    pub fn get(&self, k: usize, s: usize) -> u64 {
        self.entries.get(&(k, s)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_k E1[k, k + s]`.
    pub fn antidiagonal_total(&self, s: usize) -> u64 {
        self.entries
            .iter()
            .filter(|(&(k, t), _)| t == k + s)
            .map(|(_, v)| v)
            .sum()
    }

    /// Antidiagonal totals as a graded series through `qmax`.
    pub fn totals(&self, qmax: usize) -> GradedDims {
        let mut out = GradedDims::zeros(self.field, qmax, true);
        for (&(k, s), &v) in &self.entries {
            out.add_at(s - k, v);
        }
        out
    }

    pub fn to_json_map(&self) -> BTreeMap<String, u64> {
        self.entries.iter().map(|(&(k, s), &v)| (format!("{k},{s}"), v)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:>4} {:>6} {:>8}\n", "k", "s", "dim");
        for (&(k, s), &v) in &self.entries {
            out.push_str(&format!("{k:>4} {s:>6} {v:>8}\n"));
        }
        out
    }
}

/// Engine large enough for every `D_j` the E1 page of `(d, m, n)` touches.
pub fn engine_for_e1(d: usize, n: usize, mn: usize) -> HomologyEngine {
    let k = d / n;
    // top entry: s = (mn-1)k + (mn-2)j + 2j - 1 with j, k <= floor(d/n)
    let smax = (2 * mn) * k + 2;
    HomologyEngine::new(k, smax)
}

/// The E1 page of the spectral sequence of the resolved discriminant.
///
/// `E1[k, s] = sum_j dim H~_{s-(mn-1)k}(Σ^{(mn-2)j} D_j) + dim H~_{s-(mn-1)k}(S^0)`
/// for `1 <= k <= floor(d/n)`, zero otherwise.
pub fn e1_table(d: usize, m: usize, n: usize, field: FieldChoice) -> Result<E1Table> {
    e1_table_with(&engine_for_e1(d, n, m * n), d, m, n, field, JRange::Truncated)
}

pub fn e1_table_with(
    engine: &HomologyEngine,
    d: usize,
    m: usize,
    n: usize,
    field: FieldChoice,
    j_range: JRange,
) -> Result<E1Table> {
    let mn = m * n;
    if mn < 3 {
        return Err(Error::UnsupportedParameters(format!("E1 page needs mn >= 3, got {mn}")));
    }
    let kmax = d / n;
    let mut entries = BTreeMap::new();
    for k in 1..=kmax {
        let base = (mn - 1) * k;
        *entries.entry((k, base)).or_insert(0) += 1;
        let jmax = match j_range {
            JRange::Truncated => k.min(kmax - k),
            JRange::Untruncated => k,
        };
        for j in 1..=jmax {
            let summand = Summand::suspended_dj((mn - 2) * j, j);
            // D_j is a finite complex: reduced homology stops by degree 2j - 1
            let top = (mn - 2) * j + 2 * j;
            let dims = engine.summand_betti(&summand, field, top);
            for (q, &v) in dims.dims.iter().enumerate() {
                if v != 0 {
                    *entries.entry((k, base + q)).or_insert(0) += v;
                }
            }
        }
    }
    Ok(E1Table { d, m, n, field, j_range, entries })
}
