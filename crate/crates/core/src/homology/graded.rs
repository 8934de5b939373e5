use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of the homology engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldChoice {
    #[serde(rename = "F2")]
    F2,
    #[serde(rename = "Q")]
    Q,
}

impl FieldChoice {
    pub const BOTH: [FieldChoice; 2] = [FieldChoice::F2, FieldChoice::Q];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f2" | "z2" | "2" => Ok(FieldChoice::F2),
            "q" | "rational" | "0" => Ok(FieldChoice::Q),
            _ => Err(Error::Parse(format!("unknown field {s:?} (expected f2 or q)"))),
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldChoice::F2 => "F2",
            FieldChoice::Q => "Q",
        })
    }
}

/// Homology dimensions in degrees `0..=qmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub dims: Vec<u64>,
    pub field: FieldChoice,
    pub reduced: bool,
}

impl GradedDims {
    pub fn zeros(field: FieldChoice, qmax: usize, reduced: bool) -> Self {
        GradedDims { dims: vec![0; qmax + 1], field, reduced }
    }

    pub fn qmax(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn get(&self, q: usize) -> u64 {
        self.dims.get(q).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, q: usize, v: u64) {
        if let Some(slot) = self.dims.get_mut(q) {
            *slot += v;
        }
    }

    /// Adds `other` shifted up by `shift` degrees, truncating at `qmax`.
    pub fn add_shifted(&mut self, other: &GradedDims, shift: usize) {
        for (q, &v) in other.dims.iter().enumerate() {
            if v != 0 {
                self.add_at(q + shift, v);
            }
        }
    }

    /// Unreduced version of a reduced series of a connected space.
    pub fn unreduced(&self) -> Self {
        let mut out = self.clone();
        if self.reduced {
            out.dims[0] += 1;
            out.reduced = false;
        }
        out
    }

    /// Reduced version of an unreduced series of a connected space.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        if !self.reduced {
            out.dims[0] = out.dims[0].saturating_sub(1);
            out.reduced = true;
        }
        out
    }

    /// Product series (Kunneth over a field), truncated at `qmax`.
    pub fn convolve(&self, other: &GradedDims) -> Self {
        let qmax = self.qmax().min(other.qmax());
        let mut out = GradedDims::zeros(self.field, qmax, false);
        for (a, &x) in self.dims.iter().enumerate().take(qmax + 1) {
            if x == 0 {
                continue;
            }
            for (b, &y) in other.dims.iter().enumerate().take(qmax + 1 - a) {
                out.dims[a + b] += x * y;
            }
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Nonzero degrees as a `{"q": dim}` map.
    pub fn to_json_map(&self) -> BTreeMap<String, u64> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(q, &v)| (q.to_string(), v))
            .collect()
    }

    /// Aligned two-column text table of the nonzero degrees.
    pub fn to_text(&self) -> String {
        let mut s = format!("{:>5}  {:>8}\n", "q", "dim");
        for (q, &v) in self.dims.iter().enumerate() {
            if v != 0 {
                s.push_str(&format!("{q:>5}  {v:>8}\n"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_truncates() {
        let a = GradedDims { dims: vec![1, 0, 1, 0, 1], field: FieldChoice::F2, reduced: false };
        let b = GradedDims { dims: vec![1, 1, 0], field: FieldChoice::F2, reduced: false };
        assert_eq!(a.convolve(&b).dims, vec![1, 1, 1]);
    }

    #[test]
    fn reduced_unreduced() {
        let a = GradedDims { dims: vec![0, 2], field: FieldChoice::Q, reduced: true };
        assert_eq!(a.unreduced().dims, vec![1, 2]);
        assert_eq!(a.unreduced().reduced(), a);
        assert_eq!(a.to_json_map().get("1"), Some(&2));
    }
}
