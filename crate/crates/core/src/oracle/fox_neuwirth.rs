//! Fox–Neuwirth cell structure on the one-point compactification of the
//! unordered configuration space of `j` points in the plane.
//!
//! Cells are ordered compositions `(a_1, ..., a_r)` of `j`; the cell of points
//! stacked in `r` vertical lines has dimension `j - r` in the grading used
//! here. The mod-2 differential merges adjacent columns with coefficient
//! `binom(a_i + a_{i+1}, a_i)`.

use crate::homology::{FieldChoice, GradedDims};
use crate::error::{Error, Result};

pub const FN_MAX_J: usize = 8;

type BitRow = Vec<u64>;

fn bit_row(len: usize) -> BitRow {
    vec![0; len.div_ceil(64).max(1)]
}

fn flip(row: &mut BitRow, i: usize) {
    row[i / 64] ^= 1 << (i % 64);
}

fn get(row: &BitRow, i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

/// Rank over F2 by elimination on packed rows.
fn rank_f2(mut rows: Vec<BitRow>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| get(&rows[r], c)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && get(row, c) {
                for (w, pw) in row.iter_mut().zip(&pivot) {
                    *w ^= pw;
                }
            }
        }
        rank += 1;
    }
    rank
}

// binom(a + b, a) is odd iff a and b share no binary digit
fn binom_odd(a: usize, b: usize) -> bool {
    a & b == 0
}

fn compositions(j: usize) -> Vec<Vec<usize>> {
    if j == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=j {
        for mut rest in compositions(j - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FNComplex {
    pub j: usize,
    /// `cells[q]`: compositions with `j - r = q`.
    pub cells: Vec<Vec<Vec<usize>>>,
    /// `boundary[q]`: one packed row per cell of dimension `q`, indexing
    /// cells of dimension `q + 1`.
    boundary: Vec<Vec<BitRow>>,
}

impl FNComplex {
    /// Builds the complex; panics if `d ∘ d != 0`.
    pub fn new(j: usize) -> Result<Self> {
        if j == 0 || j > FN_MAX_J {
            return Err(Error::invalid(format!("Fox–Neuwirth oracle needs 1 <= j <= {FN_MAX_J}, got {j}")));
        }
        let mut cells = vec![Vec::new(); j];
        for c in compositions(j) {
            cells[j - c.len()].push(c);
        }
        let mut boundary = Vec::with_capacity(j);
        for q in 0..j {
            let targets = cells.get(q + 1).map_or(&[][..], |v| &v[..]);
            let rows = cells[q]
                .iter()
                .map(|c| {
                    let mut row = bit_row(targets.len());
                    for i in 0..c.len().saturating_sub(1) {
                        if binom_odd(c[i], c[i + 1]) {
                            let mut merged = c.clone();
                            merged[i] += merged.remove(i + 1);
                            let idx = targets.iter().position(|t| *t == merged).expect("merged cell exists");
                            flip(&mut row, idx);
                        }
                    }
                    row
                })
                .collect();
            boundary.push(rows);
        }
        let complex = FNComplex { j, cells, boundary };
        complex.assert_square_zero();
        Ok(complex)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    fn assert_square_zero(&self) {
        for q in 0..self.j.saturating_sub(1) {
            let mid = self.cells[q + 1].len();
            let top = self.cells.get(q + 2).map_or(0, Vec::len);
            for row in &self.boundary[q] {
                let mut acc = bit_row(top);
                for k in (0..mid).filter(|&k| get(row, k)) {
                    for (a, b) in acc.iter_mut().zip(&self.boundary[q + 1][k]) {
                        *a ^= b;
                    }
                }
                assert!(acc.iter().all(|&w| w == 0), "Fox–Neuwirth differential does not square to zero at j={}", self.j);
            }
        }
    }

    fn rank(&self, q: usize) -> usize {
        let cols = self.cells.get(q + 1).map_or(0, Vec::len);
        rank_f2(self.boundary[q].clone(), cols)
    }

    pub fn betti(&self, qmax: usize) -> GradedDims {
        let mut out = GradedDims::zeros(FieldChoice::F2, qmax, false);
        let ranks: Vec<usize> = (0..self.j).map(|q| self.rank(q)).collect();
        for q in 0..self.j.min(qmax + 1) {
            let incoming = if q == 0 { 0 } else { ranks[q - 1] };
            out.dims[q] = (self.cells[q].len() - ranks[q] - incoming) as u64;
        }
        out
    }
}

/// `dim H_q(C_j(C); F2)` for `q <= qmax` computed from the cell complex.
pub fn fox_neuwirth_betti(j: usize, qmax: usize) -> Result<GradedDims> {
    Ok(FNComplex::new(j)?.betti(qmax))
}
