//! Mod-2 homology of unordered configuration spaces `C_j(C)` and of the
//! Snaith summands `D_j`.
//!
//! `H_*(C_j(C); F2)` has a basis of monomials in generators `y_k`, `k >= 1`,
//! with `deg y_k = 2^k - 1` and weight `2^k`, of total weight `<= j`
//! (equivalently, weight exactly `j` after padding with the weight-1,
//! degree-0 class). The oracle module certifies this against a cellular
//! computation.

use super::graded::{FieldChoice, GradedDims};

/// One basis monomial: `exponents[k-1]` is the power of `y_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DLMonomial {
    pub exponents: Vec<u32>,
}

impl DLMonomial {
    pub fn degree(&self) -> usize {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| e as usize * ((1usize << (i + 1)) - 1))
            .sum()
    }

    pub fn weight(&self) -> usize {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| e as usize * (1usize << (i + 1)))
            .sum()
    }
}

/// Explicit list of basis monomials of weight `<= j`.
pub fn dl_monomials(j: usize) -> Vec<DLMonomial> {
    let mut gens = 0;
    while (1usize << (gens + 1)) <= j {
        gens += 1;
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; gens];
    fn rec(k: usize, budget: usize, current: &mut Vec<u32>, out: &mut Vec<DLMonomial>) {
        if k == current.len() {
            out.push(DLMonomial { exponents: current.clone() });
            return;
        }
        let w = 1usize << (k + 1);
        let mut e = 0;
        while e * w <= budget {
            current[k] = e as u32;
            rec(k + 1, budget - e * w, current, out);
            e += 1;
        }
        current[k] = 0;
    }
    rec(0, j, &mut current, &mut out);
    out
}

/// Precomputed `dim H_q(C_j(C); F2)` for `j <= jmax`, `q <= qmax`.
///
/// Built once and then shared read-only between threads.
#[derive(Clone, Debug)]
pub struct BraidTable {
    jmax: usize,
    qmax: usize,
    // cumulative[j][q]: monomials of weight <= j and degree q
    cumulative: Vec<Vec<u64>>,
}

impl BraidTable {
    pub fn new(jmax: usize, qmax: usize) -> Self {
        // exact[w][q] by unbounded knapsack over the generators
        let mut exact = vec![vec![0u64; qmax + 1]; jmax + 1];
        exact[0][0] = 1;
        let mut k = 1;
        while (1usize << k) <= jmax {
            let w = 1usize << k;
            let deg = w - 1;
            for weight in w..=jmax {
                for q in deg..=qmax {
                    exact[weight][q] += exact[weight - w][q - deg];
                }
            }
            k += 1;
        }
        let mut cumulative = exact;
        for w in 1..=jmax {
            for q in 0..=qmax {
                cumulative[w][q] += cumulative[w - 1][q];
            }
        }
        BraidTable { jmax, qmax, cumulative }
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn qmax(&self) -> usize {
        self.qmax
    }

    /// Unreduced `dim H_*(C_j(C); F2)` up to `qmax` (must be within the table).
    pub fn cj(&self, j: usize, qmax: usize) -> GradedDims {
        assert!(j <= self.jmax && qmax <= self.qmax, "braid table too small for j={j}, q={qmax}");
        GradedDims { dims: self.cumulative[j][..=qmax].to_vec(), field: FieldChoice::F2, reduced: false }
    }
}

/// `dim H_q(C_j(C); F2)` for `q <= qmax`.
pub fn betti_cj_f2(j: usize, qmax: usize) -> GradedDims {
    BraidTable::new(j, qmax).cj(j, qmax)
}

/// Reduced homology of `D_j`: the Thom shift by `j` of `C_j(C)` mod 2;
/// rationally `D_1 = S^1` and `D_j` is acyclic for `j >= 2`.
pub fn betti_dj(j: usize, field: FieldChoice, qmax: usize) -> GradedDims {
    dj_from_table(&BraidTable::new(j, qmax), j, field, qmax)
}

pub(crate) fn dj_from_table(table: &BraidTable, j: usize, field: FieldChoice, qmax: usize) -> GradedDims {
    assert!(j >= 1, "D_j needs j >= 1");
    let mut out = GradedDims::zeros(field, qmax, true);
    match field {
        FieldChoice::F2 => {
            if j <= qmax {
                out.add_shifted(&table.cj(j, qmax - j), j);
            }
        }
        FieldChoice::Q => {
            if j == 1 {
                out.add_at(1, 1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cj_examples() {
        assert_eq!(betti_cj_f2(1, 4).dims, vec![1, 0, 0, 0, 0]);
        assert_eq!(betti_cj_f2(2, 4).dims, vec![1, 1, 0, 0, 0]);
        assert_eq!(betti_cj_f2(4, 5).dims, vec![1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn dj_examples() {
        assert_eq!(betti_dj(1, FieldChoice::F2, 3).dims, vec![0, 1, 0, 0]);
        assert_eq!(betti_dj(2, FieldChoice::F2, 4).dims, vec![0, 0, 1, 1, 0]);
        assert_eq!(betti_dj(2, FieldChoice::Q, 4).total(), 0);
        assert_eq!(betti_dj(1, FieldChoice::Q, 4).dims, vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn enumeration_matches_table() {
        for j in 0..=12 {
            let table = betti_cj_f2(j, 20);
            let mut counted = vec![0u64; 21];
            for mono in dl_monomials(j) {
                assert!(mono.weight() <= j);
                if mono.degree() <= 20 {
                    counted[mono.degree()] += 1;
                }
            }
            assert_eq!(counted, table.dims, "j = {j}");
        }
    }
}
