//! Betti series of the loop-space models.

use super::graded::{FieldChoice, GradedDims};
use crate::error::{Error, Result};

/// `H_*(Ω S^sphere)`: one class in each degree `c * (sphere - 1)`, `c >= 0`,
/// over any field. With `james_cut = Some(k)` only `c <= k` is kept, which is
/// the homology of the James stage `J_k(S^{sphere-1})`.
pub fn omega_sphere(sphere: usize, field: FieldChoice, qmax: usize, james_cut: Option<usize>) -> Result<GradedDims> {
    if sphere < 2 {
        return Err(Error::invalid("ΩS^N needs N >= 2"));
    }
    let step = sphere - 1;
    let mut out = GradedDims::zeros(field, qmax, false);
    let mut c = 0;
    while c * step <= qmax && james_cut.is_none_or(|k| c <= k) {
        out.add_at(c * step, 1);
        c += 1;
    }
    Ok(out)
}

/// `H_*(Ω^2 S^{2N+1})`. Over F2 a polynomial algebra on generators of degree
/// `2^k * 2N - 1`, `k >= 0`; over Q an exterior algebra on one generator of
/// degree `2N - 1`.
pub fn omega2_sphere(half: usize, field: FieldChoice, qmax: usize) -> Result<GradedDims> {
    if half < 1 {
        return Err(Error::invalid("Ω²S^{2N+1} needs N >= 1"));
    }
    let mut out = GradedDims::zeros(field, qmax, false);
    out.dims[0] = 1;
    match field {
        FieldChoice::F2 => {
            let mut k = 0;
            loop {
                let deg = (1usize << k) * 2 * half - 1;
                if deg > qmax {
                    break;
                }
                // multiply the series by 1 / (1 - t^deg)
                for q in deg..=qmax {
                    out.dims[q] += out.dims[q - deg];
                }
                k += 1;
            }
        }
        FieldChoice::Q => out.add_at(2 * half - 1, 1),
    }
    Ok(out)
}

/// Product model `Ω²S^{2 N2 + 1} × ΩS^{N1}`; `n2 = None` drops the first
/// factor. For the non-resultant spaces `N2 = N1 = mn - 1`.
pub fn betti_loop_model(
    n2: Option<usize>,
    n1: usize,
    field: FieldChoice,
    qmax: usize,
    james_cut: Option<usize>,
) -> Result<GradedDims> {
    let single = omega_sphere(n1, field, qmax, james_cut)?;
    match n2 {
        Some(half) => Ok(omega2_sphere(half, field, qmax)?.convolve(&single)),
        None => Ok(single),
    }
}
