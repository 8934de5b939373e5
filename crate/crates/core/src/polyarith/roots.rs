use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::coeff::Coeff;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Roots closer than this are treated as one multiple root.
pub const CLUSTER_DISTANCE: f64 = 1e-6;

/// Horner evaluation of an ascending coefficient slice.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c)
}

pub fn derivative_coeffs(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

/// Scale-free residual `|f(r)| / (1 + |r|)^deg`.
pub fn scaled_residual(coeffs: &[Complex64], r: Complex64) -> f64 {
    let deg = coeffs.len().saturating_sub(1) as i32;
    horner(coeffs, r).norm() / (1.0 + r.norm()).powi(deg)
}

/// Diagonal similarity balancing (Parlett–Reinsch, radix 2).
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        sweeps += 1;
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let mut rr = r;
            while cc < rr / radix {
                cc *= radix;
                rr /= radix;
                f *= radix;
            }
            while cc >= rr * radix {
                cc /= radix;
                rr *= radix;
                f /= radix;
            }
            if (cc + rr) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

const SCHUR_MAX_ITER: usize = 10_000;
// shifts tried when the QR iteration stalls on a symmetric root pattern
const SHIFTS: [(f64, f64); 3] = [(0.0, 0.0), (0.1234, 0.0567), (-0.0789, 0.1411)];

/// Eigenvalues of the balanced companion matrix of a monic complex polynomial.
fn companion_eigenvalues(monic: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = monic.len() - 1;
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    for (re, im) in SHIFTS {
        let c = Complex64::new(re, im);
        let shifted = taylor_shift(monic, c);
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -shifted[i];
        }
        balance(&mut m);
        if let Some(schur) = m.try_schur(f64::EPSILON, SCHUR_MAX_ITER) {
            let (_, t) = schur.unpack();
            return Ok((0..n).map(|i| t[(i, i)] + c).collect());
        }
    }
    Err(Error::numerical("companion eigenvalue iteration did not converge", f64::INFINITY))
}

/// Coefficients of `f(z + c)`.
fn taylor_shift(coeffs: &[Complex64], c: Complex64) -> Vec<Complex64> {
    let mut out = coeffs.to_vec();
    if c.is_zero() {
        return out;
    }
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = out[j + 1];
            out[j] += c * next;
        }
    }
    out
}

/// Groups roots within [`CLUSTER_DISTANCE`] of each other and replaces each
/// group by its centroid. Returns the roots with the cluster sizes.
fn cluster(roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut label: Vec<usize> = (0..roots.len()).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < CLUSTER_DISTANCE {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == root) {
            Some(g) => {
                g.1 += r;
                g.2 += 1;
            }
            None => groups.push((root, *r, 1)),
        }
    }
    groups.into_iter().map(|(_, s, k)| (s / k as f64, k)).collect()
}

/// Roots of a polynomial given by complex coefficients (ascending).
///
/// Companion-matrix eigenvalues followed by one Newton pass on simple roots.
/// Every returned root satisfies `scaled_residual <= tol`.
pub fn roots_of_coeffs(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(Error::invalid("root extraction needs degree >= 1"));
    }
    let lc = *coeffs.last().unwrap();
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lc).collect();
    let raw = companion_eigenvalues(&monic)?;
    let dp = derivative_coeffs(&monic);

    let mut roots = Vec::with_capacity(raw.len());
    for (r, mult) in cluster(&raw) {
        if mult == 1 {
            let fp = horner(&dp, r);
            let polished = if fp.norm() > 0.0 { r - horner(&monic, r) / fp } else { r };
            let better = polished.is_finite()
                && scaled_residual(&monic, polished) <= scaled_residual(&monic, r);
            roots.push(if better { polished } else { r });
        } else {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    let worst = roots
        .iter()
        .map(|r| scaled_residual(&monic, *r))
        .fold(0.0, f64::max);
    if !(worst <= tol) {
        return Err(Error::numerical("root residual bound not met after polishing", worst));
    }
    Ok(roots)
}

/// Numeric roots of an exact polynomial, with multiplicity.
pub fn roots_numeric<C: Coeff>(f: &Poly<C>, tol: f64) -> Result<Vec<Complex64>> {
    if f.is_zero() {
        return Err(Error::invalid("roots of the zero polynomial"));
    }
    roots_of_coeffs(&f.to_complex_coeffs(), tol)
}

/// Ascending coefficients of `prod (z - r)`.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        out = next;
    }
    out
}
