use num_traits::Zero;

use super::system::{Family, HplusParity, SpaceId, StratumSignature, System};
use crate::error::{Error, Result};
use crate::polyarith::{gcd_all, squarefree_part, sturm_count, Coeff, GaussPoly, Interval, Poly, QPoly, Rational};

/// `(f, f + f', ..., f + f^(n-1))` for one polynomial.
pub fn jet<C: Coeff>(f: &Poly<C>, n: usize) -> Vec<Poly<C>> {
    let mut out = Vec::with_capacity(n);
    out.push(f.clone());
    let mut der = f.clone();
    for _ in 1..n {
        der = der.derivative();
        out.push(f + &der);
    }
    out
}

/// Jet family of a system, slot-major: `m * n` polynomials.
pub fn jet_family(sys: &System) -> Vec<GaussPoly> {
    sys.polys().iter().flat_map(|f| jet(f, sys.space().n)).collect()
}

/// Monic gcd of `{f_k^(t) : t < n}` over all slots. Its roots are exactly the
/// common roots of multiplicity `>= n`.
pub fn common_root_locus<C: Coeff>(polys: &[Poly<C>], n: usize) -> Result<Poly<C>> {
    let mut ders = Vec::with_capacity(polys.len() * n);
    for f in polys {
        let mut d = f.clone();
        for _ in 0..n {
            if d.is_zero() {
                break;
            }
            ders.push(d.clone());
            d = d.derivative();
        }
    }
    gcd_all(ders.iter())
}

fn real_root_count(f: &QPoly) -> Result<usize> {
    if f.is_constant() {
        return Ok(0);
    }
    sturm_count(&squarefree_part(f)?, &Interval::WholeLine)
}

fn locus_is_trivial(sys: &System) -> Result<bool> {
    match sys.real_polys() {
        Some(real) => Ok(common_root_locus(&real, sys.space().n)?.is_constant()),
        None => Ok(common_root_locus(sys.polys(), sys.space().n)?.is_constant()),
    }
}

fn hplus_shape_ok(space: &SpaceId, real: &[QPoly]) -> Result<bool> {
    match space.hplus_parity() {
        Some(HplusParity::Even) => {
            for f in real {
                if real_root_count(f)? != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Some(HplusParity::Odd) => {
            for (k, f) in real.iter().enumerate() {
                let marker = QPoly::linear(Rational::from_integer((k as i64 + 1).into()));
                let (h, r) = f.div_rem(&marker)?;
                if !r.is_zero() || real_root_count(&h)? != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        None => Ok(true),
    }
}

fn is_member_checked(sys: &System) -> Result<bool> {
    let n = sys.space().n;
    match sys.family() {
        Family::PolyC | Family::PolyR => locus_is_trivial(sys),
        Family::QR => {
            let real = sys.real_polys().expect("validated real");
            Ok(real_root_count(&common_root_locus(&real, n)?)? == 0)
        }
        Family::PolyRHplus => {
            let real = sys.real_polys().expect("validated real");
            Ok(common_root_locus(&real, n)?.is_constant() && hplus_shape_ok(sys.space(), &real)?)
        }
    }
}

/// Exact membership of `sys` in its declared space.
pub fn is_member(sys: &System) -> bool {
    // all inputs are nonzero monic, so the gcd machinery cannot fail
    is_member_checked(sys).expect("membership on a validated system")
}

/// Stratum of a real system that is not in `Poly_R`; `None` for members.
pub fn stratum_signature(sys: &System) -> Result<Option<StratumSignature>> {
    let real = sys
        .real_polys()
        .ok_or_else(|| Error::invalid("stratum signature needs real coefficients"))?;
    let g = common_root_locus(&real, sys.space().n)?;
    if g.is_constant() {
        return Ok(None);
    }
    let sqf = squarefree_part(&g)?;
    let i = sturm_count(&sqf, &Interval::WholeLine)?;
    let j = (sqf.degree().unwrap() - i) / 2;
    Ok(Some(StratumSignature { i, j }))
}

/// `(f, f + f', ..., f + f^(n-1))` as a system of `Poly^{d,n}_1(R)`.
pub fn jet_embedding(f: &QPoly, n: usize) -> Result<System> {
    if !f.is_monic() {
        return Err(Error::invalid("jet embedding needs a monic polynomial"));
    }
    let d = f.degree().unwrap();
    if d == 0 {
        return Err(Error::invalid("jet embedding needs degree >= 1"));
    }
    let space = SpaceId::new(Family::PolyR, d, n, 1)?;
    System::from_q(space, jet(f, n))
}

/// True when every slot vanishes to order `n` at the rational point `alpha`,
/// checked by direct evaluation of derivatives.
pub fn has_common_root_at(polys: &[QPoly], n: usize, alpha: &Rational) -> bool {
    polys.iter().all(|f| (0..n).all(|t| f.nth_derivative(t).eval(alpha).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn sys(family: Family, d: usize, n: usize, polys: Vec<QPoly>) -> System {
        let space = SpaceId::new(family, d, polys.len(), n).unwrap();
        System::from_q(space, polys).unwrap()
    }

    #[test]
    fn jet_family_examples() {
        let s = sys(Family::PolyR, 3, 2, vec![p(&[0, 0, 0, 1])]);
        let j = jet_family(&s);
        assert_eq!(j, vec![p(&[0, 0, 0, 1]).to_gauss(), p(&[0, 0, 3, 1]).to_gauss()]);

        let s = sys(Family::PolyR, 2, 2, vec![p(&[0, 0, 1]), p(&[1, 0, 1])]);
        let want: Vec<GaussPoly> =
            [p(&[0, 0, 1]), p(&[0, 2, 1]), p(&[1, 0, 1]), p(&[1, 2, 1])].iter().map(QPoly::to_gauss).collect();
        assert_eq!(jet_family(&s), want);

        let s = sys(Family::PolyR, 2, 1, vec![p(&[3, 0, 1]), p(&[1, 1, 1])]);
        assert_eq!(jet_family(&s), s.polys().to_vec());
    }

    #[test]
    fn membership_examples() {
        assert!(!is_member(&sys(Family::PolyR, 2, 2, vec![p(&[0, 0, 1])])));

        let both = vec![p(&[1, 0, 1]), p(&[1, 0, 1])];
        assert!(!is_member(&sys(Family::PolyC, 2, 1, both.clone())));
        assert!(is_member(&sys(Family::QR, 2, 1, both)));

        let sq = vec![p(&[1, 0, 1]).pow(2)];
        assert!(!is_member(&sys(Family::PolyR, 4, 2, sq.clone())));
        assert!(is_member(&sys(Family::QR, 4, 2, sq)));
    }

    #[test]
    fn low_degree_is_universal() {
        for fam in Family::ALL {
            // d = 1 < n = 2, Hplus odd needs (z - 1) in slot 1
            let f = if fam == Family::PolyRHplus { p(&[-1, 1]) } else { p(&[0, 1]) };
            assert!(is_member(&sys(fam, 1, 2, vec![f])), "{fam}");
        }
    }

    #[test]
    fn stratum_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[4, 0, 1]).pow(2);
        let s = sys(Family::PolyR, 6, 2, vec![f]);
        assert_eq!(stratum_signature(&s).unwrap(), Some(StratumSignature { i: 1, j: 1 }));

        let f = &p(&[-1, 1]).pow(2) * &p(&[-2, 1]).pow(2);
        let s = sys(Family::PolyR, 4, 2, vec![f]);
        assert_eq!(stratum_signature(&s).unwrap(), Some(StratumSignature { i: 2, j: 0 }));

        let s = sys(Family::PolyR, 2, 2, vec![p(&[1, 0, 1])]);
        assert_eq!(stratum_signature(&s).unwrap(), None);
    }

    #[test]
    fn jet_embedding_examples() {
        let e = jet_embedding(&p(&[0, 0, 0, 1]), 3).unwrap();
        let want: Vec<GaussPoly> =
            [p(&[0, 0, 0, 1]), p(&[0, 0, 3, 1]), p(&[0, 6, 0, 1])].iter().map(QPoly::to_gauss).collect();
        assert_eq!(e.polys(), want.as_slice());
        assert_eq!((e.space().m, e.space().n), (3, 1));

        let e = jet_embedding(&p(&[-1, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(e.polys()[1], p(&[-1, 0, 0, 4, 1]).to_gauss());

        let e = jet_embedding(&p(&[0, 0, 1]), 2).unwrap();
        assert!(!is_member(&e));
        assert!(!is_member(&sys(Family::PolyR, 2, 2, vec![p(&[0, 0, 1])])));
    }

    #[test]
    fn hplus_membership() {
        // even: (z^2+1)(z^2+4) has no real roots
        let f = &p(&[1, 0, 1]) * &p(&[4, 0, 1]);
        assert!(is_member(&sys(Family::PolyRHplus, 4, 2, vec![f])));
        let g = &p(&[1, 0, 1]) * &p(&[-4, 0, 1]);
        assert!(!is_member(&sys(Family::PolyRHplus, 4, 2, vec![g])));
        // odd: slot k carries the root k
        let s = sys(
            Family::PolyRHplus,
            3,
            1,
            vec![&p(&[-1, 1]) * &p(&[1, 0, 1]), &p(&[-2, 1]) * &p(&[2, 0, 1])],
        );
        assert!(is_member(&s));
        let bad = sys(
            Family::PolyRHplus,
            3,
            1,
            vec![&p(&[-2, 1]) * &p(&[1, 0, 1]), &p(&[-2, 1]) * &p(&[2, 0, 1])],
        );
        assert!(!is_member(&bad));
    }

    #[test]
    fn complex_membership_uses_gaussian_gcd() {
        use crate::polyarith::GaussRational;
        let zi = GaussPoly::linear(GaussRational::i());
        let a = &zi * &GaussPoly::from_ints(&[1, 1]);
        let b = &zi * &GaussPoly::from_ints(&[-1, 1]);
        let space = SpaceId::new(Family::PolyC, 2, 2, 1).unwrap();
        assert!(!is_member(&System::new(space.clone(), vec![a.clone(), b]).unwrap()));
        let c = &GaussPoly::linear(-GaussRational::i()) * &GaussPoly::from_ints(&[-1, 1]);
        assert!(is_member(&System::new(space, vec![a, c]).unwrap()));
    }
}
