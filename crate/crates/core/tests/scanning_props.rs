use nonres::oracle::{random_member, seeded_rng, COEFF_BOUND};
use nonres::polyarith::Rational;
use nonres::scanning::*;
use nonres::spaces::*;
use rand::Rng;

fn class(sys: &System) -> u8 {
    loop_class_mod2(&eval_real_loop(sys, 64).unwrap()).unwrap()
}

#[test]
fn loop_class_is_additive_under_loop_product() {
    let mut checked = 0;
    for (d, m, n) in [(1, 3, 1), (2, 3, 1), (2, 1, 3), (3, 2, 2)] {
        let sp = SpaceId::new(Family::QR, d, m, n).unwrap();
        let mut rng = seeded_rng(11, (d * 100 + m * 10 + n) as u64);
        for _ in 0..20 {
            let a = random_member(&mut rng, &sp, COEFF_BOUND).unwrap().system;
            let b = random_member(&mut rng, &sp, COEFF_BOUND).unwrap().system;
            let Ok(prod) = loop_product(&a, &b) else { continue };
            let prod = prod.to_exact().unwrap();
            assert_eq!(class(&prod), (class(&a) + class(&b)) % 2);
            checked += 1;
        }
    }
    assert!(checked >= 70);
}

#[test]
fn loop_samples_respect_step_bound() {
    let sp = SpaceId::new(Family::QR, 4, 2, 2).unwrap();
    let mut rng = seeded_rng(3, 0);
    for _ in 0..20 {
        let sys = random_member(&mut rng, &sp, COEFF_BOUND).unwrap().system;
        let sample = eval_real_loop(&sys, 8).unwrap();
        assert!(sample.max_step() < MAX_CHORDAL_STEP);
        assert_eq!(sample.ts.first(), Some(&-1.0));
        assert_eq!(sample.ts.last(), Some(&1.0));
    }
}

#[test]
fn hyperplane_degree_witness() {
    let mut rng = seeded_rng(8, 0);
    let spaces = [(2, 2, 1), (3, 1, 3), (4, 2, 2), (5, 3, 1)];
    for trial in 0..10_000 {
        let (d, m, n) = spaces[trial % spaces.len()];
        let sp = SpaceId::new(Family::PolyC, d, m, n).unwrap();
        let sys = random_member(&mut rng, &sp, COEFF_BOUND).unwrap().system;
        let mut w: Vec<Rational> =
            (0..m * n).map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())).collect();
        let sum: Rational = w.iter().sum();
        if trial % 2 == 1 {
            // force the leading terms to cancel
            w[0] -= sum.clone();
        }
        let sum: Rational = w.iter().sum();
        if w.iter().all(|c| *c == Rational::from_integer(0.into())) {
            continue;
        }
        let out = hyperplane_pullback(&sys, &w).unwrap();
        let full = out.degree() == Some(d);
        assert_eq!(full, sum != Rational::from_integer(0.into()), "trial {trial}");
    }
}
