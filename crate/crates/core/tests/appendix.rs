use bibennett::algebra::{rat, sylvester_resultant, Rational, Scalar};
use bibennett::appendix::*;
use bibennett::families::MuSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn random_q(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-40..=40), rng.gen_range(1..=9))
}

fn random_pair(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    loop {
        let (a1, a2) = (random_q(rng), random_q(rng));
        let g = a1.clone() * a2.clone() * (a1.square() - a2.square());
        if !g.is_zero() {
            return (a1, a2);
        }
    }
}

/// c0 as derived independently with a computer algebra system from the
/// homogeneous chain.
fn c0_reference(a1: &Rational, a2: &Rational, m: &[Rational; 4]) -> Rational {
    let [m14, m12, m23, m34] = m;
    let p = |e1: i32, e2: i32| a1.pow(e1) * a2.pow(e2);
    let terms = [
        (p(4, 2), m12 * m23 + m12 * m34 + m14 * m23 + m14 * m34),
        (p(3, 1) * q(2, 1), m14 * m23 - m12 * m34),
        (-p(2, 4), m12 * m14 + m12 * m34 + m14 * m23 + m23 * m34),
        (p(2, 2) * q(2, 1), -(m12 * m14) + m12 * m23 + m14 * m34 - m23 * m34),
        (p(2, 0), -(m12 * m14) + m12 * m34 + m14 * m23 - m23 * m34),
        (p(1, 3) * q(2, 1), m12 * m34 - m14 * m23),
        (p(0, 2), m12 * m23 - m12 * m34 - m14 * m23 + m14 * m34),
    ];
    terms.into_iter().fold(Rational::zero(), |acc, (k, v)| acc + k * v) * q(-4, 1)
}

#[test]
fn coefficients_match_the_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let (a1, a2) = random_pair(&mut rng);
        let m: [Rational; 4] = std::array::from_fn(|_| random_q(&mut rng));
        let e = coplanarity_coeffs(&a1, &a2, &MuSet::from_array(m.clone())).unwrap();
        assert_eq!(e.c[0], c0_reference(&a1, &a2, &m));
        // the quartic reproduces the determinant away from the nodes
        let t = random_q(&mut rng);
        let mu = MuSet::from_array(m);
        assert_eq!(e.eval(&t), cleared_det(&a1, &a2, &mu, &t).unwrap());
    }
}

#[test]
fn equal_offsets_example() {
    let (a1, a2) = (q(1, 2), q(1, 3));
    let ones = MuSet::new(q(1, 1), q(1, 1), q(1, 1), q(1, 1));
    let e = coplanarity_coeffs(&a1, &a2, &ones).unwrap();
    let printed = q(4, 1) * a1.square() * a2.square() * (a1.square() - a2.square());
    assert_eq!(e.c[4], printed * q(-4, 1));
    let floats = coplanarity_coeffs(&0.5, &(1.0 / 3.0), &ones.map(|v| v.to_f64())).unwrap();
    assert!((floats.c[4] - e.c[4].to_f64()).abs() < 1e-12);
}

#[test]
fn degenerate_structure_is_rejected() {
    let mu = MuSet::new(q(1, 1), q(2, 1), q(3, 1), q(4, 1));
    assert_eq!(coplanarity_coeffs(&q(1, 2), &q(1, 2), &mu), Err(AppendixError::Structure));
    assert_eq!(coplanarity_coeffs(&q(1, 2), &q(-1, 2), &mu), Err(AppendixError::Structure));
    assert_eq!(coplanarity_coeffs(&q(0, 1), &q(1, 2), &mu), Err(AppendixError::Structure));
}

#[test]
fn c0_minus_c4_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..25 {
        let (a1, a2) = random_pair(&mut rng);
        let m: [Rational; 4] = std::array::from_fn(|_| random_q(&mut rng));
        let e = coplanarity_coeffs(&a1, &a2, &MuSet::from_array(m.clone())).unwrap();
        let [m14, m12, m23, m34] = &m;
        let printed = q(-16, 1) * &a1 * &a2 * (&a1 - &a2) * (&a1 + &a2) * (m14 * m23 - m12 * m34);
        assert_eq!(e.c[0].clone() - e.c[4].clone(), printed);
    }
}

#[test]
fn f_difference_on_random_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let v: [Rational; 4] = std::array::from_fn(|_| random_q(&mut rng));
        let d = f1(&v[0], &v[1], &v[2], &v[3]) - f2(&v[0], &v[1], &v[2], &v[3]);
        assert_eq!(d, q(4, 1) * (v[0].square() - v[1].square()));
    }
}

#[test]
fn g1_is_positive() {
    for i in 1..=100 {
        for j in 1..=100 {
            let (x, y) = (i as f64 / 20.0, j as f64 / 20.0);
            assert!(g1(&x, &y) > 0.0);
            assert!(g1(&-x, &y) >= 1.0);
        }
    }
}

#[test]
fn case3_resultant_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..6 {
        let (a1, a2) = random_pair(&mut rng);
        let [n0, n2] = case3_numerators(&a1, &a2).unwrap();
        assert_eq!(n0.degree(), Some(4));
        assert_eq!(sylvester_resultant(&n0, &n2), printed_resultant(&a1, &a2));
        let [m0, m2] = case4_numerators(&a1, &a2).unwrap();
        assert_eq!(sylvester_resultant(&m0, &m2), printed_resultant(&a2, &a1));
    }
}

#[test]
fn case3_g2_branch_has_no_real_offset() {
    // rational point on g2 = 0
    let t = q(3, 1);
    let a1 = (t.square() - q(2, 1)) / (q(2, 1) * t.clone());
    let a2 = (t.square() - q(2, 1)) / (t.square() + q(2, 1));
    assert!(g2(&a1, &a2).is_zero());
    let [n0, _] = case3_numerators(&a1, &a2).unwrap();
    for (i, c) in n0.coeffs().iter().enumerate() {
        assert!(if i % 2 == 1 { c.is_zero() } else { c.positive() });
    }
}

#[test]
fn full_case_analysis() {
    let t = std::time::Instant::now();
    let rep = verify_nonexistence(&NonexistenceOptions::default()).unwrap();
    assert!(rep.verdict(), "{:?}", rep.failures().collect::<Vec<_>>());
    assert!(rep.entries.iter().any(|e| e.label == "identity.c0_minus_c4"));
    assert!(rep.entries.iter().any(|e| e.label.starts_with("case3.g3")));
    assert!(t.elapsed().as_secs() < 60);
}
