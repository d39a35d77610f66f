use bibennett::algebra::{rat, Rational, Scalar};
use bibennett::bennett::*;
use bibennett::families::*;
use bibennett::limits::*;
use bibennett::properties::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn spatial(a1: Rational, a2: Rational, k: Rational) -> Design<Rational> {
    Design::Spatial(BennettDesign::validate(a1, a2, k).unwrap())
}

fn assert_pass(rep: &CertificateReport) {
    let bad: Vec<_> = rep.failures().collect();
    assert!(bad.is_empty(), "{}: {bad:?}\n{:?}", rep.name, rep.notes);
}

fn random_q(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let d = rng.gen_range(1..=7);
    q(rng.gen_range(lo * d..=hi * d), d)
}

#[test]
fn family_c_prismatic_examples() {
    let a = prismatic_limit_c(LimitKind::PrismaticAnti, q(1, 2), q(1, 3), q(2, 3), q(1, 2), 1).unwrap();
    assert_eq!(a.labels, vec![ClassLabel::III2ii]);
    let b = prismatic_limit_c(LimitKind::PrismaticPara, q(2, 3), q(3, 4), q(1, 3), q(1, 2), 1).unwrap();
    assert_eq!(b.labels, vec![ClassLabel::III4ii]);
    let mut checked = 0;
    for t in [q(3, 4), q(2, 5), q(3, 1)] {
        for s in [&a, &b] {
            for (br, _) in s.bibennett.to_f64().companions(&t.to_f64()).unwrap() {
                assert_pass(&s.verify(&t, br, 1e-9).unwrap());
                checked += 1;
            }
        }
    }
    assert!(checked >= 6);
    let c = a.bibennett.couple(&q(3, 4), Branch::Pos, 0.0).unwrap();
    assert_eq!(c.tau_bar, q(3, 4));
}

#[test]
fn family_c_prismatic_limits_keep_the_halfturns() {
    let s = prismatic_limit_c(LimitKind::PrismaticPara, q(2, 3), q(3, 4), q(1, 3), q(1, 2), -1).unwrap();
    let c = s.bibennett.to_f64().couple(&0.75, Branch::Neg, 1e-9).unwrap();
    for i in 0..4 {
        assert_pass(&halfturn_certificate(&c, i, 1e-9).0);
    }
}

#[test]
fn prismatic_ab_labels() {
    let anti = LimitKind::PrismaticAnti;
    let b = prismatic_limit_ab(anti, q(1, 2), q(1, 3), q(1, 2), q(2, 3), q(1, 2), PrismSolution::First, 0.0).unwrap();
    assert_eq!(b.source, Family::B);
    assert_eq!(b.labels, vec![ClassLabel::III1, ClassLabel::III2ii]);
    assert_eq!(
        prismatic_limit_ab(anti, q(1, 2), q(1, 3), q(1, 5), q(2, 3), q(1, 2), PrismSolution::First, 0.0),
        Err(LimitError::InconsistentOffsets)
    );
    let para = LimitKind::PrismaticPara;
    assert_eq!(
        prismatic_limit_ab(para, q(1, 2), q(1, 3), q(1, 5), q(2, 3), q(1, 2), PrismSolution::First, 0.0),
        Err(LimitError::Trivial)
    );
    let g = prismatic_limit_ab(anti, q(1, 2), q(1, 3), q(1, 5), q(2, 3), q(1, 2), PrismSolution::Second, 0.0).unwrap();
    assert_eq!(g.labels, vec![ClassLabel::III1]);
    assert_eq!(g.isogonal_compatible, Some(false));
    let p = prismatic_limit_ab(para, q(1, 2), q(1, 3), q(1, 5), q(2, 3), q(1, 2), PrismSolution::Second, 0.0).unwrap();
    assert_eq!(p.labels, vec![ClassLabel::III1, ClassLabel::III4ii]);
    for s in [&b, &g, &p] {
        for t in [q(1, 3), q(3, 2)] {
            assert_pass(&s.verify(&t, Branch::Neg, 1e-9).unwrap());
        }
    }
}

#[test]
fn extra_condition_matches_isogonality() {
    // mu12 from the first factor: d1 (mu12 - mu23) = d2 (mu23 - mu34)
    let (d1, d2, m23, m34) = (q(1, 2), q(1, 3), q(2, 3), q(1, 5));
    let m12 = m23.clone() + d2.clone() / d1.clone() * (m23.clone() - m34.clone());
    let s = prismatic_limit_ab(
        LimitKind::PrismaticAnti,
        d1.clone(),
        d2.clone(),
        m12,
        m23.clone(),
        m34.clone(),
        PrismSolution::Second,
        0.0,
    )
    .unwrap();
    assert_eq!(s.isogonal_compatible, Some(true));
    assert!(s.labels.contains(&ClassLabel::III3));
    for t in [q(1, 2), q(4, 3)] {
        assert_pass(&s.verify(&t, Branch::Neg, 1e-9).unwrap());
        let c = s.bibennett.couple(&t, Branch::Neg, 0.0).unwrap();
        assert!(isogonal_certificate(&c, 0.0).verdict());
    }
    // off the condition the vertices are not isogonal
    let g = prismatic_limit_ab(LimitKind::PrismaticAnti, d1, d2, q(1, 5), m23, m34, PrismSolution::Second, 0.0).unwrap();
    let c = g.bibennett.couple(&q(1, 2), Branch::Neg, 0.0).unwrap();
    assert!(!isogonal_certificate(&c, 1e-10).verdict());
}

#[test]
fn para_extra_condition_matches_isogonality() {
    let (d1, d2, m23, m34) = (q(2, 3), q(3, 4), q(1, 3), q(1, 2));
    // d1 (mu12 + mu23) + d2 (mu23 - mu34) = 0
    let m12 = -m23.clone() - d2.clone() / d1.clone() * (m23.clone() - m34.clone());
    let s = prismatic_limit_ab(LimitKind::PrismaticPara, d1, d2, m12, m23, m34, PrismSolution::Second, 0.0).unwrap();
    assert_eq!(s.isogonal_compatible, Some(true));
    let c = s.bibennett.couple(&q(2, 3), Branch::Neg, 0.0).unwrap();
    assert!(isogonal_certificate(&c, 0.0).verdict());
}

#[test]
fn pyramidal_labels() {
    let d = spatial(q(1, 2), q(1, 3), q(0, 1));
    let mu = family_a_from_parts(&q(1, 2), &q(1, 3), &q(1, 2), &q(1, 3), 1);
    let a = pyramidal_limit(line_symmetric(d.clone(), mu, 0.0).unwrap()).unwrap();
    assert_eq!(a.labels, vec![ClassLabel::I1, ClassLabel::I3]);
    let b = pyramidal_limit(line_symmetric(d.clone(), family_b(q(2, 3), q(1, 2), &d).unwrap(), 0.0).unwrap()).unwrap();
    assert_eq!(b.labels, vec![ClassLabel::I1, ClassLabel::I2]);
    let c = pyramidal_limit(family_c(d.clone(), q(2, 3), q(1, 2), 1).unwrap()).unwrap();
    assert_eq!(c.labels, vec![ClassLabel::I2]);
    for s in [&a, &b, &c] {
        for t in [q(3, 4), q(5, 2)] {
            for br in Branch::BOTH {
                assert_pass(&s.verify(&t, br, 1e-9).unwrap());
            }
        }
    }
    let spatial_k = line_symmetric(spatial(q(1, 2), q(1, 3), q(1, 1)), family_b(q(2, 3), q(1, 2), &d).unwrap(), 0.0).unwrap();
    assert_eq!(pyramidal_limit(spatial_k), Err(LimitError::NotPyramidal));
}

#[test]
fn random_limits_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut n = 0;
    while n < 15 {
        let (d1, d2) = (random_q(&mut rng, 1, 3), random_q(&mut rng, 1, 3));
        let (m1, m2, m3) = (random_q(&mut rng, -2, 2), random_q(&mut rng, -2, 2), random_q(&mut rng, -2, 2));
        let t = random_q(&mut rng, 1, 3) + q(1, 10);
        for kind in [LimitKind::PrismaticAnti, LimitKind::PrismaticPara] {
            let Ok(s) =
                prismatic_limit_ab(kind, d1.clone(), d2.clone(), m1.clone(), m2.clone(), m3.clone(), PrismSolution::Second, 0.0)
            else {
                continue;
            };
            let Ok(rep) = s.verify(&t, Branch::Neg, 1e-9) else { continue };
            assert_pass(&rep);
            if let Ok(c) = prismatic_limit_c(kind, d1.clone(), d2.clone(), m1.clone(), m2.clone(), 1) {
                for br in Branch::BOTH {
                    if let Ok(rep) = c.verify(&t, br, 1e-9) {
                        assert_pass(&rep);
                    }
                }
            }
            n += 1;
        }
    }
}

#[test]
fn shrinking_k_approaches_the_pyramid() {
    // companion of family C depends continuously on k
    let t = q(3, 4);
    let tb = |k: f64| {
        let d = Design::Spatial(BennettDesign::validate(0.5, 1.0 / 3.0, k).unwrap());
        family_c(d, 2.0 / 3.0, 0.5, 1).unwrap().companion(&t.to_f64(), Branch::Neg).unwrap()
    };
    let limit = tb(0.0);
    let e1 = (tb(1e-3) - limit).abs();
    let e2 = (tb(1e-4) - limit).abs();
    assert!(e1 < 1e-4 && e2 < e1 / 50.0, "{e1} {e2}");
}

#[test]
fn predicates_reject_foreign_labels() {
    let d = spatial(q(1, 2), q(1, 3), q(0, 1));
    let mut c = pyramidal_limit(family_c(d.clone(), q(2, 3), q(1, 2), 1).unwrap()).unwrap();
    c.labels = vec![ClassLabel::I1, ClassLabel::I3];
    let rep = c.verify(&q(3, 4), Branch::Neg, 1e-9).unwrap();
    let failed: Vec<_> = rep.failures().map(|r| r.label.clone()).collect();
    assert!(failed.iter().any(|l| l.starts_with("I1")), "{failed:?}");
    assert!(failed.iter().any(|l| l.starts_with("I3")), "{failed:?}");

    let mu = family_a_from_parts(&q(1, 2), &q(1, 3), &q(1, 2), &q(1, 3), 1);
    let mut a = pyramidal_limit(line_symmetric(d, mu, 0.0).unwrap()).unwrap();
    a.labels = vec![ClassLabel::I2];
    assert!(!a.verify(&q(3, 4), Branch::Neg, 1e-9).unwrap().verdict());

    let mut g =
        prismatic_limit_ab(LimitKind::PrismaticAnti, q(1, 2), q(1, 3), q(1, 5), q(2, 3), q(1, 2), PrismSolution::Second, 0.0)
            .unwrap();
    g.labels = vec![ClassLabel::III2ii, ClassLabel::III4ii, ClassLabel::III3];
    let rep = g.verify(&q(3, 4), Branch::Neg, 1e-9).unwrap();
    let failed: Vec<_> = rep.failures().map(|r| r.label.split('.').next().unwrap().to_string()).collect();
    for l in ["III2ii", "III4ii", "III3"] {
        assert!(failed.iter().any(|f| f == l), "{l}: {failed:?}");
    }
}
