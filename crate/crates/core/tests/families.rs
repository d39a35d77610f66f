use bibennett::algebra::{rat, Rational, Scalar, Surd, Vec3};
use bibennett::bennett::*;
use bibennett::families::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn design(a1: Rational, a2: Rational, k: Rational) -> Design<Rational> {
    Design::Spatial(BennettDesign::validate(a1, a2, k).unwrap())
}

fn example_a_mu() -> MuSet<Rational> {
    MuSet::new(q(37, 40), q(7, 8), q(1, 1), q(1, 2))
}

fn example_c(s: i64) -> BiBennett<Rational> {
    family_c(design(q(1, 2), q(1, 3), q(1, 1)), q(2, 3), q(1, 4), s).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let d = rng.gen_range(1..=9);
    q(rng.gen_range(lo * d..=hi * d), d)
}

fn random_design(rng: &mut ChaCha8Rng) -> BennettDesign<Rational> {
    loop {
        let a1 = q(rng.gen_range(1..=30), rng.gen_range(1..=10));
        let a2 = q(rng.gen_range(1..=30), rng.gen_range(1..=10));
        let k = q(rng.gen_range(1..=8), rng.gen_range(1..=4));
        if let Ok(d) = BennettDesign::validate(a1, a2, k) {
            return d;
        }
    }
}

fn taus() -> Vec<Rational> {
    [(1, 4), (1, 2), (2, 3), (9, 10), (1, 1), (3, 2), (2, 1), (-1, 3), (-7, 5), (5, 1)].iter().map(|&(n, d)| q(n, d)).collect()
}

fn rel_spread(rows: &[[f64; 6]]) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..6 {
        let base = rows[0][j];
        for r in rows {
            worst = worst.max((r[j] - base).abs() / base.abs().max(1.0));
        }
    }
    worst
}

/// Exact square of the companion, read off its (even) quadratic.
fn bar_tau_sq(bb: &BiBennett<Rational>, t: &Rational) -> Rational {
    let [c0, c1, c2] = bb.companion_quadratic(t).unwrap();
    assert!(c1.is_zero());
    -c0 / c2
}

#[test]
fn points_on_axes_follow_the_frame() {
    let d = design(q(1, 2), q(1, 3), q(1, 1));
    let p = pose(&d, &q(9, 10)).unwrap();
    let quad = points_on_axes(&p, &MuSet::new(q(0, 1), q(0, 1), q(0, 1), q(0, 1)));
    assert_eq!(quad.p, p.f_points());
    let quad = points_on_axes(&p, &MuSet::new(q(1, 1), q(0, 1), q(0, 1), q(0, 1)));
    assert_eq!(quad.p[0], Vec3::unit_x());
}

#[test]
fn family_a_recovers_the_example_design() {
    assert_eq!(family_a(&example_a_mu()).unwrap(), (q(1, 2), q(1, 3)));
    let all_equal = MuSet::new(q(1, 2), q(1, 2), q(1, 2), q(1, 2));
    assert!(matches!(family_a(&all_equal), Err(FamilyError::ExcludedBranch(_))));
    let b = MuSet::new(q(2, 3), q(1, 2), q(2, 3), q(1, 2));
    assert!(matches!(family_a(&b), Err(FamilyError::ExcludedBranch(_))));
    let zero = MuSet::new(q(0, 1), q(0, 1), q(0, 1), q(0, 1));
    assert_eq!(family_a(&zero), Err(FamilyError::TrivialQuad));
    // a1^2 = -AB/(CD) < 0 here
    let neg = MuSet::new(q(3, 1), q(1, 1), q(1, 1), q(0, 1));
    assert!(matches!(family_a_squares(&neg), Err(FamilyError::NoRealFamily { .. })));

    let d = Design::Spatial(family_a_design(&example_a_mu(), q(1, 1)).unwrap());
    for t in taus() {
        let quad = points_on_axes(&pose(&d, &t).unwrap(), &example_a_mu());
        assert_eq!(quad.side2(0), quad.side2(2));
        assert_eq!(quad.side2(1), quad.side2(3));
    }
}

#[test]
fn family_a_parametrization_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 50 {
        let dsg = random_design(&mut rng);
        let c = random_rational(&mut rng, -3, 3);
        let dd = random_rational(&mut rng, -3, 3);
        let sigma = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mu = family_a_from_parts(dsg.a1(), dsg.a2(), &c, &dd, sigma);
        let Ok((a1, a2)) = family_a(&mu) else { continue };
        assert_eq!((&a1, &a2), (dsg.a1(), dsg.a2()));
        let d = Design::Spatial(dsg);
        for t in taus() {
            let quad = points_on_axes(&pose(&d, &t).unwrap(), &mu);
            assert_eq!(quad.side2(0), quad.side2(2));
            assert_eq!(quad.side2(1), quad.side2(3));
        }
        checked += 1;
    }
}

#[test]
fn family_b_and_trivial_detection() {
    let d = design(q(1, 2), q(1, 3), q(1, 1));
    let mu = family_b(q(2, 3), q(1, 2), &d).unwrap();
    assert_eq!(mu, MuSet::new(q(2, 3), q(1, 2), q(2, 3), q(1, 2)));
    assert_eq!(family_b(q(0, 1), q(0, 1), &d), Err(FamilyError::TrivialQuad));
    assert!(detect_trivial(&MuSet::new(1.0, 2.0, -1.0, -2.0)));
    assert!(!detect_trivial(&MuSet::new(1.0, 2.0, 1.0, 2.0)));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let d = Design::Spatial(random_design(&mut rng));
        let mu = family_b(random_rational(&mut rng, -2, 2), random_rational(&mut rng, -2, 2), &d);
        let Ok(mu) = mu else { continue };
        let bb = line_symmetric(d.clone(), mu.clone(), DEFAULT_TOL).unwrap();
        assert!(matches!(bb.family, Family::B | Family::TrivialLineSym));
        let t = random_rational(&mut rng, 1, 4);
        let quad = points_on_axes(&pose(&d, &t).unwrap(), &mu);
        assert_eq!(quad.side2(0), quad.side2(2));
        assert_eq!(quad.side2(1), quad.side2(3));
    }
}

#[test]
fn trivial_offsets_keep_the_f_quad_symmetry_line() {
    let d = design(q(1, 2), q(1, 3), q(1, 1));
    let mu = MuSet::new(q(1, 1), q(2, 1), q(-1, 1), q(-2, 1));
    let p = pose(&d, &q(9, 10)).unwrap().to_f64();
    let quad = points_on_axes(&p, &mu.map(|v| v.to_f64()));
    let a = symmetry_line(&p, 1e-9).unwrap();
    let b = quad_symmetry_line(&quad.p, 1e-9).unwrap();
    let (ua, ub) = (a.dir.normalized(), b.dir.normalized());
    assert!(ua.cross(&ub).max_abs() < 1e-12);
    assert!((&b.point - &a.point).cross(&ua).max_abs() < 1e-12);
}

#[test]
fn coupling_quartic_values() {
    let d = BennettDesign::validate(q(1, 2), q(1, 3), q(1, 1)).unwrap();
    let u = coupling_quartic(&d, &q(2, 3), &q(1, 4));
    assert_eq!((u.a.clone(), u.b.clone(), u.c.clone(), u.d.clone()), (q(55, 5184), q(5047, 5184), q(-3617, 5184), q(1375, 5184)));
    assert_eq!(u.bar_tau_sq(&q(9, 10)).unwrap(), q(546307, 357245));
    let eq = coupling_quartic(&d, &q(1, 2), &q(1, 2));
    assert!(eq.a.is_zero() && eq.d.is_zero());
    assert_eq!(eq.c, -eq.b.clone());
    assert_eq!(solve_bar_tau(&eq, &q(3, 5)).unwrap(), vec![q(-3, 5), q(3, 5)]);
}

#[test]
fn example_c_companion_parameter() {
    let bb = example_c(1);
    assert_eq!(bb.bar_mu, MuSet::new(q(1, 4), q(2, 3), q(1, 4), q(2, 3)));
    let t = q(9, 10);
    assert_eq!(bar_tau_sq(&bb, &t), q(546307, 357245));
    let neg = bb.to_f64().companion(&t.to_f64(), Branch::Neg).unwrap();
    assert!(neg.to_f64() < 0.0);
    assert!((neg.to_f64() + 195165444215f64.sqrt() / 357245.0).abs() < 1e-12);
    assert!((neg.to_f64() + 1.23662).abs() < 1e-4);
    let exact = bb.companion_exact(&t, Branch::Neg).unwrap();
    assert_eq!(exact.clone() * exact.clone(), Surd::rational(q(546307, 357245)));
    assert!(exact.negative());
}

#[test]
fn general_k_quartic_matches_the_diagonal_conditions() {
    // The closed form and the interpolated first diagonal condition must
    // have proportional tau_bar quadratics at every tau.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in [q(0, 1), q(1, 1), q(5, 2)] {
        for _ in 0..5 {
            let dsg = random_design(&mut rng).with_k(k.clone());
            let (m14, m12) = (random_rational(&mut rng, -2, 2), random_rational(&mut rng, -2, 2));
            if m14.square() == m12.square() {
                continue;
            }
            let bb = family_c(Design::Spatial(dsg.clone()), m14.clone(), m12.clone(), 1).unwrap();
            let forms = diagonal_forms(&bb.design, &bb.mu, &bb.bar_design, &bb.bar_mu).unwrap();
            let u = coupling_quartic(&dsg, &m14, &m12);
            for t in taus() {
                let f = forms[0].at_tau(&t);
                let g = forms[1].at_tau(&t);
                let uq = [u.b.clone() * t.square() + u.d.clone(), q(0, 1), u.a.clone() * t.square() + u.c.clone()];
                for i in 0..3 {
                    for j in 0..3 {
                        assert_eq!(f.coeff(i) * uq[j].clone(), f.coeff(j) * uq[i].clone());
                        assert_eq!(g.coeff(i) * uq[j].clone(), g.coeff(j) * uq[i].clone());
                    }
                }
            }
        }
    }
}

#[test]
fn pyramidal_and_planar_example_values() {
    // pyramidal: k = 0
    let bb = family_c(design(q(1, 2), q(1, 3), q(0, 1)), q(2, 3), q(1, 2), 1).unwrap();
    let t = q(3, 4);
    assert_eq!(bar_tau_sq(&bb, &t), q(6319, 3281));
    let tb = bb.to_f64().companion(&t.to_f64(), Branch::Neg).unwrap();
    assert!((tb.to_f64() + 20732639f64.sqrt() / 3281.0).abs() < 1e-12);

    // anti-parallelogram limit
    let d8a = Design::Planar(PlanarDesign::validate(q(1, 2), q(1, 3), PlanarCase::C2a).unwrap());
    let bb = family_c(d8a, q(2, 3), q(1, 2), 1).unwrap();
    let roots: Vec<_> = bb.companions(&t).unwrap().into_iter().map(|(_, v)| v).collect();
    assert!(roots.contains(&q(3, 4)));

    // parallelogram limit
    let d8b = Design::Planar(PlanarDesign::validate(q(2, 3), q(3, 4), PlanarCase::C2b).unwrap());
    for s in [1, -1] {
        let bb = family_c(d8b.clone(), q(1, 3), q(1, 2), s).unwrap();
        assert_eq!(bar_tau_sq(&bb, &t), q(37, 413));
        let tb = bb.to_f64().companion(&t.to_f64(), Branch::Neg).unwrap();
        assert!((tb.to_f64() + 15281f64.sqrt() / 413.0).abs() < 1e-12);
    }
}

#[test]
fn example_c_couples_exactly_on_every_branch() {
    for s in [1, -1] {
        let bb = example_c(s);
        let mut dists = None;
        for t in [q(1, 2), q(3, 4), q(9, 10)] {
            for b in Branch::BOTH {
                let c = bb.couple_exact(&t, b).unwrap();
                assert_eq!(c.orientation, Orientation::Direct);
                assert_eq!(c.quad.distances2(), c.bar_quad.distances2());
                let sides: Vec<_> = (0..4).map(|i| c.quad.side2(i)).collect();
                assert_eq!(dists.get_or_insert_with(|| sides.clone()), &sides);
                for i in 0..4 {
                    assert_eq!(c.delta.apply_point(&c.bar_quad.p[i]), c.quad.p[i]);
                }
            }
        }
    }
}

fn check_flexible(bb: &BiBennett<f64>, tol: f64) -> bool {
    let mut mismatch = 0.0f64;
    let mut sides = Vec::new();
    let mut t = 0.15;
    while sides.len() < 10 && t < 20.0 {
        t *= 1.37;
        for b in Branch::BOTH {
            match bb.couple(&t, b, 1e-8) {
                Ok(c) => {
                    let (d, e) = (c.quad.distances2(), c.bar_quad.distances2());
                    for j in 0..6 {
                        mismatch = mismatch.max((d[j] - e[j]).abs() / d[j].abs().max(1.0));
                    }
                    let s = c.quad.distances2();
                    sides.push([s[0], s[1], s[2], s[3], 0.0, 0.0]);
                }
                Err(FamilyError::NoRealCompanion { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    sides.len() >= 10 && mismatch < tol && rel_spread(&sides) < tol
}

#[test]
fn random_couplings_are_flexible() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut na, mut nb, mut nc) = (0, 0, 0);
    while na < 10 || nb < 10 || nc < 10 {
        let dsg = random_design(&mut rng);
        let d = Design::Spatial(dsg.to_f64());
        let (m1, m2) = (random_rational(&mut rng, -2, 2).to_f64(), random_rational(&mut rng, -2, 2).to_f64());
        if na < 10 {
            let mu =
                family_a_from_parts(dsg.a1(), dsg.a2(), &random_rational(&mut rng, -2, 2), &random_rational(&mut rng, -2, 2), 1);
            if family_a(&mu).is_ok() {
                let bb = line_symmetric(d.clone(), mu.map(|v| v.to_f64()), 1e-9).unwrap();
                assert_eq!(bb.family, Family::A);
                assert!(check_flexible(&bb, 1e-10));
                na += 1;
            }
        }
        if nb < 10 && (m1 != 0.0 || m2 != 0.0) && m1 != -m2 {
            let bb = line_symmetric(d.clone(), family_b(m1, m2, &d).unwrap(), 1e-9).unwrap();
            assert!(check_flexible(&bb, 1e-10));
            nb += 1;
        }
        if nc < 10 && m1 * m1 != m2 * m2 {
            let bb = family_c(d.clone(), m1, m2, if rng.gen_bool(0.5) { 1 } else { -1 }).unwrap();
            if check_flexible(&bb, 1e-10) {
                nc += 1;
            }
        }
    }
}

#[test]
fn symmetric_partner_is_the_half_turn() {
    let bb = line_symmetric(design(q(1, 2), q(1, 3), q(1, 1)), example_a_mu(), 0.0).unwrap();
    let c = bb.couple_exact(&q(9, 10), Branch::Neg).unwrap();
    let (axes, rho) = halfturn_partner(&c.pose, &c.quad, 0.0).unwrap();
    assert_eq!(c.orientation, Orientation::Direct);
    for i in 0..4 {
        assert_eq!(axes[i].f, c.hat_axes[i].f);
        assert_eq!(axes[i].r, c.hat_axes[i].r);
        assert_eq!(rho.apply_point(&c.quad.p[i]), c.quad.p[(i + 2) % 4]);
    }
    // involution
    assert_eq!(rho.compose(&rho), bibennett::algebra::RigidMotion::identity());
}

#[test]
fn necessary_conditions_vanish_on_families() {
    let a = line_symmetric(design(q(1, 2), q(1, 3), q(1, 1)), example_a_mu(), 0.0).unwrap();
    let b_mu = family_b(q(2, 3), q(1, 2), &a.design).unwrap();
    let b = line_symmetric(a.design.clone(), b_mu, 0.0).unwrap();
    for bb in [a, b, example_c(1), example_c(-1)] {
        let r = bb.necessary_conditions().unwrap();
        assert_eq!(r.residuals().len(), 13);
        assert!(r.all_vanish(0.0), "{:?}", bb.family);
    }
}

#[test]
fn necessary_conditions_detect_perturbed_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let d = Design::Spatial(random_design(&mut rng));
        let bd = Design::Spatial(random_design(&mut rng));
        let mu = MuSet::from_array(std::array::from_fn(|_| random_rational(&mut rng, -2, 2)));
        let bmu = MuSet::from_array(std::array::from_fn(|_| random_rational(&mut rng, -2, 2)));
        let r = necessary_conditions(&d, &mu, &bd, &bmu).unwrap();
        assert!(!r.all_vanish(0.0));
    }
    // a single nudged offset on a valid coupling
    let bb = example_c(1);
    let mut bmu = bb.bar_mu.clone();
    bmu.mu12 += q(1, 1000);
    let r = necessary_conditions(&bb.design, &bb.mu, &bb.bar_design, &bmu).unwrap();
    assert!(!r.all_vanish(0.0));
}

#[test]
fn align_quads_basic_cases() {
    let quad = example_c(1).couple_exact(&q(9, 10), Branch::Neg).unwrap().quad.to_f64();
    let (m, o) = align_quads(&quad, &quad, 1e-9).unwrap();
    assert!(m.max_abs_diff(&bibennett::algebra::RigidMotion::identity()) < 1e-12);
    assert_eq!(o, Orientation::Direct);
    let shift = Vec3::new(1.0, 2.0, 3.0);
    let moved = SkewQuad::new(std::array::from_fn(|i| &quad.p[i] + &shift));
    let (m, _) = align_quads(&quad, &moved, 1e-9).unwrap();
    assert!((m.translation() - shift.clone()).max_abs() < 1e-12);
    let mut bad = moved.clone();
    bad.p[0] = &bad.p[0] + &Vec3::new(0.1, 0.0, 0.0);
    assert!(matches!(align_quads(&quad, &bad, 1e-9), Err(FamilyError::NotIsometric(_))));
    let mirrored = SkewQuad::new(std::array::from_fn(|i| Vec3::new(-quad.p[i].0[0], quad.p[i].0[1], quad.p[i].0[2])));
    assert_eq!(align_quads(&quad, &mirrored, 1e-9).unwrap().1, Orientation::Reversing);
}

fn line_pair(a: &Joint<f64>, b: &Joint<f64>) -> [f64; 2] {
    let (ua, ub) = (a.dir.normalized(), b.dir.normalized());
    let cos = ua.dot(&ub);
    // mutual moment of the two unit lines
    let moment = (&b.point - &a.point).dot(&ua.cross(&ub));
    [cos, moment]
}

#[test]
fn six_r_loops_move_rigidly() {
    let a = line_symmetric(design(q(1, 2), q(1, 3), q(1, 1)), example_a_mu(), 0.0).unwrap().to_f64();
    for bb in [a, example_c(1).to_f64(), example_c(-1).to_f64()] {
        let mut first: Option<Vec<[f64; 2]>> = None;
        for t in [0.5, 0.75, 0.9, 1.6] {
            let c = bb.couple(&t, Branch::Neg, 1e-9).unwrap();
            let loops = extract_6r_loops(&c);
            let mut seen = [[false; 4]; 2];
            let mut inv = Vec::new();
            for l in &loops {
                assert_eq!(l.iter().filter(|j| j.kind == JointKind::Axis).count(), 2);
                assert_eq!(l.iter().filter(|j| j.kind == JointKind::HatAxis).count(), 2);
                for j in l {
                    match j.kind {
                        JointKind::Axis => seen[0][j.vertex] = true,
                        JointKind::HatAxis => seen[1][j.vertex] = true,
                        JointKind::Edge => {}
                    }
                }
                for i in 0..6 {
                    inv.push(line_pair(&l[i], &l[(i + 1) % 6]));
                }
            }
            assert!(seen.iter().flatten().all(|&b| b));
            match &first {
                None => first = Some(inv),
                Some(f) => {
                    for (x, y) in f.iter().zip(&inv) {
                        assert!((x[0] - y[0]).abs() < 1e-9 && (x[1] - y[1]).abs() < 1e-9, "{x:?} vs {y:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn symmetric_loops_map_to_themselves() {
    let bb = line_symmetric(design(q(1, 2), q(1, 3), q(1, 1)), example_a_mu(), 0.0).unwrap().to_f64();
    let c = bb.couple(&0.9, Branch::Neg, 1e-9).unwrap();
    let (_, rho) = halfturn_partner(&c.pose, &c.quad, 1e-9).unwrap();
    let on_line = |p: &Vec3<f64>, j: &Joint<f64>| (p - &j.point).cross(&j.dir.normalized()).max_abs() < 1e-9;
    for l in extract_6r_loops(&c) {
        for j in &l {
            let (p, d) = (rho.apply_point(&j.point), rho.apply_dir(&j.dir));
            let hit = l.iter().any(|k| on_line(&p, k) && on_line(&(&p + &d), k));
            assert!(hit, "joint {:?} {} leaves its loop", j.kind, j.vertex);
        }
    }
}

#[test]
fn invalid_sign_is_rejected() {
    assert_eq!(family_c(design(q(1, 2), q(1, 3), q(1, 1)), q(1, 1), q(1, 2), 0), Err(FamilyError::InvalidSign(0)));
}
