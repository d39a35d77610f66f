use bibennett::algebra::{rat, Rational, Vec3};
use bibennett::families::{Branch, Family};
use bibennett::io_export::*;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn fixture(name: &str) -> Config {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    parse_config(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn example_c_config_builds_family_c() {
    let text = r#"{"family":"C","a1":"1/2","a2":"1/3","k":"1","mu14":"2/3","mu12":"1/4","s":1,"tau":"9/10"}"#;
    let cfg = parse_config(text).unwrap();
    let Structure::Coupled(bb) = cfg.build().unwrap() else { panic!("expected a coupling") };
    assert_eq!(bb.family, Family::C);
    assert_eq!(cfg.tau_values().unwrap(), vec![q(9, 10)]);
    assert_eq!(cfg, fixture("example_c"));
}

#[test]
fn rejected_inputs() {
    let equal = r#"{"family":"single","a1":"1/2","a2":"1/2","tau":"1"}"#;
    assert!(matches!(parse_config(equal), Err(ConfigError::Design(_))));
    let missing = r#"{"family":"B","a1":"1/2","a2":"1/3","mu23":"2/3"}"#;
    let err = parse_config(missing).unwrap_err();
    assert_eq!(err, ConfigError::MissingField { family: FamilyKind::B, field: "mu34" });
    assert!(err.to_string().contains("mu34"));
    let unknown = r#"{"family":"C",
      "colour":"red"}"#;
    match parse_config(unknown) {
        Err(ConfigError::Parse { line, message, .. }) => {
            assert_eq!(line, 2);
            assert!(message.contains("colour"));
        }
        other => panic!("{other:?}"),
    }
    let bad_number = r#"{"family":"single","a1":"1/0","a2":"1/3"}"#;
    assert!(matches!(parse_config(bad_number), Err(ConfigError::Parse { .. })));
    let schema = r#"{"schema":2,"family":"single","a1":"1/2","a2":"1/3"}"#;
    assert_eq!(parse_config(schema), Err(ConfigError::Schema(2)));
}

#[test]
fn numbers_are_exact() {
    let cfg = parse_config(r#"{"family":"single","a1":0.5,"a2":"0.25","k":2,"taus":["1/3",0.1]}"#).unwrap();
    assert_eq!(cfg.a1, Some(Num(q(1, 2))));
    assert_eq!(cfg.a2, Some(Num(q(1, 4))));
    assert_eq!(cfg.tau_values().unwrap(), vec![q(1, 3), q(1, 10)]);
}

#[test]
fn config_round_trip() {
    for name in [
        "planar_1a",
        "planar_2a",
        "planar_1b",
        "planar_2b",
        "example_a",
        "example_b",
        "example_c",
        "prism_anti",
        "prism_para",
        "pyramid",
    ] {
        let cfg = fixture(name);
        let again = parse_config(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again, "{name}");
    }
    let ranged =
        parse_config(r#"{"family":"single","a1":"1/2","a2":"1/3","tau_range":{"from":"0","to":"1","steps":4}}"#).unwrap();
    assert_eq!(ranged.tau_values().unwrap().len(), 5);
    assert_eq!(parse_config(&ranged.to_json()).unwrap(), ranged);
}

#[test]
fn hp_patch_grid() {
    let flat = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(1.0, 1.0, 0.0), Vec3::new(0.0, 1.0, 0.0)];
    let one = hp_patch(&flat, 1);
    assert_eq!(one.vertices, vec![flat[0].clone(), flat[1].clone(), flat[3].clone(), flat[2].clone()]);
    assert_eq!(one.faces, vec![[0, 1, 3, 2]]);

    let skew = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(2.0, 0.0, 0.3), Vec3::new(2.1, 1.0, -0.4), Vec3::new(0.2, 1.5, 1.0)];
    let m = hp_patch(&skew, 2);
    assert_eq!(m.vertices.len(), 9);
    assert_eq!(m.faces.len(), 4);
    let centre = skew.iter().fold(Vec3::zero(), |acc, p| &acc + &p.scale(&0.25));
    assert!((&m.vertices[4] - &centre).max_abs() < 1e-15);

    // every grid point satisfies the bilinear relation of the unique
    // hyperbolic paraboloid through the corners: X = Q0 + u e + v f + uv g
    let n = 6;
    let m = hp_patch(&skew, n);
    let (e, f) = (&skew[1] - &skew[0], &skew[3] - &skew[0]);
    let g = &(&skew[2] - &skew[1]) - &(&skew[3] - &skew[0]);
    let normal = e.cross(&f);
    for j in 0..=n {
        for i in 0..=n {
            let (u, v) = (i as f64 / n as f64, j as f64 / n as f64);
            let x = &m.vertices[j * (n + 1) + i] - &skew[0];
            // the height over the (e, f) plane is uv <g, n> / |n|
            let h = x.dot(&normal) - u * v * g.dot(&normal);
            assert!(h.abs() < 1e-12);
        }
    }
    assert!(m.lint().is_ok());
}

#[test]
fn significant_digits() {
    assert_eq!(sig12(0.0), "0");
    assert_eq!(sig12(-0.0), "0");
    assert_eq!(sig12(1.0), "1");
    assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
    assert_eq!(sig12(-12345.678901234567), "-12345.6789012");
    assert_eq!(sig12(2.5e-7), "0.00000025");
}

#[test]
fn obj_export_of_example_c() {
    let cfg = fixture("example_c");
    let s = cfg.build().unwrap();
    let opts = RibbonOptions { patch_n: 3, width: None };
    let text = export_obj(&s, &q(9, 10), Branch::Neg, &opts, 1e-9).unwrap();
    let groups = text.lines().filter(|l| l.starts_with("g ")).count();
    let verts = text.lines().filter(|l| l.starts_with("v ")).count();
    let faces: Vec<_> = text.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(groups, 8);
    assert_eq!(verts, 8 * 16);
    assert_eq!(faces.len(), 8 * 9);
    for f in faces {
        for idx in f.split_whitespace().skip(1) {
            let i: usize = idx.parse().unwrap();
            assert!(i >= 1 && i <= verts);
        }
    }
    assert!(text.lines().all(|l| ["v ", "g ", "f "].iter().any(|p| l.starts_with(p))));
    assert!(!text.contains("NaN"));
    let again = export_obj(&cfg.build().unwrap(), &q(9, 10), Branch::Neg, &opts, 1e-9).unwrap();
    assert_eq!(text, again);
    let single = export_obj(&fixture("planar_2a").build().unwrap(), &q(3, 5), Branch::Neg, &opts, 1e-9).unwrap();
    assert_eq!(single.lines().filter(|l| l.starts_with("g ")).count(), 4);
}

#[test]
fn sweep_of_example_c() {
    let s = fixture("example_c").build().unwrap();
    let taus = [q(1, 2), q(3, 4), q(9, 10)];
    for mode in [Mode::Exact, Mode::Float] {
        let rows = sweep_report(&s, &taus, BranchChoice::Neg, mode, 1e-9).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert_eq!(r.status, "ok");
            assert_eq!(r.verdict, Some(true), "{r:?}");
            assert_eq!(r.halfturn, Some(true));
        }
    }
    let csv = rows_to_csv(&sweep_report(&s, &taus, BranchChoice::Both, Mode::Float, 1e-9).unwrap());
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), HEADER.join(","));
    assert_eq!(lines.count(), 6);
}

#[test]
fn sweep_markers() {
    let s = fixture("example_c").build().unwrap();
    // tau = 0 is the pole of the transmission; tau = 2/5 has no real partner on the parallelogram prism
    let rows = sweep_report(&s, &[q(0, 1)], BranchChoice::Both, Mode::Float, 1e-9).unwrap();
    assert!(rows.iter().all(|r| r.status == "pole" && r.tau_bar.is_none()));
    let prism = fixture("prism_para").build().unwrap();
    let rows = sweep_report(&prism, &[q(2, 5)], BranchChoice::Both, Mode::Float, 1e-9).unwrap();
    assert!(rows.iter().all(|r| r.status == "no_real_tau_bar"));
    let json: serde_json::Value = serde_json::from_str(&rows_to_json(&rows)).unwrap();
    assert!(json[0]["tau_bar"].is_null());
}

#[test]
fn coincident_branch_is_marked() {
    // on the anti-parallelogram limit tau_bar = -tau puts the partner onto the loop
    let prism = fixture("prism_anti").build().unwrap();
    for mode in [Mode::Float, Mode::Exact] {
        let rows = sweep_report(&prism, &[q(3, 4)], BranchChoice::Both, mode, 1e-9).unwrap();
        assert_eq!(rows[0].status, "coincident");
        assert_eq!(rows[1].status, "ok");
        assert!((rows[1].tau_bar.unwrap() - 0.75).abs() < 1e-12);
        assert_eq!(rows[1].verdict, Some(true));
    }
}

#[test]
fn family_b_isogram_column_vanishes() {
    let s = fixture("example_b").build().unwrap();
    let taus: Vec<_> = (1..8).map(|i| q(i, 3)).collect();
    let rows = sweep_report(&s, &taus, BranchChoice::Both, Mode::Exact, 1e-9).unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert_eq!(r.branch, "sym");
        assert_eq!(r.isogram, Some(0.0));
        assert_eq!(r.deltoidal, Some(true));
        assert_eq!(r.verdict, Some(true));
    }
}

#[test]
fn limit_fixtures_sweep() {
    for name in ["prism_anti", "prism_para", "pyramid"] {
        let cfg = fixture(name);
        let rows =
            sweep_report(&cfg.build().unwrap(), &cfg.tau_values().unwrap(), BranchChoice::Both, Mode::Float, 1e-9).unwrap();
        let ok: Vec<_> = rows.iter().filter(|r| r.status == "ok").collect();
        assert!(!ok.is_empty(), "{name}");
        for r in ok {
            assert_eq!(r.labels, Some(true), "{name} {r:?}");
            assert_eq!(r.verdict, Some(true), "{name} {r:?}");
        }
    }
}
