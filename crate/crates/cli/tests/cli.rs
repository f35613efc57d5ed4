use std::path::Path;
use std::process::{Command, Output};

use hedgehog_cli::Scene;

fn hedgehog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hedgehog")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_scene(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

const SQUARE: &str = r#"{"vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]]}"#;

#[test]
fn verify_exit_codes_on_figure1() {
    let slabs = hedgehog(&["verify", "--kind", "slabs"]);
    assert_eq!(code(&slabs), 0, "{}", stdout(&slabs));
    assert!(stdout(&slabs).contains("result: PASS"));
    let sections = hedgehog(&["verify", "--kind", "sections", "--scene", "figure1"]);
    assert_eq!(code(&sections), 1);
    let sup: f64 = stdout(&sections)
        .lines()
        .find_map(|l| l.strip_prefix("sup: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(sup > 1e-3);
}

#[test]
fn identical_polygons_pass_with_zero_sup() {
    let out = hedgehog(&["verify", "--kind", "sections", "--p", "Q", "--q", "Q"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("sup: 0e0"));
}

#[test]
fn tol_flag_overrides_the_pass_threshold() {
    let out = hedgehog(&["verify", "--kind", "sections", "--tol", "10"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn csv_output_is_written_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = hedgehog(&["verify", "--kind", "sections", "--samples", "256", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 1);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("theta,value_P,value_Q,abs_diff\n"));
    assert!(text.lines().count() > 256);
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn error_paths_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let malformed = write_scene(dir.path(), "bad.json", "{ not json");
    let duplicate = write_scene(
        dir.path(),
        "dup.json",
        &format!(r#"{{"polygons": {{"A": {SQUARE}, "A": {SQUARE}}}}}"#),
    );
    let concave = write_scene(
        dir.path(),
        "concave.json",
        r#"{"polygons": {"A": {"vertices": [[0, 0], [2, 0], [1, 0.5], [2, 2], [0, 2]]}}}"#,
    );
    let gap = write_scene(
        dir.path(),
        "gap.json",
        r#"{"hedgehogs": {"h": {"pieces": [{"arc": [0, 3], "const": 1}, {"arc": [3, 6.283185307179586], "const": 2}]}}}"#,
    );
    let big = write_scene(
        dir.path(),
        "big.json",
        &format!(r#"{{"polygons": {{"A": {SQUARE}}}, "hedgehogs": {{"h": {{"pieces": [{{"const": 3}}]}}}}}}"#),
    );
    let unwritable = dir.path().join("no/such/dir/out.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--kind", "slabs", "--p", "R"],
        vec!["verify", "--kind", "slabs", "--h", "nope"],
        vec!["verify", "--kind", "slabs", "--strict"],
        vec!["verify", "--kind", "sections", "--strict"],
        vec!["verify", "--kind", "slabs", "--samples", "0"],
        vec!["verify", "--kind", "slabs", "--tol", "-1"],
        vec!["verify", "--kind", "slabs", "--out", unwritable.to_str().unwrap()],
        vec!["verify", "--kind", "cubes"],
        vec!["verify"],
        vec!["verify", "--kind", "slabs", "--scene", missing.to_str().unwrap()],
        vec!["verify", "--kind", "slabs", "--scene", &malformed],
        vec!["verify", "--kind", "slabs", "--scene", &duplicate],
        vec!["verify", "--kind", "slabs", "--scene", &concave],
        vec!["checks", "--h", "h", "--scene", &gap],
        vec!["verify", "--kind", "sections", "--scene", &big, "--p", "A", "--q", "A", "--h", "h"],
        vec!["checks", "--h", "nope"],
        vec!["envelope", "--h", "nope"],
        vec!["envelope", "--h", "sin4", "--out", unwritable.to_str().unwrap()],
        vec!["frobnicate"],
    ];
    for args in cases {
        let out = hedgehog(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn checks_pass_on_builtin_hedgehogs() {
    for name in ["M", "sin4", "trefoil"] {
        let out = hedgehog(&["checks", "--h", name, "--seed", "3"]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
    }
    let out = hedgehog(&["checks", "--h", "kinked"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("skipped breakpoint").count(), 4);
}

#[test]
fn checks_fail_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // residuals of order 1e-16 cannot meet a 1e-30 tolerance
    let scene = write_scene(
        dir.path(),
        "strict.json",
        r#"{"hedgehogs": {"h": {"pieces": [{"const": 1, "sin": [0, 0, 0, 1]}]}},
            "defaults": {"tolerances": {"residual": 1e-30}}}"#,
    );
    let out = hedgehog(&["checks", "--h", "h", "--scene", &scene]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("result: FAIL"));
}

#[test]
fn checks_depend_only_on_the_seed() {
    let a = hedgehog(&["checks", "--h", "trefoil", "--seed", "5"]);
    let b = hedgehog(&["checks", "--h", "trefoil", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn envelope_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sin4.svg");
    let out = hedgehog(&["envelope", "--h", "sin4", "--line", "0.5", "--line", "-1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert_eq!(svg.matches("<line").count(), 2);
    let kinked = hedgehog(&["envelope", "--h", "kinked", "--samples", "100"]);
    assert_eq!(stdout(&kinked).matches("<polyline").count(), 4);
}

#[test]
fn dumped_scene_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scene.json");
    let out = hedgehog(&["dump-scene", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let loaded = Scene::load(&path).unwrap();
    let builtin = Scene::figure1();
    assert_eq!(loaded.polygons.keys().collect::<Vec<_>>(), builtin.polygons.keys().collect::<Vec<_>>());
    for (name, p) in &builtin.polygons {
        for (a, b) in p.vertices().iter().zip(loaded.polygons[name].vertices()) {
            assert!(a.distance(*b) <= 1e-12);
        }
    }
    for (name, h) in &builtin.hedgehogs {
        let back = &loaded.hedgehogs[name];
        assert_eq!(back.pieces().len(), h.pieces().len());
        for (a, b) in h.pieces().iter().zip(back.pieces()) {
            assert!((a.start - b.start).abs() <= 1e-12 && (a.end - b.end).abs() <= 1e-12);
            assert!((a.poly.const_term() - b.poly.const_term()).abs() <= 1e-12);
            for (x, y) in a.poly.cos_coeffs().iter().zip(b.poly.cos_coeffs()) {
                assert!((x - y).abs() <= 1e-12);
            }
            for (x, y) in a.poly.sin_coeffs().iter().zip(b.poly.sin_coeffs()) {
                assert!((x - y).abs() <= 1e-12);
            }
        }
    }
    // the file drives the same verification as the built-in scene
    let from_file = hedgehog(&["verify", "--kind", "slabs", "--scene", path.to_str().unwrap()]);
    let builtin_run = hedgehog(&["verify", "--kind", "slabs"]);
    assert_eq!(from_file.stdout, builtin_run.stdout);
}

#[test]
fn help_exits_cleanly() {
    let out = hedgehog(&["--help"]);
    assert_eq!(code(&out), 0);
}
