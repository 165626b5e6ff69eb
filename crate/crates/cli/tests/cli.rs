use std::f64::consts::{FRAC_PI_4, PI};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_pancharatnam");

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).current_dir(dir).env_remove("PANCHARATNAM_OUT").args(args).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn stdout_value(stdout: &str, key: &str) -> String {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {stdout}"))
        .to_string()
}

/// Rows of a CSV file below its header, split into cells.
fn csv(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn summary(path: &Path, key: &str) -> String {
    csv(path).into_iter().find(|r| r[0] == key).unwrap()[1].clone()
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn identity_request_gives_canonical_qhq() {
    let d = tempfile::tempdir().unwrap();
    let stdout = ok(d.path(), &["decompose", "--xi", "0", "--eta", "0", "--zeta", "0"]);
    assert!(f(&stdout_value(&stdout, "residual")) < 1e-12);
    let plates: pancharatnam::PlateArrayF64 =
        fs::read_to_string(d.path().join("out/plates.txt")).unwrap().parse().unwrap();
    let want = pancharatnam::qhq_array(FRAC_PI_4, -FRAC_PI_4, FRAC_PI_4);
    assert_eq!(plates.len(), 3);
    for (got, want) in plates.plates.iter().zip(&want.plates) {
        assert_eq!(got.kind(), want.kind());
        assert!((got.axis() - want.axis()).abs() < 1e-15);
    }
}

#[test]
fn five_plate_zero_params_compose_to_identity() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["decompose", "--mode", "five", "--phi", "0"]);
    let rows = csv(&d.path().join("out/matrix.csv"));
    assert_eq!(
        fs::read_to_string(d.path().join("out/plates.txt")).unwrap().lines().filter(|l| !l.starts_with('#')).count(),
        5
    );
    for r in rows {
        let want_re = if r[0] == "m11" || r[0] == "m22" { 1.0 } else { 0.0 };
        assert!((f(&r[1]) - want_re).abs() < 1e-12 && f(&r[2]).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn random_decompositions_report_small_residual() {
    let d = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for mode in ["qhq", "five"] {
        for _ in 0..5 {
            let a: Vec<String> = (0..4).map(|_| rng.random_range(-2.0 * PI..2.0 * PI).to_string()).collect();
            let stdout = ok(
                d.path(),
                &["decompose", "--mode", mode, "--xi", &a[0], "--eta", &a[1], "--zeta", &a[2], "--phi", &a[3]],
            );
            assert!(f(&stdout_value(&stdout, "residual")) < 1e-12);
        }
    }
}

#[test]
fn interf_identity_has_zero_shift() {
    let d = tempfile::tempdir().unwrap();
    let stdout = ok(d.path(), &["interf"]);
    assert!(f(&stdout_value(&stdout, "shift")).abs() < 1e-12);
    let rows = csv(&d.path().join("out/sweep.csv"));
    assert_eq!(rows.len(), 360);
    assert_eq!(fs::read_to_string(d.path().join("out/sweep.csv")).unwrap().lines().next(), Some("phi,I_V,I_H"));
}

#[test]
fn interf_flat_fringes_leave_empty_cell_and_warn() {
    let d = tempfile::tempdir().unwrap();
    // ξ = π, η = ζ = 0 gives β = π/2.
    let out = run(d.path(), &["interf", "--xi", &PI.to_string()]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.starts_with("warning\tkind=ZeroVisibility\t"), "{stderr}");
    assert_eq!(summary(&d.path().join("out/summary.csv"), "shift"), "");
}

#[test]
fn interf_surface_at_zeta_zero_follows_eta_only() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["interf", "--surface", "--xi-steps", "9", "--eta-steps", "9", "--n-phi", "512"]);
    let rows = csv(&d.path().join("out/surface.csv"));
    assert_eq!(rows.len(), 81);
    let mut defined = 0;
    for r in rows {
        if r[2].is_empty() {
            continue;
        }
        defined += 1;
        let eta = f(&r[1]);
        assert!((f(&r[2]) - (eta / 2.0).cos().powi(2)).abs() < 1e-9, "{r:?}");
    }
    assert!(defined > 60);
}

#[test]
fn polarimetry_reduced_modes_trace_cos2_half_eta() {
    let d = tempfile::tempdir().unwrap();
    for args in [
        ["--mode", "zeta-2pi", "--xi", "1.5707963267948966"],
        ["--mode", "xi-minus-pi", "--zeta", "2.0943951023931953"],
    ] {
        let mut all = vec!["polarimetry", "--eta-steps", "16"];
        all.extend(args);
        ok(d.path(), &all);
        for (j, r) in csv(&d.path().join("out/curve.csv")).iter().enumerate() {
            let eta = 2.0 * PI * j as f64 / 16.0;
            assert!((f(&r[0]) - eta).abs() < 1e-10);
            let want = (eta / 2.0).cos().powi(2);
            assert!((f(&r[1]) - want).abs() < 1e-6, "{args:?} {r:?}");
            assert!((f(&r[2]) - want).abs() < 1e-12, "{r:?} {want}");
        }
    }
}

#[test]
fn polarimetry_eta_pi_point_is_zero() {
    let d = tempfile::tempdir().unwrap();
    let stdout = ok(d.path(), &["polarimetry", "--mode", "zeta-2pi", "--xi", "1", "--eta", &PI.to_string()]);
    assert!(f(&stdout_value(&stdout, "cos2_phase")).abs() < 1e-6);
}

#[test]
fn polarimetry_accepts_plate_file() {
    let d = tempfile::tempdir().unwrap();
    let p = pancharatnam::YzyParamsF64::new(0.4, 1.3, -0.7);
    fs::write(d.path().join("five.txt"), pancharatnam::polarimetric_array(p, 0.0).to_string()).unwrap();
    let stdout = ok(d.path(), &["polarimetry", "--plates", "five.txt"]);
    let want = ok(d.path(), &["polarimetry", "--xi", "0.4", "--eta", "1.3", "--zeta", "-0.7"]);
    let (a, b) = (f(&stdout_value(&stdout, "cos2_phase")), f(&stdout_value(&want, "cos2_phase")));
    assert!((a - b).abs() < 1e-9, "{a} vs {b}");
}

#[test]
fn fringe_generate_then_analyze_recovers_shift() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["fringe", "generate", "--delta", "0.5", "--seed", "7", "--noise", "0.02"]);
    assert!(d.path().join("out/fringes.pgm.meta").exists());
    let stdout = ok(d.path(), &["fringe", "analyze"]);
    let est = f(&stdout_value(&stdout, "estimate"));
    assert!((est - 1.0).abs() < 0.05, "{est}");
    let s = d.path().join("out/summary.csv");
    assert!(f(&summary(&s, "abs_error")) < 0.05);
    assert_eq!(f(&summary(&s, "true_shift")), 1.0);
    assert_eq!(csv(&d.path().join("out/regions.csv")).len(), 4);
}

#[test]
fn single_region_uncertainty_is_undefined() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["fringe", "generate"]);
    let stdout = ok(d.path(), &["fringe", "analyze", "--region", "128,512,200,280"]);
    assert!(stdout.contains("uncertainty=undefined (single region)"));
    assert_eq!(summary(&d.path().join("out/summary.csv"), "uncertainty"), "");
}

#[test]
fn flat_image_fails_cleanly() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["fringe", "generate", "--beta", &(PI / 2.0).to_string()]);
    for method in ["both", "fourier", "minima"] {
        let out = run(d.path(), &["fringe", "analyze", "--method", method]);
        assert_eq!(out.status.code(), Some(1));
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(
            stderr.starts_with("error\tkind=NoCarrier\t") || stderr.starts_with("error\tkind=TooFewMinima\t"),
            "{stderr}"
        );
        assert_eq!(stderr.lines().count(), 1);
    }
}

#[test]
fn visibility_identity_angles_give_one() {
    let d = tempfile::tempdir().unwrap();
    let (t1, t2) = (FRAC_PI_4.to_string(), (-FRAC_PI_4).to_string());
    ok(d.path(), &["visibility", "--theta1", &t1, "--theta2", &t2, "--steps", "5"]);
    let rows = csv(&d.path().join("out/curve.csv"));
    let at = rows.iter().find(|r| (f(&r[0]) - FRAC_PI_4).abs() < 1e-12).unwrap();
    assert!((f(&at[1]) - 1.0).abs() < 1e-12);
    for r in &rows {
        assert!((f(&r[1]) - f(&r[2])).abs() < 1e-12);
    }
}

#[test]
fn visibility_surface_matches_matrix() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["visibility", "--theta1", "0.3", "--steps", "11"]);
    let rows = csv(&d.path().join("out/surface.csv"));
    assert_eq!(rows.len(), 121);
    assert!(rows.iter().all(|r| (f(&r[2]) - f(&r[3])).abs() < 1e-12));
}

#[test]
fn simulated_visibility_curve_tracks_prediction() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["visibility", "--theta3", "0.3", "--steps", "7", "--simulate"]);
    for r in csv(&d.path().join("out/curve.csv")) {
        let (v, m) = (f(&r[1]), f(&r[3]));
        assert!((m - v).abs() <= 0.02 * v.max(0.05), "{r:?}");
    }
}

#[test]
fn config_file_flags_and_degrees() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("run.cfg"), "# run\ndegrees=true\nxi=90\neta=45\nbogus=1\n").unwrap();
    let out = run(d.path(), &["--config", "run.cfg", "decompose", "--eta", "0"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("kind=UnusedConfigKey"));
    let resolved = fs::read_to_string(d.path().join("out/config.resolved")).unwrap();
    assert!(resolved.starts_with("command=decompose\n"));
    assert!(resolved.contains("xi=90\n") && resolved.contains("eta=0\n") && resolved.contains("degrees=true\n"));

    let e = tempfile::tempdir().unwrap();
    ok(e.path(), &["decompose", "--xi", &(PI / 2.0).to_string()]);
    let a = fs::read(d.path().join("out/matrix.csv")).unwrap();
    let b = fs::read(e.path().join("out/matrix.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn replaying_resolved_config_reproduces_outputs() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["--out", "a", "polarimetry", "--noise", "0.01", "--seed", "5", "--n-phi", "512"]);
    let cfg = fs::read_to_string(d.path().join("a/config.resolved")).unwrap();
    fs::write(
        d.path().join("replay.cfg"),
        cfg.lines().filter(|l| !l.starts_with("command=")).collect::<Vec<_>>().join("\n"),
    )
    .unwrap();
    ok(d.path(), &["--out", "b", "--config", "replay.cfg", "polarimetry"]);
    for name in ["sweep.csv", "summary.csv", "config.resolved"] {
        assert_eq!(
            fs::read(d.path().join("a").join(name)).unwrap(),
            fs::read(d.path().join("b").join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn output_directory_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let out =
        Command::new(BIN).current_dir(d.path()).env("PANCHARATNAM_OUT", "envout").arg("decompose").output().unwrap();
    assert!(out.status.success());
    assert!(d.path().join("envout/plates.txt").exists());
}

#[test]
fn usage_errors_are_machine_readable() {
    let d = tempfile::tempdir().unwrap();
    for args in [&["nosuch"][..], &["decompose", "--mode", "seven"], &["interf", "--n-phi", "x"]] {
        let out = run(d.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.starts_with("error\tkind=Usage\tmessage="), "{stderr}");
    }
    assert!(run(d.path(), &["--help"]).status.success());
    let out = run(d.path(), &["fringe", "analyze", "--image", "missing.pgm"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error\tkind=Io\t"));
    let out = run(d.path(), &["polarimetry", "--n-phi", "10"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error\tkind=InvalidGrid\t"));
}
