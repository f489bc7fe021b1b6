use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn write_state(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["state"];
    full.extend_from_slice(args);
    full.extend(["--out", path.to_str().unwrap()]);
    assert!(qcorr(&full).status.success());
    path.to_str().unwrap().to_string()
}

#[test]
fn measure_bell_and_werner() {
    let dir = tempfile::tempdir().unwrap();
    let bell = write_state(dir.path(), "bell.txt", &["bell"]);
    let out = qcorr(&["measure", &bell]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "d_g,q,theta,negativity\n1,1,0,1\n");

    let w = write_state(dir.path(), "werner.txt", &["werner", "--r", "0.5"]);
    let rows = csv_rows(&stdout(&qcorr(&["measure", &w])));
    assert!((rows[0][0] - 0.25).abs() < 1e-12);
}

#[test]
fn measure_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = dir.path().join("bad.txt");
    fs::write(&malformed, "dims 2 2\n1,0 0,0\n").unwrap();
    let out = qcorr(&["measure", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let unphysical = dir.path().join("trace2.txt");
    fs::write(
        &unphysical,
        "dims 2 2\n1,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 1,0\n",
    )
    .unwrap();
    let out = qcorr(&["measure", unphysical.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("trace"));

    let nonhermitian = dir.path().join("herm.txt");
    fs::write(
        &nonhermitian,
        "dims 2 2\n0.25,0 0.1,0 0,0 0,0\n0,0 0.25,0 0,0 0,0\n0,0 0,0 0.25,0 0,0\n0,0 0,0 0,0 0.25,0\n",
    )
    .unwrap();
    let out = qcorr(&["measure", nonhermitian.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("Hermitian"));

    assert_eq!(qcorr(&["measure", "/nonexistent/state.txt"]).status.code(), Some(1));
}

#[test]
fn flag_errors_exit_with_2() {
    assert_eq!(qcorr(&["bogus"]).status.code(), Some(2));
    assert_eq!(qcorr(&["dqc1", "--mu-grid", "0:1"]).status.code(), Some(2));
    assert_eq!(qcorr(&["dqc1", "--mu-grid", "0:2:5"]).status.code(), Some(2));
    assert_eq!(qcorr(&["scatter", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(qcorr(&["plan", "--setting", "optical-swap", "--d", "5"]).status.code(), Some(2));
    assert_eq!(qcorr(&["dynamics", "lorentzian", "--r", "1.5"]).status.code(), Some(2));
    assert_eq!(qcorr(&["dynamics", "lorentzian", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(qcorr(&["state", "bell-diagonal", "--c", "1,1,1"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .args(["scatter", "--samples", "2"])
        .env("QCORR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scatter_is_reproducible_and_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(qcorr(&["scatter", "--samples", "500", "--seed", "3", "--out", a.to_str().unwrap()]).status.success());
    let single = Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .args(["scatter", "--samples", "500", "--seed", "3", "--out", b.to_str().unwrap()])
        .env("QCORR_THREADS", "1")
        .output()
        .unwrap();
    assert!(single.status.success());
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.starts_with("d_g,q\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 500);
    assert!(rows.iter().all(|r| r[1] <= r[0] + 1e-12));
    let other = stdout(&qcorr(&["scatter", "--samples", "500", "--seed", "4"]));
    assert_ne!(other, text);
}

#[test]
fn dqc1_endpoint() {
    let out = qcorr(&["dqc1", "--mu-grid", "0:1:21"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("mu,d_g,q,entropic\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 21);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 0.0531325).abs() < 1e-6);
    assert!((last[2] - 0.0402856).abs() < 1e-6);
}

#[test]
fn phaseflip_kink_in_csv() {
    let text = stdout(&qcorr(&["dynamics", "phaseflip", "--c", "1,-0.6,0.6", "--gamma", "1", "--t", "0:2:400"]));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 400);
    // largest second difference of D_G sits next to t*
    let (i, _) = (1..rows.len() - 1)
        .map(|i| (i, (rows[i - 1][1] - 2.0 * rows[i][1] + rows[i + 1][1]).abs()))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    assert!((rows[i][0] - 0.6f64.ln().abs() / 2.0).abs() < 0.01, "{}", rows[i][0]);
}

#[test]
fn dynamics_out_dir_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = qcorr(&[
        "dynamics",
        "lorentzian",
        "--lambda",
        "0.1",
        "--t",
        "0:5:11",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = dir.path().join("lorentzian_gamma0-1_lambda-0.1_r-0.75.csv");
    let text = fs::read_to_string(file).unwrap();
    assert!(text.starts_with("t,d_g,q,gap,negativity\n0,0.5625,0.5625,0,"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn max_gap_sweeps_are_deterministic() {
    let a = stdout(&qcorr(&["max-gap", "werner", "--t", "0:10:101"]));
    let b = stdout(&qcorr(&["--sequential", "max-gap", "werner", "--t", "0:10:101"]));
    assert_eq!(a, b);
    let rows = csv_rows(&a);
    assert_eq!(rows.len(), 11);
    assert!(rows.windows(2).all(|w| w[1][2] >= w[0][2]));
    let pf = csv_rows(&stdout(&qcorr(&["max-gap", "phaseflip", "--s-grid", "0.6:0.6:1"])));
    assert!((pf[0][1] - 0.6f64.ln().abs() / 2.0).abs() < 0.01);
}

#[test]
fn plan_lists_observables() {
    let text = stdout(&qcorr(&["plan", "--setting", "nmr", "--d", "3"]));
    assert!(text.starts_with("# setting nmr d 3 observables 27 tomography 35\n"));
    assert_eq!(text.lines().count(), 2 + 27);
    let swap = stdout(&qcorr(&["plan", "--setting", "optical-projective", "--d", "4"]));
    assert_eq!(swap.lines().count(), 2 + 7);
    assert_eq!(stdout(&qcorr(&["plan"])), stdout(&qcorr(&["plan"])));
}

#[test]
fn verify_passes() {
    let out = qcorr(&["verify", "--samples", "20"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() == 9);
    assert!(!text.contains("FAIL"));
}

#[test]
fn reconstruct_from_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.csv");
    // |Φ⁺⟩: ⟨XX⟩ = 1, ⟨YY⟩ = −1, ⟨ZZ⟩ = 1; Gell-Mann labels S01, A01, D1
    let mut rows = vec!["label,value".to_string()];
    for axis in ["X", "Y", "Z"] {
        for bob in ["I", "S01", "A01", "D1"] {
            let v = match (axis, bob) {
                ("X", "S01") | ("Z", "D1") => 1.0,
                ("Y", "A01") => -1.0,
                _ => 0.0,
            };
            rows.push(format!("{axis}:{bob},{v}"));
        }
    }
    fs::write(&path, rows.join("\n")).unwrap();
    let out = qcorr(&["reconstruct", path.to_str().unwrap(), "--d", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "d_g,q\n1,1\n");

    fs::write(&path, "X:I,0\n").unwrap();
    let out = qcorr(&["reconstruct", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing"));

    fs::write(&path, "X:I,zero\n").unwrap();
    assert_eq!(qcorr(&["reconstruct", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn input_files_are_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_state(dir.path(), "r.txt", &["random", "--d", "3", "--seed", "9"]);
    let before = fs::read(&path).unwrap();
    assert!(qcorr(&["measure", &path]).status.success());
    assert_eq!(fs::read(&path).unwrap(), before);
}
