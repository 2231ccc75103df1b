use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fockcorr_cli::parse_scenario;
use fockcorr_cli::run::TELEPORT_HEADER;

const EPR: &str = r#"
schema = 1
nbar = 0.0

[state]
kind = "epr"
a = 0.7071067811865476
d = 0.7071067811865476

[model]
kind = "markovian"
gamma_m = 1.0

[time]
t_max = 2.0
steps = 40
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fockcorr"))
}

fn scenario_file(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("scenario.toml");
    fs::write(&path, text).unwrap();
    path
}

fn exec(dir: &Path, sub: &str, scenario: &Path, extra: &[&str]) -> Output {
    bin()
        .arg(sub)
        .arg("--scenario")
        .arg(scenario)
        .arg("--out")
        .arg(dir)
        .args(extra)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Header and data rows, skipping comment lines.
fn table(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn evolve_writes_trajectory_with_unit_trace() {
    let dir = tempfile::tempdir().unwrap();
    let s = scenario_file(dir.path(), EPR);
    let out = exec(dir.path(), "evolve", &s, &[]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = table(&dir.path().join("trajectory.csv"));
    assert_eq!(rows.len(), 41);
    let tr = header.iter().position(|h| h == "trace").unwrap();
    assert!(rows.iter().all(|r| (r[tr] - 1.0).abs() <= 1e-9));
}

#[test]
fn outputs_start_with_provenance_comment() {
    let dir = tempfile::tempdir().unwrap();
    let s = scenario_file(dir.path(), EPR);
    assert_eq!(
        code(&exec(dir.path(), "correlations", &s, &["--mode", "paper"])),
        0
    );
    let text = fs::read_to_string(dir.path().join("correlations.csv")).unwrap();
    let first = text.lines().next().unwrap();
    assert!(
        first.starts_with("# fockcorr correlations closure=paper"),
        "{first}"
    );
    assert!(first.contains("scenario={"));
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "t,N,LN,C,QD,I,CC,purity,trace"
    );
}

#[test]
fn zero_duration_gives_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let s = scenario_file(dir.path(), &EPR.replace("t_max = 2.0", "t_max = 0.0"));
    assert_eq!(code(&exec(dir.path(), "correlations", &s, &[])), 0);
    let (_, rows) = table(&dir.path().join("correlations.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], 0.0);
}

#[test]
fn runs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let sa = scenario_file(a.path(), EPR);
    let sb = scenario_file(b.path(), EPR);
    assert_eq!(code(&exec(a.path(), "correlations", &sa, &[])), 0);
    assert_eq!(code(&exec(b.path(), "correlations", &sb, &[])), 0);
    let read = |d: &Path| fs::read(d.join("correlations.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn invalid_configuration_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = scenario_file(dir.path(), &EPR.replace("gamma_m = 1.0", "gamma_m = -1.0"));
    assert_eq!(code(&exec(dir.path(), "evolve", &bad, &[])), 2);
    let unknown = scenario_file(dir.path(), &format!("{EPR}\nextra = 1\n"));
    assert_eq!(code(&exec(dir.path(), "evolve", &unknown, &[])), 2);
    let missing = dir.path().join("absent.toml");
    assert_eq!(code(&exec(dir.path(), "evolve", &missing, &[])), 2);
    let no_teleport = scenario_file(dir.path(), EPR);
    assert_eq!(code(&exec(dir.path(), "teleport", &no_teleport, &[])), 2);
    let out = bin()
        .args(["figures", "fig1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn rate_overflow_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let text = EPR
        .replace(
            "kind = \"markovian\"\ngamma_m = 1.0",
            "kind = \"ohmic\"\nomega0 = 1.0\nr = 5.0",
        )
        .replace("t_max = 2.0", "t_max = 200.0");
    let s = scenario_file(dir.path(), &text);
    let out = exec(dir.path(), "evolve", &s, &[]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unconverged_volume_exits_4_after_writing_rows() {
    let dir = tempfile::tempdir().unwrap();
    let fock = EPR
        .replace(
            "kind = \"epr\"\na = 0.7071067811865476\nd = 0.7071067811865476",
            "kind = \"noon\"\nb = 1.0\nc = 0.0",
        )
        .replace("steps = 40", "steps = 2");
    let s = scenario_file(dir.path(), &format!("{fock}\n[wigner]\npoints = 24\n"));
    let out = exec(dir.path(), "volume", &s, &[]);
    assert_eq!(code(&out), 4, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = table(&dir.path().join("volume.csv"));
    assert_eq!(header, ["t", "W00", "V", "V_half", "integral", "converged"]);
    assert_eq!(rows.len(), 3);
}

#[test]
fn teleport_columns() {
    let dir = tempfile::tempdir().unwrap();
    let s = scenario_file(
        dir.path(),
        &format!("{EPR}\n[teleport]\np = 0.3\nq = 0.4\n"),
    );
    assert_eq!(code(&exec(dir.path(), "teleport", &s, &[])), 0);
    let (header, rows) = table(&dir.path().join("teleport.csv"));
    assert_eq!(header.join(","), TELEPORT_HEADER);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for r in &rows {
        assert!((r[col("weight_sum")] - 1.0).abs() <= 1e-12);
        assert!((r[col("trace_out")] - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn wigner_writes_origin_series_and_slice() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        "{}\n[wigner]\npoints = 16\n",
        EPR.replace("steps = 40", "steps = 2")
    );
    let s = scenario_file(dir.path(), &text);
    assert_eq!(
        code(&exec(dir.path(), "wigner", &s, &["--elements", "closed"])),
        0
    );
    let (header, rows) = table(&dir.path().join("wigner.csv"));
    assert_eq!(header, ["t", "W00"]);
    assert_eq!(rows.len(), 3);
    let (header, rows) = table(&dir.path().join("wigner_slice.csv"));
    assert_eq!(header, ["re_alpha", "re_beta", "W"]);
    assert_eq!(rows.len(), 16 * 16);
}

#[test]
fn figure_bundle_writes_prefixed_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["figures", "fig2", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("fig2a_correlations.csv").exists());
    assert!(dir.path().join("fig2b_trajectory.csv").exists());
}

#[test]
fn sample_scenarios_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut n = 0;
    for entry in fs::read_dir(root).unwrap() {
        let path = entry.unwrap().path();
        parse_scenario(&fs::read_to_string(&path).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        n += 1;
    }
    assert!(n >= 4);
}
