use std::path::Path;
use std::process::{Command, Output};

fn bcp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcp"))
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .env_remove("BCP_CONFIG")
        .env_remove("BCP_SEED")
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn constants_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = bcp(dir.path(), &["constants"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("constants.csv")).unwrap();
    assert!(csv.starts_with("name,value,rounded"));
    assert!(csv.contains("0.586"));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pi_c"));
}

#[test]
fn exact_reports_identities() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "[model]\nK = 0.34657359027997264\ndelta = 0.0\nq = 2\n[region]\ngraph = { kind = \"complete\", n = 2 }\n",
    );
    let out = bcp(dir.path(), &["--config", &cfg, "exact"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(report["partition_identity_error"].as_f64().unwrap() < 1e-12);
    assert!(report["coupling_max_deviation"].as_f64().unwrap() < 1e-12);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // q = 0: domain error.
    let cfg = write_config(dir.path(), "[model]\na = 0.5\np = 0.5\nq = 0\n");
    assert_eq!(bcp(dir.path(), &["--config", &cfg, "exact"]).status.code(), Some(1));
    // Both parameter pairs: validation error.
    let cfg = write_config(dir.path(), "[model]\na = 0.5\np = 0.5\nK = 1.0\ndelta = 0.0\nq = 2\n");
    assert_eq!(bcp(dir.path(), &["--config", &cfg, "exact"]).status.code(), Some(1));
    // Unknown key.
    let cfg = write_config(dir.path(), "[model]\na = 0.5\np = 0.5\nq = 2\ncolour = 1\n");
    assert_eq!(bcp(dir.path(), &["--config", &cfg, "exact"]).status.code(), Some(1));
    // Too large for enumeration: capacity error.
    let cfg = write_config(
        dir.path(),
        "[model]\na = 0.5\np = 0.5\nq = 2\n[region]\ngraph = { kind = \"complete\", n = 12 }\n",
    );
    assert_eq!(bcp(dir.path(), &["--config", &cfg, "exact"]).status.code(), Some(2));
    // Burn-in not below sweeps.
    let out = bcp(dir.path(), &["sample", "--sweeps", "10", "--burn-in", "10"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing config file: I/O error.
    assert_eq!(bcp(dir.path(), &["--config", "/nonexistent/run.toml", "exact"]).status.code(), Some(3));
}

#[test]
fn scan_grid_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "seed = 3\n[model]\na = 0.5\np = 0.5\nq = 2\n\
         [sampler]\nobservables = [\"open_vertex_density\", \"boundary_connection\"]\n\
         [scan]\na = [0.1, 0.3, 0.5, 0.7, 0.9]\np = [0.1, 0.3, 0.5, 0.7, 0.9]\nradius = 8\n",
    );
    let run = |sub: &str| {
        let d = dir.path().join(sub);
        let out = bcp(&d, &["--config", &cfg, "scan", "--sweeps", "1000", "--burn-in", "200"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(d.join("scan.csv")).unwrap()
    };
    let first = run("one");
    let second = run("two");
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("a,p,q,n,boundary,samples"));
    assert!(header.contains("boundary_connection_stderr"));
    assert_eq!(lines.count(), 25);
}

#[test]
fn sample_resume_extends_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "seed = 5\n[model]\nK = 0.5\ndelta = 0.1\nq = 3\n[region]\ngraph = { kind = \"box\", d = 2, n = 2 }\n\
         [sampler]\nobservables = [\"open_vertex_density\", \"magnetization\"]\n",
    );
    let full = dir.path().join("full");
    let part = dir.path().join("part");
    let rest = dir.path().join("rest");
    let ok = |out: Output| assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    ok(bcp(&full, &["--config", &cfg, "sample", "--sweeps", "150", "--burn-in", "20"]));
    ok(bcp(&part, &["--config", &cfg, "sample", "--sweeps", "100", "--burn-in", "20"]));
    ok(bcp(
        &rest,
        &["--config", &cfg, "sample", "--sweeps", "150", "--burn-in", "20", "--resume", part.to_str().unwrap()],
    ));
    let read = |d: &Path| std::fs::read_to_string(d.join("series.csv")).unwrap();
    let full_rows: Vec<String> = read(&full).lines().map(String::from).collect();
    let part_rows: Vec<String> = read(&part).lines().map(String::from).collect();
    let rest_rows: Vec<String> = read(&rest).lines().skip(1).map(String::from).collect();
    assert!(rest_rows[0].starts_with("0,101,"), "{}", rest_rows[0]);
    let joined: Vec<String> = part_rows.into_iter().chain(rest_rows).collect();
    assert_eq!(joined, full_rows);
}

#[test]
fn dominance_marks_unmet_conditions() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "[model]\na = 0.7\np = 0.5\nq = 2\n[region]\ngraph = { kind = \"box\", d = 1, n = 1 }\n\
         [dominance]\nchecks = [\"thm54_i\", \"boundary_order\"]\nsecond = { a = 0.3, p = 0.5, q = 2 }\naudit_pairs = 20\n",
    );
    let out = bcp(dir.path(), &["--config", &cfg, "dominance"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("dominance.csv")).unwrap();
    let row = csv.lines().find(|l| l.starts_with("thm54_i,")).unwrap();
    assert!(row.contains("not met"), "{row}");
    let audit1 = std::fs::read(dir.path().join("holley_audit.json")).unwrap();
    let again = dir.path().join("again");
    assert_eq!(bcp(&again, &["--config", &cfg, "dominance"]).status.code(), Some(0));
    assert_eq!(audit1, std::fs::read(again.join("holley_audit.json")).unwrap());
}
