use std::path::PathBuf;
use std::process::{Command, Output};

use mtss::charts::parse_structured;

fn mtss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtss")).args(args).env_remove("MTSS_FIXTURE_DIR").output().expect("run mtss")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

#[test]
fn chart_structured_output_parses() {
    let o = mtss(&["chart", "--family", "SO", "--d", "15", "--r", "4", "--smax", "4", "--format", "structured"]);
    assert!(o.status.success());
    let chart = parse_structured(&stdout(&o)).unwrap();
    assert_eq!((chart.window.stem_lo, chart.window.stem_hi), (12, 16));
    assert_eq!(chart.column(12), vec![1, 0, 0, 0, 0]);
    assert_eq!(chart.column(16)[1], 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["chart", "--family", "SO", "--d", "14", "--r", "3", "--smax", "5", "--format", "svg"];
    let a = mtss(&args);
    let b = mtss(&args);
    let mut seq = vec!["--sequential"];
    seq.extend_from_slice(&args);
    let c = mtss(&seq);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn sphere_resolution_dump() {
    let o = mtss(&["resolve", "--sphere", "--tmax", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    // Ext^1 is spanned by h_0..h_3 below t = 10.
    assert!(text.contains("stage 1 generators 4"), "{text}");
    assert!(text.contains("gen 1 α_2 2 d = Sq^2 x_1"));
}

#[test]
fn resolve_reads_a_module_dump() {
    let dir = std::env::temp_dir().join(format!("mtss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.txt");
    let o = mtss(&["cohomology", "--family", "SO", "--d", "15", "--r", "4", "--tmax", "17", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let o = mtss(&["resolve", "--module", path.to_str().unwrap(), "--tmax", "17", "--smax", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("α_1 15 d = Sq^{2,1} x_1"), "{}", stdout(&o));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_table_and_chart_fixtures() {
    let o = mtss(&["verify", "--fixture", "mtd2.fixtures", "--d", "14", "--r", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);

    let o = mtss(&["verify", "--fixture", "so-r3-2", "--d", "14"]);
    assert!(o.status.success(), "{}", stdout(&o));

    // The drawn chart for d = 3 mod 4, r = 4 disagrees with the computation.
    let o = mtss(&["verify", "--fixture", "so-r4-3", "--d", "15"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL so-r4-3 d=15"));
}

#[test]
fn fixture_dir_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_mtss"))
        .args(["verify", "--fixture", "ctheta", "--d", "13", "--r", "2"])
        .env("MTSS_FIXTURE_DIR", fixtures().join("tables"))
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let o = Command::new(env!("CARGO_BIN_EXE_mtss"))
        .args(["verify", "--fixture", "ctheta"])
        .env("MTSS_FIXTURE_DIR", std::env::temp_dir().join("mtss-no-such-dir"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not found"));
}

#[test]
fn window_violation_names_the_bound() {
    let o = mtss(&["cohomology", "--family", "SO", "--d", "15", "--r", "4", "--tmax", "40"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2(d-r)+1"));
}

#[test]
fn periodicity_and_selftest() {
    let o = mtss(&["periodicity", "--family", "SO", "--d", "11", "--r", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("isomorphism\n"));

    let o = mtss(&["periodicity", "--family", "SO", "--d", "11", "--r", "4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = mtss(&["sphere-selftest"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn rational_dimension_table() {
    let o = mtss(&["cohomology", "--d", "14", "--r", "2", "--tmax", "20", "--field", "q"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("dimensions Q\n"));
    assert!(text.trim_end().ends_with("end"));
}
