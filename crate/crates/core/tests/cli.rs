//! End-to-end runs of the `logdmod` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use logdmod::cli::{parse_expression, run, universal_context, Command as Cmd, JobConfig};
use logdmod::Error;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn logdmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logdmod")).args(args).output().expect("binary runs")
}

fn config_path(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn without_timing(text: &str) -> &str {
    text.split("--- timing ---").next().unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn bfunction_symbolic_family() {
    let o = logdmod(&["bfunction", "--config", &config_path("cusp_family.toml")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(
        line(&out, "B(s)"),
        Some("(s - (lambda - 5)/6)(s - (lambda - 8)/6)(s - (lambda - nu - 6)/6)(s - (lambda + nu - 7)/6)")
    );
    assert_eq!(line(&out, "certificate"), Some("verified"));
}

#[test]
fn param_overrides_specialize() {
    let path = config_path("cusp_family.toml");
    let args =
        ["bfunction", "--config", &path, "--param", "lambda=0", "--param", "m=0", "--param", "n=0", "--param", "nu=0"];
    let out = stdout(&logdmod(&args));
    assert_eq!(line(&out, "mode"), Some("specialized"));
    assert_eq!(line(&out, "B(s)"), Some("(s + 4/3)(s + 7/6)(s + 1)(s + 5/6)"));
}

#[test]
fn verify_curve_reports_cusp() {
    let out = stdout(&logdmod(&["verify-curve", "--config", &config_path("cusp_origin.toml")]));
    assert_eq!(line(&out, "curve"), Some("c = 1, omega_h = 6, Saito determinant OK"));
}

#[test]
fn intersection_structure_sheaf() {
    let out = stdout(&logdmod(&["intersection", "--config", &config_path("structure_sheaf.toml")]));
    assert_eq!(line(&out, "K"), Some("d1, d2"));
    assert_eq!(line(&out, "char_variety"), Some("T_X^*X"));
}

#[test]
fn reports_are_deterministic() {
    let path = config_path("cusp_nu_lambda.toml");
    let a = stdout(&logdmod(&["intersection", "--config", &path]));
    let b = stdout(&logdmod(&["intersection", "--config", &path]));
    assert_eq!(without_timing(&a), without_timing(&b));
    assert!(a.contains("--- end timing ---"));
    assert_eq!(line(&a, "K=(g1,Q)"), Some("yes"));
}

#[test]
fn json_mirrors_text() {
    let path = config_path("cusp_origin.toml");
    let o = logdmod(&["kappa", "--config", &path, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "kappa");
    assert_eq!(v["results"]["tau"], "-1");
    assert_eq!(v["results"]["condition (i)"], "yes");
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("logdmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    };
    let syntax = write("syntax.toml", "[curve]\nweights = [3, 2]\nh = \"x1 + (\"\n");
    let o = logdmod(&["verify-curve", "--config", &syntax]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 5"));

    let curve = "[curve]\nweights = [3, 2]\nh = \"x1^2 - x2^3\"\n";
    let bad = write("nonintegrable.toml", &format!("{curve}[connection]\nn = 2\na = \"x1\"\nb = [\"0\", \"0\"]\n"));
    assert_eq!(logdmod(&["build-ilc", "--config", &bad]).status.code(), Some(1));

    let fam = config_path("cusp_family.toml");
    assert_eq!(logdmod(&["bfunction", "--config", &fam, "--degree-bound", "1"]).status.code(), Some(3));
    assert_eq!(logdmod(&["bfunction", "--config", &fam, "--mode", "specialized"]).status.code(), Some(2));
    assert_eq!(logdmod(&["frobnicate", "--config", &fam]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn library_entry_points() {
    let cfg = JobConfig::load(&configs().join("structure_sheaf.toml")).unwrap();
    let r = run(Cmd::Charvar, &cfg).unwrap();
    assert_eq!(r.get("symbol_ideal"), Some("xi1, xi2"));
    assert!(matches!(parse_expression("x1 + (", &universal_context()), Err(Error::Syntax { offset: 5, .. })));
}
