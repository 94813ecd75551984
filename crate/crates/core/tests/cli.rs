use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tmfres::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tmfres").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn repo(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(path)
}

fn assert_valid(schema: &str, args: &[&str]) {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    let instance: Value = serde_json::from_str(&out).unwrap();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(repo(&format!("schemas/{schema}"))).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} against {schema}: {errors:?}");
}

#[test]
fn reduce_and_bgpoly_examples() {
    assert_eq!(invoke(&["reduce", "x^3"]), (EXIT_OK, "s^2 t^3 y + 2 s t^2 x\n".into(), String::new()));
    assert_eq!(invoke(&["bgpoly", "7"]).1, "s^2 t^7 y + 2 s t^6 x\n");
    let (_, table, _) = invoke(&["bgpoly"]);
    assert_eq!(table.lines().count(), 16);
    assert!(table.starts_with("f_1 = x\n"));
    let (_, powers, _) = invoke(&["powers", "16"]);
    assert_eq!(powers.lines().count(), 14);
}

#[test]
fn reduce_respects_ring() {
    assert_eq!(invoke(&["reduce", "x^3", "--ring", "Rp"]).1, "2 s t^2 x\n");
    let (code, _, err) = invoke(&["reduce", "y", "--ring", "Rp"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("Y_IN_Y_FREE_RING"), "{err}");
}

#[test]
fn duality_subcommands() {
    assert_eq!(invoke(&["dual", "report", "Σ^{0,0} bo1"]).1, "Σ^{32,7} bo1\n");
    assert_eq!(invoke(&["dual", "element", "x"]).1, "s^7 t^4 x\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["reduce", "x", "--bogus"][..],
        &["decompose"],
        &["decompose", "--bo", "1", "--power", "3"],
        &["ext", "F2", "--smax", "2", "--tmax", "4", "--format", "json"],
        &["module", "margolis", "BO(1)[q]"],
        &["frobnicate"],
    ] {
        let (code, out, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(invoke(&["reduce", "x^"]).0, EXIT_DOMAIN);
    assert_eq!(invoke(&["module", "parse", "NOT_A_MODULE"]).0, EXIT_DOMAIN);
    let bad = std::env::temp_dir().join(format!("tmfres-bad-{}.module", std::process::id()));
    std::fs::write(&bad, "2\n0 1\n0 2 1 1\n").unwrap();
    let (code, _, err) = invoke(&["module", "validate", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("degree"), "{err}");
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.is_empty());
    for sub in ["reduce", "bgpoly", "powers", "decompose", "tmfbar", "dual", "module", "ext", "census", "verify"] {
        assert!(out.contains(sub), "{sub}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["decompose", "--power", "6", "--format", "json"][..],
        &["census", "--n", "2", "--weight-max", "24", "--format", "csv"],
        &["ext", "BO(1)", "--smax", "5", "--tmax", "16", "--format", "svg"],
    ] {
        assert_eq!(invoke(args), invoke(args), "{args:?}");
    }
}

#[test]
fn json_outputs_match_schemas() {
    let e = repo("fixtures/E.module");
    let e = e.to_str().unwrap();
    assert_valid("ring_element.schema.json", &["reduce", "x^7 + 3 y", "--format", "json"]);
    assert_valid("ring_element.schema.json", &["bgpoly", "9", "--glocal", "--format", "json"]);
    assert_valid("ring_element.schema.json", &["dual", "element", "x^2 + s y", "--format", "json"]);
    assert_valid("indexed_elements.schema.json", &["powers", "8", "--format", "json"]);
    assert_valid("indexed_elements.schema.json", &["bgpoly", "--format", "json"]);
    assert_valid("decomposition_report.schema.json", &["decompose", "--bo", "5", "--locality", "g", "--format", "json"]);
    assert_valid("decomposition_report.schema.json", &["decompose", "--power", "6", "--format", "json"]);
    assert_valid("decomposition_report.schema.json", &["dual", "report", "2 Σ^{16,1} bo1 + Σ^{24} TMF", "--format", "json"]);
    assert_valid("tmfbar_series.schema.json", &["tmfbar", "2", "--jmax", "6", "--format", "json"]);
    assert_valid("module_validation.schema.json", &["module", "validate", e, "--format", "json"]);
    assert_valid("margolis.schema.json", &["module", "margolis", e, "--op", "Q1", "--format", "json"]);
    assert_valid("census.schema.json", &["census", "--n", "2", "--weight-max", "32", "--format", "json"]);
    assert_valid("verify.schema.json", &["verify", "--tables", "--remark54", "--format", "json"]);
}

#[test]
fn ext_chart_to_file() {
    let dir = std::env::temp_dir().join(format!("tmfres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bo1.csv");
    let (code, out, _) = invoke(&["ext", "BO(1)", "--smax", "4", "--tmax", "12", "--format", "csv", "--chart", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("s,t,dim\n0,0,1\n"), "{csv}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn module_commands() {
    assert_eq!(invoke(&["module", "iso", "BO(1)[3]", "BO(1)[3]"]).1, "isomorphic\n");
    assert_eq!(invoke(&["module", "iso", "BO(1)", "DUAL_BO1[7]"]).1, "not isomorphic\n");
    let (_, ses, _) = invoke(&["module", "ses", "DUAL_BO1[17]", "A2modA1", "BO(1)"]);
    assert!(ses.contains("found"), "{ses}");
    let (_, tensor, _) = invoke(&["module", "tensor", "M1", "M1"]);
    assert!(tensor.starts_with("9\n"), "{tensor}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tmfres");
    let ok = Command::new(bin).args(["verify", "--tables"]).output().unwrap();
    assert!(ok.status.success());
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().count(), 2);
    let usage = Command::new(bin).args(["powers"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
}
