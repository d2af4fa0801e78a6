use std::process::{Command, Output};

use dunkl_qes::audit::ReportDocument;

fn qes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qes"))
        .args(args)
        .env_remove("QES_SEED_NONE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_rows_have_five_columns() {
    let o = qes(&["spectrum", "--mu", "1/4", "--a", "2", "--n-max", "4", "--sector", "odd"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.len() == 5));
    assert!(rows[1..].iter().all(|r| r[2] == "odd"));
}

#[test]
fn spectrum_json_is_sorted_array() {
    let o = qes(&["spectrum", "--format", "json", "--n-max", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let levels = v.as_array().unwrap();
    assert_eq!(levels[1]["energy"], "-5/2");
    let keys: Vec<_> = levels[0].as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["spectrum", "--n-max", "5", "--mu", "1/3"][..],
        &["wavefunction", "--n", "1", "--t", "0.7", "--mu", "1/2", "--a", "2", "--n", "3"][..],
        &["audit", "--n-max", "1", "--grid-N", "80"][..],
    ] {
        assert_eq!(qes(args).stdout, qes(args).stdout, "{args:?}");
    }
}

#[test]
fn audit_round_trips_through_the_report_schema() {
    let o = qes(&["audit", "--n-max", "2", "--grid-N", "100", "--mu", "1/4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let doc: ReportDocument = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&serde_json::to_value(&doc).unwrap()).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn audit_writes_to_file() {
    let path = std::env::temp_dir().join(format!("qes-audit-{}.json", std::process::id()));
    let o = qes(&["audit", "--n-max", "0", "--grid-N", "40", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("\"level_one_determinant\""));
}

#[test]
fn wavefunction_csv_lists_exact_coefficients() {
    let o = qes(&["wavefunction", "--n", "1", "--samples", "11", "--t", "1.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "# b = 1, -1"));
    let rows = data_rows(&text);
    assert_eq!(rows[0], ["x", "re_psi", "im_psi"]);
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.len() == 3));
}

#[test]
fn invalid_configuration_exits_with_two() {
    for args in [
        &["spectrum", "--mu", "-1/2"][..],
        &["spectrum", "--a", "0"][..],
        &["spectrum", "--unknown"][..],
        &["spectrum", "--format", "xml"][..],
        &["audit", "--grid-N", "3"][..],
        &["wavefunction", "--samples", "0"][..],
    ] {
        let o = qes(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
    let o = qes(&["spectrum", "--mu", "-3/4"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("mu > -1/2"));
}

#[test]
fn seed_variable_is_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_qes"))
        .args(["spectrum"])
        .env("QES_SEED_NONE", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn singular_recursion_exits_with_three() {
    let o = qes(&["wavefunction", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("k = 1"), "{err}");
}
