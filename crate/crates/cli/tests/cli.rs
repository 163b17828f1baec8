use std::io::Write;
use std::process::{Command, Output};

use cmpair::PairingValue;

fn cmpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmpair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pair_prints_the_golden_reduced_value() {
    let o = cmpair(&["pair"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reduced: g^{2}"), "{}", stdout(&o));
    let o = cmpair(&["pair", "--aux", "0,0"]);
    assert!(stdout(&o).contains("raw: 175·396^(tau)"));
}

#[test]
fn pair_with_q_at_infinity_is_the_identity() {
    let o = cmpair(&["pair", "--q", "O"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("value: h^{0}"), "{text}");
    assert!(text.contains("reduced: g^{0}"));
}

#[test]
fn jsonl_values_round_trip() {
    let o = cmpair(&[
        "pair", "--op", "w_hat", "--alpha", "5,0", "--format", "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let v: PairingValue = serde_json::from_value(line["value"].clone()).unwrap();
    let five = v.codomain.modulus();
    assert!(v.raw.pow(five).is_identity());
    let again: PairingValue = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    assert_eq!(again.reduced, v.reduced);
}

#[test]
fn invalid_inputs_exit_with_two() {
    for args in [
        &["pair", "--p", "1,1"][..],
        &["pair", "--alpha", "0,0"],
        &["pair", "--op", "nonsense"],
        &["pair", "--p", "56,137"],
        &["pair", "--op", "t_hat_via_tn", "--alpha", "1,-2"],
        &["scan", "--alpha", "3,0"],
        &["pair", "--config", "/nonexistent/job.toml"],
    ] {
        let o = cmpair(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
}

#[test]
fn example_reports_tampering() {
    let ok = cmpair(&["example"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = cmpair(&["example", "--root", "381"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("first mismatch"));
    let moved = cmpair(&["example", "--aux", "1,0"]);
    assert_eq!(moved.status.code(), Some(0));
    assert!(stdout(&moved).trim_end().ends_with("golden values match"));
}

#[test]
fn selftest_with_zero_trials_warns() {
    let o = cmpair(&["selftest", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("surjective: yes"));
}

#[test]
fn scan_prints_a_five_by_five_table() {
    let o = cmpair(&["scan", "--alpha", "1,-2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("(5 points)") && text.contains("(5 cosets)"),
        "{text}"
    );
}

#[test]
fn config_file_drives_the_second_instance() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"
[curve]
q = 211
a = 0
b = 8

[endo]
kind = "j0"
root = 14

[pairing]
alpha = [3, 1]
p = [43, 50]
q = [18, 96]
aux = [1, 3]
"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let o = cmpair(&["pair", "--config", path]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    assert!(text.contains("raw: 107·37^(tau)"), "{text}");
    assert!(text.contains("reduced: g^{3}"));
    let o = cmpair(&["pair", "--config", path, "--alpha", "7,0", "--aux", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_endomorphism_matches_the_builtin_one() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "[curve]\nq = 41\na = 6\nb = 0\n\n[order]\ntrace = 0\nnorm = 1\n\n[endo]\nkind = \"table\""
    )
    .unwrap();
    // [i](x, y) = (-x, 9y) on y^2 = x^3 + 6x over F_41.
    let mut pts = Vec::new();
    for x in 0..41i64 {
        for y in 0..41i64 {
            if (y * y - x * x * x - 6 * x).rem_euclid(41) == 0 {
                pts.push((x, y));
            }
        }
    }
    for (x, y) in &pts {
        writeln!(
            file,
            "[[endo.map]]\nfrom = [{x}, {y}]\nto = [{}, {}]",
            (-x).rem_euclid(41),
            (9 * y).rem_euclid(41)
        )
        .unwrap();
    }
    let path = file.path().to_str().unwrap();
    let table = cmpair(&[
        "scan", "--config", path, "--alpha", "2,1", "--format", "jsonl",
    ]);
    let builtin_cfg = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        builtin_cfg.path(),
        "[curve]\nq = 41\na = 6\nb = 0\n\n[endo]\nkind = \"j1728\"\nroot = 9\n",
    )
    .unwrap();
    let builtin = cmpair(&[
        "scan",
        "--config",
        builtin_cfg.path().to_str().unwrap(),
        "--alpha",
        "2,1",
        "--format",
        "jsonl",
    ]);
    assert_eq!(
        builtin.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&builtin.stderr)
    );
    assert_eq!(
        table.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&table.stderr)
    );
    assert_eq!(table.stdout, builtin.stdout);
    let report: serde_json::Value = serde_json::from_slice(&table.stdout).unwrap();
    assert_eq!(report["exact_rows"], 4);
}
