use std::process::{Command, Output};

use proptest::prelude::*;
use seshadri::dto::{report_from_json, report_to_json};
use seshadri_core::pell::fundamental_solution;
use seshadri_core::{run_pipeline, FilterId, Int, PipelineConfig};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seshadri")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).expect("utf-8");
    assert!(text.ends_with('\n'), "{args:?} not newline-terminated");
    text
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

fn stderr(args: &[&str]) -> String {
    String::from_utf8(run(args).stderr).unwrap()
}

#[test]
fn pell_command() {
    let t = ok(&["pell", "5"]);
    assert!(t.contains("sqrt(d) = [2; (4)]"));
    assert!(t.contains("1      4  9  0"));
    let csv = ok(&["pell", "2", "--count", "2", "--format", "csv"]);
    assert_eq!(csv, "d,index,p,q,residual\n2,1,2,3,0\n2,2,12,17,0\n");
    assert_eq!(code(&["pell", "9"]), Some(2));
    assert!(stderr(&["pell", "9"]).contains("d must be a positive non-square"));
    assert_eq!(code(&["pell", "0"]), Some(2));
    assert_eq!(code(&["pell", "-7"]), Some(2));
    assert_eq!(code(&["pell", "7", "--count", "0"]), Some(2));
    assert_eq!(code(&["pell", "x"]), Some(2));
}

#[test]
fn bound_command() {
    for (d, b) in [("2", "4/3"), ("7", "21/8"), ("5", "20/9")] {
        assert!(ok(&["bound", d]).contains(&format!("bound: {b} (")), "d={d}");
    }
    let json = ok(&["bound", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["bound"]["num"], "21");
    assert_eq!(v["bound"]["den"], "8");
    assert_eq!(v["below_sqrt_d"], true);
    assert_eq!(v["d_minus_bound_squared"]["den"], "64");
    assert_eq!(code(&["bound", "16"]), Some(2));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn exc_fibration_values() {
    let csv = ok(&["exc", "6", "--filters", "fibration", "--values", "--format", "csv"]);
    let rows = csv_rows(&csv);
    assert_eq!(rows.len(), 51);
    assert_eq!(rows[0][0], "17/8");
    assert_eq!(rows[50][0], "55/23");
    let table = ok(&["exc", "6", "--filters", "fibration", "--values"]);
    assert!(table.contains("final values (51):"));
    assert!(table.contains("range      428    252"));
}

#[test]
fn exc_picard_one_pairs() {
    let csv = ok(&["exc", "5", "--rho1", "--filters", "range,gino,rho1-divisibility", "--strict-lower", "--pairs", "--format", "csv"]);
    let pairs: Vec<(String, String)> = csv_rows(&csv).into_iter().map(|r| (r[0].clone(), r[1].clone())).collect();
    let want = [("10", "5"), ("15", "7"), ("35", "16"), ("55", "25"), ("75", "34")];
    assert_eq!(pairs, want.map(|(a, b)| (a.to_string(), b.to_string())));
    // Without strict-lower the result is the same: a = b is never divisible and large enough.
    let csv2 = ok(&["exc", "5", "--rho1", "--filters", "range,gino,rho1-divisibility", "--pairs", "--format", "csv"]);
    assert_eq!(csv, csv2);
}

#[test]
fn exc_hodge_values() {
    let csv = ok(&["exc", "6", "--filters", "fibration,hodge-xu", "--values", "--format", "csv"]);
    let values: Vec<String> = csv_rows(&csv).into_iter().map(|r| r[0].clone()).collect();
    assert_eq!(values, ["9/4", "7/3", "26/11", "19/8", "31/13", "43/18"]);
}

#[test]
fn exc_defaults_and_errors() {
    let t = ok(&["exc", "3"]);
    assert!(t.contains("filters: range (rho1: no"));
    assert!(t.contains("final values (2):"));
    let empty = ok(&["exc", "8", "--rho1", "--filters", "gino,rho1-divisibility"]);
    assert!(empty.contains("final values (0):"));
    assert_eq!(code(&["exc", "5", "--filters", "xu"]), Some(2));
    assert_eq!(code(&["exc", "5", "--filters", "rationality"]), Some(2));
    assert_eq!(code(&["exc", "7", "--rho1", "--filters", "xu-moving-curve", "--gon-min", "0"]), Some(2));
    assert_eq!(code(&["exc", "4"]), Some(2));
    assert_eq!(code(&["exc", "5", "--pell-index", "0"]), Some(2));
    assert_eq!(code(&["exc", "13", "--budget", "1000"]), Some(2));
    assert_eq!(code(&["exc", "5", "--pairs", "--values"]), Some(2));
}

#[test]
fn exc_trace_lists_eliminations() {
    let t = ok(&["exc", "7", "--rho1", "--filters", "gino,rho1-divisibility,xu-moving-curve,rationality", "--trace"]);
    assert!(t.contains("final values (1):"));
    assert!(t.contains("28/11"));
    assert!(t.contains("(7,3)     eliminated  [rationality]"));
}

#[test]
fn exc_json_round_trip() {
    let json = ok(&["exc", "7", "--rho1", "--filters", "gino,rho1-divisibility,xu-moving-curve", "--format", "json"]);
    let parsed = report_from_json(&json).unwrap();
    let d = Int::from(7);
    let config = PipelineConfig::rho1(&[FilterId::Gino, FilterId::Rho1Divisibility, FilterId::XuMovingCurve]);
    let direct = run_pipeline(&d, &fundamental_solution(&d).unwrap(), &config).unwrap();
    assert_eq!(parsed, direct);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "d",
        "solution",
        "bound",
        "smooth_values",
        "stages",
        "final_values",
        "final_pairs",
        "conditional_values",
        "trace",
        "conjecture_status",
    ] {
        assert!(keys.contains(&k), "{k}");
    }
}

#[test]
fn scan_statuses() {
    let csv = ok(&["scan", "2:8", "--rho1", "--format", "csv"]);
    let rows = csv_rows(&csv);
    let status: Vec<(&str, &str)> = rows.iter().map(|r| (r[0].as_str(), r[9].as_str())).collect();
    assert_eq!(
        status,
        [
            ("2", "holds-by-theorem-p0-2"),
            ("3", "holds-by-theorem-p0-1"),
            ("4", "not-applicable-square-d"),
            ("5", "open-with-exceptions"),
            ("6", "holds-by-theorem-p0-2"),
            ("7", "open-with-exceptions"),
            ("8", "holds-by-theorem-p0-1"),
        ]
    );
    assert_eq!(rows[4][1..9], ["2", "5", "12", "5", "2.400000", "0", "428", "252"]);
}

#[test]
fn scan_square_only() {
    let csv = ok(&["scan", "4:4", "--format", "csv"]);
    assert_eq!(
        csv,
        "d,p0,q0,bound_num,bound_den,bound_decimal,smooth_count,pair_count,final_value_count,status\n\
         4,,,,,,,,,not-applicable-square-d\n"
    );
    assert_eq!(code(&["scan", "5:2"]), Some(2));
    assert_eq!(code(&["scan", "0:2"]), Some(2));
}

#[test]
fn scan_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let p = path.to_str().unwrap();
    let out = run(&["scan", "2:100", "--rho1", "--format", "csv", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with('\n'));
    let rows = csv_rows(&text);
    let non_square = rows.iter().filter(|r| r[9] != "not-applicable-square-d").count();
    assert_eq!(non_square, 90);
    assert_eq!(rows.len(), 99);
    // Degrees over the work budget still get their Pell data and raw count.
    let d13 = rows.iter().find(|r| r[0] == "13").unwrap();
    assert_eq!((d13[2].as_str(), d13[8].as_str()), ("649", ""));
    assert!(!d13[7].is_empty());
}

#[test]
fn scan_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("missing").join("report.csv");
    assert_eq!(code(&["scan", "2:5", "--out", p.to_str().unwrap()]), Some(3));
}

#[test]
fn verify_commands() {
    assert!(ok(&["verify", "p0-1", "--n-max", "50", "--k-max", "50"]).contains("result: pass"));
    assert!(ok(&["verify", "p0-2", "--n-max", "50", "--l-max", "50"]).contains("result: pass"));
    let main = ok(&["verify", "main", "5", "--window", "100", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&main).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["cells"], 100);
    assert_eq!(code(&["verify", "main", "9"]), Some(2));
    assert_eq!(code(&["verify", "main", "5", "--window", "0"]), Some(2));
    assert_eq!(code(&["verify", "p0-1", "--n-max", "0"]), Some(2));
    assert_eq!(code(&["verify", "bogus"]), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["exc", "6", "--filters", "gino,fibration,hodge-xu", "--trace"][..],
        &["exc", "7", "--rho1", "--filters", "gino,rho1-divisibility", "--format", "json"],
        &["scan", "2:30", "--format", "csv"],
        &["scan", "2:30", "--rho1", "--format", "json"],
        &["pell", "61", "--count", "3", "--format", "json"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn report_json_round_trip(d in 2u64..=12, mask in 0u8..8, rho1 in any::<bool>(), cond in any::<bool>()) {
        use FilterId::*;
        let di = Int::from(d);
        let Ok(sol) = fundamental_solution(&di) else { return Ok(()) };
        let pool: &[FilterId] = if rho1 { &[Gino, Rho1Divisibility, Rationality] } else { &[Gino, Fibration, HodgeXu] };
        let filters = pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| *f).collect();
        let config = PipelineConfig { filters, rho1, include_conditional: cond, ..PipelineConfig::default() };
        let report = run_pipeline(&di, &sol, &config).unwrap();
        let json = report_to_json(&report).unwrap();
        prop_assert_eq!(report_from_json(&json).unwrap(), report);
    }
}
