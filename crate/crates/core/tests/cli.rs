//! End-to-end checks of the `gpoly` command line through `cli::run`.

use gpoly::cli::{run, EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn gpoly(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("gpoly").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(gpoly(&["verify", "--ids", "2.1,2.9", "--n-max", "15"]).0, EXIT_OK);
    let (code, _, err) = gpoly(&["verify", "--ids", "2.99"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown recurrence id"), "{err}");
    assert_eq!(gpoly(&["liu-wang", "--recursion", "fixed-n", "--n-max", "12", "--negate-psi"]).0, EXIT_FAIL);
    assert_eq!(gpoly(&["compute", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(gpoly(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(gpoly(&["--help"]).0, EXIT_OK);
    assert_eq!(gpoly(&["stats", "--n-max", "8", "--out", "/nonexistent-dir/x.txt"]).0, EXIT_IO);
    assert_eq!(gpoly(&["normality", "--n", "50", "--grid", "50"]).0, EXIT_USAGE);
    assert_eq!(gpoly(&["conjecture", "--schedule", "floor-alpha-n:3/4"]).0, EXIT_USAGE);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["--format", "json", "--no-meta", "compute", "--n", "12", "--d", "5"][..],
        &["--format", "json", "--no-meta", "roots", "--n", "9", "--d", "4"][..],
        &["--format", "json", "--no-meta", "stats", "--n-max", "12"][..],
        &["--format", "json", "--no-meta", "interlace", "--family", "diag-half", "--n-max", "12"][..],
    ] {
        let (code, out, _) = gpoly(args);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        let again = gpoly::json::to_canonical_string(&v).unwrap() + "\n";
        assert_eq!(again, out);
        assert_eq!(gpoly(args).1, out, "output is deterministic without meta");
    }
}

#[test]
fn json_meta_adds_timestamp() {
    let (_, out, _) = gpoly(&["--format", "json", "compute", "--n", "6", "--d", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["timestamp"].is_u64());
    assert_eq!(v["command"], "compute");
    assert_eq!(v["payload"]["f_at_1"]["num"], "13");
}

#[test]
fn stats_csv_rows() {
    let (code, out, _) = gpoly(&["--format", "csv", "stats", "--n-max", "50"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, gpoly::asymptotics::StatsRecord::CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 47);
    assert_eq!((&rows[0][0], &rows[0][1]), ("4", "2"));
    assert_eq!((&rows[0][2], &rows[0][3]), ("4", "3"));
}

#[test]
fn plot_data_file() {
    let dir = std::env::temp_dir().join(format!("gpoly-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("clt.dat");
    let p = path.to_str().unwrap();
    assert_eq!(gpoly(&["--plot-data", p, "stats", "--n-max", "12"]).0, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# n clt_distance\n"));
    assert_eq!(text.lines().count(), 1 + 9);
    assert_eq!(gpoly(&["--plot-data", p, "lemmas", "--m-max", "5"]).0, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn threads_flag() {
    assert_eq!(gpoly(&["--threads", "1", "verify", "--n-max", "12"]).0, EXIT_OK);
    assert_eq!(gpoly(&["--threads", "0", "verify", "--n-max", "12"]).0, EXIT_USAGE);
}

#[test]
fn compute_via_recurrence_matches() {
    let a = gpoly(&["--format", "json", "--no-meta", "compute", "--n", "14", "--d", "7"]).1;
    let b = gpoly(&["--format", "json", "--no-meta", "compute", "--n", "14", "--d", "7", "--via", "2.9+2.10"]).1;
    let (a, b): (Value, Value) = (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    assert_eq!(a["payload"]["coefficients"], b["payload"]["coefficients"]);
}
