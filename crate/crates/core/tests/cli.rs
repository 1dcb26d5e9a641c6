use std::process::{Command, Output};

use concavex::cli::Payload;

fn run(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concavex")).args(args.split_whitespace()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run("iv --s 2 --l 3 --order 2").status.code(), Some(0));
    assert_eq!(run("iv --s 2 --l three").status.code(), Some(1));
    assert_eq!(run("iv --s 2 --l 3 --order -1").status.code(), Some(1));
    assert_eq!(run("mirror --s 2 --l 3,1").status.code(), Some(2));
    assert_eq!(run("oracle --preset local-p2 --order 3 --weights 1,3,7").status.code(), Some(3));
    assert_eq!(run("--help").status.code(), Some(0));
}

#[test]
fn usage_error_names_flag() {
    let o = run("iv --s 2 --l 3 --format xml");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--format"));
}

#[test]
fn hypothesis_message_names_inequality() {
    let o = run("invariants --s 3 --k 3 --l 2");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("5 > s + 1 = 4"));
    let o = run("mirror --s 2 --k 1");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn local_p2_rows() {
    let out = stdout(&run("invariants --preset local-p2 --order 3"));
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["d  value", "1  3", "2  -45/8", "3  244/9"]);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("concavex_out_{}.json", std::process::id()));
    let args = "mirror --preset local-p2 --order 3 --format json";
    let o = run(&format!("{args} --out {}", path.display()));
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(written, stdout(&run(args)));
    let p: Payload = serde_json::from_str(&written).unwrap();
    assert_eq!(p.spec, concavex::hypergeom::BundleSpec::local_p2());
}

#[test]
fn mirror_banner_and_grid() {
    let out = stdout(&run("mirror --preset local-p2 --order 2"));
    assert!(out.contains(concavex::cli::BANNER));
    assert!(out.contains("# I1 = (-6)q^1 + (45)q^2"));
    let header = out.lines().find(|l| l.starts_with("d ")).unwrap();
    assert!(header.contains("H^2 hbar^-2"));
}

#[test]
fn csv_has_every_coefficient() {
    let csv = stdout(&run("iv --s 1 --l 1,1 --order 2 --format csv"));
    let json: Payload = serde_json::from_str(&stdout(&run("iv --s 1 --l 1,1 --order 2 --format json"))).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), json.coefficients.len());
    for (line, (d, a, e, v)) in rows.iter().zip(&json.coefficients) {
        assert_eq!(*line, format!("coefficient,{d},{a},{e},{v}"));
    }
}

#[test]
fn generic_map_needed_spec_prints_grid() {
    let out = stdout(&run("invariants --s 2 --k 1 --l 2 --order 2"));
    assert!(out.contains("# I1 = (2)q^1 + (3)q^2"));
    assert!(out.lines().any(|l| l.starts_with("d  H^0 hbar^0")));
}

#[test]
fn oracle_json_reports_checks() {
    let o = run("oracle --s 1 --k 1 --l 1 --order 2 --zorder 2 --seeds 2 --format json");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    assert_eq!(v["runs"][0]["checks"].as_array().unwrap().len(), 3);
}
