use std::path::PathBuf;
use std::process::{Command, Output};

use latnorm_cli::{Body, ReportDocument};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{}.json", name))
}

fn latnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latnorm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn value_and_series() {
    let a3 = corpus("a3");
    let o = latnorm(&["value", a3.to_str().unwrap(), "--at", "2,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2\n");
    let o = latnorm(&["series", "alexander", corpus("d5").to_str().unwrap()]);
    assert_eq!(stdout(&o), "1 + t1*t2^3\n");
    let o = latnorm(&["homology", a3.to_str().unwrap(), "--at", "2,2"]);
    assert_eq!(stdout(&o), "Z[-4] + Z[-5]\n");
}

#[test]
fn json_is_stable() {
    let a3 = corpus("a3");
    let args = ["--format", "json", "hilbert", a3.to_str().unwrap(), "--box", "4,4"];
    let first = stdout(&latnorm(&args));
    assert_eq!(first, stdout(&latnorm(&args)));
    let doc = ReportDocument::from_json(&first).unwrap();
    assert_eq!(doc.schema_version, 1);
    match doc.body {
        Body::Hilbert { corner, values } => {
            assert_eq!(corner, [4, 4]);
            assert_eq!(values.len(), 25);
        }
        other => panic!("unexpected body {:?}", other),
    }
}

#[test]
fn exit_codes() {
    let a3 = corpus("a3");
    let o = latnorm(&["value", a3.to_str().unwrap(), "--at", "x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = latnorm(&["value", a3.to_str().unwrap(), "--at", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DimensionMismatch"));
    let o = latnorm(&["invariants", "/nonexistent/curve.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: IoError"));
}

#[test]
fn verify_single_curve() {
    let o = latnorm(&["verify", corpus("cusp_2_3").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with(" 0 failed\n"));
}
