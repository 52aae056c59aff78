use std::path::PathBuf;
use std::process::Command;

use macwilliams::cli::run;
use macwilliams::codes::{CodeFile, LinearCode};
use macwilliams::galois_ring::GaloisRing;
use macwilliams::Limits;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("macwilliams").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("macwilliams-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn code_file(name: &str, code: &LinearCode) -> String {
    tmp(name, &code.to_file().to_json())
}

const W12: &str = "X^6 + 3*X^4*Y^2 + 5*X^3*Y^3 + 6*X^2*Y^4 + 3*X*Y^5 + 14*Y^6\n";
const W12_DUAL: &str = "X^6 + 12*X^4*Y^2 + 6*X^3*Y^3 + 39*X^2*Y^4 + 42*X*Y^5 + 28*Y^6\n";
const W_C3: &str = "X^6 + 5*X^4*Y^2 + 8*X^3*Y^3 + 11*X^2*Y^4 + 24*X*Y^5 + 15*Y^6";

#[test]
fn enumerate_named_and_file_codes() {
    assert_eq!(call(&["enumerate", "hamming", "-m", "2", "C1", "C2"]), (0, W12.into(), String::new()));
    let lim = Limits::default();
    let c1 = code_file("c1.json", &LinearCode::named("C1", &lim).unwrap());
    let c2 = code_file("c2.json", &LinearCode::named("C2", &lim).unwrap());
    assert_eq!(call(&["enumerate", "hamming", "-m", "2", &c1, &c2]).1, W12);
    assert_eq!(call(&["enumerate", "rsupport", "-r", "1", &c1]).1, "3*X^4*Y^2 + 3*X^2*Y^4 + Y^6\n");
}

#[test]
fn enumerate_zero_code() {
    let zero = code_file("zero2.json", &LinearCode::zero(&GaloisRing::named("F2").unwrap(), 2));
    assert_eq!(call(&["enumerate", "hamming", &zero]).1, "X^2\n");
}

#[test]
fn dual_and_fast_path_agree() {
    let slow = call(&["enumerate", "hamming", "--dual", "C1", "C2"]);
    let fast = call(&["enumerate", "hamming", "--via-transform-of-dual", "C1", "C2"]);
    assert_eq!(slow.1, W12_DUAL);
    assert_eq!(slow, fast);
    for kind in ["complete", "support", "exact"] {
        assert_eq!(call(&["enumerate", kind, "--dual", "C1", "C2"]), call(&["enumerate", kind, "--via-transform-of-dual", "C1", "C2"]), "{kind}");
    }
}

#[test]
fn json_output() {
    let (code, out, _) = call(&["--format", "json", "enumerate", "hamming", "C2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["variables"], serde_json::json!(["X", "Y"]));
    assert_eq!(v["terms"][0], serde_json::json!({"exps": [6, 0], "coeff": 1}));
}

#[test]
fn dual_command_roundtrips() {
    let lim = Limits::default();
    let (code, out, _) = call(&["dual", "C1"]);
    assert_eq!(code, 0);
    let d = CodeFile::parse(&out).unwrap().build(&lim).unwrap();
    let c1 = LinearCode::named("C1", &lim).unwrap();
    assert_eq!(d.words(), c1.dual(&lim).unwrap().words());
    let f = tmp("c1dual.json", &out);
    let back = CodeFile::parse(&call(&["dual", &f]).1).unwrap().build(&lim).unwrap();
    assert_eq!(back.words(), c1.words());

    let c5 = CodeFile::parse(&call(&["dual", "C5"]).1).unwrap().build(&lim).unwrap();
    assert_eq!(c5.words(), LinearCode::named("C5", &lim).unwrap().words());

    let full = code_file("full.json", &LinearCode::full(&GaloisRing::named("F2").unwrap(), 3, &lim).unwrap());
    let z = CodeFile::parse(&call(&["dual", &full]).1).unwrap().build(&lim).unwrap();
    assert_eq!(z.cardinality(), 1);
}

#[test]
fn verify_commands() {
    for theorem in ["hamw", "pair-decomposition", "exact", "cwrcs2", "britz", "dps"] {
        let (code, out, err) = call(&["verify", "--theorem", theorem, "C1", "C2"]);
        assert_eq!(code, 0, "{theorem}: {out}{err}");
        assert!(out.contains("result: pass"));
    }
    for theorem in ["macwilliams", "wan", "klove", "corollary"] {
        assert_eq!(call(&["verify", "--theorem", theorem, "C3"]).0, 0, "{theorem}");
    }
    assert_eq!(call(&["verify", "--theorem", "klove", "-m", "2", "C1"]).0, 0);
    assert_eq!(call(&["verify", "--theorem", "repetition", "-t", "1", "C1"]).0, 0);
    assert_eq!(call(&["verify", "--theorem", "repetition", "-s", "1", "-t", "1", "C1"]).0, 0);
}

#[test]
fn transform_checks() {
    let f = tmp("c3.txt", W_C3);
    let (code, out, _) = call(&["transform", "hamming", &f, "-q", "2", "-m", "2", "--check-invariance"]);
    assert_eq!((code, out.as_str()), (0, "invariant\n"));
    let (code, out, _) = call(&["transform", "hamming", &f, "-q", "2", "-m", "2", "--check-divisibility"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("fails: X^4Y^2 coefficient 5 not divisible by 3"), "{out}");
    let x6 = tmp("x6.txt", "X^6");
    assert_eq!(call(&["transform", "hamming", &x6, "-q", "2", "-m", "2", "--check-divisibility"]).0, 0);
    let (code, out, _) = call(&["transform", "hamming", &f, "-q", "2", "-m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "64*X^6 + 320*X^4*Y^2 + 512*X^3*Y^3 + 704*X^2*Y^4 + 1536*X*Y^5 + 960*Y^6\n");
}

#[test]
fn transform_other_kinds() {
    let f = tmp("cw.txt", "X_(0)^3 + X_(1)^3");
    assert_eq!(call(&["transform", "complete", &f, "--ring", "F2"]).1, "2*X_(0)^3 + 6*X_(0)*X_(1)^2\n");
    let s = tmp("se.txt", "X_1*X_2 + Y_1*Y_2");
    assert_eq!(call(&["transform", "support", &s, "-q", "2", "-n", "2"]).1, "2*X_1*X_2 + 2*Y_1*Y_2\n");
    let e = tmp("ew.txt", "X_1_(0)");
    assert_eq!(call(&["transform", "exact", &e, "--ring", "F2", "-n", "1"]).1, "X_1_(0) + X_1_(1)\n");
    let j = tmp("w.json", r#"[{"exps":[3,0],"coeff":1},{"exps":[0,3],"coeff":1}]"#);
    assert_eq!(call(&["transform", "hamming", &j, "-q", "2"]).1, "2*X^3 + 6*X*Y^2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["enumerate", "hamming", "-m", "2", "D1", "--max-tuples", "100"]).0, 3);
    assert_eq!(call(&["enumerate", "hamming", "no-such-file.json"]).0, 2);
    assert_eq!(call(&["enumerate", "rsupport", "C1"]).0, 2);
    assert_eq!(call(&["enumerate", "hamming", "-m", "3", "C1", "C2"]).0, 2);
    let bad = tmp("bad.txt", "X^ + Y");
    assert_eq!(call(&["transform", "hamming", &bad, "-q", "2"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn binary_forwards_exit_code() {
    let exe = env!("CARGO_BIN_EXE_macwilliams");
    let out = Command::new(exe).args(["enumerate", "hamming", "-m", "2", "C1", "C2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), W12);
    let out = Command::new(exe).args(["dual", "C1", "--max-scan", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let a = call(&["enumerate", "exact", "C1", "C2"]);
    for _ in 0..3 {
        assert_eq!(call(&["enumerate", "exact", "C1", "C2"]), a);
    }
}
