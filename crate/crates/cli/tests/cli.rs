use std::path::Path;
use std::process::{Command, Output};

fn phe(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phe"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = phe(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    phe(dir, args).status.code().unwrap()
}

fn setup(dir: &Path) {
    ok(dir, &["keygen", "--scheme", "elgamal", "--seed", "1", "--out-prefix", "eg"]);
    ok(dir, &["keygen", "--scheme", "ceg", "--d", "3,5", "--seed", "1", "--out-prefix", "cg"]);
    ok(dir, &["encrypt", "--key", "eg.pub.json", "--message", "10", "--seed", "3", "--out", "eg.json"]);
    ok(dir, &["encrypt", "--key", "cg.pub.json", "--message", "7", "--seed", "3", "--out", "cg.json"]);
}

#[test]
fn elgamal_fold_of_three() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    ok(d, &["encrypt", "--key", "eg.pub.json", "--message", "2", "--out", "b.json"]);
    ok(d, &["encrypt", "--key", "eg.pub.json", "--message", "4", "--out", "c.json"]);
    ok(d, &["eval", "--key", "eg.pub.json", "--op", "mul", "--in", "eg.json", "--in", "b.json", "--in", "c.json", "--out", "p.json"]);
    // 10 * 2 * 4 = 80 = 11 (mod 23)
    assert_eq!(ok(d, &["decrypt", "--key", "eg.sec.json", "--in", "p.json"]), "11\n");
}

#[test]
fn key_and_ciphertext_files_are_hex_json() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    let pubkey = std::fs::read_to_string(d.join("eg.pub.json")).unwrap();
    assert!(pubkey.contains("\"scheme\": \"elgamal\""));
    assert!(pubkey.contains("\"n\": \"17\""));
    assert!(!pubkey.contains("\"k\""));
    let ct = std::fs::read_to_string(d.join("cg.json")).unwrap();
    assert!(ct.contains("\"add_count\": 0"));
    assert!(ct.ends_with("}\n"));
}

#[test]
fn scheme_tags_are_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    assert_eq!(code(d, &["decrypt", "--key", "eg.sec.json", "--in", "cg.json"]), 2);
    assert_eq!(code(d, &["decrypt", "--key", "cg.sec.json", "--in", "eg.json"]), 2);
    assert_eq!(code(d, &["eval", "--key", "eg.pub.json", "--op", "add", "--in", "eg.json", "--in", "eg.json", "--out", "x.json"]), 2);
    assert_eq!(code(d, &["eval", "--key", "cg.pub.json", "--op", "mul", "--in", "cg.json", "--in", "cg.json", "--out", "x.json"]), 2);
    // a public key cannot decrypt
    assert_eq!(code(d, &["decrypt", "--key", "eg.pub.json", "--in", "eg.json"]), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    setup(d);
    assert_eq!(code(d, &["keygen", "--scheme", "ceg", "--d", "2,4", "--out-prefix", "bad"]), 2);
    assert_eq!(code(d, &["keygen", "--scheme", "elgamal", "--n", "22", "--out-prefix", "bad"]), 2);
    assert_eq!(code(d, &["encrypt", "--key", "eg.pub.json", "--message", "0", "--out", "x.json"]), 2);
    assert_eq!(code(d, &["eval", "--key", "eg.pub.json", "--op", "mul", "--in", "eg.json", "--out", "x.json"]), 2);
    assert_eq!(code(d, &["bench", "--trials", "0"]), 2);
    assert_eq!(code(d, &["nonsense"]), 2);

    std::fs::write(d.join("broken.json"), "{\"scheme\":\"elgamal\",\"c1\":\"0A\",\"c2\":\"1\"}").unwrap();
    assert_eq!(code(d, &["decrypt", "--key", "eg.sec.json", "--in", "broken.json"]), 2);

    // understating add_count leaves the discrete log outside the scan
    let sum_args = ["eval", "--key", "cg.pub.json", "--op", "add", "--in", "cg.json", "--in", "cg.json", "--in", "cg.json", "--out", "s.json"];
    ok(d, &sum_args);
    let text = std::fs::read_to_string(d.join("s.json")).unwrap();
    std::fs::write(d.join("s.json"), text.replace("\"add_count\": 2", "\"add_count\": 0")).unwrap();
    let out = phe(d, &["decrypt", "--key", "cg.sec.json", "--in", "s.json"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn help_documents_exit_codes() {
    let out = ok(Path::new("."), &["--help"]);
    assert!(out.contains("Exit codes"));
}

#[test]
fn bench_reports_both_layouts() {
    let out = ok(Path::new("."), &["bench", "--layout", "both", "--bits", "8", "--t", "2", "--trials", "3"]);
    let row = |name: &str| -> Vec<String> {
        out.lines()
            .find(|l| l.starts_with(name))
            .unwrap()
            .split_whitespace()
            .map(str::to_owned)
            .collect()
    };
    let (regular, dual) = (row("regular"), row("dual"));
    let enc_total = |r: &[String]| r[4].parse::<u64>().unwrap();
    assert!(enc_total(&dual) >= enc_total(&regular));
    assert_eq!(row("multipliers"), ["multipliers", "2", "1", "50.00"]);
}

#[test]
fn demo_writes_a_ciphertext_only_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = ok(d, &["demo", "--mode", "add", "--inputs", "2,4,9", "--adversary", "logger", "--seed", "3", "--transcript", "t.log"]);
    assert!(out.contains("result: 0\n"), "{out}");
    assert!(out.contains("audit: ciphertext-only, 8 entries"), "{out}");
    let log = std::fs::read_to_string(d.join("t.log")).unwrap();
    assert!(log.starts_with("param n 17\nparam g 5\n"), "{log}");
    assert_eq!(log.lines().filter(|l| l.starts_with("observed") || l.starts_with("emitted")).count(), 8);
}
