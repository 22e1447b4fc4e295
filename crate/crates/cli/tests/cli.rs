use std::process::{Command, Output};

use cryptobench::protocols::Transcript;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cryptobench"))
        .args(args)
        .env_remove("WORKBENCH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn rsa_keygen_from_primes() {
    let out = run(&["rsa", "keygen", "--p", "11", "--q", "23", "--e", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "rsa-pub n=0xfd e=0x3\nrsa-priv n=0xfd d=0x93 p=0xb q=0x17\n");
}

#[test]
fn rsa_sign_and_verify_through_key_file() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("key.txt");
    let key = key.to_str().unwrap();
    assert!(run(&["rsa", "keygen", "--p", "11", "--q", "23", "--e", "3", "--out", key]).status.success());

    let c = run(&["rsa", "encrypt", "--key", key, "--m", "42"]);
    let c = stdout(&c).trim().to_string();
    let m = run(&["rsa", "decrypt", "--key", key, "--c", &c, "--crt"]);
    assert_eq!(stdout(&m).trim(), "0x2a");

    let sig = run(&["rsa", "sign", "--key", key, "--m", "42"]);
    let sig = stdout(&sig).trim().to_string();
    assert_eq!(run(&["rsa", "verify", "--key", key, "--m", "42", "--sig", &sig]).status.code(), Some(0));
    assert_eq!(run(&["rsa", "verify", "--key", key, "--m", "43", "--sig", &sig]).status.code(), Some(3));
}

#[test]
fn caesar_golden() {
    let out = run(&["classical", "caesar", "--key", "11", "--encrypt", "SUMMER"]);
    assert_eq!(stdout(&out), "DFXXPC\n");
    let back = run(&["classical", "caesar", "--key", "11", "--decrypt", "DFXXPC"]);
    assert_eq!(stdout(&back), "SUMMER\n");
}

#[test]
fn vigenere_golden() {
    let out = run(&["classical", "vigenere", "--key", "ENGLISH", "--encrypt", "FINNISHISALLGREEKTOGERMANS"]);
    assert_eq!(stdout(&out), "JVTYQKOMFGWTYYIRQEWYLVZGYA\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classical", "caesar", "--key", "3", "SUMMER"]).status.code(), Some(2));
    assert_eq!(run(&["classical", "caesar", "--key", "3", "--encrypt", "summer!"]).status.code(), Some(2));
    assert_eq!(run(&["rsa", "keygen", "--p", "12", "--q", "23"]).status.code(), Some(2));
}

#[test]
fn statistical_commands_require_a_seed() {
    let out = run(&["zk", "gmw", "--rounds", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(run(&["protocol", "dh"]).status.code(), Some(2));

    let env = Command::new(env!("CARGO_BIN_EXE_cryptobench"))
        .args(["zk", "gmw", "--rounds", "3"])
        .env("WORKBENCH_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    assert_eq!(stdout(&env), stdout(&run(&["zk", "gmw", "--rounds", "3", "--seed", "42"])));
}

#[test]
fn gmw_run_is_deterministic_per_seed() {
    let args = ["zk", "gmw", "--vertices", "6", "--rounds", "20", "--seed", "42"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let text = stdout(&a);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 21);
    for (i, line) in lines[..20].iter().enumerate() {
        assert_eq!(line["round"], i as u64 + 1);
        assert_eq!(line["verdict"], true);
        assert!(line["commitment"]["graph"].is_object());
    }
    let summary = &lines[20];
    assert_eq!(summary["accept_rate"], "20/20");
    assert_eq!(summary["rounds"], 20);
    assert_eq!(summary["seed"], 42);

    let other = run(&["zk", "gmw", "--vertices", "6", "--rounds", "20", "--seed", "43"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn impostor_is_rejected_with_exit_3() {
    let out = run(&["zk", "fs", "--bits", "32", "--rounds", "20", "--seed", "1", "--prover", "impostor"]);
    assert_eq!(out.status.code(), Some(3));
    let summary: serde_json::Value = serde_json::from_str(stdout(&out).lines().last().unwrap()).unwrap();
    assert_eq!(summary["accepted"], false);
}

#[test]
fn attacks_report_json_and_exit_codes() {
    let ok = run(&["attack", "trial-division", "--n", "253"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&ok).trim()).unwrap();
    assert_eq!(report["succeeded"], true);
    assert_eq!(report["recovered"]["p"], "0xb");
    assert_eq!(report["recovered"]["q"], "0x17");

    let failed = run(&["attack", "wiener", "--n", "0xfd", "--e", "3"]);
    assert_eq!(failed.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_str(stdout(&failed).trim()).unwrap();
    assert_eq!(report["succeeded"], false);
}

#[test]
fn transcript_written_with_out_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dh.jsonl");
    let p = path.to_str().unwrap();
    let out = run(&["protocol", "dh", "--seed", "5", "--bits", "24", "--out", p]);
    assert_eq!(out.status.code(), Some(0));

    let t = Transcript::read(&path).unwrap();
    assert_eq!(t.seed, Some(5));
    assert_eq!(t.outputs["k_alice"], t.outputs["k_bob"]);

    let echoed = run(&["protocol", "read", p]);
    assert_eq!(stdout(&echoed), std::fs::read_to_string(&path).unwrap());
    let direct = run(&["protocol", "dh", "--seed", "5", "--bits", "24"]);
    assert_eq!(stdout(&direct), stdout(&echoed));
}

#[test]
fn aowf_check_reports_properties() {
    let ok = run(&["aowf-check", "--graph", "k3", "--totalize"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).lines().count(), 3);

    let fails = run(&["aowf-check", "commutative", "--function", "floor-sub"]);
    assert_eq!(fails.status.code(), Some(3));
    let r: serde_json::Value = serde_json::from_str(stdout(&fails).trim()).unwrap();
    assert_eq!(r["holds"], false);
    assert!(r["witness"].is_array());
}

#[test]
fn analyze_builtin_systems() {
    let otp = run(&["analyze", "--system", "otp2", "--json"]);
    assert_eq!(otp.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&otp).trim()).unwrap();
    assert_eq!(v["perfectly_secret"], true);

    let buchmann = run(&["analyze", "--system", "buchmann", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&buchmann).trim()).unwrap();
    assert_eq!(v["perfectly_secret"], false);
}

#[test]
fn elgamal_fixture_parses_and_reproduces() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/elgamal_seed11.jsonl");
    let t = Transcript::read(&path).unwrap();
    assert_eq!(t.protocol, "elgamal");
    assert_eq!(t.seed, Some(11));
    assert_eq!(t.messages.len(), 3);
    let labels: Vec<&str> = t.messages.iter().map(|m| m.label.as_str()).collect();
    assert_eq!(labels, ["beta", "alpha", "c"]);

    let rerun = run(&["protocol", "elgamal", "--seed", "11", "--bits", "24"]);
    assert_eq!(stdout(&rerun), std::fs::read_to_string(&path).unwrap());
}

#[test]
fn header_only_transcript_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    let t = Transcript::new("empty");
    t.write(&path).unwrap();
    assert_eq!(Transcript::read(&path).unwrap(), t);
    assert_eq!(stdout(&run(&["protocol", "read", path.to_str().unwrap()])), t.to_jsonl());
}

#[test]
fn malformed_transcript_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    let mut text = Transcript::new("bad").to_jsonl();
    text.push_str("{\"round\":1,\"sender\":\"alice\"}\n");
    std::fs::write(&path, text).unwrap();
    let out = run(&["protocol", "read", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
