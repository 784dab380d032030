use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bogocert(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bogocert"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "0")
        .env("BOGOCERT_CACHE_DIR", cache)
        .env_remove("BOGOCERT_CONFIG")
        .env_remove("BOGOCERT_STORE_PATH")
        .current_dir(cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

#[test]
fn certify_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store.jsonl");
    let update = std::env::var_os("BOGOCERT_UPDATE_GOLDEN").is_some();
    let cases = [("43.2.a.b", 17, 0), ("53.2.a.b", 17, 0), ("71.2.a.a", 3, 0), ("71.2.a.a", 5, 0), ("71.2.a.b", 3, 0), ("71.2.a.b", 37, 0)];
    for (label, p, code) in cases {
        let p = p.to_string();
        let out = bogocert(&["--offline", "certify", "--label", label, "--p", &p, "--store", store.to_str().unwrap()], dir.path());
        let text = stdout(&out);
        let golden = golden_dir().join(format!("certify_{label}_{p}.json"));
        if update {
            std::fs::write(&golden, &text).unwrap();
        }
        assert_eq!(text, std::fs::read_to_string(&golden).unwrap(), "{label} at {p}");
        assert_eq!(out.status.code(), Some(code), "{label} at {p}");
    }
    let stored = bogocert_cli::store::CertStore::open(&store).unwrap();
    assert_eq!(stored.len(), cases.len());

    // certifying again appends nothing
    bogocert(&["--offline", "certify", "--label", "43.2.a.b", "--p", "17", "--store", store.to_str().unwrap()], dir.path());
    assert_eq!(std::fs::read_to_string(&store).unwrap().lines().count(), cases.len());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| bogocert(args, dir.path()).status.code();
    assert_eq!(run(&["--offline", "certify", "--label", "1.12.a.a", "--p", "5", "--no-store"]), Some(0));
    assert_eq!(run(&["--offline", "certify", "--label", "27.2.a.a", "--p", "5", "--no-store"]), Some(3));
    assert_eq!(run(&["--offline", "certify", "--label", "no.such.label", "--p", "5", "--no-store"]), Some(64));
    assert_eq!(run(&["--offline", "certify", "--label", "1.12.a.a", "--p", "5", "--proposition", "XYZ"]), Some(64));
    assert_eq!(run(&["certify", "--label"]), Some(64));
    assert_eq!(run(&["frobnicate"]), Some(64));
    assert_eq!(run(&["--help"]), Some(0));
    assert_eq!(run(&["--version"]), Some(0));
    assert_eq!(run(&["places", "--poly", "x^2+", "--p", "5"]), Some(64));
    assert_eq!(run(&["places", "--poly", "x^2+1", "--p", "6"]), Some(64));
    assert_eq!(run(&["height", "--minpoly", "x^2-4"]), Some(64));
    assert_eq!(run(&["herbrand", "--phi", "2"]), Some(64));
    assert_eq!(run(&["group", "analyze", "--file", "missing.json"]), Some(64));
    // a corrupt store is an internal failure, not a usage error
    std::fs::write(dir.path().join("bad.jsonl"), "not json\n").unwrap();
    assert_eq!(run(&["--offline", "certify", "--label", "1.12.a.a", "--p", "5", "--store", "bad.jsonl"]), Some(70));
}

#[test]
fn herbrand_and_height_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = bogocert(&["herbrand", "--cyclotomic", "3,2", "--phi", "2"], dir.path());
    assert_eq!(stdout(&out), "1\n");
    let out = bogocert(&["herbrand", "--cyclotomic", "3,2", "--psi", "1"], dir.path());
    assert_eq!(stdout(&out), "2\n");
    let out = bogocert(&["height", "--minpoly", "x-2"], dir.path());
    assert!(stdout(&out).starts_with("0.693147180560\n"), "{}", stdout(&out));
    let out = bogocert(&["height", "--minpoly", "x^2+1"], dir.path());
    assert!(stdout(&out).starts_with("0\n"));
    let out = bogocert(&["height", "kummer", "--b", "2", "--p", "3", "--n", "2"], dir.path());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn scan_and_places() {
    let dir = tempfile::tempdir().unwrap();
    let out = bogocert(&["scan", "--levels", "1", "--primes", "5,7,59"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("B_CERTIFIED")).count(), 12, "{text}");
    assert!(text.contains("12 certificate(s)"));

    let out = bogocert(&["scan", "--levels", "1", "--primes", "5", "--json"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["entries"].as_array().unwrap().iter().any(|e| e["outcome"] == "certified"));

    let out = bogocert(&["places", "--poly", "x^2-10*x+17", "--p", "17", "--json"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let vals: Vec<_> = v.as_array().unwrap().iter().map(|pl| pl["ap_valuation"].clone()).collect();
    assert_eq!(vals.len(), 2);
    assert!(vals.contains(&serde_json::json!(1)) && vals.contains(&serde_json::json!(0)));
}

#[test]
fn group_analyze_selected_checks() {
    let dir = tempfile::tempdir().unwrap();
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("gamma_3_mod27.json");
    let out = bogocert(&["group", "analyze", "--file", file.to_str().unwrap(), "--classify", "--riehm"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classify: contains_sl2"), "{text}");
    assert!(text.contains("riehm: open_in_g"), "{text}");
    assert!(!text.contains("slgl:"));
    let out = bogocert(&["group", "analyze", "--file", file.to_str().unwrap(), "--budget", "100"], dir.path());
    assert_eq!(out.status.code(), Some(70));
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bogocert.toml"), "offline = true\nstore_path = \"from-config.jsonl\"\n").unwrap();
    let out = bogocert(&["certify", "--label", "1.12.a.a", "--p", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("from-config.jsonl").exists());
    std::fs::write(dir.path().join("bogocert.toml"), "no_such_key = 1\n").unwrap();
    assert_eq!(bogocert(&["height", "--minpoly", "x-2"], dir.path()).status.code(), Some(64));
}
