use std::process::{Command, Output};

fn tau_mean(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tau-mean"))
        .args(args)
        .output()
        .expect("spawn tau-mean")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn tau_single_and_range() {
    let out = tau_mean(&["tau", "--set", "naturals", "--n", "12"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tau"], 5);

    let out = tau_mean(&[
        "tau", "--set", "primes", "--range", "1..6", "--method", "brute",
    ]);
    assert_eq!(stdout(&out), "n,tau\n1,2\n2,3\n3,2\n4,3\n5,2\n6,5\n");
}

#[test]
fn phi_reports_main_term_and_correction() {
    let out = tau_mean(&["phi", "--set", "naturals", "--alpha", "3", "--x", "100"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 34);
    assert_eq!(v["main_term"], "100/3");
    assert_eq!(v["correction"], "2/3");
    assert_eq!(v["match"], true);
}

#[test]
fn average_both_methods_agree() {
    let out = tau_mean(&[
        "average", "--set", "primes", "--N", "30", "--method", "both",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["r"], 4);
    assert!(v["average"].as_str().unwrap().contains('/'));
}

#[test]
fn series_and_limit() {
    let out = tau_mean(&[
        "series", "--set", "naturals", "--n-max", "10", "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("terms_through_n,value,last_term,decimal")
    );
    assert!(lines.next().unwrap().starts_with("10,1405/504,1/2520,"));

    let out = tau_mean(&["limit", "--set", "primes", "--digits", "12"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "2.92005097732");
}

#[test]
fn errcurve_csv_has_header_and_rows() {
    let out = tau_mean(&[
        "errcurve",
        "--set",
        "naturals",
        "--grid",
        "1e3,1e4",
        "--limit-digits",
        "30",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,average,limit,abs_error,bound,ratio");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1000,"));
    assert!(!text.contains('"'));
}

#[test]
fn criterion_and_density() {
    let out = tau_mean(&["criterion", "--set", "primes", "--grid", "1e3,1e4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "fails");
    assert!(v["transfer"].is_string());

    let out = tau_mean(&[
        "density",
        "--set",
        "squarefree",
        "--grid",
        "100",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&out),
        "N,ratio,decimal\n100,61/100,0.61000000000000000000\n"
    );
}

#[test]
fn divergent_limit_is_a_domain_error() {
    let out = tau_mean(&["limit", "--set", "geometric:2", "--digits", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].is_string());
    assert!(err["message"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tau_mean(&[]).status.code(), Some(2));
    assert_eq!(
        tau_mean(&["tau", "--set", "naturals"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tau_mean(&["average", "--set", "naturals", "--N", "ten"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bad_set_is_a_domain_error() {
    let out = tau_mean(&["tau", "--set", "fibonacci", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn file_sets_are_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.txt");
    std::fs::write(&path, "# small set\n2\n3\n4\n\n9\n").unwrap();
    let arg = format!("file:{}", path.display());
    let out = tau_mean(&["profile", "--set", &arg, "--up-to", "9"]);
    assert_eq!(
        stdout(&out),
        "k,b,L,Lambda\n1,2,2,2\n2,3,3,6\n3,4,2,12\n4,9,3,36\n"
    );
}

#[test]
fn small_verify_is_repeatable() {
    let args = [
        "verify",
        "--max-n",
        "300",
        "--sets",
        "naturals,arithmetic:3,4",
        "--boundary-max",
        "1000",
        "--squarefree-max",
        "500",
        "--seed",
        "7",
    ];
    let a = tau_mean(&args);
    let b = tau_mean(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("check,set,status,detail,counterexample\n"));
    assert!(text.contains("random:64;400;7"));
    assert!(!text.contains("FAIL"));
}
