use std::process::{Command, Output};

use qeulerian::identities::VerificationReport;

fn qeulerian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeulerian"))
        .args(args)
        .env_remove("QEULERIAN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_pk_lr_passes() {
    let o = qeulerian(&["verify", "--id", "pk-lr", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.starts_with("PASS pk-lr")));
}

#[test]
fn verify_all_small_passes_in_sorted_order() {
    let o = qeulerian(&["verify", "--id", "all", "--n-max", "3", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let firsts: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with(' '))
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(firsts.len(), 18 * 3);
    assert_eq!(firsts[0], "eulerian-egf");
    assert_eq!(firsts.last().unwrap(), "secant");
}

#[test]
fn exit_codes() {
    assert_eq!(qeulerian(&["verify", "--id", "no-such"]).status.code(), Some(2));
    assert_eq!(qeulerian(&["verify", "--id", "pk-lr", "--n-max", "11"]).status.code(), Some(3));
    assert_eq!(qeulerian(&["verify", "--id", "ji", "--n-max", "5", "--exhaustive-grid"]).status.code(), Some(3));
    assert_eq!(qeulerian(&["table", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(qeulerian(&["inspect", "1223"]).status.code(), Some(2));
    assert_eq!(qeulerian(&["bogus"]).status.code(), Some(2));
    let threads = Command::new(env!("CARGO_BIN_EXE_qeulerian"))
        .args(["verify", "--id", "pk-lr", "--n-max", "2"])
        .env("QEULERIAN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(3));
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let args = ["verify", "--id", "carlitz,ji", "--n-max", "4", "--format", "json", "--samples", "6"];
    let a = stdout(&qeulerian(&args));
    let b = stdout(&qeulerian(&args));
    assert_eq!(a, b);
    for line in a.lines() {
        let r: VerificationReport = serde_json::from_str(line).unwrap();
        assert_eq!(r.to_json(), line);
        assert_eq!(r.elapsed_ms, None);
        assert_eq!(r.seed, 20240501);
    }
    let timed = stdout(&qeulerian(&["verify", "--id", "ji", "--n-max", "2", "--format", "json", "--timings"]));
    let r: VerificationReport = serde_json::from_str(timed.lines().next().unwrap()).unwrap();
    assert!(r.elapsed_ms.is_some());
}

#[test]
fn seed_is_echoed() {
    let out = stdout(&qeulerian(&["verify", "--id", "ji", "--n-max", "2", "--seed", "7", "--format", "csv"]));
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "id,n,pass,residual_degree,elapsed_ms,seed,params");
    assert!(lines.all(|l| l.starts_with("ji,") && l.contains(",true,,,7,")));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qeulerian-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.txt");
    let o = qeulerian(&["table", "--family", "eulerian", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.ends_with("3: 1 + 4*x + x^2\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn tables() {
    let eulerian = stdout(&qeulerian(&["table", "--family", "eulerian", "--n", "3"]));
    assert_eq!(eulerian.lines().last().unwrap(), "3: 1 + 4*x + x^2");
    let euler = stdout(&qeulerian(&["table", "--family", "euler-numbers", "--n", "5"]));
    assert_eq!(euler, "1,1,1,2,5,16\n");
    let a2 = stdout(&qeulerian(&["table", "--family", "stirling-eulerian", "--n", "2"]));
    assert_eq!(a2.lines().last().unwrap(), "2: x*alpha + y*beta");
    let gamma = stdout(&qeulerian(&["table", "--family", "gamma", "--n", "3"]));
    assert_eq!(
        gamma.lines().last().unwrap(),
        "3: u2*alpha + u2*beta + 1/4*alpha^2 + 1/2*alpha*beta + 1/4*beta^2"
    );
}

#[test]
fn table_csv_rows_are_exact() {
    let csv = stdout(&qeulerian(&["table", "--family", "eulerian", "--n", "3", "--format", "csv"]));
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "family,n,x,y,u1,u2,u3,u4,alpha,beta,q,numerator,denominator");
    assert!(rows.contains(&"eulerian,3,1,0,0,0,0,0,0,0,0,4,1"));
    assert_eq!(rows.len(), 1 + 1 + 2 + 3);
    let gamma = stdout(&qeulerian(&["table", "--family", "gamma", "--n", "2", "--format", "csv"]));
    assert!(gamma.lines().any(|l| l == "gamma,2,0,0,0,0,0,0,1,0,0,1,2"));
}

#[test]
fn inspect_shows_decompositions() {
    let out = stdout(&qeulerian(&["inspect", "2164573"]));
    assert!(out.contains("basic: 21 | 645 | 73\n"), "{}", out);
    let word = "5 10 3 11 2 12 4 13 6 1 9 8 15 7 14";
    let out = stdout(&qeulerian(&["inspect", word, "--psi", "3"]));
    assert!(out.contains("bi-basic: 5 10 | 3 11 | 2 12 4 13 6 | 1 | 9 8 15 7 | 14\n"), "{}", out);
    let trivial = stdout(&qeulerian(&["inspect", "1"]));
    assert!(trivial.contains("bi-basic: 1\n"), "{}", trivial);
    assert!(trivial.contains("inv=0"));
}

#[test]
fn inspect_json() {
    let out = stdout(&qeulerian(&["inspect", "312", "--psi", "3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quadruples"].as_array().unwrap().len(), 4);
    assert_eq!(v["psi"]["image"], "123");
}
