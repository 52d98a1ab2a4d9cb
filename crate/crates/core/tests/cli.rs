use std::process::{Command, Output};

fn surfconj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfconj"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn nf_of_a_cancelling_pair_is_empty() {
    let o = surfconj(&["nf", "--genus", "2", "1 -1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "\n");
}

#[test]
fn nf_formats_and_traces() {
    let o = surfconj(&["nf", "1 2 3 4"]);
    assert_eq!(stdout(&o), "4 3 2 1\n");
    let o = surfconj(&["nf", "--format", "alpha", "abcd"]);
    assert_eq!(stdout(&o), "dcba\n");
    let o = surfconj(&["nf", "--trace", "1 2 3 4 -1"]);
    assert_eq!(
        stdout(&o),
        "initial 1 2 3 4 -1\nS2 0 0 5 - 5 3\nfinal 4 3 2\n4 3 2\n"
    );
    let o = surfconj(&["nf", "--json", "1 2 3 4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nf"], "4 3 2 1");
}

#[test]
fn witness_conjugator_with_exact_length() {
    let o = surfconj(&["conjugator", "--genus", "2", "1", "-2 -2 1 2 2", "--exact"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conjugate"], true);
    assert_eq!(v["conjugator_len"], 2);
    assert_eq!(v["exact_cl"], 2);
    assert_eq!(v["bound"], 18);
}

#[test]
fn class_and_conjugacy_commands() {
    assert_eq!(stdout(&surfconj(&["cnf", "-2 1 2"])), "1\n");
    assert_eq!(stdout(&surfconj(&["is-conj", "1", "-2 1 2"])), "true\n");
    assert_eq!(stdout(&surfconj(&["is-conj", "1", "2"])), "false\n");
    let o = surfconj(&["witness", "--n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["v"], "-2 -2 1 2 2");
    assert_eq!(v["expected_cl"], 2);
    let o = surfconj(&["prepare", "-2 -2 1 2 2"]);
    assert!(stdout(&o).starts_with("X: 2 2\nAprime: 1\nrotation_offset: 0\n"));
}

#[test]
fn cl_exact_distinguishes_exhaustion() {
    let o = surfconj(&["cl-exact", "1", "-2 1 2"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "1\n".to_string()));
    let o = surfconj(&["cl-exact", "--max-depth", "2", "1", "2"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(1), "exhausted\n".to_string())
    );
}

#[test]
fn error_exit_codes() {
    assert_eq!(surfconj(&["nf", "5 1"]).status.code(), Some(2));
    assert_eq!(
        surfconj(&["nf", "--genus", "1", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(surfconj(&["nf", "1 x"]).status.code(), Some(2));
    assert_eq!(
        surfconj(&["survey", "--radius", "3", "--max-states", "10"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(surfconj(&["witness", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn survey_is_complete_deterministic_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.jsonl");
    let p = path.to_str().unwrap();
    assert!(surfconj(&["survey", "--radius", "2", "--out", p])
        .status
        .success());
    let full = std::fs::read_to_string(&path).unwrap();
    // 65 elements in the radius-2 ball.
    assert_eq!(full.lines().count(), 65 * 64 / 2);
    let again = stdout(&surfconj(&["survey", "--radius", "2"]));
    assert_eq!(again, full);

    let cut: String = full
        .lines()
        .take(100)
        .map(|l| format!("{l}\n"))
        .collect::<String>()
        + "{\"genus\":2,";
    std::fs::write(&path, cut).unwrap();
    assert!(
        surfconj(&["survey", "--radius", "2", "--out", p, "--resume"])
            .status
            .success()
    );
    assert_eq!(std::fs::read_to_string(&path).unwrap(), full);

    let conj = stdout(&surfconj(&["survey", "--radius", "2", "--conjugate-only"]));
    assert_eq!(conj.lines().count(), 24);
    for line in conj.lines() {
        let r: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(r["conjugator_len"].as_u64().unwrap() <= r["bound"].as_u64().unwrap());
        assert!(r["exact_cl"].as_u64().unwrap() <= r["conjugator_len"].as_u64().unwrap());
    }
}

#[test]
fn survey_csv_and_sampling() {
    let csv = stdout(&surfconj(&[
        "survey", "--radius", "2", "--csv", "--sample", "10", "--seed", "4",
    ]));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("genus,u,v,conjugate,conjugator_len,bound,exact_cl,r_sum,elapsed_ms")
    );
    assert_eq!(lines.count(), 10);
    assert_eq!(
        csv,
        stdout(&surfconj(&[
            "survey", "--radius", "2", "--csv", "--sample", "10", "--seed", "4"
        ]))
    );
}

#[test]
fn selfcheck_subset() {
    let o = surfconj(&["selfcheck", "--only", "5,8", "--samples", "100"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.starts_with("[PASS]")));
}
