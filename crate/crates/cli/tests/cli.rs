use std::process::{Command, Output};

fn permstat(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permstat"))
        .args(args)
        .env("PERMSTAT_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stats_of_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let o = permstat(&["stats", "2 3 1 4 6 8 7 5"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for (k, want) in [("des2", 2), ("pex", 2), ("pdrop", 2), ("cyc", 4), ("fix", 2), ("pcyc", 2)] {
        assert_eq!(v[k], want, "{k}");
    }
}

#[test]
fn biject_phi1_and_hop() {
    let dir = tempfile::tempdir().unwrap();
    let o = permstat(&["--format", "text", "biject", "--map", "phi1", "4 7 1 8 6 3 2 5"], dir.path());
    assert_eq!(stdout(&o).trim(), "8 3 6 1 5 7 2 4");
    let o = permstat(&["--format", "text", "biject", "--map", "phi1-inv", "8 3 6 1 5 7 2 4"], dir.path());
    assert_eq!(stdout(&o).trim(), "4 7 1 8 6 3 2 5");
    let o = permstat(&["--format", "text", "biject", "--map", "hop:3,4,5", "472589316"], dir.path());
    assert_eq!(stdout(&o).trim(), "4 7 5 2 8 9 1 3 6");
    let o = permstat(&["biject", "--map", "phisz", "--trace", "4 7 1 8 6 3 2 5"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["output"], "5 7 1 4 8 2 6 3");
    assert!(v["trace"]["f"].is_object());
}

#[test]
fn cached_and_fresh_output_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["master", "--which", "second", "--scheme", "case2", "--n", "5"];
    let first = permstat(&args, dir.path());
    assert!(first.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = permstat(&args, dir.path());
    let fresh = permstat(&[&["--no-cache"][..], &args[..]].concat(), dir.path());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, fresh.stdout);
    let a5 = permstat(&["poly", "A", "--n", "5"], dir.path());
    assert_eq!(first.stdout, a5.stdout);
}

#[test]
fn config_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    assert!(!permstat(&["--n-max", "13", "poly", "A", "--n", "2"], dir.path()).status.success());
    assert!(!permstat(&["--n-max", "4", "--symbolic-cap", "5", "poly", "A", "--n", "2"], dir.path()).status.success());
    assert!(!permstat(&["--n-max", "4", "dist", "--n", "5", "--stats", "des"], dir.path()).status.success());
    assert!(!permstat(&["biject", "--map", "nope", "1 2"], dir.path()).status.success());
    assert!(!permstat(&["stats", "1 1"], dir.path()).status.success());
}

#[test]
fn verify_exit_status_and_unknown_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = permstat(&["--n-max", "5", "--symbolic-cap", "4", "verify"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["theorems_failed"], 0);
    let o = permstat(&["verify", "--check", "no-such-check"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn dist_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = permstat(&["--format", "csv", "dist", "--n", "3", "--stats", "des,exc"], dir.path());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("des,exc,count"));
    let total: u64 = lines.map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 6);
}
