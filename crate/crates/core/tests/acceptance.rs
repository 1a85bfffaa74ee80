//! End-to-end acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use permstat::bijections::{phi1, phi_sz, valley_hop_set};
use permstat::stats::ear_set;
use permstat::verify::{check, Report, Verdict, VerifyConfig};
use permstat::{parse, Permutation, RefinedProfile, Stat, StatVector};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn p(s: &str) -> Permutation {
    parse(s).unwrap()
}

fn cfg(n_max: usize, symbolic_cap: usize) -> VerifyConfig {
    VerifyConfig { n_max, symbolic_cap, hop_subset_cap: 6, hop_sample_cap: 7, orbit_cap: 7, quartic_cap: 7 }
}

/// Runs the named checks and requires every one to reach `want`.
fn run_checks(ids: &[&str], config: &VerifyConfig, want: Verdict, limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for id in ids {
        let r: Report = check(id, config).expect("known check");
        if r.verdict != want {
            bad.push(format!("{id}: {} {:?}", r.verdict.label(), r.witnesses.first()));
        }
        parts.push(format!("{id} n<={} {}", r.n_range[1], r.verdict.label()));
    }
    let took = start.elapsed();
    if !bad.is_empty() {
        return fail(bad.join("; "));
    }
    if took > limit {
        return fail(format!("took {:.1?}, limit {limit:?}", took));
    }
    pass(format!("{} [{:.1?}]", parts.join(", "), took))
}

fn worked_examples() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let mut expect = |what: &str, ok: bool| {
        if !ok {
            errs.push(what.to_string());
        }
    };

    let sv = StatVector::of(&p("2 3 1 4 6 8 7 5"));
    let got: Vec<usize> = [Stat::Des2, Stat::Pex, Stat::Pdrop, Stat::Cyc, Stat::Fix, Stat::Pcyc].iter().map(|&s| sv[s]).collect();
    expect("statistics of 23146875", got == [2, 2, 2, 4, 2, 2]);
    expect("Ear of 23147865", ear_set(&p("2 3 1 4 7 8 6 5")) == [3, 8]);

    let sigma = p("4 7 1 8 6 3 2 5");
    let sp = RefinedProfile::of(&sigma);
    expect("(31-2) row", sp.row_in_word_order(&sigma, |v| v.p31_2) == [0, 0, 0, 0, 1, 1, 1, 2]);
    expect("(2-31) row", sp.row_in_word_order(&sigma, |v| v.p2_31) == [2, 1, 0, 0, 0, 0, 0, 0]);

    let tau = phi1(&sigma).unwrap();
    expect("phi1 image", tau == p("8 3 6 1 5 7 2 4"));
    let tp = RefinedProfile::of(&tau);
    expect("nest row after phi1", tp.row_in_word_order(&tau, |v| v.nest) == [0, 1, 1, 0, 2, 0, 1, 0]);
    expect("icross row after phi1", tp.row_in_word_order(&tau, |v| v.icross) == [0, 0, 0, 0, 0, 1, 0, 2]);

    let tau = phi_sz(&sigma).unwrap();
    expect("phi_sz image", tau == p("5 7 1 4 8 2 6 3"));
    let tp = RefinedProfile::of(&tau);
    expect("cross row after phi_sz", tp.row_in_word_order(&tau, |v| v.cross) == [2, 0, 0, 0, 0, 1, 1, 1]);
    expect("nest row after phi_sz", tp.row_in_word_order(&tau, |v| v.nest) == [0, 1, 0, 2, 0, 0, 0, 0]);
    expect("zeta image", tau.zeta() == p("6 3 7 1 5 8 2 4"));

    expect("valley hop", valley_hop_set(&p("4 7 2 5 8 9 3 1 6"), &[3, 4, 5]) == p("4 7 5 2 8 9 1 3 6"));

    let took = start.elapsed();
    if !errs.is_empty() {
        fail(format!("mismatched: {}", errs.join(", ")))
    } else if took >= Duration::from_secs(1) {
        fail(format!("took {took:.1?}, limit 1s"))
    } else {
        pass(format!("six examples exact [{took:.1?}]"))
    }
}

fn main() -> ExitCode {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let unlimited = Duration::from_secs(u64::MAX / 4);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 worked examples", Box::new(worked_examples)),
        (
            "2 A_n interpretations vs continued fraction, n<=7",
            Box::new(move || run_checks(&["a-poly-interpretations"], &cfg(7, 5), Verdict::Pass, minutes(2))),
        ),
        (
            "3 B_n interpretations and EGF, n<=8",
            Box::new(move || run_checks(&["b-poly-interpretations"], &cfg(8, 5), Verdict::Pass, minutes(5))),
        ),
        (
            "4 gamma expansion of D_n, n<=8",
            Box::new(move || run_checks(&["gamma-cyclic", "gamma-schemes"], &cfg(8, 5), Verdict::Pass, unlimited)),
        ),
        (
            "5 phi1 and phi2 transport and bijectivity, n<=8",
            Box::new(move || run_checks(&["des2-transport"], &cfg(8, 5), Verdict::Pass, unlimited)),
        ),
        (
            "6 master identities (symbolic n<=5, schemes n<=7)",
            Box::new(move || {
                run_checks(
                    &["master-first-cf", "master-second-cf", "master-second-dual", "linear-first", "linear-second"],
                    &cfg(7, 5),
                    Verdict::Pass,
                    unlimited,
                )
            }),
        ),
        (
            "7 valley hopping, orbits and gamma via linear statistics, n<=7",
            Box::new(move || {
                run_checks(&["valley-hop-invariance", "orbit-sum", "gamma-linear"], &cfg(7, 5), Verdict::Pass, unlimited)
            }),
        ),
        (
            "8 conjecture ledger, n<=8, and negative results",
            Box::new(move || {
                let held = run_checks(
                    &["des2-cyc-vs-pex-cyc", "des2-ear-symmetry", "des2-cyc-jfraction"],
                    &cfg(8, 5),
                    Verdict::ConjectureHolds,
                    unlimited,
                );
                let neg = check("negative-results", &cfg(8, 5)).unwrap();
                if !held.ok {
                    held
                } else if neg.verdict != Verdict::Pass || neg.witnesses.len() < 2 {
                    fail("negative results not confirmed with witnesses")
                } else {
                    pass(format!("{}; negative-results confirmed with {} witnesses", held.detail, neg.witnesses.len()))
                }
            }),
        ),
        (
            "9 engine cross-validation",
            Box::new(move || run_checks(&["cf-backends", "refined-oracle"], &cfg(7, 5), Verdict::Pass, unlimited)),
        ),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let out = run();
        println!("{} {name}: {}", if out.ok { "PASS" } else { "FAIL" }, out.detail);
        if !out.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
