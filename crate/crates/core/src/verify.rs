//! Every identity and conjecture as a named, runnable check.
//!
//! Each check enumerates `S_n` for `n` up to a configured bound and returns
//! a [`Report`]. Theorems and conjectures live in separate registries; a
//! failing theorem carries a minimal witness (smallest `n`, then the
//! lexicographically least permutation or the polynomial difference).

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::{foata_varphi, orbit_of, phi1, phi1_inverse, phi2, phi_sz, valley_hop_set};
use crate::master::{self, q_cf, LambdaMarker, Scheme, Which};
use crate::perm::{par_first_failure, par_map_reduce, PermFilter, Permutation, HARD_N_MAX};
use crate::poly::{Assignment, Monomial, Poly, VarId};
use crate::refined::{pattern_2_31, pattern_31_2, RefinedProfile};
use crate::series::{egf_b, factorial, gamma_decompose, gamma_jfraction, tvar, Family};
use crate::stats::{
    cycle_classify, ear_set, ear_set_by_lnest, linear_classify, pdrop_set, pex_set, Boundary, Stat, StatVector,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheckId(String),
    #[error("n_max = {n} exceeds the hard limit {limit}")]
    NTooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ConjectureHolds,
    ConjectureFails,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ConjectureHolds => "conjecture-holds",
            Verdict::ConjectureFails => "conjecture-fails",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Permutation { n: usize, perm: String, detail: String },
    PolyDiff { n: usize, label: String, diff: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check_id: String,
    pub n_range: [usize; 2],
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub runtime_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::ConjectureHolds)
    }
}

/// Bounds for the enumerations. `n_max` applies to everything; the caps
/// lower it for the expensive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub n_max: usize,
    /// Fully symbolic master-polynomial comparisons.
    pub symbolic_cap: usize,
    /// Valley hopping over every subset S.
    pub hop_subset_cap: usize,
    /// Valley hopping over a fixed sample of subsets.
    pub hop_sample_cap: usize,
    /// Per-orbit sums.
    pub orbit_cap: usize,
    /// The O(n⁴) refined-statistic oracle.
    pub quartic_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_max: 9, symbolic_cap: 6, hop_subset_cap: 6, hop_sample_cap: 7, orbit_cap: 7, quartic_cap: 7 }
    }
}

impl VerifyConfig {
    pub fn with_n_max(n_max: usize) -> Self {
        VerifyConfig { n_max, ..Default::default() }
    }

    fn cap(&self, c: usize) -> usize {
        self.n_max.min(c)
    }
}

struct Outcome {
    lo: usize,
    hi: usize,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
    failed: bool,
}

impl Outcome {
    fn empty() -> Self {
        Outcome { lo: usize::MAX, hi: 0, witnesses: vec![], notes: vec![], failed: false }
    }

    /// Runs `f` for `n = lo..=hi`, stopping at the first `n` that yields witnesses.
    fn scan(mut self, lo: usize, hi: usize, mut f: impl FnMut(usize) -> Vec<Witness>) -> Self {
        if lo > hi {
            return self;
        }
        self.lo = self.lo.min(lo);
        self.hi = self.hi.max(hi);
        for n in lo..=hi {
            let ws = f(n);
            if !ws.is_empty() {
                self.failed = true;
                self.witnesses.extend(ws);
                break;
            }
        }
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    fn range(&self) -> [usize; 2] {
        if self.lo == usize::MAX {
            [0, 0]
        } else {
            [self.lo, self.hi]
        }
    }
}

type CheckFn = fn(&VerifyConfig) -> Outcome;

pub struct CheckDef {
    pub id: &'static str,
    pub kind: CheckKind,
    pub about: &'static str,
    run: CheckFn,
}

macro_rules! checks {
    ($kind:expr; $($id:literal => $f:ident : $about:literal),* $(,)?) => {
        &[$(CheckDef { id: $id, kind: $kind, about: $about, run: $f }),*]
    };
}

pub static THEOREMS: &[CheckDef] = checks! { CheckKind::Theorem;
    "a-poly-interpretations" => a_poly_interpretations: "A_n as exc/pex/ear/fix, exc/pcyc/ear/fix and exc/pcyc/pex/fix",
    "bistat-symmetry" => bistat_symmetry: "(pex,ear), (ear,pcyc), (pex,pcyc) and their swaps are equidistributed",
    "b-poly-interpretations" => b_poly_interpretations: "B_n as four sums and as n! times the EGF coefficient",
    "exc-pairs" => exc_pairs: "(exc,pcyc), (exc,ear), (des,des2), (exc,pex) are equidistributed",
    "c-poly-interpretations" => c_poly_interpretations: "C_n as six (y, lam) sums",
    "d-poly-interpretations" => d_poly_interpretations: "D_n as three sums over derangements",
    "gamma-cyclic" => gamma_cyclic: "gamma coefficients of D_n as three sums over cdrise-free derangements",
    "gamma-schemes" => gamma_schemes: "gamma substitution schemes on the master sums and fractions",
    "gamma-inverse" => gamma_inverse: "inversion maps cdrise-free exc-k derangements onto cdfall-free drop-k ones",
    "zeta-transport" => zeta_transport: "(drop,pdrop,fix) = (exc,pex,fix) after zeta",
    "foata-transport" => foata_transport: "(des2,des,fmax,rec) after the complemented Foata map, and the complement identity",
    "cycle-type-characterizations" => cycle_type_characterizations: "exc, des, drop, ear, pex and pdrop read off cycle types and refined counts",
    "phi1-pattern-transport" => phi1_pattern_transport: "nest and icross after phi1 equal (31-2) and (2-31)",
    "phi1-roundtrip" => phi1_roundtrip: "the block-building inverse undoes phi1",
    "phi1-type-transport" => phi1_type_transport: "cycle types after phi1 are the linear types, fixed points are Arda",
    "phisz-pattern-transport" => phisz_pattern_transport: "cross and nest after phi_sz equal (31-2) and (2-31)",
    "phisz-stat-transport" => phisz_stat_transport: "(des,des2,fmax) = (drop,pdrop,fix) after phi_sz, set by set",
    "des2-transport" => des2_transport: "phi1 sends (des,des2) to (exc,ear); phi2 sends (des,des2,fmax) to (exc,pex,fix) bijectively",
    "master-first-cf" => master_first_cf: "first master sum equals its fraction, symbolically and under schemes",
    "master-second-cf" => master_second_cf: "second master sum equals its fraction, symbolically and under schemes",
    "master-second-dual" => master_second_dual: "the dual sum equals the second master sum",
    "linear-first" => linear_first: "first linear reading equals the first master sum",
    "linear-second" => linear_second: "second linear reading equals the first master sum",
    "linear-a" => linear_a: "A_n via asc-fmax, pval, ppeak, fmax",
    "gamma-linear" => gamma_linear: "D_n and its gamma coefficients via fmax-free permutations, and the fmax-graded expansion",
    "valley-hop-invariance" => valley_hop_invariance: "(peak,val,fmax,ppeak,pval) is invariant under valley hopping",
    "orbit-sum" => orbit_sum: "each valley-hopping orbit sums to t^val (1+t)^(dasc-fmax) of its representative",
    "pseudo-nesting-balance" => pseudo_nesting_balance: "upper and lower pseudo-nestings agree",
    "cf-backends" => cf_backends: "Motzkin-path and nested expansions agree for every family",
    "refined-oracle" => refined_oracle: "O(n^2) refined statistics match the quadruple count",
    "negative-results" => negative_results: "(des2,fix) vs (pex,fix) differ on S_4; (des2,pex) is asymmetric on S_6",
};

pub static CONJECTURES: &[CheckDef] = checks! { CheckKind::Conjecture;
    "des2-cyc-vs-pex-cyc" => des2_cyc_vs_pex_cyc: "(des2,cyc) and (pex,cyc) are equidistributed",
    "des2-ear-symmetry" => des2_ear_symmetry: "the (des2,ear) distribution is symmetric",
    "des2-cyc-jfraction" => des2_cyc_jfraction: "y^des2 lam^cyc has the fraction gamma_n = lam+2n, beta_n = (lam+n-1)(y+n-1)",
};

pub fn all_checks() -> impl Iterator<Item = &'static CheckDef> {
    THEOREMS.iter().chain(CONJECTURES.iter())
}

fn find(id: &str) -> Result<&'static CheckDef, VerifyError> {
    all_checks().find(|c| c.id == id).ok_or_else(|| VerifyError::UnknownCheckId(id.to_string()))
}

fn validate(cfg: &VerifyConfig) -> Result<(), VerifyError> {
    if cfg.n_max > HARD_N_MAX {
        return Err(VerifyError::NTooLarge { n: cfg.n_max, limit: HARD_N_MAX });
    }
    Ok(())
}

fn execute(def: &CheckDef, cfg: &VerifyConfig) -> Report {
    let start = Instant::now();
    let out = (def.run)(cfg);
    let verdict = match (def.kind, out.failed) {
        (CheckKind::Theorem, false) => Verdict::Pass,
        (CheckKind::Theorem, true) => Verdict::Fail,
        (CheckKind::Conjecture, false) => Verdict::ConjectureHolds,
        (CheckKind::Conjecture, true) => Verdict::ConjectureFails,
    };
    Report {
        check_id: def.id.to_string(),
        n_range: out.range(),
        verdict,
        witnesses: out.witnesses,
        notes: out.notes,
        runtime_ms: start.elapsed().as_millis(),
    }
}

pub fn check(id: &str, cfg: &VerifyConfig) -> Result<Report, VerifyError> {
    validate(cfg)?;
    Ok(execute(find(id)?, cfg))
}

/// Every check, theorems first, in registry order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<Report>, VerifyError> {
    validate(cfg)?;
    let defs: Vec<&CheckDef> = all_checks().collect();
    Ok(defs.par_iter().map(|d| execute(d, cfg)).collect())
}

pub fn any_theorem_failed(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.verdict == Verdict::Fail)
}

#[derive(Debug, Clone, Serialize)]
pub struct Digest {
    pub theorems_passed: usize,
    pub theorems_failed: usize,
    pub conjectures_holding: usize,
    pub conjectures_failing: usize,
    pub not_passing: Vec<String>,
    pub reports: Vec<Report>,
}

pub fn digest(reports: &[Report]) -> Digest {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    Digest {
        theorems_passed: count(Verdict::Pass),
        theorems_failed: count(Verdict::Fail),
        conjectures_holding: count(Verdict::ConjectureHolds),
        conjectures_failing: count(Verdict::ConjectureFails),
        not_passing: reports.iter().filter(|r| !r.passed()).map(|r| r.check_id.clone()).collect(),
        reports: reports.to_vec(),
    }
}

pub fn summarize_text(reports: &[Report]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(
            s,
            "{:<17} {:<30} n={}..{} {:>7} ms",
            r.verdict.label(),
            r.check_id,
            r.n_range[0],
            r.n_range[1],
            r.runtime_ms
        );
        for note in &r.notes {
            let _ = writeln!(s, "    note: {note}");
        }
        for w in &r.witnesses {
            match w {
                Witness::Permutation { n, perm, detail } => {
                    let _ = writeln!(s, "    witness n={n}: [{perm}] {detail}");
                }
                Witness::PolyDiff { n, label, diff } => {
                    let _ = writeln!(s, "    witness n={n}: {label}: difference {diff}");
                }
            }
        }
    }
    let d = digest(reports);
    let _ = writeln!(
        s,
        "theorems: {} pass, {} fail; conjectures: {} hold, {} fail",
        d.theorems_passed, d.theorems_failed, d.conjectures_holding, d.conjectures_failing
    );
    s
}

pub fn summarize_json(reports: &[Report]) -> serde_json::Value {
    serde_json::to_value(digest(reports)).expect("digest serializes")
}

// ---------------------------------------------------------------------------
// enumeration helpers

fn family(f: Family, n: usize) -> Poly {
    f.poly_with_limit(n, HARD_N_MAX).expect("n within the hard limit")
}

/// Per-form tallies of exponent vectors.
fn tally_forms<F>(n: usize, filter: PermFilter, forms: usize, f: F) -> Vec<HashMap<Vec<usize>, u64>>
where
    F: Fn(&Permutation) -> Vec<Vec<usize>> + Sync + Send,
{
    par_map_reduce(
        n,
        filter,
        || vec![HashMap::new(); forms],
        |mut acc, p| {
            for (slot, key) in acc.iter_mut().zip(f(p)) {
                *slot.entry(key).or_insert(0) += 1;
            }
            acc
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                for (k, c) in y {
                    *x.entry(k).or_insert(0) += c;
                }
            }
            a
        },
    )
}

fn to_poly(vars: &[&str], tally: HashMap<Vec<usize>, u64>) -> Poly {
    let ids: Vec<VarId> = vars.iter().map(|v| VarId::new(v).expect("valid name")).collect();
    Poly::from_counts(tally.into_iter().map(|(k, c)| {
        let pairs = ids.iter().copied().zip(k.into_iter().map(|e| e as u32)).collect();
        (Monomial::from_pairs(pairs), c)
    }))
}

/// A generating polynomial: each variable raised to a sum of statistics.
type Form = &'static [(&'static str, &'static [Stat])];

fn form_label(form: Form) -> String {
    form.iter()
        .map(|(v, ss)| format!("{v}^{}", ss.iter().map(|s| s.name()).collect::<Vec<_>>().join("+")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn stat_polys(n: usize, filter: PermFilter, forms: &[Form]) -> Vec<Poly> {
    let tallies = tally_forms(n, filter, forms.len(), |p| {
        let sv = StatVector::of(p);
        forms.iter().map(|form| form.iter().map(|(_, ss)| ss.iter().map(|&s| sv[s]).sum()).collect()).collect()
    });
    forms
        .iter()
        .zip(tallies)
        .map(|(form, t)| to_poly(&form.iter().map(|(v, _)| *v).collect::<Vec<_>>(), t))
        .collect()
}

fn poly_diff(n: usize, label: impl Into<String>, left: &Poly, right: &Poly) -> Vec<Witness> {
    if left == right {
        vec![]
    } else {
        vec![Witness::PolyDiff { n, label: label.into(), diff: (left - right).to_string() }]
    }
}

/// Each form's polynomial against `target`.
fn forms_equal(n: usize, filter: PermFilter, forms: &[Form], target: &Poly, target_name: &str) -> Vec<Witness> {
    stat_polys(n, filter, forms)
        .iter()
        .zip(forms)
        .flat_map(|(p, f)| poly_diff(n, format!("{} vs {target_name}", form_label(f)), p, target))
        .collect()
}

/// Lexicographically least permutation for which `bad` reports a problem.
fn first_bad<F>(n: usize, filter: PermFilter, bad: F) -> Vec<Witness>
where
    F: Fn(&Permutation) -> Option<String> + Sync + Send,
{
    match par_first_failure(n, filter, |p| bad(p).is_none()) {
        None => vec![],
        Some(p) => {
            let detail = bad(&p).unwrap_or_default();
            vec![Witness::Permutation { n, perm: p.to_string(), detail }]
        }
    }
}

fn mismatch<T: PartialEq + std::fmt::Debug>(what: &str, left: T, right: T) -> Option<String> {
    (left != right).then(|| format!("{what}: {left:?} vs {right:?}"))
}

fn stats_of(sv: &StatVector, ss: &[Stat]) -> Vec<usize> {
    ss.iter().map(|&s| sv[s]).collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

use Stat::*;

// ---------------------------------------------------------------------------
// distribution identities

fn a_poly_interpretations(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 3] = [
        &[("t", &[Exc]), ("lam", &[Pex]), ("y", &[Ear]), ("w", &[Fix])],
        &[("t", &[Exc]), ("lam", &[Pcyc]), ("y", &[Ear]), ("w", &[Fix])],
        &[("t", &[Exc]), ("lam", &[Pcyc]), ("y", &[Pex]), ("w", &[Fix])],
    ];
    Outcome::empty().scan(0, cfg.n_max, |n| forms_equal(n, PermFilter::All, &FORMS, &family(Family::A, n), "A_n"))
}

fn equidistributed(n: usize, filter: PermFilter, forms: &[Form]) -> Vec<Witness> {
    let polys = stat_polys(n, filter, forms);
    polys[1..]
        .iter()
        .zip(&forms[1..])
        .flat_map(|(p, f)| poly_diff(n, format!("{} vs {}", form_label(f), form_label(forms[0])), p, &polys[0]))
        .collect()
}

fn bistat_symmetry(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 6] = [
        &[("x", &[Pex]), ("y", &[Ear])],
        &[("x", &[Ear]), ("y", &[Pex])],
        &[("x", &[Ear]), ("y", &[Pcyc])],
        &[("x", &[Pcyc]), ("y", &[Ear])],
        &[("x", &[Pex]), ("y", &[Pcyc])],
        &[("x", &[Pcyc]), ("y", &[Pex])],
    ];
    Outcome::empty().scan(0, cfg.n_max, |n| equidistributed(n, PermFilter::All, &FORMS))
}

fn b_poly_interpretations(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 4] = [
        &[("t", &[Exc]), ("lam", &[Pcyc]), ("w", &[Fix])],
        &[("t", &[Exc]), ("lam", &[Ear]), ("w", &[Fix])],
        &[("t", &[Exc]), ("lam", &[Pex]), ("w", &[Fix])],
        &[("t", &[Des]), ("lam", &[Des2]), ("w", &[Fmax])],
    ];
    let egf = egf_b(cfg.n_max).expect("order within limit");
    Outcome::empty().scan(0, cfg.n_max, |n| {
        let b = family(Family::B, n);
        let mut ws = forms_equal(n, PermFilter::All, &FORMS, &b, "B_n");
        let from_egf = egf.coeff(n).scale(&factorial(n).into());
        ws.extend(poly_diff(n, "n! [z^n] egf vs B_n", &from_egf, &b));
        ws
    })
}

fn exc_pairs(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 4] = [
        &[("x", &[Exc]), ("y", &[Pcyc])],
        &[("x", &[Exc]), ("y", &[Ear])],
        &[("x", &[Des]), ("y", &[Des2])],
        &[("x", &[Exc]), ("y", &[Pex])],
    ];
    Outcome::empty().scan(0, cfg.n_max, |n| equidistributed(n, PermFilter::All, &FORMS))
}

fn c_poly_interpretations(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 6] = [
        &[("y", &[Pex]), ("lam", &[Ear, Fix])],
        &[("y", &[Ear]), ("lam", &[Pex, Fix])],
        &[("y", &[Pcyc]), ("lam", &[Ear, Fix])],
        &[("y", &[Ear]), ("lam", &[Cyc])],
        &[("y", &[Pcyc]), ("lam", &[Pex, Fix])],
        &[("y", &[Pex]), ("lam", &[Cyc])],
    ];
    Outcome::empty().scan(0, cfg.n_max, |n| forms_equal(n, PermFilter::All, &FORMS, &family(Family::C, n), "C_n"))
}

fn d_poly_interpretations(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 3] = [
        &[("t", &[Exc]), ("lam", &[Pex]), ("y", &[Ear])],
        &[("t", &[Exc]), ("lam", &[Cyc]), ("y", &[Ear])],
        &[("t", &[Exc]), ("lam", &[Cyc]), ("y", &[Pex])],
    ];
    Outcome::empty()
        .scan(0, cfg.n_max, |n| forms_equal(n, PermFilter::Derangement, &FORMS, &family(Family::D, n), "D_n"))
}

/// `Σ_k γ_{n,k} t^k` from the gamma expansion of `D_n`.
fn gamma_generating(n: usize) -> Result<Poly, Vec<Witness>> {
    let tv = tvar();
    let gammas = gamma_decompose(&family(Family::D, n), n, tv).map_err(|e| {
        vec![Witness::PolyDiff { n, label: "D_n is not gamma-expressible".into(), diff: e.to_string() }]
    })?;
    if let Some((k, _)) = gammas.iter().enumerate().find(|(_, g)| !g.has_integer_coefficients(true)) {
        return Err(vec![Witness::PolyDiff {
            n,
            label: format!("gamma coefficient {k} is not a nonnegative integer polynomial"),
            diff: gammas[k].to_string(),
        }]);
    }
    Ok(gammas.into_iter().enumerate().map(|(k, g)| g * Poly::var(tv).pow(k as u32)).sum())
}

fn gamma_cyclic(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 3] = [
        &[("t", &[Exc]), ("lam", &[Pex]), ("y", &[Ear])],
        &[("t", &[Exc]), ("lam", &[Cyc]), ("y", &[Ear])],
        &[("t", &[Exc]), ("lam", &[Cyc]), ("y", &[Pex])],
    ];
    let cf = gamma_jfraction().expand_motzkin(cfg.n_max);
    Outcome::empty().scan(0, cfg.n_max, |n| {
        let g = match gamma_generating(n) {
            Ok(g) => g,
            Err(ws) => return ws,
        };
        let mut ws = forms_equal(n, PermFilter::DerangementNoCdrise, &FORMS, &g, "sum_k gamma_k t^k");
        ws.extend(poly_diff(n, "gamma fraction vs gamma expansion", cf.coeff(n), &g));
        ws
    })
}

fn gamma_schemes(cfg: &VerifyConfig) -> Outcome {
    let schemes = [(Which::First, Scheme::Gamma1), (Which::Second, Scheme::Gamma2), (Which::Dual, Scheme::Gamma3)];
    let cfs: Vec<_> = schemes.iter().map(|&(w, s)| q_cf(w, s, cfg.n_max)).collect();
    Outcome::empty().scan(0, cfg.n_max, |n| {
        let g = match gamma_generating(n) {
            Ok(g) => g,
            Err(ws) => return ws,
        };
        let mut ws = vec![];
        for (&(which, scheme), cf) in schemes.iter().zip(&cfs) {
            match master::master_with(n, which, scheme) {
                Ok(q) => {
                    ws.extend(poly_diff(n, format!("{which} sum under {scheme} vs gamma expansion"), &q, &g));
                    ws.extend(poly_diff(n, format!("{which} fraction under {scheme} vs gamma expansion"), cf.coeff(n), &g));
                }
                Err(e) => ws.push(Witness::PolyDiff { n, label: format!("{which}/{scheme}"), diff: e.to_string() }),
            }
        }
        ws
    })
}

fn gamma_inverse(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty()
        .scan(0, cfg.n_max, |n| {
            first_bad(n, PermFilter::DerangementNoCdrise, |p| {
                let q = p.inverse();
                let (sp, sq) = (StatVector::of(p), StatVector::of(&q));
                if !q.is_derangement() {
                    return Some("inverse has a fixed point".into());
                }
                mismatch("(exc, 0) vs (drop, cdfall) of the inverse", (sp[Exc], 0), (sq[Drop], sq[Cdfall]))
            })
        })
        .scan(0, cfg.n_max, |n| {
            // counts by k on both sides, independently enumerated
            let counts = par_map_reduce(
                n,
                PermFilter::Derangement,
                || (vec![0u64; n + 1], vec![0u64; n + 1]),
                |(mut a, mut b), p| {
                    let ct = cycle_classify(p);
                    if ct.cdrise.is_empty() {
                        a[ct.cval.len() + ct.cdrise.len()] += 1;
                    }
                    if ct.cdfall.is_empty() {
                        b[ct.cpeak.len() + ct.cdfall.len()] += 1;
                    }
                    (a, b)
                },
                |(mut a, mut b), (c, d)| {
                    a.iter_mut().zip(c).for_each(|(x, y)| *x += y);
                    b.iter_mut().zip(d).for_each(|(x, y)| *x += y);
                    (a, b)
                },
            );
            if counts.0 == counts.1 {
                vec![]
            } else {
                vec![Witness::PolyDiff {
                    n,
                    label: "cdrise-free by exc vs cdfall-free by drop".into(),
                    diff: format!("{:?} vs {:?}", counts.0, counts.1),
                }]
            }
        })
}

// ---------------------------------------------------------------------------
// per-permutation transport identities

fn zeta_transport(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| {
            let (a, b) = (StatVector::of(p), StatVector::of(&p.zeta()));
            mismatch("(drop,pdrop,fix) vs (exc,pex,fix) of zeta", stats_of(&a, &[Drop, Pdrop, Fix]), stats_of(&b, &[Exc, Pex, Fix]))
        })
    })
}

fn foata_transport(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| {
            let sp = StatVector::of(p);
            let sf = StatVector::of(&foata_varphi(p));
            let sc = StatVector::of(&p.complement());
            mismatch(
                "(des2,des,fmax,rec) of the image vs (pcyc,exc,fix,cyc)",
                stats_of(&sf, &[Des2, Des, Fmax, Rec]),
                stats_of(&sp, &[Pcyc, Exc, Fix, Cyc]),
            )
            .or_else(|| mismatch("des2 vs rec - fmax", sp[Des2], sp[Rec] - sp[Fmax]))
            .or_else(|| mismatch("pcyc vs cyc - fix", sp[Pcyc], sp[Cyc] - sp[Fix]))
            .or_else(|| {
                mismatch(
                    "(des2,des,fmax,rec) vs (asc2,asc,fmin,lrm) of the complement",
                    stats_of(&sp, &[Des2, Des, Fmax, Rec]),
                    stats_of(&sc, &[Asc2, Asc, Fmin, Lrm]),
                )
            })
        })
    })
}

fn cycle_type_characterizations(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| {
            let sv = StatVector::of(p);
            let inv = StatVector::of(&p.inverse());
            let ct = cycle_classify(p);
            let prof = RefinedProfile::of(p);
            let pex_by_ucross: Vec<usize> = ct.cval.iter().copied().filter(|&i| prof.at(i).ucross == 0).collect();
            let pdrop_by_lcross: Vec<usize> = ct.cpeak.iter().copied().filter(|&i| prof.at(i).lcross == 0).collect();
            mismatch("exc vs cval + cdrise", sv[Exc], sv[Cval] + sv[Cdrise])
                .or_else(|| mismatch("drop vs cpeak + cdfall", sv[Drop], sv[Cpeak] + sv[Cdfall]))
                .or_else(|| mismatch("exc vs drop of the inverse", sv[Exc], inv[Drop]))
                .or_else(|| mismatch("des vs peak + ddes", sv[Des], sv[Peak] + sv[Ddes]))
                .or_else(|| mismatch("ear by records vs ear by lnest", ear_set(p), ear_set_by_lnest(p)))
                .or_else(|| mismatch("pex vs cval with ucross 0", pex_set(p), pex_by_ucross))
                .or_else(|| mismatch("pdrop vs cpeak with lcross 0", pdrop_set(p), pdrop_by_lcross))
        })
    })
}

fn phi1_pattern_transport(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| {
            let q = match phi1(p) {
                Ok(q) => q,
                Err(e) => return Some(e.to_string()),
            };
            let prof = RefinedProfile::of(&q);
            let nest: Vec<usize> = (1..=n).map(|i| prof.at(i).nest).collect();
            let icross: Vec<usize> = (1..=n).map(|i| prof.at(i).icross).collect();
            mismatch("nest of the image vs (31-2)", nest, pattern_31_2(p))
                .or_else(|| mismatch("icross of the image vs (2-31)", icross, pattern_2_31(p)))
        })
    })
}

fn phi1_roundtrip(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| match phi1(p).and_then(|q| phi1_inverse(&q)) {
            Ok(back) => mismatch("inverse of the image", back.word(), p.word()),
            Err(e) => Some(e.to_string()),
        })
    })
}

fn phi1_type_transport(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| {
            let q = match phi1(p) {
                Ok(q) => q,
                Err(e) => return Some(e.to_string()),
            };
            let ct = cycle_classify(&q);
            let lin = linear_classify(p, Boundary::ZeroInf);
            let rest = sorted(ct.cdfall.iter().chain(&ct.fix).copied().collect());
            mismatch(
                "(Cpeak,Cval,Cdrise,Cdfall+Fix) vs (Peak,Valley,Ddes,Dasc)",
                (&ct.cpeak, &ct.cval, &ct.cdrise, &rest),
                (&lin.peak, &lin.valley, &lin.ddes, &lin.dasc),
            )
            .or_else(|| mismatch("Fix of the image vs Arda", ct.fix.as_slice(), lin.arda().unwrap()))
        })
    })
}

fn phisz_pattern_transport(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| {
            let q = match phi_sz(p) {
                Ok(q) => q,
                Err(e) => return Some(e.to_string()),
            };
            let prof = RefinedProfile::of(&q);
            let cross: Vec<usize> = (1..=n).map(|i| prof.at(i).cross).collect();
            let nest: Vec<usize> = (1..=n).map(|i| prof.at(i).nest).collect();
            mismatch("cross of the image vs (31-2)", cross, pattern_31_2(p))
                .or_else(|| mismatch("nest of the image vs (2-31)", nest, pattern_2_31(p)))
        })
    })
}

fn phisz_stat_transport(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| {
            let q = match phi_sz(p) {
                Ok(q) => q,
                Err(e) => return Some(e.to_string()),
            };
            let (sp, sq) = (StatVector::of(p), StatVector::of(&q));
            let ct = cycle_classify(&q);
            let lin = linear_classify(p, Boundary::ZeroInf);
            let rest = sorted(ct.cdrise.iter().chain(&ct.fix).copied().collect());
            mismatch("(des,des2,fmax) vs (drop,pdrop,fix) of the image", stats_of(&sp, &[Des, Des2, Fmax]), stats_of(&sq, &[Drop, Pdrop, Fix]))
                .or_else(|| {
                    mismatch(
                        "(Cval,Cpeak,Cdfall,Cdrise+Fix,Fix) vs (Valley,Peak,Ddes,Dasc,Fmax)",
                        (&ct.cval, &ct.cpeak, &ct.cdfall, &rest, ct.fix.as_slice()),
                        (&lin.valley, &lin.peak, &lin.ddes, &lin.dasc, lin.fmax().unwrap()),
                    )
                })
        })
    })
}

fn des2_transport(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty()
        .scan(0, cfg.n_max, |n| {
            first_bad(n, PermFilter::All, |p| {
                let (q1, q2) = match (phi1(p), phi2(p)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => return Some(e.to_string()),
                };
                let (s, s1, s2) = (StatVector::of(p), StatVector::of(&q1), StatVector::of(&q2));
                mismatch("(des,des2) vs (exc,ear) after phi1", stats_of(&s, &[Des, Des2]), stats_of(&s1, &[Exc, Ear]))
                    .or_else(|| {
                        mismatch(
                            "(des,des2,fmax) vs (exc,pex,fix) after phi2",
                            stats_of(&s, &[Des, Des2, Fmax]),
                            stats_of(&s2, &[Exc, Pex, Fix]),
                        )
                    })
                    .or_else(|| phi1_inverse(&q1).ok().filter(|b| b == p).is_none().then(|| "phi1 does not round-trip".into()))
            })
        })
        .scan(0, cfg.n_max, |n| {
            let mut image: Vec<Permutation> =
                par_map_reduce(n, PermFilter::All, Vec::new, |mut v, p| {
                    v.push(phi2(p).expect("phi2 is total"));
                    v
                }, |mut a, b| {
                    a.extend(b);
                    a
                });
            image.par_sort_unstable();
            image.dedup();
            let expected = (1..=n).product::<usize>();
            if image.len() == expected {
                vec![]
            } else {
                vec![Witness::PolyDiff {
                    n,
                    label: "phi2 image size vs n!".into(),
                    diff: format!("{} vs {expected}", image.len()),
                }]
            }
        })
}

// ---------------------------------------------------------------------------
// master polynomials

fn master_vs(n: usize, label: &str, left: Result<Poly, master::MasterError>, right: &Poly) -> Vec<Witness> {
    match left {
        Ok(l) => poly_diff(n, label, &l, right),
        Err(master::MasterError::NegativeIndex { which, perm, value }) => vec![Witness::Permutation {
            n,
            perm: perm.to_string(),
            detail: format!("{which}: value {value} needs a negative index"),
        }],
        Err(e) => vec![Witness::PolyDiff { n, label: label.into(), diff: e.to_string() }],
    }
}

fn symbolic(n: usize, which: Which) -> Result<Poly, master::MasterError> {
    master::master(n, which, LambdaMarker::Cycles, &Assignment::new())
}

fn master_cf_check(cfg: &VerifyConfig, which: Which, schemes: &[Scheme]) -> Outcome {
    let cap = cfg.cap(cfg.symbolic_cap);
    let sym = q_cf(which, Scheme::Symbolic, cap);
    let mut out = Outcome::empty().scan(0, cap, |n| master_vs(n, &format!("symbolic {which} sum vs fraction"), symbolic(n, which), sym.coeff(n)));
    for &s in schemes {
        let cf = q_cf(which, s, cfg.n_max);
        out = out.scan(0, cfg.n_max, |n| {
            master_vs(n, &format!("{which} sum under {s} vs fraction"), master::master_with(n, which, s), cf.coeff(n))
        });
    }
    out
}

fn master_first_cf(cfg: &VerifyConfig) -> Outcome {
    master_cf_check(cfg, Which::First, &[Scheme::Case1, Scheme::Gamma1, Scheme::Case1Bis]).scan(0, cfg.n_max, |n| {
        master_vs(n, "first sum under case1 vs A_n", master::q_first(n, Scheme::Case1), &family(Family::A, n))
    })
}

fn master_second_cf(cfg: &VerifyConfig) -> Outcome {
    master_cf_check(cfg, Which::Second, &[Scheme::Case2, Scheme::Gamma2]).scan(0, cfg.n_max, |n| {
        master_vs(n, "second sum under case2 vs A_n", master::master_with(n, Which::Second, Scheme::Case2), &family(Family::A, n))
    })
}

fn master_second_dual(cfg: &VerifyConfig) -> Outcome {
    let cap = cfg.cap(cfg.symbolic_cap);
    Outcome::empty()
        .scan(0, cap, |n| match symbolic(n, Which::Second) {
            Ok(second) => master_vs(n, "symbolic dual vs second", symbolic(n, Which::Dual), &second),
            Err(e) => vec![Witness::PolyDiff { n, label: "second".into(), diff: e.to_string() }],
        })
        .scan(0, cfg.n_max, |n| {
            master_vs(n, "dual under case3 vs A_n", master::master_with(n, Which::Dual, Scheme::Case3), &family(Family::A, n))
        })
}

fn linear_check(cfg: &VerifyConfig, which: Which) -> Outcome {
    let cap = cfg.cap(cfg.symbolic_cap);
    Outcome::empty()
        .scan(0, cap, |n| match symbolic(n, Which::First) {
            Ok(first) => master_vs(n, &format!("symbolic {which} vs first"), symbolic(n, which), &first),
            Err(e) => vec![Witness::PolyDiff { n, label: "first".into(), diff: e.to_string() }],
        })
        .scan(0, cfg.n_max, |n| {
            master_vs(n, &format!("{which} under case1 vs A_n"), master::master_with(n, which, Scheme::Case1), &family(Family::A, n))
        })
        .scan(0, cfg.n_max, |n| match master::q_first(n, Scheme::Case1Bis) {
            Ok(first) => master_vs(n, &format!("{which} vs first under case1bis"), master::master_with(n, which, Scheme::Case1Bis), &first),
            Err(e) => vec![Witness::PolyDiff { n, label: "first".into(), diff: e.to_string() }],
        })
}

fn linear_first(cfg: &VerifyConfig) -> Outcome {
    linear_check(cfg, Which::Linear1)
}

fn linear_second(cfg: &VerifyConfig) -> Outcome {
    linear_check(cfg, Which::Linear2)
}

// ---------------------------------------------------------------------------
// linear statistics and valley hopping

/// (fmax, ddes, des, asc including the right boundary, pval, ppeak).
fn linear_key(p: &Permutation) -> [usize; 6] {
    let lin = linear_classify(p, Boundary::ZeroInf);
    let (k31, k231) = (pattern_31_2(p), pattern_2_31(p));
    let pval = lin.valley.iter().filter(|&&x| k31[x - 1] == 0).count();
    let ppeak = lin.peak.iter().filter(|&&x| k231[x - 1] == 0).count();
    let des = p.word().windows(2).filter(|w| w[0] > w[1]).count();
    [lin.fmax().unwrap().len(), lin.ddes.len(), des, lin.asc(), pval, ppeak]
}

fn linear_a(cfg: &VerifyConfig) -> Outcome {
    // the plain ascent count can fall below fmax; find where, for the notes
    let mut plain_fails = None;
    for n in 1..=cfg.n_max {
        let bad = par_first_failure(n, PermFilter::All, |p| {
            let sv = StatVector::of(p);
            sv[Asc] >= sv[Fmax]
        });
        if let Some(p) = bad {
            plain_fails = Some((n, p));
            break;
        }
    }
    let mut out = Outcome::empty().scan(0, cfg.n_max, |n| {
        let tallies = tally_forms(n, PermFilter::All, 1, |p| {
            let [fmax, _, _, asc, pval, ppeak] = linear_key(p);
            vec![vec![asc - fmax, pval, ppeak, fmax]]
        });
        let lhs = to_poly(&["t", "lam", "y", "w"], tallies.into_iter().next().unwrap());
        poly_diff(n, "t^(asc-fmax) lam^pval y^ppeak w^fmax vs A_n", &lhs, &family(Family::A, n))
    });
    out = out.note("asc counts letters followed by a larger one, with a larger right boundary (valley + dasc)");
    if let Some((n, p)) = plain_fails {
        out = out.note(format!("the plain ascent count gives asc < fmax already at n={n}, e.g. [{p}]"));
    }
    out
}

fn gamma_linear(cfg: &VerifyConfig) -> Outcome {
    let tv = tvar();
    let one_plus_t = Poly::one() + Poly::var(tv);
    Outcome::empty().scan(0, cfg.n_max, |n| {
        let d = family(Family::D, n);
        let g = match gamma_generating(n) {
            Ok(g) => g,
            Err(ws) => return ws,
        };
        let tally = tally_forms(n, PermFilter::All, 1, |p| vec![linear_key(p).to_vec()]).pop().unwrap();
        let (t, lam, y) = (VarId::new("t").unwrap(), VarId::new("lam").unwrap(), VarId::new("y").unwrap());
        let mono = |pairs: Vec<(VarId, usize)>| Monomial::from_pairs(pairs.into_iter().map(|(v, e)| (v, e as u32)).collect());
        let mut lhs = vec![Poly::zero(); n + 1];
        let mut rhs = vec![Poly::zero(); n + 1];
        let mut linear_d = Poly::zero();
        let mut star0 = Poly::zero();
        for (key, count) in tally {
            let [j, ddes, des, asc, pval, ppeak] = key[..] else { unreachable!() };
            let c = Poly::int(count as i64);
            let lam_y = Poly::term(mono(vec![(lam, pval), (y, ppeak)]), num_traits::One::one());
            lhs[j] = &lhs[j] + &(&c * &lam_y * Poly::var(t).pow((asc - j) as u32));
            if j == 0 {
                linear_d = &linear_d + &(&c * &lam_y * Poly::var(t).pow(asc as u32));
            }
            if ddes == 0 {
                let basis = Poly::var(t).pow(des as u32) * one_plus_t.pow((n - j - 2 * des) as u32);
                rhs[j] = &rhs[j] + &(&c * &lam_y * basis);
                if j == 0 {
                    star0 = &star0 + &(&c * &lam_y * Poly::var(t).pow(des as u32));
                }
            }
        }
        let mut ws = poly_diff(n, "fmax-free t^asc lam^pval y^ppeak vs D_n", &linear_d, &d);
        ws.extend(poly_diff(n, "fmax-free, ddes-free lam^pval y^ppeak by des vs gamma coefficients", &star0, &g));
        for j in 0..=n {
            ws.extend(poly_diff(n, format!("fmax = {j}: graded sum vs gamma-type expansion"), &lhs[j], &rhs[j]));
        }
        ws
    })
}

fn quintuple(p: &Permutation) -> [usize; 5] {
    let [fmax, _, _, _, pval, ppeak] = linear_key(p);
    let lin = linear_classify(p, Boundary::ZeroInf);
    [lin.peak.len(), lin.valley.len(), fmax, ppeak, pval]
}

/// All subsets of [n], or a fixed sample: empty, full, singletons, pairs and their complements.
fn hop_subsets(n: usize, all: bool) -> Vec<Vec<usize>> {
    if all {
        return (0u32..1 << n).map(|mask| (1..=n).filter(|&x| mask & (1 << (x - 1)) != 0).collect()).collect();
    }
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    out.insert(vec![]);
    out.insert((1..=n).collect());
    for a in 1..=n {
        for b in a..=n {
            let s: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
            out.insert((1..=n).filter(|x| !s.contains(x)).collect());
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

fn valley_hop_invariance(cfg: &VerifyConfig) -> Outcome {
    let hi = cfg.cap(cfg.hop_subset_cap.max(cfg.hop_sample_cap));
    Outcome::empty()
        .scan(0, hi, |n| {
            let subsets = hop_subsets(n, n <= cfg.hop_subset_cap);
            first_bad(n, PermFilter::All, |p| {
                let q = quintuple(p);
                subsets.iter().find_map(|s| {
                    let h = valley_hop_set(p, s);
                    mismatch(&format!("(peak,val,fmax,ppeak,pval) after hopping {s:?} to [{h}]"), q, quintuple(&h))
                })
            })
        })
        .note(format!(
            "all subsets up to n={}, sampled subsets beyond",
            cfg.cap(cfg.hop_subset_cap)
        ))
}

fn orbit_sum(cfg: &VerifyConfig) -> Outcome {
    let tv = tvar();
    let one_plus_t = Poly::one() + Poly::var(tv);
    Outcome::empty().scan(0, cfg.cap(cfg.orbit_cap), |n| {
        let bad = par_first_failure(n, PermFilter::All, |p| {
            let lin = linear_classify(p, Boundary::ZeroNPlusOne);
            if !lin.ddes.is_empty() {
                return true;
            }
            let orbit = orbit_of(p);
            if &orbit.representative != p {
                return false;
            }
            let sum: Poly = orbit
                .members
                .iter()
                .map(|m| {
                    let l = linear_classify(m, Boundary::ZeroInf);
                    Poly::var(tv).pow((l.asc() - l.fmax().unwrap().len()) as u32)
                })
                .sum();
            let fmax = lin.fmax().unwrap().len();
            let expected = Poly::var(tv).pow(lin.valley.len() as u32) * one_plus_t.pow((lin.dasc.len() - fmax) as u32);
            sum == expected
        });
        if let Some(p) = bad {
            return vec![Witness::Permutation { n, perm: p.to_string(), detail: "orbit sum differs".into() }];
        }
        let total = par_map_reduce(
            n,
            PermFilter::All,
            || 0usize,
            |acc, p| {
                if linear_classify(p, Boundary::ZeroNPlusOne).ddes.is_empty() {
                    acc + orbit_of(p).members.len()
                } else {
                    acc
                }
            },
            |a, b| a + b,
        );
        let expected = (1..=n).product::<usize>();
        if total == expected {
            vec![]
        } else {
            vec![Witness::PolyDiff { n, label: "orbit sizes vs n!".into(), diff: format!("{total} vs {expected}") }]
        }
    })
}

fn pseudo_nesting_balance(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.n_max, |n| {
        first_bad(n, PermFilter::All, |p| mismatch("upsnest vs lpsnest", RefinedProfile::upsnest(p), RefinedProfile::lpsnest(p)))
    })
}

fn cf_backends(_cfg: &VerifyConfig) -> Outcome {
    const ORDER: usize = 10;
    Outcome::empty().scan(ORDER, ORDER, |n| {
        let mut fractions: Vec<(String, _)> = Family::ALL.iter().map(|f| (f.name().to_string(), f.jfraction())).collect();
        fractions.push(("gamma".into(), gamma_jfraction()));
        fractions
            .par_iter()
            .map(|(name, jf)| {
                let (a, b) = (jf.expand_motzkin(n), jf.expand_nested(n));
                (0..=n).flat_map(|k| poly_diff(k, format!("{name}: Motzkin vs nested"), a.coeff(k), b.coeff(k))).collect::<Vec<_>>()
            })
            .flatten()
            .collect()
    })
}

fn refined_oracle(cfg: &VerifyConfig) -> Outcome {
    Outcome::empty().scan(0, cfg.cap(cfg.quartic_cap), |n| {
        first_bad(n, PermFilter::All, |p| {
            let (fast, slow) = (RefinedProfile::of(p), RefinedProfile::by_quadruples(p));
            (fast != slow).then(|| "O(n^2) and quadruple profiles differ".to_string())
        })
    })
}

fn negative_results(_cfg: &VerifyConfig) -> Outcome {
    const FIX: [Form; 2] = [&[("x", &[Des2]), ("y", &[Fix])], &[("x", &[Pex]), ("y", &[Fix])]];
    const PEX: [Form; 1] = [&[("x", &[Des2]), ("y", &[Pex])]];
    let mut out = Outcome::empty();
    out.lo = 4;
    out.hi = 6;
    let fix = stat_polys(4, PermFilter::All, &FIX);
    let w1 = poly_diff(4, "x^des2 y^fix minus x^pex y^fix", &fix[0], &fix[1]);
    let p = stat_polys(6, PermFilter::All, &PEX).pop().unwrap();
    let swap = Assignment::new().set_named("x", Poly::named("y")).set_named("y", Poly::named("x"));
    let w2 = poly_diff(6, "x^des2 y^pex minus its x<->y swap", &p, &p.substitute(&swap));
    if w1.is_empty() || w2.is_empty() {
        out.failed = true;
        if w1.is_empty() {
            out.witnesses.push(Witness::PolyDiff { n: 4, label: "(des2,fix) and (pex,fix) coincide".into(), diff: "0".into() });
        }
        if w2.is_empty() {
            out.witnesses.push(Witness::PolyDiff { n: 6, label: "(des2,pex) is symmetric".into(), diff: "0".into() });
        }
    }
    out.witnesses.extend(w1);
    out.witnesses.extend(w2);
    out
}

// ---------------------------------------------------------------------------
// conjectures

fn des2_cyc_vs_pex_cyc(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 2] = [&[("x", &[Des2]), ("y", &[Cyc])], &[("x", &[Pex]), ("y", &[Cyc])]];
    Outcome::empty().scan(0, cfg.n_max, |n| equidistributed(n, PermFilter::All, &FORMS))
}

fn des2_ear_symmetry(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 1] = [&[("x", &[Des2]), ("y", &[Ear])]];
    let swap = Assignment::new().set_named("x", Poly::named("y")).set_named("y", Poly::named("x"));
    Outcome::empty().scan(0, cfg.n_max, |n| {
        let p = stat_polys(n, PermFilter::All, &FORMS).pop().unwrap();
        poly_diff(n, "x^des2 y^ear minus its x<->y swap", &p, &p.substitute(&swap))
    })
}

fn des2_cyc_jfraction(cfg: &VerifyConfig) -> Outcome {
    const FORMS: [Form; 1] = [&[("y", &[Des2]), ("lam", &[Cyc])]];
    Outcome::empty()
        .scan(0, cfg.n_max, |n| forms_equal(n, PermFilter::All, &FORMS, &family(Family::Des2Cyc, n), "fraction coefficient"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { n_max: 5, symbolic_cap: 4, hop_subset_cap: 5, hop_sample_cap: 5, orbit_cap: 5, quartic_cap: 5 }
    }

    #[test]
    fn every_check_passes_on_small_n() {
        let reports = run_all(&small()).unwrap();
        assert_eq!(reports.len(), THEOREMS.len() + CONJECTURES.len());
        for r in &reports {
            assert!(r.passed(), "{}", summarize_text(std::slice::from_ref(r)));
        }
        assert!(!any_theorem_failed(&reports));
    }

    #[test]
    fn ids_are_unique_and_lookup_works() {
        let ids: BTreeSet<&str> = all_checks().map(|c| c.id).collect();
        assert_eq!(ids.len(), THEOREMS.len() + CONJECTURES.len());
        assert!(matches!(check("no-such-check", &small()), Err(VerifyError::UnknownCheckId(_))));
        assert!(matches!(check("zeta-transport", &VerifyConfig::with_n_max(13)), Err(VerifyError::NTooLarge { .. })));
    }

    #[test]
    fn negative_results_carry_witnesses() {
        let r = check("negative-results", &small()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn conjectures_report_their_own_verdict() {
        let r = check("des2-ear-symmetry", &small()).unwrap();
        assert_eq!(r.verdict, Verdict::ConjectureHolds);
        let text = summarize_text(&[r]);
        assert!(text.contains("conjecture-holds"));
    }

    #[test]
    fn empty_range_is_vacuous() {
        let cfg = VerifyConfig { n_max: 0, ..small() };
        for r in run_all(&cfg).unwrap() {
            assert!(r.passed(), "{}", r.check_id);
        }
    }

    #[test]
    fn failing_scan_stops_at_the_smallest_n() {
        let out = Outcome::empty().scan(0, 6, |n| {
            first_bad(n, PermFilter::All, |p| (p.len() >= 3 && p.get(1) == 2).then(|| "starts with 2".into()))
        });
        assert!(out.failed);
        assert_eq!(
            out.witnesses,
            vec![Witness::Permutation { n: 3, perm: "2 1 3".into(), detail: "starts with 2".into() }]
        );
    }

    #[test]
    fn report_json_shape() {
        let r = check("pseudo-nesting-balance", &small()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["check_id", "n_range", "verdict", "witnesses", "runtime_ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["verdict"], "pass");
    }
}
