mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use permstat::bijections::{
    foata_phi, foata_varphi, orbit_of, phi1, phi1_inverse, phi1_inverse_trace, phi1_trace, phi2, phi_sz,
    phi_sz_trace, valley_hop,
};
use permstat::master::{self, LambdaMarker, Scheme, Which};
use permstat::perm::{par_map_reduce, HARD_N_MAX};
use permstat::series::{gamma_decompose, tvar, Family, HARD_ORDER};
use permstat::verify::{self, VerifyConfig};
use permstat::{parse, PermFilter, Permutation, Poly, Stat, StatVector};

use cache::Cache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "permstat", version, about = "Exact enumeration of permutation statistics over S_n")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Largest n any enumeration may reach (hard ceiling 12).
    #[arg(long, default_value_t = 9, global = true)]
    n_max: usize,
    /// Largest n for fully symbolic master polynomials.
    #[arg(long, default_value_t = 6, global = true)]
    symbolic_cap: usize,
    /// Cache directory; defaults to $PERMSTAT_CACHE, then ~/.cache/permstat.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Derangement,
    DerangementNoCdrise,
}

impl From<Filter> for PermFilter {
    fn from(f: Filter) -> Self {
        match f {
            Filter::All => PermFilter::All,
            Filter::Derangement => PermFilter::Derangement,
            Filter::DerangementNoCdrise => PermFilter::DerangementNoCdrise,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Marker {
    Cycles,
    NontrivialCycles,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All statistics of one permutation, e.g. "2 3 1 4 6 8 7 5".
    Stats { perm: String },
    /// Apply a bijection: foata, foata-c, phi1, phi1-inv, phisz, phi2, zeta or hop:S (S like 3,4,5).
    Biject {
        #[arg(long)]
        map: String,
        /// Emit the intermediate biwords or block states.
        #[arg(long)]
        trace: bool,
        perm: String,
    },
    /// A family polynomial (A, B, C, D or des2-cyc) from its continued fraction.
    Poly {
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Coefficients 0..=order of a family's continued fraction.
    Cf {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Gamma coefficients of D_n.
    Gamma {
        #[arg(long)]
        n: usize,
    },
    /// A master polynomial by enumeration.
    Master {
        #[arg(long, default_value = "first")]
        which: String,
        #[arg(long, default_value = "symbolic")]
        scheme: String,
        #[arg(long)]
        n: usize,
        /// Overrides the scheme's own choice of what lam counts.
        #[arg(long, value_enum)]
        lambda: Option<Marker>,
    },
    /// Run identity checks; exits with status 1 if a theorem fails.
    Verify {
        #[arg(long)]
        check: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// The valley-hopping orbit of a permutation.
    Orbit { perm: String },
    /// Joint distribution of statistics over S_n, one row per value tuple.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        stats: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        filter: Filter,
    },
}

struct Ctx {
    format: Format,
    n_max: usize,
    symbolic_cap: usize,
    cache: Cache,
}

impl Ctx {
    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            bail!("n = {n} exceeds --n-max {}", self.n_max);
        }
        Ok(())
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os("PERMSTAT_CACHE") {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("permstat"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("permstat"))
}

fn perm_arg(s: &str) -> Result<Permutation> {
    parse(s).with_context(|| format!("cannot read permutation {s:?}"))
}

fn poly_value(p: &Poly) -> Value {
    p.to_json()
}

fn polys_value(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(poly_value).collect())
}

fn value_poly(v: &Value) -> Result<Poly> {
    Poly::from_json(v).map_err(|e| anyhow!("bad polynomial payload: {e}"))
}

fn emit_poly(ctx: &Ctx, v: &Value) -> Result<()> {
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string(v)?),
        Format::Text => println!("{}", value_poly(v)?),
        Format::Csv => {
            println!("coefficient,monomial");
            for t in v.as_array().into_iter().flatten() {
                let vars = t["vars"].as_object().map(|m| {
                    m.iter().map(|(k, e)| if e == 1 { k.clone() } else { format!("{k}^{e}") }).collect::<Vec<_>>().join("*")
                });
                println!("{},{}", t["coeff"].as_str().unwrap_or_default(), vars.unwrap_or_default());
            }
        }
    }
    Ok(())
}

fn emit_poly_list(ctx: &Ctx, v: &Value) -> Result<()> {
    let items = v.as_array().ok_or_else(|| anyhow!("expected a list"))?;
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string(v)?),
        Format::Text => {
            for (k, p) in items.iter().enumerate() {
                println!("{k}: {}", value_poly(p)?);
            }
        }
        Format::Csv => {
            println!("index,polynomial");
            for (k, p) in items.iter().enumerate() {
                println!("{k},\"{}\"", value_poly(p)?);
            }
        }
    }
    Ok(())
}

fn cmd_stats(ctx: &Ctx, perm: &str) -> Result<()> {
    let p = perm_arg(perm)?;
    let sv = StatVector::of(&p);
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string(&sv)?),
        Format::Text => {
            for (s, v) in sv.iter() {
                println!("{:<7} {v}", s.name());
            }
        }
        Format::Csv => {
            println!("{}", sv.iter().map(|(s, _)| s.name()).collect::<Vec<_>>().join(","));
            println!("{}", sv.iter().map(|(_, v)| v.to_string()).collect::<Vec<_>>().join(","));
        }
    }
    Ok(())
}

fn hop_set(spec: &str, n: usize) -> Result<Vec<usize>> {
    let mut xs = Vec::new();
    for part in spec.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let x: usize = part.parse().with_context(|| format!("bad letter {part:?} in hop set"))?;
        if x == 0 || x > n {
            bail!("hop letter {x} is not in [1, {n}]");
        }
        xs.push(x);
    }
    xs.sort_unstable();
    xs.dedup();
    Ok(xs)
}

fn cmd_biject(ctx: &Ctx, map: &str, trace: bool, perm: &str) -> Result<()> {
    let p = perm_arg(perm)?;
    let (out, trace_value): (Permutation, Option<Value>) = match map {
        "foata" => (foata_phi(&p), None),
        "foata-c" => (foata_varphi(&p), None),
        "zeta" => (p.zeta(), None),
        "phi2" => (phi2(&p)?, None),
        "phi1" if trace => {
            let t = phi1_trace(&p)?;
            (t.result.clone(), Some(serde_json::to_value(&t)?))
        }
        "phi1" => (phi1(&p)?, None),
        "phisz" if trace => {
            let t = phi_sz_trace(&p)?;
            (t.result.clone(), Some(serde_json::to_value(&t)?))
        }
        "phisz" => (phi_sz(&p)?, None),
        "phi1-inv" if trace => {
            let t = phi1_inverse_trace(&p)?;
            (t.result.clone(), Some(serde_json::to_value(&t)?))
        }
        "phi1-inv" => (phi1_inverse(&p)?, None),
        m if m.starts_with("hop:") => {
            let xs = hop_set(&m[4..], p.len())?;
            let mut cur = p.clone();
            let mut steps = Vec::new();
            for x in xs {
                let next = valley_hop(&cur, x);
                steps.push(json!({"x": x, "before": cur, "after": next}));
                cur = next;
            }
            (cur, trace.then(|| Value::Array(steps)))
        }
        other => bail!("unknown map {other:?} (expected foata, foata-c, phi1, phi1-inv, phisz, phi2, zeta or hop:S)"),
    };
    match ctx.format {
        Format::Json => {
            let mut v = json!({"map": map, "input": p, "output": out});
            if let Some(t) = trace_value {
                v["trace"] = t;
            }
            println!("{}", serde_json::to_string(&v)?);
        }
        Format::Text => {
            println!("{out}");
            if let Some(t) = trace_value {
                println!("{}", serde_json::to_string_pretty(&t)?);
            }
        }
        Format::Csv => {
            println!("input,output");
            println!("{p},{out}");
        }
    }
    Ok(())
}

fn family_arg(s: &str) -> Result<Family> {
    s.parse::<Family>().map_err(|e| anyhow!(e))
}

fn cmd_poly(ctx: &Ctx, fam: &str, n: usize) -> Result<()> {
    let f = family_arg(fam)?;
    if n > HARD_ORDER {
        bail!("n = {n} exceeds the series limit {HARD_ORDER}");
    }
    let v = ctx
        .cache
        .get_or_compute(&format!("poly|{}|{n}", f.name()), || Ok(poly_value(&f.poly_with_limit(n, HARD_ORDER)?)))?;
    emit_poly(ctx, &v)
}

fn cmd_cf(ctx: &Ctx, spec: &str, order: usize) -> Result<()> {
    let f = family_arg(spec)?;
    let v = ctx.cache.get_or_compute(&format!("cf|{}|{order}", f.name()), || Ok(polys_value(&f.polys(order)?)))?;
    emit_poly_list(ctx, &v)
}

fn cmd_gamma(ctx: &Ctx, n: usize) -> Result<()> {
    if n > HARD_ORDER {
        bail!("n = {n} exceeds the series limit {HARD_ORDER}");
    }
    let v = ctx.cache.get_or_compute(&format!("gamma|{n}"), || {
        let d = Family::D.poly_with_limit(n, HARD_ORDER)?;
        Ok(polys_value(&gamma_decompose(&d, n, tvar())?))
    })?;
    emit_poly_list(ctx, &v)
}

fn cmd_master(ctx: &Ctx, which: &str, scheme: &str, n: usize, lambda: Option<Marker>) -> Result<()> {
    let which: Which = which.parse().map_err(|e: String| anyhow!(e))?;
    let scheme: Scheme = scheme.parse().map_err(|e: String| anyhow!(e))?;
    ctx.check_n(n)?;
    if scheme == Scheme::Symbolic && n > ctx.symbolic_cap {
        bail!("symbolic n = {n} exceeds --symbolic-cap {}", ctx.symbolic_cap);
    }
    let marker = match lambda {
        Some(Marker::Cycles) => LambdaMarker::Cycles,
        Some(Marker::NontrivialCycles) => LambdaMarker::NontrivialCycles,
        None => scheme.lambda_marker(),
    };
    let key = format!("master|{which}|{scheme}|{marker:?}|{n}");
    let v = ctx.cache.get_or_compute(&key, || Ok(poly_value(&master::master(n, which, marker, &scheme.assignment())?)))?;
    emit_poly(ctx, &v)
}

fn cmd_verify(ctx: &Ctx, checks: &[String], list: bool) -> Result<ExitCode> {
    if list {
        for c in verify::all_checks() {
            let kind = match c.kind {
                verify::CheckKind::Theorem => "theorem",
                verify::CheckKind::Conjecture => "conjecture",
            };
            println!("{:<30} {:<10} {}", c.id, kind, c.about);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let cfg = VerifyConfig { n_max: ctx.n_max, symbolic_cap: ctx.symbolic_cap, ..VerifyConfig::default() };
    let reports = if checks.is_empty() {
        verify::run_all(&cfg)?
    } else {
        checks.iter().map(|id| verify::check(id, &cfg)).collect::<Result<Vec<_>, _>>()?
    };
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&verify::summarize_json(&reports))?),
        Format::Text => print!("{}", verify::summarize_text(&reports)),
        Format::Csv => {
            println!("check_id,verdict,n_min,n_max,witnesses,runtime_ms");
            for r in &reports {
                println!(
                    "{},{},{},{},{},{}",
                    r.check_id,
                    r.verdict.label(),
                    r.n_range[0],
                    r.n_range[1],
                    r.witnesses.len(),
                    r.runtime_ms
                );
            }
        }
    }
    Ok(if verify::any_theorem_failed(&reports) { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_orbit(ctx: &Ctx, perm: &str) -> Result<()> {
    let p = perm_arg(perm)?;
    ctx.check_n(p.len())?;
    let orbit = orbit_of(&p);
    match ctx.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&json!({
                "representative": orbit.representative,
                "size": orbit.members.len(),
                "members": orbit.members,
            }))?
        ),
        Format::Text => {
            println!("representative {}", orbit.representative);
            for m in &orbit.members {
                println!("{m}");
            }
        }
        Format::Csv => {
            println!("member,is_representative");
            for m in &orbit.members {
                println!("{m},{}", *m == orbit.representative);
            }
        }
    }
    Ok(())
}

fn cmd_dist(ctx: &Ctx, n: usize, stats: &[String], filter: Filter) -> Result<()> {
    ctx.check_n(n)?;
    if stats.is_empty() {
        bail!("--stats needs at least one statistic");
    }
    let stats: Vec<Stat> = stats.iter().map(|s| s.parse::<Stat>()).collect::<Result<_, _>>()?;
    let table = par_map_reduce(
        n,
        filter.into(),
        std::collections::BTreeMap::<Vec<usize>, u64>::new,
        |mut acc, p| {
            let sv = StatVector::of(p);
            *acc.entry(stats.iter().map(|&s| sv[s]).collect()).or_insert(0) += 1;
            acc
        },
        |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        },
    );
    let names: Vec<&str> = stats.iter().map(|s| s.name()).collect();
    match ctx.format {
        Format::Json => {
            let rows: Vec<Value> = table
                .iter()
                .map(|(k, c)| {
                    let mut row = serde_json::Map::new();
                    for (name, v) in names.iter().zip(k) {
                        row.insert(name.to_string(), json!(v));
                    }
                    row.insert("count".into(), json!(c));
                    Value::Object(row)
                })
                .collect();
            println!("{}", serde_json::to_string(&rows)?);
        }
        Format::Csv | Format::Text => {
            let sep = if ctx.format == Format::Csv { "," } else { "\t" };
            println!("{}{sep}count", names.join(sep));
            for (k, c) in &table {
                let vals: Vec<String> = k.iter().map(|v| v.to_string()).collect();
                println!("{}{sep}{c}", vals.join(sep));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.n_max > HARD_N_MAX {
        bail!("--n-max {} exceeds the hard ceiling {HARD_N_MAX}", cli.n_max);
    }
    if cli.symbolic_cap > cli.n_max {
        bail!("--symbolic-cap {} exceeds --n-max {}", cli.symbolic_cap, cli.n_max);
    }
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("configuring worker threads")?;
    }
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::new(cli.cache_dir.or_else(default_cache_dir)) };
    let ctx = Ctx { format: cli.format, n_max: cli.n_max, symbolic_cap: cli.symbolic_cap, cache };
    match &cli.command {
        Command::Stats { perm } => cmd_stats(&ctx, perm)?,
        Command::Biject { map, trace, perm } => cmd_biject(&ctx, map, *trace, perm)?,
        Command::Poly { family, n } => cmd_poly(&ctx, family, *n)?,
        Command::Cf { spec, order } => cmd_cf(&ctx, spec, *order)?,
        Command::Gamma { n } => cmd_gamma(&ctx, *n)?,
        Command::Master { which, scheme, n, lambda } => cmd_master(&ctx, which, scheme, *n, *lambda)?,
        Command::Verify { check, list } => return cmd_verify(&ctx, check, *list),
        Command::Orbit { perm } => cmd_orbit(&ctx, perm)?,
        Command::Dist { n, stats, filter } => cmd_dist(&ctx, *n, stats, *filter)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
