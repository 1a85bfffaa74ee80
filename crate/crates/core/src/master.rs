//! Master polynomials: weighted sums over `S_n` with one indexed
//! indeterminate per vertex, chosen by cycle type (or linear type) and the
//! vertex's crossing/nesting counts, plus the continued fractions they obey
//! and the named substitution schemes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::perm::{par_map_reduce, PermFilter, Permutation, HARD_N_MAX};
use crate::poly::{Assignment, Monomial, Poly, VarId};
use crate::refined::{pattern_2_31, pattern_31_2, RefinedProfile};
use crate::series::{lam, t, w, y, JFraction, Series};
use crate::stats::{cycle_type_of, linear_classify, Boundary, CycleType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MasterError {
    #[error("n = {n} exceeds the limit {limit}")]
    NTooLarge { n: usize, limit: usize },
    #[error("{which}: value {value} of {perm} would need a negative index")]
    NegativeIndex { which: Which, perm: Permutation, value: usize },
}

/// Which weighted sum to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    /// a,b,c,d doubly indexed by (cross, nest) on Cval/Cpeak/Cdfall/Cdrise, e by level.
    First,
    /// λ^cyc, a singly indexed by ucross+unest, d carrying unest of the preimage.
    Second,
    /// The mirror image of `Second` under reversal-complement.
    Dual,
    /// `First` read off linear statistics: (31-2), (2-31) on valleys, peaks, ...
    Linear1,
    /// `First` read off linear statistics, antirecord double ascents as fixed points.
    Linear2,
}

impl Which {
    pub const ALL: [Which; 5] = [Which::First, Which::Second, Which::Dual, Which::Linear1, Which::Linear2];

    pub fn name(self) -> &'static str {
        match self {
            Which::First => "first",
            Which::Second => "second",
            Which::Dual => "dual",
            Which::Linear1 => "linear1",
            Which::Linear2 => "linear2",
        }
    }

    fn marks_cycles(self) -> bool {
        matches!(self, Which::Second | Which::Dual)
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Which {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Which::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown master polynomial {s:?}"))
    }
}

/// What `lam` counts in the cycle-marked sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaMarker {
    /// λ^cyc, the plain definition.
    Cycles,
    /// λ^(cyc - fix). Equivalent to substituting e_ℓ → e_ℓ/λ, which keeps
    /// schemes with `e = w/λ` polynomial.
    NontrivialCycles,
}

/// Named substitution schemes for the indexed families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// No substitution.
    Symbolic,
    /// First form → Σ t^exc λ^pex y^ear w^fix.
    Case1,
    /// Second form → Σ t^exc λ^pcyc y^ear w^fix.
    Case2,
    /// Dual form → Σ t^exc λ^pcyc y^pex w^fix.
    Case3,
    /// `Case1` with c = 1, d = e = 0: derangements without cycle double rise.
    Gamma1,
    /// `Case2` with d = e = 0.
    Gamma2,
    /// Dual form with a = 1, b_{ℓ,0} = ty, other b = t, c = e = 0, d = 1.
    Gamma3,
    /// `Case1` with c = 0, d = t, e = 0.
    Case1Bis,
}

impl Scheme {
    pub const ALL: [Scheme; 8] = [
        Scheme::Symbolic,
        Scheme::Case1,
        Scheme::Case2,
        Scheme::Case3,
        Scheme::Gamma1,
        Scheme::Gamma2,
        Scheme::Gamma3,
        Scheme::Case1Bis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Symbolic => "symbolic",
            Scheme::Case1 => "case1",
            Scheme::Case2 => "case2",
            Scheme::Case3 => "case3",
            Scheme::Gamma1 => "gamma1",
            Scheme::Gamma2 => "gamma2",
            Scheme::Gamma3 => "gamma3",
            Scheme::Case1Bis => "case1bis",
        }
    }

    /// The master sum the scheme was written for.
    pub fn natural(self) -> Which {
        match self {
            Scheme::Symbolic | Scheme::Case1 | Scheme::Gamma1 | Scheme::Case1Bis => Which::First,
            Scheme::Case2 | Scheme::Gamma2 => Which::Second,
            Scheme::Case3 | Scheme::Gamma3 => Which::Dual,
        }
    }

    pub fn lambda_marker(self) -> LambdaMarker {
        match self {
            Scheme::Case2 | Scheme::Case3 => LambdaMarker::NontrivialCycles,
            _ => LambdaMarker::Cycles,
        }
    }

    pub fn assignment(self) -> Assignment {
        let konst = |p: Poly| move |_: &[usize]| Some(p.clone());
        let a_case1 = |ix: &[usize]| Some(if ix[0] == 0 { lam() * t() } else { t() });
        let b_case1 = |ix: &[usize]| Some(if ix[1] == 0 { y() } else { Poly::one() });
        match self {
            Scheme::Symbolic => Assignment::new(),
            Scheme::Case1 => Assignment::new()
                .family("a", a_case1)
                .family("b", b_case1)
                .family("c", konst(Poly::one()))
                .family("d", konst(t()))
                .family("e", konst(w())),
            Scheme::Case2 => Assignment::new()
                .family("a", konst(t()))
                .family("b", b_case1)
                .family("c", konst(Poly::one()))
                .family("d", konst(t()))
                .family("e", konst(w())),
            Scheme::Case3 => Assignment::new()
                .family("a", konst(Poly::one()))
                .family("b", |ix: &[usize]| Some(if ix[0] == 0 { t() * y() } else { t() }))
                .family("c", konst(t()))
                .family("d", konst(Poly::one()))
                .family("e", konst(w())),
            Scheme::Gamma1 => Assignment::new()
                .family("a", a_case1)
                .family("b", b_case1)
                .family("c", konst(Poly::one()))
                .family("d", konst(Poly::zero()))
                .family("e", konst(Poly::zero())),
            Scheme::Gamma2 => Assignment::new()
                .family("a", konst(t()))
                .family("b", b_case1)
                .family("c", konst(Poly::one()))
                .family("d", konst(Poly::zero()))
                .family("e", konst(Poly::zero())),
            Scheme::Gamma3 => Assignment::new()
                .family("a", konst(Poly::one()))
                .family("b", |ix: &[usize]| Some(if ix[1] == 0 { t() * y() } else { t() }))
                .family("c", konst(Poly::zero()))
                .family("d", konst(Poly::one()))
                .family("e", konst(Poly::zero())),
            Scheme::Case1Bis => Assignment::new()
                .family("a", a_case1)
                .family("b", b_case1)
                .family("c", konst(Poly::zero()))
                .family("d", konst(t()))
                .family("e", konst(Poly::zero())),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Scheme::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown scheme {s:?}"))
    }
}

/// Interned indeterminates for one n, so the enumeration never touches the
/// intern table.
struct Vars {
    side: usize,
    pair: HashMap<char, Vec<VarId>>,
    single: HashMap<char, Vec<VarId>>,
    lam: VarId,
}

impl Vars {
    fn new(n: usize) -> Self {
        let side = n + 2;
        let mut pair = HashMap::new();
        let mut single = HashMap::new();
        for fam in ['a', 'b', 'c', 'd', 'e'] {
            let name = fam.to_string();
            let mut grid = Vec::with_capacity(side * side);
            for i in 0..side {
                for j in 0..side {
                    grid.push(VarId::indexed(&name, &[i, j]));
                }
            }
            pair.insert(fam, grid);
            single.insert(fam, (0..side).map(|i| VarId::indexed(&name, &[i])).collect());
        }
        Vars { side, pair, single, lam: VarId::new("lam").unwrap() }
    }

    fn two(&self, fam: char, i: usize, j: usize) -> VarId {
        self.pair[&fam][i * self.side + j]
    }

    fn one(&self, fam: char, i: usize) -> VarId {
        self.single[&fam][i]
    }
}

fn weight(p: &Permutation, which: Which, marker: LambdaMarker, vars: &Vars) -> Result<Monomial, MasterError> {
    let n = p.len();
    let mut pairs: Vec<(VarId, u32)> = Vec::with_capacity(n + 1);
    match which {
        Which::First | Which::Second | Which::Dual => {
            let inv = p.inverse();
            let prof = RefinedProfile::of(p);
            for i in 1..=n {
                let v = prof.at(i);
                let kind = cycle_type_of(p, &inv, i);
                let var = match (which, kind) {
                    (_, CycleType::Fix) => vars.one('e', v.lev),
                    (Which::First, CycleType::Cval) => vars.two('a', v.ucross, v.unest),
                    (Which::First, CycleType::Cpeak) => vars.two('b', v.lcross, v.lnest),
                    (Which::First, CycleType::Cdfall) => vars.two('c', v.lcross, v.lnest),
                    (Which::First, CycleType::Cdrise) => vars.two('d', v.ucross, v.unest),
                    (Which::Second, CycleType::Cval) => vars.one('a', v.ucross + v.unest),
                    (Which::Second, CycleType::Cpeak) => vars.two('b', v.lcross, v.lnest),
                    (Which::Second, CycleType::Cdfall) => vars.two('c', v.lcross, v.lnest),
                    (Which::Second, CycleType::Cdrise) => {
                        vars.two('d', v.ucross + v.unest, prof.at(inv.get(i)).unest)
                    }
                    (Which::Dual, CycleType::Cval) => vars.two('b', v.ucross, v.unest),
                    (Which::Dual, CycleType::Cpeak) => vars.one('a', v.lcross + v.lnest),
                    (Which::Dual, CycleType::Cdfall) => {
                        vars.two('d', v.lcross + v.lnest, prof.at(inv.get(i)).lnest)
                    }
                    (Which::Dual, CycleType::Cdrise) => vars.two('c', v.ucross, v.unest),
                    _ => unreachable!(),
                };
                pairs.push((var, 1));
            }
            if which.marks_cycles() {
                let cycles = p.cycles(false);
                let cyc = cycles.cycles.len();
                let fix = cycles.cycles.iter().filter(|c| c.len() == 1).count();
                let k = match marker {
                    LambdaMarker::Cycles => cyc,
                    LambdaMarker::NontrivialCycles => cyc - fix,
                };
                pairs.push((vars.lam, k as u32));
            }
        }
        Which::Linear1 | Which::Linear2 => {
            let lin = linear_classify(p, Boundary::ZeroInf);
            let k31 = pattern_31_2(p);
            let k231 = pattern_2_31(p);
            let (x31, x231) = (|x: usize| k31[x - 1], |x: usize| k231[x - 1]);
            let negative = |x: usize| MasterError::NegativeIndex { which, perm: p.clone(), value: x };
            if which == Which::Linear1 {
                let fmax = lin.fmax().expect("zero-left boundary");
                for &x in &lin.valley {
                    pairs.push((vars.two('a', x31(x), x231(x)), 1));
                }
                for &x in &lin.peak {
                    pairs.push((vars.two('b', x31(x), x231(x)), 1));
                }
                for &x in &lin.ddes {
                    pairs.push((vars.two('c', x31(x), x231(x)), 1));
                }
                for &x in &lin.dasc {
                    if fmax.contains(&x) {
                        pairs.push((vars.one('e', x231(x)), 1));
                    } else {
                        let k = x31(x).checked_sub(1).ok_or_else(|| negative(x))?;
                        pairs.push((vars.two('d', k, x231(x)), 1));
                    }
                }
            } else {
                let arda = lin.arda().expect("zero-left boundary");
                for &x in &lin.valley {
                    pairs.push((vars.two('a', x231(x), x31(x)), 1));
                }
                for &x in &lin.peak {
                    pairs.push((vars.two('b', x231(x), x31(x)), 1));
                }
                for &x in &lin.ddes {
                    pairs.push((vars.two('d', x231(x), x31(x)), 1));
                }
                for &x in &lin.dasc {
                    if arda.contains(&x) {
                        pairs.push((vars.one('e', x31(x)), 1));
                    } else {
                        let k = x231(x).checked_sub(1).ok_or_else(|| negative(x))?;
                        pairs.push((vars.two('c', k, x31(x)), 1));
                    }
                }
            }
        }
    }
    Ok(Monomial::from_pairs(pairs))
}

type Tally = Result<HashMap<Monomial, u64>, MasterError>;

/// Number of permutations carrying each symbolic weight.
pub fn tally(n: usize, which: Which, marker: LambdaMarker) -> Tally {
    if n > HARD_N_MAX {
        return Err(MasterError::NTooLarge { n, limit: HARD_N_MAX });
    }
    let vars = Vars::new(n);
    par_map_reduce(
        n,
        PermFilter::All,
        || Ok(HashMap::new()),
        |acc: Tally, p| {
            let mut map = acc?;
            *map.entry(weight(p, which, marker, &vars)?).or_insert(0) += 1;
            Ok(map)
        },
        |a, b| {
            let (mut a, b) = (a?, b?);
            for (m, c) in b {
                *a.entry(m).or_insert(0) += c;
            }
            Ok(a)
        },
    )
}

/// The master sum `which` over `S_n`, fully symbolic, then `assignment` applied.
pub fn master(n: usize, which: Which, marker: LambdaMarker, assignment: &Assignment) -> Result<Poly, MasterError> {
    Ok(Poly::from_counts(tally(n, which, marker)?).substitute(assignment))
}

/// `master` with a named scheme and the scheme's own λ convention.
pub fn master_with(n: usize, which: Which, scheme: Scheme) -> Result<Poly, MasterError> {
    master(n, which, scheme.lambda_marker(), &scheme.assignment())
}

pub fn q_first(n: usize, scheme: Scheme) -> Result<Poly, MasterError> {
    master_with(n, Which::First, scheme)
}

pub fn q_second(n: usize, scheme: Scheme, marker: LambdaMarker) -> Result<Poly, MasterError> {
    master(n, Which::Second, marker, &scheme.assignment())
}

pub fn q_second_dual(n: usize, scheme: Scheme, marker: LambdaMarker) -> Result<Poly, MasterError> {
    master(n, Which::Dual, marker, &scheme.assignment())
}

pub fn q_linear_first(n: usize, scheme: Scheme) -> Result<Poly, MasterError> {
    master_with(n, Which::Linear1, scheme)
}

pub fn q_linear_second(n: usize, scheme: Scheme) -> Result<Poly, MasterError> {
    master_with(n, Which::Linear2, scheme)
}

/// Which continued fraction to build from the indexed families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfKind {
    /// γ_n = c⋆_{n-1} + d⋆_{n-1} + e_n, β_n = a⋆_{n-1} b⋆_{n-1}.
    First,
    /// γ_n = Σ c_{ℓ,n-1-ℓ} + Σ_ℓ d_{n-1,ℓ} + λe_n, β_n = (λ+n-1) a_{n-1} b⋆_{n-1}.
    Second,
}

fn var2(fam: &str, i: usize, j: usize) -> Poly {
    Poly::var(VarId::indexed(fam, &[i, j]))
}

fn var1(fam: &str, i: usize) -> Poly {
    Poly::var(VarId::indexed(fam, &[i]))
}

/// `x⋆_m = Σ_{ℓ=0}^{m} x_{ℓ,m-ℓ}`.
fn star(fam: &str, m: usize) -> Poly {
    (0..=m).map(|l| var2(fam, l, m - l)).sum()
}

pub fn master_jfraction(kind: CfKind, marker: LambdaMarker, assignment: &Assignment) -> JFraction {
    let (ga, ba) = (assignment.clone(), assignment.clone());
    match kind {
        CfKind::First => JFraction::new(
            move |n| {
                let mut g = var1("e", n);
                if n > 0 {
                    g = g + star("c", n - 1) + star("d", n - 1);
                }
                g.substitute(&ga)
            },
            move |n| (star("a", n - 1) * star("b", n - 1)).substitute(&ba),
        ),
        CfKind::Second => JFraction::new(
            move |n| {
                let mut g = match marker {
                    LambdaMarker::Cycles => lam() * var1("e", n),
                    LambdaMarker::NontrivialCycles => var1("e", n),
                };
                if n > 0 {
                    g = g + star("c", n - 1) + (0..n).map(|l| var2("d", n - 1, l)).sum::<Poly>();
                }
                g.substitute(&ga)
            },
            move |n| {
                let lead = lam() + Poly::int(n as i64 - 1);
                (lead * var1("a", n - 1) * star("b", n - 1)).substitute(&ba)
            },
        ),
    }
}

/// Continued-fraction side of the identity for `which`, to order `order`.
pub fn q_cf(which: Which, scheme: Scheme, order: usize) -> Series {
    let kind = if which.marks_cycles() { CfKind::Second } else { CfKind::First };
    master_jfraction(kind, scheme.lambda_marker(), &scheme.assignment()).expand_motzkin(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Family;

    fn v(name: &str) -> Poly {
        Poly::named(name)
    }

    #[test]
    fn small_symbolic_values() {
        assert_eq!(q_first(0, Scheme::Symbolic).unwrap(), Poly::one());
        assert_eq!(q_first(1, Scheme::Symbolic).unwrap(), v("e[0]"));
        assert_eq!(q_first(2, Scheme::Symbolic).unwrap(), v("e[0]").pow(2) + v("a[0,0]") * v("b[0,0]"));
        assert_eq!(q_linear_first(1, Scheme::Symbolic).unwrap(), v("e[0]"));
        let s2 = q_second(2, Scheme::Symbolic, LambdaMarker::Cycles).unwrap();
        assert_eq!(s2, v("lam").pow(2) * v("e[0]").pow(2) + v("lam") * v("a[0]") * v("b[0,0]"));
    }

    #[test]
    fn enumeration_matches_cf_symbolically() {
        let first = q_cf(Which::First, Scheme::Symbolic, 5);
        let second = q_cf(Which::Second, Scheme::Symbolic, 5);
        for n in 0..=5 {
            let q = q_first(n, Scheme::Symbolic).unwrap();
            assert_eq!(&q, first.coeff(n), "first n={n}");
            assert_eq!(&q_linear_first(n, Scheme::Symbolic).unwrap(), &q, "linear1 n={n}");
            assert_eq!(&q_linear_second(n, Scheme::Symbolic).unwrap(), &q, "linear2 n={n}");
            let s = q_second(n, Scheme::Symbolic, LambdaMarker::Cycles).unwrap();
            assert_eq!(&s, second.coeff(n), "second n={n}");
            assert_eq!(q_second_dual(n, Scheme::Symbolic, LambdaMarker::Cycles).unwrap(), s, "dual n={n}");
        }
    }

    #[test]
    fn schemes_give_a() {
        let a = Family::A.polys(6).unwrap();
        for n in 0..=6 {
            assert_eq!(q_first(n, Scheme::Case1).unwrap(), a[n], "case1 n={n}");
            assert_eq!(master_with(n, Which::Second, Scheme::Case2).unwrap(), a[n], "case2 n={n}");
            assert_eq!(master_with(n, Which::Dual, Scheme::Case3).unwrap(), a[n], "case3 n={n}");
            for s in [Scheme::Case1, Scheme::Case2, Scheme::Case3] {
                assert_eq!(q_cf(s.natural(), s, 6).coeff(n), &a[n], "{s} cf n={n}");
            }
        }
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        for w in Which::ALL {
            assert_eq!(w.name().parse::<Which>().unwrap(), w);
        }
    }
}
