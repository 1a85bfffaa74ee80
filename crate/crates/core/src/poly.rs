//! Sparse multivariate polynomials with exact rational coefficients over
//! interned variable names such as `t`, `lam` or `a[2,0]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("bad variable name {0:?}")]
    BadName(String),
    #[error("no value given for variable {0}")]
    MissingValue(String),
    #[error("polynomial is not divisible by 1-{0}")]
    NotDivisible(String),
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
}

#[derive(Debug)]
struct VarInfo {
    name: String,
    family: String,
    indices: Vec<usize>,
}

#[derive(Default)]
struct Interner {
    vars: Vec<Arc<VarInfo>>,
    ids: HashMap<String, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static TABLE: OnceLock<RwLock<Interner>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn parse_name(name: &str) -> Option<(String, Vec<usize>)> {
    let (family, rest) = match name.find('[') {
        Some(k) => (&name[..k], Some(&name[k..])),
        None => (name, None),
    };
    let mut chars = family.chars();
    let first = chars.next()?;
    if !(first.is_ascii_alphabetic() || first == '_') || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return None;
    }
    let indices = match rest {
        None => vec![],
        Some(r) => {
            let inner = r.strip_prefix('[')?.strip_suffix(']')?;
            inner
                .split(',')
                .map(|s| {
                    let s = s.trim();
                    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                        None
                    } else {
                        s.parse().ok()
                    }
                })
                .collect::<Option<Vec<usize>>>()?
        }
    };
    Some((family.to_string(), indices))
}

fn canonical_name(family: &str, indices: &[usize]) -> String {
    if indices.is_empty() {
        family.to_string()
    } else {
        let idx: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
        format!("{family}[{}]", idx.join(","))
    }
}

/// Interned variable handle. Ids are stable for the life of the process.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u32);

impl VarId {
    /// Interns `name`, which must be `ident` or `ident[int,...]`.
    pub fn new(name: &str) -> Result<Self, PolyError> {
        let (family, indices) = parse_name(name).ok_or_else(|| PolyError::BadName(name.to_string()))?;
        Ok(Self::intern(&family, &indices))
    }

    /// Interns `family[i,j,...]` (or the bare family when `indices` is empty).
    pub fn indexed(family: &str, indices: &[usize]) -> Self {
        assert!(parse_name(family).is_some_and(|(_, i)| i.is_empty()), "bad family name {family:?}");
        Self::intern(family, indices)
    }

    fn intern(family: &str, indices: &[usize]) -> Self {
        let name = canonical_name(family, indices);
        if let Some(&id) = interner().read().unwrap().ids.get(&name) {
            return VarId(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(&name) {
            return VarId(id);
        }
        let id = table.vars.len() as u32;
        table.vars.push(Arc::new(VarInfo { name: name.clone(), family: family.to_string(), indices: indices.to_vec() }));
        table.ids.insert(name, id);
        VarId(id)
    }

    fn info(self) -> Arc<VarInfo> {
        interner().read().unwrap().vars[self.0 as usize].clone()
    }

    pub fn name(self) -> String {
        self.info().name.clone()
    }

    pub fn family(self) -> String {
        self.info().family.clone()
    }

    pub fn indices(self) -> Vec<usize> {
        self.info().indices.clone()
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A power product, stored as `(var, exponent)` pairs sorted by id with
/// positive exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(vec![])
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Normalizes arbitrary pairs: merges repeats and drops zero exponents.
    pub fn from_pairs(mut pairs: Vec<(VarId, u32)>) -> Self {
        pairs.sort_unstable_by_key(|&(v, _)| v);
        let mut out: Vec<(VarId, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e > 0);
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    /// Named key used for every printed ordering.
    fn named(&self) -> Vec<(String, u32)> {
        let mut k: Vec<(String, u32)> = self.0.iter().map(|&(v, e)| (v.name(), e)).collect();
        k.sort();
        k
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), BigRational::one())
    }

    /// Shorthand for `Poly::var(VarId::new(name))`; panics on a bad name.
    pub fn named(name: &str) -> Self {
        Poly::var(VarId::new(name).expect("valid variable name"))
    }

    /// Builds `Σ count·monomial` from an aggregated tally.
    pub fn from_counts<I: IntoIterator<Item = (Monomial, u64)>>(counts: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in counts {
            p.add_term(m, BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degree(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: VarId, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Coefficients of `v^0, v^1, ..., v^degree`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Evaluates at a point; every variable present must be assigned.
    pub fn eval(&self, point: &HashMap<VarId, BigRational>) -> Result<BigRational, PolyError> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in &m.0 {
                let x = point.get(&v).ok_or_else(|| PolyError::MissingValue(v.name()))?;
                term *= num_traits::pow(x.clone(), e as usize);
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn substitute(&self, assignment: &Assignment) -> Poly {
        let mut cache: HashMap<VarId, Option<Poly>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in &m.0 {
                let image = cache.entry(v).or_insert_with(|| assignment.lookup(v));
                match image {
                    Some(q) => factor = &factor * &q.pow(e),
                    None => kept.push((v, e)),
                }
                if factor.is_zero() {
                    break;
                }
            }
            if factor.is_zero() {
                continue;
            }
            let rest = Monomial(kept);
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&rest), fc);
            }
        }
        out
    }

    /// Exact quotient by `1 - v`, treating other variables as coefficients.
    pub fn div_one_minus(&self, v: VarId) -> Result<Poly, PolyError> {
        let coeffs = self.coefficients_in(v);
        let mut running = Poly::zero();
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            running = &running + c;
            for (m, a) in &running.terms {
                let mut pairs = m.0.clone();
                if k > 0 {
                    pairs.push((v, k as u32));
                }
                out.add_term(Monomial::from_pairs(pairs), a.clone());
            }
        }
        if running.is_zero() {
            Ok(out)
        } else {
            Err(PolyError::NotDivisible(v.name()))
        }
    }

    /// True when every coefficient is an integer (>= 0 if `nonnegative`).
    pub fn has_integer_coefficients(&self, nonnegative: bool) -> bool {
        self.terms.values().all(|c| c.is_integer() && (!nonnegative || !c.is_negative()))
    }

    fn sorted_terms(&self) -> Vec<(Vec<(String, u32)>, u32, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.named(), m.degree(), c)).collect();
        v.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        v
    }

    /// Canonical JSON value: terms by degree then variable names.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomials always serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly, PolyError> {
        Poly::deserialize(v).map_err(|e| PolyError::BadCoefficient(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    vars: BTreeMap<String, u32>,
    coeff: String,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .sorted_terms()
            .into_iter()
            .map(|(named, _, c)| JsonTerm {
                vars: named.into_iter().collect(),
                coeff: format!("{}/{}", c.numer(), c.denom()),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        let mut p = Poly::zero();
        for t in terms {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            let mut pairs = Vec::new();
            for (name, e) in t.vars {
                pairs.push((VarId::new(&name).map_err(D::Error::custom)?, e));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::BadCoefficient(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (named, _, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || named.is_empty() {
                parts.push(abs.to_string());
            }
            for (name, e) in named {
                parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl From<VarId> for Poly {
    fn from(v: VarId) -> Self {
        Poly::var(v)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |a, b| a * b)
    }
}

type FamilyRule = Arc<dyn Fn(&[usize]) -> Option<Poly> + Send + Sync>;

/// A simultaneous substitution: explicit variable images plus rules that
/// assign every member of an indexed family by looking at its indices.
/// Variables matched by neither pass through unchanged.
#[derive(Clone, Default)]
pub struct Assignment {
    explicit: HashMap<VarId, Poly>,
    rules: Vec<(String, FamilyRule)>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, v: VarId, image: impl Into<Poly>) -> Self {
        self.explicit.insert(v, image.into());
        self
    }

    /// `set` by name; panics on a bad name.
    pub fn set_named(self, name: &str, image: impl Into<Poly>) -> Self {
        let v = VarId::new(name).expect("valid variable name");
        self.set(v, image)
    }

    /// Assigns `family[indices]` to `rule(indices)` wherever it returns `Some`.
    pub fn family<F>(mut self, family: &str, rule: F) -> Self
    where
        F: Fn(&[usize]) -> Option<Poly> + Send + Sync + 'static,
    {
        self.rules.push((family.to_string(), Arc::new(rule)));
        self
    }

    pub fn lookup(&self, v: VarId) -> Option<Poly> {
        if let Some(p) = self.explicit.get(&v) {
            return Some(p.clone());
        }
        if self.rules.is_empty() {
            return None;
        }
        let info = v.info();
        self.rules
            .iter()
            .filter(|(fam, _)| *fam == info.family)
            .find_map(|(_, rule)| rule(&info.indices))
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Assignment")
            .field("explicit", &self.explicit)
            .field("families", &self.rules.iter().map(|(n, _)| n).collect::<Vec<_>>())
            .finish()
    }
}

/// Integer value of a constant polynomial, if it is one.
pub fn as_integer(p: &Poly) -> Option<i64> {
    match p.len() {
        0 => Some(0),
        1 => {
            let c = p.terms.get(&Monomial::one())?;
            if c.is_integer() {
                c.to_integer().to_i64()
            } else {
                None
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(name: &str) -> Poly {
        Poly::named(name)
    }

    #[test]
    fn arithmetic_examples() {
        let t = v("t");
        let one = Poly::one();
        assert_eq!((&one + &t).pow(2), &one + &(&t * &Poly::int(2)) + t.pow(2));
        assert_eq!(t.pow(0), Poly::one());
        let (l, y) = (v("lam"), v("y"));
        let lhs = (&l + &one) * (&y + &one);
        assert_eq!(lhs, &(&l * &y) + &l + &y + one);
    }

    #[test]
    fn names_follow_grammar() {
        assert!(VarId::new("a[2,0]").is_ok());
        assert_eq!(VarId::new("a[2, 0]").unwrap(), VarId::indexed("a", &[2, 0]));
        assert_eq!(VarId::indexed("e", &[3]).name(), "e[3]");
        assert_eq!(VarId::new("b[1,4]").unwrap().indices(), vec![1, 4]);
        for bad in ["", "1x", "a[", "a[]", "a[-1]", "a b", "a[1,]"] {
            assert!(VarId::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn substitution_examples() {
        let tly = v("t") * v("lam") * v("y");
        let s = Assignment::new().set_named("lam", 1).set_named("y", 1);
        assert_eq!(tly.substitute(&s), v("t"));

        let lt = v("lam") * v("t");
        let rule = Assignment::new().family("a", move |ix| (ix[0] == 0).then(|| lt.clone()));
        assert_eq!(v("a[0,3]").substitute(&rule), v("lam") * v("t"));
        assert_eq!(v("a[1,3]").substitute(&rule), v("a[1,3]"));

        let p = (v("lam") + Poly::int(2)) * (v("y") + Poly::int(2));
        let s = Assignment::new().set_named("y", v("lam"));
        assert_eq!(p.substitute(&s), (v("lam") + Poly::int(2)).pow(2));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let p = v("x") * v("y").pow(2);
        let s = Assignment::new().set_named("x", v("y")).set_named("y", v("x"));
        assert_eq!(p.substitute(&s), v("y") * v("x").pow(2));
    }

    #[test]
    fn extraction_examples() {
        let t = VarId::new("t").unwrap();
        let p = Poly::one() + Poly::int(4) * Poly::var(t) + Poly::var(t).pow(2);
        assert_eq!(p.coefficient_of(t, 1), Poly::int(4));
        assert_eq!((Poly::var(t).pow(2) * v("lam")).degree(t), 2);
        let point: HashMap<_, _> = [(t, rat(2))].into_iter().collect();
        assert_eq!(p.eval(&point).unwrap(), rat(13));
        assert!(matches!(v("q").eval(&point), Err(PolyError::MissingValue(_))));
    }

    #[test]
    fn division_by_one_minus() {
        let t = VarId::new("t").unwrap();
        let tp = Poly::var(t);
        // t^4 - t = -t(1-t)(1+t+t^2)
        let p = &tp.pow(4) - &tp;
        let q = p.div_one_minus(t).unwrap();
        assert_eq!(q, -(&tp * (Poly::one() + &tp + tp.pow(2))));
        assert!(tp.div_one_minus(t).is_err());
        let mixed = (Poly::one() - &tp) * (v("w") + &tp);
        assert_eq!(mixed.div_one_minus(t).unwrap(), v("w") + tp);
    }

    #[test]
    fn json_and_text_round_trip() {
        let p = Poly::int(3) * v("t").pow(2) * v("a[1,0]") - Poly::constant(BigRational::new(1.into(), 2.into())) + v("lam");
        let j = p.to_json();
        assert_eq!(Poly::from_json(&j).unwrap(), p);
        assert_eq!(j[0]["coeff"], "-1/2");
        assert_eq!(p.to_string(), "-1/2 + lam + 3*a[1,0]*t^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (-3i64..=3, 0u32..3, 0u32..3, 0u32..2);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            ts.into_iter()
                .map(|(c, a, b, d)| Poly::int(c) * v("x").pow(a) * v("y").pow(b) * v("z").pow(d))
                .sum()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!((&p * &q) * &r, &p * (&q * &r));
            prop_assert_eq!((&p + &q) + &r, &p + (&q + &r));
            prop_assert_eq!(&p * (&q + &r), &p * &q + &p * &r);
            prop_assert!((&p - &p).is_zero());
            prop_assert_eq!(&p * &Poly::one(), p.clone());
        }

        #[test]
        fn substitution_is_a_homomorphism(p in arb_poly(), q in arb_poly(), img in arb_poly()) {
            let s = Assignment::new().set_named("x", img.clone()).set_named("z", Poly::int(2));
            prop_assert_eq!((&p * &q).substitute(&s), p.substitute(&s) * q.substitute(&s));
            prop_assert_eq!((&p + &q).substitute(&s), p.substitute(&s) + q.substitute(&s));
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            prop_assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
        }
    }
}
