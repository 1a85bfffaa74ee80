//! Coarse permutation statistics: the descent/excedance family, records,
//! the cycle classification and the boundary-dependent linear classification.
//!
//! Index-valued statistics (`des2`, `pex`, records, cycle types) return
//! positions; linear classes (`peak`, `dasc`, `fmax`, ...) return values.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatError {
    #[error("{stat} is not defined under the {boundary} boundary convention")]
    BoundaryMismatch { stat: Stat, boundary: Boundary },
    #[error("unknown statistic {0:?}")]
    UnknownStat(String),
}

macro_rules! stats {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Every scalar statistic this crate computes.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Stat { $($variant),* }

        impl Stat {
            pub const ALL: &'static [Stat] = &[$(Stat::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Stat::$variant => $name),* }
            }
        }

        impl FromStr for Stat {
            type Err = StatError;
            fn from_str(s: &str) -> Result<Self, StatError> {
                match s {
                    $($name => Ok(Stat::$variant),)*
                    _ => Err(StatError::UnknownStat(s.to_string())),
                }
            }
        }
    };
}

stats! {
    Des => "des", Asc => "asc", Exc => "exc", Drop => "drop",
    Des2 => "des2", Asc2 => "asc2", Pex => "pex", Pdrop => "pdrop",
    Cyc => "cyc", Fix => "fix", Pcyc => "pcyc", Ear => "ear",
    Rec => "rec", Arec => "arec", Erec => "erec", Earec => "earec", Lrm => "lrm",
    Fmax => "fmax", Fmin => "fmin",
    Peak => "peak", Val => "val", Dasc => "dasc", Ddes => "ddes",
    Cval => "cval", Cpeak => "cpeak", Cdrise => "cdrise", Cdfall => "cdfall",
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Descent indexes `i ∈ [1, n-1]` with σ(i) > σ(i+1).
pub fn des_set(p: &Permutation) -> Vec<usize> {
    (1..p.len()).filter(|&i| p.get(i) > p.get(i + 1)).collect()
}

pub fn exc_set(p: &Permutation) -> Vec<usize> {
    (1..=p.len()).filter(|&i| p.get(i) > i).collect()
}

pub fn drop_set(p: &Permutation) -> Vec<usize> {
    (1..=p.len()).filter(|&i| p.get(i) < i).collect()
}

/// Descents whose top exceeds every earlier letter.
pub fn des2_set(p: &Permutation) -> Vec<usize> {
    let mut out = Vec::new();
    let mut max_before = 0;
    for i in 1..p.len() {
        let v = p.get(i);
        if v > max_before && v > p.get(i + 1) {
            out.push(i);
        }
        max_before = max_before.max(v);
    }
    out
}

/// Excedances `i` with no earlier value landing in `[i, σ(i)]`.
pub fn pex_set(p: &Permutation) -> Vec<usize> {
    (1..=p.len())
        .filter(|&i| {
            let v = p.get(i);
            v > i && (1..i).all(|j| !(i..=v).contains(&p.get(j)))
        })
        .collect()
}

/// Drops `i` with no later value landing in `[σ(i), i]`.
pub fn pdrop_set(p: &Permutation) -> Vec<usize> {
    let n = p.len();
    (1..=n)
        .filter(|&i| {
            let v = p.get(i);
            v < i && (i + 1..=n).all(|j| !(v..=i).contains(&p.get(j)))
        })
        .collect()
}

/// The five-way cycle classification of an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleType {
    Cval,
    Cpeak,
    Cdrise,
    Cdfall,
    Fix,
}

impl CycleType {
    /// Classifies `i` by comparing σ⁻¹(i), i and σ(i).
    pub fn of(pred: usize, i: usize, succ: usize) -> Self {
        use std::cmp::Ordering::*;
        match (pred.cmp(&i), succ.cmp(&i)) {
            (Equal, _) | (_, Equal) => CycleType::Fix,
            (Greater, Greater) => CycleType::Cval,
            (Less, Less) => CycleType::Cpeak,
            (Less, Greater) => CycleType::Cdrise,
            (Greater, Less) => CycleType::Cdfall,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct CycleTypes {
    pub cval: Vec<usize>,
    pub cpeak: Vec<usize>,
    pub cdrise: Vec<usize>,
    pub cdfall: Vec<usize>,
    pub fix: Vec<usize>,
}

pub fn cycle_type_of(p: &Permutation, inv: &Permutation, i: usize) -> CycleType {
    CycleType::of(inv.get(i), i, p.get(i))
}

pub fn cycle_classify(p: &Permutation) -> CycleTypes {
    let inv = p.inverse();
    let mut out = CycleTypes::default();
    for i in 1..=p.len() {
        let bucket = match cycle_type_of(p, &inv, i) {
            CycleType::Cval => &mut out.cval,
            CycleType::Cpeak => &mut out.cpeak,
            CycleType::Cdrise => &mut out.cdrise,
            CycleType::Cdfall => &mut out.cdfall,
            CycleType::Fix => &mut out.fix,
        };
        bucket.push(i);
    }
    out
}

/// Record-type index sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Records {
    /// Left-to-right maxima.
    pub rec: Vec<usize>,
    /// Right-to-left minima.
    pub arec: Vec<usize>,
    pub erec: Vec<usize>,
    pub earec: Vec<usize>,
    /// Left-to-right minima.
    pub lrm: Vec<usize>,
}

pub fn records(p: &Permutation) -> Records {
    let n = p.len();
    let mut is_rec = vec![false; n + 1];
    let mut is_arec = vec![false; n + 1];
    let mut is_lrm = vec![false; n + 1];
    let (mut max, mut min) = (0, usize::MAX);
    for i in 1..=n {
        let v = p.get(i);
        is_rec[i] = v > max;
        is_lrm[i] = v < min;
        max = max.max(v);
        min = min.min(v);
    }
    let mut min_after = usize::MAX;
    for i in (1..=n).rev() {
        let v = p.get(i);
        is_arec[i] = v < min_after;
        min_after = min_after.min(v);
    }
    let pick = |f: &dyn Fn(usize) -> bool| (1..=n).filter(|&i| f(i)).collect::<Vec<_>>();
    Records {
        rec: pick(&|i| is_rec[i]),
        arec: pick(&|i| is_arec[i]),
        erec: pick(&|i| is_rec[i] && !is_arec[i]),
        earec: pick(&|i| is_arec[i] && !is_rec[i]),
        lrm: pick(&|i| is_lrm[i]),
    }
}

/// Exclusive antirecords that are also cycle peaks (`Earec ∩ Cpeak`).
pub fn ear_set(p: &Permutation) -> Vec<usize> {
    let earec = records(p).earec;
    let cpeak = cycle_classify(p).cpeak;
    earec.into_iter().filter(|i| cpeak.contains(i)).collect()
}

/// Cycle peaks with no lower nesting: no later position holds a smaller value.
///
/// Equal to [`ear_set`] on every permutation; kept separate so the two
/// readings can be checked against each other.
pub fn ear_set_by_lnest(p: &Permutation) -> Vec<usize> {
    let n = p.len();
    cycle_classify(p)
        .cpeak
        .into_iter()
        .filter(|&i| (i + 1..=n).all(|l| p.get(l) > p.get(i)))
        .collect()
}

/// Padding placed around a word before linear classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// σ(0)=0, σ(n+1)=∞.
    ZeroInf,
    /// σ(0)=∞, σ(n+1)=0.
    InfZero,
    /// σ(0)=0, σ(n+1)=n+1. Classifies identically to `ZeroInf`.
    ZeroNPlusOne,
}

impl Boundary {
    fn pads_zero_left(self) -> bool {
        matches!(self, Boundary::ZeroInf | Boundary::ZeroNPlusOne)
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::ZeroInf => "0-inf",
            Boundary::InfZero => "inf-0",
            Boundary::ZeroNPlusOne => "0-(n+1)",
        })
    }
}

/// Value sets of the linear classification under one boundary convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSets {
    pub boundary: Boundary,
    pub peak: Vec<usize>,
    pub valley: Vec<usize>,
    pub dasc: Vec<usize>,
    pub ddes: Vec<usize>,
    fmax: Vec<usize>,
    arda: Vec<usize>,
    fmin: Vec<usize>,
    asc2: Vec<usize>,
}

impl LinearSets {
    /// Foremaxima: double ascents that are records (zero-left boundaries only).
    pub fn fmax(&self) -> Result<&[usize], StatError> {
        self.require(Stat::Fmax, self.boundary.pads_zero_left())?;
        Ok(&self.fmax)
    }

    /// Antirecord double ascents (zero-left boundaries only).
    pub fn arda(&self) -> Result<&[usize], StatError> {
        self.require(Stat::Dasc, self.boundary.pads_zero_left())?;
        Ok(&self.arda)
    }

    /// Foreminima: double descents that are left-to-right minima (∞–0 only).
    pub fn fmin(&self) -> Result<&[usize], StatError> {
        self.require(Stat::Fmin, self.boundary == Boundary::InfZero)?;
        Ok(&self.fmin)
    }

    /// Ascent indexes whose letter is a left-to-right minimum (∞–0 only).
    pub fn asc2(&self) -> Result<&[usize], StatError> {
        self.require(Stat::Asc2, self.boundary == Boundary::InfZero)?;
        Ok(&self.asc2)
    }

    /// Letters followed by a larger letter, the right boundary included.
    ///
    /// Under a zero-left boundary this is one more than the plain ascent
    /// count for n ≥ 1, and it is the exponent that makes the linear
    /// generating function `Σ t^(asc−fmax) …` polynomial.
    pub fn asc(&self) -> usize {
        self.valley.len() + self.dasc.len()
    }

    fn require(&self, stat: Stat, ok: bool) -> Result<(), StatError> {
        if ok {
            Ok(())
        } else {
            Err(StatError::BoundaryMismatch { stat, boundary: self.boundary })
        }
    }
}

pub fn linear_classify(p: &Permutation, boundary: Boundary) -> LinearSets {
    let n = p.len();
    let big = n + 1;
    let (left, right) = if boundary.pads_zero_left() { (0, big) } else { (big, 0) };
    let at = |i: usize| if i == 0 { left } else if i == n + 1 { right } else { p.get(i) };
    let mut out = LinearSets {
        boundary,
        peak: vec![],
        valley: vec![],
        dasc: vec![],
        ddes: vec![],
        fmax: vec![],
        arda: vec![],
        fmin: vec![],
        asc2: vec![],
    };
    let recs = records(p);
    let (mut max, mut min) = (0, usize::MAX);
    for i in 1..=n {
        let (a, v, b) = (at(i - 1), p.get(i), at(i + 1));
        let is_rec = v > max;
        let is_lrm = v < min;
        max = max.max(v);
        min = min.min(v);
        match (a < v, v < b) {
            (true, true) => {
                out.dasc.push(v);
                if is_rec {
                    out.fmax.push(v);
                }
                if recs.arec.contains(&i) {
                    out.arda.push(v);
                }
            }
            (false, false) => {
                out.ddes.push(v);
                if is_lrm {
                    out.fmin.push(v);
                }
            }
            (true, false) => out.peak.push(v),
            (false, true) => out.valley.push(v),
        }
        if i < n && v < p.get(i + 1) && is_lrm {
            out.asc2.push(i);
        }
    }
    for s in [&mut out.peak, &mut out.valley, &mut out.dasc, &mut out.ddes, &mut out.fmax, &mut out.arda, &mut out.fmin] {
        s.sort_unstable();
    }
    out
}

/// All scalar statistics of one permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatVector {
    values: [usize; Stat::ALL.len()],
}

impl StatVector {
    pub fn of(p: &Permutation) -> Self {
        let n = p.len();
        let ct = cycle_classify(p);
        let recs = records(p);
        let zi = linear_classify(p, Boundary::ZeroInf);
        let iz = linear_classify(p, Boundary::InfZero);
        let cyc = p.cycles(false).len();
        let des = des_set(p).len();
        let mut v = [0usize; Stat::ALL.len()];
        let mut set = |s: Stat, x: usize| v[s as usize] = x;
        set(Stat::Des, des);
        set(Stat::Asc, n.saturating_sub(1) - des);
        set(Stat::Exc, ct.cval.len() + ct.cdrise.len());
        set(Stat::Drop, ct.cpeak.len() + ct.cdfall.len());
        set(Stat::Des2, des2_set(p).len());
        set(Stat::Asc2, iz.asc2.len());
        set(Stat::Pex, pex_set(p).len());
        set(Stat::Pdrop, pdrop_set(p).len());
        set(Stat::Cyc, cyc);
        set(Stat::Fix, ct.fix.len());
        set(Stat::Pcyc, cyc - ct.fix.len());
        set(Stat::Ear, ear_set(p).len());
        set(Stat::Rec, recs.rec.len());
        set(Stat::Arec, recs.arec.len());
        set(Stat::Erec, recs.erec.len());
        set(Stat::Earec, recs.earec.len());
        set(Stat::Lrm, recs.lrm.len());
        set(Stat::Fmax, zi.fmax.len());
        set(Stat::Fmin, iz.fmin.len());
        set(Stat::Peak, zi.peak.len());
        set(Stat::Val, zi.valley.len());
        set(Stat::Dasc, zi.dasc.len());
        set(Stat::Ddes, zi.ddes.len());
        set(Stat::Cval, ct.cval.len());
        set(Stat::Cpeak, ct.cpeak.len());
        set(Stat::Cdrise, ct.cdrise.len());
        set(Stat::Cdfall, ct.cdfall.len());
        Self { values: v }
    }

    pub fn get(&self, s: Stat) -> usize {
        self.values[s as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Stat, usize)> + '_ {
        Stat::ALL.iter().map(move |&s| (s, self.get(s)))
    }
}

impl std::ops::Index<Stat> for StatVector {
    type Output = usize;
    fn index(&self, s: Stat) -> &usize {
        &self.values[s as usize]
    }
}

impl serde::Serialize for StatVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(Stat::ALL.len()))?;
        for (stat, v) in self.iter() {
            map.serialize_entry(stat.name(), &v)?;
        }
        map.end()
    }
}

pub fn stat_vector(p: &Permutation) -> StatVector {
    StatVector::of(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate, PermFilter};

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    const SIGMA: [usize; 8] = [2, 3, 1, 4, 6, 8, 7, 5];

    #[test]
    fn descent_family_examples() {
        let s = p(&SIGMA);
        assert_eq!(des2_set(&s), vec![2, 6]);
        assert_eq!(pex_set(&s), vec![1, 5]);
        assert_eq!(pdrop_set(&s), vec![3, 8]);
        let id = Permutation::identity(6);
        assert!(des2_set(&id).is_empty());
        assert!(pex_set(&id).is_empty());
        assert!(pdrop_set(&id).is_empty());
        assert_eq!(des2_set(&Permutation::decreasing(5)), vec![1]);
        assert_eq!(pex_set(&p(&[2, 1])), vec![1]);
        assert_eq!(pdrop_set(&p(&[2, 1])), vec![2]);
    }

    #[test]
    fn cycle_classification_examples() {
        let s = p(&[2, 3, 1, 4, 7, 8, 6, 5]);
        assert_eq!(cycle_classify(&s).cpeak, vec![3, 7, 8]);
        let id = cycle_classify(&Permutation::identity(4));
        assert_eq!(id.fix, vec![1, 2, 3, 4]);
        assert!(id.cval.is_empty() && id.cpeak.is_empty());
        let two = cycle_classify(&p(&[2, 1]));
        assert_eq!(two.cval, vec![1]);
        assert_eq!(two.cpeak, vec![2]);
    }

    #[test]
    fn record_examples() {
        let s = p(&[2, 3, 1, 4, 7, 8, 6, 5]);
        assert_eq!(records(&s).earec, vec![3, 8]);
        assert_eq!(ear_set(&s), vec![3, 8]);
        let id = records(&Permutation::identity(5));
        assert_eq!(id.rec, vec![1, 2, 3, 4, 5]);
        assert_eq!(id.arec, id.rec);
        assert!(id.erec.is_empty() && id.earec.is_empty());
        let r = records(&p(&[3, 1, 2]));
        assert_eq!(r.rec, vec![1]);
        assert_eq!(r.arec, vec![2, 3]);
        assert_eq!(r.earec, vec![2, 3]);
        assert_eq!(r.lrm, vec![1, 2]);
        assert!(ear_set(&Permutation::identity(4)).is_empty());
        assert_eq!(ear_set(&p(&[2, 1])), vec![2]);
    }

    #[test]
    fn linear_examples() {
        let s = p(&[3, 4, 2, 1, 5, 8, 7, 6]);
        let l = linear_classify(&s, Boundary::ZeroInf);
        assert_eq!((l.dasc.len(), l.ddes.len(), l.peak.len(), l.valley.len()), (2, 2, 2, 2));
        assert_eq!(l.fmax().unwrap(), &[3, 5]);
        let id = linear_classify(&Permutation::identity(5), Boundary::ZeroInf);
        assert_eq!(id.dasc.len(), 5);
        assert_eq!(id.fmax().unwrap().len(), 5);
        let s = p(&[4, 7, 2, 5, 8, 9, 3, 1, 6]);
        let l = linear_classify(&s, Boundary::ZeroNPlusOne);
        assert_eq!(l.fmax().unwrap(), &[4, 8]);
    }

    #[test]
    fn boundary_mismatch_is_an_error() {
        let s = p(&[2, 1, 3]);
        let zi = linear_classify(&s, Boundary::ZeroInf);
        assert_eq!(
            zi.fmin().unwrap_err(),
            StatError::BoundaryMismatch { stat: Stat::Fmin, boundary: Boundary::ZeroInf }
        );
        assert!(zi.asc2().is_err());
        let iz = linear_classify(&s, Boundary::InfZero);
        assert!(iz.fmax().is_err());
        assert!(iz.arda().is_err());
        assert!(iz.fmin().is_ok());
    }

    #[test]
    fn stat_vector_examples() {
        let v = stat_vector(&p(&SIGMA));
        assert_eq!(
            [v[Stat::Des2], v[Stat::Pex], v[Stat::Pdrop], v[Stat::Cyc], v[Stat::Fix], v[Stat::Pcyc]],
            [2, 2, 2, 4, 2, 2]
        );
        let v = stat_vector(&Permutation::identity(4));
        assert_eq!([v[Stat::Exc], v[Stat::Des], v[Stat::Cyc], v[Stat::Fix], v[Stat::Pcyc]], [0, 0, 4, 4, 0]);
        let v = stat_vector(&p(&[2, 1, 4, 3]));
        assert_eq!([v[Stat::Exc], v[Stat::Cyc], v[Stat::Fix], v[Stat::Pcyc], v[Stat::Pex]], [2, 2, 0, 2, 2]);
        let empty = stat_vector(&Permutation::identity(0));
        assert!(empty.iter().all(|(_, x)| x == 0));
    }

    #[test]
    fn stat_vector_json_is_flat() {
        let json = serde_json::to_value(stat_vector(&p(&SIGMA))).unwrap();
        assert_eq!(json["des2"], 2);
        assert_eq!(json["pcyc"], 2);
        assert_eq!(json.as_object().unwrap().len(), Stat::ALL.len());
    }

    #[test]
    fn stat_names_round_trip() {
        for &s in Stat::ALL {
            assert_eq!(s.name().parse::<Stat>().unwrap(), s);
        }
        assert!("bogus".parse::<Stat>().is_err());
    }

    #[test]
    fn coarse_identities_exhaustive() {
        for n in 0..=8 {
            for s in enumerate(n, PermFilter::All).unwrap() {
                let v = stat_vector(&s);
                let z = stat_vector(&s.zeta());
                let c = s.complement();
                let iz = linear_classify(&c, Boundary::InfZero);
                assert_eq!(v[Stat::Exc], stat_vector(&s.inverse())[Stat::Drop]);
                assert_eq!(v[Stat::Des], v[Stat::Peak] + v[Stat::Ddes]);
                assert_eq!(v[Stat::Des], v[Stat::Val] + v[Stat::Ddes]);
                assert_eq!(v[Stat::Exc], v[Stat::Cval] + v[Stat::Cdrise]);
                assert_eq!(v[Stat::Drop], v[Stat::Cpeak] + v[Stat::Cdfall]);
                assert_eq!(n, v[Stat::Cval] + v[Stat::Cpeak] + v[Stat::Cdrise] + v[Stat::Cdfall] + v[Stat::Fix]);
                assert_eq!(v[Stat::Pcyc] + v[Stat::Fix], v[Stat::Cyc]);
                assert_eq!(
                    (v[Stat::Drop], v[Stat::Pdrop], v[Stat::Fix]),
                    (z[Stat::Exc], z[Stat::Pex], z[Stat::Fix])
                );
                assert_eq!(v[Stat::Des2] + v[Stat::Fmax], v[Stat::Rec]);
                let cv = stat_vector(&c);
                assert_eq!(
                    (v[Stat::Des2], v[Stat::Des], v[Stat::Fmax], v[Stat::Rec]),
                    (cv[Stat::Asc2], cv[Stat::Asc], cv[Stat::Fmin], cv[Stat::Lrm])
                );
                assert_eq!(iz.asc2().unwrap().len(), cv[Stat::Asc2]);
                assert_eq!(ear_set(&s), ear_set_by_lnest(&s));
            }
        }
    }
}
