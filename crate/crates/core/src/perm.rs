//! Permutations of `[n]`, their symmetries, cycle structure and enumeration.
//!
//! Positions and values are 1-based throughout: `p.get(i)` is σ(i).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

/// Largest `n` enumerated unless the caller raises the limit.
pub const DEFAULT_N_MAX: usize = 9;
/// No enumeration may go past this, whatever the configuration says.
pub const HARD_N_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("value {0} appears more than once")]
    DuplicateValue(usize),
    #[error("value {value} out of range 1..={n}")]
    OutOfRange { value: String, n: usize },
    #[error("empty or malformed token {0:?}")]
    EmptyToken(String),
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    NTooLarge { n: usize, limit: usize },
}

/// A permutation σ = σ(1)σ(2)…σ(n) of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, validating it.
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v.to_string(), n });
            }
            if seen[v] {
                return Err(PermError::DuplicateValue(v));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    /// Caller guarantees `word` is a permutation of `1..=word.len()`.
    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Self::new(word.clone()).is_ok(), "not a permutation: {word:?}");
        Self { word }
    }

    pub fn identity(n: usize) -> Self {
        Self { word: (1..=n).collect() }
    }

    /// The decreasing permutation n (n-1) … 1.
    pub fn decreasing(n: usize) -> Self {
        Self { word: (1..=n).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// σ(i) for `1 <= i <= n`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { word: inv }
    }

    /// i ↦ n+1−σ(i).
    pub fn complement(&self) -> Self {
        let n = self.len();
        Self { word: self.word.iter().map(|&v| n + 1 - v).collect() }
    }

    /// i ↦ σ(n+1−i).
    pub fn reversal(&self) -> Self {
        Self { word: self.word.iter().rev().copied().collect() }
    }

    /// Reversal followed by complementation: the 180° rotation of the diagram.
    pub fn zeta(&self) -> Self {
        self.reversal().complement()
    }

    pub fn is_derangement(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v != i + 1)
    }

    pub fn cycles(&self, standard: bool) -> CycleDecomposition {
        CycleDecomposition::of(self, standard)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.word {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses whitespace- and/or comma-separated 1-based values. A single run
/// of nonzero digits such as `472589316` is read one digit per letter.
pub fn parse(text: &str) -> Result<Permutation, PermError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Permutation::identity(0));
    }
    if text.len() > 1 && text.bytes().all(|b| (b'1'..=b'9').contains(&b)) {
        return Permutation::new(text.bytes().map(|b| (b - b'0') as usize).collect());
    }
    let mut tokens = Vec::new();
    for field in text.split(',') {
        let field = field.trim();
        if field.is_empty() {
            return Err(PermError::EmptyToken(field.to_string()));
        }
        tokens.extend(field.split_whitespace());
    }
    let n = tokens.len();
    let mut word = Vec::with_capacity(n);
    for tok in tokens {
        let v: usize = tok.parse().map_err(|_| PermError::EmptyToken(tok.to_string()))?;
        if v == 0 || v > n {
            return Err(PermError::OutOfRange { value: tok.to_string(), n });
        }
        word.push(v);
    }
    Permutation::new(word)
}

/// Disjoint-cycle factorization of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub standard: bool,
}

impl CycleDecomposition {
    /// Each cycle starts at its smallest element. Cycles are ordered by
    /// increasing leader, or by decreasing leader when `standard` is set.
    pub fn of(p: &Permutation, standard: bool) -> Self {
        let n = p.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = p.get(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = p.get(x);
            }
            cycles.push(cycle);
        }
        if standard {
            cycles.reverse();
        }
        Self { cycles, standard }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn to_permutation(&self) -> Permutation {
        let n: usize = self.cycles.iter().map(Vec::len).sum();
        let mut word = vec![0; n];
        for c in &self.cycles {
            for (k, &x) in c.iter().enumerate() {
                word[x - 1] = c[(k + 1) % c.len()];
            }
        }
        Permutation::from_word_unchecked(word)
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Subsets of `S_n` that [`enumerate`] can stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermFilter {
    All,
    Derangement,
    /// Derangements without a cycle double rise.
    DerangementNoCdrise,
}

impl PermFilter {
    pub fn accepts(self, p: &Permutation) -> bool {
        match self {
            PermFilter::All => true,
            PermFilter::Derangement => p.is_derangement(),
            PermFilter::DerangementNoCdrise => {
                p.is_derangement() && !(1..=p.len()).any(|i| is_cdrise(p, i))
            }
        }
    }
}

fn is_cdrise(p: &Permutation, i: usize) -> bool {
    let j = p.word().iter().position(|&v| v == i).unwrap() + 1;
    j < i && i < p.get(i)
}

/// Lexicographic successor of `word` in place; false at the last permutation.
fn next_lex(word: &mut [usize]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Lexicographic stream over a block of `S_n` sharing a fixed first letter
/// (or all of `S_n`).
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
    /// Number of leading letters held fixed.
    frozen: usize,
    filter: PermFilter,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            let cur = self.next.take()?;
            let mut succ = cur.clone();
            if next_lex(&mut succ[self.frozen..]) {
                self.next = Some(succ);
            }
            let p = Permutation::from_word_unchecked(cur);
            if self.filter.accepts(&p) {
                return Some(p);
            }
        }
    }
}

fn check_n(n: usize, limit: usize) -> Result<(), PermError> {
    let limit = limit.min(HARD_N_MAX);
    if n > limit {
        Err(PermError::NTooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Streams `S_n` (or a filtered subset) in lexicographic order, `n <= DEFAULT_N_MAX`.
pub fn enumerate(n: usize, filter: PermFilter) -> Result<Permutations, PermError> {
    enumerate_with_limit(n, filter, DEFAULT_N_MAX)
}

pub fn enumerate_with_limit(
    n: usize,
    filter: PermFilter,
    limit: usize,
) -> Result<Permutations, PermError> {
    check_n(n, limit)?;
    Ok(Permutations { next: Some((1..=n).collect()), frozen: 0, filter })
}

/// The lexicographic block of `S_n` whose first letter is `first`.
pub fn enumerate_prefix(n: usize, first: usize, filter: PermFilter) -> Permutations {
    assert!((1..=n).contains(&first), "prefix {first} outside 1..={n}");
    let mut word = vec![first];
    word.extend((1..=n).filter(|&v| v != first));
    Permutations { next: Some(word), frozen: 1, filter }
}

/// Map-reduce over a subset of `S_n`, parallel across first-letter blocks.
///
/// Blocks are reduced in increasing first-letter order, so any
/// order-sensitive `reduce` still sees lexicographic order.
pub fn par_map_reduce<T, M, R>(
    n: usize,
    filter: PermFilter,
    identity: impl Fn() -> T + Sync + Send,
    map: M,
    reduce: R,
) -> T
where
    T: Send,
    M: Fn(T, &Permutation) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    if n < 2 {
        let perms = Permutations { next: Some((1..=n).collect()), frozen: 0, filter };
        return perms.fold(identity(), |acc, p| map(acc, &p));
    }
    let blocks: Vec<T> = (1..=n)
        .into_par_iter()
        .map(|first| enumerate_prefix(n, first, filter).fold(identity(), |acc, p| map(acc, &p)))
        .collect();
    blocks.into_iter().fold(identity(), reduce)
}

/// The lexicographically least permutation of a filtered `S_n` failing `ok`.
pub fn par_first_failure<F>(n: usize, filter: PermFilter, ok: F) -> Option<Permutation>
where
    F: Fn(&Permutation) -> bool + Sync + Send,
{
    if n < 2 {
        let mut perms = Permutations { next: Some((1..=n).collect()), frozen: 0, filter };
        return perms.find(|p| !ok(p));
    }
    (1..=n)
        .into_par_iter()
        .map(|first| enumerate_prefix(n, first, filter).find(|p| !ok(p)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("2 3 1 4 6 8 7 5").unwrap(), p(&[2, 3, 1, 4, 6, 8, 7, 5]));
        assert_eq!(parse("1").unwrap(), p(&[1]));
        assert_eq!(parse("3,1, 2").unwrap(), p(&[3, 1, 2]));
        assert_eq!(parse("2 2 1"), Err(PermError::DuplicateValue(2)));
        assert!(matches!(parse("1 4 2"), Err(PermError::OutOfRange { ref value, .. }) if value == "4"));
        assert!(matches!(parse("1 x 2"), Err(PermError::EmptyToken(ref t)) if t == "x"));
        assert!(matches!(parse("1,,2"), Err(PermError::EmptyToken(_))));
        assert!(matches!(parse("1,2,"), Err(PermError::EmptyToken(_))));
        assert_eq!(parse("").unwrap().len(), 0);
        assert_eq!(parse("472589316").unwrap(), p(&[4, 7, 2, 5, 8, 9, 3, 1, 6]));
        assert!(parse("4725").is_err());
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(p(&[3, 1, 2]).to_string(), "3 1 2");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(&[2, 3, 1]).inverse(), p(&[3, 1, 2]));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        let q = p(&[4, 7, 1, 8, 6, 3, 2, 5]);
        assert_eq!(q.inverse(), p(&[3, 7, 6, 1, 8, 5, 2, 4]));
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(p(&[5, 7, 1, 4, 8, 2, 6, 3]).zeta(), p(&[6, 3, 7, 1, 5, 8, 2, 4]));
        assert_eq!(Permutation::identity(6).zeta(), Permutation::identity(6));
        assert_eq!(p(&[2, 3, 1, 4]).complement(), p(&[3, 2, 4, 1]));
        assert_eq!(p(&[2, 3, 1, 4]).reversal(), p(&[4, 1, 3, 2]));
    }

    #[test]
    fn cycle_examples() {
        let s = p(&[2, 3, 1, 4, 6, 8, 7, 5]);
        let c = s.cycles(false);
        assert_eq!(c.cycles, vec![vec![1, 2, 3], vec![4], vec![5, 6, 8], vec![7]]);
        let st = s.cycles(true);
        assert_eq!(st.to_string(), "(7)(5 6 8)(4)(1 2 3)");
        assert_eq!(Permutation::identity(3).cycles(false).to_string(), "(1)(2)(3)");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(3, PermFilter::All).unwrap().count(), 6);
        assert_eq!(enumerate(4, PermFilter::Derangement).unwrap().count(), 9);
        let zero: Vec<_> = enumerate(0, PermFilter::All).unwrap().collect();
        assert_eq!(zero, vec![Permutation::identity(0)]);
        assert_eq!(enumerate(1, PermFilter::All).unwrap().count(), 1);
        assert_eq!(
            enumerate(10, PermFilter::All).unwrap_err(),
            PermError::NTooLarge { n: 10, limit: 9 }
        );
        assert!(enumerate_with_limit(13, PermFilter::All, 20).is_err());
        let mut fact = 1;
        for n in 0..=8 {
            if n > 0 {
                fact *= n;
            }
            assert_eq!(enumerate(n, PermFilter::All).unwrap().count(), fact);
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all: Vec<_> = enumerate(5, PermFilter::All).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let blocks: Vec<_> = (1..=5)
            .flat_map(|f| enumerate_prefix(5, f, PermFilter::All))
            .collect();
        assert_eq!(all, blocks);
    }

    #[test]
    fn derangement_counts_match_brute_force() {
        for n in 0..=7 {
            let brute = enumerate(n, PermFilter::All)
                .unwrap()
                .filter(|p| (1..=n).all(|i| p.get(i) != i))
                .count();
            assert_eq!(enumerate(n, PermFilter::Derangement).unwrap().count(), brute);
        }
    }

    #[test]
    fn involutions_and_cycle_round_trip_exhaustive() {
        for n in 0..=7 {
            for q in enumerate(n, PermFilter::All).unwrap() {
                assert_eq!(q.inverse().inverse(), q);
                assert_eq!(q.zeta().zeta(), q);
                assert_eq!(q.complement().complement(), q);
                assert_eq!(q.reversal().reversal(), q);
                for standard in [false, true] {
                    let c = q.cycles(standard);
                    assert_eq!(c.to_permutation(), q);
                    for cyc in &c.cycles {
                        assert_eq!(cyc[0], *cyc.iter().min().unwrap());
                    }
                    let leaders: Vec<_> = c.cycles.iter().map(|c| c[0]).collect();
                    if standard {
                        assert!(leaders.windows(2).all(|w| w[0] > w[1]));
                    } else {
                        assert!(leaders.windows(2).all(|w| w[0] < w[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_reduce_matches_sequential() {
        let count = par_map_reduce(6, PermFilter::Derangement, || 0usize, |a, _| a + 1, |a, b| a + b);
        assert_eq!(count, 265);
        let first = par_first_failure(5, PermFilter::All, |q| q.get(1) < 3);
        assert_eq!(first, Some(p(&[3, 1, 2, 4, 5])));
    }
}
