//! Bijections on `S_n`: the Foata-type map φ and its complement ϕ, the
//! biword maps Φ₁ and Φ_SZ, the block-building inverse of Φ₁, Φ₂ = ζ∘Φ_SZ,
//! and the modified valley-hopping action with its orbits.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::perm::Permutation;
use crate::refined::{pattern_31_2, RefinedProfile};
use crate::stats::{linear_classify, Boundary};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BijectionError {
    #[error("no eligible entry left for letter {letter} (wanted rank {rank})")]
    ConstructionFailure { letter: usize, rank: usize },
    #[error("letter {letter} refers to uncomplete block #{block}, which does not exist")]
    MalformedBlocks { letter: usize, block: usize },
}

/// φ: drop the parentheses of the standard cycle factorization.
pub fn foata_phi(p: &Permutation) -> Permutation {
    let word: Vec<usize> = p.cycles(true).cycles.into_iter().flatten().collect();
    Permutation::from_word_unchecked(word)
}

/// ϕ = complement ∘ φ.
pub fn foata_varphi(p: &Permutation) -> Permutation {
    foata_phi(p).complement()
}

/// Two-row array; column `k` is `(top[k], bottom[k])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Biword {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl Biword {
    /// Reads the bottom row after sorting columns by the top row.
    pub fn to_permutation(&self) -> Permutation {
        let mut cols: Vec<(usize, usize)> = self.top.iter().copied().zip(self.bottom.iter().copied()).collect();
        cols.sort_unstable();
        Permutation::new(cols.into_iter().map(|(_, b)| b).collect()).expect("biword columns form a permutation")
    }
}

impl fmt::Display for Biword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[usize]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "({} / {})", row(&self.top), row(&self.bottom))
    }
}

/// Intermediate state of Φ₁ or Φ_SZ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiwordTrace {
    pub f_set: Vec<usize>,
    pub f_prime_set: Vec<usize>,
    pub g_set: Vec<usize>,
    pub g_prime_set: Vec<usize>,
    /// (31-2) of every value, indexed by `value - 1`.
    pub pattern_31_2: Vec<usize>,
    pub f: Biword,
    pub g: Biword,
    pub result: Permutation,
}

/// Which way the biword builder looks for partners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Orientation {
    /// Φ₁: top row of f = descent bottoms; f-partners lie above, g-partners at or below.
    Above,
    /// Φ_SZ: top row of f = descent tops; f-partners lie below, g-partners at or above.
    Below,
}

fn complement_of(set: &[usize], n: usize) -> Vec<usize> {
    let mut mark = vec![false; n + 1];
    for &x in set {
        mark[x] = true;
    }
    (1..=n).filter(|&x| !mark[x]).collect()
}

/// Removes and returns the `rank`-th (0-based) element of `pool` in the
/// given direction among those passing `eligible`.
fn take_ranked(
    pool: &mut Vec<usize>,
    largest_first: bool,
    rank: usize,
    letter: usize,
    eligible: impl Fn(usize) -> bool,
) -> Result<usize, BijectionError> {
    let mut idx: Vec<usize> = (0..pool.len()).filter(|&k| eligible(pool[k])).collect();
    if largest_first {
        idx.reverse();
    }
    let &k = idx.get(rank).ok_or(BijectionError::ConstructionFailure { letter, rank: rank + 1 })?;
    Ok(pool.remove(k))
}

fn build(p: &Permutation, orient: Orientation) -> Result<BiwordTrace, BijectionError> {
    let n = p.len();
    let (mut tops, mut bottoms) = (vec![], vec![]);
    for i in 1..n {
        if p.get(i) > p.get(i + 1) {
            tops.push(p.get(i));
            bottoms.push(p.get(i + 1));
        }
    }
    tops.sort_unstable();
    bottoms.sort_unstable();
    let (f_set, f_prime_set) = match orient {
        Orientation::Above => (bottoms, tops),
        Orientation::Below => (tops, bottoms),
    };
    let g_set = complement_of(&f_set, n);
    let g_prime_set = complement_of(&f_prime_set, n);
    let k31 = pattern_31_2(p);

    let mut fp = f_prime_set.clone();
    let mut f_bottom = vec![0; f_set.len()];
    let mut gp = g_prime_set.clone();
    let mut g_bottom = vec![0; g_set.len()];
    let above = orient == Orientation::Above;

    // f: partners on the far side of j, processed from the far end inward.
    let f_order: Vec<usize> = if above { (0..f_set.len()).rev().collect() } else { (0..f_set.len()).collect() };
    for k in f_order {
        let j = f_set[k];
        let rank = k31[j - 1];
        f_bottom[k] = take_ranked(&mut fp, true, rank, j, |x| if above { x > j } else { x < j })?;
    }
    let g_order: Vec<usize> = if above { (0..g_set.len()).collect() } else { (0..g_set.len()).rev().collect() };
    for k in g_order {
        let j = g_set[k];
        let rank = k31[j - 1];
        g_bottom[k] = take_ranked(&mut gp, false, rank, j, |x| if above { x <= j } else { x >= j })?;
    }

    let f = Biword { top: f_set.clone(), bottom: f_bottom };
    let g = Biword { top: g_set.clone(), bottom: g_bottom };
    let joined = Biword {
        top: f.top.iter().chain(&g.top).copied().collect(),
        bottom: f.bottom.iter().chain(&g.bottom).copied().collect(),
    };
    Ok(BiwordTrace {
        f_set,
        f_prime_set,
        g_set,
        g_prime_set,
        pattern_31_2: k31,
        f,
        g,
        result: joined.to_permutation(),
    })
}

pub fn phi1_trace(p: &Permutation) -> Result<BiwordTrace, BijectionError> {
    build(p, Orientation::Above)
}

pub fn phi1(p: &Permutation) -> Result<Permutation, BijectionError> {
    Ok(phi1_trace(p)?.result)
}

pub fn phi_sz_trace(p: &Permutation) -> Result<BiwordTrace, BijectionError> {
    build(p, Orientation::Below)
}

pub fn phi_sz(p: &Permutation) -> Result<Permutation, BijectionError> {
    Ok(phi_sz_trace(p)?.result)
}

/// Φ₂ = ζ ∘ Φ_SZ.
pub fn phi2(p: &Permutation) -> Result<Permutation, BijectionError> {
    Ok(phi_sz(p)?.zeta())
}

/// Role of a letter in the inverse of Φ₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterRole {
    Opener,
    Closer,
    Insider,
    Outsider,
}

/// A block under construction; `None` is the open slot ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Block(Vec<Option<usize>>);

impl Block {
    fn is_open(&self) -> bool {
        self.0.first() == Some(&None)
    }
}

fn render(blocks: &[Block]) -> String {
    blocks
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.0.iter().map(|x| x.map_or("∞".to_string(), |v| v.to_string())).collect();
            format!("({})", inner.join(","))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockStep {
    pub letter: usize,
    pub role: LetterRole,
    pub nest: usize,
    pub blocks: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseTrace {
    pub excedances: Biword,
    pub non_excedances: Biword,
    pub steps: Vec<BlockStep>,
    pub result: Permutation,
}

pub fn phi1_inverse_trace(q: &Permutation) -> Result<InverseTrace, BijectionError> {
    let n = q.len();
    let mut exc = Biword { top: vec![], bottom: vec![] };
    let mut non = Biword { top: vec![], bottom: vec![] };
    for i in 1..=n {
        let b = if q.get(i) > i { &mut exc } else { &mut non };
        b.top.push(i);
        b.bottom.push(q.get(i));
    }
    // in_f[i]: i is an excedance position; in_fp[i]: i is an excedance value.
    let mut in_f = vec![false; n + 1];
    let mut in_fp = vec![false; n + 1];
    for (&a, &b) in exc.top.iter().zip(&exc.bottom) {
        in_f[a] = true;
        in_fp[b] = true;
    }
    let profile = RefinedProfile::of(q);
    let mut blocks: Vec<Block> = vec![];
    let mut steps = vec![];
    for i in 1..=n {
        let role = match (in_f[i], in_fp[i]) {
            (true, false) => LetterRole::Opener,
            (false, true) => LetterRole::Closer,
            (true, true) => LetterRole::Insider,
            (false, false) => LetterRole::Outsider,
        };
        let nest = profile.at(i).nest;
        // position in `blocks` of the (nest+1)-th uncomplete block
        let target = blocks.iter().enumerate().filter(|(_, b)| b.is_open()).nth(nest).map(|(k, _)| k);
        match role {
            LetterRole::Opener | LetterRole::Outsider => {
                let block = if role == LetterRole::Opener { Block(vec![None, Some(i)]) } else { Block(vec![Some(i)]) };
                blocks.insert(target.unwrap_or(blocks.len()), block);
            }
            LetterRole::Insider => {
                let k = target.ok_or(BijectionError::MalformedBlocks { letter: i, block: nest + 1 })?;
                blocks[k].0.insert(1, Some(i));
            }
            LetterRole::Closer => {
                let k = target.ok_or(BijectionError::MalformedBlocks { letter: i, block: nest + 1 })?;
                blocks[k].0[0] = Some(i);
            }
        }
        steps.push(BlockStep { letter: i, role, nest, blocks: render(&blocks) });
    }
    let mut word = Vec::with_capacity(n);
    for b in &blocks {
        for x in &b.0 {
            word.push(x.ok_or(BijectionError::MalformedBlocks { letter: n, block: 0 })?);
        }
    }
    let result = Permutation::new(word).map_err(|_| BijectionError::MalformedBlocks { letter: n, block: 0 })?;
    Ok(InverseTrace { excedances: exc, non_excedances: non, steps, result })
}

pub fn phi1_inverse(q: &Permutation) -> Result<Permutation, BijectionError> {
    Ok(phi1_inverse_trace(q)?.result)
}

/// Split points of the x-factorization `w1 w2 x w3 w4` (0-based, half-open):
/// `w2 = word[left..pos]`, `w3 = word[pos+1..right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XFactorization {
    pub left: usize,
    pub pos: usize,
    pub right: usize,
}

pub fn x_factorization(p: &Permutation, x: usize) -> XFactorization {
    let w = p.word();
    let pos = w.iter().position(|&v| v == x).expect("x is a letter of p");
    let mut left = pos;
    while left > 0 && w[left - 1] < x {
        left -= 1;
    }
    let mut right = pos + 1;
    while right < w.len() && w[right] < x {
        right += 1;
    }
    XFactorization { left, pos, right }
}

/// φ′_x under the boundary σ(0)=0, σ(n+1)=n+1: swaps w2 and w3 unless x
/// is a peak, a valley or a foremaximum.
pub fn valley_hop(p: &Permutation, x: usize) -> Permutation {
    let w = p.word();
    let n = w.len();
    let xf = x_factorization(p, x);
    let before = if xf.pos == 0 { 0 } else { w[xf.pos - 1] };
    let after = if xf.pos + 1 == n { n + 1 } else { w[xf.pos + 1] };
    let peak = before < x && x > after;
    let valley = before > x && x < after;
    let foremax = before < x && x < after && w[..xf.pos].iter().all(|&v| v < x);
    if peak || valley || foremax {
        return p.clone();
    }
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&w[..xf.left]);
    out.extend_from_slice(&w[xf.pos + 1..xf.right]);
    out.push(x);
    out.extend_from_slice(&w[xf.left..xf.pos]);
    out.extend_from_slice(&w[xf.right..]);
    Permutation::from_word_unchecked(out)
}

/// φ′_S, applying the hops in increasing order of x.
pub fn valley_hop_set(p: &Permutation, set: &[usize]) -> Permutation {
    let mut xs = set.to_vec();
    xs.sort_unstable();
    xs.dedup();
    xs.into_iter().fold(p.clone(), |acc, x| valley_hop(&acc, x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// The member without double descents.
    pub representative: Permutation,
    pub members: BTreeSet<Permutation>,
}

pub fn orbit_of(p: &Permutation) -> Orbit {
    let n = p.len();
    let mut members = BTreeSet::new();
    let mut queue = VecDeque::from([p.clone()]);
    members.insert(p.clone());
    while let Some(cur) = queue.pop_front() {
        for x in 1..=n {
            let next = valley_hop(&cur, x);
            if members.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let reps: Vec<&Permutation> =
        members.iter().filter(|m| linear_classify(m, Boundary::ZeroNPlusOne).ddes.is_empty()).collect();
    assert_eq!(reps.len(), 1, "orbit of {p} has {} double-descent-free members", reps.len());
    Orbit { representative: reps[0].clone(), members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate, parse, PermFilter};
    use crate::refined::pattern_2_31;
    use crate::stats::{cycle_classify, stat_vector, Stat};

    fn p(s: &str) -> Permutation {
        parse(s).unwrap()
    }

    #[test]
    fn foata_examples() {
        let s = p("2 3 1 4 6 8 7 5");
        assert_eq!(foata_phi(&s), p("7 5 6 8 4 1 2 3"));
        assert_eq!(foata_varphi(&s), p("2 4 3 1 5 8 7 6"));
        assert_eq!(foata_phi(&Permutation::identity(5)), Permutation::decreasing(5));
        let v = stat_vector(&foata_varphi(&s));
        assert_eq!([v[Stat::Des2], v[Stat::Des], v[Stat::Fmax], v[Stat::Rec]], [2, 4, 2, 4]);
    }

    #[test]
    fn phi1_example() {
        let tr = phi1_trace(&p("4 7 1 8 6 3 2 5")).unwrap();
        assert_eq!(tr.f_set, vec![1, 2, 3, 6]);
        assert_eq!(tr.f_prime_set, vec![3, 6, 7, 8]);
        assert_eq!(tr.g_set, vec![4, 5, 7, 8]);
        assert_eq!(tr.g_prime_set, vec![1, 2, 4, 5]);
        assert_eq!(tr.f.bottom, vec![8, 3, 6, 7]);
        assert_eq!(tr.g.bottom, vec![1, 5, 2, 4]);
        assert_eq!(tr.result, p("8 3 6 1 5 7 2 4"));
        assert_eq!(phi1(&p("1")).unwrap(), p("1"));
    }

    #[test]
    fn phi1_inverse_example() {
        let tr = phi1_inverse_trace(&p("8 3 6 1 5 7 2 4")).unwrap();
        let chain: Vec<&str> = tr.steps.iter().map(|s| s.blocks.as_str()).collect();
        assert_eq!(
            chain,
            [
                "(∞,1)",
                "(∞,1)(∞,2)",
                "(∞,1)(∞,3,2)",
                "(4)(∞,1)(∞,3,2)",
                "(4)(∞,1)(∞,3,2)(5)",
                "(4)(∞,1)(∞,6,3,2)(5)",
                "(4)(7,1)(∞,6,3,2)(5)",
                "(4)(7,1)(8,6,3,2)(5)",
            ]
        );
        assert_eq!(tr.result, p("4 7 1 8 6 3 2 5"));
    }

    #[test]
    fn phisz_example() {
        let tr = phi_sz_trace(&p("4 7 1 8 6 3 2 5")).unwrap();
        assert_eq!(tr.f.top, vec![3, 6, 7, 8]);
        assert_eq!(tr.f.bottom, vec![1, 2, 6, 3]);
        assert_eq!(tr.g.top, vec![1, 2, 4, 5]);
        assert_eq!(tr.g.bottom, vec![5, 7, 4, 8]);
        assert_eq!(tr.result, p("5 7 1 4 8 2 6 3"));
        assert_eq!(phi2(&p("4 7 1 8 6 3 2 5")).unwrap(), p("6 3 7 1 5 8 2 4"));
    }

    #[test]
    fn valley_hop_example() {
        let s = p("4 7 2 5 8 9 3 1 6");
        assert_eq!(valley_hop(&s, 3), p("4 7 2 5 8 9 1 3 6"));
        assert_eq!(valley_hop_set(&s, &[3, 4, 5]), p("4 7 5 2 8 9 1 3 6"));
        assert_eq!(valley_hop_set(&s, &[5, 3, 4, 4]), p("4 7 5 2 8 9 1 3 6"));
    }

    #[test]
    fn identity_orbit_is_trivial() {
        for n in 0..6 {
            let o = orbit_of(&Permutation::identity(n));
            assert_eq!(o.members.len(), 1);
            assert_eq!(o.representative, Permutation::identity(n));
        }
    }

    #[test]
    fn phi1_round_trip_and_transport_exhaustive() {
        for n in 0..=7 {
            for s in enumerate(n, PermFilter::All).unwrap() {
                let t = phi1(&s).unwrap();
                assert_eq!(phi1_inverse(&t).unwrap(), s, "{s}");
                let prof = RefinedProfile::of(&t);
                let (k31, k231) = (pattern_31_2(&s), pattern_2_31(&s));
                for x in 1..=n {
                    assert_eq!(prof.at(x).nest, k31[x - 1], "{s} nest at {x}");
                    assert_eq!(prof.at(x).icross, k231[x - 1], "{s} icross at {x}");
                }
                let ct = cycle_classify(&t);
                let lin = linear_classify(&s, Boundary::ZeroInf);
                assert_eq!(ct.cpeak, lin.peak);
                assert_eq!(ct.cval, lin.valley);
                assert_eq!(ct.cdrise, lin.ddes);
                let mut rest: Vec<usize> = ct.cdfall.iter().chain(&ct.fix).copied().collect();
                rest.sort_unstable();
                assert_eq!(rest, lin.dasc);
                assert_eq!(ct.fix, lin.arda().unwrap());
            }
        }
    }

    #[test]
    fn phisz_transport_exhaustive() {
        for n in 0..=7 {
            let mut image = BTreeSet::new();
            for s in enumerate(n, PermFilter::All).unwrap() {
                let t = phi_sz(&s).unwrap();
                let prof = RefinedProfile::of(&t);
                let (k31, k231) = (pattern_31_2(&s), pattern_2_31(&s));
                for x in 1..=n {
                    assert_eq!(prof.at(x).cross, k31[x - 1], "{s} cross at {x}");
                    assert_eq!(prof.at(x).nest, k231[x - 1], "{s} nest at {x}");
                }
                let (vs, vt) = (stat_vector(&s), stat_vector(&t));
                assert_eq!(
                    [vs[Stat::Des], vs[Stat::Des2], vs[Stat::Fmax]],
                    [vt[Stat::Drop], vt[Stat::Pdrop], vt[Stat::Fix]]
                );
                image.insert(t);
            }
            assert_eq!(image.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn valley_hop_is_an_involution() {
        for n in 1..=6 {
            for s in enumerate(n, PermFilter::All).unwrap() {
                let lin = linear_classify(&s, Boundary::ZeroInf);
                for x in 1..=n {
                    assert_eq!(valley_hop(&valley_hop(&s, x), x), s);
                    if lin.peak.contains(&x) {
                        assert_eq!(valley_hop(&s, x), s);
                    }
                    for y in 1..=n {
                        assert_eq!(valley_hop(&valley_hop(&s, x), y), valley_hop(&valley_hop(&s, y), x));
                    }
                }
            }
        }
    }

    use proptest::prelude::*;

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (0usize..=12).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|w| Permutation::new(w).unwrap())
    }

    proptest! {
        #[test]
        fn phi1_round_trips_up_to_12(s in arb_perm()) {
            let t = phi1(&s).unwrap();
            prop_assert_eq!(phi1_inverse(&t).unwrap(), s.clone());
            let (vs, vt) = (stat_vector(&s), stat_vector(&t));
            prop_assert_eq!((vs[Stat::Des], vs[Stat::Des2]), (vt[Stat::Exc], vt[Stat::Ear]));
        }

        #[test]
        fn phi2_transport_up_to_12(s in arb_perm()) {
            let t = phi2(&s).unwrap();
            let (vs, vt) = (stat_vector(&s), stat_vector(&t));
            prop_assert_eq!(
                (vs[Stat::Des], vs[Stat::Des2], vs[Stat::Fmax]),
                (vt[Stat::Exc], vt[Stat::Pex], vt[Stat::Fix])
            );
        }
    }
}
