//! Per-vertex crossing/nesting counts of the arc diagram, the vincular
//! pattern counts (31-2) and (2-31), and the pure valley/peak statistics.
//!
//! Every per-index quantity is indexed by `i ∈ [n]`, read both as a vertex
//! of the arc diagram and as a value of the word.

use serde::Serialize;

use crate::perm::Permutation;
use crate::stats::{cycle_type_of, linear_classify, Boundary, CycleType};

/// Refined statistics of a single vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VertexStats {
    pub index: usize,
    pub ucross: usize,
    pub unest: usize,
    pub lcross: usize,
    pub lnest: usize,
    pub lev: usize,
    pub cross: usize,
    pub nest: usize,
    pub icross: usize,
    pub p31_2: usize,
    pub p2_31: usize,
}

/// Refined statistics of every vertex of a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RefinedProfile {
    vertices: Vec<VertexStats>,
}

impl RefinedProfile {
    /// O(n²) computation used everywhere on hot paths.
    pub fn of(p: &Permutation) -> Self {
        let n = p.len();
        let inv = p.inverse();
        let p31 = pattern_31_2(p);
        let p231 = pattern_2_31(p);
        let vertices = (1..=n)
            .map(|j| {
                let s = p.get(j);
                let mut v = VertexStats { index: j, p31_2: p31[j - 1], p2_31: p231[j - 1], ..Default::default() };
                if s > j {
                    for i in 1..j {
                        let t = p.get(i);
                        if t > j && t < s {
                            v.ucross += 1;
                        } else if t > s {
                            v.unest += 1;
                        }
                    }
                } else if s < j {
                    for l in j + 1..=n {
                        let t = p.get(l);
                        if t > s && t < j {
                            v.lcross += 1;
                        } else if t < s {
                            v.lnest += 1;
                        }
                    }
                } else {
                    v.lev = (1..j).filter(|&i| p.get(i) > j).count();
                }
                assemble(&mut v, cycle_type_of(p, &inv, j));
                v
            })
            .collect();
        Self { vertices }
    }

    /// Literal quadruple/triple counting straight from the definitions, O(n⁴).
    pub fn by_quadruples(p: &Permutation) -> Self {
        let n = p.len();
        let inv = p.inverse();
        let mut vertices: Vec<VertexStats> =
            (1..=n).map(|index| VertexStats { index, ..Default::default() }).collect();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    for l in k + 1..=n {
                        if k == p.get(i) && l == p.get(j) {
                            vertices[j - 1].ucross += 1;
                        }
                        if k == p.get(j) && l == p.get(i) {
                            vertices[j - 1].unest += 1;
                        }
                        if i == p.get(k) && j == p.get(l) {
                            vertices[k - 1].lcross += 1;
                        }
                        if i == p.get(l) && j == p.get(k) {
                            vertices[k - 1].lnest += 1;
                        }
                    }
                }
                // Pseudo-nestings: triples i < j < l around a fixed point j.
                if p.get(j) == j {
                    for l in j + 1..=n {
                        if l == p.get(i) {
                            vertices[j - 1].lev += 1;
                        }
                    }
                }
            }
        }
        for x in 1..=n {
            let pos = inv.get(x);
            let v = &mut vertices[x - 1];
            v.p31_2 = (2..pos).filter(|&j| p.get(j) < x && x < p.get(j - 1)).count();
            v.p2_31 = (pos + 1..n).filter(|&j| p.get(j + 1) < x && x < p.get(j)).count();
            assemble(v, cycle_type_of(p, &inv, x));
        }
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Stats of vertex `i`, 1-based.
    pub fn at(&self, i: usize) -> &VertexStats {
        &self.vertices[i - 1]
    }

    pub fn vertices(&self) -> &[VertexStats] {
        &self.vertices
    }

    /// A per-vertex field listed in the order the values occur in `p`,
    /// i.e. the row layout of a worked-example table under the word `p`.
    pub fn row_in_word_order(&self, p: &Permutation, field: impl Fn(&VertexStats) -> usize) -> Vec<usize> {
        p.word().iter().map(|&v| field(self.at(v))).collect()
    }

    /// Upper pseudo-nestings: pairs (arc i→l, fixed point j) with i < j < l above the axis.
    pub fn upsnest(p: &Permutation) -> usize {
        let n = p.len();
        (1..=n)
            .filter(|&j| p.get(j) == j)
            .map(|j| (1..j).filter(|&i| p.get(i) > j).count())
            .sum()
    }

    /// Lower pseudo-nestings: pairs (arc l→i, fixed point j) with i < j < l below the axis.
    pub fn lpsnest(p: &Permutation) -> usize {
        let n = p.len();
        (1..=n)
            .filter(|&j| p.get(j) == j)
            .map(|j| (j + 1..=n).filter(|&l| p.get(l) < j).count())
            .sum()
    }
}

/// Fills in cross/nest/icross from the raw counts.
fn assemble(v: &mut VertexStats, kind: CycleType) {
    v.icross = match kind {
        CycleType::Cval | CycleType::Cdrise => v.ucross,
        CycleType::Cpeak | CycleType::Fix => v.lcross,
        CycleType::Cdfall => v.lcross + 1,
    };
    v.cross = match kind {
        CycleType::Cval | CycleType::Fix => v.ucross,
        CycleType::Cdrise => v.ucross + 1,
        CycleType::Cpeak | CycleType::Cdfall => v.lcross,
    };
    v.nest = match kind {
        CycleType::Cval | CycleType::Cdrise => v.unest,
        CycleType::Cpeak | CycleType::Cdfall => v.lnest,
        CycleType::Fix => v.lev,
    };
}

pub fn refined_profile(p: &Permutation) -> RefinedProfile {
    RefinedProfile::of(p)
}

/// (31-2)(x) for each value x, indexed by `x - 1`: adjacent descents
/// σ(j-1) > x > σ(j) strictly left of x, with `j >= 2`.
pub fn pattern_31_2(p: &Permutation) -> Vec<usize> {
    let n = p.len();
    let inv = p.inverse();
    let mut out = vec![0; n];
    for j in 2..=n {
        let (top, bottom) = (p.get(j - 1), p.get(j));
        // every value strictly between bottom and top that sits right of j
        for x in bottom + 1..top {
            if inv.get(x) > j {
                out[x - 1] += 1;
            }
        }
    }
    out
}

/// (2-31)(x) for each value x: adjacent descents σ(j) > x > σ(j+1)
/// strictly right of x, with `j < n`.
pub fn pattern_2_31(p: &Permutation) -> Vec<usize> {
    let n = p.len();
    let inv = p.inverse();
    let mut out = vec![0; n];
    for j in 1..n {
        let (top, bottom) = (p.get(j), p.get(j + 1));
        for x in bottom + 1..top {
            if inv.get(x) < j {
                out[x - 1] += 1;
            }
        }
    }
    out
}

/// Valleys with no (31-2) occurrence and peaks with no (2-31) occurrence,
/// classified under the 0–∞ boundary.
pub fn pval_ppeak(p: &Permutation) -> (usize, usize) {
    let lin = linear_classify(p, Boundary::ZeroInf);
    let p31 = pattern_31_2(p);
    let p231 = pattern_2_31(p);
    let pval = lin.valley.iter().filter(|&&x| p31[x - 1] == 0).count();
    let ppeak = lin.peak.iter().filter(|&&x| p231[x - 1] == 0).count();
    (pval, ppeak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate, PermFilter};
    use crate::stats::{cycle_classify, pdrop_set, pex_set};

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn phi1_example_rows() {
        let sigma = p(&[4, 7, 1, 8, 6, 3, 2, 5]);
        let rs = RefinedProfile::of(&sigma);
        assert_eq!(rs.row_in_word_order(&sigma, |v| v.p31_2), vec![0, 0, 0, 0, 1, 1, 1, 2]);
        assert_eq!(rs.row_in_word_order(&sigma, |v| v.p2_31), vec![2, 1, 0, 0, 0, 0, 0, 0]);
        let tau = p(&[8, 3, 6, 1, 5, 7, 2, 4]);
        let rt = RefinedProfile::of(&tau);
        assert_eq!(rt.row_in_word_order(&tau, |v| v.nest), vec![0, 1, 1, 0, 2, 0, 1, 0]);
        assert_eq!(rt.row_in_word_order(&tau, |v| v.icross), vec![0, 0, 0, 0, 0, 1, 0, 2]);
    }

    #[test]
    fn phisz_example_rows() {
        let tau = p(&[5, 7, 1, 4, 8, 2, 6, 3]);
        let rt = RefinedProfile::of(&tau);
        assert_eq!(rt.row_in_word_order(&tau, |v| v.cross), vec![2, 0, 0, 0, 0, 1, 1, 1]);
        assert_eq!(rt.row_in_word_order(&tau, |v| v.nest), vec![0, 1, 0, 2, 0, 0, 0, 0]);
    }

    #[test]
    fn identity_has_no_arcs() {
        let rs = RefinedProfile::of(&Permutation::identity(6));
        assert!(rs.vertices().iter().all(|v| {
            v.ucross + v.unest + v.lcross + v.lnest + v.lev + v.cross + v.nest + v.icross + v.p31_2 + v.p2_31 == 0
        }));
    }

    #[test]
    fn pattern_small_cases() {
        assert_eq!(pattern_31_2(&p(&[3, 1, 2]))[1], 1);
        assert!(pattern_2_31(&Permutation::identity(5)).iter().all(|&c| c == 0));
    }

    #[test]
    fn pval_ppeak_examples() {
        assert_eq!(pval_ppeak(&Permutation::identity(5)), (0, 0));
        assert_eq!(pval_ppeak(&p(&[2, 1])), (1, 1));
    }

    #[test]
    fn json_is_array_of_vertices() {
        let json = serde_json::to_value(RefinedProfile::of(&p(&[2, 1]))).unwrap();
        assert_eq!(json.as_array().unwrap().len(), 2);
        assert_eq!(json[1]["index"], 2);
    }

    #[test]
    fn fast_path_matches_quadruple_oracle() {
        for n in 0..=7 {
            for s in enumerate(n, PermFilter::All).unwrap() {
                assert_eq!(RefinedProfile::of(&s), RefinedProfile::by_quadruples(&s), "{s:?}");
            }
        }
    }

    #[test]
    fn profile_invariants_exhaustive() {
        for n in 0..=7 {
            for s in enumerate(n, PermFilter::All).unwrap() {
                let rs = RefinedProfile::of(&s);
                let ct = cycle_classify(&s);
                assert_eq!(RefinedProfile::upsnest(&s), RefinedProfile::lpsnest(&s));
                for v in rs.vertices() {
                    let i = v.index;
                    if !(ct.cval.contains(&i) || ct.cdrise.contains(&i)) {
                        assert_eq!(v.ucross + v.unest, 0);
                    }
                    if !(ct.cpeak.contains(&i) || ct.cdfall.contains(&i)) {
                        assert_eq!(v.lcross + v.lnest, 0);
                    }
                    if !ct.fix.contains(&i) {
                        assert_eq!(v.lev, 0);
                    } else {
                        assert_eq!(v.icross + v.cross, 0);
                    }
                }
                let total_ucross: usize = rs.vertices().iter().map(|v| v.ucross).sum();
                let raw: usize = (1..=n)
                    .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                    .filter(|&(i, j)| j < s.get(i) && s.get(i) < s.get(j))
                    .count();
                assert_eq!(total_ucross, raw);
                let pex: Vec<_> = ct.cval.iter().copied().filter(|&i| rs.at(i).ucross == 0).collect();
                assert_eq!(pex_set(&s), pex);
                let pdrop: Vec<_> = ct.cpeak.iter().copied().filter(|&i| rs.at(i).lcross == 0).collect();
                assert_eq!(pdrop_set(&s), pdrop);
            }
        }
    }
}
