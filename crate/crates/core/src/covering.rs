//! Covering the p-elements of a group, or a single conjugacy class, by as
//! few proper subgroups as possible.
//!
//! Any cover by proper subgroups can be enlarged to one by maximal subgroups
//! of the same size, so candidates are the maximal subgroups from the
//! subgroup lattice. The identity lies in every subgroup and is dropped from
//! the universe before solving.

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::arith::check_prime;
use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::group::{PermGroup, SubgroupLattice};
use crate::perm::Permutation;

/// Smallest subfamily of `sets` whose union is `{0, .., universe-1}`, as
/// indices into `sets` in increasing order; `None` if the union of all sets
/// falls short.
///
/// Depth-first branch and bound: the uncovered element lying in the fewest
/// sets is branched on, larger sets first. A node is cut when the sets chosen
/// so far plus a lower bound reach the incumbent. The bound is the larger of
/// `ceil(uncovered / largest remaining coverage)` and the size of a greedy
/// family of uncovered elements no two of which share a set.
pub fn min_set_cover(universe: usize, sets: &[Bitset]) -> Option<Vec<usize>> {
    let mut all = Bitset::new(universe);
    for s in sets {
        assert_eq!(s.len(), universe, "set over a different universe");
        all.union_with(s);
    }
    if all.count() < universe {
        return None;
    }
    if universe == 0 {
        return Some(Vec::new());
    }

    // drop duplicates and sets inside another set
    let mut kept: Vec<usize> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let dominated = sets.iter().enumerate().any(|(j, t)| {
            j != i && s.is_subset(t) && (s.count() < t.count() || j < i)
        });
        if !dominated {
            kept.push(i);
        }
    }
    let reduced: Vec<Bitset> = kept.iter().map(|&i| sets[i].clone()).collect();
    let containing: Vec<Vec<usize>> = (0..universe)
        .map(|e| (0..reduced.len()).filter(|&s| reduced[s].contains(e)).collect())
        .collect();

    let mut solver = Solver {
        sets: &reduced,
        containing: &containing,
        best: greedy_cover(universe, &reduced),
        chosen: Vec::new(),
    };
    solver.search(&Bitset::full(universe));
    let mut cover: Vec<usize> = solver.best.iter().map(|&i| kept[i]).collect();
    cover.sort_unstable();
    Some(cover)
}

fn greedy_cover(universe: usize, sets: &[Bitset]) -> Vec<usize> {
    let mut uncovered = Bitset::full(universe);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (i, _) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection_count(&uncovered)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("coverable");
        uncovered.difference_with(&sets[i]);
        chosen.push(i);
    }
    chosen
}

struct Solver<'a> {
    sets: &'a [Bitset],
    containing: &'a [Vec<usize>],
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl Solver<'_> {
    fn lower_bound(&self, uncovered: &Bitset) -> usize {
        let left = uncovered.count();
        let widest = self
            .sets
            .iter()
            .map(|s| s.intersection_count(uncovered))
            .max()
            .unwrap_or(0)
            .max(1);
        let by_size = left.div_ceil(widest);

        let mut order: Vec<usize> = uncovered.iter().collect();
        order.sort_by_key(|&e| (self.containing[e].len(), e));
        let mut used = Bitset::new(self.sets.len());
        let mut packed = 0;
        for e in order {
            if self.containing[e].iter().all(|&s| !used.contains(s)) {
                packed += 1;
                for &s in &self.containing[e] {
                    used.insert(s);
                }
            }
        }
        by_size.max(packed)
    }

    fn search(&mut self, uncovered: &Bitset) {
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + self.lower_bound(uncovered) >= self.best.len() {
            return;
        }
        let pivot = uncovered
            .iter()
            .min_by_key(|&e| (self.containing[e].len(), e))
            .expect("nonempty");
        let mut branches: Vec<(usize, usize)> = self.containing[pivot]
            .iter()
            .map(|&s| (s, self.sets[s].intersection_count(uncovered)))
            .collect();
        branches.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (s, _) in branches {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.sets[s]);
            self.chosen.push(s);
            self.search(&rest);
            self.chosen.pop();
        }
    }
}

/// Size of a minimal cover; `Infinite` when no family of proper subgroups
/// covers the set (for instance the generators of a cyclic p-group).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverNumber {
    Finite(usize),
    Infinite,
}

impl CoverNumber {
    pub fn finite(self) -> Option<usize> {
        match self {
            CoverNumber::Finite(n) => Some(n),
            CoverNumber::Infinite => None,
        }
    }
}

impl std::fmt::Display for CoverNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverNumber::Finite(n) => write!(f, "{n}"),
            CoverNumber::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for CoverNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoverNumber::Finite(n) => s.serialize_u64(*n as u64),
            CoverNumber::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// A minimal cover together with the subgroups used.
#[derive(Debug, Clone)]
pub struct Cover {
    pub size: CoverNumber,
    pub subgroups: Vec<PermGroup>,
}

impl Serialize for Cover {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("size", &self.size)?;
        let certificate: Vec<Vec<String>> =
            self.subgroups.iter().map(PermGroup::generator_strings).collect();
        m.serialize_entry("certificate", &certificate)?;
        m.end()
    }
}

/// The universe and candidate sets of a covering problem.
#[derive(Debug, Clone)]
pub struct CoverInstance {
    pub universe: Vec<Permutation>,
    /// Lattice entry index and the entry's intersection with the universe.
    pub candidates: Vec<(usize, Bitset)>,
}

impl CoverInstance {
    /// Restricts the universe to `keep` (elements of the parent listed by
    /// lattice table index) and uses the given lattice entries as candidates.
    fn build(lattice: &SubgroupLattice, keep: &Bitset, entries: &[usize]) -> Self {
        let table = lattice.table();
        let positions: Vec<usize> = keep.iter().collect();
        let universe = positions.iter().map(|&i| table.element(i).clone()).collect();
        let candidates = entries
            .iter()
            .map(|&e| {
                let members = &lattice.entry(e).members;
                let mut set = Bitset::new(positions.len());
                for (k, &i) in positions.iter().enumerate() {
                    if members.contains(i) {
                        set.insert(k);
                    }
                }
                (e, set)
            })
            .collect();
        CoverInstance {
            universe,
            candidates,
        }
    }

    pub fn solve(&self, lattice: &SubgroupLattice) -> Cover {
        let sets: Vec<Bitset> = self.candidates.iter().map(|(_, s)| s.clone()).collect();
        match min_set_cover(self.universe.len(), &sets) {
            Some(chosen) => Cover {
                size: CoverNumber::Finite(chosen.len()),
                subgroups: chosen
                    .iter()
                    .map(|&k| lattice.entry(self.candidates[k].0).group.clone())
                    .collect(),
            },
            None => Cover {
                size: CoverNumber::Infinite,
                subgroups: Vec::new(),
            },
        }
    }
}

/// `G_p`: elements of p-power order, identity included.
pub fn p_elements(group: &PermGroup, p: u64) -> Result<Vec<Permutation>> {
    group.p_elements(p)
}

/// Covering instance for the nontrivial p-elements over the maximal subgroups.
pub fn p_element_instance(lattice: &SubgroupLattice, p: u64) -> CoverInstance {
    let table = lattice.table();
    let mut keep = table.empty_set();
    for (i, x) in table.elements().iter().enumerate().skip(1) {
        if x.is_p_element(p) {
            keep.insert(i);
        }
    }
    debug_assert!(lattice.entries().iter().all(|e| e.members.contains(0)));
    CoverInstance::build(lattice, &keep, lattice.maximal_indices())
}

/// `σ_p(G)` with a certificate, for `G` generated by its p-elements.
pub fn sigma_p(group: &PermGroup, p: u64) -> Result<Cover> {
    check_prime(p)?;
    if !group.is_generated_by_p_elements(p)? {
        return Err(Error::PreconditionFailed(format!(
            "group is not generated by its {p}-elements"
        )));
    }
    let lattice = group.subgroup_lattice()?;
    Ok(p_element_instance(&lattice, p).solve(&lattice))
}

/// Fewest proper subgroups covering the conjugacy class of `x`.
pub fn class_cover_number(group: &PermGroup, x: &Permutation) -> Result<Cover> {
    group.require_member(x)?;
    let lattice = group.subgroup_lattice()?;
    let table = lattice.table();
    let mut keep = table.empty_set();
    for y in group.conjugacy_class(x)? {
        keep.insert(table.index_of(&y).expect("class inside the group"));
    }
    let cover = CoverInstance::build(&lattice, &keep, lattice.maximal_indices()).solve(&lattice);
    if cover.size == CoverNumber::Infinite {
        return Err(Error::ClassNotCoverable);
    }
    Ok(cover)
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaBoundReport {
    pub p: u64,
    pub sigma: CoverNumber,
    pub bound: u64,
    pub cover: Cover,
    pub holds: bool,
}

/// `σ_p(G) ≥ p + 1`.
pub fn sigma_lower_bound_check(group: &PermGroup, p: u64) -> Result<SigmaBoundReport> {
    let cover = sigma_p(group, p)?;
    let holds = match cover.size {
        CoverNumber::Finite(n) => n as u64 > p,
        CoverNumber::Infinite => true,
    };
    Ok(SigmaBoundReport {
        p,
        sigma: cover.size,
        bound: p + 1,
        cover,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Smallest cover by trying every subfamily, smallest first.
    fn exhaustive_cover(universe: usize, sets: &[Bitset]) -> Option<usize> {
        let m = sets.len();
        assert!(m <= 20);
        (0u32..1 << m)
            .filter(|mask| {
                let mut u = Bitset::new(universe);
                for (i, s) in sets.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        u.union_with(s);
                    }
                }
                u.count() == universe
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
    }

    fn sets_from(universe: usize, raw: &[Vec<usize>]) -> Vec<Bitset> {
        raw.iter()
            .map(|s| Bitset::from_indices(universe, s.iter().map(|&e| e % universe)))
            .collect()
    }

    proptest! {
        #[test]
        fn solver_matches_exhaustive(
            universe in 1usize..14,
            raw in proptest::collection::vec(proptest::collection::vec(0usize..14, 0..7), 1..13),
        ) {
            let sets = sets_from(universe, &raw);
            let fast = min_set_cover(universe, &sets);
            prop_assert_eq!(fast.as_ref().map(Vec::len), exhaustive_cover(universe, &sets));
            if let Some(chosen) = fast {
                let mut u = Bitset::new(universe);
                for i in chosen { u.union_with(&sets[i]); }
                prop_assert_eq!(u.count(), universe);
            }
        }
    }

    #[test]
    fn solver_edge_cases() {
        assert_eq!(min_set_cover(0, &[]), Some(vec![]));
        assert_eq!(min_set_cover(3, &sets_from(3, &[vec![0, 1]])), None);
        let sets = sets_from(4, &[vec![0, 1], vec![0, 1], vec![2, 3], vec![0, 1, 2, 3]]);
        assert_eq!(min_set_cover(4, &sets), Some(vec![3]));
    }

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn p_element_examples() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(p_elements(&s3, 2).unwrap().len(), 4);
        assert_eq!(p_elements(&s3, 3).unwrap().len(), 3);
        assert_eq!(p_elements(&PermGroup::dihedral(4).unwrap(), 2).unwrap().len(), 8);
    }

    #[test]
    fn sigma_examples() {
        let s3 = PermGroup::symmetric(3);
        let c = sigma_p(&s3, 2).unwrap();
        assert_eq!(c.size, CoverNumber::Finite(3));
        assert!(c.subgroups.iter().all(|h| h.order_u64() == Some(2)));
        let a4 = PermGroup::alternating(4);
        assert_eq!(sigma_p(&a4, 3).unwrap().size, CoverNumber::Finite(4));
        for (p, gens) in [(2, ["(1 2)", "(3 4)"]), (3, ["(1 2 3)", "(4 5 6)"]), (5, ["(1 2 3 4 5)", "(6 7 8 9 10)"])] {
            let cpcp = g(2 * p as usize, &gens);
            assert_eq!(sigma_p(&cpcp, p).unwrap().size, CoverNumber::Finite(p as usize + 1));
        }
        assert_eq!(sigma_p(&PermGroup::cyclic(9), 3).unwrap().size, CoverNumber::Infinite);
        assert!(matches!(sigma_p(&PermGroup::symmetric(4), 3), Err(Error::PreconditionFailed(_))));
    }

    /// σ_p using every proper subgroup as a candidate.
    fn sigma_all_proper(group: &PermGroup, p: u64) -> CoverNumber {
        let lat = group.subgroup_lattice().unwrap();
        let table = lat.table();
        let mut keep = table.empty_set();
        for (i, x) in table.elements().iter().enumerate().skip(1) {
            if x.is_p_element(p) {
                keep.insert(i);
            }
        }
        let proper: Vec<usize> = (0..lat.top()).collect();
        let inst = CoverInstance::build(&lat, &keep, &proper);
        inst.solve(&lat).size
    }

    #[test]
    fn maximal_candidates_suffice() {
        let cases = [
            (PermGroup::symmetric(3), 2),
            (PermGroup::symmetric(4), 2),
            (PermGroup::alternating(4), 3),
            (PermGroup::alternating(5), 2),
            (PermGroup::alternating(5), 3),
            (PermGroup::alternating(5), 5),
            (PermGroup::dihedral(5).unwrap(), 2),
            (g(9, &["(1 2 3)", "(1 4 7)(2 5 8)(3 6 9)"]), 3),
        ];
        for (grp, p) in &cases {
            let sigma = sigma_p(grp, *p).unwrap().size;
            assert_eq!(sigma, sigma_all_proper(grp, *p), "{grp:?} p={p}");
            assert!(sigma >= CoverNumber::Finite(3));
        }
    }

    #[test]
    fn sigma_does_not_exceed_quotient() {
        let s4 = PermGroup::symmetric(4);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let q = s4.quotient(&v4).unwrap();
        assert!(sigma_p(&s4, 2).unwrap().size <= sigma_p(q.group(), 2).unwrap().size);
        let a4 = PermGroup::alternating(4);
        let q = a4.quotient(&g(4, &["(1 2)(3 4)", "(1 3)(2 4)"])).unwrap();
        // A4/V4 is cyclic of order 3
        assert_eq!(sigma_p(q.group(), 3).unwrap().size, CoverNumber::Infinite);
    }

    #[test]
    fn class_cover_examples() {
        let a4 = PermGroup::alternating(4);
        let x = Permutation::parse("(1 2 3)", 4).unwrap();
        assert_eq!(class_cover_number(&a4, &x).unwrap().size, CoverNumber::Finite(4));
        let d8 = PermGroup::dihedral(4).unwrap();
        let z = Permutation::parse("(1 3)(2 4)", 4).unwrap();
        assert_eq!(class_cover_number(&d8, &z).unwrap().size, CoverNumber::Finite(1));
        let a5 = PermGroup::alternating(5);
        let five = Permutation::parse("(1 2 3 4 5)", 5).unwrap();
        let c = class_cover_number(&a5, &five).unwrap();
        assert_eq!(c.size, CoverNumber::Finite(6));
        assert!(matches!(
            class_cover_number(&PermGroup::cyclic(5), &Permutation::parse("(1 2 3 4 5)", 5).unwrap()),
            Err(Error::ClassNotCoverable)
        ));
    }

    #[test]
    fn lower_bound_report() {
        let r = sigma_lower_bound_check(&PermGroup::symmetric(3), 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.sigma, CoverNumber::Finite(3));
        let r = sigma_lower_bound_check(&PermGroup::alternating(5), 2).unwrap();
        assert!(r.holds);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["sigma"], serde_json::json!(r.sigma.finite().unwrap()));
        assert!(json["cover"]["certificate"].is_array());
    }
}
