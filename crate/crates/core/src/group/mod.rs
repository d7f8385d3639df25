//! Permutation groups given by generators.
//!
//! A [`PermGroup`] is immutable after construction. Its base and strong
//! generating set, element list and multiplication table are computed on first
//! use and cached; the caches fill at most once even under concurrent access.

mod bsgs;
mod lattice;
mod quotient;
mod series;
mod table;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

use bsgs::Bsgs;
pub use lattice::{LatticeEntry, SubgroupLattice};
pub use quotient::Quotient;
pub use table::GroupTable;

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    caps: Caps,
    bsgs: OnceLock<Bsgs>,
    elements: OnceLock<Arc<[Permutation]>>,
    table: OnceLock<Arc<GroupTable>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            caps: self.caps,
            bsgs: self.bsgs.clone(),
            elements: self.elements.clone(),
            table: self.table.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">)")
    }
}

impl PermGroup {
    /// The subgroup generated by `generators`. Identity generators and
    /// duplicates are dropped.
    pub fn new(degree: usize, generators: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            caps: Caps::default(),
            bsgs: OnceLock::new(),
            elements: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, []).expect("positive degree")
    }

    /// Parses generators written in cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
        }
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2, 3]]).unwrap());
            let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
            gens.push(Permutation::from_cycles(n, &[long]).unwrap());
        }
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap()]
        } else {
            vec![]
        };
        PermGroup::new(n.max(1), gens).unwrap()
    }

    /// Dihedral group of order `2n` on `n >= 3` points.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Unsupported(format!(
                "dihedral group of order {} has no faithful action on {n} points",
                2 * n
            )));
        }
        let rotation = Permutation::from_cycles(n, &[(1..=n).collect()])?;
        // i -> n + 2 - i, fixing 1
        let reflection = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
        PermGroup::new(n, [rotation, reflection])
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn bsgs(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Bsgs::build(self.degree, &self.generators))
    }

    /// Group order via the base and strong generating set.
    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    /// The order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    /// Base points (1-based) of the cached stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.bsgs().base()
    }

    /// Lengths of the basic orbits; their product is the order.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.bsgs().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub(crate) fn check_degree(&self, x: &Permutation) -> Result<()> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: x.degree(),
            });
        }
        Ok(())
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        self.check_degree(x)?;
        Ok(self.bsgs().contains(x))
    }

    pub(crate) fn require_member(&self, x: &Permutation) -> Result<()> {
        if self.contains(x)? {
            Ok(())
        } else {
            Err(Error::NotAMember)
        }
    }

    /// True if every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: other.degree,
                right: self.degree,
            });
        }
        Ok(self.generators.iter().all(|g| other.bsgs().contains(g)))
    }

    pub(crate) fn require_subgroup_of(&self, other: &PermGroup) -> Result<()> {
        if self.is_subgroup_of(other)? {
            Ok(())
        } else {
            Err(Error::NotASubgroup)
        }
    }

    /// Same element set as `other`.
    pub fn same_group(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.is_subgroup_of(other)? && self.order() == other.order())
    }

    /// Orbit of a 1-based point, sorted.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point == 0 || point > self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point - 1] = true;
        let mut queue = VecDeque::from([point - 1]);
        let mut orbit = vec![point];
        while let Some(a) = queue.pop_front() {
            for g in &self.generators {
                let b = g.image0(a);
                if !seen[b] {
                    seen[b] = true;
                    orbit.push(b + 1);
                    queue.push_back(b);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// The orbit partition of `{1..degree}`, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 1..=self.degree {
            if seen[p - 1] {
                continue;
            }
            let orb = self.orbit(p).unwrap();
            for &q in &orb {
                seen[q - 1] = true;
            }
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    pub(crate) fn check_elements_cap(&self) -> Result<u64> {
        let order = self.order();
        match order.to_u64() {
            Some(n) if n <= self.caps.elements => Ok(n),
            _ => Err(Error::cap("group order", order, self.caps.elements)),
        }
    }

    /// Every element, sorted lexicographically by image table.
    pub fn elements(&self) -> Result<Arc<[Permutation]>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        self.check_elements_cap()?;
        Ok(self
            .elements
            .get_or_init(|| {
                let mut all = self.bsgs().enumerate();
                all.sort_unstable();
                all.into()
            })
            .clone())
    }

    /// Index and multiplication table; needs the order within the lattice cap.
    pub fn table(&self) -> Result<Arc<GroupTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let order = self.order();
        if order > BigUint::from(self.caps.lattice) {
            return Err(Error::cap("group order (table)", order, self.caps.lattice));
        }
        let elements = self.elements()?;
        Ok(self
            .table
            .get_or_init(|| Arc::new(GroupTable::new(elements)))
            .clone())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// `{g^-1 x g : g in G}`, sorted.
    pub fn conjugacy_class(&self, x: &Permutation) -> Result<Vec<Permutation>> {
        self.check_elements_cap()?;
        self.require_member(x)?;
        Ok(self.conjugation_orbit(x))
    }

    fn conjugation_orbit(&self, x: &Permutation) -> Vec<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::from([x.clone()]);
        let mut queue = vec![x.clone()];
        while let Some(y) = queue.pop() {
            for g in &self.generators {
                let z = y.conjugate_by(g);
                if seen.insert(z.clone()) {
                    queue.push(z);
                }
            }
        }
        let mut class: Vec<Permutation> = seen.into_iter().collect();
        class.sort_unstable();
        class
    }

    /// All conjugacy classes, each sorted; classes ordered by their smallest
    /// element (so the identity class comes first).
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<Permutation>>> {
        self.classes_matching(|_| true)
    }

    /// Conjugacy classes of elements satisfying a class-invariant predicate.
    pub(crate) fn classes_matching(
        &self,
        pred: impl Fn(&Permutation) -> bool,
    ) -> Result<Vec<Vec<Permutation>>> {
        let elements = self.elements()?;
        let mut done: HashSet<Permutation> = HashSet::new();
        let mut classes = Vec::new();
        for x in elements.iter() {
            if done.contains(x) || !pred(x) {
                continue;
            }
            let class = self.conjugation_orbit(x);
            done.extend(class.iter().cloned());
            classes.push(class);
        }
        Ok(classes)
    }

    /// `C_G(x)` by scanning the elements.
    pub fn centralizer(&self, x: &Permutation) -> Result<PermGroup> {
        self.require_member(x)?;
        let elements = self.elements()?;
        let members = elements.iter().filter(|g| g.commutes_with(x));
        Ok(PermGroup::from_subgroup_elements(self.degree, members).with_caps(self.caps))
    }

    /// `N_G(H)` by scanning the elements.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        h.require_subgroup_of(self)?;
        let elements = self.elements()?;
        let hb = h.bsgs();
        let members = elements.iter().filter(|g| {
            h.generators
                .iter()
                .all(|x| hb.contains(&x.conjugate_by(g)))
        });
        Ok(PermGroup::from_subgroup_elements(self.degree, members).with_caps(self.caps))
    }

    /// The distinct conjugates `K^g`, ordered by their sorted element lists.
    pub fn conjugates_of(&self, k: &PermGroup) -> Result<Vec<PermGroup>> {
        k.require_subgroup_of(self)?;
        let k_elements = k.elements()?;
        let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
        let mut out: Vec<(Vec<Permutation>, PermGroup)> = Vec::new();
        for g in self.elements()?.iter() {
            let mut key: Vec<Permutation> = k_elements.iter().map(|x| x.conjugate_by(g)).collect();
            key.sort_unstable();
            if seen.contains(&key) {
                continue;
            }
            let conj = self.subgroup(k.generators.iter().map(|x| x.conjugate_by(g)))?;
            seen.insert(key.clone());
            out.push((key, conj));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out.into_iter().map(|(_, h)| h).collect())
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool> {
        if !self.is_subgroup_of(g)? {
            return Ok(false);
        }
        let nb = self.bsgs();
        Ok(g.generators
            .iter()
            .all(|y| self.generators.iter().all(|n| nb.contains(&n.conjugate_by(y)))))
    }

    /// A group from an element listing already known to be closed under
    /// multiplication; generators are picked greedily in listing order.
    pub fn from_subgroup_elements<'a>(
        degree: usize,
        elements: impl IntoIterator<Item = &'a Permutation>,
    ) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = Bsgs::build(degree, &gens);
        for x in elements {
            if !current.contains(x) {
                gens.push(x.clone());
                current = Bsgs::build(degree, &gens);
            }
        }
        let group = PermGroup::new(degree, gens).expect("uniform degree");
        let _ = group.bsgs.set(current);
        group
    }

    /// The subgroup generated by `gens`, inheriting this group's caps.
    pub fn subgroup(&self, gens: impl IntoIterator<Item = Permutation>) -> Result<PermGroup> {
        Ok(PermGroup::new(self.degree, gens)?.with_caps(self.caps))
    }

    /// Elements of p-power order (identity included), sorted.
    pub fn p_elements(&self, p: u64) -> Result<Vec<Permutation>> {
        crate::arith::check_prime(p)?;
        Ok(self
            .elements()?
            .iter()
            .filter(|x| x.is_p_element(p))
            .cloned()
            .collect())
    }

    /// `O^{p'}(G)`: the subgroup generated by all p-elements.
    pub fn p_residual(&self, p: u64) -> Result<PermGroup> {
        let classes = {
            crate::arith::check_prime(p)?;
            self.classes_matching(|x| x.is_p_element(p) && !x.is_identity())?
        };
        let gens: Vec<Permutation> = classes.into_iter().flatten().collect();
        Ok(PermGroup::from_subgroup_closure(self.degree, gens).with_caps(self.caps))
    }

    /// True if `G = O^{p'}(G)`.
    pub fn is_generated_by_p_elements(&self, p: u64) -> Result<bool> {
        Ok(self.p_residual(p)?.order() == self.order())
    }

    /// Generated subgroup with a small generating set picked from `gens`.
    pub(crate) fn from_subgroup_closure(degree: usize, gens: Vec<Permutation>) -> PermGroup {
        PermGroup::from_subgroup_elements(degree, gens.iter())
    }

    /// Cycle-notation strings of the generators (for reports).
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }

    pub fn order_is_one(&self) -> bool {
        self.order().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let g = PermGroup::from_cycle_strings(3, &["(1 2)", "(2 3)"]).unwrap();
        assert_eq!(g.orbit(1).unwrap(), vec![1, 2, 3]);
        let g = PermGroup::from_cycle_strings(4, &["(1 2 3)"]).unwrap();
        assert_eq!(g.orbit(4).unwrap(), vec![4]);
        let g = PermGroup::from_cycle_strings(4, &["(1 2)(3 4)"]).unwrap();
        assert_eq!(g.orbit(3).unwrap(), vec![3, 4]);
        assert!(matches!(g.orbit(5), Err(Error::PointOutOfRange { .. })));
        assert!(matches!(g.orbit(0), Err(Error::PointOutOfRange { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroup::alternating(5).order(), BigUint::from(60u32));
        assert_eq!(PermGroup::trivial(4).order(), BigUint::one());
        for n in 1..=9usize {
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(PermGroup::symmetric(n).order_u64(), Some(fact));
            assert_eq!(PermGroup::alternating(n).order_u64(), Some((fact / 2).max(1)));
        }
        assert_eq!(PermGroup::dihedral(5).unwrap().order_u64(), Some(10));
        assert_eq!(PermGroup::cyclic(6).order_u64(), Some(6));
        assert!(PermGroup::dihedral(2).is_err());
    }

    #[test]
    fn base_points_are_smallest_moved() {
        let g = PermGroup::symmetric(4);
        assert_eq!(g.base(), vec![1, 2, 3]);
        assert_eq!(g.basic_orbit_lengths(), vec![4, 3, 2]);
    }

    #[test]
    fn membership() {
        let a4 = PermGroup::alternating(4);
        assert!(a4.contains(&perm("(1 2 3)", 4)).unwrap());
        assert!(!a4.contains(&perm("(1 2)", 4)).unwrap());
        let c4 = PermGroup::from_cycle_strings(4, &["(1 2 3 4)"]).unwrap();
        assert!(c4.contains(&perm("(1 3)(2 4)", 4)).unwrap());
        assert!(matches!(c4.contains(&perm("(1 2)", 5)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn element_lists() {
        let c3 = PermGroup::from_cycle_strings(3, &["(1 2 3)"]).unwrap();
        assert_eq!(c3.elements().unwrap().len(), 3);
        let s4 = PermGroup::symmetric(4);
        let els = s4.elements().unwrap();
        assert_eq!(els.len(), 24);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        let a7 = PermGroup::alternating(7).with_caps(Caps::DEFAULT.with_elements(1000));
        assert!(matches!(a7.elements(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn classes_and_centralizers() {
        let s3 = PermGroup::symmetric(3);
        let id = Permutation::identity(3);
        assert_eq!(s3.conjugacy_class(&id).unwrap(), vec![id.clone()]);
        assert_eq!(s3.conjugacy_class(&perm("(1 2 3)", 3)).unwrap().len(), 2);
        let a4 = PermGroup::alternating(4);
        assert_eq!(a4.conjugacy_class(&perm("(1 2 3)", 4)).unwrap().len(), 4);
        assert!(matches!(
            a4.conjugacy_class(&perm("(1 2)", 4)),
            Err(Error::NotAMember)
        ));

        assert_eq!(s3.centralizer(&id).unwrap().order_u64(), Some(6));
        let c = s3.centralizer(&perm("(1 2 3)", 3)).unwrap();
        assert_eq!(c.order_u64(), Some(3));
        assert!(c.contains(&perm("(1 2 3)", 3)).unwrap());
        assert_eq!(a4.centralizer(&perm("(1 2)(3 4)", 4)).unwrap().order_u64(), Some(4));
    }

    #[test]
    fn class_equation() {
        for g in [PermGroup::symmetric(5), PermGroup::alternating(5), PermGroup::dihedral(6).unwrap()] {
            let classes = g.conjugacy_classes().unwrap();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(total as u64, g.order_u64().unwrap());
            for c in &classes {
                let cent = g.centralizer(&c[0]).unwrap();
                assert_eq!(c.len() as u64 * cent.order_u64().unwrap(), g.order_u64().unwrap());
            }
        }
    }

    #[test]
    fn normalizers() {
        let s4 = PermGroup::symmetric(4);
        assert!(s4.normalizer(&s4).unwrap().same_group(&s4).unwrap());
        let c3 = s4.subgroup([perm("(1 2 3)", 4)]).unwrap();
        assert_eq!(s4.normalizer(&c3).unwrap().order_u64(), Some(6));
        let a5 = PermGroup::alternating(5);
        let p3 = a5.subgroup([perm("(1 2 3)", 5)]).unwrap();
        let n = a5.normalizer(&p3).unwrap();
        assert_eq!(n.order_u64(), Some(6));
        let foreign = s4.subgroup([perm("(1 2)", 4)]).unwrap();
        let a4 = PermGroup::alternating(4);
        assert!(matches!(a4.normalizer(&foreign), Err(Error::NotASubgroup)));
    }

    #[test]
    fn generated_subgroups() {
        assert!(PermGroup::new(3, []).unwrap().order_is_one());
        let s3 = PermGroup::from_cycle_strings(3, &["(1 2)", "(1 2 3)"]).unwrap();
        assert_eq!(s3.order_u64(), Some(6));
        let a5 = PermGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        assert_eq!(a5.order_u64(), Some(60));
    }

    #[test]
    fn residuals() {
        let s3 = PermGroup::symmetric(3);
        let r3 = s3.p_residual(3).unwrap();
        assert_eq!(r3.order_u64(), Some(3));
        assert!(r3.is_normal_in(&s3).unwrap());
        assert_eq!(s3.p_residual(2).unwrap().order_u64(), Some(6));
        let c9 = PermGroup::cyclic(9);
        assert_eq!(c9.p_residual(3).unwrap().order_u64(), Some(9));
        assert!(s3.p_residual(4).is_err());
    }

    #[test]
    fn orbit_counting() {
        // sum of fixed points over the group = |G| * number of orbits
        for g in [
            PermGroup::from_cycle_strings(6, &["(1 2 3)", "(4 5)"]).unwrap(),
            PermGroup::alternating(6),
            PermGroup::dihedral(8).unwrap(),
        ] {
            let fixed: usize = g.elements().unwrap().iter().map(Permutation::fixed_point_count).sum();
            assert_eq!(fixed as u64, g.order_u64().unwrap() * g.orbits().len() as u64);
        }
    }
}
