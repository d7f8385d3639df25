//! Complete subgroup lattices of small groups by cyclic extension.
//!
//! Starting from the trivial group, every subgroup class representative `H`
//! is joined with every cyclic subgroup not inside it; new subgroups are
//! stored together with all their conjugates. Any subgroup is reached by a
//! chain of such joins, so the listing is complete.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::Bitset;
use crate::error::Result;
use crate::perm::Permutation;

use super::{GroupTable, PermGroup};

#[derive(Debug, Clone)]
pub struct LatticeEntry {
    pub group: PermGroup,
    /// Element indices into the parent's sorted element list.
    pub members: Bitset,
    pub order: usize,
    /// Conjugacy class of the subgroup; entries sharing a class id are
    /// conjugate in the parent.
    pub class_id: usize,
}

pub struct SubgroupLattice {
    parent: PermGroup,
    table: Arc<GroupTable>,
    entries: Vec<LatticeEntry>,
    /// `supersets[i]` holds every `j` with `entries[i] <= entries[j]`.
    supersets: Vec<Bitset>,
    maximal: Vec<usize>,
    class_sizes: Vec<usize>,
}

struct Raw {
    members: Bitset,
    gens: Vec<usize>,
    class_id: usize,
}

impl SubgroupLattice {
    pub(crate) fn build(parent: &PermGroup) -> Result<Self> {
        let table = parent.table()?;
        let n = table.len();

        let mut cyclic: Vec<(usize, Bitset)> = Vec::new();
        let mut seen_cyclic: HashMap<Bitset, ()> = HashMap::new();
        for x in 1..n {
            let c = table.closure(&[x]);
            if seen_cyclic.insert(c.clone(), ()).is_none() {
                cyclic.push((x, c));
            }
        }

        let mut found: HashMap<Bitset, usize> = HashMap::new();
        let mut raws: Vec<Raw> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        let mut class_count = 0;

        let mut add_class = |members: Bitset, gens: Vec<usize>, raws: &mut Vec<Raw>, found: &mut HashMap<Bitset, usize>| {
            let class_id = class_count;
            class_count += 1;
            let rep = raws.len();
            for g in 0..n {
                let conj = table.conjugate_set(&members, g);
                if found.contains_key(&conj) {
                    continue;
                }
                found.insert(conj.clone(), raws.len());
                raws.push(Raw {
                    members: conj,
                    gens: gens.iter().map(|&x| table.conj(x, g)).collect(),
                    class_id,
                });
            }
            rep
        };

        let trivial = table.closure(&[]);
        reps.push(add_class(trivial, vec![], &mut raws, &mut found));
        let mut k = 0;
        while k < reps.len() {
            let h = reps[k];
            let (h_members, h_gens) = (raws[h].members.clone(), raws[h].gens.clone());
            for (z, zset) in &cyclic {
                if zset.is_subset(&h_members) {
                    continue;
                }
                let mut gens = h_gens.clone();
                gens.push(*z);
                let joined = table.closure_from(&h_members, &gens);
                if !found.contains_key(&joined) {
                    reps.push(add_class(joined, gens, &mut raws, &mut found));
                }
            }
            k += 1;
        }

        raws.sort_by(|a, b| (a.members.count(), &a.members).cmp(&(b.members.count(), &b.members)));
        // renumber classes in order of first appearance
        let mut class_map: HashMap<usize, usize> = HashMap::new();
        for r in &raws {
            let next = class_map.len();
            class_map.entry(r.class_id).or_insert(next);
        }
        let mut class_sizes = vec![0; class_map.len()];
        let degree = parent.degree();
        let entries: Vec<LatticeEntry> = raws
            .into_iter()
            .map(|r| {
                let class_id = class_map[&r.class_id];
                class_sizes[class_id] += 1;
                let gens: Vec<Permutation> =
                    r.gens.iter().map(|&i| table.element(i).clone()).collect();
                LatticeEntry {
                    group: PermGroup::new(degree, gens)
                        .expect("uniform degree")
                        .with_caps(parent.caps()),
                    order: r.members.count(),
                    members: r.members,
                    class_id,
                }
            })
            .collect();

        let m = entries.len();
        let mut supersets = vec![Bitset::new(m); m];
        for i in 0..m {
            for j in i..m {
                let (a, b) = (&entries[i], &entries[j]);
                if b.order % a.order == 0 && a.members.is_subset(&b.members) {
                    supersets[i].insert(j);
                }
            }
        }
        let top = m - 1;
        let maximal = (0..top)
            .filter(|&i| supersets[i].count() == 2)
            .collect();

        Ok(SubgroupLattice {
            parent: parent.clone(),
            table,
            entries,
            supersets,
            maximal,
            class_sizes,
        })
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by order, then by element set; the trivial subgroup is
    /// first and the parent last.
    pub fn entries(&self) -> &[LatticeEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &LatticeEntry {
        &self.entries[i]
    }

    pub fn top(&self) -> usize {
        self.entries.len() - 1
    }

    /// True if entry `i` is contained in entry `j`.
    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        self.supersets[i].contains(j)
    }

    /// Indices of the entries containing entry `i` (including `i`).
    pub fn supersets(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.supersets[i].iter()
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.maximal.binary_search(&i).is_ok()
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.class_sizes[self.entries[i].class_id]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.class_size(i) == 1
    }

    pub fn normal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_normal(i)).collect()
    }

    /// One entry index per conjugacy class of subgroups.
    pub fn class_representatives(&self) -> Vec<usize> {
        let mut seen = vec![false; self.class_sizes.len()];
        (0..self.len())
            .filter(|&i| !std::mem::replace(&mut seen[self.entries[i].class_id], true))
            .collect()
    }

    /// Element set of a subgroup of the parent, as parent indices.
    pub fn members_of(&self, h: &PermGroup) -> Result<Bitset> {
        h.require_subgroup_of(&self.parent)?;
        let mut set = self.table.empty_set();
        for x in h.elements()?.iter() {
            set.insert(self.table.index_of(x).expect("member of parent"));
        }
        Ok(set)
    }

    /// Lattice position of a subgroup of the parent.
    pub fn index_of(&self, h: &PermGroup) -> Result<usize> {
        let members = self.members_of(h)?;
        Ok(self
            .entries
            .binary_search_by(|e| (e.members.count(), &e.members).cmp(&(members.count(), &members)))
            .expect("lattice is complete"))
    }
}

impl PermGroup {
    /// Every subgroup, with inclusion and maximality; requires the order to be
    /// within the lattice cap.
    pub fn subgroup_lattice(&self) -> Result<SubgroupLattice> {
        SubgroupLattice::build(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::error::Error;

    /// Counts subgroups by testing every subset for closure. Only usable for
    /// tiny groups.
    fn brute_subgroup_count(g: &PermGroup) -> usize {
        let t = g.table().unwrap();
        let n = t.len();
        assert!(n <= 12);
        (0u32..(1 << n))
            .filter(|mask| {
                mask & 1 == 1
                    && (0..n).all(|a| {
                        mask >> a & 1 == 0
                            || (0..n).all(|b| mask >> b & 1 == 0 || mask >> t.mul(a, b) & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn small_lattices_match_brute_force() {
        let c6 = PermGroup::cyclic(6);
        let s3 = PermGroup::symmetric(3);
        let v4 = PermGroup::from_cycle_strings(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        for (g, expected) in [(&c6, 4), (&s3, 6), (&v4, 5)] {
            let lat = g.subgroup_lattice().unwrap();
            assert_eq!(lat.len(), expected);
            assert_eq!(brute_subgroup_count(g), expected);
        }
        let lat = s3.subgroup_lattice().unwrap();
        let mut maximal_orders: Vec<usize> = lat.maximal_indices().iter().map(|&i| lat.entry(i).order).collect();
        maximal_orders.sort();
        assert_eq!(maximal_orders, vec![2, 2, 2, 3]);
        assert_eq!(lat.entry(0).order, 1);
        assert_eq!(lat.entry(lat.top()).order, 6);
    }

    #[test]
    fn known_subgroup_counts() {
        // S4 has 30 subgroups in 11 classes; A5 has 59 in 9 classes.
        let lat = PermGroup::symmetric(4).subgroup_lattice().unwrap();
        assert_eq!(lat.len(), 30);
        assert_eq!(lat.class_representatives().len(), 11);
        let lat = PermGroup::alternating(5).subgroup_lattice().unwrap();
        assert_eq!(lat.len(), 59);
        assert_eq!(lat.class_representatives().len(), 9);
        assert_eq!(lat.normal_indices().len(), 2);
        let mut maximal: Vec<usize> = lat.maximal_indices().iter().map(|&i| lat.entry(i).order).collect();
        maximal.sort();
        maximal.dedup();
        assert_eq!(maximal, vec![6, 10, 12]);
    }

    #[test]
    fn entries_are_subgroups_with_matching_orders() {
        let g = PermGroup::dihedral(6).unwrap();
        let lat = g.subgroup_lattice().unwrap();
        for e in lat.entries() {
            assert_eq!(e.group.order_u64(), Some(e.order as u64));
            assert!(e.group.is_subgroup_of(&g).unwrap());
            assert_eq!(lat.members_of(&e.group).unwrap(), e.members);
        }
        let h = g.subgroup([Permutation::parse("(1 4)(2 5)(3 6)", 6).unwrap()]).unwrap();
        let i = lat.index_of(&h).unwrap();
        assert_eq!(lat.entry(i).order, 2);
    }

    #[test]
    fn lattice_cap() {
        let g = PermGroup::symmetric(5).with_caps(Caps::DEFAULT.with_lattice(100));
        assert!(matches!(g.subgroup_lattice(), Err(Error::CapExceeded { .. })));
    }
}
