//! p-solvability through the upper p-series.

use crate::arith::{check_prime, is_power_of};
use crate::error::Result;

use super::PermGroup;

impl PermGroup {
    /// True iff the upper p-series `1 <= O_p'(G) <= O_p'p(G) <= ...` reaches
    /// `G`. Each term is the largest normal subgroup over the previous one
    /// with p'-index (resp. p-power index), found among the normal subgroups
    /// of the lattice.
    pub fn is_p_solvable(&self, p: u64) -> Result<bool> {
        check_prime(p)?;
        let lattice = self.subgroup_lattice()?;
        let normals = lattice.normal_indices();
        let top = lattice.top();
        let mut current = 0;
        let mut want_p_part = false;
        let mut stalled = 0;
        while current != top {
            let base = lattice.entry(current).order;
            let next = normals
                .iter()
                .copied()
                .filter(|&k| lattice.is_contained(current, k))
                .filter(|&k| {
                    let index = (lattice.entry(k).order / base) as u64;
                    if want_p_part {
                        is_power_of(index, p)
                    } else {
                        index % p != 0
                    }
                })
                .max_by_key(|&k| lattice.entry(k).order)
                .unwrap_or(current);
            if next == current {
                stalled += 1;
                if stalled == 2 {
                    return Ok(false);
                }
            } else {
                stalled = 0;
                current = next;
            }
            want_p_part = !want_p_part;
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_solvability() {
        assert!(PermGroup::symmetric(4).is_p_solvable(2).unwrap());
        assert!(PermGroup::symmetric(4).is_p_solvable(3).unwrap());
        assert!(!PermGroup::alternating(5).is_p_solvable(5).unwrap());
        assert!(!PermGroup::alternating(5).is_p_solvable(2).unwrap());
        // the 3-group C3 wr C3 and any p-group
        let p_group = PermGroup::from_cycle_strings(9, &["(1 2 3)", "(1 4 7)(2 5 8)(3 6 9)"]).unwrap();
        assert_eq!(p_group.order_u64(), Some(81));
        assert!(p_group.is_p_solvable(3).unwrap());
        assert!(PermGroup::trivial(3).is_p_solvable(5).unwrap());
        // S5 is 7-solvable (order prime to 7) but not 5-solvable
        assert!(PermGroup::symmetric(5).is_p_solvable(7).unwrap());
        assert!(!PermGroup::symmetric(5).is_p_solvable(5).unwrap());
    }
}
