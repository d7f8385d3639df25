//! Factor groups as permutation groups on cosets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::PermGroup;

/// `G/N` acting on the right cosets of `N` by right multiplication. The
/// action has kernel exactly `N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    group: PermGroup,
    /// Coset number of every element of `G`.
    coset_of: HashMap<Permutation, usize>,
    reps: Vec<Permutation>,
}

impl Quotient {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    /// The permutation induced by `g` on the cosets.
    pub fn project(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|r| {
                let moved = r.compose(g)?;
                self.coset_of
                    .get(&moved)
                    .map(|&c| c as u32)
                    .ok_or(Error::NotAMember)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation::from_images_unchecked(images))
    }
}

impl PermGroup {
    /// The factor group `G/N` with its projection.
    pub fn quotient(&self, n: &PermGroup) -> Result<Quotient> {
        if !n.is_normal_in(self)? {
            return Err(if n.is_subgroup_of(self)? {
                Error::NotNormal
            } else {
                Error::NotASubgroup
            });
        }
        let elements = self.elements()?;
        let n_elements = n.elements()?;
        let mut coset_of: HashMap<Permutation, usize> = HashMap::with_capacity(elements.len());
        let mut reps = Vec::new();
        for g in elements.iter() {
            if coset_of.contains_key(g) {
                continue;
            }
            let id = reps.len();
            reps.push(g.clone());
            for x in n_elements.iter() {
                coset_of.insert(x.compose_unchecked(g), id);
            }
        }
        let mut q = Quotient {
            group: PermGroup::trivial(reps.len()),
            coset_of,
            reps,
        };
        let gens = self
            .generators()
            .iter()
            .map(|g| q.project(g))
            .collect::<Result<Vec<_>>>()?;
        q.group = PermGroup::new(q.reps.len(), gens)?.with_caps(self.caps());
        Ok(q)
    }
}
