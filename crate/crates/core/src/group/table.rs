use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::Bitset;
use crate::perm::Permutation;

/// Element indexing plus full multiplication and inverse tables for a small
/// group. Indices follow the sorted element list, so index 0 is the identity.
pub struct GroupTable {
    elements: Arc<[Permutation]>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    pub(crate) fn new(elements: Arc<[Permutation]>) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in elements.iter() {
            for b in elements.iter() {
                mul.push(index[&a.compose_unchecked(b)]);
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        GroupTable {
            elements,
            index,
            mul,
            inv,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn empty_set(&self) -> Bitset {
        Bitset::new(self.len())
    }

    /// Subgroup generated by `gens`, grown from the subgroup `start`.
    pub fn closure_from(&self, start: &Bitset, gens: &[usize]) -> Bitset {
        let mut set = start.clone();
        set.insert(0);
        let mut list: Vec<usize> = set.iter().collect();
        let mut k = 0;
        while k < list.len() {
            let a = list[k];
            for &s in gens {
                let c = self.mul(a, s);
                if set.insert(c) {
                    list.push(c);
                }
            }
            k += 1;
        }
        set
    }

    pub fn closure(&self, gens: &[usize]) -> Bitset {
        self.closure_from(&self.empty_set(), gens)
    }

    /// `S^g` for a set of element indices.
    pub fn conjugate_set(&self, set: &Bitset, g: usize) -> Bitset {
        let mut out = self.empty_set();
        for x in set.iter() {
            out.insert(self.conj(x, g));
        }
        out
    }

    /// Order of an element by repeated multiplication.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}
