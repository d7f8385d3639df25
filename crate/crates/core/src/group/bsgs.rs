//! Deterministic Schreier–Sims.
//!
//! Base points are the smallest points moved by the element that forces a new
//! level. Each level keeps its strong generators, the basic orbit in
//! discovery order and explicit coset representatives (with inverses) for the
//! orbit points.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub point: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `reps[b]` maps the base point to `b`.
    pub reps: Vec<Option<Permutation>>,
    pub inv_reps: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; degree],
            inv_reps: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.reps = vec![None; degree];
        self.inv_reps = vec![None; degree];
        let id = Permutation::identity(degree);
        self.reps[self.point] = Some(id.clone());
        self.inv_reps[self.point] = Some(id);
        self.orbit = vec![self.point];
        let mut k = 0;
        while k < self.orbit.len() {
            let gamma = self.orbit[k];
            for s in &self.gens {
                let delta = s.image0(gamma);
                if self.reps[delta].is_none() {
                    let u = self.reps[gamma].as_ref().unwrap().compose_unchecked(s);
                    self.inv_reps[delta] = Some(u.inverse());
                    self.reps[delta] = Some(u);
                    self.orbit.push(delta);
                }
            }
            k += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Bsgs {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl Bsgs {
    pub fn build(degree: usize, generators: &[Permutation]) -> Bsgs {
        let mut bsgs = Bsgs {
            degree,
            levels: Vec::new(),
        };
        for g in generators.iter().filter(|g| !g.is_identity()) {
            let (residue, depth) = bsgs.strip(g, 0);
            if !residue.is_identity() {
                bsgs.add_strong_generator(residue, 0, depth);
            }
        }
        bsgs.complete();
        bsgs
    }

    /// Adds `y` (which fixes the base points above `upto`) as a strong
    /// generator on levels `from..=upto`, opening a new level if needed.
    fn add_strong_generator(&mut self, y: Permutation, from: usize, upto: usize) {
        if upto == self.levels.len() {
            let point = (0..self.degree)
                .find(|&i| y.image0(i) != i)
                .expect("identity passed as strong generator");
            self.levels.push(Level::new(point, self.degree));
        }
        for l in from..=upto {
            self.levels[l].gens.push(y.clone());
            self.levels[l].rebuild_orbit(self.degree);
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match self.find_failing_schreier_generator(lvl) {
                Some((y, depth)) => {
                    self.add_strong_generator(y, lvl + 1, depth);
                    i = depth as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn find_failing_schreier_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for &beta in &level.orbit {
            let u = level.reps[beta].as_ref().unwrap();
            for s in &level.gens {
                let image = s.image0(beta);
                let h = u
                    .compose_unchecked(s)
                    .compose_unchecked(level.inv_reps[image].as_ref().unwrap());
                if h.is_identity() {
                    continue;
                }
                let (y, depth) = self.strip(&h, lvl + 1);
                if depth < self.levels.len() || !y.is_identity() {
                    return Some((y, depth));
                }
            }
        }
        None
    }

    /// Sifts `g` from level `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it passed every level).
    pub fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.image0(level.point);
            match &level.inv_reps[beta] {
                Some(inv) => g = g.compose_unchecked(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (y, depth) = self.strip(g, 0);
        depth == self.levels.len() && y.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point + 1).collect()
    }

    /// Every group element, as products of coset representatives from the
    /// deepest level up.
    pub fn enumerate(&self) -> Vec<Permutation> {
        let mut current = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(current.len() * level.orbit.len());
            for x in &current {
                for &b in &level.orbit {
                    next.push(x.compose_unchecked(level.reps[b].as_ref().unwrap()));
                }
            }
            current = next;
        }
        current
    }
}
