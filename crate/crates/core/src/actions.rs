//! Coset actions and fixed point ratios.
//!
//! For a transitive action of `G` on `Ω` with point stabilizer `H`, the fixed
//! point ratio of `x` is `|C_Ω(x)| / |Ω|`, which equals `|x^G ∩ H| / |x^G|`.
//! [`fpr_element`] computes the first expression and, for groups of order up
//! to [`CROSS_CHECK_LIMIT`], recomputes the second and compares.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, check_prime, PadicProfile};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::ratio::ExactRatio;
use crate::sylow::sylow_subgroup;

/// Largest group order for which [`fpr_element`] cross-checks the class
/// formula.
pub const CROSS_CHECK_LIMIT: u64 = 10_000;

/// `G` acting on the right cosets of `H` (equivalently on the conjugates of
/// `H` when `H` is self-normalizing). Point `i` is the coset `H r_i`, i.e. the
/// conjugate `H^{r_i}`; point 1 is `H` itself.
#[derive(Debug, Clone)]
pub struct CosetAction {
    group: PermGroup,
    stabilizer: PermGroup,
    reps: Vec<Permutation>,
    image: PermGroup,
    lookup: CosetLookup,
}

#[derive(Debug, Clone)]
enum CosetLookup {
    /// Canonical representative `min_{h in H} h*g` to point.
    Canonical {
        stabilizer_elements: Arc<[Permutation]>,
        points: HashMap<Permutation, usize>,
    },
    /// Linear scan with membership tests, for large stabilizers.
    Scan,
}

impl CosetAction {
    pub fn new(group: &PermGroup, stabilizer: &PermGroup) -> Result<Self> {
        stabilizer.require_subgroup_of(group)?;
        let (go, ho) = (group.order(), stabilizer.order());
        if go == ho {
            return Err(Error::NotProper);
        }
        let index = &go / &ho;
        let caps = group.caps();
        if index > BigUint::from(caps.elements) {
            return Err(Error::cap("coset action degree", index, caps.elements));
        }
        let index = index.to_usize().unwrap();
        let use_canonical = ho <= BigUint::from(4 * index.max(64) as u64);
        let lookup = if use_canonical {
            CosetLookup::Canonical {
                stabilizer_elements: stabilizer.elements()?,
                points: HashMap::new(),
            }
        } else {
            CosetLookup::Scan
        };
        let mut action = CosetAction {
            group: group.clone(),
            stabilizer: stabilizer.clone(),
            reps: Vec::with_capacity(index),
            image: PermGroup::trivial(index),
            lookup,
        };
        action.add_rep(Permutation::identity(group.degree()));
        let mut k = 0;
        while k < action.reps.len() {
            for s in group.generators() {
                let y = action.reps[k].compose_unchecked(s);
                if action.point_of(&y).is_none() {
                    action.add_rep(y);
                }
            }
            k += 1;
        }
        debug_assert_eq!(action.reps.len(), index);
        let gens = group
            .generators()
            .iter()
            .map(|s| action.induced(s))
            .collect::<Vec<_>>();
        action.image = PermGroup::new(index, gens)?.with_caps(caps);
        Ok(action)
    }

    fn canonical(elements: &[Permutation], g: &Permutation) -> Permutation {
        elements
            .iter()
            .map(|h| h.compose_unchecked(g))
            .min()
            .expect("stabilizer has an identity")
    }

    fn add_rep(&mut self, g: Permutation) {
        if let CosetLookup::Canonical {
            stabilizer_elements,
            points,
        } = &mut self.lookup
        {
            points.insert(Self::canonical(stabilizer_elements, &g), self.reps.len());
        }
        self.reps.push(g);
    }

    /// 0-based point of the coset `H g`, if already listed.
    fn point_of(&self, g: &Permutation) -> Option<usize> {
        match &self.lookup {
            CosetLookup::Canonical {
                stabilizer_elements,
                points,
            } => points.get(&Self::canonical(stabilizer_elements, g)).copied(),
            CosetLookup::Scan => self.reps.iter().position(|r| {
                self.stabilizer
                    .contains(&g.compose_unchecked(&r.inverse()))
                    .unwrap_or(false)
            }),
        }
    }

    fn induced(&self, x: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.point_of(&r.compose_unchecked(x)).expect("closed coset set") as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// True if `x` fixes 0-based point `i`: `r_i x r_i^-1 ∈ H`.
    fn fixes(&self, i: usize, x: &Permutation) -> bool {
        let r = &self.reps[i];
        let y = r.compose_unchecked(x).compose_unchecked(&r.inverse());
        self.stabilizer.contains(&y).unwrap_or(false)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn point_stabilizer(&self) -> &PermGroup {
        &self.stabilizer
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// The permutation group induced on the cosets.
    pub fn action_image(&self) -> &PermGroup {
        &self.image
    }

    /// Coset representative of a 1-based point.
    pub fn representative(&self, point: usize) -> &Permutation {
        &self.reps[point - 1]
    }

    /// The conjugate of `H` sitting at a 1-based point: `r^-1 H r`.
    pub fn conjugate_at(&self, point: usize) -> Result<PermGroup> {
        let r = self.representative(point);
        self.group.subgroup(
            self.stabilizer
                .generators()
                .iter()
                .map(|h| h.conjugate_by(r)),
        )
    }

    /// The permutation of `Ω` induced by a group element.
    pub fn act(&self, x: &Permutation) -> Result<Permutation> {
        self.group.require_member(x)?;
        Ok(self.induced(x))
    }
}

pub fn coset_action(group: &PermGroup, stabilizer: &PermGroup) -> Result<CosetAction> {
    CosetAction::new(group, stabilizer)
}

/// `|x^G ∩ H| / |x^G|`, by listing the class.
pub fn fpr_by_class(group: &PermGroup, stabilizer: &PermGroup, x: &Permutation) -> Result<ExactRatio> {
    let class = group.conjugacy_class(x)?;
    let inside = class
        .iter()
        .filter(|y| stabilizer.contains(y).unwrap_or(false))
        .count();
    Ok(ExactRatio::new(inside as u64, class.len() as u64))
}

/// Fixed point ratio of an element on the coset space.
pub fn fpr_element(action: &CosetAction, x: &Permutation) -> Result<ExactRatio> {
    action.group.require_member(x)?;
    let fixed = (0..action.degree()).filter(|&i| action.fixes(i, x)).count();
    let ratio = ExactRatio::new(fixed as u64, action.degree() as u64);
    if action
        .group
        .order_u64()
        .is_some_and(|n| n <= CROSS_CHECK_LIMIT.min(action.group.caps().elements))
    {
        let by_class = fpr_by_class(&action.group, &action.stabilizer, x)?;
        if by_class != ratio {
            return Err(Error::Inconsistent(format!(
                "fixed point ratio {ratio} differs from class ratio {by_class} for {x}"
            )));
        }
    }
    Ok(ratio)
}

/// Proportion of points fixed by every element of `P`.
pub fn fpr_subgroup(action: &CosetAction, p: &PermGroup) -> Result<ExactRatio> {
    p.require_subgroup_of(&action.group)?;
    let fixed = (0..action.degree())
        .filter(|&i| p.generators().iter().all(|g| action.fixes(i, g)))
        .count();
    Ok(ExactRatio::new(fixed as u64, action.degree() as u64))
}

/// Cycle lengths of the canonical p-element of `A_n`, longest first.
pub fn canonical_cycle_type(n: usize, p: u64) -> Result<Vec<usize>> {
    check_prime(p)?;
    if n < p as usize {
        return Err(Error::NoPElement { n, p });
    }
    let profile = PadicProfile::new(n as u64, p)?;
    let f = profile.top();
    let mut counts: Vec<(usize, u64)> = (0..=f)
        .rev()
        .map(|i| ((p as usize).pow(i as u32), profile.digit(i)))
        .collect();
    if p == 2 && profile.upper_digit_sum() % 2 == 1 {
        // replace the single 2^f-cycle by two 2^(f-1)-cycles
        counts[0].1 -= 1;
        counts[1].1 += 2;
    }
    Ok(counts
        .into_iter()
        .flat_map(|(len, count)| std::iter::repeat(len).take(count as usize))
        .collect())
}

/// The canonical p-element of `A_n` built from the p-adic digits of `n`.
///
/// For odd `p` (or `p = 2` with an even sum of the digits above `a_0`) it has
/// `a_i` cycles of length `p^i`; otherwise the `2^f`-cycle is split into two
/// `2^(f-1)`-cycles. Cycles sit on consecutive points from 1, longest first.
pub fn canonical_p_element(n: usize, p: u64) -> Result<Permutation> {
    let lengths = canonical_cycle_type(n, p)?;
    let mut cycles = Vec::new();
    let mut next = 1;
    for len in lengths {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    Permutation::from_cycles(n, &cycles)
}

/// Number of `k`-subsets fixed by `x`: subsets that are unions of cycles.
pub fn fixed_subset_count(x: &Permutation, k: usize) -> BigUint {
    // subset-sum count over the cycles (fixed points count as 1-cycles)
    let mut ways = vec![BigUint::zero(); k + 1];
    ways[0] = BigUint::from(1u32);
    for len in x.cycle_type() {
        for total in (len..=k).rev() {
            let add = ways[total - len].clone();
            ways[total] += add;
        }
    }
    ways.swap_remove(k)
}

/// Closed-form fixed point ratio of the canonical p-element on `k`-subsets:
/// the product of `C(a_i, b_i)` over the p-adic digits of `n` and `k`,
/// divided by `C(n, k)`.
pub fn subset_fpr_formula(n: usize, k: usize, p: u64) -> Result<ExactRatio> {
    check_prime(p)?;
    if k == 0 || 2 * k >= n {
        return Err(Error::OutOfDomain(format!("need 1 <= k < n/2, got n={n}, k={k}")));
    }
    if n < p as usize {
        return Err(Error::NoPElement { n, p });
    }
    let a = PadicProfile::new(n as u64, p)?;
    if p == 2 && a.upper_digit_sum() % 2 == 1 {
        return Err(Error::OutOfDomain(format!(
            "p = 2 with odd upper digit sum for n = {n}; count fixed subsets directly"
        )));
    }
    let b = PadicProfile::new(k as u64, p)?;
    let numerator = (0..=a.top()).fold(BigUint::from(1u32), |acc, i| {
        acc * binomial(a.digit(i), b.digit(i))
    });
    Ok(ExactRatio::from_biguint(&numerator, &binomial(n as u64, k as u64)))
}

/// Fixed point ratio of the canonical p-element on `k`-subsets, by the closed
/// form where valid and by counting fixed subsets otherwise.
pub fn subset_fpr(n: usize, k: usize, p: u64) -> Result<ExactRatio> {
    match subset_fpr_formula(n, k, p) {
        Err(Error::OutOfDomain(_)) if k >= 1 && 2 * k < n => {
            let x = canonical_p_element(n, p)?;
            Ok(ExactRatio::from_biguint(
                &fixed_subset_count(&x, k),
                &binomial(n as u64, k as u64),
            ))
        }
        other => other,
    }
}

/// A nontrivial p-element of least fixed point ratio, scanning one
/// representative (the smallest element) per conjugacy class. Ties go to the
/// smaller element order, then to the smaller image table.
pub fn min_fpr_p_element(action: &CosetAction, p: u64) -> Result<(Permutation, ExactRatio)> {
    check_prime(p)?;
    let group = action.group();
    if (group.order() % BigUint::from(p)) != BigUint::zero() {
        return Err(Error::PreconditionFailed(format!("{p} does not divide the group order")));
    }
    let classes = group.classes_matching(|x| x.is_p_element(p) && !x.is_identity())?;
    let scored = classes
        .par_iter()
        .map(|class| {
            let rep = &class[0];
            let fixed = (0..action.degree()).filter(|&i| action.fixes(i, rep)).count();
            (ExactRatio::new(fixed as u64, action.degree() as u64), rep.order(), rep.clone())
        })
        .collect::<Vec<_>>();
    let (ratio, _, rep) = scored
        .into_iter()
        .min()
        .expect("p divides the order, so a nontrivial p-element exists");
    Ok((rep, ratio))
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitBoundReport {
    pub p: u64,
    pub degree: usize,
    pub sylow_orbits: usize,
    pub generated_by_p_elements: bool,
    /// `floor(p |Ω| / (2p - 1))`.
    pub orbit_bound: u64,
    pub within_orbit_bound: bool,
    /// Whether the stronger bound `2|Ω|/(p+1)` applies (no exceptional
    /// alternating factor); `None` when unknown.
    pub strong_bound_applies: Option<bool>,
    pub within_strong_bound: bool,
    pub holds: bool,
}

/// Counts the orbits of a Sylow p-subgroup on `Ω` and compares with
/// `p|Ω|/(2p-1)`, and with `2|Ω|/(p+1)` when `no_exceptional_factor` says the
/// group has no alternating factor `A_m`, `p+1 < m < p^2-p`.
pub fn sylow_orbit_bound_check(
    action: &CosetAction,
    p: u64,
    no_exceptional_factor: Option<bool>,
) -> Result<OrbitBoundReport> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::PreconditionFailed("the orbit bound needs an odd prime".into()));
    }
    let group = action.group();
    if (group.order() % BigUint::from(p)) != BigUint::zero() {
        return Err(Error::PreconditionFailed(format!("{p} does not divide the group order")));
    }
    let sylow = sylow_subgroup(group, p)?;
    let induced = action
        .image
        .subgroup(sylow.generators().iter().map(|g| action.induced(g)))?;
    let orbits = induced.orbits().len();
    let omega = action.degree() as u64;
    let generated = group.is_generated_by_p_elements(p)?;
    let orbit_bound = p * omega / (2 * p - 1);
    let within_orbit_bound = orbits as u64 <= orbit_bound;
    let within_strong_bound = orbits as u64 * (p + 1) <= 2 * omega;
    let holds = (!generated || within_orbit_bound)
        && (no_exceptional_factor != Some(true) || within_strong_bound);
    Ok(OrbitBoundReport {
        p,
        degree: action.degree(),
        sylow_orbits: orbits,
        generated_by_p_elements: generated,
        orbit_bound,
        within_orbit_bound,
        strong_bound_applies: no_exceptional_factor,
        within_strong_bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn point_stabilizer(g: &PermGroup) -> PermGroup {
        let els = g.elements().unwrap();
        PermGroup::from_subgroup_elements(g.degree(), els.iter().filter(|x| x.images()[0] == 0))
    }

    #[test]
    fn coset_action_examples() {
        let a5 = PermGroup::alternating(5);
        let a4 = a5.subgroup([perm("(2 3 4)", 5), perm("(2 3)(4 5)", 5)]).unwrap();
        let act = coset_action(&a5, &a4).unwrap();
        assert_eq!(act.degree(), 5);
        assert!(act.action_image().is_transitive());
        assert_eq!(act.action_image().order_u64(), Some(60));

        let s3 = PermGroup::symmetric(3);
        let h = s3.subgroup([perm("(1 2)", 3)]).unwrap();
        assert_eq!(coset_action(&s3, &h).unwrap().degree(), 3);
        assert!(matches!(coset_action(&s3, &s3), Err(Error::NotProper)));
        let foreign = s3.subgroup([perm("(1 2 3)", 3)]).unwrap();
        let c2 = PermGroup::from_cycle_strings(3, &["(1 2)"]).unwrap();
        assert!(matches!(coset_action(&c2, &foreign), Err(Error::NotASubgroup)));
    }

    #[test]
    fn stabilizer_of_first_point_is_h() {
        let s4 = PermGroup::symmetric(4);
        let d8 = s4.subgroup([perm("(1 2 3 4)", 4), perm("(1 3)", 4)]).unwrap();
        let act = coset_action(&s4, &d8).unwrap();
        assert_eq!(act.degree() as u64 * 8, 24);
        for x in s4.elements().unwrap().iter() {
            let moved = act.act(x).unwrap();
            assert_eq!(moved.images()[0] == 0, d8.contains(x).unwrap());
        }
        // kernel is the core of D8, i.e. V4
        let kernel = s4.elements().unwrap().iter().filter(|x| act.act(x).unwrap().is_identity()).count();
        assert_eq!(kernel, 4);
        assert_eq!(act.conjugate_at(1).unwrap().order_u64(), Some(8));
    }

    #[test]
    fn scan_lookup_agrees_with_canonical() {
        // A7 on the cosets of A6 uses the scanning lookup
        let a7 = PermGroup::alternating(7);
        let a6 = point_stabilizer(&a7);
        let act = coset_action(&a7, &a6).unwrap();
        assert!(matches!(act.lookup, CosetLookup::Scan));
        assert_eq!(act.degree(), 7);
        let x = perm("(1 2 3)(4 5 6)", 7);
        assert_eq!(fpr_element(&act, &x).unwrap(), ExactRatio::new(1, 7));
    }

    #[test]
    fn fpr_examples() {
        let a5 = PermGroup::alternating(5);
        let act = coset_action(&a5, &point_stabilizer(&a5)).unwrap();
        assert_eq!(fpr_element(&act, &Permutation::identity(5)).unwrap(), ExactRatio::one());
        // the 3-cycle fixes two of five points
        let x = perm("(1 2 3)", 5);
        assert_eq!(fpr_element(&act, &x).unwrap(), ExactRatio::new(2, 5));
        let a6 = PermGroup::alternating(6);
        let act6 = coset_action(&a6, &point_stabilizer(&a6)).unwrap();
        assert!(fpr_element(&act6, &perm("(1 2 3 4)(5 6)", 6)).unwrap().is_zero());
        assert!(matches!(fpr_element(&act, &perm("(1 2)", 5)), Err(Error::NotAMember)));
    }

    #[test]
    fn subgroup_fpr_examples() {
        let a5 = PermGroup::alternating(5);
        let act = coset_action(&a5, &point_stabilizer(&a5)).unwrap();
        assert_eq!(fpr_subgroup(&act, &PermGroup::trivial(5)).unwrap(), ExactRatio::one());
        let c3 = a5.subgroup([perm("(1 2 3)", 5)]).unwrap();
        assert_eq!(fpr_subgroup(&act, &c3).unwrap(), ExactRatio::new(2, 5));
        for x in c3.elements().unwrap().iter() {
            assert!(fpr_subgroup(&act, &c3).unwrap() <= fpr_element(&act, x).unwrap());
        }
    }

    #[test]
    fn canonical_elements() {
        assert_eq!(canonical_p_element(5, 3).unwrap(), perm("(1 2 3)", 5));
        assert_eq!(canonical_p_element(5, 2).unwrap(), perm("(1 2)(3 4)", 5));
        assert_eq!(canonical_p_element(6, 2).unwrap(), perm("(1 2 3 4)(5 6)", 6));
        assert_eq!(canonical_p_element(11, 3).unwrap(), perm("(1 2 3 4 5 6 7 8 9)", 11));
        assert_eq!(canonical_p_element(7, 2).unwrap(), perm("(1 2 3 4)(5 6)", 7));
        assert!(matches!(canonical_p_element(4, 5), Err(Error::NoPElement { .. })));
        assert!(matches!(canonical_p_element(4, 6), Err(Error::NotPrime(6))));
        for n in 2..=40 {
            for p in [2u64, 3, 5, 7] {
                if let Ok(x) = canonical_p_element(n, p) {
                    assert!(x.is_even(), "n={n} p={p}");
                    assert!(x.is_p_element(p), "n={n} p={p}");
                }
            }
        }
    }

    /// Fixed k-subsets by listing every subset.
    fn brute_subset_fpr(n: usize, k: usize, p: u64) -> ExactRatio {
        let x = canonical_p_element(n, p).unwrap();
        let mut fixed = 0u64;
        let mut total = 0u64;
        for s in (0..n).combinations(k) {
            total += 1;
            if s.iter().all(|&i| s.contains(&(x.images()[i] as usize))) {
                fixed += 1;
            }
        }
        ExactRatio::new(fixed, total)
    }

    #[test]
    fn subset_formula_examples() {
        assert_eq!(subset_fpr_formula(5, 1, 3).unwrap(), ExactRatio::new(2, 5));
        assert!(subset_fpr_formula(11, 4, 3).unwrap().is_zero());
        assert!(brute_subset_fpr(11, 4, 3).is_zero());
        assert_eq!(subset_fpr_formula(6, 2, 2).unwrap(), ExactRatio::new(1, 15));
        assert_eq!(brute_subset_fpr(6, 2, 2), ExactRatio::new(1, 15));
        assert!(matches!(subset_fpr_formula(5, 1, 2), Err(Error::OutOfDomain(_))));
        assert!(matches!(subset_fpr_formula(6, 3, 3), Err(Error::OutOfDomain(_))));
        assert!(matches!(subset_fpr_formula(6, 0, 3), Err(Error::OutOfDomain(_))));
        // routed to counting: (1 2)(3 4) on 1-subsets fixes {5}
        assert_eq!(subset_fpr(5, 1, 2).unwrap(), ExactRatio::new(1, 5));
        assert_eq!(subset_fpr(5, 2, 2).unwrap(), brute_subset_fpr(5, 2, 2));
    }

    #[test]
    fn fixed_subset_count_matches_listing() {
        for n in 3..=10 {
            for p in [2u64, 3, 5, 7] {
                for k in 1..n {
                    if 2 * k >= n || n < p as usize {
                        continue;
                    }
                    let counted = subset_fpr(n, k, p).unwrap();
                    assert_eq!(counted, brute_subset_fpr(n, k, p), "n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn min_fpr_examples() {
        let a5 = PermGroup::alternating(5);
        let act = coset_action(&a5, &point_stabilizer(&a5)).unwrap();
        let (x, r) = min_fpr_p_element(&act, 3).unwrap();
        assert_eq!(r, ExactRatio::new(2, 5));
        // smallest image table in the class of 3-cycles
        assert_eq!(x, perm("(3 4 5)", 5));
        let s3 = PermGroup::symmetric(3);
        let act = coset_action(&s3, &point_stabilizer(&s3)).unwrap();
        assert_eq!(min_fpr_p_element(&act, 2).unwrap().1, ExactRatio::new(1, 3));
        assert!(min_fpr_p_element(&act, 5).is_err());
        let s5 = PermGroup::symmetric(5);
        let act = coset_action(&s5, &point_stabilizer(&s5)).unwrap();
        for p in [2, 3, 5] {
            assert!(min_fpr_p_element(&act, p).unwrap().1 < ExactRatio::one());
        }
    }

    #[test]
    fn orbit_bound_examples() {
        let a4 = PermGroup::alternating(4);
        let act = coset_action(&a4, &point_stabilizer(&a4)).unwrap();
        let r = sylow_orbit_bound_check(&act, 3, None).unwrap();
        assert_eq!(r.sylow_orbits, 2);
        assert!(r.holds);
        let a5 = PermGroup::alternating(5);
        let act = coset_action(&a5, &point_stabilizer(&a5)).unwrap();
        let r = sylow_orbit_bound_check(&act, 5, None).unwrap();
        assert_eq!(r.sylow_orbits, 1);
        let r = sylow_orbit_bound_check(&act, 3, Some(false)).unwrap();
        assert_eq!(r.sylow_orbits, 3);
        assert_eq!(r.orbit_bound, 3);
        assert!(r.within_orbit_bound && r.holds);
        assert!(sylow_orbit_bound_check(&act, 2, None).is_err());
    }
}
