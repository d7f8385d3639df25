//! Sylow subgroups, Sylow numbers and the inequalities relating the Sylow
//! numbers of a group and its subgroups.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::actions::{coset_action, fpr_subgroup};
use crate::arith::{check_prime, p_part};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::ratio::{bigint_json, ExactRatio};

/// A Sylow p-subgroup: start from a p-element of largest order and keep
/// adjoining p-elements of `N_G(P) \ P` until the order is `|G|_p`.
pub fn sylow_subgroup(group: &PermGroup, p: u64) -> Result<PermGroup> {
    check_prime(p)?;
    let target = p_part(&group.order(), p);
    if target.is_one() {
        return Ok(PermGroup::trivial(group.degree()).with_caps(group.caps()));
    }
    let elements = group.elements()?;
    let start = elements
        .iter()
        .filter(|x| x.is_p_element(p))
        .max_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.cmp(a)))
        .expect("identity is a p-element");
    let mut sylow = group.subgroup([start.clone()])?;
    while sylow.order() < target {
        let next = elements
            .iter()
            .find(|y| {
                y.is_p_element(p)
                    && !sylow.contains(y).unwrap_or(true)
                    && sylow
                        .generators()
                        .iter()
                        .all(|x| sylow.contains(&x.conjugate_by(y)).unwrap_or(false))
            })
            .ok_or_else(|| Error::Inconsistent("p-subgroup with no p-element in its normalizer outside it".into()))?;
        let mut gens = sylow.generators().to_vec();
        gens.push(next.clone());
        sylow = group.subgroup(gens)?;
    }
    debug_assert_eq!(sylow.order(), target);
    Ok(sylow)
}

/// `ν_p(G) = |G : N_G(P)|`, checked against `ν_p ≡ 1 (mod p)`.
pub fn nu_p(group: &PermGroup, p: u64) -> Result<BigUint> {
    let sylow = sylow_subgroup(group, p)?;
    if sylow.is_trivial() {
        return Ok(BigUint::one());
    }
    let normalizer = group.normalizer(&sylow)?;
    let nu = group.order() / normalizer.order();
    if !(&nu % p).is_one() {
        return Err(Error::Inconsistent(format!("Sylow number {nu} is not 1 mod {p}")));
    }
    Ok(nu)
}

/// Every Sylow p-subgroup, as conjugates of one of them.
pub fn sylow_subgroups(group: &PermGroup, p: u64) -> Result<Vec<PermGroup>> {
    let sylow = sylow_subgroup(group, p)?;
    group.conjugates_of(&sylow)
}

fn nu_u64(nu: &BigUint) -> u64 {
    nu.to_u64().expect("Sylow number fits in u64 within caps")
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub p: u64,
    pub nu_g: u64,
    pub nu_h: u64,
    /// Every Sylow p-subgroup of `H` lies in exactly one of `G`.
    pub unique_containment: bool,
    /// `G = H N_G(P)`.
    pub product_condition: bool,
    pub holds: bool,
}

/// `ν_p(H) ≤ ν_p(G)`, with equality exactly when Sylow subgroups of `H` sit in
/// unique Sylow subgroups of `G` and `G = H N_G(P)`. Both conditions are
/// checked by enumeration.
pub fn nu_monotonicity_check(group: &PermGroup, sub: &PermGroup, p: u64) -> Result<MonotonicityReport> {
    check_prime(p)?;
    sub.require_subgroup_of(group)?;
    let nu_g = nu_u64(&nu_p(group, p)?);
    let nu_h = nu_u64(&nu_p(sub, p)?);

    let g_sylows = sylow_subgroups(group, p)?;
    let h_sylows = sylow_subgroups(sub, p)?;
    let unique_containment = h_sylows.iter().all(|q| {
        g_sylows
            .iter()
            .filter(|s| q.is_subgroup_of(s).unwrap_or(false))
            .count()
            == 1
    });

    // P is a Sylow subgroup of G containing one of H
    let q = sylow_subgroup(sub, p)?;
    let p_sylow = g_sylows
        .iter()
        .find(|s| q.is_subgroup_of(s).unwrap_or(false))
        .expect("every p-subgroup lies in a Sylow subgroup");
    let normalizer = group.normalizer(p_sylow)?;
    let meet = normalizer
        .elements()?
        .iter()
        .filter(|x| sub.contains(x).unwrap_or(false))
        .count();
    let product_condition = sub.order() * normalizer.order() == group.order() * BigUint::from(meet);

    let both = unique_containment && product_condition;
    let holds = nu_h <= nu_g && ((nu_h == nu_g) == both);
    Ok(MonotonicityReport {
        p,
        nu_g,
        nu_h,
        unique_containment,
        product_condition,
        holds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub p: u64,
    pub nu_g: u64,
    pub nu_quotient: u64,
    /// `ν_p(PN)` for a Sylow p-subgroup `P` of `G`.
    pub nu_pn: u64,
    pub holds: bool,
}

/// `ν_p(G) = ν_p(G/N) · ν_p(PN)`.
pub fn nu_quotient_identity_check(group: &PermGroup, normal: &PermGroup, p: u64) -> Result<QuotientReport> {
    check_prime(p)?;
    let quotient = group.quotient(normal)?;
    let sylow = sylow_subgroup(group, p)?;
    let pn = group.subgroup(
        sylow
            .generators()
            .iter()
            .chain(normal.generators())
            .cloned(),
    )?;
    let nu_g = nu_u64(&nu_p(group, p)?);
    let nu_quotient = nu_u64(&nu_p(quotient.group(), p)?);
    let nu_pn = nu_u64(&nu_p(&pn, p)?);
    Ok(QuotientReport {
        p,
        nu_g,
        nu_quotient,
        nu_pn,
        holds: nu_g == nu_quotient * nu_pn,
    })
}

/// Errors unless `H` contains a Sylow p-subgroup of `G`.
fn require_full_p_part(group: &PermGroup, sub: &PermGroup, p: u64) -> Result<()> {
    if p_part(&group.order(), p) != p_part(&sub.order(), p) {
        return Err(Error::SylowNotContained(p));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct FprIdentityReport {
    pub p: u64,
    pub nu_g: u64,
    pub nu_h: u64,
    pub ratio: ExactRatio,
    /// Proportion of cosets of `H` fixed by a Sylow p-subgroup of `H`.
    pub fpr: ExactRatio,
    pub holds: bool,
}

/// For a maximal subgroup `H` containing a Sylow p-subgroup `P`:
/// `ν_p(H)/ν_p(G) = fpr(P, G/H)`.
pub fn nu_fpr_identity_check(group: &PermGroup, sub: &PermGroup, p: u64) -> Result<FprIdentityReport> {
    check_prime(p)?;
    let lattice = group.subgroup_lattice()?;
    let i = lattice.index_of(sub)?;
    if !lattice.is_maximal(i) {
        return Err(Error::NotMaximal);
    }
    require_full_p_part(group, sub, p)?;
    let sylow = sylow_subgroup(sub, p)?;
    let action = coset_action(group, sub)?;
    let fpr = fpr_subgroup(&action, &sylow)?;
    let nu_g = nu_u64(&nu_p(group, p)?);
    let nu_h = nu_u64(&nu_p(sub, p)?);
    let ratio = ExactRatio::new(nu_h, nu_g);
    Ok(FprIdentityReport {
        p,
        nu_g,
        nu_h,
        holds: ratio == fpr,
        ratio,
        fpr,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioBoundReport {
    pub p: u64,
    pub nu_g: u64,
    pub nu_h: u64,
    pub ratio: ExactRatio,
    /// `(p-1)/(2p-1)`.
    pub bound: ExactRatio,
    pub within_bound: bool,
    /// Whether `G` is known to have no exceptional composition factor; the
    /// bound `1/(p+1)` is asserted only when this is `Some(true)`.
    pub no_exceptional_factor: Option<bool>,
    pub strong_bound: ExactRatio,
    pub within_strong_bound: bool,
    pub holds: bool,
}

/// `ν_p(H) ≤ (p-1)/(2p-1) · ν_p(G)` for `G` generated by p-elements and a
/// proper `H` containing a Sylow p-subgroup; `ν_p(H) ≤ ν_p(G)/(p+1)` as well
/// when `no_exceptional_factor` is `Some(true)`.
pub fn theorem_c_check(
    group: &PermGroup,
    sub: &PermGroup,
    p: u64,
    no_exceptional_factor: Option<bool>,
) -> Result<RatioBoundReport> {
    check_prime(p)?;
    sub.require_subgroup_of(group)?;
    if sub.order() == group.order() {
        return Err(Error::NotProper);
    }
    if !group.is_generated_by_p_elements(p)? {
        return Err(Error::PreconditionFailed(format!("group is not generated by its {p}-elements")));
    }
    if p_part(&group.order(), p) != p_part(&sub.order(), p) {
        return Err(Error::PreconditionFailed(format!(
            "subgroup does not contain a Sylow {p}-subgroup"
        )));
    }
    let nu_g = nu_u64(&nu_p(group, p)?);
    let nu_h = nu_u64(&nu_p(sub, p)?);
    let within_bound = nu_h * (2 * p - 1) <= nu_g * (p - 1);
    let within_strong_bound = nu_h * (p + 1) <= nu_g;
    let holds = within_bound && (no_exceptional_factor != Some(true) || within_strong_bound);
    Ok(RatioBoundReport {
        p,
        nu_g,
        nu_h,
        ratio: ExactRatio::new(nu_h, nu_g),
        bound: ExactRatio::new(p - 1, 2 * p - 1),
        within_bound,
        no_exceptional_factor,
        strong_bound: ExactRatio::new(1, p + 1),
        within_strong_bound,
        holds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityFailure {
    pub subgroup_generators: Vec<String>,
    pub nu_h: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityReport {
    pub p: u64,
    pub nu_g: u64,
    pub subgroups_checked: usize,
    /// Distinct values of `ν_p(H)` seen, ascending.
    pub values: Vec<u64>,
    pub not_dividing: Vec<DivisibilityFailure>,
    /// Strict cases with `ν_p(H)(p+1) > ν_p(G)`.
    pub gap_too_small: Vec<DivisibilityFailure>,
    pub holds: bool,
}

/// For p-solvable `G`: every subgroup has `ν_p(H) | ν_p(G)`, and
/// `ν_p(H)(p+1) ≤ ν_p(G)` whenever the two differ.
pub fn p_solvable_divisibility_check(group: &PermGroup, p: u64) -> Result<DivisibilityReport> {
    check_prime(p)?;
    if !group.is_p_solvable(p)? {
        return Err(Error::NotPSolvable(p));
    }
    let lattice = group.subgroup_lattice()?;
    let nu_g = nu_u64(&nu_p(group, p)?);
    // ν_p is constant on conjugacy classes of subgroups
    let reps = lattice.class_representatives();
    let per_class = reps
        .par_iter()
        .map(|&i| {
            let e = lattice.entry(i);
            nu_p(&e.group, p).map(|nu| (i, nu_u64(&nu)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut values: Vec<u64> = per_class.iter().map(|&(_, v)| v).collect();
    values.sort_unstable();
    values.dedup();
    let mut not_dividing = Vec::new();
    let mut gap_too_small = Vec::new();
    for &(i, nu_h) in &per_class {
        let failure = || DivisibilityFailure {
            subgroup_generators: lattice.entry(i).group.generator_strings(),
            nu_h,
        };
        if nu_g % nu_h != 0 {
            not_dividing.push(failure());
        }
        if nu_h != nu_g && nu_h * (p + 1) > nu_g {
            gap_too_small.push(failure());
        }
    }
    Ok(DivisibilityReport {
        p,
        nu_g,
        subgroups_checked: lattice.len(),
        values,
        holds: not_dividing.is_empty() && gap_too_small.is_empty(),
        not_dividing,
        gap_too_small,
    })
}

/// A subgroup with `f·ν_p(G) < ν_p(H) < ν_p(G)`.
#[derive(Debug, Clone)]
pub struct Violation {
    pub group: String,
    pub subgroup_generators: Vec<String>,
    pub p: u64,
    pub nu_g: u64,
    pub nu_h: u64,
    pub ratio: ExactRatio,
}

impl Serialize for Violation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("group", &self.group)?;
        m.serialize_entry("subgroup_generators", &self.subgroup_generators)?;
        m.serialize_entry("p", &self.p)?;
        m.serialize_entry("nu_G", &self.nu_g)?;
        m.serialize_entry("nu_H", &self.nu_h)?;
        m.serialize_entry("ratio_num", &bigint_json(self.ratio.numer()))?;
        m.serialize_entry("ratio_den", &bigint_json(self.ratio.denom()))?;
        m.end()
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanOutcome {
    pub violations: Vec<Violation>,
    pub groups_scanned: Vec<String>,
    /// Groups left out, with the reason.
    pub skipped: Vec<String>,
}

/// Scans every subgroup of every listed group for `ν_p(H) < ν_p(G)` with
/// `ν_p(H) > f·ν_p(G)`. Groups beyond the lattice cap are skipped and named in
/// the outcome. Violations are sorted by decreasing ratio; every conjugate of
/// an offending subgroup is listed.
pub fn conjecture_d_scan(groups: &[(String, PermGroup)], p: u64, f: &ExactRatio) -> Result<ScanOutcome> {
    check_prime(p)?;
    let per_group = groups
        .par_iter()
        .map(|(name, g)| scan_one(name, g, p, f))
        .collect::<Vec<_>>();
    let mut outcome = ScanOutcome::default();
    for ((name, _), result) in groups.iter().zip(per_group) {
        match result {
            Ok(v) => {
                outcome.groups_scanned.push(name.clone());
                outcome.violations.extend(v);
            }
            Err(e @ Error::CapExceeded { .. }) => outcome.skipped.push(format!("{name}: {e}")),
            Err(e) => return Err(e),
        }
    }
    outcome.violations.sort_by(|a, b| {
        b.ratio
            .cmp(&a.ratio)
            .then_with(|| a.group.cmp(&b.group))
            .then_with(|| a.subgroup_generators.cmp(&b.subgroup_generators))
    });
    Ok(outcome)
}

fn scan_one(name: &str, group: &PermGroup, p: u64, f: &ExactRatio) -> Result<Vec<Violation>> {
    let lattice = group.subgroup_lattice()?;
    let nu_g = nu_u64(&nu_p(group, p)?);
    let mut out = Vec::new();
    for i in lattice.class_representatives() {
        let e = lattice.entry(i);
        let nu_h = nu_u64(&nu_p(&e.group, p)?);
        let ratio = ExactRatio::new(nu_h, nu_g);
        if nu_h >= nu_g || ratio.cmp(f) != Ordering::Greater {
            continue;
        }
        for (j, other) in lattice.entries().iter().enumerate() {
            if other.class_id == e.class_id {
                debug_assert!(j == i || lattice.class_size(i) > 1);
                out.push(Violation {
                    group: name.to_string(),
                    subgroup_generators: other.group.generator_strings(),
                    p,
                    nu_g,
                    nu_h,
                    ratio: ratio.clone(),
                });
            }
        }
    }
    Ok(out)
}
