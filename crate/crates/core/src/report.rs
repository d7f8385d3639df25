//! Named checks and their machine-readable reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::actions::{coset_action, sylow_orbit_bound_check};
use crate::arith::prime_divisors;
use crate::catalog::{catalog_groups, construct_with_caps, no_alternating_exception, no_exceptional_quotient};
use crate::config::Caps;
use crate::covering::sigma_lower_bound_check;
use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::graphs::{noncommuting_graph, pr_times_clique_check, sigma_le_clique_check, turan_bound_check, Graph};
use crate::group::PermGroup;
use crate::perm::{parse_cycles_at, Permutation};
use crate::ratio::ExactRatio;
use crate::sylow::{
    conjecture_d_scan, nu_fpr_identity_check, nu_monotonicity_check, nu_quotient_identity_check,
    p_solvable_divisibility_check, theorem_c_check,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    TheoremC,
    TheoremF,
    Turan,
    NuMonotonicity,
    NuQuotient,
    NuFpr,
    PSolvableDivisibility,
    OrbitBound,
    PrClique,
    SigmaClique,
    ConjectureD,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::TheoremC,
        CheckId::TheoremF,
        CheckId::Turan,
        CheckId::NuMonotonicity,
        CheckId::NuQuotient,
        CheckId::NuFpr,
        CheckId::PSolvableDivisibility,
        CheckId::OrbitBound,
        CheckId::PrClique,
        CheckId::SigmaClique,
        CheckId::ConjectureD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::TheoremC => "theorem-c",
            CheckId::TheoremF => "theorem-f",
            CheckId::Turan => "turan",
            CheckId::NuMonotonicity => "nu-monotonicity",
            CheckId::NuQuotient => "nu-quotient",
            CheckId::NuFpr => "nu-fpr",
            CheckId::PSolvableDivisibility => "p-solvable-divisibility",
            CheckId::OrbitBound => "orbit-bound",
            CheckId::PrClique => "pr-clique",
            CheckId::SigmaClique => "sigma-clique",
            CheckId::ConjectureD => "conjecture-d",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            CheckId::TheoremC => "nu_p(H) <= (p-1)/(2p-1) nu_p(G) for H containing a Sylow subgroup",
            CheckId::TheoremF => "sigma_p(G) >= p + 1",
            CheckId::Turan => "edge count <= (1 - 1/omega) n^2 / 2",
            CheckId::NuMonotonicity => "nu_p(H) <= nu_p(G) with the equality conditions",
            CheckId::NuQuotient => "nu_p(G) = nu_p(G/N) nu_p(PN)",
            CheckId::NuFpr => "nu_p(H)/nu_p(G) = fpr(P) on the cosets of a maximal H",
            CheckId::PSolvableDivisibility => "nu_p(H) divides nu_p(G) in p-solvable groups",
            CheckId::OrbitBound => "Sylow orbit count <= p|Omega|/(2p-1)",
            CheckId::PrClique => "Pr_pi(G) n_pi(G) >= 1",
            CheckId::SigmaClique => "sigma_p(G) <= n_p(G)",
            CheckId::ConjectureD => "scan for f nu_p(G) < nu_p(H) < nu_p(G)",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// A group given either by an expression or by a plain generator list.
#[derive(Debug, Clone)]
pub struct GroupInput {
    pub label: String,
    pub expr: Option<GroupExpr>,
    pub group: PermGroup,
}

impl GroupInput {
    pub fn from_expr(text: &str, caps: Caps) -> Result<Self> {
        let expr = GroupExpr::parse(text)?;
        let group = construct_with_caps(&expr, caps)?;
        Ok(GroupInput {
            label: expr.to_string(),
            expr: Some(expr),
            group,
        })
    }

    /// One permutation per line in cycle notation; `#` starts a comment. A
    /// `# degree: N` comment fixes the degree, which otherwise is the largest
    /// point mentioned.
    pub fn from_generator_file(label: &str, text: &str, caps: Caps) -> Result<Self> {
        let mut degree: Option<usize> = None;
        let mut cycles = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let (body, comment) = match line.find('#') {
                Some(i) => (&line[..i], Some(&line[i + 1..])),
                None => (line, None),
            };
            if let Some(d) = comment.and_then(|c| c.trim().strip_prefix("degree:")) {
                degree = Some(d.trim().parse().map_err(|_| Error::syntax(start, "bad degree"))?);
            }
            if body.trim().is_empty() {
                continue;
            }
            cycles.push(parse_cycles_at(body, start)?);
        }
        let largest = cycles.iter().flatten().flatten().copied().max().unwrap_or(1);
        let n = degree.unwrap_or(largest);
        if n < largest {
            return Err(Error::PointOutOfRange { point: largest, degree: n });
        }
        let gens = cycles
            .iter()
            .map(|c| Permutation::from_cycles(n, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupInput {
            label: label.to_string(),
            expr: None,
            group: PermGroup::new(n, gens)?.with_caps(caps),
        })
    }

    /// The same group acting on `degree` points, fixing the new ones.
    pub fn embedded(&self, degree: usize) -> Result<PermGroup> {
        if self.group.degree() > degree {
            return Err(Error::DegreeMismatch {
                left: self.group.degree(),
                right: degree,
            });
        }
        Ok(PermGroup::new(degree, self.group.generators().iter().map(|g| g.extend(degree)))?
            .with_caps(self.group.caps()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupEcho {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupEcho {
    fn of(label: &str, g: &PermGroup) -> Self {
        GroupEcho {
            label: label.to_string(),
            degree: g.degree(),
            generators: g.generator_strings(),
        }
    }
}

/// One evaluated instance of a check, typically one prime. An instance
/// whose hypotheses fail is kept with `applicable: false`; it holds
/// vacuously.
#[derive(Debug, Clone, Serialize)]
pub struct ReportItem {
    pub label: String,
    pub applicable: bool,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<GroupEcho>,
    pub primes: Vec<u64>,
    pub items: Vec<ReportItem>,
    pub holds: bool,
    pub runtime_ms: u64,
    pub notices: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub group: Option<GroupInput>,
    pub sub: Option<GroupInput>,
    /// Primes to check; empty means every prime divisor of `|G|`.
    pub primes: Vec<u64>,
    /// Prime set for the π-checks; defaults to each prime separately.
    pub pi: Vec<u64>,
    pub f: Option<ExactRatio>,
    pub graph: Option<Graph>,
    pub caps: Caps,
    pub parallel: bool,
}

fn item<T: Serialize>(label: String, result: Result<T>, holds: impl Fn(&T) -> bool) -> ReportItem {
    match result {
        Ok(r) => ReportItem {
            applicable: true,
            holds: holds(&r),
            values: Some(serde_json::to_value(&r).expect("reports serialize")),
            error: None,
            label,
        },
        Err(e) => ReportItem {
            label,
            applicable: !hypothesis_fails(&e),
            holds: hypothesis_fails(&e),
            values: None,
            error: Some(e.to_string()),
        },
    }
}

fn hypothesis_fails(e: &Error) -> bool {
    matches!(
        e,
        Error::PreconditionFailed(_)
            | Error::SylowNotContained(_)
            | Error::NotPSolvable(_)
            | Error::NoPElement { .. }
            | Error::NotMaximal
            | Error::NotNormal
            | Error::NotProper
    )
}

fn need<'a>(input: &'a Option<GroupInput>, what: &str, check: CheckId) -> Result<&'a GroupInput> {
    input
        .as_ref()
        .ok_or_else(|| Error::PreconditionFailed(format!("`{check}` needs {what}")))
}

/// Runs a check. Failures of individual items (a precondition that does not
/// hold for one prime, say) are recorded in the report; only malformed
/// requests return an error.
pub fn run_check(check: CheckId, options: &CheckOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut notices = Vec::new();
    let group = options.group.as_ref();
    let sub = match (&options.sub, group) {
        (Some(s), Some(g)) => Some(s.embedded(g.group.degree())?),
        _ => None,
    };
    let primes: Vec<u64> = if !options.primes.is_empty() {
        for &p in &options.primes {
            crate::arith::check_prime(p)?;
        }
        options.primes.clone()
    } else {
        group.map(|g| prime_divisors(&g.group.order())).unwrap_or_default()
    };

    let per_prime = |f: &(dyn Fn(u64) -> ReportItem + Sync)| -> Vec<ReportItem> {
        if options.parallel {
            primes.par_iter().map(|&p| f(p)).collect()
        } else {
            primes.iter().map(|&p| f(p)).collect()
        }
    };

    let items: Vec<ReportItem> = match check {
        CheckId::TheoremC => {
            let g = need(&options.group, "--group", check)?;
            let h = sub.clone().ok_or_else(|| Error::PreconditionFailed("`theorem-c` needs --sub".into()))?;
            per_prime(&|p| {
                let flag = g.expr.as_ref().map(|e| no_exceptional_quotient(e, p)).transpose().map(Option::flatten);
                let r = flag.and_then(|flag| theorem_c_check(&g.group, &h, p, flag));
                item(format!("p={p}"), r, |r| r.holds)
            })
        }
        CheckId::TheoremF => {
            let g = need(&options.group, "--group", check)?;
            per_prime(&|p| item(format!("p={p}"), sigma_lower_bound_check(&g.group, p), |r| r.holds))
        }
        CheckId::Turan => match (&options.graph, group) {
            (Some(graph), _) => vec![item("edge list".into(), turan_bound_check(graph), |r| r.holds)],
            (None, Some(g)) => pi_sets(options, &primes)
                .into_iter()
                .map(|pi| {
                    let r = noncommuting_graph(&g.group, &pi).and_then(|ng| turan_bound_check(&ng.graph));
                    item(format!("pi={pi:?}"), r, |r| r.holds)
                })
                .collect(),
            (None, None) => {
                return Err(Error::PreconditionFailed("`turan` needs --edge-list or --group".into()))
            }
        },
        CheckId::NuMonotonicity => {
            let g = need(&options.group, "--group", check)?;
            let h = sub.clone().ok_or_else(|| Error::PreconditionFailed("`nu-monotonicity` needs --sub".into()))?;
            per_prime(&|p| item(format!("p={p}"), nu_monotonicity_check(&g.group, &h, p), |r| r.holds))
        }
        CheckId::NuQuotient => {
            let g = need(&options.group, "--group", check)?;
            let n = sub.clone().ok_or_else(|| Error::PreconditionFailed("`nu-quotient` needs --sub (the normal subgroup)".into()))?;
            per_prime(&|p| item(format!("p={p}"), nu_quotient_identity_check(&g.group, &n, p), |r| r.holds))
        }
        CheckId::NuFpr => {
            let g = need(&options.group, "--group", check)?;
            let h = sub.clone().ok_or_else(|| Error::PreconditionFailed("`nu-fpr` needs --sub".into()))?;
            per_prime(&|p| item(format!("p={p}"), nu_fpr_identity_check(&g.group, &h, p), |r| r.holds))
        }
        CheckId::PSolvableDivisibility => {
            let g = need(&options.group, "--group", check)?;
            per_prime(&|p| item(format!("p={p}"), p_solvable_divisibility_check(&g.group, p), |r| r.holds))
        }
        CheckId::OrbitBound => {
            let g = need(&options.group, "--group", check)?;
            let stabilizer = match &sub {
                Some(h) => h.clone(),
                None => {
                    if !g.group.is_transitive() {
                        return Err(Error::PreconditionFailed(
                            "`orbit-bound` without --sub needs a transitive group".into(),
                        ));
                    }
                    notices.push("acting on the given points (stabilizer of point 1)".into());
                    point_stabilizer(&g.group)?
                }
            };
            let action = coset_action(&g.group, &stabilizer)?;
            per_prime(&|p| {
                if p == 2 {
                    return ReportItem {
                        label: "p=2".into(),
                        applicable: false,
                        holds: true,
                        values: None,
                        error: Some("skipped: the orbit bound is for odd primes".into()),
                    };
                }
                let flag = g.expr.as_ref().map(|e| no_alternating_exception(e, p)).transpose().map(Option::flatten);
                let r = flag.and_then(|flag| sylow_orbit_bound_check(&action, p, flag));
                item(format!("p={p}"), r, |r| r.holds)
            })
        }
        CheckId::PrClique => {
            let g = need(&options.group, "--group", check)?;
            pi_sets(options, &primes)
                .into_iter()
                .map(|pi| item(format!("pi={pi:?}"), pr_times_clique_check(&g.group, &pi), |r| r.holds))
                .collect()
        }
        CheckId::SigmaClique => {
            let g = need(&options.group, "--group", check)?;
            per_prime(&|p| item(format!("p={p}"), sigma_le_clique_check(&g.group, p), |r| r.holds))
        }
        CheckId::ConjectureD => {
            let f = options
                .f
                .clone()
                .ok_or_else(|| Error::PreconditionFailed("`conjecture-d` needs --f".into()))?;
            let groups: Vec<(String, PermGroup)> = match group {
                Some(g) => vec![(g.label.clone(), g.group.clone())],
                None => {
                    notices.push("scanning the built-in catalog".into());
                    catalog_groups(u64::MAX)?
                        .into_iter()
                        .map(|c| (c.name, c.group.with_caps(options.caps)))
                        .collect()
                }
            };
            let primes = if options.primes.is_empty() {
                return Err(Error::PreconditionFailed("`conjecture-d` needs -p".into()));
            } else {
                &options.primes
            };
            primes
                .iter()
                .map(|&p| {
                    let r = conjecture_d_scan(&groups, p, &f);
                    if let Ok(out) = &r {
                        notices.extend(out.skipped.iter().map(|s| format!("p={p}: skipped {s}")));
                    }
                    item(format!("p={p}"), r, |out| out.violations.is_empty())
                })
                .collect()
        }
    };

    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        check: check.name().to_string(),
        group: group.map(|g| GroupEcho::of(&g.label, &g.group)),
        subgroup: options
            .sub
            .as_ref()
            .zip(sub.as_ref())
            .map(|(s, h)| GroupEcho::of(&s.label, h)),
        primes: primes.clone(),
        holds: items.iter().all(|i| i.holds),
        items,
        runtime_ms: started.elapsed().as_millis() as u64,
        notices,
    })
}

fn pi_sets(options: &CheckOptions, primes: &[u64]) -> Vec<Vec<u64>> {
    if options.pi.is_empty() {
        primes.iter().map(|&p| vec![p]).collect()
    } else {
        vec![options.pi.clone()]
    }
}

/// Stabilizer of point 1, by listing the elements.
pub fn point_stabilizer(g: &PermGroup) -> Result<PermGroup> {
    let elements = g.elements()?;
    Ok(PermGroup::from_subgroup_elements(g.degree(), elements.iter().filter(|x| x.images()[0] == 0))
        .with_caps(g.caps()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(group: &str, sub: Option<&str>, primes: &[u64]) -> CheckOptions {
        let caps = Caps::DEFAULT;
        CheckOptions {
            group: Some(GroupInput::from_expr(group, caps).unwrap()),
            sub: sub.map(|s| GroupInput::from_expr(s, caps).unwrap()),
            primes: primes.to_vec(),
            caps,
            ..Default::default()
        }
    }

    fn has_float(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Number(n) => n.is_f64(),
            serde_json::Value::Array(a) => a.iter().any(has_float),
            serde_json::Value::Object(o) => o.values().any(has_float),
            _ => false,
        }
    }

    #[test]
    fn check_names_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.name().parse::<CheckId>().unwrap(), c);
        }
        assert!(matches!("nope".parse::<CheckId>(), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn theorem_c_report() {
        let r = run_check(CheckId::TheoremC, &opts("A5", Some("A4"), &[3])).unwrap();
        assert!(r.holds);
        let v = r.items[0].values.as_ref().unwrap();
        assert_eq!(v["ratio"], serde_json::json!({"num": 2, "den": 5}));
        assert_eq!(v["no_exceptional_factor"], serde_json::json!(false));
        assert!(!has_float(&serde_json::to_value(&r).unwrap()));
    }

    #[test]
    fn failures_are_items() {
        let r = run_check(CheckId::TheoremF, &opts("S4", None, &[3])).unwrap();
        assert!(r.holds);
        assert!(!r.items[0].applicable);
        assert!(r.items[0].error.as_ref().unwrap().contains("not generated"));
        let mut o = opts("A5", None, &[5]);
        o.group = Some(GroupInput::from_expr("A5", Caps::DEFAULT.with_elements(10)).unwrap());
        let r = run_check(CheckId::TheoremF, &o).unwrap();
        assert!(!r.holds && r.items[0].applicable);
        let r = run_check(CheckId::TheoremF, &opts("C3 wr C3", None, &[])).unwrap();
        assert_eq!(r.primes, vec![3]);
        assert!(r.holds);
        assert!(run_check(CheckId::TheoremC, &opts("A5", None, &[3])).is_err());
    }

    #[test]
    fn orbit_bound_and_graph_checks() {
        let r = run_check(CheckId::OrbitBound, &opts("A5", None, &[])).unwrap();
        assert!(r.holds);
        assert_eq!(r.items.len(), 3);
        let r = run_check(CheckId::PrClique, &opts("S3", None, &[2])).unwrap();
        assert!(r.holds);
        let mut o = opts("S3", None, &[]);
        o.graph = Some(Graph::complete(5));
        let r = run_check(CheckId::Turan, &o).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn generator_file_input() {
        let text = "# degree: 5\n(1 2 3)\n\n(1 2)(4 5)  # an involution\n";
        let g = GroupInput::from_generator_file("file", text, Caps::DEFAULT).unwrap();
        assert_eq!(g.group.degree(), 5);
        assert_eq!(g.group.order_u64(), Some(6));
        assert!(matches!(
            GroupInput::from_generator_file("f", "(1 2)\n(3 0)\n", Caps::DEFAULT),
            Err(Error::Syntax { offset: 9, .. })
        ));
    }
}
