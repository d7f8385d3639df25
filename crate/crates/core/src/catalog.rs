//! Permutation representations of group expressions and a catalog of small
//! groups.
//!
//! | expression | points |
//! |---|---|
//! | `Sn`, `An`, `Cn` | `n` |
//! | `D2n` | `n` |
//! | `SL(2,q)` | the `q^2 - 1` nonzero row vectors |
//! | `PSL(2,q)` | the `q + 1` projective points |
//! | `G x H` | disjoint union |
//! | `G wr H` | `deg G · deg H`, one block of `G` per point of `H` |

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::field::SmallField;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Nonabelian simple groups that can arise as factor groups of catalog
/// expressions, up to the isomorphisms `PSL(2,4) = PSL(2,5) = A5` and
/// `PSL(2,9) = A6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SimpleGroup {
    Alternating(usize),
    Psl2(u64),
}

impl SimpleGroup {
    fn psl2(q: u64) -> Option<SimpleGroup> {
        match q {
            0..=3 => None,
            4 | 5 => Some(SimpleGroup::Alternating(5)),
            9 => Some(SimpleGroup::Alternating(6)),
            q => Some(SimpleGroup::Psl2(q)),
        }
    }

    fn alternating(m: usize) -> Option<SimpleGroup> {
        (m >= 5).then_some(SimpleGroup::Alternating(m))
    }
}

impl std::fmt::Display for SimpleGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimpleGroup::Alternating(m) => write!(f, "A{m}"),
            SimpleGroup::Psl2(q) => write!(f, "PSL(2,{q})"),
        }
    }
}

/// True for `A_m` with `p+1 < m < p^2-p`.
pub fn is_alternating_exception(s: SimpleGroup, p: u64) -> bool {
    match s {
        SimpleGroup::Alternating(m) => {
            let m = m as u64;
            p + 1 < m && m < p * p - p
        }
        SimpleGroup::Psl2(_) => false,
    }
}

/// True for `SL(2, p+1)` with `p` a Mersenne prime.
pub fn is_mersenne_exception(s: SimpleGroup, p: u64) -> bool {
    (p + 1).is_power_of_two() && SimpleGroup::psl2(p + 1) == Some(s)
}

/// The nonabelian simple factor groups of the group an expression names, or
/// `None` when this cannot be read off the expression (generator literals,
/// wreath products over intransitive tops).
pub fn simple_quotients(expr: &GroupExpr) -> Result<Option<Vec<SimpleGroup>>> {
    let mut out: Vec<SimpleGroup> = match expr {
        // S_n has factor groups S_n, C_2 and 1 for n >= 5; S_4 and below are solvable
        GroupExpr::Symmetric(_) | GroupExpr::Cyclic(_) | GroupExpr::Dihedral(_) => vec![],
        GroupExpr::Alternating(n) => SimpleGroup::alternating(*n).into_iter().collect(),
        GroupExpr::Sl2(q) | GroupExpr::Psl2(q) => SimpleGroup::psl2(*q).into_iter().collect(),
        GroupExpr::Generators { .. } => return Ok(None),
        GroupExpr::Product(factors) => {
            let mut all = Vec::new();
            for f in factors {
                match simple_quotients(f)? {
                    Some(v) => all.extend(v),
                    None => return Ok(None),
                }
            }
            all
        }
        GroupExpr::Wreath(base, top) => {
            let top_group = construct(top)?;
            if top_group.degree() == 1 {
                return simple_quotients(base);
            }
            if !top_group.is_transitive() {
                return Ok(None);
            }
            // the base maps trivially to any simple nonabelian quotient
            match simple_quotients(top)? {
                Some(v) => v,
                None => return Ok(None),
            }
        }
    };
    out.sort();
    out.dedup();
    Ok(Some(out))
}

/// Whether the named group has no factor group `A_m` (`p+1 < m < p^2-p`) and
/// none `SL(2,p+1)` for Mersenne `p`; `None` when unknown.
pub fn no_exceptional_quotient(expr: &GroupExpr, p: u64) -> Result<Option<bool>> {
    Ok(simple_quotients(expr)?.map(|qs| {
        qs.iter()
            .all(|&s| !is_alternating_exception(s, p) && !is_mersenne_exception(s, p))
    }))
}

/// Whether the named group has no factor group `A_m` with `p+1 < m < p^2-p`.
pub fn no_alternating_exception(expr: &GroupExpr, p: u64) -> Result<Option<bool>> {
    Ok(simple_quotients(expr)?.map(|qs| qs.iter().all(|&s| !is_alternating_exception(s, p))))
}

pub fn construct(expr: &GroupExpr) -> Result<PermGroup> {
    construct_with_caps(expr, Caps::default())
}

pub fn construct_with_caps(expr: &GroupExpr, caps: Caps) -> Result<PermGroup> {
    let g = build(expr)?;
    if g.degree() as u64 > caps.elements {
        return Err(Error::cap("degree", g.degree(), caps.elements));
    }
    Ok(g.with_caps(caps))
}

/// Parses and constructs in one step.
pub fn group(text: &str) -> Result<PermGroup> {
    construct(&GroupExpr::parse(text)?)
}

fn build(expr: &GroupExpr) -> Result<PermGroup> {
    match expr {
        GroupExpr::Symmetric(n) => Ok(PermGroup::symmetric(*n)),
        GroupExpr::Alternating(n) => Ok(PermGroup::alternating(*n)),
        GroupExpr::Cyclic(n) => Ok(PermGroup::cyclic(*n)),
        GroupExpr::Dihedral(n) => PermGroup::dihedral(n / 2),
        GroupExpr::Sl2(q) => special_linear(*q),
        GroupExpr::Psl2(q) => projective_special_linear(*q),
        GroupExpr::Generators { gens, degree } => {
            let n = degree
                .or_else(|| gens.iter().flat_map(|g| g.cycles()).flatten().max())
                .unwrap_or(1);
            PermGroup::new(n, gens.iter().map(|g| g.extend(n)))
        }
        GroupExpr::Product(factors) => {
            let groups = factors.iter().map(build).collect::<Result<Vec<_>>>()?;
            direct_product(&groups)
        }
        GroupExpr::Wreath(base, top) => wreath_product(&build(base)?, &build(top)?),
    }
}

/// Generators of `SL(2,q)`: the transvections `[[1,c],[0,1]]` and
/// `[[1,0],[c,1]]` for `c` in an `F_p`-basis.
fn transvections(f: &SmallField) -> Vec<[[usize; 2]; 2]> {
    let mut out = Vec::new();
    for c in f.prime_basis() {
        out.push([[1, c], [0, 1]]);
        out.push([[1, 0], [c, 1]]);
    }
    out
}

fn times(f: &SmallField, (a, b): (usize, usize), m: &[[usize; 2]; 2]) -> (usize, usize) {
    (
        f.add(f.mul(a, m[0][0]), f.mul(b, m[1][0])),
        f.add(f.mul(a, m[0][1]), f.mul(b, m[1][1])),
    )
}

/// `SL(2,q)` on nonzero row vectors; `(a, b)` is point `a q + b`.
pub fn special_linear(q: u64) -> Result<PermGroup> {
    let f = SmallField::new(q)?;
    let q = f.order();
    let n = q * q - 1;
    let gens = transvections(&f)
        .iter()
        .map(|m| {
            let images = (1..=n)
                .map(|v| {
                    let (a, b) = times(&f, (v / q, v % q), m);
                    (a * q + b - 1) as u32
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n, gens)
}

/// `PSL(2,q)` on projective points: `<(1, b)>` is point `b + 1` and `<(0, 1)>`
/// is point `q + 1`.
pub fn projective_special_linear(q: u64) -> Result<PermGroup> {
    let f = SmallField::new(q)?;
    let q = f.order();
    let rep = |pt: usize| if pt < q { (1, pt) } else { (0, 1) };
    let index = |(a, b): (usize, usize)| match f.inv(a) {
        Some(inv) => f.mul(b, inv),
        None => q,
    };
    let gens = transvections(&f)
        .iter()
        .map(|m| {
            let images = (0..=q).map(|pt| index(times(&f, rep(pt), m)) as u32).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(q + 1, gens)
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(groups: &[PermGroup]) -> Result<PermGroup> {
    let degree: usize = groups.iter().map(PermGroup::degree).sum();
    let mut gens = Vec::new();
    let mut shift = 0;
    for g in groups {
        for x in g.generators() {
            let images = (0..degree as u32)
                .map(|i| {
                    let i = i as usize;
                    if i >= shift && i < shift + g.degree() {
                        (shift + x.images()[i - shift] as usize) as u32
                    } else {
                        i as u32
                    }
                })
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
        shift += g.degree();
    }
    PermGroup::new(degree.max(1), gens)
}

/// `G wr H` in its imprimitive action: point `(j, i)` of block `j` is
/// `j·deg G + i`. The base generators act in every block; `H` permutes blocks.
pub fn wreath_product(base: &PermGroup, top: &PermGroup) -> Result<PermGroup> {
    let (d, m) = (base.degree(), top.degree());
    let n = d * m;
    let mut gens = Vec::new();
    for j in 0..m {
        for x in base.generators() {
            let images = (0..n)
                .map(|pt| {
                    if pt / d == j {
                        (j * d + x.images()[pt % d] as usize) as u32
                    } else {
                        pt as u32
                    }
                })
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
    }
    for h in top.generators() {
        let images = (0..n)
            .map(|pt| (h.images()[pt / d] as usize * d + pt % d) as u32)
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(n, gens)
}

/// The named groups used by the test suites and the `--catalog` option, as
/// `(name, expression)`.
pub const CATALOG: &[(&str, &str)] = &[
    ("C2", "C2"),
    ("C3", "C3"),
    ("C4", "C4"),
    ("C5", "C5"),
    ("C6", "C6"),
    ("C7", "C7"),
    ("C8", "C8"),
    ("C9", "C9"),
    ("C2 x C2", "C2 x C2"),
    ("C2 x C4", "C2 x C4"),
    ("C2 x C2 x C2", "C2 x C2 x C2"),
    ("C3 x C3", "C3 x C3"),
    ("C5 x C5", "C5 x C5"),
    ("S3", "S3"),
    ("D8", "D8"),
    ("D10", "D10"),
    ("D12", "D12"),
    ("D14", "D14"),
    ("D18", "D18"),
    ("Q8", "<(1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6)>"),
    ("A4", "A4"),
    ("S4", "S4"),
    ("A5", "A5"),
    ("S5", "S5"),
    ("A6", "A6"),
    ("S3 x C3", "S3 x C3"),
    ("S3 x S3", "S3 x S3"),
    ("D8 x C2", "D8 x C2"),
    ("A4 x C2", "A4 x C2"),
    ("A4 x C3", "A4 x C3"),
    ("S4 x C2", "S4 x C2"),
    ("A5 x C2", "A5 x C2"),
    ("C2 wr C2", "C2 wr C2"),
    ("C3 wr C2", "C3 wr C2"),
    ("C2 wr C3", "C2 wr C3"),
    ("C3 wr C3", "C3 wr C3"),
    ("S3 wr C2", "S3 wr C2"),
    ("SL(2,3)", "SL(2,3)"),
    ("SL(2,4)", "SL(2,4)"),
    ("SL(2,5)", "SL(2,5)"),
    ("PSL(2,7)", "PSL(2,7)"),
    ("SL(2,8)", "SL(2,8)"),
];

#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub name: String,
    pub expr: GroupExpr,
    pub group: PermGroup,
}

/// Catalog groups of order at most `max_order`, in catalog order.
pub fn catalog_groups(max_order: u64) -> Result<Vec<CatalogGroup>> {
    let mut out = Vec::new();
    for (name, text) in CATALOG {
        let expr = GroupExpr::parse(text)?;
        let group = construct(&expr)?;
        if group.order_u64().is_some_and(|o| o <= max_order) {
            out.push(CatalogGroup {
                name: name.to_string(),
                expr,
                group,
            });
        }
    }
    Ok(out)
}
