//! Commuting and noncommuting graphs on the π-elements of a group, maximum
//! cliques, commuting probabilities and biclique conditions.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::check_prime;
use crate::bits::Bitset;
use crate::covering::{sigma_p, CoverNumber};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::ratio::ExactRatio;

/// A simple undirected graph on `0..n` stored as adjacency bitsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Bitset>,
    loops: bool,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Bitset::new(n); n],
            loops: false,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// Loop-free graph from 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PointOutOfRange {
                    point: u.max(v) + 1,
                    degree: n,
                });
            }
            if u == v {
                return Err(Error::Unsupported(format!("loop at vertex {}", u + 1)));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Whether every vertex carries a loop (commuting graphs do).
    pub fn has_loops(&self) -> bool {
        self.loops
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u == v && self.loops || self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &Bitset {
        &self.adj[u]
    }

    /// Edges between distinct vertices.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// The complement on distinct vertices, with loops toggled.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.adj[u].contains(v) {
                    g.add_edge(u, v);
                }
            }
        }
        g.loops = !self.loops;
        g
    }

    /// A maximum clique (ignoring loops), in increasing vertex order.
    ///
    /// Branch and bound over bitsets; candidates are greedily colored and a
    /// branch is cut when the current clique plus the number of colors left
    /// cannot beat the incumbent.
    pub fn max_clique(&self) -> Vec<usize> {
        // vertices with equal neighbourhoods are pairwise nonadjacent, so one
        // of each kind is enough; the rest are numbered by decreasing degree
        let mut seen: HashMap<&Bitset, ()> = HashMap::new();
        let mut keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| seen.insert(&self.adj[v], ()).is_none())
            .collect();
        keep.sort_by_key(|&v| std::cmp::Reverse(self.adj[v].count()));
        let mut reduced = Graph::empty(keep.len());
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.adj[u].contains(v) {
                    reduced.add_edge(a, b);
                }
            }
        }
        let mut best: Vec<usize> = Vec::new();
        if !keep.is_empty() {
            reduced.expand(Bitset::full(keep.len()), &mut Vec::new(), &mut best);
        }
        let mut clique: Vec<usize> = best.into_iter().map(|i| keep[i]).collect();
        clique.sort_unstable();
        clique
    }

    fn color_sort(&self, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut colors = Vec::with_capacity(cand.count());
        let mut left = cand.clone();
        let mut color = 0;
        while !left.is_empty() {
            color += 1;
            let mut avail = left.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                left.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&self, mut cand: Bitset, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        let (order, colors) = self.color_sort(&cand);
        for i in (0..order.len()).rev() {
            if current.len() + colors[i] <= best.len() {
                return;
            }
            let v = order[i];
            current.push(v);
            let next = cand.intersection(&self.adj[v]);
            if next.is_empty() {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand(next, current, best);
            }
            current.pop();
            cand.remove(v);
        }
    }

    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    /// `u v` lines with 1-based vertices, after a `# vertices: N` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# vertices: {}\n", self.vertex_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }

    /// Reads the edge-list format. Blank lines and `#` comments are ignored; a
    /// `# vertices: N` comment fixes the vertex count, which otherwise is the
    /// largest vertex mentioned.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let body = line.trim();
            if let Some(comment) = body.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("vertices:") {
                    let n = n.trim().parse().map_err(|_| {
                        Error::syntax(start, "vertex count must be a nonnegative integer")
                    })?;
                    declared = Some(n);
                }
                continue;
            }
            if body.is_empty() {
                continue;
            }
            let lead = line.len() - line.trim_start().len();
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::syntax(start + lead, "expected two vertices per line"));
            }
            let mut ends = [0usize; 2];
            for (k, field) in fields.iter().enumerate() {
                let at = start + line.find(field).unwrap_or(lead);
                ends[k] = match field.parse::<usize>() {
                    Ok(v) if v >= 1 => v,
                    _ => return Err(Error::syntax(at, "vertices are positive integers")),
                };
            }
            if ends[0] == ends[1] {
                return Err(Error::syntax(start + lead, "loops are not allowed"));
            }
            edges.push((ends[0] - 1, ends[1] - 1));
        }
        let largest = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = declared.unwrap_or(largest);
        Graph::from_edges(n, &edges)
    }
}

/// A graph whose vertices are group elements.
#[derive(Debug, Clone)]
pub struct ElementGraph {
    pub vertices: Vec<Permutation>,
    pub graph: Graph,
}

fn check_pi(pi: &[u64]) -> Result<()> {
    if pi.is_empty() {
        return Err(Error::PreconditionFailed("empty set of primes".into()));
    }
    pi.iter().try_for_each(|&p| check_prime(p))
}

/// The π-elements of `G` in sorted order. Graph work on them is limited by the
/// lattice cap, which bounds every quadratic-size structure.
pub fn pi_elements(group: &PermGroup, pi: &[u64]) -> Result<Vec<Permutation>> {
    check_pi(pi)?;
    let els: Vec<Permutation> = group
        .elements()?
        .iter()
        .filter(|x| x.is_pi_element(pi))
        .cloned()
        .collect();
    let cap = group.caps().lattice;
    if els.len() as u64 > cap {
        return Err(Error::cap("pi-element count", els.len(), cap));
    }
    Ok(els)
}

fn commuting_rows(vertices: &[Permutation]) -> Vec<Bitset> {
    let n = vertices.len();
    (0..n)
        .into_par_iter()
        .map(|u| {
            let mut row = Bitset::new(n);
            for v in 0..n {
                if v != u && vertices[u].commutes_with(&vertices[v]) {
                    row.insert(v);
                }
            }
            row
        })
        .collect()
}

/// Loop-free graph on the π-elements; `x ~ y` iff `xy ≠ yx`.
pub fn noncommuting_graph(group: &PermGroup, pi: &[u64]) -> Result<ElementGraph> {
    Ok(commuting_graph(group, pi)?.complement_graph())
}

/// Graph on the π-elements with `x ~ y` iff `xy = yx`; every vertex has a loop.
pub fn commuting_graph(group: &PermGroup, pi: &[u64]) -> Result<ElementGraph> {
    let vertices = pi_elements(group, pi)?;
    let graph = Graph {
        adj: commuting_rows(&vertices),
        loops: true,
    };
    Ok(ElementGraph { vertices, graph })
}

impl ElementGraph {
    fn complement_graph(self) -> ElementGraph {
        ElementGraph {
            graph: self.graph.complement(),
            vertices: self.vertices,
        }
    }
}

/// `n_π(G)`: largest set of pairwise noncommuting π-elements, with a witness.
pub fn n_pi(group: &PermGroup, pi: &[u64]) -> Result<(usize, Vec<Permutation>)> {
    let g = noncommuting_graph(group, pi)?;
    let clique = symmetric_max_clique(group, &g)?;
    Ok((clique.len(), clique.into_iter().map(|i| g.vertices[i].clone()).collect()))
}

/// The noncommuting graph with vertices of equal neighbourhood merged (at
/// most one of them fits in a clique), and `G` acting on the merged vertices
/// by conjugation.
struct Quotient<'a> {
    graph: Graph,
    reps: Vec<usize>,
    class_of: Vec<usize>,
    index: HashMap<&'a Permutation, usize>,
    vertices: &'a [Permutation],
}

impl Quotient<'_> {
    fn act(&self, h: &Permutation, class: usize) -> usize {
        let image = self.vertices[self.reps[class]].conjugate_by(h);
        self.class_of[self.index[&image]]
    }

    /// Branches on one vertex per orbit of `sym`, which fixes every vertex of
    /// `current` and preserves `cand`. Plain branch and bound takes over once
    /// the symmetry is gone.
    fn search(&self, sym: Vec<Permutation>, mut cand: Bitset, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cand.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        if sym.len() <= 1 {
            self.graph.expand(cand, current, best);
            return;
        }
        let (_, colors) = self.graph.color_sort(&cand);
        if current.len() + colors.last().copied().unwrap_or(0) <= best.len() {
            return;
        }
        let mut orbits = Vec::new();
        let mut seen = Bitset::new(self.graph.vertex_count());
        for v in cand.iter() {
            if seen.contains(v) {
                continue;
            }
            let orbit = Bitset::from_indices(self.graph.vertex_count(), sym.iter().map(|h| self.act(h, v)));
            seen.union_with(&orbit);
            orbits.push((v, orbit));
        }
        for (r, orbit) in orbits {
            let next = cand.intersection(self.graph.neighbors(r));
            let stabilizer = sym.iter().filter(|h| self.act(h, r) == r).cloned().collect();
            current.push(r);
            self.search(stabilizer, next, current, best);
            current.pop();
            cand.difference_with(&orbit);
        }
    }
}

fn symmetric_max_clique(group: &PermGroup, g: &ElementGraph) -> Result<Vec<usize>> {
    let n = g.vertices.len();
    let mut classes: HashMap<&Bitset, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for v in 0..n {
        let next = reps.len();
        let c = *classes.entry(g.graph.neighbors(v)).or_insert(next);
        if c == next {
            reps.push(v);
        }
        class_of.push(c);
    }
    let mut graph = Graph::empty(reps.len());
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            if g.graph.is_adjacent(reps[a], reps[b]) {
                graph.add_edge(a, b);
            }
        }
    }
    let quotient = Quotient {
        index: g.vertices.iter().enumerate().map(|(i, x)| (x, i)).collect(),
        vertices: &g.vertices,
        graph,
        reps,
        class_of,
    };
    let mut best = Vec::new();
    let k = quotient.graph.vertex_count();
    if k > 0 {
        quotient.search(group.elements()?.to_vec(), Bitset::full(k), &mut Vec::new(), &mut best);
    }
    let mut clique: Vec<usize> = best.into_iter().map(|c| quotient.reps[c]).collect();
    clique.sort_unstable();
    Ok(clique)
}

/// `Pr_π(G)`: proportion of commuting ordered pairs of π-elements.
pub fn pr_pi(group: &PermGroup, pi: &[u64]) -> Result<ExactRatio> {
    let vertices = pi_elements(group, pi)?;
    let n = vertices.len() as u64;
    let commuting: u64 = (0..vertices.len())
        .into_par_iter()
        .map(|u| {
            vertices
                .iter()
                .filter(|y| vertices[u].commutes_with(y))
                .count() as u64
        })
        .sum();
    Ok(ExactRatio::new(commuting, n * n))
}

#[derive(Debug, Clone, Serialize)]
pub struct TuranReport {
    pub vertices: usize,
    pub edges: usize,
    pub clique_number: usize,
    /// `(1 - 1/ω) n² / 2`.
    pub bound: ExactRatio,
    pub holds: bool,
}

/// Turán: a loop-free graph with clique number `ω` has at most
/// `(1 - 1/ω) n²/2` edges.
pub fn turan_bound_check(graph: &Graph) -> Result<TuranReport> {
    if graph.has_loops() {
        return Err(Error::PreconditionFailed("graph has loops".into()));
    }
    let n = graph.vertex_count();
    let e = graph.edge_count();
    let w = graph.clique_number();
    let bound = if w == 0 {
        ExactRatio::zero()
    } else {
        ExactRatio::new((w as u64 - 1) * (n as u64).pow(2), 2 * w as u64)
    };
    Ok(TuranReport {
        vertices: n,
        edges: e,
        clique_number: w,
        holds: ExactRatio::integer(e as u64) <= bound,
        bound,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PrCliqueReport {
    pub pi: Vec<u64>,
    pub pr: ExactRatio,
    pub clique_number: usize,
    pub product: ExactRatio,
    pub holds: bool,
}

/// `Pr_π(G) · n_π(G) ≥ 1`.
pub fn pr_times_clique_check(group: &PermGroup, pi: &[u64]) -> Result<PrCliqueReport> {
    let pr = pr_pi(group, pi)?;
    let (w, _) = n_pi(group, pi)?;
    let product = &pr * &ExactRatio::integer(w as u64);
    Ok(PrCliqueReport {
        pi: pi.to_vec(),
        holds: product >= ExactRatio::one(),
        pr,
        clique_number: w,
        product,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaCliqueReport {
    pub p: u64,
    pub sigma: CoverNumber,
    pub clique_number: usize,
    pub clique: Vec<String>,
    /// The centralizers of the clique elements cover `G_p`.
    pub centralizers_cover: bool,
    pub holds: bool,
}

/// `σ_p(G) ≤ n_p(G)` for nonabelian `G` generated by p-elements, with the
/// centralizers of a maximum noncommuting set checked to cover `G_p`.
///
/// Abelian groups are refused: there `n_p = 1` while `σ_p ≥ p + 1`, since the
/// only centralizer is `G` itself.
pub fn sigma_le_clique_check(group: &PermGroup, p: u64) -> Result<SigmaCliqueReport> {
    check_prime(p)?;
    if group.is_abelian() {
        return Err(Error::PreconditionFailed(
            "abelian group: the centralizer cover is not by proper subgroups".into(),
        ));
    }
    let sigma = sigma_p(group, p)?.size;
    let (w, clique) = n_pi(group, &[p])?;
    let centralizers = clique
        .iter()
        .map(|x| group.centralizer(x))
        .collect::<Result<Vec<_>>>()?;
    let centralizers_cover = group.p_elements(p)?.iter().all(|y| {
        centralizers
            .iter()
            .any(|c| c.contains(y).unwrap_or(false))
    }) && centralizers.iter().all(|c| c.order() < group.order());
    Ok(SigmaCliqueReport {
        p,
        sigma,
        clique_number: w,
        clique: clique.iter().map(ToString::to_string).collect(),
        centralizers_cover,
        holds: sigma <= CoverNumber::Finite(w) && centralizers_cover,
    })
}

/// Outcome of a biclique search: membership, or two disjoint sets of
/// π-elements with every cross pair noncommuting.
#[derive(Debug, Clone, Serialize)]
pub struct BicliqueOutcome {
    pub member: bool,
    pub witness: Option<(Vec<String>, Vec<String>)>,
}

/// Whether every `m`-set and `n`-set of π-elements contain a commuting cross
/// pair; equivalently the noncommuting graph has no `K_{m,n}` with disjoint
/// sides.
pub fn c_pi_membership(group: &PermGroup, pi: &[u64], m: usize, n: usize) -> Result<BicliqueOutcome> {
    if !(1..=6).contains(&m) || !(1..=6).contains(&n) {
        return Err(Error::OutOfDomain(format!("need 1 <= m, n <= 6, got ({m}, {n})")));
    }
    check_pi(pi)?;
    let count = group
        .elements()?
        .iter()
        .filter(|x| x.is_pi_element(pi))
        .count();
    let cap = group.caps().biclique;
    if count as u64 > cap {
        return Err(Error::cap("pi-element count (biclique)", count, cap));
    }
    let g = noncommuting_graph(group, pi)?;
    let found = find_biclique(&g.graph, m, n);
    Ok(BicliqueOutcome {
        member: found.is_none(),
        witness: found.map(|(a, b)| {
            let names = |s: Vec<usize>| s.into_iter().map(|i| g.vertices[i].to_string()).collect();
            (names(a), names(b))
        }),
    })
}

/// A complete bipartite subgraph with sides of sizes `m` and `n`. The
/// `m`-side is grown in increasing vertex order; its common neighborhood must
/// keep at least `n` vertices.
pub fn find_biclique(graph: &Graph, m: usize, n: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    fn grow(
        graph: &Graph,
        m: usize,
        n: usize,
        from: usize,
        side: &mut Vec<usize>,
        common: Bitset,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if side.len() == m {
            return Some((side.clone(), common.iter().take(n).collect()));
        }
        for v in from..graph.vertex_count() {
            let next = common.intersection(graph.neighbors(v));
            if next.count() < n {
                continue;
            }
            side.push(v);
            if let Some(found) = grow(graph, m, n, v + 1, side, next) {
                return Some(found);
            }
            side.pop();
        }
        None
    }
    let all = Bitset::full(graph.vertex_count());
    grow(graph, m, n, 0, &mut Vec::new(), all)
}

/// `|G_π|` as a convenience for reports.
pub fn pi_element_count(group: &PermGroup, pi: &[u64]) -> Result<u64> {
    check_pi(pi)?;
    Ok(group
        .elements()?
        .iter()
        .filter(|x| x.is_pi_element(pi))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Largest clique by trying every vertex subset that stays a clique.
    fn exhaustive_clique(g: &Graph) -> usize {
        fn go(g: &Graph, v: usize, chosen: &mut Vec<usize>) -> usize {
            if v == g.vertex_count() {
                return chosen.len();
            }
            let skip = go(g, v + 1, chosen);
            if chosen.iter().all(|&u| g.is_adjacent(u, v)) {
                chosen.push(v);
                let take = go(g, v + 1, chosen);
                chosen.pop();
                return skip.max(take);
            }
            skip
        }
        go(g, 0, &mut Vec::new())
    }

    fn random_graph(n: usize, bits: &[bool]) -> Graph {
        let mut g = Graph::empty(n);
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[k % bits.len()] {
                    g.add_edge(u, v);
                }
                k += 1;
            }
        }
        g
    }

    proptest! {
        #[test]
        fn clique_matches_exhaustive(n in 0usize..18, bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            let g = random_graph(n, &bits);
            let clique = g.max_clique();
            prop_assert_eq!(clique.len(), exhaustive_clique(&g));
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    prop_assert!(g.is_adjacent(u, v));
                }
            }
            prop_assert!(turan_bound_check(&g).unwrap().holds);
        }

        #[test]
        fn edge_list_round_trip(n in 0usize..15, bits in proptest::collection::vec(any::<bool>(), 1..120)) {
            let g = random_graph(n, &bits);
            prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        }
    }

    #[test]
    fn noncommuting_graph_examples() {
        let c6 = PermGroup::cyclic(6);
        assert_eq!(noncommuting_graph(&c6, &[2, 3]).unwrap().graph.edge_count(), 0);
        let s3 = PermGroup::symmetric(3);
        let g = noncommuting_graph(&s3, &[2]).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.graph.edge_count(), 3);
        assert!(g.graph.neighbors(0).is_empty());
        let all = noncommuting_graph(&s3, &[2, 3]).unwrap();
        assert_eq!(all.vertices.len(), 6);
        // (1 2 3) and (1 3 2) commute; each transposition misses all but itself and e
        assert_eq!(all.graph.edge_count(), 3 + 6);
    }

    #[test]
    fn symmetric_search_agrees_with_plain_search() {
        for text in ["S3", "D8", "<(1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6)>", "A4", "S4", "A5", "S3 x S3", "C2 wr C3", "SL(2,3)"] {
            let g = crate::catalog::group(text).unwrap();
            for p in crate::arith::prime_divisors(&g.order()) {
                let ng = noncommuting_graph(&g, &[p]).unwrap();
                let clique = symmetric_max_clique(&g, &ng).unwrap();
                assert_eq!(clique.len(), ng.graph.clique_number(), "{text} p={p}");
                for (i, &u) in clique.iter().enumerate() {
                    assert!(clique[i + 1..].iter().all(|&v| ng.graph.is_adjacent(u, v)));
                }
            }
        }
        // one element from each cyclic subgroup of order 4
        assert_eq!(n_pi(&crate::catalog::group("A6").unwrap(), &[2]).unwrap().0, 45);
    }

    #[test]
    fn clique_and_probability_examples() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(n_pi(&s3, &[2]).unwrap().0, 3);
        assert_eq!(pr_pi(&s3, &[2]).unwrap(), ExactRatio::new(5, 8));
        assert_eq!(pr_pi(&s3, &[3]).unwrap(), ExactRatio::one());
        assert_eq!(n_pi(&PermGroup::cyclic(4), &[2]).unwrap().0, 1);
        assert_eq!(pr_pi(&PermGroup::cyclic(4), &[2]).unwrap(), ExactRatio::one());
        assert_eq!(n_pi(&PermGroup::alternating(4), &[3]).unwrap().0, 4);
    }

    #[test]
    fn commuting_and_noncommuting_pairs_add_up() {
        for g in [PermGroup::symmetric(4), PermGroup::alternating(5), PermGroup::dihedral(6).unwrap()] {
            for pi in [vec![2], vec![3], vec![2, 3]] {
                let nc = noncommuting_graph(&g, &pi).unwrap();
                let c = commuting_graph(&g, &pi).unwrap();
                let n = nc.vertices.len();
                assert!(c.graph.has_loops() && !nc.graph.has_loops());
                // ordered commuting pairs: loops plus both directions of each edge
                let commuting = n + 2 * c.graph.edge_count();
                assert_eq!(commuting + 2 * nc.graph.edge_count(), n * n);
                assert_eq!(pr_pi(&g, &pi).unwrap(), ExactRatio::new(commuting as u64, (n * n) as u64));
            }
        }
    }

    #[test]
    fn turan_examples() {
        for n in 1..8 {
            let r = turan_bound_check(&Graph::complete(n)).unwrap();
            assert_eq!(ExactRatio::integer(r.edges as u64), r.bound);
        }
        let r = turan_bound_check(&Graph::path(3)).unwrap();
        assert_eq!((r.edges, r.clique_number), (2, 2));
        assert_eq!(r.bound, ExactRatio::new(9, 4));
        let s3 = noncommuting_graph(&PermGroup::symmetric(3), &[2]).unwrap();
        let r = turan_bound_check(&s3.graph).unwrap();
        assert_eq!(r.bound, ExactRatio::new(16, 3));
        assert!(r.holds);
        let c = commuting_graph(&PermGroup::symmetric(3), &[2]).unwrap();
        assert!(turan_bound_check(&c.graph).is_err());
    }

    #[test]
    fn pr_clique_examples() {
        let r = pr_times_clique_check(&PermGroup::symmetric(3), &[2]).unwrap();
        assert_eq!(r.product, ExactRatio::new(15, 8));
        assert!(r.holds);
        let r = pr_times_clique_check(&PermGroup::cyclic(5), &[5]).unwrap();
        assert_eq!(r.product, ExactRatio::one());
        assert!(pr_times_clique_check(&PermGroup::alternating(5), &[2]).unwrap().holds);
    }

    #[test]
    fn sigma_clique_examples() {
        let r = sigma_le_clique_check(&PermGroup::symmetric(3), 2).unwrap();
        assert_eq!((r.sigma, r.clique_number), (CoverNumber::Finite(3), 3));
        assert!(r.centralizers_cover && r.holds);
        let v = PermGroup::from_cycle_strings(6, &["(1 2 3)", "(4 5 6)"]).unwrap();
        assert!(matches!(sigma_le_clique_check(&v, 3), Err(Error::PreconditionFailed(_))));
        assert!(sigma_le_clique_check(&PermGroup::alternating(5), 2).unwrap().holds);
    }

    #[test]
    fn biclique_examples() {
        let c4 = PermGroup::cyclic(4);
        assert!(c_pi_membership(&c4, &[2], 1, 1).unwrap().member);
        let s3 = PermGroup::symmetric(3);
        let r = c_pi_membership(&s3, &[2], 1, 1).unwrap();
        assert!(!r.member);
        let (a, b) = r.witness.unwrap();
        assert_eq!((a.len(), b.len()), (1, 1));
        assert_ne!(a, b);
        assert!(c_pi_membership(&s3, &[2], 2, 2).unwrap().member);
        assert!(c_pi_membership(&s3, &[2], 7, 1).is_err());
        assert!(matches!(
            c_pi_membership(&PermGroup::symmetric(5), &[2, 3], 1, 1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn biclique_membership_is_monotone() {
        let g = PermGroup::symmetric(4);
        for m in 1..=4 {
            for n in 1..=4 {
                if !c_pi_membership(&g, &[2], m, n).unwrap().member {
                    for m2 in 1..=m {
                        for n2 in 1..=n {
                            assert!(!c_pi_membership(&g, &[2], m2, n2).unwrap().member);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(Graph::parse_edge_list("1 2\n3"), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(Graph::parse_edge_list("1 x"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(Graph::parse_edge_list("2 2"), Err(Error::Syntax { .. })));
        let g = Graph::parse_edge_list("# vertices: 5\n1 2\n\n# note\n2 3\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 2));
    }
}
