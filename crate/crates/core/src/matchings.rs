//! The bipartite intersection graph of a diagram and its perfect matchings.
//!
//! Vertices `A_i` stand for α curves and `B_j` for β curves; every
//! intersection point of `α_i ∩ β_j` is an edge `A_i B_j`, so parallel edges
//! are common. Perfect matchings correspond one-to-one with Floer generators.
//!
//! The S³ recognizer strips leaves (1-valent vertices together with their
//! neighbour) until nothing is left. A leafless graph with a perfect matching
//! always has a second one: orient matched edges `A -> B` and the rest
//! `B -> A`, find a directed cycle, and swap along it.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heegaard::{HeegaardDiagram, StrongReport};
use crate::signs::Polarity;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub a: usize,
    pub b: usize,
    pub sign: Polarity,
}

/// Bipartite multigraph. Vertex labels are 0-based and survive pruning, so
/// a reduced graph still names its vertices as in the original.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchGraph {
    a_vertices: Vec<usize>,
    b_vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl MatchGraph {
    /// Graph on `A_0..A_{a_count}` and `B_0..B_{b_count}`; edge ids are the
    /// positions in `edges`.
    pub fn new(a_count: usize, b_count: usize, edges: &[(usize, usize, Polarity)]) -> Result<Self> {
        let edges = edges
            .iter()
            .enumerate()
            .map(|(id, &(a, b, sign))| {
                if a >= a_count || b >= b_count {
                    Err(Error::Precondition(format!(
                        "edge A{}B{} outside a {a_count}+{b_count} graph",
                        a + 1,
                        b + 1
                    )))
                } else {
                    Ok(Edge { id, a, b, sign })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatchGraph {
            a_vertices: (0..a_count).collect(),
            b_vertices: (0..b_count).collect(),
            edges,
        })
    }

    pub fn a_vertices(&self) -> &[usize] {
        &self.a_vertices
    }

    pub fn b_vertices(&self) -> &[usize] {
        &self.b_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.a_vertices.is_empty() && self.b_vertices.is_empty()
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn degree_a(&self, a: usize) -> usize {
        self.edges.iter().filter(|e| e.a == a).count()
    }

    pub fn degree_b(&self, b: usize) -> usize {
        self.edges.iter().filter(|e| e.b == b).count()
    }

    fn incident_a(&self, a: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.a == a)
    }
}

impl fmt::Display for MatchGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {} vertices:",
            self.a_vertices.len(),
            self.b_vertices.len()
        )?;
        for e in &self.edges {
            write!(f, " A{}B{}", e.a + 1, e.b + 1)?;
        }
        Ok(())
    }
}

/// One edge per intersection point, ids numbered in (β word, position)
/// order.
pub fn graph_of(h: &HeegaardDiagram) -> MatchGraph {
    let g = h.genus();
    let edges: Vec<(usize, usize, Polarity)> = h
        .beta_words()
        .iter()
        .enumerate()
        .flat_map(|(j, w)| w.iter().map(move |p| (p.alpha, j, p.sign)))
        .collect();
    MatchGraph::new(g, g, &edges).expect("diagram indices are in range")
}

/// Edge ids of a perfect matching, listed in order of their `A` endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching(Vec<usize>);

impl Matching {
    pub fn edge_ids(&self) -> &[usize] {
        &self.0
    }

    /// Validates that `ids` form a perfect matching of `g` and puts them in
    /// canonical order.
    pub fn new(g: &MatchGraph, ids: &[usize]) -> Result<Self> {
        let mut edges = Vec::with_capacity(ids.len());
        for &id in ids {
            let e = g
                .edge(id)
                .ok_or_else(|| Error::Precondition(format!("no edge with id {id}")))?;
            edges.push(*e);
        }
        let a: BTreeSet<usize> = edges.iter().map(|e| e.a).collect();
        let b: BTreeSet<usize> = edges.iter().map(|e| e.b).collect();
        let covers = a.len() == edges.len()
            && b.len() == edges.len()
            && a.iter().copied().eq(g.a_vertices.iter().copied())
            && b.iter().copied().eq(g.b_vertices.iter().copied());
        if !covers {
            return Err(Error::Precondition(format!(
                "edges {ids:?} are not a perfect matching"
            )));
        }
        edges.sort_by_key(|e| e.a);
        Ok(Matching(edges.into_iter().map(|e| e.id).collect()))
    }
}

/// Visits perfect matchings in canonical order: `A` vertices ascending, each
/// trying its edges by increasing id.
fn for_each_matching(
    g: &MatchGraph,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> bool {
    if g.a_vertices.len() != g.b_vertices.len() {
        return false;
    }
    let mut options: Vec<Vec<&Edge>> = g
        .a_vertices
        .iter()
        .map(|&a| g.incident_a(a).collect())
        .collect();
    for list in &mut options {
        list.sort_by_key(|e| e.id);
    }
    let mut used_b = BTreeSet::new();
    let mut chosen = Vec::with_capacity(options.len());
    fn go(
        k: usize,
        options: &[Vec<&Edge>],
        used_b: &mut BTreeSet<usize>,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == options.len() {
            return visit(chosen);
        }
        for e in &options[k] {
            if used_b.insert(e.b) {
                chosen.push(e.id);
                let flow = go(k + 1, options, used_b, chosen, visit);
                chosen.pop();
                used_b.remove(&e.b);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
    go(0, &options, &mut used_b, &mut chosen, visit).is_break()
}

/// All perfect matchings in canonical order.
pub fn enumerate_matchings(g: &MatchGraph, cap: usize) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    let over = for_each_matching(g, &mut |ids| {
        if out.len() == cap {
            return ControlFlow::Break(());
        }
        out.push(Matching(ids.to_vec()));
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::ResourceLimit {
            what: "perfect matching count",
            limit: cap,
        });
    }
    Ok(out)
}

pub fn first_matching(g: &MatchGraph) -> Option<Matching> {
    let mut found = None;
    for_each_matching(g, &mut |ids| {
        found = Some(Matching(ids.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// A removed leaf together with its neighbour, as `(A label, B label)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrunedPair {
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for PrunedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(A{}, B{})", self.a + 1, self.b + 1)
    }
}

/// Deletes the least 1-valent vertex (`A` side first) and its neighbour,
/// with every edge incident to either. The number of perfect matchings is
/// unchanged. `None` if the graph has no leaf.
pub fn prune_leaf(g: &MatchGraph) -> Option<(MatchGraph, PrunedPair)> {
    let pair = g
        .a_vertices
        .iter()
        .find(|&&a| g.degree_a(a) == 1)
        .map(|&a| {
            let e = g.incident_a(a).next().expect("degree one");
            PrunedPair { a, b: e.b }
        })
        .or_else(|| {
            g.b_vertices
                .iter()
                .find(|&&b| g.degree_b(b) == 1)
                .map(|&b| {
                    let e = g.edges.iter().find(|e| e.b == b).expect("degree one");
                    PrunedPair { a: e.a, b }
                })
        })?;
    let reduced = MatchGraph {
        a_vertices: g.a_vertices.iter().copied().filter(|&a| a != pair.a).collect(),
        b_vertices: g.b_vertices.iter().copied().filter(|&b| b != pair.b).collect(),
        edges: g
            .edges
            .iter()
            .copied()
            .filter(|e| e.a != pair.a && e.b != pair.b)
            .collect(),
    };
    Some((reduced, pair))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Vertex {
    A(usize),
    B(usize),
}

/// Finds a directed cycle when matched edges point `A -> B` and unmatched
/// edges `B -> A`; returns its edge ids in cycle order.
///
/// Walks a directed path backwards from its initial vertex, always taking
/// the incoming edge of least id. When the initial vertex has an incoming
/// edge from a vertex already on the path, that edge closes a cycle. When it
/// has no incoming edge at all it cannot lie on a cycle, so it is discarded
/// and the walk resumes from the previous vertex. `None` means every vertex
/// was discarded, which certifies `mu` is the only perfect matching.
pub fn find_alternating_cycle(g: &MatchGraph, mu: &Matching) -> Result<Option<Vec<usize>>> {
    let mu = Matching::new(g, &mu.0)?;
    let matched: BTreeSet<usize> = mu.0.iter().copied().collect();

    let mut vertices: Vec<Vertex> = g.a_vertices.iter().map(|&a| Vertex::A(a)).collect();
    vertices.extend(g.b_vertices.iter().map(|&b| Vertex::B(b)));
    let mut dead: BTreeSet<Vertex> = BTreeSet::new();

    // Incoming edge of least id from a live vertex.
    let incoming = |v: Vertex, dead: &BTreeSet<Vertex>| -> Option<(usize, Vertex)> {
        g.edges
            .iter()
            .filter_map(|e| match v {
                Vertex::B(b) if e.b == b && matched.contains(&e.id) => Some((e.id, Vertex::A(e.a))),
                Vertex::A(a) if e.a == a && !matched.contains(&e.id) => {
                    Some((e.id, Vertex::B(e.b)))
                }
                _ => None,
            })
            .filter(|(_, w)| !dead.contains(w))
            .min_by_key(|(id, _)| *id)
    };

    for &start in &vertices {
        if dead.contains(&start) {
            continue;
        }
        // path[k + 1] -> path[k] along path_edges[k].
        let mut path = vec![start];
        let mut path_edges: Vec<usize> = Vec::new();
        while let Some(&head) = path.last() {
            match incoming(head, &dead) {
                None => {
                    dead.insert(head);
                    path.pop();
                    path_edges.pop();
                }
                Some((id, w)) => {
                    if let Some(k) = path.iter().position(|&x| x == w) {
                        // head -> path[len-2] -> .. -> path[k] = w -> head.
                        let mut cycle: Vec<usize> = path_edges[k..].iter().rev().copied().collect();
                        cycle.push(id);
                        return Ok(Some(cycle));
                    }
                    path.push(w);
                    path_edges.push(id);
                }
            }
        }
    }
    Ok(None)
}

/// Another perfect matching obtained by swapping `mu` along a directed
/// cycle, or `None` when `mu` is the unique perfect matching.
pub fn second_matching(g: &MatchGraph, mu: &Matching) -> Result<Option<Matching>> {
    let Some(cycle) = find_alternating_cycle(g, mu)? else {
        return Ok(None);
    };
    let mut ids: BTreeSet<usize> = mu.0.iter().copied().collect();
    for id in cycle {
        if !ids.remove(&id) {
            ids.insert(id);
        }
    }
    let ids: Vec<usize> = ids.into_iter().collect();
    Matching::new(g, &ids).map(Some)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Uniqueness {
    NoMatching,
    Unique { matching: Matching },
    Multiple { first: Matching, second: Matching },
}

pub fn matching_uniqueness(g: &MatchGraph) -> Uniqueness {
    let Some(first) = first_matching(g) else {
        return Uniqueness::NoMatching;
    };
    match second_matching(g, &first).expect("first_matching is perfect") {
        None => Uniqueness::Unique { matching: first },
        Some(second) => Uniqueness::Multiple { first, second },
    }
}

/// `true` iff `g` has exactly one perfect matching; `false` also when it has
/// none.
pub fn unique_matching(g: &MatchGraph) -> bool {
    matches!(matching_uniqueness(g), Uniqueness::Unique { .. })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum S3Outcome {
    IsS3,
    NotIntegerHomologySphere,
    NotStrongDiagram,
    Inconsistent,
}

impl fmt::Display for S3Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            S3Outcome::IsS3 => "IsS3",
            S3Outcome::NotIntegerHomologySphere => "NotIntegerHomologySphere",
            S3Outcome::NotStrongDiagram => "NotStrongDiagram",
            S3Outcome::Inconsistent => "Inconsistent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct S3Verdict {
    pub outcome: S3Outcome,
    pub strong: StrongReport,
    pub trace: Vec<PrunedPair>,
    /// For `Inconsistent`: the leafless graph pruning stalled on, and its
    /// matching analysis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stalled: Option<StalledGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalledGraph {
    pub graph: MatchGraph,
    pub matchings: Uniqueness,
}

/// Decides whether a strong diagram with `|H₁| = 1` describes `S³` by
/// pruning leaves of its intersection graph down to nothing.
pub fn recognize_s3(h: &HeegaardDiagram, limits: &Limits) -> Result<S3Verdict> {
    let strong = h.strong_report(limits.max_generators)?;
    let verdict = |outcome, trace, stalled| S3Verdict {
        outcome,
        strong: strong.clone(),
        trace,
        stalled,
    };
    if !strong.is_strong {
        return Ok(verdict(S3Outcome::NotStrongDiagram, Vec::new(), None));
    }
    if strong.h1_order.finite() != Some(1) {
        return Ok(verdict(S3Outcome::NotIntegerHomologySphere, Vec::new(), None));
    }
    let mut graph = graph_of(h);
    let mut trace = Vec::new();
    while let Some((reduced, pair)) = prune_leaf(&graph) {
        trace.push(pair);
        graph = reduced;
    }
    if graph.is_empty() {
        return Ok(verdict(S3Outcome::IsS3, trace, None));
    }
    let matchings = matching_uniqueness(&graph);
    Ok(verdict(
        S3Outcome::Inconsistent,
        trace,
        Some(StalledGraph { graph, matchings }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heegaard::gen_lens;
    use Polarity::Positive as P;

    fn leaf_diagram() -> HeegaardDiagram {
        HeegaardDiagram::from_pairs(2, &[&[(1, 1), (2, 1)], &[(2, 1)]]).unwrap()
    }

    fn k22() -> MatchGraph {
        MatchGraph::new(2, 2, &[(0, 0, P), (0, 1, P), (1, 0, P), (1, 1, P)]).unwrap()
    }

    fn endpoints(g: &MatchGraph, m: &Matching) -> Vec<(usize, usize)> {
        m.edge_ids()
            .iter()
            .map(|&id| {
                let e = g.edge(id).unwrap();
                (e.a, e.b)
            })
            .collect()
    }

    #[test]
    fn graphs_of_diagrams() {
        let g = graph_of(&gen_lens(3).unwrap());
        assert_eq!((g.a_vertices().len(), g.b_vertices().len()), (1, 1));
        assert_eq!(g.edges().len(), 3);

        let g = graph_of(&leaf_diagram());
        let ab: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
        assert_eq!(ab, vec![(0, 0), (1, 0), (1, 1)]);

        let h = HeegaardDiagram::from_pairs(2, &[&[], &[]]).unwrap();
        assert!(graph_of(&h).edges().is_empty());
    }

    #[test]
    fn enumeration() {
        let g = graph_of(&gen_lens(3).unwrap());
        assert_eq!(enumerate_matchings(&g, 100).unwrap().len(), 3);

        let g = graph_of(&leaf_diagram());
        let all = enumerate_matchings(&g, 100).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(endpoints(&g, &all[0]), vec![(0, 0), (1, 1)]);

        assert_eq!(enumerate_matchings(&k22(), 100).unwrap().len(), 2);
        assert!(enumerate_matchings(&k22(), 1).unwrap_err().is_resource_limit());

        let lopsided = MatchGraph::new(2, 1, &[(0, 0, P), (1, 0, P)]).unwrap();
        assert!(enumerate_matchings(&lopsided, 100).unwrap().is_empty());
    }

    #[test]
    fn pruning() {
        let g = graph_of(&leaf_diagram());
        let (reduced, pair) = prune_leaf(&g).unwrap();
        assert_eq!(pair, PrunedPair { a: 0, b: 0 });
        assert_eq!(reduced.edges().len(), 1);
        assert_eq!((reduced.edges()[0].a, reduced.edges()[0].b), (1, 1));

        assert!(prune_leaf(&graph_of(&gen_lens(3).unwrap())).is_none());

        let single = MatchGraph::new(1, 1, &[(0, 0, P)]).unwrap();
        let (empty, _) = prune_leaf(&single).unwrap();
        assert!(empty.is_empty() && empty.edges().is_empty());
    }

    #[test]
    fn pruning_prefers_a_side() {
        // A1 has degree 2, B2 has degree 1, A2 has degree 1.
        let g = MatchGraph::new(2, 2, &[(0, 0, P), (0, 0, P), (1, 1, P)]).unwrap();
        let (_, pair) = prune_leaf(&g).unwrap();
        assert_eq!(pair, PrunedPair { a: 1, b: 1 });
        // Only a B-side leaf.
        let g = MatchGraph::new(2, 2, &[(0, 0, P), (0, 1, P), (1, 0, P), (1, 0, P)]).unwrap();
        let (_, pair) = prune_leaf(&g).unwrap();
        assert_eq!(pair, PrunedPair { a: 0, b: 1 });
    }

    #[test]
    fn second_matchings() {
        let g = k22();
        let mu = Matching::new(&g, &[0, 3]).unwrap();
        let nu = second_matching(&g, &mu).unwrap().unwrap();
        assert_eq!(endpoints(&g, &nu), vec![(0, 1), (1, 0)]);

        let g = graph_of(&leaf_diagram());
        let mu = first_matching(&g).unwrap();
        assert_eq!(second_matching(&g, &mu).unwrap(), None);

        let g = graph_of(&gen_lens(3).unwrap());
        for mu in enumerate_matchings(&g, 10).unwrap() {
            let nu = second_matching(&g, &mu).unwrap().unwrap();
            assert_ne!(nu, mu);
        }
    }

    #[test]
    fn second_matching_rejects_non_perfect() {
        let g = k22();
        assert!(second_matching(&g, &Matching(vec![0])).is_err());
        assert!(second_matching(&g, &Matching(vec![0, 1])).is_err());
        assert!(second_matching(&g, &Matching(vec![0, 9])).is_err());
    }

    #[test]
    fn uniqueness() {
        assert!(unique_matching(&graph_of(&leaf_diagram())));
        assert!(!unique_matching(&graph_of(&gen_lens(3).unwrap())));
        assert!(!unique_matching(&k22()));
        let none = MatchGraph::new(2, 2, &[(0, 0, P), (1, 0, P)]).unwrap();
        assert_eq!(matching_uniqueness(&none), Uniqueness::NoMatching);
        assert!(!unique_matching(&none));
    }

    #[test]
    fn s3_recognition() {
        let limits = Limits::default();
        let v = recognize_s3(&gen_lens(1).unwrap(), &limits).unwrap();
        assert_eq!(v.outcome, S3Outcome::IsS3);
        assert_eq!(v.trace, vec![PrunedPair { a: 0, b: 0 }]);

        let v = recognize_s3(&leaf_diagram(), &limits).unwrap();
        assert_eq!(v.outcome, S3Outcome::IsS3);
        assert_eq!(
            v.trace,
            vec![PrunedPair { a: 0, b: 0 }, PrunedPair { a: 1, b: 1 }]
        );

        let v = recognize_s3(&gen_lens(2).unwrap(), &limits).unwrap();
        assert_eq!(v.outcome, S3Outcome::NotIntegerHomologySphere);

        let mixed = HeegaardDiagram::from_pairs(1, &[&[(1, 1), (1, -1), (1, 1)]]).unwrap();
        let v = recognize_s3(&mixed, &limits).unwrap();
        assert_eq!(v.outcome, S3Outcome::NotStrongDiagram);
    }

    #[test]
    fn verdict_serializes() {
        let v = recognize_s3(&leaf_diagram(), &Limits::default()).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        let back: S3Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
