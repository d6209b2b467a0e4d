#![allow(dead_code)]

use lspace::heegaard::IntersectionPoint;
use lspace::matchings::MatchGraph;
use lspace::{HeegaardDiagram, Polarity, Sign, SignMatrix};
use rand::Rng;

pub fn random_sign_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> SignMatrix {
    let entries = (0..rows * cols)
        .map(|_| Sign::ALL[rng.gen_range(0..4)])
        .collect();
    SignMatrix::new(rows, cols, entries).unwrap()
}

fn polarity<R: Rng>(rng: &mut R) -> Polarity {
    if rng.gen_bool(0.5) {
        Polarity::Positive
    } else {
        Polarity::Negative
    }
}

/// Random diagram of genus `1..=max_genus` with at most `max_points` points
/// per β word. With `coherent`, all points of one `α_i ∩ β_j` share a sign,
/// which makes strong diagrams far more common.
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    max_genus: usize,
    max_points: usize,
    coherent: bool,
) -> HeegaardDiagram {
    let g = rng.gen_range(1..=max_genus);
    let pair_sign: Vec<Vec<Polarity>> = (0..g)
        .map(|_| (0..g).map(|_| polarity(rng)).collect())
        .collect();
    let words = (0..g)
        .map(|j| {
            let len = rng.gen_range(0..=max_points);
            (0..len)
                .map(|_| {
                    let a = rng.gen_range(0..g);
                    let sign = if coherent {
                        pair_sign[a][j]
                    } else {
                        polarity(rng)
                    };
                    IntersectionPoint::new(a, sign)
                })
                .collect()
        })
        .collect();
    HeegaardDiagram::new(g, words).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_side: usize, max_edges: usize) -> MatchGraph {
    let a = rng.gen_range(1..=max_side);
    let b = if rng.gen_bool(0.9) {
        a
    } else {
        rng.gen_range(1..=max_side)
    };
    let m = rng.gen_range(0..=max_edges);
    let edges: Vec<(usize, usize, Polarity)> = (0..m)
        .map(|_| (rng.gen_range(0..a), rng.gen_range(0..b), polarity(rng)))
        .collect();
    MatchGraph::new(a, b, &edges).unwrap()
}

/// Ryser's inclusion-exclusion formula for the permanent.
pub fn permanent_ryser(c: &[Vec<i64>]) -> i64 {
    let n = c.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0i64;
    for subset in 1u32..(1 << n) {
        let mut prod = 1i64;
        for row in c {
            let s: i64 = (0..n).filter(|j| subset >> j & 1 == 1).map(|j| row[j]).sum();
            prod *= s;
        }
        let sign = if (n - subset.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sign * prod;
    }
    total
}

/// Brute-force perfect-matching count by trying every permutation of the
/// B side, multiplying edge multiplicities.
pub fn matching_count_bruteforce(g: &MatchGraph) -> usize {
    let a = g.a_vertices();
    let b = g.b_vertices();
    if a.len() != b.len() {
        return 0;
    }
    let mult = |x: usize, y: usize| g.edges().iter().filter(|e| e.a == x && e.b == y).count();
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(a.len())
        .into_iter()
        .map(|p| (0..a.len()).map(|i| mult(a[i], b[p[i]])).product::<usize>())
        .sum()
}
