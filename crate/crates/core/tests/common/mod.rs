//! Brute-force oracles shared by the integration tests. They use only the
//! public API and avoid the solver code paths they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectcover::{Cover, Rational, RectFamily, RectId, WeightedGraph};

pub fn random_graph(seed: u64, n: usize, p: f64, weighted: bool) -> WeightedGraph<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..n)
        .map(|_| Rational::from_integer(if weighted { rng.gen_range(1..=10) } else { 1 }))
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::from_parts(weights, edges).unwrap()
}

fn edges(g: &WeightedGraph<Rational>) -> Vec<(usize, usize)> {
    g.structure().edges().collect()
}

/// Minimum cover weight over all `2^n` subsets.
pub fn brute_cover(g: &WeightedGraph<Rational>) -> Rational {
    let n = g.len();
    assert!(n <= 22);
    let es = edges(g);
    let mut best = g.total_weight();
    for mask in 0u32..1 << n {
        if es.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1) {
            let w = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| g.weight(v)).sum();
            if w < best {
                best = w;
            }
        }
    }
    best
}

/// Optimum of the vertex-cover LP restricted to `{0, 1/2, 1}^n`, by
/// depth-first assignment with edge checks against earlier vertices.
pub fn brute_half_lp(g: &WeightedGraph<Rational>) -> Rational {
    fn go(g: &WeightedGraph<Rational>, v: usize, x: &mut Vec<u8>, cost: Rational, best: &mut Rational) {
        if cost >= *best {
            return;
        }
        if v == g.len() {
            *best = cost;
            return;
        }
        for val in 0..=2u8 {
            if g.structure().neighbors(v).filter(|&u| u < v).all(|u| x[u] + val >= 2) {
                x.push(val);
                let c = cost + g.weight(v) * Rational::new(val as i64, 2);
                go(g, v + 1, x, c, best);
                x.pop();
            }
        }
    }
    let mut best = g.total_weight() + Rational::from_integer(1);
    go(g, 0, &mut Vec::new(), Rational::from_integer(0), &mut best);
    best
}

/// First intersecting pair of closed boxes with neither member in `cover`.
pub fn uncovered_pair(family: &RectFamily<Rational>, cover: &Cover) -> Option<(RectId, RectId)> {
    let rs = family.rects();
    for (i, a) in rs.iter().enumerate() {
        for b in &rs[i + 1..] {
            let meet = a.x.lo <= b.x.hi && b.x.lo <= a.x.hi && a.y.lo <= b.y.hi && b.y.lo <= a.y.hi;
            if meet && !cover.contains(&a.id) && !cover.contains(&b.id) {
                return Some((a.id, b.id));
            }
        }
    }
    None
}

pub fn weight_of(family: &RectFamily<Rational>, cover: &Cover) -> Rational {
    family.rects().iter().filter(|r| cover.contains(&r.id)).map(|r| r.weight).sum()
}

pub fn ids(family: &RectFamily<Rational>) -> BTreeSet<RectId> {
    family.ids()
}
