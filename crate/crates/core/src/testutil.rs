//! Brute-force oracles shared by unit tests. Nothing here calls into the
//! solver code paths under test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Rect, RectId};
use crate::graphs::{Cover, WeightedGraph};
use crate::Rational;

pub fn r(id: u64, x0: i64, x1: i64, y0: i64, y1: i64) -> Rect<Rational> {
    Rect::unit(
        id,
        Rational::from_integer(x0),
        Rational::from_integer(x1),
        Rational::from_integer(y0),
        Rational::from_integer(y1),
    )
    .unwrap()
}

/// G(n, p) with unit weights, or integer weights in 1..=10.
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

/// Minimum-weight vertex cover by enumerating all subsets.
pub fn brute_min_cover(g: &WeightedGraph<Rational>) -> (Rational, Cover) {
    let n = g.len();
    assert!(n <= 20);
    let edges: Vec<(usize, usize)> = g.structure().edges().collect();
    let mut best: Option<(Rational, u32)> = None;
    for mask in 0u32..(1 << n) {
        if edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1) {
            let w: Rational = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| g.weight(i)).sum();
            if best.is_none_or(|(b, _)| w < b) {
                best = Some((w, mask));
            }
        }
    }
    let (w, mask) = best.unwrap();
    (w, (0..n).filter(|i| mask >> i & 1 == 1).map(|i| g.id(i)).collect())
}

/// Optimum of the vertex-cover LP restricted to `{0, 1/2, 1}^n`, which is the
/// true LP optimum by half-integrality.
pub fn brute_half_lp(g: &WeightedGraph<Rational>) -> Rational {
    let n = g.len();
    assert!(n <= 13);
    let edges: Vec<(usize, usize)> = g.structure().edges().collect();
    let mut vals = vec![0u8; n];
    let mut best: Option<Rational> = None;
    loop {
        if edges.iter().all(|&(u, v)| vals[u] + vals[v] >= 2) {
            let w: Rational = (0..n).map(|i| g.weight(i) * Rational::new(vals[i] as i64, 2)).sum();
            if best.is_none_or(|b| w < b) {
                best = Some(w);
            }
        }
        let mut i = 0;
        while i < n && vals[i] == 2 {
            vals[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        vals[i] += 1;
    }
    best.unwrap()
}

pub fn ids(v: &[u64]) -> Cover {
    v.iter().map(|&i| RectId(i)).collect()
}
