//! Preprocessing that commits rectangles to the cover at bounded cost:
//! container removal and clique packing (unweighted), local-ratio triangle
//! elimination (weighted), and the split of a triangle-free family into two
//! internally non-crossing classes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::{Rect, RectFamily, RectId};
use crate::graphs::{build_graph, find_triangle, stabbed_sets, Cover, WeightedGraph};
use crate::scalar::{sum, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct CleanResult<T> {
    /// Containers and packed clique members; all of them join the cover.
    pub forced: Cover,
    /// Rectangles that contained another rectangle, in removal order.
    pub containers: Vec<RectId>,
    /// The packed, pairwise disjoint `(q + 1)`-cliques.
    pub cliques: Vec<Vec<RectId>>,
    pub residual: RectFamily<T>,
    pub q: usize,
    /// Lower bound on what any cover spends on the packed cliques.
    pub credit: T,
}

/// Removes containers until no containment pair is left, then greedily
/// packs disjoint `(q + 1)`-cliques.
///
/// Candidate stabbing points are visited in `(x, y)` order; at each point
/// the `q + 1` lowest-id unpacked rectangles are packed for as long as at
/// least that many remain. With `q = 2`, triangles of the residual graph are
/// packed as well, which covers any triple the point scan could miss.
pub fn clean_family<T: Scalar>(family: &RectFamily<T>, q: usize) -> Result<CleanResult<T>> {
    if q == 0 {
        return Err(Error::InvalidParameter("clique bound q must be at least 1".into()));
    }
    family.require_normalized()?;
    if let Some(r) = family.rects().iter().find(|r| r.weight != T::one()) {
        return Err(Error::Weighted(r.id));
    }

    let mut alive: Vec<Rect<T>> = family.rects().to_vec();
    let mut containers = Vec::new();
    loop {
        let round: BTreeSet<RectId> = alive
            .iter()
            .filter(|a| alive.iter().any(|b| a.id != b.id && a.contains_rect(b)))
            .map(|a| a.id)
            .collect();
        if round.is_empty() {
            break;
        }
        containers.extend(round.iter().copied());
        alive.retain(|r| !round.contains(&r.id));
    }
    let after_containers = family.subset(&alive.iter().map(|r| r.id).collect());

    let mut packed = BTreeSet::new();
    let mut cliques = Vec::new();
    for s in stabbed_sets(&after_containers)? {
        let mut free: Vec<RectId> = s.members.iter().copied().filter(|id| !packed.contains(id)).collect();
        free.sort_unstable();
        for clique in free.chunks_exact(q + 1) {
            packed.extend(clique.iter().copied());
            cliques.push(clique.to_vec());
        }
    }
    if q == 2 {
        let mut rest: BTreeSet<RectId> = after_containers.ids().difference(&packed).copied().collect();
        let graph = build_graph(&after_containers.subset(&rest))?.into_graph();
        let mut g = graph;
        while let Some(t) = find_triangle(&g) {
            packed.extend(t);
            cliques.push(t.to_vec());
            for id in t {
                rest.remove(&id);
            }
            g = g.induced(&rest);
        }
    }

    let forced: Cover = containers.iter().chain(packed.iter()).copied().collect();
    let residual_ids: BTreeSet<RectId> = family.ids().difference(&forced).copied().collect();
    Ok(CleanResult {
        forced,
        containers,
        credit: T::from_usize_exact(q * cliques.len()),
        cliques,
        residual: family.subset(&residual_ids),
        q,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalRatioResult<T> {
    /// Vertices whose weight was driven to zero (plus zero-weight inputs).
    pub forced: Cover,
    /// Triangle-free graph on the surviving vertices, with reduced weights.
    pub residual: WeightedGraph<T>,
    /// Each round's triangle and the weight subtracted from its vertices.
    pub rounds: Vec<([RectId; 3], T)>,
    /// `2·Σδ`: every cover pays at least `2δ` per round.
    pub credit: T,
}

/// Local-ratio triangle elimination: while the positive-weight part has a
/// triangle, subtract its minimum weight `δ` from all three vertices.
///
/// Each round charges at most `3δ` to the solution against at least `2δ`
/// in any cover, so a `β`-approximate cover of the residual (under reduced
/// weights) together with `forced` is `max(β, 3/2)`-approximate.
pub fn local_ratio_triangle_free<T: Scalar>(g: &WeightedGraph<T>) -> LocalRatioResult<T> {
    let mut weight: BTreeMap<RectId, T> = g.ids().iter().map(|&id| (id, g.weight_of(id).unwrap())).collect();
    let mut forced: Cover = weight
        .iter()
        .filter(|(_, w)| **w == T::zero())
        .map(|(id, _)| *id)
        .collect();
    let mut alive: BTreeSet<RectId> = g.ids().iter().copied().filter(|id| !forced.contains(id)).collect();
    let mut rounds = Vec::new();
    let current = |alive: &BTreeSet<RectId>, weight: &BTreeMap<RectId, T>| {
        let sub = g.induced(alive);
        let ws = sub.ids().iter().map(|id| weight[id]).collect();
        sub.with_weights(ws).expect("reduced weights stay non-negative")
    };
    let mut sub = current(&alive, &weight);
    while let Some(t) = find_triangle(&sub) {
        let delta = t
            .iter()
            .map(|id| weight[id])
            .reduce(crate::scalar::min_by_scalar)
            .expect("triangle has three vertices");
        for id in t {
            let w = weight.get_mut(&id).unwrap();
            *w = *w - delta;
            if *w == T::zero() {
                forced.insert(id);
                alive.remove(&id);
            }
        }
        rounds.push((t, delta));
        sub = current(&alive, &weight);
    }
    let credit = T::two() * sum(rounds.iter().map(|(_, d)| *d));
    LocalRatioResult {
        forced,
        residual: sub,
        rounds,
        credit,
    }
}

/// The crossing order: `a ≺ b` iff `X_a ⊂ X_b` and `Y_b ⊂ Y_a` (both strict).
pub fn crossing_precedes<T: Scalar>(a: &Rect<T>, b: &Rect<T>) -> bool {
    b.x.strictly_contains(&a.x) && a.y.strictly_contains(&b.y)
}

/// Splits a family without 3-chains in the crossing order into its minimal
/// elements and the rest. Both classes are antichains, i.e. non-crossing.
///
/// A chain `a ≺ b ≺ c` (equivalently, a pairwise crossing triple) is
/// returned as the error witness.
pub fn dilworth_partition<T: Scalar>(family: &RectFamily<T>) -> Result<(RectFamily<T>, RectFamily<T>)> {
    let rects = family.rects();
    let predecessor = |r: &Rect<T>| rects.iter().find(|p| crossing_precedes(p, r));
    let mut minimal = BTreeSet::new();
    let mut rest = BTreeSet::new();
    for r in rects {
        match predecessor(r) {
            None => {
                minimal.insert(r.id);
            }
            Some(p) => {
                if let Some(s) = rects.iter().find(|s| crossing_precedes(r, s)) {
                    return Err(Error::CrossingChain(p.id, r.id, s.id));
                }
                rest.insert(r.id);
            }
        }
    }
    Ok((family.subset(&minimal), family.subset(&rest)))
}
