//! Nemhauser–Trotter reduction: the half-integral optimum of the fractional
//! vertex-cover LP, obtained from a minimum-weight vertex cover of the
//! bipartite double cover, together with lifting of kernel covers.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graphs::{Cover, WeightedGraph};
use crate::geometry::RectId;
use crate::scalar::{min_by_scalar, sum, Scalar};

/// Partition of the vertices by LP value `x_v ∈ {1, 0, ½}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NtReduction<T> {
    pub v_one: BTreeSet<RectId>,
    pub v_zero: BTreeSet<RectId>,
    pub v_half: BTreeSet<RectId>,
    /// `w(v_one) + w(v_half) / 2`, the LP optimum.
    pub lp_value: T,
    /// `G[v_half]`.
    pub kernel: WeightedGraph<T>,
}

impl<T: Scalar> NtReduction<T> {
    /// LP value of `id` doubled: 2, 1 or 0.
    pub fn doubled_value(&self, id: RectId) -> Option<u8> {
        if self.v_one.contains(&id) {
            Some(2)
        } else if self.v_half.contains(&id) {
            Some(1)
        } else if self.v_zero.contains(&id) {
            Some(0)
        } else {
            None
        }
    }
}

struct Arc<T> {
    to: usize,
    residual: T,
}

/// Edmonds–Karp on an explicit residual network. Arcs are stored in pairs so
/// that `e ^ 1` is the reverse of `e`.
struct FlowNetwork<T> {
    arcs: Vec<Arc<T>>,
    out: Vec<Vec<usize>>,
}

impl<T: Scalar> FlowNetwork<T> {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: T) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, residual: cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            residual: T::zero(),
        });
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut via = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let arc = &self.arcs[e];
                if arc.residual > T::zero() && !seen[arc.to] {
                    seen[arc.to] = true;
                    via[arc.to] = Some(e);
                    queue.push_back(arc.to);
                }
            }
        }
        via
    }

    fn max_flow(&mut self, source: usize, sink: usize) {
        loop {
            let via = self.bfs(source);
            if via[sink].is_none() {
                return;
            }
            let mut bottleneck = None;
            let mut v = sink;
            while let Some(e) = via[v] {
                let r = self.arcs[e].residual;
                bottleneck = Some(bottleneck.map_or(r, |b| min_by_scalar(b, r)));
                v = self.arcs[e ^ 1].to;
            }
            let delta = bottleneck.expect("augmenting path has an arc");
            let mut v = sink;
            while let Some(e) = via[v] {
                self.arcs[e].residual = self.arcs[e].residual - delta;
                self.arcs[e ^ 1].residual = self.arcs[e ^ 1].residual + delta;
                v = self.arcs[e ^ 1].to;
            }
        }
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let via = self.bfs(source);
        (0..self.out.len()).map(|v| v == source || via[v].is_some()).collect()
    }
}

/// Solves the fractional vertex-cover LP on `g` and partitions its vertices.
///
/// Each vertex `v` becomes `v_L`, `v_R`; each edge `{u, v}` becomes
/// `{u_L, v_R}` and `{v_L, u_R}`. A minimum cut of the resulting bipartite
/// network gives a minimum-weight bipartite cover, and `x_v` is the
/// average of the indicators of `v_L` and `v_R`. The cover is read off the
/// source side of the residual network, which fixes one canonical optimum.
pub fn nt_reduce<T: Scalar>(g: &WeightedGraph<T>) -> Result<NtReduction<T>> {
    let n = g.len();
    if let Some(v) = (0..n).find(|&v| !(g.weight(v) >= T::zero())) {
        return Err(Error::NegativeWeight(g.id(v)));
    }
    let (source, sink) = (2 * n, 2 * n + 1);
    let left = |v: usize| v;
    let right = |v: usize| n + v;
    // exceeds any finite cut
    let infinite = g.total_weight() + T::one();
    let mut net = FlowNetwork::new(2 * n + 2);
    for v in 0..n {
        net.add_arc(source, left(v), g.weight(v));
        net.add_arc(right(v), sink, g.weight(v));
    }
    for (u, v) in g.structure().edges() {
        net.add_arc(left(u), right(v), infinite);
        net.add_arc(left(v), right(u), infinite);
    }
    net.max_flow(source, sink);
    let reach = net.reachable(source);

    let mut red = NtReduction {
        v_one: BTreeSet::new(),
        v_zero: BTreeSet::new(),
        v_half: BTreeSet::new(),
        lp_value: T::zero(),
        kernel: g.clone(),
    };
    for v in 0..n {
        let in_left = !reach[left(v)];
        let in_right = reach[right(v)];
        let set = match (in_left, in_right) {
            (true, true) => &mut red.v_one,
            (false, false) => &mut red.v_zero,
            _ => &mut red.v_half,
        };
        set.insert(g.id(v));
    }
    let w = |s: &BTreeSet<RectId>| sum(s.iter().map(|id| g.weight_of(*id).expect("vertex of g")));
    red.lp_value = w(&red.v_one) + w(&red.v_half).half();
    red.kernel = g.induced(&red.v_half);
    Ok(red)
}

/// Lifts a cover of the kernel `G[v_half]` to a cover of the whole graph by
/// adding `v_one`.
pub fn nt_lift<T: Scalar>(reduction: &NtReduction<T>, kernel_cover: &Cover) -> Result<Cover> {
    if let Some(id) = kernel_cover.iter().find(|id| !reduction.v_half.contains(id)) {
        return Err(Error::UnknownId(*id));
    }
    reduction.kernel.check_cover(kernel_cover)?;
    Ok(kernel_cover.union(&reduction.v_one).copied().collect())
}
