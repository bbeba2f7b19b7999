//! Intersection graphs and the clique/triangle queries used by cleaning.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::geometry::{boundary_intersection_points, classify_pair, IntersectionKind, Point, RectFamily, RectId};
use crate::scalar::{sum, Scalar};

/// A vertex cover, as a sorted id set.
pub type Cover = BTreeSet<RectId>;

/// Undirected simple graph on `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Subgraph induced by `keep` (in the given order); vertex `i` of the
    /// result is `keep[i]` of `self`.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = SimpleGraph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for u in self.neighbors(v) {
                if let Some(&j) = pos.get(&u) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Some triangle, scanning `u < v < w` lexicographically.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for u in 0..self.len() {
            for v in self.adj[u].range(u + 1..) {
                for w in self.adj[*v].range(v + 1..) {
                    if self.adj[u].contains(w) {
                        return Some((u, *v, *w));
                    }
                }
            }
        }
        None
    }
}

/// Vertex-weighted graph whose vertices carry rectangle ids.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<T> {
    ids: Vec<RectId>,
    weights: Vec<T>,
    index: BTreeMap<RectId, usize>,
    graph: SimpleGraph,
}

impl<T: Scalar> WeightedGraph<T> {
    pub fn new(vertices: impl IntoIterator<Item = (RectId, T)>) -> Result<Self> {
        let (mut ids, mut weights, mut index) = (Vec::new(), Vec::new(), BTreeMap::new());
        for (id, w) in vertices {
            if !(w >= T::zero()) {
                return Err(Error::NegativeWeight(id));
            }
            if index.insert(id, ids.len()).is_some() {
                return Err(Error::DuplicateId(id));
            }
            ids.push(id);
            weights.push(w);
        }
        let graph = SimpleGraph::new(ids.len());
        Ok(Self {
            ids,
            weights,
            index,
            graph,
        })
    }

    /// Graph on ids `0..n` with the given weights and index edges.
    pub fn from_parts(weights: Vec<T>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(weights.into_iter().enumerate().map(|(i, w)| (RectId(i as u64), w)))?;
        for (u, v) in edges {
            g.graph.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: RectId, b: RectId) -> Result<()> {
        let u = self.index_of(a).ok_or(Error::UnknownId(a))?;
        let v = self.index_of(b).ok_or(Error::UnknownId(b))?;
        self.graph.add_edge(u, v);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn structure(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn id(&self, v: usize) -> RectId {
        self.ids[v]
    }

    pub fn ids(&self) -> &[RectId] {
        &self.ids
    }

    pub fn weight(&self, v: usize) -> T {
        self.weights[v]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn weight_of(&self, id: RectId) -> Option<T> {
        self.index_of(id).map(|v| self.weights[v])
    }

    pub fn index_of(&self, id: RectId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn contains(&self, id: RectId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = (RectId, RectId)> + '_ {
        self.graph.edges().map(|(u, v)| (self.ids[u], self.ids[v]))
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn total_weight(&self) -> T {
        sum(self.weights.iter().copied())
    }

    /// Sum of weights of the cover members that are vertices of this graph.
    pub fn cover_weight(&self, cover: &Cover) -> T {
        sum(cover.iter().filter_map(|id| self.weight_of(*id)))
    }

    /// `Ok` iff every edge has an endpoint in `cover`; otherwise the first
    /// uncovered edge.
    pub fn check_cover(&self, cover: &Cover) -> Result<()> {
        match self
            .edge_ids()
            .find(|(a, b)| !cover.contains(a) && !cover.contains(b))
        {
            Some((a, b)) => Err(Error::UncoveredEdge(a, b)),
            None => Ok(()),
        }
    }

    /// Subgraph induced by the ids in `keep` (vertex order preserved).
    pub fn induced(&self, keep: &BTreeSet<RectId>) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&v| keep.contains(&self.ids[v])).collect();
        self.induced_by_index(&idx)
    }

    pub(crate) fn induced_by_index(&self, idx: &[usize]) -> Self {
        let ids: Vec<RectId> = idx.iter().map(|&v| self.ids[v]).collect();
        Self {
            index: ids.iter().enumerate().map(|(i, &id)| (id, i)).collect(),
            weights: idx.iter().map(|&v| self.weights[v]).collect(),
            graph: self.graph.induced(idx),
            ids,
        }
    }

    /// Same structure with replaced weights.
    pub fn with_weights(&self, weights: Vec<T>) -> Result<Self> {
        assert_eq!(weights.len(), self.len(), "one weight per vertex");
        if let Some(v) = weights.iter().position(|w| !(*w >= T::zero())) {
            return Err(Error::NegativeWeight(self.ids[v]));
        }
        Ok(Self {
            weights,
            ..self.clone()
        })
    }

    /// Ids of the vertices with at least one neighbour.
    pub fn non_isolated(&self) -> BTreeSet<RectId> {
        (0..self.len())
            .filter(|&v| self.graph.degree(v) > 0)
            .map(|v| self.ids[v])
            .collect()
    }
}

/// Some triangle of `g` as ids, deterministic in vertex order.
pub fn find_triangle<T: Scalar>(g: &WeightedGraph<T>) -> Option<[RectId; 3]> {
    g.structure()
        .find_triangle()
        .map(|(a, b, c)| [g.id(a), g.id(b), g.id(c)])
}

/// `G_R`: one vertex per rectangle, one edge per intersecting pair.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionGraph<T> {
    graph: WeightedGraph<T>,
    kinds: BTreeMap<(RectId, RectId), IntersectionKind>,
}

impl<T: Scalar> IntersectionGraph<T> {
    pub fn graph(&self) -> &WeightedGraph<T> {
        &self.graph
    }

    pub fn into_graph(self) -> WeightedGraph<T> {
        self.graph
    }

    /// Kind of the edge `{a, b}`, or `None` when the pair is disjoint.
    pub fn kind(&self, a: RectId, b: RectId) -> Option<IntersectionKind> {
        self.kinds.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn kinds(&self) -> &BTreeMap<(RectId, RectId), IntersectionKind> {
        &self.kinds
    }
}

impl<T> Deref for IntersectionGraph<T> {
    type Target = WeightedGraph<T>;

    fn deref(&self) -> &Self::Target {
        &self.graph
    }
}

/// All-pairs construction of the intersection graph.
pub fn build_graph<T: Scalar>(family: &RectFamily<T>) -> Result<IntersectionGraph<T>> {
    family.require_normalized()?;
    let rects = family.rects();
    let mut graph = WeightedGraph::new(rects.iter().map(|r| (r.id, r.weight)))?;
    let mut kinds = BTreeMap::new();
    for (i, a) in rects.iter().enumerate() {
        for (j, b) in rects.iter().enumerate().skip(i + 1) {
            let kind = classify_pair(a, b);
            if kind.is_intersecting() {
                graph.graph.add_edge(i, j);
                kinds.insert((a.id.min(b.id), a.id.max(b.id)), kind);
            }
        }
    }
    Ok(IntersectionGraph { graph, kinds })
}

/// A candidate stabbing location: a point pushed infinitesimally into one of
/// its four quadrants, with the rectangles that contain it.
#[derive(Debug, Clone, PartialEq)]
pub struct StabbedSet<T> {
    pub point: Point<T>,
    pub quadrant: (Ordering, Ordering),
    pub members: Vec<RectId>,
}

const QUADRANTS: [(Ordering, Ordering); 4] = [
    (Ordering::Greater, Ordering::Greater),
    (Ordering::Less, Ordering::Greater),
    (Ordering::Less, Ordering::Less),
    (Ordering::Greater, Ordering::Less),
];

/// Every corner and every boundary joint, pushed into each adjacent open
/// region, with the rectangles covering it. Sorted by `(x, y)` of the point.
///
/// For boxes the common intersection of a clique is a box whose lower-left
/// corner is a rectangle corner or a joint, so the `(+, +)` push of that
/// point witnesses every clique.
pub fn stabbed_sets<T: Scalar>(family: &RectFamily<T>) -> Result<Vec<StabbedSet<T>>> {
    family.require_normalized()?;
    let rects = family.rects();
    let mut points: Vec<Point<T>> = rects.iter().flat_map(|r| r.corners()).collect();
    for (i, a) in rects.iter().enumerate() {
        for b in &rects[i + 1..] {
            points.extend(boundary_intersection_points(a, b).into_iter().map(|j| j.point));
        }
    }
    points.sort_by(|a, b| a.lex_cmp(b));
    points.dedup();
    let mut out = Vec::new();
    for p in points {
        for q in QUADRANTS {
            let members: Vec<RectId> = rects
                .iter()
                .filter(|r| r.contains_perturbed(&p, q.0, q.1))
                .map(|r| r.id)
                .collect();
            if !members.is_empty() {
                out.push(StabbedSet {
                    point: p,
                    quadrant: q,
                    members,
                });
            }
        }
    }
    Ok(out)
}

/// Distinct point-stabbed rectangle sets of size at least `q + 1`, in
/// candidate-point order.
pub fn enumerate_point_cliques<T: Scalar>(family: &RectFamily<T>, q: usize) -> Result<Vec<BTreeSet<RectId>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in stabbed_sets(family)? {
        if s.members.len() > q {
            let set: BTreeSet<RectId> = s.members.into_iter().collect();
            if seen.insert(set.clone()) {
                out.push(set);
            }
        }
    }
    Ok(out)
}

/// Largest number of rectangles sharing a common point.
pub fn max_point_clique<T: Scalar>(family: &RectFamily<T>) -> Result<usize> {
    Ok(stabbed_sets(family)?
        .iter()
        .map(|s| s.members.len())
        .max()
        .unwrap_or(0))
}
