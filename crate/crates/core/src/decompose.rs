//! Tree decompositions: BFS layering into residue classes, a min-fill
//! elimination heuristic, validation, transfer from arrangement joints to
//! rectangles, and the exact weighted vertex-cover DP over a decomposition.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::arrangement::ArrangementGraph;
use crate::error::{Error, Result};
use crate::geometry::RectId;
use crate::graphs::{Cover, SimpleGraph, WeightedGraph};
use crate::scalar::Scalar;

/// Default cap on the decomposition width accepted by [`vc_dp`].
pub const DEFAULT_WIDTH_CEILING: usize = 25;

/// Bags over vertices of type `V` plus a tree over bag indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition<V> {
    pub bags: Vec<BTreeSet<V>>,
    /// Adjacency lists over bag indices.
    pub tree: Vec<Vec<usize>>,
}

impl<V: Ord + Copy> TreeDecomposition<V> {
    pub fn single_bag(bag: BTreeSet<V>) -> Self {
        Self {
            bags: vec![bag],
            tree: vec![Vec::new()],
        }
    }

    /// `max |X| - 1`, or 0 without bags.
    pub fn width(&self) -> usize {
        self.bags.iter().map(BTreeSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.tree
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    /// Same tree with every bag mapped element-wise.
    pub fn map_bags<W: Ord + Copy>(&self, mut f: impl FnMut(&BTreeSet<V>) -> BTreeSet<W>) -> TreeDecomposition<W> {
        TreeDecomposition {
            bags: self.bags.iter().map(&mut f).collect(),
            tree: self.tree.clone(),
        }
    }

    pub fn vertices(&self) -> BTreeSet<V> {
        self.bags.iter().flatten().copied().collect()
    }
}

impl<T: Scalar> WeightedGraph<T> {
    /// Converts a decomposition over ids to one over this graph's indices.
    pub fn td_to_indices(&self, td: &TreeDecomposition<RectId>) -> Result<TreeDecomposition<usize>> {
        let mut bags = Vec::with_capacity(td.bags.len());
        for bag in &td.bags {
            let mut b = BTreeSet::new();
            for id in bag {
                b.insert(self.index_of(*id).ok_or(Error::UnknownId(*id))?);
            }
            bags.push(b);
        }
        Ok(TreeDecomposition {
            bags,
            tree: td.tree.clone(),
        })
    }
}

/// First violated condition of a tree decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    NotATree,
    UnknownVertex(usize),
    MissingVertex(usize),
    UncoveredEdge(usize, usize),
    Disconnected(usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree => write!(f, "bag adjacency is not a tree"),
            TdViolation::UnknownVertex(v) => write!(f, "bag mentions unknown vertex {v}"),
            TdViolation::MissingVertex(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::UncoveredEdge(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            TdViolation::Disconnected(v) => write!(f, "bags holding vertex {v} are not connected"),
        }
    }
}

fn is_tree(tree: &[Vec<usize>]) -> bool {
    let n = tree.len();
    if n == 0 {
        return true;
    }
    let mut edges = 0;
    for (a, ns) in tree.iter().enumerate() {
        for &b in ns {
            if b >= n || b == a || !tree[b].contains(&a) {
                return false;
            }
            edges += 1;
        }
    }
    if edges != 2 * (n - 1) {
        return false;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(a) = stack.pop() {
        for &b in &tree[a] {
            if !seen[b] {
                seen[b] = true;
                count += 1;
                stack.push(b);
            }
        }
    }
    count == n
}

/// Checks the tree shape, vertex and edge coverage, and that the bags
/// holding each vertex form a connected subtree.
pub fn validate_td(g: &SimpleGraph, td: &TreeDecomposition<usize>) -> Result<(), TdViolation> {
    if td.tree.len() != td.bags.len() || !is_tree(&td.tree) {
        return Err(TdViolation::NotATree);
    }
    let n = g.len();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(TdViolation::UnknownVertex(v));
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = holders.iter().position(Vec::is_empty) {
        return Err(TdViolation::MissingVertex(v));
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(TdViolation::UncoveredEdge(u, v));
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        let mut seen = BTreeSet::from([hs[0]]);
        let mut stack = vec![hs[0]];
        while let Some(a) = stack.pop() {
            for &b in &td.tree[a] {
                if td.bags[b].contains(&v) && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        if seen.len() != hs.len() {
            return Err(TdViolation::Disconnected(v));
        }
    }
    Ok(())
}

/// Vertex classes `V_1..V_k` by BFS level modulo `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerClasses {
    pub classes: Vec<BTreeSet<usize>>,
    /// BFS level of each vertex within its component.
    pub levels: Vec<usize>,
    pub k: usize,
}

/// BFS from the smallest vertex of each component; class `i` holds the
/// vertices whose level is `≡ i (mod k)` (0-based).
pub fn bfs_layer_classes(g: &SimpleGraph, k: usize) -> LayerClasses {
    assert!(k >= 1, "k must be positive");
    let mut levels = vec![usize::MAX; g.len()];
    for s in 0..g.len() {
        if levels[s] != usize::MAX {
            continue;
        }
        levels[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if levels[u] == usize::MAX {
                    levels[u] = levels[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut classes = vec![BTreeSet::new(); k];
    for (v, &l) in levels.iter().enumerate() {
        classes[l % k].insert(v);
    }
    LayerClasses { classes, levels, k }
}

/// Min-fill elimination ordering turned into a tree decomposition. Ties go
/// to the smaller degree, then the smaller index.
pub fn heuristic_tree_decomposition(g: &SimpleGraph) -> TreeDecomposition<usize> {
    let n = g.len();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let fill = |adj: &[BTreeSet<usize>], v: usize| {
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let mut position = vec![0; n];
    let mut bags = Vec::with_capacity(n);
    let mut later: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    while let Some(v) = alive
        .iter()
        .copied()
        .min_by_key(|&v| (fill(&adj, v), adj[v].len(), v))
    {
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &ns {
            adj[a].remove(&v);
        }
        alive.remove(&v);
        position[v] = order.len();
        order.push(v);
        let mut bag: BTreeSet<usize> = ns.iter().copied().collect();
        later.push(bag.clone());
        bag.insert(v);
        bags.push(bag);
    }
    let mut tree = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (i, ns) in later.iter().enumerate() {
        match ns.iter().min_by_key(|&&u| position[u]) {
            Some(&u) => {
                let p = position[u];
                tree[i].push(p);
                tree[p].push(i);
            }
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        tree[w[0]].push(w[1]);
        tree[w[1]].push(w[0]);
    }
    TreeDecomposition { bags, tree }
}

/// Maps a decomposition over joints to one over rectangles, `X ↦ R(X)`,
/// keeping only `survivors`.
///
/// Every survivor must have all of its joints inside the decomposition, so
/// that its boundary path is there to keep its bags connected.
pub fn transfer_td<T: Scalar>(
    td: &TreeDecomposition<usize>,
    arrangement: &ArrangementGraph<T>,
    survivors: &BTreeSet<RectId>,
) -> Result<TreeDecomposition<RectId>> {
    let covered = td.vertices();
    for &id in survivors {
        let js = arrangement.joints_of(id);
        let inside = js.iter().filter(|j| covered.contains(j)).count();
        if inside == 0 {
            return Err(Error::NoJoint(id));
        }
        if inside < js.len() {
            return Err(Error::PartialJoints(id));
        }
    }
    Ok(td.map_bags(|bag| {
        arrangement
            .induced_rects(bag)
            .intersection(survivors)
            .copied()
            .collect()
    }))
}

/// Exact minimum-weight vertex cover by dynamic programming over `td`.
///
/// Each bag keeps a table over the subsets of its vertices that cover the
/// edges inside the bag; children are folded in through their projection
/// onto the shared vertices. Ties go to the first minimal subset in mask
/// order, so the result is deterministic.
pub fn vc_dp<T: Scalar>(g: &WeightedGraph<T>, td: &TreeDecomposition<usize>, width_ceiling: usize) -> Result<(Cover, T)> {
    validate_td(g.structure(), td).map_err(Error::InvalidDecomposition)?;
    let width = td.width();
    if width > width_ceiling || width >= 60 {
        return Err(Error::WidthCeiling {
            width,
            ceiling: width_ceiling,
        });
    }
    if td.bags.is_empty() {
        return Ok((Cover::new(), T::zero()));
    }

    // root at bag 0; parents before children in `order`
    let m = td.bags.len();
    let mut parent = vec![usize::MAX; m];
    let mut order = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        order.push(a);
        for &b in &td.tree[a] {
            if !seen[b] {
                seen[b] = true;
                parent[b] = a;
                stack.push(b);
            }
        }
    }
    let verts: Vec<Vec<usize>> = td.bags.iter().map(|b| b.iter().copied().collect()).collect();

    struct ChildLink<T> {
        child: usize,
        /// (position in parent bag, position in child bag)
        shared: Vec<(usize, usize)>,
        best: Vec<Option<(T, u64)>>,
    }
    let mut tables: Vec<Vec<Option<T>>> = vec![Vec::new(); m];
    let mut links: Vec<Vec<ChildLink<T>>> = (0..m).map(|_| Vec::new()).collect();

    for &t in order.iter().rev() {
        let bag = &verts[t];
        let size = bag.len();
        let local: Vec<u64> = bag
            .iter()
            .map(|&v| {
                bag.iter()
                    .enumerate()
                    .filter(|(_, &u)| g.structure().has_edge(u, v))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        let weight_of = |mask: u64, positions: &mut dyn Iterator<Item = usize>| {
            positions
                .filter(|&i| mask >> i & 1 == 1)
                .fold(T::zero(), |acc, i| acc + g.weight(bag[i]))
        };
        let mut table = vec![None; 1usize << size];
        for (s, slot) in table.iter_mut().enumerate() {
            let s = s as u64;
            let valid = (0..size).all(|i| s >> i & 1 == 1 || local[i] & !s == 0);
            if !valid {
                continue;
            }
            let mut cost = weight_of(s, &mut (0..size));
            let mut feasible = true;
            for link in &links[t] {
                let key = link
                    .shared
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (k, &(pp, _))| acc | (((s >> pp) & 1) as usize) << k);
                match link.best[key] {
                    Some((c, _)) => cost = cost + c,
                    None => {
                        feasible = false;
                        break;
                    }
                }
            }
            if feasible {
                *slot = Some(cost);
            }
        }
        if parent[t] != usize::MAX {
            let p = parent[t];
            let shared: Vec<(usize, usize)> = verts[p]
                .iter()
                .enumerate()
                .filter_map(|(pp, v)| bag.iter().position(|u| u == v).map(|cp| (pp, cp)))
                .collect();
            let mut best: Vec<Option<(T, u64)>> = vec![None; 1usize << shared.len()];
            for (s, entry) in table.iter().enumerate() {
                let Some(cost) = *entry else { continue };
                let s = s as u64;
                let key = shared
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (k, &(_, cp))| acc | (((s >> cp) & 1) as usize) << k);
                let own_shared = weight_of(s, &mut shared.iter().map(|&(_, cp)| cp));
                let value = cost - own_shared;
                if best[key].as_ref().is_none_or(|(b, _)| value < *b) {
                    best[key] = Some((value, s));
                }
            }
            links[p].push(ChildLink { child: t, shared, best });
        }
        tables[t] = table;
    }

    let (root_mask, total) = tables[0]
        .iter()
        .enumerate()
        .filter_map(|(s, c)| c.map(|c| (s as u64, c)))
        .reduce(|a, b| if b.1 < a.1 { b } else { a })
        .expect("a bag always admits the full subset");
    let mut cover = Cover::new();
    let mut pending = vec![(0usize, root_mask)];
    while let Some((t, s)) = pending.pop() {
        for (i, &v) in verts[t].iter().enumerate() {
            if s >> i & 1 == 1 {
                cover.insert(g.id(v));
            }
        }
        for link in &links[t] {
            let key = link
                .shared
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &(pp, _))| acc | (((s >> pp) & 1) as usize) << k);
            let (_, cs) = link.best[key].expect("feasible parent state has a child state");
            pending.push((link.child, cs));
        }
    }
    Ok((cover, total))
}

/// Heuristic decomposition of `g` followed by [`vc_dp`].
pub fn solve_by_decomposition<T: Scalar>(g: &WeightedGraph<T>, width_ceiling: usize) -> Result<(Cover, T, usize)> {
    let td = heuristic_tree_decomposition(g.structure());
    let (cover, w) = vc_dp(g, &td, width_ceiling)?;
    Ok((cover, w, td.width()))
}

/// Decomposition of `g - removed`, expressed over the vertex indices of `g`.
pub fn td_without(g: &SimpleGraph, removed: &BTreeSet<usize>) -> TreeDecomposition<usize> {
    let keep: Vec<usize> = (0..g.len()).filter(|v| !removed.contains(v)).collect();
    heuristic_tree_decomposition(&g.induced(&keep)).map_bags(|b| b.iter().map(|&i| keep[i]).collect())
}
