//! Top-level algorithms: the `(1 + ε)` scheme for non-crossing families,
//! the `(1.5 + ε)` algorithms for arbitrary families, and the exact and LP
//! oracles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::{build_arrangement, ArrangementGraph};
use crate::clean::{clean_family, dilworth_partition, local_ratio_triangle_free};
use crate::decompose::{
    bfs_layer_classes, heuristic_tree_decomposition, solve_by_decomposition, td_without, transfer_td, vc_dp,
    DEFAULT_WIDTH_CEILING,
};
use crate::error::{Error, Result};
use crate::geometry::{normalize_general_position, RectFamily, RectId};
use crate::graphs::{build_graph, Cover, WeightedGraph};
use crate::kernelize::{nt_lift, nt_reduce};
use crate::scalar::Scalar;

/// Default vertex limit of [`exact_vc`].
pub const DEFAULT_EXACT_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Eptas,
    General,
    GeneralWeighted,
    Exact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Eptas => "eptas",
            Algorithm::General => "general",
            Algorithm::GeneralWeighted => "general-weighted",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Smallest integer `m >= x` for `x >= 0`.
pub fn ceil_to_usize<T: Scalar>(x: T) -> usize {
    let mut m = x.to_f64().map_or(0.0, |f| f.ceil().max(0.0)) as usize;
    while T::from_usize_exact(m) < x {
        m += 1;
    }
    while m > 0 && T::from_usize_exact(m - 1) >= x {
        m -= 1;
    }
    m
}

/// Accuracy parameters derived from `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params<T> {
    pub epsilon: T,
    /// `⌈1/ε⌉`, the clique size bound after cleaning.
    pub q: usize,
    /// Number of BFS residue classes, `⌈8q/ε⌉` unless overridden.
    pub k: usize,
    /// Accounting constant `8q` bounding `Σ|U_i| / n`.
    pub c1: usize,
}

impl<T: Scalar> Params<T> {
    pub fn new(epsilon: T) -> Result<Self> {
        if !(epsilon > T::zero()) {
            return Err(Error::BadEpsilon);
        }
        let q = ceil_to_usize(T::one() / epsilon).max(1);
        let k = ceil_to_usize(T::from_usize_exact(8 * q) / epsilon).max(1);
        Ok(Self { epsilon, q, k, c1: 8 * q })
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        self.k = k;
        Ok(self)
    }

    /// Class count `⌈2/ε⌉` for layering a planar graph directly (`c1 = 1`).
    pub fn planar_k(&self) -> usize {
        ceil_to_usize(T::two() / self.epsilon).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    pub params: Params<T>,
    pub width_ceiling: usize,
    pub exact_limit: usize,
    /// Solve the two non-crossing classes of the general algorithm with the
    /// planar layering instead of the arrangement scheme.
    pub planar_route: bool,
}

impl<T: Scalar> SolverConfig<T> {
    pub fn new(epsilon: T) -> Result<Self> {
        Ok(Self {
            params: Params::new(epsilon)?,
            width_ceiling: DEFAULT_WIDTH_CEILING,
            exact_limit: DEFAULT_EXACT_LIMIT,
            planar_route: false,
        })
    }
}

/// Accounting for one layered run (arrangement or planar).
#[derive(Debug, Clone, PartialEq)]
pub struct BakerRun<T> {
    /// `true` when the classes layer the intersection graph itself.
    pub planar: bool,
    /// Rectangles of the instance handed to the layering.
    pub rects: BTreeSet<RectId>,
    /// Vertices layered: joints, or rectangles when `planar`.
    pub vertices: usize,
    pub k: usize,
    pub c1: usize,
    pub classes: Vec<BTreeSet<usize>>,
    /// `|U_i|` per class.
    pub u_sizes: Vec<usize>,
    /// Width of the decomposition used for each class.
    pub widths: Vec<usize>,
    /// Weight of the DP cover `C*_i` of the remainder.
    pub opt_i: Vec<T>,
    /// Weight of `C_i = U_i ∪ C*_i`.
    pub candidates: Vec<T>,
    pub chosen: usize,
}

impl<T: Scalar> BakerRun<T> {
    pub fn u_total(&self) -> usize {
        self.u_sizes.iter().sum()
    }

    pub fn best(&self) -> T {
        self.candidates[self.chosen]
    }

    pub fn max_width(&self) -> usize {
        self.widths.iter().copied().max().unwrap_or(0)
    }
}

/// Per-stage accounting of a solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics<T> {
    /// Rectangles committed by cleaning or local ratio, over all stages.
    pub forced: usize,
    pub containers: usize,
    pub cliques: usize,
    /// Kernel size after the NT reduction of the top-level residual.
    pub kernel_size: usize,
    /// `(|class A|, |class B|)` of the non-crossing split.
    pub split: Option<(usize, usize)>,
    pub baker: Vec<BakerRun<T>>,
}

impl<T> Default for Diagnostics<T> {
    fn default() -> Self {
        Self {
            forced: 0,
            containers: 0,
            cliques: 0,
            kernel_size: 0,
            split: None,
            baker: Vec::new(),
        }
    }
}

impl<T: Scalar> Diagnostics<T> {
    fn absorb(&mut self, other: Diagnostics<T>) {
        self.forced += other.forced;
        self.containers += other.containers;
        self.cliques += other.cliques;
        self.baker.extend(other.baker);
    }

    /// Compact `key=value` list for tables.
    pub fn summary(&self) -> String {
        let mut parts = vec![
            format!("forced={}", self.forced),
            format!("containers={}", self.containers),
            format!("cliques={}", self.cliques),
            format!("kernel={}", self.kernel_size),
        ];
        if let Some((a, b)) = self.split {
            parts.push(format!("split={a}/{b}"));
        }
        if !self.baker.is_empty() {
            let u: usize = self.baker.iter().map(BakerRun::u_total).sum();
            let w = self.baker.iter().map(BakerRun::max_width).max().unwrap_or(0);
            let v: usize = self.baker.iter().map(|b| b.vertices).sum();
            parts.push(format!("layered={v}"));
            parts.push(format!("sum_u={u}"));
            parts.push(format!("max_width={w}"));
        }
        parts.join(";")
    }

    pub fn to_json(&self) -> Value {
        let runs: Vec<Value> = self
            .baker
            .iter()
            .map(|b| {
                json!({
                    "planar": b.planar,
                    "rects": b.rects.len(),
                    "vertices": b.vertices,
                    "k": b.k,
                    "c1": b.c1,
                    "class_sizes": b.classes.iter().map(BTreeSet::len).collect::<Vec<_>>(),
                    "u_sizes": b.u_sizes,
                    "widths": b.widths,
                    "opt_i": b.opt_i.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "candidates": b.candidates.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "chosen": b.chosen,
                })
            })
            .collect();
        json!({
            "forced": self.forced,
            "containers": self.containers,
            "cliques": self.cliques,
            "kernel_size": self.kernel_size,
            "split": self.split.map(|(a, b)| vec![a, b]),
            "layered_runs": runs,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverResult<T> {
    pub cover: Cover,
    /// Total original weight of `cover`.
    pub weight: T,
    pub algorithm: Algorithm,
    /// The a-priori guarantee: `1 + ε`, `1.5 + ε`, or 1.
    pub certified_ratio: T,
    /// Fractional LP optimum of the input graph.
    pub lower_bound: T,
    pub diagnostics: Diagnostics<T>,
}

/// Fractional vertex-cover optimum, a lower bound on any cover.
pub fn lp_lower_bound<T: Scalar>(g: &WeightedGraph<T>) -> Result<T> {
    Ok(nt_reduce(g)?.lp_value)
}

/// Runs `algorithm` on `family`.
pub fn solve<T: Scalar>(family: &RectFamily<T>, algorithm: Algorithm, config: &SolverConfig<T>) -> Result<CoverResult<T>> {
    match algorithm {
        Algorithm::Eptas => eptas_noncrossing(family, config),
        Algorithm::General => solve_general_unweighted(family, config),
        Algorithm::GeneralWeighted => solve_general_weighted(family, config),
        Algorithm::Exact => exact_cover(family, config),
    }
}

fn require_unweighted<T: Scalar>(family: &RectFamily<T>) -> Result<()> {
    match family.rects().iter().find(|r| r.weight != T::one()) {
        Some(r) => Err(Error::Weighted(r.id)),
        None => Ok(()),
    }
}

fn finish<T: Scalar>(
    family: &RectFamily<T>,
    cover: Cover,
    algorithm: Algorithm,
    certified_ratio: T,
    diagnostics: Diagnostics<T>,
) -> Result<CoverResult<T>> {
    let g = build_graph(family)?;
    g.check_cover(&cover)?;
    Ok(CoverResult {
        weight: g.cover_weight(&cover),
        lower_bound: lp_lower_bound(g.graph())?,
        cover,
        algorithm,
        certified_ratio,
        diagnostics,
    })
}

/// `(1 + ε)`-approximate minimum vertex cover of a non-crossing, unweighted
/// family.
///
/// Cleans with `q = ⌈1/ε⌉`, kernelizes, layers the arrangement graph of the
/// kernel into `k` BFS classes and, for each class `V_i`, solves the
/// rectangles untouched by `V_i` exactly over a decomposition transferred
/// from `A - V_i`. The cheapest `U_i ∪ C*_i` is lifted back.
pub fn eptas_noncrossing<T: Scalar>(family: &RectFamily<T>, config: &SolverConfig<T>) -> Result<CoverResult<T>> {
    let fam = normalize_general_position(family)?;
    require_unweighted(&fam)?;
    if let Some((a, b)) = fam.find_crossing() {
        return Err(Error::CrossingPair(a, b));
    }
    let (cover, diag) = eptas_core(&fam, config)?;
    finish(&fam, cover, Algorithm::Eptas, T::one() + config.params.epsilon, diag)
}

/// The scheme on a normalized, unweighted, non-crossing family.
fn eptas_core<T: Scalar>(fam: &RectFamily<T>, config: &SolverConfig<T>) -> Result<(Cover, Diagnostics<T>)> {
    let p = config.params;
    let cleaned = clean_family(fam, p.q)?;
    let residual = build_graph(&cleaned.residual)?;
    let red = nt_reduce(residual.graph())?;
    let kernel_fam = cleaned.residual.subset(&red.v_half);
    let arrangement = build_arrangement(&kernel_fam)?;
    let (kernel_cover, run) = arrangement_baker(&red.kernel, &arrangement, p, config.width_ceiling)?;
    let mut cover = nt_lift(&red, &kernel_cover)?;
    cover.extend(cleaned.forced.iter().copied());
    let diag = Diagnostics {
        forced: cleaned.forced.len(),
        containers: cleaned.containers.len(),
        cliques: cleaned.cliques.len(),
        kernel_size: red.kernel.len(),
        split: None,
        baker: vec![run],
    };
    Ok((cover, diag))
}

/// Evaluates `f` once per class; all empty classes share one evaluation.
fn per_class<C, F>(classes: &[BTreeSet<usize>], f: F) -> Result<Vec<C>>
where
    C: Clone + Send,
    F: Fn(&BTreeSet<usize>) -> Result<C> + Sync,
{
    let empty = classes.iter().position(BTreeSet::is_empty);
    let computed: Vec<Option<Result<C>>> = classes
        .par_iter()
        .enumerate()
        .map(|(i, c)| (!c.is_empty() || Some(i) == empty).then(|| f(c)))
        .collect();
    let shared = match empty {
        Some(i) => Some(computed[i].clone().expect("representative evaluated")?),
        None => None,
    };
    computed
        .into_iter()
        .map(|r| r.unwrap_or_else(|| Ok(shared.clone().expect("empty class evaluated"))))
        .collect()
}

#[derive(Clone)]
struct Candidate<T> {
    cover: Cover,
    u_size: usize,
    width: usize,
    opt_i: T,
    weight: T,
}

fn pick_min<T: Scalar>(cands: &[Candidate<T>]) -> usize {
    let mut best = 0;
    for (i, c) in cands.iter().enumerate() {
        if c.weight < cands[best].weight {
            best = i;
        }
    }
    best
}

/// Layered exact solving over the arrangement graph of a cleaned kernel.
fn arrangement_baker<T: Scalar>(
    g: &WeightedGraph<T>,
    arrangement: &ArrangementGraph<T>,
    p: Params<T>,
    width_ceiling: usize,
) -> Result<(Cover, BakerRun<T>)> {
    let sg = arrangement.simple_graph();
    let layers = bfs_layer_classes(&sg, p.k);
    let with_joints = arrangement.rect_ids();
    let cands = per_class(&layers.classes, |class| {
        let u = arrangement.induced_rects(class);
        let survivors: BTreeSet<RectId> = with_joints.difference(&u).copied().collect();
        let transferred = transfer_td(&td_without(&sg, class), arrangement, &survivors)?;
        let h = g.induced(&survivors);
        let mut td = h.td_to_indices(&transferred)?;
        let direct = heuristic_tree_decomposition(h.structure());
        if direct.width() < td.width() {
            td = direct;
        }
        let (cstar, opt_i) = vc_dp(&h, &td, width_ceiling)?;
        let cover: Cover = u.union(&cstar).copied().collect();
        Ok(Candidate {
            weight: g.cover_weight(&cover),
            cover,
            u_size: u.len(),
            width: td.width(),
            opt_i,
        })
    })?;
    Ok(assemble(cands, layers.classes, g, sg.len(), p.k, p.c1, false))
}

fn assemble<T: Scalar>(
    cands: Vec<Candidate<T>>,
    classes: Vec<BTreeSet<usize>>,
    g: &WeightedGraph<T>,
    vertices: usize,
    k: usize,
    c1: usize,
    planar: bool,
) -> (Cover, BakerRun<T>) {
    let chosen = pick_min(&cands);
    let run = BakerRun {
        planar,
        rects: g.ids().iter().copied().collect(),
        vertices,
        k,
        c1,
        classes,
        u_sizes: cands.iter().map(|c| c.u_size).collect(),
        widths: cands.iter().map(|c| c.width).collect(),
        opt_i: cands.iter().map(|c| c.opt_i).collect(),
        candidates: cands.iter().map(|c| c.weight).collect(),
        chosen,
    };
    (cands[chosen].cover.clone(), run)
}

/// Baker layering on a planar weighted graph: BFS classes mod `k`, each
/// class deleted in turn and the rest solved exactly; `U_i = V_i`.
pub fn planar_baker<T: Scalar>(g: &WeightedGraph<T>, k: usize, width_ceiling: usize) -> Result<(Cover, BakerRun<T>)> {
    let layers = bfs_layer_classes(g.structure(), k);
    let cands = per_class(&layers.classes, |class| {
        let u: Cover = class.iter().map(|&v| g.id(v)).collect();
        let rest: BTreeSet<RectId> = g.ids().iter().copied().filter(|id| !u.contains(id)).collect();
        let (cstar, opt_i, width) = solve_by_decomposition(&g.induced(&rest), width_ceiling)?;
        let cover: Cover = u.union(&cstar).copied().collect();
        Ok(Candidate {
            weight: g.cover_weight(&cover),
            cover,
            u_size: u.len(),
            width,
            opt_i,
        })
    })?;
    Ok(assemble(cands, layers.classes, g, g.len(), k, 1, true))
}

/// Cheaper of `R_1 ∪ C_2` and `R_2 ∪ C_1` under the weights of `g`.
fn best_split<T: Scalar>(g: &WeightedGraph<T>, r1: &RectFamily<T>, c1: &Cover, r2: &RectFamily<T>, c2: &Cover) -> Cover {
    let a: Cover = r1.ids().union(c2).copied().collect();
    let b: Cover = r2.ids().union(c1).copied().collect();
    if g.cover_weight(&b) < g.cover_weight(&a) {
        b
    } else {
        a
    }
}

/// `(1.5 + ε)`-approximate minimum vertex cover of an arbitrary unweighted
/// family.
///
/// Cleans with `q = 2` so the residual is triangle-free, kernelizes, splits
/// the kernel into two non-crossing classes, solves each class with the
/// non-crossing scheme (or the planar layering when `planar_route` is set)
/// and keeps the cheaper of `R_1 ∪ C_2` and `R_2 ∪ C_1`.
pub fn solve_general_unweighted<T: Scalar>(family: &RectFamily<T>, config: &SolverConfig<T>) -> Result<CoverResult<T>> {
    let fam = normalize_general_position(family)?;
    require_unweighted(&fam)?;
    let cleaned = clean_family(&fam, 2)?;
    let residual = build_graph(&cleaned.residual)?;
    let red = nt_reduce(residual.graph())?;
    let kernel_fam = cleaned.residual.subset(&red.v_half);
    let (r1, r2) = dilworth_partition(&kernel_fam)?;
    let mut diag = Diagnostics {
        forced: cleaned.forced.len(),
        containers: cleaned.containers.len(),
        cliques: cleaned.cliques.len(),
        kernel_size: red.kernel.len(),
        split: Some((r1.len(), r2.len())),
        baker: Vec::new(),
    };
    let solve_class = |r: &RectFamily<T>| -> Result<(Cover, Diagnostics<T>)> {
        if config.planar_route {
            let g = build_graph(r)?;
            let (c, run) = planar_baker(g.graph(), config.params.planar_k(), config.width_ceiling)?;
            Ok((
                c,
                Diagnostics {
                    baker: vec![run],
                    ..Diagnostics::default()
                },
            ))
        } else {
            eptas_core(r, config)
        }
    };
    let ((c1, d1), (c2, d2)) = (solve_class(&r1)?, solve_class(&r2)?);
    diag.absorb(d1);
    diag.absorb(d2);
    let kernel_cover = best_split(&red.kernel, &r1, &c1, &r2, &c2);
    let mut cover = nt_lift(&red, &kernel_cover)?;
    cover.extend(cleaned.forced.iter().copied());
    let ratio = T::from_usize_exact(3).half() + config.params.epsilon;
    finish(&fam, cover, Algorithm::General, ratio, diag)
}

/// `(1.5 + ε)`-approximate minimum-weight vertex cover of an arbitrary
/// weighted family.
///
/// Local-ratio triangle elimination replaces cleaning; each non-crossing
/// class of the kernel is triangle-free and hence planar, and is solved
/// with the planar layering using `k = ⌈2/ε⌉`.
pub fn solve_general_weighted<T: Scalar>(family: &RectFamily<T>, config: &SolverConfig<T>) -> Result<CoverResult<T>> {
    let fam = normalize_general_position(family)?;
    let g = build_graph(&fam)?;
    let lr = local_ratio_triangle_free(g.graph());
    let red = nt_reduce(&lr.residual)?;
    let weights: BTreeMap<RectId, T> = red.kernel.ids().iter().map(|&id| (id, red.kernel.weight_of(id).unwrap())).collect();
    let kernel_fam = fam.reweighted_subset(&weights);
    let (r1, r2) = dilworth_partition(&kernel_fam)?;
    let k = config.params.planar_k();
    let (c1, run1) = planar_baker(build_graph(&r1)?.graph(), k, config.width_ceiling)?;
    let (c2, run2) = planar_baker(build_graph(&r2)?.graph(), k, config.width_ceiling)?;
    let kernel_cover = best_split(&red.kernel, &r1, &c1, &r2, &c2);
    let mut cover = nt_lift(&red, &kernel_cover)?;
    cover.extend(lr.forced.iter().copied());
    let diag = Diagnostics {
        forced: lr.forced.len(),
        containers: 0,
        cliques: lr.rounds.len(),
        kernel_size: red.kernel.len(),
        split: Some((r1.len(), r2.len())),
        baker: vec![run1, run2],
    };
    let ratio = T::from_usize_exact(3).half() + config.params.epsilon;
    finish(&fam, cover, Algorithm::GeneralWeighted, ratio, diag)
}

/// Exact solver on the family's intersection graph.
pub fn exact_cover<T: Scalar>(family: &RectFamily<T>, config: &SolverConfig<T>) -> Result<CoverResult<T>> {
    let fam = normalize_general_position(family)?;
    let g = build_graph(&fam)?;
    let (cover, _) = exact_vc(g.graph(), config.exact_limit)?;
    finish(&fam, cover, Algorithm::Exact, T::one(), Diagnostics::default())
}

struct BranchAndBound<'a, T> {
    g: &'a WeightedGraph<T>,
    adj: Vec<u64>,
    best: u64,
    best_weight: T,
}

impl<T: Scalar> BranchAndBound<'_, T> {
    fn weight(&self, mask: u64) -> T {
        (0..self.g.len())
            .filter(|&v| mask >> v & 1 == 1)
            .fold(T::zero(), |acc, v| acc + self.g.weight(v))
    }

    fn search(&mut self, mut alive: u64, taken: u64, w: T) -> Result<()> {
        for v in 0..self.g.len() {
            if alive >> v & 1 == 1 && self.adj[v] & alive == 0 {
                alive &= !(1 << v);
            }
        }
        if alive == 0 {
            if w < self.best_weight {
                self.best_weight = w;
                self.best = taken;
            }
            return Ok(());
        }
        let idx: Vec<usize> = (0..self.g.len()).filter(|&v| alive >> v & 1 == 1).collect();
        let sub = self.g.induced_by_index(&idx);
        let red = nt_reduce(&sub)?;
        if w + red.lp_value >= self.best_weight {
            return Ok(());
        }
        // some optimum contains every x = 1 vertex and no x = 0 vertex
        if !red.v_one.is_empty() || !red.v_zero.is_empty() {
            let bit = |id: &RectId| 1u64 << self.g.index_of(*id).unwrap();
            let ones = red.v_one.iter().fold(0, |m, id| m | bit(id));
            let zeros = red.v_zero.iter().fold(0, |m, id| m | bit(id));
            return self.search(alive & !ones & !zeros, taken | ones, w + self.weight(ones));
        }
        let v = idx
            .iter()
            .copied()
            .max_by_key(|&v| ((self.adj[v] & alive).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        let bit = 1u64 << v;
        self.search(alive & !bit, taken | bit, w + self.g.weight(v))?;
        let nb = self.adj[v] & alive;
        self.search(alive & !bit & !nb, taken | nb, w + self.weight(nb))
    }
}

/// Exact minimum-weight vertex cover by branch and bound: branch on a
/// maximum-degree vertex (take it, or take all its neighbours), fix the
/// integral part of the LP optimum at every node and prune on the LP bound.
pub fn exact_vc<T: Scalar>(g: &WeightedGraph<T>, limit: usize) -> Result<(Cover, T)> {
    let n = g.len();
    if n > limit.min(64) {
        return Err(Error::TooLarge { n, limit: limit.min(64) });
    }
    if let Some(v) = (0..n).find(|&v| !(g.weight(v) >= T::zero())) {
        return Err(Error::NegativeWeight(g.id(v)));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.structure().neighbors(v).fold(0u64, |m, u| m | 1 << u))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut bb = BranchAndBound {
        g,
        adj,
        best: all,
        best_weight: g.total_weight(),
    };
    bb.search(all, 0, T::zero())?;
    let cover: Cover = (0..n).filter(|&v| bb.best >> v & 1 == 1).map(|v| g.id(v)).collect();
    let cover: Cover = if bb.best == all { g.non_isolated() } else { cover };
    let w = g.cover_weight(&cover);
    Ok((cover, w))
}
