//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rectcover::arrangement::build_arrangement;
use rectcover::clean::{clean_family, dilworth_partition};
use rectcover::decompose::{heuristic_tree_decomposition, transfer_td, validate_td, vc_dp};
use rectcover::generate::{generate, GeneratorKind, GeneratorParams};
use rectcover::geometry::{classify_pair, IntersectionKind};
use rectcover::graphs::build_graph;
use rectcover::kernelize::{nt_lift, nt_reduce};
use rectcover::solvers::{
    eptas_noncrossing, exact_cover, exact_vc, solve_general_unweighted, solve_general_weighted, BakerRun,
};
use rectcover::{Rational, Rect, RectFamily, RectId, SolverConfig};

use common::{brute_cover, brute_half_lp, random_graph, uncovered_pair, weight_of};

const EPSILON: (i64, i64) = (1, 4);
const EPTAS_INSTANCES: u64 = 200;
const EPTAS_MAX_N: usize = 18;
const GENERAL_INSTANCES: u64 = 200;
const GENERAL_MAX_N: usize = 16;
const WEIGHTED_INSTANCES: u64 = 200;
const WEIGHTED_MAX_N: usize = 14;
const NT_GRAPHS: u64 = 300;
const NT_MAX_N: usize = 14;
const ARRANGEMENT_FAMILIES: u64 = 200;
const TRANSFER_CASES: u64 = 100;
const DP_GRAPHS: u64 = 200;
const DP_MAX_N: usize = 16;
const DILWORTH_FAMILIES: u64 = 100;
const PLANAR_FAMILIES: u64 = 100;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn eps() -> Rational {
    rat(EPSILON.0, EPSILON.1)
}

fn config() -> SolverConfig<Rational> {
    SolverConfig::new(eps()).unwrap()
}

/// Side bounds rotate with the seed so sparse and dense instances mix.
fn gen(kind: GeneratorKind, n: usize, seed: u64, weighted: bool) -> RectFamily<Rational> {
    let p = GeneratorParams {
        weighted,
        max_side: [0.2, 0.35, 0.6][(seed % 3) as usize],
        ..GeneratorParams::default()
    };
    generate(kind, n, seed, &p).unwrap()
}

/// Sizes cycle through `lo..=hi` with the seed.
fn size(seed: u64, lo: usize, hi: usize) -> usize {
    lo + (seed as usize) % (hi - lo + 1)
}

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Baker runs gathered from the EPTAS criterion, with the family they came
/// from, for the accounting criterion.
type Runs = Vec<(RectFamily<Rational>, BakerRun<Rational>)>;

fn criterion_1(runs: &mut Runs) -> Outcome {
    let mut out = Outcome::new();
    let bound = rat(5, 4);
    let mut worst = rat(0, 1);
    for seed in 0..EPTAS_INSTANCES {
        let n = size(seed, 2, EPTAS_MAX_N);
        let fam = gen(GeneratorKind::NonCrossing, n, 10_000 + seed, false);
        let res = eptas_noncrossing(&fam, &config()).unwrap();
        let opt = exact_cover(&fam, &config()).unwrap().weight;
        let size = Rational::from_integer(res.cover.len() as i64);
        let limit = (bound * opt).floor();
        out.check(uncovered_pair(&fam, &res.cover).is_none(), || format!("seed {seed}: not a cover"));
        out.check(size <= limit, || format!("seed {seed}: size {size} > floor(1.25 * {opt})"));
        if opt > rat(0, 1) && size / opt > worst {
            worst = size / opt;
        }
        for run in &res.diagnostics.baker {
            runs.push((fam.clone(), run.clone()));
        }
    }
    out.summary = format!("{EPTAS_INSTANCES} instances, worst ratio {worst}");
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let mut worst = rat(0, 1);
    for seed in 0..GENERAL_INSTANCES {
        let n = size(seed, 2, GENERAL_MAX_N);
        let fam = gen(GeneratorKind::Uniform, n, 20_000 + seed, false);
        let res = solve_general_unweighted(&fam, &config()).unwrap();
        let opt = exact_cover(&fam, &config()).unwrap().weight;
        out.check(uncovered_pair(&fam, &res.cover).is_none(), || format!("seed {seed}: not a cover"));
        out.check(res.weight <= rat(7, 4) * opt, || format!("seed {seed}: {} > 1.75 * {opt}", res.weight));
        if opt > rat(0, 1) && res.weight / opt > worst {
            worst = res.weight / opt;
        }
    }
    out.summary = format!("{GENERAL_INSTANCES} instances, worst ratio {worst}");
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let mut worst = rat(0, 1);
    for seed in 0..WEIGHTED_INSTANCES {
        let n = size(seed, 2, WEIGHTED_MAX_N);
        let fam = gen(GeneratorKind::Uniform, n, 30_000 + seed, true);
        let res = solve_general_weighted(&fam, &config()).unwrap();
        let opt = exact_cover(&fam, &config()).unwrap().weight;
        out.check(uncovered_pair(&fam, &res.cover).is_none(), || format!("seed {seed}: not a cover"));
        out.check(weight_of(&fam, &res.cover) == res.weight, || format!("seed {seed}: weight mismatch"));
        out.check(res.weight <= rat(7, 4) * opt, || format!("seed {seed}: {} > 1.75 * {opt}", res.weight));
        if opt > rat(0, 1) && res.weight / opt > worst {
            worst = res.weight / opt;
        }
    }
    out.summary = format!("{WEIGHTED_INSTANCES} instances, worst ratio {worst}");
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..NT_GRAPHS {
        let n = size(seed, 1, NT_MAX_N);
        let p = [0.15, 0.3, 0.5][(seed % 3) as usize];
        let g = random_graph(40_000 + seed, n, p, seed % 2 == 0);
        let red = nt_reduce(&g).unwrap();
        let lp = brute_half_lp(&g);
        out.check(red.lp_value == lp, || format!("seed {seed}: lp {} != {lp}", red.lp_value));
        let opt = brute_cover(&g);
        let (kernel_cover, kernel_opt) = exact_vc(&red.kernel, 64).unwrap();
        let lifted = nt_lift(&red, &kernel_cover).unwrap();
        out.check(g.check_cover(&lifted).is_ok() && g.cover_weight(&lifted) == opt, || {
            format!("seed {seed}: lifted weight {} != {opt}", g.cover_weight(&lifted))
        });
        let half: Rational = red.v_half.iter().map(|id| g.weight_of(*id).unwrap()).sum();
        out.check(half <= rat(2, 1) * kernel_opt, || format!("seed {seed}: w(V_1/2) = {half} > 2 * {kernel_opt}"));
    }
    out.summary = format!("{NT_GRAPHS} graphs");
    out
}

/// A cleaned non-crossing family: only corner intersections remain.
fn cleaned_family(seed: u64) -> (RectFamily<Rational>, usize) {
    let n = size(seed, 3, 30);
    let q = 2 + (seed % 3) as usize;
    let fam = gen(GeneratorKind::NonCrossing, n, 50_000 + seed, false);
    (clean_family(&fam, q).unwrap().residual, q)
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let mut joints_total = 0;
    for seed in 0..ARRANGEMENT_FAMILIES {
        let (fam, q) = cleaned_family(seed);
        let g = build_graph(&fam).unwrap();
        let a = build_arrangement(&fam).unwrap();
        joints_total += a.joint_count();
        out.check(a.joint_count() == 2 * g.edge_count(), || {
            format!("seed {seed}: {} joints vs {} edges", a.joint_count(), g.edge_count())
        });
        out.check((0..a.joint_count()).all(|j| a.degree(j) == 4), || format!("seed {seed}: not 4-regular"));
        out.check(a.joint_count() <= 4 * q * fam.len(), || format!("seed {seed}: too many joints"));
        out.check(a.proper_crossings() == 0, || format!("seed {seed}: {} crossings", a.proper_crossings()));
    }
    out.summary = format!("{ARRANGEMENT_FAMILIES} families, {joints_total} joints");
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let mut cases = 0;
    let mut seed = 0;
    while cases < TRANSFER_CASES {
        let (fam, _) = cleaned_family(1_000 + seed);
        seed += 1;
        let a = build_arrangement(&fam).unwrap();
        if a.joint_count() == 0 {
            continue;
        }
        cases += 1;
        let td = heuristic_tree_decomposition(&a.simple_graph());
        let rects = a.rect_ids();
        let t = transfer_td(&td, &a, &rects).unwrap();
        let h = build_graph(&fam.subset(&rects)).unwrap();
        let valid = h
            .td_to_indices(&t)
            .map(|ti| validate_td(h.structure(), &ti).is_ok())
            .unwrap_or(false);
        out.check(valid, || format!("case {cases}: transferred decomposition invalid"));
        out.check(t.width() <= 2 * td.width() + 1, || {
            format!("case {cases}: width {} > 2 * {} + 1", t.width(), td.width())
        });
    }
    out.summary = format!("{TRANSFER_CASES} cases");
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..DP_GRAPHS {
        let n = size(seed, 0, DP_MAX_N);
        let g = random_graph(70_000 + seed, n, [0.2, 0.35][(seed % 2) as usize], true);
        let td = heuristic_tree_decomposition(g.structure());
        let (cover, w) = vc_dp(&g, &td, 25).unwrap();
        let exact = exact_vc(&g, 64).unwrap().1;
        out.check(g.check_cover(&cover).is_ok(), || format!("seed {seed}: DP cover invalid"));
        out.check(w == exact && g.cover_weight(&cover) == w, || format!("seed {seed}: {w} != {exact}"));
    }
    out.summary = format!("{DP_GRAPHS} graphs");
    out
}

fn crossing_pairs(fam: &RectFamily<Rational>) -> usize {
    let rs = fam.rects();
    let mut count = 0;
    for (i, a) in rs.iter().enumerate() {
        for b in &rs[i + 1..] {
            if classify_pair(a, b) == IntersectionKind::Crossing {
                count += 1;
            }
        }
    }
    count
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let mut crossing_input = 0;
    for seed in 0..DILWORTH_FAMILIES {
        let n = size(seed, 2, 24);
        let fam = gen(GeneratorKind::TriangleFree, n, 80_000 + seed, false);
        crossing_input += crossing_pairs(&fam);
        let (a, b) = dilworth_partition(&fam).unwrap();
        out.check(crossing_pairs(&a) == 0 && crossing_pairs(&b) == 0, || format!("seed {seed}: a class crosses"));
        out.check(a.len() + b.len() == fam.len(), || format!("seed {seed}: classes do not partition"));

        // X nested upward while Y nests downward: pairwise crossing
        let far = |v: i64| Rational::from_integer(1_000_000 + v);
        let base = 1_000_000 + seed * 10;
        let triple = [(base, 4, 5, 0, 10), (base + 1, 3, 6, 1, 9), (base + 2, 2, 7, 2, 8)]
            .map(|(id, x0, x1, y0, y1)| Rect::unit(id, far(x0), far(x1), far(y0), far(y1)).unwrap());
        let mut rects = fam.rects().to_vec();
        rects.extend(triple);
        let injected = RectFamily::new(rects).unwrap();
        let rejected = match dilworth_partition(&injected) {
            Err(rectcover::Error::CrossingChain(p, r, s)) => {
                let w: BTreeSet<RectId> = [p, r, s].into();
                w == triple.iter().map(|t| t.id).collect()
            }
            _ => false,
        };
        out.check(rejected, || format!("seed {seed}: injected triple not rejected with its witness"));
    }
    out.summary = format!("{DILWORTH_FAMILIES} families ({crossing_input} crossing pairs split)");
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let mut tight = 0;
    for seed in 0..PLANAR_FAMILIES {
        let n = size(seed, 3, 40);
        let p = GeneratorParams {
            forbid_crossing: true,
            max_side: 0.45,
            ..GeneratorParams::default()
        };
        let fam: RectFamily<Rational> = generate(GeneratorKind::TriangleFree, n, 90_000 + seed, &p).unwrap();
        let e = build_graph(&fam).unwrap().edge_count();
        out.check(e + 4 <= 2 * n, || format!("seed {seed}: {e} edges on {n} rectangles"));
        if e + 4 == 2 * n {
            tight += 1;
        }
    }
    out.summary = format!("{PLANAR_FAMILIES} families, {tight} at the bound");
    out
}

fn criterion_10(runs: &Runs) -> Outcome {
    let mut out = Outcome::new();
    let mut with_opt = 0;
    for (i, (fam, run)) in runs.iter().enumerate() {
        out.check(run.u_total() <= run.c1 * run.rects.len(), || {
            format!("run {i}: sum |U_i| = {} > {} * {}", run.u_total(), run.c1, run.rects.len())
        });
        let mut seen = BTreeSet::new();
        let disjoint = run.classes.iter().flatten().all(|&j| seen.insert(j));
        out.check(disjoint && seen == (0..run.vertices).collect(), || format!("run {i}: classes do not partition"));
        let kernel = fam.subset(&run.rects);
        let opt = exact_cover(&kernel, &config()).unwrap().weight;
        with_opt += 1;
        let factor = rat(1, 1) + rat(2 * run.c1 as i64, run.k as i64);
        out.check(run.best() <= factor * opt, || format!("run {i}: min C_i = {} > {factor} * {opt}", run.best()));
    }
    out.summary = format!("{} layered runs, {with_opt} with known optimum", runs.len());
    out
}

type Criterion = Box<dyn FnOnce(&mut Runs) -> Outcome>;

fn main() {
    let mut runs = Runs::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 eptas ratio", Box::new(criterion_1)),
        ("2 general unweighted ratio", Box::new(|_| criterion_2())),
        ("3 general weighted ratio", Box::new(|_| criterion_3())),
        ("4 nt reduction", Box::new(|_| criterion_4())),
        ("5 arrangement structure", Box::new(|_| criterion_5())),
        ("6 decomposition transfer", Box::new(|_| criterion_6())),
        ("7 dp exactness", Box::new(|_| criterion_7())),
        ("8 non-crossing split", Box::new(|_| criterion_8())),
        ("9 planar edge bound", Box::new(|_| criterion_9())),
        ("10 layering accounting", Box::new(|r: &mut Runs| criterion_10(r))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run(&mut runs);
        let secs = start.elapsed().as_secs_f64();
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {name}: {verdict} ({}; {secs:.1}s)", outcome.summary);
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
