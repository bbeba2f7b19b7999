//! Corpus sweeps written as CSV.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::io::{format_rational, rational_to_f64};
use super::CliError;
use crate::geometry::{normalize_general_position, RectFamily};
use crate::graphs::build_graph;
use crate::solvers::{exact_vc, solve, Algorithm, Params, SolverConfig};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub n: usize,
    pub algorithm: String,
    pub epsilon: String,
    pub cover_weight: String,
    pub lower_bound: String,
    pub exact_opt: String,
    pub empirical_ratio: String,
    pub certified_ratio: String,
    pub wall_time_ms: String,
    pub diagnostics: String,
}

pub struct BenchSpec {
    pub algorithms: Vec<Algorithm>,
    pub epsilons: Vec<Rational>,
    /// Solver settings; `params` is rebuilt for each epsilon.
    pub config: SolverConfig<Rational>,
    pub k_override: Option<usize>,
    /// Skip the exact column for instances above this size.
    pub exact_limit: usize,
    /// Leave `wall_time_ms` blank.
    pub omit_timing: bool,
}

fn ratio_text(cover: Rational, opt: Rational) -> String {
    if opt == Rational::from_integer(0) {
        if cover == opt { "1".into() } else { String::new() }
    } else {
        format!("{:.6}", rational_to_f64(&(cover / opt)))
    }
}

fn bench_instance(name: &str, fam: &RectFamily<Rational>, spec: &BenchSpec) -> Result<Vec<ReportRow>, CliError> {
    let opt = if fam.len() <= spec.exact_limit {
        let g = build_graph(&normalize_general_position(fam)?)?;
        Some(exact_vc(g.graph(), spec.exact_limit)?.1)
    } else {
        None
    };
    let mut rows = Vec::new();
    for &algorithm in &spec.algorithms {
        for &eps in &spec.epsilons {
            let mut config = spec.config;
            config.params = Params::new(eps)?;
            if let Some(k) = spec.k_override {
                config.params = config.params.with_k(k)?;
            }
            let start = Instant::now();
            let outcome = solve(fam, algorithm, &config);
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            let mut row = ReportRow {
                instance: name.to_string(),
                n: fam.len(),
                algorithm: algorithm.name().to_string(),
                epsilon: format_rational(&eps),
                cover_weight: String::new(),
                lower_bound: String::new(),
                exact_opt: opt.map(|o| format_rational(&o)).unwrap_or_default(),
                empirical_ratio: String::new(),
                certified_ratio: String::new(),
                wall_time_ms: if spec.omit_timing { String::new() } else { format!("{elapsed:.3}") },
                diagnostics: String::new(),
            };
            match outcome {
                Ok(res) => {
                    row.cover_weight = format_rational(&res.weight);
                    row.lower_bound = format_rational(&res.lower_bound);
                    row.certified_ratio = format_rational(&res.certified_ratio);
                    row.empirical_ratio = opt.map(|o| ratio_text(res.weight, o)).unwrap_or_default();
                    row.diagnostics = res.diagnostics.summary();
                }
                Err(e) => row.diagnostics = format!("error={e}"),
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Runs every instance in parallel and returns the rows in corpus order.
pub fn run_bench(corpus: &[(String, RectFamily<Rational>)], spec: &BenchSpec) -> Result<Vec<ReportRow>, CliError> {
    let per_instance: Vec<Result<Vec<ReportRow>, CliError>> =
        corpus.par_iter().map(|(name, fam)| bench_instance(name, fam, spec)).collect();
    let mut rows = Vec::new();
    for r in per_instance {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn to_csv(rows: &[ReportRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "instance",
            "n",
            "algorithm",
            "epsilon",
            "cover_weight",
            "lower_bound",
            "exact_opt",
            "empirical_ratio",
            "certified_ratio",
            "wall_time_ms",
            "diagnostics",
        ])
        .map_err(|e| CliError::Input(e.to_string()))?;
    }
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
