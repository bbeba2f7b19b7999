//! Seeded random instance generators.
//!
//! Boxes are drawn on an integer grid over the unit square. A sample that
//! repeats an existing coordinate on its axis is redrawn, so the drawn
//! family is already in general position and normalizing it changes no
//! intersection kind.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{classify_pair, normalize_general_position, Interval, IntersectionKind, Rect, RectFamily, RectId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GeneratorKind {
    /// Independent boxes.
    Uniform,
    /// Resamples any box that would cross an earlier one.
    NonCrossing,
    /// Resamples any box that would close a pairwise intersecting triple.
    TriangleFree,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Uniform => "uniform",
            GeneratorKind::NonCrossing => "non_crossing",
            GeneratorKind::TriangleFree => "triangle_free",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "uniform" => Ok(GeneratorKind::Uniform),
            "non_crossing" => Ok(GeneratorKind::NonCrossing),
            "triangle_free" => Ok(GeneratorKind::TriangleFree),
            other => Err(Error::InvalidParameter(format!("unknown generator kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    /// Integer weights uniform in `1..=10` instead of unit weights.
    pub weighted: bool,
    /// Largest side length as a fraction of the unit square.
    pub max_side: f64,
    /// Grid resolution per axis.
    pub grid: i64,
    /// Also forbid crossing pairs (on top of the kind's own constraint).
    pub forbid_crossing: bool,
    /// Samples allowed per box before giving up.
    pub budget: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            weighted: false,
            max_side: 0.35,
            grid: 1_000_000,
            forbid_crossing: false,
            budget: 20_000,
        }
    }
}

fn conflicts<T: Scalar>(kind: GeneratorKind, forbid_crossing: bool, placed: &[Rect<T>], r: &Rect<T>) -> bool {
    let crossing = forbid_crossing || kind == GeneratorKind::NonCrossing;
    if crossing && placed.iter().any(|p| classify_pair(p, r) == IntersectionKind::Crossing) {
        return true;
    }
    if kind == GeneratorKind::TriangleFree {
        let hits: Vec<&Rect<T>> = placed.iter().filter(|p| p.intersects(r)).collect();
        for (i, a) in hits.iter().enumerate() {
            if hits[i + 1..].iter().any(|b| a.intersects(b)) {
                return true;
            }
        }
    }
    false
}

/// Draws `n` boxes with ids `0..n`. Identical arguments give identical
/// families; the result is normalized.
pub fn generate<T: Scalar>(kind: GeneratorKind, n: usize, seed: u64, params: &GeneratorParams) -> Result<RectFamily<T>> {
    if !(params.max_side > 0.0 && params.max_side <= 1.0) || params.grid < 4 {
        return Err(Error::InvalidParameter("need 0 < max_side <= 1 and grid >= 4".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = params.grid;
    let max_side = ((params.max_side * g as f64) as i64).clamp(1, g - 1);
    let scalar = |v: i64| T::from_i64(v).expect("grid coordinate fits the scalar");
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    let mut placed: Vec<Rect<T>> = Vec::with_capacity(n);
    for id in 0..n {
        let weight = if params.weighted {
            T::from_usize_exact(rng.gen_range(1..=10))
        } else {
            T::one()
        };
        let mut attempts = 0;
        let rect = loop {
            if attempts == params.budget {
                return Err(Error::RejectionBudget { attempts });
            }
            attempts += 1;
            let (w, h) = (rng.gen_range(1..=max_side), rng.gen_range(1..=max_side));
            let (x0, y0) = (rng.gen_range(0..=g - w), rng.gen_range(0..=g - h));
            let (x1, y1) = (x0 + w, y0 + h);
            if xs.contains(&x0) || xs.contains(&x1) || ys.contains(&y0) || ys.contains(&y1) {
                continue;
            }
            let r = Rect::new(
                RectId(id as u64),
                Interval::new(scalar(x0), scalar(x1)),
                Interval::new(scalar(y0), scalar(y1)),
                weight,
            )?;
            if !conflicts(kind, params.forbid_crossing, &placed, &r) {
                xs.extend([x0, x1]);
                ys.extend([y0, y1]);
                break r;
            }
        };
        placed.push(rect);
    }
    normalize_general_position(&RectFamily::new(placed)?)
}
