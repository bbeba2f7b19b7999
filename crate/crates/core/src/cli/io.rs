//! Instance and cover files, and exact rational text.

use std::collections::BTreeSet;
use std::path::Path;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::geometry::{Interval, Rect, RectFamily, RectId};
use crate::solvers::CoverResult;
use crate::Rational;

/// Parses `"3"`, `"-0.25"` or `"7/4"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if t.contains('/') {
        return t.parse::<Rational>().map_err(|_| bad());
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
        || frac.len() > 18
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let denom = 10i64.pow(frac.len() as u32);
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Exact decimal when the denominator divides a power of ten, `p/q`
/// otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut d = *r.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    let places = twos.max(fives);
    if d != 1 || places > 30 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let scaled = i128::from(*r.numer()) * (10i128.pow(places) / i128::from(*r.denom()));
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.unsigned_abs();
    let unit = 10u128.pow(places);
    format!("{sign}{}.{:0width$}", abs / unit, abs % unit, width = places as usize)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectEntry {
    pub id: u64,
    pub x: [String; 2],
    pub y: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    pub weighted: bool,
    pub rectangles: Vec<RectEntry>,
}

impl InstanceFile {
    pub fn from_family(name: &str, family: &RectFamily<Rational>, weighted: bool) -> Self {
        let rectangles = family
            .rects()
            .iter()
            .map(|r| RectEntry {
                id: r.id.0,
                x: [format_rational(&r.x.lo), format_rational(&r.x.hi)],
                y: [format_rational(&r.y.lo), format_rational(&r.y.hi)],
                weight: weighted.then(|| format_rational(&r.weight)),
            })
            .collect();
        Self {
            name: name.to_string(),
            weighted,
            rectangles,
        }
    }

    pub fn to_family(&self) -> Result<RectFamily<Rational>, CliError> {
        let mut rects = Vec::with_capacity(self.rectangles.len());
        for e in &self.rectangles {
            let num = |s: &String| parse_rational(s).map_err(|m| CliError::Input(format!("rectangle {}: {m}", e.id)));
            let weight = match (&e.weight, self.weighted) {
                (Some(w), true) => num(w)?,
                (None, false) => Rational::from_integer(1),
                (Some(_), false) => {
                    return Err(CliError::Input(format!("rectangle {} has a weight in an unweighted instance", e.id)))
                }
                (None, true) => return Err(CliError::Input(format!("rectangle {} is missing its weight", e.id))),
            };
            rects.push(Rect::new(
                RectId(e.id),
                Interval::new(num(&e.x[0])?, num(&e.x[1])?),
                Interval::new(num(&e.y[0])?, num(&e.y[1])?),
                weight,
            )?);
        }
        Ok(RectFamily::new(rects)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes") + "\n"
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = read_text(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverFile {
    pub cover: Vec<u64>,
    pub weight: String,
    #[serde(default)]
    pub certified_ratio: Option<String>,
    #[serde(default)]
    pub lower_bound: Option<String>,
    #[serde(default)]
    pub algorithm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<serde_json::Value>,
}

impl CoverFile {
    pub fn from_result(res: &CoverResult<Rational>) -> Self {
        Self {
            cover: res.cover.iter().map(|id| id.0).collect(),
            weight: format_rational(&res.weight),
            certified_ratio: Some(format_rational(&res.certified_ratio)),
            lower_bound: Some(format_rational(&res.lower_bound)),
            algorithm: Some(res.algorithm.name().to_string()),
            diagnostics: Some(res.diagnostics.to_json()),
        }
    }

    pub fn ids(&self) -> BTreeSet<RectId> {
        self.cover.iter().map(|&i| RectId(i)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cover serializes") + "\n"
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = read_text(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Outcome of checking a cover against an instance from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid { weight: Rational },
    Uncovered(RectId, RectId),
    WeightMismatch { declared: Rational, actual: Rational },
}

/// Checks every intersecting pair of closed boxes directly and recomputes
/// the weight, without going through the solver's graph code.
pub fn verify_cover(family: &RectFamily<Rational>, cover: &CoverFile) -> Result<Verdict, CliError> {
    let ids = cover.ids();
    if ids.len() != cover.cover.len() {
        return Err(CliError::Input("cover lists an id twice".into()));
    }
    if let Some(id) = ids.iter().find(|id| family.get(**id).is_none()) {
        return Err(CliError::Input(format!("cover mentions unknown rectangle {id}")));
    }
    let rects = family.rects();
    for (i, a) in rects.iter().enumerate() {
        for b in &rects[i + 1..] {
            let meet = a.x.lo <= b.x.hi && b.x.lo <= a.x.hi && a.y.lo <= b.y.hi && b.y.lo <= a.y.hi;
            if meet && !ids.contains(&a.id) && !ids.contains(&b.id) {
                let (u, v) = if a.id < b.id { (a.id, b.id) } else { (b.id, a.id) };
                return Ok(Verdict::Uncovered(u, v));
            }
        }
    }
    let actual = rects
        .iter()
        .filter(|r| ids.contains(&r.id))
        .fold(Rational::zero(), |acc, r| acc + r.weight);
    let declared = parse_rational(&cover.weight).map_err(CliError::Input)?;
    if declared != actual || declared.is_negative() {
        return Ok(Verdict::WeightMismatch { declared, actual });
    }
    Ok(Verdict::Valid { weight: actual })
}
