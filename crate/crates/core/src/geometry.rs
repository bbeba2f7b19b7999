//! Axis-parallel rectangles, general-position normalization and the
//! pairwise intersection taxonomy (disjoint, containment, corner, crossing).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Stable identifier of a rectangle (and of the matching graph vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RectId(pub u64);

impl fmt::Display for RectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

/// How one interval sits relative to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AxisRelation {
    Disjoint,
    /// `self` lies strictly inside `other`.
    Inside,
    /// `self` strictly encloses `other`.
    Surrounds,
    Overlap,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn strictly_contains(&self, other: &Self) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn contains_value(&self, v: T) -> bool {
        self.lo <= v && v <= self.hi
    }

    fn contains_open(&self, v: T) -> bool {
        self.lo < v && v < self.hi
    }

    /// Whether `v + sign·δ` lies in the interval for every small enough δ > 0.
    fn contains_perturbed(&self, v: T, sign: Ordering) -> bool {
        if self.contains_open(v) {
            return true;
        }
        (v == self.lo && sign == Ordering::Greater) || (v == self.hi && sign == Ordering::Less)
    }

    pub(crate) fn relation(&self, other: &Self) -> AxisRelation {
        if !self.intersects(other) {
            AxisRelation::Disjoint
        } else if other.strictly_contains(self) {
            AxisRelation::Inside
        } else if self.strictly_contains(other) {
            AxisRelation::Surrounds
        } else {
            AxisRelation::Overlap
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    /// Lexicographic `(x, y)` order.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

/// An axis-parallel, closed, weighted rectangle `R = (X, Y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<T> {
    pub id: RectId,
    pub x: Interval<T>,
    pub y: Interval<T>,
    pub weight: T,
}

impl<T: Scalar> Rect<T> {
    pub fn new(id: RectId, x: Interval<T>, y: Interval<T>, weight: T) -> Result<Self> {
        let rect = Self { id, x, y, weight };
        rect.validate()?;
        Ok(rect)
    }

    /// Unit-weight rectangle `[x_lo, x_hi] × [y_lo, y_hi]`.
    pub fn unit(id: u64, x_lo: T, x_hi: T, y_lo: T, y_hi: T) -> Result<Self> {
        Self::new(
            RectId(id),
            Interval::new(x_lo, x_hi),
            Interval::new(y_lo, y_hi),
            T::one(),
        )
    }

    fn validate(&self) -> Result<()> {
        if !(self.x.lo < self.x.hi && self.y.lo < self.y.hi) {
            return Err(Error::DegenerateRect(self.id));
        }
        if !(self.weight >= T::zero()) {
            return Err(Error::NegativeWeight(self.id));
        }
        Ok(())
    }

    /// Corners in the order bottom-left, bottom-right, top-right, top-left.
    pub fn corners(&self) -> [Point<T>; 4] {
        [
            Point::new(self.x.lo, self.y.lo),
            Point::new(self.x.hi, self.y.lo),
            Point::new(self.x.hi, self.y.hi),
            Point::new(self.x.lo, self.y.hi),
        ]
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.x.intersects(&other.x) && self.y.intersects(&other.y)
    }

    pub fn contains_point(&self, p: &Point<T>) -> bool {
        self.x.contains_value(p.x) && self.y.contains_value(p.y)
    }

    pub fn contains_point_strictly(&self, p: &Point<T>) -> bool {
        self.x.contains_open(p.x) && self.y.contains_open(p.y)
    }

    /// Whether `p + (sx·δ, sy·δ)` lies in the rectangle for small δ > 0.
    pub fn contains_perturbed(&self, p: &Point<T>, sx: Ordering, sy: Ordering) -> bool {
        self.x.contains_perturbed(p.x, sx) && self.y.contains_perturbed(p.y, sy)
    }

    /// Strict containment of `other` on both axes.
    pub fn contains_rect(&self, other: &Self) -> bool {
        self.x.strictly_contains(&other.x) && self.y.strictly_contains(&other.y)
    }

    /// Whether `p` lies on the boundary curve.
    pub fn on_boundary(&self, p: &Point<T>) -> bool {
        self.contains_point(p)
            && (p.x == self.x.lo || p.x == self.x.hi || p.y == self.y.lo || p.y == self.y.hi)
    }
}

/// The input rectangle set.
#[derive(Debug, Clone, PartialEq)]
pub struct RectFamily<T> {
    rects: Vec<Rect<T>>,
    normalized: bool,
}

impl<T: Scalar> RectFamily<T> {
    /// Validates ids and rectangles. The family is flagged normalized when
    /// its endpoints are already in general position.
    pub fn new(rects: Vec<Rect<T>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &rects {
            r.validate()?;
            if !seen.insert(r.id) {
                return Err(Error::DuplicateId(r.id));
            }
        }
        let normalized = in_general_position(&rects);
        Ok(Self { rects, normalized })
    }

    pub fn empty() -> Self {
        Self {
            rects: Vec::new(),
            normalized: true,
        }
    }

    pub fn rects(&self) -> &[Rect<T>] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn ids(&self) -> BTreeSet<RectId> {
        self.rects.iter().map(|r| r.id).collect()
    }

    pub fn get(&self, id: RectId) -> Option<&Rect<T>> {
        self.rects.iter().find(|r| r.id == id)
    }

    pub fn is_unweighted(&self) -> bool {
        self.rects.iter().all(|r| r.weight == T::one())
    }

    pub fn total_weight(&self) -> T {
        crate::scalar::sum(self.rects.iter().map(|r| r.weight))
    }

    /// Sub-family on `keep`, preserving order. Unknown ids are ignored.
    pub fn subset(&self, keep: &BTreeSet<RectId>) -> Self {
        Self {
            rects: self
                .rects
                .iter()
                .filter(|r| keep.contains(&r.id))
                .copied()
                .collect(),
            normalized: self.normalized,
        }
    }

    /// Sub-family on `keep`, reweighted.
    pub fn reweighted_subset(&self, weights: &BTreeMap<RectId, T>) -> Self {
        Self {
            rects: self
                .rects
                .iter()
                .filter_map(|r| {
                    weights.get(&r.id).map(|&w| Rect { weight: w, ..*r })
                })
                .collect(),
            normalized: self.normalized,
        }
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.normalized {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }

    /// Returns the first crossing pair, if any.
    pub fn find_crossing(&self) -> Option<(RectId, RectId)> {
        for (i, a) in self.rects.iter().enumerate() {
            for b in &self.rects[i + 1..] {
                if classify_pair(a, b) == IntersectionKind::Crossing {
                    return Some((a.id, b.id));
                }
            }
        }
        None
    }
}

fn in_general_position<T: Scalar>(rects: &[Rect<T>]) -> bool {
    let distinct = |mut vals: Vec<T>| {
        vals.sort_by(|a, b| a.total_cmp(b));
        vals.windows(2).all(|w| w[0] != w[1])
    };
    distinct(rects.iter().flat_map(|r| [r.x.lo, r.x.hi]).collect())
        && distinct(rects.iter().flat_map(|r| [r.y.lo, r.y.hi]).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Lo,
    Hi,
}

/// Assigns each endpoint on one axis its rank under
/// `(value, side, rectangle id)`. Returns `(lo_rank, hi_rank)` per rectangle.
fn axis_ranks<T: Scalar>(rects: &[Rect<T>], axis: impl Fn(&Rect<T>) -> Interval<T>) -> Vec<(usize, usize)> {
    let mut endpoints: Vec<(T, RectId, Side, usize)> = Vec::with_capacity(2 * rects.len());
    for (i, r) in rects.iter().enumerate() {
        let iv = axis(r);
        endpoints.push((iv.lo, r.id, Side::Lo, i));
        endpoints.push((iv.hi, r.id, Side::Hi, i));
    }
    endpoints.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.2.cmp(&b.2))
            .then(a.1.cmp(&b.1))
    });
    let mut ranks = vec![(0, 0); rects.len()];
    for (rank, &(_, _, side, i)) in endpoints.iter().enumerate() {
        match side {
            Side::Lo => ranks[i].0 = rank,
            Side::Hi => ranks[i].1 = rank,
        }
    }
    ranks
}

/// Symbolic perturbation into general position.
///
/// Endpoints are ranked per axis by `(value, side, id)` and replaced by
/// `2·rank` on the x axis and `2·rank + 1` on the y axis, so all `4n`
/// coordinates are distinct integers. Strict order between distinct values
/// is preserved. At equal values every lower endpoint precedes every upper
/// one, so touching rectangles still overlap and the intersection graph is
/// unchanged.
pub fn normalize_general_position<T: Scalar>(family: &RectFamily<T>) -> Result<RectFamily<T>> {
    for r in &family.rects {
        r.validate()?;
    }
    let xs = axis_ranks(&family.rects, |r| r.x);
    let ys = axis_ranks(&family.rects, |r| r.y);
    let even = |r: usize| T::from_usize_exact(2 * r);
    let odd = |r: usize| T::from_usize_exact(2 * r + 1);
    let rects = family
        .rects
        .iter()
        .zip(xs.iter().zip(&ys))
        .map(|(r, (&(xl, xh), &(yl, yh)))| Rect {
            id: r.id,
            x: Interval::new(even(xl), even(xh)),
            y: Interval::new(odd(yl), odd(yh)),
            weight: r.weight,
        })
        .collect();
    Ok(RectFamily {
        rects,
        normalized: true,
    })
}

/// Pairwise intersection type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionKind {
    Disjoint,
    Containment { container: RectId, contained: RectId },
    /// One rectangle holds one or two corners of the other. The count is the
    /// larger of the two "corners of one strictly inside the other" tallies.
    Corner(u8),
    Crossing,
}

impl IntersectionKind {
    pub fn is_intersecting(&self) -> bool {
        !matches!(self, IntersectionKind::Disjoint)
    }

    /// Kind with the containment orientation dropped.
    pub fn same_kind(&self, other: &Self) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

pub fn classify_pair<T: Scalar>(a: &Rect<T>, b: &Rect<T>) -> IntersectionKind {
    use AxisRelation::*;
    match (a.x.relation(&b.x), a.y.relation(&b.y)) {
        (Disjoint, _) | (_, Disjoint) => IntersectionKind::Disjoint,
        (Surrounds, Surrounds) => IntersectionKind::Containment {
            container: a.id,
            contained: b.id,
        },
        (Inside, Inside) => IntersectionKind::Containment {
            container: b.id,
            contained: a.id,
        },
        (Inside, Surrounds) | (Surrounds, Inside) => IntersectionKind::Crossing,
        _ => {
            let inside = |outer: &Rect<T>, inner: &Rect<T>| {
                inner
                    .corners()
                    .iter()
                    .filter(|c| outer.contains_point_strictly(c))
                    .count()
            };
            let count = inside(a, b).max(inside(b, a)).clamp(1, 2);
            IntersectionKind::Corner(count as u8)
        }
    }
}

/// A point where two rectangle boundaries cross.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Joint<T> {
    pub point: Point<T>,
    pub rects: (RectId, RectId),
}

/// Crossings of the boundary curves of `a` and `b`: 0 points for disjoint
/// or nested pairs, 2 for corner pairs, 4 for crossing pairs.
pub fn boundary_intersection_points<T: Scalar>(a: &Rect<T>, b: &Rect<T>) -> Vec<Joint<T>> {
    let mut out = Vec::new();
    let mut scan = |vert: &Rect<T>, horiz: &Rect<T>| {
        for x in [vert.x.lo, vert.x.hi] {
            for y in [horiz.y.lo, horiz.y.hi] {
                if horiz.x.contains_open(x) && vert.y.contains_open(y) {
                    out.push(Joint {
                        point: Point::new(x, y),
                        rects: (a.id, b.id),
                    });
                }
            }
        }
    };
    scan(a, b);
    scan(b, a);
    out
}
