//! The arrangement graph of a corner-intersecting family: joints (boundary
//! crossings) as vertices, boundary fragments between cyclically
//! consecutive joints as edges.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{boundary_intersection_points, classify_pair, IntersectionKind, Joint, Point, Rect, RectFamily, RectId};
use crate::graphs::SimpleGraph;
use crate::scalar::Scalar;

/// A boundary piece of `rect` running clockwise from joint `u` to joint `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    pub u: usize,
    pub v: usize,
    pub rect: RectId,
}

#[derive(Debug, Clone)]
pub struct ArrangementGraph<T> {
    joints: Vec<Joint<T>>,
    fragments: Vec<Fragment>,
    /// Joints on each rectangle's boundary, in clockwise order from the
    /// top-left corner.
    boundary: BTreeMap<RectId, Vec<usize>>,
    rects: BTreeMap<RectId, Rect<T>>,
}

/// Position along the boundary, clockwise from the top-left corner:
/// `(side, offset)` with sides top, right, bottom, left.
fn boundary_key<T: Scalar>(r: &Rect<T>, p: &Point<T>) -> (u8, T) {
    if p.y == r.y.hi {
        (0, p.x - r.x.lo)
    } else if p.x == r.x.hi {
        (1, r.y.hi - p.y)
    } else if p.y == r.y.lo {
        (2, r.x.hi - p.x)
    } else {
        (3, p.y - r.y.lo)
    }
}

fn cmp_key<T: Scalar>(a: &(u8, T), b: &(u8, T)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.total_cmp(&b.1))
}

impl<T: Scalar> ArrangementGraph<T> {
    pub fn joints(&self) -> &[Joint<T>] {
        &self.joints
    }

    pub fn joint_count(&self) -> usize {
        self.joints.len()
    }

    pub fn fragments(&self) -> &[Fragment] {
        &self.fragments
    }

    /// The two rectangles meeting at `joint`.
    pub fn incidence(&self, joint: usize) -> (RectId, RectId) {
        self.joints[joint].rects
    }

    /// Rectangles taking part in the arrangement (isolated ones excluded).
    pub fn rect_ids(&self) -> BTreeSet<RectId> {
        self.boundary.keys().copied().collect()
    }

    pub fn joints_of(&self, rect: RectId) -> &[usize] {
        self.boundary.get(&rect).map_or(&[], Vec::as_slice)
    }

    /// Multigraph degree.
    pub fn degree(&self, joint: usize) -> usize {
        self.fragments
            .iter()
            .map(|f| (f.u == joint) as usize + (f.v == joint) as usize)
            .sum()
    }

    /// Simple-graph projection (parallel fragments merged).
    pub fn simple_graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.joints.len(), self.fragments.iter().map(|f| (f.u, f.v)))
    }

    /// `R(J)`: rectangles whose boundary carries a joint of `joint_set`.
    pub fn induced_rects<'a>(&self, joint_set: impl IntoIterator<Item = &'a usize>) -> BTreeSet<RectId> {
        let mut out = BTreeSet::new();
        for &j in joint_set {
            let (a, b) = self.joints[j].rects;
            out.insert(a);
            out.insert(b);
        }
        out
    }

    /// Fragment geometry: start joint, the corners passed, end joint.
    pub fn fragment_polyline(&self, f: &Fragment) -> Vec<Point<T>> {
        let r = &self.rects[&f.rect];
        let corners = [
            Point::new(r.x.lo, r.y.hi),
            Point::new(r.x.hi, r.y.hi),
            Point::new(r.x.hi, r.y.lo),
            Point::new(r.x.lo, r.y.lo),
        ];
        let start = self.joints[f.u].point;
        let end = self.joints[f.v].point;
        let (ks, ke) = (boundary_key(r, &start), boundary_key(r, &end));
        let mut pts = vec![start];
        let mut side = ks.0;
        // wrap around once unless `end` is strictly further along the same side
        let same_side_ahead = ks.0 == ke.0 && cmp_key(&ks, &ke) == Ordering::Less;
        if !same_side_ahead {
            loop {
                side = (side + 1) % 4;
                pts.push(corners[side as usize]);
                if side == ke.0 {
                    break;
                }
            }
        }
        pts.push(end);
        pts
    }

    /// Number of pairs of fragments from different rectangles that meet
    /// somewhere other than a common endpoint joint. Zero for a plane
    /// embedding.
    pub fn proper_crossings(&self) -> usize {
        let segs: Vec<Vec<(Point<T>, Point<T>)>> = self
            .fragments
            .iter()
            .map(|f| {
                let pl = self.fragment_polyline(f);
                pl.windows(2).map(|w| (w[0], w[1])).collect()
            })
            .collect();
        let mut count = 0;
        for (i, f) in self.fragments.iter().enumerate() {
            for (j, g) in self.fragments.iter().enumerate().skip(i + 1) {
                if f.rect == g.rect {
                    continue;
                }
                let shared: Vec<Point<T>> = [f.u, f.v]
                    .iter()
                    .filter(|j| **j == g.u || **j == g.v)
                    .map(|&j| self.joints[j].point)
                    .collect();
                let bad = segs[i].iter().any(|a| {
                    segs[j].iter().any(|b| {
                        segment_meet(a, b).is_some_and(|p| !shared.contains(&p))
                    })
                });
                count += bad as usize;
            }
        }
        count
    }

    /// Plane straight-line export for visualization tools.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .joints
            .iter()
            .enumerate()
            .map(|(i, j)| {
                json!({
                    "id": i,
                    "x": j.point.x.to_string(),
                    "y": j.point.y.to_string(),
                    "rects": [j.rects.0, j.rects.1],
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .fragments
            .iter()
            .map(|f| {
                let path: Vec<Value> = self
                    .fragment_polyline(f)
                    .iter()
                    .map(|p| json!([p.x.to_string(), p.y.to_string()]))
                    .collect();
                json!({ "u": f.u, "v": f.v, "rect": f.rect, "path": path })
            })
            .collect();
        json!({ "vertices": vertices, "edges": edges })
    }
}

/// Meeting point of two axis-parallel segments, if any. Collinear overlaps
/// (absent in general position) report the first shared endpoint found.
fn segment_meet<T: Scalar>(a: &(Point<T>, Point<T>), b: &(Point<T>, Point<T>)) -> Option<Point<T>> {
    let within = |v: T, p: T, q: T| {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        lo <= v && v <= hi
    };
    let on = |p: &Point<T>, s: &(Point<T>, Point<T>)| within(p.x, s.0.x, s.1.x) && within(p.y, s.0.y, s.1.y);
    let a_vert = a.0.x == a.1.x;
    let b_vert = b.0.x == b.1.x;
    if a_vert != b_vert {
        let (v, h) = if a_vert { (a, b) } else { (b, a) };
        let p = Point::new(v.0.x, h.0.y);
        return (on(&p, v) && on(&p, h)).then_some(p);
    }
    [a.0, a.1, b.0, b.1]
        .into_iter()
        .find(|p| on(p, a) && on(p, b))
}

/// Builds `A_R` for a family with corner intersections only.
///
/// Rectangles without any intersection are left out. A boundary carrying two
/// joints contributes a double edge.
pub fn build_arrangement<T: Scalar>(family: &RectFamily<T>) -> Result<ArrangementGraph<T>> {
    family.require_normalized()?;
    let rects = family.rects();
    let mut joints = Vec::new();
    for (i, a) in rects.iter().enumerate() {
        for b in &rects[i + 1..] {
            match classify_pair(a, b) {
                IntersectionKind::Crossing => return Err(Error::CrossingPair(a.id, b.id)),
                IntersectionKind::Containment { container, contained } => {
                    return Err(Error::ContainmentPair { container, contained })
                }
                IntersectionKind::Corner(_) => joints.extend(boundary_intersection_points(a, b)),
                IntersectionKind::Disjoint => {}
            }
        }
    }
    let mut boundary: BTreeMap<RectId, Vec<usize>> = BTreeMap::new();
    for (j, joint) in joints.iter().enumerate() {
        boundary.entry(joint.rects.0).or_default().push(j);
        boundary.entry(joint.rects.1).or_default().push(j);
    }
    let by_id: BTreeMap<RectId, Rect<T>> = rects
        .iter()
        .filter(|r| boundary.contains_key(&r.id))
        .map(|r| (r.id, *r))
        .collect();
    let mut fragments = Vec::new();
    for (id, list) in boundary.iter_mut() {
        let r = &by_id[id];
        list.sort_by(|&a, &b| cmp_key(&boundary_key(r, &joints[a].point), &boundary_key(r, &joints[b].point)));
        for (k, &u) in list.iter().enumerate() {
            let v = list[(k + 1) % list.len()];
            fragments.push(Fragment { u, v, rect: *id });
        }
    }
    Ok(ArrangementGraph {
        joints,
        fragments,
        boundary,
        rects: by_id,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clean::clean_family;
    use crate::geometry::normalize_general_position;
    use crate::graphs::build_graph;
    use crate::testutil::r;
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn corner_triangle() -> RectFamily<Rational> {
        RectFamily::new(vec![r(1, 3, 6, 0, 4), r(2, 0, 4, 1, 3), r(3, 2, 5, 2, 5)]).unwrap()
    }

    #[test]
    fn two_corner_rects() {
        let f = RectFamily::new(vec![r(1, 0, 4, 0, 4), r(2, 2, 6, 2, 6)]).unwrap();
        let a = build_arrangement(&f).unwrap();
        assert_eq!(a.joint_count(), 2);
        assert_eq!(a.fragments().len(), 4);
        assert!((0..2).all(|j| a.degree(j) == 4));
        let s = a.simple_graph();
        assert_eq!(s.len(), 2);
        assert_eq!(s.edge_count(), 1);
        assert_eq!(a.proper_crossings(), 0);
    }

    #[test]
    fn corner_triangle_arrangement() {
        let a = build_arrangement(&corner_triangle()).unwrap();
        assert_eq!(a.joint_count(), 6);
        assert_eq!(a.fragments().len(), 12);
        assert!((0..6).all(|j| a.degree(j) == 4));
        let mut pts: Vec<(i64, i64)> = a
            .joints()
            .iter()
            .map(|j| (j.point.x.to_integer(), j.point.y.to_integer()))
            .collect();
        pts.sort();
        assert_eq!(pts, vec![(2, 3), (3, 1), (3, 2), (3, 3), (4, 2), (5, 4)]);
        // corner triangle(c) has 12 edges and no parallel pair
        assert_eq!(a.simple_graph().edge_count(), 12);
        assert_eq!(a.proper_crossings(), 0);
        let json = a.to_json();
        assert_eq!(json["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(json["edges"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn rejects_crossing_and_containment() {
        let f = RectFamily::new(vec![r(1, 1, 4, 0, 6), r(2, 0, 6, 2, 4)]).unwrap();
        assert_eq!(build_arrangement(&f).unwrap_err(), Error::CrossingPair(RectId(1), RectId(2)));
        let f = RectFamily::new(vec![r(1, 0, 10, 0, 10), r(2, 2, 5, 3, 6)]).unwrap();
        assert!(matches!(build_arrangement(&f).unwrap_err(), Error::ContainmentPair { .. }));
    }

    #[test]
    fn isolated_rects_dropped() {
        let f = RectFamily::new(vec![r(1, 0, 4, 0, 4), r(2, 2, 6, 2, 6), r(3, 10, 11, 10, 11)]).unwrap();
        let a = build_arrangement(&f).unwrap();
        assert_eq!(a.rect_ids().len(), 2);
        assert!(a.joints_of(RectId(3)).is_empty());
    }

    #[test]
    fn induced_rect_examples() {
        let a = build_arrangement(&corner_triangle()).unwrap();
        assert!(a.induced_rects(&[]).is_empty());
        assert_eq!(a.induced_rects(&[0]).len(), 2);
        let pair: Vec<usize> = (0..6).filter(|&j| a.incidence(j) == a.incidence(0)).collect();
        assert_eq!(pair.len(), 2);
        assert_eq!(a.induced_rects(&pair).len(), 2);
    }

    #[test]
    fn random_cleaned_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let n = rng.gen_range(1..25);
            let q = rng.gen_range(2..5);
            let rects = (0..n)
                .map(|i| {
                    let (x, y) = (rng.gen_range(0..50), rng.gen_range(0..50));
                    r(i, x, x + rng.gen_range(3..15), y, y + rng.gen_range(3..15))
                })
                .collect();
            let f = normalize_general_position(&RectFamily::new(rects).unwrap()).unwrap();
            if f.find_crossing().is_some() {
                continue;
            }
            let res = clean_family(&f, q).unwrap();
            let a = build_arrangement(&res.residual).unwrap();
            let g = build_graph(&res.residual).unwrap();
            assert_eq!(a.joint_count(), 2 * g.edge_count());
            assert!((0..a.joint_count()).all(|j| a.degree(j) == 4));
            assert!(a.joint_count() <= 4 * q * res.residual.len());
            assert_eq!(a.proper_crossings(), 0);
            for _ in 0..5 {
                let js: Vec<usize> = (0..a.joint_count()).filter(|_| rng.gen_bool(0.3)).collect();
                assert!(a.induced_rects(&js).len() <= 2 * js.len());
            }
        }
    }
}
