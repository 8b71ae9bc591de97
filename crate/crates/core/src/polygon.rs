//! Exact lattice polygons, Minkowski sums and mixed volumes.
//!
//! The mixed volume of the Newton polygons of the perturbed intersection
//! systems counts their solutions in `(C*)²`; subtracting the solutions that
//! escape to the boundary region gives an independent value for `Q_τ`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Degeneracy {
    Point,
    Segment,
    Proper,
}

/// Convex lattice polygon, counterclockwise from its lexicographically
/// smallest vertex, with no three consecutive vertices collinear.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl LatticePolygon {
    pub fn point(p: Point) -> Self {
        LatticePolygon { vertices: vec![p] }
    }

    /// `conv{(0,0), (a,0), (0,b)}` for `a, b >= 0`.
    pub fn leg_triangle(a: i64, b: i64) -> Self {
        hull(&[(0, 0), (a, 0), (0, b)]).expect("nonempty point list")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn degeneracy(&self) -> Degeneracy {
        match self.vertices.len() {
            1 => Degeneracy::Point,
            2 => Degeneracy::Segment,
            _ => Degeneracy::Proper,
        }
    }

    /// Edge vectors in counterclockwise order; a segment has two opposite edges.
    pub fn edges(&self) -> Vec<Point> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (b.0 - a.0, b.1 - a.1)
            })
            .collect()
    }

    pub fn contains(&self, p: Point) -> bool {
        match self.degeneracy() {
            Degeneracy::Point => self.vertices[0] == p,
            Degeneracy::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, p) == 0
                    && p.0 >= a.0.min(b.0)
                    && p.0 <= a.0.max(b.0)
                    && p.1 >= a.1.min(b.1)
                    && p.1 <= a.1.max(b.1)
            }
            Degeneracy::Proper => {
                let n = self.vertices.len();
                (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
            }
        }
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for LatticePolygon {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(serializer)
    }
}

/// Convex hull by Andrew's monotone chain.
pub fn hull(points: &[Point]) -> Result<LatticePolygon> {
    if points.is_empty() {
        return Err(Error::Domain("hull of an empty point set".into()));
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(LatticePolygon { vertices: pts });
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(LatticePolygon { vertices: lower })
}

/// Twice the area, by the shoelace formula.
pub fn area2(p: &LatticePolygon) -> i64 {
    let v = &p.vertices;
    let n = v.len();
    if n < 3 {
        return 0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum()
}

/// Position of a direction in the cycle of angles `(-π/2, 3π/2]`.
fn angle_cmp(a: Point, b: Point) -> Ordering {
    let half = |v: Point| if v.0 > 0 || (v.0 == 0 && v.1 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 * b.1 - a.1 * b.0;
        0.cmp(&c)
    })
}

/// Minkowski sum by merging the edge sequences in angular order.
pub fn minkowski_sum(a: &LatticePolygon, b: &LatticePolygon) -> LatticePolygon {
    let start = (a.vertices[0].0 + b.vertices[0].0, a.vertices[0].1 + b.vertices[0].1);
    let mut edges = a.edges();
    edges.extend(b.edges());
    edges.sort_by(|&x, &y| angle_cmp(x, y));
    let mut merged: Vec<Point> = Vec::with_capacity(edges.len());
    for e in edges {
        match merged.last_mut() {
            Some(last) if angle_cmp(*last, e) == Ordering::Equal => {
                last.0 += e.0;
                last.1 += e.1;
            }
            _ => merged.push(e),
        }
    }
    let mut vertices = vec![start];
    let mut cur = start;
    for e in merged.iter().take(merged.len().saturating_sub(1)) {
        cur = (cur.0 + e.0, cur.1 + e.1);
        vertices.push(cur);
    }
    LatticePolygon { vertices }
}

/// `(area2(a+b) - area2(a) - area2(b)) / 2`.
pub fn mixed_volume(a: &LatticePolygon, b: &LatticePolygon) -> Result<i64> {
    let diff = area2(&minkowski_sum(a, b)) - area2(a) - area2(b);
    if diff % 2 != 0 {
        return Err(Error::Consistency(format!(
            "odd mixed-area difference {diff} for {a} and {b}"
        )));
    }
    Ok(diff / 2)
}

/// Which intersection system governs a pair of slopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SystemCase {
    /// Equal slopes: the elliptic–hyperbolic pair on one torus.
    SameTorus,
    /// Both tori on the side `x0 > 0` (slopes at most one half).
    PositiveSide,
    /// Both tori on the side `x0 < 0` (slopes at least one half).
    NegativeSide,
    /// The tori lie on opposite sides of the vanishing cycle.
    Straddling,
}

fn ordered(p: i64, q: i64, p2: i64, q2: i64) -> Result<()> {
    for (a, b) in [(p, q), (p2, q2)] {
        if b < 1 || a < 0 || a > b || num_integer::gcd(a, b) != 1 {
            return Err(Error::Domain(format!("{a}/{b} is not a reduced slope in [0, 1]")));
        }
    }
    if p * q2 < p2 * q {
        return Err(Error::OrderViolation(format!("{p}/{q}"), format!("{p2}/{q2}")));
    }
    Ok(())
}

/// Newton polygons of the system whose solutions count the intersections
/// of the two perturbed surfaces over the slopes `p/q >= p2/q2`.
pub fn newton_polygons_for_pair(
    p: i64,
    q: i64,
    p2: i64,
    q2: i64,
) -> Result<(SystemCase, LatticePolygon, LatticePolygon)> {
    ordered(p, q, p2, q2)?;
    let t = LatticePolygon::leg_triangle;
    if (p, q) == (p2, q2) {
        return Ok(if 2 * p <= q {
            (SystemCase::SameTorus, t(p, p), t(q - p, q - p))
        } else {
            (SystemCase::SameTorus, t(q - p, q - p), t(p, p))
        });
    }
    Ok(if 2 * p <= q {
        (SystemCase::PositiveSide, t(p, p2), t(q - p, q2 - p2))
    } else if 2 * p2 >= q2 {
        (SystemCase::NegativeSide, t(q - p, q2 - p2), t(p, p2))
    } else {
        (SystemCase::Straddling, t(q - p, q2 - p2), t(p, p2))
    })
}

/// Mixed volume minus the `|pq' - p'q|` solutions outside the region;
/// errors unless it equals the closed-form pairing.
pub fn q_tau_oracle(p: i64, q: i64, p2: i64, q2: i64) -> Result<i64> {
    let (_, a, b) = newton_polygons_for_pair(p, q, p2, q2)?;
    let count = mixed_volume(&a, &b)? - (p * q2 - p2 * q).abs();
    let closed = crate::index::q_tau_pair(p, q, p2, q2)?;
    if count != closed {
        return Err(Error::Consistency(format!(
            "oracle count {count} != closed form {closed} for {p}/{q}, {p2}/{q2}"
        )));
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[Point]) -> LatticePolygon {
        hull(v).unwrap()
    }

    #[test]
    fn hull_examples() {
        let t = poly(&[(0, 0), (1, 0), (0, 1), (0, 0)]);
        assert_eq!(t.vertices(), &[(0, 0), (1, 0), (0, 1)]);
        let s = poly(&[(0, 0), (2, 0), (1, 0)]);
        assert_eq!(s.degeneracy(), Degeneracy::Segment);
        assert_eq!(s.vertices(), &[(0, 0), (2, 0)]);
        let q = poly(&[(0, 0), (1, 0), (0, 2), (1, 1)]);
        assert_eq!(q.vertices(), &[(0, 0), (1, 0), (1, 1), (0, 2)]);
        assert_eq!(poly(&[(3, 3), (3, 3)]).degeneracy(), Degeneracy::Point);
        assert!(hull(&[]).is_err());
    }

    #[test]
    fn area_examples() {
        assert_eq!(area2(&poly(&[(0, 0), (1, 0), (0, 1)])), 1);
        assert_eq!(area2(&poly(&[(0, 0), (2, 0), (1, 2), (0, 3)])), 7);
        assert_eq!(area2(&poly(&[(0, 0), (5, 5)])), 0);
        assert_eq!(area2(&LatticePolygon::point((1, 1))), 0);
    }

    #[test]
    fn minkowski_examples() {
        let a = LatticePolygon::leg_triangle(1, 1);
        let b = LatticePolygon::leg_triangle(1, 2);
        let s = minkowski_sum(&a, &b);
        assert_eq!(s.vertices(), &[(0, 0), (2, 0), (1, 2), (0, 3)]);
        assert_eq!(minkowski_sum(&b, &a), s);
        assert_eq!(minkowski_sum(&a, &LatticePolygon::point((0, 0))), a);
        let shifted = minkowski_sum(&a, &LatticePolygon::point((2, -1)));
        assert_eq!(shifted.vertices(), &[(2, -1), (3, -1), (2, 0)]);
    }

    #[test]
    fn minkowski_of_segments() {
        let h = poly(&[(0, 0), (3, 0)]);
        let v = poly(&[(0, 0), (0, 2)]);
        assert_eq!(minkowski_sum(&h, &v).vertices(), &[(0, 0), (3, 0), (3, 2), (0, 2)]);
        let hh = minkowski_sum(&h, &h);
        assert_eq!(hh.vertices(), &[(0, 0), (6, 0)]);
    }

    #[test]
    fn mixed_volume_examples() {
        let a = LatticePolygon::leg_triangle(1, 1);
        let b = LatticePolygon::leg_triangle(1, 2);
        assert_eq!(mixed_volume(&a, &b).unwrap(), 2);
        assert_eq!(mixed_volume(&b, &b).unwrap(), area2(&b));
        assert_eq!(mixed_volume(&a, &LatticePolygon::point((4, 4))).unwrap(), 0);
    }

    #[test]
    fn newton_pairs() {
        let (case, a, b) = newton_polygons_for_pair(1, 2, 1, 3).unwrap();
        assert_eq!(case, SystemCase::PositiveSide);
        assert_eq!(a, LatticePolygon::leg_triangle(1, 1));
        assert_eq!(b, LatticePolygon::leg_triangle(1, 2));
        let (case, a, b) = newton_polygons_for_pair(1, 2, 1, 2).unwrap();
        assert_eq!(case, SystemCase::SameTorus);
        assert_eq!((a.clone(), b), (LatticePolygon::leg_triangle(1, 1), a));
        let (case, a, b) = newton_polygons_for_pair(1, 1, 0, 1).unwrap();
        assert_eq!(case, SystemCase::Straddling);
        assert_eq!(a.vertices(), &[(0, 0), (0, 1)]);
        assert_eq!(b.vertices(), &[(0, 0), (1, 0)]);
        assert!(matches!(newton_polygons_for_pair(1, 3, 1, 2), Err(Error::OrderViolation(..))));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(q_tau_oracle(1, 2, 1, 3).unwrap(), 1);
        assert_eq!(q_tau_oracle(1, 2, 1, 2).unwrap(), 1);
        assert_eq!(q_tau_oracle(1, 2, 0, 1).unwrap(), 0);
        assert_eq!(q_tau_oracle(3, 4, 2, 3).unwrap(), 2);
    }

    #[test]
    fn contains_points() {
        let t = LatticePolygon::leg_triangle(2, 2);
        assert!(t.contains((1, 1)));
        assert!(!t.contains((2, 1)));
        let s = poly(&[(0, 0), (2, 2)]);
        assert!(s.contains((1, 1)));
        assert!(!s.contains((3, 3)));
    }
}
