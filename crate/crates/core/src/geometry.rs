//! Canonical coordinates and primitive constructions for the three-circle figure.
//!
//! Every triangle lives in one frame: the right angle at `C = (0, 0)`, leg `a`
//! along the x-axis to `B = (a, 0)` and leg `b` up the y-axis to `A = (0, b)`.
//! The hypotenuse length `c` is measured as `|AB|`; nothing in this module
//! asserts `a² + b² = c²`, it only computes distances.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numeric::{rel_or_abs_err, GEOMETRIC_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Right triangle in the canonical frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RightTriangle {
    a: f64,
    b: f64,
    c: f64,
}

impl RightTriangle {
    /// Builds the triangle with legs `a = |CB|` and `b = |AC|`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a <= 0.0 || b <= 0.0 {
            return domain(format!("legs must be positive and finite (got a={a}, b={b})"));
        }
        let vertex_a = Point::new(0.0, b);
        let vertex_b = Point::new(a, 0.0);
        let c = vertex_a.distance(vertex_b);
        if !c.is_finite() {
            return domain(format!("hypotenuse overflows for legs a={a}, b={b}"));
        }
        Ok(RightTriangle { a, b, c })
    }

    /// Leg `CB`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Leg `AC`.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Hypotenuse `|AB|`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn vertex_a(&self) -> Point {
        Point::new(0.0, self.b)
    }

    pub fn vertex_b(&self) -> Point {
        Point::new(self.a, 0.0)
    }

    pub fn vertex_c(&self) -> Point {
        Point::ORIGIN
    }

    /// Angle `CAB` in degrees.
    pub fn theta_deg(&self) -> f64 {
        measure_angle(self.vertex_a(), self.vertex_c(), self.vertex_b())
            .expect("canonical vertices are distinct")
    }
}

/// Free-function form of [`RightTriangle::new`].
pub fn build_triangle(a: f64, b: f64) -> Result<RightTriangle> {
    RightTriangle::new(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleSpec {
    pub center: Point,
    pub radius: f64,
}

impl CircleSpec {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() || radius <= 0.0 {
            return domain(format!("circle needs a finite center and positive radius (got r={radius})"));
        }
        Ok(CircleSpec { center, radius })
    }

    /// Circle having the segment `p`–`q` as a diameter.
    pub fn on_diameter(p: Point, q: Point) -> Result<Self> {
        Self::new(p.midpoint(q), 0.5 * p.distance(q))
    }

    pub fn contains_strictly(&self, p: Point) -> bool {
        p.distance(self.center) < self.radius
    }

    /// `| |p - center| - radius |`.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        (p.distance(self.center) - self.radius).abs()
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }
}

/// The full construction: midpoint circles on all three sides, the altitude
/// foot `G` and its projections `H`, `J` onto the legs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionScene {
    tri: RightTriangle,
    d: Point,
    e: Point,
    f: Point,
    circle_d: CircleSpec,
    circle_e: CircleSpec,
    circle_f: CircleSpec,
    g: Point,
    h: Point,
    j: Point,
    theta_deg: f64,
}

/// One named invariant of a scene with its measured residual.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantResidual {
    pub name: &'static str,
    pub residual: f64,
}

impl ConstructionScene {
    pub fn new(tri: RightTriangle) -> Result<Self> {
        let (va, vb, vc) = (tri.vertex_a(), tri.vertex_b(), tri.vertex_c());
        let d = va.midpoint(vb);
        let e = va.midpoint(vc);
        let f = vc.midpoint(vb);
        let circle_d = CircleSpec::new(d, 0.5 * tri.c())?;
        let circle_e = CircleSpec::new(e, 0.5 * tri.b())?;
        let circle_f = CircleSpec::new(f, 0.5 * tri.a())?;

        // Foot of the perpendicular from C, written as a convex combination of
        // A and B so neither coordinate comes from a difference of near-equal terms.
        let ab = vb - va;
        let ab2 = ab.dot(ab);
        let weight_b = (vc - va).dot(ab) / ab2;
        let weight_a = (vc - vb).dot(va - vb) / ab2;
        let g = va * weight_a + vb * weight_b;

        let scene = ConstructionScene {
            tri,
            d,
            e,
            f,
            circle_d,
            circle_e,
            circle_f,
            g,
            h: Point::new(0.0, g.y),
            j: Point::new(g.x, 0.0),
            theta_deg: tri.theta_deg(),
        };

        if let Some(bad) = scene
            .invariant_residuals()
            .into_iter()
            .find(|r| r.residual.is_nan() || r.residual > GEOMETRIC_TOLERANCE)
        {
            return Err(Error::Verification(format!(
                "scene invariant {} has residual {:e}",
                bad.name, bad.residual
            )));
        }
        Ok(scene)
    }

    /// Residuals of the scene invariants, each scaled so that the geometric
    /// tolerance applies directly.
    pub fn invariant_residuals(&self) -> Vec<InvariantResidual> {
        let tri = &self.tri;
        let (va, vb, vc) = (tri.vertex_a(), tri.vertex_b(), tri.vertex_c());
        let c = tri.c();
        let ab = vb - va;
        let cg = self.g - vc;
        vec![
            InvariantResidual {
                name: "midpoints_exact",
                residual: [
                    self.d.distance(va.midpoint(vb)),
                    self.e.distance(va.midpoint(vc)),
                    self.f.distance(vc.midpoint(vb)),
                ]
                .into_iter()
                .fold(0.0, f64::max)
                    / c,
            },
            InvariantResidual {
                name: "g_on_ab",
                residual: ab.cross(self.g - va).abs() / (c * c),
            },
            InvariantResidual {
                name: "g_within_ab",
                residual: (self.g.distance(va) + self.g.distance(vb) - c).abs() / c,
            },
            InvariantResidual {
                name: "cg_perpendicular_ab",
                residual: ab.dot(cg).abs() / (c * cg.norm().max(f64::MIN_POSITIVE)),
            },
            InvariantResidual {
                name: "g_on_circle_e",
                residual: rel_or_abs_err(self.g.distance(self.e), 0.5 * tri.b()),
            },
            InvariantResidual {
                name: "g_on_circle_f",
                residual: rel_or_abs_err(self.g.distance(self.f), 0.5 * tri.a()),
            },
            InvariantResidual {
                name: "h_j_axis_projections",
                residual: (self.h.distance(Point::new(0.0, self.g.y))
                    + self.j.distance(Point::new(self.g.x, 0.0)))
                    / c,
            },
            InvariantResidual {
                name: "theta_in_open_quadrant",
                residual: if self.theta_deg > 0.0 && self.theta_deg < 90.0 { 0.0 } else { 1.0 },
            },
        ]
    }

    pub fn tri(&self) -> &RightTriangle {
        &self.tri
    }

    /// Midpoint of `AB`, center of circle D.
    pub fn d(&self) -> Point {
        self.d
    }

    /// Midpoint of `AC`, center of circle E.
    pub fn e(&self) -> Point {
        self.e
    }

    /// Midpoint of `CB`, center of circle F.
    pub fn f(&self) -> Point {
        self.f
    }

    pub fn circle_d(&self) -> CircleSpec {
        self.circle_d
    }

    pub fn circle_e(&self) -> CircleSpec {
        self.circle_e
    }

    pub fn circle_f(&self) -> CircleSpec {
        self.circle_f
    }

    /// Foot of the altitude from `C`; second intersection of circles E and F.
    pub fn g(&self) -> Point {
        self.g
    }

    /// Projection of `G` onto `AC`.
    pub fn h(&self) -> Point {
        self.h
    }

    /// Projection of `G` onto `CB`.
    pub fn j(&self) -> Point {
        self.j
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta_deg
    }

    pub fn a(&self) -> Point {
        self.tri.vertex_a()
    }

    pub fn b(&self) -> Point {
        self.tri.vertex_b()
    }

    pub fn c(&self) -> Point {
        self.tri.vertex_c()
    }
}

pub fn construct_scene(tri: RightTriangle) -> Result<ConstructionScene> {
    ConstructionScene::new(tri)
}

/// Unsigned angle at `vertex` between the rays towards `ray1` and `ray2`, in degrees.
pub fn measure_angle(vertex: Point, ray1: Point, ray2: Point) -> Result<f64> {
    let u = ray1 - vertex;
    let v = ray2 - vertex;
    if u == Point::ORIGIN || v == Point::ORIGIN {
        return domain("angle ray endpoint coincides with the vertex");
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)).to_degrees())
}

/// Side of the directed chord `chord_from -> chord_to` on which `p` lies.
///
/// Returns +1 left, -1 right, 0 when `p` is within `1e-9` (relative to the
/// chord length and the distance from `chord_from`) of the chord's line.
pub fn chord_side(p: Point, chord_from: Point, chord_to: Point) -> Result<i8> {
    let dir = chord_to - chord_from;
    let len = dir.norm();
    if len.is_nan() || len <= 0.0 {
        return domain("chord endpoints coincide");
    }
    let offset = p - chord_from;
    let cross = dir.cross(offset);
    let scale = len * len.max(offset.norm());
    Ok(if cross.abs() <= GEOMETRIC_TOLERANCE * scale {
        0
    } else if cross > 0.0 {
        1
    } else {
        -1
    })
}

/// Distance from `p` to the infinite line through `from` and `to`.
pub fn line_distance(p: Point, from: Point, to: Point) -> f64 {
    let dir = to - from;
    dir.cross(p - from).abs() / dir.norm()
}
