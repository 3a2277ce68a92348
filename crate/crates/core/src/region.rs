//! Named quantities of the construction: the angle ledger, altitude lengths,
//! the six circular segments, the three semicircles and the reference triangles.
//!
//! Regions are called `RA`..`RF` here so they do not collide with the point
//! and circle names `D`, `E`, `F`. The mapping is 1:1 with Regions A-F:
//!
//! | id | disk | chord | side |
//! |----|------|-------|------|
//! | RA | D | AC | away from B |
//! | RB | D | CB | away from A |
//! | RC | E | AG | away from C |
//! | RD | E | CG | away from A |
//! | RE | F | CG | away from B |
//! | RF | F | GB | away from C |
//! | SA | F | CB | towards G |
//! | SB | E | AC | towards G |
//! | SC | D | AB | towards C |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::geometry::{chord_side, measure_angle, CircleSpec, ConstructionScene, Point, RightTriangle};
use crate::numeric::x_minus_sin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[allow(non_camel_case_types)]
pub enum RegionId {
    RA,
    RB,
    RC,
    RD,
    RE,
    RF,
    SA,
    SB,
    SC,
    TRI_ABC,
    TRI_AGC,
    TRI_CGB,
}

impl RegionId {
    pub const ALL: [RegionId; 12] = [
        RegionId::RA,
        RegionId::RB,
        RegionId::RC,
        RegionId::RD,
        RegionId::RE,
        RegionId::RF,
        RegionId::SA,
        RegionId::SB,
        RegionId::SC,
        RegionId::TRI_ABC,
        RegionId::TRI_AGC,
        RegionId::TRI_CGB,
    ];

    /// The six segments followed by the three semicircles.
    pub const CHORD_REGIONS: [RegionId; 9] = [
        RegionId::RA,
        RegionId::RB,
        RegionId::RC,
        RegionId::RD,
        RegionId::RE,
        RegionId::RF,
        RegionId::SA,
        RegionId::SB,
        RegionId::SC,
    ];

    pub const SEGMENTS: [RegionId; 6] = [
        RegionId::RA,
        RegionId::RB,
        RegionId::RC,
        RegionId::RD,
        RegionId::RE,
        RegionId::RF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionId::RA => "RA",
            RegionId::RB => "RB",
            RegionId::RC => "RC",
            RegionId::RD => "RD",
            RegionId::RE => "RE",
            RegionId::RF => "RF",
            RegionId::SA => "SA",
            RegionId::SB => "SB",
            RegionId::SC => "SC",
            RegionId::TRI_ABC => "TRI_ABC",
            RegionId::TRI_AGC => "TRI_AGC",
            RegionId::TRI_CGB => "TRI_CGB",
        }
    }

    pub fn is_triangle(self) -> bool {
        matches!(self, RegionId::TRI_ABC | RegionId::TRI_AGC | RegionId::TRI_CGB)
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RegionId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown region id `{s}`")))
    }
}

/// Angles of the construction in degrees, all derived from `theta = angle CAB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleLedger {
    pub theta: f64,
    pub angle_eag: f64,
    pub angle_ega: f64,
    pub angle_cbg: f64,
    pub angle_fbg: f64,
    pub angle_fgb: f64,
    pub angle_bfg: f64,
    pub angle_cfg: f64,
    pub angle_aeg: f64,
    pub angle_ceg: f64,
}

impl AngleLedger {
    pub fn from_theta(theta: f64) -> Self {
        AngleLedger {
            theta,
            angle_eag: theta,
            angle_ega: theta,
            angle_cbg: 90.0 - theta,
            angle_fbg: 90.0 - theta,
            angle_fgb: 90.0 - theta,
            angle_bfg: 2.0 * theta,
            angle_cfg: 180.0 - 2.0 * theta,
            angle_aeg: 180.0 - 2.0 * theta,
            angle_ceg: 2.0 * theta,
        }
    }

    /// Every entry measured directly from scene coordinates.
    pub fn measure(scene: &ConstructionScene) -> Result<Self> {
        let (a, b, c) = (scene.a(), scene.b(), scene.c());
        let (e, f, g) = (scene.e(), scene.f(), scene.g());
        Ok(AngleLedger {
            theta: measure_angle(a, c, b)?,
            angle_eag: measure_angle(a, e, g)?,
            angle_ega: measure_angle(g, e, a)?,
            angle_cbg: measure_angle(b, c, g)?,
            angle_fbg: measure_angle(b, f, g)?,
            angle_fgb: measure_angle(g, f, b)?,
            angle_bfg: measure_angle(f, b, g)?,
            angle_cfg: measure_angle(f, c, g)?,
            angle_aeg: measure_angle(e, a, g)?,
            angle_ceg: measure_angle(e, c, g)?,
        })
    }

    fn entries(&self) -> [(&'static str, f64); 10] {
        [
            ("theta", self.theta),
            ("angle_EAG", self.angle_eag),
            ("angle_EGA", self.angle_ega),
            ("angle_CBG", self.angle_cbg),
            ("angle_FBG", self.angle_fbg),
            ("angle_FGB", self.angle_fgb),
            ("angle_BFG", self.angle_bfg),
            ("angle_CFG", self.angle_cfg),
            ("angle_AEG", self.angle_aeg),
            ("angle_CEG", self.angle_ceg),
        ]
    }

    /// Largest absolute difference (degrees) between matching entries, with its name.
    pub fn max_deviation(&self, other: &AngleLedger) -> (&'static str, f64) {
        self.entries()
            .into_iter()
            .zip(other.entries())
            .map(|((name, x), (_, y))| (name, (x - y).abs()))
            .fold(("theta", 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
    }
}

pub const ANGLE_TOLERANCE_DEG: f64 = 1e-9;

/// Closed-form angle ledger, checked entry by entry against measured angles.
pub fn angle_ledger(scene: &ConstructionScene) -> Result<AngleLedger> {
    let ledger = AngleLedger::from_theta(scene.theta_deg());
    let measured = AngleLedger::measure(scene)?;
    let (name, dev) = ledger.max_deviation(&measured);
    if dev.is_nan() || dev > ANGLE_TOLERANCE_DEG {
        return Err(Error::Verification(format!(
            "{name} deviates from its closed form by {dev:e} degrees"
        )));
    }
    Ok(ledger)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AltitudeLengths {
    /// Distance from `G` to `AC`: `ab²/c²`.
    pub gh: f64,
    /// Distance from `G` to `CB`: `a²b/c²`.
    pub gj: f64,
}

pub fn altitude_lengths(tri: &RightTriangle) -> AltitudeLengths {
    let (a, b, c) = (tri.a(), tri.b(), tri.c());
    let c2 = c * c;
    AltitudeLengths {
        gh: a * b * b / c2,
        gj: a * a * b / c2,
    }
}

/// A region bounded by a chord and the arc of `disk` on the witness's side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionSpec {
    pub id: RegionId,
    pub disk: CircleSpec,
    pub chord_from: Point,
    pub chord_to: Point,
    pub interior_witness: Point,
}

impl RegionSpec {
    /// Open-region membership: strictly inside the disk and strictly on the
    /// witness's side of the chord.
    pub fn contains(&self, p: Point) -> bool {
        if !self.disk.contains_strictly(p) {
            return false;
        }
        match (
            chord_side(p, self.chord_from, self.chord_to),
            chord_side(self.interior_witness, self.chord_from, self.chord_to),
        ) {
            (Ok(s), Ok(w)) => s != 0 && s == w,
            _ => false,
        }
    }

    /// Side (+1/-1) of the chord the region occupies, or 0 if the witness is on the chord.
    pub fn side(&self) -> i8 {
        chord_side(self.interior_witness, self.chord_from, self.chord_to).unwrap_or(0)
    }
}

enum Side {
    Towards(Point),
    AwayFrom(Point),
}

fn chord_region(
    id: RegionId,
    disk: CircleSpec,
    chord_from: Point,
    chord_to: Point,
    side: Side,
) -> Result<RegionSpec> {
    let target = match side {
        Side::Towards(p) => chord_side(p, chord_from, chord_to)?,
        Side::AwayFrom(p) => -chord_side(p, chord_from, chord_to)?,
    };
    if target == 0 {
        return domain(format!("{id}: side reference point lies on the chord"));
    }
    let dir = chord_to - chord_from;
    let len = dir.norm();
    let normal = Point::new(-dir.y, dir.x) * (f64::from(target) / len);
    // The witness sits halfway between the chord and the arc's far point,
    // on the chord's perpendicular through the center.
    let center_offset = (disk.center - chord_from).dot(normal);
    let interior_witness = disk.center + normal * (0.5 * (disk.radius - center_offset));
    Ok(RegionSpec {
        id,
        disk,
        chord_from,
        chord_to,
        interior_witness,
    })
}

/// Chord, disk and side data for a segment or semicircle of the scene.
pub fn region_spec(id: RegionId, scene: &ConstructionScene) -> Result<RegionSpec> {
    let (a, b, c, g) = (scene.a(), scene.b(), scene.c(), scene.g());
    let (dd, de, df) = (scene.circle_d(), scene.circle_e(), scene.circle_f());
    match id {
        RegionId::RA => chord_region(id, dd, a, c, Side::AwayFrom(b)),
        RegionId::RB => chord_region(id, dd, c, b, Side::AwayFrom(a)),
        RegionId::RC => chord_region(id, de, a, g, Side::AwayFrom(c)),
        RegionId::RD => chord_region(id, de, c, g, Side::AwayFrom(a)),
        RegionId::RE => chord_region(id, df, c, g, Side::AwayFrom(b)),
        RegionId::RF => chord_region(id, df, g, b, Side::AwayFrom(c)),
        RegionId::SA => chord_region(id, df, c, b, Side::Towards(g)),
        RegionId::SB => chord_region(id, de, a, c, Side::Towards(g)),
        RegionId::SC => chord_region(id, dd, a, b, Side::Towards(c)),
        RegionId::TRI_ABC | RegionId::TRI_AGC | RegionId::TRI_CGB => {
            domain(format!("{id} is a triangle, not a chord-bounded region"))
        }
    }
}

/// Central angles (radians) below this use the series form of sector minus triangle.
const THIN_SEGMENT_RAD: f64 = 0.25;

/// Sector of `radius` with central angle `central_deg`, minus the triangle term.
///
/// `triangle` must equal `radius²/2 · sin(central)`; for thin segments the
/// subtraction is evaluated through that identity to avoid cancellation.
fn segment_area(radius: f64, central_deg: f64, triangle: f64) -> f64 {
    let central = central_deg.to_radians();
    if central >= THIN_SEGMENT_RAD {
        PI * radius * radius * central_deg / 360.0 - triangle
    } else {
        0.5 * radius * radius * x_minus_sin(central)
    }
}

/// Closed-form area of any region, with `theta` taken from the triangle.
pub fn region_area(id: RegionId, tri: &RightTriangle) -> f64 {
    let (a, b, c) = (tri.a(), tri.b(), tri.c());
    let theta = tri.theta_deg();
    let c2 = c * c;
    let wide = 180.0 - 2.0 * theta;
    let narrow = 2.0 * theta;
    match id {
        RegionId::RA => segment_area(0.5 * c, wide, a * b / 4.0),
        RegionId::RB => segment_area(0.5 * c, narrow, a * b / 4.0),
        RegionId::RC => segment_area(0.5 * b, wide, a * b * b * b / (4.0 * c2)),
        RegionId::RD => segment_area(0.5 * b, narrow, a * b * b * b / (4.0 * c2)),
        RegionId::RE => segment_area(0.5 * a, wide, a * a * a * b / (4.0 * c2)),
        RegionId::RF => segment_area(0.5 * a, narrow, a * a * a * b / (4.0 * c2)),
        RegionId::SA => PI * a * a / 8.0,
        RegionId::SB => PI * b * b / 8.0,
        RegionId::SC => PI * c2 / 8.0,
        RegionId::TRI_ABC => a * b / 2.0,
        RegionId::TRI_AGC => a * b * b * b / (2.0 * c2),
        RegionId::TRI_CGB => a * a * a * b / (2.0 * c2),
    }
}

/// `RC + RD - [AGC]`: the literal right-hand side of the "Region A congruence"
/// claim, which does not equal `RA` (it is negative for the 3-4-5 triangle).
pub fn region_a_congruence_literal(tri: &RightTriangle) -> f64 {
    region_area(RegionId::RC, tri) + region_area(RegionId::RD, tri)
        - region_area(RegionId::TRI_AGC, tri)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarLengths {
    pub ag: f64,
    pub cg: f64,
    pub bg: f64,
}

/// Lengths along the altitude from triangle similarity `AGC ~ ACB ~ CGB`.
pub fn similar_lengths(tri: &RightTriangle) -> SimilarLengths {
    let (a, b, c) = (tri.a(), tri.b(), tri.c());
    SimilarLengths {
        ag: b / c * b,
        cg: b / c * a,
        bg: a / c * a,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AltTriangleAreas {
    pub aeg: f64,
    pub ceg: f64,
    pub cfg: f64,
    pub gfb: f64,
}

/// Areas of `AEG`, `CEG`, `CFG`, `GFB` as halves of `AGC` and `CGB`, from
/// the similar-triangle lengths only.
pub fn alt_triangle_areas(tri: &RightTriangle) -> AltTriangleAreas {
    let SimilarLengths { ag, cg, bg } = similar_lengths(tri);
    let agc = 0.5 * ag * cg;
    let cgb = 0.5 * cg * bg;
    AltTriangleAreas {
        aeg: 0.5 * agc,
        ceg: 0.5 * agc,
        cfg: 0.5 * cgb,
        gfb: 0.5 * cgb,
    }
}
