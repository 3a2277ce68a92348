//! Formula-independent area oracles.
//!
//! * [`quadrature_segment_area`] measures a segment from its chord geometry
//!   alone: the central angle comes from the chord's half-length and the
//!   center's offset, never from `theta`.
//! * [`mc_region_area`] integrates a region's membership indicator by
//!   uniform sampling.
//! * [`multiplicity_check`] samples points and compares the signed count of
//!   the decomposition's regions with the hypotenuse-semicircle indicator.
//!
//! Sampling uses ChaCha8 (`rand_chacha`). Samples are split into chunks of
//! [`CHUNK_SAMPLES`]; chunk `i` draws from `ChaCha8Rng::seed_from_u64(seed)`
//! with stream `i`, two `f64` draws (x then y) per point. Chunk counts are
//! integers and are summed in chunk order, so results are bit-identical for
//! any worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exec::{map_chunks, Execution};
use crate::geometry::{chord_side, line_distance, CircleSpec, ConstructionScene, Point};
use crate::numeric::{x_minus_sin, GEOMETRIC_TOLERANCE};
use crate::region::{region_spec, RegionId, RegionSpec};

pub const CHUNK_SAMPLES: u64 = 1 << 16;
pub const MIN_SAMPLES: u64 = 1000;

/// Area of the part of `disk` cut off by the chord on `side_witness`'s side.
pub fn quadrature_segment_area(
    disk: &CircleSpec,
    chord_from: Point,
    chord_to: Point,
    side_witness: Point,
) -> Result<f64> {
    let r = disk.radius;
    for p in [chord_from, chord_to] {
        if disk.boundary_distance(p) > GEOMETRIC_TOLERANCE * r {
            return domain(format!("chord endpoint {p} is not on the circle"));
        }
    }
    let chord = chord_to - chord_from;
    let len = chord.norm();
    if len == 0.0 {
        // Tangent point: nothing is cut off.
        return Ok(0.0);
    }
    let side = chord_side(side_witness, chord_from, chord_to)?;
    if side == 0 {
        return domain("side witness is collinear with the chord");
    }
    let unit_normal = Point::new(-chord.y, chord.x) * (f64::from(side) / len);
    // Signed distance of the center towards the witness side.
    let center_offset = (disk.center - chord_from).dot(unit_normal);
    let half_chord = 0.5 * len;
    let central = 2.0 * half_chord.atan2(-center_offset);
    Ok(0.5 * r * r * x_minus_sin(central))
}

/// [`quadrature_segment_area`] applied to a region spec.
pub fn quadrature_region_area(spec: &RegionSpec) -> Result<f64> {
    quadrature_segment_area(&spec.disk, spec.chord_from, spec.chord_to, spec.interior_witness)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleEstimate {
    pub region: RegionId,
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Axis-aligned sampling rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBox {
    pub min: Point,
    pub max: Point,
}

impl SampleBox {
    pub fn around(disk: &CircleSpec) -> Self {
        let r = Point::new(disk.radius, disk.radius);
        SampleBox {
            min: disk.center - r,
            max: disk.center + r,
        }
    }

    pub fn area(&self) -> f64 {
        (self.max.x - self.min.x) * (self.max.y - self.min.y)
    }

    fn point(&self, u: f64, v: f64) -> Point {
        Point::new(
            self.min.x + (self.max.x - self.min.x) * u,
            self.min.y + (self.max.y - self.min.y) * v,
        )
    }
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn chunk_len(samples: u64, chunk: u64) -> u64 {
    CHUNK_SAMPLES.min(samples - chunk * CHUNK_SAMPLES)
}

/// Runs `visit` on every sampled point of every chunk and reduces the
/// per-chunk accumulators in chunk order.
fn sample_points<A, F>(
    domain_box: SampleBox,
    samples: u64,
    seed: u64,
    exec: Execution,
    visit: F,
) -> A
where
    A: Default + Send + std::ops::AddAssign,
    F: Fn(&mut A, Point) + Sync + Send,
{
    let n_chunks = samples.div_ceil(CHUNK_SAMPLES);
    let parts = map_chunks(n_chunks, exec, |chunk| {
        let mut rng = chunk_rng(seed, chunk);
        let mut acc = A::default();
        for _ in 0..chunk_len(samples, chunk) {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            visit(&mut acc, domain_box.point(u, v));
        }
        acc
    });
    let mut total = A::default();
    for p in parts {
        total += p;
    }
    total
}

fn validate_spec(spec: &RegionSpec) -> Result<()> {
    let r = spec.disk.radius;
    for p in [spec.chord_from, spec.chord_to] {
        if spec.disk.boundary_distance(p) > GEOMETRIC_TOLERANCE * r {
            return domain(format!("{}: chord endpoint {p} is not on the circle", spec.id));
        }
    }
    if !spec.contains(spec.interior_witness) {
        return domain(format!("{}: interior witness is not inside the region", spec.id));
    }
    Ok(())
}

/// Monte-Carlo area of `spec` over the bounding box of `domain_disk`
/// (circle D for scene regions), using the default execution mode.
pub fn mc_region_area(
    spec: &RegionSpec,
    domain_disk: &CircleSpec,
    samples: u64,
    seed: u64,
) -> Result<OracleEstimate> {
    mc_region_area_with(spec, domain_disk, samples, seed, Execution::default())
}

pub fn mc_region_area_with(
    spec: &RegionSpec,
    domain_disk: &CircleSpec,
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<OracleEstimate> {
    if samples < MIN_SAMPLES {
        return domain(format!("at least {MIN_SAMPLES} samples are required (got {samples})"));
    }
    validate_spec(spec)?;
    let domain_box = SampleBox::around(domain_disk);
    // Same test as `spec.contains`, with the witness side hoisted out of the loop.
    let side = spec.side();
    let (disk, from, to) = (spec.disk, spec.chord_from, spec.chord_to);
    let hits: u64 = sample_points(domain_box, samples, seed, exec, |hits: &mut u64, p| {
        if disk.contains_strictly(p) && chord_side(p, from, to) == Ok(side) {
            *hits += 1;
        }
    });
    let n = samples as f64;
    let p = hits as f64 / n;
    let box_area = domain_box.area();
    // Sample standard deviation of the 0/1 indicator (Bessel-corrected).
    let sd = (p * (1.0 - p) * n / (n - 1.0)).sqrt();
    Ok(OracleEstimate {
        region: spec.id,
        mean: box_area * p,
        std_error: box_area * sd / n.sqrt(),
        samples,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct MultiplicityCounts {
    pub violations: u64,
    pub excluded: u64,
}

impl std::ops::AddAssign for MultiplicityCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.violations += rhs.violations;
        self.excluded += rhs.excluded;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub samples: u64,
    pub violations: u64,
    pub excluded_near_boundary: u64,
    pub epsilon: f64,
    pub seed: u64,
}

impl MultiplicityReport {
    pub fn conforming(&self) -> u64 {
        self.samples - self.violations - self.excluded_near_boundary
    }
}

/// The regions of the decomposition plus the boundary set used for exclusion.
#[derive(Debug, Clone)]
pub struct Decomposition {
    signed: Vec<(RegionSpec, i32)>,
    hypotenuse: RegionSpec,
    lines: Vec<(Point, Point)>,
    circles: [CircleSpec; 3],
}

impl Decomposition {
    pub fn new(scene: &ConstructionScene) -> Result<Self> {
        let signed = crate::symbolic::DECOMPOSITION
            .iter()
            .map(|&(id, sign)| Ok((region_spec(id, scene)?, i32::from(sign))))
            .collect::<Result<Vec<_>>>()?;
        let (a, b, c, g) = (scene.a(), scene.b(), scene.c(), scene.g());
        Ok(Decomposition {
            signed,
            hypotenuse: region_spec(RegionId::SC, scene)?,
            lines: vec![(a, c), (c, b), (a, g), (c, g), (g, b), (a, b)],
            circles: [scene.circle_d(), scene.circle_e(), scene.circle_f()],
        })
    }

    /// `(m(p), s(p))`: signed decomposition count and hypotenuse-semicircle indicator.
    pub fn multiplicity_at(&self, p: Point) -> (i32, i32) {
        let m = self
            .signed
            .iter()
            .filter(|(spec, _)| spec.contains(p))
            .map(|(_, sign)| sign)
            .sum();
        (m, i32::from(self.hypotenuse.contains(p)))
    }

    /// Within `epsilon` of a chord line or a circle.
    pub fn near_boundary(&self, p: Point, epsilon: f64) -> bool {
        self.lines
            .iter()
            .any(|&(from, to)| line_distance(p, from, to) <= epsilon)
            || self.circles.iter().any(|c| c.boundary_distance(p) <= epsilon)
    }
}

pub fn multiplicity_check(
    scene: &ConstructionScene,
    samples: u64,
    seed: u64,
    epsilon: f64,
) -> Result<MultiplicityReport> {
    multiplicity_check_with(scene, samples, seed, epsilon, Execution::default())
}

pub fn multiplicity_check_with(
    scene: &ConstructionScene,
    samples: u64,
    seed: u64,
    epsilon: f64,
    exec: Execution,
) -> Result<MultiplicityReport> {
    if samples < MIN_SAMPLES {
        return domain(format!("at least {MIN_SAMPLES} samples are required (got {samples})"));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return domain(format!("epsilon must be positive (got {epsilon})"));
    }
    let decomposition = Decomposition::new(scene)?;
    let domain_box = SampleBox::around(&scene.circle_d());
    let counts: MultiplicityCounts =
        sample_points(domain_box, samples, seed, exec, |acc: &mut MultiplicityCounts, p| {
            if decomposition.near_boundary(p, epsilon) {
                acc.excluded += 1;
            } else {
                let (m, s) = decomposition.multiplicity_at(p);
                if m != s {
                    acc.violations += 1;
                }
            }
        });
    Ok(MultiplicityReport {
        samples,
        violations: counts.violations,
        excluded_near_boundary: counts.excluded,
        epsilon,
        seed,
    })
}
