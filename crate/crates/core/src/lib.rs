//! Verification engine for the circle-segment decomposition of the
//! hypotenuse semicircle of a right triangle.
//!
//! Given legs `a` and `b`, the crate builds the three-circle figure (circles on
//! each side as diameter, altitude foot `G`), evaluates every segment and
//! semicircle area in closed form, and checks the identity
//!
//! ```text
//! SC = SA + SB + RA + RB - RC - RD - RE - RF
//! ```
//!
//! three ways: exact rational coefficients ([`symbolic`]), chord-geometry
//! quadrature and Monte-Carlo integration ([`oracle`]), and a pointwise signed
//! multiplicity count. Collecting the ledger leaves
//! `πc²/8 - ab/2 + ab(a²+b²)/(2c²)`, so equating it with `πc²/8` gives
//! `a² + b² = c²`.
//!
//! The hypotenuse is computed as the Euclidean distance `|AB|`. The crate
//! checks area identities numerically and symbolically; it does not claim
//! that its floating-point arithmetic reproduces a non-circular proof.
//!
//! The `parallel` feature (on by default) runs sampling on rayon. Results are
//! identical with the feature off.

pub mod error;
pub mod exec;
pub mod geometry;
pub mod numeric;
pub mod oracle;
pub mod region;
pub mod render;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{
    build_triangle, chord_side, construct_scene, measure_angle, CircleSpec, ConstructionScene, Point,
    RightTriangle,
};
pub use oracle::{
    mc_region_area, multiplicity_check, quadrature_segment_area, MultiplicityReport, OracleEstimate,
};
pub use region::{
    alt_triangle_areas, altitude_lengths, angle_ledger, region_area, region_spec, similar_lengths,
    AngleLedger, RegionId, RegionSpec,
};
pub use render::{render_figure, FigureId, RenderOptions};
pub use symbolic::{
    decomposition_ledger, evaluate, pythagoras_residual, region_symbolic, residual_polynomial_identity,
    BasisTerm, SymbolicArea,
};
pub use verify::{verify_all, CheckResult, VerificationReport, VerifyConfig};
