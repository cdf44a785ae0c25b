//! Dynamics of the degree-4 Blaschke family B_a(z) = z³(z−a)/(1−āz):
//! critical orbits, hyperbolic parameter classification, circle dynamics,
//! and multiplier matching against comparison polynomial families.

pub mod atlas;
pub mod circle;
pub mod cli;
pub mod config;
pub mod error;
pub mod export;
pub mod family;
pub mod numerics;
pub mod orbit;
pub mod polys;
pub mod render;
pub mod solver;

pub use error::AtlasError;
pub use family::{critical_points, derivative, eval, BlaschkeParam, CriticalData, ExtComplex};
pub use atlas::{
    classify_parameter, connectivity_verdict, param_plane_grid, Connectivity, EscapeDirection,
    Label, ParamClassRecord, PlaneSpec,
};
pub use circle::{
    build_lift, lift_iterate, semiconjugacy, tongue_membership, LiftTable, SemiconjugacySample,
    TongueVerdict,
};
pub use orbit::{classify_fate, cycle_multiplier, cycle_symmetry, CycleRecord, Fate, FateTag, OrbitSpec};
pub use polys::{
    match_cubic_multiplier, poly_class_record, poly_classify, poly_plane_grid, PolyClassRecord,
    PolyFamily, PolyFamilyMember,
};
pub use solver::{find_superattracting, multiplier_at, solve_multiplier, SolveReport};
