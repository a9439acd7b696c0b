//! Critical points of the Keplerian distance between two confocal elliptic
//! orbits, the MOID, reliability checks, optimal distance bounds, and the
//! planar special case.

pub mod bounds;
pub mod catalog;
pub mod critpoints;
pub mod orbits;
pub mod planar;
pub mod polyalg;
pub mod solver_ordinary;
pub mod solver_trig;

pub use orbits::{
    ecc_to_true, mutual_geometry, orientation_frame, true_to_ecc, AnomalyPair, KeplerianElements,
    MutualGeometry, OrbitFrame, Parametrization,
};
