//! Exact index calculus for periodic Floer homology on the mapping torus of a
//! Dehn twist, and evaluation of the cobordism map induced by the elementary
//! Lefschetz fibration over the disk.
//!
//! All index combinatorics run in exact integer arithmetic. The geometric
//! modules (`profile`, `geometry`, `energy`) use `f64` and report
//! deviations against explicit tolerances.

pub mod cobordism;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod index;
pub mod orbit;
pub mod polygon;
pub mod profile;
pub mod report;
pub mod selfcheck;

pub use error::{Error, Result};
pub use orbit::{MorseConfig, OrbitKind, OrbitSet, Slope};
pub use profile::TwistProfile;
