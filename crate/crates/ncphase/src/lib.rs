//! Phase-space geometry with deformed commutation relations.
//!
//! The crate builds constant-coefficient symplectic structures out of
//! position-position, momentum-momentum, and position-momentum bracket
//! deformations, derives the compatible almost complex structure and metric,
//! propagates the deformation into the relativistic dispersion relation, and
//! turns gamma-ray-burst fluence catalogs into upper bounds on the momentum
//! deformation scale via cosmological light-travel distances.
//!
//! Modules:
//! - [`params`]: the deformation triple (θ, η, ħ).
//! - [`layout`]: coordinate slot bookkeeping for spatial and extended frames.
//! - [`symplectic`]: skew forms, inversion, brackets, frame maps, extension.
//! - [`kahler`]: compatible (ω, J, g) triplets, volume forms, limits.
//! - [`dispersion`]: deformed dispersion, group velocity, boosts.
//! - [`cosmology`]: light-travel distance in a Friedmann background.
//! - [`grb`]: catalog ingestion and the momentum-scale bound pipeline.
//! - [`report`]: JSON-serializable reports backing the CLI subcommands.

pub mod constants;
pub mod cosmology;
pub mod dispersion;
pub mod grb;
pub mod kahler;
pub mod layout;
pub mod params;
pub mod quadrature;
pub mod report;
pub mod symplectic;

pub use constants::PhysicalConstants;
pub use kahler::{AlmostComplexStructure, CompatibleTriplet};
pub use layout::{CoordinateLayout, Frame};
pub use params::NCParams;
pub use symplectic::{FormRep, LinearFrameMap, SkewForm};
