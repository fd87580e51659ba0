//! Compounds of congruent cylinders touching the unit sphere, built from the
//! edges of dual pairs of Platonic solids.
//!
//! Each edge of a midsphere-normalized Platonic solid continues to a line
//! tangent to the unit sphere. Turning every such line by the same angle δ
//! about the sphere normal at its tangency point gives a one-parameter family
//! of symmetric configurations that runs from the solid (δ = 0) to its dual
//! (δ = π/2). The smallest distance `d` between two lines fixes the radius
//! `d / (2 - d)` of the largest congruent cylinders with those lines as
//! tangent rulings.
//!
//! Modules, bottom-up:
//!
//! - [`geom`]: vectors, rotations, tangent lines, line distances.
//! - [`platonic`]: solids, rotation groups, orbits of edge pairs.
//! - [`rotation`]: the δ-family, per-orbit distance branches and their
//!   closed forms.
//! - [`criticality`]: maxima, corners and zeros of the minimum distance, plus
//!   real root isolation for polynomials.
//! - [`compounds`]: the polygonal figures formed by intersecting lines at the
//!   zeros of the minimum distance.

pub mod compounds;
pub mod criticality;
pub mod geom;
pub mod platonic;
pub mod rotation;

pub use geom::{
    distance_from_radius, line_distance, radius_from_distance, rotate_tangent_line,
    rotation_about_axis, Rotation, TangentLine, Vec3,
};
pub use platonic::{PairKind, SolidKind};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation that should always succeed did not.
    #[error("internal error: {0}")]
    Internal(String),
    /// A compound component did not match any known figure.
    #[error("classification error: {0}")]
    Classification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
