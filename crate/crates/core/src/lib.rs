//! Freezing sets of finite digital images.
//!
//! A subset `A` of a digital image `(X, c_u)` *freezes* `X` when the only
//! continuous self-map fixing `A` pointwise is the identity. This crate
//! provides:
//!
//! * [`lattice`]: images, `c_u` adjacency, paths, articulation points, boundary;
//! * [`selfmap`]: self-maps and digital continuity;
//! * [`analysis`]: degree-one points, 1-coordinate local extrema, cardinality bounds;
//! * [`oracle`]: exhaustive search deciding freezing, minimality, and excludability;
//! * [`certifier`]: sound fixed-point propagation with replayable certificates.

pub mod analysis;
pub mod certifier;
mod error;
pub mod fixtures;
pub mod generate;
pub mod lattice;
pub mod oracle;
pub mod selfmap;

pub use error::{Error, Result};
pub use lattice::{adjacent, DigitalImage, LatticeSymmetry, PathInfo, Point, PointSet};
pub use selfmap::SelfMap;
