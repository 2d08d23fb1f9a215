//! Digital images as finite point sets of `Z^n` under `c_u` adjacency, and the
//! graph algorithms the rest of the crate builds on.

mod articulation;
mod image;
mod paths;
mod point;
mod pointset;
mod symmetry;

pub use image::DigitalImage;
pub use paths::{PathInfo, PathTree};
pub use point::{adjacent, format_point_list, parse_point_list, Point};
pub use pointset::PointSet;
pub use symmetry::{Correspondence, LatticeSymmetry};
