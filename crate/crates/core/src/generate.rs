//! Random connected images and lattice symmetries for property testing.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, LatticeSymmetry, Point};

/// All `c_u` neighbor offsets in `Z^dim`.
fn offsets(dim: usize, u: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(dim as u32) {
        let mut c = code;
        let v: Vec<i64> = (0..dim)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        let moved = v.iter().filter(|&&d| d != 0).count();
        if (1..=u).contains(&moved) {
            out.push(v);
        }
    }
    out
}

/// A connected image of exactly `size` points grown from the origin, each
/// new point a random `c_u` neighbor of a random existing one.
pub fn random_connected_image<R: Rng + ?Sized>(rng: &mut R, dim: usize, u: usize, size: usize) -> Result<DigitalImage> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if u == 0 || u > dim {
        return Err(Error::AdjacencyOutOfRange { u, dim });
    }
    if size == 0 {
        return Err(Error::EmptyImage);
    }
    let steps = offsets(dim, u);
    let mut members = vec![Point::new(vec![0; dim])];
    let mut seen: BTreeSet<Point> = members.iter().cloned().collect();
    while members.len() < size {
        let base = members.choose(rng).unwrap();
        let step = steps.choose(rng).unwrap();
        let p = Point::new(base.coords().iter().zip(step).map(|(a, b)| a + b).collect::<Vec<_>>());
        if seen.insert(p.clone()) {
            members.push(p);
        }
    }
    DigitalImage::new(dim, u, members)
}

/// Like [`random_connected_image`] with the size drawn from `sizes`.
pub fn random_image_in<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    u: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> Result<DigitalImage> {
    let size = rng.gen_range(sizes);
    random_connected_image(rng, dim, u, size)
}

/// A uniformly random signed permutation with translation in
/// `[-max_shift, max_shift]^dim`.
pub fn random_symmetry<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_shift: i64) -> LatticeSymmetry {
    let mut permutation: Vec<usize> = (0..dim).collect();
    permutation.shuffle(rng);
    let reflections = (0..dim).map(|_| rng.gen()).collect();
    let translation = (0..dim).map(|_| rng.gen_range(-max_shift..=max_shift)).collect();
    LatticeSymmetry::new(permutation, reflections, translation).expect("valid by construction")
}
