//! Images that recur in examples and tests.

use crate::lattice::{DigitalImage, Point};

/// The ten-point planar image with articulation points `(1,2)` and `(2,1)`,
/// under `c_2`.
pub fn kite() -> DigitalImage {
    DigitalImage::planar(2, &KITE).unwrap()
}

pub const KITE: [(i64, i64); 10] = [
    (0, 1),
    (1, 2),
    (2, 1),
    (3, 0),
    (3, 1),
    (3, 2),
    (4, 1),
    (4, 2),
    (4, 3),
    (5, 2),
];

/// The kite's minimal freezing set.
pub const KITE_FREEZING: [(i64, i64); 4] = [(0, 1), (3, 0), (4, 3), (5, 2)];

/// `{(x,y) : |x| + |y| = 2}` under `c_2`, a simple closed curve of 8 points.
pub fn diamond() -> DigitalImage {
    let pts = (-2i64..=2).flat_map(|x| {
        let r = 2 - x.abs();
        [(x, r), (x, -r)]
    });
    DigitalImage::new(2, 2, pts.map(|(x, y)| Point::from([x, y])).collect::<std::collections::BTreeSet<_>>()).unwrap()
}

/// `[0,2]^2` under `c_u`.
pub fn square(adjacency: usize) -> DigitalImage {
    let pts: Vec<(i64, i64)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    DigitalImage::planar(adjacency, &pts).unwrap()
}

/// Six points whose slanted edge `(0,2),(1,1),(2,0)` is not pinned by its
/// endpoints under `c_1`.
pub fn staircase() -> DigitalImage {
    DigitalImage::planar(1, &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]).unwrap()
}

/// `[0,2]` in `Z` under `c_1`.
pub fn interval() -> DigitalImage {
    DigitalImage::new(1, 1, (0..3).map(|x| Point::from([x]))).unwrap()
}

pub fn points(pairs: &[(i64, i64)]) -> Vec<Point> {
    pairs.iter().map(|&(x, y)| Point::from([x, y])).collect()
}
