use super::{DigitalImage, Point, PointSet};
use crate::error::{Error, Result};

/// A symmetry of `Z^n` that preserves every `c_u`: a coordinate permutation,
/// per-axis reflections, then a translation.
///
/// Output coordinate `k` is `±x[permutation[k]] + translation[k]`, negated
/// when `reflections[k]` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSymmetry {
    permutation: Vec<usize>,
    reflections: Vec<bool>,
    translation: Vec<i64>,
}

impl LatticeSymmetry {
    pub fn new(permutation: Vec<usize>, reflections: Vec<bool>, translation: Vec<i64>) -> Result<Self> {
        let n = permutation.len();
        if reflections.len() != n || translation.len() != n {
            return Err(Error::InvalidSymmetry(format!(
                "component lengths differ: {n}, {}, {}",
                reflections.len(),
                translation.len()
            )));
        }
        let mut seen = vec![false; n];
        for &k in &permutation {
            if k >= n || std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidSymmetry(format!("{permutation:?} is not a permutation")));
            }
        }
        Ok(Self {
            permutation,
            reflections,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            permutation: (0..dim).collect(),
            reflections: vec![false; dim],
            translation: vec![0; dim],
        }
    }

    pub fn translation(offset: Vec<i64>) -> Self {
        let n = offset.len();
        Self {
            translation: offset,
            ..Self::identity(n)
        }
    }

    pub fn dim(&self) -> usize {
        self.permutation.len()
    }

    pub fn apply(&self, p: &Point) -> Point {
        let coords: Vec<i64> = (0..self.dim())
            .map(|k| {
                let c = p.coord(self.permutation[k]);
                let c = if self.reflections[k] { -c } else { c };
                c + self.translation[k]
            })
            .collect();
        Point::from(coords)
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut permutation = vec![0; n];
        let mut reflections = vec![false; n];
        let mut translation = vec![0; n];
        for k in 0..n {
            let j = self.permutation[k];
            permutation[j] = k;
            reflections[j] = self.reflections[k];
            // x_j = ±(y_k - t_k)
            let t = -self.translation[k];
            translation[j] = if self.reflections[k] { -t } else { t };
        }
        Self {
            permutation,
            reflections,
            translation,
        }
    }
}

/// Index correspondence between an image and its image under a symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    forward: Vec<usize>,
}

impl Correspondence {
    pub fn map_index(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn transport(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(self.forward.len(), set.iter().map(|i| self.forward[i]))
    }

    pub fn inverse(&self) -> Correspondence {
        let mut back = vec![0; self.forward.len()];
        for (i, &j) in self.forward.iter().enumerate() {
            back[j] = i;
        }
        Correspondence { forward: back }
    }
}

impl DigitalImage {
    /// The image of `X` under a lattice symmetry, with the induced point
    /// correspondence.
    pub fn apply_isometry(&self, g: &LatticeSymmetry) -> Result<(DigitalImage, Correspondence)> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: g.dim(),
            });
        }
        let moved: Vec<Point> = self.points().iter().map(|p| g.apply(p)).collect();
        let image = DigitalImage::new(self.dim(), self.adjacency(), moved.iter().cloned())?;
        let forward = moved.iter().map(|p| image.index_of(p).unwrap()).collect();
        Ok((image, Correspondence { forward }))
    }
}
