use std::collections::VecDeque;

use super::{DigitalImage, Point};
use crate::error::{Error, Result};

/// Shortest-path summary between two points of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathInfo {
    /// Edge count of a shortest path.
    pub distance: usize,
    /// Number of shortest paths, saturating at 2.
    pub shortest_path_count: u8,
    /// Point indices of the shortest path, present iff it is unique.
    pub unique_path: Option<Vec<usize>>,
}

impl PathInfo {
    pub fn is_unique(&self) -> bool {
        self.shortest_path_count == 1
    }
}

/// Breadth-first layering from one source with per-node shortest-path
/// multiplicities capped at 2.
#[derive(Debug, Clone)]
pub struct PathTree {
    source: usize,
    dist: Vec<Option<usize>>,
    count: Vec<u8>,
    pred: Vec<Option<usize>>,
}

impl PathTree {
    pub fn new(image: &DigitalImage, source: usize) -> Self {
        let n = image.len();
        let mut dist = vec![None; n];
        let mut count = vec![0u8; n];
        let mut pred = vec![None; n];
        dist[source] = Some(0);
        count[source] = 1;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &w in image.neighbors(v) {
                match dist[w] {
                    None => {
                        dist[w] = Some(dv + 1);
                        count[w] = count[v];
                        pred[w] = Some(v);
                        queue.push_back(w);
                    }
                    Some(dw) if dw == dv + 1 => {
                        count[w] = (count[w] + count[v]).min(2);
                    }
                    Some(_) => {}
                }
            }
        }
        Self {
            source,
            dist,
            count,
            pred,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn distance(&self, target: usize) -> Option<usize> {
        self.dist[target]
    }

    /// Shortest path count to `target`, saturating at 2; 0 if unreachable.
    pub fn count(&self, target: usize) -> u8 {
        self.count[target]
    }

    /// The shortest path from the source to `target` when it is unique.
    pub fn unique_path(&self, target: usize) -> Option<Vec<usize>> {
        if self.count[target] != 1 {
            return None;
        }
        let mut path = vec![target];
        let mut v = target;
        while let Some(p) = self.pred[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        Some(path)
    }

    pub fn info(&self, target: usize) -> Option<PathInfo> {
        Some(PathInfo {
            distance: self.dist[target]?,
            shortest_path_count: self.count[target],
            unique_path: self.unique_path(target),
        })
    }
}

impl DigitalImage {
    pub fn shortest_path_info(&self, a: &Point, b: &Point) -> Result<PathInfo> {
        let (ia, ib) = (self.require(a)?, self.require(b)?);
        self.path_info(ia, ib)
            .ok_or_else(|| Error::NoPath(a.clone(), b.clone()))
    }

    /// Index form of [`shortest_path_info`](Self::shortest_path_info); `None`
    /// when the points are in different components.
    pub fn path_info(&self, a: usize, b: usize) -> Option<PathInfo> {
        PathTree::new(self, a).info(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pts(x: &DigitalImage, path: &[usize]) -> Vec<Point> {
        path.iter().map(|&i| x.point(i).clone()).collect()
    }

    #[test]
    fn kite_unique_paths() {
        let kite = fixtures::kite();
        let info = kite
            .shortest_path_info(&Point::from([0, 1]), &Point::from([3, 0]))
            .unwrap();
        assert_eq!(info.distance, 3);
        assert_eq!(info.shortest_path_count, 1);
        assert_eq!(
            pts(&kite, info.unique_path.as_ref().unwrap()),
            vec![
                Point::from([0, 1]),
                Point::from([1, 2]),
                Point::from([2, 1]),
                Point::from([3, 0])
            ]
        );

        let info = kite
            .shortest_path_info(&Point::from([3, 0]), &Point::from([5, 2]))
            .unwrap();
        assert_eq!(info.distance, 2);
        assert_eq!(
            pts(&kite, info.unique_path.as_ref().unwrap()),
            vec![Point::from([3, 0]), Point::from([4, 1]), Point::from([5, 2])]
        );
    }

    #[test]
    fn non_unique_path_has_no_reconstruction() {
        let kite = fixtures::kite();
        let info = kite
            .shortest_path_info(&Point::from([3, 0]), &Point::from([3, 2]))
            .unwrap();
        assert_eq!(info.distance, 2);
        assert_eq!(info.shortest_path_count, 2);
        assert!(info.unique_path.is_none());
    }

    #[test]
    fn trivial_path() {
        let kite = fixtures::kite();
        let p = Point::from([4, 2]);
        let info = kite.shortest_path_info(&p, &p).unwrap();
        assert_eq!(info.distance, 0);
        assert_eq!(info.shortest_path_count, 1);
        assert_eq!(pts(&kite, info.unique_path.as_ref().unwrap()), vec![p]);
    }

    #[test]
    fn disconnected_points_error() {
        let x = DigitalImage::planar(1, &[(0, 0), (5, 5)]).unwrap();
        let err = x
            .shortest_path_info(&Point::from([0, 0]), &Point::from([5, 5]))
            .unwrap_err();
        assert!(matches!(err, Error::NoPath(_, _)));
    }

    #[test]
    fn count_saturates() {
        // 3x3 square under c_1: many shortest paths between opposite corners.
        let sq = fixtures::square(1);
        let info = sq
            .shortest_path_info(&Point::from([0, 0]), &Point::from([2, 2]))
            .unwrap();
        assert_eq!(info.distance, 4);
        assert_eq!(info.shortest_path_count, 2);
    }
}
