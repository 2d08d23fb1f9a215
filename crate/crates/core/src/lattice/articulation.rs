use super::{DigitalImage, PointSet};
use crate::error::Result;

impl DigitalImage {
    /// Cut vertices of the adjacency graph, by iterative depth-first low-link.
    pub fn articulation_points(&self) -> Result<PointSet> {
        self.require_connected()?;
        let n = self.len();
        let mut cut = self.empty_set();
        if n < 3 {
            return Ok(cut);
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        // (vertex, parent, next neighbor position)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(0, None, 0)];
        disc[0] = 0;
        low[0] = 0;
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            let next = self.neighbors(v).get(top.2).copied();
            if let Some(w) = next {
                top.2 += 1;
                if disc[w] == usize::MAX {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, Some(v), 0));
                } else if Some(w) != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        cut.insert(p);
                    }
                }
            }
        }
        if root_children > 1 {
            cut.insert(0);
        }
        Ok(cut)
    }

    /// Articulation points by deleting each point and recounting components.
    pub fn articulation_points_bruteforce(&self) -> Result<PointSet> {
        self.require_connected()?;
        let mut cut = self.empty_set();
        for v in 0..self.len() {
            let removed = PointSet::from_indices(self.len(), [v]);
            if self.component_labels(&removed).1 > 1 {
                cut.insert(v);
            }
        }
        Ok(cut)
    }
}
