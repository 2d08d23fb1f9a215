use super::{Oracle, SearchBudget};
use crate::error::{Error, Result};
use crate::lattice::PointSet;

/// Default point cap for brute-force excludability.
pub const EXCLUDABLE_CAP: usize = 12;

/// Hard limit on table size regardless of the requested cap.
const TABLE_LIMIT: usize = 24;

const UNKNOWN: u8 = 0;
const FROZEN: u8 = 1;
const NOT_FROZEN: u8 = 2;

/// Freezing status of every subset of a small image, indexed by bitmask over
/// the canonical point order.
#[derive(Debug, Clone)]
pub struct FreezingTable {
    len: usize,
    frozen: Vec<bool>,
    pub queries: usize,
}

impl FreezingTable {
    pub fn is_frozen(&self, set: &PointSet) -> bool {
        self.frozen[set.to_mask() as usize]
    }

    pub fn is_frozen_mask(&self, mask: u64) -> bool {
        self.frozen[mask as usize]
    }

    /// All freezing sets, by increasing mask.
    pub fn frozen_sets(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.frozen
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(m, _)| PointSet::from_mask(self.len, m as u64))
    }

    /// Whether `A \ w` freezes for every freezing `A` with `A \ w` nonempty.
    pub fn is_excludable(&self, w: &PointSet) -> bool {
        let wm = w.to_mask();
        self.frozen.iter().enumerate().all(|(m, &f)| {
            let rest = m as u64 & !wm;
            !f || rest == 0 || self.frozen[rest as usize]
        })
    }
}

impl Oracle<'_> {
    /// Decides freezing for all `2^#X` subsets. Supersets of freezing sets
    /// are marked frozen without search, and every refuting witness marks all
    /// subsets of its fixed-point set as non-freezing.
    pub fn freezing_table(&self, cap: usize, budget: SearchBudget) -> Result<FreezingTable> {
        let n = self.image().len();
        let cap = cap.min(TABLE_LIMIT);
        if n > cap {
            return Err(Error::CapExceeded {
                what: "subset enumeration",
                cap,
                size: n,
            });
        }
        let total = 1usize << n;
        let mut status = vec![UNKNOWN; total];
        let mut queries = 0;
        for mask in 0..total {
            if status[mask] != UNKNOWN {
                continue;
            }
            let swollen = (0..n).any(|i| mask >> i & 1 == 1 && status[mask & !(1 << i)] == FROZEN);
            if swollen {
                status[mask] = FROZEN;
                continue;
            }
            queries += 1;
            let v = self.decide(&PointSet::from_mask(n, mask as u64), budget)?;
            match v.witness() {
                None => status[mask] = FROZEN,
                Some(f) => {
                    let fix = f.fixed_points().to_mask() as usize;
                    // every submask of `fix`, including 0
                    let mut sub = fix;
                    loop {
                        status[sub] = NOT_FROZEN;
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & fix;
                    }
                }
            }
        }
        Ok(FreezingTable {
            len: n,
            frozen: status.into_iter().map(|s| s == FROZEN).collect(),
            queries,
        })
    }

    /// Brute-force excludability of `w` over every freezing set.
    pub fn is_excludable_bruteforce(&self, w: &PointSet, cap: usize, budget: SearchBudget) -> Result<bool> {
        self.check_set(w)?;
        Ok(self.freezing_table(cap, budget)?.is_excludable(w))
    }
}
