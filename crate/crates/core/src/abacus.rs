//! Beta-numbers on a `p`-runner abacus, `p`-cores and block weights.

use serde::{Deserialize, Serialize};

use crate::error::{check_modulus, Error, Result};
use crate::partition::{enumerate_partitions, Partition, PartitionFilter};

/// Bead positions on `p` runners; position `x` sits on runner `x mod p`,
/// level `x / p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusDisplay {
    pub p: u64,
    beta: Vec<u64>,
}

impl AbacusDisplay {
    pub fn new(p: u64, beta: Vec<u64>) -> Result<Self> {
        check_modulus(p)?;
        if beta.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidAbacus(beta));
        }
        Ok(AbacusDisplay { p, beta })
    }

    /// Strictly decreasing.
    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    pub fn beads(&self) -> usize {
        self.beta.len()
    }

    /// One string per level, `o` for a bead and `.` for a gap, runner 0 on
    /// the left.
    pub fn runner_rows(&self) -> Vec<String> {
        let top = self.beta.first().map_or(0, |&x| x / self.p + 1);
        (0..top)
            .map(|level| {
                (0..self.p)
                    .map(|runner| {
                        if self.beta.contains(&(level * self.p + runner)) {
                            'o'
                        } else {
                            '.'
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Number of beads used when the caller does not pick one: the length
/// rounded up to a multiple of `p`.
pub fn default_beads(lambda: &Partition, p: u64) -> usize {
    let p = p.max(1) as usize;
    lambda.len().div_ceil(p) * p
}

pub fn to_abacus(lambda: &Partition, p: u64, beads: usize) -> Result<AbacusDisplay> {
    check_modulus(p)?;
    if beads < lambda.len() {
        return Err(Error::TooFewBeads {
            beads,
            rows: lambda.len(),
        });
    }
    let beta = (0..beads)
        .map(|i| lambda.part(i) + (beads - 1 - i) as u64)
        .collect();
    Ok(AbacusDisplay { p, beta })
}

pub fn from_abacus(display: &AbacusDisplay) -> Partition {
    let b = display.beta.len();
    let parts = display
        .beta
        .iter()
        .enumerate()
        .map(|(i, &x)| x - (b - 1 - i) as u64)
        .collect();
    Partition::new(parts).expect("strictly decreasing beads give a partition")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockData {
    pub p_core: Partition,
    pub weight: u64,
}

/// Slides every bead as far up its runner as it goes; the number of
/// single-level moves is the weight.
pub fn p_core(lambda: &Partition, p: u64) -> Result<BlockData> {
    p_core_with_beads(lambda, p, default_beads(lambda, p))
}

/// [`p_core`] on a display with an explicit bead count.
pub fn p_core_with_beads(lambda: &Partition, p: u64, beads: usize) -> Result<BlockData> {
    let display = to_abacus(lambda, p, beads)?;
    let mut per_runner = vec![0u64; p as usize];
    for &x in display.beta() {
        per_runner[(x % p) as usize] += 1;
    }
    let mut packed: Vec<u64> = Vec::with_capacity(display.beads());
    let mut packed_levels = 0u64;
    for (runner, &count) in per_runner.iter().enumerate() {
        for level in 0..count {
            packed.push(level * p + runner as u64);
            packed_levels += level;
        }
    }
    let levels: u64 = display.beta().iter().map(|x| x / p).sum();
    let weight = levels - packed_levels;
    packed.sort_unstable_by(|a, b| b.cmp(a));
    let core = from_abacus(&AbacusDisplay { p, beta: packed });
    Ok(BlockData {
        p_core: core,
        weight,
    })
}

/// Both `lambda` and its conjugate are `p` times a partition.
pub fn is_p_by_p(lambda: &Partition, p: u64) -> bool {
    lambda.parts().iter().all(|x| x % p == 0)
        && lambda
            .multiplicities()
            .iter()
            .all(|&(_, m)| m as u64 % p == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRow {
    pub p_core: Partition,
    pub weight: u64,
    pub members: Vec<Partition>,
    pub p_by_p: Vec<bool>,
}

/// All partitions of `d` grouped by `p`-core, blocks listed in order of
/// their first member under decreasing lexicographic enumeration.
pub fn block_census(d: u64, p: u64) -> Result<Vec<BlockRow>> {
    check_modulus(p)?;
    let mut rows: Vec<BlockRow> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for lambda in enumerate_partitions(d, PartitionFilter::All) {
        let block = p_core(&lambda, p)?;
        let slot = *index.entry(block.p_core.clone()).or_insert_with(|| {
            rows.push(BlockRow {
                p_core: block.p_core.clone(),
                weight: block.weight,
                members: Vec::new(),
                p_by_p: Vec::new(),
            });
            rows.len() - 1
        });
        rows[slot].p_by_p.push(is_p_by_p(&lambda, p));
        rows[slot].members.push(lambda);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn abacus_examples() {
        assert_eq!(to_abacus(&p(&[3, 2]), 3, 3).unwrap().beta(), &[5, 3, 0]);
        assert_eq!(to_abacus(&Partition::empty(), 3, 3).unwrap().beta(), &[2, 1, 0]);
        assert_eq!(to_abacus(&p(&[1]), 2, 1).unwrap().beta(), &[1]);
        for (lam, b) in [(p(&[3, 2]), 3), (Partition::empty(), 3), (p(&[1]), 1)] {
            assert_eq!(from_abacus(&to_abacus(&lam, 3, b).unwrap()), lam);
        }
        assert_eq!(
            to_abacus(&p(&[2, 1, 1]), 3, 2),
            Err(Error::TooFewBeads { beads: 2, rows: 3 })
        );
        assert!(AbacusDisplay::new(3, vec![1, 1]).is_err());
    }

    #[test]
    fn core_examples() {
        let b = p_core(&p(&[3, 2]), 3).unwrap();
        assert_eq!((b.p_core, b.weight), (p(&[1, 1]), 1));
        let b = p_core(&p(&[3, 3, 3]), 3).unwrap();
        assert_eq!((b.p_core, b.weight), (Partition::empty(), 3));
        let b = p_core(&p(&[2, 1]), 5).unwrap();
        assert_eq!((b.p_core, b.weight), (p(&[2, 1]), 0));
    }

    #[test]
    fn p_by_p_examples() {
        assert!(is_p_by_p(&p(&[3, 3, 3]), 3));
        assert!(!is_p_by_p(&p(&[6, 3, 3]), 3));
        assert!(is_p_by_p(&p(&[4, 4, 2, 2]), 2));
        assert!(is_p_by_p(&Partition::empty(), 2));
    }

    #[test]
    fn census_examples() {
        let rows = block_census(9, 3).unwrap();
        let principal = rows.iter().find(|r| r.p_core.is_empty()).unwrap();
        assert_eq!(principal.weight, 3);
        let at = principal.members.iter().position(|m| *m == p(&[3, 3, 3])).unwrap();
        assert!(principal.p_by_p[at]);
        assert_eq!(principal.p_by_p.iter().filter(|&&f| f).count(), 1);

        let rows = block_census(4, 5).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.weight == 0 && r.members.len() == 1));
        assert!(rows.iter().all(|r| r.members[0] == r.p_core && !r.p_by_p[0]));

        let rows = block_census(2, 2).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].members, vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(rows[0].weight, 1);
    }

    #[test]
    fn runner_picture() {
        let display = to_abacus(&p(&[3, 2]), 3, 3).unwrap();
        assert_eq!(display.runner_rows(), vec!["o..", "o.o"]);
    }
}
