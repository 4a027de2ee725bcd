//! The Mullineux map through its symbol: iterated `p`-rim removal,
//! the column transformation, and reconstruction by rim insertion.
//!
//! The `p`-rim of a diagram is walked row by row from the top. A segment
//! holds at most `p` rim nodes; in each row it takes the rightmost rim
//! nodes it still has budget for. A segment that runs out of budget inside
//! a row stops there and the next segment begins at the rightmost rim node
//! of the following row, so every row loses at least one node.
//!
//! Nothing here needs `p` to be prime.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_modulus, Error, Result};
use crate::partition::Partition;

/// Rim nodes in row `j` (zero-based) of `parts`.
fn rim_nodes(parts: &[u64], j: usize) -> u64 {
    let below = parts.get(j + 1).copied().unwrap_or(0);
    if below == 0 {
        parts[j]
    } else {
        parts[j] - below + 1
    }
}

/// Nodes removed from each row by one `p`-rim removal.
pub fn rim_counts(lambda: &Partition, p: u64) -> Vec<u64> {
    let parts = lambda.parts();
    let mut budget = p;
    let mut counts = Vec::with_capacity(parts.len());
    for j in 0..parts.len() {
        let taken = budget.min(rim_nodes(parts, j));
        counts.push(taken);
        budget = if taken == budget { p } else { budget - taken };
    }
    counts
}

/// Removes the `p`-rim; returns what is left and the rim size. The empty
/// partition has an empty rim.
pub fn remove_p_rim(lambda: &Partition, p: u64) -> (Partition, u64) {
    let counts = rim_counts(lambda, p);
    let rest: Vec<u64> = lambda
        .parts()
        .iter()
        .zip(&counts)
        .map(|(x, c)| x - c)
        .collect();
    let rest = Partition::new(rest).expect("rim removal leaves a partition");
    (rest, counts.iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymbolColumn {
    /// Size of the removed rim.
    pub rim: u64,
    /// Rows of the partition the rim was removed from.
    pub rows: u64,
}

/// Columns `(a_i, r_i)` of iterated `p`-rim removal, first removal first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SymbolRepr", into = "SymbolRepr")]
pub struct MullineuxSymbol {
    p: u64,
    columns: Vec<SymbolColumn>,
}

#[derive(Serialize, Deserialize)]
struct SymbolRepr {
    p: u64,
    a: Vec<u64>,
    r: Vec<u64>,
}

impl TryFrom<SymbolRepr> for MullineuxSymbol {
    type Error = Error;

    fn try_from(repr: SymbolRepr) -> Result<Self> {
        if repr.a.len() != repr.r.len() {
            return Err(Error::InvalidSymbol(format!(
                "{} rim sizes but {} row counts",
                repr.a.len(),
                repr.r.len()
            )));
        }
        let columns = repr
            .a
            .into_iter()
            .zip(repr.r)
            .map(|(rim, rows)| SymbolColumn { rim, rows })
            .collect();
        MullineuxSymbol::new(repr.p, columns)
    }
}

impl From<MullineuxSymbol> for SymbolRepr {
    fn from(s: MullineuxSymbol) -> Self {
        SymbolRepr {
            p: s.p,
            a: s.columns.iter().map(|c| c.rim).collect(),
            r: s.columns.iter().map(|c| c.rows).collect(),
        }
    }
}

impl MullineuxSymbol {
    pub fn new(p: u64, columns: Vec<SymbolColumn>) -> Result<Self> {
        check_modulus(p)?;
        if let Some(c) = columns.iter().find(|c| c.rim == 0 || c.rows == 0) {
            return Err(Error::InvalidSymbol(format!(
                "column ({}; {}) has a zero entry",
                c.rim, c.rows
            )));
        }
        if columns.windows(2).any(|w| w[0].rows < w[1].rows) {
            return Err(Error::InvalidSymbol("row counts increase".into()));
        }
        Ok(MullineuxSymbol { p, columns })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn columns(&self) -> &[SymbolColumn] {
        &self.columns
    }

    pub fn rims(&self) -> Vec<u64> {
        self.columns.iter().map(|c| c.rim).collect()
    }

    pub fn rows(&self) -> Vec<u64> {
        self.columns.iter().map(|c| c.rows).collect()
    }

    pub fn size(&self) -> u64 {
        self.columns.iter().map(|c| c.rim).sum()
    }

    /// The partition with this symbol, built by inserting rims from the
    /// last column back to the first.
    pub fn reconstruct(&self) -> Result<Partition> {
        let mut acc = Partition::empty();
        for col in self.columns.iter().rev() {
            acc = insert_p_rim(&acc, col.rim, col.rows as usize, self.p)?;
        }
        Ok(acc)
    }
}

pub fn mullineux_symbol(lambda: &Partition, p: u64) -> Result<MullineuxSymbol> {
    check_modulus(p)?;
    if !lambda.is_p_regular(p) {
        return Err(Error::NotPRegular {
            partition: lambda.clone(),
            p,
        });
    }
    let mut columns = Vec::new();
    let mut rest = lambda.clone();
    while !rest.is_empty() {
        let rows = rest.len() as u64;
        let (next, rim) = remove_p_rim(&rest, p);
        columns.push(SymbolColumn { rim, rows });
        rest = next;
    }
    MullineuxSymbol::new(p, columns)
}

/// Keeps the rim sizes and replaces each row count `r` by
/// `a - r + e`, where `e` is 1 when `p` does not divide `a` and 0 otherwise.
pub fn transform_symbol(symbol: &MullineuxSymbol) -> Result<MullineuxSymbol> {
    let p = symbol.p;
    let columns = symbol
        .columns
        .iter()
        .map(|c| {
            let eps = u64::from(c.rim % p != 0);
            match (c.rim + eps).checked_sub(c.rows) {
                Some(rows) if rows >= 1 => Ok(SymbolColumn { rim: c.rim, rows }),
                _ => Err(Error::InvalidSymbol(format!(
                    "column ({}; {}) transforms to a non-positive row count",
                    c.rim, c.rows
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    MullineuxSymbol::new(p, columns)
}

/// The unique `nu` with exactly `rows` rows whose `p`-rim has `rim` nodes
/// and leaves `base`.
///
/// Per-row removal counts are determined segment by segment: once the
/// first count of a segment is fixed, the rest of that segment is forced
/// by the row gaps of `base`. Only segment starts branch, and every
/// segment except the last holds exactly `p` nodes, so a memoised search
/// over (start row, nodes used) settles existence and uniqueness.
pub fn insert_p_rim(base: &Partition, rim: u64, rows: usize, p: u64) -> Result<Partition> {
    check_modulus(p)?;
    let no_insertion = || Error::NoInsertion {
        base: base.clone(),
        rim,
        rows,
        p,
    };
    if base.len() > rows {
        return Err(no_insertion());
    }
    if rows == 0 {
        return if rim == 0 && base.is_empty() {
            Ok(Partition::empty())
        } else {
            Err(no_insertion())
        };
    }
    let padded: Vec<u64> = (0..rows).map(|j| base.part(j)).collect();
    let search = InsertionSearch {
        base: &padded,
        rim,
        p,
        memo: HashMap::new(),
    };
    let counts = search.solve().map_err(|many| {
        if many {
            Error::AmbiguousInsertion {
                base: base.clone(),
                rim,
                rows,
            }
        } else {
            no_insertion()
        }
    })?;
    let nu = Partition::new(padded.iter().zip(&counts).map(|(x, c)| x + c).collect())
        .map_err(|_| no_insertion())?;
    let (rest, removed) = remove_p_rim(&nu, p);
    if nu.len() != rows || rest != *base || removed != rim {
        return Err(no_insertion());
    }
    Ok(nu)
}

struct Segment {
    counts: Vec<u64>,
    /// Last row the segment touches.
    end: usize,
    /// Used its whole budget of `p`.
    full: bool,
}

struct InsertionSearch<'a> {
    base: &'a [u64],
    rim: u64,
    p: u64,
    memo: HashMap<(usize, u64), u8>,
}

impl InsertionSearch<'_> {
    fn last(&self) -> usize {
        self.base.len() - 1
    }

    fn gap(&self, j: usize) -> u64 {
        self.base[j] - self.base[j + 1]
    }

    /// Largest first count for a segment starting at row `j`: the segment
    /// above ended in row `j - 1`, which needs at least its budget in rim
    /// nodes.
    fn start_limit(&self, j: usize) -> u64 {
        if j == 0 {
            self.p
        } else {
            self.p.min(self.gap(j - 1) + 1)
        }
    }

    fn segment(&self, start: usize, first: u64) -> Option<Segment> {
        let mut counts = vec![first];
        let mut budget = self.p - first;
        let mut row = start;
        loop {
            if budget == 0 {
                return Some(Segment {
                    counts,
                    end: row,
                    full: true,
                });
            }
            if row == self.last() {
                // a short final segment clears the whole bottom row
                return (self.base[row] == 0).then_some(Segment {
                    counts,
                    end: row,
                    full: false,
                });
            }
            let next = self.gap(row) + 1;
            if next > budget {
                return None;
            }
            counts.push(next);
            budget -= next;
            row += 1;
        }
    }

    /// Completions from a segment starting at `start`, capped at 2.
    fn count(&mut self, start: usize, used: u64) -> u8 {
        if let Some(&n) = self.memo.get(&(start, used)) {
            return n;
        }
        let mut total = 0u8;
        for first in 1..=self.start_limit(start) {
            let Some(seg) = self.segment(start, first) else {
                continue;
            };
            let now = used + seg.counts.iter().sum::<u64>();
            if now > self.rim {
                continue;
            }
            if seg.end == self.last() {
                if now == self.rim {
                    total += 1;
                }
            } else if seg.full {
                total += self.count(seg.end + 1, now);
            }
            if total >= 2 {
                total = 2;
                break;
            }
        }
        self.memo.insert((start, used), total);
        total
    }

    /// Per-row counts of the unique solution; `Err(true)` when there are
    /// several, `Err(false)` when there are none.
    fn solve(mut self) -> std::result::Result<Vec<u64>, bool> {
        match self.count(0, 0) {
            0 => return Err(false),
            1 => {}
            _ => return Err(true),
        }
        let mut counts = Vec::with_capacity(self.base.len());
        let (mut start, mut used) = (0usize, 0u64);
        'walk: loop {
            for first in 1..=self.start_limit(start) {
                let Some(seg) = self.segment(start, first) else {
                    continue;
                };
                let now = used + seg.counts.iter().sum::<u64>();
                if now > self.rim {
                    continue;
                }
                if seg.end == self.last() {
                    if now == self.rim {
                        counts.extend(seg.counts);
                        break 'walk;
                    }
                } else if seg.full && self.count(seg.end + 1, now) == 1 {
                    counts.extend(seg.counts);
                    start = seg.end + 1;
                    used = now;
                    continue 'walk;
                }
            }
            unreachable!("count() found a solution the walk cannot retrace");
        }
        Ok(counts)
    }
}

/// `m(lambda)`, the label of `D^lambda` tensored with the sign.
pub fn mullineux_map(lambda: &Partition, p: u64) -> Result<Partition> {
    let symbol = mullineux_symbol(lambda, p)?;
    transform_symbol(&symbol)?.reconstruct()
}

/// The same involution on `p`-restricted labels: `lambda -> m(lambda')'`.
pub fn mullineux_restricted(lambda: &Partition, p: u64) -> Result<Partition> {
    check_modulus(p)?;
    if !lambda.is_p_restricted(p) {
        return Err(Error::NotPRestricted {
            partition: lambda.clone(),
            p,
        });
    }
    Ok(mullineux_map(&lambda.conjugate(), p)?.conjugate())
}

/// Restricted label of the trivial module of the symmetric group on `n`
/// letters, computed as `m((n))'`.
pub fn tau(n: u64, p: u64) -> Result<Partition> {
    let row = Partition::new(vec![n])?;
    Ok(mullineux_map(&row, p)?.conjugate())
}

/// `(p-1, ..., p-1, a)` with `ceil(n / (p-1))` parts.
pub fn tau_closed_form(n: u64, p: u64) -> Result<Partition> {
    check_modulus(p)?;
    let width = p - 1;
    let count = n.div_ceil(width);
    let mut parts = vec![width; count as usize];
    if let Some(last) = parts.last_mut() {
        *last = n - width * (count - 1);
    }
    Partition::new(parts)
}

/// Whether `m(hat(lambda)) = (p-1) lambda`.
pub fn verify_hat_identity(lambda: &Partition, p: u64) -> Result<bool> {
    let hat = lambda.hat(p)?;
    Ok(mullineux_map(&hat, p)? == lambda.scale(p - 1)?)
}

/// `m(p^2 lambda) - m(p lambda)` for distinct-part `lambda`; fails unless
/// it equals `p * hat(lambda)`.
pub fn steinberg_difference(lambda: &Partition, p: u64) -> Result<Partition> {
    let hat = lambda.hat(p)?;
    let once = mullineux_map(&lambda.scale(p)?, p)?;
    let twice = mullineux_map(&lambda.scale(p.checked_mul(p).ok_or_else(|| {
        Error::Overflow(format!("{p}^2"))
    })?)?, p)?;
    let diff = twice.subtract(&once)?;
    let expected = hat.scale(p)?;
    if diff != expected {
        return Err(Error::IdentityFailed(format!(
            "m(p^2 lambda) - m(p lambda) = ({diff}), expected ({expected})"
        )));
    }
    Ok(diff)
}
