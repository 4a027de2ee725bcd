//! Integer partitions and the arithmetic the twisting combinatorics needs:
//! conjugation, scaling by `c`, row-wise sums and differences, the hat
//! construction, `p`-adic expansions, and ordered enumeration.
//!
//! Binary operations align rows by index and pad the shorter operand with
//! zeros. Results never carry trailing zeros.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_modulus, Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition(Vec<u64>);

impl Partition {
    /// Builds a partition, stripping trailing zeros. Rejects anything that
    /// is not weakly decreasing.
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i`-th part (zero-based), zero past the end.
    pub fn part(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u64 {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first() as usize;
        let mut out = vec![0u64; width];
        for &part in &self.0 {
            for slot in out.iter_mut().take(part as usize) {
                *slot += 1;
            }
        }
        Partition(out)
    }

    /// `(value, multiplicity)` pairs, largest value first.
    pub fn multiplicities(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &part in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == part => *m += 1,
                _ => out.push((part, 1)),
            }
        }
        out
    }

    /// No part is repeated `p` or more times.
    pub fn is_p_regular(&self, p: u64) -> bool {
        self.multiplicities().iter().all(|&(_, m)| (m as u64) < p)
    }

    /// Every successive difference, and the last part, is below `p`.
    pub fn is_p_restricted(&self, p: u64) -> bool {
        (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < p)
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn scale(&self, c: u64) -> Result<Partition> {
        if c == 0 {
            return Ok(Partition::empty());
        }
        let parts = self
            .0
            .iter()
            .map(|&x| {
                x.checked_mul(c)
                    .ok_or_else(|| Error::Overflow(format!("{c} * {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition(parts))
    }

    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition((0..n).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// Row-wise difference; fails unless the result is itself a partition.
    pub fn subtract(&self, other: &Partition) -> Result<Partition> {
        let n = self.len().max(other.len());
        let diff: Vec<i128> = (0..n)
            .map(|i| self.part(i) as i128 - other.part(i) as i128)
            .collect();
        if diff.iter().any(|&x| x < 0) || diff.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonPartitionDifference(diff));
        }
        Partition::new(diff.into_iter().map(|x| x as u64).collect())
    }

    /// Every part divisible by `c`; returns the quotient.
    pub fn divide(&self, c: u64) -> Option<Partition> {
        if c == 0 || self.0.iter().any(|x| x % c != 0) {
            return None;
        }
        Some(Partition(self.0.iter().map(|x| x / c).collect()))
    }

    /// Each part of a distinct-part partition repeated `p - 1` times.
    pub fn hat(&self, p: u64) -> Result<Partition> {
        check_modulus(p)?;
        if !self.has_distinct_parts() {
            return Err(Error::NotDistinctParts(self.clone()));
        }
        let parts = self
            .0
            .iter()
            .flat_map(|&x| std::iter::repeat(x).take(p as usize - 1))
            .collect();
        Ok(Partition(parts))
    }

    /// Row-wise base-`p` digits; every digit vector has to be a partition.
    pub fn p_adic_expansion(&self, p: u64) -> Result<PAdicDigits> {
        check_modulus(p)?;
        let mut rows = self.0.clone();
        let mut digits = Vec::new();
        while rows.iter().any(|&x| x > 0) {
            let digit: Vec<u64> = rows.iter().map(|x| x % p).collect();
            if digit.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NoPAdicExpansion {
                    partition: self.clone(),
                    p,
                    index: digits.len(),
                    digit,
                });
            }
            digits.push(Partition::new(digit)?);
            for x in rows.iter_mut() {
                *x /= p;
            }
        }
        Ok(PAdicDigits { p, digits })
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Vec<u64> {
        p.0
    }
}

/// Comma-separated parts, largest first; the empty partition prints as
/// the empty string.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for part in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses `"15,15"`. Input has to be weakly decreasing already; it is
/// never sorted on the caller's behalf. `""` and `"0"` parse as the empty
/// partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u64>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.iter().rev().skip_while(|&&x| x == 0).any(|&x| x == 0) {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "zero part before a positive part".into(),
            });
        }
        Partition::new(parts).map_err(|_| Error::Parse {
            input: s.to_string(),
            reason: "parts must be weakly decreasing".into(),
        })
    }
}

/// A `p`-adic expansion `mu = sum_i p^i mu(i)` with `p`-restricted digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicDigits {
    pub p: u64,
    pub digits: Vec<Partition>,
}

impl PAdicDigits {
    pub fn reconstruct(&self) -> Partition {
        let mut acc = Partition::empty();
        let mut weight = 1u64;
        for digit in &self.digits {
            acc = acc.add(&digit.scale(weight).expect("digits bounded by input"));
            weight = weight.saturating_mul(self.p);
        }
        acc
    }
}

/// Least `l` with `t < p^l`.
pub fn l_p(t: u64, p: u64) -> u32 {
    assert!(p >= 2, "modulus must be at least 2");
    let mut l = 0;
    let mut power: u128 = 1;
    while (t as u128) >= power {
        power *= p as u128;
        l += 1;
    }
    l
}

/// Checked `p^e` in 64 bits.
pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionFilter {
    All,
    PRegular(u64),
    /// At most two parts.
    TwoPart,
    Distinct,
}

impl PartitionFilter {
    pub fn accepts(&self, lambda: &Partition) -> bool {
        match *self {
            PartitionFilter::All => true,
            PartitionFilter::PRegular(p) => lambda.is_p_regular(p),
            PartitionFilter::TwoPart => lambda.len() <= 2,
            PartitionFilter::Distinct => lambda.has_distinct_parts(),
        }
    }
}

/// Partitions of `d` with parts at most `max_part`, in decreasing
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<u64>>,
}

impl Partitions {
    pub fn new(d: u64) -> Self {
        Self::bounded(d, d)
    }

    pub fn bounded(d: u64, max_part: u64) -> Self {
        let current = if d == 0 {
            Some(Vec::new())
        } else if max_part == 0 {
            None
        } else {
            Some(greedy_fill(d, max_part))
        };
        Partitions { current }
    }
}

fn greedy_fill(mut rest: u64, cap: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while rest > 0 {
        let part = rest.min(cap);
        out.push(part);
        rest -= part;
    }
    out
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        // next in decreasing lex: drop trailing ones, decrement the last
        // part above one, refill greedily below it
        let mut next = current.clone();
        let mut freed = 0u64;
        while next.last() == Some(&1) {
            next.pop();
            freed += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            let cap = *last;
            next.extend(greedy_fill(freed + 1, cap));
            self.current = Some(next);
        }
        Some(Partition(current))
    }
}

/// Partitions of `d` accepted by `filter`, decreasing lexicographic order.
pub fn enumerate_partitions(d: u64, filter: PartitionFilter) -> impl Iterator<Item = Partition> {
    Partitions::new(d).filter(move |lambda| filter.accepts(lambda))
}

/// Partitions of `d` whose first part is exactly `first`, in decreasing
/// lexicographic order. Used to shard scans.
pub fn partitions_with_first_part(d: u64, first: u64) -> impl Iterator<Item = Partition> {
    let tails = if first == 0 || first > d {
        Partitions { current: None }
    } else {
        Partitions::bounded(d - first, first)
    };
    tails.map(move |tail| {
        let mut parts = Vec::with_capacity(tail.len() + 1);
        parts.push(first);
        parts.extend_from_slice(tail.parts());
        Partition(parts)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[7, 1, 1]).conjugate(), p(&[3, 1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn regular_and_restricted() {
        assert!(!p(&[2, 2, 2]).is_p_regular(3));
        assert!(p(&[2, 2]).is_p_regular(3));
        assert!(p(&[5, 3, 1]).is_p_regular(2));
        assert!(p(&[4, 4, 4, 4, 4]).is_p_restricted(5));
        assert!(!p(&[4, 1]).is_p_restricted(3));
        assert!(p(&[3, 1]).is_p_restricted(3));
        assert!(!p(&[3, 1]).scale(3).unwrap().is_p_restricted(3));
    }

    #[test]
    fn scale_add_subtract() {
        assert_eq!(p(&[3, 3]).scale(5).unwrap(), p(&[15, 15]));
        assert_eq!(p(&[20, 9]).scale(3).unwrap(), p(&[60, 27]));
        assert_eq!(p(&[4, 2]).scale(1).unwrap(), p(&[4, 2]));
        assert!(matches!(
            p(&[u64::MAX / 2 + 1]).scale(2),
            Err(Error::Overflow(_))
        ));

        let sum = p(&[4, 4, 4, 4, 4]).add(&p(&[4, 4, 2])).add(&p(&[4, 1]));
        assert_eq!(sum, p(&[12, 9, 6, 4, 4]));
        assert_eq!(p(&[3, 1]).add(&Partition::empty()), p(&[3, 1]));
        assert_eq!(p(&[1, 1]).add(&p(&[2])), p(&[3, 1]));

        let lam = p(&[12, 9, 6, 4, 4]);
        assert_eq!(lam.subtract(&lam).unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1]).subtract(&p(&[1, 1])).unwrap(), p(&[2]));
        assert_eq!(
            p(&[2, 2]).subtract(&p(&[2])),
            Err(Error::NonPartitionDifference(vec![0, 2]))
        );
        assert!(p(&[2]).subtract(&p(&[3])).is_err());
    }

    #[test]
    fn hat_examples() {
        assert_eq!(
            p(&[4, 2, 1]).hat(5).unwrap(),
            p(&[4, 4, 4, 4, 2, 2, 2, 2, 1, 1, 1, 1])
        );
        assert_eq!(p(&[5, 2]).hat(2).unwrap(), p(&[5, 2]));
        assert!(matches!(
            p(&[2, 2, 1]).hat(3),
            Err(Error::NotDistinctParts(_))
        ));
    }

    #[test]
    fn l_p_examples() {
        assert_eq!(l_p(0, 3), 0);
        assert_eq!(l_p(2, 3), 1);
        assert_eq!(l_p(9, 3), 3);
        assert_eq!(l_p(8, 3), 2);
        assert_eq!(l_p(u64::MAX, 2), 64);
    }

    #[test]
    fn p_adic_examples() {
        let e = p(&[8]).p_adic_expansion(2).unwrap();
        assert_eq!(
            e.digits,
            vec![Partition::empty(), Partition::empty(), Partition::empty(), p(&[1])]
        );
        let e = p(&[3, 1]).p_adic_expansion(2).unwrap();
        assert_eq!(e.digits, vec![p(&[1, 1]), p(&[1])]);
        assert_eq!(e.reconstruct(), p(&[3, 1]));
        assert!(matches!(
            p(&[2, 1]).p_adic_expansion(2),
            Err(Error::NoPAdicExpansion { index: 0, .. })
        ));
        assert!(Partition::empty().p_adic_expansion(3).unwrap().digits.is_empty());
    }

    #[test]
    fn enumeration_examples() {
        let all: Vec<_> = enumerate_partitions(4, PartitionFilter::All).collect();
        assert_eq!(
            all,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        let distinct: Vec<_> = enumerate_partitions(5, PartitionFilter::Distinct).collect();
        assert_eq!(distinct, vec![p(&[5]), p(&[4, 1]), p(&[3, 2])]);
        let reg: Vec<_> = enumerate_partitions(3, PartitionFilter::PRegular(2)).collect();
        assert_eq!(reg, vec![p(&[3]), p(&[2, 1])]);
        let zero: Vec<_> = enumerate_partitions(0, PartitionFilter::All).collect();
        assert_eq!(zero, vec![Partition::empty()]);
        let two: Vec<_> = enumerate_partitions(4, PartitionFilter::TwoPart).collect();
        assert_eq!(two, vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
    }

    #[test]
    fn sharded_enumeration_matches() {
        for d in 0..=14u64 {
            let whole: Vec<_> = Partitions::new(d).collect();
            let sharded: Vec<_> = if d == 0 {
                vec![Partition::empty()]
            } else {
                (1..=d).rev().flat_map(|k| partitions_with_first_part(d, k)).collect()
            };
            assert_eq!(whole, sharded, "d = {d}");
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("15,15".parse::<Partition>().unwrap(), p(&[15, 15]));
        assert_eq!(" 3, 1 ,1".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0,1".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[20, 20, 5]).to_string(), "20,20,5");
    }

    #[test]
    fn serde_uses_plain_arrays() {
        let json = serde_json::to_string(&p(&[10, 10, 10])).unwrap();
        assert_eq!(json, "[10,10,10]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
