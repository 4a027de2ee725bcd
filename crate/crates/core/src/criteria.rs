//! Closed-form criteria: Ext¹ between two-part simple modules, the hook
//! Specht module formulas in characteristic two, and the invariant
//! criterion for Specht modules together with its first-row stability.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{l_p, Partition};

/// `p`-adic digits of `n`, least significant first.
pub fn base_p_digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    digits
}

/// An Ext¹ question between `D^(v,u)` and `D^(s,r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPartExtQuery {
    pub p: u64,
    pub lambda: (u64, u64),
    pub mu: (u64, u64),
}

fn two_parts(lambda: &Partition) -> Result<(u64, u64)> {
    if lambda.len() > 2 {
        return Err(Error::NotTwoPart(lambda.clone()));
    }
    Ok((lambda.part(0), lambda.part(1)))
}

impl TwoPartExtQuery {
    pub fn new(p: u64, lambda: &Partition, mu: &Partition) -> Result<Self> {
        if p <= 2 {
            return Err(Error::PrimeTooSmall(p));
        }
        let lambda = two_parts(lambda)?;
        let mu = two_parts(mu)?;
        let (a, b) = (lambda.0 + lambda.1, mu.0 + mu.1);
        if a != b {
            return Err(Error::EqualSizeRequired(a, b));
        }
        Ok(TwoPartExtQuery { p, lambda, mu })
    }

    /// Both partitions multiplied by `c`.
    pub fn scaled(&self, c: u64) -> Result<Self> {
        let mul = |x: u64| {
            x.checked_mul(c)
                .ok_or_else(|| Error::Overflow(format!("{c} * {x}")))
        };
        Ok(TwoPartExtQuery {
            p: self.p,
            lambda: (mul(self.lambda.0)?, mul(self.lambda.1)?),
            mu: (mul(self.mu.0)?, mul(self.mu.1)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsOutcome {
    pub dim: u8,
    /// Digit index that fired.
    pub witness: Option<u32>,
    /// Base-`p` digits of `v - u + 1` after ordering the inputs so `u >= r`.
    pub digits: Vec<u64>,
    /// The inputs were swapped to get `u >= r`.
    pub swapped: bool,
}

/// Dimension of Ext¹ between two-part simple modules (0 or 1).
///
/// With `u >= r`, write `v - u + 1 = sum a_i p^i`. The group is nonzero
/// exactly when some digit `a_i > 0` has `u - r = (p - a_i) p^i` and either
/// `a_{i+1} < p - 1` or `u < p^(i+2)`.
pub fn ks_ext1(q: &TwoPartExtQuery) -> KsOutcome {
    let p = q.p;
    let swapped = q.lambda.1 < q.mu.1;
    let ((v, u), (_, r)) = if swapped {
        (q.mu, q.lambda)
    } else {
        (q.lambda, q.mu)
    };
    let digits = base_p_digits(v - u + 1, p);
    let diff = (u - r) as u128;
    let p128 = p as u128;
    let mut power: u128 = 1;
    let mut witness = None;
    for (i, &a) in digits.iter().enumerate() {
        if a > 0 && diff == (p128 - a as u128) * power {
            let next = digits.get(i + 1).copied().unwrap_or(0);
            let small = (u as u128) < power * p128 * p128;
            if next < p - 1 || small {
                witness = Some(i as u32);
                break;
            }
        }
        power *= p128;
    }
    KsOutcome {
        dim: u8::from(witness.is_some()),
        witness,
        digits,
        swapped,
    }
}

/// Compares the once- and twice-twisted dimensions of a two-part pair.
pub fn ks_twist_stable(p: u64, lambda: &Partition, mu: &Partition) -> Result<bool> {
    let q = TwoPartExtQuery::new(p, lambda, mu)?;
    let once = ks_ext1(&q.scaled(p)?).dim;
    let twice = ks_ext1(&q.scaled(p * p)?).dim;
    Ok(once == twice)
}

/// The hook `(d - r, 1^r)` in characteristic two, with `d >= 2r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MurphyHook {
    pub d: u64,
    pub r: u64,
}

impl MurphyHook {
    pub fn new(d: u64, r: u64) -> Result<Self> {
        if d < 2 * r {
            return Err(Error::HypothesisViolated(format!("d = {d} < 2r = {}", 2 * r)));
        }
        Ok(MurphyHook { d, r })
    }

    pub fn partition(&self) -> Partition {
        let mut parts = vec![self.d - self.r];
        parts.extend(std::iter::repeat(1).take(self.r as usize));
        Partition::new(parts).expect("hook")
    }

    /// `L` with `2^(L-1) <= r < 2^L`.
    pub fn level(&self) -> u32 {
        l_p(self.r, 2)
    }
}

pub fn murphy_end_dim(q: &MurphyHook) -> u64 {
    if q.d % 2 == 0 || q.r == 0 {
        1
    } else if q.r % 2 == 0 {
        q.r / 2
    } else {
        (q.r + 1) / 2
    }
}

pub fn murphy_indecomposable(q: &MurphyHook) -> bool {
    if q.d % 2 == 0 || q.r == 0 {
        return true;
    }
    (q.d - q.r - 1) % (1u64 << q.level()) == 0
}

/// Endomorphism dimension is unchanged by `d -> d + 2`, and
/// indecomposability by `d -> d + 2^L`.
pub fn murphy_twist_invariance(d: u64, r: u64) -> Result<bool> {
    let q = MurphyHook::new(d, r)?;
    let shifted = MurphyHook::new(d + 2, r)?;
    let jumped = MurphyHook::new(d + (1u64 << q.level()), r)?;
    Ok(murphy_end_dim(&q) == murphy_end_dim(&shifted)
        && murphy_indecomposable(&q) == murphy_indecomposable(&jumped))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Outcome {
    pub nonzero: bool,
    /// First row `i` (zero-based) where `lambda_i` is not `-1` modulo
    /// `p^l_p(lambda_{i+1})`.
    pub failed_row: Option<usize>,
    pub modulus: Option<u64>,
}

/// Invariants of `S^lambda` are nonzero iff every `lambda_i` is congruent
/// to `-1` modulo `p^l_p(lambda_{i+1})`.
pub fn h0_specht(lambda: &Partition, p: u64) -> H0Outcome {
    for i in 0..lambda.len().saturating_sub(1) {
        let next = lambda.part(i + 1);
        let modulus = (p as u128).pow(l_p(next, p));
        if (lambda.part(i) as u128 + 1) % modulus != 0 {
            return H0Outcome {
                nonzero: false,
                failed_row: Some(i),
                modulus: u64::try_from(modulus).ok(),
            };
        }
    }
    H0Outcome {
        nonzero: true,
        failed_row: None,
        modulus: None,
    }
}

pub fn h0_specht_nonzero(lambda: &Partition, p: u64) -> bool {
    h0_specht(lambda, p).nonzero
}

/// Prepending a first row `a` with `a = -1 mod p^l_p(lambda_1)` leaves
/// the invariant criterion unchanged.
pub fn h0_prepend_stable(lambda: &Partition, a: u64, p: u64) -> Result<bool> {
    let modulus = (p as u128).pow(l_p(lambda.first(), p));
    if (a as u128 + 1) % modulus != 0 {
        return Err(Error::CongruenceViolated {
            a,
            modulus: u64::try_from(modulus).unwrap_or(u64::MAX),
        });
    }
    if a < lambda.first() {
        return Err(Error::HypothesisViolated(format!(
            "new first row {a} is shorter than {}",
            lambda.first()
        )));
    }
    let mut parts = vec![a];
    parts.extend_from_slice(lambda.parts());
    let extended = Partition::new(parts)?;
    Ok(h0_specht_nonzero(lambda, p) == h0_specht_nonzero(&extended, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ks(prime: u64, a: &[u64], b: &[u64]) -> u8 {
        ks_ext1(&TwoPartExtQuery::new(prime, &p(a), &p(b)).unwrap()).dim
    }

    #[test]
    fn ks_examples() {
        assert_eq!(ks(3, &[20, 9], &[26, 3]), 1);
        assert_eq!(ks(3, &[60, 27], &[78, 9]), 0);
        assert_eq!(ks(3, &[20, 9], &[20, 9]), 0);
        assert_eq!(ks(5, &[7], &[7]), 0);
        let out = ks_ext1(&TwoPartExtQuery::new(3, &p(&[26, 3]), &p(&[20, 9])).unwrap());
        assert!(out.swapped);
        assert_eq!(out.dim, 1);
        assert_eq!(out.digits, vec![0, 1, 1]);
        assert_eq!(out.witness, Some(1));
    }

    #[test]
    fn ks_errors() {
        assert_eq!(
            TwoPartExtQuery::new(2, &p(&[2]), &p(&[1, 1])),
            Err(Error::PrimeTooSmall(2))
        );
        assert!(matches!(
            TwoPartExtQuery::new(3, &p(&[2, 1, 1]), &p(&[4])),
            Err(Error::NotTwoPart(_))
        ));
        assert_eq!(
            TwoPartExtQuery::new(3, &p(&[2, 1]), &p(&[4])),
            Err(Error::EqualSizeRequired(3, 4))
        );
    }

    #[test]
    fn ks_stability_examples() {
        assert!(ks_twist_stable(3, &p(&[20, 9]), &p(&[26, 3])).unwrap());
        assert!(ks_twist_stable(3, &p(&[2, 1]), &p(&[3])).unwrap());
        assert!(ks_twist_stable(5, &p(&[4, 4]), &p(&[8])).unwrap());
    }

    #[test]
    fn murphy_examples() {
        let h = |d, r| MurphyHook::new(d, r).unwrap();
        assert_eq!(murphy_end_dim(&h(8, 3)), 1);
        assert_eq!(murphy_end_dim(&h(9, 4)), 2);
        assert_eq!(murphy_end_dim(&h(9, 3)), 2);
        assert_eq!(murphy_end_dim(&h(9, 0)), 1);
        assert!(!murphy_indecomposable(&h(9, 4)));
        assert!(murphy_indecomposable(&h(13, 4)));
        assert!(murphy_indecomposable(&h(8, 3)));
        assert!(matches!(MurphyHook::new(5, 3), Err(Error::HypothesisViolated(_))));
        assert_eq!(h(9, 4).partition(), p(&[5, 1, 1, 1, 1]));
        for (d, r) in [(9, 4), (8, 3), (11, 5)] {
            assert!(murphy_twist_invariance(d, r).unwrap());
        }
    }

    #[test]
    fn h0_examples() {
        assert!(h0_specht_nonzero(&p(&[7]), 3));
        assert!(h0_specht_nonzero(&p(&[8, 2, 2]), 3));
        assert!(!h0_specht_nonzero(&p(&[6, 3]), 3));
        let out = h0_specht(&p(&[6, 3]), 3);
        assert_eq!((out.failed_row, out.modulus), (Some(0), Some(9)));
    }

    #[test]
    fn h0_prepend_examples() {
        assert!(h0_prepend_stable(&p(&[2, 2]), 8, 3).unwrap());
        assert!(h0_prepend_stable(&p(&[6, 3]), 26, 3).unwrap());
        assert!(h0_prepend_stable(&p(&[1]), 1, 2).unwrap());
        assert_eq!(
            h0_prepend_stable(&p(&[2, 2]), 7, 3),
            Err(Error::CongruenceViolated { a: 7, modulus: 3 })
        );
    }
}
