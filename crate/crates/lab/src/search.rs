//! The searches. Each scan shards its input by first part, evaluates the
//! shards in parallel and concatenates the results in enumeration order.

use std::time::Instant;

use rayon::prelude::*;
use twistlab_core::abacus::block_census;
use twistlab_core::criteria::{ks_ext1, TwoPartExtQuery};
use twistlab_core::mullineux::mullineux_map;
use twistlab_core::partition::{checked_pow, partitions_with_first_part};
use twistlab_core::{enumerate_partitions, Error as CoreError, Partition, PartitionFilter};

use crate::error::{Error, Result};
use crate::report::{block_hits, Certificate, Hit, ReportBody, SearchKind, SearchParams, SearchReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

fn with_pool<T: Send>(opts: &SearchOptions, f: impl FnOnce() -> T + Send) -> Result<T> {
    match opts.jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Pool(e.to_string())),
    }
}

/// Partitions of `d` accepted by `filter`, grouped by first part from `d`
/// down to 1, so concatenating the groups gives enumeration order.
fn shards(d: u64, filter: PartitionFilter) -> Vec<Vec<Partition>> {
    if d == 0 {
        return vec![enumerate_partitions(0, filter).collect()];
    }
    (1..=d)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| {
            partitions_with_first_part(d, first)
                .filter(|l| filter.accepts(l))
                .collect()
        })
        .collect()
}

/// Maps every `p`-regular partition of `d` through `eval`, in parallel,
/// keeping enumeration order.
fn scan_regular<T: Send>(
    d: u64,
    p: u64,
    eval: impl Fn(&Partition) -> std::result::Result<T, CoreError> + Sync,
) -> std::result::Result<(u64, Vec<T>), CoreError> {
    let groups = shards(d, PartitionFilter::PRegular(p));
    let scanned = groups.iter().map(|g| g.len() as u64).sum();
    let results: Vec<Vec<T>> = groups
        .par_iter()
        .map(|g| g.iter().map(&eval).collect::<std::result::Result<Vec<T>, _>>())
        .collect::<std::result::Result<_, _>>()?;
    Ok((scanned, results.into_iter().flatten().collect()))
}

fn finish(body: ReportBody, start: Instant) -> SearchReport {
    body.seal(start.elapsed().as_millis() as u64)
}

fn check_p(p: u64) -> Result<()> {
    if p < 2 {
        return Err(CoreError::BadModulus(p).into());
    }
    Ok(())
}

fn twist_commutes(lambda: &Partition, p: u64) -> std::result::Result<Option<Certificate>, CoreError> {
    let m_lambda = mullineux_map(lambda, p)?;
    let m_p_lambda = mullineux_map(&lambda.scale(p)?, p)?;
    Ok((m_p_lambda == m_lambda.scale(p)?).then_some(Certificate::TwistCommutes { m_lambda, m_p_lambda }))
}

/// `p`-regular `lambda` of `d` with `m(p lambda) = p m(lambda)`.
pub fn find_twist_commuting(d: u64, p: u64, opts: &SearchOptions) -> Result<SearchReport> {
    check_p(p)?;
    let start = Instant::now();
    let (scanned, rows) = with_pool(opts, || {
        scan_regular(d, p, |l| Ok(twist_commutes(l, p)?.map(|c| (l.clone(), c))))
    })??;
    let mut body = ReportBody::new(
        SearchKind::FixedPoints,
        SearchParams {
            p,
            d: Some(d),
            ..SearchParams::default()
        },
    );
    body.scanned = scanned;
    body.hits = rows
        .into_iter()
        .flatten()
        .map(|(lambda, certificate)| Hit {
            lambda,
            mu: None,
            certificate,
        })
        .collect();
    Ok(finish(body, start))
}

/// For every twist-commuting `lambda`, tests `m(p^2 lambda) = p m(p lambda)`.
pub fn check_twist_persistence(d: u64, p: u64, opts: &SearchOptions) -> Result<SearchReport> {
    check_p(p)?;
    let start = Instant::now();
    let (scanned, rows) = with_pool(opts, || {
        scan_regular(d, p, |l| {
            if twist_commutes(l, p)?.is_none() {
                return Ok(None);
            }
            let m_p_lambda = mullineux_map(&l.scale(p)?, p)?;
            let m_p2_lambda = mullineux_map(&l.scale(p * p)?, p)?;
            let holds = m_p2_lambda == m_p_lambda.scale(p)?;
            Ok(Some(Hit {
                lambda: l.clone(),
                mu: None,
                certificate: Certificate::Persistence {
                    m_p_lambda,
                    m_p2_lambda,
                    holds,
                },
            }))
        })
    })??;
    let mut body = ReportBody::new(
        SearchKind::Persistence,
        SearchParams {
            p,
            d: Some(d),
            ..SearchParams::default()
        },
    );
    body.scanned = scanned;
    body.hits = rows.into_iter().flatten().collect();
    body.counterexamples = body
        .hits
        .iter()
        .filter(|h| matches!(h.certificate, Certificate::Persistence { holds: false, .. }))
        .cloned()
        .collect();
    Ok(finish(body, start))
}

/// `p`-regular `lambda` of `d` where every part of `m(p lambda)` is
/// divisible by `p`.
pub fn find_p_image(d: u64, p: u64, opts: &SearchOptions) -> Result<SearchReport> {
    check_p(p)?;
    let start = Instant::now();
    let (scanned, rows) = with_pool(opts, || {
        scan_regular(d, p, |l| {
            let m_p_lambda = mullineux_map(&l.scale(p)?, p)?;
            Ok(m_p_lambda.divide(p).map(|tau| Hit {
                lambda: l.clone(),
                mu: None,
                certificate: Certificate::PImage { m_p_lambda, tau },
            }))
        })
    })??;
    let mut body = ReportBody::new(
        SearchKind::PImage,
        SearchParams {
            p,
            d: Some(d),
            ..SearchParams::default()
        },
    );
    body.scanned = scanned;
    body.hits = rows.into_iter().flatten().collect();
    Ok(finish(body, start))
}

/// Every pair `1 <= a < b <= max_b`: is `m(p^b lambda) - m(p^a lambda)` a
/// partition divisible by `p^a`? Hits are the pairs where it is; every
/// pair is kept as an observation.
pub fn multi_twist_scan(lambda: &Partition, p: u64, max_b: u32, opts: &SearchOptions) -> Result<SearchReport> {
    check_p(p)?;
    let start = Instant::now();
    if !lambda.is_p_regular(p) {
        return Err(CoreError::NotPRegular {
            partition: lambda.clone(),
            p,
        }
        .into());
    }
    let top = checked_pow(p, max_b)?;
    if top.checked_mul(lambda.first()).is_none() || top.checked_mul(lambda.size()).is_none() {
        return Err(CoreError::Overflow(format!("{p}^{max_b} * ({lambda})")).into());
    }
    let images: Vec<Partition> = with_pool(opts, || {
        (1..=max_b)
            .into_par_iter()
            .map(|b| mullineux_map(&lambda.scale(checked_pow(p, b)?)?, p))
            .collect::<std::result::Result<Vec<_>, _>>()
    })??;
    let mut body = ReportBody::new(
        SearchKind::MultiTwist,
        SearchParams {
            p,
            lambda: Some(lambda.clone()),
            max_b: Some(max_b),
            ..SearchParams::default()
        },
    );
    for b in 2..=max_b {
        for a in 1..b {
            let (m_a, m_b) = (&images[a as usize - 1], &images[b as usize - 1]);
            let difference = m_b.subtract(m_a).ok();
            let divisible_by_p = difference.as_ref().is_some_and(|x| x.divide(p).is_some());
            let tau = match &difference {
                Some(x) => x.divide(checked_pow(p, a)?),
                None => None,
            };
            let hit = Hit {
                lambda: lambda.clone(),
                mu: None,
                certificate: Certificate::MultiTwist {
                    a,
                    b,
                    difference,
                    divisible_by_p,
                    tau: tau.clone(),
                },
            };
            body.scanned += 1;
            if tau.is_some() {
                body.hits.push(hit.clone());
            }
            body.observations.push(hit);
        }
    }
    Ok(finish(body, start))
}

/// All ordered pairs of two-part partitions of `d`. Hits are pairs with
/// nonzero once-twisted Ext¹, counterexamples pairs whose once and twice
/// twisted dimensions differ, and observations pairs whose first twist
/// changes the dimension.
pub fn ks_stability_scan(d: u64, p: u64, opts: &SearchOptions) -> Result<SearchReport> {
    if p <= 2 {
        return Err(CoreError::PrimeTooSmall(p).into());
    }
    let start = Instant::now();
    let pairs: Vec<Partition> = enumerate_partitions(d, PartitionFilter::TwoPart).collect();
    let rows: Vec<Vec<Hit>> = with_pool(opts, || {
        pairs
            .par_iter()
            .map(|lambda| {
                pairs
                    .iter()
                    .map(|mu| {
                        let q = TwoPartExtQuery::new(p, lambda, mu)?;
                        let untwisted = ks_ext1(&q).dim;
                        let once = ks_ext1(&q.scaled(p)?).dim;
                        let twice = ks_ext1(&q.scaled(p * p)?).dim;
                        Ok(Hit {
                            lambda: lambda.clone(),
                            mu: Some(mu.clone()),
                            certificate: Certificate::KsPair {
                                untwisted,
                                once,
                                twice,
                            },
                        })
                    })
                    .collect::<std::result::Result<Vec<_>, CoreError>>()
            })
            .collect::<std::result::Result<Vec<_>, CoreError>>()
    })??;
    let mut body = ReportBody::new(
        SearchKind::KsStability,
        SearchParams {
            p,
            d: Some(d),
            ..SearchParams::default()
        },
    );
    for hit in rows.into_iter().flatten() {
        body.scanned += 1;
        let Certificate::KsPair {
            untwisted,
            once,
            twice,
        } = hit.certificate
        else {
            unreachable!()
        };
        if once != twice {
            body.counterexamples.push(hit.clone());
        }
        if untwisted != once {
            body.observations.push(hit.clone());
        }
        if once > 0 {
            body.hits.push(hit);
        }
    }
    Ok(finish(body, start))
}

/// Blocks of `d` with their members; `scanned` counts partitions.
pub fn census(d: u64, p: u64) -> Result<SearchReport> {
    check_p(p)?;
    let start = Instant::now();
    let blocks = block_census(d, p)?;
    let mut body = ReportBody::new(
        SearchKind::Census,
        SearchParams {
            p,
            d: Some(d),
            ..SearchParams::default()
        },
    );
    body.scanned = blocks.iter().map(|b| b.members.len() as u64).sum();
    body.observations = block_hits(blocks);
    Ok(finish(body, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shards_follow_enumeration_order() {
        for d in 0..=12 {
            let flat: Vec<Partition> = shards(d, PartitionFilter::All).into_iter().flatten().collect();
            let direct: Vec<Partition> = enumerate_partitions(d, PartitionFilter::All).collect();
            assert_eq!(flat, direct);
        }
    }

    #[test]
    fn bad_inputs() {
        let opts = SearchOptions::default();
        assert!(matches!(
            ks_stability_scan(5, 2, &opts),
            Err(Error::Core(CoreError::PrimeTooSmall(2)))
        ));
        let l: Partition = "2,2,2".parse().unwrap();
        assert!(matches!(
            multi_twist_scan(&l, 3, 2, &opts),
            Err(Error::Core(CoreError::NotPRegular { .. }))
        ));
        let big: Partition = "4000000000".parse().unwrap();
        assert!(matches!(
            multi_twist_scan(&big, 7, 20, &opts),
            Err(Error::Core(CoreError::Overflow(_)))
        ));
    }
}
