//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistlab_core::abacus::p_core;
use twistlab_core::criteria::{
    h0_prepend_stable, h0_specht_nonzero, ks_ext1, murphy_end_dim, murphy_indecomposable, MurphyHook, TwoPartExtQuery,
};
use twistlab_core::mullineux::{
    mullineux_map, mullineux_symbol, steinberg_difference, tau, verify_hat_identity, SymbolColumn,
};
use twistlab_core::partition::l_p;
use twistlab_core::{enumerate_partitions, Partition, PartitionFilter};
use twistlab_lab::{SearchOptions, SearchReport};
use twistlab_specht::hom::is_homomorphism;
use twistlab_specht::{build_specht_with, hom_dim, invariants_dim, is_decomposable, Representation, SpechtOptions};

type Check = std::result::Result<String, String>;

fn p(parts: &[u64]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn power(x: u64, times: usize) -> Vec<u64> {
    vec![x; times]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn roomy() -> SpechtOptions {
    SpechtOptions {
        max_dim: 1 << 40,
        ..SpechtOptions::default()
    }
}

fn rep(lambda: &Partition, prime: u64) -> std::result::Result<Representation, String> {
    Ok(build_specht_with(lambda, prime, &roomy()).map_err(err)?.into_representation())
}

fn mullineux_values() -> Check {
    let m = |l: &[u64], q| mullineux_map(&p(l), q).map_err(err);
    ensure(m(&[15, 15], 5)? == p(&[10, 10, 10]), || "m(15,15) at p=5".into())?;
    let twisted = p(&[4, 2, 1]).scale(5).map_err(err)?;
    let conj = mullineux_map(&twisted, 5).map_err(err)?.conjugate();
    ensure(conj == p(&[12, 9, 6, 4, 4]), || format!("m(5(4,2,1))' = ({conj})"))?;
    ensure(m(&[30, 30, 20], 5)? == p(&[20, 20, 20, 5, 5, 5, 5]), || "m(30,30,20)".into())?;
    for (n, want) in [(20, p(&[4, 4, 4, 4, 4])), (10, p(&[4, 4, 2])), (5, p(&[4, 1]))] {
        let got = tau(n, 5).map_err(err)?;
        ensure(got == want, || format!("tau_{n} = ({got})"))?;
    }
    Ok("7 values".into())
}

fn involution_and_regularity() -> Check {
    let mut cases = 0;
    for q in [2, 3, 5, 7] {
        for d in 0..=25 {
            for lambda in enumerate_partitions(d, PartitionFilter::PRegular(q)) {
                let image = mullineux_map(&lambda, q).map_err(err)?;
                ensure(image.is_p_regular(q) && image.size() == d, || {
                    format!("m({lambda}) = ({image}) at p={q}")
                })?;
                let back = mullineux_map(&image, q).map_err(err)?;
                ensure(back == lambda, || format!("m(m({lambda})) = ({back}) at p={q}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

/// Columns `(jp; j * row_factor)` for `j = s, ..., 1`, column `j` repeated
/// `lambda_j - lambda_{j+1}` times. Row factor 1 describes `p lambda`,
/// `p - 1` describes `m(p lambda)`.
fn twisted_columns(lambda: &Partition, q: u64, row_factor: u64) -> Vec<SymbolColumn> {
    (1..=lambda.len())
        .rev()
        .flat_map(|j| {
            let times = lambda.part(j - 1) - lambda.part(j);
            std::iter::repeat(SymbolColumn {
                rim: j as u64 * q,
                rows: j as u64 * row_factor,
            })
            .take(times as usize)
        })
        .collect()
}

fn identity_suites() -> Check {
    let mut cases = 0;
    for q in [3, 5] {
        for d in 1..=15 {
            for lambda in enumerate_partitions(d, PartitionFilter::Distinct) {
                let ctx = || format!("{lambda} at p={q}");
                // hat identity
                ensure(verify_hat_identity(&lambda, q).map_err(err)?, || format!("hat identity, {}", ctx()))?;
                let twisted = lambda.scale(q).map_err(err)?;
                let m_twisted = mullineux_map(&twisted, q).map_err(err)?;
                // conjugate of m(p lambda) is a sum of tau's
                let taus = lambda
                    .parts()
                    .iter()
                    .map(|&x| tau(q * x, q))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?
                    .into_iter()
                    .fold(Partition::empty(), |acc, t| acc.add(&t));
                ensure(m_twisted.conjugate() == taus, || format!("tau sum, {}", ctx()))?;
                // twisting commutes with m on (p-1) lambda and hat(lambda)
                let hat = lambda.hat(q).map_err(err)?;
                for mu in [lambda.scale(q - 1).map_err(err)?, hat.clone()] {
                    let lhs = mullineux_map(&mu.scale(q).map_err(err)?, q).map_err(err)?;
                    let rhs = mullineux_map(&mu, q).map_err(err)?.scale(q).map_err(err)?;
                    ensure(lhs == rhs, || format!("m(p mu) = p m(mu) for mu = ({mu}), {}", ctx()))?;
                }
                // second twist adds p hat(lambda)
                let diff = steinberg_difference(&lambda, q).map_err(err)?;
                ensure(diff == hat.scale(q).map_err(err)?, || format!("steinberg difference, {}", ctx()))?;
                // symbol patterns
                let s = mullineux_symbol(&twisted, q).map_err(err)?;
                ensure(s.columns() == twisted_columns(&lambda, q, 1).as_slice(), || {
                    format!("symbol of p lambda, {}", ctx())
                })?;
                let s = mullineux_symbol(&m_twisted, q).map_err(err)?;
                ensure(s.columns() == twisted_columns(&lambda, q, q - 1).as_slice(), || {
                    format!("symbol of m(p lambda), {}", ctx())
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} partitions"))
}

fn many_twists() -> Check {
    let lambda = p(&[29, 29, 24, 4, 4, 3, 3, 3, 2, 1]);
    let m = |b: u32| -> std::result::Result<Partition, String> {
        mullineux_map(&lambda.scale(7u64.pow(b)).map_err(err)?, 7).map_err(err)
    };
    let images: Vec<Partition> = (1..=5).map(m).collect::<Result<_, _>>()?;
    for y in 2..5 {
        for x in 1..y {
            let d = images[y - 1].subtract(&images[x - 1]);
            ensure(!matches!(&d, Ok(d) if d.divide(7).is_some()), || {
                format!("m(7^{y} lambda) - m(7^{x} lambda) is 7 times a partition")
            })?;
        }
    }
    let diff = images[4].subtract(&images[0]).map_err(err)?;
    let mut parts = power(123840, 5);
    for (x, k) in [(9600, 5), (5400, 4), (3840, 5), (800, 6), (400, 6)] {
        parts.extend(power(x, k));
    }
    let expected = p(&parts).scale(7).map_err(err)?;
    let computed = diff.divide(7).map(|t| t.to_string()).unwrap_or_else(|| "none".into());
    ensure(diff == expected, || {
        format!(
            "difference / 7 = ({computed}) of size {}, expected tuple has size {}",
            diff.size() / 7,
            expected.size() / 7
        )
    })?;
    Ok("difference matches".into())
}

fn fixed_points() -> Check {
    let opts = SearchOptions::default();
    let report = twistlab_lab::find_twist_commuting(20, 5, &opts).map_err(err)?;
    let hits: HashSet<Partition> = report.body.hits.iter().map(|h| h.lambda.clone()).collect();
    let family: HashSet<Partition> = [
        p(&[20]),
        p(&[16, 4]),
        p(&[12, 8]),
        p(&[5, 5, 5, 5]),
        p(&[4, 4, 4, 4, 1, 1, 1, 1]),
        p(&[3, 3, 3, 3, 2, 2, 2, 2]),
    ]
    .into();
    ensure(hits == family, || format!("hits {hits:?}"))?;
    // the family is (p-1) lambda and hat(lambda) over distinct-part lambda of 5
    let mut built = HashSet::new();
    for l in enumerate_partitions(5, PartitionFilter::Distinct) {
        built.insert(l.scale(4).map_err(err)?);
        built.insert(l.hat(5).map_err(err)?);
    }
    ensure(built == family, || "family construction".into())?;
    let small = twistlab_lab::find_twist_commuting(6, 5, &opts).map_err(err)?;
    ensure(small.body.hits.iter().any(|h| h.lambda == p(&[3, 3])), || "(3,3) missing at d=6".into())?;
    Ok(format!("{} of {} scanned", hits.len(), report.body.scanned))
}

fn ks_criterion() -> Check {
    let dim = |a: &[u64], b: &[u64]| -> std::result::Result<u8, String> {
        Ok(ks_ext1(&TwoPartExtQuery::new(3, &p(a), &p(b)).map_err(err)?).dim)
    };
    ensure(dim(&[20, 9], &[26, 3])? == 1, || "(20,9)/(26,3) should be 1".into())?;
    ensure(dim(&[60, 27], &[78, 9])? == 0, || "(60,27)/(78,9) should be 0".into())?;
    let mut pairs = 0;
    for q in [3, 5] {
        for d in 0..=40 {
            let report = twistlab_lab::ks_stability_scan(d, q, &SearchOptions::default()).map_err(err)?;
            ensure(report.body.counterexamples.is_empty(), || format!("counterexample at d={d}, p={q}"))?;
            pairs += report.body.scanned;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn murphy_cross_validation() -> Check {
    let hook = |d, r| MurphyHook::new(d, r).map_err(err);
    for (d, r, want) in [(9, 2, 1), (9, 3, 2), (9, 4, 2), (8, 3, 1)] {
        let got = murphy_end_dim(&hook(d, r)?);
        ensure(got == want, || format!("formula ({d},{r}) = {got}, expected {want}"))?;
    }
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for d in [8u64, 9, 11, 13] {
        for r in 0..=4u64 {
            let q = hook(d, r)?;
            let a = rep(&q.partition(), 2)?;
            let end = hom_dim(&a, &a).map_err(err)? as u64;
            let dec = is_decomposable(&a, &SpechtOptions::default()).map_err(err)?;
            let (f_end, f_ind) = (murphy_end_dim(&q), murphy_indecomposable(&q));
            if end != f_end || dec.decomposable == f_ind {
                mismatches.push(format!(
                    "({d},{r}): End {end} vs {f_end}, decomposable {} vs {}",
                    dec.decomposable, !f_ind
                ));
            }
            cases += 1;
        }
    }
    ensure(mismatches.is_empty(), || {
        format!("{} of {cases} hooks disagree: {}", mismatches.len(), mismatches.join("; "))
    })?;
    Ok(format!("{cases} hooks agree"))
}

fn dodge_fayers() -> Check {
    let a = rep(&p(&[4, 3, 1, 1]), 2)?;
    let dec = is_decomposable(&a, &SpechtOptions::default()).map_err(err)?;
    ensure(dec.decomposable, || "reported indecomposable".into())?;
    let e = dec.witness.ok_or("no witness")?;
    ensure(e.mul(&e) == e, || "witness is not idempotent".into())?;
    ensure(!e.is_zero() && !e.is_identity(), || "witness is trivial".into())?;
    ensure(is_homomorphism(&e, &a, &a), || "witness is not equivariant".into())?;
    Ok(format!("idempotent of rank {} in dimension {}", e.rank(), a.dim()))
}

fn hom_vanishes() -> Check {
    let a = rep(&p(&[7, 1, 1]), 3)?;
    let b = rep(&p(&[3, 1, 1, 1, 1, 1, 1]), 3)?;
    let dim = hom_dim(&a, &b).map_err(err)?;
    ensure(dim == 0, || format!("hom dimension {dim}"))?;
    Ok("hom dimension 0".into())
}

fn h0_coherence() -> Check {
    let mut cases = 0;
    for q in [2, 3, 5] {
        for d in 0..=10 {
            for lambda in enumerate_partitions(d, PartitionFilter::All) {
                let fixed = invariants_dim(&rep(&lambda, q)?);
                ensure((fixed > 0) == h0_specht_nonzero(&lambda, q), || {
                    format!("({lambda}) at p={q}: invariants {fixed}")
                })?;
                cases += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let pool: Vec<Partition> = (1..=12)
        .flat_map(|d| enumerate_partitions(d, PartitionFilter::All))
        .collect();
    for _ in 0..100 {
        let q = *[2u64, 3, 5].choose(&mut rng).unwrap();
        let lambda = pool.choose(&mut rng).unwrap();
        let modulus = q.pow(l_p(lambda.first(), q));
        let least = (lambda.first() + 1).div_ceil(modulus) * modulus - 1;
        let a = least + modulus * rng.gen_range(0..4);
        ensure(h0_prepend_stable(lambda, a, q).map_err(err)?, || {
            format!("prepending {a} to ({lambda}) at p={q}")
        })?;
    }
    for q in [2, 3, 5] {
        for d in 1..=20 {
            for lambda in enumerate_partitions(d, PartitionFilter::All) {
                let twisted = lambda.scale(q).map_err(err)?;
                let nonzero = h0_specht_nonzero(&twisted, q);
                ensure(nonzero == (lambda.len() == 1), || format!("p({lambda}) at p={q}"))?;
            }
        }
    }
    Ok(format!("{cases} modules, 100 prepends"))
}

/// Cells of the diagram as (row, column) pairs.
fn cells(lambda: &Partition) -> HashSet<(u64, u64)> {
    lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i as u64, j)))
        .collect()
}

/// Whether `outer / inner` is a nonempty connected skew shape with no 2x2
/// square.
fn is_rim_hook(outer: &Partition, inner: &Partition) -> bool {
    let big = cells(outer);
    let small = cells(inner);
    if !small.is_subset(&big) {
        return false;
    }
    let skew: HashSet<_> = big.difference(&small).copied().collect();
    let Some(&start) = skew.iter().next() else {
        return false;
    };
    if skew
        .iter()
        .any(|&(i, j)| skew.contains(&(i + 1, j)) && skew.contains(&(i, j + 1)) && skew.contains(&(i + 1, j + 1)))
    {
        return false;
    }
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some((i, j)) = stack.pop() {
        let mut near = vec![(i + 1, j), (i, j + 1)];
        if i > 0 {
            near.push((i - 1, j));
        }
        if j > 0 {
            near.push((i, j - 1));
        }
        for n in near {
            if skew.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == skew.len()
}

fn strip_hooks(lambda: &Partition, q: u64) -> (Partition, u64) {
    let mut current = lambda.clone();
    let mut weight = 0;
    'outer: while current.size() >= q {
        for candidate in enumerate_partitions(current.size() - q, PartitionFilter::All) {
            if is_rim_hook(&current, &candidate) {
                current = candidate;
                weight += 1;
                continue 'outer;
            }
        }
        break;
    }
    (current, weight)
}

fn abacus() -> Check {
    let mut cases = 0;
    for q in [2, 3, 5, 7] {
        for d in 0..=12 {
            for lambda in enumerate_partitions(d, PartitionFilter::All) {
                let block = p_core(&lambda, q).map_err(err)?;
                ensure(block.p_core.size() + q * block.weight == d, || format!("size of ({lambda}) at p={q}"))?;
                let stripped = strip_hooks(&lambda, q);
                ensure((block.p_core.clone(), block.weight) == stripped, || {
                    format!("({lambda}) at p={q}: slide ({}) w={} vs strip ({}) w={}",
                        block.p_core, block.weight, stripped.0, stripped.1)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn determinism() -> Check {
    let lambda = p(&[4, 2, 1]);
    let runs: Vec<Box<dyn Fn(Option<usize>) -> twistlab_lab::Result<SearchReport>>> = vec![
        Box::new(|jobs| twistlab_lab::find_twist_commuting(20, 5, &SearchOptions { jobs })),
        Box::new(|jobs| twistlab_lab::check_twist_persistence(16, 3, &SearchOptions { jobs })),
        Box::new(|jobs| twistlab_lab::find_p_image(18, 5, &SearchOptions { jobs })),
        Box::new(move |jobs| twistlab_lab::multi_twist_scan(&lambda, 5, 4, &SearchOptions { jobs })),
        Box::new(|jobs| twistlab_lab::ks_stability_scan(30, 3, &SearchOptions { jobs })),
        Box::new(|_| twistlab_lab::census(12, 3)),
    ];
    for run in &runs {
        let a = run(Some(1)).map_err(err)?;
        let b = run(Some(4)).map_err(err)?;
        let c = run(None).map_err(err)?;
        let name = a.body.search.name();
        ensure(a.body.canonical_json() == b.body.canonical_json(), || format!("{name} differs across runs"))?;
        ensure(a.body.canonical_json() == c.body.canonical_json(), || format!("{name} differs across runs"))?;
        ensure(a.meta.body_sha256 == b.meta.body_sha256, || format!("{name} digests differ"))?;
    }
    Ok(format!("{} searches", runs.len()))
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { number: 1, name: "Mullineux values", limit: secs(1), run: mullineux_values },
        Criterion { number: 2, name: "involution and regularity", limit: secs(30), run: involution_and_regularity },
        Criterion { number: 3, name: "distinct-part identities", limit: secs(60), run: identity_suites },
        Criterion { number: 4, name: "many twists at p=7", limit: secs(5), run: many_twists },
        Criterion { number: 5, name: "fixed points at p=5", limit: secs(10), run: fixed_points },
        Criterion { number: 6, name: "two-part Ext1 and stability", limit: secs(60), run: ks_criterion },
        Criterion { number: 7, name: "hook formulas against the oracle", limit: secs(600), run: murphy_cross_validation },
        Criterion { number: 8, name: "S^(4,3,1,1) decomposable at p=2", limit: secs(600), run: dodge_fayers },
        Criterion { number: 9, name: "Hom(S^(7,1,1), S^(3,1^6)) at p=3", limit: secs(300), run: hom_vanishes },
        Criterion { number: 10, name: "invariants coherence", limit: secs(600), run: h0_coherence },
        Criterion { number: 11, name: "abacus cores and weights", limit: secs(30), run: abacus },
        Criterion { number: 12, name: "search determinism", limit: None, run: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took longer than {} s", limit.as_secs())),
            (o, _) => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!(
            "criterion {:>2}  {status}  {:<36} {:>8.2} s  {detail}",
            c.number,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
