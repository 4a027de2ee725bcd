//! One evaluable request per subcommand. The command line and the fixture
//! runner both build a [`Request`] and call [`evaluate`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use twistlab_core::abacus::{default_beads, is_p_by_p, p_core_with_beads, to_abacus};
use twistlab_core::criteria::{h0_specht, ks_ext1, murphy_end_dim, murphy_indecomposable, MurphyHook, TwoPartExtQuery};
use twistlab_core::mullineux::{mullineux_map, mullineux_restricted, mullineux_symbol, tau};
use twistlab_core::Partition;
use twistlab_lab::{SearchKind, SearchOptions, SearchReport};
use twistlab_specht::{build_specht_with, hom_dim, invariants_dim, is_decomposable, SpechtOptions};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpechtOp {
    Hom,
    Decomposable,
    H0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Request {
    Mull {
        p: u64,
        lambda: Partition,
        #[serde(default)]
        show_symbol: bool,
        #[serde(default)]
        restricted: bool,
    },
    Tau {
        p: u64,
        n: u64,
    },
    Hat {
        p: u64,
        lambda: Partition,
    },
    Symbol {
        p: u64,
        lambda: Partition,
    },
    Abacus {
        p: u64,
        lambda: Partition,
        #[serde(default)]
        beads: Option<usize>,
    },
    Ks {
        p: u64,
        lam: Partition,
        mu: Partition,
    },
    Murphy {
        d: u64,
        r: u64,
    },
    H0 {
        p: u64,
        lambda: Partition,
    },
    Specht {
        op: SpechtOp,
        p: u64,
        lambda: Partition,
        #[serde(default)]
        mu: Option<Partition>,
        #[serde(default)]
        seed: Option<u64>,
    },
    Search {
        search: SearchKind,
        p: u64,
        #[serde(default)]
        d: Option<u64>,
        #[serde(default)]
        lambda: Option<Partition>,
        #[serde(default)]
        max_b: Option<u32>,
        #[serde(default)]
        jobs: Option<usize>,
    },
}

impl Request {
    pub fn kind(&self) -> &'static str {
        match self {
            Request::Mull { .. } => "mull",
            Request::Tau { .. } => "tau",
            Request::Hat { .. } => "hat",
            Request::Symbol { .. } => "symbol",
            Request::Abacus { .. } => "abacus",
            Request::Ks { .. } => "ks",
            Request::Murphy { .. } => "murphy",
            Request::H0 { .. } => "h0",
            Request::Specht { .. } => "specht",
            Request::Search { .. } => "search",
        }
    }
}

/// Result of a request: the JSON value printed for it, and the report
/// when the request was a search.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub report: Option<SearchReport>,
}

impl Outcome {
    fn plain(value: Value) -> Self {
        Outcome { value, report: None }
    }

    /// Searches that turned up counterexamples.
    pub fn has_counterexamples(&self) -> bool {
        self.report
            .as_ref()
            .is_some_and(|r| !r.body.counterexamples.is_empty())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("outputs serialize")
}

fn missing(search: SearchKind, what: &str) -> CliError {
    CliError::Usage(format!("search {} needs --{what}", search.name()))
}

pub fn evaluate(request: &Request, specht: &SpechtOptions) -> Result<Outcome> {
    let out = match request {
        Request::Mull {
            p,
            lambda,
            show_symbol,
            restricted,
        } => {
            let image = if *restricted {
                mullineux_restricted(lambda, *p)?
            } else {
                mullineux_map(lambda, *p)?
            };
            let mut v = json!({ "input": lambda, "p": p, "mullineux": image });
            if *restricted {
                v["restricted"] = json!(true);
            }
            if *show_symbol {
                let source = if *restricted { lambda.conjugate() } else { lambda.clone() };
                v["symbol"] = to_value(&mullineux_symbol(&source, *p)?);
            }
            Outcome::plain(v)
        }
        Request::Tau { p, n } => Outcome::plain(to_value(&tau(*n, *p)?)),
        Request::Hat { p, lambda } => Outcome::plain(json!({
            "input": lambda,
            "p": p,
            "hat": lambda.hat(*p)?,
        })),
        Request::Symbol { p, lambda } => Outcome::plain(json!({
            "input": lambda,
            "p": p,
            "symbol": mullineux_symbol(lambda, *p)?,
        })),
        Request::Abacus { p, lambda, beads } => {
            let beads = beads.unwrap_or_else(|| default_beads(lambda, *p));
            let display = to_abacus(lambda, *p, beads)?;
            let block = p_core_with_beads(lambda, *p, beads)?;
            Outcome::plain(json!({
                "input": lambda,
                "p": p,
                "beta": display.beta(),
                "core": block.p_core,
                "weight": block.weight,
                "p_by_p": is_p_by_p(lambda, *p),
                "runners": display.runner_rows(),
            }))
        }
        Request::Ks { p, lam, mu } => {
            let q = TwoPartExtQuery::new(*p, lam, mu)?;
            let outcome = ks_ext1(&q);
            Outcome::plain(json!({
                "inputs": { "p": p, "lam": lam, "mu": mu },
                "result": outcome.dim,
                "certificate": {
                    "witness": outcome.witness,
                    "digits": outcome.digits,
                    "swapped": outcome.swapped,
                },
            }))
        }
        Request::Murphy { d, r } => {
            let q = MurphyHook::new(*d, *r)?;
            let modulus = 1u64 << q.level();
            Outcome::plain(json!({
                "inputs": { "d": d, "r": r },
                "result": {
                    "end_dim": murphy_end_dim(&q),
                    "indecomposable": murphy_indecomposable(&q),
                },
                "certificate": {
                    "partition": q.partition(),
                    "level": q.level(),
                    "modulus": modulus,
                    "residue": (d - r - 1) % modulus,
                },
            }))
        }
        Request::H0 { p, lambda } => {
            let outcome = h0_specht(lambda, *p);
            Outcome::plain(json!({
                "inputs": { "p": p, "lambda": lambda },
                "result": outcome.nonzero,
                "certificate": {
                    "failed_row": outcome.failed_row,
                    "modulus": outcome.modulus,
                },
            }))
        }
        Request::Specht {
            op,
            p,
            lambda,
            mu,
            seed,
        } => {
            let mut opts = specht.clone();
            if let Some(seed) = seed {
                opts.seed = *seed;
            }
            let a = build_specht_with(lambda, *p, &opts)?.into_representation();
            let v = match op {
                SpechtOp::Hom => {
                    let mu = mu
                        .as_ref()
                        .ok_or_else(|| CliError::Usage("specht hom needs --mu".into()))?;
                    let b = build_specht_with(mu, *p, &opts)?.into_representation();
                    json!({
                        "inputs": { "p": p, "lam": lambda, "mu": mu },
                        "dims": [a.dim(), b.dim()],
                        "result": hom_dim(&a, &b)?,
                        "method": "spinning",
                    })
                }
                SpechtOp::Decomposable => {
                    let dec = is_decomposable(&a, &opts)?;
                    json!({
                        "inputs": { "p": p, "lambda": lambda },
                        "dims": [a.dim()],
                        "result": dec.decomposable,
                        "method": dec.method,
                        "end_dim": dec.end_dim,
                    })
                }
                SpechtOp::H0 => json!({
                    "inputs": { "p": p, "lambda": lambda },
                    "dims": [a.dim()],
                    "result": invariants_dim(&a),
                    "method": "nullspace",
                }),
            };
            Outcome::plain(v)
        }
        Request::Search {
            search,
            p,
            d,
            lambda,
            max_b,
            jobs,
        } => {
            let opts = SearchOptions { jobs: *jobs };
            let d = || d.ok_or_else(|| missing(*search, "d"));
            let report = match search {
                SearchKind::FixedPoints => twistlab_lab::find_twist_commuting(d()?, *p, &opts)?,
                SearchKind::Persistence => twistlab_lab::check_twist_persistence(d()?, *p, &opts)?,
                SearchKind::PImage => twistlab_lab::find_p_image(d()?, *p, &opts)?,
                SearchKind::KsStability => twistlab_lab::ks_stability_scan(d()?, *p, &opts)?,
                SearchKind::Census => twistlab_lab::census(d()?, *p)?,
                SearchKind::MultiTwist => {
                    let lambda = lambda.as_ref().ok_or_else(|| missing(*search, "lambda"))?;
                    let max_b = max_b.ok_or_else(|| missing(*search, "max-b"))?;
                    twistlab_lab::multi_twist_scan(lambda, *p, max_b, &opts)?
                }
            };
            Outcome {
                value: to_value(&report),
                report: Some(report),
            }
        }
    };
    Ok(out)
}
