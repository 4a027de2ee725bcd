//! Search reports: a deterministic body plus run metadata.
//!
//! The body holds everything that depends only on the search parameters.
//! Timing and version live in [`ReportMeta`] next to a SHA-256 of the
//! body's compact JSON, so two runs can be compared byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use twistlab_core::abacus::BlockRow;
use twistlab_core::Partition;

use crate::error::{Error, Result};

pub const SCHEMA: &str = "twistlab.search/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    FixedPoints,
    Persistence,
    PImage,
    MultiTwist,
    KsStability,
    Census,
}

impl SearchKind {
    pub fn name(self) -> &'static str {
        match self {
            SearchKind::FixedPoints => "fixed-points",
            SearchKind::Persistence => "persistence",
            SearchKind::PImage => "p-image",
            SearchKind::MultiTwist => "multi-twist",
            SearchKind::KsStability => "ks-stability",
            SearchKind::Census => "census",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_b: Option<u32>,
}

/// Evidence stored with each row so a report can be audited without
/// rerunning the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `m(p lambda)` against `p m(lambda)`.
    TwistCommutes {
        m_lambda: Partition,
        m_p_lambda: Partition,
    },
    /// For a twist-commuting `lambda`: `m(p^2 lambda)` against `p m(p lambda)`.
    Persistence {
        m_p_lambda: Partition,
        m_p2_lambda: Partition,
        holds: bool,
    },
    /// `m(p lambda) = p tau`.
    PImage { m_p_lambda: Partition, tau: Partition },
    /// `m(p^b lambda) - m(p^a lambda)`, when it is a partition, and whether
    /// it is `p` resp. `p^a` times one.
    MultiTwist {
        a: u32,
        b: u32,
        difference: Option<Partition>,
        divisible_by_p: bool,
        tau: Option<Partition>,
    },
    /// Ext¹ dimensions of the untwisted, once and twice twisted pair.
    KsPair { untwisted: u8, once: u8, twice: u8 },
    Block {
        weight: u64,
        members: Vec<Partition>,
        p_by_p: Vec<bool>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    /// For census rows, the block's core.
    pub lambda: Partition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Partition>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBody {
    pub schema: String,
    pub search: SearchKind,
    pub params: SearchParams,
    /// Number of items the search examined.
    pub scanned: u64,
    pub hits: Vec<Hit>,
    pub counterexamples: Vec<Hit>,
    /// Rows recorded for context: every `(a, b)` pair of a multi-twist
    /// scan, the pairs whose first twist changes the Ext¹ dimension, and
    /// the blocks of a census.
    pub observations: Vec<Hit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub elapsed_ms: u64,
    pub tool_version: String,
    pub body_sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    #[serde(flatten)]
    pub body: ReportBody,
    pub meta: ReportMeta,
}

impl ReportBody {
    pub fn new(search: SearchKind, params: SearchParams) -> Self {
        ReportBody {
            schema: SCHEMA.to_string(),
            search,
            params,
            scanned: 0,
            hits: Vec::new(),
            counterexamples: Vec::new(),
            observations: Vec::new(),
        }
    }

    /// Compact JSON, the bytes that [`ReportBody::digest`] hashes.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("report bodies serialize")
    }

    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical_json().as_bytes());
        hash.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn seal(self, elapsed_ms: u64) -> SearchReport {
        let meta = ReportMeta {
            elapsed_ms,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            body_sha256: self.digest(),
        };
        SearchReport { body: self, meta }
    }
}

const CSV_HEADER: [&str; 4] = ["section", "lambda", "mu", "data"];

#[derive(Serialize, Deserialize)]
struct Summary {
    schema: String,
    search: SearchKind,
    params: SearchParams,
    scanned: u64,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One row per hit, counterexample and observation, after a summary
    /// row carrying the parameters. The `data` column holds JSON.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        let body = &self.body;
        let summary = Summary {
            schema: body.schema.clone(),
            search: body.search,
            params: body.params.clone(),
            scanned: body.scanned,
        };
        w.write_record(["summary", "", "", &serde_json::to_string(&summary)?])?;
        let sections = [
            ("hit", &body.hits),
            ("counterexample", &body.counterexamples),
            ("observation", &body.observations),
        ];
        for (name, rows) in sections {
            for hit in rows {
                let mu = hit.mu.as_ref().map(ToString::to_string).unwrap_or_default();
                w.write_record([
                    name,
                    &hit.lambda.to_string(),
                    &mu,
                    &serde_json::to_string(&hit.certificate)?,
                ])?;
            }
        }
        let meta = serde_json::to_string(&self.meta)?;
        w.write_record(["meta", "", "", &meta])?;
        let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Inverse of [`SearchReport::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut summary: Option<Summary> = None;
        let mut meta: Option<ReportMeta> = None;
        let (mut hits, mut counterexamples, mut observations) = (Vec::new(), Vec::new(), Vec::new());
        for record in r.records() {
            let record = record?;
            let field = |i: usize| record.get(i).unwrap_or("");
            let partition = |s: &str| -> Result<Partition> { Ok(s.parse()?) };
            let row = || -> Result<Hit> {
                Ok(Hit {
                    lambda: partition(field(1))?,
                    mu: if field(2).is_empty() {
                        None
                    } else {
                        Some(partition(field(2))?)
                    },
                    certificate: serde_json::from_str(field(3))?,
                })
            };
            match field(0) {
                "summary" => summary = Some(serde_json::from_str(field(3))?),
                "meta" => meta = Some(serde_json::from_str(field(3))?),
                "hit" => hits.push(row()?),
                "counterexample" => counterexamples.push(row()?),
                "observation" => observations.push(row()?),
                other => return Err(Error::Csv(format!("unknown section {other:?}"))),
            }
        }
        let summary = summary.ok_or_else(|| Error::Csv("missing summary row".into()))?;
        let meta = meta.ok_or_else(|| Error::Csv("missing meta row".into()))?;
        Ok(SearchReport {
            body: ReportBody {
                schema: summary.schema,
                search: summary.search,
                params: summary.params,
                scanned: summary.scanned,
                hits,
                counterexamples,
                observations,
            },
            meta,
        })
    }

    /// Plain-text rendering for terminals.
    pub fn to_table(&self) -> String {
        let b = &self.body;
        let mut out = String::new();
        let _ = writeln!(out, "search      {}", b.search.name());
        let _ = writeln!(out, "p           {}", b.params.p);
        if let Some(d) = b.params.d {
            let _ = writeln!(out, "d           {d}");
        }
        if let Some(l) = &b.params.lambda {
            let _ = writeln!(out, "lambda      ({l})");
        }
        if let Some(m) = b.params.max_b {
            let _ = writeln!(out, "max b       {m}");
        }
        let _ = writeln!(out, "scanned     {}", b.scanned);
        let _ = writeln!(out, "hits        {}", b.hits.len());
        let _ = writeln!(out, "counterex.  {}", b.counterexamples.len());
        for (name, rows) in [
            ("hit", &b.hits),
            ("counterexample", &b.counterexamples),
            ("observation", &b.observations),
        ] {
            for h in rows {
                let mu = h.mu.as_ref().map(|m| format!(" / ({m})")).unwrap_or_default();
                let _ = writeln!(out, "{name:<15} ({}){mu}  {}", h.lambda, describe(&h.certificate));
            }
        }
        let _ = writeln!(out, "elapsed     {} ms", self.meta.elapsed_ms);
        let _ = writeln!(out, "sha256      {}", self.meta.body_sha256);
        out
    }
}

fn paren(p: &Partition) -> String {
    format!("({p})")
}

fn describe(c: &Certificate) -> String {
    match c {
        Certificate::TwistCommutes { m_lambda, m_p_lambda } => {
            format!("m = {}, m(p.) = {}", paren(m_lambda), paren(m_p_lambda))
        }
        Certificate::Persistence {
            m_p_lambda,
            m_p2_lambda,
            holds,
        } => format!(
            "m(p.) = {}, m(p^2.) = {}, holds = {holds}",
            paren(m_p_lambda),
            paren(m_p2_lambda)
        ),
        Certificate::PImage { m_p_lambda, tau } => {
            format!("m(p.) = {}, tau = {}", paren(m_p_lambda), paren(tau))
        }
        Certificate::MultiTwist {
            a,
            b,
            difference,
            divisible_by_p,
            tau,
        } => format!(
            "a = {a}, b = {b}, difference = {}, divisible by p = {divisible_by_p}, tau = {}",
            difference.as_ref().map_or("none".into(), paren),
            tau.as_ref().map_or("none".into(), paren)
        ),
        Certificate::KsPair {
            untwisted,
            once,
            twice,
        } => format!("dims {untwisted} / {once} / {twice}"),
        Certificate::Block {
            weight,
            members,
            p_by_p,
        } => format!(
            "weight {weight}, {} members, {} p x p",
            members.len(),
            p_by_p.iter().filter(|&&f| f).count()
        ),
    }
}

/// Census rows from the abacus block listing.
pub(crate) fn block_hits(rows: Vec<BlockRow>) -> Vec<Hit> {
    rows.into_iter()
        .map(|r| Hit {
            lambda: r.p_core,
            mu: None,
            certificate: Certificate::Block {
                weight: r.weight,
                members: r.members,
                p_by_p: r.p_by_p,
            },
        })
        .collect()
}
