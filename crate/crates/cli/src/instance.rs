//! Instance specs: a file path or a generator spec such as
//! `tight:d=3,eps=0.1` or `random:n=100,m=200,min=2,max=5,seed=1`.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hypermatch::io::{
    apply_weight_policy, generate_random, generate_tight_family, parse_hgr, parse_metis_graph,
    SizeDist, WeightPolicy,
};
use hypermatch::{Hypergraph, IsolatedVertices};

use crate::args::{FormatArg, InputArgs, WeightsArg};

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    File(String),
    Tight {
        d: usize,
        eps: f64,
    },
    Random {
        n: usize,
        m: usize,
        sizes: SizeDist,
        seed: u64,
    },
}

fn params(body: &str) -> Result<HashMap<&str, &str>> {
    body.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .with_context(|| format!("expected key=value, got '{p}'"))
        })
        .collect()
}

fn get<T: std::str::FromStr>(map: &HashMap<&str, &str>, key: &str, spec: &str) -> Result<T> {
    let raw = map
        .get(key)
        .with_context(|| format!("'{spec}' is missing '{key}'"))?;
    raw.parse()
        .map_err(|_| anyhow::anyhow!("bad value '{raw}' for '{key}' in '{spec}'"))
}

fn check_keys(map: &HashMap<&str, &str>, allowed: &[&str], spec: &str) -> Result<()> {
    if let Some(k) = map.keys().find(|k| !allowed.contains(k)) {
        bail!("unknown key '{k}' in '{spec}'");
    }
    Ok(())
}

impl Source {
    pub fn parse(spec: &str) -> Result<Source> {
        if let Some(body) = spec.strip_prefix("tight:") {
            let map = params(body)?;
            check_keys(&map, &["d", "eps"], spec)?;
            return Ok(Source::Tight {
                d: get(&map, "d", spec)?,
                eps: get(&map, "eps", spec)?,
            });
        }
        if let Some(body) = spec.strip_prefix("random:") {
            let map = params(body)?;
            check_keys(&map, &["n", "m", "size", "min", "max", "seed"], spec)?;
            let sizes = if map.contains_key("size") {
                SizeDist::fixed(get(&map, "size", spec)?)
            } else {
                SizeDist::uniform(get(&map, "min", spec)?, get(&map, "max", spec)?)
            };
            return Ok(Source::Random {
                n: get(&map, "n", spec)?,
                m: get(&map, "m", spec)?,
                sizes,
                seed: map
                    .get("seed")
                    .map_or(Ok(0), |s| s.parse())
                    .context("bad seed")?,
            });
        }
        Ok(Source::File(spec.to_string()))
    }

    pub fn build(&self, format: FormatArg, isolated: IsolatedVertices) -> Result<Hypergraph> {
        match self {
            Source::Tight { d, eps } => Ok(generate_tight_family(*d, *eps)?),
            Source::Random { n, m, sizes, seed } => Ok(generate_random(*n, *m, *sizes, *seed)?),
            Source::File(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read '{path}'"))?;
                let metis = match format {
                    FormatArg::Metis => true,
                    FormatArg::Hgr => false,
                    FormatArg::Auto => matches!(
                        Path::new(path).extension().and_then(|e| e.to_str()),
                        Some("graph" | "metis")
                    ),
                };
                let h = if metis {
                    parse_metis_graph(&text, isolated)
                } else {
                    parse_hgr(&text, isolated)
                };
                h.with_context(|| format!("cannot parse '{path}'"))
            }
        }
    }
}

pub fn weight_policy(weights: WeightsArg, seed: u64) -> WeightPolicy {
    match weights {
        WeightsArg::File => WeightPolicy::FromFile,
        WeightsArg::Unit => WeightPolicy::Unit,
        WeightsArg::Random => WeightPolicy::Random1To100(seed),
    }
}

/// Parses the spec, builds the instance and applies the weight policy.
pub fn load(spec: &str, input: &InputArgs) -> Result<Hypergraph> {
    let isolated = if input.drop_isolated {
        IsolatedVertices::Drop
    } else {
        IsolatedVertices::Reject
    };
    let h = Source::parse(spec)?.build(input.format, isolated)?;
    Ok(apply_weight_policy(
        h,
        weight_policy(input.weights, input.weight_seed),
    ))
}
