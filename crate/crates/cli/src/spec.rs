use std::path::Path;

use anyhow::{bail, Context, Result};
use qrep_core::analytics::{CnotErrorDistribution, SigmaRule};
use qrep_core::apps::UniformNoise;
use qrep_core::calib::{distribution_from_snapshot, uniform_from_snapshot, CalibrationSnapshot};
use qrep_core::codes::EncodingLayout;

/// `--noise` values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSpec {
    None,
    Uniform {
        p_cnot: f64,
        p0r: f64,
        p1r: f64,
    },
    Gaussian {
        dist: CnotErrorDistribution,
        p0r: f64,
        p1r: f64,
    },
}

fn numbers(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(':')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .with_context(|| format!("bad number {x:?} in {what}"))
        })
        .collect()
}

impl NoiseSpec {
    /// `none`, `uniform:P_CNOT:P0R:P1R` or `gaussian:MEAN:SIGMA[:P0R:P1R]`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match (kind, rest) {
            ("none", "") => Ok(NoiseSpec::None),
            ("uniform", r) => match numbers(r, s)?[..] {
                [p_cnot, p0r, p1r] => {
                    UniformNoise::new(p_cnot, p0r, p1r)?;
                    Ok(NoiseSpec::Uniform { p_cnot, p0r, p1r })
                }
                _ => bail!("expected uniform:P_CNOT:P0R:P1R, got {s:?}"),
            },
            ("gaussian", r) => {
                let v = numbers(r, s)?;
                let (m, sd, p0r, p1r) = match v[..] {
                    [m, sd] => (m, sd, 0.0, 0.0),
                    [m, sd, p0r, p1r] => (m, sd, p0r, p1r),
                    _ => bail!("expected gaussian:MEAN:SIGMA[:P0R:P1R], got {s:?}"),
                };
                UniformNoise::new(m, p0r, p1r)?;
                Ok(NoiseSpec::Gaussian {
                    dist: CnotErrorDistribution::new(m, sd)?,
                    p0r,
                    p1r,
                })
            }
            _ => bail!("unknown noise spec {s:?} (use none, uniform:P:P0:P1 or gaussian:M:S[:P0:P1])"),
        }
    }

    /// Uniform parameters; a Gaussian contributes its mean.
    pub fn uniform(&self) -> Result<UniformNoise> {
        Ok(match *self {
            NoiseSpec::None => UniformNoise::noiseless(),
            NoiseSpec::Uniform { p_cnot, p0r, p1r } => UniformNoise::new(p_cnot, p0r, p1r)?,
            NoiseSpec::Gaussian { dist, p0r, p1r } => UniformNoise::new(dist.mean, p0r, p1r)?,
        })
    }

    pub fn distribution(&self) -> Result<CnotErrorDistribution> {
        Ok(match *self {
            NoiseSpec::None => CnotErrorDistribution::fixed(0.0)?,
            NoiseSpec::Uniform { p_cnot, .. } => CnotErrorDistribution::fixed(p_cnot)?,
            NoiseSpec::Gaussian { dist, .. } => dist,
        })
    }
}

/// Where noise parameters come from.
#[derive(Debug, Clone)]
pub enum NoiseSource {
    Spec(NoiseSpec),
    Snapshot(Box<CalibrationSnapshot>),
}

impl NoiseSource {
    pub fn resolve(noise: Option<&str>, snapshot: Option<&Path>) -> Result<Self> {
        match (noise, snapshot) {
            (Some(_), Some(_)) => bail!("--noise and --snapshot cannot be combined"),
            (_, Some(p)) => Ok(NoiseSource::Snapshot(Box::new(
                CalibrationSnapshot::load(p).with_context(|| format!("cannot load snapshot {}", p.display()))?,
            ))),
            (Some(n), None) => Ok(NoiseSource::Spec(NoiseSpec::parse(n)?)),
            (None, None) => Ok(NoiseSource::Spec(NoiseSpec::None)),
        }
    }

    pub fn uniform(&self) -> Result<UniformNoise> {
        match self {
            NoiseSource::Spec(s) => s.uniform(),
            NoiseSource::Snapshot(s) => Ok(uniform_from_snapshot(s)?),
        }
    }

    pub fn distribution(&self, outlier_cutoff: Option<f64>) -> Result<CnotErrorDistribution> {
        match self {
            NoiseSource::Spec(s) => s.distribution(),
            NoiseSource::Snapshot(s) => Ok(distribution_from_snapshot(s, outlier_cutoff)?),
        }
    }
}

/// `chain:N`, `chain-middle:N`, `split:N`, `circular:N`, `none`, or a JSON file.
pub fn parse_layout(s: &str) -> Result<Option<EncodingLayout>> {
    if s == "none" {
        return Ok(None);
    }
    if let Some((kind, n)) = s.split_once(':') {
        if let Ok(n) = n.parse::<usize>() {
            let l = match kind {
                "chain" => EncodingLayout::chain(n)?,
                "chain-middle" => EncodingLayout::chain_middle(n)?,
                "split" => EncodingLayout::split(n)?,
                "circular" => EncodingLayout::circular(n)?,
                _ => bail!("unknown layout kind {kind:?}"),
            };
            return Ok(Some(l));
        }
    }
    let text = std::fs::read_to_string(s)
        .with_context(|| format!("layout {s:?} is neither a layout spec nor a readable file"))?;
    Ok(Some(
        serde_json::from_str(&text).with_context(|| format!("invalid layout file {s}"))?,
    ))
}

/// `zero`, `fixed:S` or `proportional:R`.
pub fn parse_sigma_rule(s: &str) -> Result<SigmaRule> {
    let (kind, v) = s.split_once(':').unwrap_or((s, ""));
    Ok(match kind {
        "zero" => SigmaRule::Zero,
        "fixed" => SigmaRule::Fixed(v.parse()?),
        "proportional" => SigmaRule::Proportional(v.parse()?),
        _ => bail!("unknown sigma rule {s:?} (use zero, fixed:S or proportional:R)"),
    })
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.split(',').map(|x| Ok(x.trim().parse::<T>()?)).collect()
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}
