use std::io::Write;

use serde::{Deserialize, Serialize};

use super::band::SampledModel;
use super::{BandConfig, CnotErrorDistribution};
use crate::codes::EncodingLayout;
use crate::{Error, Result};

/// Readout-error interval searched for a crossover.
pub const CROSSOVER_BRACKET: (f64, f64) = (0.0, 0.5);
pub const BISECTION_TOL: f64 = 1e-6;

/// How the CNOT error spread follows the mean along a crossover curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SigmaRule {
    Zero,
    Fixed(f64),
    /// `sigma = ratio * mean`.
    Proportional(f64),
}

impl SigmaRule {
    pub fn sigma(self, mean: f64) -> f64 {
        match self {
            SigmaRule::Zero => 0.0,
            SigmaRule::Fixed(s) => s,
            SigmaRule::Proportional(r) => r * mean,
        }
    }
}

fn bisect(model: &SampledModel) -> Result<f64> {
    let (mut lo, mut hi) = CROSSOVER_BRACKET;
    let g = |r: f64| model.mean_at(r) - r;
    let g_lo = g(lo);
    if g_lo == 0.0 {
        return Ok(lo);
    }
    // The mean curve meets the diagonal again at 1/2 (fully random readout), so
    // only a clearly positive value there rules out a crossing.
    if g_lo < 0.0 || g(hi) > 1e-12 {
        return Err(Error::NoCrossover { lo, hi });
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Readout error at which the mean logical error equals the physical one.
pub fn crossover_point(layout: &EncodingLayout, dist: CnotErrorDistribution, config: BandConfig) -> Result<f64> {
    bisect(&SampledModel::new(layout, dist, config)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverCurve {
    pub p_cnot: Vec<f64>,
    pub p_r_star: Vec<f64>,
    /// `p_cnot / p_r_star` near the origin.
    pub tangent_slope: f64,
}

impl CrossoverCurve {
    /// CSV with header `p_cnot,p_r_star`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["p_cnot", "p_r_star"])?;
        for (a, b) in self.p_cnot.iter().zip(&self.p_r_star) {
            w.serialize((a, b))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Least-squares slope of `p_cnot` against `p_r_star` through the origin, over
/// the three smallest `p_cnot` values.
fn tangent_slope(p_cnot: &[f64], p_r_star: &[f64]) -> Result<f64> {
    let mut idx: Vec<usize> = (0..p_cnot.len()).collect();
    idx.sort_by(|&a, &b| p_cnot[a].total_cmp(&p_cnot[b]));
    if idx.len() < 3 {
        return Err(Error::InvalidArgument(
            "tangent slope needs at least 3 grid points".into(),
        ));
    }
    let (sxy, sxx) = idx[..3].iter().fold((0.0, 0.0), |(sxy, sxx), &i| {
        (sxy + p_r_star[i] * p_cnot[i], sxx + p_r_star[i] * p_r_star[i])
    });
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "all crossover points near the origin are zero".into(),
        ));
    }
    Ok(sxy / sxx)
}

pub fn crossover_curve(
    layout: &EncodingLayout,
    p_cnot_grid: &[f64],
    sigma: SigmaRule,
    config: BandConfig,
) -> Result<CrossoverCurve> {
    let p_r_star = p_cnot_grid
        .iter()
        .map(|&m| crossover_point(layout, CnotErrorDistribution::new(m, sigma.sigma(m))?, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossoverCurve {
        tangent_slope: tangent_slope(p_cnot_grid, &p_r_star)?,
        p_cnot: p_cnot_grid.to_vec(),
        p_r_star,
    })
}
