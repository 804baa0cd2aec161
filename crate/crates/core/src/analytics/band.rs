use std::io::Write;

use rand::Rng;
use rand_distr::{Distribution as _, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::ReadoutKernel;
use super::EncodedHistogram;
use crate::codes::EncodingLayout;
use crate::error::check_probability;
use crate::rng::substream;
use crate::{Error, Result};

/// Gaussian CNOT error rates, truncated to `[0, 1]` by rejection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CnotErrorDistribution {
    pub mean: f64,
    pub sigma: f64,
}

impl CnotErrorDistribution {
    pub fn new(mean: f64, sigma: f64) -> Result<Self> {
        check_probability(|| "CNOT error mean".into(), mean)?;
        check_probability(|| "CNOT error sigma".into(), sigma)?;
        Ok(CnotErrorDistribution { mean, sigma })
    }

    pub fn fixed(p: f64) -> Result<Self> {
        Self::new(p, 0.0)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.sigma == 0.0 {
            return self.mean;
        }
        let normal = Normal::new(self.mean, self.sigma).expect("finite sigma");
        loop {
            let x = normal.sample(rng);
            if (0.0..=1.0).contains(&x) {
                return x;
            }
        }
    }
}

/// Sample count and master seed for band-type estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandConfig {
    pub n_samples: usize,
    pub seed: u64,
}

impl Default for BandConfig {
    fn default() -> Self {
        BandConfig {
            n_samples: 1000,
            seed: 0,
        }
    }
}

pub(crate) const MIN_SAMPLES: usize = 100;

/// Encoded-state histograms for `n_samples` draws of the CNOT rates.
///
/// Sample `k` draws its rates from substream `k` of the seed, in the order of
/// `layout.cnot_pairs()`, so the same seed gives common random numbers across
/// layouts of equal size and across distributions.
#[derive(Debug, Clone)]
pub struct SampledModel {
    samples: Vec<[EncodedHistogram; 2]>,
}

impl SampledModel {
    pub fn new(layout: &EncodingLayout, dist: CnotErrorDistribution, config: BandConfig) -> Result<Self> {
        if config.n_samples < MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                needed: MIN_SAMPLES,
                got: config.n_samples,
            });
        }
        let (local, _) = layout.compacted();
        let n_pairs = local.cnot_pairs().len();
        let samples = (0..config.n_samples as u64)
            .into_par_iter()
            .map(|k| {
                let mut rng = substream(config.seed, k);
                let rates: Vec<f64> = (0..n_pairs).map(|_| dist.sample(&mut rng)).collect();
                Ok([
                    EncodedHistogram::from_rates(&local, &rates, 0)?,
                    EncodedHistogram::from_rates(&local, &rates, 1)?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampledModel { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn histograms(&self) -> &[[EncodedHistogram; 2]] {
        &self.samples
    }

    /// Per-sample logical error at symmetric readout `p_r`, averaged over the
    /// two encoded basis states (equal under symmetric readout).
    pub fn values_at(&self, p_r: f64) -> Vec<f64> {
        let n = self.samples[0][0].n_data();
        let k0 = ReadoutKernel::new(n, 0, p_r, p_r);
        let k1 = ReadoutKernel::new(n, 1, p_r, p_r);
        self.samples
            .iter()
            .map(|[h0, h1]| 0.5 * (h0.apply(&k0).error + h1.apply(&k1).error))
            .collect()
    }

    pub fn mean_at(&self, p_r: f64) -> f64 {
        mean_std(&self.values_at(p_r)).0
    }
}

/// Mean and population standard deviation; exactly `(v, 0)` for constant input.
pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let first = values[0];
    if values.iter().all(|&v| v == first) {
        return (first, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Mean logical error and its 2σ envelope over a readout-error grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogicalErrorBand {
    pub p_r: Vec<f64>,
    pub mean: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub n_samples: usize,
    pub seed: u64,
}

impl LogicalErrorBand {
    pub fn width(&self, i: usize) -> f64 {
        self.hi[i] - self.lo[i]
    }

    /// CSV with header `p_r,mean,lo,hi`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["p_r", "mean", "lo", "hi"])?;
        for i in 0..self.p_r.len() {
            w.serialize((self.p_r[i], self.mean[i], self.lo[i], self.hi[i]))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Band of the logical error under symmetric readout `p_r` for each grid point.
pub fn sample_band(
    layout: &EncodingLayout,
    dist: CnotErrorDistribution,
    p_r_grid: &[f64],
    config: BandConfig,
) -> Result<LogicalErrorBand> {
    for &p in p_r_grid {
        check_probability(|| "p_r".into(), p)?;
    }
    let model = SampledModel::new(layout, dist, config)?;
    let mut band = LogicalErrorBand {
        p_r: p_r_grid.to_vec(),
        mean: Vec::new(),
        lo: Vec::new(),
        hi: Vec::new(),
        n_samples: config.n_samples,
        seed: config.seed,
    };
    for &p in p_r_grid {
        let (mean, std) = mean_std(&model.values_at(p));
        band.mean.push(mean);
        band.lo.push((mean - 2.0 * std).clamp(0.0, 1.0));
        band.hi.push((mean + 2.0 * std).clamp(0.0, 1.0));
    }
    Ok(band)
}
