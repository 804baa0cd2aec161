use super::band::mean_std;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFit {
    pub mu: f64,
    pub sigma: f64,
    pub n_rejected: usize,
}

/// Mean and population standard deviation of `samples`, ignoring values above
/// `outlier_cutoff` when given.
pub fn fit_gaussian(samples: &[f64], outlier_cutoff: Option<f64>) -> Result<GaussianFit> {
    let kept: Vec<f64> = samples
        .iter()
        .copied()
        .filter(|&x| outlier_cutoff.is_none_or(|c| x <= c))
        .collect();
    if kept.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: kept.len(),
        });
    }
    let (mu, sigma) = mean_std(&kept);
    Ok(GaussianFit {
        mu,
        sigma,
        n_rejected: samples.len() - kept.len(),
    })
}
