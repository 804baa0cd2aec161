use super::band::SampledModel;
use super::enumerate::ReadoutKernel;
use super::{BandConfig, CnotErrorDistribution};
use crate::codes::EncodingLayout;
use crate::error::check_probability;
use crate::Result;

/// Mean change in logical error from using `(p0r, p1r)` instead of the encoded
/// state's own rate on both outcomes, per encoded basis state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetryEffect {
    pub state0: f64,
    pub state1: f64,
}

impl AsymmetryEffect {
    pub fn max_abs(&self) -> f64 {
        self.state0.abs().max(self.state1.abs())
    }
}

pub fn asymmetry_effect(
    layout: &EncodingLayout,
    p0r: f64,
    p1r: f64,
    dist: CnotErrorDistribution,
    config: BandConfig,
) -> Result<AsymmetryEffect> {
    check_probability(|| "p0r".into(), p0r)?;
    check_probability(|| "p1r".into(), p1r)?;
    let model = SampledModel::new(layout, dist, config)?;
    let n = model.len() as f64;
    let mut diff = [0.0; 2];
    let n_data = layout.n_rep() + 1;
    let asym = [
        ReadoutKernel::new(n_data, 0, p0r, p1r),
        ReadoutKernel::new(n_data, 1, p0r, p1r),
    ];
    let sym = [
        ReadoutKernel::new(n_data, 0, p0r, p0r),
        ReadoutKernel::new(n_data, 1, p1r, p1r),
    ];
    for [h0, h1] in model.histograms() {
        diff[0] += h0.apply(&asym[0]).error - h0.apply(&sym[0]).error;
        diff[1] += h1.apply(&asym[1]).error - h1.apply(&sym[1]).error;
    }
    Ok(AsymmetryEffect {
        state0: diff[0] / n,
        state1: diff[1] / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_is_zero() {
        let l = EncodingLayout::split(4).unwrap();
        let d = CnotErrorDistribution::new(0.014, 0.0066).unwrap();
        let e = asymmetry_effect(
            &l,
            0.02,
            0.02,
            d,
            BandConfig {
                n_samples: 100,
                seed: 2,
            },
        )
        .unwrap();
        assert_eq!(e.state0, 0.0);
        assert_eq!(e.state1, 0.0);
    }
}
