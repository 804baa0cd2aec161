//! Exact logical-error functions and what is built on them: Gaussian CNOT-error
//! bands, crossover thresholds, readout-asymmetry effects and Gaussian fits.

mod asymmetry;
mod band;
mod crossover;
mod enumerate;
mod fit;

pub use asymmetry::{asymmetry_effect, AsymmetryEffect};
pub use band::{sample_band, BandConfig, CnotErrorDistribution, LogicalErrorBand, SampledModel};
pub use crossover::{crossover_curve, crossover_point, CrossoverCurve, SigmaRule, BISECTION_TOL, CROSSOVER_BRACKET};
pub use enumerate::{enumerate_logical_error, exact_logical_error, EncodedHistogram, LogicalError};
pub use fit::{fit_gaussian, GaussianFit};
