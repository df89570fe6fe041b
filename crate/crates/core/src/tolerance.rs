//! Numerical tolerances shared by the constructors and certificates.
//!
//! Magnitudes are compared through their squares against exact rationals,
//! so `magnitude` is an absolute tolerance on `|<f, g>|^2`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// `| ||f|| - 1 |` for unit-norm vectors.
    pub norm: f64,
    /// `| |f_i| - 1/sqrt(K) |` for flat vectors.
    pub flat: f64,
    /// Frobenius norm of `S - (N/K) I`.
    pub tight: f64,
    /// Absolute error on squared inner-product magnitudes.
    pub magnitude: f64,
    /// `|achieved - target|` for the weighted Gramian power sum.
    pub design: f64,
    /// `|sum w - 1|`.
    pub weight: f64,
    /// Frobenius residual of the weighted tensor-power projector sum.
    pub projector: f64,
    /// Absolute defect in the modulation-operator Fourier identities.
    pub fourier: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm: 1e-12,
            flat: 1e-12,
            tight: 1e-9,
            magnitude: 1e-9,
            design: 1e-9,
            weight: 1e-12,
            projector: 1e-8,
            fourier: 1e-8,
        }
    }
}
