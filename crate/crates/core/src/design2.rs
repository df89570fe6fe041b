//! Weighted complex projective 2-designs from the two orthoplex families.
//!
//! A weighted set of unit vectors is a `t`-design iff
//! `sum_{j,l} w_j w_l |<x_j, x_l>|^{2t} = binom(K+t-1, t)^{-1}`, the sum
//! running over all ordered pairs including `j = l`. [`design_sum`] checks
//! that scalar identity; [`projector_sum_check`] checks the defining operator
//! identity `sum_j w_j (x_j x_j^*)^{(x)t} = binom(K+t-1, t)^{-1} Pi_sym`
//! directly, so the two certificates cross-validate.
//!
//! The closed-form weights are kept as exact rationals and only converted
//! to `f64` when the weighted frame is assembled.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{equiangularity, gramian, mutual_unbiasedness, tightness};
use crate::arith::binomial;
use crate::framegen::{flatness_deviation, partition_picket_blocks, Frame, FrameError, Label};
use crate::tolerance::Tolerances;

pub type Rational = Ratio<i128>;

/// Largest `K` accepted by the `t = 2` operator check (`K^2 x K^2` matrices).
pub const PROJECTOR_DIM_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Design2Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("prerequisite failed: {0}")]
    PrereqFailed(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("dimension {k} too large for t = {t} (cap {cap})")]
    DimTooLarge { k: usize, t: u32, cap: usize },
    #[error("unsupported design order t = {0}")]
    UnsupportedOrder(u32),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// A frame with one positive weight per vector, summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedFrame {
    #[serde(flatten)]
    pub frame: Frame,
    pub weights: Vec<f64>,
}

impl WeightedFrame {
    pub fn new(frame: Frame, weights: Vec<f64>, tol: &Tolerances) -> Result<Self, Design2Error> {
        if weights.len() != frame.len() {
            return Err(Design2Error::InvalidWeights(format!(
                "{} weights for {} vectors",
                weights.len(),
                frame.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| !(w > 0.0 && w <= 1.0)) {
            return Err(Design2Error::InvalidWeights(format!(
                "weight {w} outside (0, 1]"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > tol.weight {
            return Err(Design2Error::InvalidWeights(format!(
                "weights sum to {total}"
            )));
        }
        Ok(Self { frame, weights })
    }

    /// Uniform weights `1/N`.
    pub fn uniform(frame: Frame) -> Self {
        let n = frame.len();
        Self {
            frame,
            weights: vec![1.0 / n as f64; n],
        }
    }
}

/// `(alpha, beta)` for the basis + `(K^2-K+1)`-vector flat ETF family:
/// `alpha = (K^2-K+1) / (K (K^3+1))`, `beta = K / (K^3+1)`.
pub fn singer_weight_pair(k: u32) -> (Rational, Rational) {
    let k = k as i128;
    (
        Rational::new(k * k - k + 1, k * (k * k * k + 1)),
        Rational::new(k, k * k * k + 1),
    )
}

/// `(alpha, beta)` for the basis + picket-fence family:
/// `alpha = 1 / (K (K+1))`, `beta = K / ((K+1)(K^2-1))`.
pub fn picket_weight_pair(k: u32) -> (Rational, Rational) {
    let k = k as i128;
    (
        Rational::new(1, k * (k + 1)),
        Rational::new(k, (k + 1) * (k * k - 1)),
    )
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Splits into `(basis, cyclic)` parts and checks the counts.
fn split(f: &Frame, cyclic_count: usize) -> Result<(usize, Frame), Design2Error> {
    let k = f.dim();
    let basis = f.basis_count();
    let cyclic = f.cyclic_part();
    if basis != k || cyclic.len() != cyclic_count || basis + cyclic.len() != f.len() {
        return Err(Design2Error::ShapeMismatch(format!(
            "expected {k} basis + {cyclic_count} cyclic vectors, got {basis} basis + {} cyclic of {} total",
            cyclic.len(),
            f.len()
        )));
    }
    Ok((basis, cyclic))
}

fn check_flat(f: &Frame, tol: &Tolerances) -> Result<(), Design2Error> {
    match f
        .vectors()
        .iter()
        .position(|v| flatness_deviation(v) > tol.flat)
    {
        Some(i) => Err(Design2Error::PrereqFailed(format!(
            "vector {i} is not flat"
        ))),
        None => Ok(()),
    }
}

fn assign(
    f: &Frame,
    alpha: Rational,
    beta: Rational,
    tol: &Tolerances,
) -> Result<WeightedFrame, Design2Error> {
    let (a, b) = (to_f64(alpha), to_f64(beta));
    let weights = f
        .labels()
        .iter()
        .map(|l| if matches!(l, Label::Basis(_)) { a } else { b })
        .collect();
    WeightedFrame::new(f.clone(), weights, tol)
}

/// Weights for the canonical basis adjoined to a flat equiangular tight frame
/// of `K^2 - K + 1` cyclic vectors.
pub fn singer_weights(f: &Frame, tol: &Tolerances) -> Result<WeightedFrame, Design2Error> {
    let k = f.dim();
    let (_, cyclic) = split(f, k * k - k + 1)?;
    check_flat(&cyclic, tol)?;
    if !tightness(&cyclic, tol).is_tight {
        return Err(Design2Error::PrereqFailed(
            "cyclic part is not tight".into(),
        ));
    }
    if !equiangularity(&cyclic, tol).is_equiangular {
        return Err(Design2Error::PrereqFailed(
            "cyclic part is not equiangular".into(),
        ));
    }
    let (alpha, beta) = singer_weight_pair(k as u32);
    assign(f, alpha, beta, tol)
}

/// Weights for the canonical basis adjoined to a picket-fence cyclic frame of
/// `K^2 - 1` vectors, whose `K - 1` blocks must be flat equiangular tight
/// frames that are pairwise mutually unbiased.
pub fn picket_weights(f: &Frame, tol: &Tolerances) -> Result<WeightedFrame, Design2Error> {
    let k = f.dim();
    if k < 2 {
        return Err(Design2Error::ShapeMismatch(
            "picket family needs K >= 2".into(),
        ));
    }
    let (_, cyclic) = split(f, k * k - 1)?;
    check_flat(&cyclic, tol)?;
    let blocks = partition_picket_blocks(&cyclic, k);
    let within = 1.0 / (k * k) as f64;
    for (l, b) in blocks.iter().enumerate() {
        if !tightness(b, tol).is_tight {
            return Err(Design2Error::PrereqFailed(format!(
                "block {l} is not tight"
            )));
        }
        let e = equiangularity(b, tol);
        let ok = e.is_equiangular
            && e.common_value
                .is_some_and(|v| (v * v - within).abs() <= tol.magnitude);
        if !ok {
            return Err(Design2Error::PrereqFailed(format!(
                "block {l} is not equiangular at 1/K"
            )));
        }
    }
    for x in 0..blocks.len() {
        for y in x + 1..blocks.len() {
            if !mutual_unbiasedness(&blocks[x], &blocks[y], tol).expect("same dimension") {
                return Err(Design2Error::PrereqFailed(format!(
                    "blocks {x} and {y} are not unbiased"
                )));
            }
        }
    }
    let (alpha, beta) = picket_weight_pair(k as u32);
    assign(f, alpha, beta, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignCertificate {
    pub t: u32,
    /// `1 / binom(K+t-1, t)`.
    pub target: f64,
    /// `sum_{j,l} w_j w_l |<x_j, x_l>|^{2t}`.
    pub achieved: f64,
    pub defect: f64,
    pub tolerance: f64,
    pub verdict: bool,
}

/// The weighted Gramian power sum, reduced row by row in index order.
pub fn design_sum(wf: &WeightedFrame, t: u32, tol: &Tolerances) -> DesignCertificate {
    let k = wf.frame.dim() as u64;
    let target = 1.0 / binomial(k + t as u64 - 1, t as u64) as f64;
    let g = gramian(&wf.frame);
    let w = &wf.weights;
    let n = w.len();
    let achieved: f64 = (0..n)
        .map(|j| {
            let row: f64 = (0..n)
                .map(|l| w[l] * g[(j, l)].norm_sqr().powi(t as i32))
                .sum();
            w[j] * row
        })
        .sum();
    let defect = (achieved - target).abs();
    DesignCertificate {
        t,
        target,
        achieved,
        defect,
        tolerance: tol.design,
        verdict: defect <= tol.design,
    }
}

/// Projector onto the symmetric subspace of `(C^K)^{(x)t}`, `t` in {1, 2}.
pub fn symmetric_projector(k: usize, t: u32) -> Result<DMatrix<C64>, Design2Error> {
    match t {
        1 => Ok(DMatrix::identity(k, k)),
        2 => {
            let d = k * k;
            // (I + SWAP) / 2 with SWAP |a b> = |b a>, |a b> at index a K + b.
            Ok(DMatrix::from_fn(d, d, |r, c| {
                let id = if r == c { 1.0 } else { 0.0 };
                let (a, b) = (c / k, c % k);
                let swap = if r == b * k + a { 1.0 } else { 0.0 };
                C64::new((id + swap) / 2.0, 0.0)
            }))
        }
        _ => Err(Design2Error::UnsupportedOrder(t)),
    }
}

/// Frobenius distance between `sum_j w_j (x_j x_j^*)^{(x)t}` and
/// `binom(K+t-1, t)^{-1} Pi_sym`.
pub fn projector_sum_check(wf: &WeightedFrame, t: u32) -> Result<f64, Design2Error> {
    let k = wf.frame.dim();
    if t == 2 && k > PROJECTOR_DIM_CAP {
        return Err(Design2Error::DimTooLarge {
            k,
            t,
            cap: PROJECTOR_DIM_CAP,
        });
    }
    let pi = symmetric_projector(k, t)?;
    let d = pi.nrows();
    let mut sum = DMatrix::<C64>::zeros(d, d);
    for (v, &w) in wf.frame.vectors().iter().zip(&wf.weights) {
        let p = v * v.adjoint();
        let term = if t == 1 { p } else { p.kronecker(&p) };
        sum += term * C64::new(w, 0.0);
    }
    let scale = 1.0 / binomial((k as u64) + t as u64 - 1, t as u64) as f64;
    Ok((sum - pi * C64::new(scale, 0.0)).norm())
}
