//! Certificates for frame geometry.
//!
//! Inner products are linear in the first argument and conjugate-linear in
//! the second throughout: `<x, y> = sum_i x_i conj(y_i)`, the Gramian is
//! `G[a][b] = <f_a, f_b>`, and the Hilbert-Schmidt product is
//! `<A, B> = tr(A B^*)`. The Fourier identities for modulation operators
//! hold with exactly these conventions.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;
use thiserror::Error;

use crate::framegen::{cyclic_frame, root_of_unity, Frame, GeneratingSequence};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("need at least two vectors, got {0}")]
    TooFewVectors(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// `<x, y> = sum_i x_i conj(y_i)`.
pub fn inner(x: &nalgebra::DVector<C64>, y: &nalgebra::DVector<C64>) -> C64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum()
}

/// `G[a][b] = <f_a, f_b>`.
pub fn gramian(f: &Frame) -> DMatrix<C64> {
    let a = f.matrix();
    a.transpose() * a.map(|z| z.conj())
}

fn max_off_diagonal_sq(g: &DMatrix<C64>) -> f64 {
    let n = g.nrows();
    let mut best = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            if a != b {
                best = best.max(g[(a, b)].norm_sqr());
            }
        }
    }
    best
}

/// `max_{j != l} |<f_j, f_l>|`.
pub fn coherence(f: &Frame) -> Result<f64, AnalysisError> {
    if f.len() < 2 {
        return Err(AnalysisError::TooFewVectors(f.len()));
    }
    Ok(max_off_diagonal_sq(&gramian(f)).sqrt())
}

/// `sqrt((N - K) / (K (N - 1)))`; zero when `N <= K`.
pub fn welch_bound(n: usize, k: usize) -> f64 {
    if n <= k {
        return 0.0;
    }
    let (n, k) = (n as f64, k as f64);
    ((n - k) / (k * (n - 1.0))).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoplexVerdict {
    /// `N >= K^2 + 1`.
    pub applicable: bool,
    /// `1 / sqrt(K)`.
    pub bound: f64,
    pub coherence: Option<f64>,
    /// Applicable and the coherence meets the bound.
    pub is_ogf: bool,
    /// `2 (K^2 - 1)`, the largest size at which the bound can be met.
    pub max_frame_size: usize,
    pub within_size_cap: bool,
}

pub fn orthoplex_check(f: &Frame, tol: &Tolerances) -> OrthoplexVerdict {
    let (n, k) = (f.len(), f.dim());
    let applicable = n > k * k;
    let coherence = coherence(f).ok();
    let is_ogf =
        applicable && coherence.is_some_and(|c| (c * c - 1.0 / k as f64).abs() <= tol.magnitude);
    let max_frame_size = 2 * (k * k).saturating_sub(1);
    OrthoplexVerdict {
        applicable,
        bound: 1.0 / (k as f64).sqrt(),
        coherence,
        is_ogf,
        max_frame_size,
        within_size_cap: n <= max_frame_size,
    }
}

/// `S = sum_j f_j f_j^*`.
pub fn frame_operator(f: &Frame) -> DMatrix<C64> {
    let a = f.matrix();
    &a * a.adjoint()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tightness {
    /// `|| S - (N/K) I ||_F`.
    pub residual: f64,
    /// `A = N / K`.
    pub bound: f64,
    pub is_tight: bool,
}

pub fn tightness(f: &Frame, tol: &Tolerances) -> Tightness {
    let k = f.dim();
    let bound = f.len() as f64 / k as f64;
    let target = DMatrix::<C64>::identity(k, k) * C64::new(bound, 0.0);
    let residual = (frame_operator(f) - target).norm();
    Tightness {
        residual,
        bound,
        is_tight: residual <= tol.tight,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equiangularity {
    pub is_equiangular: bool,
    pub common_value: Option<f64>,
}

/// All off-diagonal squared magnitudes equal within the magnitude tolerance.
pub fn equiangularity(f: &Frame, tol: &Tolerances) -> Equiangularity {
    let g = gramian(f);
    let n = g.nrows();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let m = g[(a, b)].norm_sqr();
                lo = lo.min(m);
                hi = hi.max(m);
            }
        }
    }
    if n < 2 {
        return Equiangularity {
            is_equiangular: true,
            common_value: None,
        };
    }
    let is_equiangular = hi - lo <= tol.magnitude;
    Equiangularity {
        is_equiangular,
        common_value: is_equiangular.then(|| ((lo + hi) / 2.0).sqrt()),
    }
}

/// Every cross inner product has magnitude `1/sqrt(K)`.
pub fn mutual_unbiasedness(
    f1: &Frame,
    f2: &Frame,
    tol: &Tolerances,
) -> Result<bool, AnalysisError> {
    if f1.dim() != f2.dim() {
        return Err(AnalysisError::DimMismatch(f1.dim(), f2.dim()));
    }
    let target = 1.0 / f1.dim() as f64;
    Ok(f1.vectors().iter().all(|x| {
        f2.vectors()
            .iter()
            .all(|y| (inner(x, y).norm_sqr() - target).abs() <= tol.magnitude)
    }))
}

/// `X_xi = sum_j w^{xi j} f_j f_j^*` with `w = exp(2 pi i / M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationOperator {
    pub xi: u64,
    pub matrix: DMatrix<C64>,
}

/// One operator per `xi` in `Z_M`, where the frame is indexed by `Z_M` in
/// its stored order.
pub fn modulation_operators(f: &Frame) -> Vec<ModulationOperator> {
    let m = f.len() as u64;
    let k = f.dim();
    let projectors: Vec<DMatrix<C64>> = f.vectors().iter().map(|v| v * v.adjoint()).collect();
    (0..m)
        .map(|xi| {
            let mut x = DMatrix::<C64>::zeros(k, k);
            for (j, p) in projectors.iter().enumerate() {
                x += p * root_of_unity(xi as i128 * j as i128, m);
            }
            ModulationOperator { xi, matrix: x }
        })
        .collect()
}

/// `<A, B>_HS = tr(A B^*)`.
pub fn hs_inner(a: &DMatrix<C64>, b: &DMatrix<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// Largest `| (X_xi)_{ab} - expected |`, where the expected entry is `M/K`
/// when `n_b - n_a = xi (mod M)` and 0 otherwise.
pub fn modulation_entry_defect(ops: &[ModulationOperator], seq: &GeneratingSequence) -> f64 {
    let m = seq.modulus();
    let n = seq.exponents();
    let k = n.len();
    let peak = m as f64 / k as f64;
    let mut worst = 0.0f64;
    for op in ops {
        for a in 0..k {
            for b in 0..k {
                let hit = (n[b] + m - n[a]) % m == op.xi % m;
                let expected = if hit { peak } else { 0.0 };
                worst = worst.max((op.matrix[(a, b)] - C64::new(expected, 0.0)).norm());
            }
        }
    }
    worst
}

/// True when no entry position is (numerically) nonzero in two different
/// operators. Entries below `threshold` in magnitude count as zero.
pub fn supports_disjoint(ops: &[ModulationOperator], threshold: f64) -> bool {
    let Some(first) = ops.first() else {
        return true;
    };
    let (r, c) = first.matrix.shape();
    let mut owner = vec![None; r * c];
    for (idx, op) in ops.iter().enumerate() {
        for (pos, z) in op.matrix.iter().enumerate() {
            if z.norm() > threshold {
                if owner[pos].is_some() {
                    return false;
                }
                owner[pos] = Some(idx);
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierCheck {
    /// `max_{a,b} | M^2 |<f_a,f_b>|^2 - sum_{xi,eta} w^{b eta - a xi} <X_xi, X_eta> |`.
    pub double_sum_defect: f64,
    /// `max_{xi != zeta} |<X_xi, X_zeta>|`.
    pub hs_orthogonality_defect: f64,
    /// `max_a | M^2 |<h_a, h_0>|^2 - sum_xi w^{a xi} ||X_xi||^2 |`, computed
    /// only when the operators are HS-orthogonal within tolerance.
    pub single_sum_defect: Option<f64>,
    pub pass: bool,
}

pub fn fourier_identity_check(f: &Frame, tol: &Tolerances) -> FourierCheck {
    let m = f.len();
    let ops = modulation_operators(f);
    let hs = DMatrix::<C64>::from_fn(m, m, |x, y| hs_inner(&ops[x].matrix, &ops[y].matrix));
    let w: Vec<C64> = (0..m).map(|r| root_of_unity(r as i128, m as u64)).collect();
    let g = gramian(f);
    let m2 = (m * m) as f64;

    // R[a][b] = sum_xi w^{-a xi} sum_eta w^{b eta} H[xi][eta], in two passes.
    let t = DMatrix::<C64>::from_fn(m, m, |xi, b| {
        (0..m).map(|eta| w[(b * eta) % m] * hs[(xi, eta)]).sum()
    });
    let mut double_sum_defect = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            let r: C64 = (0..m)
                .map(|xi| w[(m - (a * xi) % m) % m] * t[(xi, b)])
                .sum();
            let lhs = m2 * g[(a, b)].norm_sqr();
            double_sum_defect = double_sum_defect.max((C64::new(lhs, 0.0) - r).norm());
        }
    }

    let mut hs_orthogonality_defect = 0.0f64;
    for x in 0..m {
        for y in 0..m {
            if x != y {
                hs_orthogonality_defect = hs_orthogonality_defect.max(hs[(x, y)].norm());
            }
        }
    }

    let single_sum_defect = (hs_orthogonality_defect <= tol.fourier).then(|| {
        (0..m)
            .map(|a| {
                let r: C64 = (0..m).map(|xi| w[(a * xi) % m] * hs[(xi, xi)].re).sum();
                (C64::new(m2 * g[(a, 0)].norm_sqr(), 0.0) - r).norm()
            })
            .fold(0.0, f64::max)
    });

    let pass =
        double_sum_defect <= tol.fourier && single_sum_defect.is_none_or(|d| d <= tol.fourier);
    FourierCheck {
        double_sum_defect,
        hs_orthogonality_defect,
        single_sum_defect,
        pass,
    }
}

/// Reads the exponents off `h_1` of a frame stored in `Z_M` order and
/// rebuilds the cyclic frame; returns the sequence only if the rebuilt frame
/// matches every vector within `tol`.
pub fn recover_generating_sequence(f: &Frame, tol: f64) -> Option<GeneratingSequence> {
    let m = f.len() as u64;
    if m == 0 {
        return None;
    }
    let exponents: Vec<u64> = if m == 1 {
        vec![0; f.dim()]
    } else {
        f.vectors()[1]
            .iter()
            .map(|z| {
                let t = z.arg() / std::f64::consts::TAU * m as f64;
                (t.round() as i64).rem_euclid(m as i64) as u64
            })
            .collect()
    };
    let seq = GeneratingSequence::new(m, exponents).ok()?;
    let rebuilt = cyclic_frame(&seq);
    let close = rebuilt
        .vectors()
        .iter()
        .zip(f.vectors())
        .all(|(a, b)| (a - b).norm() <= tol);
    close.then_some(seq)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PicketRow {
    pub a: u64,
    pub expected: f64,
    pub observed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PicketTable {
    pub k: usize,
    pub rows: Vec<PicketRow>,
    pub first_violation: Option<u64>,
}

impl PicketTable {
    pub fn pass(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks `|<h_0, h_a>|` against 1 (`a = 0`), `1/K` (`a != 0`,
/// `a = 0 mod K-1`) and `1/sqrt K` (otherwise) for every `a` in
/// `Z_{K^2-1}`. Uses the cyclic-labelled vectors when present.
pub fn certify_picket_values(
    f: &Frame,
    k: usize,
    tol: &Tolerances,
) -> Result<PicketTable, AnalysisError> {
    let cyclic = f.cyclic_part();
    let h = if cyclic.is_empty() { f.clone() } else { cyclic };
    if k < 2 || h.dim() != k || h.len() != k * k - 1 {
        return Err(AnalysisError::ShapeMismatch(format!(
            "expected K^2 - 1 = {} vectors in C^{k}, got {} in C^{}",
            (k * k).saturating_sub(1),
            h.len(),
            h.dim()
        )));
    }
    let kf = k as f64;
    let v = h.vectors();
    let rows: Vec<PicketRow> = (0..h.len())
        .map(|a| {
            let expected_sq = if a == 0 {
                1.0
            } else if a % (k - 1) == 0 {
                1.0 / (kf * kf)
            } else {
                1.0 / kf
            };
            let observed_sq = inner(&v[0], &v[a]).norm_sqr();
            PicketRow {
                a: a as u64,
                expected: expected_sq.sqrt(),
                observed: observed_sq.sqrt(),
                pass: (observed_sq - expected_sq).abs() <= tol.magnitude,
            }
        })
        .collect();
    let first_violation = rows.iter().find(|r| !r.pass).map(|r| r.a);
    Ok(PicketTable {
        k,
        rows,
        first_violation,
    })
}

/// Structured summary of the geometric certificates for one frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub dim: usize,
    pub coherence: Option<f64>,
    pub welch_bound: f64,
    pub orthoplex_bound: f64,
    pub orthoplex_applicable: bool,
    pub max_frame_size_bound: usize,
    pub tightness_residual: f64,
    pub frame_bound: f64,
    pub is_tight: bool,
    pub is_equiangular: bool,
    pub equiangular_value: Option<f64>,
    pub is_ogf: bool,
    pub tolerances: Tolerances,
}

pub fn analyze(f: &Frame, tol: &Tolerances) -> AnalysisReport {
    let ortho = orthoplex_check(f, tol);
    let tight = tightness(f, tol);
    let eq = equiangularity(f, tol);
    AnalysisReport {
        n: f.len(),
        dim: f.dim(),
        coherence: ortho.coherence,
        welch_bound: welch_bound(f.len(), f.dim()),
        orthoplex_bound: ortho.bound,
        orthoplex_applicable: ortho.applicable,
        max_frame_size_bound: ortho.max_frame_size,
        tightness_residual: tight.residual,
        frame_bound: tight.bound,
        is_tight: tight.is_tight,
        is_equiangular: eq.is_equiangular,
        equiangular_value: eq.common_value,
        is_ogf: ortho.is_ogf,
        tolerances: *tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framegen::{
        chirp_mub, cyclic_frame, drop_basis_vectors, example_5_2, picket_blocks, picket_ogf,
        singer_ogf, GeneratingSequence,
    };

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn seq(m: u64, e: &[u64]) -> GeneratingSequence {
        GeneratingSequence::new(m, e.to_vec()).unwrap()
    }

    /// Sorted distinct off-diagonal magnitudes, merged within 1e-9.
    fn magnitudes(f: &Frame) -> Vec<f64> {
        let g = gramian(f);
        let mut v: Vec<f64> = Vec::new();
        for a in 0..f.len() {
            for b in 0..f.len() {
                if a != b {
                    v.push(g[(a, b)].norm());
                }
            }
        }
        v.sort_by(f64::total_cmp);
        v.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
        v
    }

    #[test]
    fn gramian_of_basis_is_identity() {
        let g = gramian(&Frame::canonical_basis(4));
        assert!((g - DMatrix::<C64>::identity(4, 4)).norm() < 1e-15);
    }

    #[test]
    fn gramian_convention() {
        let f = example_5_2();
        let g = gramian(&f);
        let v = f.vectors();
        assert!((g[(2, 3)] - inner(&v[2], &v[3])).norm() < 1e-15);
        assert!((g[(3, 2)] - g[(2, 3)].conj()).norm() < 1e-15);
    }

    #[test]
    fn example_magnitudes() {
        let m = magnitudes(&example_5_2());
        assert_eq!(m.len(), 3);
        assert!(m[0].abs() < 1e-12);
        assert!((m[1] - 0.5).abs() < 1e-12);
        assert!((m[2] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn singer_k3_magnitudes() {
        let m = magnitudes(&singer_ogf(2).unwrap());
        let expected = [0.0, 2f64.sqrt() / 3.0, 1.0 / 3f64.sqrt()];
        assert_eq!(m.len(), 3);
        for (a, b) in m.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn coherence_examples() {
        assert!(
            (coherence(&example_5_2()).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12
        );
        assert!((coherence(&chirp_mub(3).unwrap()).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(coherence(&Frame::canonical_basis(3)).unwrap(), 0.0);
        assert_eq!(
            coherence(&Frame::canonical_basis(1)).unwrap_err(),
            AnalysisError::TooFewVectors(1)
        );
    }

    #[test]
    fn welch_values() {
        assert_eq!(welch_bound(4, 4), 0.0);
        assert!((welch_bound(7, 3) - 2f64.sqrt() / 3.0).abs() < 1e-15);
        for k in 2..20usize {
            assert!((welch_bound(k * k, k) - 1.0 / ((k + 1) as f64).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn orthoplex_examples() {
        let v = orthoplex_check(&singer_ogf(2).unwrap(), &tol());
        assert!(v.applicable && v.is_ogf && v.within_size_cap);
        assert_eq!(v.max_frame_size, 16);
        let v = orthoplex_check(&chirp_mub(3).unwrap(), &tol());
        assert!(v.applicable && v.is_ogf);
        let v = orthoplex_check(&Frame::canonical_basis(3), &tol());
        assert!(!v.applicable && !v.is_ogf);
    }

    #[test]
    fn tightness_examples() {
        let t = tightness(&singer_ogf(2).unwrap(), &tol());
        assert!((t.bound - 10.0 / 3.0).abs() < 1e-15);
        assert!(t.residual <= 1e-9 && t.is_tight);

        for block in picket_blocks(&seq(8, &[0, 1, 3])).unwrap() {
            let t = tightness(&block, &tol());
            assert!((t.bound - 4.0 / 3.0).abs() < 1e-15);
            assert!(t.is_tight);
        }

        let dropped = drop_basis_vectors(&picket_ogf(3).unwrap(), 1).unwrap();
        let t = tightness(&dropped, &tol());
        assert!(!t.is_tight && t.residual > 1e-3);
    }

    #[test]
    fn equiangularity_examples() {
        let e = equiangularity(&cyclic_frame(&seq(7, &[0, 1, 3])), &tol());
        assert!(e.is_equiangular);
        assert!((e.common_value.unwrap() - 2f64.sqrt() / 3.0).abs() < 1e-12);

        let e = equiangularity(&cyclic_frame(&seq(8, &[0, 1, 3])), &tol());
        assert!(!e.is_equiangular && e.common_value.is_none());

        let e = equiangularity(&Frame::canonical_basis(5), &tol());
        assert!(e.is_equiangular);
        assert_eq!(e.common_value, Some(0.0));
    }

    #[test]
    fn unbiasedness_examples() {
        let f = chirp_mub(5).unwrap();
        let bases: Vec<Frame> = (0..6)
            .map(|b| f.select(&(b * 5..b * 5 + 5).collect::<Vec<_>>()))
            .collect();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(
                    mutual_unbiasedness(&bases[x], &bases[y], &tol()).unwrap(),
                    x != y
                );
            }
        }
        let blocks = picket_blocks(&seq(8, &[0, 1, 3])).unwrap();
        assert!(mutual_unbiasedness(&blocks[0], &blocks[1], &tol()).unwrap());
        assert_eq!(
            mutual_unbiasedness(&bases[0], &Frame::canonical_basis(2), &tol()).unwrap_err(),
            AnalysisError::DimMismatch(5, 2)
        );
    }

    #[test]
    fn modulation_zero_is_frame_operator() {
        let f = singer_ogf(3).unwrap();
        let ops = modulation_operators(&f);
        assert!((&ops[0].matrix - frame_operator(&f)).norm() < 1e-12);
    }

    #[test]
    fn cyclic_modulation_entries() {
        for (m, e) in [
            (7u64, vec![0u64, 1, 3]),
            (8, vec![0, 1, 3]),
            (13, vec![0, 1, 3, 9]),
            (11, vec![0, 2, 5]),
        ] {
            let s = seq(m, &e);
            let ops = modulation_operators(&cyclic_frame(&s));
            assert!(modulation_entry_defect(&ops, &s) < 1e-10);
            assert!(supports_disjoint(&ops, 1e-9));
        }
    }

    #[test]
    fn singer_hs_norms() {
        let ops = modulation_operators(&cyclic_frame(&seq(7, &[0, 1, 3])));
        for op in &ops {
            let n2 = hs_inner(&op.matrix, &op.matrix).re;
            let expected = if op.xi == 0 { 49.0 / 3.0 } else { 49.0 / 9.0 };
            assert!((n2 - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn fourier_on_cyclic_frames() {
        for (m, e) in [
            (7u64, vec![0u64, 1, 3]),
            (8, vec![0, 1, 3]),
            (16, vec![0, 3, 4, 9]),
            (1, vec![0]),
        ] {
            let c = fourier_identity_check(&cyclic_frame(&seq(m, &e)), &tol());
            assert!(c.pass, "{c:?}");
            assert!(c.single_sum_defect.is_some());
        }
    }

    #[test]
    fn fourier_double_sum_holds_for_non_cyclic() {
        let c = fourier_identity_check(&chirp_mub(3).unwrap(), &tol());
        assert!(c.double_sum_defect <= 1e-8);
    }

    #[test]
    fn picket_table_k3() {
        let f = cyclic_frame(&seq(8, &[0, 1, 3]));
        let t = certify_picket_values(&f, 3, &tol()).unwrap();
        assert!(t.pass());
        assert!((t.rows[2].observed - 1.0 / 3.0).abs() < 1e-12);
        assert!((t.rows[5].observed - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((t.rows[0].observed - 1.0).abs() < 1e-12);
        // Works on the adjoined frame too.
        assert!(certify_picket_values(&picket_ogf(3).unwrap(), 3, &tol())
            .unwrap()
            .pass());
    }

    #[test]
    fn picket_table_reports_violation() {
        // {0,1,2} in Z_8 is not a picket fence sequence.
        let f = cyclic_frame(&seq(8, &[0, 1, 2]));
        let t = certify_picket_values(&f, 3, &tol()).unwrap();
        assert!(t.first_violation.is_some());
        assert!(certify_picket_values(&f, 4, &tol()).is_err());
    }

    #[test]
    fn recovers_sequences() {
        let s = seq(13, &[0, 1, 3, 9]);
        assert_eq!(
            recover_generating_sequence(&cyclic_frame(&s), 1e-9),
            Some(s)
        );
        assert_eq!(
            recover_generating_sequence(&chirp_mub(3).unwrap(), 1e-9),
            None
        );
    }

    #[test]
    fn report_fields() {
        let r = analyze(&singer_ogf(2).unwrap(), &tol());
        assert_eq!((r.n, r.dim), (10, 3));
        assert!(r.is_ogf && r.is_tight && !r.is_equiangular);
        assert!(r.welch_bound <= r.coherence.unwrap());
    }
}
