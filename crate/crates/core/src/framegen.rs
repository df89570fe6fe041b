//! Frame constructors: cyclic frames generated by exponent sequences, the
//! adjoin-the-canonical-basis construction, discrete chirps, and the
//! picket-fence block decomposition.
//!
//! Vectors are ordered basis first, then cyclic (or chirp) vectors in index
//! order. The Gramian and design-sum block layouts rely on this.

use std::io;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;
use crate::designsets::{
    relative_set, singer_set, verify_design, DesignError, DesignKind, DesignSet, Provenance,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("vector {index} has length {len}, expected dimension {dim}")]
    DimMismatch {
        index: usize,
        len: usize,
        dim: usize,
    },
    #[error("vector {index} has norm {norm}, expected 1")]
    NotUnitNorm { index: usize, norm: f64 },
    #[error("{labels} labels for {vectors} vectors")]
    LabelCount { labels: usize, vectors: usize },
    #[error("dimension must be positive")]
    ZeroDim,
    #[error("generating sequence repeats exponent {0}")]
    DuplicateExponents(u64),
    #[error("invalid generating sequence: {0}")]
    BadSequence(String),
    #[error("vector {index} is not flat: coordinate magnitude off by {deviation:e}")]
    NotFlat { index: usize, deviation: f64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a picket fence sequence: {0}")]
    NotPicketFence(String),
    #[error("removal count must be at least 1")]
    InvalidCount,
    #[error("asked to remove {requested} basis vectors but only {available} present")]
    NotEnoughBasis { requested: usize, available: usize },
    #[error("removing {requested} vectors leaves {remaining} < K^2 + 1 = {minimum}")]
    TooManyRemoved {
        requested: usize,
        remaining: usize,
        minimum: usize,
    },
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// Provenance tag attached to every frame vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    /// Canonical basis vector `e_i` (0-based).
    Basis(usize),
    /// Vector `h_j` of a cyclic frame indexed by `Z_M`.
    Cyclic(u64),
    /// Vector `i` of chirp basis `k`; `k = 1` is the canonical basis. Both
    /// 1-based.
    Chirp {
        k: usize,
        i: usize,
    },
    /// Vector `j` of picket block `l`, both 0-based.
    Block {
        l: usize,
        j: usize,
    },
    Custom(String),
}

/// An ordered family of unit vectors in `C^K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameRepr", into = "FrameRepr")]
pub struct Frame {
    dim: usize,
    vectors: Vec<DVector<C64>>,
    labels: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    dim: usize,
    vectors: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    labels: Option<Vec<Label>>,
}

impl TryFrom<FrameRepr> for Frame {
    type Error = FrameError;
    fn try_from(r: FrameRepr) -> Result<Self, FrameError> {
        let vectors: Vec<DVector<C64>> = r
            .vectors
            .into_iter()
            .map(|v| {
                DVector::from_iterator(v.len(), v.into_iter().map(|[re, im]| C64::new(re, im)))
            })
            .collect();
        let labels = r
            .labels
            .unwrap_or_else(|| vec![Label::Custom(String::new()); vectors.len()]);
        Frame::new(r.dim, vectors, labels)
    }
}

impl From<Frame> for FrameRepr {
    fn from(f: Frame) -> Self {
        FrameRepr {
            dim: f.dim,
            vectors: f
                .vectors
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            labels: Some(f.labels),
        }
    }
}

impl Frame {
    pub fn new(
        dim: usize,
        vectors: Vec<DVector<C64>>,
        labels: Vec<Label>,
    ) -> Result<Self, FrameError> {
        Self::with_tolerance(dim, vectors, labels, Tolerances::default().norm)
    }

    pub fn with_tolerance(
        dim: usize,
        vectors: Vec<DVector<C64>>,
        labels: Vec<Label>,
        tol_norm: f64,
    ) -> Result<Self, FrameError> {
        if dim == 0 {
            return Err(FrameError::ZeroDim);
        }
        if labels.len() != vectors.len() {
            return Err(FrameError::LabelCount {
                labels: labels.len(),
                vectors: vectors.len(),
            });
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(FrameError::DimMismatch {
                    index,
                    len: v.len(),
                    dim,
                });
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > tol_norm {
                return Err(FrameError::NotUnitNorm { index, norm });
            }
        }
        Ok(Self {
            dim,
            vectors,
            labels,
        })
    }

    /// Normalizes each vector, then builds an unlabelled frame.
    pub fn normalized(dim: usize, vectors: Vec<DVector<C64>>) -> Result<Self, FrameError> {
        let n = vectors.len();
        let vectors = vectors.into_iter().map(|v| v.normalize()).collect();
        let labels = (0..n).map(|j| Label::Custom(format!("f{j}"))).collect();
        Self::new(dim, vectors, labels)
    }

    pub fn canonical_basis(dim: usize) -> Self {
        let vectors = (0..dim).map(|i| basis_vector(dim, i)).collect();
        let labels = (0..dim).map(Label::Basis).collect();
        Self {
            dim,
            vectors,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[DVector<C64>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Synthesis matrix: `K x N`, one column per frame vector.
    pub fn matrix(&self) -> DMatrix<C64> {
        if self.vectors.is_empty() {
            return DMatrix::zeros(self.dim, 0);
        }
        DMatrix::from_columns(&self.vectors)
    }

    /// Sub-frame of the vectors at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            dim: self.dim,
            vectors: indices.iter().map(|&i| self.vectors[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    fn indices_where(&self, pred: impl Fn(&Label) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred(&self.labels[i])).collect()
    }

    pub fn basis_count(&self) -> usize {
        self.labels
            .iter()
            .filter(|l| matches!(l, Label::Basis(_)))
            .count()
    }

    /// The cyclic-labelled vectors, ordered by their `Z_M` index.
    pub fn cyclic_part(&self) -> Self {
        let mut idx = self.indices_where(|l| matches!(l, Label::Cyclic(_)));
        idx.sort_by_key(|&i| match self.labels[i] {
            Label::Cyclic(j) => j,
            _ => unreachable!(),
        });
        self.select(&idx)
    }

    /// Applies `u` to every vector; labels are kept.
    pub fn transformed(&self, u: &DMatrix<C64>) -> Self {
        assert_eq!(u.shape(), (self.dim, self.dim));
        Self {
            dim: self.dim,
            vectors: self.vectors.iter().map(|v| u * v).collect(),
            labels: self.labels.clone(),
        }
    }

    /// One row per vector: `re_1,im_1,...,re_K,im_K`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut wtr = csv::Writer::from_writer(w);
        let header: Vec<String> = (1..=self.dim)
            .flat_map(|i| [format!("re_{i}"), format!("im_{i}")])
            .collect();
        wtr.write_record(&header)?;
        for v in &self.vectors {
            wtr.write_record(v.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]))?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn basis_vector(dim: usize, i: usize) -> DVector<C64> {
    let mut v = DVector::zeros(dim);
    v[i] = C64::new(1.0, 0.0);
    v
}

/// `exp(2 pi i num / den)`, with `num` reduced into `[0, den)` in integer
/// arithmetic before the angle is formed.
pub fn root_of_unity(num: i128, den: u64) -> C64 {
    let r = num.rem_euclid(den as i128) as f64;
    let theta = std::f64::consts::TAU * r / den as f64;
    let (s, c) = theta.sin_cos();
    C64::new(c, s)
}

/// Exponents `n_1, ..., n_K` in `Z_M` generating a cyclic frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingSequence {
    modulus: u64,
    exponents: Vec<u64>,
}

impl GeneratingSequence {
    pub fn new(modulus: u64, exponents: Vec<u64>) -> Result<Self, FrameError> {
        if modulus == 0 {
            return Err(FrameError::BadSequence("modulus must be positive".into()));
        }
        if exponents.is_empty() {
            return Err(FrameError::BadSequence("no exponents".into()));
        }
        let mut seen = vec![false; modulus as usize];
        for &e in &exponents {
            let r = (e % modulus) as usize;
            if seen[r] {
                return Err(FrameError::DuplicateExponents(e));
            }
            seen[r] = true;
        }
        Ok(Self {
            modulus,
            exponents: exponents.into_iter().map(|e| e % modulus).collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

impl From<&DesignSet> for GeneratingSequence {
    fn from(s: &DesignSet) -> Self {
        Self {
            modulus: s.modulus(),
            exponents: s.elements().to_vec(),
        }
    }
}

/// `h_j = K^{-1/2} sum_l exp(2 pi i j n_l / M) e_l` for `j` in `Z_M`.
pub fn cyclic_frame(seq: &GeneratingSequence) -> Frame {
    let m = seq.modulus;
    let k = seq.len();
    let scale = 1.0 / (k as f64).sqrt();
    let vectors = (0..m)
        .map(|j| {
            DVector::from_iterator(
                k,
                seq.exponents
                    .iter()
                    .map(|&n| root_of_unity(j as i128 * n as i128, m) * scale),
            )
        })
        .collect();
    Frame {
        dim: k,
        vectors,
        labels: (0..m).map(Label::Cyclic).collect(),
    }
}

/// Largest `| |f_i| - 1/sqrt(K) |` over the coordinates of `v`.
pub fn flatness_deviation(v: &DVector<C64>) -> f64 {
    let target = 1.0 / (v.len() as f64).sqrt();
    v.iter()
        .map(|z| (z.norm() - target).abs())
        .fold(0.0, f64::max)
}

/// The canonical basis followed by the vectors of `flat`.
pub fn adjoin_basis(flat: &Frame, tol: &Tolerances) -> Result<Frame, FrameError> {
    for (index, v) in flat.vectors.iter().enumerate() {
        let deviation = flatness_deviation(v);
        if deviation > tol.flat {
            return Err(FrameError::NotFlat { index, deviation });
        }
    }
    let mut out = Frame::canonical_basis(flat.dim);
    out.vectors.extend(flat.vectors.iter().cloned());
    out.labels.extend(flat.labels.iter().cloned());
    Ok(out)
}

/// The canonical basis together with the `K` discrete chirp bases,
/// `e_i^(k)_l = K^{-1/2} w^{-(k-1) l^2 + i l}`, `w = exp(2 pi i / K)`,
/// for `k = 2..=K+1`.
///
/// For `K = 2` the quadratic phase `w^{-(k-1) l^2}` only takes the values
/// `+-1`, which repeats the same basis for both `k`; the quadratic term
/// then uses the square root of `w` (a fourth root of unity), which yields
/// the standard three unbiased bases of `C^2`.
pub fn chirp_mub(k: usize) -> Result<Frame, FrameError> {
    if !is_prime(k as u64) {
        return Err(FrameError::NotPrime(k as u64));
    }
    let kk = k as i128;
    let scale = 1.0 / (k as f64).sqrt();
    let mut frame = Frame::canonical_basis(k);
    frame.labels = (1..=k).map(|i| Label::Chirp { k: 1, i }).collect();
    // Phases in units of 2 pi / den; for K = 2 the linear term is doubled
    // to stay a power of w.
    let (den, lin) = if k == 2 {
        (4u64, 2i128)
    } else {
        (k as u64, 1i128)
    };
    for b in 2..=k + 1 {
        let shift = (b - 1) as i128;
        for i in 1..=k {
            let ii = i as i128;
            let v = DVector::from_iterator(
                k,
                (1..=kk).map(|l| root_of_unity(lin * (ii * l) - shift * l * l, den) * scale),
            );
            frame.vectors.push(v);
            frame.labels.push(Label::Chirp { k: b, i });
        }
    }
    Ok(frame)
}

/// `{e_1, e_2, h_1, h_2, h_3}` in `C^2` with `h_j = (e_1 + w^j e_2)/sqrt 2`,
/// `w = exp(2 pi i / 3)`.
pub fn example_5_2() -> Frame {
    let mut frame = Frame::canonical_basis(2);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for j in 1..=3u64 {
        frame.vectors.push(DVector::from_vec(vec![
            C64::new(s, 0.0),
            root_of_unity(j as i128, 3) * s,
        ]));
        frame.labels.push(Label::Cyclic(j % 3));
    }
    frame
}

fn picket_design_set(seq: &GeneratingSequence) -> Result<DesignSet, FrameError> {
    let k = seq.len() as u64;
    if k < 2 || seq.modulus != k * k - 1 {
        return Err(FrameError::NotPicketFence(format!(
            "{} exponents in Z_{}, expected modulus K^2 - 1",
            k, seq.modulus
        )));
    }
    let set = DesignSet::new(
        seq.modulus,
        seq.exponents.clone(),
        DesignKind::Relative {
            n: k + 1,
            l: k - 1,
            k: k as usize,
            lambda: 1,
        },
        Provenance::UserSupplied,
    )
    .map_err(|e| FrameError::NotPicketFence(e.to_string()))?;
    verify_design(&set).map_err(|v| FrameError::NotPicketFence(v.to_string()))?;
    Ok(set)
}

/// Splits the `K^2 - 1` vectors of a cyclic frame (in `Z_M` order) into the
/// `K - 1` blocks `{h_{j(K-1)+l}}_{j in Z_{K+1}}`, `l = 0..K-1`.
pub fn partition_picket_blocks(cyclic: &Frame, k: usize) -> Vec<Frame> {
    assert_eq!(
        cyclic.len(),
        k * k - 1,
        "picket cyclic frame has K^2 - 1 vectors"
    );
    (0..k - 1)
        .map(|l| {
            let idx: Vec<usize> = (0..=k).map(|j| j * (k - 1) + l).collect();
            let mut block = cyclic.select(&idx);
            block.labels = (0..=k).map(|j| Label::Block { l, j }).collect();
            block
        })
        .collect()
}

/// The `K - 1` blocks of `K + 1` vectors of the cyclic frame generated by a
/// picket fence sequence.
pub fn picket_blocks(seq: &GeneratingSequence) -> Result<Vec<Frame>, FrameError> {
    picket_design_set(seq)?;
    Ok(partition_picket_blocks(&cyclic_frame(seq), seq.len()))
}

/// Removes the last `count` basis-labelled vectors.
pub fn drop_basis_vectors(f: &Frame, count: usize) -> Result<Frame, FrameError> {
    if count == 0 {
        return Err(FrameError::InvalidCount);
    }
    let basis = f.indices_where(|l| matches!(l, Label::Basis(_)));
    if count > basis.len() {
        return Err(FrameError::NotEnoughBasis {
            requested: count,
            available: basis.len(),
        });
    }
    let minimum = f.dim * f.dim + 1;
    let remaining = f.len() - count;
    if remaining < minimum {
        return Err(FrameError::TooManyRemoved {
            requested: count,
            remaining,
            minimum,
        });
    }
    let dropped = &basis[basis.len() - count..];
    let keep: Vec<usize> = (0..f.len()).filter(|i| !dropped.contains(i)).collect();
    Ok(f.select(&keep))
}

/// Canonical basis adjoined to the cyclic frame of the Singer
/// `(q^2+q+1, q+1, 1)`-difference set: `K^2 + 1` vectors in `C^{q+1}`.
pub fn singer_ogf(q: u64) -> Result<Frame, FrameError> {
    let set = singer_set(q, 1)?;
    let flat = cyclic_frame(&GeneratingSequence::from(&set));
    adjoin_basis(&flat, &Tolerances::default())
}

/// Canonical basis adjoined to the cyclic frame of the trace-constructed
/// picket fence sequence for `Z_{q^2-1}`: `K^2 + K - 1` vectors in `C^q`.
pub fn picket_ogf(q: u64) -> Result<Frame, FrameError> {
    let set = relative_set(q, 1)?;
    let flat = cyclic_frame(&GeneratingSequence::from(&set));
    adjoin_basis(&flat, &Tolerances::default())
}
