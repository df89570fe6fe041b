//! Cyclic difference sets and relative difference sets.
//!
//! Sets are built from the relative trace of a primitive element
//! ([`singer_set`], [`relative_set`]) or found by exhaustive search
//! ([`search`]). Every set can be certified exactly with
//! [`verify_design`], which compares the integer difference spectrum
//! against the declared parameters.

pub mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{checked_pow, prime_power};
use crate::gf::{make_field_with_cap, primitive_element, GFElement, GfError, DEFAULT_FIELD_CAP};

pub use search::{search_difference_sets, search_picket_fence, SearchConfig, SearchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field too large: {0}")]
    FieldCapExceeded(GfError),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid design set: {0}")]
    Shape(String),
    #[error("constructed set failed verification: {0}")]
    Verification(DesignViolation),
}

/// The declared combinatorial parameters of a [`DesignSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignKind {
    /// An `(M, K, lambda)`-difference set.
    Plain {
        #[serde(rename = "K")]
        k: usize,
        lambda: u64,
    },
    /// An `(N, L, K, lambda)`-relative difference set in `Z_{NL}` whose
    /// forbidden subgroup is generated by `N`.
    Relative {
        #[serde(rename = "N")]
        n: u64,
        #[serde(rename = "L")]
        l: u64,
        #[serde(rename = "K")]
        k: usize,
        lambda: u64,
    },
}

impl DesignKind {
    pub fn k(&self) -> usize {
        match *self {
            DesignKind::Plain { k, .. } | DesignKind::Relative { k, .. } => k,
        }
    }

    pub fn lambda(&self) -> u64 {
        match *self {
            DesignKind::Plain { lambda, .. } | DesignKind::Relative { lambda, .. } => lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    TraceConstructed { q: u64, n: u32 },
    Searched,
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDesignSet")]
pub struct DesignSet {
    modulus: u64,
    elements: Vec<u64>,
    kind: DesignKind,
    provenance: Provenance,
}

#[derive(Deserialize)]
struct RawDesignSet {
    modulus: u64,
    elements: Vec<u64>,
    kind: DesignKind,
    #[serde(default = "user_supplied")]
    provenance: Provenance,
}

fn user_supplied() -> Provenance {
    Provenance::UserSupplied
}

impl TryFrom<RawDesignSet> for DesignSet {
    type Error = DesignError;
    fn try_from(raw: RawDesignSet) -> Result<Self, Self::Error> {
        DesignSet::new(raw.modulus, raw.elements, raw.kind, raw.provenance)
    }
}

impl DesignSet {
    /// Validates shape only: residues distinct and in range, `K` matching the
    /// element count, and `M = N L` for relative sets. The difference
    /// condition is checked separately by [`verify_design`].
    pub fn new(
        modulus: u64,
        mut elements: Vec<u64>,
        kind: DesignKind,
        provenance: Provenance,
    ) -> Result<Self, DesignError> {
        if modulus == 0 {
            return Err(DesignError::Shape("modulus must be positive".into()));
        }
        if let Some(&e) = elements.iter().find(|&&e| e >= modulus) {
            return Err(DesignError::Shape(format!(
                "element {e} not in Z_{modulus}"
            )));
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::Shape(format!("duplicate element {}", w[0])));
        }
        if kind.k() != elements.len() {
            return Err(DesignError::Shape(format!(
                "declared K = {} but {} elements given",
                kind.k(),
                elements.len()
            )));
        }
        if let DesignKind::Relative { n, l, .. } = kind {
            if n.checked_mul(l) != Some(modulus) {
                return Err(DesignError::Shape(format!(
                    "relative set needs M = N L, got {modulus} != {n} * {l}"
                )));
            }
        }
        Ok(Self {
            modulus,
            elements,
            kind,
            provenance,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Strictly increasing residues.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn kind(&self) -> DesignKind {
        self.kind
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Residues that no difference may hit: `{0}` for plain sets, the
    /// multiples of `N` for relative sets.
    pub fn is_forbidden(&self, x: u64) -> bool {
        match self.kind {
            DesignKind::Plain { .. } => x == 0,
            DesignKind::Relative { n, .. } => x.is_multiple_of(n),
        }
    }

    /// The translate `{e + c mod M}`.
    pub fn shifted(&self, c: u64) -> Self {
        let m = self.modulus;
        let elements = self.elements.iter().map(|&e| (e + c % m) % m).collect();
        Self::new(m, elements, self.kind, self.provenance).expect("translation preserves shape")
    }

    /// Lexicographically smallest translate.
    pub fn canonical_elements(&self) -> Vec<u64> {
        canonical_form(self.modulus, &self.elements)
    }

    pub fn canonicalized(&self) -> Self {
        Self::new(
            self.modulus,
            self.canonical_elements(),
            self.kind,
            self.provenance,
        )
        .expect("translation preserves shape")
    }

    pub fn is_shift_equivalent_to(&self, other: &[u64]) -> bool {
        let mut other = other.to_vec();
        other.sort_unstable();
        other.len() == self.elements.len()
            && canonical_form(self.modulus, &other) == self.canonical_elements()
    }
}

/// Lexicographically smallest translate of `elements` in `Z_m`. Only
/// translates that move an element to 0 can be minimal.
pub fn canonical_form(m: u64, elements: &[u64]) -> Vec<u64> {
    elements
        .iter()
        .map(|&s| {
            let mut t: Vec<u64> = elements.iter().map(|&e| (e + m - s) % m).collect();
            t.sort_unstable();
            t
        })
        .min()
        .unwrap_or_default()
}

/// Multiplicities of all pairwise differences `n_j - n_l mod M`, `j != l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSpectrum {
    pub modulus: u64,
    /// `counts[x]` is the number of ordered pairs with difference `x`;
    /// `counts[0]` is always 0 for distinct elements.
    pub counts: Vec<u64>,
}

impl DifferenceSpectrum {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn difference_spectrum(set: &DesignSet) -> DifferenceSpectrum {
    spectrum_of(set.modulus, &set.elements)
}

pub(crate) fn spectrum_of(m: u64, elements: &[u64]) -> DifferenceSpectrum {
    let mut counts = vec![0u64; m as usize];
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            if i != j {
                counts[((a + m - b) % m) as usize] += 1;
            }
        }
    }
    DifferenceSpectrum { modulus: m, counts }
}

/// A residue whose difference multiplicity disagrees with the declared one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Error)]
#[error("difference {x} occurs {count} times, expected {expected}")]
pub struct DesignViolation {
    pub x: u64,
    pub count: u64,
    pub expected: u64,
}

/// Exact check of the difference condition. The witness is the smallest
/// offending residue.
pub fn verify_design(set: &DesignSet) -> Result<(), DesignViolation> {
    let spectrum = difference_spectrum(set);
    let lambda = set.kind.lambda();
    for x in 1..set.modulus {
        let count = spectrum.counts[x as usize];
        let expected = if set.is_forbidden(x) { 0 } else { lambda };
        if count != expected {
            return Err(DesignViolation { x, count, expected });
        }
    }
    Ok(())
}

fn split_prime_power(q: u64) -> Result<(u64, u32), DesignError> {
    match prime_power(q) {
        Some(pm) => Ok(pm),
        None => Err(DesignError::NotPrimePower(q)),
    }
}

fn map_field_error(e: GfError) -> DesignError {
    match e {
        GfError::Overflow { .. } => DesignError::FieldCapExceeded(e),
        other => DesignError::InvalidParameters(other.to_string()),
    }
}

/// Indices `i` in `0..range` with `tr(alpha^i)` satisfying `keep`, where the
/// trace runs from GF(q^e) down to GF(q), `q = p^m`.
fn trace_indices(
    p: u64,
    m: u32,
    e: u32,
    range: u64,
    cap: u64,
    keep: impl Fn(&GFElement) -> bool,
) -> Result<Vec<u64>, DesignError> {
    let degree = m
        .checked_mul(e)
        .ok_or_else(|| DesignError::InvalidParameters("extension degree overflow".into()))?;
    let field = make_field_with_cap(p, degree, cap).map_err(map_field_error)?;
    let alpha = primitive_element(&field);
    let mut y = GFElement::one(&field);
    let mut out = Vec::new();
    for i in 0..range {
        let t = y.trace_within(m).expect("m divides m * e");
        if keep(&t) {
            out.push(i);
        }
        y = &y * &alpha;
    }
    Ok(out)
}

/// Singer `(M, K, lambda)`-difference set with
/// `M = (q^{n+2}-1)/(q-1)`, `K = (q^{n+1}-1)/(q-1)`, `lambda = (q^n-1)/(q-1)`:
/// the exponents `i < M` at which `tr(alpha^i) = 0`.
pub fn singer_set(q: u64, n: u32) -> Result<DesignSet, DesignError> {
    singer_set_with_cap(q, n, DEFAULT_FIELD_CAP)
}

pub fn singer_set_with_cap(q: u64, n: u32, cap: u64) -> Result<DesignSet, DesignError> {
    let (p, m) = split_prime_power(q)?;
    if n == 0 {
        return Err(DesignError::InvalidParameters(
            "n must be at least 1".into(),
        ));
    }
    let geometric = |e: u32| {
        checked_pow(q, e)
            .map(|v| (v - 1) / (q - 1))
            .ok_or_else(|| DesignError::FieldCapExceeded(GfError::Overflow { p, m: m * e, cap }))
    };
    let big_m = geometric(n + 2)?;
    let k = geometric(n + 1)? as usize;
    let lambda = geometric(n)?;
    let elements = trace_indices(p, m, n + 2, big_m, cap, |t| t.is_zero())?;
    let set = DesignSet::new(
        big_m,
        elements,
        DesignKind::Plain { k, lambda },
        Provenance::TraceConstructed { q, n },
    )?;
    verify_design(&set).map_err(DesignError::Verification)?;
    Ok(set)
}

/// `(N, L, K, lambda)`-relative difference set in `Z_{q^{n+1}-1}` with
/// `N = (q^{n+1}-1)/(q-1)`, `L = q-1`, `K = q^n`, `lambda = q^{n-1}`:
/// the exponents at which `tr(alpha^i) = 1`. For `n = 1` this is a picket
/// fence sequence for `Z_{q^2-1}`.
pub fn relative_set(q: u64, n: u32) -> Result<DesignSet, DesignError> {
    relative_set_with_cap(q, n, DEFAULT_FIELD_CAP)
}

pub fn relative_set_with_cap(q: u64, n: u32, cap: u64) -> Result<DesignSet, DesignError> {
    let (p, m) = split_prime_power(q)?;
    if n == 0 {
        return Err(DesignError::InvalidParameters(
            "n must be at least 1".into(),
        ));
    }
    let overflow = || {
        DesignError::FieldCapExceeded(GfError::Overflow {
            p,
            m: m * (n + 1),
            cap,
        })
    };
    let total = checked_pow(q, n + 1).ok_or_else(overflow)? - 1;
    let big_n = total / (q - 1);
    let l = q - 1;
    let k = checked_pow(q, n).ok_or_else(overflow)? as usize;
    let lambda = checked_pow(q, n - 1).ok_or_else(overflow)?;
    let elements = trace_indices(p, m, n + 1, total, cap, |t| t.is_one())?;
    let set = DesignSet::new(
        total,
        elements,
        DesignKind::Relative {
            n: big_n,
            l,
            k,
            lambda,
        },
        Provenance::TraceConstructed { q, n },
    )?;
    verify_design(&set).map_err(DesignError::Verification)?;
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(m: u64, elements: &[u64], k: usize, lambda: u64) -> DesignSet {
        DesignSet::new(
            m,
            elements.to_vec(),
            DesignKind::Plain { k, lambda },
            Provenance::UserSupplied,
        )
        .unwrap()
    }

    fn picket(q: u64, elements: &[u64]) -> DesignSet {
        DesignSet::new(
            q * q - 1,
            elements.to_vec(),
            DesignKind::Relative {
                n: q + 1,
                l: q - 1,
                k: q as usize,
                lambda: 1,
            },
            Provenance::UserSupplied,
        )
        .unwrap()
    }

    #[test]
    fn singer_7_3_1() {
        let s = singer_set(2, 1).unwrap();
        assert_eq!(s.modulus(), 7);
        assert_eq!(s.kind(), DesignKind::Plain { k: 3, lambda: 1 });
        assert!(s.is_shift_equivalent_to(&[0, 1, 3]));
    }

    #[test]
    fn singer_13_4_1() {
        let s = singer_set(3, 1).unwrap();
        assert_eq!(s.modulus(), 13);
        assert!(s.is_shift_equivalent_to(&[0, 1, 3, 9]));
    }

    #[test]
    fn singer_15_7_3() {
        let s = singer_set(2, 2).unwrap();
        assert_eq!(s.modulus(), 15);
        assert_eq!(s.kind(), DesignKind::Plain { k: 7, lambda: 3 });
        let spec = difference_spectrum(&s);
        assert_eq!(spec.counts[0], 0);
        assert!(spec.counts[1..].iter().all(|&c| c == 3));
    }

    #[test]
    fn relative_picket_z8() {
        let s = relative_set(3, 1).unwrap();
        assert_eq!(s.modulus(), 8);
        assert_eq!(
            s.kind(),
            DesignKind::Relative {
                n: 4,
                l: 2,
                k: 3,
                lambda: 1
            }
        );
        assert!(s.is_shift_equivalent_to(&[0, 1, 3]));
    }

    #[test]
    fn relative_z15() {
        let s = relative_set(4, 1).unwrap();
        assert_eq!(s.modulus(), 15);
        assert!(s.is_shift_equivalent_to(&[0, 1, 3, 7]));
    }

    #[test]
    fn relative_z3() {
        let s = relative_set(2, 1).unwrap();
        assert_eq!(s.modulus(), 3);
        assert!(s.is_shift_equivalent_to(&[0, 1]));
        assert!(s.is_forbidden(0));
        assert!(!s.is_forbidden(1) && !s.is_forbidden(2));
        let spec = difference_spectrum(&s);
        assert_eq!(spec.counts, vec![0, 1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(singer_set(6, 1).unwrap_err(), DesignError::NotPrimePower(6));
        assert_eq!(
            relative_set(12, 1).unwrap_err(),
            DesignError::NotPrimePower(12)
        );
        assert!(matches!(
            singer_set(64, 2),
            Err(DesignError::FieldCapExceeded(_))
        ));
        assert!(matches!(
            singer_set_with_cap(2, 1, 4),
            Err(DesignError::FieldCapExceeded(_))
        ));
    }

    #[test]
    fn spectrum_examples() {
        let s = plain(7, &[0, 1, 3], 3, 1);
        assert_eq!(difference_spectrum(&s).counts, vec![0, 1, 1, 1, 1, 1, 1]);

        let s = picket(3, &[0, 1, 3]);
        assert_eq!(difference_spectrum(&s).counts, vec![0, 1, 1, 1, 0, 1, 1, 1]);

        let s = plain(9, &[5], 1, 1);
        let spec = difference_spectrum(&s);
        assert!(spec.counts.iter().all(|&c| c == 0));
        assert_eq!(spec.total(), 0);
    }

    #[test]
    fn verify_examples() {
        assert!(verify_design(&plain(7, &[0, 1, 3], 3, 1)).is_ok());
        assert_eq!(
            verify_design(&plain(7, &[0, 1, 2], 3, 1)),
            Err(DesignViolation {
                x: 1,
                count: 2,
                expected: 1
            })
        );
        assert!(verify_design(&picket(3, &[0, 1, 3])).is_ok());
        // {0,1,4} in Z_8: 4 - 0 lands in the forbidden subgroup {0, 4}.
        assert_eq!(verify_design(&picket(3, &[0, 1, 4])).unwrap_err().x, 2);
    }

    #[test]
    fn shape_errors() {
        let bad =
            |m, e: &[u64], kind| DesignSet::new(m, e.to_vec(), kind, Provenance::UserSupplied);
        let k3 = DesignKind::Plain { k: 3, lambda: 1 };
        assert!(bad(7, &[0, 1, 1], k3).is_err());
        assert!(bad(7, &[0, 1, 7], k3).is_err());
        assert!(bad(7, &[0, 1], k3).is_err());
        let rel = DesignKind::Relative {
            n: 4,
            l: 3,
            k: 3,
            lambda: 1,
        };
        assert!(bad(8, &[0, 1, 3], rel).is_err());
    }

    #[test]
    fn trace_sets_verify() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for n in [1u32, 2] {
                match singer_set(q, n) {
                    Ok(s) => {
                        assert!(verify_design(&s).is_ok());
                        assert_eq!(
                            difference_spectrum(&s).total(),
                            (s.len() * (s.len() - 1)) as u64
                        );
                    }
                    Err(DesignError::FieldCapExceeded(_)) => {}
                    Err(e) => panic!("singer q={q} n={n}: {e}"),
                }
                let r = relative_set(q, n).unwrap();
                assert!(verify_design(&r).is_ok());
                let spec = difference_spectrum(&r);
                for x in 1..r.modulus() {
                    if r.is_forbidden(x) {
                        assert_eq!(spec.counts[x as usize], 0);
                    } else {
                        assert_eq!(spec.counts[x as usize], r.kind().lambda());
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_one_differences_distinct() {
        for q in [2u64, 3, 4, 5, 7, 8] {
            let s = singer_set(q, 1).unwrap();
            let m = s.modulus();
            let mut diffs: Vec<u64> = Vec::new();
            for &a in s.elements() {
                for &b in s.elements() {
                    if a != b {
                        diffs.push((a + m - b) % m);
                    }
                }
            }
            let total = diffs.len();
            diffs.sort_unstable();
            diffs.dedup();
            assert_eq!(diffs.len(), total);
        }
    }

    #[test]
    fn verification_is_shift_invariant() {
        let sets = [
            singer_set(2, 1).unwrap(),
            singer_set(3, 1).unwrap(),
            singer_set(2, 2).unwrap(),
            relative_set(3, 1).unwrap(),
            relative_set(4, 1).unwrap(),
            relative_set(5, 1).unwrap(),
            plain(7, &[0, 1, 2], 3, 1),
            picket(3, &[0, 1, 4]),
        ];
        for s in &sets {
            let base = verify_design(s).is_ok();
            for c in 0..s.modulus() {
                assert_eq!(verify_design(&s.shifted(c)).is_ok(), base);
            }
        }
    }

    #[test]
    fn canonical_form_min_translate() {
        assert_eq!(canonical_form(7, &[1, 2, 4]), vec![0, 1, 3]);
        assert_eq!(
            canonical_form(21, &[0, 3, 13, 15, 20]),
            vec![0, 1, 4, 14, 16]
        );
    }

    #[test]
    fn json_shape() {
        let s = singer_set(2, 1).unwrap();
        let v: serde_json::Value = serde_json::to_value(&s).unwrap();
        assert_eq!(v["modulus"], 7);
        assert_eq!(v["kind"]["plain"]["K"], 3);
        assert_eq!(v["kind"]["plain"]["lambda"], 1);
        assert_eq!(v["provenance"]["trace_constructed"]["q"], 2);
        let back: DesignSet = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);

        let r: DesignSet = serde_json::from_str(
            r#"{"modulus": 8, "elements": [3, 0, 1],
                "kind": {"relative": {"N": 4, "L": 2, "K": 3, "lambda": 1}}}"#,
        )
        .unwrap();
        assert_eq!(r.elements(), &[0, 1, 3]);
        assert_eq!(r.provenance(), Provenance::UserSupplied);
        assert!(serde_json::from_str::<DesignSet>(
            r#"{"modulus": 8, "elements": [0, 0, 1], "kind": {"plain": {"K": 3, "lambda": 1}}}"#
        )
        .is_err());
    }
}
