//! Arithmetic in GF(p^m) with a polynomial-basis representation.
//!
//! Fields are built deterministically: the modulus is the first monic
//! irreducible polynomial of degree `m` in integer order, where a
//! coefficient list `c_0, c_1, ..., c_m` (constant term first) is ranked by
//! `sum c_i p^i`. The primitive element is chosen the same way. Two fields
//! built for the same `(p, m)` are therefore identical.
//!
//! The relative trace `GF(q^e) -> GF(q)` drives both Singer-type set
//! constructions in [`crate::designsets`].

mod poly;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{checked_pow, factorize, is_prime};

/// Default upper bound on `p^m` for any field we build.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{m} exceeds the configured cap {cap}")]
    Overflow { p: u64, m: u32, cap: u64 },
    #[error("subfield degree {sub_degree} does not divide extension degree {degree}")]
    DegreeMismatch { sub_degree: u32, degree: u32 },
    #[error("element has order {order}, expected {expected}")]
    NotPrimitive { order: u64, expected: u64 },
}

/// The ambient description of GF(p^m).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    /// Monic, constant term first, length `m + 1`.
    modulus: Vec<u64>,
    order: u64,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of field elements, `p^m`.
    pub fn order(&self) -> u64 {
        self.order
    }
}

/// Builds GF(p^m) with the default size cap.
pub fn make_field(p: u64, m: u32) -> Result<Arc<FieldSpec>, GfError> {
    make_field_with_cap(p, m, DEFAULT_FIELD_CAP)
}

pub fn make_field_with_cap(p: u64, m: u32, cap: u64) -> Result<Arc<FieldSpec>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    let order = match checked_pow(p, m) {
        Some(o) if o <= cap => o,
        _ => return Err(GfError::Overflow { p, m, cap }),
    };
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        // Walk the monic degree-m polynomials in integer order; the lower
        // coefficients are the base-p digits of `idx`.
        (0..order)
            .map(|idx| {
                let mut c = digits(idx, p, m as usize);
                c.push(1);
                c
            })
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists")
    };
    Ok(Arc::new(FieldSpec {
        p,
        m,
        modulus,
        order,
    }))
}

fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}

/// An element of a [`FieldSpec`], stored as `m` coefficients over Z_p.
#[derive(Clone)]
pub struct GFElement {
    field: Arc<FieldSpec>,
    coeffs: Vec<u64>,
}

impl PartialEq for GFElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for GFElement {}

impl Hash for GFElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for GFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})[", self.field.p, self.field.m)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl GFElement {
    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        Self {
            field: field.clone(),
            coeffs: vec![0; field.m as usize],
        }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = 1;
        e
    }

    /// Reduces `coeffs` modulo `p` and modulo the field's modulus.
    pub fn from_coeffs(field: &Arc<FieldSpec>, coeffs: &[u64]) -> Self {
        let p = field.p;
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        let mut r = poly::rem(&reduced, &field.modulus, p);
        r.resize(field.m as usize, 0);
        Self {
            field: field.clone(),
            coeffs: r,
        }
    }

    /// Inverse of [`GFElement::index`].
    pub fn from_index(field: &Arc<FieldSpec>, idx: u64) -> Self {
        assert!(idx < field.order, "index {idx} out of range");
        Self {
            field: field.clone(),
            coeffs: digits(idx, field.p, field.m as usize),
        }
    }

    /// `sum c_i p^i`; a bijection onto `0..p^m`.
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.field.p + c)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mixed-field arithmetic"
        );
    }

    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return Self::one(&self.field);
        }
        if self.is_zero() {
            return self.clone();
        }
        let mut e = e % (self.field.order - 1);
        if e == 0 {
            return Self::one(&self.field);
        }
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.order - 2))
        }
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group = self.field.order - 1;
        let mut n = group;
        for (r, _) in factorize(group) {
            while n.is_multiple_of(r) && self.pow(n / r).is_one() {
                n /= r;
            }
        }
        Some(n)
    }

    /// `sum_{i < degree/sub_degree} x^{q^i}` with `q = p^sub_degree`, as an
    /// element of this (the ambient) field. The result is fixed by `x -> x^q`.
    pub fn trace_within(&self, sub_degree: u32) -> Result<Self, GfError> {
        let m = self.field.m;
        if sub_degree == 0 || !m.is_multiple_of(sub_degree) {
            return Err(GfError::DegreeMismatch {
                sub_degree,
                degree: m,
            });
        }
        let q = self.field.p.pow(sub_degree);
        let mut term = self.clone();
        let mut acc = Self::zero(&self.field);
        for _ in 0..m / sub_degree {
            acc = &acc + &term;
            term = term.pow(q);
        }
        Ok(acc)
    }
}

impl Add for &GFElement {
    type Output = GFElement;
    fn add(self, rhs: &GFElement) -> GFElement {
        self.check_same_field(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        GFElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Sub for &GFElement {
    type Output = GFElement;
    fn sub(self, rhs: &GFElement) -> GFElement {
        self + &(-rhs)
    }
}

impl Neg for &GFElement {
    type Output = GFElement;
    fn neg(self) -> GFElement {
        let p = self.field.p;
        GFElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}

impl Mul for &GFElement {
    type Output = GFElement;
    fn mul(self, rhs: &GFElement) -> GFElement {
        self.check_same_field(rhs);
        let p = self.field.p;
        let m = self.field.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        // Monic modulus: x^m = -sum_{i<m} mod_i x^i.
        let modulus = &self.field.modulus;
        for d in (m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..m {
                let t = c * modulus[i] % p;
                prod[d - m + i] = (prod[d - m + i] + p - t) % p;
            }
        }
        prod.truncate(m);
        GFElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for GFElement {
            type Output = GFElement;
            fn $f(self, rhs: GFElement) -> GFElement {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// First nonzero element, in index order, of multiplicative order `p^m - 1`.
pub fn primitive_element(field: &Arc<FieldSpec>) -> GFElement {
    let group = field.order - 1;
    let primes: Vec<u64> = factorize(group).into_iter().map(|(r, _)| r).collect();
    (1..field.order)
        .map(|i| GFElement::from_index(field, i))
        .find(|x| primes.iter().all(|&r| !x.pow(group / r).is_one()))
        .expect("the multiplicative group of a finite field is cyclic")
}

/// An explicit embedding of GF(p^d) into a field GF(p^m) with `d | m`.
///
/// The image of the generator `t` of the small field's polynomial basis is
/// the root (in index order) of the small field's modulus inside the large
/// field.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    ambient: Arc<FieldSpec>,
    sub: Arc<FieldSpec>,
    sub_degree: u32,
    image: Vec<GFElement>,
    preimage: HashMap<Vec<u64>, u64>,
}

impl SubfieldEmbedding {
    pub fn new(ambient: &Arc<FieldSpec>, sub_degree: u32) -> Result<Self, GfError> {
        let m = ambient.m;
        if sub_degree == 0 || !m.is_multiple_of(sub_degree) {
            return Err(GfError::DegreeMismatch {
                sub_degree,
                degree: m,
            });
        }
        let p = ambient.p;
        let sub = make_field_with_cap(p, sub_degree, u64::MAX)?;
        let q = sub.order;

        // The subfield is {0} together with the powers of
        // gamma^{(p^m - 1)/(q - 1)} for a primitive gamma.
        let gamma = primitive_element(ambient);
        let beta = gamma.pow((ambient.order - 1) / (q - 1));
        let eval = |x: &GFElement| {
            sub.modulus
                .iter()
                .rev()
                .fold(GFElement::zero(ambient), |acc, &c| {
                    let c = GFElement::from_coeffs(ambient, &[c]);
                    &(&acc * x) + &c
                })
        };
        let mut candidates: Vec<GFElement> = vec![GFElement::zero(ambient)];
        let mut y = GFElement::one(ambient);
        for _ in 0..q - 1 {
            candidates.push(y.clone());
            y = &y * &beta;
        }
        let root = candidates
            .into_iter()
            .filter(|x| eval(x).is_zero())
            .min_by_key(|x| x.index())
            .expect("the subfield modulus splits in the ambient field");

        let mut image = Vec::with_capacity(q as usize);
        let mut preimage = HashMap::with_capacity(q as usize);
        for idx in 0..q {
            let small = GFElement::from_index(&sub, idx);
            let mut acc = GFElement::zero(ambient);
            let mut rp = GFElement::one(ambient);
            for &c in small.coeffs() {
                let c = GFElement::from_coeffs(ambient, &[c]);
                acc = &acc + &(&c * &rp);
                rp = &rp * &root;
            }
            preimage.insert(acc.coeffs.clone(), idx);
            image.push(acc);
        }
        Ok(Self {
            ambient: ambient.clone(),
            sub,
            sub_degree,
            image,
            preimage,
        })
    }

    pub fn subfield(&self) -> &Arc<FieldSpec> {
        &self.sub
    }

    pub fn embed(&self, x: &GFElement) -> GFElement {
        self.image[x.index() as usize].clone()
    }

    /// Pulls an ambient element back into the small field, if it lies there.
    pub fn restrict(&self, y: &GFElement) -> Option<GFElement> {
        debug_assert!(y.field == self.ambient);
        self.preimage
            .get(&y.coeffs)
            .map(|&idx| GFElement::from_index(&self.sub, idx))
    }

    /// Relative trace of an ambient element, reported in the small field.
    pub fn trace(&self, x: &GFElement) -> GFElement {
        let t = x
            .trace_within(self.sub_degree)
            .expect("degree checked at construction");
        self.restrict(&t)
            .expect("the relative trace lands in the subfield")
    }
}

/// Relative trace from `x`'s field down to GF(p^sub_degree).
pub fn relative_trace(x: &GFElement, sub_degree: u32) -> Result<GFElement, GfError> {
    Ok(SubfieldEmbedding::new(&x.field, sub_degree)?.trace(x))
}

/// Discrete logarithms to base `alpha`, indexed by element index.
#[derive(Debug, Clone)]
pub struct DiscreteLog {
    field: Arc<FieldSpec>,
    log: Vec<u64>,
}

impl DiscreteLog {
    pub fn get(&self, x: &GFElement) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        self.log.get(x.index() as usize).copied()
    }

    /// Number of entries, `p^m - 1`.
    pub fn len(&self) -> usize {
        (self.field.order - 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn discrete_log_table(
    field: &Arc<FieldSpec>,
    alpha: &GFElement,
) -> Result<DiscreteLog, GfError> {
    let group = field.order - 1;
    let mut log = vec![u64::MAX; field.order as usize];
    let mut y = GFElement::one(field);
    for i in 0..group {
        let idx = y.index() as usize;
        if log[idx] != u64::MAX {
            return Err(GfError::NotPrimitive {
                order: i,
                expected: group,
            });
        }
        log[idx] = i;
        y = &y * alpha;
    }
    if !y.is_one() {
        // alpha was zero
        return Err(GfError::NotPrimitive {
            order: 0,
            expected: group,
        });
    }
    Ok(DiscreteLog {
        field: field.clone(),
        log,
    })
}
