//! Invariants checked over seeded random inputs and proptest strategies.

use framekit::analysis::{coherence, equiangularity, tightness, welch_bound};
use framekit::design2::{
    design_sum, picket_weights, projector_sum_check, singer_weights, WeightedFrame,
};
use framekit::designsets::{
    canonical_form, difference_spectrum, verify_design, DesignKind, DesignSet, Provenance,
};
use framekit::framegen::{chirp_mub, cyclic_frame, picket_ogf, singer_ogf};
use framekit::{Frame, GeneratingSequence, Tolerances};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn gaussian_vector(rng: &mut ChaCha8Rng, k: usize) -> DVector<C64> {
    DVector::from_fn(k, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
fn random_unitary(rng: &mut ChaCha8Rng, k: usize) -> DMatrix<C64> {
    let g = DMatrix::from_fn(k, k, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..k {
        let phase = r[(j, j)] / r[(j, j)].norm();
        for i in 0..k {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn unitarity_defect(u: &DMatrix<C64>) -> f64 {
    (u.adjoint() * u - DMatrix::identity(u.nrows(), u.ncols())).norm()
}

#[test]
fn welch_dominance_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let k = rng.random_range(2..=8usize);
        let n = rng.random_range(2..=40usize);
        let vs = (0..n).map(|_| gaussian_vector(&mut rng, k)).collect();
        let f = Frame::normalized(k, vs).unwrap();
        let mu = coherence(&f).unwrap();
        assert!(mu + 1e-12 >= welch_bound(n, k), "N={n} K={k} mu={mu}");
    }
}

#[test]
fn random_unitaries_preserve_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let frames = [
        singer_ogf(2).unwrap(),
        singer_ogf(3).unwrap(),
        picket_ogf(4).unwrap(),
        chirp_mub(3).unwrap(),
    ];
    for f in &frames {
        let base_mu = coherence(f).unwrap();
        let base_tight = tightness(f, &tol()).is_tight;
        let base_eq = equiangularity(&f.cyclic_part(), &tol()).is_equiangular;
        for _ in 0..10 {
            let u = random_unitary(&mut rng, f.dim());
            assert!(unitarity_defect(&u) < 1e-12);
            let g = f.transformed(&u);
            assert!((coherence(&g).unwrap() - base_mu).abs() < 1e-12);
            let t = tightness(&g, &tol());
            assert_eq!(t.is_tight, base_tight);
            assert!(t.residual < 1e-10 || !base_tight);
            assert_eq!(
                equiangularity(&g.cyclic_part(), &tol()).is_equiangular,
                base_eq
            );
        }
    }
    // Design sums depend only on |<x_j, x_l>|, so weighted designs survive too.
    let wf = singer_weights(&singer_ogf(3).unwrap(), &tol()).unwrap();
    for _ in 0..10 {
        let u = random_unitary(&mut rng, 4);
        let moved =
            WeightedFrame::new(wf.frame.transformed(&u), wf.weights.clone(), &tol()).unwrap();
        assert!(design_sum(&moved, 2, &tol()).verdict);
        assert!(projector_sum_check(&moved, 2).unwrap() <= 1e-8);
    }
}

/// Rotates `v` by `angle` towards a random unit direction orthogonal to it.
fn rotate(rng: &mut ChaCha8Rng, v: &DVector<C64>, angle: f64) -> DVector<C64> {
    let g = gaussian_vector(rng, v.len());
    let proj = v * v.dotc(&g);
    let u = &g - proj;
    let u = &u / C64::new(u.norm(), 0.0);
    v * C64::new(angle.cos(), 0.0) + u * C64::new(angle.sin(), 0.0)
}

fn perturbed(rng: &mut ChaCha8Rng, wf: &WeightedFrame, index: usize, angle: f64) -> WeightedFrame {
    let mut vs = wf.frame.vectors().to_vec();
    vs[index] = rotate(rng, &vs[index], angle);
    let f = Frame::new(wf.frame.dim(), vs, wf.frame.labels().to_vec()).unwrap();
    WeightedFrame::new(f, wf.weights.clone(), &tol()).unwrap()
}

fn generated_designs() -> Vec<WeightedFrame> {
    let mut out = Vec::new();
    for q in 2..=4 {
        out.push(singer_weights(&singer_ogf(q).unwrap(), &tol()).unwrap());
    }
    for q in 3..=5 {
        out.push(picket_weights(&picket_ogf(q).unwrap(), &tol()).unwrap());
    }
    out
}

#[test]
fn design_and_projector_verdicts_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = generated_designs();
    for wf in generated_designs() {
        let i = rng.random_range(0..wf.frame.len());
        cases.push(perturbed(&mut rng, &wf, i, 0.1));
        cases.push(WeightedFrame::uniform(wf.frame.clone()));
    }
    cases.push(WeightedFrame::uniform(chirp_mub(3).unwrap()));
    cases.push(WeightedFrame::uniform(chirp_mub(5).unwrap()));
    for wf in &cases {
        let k = wf.frame.dim();
        assert!(k <= 5);
        let by_sum = design_sum(wf, 2, &tol()).verdict;
        let by_projector = projector_sum_check(wf, 2).unwrap() <= tol().projector;
        assert_eq!(by_sum, by_projector, "K={k} N={}", wf.frame.len());
    }
}

#[test]
fn perturbing_one_vector_breaks_both_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for wf in generated_designs() {
        for index in [0, wf.frame.len() - 1] {
            let p = perturbed(&mut rng, &wf, index, 0.1);
            let cert = design_sum(&p, 2, &tol());
            let residual = projector_sum_check(&p, 2).unwrap();
            assert!(!cert.verdict);
            assert!(residual > 1e-3, "projector residual {residual}");
            // The scalar defect is the squared projector residual, so an
            // O(angle) residual shows up as an O(angle^2) defect: about
            // 4e-5 to 5e-4 here, well above the 1e-9 tolerance.
            assert!((cert.defect - residual * residual).abs() < 1e-12);
            assert!(cert.defect > 1e-5, "design defect {}", cert.defect);
        }
    }
}

#[test]
fn passing_designs_have_at_least_k_squared_vectors() {
    for wf in generated_designs() {
        assert!(design_sum(&wf, 2, &tol()).verdict);
        let k = wf.frame.dim();
        assert!(wf.frame.len() >= k * k);
    }
}

fn plain(m: u64, e: Vec<u64>) -> DesignSet {
    let k = e.len();
    DesignSet::new(
        m,
        e,
        DesignKind::Plain { k, lambda: 1 },
        Provenance::UserSupplied,
    )
    .unwrap()
}

fn subset(max_m: u64) -> impl Strategy<Value = (u64, Vec<u64>)> {
    (2..=max_m).prop_flat_map(|m| {
        (
            Just(m),
            proptest::sample::subsequence((0..m).collect::<Vec<_>>(), 1..=m as usize),
        )
    })
}

proptest! {
    #[test]
    fn spectrum_is_shift_invariant((m, e) in subset(40), c in 0u64..1000) {
        let s = plain(m, e);
        let t = s.shifted(c);
        prop_assert_eq!(difference_spectrum(&s), difference_spectrum(&t));
        prop_assert_eq!(verify_design(&s).is_ok(), verify_design(&t).is_ok());
        prop_assert_eq!(s.canonical_elements(), t.canonical_elements());
        prop_assert!(t.is_shift_equivalent_to(s.elements()));
    }

    #[test]
    fn canonical_form_is_a_translate_starting_at_zero((m, e) in subset(40)) {
        let c = canonical_form(m, &e);
        prop_assert_eq!(c[0], 0);
        prop_assert_eq!(c.len(), e.len());
        prop_assert_eq!(canonical_form(m, &c), c.clone());
    }

    #[test]
    fn shifted_sequences_give_the_same_gram_magnitudes((m, e) in subset(24), c in 0u64..24) {
        let a = cyclic_frame(&GeneratingSequence::new(m, e.clone()).unwrap());
        let shifted: Vec<u64> = e.iter().map(|&x| (x + c) % m).collect();
        let b = cyclic_frame(&GeneratingSequence::new(m, shifted).unwrap());
        for (x, y) in [(0usize, 1usize), (0, (m / 2) as usize), (1, (m - 1) as usize)] {
            let ga = a.vectors()[x].dotc(&a.vectors()[y]).norm();
            let gb = b.vectors()[x].dotc(&b.vectors()[y]).norm();
            prop_assert!((ga - gb).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_total_counts_ordered_pairs((m, e) in subset(60)) {
        let k = e.len() as u64;
        prop_assert_eq!(difference_spectrum(&plain(m, e)).total(), k * (k - 1));
    }
}
