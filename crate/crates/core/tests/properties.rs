// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Property tests for the cross-module invariants. Structured random inputs
//! are drawn from a seeded generator so that every failure is replayable
//! from the shrunk seed.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use qcausal_core::channels::{
    cj_from_kraus, cj_from_unitary, parse_named_channel, relay_channel, ChannelCJ, DensityMatrix,
    Gate, UnitaryGate, TP_TOL,
};
use qcausal_core::expr::{linspace, parse_grid, parse_real};
use qcausal_core::extraction::{extract_cj, sdp_solve_matrix, SdpConfig};
use qcausal_core::inference::{classify, run_sweep, SweepFamily, SweepSpec, VerdictKind};
use qcausal_core::pdm::{
    negativity, pdm_closed_form, pdm_from_correlators, reduce_pdm, time_reverse, CorrelatorTable,
    Pdm, TimeSlice,
};
use qcausal_core::random::{
    random_density, random_density_of_rank, random_hermitian, random_kraus, random_unitary,
    seeded_rng, ginibre, TestRng,
};
use qcausal_core::scattering::{correlator_via_scattering, simulate_scattering, ScatteringSpec};
use qcausal_core::tensor::{
    eigenvalues_hermitian, kron, partial_trace, trace_norm, ComplexMatrix, PauliString, QubitLayout,
};

fn layout(prefix: &str, n: usize) -> QubitLayout {
    let labels: Vec<String> = (0..n).map(|k| format!("{prefix}{k}")).collect();
    QubitLayout::qubits(&labels).unwrap()
}

fn state(rng: &mut TestRng, l: QubitLayout) -> DensityMatrix {
    let m = random_density(rng, l.dim());
    DensityMatrix::new(m, l).unwrap()
}

fn channel(rng: &mut TestRng, n: usize, rank: usize) -> ChannelCJ {
    cj_from_kraus(&random_kraus(rng, 1 << n, rank)).unwrap()
}

fn input_state(rng: &mut TestRng, c: &ChannelCJ) -> DensityMatrix {
    state(rng, c.in_layout().clone())
}

/// Matrix whose entries are small dyadic rationals, so products are exact.
fn dyadic(rng: &mut TestRng, dim: usize) -> ComplexMatrix {
    use rand::Rng;
    let data = (0..dim * dim)
        .map(|_| C64::new(rng.random_range(-8..=8) as f64 / 4.0, rng.random_range(-8..=8) as f64 / 4.0))
        .collect();
    ComplexMatrix::from_vec(dim, data).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), da in 1usize..4, db in 1usize..4, dc in 1usize..4) {
        let mut rng = seeded_rng(seed);
        let (a, b, c) = (dyadic(&mut rng, da), dyadic(&mut rng, db), dyadic(&mut rng, dc));
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
        let (a, b, c) = (ginibre(&mut rng, da), ginibre(&mut rng, db), ginibre(&mut rng, dc));
        let (l, r) = (kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
        prop_assert!(l.distance(&r) <= 1e-15 * l.frobenius_norm());
    }

    #[test]
    fn sequential_partial_traces_agree(seed in any::<u64>(), flip in any::<bool>()) {
        let mut rng = seeded_rng(seed);
        let l = layout("q", 3);
        let m = random_density(&mut rng, 8);
        let direct = partial_trace(&m, &l, &["q1"]).unwrap();
        let (first, second) = if flip { ("q2", "q0") } else { ("q0", "q2") };
        let keep1: Vec<&str> = ["q0", "q1", "q2"].into_iter().filter(|s| *s != first).collect();
        let step1 = partial_trace(&m, &l, &keep1).unwrap();
        let l1 = l.sub_layout(&keep1).unwrap();
        let step2 = partial_trace(&step1, &l1, &["q1"]).unwrap();
        prop_assert!(step2.distance(&direct) < 1e-12, "{} then {}", first, second);
    }

    #[test]
    fn trace_norm_bounds_trace(seed in any::<u64>(), dim in 1usize..8) {
        let mut rng = seeded_rng(seed);
        let m = ginibre(&mut rng, dim);
        prop_assert!(trace_norm(&m) >= m.trace().norm() - 1e-12);
        let p = random_density(&mut rng, dim);
        prop_assert!((trace_norm(&p) - p.trace().re).abs() < 1e-12);
        let h = random_hermitian(&mut rng, dim.max(2));
        let ev = eigenvalues_hermitian(&h).unwrap();
        if ev[0] < -1e-6 && ev[ev.len() - 1] > 1e-6 {
            prop_assert!(trace_norm(&h) > h.trace().re.abs() + 1e-9);
        }
    }

    /// Power sums `Σ λᵏ = Tr Hᵏ` for `k ≤ dim` fix the characteristic
    /// polynomial, so they pin the roots.
    #[test]
    fn eigenvalues_match_characteristic_polynomial(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let h = random_hermitian(&mut rng, dim);
        let ev = eigenvalues_hermitian(&h).unwrap();
        let mut power = ComplexMatrix::identity(dim);
        for k in 1..=dim {
            power = &power * &h;
            let sum: f64 = ev.iter().map(|l| l.powi(k as i32)).sum();
            let tr = power.trace().re;
            prop_assert!((sum - tr).abs() < 1e-8 * tr.abs().max(1.0), "k={}: {} vs {}", k, sum, tr);
        }
    }

    #[test]
    fn cj_is_invariant_under_kraus_remixing(seed in any::<u64>(), n in 1usize..=2, rank in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let ks = random_kraus(&mut rng, 1 << n, rank);
        let w = random_unitary(&mut rng, rank);
        let mixed: Vec<ComplexMatrix> = (0..rank)
            .map(|j| {
                (0..rank).fold(ComplexMatrix::zeros(1 << n), |acc, i| &acc + &ks[i].scale(w[(j, i)]))
            })
            .collect();
        let a = cj_from_kraus(&ks).unwrap();
        let b = cj_from_kraus(&mixed).unwrap();
        prop_assert!(a.matrix().distance(b.matrix()) < 1e-10);
    }

    #[test]
    fn unitary_channel_conjugates(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = seeded_rng(seed);
        let l = layout("A", n);
        let u = UnitaryGate::new(random_unitary(&mut rng, 1 << n), l.clone()).unwrap();
        let c = cj_from_unitary(&u).unwrap();
        let rho = state(&mut rng, c.in_layout().clone());
        let out = c.apply(&rho).unwrap();
        prop_assert!(out.matrix().distance(&u.matrix().conjugate(rho.matrix())) < 1e-10);
    }

    #[test]
    fn relay_channel_periodicity_and_purity_symmetry(seed in any::<u64>(), theta in 0.0..PI) {
        let mut rng = seeded_rng(seed);
        let a = relay_channel(theta);
        let b = relay_channel(theta + 2.0 * PI);
        prop_assert!(a.matrix().distance(b.matrix()) < 1e-10);
        let rho = input_state(&mut rng, &a);
        let p = a.apply(&rho).unwrap().purity();
        let q = relay_channel(PI - theta).apply(&rho).unwrap().purity();
        prop_assert!((p - q).abs() < 1e-10);
    }

    #[test]
    fn constructed_channels_preserve_trace(seed in any::<u64>(), n in 1usize..=2, rank in 1usize..=4, theta in 0.0..(2.0 * PI)) {
        let mut rng = seeded_rng(seed);
        prop_assert!(channel(&mut rng, n, rank).tp_deviation() < TP_TOL);
        prop_assert!(relay_channel(theta).tp_deviation() < TP_TOL);
    }

    #[test]
    fn correlator_route_matches_closed_form(seed in any::<u64>(), n in 1usize..=2, rank in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let c = channel(&mut rng, n, rank);
        let rho = input_state(&mut rng, &c);
        let table = CorrelatorTable::from_oracle(&rho, &c).unwrap();
        let a = pdm_from_correlators(&table).unwrap();
        let b = pdm_closed_form(&rho, &c).unwrap();
        prop_assert!(a.matrix().distance(b.matrix()) < 1e-9);
    }

    #[test]
    fn negativity_vanishes_exactly_on_psd(
        seed in any::<u64>(),
        dim in 1usize..=8,
        shift in prop_oneof![0.0f64..1.0, -1.0f64..-0.1],
    ) {
        let mut rng = seeded_rng(seed);
        let h = random_hermitian(&mut rng, dim);
        let ev = eigenvalues_hermitian(&h).unwrap();
        let min = ev[0];
        prop_assert_eq!(negativity(&h).unwrap() < 1e-9, min >= -1e-9);
        // Move the minimum next to zero on either side, outside the band
        // `[-1e-9, -5e-10)` where `f = 2|λ_min|` already exceeds 1e-9.
        let m = &h + &ComplexMatrix::identity(dim).scale_real(shift * 1e-8 - ev[0]);
        let min = eigenvalues_hermitian(&m).unwrap()[0];
        let f = negativity(&m).unwrap();
        prop_assert_eq!(f < 1e-9, min >= -1e-9, "f={} min={}", f, min);
        let expected: f64 = eigenvalues_hermitian(&h).unwrap().iter().map(|l| l.abs() - l).sum();
        prop_assert!((negativity(&h).unwrap() - expected).abs() < 1e-10);
    }

    #[test]
    fn time_reverse_preserves_negativity_and_swaps_marginals(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = seeded_rng(seed);
        let c = channel(&mut rng, n, 2);
        let rho = input_state(&mut rng, &c);
        let r = pdm_closed_form(&rho, &c).unwrap();
        let t = time_reverse(&r);
        prop_assert!((negativity(t.matrix()).unwrap() - negativity(r.matrix()).unwrap()).abs() < 1e-12);
        prop_assert_eq!(t.marginal_matrix(TimeSlice::T1), r.marginal_matrix(TimeSlice::T2));
        prop_assert_eq!(time_reverse(&t), r);
    }

    #[test]
    fn product_processes_reduce_to_factors(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let (k1, k2) = (random_kraus(&mut rng, 2, 2), random_kraus(&mut rng, 2, 3));
        let (r1, r2) = (random_density(&mut rng, 2), random_density(&mut rng, 2));
        let joint_kraus: Vec<ComplexMatrix> =
            k1.iter().flat_map(|a| k2.iter().map(move |b| kron(a, b))).collect();
        let joint = cj_from_kraus(&joint_kraus).unwrap();
        let rho = DensityMatrix::new(kron(&r1, &r2), joint.in_layout().clone()).unwrap();
        let r = pdm_closed_form(&rho, &joint).unwrap();
        // Default two-qubit labels: inputs (A, C), outputs (D, B).
        let first = cj_from_kraus(&k1).unwrap();
        let expected = pdm_closed_form(&DensityMatrix::qubit(r1.clone(), "A").unwrap(), &first).unwrap();
        let reduced = reduce_pdm(&r, &["A", "D"]).unwrap();
        prop_assert!(reduced.matrix().distance(expected.matrix()) < 1e-12);
    }

    #[test]
    fn probe_is_physical(seed in any::<u64>(), n in 1usize..=3, p in 0usize..64, q in 0usize..64) {
        let mut rng = seeded_rng(seed);
        let l = layout("S", n);
        let side = 1usize << (2 * n);
        let u = UnitaryGate::new(random_unitary(&mut rng, 1 << n), l.clone()).unwrap();
        let spec = ScatteringSpec::new(
            state(&mut rng, l),
            vec![u],
            PauliString::from_index(n, p % side),
            PauliString::from_index(n, q % side),
        ).unwrap();
        let r = simulate_scattering(&spec);
        prop_assert!(r.probe_purity <= 1.0 + 1e-12);
        prop_assert!(r.imaginary_residual < 1e-12);
        prop_assert!(r.expectation.abs() <= 1.0 + 1e-12);
    }

    /// Exchanging the roles of the two Pauli strings while running the
    /// inverse evolution on the evolved state gives the same correlator, so
    /// the reversed table is the transpose of the forward one.
    #[test]
    fn time_reversed_wiring_gives_transposed_table(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let l = layout("S", 1);
        let u = UnitaryGate::new(random_unitary(&mut rng, 2), l.clone()).unwrap();
        let rho = state(&mut rng, l.clone());
        let later = DensityMatrix::new(u.matrix().conjugate(rho.matrix()), l).unwrap();
        let forward = CorrelatorTable::from_fn(1, |a, b| {
            correlator_via_scattering(&rho, std::slice::from_ref(&u), a, b)
        }).unwrap();
        let reversed = CorrelatorTable::from_fn(1, |a, b| {
            correlator_via_scattering(&later, &[u.adjoint()], a, b)
        }).unwrap();
        let t = forward.transposed();
        for (x, y) in t.values().iter().zip(reversed.values()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn extraction_roundtrips_full_rank(seed in any::<u64>(), n in 1usize..=2, rank in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let c = channel(&mut rng, n, rank);
        let rho = input_state(&mut rng, &c);
        let r = pdm_closed_form(&rho, &c).unwrap();
        let x = extract_cj(&r, &SdpConfig::default()).unwrap();
        let back = pdm_closed_form(&rho, &x.to_channel().unwrap()).unwrap();
        prop_assert!(back.matrix().distance(r.matrix()) < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sdp_residuals_match_recomputation(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = seeded_rng(seed);
        let d = 1usize << n;
        let c = channel(&mut rng, n, 2);
        let rho = random_density_of_rank(&mut rng, d, 1);
        let p = kron(&rho, &ComplexMatrix::identity(d));
        let r = ComplexMatrix::anticommutator(&p, c.matrix()).scale_real(0.5);
        let out = sdp_solve_matrix(&r, &rho, &SdpConfig::default()).unwrap();
        let constraint = (&(&(&p * &out.m) + &(&out.m * &p)).scale_real(0.5) - &r).frobenius_norm();
        let l = c.layout();
        let trace = partial_trace(&out.m, &l, c.in_layout().labels()).unwrap();
        let trace = trace.distance(&ComplexMatrix::identity(d));
        prop_assert!((out.constraint_residual - constraint).abs() < 1e-10);
        prop_assert!((out.trace_residual - trace).abs() < 1e-10);
    }

    #[test]
    fn forward_cj_is_polarization_independent(mut lambdas in prop::collection::vec(0.0f64..=1.0, 2..6)) {
        lambdas.sort_by(f64::total_cmp);
        let mut spec = SweepSpec::new(SweepFamily::LambdaSweep, lambdas);
        spec.theta = Some(3.0 * PI / 8.0);
        let rs: Vec<_> = run_sweep(&spec).unwrap().into_iter().map(|p| p.outcome.unwrap()).collect();
        for r in &rs {
            prop_assert!(r.forward_cj.distance(&rs[0].forward_cj) < 1e-8);
        }
        for w in rs.windows(2) {
            prop_assert!(w[1].f_reverse >= w[0].f_reverse - 1e-12, "{} > {}", w[0].f_reverse, w[1].f_reverse);
        }
    }

    #[test]
    fn sweeps_ignore_grid_order(grid in prop::collection::vec(0.0f64..=PI, 1..6), shots in prop::option::of(100u64..5000), seed in any::<u64>()) {
        let mut spec = SweepSpec::new(SweepFamily::ThetaSweep, grid.clone());
        spec.lambda = Some(0.7);
        spec.shots = shots;
        spec.seed = Some(seed);
        let a = run_sweep(&spec).unwrap();
        let again = run_sweep(&spec).unwrap();
        prop_assert_eq!(&a, &again);
        spec.grid.reverse();
        let mut b = run_sweep(&spec).unwrap();
        b.reverse();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn records_are_self_consistent(lambdas in prop::collection::vec(0.0f64..=1.0, 1..5)) {
        let spec = SweepSpec::new(SweepFamily::DecohereSweep, lambdas);
        for p in run_sweep(&spec).unwrap() {
            let r = p.outcome.unwrap();
            for f in [r.f_pdm, r.f_forward, r.f_reverse] {
                prop_assert!(f >= -1e-12);
            }
            for ev in [&r.pdm_eigenvalues, &r.forward_choi_eigenvalues, &r.reverse_choi_eigenvalues] {
                prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
            }
            let again = classify(r.f_pdm, r.f_forward, r.f_reverse, r.epsilon).unwrap();
            prop_assert_eq!(again.kind, r.verdict);
        }
    }
}

proptest! {
    #[test]
    fn classify_partitions_inputs(f in 0.0f64..1.0, a in 0.0f64..1.0, b in 0.0f64..1.0, eps in 1e-9f64..0.5) {
        let k = classify(f, a, b, eps).unwrap().kind;
        let rows = [
            (f <= eps, VerdictKind::CommonCause),
            (f > eps && a <= eps && b > eps, VerdictKind::AtoB),
            (f > eps && a > eps && b <= eps, VerdictKind::BtoA),
            (f > eps && a <= eps && b <= eps, VerdictKind::EitherDirection),
            (f > eps && a > eps && b > eps, VerdictKind::Mixture),
        ];
        let matching: Vec<VerdictKind> = rows.iter().filter(|r| r.0).map(|r| r.1).collect();
        prop_assert_eq!(matching, vec![k]);
    }

    #[test]
    fn text_parsers_never_panic(s in "\\PC{0,40}") {
        let _ = parse_real(&s);
        let _ = parse_grid(&s);
        let _ = s.parse::<Gate>();
        let _ = s.parse::<PauliString>();
        let _ = DensityMatrix::from_spec(&s, "A");
        let _ = parse_named_channel(&s);
        let _ = s.parse::<VerdictKind>();
    }

    #[test]
    fn structured_parsers_never_panic(s in "[a-z(),0-9pi/*+. -]{0,40}") {
        let _ = parse_real(&s);
        let _ = parse_grid(&s);
        let _ = s.parse::<Gate>();
        let _ = parse_named_channel(&s);
    }

    #[test]
    fn json_parsers_never_panic(s in "[\\[\\]{}\":,0-9a-z_. -]{0,80}") {
        let _ = Pdm::from_json_str(&s);
        let _ = ChannelCJ::from_json_str(&s);
        let _ = CorrelatorTable::from_json_str(&s);
        let _ = qcausal_core::io::matrix_from_json(&s);
        let _ = qcausal_core::scattering::ScatteringDocument::from_json_str(&s).and_then(|d| d.to_spec());
    }
}

#[test]
fn linspace_grid_matches_parsed_grid() {
    assert_eq!(parse_grid("0:pi:17").unwrap(), linspace(0.0, PI, 17));
}
