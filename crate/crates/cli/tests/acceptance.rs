// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Thresholds are applied exactly as stated; nothing here is
//! relaxed to make a criterion pass.

use std::f64::consts::PI;
use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;

use qcausal_core::channels::{cj_from_kraus, ChannelCJ, DensityMatrix, UnitaryGate};
use qcausal_core::expr::linspace;
use qcausal_core::extraction::{sdp_solve, spectral_solve, SdpConfig};
use qcausal_core::inference::{
    run_sweep, SweepFamily, SweepRecord, SweepSpec, VerdictKind, DEFAULT_EPSILON,
};
use qcausal_core::pdm::{
    correlator_oracle, negativity, pdm_closed_form, pdm_from_correlators, time_reverse,
    CorrelatorTable, TimeSlice,
};
use qcausal_core::random::{
    random_density, random_density_of_rank, random_hermitian, random_kraus, random_pure_state,
    random_unitary, seeded_rng, TestRng,
};
use qcausal_core::scattering::correlator_via_scattering;
use qcausal_core::tensor::{ComplexMatrix, PauliString, QubitLayout};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn check(ok: bool, failures: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn verdict(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failures.join("; ")))
    }
}

fn layout(prefix: &str, n: usize) -> QubitLayout {
    let labels: Vec<String> = (0..n).map(|k| format!("{prefix}{k}")).collect();
    QubitLayout::qubits(&labels).unwrap()
}

fn random_state(rng: &mut TestRng, l: QubitLayout) -> DensityMatrix {
    let m = random_density(rng, l.dim());
    DensityMatrix::new(m, l).unwrap()
}

fn random_channel(rng: &mut TestRng, n: usize) -> ChannelCJ {
    let rank = rng.random_range(1..=4);
    cj_from_kraus(&random_kraus(rng, 1 << n, rank)).unwrap()
}

fn random_pauli(rng: &mut TestRng, n: usize) -> PauliString {
    PauliString::from_index(n, rng.random_range(0..1usize << (2 * n)))
}

/// Kraus operators of `X ↦ Tr_discard[U (X ⊗ |φ⟩⟨φ|) U†]`, keeping either
/// the system or (when it has the same size) the ancilla.
fn dilation_kraus(u: &ComplexMatrix, phi: &[C64], ds: usize, keep_system: bool) -> Vec<ComplexMatrix> {
    let da = phi.len();
    let (dkeep, ddrop) = if keep_system { (ds, da) } else { (da, ds) };
    (0..ddrop)
        .map(|k| {
            let mut m = ComplexMatrix::zeros(dkeep);
            for i in 0..dkeep {
                let row = if keep_system { i * da + k } else { k * da + i };
                for j in 0..ds {
                    m[(i, j)] = (0..da).map(|b| u[(row, j * da + b)] * phi[b]).sum();
                }
            }
            m
        })
        .collect()
}

fn scattering_equivalence() -> Outcome {
    let mut rng = seeded_rng(101);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let cases = 240;
    for case in 0..cases {
        let n = 1 + case % 2;
        let m = rng.random_range(1..=2);
        let (ds, da) = (1 << n, 1 << m);
        let keep_system = m != n || rng.random_bool(0.5);
        let sys = layout("S", n);
        let anc = layout("E", m);
        let register = sys.concat(&anc).unwrap();
        let rho = random_state(&mut rng, sys.clone());
        let phi = random_pure_state(&mut rng, da);
        let u = random_unitary(&mut rng, ds * da);
        let kraus = dilation_kraus(&u, &phi, ds, keep_system);
        let out_layout = layout("O", if keep_system { n } else { m });
        let channel = ChannelCJ::from_kraus(&kraus, sys.clone(), out_layout).unwrap();

        let ancilla = DensityMatrix::new(ComplexMatrix::outer(&phi, &phi), anc).unwrap();
        let state = rho.tensor(&ancilla).unwrap();
        let gate = UnitaryGate::new(u, register).unwrap();
        let p1 = random_pauli(&mut rng, n);
        let p2 = random_pauli(&mut rng, n);
        let id_a = PauliString::from_index(m, 0);
        let id_s = PauliString::from_index(n, 0);
        let full1 = p1.concat(&id_a);
        let full2 = if keep_system { p2.concat(&id_a) } else { id_s.concat(&p2) };
        let probe = correlator_via_scattering(&state, &[gate], &full1, &full2).unwrap();
        let oracle = correlator_oracle(&rho, &channel, &p1, &p2).unwrap();
        let err = (probe - oracle).abs();
        worst = worst.max(err);
        check(err < 1e-9, &mut failures, || format!("case {case}: |Δ| = {err:e}"));
    }
    verdict(failures, format!("{cases} instances, max |Δ| = {worst:e}"))
}

fn closed_form_equivalence() -> Outcome {
    let mut rng = seeded_rng(202);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let cases = 60;
    for case in 0..cases {
        let n = 1 + case % 2;
        let channel = random_channel(&mut rng, n);
        let rho = random_state(&mut rng, channel.in_layout().clone());
        let closed = pdm_closed_form(&rho, &channel).unwrap();
        let table = CorrelatorTable::from_oracle(&rho, &channel).unwrap();
        let measured = pdm_from_correlators(&table).unwrap();
        let d = closed.matrix().distance(measured.matrix());
        worst = worst.max(d);
        check(d < 1e-9, &mut failures, || format!("case {case}: ‖Δ‖ = {d:e}"));
    }
    verdict(failures, format!("{cases} pairs, max ‖Δ‖ = {worst:e}"))
}

fn sweep(family: SweepFamily, grid: Vec<f64>, lambda: Option<f64>, theta: Option<f64>) -> Vec<SweepRecord> {
    let mut spec = SweepSpec::new(family, grid);
    spec.lambda = lambda;
    spec.theta = theta;
    run_sweep(&spec)
        .unwrap()
        .into_iter()
        .map(|p| p.outcome.unwrap_or_else(|e| panic!("point {} failed: {e}", p.param)))
        .collect()
}

fn relay_theta_sweep() -> Outcome {
    let eps = DEFAULT_EPSILON;
    let rs = sweep(SweepFamily::ThetaSweep, linspace(0.0, PI, 17), Some(0.7), None);
    let mut failures = Vec::new();
    for r in &rs {
        let t = r.param;
        check(r.f_forward < 1e-7, &mut failures, || format!("θ={t:.4}: f_fwd = {:e}", r.f_forward));
        let inner = t > PI / 8.0 + 1e-12 && t < 7.0 * PI / 8.0 - 1e-12;
        check(!inner || r.f_reverse > 1e-4, &mut failures, || {
            format!("θ={t:.4}: f_rev = {:e} ≤ 1e-4", r.f_reverse)
        });
        let endpoint = t == 0.0 || t == PI;
        if endpoint {
            check(r.f_pdm < 1e-9, &mut failures, || format!("θ={t:.4}: f_pdm = {:e}", r.f_pdm));
        } else {
            check(r.f_pdm > 0.0, &mut failures, || format!("θ={t:.4}: f_pdm = 0"));
        }
        check(r.f_pdm <= eps || r.verdict == VerdictKind::AtoB, &mut failures, || {
            format!("θ={t:.4}: verdict {} (f_pdm = {:.3e})", r.verdict, r.f_pdm)
        });
    }
    let fine = sweep(SweepFamily::ThetaSweep, linspace(0.0, PI, 33), Some(0.7), None);
    for (k, r) in rs.iter().enumerate() {
        let f = &fine[2 * k];
        check(f.verdict == r.verdict, &mut failures, || {
            format!("θ={:.4}: verdict {} on the doubled grid, {} on the base grid", r.param, f.verdict, r.verdict)
        });
    }
    verdict(failures, format!("{} + {} points", rs.len(), fine.len()))
}

fn max_pairwise(rs: &[SweepRecord]) -> f64 {
    rs.iter()
        .map(|r| r.forward_cj.distance(&rs[0].forward_cj))
        .fold(0.0, f64::max)
}

fn non_decreasing(rs: &[SweepRecord], failures: &mut Vec<String>) {
    for w in rs.windows(2) {
        check(w[1].f_reverse >= w[0].f_reverse, failures, || {
            format!(
                "f_rev falls from {:e} at {} to {:e} at {}",
                w[0].f_reverse, w[0].param, w[1].f_reverse, w[1].param
            )
        });
    }
}

fn relay_lambda_sweep() -> Outcome {
    let rs = sweep(SweepFamily::LambdaSweep, linspace(0.0, 1.0, 11), None, Some(3.0 * PI / 8.0));
    let mut failures = Vec::new();
    let spread = max_pairwise(&rs);
    check(spread < 1e-8, &mut failures, || format!("forward CJ spread {spread:e}"));
    check(rs[0].f_reverse < 1e-6, &mut failures, || format!("f_rev(0) = {:e}", rs[0].f_reverse));
    non_decreasing(&rs, &mut failures);
    for r in rs.iter().filter(|r| r.param >= 0.1 - 1e-12) {
        check(r.verdict == VerdictKind::AtoB, &mut failures, || {
            format!("λ={}: verdict {}", r.param, r.verdict)
        });
    }
    verdict(failures, format!("{} points, forward spread {spread:e}", rs.len()))
}

fn decohering_sweep() -> Outcome {
    let rs = sweep(SweepFamily::DecohereSweep, linspace(0.0, 1.0, 5), None, None);
    let mut failures = Vec::new();
    let spread = max_pairwise(&rs);
    check(spread < 1e-8, &mut failures, || format!("forward CJ spread {spread:e}"));
    for r in &rs {
        let min = r.forward_choi_eigenvalues[0];
        check(min >= -1e-8, &mut failures, || format!("λ={}: forward Choi min eig {min:e}", r.param));
        if r.param > 0.0 {
            check(r.verdict == VerdictKind::AtoB, &mut failures, || {
                format!("λ={}: verdict {}", r.param, r.verdict)
            });
        }
    }
    check(rs[0].f_reverse < 1e-6, &mut failures, || format!("f_rev(0) = {:e}", rs[0].f_reverse));
    non_decreasing(&rs, &mut failures);
    verdict(failures, format!("{} points, forward spread {spread:e}", rs.len()))
}

fn extraction_roundtrip() -> Outcome {
    let mut rng = seeded_rng(606);
    let cfg = SdpConfig::default();
    let mut failures = Vec::new();
    let (mut spectral_err, mut sdp_obj, mut sdp_res, mut cross) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);

    for case in 0..50 {
        let n = 1 + case % 2;
        let channel = random_channel(&mut rng, n);
        let rho = random_state(&mut rng, channel.in_layout().clone());
        let r = pdm_closed_form(&rho, &channel).unwrap();
        let m = spectral_solve(&r, &rho).unwrap();
        let d = m.distance(channel.matrix());
        spectral_err = spectral_err.max(d);
        check(d < 1e-8, &mut failures, || format!("full-rank case {case}: ‖Δ‖ = {d:e}"));
    }
    for case in 0..10 {
        let n = 1 + case % 2;
        let d = 1 << n;
        let rank = rng.random_range(1..d);
        let channel = random_channel(&mut rng, n);
        let rho = DensityMatrix::new(random_density_of_rank(&mut rng, d, rank), channel.in_layout().clone())
            .unwrap();
        let r = pdm_closed_form(&rho, &channel).unwrap();
        match sdp_solve(&r, &cfg) {
            Ok(x) => {
                let obj = x.objective.unwrap_or(f64::NAN);
                sdp_obj = sdp_obj.max(obj);
                sdp_res = sdp_res.max(x.residual);
                check(obj < 1e-6, &mut failures, || format!("rank-{rank} case {case}: objective {obj:e}"));
                check(x.residual < 1e-6, &mut failures, || {
                    format!("rank-{rank} case {case}: residual {:e}", x.residual)
                });
            }
            Err(e) => failures.push(format!("rank-{rank} case {case}: {e}")),
        }
    }
    for case in 0..10 {
        let n = 1 + case % 2;
        let channel = random_channel(&mut rng, n);
        let rho = random_state(&mut rng, channel.in_layout().clone());
        let r = pdm_closed_form(&rho, &channel).unwrap();
        let spectral = spectral_solve(&r, &rho).unwrap();
        match sdp_solve(&r, &cfg) {
            Ok(x) => {
                let d = x.m.distance(&spectral);
                cross = cross.max(d);
                check(d < 1e-6, &mut failures, || format!("cross-check case {case}: ‖Δ‖ = {d:e}"));
            }
            Err(e) => failures.push(format!("cross-check case {case}: {e}")),
        }
    }
    verdict(
        failures,
        format!(
            "spectral ‖Δ‖ ≤ {spectral_err:e}, SDP objective ≤ {sdp_obj:e}, residual ≤ {sdp_res:e}, cross ‖Δ‖ ≤ {cross:e}"
        ),
    )
}

/// `Tr√(OO†) − Tr O` from an SVD computed independently of the crate's
/// eigensolver.
fn negativity_by_svd(o: &ComplexMatrix) -> f64 {
    let d = o.dim();
    let m = DMatrix::from_row_slice(d, d, o.as_slice());
    let sv: f64 = m.singular_values().iter().sum();
    sv - o.trace().re
}

fn negativity_oracle() -> Outcome {
    let mut rng = seeded_rng(707);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for case in 0..100 {
        let d = rng.random_range(1..=16);
        let o = random_hermitian(&mut rng, d);
        let f = negativity(&o).unwrap();
        let g = negativity_by_svd(&o);
        let err = (f - g).abs();
        worst = worst.max(err);
        check(err < 1e-10, &mut failures, || format!("case {case} (dim {d}): |Δ| = {err:e}"));
    }
    verdict(failures, format!("100 matrices, max |Δ| = {worst:e}"))
}

fn involution_and_marginals() -> Outcome {
    let mut rng = seeded_rng(808);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for case in 0..50 {
        let n = 1 + case % 2;
        let channel = random_channel(&mut rng, n);
        let rho = random_state(&mut rng, channel.in_layout().clone());
        let r = pdm_closed_form(&rho, &channel).unwrap();
        check(time_reverse(&time_reverse(&r)) == r, &mut failures, || {
            format!("case {case}: time_reverse² ≠ id")
        });
        let d = r.marginal_matrix(TimeSlice::T1).distance(rho.matrix());
        worst = worst.max(d);
        check(d < 1e-10, &mut failures, || format!("case {case}: marginal ‖Δ‖ = {d:e}"));
    }
    verdict(failures, format!("50 cases, max marginal ‖Δ‖ = {worst:e}"))
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("qcausal-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let runs: [&[&str]; 4] = [
        &["sweep-theta", "--lambda", "0.7", "--grid", "0:pi:17"],
        &["sweep-lambda", "--format", "json"],
        &["sweep-decohere", "--shots", "5000", "--seed", "3"],
        &["sweep-theta", "--via", "scattering", "--shots", "800", "--seed", "8"],
    ];
    let mut failures = Vec::new();
    for (k, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let path = dir.join(format!("run{k}-{rep}"));
            let status = Command::new(env!("CARGO_BIN_EXE_qcausal"))
                .args(*args)
                .arg("--out")
                .arg(&path)
                .env_remove("QCAUSAL_OUT_DIR")
                .status()
                .map_err(|e| e.to_string())?;
            check(status.success(), &mut failures, || format!("{args:?} exited with {status}"));
            outputs.push(fs::read(&path).unwrap_or_default());
        }
        check(!outputs[0].is_empty() && outputs[0] == outputs[1], &mut failures, || {
            format!("{args:?}: outputs differ")
        });
    }
    let _ = fs::remove_dir_all(&dir);
    verdict(failures, format!("{} configurations run twice", runs.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "scattering equivalence", limit: Some(Duration::from_secs(10)), run: scattering_equivalence },
        Criterion { id: 2, name: "closed-form equivalence", limit: Some(Duration::from_secs(10)), run: closed_form_equivalence },
        Criterion { id: 3, name: "relay channel θ sweep", limit: Some(Duration::from_secs(5)), run: relay_theta_sweep },
        Criterion { id: 4, name: "relay channel λ sweep", limit: Some(Duration::from_secs(5)), run: relay_lambda_sweep },
        Criterion { id: 5, name: "decohering channel λ sweep", limit: Some(Duration::from_secs(5)), run: decohering_sweep },
        Criterion { id: 6, name: "extraction roundtrip", limit: Some(Duration::from_secs(60)), run: extraction_roundtrip },
        Criterion { id: 7, name: "negativity oracle", limit: None, run: negativity_oracle },
        Criterion { id: 8, name: "involution and marginals", limit: None, run: involution_and_marginals },
        Criterion { id: 9, name: "CLI determinism", limit: None, run: cli_determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let Some(limit) = c.limit {
            if elapsed > limit {
                outcome = Err(format!(
                    "{}; runtime {:.2?} exceeds {:?}",
                    outcome.unwrap_or_else(|e| e),
                    elapsed,
                    limit
                ));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {} ({detail}; {elapsed:.2?})", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {} ({detail}; {elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
