// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Probe-qubit interferometer that reads out a two-time correlator.
//!
//! The probe starts in `|0⟩`, goes through a Hadamard, controls
//! `W = U† P₂ U` and then `V = P₁` on the register, and gets a final Hadamard.
//! Its `⟨σz⟩` is `Re Tr[V W ρ]`, the correlator of `P₁` before and `P₂`
//! after the evolution `U`. The simulation evolves the full probe ⊗ register
//! density matrix; nothing is shortcut algebraically.

mod document;

use crate::channels::{DensityMatrix, UnitaryDilation, UnitaryGate};
use crate::error::{Error, Result};
use crate::tensor::{
    kron, partial_trace, pauli_matrix, sigma_z, ComplexMatrix, PauliLetter, PauliString,
    QubitLayout,
};

pub use document::ScatteringDocument;

const PROBE: &str = "probe";

#[derive(Debug, Clone)]
pub struct ScatteringSpec {
    state: DensityMatrix,
    evolution: Vec<UnitaryGate>,
    p1: PauliString,
    p2: PauliString,
}

impl ScatteringSpec {
    /// `evolution` is applied in order; `p1` and `p2` act on the whole register.
    pub fn new(
        state: DensityMatrix,
        evolution: Vec<UnitaryGate>,
        p1: PauliString,
        p2: PauliString,
    ) -> Result<Self> {
        let layout = state.layout();
        if layout.factors().iter().any(|&f| f != 2) {
            return Err(Error::InvalidLayout("scattering register must be qubits".into()));
        }
        if layout.labels().iter().any(|l| l == PROBE) {
            return Err(Error::InvalidLayout(format!("site name `{PROBE}` is reserved")));
        }
        if 2 * layout.dim() > crate::tensor::MAX_DIM {
            return Err(Error::InvalidLayout("register too large for the probe".into()));
        }
        for u in &evolution {
            if u.layout() != layout {
                return Err(Error::InvalidLayout(
                    "every evolution step must act on the state's register".into(),
                ));
            }
        }
        for p in [&p1, &p2] {
            if p.len() != layout.len() {
                return Err(Error::DimensionMismatch {
                    expected: layout.len(),
                    found: p.len(),
                });
            }
        }
        Ok(Self {
            state,
            evolution,
            p1,
            p2,
        })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn evolution(&self) -> &[UnitaryGate] {
        &self.evolution
    }

    pub fn p1(&self) -> &PauliString {
        &self.p1
    }

    pub fn p2(&self) -> &PauliString {
        &self.p2
    }

    /// Product of the evolution steps, last step leftmost.
    pub fn total_unitary(&self) -> ComplexMatrix {
        self.evolution
            .iter()
            .fold(ComplexMatrix::identity(self.state.dim()), |acc, u| u.matrix() * &acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeResult {
    /// Final `⟨σz⟩` of the probe.
    pub expectation: f64,
    /// `|Im Tr[(σz ⊗ 𝟙) ρ_total]|`, zero up to rounding.
    pub imaginary_residual: f64,
    /// Purity of the probe marginal just before the final Hadamard.
    pub probe_purity: f64,
}

fn controlled(w: &ComplexMatrix) -> ComplexMatrix {
    let d = w.dim();
    let mut out = ComplexMatrix::zeros(2 * d);
    for i in 0..d {
        out[(i, i)] = num_complex::Complex64::new(1.0, 0.0);
        for j in 0..d {
            out[(d + i, d + j)] = w[(i, j)];
        }
    }
    out
}

pub fn simulate_scattering(spec: &ScatteringSpec) -> ProbeResult {
    let d = spec.state.dim();
    let id = ComplexMatrix::identity(d);
    let u = spec.total_unitary();
    let w = &(&u.adjoint() * &pauli_matrix(&spec.p2)) * &u;
    let v = pauli_matrix(&spec.p1);
    let h = kron(&crate::channels::gates::hadamard_matrix(), &id);

    let probe0 = ComplexMatrix::diagonal(&[1.0, 0.0]);
    let mut total = kron(&probe0, spec.state.matrix());
    for step in [&h, &controlled(&w), &controlled(&v)] {
        total = step.conjugate(&total);
    }

    let mut labels = vec![PROBE.to_string()];
    labels.extend(spec.state.layout().labels().iter().cloned());
    let layout = QubitLayout::qubits(&labels).expect("validated register");
    let probe = partial_trace(&total, &layout, &[PROBE]).expect("probe site exists");
    let probe_purity = (&probe * &probe).trace().re;

    total = h.conjugate(&total);
    let z = kron(&sigma_z(), &id);
    let e = (&z * &total).trace();
    ProbeResult {
        expectation: e.re,
        imaginary_residual: e.im.abs(),
        probe_purity,
    }
}

/// Correlator of `p1` then `p2` on the register state `rho`, measured by the
/// probe across the evolution `unitaries`.
pub fn correlator_via_scattering(
    rho: &DensityMatrix,
    unitaries: &[UnitaryGate],
    p1: &PauliString,
    p2: &PauliString,
) -> Result<f64> {
    let spec = ScatteringSpec::new(rho.clone(), unitaries.to_vec(), p1.clone(), p2.clone())?;
    Ok(simulate_scattering(&spec).expectation)
}

/// Places `local` on `sites` of `register`, identity elsewhere.
pub fn embed_pauli(register: &QubitLayout, sites: &[String], local: &PauliString) -> Result<PauliString> {
    if local.len() != sites.len() {
        return Err(Error::DimensionMismatch {
            expected: sites.len(),
            found: local.len(),
        });
    }
    let mut letters = vec![PauliLetter::I; register.len()];
    for (site, &l) in sites.iter().zip(local.letters()) {
        letters[register.position(site)?] = l;
    }
    Ok(PauliString::new(letters))
}

/// Correlator `⟨p1, p2⟩` of the input and output of a dilated channel, with
/// `p1` on the dilation's input sites and `p2` on its output sites.
pub fn correlator_via_dilation(
    dilation: &UnitaryDilation,
    rho_in: &DensityMatrix,
    p1: &PauliString,
    p2: &PauliString,
) -> Result<f64> {
    let reg = dilation.register();
    let full1 = embed_pauli(reg, dilation.inputs(), p1)?;
    let full2 = embed_pauli(reg, dilation.outputs(), p2)?;
    let state = dilation.initial_state(rho_in)?;
    correlator_via_scattering(&state, dilation.unitaries(), &full1, &full2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{
        decohering_dilation, relay_channel, relay_dilation, Gate,
    };
    use crate::pdm::correlator_oracle;
    use std::f64::consts::PI;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn identity_evolution_on_zero() {
        let spec = ScatteringSpec::new(DensityMatrix::zero("A"), vec![], ps("Z"), ps("Z")).unwrap();
        let r = simulate_scattering(&spec);
        assert!((r.expectation - 1.0).abs() < 1e-15);
        assert!(r.imaginary_residual < 1e-15);
        assert!(r.probe_purity <= 1.0 + 1e-12);
    }

    #[test]
    fn transport_at_half_pi() {
        let reg = QubitLayout::qubits(&["A", "B"]).unwrap();
        let state = DensityMatrix::plus("A").tensor(&DensityMatrix::zero("B")).unwrap();
        let g = Gate::PartialSwap {
            theta: PI / 2.0,
            a: "A".into(),
            b: "B".into(),
        };
        let u = g.unitary(&reg).unwrap();
        let c = correlator_via_scattering(&state, &[u], &ps("XI"), &ps("IX")).unwrap();
        assert!((c - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_strings_give_one() {
        let d = relay_dilation(0.4);
        let rho = DensityMatrix::polarized_plus(0.7, "A").unwrap();
        let c = correlator_via_dilation(&d, &rho, &ps("I"), &ps("I")).unwrap();
        assert!((c - 1.0).abs() < 1e-14);
    }

    #[test]
    fn relay_matches_oracle() {
        let theta = 3.0 * PI / 8.0;
        let rho = DensityMatrix::polarized_plus(0.7, "A").unwrap();
        let c = correlator_via_dilation(&relay_dilation(theta), &rho, &ps("Z"), &ps("Z")).unwrap();
        let o = correlator_oracle(&rho, &relay_channel(theta), &ps("Z"), &ps("Z")).unwrap();
        assert!((c - o).abs() < 1e-12);
    }

    #[test]
    fn decohering_dilation_kills_x_correlator() {
        let rho = DensityMatrix::plus("C1");
        let c = correlator_via_dilation(&decohering_dilation(), &rho, &ps("X"), &ps("X")).unwrap();
        assert!(c.abs() < 1e-14);
    }

    #[test]
    fn rejects_mismatched_strings() {
        let r = ScatteringSpec::new(DensityMatrix::zero("A"), vec![], ps("ZZ"), ps("Z"));
        assert!(r.is_err());
        let r = ScatteringSpec::new(DensityMatrix::zero("probe"), vec![], ps("Z"), ps("Z"));
        assert!(r.is_err());
    }
}
