// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Channels realized as a unitary circuit on a register with prepared
//! ancillas, followed by discarding every non-output site.

use super::gates::Gate;
use super::states::{DensityMatrix, UnitaryGate};
use super::ChannelCJ;
use crate::error::{Error, Result};
use crate::tensor::{kron, partial_trace, permute_sites, ComplexMatrix, QubitLayout};

#[derive(Debug, Clone)]
pub struct UnitaryDilation {
    register: QubitLayout,
    inputs: Vec<String>,
    ancillas: Vec<(String, DensityMatrix)>,
    gates: Vec<Gate>,
    unitaries: Vec<UnitaryGate>,
    outputs: Vec<String>,
    output_labels: Vec<String>,
}

impl UnitaryDilation {
    /// `inputs` and the ancilla sites must partition the register. Output
    /// sites keep their register names unless relabelled with
    /// [`UnitaryDilation::with_output_labels`].
    pub fn new(
        register: QubitLayout,
        inputs: Vec<String>,
        ancillas: Vec<(String, DensityMatrix)>,
        gates: Vec<Gate>,
        outputs: Vec<String>,
    ) -> Result<Self> {
        let mut covered: Vec<&str> = inputs.iter().map(String::as_str).collect();
        for (site, state) in &ancillas {
            let p = register.position(site)?;
            if state.dim() != register.factors()[p] {
                return Err(Error::DimensionMismatch {
                    expected: register.factors()[p],
                    found: state.dim(),
                });
            }
            covered.push(site);
        }
        for site in &covered {
            register.position(site)?;
        }
        let mut sorted = covered.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != covered.len() || covered.len() != register.len() {
            return Err(Error::InvalidLayout(
                "inputs and ancillas must cover each register site exactly once".into(),
            ));
        }
        if inputs.is_empty() || outputs.is_empty() {
            return Err(Error::InvalidLayout("dilation needs input and output sites".into()));
        }
        register.sub_layout(&outputs)?;
        let unitaries = gates
            .iter()
            .map(|g| g.unitary(&register))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            output_labels: outputs.clone(),
            register,
            inputs,
            ancillas,
            gates,
            unitaries,
            outputs,
        })
    }

    pub fn with_output_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.outputs.len() {
            return Err(Error::InvalidLayout("one label per output site required".into()));
        }
        self.output_labels = labels;
        Ok(self)
    }

    pub fn register(&self) -> &QubitLayout {
        &self.register
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Full-register unitaries in application order.
    pub fn unitaries(&self) -> &[UnitaryGate] {
        &self.unitaries
    }

    pub fn input_layout(&self) -> QubitLayout {
        self.register.sub_layout(&self.inputs).expect("validated in new")
    }

    pub fn output_layout(&self) -> QubitLayout {
        let factors = self
            .outputs
            .iter()
            .map(|s| self.register.factors()[self.register.position(s).expect("validated")])
            .collect();
        QubitLayout::new(factors, self.output_labels.clone()).expect("validated labels")
    }

    pub fn total_unitary(&self) -> UnitaryGate {
        self.unitaries
            .iter()
            .fold(UnitaryGate::identity(self.register.clone()), |acc, u| {
                acc.then(u).expect("gates share the register")
            })
    }

    /// Embeds an operator on the input sites next to the ancilla states and
    /// reorders into register order.
    fn embed_input(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let in_layout = self.input_layout();
        if x.dim() != in_layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: in_layout.dim(),
                found: x.dim(),
            });
        }
        let mut op = x.clone();
        let mut labels: Vec<String> = self.inputs.clone();
        let mut factors: Vec<usize> = in_layout.factors().to_vec();
        for (site, state) in &self.ancillas {
            op = kron(&op, state.matrix());
            labels.push(site.clone());
            factors.push(state.dim());
        }
        let stacked = QubitLayout::new(factors, labels)?;
        let (m, _) = permute_sites(&op, &stacked, self.register.labels())?;
        Ok(m)
    }

    /// Register state `ρ_in ⊗ ancillas` in register order.
    pub fn initial_state(&self, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(self.embed_input(rho_in.matrix())?, self.register.clone())
    }

    /// The induced map on an arbitrary (not necessarily Hermitian) input
    /// operator, with output sites in the listed order.
    pub fn apply_raw(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let full = self.total_unitary().matrix().conjugate(&self.embed_input(x)?);
        let reduced = partial_trace(&full, &self.register, &self.outputs)?;
        let mut sorted = self.outputs.clone();
        sorted.sort_by_key(|s| self.register.position(s).expect("validated"));
        let sub = self.register.sub_layout(&sorted)?;
        Ok(permute_sites(&reduced, &sub, &self.outputs)?.0)
    }

    pub fn apply(&self, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(self.apply_raw(rho_in.matrix())?, self.output_layout())
    }

    /// CJ matrix of the induced map, `Σ |i⟩⟨j| ⊗ N(|j⟩⟨i|)`.
    pub fn induced_channel(&self) -> Result<ChannelCJ> {
        let in_layout = self.input_layout();
        let din = in_layout.dim();
        let images = (0..din)
            .flat_map(|j| (0..din).map(move |i| (j, i)))
            .map(|(j, i)| self.apply_raw(&ComplexMatrix::unit(din, j, i)).map(|img| (i, j, img)));
        ChannelCJ::from_images(images, in_layout, self.output_layout())
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Register `A, C, E`: `A` carries the input, `C` and `E` start in `|0⟩`.
/// `swap(A, C)` moves the input into `C`, then `partial_swap(θ, C, E)`
/// couples it to `E`, which is the output, labelled `B`.
pub fn relay_dilation(theta: f64) -> UnitaryDilation {
    let register = QubitLayout::qubits(&["A", "C", "E"]).expect("valid layout");
    UnitaryDilation::new(
        register,
        names(&["A"]),
        vec![
            ("C".into(), DensityMatrix::zero("C")),
            ("E".into(), DensityMatrix::zero("E")),
        ],
        vec![
            Gate::Swap("A".into(), "C".into()),
            Gate::PartialSwap {
                theta,
                a: "C".into(),
                b: "E".into(),
            },
        ],
        names(&["E"]),
    )
    .and_then(|d| d.with_output_labels(names(&["B"])))
    .expect("fixed circuit is valid")
}

/// Register `C1..C4`: `C1` carries the input, `C2 = |0⟩`, `C3 = 𝟙/2`,
/// `C4 = |0⟩`. Two CNOTs from `C1` followed by `swap(C2, C4)`; the output
/// `C2` (labelled `B`) holds the dephased input.
pub fn decohering_dilation() -> UnitaryDilation {
    let register = QubitLayout::qubits(&["C1", "C2", "C3", "C4"]).expect("valid layout");
    let c3 = QubitLayout::qubits(&["C3"]).expect("valid layout");
    UnitaryDilation::new(
        register,
        names(&["C1"]),
        vec![
            ("C2".into(), DensityMatrix::zero("C2")),
            ("C3".into(), DensityMatrix::maximally_mixed(c3)),
            ("C4".into(), DensityMatrix::zero("C4")),
        ],
        vec![
            Gate::Cnot {
                control: "C1".into(),
                target: "C3".into(),
            },
            Gate::Cnot {
                control: "C1".into(),
                target: "C4".into(),
            },
            Gate::Swap("C2".into(), "C4".into()),
        ],
        names(&["C2"]),
    )
    .and_then(|d| d.with_output_labels(names(&["B"])))
    .expect("fixed circuit is valid")
}
