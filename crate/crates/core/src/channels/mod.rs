// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum channels in CJ form.
//!
//! The CJ matrix of `N` is `M = Σ_ij |i⟩⟨j| ⊗ N(|j⟩⟨i|)` with the input factor
//! first, so the identity channel has `M = SWAP`. The Choi matrix is
//! `M^{T_in}`, which is positive semidefinite exactly when `N` is completely
//! positive. `N` is recovered as `N(X) = Tr_in[(X ⊗ 𝟙) M]`.

pub mod dilation;
pub mod gates;
pub mod states;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::tensor::{
    eigenvalues_hermitian, kron, partial_transpose, ComplexMatrix, QubitLayout,
    HERMITIAN_TOL,
};

pub use dilation::{decohering_dilation, relay_dilation, UnitaryDilation};
pub use gates::{partial_swap, partial_swap_matrix, swap_matrix, Gate};
pub use states::{DensityMatrix, UnitaryGate};

/// Trace-preservation tolerance on `‖Tr_out M − 𝟙‖_F`.
pub const TP_TOL: f64 = 1e-8;

/// Site labels for one `n`-qubit system at two times: `A → B` for one qubit,
/// `A, C → D, B` for two, generic names beyond that.
pub fn default_time_labels(n: usize) -> (Vec<String>, Vec<String>) {
    let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match n {
        1 => (owned(&["A"]), owned(&["B"])),
        2 => (owned(&["A", "C"]), owned(&["D", "B"])),
        _ => (
            (0..n).map(|k| format!("t1q{k}")).collect(),
            (0..n).map(|k| format!("t2q{k}")).collect(),
        ),
    }
}

fn qubit_count(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidChannel(format!("dimension {dim} is not a qubit register")));
    }
    Ok(dim.trailing_zeros() as usize)
}

fn default_layouts(dim: usize) -> Result<(QubitLayout, QubitLayout)> {
    let (i, o) = default_time_labels(qubit_count(dim)?);
    Ok((QubitLayout::qubits(&i)?, QubitLayout::qubits(&o)?))
}

/// Hermitian, trace-preserving CJ matrix over `in ⊗ out`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelCJ {
    m: ComplexMatrix,
    in_layout: QubitLayout,
    out_layout: QubitLayout,
}

impl ChannelCJ {
    /// Validates Hermiticity (`1e-10`) and trace preservation ([`TP_TOL`]).
    pub fn from_matrix(
        m: ComplexMatrix,
        in_layout: QubitLayout,
        out_layout: QubitLayout,
    ) -> Result<Self> {
        let joint = in_layout.concat(&out_layout)?;
        if m.dim() != joint.dim() {
            return Err(Error::DimensionMismatch {
                expected: joint.dim(),
                found: m.dim(),
            });
        }
        let violation = m.hermiticity_violation();
        if violation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { violation });
        }
        let c = Self {
            m: m.hermitian_part(),
            in_layout,
            out_layout,
        };
        let dev = c.tp_deviation();
        if dev > TP_TOL {
            return Err(Error::InvalidChannel(format!(
                "not trace preserving (deviation {dev:.3e})"
            )));
        }
        Ok(c)
    }

    /// Assembles `M` from images `(i, j, N(|j⟩⟨i|))`.
    pub(crate) fn from_images(
        images: impl Iterator<Item = Result<(usize, usize, ComplexMatrix)>>,
        in_layout: QubitLayout,
        out_layout: QubitLayout,
    ) -> Result<Self> {
        let (din, dout) = (in_layout.dim(), out_layout.dim());
        let mut m = ComplexMatrix::zeros(din * dout);
        for item in images {
            let (i, j, img) = item?;
            for a in 0..dout {
                for b in 0..dout {
                    m[(i * dout + a, j * dout + b)] = img[(a, b)];
                }
            }
        }
        Self::from_matrix(m, in_layout, out_layout)
    }

    pub fn from_unitary(u: &UnitaryGate, in_layout: QubitLayout, out_layout: QubitLayout) -> Result<Self> {
        Self::from_kraus(std::slice::from_ref(u.matrix()), in_layout, out_layout)
    }

    /// Rejects sets with `‖Σ K†K − 𝟙‖_F > 1e-10`.
    pub fn from_kraus(
        ks: &[ComplexMatrix],
        in_layout: QubitLayout,
        out_layout: QubitLayout,
    ) -> Result<Self> {
        let din = in_layout.dim();
        if in_layout.dim() != out_layout.dim() {
            return Err(Error::InvalidChannel("Kraus form needs equal in/out dims".into()));
        }
        if ks.is_empty() {
            return Err(Error::InvalidChannel("empty Kraus set".into()));
        }
        let mut sum = ComplexMatrix::zeros(din);
        for k in ks {
            if k.dim() != din {
                return Err(Error::DimensionMismatch {
                    expected: din,
                    found: k.dim(),
                });
            }
            sum = &sum + &(&k.adjoint() * k);
        }
        let deficit = sum.distance(&ComplexMatrix::identity(din));
        if deficit > HERMITIAN_TOL {
            return Err(Error::IncompleteKraus { deficit });
        }
        let images = (0..din).flat_map(|i| (0..din).map(move |j| (i, j))).map(|(i, j)| {
            let e = ComplexMatrix::unit(din, j, i);
            let img = ks.iter().fold(ComplexMatrix::zeros(din), |acc, k| {
                &acc + &(&(k * &e) * &k.adjoint())
            });
            Ok((i, j, img))
        });
        Self::from_images(images, in_layout, out_layout)
    }

    /// Identity channel on `n` qubits, `M = SWAP` between the two blocks.
    pub fn identity(n: usize) -> Result<Self> {
        let (i, o) = default_layouts(1 << n)?;
        let u = UnitaryGate::identity(i.clone());
        Self::from_unitary(&u, i, o)
    }

    /// Replacement channel `X ↦ Tr(X) σ`, `M = 𝟙 ⊗ σ`.
    pub fn constant(sigma: &DensityMatrix, in_layout: QubitLayout) -> Result<Self> {
        let m = kron(&ComplexMatrix::identity(in_layout.dim()), sigma.matrix());
        Self::from_matrix(m, in_layout, sigma.layout().clone())
    }

    pub fn relabel(&self, in_layout: QubitLayout, out_layout: QubitLayout) -> Result<Self> {
        if in_layout.factors() != self.in_layout.factors()
            || out_layout.factors() != self.out_layout.factors()
        {
            return Err(Error::InvalidLayout("relabel must keep factor dimensions".into()));
        }
        in_layout.concat(&out_layout)?;
        Ok(Self {
            m: self.m.clone(),
            in_layout,
            out_layout,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn in_layout(&self) -> &QubitLayout {
        &self.in_layout
    }

    pub fn out_layout(&self) -> &QubitLayout {
        &self.out_layout
    }

    pub fn in_dim(&self) -> usize {
        self.in_layout.dim()
    }

    pub fn out_dim(&self) -> usize {
        self.out_layout.dim()
    }

    pub fn layout(&self) -> QubitLayout {
        self.in_layout.concat(&self.out_layout).expect("validated in constructor")
    }

    pub fn tp_deviation(&self) -> f64 {
        tp_deviation(&self.m, self.in_dim(), self.out_dim())
    }

    /// `M^{T_in}`.
    pub fn choi(&self) -> ComplexMatrix {
        partial_transpose(&self.m, &self.layout(), self.in_layout.labels())
            .expect("layout matches")
    }

    pub fn choi_min_eigenvalue(&self) -> f64 {
        eigenvalues_hermitian(&self.choi()).expect("Choi of a Hermitian M is Hermitian")[0]
    }

    /// `N(X) = Tr_in[(X ⊗ 𝟙) M]` for any operator `X` on the input.
    pub fn apply_raw(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        apply_cj(&self.m, self.in_dim(), self.out_dim(), x)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.layout().factors() != self.in_layout.factors() {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim(),
                found: rho.dim(),
            });
        }
        DensityMatrix::new(self.apply_raw(rho.matrix())?, self.out_layout.clone())
    }

    pub fn to_json(&self) -> ChannelJson {
        ChannelJson {
            in_dim: self.in_dim(),
            out_dim: self.out_dim(),
            in_labels: Some(self.in_layout.labels().to_vec()),
            out_labels: Some(self.out_layout.labels().to_vec()),
            matrix: MatrixJson::from_matrix(&self.m),
        }
    }

    pub fn from_json(j: &ChannelJson) -> Result<Self> {
        let m = j.matrix.to_matrix()?;
        if j.in_dim == 0 || j.out_dim == 0 || j.in_dim.checked_mul(j.out_dim) != Some(m.dim()) {
            return Err(Error::Parse(format!(
                "in_dim·out_dim = {}·{} does not match matrix dim {}",
                j.in_dim,
                j.out_dim,
                m.dim()
            )));
        }
        let (din_default, dout_default) = {
            let (i, o) = default_time_labels(qubit_count(j.in_dim)?);
            let o = if qubit_count(j.out_dim)? == i.len() {
                o
            } else {
                (0..qubit_count(j.out_dim)?).map(|k| format!("t2q{k}")).collect()
            };
            (i, o)
        };
        let in_labels = j.in_labels.clone().unwrap_or(din_default);
        let out_labels = j.out_labels.clone().unwrap_or(dout_default);
        let in_layout = QubitLayout::qubits(&in_labels)?;
        let out_layout = QubitLayout::qubits(&out_labels)?;
        if in_layout.dim() != j.in_dim || out_layout.dim() != j.out_dim {
            return Err(Error::Parse("labels do not match in_dim/out_dim".into()));
        }
        Self::from_matrix(m, in_layout, out_layout)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("finite matrix serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

/// Serialized channel: the matrix format plus dimensions and optional labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub in_dim: usize,
    pub out_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_labels: Option<Vec<String>>,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

/// `‖Tr_out M − 𝟙_in‖_F` for a CJ matrix over `in ⊗ out`.
pub fn tp_deviation(m: &ComplexMatrix, din: usize, dout: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..din {
        for j in 0..din {
            let mut s = C64::new(0.0, 0.0);
            for a in 0..dout {
                s += m[(i * dout + a, j * dout + a)];
            }
            if i == j {
                s -= 1.0;
            }
            acc += s.norm_sqr();
        }
    }
    acc.sqrt()
}

/// `out[a, b] = Σ_ij X[j, i] M[(i, a), (j, b)]`.
pub fn apply_cj(m: &ComplexMatrix, din: usize, dout: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.dim() != din {
        return Err(Error::DimensionMismatch {
            expected: din,
            found: x.dim(),
        });
    }
    if m.dim() != din * dout {
        return Err(Error::DimensionMismatch {
            expected: din * dout,
            found: m.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(dout);
    for i in 0..din {
        for j in 0..din {
            let w = x[(j, i)];
            if w == C64::new(0.0, 0.0) {
                continue;
            }
            for a in 0..dout {
                for b in 0..dout {
                    out[(a, b)] += w * m[(i * dout + a, j * dout + b)];
                }
            }
        }
    }
    Ok(out)
}

pub fn cj_from_unitary(u: &UnitaryGate) -> Result<ChannelCJ> {
    let (i, o) = default_layouts(u.dim())?;
    ChannelCJ::from_unitary(u, i, o)
}

pub fn cj_from_kraus(ks: &[ComplexMatrix]) -> Result<ChannelCJ> {
    let d = ks.first().map_or(0, ComplexMatrix::dim);
    let (i, o) = default_layouts(d)?;
    ChannelCJ::from_kraus(ks, i, o)
}

pub fn apply_channel(c: &ChannelCJ, rho: &DensityMatrix) -> Result<DensityMatrix> {
    c.apply(rho)
}

/// `L(ρ) = ⟨0|ρ|0⟩ |0⟩⟨0| + ⟨1|ρ|1⟩ |1⟩⟨1|`, `M = |00⟩⟨00| + |11⟩⟨11|`.
pub fn fully_decohering_cj() -> ChannelCJ {
    let (i, o) = default_layouts(2).expect("qubit");
    ChannelCJ::from_matrix(ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 1.0]), i, o)
        .expect("valid channel")
}

/// The `A → B` channel of the swap-then-partial-swap circuit in
/// [`relay_dilation`].
pub fn relay_channel(theta: f64) -> ChannelCJ {
    relay_dilation(theta)
        .induced_channel()
        .expect("fixed circuit induces a channel")
}

/// Named single-qubit channels: `identity`, `decohering` and `relay(θ)`,
/// where `θ` uses the [`crate::expr`] grammar.
pub fn parse_named_channel(spec: &str) -> Result<ChannelCJ> {
    let s = spec.trim();
    match s.to_ascii_lowercase().as_str() {
        "identity" | "id" => return ChannelCJ::identity(1),
        "decohering" | "fully-decohering" | "fully_decohering" => return Ok(fully_decohering_cj()),
        _ => {}
    }
    let inner = s
        .strip_prefix("relay(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("unknown channel `{s}`")))?;
    Ok(relay_channel(crate::expr::parse_real(inner)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_unitary, seeded_rng};
    use crate::tensor::{sigma_x, sigma_y, sigma_z};
    use std::f64::consts::PI;

    #[test]
    fn named_channels() {
        assert_eq!(parse_named_channel(" identity ").unwrap(), ChannelCJ::identity(1).unwrap());
        assert_eq!(parse_named_channel("decohering").unwrap(), fully_decohering_cj());
        let r = parse_named_channel("relay(3pi/8)").unwrap();
        assert!(r.matrix().distance(relay_channel(3.0 * PI / 8.0).matrix()) < 1e-15);
        for bad in ["relay(", "relay()", "swap", "relay(1)x"] {
            assert!(parse_named_channel(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn identity_cj_is_swap() {
        let c = ChannelCJ::identity(1).unwrap();
        assert_eq!(c.matrix(), &swap_matrix());
        assert!((c.matrix().trace().re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sigma_x_cj_matches_four_term_sum() {
        let l = QubitLayout::qubits(&["A"]).unwrap();
        let u = UnitaryGate::new(sigma_x(), l).unwrap();
        let c = cj_from_unitary(&u).unwrap();
        let mut expect = ComplexMatrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                let img = sigma_x().conjugate(&ComplexMatrix::unit(2, j, i));
                expect = &expect + &kron(&ComplexMatrix::unit(2, i, j), &img);
            }
        }
        assert!(c.matrix().approx_eq(&expect, 0.0));
        assert!(c.choi_min_eigenvalue() > -1e-12);
    }

    #[test]
    fn unitary_choi_has_rank_one() {
        let mut rng = seeded_rng(3);
        let l = QubitLayout::qubits(&["A"]).unwrap();
        let u = UnitaryGate::new(random_unitary(&mut rng, 2), l).unwrap();
        let ev = eigenvalues_hermitian(&cj_from_unitary(&u).unwrap().choi()).unwrap();
        assert!(ev[..3].iter().all(|x| x.abs() < 1e-12));
        assert!((ev[3] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kraus_dephasing_equals_closed_form() {
        let ks = [
            ComplexMatrix::diagonal(&[1.0, 0.0]),
            ComplexMatrix::diagonal(&[0.0, 1.0]),
        ];
        assert_eq!(cj_from_kraus(&ks).unwrap(), fully_decohering_cj());
        let id = cj_from_kraus(&[ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(id, ChannelCJ::identity(1).unwrap());
    }

    #[test]
    fn depolarizing_choi_is_psd() {
        let p: f64 = 0.3;
        let ks = [
            ComplexMatrix::identity(2).scale_real((1.0 - 3.0 * p / 4.0).sqrt()),
            sigma_x().scale_real((p / 4.0).sqrt()),
            sigma_y().scale_real((p / 4.0).sqrt()),
            sigma_z().scale_real((p / 4.0).sqrt()),
        ];
        assert!(cj_from_kraus(&ks).unwrap().choi_min_eigenvalue() > -1e-12);
    }

    #[test]
    fn incomplete_kraus_reports_deficit() {
        let ks = [ComplexMatrix::diagonal(&[1.0, 0.0])];
        match cj_from_kraus(&ks) {
            Err(Error::IncompleteKraus { deficit }) => assert!((deficit - 1.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn application_examples() {
        let id = ChannelCJ::identity(1).unwrap();
        let mut rng = seeded_rng(9);
        let rho = DensityMatrix::qubit(random_density(&mut rng, 2), "A").unwrap();
        assert!(id.apply(&rho).unwrap().matrix().approx_eq(rho.matrix(), 1e-15));

        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let l = fully_decohering_cj();
        assert!(l.apply(&DensityMatrix::plus("A")).unwrap().matrix().approx_eq(&half, 1e-15));
        let zero = DensityMatrix::zero("A");
        assert!(l.apply(&zero).unwrap().matrix().approx_eq(zero.matrix(), 1e-15));
        for lambda in [0.0, 0.3, 0.7, 1.0] {
            let r = DensityMatrix::polarized_plus(lambda, "A").unwrap();
            assert!(l.apply(&r).unwrap().matrix().approx_eq(&half, 1e-15));
        }
    }

    #[test]
    fn relay_endpoints() {
        let c = relay_channel(PI / 2.0);
        assert!(c.matrix().approx_eq(&swap_matrix(), 1e-14));
        let c0 = relay_channel(0.0);
        let expect = kron(&ComplexMatrix::identity(2), &ComplexMatrix::diagonal(&[1.0, 0.0]));
        assert!(c0.matrix().approx_eq(&expect, 1e-14));
        assert_eq!(c0.in_layout().labels(), ["A"]);
        assert_eq!(c0.out_layout().labels(), ["B"]);
    }

    #[test]
    fn constant_channel_replaces_input() {
        let sigma = DensityMatrix::zero("B");
        let c = ChannelCJ::constant(&sigma, QubitLayout::qubits(&["A"]).unwrap()).unwrap();
        assert!(c.matrix().approx_eq(relay_channel(0.0).matrix(), 1e-14));
        let out = c.apply(&DensityMatrix::plus("A")).unwrap();
        assert!(out.matrix().approx_eq(sigma.matrix(), 1e-15));
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let (i, o) = default_layouts(2).unwrap();
        let m = ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(ChannelCJ::from_matrix(m, i, o), Err(Error::InvalidChannel(_))));
    }

    #[test]
    fn json_roundtrip() {
        let c = relay_channel(0.4);
        let back = ChannelCJ::from_json_str(&c.to_json_string()).unwrap();
        assert_eq!(back, c);
        let bare = r#"{"in_dim":2,"out_dim":2,"dim":4,
            "re":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,1]]}"#;
        assert_eq!(ChannelCJ::from_json_str(bare).unwrap(), fully_decohering_cj());
        let wrong = r#"{"in_dim":2,"out_dim":4,"dim":4,"re":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,1]]}"#;
        assert!(ChannelCJ::from_json_str(wrong).is_err());
    }
}
