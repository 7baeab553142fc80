// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-time pseudo-density matrices.
//!
//! A PDM lives on `t1 ⊗ t2`: all time-1 sites first, then all time-2 sites.
//! It is Hermitian with unit trace but may have negative eigenvalues.
//!
//! Three routes produce the same matrix:
//! - [`pdm_from_correlators`] expands a full correlator table in the Pauli
//!   basis, `R = 4^{-n} Σ T(a, b) σ_a ⊗ σ_b`;
//! - [`pdm_closed_form`] evaluates `½{ρ₁ ⊗ 𝟙, M}` directly;
//! - [`correlator_oracle`] simulates the two coarse-grained measurements
//!   with collapse and feeds the first route.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{default_time_labels, ChannelCJ, DensityMatrix};
use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::tensor::{
    eigenvalues_hermitian, partial_trace, pauli_matrix, permute_sites, ComplexMatrix,
    PauliLetter, PauliString, QubitLayout, HERMITIAN_TOL,
};

/// Largest number of qubits per time slice for correlator tables.
pub const MAX_TABLE_QUBITS: usize = 3;

/// Correlators may overshoot `[-1, 1]` by this much.
pub const CORRELATOR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeSlice {
    T1,
    T2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pdm {
    mat: ComplexMatrix,
    layout: QubitLayout,
    t1_len: usize,
}

impl Pdm {
    /// Sites `0..t1_len` of `layout` are time 1, the rest time 2.
    pub fn new(mat: ComplexMatrix, layout: QubitLayout, t1_len: usize) -> Result<Self> {
        if t1_len == 0 || t1_len >= layout.len() {
            return Err(Error::InvalidPdm("both time blocks must be nonempty".into()));
        }
        if mat.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: mat.dim(),
            });
        }
        let violation = mat.hermiticity_violation();
        if violation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { violation });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidPdm(format!("trace is {tr}, expected 1")));
        }
        Ok(Self {
            mat: mat.hermitian_part(),
            layout,
            t1_len,
        })
    }

    /// Qubit PDM with `n` sites per time and the default labels.
    pub fn with_default_layout(mat: ComplexMatrix, n: usize) -> Result<Self> {
        let (a, b) = default_time_labels(n);
        let layout = QubitLayout::qubits(&a)?.concat(&QubitLayout::qubits(&b)?)?;
        Self::new(mat, layout, n)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn t1_labels(&self) -> &[String] {
        &self.layout.labels()[..self.t1_len]
    }

    pub fn t2_labels(&self) -> &[String] {
        &self.layout.labels()[self.t1_len..]
    }

    pub fn t1_layout(&self) -> QubitLayout {
        self.layout.sub_layout(self.t1_labels()).expect("own labels")
    }

    pub fn t2_layout(&self) -> QubitLayout {
        self.layout.sub_layout(self.t2_labels()).expect("own labels")
    }

    pub fn t1_dim(&self) -> usize {
        self.t1_layout().dim()
    }

    pub fn t2_dim(&self) -> usize {
        self.t2_layout().dim()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigenvalues_hermitian(&self.mat).expect("PDM is Hermitian")
    }

    /// Reduced matrix of one time slice, without the positivity check.
    pub fn marginal_matrix(&self, which: TimeSlice) -> ComplexMatrix {
        let keep = match which {
            TimeSlice::T1 => self.t1_labels(),
            TimeSlice::T2 => self.t2_labels(),
        };
        partial_trace(&self.mat, &self.layout, keep).expect("own labels")
    }

    pub fn marginal(&self, which: TimeSlice) -> Result<DensityMatrix> {
        let layout = match which {
            TimeSlice::T1 => self.t1_layout(),
            TimeSlice::T2 => self.t2_layout(),
        };
        DensityMatrix::new(self.marginal_matrix(which), layout)
    }

    pub fn to_json(&self) -> PdmJson {
        PdmJson {
            t1: self.t1_labels().to_vec(),
            t2: self.t2_labels().to_vec(),
            matrix: MatrixJson::from_matrix(&self.mat),
        }
    }

    pub fn from_json(j: &PdmJson) -> Result<Self> {
        let mat = j.matrix.to_matrix()?;
        let labels: Vec<&String> = j.t1.iter().chain(&j.t2).collect();
        let layout = QubitLayout::qubits(&labels)?;
        Self::new(mat, layout, j.t1.len())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("finite matrix serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

/// Serialized PDM: the matrix format plus the qubit labels of each time slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdmJson {
    pub t1: Vec<String>,
    pub t2: Vec<String>,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

/// Dense table of `⟨σ_a, σ_b⟩` indexed by Pauli string order.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorTable {
    n: usize,
    values: Vec<f64>,
}

impl CorrelatorTable {
    /// `values[a * 4^n + b]` holds `⟨σ_a, σ_b⟩`.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_QUBITS {
            return Err(Error::InvalidTable(format!(
                "qubits per time must be in 1..={MAX_TABLE_QUBITS}, got {n}"
            )));
        }
        let side = 4usize.pow(n as u32);
        if values.len() != side * side {
            return Err(Error::IncompleteTable {
                missing: (side * side).saturating_sub(values.len()),
            });
        }
        if let Some(v) = values
            .iter()
            .find(|v| !v.is_finite() || v.abs() > 1.0 + CORRELATOR_SLACK)
        {
            return Err(Error::InvalidTable(format!("correlator {v} outside [-1, 1]")));
        }
        if (values[0] - 1.0).abs() > HERMITIAN_TOL {
            return Err(Error::InvalidTable(format!(
                "identity correlator is {}, expected 1",
                values[0]
            )));
        }
        Ok(Self { n, values })
    }

    /// Evaluates `f(σ_a, σ_b)` on all `16^n` pairs in parallel.
    pub fn from_fn<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(&PauliString, &PauliString) -> Result<f64> + Sync,
    {
        if n == 0 || n > MAX_TABLE_QUBITS {
            return Err(Error::InvalidTable(format!(
                "qubits per time must be in 1..={MAX_TABLE_QUBITS}, got {n}"
            )));
        }
        let side = 4usize.pow(n as u32);
        let values = (0..side * side)
            .into_par_iter()
            .map(|k| {
                let a = PauliString::from_index(n, k / side);
                let b = PauliString::from_index(n, k % side);
                f(&a, &b)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, values)
    }

    /// Table of the coarse-grained measurement oracle.
    pub fn from_oracle(rho1: &DensityMatrix, channel: &ChannelCJ) -> Result<Self> {
        let n = qubits_of(rho1.dim())?;
        Self::from_fn(n, |a, b| correlator_oracle(rho1, channel, a, b))
    }

    /// Pauli coefficients `Tr[R (σ_a ⊗ σ_b)]` of a qubit PDM with equal blocks.
    pub fn from_pdm(r: &Pdm) -> Result<Self> {
        let n = qubits_of(r.t1_dim())?;
        if r.t2_dim() != r.t1_dim() {
            return Err(Error::InvalidTable("time blocks differ in size".into()));
        }
        Self::from_fn(n, |a, b| {
            let p = pauli_matrix(&a.concat(b));
            Ok(r.matrix().inner(&p).re)
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        4usize.pow(self.n as u32)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, a: &PauliString, b: &PauliString) -> f64 {
        self.values[a.index() * self.side() + b.index()]
    }

    /// Replaces every entry but `(𝟙, 𝟙)` by `f(index, value)`.
    pub fn map_values(&self, f: impl Fn(usize, f64) -> f64 + Sync) -> Result<Self> {
        let values = self
            .values
            .par_iter()
            .enumerate()
            .map(|(k, &v)| if k == 0 { v } else { f(k, v) })
            .collect();
        Self::new(self.n, values)
    }

    /// Table with the time slices exchanged, `T'(a, b) = T(b, a)`.
    pub fn transposed(&self) -> Self {
        let side = self.side();
        let values = (0..side * side)
            .map(|k| self.values[(k % side) * side + k / side])
            .collect();
        Self { n: self.n, values }
    }

    pub fn to_records(&self) -> Vec<CorrelatorRecord> {
        let side = self.side();
        (0..side * side)
            .map(|k| CorrelatorRecord {
                p1: PauliString::from_index(self.n, k / side).to_string(),
                p2: PauliString::from_index(self.n, k % side).to_string(),
                value: self.values[k],
            })
            .collect()
    }

    /// Records may come in any order; each pair must appear exactly once.
    pub fn from_records(records: &[CorrelatorRecord]) -> Result<Self> {
        let first = records
            .first()
            .ok_or(Error::IncompleteTable { missing: 1 })?;
        let n = first.p1.trim().len();
        if n == 0 || n > MAX_TABLE_QUBITS {
            return Err(Error::InvalidTable(format!(
                "qubits per time must be in 1..={MAX_TABLE_QUBITS}, got {n}"
            )));
        }
        let side = 4usize.pow(n as u32);
        let mut slots: Vec<Option<f64>> = vec![None; side * side];
        for r in records {
            let a: PauliString = r.p1.parse()?;
            let b: PauliString = r.p2.parse()?;
            if a.len() != n || b.len() != n {
                return Err(Error::InvalidTable(format!(
                    "record ({}, {}) does not act on {n} qubits",
                    r.p1, r.p2
                )));
            }
            let slot = &mut slots[a.index() * side + b.index()];
            if slot.is_some() {
                return Err(Error::InvalidTable(format!("duplicate record ({a}, {b})")));
            }
            *slot = Some(r.value);
        }
        let missing = slots.iter().filter(|s| s.is_none()).count();
        if missing > 0 {
            return Err(Error::IncompleteTable { missing });
        }
        Self::new(n, slots.into_iter().map(|s| s.expect("checked")).collect())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_records()).expect("finite values serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_records(&serde_json::from_str::<Vec<CorrelatorRecord>>(s)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorRecord {
    pub p1: String,
    pub p2: String,
    pub value: f64,
}

fn qubits_of(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: dim.next_power_of_two().max(2),
            found: dim,
        });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Projectors onto the `±1` eigenspaces of a Pauli string, `(𝟙 ± P)/2`.
fn coarse_projectors(p: &PauliString) -> (ComplexMatrix, ComplexMatrix) {
    let m = pauli_matrix(p);
    let id = ComplexMatrix::identity(m.dim());
    ((&id + &m).scale_real(0.5), (&id - &m).scale_real(0.5))
}

/// `Σ_{a,b = ±1} a·b·p(a, b)` for a coarse-grained measurement of `p1` on
/// `rho1`, collapse, evolution through `channel`, then a coarse-grained
/// measurement of `p2`. An identity letter measures nothing on its qubit; the
/// all-identity string has a single certain outcome `+1`.
pub fn correlator_oracle(
    rho1: &DensityMatrix,
    channel: &ChannelCJ,
    p1: &PauliString,
    p2: &PauliString,
) -> Result<f64> {
    let din = channel.in_dim();
    let dout = channel.out_dim();
    if rho1.dim() != din {
        return Err(Error::DimensionMismatch {
            expected: din,
            found: rho1.dim(),
        });
    }
    if 1usize << p1.len() != din || 1usize << p2.len() != dout {
        return Err(Error::InvalidArgument(format!(
            "Pauli strings {p1} and {p2} do not match channel dims {din} → {dout}"
        )));
    }
    let (plus1, minus1) = coarse_projectors(p1);
    let (plus2, minus2) = coarse_projectors(p2);
    let mut acc = 0.0;
    for (a, pa) in [(1.0, &plus1), (-1.0, &minus1)] {
        let collapsed = pa.conjugate(rho1.matrix());
        if collapsed.trace().re.abs() < 1e-300 {
            continue;
        }
        let evolved = channel.apply_raw(&collapsed)?;
        for (b, pb) in [(1.0, &plus2), (-1.0, &minus2)] {
            acc += a * b * (pb * &evolved).trace().re;
        }
    }
    Ok(acc)
}

/// `R = 4^{-n} Σ_{a,b} T(a, b) σ_a ⊗ σ_b` over the default layout.
pub fn pdm_from_correlators(t: &CorrelatorTable) -> Result<Pdm> {
    let n = t.qubits();
    let dim = 1usize << (2 * n);
    let side = t.side();
    let strings: Vec<PauliString> = PauliString::all(n).collect();
    let partials: Vec<ComplexMatrix> = strings
        .par_iter()
        .map(|a| {
            let mut acc = ComplexMatrix::zeros(dim);
            for b in &strings {
                let v = t.values()[a.index() * side + b.index()];
                if v != 0.0 {
                    accumulate_pauli(&mut acc, &a.concat(b), v);
                }
            }
            acc
        })
        .collect();
    let sum = partials
        .iter()
        .fold(ComplexMatrix::zeros(dim), |acc, m| &acc + m);
    Pdm::with_default_layout(sum.scale_real(1.0 / dim as f64), n)
}

/// Adds `w · P` to `acc` using the one-nonzero-per-row structure of Pauli strings.
fn accumulate_pauli(acc: &mut ComplexMatrix, p: &PauliString, w: f64) {
    let dim = acc.dim();
    let mut flip = 0usize;
    let mut phase_bits: Vec<(usize, PauliLetter)> = Vec::new();
    let n = p.len();
    for (k, &l) in p.letters().iter().enumerate() {
        let bit = n - 1 - k;
        match l {
            PauliLetter::I => {}
            PauliLetter::X => flip |= 1 << bit,
            PauliLetter::Y | PauliLetter::Z => {
                if l == PauliLetter::Y {
                    flip |= 1 << bit;
                }
                phase_bits.push((bit, l));
            }
        }
    }
    for row in 0..dim {
        let col = row ^ flip;
        // Per qubit with row bit r: Z gives (−1)^r, Y gives −i for r = 0 and i for r = 1.
        let mut z = C64::new(w, 0.0);
        for &(bit, l) in &phase_bits {
            match l {
                PauliLetter::Z => {
                    if (row >> bit) & 1 == 1 {
                        z = -z;
                    }
                }
                _ => {
                    z *= if (row >> bit) & 1 == 1 {
                        C64::new(0.0, 1.0)
                    } else {
                        C64::new(0.0, -1.0)
                    };
                }
            }
        }
        acc[(row, col)] += z;
    }
}

/// `R = ½{ρ₁ ⊗ 𝟙, M}`, laid out as the channel's `in ⊗ out`.
pub fn pdm_closed_form(rho1: &DensityMatrix, m: &ChannelCJ) -> Result<Pdm> {
    if rho1.dim() != m.in_dim() {
        return Err(Error::DimensionMismatch {
            expected: m.in_dim(),
            found: rho1.dim(),
        });
    }
    let rho = crate::tensor::kron(rho1.matrix(), &ComplexMatrix::identity(m.out_dim()));
    let r = ComplexMatrix::anticommutator(&rho, m.matrix()).scale_real(0.5);
    Pdm::new(r, m.layout(), m.in_layout().len())
}

/// `f(O) = Tr|O| − Tr O = Σ (|λ_k| − λ_k)`, twice the magnitude of the
/// negative spectrum.
pub fn negativity(m: &ComplexMatrix) -> Result<f64> {
    let ev = eigenvalues_hermitian(m)?;
    Ok(ev.iter().map(|l| l.abs() - l).sum())
}

/// `S R S†` with `S` exchanging the two time blocks. Site labels move with
/// their factors, so the former time-2 sites become the new time 1.
pub fn time_reverse(r: &Pdm) -> Pdm {
    let order: Vec<&String> = r.t2_labels().iter().chain(r.t1_labels()).collect();
    let (mat, layout) = permute_sites(&r.mat, &r.layout, &order).expect("own labels");
    Pdm {
        mat,
        layout,
        t1_len: r.layout.len() - r.t1_len,
    }
}

/// Traces out every site not in `keep`; each time block must keep a site.
pub fn reduce_pdm<S: AsRef<str>>(r: &Pdm, keep: &[S]) -> Result<Pdm> {
    for s in keep {
        r.layout.position(s.as_ref())?;
    }
    let holds = |block: &[String]| block.iter().any(|l| keep.iter().any(|k| k.as_ref() == l));
    if !holds(r.t1_labels()) || !holds(r.t2_labels()) {
        return Err(Error::InvalidArgument(
            "reduction must keep at least one site in each time block".into(),
        ));
    }
    let kept: Vec<String> = r
        .layout
        .labels()
        .iter()
        .filter(|l| keep.iter().any(|k| k.as_ref() == *l))
        .cloned()
        .collect();
    let t1_len = kept.iter().filter(|l| r.t1_labels().contains(l)).count();
    let mat = partial_trace(&r.mat, &r.layout, &kept)?;
    Pdm::new(mat, r.layout.sub_layout(&kept)?, t1_len)
}
