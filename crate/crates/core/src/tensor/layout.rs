// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Named tensor-factor layouts and the index bookkeeping built on them:
//! partial trace, partial transpose, and factor permutation.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Ordered list of named tensor factors. Factor 0 is the most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitLayout {
    factors: Vec<usize>,
    labels: Vec<String>,
}

impl QubitLayout {
    pub fn new(factors: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidLayout("layout needs at least one factor".into()));
        }
        if factors.len() != labels.len() {
            return Err(Error::InvalidLayout(format!(
                "{} factor dimensions but {} labels",
                factors.len(),
                labels.len()
            )));
        }
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidLayout("factor dimensions must be at least 2".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::InvalidLayout("empty site label".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidLayout(format!("duplicate site label `{l}`")));
            }
        }
        let total = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&t| t <= super::matrix::MAX_DIM);
        if total.is_none() {
            return Err(Error::InvalidLayout(format!(
                "total dimension exceeds {}",
                super::matrix::MAX_DIM
            )));
        }
        Ok(Self { factors, labels })
    }

    /// All-qubit layout with the given site names.
    pub fn qubits<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(
            vec![2; labels.len()],
            labels.iter().map(|s| s.as_ref().to_string()).collect(),
        )
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownSite(label.to_string()))
    }

    fn positions<S: AsRef<str>>(&self, sites: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(sites.len());
        for s in sites {
            let p = self.position(s.as_ref())?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Layout restricted to `positions`, in layout order.
    fn restrict(&self, positions: &[usize]) -> Self {
        let mut ps = positions.to_vec();
        ps.sort_unstable();
        Self {
            factors: ps.iter().map(|&p| self.factors[p]).collect(),
            labels: ps.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }

    /// Sub-layout holding only the named sites, kept in layout order.
    pub fn sub_layout<S: AsRef<str>>(&self, sites: &[S]) -> Result<Self> {
        let ps = self.positions(sites)?;
        if ps.is_empty() {
            return Err(Error::InvalidLayout("sub-layout needs at least one site".into()));
        }
        Ok(self.restrict(&ps))
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Self::new(factors, labels)
    }

    /// Row-major strides of each factor.
    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for k in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.factors[k + 1];
        }
        strides
    }

    /// Offsets of every multi-index over the factors at `positions`
    /// (enumerated with the first listed position most significant).
    fn offsets(&self, positions: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut offsets = vec![0usize];
        for &p in positions {
            let mut next = Vec::with_capacity(offsets.len() * self.factors[p]);
            for &o in &offsets {
                for d in 0..self.factors[p] {
                    next.push(o + d * strides[p]);
                }
            }
            offsets = next;
        }
        offsets
    }

    fn check_dim(&self, m: &ComplexMatrix) -> Result<()> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        Ok(())
    }
}

/// Traces out every site not in `keep`. The result is laid out in the
/// original factor order of the kept sites.
pub fn partial_trace<S: AsRef<str>>(
    m: &ComplexMatrix,
    layout: &QubitLayout,
    keep: &[S],
) -> Result<ComplexMatrix> {
    layout.check_dim(m)?;
    let mut kept = layout.positions(keep)?;
    if kept.is_empty() {
        return Err(Error::InvalidArgument("partial trace must keep at least one site".into()));
    }
    kept.sort_unstable();
    let traced: Vec<usize> = (0..layout.len()).filter(|p| !kept.contains(p)).collect();
    let kept_off = layout.offsets(&kept);
    let traced_off = layout.offsets(&traced);
    let kd = kept_off.len();
    let mut out = ComplexMatrix::zeros(kd);
    for (r, &ro) in kept_off.iter().enumerate() {
        for (c, &co) in kept_off.iter().enumerate() {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for &t in &traced_off {
                acc += m[(ro + t, co + t)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Transposes the tensor factors named in `sites`, leaving the rest alone.
pub fn partial_transpose<S: AsRef<str>>(
    m: &ComplexMatrix,
    layout: &QubitLayout,
    sites: &[S],
) -> Result<ComplexMatrix> {
    layout.check_dim(m)?;
    let ps = layout.positions(sites)?;
    if ps.is_empty() {
        return Ok(m.clone());
    }
    let strides = layout.strides();
    let n = m.dim();
    // Component of each flat index carried by the transposed factors.
    let selected: Vec<usize> = (0..n)
        .map(|x| {
            ps.iter()
                .map(|&p| (x / strides[p]) % layout.factors[p] * strides[p])
                .sum()
        })
        .collect();
    let mut out = ComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let nr = r - selected[r] + selected[c];
            let nc = c - selected[c] + selected[r];
            out[(nr, nc)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Reorders tensor factors so that the result is laid out as `order`
/// (a permutation of the layout's labels). Returns the matrix and its layout.
pub fn permute_sites<S: AsRef<str>>(
    m: &ComplexMatrix,
    layout: &QubitLayout,
    order: &[S],
) -> Result<(ComplexMatrix, QubitLayout)> {
    layout.check_dim(m)?;
    let ps = layout.positions(order)?;
    if ps.len() != layout.len() || order.len() != layout.len() {
        return Err(Error::InvalidArgument(
            "site order must be a permutation of the layout labels".into(),
        ));
    }
    // Enumerating old offsets over `ps` visits new flat indices in order.
    let map = layout.offsets(&ps);
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(map[i], map[j])];
        }
    }
    let new_layout = QubitLayout {
        factors: ps.iter().map(|&p| layout.factors[p]).collect(),
        labels: ps.iter().map(|&p| layout.labels[p].clone()).collect(),
    };
    Ok((out, new_layout))
}

/// Embeds an operator acting on `targets` (in the listed order) into the
/// full layout, acting as the identity on every other site.
pub fn embed_operator<S: AsRef<str>>(
    op: &ComplexMatrix,
    layout: &QubitLayout,
    targets: &[S],
) -> Result<ComplexMatrix> {
    let ps = layout.positions(targets)?;
    if ps.len() != targets.len() {
        return Err(Error::InvalidArgument("repeated target site".into()));
    }
    let target_dim: usize = ps.iter().map(|&p| layout.factors[p]).product();
    if op.dim() != target_dim {
        return Err(Error::DimensionMismatch {
            expected: target_dim,
            found: op.dim(),
        });
    }
    let rest: Vec<usize> = (0..layout.len()).filter(|p| !ps.contains(p)).collect();
    let t_off = layout.offsets(&ps);
    let r_off = layout.offsets(&rest);
    let mut out = ComplexMatrix::zeros(layout.dim());
    for &ro in &r_off {
        for (a, &ao) in t_off.iter().enumerate() {
            for (b, &bo) in t_off.iter().enumerate() {
                out[(ro + ao, ro + bo)] = op[(a, b)];
            }
        }
    }
    Ok(out)
}
