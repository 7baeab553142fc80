// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Fixed gate registry and its textual grammar.
//!
//! ```text
//! gate := 'hadamard' '(' site ')'
//!       | 'cnot' '(' control ',' target ')'
//!       | 'swap' '(' site ',' site ')'
//!       | 'partial_swap' '(' expr ',' site ',' site ')'     e^{-iθ SWAP}
//!       | 'pauli' '(' letter ',' site ')'                     letter ∈ {I, X, Y, Z}
//! ```
//! `expr` follows [`crate::expr`]; sites are register labels.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use super::states::UnitaryGate;
use crate::error::{Error, Result};
use crate::expr::parse_real;
use crate::tensor::{embed_operator, ComplexMatrix, PauliLetter, QubitLayout};

pub fn hadamard_matrix() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]])
}

pub fn cnot_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

pub fn swap_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

/// `e^{-iθS} = cos θ 𝟙 − i sin θ S`, exact because `S² = 𝟙`.
pub fn partial_swap_matrix(theta: f64) -> ComplexMatrix {
    let id = ComplexMatrix::identity(4).scale_real(theta.cos());
    let s = swap_matrix().scale(C64::new(0.0, -theta.sin()));
    &id + &s
}

/// The partial swap as a two-qubit gate on sites `q0, q1`.
pub fn partial_swap(theta: f64) -> UnitaryGate {
    let layout = QubitLayout::qubits(&["q0", "q1"]).expect("valid layout");
    UnitaryGate::new(partial_swap_matrix(theta), layout).expect("partial swap is unitary")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Hadamard(String),
    Cnot { control: String, target: String },
    Swap(String, String),
    PartialSwap { theta: f64, a: String, b: String },
    Pauli { letter: PauliLetter, site: String },
}

impl Gate {
    pub fn sites(&self) -> Vec<&str> {
        match self {
            Gate::Hadamard(s) => vec![s],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Swap(a, b) => vec![a, b],
            Gate::PartialSwap { a, b, .. } => vec![a, b],
            Gate::Pauli { site, .. } => vec![site],
        }
    }

    fn local_matrix(&self) -> ComplexMatrix {
        match self {
            Gate::Hadamard(_) => hadamard_matrix(),
            Gate::Cnot { .. } => cnot_matrix(),
            Gate::Swap(..) => swap_matrix(),
            Gate::PartialSwap { theta, .. } => partial_swap_matrix(*theta),
            Gate::Pauli { letter, .. } => letter.matrix(),
        }
    }

    /// Full-register unitary acting as this gate on its sites.
    pub fn unitary(&self, register: &QubitLayout) -> Result<UnitaryGate> {
        let sites = self.sites();
        if sites.len() == 2 && sites[0] == sites[1] {
            return Err(Error::InvalidArgument(format!("gate `{self}` repeats a site")));
        }
        let full = embed_operator(&self.local_matrix(), register, &sites)?;
        UnitaryGate::new(full, register.clone())
    }
}

fn split_args(s: &str) -> Vec<&str> {
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(s[start..].trim());
    args
}

fn site_name(s: &str) -> Result<String> {
    if s.is_empty() || !s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
        return Err(Error::Parse(format!("invalid site name `{s}`")));
    }
    Ok(s.to_string())
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("gate `{s}` missing `(`")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("gate `{s}` missing closing `)`")));
        }
        let name = s[..open].trim().to_ascii_lowercase();
        let args = split_args(&s[open + 1..s.len() - 1]);
        let arity = |n: usize| -> Result<()> {
            if args.len() != n {
                return Err(Error::Parse(format!(
                    "gate `{name}` takes {n} arguments, got {}",
                    args.len()
                )));
            }
            Ok(())
        };
        match name.as_str() {
            "hadamard" | "h" => {
                arity(1)?;
                Ok(Gate::Hadamard(site_name(args[0])?))
            }
            "cnot" | "cx" => {
                arity(2)?;
                Ok(Gate::Cnot {
                    control: site_name(args[0])?,
                    target: site_name(args[1])?,
                })
            }
            "swap" => {
                arity(2)?;
                Ok(Gate::Swap(site_name(args[0])?, site_name(args[1])?))
            }
            "partial_swap" => {
                arity(3)?;
                Ok(Gate::PartialSwap {
                    theta: parse_real(args[0])?,
                    a: site_name(args[1])?,
                    b: site_name(args[2])?,
                })
            }
            "pauli" => {
                arity(2)?;
                let mut chars = args[0].chars();
                let letter = match (chars.next().and_then(PauliLetter::from_char), chars.next()) {
                    (Some(l), None) => l,
                    _ => return Err(Error::Parse(format!("invalid Pauli letter `{}`", args[0]))),
                };
                Ok(Gate::Pauli {
                    letter,
                    site: site_name(args[1])?,
                })
            }
            other => Err(Error::Parse(format!("unknown gate `{other}`"))),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Hadamard(s) => write!(f, "hadamard({s})"),
            Gate::Cnot { control, target } => write!(f, "cnot({control},{target})"),
            Gate::Swap(a, b) => write!(f, "swap({a},{b})"),
            Gate::PartialSwap { theta, a, b } => write!(f, "partial_swap({theta:?},{a},{b})"),
            Gate::Pauli { letter, site } => write!(f, "pauli({},{site})", letter.as_char()),
        }
    }
}
