// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Pauli letters and strings.
//!
//! Strings are ordered like tensor factors: letter 0 acts on the most
//! significant qubit. The lexicographic index uses `I < X < Y < Z` in base 4
//! with letter 0 as the most significant digit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use super::matrix::{kron, ComplexMatrix};
use crate::error::{Error, Result};

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn sigma_y() -> ComplexMatrix {
    let z = C64::new(0.0, 0.0);
    ComplexMatrix::from_rows(&[&[z, C64::new(0.0, -1.0)], &[C64::new(0.0, 1.0), z]])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[1.0, -1.0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    pub fn matrix(self) -> ComplexMatrix {
        match self {
            PauliLetter::I => ComplexMatrix::identity(2),
            PauliLetter::X => sigma_x(),
            PauliLetter::Y => sigma_y(),
            PauliLetter::Z => sigma_z(),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' | '1' => Some(PauliLetter::I),
            'X' | 'x' => Some(PauliLetter::X),
            'Y' | 'y' => Some(PauliLetter::Y),
            'Z' | 'z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(letters: Vec<PauliLetter>) -> Self {
        Self { letters }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            letters: vec![PauliLetter::I; n],
        }
    }

    /// String with `letter` at `position` and identity elsewhere.
    pub fn single(n: usize, position: usize, letter: PauliLetter) -> Self {
        let mut s = Self::identity(n);
        s.letters[position] = letter;
        s
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&l| l == PauliLetter::I)
    }

    pub fn index(&self) -> usize {
        self.letters.iter().fold(0, |acc, l| acc * 4 + l.index())
    }

    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut letters = vec![PauliLetter::I; n];
        for slot in letters.iter_mut().rev() {
            *slot = PauliLetter::ALL[index % 4];
            index /= 4;
        }
        Self { letters }
    }

    /// All `4^n` strings in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..4usize.pow(n as u32)).map(move |i| Self::from_index(n, i))
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        pauli_matrix(self)
    }
}

/// Dense matrix of a Pauli string. The empty string is the 1×1 identity.
pub fn pauli_matrix(p: &PauliString) -> ComplexMatrix {
    p.letters
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, l| kron(&acc, &l.matrix()))
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        if s.len() > 16 {
            return Err(Error::Parse(format!("Pauli string `{s}` too long")));
        }
        s.chars()
            .map(|c| {
                PauliLetter::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("invalid Pauli letter `{c}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}
