// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Finite-shot sampling of correlator tables.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::pdm::CorrelatorTable;

/// Replaces each correlator `c` by the mean of `shots` draws of `±1` with
/// mean `c`. Entries are drawn in table order from one seeded stream; the
/// `(𝟙, 𝟙)` entry stays exactly 1.
pub fn sample_correlators(table: &CorrelatorTable, shots: u64, seed: u64) -> Result<CorrelatorTable> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = table.values().to_vec();
    for v in values.iter_mut().skip(1) {
        let p = ((1.0 + *v) / 2.0).clamp(0.0, 1.0);
        let ups = Binomial::new(shots, p)
            .map_err(|e| Error::InvalidArgument(format!("bad binomial: {e}")))?
            .sample(&mut rng);
        *v = (2.0 * ups as f64 - shots as f64) / shots as f64;
    }
    CorrelatorTable::new(table.qubits(), values)
}

/// Seed for one sweep point, so results do not depend on grid order.
pub fn point_seed(seed: u64, param: f64) -> u64 {
    // splitmix64 finalizer over the combined bits.
    let mut z = seed ^ param.to_bits().rotate_left(17) ^ 0x9E37_79B9_7F4A_7C15;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{relay_channel, DensityMatrix};

    fn table() -> CorrelatorTable {
        let rho = DensityMatrix::polarized_plus(0.7, "A").unwrap();
        CorrelatorTable::from_oracle(&rho, &relay_channel(1.0)).unwrap()
    }

    #[test]
    fn deterministic_and_identity_exact() {
        let t = table();
        let a = sample_correlators(&t, 1000, 42).unwrap();
        let b = sample_correlators(&t, 1000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values()[0], 1.0);
        assert_ne!(a, sample_correlators(&t, 1000, 43).unwrap());
    }

    #[test]
    fn certain_correlators_stay_certain() {
        let mut v = vec![0.0; 16];
        v[0] = 1.0;
        v[5] = 1.0;
        v[10] = -1.0;
        let t = CorrelatorTable::new(1, v).unwrap();
        let s = sample_correlators(&t, 7, 1).unwrap();
        assert_eq!(s.values()[5], 1.0);
        assert_eq!(s.values()[10], -1.0);
    }

    #[test]
    fn concentrates_at_large_shot_counts() {
        let t = table();
        let shots = 1_000_000u64;
        let s = sample_correlators(&t, shots, 7).unwrap();
        let bound = 5.0 / (shots as f64).sqrt();
        let within = s
            .values()
            .iter()
            .zip(t.values())
            .filter(|(a, b)| (*a - *b).abs() < bound)
            .count();
        assert!(within as f64 >= 0.99 * t.values().len() as f64);
    }

    #[test]
    fn point_seeds_differ() {
        assert_ne!(point_seed(1, 0.1), point_seed(1, 0.2));
        assert_ne!(point_seed(1, 0.1), point_seed(2, 0.1));
        assert_eq!(point_seed(1, 0.1), point_seed(1, 0.1));
    }
}
