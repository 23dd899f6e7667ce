//! Exact counts of atoms `A_τ` for a given `k`, i.e. of gluing substitutions
//! on `{1..k}`.
//!
//! Two independent routes are provided: the three-term recurrence obtained by
//! deciding the fate of point 1, and the closed summation over the `P` table.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("{chords} chords need {} matched points but k = {k}", 2 * chords)]
    TooManyChords { k: usize, chords: usize },
}

/// `N_k = N_{k-1} + (k-1) N_{k-2}` with `N_1 = 1`, `N_2 = 2`.
pub fn count_atoms_recurrence(k: usize) -> Result<BigUint, CountingError> {
    if k == 0 {
        return Err(CountingError::ZeroK);
    }
    // (N_{m-1}, N_m), starting from the empty set N_0 = 1.
    let mut prev = BigUint::one();
    let mut cur = BigUint::one();
    for m in 2..=k {
        let next = &cur + &prev * (m - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Table `P_0 .. P_{k-2}` for a fixed `k`:
/// `P_0 = 1`, `P_1 = k - 1`, `P_2 = k - 2`, and
/// `P_j = (P_0 + ... + P_{j-2}) (k - j)` for `j >= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTable {
    k: usize,
    values: Vec<BigUint>,
}

impl PTable {
    /// Needs `k >= 2` so that the table is non-empty.
    pub fn new(k: usize) -> Option<Self> {
        if k < 2 {
            return None;
        }
        let len = k - 1;
        let mut values: Vec<BigUint> = Vec::with_capacity(len);
        // running sum P_0 + ... + P_{j-2}
        let mut lagged = BigUint::zero();
        for j in 0..len {
            let value = match j {
                0 => BigUint::one(),
                1 => BigUint::from(k - 1),
                2 => BigUint::from(k - 2),
                _ => &lagged * (k - j),
            };
            if j >= 1 {
                lagged += &values[j - 1];
            }
            values.push(value);
        }
        Some(PTable { k, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, j: usize) -> Option<&BigUint> {
        self.values.get(j)
    }
}

/// `N_k = 2 (P_0 + ... + P_{k-3}) + P_{k-2}`, with `N_1 = 1` and `N_2 = 2`.
///
/// The sum starts at `j = 0`; starting at `j = 1` undercounts (24 instead of
/// 26 at `k = 5`).
pub fn count_atoms_pformula(k: usize) -> Result<BigUint, CountingError> {
    match k {
        0 => Err(CountingError::ZeroK),
        1 => Ok(BigUint::one()),
        2 => Ok(BigUint::from(2u32)),
        _ => {
            let table = PTable::new(k).expect("k >= 3");
            let values = table.values();
            let head: BigUint = values[..k - 2].iter().sum();
            Ok(head * 2u32 + &values[k - 2])
        }
    }
}

/// Free matched points (including `Q_0`) of a diagram with `n_chords` chords.
pub fn free_point_count(k: usize, n_chords: usize) -> Result<usize, CountingError> {
    if k == 0 {
        return Err(CountingError::ZeroK);
    }
    if 2 * n_chords > k {
        return Err(CountingError::TooManyChords {
            k,
            chords: n_chords,
        });
    }
    Ok(k - 2 * n_chords + 1)
}
