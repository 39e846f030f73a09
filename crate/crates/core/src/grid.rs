//! Finite grids of lotteries.
//!
//! The grid of bound `d` holds every lottery whose weights share a common
//! denominator `k ≤ d`. Each lottery is listed once, at its smallest such
//! `k`; within one denominator, numerator tuples come in descending
//! lexicographic order, so the vertices appear as `δx₀, δx₁, …`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lottery::Lottery;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub denominator_bound: u32,
    /// Number of outcomes `n + 1`.
    pub outcomes: usize,
}

impl GridSpec {
    pub fn new(denominator_bound: u32, outcomes: usize) -> Result<Self> {
        if denominator_bound == 0 {
            return Err(Error::PreconditionViolated(
                "grid denominator bound must be positive".into(),
            ));
        }
        if outcomes < 2 {
            return Err(Error::InvalidOutcomeSpace(format!(
                "need at least 2 outcomes, found {outcomes}"
            )));
        }
        Ok(GridSpec {
            denominator_bound,
            outcomes,
        })
    }

    /// All grid lotteries in enumeration order.
    pub fn lotteries(&self) -> Vec<Lottery> {
        (1..=self.denominator_bound)
            .flat_map(|k| exact_denominator(self.outcomes, k))
            .collect()
    }
}

/// Every numerator tuple of `outcomes` nonnegative integers summing to
/// `total`, in descending lexicographic order.
pub fn compositions(outcomes: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(slots: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(slots - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(outcomes, total, &mut Vec::with_capacity(outcomes), &mut out);
    out
}

/// All lotteries with weights in `(1/k)·Z`, including coarser ones.
pub fn lattice(outcomes: usize, k: u32) -> Vec<Lottery> {
    compositions(outcomes, k)
        .into_iter()
        .map(|nums| to_lottery(&nums, k))
        .collect()
}

/// Lotteries whose lowest common denominator is exactly `k`.
pub fn exact_denominator(outcomes: usize, k: u32) -> Vec<Lottery> {
    compositions(outcomes, k)
        .into_iter()
        .filter(|nums| nums.iter().fold(k, |g, &x| g.gcd(&x)) == 1)
        .map(|nums| to_lottery(&nums, k))
        .collect()
}

fn to_lottery(nums: &[u32], k: u32) -> Lottery {
    Lottery::new_unchecked(
        nums.iter()
            .map(|&x| Rational::new(x.into(), k.into()))
            .collect(),
    )
}

/// Dyadic weights `j / 2^e` in `(0, 1)` with `2^e ≤ bound`, ordered by
/// denominator and then numerator.
pub fn dyadic_weights(bound: u32) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut denom: u64 = 2;
    while denom <= u64::from(bound) {
        for j in (1..denom).step_by(2) {
            out.push(Rational::new(j as i64, denom as i64));
        }
        denom *= 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lottery::lottery;
    use crate::rational::q;

    #[test]
    fn first_levels_in_order() {
        let grid = GridSpec::new(2, 3).unwrap().lotteries();
        assert_eq!(
            grid,
            vec![
                Lottery::vertex(3, 0),
                Lottery::vertex(3, 1),
                Lottery::vertex(3, 2),
                lottery(&[(1, 2), (1, 2), (0, 1)]),
                lottery(&[(1, 2), (0, 1), (1, 2)]),
                lottery(&[(0, 1), (1, 2), (1, 2)]),
            ]
        );
    }

    #[test]
    fn grid_sizes() {
        // Lotteries on three outcomes with lowest denominator exactly k.
        let exact: Vec<usize> = (1..=6).map(|k| exact_denominator(3, k).len()).collect();
        assert_eq!(exact, vec![3, 3, 7, 9, 18, 15]);
        assert_eq!(lattice(3, 12).len(), 91);
        let grid = GridSpec::new(12, 3).unwrap().lotteries();
        let mut dedup = grid.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), grid.len());
    }

    #[test]
    fn dyadics() {
        assert_eq!(dyadic_weights(1), vec![]);
        assert_eq!(dyadic_weights(6), vec![q(1, 2), q(1, 4), q(3, 4)]);
        assert_eq!(dyadic_weights(8).len(), 7);
    }

    #[test]
    fn rejects_degenerate_specs() {
        assert!(GridSpec::new(0, 3).is_err());
        assert!(GridSpec::new(3, 1).is_err());
    }
}
