//! Outcomes, lotteries and the simplex embedding.
//!
//! A lottery over `n + 1` outcomes `x₀ … xₙ` is embedded into `Qⁿ` by
//! dropping the weight on `x₀`; that weight is recovered as one minus the
//! sum of the remaining coordinates.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The labelled outcome set `x₀ … xₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct OutcomeSpace {
    labels: Vec<String>,
}

impl OutcomeSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::InvalidOutcomeSpace(format!(
                "need at least 2 outcomes, found {}",
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidOutcomeSpace(format!(
                    "duplicate label {label:?}"
                )));
            }
        }
        Ok(OutcomeSpace { labels })
    }

    /// Outcomes labelled `x0 … x{n}`.
    pub fn with_dimension(n: usize) -> Result<Self> {
        Self::new((0..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dimension of the embedded simplex, one less than the outcome count.
    pub fn n(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn outcome_count(&self) -> usize {
        self.labels.len()
    }
}

impl TryFrom<Vec<String>> for OutcomeSpace {
    type Error = Error;
    fn try_from(labels: Vec<String>) -> Result<Self> {
        OutcomeSpace::new(labels)
    }
}

impl From<OutcomeSpace> for Vec<String> {
    fn from(space: OutcomeSpace) -> Self {
        space.labels
    }
}

/// A probability vector over the outcomes, indexed `0 … n`.
///
/// Two lotteries belong to the same outcome space when they have the same
/// number of weights; labels are presentation only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Lottery {
    weights: Vec<Rational>,
}

impl Lottery {
    /// Validates nonnegativity and unit sum.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidOutcomeSpace(format!(
                "need at least 2 outcomes, found {}",
                weights.len()
            )));
        }
        if let Some((index, value)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::NegativeWeight {
                index,
                value: value.clone(),
            });
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::SumNotOne { sum });
        }
        Ok(Lottery { weights })
    }

    pub(crate) fn new_unchecked(weights: Vec<Rational>) -> Self {
        debug_assert!(Lottery::new(weights.clone()).is_ok());
        Lottery { weights }
    }

    /// The point mass on outcome `index`.
    pub fn vertex(outcomes: usize, index: usize) -> Self {
        assert!(index < outcomes && outcomes >= 2);
        let weights = (0..outcomes)
            .map(|i| {
                if i == index {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Lottery { weights }
    }

    /// Equal weight `1/(n+1)` on every outcome.
    pub fn uniform(outcomes: usize) -> Self {
        assert!(outcomes >= 2);
        let w = Rational::new(1, outcomes as i64);
        Lottery {
            weights: vec![w; outcomes],
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    pub fn outcome_count(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn into_weights(self) -> Vec<Rational> {
        self.weights
    }

    pub(crate) fn same_space(&self, other: &Lottery) -> Result<()> {
        if self.outcome_count() == other.outcome_count() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.outcome_count(),
                right: other.outcome_count(),
            })
        }
    }
}

impl TryFrom<Vec<Rational>> for Lottery {
    type Error = Error;
    fn try_from(weights: Vec<Rational>) -> Result<Self> {
        Lottery::new(weights)
    }
}

impl From<Lottery> for Vec<Rational> {
    fn from(lottery: Lottery) -> Self {
        lottery.weights
    }
}

impl fmt::Debug for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.weights)
    }
}

/// A point of `Qⁿ`; not restricted to the simplex.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EmbeddedPoint {
    coords: Vec<Rational>,
}

impl EmbeddedPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        EmbeddedPoint { coords }
    }

    pub fn zero(dim: usize) -> Self {
        EmbeddedPoint {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }

    pub fn sub(&self, other: &EmbeddedPoint) -> EmbeddedPoint {
        debug_assert_eq!(self.dim(), other.dim());
        EmbeddedPoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn dot(&self, other: &EmbeddedPoint) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl From<Vec<Rational>> for EmbeddedPoint {
    fn from(coords: Vec<Rational>) -> Self {
        EmbeddedPoint::new(coords)
    }
}

impl fmt::Debug for EmbeddedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EmbeddedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, values: &[Rational]) -> fmt::Result {
    f.write_str("(")?;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(")")
}

/// Validates `weights` as a lottery over `space`.
pub fn make_lottery(weights: Vec<Rational>, space: &OutcomeSpace) -> Result<Lottery> {
    if weights.len() != space.outcome_count() {
        return Err(Error::LengthMismatch {
            expected: space.outcome_count(),
            found: weights.len(),
        });
    }
    Lottery::new(weights)
}

/// The mixture `alpha·p + (1 − alpha)·q`.
pub fn mix(p: &Lottery, q: &Lottery, alpha: &Rational) -> Result<Lottery> {
    if alpha.is_negative() || alpha > &Rational::one() {
        return Err(Error::AlphaOutOfRange(alpha.clone()));
    }
    p.same_space(q)?;
    Ok(mix_unchecked(p, q, alpha))
}

pub(crate) fn mix_unchecked(p: &Lottery, q: &Lottery, alpha: &Rational) -> Lottery {
    let beta = Rational::one() - alpha;
    let weights = p
        .weights
        .iter()
        .zip(&q.weights)
        .map(|(a, b)| alpha * a + &beta * b)
        .collect();
    Lottery { weights }
}

/// Drops the weight on `x₀`.
pub fn embed(p: &Lottery) -> EmbeddedPoint {
    EmbeddedPoint::new(p.weights[1..].to_vec())
}

/// Restores the weight on `x₀` as `1 − Σ coords`.
pub fn unembed(v: &EmbeddedPoint) -> Result<Lottery> {
    if v.dim() == 0 {
        return Err(Error::EmptyInput);
    }
    if let Some(c) = v.coords.iter().find(|c| c.is_negative()) {
        return Err(Error::NotInSimplex(format!(
            "{v} has negative coordinate {c}"
        )));
    }
    let rest: Rational = v.coords.iter().sum();
    let head = Rational::one() - rest;
    if head.is_negative() {
        return Err(Error::NotInSimplex(format!(
            "{v} has coordinate sum above 1"
        )));
    }
    let mut weights = Vec::with_capacity(v.dim() + 1);
    weights.push(head);
    weights.extend(v.coords.iter().cloned());
    Ok(Lottery { weights })
}

/// Builds a lottery from `(numerator, denominator)` pairs; panics on invalid
/// input. Intended for fixtures.
pub fn lottery(weights: &[(i64, i64)]) -> Lottery {
    Lottery::new(weights.iter().map(|&(n, d)| Rational::new(n, d)).collect())
        .expect("fixture lottery must be valid")
}
