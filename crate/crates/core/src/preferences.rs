//! Preference oracles: total comparison functions over lotteries.
//!
//! The strictly better, indifferent and strictly worse sets of a lottery `p`
//! are the predicates `compare(·, p) == StrictlyBetter / Indifferent /
//! StrictlyWorse`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Hyperplane, Sign};
use crate::lottery::{embed, Lottery};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    StrictlyBetter,
    Indifferent,
    StrictlyWorse,
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::StrictlyBetter => Comparison::StrictlyWorse,
            Comparison::Indifferent => Comparison::Indifferent,
            Comparison::StrictlyWorse => Comparison::StrictlyBetter,
        }
    }

    /// `⪰`.
    pub fn is_weakly_better(self) -> bool {
        self != Comparison::StrictlyWorse
    }

    /// `⪯`.
    pub fn is_weakly_worse(self) -> bool {
        self != Comparison::StrictlyBetter
    }

    pub fn from_sign(sign: Sign) -> Comparison {
        match sign {
            Sign::Positive => Comparison::StrictlyBetter,
            Sign::Zero => Comparison::Indifferent,
            Sign::Negative => Comparison::StrictlyWorse,
        }
    }
}

impl From<Ordering> for Comparison {
    fn from(ord: Ordering) -> Self {
        match ord {
            Ordering::Greater => Comparison::StrictlyBetter,
            Ordering::Equal => Comparison::Indifferent,
            Ordering::Less => Comparison::StrictlyWorse,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::StrictlyBetter => "strictly-better",
            Comparison::Indifferent => "indifferent",
            Comparison::StrictlyWorse => "strictly-worse",
        })
    }
}

/// A complete comparison over lotteries on a fixed outcome space.
///
/// Implementations must be total and antisymmetric in the sense that
/// `compare(p, q) == compare(q, p).reverse()`. Transitivity is not assumed;
/// it is what [`crate::checks::check_weak_order`] looks for.
pub trait Preference {
    fn outcome_count(&self) -> usize;

    /// How `p` ranks against `q`.
    fn compare_unchecked(&self, p: &Lottery, q: &Lottery) -> Comparison;

    fn compare(&self, p: &Lottery, q: &Lottery) -> Result<Comparison> {
        self.check_space(p)?;
        self.check_space(q)?;
        Ok(self.compare_unchecked(p, q))
    }

    fn has_solve(&self) -> bool {
        false
    }

    /// A weight `α ∈ [0, 1]` with `α·p + (1 − α)·r ∼ q`, given `p ⪰ q ⪰ r`.
    fn solve(&self, p: &Lottery, q: &Lottery, r: &Lottery) -> Result<Rational> {
        let _ = (p, q, r);
        Err(Error::NoSolveCapability)
    }

    fn check_space(&self, p: &Lottery) -> Result<()> {
        if p.outcome_count() == self.outcome_count() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.outcome_count(),
                right: p.outcome_count(),
            })
        }
    }
}

/// `u(x₀) … u(xₙ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct UtilityFunction {
    values: Vec<Rational>,
}

impl UtilityFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidOutcomeSpace(format!(
                "utility needs at least 2 outcomes, found {}",
                values.len()
            )));
        }
        Ok(UtilityFunction { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Rational::integer(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn outcome_count(&self) -> usize {
        self.values.len()
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|v| v == &self.values[0])
    }

    /// The mean utility `Σ u(x_k) / (n + 1)`.
    pub fn mean(&self) -> Rational {
        self.values.iter().sum::<Rational>() / Rational::integer(self.values.len() as i64)
    }

    /// Canonical member of the positive affine class: `u(x₀) = 0` and the
    /// remaining values a primitive integer vector scaled by a positive
    /// factor. A constant utility normalises to all zeros.
    pub fn gauge_normalized(&self) -> UtilityFunction {
        let shifted: Vec<Rational> = self.values.iter().map(|v| v - &self.values[0]).collect();
        let Some(primitive) = crate::geometry::primitive_integer(&shifted) else {
            return UtilityFunction { values: shifted };
        };
        // primitive_integer fixes the sign of the first nonzero entry; undo
        // that when the original scale was negative there.
        let first = shifted.iter().position(|v| !v.is_zero()).expect("nonzero");
        let values = if shifted[first].is_negative() {
            primitive.into_iter().map(|v| -v).collect()
        } else {
            primitive
        };
        UtilityFunction { values }
    }

    /// Whether `self = a·other + b` for some rational `a > 0`.
    pub fn is_positive_affine_transform_of(&self, other: &UtilityFunction) -> bool {
        if self.values.len() != other.values.len() {
            return false;
        }
        if other.is_constant() {
            return self.is_constant();
        }
        let (i, j) = {
            let i = 0;
            let j = (1..other.values.len())
                .find(|&j| other.values[j] != other.values[i])
                .expect("non-constant");
            (i, j)
        };
        let a = (&self.values[j] - &self.values[i]) / (&other.values[j] - &other.values[i]);
        if !a.is_positive() {
            return false;
        }
        let b = &self.values[i] - &a * &other.values[i];
        self.values
            .iter()
            .zip(&other.values)
            .all(|(s, o)| s == &(&a * o + &b))
    }
}

impl TryFrom<Vec<Rational>> for UtilityFunction {
    type Error = Error;
    fn try_from(values: Vec<Rational>) -> Result<Self> {
        UtilityFunction::new(values)
    }
}

impl From<UtilityFunction> for Vec<Rational> {
    fn from(u: UtilityFunction) -> Self {
        u.values
    }
}

impl fmt::Display for UtilityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::lottery::EmbeddedPoint::new(self.values.clone())
        )
    }
}

/// `U(p) = Σ p(x)·u(x)`.
pub fn expected_utility(u: &UtilityFunction, p: &Lottery) -> Result<Rational> {
    if u.outcome_count() != p.outcome_count() {
        return Err(Error::DimensionMismatch {
            expected: u.outcome_count(),
            found: p.outcome_count(),
        });
    }
    Ok(weighted_sum(u.values(), p.weights()))
}

fn weighted_sum(values: &[Rational], weights: &[Rational]) -> Rational {
    values
        .iter()
        .zip(weights)
        .filter(|(_, w)| !w.is_zero())
        .map(|(v, w)| v * w)
        .sum()
}

/// Direction in which a hyperplane normal points toward better lotteries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn apply(self, sign: Sign) -> Sign {
        match self {
            Orientation::Positive => sign,
            Orientation::Negative => sign.flip(),
        }
    }

    pub fn factor(self) -> Rational {
        match self {
            Orientation::Positive => Rational::one(),
            Orientation::Negative => Rational::integer(-1),
        }
    }
}

impl Serialize for Orientation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Orientation::Positive => "1",
            Orientation::Negative => "-1",
        })
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "1" => Ok(Orientation::Positive),
            "-1" => Ok(Orientation::Negative),
            other => Err(serde::de::Error::custom(format!(
                "orientation must be \"1\" or \"-1\", found {other:?}"
            ))),
        }
    }
}

/// The built-in oracle kinds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PreferenceOracle {
    /// Ranks by expected utility.
    #[serde(rename = "eu")]
    ExpectedUtility { utility: UtilityFunction },
    /// The first outcome in `priority` on which two lotteries differ
    /// decides; more weight there is better.
    Lexicographic { priority: Vec<usize> },
    /// Lexicographic in ascending outcome order, except that all lotteries
    /// with weight exactly 1/2 on `x₀` are mutually indifferent.
    Hybrid { outcomes: usize },
    /// Ranks by the side of a hyperplane, with `orientation` naming the
    /// better side.
    Represented {
        hyperplane: Hyperplane,
        orientation: Orientation,
    },
}

impl PreferenceOracle {
    pub fn expected_utility(utility: UtilityFunction) -> Self {
        PreferenceOracle::ExpectedUtility { utility }
    }

    pub fn lexicographic(priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &i in &priority {
            if i >= priority.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidOracle(format!(
                    "priority {priority:?} is not a permutation of 0..{}",
                    priority.len()
                )));
            }
        }
        if priority.len() < 2 {
            return Err(Error::InvalidOracle("need at least 2 outcomes".into()));
        }
        Ok(PreferenceOracle::Lexicographic { priority })
    }

    pub fn hybrid(outcomes: usize) -> Result<Self> {
        if outcomes < 2 {
            return Err(Error::InvalidOracle("need at least 2 outcomes".into()));
        }
        Ok(PreferenceOracle::Hybrid { outcomes })
    }

    pub fn represented(hyperplane: Hyperplane, orientation: Orientation) -> Self {
        PreferenceOracle::Represented {
            hyperplane,
            orientation,
        }
    }

    /// Re-checks invariants that deserialisation cannot enforce.
    pub fn validate(self) -> Result<Self> {
        match self {
            PreferenceOracle::Lexicographic { priority } => Self::lexicographic(priority),
            PreferenceOracle::Hybrid { outcomes } => Self::hybrid(outcomes),
            other => Ok(other),
        }
    }

    /// Linear value whose differences decide EU and Represented oracles.
    fn linear_value(&self, p: &Lottery) -> Option<Rational> {
        match self {
            PreferenceOracle::ExpectedUtility { utility } => {
                Some(weighted_sum(utility.values(), p.weights()))
            }
            PreferenceOracle::Represented {
                hyperplane,
                orientation,
            } => Some(embed(p).dot(hyperplane.normal()) * orientation.factor()),
            _ => None,
        }
    }
}

fn lexicographic_order(order: impl Iterator<Item = usize>, p: &Lottery, q: &Lottery) -> Comparison {
    for i in order {
        match p.weight(i).cmp(q.weight(i)) {
            Ordering::Equal => continue,
            other => return other.into(),
        }
    }
    Comparison::Indifferent
}

impl Preference for PreferenceOracle {
    fn outcome_count(&self) -> usize {
        match self {
            PreferenceOracle::ExpectedUtility { utility } => utility.outcome_count(),
            PreferenceOracle::Lexicographic { priority } => priority.len(),
            PreferenceOracle::Hybrid { outcomes } => *outcomes,
            PreferenceOracle::Represented { hyperplane, .. } => hyperplane.dim() + 1,
        }
    }

    fn compare_unchecked(&self, p: &Lottery, q: &Lottery) -> Comparison {
        match self {
            PreferenceOracle::Lexicographic { priority } => {
                lexicographic_order(priority.iter().copied(), p, q)
            }
            PreferenceOracle::Hybrid { outcomes } => {
                let half = Rational::new(1, 2);
                if p.weight(0) == &half && q.weight(0) == &half {
                    Comparison::Indifferent
                } else {
                    lexicographic_order(0..*outcomes, p, q)
                }
            }
            _ => {
                let (vp, vq) = (self.linear_value(p).unwrap(), self.linear_value(q).unwrap());
                vp.cmp(&vq).into()
            }
        }
    }

    fn has_solve(&self) -> bool {
        matches!(
            self,
            PreferenceOracle::ExpectedUtility { .. } | PreferenceOracle::Represented { .. }
        )
    }

    fn solve(&self, p: &Lottery, q: &Lottery, r: &Lottery) -> Result<Rational> {
        if !self.has_solve() {
            return Err(Error::NoSolveCapability);
        }
        for x in [p, q, r] {
            self.check_space(x)?;
        }
        let (vp, vq, vr) = (
            self.linear_value(p).unwrap(),
            self.linear_value(q).unwrap(),
            self.linear_value(r).unwrap(),
        );
        if vp < vq || vq < vr {
            return Err(Error::PreconditionViolated(format!(
                "solve needs p ⪰ q ⪰ r, got p={p}, q={q}, r={r}"
            )));
        }
        if vp == vr {
            return Ok(Rational::one());
        }
        Ok((vq - &vr) / (vp - vr))
    }
}

/// `compare` for any preference.
pub fn compare(oracle: &dyn Preference, p: &Lottery, q: &Lottery) -> Result<Comparison> {
    oracle.compare(p, q)
}

/// `solve` for any preference.
pub fn solve(oracle: &dyn Preference, p: &Lottery, q: &Lottery, r: &Lottery) -> Result<Rational> {
    oracle.solve(p, q, r)
}

/// Majority vote over coordinates: `p` beats `q` when it puts more weight on
/// more outcomes than `q` does. Complete but intransitive; used to exercise
/// the weak-order checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MajorityRule {
    outcomes: usize,
}

impl MajorityRule {
    pub fn new(outcomes: usize) -> Result<Self> {
        if outcomes < 2 {
            return Err(Error::InvalidOracle("need at least 2 outcomes".into()));
        }
        Ok(MajorityRule { outcomes })
    }
}

impl Preference for MajorityRule {
    fn outcome_count(&self) -> usize {
        self.outcomes
    }

    fn compare_unchecked(&self, p: &Lottery, q: &Lottery) -> Comparison {
        let mut votes = 0i64;
        for (a, b) in p.weights().iter().zip(q.weights()) {
            match a.cmp(b) {
                Ordering::Greater => votes += 1,
                Ordering::Less => votes -= 1,
                Ordering::Equal => {}
            }
        }
        votes.cmp(&0).into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lottery::lottery;
    use crate::rational::q;

    fn eu012() -> PreferenceOracle {
        PreferenceOracle::expected_utility(UtilityFunction::from_integers(&[0, 1, 2]).unwrap())
    }

    #[test]
    fn expected_utility_examples() {
        let u = UtilityFunction::from_integers(&[0, 1, 2]).unwrap();
        assert_eq!(expected_utility(&u, &Lottery::uniform(3)).unwrap(), q(1, 1));
        assert_eq!(
            expected_utility(&u, &Lottery::vertex(3, 2)).unwrap(),
            q(2, 1)
        );
        assert_eq!(
            expected_utility(&u, &lottery(&[(1, 2), (0, 1), (1, 2)])).unwrap(),
            q(1, 1)
        );
        assert_eq!(u.mean(), q(1, 1));
        assert!(expected_utility(&u, &Lottery::uniform(2)).is_err());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            eu012()
                .compare(&Lottery::vertex(3, 2), &Lottery::vertex(3, 0))
                .unwrap(),
            Comparison::StrictlyBetter
        );
        let hybrid = PreferenceOracle::hybrid(3).unwrap();
        assert_eq!(
            hybrid
                .compare(
                    &lottery(&[(1, 2), (1, 2), (0, 1)]),
                    &lottery(&[(1, 2), (0, 1), (1, 2)])
                )
                .unwrap(),
            Comparison::Indifferent
        );
        let lex = PreferenceOracle::lexicographic(vec![0, 1, 2]).unwrap();
        assert_eq!(
            lex.compare(
                &lottery(&[(1, 2), (1, 4), (1, 4)]),
                &lottery(&[(1, 2), (0, 1), (1, 2)])
            )
            .unwrap(),
            Comparison::StrictlyBetter
        );
        assert_eq!(
            eu012().compare(&Lottery::uniform(3), &Lottery::uniform(2)),
            Err(Error::SpaceMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn lexicographic_priority_is_respected() {
        let lex = PreferenceOracle::lexicographic(vec![2, 0, 1]).unwrap();
        assert_eq!(
            lex.compare(&Lottery::vertex(3, 2), &Lottery::vertex(3, 0))
                .unwrap(),
            Comparison::StrictlyBetter
        );
        assert!(PreferenceOracle::lexicographic(vec![0, 0, 1]).is_err());
        assert!(PreferenceOracle::lexicographic(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn solve_examples() {
        let alpha = eu012()
            .solve(
                &Lottery::vertex(3, 2),
                &lottery(&[(1, 2), (0, 1), (1, 2)]),
                &Lottery::vertex(3, 0),
            )
            .unwrap();
        assert_eq!(alpha, q(1, 2));

        let u = Lottery::uniform(3);
        let same = lottery(&[(1, 2), (0, 1), (1, 2)]);
        assert_eq!(eu012().solve(&u, &same, &u).unwrap(), q(1, 1));

        let hybrid = PreferenceOracle::hybrid(3).unwrap();
        assert_eq!(hybrid.solve(&u, &u, &u), Err(Error::NoSolveCapability));

        assert!(matches!(
            eu012().solve(&Lottery::vertex(3, 0), &u, &Lottery::vertex(3, 2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn capabilities() {
        assert!(eu012().has_solve());
        assert!(!PreferenceOracle::hybrid(3).unwrap().has_solve());
        assert!(!PreferenceOracle::lexicographic(vec![0, 1])
            .unwrap()
            .has_solve());
        assert!(!MajorityRule::new(3).unwrap().has_solve());
    }

    #[test]
    fn gauge_normalisation() {
        let u = UtilityFunction::from_integers(&[3, 1, -1]).unwrap();
        assert_eq!(
            u.gauge_normalized(),
            UtilityFunction::from_integers(&[0, -1, -2]).unwrap()
        );
        let v = UtilityFunction::new(vec![q(1, 2), q(1, 2), q(3, 2)]).unwrap();
        assert_eq!(
            v.gauge_normalized(),
            UtilityFunction::from_integers(&[0, 0, 1]).unwrap()
        );
        assert!(u.is_positive_affine_transform_of(&u.gauge_normalized()));
        let flipped = UtilityFunction::from_integers(&[0, 1, 2]).unwrap();
        assert!(!u.is_positive_affine_transform_of(&flipped));
    }

    #[test]
    fn oracle_serialization() {
        let json = serde_json::to_string(&eu012()).unwrap();
        assert_eq!(json, r#"{"kind":"eu","utility":["0","1","2"]}"#);
        let hybrid: PreferenceOracle =
            serde_json::from_str(r#"{"kind":"hybrid","outcomes":3}"#).unwrap();
        assert_eq!(hybrid, PreferenceOracle::hybrid(3).unwrap());
    }
}
