//! Continuity falsifiers.
//!
//! The mixture-based probes share one search: along `α ↦ α·p + (1−α)·r`
//! with `p ≻ q ≻ r`, walk the Stern–Brocot tree toward the weight where the
//! mixture becomes indifferent to `q`. Runs in one direction are taken with
//! exponential strides, so an exact rational threshold is reached in a
//! number of comparisons logarithmic in its denominator. If the walk keeps
//! one endpoint fixed while the other closes in until the mediant
//! denominator exceeds the budget, the fixed endpoint is a boundary point
//! the preference jumps across.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::GridSpec;
use crate::lottery::{mix_unchecked, Lottery};
use crate::preferences::{Comparison, Preference};
use crate::rational::Rational;

use super::order::{comparison_table, grid_for};
use super::{AxiomVerdict, Budget, MixtureSet, Probe, SearchBudget, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContinuityKind {
    /// Strict upper and lower sets are open.
    GridOpenness,
    /// `{α : α·p + (1−α)·r ⪰ q}` and `{α : q ⪰ α·p + (1−α)·r}` are closed.
    Mixture,
    /// `p ≻ q ≻ r` admits interior weights on both sides of `q`.
    Archimedean,
    /// `p ⪰ q ⪰ r` admits a weight with `α·p + (1−α)·r ∼ q`.
    Solvability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    n: u64,
    d: u64,
}

impl Frac {
    fn to_rational(self) -> Rational {
        Rational::from_big(BigInt::from(self.n), BigInt::from(self.d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Limit {
    Below,
    Above,
}

#[allow(clippy::large_enum_variant)]
enum Threshold {
    Tie,
    Stalled {
        below: Probe,
        above: Probe,
        /// The endpoint that stayed put while the other closed in, if the
        /// walk stalled inside a run.
        limit: Option<Limit>,
        /// Probes of the final run, all on the moving endpoint's side.
        approach: Vec<Probe>,
    },
}

struct Walk<'a> {
    oracle: &'a dyn Preference,
    p: &'a Lottery,
    q: &'a Lottery,
    r: &'a Lottery,
}

enum Step {
    Tie,
    Probe(Probe),
}

impl Walk<'_> {
    fn probe(&self, weight: Rational) -> Probe {
        let point = mix_unchecked(self.p, self.r, &weight);
        let observed = self.oracle.compare_unchecked(&point, self.q);
        Probe {
            weight,
            point,
            observed,
        }
    }

    fn step(&self, f: Frac) -> Step {
        let probe = self.probe(f.to_rational());
        if probe.observed == Comparison::Indifferent {
            Step::Tie
        } else {
            Step::Probe(probe)
        }
    }

    /// Requires `compare(p, q) = StrictlyBetter` and `compare(r, q) =
    /// StrictlyWorse`, so the walk starts with `below = 0`, `above = 1`.
    fn locate(&self, max_denominator: u64) -> Threshold {
        let max_denominator = max_denominator.min(u64::MAX / 2);
        let mut lo = Frac { n: 0, d: 1 };
        let mut hi = Frac { n: 1, d: 1 };
        let mut lo_probe = self.probe(Rational::zero());
        let mut hi_probe = self.probe(Rational::one());
        debug_assert_eq!(lo_probe.observed, Comparison::StrictlyWorse);
        debug_assert_eq!(hi_probe.observed, Comparison::StrictlyBetter);

        loop {
            if lo.d.saturating_add(hi.d) > max_denominator {
                return Threshold::Stalled {
                    below: lo_probe,
                    above: hi_probe,
                    limit: None,
                    approach: Vec::new(),
                };
            }
            let mediant = Frac {
                n: lo.n + hi.n,
                d: lo.d + hi.d,
            };
            let first = match self.step(mediant) {
                Step::Tie => return Threshold::Tie,
                Step::Probe(probe) => probe,
            };
            // A better mediant pulls `above` toward `below`, a worse one
            // pushes `below` toward `above`.
            let moving_above = first.observed == Comparison::StrictlyBetter;
            let (fixed, moving) = if moving_above { (lo, hi) } else { (hi, lo) };
            let point = |k: u64| Frac {
                n: k * fixed.n + moving.n,
                d: k * fixed.d + moving.d,
            };
            let k_max = (max_denominator - moving.d) / fixed.d;
            let good_side = first.observed;

            let mut good = (1u64, first);
            let mut approach = vec![good.1.clone()];
            let mut bad: Option<(u64, Probe)> = None;
            let mut k = 1u64;
            while bad.is_none() && k < k_max {
                k = k.saturating_mul(2).min(k_max);
                match self.step(point(k)) {
                    Step::Tie => return Threshold::Tie,
                    Step::Probe(probe) if probe.observed == good_side => {
                        approach.push(probe.clone());
                        good = (k, probe);
                    }
                    Step::Probe(probe) => bad = Some((k, probe)),
                }
            }
            let Some(mut bad) = bad else {
                let (below, above, limit) = if moving_above {
                    (lo_probe, good.1, Limit::Below)
                } else {
                    (good.1, hi_probe, Limit::Above)
                };
                return Threshold::Stalled {
                    below,
                    above,
                    limit: Some(limit),
                    approach,
                };
            };
            while bad.0 - good.0 > 1 {
                let mid = good.0 + (bad.0 - good.0) / 2;
                match self.step(point(mid)) {
                    Step::Tie => return Threshold::Tie,
                    Step::Probe(probe) if probe.observed == good_side => good = (mid, probe),
                    Step::Probe(probe) => bad = (mid, probe),
                }
            }
            if moving_above {
                hi = point(good.0);
                hi_probe = good.1;
                lo = point(bad.0);
                lo_probe = bad.1;
            } else {
                lo = point(good.0);
                lo_probe = good.1;
                hi = point(bad.0);
                hi_probe = bad.1;
            }
        }
    }
}

fn strict_chain(oracle: &dyn Preference, p: &Lottery, q: &Lottery, r: &Lottery) -> bool {
    oracle.compare_unchecked(p, q) == Comparison::StrictlyBetter
        && oracle.compare_unchecked(q, r) == Comparison::StrictlyBetter
}

/// For `p ⪰ q ⪰ r`, looks for `α` with denominator at most
/// `search.max_denominator` solving `α·p + (1−α)·r ∼ q`; returns a witness
/// when the search closes in on a gap instead.
pub fn probe_solvability(
    oracle: &dyn Preference,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    search: &SearchBudget,
) -> Option<Witness> {
    if !strict_chain(oracle, p, q, r) {
        // p ∼ q is solved by α = 1 and q ∼ r by α = 0; anything else is
        // outside the axiom's hypothesis.
        return None;
    }
    let walk = Walk { oracle, p, q, r };
    match walk.locate(search.max_denominator) {
        Threshold::Tie => None,
        Threshold::Stalled { below, above, .. } => Some(Witness::Solvability {
            p: p.clone(),
            q: q.clone(),
            r: r.clone(),
            below,
            above,
            max_denominator: search.max_denominator,
        }),
    }
}

/// For `p ≻ q ≻ r`, looks for a boundary weight that one of the two mixture
/// sets approaches but excludes.
pub fn probe_mixture_continuity(
    oracle: &dyn Preference,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    search: &SearchBudget,
) -> Option<Witness> {
    if !strict_chain(oracle, p, q, r) {
        return None;
    }
    let walk = Walk { oracle, p, q, r };
    let Threshold::Stalled {
        below,
        above,
        limit: Some(limit),
        approach,
    } = walk.locate(search.max_denominator)
    else {
        return None;
    };
    let (set, boundary) = match limit {
        // Above-side probes (⪰ q) close in on `below`, which is ≺ q.
        Limit::Below => (MixtureSet::Upper, below),
        Limit::Above => (MixtureSet::Lower, above),
    };
    Some(Witness::MixtureContinuity {
        p: p.clone(),
        q: q.clone(),
        r: r.clone(),
        set,
        boundary,
        approach,
    })
}

/// For `p ≻ q ≻ r`, tries `β = 2^-k` for a mixture strictly below `q` and
/// `α = 1 − 2^-k` for one strictly above, `k = 1 … search.depth`.
pub fn probe_archimedean(
    oracle: &dyn Preference,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    search: &SearchBudget,
) -> Option<Witness> {
    if !strict_chain(oracle, p, q, r) {
        return None;
    }
    let walk = Walk { oracle, p, q, r };
    let halvings =
        || (1..=search.depth).map(|k| Rational::from_big(BigInt::from(1), BigInt::from(1u64) << k));
    for (side, wanted) in [
        (MixtureSet::Lower, Comparison::StrictlyWorse),
        (MixtureSet::Upper, Comparison::StrictlyBetter),
    ] {
        let mut probes = Vec::new();
        for h in halvings() {
            let weight = match side {
                MixtureSet::Lower => h,
                MixtureSet::Upper => Rational::one() - h,
            };
            let probe = walk.probe(weight);
            let hit = probe.observed == wanted;
            probes.push(probe);
            if hit {
                break;
            }
        }
        if probes.last().is_none_or(|p| p.observed != wanted) {
            return Some(Witness::Archimedean {
                p: p.clone(),
                q: q.clone(),
                r: r.clone(),
                side,
                probes,
            });
        }
    }
    None
}

/// Whether `neighbour = point + h·(e_i − e_j)` for some `i ≠ j`.
pub(crate) fn is_neighbour(point: &Lottery, neighbour: &Lottery, h: &Rational) -> bool {
    if point.outcome_count() != neighbour.outcome_count() || !h.is_positive() {
        return false;
    }
    let diffs: Vec<Rational> = neighbour
        .weights()
        .iter()
        .zip(point.weights())
        .map(|(a, b)| a - b)
        .collect();
    let plus = diffs.iter().filter(|d| *d == h).count();
    let minus = diffs.iter().filter(|d| **d == -h).count();
    let zero = diffs.iter().filter(|d| d.is_zero()).count();
    plus == 1 && minus == 1 && zero + 2 == diffs.len()
}

/// Whether `below < above` are Stern–Brocot neighbours whose mediant has a
/// denominator above `max_denominator`, so no rational strictly between
/// them has a denominator within budget.
pub(crate) fn neighbours_beyond(below: &Rational, above: &Rational, max_denominator: u64) -> bool {
    let det = above.numer() * below.denom() - below.numer() * above.denom();
    det == BigInt::from(1) && below.denom() + above.denom() > BigInt::from(max_denominator)
}

/// For `point` strictly on one side of `reference`, checks whether every
/// refinement step `h = 1 / (2d·2^m)`, `m = 0 … search.depth`, has a
/// neighbour `point + h·(e_i − e_j)` that is not on that side.
pub fn probe_openness(
    oracle: &dyn Preference,
    reference: &Lottery,
    point: &Lottery,
    denominator_bound: u32,
    search: &SearchBudget,
) -> Option<Witness> {
    let side = oracle.compare_unchecked(point, reference);
    if side == Comparison::Indifferent {
        return None;
    }
    let outcomes = point.outcome_count();
    let mut neighbours = Vec::new();
    for m in 0..=search.depth {
        let h = Rational::from_big(
            BigInt::from(1),
            BigInt::from(2 * u64::from(denominator_bound)) << m,
        );
        let escape = (0..outcomes)
            .flat_map(|i| (0..outcomes).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && point.weight(j) >= &h)
            .find_map(|(i, j)| {
                let mut weights = point.weights().to_vec();
                weights[i] = &weights[i] + &h;
                weights[j] = &weights[j] - &h;
                let neighbour = Lottery::new_unchecked(weights);
                let observed = oracle.compare_unchecked(&neighbour, reference);
                (observed != side).then(|| Probe {
                    weight: h.clone(),
                    point: neighbour,
                    observed,
                })
            });
        neighbours.push(escape?);
    }
    Some(Witness::Openness {
        reference: reference.clone(),
        point: point.clone(),
        side,
        neighbours,
    })
}

/// Runs the probe for `kind` over the grid in enumeration order and returns
/// the first witness.
pub fn check_continuity(
    oracle: &dyn Preference,
    kind: ContinuityKind,
    grid: &GridSpec,
    search: &SearchBudget,
) -> Result<AxiomVerdict> {
    let points = grid_for(oracle, grid)?;
    let table = comparison_table(oracle, &points);
    let found = |witness: Witness| Ok(AxiomVerdict::Violated { witness });

    if kind == ContinuityKind::GridOpenness {
        for (i, reference) in points.iter().enumerate() {
            for (k, point) in points.iter().enumerate() {
                if table[k][i] == Comparison::Indifferent {
                    continue;
                }
                if let Some(w) =
                    probe_openness(oracle, reference, point, grid.denominator_bound, search)
                {
                    return found(w);
                }
            }
        }
    } else {
        for (i, p) in points.iter().enumerate() {
            for (j, q) in points.iter().enumerate() {
                if table[i][j] != Comparison::StrictlyBetter {
                    continue;
                }
                for (k, r) in points.iter().enumerate() {
                    if table[j][k] != Comparison::StrictlyBetter {
                        continue;
                    }
                    let witness = match kind {
                        ContinuityKind::Mixture => {
                            probe_mixture_continuity(oracle, p, q, r, search)
                        }
                        ContinuityKind::Archimedean => probe_archimedean(oracle, p, q, r, search),
                        ContinuityKind::Solvability => probe_solvability(oracle, p, q, r, search),
                        ContinuityKind::GridOpenness => unreachable!(),
                    };
                    if let Some(w) = witness {
                        return found(w);
                    }
                }
            }
        }
    }
    Ok(AxiomVerdict::NoViolationFound {
        budget: Budget::with_search(*grid, *search),
        evidence: None,
    })
}
