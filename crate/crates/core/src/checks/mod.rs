//! Falsifiers for the preference axioms.
//!
//! Every checker scans a finite [`GridSpec`] in its deterministic order and
//! reports the first counterexample it meets as a [`Witness`] that can be
//! replayed against the oracle. [`AxiomVerdict::NoViolationFound`] only
//! records the budget that was exhausted; it is evidence, never proof.

mod continuity;
mod independence;
mod ip;
mod lemmas;
mod order;

use serde::{Deserialize, Serialize};

use crate::grid::GridSpec;
use crate::lottery::{mix_unchecked, Lottery};
use crate::preferences::{Comparison, Preference};
use crate::rational::Rational;

pub use continuity::{
    check_continuity, probe_archimedean, probe_mixture_continuity, probe_openness,
    probe_solvability, ContinuityKind,
};
pub use independence::{check_independence, IndependenceVariant};
pub use ip::check_ip;
pub use lemmas::{check_convex_indifference, check_line_order, check_translation_invariance};
pub use order::check_weak_order;

/// Limits for searches over mixing weights, on top of the grid bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest denominator tried when searching for an indifference weight.
    pub max_denominator: u64,
    /// Halvings tried by the Archimedean probe and refinement levels tried
    /// by the openness probe.
    pub depth: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_denominator: 1 << 32,
            depth: 32,
        }
    }
}

/// What a scan covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchBudget>,
}

impl Budget {
    pub fn grid(grid: GridSpec) -> Self {
        Budget { grid, search: None }
    }

    pub fn with_search(grid: GridSpec, search: SearchBudget) -> Self {
        Budget {
            grid,
            search: Some(search),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AxiomVerdict {
    Violated {
        witness: Witness,
    },
    /// Nothing found within `budget`. `evidence` carries positive findings
    /// where a check has them (the spanning set found by [`check_ip`]).
    NoViolationFound {
        budget: Budget,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        evidence: Option<Witness>,
    },
}

impl AxiomVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, AxiomVerdict::Violated { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            AxiomVerdict::Violated { witness } => Some(witness),
            AxiomVerdict::NoViolationFound { evidence, .. } => evidence.as_ref(),
        }
    }
}

/// A comparison of `point` against a fixed reference, as recorded by a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub weight: Rational,
    pub point: Lottery,
    pub observed: Comparison,
}

/// Which of the two mixture sets `{α : α·p + (1−α)·r ⪰ q}` (upper) and
/// `{α : q ⪰ α·p + (1−α)·r}` (lower) a witness concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixtureSet {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Witness {
    /// `p ⪰ q ⪰ r` but not `p ⪰ r`.
    Intransitive {
        p: Lottery,
        q: Lottery,
        r: Lottery,
        p_vs_q: Comparison,
        q_vs_r: Comparison,
        p_vs_r: Comparison,
    },
    /// `compare(p, q)` is not the reverse of `compare(q, p)`.
    Asymmetric {
        p: Lottery,
        q: Lottery,
        p_vs_q: Comparison,
        q_vs_p: Comparison,
    },
    /// Mixing with `r` at weight `alpha` changed how `p` and `q` compare.
    Independence {
        p: Lottery,
        q: Lottery,
        r: Lottery,
        alpha: Rational,
        before: Comparison,
        after: Comparison,
    },
    /// `p ⪰ q` but the mixture does not sit between them.
    Betweenness {
        p: Lottery,
        q: Lottery,
        alpha: Rational,
        mixture: Lottery,
        p_vs_q: Comparison,
        p_vs_mixture: Comparison,
        mixture_vs_q: Comparison,
    },
    /// Mutually indifferent points spanning a hyperplane.
    IndifferentPoints { points: Vec<Lottery>, rank: usize },
    /// No spanning indifferent set on the grid; `largest_class` is the
    /// largest affinely independent indifferent set that was found.
    NoIndifferentPoints {
        largest_class: Vec<Lottery>,
        rank: usize,
        required: usize,
    },
    /// `point = q + t·(p − q)` compares against `p` and `q` in a way the
    /// line-order table forbids.
    LineOrder {
        p: Lottery,
        q: Lottery,
        t: Rational,
        point: Lottery,
        point_vs_p: Comparison,
        point_vs_q: Comparison,
    },
    /// `q ∼ q'` but their mixture is not indifferent to `q`.
    ConvexIndifference {
        q: Lottery,
        q_prime: Lottery,
        alpha: Rational,
        mixture: Lottery,
        observed: Comparison,
    },
    /// `r ∼ p` and `translated = r + (q − p)` is a lottery, but it is not
    /// indifferent to `q`.
    Translation {
        p: Lottery,
        q: Lottery,
        r: Lottery,
        translated: Lottery,
        r_vs_p: Comparison,
        translated_vs_q: Comparison,
    },
    /// `point` is in the strict set `side` of `reference`, yet at every
    /// refinement step some neighbour of `point` is outside that set.
    Openness {
        reference: Lottery,
        point: Lottery,
        side: Comparison,
        neighbours: Vec<Probe>,
    },
    /// `boundary` is a limit of `approach` (all inside `set`) but is itself
    /// outside `set`.
    MixtureContinuity {
        p: Lottery,
        q: Lottery,
        r: Lottery,
        set: MixtureSet,
        boundary: Probe,
        approach: Vec<Probe>,
    },
    /// `p ≻ q ≻ r`, yet none of the probed weights moves the mixture to the
    /// other side of `q`.
    Archimedean {
        p: Lottery,
        q: Lottery,
        r: Lottery,
        side: MixtureSet,
        probes: Vec<Probe>,
    },
    /// `p ⪰ q ⪰ r` and the indifference weight, if any, lies strictly
    /// between two Stern–Brocot neighbours `below` and `above` whose
    /// mediant denominator exceeds `max_denominator`.
    Solvability {
        p: Lottery,
        q: Lottery,
        r: Lottery,
        below: Probe,
        above: Probe,
        max_denominator: u64,
    },
}

fn probe_matches(oracle: &dyn Preference, probe: &Probe, reference: &Lottery) -> bool {
    oracle.check_space(&probe.point).is_ok()
        && oracle.compare_unchecked(&probe.point, reference) == probe.observed
}

fn mixture_probe_matches(
    oracle: &dyn Preference,
    probe: &Probe,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
) -> bool {
    in_unit_interval(&probe.weight)
        && mix_unchecked(p, r, &probe.weight) == probe.point
        && probe_matches(oracle, probe, q)
}

fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && x <= &Rational::one()
}

fn in_set(set: MixtureSet, observed: Comparison) -> bool {
    match set {
        MixtureSet::Upper => observed.is_weakly_better(),
        MixtureSet::Lower => observed.is_weakly_worse(),
    }
}

impl Witness {
    /// Re-evaluates every recorded comparison and arithmetic claim against
    /// `oracle`; `true` when the witness still demonstrates what it claims.
    pub fn replay(&self, oracle: &dyn Preference) -> bool {
        let space_ok = |ls: &[&Lottery]| ls.iter().all(|l| oracle.check_space(l).is_ok());
        let cmp = |a: &Lottery, b: &Lottery| oracle.compare_unchecked(a, b);
        match self {
            Witness::Intransitive {
                p,
                q,
                r,
                p_vs_q,
                q_vs_r,
                p_vs_r,
            } => {
                space_ok(&[p, q, r])
                    && cmp(p, q) == *p_vs_q
                    && cmp(q, r) == *q_vs_r
                    && cmp(p, r) == *p_vs_r
                    && p_vs_q.is_weakly_better()
                    && q_vs_r.is_weakly_better()
                    && !p_vs_r.is_weakly_better()
            }
            Witness::Asymmetric {
                p,
                q,
                p_vs_q,
                q_vs_p,
            } => {
                space_ok(&[p, q])
                    && cmp(p, q) == *p_vs_q
                    && cmp(q, p) == *q_vs_p
                    && p_vs_q.reverse() != *q_vs_p
            }
            Witness::Independence {
                p,
                q,
                r,
                alpha,
                before,
                after,
            } => {
                space_ok(&[p, q, r])
                    && alpha.is_positive()
                    && alpha <= &Rational::one()
                    && cmp(p, q) == *before
                    && cmp(&mix_unchecked(p, r, alpha), &mix_unchecked(q, r, alpha)) == *after
                    && before != after
            }
            Witness::Betweenness {
                p,
                q,
                alpha,
                mixture,
                p_vs_q,
                p_vs_mixture,
                mixture_vs_q,
            } => {
                space_ok(&[p, q])
                    && alpha.is_positive()
                    && alpha < &Rational::one()
                    && &mix_unchecked(p, q, alpha) == mixture
                    && cmp(p, q) == *p_vs_q
                    && cmp(p, mixture) == *p_vs_mixture
                    && cmp(mixture, q) == *mixture_vs_q
                    && p_vs_q.is_weakly_better()
                    && !(p_vs_mixture.is_weakly_better() && mixture_vs_q.is_weakly_better())
            }
            Witness::IndifferentPoints { points, rank } => {
                let refs: Vec<&Lottery> = points.iter().collect();
                !points.is_empty()
                    && space_ok(&refs)
                    && points.len() == oracle.outcome_count() - 1
                    && points
                        .iter()
                        .all(|x| cmp(x, &points[0]) == Comparison::Indifferent)
                    && lemmas::embedded_rank(points) == *rank
                    && *rank + 1 == points.len()
            }
            Witness::NoIndifferentPoints {
                largest_class,
                rank,
                required,
            } => {
                let refs: Vec<&Lottery> = largest_class.iter().collect();
                !largest_class.is_empty()
                    && space_ok(&refs)
                    && largest_class
                        .iter()
                        .all(|x| cmp(x, &largest_class[0]) == Comparison::Indifferent)
                    && lemmas::embedded_rank(largest_class) == *rank
                    && rank < required
            }
            Witness::LineOrder {
                p,
                q,
                t,
                point,
                point_vs_p,
                point_vs_q,
            } => {
                space_ok(&[p, q, point])
                    && cmp(p, q) == Comparison::StrictlyBetter
                    && lemmas::line_point(p, q, t).as_ref() == Some(point)
                    && cmp(point, p) == *point_vs_p
                    && cmp(point, q) == *point_vs_q
                    && !lemmas::line_order_holds(t, *point_vs_p, *point_vs_q)
            }
            Witness::ConvexIndifference {
                q,
                q_prime,
                alpha,
                mixture,
                observed,
            } => {
                space_ok(&[q, q_prime])
                    && in_unit_interval(alpha)
                    && cmp(q, q_prime) == Comparison::Indifferent
                    && &mix_unchecked(q, q_prime, alpha) == mixture
                    && cmp(mixture, q) == *observed
                    && *observed != Comparison::Indifferent
            }
            Witness::Translation {
                p,
                q,
                r,
                translated,
                r_vs_p,
                translated_vs_q,
            } => {
                space_ok(&[p, q, r, translated])
                    && lemmas::translate(r, p, q).as_ref() == Some(translated)
                    && cmp(r, p) == *r_vs_p
                    && *r_vs_p == Comparison::Indifferent
                    && cmp(translated, q) == *translated_vs_q
                    && *translated_vs_q != Comparison::Indifferent
            }
            Witness::Openness {
                reference,
                point,
                side,
                neighbours,
            } => {
                space_ok(&[reference, point])
                    && *side != Comparison::Indifferent
                    && cmp(point, reference) == *side
                    && !neighbours.is_empty()
                    && neighbours.iter().all(|n| {
                        continuity::is_neighbour(point, &n.point, &n.weight)
                            && probe_matches(oracle, n, reference)
                            && n.observed != *side
                    })
            }
            Witness::MixtureContinuity {
                p,
                q,
                r,
                set,
                boundary,
                approach,
            } => {
                space_ok(&[p, q, r])
                    && mixture_probe_matches(oracle, boundary, p, q, r)
                    && !in_set(*set, boundary.observed)
                    && !approach.is_empty()
                    && approach.iter().all(|a| {
                        mixture_probe_matches(oracle, a, p, q, r)
                            && in_set(*set, a.observed)
                            && a.weight != boundary.weight
                    })
            }
            Witness::Archimedean {
                p,
                q,
                r,
                side,
                probes,
            } => {
                space_ok(&[p, q, r])
                    && cmp(p, q) == Comparison::StrictlyBetter
                    && cmp(q, r) == Comparison::StrictlyBetter
                    && !probes.is_empty()
                    && probes.iter().all(|a| {
                        mixture_probe_matches(oracle, a, p, q, r)
                            && a.weight.is_positive()
                            && a.weight < Rational::one()
                            && match side {
                                // No probe fell strictly below q.
                                MixtureSet::Lower => a.observed.is_weakly_better(),
                                MixtureSet::Upper => a.observed.is_weakly_worse(),
                            }
                    })
            }
            Witness::Solvability {
                p,
                q,
                r,
                below,
                above,
                max_denominator,
            } => {
                space_ok(&[p, q, r])
                    && cmp(p, q).is_weakly_better()
                    && cmp(q, r).is_weakly_better()
                    && mixture_probe_matches(oracle, below, p, q, r)
                    && mixture_probe_matches(oracle, above, p, q, r)
                    && below.observed == Comparison::StrictlyWorse
                    && above.observed == Comparison::StrictlyBetter
                    && continuity::neighbours_beyond(&below.weight, &above.weight, *max_denominator)
            }
        }
    }
}
