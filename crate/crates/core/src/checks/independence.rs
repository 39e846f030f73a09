use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{dyadic_weights, GridSpec};
use crate::lottery::mix_unchecked;
use crate::preferences::Preference;
use crate::rational::Rational;

use super::order::{comparison_table, grid_for};
use super::{AxiomVerdict, Budget, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndependenceVariant {
    /// `p ⪰ q ⇔ α·p + (1−α)·r ⪰ α·q + (1−α)·r` for `α ∈ (0, 1]`.
    Independence,
    /// `p ⪰ q ⇒ p ⪰ α·p + (1−α)·q ⪰ q`.
    Betweenness,
}

/// Scans grid triples (independence) or pairs (betweenness) against the
/// dyadic weights with denominator at most the grid bound.
///
/// For independence the full comparison is required to survive mixing,
/// which is the axiom applied to both `(p, q)` and `(q, p)`.
pub fn check_independence(
    oracle: &dyn Preference,
    grid: &GridSpec,
    variant: IndependenceVariant,
) -> Result<AxiomVerdict> {
    let points = grid_for(oracle, grid)?;
    let table = comparison_table(oracle, &points);
    let interior = dyadic_weights(grid.denominator_bound);

    match variant {
        IndependenceVariant::Independence => {
            let mut weights = interior;
            weights.push(Rational::one());
            for (i, p) in points.iter().enumerate() {
                for (j, q) in points.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let before = table[i][j];
                    for r in &points {
                        for alpha in &weights {
                            let after = oracle.compare_unchecked(
                                &mix_unchecked(p, r, alpha),
                                &mix_unchecked(q, r, alpha),
                            );
                            if after != before {
                                return Ok(AxiomVerdict::Violated {
                                    witness: Witness::Independence {
                                        p: p.clone(),
                                        q: q.clone(),
                                        r: r.clone(),
                                        alpha: alpha.clone(),
                                        before,
                                        after,
                                    },
                                });
                            }
                        }
                    }
                }
            }
        }
        IndependenceVariant::Betweenness => {
            for (i, p) in points.iter().enumerate() {
                for (j, q) in points.iter().enumerate() {
                    let p_vs_q = table[i][j];
                    if i == j || !p_vs_q.is_weakly_better() {
                        continue;
                    }
                    for alpha in &interior {
                        let mixture = mix_unchecked(p, q, alpha);
                        let p_vs_mixture = oracle.compare_unchecked(p, &mixture);
                        let mixture_vs_q = oracle.compare_unchecked(&mixture, q);
                        if !(p_vs_mixture.is_weakly_better() && mixture_vs_q.is_weakly_better()) {
                            return Ok(AxiomVerdict::Violated {
                                witness: Witness::Betweenness {
                                    p: p.clone(),
                                    q: q.clone(),
                                    alpha: alpha.clone(),
                                    mixture,
                                    p_vs_q,
                                    p_vs_mixture,
                                    mixture_vs_q,
                                },
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomVerdict::NoViolationFound {
        budget: Budget::grid(*grid),
        evidence: None,
    })
}
