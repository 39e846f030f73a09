//! Structural consequences of independence that every expected-utility
//! oracle must exhibit: indifference sets are convex, translating an
//! indifference set keeps it an indifference set, and a strict preference
//! orders every point on the line through the two lotteries.

use crate::error::Result;
use crate::geometry::affine_rank;
use crate::grid::{dyadic_weights, GridSpec};
use crate::lottery::{embed, mix_unchecked, EmbeddedPoint, Lottery};
use crate::preferences::{Comparison, Preference};
use crate::rational::Rational;

use super::order::{comparison_table, grid_for};
use super::{AxiomVerdict, Budget, Witness};

pub(crate) fn embedded_rank(points: &[Lottery]) -> usize {
    let embedded: Vec<EmbeddedPoint> = points.iter().map(embed).collect();
    affine_rank(&embedded).expect("lotteries share a space")
}

/// `q + t·(p − q)` when it is a lottery.
pub(crate) fn line_point(p: &Lottery, q: &Lottery, t: &Rational) -> Option<Lottery> {
    if p.outcome_count() != q.outcome_count() {
        return None;
    }
    let weights = p
        .weights()
        .iter()
        .zip(q.weights())
        .map(|(a, b)| b + t * (a - b))
        .collect();
    Lottery::new(weights).ok()
}

/// `r + (q − p)` when it is a lottery.
pub(crate) fn translate(r: &Lottery, p: &Lottery, q: &Lottery) -> Option<Lottery> {
    if r.outcome_count() != p.outcome_count() || p.outcome_count() != q.outcome_count() {
        return None;
    }
    let weights = r
        .weights()
        .iter()
        .zip(p.weights().iter().zip(q.weights()))
        .map(|(x, (a, b))| x + &(b - a))
        .collect();
    Lottery::new(weights).ok()
}

/// The case table for `p ≻ q` and `p_t = q + t·(p − q)`.
pub(crate) fn line_order_holds(
    t: &Rational,
    point_vs_p: Comparison,
    point_vs_q: Comparison,
) -> bool {
    use Comparison::*;
    let one = Rational::one();
    if t.is_negative() {
        point_vs_q == StrictlyWorse
    } else if t.is_zero() {
        point_vs_q == Indifferent
    } else if t < &one {
        point_vs_p == StrictlyWorse && point_vs_q == StrictlyBetter
    } else if t == &one {
        point_vs_p == Indifferent
    } else {
        point_vs_p == StrictlyBetter
    }
}

/// The `t` with `r = q + t·(p − q)`, if `r` lies on the line.
fn line_parameter(p: &Lottery, q: &Lottery, r: &Lottery) -> Option<Rational> {
    let (c, diff) = p
        .weights()
        .iter()
        .zip(q.weights())
        .map(|(a, b)| a - b)
        .enumerate()
        .find(|(_, d)| !d.is_zero())?;
    let t = (r.weight(c) - q.weight(c)) / diff;
    let on_line = p
        .weights()
        .iter()
        .zip(q.weights())
        .zip(r.weights())
        .all(|((a, b), x)| x == &(b + &t * (a - b)));
    on_line.then_some(t)
}

/// For every grid pair with `p ≻ q` and every grid lottery `p_t` on their
/// line, checks the line-order table.
pub fn check_line_order(oracle: &dyn Preference, grid: &GridSpec) -> Result<AxiomVerdict> {
    let points = grid_for(oracle, grid)?;
    let table = comparison_table(oracle, &points);
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if table[i][j] != Comparison::StrictlyBetter {
                continue;
            }
            for (k, point) in points.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let Some(t) = line_parameter(p, q, point) else {
                    continue;
                };
                let (point_vs_p, point_vs_q) = (table[k][i], table[k][j]);
                if !line_order_holds(&t, point_vs_p, point_vs_q) {
                    return Ok(AxiomVerdict::Violated {
                        witness: Witness::LineOrder {
                            p: p.clone(),
                            q: q.clone(),
                            t,
                            point: point.clone(),
                            point_vs_p,
                            point_vs_q,
                        },
                    });
                }
            }
        }
    }
    Ok(AxiomVerdict::NoViolationFound {
        budget: Budget::grid(*grid),
        evidence: None,
    })
}

/// For every indifferent grid pair and dyadic weight, checks that the
/// mixture stays in the indifference class.
pub fn check_convex_indifference(oracle: &dyn Preference, grid: &GridSpec) -> Result<AxiomVerdict> {
    let points = grid_for(oracle, grid)?;
    let table = comparison_table(oracle, &points);
    let weights = dyadic_weights(grid.denominator_bound);
    for (i, q) in points.iter().enumerate() {
        for (j, q_prime) in points.iter().enumerate().skip(i + 1) {
            if table[i][j] != Comparison::Indifferent {
                continue;
            }
            for alpha in &weights {
                let mixture = mix_unchecked(q, q_prime, alpha);
                let observed = oracle.compare_unchecked(&mixture, q);
                if observed != Comparison::Indifferent {
                    return Ok(AxiomVerdict::Violated {
                        witness: Witness::ConvexIndifference {
                            q: q.clone(),
                            q_prime: q_prime.clone(),
                            alpha: alpha.clone(),
                            mixture,
                            observed,
                        },
                    });
                }
            }
        }
    }
    Ok(AxiomVerdict::NoViolationFound {
        budget: Budget::grid(*grid),
        evidence: None,
    })
}

/// For grid `p, q, r` with `r ∼ p` and `r + (q − p)` a lottery, checks
/// that the translate is indifferent to `q`.
pub fn check_translation_invariance(
    oracle: &dyn Preference,
    grid: &GridSpec,
) -> Result<AxiomVerdict> {
    let points = grid_for(oracle, grid)?;
    let table = comparison_table(oracle, &points);
    for (i, p) in points.iter().enumerate() {
        for (k, r) in points.iter().enumerate() {
            if i == k || table[k][i] != Comparison::Indifferent {
                continue;
            }
            for q in &points {
                let Some(translated) = translate(r, p, q) else {
                    continue;
                };
                let translated_vs_q = oracle.compare_unchecked(&translated, q);
                if translated_vs_q != Comparison::Indifferent {
                    return Ok(AxiomVerdict::Violated {
                        witness: Witness::Translation {
                            p: p.clone(),
                            q: q.clone(),
                            r: r.clone(),
                            translated,
                            r_vs_p: table[k][i],
                            translated_vs_q,
                        },
                    });
                }
            }
        }
    }
    Ok(AxiomVerdict::NoViolationFound {
        budget: Budget::grid(*grid),
        evidence: None,
    })
}
