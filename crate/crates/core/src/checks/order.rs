use crate::error::Result;
use crate::grid::GridSpec;
use crate::lottery::Lottery;
use crate::preferences::{Comparison, Preference};

use super::{AxiomVerdict, Budget, Witness};

pub(super) fn grid_for(oracle: &dyn Preference, grid: &GridSpec) -> Result<Vec<Lottery>> {
    let points = grid.lotteries();
    if let Some(p) = points.first() {
        oracle.check_space(p)?;
    }
    Ok(points)
}

/// All pairwise comparisons; `table[i][j] = compare(grid[i], grid[j])`.
pub(super) fn comparison_table(
    oracle: &dyn Preference,
    points: &[Lottery],
) -> Vec<Vec<Comparison>> {
    points
        .iter()
        .map(|p| {
            points
                .iter()
                .map(|q| oracle.compare_unchecked(p, q))
                .collect()
        })
        .collect()
}

/// Looks for transitivity failures (and for comparisons that are not
/// antisymmetric) among all grid triples.
pub fn check_weak_order(oracle: &dyn Preference, grid: &GridSpec) -> Result<AxiomVerdict> {
    let points = grid_for(oracle, grid)?;
    let table = comparison_table(oracle, &points);
    let g = points.len();

    for i in 0..g {
        for j in 0..g {
            if table[i][j].reverse() != table[j][i] {
                return Ok(AxiomVerdict::Violated {
                    witness: Witness::Asymmetric {
                        p: points[i].clone(),
                        q: points[j].clone(),
                        p_vs_q: table[i][j],
                        q_vs_p: table[j][i],
                    },
                });
            }
        }
    }

    for i in 0..g {
        for j in 0..g {
            if !table[i][j].is_weakly_better() {
                continue;
            }
            for k in 0..g {
                if table[j][k].is_weakly_better() && !table[i][k].is_weakly_better() {
                    return Ok(AxiomVerdict::Violated {
                        witness: Witness::Intransitive {
                            p: points[i].clone(),
                            q: points[j].clone(),
                            r: points[k].clone(),
                            p_vs_q: table[i][j],
                            q_vs_r: table[j][k],
                            p_vs_r: table[i][k],
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preferences::{MajorityRule, PreferenceOracle, UtilityFunction};

    #[test]
    fn weak_order_examples() {
        let grid = GridSpec::new(3, 3).unwrap();
        let eu =
            PreferenceOracle::expected_utility(UtilityFunction::from_integers(&[0, 1, 2]).unwrap());
        assert!(!check_weak_order(&eu, &grid).unwrap().is_violated());

        let hybrid = PreferenceOracle::hybrid(3).unwrap();
        assert!(!check_weak_order(&hybrid, &grid).unwrap().is_violated());

        let majority = MajorityRule::new(3).unwrap();
        let verdict = check_weak_order(&majority, &GridSpec::new(6, 3).unwrap()).unwrap();
        let witness = verdict.witness().expect("majority rule cycles");
        assert!(matches!(witness, Witness::Intransitive { .. }));
        assert!(witness.replay(&majority));
        assert!(!witness.replay(&eu));
    }
}
