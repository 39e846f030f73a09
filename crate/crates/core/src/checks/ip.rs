use crate::error::Result;
use crate::grid::GridSpec;
use crate::lottery::Lottery;
use crate::preferences::{Comparison, Preference};

use super::lemmas::embedded_rank;
use super::order::grid_for;
use super::{AxiomVerdict, Budget, Witness};

/// Searches the grid for `n` mutually indifferent lotteries whose embedded
/// affine hull is a hyperplane.
///
/// Indifference classes are grown greedily in enumeration order: a grid
/// point joins the first class whose representative it is indifferent to,
/// and is kept only if it raises that class's affine rank. A found set is
/// reported as `NoViolationFound` with the points as evidence; exhausting
/// the grid is reported as `Violated`.
pub fn check_ip(oracle: &dyn Preference, grid: &GridSpec) -> Result<AxiomVerdict> {
    let points = grid_for(oracle, grid)?;
    let n = oracle.outcome_count() - 1;
    let mut classes: Vec<Vec<Lottery>> = Vec::new();

    for s in points {
        let class = classes
            .iter_mut()
            .find(|c| oracle.compare_unchecked(&s, &c[0]) == Comparison::Indifferent);
        let members = match class {
            Some(members) => {
                members.push(s);
                if embedded_rank(members) + 1 != members.len() {
                    members.pop();
                    continue;
                }
                members
            }
            None => {
                classes.push(vec![s]);
                classes.last_mut().expect("just pushed")
            }
        };
        if members.len() == n {
            let points = members.clone();
            let rank = embedded_rank(&points);
            return Ok(AxiomVerdict::NoViolationFound {
                budget: Budget::grid(*grid),
                evidence: Some(Witness::IndifferentPoints { points, rank }),
            });
        }
    }

    let largest_class = classes
        .into_iter()
        .reduce(|best, c| if c.len() > best.len() { c } else { best })
        .expect("grid is never empty");
    let rank = embedded_rank(&largest_class);
    Ok(AxiomVerdict::Violated {
        witness: Witness::NoIndifferentPoints {
            largest_class,
            rank,
            required: n - 1,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lottery::lottery;
    use crate::preferences::{PreferenceOracle, UtilityFunction};

    fn found(verdict: &AxiomVerdict) -> Vec<Lottery> {
        match verdict {
            AxiomVerdict::NoViolationFound {
                evidence: Some(Witness::IndifferentPoints { points, .. }),
                ..
            } => points.clone(),
            other => panic!("expected a spanning set, got {other:?}"),
        }
    }

    #[test]
    fn ip_examples() {
        let eu =
            PreferenceOracle::expected_utility(UtilityFunction::from_integers(&[0, 1, 2]).unwrap());
        let verdict = check_ip(&eu, &GridSpec::new(4, 3).unwrap()).unwrap();
        let mut points = found(&verdict);
        points.sort();
        let mut expected = vec![lottery(&[(1, 2), (0, 1), (1, 2)]), Lottery::vertex(3, 1)];
        expected.sort();
        assert_eq!(points, expected);
        assert!(verdict.witness().unwrap().replay(&eu));

        let hybrid = PreferenceOracle::hybrid(3).unwrap();
        let verdict = check_ip(&hybrid, &GridSpec::new(2, 3).unwrap()).unwrap();
        assert_eq!(
            found(&verdict),
            vec![
                lottery(&[(1, 2), (1, 2), (0, 1)]),
                lottery(&[(1, 2), (0, 1), (1, 2)])
            ]
        );

        let lex = PreferenceOracle::lexicographic(vec![0, 1, 2]).unwrap();
        for d in [1, 4, 8] {
            let verdict = check_ip(&lex, &GridSpec::new(d, 3).unwrap()).unwrap();
            assert!(verdict.is_violated());
            assert!(verdict.witness().unwrap().replay(&lex));
        }
    }
}
