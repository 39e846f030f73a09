//! From indifference data to utilities and back.
//!
//! * [`elicit`] turns `n` indifferent lotteries spanning a hyperplane (plus
//!   an optional strict pair for orientation) into a gauge-fixed utility.
//! * [`generate_indifferent_points`] goes the other way: it produces such a
//!   spanning set for a given utility from the kernel of a `2 × (n+1)`
//!   system.
//! * [`construct_ip_via_solvability`] builds a spanning indifferent set for
//!   any oracle that can solve `α·p + (1 − α)·r ∼ q`.
//! * [`indifference_certificate`] explains why a lottery in the affine hull
//!   of indifferent points is itself indifferent, as a replayable chain of
//!   mixtures and one independence step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    affine_coefficients, affine_rank, hyperplane_from_points, kernel_basis, Hyperplane,
    RationalMatrix, Sign,
};
use crate::grid::exact_denominator;
use crate::lottery::{embed, mix_unchecked, EmbeddedPoint, Lottery};
use crate::preferences::{Comparison, Orientation, Preference, PreferenceOracle, UtilityFunction};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictPair {
    pub better: Lottery,
    pub worse: Lottery,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElicitationInput {
    /// `n` lotteries judged mutually indifferent.
    pub indifferent: Vec<Lottery>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict: Option<StrictPair>,
}

/// A hyperplane of indifference together with the utility it induces.
///
/// `utility` is `(0, orientation·normal₁, …, orientation·normalₙ)`. When
/// `oriented` is false no strict judgement fixed the direction and both
/// signs are admissible; `orientation` is then `Positive` by convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub utility: UtilityFunction,
    pub hyperplane: Hyperplane,
    pub orientation: Orientation,
    pub oriented: bool,
}

impl Representation {
    fn new(hyperplane: Hyperplane, orientation: Orientation, oriented: bool) -> Self {
        let factor = orientation.factor();
        let mut values = vec![Rational::zero()];
        values.extend(hyperplane.normal().coords().iter().map(|c| c * &factor));
        let utility = UtilityFunction::new(values).expect("n >= 1");
        Representation {
            utility,
            hyperplane,
            orientation,
            oriented,
        }
    }

    /// How `query` ranks against `reference`.
    pub fn classify(&self, reference: &Lottery, query: &Lottery) -> Result<Comparison> {
        classify(self, reference, query)
    }

    /// The represented preference; requires an orientation.
    pub fn oracle(&self) -> Result<PreferenceOracle> {
        if !self.oriented {
            return Err(Error::UnorientedRepresentation);
        }
        Ok(PreferenceOracle::represented(
            self.hyperplane.clone(),
            self.orientation,
        ))
    }
}

fn check_same_space<'a>(lotteries: impl IntoIterator<Item = &'a Lottery>) -> Result<usize> {
    let mut iter = lotteries.into_iter();
    let first = iter.next().ok_or(Error::EmptyInput)?;
    let count = first.outcome_count();
    for l in iter {
        if l.outcome_count() != count {
            return Err(Error::SpaceMismatch {
                left: count,
                right: l.outcome_count(),
            });
        }
    }
    Ok(count)
}

/// Recovers the hyperplane of indifference and a gauge-fixed utility.
pub fn elicit(input: &ElicitationInput) -> Result<Representation> {
    let strict_points = input.strict.iter().flat_map(|s| [&s.better, &s.worse]);
    let outcomes = check_same_space(input.indifferent.iter().chain(strict_points))?;
    let n = outcomes - 1;
    if input.indifferent.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            found: input.indifferent.len(),
        });
    }
    let embedded: Vec<EmbeddedPoint> = input.indifferent.iter().map(embed).collect();
    let hyperplane = hyperplane_from_points(&embedded)?;
    let Some(strict) = &input.strict else {
        return Ok(Representation::new(
            hyperplane,
            Orientation::Positive,
            false,
        ));
    };
    let gap = embed(&strict.better)
        .sub(&embed(&strict.worse))
        .dot(hyperplane.normal());
    let orientation = match Sign::of(&gap) {
        Sign::Positive => Orientation::Positive,
        Sign::Negative => Orientation::Negative,
        Sign::Zero => return Err(Error::InconsistentStrictPair),
    };
    Ok(Representation::new(hyperplane, orientation, true))
}

/// Side of the parallel hyperplane through `reference` on which `query`
/// lies, read through the representation's orientation.
pub fn classify(rep: &Representation, reference: &Lottery, query: &Lottery) -> Result<Comparison> {
    if !rep.oriented {
        return Err(Error::UnorientedRepresentation);
    }
    let outcomes = rep.hyperplane.dim() + 1;
    for l in [reference, query] {
        if l.outcome_count() != outcomes {
            return Err(Error::SpaceMismatch {
                left: outcomes,
                right: l.outcome_count(),
            });
        }
    }
    let shifted = rep.hyperplane.through(&embed(reference))?;
    let sign = crate::geometry::halfspace_classify(&embed(query), &shifted)?;
    Ok(Comparison::from_sign(rep.orientation.apply(sign)))
}

/// The linear system behind [`generate_indifferent_points`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelConstruction {
    /// Row 0 is `u(x₀) … u(xₙ)`, row 1 is all ones.
    pub matrix: RationalMatrix,
    pub mean_utility: Rational,
    /// The uniform lottery, a particular solution of `M·p = (ū, 1)`.
    pub base: Lottery,
    /// Kernel vectors `b₂ … bₙ` used for the perturbed points.
    pub basis: Vec<EmbeddedPoint>,
    /// Step `ε` with every `base + ε·b_k` inside the simplex; zero when no
    /// kernel vector is needed (`n = 1`).
    pub step: Rational,
}

/// `n` mutually indifferent lotteries at utility level `ū` whose embedded
/// affine hull is a hyperplane.
pub fn generate_indifferent_points(u: &UtilityFunction) -> (Vec<Lottery>, KernelConstruction) {
    let outcomes = u.outcome_count();
    let n = outcomes - 1;
    let matrix = RationalMatrix::new(vec![u.values().to_vec(), vec![Rational::one(); outcomes]])
        .expect("2 x (n+1) matrix");
    let base = Lottery::uniform(outcomes);
    let share = base.weight(0).clone();

    let mut basis = kernel_basis(&matrix);
    basis.truncate(n - 1);

    // Each kernel vector sums to zero, so every one has a negative entry.
    let max_step = basis
        .iter()
        .flat_map(|b| b.coords().iter())
        .filter(|c| c.is_negative())
        .map(|c| &share / &c.abs())
        .min();
    let step = max_step.map_or_else(Rational::zero, |m| m / Rational::integer(2));

    let mut points = vec![base.clone()];
    points.extend(basis.iter().map(|b| {
        Lottery::new_unchecked(
            base.weights()
                .iter()
                .zip(b.coords())
                .map(|(w, c)| w + &step * c)
                .collect(),
        )
    }));

    let construction = KernelConstruction {
        matrix,
        mean_utility: u.mean(),
        base,
        basis,
        step,
    };
    (points, construction)
}

fn in_affine_hull(x: &Lottery, points: &[Lottery]) -> bool {
    let embedded: Vec<EmbeddedPoint> = points.iter().map(embed).collect();
    affine_coefficients(&embed(x), &embedded)
        .expect("common dimension")
        .is_some()
}

fn embedded_rank(points: &[Lottery]) -> usize {
    let embedded: Vec<EmbeddedPoint> = points.iter().map(embed).collect();
    affine_rank(&embedded).expect("common dimension")
}

/// Scan order for the construction: the vertices in index order, then the
/// grid by ascending denominator.
fn candidates(outcomes: usize) -> impl Iterator<Item = Lottery> {
    (0..outcomes)
        .map(move |i| Lottery::vertex(outcomes, i))
        .chain((2u32..).flat_map(move |k| exact_denominator(outcomes, k)))
}

/// Builds `n` mutually indifferent lotteries spanning a hyperplane whose
/// affine hull avoids `p` and `r`, using only `compare` and `solve`.
pub fn construct_ip_via_solvability(
    oracle: &dyn Preference,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
) -> Result<Vec<Lottery>> {
    if !oracle.has_solve() {
        return Err(Error::NoSolveCapability);
    }
    if oracle.compare(p, q)? != Comparison::StrictlyBetter
        || oracle.compare(q, r)? != Comparison::StrictlyBetter
    {
        return Err(Error::PreconditionViolated(format!(
            "construction needs p ≻ q ≻ r, got p={p}, q={q}, r={r}"
        )));
    }
    let outcomes = oracle.outcome_count();
    let n = outcomes - 1;

    let on_segment = {
        let coeffs = affine_coefficients(&embed(q), &[embed(p), embed(r)])?;
        matches!(coeffs, Some(l) if l.iter().all(|c| !c.is_negative()))
    };
    let anchor = if on_segment {
        q.clone()
    } else {
        let alpha = oracle.solve(p, q, r)?;
        mix_unchecked(p, r, &alpha)
    };

    let mut chosen = vec![anchor.clone()];
    let mut scan = candidates(outcomes);
    while chosen.len() < n {
        let mut span = chosen.clone();
        span.push(p.clone());
        span.push(r.clone());
        let rank_before = embedded_rank(&chosen);
        let next = scan.by_ref().find_map(|s| {
            if in_affine_hull(&s, &span) {
                return None;
            }
            let candidate = match oracle.compare_unchecked(&s, &anchor) {
                Comparison::Indifferent => s,
                Comparison::StrictlyBetter => {
                    let alpha = oracle.solve(&s, &anchor, r).ok()?;
                    mix_unchecked(&s, r, &alpha)
                }
                Comparison::StrictlyWorse => {
                    let alpha = oracle.solve(p, &anchor, &s).ok()?;
                    mix_unchecked(p, &s, &alpha)
                }
            };
            let mut extended = chosen.clone();
            extended.push(candidate.clone());
            let admissible = oracle.compare_unchecked(&candidate, &anchor)
                == Comparison::Indifferent
                && embedded_rank(&extended) == rank_before + 1
                && !in_affine_hull(p, &extended)
                && !in_affine_hull(r, &extended);
            admissible.then_some(candidate)
        });
        chosen.push(next.expect("candidate scan is unbounded"));
    }
    Ok(chosen)
}

/// One application of convexity of indifference sets: `mixture =
/// alpha·left + (1 − alpha)·right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixStep {
    pub left: Lottery,
    pub right: Lottery,
    pub alpha: Rational,
    pub mixture: Lottery,
}

/// The independence step `reduced = α*·mean + (1 − α*)·target ∼
/// α*·reduced + (1 − α*)·target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceStep {
    pub lhs: Lottery,
    pub rhs: Lottery,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum CertificateBranch {
    /// All coefficients are nonnegative; `steps` mixes the points into the
    /// target one at a time.
    Convex { steps: Vec<MixStep> },
    Reduction {
        /// Smallest index attaining the minimal coefficient.
        k_star: usize,
        /// `−λ_{k*}`, positive.
        lambda_star: Rational,
        /// Equal-weight mean of the points.
        mean: Lottery,
        alpha_star: Rational,
        /// `α*·mean + (1 − α*)·target`, a convex combination of the points.
        reduced: Lottery,
        reduced_coefficients: Vec<Rational>,
        independence_step: IndependenceStep,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndifferenceCertificate {
    pub target: Lottery,
    pub points: Vec<Lottery>,
    /// `λ` with `Σλ = 1` and `Σλ_k·points[k] = target`.
    pub coefficients: Vec<Rational>,
    #[serde(flatten)]
    pub branch: CertificateBranch,
}

fn combination(coefficients: &[Rational], points: &[Lottery]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); points[0].outcome_count()];
    for (c, p) in coefficients.iter().zip(points) {
        if c.is_zero() {
            continue;
        }
        for (o, w) in out.iter_mut().zip(p.weights()) {
            *o += &(c * w);
        }
    }
    out
}

fn convex_chain(coefficients: &[Rational], points: &[Lottery]) -> Vec<MixStep> {
    let mut support = coefficients
        .iter()
        .zip(points)
        .filter(|(c, _)| c.is_positive());
    let (first_weight, first) = support.next().expect("coefficients sum to one");
    let mut mass = first_weight.clone();
    let mut current = first.clone();
    let mut steps = Vec::new();
    for (c, p) in support {
        let total = &mass + c;
        let alpha = &mass / &total;
        let mixture = mix_unchecked(&current, p, &alpha);
        steps.push(MixStep {
            left: current,
            right: p.clone(),
            alpha,
            mixture: mixture.clone(),
        });
        current = mixture;
        mass = total;
    }
    steps
}

/// Explains `target ∼ points[0]` from mutual indifference of `points`.
pub fn indifference_certificate(
    target: &Lottery,
    points: &[Lottery],
) -> Result<IndifferenceCertificate> {
    check_same_space(std::iter::once(target).chain(points))?;
    let embedded: Vec<EmbeddedPoint> = points.iter().map(embed).collect();
    let coefficients =
        affine_coefficients(&embed(target), &embedded)?.ok_or(Error::NotInAffineHull)?;

    if coefficients.iter().all(|c| !c.is_negative()) {
        let steps = convex_chain(&coefficients, points);
        return Ok(IndifferenceCertificate {
            target: target.clone(),
            points: points.to_vec(),
            coefficients,
            branch: CertificateBranch::Convex { steps },
        });
    }

    let m = Rational::integer(points.len() as i64);
    let min = coefficients.iter().min().expect("nonempty");
    let k_star = coefficients
        .iter()
        .position(|c| c == min)
        .expect("min exists");
    let lambda_star = -min;
    let mean = Lottery::new_unchecked(combination(&vec![m.recip(); points.len()], points));
    let scaled = &m * &lambda_star;
    let alpha_star = &scaled / (Rational::one() + &scaled);
    let reduced = mix_unchecked(&mean, target, &alpha_star);
    let reduced_coefficients = reduced_coefficients(&coefficients, &alpha_star);
    let rhs = mix_unchecked(&reduced, target, &alpha_star);

    Ok(IndifferenceCertificate {
        target: target.clone(),
        points: points.to_vec(),
        coefficients,
        branch: CertificateBranch::Reduction {
            k_star,
            lambda_star,
            mean,
            alpha_star,
            reduced: reduced.clone(),
            reduced_coefficients,
            independence_step: IndependenceStep { lhs: reduced, rhs },
        },
    })
}

fn reduced_coefficients(coefficients: &[Rational], alpha: &Rational) -> Vec<Rational> {
    let m = Rational::integer(coefficients.len() as i64);
    let share = alpha / &m;
    let rest = Rational::one() - alpha;
    coefficients.iter().map(|c| &share + &rest * c).collect()
}

impl IndifferenceCertificate {
    /// Re-checks every arithmetic claim exactly and every indifference claim
    /// against `oracle`.
    pub fn verify(&self, oracle: &dyn Preference) -> Result<()> {
        let reject = |why: String| Err(Error::CertificateRejected(why));
        let points = &self.points;
        if points.is_empty() {
            return reject("no points".into());
        }
        for l in std::iter::once(&self.target).chain(points) {
            oracle.check_space(l)?;
        }
        if self.coefficients.len() != points.len() {
            return reject("one coefficient per point required".into());
        }
        if !self.coefficients.iter().sum::<Rational>().is_one() {
            return reject("coefficients do not sum to one".into());
        }
        if combination(&self.coefficients, points) != self.target.weights() {
            return reject("coefficients do not reproduce the target".into());
        }
        let anchor = &points[0];
        let indifferent =
            |x: &Lottery| oracle.compare_unchecked(x, anchor) == Comparison::Indifferent;
        if let Some(bad) = points.iter().find(|x| !indifferent(x)) {
            return reject(format!("point {bad} is not indifferent to {anchor}"));
        }

        match &self.branch {
            CertificateBranch::Convex { steps } => {
                if self.coefficients.iter().any(Rational::is_negative) {
                    return reject("convex branch with a negative coefficient".into());
                }
                let support: Vec<&Lottery> = self
                    .coefficients
                    .iter()
                    .zip(points)
                    .filter(|(c, _)| c.is_positive())
                    .map(|(_, p)| p)
                    .collect();
                if steps.len() + 1 != support.len() {
                    return reject("chain length does not match the support".into());
                }
                let mut current = support[0];
                for (step, next) in steps.iter().zip(&support[1..]) {
                    if &step.left != current || &step.right != *next {
                        return reject("chain is not contiguous".into());
                    }
                    if step.alpha.is_negative() || step.alpha > Rational::one() {
                        return reject(format!("step weight {} outside [0, 1]", step.alpha));
                    }
                    if mix_unchecked(&step.left, &step.right, &step.alpha) != step.mixture {
                        return reject(format!("mixture {} is miscomputed", step.mixture));
                    }
                    if !indifferent(&step.mixture) {
                        return reject(format!("mixture {} is not indifferent", step.mixture));
                    }
                    current = &step.mixture;
                }
                if current != &self.target {
                    return reject("chain does not end at the target".into());
                }
            }
            CertificateBranch::Reduction {
                k_star,
                lambda_star,
                mean,
                alpha_star,
                reduced,
                reduced_coefficients: coeffs,
                independence_step,
            } => {
                let min = self.coefficients.iter().min().expect("nonempty");
                if self.coefficients.iter().position(|c| c == min) != Some(*k_star) {
                    return reject("k* is not the smallest minimising index".into());
                }
                if &-min != lambda_star || !lambda_star.is_positive() {
                    return reject("λ* must be the positive negation of the minimum".into());
                }
                let m = Rational::integer(points.len() as i64);
                if mean.weights() != combination(&vec![m.recip(); points.len()], points) {
                    return reject("mean is miscomputed".into());
                }
                let scaled = &m * lambda_star;
                if alpha_star != &(&scaled / (Rational::one() + &scaled)) {
                    return reject("α* is miscomputed".into());
                }
                if !alpha_star.is_positive() || alpha_star >= &Rational::one() {
                    return reject("α* outside (0, 1)".into());
                }
                if &mix_unchecked(mean, &self.target, alpha_star) != reduced {
                    return reject("reduced lottery is miscomputed".into());
                }
                if coeffs != &reduced_coefficients(&self.coefficients, alpha_star)
                    || coeffs.iter().any(Rational::is_negative)
                    || !coeffs[*k_star].is_zero()
                    || combination(coeffs, points) != reduced.weights()
                {
                    return reject(
                        "reduced coefficients are not a convex combination with a zero at k*"
                            .into(),
                    );
                }
                if !indifferent(mean) {
                    return reject("mean is not indifferent".into());
                }
                if !indifferent(reduced) {
                    return reject("reduced lottery is not indifferent".into());
                }
                if &independence_step.lhs != reduced
                    || independence_step.rhs != mix_unchecked(reduced, &self.target, alpha_star)
                {
                    return reject("independence step is miscomputed".into());
                }
                if oracle.compare_unchecked(&independence_step.lhs, &independence_step.rhs)
                    != Comparison::Indifferent
                {
                    return reject("independence step does not compare indifferent".into());
                }
            }
        }
        if !indifferent(&self.target) {
            return reject(format!("target {} is not indifferent", self.target));
        }
        Ok(())
    }
}
