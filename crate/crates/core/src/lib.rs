//! Exact-arithmetic tools for preferences over finite lotteries: hyperplane
//! elicitation of expected-utility representations, indifference
//! certificates, and grid falsifiers for the classical axioms.

pub mod checks;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod lottery;
pub mod preferences;
pub mod rational;
pub mod representation;

pub use error::{Error, Result};
pub use geometry::{
    affine_coefficients, affine_rank, halfspace_classify, hyperplane_from_points, kernel_basis,
    Hyperplane, RationalMatrix, Sign,
};
pub use grid::GridSpec;
pub use lottery::{embed, make_lottery, mix, unembed, EmbeddedPoint, Lottery, OutcomeSpace};
pub use preferences::{
    compare, expected_utility, solve, Comparison, MajorityRule, Orientation, Preference,
    PreferenceOracle, UtilityFunction,
};
pub use rational::Rational;
pub use representation::{
    classify, construct_ip_via_solvability, elicit, generate_indifferent_points,
    indifference_certificate, ElicitationInput, IndifferenceCertificate, Representation,
    StrictPair,
};
