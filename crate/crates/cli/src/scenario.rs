//! Scenario files: one JSON document holding the outcome space and whatever
//! inputs the subcommands need. Rationals are canonical strings throughout.

use std::path::Path;

use serde::{Deserialize, Serialize};

use indiff_core::checks::{ContinuityKind, IndependenceVariant};
use indiff_core::{ElicitationInput, Lottery, OutcomeSpace, PreferenceOracle, UtilityFunction};

use crate::error::CliError;

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub outcomes: Option<OutcomeSpace>,
    #[serde(default)]
    pub utility: Option<UtilityFunction>,
    #[serde(default)]
    pub oracle: Option<PreferenceOracle>,
    #[serde(default)]
    pub elicitation: Option<ElicitationInput>,
    #[serde(default)]
    pub queries: Option<Queries>,
    #[serde(default)]
    pub certify: Option<CertifyRequest>,
    #[serde(default)]
    pub construct: Option<ConstructRequest>,
    #[serde(default)]
    pub checks: Vec<CheckRequest>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Queries {
    pub reference: Lottery,
    pub lotteries: Vec<Lottery>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyRequest {
    pub target: Lottery,
    /// Defaults to the elicitation's indifferent points.
    #[serde(default)]
    pub points: Option<Vec<Lottery>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructRequest {
    pub p: Lottery,
    pub q: Lottery,
    pub r: Lottery,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    WeakOrder,
    Independence,
    Ip,
    Continuity,
    ConvexIndifference,
    Translation,
    LineOrder,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRequest {
    pub axiom: Axiom,
    #[serde(default)]
    pub variant: Option<IndependenceVariant>,
    #[serde(default)]
    pub kind: Option<ContinuityKind>,
    pub grid: u32,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let scenario: Scenario = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("scenario {}: {e}", path.display())))?;
        scenario.validate()?;
        Ok(scenario)
    }

    /// Number of outcomes declared by the scenario, if any part fixes it.
    pub fn outcome_count(&self) -> Option<usize> {
        self.outcomes
            .as_ref()
            .map(OutcomeSpace::outcome_count)
            .or_else(|| self.utility.as_ref().map(UtilityFunction::outcome_count))
    }

    fn lotteries(&self) -> Vec<(&'static str, &Lottery)> {
        let mut out = Vec::new();
        if let Some(e) = &self.elicitation {
            out.extend(e.indifferent.iter().map(|l| ("elicitation.indifferent", l)));
            if let Some(s) = &e.strict {
                out.push(("elicitation.strict.better", &s.better));
                out.push(("elicitation.strict.worse", &s.worse));
            }
        }
        if let Some(qs) = &self.queries {
            out.push(("queries.reference", &qs.reference));
            out.extend(qs.lotteries.iter().map(|l| ("queries.lotteries", l)));
        }
        if let Some(c) = &self.certify {
            out.push(("certify.target", &c.target));
            out.extend(c.points.iter().flatten().map(|l| ("certify.points", l)));
        }
        if let Some(c) = &self.construct {
            out.extend([
                ("construct.p", &c.p),
                ("construct.q", &c.q),
                ("construct.r", &c.r),
            ]);
        }
        out
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.version != VERSION {
            return Err(CliError::Input(format!(
                "unsupported scenario version {} (expected {VERSION})",
                self.version
            )));
        }
        let Some(count) = self.outcome_count() else {
            return Err(CliError::Input(
                "scenario declares neither outcomes nor a utility".into(),
            ));
        };
        let mismatch = |field: &str, found: usize| {
            CliError::Input(format!(
                "{field} has {found} outcomes, the scenario declares {count}"
            ))
        };
        if let Some(u) = &self.utility {
            if u.outcome_count() != count {
                return Err(mismatch("utility", u.outcome_count()));
            }
        }
        if let Some(oracle) = &self.oracle {
            use indiff_core::Preference;
            let oracle = oracle.clone().validate()?;
            if oracle.outcome_count() != count {
                return Err(mismatch("oracle", oracle.outcome_count()));
            }
        }
        for (field, lottery) in self.lotteries() {
            if lottery.outcome_count() != count {
                return Err(mismatch(field, lottery.outcome_count()));
            }
        }
        Ok(())
    }
}
