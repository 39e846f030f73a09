//! `indiff`: batch front end for elicitation, indifference certificates and
//! axiom falsification over finite lottery spaces.
//!
//! Exit codes: 0 on success or when a check finds no violation, 1 when a
//! check finds a violation or a replay fails, 2 on invalid input.

mod error;
mod render;
mod scenario;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use indiff_core::checks::{
    check_continuity, check_convex_indifference, check_independence, check_ip, check_line_order,
    check_translation_invariance, check_weak_order, AxiomVerdict, ContinuityKind,
    IndependenceVariant, SearchBudget, Witness,
};
use indiff_core::rational::parse_list;
use indiff_core::{
    classify, compare, construct_ip_via_solvability, elicit, generate_indifferent_points,
    indifference_certificate, ElicitationInput, GridSpec, IndifferenceCertificate, Lottery,
    Preference, PreferenceOracle, Representation, StrictPair, UtilityFunction,
};

use error::CliError;
use scenario::{Axiom, CheckRequest, Scenario};

#[derive(Debug, Parser)]
#[command(
    name = "indiff",
    version,
    about = "Exact expected-utility elicitation and axiom checks"
)]
struct Cli {
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleKind {
    Eu,
    Lex,
    Hybrid,
    /// The oriented representation elicited from the scenario.
    Represented,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Overrides the scenario's oracle.
    #[arg(long, global = true, value_enum)]
    oracle: Option<OracleKind>,
    /// Utility values, e.g. `0,1,2`.
    #[arg(long, global = true)]
    utility: Option<String>,
    /// Priority order for the lexicographic oracle, e.g. `2,0,1`.
    #[arg(long, global = true)]
    priority: Option<String>,
    /// Number of outcomes when nothing else fixes it.
    #[arg(long, global = true)]
    outcomes: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recover the hyperplane of indifference and a utility.
    Elicit {
        /// Indifferent lotteries separated by `;`.
        #[arg(long)]
        indifferent: Option<String>,
        #[arg(long)]
        better: Option<String>,
        #[arg(long)]
        worse: Option<String>,
    },
    /// Produce n mutually indifferent lotteries from a utility.
    Generate,
    /// Rank query lotteries against a reference.
    Classify {
        /// `uniform` or a lottery such as `1/2,1/4,1/4`.
        #[arg(long)]
        reference: Option<String>,
        #[arg(long = "query")]
        queries: Vec<String>,
    },
    /// Certify `target ∼ points[0]` and replay the certificate.
    Certify {
        #[arg(long)]
        target: Option<String>,
        /// Points separated by `;`.
        #[arg(long)]
        points: Option<String>,
    },
    /// Build indifferent points using only compare and solve.
    ConstructIp {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        r: Option<String>,
    },
    /// Scan a grid for axiom violations.
    Check {
        #[arg(long, value_enum)]
        axiom: Option<Axiom>,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        /// Continuity notion; all four when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Largest grid denominator.
        #[arg(long)]
        grid: Option<u32>,
        #[arg(long, default_value_t = SearchBudget::default().max_denominator)]
        max_denominator: u64,
        #[arg(long, default_value_t = SearchBudget::default().depth)]
        depth: u32,
    },
    /// Re-verify a verdict, witness or certificate file against the oracle.
    Replay {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    Independence,
    Betweenness,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    GridOpenness,
    Mixture,
    Archimedean,
    Solvability,
}

impl From<Variant> for IndependenceVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Independence => IndependenceVariant::Independence,
            Variant::Betweenness => IndependenceVariant::Betweenness,
        }
    }
}

impl From<Kind> for ContinuityKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::GridOpenness => ContinuityKind::GridOpenness,
            Kind::Mixture => ContinuityKind::Mixture,
            Kind::Archimedean => ContinuityKind::Archimedean,
            Kind::Solvability => ContinuityKind::Solvability,
        }
    }
}

struct Report {
    value: Value,
    failed: bool,
}

impl Report {
    fn ok(value: impl Serialize) -> Result<Report, CliError> {
        Ok(Report {
            value: to_value(value),
            failed: false,
        })
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("result types serialize")
}

fn parse_lottery(text: &str) -> Result<Lottery, CliError> {
    Ok(Lottery::new(parse_list(text)?)?)
}

fn parse_lotteries(text: &str) -> Result<Vec<Lottery>, CliError> {
    text.split(';').map(parse_lottery).collect()
}

fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("invalid index {s:?} in priority list")))
        })
        .collect()
}

fn missing(what: &str) -> CliError {
    CliError::Input(format!(
        "missing {what}: pass it as a flag or in the scenario"
    ))
}

struct Context {
    scenario: Scenario,
    args: OracleArgs,
}

impl Context {
    fn utility(&self) -> Result<Option<UtilityFunction>, CliError> {
        match &self.args.utility {
            Some(text) => Ok(Some(UtilityFunction::new(parse_list(text)?)?)),
            None => Ok(self.scenario.utility.clone()),
        }
    }

    fn outcome_count(&self) -> Result<Option<usize>, CliError> {
        Ok(self
            .args
            .outcomes
            .or(self.utility()?.map(|u| u.outcome_count()))
            .or(self.scenario.outcome_count()))
    }

    fn elicitation(&self) -> Result<&ElicitationInput, CliError> {
        self.scenario
            .elicitation
            .as_ref()
            .ok_or_else(|| missing("elicitation input"))
    }

    fn represented(&self) -> Result<PreferenceOracle, CliError> {
        Ok(elicit(self.elicitation()?)?.oracle()?)
    }

    fn oracle(&self) -> Result<PreferenceOracle, CliError> {
        let oracle = match self.args.oracle {
            Some(OracleKind::Eu) => PreferenceOracle::expected_utility(
                self.utility()?.ok_or_else(|| missing("utility"))?,
            ),
            Some(OracleKind::Lex) => {
                let priority = match &self.args.priority {
                    Some(text) => parse_indices(text)?,
                    None => (0..self.outcome_count()?.unwrap_or(3)).collect(),
                };
                PreferenceOracle::lexicographic(priority)?
            }
            Some(OracleKind::Hybrid) => {
                PreferenceOracle::hybrid(self.outcome_count()?.unwrap_or(3))?
            }
            Some(OracleKind::Represented) => self.represented()?,
            None => match (&self.scenario.oracle, self.utility()?) {
                (Some(oracle), _) => oracle.clone().validate()?,
                (None, Some(u)) => PreferenceOracle::expected_utility(u),
                (None, None) if self.scenario.elicitation.is_some() => self.represented()?,
                (None, None) => return Err(missing("oracle")),
            },
        };
        if let Some(count) = self.scenario.outcome_count() {
            if oracle.outcome_count() != count {
                return Err(CliError::Input(format!(
                    "oracle has {} outcomes, the scenario declares {count}",
                    oracle.outcome_count()
                )));
            }
        }
        Ok(oracle)
    }

    fn lottery(
        &self,
        flag: &Option<String>,
        fallback: Option<&Lottery>,
        what: &str,
    ) -> Result<Lottery, CliError> {
        match flag {
            Some(text) => parse_lottery(text),
            None => fallback.cloned().ok_or_else(|| missing(what)),
        }
    }
}

fn run_elicit(
    ctx: &Context,
    indifferent: &Option<String>,
    better: &Option<String>,
    worse: &Option<String>,
) -> Result<Report, CliError> {
    let input = match indifferent {
        Some(text) => {
            let strict = match (better, worse) {
                (Some(b), Some(w)) => Some(StrictPair {
                    better: parse_lottery(b)?,
                    worse: parse_lottery(w)?,
                }),
                (None, None) => None,
                _ => return Err(CliError::Input("--better and --worse go together".into())),
            };
            ElicitationInput {
                indifferent: parse_lotteries(text)?,
                strict,
            }
        }
        None => ctx.elicitation()?.clone(),
    };
    Report::ok(elicit(&input)?)
}

fn run_generate(ctx: &Context) -> Result<Report, CliError> {
    let u = ctx.utility()?.ok_or_else(|| missing("utility"))?;
    let (points, construction) = generate_indifferent_points(&u);
    Report::ok(json!({ "points": points, "construction": construction }))
}

fn run_classify(
    ctx: &Context,
    reference: &Option<String>,
    queries: &[String],
) -> Result<Report, CliError> {
    let scenario_queries = ctx.scenario.queries.as_ref();
    let reference = match reference.as_deref() {
        Some("uniform") => {
            let count = ctx
                .outcome_count()?
                .or_else(|| {
                    ctx.scenario
                        .elicitation
                        .as_ref()
                        .map(|e| e.indifferent.len() + 1)
                })
                .ok_or_else(|| missing("outcome count"))?;
            Lottery::uniform(count)
        }
        Some(text) => parse_lottery(text)?,
        None => scenario_queries
            .map(|q| q.reference.clone())
            .ok_or_else(|| missing("reference"))?,
    };
    let queries = if queries.is_empty() {
        scenario_queries
            .map(|q| q.lotteries.clone())
            .ok_or_else(|| missing("queries"))?
    } else {
        queries
            .iter()
            .map(|q| parse_lottery(q))
            .collect::<Result<_, _>>()?
    };

    // An explicit oracle wins; otherwise elicitation data is classified
    // geometrically.
    let representation: Option<Representation> = if ctx.args.oracle.is_none()
        && ctx.scenario.oracle.is_none()
        && ctx.scenario.elicitation.is_some()
    {
        Some(elicit(ctx.elicitation()?)?)
    } else {
        None
    };
    let oracle = match representation {
        Some(_) => None,
        None => Some(ctx.oracle()?),
    };
    let mut results = Vec::new();
    for query in &queries {
        let result = match (&representation, &oracle) {
            (Some(rep), _) => classify(rep, &reference, query)?,
            (None, Some(oracle)) => compare(oracle, query, &reference)?,
            (None, None) => unreachable!(),
        };
        results.push(json!({ "query": query, "result": result }));
    }
    Report::ok(json!({ "reference": reference, "results": results }))
}

fn run_certify(
    ctx: &Context,
    target: &Option<String>,
    points: &Option<String>,
) -> Result<Report, CliError> {
    let request = ctx.scenario.certify.as_ref();
    let target = ctx.lottery(target, request.map(|r| &r.target), "certificate target")?;
    let points = match points {
        Some(text) => parse_lotteries(text)?,
        None => match request.and_then(|r| r.points.clone()) {
            Some(points) => points,
            None => ctx.elicitation()?.indifferent.clone(),
        },
    };
    let certificate = indifference_certificate(&target, &points)?;
    let oracle = ctx.oracle()?;
    let replay = certificate.verify(&oracle);
    let failed = replay.is_err();
    let replay = match replay {
        Ok(()) => "ok".to_string(),
        Err(e) => format!("rejected: {e}"),
    };
    Ok(Report {
        value: json!({ "certificate": certificate, "replay": replay }),
        failed,
    })
}

fn run_construct(
    ctx: &Context,
    p: &Option<String>,
    q: &Option<String>,
    r: &Option<String>,
) -> Result<Report, CliError> {
    let request = ctx.scenario.construct.as_ref();
    let p = ctx.lottery(p, request.map(|c| &c.p), "p")?;
    let q = ctx.lottery(q, request.map(|c| &c.q), "q")?;
    let r = ctx.lottery(r, request.map(|c| &c.r), "r")?;
    let oracle = ctx.oracle()?;
    let points = construct_ip_via_solvability(&oracle, &p, &q, &r)?;
    Report::ok(json!({ "points": points }))
}

fn run_one_check(
    oracle: &PreferenceOracle,
    request: &CheckRequest,
    search: &SearchBudget,
) -> Result<Vec<(Value, AxiomVerdict)>, CliError> {
    let grid = GridSpec::new(request.grid, oracle.outcome_count())?;
    let describe = |extra: Value| {
        let mut v = json!({ "axiom": request.axiom, "grid": request.grid });
        if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
            map.extend(more);
        }
        v
    };
    let single = |verdict: AxiomVerdict| Ok(vec![(describe(json!({})), verdict)]);
    match request.axiom {
        Axiom::WeakOrder => single(check_weak_order(oracle, &grid)?),
        Axiom::Ip => single(check_ip(oracle, &grid)?),
        Axiom::ConvexIndifference => single(check_convex_indifference(oracle, &grid)?),
        Axiom::Translation => single(check_translation_invariance(oracle, &grid)?),
        Axiom::LineOrder => single(check_line_order(oracle, &grid)?),
        Axiom::Independence => {
            let variant = request.variant.unwrap_or(IndependenceVariant::Independence);
            let verdict = check_independence(oracle, &grid, variant)?;
            Ok(vec![(describe(json!({ "variant": variant })), verdict)])
        }
        Axiom::Continuity => {
            let kinds = match request.kind {
                Some(kind) => vec![kind],
                None => vec![
                    ContinuityKind::GridOpenness,
                    ContinuityKind::Mixture,
                    ContinuityKind::Archimedean,
                    ContinuityKind::Solvability,
                ],
            };
            kinds
                .into_iter()
                .map(|kind| {
                    let verdict = check_continuity(oracle, kind, &grid, search)?;
                    Ok((describe(json!({ "kind": kind })), verdict))
                })
                .collect()
        }
    }
}

fn run_check(
    ctx: &Context,
    axiom: Option<Axiom>,
    variant: Option<Variant>,
    kind: Option<Kind>,
    grid: Option<u32>,
    search: SearchBudget,
) -> Result<Report, CliError> {
    let requests = match axiom {
        Some(axiom) => vec![CheckRequest {
            axiom,
            variant: variant.map(Into::into),
            kind: kind.map(Into::into),
            grid: grid.ok_or_else(|| missing("--grid"))?,
        }],
        None if !ctx.scenario.checks.is_empty() => ctx.scenario.checks.clone(),
        None => return Err(missing("--axiom")),
    };
    let oracle = ctx.oracle()?;
    let mut results = Vec::new();
    let mut failed = false;
    for request in &requests {
        for (mut described, verdict) in run_one_check(&oracle, request, &search)? {
            failed |= verdict.is_violated();
            if let (Value::Object(map), Value::Object(v)) = (&mut described, to_value(&verdict)) {
                map.extend(v);
            }
            results.push(described);
        }
    }
    let value = if results.len() == 1 {
        results.pop().expect("one result")
    } else {
        json!({ "checks": results })
    };
    Ok(Report { value, failed })
}

fn run_replay(ctx: &Context, input: &PathBuf) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    // Accept a bare document or one nested under the keys used by `check`
    // and `certify` output.
    let inner = value
        .get("certificate")
        .or_else(|| value.get("witness"))
        .or_else(|| value.get("evidence"))
        .cloned()
        .unwrap_or(value.clone());
    let oracle = ctx.oracle()?;
    let (what, verdict) =
        if let Ok(cert) = serde_json::from_value::<IndifferenceCertificate>(inner.clone()) {
            (
                "certificate",
                cert.verify(&oracle).err().map(|e| e.to_string()),
            )
        } else if let Ok(witness) = serde_json::from_value::<Witness>(inner.clone()) {
            let ok = witness.replay(&oracle);
            (
                "witness",
                (!ok).then(|| "witness does not replay".to_string()),
            )
        } else if let Ok(verdict) = serde_json::from_value::<AxiomVerdict>(value) {
            match verdict.witness() {
                Some(w) => (
                    "witness",
                    (!w.replay(&oracle)).then(|| "witness does not replay".to_string()),
                ),
                None => ("verdict", None),
            }
        } else {
            return Err(CliError::Input(format!(
                "{} holds neither a certificate, a witness nor a verdict",
                input.display()
            )));
        };
    let failed = verdict.is_some();
    Ok(Report {
        value: json!({ "replayed": what, "result": verdict.unwrap_or_else(|| "ok".into()) }),
        failed,
    })
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let scenario = match &cli.scenario {
        Some(path) => Scenario::load(path)?,
        None => Scenario::default(),
    };
    let ctx = Context {
        scenario,
        args: cli.oracle,
    };
    let report = match &cli.command {
        Command::Elicit {
            indifferent,
            better,
            worse,
        } => run_elicit(&ctx, indifferent, better, worse)?,
        Command::Generate => run_generate(&ctx)?,
        Command::Classify { reference, queries } => run_classify(&ctx, reference, queries)?,
        Command::Certify { target, points } => run_certify(&ctx, target, points)?,
        Command::ConstructIp { p, q, r } => run_construct(&ctx, p, q, r)?,
        Command::Check {
            axiom,
            variant,
            kind,
            grid,
            max_denominator,
            depth,
        } => run_check(
            &ctx,
            *axiom,
            *variant,
            *kind,
            *grid,
            SearchBudget {
                max_denominator: *max_denominator,
                depth: *depth,
            },
        )?,
        Command::Replay { input } => run_replay(&ctx, input)?,
    };
    let output = match cli.format {
        Format::Text => render::text(&report.value),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.value).expect("values serialize");
            s.push('\n');
            s
        }
    };
    if let Some(path) = &cli.out {
        std::fs::write(path, &output)?;
    }
    Ok((output, report.failed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, failed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
