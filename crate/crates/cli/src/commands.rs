//! The `verify`, `axioms` and `lgroup` subcommands, as functions returning an
//! exit status and a JSON report.

use serde_json::{json, Value};

use regent_core::certificate::verify_json;
use regent_core::entailment::{
    check_derived_lemmas, check_regular_axioms, ConeBackend, EntailmentBackend, IntervalBackend,
    RawBackend, RegularisedBackend,
};
use regent_core::group::{DivisibilityGroup, ZdGroup};
use regent_core::lgroup::{check_cancellative, check_lgroup_laws, LGroup};
use regent_core::regularisation::Regulariser;
use regent_core::report::{AxiomReport, Truth};
use regent_core::sampling::{FieldSampler, Sampler, ZdSampler};
use regent_core::systems::check_system_axioms;
use regent_core::{Budget, DedekindSystem, MinimalSystem};

use crate::error::{exit, usage, CliError, CliResult};
use crate::instance::Instance;
use crate::lgexpr;

pub struct CommandOutcome {
    pub exit: i32,
    pub report: Value,
}

/// Replays a certificate document. Unreadable documents are usage errors.
pub fn verify(text: &str) -> CliResult<CommandOutcome> {
    if text.trim().is_empty() {
        return Err(usage("empty certificate file"));
    }
    let outcome = verify_json(text)?;
    Ok(CommandOutcome {
        exit: if outcome.valid {
            exit::HOLDS
        } else {
            exit::REFUTED
        },
        report: serde_json::to_value(&outcome)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    System,
    Regular,
    Lemmas,
    Cancellative,
    Lgroup,
}

#[derive(Clone, Debug)]
pub struct AxiomArgs {
    pub suite: Suite,
    pub system: String,
    pub backend: Option<String>,
    pub samples: usize,
    pub seed: u64,
    pub range: i64,
    pub budget: Budget,
    pub p_max: usize,
}

pub fn axioms(instance: &Instance, args: &AxiomArgs) -> CliResult<CommandOutcome> {
    let report = match instance {
        Instance::Zd(g) => {
            let mut sampler = ZdSampler::new(g.clone(), args.range, args.seed);
            if args.suite == Suite::System {
                match args.system.as_str() {
                    "sm" => check_system_axioms(
                        &MinimalSystem::new(g.clone()),
                        &mut sampler,
                        args.samples,
                    ),
                    other => {
                        return Err(usage(format!("system `{other}` is not available on Z^d")))
                    }
                }
            } else {
                match zd_backend(g, args.backend.as_deref(), args.budget)? {
                    ZdBackend::Cone(e) => run_suite(&e, &mut sampler, args),
                    ZdBackend::Interval(e) => run_suite(&e, &mut sampler, args),
                    ZdBackend::Lorenzen(e) => run_suite(&e, &mut sampler, args),
                    ZdBackend::Raw(e) => run_suite(&e, &mut sampler, args),
                }
            }
        }
        Instance::Field(g) => {
            let mut sampler = FieldSampler::new(g.clone(), args.seed);
            field_axioms(g, &mut sampler, args)?
        }
    };
    Ok(CommandOutcome {
        exit: if report.passed() {
            exit::HOLDS
        } else {
            exit::REFUTED
        },
        report: json!({
            "suite": format!("{:?}", args.suite).to_lowercase(),
            "subject": report.subject,
            "seed": report.seed,
            "samples": report.samples,
            "violations": report.violations(),
            "resolution_rate": report.resolution_rate(),
            "laws": report.laws,
            "text": report.to_string(),
        }),
    })
}

fn field_axioms(
    g: &DivisibilityGroup,
    sampler: &mut FieldSampler,
    args: &AxiomArgs,
) -> CliResult<AxiomReport> {
    Ok(match args.system.as_str() {
        "sm" => field_suite(MinimalSystem::new(g.clone()), sampler, args),
        "dedekind" => field_suite(DedekindSystem::new(g.clone()), sampler, args),
        other => {
            return Err(usage(format!(
                "unknown system `{other}` (expected sm or dedekind)"
            )))
        }
    })
}

fn field_suite<S>(s: S, sampler: &mut FieldSampler, args: &AxiomArgs) -> AxiomReport
where
    S: regent_core::SystemOfIdeals<Group = DivisibilityGroup>,
{
    match (args.suite, args.backend.as_deref()) {
        (Suite::System, _) => check_system_axioms(&s, sampler, args.samples),
        (_, Some("raw")) => run_suite(&RawBackend::new(s), sampler, args),
        _ => run_suite(
            &RegularisedBackend::new(Regulariser::new(s, vec![], args.budget)),
            sampler,
            args,
        ),
    }
}

enum ZdBackend {
    Cone(ConeBackend),
    Interval(IntervalBackend),
    Lorenzen(RegularisedBackend<MinimalSystem<ZdGroup>>),
    Raw(RawBackend<MinimalSystem<ZdGroup>>),
}

fn zd_backend(g: &ZdGroup, backend: Option<&str>, budget: Budget) -> CliResult<ZdBackend> {
    let discrete = g.is_discrete() && g.rank() == 1;
    let name = backend.unwrap_or(if discrete { "interval" } else { "lcd" });
    Ok(match name {
        "lcd" => ZdBackend::Cone(ConeBackend::new(g.clone())),
        "interval" if discrete => ZdBackend::Interval(IntervalBackend::new()),
        "interval" => return Err(usage("the interval backend needs the discrete order on Z")),
        "lorenzen" => ZdBackend::Lorenzen(RegularisedBackend::new(Regulariser::new(
            MinimalSystem::new(g.clone()),
            vec![],
            budget,
        ))),
        "raw" => ZdBackend::Raw(RawBackend::new(MinimalSystem::new(g.clone()))),
        other => {
            return Err(usage(format!(
                "unknown backend `{other}` (expected lcd, interval, lorenzen or raw)"
            )))
        }
    })
}

fn run_suite<B, R>(e: &B, sampler: &mut R, args: &AxiomArgs) -> AxiomReport
where
    B: EntailmentBackend,
    R: Sampler<B::Group>,
{
    match args.suite {
        Suite::Regular => check_regular_axioms(e, sampler, args.samples),
        Suite::Lemmas => check_derived_lemmas(e, sampler, args.samples, args.p_max),
        Suite::Cancellative => check_cancellative(e, sampler, args.samples),
        Suite::Lgroup => check_lgroup_laws(&LGroup::new(e), sampler, args.samples),
        Suite::System => unreachable!("system suites do not use a backend"),
    }
}

/// Evaluates `expr`, and compares it with `leq` when given.
pub fn lgroup(
    instance: &Instance,
    backend: Option<&str>,
    budget: Budget,
    expr: &str,
    leq: Option<&str>,
) -> CliResult<CommandOutcome> {
    let Instance::Zd(g) = instance else {
        return Err(usage(
            "l-group expressions are over phi of integers and need a Z instance",
        ));
    };
    if g.rank() != 1 {
        return Err(usage("l-group expressions need a rank one group"));
    }
    let e = lgexpr::parse(expr)?;
    let other = leq.map(lgexpr::parse).transpose()?;
    match zd_backend(g, backend, budget)? {
        ZdBackend::Cone(b) => lgroup_with(LGroup::new(b), &e, other.as_ref()),
        ZdBackend::Interval(b) => lgroup_with(LGroup::new(b), &e, other.as_ref()),
        ZdBackend::Lorenzen(b) => lgroup_with(LGroup::new(b), &e, other.as_ref()),
        ZdBackend::Raw(b) => lgroup_with(LGroup::new(b), &e, other.as_ref()),
    }
}

fn lgroup_with<B>(
    lg: LGroup<B>,
    e: &lgexpr::Expr,
    other: Option<&lgexpr::Expr>,
) -> CliResult<CommandOutcome>
where
    B: EntailmentBackend<Group = ZdGroup>,
{
    let x = lgexpr::eval(&lg, e);
    let int = |v: num_bigint::BigInt| {
        serde_json::from_str::<Value>(&v.to_string()).expect("integers are JSON")
    };
    let pair = |v| lg.to_pair(v).ok().map(|(m, n)| json!([int(m), int(n)]));
    let mut report = json!({
        "backend": lg.backend().name(),
        "element": x,
        "display": x.to_string(),
        "pair": pair(&x),
    });
    let mut code = exit::HOLDS;
    if let Some(o) = other {
        let y = lgexpr::eval(&lg, o);
        let t = lg.leq(&x, &y);
        report["other"] = json!({"element": y, "display": y.to_string(), "pair": pair(&y)});
        report["leq"] = json!(t);
        code = match t {
            Truth::True => exit::HOLDS,
            Truth::False => exit::REFUTED,
            Truth::Unknown => exit::UNKNOWN,
        };
    }
    Ok(CommandOutcome { exit: code, report })
}

impl From<CliError> for CommandOutcome {
    fn from(e: CliError) -> Self {
        CommandOutcome {
            exit: exit::USAGE,
            report: json!({"error": e.to_string()}),
        }
    }
}
