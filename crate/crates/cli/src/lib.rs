//! Command-line front end. [`run`] parses argv and returns the exit code and
//! everything destined for standard output, so it can be tested in-process.
//!
//! Exit codes: 0 on success, 2 for bad flags and precondition errors, 1 for
//! internal invariant violations. Errors are written as JSON objects.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cuspforge_core::arith::{delta_d, subgroup_generated, DeltaSubgroup};
use cuspforge_core::criteria::{survey_x1, x0_verdict, x1_verdict, SurveyReport};
use cuspforge_core::cusps::{atlas, AtlasRecord};
use cuspforge_core::etaq::{self, divisor, eta_series, EtaQuotient, QuotientSpec};
use cuspforge_core::genus::genus_delta;
use cuspforge_core::symmetry::cusp_orbits;
use cuspforge_core::{Error, GroupTag, Level, Verdict};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "cuspforge", version, about = "Cusps, genera and Weierstrass verdicts for modular curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genus of X_1(N), X_0(N) or X_Delta(N)
    Genus(GenusArgs),
    /// List the cusps of a modular curve
    Cusps(CuspsArgs),
    /// Orbits of X_1(N) cusps under diamonds and Atkin-Lehner operators
    Orbits(OrbitsArgs),
    /// Weierstrass verdicts for irregular cusps
    #[command(subcommand)]
    Verdict(VerdictCommand),
    /// Verdicts for every level up to a bound
    #[command(subcommand)]
    Survey(SurveyCommand),
    /// Generalized eta functions and quotients
    #[command(subcommand)]
    Eta(EtaCommand),
    /// Recompute a stored certificate
    #[command(subcommand)]
    Certify(CertifyCommand),
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupName {
    Gamma0,
    Gamma1,
    Delta,
}

#[derive(Debug, Args)]
#[group(id = "subgroup", multiple = false)]
struct SubgroupArgs {
    /// X_1(N), the default
    #[arg(long, group = "subgroup")]
    gamma1: bool,
    /// X_0(N)
    #[arg(long, group = "subgroup")]
    gamma0: bool,
    /// X_Delta(N) for Delta generated by -1 and these units
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, group = "subgroup")]
    gens: Option<Vec<i64>>,
    /// X_Delta(N) for Delta = Delta_d
    #[arg(long, value_name = "D", group = "subgroup")]
    delta_d: Option<u64>,
}

#[derive(Debug, Args)]
struct GenusArgs {
    #[arg(long)]
    level: u64,
    #[command(flatten)]
    subgroup: SubgroupArgs,
}

#[derive(Debug, Args)]
struct CuspsArgs {
    #[arg(long)]
    level: u64,
    #[arg(long, value_enum, default_value = "gamma1")]
    group: GroupName,
    /// Generators of Delta for `--group delta`
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "delta_d")]
    gens: Option<Vec<i64>>,
    /// Use Delta_d for `--group delta`
    #[arg(long, value_name = "D")]
    delta_d: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct OrbitsArgs {
    #[arg(long)]
    level: u64,
    /// Orbits on X_0(N) instead of X_1(N)
    #[arg(long)]
    gamma0: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum VerdictCommand {
    /// Irregular cusps of X_1(N) with invariant d
    X1 {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        d: u64,
    },
    /// Irregular cusps of X_0(p^2 M) equivalent to (1 : p)
    X0 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Debug, Subcommand)]
enum SurveyCommand {
    /// Every irregular d for every N <= max with g_1(N) >= 2
    X1 {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Worker threads; falls back to CUSPFORGE_JOBS, then to all cores
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum EtaCommand {
    /// q-expansion of E_r
    Series {
        #[arg(long)]
        level: u64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        /// Integral q-steps past the leading term (default 10 N)
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Divisor on X_1(N) of a quotient read from a JSON spec file
    Div {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CertifyCommand {
    /// Weierstrass certificate for the irregular cusps of X_1(20)
    #[command(name = "x1-20")]
    X1Level20,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub version: String,
}

#[derive(Debug, Serialize)]
struct ErrorObject {
    kind: String,
    message: String,
}

#[derive(Debug, Serialize)]
struct ErrorEnvelope {
    command: Option<String>,
    error: ErrorObject,
    version: String,
}

/// A failed command: exit code plus a structured error.
struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_internal() { 1 } else { 2 },
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn precondition(kind: &str, message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: kind.to_string(),
            message: message.into(),
        }
    }
}

enum Output {
    Envelope(OutputEnvelope),
    Text(String),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize to JSON")
}

fn envelope(command: &str, params: Value, result: Value) -> Output {
    Output::Envelope(OutputEnvelope {
        command: command.to_string(),
        params,
        result,
        version: VERSION.to_string(),
    })
}

fn level(n: u64) -> Result<Level, Failure> {
    Ok(Level::new(n)?)
}

/// Parse argv (including the program name) and execute the command.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    error_output(None, Failure::precondition("UnknownCommand", first_line(&e.to_string())))
                }
                _ => error_output(None, Failure::precondition("BadFlag", first_line(&e.to_string()))),
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(cli.command) {
        Ok(Output::Envelope(env)) => {
            let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
            s.push('\n');
            (0, s)
        }
        Ok(Output::Text(t)) => (0, t),
        Err(f) => error_output(Some(name), f),
    }
}

fn first_line(s: &str) -> String {
    s.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string()
}

fn error_output(command: Option<String>, f: Failure) -> (i32, String) {
    let env = ErrorEnvelope {
        command,
        error: ErrorObject {
            kind: f.kind,
            message: f.message,
        },
        version: VERSION.to_string(),
    };
    let mut s = serde_json::to_string_pretty(&env).expect("error serializes");
    s.push('\n');
    (f.code, s)
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Genus(_) => "genus".into(),
        Command::Cusps(_) => "cusps".into(),
        Command::Orbits(_) => "orbits".into(),
        Command::Verdict(VerdictCommand::X1 { .. }) => "verdict x1".into(),
        Command::Verdict(VerdictCommand::X0 { .. }) => "verdict x0".into(),
        Command::Survey(_) => "survey x1".into(),
        Command::Eta(EtaCommand::Series { .. }) => "eta series".into(),
        Command::Eta(EtaCommand::Div { .. }) => "eta div".into(),
        Command::Certify(_) => "certify x1-20".into(),
    }
}

fn execute(command: Command) -> Result<Output, Failure> {
    let name = command_name(&command);
    match command {
        Command::Genus(args) => genus(&name, args),
        Command::Cusps(args) => cusps(&name, args),
        Command::Orbits(args) => orbits(&name, args),
        Command::Verdict(VerdictCommand::X1 { level: n, d }) => {
            let v = x1_verdict(level(n)?, d)?;
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(rename = "N")]
                level: u64,
                d: u64,
                #[serde(flatten)]
                verdict: &'a Verdict,
            }
            Ok(envelope(&name, json!({"level": n, "d": d}), to_value(&Out { level: n, d, verdict: &v })))
        }
        Command::Verdict(VerdictCommand::X0 { p, m }) => {
            let v = x0_verdict(p, m)?;
            #[derive(Serialize)]
            struct Out<'a> {
                p: u64,
                #[serde(rename = "M")]
                m: u64,
                #[serde(rename = "N")]
                level: u64,
                #[serde(flatten)]
                verdict: &'a Verdict,
            }
            let out = Out {
                p,
                m,
                level: p * p * m,
                verdict: &v,
            };
            Ok(envelope(&name, json!({"p": p, "m": m}), to_value(&out)))
        }
        Command::Survey(SurveyCommand::X1 { max, format, jobs }) => survey(&name, max, format, jobs),
        Command::Eta(EtaCommand::Series { level: n, r, terms }) => {
            let lv = level(n)?;
            let terms = terms.unwrap_or_else(|| etaq::default_terms(lv));
            let s = eta_series(lv, r, terms)?;
            Ok(envelope(&name, json!({"level": n, "r": r, "terms": terms}), to_value(&s)))
        }
        Command::Eta(EtaCommand::Div { spec }) => eta_div(&name, spec),
        Command::Certify(CertifyCommand::X1Level20) => {
            let cert = etaq::certify_x1_20()?;
            Ok(envelope(&name, json!({}), to_value(&cert)))
        }
    }
}

fn subgroup(lv: Level, gamma0: bool, gens: Option<Vec<i64>>, dd: Option<u64>) -> Result<(String, DeltaSubgroup), Failure> {
    Ok(match (gamma0, gens, dd) {
        (true, _, _) => ("Gamma0".into(), DeltaSubgroup::full(lv)),
        (_, Some(g), _) => ("GammaDelta".into(), subgroup_generated(lv, &g)?),
        (_, _, Some(d)) => ("GammaDelta".into(), delta_d(lv, d)?),
        _ => ("Gamma1".into(), DeltaSubgroup::plus_minus_one(lv)),
    })
}

fn genus(name: &str, args: GenusArgs) -> Result<Output, Failure> {
    let lv = level(args.level)?;
    let SubgroupArgs { gamma0, gens, delta_d: dd, .. } = args.subgroup;
    let (group, delta) = subgroup(lv, gamma0, gens, dd)?;
    let profile = genus_delta(lv, &delta)?;
    let mut params = json!({"level": args.level, "group": group});
    if group == "GammaDelta" {
        params["delta"] = to_value(&delta.elements());
    }
    Ok(envelope(name, params, to_value(&profile)))
}

fn group_tag(lv: Level, group: GroupName, gens: Option<Vec<i64>>, dd: Option<u64>) -> Result<GroupTag, Failure> {
    match group {
        GroupName::Gamma0 => Ok(GroupTag::Gamma0),
        GroupName::Gamma1 => Ok(GroupTag::Gamma1),
        GroupName::Delta => {
            if gens.is_none() && dd.is_none() {
                return Err(Failure::precondition("BadFlag", "--group delta needs --gens or --delta-d"));
            }
            let (_, delta) = subgroup(lv, false, gens, dd)?;
            Ok(GroupTag::delta(lv, delta)?)
        }
    }
}

fn records_tsv(records: &[AtlasRecord]) -> String {
    let mut out = String::from("x\ty\td\te\tirregular\twidth\tplus_sign\torbit_size\n");
    for r in records {
        let orbit = r.orbit_size.map(|s| s.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.x, r.y, r.d, r.e, r.irregular, r.width, r.plus_sign, orbit
        );
    }
    out
}

fn cusps(name: &str, args: CuspsArgs) -> Result<Output, Failure> {
    let lv = level(args.level)?;
    let tag = group_tag(lv, args.group, args.gens.clone(), args.delta_d)?;
    let records = atlas(lv, &tag).records();
    match args.format {
        Format::Tsv => Ok(Output::Text(records_tsv(&records))),
        Format::Json => {
            let mut params = json!({"level": args.level, "group": tag.name()});
            if let GroupTag::GammaDelta(d) = &tag {
                params["delta"] = to_value(&d.elements());
            }
            Ok(envelope(
                name,
                params,
                json!({"N": args.level, "count": records.len(), "cusps": records}),
            ))
        }
    }
}

fn orbits(name: &str, args: OrbitsArgs) -> Result<Output, Failure> {
    let lv = level(args.level)?;
    let group = if args.gamma0 { GroupTag::Gamma0 } else { GroupTag::Gamma1 };
    let report = cusp_orbits(lv, &group)?;
    match args.format {
        Format::Tsv => {
            let mut out = String::from("orbit\tcusp\td\te\n");
            for (i, orbit) in report.orbits.iter().enumerate() {
                for c in orbit {
                    let _ = writeln!(out, "{i}\t{}\t{}\t{}", c.key(), c.d(), c.e());
                }
            }
            Ok(Output::Text(out))
        }
        Format::Json => Ok(envelope(
            name,
            json!({"level": args.level, "group": group.name()}),
            to_value(&report),
        )),
    }
}

fn jobs_setting(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(j) = flag {
        return Ok(Some(j));
    }
    match std::env::var("CUSPFORGE_JOBS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::precondition("BadFlag", format!("CUSPFORGE_JOBS={v:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn survey_tsv(report: &SurveyReport) -> String {
    let mut out = String::from("N\td\treduced_d\te\tstatus\tweight\trule\n");
    for r in &report.rows {
        let weight = r.weight.map(|w| w.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{:?}\t{}\t{}",
            r.level, r.d, r.reduced_d, r.e, r.status, weight, r.rule
        );
    }
    for (e, levels) in &report.cusp_inequality_failures {
        let list: Vec<String> = levels.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "# cusp inequality fails for e={e}: {}", list.join(","));
    }
    out
}

fn survey(name: &str, max: u64, format: Format, jobs: Option<usize>) -> Result<Output, Failure> {
    let jobs = jobs_setting(jobs)?;
    if jobs == Some(0) {
        return Err(Failure::precondition("BadFlag", "--jobs must be positive"));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::precondition("BadFlag", format!("cannot start {jobs:?} workers: {e}")))?;
    let report = pool.install(|| survey_x1(max))?;
    match format {
        Format::Tsv => Ok(Output::Text(survey_tsv(&report))),
        Format::Json => Ok(envelope(name, json!({"max": max}), to_value(&report))),
    }
}

fn eta_div(name: &str, path: PathBuf) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::precondition("Io", format!("{}: {e}", path.display())))?;
    let spec: QuotientSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::precondition("BadSpec", format!("{}: {e}", path.display())))?;
    let q = EtaQuotient::from_spec(&spec)?;
    let div = divisor(&q)?;
    let part = |m: std::collections::BTreeMap<cuspforge_core::CuspClass, i64>| -> Value {
        Value::Array(m.into_iter().map(|(c, o)| json!({"cusp": c.key(), "order": o})).collect())
    };
    Ok(envelope(
        name,
        json!({"spec": path.display().to_string()}),
        json!({
            "quotient": to_value(&q),
            "divisor": to_value(&div),
            "pole_part": part(div.pole_part()),
            "zero_part": part(div.zero_part()),
        }),
    ))
}
