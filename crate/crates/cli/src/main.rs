use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use residua::catalog::load_corpus;
use residua::classes::{member, GroupClass};
use residua::constants::run_constants;
use residua::groupfile::GroupFile;
use residua::resrad::{poly_radical, poly_residual, radical, residual, InequalityReport, Verdict};
use residua::section::{composition_factors, Section};
use residua::selftest::{run_selftest, verify_corpus};
use residua::sharpness::{
    convergence_report, shipped_instance, verify_sharpness_instance, SharpnessConfig,
};
use residua::{Caps, Context, Error, Execution, GroupHandle, Permutation};

#[derive(Parser)]
#[command(
    name = "residua",
    version,
    about = "Residuals, radicals and extension-closures of finite permutation groups"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Largest group order whose elements may be enumerated.
    #[arg(long, global = true, default_value_t = Caps::default().element_cap)]
    element_cap: u64,
    /// Largest group order whose subgroup lattice may be built.
    #[arg(long, global = true, default_value_t = Caps::default().subgroup_cap)]
    subgroup_cap: u64,
    /// Largest permutation degree.
    #[arg(long, global = true, default_value_t = Caps::default().degree_cap)]
    degree_cap: usize,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute m0, c0, n0, beta, lambda and gamma for a class.
    Constants { class: String },
    /// Check the main inequality on group files, or on the bundled corpus when none are given.
    Verify { class: String, files: Vec<PathBuf> },
    /// Residual of a group; `--poly` gives the residual for the extension-closure.
    Residual {
        class: String,
        file: PathBuf,
        #[arg(long)]
        poly: bool,
    },
    /// Radical of a group; `--poly` gives the radical for the extension-closure.
    Radical {
        class: String,
        file: PathBuf,
        #[arg(long)]
        poly: bool,
    },
    /// Composition factors and membership in the built-in classes.
    Classify { file: PathBuf },
    /// The gamma_r sequence and the structural instance check.
    Sharpness {
        class: String,
        /// Depth of the iterated wreath tower whose orders are checked.
        #[arg(long, default_value_t = 2)]
        levels: u32,
        /// Largest r; defaults to nu^10.
        #[arg(long)]
        r_max: Option<u64>,
    },
    /// Run every property suite.
    Selftest,
}

#[derive(Clone, Serialize)]
struct Manifest {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<String>,
    inputs: Vec<String>,
    caps: Caps,
    execution: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<String>,
    exit_status: u8,
}

#[derive(Serialize)]
struct Document<T: Serialize> {
    manifest: Manifest,
    report: T,
}

#[derive(Serialize)]
struct SubgroupReport {
    group: String,
    class: String,
    order: String,
    subgroup_order: String,
    generators: Vec<String>,
    tower_orders: Vec<String>,
}

#[derive(Serialize)]
struct Membership {
    class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct ClassifyReport {
    group: String,
    degree: usize,
    order: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    composition_factors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    composition_note: Option<String>,
    memberships: Vec<Membership>,
}

#[derive(Serialize)]
struct VerifyReport {
    class: String,
    gamma: String,
    gamma_upper: String,
    gamma_lower: String,
    passed: usize,
    failed: usize,
    inconclusive: usize,
    not_applicable: usize,
    groups: Vec<InequalityReport>,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SCALE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::DegreeCap { .. } | Error::Undecidable(_) => EXIT_SCALE,
        _ => EXIT_INPUT,
    }
}

fn load_group(path: &Path, caps: &Caps) -> residua::Result<(String, GroupHandle)> {
    let gf = GroupFile::load(path)?;
    let g = gf.to_handle(caps)?;
    Ok((gf.name.unwrap_or_else(|| path.display().to_string()), g))
}

fn subgroup_report(
    name: &str,
    class: String,
    g: &GroupHandle,
    s: &GroupHandle,
    tower: &[GroupHandle],
) -> SubgroupReport {
    SubgroupReport {
        group: name.into(),
        class,
        order: g.order().to_string(),
        subgroup_order: s.order().to_string(),
        generators: s
            .generators()
            .iter()
            .map(|p| p.to_cycle_string(true))
            .collect(),
        tower_orders: tower.iter().map(|t| t.order().to_string()).collect(),
    }
}

struct Outcome {
    body: String,
    status: u8,
}

fn emit<T: Serialize>(mut manifest: Manifest, report: T, status: u8) -> Outcome {
    manifest.exit_status = status;
    let body = toml::to_string(&Document { manifest, report }).expect("report serializes");
    Outcome { body, status }
}

fn run(cli: &Cli) -> Result<Outcome, (Error, Box<Manifest>)> {
    let o = &cli.opts;
    let caps = Caps {
        element_cap: o.element_cap,
        subgroup_cap: o.subgroup_cap,
        degree_cap: o.degree_cap,
    };
    let exec = if o.sequential || !residua::par::available() {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let (command, class, inputs): (&str, Option<&String>, Vec<String>) = match &cli.cmd {
        Command::Constants { class } => ("constants", Some(class), vec![]),
        Command::Verify { class, files } => (
            "verify",
            Some(class),
            files.iter().map(|f| f.display().to_string()).collect(),
        ),
        Command::Residual { class, file, poly } => (
            if *poly { "residual --poly" } else { "residual" },
            Some(class),
            vec![file.display().to_string()],
        ),
        Command::Radical { class, file, poly } => (
            if *poly { "radical --poly" } else { "radical" },
            Some(class),
            vec![file.display().to_string()],
        ),
        Command::Classify { file } => ("classify", None, vec![file.display().to_string()]),
        Command::Sharpness { class, levels, .. } => {
            ("sharpness", Some(class), vec![format!("levels={levels}")])
        }
        Command::Selftest => ("selftest", None, vec![]),
    };
    let manifest = Manifest {
        command: command.into(),
        class: class.cloned(),
        inputs,
        caps,
        execution: format!("{exec:?}").to_lowercase(),
        output: o.out.as_ref().map(|p| p.display().to_string()),
        exit_status: 0,
    };
    let fail = |e: Error| (e, Box::new(manifest.clone()));
    let ctx = Context::new(caps, exec).map_err(fail)?;
    let parse_class = |c: &str| GroupClass::parse(c);
    let out = match &cli.cmd {
        Command::Constants { class } => {
            let (report, _) =
                run_constants(&ctx, &parse_class(class).map_err(fail)?).map_err(fail)?;
            emit(manifest.clone(), report, 0)
        }
        Command::Verify { class, files } => {
            let x = parse_class(class).map_err(fail)?;
            let (consts, lg) = run_constants(&ctx, &x.extension_closure()).map_err(fail)?;
            let corpus = if files.is_empty() {
                load_corpus(&ctx.data_dir, &caps).map_err(fail)?
            } else {
                files
                    .iter()
                    .map(|f| {
                        load_group(f, &caps)
                            .map(|(name, group)| residua::catalog::CorpusGroup { name, group })
                    })
                    .collect::<residua::Result<Vec<_>>>()
                    .map_err(fail)?
            };
            let groups = verify_corpus(&ctx, x.base(), &corpus, &lg.gamma_cert).map_err(fail)?;
            let count = |v: Verdict| groups.iter().filter(|g| g.verdict == v).count();
            let report = VerifyReport {
                class: consts.class.clone(),
                gamma: consts.gamma.clone(),
                gamma_upper: consts.gamma_rational_upper.clone(),
                gamma_lower: consts.gamma_rational_lower.clone(),
                passed: count(Verdict::Pass),
                failed: count(Verdict::Fail),
                inconclusive: count(Verdict::Inconclusive),
                not_applicable: count(Verdict::HypothesisNotMet),
                groups,
            };
            let status = if report.failed > 0 { EXIT_FAILURE } else { 0 };
            emit(manifest.clone(), report, status)
        }
        Command::Residual { class, file, poly } => {
            let x = parse_class(class).map_err(fail)?;
            let (name, g) = load_group(file, &caps).map_err(fail)?;
            let (shown, r) = if *poly {
                (
                    x.extension_closure(),
                    poly_residual(&ctx, &g, &x).map_err(fail)?,
                )
            } else {
                (x.clone(), residual(&ctx, &g, &x).map_err(fail)?)
            };
            emit(
                manifest.clone(),
                subgroup_report(&name, shown.to_string(), &g, &r.subgroup, &r.tower),
                0,
            )
        }
        Command::Radical { class, file, poly } => {
            let x = parse_class(class).map_err(fail)?;
            let (name, g) = load_group(file, &caps).map_err(fail)?;
            let (shown, r) = if *poly {
                (
                    x.extension_closure(),
                    poly_radical(&ctx, &g, x.base()).map_err(fail)?,
                )
            } else {
                (x.clone(), radical(&ctx, &g, &x).map_err(fail)?)
            };
            emit(
                manifest.clone(),
                subgroup_report(&name, shown.to_string(), &g, &r.subgroup, &r.tower),
                0,
            )
        }
        Command::Classify { file } => {
            let (name, g) = load_group(file, &caps).map_err(fail)?;
            let (factors, note) = match composition_factors(&ctx, &Section::whole(&g)) {
                Ok(f) => (f.iter().map(|d| d.to_string()).collect(), None),
                Err(e) if e.is_scale() => (vec![], Some(e.to_string())),
                Err(e) => return Err(fail(e)),
            };
            let mut memberships = Vec::new();
            for c in [
                "abelian",
                "nilpotent",
                "soluble",
                "d0:A5",
                "d0xS:A5",
                "poly:d0xS:A5",
            ] {
                let class = parse_class(c).map_err(fail)?;
                let (member, note) = match member(&ctx, &class, &g) {
                    Ok(m) => (Some(m), None),
                    Err(e) if e.is_scale() => (None, Some(e.to_string())),
                    Err(e) => return Err(fail(e)),
                };
                memberships.push(Membership {
                    class: c.into(),
                    member,
                    note,
                });
            }
            let report = ClassifyReport {
                group: name,
                degree: g.degree(),
                order: g.order().to_string(),
                composition_factors: factors,
                composition_note: note,
                memberships,
            };
            emit(manifest.clone(), report, 0)
        }
        Command::Sharpness {
            class,
            levels,
            r_max,
        } => {
            let x = parse_class(class).map_err(fail)?;
            let (consts, lg) = run_constants(&ctx, &x).map_err(fail)?;
            let deg = consts.beta.witness_degree as usize;
            let gens = consts
                .beta
                .witness_generators
                .iter()
                .map(|s| Permutation::parse_cycles(s, deg, true))
                .collect::<residua::Result<Vec<_>>>()
                .map_err(fail)?;
            let l = GroupHandle::new(deg, gens).map_err(fail)?;
            let aut = (lg.s0.name == "A5").then(|| GroupHandle::symmetric(5));
            let cfg = SharpnessConfig::new(lg.s0.clone(), aut, l, *levels).map_err(fail)?;
            let nu = cfg.nu();
            let mut report =
                convergence_report(&ctx, &cfg, r_max.unwrap_or(nu.pow(10))).map_err(fail)?;
            if cfg.aut_group.is_some() {
                let w = shipped_instance(&ctx).map_err(fail)?;
                let base = x.base().clone();
                let base = if matches!(base, GroupClass::Soluble) {
                    GroupClass::Nilpotent
                } else {
                    base
                };
                report.instance_checks.push(
                    verify_sharpness_instance(&ctx, "S5 wr C2", &w, &base, &lg.s0, 2)
                        .map_err(fail)?,
                );
                report.note =
                    Some("instance check uses the top group C2 in place of the tower".into());
            } else {
                report.note = Some(format!(
                    "no permutation realization of Aut({}) is bundled; instance check skipped",
                    lg.s0.name
                ));
            }
            let status = if report.ok() { 0 } else { EXIT_FAILURE };
            emit(manifest.clone(), report, status)
        }
        Command::Selftest => {
            let report = run_selftest(&ctx).map_err(fail)?;
            let status = if report.ok() { 0 } else { EXIT_FAILURE };
            emit(manifest.clone(), report, status)
        }
    };
    Ok(out)
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err((e, manifest)) => {
            eprintln!("error: {e}");
            emit(
                *manifest,
                ErrorReport {
                    error: e.to_string(),
                },
                exit_code(&e),
            )
        }
    };
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => print!("{}", outcome.body),
    }
    ExitCode::from(outcome.status)
}
