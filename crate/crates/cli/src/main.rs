//! `mackey`: build Mackey functors for small groups and check them.
//!
//! Exit status: 0 when every verdict in the report is true, 1 when at least
//! one is false, 2 on usage, input or IO errors.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mackey::double::{psi, Budget};
use mackey::group::{resolve_subgroup, FiniteGroup, SubId, SubgroupTable, DEFAULT_ORDER_CAP};
use mackey::mackey::{
    functor_to_json, load_functor, BuildOptions, BuilderRegistry, MackeyFunctorData,
};
use mackey::registry::{CheckContext, CheckRegistry};
use mackey::report::{pair, Instance, Report, Section, Witness};

#[derive(Parser)]
#[command(
    name = "mackey",
    version,
    about = "Exact checks for Mackey functors and their double categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Builtin name (C6, S3, D4, Q8, A4, ...), `perm:(1 2);(1 2 3)`, or a table file
    #[arg(long, global = true)]
    group: Option<String>,
    /// Functor builder: trivial, burnside or fixedpoint
    #[arg(long, global = true)]
    functor: Option<String>,
    /// G-set for fixedpoint: natural, regular or cosets:<selector>
    #[arg(long, global = true)]
    gset: Option<String>,
    /// Read the functor from a functor file instead of building it
    #[arg(long, global = true, conflicts_with_all = ["group", "functor", "gset"])]
    functor_file: Option<PathBuf>,
    /// Build the double category even when the functor fails an axiom
    #[arg(long, global = true)]
    allow_failing: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order accepted
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    /// Write output here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Elements and subgroups of a group
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Build a functor and write it as a functor file
    Functor {
        #[command(subcommand)]
        action: FunctorAction,
    },
    /// Objects and morphism realizations of the double category of a functor
    Double {
        #[command(subcommand)]
        action: DoubleAction,
    },
    /// Run one check on a functor or its double category
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Translate functor to double category and back, both ways
    Roundtrip,
}

#[derive(Subcommand)]
enum GroupAction {
    Info,
}

#[derive(Subcommand)]
enum FunctorAction {
    Build,
}

#[derive(Subcommand)]
enum DoubleAction {
    Build,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// The seven Mackey axioms on the functor
    Axioms,
    /// Double category laws and functoriality of the realization
    Laws,
    /// Interchange law on 2x2 grids of squares
    Interchange,
    /// Double-coset images against the whole restriction-induction image
    Containment,
    /// Conjugation compatibility of the double category
    M6,
    /// Double-coset decomposition; restrict to one triple with --J, --K and --H, or omit all three
    M7 {
        #[arg(long = "J", requires_all = ["k", "h"])]
        j: Option<String>,
        #[arg(long = "K", requires_all = ["j", "h"])]
        k: Option<String>,
        #[arg(long = "H", requires_all = ["j", "k"])]
        h: Option<String>,
    },
}

impl CheckCommand {
    fn name(&self) -> &'static str {
        match self {
            CheckCommand::Axioms => "axioms",
            CheckCommand::Laws => "laws",
            CheckCommand::Interchange => "interchange",
            CheckCommand::Containment => "containment",
            CheckCommand::M6 => "m6",
            CheckCommand::M7 { .. } => "m7",
        }
    }
}

struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(passed) => ExitCode::from(if passed { 0 } else { 1 }),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Group {
            action: GroupAction::Info,
        } => {
            let spec = o
                .group
                .as_deref()
                .ok_or_else(|| Failure("--group is required".into()))?;
            let table = SubgroupTable::new(FiniteGroup::from_spec(spec, o.max_order)?);
            emit_report(o, &group_info(&table))
        }
        Command::Functor {
            action: FunctorAction::Build,
        } => {
            let (m, _) = functor(o)?;
            emit(o, &functor_to_json(&m))?;
            Ok(true)
        }
        Command::Double {
            action: DoubleAction::Build,
        } => {
            let (m, context) = functor(o)?;
            let d = psi(&m, o.allow_failing)?;
            let mut r = Report::new("double build", context);
            let t = d.table();
            let mut objects = Section::new("objects");
            for h in t.ids() {
                objects.record(
                    Instance::new(
                        vec![pair("object", t.label(h)), pair("rank", d.rank(h))],
                        true,
                        vec![],
                    ),
                    true,
                );
            }
            let mut horizontal = Section::new("horizontal");
            for m in d.hmors() {
                horizontal.record(
                    Instance::new(
                        vec![
                            pair("morphism", m.display(t)),
                            pair("source", t.label(m.source())),
                            pair("target", t.label(m.target())),
                        ],
                        true,
                        vec![pair("matrix", d.realize_h(m))],
                    ),
                    true,
                );
            }
            let mut vertical = Section::new("vertical");
            for m in d.vmors() {
                vertical.record(
                    Instance::new(
                        vec![
                            pair("morphism", m.display(t)),
                            pair("source", t.label(m.source())),
                            pair("target", t.label(m.target())),
                        ],
                        true,
                        vec![pair("matrix", d.realize_v(m))],
                    ),
                    true,
                );
            }
            r.sections = vec![objects, horizontal, vertical];
            emit_report(o, &r)
        }
        Command::Check { check } => {
            let (m, mut context) = functor(o)?;
            let triple = match check {
                CheckCommand::M7 {
                    j: Some(j),
                    k: Some(k),
                    h: Some(h),
                } => {
                    let t = m.table();
                    context.extend([pair("J", j), pair("K", k), pair("H", h)]);
                    Some((
                        resolve_subgroup(t, j)?,
                        resolve_subgroup(t, k)?,
                        resolve_subgroup(t, h)?,
                    ))
                }
                _ => None,
            };
            checks(
                o,
                &format!("check {}", check.name()),
                &[check.name()],
                m,
                context,
                triple,
            )
        }
        Command::Roundtrip => {
            let (m, context) = functor(o)?;
            checks(o, "roundtrip", &["roundtrip"], m, context, None)
        }
    }
}

fn checks(
    o: &Options,
    command: &str,
    names: &[&str],
    m: MackeyFunctorData,
    mut context: Witness,
    triple: Option<(SubId, SubId, SubId)>,
) -> Result<bool, Failure> {
    context.push(pair("seed", o.seed));
    let ctx = CheckContext::new(m)
        .with_budget(Budget::with_seed(o.seed))
        .allow_failing(o.allow_failing)
        .with_triple(triple);
    let registry = CheckRegistry::default();
    let mut r = Report::new(command, context);
    for name in names {
        r.sections.extend(registry.run(name, &ctx)?);
    }
    emit_report(o, &r)
}

/// The functor named by the options, with the report header describing it.
fn functor(o: &Options) -> Result<(MackeyFunctorData, Witness), Failure> {
    if let Some(path) = &o.functor_file {
        let m = load_functor(path, o.max_order)?;
        let context = vec![
            pair("group", m.group().spec()),
            pair("order", m.group().order()),
            pair("functor_file", path.display()),
        ];
        return Ok((m, context));
    }
    let spec = o
        .group
        .as_deref()
        .ok_or_else(|| Failure("--group or --functor-file is required".into()))?;
    let name = o
        .functor
        .as_deref()
        .ok_or_else(|| Failure("--functor or --functor-file is required".into()))?;
    let table = Arc::new(SubgroupTable::new(FiniteGroup::from_spec(
        spec,
        o.max_order,
    )?));
    let options = BuildOptions {
        gset: o.gset.clone(),
    };
    let m = BuilderRegistry::default().build(name, table.clone(), &options)?;
    let mut context = vec![
        pair("group", spec),
        pair("order", table.group().order()),
        pair("functor", name),
    ];
    if name == "fixedpoint" {
        context.push(pair("gset", o.gset.as_deref().unwrap_or("natural")));
    }
    Ok((m, context))
}

fn group_info(t: &SubgroupTable) -> Report {
    let g = t.group();
    let mut r = Report::new(
        "group info",
        vec![
            pair("group", g.spec()),
            pair("order", g.order()),
            pair("abelian", g.is_abelian()),
            pair("subgroups", t.len()),
        ],
    );
    let mut elements = Section::new("elements");
    for x in g.elements() {
        elements.record(
            Instance::new(
                vec![pair("index", x.index()), pair("name", g.name(x))],
                true,
                vec![pair("order", g.element_order(x))],
            ),
            true,
        );
    }
    let mut subgroups = Section::new("subgroups");
    for h in t.ids() {
        let names: Vec<&str> = t
            .subgroup(h)
            .elements()
            .iter()
            .map(|&x| g.name(x))
            .collect();
        let normal = g.elements().all(|x| t.conj(x, h) == h);
        subgroups.record(
            Instance::new(
                vec![
                    pair("selector", format!("#{}", h.0)),
                    pair("label", t.label(h)),
                ],
                true,
                vec![
                    pair("order", t.order_of(h)),
                    pair("normal", normal),
                    pair("elements", format!("{{{}}}", names.join(", "))),
                ],
            ),
            true,
        );
    }
    r.sections = vec![elements, subgroups];
    r
}

fn emit_report(o: &Options, r: &Report) -> Result<bool, Failure> {
    let text = match o.format {
        Format::Text => r.to_text(),
        Format::Structured => r.to_structured(),
    };
    emit(o, &text)?;
    Ok(r.passed())
}

fn emit(o: &Options, text: &str) -> Result<(), Failure> {
    match &o.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
        }
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
