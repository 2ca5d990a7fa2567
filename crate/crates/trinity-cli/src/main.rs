//! `trinity` — construct digraph families, compute sandpile and canonical
//! groups, plan realizations of finite abelian groups, convert between
//! bitrades and directed spherical embeddings, and export DOT.
//!
//! Exit codes: 0 on success (including negative planning verdicts), 1 when
//! a computation or verification fails on valid input, 2 on unusable input.
//! All output is deterministic: identical invocations produce identical
//! bytes.

mod documents;
mod dot;
mod group_expr;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use trinity::families::{
    build_abc, build_composites, build_cyclic_dipole, build_hub_pentagon, build_hub_triangle,
    build_primes, plan_group, FamilyError, FamilyInstance, PlanVerdict, Recipe,
};
use trinity::latin::canonical_group;
use trinity::surface::{
    bitrade_from_embedding, find_spherical_rotation, triangulation_from_bitrade, tutte_digraph,
    DEFAULT_MAX_SEARCH_ARCS,
};
use trinity::zlinalg::AbelianGroup;

use documents::{BitradeDocument, DigraphDocument, Metadata};

/// A command failure, split by exit code: unusable input exits 2, failed
/// computations and verifications on valid input exit 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Failure(String),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }

    pub fn failure(message: impl Into<String>) -> Self {
        CliError::Failure(message.into())
    }
}

#[derive(Parser)]
#[command(
    name = "trinity",
    version,
    about = "Sandpile groups of Eulerian digraphs, latin bitrades, and spherical embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one instance of a digraph family and emit its document.
    Construct(ConstructArgs),
    /// Print the group of a digraph or of one half of a bitrade.
    Group(GroupArgs),
    /// Plan a construction realizing a finite abelian group.
    Plan(PlanArgs),
    /// Run one verification suite; PASS/FAIL per check.
    Verify(VerifyArgs),
    /// Convert a bitrade document into a directed spherical embedding, or back.
    Convert(ConvertArgs),
    /// Render a digraph document as DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Two vertices joined by N arcs each way; group Z/N.
    Dipole,
    /// Chain with multipliers M·A1, …, M·Ak; group ⊕ Z/(M·Ai).
    Composites,
    /// Rerouted chain over a prime P; group (Z/P)ⁿ ⊕ (⊕ Z/(P·Ai)).
    Primes,
    /// Three-legged star; group Z/T ⊕ Z/T with T = AB+AC+BC+1.
    Abc,
    /// Triangle with a hub; group Z/(3M+1) ⊕ Z/(3M+1).
    HubTriangle,
    /// Pentagon with a hub; group Z/(6M+5) ⊕ Z/(6M+5).
    HubPentagon,
}

#[derive(Args)]
struct ConstructArgs {
    /// Which family to build.
    #[arg(value_enum)]
    family: Family,
    /// Family parameters: dipole N; composites M A1 [A2 ...];
    /// primes P A1 [A2 ...]; abc A B C; hub-triangle M; hub-pentagon M.
    #[arg(required = true)]
    params: Vec<u64>,
    /// Extra order-P summands rerouted into the chain (primes only).
    #[arg(long, default_value_t = 0)]
    reroutes: usize,
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "W", alias = "w")]
    W,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["digraph", "bitrade"])))]
struct GroupArgs {
    /// Digraph document; prints its sandpile group.
    #[arg(long, value_name = "FILE")]
    digraph: Option<PathBuf>,
    /// Bitrade document; prints the canonical group of one half.
    #[arg(long, value_name = "FILE")]
    bitrade: Option<PathBuf>,
    /// Which half of the bitrade.
    #[arg(long, value_enum, default_value_t = Side::W, requires = "bitrade")]
    side: Side,
}

#[derive(Args)]
struct PlanArgs {
    /// The group to realize: `+`-separated cyclic orders with `^`
    /// repetition, e.g. "4+4" or "2^3+4".
    group: String,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    /// Sweep the digraph families: groups, audits, spherical rotations.
    Families,
    /// Per enumerated bitrade: all three embeddings and both canonical
    /// groups agree.
    Trinity,
    /// Per enumerated bitrade: fold to a digraph, unfold, compare groups.
    Roundtrip,
    /// Enumerate bitrades, tally groups, check embeddings.
    Enumerate,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_enum)]
    suite: Suite,
    /// Size bound for the sweep (default: families 4, trinity 6,
    /// roundtrip 6, enumerate 8).
    #[arg(long)]
    max: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Digraph,
    Bitrade,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassChoice {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "S", alias = "s")]
    S,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["digraph", "bitrade"])))]
struct ConvertArgs {
    /// Bitrade document to fold into a directed spherical embedding.
    #[arg(long, value_name = "FILE")]
    bitrade: Option<PathBuf>,
    /// Digraph document to unfold into a bitrade; if it has no rotation,
    /// a spherical one is searched for (bounded by TRINITY_MAX_ARCS).
    #[arg(long, value_name = "FILE")]
    digraph: Option<PathBuf>,
    /// Target representation.
    #[arg(long, value_enum)]
    to: Target,
    /// Which triangulation vertex class becomes the digraph
    /// (bitrade → digraph only; default R).
    #[arg(long, value_enum)]
    class: Option<ClassChoice>,
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Digraph document to render.
    #[arg(long, value_name = "FILE")]
    digraph: PathBuf,
    /// Write the DOT here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Construct(args) => run_construct(args),
        Command::Group(args) => run_group(args),
        Command::Plan(args) => run_plan(args),
        Command::Verify(args) => run_verify(args),
        Command::Convert(args) => run_convert(args),
        Command::ExportDot(args) => run_export_dot(args),
    }
}

fn read_document<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))
}

/// Writes to stdout, turning a broken pipe (the consumer closed early,
/// e.g. `trinity ... | head`) into a silent clean exit instead of a panic.
fn emit(content: &str) -> Result<(), CliError> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(content.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError::failure(format!("cannot write to stdout: {e}"))),
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => emit(content),
    }
}

fn expect_params(family: &str, params: &[u64], count: usize) -> Result<(), CliError> {
    if params.len() == count {
        Ok(())
    } else {
        Err(CliError::input(format!(
            "{family} takes exactly {count} parameter{}, got {}",
            if count == 1 { "" } else { "s" },
            params.len()
        )))
    }
}

fn build_family(args: &ConstructArgs) -> Result<FamilyInstance, CliError> {
    if args.reroutes != 0 && !matches!(args.family, Family::Primes) {
        return Err(CliError::input("--reroutes applies only to the primes family"));
    }
    let params = &args.params;
    let built = match args.family {
        Family::Dipole => {
            expect_params("dipole", params, 1)?;
            build_cyclic_dipole(params[0])
        }
        Family::Composites => {
            if params.len() < 2 {
                return Err(CliError::input(
                    "composites takes a multiplier M and at least one level A1",
                ));
            }
            build_composites(params[0], &params[1..])
        }
        Family::Primes => {
            if params.len() < 2 {
                return Err(CliError::input(
                    "primes takes a prime P and at least one level A1",
                ));
            }
            build_primes(params[0], &params[1..], args.reroutes)
        }
        Family::Abc => {
            expect_params("abc", params, 3)?;
            build_abc(params[0], params[1], params[2])
        }
        Family::HubTriangle => {
            expect_params("hub-triangle", params, 1)?;
            build_hub_triangle(params[0])
        }
        Family::HubPentagon => {
            expect_params("hub-pentagon", params, 1)?;
            build_hub_pentagon(params[0])
        }
    };
    built.map_err(|e| CliError::input(e.to_string()))
}

fn run_construct(args: ConstructArgs) -> Result<(), CliError> {
    let instance = build_family(&args)?;
    let mut doc = DigraphDocument::from_embedding(instance.embedding());
    doc.metadata = Some(Metadata {
        name: Some(instance.name().to_string()),
        expected_group: Some(instance.expected_group().to_string()),
        group_check: None,
    });
    write_output(args.out.as_deref(), &documents::to_json_string(&doc))
}

fn print_group(group: &AbelianGroup) -> Result<(), CliError> {
    let factors: Vec<String> = group
        .invariant_factors()
        .iter()
        .map(|d| d.to_string())
        .collect();
    let json = serde_json::json!({
        "group": group.to_string(),
        "free_rank": group.free_rank(),
        "invariant_factors": factors,
    });
    emit(&format!("{group}\n{json}\n"))
}

fn run_group(args: GroupArgs) -> Result<(), CliError> {
    let group = if let Some(path) = &args.digraph {
        let doc: DigraphDocument = read_document(path)?;
        doc.to_digraph()?
            .sandpile_group()
            .map_err(|e| CliError::failure(format!("no sandpile group: {e}")))?
    } else {
        let path = args.bitrade.as_ref().expect("clap enforces one source");
        let doc: BitradeDocument = read_document(path)?;
        let bitrade = doc.to_bitrade()?;
        let half = match args.side {
            Side::W => bitrade.white(),
            Side::B => bitrade.black(),
        };
        canonical_group(half)
            .map_err(|e| CliError::failure(format!("no canonical group: {e}")))?
            .group
    };
    print_group(&group)
}

/// Renders a recipe as the `construct` invocation that reproduces it.
fn render_recipe(recipe: &Recipe) -> String {
    fn join(values: &[u64]) -> String {
        values
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
    match recipe {
        Recipe::CyclicDipole { n } => format!("construct dipole {n}"),
        Recipe::Composites { m, a } => format!("construct composites {m} {}", join(a)),
        Recipe::Primes { p, a, n } => {
            format!("construct primes {p} {} --reroutes {n}", join(a))
        }
        Recipe::Abc { a, b, c } => format!("construct abc {a} {b} {c}"),
        Recipe::HubTriangle { m } => format!("construct hub-triangle {m}"),
        Recipe::HubPentagon { m } => format!("construct hub-pentagon {m}"),
    }
}

fn run_plan(args: PlanArgs) -> Result<(), CliError> {
    let group = group_expr::parse_group_expression(&args.group)?;
    let plan = plan_group(&group).map_err(|e| match e {
        FamilyError::PlanVerificationFailed { .. } => CliError::failure(e.to_string()),
        other => CliError::input(other.to_string()),
    })?;
    emit(&format!("group: {}\n", plan.group))?;
    match &plan.verdict {
        PlanVerdict::Construct(recipe) => {
            emit(&format!("verdict: {}\n", render_recipe(recipe)))?;
            emit_notes(&plan.notes)?;
            let instance = recipe
                .build()
                .map_err(|e| CliError::failure(format!("recipe failed to build: {e}")))?;
            instance
                .check()
                .map_err(|e| CliError::failure(format!("verification failed: {e}")))?;
            emit(&format!(
                "verified: the built instance realizes {}\n",
                plan.group
            ))?;
        }
        PlanVerdict::NonExistent => {
            emit("verdict: no realization exists\n")?;
            emit_notes(&plan.notes)?;
        }
        PlanVerdict::Unknown => {
            emit("verdict: unknown\n")?;
            emit_notes(&plan.notes)?;
        }
    }
    Ok(())
}

fn emit_notes(notes: &[String]) -> Result<(), CliError> {
    for note in notes {
        emit(&format!("note: {note}\n"))?;
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    let report = verify::run(args.suite, args.max)?;
    emit(&report.text)?;
    if report.failed > 0 {
        return Err(CliError::failure(format!("{} checks failed", report.failed)));
    }
    Ok(())
}

/// The `find_spherical_rotation` arc bound: TRINITY_MAX_ARCS when set,
/// otherwise the library default.
fn max_search_arcs() -> Result<usize, CliError> {
    match std::env::var("TRINITY_MAX_ARCS") {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::input(format!("TRINITY_MAX_ARCS must be a number, got {text:?}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_SEARCH_ARCS),
        Err(e) => Err(CliError::input(format!("TRINITY_MAX_ARCS: {e}"))),
    }
}

fn run_convert(args: ConvertArgs) -> Result<(), CliError> {
    match (args.to, &args.bitrade, &args.digraph) {
        (Target::Digraph, Some(path), None) => {
            let class = args.class.unwrap_or(ClassChoice::R);
            convert_bitrade_to_digraph(path, class, args.out.as_deref())
        }
        (Target::Bitrade, None, Some(path)) => {
            if args.class.is_some() {
                return Err(CliError::input(
                    "--class only applies when converting to a digraph",
                ));
            }
            convert_digraph_to_bitrade(path, args.out.as_deref())
        }
        (Target::Digraph, None, Some(_)) => Err(CliError::input(
            "--digraph converts to a bitrade; pass --to bitrade",
        )),
        (Target::Bitrade, Some(_), None) => Err(CliError::input(
            "--bitrade converts to a digraph; pass --to digraph",
        )),
        _ => unreachable!("clap enforces exactly one source"),
    }
}

fn convert_bitrade_to_digraph(
    path: &Path,
    class: ClassChoice,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let doc: BitradeDocument = read_document(path)?;
    let bitrade = doc.to_bitrade()?;
    let reference = bitrade
        .canonical_group()
        .map_err(|e| CliError::failure(format!("no canonical group: {e}")))?;
    let triangulation = triangulation_from_bitrade(&bitrade)
        .map_err(|e| CliError::failure(format!("cannot fold the bitrade: {e}")))?;
    let class_index = match class {
        ClassChoice::R => 0,
        ClassChoice::C => 1,
        ClassChoice::S => 2,
    };
    let embedded = tutte_digraph(&triangulation, class_index)
        .map_err(|e| CliError::failure(e.to_string()))?;
    let report = embedded.trace_faces();
    if report.genus != 0 {
        return Err(CliError::failure(format!(
            "the bitrade does not fold onto the sphere: embedding has genus {}, expected 0",
            report.genus
        )));
    }
    let sandpile = embedded
        .digraph()
        .sandpile_group()
        .map_err(|e| CliError::failure(format!("no sandpile group: {e}")))?;
    if sandpile != reference {
        return Err(CliError::failure(format!(
            "sandpile group {sandpile} does not match the canonical group {reference}"
        )));
    }
    let mut out_doc = DigraphDocument::from_embedding(&embedded);
    out_doc.metadata = Some(Metadata {
        name: None,
        expected_group: Some(reference.to_string()),
        group_check: Some(format!(
            "sandpile group {sandpile} matches the bitrade canonical group"
        )),
    });
    write_output(out, &documents::to_json_string(&out_doc))
}

fn convert_digraph_to_bitrade(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let doc: DigraphDocument = read_document(path)?;
    let embedded = if doc.rotation.is_some() {
        doc.to_embedding()?
    } else {
        let digraph = doc.to_digraph()?;
        find_spherical_rotation(&digraph, max_search_arcs()?)
            .map_err(|e| CliError::failure(e.to_string()))?
            .ok_or_else(|| {
                CliError::failure("no spherical rotation with directed faces exists")
            })?
    };
    let (_, recovered) = bitrade_from_embedding(&embedded)
        .map_err(|e| CliError::failure(format!("cannot unfold the embedding: {e}")))?;
    let bitrade = recovered.ok_or_else(|| {
        CliError::failure("the unfolded triple system is not a latin bitrade")
    })?;
    let reference = bitrade
        .canonical_group()
        .map_err(|e| CliError::failure(format!("no canonical group: {e}")))?;
    let sandpile = embedded
        .digraph()
        .sandpile_group()
        .map_err(|e| CliError::failure(format!("no sandpile group: {e}")))?;
    if sandpile != reference {
        return Err(CliError::failure(format!(
            "canonical group {reference} does not match the sandpile group {sandpile}"
        )));
    }
    let mut out_doc = BitradeDocument::from_bitrade(&bitrade);
    out_doc.metadata = Some(Metadata {
        name: None,
        expected_group: Some(reference.to_string()),
        group_check: Some(format!(
            "canonical group {reference} matches the input sandpile group"
        )),
    });
    write_output(out, &documents::to_json_string(&out_doc))
}

fn run_export_dot(args: ExportDotArgs) -> Result<(), CliError> {
    let doc: DigraphDocument = read_document(&args.digraph)?;
    if doc.vertices.is_empty() {
        return Err(CliError::input("digraph document has no vertices"));
    }
    write_output(args.out.as_deref(), &dot::render_dot(&doc))
}
