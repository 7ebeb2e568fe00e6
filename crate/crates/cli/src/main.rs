//! `hteq`: decide equivalence of propositional theories and logic programs
//! under answer-set semantics.
//!
//! Exit codes: 0 equivalent (or success), 1 not equivalent (or a validation
//! discrepancy), 2 usage or parse error, 3 enumeration bound exceeded,
//! 4 internal inconsistency.

mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hteq::equiv::{
    characteristic_set, decide_equivalence_over, dual_theory, gamma_phi, joint_signature, tau_epsilon, EquivNotion,
    Family,
};
use hteq::hyper::{decide_hyper_over, hyper_interpretations, hyper_signature};
use hteq::nonground::{decide_uniform_nonground, SEARCH_NOTE};
use hteq::oracle::{validate, witness_context, OracleConfig, Target, ValidationConfig};
use hteq::semantics::{countermodels, ht_models, set_max_atoms, InterpretationSet, DEFAULT_MAX_ATOMS};
use hteq::{Signature, Theory};

use input::Kind;
use report::*;

#[derive(Parser)]
#[command(name = "hteq", version, about = "Equivalence checking for theories and programs under answer-set semantics")]
struct Cli {
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to the number of CPUs)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest signature to enumerate interpretations over
    #[arg(long, global = true, env = "HTEQ_MAX_ATOMS")]
    max_atoms: Option<usize>,
    /// Include wall-clock timing in reports
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Classical,
    AnswerSet,
    Strong,
    Uniform,
    Hyper,
}

impl Mode {
    fn notion(self) -> Option<EquivNotion> {
        match self {
            Mode::Classical => Some(EquivNotion::Classical),
            Mode::AnswerSet => Some(EquivNotion::AnswerSet),
            Mode::Strong => Some(EquivNotion::Strong),
            Mode::Uniform => Some(EquivNotion::Uniform),
            Mode::Hyper => None,
        }
    }

    fn name(self) -> &'static str {
        self.notion().map_or("hyper", EquivNotion::name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Models,
    Countermodels,
    #[value(name = "Cc")]
    Cc,
    #[value(name = "Ca")]
    Ca,
    #[value(name = "Cs")]
    Cs,
    #[value(name = "Cu")]
    Cu,
    #[value(name = "Ec")]
    Ec,
    #[value(name = "Ea")]
    Ea,
    #[value(name = "Es")]
    Es,
    #[value(name = "Eu")]
    Eu,
    Hyper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Transform {
    /// One formula whose models capture the equivalence interpretations
    Dual,
    /// The theories `Γ_φ`, one block per formula `φ`
    GammaPhi,
    /// `¬¬a → a` for every atom
    Tau,
    /// Rules as implications
    ToTheory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NgMode {
    Uniform,
}

#[derive(clap::Args)]
struct Signatures {
    /// Extra atoms: a count of fresh atoms, or a comma-separated list
    #[arg(long)]
    extra_atoms: Option<String>,
    /// Atoms allowed positively in contexts (comma-separated, or @all)
    #[arg(long)]
    aplus: Option<String>,
    /// Atoms allowed negatively in contexts (comma-separated, or @all)
    #[arg(long)]
    aminus: Option<String>,
    /// How to read inputs
    #[arg(long, value_enum, default_value = "auto")]
    kind: Kind,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two inputs are equivalent
    Check {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        signatures: Signatures,
    },
    /// List a set of HT-interpretations of one input in canonical order
    Models {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "models")]
        which: Which,
        #[command(flatten)]
        signatures: Signatures,
    },
    /// Print a derived theory or formula
    Transform {
        file: PathBuf,
        #[arg(long = "to", value_enum)]
        kind: Transform,
        #[arg(long, value_enum, default_value = "auto")]
        input_kind: Kind,
    },
    /// Compare decisions with brute-force context search on a random corpus
    Validate {
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Formulas per hyper context
        #[arg(long, default_value_t = 4)]
        budget: usize,
        /// Fresh atoms in uniform contexts
        #[arg(long, default_value_t = 1)]
        k_extra: usize,
        /// Formulas per strong context (default: no limit)
        #[arg(long)]
        strong_budget: Option<usize>,
        /// Invert every decision; the run must then report discrepancies
        #[arg(long)]
        inject_mutant: bool,
    },
    /// Decide uniform equivalence of programs with variables
    CheckNg {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "uniform")]
        mode: NgMode,
        /// Fresh constants added to the Herbrand universe
        #[arg(long, default_value_t = 2)]
        extra_consts: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(String, hteq::Error),
}

impl CliError {
    pub fn at(path: &Path, e: hteq::Error) -> CliError {
        CliError::Core(format!("{}: ", path.display()), e)
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_, e) if e.is_bound() => 3,
            CliError::Core(_, hteq::Error::Inconsistent { .. }) => 4,
            CliError::Core(..) => 2,
        }
    }
}

impl From<hteq::Error> for CliError {
    fn from(e: hteq::Error) -> Self {
        CliError::Core(String::new(), e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(prefix, e) => write!(f, "{prefix}{e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_max_atoms(cli.max_atoms.unwrap_or(DEFAULT_MAX_ATOMS));
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("hteq: cannot configure {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hteq: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let started = Instant::now();
    let elapsed = || cli.timing.then(|| started.elapsed().as_millis() as u64);
    match &cli.command {
        Command::Check {
            first,
            second,
            mode,
            signatures,
        } => check(cli, first, second, *mode, signatures, elapsed),
        Command::Models { file, which, signatures } => models(cli, file, *which, signatures),
        Command::Transform { file, kind, input_kind } => transform(cli, file, *kind, *input_kind),
        Command::Validate {
            pairs,
            atoms,
            seed,
            budget,
            k_extra,
            strong_budget,
            inject_mutant,
        } => {
            let config = ValidationConfig {
                pairs: *pairs,
                atoms: *atoms,
                seed: *seed,
                oracle: OracleConfig {
                    k_extra: *k_extra,
                    budget: *budget,
                    strong_budget: *strong_budget,
                },
                mutant: *inject_mutant,
                ..ValidationConfig::default()
            };
            let report = validate(&config)?;
            let passed = report.is_clean();
            if cli.json {
                print_json(&ValidateReport {
                    schema: SCHEMA,
                    tool: TOOL,
                    command: "validate",
                    seed: *seed,
                    passed,
                    report,
                    timing_ms: elapsed(),
                });
            } else {
                print_validation(&report);
                if let Some(ms) = elapsed() {
                    println!("time: {ms} ms");
                }
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::CheckNg {
            first,
            second,
            mode: NgMode::Uniform,
            extra_consts,
        } => check_ng(cli, first, second, *extra_consts),
    }
}

fn names(signature: &Signature) -> Vec<String> {
    signature.atoms().iter().map(|a| a.name().to_owned()).collect()
}

fn path_text(path: &Path) -> String {
    path.display().to_string()
}

fn check(
    cli: &Cli,
    first: &Path,
    second: &Path,
    mode: Mode,
    signatures: &Signatures,
    elapsed: impl Fn() -> Option<u64>,
) -> Result<u8, CliError> {
    let t1 = input::load_theory(first, signatures.kind)?;
    let t2 = input::load_theory(second, signatures.kind)?;
    let base = joint_signature(&t1, &t2, &[])?;
    let extra = input::extra_atoms(signatures.extra_atoms.as_deref(), &base)?;
    let mut signature = base.extended(extra)?;
    let (verdict, target, alphabets) = match mode.notion() {
        Some(notion) => (
            decide_equivalence_over(&t1, &t2, notion, &signature)?,
            Target::Notion(notion),
            None,
        ),
        None => {
            let ab = input::alphabets(signatures.aplus.as_deref(), signatures.aminus.as_deref(), &signature)?;
            signature = hyper_signature(&t1.over(&signature)?, &t2, &ab)?;
            (decide_hyper_over(&t1, &t2, &ab, &signature)?, Target::Hyper(ab.clone()), Some(ab))
        }
    };
    let context = if verdict.equivalent {
        None
    } else {
        match witness_context(&t1, &t2, &target, &verdict, &OracleConfig::default()) {
            Ok(cx) => cx,
            Err(e) if e.is_bound() => None,
            Err(e) => return Err(e.into()),
        }
    };

    if cli.json {
        print_json(&CheckReport {
            schema: SCHEMA,
            tool: TOOL,
            command: "check",
            mode: mode.name().to_owned(),
            inputs: vec![path_text(first), path_text(second)],
            signature: names(&signature),
            alphabets: alphabets.as_ref().map(AlphabetsOut::from),
            verdict: verdict_word(verdict.equivalent),
            witness: Witness::of(&verdict),
            context: context.as_ref().map(ContextOut::from),
            sizes: [verdict.sizes.0, verdict.sizes.1],
            seed: None,
            timing_ms: elapsed(),
        });
    } else {
        let what = match &alphabets {
            Some(ab) => {
                let out = AlphabetsOut::from(ab);
                format!(
                    "relativized hyperequivalence wrt A+ = {{{}}}, A- = {{{}}}",
                    out.aplus.join(","),
                    out.aminus.join(",")
                )
            }
            None => format!("{} equivalence", mode.name()),
        };
        if verdict.equivalent {
            println!("equivalent under {what}");
        } else {
            println!("not equivalent under {what}");
            if let (Some(w), Some(side)) = (verdict.witness_text(), verdict.witness_side) {
                println!("witness: {w} belongs to the set of the {} input only", side.name());
            }
            if let Some(cx) = &context {
                println!("context: {cx}");
            }
        }
        if let Some(ms) = elapsed() {
            println!("time: {ms} ms");
        }
    }
    Ok(if verdict.equivalent { 0 } else { 1 })
}

fn models(cli: &Cli, file: &Path, which: Which, signatures: &Signatures) -> Result<u8, CliError> {
    let theory = input::load_theory(file, signatures.kind)?;
    let extra = input::extra_atoms(signatures.extra_atoms.as_deref(), theory.signature())?;
    let signature = theory.signature().extended(extra)?;
    let e = |notion| characteristic_set(&theory, &signature, notion, Family::EquivalenceInterpretations);
    let c = |notion| characteristic_set(&theory, &signature, notion, Family::Countermodels);
    let (set, signature): (InterpretationSet, Signature) = match which {
        Which::Models => (ht_models(&theory, &signature)?, signature),
        Which::Countermodels => (countermodels(&theory, &signature)?, signature),
        Which::Cc => (c(EquivNotion::Classical)?, signature),
        Which::Ca => (c(EquivNotion::AnswerSet)?, signature),
        Which::Cs => (c(EquivNotion::Strong)?, signature),
        Which::Cu => (c(EquivNotion::Uniform)?, signature),
        Which::Ec => (e(EquivNotion::Classical)?, signature),
        Which::Ea => (e(EquivNotion::AnswerSet)?, signature),
        Which::Es => (e(EquivNotion::Strong)?, signature),
        Which::Eu => (e(EquivNotion::Uniform)?, signature),
        Which::Hyper => {
            let ab = input::alphabets(signatures.aplus.as_deref(), signatures.aminus.as_deref(), &signature)?;
            let extended = signature.extended(ab.atoms())?;
            let h = hyper_interpretations(&theory.over(&extended)?, &extended, &ab)?;
            (h.members().clone(), extended)
        }
    };
    if cli.json {
        print_json(&ModelsReport {
            schema: SCHEMA,
            tool: TOOL,
            command: "models",
            which: which.to_possible_value().expect("named").get_name().to_owned(),
            input: path_text(file),
            signature: names(&signature),
            members: set.iter().map(|m| Interp::new(m, &signature)).collect(),
        });
    } else {
        for m in set.iter() {
            println!("{}", m.display(&signature));
        }
    }
    Ok(0)
}

fn transform(cli: &Cli, file: &Path, kind: Transform, input_kind: Kind) -> Result<u8, CliError> {
    let output = match kind {
        Transform::ToTheory => input::load_program(file)?.to_theory().to_string(),
        Transform::Tau => {
            let theory = input::load_theory(file, input_kind)?;
            tau_epsilon(theory.signature()).to_string()
        }
        Transform::Dual => {
            let theory = input::load_theory(file, input_kind)?;
            format!("{}.\n", dual_theory(&theory, theory.signature())?)
        }
        Transform::GammaPhi => {
            let theory = input::load_theory(file, input_kind)?;
            let mut out = String::new();
            for phi in theory.formulas() {
                let gamma: Theory = gamma_phi(&theory, phi, theory.signature())?;
                out.push_str(&format!("% phi = {phi}\n"));
                for f in gamma.formulas() {
                    out.push_str(&format!("{f}.\n"));
                }
            }
            out
        }
    };
    if cli.json {
        print_json(&TransformReport {
            schema: SCHEMA,
            tool: TOOL,
            command: "transform",
            kind: kind.to_possible_value().expect("named").get_name().to_owned(),
            input: path_text(file),
            output,
        });
    } else {
        print!("{output}");
    }
    Ok(0)
}

fn print_validation(report: &hteq::oracle::ValidationReport) {
    let c = &report.config;
    println!(
        "validated {} pairs over {} atoms (seed {}, budget {}, k-extra {})",
        c.pairs, c.atoms, c.seed, c.oracle.budget, c.oracle.k_extra
    );
    for t in &report.tallies {
        println!(
            "  {:<11} equivalent {:>4}  not equivalent {:>4}  refuted {:>4}  discrepancies {}",
            t.notion, t.equivalent, t.not_equivalent, t.refuted, t.discrepancies
        );
    }
    println!("  hstruct checks {}, extended-context checks {}", report.hstruct_checks, report.extended_checks);
    for d in &report.discrepancies {
        println!("  pair {} [{}]: {}", d.pair, d.check, d.detail);
    }
    println!("{}", if report.is_clean() { "PASS" } else { "FAIL" });
}

fn check_ng(cli: &Cli, first: &Path, second: &Path, k: usize) -> Result<u8, CliError> {
    let p1 = input::load_ng_program(first)?;
    let p2 = input::load_ng_program(second)?;
    let v = decide_uniform_nonground(&p1, &p2, k)?;
    if cli.json {
        let failure = v.failure.as_ref();
        print_json(&CheckNgReport {
            schema: SCHEMA,
            tool: TOOL,
            command: "check-ng",
            mode: "uniform",
            inputs: vec![path_text(first), path_text(second)],
            extra_consts: k,
            verdict: verdict_word(v.equivalent),
            universes: v.universes.iter().map(|u| u.names()).collect(),
            failing_universe: failure.map(|f| f.universe.names()),
            witness: failure.and_then(|f| {
                Some(NgWitness {
                    interpretation: Interp::new(f.verdict.witness?, &f.verdict.signature),
                    side: f.verdict.witness_side?.name(),
                })
            }),
            context: failure.and_then(|f| f.context.clone()),
            note: SEARCH_NOTE,
        });
    } else {
        println!("{v}");
        println!("note: {SEARCH_NOTE}");
    }
    Ok(if v.equivalent { 0 } else { 1 })
}
