//! The `hsnf` command line: normalization, classification, proof search in
//! G4ip and HS, translation, checking, value audits and the inequality
//! lemmas.

mod render;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::g4ip::{
    audit_derivation, check, non_invertible_count, prove, rule_grid, to_latex, Derivation, Logic, ProveError,
    ProverConfig, DEFAULT_GRID_VALUES, DEFAULT_MAX_GAMMA,
};
use crate::gen::{atoms, random_formula, Connective};
use crate::hs::{check_hs, g4ip_to_hs, hs_to_g4ip, hs_to_latex, hs_value_audit, prove_hs, sequent_nf, HsError, HsProof};
use crate::interp::{
    check_g3ip_failure, check_inequality_lemmas, termination_budget, AuditReport, Guard, LemmaRanges, Valuation,
    Verdict,
};
use crate::normalize::{classify, embed, enf, latex_nf, print_nf, Nf};
use crate::syntax::{parse_formula, parse_sequent, simplify_top, Formula, Sequent};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_PROVABLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hsnf", version, about = "Exp-log normal forms, G4ip and HS proofs, and their arithmetic")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Formula notation for text output
    #[arg(long, global = true, value_enum)]
    notation: Option<Notation>,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
    #[arg(long, global = true, value_enum, default_value_t = LogicArg::Minimal)]
    logic: LogicArg,
    /// Value of every atom in the arithmetic interpretation
    #[arg(long, global = true, default_value_t = 2)]
    valuation: u64,
    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Show trivial `^1` exponents and `·1` factors
    #[arg(long, global = true)]
    verbose_units: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Notation {
    Logical,
    Poly,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Emit {
    Text,
    Json,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LogicArg {
    Minimal,
    ExFalso,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Logic {
        match l {
            LogicArg::Minimal => Logic::Minimal,
            LogicArg::ExFalso => Logic::ExFalso,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Calculus {
    G4ip,
    Hs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exp-log normal form of a formula
    Normalize {
        /// Formula text; read from stdin when absent or `-`
        formula: Option<String>,
    },
    /// Print the Σ/Π class report of a formula's normal form
    Classify { formula: Option<String> },
    /// Search for a proof of a formula or sequent `Γ |- G`
    Prove {
        formula: Option<String>,
        #[arg(long, value_enum, default_value_t = Calculus::G4ip)]
        calculus: Calculus,
    },
    /// Map a proof file from G4ip to HS or back
    Translate {
        /// Proof file as written by `prove --emit json`; `-` for stdin
        file: String,
    },
    /// Audit a proof file, or sweep the rule grid or random formulas
    Measure {
        file: Option<String>,
        /// Sweep every G4ip rule over a grid of atom values
        #[arg(long, conflicts_with_all = ["file", "random"])]
        grid: bool,
        /// Audit the derivations of this many random provable formulas
        #[arg(long, conflicts_with = "file")]
        random: Option<usize>,
    },
    /// Validate a proof file
    Check { file: String },
    /// Check the inequality lemmas and find the G3ip counterexample
    Lemmas,
}

/// A proof file.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "calculus", rename_all = "lowercase")]
pub enum ProofFile {
    G4ip { logic: Logic, derivation: Derivation },
    Hs { proof: HsProof },
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn text(&mut self, name: Option<&str>) -> Result<String, Failure> {
        match name {
            Some(t) if t != "-" => Ok(t.to_string()),
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(input_error)?;
                Ok(s.trim().to_string())
            }
        }
    }

    fn file(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            self.text(None)
        } else {
            fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))
        }
    }

    fn print(&mut self, s: &str) -> Result<(), Failure> {
        writeln!(self.out, "{}", s.trim_end()).map_err(|e| Failure { code: EXIT_INPUT, message: e.to_string() })
    }

    fn json(&mut self, v: &impl Serialize) -> Result<(), Failure> {
        let s = serde_json::to_string_pretty(v).expect("serializable");
        self.print(&s)
    }

    fn note(&mut self, s: &str) {
        let _ = writeln!(self.err, "{s}");
    }
}

/// Runs the command line `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut io = Io { stdin, out, err };
    match dispatch(&cli, &mut io) {
        Ok(code) => code,
        Err(f) => {
            io.note(&format!("error: {}", f.message));
            f.code
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let (stdin, stdout, stderr) = (io::stdin(), io::stdout(), io::stderr());
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cli: &Cli, io: &mut Io) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Normalize { formula } => normalize(c, io, formula.as_deref()),
        Command::Classify { formula } => classify_cmd(c, io, formula.as_deref()),
        Command::Prove { formula, calculus } => prove_cmd(c, io, formula.as_deref(), *calculus),
        Command::Translate { file } => translate(c, io, file),
        Command::Measure { file, grid, random } => measure(c, io, file.as_deref(), *grid, *random),
        Command::Check { file } => check_cmd(c, io, file),
        Command::Lemmas => lemmas(c, io),
    }
}

/// A formula, or a sequent read as `(∧Γ) → G`.
fn read_formula(io: &mut Io, arg: Option<&str>) -> Result<Formula, Failure> {
    let s = read_sequent(io, arg)?;
    Ok(if s.context().is_empty() { s.goal().clone() } else { s.as_formula() })
}

fn read_sequent(io: &mut Io, arg: Option<&str>) -> Result<Sequent, Failure> {
    let text = io.text(arg)?;
    let parsed = if text.contains("|-") || text.contains('⊢') {
        parse_sequent(&text)
    } else {
        parse_formula(&text).map(Sequent::goal_only)
    };
    parsed.map_err(|e| input_error(format!("{e} in {text:?}")))
}

/// The normal form read back as a formula; trivial units are simplified
/// away unless `verbose` holds.
fn logical(e: &Nf, verbose: bool) -> String {
    let f = embed(e);
    if verbose { f } else { simplify_top(&f) }.to_string()
}

fn normalize(c: &Common, io: &mut Io, arg: Option<&str>) -> Outcome {
    let f = read_formula(io, arg)?;
    let e = enf(&f);
    match c.emit {
        Emit::Json => io.json(&json!({
            "formula": f,
            "normal_form": e,
            "poly": print_nf(&e, c.verbose_units),
            "logical": logical(&e, c.verbose_units),
        }))?,
        Emit::Latex => io.print(&format!("${}$", latex_nf(&e)))?,
        Emit::Text => match c.notation {
            Some(Notation::Poly) => io.print(&print_nf(&e, c.verbose_units))?,
            Some(Notation::Logical) => io.print(&logical(&e, c.verbose_units))?,
            None => {
                io.print(&print_nf(&e, c.verbose_units))?;
                io.print(&logical(&e, c.verbose_units))?;
            }
        },
    }
    Ok(EXIT_OK)
}

fn classify_cmd(c: &Common, io: &mut Io, arg: Option<&str>) -> Outcome {
    let f = read_formula(io, arg)?;
    let e = enf(&f);
    let report = classify(&e);
    match c.emit {
        Emit::Json => io.json(&report)?,
        Emit::Text | Emit::Latex => io.print(&render::class_report(&report, &print_nf(&e, c.verbose_units)))?,
    }
    Ok(EXIT_OK)
}

fn prove_cmd(c: &Common, io: &mut Io, arg: Option<&str>, calculus: Calculus) -> Outcome {
    let s = read_sequent(io, arg)?;
    let file = match calculus {
        Calculus::G4ip => {
            let logic = Logic::from(c.logic);
            match prove(&s, ProverConfig { logic, node_budget: None }) {
                Ok(derivation) => ProofFile::G4ip { logic, derivation },
                Err(ProveError::NotProvable) => return not_provable(io, &s),
                Err(e) => return Err(input_error(e)),
            }
        }
        Calculus::Hs => {
            if c.logic == LogicArg::ExFalso {
                return Err(input_error("HS has no ex-falso rule"));
            }
            if !s.is_propositional() {
                return Err(input_error(HsError::Quantifier));
            }
            match prove_hs(&sequent_nf(&s.simplify_top())) {
                Ok(proof) => ProofFile::Hs { proof },
                Err(HsError::NotProvable) => return not_provable(io, &s),
                Err(e) => return Err(input_error(e)),
            }
        }
    };
    emit_proof(c, io, &file)?;
    Ok(EXIT_OK)
}

fn not_provable(io: &mut Io, s: &Sequent) -> Outcome {
    io.note(&format!("not provable: {s}"));
    Ok(EXIT_NOT_PROVABLE)
}

fn emit_proof(c: &Common, io: &mut Io, file: &ProofFile) -> Result<(), Failure> {
    match (c.emit, file) {
        (Emit::Json, _) => io.json(file),
        (Emit::Latex, ProofFile::G4ip { derivation, .. }) => io.print(&to_latex(derivation)),
        (Emit::Latex, ProofFile::Hs { proof }) => io.print(&hs_to_latex(proof)),
        (Emit::Text, ProofFile::G4ip { derivation, .. }) => {
            let poly = c.notation == Some(Notation::Poly);
            io.print(&render::derivation(derivation, poly))
        }
        (Emit::Text, ProofFile::Hs { proof }) => io.print(&render::hs_proof(proof, c.verbose_units)),
    }
}

fn read_proof(io: &mut Io, path: &str) -> Result<ProofFile, Failure> {
    let text = io.file(path)?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{path}: {e}")))
}

fn validate(file: &ProofFile) -> Result<(), Failure> {
    match file {
        ProofFile::G4ip { logic, derivation } => check(derivation, *logic).map_err(input_error),
        ProofFile::Hs { proof } => check_hs(proof).map_err(input_error),
    }
}

fn translate(c: &Common, io: &mut Io, path: &str) -> Outcome {
    let file = read_proof(io, path)?;
    validate(&file)?;
    let out = match file {
        ProofFile::G4ip { derivation, .. } => ProofFile::Hs { proof: g4ip_to_hs(&derivation).map_err(input_error)? },
        ProofFile::Hs { proof } => {
            let t = hs_to_g4ip(&proof).map_err(input_error)?;
            if !t.exact {
                io.note("note: some HS steps were replayed by proof search");
            }
            ProofFile::G4ip { logic: Logic::Minimal, derivation: t.derivation }
        }
    };
    emit_proof(c, io, &out)?;
    Ok(EXIT_OK)
}

fn check_cmd(c: &Common, io: &mut Io, path: &str) -> Outcome {
    let file = read_proof(io, path)?;
    validate(&file)?;
    let (calculus, size) = match &file {
        ProofFile::G4ip { derivation, .. } => ("g4ip", derivation.size()),
        ProofFile::Hs { proof } => ("hs", proof.size()),
    };
    match c.emit {
        Emit::Json => io.json(&json!({ "valid": true, "calculus": calculus, "nodes": size }))?,
        _ => io.print(&format!("valid {calculus} proof with {size} nodes"))?,
    }
    Ok(EXIT_OK)
}

fn valuation(c: &Common) -> Result<Valuation, Failure> {
    if c.valuation < 2 {
        return Err(input_error("--valuation must be at least 2"));
    }
    Ok(Valuation::constant(c.valuation))
}

fn measure(c: &Common, io: &mut Io, file: Option<&str>, grid: bool, random: Option<usize>) -> Outcome {
    if grid {
        return measure_grid(c, io);
    }
    if let Some(n) = random {
        return measure_random(c, io, n);
    }
    let path = file.unwrap_or("-");
    let proof = read_proof(io, path)?;
    validate(&proof)?;
    let v = valuation(c)?;
    let g = Guard::default();
    let (reports, budget, count) = match &proof {
        ProofFile::G4ip { derivation, .. } => {
            let reports = audit_derivation(derivation, &v, &g).map_err(input_error)?;
            let budget = termination_budget(&derivation.sequent, &v).ok().map(|b| b.to_string());
            (reports, budget, non_invertible_count(derivation))
        }
        ProofFile::Hs { proof } => (hs_value_audit(proof, &v, &g).map_err(input_error)?, None, proof.size()),
    };
    let violations = reports.iter().filter(|r| r.verdict == Verdict::Violation).count();
    match c.emit {
        Emit::Json => io.json(&json!({
            "valuation": c.valuation,
            "nodes": reports,
            "non_invertible": count,
            "budget": budget,
            "violations": violations,
        }))?,
        _ => {
            io.print(&render::audit_table(&reports))?;
            let budget = budget.map_or_else(|| "-".into(), |b| render::number(&b));
            io.print(&format!("non-invertible steps {count}, budget {budget}, violations {violations}"))?;
        }
    }
    Ok(if violations == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn measure_grid(c: &Common, io: &mut Io) -> Outcome {
    let reports = rule_grid(&DEFAULT_GRID_VALUES, DEFAULT_MAX_GAMMA);
    let clean = reports.iter().all(|r| r.is_clean());
    match c.emit {
        Emit::Json => io.json(&reports)?,
        _ => io.print(&render::grid_table(&reports))?,
    }
    Ok(if clean { EXIT_OK } else { EXIT_VIOLATION })
}

/// Random formulas for `measure --random`.
const RANDOM_ATOMS: usize = 4;
const RANDOM_MAX_CONNECTIVES: usize = 10;

fn measure_random(c: &Common, io: &mut Io, n: usize) -> Outcome {
    let v = valuation(c)?;
    let g = Guard::default();
    let mut rng = StdRng::seed_from_u64(c.seed);
    let leaves = atoms(RANDOM_ATOMS);
    let (mut proved, mut nodes, mut skipped) = (0, 0, 0);
    let mut violations: Vec<AuditReport> = Vec::new();
    for _ in 0..n {
        let size = rng.gen_range(0..=RANDOM_MAX_CONNECTIVES);
        let f = random_formula(&mut rng, &leaves, &Connective::ALL, size);
        let Ok(d) = prove(&Sequent::goal_only(f), ProverConfig::default()) else { continue };
        proved += 1;
        match audit_derivation(&d, &v, &g) {
            Ok(reports) => {
                nodes += reports.len();
                violations.extend(reports.into_iter().filter(|r| r.verdict == Verdict::Violation));
            }
            Err(_) => skipped += 1,
        }
    }
    let summary = json!({
        "seed": c.seed,
        "formulas": n,
        "provable": proved,
        "audited_nodes": nodes,
        "skipped": skipped,
        "violations": violations,
    });
    match c.emit {
        Emit::Json => io.json(&summary)?,
        _ => io.print(&format!(
            "{n} formulas (seed {}), {proved} provable, {nodes} nodes audited, {skipped} skipped past the digit guard, {} violations",
            c.seed,
            violations.len()
        ))?,
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
}

fn lemmas(c: &Common, io: &mut Io) -> Outcome {
    let report = check_inequality_lemmas(&LemmaRanges::default(), &Guard::default());
    let ce = check_g3ip_failure();
    match c.emit {
        Emit::Json => io.json(&json!({ "lemmas": report.lemmas, "g3ip_counterexample": ce }))?,
        _ => {
            io.print(&render::lemma_table(&report))?;
            io.print(&format!(
                "G3ip: a={} b={} c={} gamma={}: conclusion {} <= premises {}",
                ce.a, ce.b, ce.c, ce.gamma, ce.conclusion, ce.premises
            ))?;
        }
    }
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_VIOLATION })
}
