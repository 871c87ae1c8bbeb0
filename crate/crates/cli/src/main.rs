//! `qfac` command-line tool: validate, simulate, transform and build machine
//! documents, and run the succinctness experiment.

mod language;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qfac::analysis::{self, bounded_cutpoint_report, check_qfac_dfa_bound, BoundRow, ReportRow};
use qfac::constructions::{
    build_base_dfa, build_exact_finite_qfac, build_lhp_dfa, build_lhp_qfac, build_modp_moqfa_over,
    combine_dfa_moqfa, kletter_to_qfac, reversible_qfac_to_mo, CombineOp, LhpParams,
};
use qfac::experiment::succinctness_grid;
use qfac::{Alphabet, AnyMachine, Dfa, Error, Machine, MachineDocument, SetOp};

use language::Language;

#[derive(Parser)]
#[command(name = "qfac", version, about = "Quantum and classical finite automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a machine document against its type invariants.
    Validate(InputArgs),
    /// Print the acceptance probability of one word.
    Run {
        #[command(flatten)]
        input: InputArgs,
        /// The word to read; omit for the empty word.
        #[arg(long, default_value = "")]
        word: String,
        /// Also write the probabilities as a one-row CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Minimize a DFA document.
    Minimize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Combine a DFA with a second DFA or with an MO-1QFA.
    Product {
        #[command(flatten)]
        input: InputArgs,
        /// The second operand.
        #[arg(long)]
        with: PathBuf,
        /// intersect, union or diff for two DFAs; intersect, union,
        /// dfa_minus_q or q_minus_dfa for a DFA and an MO-1QFA.
        #[arg(long, default_value = "intersect")]
        op: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Search a DFA for the two forbidden constructions.
    Detect {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "both")]
        which: Which,
        /// Exit with status 1 if any witness is found.
        #[arg(long)]
        expect_none: bool,
    },
    /// Convert a k-letter machine to a 1QFAC, or a reversible 1QFAC to an MO-1QFA.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        to: Target,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build a machine from one of the constructions.
    #[command(subcommand)]
    Build(Build),
    /// Measure acceptance extremes against a target language.
    Report {
        #[command(flatten)]
        input: InputArgs,
        /// finite:W1,W2,... | lhp:H,P | mod:P | dfa:PATH
        #[arg(long)]
        lang: Language,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        /// Write the report (and the bound check, if any) as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Experiments producing CSV tables.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Args)]
struct InputArgs {
    /// Machine document to read.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Mm,
    F,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Qfac,
    Mo,
}

#[derive(Subcommand)]
enum Build {
    /// Minimal-size automaton for L(h, p) before minimization.
    LhpDfa {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The (h + 3)-state base automaton.
    BaseDfa {
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// MO-1QFA for lengths divisible by a prime p with one-sided error eps.
    Modp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "0")]
        alphabet: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// 1QFAC recognizing a finite language exactly.
    ExactFinite {
        /// Comma-separated words; an empty item is the empty word.
        #[arg(long)]
        lang: String,
        #[arg(long, default_value = "01")]
        alphabet: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// 1QFAC for L(h, p): base automaton times the mod-p MO-1QFA.
    LhpQfac {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// One row per (h, p): DFA size, detectors, 1QFAC size and isolation.
    Succinctness {
        /// Comma-separated values of h.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        h: Vec<usize>,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        p: Vec<u64>,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// A failed command with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Assertion(_) => 3,
            Error::InvalidParameter(_) | Error::InvalidAlphabet(_) | Error::UnknownSymbol(_) => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

type Outcome = Result<(), Failure>;
type Search = (&'static str, fn(&Dfa) -> Option<qfac::ForbiddenWitness>);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Validate(input) => validate(&input),
        Command::Run { input, word, csv } => run(&input, &word, csv),
        Command::Minimize { input, out } => {
            let dfa = load_dfa(&input)?;
            emit(&out, &dfa.minimize().into(), Some(json!({ "operation": "minimize" })))
        }
        Command::Product { input, with, op, out } => product(&input, &with, &op, &out),
        Command::Detect { input, which, expect_none } => detect(&input, which, expect_none),
        Command::Convert { input, to, out } => convert(&input, to, &out),
        Command::Build(build) => build_machine(build),
        Command::Report { input, lang, max_len, csv } => report(&input, &lang, max_len, csv),
        Command::Experiment(Experiment::Succinctness { h, p, eps, seed, max_len, csv }) => {
            let rows = succinctness_grid(&h, &p, eps, seed, max_len)?;
            write_rows(csv, &rows)
        }
    }
}

fn load(input: &InputArgs) -> Result<AnyMachine, Failure> {
    Ok(MachineDocument::load(&input.input)?.to_machine()?)
}

/// Loads a machine and refuses to continue if it breaks its invariants.
fn load_valid(input: &InputArgs) -> Result<AnyMachine, Failure> {
    let machine = load(input)?;
    let violations = machine.validate();
    if violations.is_empty() {
        return Ok(machine);
    }
    for v in &violations {
        eprintln!("violation: {v}");
    }
    Err(Failure::new(1, format!("{} is not a valid {}", input.input.display(), machine.type_name())))
}

fn load_dfa(input: &InputArgs) -> Result<Dfa, Failure> {
    match load(input)? {
        AnyMachine::Dfa(d) => Ok(d),
        other => Err(Failure::new(2, format!("expected a dfa document, got {}", other.type_name()))),
    }
}

fn emit(out: &OutArgs, machine: &AnyMachine, meta: Option<Value>) -> Outcome {
    let doc = MachineDocument::new(machine, meta);
    match &out.out {
        Some(path) => {
            doc.save(path)?;
            eprintln!("wrote {} ({})", path.display(), machine.type_name());
            Ok(())
        }
        None => Ok(io::stdout().write_all(doc.to_json().as_bytes())?),
    }
}

fn write_rows<T: Serialize>(csv: Option<PathBuf>, rows: &[T]) -> Outcome {
    match csv {
        Some(path) => {
            let file = fs::File::create(&path)?;
            analysis::write_csv(file, rows)?;
            eprintln!("wrote {} ({} rows)", path.display(), rows.len());
        }
        None => analysis::write_csv(io::stdout().lock(), rows)?,
    }
    Ok(())
}

fn validate(input: &InputArgs) -> Outcome {
    let machine = load(input)?;
    let violations = machine.validate();
    if violations.is_empty() {
        println!("ok: {} is a valid {}", input.input.display(), machine.type_name());
        return Ok(());
    }
    for v in &violations {
        println!("violation: {v}");
    }
    Err(Failure::new(1, format!("{} violation(s)", violations.len())))
}

#[derive(Serialize)]
struct RunRow<'a> {
    machine: &'a str,
    word: &'a str,
    accept: f64,
    reject: Option<f64>,
}

fn run(input: &InputArgs, word: &str, csv: Option<PathBuf>) -> Outcome {
    let machine = load_valid(input)?;
    let accept = machine.accept_prob(word)?;
    let reject = match &machine {
        AnyMachine::Mm(m) => Some(m.probabilities(word)?.1),
        _ => None,
    };
    println!("accept {accept:.12}");
    if let Some(r) = reject {
        println!("reject {r:.12}");
    }
    if let Some(path) = csv {
        let row = RunRow { machine: machine.type_name(), word, accept, reject };
        analysis::write_csv(fs::File::create(path)?, &[row])?;
    }
    Ok(())
}

fn product(input: &InputArgs, with: &PathBuf, op: &str, out: &OutArgs) -> Outcome {
    let left = load_dfa(input)?;
    let right = MachineDocument::load(with)?.to_machine()?;
    let meta = Some(json!({ "operation": "product", "op": op }));
    let result: AnyMachine = match right {
        AnyMachine::Dfa(right) => left.product(&right, op.parse::<SetOp>()?)?.into(),
        AnyMachine::Mo(right) => {
            let violations = right.validate();
            if !violations.is_empty() {
                return Err(Failure::new(1, format!("second operand: {}", violations[0])));
            }
            combine_dfa_moqfa(&left, &right, op.parse::<CombineOp>()?)?.into()
        }
        other => {
            return Err(Failure::new(
                2,
                format!("cannot combine a dfa with a {} document", other.type_name()),
            ))
        }
    };
    emit(out, &result, meta)
}

fn detect(input: &InputArgs, which: Which, expect_none: bool) -> Outcome {
    let dfa = load_dfa(input)?;
    let minimal = dfa.minimize();
    if minimal.num_states() != dfa.num_states() {
        eprintln!(
            "note: input has {} states; searching its {}-state minimal automaton",
            dfa.num_states(),
            minimal.num_states()
        );
    }
    let mut found = 0;
    let searches: &[Search] = match which {
        Which::Mm => &[("mm", Dfa::detect_mm_forbidden)],
        Which::F => &[("f", Dfa::detect_f_construction)],
        Which::Both => &[("mm", Dfa::detect_mm_forbidden), ("f", Dfa::detect_f_construction)],
    };
    for (label, search) in searches {
        match search(&minimal) {
            Some(w) => {
                if !w.verify(&minimal)? {
                    return Err(Error::Assertion(format!("witness {w} does not replay")).into());
                }
                println!("{w}");
                found += 1;
            }
            None => println!("{label}: none"),
        }
    }
    if expect_none && found > 0 {
        return Err(Failure::new(1, format!("{found} forbidden construction(s) found")));
    }
    Ok(())
}

fn convert(input: &InputArgs, to: Target, out: &OutArgs) -> Outcome {
    let machine = load_valid(input)?;
    let converted: AnyMachine = match (to, &machine) {
        (Target::Qfac, AnyMachine::MultiLetter(m)) => kletter_to_qfac(m)?.into(),
        (Target::Mo, AnyMachine::Qfac(m)) => reversible_qfac_to_mo(m)?.into(),
        (Target::Qfac, other) => {
            return Err(Failure::new(2, format!("--to qfac needs an ml1qfa document, got {}", other.type_name())))
        }
        (Target::Mo, other) => {
            return Err(Failure::new(2, format!("--to mo needs a qfac document, got {}", other.type_name())))
        }
    };
    let meta = json!({ "operation": "convert", "from": machine.type_name() });
    emit(out, &converted, Some(meta))
}

fn alphabet(symbols: &str) -> Result<Alphabet, Failure> {
    Ok(Alphabet::new(symbols.chars())?)
}

fn build_machine(build: Build) -> Outcome {
    match build {
        Build::LhpDfa { h, p, out } => {
            let meta = json!({ "construction": "lhp-dfa", "h": h, "p": p });
            emit(&out, &build_lhp_dfa(h, p)?.into(), Some(meta))
        }
        Build::BaseDfa { h, out } => {
            let meta = json!({ "construction": "base-dfa", "h": h });
            emit(&out, &build_base_dfa(h)?.into(), Some(meta))
        }
        Build::Modp { p, eps, seed, alphabet: symbols, out } => {
            let built = build_modp_moqfa_over(alphabet(&symbols)?, p, eps, seed)?;
            let meta = json!({ "construction": "modp", "seed": seed, "modp": built.params });
            emit(&out, &built.machine.into(), Some(meta))
        }
        Build::ExactFinite { lang, alphabet: symbols, out } => {
            let words: Vec<&str> = lang.split(',').collect();
            let machine = build_exact_finite_qfac(&words, alphabet(&symbols)?)?;
            let meta = json!({ "construction": "exact-finite", "language": words });
            emit(&out, &machine.into(), Some(meta))
        }
        Build::LhpQfac { h, p, eps, seed, out } => {
            let (machine, modp) = build_lhp_qfac(LhpParams::new(h, p, eps)?, seed)?;
            let meta = json!({ "construction": "lhp-qfac", "h": h, "p": p, "seed": seed, "modp": modp });
            emit(&out, &machine.into(), Some(meta))
        }
    }
}

fn report(input: &InputArgs, lang: &Language, max_len: usize, csv: Option<PathBuf>) -> Outcome {
    let machine = load_valid(input)?;
    let target = lang.resolve(machine.alphabet())?;
    let r = bounded_cutpoint_report(&machine, |w| target.contains(w), max_len)?;
    println!("words up to length {}: {} members, {} non-members", r.max_len, r.members, r.nonmembers);
    println!(
        "member min {:.12} at {:?}",
        r.member_min_prob,
        r.hardest_member.as_deref().unwrap_or("-")
    );
    println!(
        "non-member max {:.12} at {:?}",
        r.nonmember_max_prob,
        r.hardest_nonmember.as_deref().unwrap_or("-")
    );
    println!("cut-point {:.12}, isolation {:.12}", r.cut_point, r.isolation);

    let quantum = match &machine {
        AnyMachine::Qfac(q) => Some((q.num_classical(), q.dim())),
        AnyMachine::Mo(m) => Some((1, m.dim())),
        _ => None,
    };
    let bound = match quantum {
        Some((k, n)) if r.isolation > 0.0 => {
            let m = target.minimal.num_states();
            let b = check_qfac_dfa_bound(m, k, n, r.isolation)?;
            println!(
                "bound {}: m = {m} <= {:.6e} ({})",
                b.bound_name,
                b.rhs,
                if b.holds { "holds" } else { "VIOLATED" }
            );
            Some(b)
        }
        _ => None,
    };

    if let Some(path) = csv {
        let mut file = fs::File::create(path)?;
        let name = input.input.display().to_string();
        analysis::write_csv(&mut file, &[ReportRow::new(&name, &lang.to_string(), &r)])?;
        if let Some(b) = &bound {
            writeln!(file)?;
            analysis::write_csv(&mut file, &[BoundRow::from(b)])?;
        }
    }
    match bound {
        Some(b) if !b.holds => Err(Error::Assertion(format!("bound {} violated", b.bound_name)).into()),
        _ => Ok(()),
    }
}
