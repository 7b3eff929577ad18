//! `bnnkc`: command-line access to BNN representations.
//!
//! Decision commands exit 0 for yes and 1 for no; usage, parse and domain
//! errors exit 2. The primary result is always the last line on stdout.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use bnnkc_core::analysis::{components, min_bnn, SideReport};
use bnnkc_core::compile::{bnn_to_bdd, mods_to_bnn};
use bnnkc_core::families::{
    gen_exact_half, gen_hsis_from_3sat, gen_hsis_pair, gen_majority, gen_parity, gen_threshold,
    gen_xor_match, xor_match_cnf,
};
use bnnkc_core::formats::{self, Kind};
use bnnkc_core::queries::{self, Entailment, Equivalence};
use bnnkc_core::rep::{Validity, EXH_MAX};
use bnnkc_core::transforms::{condition, forget, Reindexed};
use bnnkc_core::{reproduce, BnnRep, BoolVec, Clause, Error, FunctionTable, Limits, Term};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bnnkc",
    version,
    about = "Boolean nearest neighbor knowledge compilation"
)]
struct Cli {
    /// Largest dimension for exhaustive (2^n) operations.
    #[arg(long, global = true, env = "BNNKC_MAX_N", default_value_t = EXH_MAX)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result document to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a representation at one vector.
    Eval {
        file: PathBuf,
        /// Bit string such as 0101.
        x: String,
    },
    /// Check that no vector is equidistant from P and N.
    Validate { file: PathBuf },
    /// Swap the positive and negative prototypes.
    Negate {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Answer a polynomial-time query.
    #[command(subcommand)]
    Query(Query),
    /// List models in lexicographic order.
    Models {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Count models by enumeration.
    Count { file: PathBuf },
    /// Exhaustive equivalence check.
    Equal { a: PathBuf, b: PathBuf },
    /// Exhaustive entailment check: does A entail B?
    Entails { a: PathBuf, b: PathBuf },
    /// Fix the literals of a term and drop those variables.
    Condition {
        file: PathBuf,
        /// Signed literals such as "1 -3".
        #[arg(long, allow_hyphen_values = true)]
        term: String,
        #[command(flatten)]
        out: Output,
    },
    /// Existentially quantify variables away.
    Forget {
        file: PathBuf,
        /// Variables such as "2 4".
        #[arg(long)]
        vars: String,
        #[command(flatten)]
        out: Output,
    },
    /// Compile between languages.
    #[command(subcommand)]
    Compile(Compile),
    /// Generate a family member or reduction instance.
    #[command(subcommand)]
    Generate(Generate),
    /// Report hypercube components and the size lower bound.
    Analyze { file: PathBuf },
    /// Find a smallest representation (n <= 4).
    Minimize {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run the reproduction table.
    Reproduce,
}

#[derive(Subcommand)]
enum Query {
    /// Consistency: is there a model?
    Co { file: PathBuf },
    /// Validity: is every vector a model?
    Va { file: PathBuf },
    /// Does the term imply the function?
    Im {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        term: String,
    },
    /// Does the function entail the clause?
    Ce {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        clause: String,
    },
}

#[derive(Subcommand)]
enum Compile {
    /// Model list to (M, δ(M)).
    ModsToBnn {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// BNN to a binary decision diagram.
    BnnToBdd {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// Parity on n variables (BNN).
    Parity {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Non-strict majority on n variables (BNN).
    Majority {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Threshold: weight at least t (model list).
    Threshold {
        n: usize,
        t: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Pairwise XOR on 2n variables (model list, or CNF with --cnf).
    XorMatch {
        n: usize,
        #[arg(long)]
        cnf: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Weight exactly n on 2n variables (model list).
    ExactHalf {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The (F, H) pair for a graph with an even number of vertices.
    Hsis {
        graph: PathBuf,
        #[arg(long)]
        f_out: PathBuf,
        #[arg(long)]
        h_out: PathBuf,
    },
    /// Half-size independent set graph of a 3-CNF.
    #[command(name = "hsis-3sat")]
    Hsis3sat {
        cnf: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

type Outcome = anyhow::Result<ExitCode>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("bnnkc: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let limits = Limits::with_exh_max(cli.max_n)?;
    let ctx = Ctx { limits };
    match cli.command {
        Command::Eval { file, x } => {
            let rep = ctx.bnn(&file)?;
            let x: BoolVec = x.parse().map_err(|e| anyhow!("bad vector {x:?}: {e}"))?;
            let v = rep.evaluate(&x)?;
            println!("{}", u8::from(v));
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { file } => {
            let rep = ctx.bnn(&file)?;
            match rep.validate_semantic(&ctx.limits)? {
                Validity::Valid => answer("valid", true),
                Validity::TieWitness(x) => answer(&format!("tie x={x}"), false),
            }
        }
        Command::Negate { file, out } => {
            let rep = ctx.bnn(&file)?;
            emit(&out, &formats::write_bnn(&rep.negate()))
        }
        Command::Query(q) => ctx.query(q),
        Command::Models { file, limit } => {
            let rep = ctx.bnn(&file)?;
            let mut stdout = io::stdout().lock();
            for x in queries::me(&rep, limit) {
                writeln!(stdout, "{x}")?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { file } => {
            let rep = ctx.bnn(&file)?;
            println!("{}", queries::ct_enumerate(&rep));
            Ok(ExitCode::SUCCESS)
        }
        Command::Equal { a, b } => {
            let (ra, rb) = (ctx.bnn(&a)?, ctx.bnn(&b)?);
            match queries::eq(&ra, &rb, &ctx.limits)? {
                Equivalence::Equivalent => answer("equivalent", true),
                Equivalence::Counterexample(x) => answer(&format!("not-equivalent x={x}"), false),
            }
        }
        Command::Entails { a, b } => {
            let (ra, rb) = (ctx.bnn(&a)?, ctx.bnn(&b)?);
            match queries::se(&ra, &rb, &ctx.limits)? {
                Entailment::Entails => answer("entails", true),
                Entailment::Counterexample(x) => answer(&format!("not-entails x={x}"), false),
            }
        }
        Command::Condition { file, term, out } => {
            let rep = ctx.bnn(&file)?;
            let t: Term = term.parse()?;
            emit(&out, &reindexed(&condition(&rep, &t, &ctx.limits)?))
        }
        Command::Forget { file, vars, out } => {
            let rep = ctx.bnn(&file)?;
            let vars = vars
                .split_whitespace()
                .map(|v| {
                    v.parse::<usize>()
                        .map_err(|_| anyhow!("bad variable {v:?}"))
                })
                .collect::<anyhow::Result<BTreeSet<usize>>>()?;
            emit(&out, &reindexed(&forget(&rep, &vars, &ctx.limits)?))
        }
        Command::Compile(Compile::ModsToBnn { file, out }) => {
            let m = ctx.load(&file, Kind::Mods, formats::parse_mods)?;
            emit(&out, &formats::write_bnn(&mods_to_bnn(&m)))
        }
        Command::Compile(Compile::BnnToBdd { file, out }) => {
            let rep = ctx.bnn(&file)?;
            emit(&out, &formats::write_bdd(&bnn_to_bdd(&rep)))
        }
        Command::Generate(g) => ctx.generate(g),
        Command::Analyze { file } => {
            let f = ctx.function(&file)?;
            analyze(&f)
        }
        Command::Minimize { file, out } => {
            let f = ctx.function(&file)?;
            let (size, witness) = min_bnn(&f)?;
            let text = formats::write_bnn(&witness);
            match &out.output {
                Some(path) => write_file(path, &text)?,
                None => print!("{text}"),
            }
            println!("size={size}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce => {
            let rows = reproduce::run_all();
            for r in &rows {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("{status} {:>2} {} ({})", r.id, r.title, r.detail);
            }
            let failed = rows.iter().filter(|r| !r.passed).count();
            answer(&format!("failed={failed}"), failed == 0)
        }
    }
}

struct Ctx {
    limits: Limits,
}

impl Ctx {
    fn load<T>(
        &self,
        path: &Path,
        kind: Kind,
        parse: impl Fn(&str, &Limits) -> bnnkc_core::Result<T>,
    ) -> anyhow::Result<T> {
        let text = read_input(path)?;
        parse(&text, &self.limits).map_err(|e| located(path, e, kind))
    }

    fn bnn(&self, path: &Path) -> anyhow::Result<BnnRep> {
        self.load(path, Kind::Bnn, formats::parse_bnn)
    }

    /// A truth table from either a BNN or a model list.
    fn function(&self, path: &Path) -> anyhow::Result<FunctionTable> {
        let text = read_input(path)?;
        match formats::detect_kind(&text) {
            Some(Kind::Mods) => {
                formats::parse_mods(&text, &self.limits).map_err(|e| located(path, e, Kind::Mods))
            }
            _ => {
                let rep = formats::parse_bnn(&text, &self.limits)
                    .map_err(|e| located(path, e, Kind::Bnn))?;
                Ok(rep.to_truth_table(&self.limits)?)
            }
        }
    }

    fn query(&self, q: Query) -> Outcome {
        let ans = match q {
            Query::Co { file } => queries::co(&self.bnn(&file)?),
            Query::Va { file } => queries::va(&self.bnn(&file)?),
            Query::Im { file, term } => {
                let t: Term = term.parse()?;
                queries::im(&self.bnn(&file)?, &t)?
            }
            Query::Ce { file, clause } => {
                let c: Clause = clause.parse()?;
                queries::ce(&self.bnn(&file)?, &c)?
            }
        };
        answer(if ans { "true" } else { "false" }, ans)
    }

    fn generate(&self, g: Generate) -> Outcome {
        let limits = &self.limits;
        match g {
            Generate::Parity { n, out } => emit(&out, &formats::write_bnn(&gen_parity(n, limits)?)),
            Generate::Majority { n, out } => {
                limits.check_polynomial(n)?;
                emit(&out, &formats::write_bnn(&gen_majority(n)?))
            }
            Generate::Threshold { n, t, out } => {
                emit(&out, &formats::write_mods(&gen_threshold(n, t, limits)?))
            }
            Generate::XorMatch { n, cnf: true, out } => {
                emit(&out, &formats::write_cnf(&xor_match_cnf(n)?))
            }
            Generate::XorMatch { n, cnf: false, out } => {
                emit(&out, &formats::write_mods(&gen_xor_match(n, limits)?))
            }
            Generate::ExactHalf { n, out } => {
                emit(&out, &formats::write_mods(&gen_exact_half(n, limits)?))
            }
            Generate::Hsis {
                graph,
                f_out,
                h_out,
            } => {
                let g = self.load(&graph, Kind::Graph, |t, _| formats::parse_graph(t))?;
                let (f, h) = gen_hsis_pair(&g)?;
                write_file(&f_out, &formats::write_bnn(&f))?;
                write_file(&h_out, &formats::write_bnn(&h))?;
                println!("wrote {} {}", f_out.display(), h_out.display());
                Ok(ExitCode::SUCCESS)
            }
            Generate::Hsis3sat { cnf, out } => {
                let phi = self.load(&cnf, Kind::Cnf, |t, _| formats::parse_cnf(t))?;
                emit(&out, &formats::write_graph(&gen_hsis_from_3sat(&phi)?))
            }
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Prefixes a parse error with the file name so locations read
/// `file:line:col`.
fn located(path: &Path, e: Error, kind: Kind) -> anyhow::Error {
    match e {
        Error::Syntax { .. } | Error::InvariantViolation { .. } => {
            anyhow!("{}:{e}", path.display())
        }
        _ => anyhow!("{}: {kind:?} input: {e}", path.display()),
    }
}

/// Prints a decision and maps it to exit code 0 or 1.
fn answer(line: &str, yes: bool) -> Outcome {
    println!("{line}");
    Ok(if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn emit(out: &Output, text: &str) -> Outcome {
    match &out.output {
        Some(path) => {
            write_file(path, text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn reindexed(r: &Reindexed) -> String {
    let map: Vec<String> = r
        .var_map
        .iter()
        .map(|(old, new)| format!("{old}->{new}"))
        .collect();
    format!(
        "# var-map {}\n{}",
        map.join(" "),
        formats::write_bnn(&r.rep)
    )
}

fn side(name: &str, s: &SideReport) -> String {
    let largest = s.sizes.iter().max().copied().unwrap_or(0);
    format!(
        "{name}: {} components, {} isolated, largest {largest}",
        s.count(),
        s.isolated.len()
    )
}

fn analyze(f: &FunctionTable) -> Outcome {
    let report = components(f);
    println!("n={} models={}", f.n(), f.len());
    println!("{}", side("models", &report.positive));
    println!("{}", side("non-models", &report.negative));
    println!(
        "lb={} pos_cc={} neg_cc={} iso_pos={} iso_neg={}",
        report.lower_bound(),
        report.positive.count(),
        report.negative.count(),
        report.positive.isolated.len(),
        report.negative.isolated.len()
    );
    Ok(ExitCode::SUCCESS)
}
