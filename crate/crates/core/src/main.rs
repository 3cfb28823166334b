use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mapping_programs::compiler::emit_asp_text;
use mapping_programs::frontend::{load_csv_facts, parse_atoms, parse_document, parse_query};
use mapping_programs::grounder::{cartesian, GroundingMode, GroundingOptions};
use mapping_programs::model::{Atom, Interpretation, Term};
use mapping_programs::oracle::EntailmentOracle;
use mapping_programs::pipeline::{compile, Prepared, DEFAULT_AUX_CAP};
use mapping_programs::solver::{
    solve_stats_report, CandidateSpace, HeadCheck, SolverOptions, Verdict, DEFAULT_CANDIDATE_CAP,
};
use mapping_programs::Error;

#[derive(Parser)]
#[command(name = "mapprog", version, about = "Reason about and compile nonmonotonic OBDA mapping programs")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a set of atoms is an answer set (exit 0 yes, 1 no, 2 inconsistent or bad input).
    Check {
        #[command(flatten)]
        input: Input,
        /// File with the candidate atoms, e.g. `{Empl(a), Boss(a)}`.
        candidate: PathBuf,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Enumerate answer sets.
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: SolveArgs,
        /// Stop after this many answer sets.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Cautious or brave entailment of a conjunctive query.
    Query {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "brave", required_unless_present = "brave")]
        cautious: bool,
        #[arg(long)]
        brave: bool,
        /// The query, e.g. `exists Y. hasSup(Y, a)`; free variables are answer variables.
        query: String,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Print the partial ground program.
    Ground {
        #[command(flatten)]
        input: Input,
    },
    /// Print the UCQ rewriting of a query under an ontology.
    Rewrite {
        /// The query to rewrite.
        query: String,
        /// Specification whose ontology is used (empty ontology otherwise).
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Compile into a ground classical ASP program.
    Compile {
        #[command(flatten)]
        input: Input,
        /// Output file (standard output otherwise).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Bound on auxiliary defining rules.
        #[arg(long, default_value_t = DEFAULT_AUX_CAP)]
        aux_cap: usize,
    },
    /// Enumerate and report oracle calls against their worst-case bounds.
    Stats {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solve: SolveArgs,
    },
}

#[derive(Args)]
struct Input {
    /// Specification file.
    spec: PathBuf,
    /// Extra database relation as CSV (header row, relation named after the file).
    #[arg(long = "facts", value_name = "CSV")]
    facts: Vec<PathBuf>,
    /// Partial grounding mode.
    #[arg(long, value_enum, default_value_t = Mode::Relevant)]
    mode: Mode,
}

#[derive(Args)]
struct SolveArgs {
    /// How rule heads are checked.
    #[arg(long, value_enum, default_value_t = Heads::Entailed)]
    heads: Heads,
    /// Atoms candidate answer sets are drawn from.
    #[arg(long, value_enum, default_value_t = Candidates::Relevant)]
    candidates: Candidates,
    /// Largest candidate space enumerated.
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Relevant,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Heads {
    Entailed,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Candidates {
    Relevant,
    FullBase,
    HeadsOnly,
}

impl SolveArgs {
    fn options(&self, limit: Option<usize>) -> SolverOptions {
        SolverOptions {
            head_check: match self.heads {
                Heads::Entailed => HeadCheck::Entailed,
                Heads::Explicit => HeadCheck::Explicit,
            },
            candidates: match self.candidates {
                Candidates::Relevant => CandidateSpace::Relevant,
                Candidates::FullBase => CandidateSpace::FullBase,
                Candidates::HeadsOnly => CandidateSpace::HeadsOnly,
            },
            cap: self.cap,
            limit,
            ..Default::default()
        }
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_cap() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

struct Loaded {
    prepared: Prepared,
    sources: BTreeSet<mapping_programs::model::Symbol>,
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let text = read(&input.spec)?;
    let mut doc = parse_document(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}:{e}", input.spec.display()),
    })?;
    for w in &doc.warnings {
        log::warn!("{}: {w}", input.spec.display());
    }
    for csv in &input.facts {
        load_csv_facts(csv, &mut doc.spec.database)?;
    }
    let sources = doc.source_predicates();
    Ok(Loaded {
        prepared: Prepared::new(doc.spec, &grounding(input))?,
        sources,
    })
}

fn grounding(input: &Input) -> GroundingOptions {
    GroundingOptions::mode(match input.mode {
        Mode::Relevant => GroundingMode::Relevant,
        Mode::Full => GroundingMode::Full,
    })
}

fn strings<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> Vec<String> {
    atoms.into_iter().map(|a| a.to_string()).collect()
}

fn tuple_text(t: &[Term]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    let io = |e: std::io::Error| Failure {
        code: 2,
        message: e.to_string(),
    };
    match cli.command {
        Command::Check {
            input,
            candidate,
            solve,
        } => {
            let loaded = load(&input)?;
            let atoms = parse_atoms(&read(&candidate)?, &loaded.sources).map_err(|e| Failure {
                code: 2,
                message: format!("{}:{e}", candidate.display()),
            })?;
            let solver = loaded.prepared.solver(solve.options(None));
            let v = solver.verify(&Interpretation::new(atoms));
            if json {
                writeln!(out, "{}", serde_json::to_string(&v).expect("serializable")).map_err(io)?;
            } else {
                let text = match &v.verdict {
                    Verdict::AnswerSet => "answer set".to_string(),
                    Verdict::NotModel { rule } => format!(
                        "not a model: violates `{}`",
                        loaded.prepared.pg.rules[*rule]
                    ),
                    Verdict::NotMinimal { removable } => {
                        format!("not minimal: `{removable}` can be removed")
                    }
                    Verdict::Inconsistent => "inconsistent with the ontology".to_string(),
                    Verdict::NotInDatabase { atom } => format!("source atom `{atom}` is not in the database"),
                    Verdict::OutsideBase { atom } => format!("`{atom}` is outside the Herbrand base"),
                };
                writeln!(out, "{text}").map_err(io)?;
            }
            Ok(match v.verdict {
                Verdict::AnswerSet => 0,
                Verdict::Inconsistent | Verdict::NotInDatabase { .. } | Verdict::OutsideBase { .. } => 2,
                _ => 1,
            })
        }
        Command::Solve {
            input,
            solve,
            limit,
        } => {
            let loaded = load(&input)?;
            let e = loaded.prepared.solver(solve.options(limit)).enumerate()?;
            for (i, s) in e.answer_sets.iter().enumerate() {
                if json {
                    let line = json!({"answer_set": i + 1, "atoms": strings(s.atoms_with_echo())});
                    writeln!(out, "{line}").map_err(io)?;
                } else {
                    writeln!(out, "{s}").map_err(io)?;
                }
            }
            if json {
                writeln!(out, "{}", json!({"stats": e.stats, "answer_sets": e.answer_sets.len()})).map_err(io)?;
            } else if e.answer_sets.is_empty() {
                eprintln!("no answer sets");
            } else {
                log::info!("{} answer set(s)", e.answer_sets.len());
            }
            Ok(0)
        }
        Command::Query {
            input,
            cautious,
            brave: _,
            query,
            solve,
        } => {
            let loaded = load(&input)?;
            let q = parse_query(&query)?;
            let solver = loaded.prepared.solver(solve.options(None));
            let all = solver.enumerate()?;
            let terms: Vec<Term> = loaded.prepared.pg.terms().into_iter().collect();
            let tuples: Vec<Vec<Term>> = if q.answer.is_empty() {
                vec![Vec::new()]
            } else {
                let mut ts = BTreeSet::new();
                for s in &all.answer_sets {
                    ts.extend(s.interpretation.atoms().iter().flat_map(|a| a.args.iter().cloned()));
                }
                ts.extend(terms);
                let domain: Vec<Term> = ts.into_iter().collect();
                cartesian(&domain, q.answer.len()).collect()
            };
            let mut answers = Vec::new();
            for t in tuples {
                let Some(instance) = q.instantiate(&t) else {
                    continue;
                };
                let mut verdicts = Vec::new();
                for s in &all.answer_sets {
                    verdicts.push(loaded.prepared.oracle.entails(&s.interpretation, &instance)?);
                }
                let holds = if cautious {
                    verdicts.iter().all(|v| *v)
                } else {
                    verdicts.iter().any(|v| *v)
                };
                if holds {
                    answers.push(t);
                }
            }
            let mode = if cautious { "cautious" } else { "brave" };
            if q.answer.is_empty() {
                let result = !answers.is_empty();
                if json {
                    writeln!(out, "{}", json!({"mode": mode, "query": q.to_string(), "entailed": result}))
                        .map_err(io)?;
                } else {
                    writeln!(out, "{result}").map_err(io)?;
                }
            } else if json {
                let rows: Vec<Vec<String>> = answers
                    .iter()
                    .map(|t| t.iter().map(|x| x.to_string()).collect())
                    .collect();
                writeln!(out, "{}", json!({"mode": mode, "query": q.to_string(), "answers": rows}))
                    .map_err(io)?;
            } else {
                for t in &answers {
                    writeln!(out, "{}", tuple_text(t)).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Ground { input } => {
            let loaded = load(&input)?;
            let pg = &loaded.prepared.pg;
            if json {
                let rules: Vec<String> = pg.rules.iter().map(|r| r.to_string()).collect();
                writeln!(out, "{}", json!({"rules": rules})).map_err(io)?;
            } else {
                write!(out, "{pg}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Rewrite { query, spec } => {
            let ontology = match spec {
                Some(path) => {
                    parse_document(&read(&path)?)
                        .map_err(|e| Failure {
                            code: 2,
                            message: format!("{}:{e}", path.display()),
                        })?
                        .spec
                        .ontology
                }
                None => Default::default(),
            };
            let q = parse_query(&query)?;
            let u = mapping_programs::oracle::rewrite_cq(&q, &ontology);
            if json {
                let ds: Vec<String> = u.disjuncts.iter().map(|d| d.to_string()).collect();
                writeln!(out, "{}", json!({"query": q.to_string(), "disjuncts": ds})).map_err(io)?;
            } else {
                for d in &u.disjuncts {
                    writeln!(out, "{d}").map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Compile {
            input,
            output,
            aux_cap,
        } => {
            let loaded = load(&input)?;
            let compiled = compile(&loaded.prepared.spec, &grounding(&input), aux_cap)?;
            let text = emit_asp_text(&compiled.classical);
            match &output {
                Some(path) => fs::write(path, &text).map_err(|e| Failure {
                    code: 2,
                    message: format!("{}: {e}", path.display()),
                })?,
                None if !json => out.write_all(text.as_bytes()).map_err(io)?,
                None => {}
            }
            if json {
                let aux: Vec<String> = compiled.classical.aux.iter().map(|s| s.to_string()).collect();
                let mut summary = json!({
                    "rewritten_rules": compiled.rewritten.program.rules.len(),
                    "exists_rules": compiled.exists.rules.len(),
                    "classical_rules": compiled.classical.rules.len(),
                    "aux_predicates": aux,
                });
                if output.is_none() {
                    summary["program"] = json!(text);
                }
                writeln!(out, "{summary}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Stats { input, solve } => {
            let loaded = load(&input)?;
            let e = loaded.prepared.solver(solve.options(None)).enumerate()?;
            let report = solve_stats_report(&e.stats, &loaded.prepared.pg);
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("serializable")).map_err(io)?;
            } else {
                writeln!(out, "{report}").map_err(io)?;
            }
            Ok(if report.within_bounds { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = lock.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
