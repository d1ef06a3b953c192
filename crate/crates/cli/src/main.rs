//! `grothkit`: finite categories, Grothendieck constructions and
//! opfibration checks from the command line.

mod commands;
mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grothkit_core::budget::Budget;
use grothkit_dsl::{Class, Diagnostic, Workspace};
use serde_json::json;

use report::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(
    name = "grothkit",
    version,
    about = "Finite categories, Grothendieck constructions and opfibrations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Input file; repeat to read several. Without one, standard input is read.
    #[arg(short = 'i', long = "input", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Where generated entities are written.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print a digraph rendering of the relevant categories.
    #[arg(long, global = true)]
    pub dot: bool,
    /// Search budget in nodes.
    #[arg(long, global = true, env = "GROTHKIT_BUDGET", default_value_t = Budget::DEFAULT_LIMIT)]
    pub budget: u64,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse, resolve and check every entity.
    Validate,
    /// Print the workspace with every builder expanded to tables.
    Build,
    /// Search for an isomorphism between two categories.
    Iso {
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
    },
    /// The total category of a diagram, with its projection and cleavage.
    Groth {
        #[arg(long)]
        diagram: Option<String>,
    },
    /// The fibre diagram of a split opfibration.
    Ungroth {
        #[arg(long)]
        cleavage: Option<String>,
    },
    /// Split morphisms of a total category into cartesian then vertical parts.
    Factorize {
        #[arg(long)]
        diagram: Option<String>,
        /// A morphism of the total category; all are factored when omitted.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// The functor out of the total category induced by a lax cocone.
    CoconeFactorize {
        #[arg(long)]
        cocone: Option<String>,
    },
    /// Compare the total category of a reindexed diagram with the pullback.
    BaseChange {
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
    },
    /// Check the split opfibration laws of a cleavage or diagram-opfibration.
    CheckOpfib {
        #[arg(long, conflicts_with = "opfib")]
        cleavage: Option<String>,
        #[arg(long)]
        opfib: Option<String>,
    },
    /// Check that a functor or diagram-opfibration is discrete.
    CheckDiscrete {
        #[arg(long, conflicts_with_all = ["cleavage", "opfib"])]
        functor: Option<String>,
        #[arg(long, conflicts_with = "opfib")]
        cleavage: Option<String>,
        #[arg(long)]
        opfib: Option<String>,
    },
    /// Check that a square of functors carries chosen lifts to chosen lifts.
    CheckCleavage {
        #[arg(long)]
        top: String,
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Pull a cleavage back along a functor, or a diagram-opfibration along a
    /// diagram morphism.
    Pullback {
        #[arg(long, requires = "cleavage", conflicts_with_all = ["diagmor", "opfib"])]
        functor: Option<String>,
        #[arg(long)]
        cleavage: Option<String>,
        #[arg(long, requires = "opfib")]
        diagmor: Option<String>,
        #[arg(long)]
        opfib: Option<String>,
    },
    /// Operations on diagrams over total categories.
    #[command(subcommand)]
    Indexed(Indexed),
    /// List, print or write the shipped examples.
    Examples {
        /// Print one example.
        #[arg(long)]
        name: Option<String>,
        /// Also emit this many sampled diagrams, drawn from `--seed`.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Indexed {
    /// The diagram-opfibration of a diagram `Z` on the total category of `F`.
    Groth {
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        over: Option<String>,
    },
    /// The fibre diagram of a diagram-opfibration, on the total category of its base diagram.
    Fibres {
        #[arg(long)]
        opfib: Option<String>,
    },
    /// Check a round trip through both constructions.
    Roundtrip {
        #[arg(long, conflicts_with_all = ["diagram", "over"])]
        opfib: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
        /// The diagram whose total category carries `--diagram`; inferred when omitted.
        #[arg(long)]
        over: Option<String>,
    },
    /// Check that discreteness matches Set-valuedness.
    Discrete {
        #[arg(long, conflicts_with_all = ["diagram", "over"])]
        opfib: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
        /// The diagram whose total category carries `--diagram`; inferred when omitted.
        #[arg(long)]
        over: Option<String>,
    },
    /// Check that fibres commute with pullback along a diagram morphism.
    Pseudonat {
        #[arg(long)]
        diagmor: Option<String>,
        #[arg(long)]
        opfib: Option<String>,
    },
    /// Fibrewise opposites of a diagram or diagram-opfibration.
    Dualize {
        #[arg(long, conflicts_with = "diagram")]
        opfib: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
    },
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::Build => "build".into(),
            Command::Iso { .. } => "iso".into(),
            Command::Groth { .. } => "groth".into(),
            Command::Ungroth { .. } => "ungroth".into(),
            Command::Factorize { .. } => "factorize".into(),
            Command::CoconeFactorize { .. } => "cocone-factorize".into(),
            Command::BaseChange { .. } => "base-change".into(),
            Command::CheckOpfib { .. } => "check-opfib".into(),
            Command::CheckDiscrete { .. } => "check-discrete".into(),
            Command::CheckCleavage { .. } => "check-cleavage".into(),
            Command::Pullback { .. } => "pullback".into(),
            Command::Examples { .. } => "examples".into(),
            Command::Indexed(i) => format!(
                "indexed {}",
                match i {
                    Indexed::Groth { .. } => "groth",
                    Indexed::Fibres { .. } => "fibres",
                    Indexed::Roundtrip { .. } => "roundtrip",
                    Indexed::Discrete { .. } => "discrete",
                    Indexed::Pseudonat { .. } => "pseudonat",
                    Indexed::Dualize { .. } => "dualize",
                }
            ),
        }
    }
}

/// Why a command could not run.
#[derive(Debug)]
pub enum Fail {
    Usage(String),
    Input(Diagnostic),
}

fn read_inputs(g: &Global) -> Result<(Workspace, Vec<String>), Fail> {
    let mut ws = Workspace::new();
    let mut names = Vec::new();
    if g.inputs.is_empty() {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Fail::Usage(format!("reading standard input: {e}")))?;
        ws.extend("<stdin>", &text).map_err(Fail::Input)?;
        names.push("-".into());
    }
    for p in &g.inputs {
        let shown = p.display().to_string();
        let text = if shown == "-" {
            let mut t = String::new();
            io::stdin().read_to_string(&mut t).map(|_| t)
        } else {
            std::fs::read_to_string(p)
        }
        .map_err(|e| Fail::Usage(format!("cannot read `{shown}`: {e}")))?;
        ws.extend(&shown, &text).map_err(Fail::Input)?;
        names.push(shown);
    }
    Ok((ws, names))
}

fn failure_report(command: &str, inputs: &[String], budget: &Budget, fail: Fail) -> Report {
    let mut r = Report::new(command, inputs, budget);
    match fail {
        Fail::Usage(msg) => {
            r.set(Outcome::Error)
                .note(msg.clone())
                .counterexamples
                .push(json!({ "error": msg }));
        }
        Fail::Input(d) => {
            let semantic = d.class == Class::Semantic;
            r.note(d.to_string())
                .counterexamples
                .push(serde_json::to_value(&d).unwrap_or_default());
            r.set(if semantic {
                Outcome::Refuted
            } else {
                Outcome::Error
            });
        }
    }
    r
}

fn emit(g: &Global, mut r: Report) -> Result<Outcome, String> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let document_to_stdout = g.output.is_none() && !g.dot && !g.json;
    if let Some(doc) = r.document.take() {
        match &g.output {
            Some(p) => {
                std::fs::write(p, &doc)
                    .map_err(|e| format!("cannot write `{}`: {e}", p.display()))?;
                r.note(format!("wrote {}", p.display()));
            }
            None if g.json => {
                r.witness(json!({ "document": doc }));
            }
            None if document_to_stdout => {
                // the document owns stdout; the report moves to stderr
                eprint!("{}", r.to_text());
                out.write_all(doc.as_bytes()).map_err(|e| e.to_string())?;
                return Ok(r.verdict);
            }
            None => {}
        }
    }
    if g.json {
        let s = serde_json::to_string_pretty(&r).map_err(|e| e.to_string())?;
        writeln!(out, "{s}").map_err(|e| e.to_string())?;
    } else if g.dot {
        eprint!("{}", r.to_text());
    } else {
        out.write_all(r.to_text().as_bytes())
            .map_err(|e| e.to_string())?;
    }
    if g.dot {
        for graph in &r.graphs {
            out.write_all(graph.as_bytes()).map_err(|e| e.to_string())?;
        }
    }
    Ok(r.verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    let label = cli.command.label();
    let mut budget = Budget::new(g.budget);
    let report = match &cli.command {
        Command::Examples { name, random } => {
            commands::examples(&g, name.as_deref(), *random, &budget)
        }
        cmd => match read_inputs(&g) {
            Ok((ws, inputs)) => {
                let ctx = commands::Ctx { ws, inputs };
                commands::run(cmd, &ctx, &mut budget)
                    .unwrap_or_else(|f| failure_report(&label, &ctx.inputs, &budget, f))
            }
            Err(f) => {
                let inputs: Vec<String> =
                    g.inputs.iter().map(|p| p.display().to_string()).collect();
                failure_report(&label, &inputs, &budget, f)
            }
        },
    };
    match emit(&g, report) {
        Ok(v) => ExitCode::from(v.exit_code()),
        Err(e) => {
            eprintln!("grothkit: {e}");
            ExitCode::from(2)
        }
    }
}
