//! `shufflec` — command-line front end for the shuffle-code synthesizer.
//!
//! Subcommands:
//!
//! * `synth`  — compile a transfer graph into a minimum-length shuffle code;
//! * `verify` — simulate a code file against a graph and report whether
//!   every transfer is realized;
//! * `oracle` — certify the synthesized length by exhaustive search, for
//!   graphs small enough to exhaust.
//!
//! Exit codes: 0 success, 1 unreadable or unparsable input, 2 invalid
//! transfer graph, 3 instance too large for the oracle, 4 verification
//! failure or length mismatch.

mod doc;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use shuffle_core::greedy::greedy_schedule;
use shuffle_core::oracle::{oracle_min_length, OracleError, MAX_ORACLE_VERTICES};
use shuffle_core::pipeline::synthesize;
use shuffle_core::rtg::Rtg;
use shuffle_core::sim::satisfies;

use doc::CodeDoc;

const EXIT_PARSE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;
const EXIT_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "shufflec",
    version,
    about = "Synthesize provably shortest shuffle codes for register transfer graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a transfer graph into a minimum-length shuffle code
    Synth {
        /// Graph file: `u -> v` lines or `{"edges": [[u, v], ...]}`;
        /// stdin when omitted
        input: Option<PathBuf>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Schedule permutation instructions only; the graph must already
        /// be outdegree-1
        #[arg(long)]
        greedy_only: bool,
        /// Append instance statistics as `#` comments (text output)
        #[arg(long)]
        stats: bool,
    },
    /// Check that a shuffle code realizes a transfer graph
    Verify {
        /// Graph file; stdin when omitted
        input: Option<PathBuf>,
        /// Code file: instruction lines or JSON with an `ops` array
        #[arg(long)]
        code: PathBuf,
    },
    /// Certify the synthesized length by exhaustive search
    Oracle {
        /// Graph file; stdin when omitted
        input: Option<PathBuf>,
        /// Search depth cap; defaults to the synthesized length
        #[arg(long)]
        oracle_depth: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth { input, format, greedy_only, stats } => {
            synth(&input, format, greedy_only, stats)
        }
        Command::Verify { input, code } => verify(&input, &code),
        Command::Oracle { input, oracle_depth } => oracle(&input, oracle_depth),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("shufflec: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn load_graph(path: &Option<PathBuf>) -> Result<Rtg, Failure> {
    let text = read_input(path)?;
    let edges = doc::parse_edges(&text).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    Rtg::from_edges(edges)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("invalid transfer graph: {e}")))
}

fn synth(
    input: &Option<PathBuf>,
    format: Format,
    greedy_only: bool,
    stats: bool,
) -> Result<(), Failure> {
    let g = load_graph(input)?;
    let (code, copy_count, residual) = if greedy_only {
        if !g.is_outdegree_one() {
            return Err(Failure::new(
                EXIT_INVALID,
                "--greedy-only needs an outdegree-1 graph, but some register is read twice",
            ));
        }
        let code = greedy_schedule(&g).expect("out-degrees were checked");
        let sig = g.signature().expect("out-degrees were checked");
        (code, 0, sig)
    } else {
        let r = synthesize(&g);
        (r.code, r.copy_set.len(), r.residual_signature)
    };

    match format {
        Format::Text => {
            for op in &code.ops {
                println!("{op}");
            }
            if stats {
                println!("# registers: {}, transfers: {}", g.vertex_count(), g.edge_count());
                println!(
                    "# copies: {copy_count}, residual signature: (x={}, a2={}, a3={})",
                    residual.x, residual.a2, residual.a3
                );
                println!("# length: {}", code.len());
            }
        }
        Format::Json => {
            let doc = CodeDoc::new(&code, copy_count, &residual);
            println!("{}", serde_json::to_string_pretty(&doc).expect("code documents serialize"));
        }
    }
    Ok(())
}

fn verify(input: &Option<PathBuf>, code_path: &PathBuf) -> Result<(), Failure> {
    let g = load_graph(input)?;
    let text = fs::read_to_string(code_path).map_err(|e| {
        Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", code_path.display()))
    })?;
    let code = doc::parse_code(&text).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    if satisfies(&g, &code) {
        println!("ok: {} instructions realize all {} transfers", code.len(), g.edge_count());
        Ok(())
    } else {
        Err(Failure::new(EXIT_FAILED, "code does not realize the transfer graph"))
    }
}

fn oracle(input: &Option<PathBuf>, depth: Option<usize>) -> Result<(), Failure> {
    let g = load_graph(input)?;
    if g.vertex_count() > MAX_ORACLE_VERTICES {
        return Err(Failure::new(
            EXIT_TOO_LARGE,
            format!(
                "graph has {} registers; the oracle handles at most {MAX_ORACLE_VERTICES}",
                g.vertex_count()
            ),
        ));
    }
    let synthesized = synthesize(&g);
    let cap = depth.unwrap_or(synthesized.total_length);
    match oracle_min_length(&g, cap) {
        Ok(len) => {
            println!("oracle minimum: {len}");
            println!("synthesized length: {}", synthesized.total_length);
            if len == synthesized.total_length {
                println!("confirmed optimal");
                Ok(())
            } else {
                Err(Failure::new(
                    EXIT_FAILED,
                    format!(
                        "synthesized {} instructions but {len} suffice",
                        synthesized.total_length
                    ),
                ))
            }
        }
        Err(OracleError::InstanceTooLarge { vertices, limit }) => Err(Failure::new(
            EXIT_TOO_LARGE,
            format!("graph has {vertices} registers; the oracle handles at most {limit}"),
        )),
        Err(OracleError::NotFound { max_depth }) => Err(Failure::new(
            EXIT_FAILED,
            format!("no code found within depth {max_depth}; raise --oracle-depth"),
        )),
    }
}
