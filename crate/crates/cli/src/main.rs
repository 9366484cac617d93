use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kapollo::commands::{self, ArrangeArgs, BaseArg, CmdError, OutFormat, Outcome, PackArgs, ResiduesArgs, VerifyArgs};
use kapollo::groups::SUPPORTED;
use kapollo::packing::PackingKind;

#[derive(Parser)]
#[command(name = "kapollo", version, about = "Schmidt arrangements and K-Apollonian packings")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Strip,
    Bounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindSel {
    Strip,
    Bounded,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Circles of the Schmidt arrangement meeting a window.
    Arrange {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, default_value_t = 20)]
        max_curv: u64,
        /// re0,re1,t0,t1: the rectangle [re0,re1] x [t0*sqrt|disc|/2, t1*sqrt|disc|/2].
        /// Defaults to the fundamental parallelogram 0, 1, 1+tau, tau.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "jsonl")]
        out: Format,
        /// Overlay the ghost chain (disc -15 only).
        #[arg(long)]
        ghosts: bool,
        #[arg(long)]
        labels: bool,
    },
    /// One K-Apollonian packing.
    Pack {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        /// "fundamental" or a path to a base cluster file.
        #[arg(long, default_value = "fundamental")]
        base: String,
        #[arg(long, value_enum, default_value = "strip")]
        kind: Kind,
        #[arg(long, default_value_t = 50)]
        max_curv: u64,
        #[arg(long, value_enum, default_value = "jsonl")]
        out: Format,
        /// Print reduced curvatures inside the circles.
        #[arg(long)]
        labels: bool,
        /// Widen the search until the result stops changing.
        #[arg(long)]
        saturate: bool,
    },
    /// Registry, correspondence, presentation and sufficiency checks.
    Verify {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "all")]
        disc: Option<i64>,
        #[arg(long)]
        all: bool,
    },
    /// Residues of reduced curvatures in the fundamental packings.
    Residues {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        /// Defaults to the conjectured modulus for the field.
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, value_enum, default_value = "both")]
        kind: KindSel,
        /// Histogram as CSV instead of the JSON report.
        #[arg(long)]
        csv: bool,
    },
    /// Breadth-first search of the topograph from {0, 1, inf}.
    Topograph {
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

fn format(f: Format) -> OutFormat {
    match f {
        Format::Jsonl => OutFormat::Jsonl,
        Format::Svg => OutFormat::Svg,
    }
}

fn run(cmd: Cmd) -> Result<Outcome, CmdError> {
    match cmd {
        Cmd::Arrange { disc, max_curv, window, out, ghosts, labels } => {
            commands::arrange(&ArrangeArgs { disc, max_curv, window, out: format(out), ghosts, labels })
        }
        Cmd::Pack { disc, base, kind, max_curv, out, labels, saturate } => {
            let base = if base == "fundamental" { BaseArg::Fundamental } else { BaseArg::File(base.into()) };
            let kind = match kind {
                Kind::Strip => PackingKind::Strip,
                Kind::Bounded => PackingKind::Bounded,
            };
            commands::pack(&PackArgs { disc, base, kind, max_curv, out: format(out), labels, saturate })
        }
        Cmd::Verify { disc, all } => {
            let discs = match (disc, all) {
                (Some(d), false) => vec![d],
                (None, true) => SUPPORTED.to_vec(),
                _ => return Err(CmdError::Usage("give --disc D or --all".into())),
            };
            commands::verify(&VerifyArgs::new(discs))
        }
        Cmd::Residues { disc, modulus, bound, kind, csv } => {
            let kinds = match kind {
                KindSel::Strip => vec![PackingKind::Strip],
                KindSel::Bounded => vec![PackingKind::Bounded],
                KindSel::Both => vec![PackingKind::Strip, PackingKind::Bounded],
            };
            commands::residues(&ResiduesArgs { disc, modulus, bound, kinds, csv })
        }
        Cmd::Topograph { depth } => commands::topograph(depth),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = commands::with_workers(cli.workers, || run(cli.cmd)).and_then(|r| r);
    match result {
        Ok(out) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &out.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
