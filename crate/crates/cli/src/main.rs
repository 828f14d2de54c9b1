use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use brauer_cli::report::Report;
use brauer_cli::{CliError, Command, Residue, Session};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// p-torsion Brauer classes of k((t)) as differential forms.
#[derive(Parser, Debug)]
#[command(name = "brauer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Swan conductor with a reduction certificate
    Sw(Common),
    /// Symbol normal form and splitting field
    NormalForm(Common),
    /// Zero test, tiered by the residue field
    IsZero(Common),
    /// Period, certified index and residue degrees
    PerInd(Common),
    /// Level-2 classes through R1 and V
    Witt(Common),
    /// Two-dimensional reduction over F_q[[pi, t]]
    Local2d(Common),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ResidueArg {
    Fq,
    Ratfunc,
    Local,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// characteristic
    #[arg(long)]
    p: u32,
    /// size of the constant field F_q (defaults to p)
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, value_enum, default_value = "ratfunc")]
    residue: ResidueArg,
    /// t-adic precision
    #[arg(long)]
    prec: Option<i64>,
    /// precision of the residue series (local) or of pi (local2d)
    #[arg(long)]
    inner_prec: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// newline-delimited expressions, one report per line
    #[arg(long, conflicts_with = "expr")]
    batch: Option<PathBuf>,
    #[arg(required_unless_present = "batch", allow_hyphen_values = true)]
    expr: Option<String>,
}

fn render(r: &Report, format: Format, line: bool) -> String {
    match (format, line) {
        (Format::Json, false) => r.to_json(),
        (Format::Json, true) => r.to_json_line(),
        (Format::Text, _) => r.to_text(),
    }
}

fn error_json(cmd: Command, input: &str, e: &CliError) -> String {
    serde_json::json!({
        "command": cmd.name(),
        "input": input,
        "error": { "kind": e.kind(), "message": e.to_string() },
    })
    .to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, c) = match cli.command {
        Cmd::Sw(c) => (Command::Sw, c),
        Cmd::NormalForm(c) => (Command::NormalForm, c),
        Cmd::IsZero(c) => (Command::IsZero, c),
        Cmd::PerInd(c) => (Command::PerInd, c),
        Cmd::Witt(c) => (Command::Witt, c),
        Cmd::Local2d(c) => (Command::Local2d, c),
    };
    let session = Session {
        command,
        p: c.p,
        q: c.q,
        residue: match c.residue {
            ResidueArg::Fq => Residue::Fq,
            ResidueArg::Ratfunc => Residue::RatFunc,
            ResidueArg::Local => Residue::Local,
        },
        prec: c.prec,
        inner_prec: c.inner_prec,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Some(path) = c.batch {
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        let inputs: Vec<String> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect();
        let mut code = 0;
        for (input, res) in inputs.iter().zip(session.run_batch(&inputs)) {
            let line = match res {
                Ok(r) => render(&r, c.format, true),
                Err(e) => {
                    if code == 0 {
                        code = e.exit_code();
                    }
                    error_json(command, input, &e)
                }
            };
            let _ = writeln!(out, "{}", line.trim_end());
        }
        return ExitCode::from(code as u8);
    }
    let expr = c.expr.expect("clap enforces an expression");
    match session.run(&expr) {
        Ok(r) => {
            let _ = writeln!(out, "{}", render(&r, c.format, false).trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
