use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

/// Exact combinatorics of stacky fans, chain moduli and Cox data.
#[derive(Parser)]
#[command(name = "chainfold", version)]
struct Args {
    /// One of: group.define, fan.validate, fan.classify, fan.complete,
    /// stability.check, stability.enumerate, cox.data, vinberg.query,
    /// report.full.
    command: String,
    /// Input JSON document; stdin when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("chainfold: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let resp = chainfold_cli::run(&args.command, &text);
    let out = resp.render();
    let written = match &args.output {
        Some(p) => std::fs::write(p, out),
        None => {
            print!("{out}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("chainfold: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(resp.exit_code as u8)
}
