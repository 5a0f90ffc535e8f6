use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use serre_trace::kodairadb;
use serre_trace::motivic::{eq_mod_l_minus_1, GrothElement};
use serre_trace::pipeline::{base_change_check, corpus_run, torsor_analyze, AnyCurve, Report};
use serre_trace::snc::SncConfiguration;

/// Local invariants of elliptic curves and trace formula checks.
#[derive(Parser)]
#[command(name = "serre-trace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run Tate's algorithm and print the full report.
    Analyze(CurveArgs),
    /// Compare χ(S) after the base change t -> t^d with the monodromy trace.
    Basechange {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        d: u64,
    },
    /// Report for a torsor of order m under the Jacobian described by a report file.
    Torsor {
        #[arg(long)]
        jac: PathBuf,
        #[arg(long)]
        m: u64,
    },
    /// Euler characteristics of an SNC configuration file.
    Snc {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Realizations of a Grothendieck ring expression.
    Groth {
        expr: String,
        /// Extra classes to compare against modulo L - 1 (besides 0..4).
        #[arg(long)]
        against: Vec<String>,
        /// Also count points over F_q.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Analyze every curve of a corpus file.
    Corpus { file: PathBuf },
    /// Dump the per-type tables.
    Atlas,
}

#[derive(Args)]
struct CurveArgs {
    /// Field spec: padic:<p>, laurent:Q or laurent:F<p>.
    #[arg(long)]
    field: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a2: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a3: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a4: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a6: String,
}

impl CurveArgs {
    fn curve(&self) -> Result<AnyCurve> {
        let lits = [&*self.a1, &*self.a2, &*self.a3, &*self.a4, &*self.a6];
        Ok(AnyCurve::parse(&self.field, lits)?)
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Prints the output and returns whether every consistency check passed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Analyze(c) => {
            let r = c.curve()?.analyze()?;
            print!("{}", r.to_toml());
            Ok(r.consistent)
        }
        Command::Basechange { curve, d } => {
            let r = base_change_check(&curve.curve()?, d)?;
            print!("{}", r.to_toml());
            Ok(r.consistent && r.original.consistent && r.substituted.consistent)
        }
        Command::Torsor { jac, m } => {
            let jac = Report::from_toml(&read(&jac)?)?;
            let r = torsor_analyze(&jac, m)?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", r.to_toml());
            Ok(r.consistent)
        }
        Command::Snc { file, p } => {
            let (config, marking) = SncConfiguration::from_toml(&read(&file)?)?;
            let diag = config.validate();
            println!("valid = {}", diag.ok());
            if !diag.ok() {
                let f: Vec<String> = diag.failures.iter().map(|x| format!("\"{x}\"")).collect();
                println!("failures = [{}]", f.join(", "));
            }
            println!("p = {p}");
            println!("multiplicity_gcd = {}", diag.multiplicity_gcd);
            println!("chi_fiber = {}", diag.chi_fiber);
            println!("smooth_locus_chi = {}", config.smooth_locus_chi());
            println!("wild_locus_chi = {}", config.wild_locus_chi(p));
            println!("tame_trace = {}", config.tame_trace(p));
            if let Some(m) = marking {
                let lt = config.local_trace(&m, p)?;
                println!("local_chi_serre = {}", lt.chi_serre);
                println!("local_trace = {}", lt.trace);
            }
            Ok(diag.ok())
        }
        Command::Groth { expr, against, q } => {
            let a = GrothElement::parse(&expr)?;
            println!("class = \"{a}\"");
            println!("poincare = \"{}\"", a.poincare());
            println!("euler = {}", a.euler());
            if let Some(q) = q {
                match a.point_count(&q.into()) {
                    Some(n) => println!("points = {n}"),
                    None => println!("points = \"undefined\""),
                }
            }
            println!("\n[mod_L_minus_1]");
            let mut others: Vec<String> = (0..=4).map(|n| n.to_string()).collect();
            others.extend(against);
            for b in others {
                let v = eq_mod_l_minus_1(&a, &GrothElement::parse(&b)?);
                println!("\"{b}\" = \"{v}\"");
            }
            Ok(true)
        }
        Command::Corpus { file } => {
            let s = corpus_run(&read(&file)?)?;
            print!("{}", s.to_toml());
            Ok(s.consistency_failures == 0 && s.expectation_mismatches == 0)
        }
        Command::Atlas => {
            print!("{}", kodairadb::atlas_toml());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("consistency check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
