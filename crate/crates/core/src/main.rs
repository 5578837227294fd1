use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdc::calculus::F00Choice;
use qdc::session::{self, Format, Session, SessionConfig, Suite};

#[derive(Parser)]
#[command(name = "qdc", version, about = "Inner and outer bicovariant calculi on FRT quantum groups")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// R-matrix TOML file (default: $QDC_DEFAULT_RMATRIX, else SL_q(2))
    #[arg(long, global = true)]
    rmatrix: Option<PathBuf>,
    /// Override for lambda, in the scalar grammar
    #[arg(long, global = true)]
    lambda: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "trace")]
    f00: F00Arg,
    /// Degree bound D for monomials
    #[arg(long, global = true, default_value_t = 3)]
    degree: usize,
    /// Grade cap for forms
    #[arg(long, global = true, default_value_t = 3)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Assemble the extended calculus and write it to a file
    Init {
        #[arg(long, default_value = "qdc-descriptor.json")]
        out: PathBuf,
    },
    /// Algebra rules, bimodule relations and wedge relations
    Relations,
    /// Evaluate an expression to normal form
    Eval { expr: String },
    /// Run one verification suite; exits nonzero if an identity fails
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// Phi, Psi and the round trip for both f00 choices
    Maps,
    /// The bidegree grid of the wedge basis
    Bicomplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum F00Arg {
    Trace,
    Counit,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hopf,
    Bicovariance,
    Leibniz,
    Cartan,
    Roundtrip,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = cli.opts;
    let cfg = SessionConfig {
        rmatrix: o.rmatrix,
        lambda: o.lambda,
        f00: match o.f00 {
            F00Arg::Trace => F00Choice::Trace,
            F00Arg::Counit => F00Choice::Counit,
        },
        degree: o.degree,
        cap: o.cap,
        format: match o.format {
            FormatArg::Text => Format::Text,
            FormatArg::Structured => Format::Structured,
        },
    };
    let format = cfg.format;
    let result = Session::open(cfg).and_then(|s| match cli.cmd {
        Cmd::Init { out } => session::init(&s, &out),
        Cmd::Relations => session::relations(&s),
        Cmd::Eval { expr } => session::eval(&s, &expr),
        Cmd::Check { suite } => session::check(
            &s,
            match suite {
                SuiteArg::Hopf => Suite::Hopf,
                SuiteArg::Bicovariance => Suite::Bicovariance,
                SuiteArg::Leibniz => Suite::Leibniz,
                SuiteArg::Cartan => Suite::Cartan,
                SuiteArg::Roundtrip => Suite::Roundtrip,
            },
        ),
        Cmd::Maps => session::maps(&s),
        Cmd::Bicomplex => session::bicomplex(&s),
    });
    match result {
        Ok(out) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{}", out.render(format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
