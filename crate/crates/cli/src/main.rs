use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kummerlab::commands::{self, CliError, Limits, MonoidAction, QuadAction};
use kummerlab::report::Report;
use kummerlab::reproduce;

/// Kummer's ideal primes as Jacobi maps: exact computations and the
/// reproduction suite.
#[derive(Parser, Debug)]
#[command(name = "kummerlab", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Run only reproduce claims in this group or with this id prefix.
    #[arg(long, global = true)]
    filter: Option<String>,

    /// Initial max-norm bound for the uniformizer search.
    #[arg(long, global = true, default_value_t = 3)]
    uniformizer_bound: u32,

    /// Node cap for monoid factorization searches.
    #[arg(long, global = true, default_value_t = 10_000)]
    enum_cap: u64,

    /// Trial-division limit when factoring norms.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    trial_div: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the Jacobi maps of Z[a] (a^lambda = 1) at p.
    Maps {
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        p: u64,
    },
    /// Factor an element into ideal primes.
    Factor {
        #[arg(long)]
        lambda: u64,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Multiplicities of an element at every map above p.
    Valuation {
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        p: u64,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Decide whether D divides X.
    Divides {
        #[arg(long)]
        lambda: u64,
        #[arg(allow_hyphen_values = true)]
        divisor: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// J(chi^i, chi^k) for the character of the given order mod p.
    JacobiSum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        order: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
    },
    /// The Gauss sum power (a^i, x)^order in Z[a].
    GaussSum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        order: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        i: i64,
    },
    /// Jacobi's congruence mod p, for one index pair or all of them.
    FcCheck {
        #[arg(long)]
        p: u64,
        #[arg(long, requires = "k")]
        i: Option<i64>,
        #[arg(long, requires = "i")]
        k: Option<i64>,
    },
    /// Valuations of J(chi, chi) at every prime above p.
    Stickelberger {
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        p: u64,
    },
    /// The quartic Jacobi sum and its binomial congruence.
    Quartic {
        #[arg(long)]
        p: u64,
    },
    /// Gauss's congruence 2a = +-C(2n, n) mod p = a^2 + 4b^2.
    Binomial {
        #[arg(long)]
        p: u64,
    },
    /// Hilbert monoids and the singular monoid N.
    Monoid(MonoidArgs),
    /// Quadratic orders Z[t], t^2 + u t + v = 0.
    Quad(QuadArgs),
    /// Run the reproduction suite.
    Reproduce,
}

#[derive(Args, Debug)]
struct MonoidArgs {
    #[arg(long, default_value_t = 4)]
    m: u64,
    /// Residues of H, comma separated.
    #[arg(long, default_value = "1")]
    subgroup: String,
    #[command(subcommand)]
    action: MonoidCmd,
}

#[derive(Subcommand, Debug)]
enum MonoidCmd {
    Factor { a: u64 },
    Classgroup,
    DefinedAt { p: u64, a: u64, b: u64 },
    Multiplicity { p: u64, a: u64 },
    Square { a: u64 },
    DemoSingular,
}

#[derive(Args, Debug)]
struct QuadArgs {
    /// "u,v" for t^2 + u t + v = 0.
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    #[command(subcommand)]
    action: QuadCmd,
}

#[derive(Subcommand, Debug)]
enum QuadCmd {
    Maps {
        #[arg(long)]
        p: u64,
    },
    CheckB2 {
        #[arg(long)]
        p: u64,
        #[arg(allow_hyphen_values = true)]
        num: String,
        #[arg(allow_hyphen_values = true)]
        den: String,
    },
    Conductor,
    /// "c1,c0" for T^2 + c1 T + c0.
    GaussLemma {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
}

fn split_pair(s: &str, what: &str) -> Result<(String, String), CliError> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [a, b] => Ok((a.trim().to_string(), b.trim().to_string())),
        _ => Err(CliError::Usage(format!("{what} must be two comma-separated values, got \"{s}\""))),
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad subgroup residue \"{x}\""))))
        .collect()
}

fn dispatch(cli: &Cli, limits: Limits) -> Result<Report, CliError> {
    match &cli.command {
        Command::Maps { lambda, p } => commands::maps(*lambda, *p),
        Command::Factor { lambda, element } => commands::factor(*lambda, element, limits),
        Command::Valuation { lambda, p, element } => commands::valuation(*lambda, *p, element, limits),
        Command::Divides { lambda, divisor, element } => commands::divides(*lambda, divisor, element, limits),
        Command::JacobiSum { p, order, i, k } => commands::jacobi_sum(*p, *order, *i, *k),
        Command::GaussSum { p, order, i } => commands::gauss_sum(*p, *order, *i),
        Command::FcCheck { p, i, k } => commands::fc(*p, i.zip(*k)),
        Command::Stickelberger { lambda, p } => commands::stickelberger(*lambda, *p, limits),
        Command::Quartic { p } => commands::quartic(*p),
        Command::Binomial { p } => commands::binomial(*p),
        Command::Monoid(args) => {
            let action = match &args.action {
                MonoidCmd::Factor { a } => MonoidAction::Factor(*a),
                MonoidCmd::Classgroup => MonoidAction::ClassGroup,
                MonoidCmd::DefinedAt { p, a, b } => MonoidAction::DefinedAt(*p, *a, *b),
                MonoidCmd::Multiplicity { p, a } => MonoidAction::Multiplicity(*p, *a),
                MonoidCmd::Square { a } => MonoidAction::Square(*a),
                MonoidCmd::DemoSingular => MonoidAction::DemoSingular,
            };
            commands::monoid(args.m, &parse_list(&args.subgroup)?, &action, limits)
        }
        Command::Quad(args) => {
            let (u, v) = split_pair(&args.theta, "--theta")?;
            let parse = |s: &str| s.parse::<i64>().map_err(|_| CliError::Usage(format!("bad --theta entry \"{s}\"")));
            let action = match &args.action {
                QuadCmd::Maps { p } => QuadAction::Maps(*p),
                QuadCmd::CheckB2 { p, num, den } => QuadAction::CheckB2 { p: *p, num: num.clone(), den: den.clone() },
                QuadCmd::Conductor => QuadAction::Conductor,
                QuadCmd::GaussLemma { coeffs } => {
                    let (c1, c0) = split_pair(coeffs, "gauss-lemma coefficients")?;
                    QuadAction::GaussLemma { c1, c0 }
                }
            };
            commands::quad_cmd(parse(&u)?, parse(&v)?, &action)
        }
        Command::Reproduce => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        uniformizer_bound: cli.uniformizer_bound,
        enum_cap: cli.enum_cap,
        trial_div: cli.trial_div,
    };
    if let Command::Reproduce = cli.command {
        let claims = reproduce::run(cli.filter.as_deref(), &limits);
        if claims.is_empty() {
            eprintln!("error: no claims match --filter {}", cli.filter.as_deref().unwrap_or(""));
            return ExitCode::from(2);
        }
        let passed = claims.iter().filter(|c| c.pass).count();
        for c in &claims {
            println!("{}", if cli.json { c.to_json() } else { c.to_text() });
        }
        if cli.json {
            println!("{}", reproduce::summary_json(&claims));
        } else {
            println!("{passed}/{} claims passed", claims.len());
        }
        return if passed == claims.len() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    match dispatch(&cli, limits) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
