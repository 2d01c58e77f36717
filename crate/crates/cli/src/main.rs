use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use teslab::macdonald::{Macdonald, MacdonaldConfig, Route, Target};
use teslab::plethysm::MonomialSymFn;
use teslab::specializations::{tes_11, tes_t0, tes_t1};
use teslab::tesler::{self, parse_hooks};
use teslab::verify::{self, Bounds};
use teslab::{Error, LaurentPoly, Specialization};

#[derive(Parser)]
#[command(
    name = "teslab",
    version,
    about = "Tesler functions, Macdonald operators and their specializations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum TesRoute {
    Enum,
    Macdonald,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Json,
    Count,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute Tes_alpha(q,t), optionally specialized.
    Tes {
        #[arg(long, allow_hyphen_values = true)]
        hooks: String,
        /// One of t=0, t=1, q=1, q=t=1.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, value_enum, default_value = "enum")]
        route: TesRoute,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// List the Tesler matrices with the given hook sums, one JSON object per line.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        hooks: String,
        #[arg(long)]
        permutational: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: ListFormat,
    },
    /// Hilbert series of Delta_f (or Delta'_f with --prime) applied to e_n or p_n.
    Hilb {
        /// "e:k", "m:parts" or "s:parts".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: bool,
        #[arg(long, default_value = "en")]
        target: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, allow_hyphen_values = true, default_value = "-2..2")]
        entry_range: String,
        #[arg(long, default_value_t = 2016)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Precondition(_) | Error::LengthMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn macdonald() -> Macdonald {
    let mut config = MacdonaldConfig::default();
    if let Some(cap) = std::env::var("TESLAB_NMAX")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        config.n_max = cap;
    }
    Macdonald::new(config)
}

fn print_poly(p: &LaurentPoly, format: TextFormat, extra: serde_json::Value) {
    match format {
        TextFormat::Text => println!("{p}"),
        TextFormat::Json => {
            let mut v = extra;
            v["poly"] = json!(p.to_triples());
            println!("{v}");
        }
    }
}

fn cmd_tes(hooks: &str, spec_arg: Option<&str>, route: TesRoute, format: TextFormat) -> Outcome {
    let alpha = parse_hooks(hooks)?;
    let spec: Option<Specialization> = spec_arg.map(str::parse).transpose()?;
    let value = match route {
        TesRoute::Enum => tesler::tes(&alpha),
        TesRoute::Macdonald => macdonald().tes_via_theorem(&alpha)?,
        TesRoute::Closed => match spec {
            Some(Specialization::T0) => tes_t0(&alpha)?,
            Some(Specialization::T1) => tes_t1(&alpha),
            Some(Specialization::Q1T1) => LaurentPoly::from(tes_11(&alpha)),
            _ => {
                return Err(Failure::Usage(
                    "--route closed needs --spec t=0, t=1 or q=t=1".into(),
                ))
            }
        },
    };
    let value = match (route, spec) {
        (TesRoute::Closed, _) | (_, None) => value,
        (_, Some(s)) => value.specialize(s)?,
    };
    print_poly(&value, format, json!({ "hooks": alpha, "spec": spec_arg }));
    Ok(())
}

fn cmd_enumerate(hooks: &str, permutational: bool, format: ListFormat) -> Outcome {
    let alpha = parse_hooks(hooks)?;
    let it: Box<dyn Iterator<Item = tesler::TeslerMatrix>> = if permutational {
        Box::new(tesler::enumerate_permutational(&alpha))
    } else {
        Box::new(tesler::enumerate(&alpha))
    };
    match format {
        ListFormat::Count => println!("{}", it.count()),
        ListFormat::Json => {
            let mut out = io::BufWriter::new(io::stdout().lock());
            for u in it {
                let line = serde_json::to_string(&u).map_err(|e| Failure::Check(e.to_string()))?;
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
        }
    }
    Ok(())
}

fn cmd_hilb(f: &str, n: usize, prime: bool, target: &str, format: TextFormat) -> Outcome {
    let func: MonomialSymFn = f.parse()?;
    let target: Target = target.parse()?;
    if n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let mac = macdonald();
    let eigen = if prime {
        mac.hilb_delta_prime(&func, target, n)?
    } else {
        mac.hilb_delta(&func, n, target, Route::Eigen)?
    };
    if n <= 5 {
        let via_tesler = if prime {
            mac.hilb_delta_prime_tesler(&func, target, n)?
        } else {
            mac.hilb_delta(&func, n, target, Route::Tesler)?
        };
        if via_tesler != eigen {
            return Err(Failure::Check(format!(
                "route mismatch: eigen {eigen}, tesler {via_tesler}"
            )));
        }
    }
    print_poly(&eigen, format, json!({ "f": f, "n": n, "prime": prime }));
    Ok(())
}

fn cmd_verify(
    suite: &str,
    n_max: Option<usize>,
    entry_range: &str,
    seed: u64,
    samples: Option<usize>,
    out: Option<&std::path::Path>,
) -> Outcome {
    let bounds = Bounds {
        n_max,
        entry_range: verify::parse_range(entry_range)?,
        seed,
        samples,
    };
    let report = verify::run(suite, &bounds, &macdonald())?;
    let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Check(e.to_string()))?;
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} failure(s) in {}",
            report.failures.len(),
            report.suite
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Tes {
            hooks,
            spec,
            route,
            format,
        } => cmd_tes(hooks, spec.as_deref(), *route, *format),
        Cmd::Enumerate {
            hooks,
            permutational,
            format,
        } => cmd_enumerate(hooks, *permutational, *format),
        Cmd::Hilb {
            f,
            n,
            prime,
            target,
            format,
        } => cmd_hilb(f, *n, *prime, target, *format),
        Cmd::Verify {
            suite,
            n_max,
            entry_range,
            seed,
            samples,
            out,
        } => cmd_verify(suite, *n_max, entry_range, *seed, *samples, out.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("teslab: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("teslab: {msg}");
            ExitCode::from(2)
        }
    }
}
