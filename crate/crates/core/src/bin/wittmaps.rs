use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wittmaps::envelope::{ad_power, EnvElement, Mode};
use wittmaps::expr::parse_rational;
use wittmaps::hilbert::{closed_form, compare, measure, Family};
use wittmaps::morphlab::{EnvMorphism, KernelReport};
use wittmaps::scalars::{Field, RatFunc, Rational};
use wittmaps::veritas::{self, Config, Status};
use wittmaps::{geomcheck, Error};

#[derive(Parser, Debug)]
#[command(name = "wittmaps", version, about = "Exact computations with maps out of U(W+) into twisted polynomial rings")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapKind {
    Lambda,
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Wplus,
    Witt,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Wplus => Mode::WPlus,
            ModeArg::Witt => Mode::Witt,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Param {
    Generic,
    Value(Rational),
}

fn parse_param(s: &str) -> Result<Param, String> {
    if s == "generic" {
        return Ok(Param::Generic);
    }
    parse_rational(s).map(Param::Value).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Run one claim, or all of them.
    Verify {
        #[arg(default_value = "all")]
        claim: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        max_degree: Option<i64>,
        #[arg(long)]
        skip_witt: bool,
    },
    /// Graded kernel of a map at one degree.
    Kernel {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long, value_parser = parse_param, default_value = "generic")]
        a: Param,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        degree: i64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Measured graded dimensions against the closed form.
    Hilbert {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..), default_value = "20")]
        degree: i64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Image of an element of the enveloping algebra.
    Eval {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long, value_parser = parse_param, default_value = "generic")]
        a: Param,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "wplus")]
        mode: ModeArg,
    },
    /// PBW normal form.
    Straighten {
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "wplus")]
        mode: ModeArg,
    },
    /// ad(x)^k (y), straightened.
    Adpow {
        #[arg(long)]
        x: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value = "witt")]
        mode: ModeArg,
    },
    /// Witnesses that I is not finitely generated, for n = 4..degree.
    Nonfg {
        #[arg(long, value_parser = clap::value_parser!(i64).range(4..), default_value = "10")]
        degree: i64,
    },
    /// The projective-geometry checks.
    Geom {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

enum Failure {
    Claims,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(if code == 0 { 0 } else { 2 });
        }
    };
    match dispatch(cli.verb) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_out(out: &Option<PathBuf>, body: &str) -> Result<String, Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| Failure::Internal(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(body.to_string()),
    }
}

fn kernel_text<F: Field>(k: &KernelReport<F>, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({
                "degree": k.degree,
                "dimension": k.dimension,
                "image_rank": k.image_rank,
                "basis": k.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "excluded": k.excluded.iter().map(|f| f.fmt_with("a")).collect::<Vec<_>>(),
                "verified": k.verified,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Table => {
            let mut s = format!("degree {}: dimension {} (image rank {})\n", k.degree, k.dimension, k.image_rank);
            for b in &k.basis {
                let _ = writeln!(s, "  {b}");
            }
            if !k.excluded.is_empty() {
                let ex: Vec<String> = k.excluded.iter().map(|f| f.fmt_with("a")).collect();
                let _ = writeln!(s, "excluded: {}", ex.join(", "));
            }
            s
        }
    }
}

fn dispatch(verb: Verb) -> Result<String, Failure> {
    match verb {
        Verb::Verify { claim, format, out, max_degree, skip_witt } => {
            let cfg = Config { skip_witt, max_degree, ..Config::default() };
            let report = if claim == "all" {
                veritas::run_all(&cfg)
            } else {
                let r = veritas::run_claim(&claim, Some(&cfg))?;
                veritas::Report { tool_version: env!("CARGO_PKG_VERSION").to_string(), config: cfg, claims: vec![r] }
            };
            let body = match format {
                Format::Json => report.to_json() + "\n",
                Format::Table => report.to_table(),
            };
            let failed = report.claims.iter().any(|c| c.status == Status::Fail);
            let text = write_out(&out, &body)?;
            if failed {
                print!("{text}");
                for c in report.failures() {
                    eprintln!("claim {} failed: {}", c.id, c.computed);
                }
                return Err(Failure::Claims);
            }
            Ok(text)
        }
        Verb::Kernel { map, a, degree, format } => match (map, a) {
            (MapKind::Phi, _) => Ok(kernel_text(&EnvMorphism::<Rational>::phi(Mode::WPlus).kernel_at_degree(degree)?, format)),
            (MapKind::Lambda, Param::Generic) => {
                Ok(kernel_text(&EnvMorphism::lambda_generic(Mode::WPlus).kernel_at_degree(degree)?, format))
            }
            (MapKind::Lambda, Param::Value(a0)) => {
                Ok(kernel_text(&EnvMorphism::lambda(a0, Mode::WPlus).kernel_at_degree(degree)?, format))
            }
        },
        Verb::Hilbert { family, degree, format } => {
            let m = measure(family, degree as usize)?;
            let closed = closed_form(family);
            let cmp = closed.as_ref().map(|c| compare(&m, c, 0));
            Ok(match format {
                Format::Json => {
                    let v = json!({
                        "family": family.label(),
                        "coefficients": m.coefficients,
                        "closed_form": closed.as_ref().map(|c| c.to_string()),
                        "comparison": cmp,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
                Format::Table => {
                    let mut s = format!("{m}\n");
                    if let (Some(c), Some(cmp)) = (closed, cmp) {
                        let verdict = match &cmp.first_mismatch {
                            None => format!("matches through degree {}", cmp.checked_through),
                            Some(mm) => format!("first mismatch at degree {}: {} vs {}", mm.degree, mm.measured, mm.expected),
                        };
                        let _ = writeln!(s, "closed form {c}: {verdict}");
                    }
                    s
                }
            })
        }
        Verb::Eval { map, a, expr, mode } => {
            let mode = Mode::from(mode);
            let out = match (map, a) {
                (MapKind::Phi, _) => {
                    EnvMorphism::<Rational>::phi(mode).eval(&EnvElement::parse(&expr, mode)?)?.to_string()
                }
                (MapKind::Lambda, Param::Generic) => {
                    EnvMorphism::lambda_generic(mode).eval(&EnvElement::<RatFunc>::parse(&expr, mode)?)?.to_string()
                }
                (MapKind::Lambda, Param::Value(a0)) => {
                    EnvMorphism::lambda(a0, mode).eval(&EnvElement::parse(&expr, mode)?)?.to_string()
                }
            };
            Ok(out + "\n")
        }
        Verb::Straighten { expr, mode } => Ok(format!("{}\n", EnvElement::<Rational>::parse(&expr, mode.into())?)),
        Verb::Adpow { x, k, y, mode } => {
            let mode = mode.into();
            let r = ad_power(&EnvElement::<Rational>::parse(&x, mode)?, k, &EnvElement::parse(&y, mode)?)?;
            Ok(format!("{r}\n"))
        }
        Verb::Nonfg { degree } => {
            let cfg = Config { max_degree: Some(degree), ..Config::default() };
            let r = veritas::run_claim("thm-3-3-witness", Some(&cfg))?;
            if r.status == Status::Fail {
                eprintln!("{}", r.computed);
                return Err(Failure::Claims);
            }
            Ok(format!("{}\n", r.computed))
        }
        Verb::Geom { format } => {
            let g = geomcheck::geometry_report()?;
            let body = match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&g).expect("json")),
                Format::Table => {
                    let b = |v: &[bool]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                    let mut s = String::new();
                    let _ = writeln!(s, "psi_a square     {}", b(&g.psi_square));
                    let _ = writeln!(s, "i_a square       {}", b(&g.ia_square));
                    let _ = writeln!(s, "quadric killed   {}", g.quadric_killed);
                    let _ = writeln!(s, "psi_a*(f)        {}", g.psi_f);
                    let _ = writeln!(s, "image in C_a     {}", g.curve_contains_image);
                    let _ = writeln!(s, "gamma on e1, e2  {}", b(&g.gamma));
                    let _ = writeln!(s, "inverse          {}", g.inverse);
                    let _ = writeln!(s, "i_a* phi = lambda {}", g.ia_phi_lambda);
                    s
                }
            };
            if !g.all_pass() {
                print!("{body}");
                return Err(Failure::Claims);
            }
            Ok(body)
        }
    }
}
