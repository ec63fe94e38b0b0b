//! `blowup`: build arrangements and compute invariants of their wonderful
//! blowups.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 invalid arrangement,
//! 3 hypothesis refused or input unsupported, 4 I/O, schema or usage error.

use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blowup_core::builders::{build_diagonal, build_kapranov, build_linear_from_json, build_maps_poset};
use blowup_core::chow::{linear_presentation, linear_theorem_presentation};
use blowup_core::hodge::{
    blowup_hodge, blowup_poincare, complement_hodge, exceptional_divisor_hodge, maps_space_hodge,
    proper_transform_hodge, HodgeMode,
};
use blowup_core::poset::Space;
use blowup_core::verify::{verify, Limits};
use blowup_core::{Arrangement, BivarPolynomial, Error, UnivarPolynomial};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "blowup", version, about = "Hodge, Poincaré and Chow invariants of wonderful blowups")]
struct Cli {
    /// Output format of the analysis commands.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dp,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Projective,
    Affine,
}

#[derive(Args)]
struct ArrInput {
    /// arrangement.json; read from stdin when omitted.
    #[arg(long)]
    arr: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an arrangement and write arrangement.json to stdout.
    #[command(subcommand)]
    Build(Build),
    /// Hodge polynomial of the blowup, or of an intermediate stage.
    Hodge {
        #[command(flatten)]
        input: ArrInput,
        /// Stage index; -1 is the unblown ambient space.
        #[arg(long, allow_hyphen_values = true)]
        stage: Option<i64>,
        #[arg(long, value_enum, default_value_t = Mode::Dp)]
        mode: Mode,
    },
    /// Poincaré polynomial of the blowup.
    Poincare {
        #[command(flatten)]
        input: ArrInput,
    },
    /// Hodge polynomial of the proper transform of one stratum after a stage.
    Transform {
        #[command(flatten)]
        input: ArrInput,
        #[arg(long)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        stage: i64,
    },
    /// Hodge polynomial of the exceptional divisor of one stratum at a stage.
    ExcDivisor {
        #[command(flatten)]
        input: ArrInput,
        #[arg(long)]
        element: String,
        #[arg(long)]
        stage: u32,
    },
    /// Hodge polynomial of the complement of the arrangement.
    Complement {
        #[command(flatten)]
        input: ArrInput,
    },
    /// Facets of the boundary nerve (maximal chains).
    Nerve {
        #[command(flatten)]
        input: ArrInput,
    },
    /// Chow ring presentation of the blowup of a projective linear arrangement.
    Chow {
        #[command(flatten)]
        input: ArrInput,
        /// Also print the Hilbert series of the quotient.
        #[arg(long)]
        hilbert: bool,
        /// Also print the reduced Gröbner basis.
        #[arg(long)]
        dump_basis: bool,
        /// Produce a (tainted) presentation for non-regular input.
        #[arg(long)]
        allow_nonregular: bool,
        /// Emit only the incomparable-product, kernel and Chern families, without the
        /// relative Chern relations.
        #[arg(long)]
        theorem_only: bool,
    },
    /// Run the internal consistency checks.
    Verify {
        #[command(flatten)]
        input: ArrInput,
        /// Largest chain count for the chain-by-chain comparison.
        #[arg(long, default_value_t = Limits::default().max_chains)]
        max_chains: u128,
        /// Largest number of strata for the Gröbner cross-check.
        #[arg(long, default_value_t = Limits::default().max_groebner_strata)]
        max_groebner_strata: usize,
    },
    /// Experimental chain sum for the space-of-maps strata.
    MapsHodge {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Subcommand)]
enum Build {
    /// Diagonal arrangement in X^n.
    Diagonal {
        #[arg(long)]
        n: u32,
        #[arg(long = "dim-x")]
        dim_x: u32,
        /// Hodge polynomial of X: a file or inline text, either JSON terms
        /// `[[p, q, "c"], ...]` or comma-separated coefficients of powers of
        /// uv. Defaults to projective space of dimension dim-x.
        #[arg(long = "hodge-x")]
        hodge_x: Option<String>,
    },
    /// Intersection closure of linear subspaces.
    Linear {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        generators: PathBuf,
    },
    /// Spans of subsets of n+2 general points in P^n.
    Kapranov {
        #[arg(long)]
        n: u32,
    },
    /// Strata of the space of degree-d maps P^1 -> P^n (conjectural).
    Maps {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
}

enum Failure {
    Core(Error),
    Io(String),
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Checks => 1,
            Failure::Core(Error::Invalid(_) | Error::Poly(_)) => 2,
            Failure::Core(
                Error::Hypothesis(_) | Error::Unsupported(_) | Error::MissingData(_) | Error::Grading(_),
            ) => 3,
            Failure::Core(_) | Failure::Io(_) | Failure::Usage(_) => 4,
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let (out, failure) = match run(cli) {
        Ok(out) => (out, None),
        Err(f) => (String::new(), Some(f)),
    };
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            match &f {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Io(m) | Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Checks => {}
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Build(b) => build(b),
        Command::Hodge { input, stage, mode } => {
            let arr = load(&input)?;
            let arr = match stage {
                Some(r) => {
                    if let Some(top) = arr.poset_rank() {
                        if r > top as i64 {
                            return Err(Error::Stage(format!("stage {r} exceeds the poset rank {top}")).into());
                        }
                    }
                    if r < -1 {
                        return Err(Error::Stage(format!("stage {r} is below -1")).into());
                    }
                    arr.truncate_signed(r)
                }
                None => arr,
            };
            let mode = match mode {
                Mode::Dp => HodgeMode::Dp,
                Mode::Bruteforce => HodgeMode::BruteForce,
            };
            Ok(bivar(fmt, "hodge", &blowup_hodge(&arr, mode)?))
        }
        Command::Poincare { input } => Ok(univar(fmt, &blowup_poincare(&load(&input)?)?)),
        Command::Transform { input, element, stage } => {
            let arr = load(&input)?;
            let i = arr.index_of(&element)?;
            Ok(bivar(fmt, "hodge", &proper_transform_hodge(&arr, i, stage)?))
        }
        Command::ExcDivisor { input, element, stage } => {
            let arr = load(&input)?;
            let i = arr.index_of(&element)?;
            Ok(bivar(fmt, "hodge", &exceptional_divisor_hodge(&arr, i, stage)?))
        }
        Command::Complement { input } => Ok(bivar(fmt, "hodge", &complement_hodge(&load(&input)?)?)),
        Command::Nerve { input } => {
            let arr = load(&input)?;
            let facets: Vec<Vec<&str>> = arr
                .boundary_nerve()
                .facets
                .iter()
                .map(|f| f.iter().map(|&i| arr.stratum(i).id.as_str()).collect())
                .collect();
            Ok(match fmt {
                Format::Text => facets.iter().map(|f| format!("{}\n", f.join(" "))).collect(),
                Format::Json => {
                    let vertices: Vec<&str> = arr.strata().iter().map(|s| s.id.as_str()).collect();
                    pretty(&json!({ "vertices": vertices, "facets": facets }))
                }
            })
        }
        Command::Chow { input, hilbert, dump_basis, allow_nonregular, theorem_only } => {
            let arr = load(&input)?;
            let pres = if theorem_only {
                linear_theorem_presentation(&arr, allow_nonregular)?
            } else {
                linear_presentation(&arr, allow_nonregular)?
            };
            let basis = (dump_basis || hilbert).then(|| pres.groebner_basis());
            let series = match &basis {
                Some(b) if hilbert => Some(blowup_core::groebner::hilbert_series(b, &pres.variables)?),
                _ => None,
            };
            Ok(match fmt {
                Format::Text => {
                    let mut s = String::new();
                    let vars: Vec<String> =
                        pres.variables.iter().map(|v| format!("{}:{}", v.name, v.degree)).collect();
                    s += &format!("variables: {}\n", vars.join(" "));
                    s += "relations:\n";
                    for r in &pres.relations {
                        s += &format!("  {r}\n");
                    }
                    for t in &pres.taints {
                        s += &format!("taint: {t}\n");
                    }
                    if dump_basis {
                        s += "groebner basis:\n";
                        for g in basis.as_deref().unwrap_or_default() {
                            s += &format!("  {g}\n");
                        }
                    }
                    if let Some(h) = &series {
                        s += &format!("hilbert: {h}\n");
                    }
                    s
                }
                Format::Json => {
                    let mut doc = pres.to_json_value();
                    if dump_basis {
                        doc["groebner_basis"] =
                            json!(basis.as_deref().unwrap_or_default().iter().map(|g| g.to_string()).collect::<Vec<_>>());
                    }
                    if let Some(h) = &series {
                        doc["hilbert"] = json!({
                            "coefficients": h.coefficients().map(strings),
                            "numerator": strings(h.numerator().coefficients()),
                            "denominator_weights": h.denominator_weights(),
                        });
                    }
                    pretty(&doc)
                }
            })
        }
        Command::Verify { input, max_chains, max_groebner_strata } => {
            let arr = load(&input)?;
            let report = verify(&arr, Limits { max_chains, max_groebner_strata })?;
            let out = match fmt {
                Format::Text => report.to_string(),
                Format::Json => pretty(&json!({ "passed": report.passed(), "checks": report.checks })),
            };
            if report.passed() {
                Ok(out)
            } else {
                let _ = io::stdout().write_all(out.as_bytes());
                Err(Failure::Checks)
            }
        }
        Command::MapsHodge { n, d } => {
            let h = maps_space_hodge(n, d)?;
            Ok(match fmt {
                Format::Text => format!(
                    "EXPERIMENTAL: conjectural formula, not a certified invariant\n{}\ninterpretation: {}\n",
                    h.value, h.interpretation
                ),
                Format::Json => pretty(&json!({
                    "experimental": h.experimental,
                    "hodge": h.value,
                    "text": h.value.to_string(),
                    "interpretation": h.interpretation,
                })),
            })
        }
    }
}

fn build(b: Build) -> Outcome {
    let arr = match b {
        Build::Diagonal { n, dim_x, hodge_x } => {
            let e = match hodge_x {
                Some(src) => parse_hodge(&src)?,
                None => BivarPolynomial::projective_space(dim_x),
            };
            build_diagonal(n, dim_x, &e)?
        }
        Build::Linear { space, dim, generators } => {
            let text = read_file(&generators)?;
            let space = match space {
                SpaceArg::Projective => Space::Projective,
                SpaceArg::Affine => Space::Affine,
            };
            build_linear_from_json(&text, Some(space), Some(dim))?
        }
        Build::Kapranov { n } => build_kapranov(n)?,
        Build::Maps { n, d } => build_maps_poset(n, d)?,
    };
    Ok(arr.to_json_string())
}

fn parse_hodge(src: &str) -> Result<BivarPolynomial, Failure> {
    let text = if Path::new(src).is_file() { read_file(Path::new(src))? } else { src.to_string() };
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Failure::Usage(format!("--hodge-x: {e}")));
    }
    let coeffs: Result<Vec<i64>, _> = text.split(',').map(|c| c.trim().parse::<i64>()).collect();
    coeffs
        .map(|c| BivarPolynomial::from_uv_coefficients(&c))
        .map_err(|_| Failure::Usage(format!("--hodge-x: cannot read {text:?} as a polynomial")))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(input: &ArrInput) -> Result<Arrangement, Failure> {
    let text = match &input.arr {
        Some(path) => read_file(path)?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            s
        }
    };
    let arr = Arrangement::from_json_str(&text)?;
    arr.validate().map_err(Error::from)?;
    Ok(arr)
}

fn strings<T: Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn bivar(fmt: Format, key: &str, e: &BivarPolynomial) -> String {
    match fmt {
        Format::Text => format!("{e}\n"),
        Format::Json => pretty(&json!({ key: e, "text": e.to_string() })),
    }
}

fn univar(fmt: Format, p: &UnivarPolynomial) -> String {
    match fmt {
        Format::Text => format!("{p}\n"),
        Format::Json => pretty(&json!({ "poincare": p, "text": p.to_string() })),
    }
}
