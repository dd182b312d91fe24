use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use codecoset::code::VectorFq;
use codecoset::equiv::{self, SearchConfig};
use codecoset::format;
use codecoset::matphi::{build_matphi_with_cap, MAX_COSETS};
use codecoset::rbasis::build_reduced_basis_with_cap;
use codecoset::{decode_binary, decode_matphi, AdmissibleOrder, Code, CodeDefinition, OrderKind, Permutation};
use serde_json::{json, Value};

/// Largest `q^n` accepted by `decode-all`.
const MAX_DECODE_ALL: u128 = 1 << 20;

#[derive(Parser)]
#[command(name = "codecoset", version, about = "Coset structures, decoding and equivalence of linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical forms and the multiplication table.
    Matphi(Build),
    /// Canonical forms and the reduced basis.
    Rbasis(Build),
    /// Decode received vectors.
    Decode {
        #[command(flatten)]
        build: Build,
        /// Received vector, e.g. `1,0,1` (`1,0;0,1` when m > 1). Repeatable.
        #[arg(long = "vector", short = 'v', required = true)]
        vectors: Vec<String>,
        #[arg(long, value_enum, default_value_t = Decoder::Auto)]
        decoder: Decoder,
    },
    /// Decode every vector of the ambient space.
    DecodeAll {
        #[command(flatten)]
        build: Build,
        #[arg(long, value_enum, default_value_t = Decoder::Auto)]
        decoder: Decoder,
        /// Only print the counts.
        #[arg(long)]
        summary: bool,
    },
    /// Decide permutation equivalence, or check a given permutation.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Permutation to check, in cycle `(1,2,3)` or list `[2,3,1]` notation.
        #[arg(long)]
        sigma: Option<String>,
        /// Longest code the search accepts.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = OrderArg::Drl)]
        order: OrderArg,
    },
    /// Per-position head and tail counts of the reduced basis by level.
    Stats {
        #[command(flatten)]
        build: Build,
        /// Level to report. Repeatable; all levels when omitted.
        #[arg(long = "level", short = 'l')]
        levels: Vec<usize>,
    },
    /// Weight distribution, minimum distance and capability.
    Weights { file: PathBuf },
}

#[derive(Args)]
struct Build {
    /// Code definition file.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = OrderArg::Drl)]
    order: OrderArg,
    /// Variables from smallest to largest, as a permutation of 1..nm.
    #[arg(long)]
    var_order: Option<String>,
    /// Largest number of cosets built.
    #[arg(long, default_value_t = MAX_COSETS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Drl,
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => OrderKind::Lex,
            OrderArg::Drl => OrderKind::Drl,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Decoder {
    /// Reduced basis for binary codes, table otherwise.
    Auto,
    Binary,
    Matphi,
}

#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<codecoset::Error> for Failure {
    fn from(e: codecoset::Error) -> Self {
        Failure { kind: e.kind(), message: e.to_string() }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn load(path: &Path) -> Result<Code> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { kind: "io_error", message: format!("{}: {e}", path.display()) })?;
    Ok(CodeDefinition::from_json(&text)?.to_code()?)
}

fn is_binary(code: &Code) -> bool {
    code.field().characteristic() == 2 && code.field().degree() == 1
}

impl Build {
    fn order(&self, code: &Code) -> Result<AdmissibleOrder> {
        let nvars = code.len() * code.field().degree();
        Ok(match &self.var_order {
            None => AdmissibleOrder::new(self.order.into(), nvars),
            Some(s) => AdmissibleOrder::with_variable_order(self.order.into(), &Permutation::parse(s, nvars)?),
        })
    }
}

struct Decoding {
    code: Code,
    table: Option<codecoset::MatphiTable>,
    basis: Option<codecoset::ReducedBasis>,
}

impl Decoding {
    fn new(build: &Build, decoder: Decoder) -> Result<Self> {
        let code = load(&build.file)?;
        let order = build.order(&code)?;
        let cap = build.max_cosets as u128;
        let use_basis = match decoder {
            Decoder::Auto => is_binary(&code),
            Decoder::Binary => true,
            Decoder::Matphi => false,
        };
        let (table, basis) = if use_basis {
            let g = build_reduced_basis_with_cap(&code, &order, cap)?;
            if !g.is_binary() {
                let f = code.field();
                return Err(codecoset::Error::WrongCharacteristic {
                    operation: "binary decoding",
                    p: f.characteristic(),
                    m: f.degree(),
                }
                .into());
            }
            (None, Some(g))
        } else {
            (Some(build_matphi_with_cap(&code, &order, cap)?), None)
        };
        Ok(Decoding { code, table, basis })
    }

    fn name(&self) -> &'static str {
        if self.basis.is_some() {
            "binary"
        } else {
            "matphi"
        }
    }

    fn decode(&self, rx: &VectorFq) -> Result<Value> {
        let r = match (&self.basis, &self.table) {
            (Some(g), _) => decode_binary(g, &self.code, rx)?,
            (None, Some(t)) => decode_matphi(t, &self.code, rx)?,
            (None, None) => unreachable!("one decoder is always built"),
        };
        let mut v = serde_json::to_value(r.to_json(&self.code)).expect("decode results serialize");
        v["received"] = format::vector_json(self.code.field(), rx);
        Ok(v)
    }
}

fn run(command: &Command) -> Result<Value> {
    match command {
        Command::Matphi(b) => {
            let code = load(&b.file)?;
            let t = build_matphi_with_cap(&code, &b.order(&code)?, b.max_cosets as u128)?;
            Ok(serde_json::to_value(t.export()).expect("tables serialize"))
        }
        Command::Rbasis(b) => {
            let code = load(&b.file)?;
            let g = build_reduced_basis_with_cap(&code, &b.order(&code)?, b.max_cosets as u128)?;
            Ok(serde_json::to_value(g.export()).expect("bases serialize"))
        }
        Command::Decode { build, vectors, decoder } => {
            let d = Decoding::new(build, *decoder)?;
            let results = vectors
                .iter()
                .map(|s| d.decode(&format::parse_vector(d.code.field(), d.code.len(), s)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({ "decoder": d.name(), "results": results }))
        }
        Command::DecodeAll { build, decoder, summary } => {
            let d = Decoding::new(build, *decoder)?;
            let q = d.code.field().order() as u128;
            let needed = q.checked_pow(d.code.len() as u32).unwrap_or(u128::MAX);
            if needed > MAX_DECODE_ALL {
                return Err(codecoset::Error::CapExceeded { what: "received vectors", needed, cap: MAX_DECODE_ALL }.into());
            }
            let mut results = Vec::new();
            let mut corrected = 0;
            for rx in VectorFq::all(d.code.field(), d.code.len()) {
                let r = d.decode(&rx)?;
                if r["outcome"] == "corrected" {
                    corrected += 1;
                }
                if !summary {
                    results.push(r);
                }
            }
            let mut out = json!({
                "decoder": d.name(),
                "vectors": needed,
                "corrected": corrected,
                "too_many_errors": needed - corrected,
            });
            if !summary {
                out["results"] = Value::Array(results);
            }
            Ok(out)
        }
        Command::Equiv { first, second, sigma, max_n, order } => {
            let (c1, c2) = (load(first)?, load(second)?);
            match sigma {
                None => {
                    let cfg = SearchConfig { max_n: *max_n as usize, ..SearchConfig::default() };
                    Ok(serde_json::to_value(equiv::find_permutation_with(&c1, &c2, &cfg)?).expect("verdicts serialize"))
                }
                Some(s) => {
                    let s = Permutation::parse(s, c1.len())?;
                    let verified = equiv::verify_permutation(&c1, &c2, &s)?;
                    let bases = if is_binary(&c1) {
                        let kind: OrderKind = (*order).into();
                        let g1 = codecoset::build_reduced_basis(&c1, &AdmissibleOrder::new(kind, c1.len()))?;
                        let g2 = codecoset::build_reduced_basis(&c2, &AdmissibleOrder::new(kind, c2.len()))?;
                        Value::Bool(equiv::bases_equivalent(&g1, &g2, &s)?)
                    } else {
                        Value::Null
                    };
                    Ok(json!({ "sigma": s, "verified": verified, "bases_equivalent": bases }))
                }
            }
        }
        Command::Stats { build, levels } => {
            let code = load(&build.file)?;
            let g = build_reduced_basis_with_cap(&code, &build.order(&code)?, build.max_cosets as u128)?;
            let levels: Vec<usize> = if levels.is_empty() { g.levels().keys().copied().collect() } else { levels.clone() };
            let stats: Vec<_> = levels.iter().map(|&l| equiv::level_stats(&g, l)).collect();
            Ok(serde_json::to_value(stats).expect("stats serialize"))
        }
        Command::Weights { file } => {
            let code = load(file)?;
            Ok(json!({
                "n": code.len(),
                "k": code.dimension(),
                "weight_distribution": code.weight_distribution()?,
                "minimum_distance": code.minimum_distance()?,
                "t": code.error_capability()?,
            }))
        }
    }
}

fn emit(output: Option<&Path>, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure { kind: "io_error", message: format!("{}: {e}", p.display()) }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command).and_then(|v| emit(cli.output.as_deref(), &v)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind, "message": e.message }));
            ExitCode::FAILURE
        }
    }
}
