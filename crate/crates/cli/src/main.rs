use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use steenrod::bench::{self, BenchOptions};
use steenrod::cohomology::Cohomology;
use steenrod::diagonal::{self, Mode, SignFault};
use steenrod::suite::{self, SuiteParams};
use steenrod::{io, library, Coefficient, SimplicialSet, TensorChain, Z2};

#[derive(Parser)]
#[command(name = "steenrod", version, about = "Cup-i products and Steenrod squares of simplicial sets")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient ring for chain-level output.
    #[arg(long, global = true, value_enum, default_value = "z2")]
    ring: Ring,
    /// A JSON file or a builtin name.
    #[arg(long, global = true)]
    space: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ring {
    Z,
    Z2,
}

#[derive(Subcommand)]
enum Command {
    /// Mod-2 Betti numbers and representative cocycles.
    Cohomology {
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Sq^i of a cocycle, at the cochain level and in cohomology.
    Sq {
        #[arg(short)]
        i: usize,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// The matrix of Sq^i: H^j -> H^{i+j}.
    SqMatrix {
        #[arg(short)]
        i: usize,
        #[arg(short)]
        j: usize,
    },
    /// The cup-i product of two cochains, or D_i of one simplex.
    Cupi {
        #[arg(short)]
        i: usize,
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
        /// Print D_i of this generator instead.
        #[arg(long, conflicts_with_all = ["left", "right"])]
        simplex: Option<String>,
    },
    /// Run a verification suite; exits nonzero if any case fails.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        max_i: Option<usize>,
        #[arg(short)]
        p: Option<usize>,
        /// Comma-separated space names or paths.
        #[arg(long, value_delimiter = ',')]
        spaces: Option<Vec<String>>,
        /// Drop one sign exponent of the closed formula.
        #[arg(long, value_enum)]
        inject_sign_fault: Option<Fault>,
    },
    /// Counts and timings of the closed formula against the composite pipeline, as CSV.
    Bench {
        #[arg(long, default_value_t = 8)]
        max_i: usize,
        #[arg(long = "max-k", alias = "k", default_value_t = 3)]
        max_k: usize,
        /// Largest simplex dimension at which the composite pipeline is run.
        #[arg(long, default_value_t = bench::DEFAULT_SLOW_LIMIT)]
        slow_limit: usize,
        #[arg(long)]
        no_timing: bool,
    },
    /// Builtin spaces.
    Spaces {
        #[command(subcommand)]
        action: SpacesAction,
    },
}

#[derive(Subcommand)]
enum SpacesAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    A,
    B,
    C,
    D,
}

impl From<Fault> for SignFault {
    fn from(f: Fault) -> Self {
        match f {
            Fault::A => SignFault::DropA,
            Fault::B => SignFault::DropB,
            Fault::C => SignFault::DropC,
            Fault::D => SignFault::DropD,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(global: &Global) -> Result<SimplicialSet> {
    let Some(spec) = &global.space else {
        bail!("--space is required for this command");
    };
    library::load_space(spec).with_context(|| format!("loading space '{spec}'"))
}

fn require_z2(global: &Global, what: &str) -> Result<()> {
    if global.ring == Ring::Z {
        bail!("{what} is computed over Z2 only");
    }
    Ok(())
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    match &cli.command {
        Command::Cohomology { max_dim } => {
            require_z2(g, "cohomology")?;
            let x = load(g)?;
            let mut h = Cohomology::up_to(&x, max_dim.unwrap_or(x.top_dim()));
            let betti = h.betti();
            let mut reps = Vec::new();
            for p in 0..betti.len() {
                let r: Vec<_> = h.basis(p).representatives().iter().map(|c| io::CochainFile::from_cochain(&x, c)).collect();
                reps.push(r);
            }
            if g.json {
                println!("{}", serde_json::to_string_pretty(&json!({ "betti": betti, "representatives": reps }))?);
            } else {
                println!("degree  betti  representatives");
                for (p, r) in reps.iter().enumerate() {
                    let names: Vec<String> = r.iter().map(|c| format!("{{{}}}", c.support.join(" "))).collect();
                    println!("{p:>6}  {:>5}  {}", betti[p], names.join(", "));
                }
            }
        }
        Command::Sq { i, cocycle } => {
            require_z2(g, "Sq")?;
            let x = load(g)?;
            let c = io::read_cochain(&x, cocycle)?;
            let s = diagonal::sq(&x, *i, &c);
            let mut h = Cohomology::new(&x);
            let j = c.degree();
            let class = match h.basis(j).class_of(&x, &c)? {
                steenrod::cohomology::ClassOf::Class(v) => Some((v.clone(), h.sq(*i, j, &v)?)),
                steenrod::cohomology::ClassOf::NotACocycle => None,
            };
            if g.json {
                let cls = class.as_ref().map(|(a, b)| json!({ "class": bits(a), "image": bits(b) }));
                let out = json!({ "cochain": io::CochainFile::from_cochain(&x, &s), "cohomology": cls });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("{}", io::cochain_to_json(&x, &s));
                match class {
                    Some((a, b)) => println!("Sq^{i} [{}] = [{}]", bits(&a), bits(&b)),
                    None => println!("input is not a cocycle"),
                }
            }
        }
        Command::SqMatrix { i, j } => {
            require_z2(g, "Sq")?;
            let x = load(g)?;
            let mut h = Cohomology::new(&x);
            let m = h.sq_matrix(*i, *j)?;
            if g.json {
                let rows: Vec<String> = (0..m.rows()).map(|r| bits(&(0..m.cols()).map(|c| m.get(r, c)).collect::<Vec<_>>())).collect();
                println!("{}", serde_json::to_string_pretty(&json!({ "i": i, "j": j, "rows": m.rows(), "cols": m.cols(), "matrix": rows }))?);
            } else {
                println!("Sq^{i}: H^{j} ({}) -> H^{} ({})", m.cols(), i + j, m.rows());
                print!("{m}");
            }
        }
        Command::Cupi { i, left, right, simplex } => {
            let x = load(g)?;
            if let Some(name) = simplex {
                let gen = x.find(name).with_context(|| format!("no generator named '{name}'"))?;
                let s = x.simplex(gen);
                match g.ring {
                    Ring::Z => print_tensors(&x, &diagonal::big_d::<i64>(*i, &x, &s, Mode::Fast), g.json)?,
                    Ring::Z2 => print_tensors(&x, &diagonal::big_d::<Z2>(*i, &x, &s, Mode::Fast), g.json)?,
                }
            } else {
                require_z2(g, "the cup-i product of cochains")?;
                let (Some(l), Some(r)) = (left, right) else {
                    bail!("give --left and --right, or --simplex");
                };
                let a = io::read_cochain(&x, l)?;
                let b = io::read_cochain(&x, r)?;
                let c = diagonal::cup_i_cochain(*i, &x, &a, &b)?;
                if g.json {
                    println!("{}", serde_json::to_string_pretty(&io::CochainFile::from_cochain(&x, &c))?);
                } else {
                    println!("{}", io::cochain_to_json(&x, &c));
                }
            }
        }
        Command::Verify { suite, max_n, max_dim, max_i, p, spaces, inject_sign_fault } => {
            let params = SuiteParams {
                spaces: spaces.clone(),
                max_n: *max_n,
                max_dim: *max_dim,
                max_i: *max_i,
                p: *p,
                seed: g.seed,
                sign_fault: inject_sign_fault.map(SignFault::from).unwrap_or_default(),
            };
            if let Some(p) = p.filter(|&p| !steenrod::reduced::is_prime(p)) {
                eprintln!("warning: p = {p} is not prime; only the chain-level identities are checked");
            }
            let report = suite::run_suite(suite, &params)?;
            if g.json {
                println!("{}", report.to_json());
            } else {
                println!("{report}");
            }
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Bench { max_i, max_k, slow_limit, no_timing } => {
            let records = bench::run_bench(*max_i, *max_k, BenchOptions { slow_limit: *slow_limit, timing: !no_timing })?;
            if g.json {
                println!("{}", serde_json::to_string_pretty(&records)?);
            } else {
                print!("{}", bench::to_csv(&records));
            }
        }
        Command::Spaces { action: SpacesAction::List } => {
            let entries = library::BUILTINS.iter().map(|n| library::describe(n)).collect::<steenrod::Result<Vec<_>>>()?;
            if g.json {
                let v: Vec<_> = entries
                    .iter()
                    .map(|e| json!({ "name": e.name, "description": e.description, "betti": e.expected_betti }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for e in entries {
                    println!("{:<20} {:<52} betti {:?}", e.name, e.description, e.expected_betti);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_tensors<R: Coefficient + std::fmt::Display>(x: &SimplicialSet, c: &TensorChain<R>, json: bool) -> Result<()> {
    let terms: Vec<(String, String, String)> = c
        .iter()
        .map(|(t, r)| (r.to_string(), x.describe(&t.factors()[0]), x.describe(&t.factors()[1])))
        .collect();
    if json {
        let v: Vec<_> = terms.iter().map(|(r, a, b)| json!({ "coefficient": r, "left": a, "right": b })).collect();
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else if terms.is_empty() {
        println!("0");
    } else {
        for (r, a, b) in terms {
            println!("{r:>3}  {a} ⊗ {b}");
        }
    }
    Ok(())
}
