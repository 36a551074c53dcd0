//! `sumfree`: construct, verify, enumerate and search symmetric complete
//! sum-free sets from the command line. Results are JSON on stdout;
//! notes and error messages go to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sumfree::applications::{dioid_partition, simulate_random_sumfree, CayleyGraph, ProcessConfig};
use sumfree::interval_ap::{self, CheckMode, IntervalAPParameters, Variant};
use sumfree::special::{self, GCache};
use sumfree::st::{self, STParameters, TCandidate};
use sumfree::zn::SetEncoding;
use sumfree::{oracle, Budget, CyclicSet, Error};

#[derive(Parser, Debug)]
#[command(
    name = "sumfree",
    version,
    about = "Symmetric complete sum-free sets in Z_n"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Skip re-verifying constructed sets with the Z_n predicates.
    #[arg(long, global = true)]
    fast: bool,
    /// Candidate limit for exhaustive enumerations.
    #[arg(long, global = true, env = "SUMFREE_BUDGET")]
    budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symmetry, sum-freeness, completeness and size of a set.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        set: SetInput,
    },
    /// Large sets S_T.
    #[command(subcommand)]
    St(StCommand),
    /// t-special sets.
    #[command(subcommand)]
    Special(SpecialCommand),
    /// The (±A) ∪ (±B) ∪ C construction.
    #[command(subcommand)]
    Small(SmallCommand),
    /// Arithmetic progression of set sizes for one modulus.
    Ladder {
        #[arg(long)]
        n: usize,
    },
    /// The ladder set whose density is closest to alpha.
    Density {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Exhaustive ground truth for small parameters.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Cayley graph Cay(Z_n, S).
    Cayley {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        set: SetInput,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        /// Estimate the diameter from this many random BFS sources.
        #[arg(long, value_name = "SOURCES")]
        sample_diameter: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The partition {0}, S, (S+S)\{0} of Z_p.
    Dioid {
        #[arg(long)]
        p: Option<usize>,
        #[command(flatten)]
        set: SetInput,
    },
    /// Random processes.
    #[command(subcommand)]
    Simulate(SimulateCommand),
}

#[derive(Subcommand, Debug)]
enum StCommand {
    /// Build S_T for a given T.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Elements of T, e.g. "0,4,5,6".
        #[arg(long = "t-set")]
        t_set: ElementList,
    },
    /// Check t-special ⟺ S_T complete sum-free of size s over every T.
    Equiv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SpecialCommand {
    /// List every t-special set.
    Enum {
        #[arg(long)]
        t: usize,
        /// Report g(t) only.
        #[arg(long)]
        count_only: bool,
        /// JSON file of cached g(t) values (used with --count-only).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Predicted number of symmetric complete sum-free sets in Z_p.
    Predict {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SmallCommand {
    Build {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// 11 (odd n) or 14 (even n).
        #[arg(long)]
        variant: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// All symmetric complete sum-free subsets of Z_n.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: Option<usize>,
        /// Include dilation classes.
        #[arg(long)]
        classes: bool,
    },
    /// Maximum sum-free subsets of Z_p.
    Maxsumfree {
        #[arg(long)]
        p: u64,
    },
    /// Compare the catalog of Z_p at size s against dilations of S_T.
    Probe {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SimulateCommand {
    /// Cameron's random sum-free set, optionally conditioned on R ⊆ M_S.
    Cameron {
        /// Modulus of the conditioning set.
        #[arg(long = "mod", requires = "set")]
        modulus: Option<usize>,
        #[arg(long, requires = "modulus")]
        set: Option<ElementList>,
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct SetInput {
    /// Comma-separated elements, e.g. "3,4,5".
    #[arg(long, conflicts_with = "set_file")]
    set: Option<ElementList>,
    /// JSON file of the form {"n": 8, "elements": [3, 4, 5]}.
    #[arg(long)]
    set_file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Json,
    Dot,
    Edges,
}

/// Comma-separated non-negative integers; the empty string is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ElementList(Vec<usize>);

impl FromStr for ElementList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(ElementList(Vec::new()));
        }
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("`{}`: {e}", x.trim()))
            })
            .collect::<Result<_, _>>()
            .map(ElementList)
    }
}

/// Either printed JSON or raw text (graph exports).
enum Output {
    Json(Value),
    Text(String),
}

/// A result plus whether every hard check held.
struct Outcome {
    output: Output,
    ok: bool,
}

impl Outcome {
    fn json(value: impl serde::Serialize) -> Result<Self, Error> {
        Ok(Outcome {
            output: Output::Json(to_value(value)),
            ok: true,
        })
    }

    fn checked(value: impl serde::Serialize, ok: bool) -> Result<Self, Error> {
        Ok(Outcome {
            output: Output::Json(to_value(value)),
            ok,
        })
    }
}

fn to_value(value: impl serde::Serialize) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn load_set(modulus: Option<usize>, input: &SetInput) -> Result<CyclicSet, Error> {
    match (&input.set, &input.set_file) {
        (Some(elements), _) => {
            let n = modulus.ok_or_else(|| {
                Error::InvalidParameters("--set needs the modulus as well".into())
            })?;
            CyclicSet::new(n, elements.0.iter().copied())
        }
        (None, Some(path)) => {
            let body = fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
            let enc: SetEncoding = serde_json::from_str(&body)
                .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
            if let Some(n) = modulus {
                if n != enc.n {
                    return Err(Error::ModulusMismatch {
                        left: n,
                        right: enc.n,
                    });
                }
            }
            CyclicSet::try_from(enc)
        }
        (None, None) => Err(Error::InvalidParameters(
            "one of --set or --set-file is required".into(),
        )),
    }
}

fn mode(cli: &Cli) -> CheckMode {
    if cli.fast {
        CheckMode::Fast
    } else {
        CheckMode::Checked
    }
}

fn budget(cli: &Cli, default: Budget) -> Budget {
    cli.budget.map(Budget::new).unwrap_or(default)
}

fn note(msg: &str) {
    eprintln!("note: {msg}");
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Verify { n, set } => Outcome::json(load_set(*n, set)?.properties()),

        Command::St(StCommand::Build { n, s, t_set }) => {
            let params = STParameters::new(*n, *s)?;
            let t = TCandidate::new(params.t(), t_set.0.iter().copied())?;
            let set = st::build_st(&params, &t)?;
            if !params.theorem_valid() {
                note("theorem hypotheses unmet (2n + 2 > 7s)");
            }
            Outcome::json(json!({
                "n": n,
                "s": s,
                "t": params.t(),
                "definition_valid": params.definition_valid(),
                "theorem_valid": params.theorem_valid(),
                "special": special::is_t_special(&t),
                "properties": set.properties(),
                "set": set,
            }))
        }
        Command::St(StCommand::Equiv { n, s }) => {
            let report =
                st::verify_st_equivalence(*n, *s, budget(cli, st::DEFAULT_EQUIVALENCE_BUDGET))?;
            let ok = report.counterexamples.is_empty();
            Outcome::checked(report, ok)
        }

        Command::Special(SpecialCommand::Enum {
            t,
            count_only,
            cache,
        }) => {
            let b = budget(cli, special::DEFAULT_SPECIAL_BUDGET);
            if *count_only {
                let g = match cache {
                    Some(path) => GCache::open(path).g(*t, b)?,
                    None => special::count_special(*t, b)?,
                };
                Outcome::json(json!({ "t": t, "g": g }))
            } else {
                Outcome::json(special::enumerate_special_with_budget(*t, b)?)
            }
        }
        Command::Special(SpecialCommand::Predict { p, r }) => {
            let prediction = special::predicted_scsf_count(
                *p,
                *r,
                budget(cli, special::DEFAULT_SPECIAL_BUDGET),
            )?;
            note("the count formula is only claimed for sufficiently large p");
            Outcome::json(prediction)
        }

        Command::Small(SmallCommand::Build { t, d, k, variant }) => {
            let params = IntervalAPParameters::new(*t, *d, *k, Variant::from_offset(*variant)?)?;
            let set = interval_ap::build_small(&params, mode(cli))?;
            Outcome::json(json!({
                "params": params,
                "checked": !cli.fast,
                "size": set.len(),
                "set": set,
            }))
        }
        Command::Ladder { n } => {
            let ladder = interval_ap::size_ladder(*n)?;
            let rungs = ladder
                .rungs
                .iter()
                .map(|rung| {
                    let set = ladder.build(rung, mode(cli))?;
                    Ok(json!({
                        "t": rung.t,
                        "d": rung.d,
                        "k": rung.k,
                        "size": rung.size,
                        "set": set.elements(),
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Outcome::json(json!({
                "n": n,
                "solved": ladder.solved,
                "difference": ladder.difference,
                "checked": !cli.fast,
                "rungs": rungs,
            }))
        }
        Command::Density { n, alpha } => {
            Outcome::json(interval_ap::nearest_density_set(*n, *alpha, mode(cli))?)
        }

        Command::Search(SearchCommand::Exhaustive { n, size, classes }) => {
            let catalog = oracle::exhaustive_scsf_with_budget(
                *n,
                *size,
                budget(cli, oracle::DEFAULT_CATALOG_BUDGET),
            )?;
            let mut value = to_value(&catalog);
            if !classes {
                value.as_object_mut().expect("struct").remove("classes");
            }
            Outcome::json(value)
        }
        Command::Search(SearchCommand::Maxsumfree { p }) => {
            Outcome::json(oracle::exhaustive_max_sum_free_with_budget(
                *p,
                budget(cli, oracle::DEFAULT_MAX_SUM_FREE_BUDGET),
            )?)
        }
        Command::Search(SearchCommand::Probe { p, s }) => {
            let report = oracle::characterization_probe(
                *p,
                *s,
                budget(cli, oracle::DEFAULT_CATALOG_BUDGET),
            )?;
            if report.hypotheses_unmet {
                note("theorem hypotheses unmet for these parameters");
            }
            note("the characterization is only claimed for sufficiently large p");
            Outcome::json(report)
        }

        Command::Cayley {
            n,
            set,
            format,
            sample_diameter,
            seed,
        } => {
            let set = load_set(*n, set)?;
            let expect_nice = set.is_complete_sum_free();
            let degree = set.len();
            let graph = CayleyGraph::new(set)?;
            match format {
                GraphFormat::Dot => Ok(Outcome {
                    output: Output::Text(graph.to_dot()),
                    ok: true,
                }),
                GraphFormat::Edges => Ok(Outcome {
                    output: Output::Text(graph.to_edge_list()),
                    ok: true,
                }),
                GraphFormat::Json => {
                    let (props, sample) = match sample_diameter {
                        Some(k) => {
                            let (props, sample) = graph.properties_sampled(*k, *seed);
                            (props, Some(sample))
                        }
                        None => (graph.properties(), None),
                    };
                    let diameter_ok = match &sample {
                        Some(s) => s.diameter_lower_bound == Some(2),
                        None => props.diameter == Some(2),
                    };
                    let ok = !expect_nice
                        || (props.regular
                            && props.degree == degree
                            && props.triangle_free
                            && diameter_ok);
                    Outcome::checked(
                        json!({
                            "complete_sum_free": expect_nice,
                            "properties": props,
                            "sampled_diameter": sample,
                        }),
                        ok,
                    )
                }
            }
        }
        Command::Dioid { p, set } => {
            let report = dioid_partition(&load_set(*p, set)?)?;
            let ok = report.holds;
            Outcome::checked(report, ok)
        }

        Command::Simulate(SimulateCommand::Cameron {
            modulus,
            set,
            horizon,
            trials,
            seed,
        }) => {
            let condition = match (modulus, set) {
                (Some(m), Some(s)) => Some(CyclicSet::new(*m, s.0.iter().copied())?),
                _ => None,
            };
            Outcome::json(simulate_random_sumfree(&ProcessConfig {
                horizon: *horizon,
                trials: *trials,
                seed: *seed,
                condition,
            })?)
        }
    }
}

fn render(cli: &Cli, value: &Value) -> String {
    if cli.pretty {
        serde_json::to_string_pretty(value).expect("json value")
    } else {
        value.to_string()
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: could not configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome { output, ok }) => {
            match output {
                Output::Json(value) => emit(&format!("{}\n", render(&cli, &value))),
                Output::Text(text) => emit(&text),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a verification check failed, see the report");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let value = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            emit(&format!("{}\n", render(&cli, &value)));
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
