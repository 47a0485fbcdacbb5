//! The `walkcolor` command line.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! with everything that should be printed, so the binary is a thin wrapper
//! and the commands are testable in-process.
//!
//! Exit codes: 0 success or feasible, 1 infeasible or invalid, 2 resource
//! limit, 3 usage or parse error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::coloring::{
    bounded_mono_edge_coloring, bounds_report, decide_kwalk_colorable, directed_chromatic_index,
    expand_distributive, expand_representation, expand_trivial, lift_coloring,
    lift_coloring_relaxed, mono_profile_vertex_coloring, reduce_coloring,
    search_walk_coloring_direct, sperner_r, verify_coloring, Decision, MonoOutcome, SolverConfig,
    Verdict, WalkColoring,
};
use crate::digraph::{optimal_vertex_coloring, orient_from_coloring, WalkLength};
use crate::error::{Error, Result};
use crate::io::{self, ColoringJson, DigraphJson, PosetJson};
use crate::poset::{
    birkhoff, birkhoff_power, dilworth_number, join_irreducibles, maximum_antichain, product_poset,
    Poset, DEFAULT_ANTICHAIN_LIMIT, DEFAULT_PRODUCT_CAP,
};
use crate::symmetry::{composed_walk_coloring, ListState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Largest walk count `cv compose` will enumerate.
const COMPOSE_MAX_WALKS: u128 = 1 << 22;

#[derive(Debug, Parser)]
#[command(
    name = "walkcolor",
    version,
    about = "Poset colorings of walks in digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Posets and antichain lattices
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Digraph queries
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Walk colorings
    #[command(subcommand)]
    Color(ColorCmd),
    /// Directed chromatic index
    #[command(subcommand)]
    Index(IndexCmd),
    /// Deterministic coin tossing on a path
    #[command(subcommand)]
    Cv(CvCmd),
}

#[derive(Debug, Args)]
struct Limits {
    /// Cap on the number of antichains materialized
    #[arg(long, default_value_t = DEFAULT_ANTICHAIN_LIMIT)]
    limit: usize,
    /// Largest vertex count handed to the exact chromatic-number solver
    #[arg(long = "max-n", default_value_t = crate::digraph::DEFAULT_MAX_CHROMATIC_N)]
    max_n: usize,
    /// Cap on search-tree nodes in colorability searches
    #[arg(long = "max-nodes", default_value_t = SolverConfig::default().max_search_nodes)]
    max_nodes: u64,
}

impl Limits {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            antichain_limit: self.limit,
            max_search_nodes: self.max_nodes,
            max_chromatic_n: self.max_n,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum PosetCmd {
    /// The lattice of antichains A(P), optionally iterated
    Birkhoff {
        poset: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, default_value_t = DEFAULT_ANTICHAIN_LIMIT)]
        limit: usize,
    },
    /// Size of a largest antichain
    Dilworth {
        poset: PathBuf,
        /// Also print one largest antichain
        #[arg(long)]
        witness: bool,
    },
    /// The join-irreducible elements of a lattice
    Irreducibles { poset: PathBuf },
    /// Product of chains [0, l_1] x ... x [0, l_n]
    Product {
        #[arg(required = true, num_args = 1..)]
        bounds: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_PRODUCT_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    /// Chromatic number of the undirected version, with an optimal coloring
    Chi {
        graph: PathBuf,
        #[arg(long = "max-n", default_value_t = crate::digraph::DEFAULT_MAX_CHROMATIC_N)]
        max_n: usize,
    },
    /// Length of a longest walk
    Length { graph: PathBuf },
    /// The k-walks in lexicographic order
    Walks {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Print only the number of walks
        #[arg(long)]
        count: bool,
    },
    /// Acyclic orientation from a vertex coloring into a poset
    Orient {
        graph: PathBuf,
        #[arg(long)]
        poset: PathBuf,
        /// Element id per vertex, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum ColorCmd {
    /// Check the coloring condition on every longer walk
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Coloring of shorter walks into the antichain lattice
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ANTICHAIN_LIMIT)]
        limit: usize,
    },
    /// Coloring of longer walks from a coloring into A(base)
    Lift {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// The poset whose antichain lattice the coloring uses
        #[arg(long)]
        base: PathBuf,
        /// Pick from the whole ideal difference
        #[arg(long)]
        relaxed: bool,
        #[arg(long, default_value_t = DEFAULT_ANTICHAIN_LIMIT)]
        limit: usize,
    },
    /// Coloring of longer walks by one of the expansion constructions
    Expand {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Copy prefix colors onto walks of this many vertices
        #[arg(long, conflicts_with_all = ["representation", "distributive"])]
        k: Option<usize>,
        /// Set representation file of the coloring's poset
        #[arg(long, conflicts_with = "distributive")]
        representation: Option<PathBuf>,
        /// Expand into the join-irreducibles of a distributive lattice
        #[arg(long)]
        distributive: bool,
    },
    /// Decide colorability of the k-walks and print a witness
    Decide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        k: usize,
        /// Search walk colorings directly instead of via antichain lattices
        #[arg(long)]
        direct: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Edge colorings with bounded monochromatic walks
    Mono {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
        /// Instead of searching, compute the run-length profile of this
        /// coloring
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_PRODUCT_CAP)]
        cap: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Subcommand)]
enum IndexCmd {
    /// Exact directed chromatic index
    Directed {
        graph: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Closed-form bounds on the index
    Bounds {
        graph: PathBuf,
        #[arg(long = "max-n", default_value_t = crate::digraph::DEFAULT_MAX_CHROMATIC_N)]
        max_n: usize,
    },
    /// Least r with m <= C(r, floor(r/2))
    Sperner { m: usize },
}

#[derive(Debug, Subcommand)]
enum CvCmd {
    /// Color a path of n nodes from a random permutation down to 3 colors
    Run {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One line per round
        #[arg(long)]
        trace: bool,
    },
    /// Check the composed rounds as a coloring of walks
    Compose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn lines(code: i32, values: &[Value]) -> Self {
        let mut stdout = String::new();
        for v in values {
            stdout.push_str(&v.to_string());
            stdout.push('\n');
        }
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn one(code: i32, v: Value) -> Self {
        Self::lines(code, &[v])
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_resource_limit() => EXIT_RESOURCE,
        Error::Parse(_)
        | Error::ElementOutOfRange { .. }
        | Error::VertexOutOfRange { .. }
        | Error::SelfLoop(_)
        | Error::DuplicateEdge(..)
        | Error::NotAPartialOrder(_)
        | Error::CycleInCoverRelations(..)
        | Error::NotAWalk(_)
        | Error::ColorOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_INFEASIBLE,
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("{}\n", json!({ "error": text.trim_end() })),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("{}\n", json!({ "error": e.to_string() })),
        },
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn poset_value(p: &Poset) -> Value {
    to_value(&PosetJson::from_poset(p))
}

fn coloring_value(c: &WalkColoring) -> Value {
    to_value(&ColoringJson::from_coloring(c))
}

fn length_value(l: WalkLength) -> Value {
    match l {
        WalkLength::Finite(n) => json!(n),
        WalkLength::Infinite => json!("infinite"),
    }
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Poset(c) => poset_cmd(c),
        Command::Graph(c) => graph_cmd(c),
        Command::Color(c) => color_cmd(c),
        Command::Index(c) => index_cmd(c),
        Command::Cv(c) => cv_cmd(c),
    }
}

fn poset_cmd(cmd: PosetCmd) -> Result<Outcome> {
    let v = match cmd {
        PosetCmd::Birkhoff {
            poset,
            power,
            limit,
        } => poset_value(&birkhoff_power(&io::read_poset(&poset)?, power, limit)?),
        PosetCmd::Dilworth { poset, witness } => {
            let p = io::read_poset(&poset)?;
            if witness {
                json!({ "antichain": maximum_antichain(&p).elements(), "dilworth": dilworth_number(&p) })
            } else {
                json!({ "dilworth": dilworth_number(&p) })
            }
        }
        PosetCmd::Irreducibles { poset } => {
            poset_value(&join_irreducibles(&io::read_poset(&poset)?)?)
        }
        PosetCmd::Product { bounds, cap } => poset_value(&product_poset(&bounds, cap)?),
    };
    Ok(Outcome::one(EXIT_OK, v))
}

fn graph_cmd(cmd: GraphCmd) -> Result<Outcome> {
    let v = match cmd {
        GraphCmd::Chi { graph, max_n } => {
            let coloring = optimal_vertex_coloring(&io::read_digraph(&graph)?, max_n)?;
            let chi = coloring.iter().max().map_or(0, |&m| m + 1);
            json!({ "chi": chi, "coloring": coloring })
        }
        GraphCmd::Length { graph } => {
            json!({ "length": length_value(io::read_digraph(&graph)?.longest_walk_length()) })
        }
        GraphCmd::Walks { graph, k, count } => {
            if k == 0 {
                return Err(Error::PreconditionFailed(
                    "walks have at least one vertex".into(),
                ));
            }
            let g = io::read_digraph(&graph)?;
            let n = g.count_walks(k);
            if count {
                let count = u64::try_from(n)
                    .map(Value::from)
                    .unwrap_or_else(|_| json!(n.to_string()));
                json!({ "count": count })
            } else {
                const MAX_LISTED: u128 = 1 << 20;
                if n > MAX_LISTED {
                    return Err(Error::SizeLimitExceeded {
                        what: "number of walks to list",
                        limit: MAX_LISTED,
                    });
                }
                let walks: Vec<Vec<usize>> = g.walks(k).collect();
                json!({ "count": walks.len(), "walks": walks })
            }
        }
        GraphCmd::Orient {
            graph,
            poset,
            colors,
        } => {
            let g = io::read_digraph(&graph)?;
            let p = io::read_poset(&poset)?;
            let oriented = orient_from_coloring(&g, &p, &colors, &p.linear_extension())?;
            to_value(&DigraphJson {
                edges: oriented.edges().iter().map(|&(u, v)| [u, v]).collect(),
                n: oriented.n(),
            })
        }
    };
    Ok(Outcome::one(EXIT_OK, v))
}

fn read_colored(graph: &Path, coloring: &Path) -> Result<WalkColoring> {
    let g = Arc::new(io::read_digraph(graph)?);
    let c = io::read_coloring(coloring, g)?;
    c.check_total()?;
    Ok(c)
}

fn color_cmd(cmd: ColorCmd) -> Result<Outcome> {
    match cmd {
        ColorCmd::Verify { graph, coloring } => {
            let c = read_colored(&graph, &coloring)?;
            Ok(match verify_coloring(&c)? {
                Verdict::Valid => Outcome::one(EXIT_OK, json!({ "valid": true })),
                Verdict::Counterexample(w) => Outcome::one(
                    EXIT_INFEASIBLE,
                    json!({ "counterexample": w, "valid": false }),
                ),
            })
        }
        ColorCmd::Reduce {
            graph,
            coloring,
            limit,
        } => {
            let c = read_colored(&graph, &coloring)?;
            Ok(Outcome::one(
                EXIT_OK,
                coloring_value(&reduce_coloring(&c, limit)?),
            ))
        }
        ColorCmd::Lift {
            graph,
            coloring,
            base,
            relaxed,
            limit,
        } => {
            let c = read_colored(&graph, &coloring)?;
            let a = birkhoff(&io::read_poset(&base)?, limit)?;
            if a.same_order(c.poset()) {
                let c = c.with_poset(a)?;
                let lifted = if relaxed {
                    lift_coloring_relaxed(&c)?
                } else {
                    lift_coloring(&c)?
                };
                Ok(Outcome::one(EXIT_OK, coloring_value(&lifted)))
            } else {
                Err(Error::PreconditionFailed(
                    "coloring's poset is not the antichain lattice of the base poset".into(),
                ))
            }
        }
        ColorCmd::Expand {
            graph,
            coloring,
            k,
            representation,
            distributive,
        } => {
            let c = read_colored(&graph, &coloring)?;
            let out = if let Some(k) = k {
                expand_trivial(&c, k)?
            } else if let Some(path) = representation {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let rep = io::representation_from_json(&text, Arc::clone(c.poset()))?;
                expand_representation(&c, &rep)?
            } else if distributive {
                expand_distributive(&c)?
            } else {
                return Err(Error::Parse(
                    "expand needs one of --k, --representation, --distributive".into(),
                ));
            };
            Ok(Outcome::one(EXIT_OK, coloring_value(&out)))
        }
        ColorCmd::Decide {
            graph,
            poset,
            k,
            direct,
            limits,
        } => {
            let g = io::read_digraph(&graph)?;
            let p = io::read_poset(&poset)?;
            let cfg = limits.config();
            let d = if direct {
                search_walk_coloring_direct(&g, k, &p, &cfg)?
            } else {
                decide_kwalk_colorable(&g, k, &p, &cfg)?
            };
            Ok(match d {
                Decision::Feasible(c) => Outcome::one(
                    EXIT_OK,
                    json!({ "coloring": coloring_value(&c), "feasible": true }),
                ),
                Decision::Infeasible => Outcome::one(EXIT_INFEASIBLE, json!({ "feasible": false })),
            })
        }
        ColorCmd::Mono {
            graph,
            bounds,
            coloring,
            cap,
            limits,
        } => {
            if let Some(path) = coloring {
                let d = read_colored(&graph, &path)?;
                let profile = mono_profile_vertex_coloring(&d, &bounds, cap)?;
                return Ok(Outcome::one(EXIT_OK, coloring_value(&profile)));
            }
            let g = io::read_digraph(&graph)?;
            let cfg = SolverConfig {
                product_cap: cap,
                ..limits.config()
            };
            Ok(match bounded_mono_edge_coloring(&g, &bounds, &cfg)? {
                MonoOutcome::Feasible { vertex, edges } => Outcome::one(
                    EXIT_OK,
                    json!({
                        "edges": coloring_value(&edges),
                        "feasible": true,
                        "vertex": coloring_value(&vertex),
                    }),
                ),
                MonoOutcome::Infeasible => {
                    Outcome::one(EXIT_INFEASIBLE, json!({ "feasible": false }))
                }
            })
        }
    }
}

fn index_cmd(cmd: IndexCmd) -> Result<Outcome> {
    let v = match cmd {
        IndexCmd::Directed { graph, limits } => {
            let g = io::read_digraph(&graph)?;
            json!({ "index": directed_chromatic_index(&g, &limits.config())? })
        }
        IndexCmd::Bounds { graph, max_n } => {
            let b = bounds_report(&io::read_digraph(&graph)?, max_n)?;
            json!({
                "chi": b.chi,
                "length": length_value(b.length),
                "log2_chi": b.log2_chi,
                "log2_len1": b.log2_len1,
                "sperner_r_of_chi": b.sperner_r_of_chi,
            })
        }
        IndexCmd::Sperner { m } => json!({ "r": sperner_r(m) }),
    };
    Ok(Outcome::one(EXIT_OK, v))
}

fn cv_cmd(cmd: CvCmd) -> Result<Outcome> {
    match cmd {
        CvCmd::Run { n, seed, trace } => {
            let mut s = ListState::random_permutation(n, seed);
            let mut lines = Vec::new();
            if trace {
                lines.push(json!({ "domain_size": s.domain_size(), "round": 0 }));
            }
            let mut rounds = 0;
            while s.domain_size() > crate::symmetry::SMALL_DOMAIN {
                s = s.cv_step();
                rounds += 1;
                if trace {
                    lines.push(json!({ "domain_size": s.domain_size(), "round": s.round() }));
                }
            }
            let three = s.reduce_to_three()?;
            if trace {
                lines.push(json!({ "domain_size": three.domain_size(), "round": three.round() }));
            }
            let ruling = three.ruling_set()?;
            let max_gap = ruling.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
            lines.push(json!({
                "compression_rounds": rounds,
                "max_gap": max_gap,
                "proper": three.is_proper(),
                "ruling_set": ruling,
            }));
            Ok(Outcome::lines(EXIT_OK, &lines))
        }
        CvCmd::Compose { n, steps } => {
            let (c, verdict) = composed_walk_coloring(n, steps, COMPOSE_MAX_WALKS)?;
            let colors = c.poset().len();
            Ok(match verdict {
                Verdict::Valid => Outcome::one(
                    EXIT_OK,
                    json!({ "colors": colors, "valid": true, "walks": c.len() }),
                ),
                Verdict::Counterexample(w) => Outcome::one(
                    EXIT_INFEASIBLE,
                    json!({ "colors": colors, "counterexample": w, "valid": false, "walks": c.len() }),
                ),
            })
        }
    }
}
