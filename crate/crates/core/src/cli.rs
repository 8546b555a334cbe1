//! The `shadow-markov` command line.
//!
//! Exit status is 0 on success, 1 on domain errors (non-integral division,
//! non-Markov input, failed verification) and 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::dual::DualInt;
use crate::error::Error;
use crate::init_space::{self, InitialTriple, PositivityReport, Verdict};
use crate::markov::{self, DualTriple, Slot};
use crate::render;
use crate::tree::{self, Direction, TreePath};
use crate::uniqueness::{self, SlotSelection};

const DEFAULT_DEPTH: usize = 12;
const DEFAULT_DEPTH_CAP: usize = 16;
const DEFAULT_BOUND_CAP: u32 = 10;

#[derive(Debug, Parser)]
#[command(
    name = "shadow-markov",
    version,
    about = "Dual-number Markov triples: mutations, trees and invariance checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TrunkSlot {
    A,
    B,
    C,
}

impl From<TrunkSlot> for Slot {
    fn from(t: TrunkSlot) -> Slot {
        match t {
            TrunkSlot::A => Slot::A,
            TrunkSlot::B => Slot::B,
            TrunkSlot::C => Slot::C,
        }
    }
}

#[derive(Debug, Args)]
struct DepthArgs {
    /// Depth below the trunk.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Largest depth accepted before generation starts.
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    depth_cap: usize,
}

impl DepthArgs {
    fn checked(&self) -> Result<usize, Failure> {
        if self.depth > self.depth_cap {
            return Err(Failure::Usage(format!(
                "depth {} exceeds the cap {} (raise it with --depth-cap)",
                self.depth, self.depth_cap
            )));
        }
        Ok(self.depth)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the exchange relation at one slot of a triple.
    Mutate {
        #[arg(long, allow_hyphen_values = true)]
        triple: DualTriple,
        /// 0, 1, 2 (or a, b, c).
        #[arg(long)]
        slot: Slot,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// A² + B² + C² − X·ABC, with X given directly or as 3 − σε.
    Residual {
        #[arg(long, allow_hyphen_values = true)]
        triple: DualTriple,
        #[arg(
            long,
            conflicts_with = "x",
            required_unless_present = "x",
            allow_hyphen_values = true
        )]
        sigma: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<DualInt>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the equation, involution and linear-form agreement on every tree node.
    Verify {
        #[arg(long, default_value = "0,1,1", allow_hyphen_values = true)]
        init: InitialTriple,
        #[command(flatten)]
        depth: DepthArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate the tree breadth-first.
    Tree {
        #[arg(long, default_value = "0,1,1", allow_hyphen_values = true)]
        init: InitialTriple,
        #[command(flatten)]
        depth: DepthArgs,
        /// Seed slot mutated to form the trunk.
        #[arg(long, value_enum, default_value_t = TrunkSlot::A)]
        trunk: TrunkSlot,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Newest regions along a constant-letter path.
    Branch {
        #[arg(long, default_value = "0,1,1", allow_hyphen_values = true)]
        init: InitialTriple,
        #[arg(long)]
        dir: Direction,
        #[arg(long)]
        length: usize,
        /// Print the region chain bordering the fixed side instead.
        #[arg(long)]
        chain: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Descend to a triple of the form (1+α'e, 1+β'e, 1+γ'e).
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        triple: DualTriple,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certify that invariant deformations are multiples of ABC.
    Uniqueness {
        #[arg(long)]
        max_degree: u32,
        /// Require invariance under all three slot mutations.
        #[arg(long, conflicts_with = "slots")]
        all_slots: bool,
        /// `a` for the A-mutation only, `all` for all three.
        #[arg(long, default_value = "all")]
        slots: SlotSelection,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report the first non-positive shadow for every seed in [−B, B]³.
    SearchInit {
        #[arg(long)]
        bound: u32,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND_CAP)]
        bound_cap: u32,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Coordinates of a seed over (0,1,1), (1,1,1), (0,1,0).
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        seed: InitialTriple,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Shadow coefficients (u, v, t) of the node at a path.
    Coeffs {
        #[arg(long, default_value = "")]
        path: TreePath,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Residual of the Huang–Penner–Zeitlin equation at an integer triple.
    Hpz {
        #[arg(long, allow_hyphen_values = true)]
        triple: IntTriple,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone)]
struct IntTriple([BigInt; 3]);

impl std::str::FromStr for IntTriple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let seed: InitialTriple = s.parse()?;
        Ok(IntTriple([seed.alpha1, seed.beta1, seed.gamma1]))
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_) | Error::InvalidSlot(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::Usage(format!("format {format:?} is not available for {command}").to_lowercase())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = target.write_all(rendered.as_bytes());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(
                err,
                "error: {msg}\n\nUsage: shadow-markov <COMMAND> [OPTIONS]; see --help"
            );
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Mutate {
            triple,
            slot,
            format,
        } => {
            let t = markov::mutate(&triple, slot)?;
            match format {
                Format::Text => Ok(format!("{t}\n")),
                Format::Json => Ok(json(&t)),
                f => Err(unsupported(f, "mutate")),
            }
        }
        Command::Residual {
            triple,
            sigma,
            x,
            format,
        } => {
            let x = match (x, sigma) {
                (Some(x), _) => x,
                (None, Some(sigma)) => DualInt::new(3, -sigma),
                (None, None) => unreachable!("clap requires one of --x, --sigma"),
            };
            let r = markov::residual(&triple, &x);
            match format {
                Format::Text => Ok(format!("{r}\n")),
                Format::Json => Ok(json(&r)),
                f => Err(unsupported(f, "residual")),
            }
        }
        Command::Verify {
            init,
            depth,
            format,
        } => verify(&init, depth.checked()?, format),
        Command::Tree {
            init,
            depth,
            trunk,
            format,
        } => {
            let d = depth.checked()?;
            let nodes = tree::subtree_from(tree::trunk_at(&init, trunk.into()), d)?;
            Ok(match format {
                Format::Text => render::tree_text(&nodes),
                Format::Csv => render::tree_csv(&nodes),
                Format::Dot => render::tree_dot(&nodes),
                Format::Json => render::tree_json(&nodes) + "\n",
            })
        }
        Command::Branch {
            init,
            dir,
            length,
            chain,
            depth_cap,
            format,
        } => {
            if length > depth_cap + 1 {
                return Err(Failure::Usage(format!(
                    "length {length} exceeds the depth cap {depth_cap} (raise it with --depth-cap)"
                )));
            }
            let values = if chain {
                tree::branch_chain(&init, dir, length)?
            } else {
                tree::branch(&init, dir, length)?
            };
            match format {
                Format::Text => Ok(values.iter().map(|v| format!("{v}\n")).collect()),
                Format::Csv => {
                    let mut s = String::from("index,a,alpha\n");
                    for (i, v) in values.iter().enumerate() {
                        let _ = writeln!(s, "{i},{},{}", v.real, v.shadow);
                    }
                    Ok(s)
                }
                Format::Json => Ok(json(&values)),
                f => Err(unsupported(f, "branch")),
            }
        }
        Command::Reduce { triple, format } => {
            let descent = markov::reduce_to_fundamental(&triple)?;
            match format {
                Format::Text => {
                    let moves: Vec<String> = descent
                        .moves
                        .iter()
                        .map(|s| s.index().to_string())
                        .collect();
                    Ok(format!(
                        "terminal: {}\nmoves: {}\n",
                        descent.terminal,
                        moves.join(" ")
                    ))
                }
                Format::Json => Ok(json(&descent)),
                f => Err(unsupported(f, "reduce")),
            }
        }
        Command::Uniqueness {
            max_degree,
            all_slots,
            slots,
            format,
        } => {
            if max_degree < 1 {
                return Err(Failure::Usage("--max-degree must be at least 1".into()));
            }
            let slots = if all_slots { SlotSelection::All } else { slots };
            let report = uniqueness::certify_uniqueness(max_degree, slots);
            match format {
                Format::Text => Ok(report.to_string()),
                Format::Json => Ok(json(&report)),
                f => Err(unsupported(f, "uniqueness")),
            }
        }
        Command::SearchInit {
            bound,
            depth,
            bound_cap,
            depth_cap,
            format,
        } => {
            if bound > bound_cap {
                return Err(Failure::Usage(format!(
                    "bound {bound} exceeds the cap {bound_cap} (raise it with --bound-cap)"
                )));
            }
            if depth > depth_cap {
                return Err(Failure::Usage(format!(
                    "depth {depth} exceeds the cap {depth_cap} (raise it with --depth-cap)"
                )));
            }
            let reports = init_space::positivity_search(bound, depth)?;
            match format {
                Format::Csv | Format::Text => Ok(reports_csv(&reports)),
                Format::Json => Ok(json(&reports)),
                f => Err(unsupported(f, "search-init")),
            }
        }
        Command::Decompose { seed, format } => {
            let c = init_space::decompose(&seed);
            match format {
                Format::Text => Ok(format!("x={} y={} z={}\n", c.x, c.y, c.z)),
                Format::Json => Ok(json(&c)),
                f => Err(unsupported(f, "decompose")),
            }
        }
        Command::Coeffs {
            path,
            depth_cap,
            format,
        } => {
            if path.len() > depth_cap {
                return Err(Failure::Usage(format!(
                    "path length {} exceeds the cap {depth_cap} (raise it with --depth-cap)",
                    path.len()
                )));
            }
            let c = init_space::shadow_coefficients(&path)?;
            match format {
                Format::Text => Ok(format!("u={} v={} t={}\n", c.u, c.v, c.t)),
                Format::Json => Ok(json(&c)),
                f => Err(unsupported(f, "coeffs")),
            }
        }
        Command::Hpz { triple, format } => {
            let [a, b, c] = &triple.0;
            let r = markov::hpz_residual(a, b, c);
            match format {
                Format::Text => Ok(format!("{r}\n")),
                Format::Json => Ok(json(&r)),
                f => Err(unsupported(f, "hpz")),
            }
        }
    }
}

fn reports_csv(reports: &[PositivityReport]) -> String {
    let mut s = String::from("alpha1,beta1,gamma1,depth,verdict,path,a,alpha,zero\n");
    for r in reports {
        let seed = &r.seed;
        let _ = match &r.verdict {
            Verdict::AllPositive => writeln!(
                s,
                "{},{},{},{},all_positive,,,,",
                seed.alpha1, seed.beta1, seed.gamma1, r.depth
            ),
            Verdict::Violation { path, value, zero } => writeln!(
                s,
                "{},{},{},{},violation,{},{},{},{}",
                seed.alpha1, seed.beta1, seed.gamma1, r.depth, path, value.real, value.shadow, zero
            ),
        };
    }
    s
}

#[derive(serde::Serialize)]
struct VerifySummary {
    seed: InitialTriple,
    depth: usize,
    nodes: usize,
    residual_zero: usize,
    involution: usize,
    form_agreement: usize,
    ok: bool,
}

fn verify(seed: &InitialTriple, depth: usize, format: Format) -> Result<String, Failure> {
    let x = seed.deformation_coefficient();
    let nodes = tree::subtree(seed, depth)?;
    let mut summary = VerifySummary {
        seed: seed.clone(),
        depth,
        nodes: nodes.len(),
        residual_zero: 0,
        involution: 0,
        form_agreement: 0,
        ok: false,
    };
    for node in &nodes {
        let t = node.state.as_triple();
        if markov::residual(&t, &x).is_zero() {
            summary.residual_zero += 1;
        }
        let mut involutive = true;
        let mut agrees = true;
        for s in Slot::ALL {
            let once = markov::mutate(&t, s)?;
            involutive &= markov::mutate(&once, s)? == t;
            agrees &= once == markov::mutate_linear(&t, s, &x);
        }
        summary.involution += usize::from(involutive);
        summary.form_agreement += usize::from(agrees);
    }
    summary.ok = [
        summary.residual_zero,
        summary.involution,
        summary.form_agreement,
    ]
    .iter()
    .all(|&c| c == summary.nodes);
    let text = match format {
        Format::Text => format!(
            "seed: {}\ndepth: {}\nnodes: {}\nresidual zero: {}\ninvolution: {}\nform agreement: {}\n{}\n",
            summary.seed,
            summary.depth,
            summary.nodes,
            summary.residual_zero,
            summary.involution,
            summary.form_agreement,
            if summary.ok { "ok" } else { "FAILED" }
        ),
        Format::Json => json(&summary),
        f => return Err(unsupported(f, "verify")),
    };
    if summary.ok {
        Ok(text)
    } else {
        Err(Failure::Domain(format!("verification failed\n{text}")))
    }
}
