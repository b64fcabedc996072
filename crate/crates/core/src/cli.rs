//! The `rhythmic` command line.
//!
//! [`run`] takes the arguments and the two output streams explicitly so the
//! whole surface can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::analysis::{
    build_dfa, convert, flip_check, sample_flip_pairs, verify_arc_identity,
    verify_christoffel_generation, verify_conversion, verify_dfa_equivalence, verify_radix_order,
    verify_shift_invariance, verify_value_preservation, CheckReport, FlipOutcome,
};
use crate::error::{Error, Result};
use crate::labelling::Labelling;
use crate::langops::LabelledTree;
use crate::numeration::{evaluate, represent, DigitWord, RationalBase};
use crate::rhythm::{christoffel_rhythm, Rhythm};
use crate::treegen::{RhythmicTree, TreeMode};

#[derive(Debug, Parser)]
#[command(name = "rhythmic", version, about = "Rhythmic trees, their languages and rational base numeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of a digit word in base p/q
    Eval {
        #[arg(long)]
        base: RationalBase,
        #[arg(allow_hyphen_values = true)]
        word: DigitWord,
    },
    /// Representation of a natural number in base p/q
    Repr {
        #[arg(long)]
        base: RationalBase,
        n: BigUint,
    },
    /// Christoffel rhythm, path word and e-sequence of a coprime slope p/q
    Christoffel {
        slope: RationalBase,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check that a rhythm yields an infinite tree
    ValidateRhythm { rhythm: Rhythm },
    /// Print a labelling and check it against its rhythm
    Labelling {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The first nodes of a labelled tree, as arcs or a DOT graph
    Tree {
        #[command(flatten)]
        source: Source,
        /// Number of nodes to emit
        #[arg(long)]
        nodes: Option<u64>,
        /// Emit every node up to this depth
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The first branch words in breadth-first order with their values
    Enumerate {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// How often v can be appended to u inside the branch language
    ///
    /// Without words, samples random pairs instead.
    FlipCheck {
        #[command(flatten)]
        source: Source,
        #[arg(allow_hyphen_values = true, requires = "v")]
        u: Option<DigitWord>,
        #[arg(allow_hyphen_values = true)]
        v: Option<DigitWord>,
        #[arg(long, default_value_t = 64)]
        bound: u32,
        /// Number of sampled pairs
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Automaton of the naive-labelled language when q divides p
    Dfa {
        #[arg(long)]
        rhythm: Rhythm,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rewrite a special-labelled branch word over the canonical digits
    Convert {
        #[arg(long)]
        rhythm: Rhythm,
        #[arg(allow_hyphen_values = true)]
        word: DigitWord,
    },
    /// Run the verification drivers over a fixed corpus
    Selftest {
        /// Range of nodes checked by each driver
        #[arg(long, default_value_t = 1000)]
        count: u64,
    },
}

/// Where a labelled tree comes from: a rhythm with a labelling, or a base
/// with its Christoffel rhythm.
#[derive(Debug, Args)]
struct Source {
    #[arg(long, required_unless_present = "base", conflicts_with = "base")]
    rhythm: Option<Rhythm>,
    #[arg(long)]
    base: Option<RationalBase>,
    /// Defaults to naive for --rhythm and group for --base
    #[arg(long, value_enum)]
    labels: Option<Labels>,
    /// Comma-separated digits of a custom labelling
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Labels {
    Naive,
    Special,
    Group,
    Custom,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[default]
    Tree,
    Itree,
}

impl From<Mode> for TreeMode {
    fn from(mode: Mode) -> TreeMode {
        match mode {
            Mode::Tree => TreeMode::Tree,
            Mode::Itree => TreeMode::ITree,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

/// Failure of a command: a library error, or an exit status with a message.
enum Failure {
    Library(Error),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Library(e)
    }
}

fn unsupported(format: Format, verb: &str) -> Failure {
    Failure::Usage(format!("format {} is not available for {verb}", format.name()))
}

impl Source {
    fn rhythm(&self) -> Result<Rhythm> {
        match (&self.rhythm, &self.base) {
            (Some(r), _) => Ok(r.clone()),
            (None, Some(b)) => christoffel_rhythm(b.p(), b.q()),
            (None, None) => unreachable!("clap requires --rhythm or --base"),
        }
    }

    fn labels(&self) -> Labels {
        match (self.labels, &self.gamma, &self.base) {
            (Some(kind), _, _) => kind,
            (None, Some(_), _) => Labels::Custom,
            (None, None, Some(_)) => Labels::Group,
            (None, None, None) => Labels::Naive,
        }
    }

    fn labelled_tree(&self) -> std::result::Result<LabelledTree, Failure> {
        let r = self.rhythm()?;
        let labelling = match self.labels() {
            Labels::Naive => Labelling::naive(r.p()),
            Labels::Special => Labelling::special(&r),
            Labels::Group => Labelling::group(r.p(), r.q())?,
            Labels::Custom => {
                let text = self
                    .gamma
                    .as_deref()
                    .ok_or_else(|| Failure::Usage("--labels custom needs --gamma".into()))?;
                let gamma: Labelling = text.parse()?;
                Labelling::custom(&r, gamma.gamma().to_vec())?
            }
        };
        Ok(LabelledTree::new(RhythmicTree::new(r, self.mode.into())?, labelling)?)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status: 0 on success, 1 on a failed command or check, 2 on a
/// usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    let mut text = String::new();
    let status = match dispatch(cli.command, &mut text) {
        Ok(()) => 0,
        Err(Failure::Library(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Check(message)) => {
            let _ = writeln!(err, "{message}");
            1
        }
    };
    let _ = out.write_all(text.as_bytes());
    status
}

fn dispatch(command: Command, out: &mut String) -> std::result::Result<(), Failure> {
    match command {
        Command::Eval { base, word } => {
            writeln!(out, "{}", evaluate(&base, &word)).unwrap();
        }
        Command::Repr { base, n } => {
            writeln!(out, "{}", represent(&base, n)).unwrap();
        }
        Command::Christoffel { slope, format } => {
            let r = christoffel_rhythm(slope.p(), slope.q())?;
            let (path, e) = (r.path_word(), r.e_sequence());
            match format {
                Format::Text => {
                    writeln!(out, "rhythm {r}\npath {path}\ne {e}").unwrap();
                }
                Format::Json => {
                    let value = json!({
                        "rhythm": r.components(),
                        "path": path.to_string(),
                        "e": e.values(),
                    });
                    writeln!(out, "{value}").unwrap();
                }
                Format::Dot => return Err(unsupported(format, "christoffel")),
            }
        }
        Command::ValidateRhythm { rhythm } => {
            rhythm.check_validity()?;
            writeln!(out, "valid: growth {}", rhythm.growth()).unwrap();
        }
        Command::Labelling { source, format } => {
            let t = source.labelled_tree()?;
            let labelling = t.labelling();
            match format {
                Format::Text => writeln!(out, "{labelling}").unwrap(),
                Format::Json => {
                    let value = json!({
                        "kind": format!("{:?}", labelling.kind()).to_lowercase(),
                        "gamma": labelling.gamma(),
                    });
                    writeln!(out, "{value}").unwrap();
                }
                Format::Dot => return Err(unsupported(format, "labelling")),
            }
        }
        Command::Tree {
            source,
            nodes,
            depth,
            format,
        } => {
            let t = source.labelled_tree()?;
            let count = tree_size(&t, nodes, depth);
            match format {
                Format::Text => {
                    for (n, a, m) in tree_arcs(&t, count) {
                        writeln!(out, "{n} -{a}-> {m}").unwrap();
                    }
                }
                Format::Dot => out.push_str(&tree_dot(&t, count)),
                Format::Json => return Err(unsupported(format, "tree")),
            }
        }
        Command::Enumerate {
            source,
            count,
            format,
        } => {
            let entries = source.labelled_tree()?.enumerate(count);
            match format {
                Format::Text => {
                    for e in entries {
                        writeln!(out, "{}\t{}\t{}", e.node, e.word, e.value).unwrap();
                    }
                }
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string(&entries).expect("serializable")).unwrap();
                }
                Format::Dot => return Err(unsupported(format, "enumerate")),
            }
        }
        Command::FlipCheck {
            source,
            u,
            v,
            bound,
            count,
            seed,
        } => {
            let t = source.labelled_tree()?;
            let pairs = match (u, v) {
                (Some(u), Some(v)) => vec![(u, v)],
                _ => sample_flip_pairs(&t, count, 6, 4, seed),
            };
            for (u, v) in pairs {
                let report = flip_check(&t, &u, &v, bound)?;
                let outcome = match report.outcome {
                    FlipOutcome::MaxIteration(i) => format!("max-iteration {i}"),
                    FlipOutcome::BoundExceeded(b) => format!("bound-exceeded {b}"),
                };
                writeln!(out, "u={u} v={v} {outcome}").unwrap();
            }
        }
        Command::Dfa {
            rhythm,
            mode,
            format,
        } => {
            let dfa = build_dfa(&rhythm, mode.into())?;
            match format {
                Format::Text => {
                    writeln!(out, "states {}", dfa.state_count()).unwrap();
                    writeln!(out, "initial {}", dfa.state_name(dfa.initial())).unwrap();
                    for (from, a, to) in dfa.transitions() {
                        writeln!(out, "{} -{a}-> {}", dfa.state_name(from), dfa.state_name(to)).unwrap();
                    }
                }
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string(&dfa.export()).expect("serializable")).unwrap();
                }
                Format::Dot => out.push_str(&dfa.to_dot()),
            }
        }
        Command::Convert { rhythm, word } => {
            writeln!(out, "{}", convert(&rhythm, &word)?).unwrap();
        }
        Command::Selftest { count } => selftest(count, out)?,
    }
    Ok(())
}

/// Number of nodes to emit: `nodes`, or every node up to `depth`, whichever
/// is smaller; 20 nodes when neither is given.
fn tree_size(t: &LabelledTree, nodes: Option<u64>, depth: Option<u32>) -> u64 {
    let Some(depth) = depth else {
        return nodes.unwrap_or(20);
    };
    let cap = nodes.unwrap_or(u64::MAX);
    // breadth-first numbering keeps depths non-decreasing
    let mut depths = vec![0u32];
    while (depths.len() as u64) < cap {
        let m = depths.len() as u64;
        let parent = t.tree().parent(m).expect("positive nodes have a father");
        let d = depths[parent as usize] + 1;
        if d > depth {
            break;
        }
        depths.push(d);
    }
    depths.len() as u64
}

/// Arcs between the nodes `0..count`, the i-tree root loop included.
fn tree_arcs(t: &LabelledTree, count: u64) -> Vec<(u64, i64, u64)> {
    let mut arcs = Vec::new();
    if count > 0 && t.tree().mode() == TreeMode::ITree {
        arcs.push((0, t.label(0), 0));
    }
    for m in 1..count {
        let n = t.tree().parent(m).expect("positive nodes have a father");
        arcs.push((n, t.label(m), m));
    }
    arcs
}

fn tree_dot(t: &LabelledTree, count: u64) -> String {
    let mut out = String::from("digraph tree {\n");
    for n in 0..count {
        writeln!(out, "    {n};").unwrap();
    }
    for (n, a, m) in tree_arcs(t, count) {
        writeln!(out, "    {n} -> {m} [label=\"{a}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

fn selftest(count: u64, out: &mut String) -> std::result::Result<(), Failure> {
    let corpus: Vec<Rhythm> = [&[2, 2, 1][..], &[3, 0, 2], &[2, 2, 1, 2, 2, 1], &[2, 1, 3, 0, 0, 4], &[3, 1, 3, 3]]
        .iter()
        .map(|c| Rhythm::new(c.to_vec()))
        .collect::<Result<_>>()?;
    let mut results: Vec<(String, CheckReport)> = Vec::new();
    for (p, q) in [(3, 2), (5, 3), (7, 4), (7, 3), (10, 3)] {
        results.push((format!("christoffel generation {p}/{q}"), verify_christoffel_generation(p, q, count)?));
    }
    for r in &corpus {
        results.push((format!("value preservation ({r})"), verify_value_preservation(r, count)?));
        results.push((format!("arc identity ({r})"), verify_arc_identity(r, count)?));
        results.push((format!("shift invariance ({r})"), verify_shift_invariance(r, count)?));
        results.push((format!("conversion ({r})"), verify_conversion(r, count)?));
        let t = LabelledTree::special(r.clone(), TreeMode::Tree)?;
        results.push((format!("radix order ({r})"), verify_radix_order(&t, count as usize)));
    }
    let three_one = Rhythm::new(vec![3, 1])?;
    for mode in [TreeMode::Tree, TreeMode::ITree] {
        results.push((
            format!("automaton equivalence (3,1) {mode:?}"),
            verify_dfa_equivalence(&three_one, mode, 8)?,
        ));
    }
    let mut failed = 0;
    for (name, report) in &results {
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        failed += usize::from(!report.passed());
        writeln!(out, "{verdict} {name}: {report}").unwrap();
    }
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} of {} checks failed", results.len())));
    }
    Ok(())
}
