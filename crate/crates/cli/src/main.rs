use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lamina_core::address::{check_corollary_i, is_admissible, DEFAULT_ADMISSIBLE_BOUND};
use lamina_core::kneading::{address_from_kneading, kneading_of_angle};
use lamina_core::principles::{check_correspondence, check_theorem_i, scan_translation};
use lamina_core::render::{
    leaf_lamination_chords, parameter_lamination_chords, render_svg, tree_chords, RenderSpec,
    RenderWhat,
};
use lamina_core::report;
use lamina_core::vistree::{visibility_tree_of, VisNode};
use lamina_core::{
    context_of, Angle, Chord, Error, InternalAddress, KneadingSequence, LaminationStore, Leaf,
    SublimbDesc,
};

mod cache;

/// Exact combinatorics of the Mandelbrot set via laminations.
#[derive(Parser)]
#[command(name = "lamina", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the periodic parameter leaves up to a period.
    Bstar {
        #[arg(long)]
        max_period: u32,
        /// Cache file to read or write.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Kneading sequence of an angle.
    Knead { angle: String },
    /// Internal address of an angle or of a kneading sequence.
    Address {
        angle: Option<String>,
        #[arg(long, conflicts_with = "angle")]
        kneading: Option<String>,
    },
    /// Search for a periodic angle realizing an internal address.
    Admissible {
        address: String,
        #[arg(long, default_value_t = DEFAULT_ADMISSIBLE_BOUND)]
        bound: u32,
    },
    /// Visibility tree of a sublimb.
    Vistree {
        leaf: String,
        #[arg(long)]
        sublimb: String,
        #[arg(long)]
        json: bool,
    },
    #[command(subcommand)]
    Check(Check),
    /// Draw a lamination as SVG.
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum Check {
    /// Leaves whose sublimb trees are not translates of each other.
    Translation {
        #[arg(long)]
        max_period: u32,
        #[arg(long)]
        max_q: u32,
    },
    /// Visible and semi-visible dynamic pairs against visible leaves.
    Correspondence {
        leaf: String,
        #[arg(long)]
        sublimb: String,
    },
    /// Every tree with denominator at least 3 is a translate of the 1/3 or 2/3 tree.
    #[command(name = "theorem-I")]
    TheoremI {
        leaf: String,
        #[arg(long)]
        max_q: u32,
    },
    /// Admissibility of extensions `prefix -> jm` and `prefix -> jm + r`.
    #[command(name = "corollary-I")]
    CorollaryI {
        prefix: String,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 3)]
        max_j: u32,
        #[arg(long, default_value_t = DEFAULT_ADMISSIBLE_BOUND)]
        bound: u32,
    },
}

#[derive(Args)]
struct RenderArgs {
    /// `lamination`, `bstar` or `vistree`.
    what: String,
    /// Leaf for `lamination` and `vistree`.
    leaf: Option<String>,
    #[arg(long, default_value_t = 6)]
    depth: u32,
    #[arg(long)]
    max_period: Option<u32>,
    #[arg(long)]
    sublimb: Option<String>,
    #[arg(long = "highlight")]
    highlight: Vec<String>,
    #[arg(long, default_value_t = 800)]
    size: u32,
    #[arg(long)]
    out: PathBuf,
}

/// Outcome of a command: whether the checked property held.
enum Outcome {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn outcome(holds: bool) -> Outcome {
    if holds {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

fn print_report<T: Serialize>(kind: &str, holds: bool, r: T) -> Outcome {
    // A closed pipe (e.g. `| head`) is not worth a panic.
    let _ = writeln!(std::io::stdout(), "{}", report::to_json(kind, holds, r));
    outcome(holds)
}

fn parse_sublimb(s: &str) -> Result<(u32, u32)> {
    let (p, q) = s
        .split_once('/')
        .with_context(|| format!("sublimb {s:?} is not p/q"))?;
    Ok((p.trim().parse()?, q.trim().parse()?))
}

/// A leaf given as `a/b-c/d`, or by one end whose partner is looked up in
/// the parameter lamination.
fn parse_leaf(s: &str) -> Result<Leaf> {
    if s.contains('-') {
        let c: Chord = s.parse()?;
        return Ok(Leaf::checked(c)?);
    }
    let x: Angle = s.parse()?;
    let n = x
        .period()
        .ok_or_else(|| Error::NotPeriodic(x.to_string()))?;
    let store = cache::store(n, None)?;
    let y = store.partner(&x)?;
    Ok(Leaf::checked(Chord::new(x, y)?)?)
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Bstar {
            max_period,
            cache: path,
            json,
        } => {
            if max_period < 2 {
                bail!("--max-period must be at least 2");
            }
            let store = cache::store(max_period, path)?;
            let leaves: Vec<&Leaf> = (2..=max_period).flat_map(|n| store.leaves(n)).collect();
            if json {
                Ok(print_report("bstar", true, leaves))
            } else {
                for l in leaves {
                    println!("{} {}", l.period, l.chord);
                }
                Ok(Outcome::Holds)
            }
        }
        Command::Knead { angle } => {
            let x: Angle = angle.parse()?;
            println!("{}", kneading_of_angle(&x));
            Ok(Outcome::Holds)
        }
        Command::Address { angle, kneading } => {
            let k = match (angle, kneading) {
                (Some(a), None) => kneading_of_angle(&a.parse()?),
                (None, Some(w)) => w.parse::<KneadingSequence>()?,
                _ => bail!("give an angle or --kneading"),
            };
            println!("{}", address_from_kneading(&k)?);
            Ok(Outcome::Holds)
        }
        Command::Admissible { address, bound } => {
            let a: InternalAddress = address.parse()?;
            match is_admissible(&a, bound)? {
                Some(w) => {
                    println!("ADMISSIBLE {w}");
                    Ok(Outcome::Holds)
                }
                None => {
                    println!("INADMISSIBLE");
                    Ok(Outcome::Fails)
                }
            }
        }
        Command::Vistree {
            leaf,
            sublimb,
            json,
        } => {
            let desc = sublimb_desc(&leaf, &sublimb)?;
            let tree = visibility_tree_of(&desc)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&tree)?);
            } else {
                println!("{}", tree.canonical());
                print_node(&tree.root, 0);
            }
            Ok(Outcome::Holds)
        }
        Command::Check(c) => run_check(c),
        Command::Render(args) => run_render(args),
    }
}

fn sublimb_desc(leaf: &str, sublimb: &str) -> Result<SublimbDesc> {
    let s = parse_leaf(leaf)?;
    let (p, q) = parse_sublimb(sublimb)?;
    Ok(SublimbDesc::new(&context_of(&s)?, p, q)?)
}

fn print_node(n: &VisNode, depth: usize) {
    println!(
        "{:indent$}{} {}",
        "",
        n.period,
        n.leaf.chord,
        indent = 2 * depth
    );
    for c in &n.children {
        print_node(c, depth + 1);
    }
}

#[derive(Serialize)]
struct TranslationReport<'a> {
    max_period: u32,
    max_q: u32,
    failures: &'a [lamina_core::principles::TranslationFailure],
}

fn run_check(c: Check) -> Result<Outcome> {
    match c {
        Check::Translation { max_period, max_q } => {
            if max_period < 2 || max_q < 2 {
                bail!("--max-period and --max-q must be at least 2");
            }
            let store = cache::store(max_period, None)?;
            let failures = scan_translation(&store, max_period, max_q)?;
            let r = TranslationReport {
                max_period,
                max_q,
                failures: &failures,
            };
            Ok(print_report("translation", failures.is_empty(), r))
        }
        Check::Correspondence { leaf, sublimb } => {
            let r = check_correspondence(&sublimb_desc(&leaf, &sublimb)?)?;
            let holds = r.partial_holds() && r.surjective() && r.semi_visible_holds();
            Ok(print_report("correspondence", holds, r))
        }
        Check::TheoremI { leaf, max_q } => {
            let s = parse_leaf(&leaf)?;
            let r = check_theorem_i(&context_of(&s)?, max_q)?;
            Ok(print_report("theorem-I", r.holds(), r))
        }
        Check::CorollaryI {
            prefix,
            r,
            max_j,
            bound,
        } => {
            let a: InternalAddress = prefix.parse()?;
            let rep = check_corollary_i(&a, r, 1..=max_j, bound)?;
            Ok(print_report("corollary-I", rep.corrected_holds(), rep))
        }
    }
}

fn run_render(args: RenderArgs) -> Result<Outcome> {
    let what = match args.what.as_str() {
        "lamination" => RenderWhat::LeafLamination,
        "bstar" => RenderWhat::ParameterLamination,
        "vistree" => RenderWhat::VisibilityTree,
        other => bail!("unknown render target {other:?}"),
    };
    let depth = match what {
        RenderWhat::ParameterLamination => args
            .max_period
            .context("--max-period is required for bstar")?,
        _ => args.depth,
    };
    let highlight = args
        .highlight
        .iter()
        .map(|h| h.parse::<Chord>())
        .collect::<Result<Vec<_>, _>>()?;
    let spec = RenderSpec {
        what: what.clone(),
        depth,
        highlight,
        size_px: args.size,
    };
    spec.validate()?;
    let leaf = || args.leaf.as_deref().context("a leaf is required");
    let chords = match what {
        RenderWhat::LeafLamination => {
            let s = parse_leaf(leaf()?)?;
            leaf_lamination_chords(&context_of(&s)?, depth)?
        }
        RenderWhat::ParameterLamination => {
            let store: LaminationStore = cache::store(depth.max(2), None)?;
            parameter_lamination_chords(&store, depth)?
        }
        RenderWhat::VisibilityTree => {
            let sub = args
                .sublimb
                .as_deref()
                .context("--sublimb is required for vistree")?;
            tree_chords(&visibility_tree_of(&sublimb_desc(leaf()?, sub)?)?)
        }
    };
    std::fs::write(&args.out, render_svg(&spec, &chords))
        .with_context(|| format!("writing {}", args.out.display()))?;
    eprintln!("wrote {} chords to {}", chords.len(), args.out.display());
    Ok(Outcome::Holds)
}
