//! Command-line driver and file formats for `whitney-core`.

pub mod json;

use std::io::{Read, Write};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use whitney_core::group::{group_table, reduce_to_simple, LabelFilter};
use whitney_core::lie::rational_rank_bound;
use whitney_core::planner::{certificate_failure, certify_raise_order};
use whitney_core::sum::TreeSum;
use whitney_core::tower::{bch_tower, glue, TowerModel};
use whitney_core::tree::{canonicalize, canonicalize_rooted, parse_tree, ParsedTree, SignedTree};
use whitney_core::{Bounds, Error};

/// Exit status for a nonvanishing obstruction.
pub const EXIT_OBSTRUCTED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "whitney", version, about = "Tree groups and split Whitney tower models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the main output to a file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,
    /// Largest order for exhaustive computations.
    #[arg(long, global = true, value_name = "N")]
    pub max_order: Option<usize>,
    /// Largest label count for exhaustive computations.
    #[arg(long, global = true, value_name = "M")]
    pub max_labels: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form of a tree (argument or stdin).
    Canon {
        #[arg(allow_hyphen_values = true)]
        tree: Option<String>,
        #[arg(long, value_name = "M")]
        labels: Option<u32>,
    },
    /// Rewrite a tree as a combination of simple trees.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        tree: Option<String>,
        #[arg(long, value_name = "M")]
        labels: Option<u32>,
    },
    /// Structure of the tree group of an order over a number of labels.
    Groups {
        #[arg(long, value_name = "N")]
        order: usize,
        #[arg(long, value_name = "M")]
        labels: u32,
        /// Restrict to trees with distinct labels.
        #[arg(long)]
        nonrepeating: bool,
    },
    /// Intersection invariant of a tower file.
    Tau { tower: std::path::PathBuf },
    /// Certificate raising the order of a tower file.
    Certify { tower: std::path::PathBuf },
    /// Replay a certificate against a tower file.
    Verify { tower: std::path::PathBuf, certificate: std::path::PathBuf },
    /// Union of the first tower with the reverse of the second.
    Glue { a: std::path::PathBuf, b: std::path::PathBuf },
    /// Tower realizing signed trees (arguments, stdin lines, or random with
    /// --seed).
    Bch {
        #[arg(allow_hyphen_values = true)]
        trees: Vec<String>,
        #[arg(long, value_name = "N")]
        order: usize,
        #[arg(long, value_name = "M")]
        labels: u32,
        /// Generate a random zero-invariant doubled tower instead.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
    },
    /// Rank of the Lie image of all trees of an order.
    Rank {
        #[arg(long, value_name = "N")]
        order: usize,
        #[arg(long, value_name = "M")]
        labels: u32,
    },
}

/// Output of a command: the result for stdout or `--out`, notes always
/// for stdout, and the exit status.
pub struct Output {
    pub main: String,
    pub notes: String,
    pub status: i32,
}

impl Output {
    fn ok(main: String) -> Output {
        Output { main, notes: String::new(), status: 0 }
    }
}

fn bounds(g: &Global) -> Bounds {
    let d = Bounds::default();
    Bounds { max_order: g.max_order.unwrap_or(d.max_order), max_labels: g.max_labels.unwrap_or(d.max_labels), ..d }
}

fn read_text(arg: &Option<String>) -> Result<String> {
    match arg {
        Some(t) => Ok(t.clone()),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s.trim().to_string())
        }
    }
}

fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn sum_json(s: &TreeSum) -> serde_json::Value {
    serde_json::Value::Array(s.terms().map(|(t, c)| json!({"coefficient": c, "tree": t.to_string()})).collect())
}

fn canon(text: &str, labels: u32, g: &Global) -> Result<Output> {
    let parsed = parse_tree(text, labels, 26)?;
    let sign = parsed.sign_or_plus();
    let (tree, sign, two_torsion) = match &parsed.tree {
        ParsedTree::Rooted(t) => {
            let (c, s) = canonicalize_rooted(t);
            (c.to_string(), sign * s, false)
        }
        ParsedTree::Inner { .. } => {
            let (c, s) = canonicalize(&parsed.signed()?);
            let torsion = c.two_torsion();
            (c.to_string(), s, torsion)
        }
    };
    Ok(Output::ok(if g.json {
        pretty(json!({"sign": sign.value(), "tree": tree, "two_torsion": two_torsion}))
    } else if two_torsion {
        line(format!("{tree} (2-torsion)"))
    } else {
        line(format!("{sign}{tree}"))
    }))
}

fn reduce(text: &str, labels: u32, g: &Global) -> Result<Output> {
    let parsed = parse_tree(text, labels, 0)?;
    let (c, s) = canonicalize(&parsed.signed()?);
    let r = reduce_to_simple(&c, labels)?.scale(s.value())?;
    Ok(Output::ok(if g.json { pretty(sum_json(&r)) } else { line(&r) }))
}

fn tau(model: &TowerModel, g: &Global) -> Result<Output> {
    let t = model.tau();
    let zero = if t.is_trivially_decorated() { Some(model.tau_is_zero(&bounds(g))?) } else { None };
    Ok(Output::ok(if g.json {
        pretty(json!({"order": model.declared_order(), "tau": t.to_string(), "terms": sum_json(&t), "is_zero": zero}))
    } else {
        let mut s = line(&t);
        if let Some(z) = zero {
            s += &line(format!("vanishes: {z}"));
        }
        s
    }))
}

fn certify(model: &TowerModel, g: &Global) -> Result<Output> {
    match certify_raise_order(model, &bounds(g)) {
        Ok(cert) => Ok(Output::ok(json::write_certificate(&cert))),
        Err(Error::ObstructionNonzero(nf)) => Ok(Output {
            main: String::new(),
            notes: if g.json {
                pretty(json!({"obstruction": nf.to_string(), "terms": sum_json(&nf)}))
            } else {
                line(format!("obstruction: {nf}"))
            },
            status: EXIT_OBSTRUCTED,
        }),
        Err(e) => Err(e.into()),
    }
}

fn verify(model: &TowerModel, cert_text: &str, g: &Global) -> Result<Output> {
    let cert = json::read_certificate(cert_text, model)?;
    let failure = certificate_failure(model, &cert, &bounds(g));
    let main = if g.json {
        pretty(json!({"valid": failure.is_none(), "moves": cert.moves.len(), "failure": failure}))
    } else {
        match &failure {
            None => line(format!("valid: {} moves raise order {} to {}", cert.moves.len(), cert.order, cert.order + 1)),
            Some(f) => line(format!("invalid: {f}")),
        }
    };
    Ok(Output { main, notes: String::new(), status: i32::from(failure.is_some()) })
}

fn bch(trees: &[String], order: usize, labels: u32, seed: Option<u64>) -> Result<Output> {
    let sigma: Vec<SignedTree> = if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<SignedTree> = (0..3)
            .map(|_| {
                let t = whitney_core::random::random_tree(&mut rng, order, labels, 0);
                SignedTree::new(whitney_core::random::random_sign(&mut rng), t)
            })
            .collect();
        let w = bch_tower(&s, order, labels)?;
        return Ok(Output::ok(json::write_tower(&glue(&w, &w)?)));
    } else {
        let lines: Vec<String> = if trees.is_empty() {
            read_text(&None)?.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect()
        } else {
            trees.to_vec()
        };
        lines.iter().map(|l| Ok(parse_tree(l, labels, 26)?.signed()?)).collect::<Result<_>>()?
    };
    Ok(Output::ok(json::write_tower(&bch_tower(&sigma, order, labels)?)))
}

/// Runs one command.
pub fn execute(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let b = bounds(g);
    match &cli.command {
        Command::Canon { tree, labels } => canon(&read_text(tree)?, labels.unwrap_or(u32::MAX), g),
        Command::Reduce { tree, labels } => {
            let text = read_text(tree)?;
            let labels = match labels {
                Some(m) => *m,
                None => parse_tree(&text, u32::MAX, 0)?.signed()?.tree.labels().iter().map(|l| l.index()).max().unwrap_or(1),
            };
            reduce(&text, labels, g)
        }
        Command::Groups { order, labels, nonrepeating } => {
            let filter = if *nonrepeating { LabelFilter::Nonrepeating } else { LabelFilter::All };
            let t = group_table(*order, *labels, filter, &b)?;
            Ok(Output::ok(if g.json {
                pretty(json!({
                    "order": t.order,
                    "labels": t.labels,
                    "free_rank": t.structure.free_rank,
                    "torsion": t.structure.torsion,
                    "generator_count": t.generator_count,
                    "relator_count": t.relator_count,
                }))
            } else {
                line(&t.structure)
            }))
        }
        Command::Tau { tower } => tau(&json::read_tower(&read_file(tower)?)?, g),
        Command::Certify { tower } => certify(&json::read_tower(&read_file(tower)?)?, g),
        Command::Verify { tower, certificate } => {
            verify(&json::read_tower(&read_file(tower)?)?, &read_file(certificate)?, g)
        }
        Command::Glue { a, b } => {
            let a = json::read_tower(&read_file(a)?)?;
            let b = json::read_tower(&read_file(b)?)?;
            Ok(Output::ok(json::write_tower(&glue(&a, &b)?)))
        }
        Command::Bch { trees, order, labels, seed } => bch(trees, *order, *labels, *seed),
        Command::Rank { order, labels } => {
            let r = rational_rank_bound(*order, *labels, &b)?;
            Ok(Output::ok(if g.json {
                pretty(json!({"order": order, "labels": labels, "rank": r}))
            } else {
                line(r)
            }))
        }
    }
}

/// Parses arguments, runs the command and writes its output; returns the
/// exit status.
pub fn run(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.notes);
            if let Err(e) = emit(&cli.global, &out.main) {
                eprintln!("error: {e:#}");
                return 1;
            }
            out.status
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn emit(g: &Global, main: &str) -> Result<()> {
    if main.is_empty() {
        return Ok(());
    }
    match &g.out {
        Some(path) => std::fs::write(path, main).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(main.as_bytes())?;
            Ok(())
        }
    }
}
