use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use domaincheck_core::convergence::{
    ConvergenceVerdict, Ideal, IdealSpec, Net, NetConvergence, NetSpec,
};
use domaincheck_core::corpus::{self, Corpus};
use domaincheck_core::rudin::{extract_directed, FamilySpec};
use domaincheck_core::suites::{emit_report, run_suite, Format, Params, SUITES};
use domaincheck_core::topology::symbolic::OneTopology;
use domaincheck_core::topology::{
    derive_glim_topology, lawson_topology, lower_topology, scott_topology, FiniteTopology,
    DEFAULT_FAMILY_BOUND,
};
use domaincheck_core::{Approximation, Dcpo, ExampleOne, Exec, FiniteDomain, FinitePoset};

#[derive(Parser)]
#[command(
    name = "domaincheck",
    version,
    about = "Checks order-theoretic statements on finite posets and a symbolic counterexample"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite, or `all` of them.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Overridden by DOMAINCHECK_SEED when set.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Inspect the corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Continuity flags with witnesses.
    Classify {
        /// A poset JSON file, a corpus name, or `exampleone`.
        #[arg(long)]
        poset: String,
    },
    /// Open sets of a finite poset.
    Topology {
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// The way-below relation as a table.
    Waybelow {
        #[arg(long)]
        poset: String,
        /// Relate finite sets instead of points.
        #[arg(long)]
        sets: bool,
    },
    /// Decide one convergence statement; exit 1 when it fails.
    Converge {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = TopArg::Scott)]
        topology: TopArg,
        #[arg(long)]
        poset: String,
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Extract a directed set from a directed family.
    Rudin {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Scott,
    Lower,
    Lawson,
    Glim,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Is,
    Gis,
    Gi,
    Topo,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopArg {
    Scott,
    Lawson,
}

enum Backend {
    Finite(FiniteDomain),
    ExampleOne,
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(poset: &str) -> anyhow::Result<Backend> {
    if poset == "exampleone" {
        return Ok(Backend::ExampleOne);
    }
    let p = match corpus::named(poset) {
        Some(p) if !Path::new(poset).exists() => p,
        _ => FinitePoset::from_json(&read(Path::new(poset))?)?,
    };
    Ok(Backend::Finite(FiniteDomain::new(p)?))
}

fn finite(poset: &str) -> anyhow::Result<FiniteDomain> {
    match load(poset)? {
        Backend::Finite(d) => Ok(d),
        Backend::ExampleOne => bail!("this command needs a finite poset"),
    }
}

fn topology_json(d: &FiniteDomain, kind: &str, t: &FiniteTopology) -> Value {
    json!({ "kind": kind, "opens": t.opens().iter().map(|&u| d.ids_of(u)).collect::<Vec<_>>() })
}

// A closed pipe (`| head`) ends output quietly.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        std::process::exit(0);
    }
}

fn print(v: &Value) {
    out(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("values serialize")
    ));
}

fn verdict<D: NetConvergence>(
    d: &D,
    net: &Net<D::Elem>,
    x: D::Elem,
    ideal: &Ideal,
    mode: ModeArg,
    top: &D::Topology,
) -> anyhow::Result<ConvergenceVerdict> {
    Ok(match mode {
        ModeArg::Is => d.converges_is(net, x, ideal)?,
        ModeArg::Gis => d.converges_gis(net, x, ideal)?,
        ModeArg::Gi => d.is_gi_liminf(net, x, ideal)?,
        ModeArg::Topo => d.converges_topological(net, x, ideal, top)?,
    })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Verify {
            suite,
            max_size,
            seed,
            samples,
            format,
            sequential,
        } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                bail!(
                    "unknown suite `{suite}`; expected all or one of {}",
                    SUITES.join(", ")
                );
            }
            let seed = match std::env::var("DOMAINCHECK_SEED") {
                Ok(s) => s
                    .parse()
                    .with_context(|| format!("DOMAINCHECK_SEED={s} is not a number"))?,
                Err(_) => seed,
            };
            let exec = if sequential {
                Exec::Sequential
            } else {
                Exec::default()
            };
            let report = run_suite(
                &suite,
                Params {
                    max_size,
                    seed,
                    exec,
                    samples,
                },
            )?;
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            };
            out(&emit_report(&report, format));
            return Ok(report.exit_code() as u8);
        }
        Command::Corpus {
            action: CorpusAction::List { max_size },
        } => {
            let c = Corpus::standard(max_size)?;
            let lines: String = c
                .all()
                .map(|p| format!("{}\t{}\t{}\n", p.name(), p.len(), p.relation_size()))
                .collect();
            out(&lines);
        }
        Command::Classify { poset } => {
            let r = match load(&poset)? {
                Backend::Finite(d) => d.classify(),
                Backend::ExampleOne => ExampleOne.classify(),
            };
            print(&serde_json::to_value(r)?);
        }
        Command::Topology { poset, kind } => {
            let d = finite(&poset)?;
            let (name, t) = match kind {
                KindArg::Scott => ("scott", scott_topology(&d)?),
                KindArg::Lower => ("lower", lower_topology(&d)),
                KindArg::Lawson => ("lawson", lawson_topology(&d)?),
                KindArg::Glim => (
                    "glim",
                    derive_glim_topology(&d, DEFAULT_FAMILY_BOUND, Exec::default())?,
                ),
            };
            print(&topology_json(&d, name, &t));
        }
        Command::Waybelow { poset, sets } => {
            let d = finite(&poset)?;
            let pairs: Vec<Value> = if sets {
                let fins: Vec<_> = d.all_antichains().collect();
                fins.iter()
                    .flat_map(|g| fins.iter().map(move |h| (g, h)))
                    .filter(|(g, h)| d.set_way_below(g, h))
                    .map(|(g, h)| json!([d.render_fin(g), d.render_fin(h)]))
                    .collect()
            } else {
                (0..d.len())
                    .flat_map(|x| (0..d.len()).map(move |y| (x, y)))
                    .filter(|&(x, y)| d.point_way_below(x, y))
                    .map(|(x, y)| json!([d.element(x), d.element(y)]))
                    .collect()
            };
            print(&json!({ "elements": d.elements(), "way_below": pairs }));
        }
        Command::Converge {
            mode,
            topology,
            poset,
            net,
            ideal,
            point,
        } => {
            let spec = NetSpec::from_json(&read(&net)?)?;
            let ideal_spec: IdealSpec =
                serde_json::from_str(&read(&ideal)?).context("parsing the ideal")?;
            let v = match load(&poset)? {
                Backend::Finite(d) => {
                    let net = Net::from_spec(&d, &spec)?;
                    let ideal = Ideal::for_net(ideal_spec.kind, &net)?;
                    let x = d.parse_element(&point)?;
                    let t = match topology {
                        TopArg::Scott => scott_topology(&d)?,
                        TopArg::Lawson => lawson_topology(&d)?,
                    };
                    verdict(&d, &net, x, &ideal, mode, &t)?
                }
                Backend::ExampleOne => {
                    let one = ExampleOne;
                    let net = Net::from_spec(&one, &spec)?;
                    let ideal = Ideal::for_net(ideal_spec.kind, &net)?;
                    let x = one.parse_element(&point)?;
                    let t = match topology {
                        TopArg::Scott => OneTopology::Scott,
                        TopArg::Lawson => OneTopology::Lawson,
                    };
                    verdict(&one, &net, x, &ideal, mode, &t)?
                }
            };
            print(&serde_json::to_value(&v)?);
            return Ok(if v.holds { 0 } else { 1 });
        }
        Command::Rudin { poset, family } => {
            let d = finite(&poset)?;
            let fam = FamilySpec::from_json(&read(&family)?)?.resolve(&d)?;
            let w = extract_directed(&d, &fam)?;
            print(&serde_json::to_value(w.report(&d, &fam))?);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
