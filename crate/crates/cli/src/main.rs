use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_traits::{One, Zero};
use serde::Serialize;

use qcover_core::catalog::{CatalogId, CatalogItem, WindowQuandle, CATALOG_TEMPLATES};
use qcover_core::derham::{Calculus, OneForm};
use qcover_core::format::{cover_summary, parse_quandle_v1, skew_dot, CoverStatus, Report};
use qcover_core::quandle::{element_name, IPQuandle};

const DEFAULT_MAX_COSETS: usize = 1_000_000;

macro_rules! say {
    ($out:expr, $($t:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($out, $($t)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "qcover",
    version,
    about = "IP quandles, covering groups and de Rham H^1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the IP quandle axioms.
    Verify {
        /// A quandle-v1 file or `catalog:<id>`.
        source: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate G_C and analyze the covering map.
    Cover {
        source: String,
        /// Coset cap; overrides QCOVER_MAX_COSETS.
        #[arg(long)]
        max_cosets: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Skew graph, skewness and local skewness.
    Skew {
        source: String,
        /// Write the skew graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// First de Rham cohomology of the calculus of a catalog group and class.
    H1 {
        source: String,
        /// Work over the prime field of this odd characteristic.
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// List catalog identifiers.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

enum Outcome {
    Success,
    MathFailure,
}

enum Source {
    Quandle(IPQuandle),
    Window(WindowQuandle),
}

fn load(source: &str) -> Result<Source> {
    if let Some(id) = source.strip_prefix("catalog:") {
        let id: CatalogId = id.parse()?;
        return Ok(match id.build()? {
            CatalogItem::Quandle(q) => Source::Quandle(q),
            CatalogItem::Window(w) => Source::Window(w),
        });
    }
    let text = std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let q = parse_quandle_v1(&text).with_context(|| format!("parsing {source}"))?;
    Ok(Source::Quandle(q))
}

fn load_finite(source: &str, command: &str) -> Result<IPQuandle> {
    match load(source)? {
        Source::Quandle(q) => Ok(q),
        Source::Window(_) => {
            bail!("`{command}` needs a finite quandle; {source} is a partial window")
        }
    }
}

fn print_json<T: Serialize>(out: &mut String, v: &T) -> Result<()> {
    say!(out, "{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn max_cosets(flag: Option<usize>) -> Result<usize> {
    if let Some(k) = flag {
        return Ok(k);
    }
    match std::env::var("QCOVER_MAX_COSETS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("QCOVER_MAX_COSETS=`{v}` is not a positive integer")),
        Err(_) => Ok(DEFAULT_MAX_COSETS),
    }
}

fn verify(source: &str, json: bool, out: &mut String) -> Result<Outcome> {
    let mut report = Report::new(source);
    let ok = match load(source)? {
        Source::Quandle(q) => {
            let axioms = q.verify_ip();
            let ok = axioms.all_pass();
            if !json {
                say!(out, "{source}: {} elements", q.len());
                if let Some(w) = &axioms.bijective.counterexample {
                    say!(out, "op row {} is not a permutation", w[0]);
                }
                let rack = axioms.rack();
                let quandle = axioms.quandle();
                let ip = axioms.ip();
                for (label, check) in [
                    ("rack", &rack),
                    ("quandle", &quandle),
                    ("ip", &ip),
                    ("derived fixed point", &axioms.derived_fixed_point),
                ] {
                    match &check.counterexample {
                        Some(w) => say!(out, "{label}: FAIL at {w:?}"),
                        None => say!(out, "{label}: pass"),
                    }
                }
            }
            report.axioms = Some((&axioms).into());
            ok
        }
        Source::Window(w) => {
            let failure = w.check_partial_axioms();
            if !json {
                say!(out, "{source}: {} elements, partial operation", w.len());
                match failure {
                    Some(t) => say!(out, "axioms: FAIL at {t:?}"),
                    None => say!(out, "axioms: pass wherever defined"),
                }
            }
            let holds = failure.is_none();
            let witness = failure.map(|(a, b, c)| vec![a, b, c]);
            report.axioms = Some(qcover_core::format::AxiomsJson {
                rack: holds,
                rack_counterexample: witness.clone(),
                quandle: holds,
                quandle_counterexample: witness.clone(),
                ip: holds,
                ip_counterexample: witness.clone(),
                derived_fixed_point: holds,
                derived_fixed_point_counterexample: witness,
            });
            holds
        }
    };
    if json {
        print_json(out, &report)?;
    }
    Ok(if ok {
        Outcome::Success
    } else {
        Outcome::MathFailure
    })
}

fn cover(source: &str, flag: Option<usize>, json: bool, out: &mut String) -> Result<Outcome> {
    let q = load_finite(source, "cover")?;
    let cap = max_cosets(flag)?;
    let (cover, abelian) = cover_summary(&q, cap);
    let certified_infinite = abelian.is_infinite();
    let outcome = match cover.status {
        CoverStatus::Exceeded if !certified_infinite => Outcome::MathFailure,
        _ => Outcome::Success,
    };
    if json {
        let mut report = Report::new(source);
        report.cover = Some(cover);
        report.abelianization = Some(abelian);
        print_json(out, &report)?;
        return Ok(outcome);
    }
    let opt = |v: Option<usize>| v.map_or("n/a".to_string(), |x| x.to_string());
    let optb = |v: Option<bool>| v.map_or("n/a".to_string(), |x| x.to_string());
    say!(out, "{source}: |C| = {}", q.len());
    match cover.status {
        CoverStatus::Complete => say!(out, "status: complete"),
        CoverStatus::Exceeded => say!(out, "status: exceeded {cap} cosets"),
    }
    say!(out, "order_gc: {}", opt(cover.order_gc));
    say!(out, "order_g: {}", opt(cover.order_g));
    say!(out, "kernel_order: {}", opt(cover.kernel_order));
    say!(out, "kernel_central: {}", optb(cover.kernel_central));
    say!(out, "embeddable: {}", optb(cover.embeddable));
    say!(out, "is_covering: {}", optb(cover.is_covering));
    let torsion: Vec<String> = abelian.torsion.iter().map(|d| d.to_string()).collect();
    say!(
        out,
        "abelianization: free_rank {}, torsion [{}]",
        abelian.free_rank,
        torsion.join(", ")
    );
    if cover.status == CoverStatus::Exceeded {
        if certified_infinite {
            say!(
                out,
                "G_C is infinite: its abelianization has positive free rank"
            );
        } else {
            say!(out, "no certificate of infinitude; raise --max-cosets");
        }
    }
    Ok(outcome)
}

fn skew(source: &str, dot: Option<PathBuf>, json: bool, out: &mut String) -> Result<Outcome> {
    let (summary, labels, edges) = match load(source)? {
        Source::Quandle(q) => {
            let s = q.skew_analysis()?;
            let labels = (0..q.len()).map(|i| q.name(i)).collect::<Vec<_>>();
            ((&s).into(), labels, s.graph.edges)
        }
        Source::Window(w) => {
            let m = w.len();
            let edges = w.edges().to_vec();
            let labels = (0..m).map(|i| w.name(i)).collect::<Vec<_>>();
            let summary = qcover_core::format::SkewJson {
                is_skew: edges.len() == m * (m - 1) / 2,
                is_locally_skew: w.is_connected(),
                components: w.components(),
                edges: edges.len(),
            };
            (summary, labels, edges)
        }
    };
    if let Some(path) = dot {
        std::fs::write(&path, skew_dot(&labels, &edges))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if json {
        let mut report = Report::new(source);
        report.skew = Some(summary);
        print_json(out, &report)?;
    } else {
        say!(out, "{source}: {} elements", labels.len());
        say!(out, "is_skew: {}", summary.is_skew);
        say!(out, "is_locally_skew: {}", summary.is_locally_skew);
        say!(out, "components: {}", summary.components);
        say!(out, "edges: {}", summary.edges);
    }
    Ok(Outcome::Success)
}

fn render_form(c: &Calculus, form: &OneForm) -> String {
    let n = c.order();
    let group_names: Vec<String> = c.group().elements().iter().map(element_name).collect();
    let mut terms = Vec::new();
    for (a, name) in c.names().iter().enumerate() {
        let row: Vec<_> = (0..n).map(|x| form.get(a, x)).collect();
        if row.iter().all(|v| v == &row[0]) {
            if !row[0].is_zero() {
                terms.push(coefficient(row[0], &format!("w[{name}]")));
            }
            continue;
        }
        for (x, v) in row.iter().enumerate() {
            if !v.is_zero() {
                terms.push(coefficient(v, &format!("d[{}] w[{name}]", group_names[x])));
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn coefficient(v: &num_rational::BigRational, term: &str) -> String {
    if v.is_one() {
        term.to_string()
    } else {
        format!("({v}) {term}")
    }
}

fn h1(source: &str, modulus: Option<u64>, json: bool, out: &mut String) -> Result<Outcome> {
    if modulus == Some(2) {
        bail!("--mod 2 is not allowed: the cohomology computation assumes the characteristic is not 2");
    }
    let q = load_finite(source, "h1")?;
    let calculus = Calculus::new(&q)
        .map_err(|e| anyhow!("{source}: {e}; h1 needs a catalog group and class"))?;
    let (dims, basis) = match modulus {
        Some(p) => (calculus.h1_mod_p(p)?, None),
        None => {
            let r = calculus.h1();
            (r.dims, Some(r.basis))
        }
    };
    if json {
        let mut report = Report::new(source);
        report.h1 = Some(dims);
        print_json(out, &report)?;
        return Ok(Outcome::Success);
    }
    let field = modulus.map_or("Q".to_string(), |p| format!("F_{p}"));
    say!(
        out,
        "{source}: |G| = {}, |C| = {}, over {field}",
        calculus.order(),
        calculus.size()
    );
    say!(out, "dim_closed: {}", dims.dim_closed);
    say!(out, "dim_exact: {}", dims.dim_exact);
    say!(out, "dim_h1: {}", dims.dim_h1);
    say!(out, "theta_independent: {}", dims.theta_independent);
    for (i, form) in basis.iter().flatten().enumerate() {
        say!(out, "class {i}: {}", render_form(&calculus, form));
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct CatalogEntry {
    id: &'static str,
    description: &'static str,
}

fn catalog(json: bool, out: &mut String) -> Result<Outcome> {
    if json {
        let entries: Vec<CatalogEntry> = CATALOG_TEMPLATES
            .iter()
            .map(|&(id, description)| CatalogEntry { id, description })
            .collect();
        print_json(out, &serde_json::json!({ "catalog": entries }))?;
    } else {
        for (id, description) in CATALOG_TEMPLATES {
            say!(out, "{id:<32} {description}");
        }
    }
    Ok(Outcome::Success)
}

fn run(cli: Cli, out: &mut String) -> Result<Outcome> {
    match cli.command {
        Command::Verify { source, json } => verify(&source, json, out),
        Command::Cover {
            source,
            max_cosets,
            json,
        } => cover(&source, max_cosets, json, out),
        Command::Skew { source, dot, json } => skew(&source, dot, json, out),
        Command::H1 {
            source,
            modulus,
            json,
        } => h1(&source, modulus, json, out),
        Command::Catalog { json } => catalog(json, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
    {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::MathFailure) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
