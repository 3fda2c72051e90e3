//! Command-line front end: `run` parses arguments, loads documents,
//! dispatches and renders a deterministic report.
//!
//! Exit codes: 0 on success, 1 on a domain error (typed message on the
//! error stream), 2 on a usage, parse or I/O error.

mod demo;
pub mod docs;
pub mod report;

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::basespace::{Presentation, TwoComplex};
use crate::cohomology::{h1_glr_enumerate, hom_to_additive, h1_constant, rank_one_class_count};
use crate::coverings::{
    etale_image_size, exact_sequence_report, parallel_transport, pullback, pushforward, pushforward_cocycle,
    Covering, EtalePathLevel,
};
use crate::descent::{
    etale_quotients, field_descent, level_of_definition, mod_p_pipeline, tower_make, Tower, Trivialization,
};
use crate::error::{Error, Result};
use crate::exactfield::{Embedding, FieldCtx, Value};
use crate::localsystem::{iso_test, CechCocycle, IsoResult, LocalSystem};
use crate::matrixgroup::DEFAULT_CAP;
use docs::{load_cover, load_local_system, load_space_arg, load_tower, read_doc, Doc};
pub use report::{Format, Report};

const DEFAULT_CLASS_CAP: u64 = 1_000_000;
const DEFAULT_ISO_TRIALS: usize = 256;

#[derive(Parser, Debug)]
#[command(name = "monodromy", version, about = "Exact computations with local systems on finite 2-complexes")]
struct Cli {
    /// Coefficient field: Q, F(p) or F(p, <poly in x>).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size cap for enumerations and group closures.
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// 2-complexes.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Local systems.
    #[command(subcommand)]
    Locsys(LocsysCmd),
    /// Finite coverings.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Descent to subfields, finite fields and tower levels.
    #[command(subcommand)]
    Descend(DescendCmd),
    /// First cohomology and classes of local systems.
    #[command(subcommand)]
    Cohom(CohomCmd),
    /// Worked examples.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Subcommand, Debug)]
enum SpaceCmd {
    /// Check a complex document (or built-in name).
    Validate { space: String },
    /// Print the presentation of the fundamental group.
    Present { space: String },
}

#[derive(Subcommand, Debug)]
enum LocsysCmd {
    /// Load and validate a local system document.
    Check { file: String },
    /// Whether every generator acts trivially.
    Trivial { file: String },
    /// Order of the (finite) monodromy group.
    Monodromy { file: String },
    /// Isomorphism test between two local systems.
    Iso {
        first: String,
        second: String,
        #[arg(long, default_value_t = DEFAULT_ISO_TRIALS)]
        trials: usize,
    },
    /// Global flat sections and the maximal trivial subsystem.
    Sections { file: String },
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    /// Build a covering and print the total complex with its projection.
    Build { cover: String },
    /// Connected components with their degrees.
    Decompose { cover: String },
    /// Pull a local system on the base back to the total complex.
    Pullback {
        cover: String,
        locsys: String,
        /// Total vertex to base the result at (default: over the basepoint, fiber 0).
        #[arg(long)]
        lift: Option<String>,
    },
    /// Push a local system (or edge labels) on the total complex down to the base.
    Pushforward { cover: String, locsys: String },
    /// Parallel transport along a deck element at a base vertex.
    Transport {
        cover: String,
        locsys: String,
        /// Group element, by label or index.
        #[arg(long)]
        element: String,
        /// Base vertex (default: the basepoint).
        #[arg(long)]
        vertex: Option<String>,
        /// Fiber index of the starting lift.
        #[arg(long, default_value_t = 0)]
        lift: usize,
    },
    /// Check the exact sequence for a Galois covering.
    Exactseq { cover: String, locsys: String },
}

#[derive(Args, Debug)]
struct TowerArgs {
    /// Tower document.
    #[arg(long)]
    tower: Option<String>,
    /// Primes of the tower, comma separated.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Largest index kept.
    #[arg(long)]
    depth: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum DescendCmd {
    /// Descend a trivialization over an extension to the cocycle's field.
    Field { cocycle: String, trivialization: String },
    /// Reduce a rational local system mod p and build its trivializing cover.
    Modp {
        locsys: String,
        #[arg(long)]
        prime: u64,
    },
    /// Coarsest tower level a bundle on a level comes from.
    TowerLevel {
        locsys: String,
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        level: u64,
    },
    /// Surviving finite cyclic quotients along a tower.
    Survival {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CohomCmd {
    /// H^1 with constant coefficients.
    H1 { space: String },
    /// Homomorphisms from the fundamental group to the additive group.
    Homga { space: String },
    /// Isomorphism classes of rank-r local systems over a finite field.
    Classes {
        space: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum DemoCmd {
    /// Dyadic and full solenoid towers.
    Solenoid,
    /// The Fibonacci matrix reduced mod 2 and its triple cover.
    Fibonacci,
    /// The torus and projective plane complexes.
    Torus,
}

/// Runs one invocation, writing the report to `out` and errors to `err`.
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 }
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.report.render(cli.format).as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Outcome {
    report: Report,
    code: i32,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, code: 0 }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Space(cmd) => space(cmd),
        Command::Locsys(cmd) => locsys(cli, cmd),
        Command::Cover(cmd) => cover(cmd),
        Command::Descend(cmd) => descend(cli, cmd),
        Command::Cohom(cmd) => cohom(cli, cmd),
        Command::Demo(cmd) => demo::run(*cmd).map(Outcome::from),
    }
}

fn field_or(cli: &Cli, default: FieldCtx) -> Result<FieldCtx> {
    cli.field.as_deref().map_or(Ok(default), FieldCtx::parse)
}

fn cap(cli: &Cli) -> usize {
    cli.cap.map_or(DEFAULT_CAP, |c| c as usize)
}

pub(crate) fn format_vector(ctx: &FieldCtx, v: &[Value]) -> String {
    let parts: Vec<String> = v.iter().map(|x| ctx.format_value(x)).collect();
    format!("({})", parts.join(", "))
}

fn space(cmd: &SpaceCmd) -> Result<Outcome> {
    match cmd {
        SpaceCmd::Validate { space } => {
            let x = load_space_for_validation(space)?;
            Ok(Report::new("complex validation")
                .line("valid")
                .field("vertices", x.num_vertices())
                .field("edges", x.num_edges())
                .field("faces", x.num_faces())
                .field("euler characteristic", x.euler_characteristic())
                .into())
        }
        SpaceCmd::Present { space } => {
            let x = load_space_arg(space)?;
            let p = Presentation::new(&x)?;
            let tree: Vec<&str> = p.tree_edges().iter().map(|&e| x.edge(e).id.as_str()).collect();
            Ok(Report::new("fundamental group presentation")
                .field("basepoint", x.vertex_name(x.basepoint()))
                .field("spanning tree", if tree.is_empty() { "none".to_string() } else { tree.join(", ") })
                .block(p.format(&x))
                .into())
        }
    }
}

/// Like `load_space_arg`, but reporting every problem of a broken document.
fn load_space_for_validation(arg: &str) -> Result<Arc<TwoComplex>> {
    if crate::basespace::builtin_names().contains(&arg) {
        return load_space_arg(arg);
    }
    let doc = read_doc(arg)?;
    let cdoc = docs::parse_complex_doc(&doc.json)?;
    Ok(Arc::new(docs::complex_from_doc(&cdoc)?))
}

fn load_locsys(path: &str) -> Result<LocalSystem> {
    load_local_system(&read_doc(path)?, None)
}

fn locsys(cli: &Cli, cmd: &LocsysCmd) -> Result<Outcome> {
    match cmd {
        LocsysCmd::Check { file } => {
            let e = load_locsys(file)?;
            Ok(Report::new("local system check").line("valid").block(e.describe()).into())
        }
        LocsysCmd::Trivial { file } => {
            let e = load_locsys(file)?;
            Ok(Report::new("triviality").field("trivial", e.is_trivial()).into())
        }
        LocsysCmd::Monodromy { file } => {
            let e = load_locsys(file)?;
            let g = e.monodromy_image(cap(cli))?;
            Ok(Report::new("monodromy group")
                .line(format!("monodromy group of order {}", g.order()))
                .field("order", g.order())
                .field("rank", e.rank())
                .field("field", e.ctx())
                .into())
        }
        LocsysCmd::Iso { first, second, trials } => {
            let a = load_locsys(first)?;
            let b = load_locsys(second)?;
            let r = Report::new("isomorphism test");
            Ok(match iso_test(&a, &b, *trials, cli.seed)? {
                IsoResult::Isomorphic(t) => r.field("result", "Isomorphic").field("witness", t).into(),
                IsoResult::ProvablyDistinct => r.field("result", "ProvablyDistinct").into(),
                IsoResult::Inconclusive => Outcome {
                    report: r.field("result", "Inconclusive").field("trials", trials).field("seed", cli.seed),
                    code: 1,
                },
            })
        }
        LocsysCmd::Sections { file } => {
            let e = load_locsys(file)?;
            let sections = e.global_sections();
            let sub = e.max_trivial_sub();
            let rows = sections
                .iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), format_vector(e.ctx(), v)])
                .collect();
            Ok(Report::new("global sections")
                .field("dimension", sections.len())
                .field("maximal trivial subsystem rank", sub.system.rank())
                .table(&["section", "vector"], rows)
                .into())
        }
    }
}

fn total_vertex(c: &Covering, name: &str) -> Result<usize> {
    c.total().vertex_id(name)
}

fn cover(cmd: &CoverCmd) -> Result<Outcome> {
    match cmd {
        CoverCmd::Build { cover } => {
            let c = load_cover(&read_doc(cover)?)?;
            let mut r = Report::new("covering construction")
                .field("degree", c.degree())
                .field("connected", c.is_connected())
                .field("components", c.total().components().len())
                .field("galois", c.is_galois());
            if let Ok(g) = c.galois() {
                r = r.field("deck group order", g.group.order());
            }
            Ok(r.block(serde_json::to_string_pretty(&c.to_json()).expect("json")).into())
        }
        CoverCmd::Decompose { cover } => {
            let c = load_cover(&read_doc(cover)?)?;
            let parts = c.decompose()?;
            let rows = parts
                .iter()
                .enumerate()
                .map(|(i, p)| vec![i.to_string(), p.degree().to_string(), p.is_galois().to_string()])
                .collect();
            let degrees: Vec<String> = parts.iter().map(|p| p.degree().to_string()).collect();
            Ok(Report::new("covering decomposition")
                .field("degree", c.degree())
                .field("components", parts.len())
                .field("degrees", format!("[{}]", degrees.join(", ")))
                .table(&["component", "degree", "galois"], rows)
                .into())
        }
        CoverCmd::Pullback { cover, locsys, lift } => {
            let c = load_cover(&read_doc(cover)?)?;
            let e = load_local_system(&read_doc(locsys)?, Some(c.base().clone()))?;
            let y = match lift {
                Some(name) => total_vertex(&c, name)?,
                None => c.total().basepoint(),
            };
            let p = pullback(&e, &c, y)?;
            Ok(Report::new("pullback")
                .field("lift", c.total().vertex_name(y))
                .field("rank", p.rank())
                .field("trivial", p.is_trivial())
                .block(p.describe())
                .into())
        }
        CoverCmd::Pushforward { cover, locsys } => {
            let c = load_cover(&read_doc(cover)?)?;
            let doc = read_doc(locsys)?;
            let e = pushforward_doc(&doc, &c)?;
            Ok(Report::new("pushforward").field("rank", e.rank()).block(e.describe()).into())
        }
        CoverCmd::Transport { cover, locsys, element, vertex, lift } => {
            let c = load_cover(&read_doc(cover)?)?;
            let e = load_local_system(&read_doc(locsys)?, Some(c.base().clone()))?;
            let gd = c.galois()?;
            let g = gd
                .group
                .find(element)
                .or_else(|| element.parse::<usize>().ok().filter(|&k| k < gd.group.order()))
                .ok_or_else(|| Error::InvalidArgument(format!("{element} is not a deck group element")))?;
            let x = match vertex {
                Some(name) => c.base().vertex_id(name)?,
                None => c.base().basepoint(),
            };
            let t = parallel_transport(&e, &c, &EtalePathLevel { vertex: x, element: g }, *lift)?;
            Ok(Report::new("parallel transport")
                .field("element", gd.group.label(g))
                .field("vertex", c.base().vertex_name(x))
                .field("lift", lift)
                .field("etale image size", etale_image_size(&c, x)?)
                .field("transport", t)
                .into())
        }
        CoverCmd::Exactseq { cover, locsys } => {
            let c = load_cover(&read_doc(cover)?)?;
            let e = load_local_system(&read_doc(locsys)?, Some(c.base().clone()))?;
            let rep = exact_sequence_report(&e, &c)?;
            let words: Vec<String> = rep.subgroup_words.iter().map(|w| c.base().format_word(w)).collect();
            let rows = words
                .iter()
                .zip(&rep.word_images)
                .zip(&rep.pullback_images)
                .map(|((w, a), b)| vec![w.clone(), a.to_string(), b.to_string()])
                .collect();
            let mut r = Report::new("exact sequence")
                .field("group order", rep.group_order)
                .field("kernel side agrees", rep.kernel_side_agrees)
                .field("pullback trivial", rep.pullback_trivial)
                .field("factors through group", rep.factors_through_group)
                .field("verdict", if rep.passes() { "pass" } else { "fail" })
                .table(&["subgroup word", "image", "pullback image"], rows);
            for v in &rep.violations {
                r = r.line(format!("violation: {v}"));
            }
            Ok(Outcome { report: r, code: if rep.passes() { 0 } else { 1 } })
        }
    }
}

/// Pushforward of a document living on the total complex: edge labels give
/// a cocycle (the total may be disconnected), `rep` a local system.
fn pushforward_doc(doc: &Doc, c: &Covering) -> Result<LocalSystem> {
    if doc.json.get("labels").is_some() {
        let mut json = doc.json.clone();
        json["space"] = serde_json::to_value(c.total().to_doc()).expect("complex serializes");
        let f = docs::load_cocycle(&Doc { json, dir: doc.dir.clone() })?;
        let f = CechCocycle::new(c.total().clone(), f.ctx(), f.rank(), f.labels().to_vec())?;
        return pushforward_cocycle(&f, c)?.to_local_system();
    }
    let f = load_local_system(doc, Some(c.total().clone()))?;
    pushforward(&f, c)
}

fn tower_from(args: &TowerArgs) -> Result<Tower> {
    match (&args.tower, args.depth) {
        (Some(path), _) => load_tower(&read_doc(path)?),
        (None, Some(depth)) => tower_make(&args.primes, depth),
        (None, None) => Err(Error::Usage("give --tower FILE or --primes and --depth".into())),
    }
}

fn descend(cli: &Cli, cmd: &DescendCmd) -> Result<Outcome> {
    match cmd {
        DescendCmd::Field { cocycle, trivialization } => {
            let c = docs::load_cocycle(&read_doc(cocycle)?)?;
            let (l, mats) = docs::load_vertex_matrices(&read_doc(trivialization)?, c.space())?;
            let emb = Embedding::new(c.ctx(), &l)?;
            let embedded = c.map_field(&l, |m| emb.embed_matrix(m))?;
            let t = Trivialization::new(embedded, mats)?;
            let d = field_descent(&c, &t, &emb)?;
            let x = c.space();
            let rows = (0..x.num_vertices()).map(|v| vec![x.vertex_name(v).to_string(), d.matrix(v).to_string()]).collect();
            Ok(Report::new("field descent")
                .field("from", &l)
                .field("to", c.ctx())
                .field("verified", "every edge satisfies h_src^-1 h_dst = label")
                .table(&["vertex", "matrix"], rows)
                .into())
        }
        DescendCmd::Modp { locsys, prime } => {
            let e = load_locsys(locsys)?;
            let r = mod_p_pipeline(&e, *prime, cap(cli))?;
            let trivializes = crate::coverings::trivializes(&r.reduced, &r.cover)?;
            Ok(Report::new("mod-p reduction")
                .field("prime", prime)
                .field("group order", r.group.order())
                .field("cover degree", r.cover.degree())
                .field("connected", r.cover.is_connected())
                .field("galois", r.cover.is_galois())
                .field("trivializes reduction", trivializes)
                .block(r.reduced.describe())
                .into())
        }
        DescendCmd::TowerLevel { locsys, tower, level } => {
            let t = tower_from(tower)?;
            let doc = read_doc(locsys)?;
            let e = load_local_system(&doc, Some(t.level_space().clone()))?;
            let found = level_of_definition(&e, &t, *level)?;
            Ok(Report::new("level of definition")
                .field("level", level)
                .field("defined at level", found.level)
                .field("monodromy there", &found.root)
                .into())
        }
        DescendCmd::Survival { tower, bound } => {
            let t = tower_from(tower)?;
            let rows = etale_quotients(&t, *bound).iter().map(|(m, o)| vec![m.to_string(), o.to_string()]).collect();
            let primes: Vec<String> = t.primes().iter().map(u64::to_string).collect();
            Ok(Report::new("finite quotient survival")
                .field("primes", format!("{{{}}}", primes.join(", ")))
                .field("depth", t.depth())
                .field("levels", t.indices().len())
                .table(&["m", "order"], rows)
                .into())
        }
    }
}

fn cohom(cli: &Cli, cmd: &CohomCmd) -> Result<Outcome> {
    match cmd {
        CohomCmd::H1 { space } => {
            let x = load_space_arg(space)?;
            let ctx = field_or(cli, FieldCtx::rationals())?;
            let h = h1_constant(&x, &ctx);
            let edges: Vec<&str> = x.edges().iter().map(|e| e.id.as_str()).collect();
            let rows = h.basis.iter().enumerate().map(|(i, z)| vec![i.to_string(), format_vector(&ctx, z)]).collect();
            Ok(Report::new("constant-coefficient H^1")
                .field("field", &ctx)
                .field("dimension", h.dimension)
                .field("edges", edges.join(", "))
                .table(&["class", "cocycle"], rows)
                .into())
        }
        CohomCmd::Homga { space } => {
            let x = load_space_arg(space)?;
            let ctx = field_or(cli, FieldCtx::rationals())?;
            let h = hom_to_additive(&x, &ctx)?;
            let p = Presentation::new(&x)?;
            let gens: Vec<&str> = p.generators().iter().map(|&g| x.edge(g).id.as_str()).collect();
            let rows = h.basis.iter().enumerate().map(|(i, z)| vec![i.to_string(), format_vector(&ctx, z)]).collect();
            Ok(Report::new("additive characters")
                .field("field", &ctx)
                .field("dimension", h.dimension)
                .field("generators", gens.join(", "))
                .table(&["character", "values"], rows)
                .into())
        }
        CohomCmd::Classes { space, rank } => {
            let x = load_space_arg(space)?;
            let ctx = match &cli.field {
                Some(f) => FieldCtx::parse(f)?,
                None => return Err(Error::Usage("cohom classes needs --field with a finite field".into())),
            };
            let cap = cli.cap.unwrap_or(DEFAULT_CLASS_CAP) as u128;
            let classes = h1_glr_enumerate(&x, &ctx, *rank, cap)?;
            let rows = classes
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let imgs: Vec<String> = c.images.iter().map(ToString::to_string).collect();
                    vec![i.to_string(), imgs.join(" ; "), c.count.to_string()]
                })
                .collect();
            let mut r = Report::new("rank-r classes")
                .field("field", &ctx)
                .field("rank", rank)
                .field("classes", classes.len());
            if *rank == 1 {
                r = r.field("characters from the abelianization", rank_one_class_count(&x, &ctx)?);
            }
            Ok(r.table(&["class", "generator images", "representations"], rows).into())
        }
    }
}
