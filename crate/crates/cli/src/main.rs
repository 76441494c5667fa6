//! `icat`: build, check, classify and search finite diagrams, and run
//! verification campaigns.
//!
//! Exit codes: 0 success or PASS, 1 a check failed, 2 bad input, 3 the
//! construction is not supported for the given data.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use icat::actions::{check_peiffer, functor_t_act, peiffer_failure, precrossed_modules, pxm_from_rg};
use icat::additive::{chain_from_precat, morphism_from_rg, precat_from_2chain, rg_from_morphism};
use icat::campaign::{run_campaign, Manifest, Report};
use icat::corpus;
use icat::format::{from_json, read_json, to_json, ActionFile, Bundle, CorpusFile, MorphismFile, StructureFile};
use icat::graphs::ReflexiveGraph;
use icat::halfrefl::{kernel_and_section_jointly_epic, search_joint_epic_failure};
use icat::par::Exec;
use icat::points::{check_split_five_lemma, search_a2_counterexample, A2Search};
use icat::ptset_models::{
    associativity_failure, product_model_category, star_category, validate_fibered_action, ConcreteCategory,
    FiberedAction,
};
use icat::{IcatError, Kind, Morphism};

#[derive(Parser, Debug)]
#[command(name = "icat", version, about = "Finite reflexive graphs, precategories and split epimorphisms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Upper bound on structure sizes for searches, enumeration and campaigns.
    #[arg(long, alias = "max-order", global = true)]
    max_size: Option<usize>,
    /// Seed for randomized renumbering checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (build, classify, search, enumerate) or directory (verify).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run scans on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

impl Global {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a structure, diagram or witness file.
    Check { what: CheckKind, file: PathBuf },
    /// Run a construction and emit its output.
    Build { what: BuildKind, file: PathBuf },
    /// Recover the classifying data of a diagram.
    Classify { what: ClassifyKind, file: PathBuf },
    /// Search for the smallest counterexample of a given shape.
    Search {
        what: SearchKind,
        /// Ambient kind for `a2-counterexample`.
        #[arg(long, default_value = "pointed-set")]
        kind: String,
        /// Allow identity split epis in `a2-counterexample`.
        #[arg(long)]
        improper: bool,
    },
    /// Run a verification campaign.
    Verify {
        /// Campaign name (also accepted as --campaign).
        name: Option<String>,
        #[arg(long)]
        campaign: Option<String>,
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Render a saved report as text.
    Report { file: PathBuf },
    /// Print a corpus of structures.
    Enumerate { kind: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    /// Detect the format from the file contents.
    Auto,
    Structure,
    Morphism,
    #[value(alias = "graph")]
    Rg,
    #[value(alias = "precat")]
    Precategory,
    SplitEpi,
    A2Witness,
    Action,
    #[value(alias = "pxm")]
    Peiffer,
    FiberedAction,
    Category,
    Chain,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BuildKind {
    Star,
    ProductModel,
    RgFromH,
    PrecatFromChain,
    Semidirect,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ClassifyKind {
    Additive,
    Group,
    Magma,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SearchKind {
    A2Counterexample,
    PeifferFailure,
    JointEpicFailure,
}

/// A finished command: what to print and the exit status.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Outcome {
        Outcome { text: text.into(), code: 0 }
    }

    fn verdict(passed: bool, text: impl Into<String>) -> Outcome {
        let tag = if passed { "PASS" } else { "FAIL" };
        Outcome {
            text: format!("{tag}: {}", text.into()),
            code: if passed { 0 } else { 1 },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(o) => {
            if !o.text.is_empty() {
                println!("{}", o.text);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let unsupported = e.downcast_ref::<IcatError>().is_some_and(IcatError::is_unsupported);
            ExitCode::from(if unsupported { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { what, file } => check(*what, file),
        Command::Build { what, file } => build(*what, file, g),
        Command::Classify { what, file } => classify(*what, file, g),
        Command::Search { what, kind, improper } => search(*what, kind, *improper, g),
        Command::Verify { name, campaign, manifest } => verify(name.as_deref().or(campaign.as_deref()), manifest.as_deref(), g),
        Command::Report { file } => {
            let r: Report = load(file)?;
            Ok(Outcome::ok(r.render()))
        }
        Command::Enumerate { kind } => {
            let kind = Kind::parse(kind)?;
            let n = g.max_size.unwrap_or_else(|| corpus::hard_cap(kind).min(8));
            let c = corpus::enumerate(kind, n)?;
            emit(&CorpusFile::of(&c), g)
        }
    }
}

fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    Ok(read_json(path)?)
}

/// Writes `value` to `--out` if given, otherwise returns it for printing.
fn emit<T: Serialize>(value: &T, g: &Global) -> anyhow::Result<Outcome> {
    let text = to_json(value);
    match &g.out {
        Some(p) => {
            std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?;
            Ok(Outcome::ok(format!("wrote {}", p.display())))
        }
        None => Ok(Outcome::ok(text)),
    }
}

/// Guesses a check kind from the shape of a JSON document.
fn detect(v: &serde_json::Value) -> anyhow::Result<CheckKind> {
    let has = |k: &str| v.get(k).is_some();
    if let Some(t) = v.get("type").and_then(|t| t.as_str()) {
        return Ok(match t {
            "reflexive-graph" => CheckKind::Rg,
            "precategory" => CheckKind::Precategory,
            "split-epi" => CheckKind::SplitEpi,
            "a2-witness" => CheckKind::A2Witness,
            "two-chain" => CheckKind::Chain,
            "morphism" => CheckKind::Morphism,
            other => return Err(IcatError::Format(format!("unknown bundle type {other:?}")).into()),
        });
    }
    Ok(if has("act") && has("h") {
        CheckKind::Peiffer
    } else if has("act") {
        CheckKind::Action
    } else if has("xi") {
        CheckKind::FiberedAction
    } else if has("comp") {
        CheckKind::Category
    } else if has("map") {
        CheckKind::Morphism
    } else if has("kind") {
        CheckKind::Structure
    } else {
        return Err(IcatError::Format("cannot tell what this file contains".into()).into());
    })
}

/// Reads a morphism from a plain morphism file or a `morphism` bundle.
fn read_morphism(v: &serde_json::Value) -> anyhow::Result<Morphism> {
    if v.get("type").is_some() {
        let b: Bundle = serde_json::from_value(v.clone()).map_err(IcatError::from)?;
        Ok(b.to_morphism()?)
    } else {
        let m: MorphismFile = serde_json::from_value(v.clone()).map_err(IcatError::from)?;
        Ok(m.to_morphism(&Default::default())?)
    }
}

fn bundle(v: &serde_json::Value) -> anyhow::Result<Bundle> {
    Ok(serde_json::from_value(v.clone()).map_err(IcatError::from)?)
}

/// Law failures in the input count as a failed check (exit 1); anything
/// else that goes wrong while reading it is bad input (exit 2).
fn law_failure(e: &IcatError) -> bool {
    matches!(
        e,
        IcatError::InvalidStructure(_)
            | IcatError::InvalidMorphism(_)
            | IcatError::NotSplit
            | IcatError::InvalidDiagram(_)
            | IcatError::ChainConditionViolated(_)
            | IcatError::InvalidAction(_)
            | IcatError::LawViolation(_)
            | IcatError::RightCancellationViolated(_)
    )
}

fn check(what: CheckKind, file: &Path) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let v: serde_json::Value = from_json(&text)?;
    let what = match what {
        CheckKind::Auto => detect(&v)?,
        w => w,
    };
    match check_value(what, &v) {
        Err(e) => match e.downcast_ref::<IcatError>() {
            Some(ie) if law_failure(ie) => Ok(Outcome::verdict(false, ie.to_string())),
            _ => Err(e),
        },
        ok => ok,
    }
}

fn check_value(what: CheckKind, v: &serde_json::Value) -> anyhow::Result<Outcome> {
    Ok(match what {
        CheckKind::Auto => unreachable!("resolved by the caller"),
        CheckKind::Structure => {
            let f: StructureFile = serde_json::from_value(v.clone()).map_err(IcatError::from)?;
            let s = f.to_structure()?;
            Outcome::verdict(true, format!("{} of order {}", s.kind(), s.order()))
        }
        CheckKind::Morphism => {
            let m = read_morphism(v)?;
            Outcome::verdict(true, format!("morphism {} -> {}", m.source().label(), m.target().label()))
        }
        CheckKind::Rg => {
            let g = bundle(v)?.to_graph()?;
            let verdict = g.validate();
            Outcome::verdict(verdict.passed(), format!("reflexive graph: {verdict}"))
        }
        CheckKind::Precategory => {
            let p = bundle(v)?.to_precategory()?;
            let verdict = p.validate();
            if !verdict.passed() {
                return Ok(Outcome::verdict(false, format!("precategory: {verdict}")));
            }
            let ic = p.is_internal_category();
            Outcome::verdict(
                true,
                format!(
                    "precategory: {verdict}; pullback: {}, associative: {}",
                    ic.is_pullback,
                    ic.is_associative.map_or("n/a".into(), |a| a.to_string())
                ),
            )
        }
        CheckKind::SplitEpi => {
            let p = bundle(v)?.to_split_epi()?;
            Outcome::verdict(true, format!("split epi {} -> {}, kernel of order {}", p.a().label(), p.b().label(), p.kernel().order()))
        }
        CheckKind::A2Witness => {
            let b = bundle(v)?;
            let w = b.to_a2_witness()?;
            let lemma = check_split_five_lemma(&w.morphism)?;
            let recomputed = Bundle::from_a2_witness(&w).verdict;
            let replays = !lemma && b.verdict.as_ref().is_none_or(|s| Some(s) == recomputed.as_ref());
            let mut o = Outcome::verdict(
                lemma,
                if lemma {
                    "the middle component is an isomorphism".to_string()
                } else {
                    "kernel and base components are isomorphisms, the middle component is not".to_string()
                },
            );
            o.text += &format!("\nreplays stored verdict: {}", if replays { "yes" } else { "no" });
            o
        }
        CheckKind::Action => {
            let a: ActionFile = serde_json::from_value(v.clone()).map_err(IcatError::from)?;
            let act = a.to_action()?;
            Outcome::verdict(true, format!("action of {} on {}", act.b().label(), act.x().label()))
        }
        CheckKind::Peiffer => {
            let a: ActionFile = serde_json::from_value(v.clone()).map_err(IcatError::from)?;
            let pxm = a.to_pxm()?;
            match peiffer_failure(&pxm) {
                None => Outcome::verdict(true, "Peiffer identity holds"),
                Some((e, f)) => Outcome::verdict(false, format!("Peiffer identity fails at ({e}, {f})")),
            }
        }
        CheckKind::FiberedAction => {
            let f: FiberedAction = serde_json::from_value(v.clone()).map_err(IcatError::from)?;
            let laws = validate_fibered_action(&f);
            let assoc = if f.mu.is_some() { associativity_failure(&f) } else { None };
            Outcome::verdict(
                laws.passed() && assoc.is_none(),
                format!(
                    "laws: {laws}; associativity condition: {}",
                    assoc.map_or("holds".into(), |w| format!("fails at {w:?}"))
                ),
            )
        }
        CheckKind::Category => {
            let c: ConcreteCategory = serde_json::from_value(v.clone()).map_err(IcatError::from)?;
            let verdict = c.validate();
            Outcome::verdict(verdict.passed(), format!("category with {} arrows: {verdict}", c.arrow_count()))
        }
        CheckKind::Chain => {
            let ch = bundle(v)?.to_chain()?;
            Outcome::verdict(true, format!("2-chain {} -> {} -> {}", ch.z().label(), ch.x().label(), ch.b().label()))
        }
    })
}

fn build(what: BuildKind, file: &Path, g: &Global) -> anyhow::Result<Outcome> {
    let v: serde_json::Value = load(file)?;
    match what {
        BuildKind::Star => emit(&star_category(&read_morphism(&v)?)?, g),
        BuildKind::ProductModel => {
            let f: FiberedAction = serde_json::from_value(v).map_err(IcatError::from)?;
            emit(&product_model_category(&f)?, g)
        }
        BuildKind::RgFromH => emit(&Bundle::from_graph(&rg_from_morphism(&read_morphism(&v)?)?), g),
        BuildKind::PrecatFromChain => {
            let ch = bundle(&v)?.to_chain()?;
            emit(&Bundle::from_precategory(&precat_from_2chain(&ch)?), g)
        }
        BuildKind::Semidirect => {
            let a: ActionFile = serde_json::from_value(v).map_err(IcatError::from)?;
            emit(&Bundle::from_split_epi(&functor_t_act(&a.to_action()?)?), g)
        }
    }
}

#[derive(Serialize)]
struct AdditiveClassification {
    /// `h`, or `t` and `h` for a precategory.
    chain: Bundle,
    /// The comparison `[k e]: X ⊕ B → C1` (graphs) and, for precategories, the
    /// level-wise isomorphism from the rebuilt precategory.
    certificate: Bundle,
}

fn graph_of(v: &serde_json::Value) -> anyhow::Result<ReflexiveGraph> {
    let g = bundle(v)?.to_graph()?;
    let verdict = g.validate();
    if !verdict.passed() {
        return Err(IcatError::InvalidDiagram(format!("reflexive graph: {verdict}")).into());
    }
    Ok(g)
}

fn classify(what: ClassifyKind, file: &Path, g: &Global) -> anyhow::Result<Outcome> {
    let v: serde_json::Value = load(file)?;
    match what {
        ClassifyKind::Additive => {
            let b = bundle(&v)?;
            let out = if b.kind == "precategory" {
                let p = b.to_precategory()?;
                let (ch, cert) = chain_from_precat(&p)?;
                let mut c = Bundle::new("precategory-iso");
                for (key, m) in [("phi0", &cert.iso.phi0), ("phi1", &cert.iso.phi1), ("phi2", &cert.iso.phi2)] {
                    c.morphisms.insert(key.into(), MorphismFile::inline(m));
                }
                AdditiveClassification {
                    chain: Bundle::from_chain(&ch),
                    certificate: c.with_verdict("PASS: every structure arrow commutes with the isomorphism"),
                }
            } else {
                let gr = graph_of(&v)?;
                let (h, cert) = morphism_from_rg(&gr)?;
                let mut c = Bundle::new("graph-comparison");
                c.morphisms.insert("[k e]".into(), MorphismFile::inline(&cert.comparison.morphism));
                AdditiveClassification {
                    chain: Bundle::from_morphism(&h),
                    certificate: c.with_verdict(format!("{}", cert.verify(&gr, &h))),
                }
            };
            emit(&out, g)
        }
        ClassifyKind::Group => {
            let gr = graph_of(&v)?;
            let (pxm, _) = pxm_from_rg(&gr)?;
            let crossed = check_peiffer(&pxm);
            let mut o = emit(&ActionFile::of_pxm(&pxm), g)?;
            o.text = format!(
                "{}\n{}",
                o.text,
                if crossed { "crossed module (Peiffer identity holds)" } else { "precrossed module (Peiffer identity fails)" }
            );
            Ok(o)
        }
        ClassifyKind::Magma => {
            let p = bundle(&v)?.to_split_epi()?;
            if p.kind() != Kind::UnitalMagma {
                return Err(IcatError::KindMismatch(p.kind(), Kind::UnitalMagma).into());
            }
            let member = kernel_and_section_jointly_epic(&p);
            Ok(Outcome::verdict(
                member,
                if member {
                    "(ker, beta) jointly epic: the split epi lies in the subcategory"
                } else {
                    "(ker, beta) is not jointly epic: the split epi is excluded"
                },
            ))
        }
    }
}

fn search(what: SearchKind, kind: &str, improper: bool, g: &Global) -> anyhow::Result<Outcome> {
    match what {
        SearchKind::A2Counterexample => {
            let kind = Kind::parse(kind)?;
            let n = g.max_size.unwrap_or(4);
            let opts = A2Search {
                proper: !improper,
                exec: g.exec(),
            };
            match search_a2_counterexample(kind, n, opts)? {
                Some(w) => emit(&Bundle::from_a2_witness(&w), g),
                None => Ok(Outcome::ok(format!("no counterexample with |A|, |A'| <= {n}"))),
            }
        }
        SearchKind::PeifferFailure => {
            let n = g.max_size.unwrap_or(6);
            let groups = corpus::enumerate(Kind::Group, n)?.items;
            for x in &groups {
                for b in &groups {
                    if let Some(p) = precrossed_modules(x, b).into_iter().find(|p| !check_peiffer(p)) {
                        return emit(&ActionFile::of_pxm(&p), g);
                    }
                }
            }
            Ok(Outcome::ok(format!("every precrossed module of groups of order <= {n} is crossed")))
        }
        SearchKind::JointEpicFailure => {
            let n = g.max_size.unwrap_or(3);
            match search_joint_epic_failure(2..=n, n) {
                Some(w) => {
                    let mut b = Bundle::new("joint-epic-failure");
                    b.add_structure("B", &w.b);
                    b.add_structure("BxB", w.first.source());
                    b.add_structure("T", &w.target);
                    b.add_morphism("first", &w.first, "BxB", "T");
                    b.add_morphism("second", &w.second, "BxB", "T");
                    emit(&b.with_verdict("FAIL: distinct morphisms agree on <1,0> and <1,1>"), g)
                }
                None => Ok(Outcome::ok(format!("no failure among unital magmas of size <= {n}"))),
            }
        }
    }
}

fn verify(name: Option<&str>, manifest: Option<&Path>, g: &Global) -> anyhow::Result<Outcome> {
    let mut m: Manifest = match manifest {
        Some(p) => load(p)?,
        None => Manifest::default(),
    };
    if g.seed.is_some() {
        m.seed = g.seed;
    }
    let name = match name.ok_or_else(|| anyhow!("name a campaign (e.g. --campaign all)"))? {
        "act-pt-equivalence" => "act-pt-grp",
        other => other,
    };
    let report = run_campaign(name, &m, g.max_size, g.exec())?;
    if let Some(dir) = &g.out {
        write_report(&report, dir)?;
    }
    Ok(Outcome {
        text: report.render(),
        code: if report.passed() { 0 } else { 1 },
    })
}

/// `report.json` plus one replayable file per witness.
fn write_report(r: &Report, dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    std::fs::write(dir.join("report.json"), to_json(r) + "\n")?;
    for (i, c) in r.checks.iter().enumerate() {
        if let (Some(kind), Some(w)) = (&c.witness_kind, &c.witness) {
            let path = dir.join(format!("witness-{i:02}-{kind}.json"));
            std::fs::write(&path, to_json(w) + "\n")?;
        }
    }
    Ok(())
}
