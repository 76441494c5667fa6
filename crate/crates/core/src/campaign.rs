//! Verification campaigns: named suites of corpus-wide checks producing a
//! [`Report`] with per-check verdicts, bounds and replayable witnesses.
//!
//! Bounds come from a [`Manifest`], which is plain JSON. Every bound has a
//! default; a manifest entry replaces it, and a global size cap (the CLI's
//! `--max-size`) can only lower size bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::actions::{
    all_actions, check_peiffer, check_semidirect_axioms, comparison_is_point_iso, functor_s_act, functor_t_act,
    peiffer_failure, precrossed_modules, validate_chaincomp, ChainCompData, GroupAction, PreCrossedModule,
};
use crate::additive::{
    arrows, chain_from_precat, chains, morphism_from_rg, precat_from_2chain, random_pointed_permutation,
    rg_from_morphism, BiproductComparison, PrecategoryIso,
};
use crate::corpus;
use crate::error::{IcatError, Result};
use crate::format::{ActionFile, Bundle};
use crate::graphs::{include_v, Precategory};
use crate::halfrefl::{
    a2_census, check_adjunction, check_halfreflection, check_j_conditions, magma_injection_pair_failures,
    magma_subcategory_a, lift_uniqueness, Actions, Pairs, Points, Registration,
};
use crate::homs::HomSearch;
use crate::morphism::Morphism;
use crate::ops::substructure;
use crate::par::Exec;
use crate::points::{check_a1, five_lemma_census, five_lemma_failures, functor_t, search_a2_counterexample, split_epis, test_sources, A2Search};
use crate::ptset_models::{
    associativity_failure, product_model_category, star_category, star_precategory, validate_fibered_action,
    FiberedAction,
};
use crate::structure::{named, Kind, Obj, Structure};

/// Campaign names, in acceptance order.
pub const CAMPAIGNS: [&str; 10] = [
    "ptset-a1",
    "ptset-a2-cex",
    "grp-a2",
    "th2-ab",
    "star",
    "product-model",
    "act-pt-grp",
    "peiffer",
    "chaincomp",
    "halfrefl",
];

/// Registrations the `halfrefl` campaign can instantiate.
pub const INSTANCES: [&str; 4] = ["pairs", "points", "actions", "magma-A"];

/// Bounds and options for a campaign run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    /// Ambient kind for the `pairs` and `points` registrations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Shorthand for the `max_size` bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    /// Shorthand for the `max_total` bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_total: Option<usize>,
    /// Registrations to instantiate; empty means all of them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instances: Vec<String>,
    /// Sub-campaigns run by `all`; empty means every campaign.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub campaigns: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bounds: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    /// Format of `witness`, as accepted by `icat check`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, summary: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            summary: summary.into(),
            witness_kind: None,
            witness: None,
        }
    }

    fn with_witness<T: Serialize>(mut self, kind: &str, w: &T) -> Check {
        self.witness_kind = Some(kind.to_string());
        self.witness = Some(serde_json::to_value(w).expect("witnesses serialize"));
        self
    }

    /// A count-style check: passes when `good == total`.
    fn tally(name: impl Into<String>, good: usize, total: usize, what: &str) -> Check {
        Check::new(name, good == total, format!("{good}/{total} {what}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub campaign: String,
    pub bounds: BTreeMap<String, usize>,
    pub checks: Vec<Check>,
    pub wall_clock_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Plain-text rendering, one line per check.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bounds: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "campaign {} ({})", self.campaign, bounds.join(", "))?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let w = if c.witness.is_some() { " [witness]" } else { "" };
            writeln!(f, "  {tag} {}: {}{w}", c.name, c.summary)?;
        }
        let good = self.checks.iter().filter(|c| c.passed).count();
        write!(
            f,
            "{}: {good}/{} checks passed in {} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.wall_clock_ms
        )
    }
}

/// Resolves bounds against the manifest and records the values used.
struct Ctx<'a> {
    manifest: &'a Manifest,
    cap: Option<usize>,
    exec: Exec,
    used: BTreeMap<String, usize>,
    prefix: String,
}

impl Ctx<'_> {
    fn lookup(&self, key: &str) -> Option<usize> {
        let shorthand = match key {
            "max_size" => self.manifest.max_size,
            "max_total" => self.manifest.max_total,
            _ => None,
        };
        self.manifest.bounds.get(key).copied().or(shorthand)
    }

    fn record(&mut self, key: &str, v: usize) -> usize {
        self.used.insert(format!("{}{key}", self.prefix), v);
        v
    }

    /// A size bound, subject to the global cap.
    fn size(&mut self, key: &str, default: usize) -> usize {
        let v = self.lookup(key).unwrap_or(default);
        let v = self.cap.map_or(v, |c| v.min(c));
        self.record(key, v)
    }

    /// A bound the size cap does not touch.
    fn param(&mut self, key: &str, default: usize) -> usize {
        let v = self.lookup(key).unwrap_or(default);
        self.record(key, v)
    }

    fn seed(&mut self) -> u64 {
        let s = self.manifest.seed.unwrap_or(0);
        self.used.insert(format!("{}seed", self.prefix), s as usize);
        s
    }

    fn kind(&self, default: Kind) -> Result<Kind> {
        self.manifest.kind.as_deref().map_or(Ok(default), Kind::parse)
    }
}

/// Runs a named campaign. `cap` lowers every size bound.
pub fn run_campaign(name: &str, manifest: &Manifest, cap: Option<usize>, exec: Exec) -> Result<Report> {
    let start = Instant::now();
    let mut ctx = Ctx {
        manifest,
        cap,
        exec,
        used: BTreeMap::new(),
        prefix: String::new(),
    };
    let checks = if name == "all" {
        let names: Vec<String> = if manifest.campaigns.is_empty() {
            CAMPAIGNS.iter().map(|s| s.to_string()).collect()
        } else {
            manifest.campaigns.clone()
        };
        let mut all = Vec::new();
        for n in names {
            ctx.prefix = format!("{n}.");
            for mut c in run_checks(&n, &mut ctx)? {
                c.name = format!("{n}: {}", c.name);
                all.push(c);
            }
        }
        all
    } else {
        run_checks(name, &mut ctx)?
    };
    Ok(Report {
        campaign: name.to_string(),
        bounds: ctx.used,
        checks,
        wall_clock_ms: start.elapsed().as_millis(),
    })
}

fn run_checks(name: &str, ctx: &mut Ctx) -> Result<Vec<Check>> {
    match name {
        "ptset-a1" => ptset_a1(ctx),
        "ptset-a2-cex" => ptset_a2_cex(ctx),
        "grp-a2" => grp_a2(ctx),
        "th2-ab" => th2_ab(ctx),
        "star" => star(ctx),
        "product-model" => product_model(ctx),
        "act-pt-grp" => act_pt_grp(ctx),
        "peiffer" => peiffer(ctx),
        "chaincomp" => chaincomp(ctx),
        "halfrefl" => halfrefl(ctx),
        other => Err(IcatError::Format(format!(
            "unknown campaign {other:?}; known: {}, all",
            CAMPAIGNS.join(", ")
        ))),
    }
}

fn pointed_sets(n: usize) -> Vec<Obj> {
    (1..=n).map(|k| Arc::new(Structure::pointed_set(k))).collect()
}

fn squares(objs: &[Obj]) -> Vec<(Obj, Obj)> {
    objs.iter()
        .flat_map(|x| objs.iter().map(move |b| (x.clone(), b.clone())))
        .collect()
}

fn ptset_a1(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_size", 5);
    let bound = ctx.param("source_bound", 6);
    let sources = test_sources(Kind::PointedSet, bound);
    let pairs = squares(&pointed_sets(n));
    let results = ctx.exec.map(&pairs, |(x, b)| check_a1(x, b, &sources));
    let mut good = 0;
    let mut first_bad = None;
    for (r, (x, b)) in results.into_iter().zip(&pairs) {
        if r? {
            good += 1;
        } else if first_bad.is_none() {
            first_bad = Some(functor_t(x, b)?.0);
        }
    }
    let mut c = Check::tally(
        "i1 is the kernel of [0 1]",
        good,
        pairs.len(),
        &format!("pairs with |X|, |B| <= {n}, against every pointed set of size <= {bound}"),
    );
    if let Some(p) = first_bad {
        c = c.with_witness("split-epi", &Bundle::from_split_epi(&p).with_verdict("FAIL: i1 is not the kernel"));
    }
    Ok(vec![c])
}

fn ptset_a2_cex(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_size", 4);
    let found = search_a2_counterexample(Kind::PointedSet, n, A2Search {
        proper: true,
        exec: ctx.exec,
    })?;
    let Some(w) = found else {
        return Ok(vec![Check::new(
            "split short five lemma counterexample exists",
            false,
            format!("no counterexample with |A|, |A'| <= {n}"),
        )]);
    };
    let m = &w.morphism;
    let shape = [m.src.kernel(), m.src.b(), m.dst.kernel(), m.dst.b()]
        .iter()
        .all(|o| o.order() == 2)
        && m.src.a().order() == 3
        && m.dst.a().order() == 4;
    let bundle = Bundle::from_a2_witness(&w);
    let replays = crate::format::from_json::<Bundle>(&crate::format::to_json(&bundle))
        .and_then(|b| b.to_a2_witness())
        .is_ok_and(|w2| w2.replays());
    Ok(vec![
        Check::new(
            "split short five lemma counterexample exists",
            true,
            format!(
                "{} -> {} with kernels and bases of sizes {}, {}",
                m.src.a().order(),
                m.dst.a().order(),
                m.src.kernel().order(),
                m.src.b().order()
            ),
        )
        .with_witness("a2-witness", &bundle),
        Check::new(
            "witness is the wedge-to-product map over 2-element factors",
            shape,
            format!("|A| = {}, |A'| = {}", m.src.a().order(), m.dst.a().order()),
        ),
        Check::new("witness replays from its bundle", replays, "reloaded and rechecked"),
    ])
}

fn grp_a2(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_order", 12);
    let points = split_epis(Kind::Group, n, ctx.exec)?;
    let pairs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (0..points.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            points[i].kernel().order() == points[j].kernel().order() && points[i].b().order() == points[j].b().order()
        })
        .collect();
    let counts = ctx.exec.map(&pairs, |&(i, j)| five_lemma_census(&points[i], &points[j]));
    let total: usize = counts.iter().map(|c| c.0).sum();
    let iso: usize = counts.iter().map(|c| c.1).sum();
    let mut c = Check::tally(
        "h is an isomorphism whenever f and g are",
        iso,
        total,
        &format!("point morphisms among {} split epis of groups of order <= {n}", points.len()),
    );
    if let Some(&(i, j)) = pairs.iter().zip(&counts).find(|(_, c)| c.0 != c.1).map(|(p, _)| p) {
        if let Some(w) = five_lemma_failures(&points[i], &points[j]).first() {
            c = c.with_witness("a2-witness", &Bundle::from_a2_witness(w));
        }
    }
    Ok(vec![c])
}

fn th2_ab(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_order", 8);
    let max_top = ctx.param("max_top", 256);
    let seed = ctx.seed();
    let exec = ctx.exec;
    let mut checks = Vec::new();

    let points = split_epis(Kind::AbelianGroup, n, exec)?;
    let ok = exec.map(&points, |p| {
        BiproductComparison::new(p.alpha(), p.beta()).is_ok_and(|c| c.verify(p.alpha(), p.beta()).passed())
    });
    checks.push(Check::tally(
        "comparison [k beta] is an isomorphism",
        ok.iter().filter(|&&b| b).count(),
        ok.len(),
        &format!("split epis of abelian groups of order <= {n}"),
    ));

    let hs = arrows(n)?;
    let ok = exec.map(&hs, |h| {
        let g = rg_from_morphism(h)?;
        let (h2, cert) = morphism_from_rg(&g)?;
        Ok::<_, IcatError>(h2 == *h && cert.verify(&g, &h2).passed() && rg_from_morphism(&h2)? == g)
    });
    checks.push(Check::tally(
        "morphism -> graph -> morphism is the identity",
        ok.iter().filter(|r| matches!(r, Ok(true))).count(),
        ok.len(),
        &format!("morphisms between abelian groups of order <= {n}"),
    ));

    let indexed: Vec<(usize, &Morphism)> = hs.iter().enumerate().collect();
    let ok = exec.map(&indexed, |&(i, h)| renumbered_graph_round_trip(h, seed.wrapping_add(i as u64)));
    checks.push(Check::tally(
        "renumbered graph recovers its morphism up to the certified renumbering",
        ok.iter().filter(|r| matches!(r, Ok(true))).count(),
        ok.len(),
        "graphs",
    ));

    let chs = chains(n, max_top, exec)?;
    let indexed: Vec<(usize, _)> = chs.iter().enumerate().collect();
    let rows = exec.map(&indexed, |&(i, ch)| -> Result<(bool, bool)> {
        let q = precat_from_2chain(ch)?;
        let (ch2, cert) = chain_from_precat(&q)?;
        // ch2 == ch makes q the precategory the certificate starts from
        let plain = ch2 == *ch && cert.iso.verify(&q, &q).passed();
        Ok((plain, renumbered_precategory_round_trip(&q, seed.wrapping_add(i as u64))?))
    });
    let good = |pick: fn(&(bool, bool)) -> bool| rows.iter().filter(|r| r.as_ref().is_ok_and(pick)).count();
    checks.push(Check::tally(
        "2-chain -> precategory -> 2-chain is the identity",
        good(|r| r.0),
        rows.len(),
        &format!("2-chains of abelian groups of order <= {n} with |C2| <= {max_top}"),
    ));
    checks.push(Check::tally(
        "renumbered precategory recovers its 2-chain up to the certified renumbering",
        good(|r| r.1),
        rows.len(),
        "precategories",
    ));
    Ok(checks)
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn shuffled(p: &Precategory, seed: u64) -> (Precategory, [Vec<usize>; 3]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = [
        random_pointed_permutation(p.c0().order(), &mut rng),
        random_pointed_permutation(p.c1().order(), &mut rng),
        random_pointed_permutation(p.c2().order(), &mut rng),
    ];
    (p.relabel(&perms[0], &perms[1], &perms[2]), perms)
}

/// Renumbers `rg(h)` at random, extracts `h'` and checks that the renumbering
/// restricts to an isomorphism of arrows `h' ≅ h`.
fn renumbered_graph_round_trip(h: &Morphism, seed: u64) -> Result<bool> {
    let (q, perms) = shuffled(&include_v(h)?, seed);
    let (h2, cert) = morphism_from_rg(&q.graph)?;
    if !cert.verify(&q.graph, &h2).passed() {
        return Ok(false);
    }
    let back1 = inverse(&perms[1]);
    let back0 = inverse(&perms[0]);
    let nb = h.target().order();
    // X' = ker d' sits in the renumbered C1 = X ⊕ B; undo the renumbering
    let fx = Morphism::unchecked(h2.source(), h.source(), cert.comparison.k.map().iter().map(|&c| back1[c] / nb).collect());
    let fb = Morphism::unchecked(h2.target(), h.target(), back0);
    Ok(fx.validate().is_ok()
        && fx.is_iso()
        && fb.validate().is_ok()
        && fb.after(&h2) == h.after(&fx))
}

/// Renumbers `q` at random, extracts its 2-chain and composes the extraction
/// certificate with the inverse renumbering to get a verified isomorphism
/// `precat(chain') → q`.
fn renumbered_precategory_round_trip(q: &Precategory, seed: u64) -> Result<bool> {
    let (s, perms) = shuffled(q, seed);
    let (ch, cert) = chain_from_precat(&s)?;
    let q2 = precat_from_2chain(&ch)?;
    let undo = |i: usize, src: &Obj, dst: &Obj| Morphism::unchecked(src, dst, inverse(&perms[i]));
    let iso = PrecategoryIso {
        phi0: undo(0, s.c0(), q.c0()).after(&cert.iso.phi0),
        phi1: undo(1, s.c1(), q.c1()).after(&cert.iso.phi1),
        phi2: undo(2, s.c2(), q.c2()).after(&cert.iso.phi2),
    };
    Ok(cert.iso.verify(&q2, &s).passed() && iso.verify(&q2, q).passed())
}

fn star(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_size", 5);
    let hs: Vec<Morphism> = squares(&pointed_sets(n))
        .iter()
        .flat_map(|(x, b)| HomSearch::all().collect(x, b))
        .collect();
    let rows = ctx.exec.map(&hs, |h| -> Result<(bool, bool, bool)> {
        let trivial = h.preimage(0).len() == 1;
        let pullback = star_precategory(h)?.is_internal_category().is_pullback;
        let category = match star_category(h) {
            Ok(c) => Some(c.validate().passed()),
            Err(IcatError::KernelNotTrivial(_)) => None,
            Err(e) => return Err(e),
        };
        Ok((trivial, pullback, category == Some(true) || (category.is_none() && !trivial)))
    });
    let rows: Vec<(bool, bool, bool)> = rows.into_iter().collect::<Result<_>>()?;
    let agree = rows.iter().filter(|r| r.0 == r.1).count();
    let laws = rows.iter().filter(|r| r.2).count();
    let trivial = rows.iter().filter(|r| r.0).count();
    let mut checks = vec![
        Check::tally(
            "pullback verdict equals trivial kernel",
            agree,
            rows.len(),
            &format!("maps h: X -> B of pointed sets with |X|, |B| <= {n} ({trivial} with trivial kernel)"),
        ),
        Check::tally(
            "emitted category passes the category laws",
            laws,
            rows.len(),
            "maps (trivial kernels build a category, the rest are refused)",
        ),
    ];
    for (slot, bad) in [(0, rows.iter().position(|r| r.0 != r.1)), (1, rows.iter().position(|r| !r.2))] {
        if let Some(i) = bad {
            checks[slot] = checks[slot].clone().with_witness("morphism", &Bundle::from_morphism(&hs[i]));
        }
    }
    Ok(checks)
}

fn product_model(_ctx: &mut Ctx) -> Result<Vec<Check>> {
    let xor = FiberedAction::xor();
    let laws = validate_fibered_action(&xor);
    let assoc = associativity_failure(&xor);
    let cat = product_model_category(&xor)?;
    let cat_ok = cat.validate().passed() && cat.associative;
    let mutants = xor.single_mutations();
    let undetected: Vec<&FiberedAction> = mutants
        .iter()
        .filter(|m| validate_fibered_action(m).passed() && associativity_failure(m).is_none())
        .collect();
    let mut detection = Check::tally(
        "every single-entry mutation is detected",
        mutants.len() - undetected.len(),
        mutants.len(),
        "mutations of the xi and mu tables",
    );
    if let Some(m) = undetected.first() {
        detection = detection.with_witness("fibered-action", *m);
    }
    Ok(vec![
        Check::new("xor passes the four laws", laws.passed(), laws.to_string()),
        Check::new(
            "xor satisfies the associativity condition",
            assoc.is_none(),
            assoc.map_or("holds".into(), |w| format!("fails at {w:?}")),
        ),
        Check::new(
            "xor product model is an associative category",
            cat_ok,
            format!("{} objects, {} arrows", cat.objects, cat.arrow_count()),
        ),
        detection,
    ])
}

fn group_pairs(n: usize) -> Result<Vec<(Obj, Obj)>> {
    let groups = corpus::enumerate(Kind::Group, n)?.items;
    Ok(squares(&groups)
        .into_iter()
        .filter(|(x, b)| x.order() * b.order() <= n)
        .collect())
}

fn act_pt_grp(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_order", 12);
    let exec = ctx.exec;
    let actions: Vec<GroupAction> = exec.flat_map(&group_pairs(n)?, |(x, b)| all_actions(x, b));
    let rows = exec.map(&actions, |a| -> Result<(bool, bool)> {
        let p = functor_t_act(a)?;
        Ok((functor_s_act(&p)? == *a, check_semidirect_axioms(&p).passed()))
    });
    let rows: Vec<(bool, bool)> = rows.into_iter().collect::<Result<_>>()?;
    let mut st = Check::tally(
        "S after T is the identity on action tables",
        rows.iter().filter(|r| r.0).count(),
        rows.len(),
        &format!("actions with |X| |B| <= {n}"),
    );
    let mut ax = Check::tally(
        "semidirect products satisfy the three semidirect axioms",
        rows.iter().filter(|r| r.1).count(),
        rows.len(),
        "semidirect products (uniqueness of [0 1] by exhaustive search)",
    );
    if let Some(i) = rows.iter().position(|r| !r.0) {
        st = st.with_witness("action", &ActionFile::of(&actions[i]));
    }
    if let Some(i) = rows.iter().position(|r| !r.1) {
        ax = ax.with_witness("action", &ActionFile::of(&actions[i]));
    }
    let points = split_epis(Kind::Group, n, exec)?;
    let ok = exec.map(&points, |p| comparison_is_point_iso(p).unwrap_or(false));
    let mut ts = Check::tally(
        "T after S is isomorphic to the identity",
        ok.iter().filter(|&&b| b).count(),
        ok.len(),
        &format!("split epis of groups of order <= {n} with verified comparison isomorphisms"),
    );
    if let Some(i) = ok.iter().position(|&b| !b) {
        ts = ts.with_witness("split-epi", &Bundle::from_split_epi(&points[i]));
    }
    Ok(vec![st, ax, ts])
}

/// Normal subgroups of a group as sorted element lists, found as unions of
/// conjugacy classes closed under the operation.
pub fn normal_subgroups(g: &Obj) -> Vec<Vec<usize>> {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut cls: Vec<usize> = g.elements().map(|y| g.conj(y, x)).collect();
        cls.sort_unstable();
        cls.dedup();
        for &c in &cls {
            class_of[c] = classes.len();
        }
        classes.push(cls);
    }
    // class 0 is {0}; choose any subset of the others
    let rest = classes.len() - 1;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << rest) {
        let mut members: Vec<usize> = vec![0];
        for (i, cls) in classes.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                members.extend(cls);
            }
        }
        members.sort_unstable();
        let mut inside = vec![false; g.order()];
        for &m in &members {
            inside[m] = true;
        }
        if members.iter().all(|&a| members.iter().all(|&b| inside[g.op(a, b)])) {
            out.push(members);
        }
    }
    out.sort();
    out
}

/// `N ⊴ G` with `G` acting by conjugation and `h` the inclusion.
pub fn conjugation_module(g: &Obj, members: &[usize]) -> Result<PreCrossedModule> {
    let (n, inc) = substructure(g, members, format!("N({})", g.label()));
    let act = GroupAction::from_fn(&n, g, |s, e| {
        members.iter().position(|&m| m == g.conj(s, members[e])).expect("normal subgroup")
    });
    PreCrossedModule::new(act, inc)
}

fn peiffer(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_order", 12);
    let groups = corpus::enumerate(Kind::Group, n)?.items;
    let modules: Vec<PreCrossedModule> = groups
        .iter()
        .flat_map(|g| normal_subgroups(g).into_iter().map(move |m| conjugation_module(g, &m)))
        .collect::<Result<_>>()?;
    let ok = ctx.exec.map(&modules, check_peiffer);
    let mut conj = Check::tally(
        "conjugation on a normal subgroup satisfies the Peiffer identity",
        ok.iter().filter(|&&b| b).count(),
        ok.len(),
        &format!("normal subgroups of groups of order <= {n}"),
    );
    if let Some(i) = ok.iter().position(|&b| !b) {
        conj = conj.with_witness("pxm", &ActionFile::of_pxm(&modules[i]));
    }
    let s3: Obj = Arc::new(named::s3());
    let one: Obj = Arc::new(Structure::cyclic(1, Kind::Group));
    let pxm = PreCrossedModule::new(GroupAction::trivial(&s3, &one), Morphism::zero(&s3, &one)?)?;
    let failure = peiffer_failure(&pxm);
    // elements 1 and 2 of S3 are the transpositions (12) and (13)
    let s3_check = Check::new(
        "(S3, trivial B) fails at ((12), (13))",
        failure == Some((1, 2)),
        format!("first failure {failure:?}"),
    )
    .with_witness("pxm", &ActionFile::of_pxm(&pxm));
    Ok(vec![conj, s3_check])
}

fn chaincomp(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_order", 8);
    let exec = ctx.exec;
    let modules: Vec<PreCrossedModule> = exec.flat_map(&group_pairs(n)?, |(x, b)| {
        precrossed_modules(x, b).into_iter().filter(check_peiffer).collect()
    });
    let rows = exec.map(&modules, |m| -> Result<(bool, usize, usize)> {
        let d = ChainCompData::from_crossed_module(m)?;
        let passes = validate_chaincomp(&d)?.passed();
        let (mut caught, mut total) = (0, 0);
        let (nb, nx) = (d.xi_f.b().order(), d.xi_f.x().order());
        for b in 0..nb {
            for x in 0..nx {
                let v = d.xi_f.apply(b, x);
                for w in (0..nx).filter(|&w| w != v) {
                    let mut bad = d.clone();
                    bad.xi_f = d.xi_f.with_entry(b, x, w);
                    total += 1;
                    caught += usize::from(!validate_chaincomp(&bad)?.passed());
                }
            }
        }
        Ok((passes, caught, total))
    });
    let rows: Vec<(bool, usize, usize)> = rows.into_iter().collect::<Result<_>>()?;
    let mut pass = Check::tally(
        "the five conditions hold on crossed-module chains",
        rows.iter().filter(|r| r.0).count(),
        rows.len(),
        &format!("crossed modules with |X| |B| <= {n}"),
    );
    if let Some(i) = rows.iter().position(|r| !r.0) {
        pass = pass.with_witness("pxm", &ActionFile::of_pxm(&modules[i]));
    }
    let caught: usize = rows.iter().map(|r| r.1).sum();
    let total: usize = rows.iter().map(|r| r.2).sum();
    let mut tamper = Check::tally(
        "every single-entry tampering of xi_F is caught",
        caught,
        total,
        "tampered tables",
    );
    if let Some(i) = rows.iter().position(|r| r.1 != r.2) {
        tamper = tamper.with_witness("pxm", &ActionFile::of_pxm(&modules[i]));
    }
    Ok(vec![pass, tamper])
}

fn registration_checks<R: Registration>(r: &R, census: Option<&R>, exec: Exec) -> Vec<Check> {
    let label = r.name().to_string();
    let hr = check_halfreflection(r, exec);
    let adj = check_adjunction(r, exec);
    let j = check_j_conditions(r, exec);
    let mut out = vec![
        Check::new(
            format!("{label}: half-reflection laws"),
            hr.passed(),
            format!("{} objects: {hr}", r.objects().len()),
        ),
        Check::new(format!("{label}: adjunction F -| G"), adj.passed(), adj.to_string()),
        Check::new(
            format!("{label}: conditions on J"),
            j.verdict.passed(),
            format!(
                "{}; factorization certified on {} instances with |FE| <= {}",
                j.verdict, j.factorization_instances, j.bound
            ),
        ),
    ];
    if let Some(small) = census {
        let c = a2_census(small, exec);
        out.push(Check::new(
            format!("{label}: translation table on every A2* instance"),
            c.passed(),
            format!(
                "{} systems, {} in A2*, {} failing, {} with a disagreeing row; {} commuting relative precategories",
                c.systems,
                c.star,
                c.star_failures.len(),
                c.star_translation_mismatches.len(),
                c.pc_commuting
            ),
        ));
    }
    out
}

fn halfrefl(ctx: &mut Ctx) -> Result<Vec<Check>> {
    let n = ctx.size("max_size", 4);
    let total = ctx.size("max_total", 2 * n);
    let small = ctx.size("a2_max_size", 3);
    let lift_ptset = ctx.size("lift_ptset", 5);
    let lift_grp = ctx.size("lift_group", 8);
    let magma = ctx.size("magma_max_size", 5);
    let exec = ctx.exec;
    let wanted = |name: &str| ctx.manifest.instances.is_empty() || ctx.manifest.instances.iter().any(|i| i == name);
    if let Some(bad) = ctx.manifest.instances.iter().find(|i| !INSTANCES.contains(&i.as_str())) {
        return Err(IcatError::Format(format!("unknown registration {bad:?}; known: {}", INSTANCES.join(", "))));
    }
    let mut checks = Vec::new();
    if wanted("pairs") {
        let kinds = match &ctx.manifest.kind {
            Some(_) => vec![ctx.kind(Kind::PointedSet)?],
            None => vec![Kind::PointedSet, Kind::AbelianGroup],
        };
        for k in kinds {
            checks.extend(registration_checks(&Pairs::new(k, n)?, Some(&Pairs::new(k, small)?), exec));
        }
    }
    if wanted("points") {
        let k = ctx.kind(Kind::Group)?;
        let big = Points::new(k, n, total, exec)?;
        let census = Points::new(k, small, 2 * small, exec)?;
        checks.extend(registration_checks(&big, Some(&census), exec));
    }
    if wanted("actions") {
        checks.extend(registration_checks(&Actions::new(n, n)?, Some(&Actions::new(small, small)?), exec));
    }
    if wanted("magma-A") {
        let upto = |k: usize| -> Vec<Obj> {
            corpus::right_cancellative_magmas()
                .iter()
                .filter(|m| m.order() <= k)
                .cloned()
                .collect()
        };
        let big = magma_subcategory_a(&upto(n), &upto(n + 1), exec)?;
        let census = magma_subcategory_a(&upto(small), &upto(small + 1), exec)?;
        let mut rows = registration_checks(&big.points, Some(&census.points), exec);
        rows[0].summary += &format!(
            " ({} of {} split epis have (ker, beta) jointly epic)",
            big.points.objects().len(),
            big.scanned
        );
        checks.extend(rows);
    }
    for (kind, bound) in [(Kind::PointedSet, lift_ptset), (Kind::Group, lift_grp)] {
        let t = lift_uniqueness(kind, bound, exec)?;
        checks.push(Check::new(
            format!("exactly one lift f' per (split epi, f) in {kind} of size <= {bound}"),
            t.passed(),
            format!(
                "{} split epis, {} maps f, {} failures, {} kernel failures",
                t.points,
                t.triples,
                t.failures.len(),
                t.kernel_failures.len()
            ),
        ));
    }
    let (scanned, failures) = magma_injection_pair_failures(magma, exec);
    let mut c = Check::tally(
        "(<1,0>, <1,1>) is jointly epic",
        scanned - failures.len(),
        scanned,
        &format!("right-cancellative unital magmas of size <= {magma}"),
    );
    if let Some(m) = failures.first() {
        c = c.with_witness("structure", &crate::format::StructureFile::of(m));
    }
    checks.push(c);
    Ok(checks)
}

/// Report for a single named campaign with default bounds.
pub fn run_default(name: &str) -> Result<Report> {
    run_campaign(name, &Manifest::default(), None, Exec::default())
}
