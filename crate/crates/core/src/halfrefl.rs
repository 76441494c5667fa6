//! Half-reflections `(I, G, π)` together with a left adjoint `F ⊣ G` and a
//! kernel-like functor `J`, checked on finite registrations: pairs of objects,
//! split epis, group actions, and split epis of right-cancellative unital
//! magmas. Relative reflexive graphs and precategories are built on top.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::actions::{all_actions, conjugation_g, semidirect_product, GroupAction};
use crate::corpus;
use crate::epic::{images_generate, jointly_epic, jointly_epic_by_probe, product_injections_pair, ProbeFamily};
use crate::error::{IcatError, Result};
use crate::graphs::{Precategory, ReflexiveGraph};
use crate::homs::{homs, HomSearch};
use crate::morphism::Morphism;
use crate::ops::{kernel, Coproduct, Product};
use crate::par::Exec;
use crate::points::{split_epis, split_epis_between, PointMorphism, SplitEpi};
use crate::structure::{Kind, Obj, Structure};
use crate::verdict::Verdict;

/// A finite category `A` with functors `I, F, J: A → B`, `G: B → A` and the
/// transformations `π: 1 → GI`, `η: 1 → GF`, `ε: FG → 1`, all given by
/// evaluation on registered objects.
pub trait Registration: Sync {
    type Obj: Clone + fmt::Debug + PartialEq + Send + Sync;
    type Mor: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn name(&self) -> &str;
    fn objects(&self) -> &[Self::Obj];
    /// Objects of `B` on which `G` and `ε` are checked.
    fn bases(&self) -> &[Obj];
    fn homs(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn i(&self, a: &Self::Obj) -> Obj;
    fn i_mor(&self, f: &Self::Mor) -> Morphism;
    fn g(&self, b: &Obj) -> Self::Obj;
    fn g_mor(&self, f: &Morphism) -> Self::Mor;
    fn pi(&self, a: &Self::Obj) -> Self::Mor;

    fn f(&self, a: &Self::Obj) -> Obj;
    fn f_mor(&self, f: &Self::Mor) -> Morphism;
    fn eta(&self, a: &Self::Obj) -> Self::Mor;
    fn eps(&self, b: &Obj) -> Morphism;

    fn j(&self, a: &Self::Obj) -> Obj;
    fn j_mor(&self, f: &Self::Mor) -> Morphism;

    /// Objects `E` with `I(E) = base`.
    fn objects_over(&self, base: &Obj) -> Vec<Self::Obj>;
}

/// `π'_A = ε_{IA} F(π_A): FA → IA`
pub fn pi_prime<R: Registration>(r: &R, a: &R::Obj) -> Morphism {
    transpose(r, &r.pi(a), &r.i(a))
}

/// `J(η_A): JA → FA`
pub fn j_eta<R: Registration>(r: &R, a: &R::Obj) -> Morphism {
    r.j_mor(&r.eta(a)).retarget(&r.j(a), &r.f(a))
}

/// `I(η_A): IA → FA`
pub fn i_eta<R: Registration>(r: &R, a: &R::Obj) -> Morphism {
    r.i_mor(&r.eta(a)).retarget(&r.i(a), &r.f(a))
}

/// The adjoint transpose `ε_B F(u): FA → B` of `u: A → GB`.
pub fn transpose<R: Registration>(r: &R, u: &R::Mor, b: &Obj) -> Morphism {
    r.eps(b).after(&r.f_mor(u))
}

fn same_map(f: &Morphism, g: &Morphism) -> bool {
    f.map() == g.map()
}

/// First witness over `items` in input order.
fn first_witness<T, F>(exec: Exec, items: &[T], f: F) -> Option<Vec<usize>>
where
    T: Sync,
    F: Fn(&T) -> Option<Vec<usize>> + Sync + Send,
{
    exec.map(items, f).into_iter().flatten().next()
}

fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// Morphisms between bases, tagged `[i, j, k]`.
fn base_morphisms(bases: &[Obj], exec: Exec) -> Vec<(Vec<usize>, Morphism)> {
    let pairs = index_pairs(bases.len());
    exec.flat_map(&pairs, |&(i, j)| {
        homs(&bases[i], &bases[j])
            .into_iter()
            .enumerate()
            .map(|(k, f)| (vec![i, j, k], f))
            .collect()
    })
}

/// `IG = 1`, `I(π) = 1`, naturality of `π` and `π_{GIA} π_A = π_A`.
pub fn check_halfreflection<R: Registration>(r: &R, exec: Exec) -> Verdict {
    let objs = r.objects();
    let bases = r.bases();
    let mut v = Verdict::new();
    v.check("IG=1 on objects", || {
        bases.iter().position(|b| r.i(&r.g(b)).as_ref() != b.as_ref()).map(|i| vec![i])
    });
    v.check("IG=1 on morphisms", || {
        base_morphisms(bases, exec)
            .into_iter()
            .find(|(_, f)| !same_map(&r.i_mor(&r.g_mor(f)), f))
            .map(|(w, _)| w)
    });
    v.check("I(pi)=1", || objs.iter().position(|a| !r.i_mor(&r.pi(a)).is_identity()).map(|i| vec![i]));
    v.check("pi natural", || {
        first_witness(exec, &index_pairs(objs.len()), |&(i, j)| {
            let (a, b) = (&objs[i], &objs[j]);
            let (pa, pb) = (r.pi(a), r.pi(b));
            r.homs(a, b)
                .iter()
                .position(|f| r.compose(&pb, f) != r.compose(&r.g_mor(&r.i_mor(f)), &pa))
                .map(|k| vec![i, j, k])
        })
    });
    v.check("pi_GIA pi_A = pi_A", || {
        objs.iter()
            .position(|a| {
                let pa = r.pi(a);
                r.compose(&r.pi(&r.g(&r.i(a))), &pa) != pa
            })
            .map(|i| vec![i])
    });
    v
}

/// Naturality of `η` and `ε` and both triangle identities.
pub fn check_adjunction<R: Registration>(r: &R, exec: Exec) -> Verdict {
    let objs = r.objects();
    let bases = r.bases();
    let mut v = Verdict::new();
    v.check("eta natural", || {
        first_witness(exec, &index_pairs(objs.len()), |&(i, j)| {
            let (a, b) = (&objs[i], &objs[j]);
            let (ea, eb) = (r.eta(a), r.eta(b));
            r.homs(a, b)
                .iter()
                .position(|f| r.compose(&eb, f) != r.compose(&r.g_mor(&r.f_mor(f)), &ea))
                .map(|k| vec![i, j, k])
        })
    });
    v.check("eps natural", || {
        base_morphisms(bases, exec)
            .into_iter()
            .find(|(_, f)| {
                let (b, b2) = (f.source(), f.target());
                !same_map(&r.eps(b2).after(&r.f_mor(&r.g_mor(f))), &f.after(&r.eps(b)))
            })
            .map(|(w, _)| w)
    });
    v.check("eps_FA F(eta_A)=1", || {
        objs.iter()
            .position(|a| !transpose(r, &r.eta(a), &r.f(a)).is_identity())
            .map(|i| vec![i])
    });
    v.check("G(eps_B) eta_GB=1", || {
        bases
            .iter()
            .position(|b| {
                let gb = r.g(b);
                r.compose(&r.g_mor(&r.eps(b)), &r.eta(&gb)) != r.identity(&gb)
            })
            .map(|i| vec![i])
    });
    v
}

/// `(FA, ε_{IA}F(π_A), I(η_A), IA)`.
pub fn canonical_to_points<R: Registration>(r: &R, a: &R::Obj) -> Result<SplitEpi> {
    let alpha = pi_prime(r, a);
    let beta = i_eta(r, a);
    if !alpha.after(&beta).is_identity() {
        return Err(IcatError::TriangleLawViolated(format!(
            "eps F(pi) I(eta) != 1 on {} object {a:?}",
            r.name()
        )));
    }
    SplitEpi::new(alpha, beta)
}

/// Outcome of searching for `α: FA → T` with `α J(η_A) = f`, `α I(η_A) = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Unique(Morphism),
    NotAdmissible,
    /// Two distinct solutions: `(J(η_A), I(η_A))` is not jointly epic.
    NotUnique(Morphism, Morphism),
}

impl Bracket {
    pub fn exists(&self) -> bool {
        !matches!(self, Bracket::NotAdmissible)
    }

    pub fn unique(self) -> Option<Morphism> {
        match self {
            Bracket::Unique(m) => Some(m),
            _ => None,
        }
    }
}

/// Exhaustive search for morphisms `FA → T` agreeing with `f` along `left`
/// and with `g` along `right`.
pub fn bracket_search(fa: &Obj, left: &Morphism, right: &Morphism, f: &Morphism, g: &Morphism) -> Bracket {
    let target = f.target();
    let fixed: Vec<(usize, usize)> = left
        .map()
        .iter()
        .zip(f.map())
        .chain(right.map().iter().zip(g.map()))
        .map(|(&x, &y)| (x, y))
        .collect();
    let mut found: Vec<Morphism> = Vec::new();
    HomSearch {
        fixed,
        ..HomSearch::default()
    }
    .for_each(fa, target, |m| {
        found.push(Morphism::unchecked(fa, target, m.to_vec()));
        if found.len() == 2 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let mut it = found.into_iter();
    match (it.next(), it.next()) {
        (None, _) => Bracket::NotAdmissible,
        (Some(m), None) => Bracket::Unique(m),
        (Some(m), Some(n)) => Bracket::NotUnique(m, n),
    }
}

/// `[f g]` with respect to `A`.
pub fn cooperative_bracket<R: Registration>(r: &R, a: &R::Obj, f: &Morphism, g: &Morphism) -> Bracket {
    bracket_search(&r.f(a), &j_eta(r, a), &i_eta(r, a), f, g)
}

/// Verification record of the three conditions on `J`, with the factorization
/// condition certified by enumeration up to the stored bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JCertificate {
    pub registration: String,
    pub verdict: Verdict,
    /// `(A, E, u)` instances that met the hypotheses of the factorization
    /// condition.
    pub factorization_instances: usize,
    /// Largest `|FE|` enumerated.
    pub bound: usize,
}

pub fn check_j_conditions<R: Registration>(r: &R, exec: Exec) -> JCertificate {
    let objs = r.objects();
    let bases = r.bases();
    let mut v = Verdict::new();
    v.check("JG=1 on objects", || {
        bases.iter().position(|b| r.j(&r.g(b)).as_ref() != b.as_ref()).map(|i| vec![i])
    });
    v.check("JG=1 on morphisms", || {
        base_morphisms(bases, exec)
            .into_iter()
            .find(|(_, f)| !same_map(&r.j_mor(&r.g_mor(f)), f))
            .map(|(w, _)| w)
    });
    v.check("(J(eta), I(eta)) jointly epic", || {
        objs.iter()
            .position(|a| !jointly_epic(&j_eta(r, a), &i_eta(r, a)))
            .map(|i| vec![i])
    });
    let jobs = systems_jobs(r);
    let results = exec.map(&jobs, |(i, e_idx, e)| {
        let a = &objs[*i];
        let fa = r.f(a);
        let (pa, pe) = (pi_prime(r, a), pi_prime(r, e));
        let ja = j_eta(r, a);
        let je = r.j(e);
        let candidates = homs(&je, &r.j(a));
        let one = Morphism::identity(&r.i(e));
        let mut instances = 0;
        let mut witness = None;
        for (k, u) in homs(&je, &fa).iter().enumerate() {
            let Bracket::Unique(w) = cooperative_bracket(r, e, u, &one) else {
                continue;
            };
            if !same_map(&pa.after(&w), &pa.after(&pe)) {
                continue;
            }
            instances += 1;
            let lifts = candidates.iter().filter(|t| same_map(&ja.after(t), u)).count();
            if lifts != 1 && witness.is_none() {
                witness = Some(vec![*i, *e_idx, k]);
            }
        }
        (instances, witness, r.f(e).order())
    });
    let factorization_instances = results.iter().map(|r| r.0).sum();
    let bound = results.iter().map(|r| r.2).max().unwrap_or(0);
    v.check("J factorization", || results.iter().find_map(|r| r.1.clone()));
    JCertificate {
        registration: r.name().to_string(),
        verdict: v,
        factorization_instances,
        bound,
    }
}

/// Every `(A, E)` with `I(E) = F(A)`, tagged with the index of `A` and of `E`
/// among the objects over `FA`.
fn systems_jobs<R: Registration>(r: &R) -> Vec<(usize, usize, R::Obj)> {
    r.objects()
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            r.objects_over(&r.f(a))
                .into_iter()
                .enumerate()
                .map(move |(k, e)| (i, k, e))
        })
        .collect()
}

/// Number of natural transformations `π: 1 → GI` with `I(π) = 1` on the
/// registered objects, counted up to `cap`.
pub fn pi_multiplicity<R: Registration>(r: &R, cap: usize) -> usize {
    let objs = r.objects();
    let n = objs.len();
    let mut domains: Vec<Vec<R::Mor>> = objs.iter().map(|a| a1_objects(r, a)).collect();
    // endomorphism squares constrain each candidate on its own
    for (a, dom) in objs.iter().zip(domains.iter_mut()) {
        let endos = r.homs(a, a);
        dom.retain(|u| endos.iter().all(|f| r.compose(u, f) == r.compose(&r.g_mor(&r.i_mor(f)), u)));
    }
    // compat[i][j][x][y]: candidate x at i and y at j commute with every i → j
    let mut compat: HashMap<(usize, usize), Vec<Vec<bool>>> = HashMap::new();
    for (i, j) in index_pairs(n).into_iter().filter(|(i, j)| i != j) {
        let fs = r.homs(&objs[i], &objs[j]);
        let table = domains[i]
            .iter()
            .map(|ui| {
                domains[j]
                    .iter()
                    .map(|uj| fs.iter().all(|f| r.compose(uj, f) == r.compose(&r.g_mor(&r.i_mor(f)), ui)))
                    .collect()
            })
            .collect();
        compat.insert((i, j), table);
    }
    let mut choice = vec![0usize; n];
    let mut count = 0;
    count_assignments(0, &domains, &compat, &mut choice, &mut count, cap);
    count
}

fn count_assignments<M>(
    depth: usize,
    domains: &[Vec<M>],
    compat: &HashMap<(usize, usize), Vec<Vec<bool>>>,
    choice: &mut Vec<usize>,
    count: &mut usize,
    cap: usize,
) {
    if *count >= cap {
        return;
    }
    if depth == domains.len() {
        *count += 1;
        return;
    }
    for x in 0..domains[depth].len() {
        let ok = (0..depth).all(|p| compat[&(p, depth)][choice[p]][x] && compat[&(depth, p)][x][choice[p]]);
        if ok {
            choice[depth] = x;
            count_assignments(depth + 1, domains, compat, choice, count, cap);
        }
    }
}

/// Objects of `A₁` over `A`: morphisms `u: A → GIA` with `I(u) = 1`.
pub fn a1_objects<R: Registration>(r: &R, a: &R::Obj) -> Vec<R::Mor> {
    let gia = r.g(&r.i(a));
    r.homs(a, &gia)
        .into_iter()
        .filter(|u| r.i_mor(u).is_identity())
        .collect()
}

/// Second legs `c: FA → IA` of reflexive graphs `(FA, π'_A, c, I(η_A))`.
pub fn graph_legs<R: Registration>(r: &R, a: &R::Obj) -> Vec<Morphism> {
    let ie = i_eta(r, a);
    HomSearch {
        fixed: ie.map().iter().enumerate().map(|(b, &x)| (x, b)).collect(),
        ..HomSearch::default()
    }
    .collect(&r.f(a), &r.i(a))
}

/// Per-object comparison of `A₁`, relative reflexive graphs, and cooperative
/// pairs `(h, 1)`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct A1Census {
    pub registration: String,
    pub objects: usize,
    pub a1: usize,
    pub graphs: usize,
    pub cooperative: usize,
    /// Indices of objects where the counts differ or the transposes are not
    /// mutually inverse.
    pub failures: Vec<usize>,
}

pub fn a1_census<R: Registration>(r: &R, exec: Exec) -> A1Census {
    let objs = r.objects();
    let rows = exec.map(objs, |a| {
        let ia = r.i(a);
        let us = a1_objects(r, a);
        let cs = graph_legs(r, a);
        let one = Morphism::identity(&ia);
        let coop = homs(&r.j(a), &ia)
            .iter()
            .filter(|h| matches!(cooperative_bracket(r, a, h, &one), Bracket::Unique(_)))
            .count();
        let transposes: Vec<Morphism> = us.iter().map(|u| transpose(r, u, &ia)).collect();
        let distinct: HashSet<&[usize]> = transposes.iter().map(|c| c.map()).collect();
        let legs: HashSet<&[usize]> = cs.iter().map(|c| c.map()).collect();
        let round_trip = us
            .iter()
            .zip(&transposes)
            .all(|(u, c)| r.compose(&r.g_mor(c), &r.eta(a)) == *u);
        let ok = distinct.len() == us.len()
            && distinct.is_subset(&legs)
            && us.len() == cs.len()
            && coop == cs.len()
            && round_trip;
        (us.len(), cs.len(), coop, ok)
    });
    let mut census = A1Census {
        registration: r.name().to_string(),
        objects: objs.len(),
        ..A1Census::default()
    };
    for (i, (a1, graphs, coop, ok)) in rows.into_iter().enumerate() {
        census.a1 += a1;
        census.graphs += graphs;
        census.cooperative += coop;
        if !ok {
            census.failures.push(i);
        }
    }
    census
}

/// An object `((E, v), a, b, (A, u))` of `A₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct A2System<O, M> {
    pub obj_a: O,
    pub obj_e: O,
    pub u: M,
    pub v: M,
    /// `a: E → A`, a morphism of `A₁`.
    pub a: M,
    /// `b: A → E` with `ab = 1`.
    pub b: M,
}

/// All `A₂` objects over the given `A` and `E`.
pub fn a2_systems<R: Registration>(r: &R, a: &R::Obj, e: &R::Obj) -> Vec<A2System<R::Obj, R::Mor>> {
    let us = a1_objects(r, a);
    let vs = a1_objects(r, e);
    let downs = r.homs(e, a);
    let ups = r.homs(a, e);
    let id_a = r.identity(a);
    let sections: Vec<Vec<&R::Mor>> = downs
        .iter()
        .map(|d| ups.iter().filter(|b| r.compose(d, b) == id_a).collect())
        .collect();
    let mut out = Vec::new();
    for u in &us {
        for v in &vs {
            for (d, bs) in downs.iter().zip(&sections) {
                if bs.is_empty() || r.compose(u, d) != r.compose(&r.g_mor(&r.i_mor(d)), v) {
                    continue;
                }
                for b in bs {
                    out.push(A2System {
                        obj_a: a.clone(),
                        obj_e: e.clone(),
                        u: u.clone(),
                        v: v.clone(),
                        a: d.clone(),
                        b: (*b).clone(),
                    });
                }
            }
        }
    }
    out
}

/// The four conditions cutting `A₂*` out of `A₂` (`IE = FA` is assumed by
/// construction and checked again).
pub fn is_a2_star<R: Registration>(r: &R, s: &A2System<R::Obj, R::Mor>) -> bool {
    let (a, e) = (&s.obj_a, &s.obj_e);
    let pa = pi_prime(r, a);
    let gpa = r.g_mor(&pa);
    r.i(e).as_ref() == r.f(a).as_ref()
        && same_map(&r.i_mor(&s.a), &transpose(r, &s.u, &r.i(a)))
        && r.compose(&s.v, &s.b) == r.eta(a)
        && r.compose(&gpa, &r.pi(e)) == r.compose(&gpa, &s.v)
}

/// The diagram `FE ⇉ IE = FA ⇉ IA` with its sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeDiagram {
    /// `π'_E: FE → IE`
    pub pi_e: Morphism,
    /// `I(η_E): IE → FE`
    pub eta_e: Morphism,
    /// `F(a): FE → FA`
    pub fa: Morphism,
    /// `F(b): FA → FE`
    pub fb: Morphism,
    pub m: Morphism,
    /// `π'_A: FA → IA`
    pub pi_a: Morphism,
    /// `I(η_A): IA → FA`
    pub eta_a: Morphism,
    pub c: Morphism,
    /// `I(a): IE → IA`
    pub ia: Morphism,
    /// `I(b): IA → IE`
    pub ib: Morphism,
}

/// `c = ε_{IA}F(u)` and `m = ε_{IE}F(v)`.
pub fn relative_diagram<R: Registration>(r: &R, s: &A2System<R::Obj, R::Mor>) -> RelativeDiagram {
    let (a, e) = (&s.obj_a, &s.obj_e);
    let fa = r.f(a);
    RelativeDiagram {
        pi_e: pi_prime(r, e).retarget(&r.f(e), &fa),
        eta_e: i_eta(r, e).retarget(&fa, &r.f(e)),
        fa: r.f_mor(&s.a),
        fb: r.f_mor(&s.b),
        m: transpose(r, &s.v, &r.i(e)).retarget(&r.f(e), &fa),
        pi_a: pi_prime(r, a),
        eta_a: i_eta(r, a),
        c: transpose(r, &s.u, &r.i(a)),
        ia: r.i_mor(&s.a).retarget(&fa, &r.i(a)),
        ib: r.i_mor(&s.b).retarget(&r.i(a), &fa),
    }
}

/// Per-condition verdict on a relative diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub verdict: Verdict,
    /// Conditions other than `c6` and `c7` all hold.
    pub multiplicative: bool,
}

fn differ(f: &Morphism, g: &Morphism) -> Option<Vec<usize>> {
    (0..f.map().len()).find(|&x| f.apply(x) != g.apply(x)).map(|x| vec![x])
}

fn not_identity(f: &Morphism) -> Option<Vec<usize>> {
    (0..f.map().len()).find(|&x| f.apply(x) != x).map(|x| vec![x])
}

pub fn check_c1_c7(d: &RelativeDiagram) -> ConditionReport {
    let mut v = Verdict::new();
    v.check("c1", || not_identity(&d.c.after(&d.eta_a)));
    v.check("c2", || differ(&d.ia, &d.c));
    v.check("c3", || differ(&d.ib, &d.eta_a));
    v.check("c4", || not_identity(&d.m.after(&d.eta_e)));
    v.check("c5", || not_identity(&d.m.after(&d.fb)));
    v.check("c6", || differ(&d.c.after(&d.m), &d.c.after(&d.fa)));
    v.check("c7", || differ(&d.pi_a.after(&d.m), &d.pi_a.after(&d.pi_e)));
    let multiplicative = ["c1", "c2", "c3", "c4", "c5"].iter().all(|c| !v.fails(c));
    ConditionReport { verdict: v, multiplicative }
}

/// `C₂ = FE`, `C₁ = FA`, `C₀ = IA` with `p₂ = π'_E`, `e₂ = I(η_E)`,
/// `p₁ = F(a)`, `e₁ = F(b)`.
pub fn diagram_precategory(d: &RelativeDiagram) -> Result<Precategory> {
    let g = ReflexiveGraph::from_parts(d.pi_a.clone(), d.c.clone(), d.eta_a.clone())?;
    Precategory::from_parts(
        g,
        d.fa.clone(),
        d.pi_e.clone(),
        d.fb.clone(),
        d.eta_e.clone(),
        d.m.clone(),
    )
}

/// A replacement for `m` keeping `c4` and `c5` but breaking `c7`.
pub fn c7_mutant(d: &RelativeDiagram) -> Option<RelativeDiagram> {
    let fe = d.m.source().clone();
    let ie = d.m.target().clone();
    let mut out = None;
    HomSearch::default().for_each(&fe, &ie, |m| {
        let cand = RelativeDiagram {
            m: Morphism::unchecked(&fe, &ie, m.to_vec()),
            ..d.clone()
        };
        let rep = check_c1_c7(&cand);
        if !rep.verdict.fails("c4") && !rep.verdict.fails("c5") && rep.verdict.fails("c7") {
            out = Some(cand);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// One line of the dictionary between equations in `B` and in `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationRow {
    pub condition: String,
    pub in_b: bool,
    pub in_a: bool,
}

pub fn translation_table<R: Registration>(r: &R, s: &A2System<R::Obj, R::Mor>) -> Vec<TranslationRow> {
    let d = relative_diagram(r, s);
    let rep = check_c1_c7(&d);
    let holds = |c: &str| !rep.verdict.fails(c);
    let (a, e) = (&s.obj_a, &s.obj_e);
    let gpa = r.g_mor(&pi_prime(r, a));
    let row = |c: &str, in_b: bool, in_a: bool| TranslationRow {
        condition: c.to_string(),
        in_b,
        in_a,
    };
    vec![
        row("c1", holds("c1"), r.i_mor(&s.u).is_identity()),
        row("c4", holds("c4"), r.i_mor(&s.v).is_identity()),
        row(
            "c6",
            holds("c6"),
            r.compose(&s.u, &s.a) == r.compose(&r.g_mor(&r.i_mor(&s.a)), &s.v),
        ),
        row("c2", holds("c2"), same_map(&r.i_mor(&s.a), &transpose(r, &s.u, &r.i(a)))),
        row("c3+c5", holds("c3") && holds("c5"), r.compose(&s.v, &s.b) == r.eta(a)),
        row(
            "c7",
            holds("c7"),
            r.compose(&gpa, &r.pi(e)) == r.compose(&gpa, &s.v),
        ),
    ]
}

/// Relative precategory data `(A, E, a, b, t, h)` in `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PcData {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub t: Vec<usize>,
    pub h: Vec<usize>,
}

/// Verdicts of the two readings of the admissibility conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PcReadings {
    /// All four brackets exist.
    pub brackets_exist: bool,
    /// They exist and assemble into a precategory.
    pub commutes: bool,
}

/// Enumerates `(a, b, t, h)` with `ab = 1 = tb`, `ha = ht` for the given
/// `A`, `E`, and evaluates both readings.
pub fn pc_candidates<R: Registration>(r: &R, a: &R::Obj, e: &R::Obj) -> Vec<(PcData, PcReadings)> {
    let (ja, je, ia, fa, fe) = (r.j(a), r.j(e), r.i(a), r.f(a), r.f(e));
    let (jeta_a, ieta_a) = (j_eta(r, a), i_eta(r, a));
    let (jeta_e, ieta_e) = (j_eta(r, e).retarget(&je, &fe), i_eta(r, e).retarget(&fa, &fe));
    let (pa, pe) = (pi_prime(r, a), pi_prime(r, e).retarget(&fe, &fa));
    let downs = homs(&je, &ja);
    let ups = homs(&ja, &je);
    let hs = homs(&ja, &ia);
    let one_a = Morphism::identity(&ia);
    let one_e = Morphism::identity(&fa);
    let mut out = Vec::new();
    for b in &ups {
        let retractions: Vec<&Morphism> = downs.iter().filter(|x| x.after(b).is_identity()).collect();
        if retractions.is_empty() {
            continue;
        }
        let fb = cooperative_bracket(r, a, &jeta_e.after(b), &ieta_e.after(&ieta_a));
        for h in &hs {
            let c = cooperative_bracket(r, a, h, &one_a);
            for &x in &retractions {
                for &t in &retractions {
                    if !same_map(&h.after(x), &h.after(t)) {
                        continue;
                    }
                    let m = cooperative_bracket(r, e, &jeta_a.after(t), &one_e);
                    let fx = match &c {
                        Bracket::Unique(c) => cooperative_bracket(r, e, &jeta_a.after(x), &ieta_a.after(c)),
                        _ => Bracket::NotAdmissible,
                    };
                    let brackets_exist = c.exists() && fb.exists() && m.exists() && fx.exists();
                    let commutes = match (&c, &fb, &m, &fx) {
                        (Bracket::Unique(c), Bracket::Unique(fb), Bracket::Unique(m), Bracket::Unique(fx)) => {
                            let d = RelativeDiagram {
                                pi_e: pe.clone(),
                                eta_e: ieta_e.clone(),
                                fa: fx.retarget(&fe, &fa),
                                fb: fb.clone(),
                                m: m.clone(),
                                pi_a: pa.clone(),
                                eta_a: ieta_a.clone(),
                                c: c.clone(),
                                ia: c.clone(),
                                ib: ieta_a.clone(),
                            };
                            diagram_precategory(&d).is_ok_and(|p| p.validate().passed())
                        }
                        _ => false,
                    };
                    out.push((
                        PcData {
                            a: x.map().to_vec(),
                            b: b.map().to_vec(),
                            t: t.map().to_vec(),
                            h: h.map().to_vec(),
                        },
                        PcReadings {
                            brackets_exist,
                            commutes,
                        },
                    ));
                }
            }
        }
    }
    out
}

/// `(J(a), J(b), t, h)` with `h = c J(η_A)` and `t` the factorization of
/// `m J(η_E)` through `J(η_A)`.
pub fn pc_data_of<R: Registration>(r: &R, s: &A2System<R::Obj, R::Mor>) -> Option<PcData> {
    let (a, e) = (&s.obj_a, &s.obj_e);
    let d = relative_diagram(r, s);
    let jeta_a = j_eta(r, a);
    let target = d.m.after(&j_eta(r, e).retarget(&r.j(e), &r.f(e)));
    let mut ts = homs(&r.j(e), &r.j(a)).into_iter().filter(|t| same_map(&jeta_a.after(t), &target));
    let t = ts.next()?;
    if ts.next().is_some() {
        return None;
    }
    Some(PcData {
        a: r.j_mor(&s.a).map().to_vec(),
        b: r.j_mor(&s.b).map().to_vec(),
        t: t.map().to_vec(),
        h: d.c.after(&jeta_a).map().to_vec(),
    })
}

/// Census of `A₂`, `A₂*` and relative precategories over every `(A, E)`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct A2Census {
    pub registration: String,
    pub pairs: usize,
    pub systems: usize,
    pub star: usize,
    pub pc_brackets: usize,
    pub pc_commuting: usize,
    /// `A₂*` members whose diagram fails a condition or the precategory laws.
    pub star_failures: Vec<Vec<usize>>,
    /// `A₂*` members where some translation row disagrees.
    pub star_translation_mismatches: Vec<Vec<usize>>,
    /// Disagreeing rows over all of `A₂`, by condition name.
    pub a2_translation_mismatches: std::collections::BTreeMap<String, usize>,
    /// Instances where `c2` and `c3` hold but `c1` fails.
    pub c1_meta_failures: usize,
    /// `(A, E)` where the two readings of admissibility differ.
    pub readings_disagree: Vec<Vec<usize>>,
    /// `(A, E)` where `A₂*` does not map bijectively onto the commuting
    /// relative precategories.
    pub correspondence_failures: Vec<Vec<usize>>,
}

impl A2Census {
    pub fn passed(&self) -> bool {
        self.star_failures.is_empty()
            && self.star_translation_mismatches.is_empty()
            && self.c1_meta_failures == 0
            && self.correspondence_failures.is_empty()
    }
}

pub fn a2_census<R: Registration>(r: &R, exec: Exec) -> A2Census {
    let objs = r.objects();
    let jobs = systems_jobs(r);
    struct Row {
        systems: usize,
        star: usize,
        pc_brackets: usize,
        pc_commuting: usize,
        star_failures: Vec<Vec<usize>>,
        star_mismatch: Vec<Vec<usize>>,
        a2_mismatch: Vec<String>,
        meta: usize,
        readings_disagree: bool,
        correspondence_ok: bool,
    }
    let rows = exec.map(&jobs, |(i, k, e)| {
        let a = &objs[*i];
        let systems = a2_systems(r, a, e);
        let mut row = Row {
            systems: systems.len(),
            star: 0,
            pc_brackets: 0,
            pc_commuting: 0,
            star_failures: Vec::new(),
            star_mismatch: Vec::new(),
            a2_mismatch: Vec::new(),
            meta: 0,
            readings_disagree: false,
            correspondence_ok: true,
        };
        let mut image: HashSet<PcData> = HashSet::new();
        for (n, s) in systems.iter().enumerate() {
            let d = relative_diagram(r, s);
            let rep = check_c1_c7(&d);
            let v = &rep.verdict;
            if !v.fails("c2") && !v.fails("c3") && v.fails("c1") {
                row.meta += 1;
            }
            let table = translation_table(r, s);
            row.a2_mismatch
                .extend(table.iter().filter(|t| t.in_a != t.in_b).map(|t| t.condition.clone()));
            if !is_a2_star(r, s) {
                continue;
            }
            row.star += 1;
            let tag = vec![*i, *k, n];
            let laws_ok = diagram_precategory(&d).is_ok_and(|p| p.validate().passed());
            if !v.passed() || !laws_ok {
                row.star_failures.push(tag.clone());
            }
            if table.iter().any(|t| t.in_a != t.in_b) {
                row.star_mismatch.push(tag);
            }
            match pc_data_of(r, s) {
                Some(p) => row.correspondence_ok &= image.insert(p),
                None => row.correspondence_ok = false,
            }
        }
        let pcs = pc_candidates(r, a, e);
        let mut commuting: HashSet<PcData> = HashSet::new();
        for (p, rd) in pcs {
            row.pc_brackets += rd.brackets_exist as usize;
            if rd.commutes {
                row.pc_commuting += 1;
                commuting.insert(p);
            }
            row.readings_disagree |= rd.brackets_exist != rd.commutes;
        }
        row.correspondence_ok &= image == commuting;
        row
    });
    let mut census = A2Census {
        registration: r.name().to_string(),
        pairs: jobs.len(),
        ..A2Census::default()
    };
    for ((i, k, _), row) in jobs.iter().zip(rows) {
        census.systems += row.systems;
        census.star += row.star;
        census.pc_brackets += row.pc_brackets;
        census.pc_commuting += row.pc_commuting;
        census.star_failures.extend(row.star_failures);
        census.star_translation_mismatches.extend(row.star_mismatch);
        for c in row.a2_mismatch {
            *census.a2_translation_mismatches.entry(c).or_default() += 1;
        }
        census.c1_meta_failures += row.meta;
        if row.readings_disagree {
            census.readings_disagree.push(vec![*i, *k]);
        }
        if !row.correspondence_ok {
            census.correspondence_failures.push(vec![*i, *k]);
        }
    }
    census
}

// ---------------------------------------------------------------------------
// The product adjunction on split epis.

/// `G₁(B) = B × B` with `π_B = π₂`, `δ_B = ⟨1,1⟩` and `ε_B = π₁`.
#[derive(Clone, Debug)]
pub struct SquareAdjunction {
    pub product: Product,
    pub pi: Morphism,
    pub delta: Morphism,
    pub epsilon: Morphism,
}

pub fn square_adjunction(b: &Obj) -> Result<SquareAdjunction> {
    let product = Product::new(b, b)?;
    Ok(SquareAdjunction {
        pi: product.p2.clone(),
        delta: product.diagonal(),
        epsilon: product.p1.clone(),
        product,
    })
}

impl SquareAdjunction {
    /// `f' = ⟨f, fβα⟩`
    pub fn lift(&self, p: &SplitEpi, f: &Morphism) -> Morphism {
        let fba = f.after(p.beta()).after(p.alpha());
        self.product.pair(f, &fba).expect("pairing into a product")
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LiftReport {
    pub kind: String,
    pub max_size: usize,
    pub points: usize,
    /// `(split epi, f)` instances checked.
    pub triples: usize,
    /// `[point, base, f]` where the solution count is not one or differs
    /// from the closed form.
    pub failures: Vec<Vec<usize>>,
    /// Bases where the kernel of `π_B` is not `⟨1,0⟩`.
    pub kernel_failures: Vec<usize>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.kernel_failures.is_empty()
    }
}

/// For every split epi `(A, α, β, B')` and `f: A → B` with `|A|, |B|` at most
/// `max_size`, enumerates all of `Hom(A, B × B)` and counts the `f'` with
/// `ε f' = f` and `δ π f' = f' β α`.
pub fn lift_uniqueness(kind: Kind, max_size: usize, exec: Exec) -> Result<LiftReport> {
    let points = split_epis(kind, max_size, exec)?;
    let bases = corpus::enumerate(kind, max_size)?.items;
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|p| (0..bases.len()).map(move |b| (p, b)))
        .collect();
    let rows = exec.map(&jobs, |&(pi, bi)| {
        let (p, b) = (&points[pi], &bases[bi]);
        let data = square_adjunction(b).expect("squares exist");
        let a = p.a();
        let nb = b.order();
        let ba: Vec<usize> = a.elements().map(|x| p.beta().apply(p.alpha().apply(x))).collect();
        let mut solutions: HashMap<Vec<usize>, (usize, Vec<usize>)> = HashMap::new();
        HomSearch::default().for_each(a, &data.product.object, |fp| {
            let ok = a.elements().all(|x| {
                let second = data.pi.apply(fp[x]);
                data.delta.apply(second) == fp[ba[x]]
            });
            if ok {
                let f: Vec<usize> = fp.iter().map(|&v| v / nb).collect();
                let entry = solutions.entry(f).or_insert((0, fp.to_vec()));
                entry.0 += 1;
            }
            ControlFlow::Continue(())
        });
        let fs = homs(a, b);
        let failure = fs.iter().position(|f| match solutions.get(f.map()) {
            Some((1, sol)) => sol.as_slice() != data.lift(p, f).map(),
            _ => true,
        });
        (fs.len(), failure.map(|k| vec![pi, bi, k]))
    });
    let kernel_failures = bases
        .iter()
        .enumerate()
        .filter(|(_, b)| {
            let data = square_adjunction(b).expect("squares exist");
            kernel(&data.pi).1.map() != product_injections_pair(b).0.map()
        })
        .map(|(i, _)| i)
        .collect();
    Ok(LiftReport {
        kind: kind.as_str().to_string(),
        max_size,
        points: points.len(),
        triples: rows.iter().map(|r| r.0).sum(),
        failures: rows.into_iter().filter_map(|r| r.1).collect(),
        kernel_failures,
    })
}

// ---------------------------------------------------------------------------
// Registrations.

/// A pair `(X, B)` of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub x: Obj,
    pub b: Obj,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMap {
    pub f: Morphism,
    pub g: Morphism,
}

/// `I(X, B) = B`, `G(B) = (B, B)`, `π = (0, 1)`, `F(X, B) = X ⊔ B`,
/// `η = (ι₁, ι₂)`, `ε = [1 1]`, `J(X, B) = X`.
#[derive(Clone, Debug)]
pub struct Pairs {
    kind: Kind,
    objects: Vec<Pair>,
    bases: Vec<Obj>,
}

impl Pairs {
    pub fn new(kind: Kind, max_size: usize) -> Result<Pairs> {
        let bases = corpus::enumerate(kind, max_size)?.items;
        Pairs::from_bases(kind, bases)
    }

    pub fn from_bases(kind: Kind, bases: Vec<Obj>) -> Result<Pairs> {
        if !matches!(kind, Kind::PointedSet | Kind::AbelianGroup) {
            return Err(IcatError::UnsupportedCoproduct(kind));
        }
        let objects = bases
            .iter()
            .flat_map(|x| bases.iter().map(move |b| Pair { x: x.clone(), b: b.clone() }))
            .collect();
        Ok(Pairs { kind, objects, bases })
    }
}

/// Pairs of plain sets have no candidate `π`: a nonempty `X` admits no map to
/// the empty set. Sizes are cardinalities starting at 0.
pub fn pairs_of_sets(max_size: usize) -> Result<()> {
    for x in 0..=max_size {
        for b in 0..=max_size {
            // |Hom(X, B)| = |B|^|X|
            if (b as u128).pow(x as u32) == 0 {
                return Err(IcatError::Unsupported(format!(
                    "pairs of sets: no map from a set of size {x} to one of size {b}, so pi does not exist"
                )));
            }
        }
    }
    Ok(())
}

impl Registration for Pairs {
    type Obj = Pair;
    type Mor = PairMap;

    fn name(&self) -> &str {
        match self.kind {
            Kind::PointedSet => "pairs of pointed sets",
            _ => "pairs of abelian groups",
        }
    }

    fn objects(&self) -> &[Pair] {
        &self.objects
    }

    fn bases(&self) -> &[Obj] {
        &self.bases
    }

    fn homs(&self, a: &Pair, b: &Pair) -> Vec<PairMap> {
        let gs = homs(&a.b, &b.b);
        homs(&a.x, &b.x)
            .into_iter()
            .flat_map(|f| gs.iter().map(move |g| PairMap { f: f.clone(), g: g.clone() }))
            .collect()
    }

    fn identity(&self, a: &Pair) -> PairMap {
        PairMap {
            f: Morphism::identity(&a.x),
            g: Morphism::identity(&a.b),
        }
    }

    fn compose(&self, g: &PairMap, f: &PairMap) -> PairMap {
        PairMap {
            f: g.f.after(&f.f),
            g: g.g.after(&f.g),
        }
    }

    fn i(&self, a: &Pair) -> Obj {
        a.b.clone()
    }

    fn i_mor(&self, f: &PairMap) -> Morphism {
        f.g.clone()
    }

    fn g(&self, b: &Obj) -> Pair {
        Pair { x: b.clone(), b: b.clone() }
    }

    fn g_mor(&self, f: &Morphism) -> PairMap {
        PairMap { f: f.clone(), g: f.clone() }
    }

    fn pi(&self, a: &Pair) -> PairMap {
        PairMap {
            f: Morphism::zero(&a.x, &a.b).expect("same kind"),
            g: Morphism::identity(&a.b),
        }
    }

    fn f(&self, a: &Pair) -> Obj {
        Coproduct::new(&a.x, &a.b).expect("registered kind has coproducts").object
    }

    fn f_mor(&self, m: &PairMap) -> Morphism {
        let src = Coproduct::new(m.f.source(), m.g.source()).expect("coproduct");
        let dst = Coproduct::new(m.f.target(), m.g.target()).expect("coproduct");
        src.map_to(&dst, &m.f, &m.g).expect("coproduct of morphisms")
    }

    fn eta(&self, a: &Pair) -> PairMap {
        let cp = Coproduct::new(&a.x, &a.b).expect("coproduct");
        PairMap { f: cp.i1, g: cp.i2 }
    }

    fn eps(&self, b: &Obj) -> Morphism {
        let cp = Coproduct::new(b, b).expect("coproduct");
        let id = Morphism::identity(b);
        cp.copair(&id, &id).expect("codiagonal")
    }

    fn j(&self, a: &Pair) -> Obj {
        a.x.clone()
    }

    fn j_mor(&self, f: &PairMap) -> Morphism {
        f.f.clone()
    }

    fn objects_over(&self, base: &Obj) -> Vec<Pair> {
        self.bases
            .iter()
            .map(|y| Pair { x: y.clone(), b: base.clone() })
            .collect()
    }
}

/// Morphisms of split epis `p → q`.
pub fn point_homs(p: &SplitEpi, q: &SplitEpi) -> Vec<PointMorphism> {
    let mut out = Vec::new();
    for bottom in homs(p.b(), q.b()) {
        let fixed = p
            .b()
            .elements()
            .map(|b| (p.beta().apply(b), q.beta().apply(bottom.apply(b))))
            .collect();
        HomSearch {
            fixed,
            ..HomSearch::default()
        }
        .for_each(p.a(), q.a(), |top| {
            if p.a().elements().all(|x| q.alpha().apply(top[x]) == bottom.apply(p.alpha().apply(x))) {
                let top = Morphism::unchecked(p.a(), q.a(), top.to_vec());
                if let Ok(m) = PointMorphism::new(p.clone(), q.clone(), top, bottom.clone()) {
                    out.push(m);
                }
            }
            ControlFlow::Continue(())
        });
    }
    out
}

/// `(B × B, π₂, ⟨1,1⟩, B)`
pub fn square_point(b: &Obj) -> SplitEpi {
    let p = Product::new(b, b).expect("square");
    SplitEpi::new(p.p2.clone(), p.diagonal()).expect("diagonal splits the projection")
}

/// Split epis with `I = base`, `F = total object`, `J = kernel`,
/// `G(B) = (B × B, π₂, ⟨1,1⟩)`, `π_A = (⟨α,α⟩, 1)` and
/// `η_A = (⟨1, βα⟩, β)`, `ε_B = π₁`.
#[derive(Clone, Debug)]
pub struct Points {
    name: String,
    objects: Vec<SplitEpi>,
    bases: Vec<Obj>,
    /// Candidate total objects for `objects_over`.
    pool: Vec<Obj>,
    joint_epic_only: bool,
}

impl Points {
    /// Split epis of `kind` with `|A|` at most `max_size`; objects over a
    /// base are drawn from totals of order at most `max_total`.
    pub fn new(kind: Kind, max_size: usize, max_total: usize, exec: Exec) -> Result<Points> {
        let objects = split_epis(kind, max_size, exec)?;
        let bases = corpus::enumerate(kind, max_size)?.items;
        let pool = corpus::enumerate(kind, max_total)?.items;
        Ok(Points::from_parts(format!("points of {kind}"), objects, bases, pool))
    }

    pub fn from_parts(name: String, objects: Vec<SplitEpi>, bases: Vec<Obj>, pool: Vec<Obj>) -> Points {
        Points {
            name,
            objects,
            bases,
            pool,
            joint_epic_only: false,
        }
    }
}

impl Registration for Points {
    type Obj = SplitEpi;
    type Mor = PointMorphism;

    fn name(&self) -> &str {
        &self.name
    }

    fn objects(&self) -> &[SplitEpi] {
        &self.objects
    }

    fn bases(&self) -> &[Obj] {
        &self.bases
    }

    fn homs(&self, a: &SplitEpi, b: &SplitEpi) -> Vec<PointMorphism> {
        point_homs(a, b)
    }

    fn identity(&self, a: &SplitEpi) -> PointMorphism {
        PointMorphism::identity(a)
    }

    fn compose(&self, g: &PointMorphism, f: &PointMorphism) -> PointMorphism {
        f.then(g).expect("composable point morphisms")
    }

    fn i(&self, a: &SplitEpi) -> Obj {
        a.b().clone()
    }

    fn i_mor(&self, f: &PointMorphism) -> Morphism {
        f.bottom.clone()
    }

    fn g(&self, b: &Obj) -> SplitEpi {
        square_point(b)
    }

    fn g_mor(&self, f: &Morphism) -> PointMorphism {
        let (b, b2) = (f.source(), f.target());
        let src = Product::new(b, b).expect("square");
        let dst = Product::new(b2, b2).expect("square");
        let top = src.map_to(&dst, f, f);
        PointMorphism::new(square_point(b), square_point(b2), top, f.clone()).expect("f x f over f")
    }

    fn pi(&self, a: &SplitEpi) -> PointMorphism {
        let b = a.b();
        let top = Product::new(b, b).expect("square").pair(a.alpha(), a.alpha()).expect("pairing");
        PointMorphism::new(a.clone(), square_point(b), top, Morphism::identity(b)).expect("pi is a point morphism")
    }

    fn f(&self, a: &SplitEpi) -> Obj {
        a.a().clone()
    }

    fn f_mor(&self, f: &PointMorphism) -> Morphism {
        f.top.clone()
    }

    fn eta(&self, a: &SplitEpi) -> PointMorphism {
        let t = a.a();
        let ba = a.beta().after(a.alpha());
        let top = Product::new(t, t)
            .expect("square")
            .pair(&Morphism::identity(t), &ba)
            .expect("pairing");
        PointMorphism::new(a.clone(), square_point(t), top, a.beta().clone()).expect("eta is a point morphism")
    }

    fn eps(&self, b: &Obj) -> Morphism {
        Product::new(b, b).expect("square").p1
    }

    fn j(&self, a: &SplitEpi) -> Obj {
        a.kernel().clone()
    }

    fn j_mor(&self, f: &PointMorphism) -> Morphism {
        f.restricted.clone()
    }

    fn objects_over(&self, base: &Obj) -> Vec<SplitEpi> {
        let kind = base.kind();
        self.pool
            .iter()
            .filter(|e| e.order() >= base.order() && (!kind.is_group() || e.order() % base.order() == 0))
            .flat_map(|e| {
                let e = if e.kind() == kind {
                    e.clone()
                } else {
                    std::sync::Arc::new(e.with_kind(kind).expect("pool matches the base kind"))
                };
                split_epis_between(&e, base)
            })
            .filter(|p| !self.joint_epic_only || kernel_and_section_jointly_epic(p))
            .collect()
    }
}

/// Whether `(ker α, β)` is jointly epic: generation is sufficient, and when it
/// fails a refutation is sought among the quotients.
pub fn kernel_and_section_jointly_epic(p: &SplitEpi) -> bool {
    images_generate(&[p.k(), p.beta()]) || jointly_epic_by_probe(p.k(), p.beta(), &ProbeFamily::Quotients)
}

/// Split epis of right-cancellative unital magmas with `(ker α, β)` jointly
/// epic, as a [`Points`] registration.
#[derive(Clone, Debug)]
pub struct MagmaA {
    pub points: Points,
    /// Split epis left out because `(ker α, β)` is not jointly epic.
    pub excluded: Vec<SplitEpi>,
    /// Split epis examined.
    pub scanned: usize,
}

pub fn magma_subcategory_a(magmas: &[Obj], pool: &[Obj], exec: Exec) -> Result<MagmaA> {
    let mut as_magmas = Vec::with_capacity(magmas.len());
    for m in magmas.iter().chain(pool) {
        if !m.kind().has_table() {
            return Err(IcatError::KindMismatch(m.kind(), Kind::UnitalMagma));
        }
        if let Some(c) = m.first_non_cancellative_column() {
            return Err(IcatError::RightCancellationViolated(c));
        }
    }
    for m in magmas {
        as_magmas.push(std::sync::Arc::new(m.with_kind(Kind::UnitalMagma)?));
    }
    let pool: Vec<Obj> = pool
        .iter()
        .map(|m| m.with_kind(Kind::UnitalMagma).map(std::sync::Arc::new))
        .collect::<Result<_>>()?;
    let pairs: Vec<(Obj, Obj)> = as_magmas
        .iter()
        .flat_map(|a| {
            as_magmas
                .iter()
                .filter(|b| b.order() <= a.order())
                .map(move |b| (a.clone(), b.clone()))
        })
        .collect();
    let all: Vec<SplitEpi> = exec.flat_map(&pairs, |(a, b)| split_epis_between(a, b));
    let scanned = all.len();
    let (objects, excluded): (Vec<SplitEpi>, Vec<SplitEpi>) =
        all.into_iter().partition(kernel_and_section_jointly_epic);
    let mut points = Points::from_parts("magma split epis with (ker, beta) jointly epic".into(), objects, as_magmas, pool);
    points.joint_epic_only = true;
    Ok(MagmaA {
        points,
        excluded,
        scanned,
    })
}

/// Right-cancellative unital magmas up to `max_size` where
/// `(⟨1,0⟩, ⟨1,1⟩)` fails to be jointly epic, with the number scanned.
pub fn magma_injection_pair_failures(max_size: usize, exec: Exec) -> (usize, Vec<Obj>) {
    let magmas: Vec<Obj> = corpus::right_cancellative_magmas()
        .iter()
        .filter(|m| m.order() <= max_size)
        .cloned()
        .collect();
    let bad = exec.map(&magmas, |b| {
        let (l, d) = product_injections_pair(b);
        !jointly_epic(&l, &d)
    });
    let failures = magmas
        .iter()
        .zip(bad)
        .filter(|(_, bad)| *bad)
        .map(|(m, _)| m.clone())
        .collect();
    (magmas.len(), failures)
}

/// All unital magma tables of order `n`, in increasing order of the free
/// cells read as a base-`n` numeral.
pub fn unital_magma_tables(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let free = (n - 1) * (n - 1);
    let total = n.pow(free as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; n * n];
        for i in 0..n {
            t[i] = i;
            t[i * n] = i;
        }
        for r in 1..n {
            for c in 1..n {
                t[r * n + c] = code % n;
                code /= n;
            }
        }
        t
    })
}

/// Two distinct morphisms `B × B → T` agreeing on `⟨1,0⟩` and `⟨1,1⟩`.
#[derive(Clone, Debug)]
pub struct JointEpicFailure {
    pub b: Obj,
    pub target: Obj,
    pub first: Morphism,
    pub second: Morphism,
}

impl JointEpicFailure {
    /// Recomputes both restrictions and checks that they agree while the
    /// morphisms differ.
    pub fn replays(&self) -> bool {
        let (l, d) = product_injections_pair(&self.b);
        self.first.validate().is_ok()
            && self.second.validate().is_ok()
            && self.first != self.second
            && self.first.after(&l) == self.second.after(&l)
            && self.first.after(&d) == self.second.after(&d)
    }
}

/// Searches unital magmas `B` without right cancellation, smallest first,
/// against targets among all unital magmas of order at most `max_target`
/// and `B` itself.
pub fn search_joint_epic_failure(sizes: std::ops::RangeInclusive<usize>, max_target: usize) -> Option<JointEpicFailure> {
    let magma = |n: usize, t: Vec<usize>| std::sync::Arc::new(Structure::from_flat_unchecked(Kind::UnitalMagma, n, t));
    let targets: Vec<Obj> = (1..=max_target)
        .flat_map(|n| unital_magma_tables(n).map(move |t| magma(n, t)))
        .collect();
    for n in sizes {
        for t in unital_magma_tables(n) {
            let b = magma(n, t);
            if b.is_right_cancellative() {
                continue;
            }
            let (l, d) = product_injections_pair(&b);
            let square = l.target().clone();
            let support: Vec<usize> = l.map().iter().chain(d.map()).copied().collect();
            for target in targets.iter().chain(std::iter::once(&b)) {
                let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                let mut hit = None;
                HomSearch::default().for_each(&square, target, |m| {
                    let key: Vec<usize> = support.iter().map(|&x| m[x]).collect();
                    if let Some(prev) = seen.get(&key) {
                        hit = Some((prev.clone(), m.to_vec()));
                        return ControlFlow::Break(());
                    }
                    seen.insert(key, m.to_vec());
                    ControlFlow::Continue(())
                });
                if let Some((x, y)) = hit {
                    return Some(JointEpicFailure {
                        b: b.clone(),
                        target: target.clone(),
                        first: Morphism::unchecked(&square, target, x),
                        second: Morphism::unchecked(&square, target, y),
                    });
                }
            }
        }
    }
    None
}

/// `ξ·f` for an action map: `f: X → X'`, `g: B → B'` with
/// `f(b·x) = g(b)·f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMap {
    pub src: GroupAction,
    pub dst: GroupAction,
    pub f: Morphism,
    pub g: Morphism,
}

/// Group actions with `I = acting group`, `G(B) = conjugation`,
/// `π = (0, 1)`, `F = semidirect product`, `η = (σι₁, σι₂)`,
/// `ε(x, b) = xb`, `J = acted-on group`.
#[derive(Clone, Debug)]
pub struct Actions {
    objects: Vec<GroupAction>,
    bases: Vec<Obj>,
    pool: Vec<Obj>,
}

impl Actions {
    /// All actions between groups of order at most `max_order`; objects over
    /// a base act on groups of order at most `max_pool`.
    pub fn new(max_order: usize, max_pool: usize) -> Result<Actions> {
        let bases = corpus::enumerate(Kind::Group, max_order)?.items;
        let pool = corpus::enumerate(Kind::Group, max_pool)?.items;
        let objects = bases
            .iter()
            .flat_map(|x| bases.iter().flat_map(move |b| all_actions(x, b)))
            .collect();
        Ok(Actions { objects, bases, pool })
    }

    pub fn from_parts(objects: Vec<GroupAction>, bases: Vec<Obj>, pool: Vec<Obj>) -> Actions {
        Actions { objects, bases, pool }
    }
}

impl Registration for Actions {
    type Obj = GroupAction;
    type Mor = ActionMap;

    fn name(&self) -> &str {
        "group actions"
    }

    fn objects(&self) -> &[GroupAction] {
        &self.objects
    }

    fn bases(&self) -> &[Obj] {
        &self.bases
    }

    fn homs(&self, a: &GroupAction, b: &GroupAction) -> Vec<ActionMap> {
        let gs = homs(a.b(), b.b());
        let mut out = Vec::new();
        for f in homs(a.x(), b.x()) {
            for g in &gs {
                let equivariant = a
                    .b()
                    .elements()
                    .all(|s| a.x().elements().all(|x| f.apply(a.apply(s, x)) == b.apply(g.apply(s), f.apply(x))));
                if equivariant {
                    out.push(ActionMap {
                        src: a.clone(),
                        dst: b.clone(),
                        f: f.clone(),
                        g: g.clone(),
                    });
                }
            }
        }
        out
    }

    fn identity(&self, a: &GroupAction) -> ActionMap {
        ActionMap {
            src: a.clone(),
            dst: a.clone(),
            f: Morphism::identity(a.x()),
            g: Morphism::identity(a.b()),
        }
    }

    fn compose(&self, g: &ActionMap, f: &ActionMap) -> ActionMap {
        ActionMap {
            src: f.src.clone(),
            dst: g.dst.clone(),
            f: g.f.after(&f.f),
            g: g.g.after(&f.g),
        }
    }

    fn i(&self, a: &GroupAction) -> Obj {
        a.b().clone()
    }

    fn i_mor(&self, f: &ActionMap) -> Morphism {
        f.g.clone()
    }

    fn g(&self, b: &Obj) -> GroupAction {
        conjugation_g(b)
    }

    fn g_mor(&self, f: &Morphism) -> ActionMap {
        ActionMap {
            src: conjugation_g(f.source()),
            dst: conjugation_g(f.target()),
            f: f.clone(),
            g: f.clone(),
        }
    }

    fn pi(&self, a: &GroupAction) -> ActionMap {
        ActionMap {
            src: a.clone(),
            dst: conjugation_g(a.b()),
            f: Morphism::zero(a.x(), a.b()).expect("groups"),
            g: Morphism::identity(a.b()),
        }
    }

    fn f(&self, a: &GroupAction) -> Obj {
        semidirect_product(a).expect("registered actions are valid").object
    }

    fn f_mor(&self, m: &ActionMap) -> Morphism {
        let s = semidirect_product(&m.src).expect("valid action");
        let t = semidirect_product(&m.dst).expect("valid action");
        Morphism::from_fn(&s.object, &t.object, |p| {
            let (x, b) = s.split(p);
            t.index(m.f.apply(x), m.g.apply(b))
        })
    }

    fn eta(&self, a: &GroupAction) -> ActionMap {
        let s = semidirect_product(a).expect("valid action");
        ActionMap {
            src: a.clone(),
            dst: conjugation_g(&s.object),
            f: s.i1,
            g: s.i2,
        }
    }

    fn eps(&self, b: &Obj) -> Morphism {
        let s = semidirect_product(&conjugation_g(b)).expect("conjugation is an action");
        Morphism::from_fn(&s.object, b, |p| {
            let (x, y) = s.split(p);
            b.op(x, y)
        })
    }

    fn j(&self, a: &GroupAction) -> Obj {
        a.x().clone()
    }

    fn j_mor(&self, f: &ActionMap) -> Morphism {
        f.f.clone()
    }

    fn objects_over(&self, base: &Obj) -> Vec<GroupAction> {
        self.pool.iter().flat_map(|x| all_actions(x, base)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::obj;
    use crate::points::functor_t;
    use crate::structure::named;

    fn small_pairs(kind: Kind, n: usize) -> Pairs {
        Pairs::new(kind, n).unwrap()
    }

    #[test]
    fn pairs_of_pointed_sets_form_a_halfreflection() {
        let r = small_pairs(Kind::PointedSet, 3);
        assert!(check_halfreflection(&r, Exec::Sequential).passed());
        assert!(check_adjunction(&r, Exec::Sequential).passed());
        let j = check_j_conditions(&r, Exec::Sequential);
        assert!(j.verdict.passed(), "{}", j.verdict);
        assert!(j.factorization_instances > 0);
        for a in r.objects() {
            let p = canonical_to_points(&r, a).unwrap();
            assert_eq!(p, functor_t(&a.x, &a.b).unwrap().0);
        }
    }

    #[test]
    fn sets_without_basepoint_are_refused() {
        assert!(pairs_of_sets(0).is_ok());
        assert!(matches!(pairs_of_sets(2), Err(IcatError::Unsupported(_))));
    }

    #[test]
    fn pi_is_unique_for_small_pairs() {
        assert_eq!(pi_multiplicity(&small_pairs(Kind::PointedSet, 3), 10), 1);
        assert_eq!(pi_multiplicity(&small_pairs(Kind::AbelianGroup, 3), 10), 1);
    }

    #[test]
    fn a1_of_abelian_pairs_counts_homs() {
        let r = small_pairs(Kind::AbelianGroup, 4);
        let census = a1_census(&r, Exec::Parallel);
        let expected: usize = r.objects().iter().map(|p| homs(&p.x, &p.b).len()).sum();
        assert_eq!(census.a1, expected);
        assert_eq!(census.graphs, expected);
        assert_eq!(census.cooperative, expected);
        assert!(census.failures.is_empty());
    }

    #[test]
    fn abelian_brackets_are_copairings() {
        let z2 = obj(Structure::cyclic(2, Kind::AbelianGroup));
        let z4 = obj(Structure::cyclic(4, Kind::AbelianGroup));
        let r = Pairs::from_bases(Kind::AbelianGroup, vec![z2.clone(), z4.clone()]).unwrap();
        let a = Pair { x: z2.clone(), b: z4.clone() };
        let cp = Coproduct::new(&z2, &z4).unwrap();
        for f in homs(&z2, &z4) {
            for g in homs(&z4, &z4) {
                let expected = cp.copair(&f, &g).unwrap();
                assert_eq!(cooperative_bracket(&r, &a, &f, &g), Bracket::Unique(expected));
            }
        }
    }

    #[test]
    fn group_points_and_actions_pass() {
        let p = Points::new(Kind::Group, 4, 4, Exec::Parallel).unwrap();
        assert!(check_halfreflection(&p, Exec::Parallel).passed());
        assert!(check_adjunction(&p, Exec::Parallel).passed());
        assert!(check_j_conditions(&p, Exec::Parallel).verdict.passed());
        let a = Actions::new(4, 2).unwrap();
        let v = check_halfreflection(&a, Exec::Parallel);
        assert!(v.passed(), "{v}");
        assert!(check_adjunction(&a, Exec::Parallel).passed());
        for x in a.objects() {
            assert_eq!(
                canonical_to_points(&a, x).unwrap(),
                crate::actions::functor_t_act(x).unwrap()
            );
        }
    }

    #[test]
    fn lifts_are_unique_for_small_pointed_sets() {
        let rep = lift_uniqueness(Kind::PointedSet, 3, Exec::Parallel).unwrap();
        assert!(rep.passed());
        assert!(rep.triples > 0);
    }

    #[test]
    fn a2_star_matches_relative_precategories() {
        let r = small_pairs(Kind::PointedSet, 2);
        let census = a2_census(&r, Exec::Parallel);
        assert!(census.star > 0);
        assert!(census.passed(), "{census:?}");
        assert_eq!(census.star, census.pc_commuting);
    }

    #[test]
    fn c7_tampering_keeps_the_multiplicative_verdict() {
        let r = small_pairs(Kind::AbelianGroup, 2);
        let mut found = false;
        for a in r.objects() {
            for e in r.objects_over(&r.f(a)) {
                for s in a2_systems(&r, a, &e).into_iter().filter(|s| is_a2_star(&r, s)) {
                    let d = relative_diagram(&r, &s);
                    assert!(check_c1_c7(&d).verdict.passed());
                    if let Some(bad) = c7_mutant(&d) {
                        let rep = check_c1_c7(&bad);
                        assert!(rep.verdict.fails("c7"));
                        assert!(rep.multiplicative);
                        found = true;
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn smallest_joint_epic_failure_is_the_join_semilattice() {
        let w = search_joint_epic_failure(2..=2, 2).unwrap();
        assert_eq!(w.b.rows().unwrap(), vec![vec![0, 1], vec![1, 1]]);
        assert!(w.replays());
    }

    #[test]
    fn non_cancellative_magmas_are_refused() {
        let b = obj(Structure::from_flat_unchecked(Kind::UnitalMagma, 2, vec![0, 1, 1, 1]));
        assert!(matches!(
            magma_subcategory_a(&[b], &[], Exec::Sequential),
            Err(IcatError::RightCancellationViolated(1))
        ));
        let s3 = obj(named::s3());
        assert!(magma_subcategory_a(&[s3], &[], Exec::Sequential).is_ok());
    }
}
