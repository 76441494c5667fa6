//! Split epimorphisms ("points"), the kernel functor `S`, the coproduct functor
//! `T`, and the two axioms that make `T` an equivalence.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::corpus;
use crate::error::{IcatError, Result};
use crate::homs::{automorphisms, HomSearch};
use crate::morphism::Morphism;
use crate::ops::{kernel, Coproduct};
use crate::par::Exec;
use crate::structure::{Kind, Obj};

/// A split epi `(A, α, β, B)` with `αβ = 1` and its kernel `k: K → A` cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitEpi {
    alpha: Morphism,
    beta: Morphism,
    k: Morphism,
}

impl SplitEpi {
    pub fn new(alpha: Morphism, beta: Morphism) -> Result<SplitEpi> {
        alpha.validate()?;
        beta.validate()?;
        let (_, k) = kernel_of_split_epi(&alpha, &beta)?;
        Ok(SplitEpi { alpha, beta, k })
    }

    /// The identity split epi on `B`.
    pub fn identity(b: &Obj) -> SplitEpi {
        let id = Morphism::identity(b);
        SplitEpi::new(id.clone(), id).expect("identity splits")
    }

    pub fn a(&self) -> &Obj {
        self.alpha.source()
    }

    pub fn b(&self) -> &Obj {
        self.alpha.target()
    }

    pub fn kernel(&self) -> &Obj {
        self.k.source()
    }

    pub fn alpha(&self) -> &Morphism {
        &self.alpha
    }

    pub fn beta(&self) -> &Morphism {
        &self.beta
    }

    pub fn k(&self) -> &Morphism {
        &self.k
    }

    pub fn kind(&self) -> Kind {
        self.a().kind()
    }

    /// Conjugates by isomorphisms `φ: A → A'` and `ψ: B → B'`.
    pub fn transport(&self, phi: &Morphism, psi: &Morphism) -> SplitEpi {
        let phi_inv = phi.inverse().expect("phi is an isomorphism");
        let psi_inv = psi.inverse().expect("psi is an isomorphism");
        let alpha = psi.after(&self.alpha).after(&phi_inv);
        let beta = phi.after(&self.beta).after(&psi_inv);
        SplitEpi::new(alpha, beta).expect("transport preserves splitting")
    }

    /// Serialized form used for deterministic ordering.
    pub fn sort_key(&self) -> Vec<usize> {
        let mut key = vec![self.a().order()];
        key.extend(self.a().table().unwrap_or(&[]));
        key.push(self.b().order());
        key.extend(self.b().table().unwrap_or(&[]));
        key.extend(self.alpha.map());
        key.extend(self.beta.map());
        key
    }
}

/// Kernel of a split epi. Fails with `NotSplit` unless `αβ = 1`.
pub fn kernel_of_split_epi(alpha: &Morphism, beta: &Morphism) -> Result<(Obj, Morphism)> {
    if beta.target().as_ref() != alpha.source().as_ref()
        || beta.source().as_ref() != alpha.target().as_ref()
        || !alpha.after(beta).is_identity()
    {
        return Err(IcatError::NotSplit);
    }
    Ok(kernel(alpha))
}

/// `T(X, B) = (X ⊔ B, [0 1], ι₂, B)`.
pub fn functor_t(x: &Obj, b: &Obj) -> Result<(SplitEpi, Coproduct)> {
    let cp = Coproduct::new(x, b)?;
    let zero = Morphism::zero(x, b)?;
    let alpha = cp.copair(&zero, &Morphism::identity(b))?;
    let p = SplitEpi::new(alpha, cp.i2.clone())?;
    Ok((p, cp))
}

/// `S(A, α, β, B) = (K[α], B)`.
pub fn functor_s(p: &SplitEpi) -> (Obj, Obj) {
    (p.kernel().clone(), p.b().clone())
}

/// Result of checking that `k` is a kernel of `α` against a family of test
/// sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVerdict {
    pub holds: bool,
    pub morphisms_checked: usize,
    pub failure: Option<String>,
}

/// Exhaustive universal-property check: `αk = 0`, and every `f: T → A` with
/// `αf = 0` factors through `k` in exactly one way, for every test source `T`.
pub fn verify_kernel(alpha: &Morphism, k: &Morphism, sources: &[Obj]) -> KernelVerdict {
    let mut checked = 0;
    if !alpha.after(k).is_zero() {
        return KernelVerdict {
            holds: false,
            morphisms_checked: 0,
            failure: Some("alpha . k is not zero".into()),
        };
    }
    let a = alpha.source();
    let kobj = k.source();
    for t in sources {
        if !t.kind().compatible(a.kind()) {
            continue;
        }
        // how many g: T → K give each composite k g
        let mut factorizations: HashMap<Vec<usize>, usize> = HashMap::new();
        HomSearch::all().for_each(t, kobj, |g| {
            let composite: Vec<usize> = g.iter().map(|&v| k.apply(v)).collect();
            *factorizations.entry(composite).or_default() += 1;
            ControlFlow::Continue(())
        });
        let mut failure = None;
        HomSearch::all().for_each(t, a, |f| {
            if f.iter().any(|&v| alpha.apply(v) != 0) {
                return ControlFlow::Continue(());
            }
            checked += 1;
            let n = factorizations.get(f).copied().unwrap_or(0);
            if n == 1 {
                ControlFlow::Continue(())
            } else {
                failure = Some(format!(
                    "f = {f:?} from {t:?} has {n} factorizations through k"
                ));
                ControlFlow::Break(())
            }
        });
        if failure.is_some() {
            return KernelVerdict {
                holds: false,
                morphisms_checked: checked,
                failure,
            };
        }
    }
    KernelVerdict {
        holds: true,
        morphisms_checked: checked,
        failure: None,
    }
}

/// Default family of test sources for kernel checks: the corpus of the kind up
/// to `bound` elements.
pub fn test_sources(kind: Kind, bound: usize) -> Vec<Obj> {
    let bound = bound.min(corpus::hard_cap(kind));
    corpus::enumerate(kind, bound)
        .map(|c| c.items)
        .unwrap_or_default()
}

/// Axiom (A1) for the pair `(X, B)`: `ι₁` is the kernel of `[0 1]`.
pub fn check_a1(x: &Obj, b: &Obj, sources: &[Obj]) -> Result<bool> {
    let (p, cp) = functor_t(x, b)?;
    // the computed kernel must be ι₁ itself, up to the renumbering convention
    let same_inclusion = p.k().map() == cp.i1.map();
    Ok(same_inclusion && verify_kernel(p.alpha(), &cp.i1, sources).holds)
}

/// A morphism of split epis: `top: A → A'` and `bottom: B → B'` with
/// `α'·top = bottom·α` and `top·β = β'·bottom`; `restricted: K → K'` derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMorphism {
    pub src: SplitEpi,
    pub dst: SplitEpi,
    pub top: Morphism,
    pub bottom: Morphism,
    pub restricted: Morphism,
}

impl PointMorphism {
    pub fn new(src: SplitEpi, dst: SplitEpi, top: Morphism, bottom: Morphism) -> Result<Self> {
        if top.source().as_ref() != src.a().as_ref()
            || top.target().as_ref() != dst.a().as_ref()
            || bottom.source().as_ref() != src.b().as_ref()
            || bottom.target().as_ref() != dst.b().as_ref()
        {
            return Err(IcatError::InvalidDiagram("components do not match the split epis".into()));
        }
        top.validate()?;
        bottom.validate()?;
        if dst.alpha().after(&top) != bottom.after(src.alpha()) {
            return Err(IcatError::InvalidDiagram("alpha' . top != bottom . alpha".into()));
        }
        if top.after(src.beta()) != dst.beta().after(&bottom) {
            return Err(IcatError::InvalidDiagram("top . beta != beta' . bottom".into()));
        }
        let restricted = restrict_to_kernels(&src, &dst, &top)?;
        Ok(PointMorphism {
            src,
            dst,
            top,
            bottom,
            restricted,
        })
    }

    pub fn identity(p: &SplitEpi) -> PointMorphism {
        PointMorphism::new(
            p.clone(),
            p.clone(),
            Morphism::identity(p.a()),
            Morphism::identity(p.b()),
        )
        .expect("identity commutes")
    }

    /// `other ∘ self`
    pub fn then(&self, other: &PointMorphism) -> Result<PointMorphism> {
        if self.dst != other.src {
            return Err(IcatError::InvalidDiagram("point morphisms are not composable".into()));
        }
        PointMorphism::new(
            self.src.clone(),
            other.dst.clone(),
            other.top.after(&self.top),
            other.bottom.after(&self.bottom),
        )
    }
}

fn restrict_to_kernels(src: &SplitEpi, dst: &SplitEpi, top: &Morphism) -> Result<Morphism> {
    let mut pos = vec![usize::MAX; dst.a().order()];
    for (i, &a) in dst.k().map().iter().enumerate() {
        pos[a] = i;
    }
    let mut map = Vec::with_capacity(src.kernel().order());
    for &a in src.k().map() {
        let v = pos[top.apply(a)];
        if v == usize::MAX {
            return Err(IcatError::InvalidDiagram("top does not preserve kernels".into()));
        }
        map.push(v);
    }
    Ok(Morphism::unchecked(src.kernel(), dst.kernel(), map))
}

/// Split short five lemma on one diagram: with `restricted` and `bottom`
/// isomorphisms, reports whether `top` is one.
pub fn check_split_five_lemma(m: &PointMorphism) -> Result<bool> {
    if !m.restricted.is_iso() || !m.bottom.is_iso() {
        return Err(IcatError::InvalidDiagram(
            "kernel and base components must be isomorphisms".into(),
        ));
    }
    Ok(m.top.is_iso())
}

/// An isomorphism `φ: A → A'` of split epis over the same base, with
/// `α'φ = α` and `φβ = β'`.
pub fn point_isomorphism(p: &SplitEpi, q: &SplitEpi) -> Option<Morphism> {
    if p.b().as_ref() != q.b().as_ref() || p.a().order() != q.a().order() {
        return None;
    }
    let search = HomSearch {
        fixed: p
            .b()
            .elements()
            .map(|b| (p.beta().apply(b), q.beta().apply(b)))
            .collect(),
        ..HomSearch::isomorphisms()
    };
    let mut found = None;
    search.for_each(p.a(), q.a(), |phi| {
        if p.a().elements().all(|x| q.alpha().apply(phi[x]) == p.alpha().apply(x)) {
            found = Some(Morphism::unchecked(p.a(), q.a(), phi.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// The comparison `[k β]: K ⊔ B → A` of a split epi.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub morphism: Morphism,
    pub is_iso: bool,
}

pub fn comparison_iso(p: &SplitEpi) -> Result<Comparison> {
    let cp = Coproduct::new(p.kernel(), p.b())?;
    let morphism = cp.copair(p.k(), p.beta())?;
    let is_iso = morphism.is_iso();
    Ok(Comparison { morphism, is_iso })
}

/// Every split epi with `A` in the corpus of `kind` up to `max_size`, one per
/// isomorphism class of split epis with fixed `A` and `B` objects.
pub fn split_epis(kind: Kind, max_size: usize, exec: Exec) -> Result<Vec<SplitEpi>> {
    let objs = corpus::enumerate(kind, max_size)?.items;
    let pairs: Vec<(Obj, Obj)> = objs
        .iter()
        .flat_map(|a| {
            objs.iter()
                .filter(|b| {
                    b.order() <= a.order()
                        && (!a.kind().is_group() || a.order() % b.order() == 0)
                })
                .map(move |b| (a.clone(), b.clone()))
        })
        .collect();
    Ok(exec.flat_map(&pairs, |(a, b)| split_epis_between(a, b)))
}

/// Split epis `A → B` up to conjugation by `Aut(A) × Aut(B)`, in
/// lexicographic order of `(α, β)`.
pub fn split_epis_between(a: &Obj, b: &Obj) -> Vec<SplitEpi> {
    let auts_a = automorphisms(a);
    let auts_b = automorphisms(b);
    let inv_a: Vec<Morphism> = auts_a.iter().map(|m| m.inverse().unwrap()).collect();
    let inv_b: Vec<Morphism> = auts_b.iter().map(|m| m.inverse().unwrap()).collect();
    let alphas = HomSearch::all().collect(a, b);
    let betas = HomSearch::all().collect(b, a);
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for alpha in alphas.iter().filter(|al| al.is_surjective()) {
        for beta in &betas {
            if !alpha.after(beta).is_identity() {
                continue;
            }
            // canonical representative of the orbit
            let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
            for (phi, phi_inv) in auts_a.iter().zip(&inv_a) {
                for (psi, psi_inv) in auts_b.iter().zip(&inv_b) {
                    let al: Vec<usize> = phi_inv.map().iter().map(|&x| psi.apply(alpha.apply(x))).collect();
                    let be: Vec<usize> = psi_inv.map().iter().map(|&y| phi.apply(beta.apply(y))).collect();
                    let cand = (al, be);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            let key = best.unwrap();
            if seen.insert(key.clone()) {
                let alpha = Morphism::unchecked(a, b, key.0);
                let beta = Morphism::unchecked(b, a, key.1);
                out.push(SplitEpi::new(alpha, beta).expect("orbit of a split epi"));
            }
        }
    }
    out.sort_by_key(|p| p.sort_key());
    out
}

/// A diagram of split epis whose kernel and base components are isomorphisms
/// but whose middle component is not.
#[derive(Clone, Debug)]
pub struct A2Witness {
    pub morphism: PointMorphism,
}

impl A2Witness {
    pub fn sort_key(&self) -> (usize, Vec<usize>) {
        let m = &self.morphism;
        let mut key = m.src.sort_key();
        key.extend(m.dst.sort_key());
        key.extend(m.top.map());
        (m.src.a().order() + m.dst.a().order(), key)
    }

    /// Rebuilds the diagram from its raw parts and reports whether it still
    /// refutes the split short five lemma.
    pub fn replays(&self) -> bool {
        let m = &self.morphism;
        let rebuilt = SplitEpi::new(m.src.alpha().clone(), m.src.beta().clone()).and_then(|s| {
            let d = SplitEpi::new(m.dst.alpha().clone(), m.dst.beta().clone())?;
            PointMorphism::new(s, d, m.top.clone(), m.bottom.clone())
        });
        matches!(rebuilt.map(|pm| check_split_five_lemma(&pm)), Ok(Ok(false)))
    }
}

/// Options for [`search_a2_counterexample`].
#[derive(Clone, Copy, Debug)]
pub struct A2Search {
    /// Require non-trivial kernels and bases on both sides, excluding the
    /// degenerate witnesses where one split epi is an identity.
    pub proper: bool,
    pub exec: Exec,
}

impl Default for A2Search {
    fn default() -> Self {
        A2Search {
            proper: true,
            exec: Exec::default(),
        }
    }
}

/// Smallest counterexample to the split short five lemma with `|A|, |A'|` at
/// most `max_size`, ordered by `|A| + |A'|` and then lexicographically.
pub fn search_a2_counterexample(kind: Kind, max_size: usize, opts: A2Search) -> Result<Option<A2Witness>> {
    let mut points = split_epis(kind, max_size, opts.exec)?;
    if opts.proper {
        points.retain(|p| !p.kernel().is_trivial() && !p.b().is_trivial());
    }
    let mut pairs = Vec::new();
    for p in &points {
        for q in &points {
            if p.kernel().order() == q.kernel().order() && p.b().order() == q.b().order() {
                pairs.push((p.clone(), q.clone()));
            }
        }
    }
    pairs.sort_by_key(|(p, q)| p.a().order() + q.a().order());
    // scan groups of equal total size in order, stopping at the first group
    // that contains a witness
    let mut start = 0;
    while start < pairs.len() {
        let total = pairs[start].0.a().order() + pairs[start].1.a().order();
        let end = pairs[start..]
            .iter()
            .position(|(p, q)| p.a().order() + q.a().order() != total)
            .map_or(pairs.len(), |i| start + i);
        let found: Vec<A2Witness> = opts
            .exec
            .map(&pairs[start..end], |(p, q)| five_lemma_failures(p, q).into_iter().next())
            .into_iter()
            .flatten()
            .collect();
        if let Some(w) = found.into_iter().min_by_key(|w| w.sort_key()) {
            return Ok(Some(w));
        }
        start = end;
    }
    Ok(None)
}

/// All point morphisms `p → q` with isomorphic kernel and base components but
/// a non-isomorphic middle, in lexicographic order of the middle component.
pub fn five_lemma_failures(p: &SplitEpi, q: &SplitEpi) -> Vec<A2Witness> {
    let mut out = Vec::new();
    for_each_iso_edge_morphism(p, q, |m| {
        if !m.top.is_iso() {
            out.push(A2Witness { morphism: m });
        }
        ControlFlow::Continue(())
    });
    out
}

/// Counts point morphisms `p → q` whose kernel and base components are
/// isomorphisms, and how many of them have an isomorphic middle component.
pub fn five_lemma_census(p: &SplitEpi, q: &SplitEpi) -> (usize, usize) {
    let (mut total, mut iso) = (0, 0);
    for_each_iso_edge_morphism(p, q, |m| {
        total += 1;
        iso += usize::from(m.top.is_iso());
        ControlFlow::Continue(())
    });
    (total, iso)
}

fn for_each_iso_edge_morphism<F>(p: &SplitEpi, q: &SplitEpi, mut f: F)
where
    F: FnMut(PointMorphism) -> ControlFlow<()>,
{
    if p.kernel().order() != q.kernel().order() || p.b().order() != q.b().order() {
        return;
    }
    HomSearch::all().for_each(p.a(), q.a(), |h| {
        let top = Morphism::unchecked(p.a(), q.a(), h.to_vec());
        // the base component is forced: g = α' h β
        let bottom = q.alpha().after(&top).after(p.beta());
        if !bottom.is_iso() {
            return ControlFlow::Continue(());
        }
        match PointMorphism::new(p.clone(), q.clone(), top, bottom) {
            Ok(m) if m.restricted.is_iso() => f(m),
            _ => ControlFlow::Continue(()),
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::obj;
    use crate::structure::{named, Structure};

    fn ps(n: usize) -> Obj {
        obj(Structure::pointed_set(n))
    }

    #[test]
    fn t_of_two_pointed_sets() {
        let (p, _) = functor_t(&ps(2), &ps(2)).unwrap();
        assert_eq!(p.a().order(), 3);
        assert_eq!(p.alpha().map(), &[0, 0, 1]);
        let (k, b) = functor_s(&p);
        assert_eq!((k.order(), b.order()), (2, 2));
    }

    #[test]
    fn not_split_is_rejected() {
        let z2 = obj(Structure::cyclic(2, Kind::Group));
        let zero = Morphism::zero(&z2, &z2).unwrap();
        assert_eq!(
            SplitEpi::new(zero.clone(), zero).unwrap_err(),
            IcatError::NotSplit
        );
    }

    #[test]
    fn kernel_of_sign_split_by_a_transposition() {
        let s3 = obj(named::s3());
        let z2 = obj(Structure::cyclic(2, Kind::Group));
        let sign = Morphism::new(&s3, &z2, vec![0, 1, 1, 1, 0, 0]).unwrap();
        let beta = Morphism::new(&z2, &s3, vec![0, 1]).unwrap();
        let p = SplitEpi::new(sign, beta).unwrap();
        let (k, _) = functor_s(&p);
        assert!(crate::homs::isomorphic(&k, &obj(Structure::cyclic(3, Kind::Group))));
        assert!(SplitEpi::identity(&z2).kernel().is_trivial());
    }

    #[test]
    fn pointed_product_projection_comparison_is_not_iso() {
        let p4 = ps(4);
        let p2 = ps(2);
        // X × B with X = B = {0, 1}: (x, b) at 2x + b, projection to b
        let alpha = Morphism::new(&p4, &p2, vec![0, 1, 0, 1]).unwrap();
        let beta = Morphism::new(&p2, &p4, vec![0, 1]).unwrap();
        let p = SplitEpi::new(alpha, beta).unwrap();
        let c = comparison_iso(&p).unwrap();
        assert!(!c.is_iso);
        assert_eq!(c.morphism.source().order(), 3);
        let (t, _) = functor_t(&ps(3), &ps(2)).unwrap();
        assert!(comparison_iso(&t).unwrap().is_iso);
    }

    #[test]
    fn identity_diagram_satisfies_five_lemma() {
        let (p, _) = functor_t(&ps(3), &ps(2)).unwrap();
        assert!(check_split_five_lemma(&PointMorphism::identity(&p)).unwrap());
    }

    #[test]
    fn a1_in_small_pointed_sets() {
        let sources = test_sources(Kind::PointedSet, 4);
        assert!(check_a1(&ps(3), &ps(2), &sources).unwrap());
        let s3 = obj(named::s3());
        assert!(matches!(
            check_a1(&s3, &s3, &sources),
            Err(IcatError::UnsupportedCoproduct(_))
        ));
    }

    #[test]
    fn split_epis_of_z2() {
        let z2 = obj(Structure::cyclic(2, Kind::Group));
        let v4 = obj(named::cyclic_product(&[2, 2], Kind::Group));
        // V4 → Z2: up to automorphisms there is a single split epi
        assert_eq!(split_epis_between(&v4, &z2).len(), 1);
        assert_eq!(split_epis_between(&z2, &z2).len(), 1);
    }
}
