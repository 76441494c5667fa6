//! Reflexive graphs and precategories of finite abelian groups, classified by
//! morphisms and by 2-chain complexes.
//!
//! Every identification comes with an explicit isomorphism that is checked
//! by composing arrows, never assumed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::corpus;
use crate::error::{IcatError, Result};
use crate::graphs::{precategory_from_presentation, Precategory, Presentation, ReflexiveGraph};
use crate::homs::homs;
use crate::morphism::Morphism;
use crate::ops::{kernel, Coproduct, Product};
use crate::par::Exec;
use crate::structure::{Kind, Obj};
use crate::verdict::{first_difference, Verdict};

fn require_abelian(objs: &[&Obj]) -> Result<()> {
    match objs.iter().find(|o| o.kind() != Kind::AbelianGroup) {
        Some(o) => Err(IcatError::KindMismatch(o.kind(), Kind::AbelianGroup)),
        None => Ok(()),
    }
}

/// `(X ⊕ B, π₂, [h 1], ι₂)`.
pub fn rg_from_morphism(h: &Morphism) -> Result<ReflexiveGraph> {
    require_abelian(&[h.source(), h.target()])?;
    crate::graphs::coproduct_graph(h).map(|(g, _)| g)
}

/// The comparison `[k β]: K ⊕ B → A` of a split epi `(α, β)` of abelian
/// groups, with `K = ker α`.
#[derive(Clone, Debug)]
pub struct BiproductComparison {
    pub kernel: Obj,
    pub k: Morphism,
    pub product: Product,
    pub morphism: Morphism,
}

impl BiproductComparison {
    pub fn new(alpha: &Morphism, beta: &Morphism) -> Result<BiproductComparison> {
        let (kernel, k) = kernel(alpha);
        let a = alpha.source();
        let product = Product::new(&kernel, beta.source())?;
        let morphism = Morphism::from_fn(&product.object, a, |p| {
            let (x, b) = product.split(p);
            a.op(k.apply(x), beta.apply(b))
        });
        let cmp = BiproductComparison {
            kernel,
            k,
            product,
            morphism,
        };
        let v = cmp.verify(alpha, beta);
        if !v.passed() {
            return Err(IcatError::ComparisonNotIso(format!("{v}; {:?}", cmp.morphism)));
        }
        Ok(cmp)
    }

    /// `[k β]` is an isomorphism, `α[k β] = π₂`, `[k β]ι₁ = k` and `[k β]ι₂ = β`.
    pub fn verify(&self, alpha: &Morphism, beta: &Morphism) -> Verdict {
        let mut v = Verdict::new();
        let m = &self.morphism;
        let (i1, i2) = self.product.injections();
        let n = self.product.object.order();
        v.check("[k b] is a morphism", || m.validate().err().map(|_| vec![]));
        v.check("[k b] is bijective", || (!m.is_iso()).then(Vec::new));
        v.check("a[k b]=p2", || first_difference(n, |p| alpha.apply(m.apply(p)), |p| self.product.p2.apply(p)));
        v.check("[k b]i1=k", || {
            first_difference(self.kernel.order(), |x| m.apply(i1.apply(x)), |x| self.k.apply(x))
        });
        v.check("[k b]i2=b", || {
            first_difference(beta.source().order(), |b| m.apply(i2.apply(b)), |b| beta.apply(b))
        });
        v
    }

    /// Position of `a` in the kernel, if it lies there.
    pub fn kernel_index(&self, a: usize) -> Option<usize> {
        self.k.map().iter().position(|&v| v == a)
    }
}

/// Evidence that a graph is `rg_from_morphism(h)` up to the comparison.
#[derive(Clone, Debug)]
pub struct GraphCertificate {
    pub comparison: BiproductComparison,
}

impl GraphCertificate {
    /// Re-checks every square: the comparison is an isomorphism of split
    /// epis and carries `[h 1]` to `c`.
    pub fn verify(&self, g: &ReflexiveGraph, h: &Morphism) -> Verdict {
        let cmp = &self.comparison;
        let mut v = cmp.verify(&g.d, &g.e);
        let m = &cmp.morphism;
        let p = &cmp.product;
        let b = g.c0();
        v.check("c[k e]=[h 1]", || {
            first_difference(
                p.object.order(),
                |q| g.c.apply(m.apply(q)),
                |q| {
                    let (x, y) = p.split(q);
                    b.op(h.apply(x), y)
                },
            )
        });
        v
    }
}

/// `h = c k` for `k = ker d`, with the comparison `[k e]` as certificate.
pub fn morphism_from_rg(g: &ReflexiveGraph) -> Result<(Morphism, GraphCertificate)> {
    require_abelian(&[g.c0(), g.c1()])?;
    let v = g.validate();
    if !v.passed() {
        return Err(IcatError::InvalidDiagram(format!("reflexive graph: {v}")));
    }
    let comparison = BiproductComparison::new(&g.d, &g.e)?;
    let h = g.c.after(&comparison.k);
    let cert = GraphCertificate { comparison };
    let v = cert.verify(g, &h);
    if !v.passed() {
        return Err(IcatError::ComparisonNotIso(v.to_string()));
    }
    Ok((h, cert))
}

/// `Z →t X →h B` with `ht = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoChain {
    pub t: Morphism,
    pub h: Morphism,
}

impl TwoChain {
    pub fn new(t: Morphism, h: Morphism) -> Result<TwoChain> {
        if t.target().as_ref() != h.source().as_ref() {
            return Err(IcatError::InvalidDiagram("t and h are not composable".into()));
        }
        require_abelian(&[t.source(), t.target(), h.target()])?;
        t.validate()?;
        h.validate()?;
        if let Some(z) = t.source().elements().find(|&z| h.apply(t.apply(z)) != 0) {
            return Err(IcatError::ChainConditionViolated(z));
        }
        Ok(TwoChain { t, h })
    }

    pub fn z(&self) -> &Obj {
        self.t.source()
    }

    pub fn x(&self) -> &Obj {
        self.h.source()
    }

    pub fn b(&self) -> &Obj {
        self.h.target()
    }

    /// `a = π₂`, `u = [t 1]` and `s = ι₂` on `Y = Z ⊕ X`.
    pub fn presentation(&self) -> Result<Presentation> {
        let (z, x) = (self.z(), self.x());
        let y = Product::new(z, x)?;
        let a = y.p2.clone();
        let u = Morphism::from_fn(&y.object, x, |q| {
            let (zz, xx) = y.split(q);
            x.op(self.t.apply(zz), xx)
        });
        let s = y.injections().1;
        Presentation::new(a, u, s, self.h.clone())
    }
}

/// The precategory on `(Z ⊕ X) ⊕ (X ⊕ B)` with `m = [ι₁[t 1], 1]`.
pub fn precat_from_2chain(ch: &TwoChain) -> Result<Precategory> {
    if let Some(z) = ch.z().elements().find(|&z| ch.h.apply(ch.t.apply(z)) != 0) {
        return Err(IcatError::ChainConditionViolated(z));
    }
    precategory_from_presentation(&ch.presentation()?)
}

/// Level-wise isomorphisms `φ₀, φ₁, φ₂` from one precategory to another.
#[derive(Clone, Debug)]
pub struct PrecategoryIso {
    pub phi0: Morphism,
    pub phi1: Morphism,
    pub phi2: Morphism,
}

impl PrecategoryIso {
    /// Every component is bijective and every structure arrow commutes with
    /// the components.
    pub fn verify(&self, src: &Precategory, dst: &Precategory) -> Verdict {
        let mut v = Verdict::new();
        let (f0, f1, f2) = (&self.phi0, &self.phi1, &self.phi2);
        for (name, f) in [("phi0", f0), ("phi1", f1), ("phi2", f2)] {
            v.check(&format!("{name} is an isomorphism"), || {
                (f.validate().is_err() || !f.is_iso()).then(Vec::new)
            });
        }
        if !v.passed() {
            return v;
        }
        let (sg, dg) = (&src.graph, &dst.graph);
        let n0 = src.c0().order();
        let n1 = src.c1().order();
        let n2 = src.c2().order();
        let down = |a: &Morphism, b: &Morphism, fs: &Morphism, ft: &Morphism, n: usize| {
            first_difference(n, |x| ft.apply(a.apply(x)), |x| b.apply(fs.apply(x)))
        };
        v.check("d", || down(&sg.d, &dg.d, f1, f0, n1));
        v.check("c", || down(&sg.c, &dg.c, f1, f0, n1));
        v.check("e", || down(&sg.e, &dg.e, f0, f1, n0));
        v.check("p1", || down(&src.p1, &dst.p1, f2, f1, n2));
        v.check("p2", || down(&src.p2, &dst.p2, f2, f1, n2));
        v.check("m", || down(&src.m, &dst.m, f2, f1, n2));
        v.check("e1", || down(&src.e1, &dst.e1, f1, f2, n1));
        v.check("e2", || down(&src.e2, &dst.e2, f1, f2, n1));
        v
    }
}

/// Evidence that a precategory is `precat_from_2chain` of the extracted chain.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub graph: GraphCertificate,
    pub composition: BiproductComparison,
    pub presentation: Presentation,
    /// From `precat_from_2chain(chain)` to the input.
    pub iso: PrecategoryIso,
}

/// Extracts `(a, u, s, h)` through the two comparisons, then `Z = ker a`
/// and `t = u` restricted to `Z`.
pub fn chain_from_precat(p: &Precategory) -> Result<(TwoChain, ChainCertificate)> {
    require_abelian(&[p.c0(), p.c1(), p.c2()])?;
    let v = p.validate();
    if !v.passed() {
        return Err(IcatError::InvalidDiagram(format!("precategory: {v}")));
    }
    let (h, graph) = morphism_from_rg(&p.graph)?;
    let composition = BiproductComparison::new(&p.p2, &p.e2)?;
    let k = &graph.comparison;
    let (x, y) = (&k.kernel, &composition.kernel);
    let ky = &composition.k;
    let into = |f: &Morphism, from: &Obj, to: &BiproductComparison, what: &str| -> Result<Morphism> {
        let map = from
            .elements()
            .map(|e| to.kernel_index(f.apply(e)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| IcatError::InvalidDiagram(format!("{what} leaves the kernel")))?;
        Ok(Morphism::unchecked(from, &to.kernel, map))
    };
    let a = into(&p.p1.after(ky), y, k, "p1 on ker p2")?;
    let u = into(&p.m.after(ky), y, k, "m on ker p2")?;
    let s = into(&p.e1.after(&k.k), x, &composition, "e1 on ker d")?;
    let presentation = Presentation::new(a, u, s, h.clone())?;
    let (z, incl) = kernel(&presentation.a);
    let t = presentation.u.after(&incl);
    let chain = TwoChain::new(t, h)?;

    let q = precat_from_2chain(&chain)?;
    let phi0 = Morphism::identity(p.c0()).retarget(q.c0(), p.c0());
    let phi1 = k.morphism.retarget(q.c1(), p.c1());
    // (Z ⊕ X) ⊕ (X ⊕ B) → C₂, ((z, x), w) ↦ [k_Y e₂](incl z + s x, φ₁ w)
    let zx = Product::new(&z, x)?;
    let outer = Product::new(&zx.object, q.c1())?;
    let c2 = p.c2();
    let phi2 = Morphism::from_fn(q.c2(), c2, |r| {
        let (yy, w) = outer.split(r);
        let (zz, xx) = zx.split(yy);
        let yv = y.op(incl.apply(zz), presentation.s.apply(xx));
        c2.op(ky.apply(yv), p.e2.apply(phi1.apply(w)))
    });
    let iso = PrecategoryIso { phi0, phi1, phi2 };
    let v = iso.verify(&q, p);
    if !v.passed() {
        return Err(IcatError::ComparisonNotIso(v.to_string()));
    }
    Ok((
        chain,
        ChainCertificate {
            graph,
            composition,
            presentation,
            iso,
        },
    ))
}

/// A morphism of arrows `(f, g)` from `h: X → B` to `h': X' → B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowMap {
    pub f: Morphism,
    pub g: Morphism,
}

impl ArrowMap {
    pub fn new(h: &Morphism, h2: &Morphism, f: Morphism, g: Morphism) -> Result<ArrowMap> {
        if h2.after(&f) != g.after(h) {
            return Err(IcatError::InvalidDiagram("h' f != g h".into()));
        }
        Ok(ArrowMap { f, g })
    }

    pub fn then(&self, next: &ArrowMap) -> ArrowMap {
        ArrowMap {
            f: next.f.after(&self.f),
            g: next.g.after(&self.g),
        }
    }
}

/// Every morphism of arrows from `h` to `h2`.
pub fn arrow_maps(h: &Morphism, h2: &Morphism) -> Vec<ArrowMap> {
    let gs = homs(h.target(), h2.target());
    homs(h.source(), h2.source())
        .into_iter()
        .flat_map(|f| gs.iter().map(move |g| (f.clone(), g.clone())))
        .filter_map(|(f, g)| ArrowMap::new(h, h2, f, g).ok())
        .collect()
}

/// A morphism of reflexive graphs `(f₁, f₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    pub f1: Morphism,
    pub f0: Morphism,
}

impl GraphMap {
    pub fn validate(&self, src: &ReflexiveGraph, dst: &ReflexiveGraph) -> Verdict {
        let mut v = Verdict::new();
        let (f1, f0) = (&self.f1, &self.f0);
        let n1 = src.c1().order();
        v.check("f0 d = d' f1", || first_difference(n1, |x| f0.apply(src.d.apply(x)), |x| dst.d.apply(f1.apply(x))));
        v.check("f0 c = c' f1", || first_difference(n1, |x| f0.apply(src.c.apply(x)), |x| dst.c.apply(f1.apply(x))));
        v.check("f1 e = e' f0", || {
            first_difference(src.c0().order(), |b| f1.apply(src.e.apply(b)), |b| dst.e.apply(f0.apply(b)))
        });
        v
    }

    pub fn then(&self, next: &GraphMap) -> GraphMap {
        GraphMap {
            f1: next.f1.after(&self.f1),
            f0: next.f0.after(&self.f0),
        }
    }
}

/// `(f, g) ↦ (f ⊕ g, g)` between `rg_from_morphism(h)` and `rg_from_morphism(h2)`.
pub fn rg_map(h: &Morphism, h2: &Morphism, m: &ArrowMap) -> Result<GraphMap> {
    let src = Coproduct::new(h.source(), h.target())?;
    let dst = Coproduct::new(h2.source(), h2.target())?;
    Ok(GraphMap {
        f1: src.map_to(&dst, &m.f, &m.g)?,
        f0: m.g.clone(),
    })
}

/// `(f₁, f₀) ↦ (f₁ restricted to kernels, f₀)`.
pub fn arrow_map_of(src: &ReflexiveGraph, dst: &ReflexiveGraph, m: &GraphMap) -> Result<ArrowMap> {
    let (_, cs) = morphism_from_rg(src)?;
    let (_, cd) = morphism_from_rg(dst)?;
    let (ks, kd) = (&cs.comparison, &cd.comparison);
    let f = ks
        .kernel
        .elements()
        .map(|x| kd.kernel_index(m.f1.apply(ks.k.apply(x))))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| IcatError::InvalidDiagram("f1 does not preserve kernels".into()))?;
    Ok(ArrowMap {
        f: Morphism::unchecked(&ks.kernel, &kd.kernel, f),
        g: m.f0.clone(),
    })
}

/// A morphism of 2-chains `(f_Z, f_X, f_B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub fz: Morphism,
    pub fx: Morphism,
    pub fb: Morphism,
}

impl ChainMap {
    pub fn new(src: &TwoChain, dst: &TwoChain, fz: Morphism, fx: Morphism, fb: Morphism) -> Result<ChainMap> {
        if dst.t.after(&fz) != fx.after(&src.t) || dst.h.after(&fx) != fb.after(&src.h) {
            return Err(IcatError::InvalidDiagram("chain map squares do not commute".into()));
        }
        Ok(ChainMap { fz, fx, fb })
    }

    pub fn then(&self, next: &ChainMap) -> ChainMap {
        ChainMap {
            fz: next.fz.after(&self.fz),
            fx: next.fx.after(&self.fx),
            fb: next.fb.after(&self.fb),
        }
    }
}

/// The level maps `((f_Z ⊕ f_X) ⊕ (f_X ⊕ f_B), f_X ⊕ f_B, f_B)`.
pub fn pc_map(src: &TwoChain, dst: &TwoChain, m: &ChainMap) -> Result<(Morphism, Morphism, Morphism)> {
    let ys = Product::new(src.z(), src.x())?;
    let yd = Product::new(dst.z(), dst.x())?;
    let c1s = Product::new(src.x(), src.b())?;
    let c1d = Product::new(dst.x(), dst.b())?;
    let fy = ys.map_to(&yd, &m.fz, &m.fx);
    let f1 = c1s.map_to(&c1d, &m.fx, &m.fb);
    let c2s = Product::new(&ys.object, &c1s.object)?;
    let c2d = Product::new(&yd.object, &c1d.object)?;
    let f2 = c2s.map_to(&c2d, &fy, &f1);
    Ok((f2, f1, m.fb.clone()))
}

/// Every morphism `X → B` with `X`, `B` abelian of order at most `max_order`.
pub fn arrows(max_order: usize) -> Result<Vec<Morphism>> {
    let objs = corpus::enumerate(Kind::AbelianGroup, max_order)?.items;
    Ok(objs
        .iter()
        .flat_map(|x| objs.iter().flat_map(move |b| homs(x, b)))
        .collect())
}

/// Every 2-chain with all three groups of order at most `max_order` and
/// `|Z| |X|² |B| ≤ max_top`.
pub fn chains(max_order: usize, max_top: usize, exec: Exec) -> Result<Vec<TwoChain>> {
    let objs = corpus::enumerate(Kind::AbelianGroup, max_order)?.items;
    let mut triples = Vec::new();
    for z in &objs {
        for x in &objs {
            for b in &objs {
                if z.order() * x.order() * x.order() * b.order() <= max_top {
                    triples.push((z.clone(), x.clone(), b.clone()));
                }
            }
        }
    }
    Ok(exec.flat_map(&triples, |(z, x, b)| {
        let ts = homs(z, x);
        homs(x, b)
            .into_iter()
            .flat_map(|h| {
                ts.iter()
                    .filter_map(move |t| TwoChain::new(t.clone(), h.clone()).ok())
                    .collect::<Vec<_>>()
            })
            .collect()
    }))
}

/// A uniformly random bijection of `0..n` fixing 0.
pub fn random_pointed_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    std::iter::once(0).chain(rest).collect()
}

/// Renumbers all three levels of `p` at random.
pub fn shuffle_precategory<R: Rng>(p: &Precategory, rng: &mut R) -> Precategory {
    let p0 = random_pointed_permutation(p.c0().order(), rng);
    let p1 = random_pointed_permutation(p.c1().order(), rng);
    let p2 = random_pointed_permutation(p.c2().order(), rng);
    p.relabel(&p0, &p1, &p2)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::structure::Structure;

    fn z(n: usize) -> Obj {
        Arc::new(Structure::cyclic(n, Kind::AbelianGroup))
    }

    #[test]
    fn rg_of_identity_on_z2() {
        let h = Morphism::identity(&z(2));
        let g = rg_from_morphism(&h).unwrap();
        // (x, b) at 2x + b, c(x, b) = x + b
        assert_eq!(g.c.map(), &[0, 1, 1, 0]);
        let (back, cert) = morphism_from_rg(&g).unwrap();
        assert_eq!(back, h);
        assert!(cert.verify(&g, &back).passed());
    }

    #[test]
    fn zero_morphism_gives_c_equal_d() {
        let h = Morphism::zero(&z(2), &z(2)).unwrap();
        let g = rg_from_morphism(&h).unwrap();
        assert_eq!(g.c, g.d);
        assert!(morphism_from_rg(&g).unwrap().0.is_zero());
    }

    #[test]
    fn group_kind_rejected() {
        let x = Arc::new(Structure::cyclic(2, Kind::Group));
        let h = Morphism::identity(&x);
        assert!(matches!(rg_from_morphism(&h), Err(IcatError::KindMismatch(..))));
    }

    #[test]
    fn chain_condition_enforced() {
        let id = Morphism::identity(&z(2));
        assert_eq!(TwoChain::new(id.clone(), id), Err(IcatError::ChainConditionViolated(1)));
    }

    #[test]
    fn chain_round_trip_small() {
        let t = Morphism::identity(&z(2));
        let h = Morphism::zero(&z(2), &z(2)).unwrap();
        let ch = TwoChain::new(t, h).unwrap();
        let p = precat_from_2chain(&ch).unwrap();
        // 16 elements on top but only 8 composable pairs
        assert!(!p.is_internal_category().is_pullback);
        let (back, cert) = chain_from_precat(&p).unwrap();
        assert_eq!(back, ch);
        assert!(cert.iso.verify(&precat_from_2chain(&back).unwrap(), &p).passed());
    }

    #[test]
    fn degenerate_precategory_gives_zero_chain() {
        let b = z(3);
        let (ch, _) = chain_from_precat(&Precategory::degenerate(&b)).unwrap();
        assert_eq!(ch.z().order(), 1);
        assert_eq!(ch.x().order(), 1);
        assert_eq!(ch.b().as_ref(), b.as_ref());
    }
}
