//! Internal reflexive graphs and precategories, the inclusion `V` of graphs
//! into precategories and its reflection `U`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::epic::jointly_epic;
use crate::error::{IcatError, Result};
use crate::morphism::Morphism;
use crate::ops::{Coequalizer, Coproduct, Product};
use crate::points::{comparison_iso, point_isomorphism, SplitEpi};
use crate::structure::Obj;
use crate::verdict::{first_difference, Verdict};

/// `d, c: C₁ → C₀` with common section `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexiveGraph {
    pub d: Morphism,
    pub c: Morphism,
    pub e: Morphism,
}

impl ReflexiveGraph {
    pub fn new(d: Morphism, c: Morphism, e: Morphism) -> Result<ReflexiveGraph> {
        let g = ReflexiveGraph::from_parts(d, c, e)?;
        let v = g.validate();
        if !v.passed() {
            return Err(IcatError::InvalidDiagram(format!("reflexive graph: {v}")));
        }
        Ok(g)
    }

    /// Checks only that the arrows have matching ends.
    pub fn from_parts(d: Morphism, c: Morphism, e: Morphism) -> Result<ReflexiveGraph> {
        let ok = d.source().as_ref() == c.source().as_ref()
            && d.target().as_ref() == c.target().as_ref()
            && e.source().as_ref() == d.target().as_ref()
            && e.target().as_ref() == d.source().as_ref();
        if !ok {
            return Err(IcatError::InvalidDiagram("graph arrows have mismatched ends".into()));
        }
        Ok(ReflexiveGraph { d, c, e })
    }

    pub fn c1(&self) -> &Obj {
        self.d.source()
    }

    pub fn c0(&self) -> &Obj {
        self.d.target()
    }

    pub fn validate(&self) -> Verdict {
        let mut v = Verdict::new();
        for (name, f) in [("d", &self.d), ("c", &self.c), ("e", &self.e)] {
            v.check(&format!("{name} is a morphism"), || f.validate().err().map(|_| vec![]));
        }
        let n0 = self.c0().order();
        v.check("de=1", || first_difference(n0, |x| self.d.apply(self.e.apply(x)), |x| x));
        v.check("ce=1", || first_difference(n0, |x| self.c.apply(self.e.apply(x)), |x| x));
        v
    }

    /// The split epi `(C₁, d, e, C₀)`.
    pub fn domain_point(&self) -> Result<SplitEpi> {
        SplitEpi::new(self.d.clone(), self.e.clone())
    }
}

/// A reflexive graph with a composition level `C₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precategory {
    pub graph: ReflexiveGraph,
    pub p1: Morphism,
    pub p2: Morphism,
    pub e1: Morphism,
    pub e2: Morphism,
    pub m: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalCategoryVerdict {
    pub is_pullback: bool,
    /// `None` when the square is not a pullback.
    pub is_associative: Option<bool>,
    pub witness: Option<Vec<usize>>,
}

impl Precategory {
    /// Checked constructor: fails unless every law holds.
    pub fn new(
        graph: ReflexiveGraph,
        p1: Morphism,
        p2: Morphism,
        e1: Morphism,
        e2: Morphism,
        m: Morphism,
    ) -> Result<Precategory> {
        let p = Precategory::from_parts(graph, p1, p2, e1, e2, m)?;
        let v = p.validate();
        if !v.passed() {
            return Err(IcatError::InvalidDiagram(format!("precategory: {v}")));
        }
        Ok(p)
    }

    /// Checks only that every arrow has the expected ends.
    pub fn from_parts(
        graph: ReflexiveGraph,
        p1: Morphism,
        p2: Morphism,
        e1: Morphism,
        e2: Morphism,
        m: Morphism,
    ) -> Result<Precategory> {
        let c1 = graph.c1().clone();
        let c2 = p1.source().clone();
        let ends = |f: &Morphism, s: &Obj, t: &Obj| {
            f.source().as_ref() == s.as_ref() && f.target().as_ref() == t.as_ref()
        };
        let ok = ends(&p1, &c2, &c1)
            && ends(&p2, &c2, &c1)
            && ends(&m, &c2, &c1)
            && ends(&e1, &c1, &c2)
            && ends(&e2, &c1, &c2);
        if !ok {
            return Err(IcatError::InvalidDiagram("precategory arrows have mismatched ends".into()));
        }
        Ok(Precategory {
            graph,
            p1,
            p2,
            e1,
            e2,
            m,
        })
    }

    /// `C₂ = C₁ = C₀ = B` with every arrow the identity.
    pub fn degenerate(b: &Obj) -> Precategory {
        let id = Morphism::identity(b);
        let g = ReflexiveGraph::new(id.clone(), id.clone(), id.clone()).unwrap();
        Precategory::new(g, id.clone(), id.clone(), id.clone(), id.clone(), id).unwrap()
    }

    pub fn c0(&self) -> &Obj {
        self.graph.c0()
    }

    pub fn c1(&self) -> &Obj {
        self.graph.c1()
    }

    pub fn c2(&self) -> &Obj {
        self.p1.source()
    }

    /// Checks every morphism and law elementwise, recording the first witness
    /// of each violated law.
    pub fn validate(&self) -> Verdict {
        let g = &self.graph;
        let (d, c, e) = (&g.d, &g.c, &g.e);
        let (p1, p2, e1, e2, m) = (&self.p1, &self.p2, &self.e1, &self.e2, &self.m);
        let mut v = g.validate();
        for (name, f) in [("p1", p1), ("p2", p2), ("e1", e1), ("e2", e2), ("m", m)] {
            v.check(&format!("{name} is a morphism"), || f.validate().err().map(|_| vec![]));
        }
        let n0 = self.c0().order();
        let n1 = self.c1().order();
        let n2 = self.c2().order();
        v.check("p1e1=1", || first_difference(n1, |x| p1.apply(e1.apply(x)), |x| x));
        v.check("p2e2=1", || first_difference(n1, |x| p2.apply(e2.apply(x)), |x| x));
        v.check("dp1=cp2", || first_difference(n2, |z| d.apply(p1.apply(z)), |z| c.apply(p2.apply(z))));
        v.check("p1e2=ec", || first_difference(n1, |x| p1.apply(e2.apply(x)), |x| e.apply(c.apply(x))));
        v.check("p2e1=ed", || first_difference(n1, |x| p2.apply(e1.apply(x)), |x| e.apply(d.apply(x))));
        v.check("e1e=e2e", || first_difference(n0, |x| e1.apply(e.apply(x)), |x| e2.apply(e.apply(x))));
        v.check("dm=dp2", || first_difference(n2, |z| d.apply(m.apply(z)), |z| d.apply(p2.apply(z))));
        v.check("cm=cp1", || first_difference(n2, |z| c.apply(m.apply(z)), |z| c.apply(p1.apply(z))));
        v.check("me1=1", || first_difference(n1, |x| m.apply(e1.apply(x)), |x| x));
        v.check("me2=1", || first_difference(n1, |x| m.apply(e2.apply(x)), |x| x));
        v
    }

    /// For each composable pair `(x, y)` (with `d x = c y`), the unique `z` with
    /// `π₁ z = x` and `π₂ z = y`; `Err` carries a witness when `(π₁, π₂)` is
    /// not a bijection onto composable pairs.
    pub fn pair_index(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let n1 = self.c1().order();
        let mut index = vec![usize::MAX; n1 * n1];
        for z in self.c2().elements() {
            let (x, y) = (self.p1.apply(z), self.p2.apply(z));
            let slot = &mut index[x * n1 + y];
            if *slot != usize::MAX {
                return Err(vec![*slot, z]);
            }
            *slot = z;
        }
        for x in 0..n1 {
            for y in 0..n1 {
                let composable = self.graph.d.apply(x) == self.graph.c.apply(y);
                let present = index[x * n1 + y] != usize::MAX;
                if composable != present {
                    return Err(vec![x, y]);
                }
            }
        }
        Ok(index)
    }

    /// Pullback test, then associativity over composable triples.
    pub fn is_internal_category(&self) -> InternalCategoryVerdict {
        let index = match self.pair_index() {
            Ok(ix) => ix,
            Err(w) => {
                return InternalCategoryVerdict {
                    is_pullback: false,
                    is_associative: None,
                    witness: Some(w),
                }
            }
        };
        let n1 = self.c1().order();
        let comp = |x: usize, y: usize| self.m.apply(index[x * n1 + y]);
        let (d, c) = (&self.graph.d, &self.graph.c);
        for x in 0..n1 {
            for y in (0..n1).filter(|&y| d.apply(x) == c.apply(y)) {
                let xy = comp(x, y);
                for z in (0..n1).filter(|&z| d.apply(y) == c.apply(z)) {
                    if comp(x, comp(y, z)) != comp(xy, z) {
                        return InternalCategoryVerdict {
                            is_pullback: true,
                            is_associative: Some(false),
                            witness: Some(vec![x, y, z]),
                        };
                    }
                }
            }
        }
        InternalCategoryVerdict {
            is_pullback: true,
            is_associative: Some(true),
            witness: None,
        }
    }

    /// Left and right identity laws of the composition defined by `m`; only
    /// meaningful for pullback precategories.
    pub fn composition_is_unital(&self) -> Option<bool> {
        let index = self.pair_index().ok()?;
        let n1 = self.c1().order();
        let g = &self.graph;
        Some((0..n1).all(|x| {
            let right = self.m.apply(index[x * n1 + g.e.apply(g.d.apply(x))]);
            let left = self.m.apply(index[g.e.apply(g.c.apply(x)) * n1 + x]);
            right == x && left == x
        }))
    }

    /// The split epi `(C₂, π₂, e₂, C₁)`.
    pub fn composition_point(&self) -> Result<SplitEpi> {
        SplitEpi::new(self.p2.clone(), self.e2.clone())
    }

    /// Renumbers every level through bijections fixing 0 (old index to new).
    pub fn relabel(&self, perm0: &[usize], perm1: &[usize], perm2: &[usize]) -> Precategory {
        let o0 = Arc::new(self.c0().relabel(perm0));
        let o1 = Arc::new(self.c1().relabel(perm1));
        let o2 = Arc::new(self.c2().relabel(perm2));
        let tr = |f: &Morphism, ps: &[usize], pt: &[usize], s: &Obj, t: &Obj| {
            let mut map = vec![0; f.map().len()];
            for (x, &y) in f.map().iter().enumerate() {
                map[ps[x]] = pt[y];
            }
            Morphism::unchecked(s, t, map)
        };
        let graph = ReflexiveGraph {
            d: tr(&self.graph.d, perm1, perm0, &o1, &o0),
            c: tr(&self.graph.c, perm1, perm0, &o1, &o0),
            e: tr(&self.graph.e, perm0, perm1, &o0, &o1),
        };
        Precategory {
            graph,
            p1: tr(&self.p1, perm2, perm1, &o2, &o1),
            p2: tr(&self.p2, perm2, perm1, &o2, &o1),
            e1: tr(&self.e1, perm1, perm2, &o1, &o2),
            e2: tr(&self.e2, perm1, perm2, &o1, &o2),
            m: tr(&self.m, perm2, perm1, &o2, &o1),
        }
    }
}

/// The data `a, u: Y → X`, `s: X → Y`, `h: X → B` with `as = 1 = us` and
/// `ha = hu`, from which a precategory over coproduct projections is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub a: Morphism,
    pub u: Morphism,
    pub s: Morphism,
    pub h: Morphism,
}

impl Presentation {
    pub fn new(a: Morphism, u: Morphism, s: Morphism, h: Morphism) -> Result<Presentation> {
        let p = Presentation { a, u, s, h };
        let ends = p.a.source().as_ref() == p.u.source().as_ref()
            && p.a.target().as_ref() == p.u.target().as_ref()
            && p.s.source().as_ref() == p.a.target().as_ref()
            && p.s.target().as_ref() == p.a.source().as_ref()
            && p.h.source().as_ref() == p.a.target().as_ref();
        if !ends {
            return Err(IcatError::InvalidDiagram("presentation arrows have mismatched ends".into()));
        }
        for f in [&p.a, &p.u, &p.s, &p.h] {
            f.validate()?;
        }
        if !p.a.after(&p.s).is_identity() || !p.u.after(&p.s).is_identity() {
            return Err(IcatError::InvalidDiagram("s is not a common section of a and u".into()));
        }
        if p.h.after(&p.a) != p.h.after(&p.u) {
            return Err(IcatError::InvalidDiagram("h a != h u".into()));
        }
        Ok(p)
    }

    /// The presentation `V(h)`: `Y = X` and `a = u = s = 1`.
    pub fn of_morphism(h: &Morphism) -> Presentation {
        let id = Morphism::identity(h.source());
        Presentation::new(id.clone(), id.clone(), id, h.clone()).expect("identities present any h")
    }

    pub fn y(&self) -> &Obj {
        self.a.source()
    }

    pub fn x(&self) -> &Obj {
        self.a.target()
    }

    pub fn b(&self) -> &Obj {
        self.h.target()
    }
}

/// The graph `(X ⊔ B, [0 1], [h 1], ι₂)` of a morphism `h: X → B`.
pub fn coproduct_graph(h: &Morphism) -> Result<(ReflexiveGraph, Coproduct)> {
    let (x, b) = (h.source(), h.target());
    let cp = Coproduct::new(x, b)?;
    let id = Morphism::identity(b);
    let d = cp.copair(&Morphism::zero(x, b)?, &id)?;
    let c = cp.copair(h, &id)?;
    let g = ReflexiveGraph::new(d, c, cp.i2.clone())?;
    Ok((g, cp))
}

/// The precategory with `C₂ = Y ⊔ (X ⊔ B)`, `π₂ = [0 1]`, `π₁ = a ⊔ [h 1]`,
/// `e₂ = ι₂`, `e₁ = s ⊔ ι₂` and `m = [ι₁u, 1]`.
pub fn precategory_from_presentation(p: &Presentation) -> Result<Precategory> {
    let (graph, c1) = coproduct_graph(&p.h)?;
    let c2 = Coproduct::new(p.y(), &c1.object)?;
    let id1 = Morphism::identity(&c1.object);
    let p2 = c2.copair(&Morphism::zero(p.y(), &c1.object)?, &id1)?;
    let p1 = c2.copair(&c1.i1.after(&p.a), &c1.i2.after(&graph.c))?;
    let e2 = c2.i2.clone();
    let e1 = c1.copair(&c2.i1.after(&p.s), &c2.i2.after(&c1.i2))?;
    let m = c2.copair(&c1.i1.after(&p.u), &id1)?;
    Precategory::new(graph, p1, p2, e1, e2, m)
}

/// The inclusion `V` of reflexive graphs (presented by `h`) into precategories.
pub fn include_v(h: &Morphism) -> Result<Precategory> {
    precategory_from_presentation(&Presentation::of_morphism(h))
}

/// The reflection `U` applied to a presentation: `σ` coequalizes `u` and `a`,
/// and `h = h'σ`.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub sigma: Morphism,
    pub h_prime: Morphism,
}

impl Reflection {
    /// The unit square `h'σ = h`.
    pub fn unit_commutes(&self, p: &Presentation) -> bool {
        self.h_prime.after(&self.sigma) == p.h
    }

    pub fn graph(&self) -> Result<ReflexiveGraph> {
        coproduct_graph(&self.h_prime).map(|(g, _)| g)
    }
}

pub fn reflect_u(p: &Presentation) -> Result<Reflection> {
    let q = Coequalizer::of_reflexive(&p.u, &p.a, &p.s)?;
    let h_prime = q.factor(&p.h)?;
    Ok(Reflection {
        sigma: q.sigma,
        h_prime,
    })
}

/// Classes of split epis that graphs and precategories may be restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitEpiClass {
    All,
    CoproductProjections,
    ProductProjections,
    SemidirectProjections,
    /// Split epis whose kernel and section are jointly epic.
    KernelJointlyEpic,
}

/// Whether `p` is isomorphic, over its base, to a member of `class`.
pub fn in_class(p: &SplitEpi, class: SplitEpiClass) -> bool {
    match class {
        SplitEpiClass::All => true,
        SplitEpiClass::CoproductProjections => comparison_iso(p).is_ok_and(|c| c.is_iso),
        SplitEpiClass::ProductProjections => {
            let Ok(prod) = Product::new(p.kernel(), p.b()) else {
                return false;
            };
            let zero = Morphism::zero(p.b(), p.kernel()).unwrap();
            let member = SplitEpi::new(
                prod.p2.clone(),
                prod.pair(&zero, &Morphism::identity(p.b())).unwrap(),
            );
            member.is_ok_and(|q| point_isomorphism(p, &q).is_some())
        }
        SplitEpiClass::SemidirectProjections => {
            if !p.kind().is_group() {
                return false;
            }
            let Ok(action) = crate::actions::functor_s_act(p) else {
                return false;
            };
            let member = crate::actions::semidirect_product(&action).map(|sd| sd.point);
            member.is_ok_and(|q| point_isomorphism(p, &q).is_some())
        }
        SplitEpiClass::KernelJointlyEpic => jointly_epic(p.k(), p.beta()),
    }
}

pub fn graph_in_class(g: &ReflexiveGraph, class: SplitEpiClass) -> bool {
    g.domain_point().is_ok_and(|p| in_class(&p, class))
}

pub fn precategory_in_class(p: &Precategory, class: SplitEpiClass) -> bool {
    graph_in_class(&p.graph, class)
        && p.composition_point().is_ok_and(|q| in_class(&q, class))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shared(s: Structure) -> Obj {
        Arc::new(s)
    }
    use crate::structure::{Kind, Structure};

    fn ab(n: usize) -> Obj {
        shared(Structure::cyclic(n, Kind::AbelianGroup))
    }

    #[test]
    fn degenerate_precategory_is_valid_and_a_category() {
        let p = Precategory::degenerate(&ab(3));
        assert!(p.validate().passed());
        let v = p.is_internal_category();
        assert!(v.is_pullback && v.is_associative == Some(true));
    }

    #[test]
    fn include_v_examples() {
        let z2 = ab(2);
        let z4 = ab(4);
        let h = Morphism::new(&z2, &z4, vec![0, 2]).unwrap();
        let p = include_v(&h).unwrap();
        assert!(p.validate().passed());
        let zero = Morphism::zero(&z2, &z4).unwrap();
        assert!(include_v(&zero).is_ok());
        let id = Morphism::identity(&z4);
        assert!(include_v(&id).is_ok());
    }

    #[test]
    fn tampered_multiplication_is_reported() {
        let z2 = ab(2);
        let h = Morphism::identity(&z2);
        let p = include_v(&h).unwrap();
        let mut map = p.m.map().to_vec();
        let target = p.e1.apply(1);
        map[target] = (map[target] + 1) % p.c1().order();
        let m = Morphism::unchecked(p.c2(), p.c1(), map);
        let bad = Precategory::from_parts(p.graph.clone(), p.p1.clone(), p.p2.clone(), p.e1.clone(), p.e2.clone(), m).unwrap();
        let v = bad.validate();
        assert!(v.fails("me1=1"));
        assert_eq!(v.failure("me1=1").unwrap().witness, vec![1]);
    }

    #[test]
    fn u_after_v_is_identity() {
        let z2 = ab(2);
        let z4 = ab(4);
        let h = Morphism::new(&z2, &z4, vec![0, 2]).unwrap();
        let pres = Presentation::of_morphism(&h);
        let r = reflect_u(&pres).unwrap();
        assert!(r.sigma.is_identity());
        assert_eq!(r.h_prime, h);
        assert!(r.unit_commutes(&pres));
    }

    #[test]
    fn reflection_quotients_pointed_sets() {
        // a common section forces u = a when Y = X, so Y gets a fourth point
        let x = shared(Structure::pointed_set(3));
        let b = shared(Structure::pointed_set(2));
        let y = shared(Structure::pointed_set(4));
        let a = Morphism::new(&y, &x, vec![0, 1, 2, 2]).unwrap();
        let u = Morphism::new(&y, &x, vec![0, 1, 2, 1]).unwrap();
        let s = Morphism::new(&x, &y, vec![0, 1, 2]).unwrap();
        let h = Morphism::new(&x, &b, vec![0, 1, 1]).unwrap();
        let pres = Presentation::new(a, u, s, h).unwrap();
        let r = reflect_u(&pres).unwrap();
        assert_eq!(r.sigma.target().order(), 2);
        assert_eq!(r.sigma.map(), &[0, 1, 1]);
        assert!(r.unit_commutes(&pres));
        assert!(precategory_from_presentation(&pres).unwrap().validate().passed());
    }

    #[test]
    fn class_membership() {
        let p2 = shared(Structure::pointed_set(2));
        let h = Morphism::identity(&p2);
        let (g, _) = coproduct_graph(&h).unwrap();
        assert!(graph_in_class(&g, SplitEpiClass::CoproductProjections));
        assert!(graph_in_class(&g, SplitEpiClass::All));
        // product projection P2 × P2 → P2
        let p4 = shared(Structure::pointed_set(4));
        let alpha = Morphism::new(&p4, &p2, vec![0, 1, 0, 1]).unwrap();
        let beta = Morphism::new(&p2, &p4, vec![0, 1]).unwrap();
        let prod = SplitEpi::new(alpha, beta).unwrap();
        assert!(!in_class(&prod, SplitEpiClass::CoproductProjections));
        assert!(in_class(&prod, SplitEpiClass::ProductProjections));
    }
}
