//! Group actions, semidirect products and the structures built from them:
//! precrossed and crossed modules and the data of a precategory of groups.
//!
//! An internal action `(X, ξ, B)` of groups is represented by its action
//! table `act(b, x)`, the usual action by automorphisms. The semidirect
//! product is built directly on the carrier `X × B`, with `(x, b)` stored at
//! `x * |B| + b`, and the injections `σι₁ = x ↦ (x, 0)` and `σι₂ = b ↦ (0, b)`.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::epic::jointly_epic;
use crate::error::{IcatError, Result};
use crate::graphs::ReflexiveGraph;
use crate::homs::{automorphisms, HomSearch};
use crate::morphism::Morphism;
use crate::points::SplitEpi;
use crate::structure::{Kind, Obj, Structure};
use crate::verdict::Verdict;

/// An action of `B` on `X` by automorphisms; `act[b * |X| + x] = b·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAction {
    x: Obj,
    b: Obj,
    act: Vec<usize>,
}

impl GroupAction {
    pub fn new(x: &Obj, b: &Obj, rows: Vec<Vec<usize>>) -> Result<GroupAction> {
        if rows.len() != b.order() || rows.iter().any(|r| r.len() != x.order()) {
            return Err(IcatError::InvalidAction("table must have |B| rows of |X| entries".into()));
        }
        let a = GroupAction::unchecked(x, b, rows.concat());
        let v = a.validate();
        if !v.passed() {
            return Err(IcatError::InvalidAction(v.to_string()));
        }
        Ok(a)
    }

    pub fn unchecked(x: &Obj, b: &Obj, act: Vec<usize>) -> GroupAction {
        GroupAction {
            x: x.clone(),
            b: b.clone(),
            act,
        }
    }

    pub fn from_fn(x: &Obj, b: &Obj, f: impl Fn(usize, usize) -> usize) -> GroupAction {
        let act = b
            .elements()
            .flat_map(|bb| x.elements().map(move |xx| (bb, xx)))
            .map(|(bb, xx)| f(bb, xx))
            .collect();
        GroupAction::unchecked(x, b, act)
    }

    pub fn trivial(x: &Obj, b: &Obj) -> GroupAction {
        GroupAction::from_fn(x, b, |_, x| x)
    }

    pub fn x(&self) -> &Obj {
        &self.x
    }

    pub fn b(&self) -> &Obj {
        &self.b
    }

    #[inline]
    pub fn apply(&self, b: usize, x: usize) -> usize {
        self.act[b * self.x.order() + x]
    }

    pub fn table(&self) -> &[usize] {
        &self.act
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.x.order()).map(|r| r.to_vec()).collect()
    }

    /// Copy with a single entry replaced.
    pub fn with_entry(&self, b: usize, x: usize, value: usize) -> GroupAction {
        let mut act = self.act.clone();
        act[b * self.x.order() + x] = value;
        GroupAction::unchecked(&self.x, &self.b, act)
    }

    pub fn validate(&self) -> Verdict {
        let (x, b) = (&self.x, &self.b);
        let mut v = Verdict::new();
        v.check("groups", || {
            (!x.kind().is_group() || !b.kind().is_group()).then(Vec::new)
        });
        if !v.passed() {
            return v;
        }
        v.check("entries in range", || {
            self.act.iter().position(|&y| y >= x.order()).map(|i| vec![i])
        });
        if !v.passed() {
            return v;
        }
        v.check("0.x=x", || x.elements().find(|&e| self.apply(0, e) != e).map(|e| vec![e]));
        v.check("b.(b'.x)=(bb').x", || {
            for b1 in b.elements() {
                for b2 in b.elements() {
                    let bb = b.op(b1, b2);
                    for e in x.elements() {
                        if self.apply(b1, self.apply(b2, e)) != self.apply(bb, e) {
                            return Some(vec![b1, b2, e]);
                        }
                    }
                }
            }
            None
        });
        v.check("b.(xy)=(b.x)(b.y)", || {
            for bb in b.elements() {
                for e1 in x.elements() {
                    for e2 in x.elements() {
                        if self.apply(bb, x.op(e1, e2)) != x.op(self.apply(bb, e1), self.apply(bb, e2)) {
                            return Some(vec![bb, e1, e2]);
                        }
                    }
                }
            }
            None
        });
        v
    }
}

/// `B` acting on itself by conjugation, the object `G(B)`.
pub fn conjugation_g(b: &Obj) -> GroupAction {
    GroupAction::from_fn(b, b, |g, x| b.conj(g, x))
}

/// A semidirect product `X ⋊ B` as a split epi over `B`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub action: GroupAction,
    pub object: Obj,
    pub point: SplitEpi,
    /// `σι₁ = x ↦ (x, 0)`, which is also the kernel inclusion.
    pub i1: Morphism,
    /// `σι₂ = b ↦ (0, b)`, the section.
    pub i2: Morphism,
}

impl Semidirect {
    #[inline]
    pub fn index(&self, x: usize, b: usize) -> usize {
        x * self.action.b.order() + b
    }

    #[inline]
    pub fn split(&self, p: usize) -> (usize, usize) {
        let nb = self.action.b.order();
        (p / nb, p % nb)
    }

    /// The morphism `X ⋊ B → T` induced by `f: X → T` and `g: B → T`,
    /// `(x, b) ↦ f(x) g(b)`, when it is one. This happens exactly when
    /// `f(b·x) = g(b) f(x) g(b)⁻¹`.
    pub fn induced(&self, f: &Morphism, g: &Morphism) -> Option<Morphism> {
        let t = f.target();
        let m = Morphism::from_fn(&self.object, t, |p| {
            let (x, b) = self.split(p);
            t.op(f.apply(x), g.apply(b))
        });
        m.validate().ok().map(|_| m)
    }

    /// Whether `(f, g)` satisfies the equivariance condition for inducing a
    /// morphism out of the semidirect product.
    pub fn compatible(&self, f: &Morphism, g: &Morphism) -> bool {
        let t = f.target();
        self.action.b.elements().all(|b| {
            self.action
                .x
                .elements()
                .all(|x| f.apply(self.action.apply(b, x)) == t.conj(g.apply(b), f.apply(x)))
        })
    }
}

/// `F(X, ξ, B) = X ⋊ B` with `(x, b)(x', b') = (x · (b·x'), bb')`.
pub fn semidirect_product(a: &GroupAction) -> Result<Semidirect> {
    let v = a.validate();
    if !v.passed() {
        return Err(IcatError::InvalidAction(v.to_string()));
    }
    let (x, b) = (&a.x, &a.b);
    let (nx, nb) = (x.order(), b.order());
    let n = nx * nb;
    let mut t = vec![0; n * n];
    for p in 0..n {
        let (x1, b1) = (p / nb, p % nb);
        for q in 0..n {
            let (x2, b2) = (q / nb, q % nb);
            t[p * n + q] = x.op(x1, a.apply(b1, x2)) * nb + b.op(b1, b2);
        }
    }
    let object = Arc::new(
        Structure::from_flat_unchecked(Kind::Group, n, t)
            .with_name(format!("{}:{}", x.label(), b.label())),
    );
    let alpha = Morphism::from_fn(&object, b, |p| p % nb);
    let i2 = Morphism::from_fn(b, &object, |v| v);
    let i1 = Morphism::from_fn(x, &object, |v| v * nb);
    let point = SplitEpi::new(alpha, i2.clone())?;
    // the kernel numbering coincides with X
    let i1 = i1.retarget(point.kernel(), &object).retarget(x, &object);
    Ok(Semidirect {
        action: a.clone(),
        object,
        point,
        i1,
        i2,
    })
}

/// `T(X, ξ, B)`: the semidirect product projection.
pub fn functor_t_act(a: &GroupAction) -> Result<SplitEpi> {
    semidirect_product(a).map(|s| s.point)
}

/// `S(A, α, β, B)`: `B` acting on the kernel by conjugation through `β`.
pub fn functor_s_act(p: &SplitEpi) -> Result<GroupAction> {
    let a = p.a();
    if !a.kind().is_group() || !p.b().kind().is_group() {
        return Err(IcatError::Unsupported("actions need groups".into()));
    }
    let k = p.k();
    let mut pos = vec![usize::MAX; a.order()];
    for (i, &v) in k.map().iter().enumerate() {
        pos[v] = i;
    }
    let x = p.kernel();
    let mut act = Vec::with_capacity(p.b().order() * x.order());
    for b in p.b().elements() {
        let g = p.beta().apply(b);
        for e in x.elements() {
            let c = pos[a.conj(g, k.apply(e))];
            if c == usize::MAX {
                return Err(IcatError::ConjugationEscapesKernel { b, x: e });
            }
            act.push(c);
        }
    }
    Ok(GroupAction::unchecked(x, p.b(), act))
}

/// The comparison `X ⋊ B → A`, `(x, b) ↦ k(x) β(b)`, for the action `S(p)`.
pub fn semidirect_comparison(p: &SplitEpi) -> Result<(Semidirect, Morphism)> {
    let sd = semidirect_product(&functor_s_act(p)?)?;
    let a = p.a();
    let nb = p.b().order();
    let m = Morphism::from_fn(&sd.object, a, |q| a.op(p.k().apply(q / nb), p.beta().apply(q % nb)));
    m.validate()?;
    Ok((sd, m))
}

/// Checks that the comparison is an isomorphism of split epis over `B`.
pub fn comparison_is_point_iso(p: &SplitEpi) -> Result<bool> {
    let (sd, m) = semidirect_comparison(p)?;
    Ok(m.is_iso()
        && p.alpha().after(&m) == *sd.point.alpha()
        && m.after(&sd.i2) == *p.beta())
}

/// The three conditions characterizing a semidirect product `X → A ← B`:
/// `(k, β)` jointly epic, a unique `[0 1]` with `[0 1]β = 1` and
/// `[0 1]k = 0`, and `k = ker [0 1]`.
pub fn check_semidirect_axioms(p: &SplitEpi) -> Verdict {
    let mut v = Verdict::new();
    let (a, b) = (p.a(), p.b());
    v.check("(a) (k, beta) jointly epic", || {
        (!jointly_epic(p.k(), p.beta())).then(Vec::new)
    });
    let fixed: Vec<(usize, usize)> = b
        .elements()
        .map(|y| (p.beta().apply(y), y))
        .chain(p.k().map().iter().map(|&x| (x, 0)))
        .collect();
    let candidates: Vec<Morphism> = HomSearch {
        fixed,
        ..HomSearch::default()
    }
    .collect(a, b);
    v.check("(b) [0 1] exists", || candidates.is_empty().then(Vec::new));
    v.check("(b) [0 1] unique", || {
        (candidates.len() > 1).then(|| candidates[1].map().to_vec())
    });
    v.check("(c) k = ker [0 1]", || {
        let image = p.k().image();
        candidates
            .iter()
            .find(|c| a.elements().any(|x| (c.apply(x) == 0) != image[x]))
            .map(|c| c.map().to_vec())
    });
    v
}

/// `Aut(X)` as a group (composition, identity at 0) with its elements.
pub fn automorphism_group(x: &Obj) -> (Obj, Vec<Morphism>) {
    let mut auts = automorphisms(x);
    auts.sort_by_key(|m| !m.is_identity());
    let index: HashMap<Vec<usize>, usize> = auts
        .iter()
        .enumerate()
        .map(|(i, m)| (m.map().to_vec(), i))
        .collect();
    let n = auts.len();
    let mut t = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[i * n + j] = index[auts[i].after(&auts[j]).map()];
        }
    }
    let g = Structure::from_flat_unchecked(Kind::Group, n, t).with_name(format!("Aut({})", x.label()));
    (Arc::new(g), auts)
}

/// Every action of `B` on `X`, one per homomorphism `B → Aut(X)`.
pub fn all_actions(x: &Obj, b: &Obj) -> Vec<GroupAction> {
    let (aut, elems) = automorphism_group(x);
    let mut out = Vec::new();
    HomSearch::all().for_each(b, &aut, |phi| {
        out.push(GroupAction::from_fn(x, b, |g, e| elems[phi[g]].apply(e)));
        ControlFlow::Continue(())
    });
    out
}

/// `h: X → B` equivariant for an action of `B` on `X` and conjugation on `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreCrossedModule {
    pub action: GroupAction,
    pub h: Morphism,
}

impl PreCrossedModule {
    pub fn new(action: GroupAction, h: Morphism) -> Result<PreCrossedModule> {
        let p = PreCrossedModule { action, h };
        let v = p.validate();
        if !v.passed() {
            return Err(IcatError::LawViolation(v.to_string()));
        }
        Ok(p)
    }

    pub fn validate(&self) -> Verdict {
        let mut v = self.action.validate();
        let (x, b) = (self.action.x(), self.action.b());
        v.check("h is a morphism X -> B", || {
            let ends = self.h.source().as_ref() == x.as_ref() && self.h.target().as_ref() == b.as_ref();
            (!ends || self.h.validate().is_err()).then(Vec::new)
        });
        if v.passed() {
            v.check("h(b.x) = b h(x) b^-1", || equivariance_failure(&self.action, &self.h));
        }
        v
    }
}

fn equivariance_failure(a: &GroupAction, h: &Morphism) -> Option<Vec<usize>> {
    let b = a.b();
    for g in b.elements() {
        for e in a.x().elements() {
            if h.apply(a.apply(g, e)) != b.conj(g, h.apply(e)) {
                return Some(vec![g, e]);
            }
        }
    }
    None
}

/// First pair `(x, x')` with `h(x)·x' ≠ x x' x⁻¹`, if any.
pub fn peiffer_failure(pxm: &PreCrossedModule) -> Option<(usize, usize)> {
    let x = pxm.action.x();
    for e in x.elements() {
        for f in x.elements() {
            if pxm.action.apply(pxm.h.apply(e), f) != x.conj(e, f) {
                return Some((e, f));
            }
        }
    }
    None
}

pub fn check_peiffer(pxm: &PreCrossedModule) -> bool {
    peiffer_failure(pxm).is_none()
}

/// Every precrossed module with the given groups.
pub fn precrossed_modules(x: &Obj, b: &Obj) -> Vec<PreCrossedModule> {
    let homs = HomSearch::all().collect(x, b);
    let mut out = Vec::new();
    for a in all_actions(x, b) {
        for h in &homs {
            if equivariance_failure(&a, h).is_none() {
                out.push(PreCrossedModule {
                    action: a.clone(),
                    h: h.clone(),
                });
            }
        }
    }
    out
}

/// The graph on `X ⋊ B` with `d = π₂`, `e = (0, -)` and `c(x, b) = h(x) b`.
pub fn rg_from_pxm(pxm: &PreCrossedModule) -> Result<(ReflexiveGraph, Semidirect)> {
    let sd = semidirect_product(&pxm.action)?;
    let c = sd
        .induced(&pxm.h, &Morphism::identity(pxm.action.b()))
        .ok_or_else(|| IcatError::LawViolation("h is not equivariant".into()))?;
    let g = ReflexiveGraph::new(sd.point.alpha().clone(), c, sd.i2.clone())?;
    Ok((g, sd))
}

/// Recovers `(ξ, h)` from a reflexive graph of groups, with the comparison
/// isomorphism `X ⋊ B → C₁` as certificate.
pub fn pxm_from_rg(g: &ReflexiveGraph) -> Result<(PreCrossedModule, Morphism)> {
    let p = g.domain_point()?;
    let action = functor_s_act(&p)?;
    let h = g.c.after(p.k()).retarget(action.x(), g.c0());
    let pxm = PreCrossedModule::new(action, h)?;
    let (sd, cmp) = semidirect_comparison(&p)?;
    // the certificate must identify c with [h 1]
    let c_bar = sd
        .induced(&pxm.h, &Morphism::identity(pxm.action.b()))
        .ok_or_else(|| IcatError::ComparisonNotIso("[h 1] is not a morphism".into()))?;
    if !cmp.is_iso() || g.c.after(&cmp) != c_bar {
        return Err(IcatError::ComparisonNotIso(format!("{cmp:?}")));
    }
    Ok((pxm, cmp))
}

/// `Z →t X →h B` with actions of `B` on `X`, of `X` on `Z`, and of
/// `F(X, B)` on `F(Z, X)`.
#[derive(Clone, Debug)]
pub struct ChainCompData {
    pub t: Morphism,
    pub h: Morphism,
    pub xi_x: GroupAction,
    pub xi_z: GroupAction,
    /// Indexed by the carriers of `F(X, B)` and `F(Z, X)`.
    pub xi_f: GroupAction,
}

impl ChainCompData {
    /// The chain of a crossed module `(X, B, h)`: `Z = ker h`, `t` the
    /// inclusion, `X` acting trivially on the central `Z`, and `(x₀, b)`
    /// acting on `(z, x)` by `(b·z, x₀ (b·x) x₀⁻¹)`.
    pub fn from_crossed_module(pxm: &PreCrossedModule) -> Result<ChainCompData> {
        if let Some((e, f)) = peiffer_failure(pxm) {
            return Err(IcatError::LawViolation(format!("Peiffer identity fails at ({e}, {f})")));
        }
        let x = pxm.action.x();
        let (z, t) = crate::ops::kernel(&pxm.h);
        let mut pos = vec![usize::MAX; x.order()];
        for (i, &v) in t.map().iter().enumerate() {
            pos[v] = i;
        }
        let xi_z = GroupAction::trivial(&z, x);
        let f_xb = semidirect_product(&pxm.action)?;
        let f_zx = semidirect_product(&xi_z)?;
        let act = &pxm.action;
        let xi_f = GroupAction::from_fn(&f_zx.object, &f_xb.object, |p, q| {
            let (x0, bb) = f_xb.split(p);
            let (zz, xx) = f_zx.split(q);
            let z_new = pos[act.apply(bb, t.apply(zz))];
            let x_new = x.conj(x0, act.apply(bb, xx));
            f_zx.index(z_new, x_new)
        });
        Ok(ChainCompData {
            t,
            h: pxm.h.clone(),
            xi_x: pxm.action.clone(),
            xi_z,
            xi_f,
        })
    }
}

/// The five conditions, as table identities:
///
/// 1. `h(b·x) = b h(x) b⁻¹`
/// 2. `t(x·z) = x t(z) x⁻¹`
/// 3. `s(p·q) = p s(q) p⁻¹` for `s(z, x) = (t(z) x, 0)`
/// 4. `π_X(p·q) = (h(x₀) b)·π_X(q)` for `p = (x₀, b)`
/// 5. `(0, b)·(0, x) = (0, b·x)`
pub fn validate_chaincomp(d: &ChainCompData) -> Result<Verdict> {
    if let Some(z) = d.t.source().elements().find(|&z| d.h.apply(d.t.apply(z)) != 0) {
        return Err(IcatError::ChainConditionViolated(z));
    }
    let mut v = Verdict::new();
    for (name, a) in [("xi_X", &d.xi_x), ("xi_Z", &d.xi_z)] {
        for f in a.validate().failures {
            v.failures.push(crate::verdict::LawFailure {
                law: format!("{name}: {}", f.law),
                witness: f.witness,
            });
        }
        v.checked.push(format!("{name} is an action"));
    }
    if !v.passed() {
        return Ok(v);
    }
    let f_xb = semidirect_product(&d.xi_x)?;
    let f_zx = semidirect_product(&d.xi_z)?;
    if d.xi_f.b().as_ref() != f_xb.object.as_ref() || d.xi_f.x().as_ref() != f_zx.object.as_ref() {
        return Err(IcatError::InvalidAction("xi_F must act on F(Z, X) by F(X, B)".into()));
    }
    for f in d.xi_f.validate().failures {
        v.failures.push(crate::verdict::LawFailure {
            law: format!("xi_F: {}", f.law),
            witness: f.witness,
        });
    }
    v.checked.push("xi_F is an action".into());
    if d.xi_f.table().iter().any(|&y| y >= f_zx.object.order()) {
        return Ok(v);
    }
    let (x, b) = (d.xi_x.x(), d.xi_x.b());
    let (t, h) = (&d.t, &d.h);
    v.check("1: h equivariant", || equivariance_failure(&d.xi_x, h));
    v.check("2: t equivariant", || {
        for e in x.elements() {
            for z in d.xi_z.x().elements() {
                if t.apply(d.xi_z.apply(e, z)) != x.conj(e, t.apply(z)) {
                    return Some(vec![e, z]);
                }
            }
        }
        None
    });
    let s = |q: usize| {
        let (z, e) = f_zx.split(q);
        f_xb.index(x.op(t.apply(z), e), 0)
    };
    let big = &f_xb.object;
    v.check("3: sigma iota1 [t 1] equivariant", || {
        for p in big.elements() {
            for q in f_zx.object.elements() {
                if s(d.xi_f.apply(p, q)) != big.conj(p, s(q)) {
                    return Some(vec![p, q]);
                }
            }
        }
        None
    });
    v.check("4: projection square", || {
        for p in big.elements() {
            let (x0, bb) = f_xb.split(p);
            let hb = b.op(h.apply(x0), bb);
            for q in f_zx.object.elements() {
                let (_, e) = f_zx.split(q);
                let (_, lhs) = f_zx.split(d.xi_f.apply(p, q));
                if lhs != d.xi_x.apply(hb, e) {
                    return Some(vec![p, q]);
                }
            }
        }
        None
    });
    v.check("5: section square", || {
        for bb in b.elements() {
            for e in x.elements() {
                let lhs = d.xi_f.apply(f_xb.index(0, bb), f_zx.index(0, e));
                if lhs != f_zx.index(0, d.xi_x.apply(bb, e)) {
                    return Some(vec![bb, e]);
                }
            }
        }
        None
    });
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homs::isomorphic;
    use crate::structure::named;

    fn g(s: Structure) -> Obj {
        Arc::new(s)
    }

    fn inversion(n: usize) -> GroupAction {
        let x = g(Structure::cyclic(n, Kind::Group));
        let b = g(Structure::cyclic(2, Kind::Group));
        GroupAction::from_fn(&x, &b, |s, e| if s == 0 { e } else { x.inv(e) })
    }

    #[test]
    fn inversion_semidirects() {
        let s3 = semidirect_product(&inversion(3)).unwrap();
        assert!(s3.object.validate().is_ok());
        assert!(isomorphic(&s3.object, &g(named::s3())));
        let d4 = semidirect_product(&inversion(4)).unwrap();
        assert!(isomorphic(&d4.object, &g(named::dihedral(4))));
        let x = g(Structure::cyclic(3, Kind::Group));
        let b = g(Structure::cyclic(2, Kind::Group));
        let direct = semidirect_product(&GroupAction::trivial(&x, &b)).unwrap();
        assert!(direct.object.is_commutative());
    }

    #[test]
    fn s_of_sign_is_inversion() {
        let s3 = g(named::s3());
        let z2 = g(Structure::cyclic(2, Kind::Group));
        let sign = Morphism::new(&s3, &z2, vec![0, 1, 1, 1, 0, 0]).unwrap();
        let beta = Morphism::new(&z2, &s3, vec![0, 1]).unwrap();
        let p = SplitEpi::new(sign, beta).unwrap();
        let a = functor_s_act(&p).unwrap();
        // kernel is {e, (123), (132)}; the transposition swaps the 3-cycles
        assert_eq!(a.rows(), vec![vec![0, 1, 2], vec![0, 2, 1]]);
        assert!(comparison_is_point_iso(&p).unwrap());
    }

    #[test]
    fn s_after_t_is_identity() {
        let a = inversion(4);
        let p = functor_t_act(&a).unwrap();
        assert_eq!(functor_s_act(&p).unwrap(), a);
    }

    #[test]
    fn peiffer_witness_in_s3() {
        let s3 = g(named::s3());
        let one = g(Structure::cyclic(1, Kind::Group));
        let pxm = PreCrossedModule::new(
            GroupAction::trivial(&s3, &one),
            Morphism::zero(&s3, &one).unwrap(),
        )
        .unwrap();
        assert_eq!(peiffer_failure(&pxm), Some((1, 2)));
        // conjugation on a normal subgroup
        let b = g(named::s3());
        let a3_members = vec![0, 4, 5];
        let (x, inc) = crate::ops::substructure(&b, &a3_members, "A3".into());
        let act = GroupAction::from_fn(&x, &b, |s, e| {
            a3_members.iter().position(|&m| m == b.conj(s, a3_members[e])).unwrap()
        });
        let pxm = PreCrossedModule::new(act, inc).unwrap();
        assert!(check_peiffer(&pxm));
    }

    #[test]
    fn semidirect_axioms_on_a_semidirect_product() {
        let sd = semidirect_product(&inversion(3)).unwrap();
        assert!(check_semidirect_axioms(&sd.point).passed());
    }

    #[test]
    fn chain_of_trivial_data_passes() {
        let z2 = g(Structure::cyclic(2, Kind::Group));
        let xi_x = GroupAction::trivial(&z2, &z2);
        let xi_z = GroupAction::trivial(&z2, &z2);
        let f_xb = semidirect_product(&xi_x).unwrap();
        let f_zx = semidirect_product(&xi_z).unwrap();
        let xi_f = GroupAction::trivial(&f_zx.object, &f_xb.object);
        let d = ChainCompData {
            t: Morphism::identity(&z2),
            h: Morphism::zero(&z2, &z2).unwrap(),
            xi_x,
            xi_z,
            xi_f,
        };
        assert!(validate_chaincomp(&d).unwrap().passed());
    }

    fn s3_conjugation_module() -> PreCrossedModule {
        let b = g(named::s3());
        let members = vec![0, 4, 5];
        let (x, inc) = crate::ops::substructure(&b, &members, "A3".into());
        let act = GroupAction::from_fn(&x, &b, |s, e| {
            members.iter().position(|&m| m == b.conj(s, members[e])).unwrap()
        });
        PreCrossedModule::new(act, inc).unwrap()
    }

    #[test]
    fn crossed_module_chain_passes_and_detects_tampering() {
        let d = ChainCompData::from_crossed_module(&s3_conjugation_module()).unwrap();
        assert!(validate_chaincomp(&d).unwrap().passed());
        let mut bad = d.clone();
        let q = bad.xi_f.x().order() - 1;
        let v = bad.xi_f.apply(1, q);
        bad.xi_f = bad.xi_f.with_entry(1, q, if v == 0 { 1 } else { 0 });
        assert!(!validate_chaincomp(&bad).unwrap().passed());
    }

    #[test]
    fn graph_round_trip() {
        let pxm = s3_conjugation_module();
        let (rg, _) = rg_from_pxm(&pxm).unwrap();
        let (back, cert) = pxm_from_rg(&rg).unwrap();
        assert_eq!(back.action, pxm.action);
        assert_eq!(back.h, pxm.h);
        assert!(cert.is_iso());
    }

    #[test]
    fn actions_of_z2_on_z3() {
        let x = g(Structure::cyclic(3, Kind::Group));
        let b = g(Structure::cyclic(2, Kind::Group));
        let all = all_actions(&x, &b);
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|a| a.validate().passed()));
        let (aut, _) = automorphism_group(&g(named::dihedral(4)));
        assert_eq!(aut.order(), 8);
        assert!(aut.validate().is_ok());
    }
}
