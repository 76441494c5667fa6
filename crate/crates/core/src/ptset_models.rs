//! The two concrete models in pointed sets: graphs relative to coproduct
//! projections ("stars") and precategories relative to product projections,
//! together with the small categories they describe.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{IcatError, Result};
use crate::graphs::{include_v, Precategory, ReflexiveGraph};
use crate::morphism::Morphism;
use crate::ops::Product;
use crate::structure::{Kind, Obj, Structure};
use crate::verdict::Verdict;

/// An arrow of a [`ConcreteCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arrow {
    Identity(usize),
    /// A nonzero element of `X` in the star model.
    Element(usize),
    /// `(x, b)` in the product model.
    Pair(usize, usize),
}

/// A finite category given by its tables. `comp[g * n + f]` is `g ∘ f`
/// when `dom g = cod f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcreteCategory {
    pub objects: usize,
    pub arrows: Vec<Arrow>,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub identity: Vec<usize>,
    pub comp: Vec<Option<usize>>,
    /// Whether the builder's own associativity test passed.
    pub associative: bool,
}

impl ConcreteCategory {
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.arrows.len() + f]
    }

    /// Typing, unit laws and associativity over every composable triple.
    pub fn validate(&self) -> Verdict {
        let n = self.arrows.len();
        let mut v = Verdict::new();
        v.check("table sizes", || {
            let ok = self.dom.len() == n
                && self.cod.len() == n
                && self.identity.len() == self.objects
                && self.comp.len() == n * n;
            (!ok).then(Vec::new)
        });
        if !v.passed() {
            return v;
        }
        v.check("identities are endo", || {
            (0..self.objects)
                .find(|&b| {
                    let i = self.identity[b];
                    i >= n || self.dom[i] != b || self.cod[i] != b
                })
                .map(|b| vec![b])
        });
        v.check("defined iff composable", || {
            for g in 0..n {
                for f in 0..n {
                    if self.compose(g, f).is_some() != (self.dom[g] == self.cod[f]) {
                        return Some(vec![g, f]);
                    }
                }
            }
            None
        });
        v.check("dom and cod of composites", || {
            for g in 0..n {
                for f in 0..n {
                    if let Some(h) = self.compose(g, f) {
                        if h >= n || self.dom[h] != self.dom[f] || self.cod[h] != self.cod[g] {
                            return Some(vec![g, f]);
                        }
                    }
                }
            }
            None
        });
        if !v.passed() {
            return v;
        }
        v.check("unit laws", || {
            (0..n)
                .find(|&f| {
                    self.compose(self.identity[self.cod[f]], f) != Some(f)
                        || self.compose(f, self.identity[self.dom[f]]) != Some(f)
                })
                .map(|f| vec![f])
        });
        v.check("associativity", || {
            for h in 0..n {
                for g in (0..n).filter(|&g| self.dom[h] == self.cod[g]) {
                    let hg = self.compose(h, g)?;
                    for f in (0..n).filter(|&f| self.dom[g] == self.cod[f]) {
                        if self.compose(h, self.compose(g, f)?) != self.compose(hg, f) {
                            return Some(vec![h, g, f]);
                        }
                    }
                }
            }
            None
        });
        v
    }
}

/// `V(h)`: the star precategory of a pointed map over the wedge split epi.
pub fn star_precategory(h: &Morphism) -> Result<Precategory> {
    if h.source().kind() != Kind::PointedSet || h.target().kind() != Kind::PointedSet {
        return Err(IcatError::KindMismatch(h.source().kind(), Kind::PointedSet));
    }
    include_v(h)
}

/// The star: objects `B`, identities, and an arrow `0 → h(x)` for every
/// nonzero `x`. Non-identity arrows never compose.
pub fn star_category(h: &Morphism) -> Result<ConcreteCategory> {
    if let Some(x) = h.source().elements().skip(1).find(|&x| h.apply(x) == 0) {
        return Err(IcatError::KernelNotTrivial(x));
    }
    let nb = h.target().order();
    let mut arrows: Vec<Arrow> = (0..nb).map(Arrow::Identity).collect();
    arrows.extend(h.source().elements().skip(1).map(Arrow::Element));
    let dom: Vec<usize> = arrows
        .iter()
        .map(|a| match *a {
            Arrow::Identity(b) => b,
            _ => 0,
        })
        .collect();
    let cod: Vec<usize> = arrows
        .iter()
        .map(|a| match *a {
            Arrow::Identity(b) => b,
            Arrow::Element(x) => h.apply(x),
            Arrow::Pair(..) => unreachable!(),
        })
        .collect();
    let n = arrows.len();
    let mut comp = vec![None; n * n];
    for g in 0..n {
        for f in (0..n).filter(|&f| dom[g] == cod[f]) {
            comp[g * n + f] = match (arrows[g], arrows[f]) {
                (Arrow::Identity(_), _) => Some(f),
                (_, Arrow::Identity(_)) => Some(g),
                // only reachable when h(x) = 0 for a nonzero x
                _ => None,
            };
        }
    }
    Ok(ConcreteCategory {
        objects: nb,
        arrows,
        dom,
        cod,
        identity: (0..nb).collect(),
        comp,
        associative: true,
    })
}

/// The composition data `Y`, `α: Y → X`, `β: X → Y` and
/// `μ[(y * |B| + b) * |X| + x] = y +_b x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuData {
    pub y: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub mu: Vec<usize>,
}

/// `ξ[x * |B| + b] = x · b`, optionally with composition data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberedAction {
    pub x: usize,
    pub b: usize,
    pub xi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<MuData>,
}

impl FiberedAction {
    #[inline]
    pub fn dot(&self, x: usize, b: usize) -> usize {
        self.xi[x * self.b + b]
    }

    /// `y +_b x`; panics without composition data.
    #[inline]
    pub fn plus(&self, y: usize, b: usize, x: usize) -> usize {
        let m = self.mu.as_ref().expect("composition data");
        m.mu[(y * self.b + b) * self.x + x]
    }

    /// The model with `X = Y` and `α = β = 1`.
    pub fn with_sum(x: usize, b: usize, xi: Vec<usize>, mu: Vec<usize>) -> FiberedAction {
        FiberedAction {
            x,
            b,
            xi,
            mu: Some(MuData {
                y: x,
                alpha: (0..x).collect(),
                beta: (0..x).collect(),
                mu,
            }),
        }
    }

    /// `X = B = {0, 1}`, `x · b = x xor b`, `y +_b x = y xor x`.
    pub fn xor() -> FiberedAction {
        let xi = vec![0, 1, 1, 0];
        let mut mu = vec![0; 8];
        for y in 0..2 {
            for b in 0..2 {
                for x in 0..2 {
                    mu[(y * 2 + b) * 2 + x] = y ^ x;
                }
            }
        }
        FiberedAction::with_sum(2, 2, xi, mu)
    }

    /// Whether `Y = X` and `α = β = 1`.
    pub fn is_square(&self) -> bool {
        self.mu.as_ref().is_some_and(|m| {
            m.y == self.x
                && m.alpha.iter().enumerate().all(|(i, &v)| i == v)
                && m.beta.iter().enumerate().all(|(i, &v)| i == v)
        })
    }

    /// Copy with one entry of `ξ` (index `< |X||B|`) or of `μ` (after it)
    /// replaced.
    pub fn mutated(&self, entry: usize, value: usize) -> FiberedAction {
        let mut f = self.clone();
        if entry < f.xi.len() {
            f.xi[entry] = value;
        } else {
            f.mu.as_mut().expect("composition data").mu[entry - self.xi.len()] = value;
        }
        f
    }

    /// Every single-entry mutation, with values drawn from the right carrier.
    pub fn single_mutations(&self) -> Vec<FiberedAction> {
        let mut out = Vec::new();
        for (i, &v) in self.xi.iter().enumerate() {
            out.extend((0..self.b).filter(|&w| w != v).map(|w| self.mutated(i, w)));
        }
        if let Some(m) = &self.mu {
            for (i, &v) in m.mu.iter().enumerate() {
                out.extend((0..self.x).filter(|&w| w != v).map(|w| self.mutated(self.xi.len() + i, w)));
            }
        }
        out
    }
}

/// Checks `0 · b = b` and, with composition data, `αβ = 1`,
/// `0 +_b x = x = β(x) +_b 0` and `(y +_b x) · b = α(y) · (x · b)`.
pub fn validate_fibered_action(f: &FiberedAction) -> Verdict {
    let mut v = Verdict::new();
    let (nx, nb) = (f.x, f.b);
    v.check("xi table", || {
        (f.xi.len() != nx * nb || f.xi.iter().any(|&y| y >= nb) || nx == 0 || nb == 0).then(Vec::new)
    });
    if !v.passed() {
        return v;
    }
    v.check("0.b=b", || (0..nb).find(|&b| f.dot(0, b) != b).map(|b| vec![b]));
    let Some(m) = &f.mu else {
        return v;
    };
    v.check("mu tables", || {
        let ok = m.y > 0
            && m.alpha.len() == m.y
            && m.beta.len() == nx
            && m.mu.len() == m.y * nb * nx
            && m.alpha.iter().all(|&a| a < nx)
            && m.beta.iter().all(|&b| b < m.y)
            && m.mu.iter().all(|&s| s < nx);
        (!ok).then(Vec::new)
    });
    if !v.passed() {
        return v;
    }
    v.check("alpha and beta pointed", || (m.alpha[0] != 0 || m.beta[0] != 0).then(Vec::new));
    v.check("alpha beta=1", || (0..nx).find(|&x| m.alpha[m.beta[x]] != x).map(|x| vec![x]));
    v.check("0+_b x=x", || {
        for b in 0..nb {
            for x in 0..nx {
                if f.plus(0, b, x) != x {
                    return Some(vec![b, x]);
                }
            }
        }
        None
    });
    v.check("beta(x)+_b 0=x", || {
        for b in 0..nb {
            for x in 0..nx {
                if f.plus(m.beta[x], b, 0) != x {
                    return Some(vec![x, b]);
                }
            }
        }
        None
    });
    v.check("(y+_b x).b=alpha(y).(x.b)", || {
        for y in 0..m.y {
            for b in 0..nb {
                for x in 0..nx {
                    if f.dot(f.plus(y, b, x), b) != f.dot(m.alpha[y], f.dot(x, b)) {
                        return Some(vec![y, x, b]);
                    }
                }
            }
        }
        None
    });
    v
}

/// First `(x'', x', x, b)` with
/// `(x'' +_(x·b) x') +_b x ≠ x'' +_b (x' +_b x)`, for square models.
pub fn associativity_failure(f: &FiberedAction) -> Option<Vec<usize>> {
    let (nx, nb) = (f.x, f.b);
    for x2 in 0..nx {
        for x1 in 0..nx {
            for x in 0..nx {
                for b in 0..nb {
                    let lhs = f.plus(f.plus(x2, f.dot(x, b), x1), b, x);
                    let rhs = f.plus(x2, b, f.plus(x1, b, x));
                    if lhs != rhs {
                        return Some(vec![x2, x1, x, b]);
                    }
                }
            }
        }
    }
    None
}

/// The precategory on `Y × (X × B)` with `π₂`, `α × ξ`, `μ`, sections
/// `⟨0, 1⟩` and `β × ⟨0, 1⟩`, over `(X × B, π₂, ξ, ⟨0, 1⟩)`.
pub fn product_model_precategory(f: &FiberedAction) -> Result<Precategory> {
    let v = validate_fibered_action(f);
    if !v.passed() {
        return Err(IcatError::LawViolation(v.to_string()));
    }
    let m = f
        .mu
        .as_ref()
        .ok_or_else(|| IcatError::InvalidDiagram("no composition data".into()))?;
    let obj = |n: usize| -> Obj { Arc::new(Structure::pointed_set(n)) };
    let (x, b, y) = (obj(f.x), obj(f.b), obj(m.y));
    let c1 = Product::new(&x, &b)?;
    let c2 = Product::new(&y, &c1.object)?;
    let d = c1.p2.clone();
    let c = Morphism::from_fn(&c1.object, &b, |p| {
        let (xx, bb) = c1.split(p);
        f.dot(xx, bb)
    });
    let e = Morphism::from_fn(&b, &c1.object, |bb| c1.index(0, bb));
    let graph = ReflexiveGraph::new(d, c, e)?;
    let p2 = c2.p2.clone();
    let p1 = Morphism::from_fn(&c2.object, &c1.object, |q| {
        let (yy, r) = c2.split(q);
        let (xx, bb) = c1.split(r);
        c1.index(m.alpha[yy], f.dot(xx, bb))
    });
    let mu = Morphism::from_fn(&c2.object, &c1.object, |q| {
        let (yy, r) = c2.split(q);
        let (xx, bb) = c1.split(r);
        c1.index(f.plus(yy, bb, xx), bb)
    });
    let e2 = Morphism::from_fn(&c1.object, &c2.object, |r| c2.index(0, r));
    let e1 = Morphism::from_fn(&c1.object, &c2.object, |r| {
        let (xx, bb) = c1.split(r);
        c2.index(m.beta[xx], c1.index(0, bb))
    });
    Precategory::new(graph, p1, p2, e1, e2, mu)
}

/// Objects `B`, arrows `(x, b): b → x · b`, and
/// `(x', x · b) ∘ (x, b) = (x' +_b x, b)`.
pub fn product_model_category(f: &FiberedAction) -> Result<ConcreteCategory> {
    let v = validate_fibered_action(f);
    if !v.passed() {
        return Err(IcatError::LawViolation(v.to_string()));
    }
    if !f.is_square() {
        return Err(IcatError::InvalidDiagram("the category needs Y = X and alpha = beta = 1".into()));
    }
    let (nx, nb) = (f.x, f.b);
    let n = nx * nb;
    let arrows: Vec<Arrow> = (0..n).map(|p| Arrow::Pair(p / nb, p % nb)).collect();
    let dom: Vec<usize> = (0..n).map(|p| p % nb).collect();
    let cod: Vec<usize> = (0..n).map(|p| f.dot(p / nb, p % nb)).collect();
    let mut comp = vec![None; n * n];
    for g in 0..n {
        for h in (0..n).filter(|&h| dom[g] == cod[h]) {
            let (x1, _) = (g / nb, g % nb);
            let (x, b) = (h / nb, h % nb);
            comp[g * n + h] = Some(f.plus(x1, b, x) * nb + b);
        }
    }
    Ok(ConcreteCategory {
        objects: nb,
        arrows,
        dom,
        cod,
        identity: (0..nb).collect(),
        comp,
        associative: associativity_failure(f).is_none(),
    })
}

/// Searches square models with `|X| = nx`, `|B| = nb` that satisfy every
/// displayed law but fail the associativity condition.
pub fn search_nonassociative(nx: usize, nb: usize) -> Option<FiberedAction> {
    let xi_free: Vec<usize> = (nb..nx * nb).collect();
    let mut xi = vec![0; nx * nb];
    for b in 0..nb {
        xi[b] = b;
    }
    let mut found = None;
    odometer(xi_free.len(), nb, |vals| {
        for (slot, &v) in xi_free.iter().zip(vals) {
            xi[*slot] = v;
        }
        found = search_mu(nx, nb, &xi);
        found.is_some()
    });
    found
}

fn search_mu(nx: usize, nb: usize, xi: &[usize]) -> Option<FiberedAction> {
    let dot = |x: usize, b: usize| xi[x * nb + b];
    // each free entry (y, b, x) with y, x nonzero must satisfy the
    // compatibility law, which constrains it independently
    let mut entries = Vec::new();
    let mut choices = Vec::new();
    for y in 1..nx {
        for b in 0..nb {
            for x in 1..nx {
                let target = dot(y, dot(x, b));
                let ok: Vec<usize> = (0..nx).filter(|&s| dot(s, b) == target).collect();
                if ok.is_empty() {
                    return None;
                }
                entries.push((y * nb + b) * nx + x);
                choices.push(ok);
            }
        }
    }
    let mut mu = vec![0; nx * nb * nx];
    for y in 0..nx {
        for b in 0..nb {
            mu[(y * nb + b) * nx] = y;
            mu[b * nx + y] = y;
        }
    }
    let mut found = None;
    let radices: Vec<usize> = choices.iter().map(|c| c.len()).collect();
    mixed_odometer(&radices, |ix| {
        for (k, &i) in ix.iter().enumerate() {
            mu[entries[k]] = choices[k][i];
        }
        let f = FiberedAction::with_sum(nx, nb, xi.to_vec(), mu.clone());
        if validate_fibered_action(&f).passed() && associativity_failure(&f).is_some() {
            found = Some(f);
            return true;
        }
        false
    });
    found
}

fn odometer(len: usize, radix: usize, f: impl FnMut(&[usize]) -> bool) {
    mixed_odometer(&vec![radix; len], f)
}

/// Visits every digit vector in lexicographic order until `f` returns true.
fn mixed_odometer(radices: &[usize], mut f: impl FnMut(&[usize]) -> bool) {
    if radices.contains(&0) {
        return;
    }
    let mut digits = vec![0; radices.len()];
    loop {
        if f(&digits) {
            return;
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Obj {
        Arc::new(Structure::pointed_set(n))
    }

    #[test]
    fn star_of_two_parallel_arrows() {
        let h = Morphism::new(&p(3), &p(2), vec![0, 1, 1]).unwrap();
        let pc = star_precategory(&h).unwrap();
        assert!(pc.validate().passed());
        assert!(pc.is_internal_category().is_pullback);
        let cat = star_category(&h).unwrap();
        assert_eq!(cat.objects, 2);
        assert_eq!(cat.arrow_count(), 4);
        assert_eq!(&cat.dom[2..], &[0, 0]);
        assert_eq!(&cat.cod[2..], &[1, 1]);
        assert!(cat.validate().passed());
    }

    #[test]
    fn star_with_kernel() {
        let h = Morphism::new(&p(3), &p(2), vec![0, 1, 0]).unwrap();
        assert_eq!(star_category(&h), Err(IcatError::KernelNotTrivial(2)));
        assert!(!star_precategory(&h).unwrap().is_internal_category().is_pullback);
    }

    #[test]
    fn xor_model() {
        let f = FiberedAction::xor();
        assert!(validate_fibered_action(&f).passed());
        assert_eq!(associativity_failure(&f), None);
        let cat = product_model_category(&f).unwrap();
        assert_eq!((cat.objects, cat.arrow_count()), (2, 4));
        assert!(cat.validate().passed());
        let pc = product_model_precategory(&f).unwrap();
        let ic = pc.is_internal_category();
        assert!(ic.is_pullback);
        assert_eq!(ic.is_associative, Some(true));
    }

    #[test]
    fn constant_xi_satisfies_compatibility() {
        // both sides of the compatibility law collapse to b
        let mut f = FiberedAction::xor();
        f.xi = vec![0, 1, 0, 1];
        assert!(validate_fibered_action(&f).passed());
        let g = FiberedAction::xor().mutated(3, 1);
        let v = validate_fibered_action(&g);
        assert!(!v.fails("0.b=b"));
        assert!(v.fails("(y+_b x).b=alpha(y).(x.b)"));
    }

    #[test]
    fn xi_only_checks_unit_law() {
        let f = FiberedAction {
            x: 2,
            b: 2,
            xi: vec![0, 1, 0, 0],
            mu: None,
        };
        let v = validate_fibered_action(&f);
        assert!(v.passed());
        assert_eq!(v.checked, vec!["xi table", "0.b=b"]);
    }

    #[test]
    fn trivial_model_is_discrete() {
        let f = FiberedAction::with_sum(1, 3, vec![0, 1, 2], vec![0, 0, 0]);
        let cat = product_model_category(&f).unwrap();
        assert_eq!(cat.arrow_count(), 3);
        assert!(cat.validate().passed());
    }
}
