//! Limits and colimits that each ambient category supplies.

use std::sync::Arc;

use crate::error::{IcatError, Result};
use crate::morphism::Morphism;
use crate::structure::{Kind, Obj, Structure};

/// Binary product with its projections. Element `(x, b)` is stored at
/// `x * |B| + b`.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Obj,
    pub p1: Morphism,
    pub p2: Morphism,
    left: usize,
    right: usize,
}

impl Product {
    pub fn new(x: &Obj, b: &Obj) -> Result<Product> {
        let kind = x.kind().join(b.kind())?;
        let (nx, nb) = (x.order(), b.order());
        let n = nx * nb;
        let mut s = if kind.has_table() {
            let mut t = vec![0; n * n];
            for p in 0..n {
                let (x1, b1) = (p / nb, p % nb);
                for q in 0..n {
                    let (x2, b2) = (q / nb, q % nb);
                    t[p * n + q] = x.op(x1, x2) * nb + b.op(b1, b2);
                }
            }
            Structure::from_flat_unchecked(kind, n, t)
        } else {
            Structure::pointed_set(n)
        };
        s = s.with_name(format!("{}x{}", x.label(), b.label()));
        let object = Arc::new(s);
        let p1 = Morphism::from_fn(&object, x, |p| p / nb);
        let p2 = Morphism::from_fn(&object, b, |p| p % nb);
        Ok(Product {
            object,
            p1,
            p2,
            left: nx,
            right: nb,
        })
    }

    #[inline]
    pub fn index(&self, x: usize, b: usize) -> usize {
        x * self.right + b
    }

    #[inline]
    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.right, p % self.right)
    }

    pub fn left_order(&self) -> usize {
        self.left
    }

    pub fn right_order(&self) -> usize {
        self.right
    }

    /// `⟨f, g⟩: T → X × B`
    pub fn pair(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        if f.source().as_ref() != g.source().as_ref() {
            return Err(IcatError::InvalidDiagram("pairing needs a common source".into()));
        }
        if f.target().as_ref() != self.p1.target().as_ref()
            || g.target().as_ref() != self.p2.target().as_ref()
        {
            return Err(IcatError::InvalidDiagram("pairing targets differ from the factors".into()));
        }
        Ok(Morphism::from_fn(f.source(), &self.object, |t| {
            self.index(f.apply(t), g.apply(t))
        }))
    }

    /// `ι₁ = ⟨1, 0⟩` and `ι₂ = ⟨0, 1⟩`.
    pub fn injections(&self) -> (Morphism, Morphism) {
        let x = self.p1.target();
        let b = self.p2.target();
        (
            Morphism::from_fn(x, &self.object, |v| self.index(v, 0)),
            Morphism::from_fn(b, &self.object, |v| self.index(0, v)),
        )
    }

    /// The diagonal `⟨1, 1⟩: B → B × B` (only for squares).
    pub fn diagonal(&self) -> Morphism {
        let b = self.p2.target();
        assert!(self.p1.target().as_ref() == b.as_ref());
        Morphism::from_fn(b, &self.object, |v| self.index(v, v))
    }

    /// `f × g: X × B → X' × B'` where `other` is the target product.
    pub fn map_to(&self, other: &Product, f: &Morphism, g: &Morphism) -> Morphism {
        Morphism::from_fn(&self.object, &other.object, |p| {
            let (x, b) = self.split(p);
            other.index(f.apply(x), g.apply(b))
        })
    }
}

/// Binary coproduct. Pointed sets use the wedge: `0`, then `X \ {0}` at
/// `1..|X|`, then `B \ {0}` after it. Abelian groups use the biproduct on the
/// product carrier.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Obj,
    pub i1: Morphism,
    pub i2: Morphism,
    product: Option<Product>,
}

impl Coproduct {
    pub fn new(x: &Obj, b: &Obj) -> Result<Coproduct> {
        match (x.kind(), b.kind()) {
            (Kind::PointedSet, Kind::PointedSet) => {
                let (nx, nb) = (x.order(), b.order());
                let object = Arc::new(
                    Structure::pointed_set(nx + nb - 1)
                        .with_name(format!("{}v{}", x.label(), b.label())),
                );
                let i1 = Morphism::from_fn(x, &object, |v| v);
                let i2 = Morphism::from_fn(b, &object, |v| if v == 0 { 0 } else { nx - 1 + v });
                Ok(Coproduct {
                    object,
                    i1,
                    i2,
                    product: None,
                })
            }
            (Kind::AbelianGroup, Kind::AbelianGroup) => {
                let p = Product::new(x, b)?;
                let (i1, i2) = p.injections();
                Ok(Coproduct {
                    object: p.object.clone(),
                    i1,
                    i2,
                    product: Some(p),
                })
            }
            (Kind::PointedSet, k) | (k, _) => Err(IcatError::UnsupportedCoproduct(k)),
        }
    }

    /// The biproduct structure, when the coproduct is one.
    pub fn as_product(&self) -> Option<&Product> {
        self.product.as_ref()
    }

    /// `[f g]: X ⊔ B → T`
    pub fn copair(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        if f.target().as_ref() != g.target().as_ref() {
            return Err(IcatError::InvalidDiagram("copairing needs a common target".into()));
        }
        if f.source().as_ref() != self.i1.source().as_ref()
            || g.source().as_ref() != self.i2.source().as_ref()
        {
            return Err(IcatError::InvalidDiagram("copairing sources differ from the summands".into()));
        }
        let t = f.target();
        let m = match &self.product {
            Some(p) => Morphism::from_fn(&self.object, t, |v| {
                let (x, b) = p.split(v);
                t.op(f.apply(x), g.apply(b))
            }),
            None => {
                let nx = f.source().order();
                Morphism::from_fn(&self.object, t, |v| {
                    if v < nx {
                        f.apply(v)
                    } else {
                        g.apply(v - nx + 1)
                    }
                })
            }
        };
        m.validate()?;
        Ok(m)
    }

    /// `f ⊔ g: X ⊔ B → X' ⊔ B'`
    pub fn map_to(&self, other: &Coproduct, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.copair(&other.i1.after(f), &other.i2.after(g))
    }
}

/// Kernel of a morphism: the preimage of 0, renumbered in increasing order,
/// with its inclusion.
pub fn kernel(alpha: &Morphism) -> (Obj, Morphism) {
    let a = alpha.source();
    let members: Vec<usize> = alpha.preimage(0);
    substructure(a, &members, format!("ker({})", a.label()))
}

/// Substructure on the listed elements (which must contain 0 first and be
/// closed under the operation), with its inclusion.
pub fn substructure(a: &Obj, members: &[usize], name: String) -> (Obj, Morphism) {
    debug_assert_eq!(members.first(), Some(&0));
    let m = members.len();
    let s = if a.kind().has_table() {
        let mut pos = vec![usize::MAX; a.order()];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let mut t = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                t[i * m + j] = pos[a.op(members[i], members[j])];
            }
        }
        Structure::from_flat_unchecked(a.kind(), m, t)
    } else {
        Structure::pointed_set(m)
    };
    let k_obj = Arc::new(s.with_name(name));
    let k = Morphism::unchecked(&k_obj, a, members.to_vec());
    (k_obj, k)
}

/// Union-find over element indices.
#[derive(Clone, Debug)]
pub struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Partition {
        Partition {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Merges the classes of `x` and `y`; returns whether they were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // keep the smaller representative as root
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    /// Closes the partition into a congruence of `s` (and, for unital magmas,
    /// into one whose quotient is right-cancellative).
    pub fn close_congruence(&mut self, s: &Structure) {
        if !s.kind().has_table() {
            return;
        }
        let n = s.order();
        loop {
            let mut changed = false;
            for x in 0..n {
                let r = self.find(x);
                if r == x {
                    continue;
                }
                for z in 0..n {
                    changed |= self.union(s.op(x, z), s.op(r, z));
                    changed |= self.union(s.op(z, x), s.op(z, r));
                }
            }
            if s.kind() == Kind::UnitalMagma {
                // x z ~ y z forces x ~ y in a right-cancellative quotient
                for z in 0..n {
                    let mut first_by_class = vec![usize::MAX; n];
                    for x in 0..n {
                        let c = self.find(s.op(x, z));
                        if first_by_class[c] == usize::MAX {
                            first_by_class[c] = x;
                        } else {
                            changed |= self.union(first_by_class[c], x);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Class labels: the class of 0 is 0, remaining classes numbered by their
    /// smallest member.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels[x] = label_of_root[r];
        }
        (labels, next)
    }
}

/// Quotient of `s` by a partition that is already a congruence.
pub fn quotient(s: &Obj, partition: &mut Partition) -> (Obj, Morphism) {
    let (labels, q) = partition.labels();
    let structure = if s.kind().has_table() {
        let mut rep = vec![usize::MAX; q];
        for (x, &l) in labels.iter().enumerate() {
            if rep[l] == usize::MAX {
                rep[l] = x;
            }
        }
        let mut t = vec![0; q * q];
        for i in 0..q {
            for j in 0..q {
                t[i * q + j] = labels[s.op(rep[i], rep[j])];
            }
        }
        Structure::from_flat_unchecked(s.kind(), q, t)
    } else {
        Structure::pointed_set(q)
    };
    let obj = Arc::new(structure.with_name(format!("{}/~", s.label())));
    let sigma = Morphism::unchecked(s, &obj, labels);
    (obj, sigma)
}

/// Coequalizer of a parallel pair `d, c: C₁ → C₀`.
#[derive(Clone, Debug)]
pub struct Coequalizer {
    pub object: Obj,
    pub sigma: Morphism,
}

impl Coequalizer {
    pub fn new(d: &Morphism, c: &Morphism) -> Result<Coequalizer> {
        if d.source().as_ref() != c.source().as_ref() || d.target().as_ref() != c.target().as_ref() {
            return Err(IcatError::InvalidDiagram("coequalizer needs a parallel pair".into()));
        }
        let c0 = d.target();
        let mut p = Partition::discrete(c0.order());
        for y in d.source().elements() {
            p.union(d.apply(y), c.apply(y));
        }
        p.close_congruence(c0);
        let (object, sigma) = quotient(c0, &mut p);
        Ok(Coequalizer { object, sigma })
    }

    /// Coequalizer of a reflexive pair, checking `de = 1 = ce` first.
    pub fn of_reflexive(d: &Morphism, c: &Morphism, e: &Morphism) -> Result<Coequalizer> {
        if !d.after(e).is_identity() || !c.after(e).is_identity() {
            return Err(IcatError::InvalidDiagram("e is not a common section of d and c".into()));
        }
        Coequalizer::new(d, c)
    }

    /// The unique `q'` with `q' σ = q`, if `q` is constant on classes.
    pub fn factor(&self, q: &Morphism) -> Result<Morphism> {
        if q.source().as_ref() != self.sigma.source().as_ref() {
            return Err(IcatError::FactorizationFailure("source is not the coequalized object".into()));
        }
        let mut out = vec![usize::MAX; self.object.order()];
        for x in q.source().elements() {
            let l = self.sigma.apply(x);
            let v = q.apply(x);
            if out[l] == usize::MAX {
                out[l] = v;
            } else if out[l] != v {
                return Err(IcatError::FactorizationFailure(format!(
                    "elements in class {l} have different images"
                )));
            }
        }
        let f = Morphism::unchecked(&self.object, q.target(), out);
        f.validate()
            .map_err(|e| IcatError::FactorizationFailure(e.to_string()))?;
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::obj;
    use crate::structure::named;

    fn grp(n: usize) -> Obj {
        obj(Structure::cyclic(n, Kind::AbelianGroup))
    }

    #[test]
    fn product_of_z2_is_klein_four() {
        let p = Product::new(&grp(2), &grp(2)).unwrap();
        assert_eq!(p.object.order(), 4);
        assert!(p.object.validate().is_ok());
        // every element is its own inverse: xor table
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(p.object.op(x, y), x ^ y);
            }
        }
        let pp = Product::new(&obj(Structure::pointed_set(3)), &obj(Structure::pointed_set(2))).unwrap();
        assert_eq!(pp.object.order(), 6);
        let b = grp(3);
        let sq = Product::new(&b, &b).unwrap();
        assert!(sq.p2.after(&sq.diagonal()).is_identity());
    }

    #[test]
    fn coproducts() {
        let w = Coproduct::new(&obj(Structure::pointed_set(3)), &obj(Structure::pointed_set(2))).unwrap();
        assert_eq!(w.object.order(), 4);
        let bi = Coproduct::new(&grp(2), &grp(4)).unwrap();
        assert_eq!(bi.object.order(), 8);
        assert_eq!(bi.i1.map(), &[0, 4]);
        for c in [&w, &bi] {
            let zero = Morphism::zero(c.i1.source(), c.i2.source()).unwrap();
            let id = Morphism::identity(c.i2.source());
            let proj = c.copair(&zero, &id).unwrap();
            assert!(proj.after(&c.i1).is_zero());
            assert!(proj.after(&c.i2).is_identity());
        }
        let s3 = obj(named::s3());
        assert!(matches!(
            Coproduct::new(&s3, &s3),
            Err(IcatError::UnsupportedCoproduct(Kind::Group))
        ));
    }

    #[test]
    fn kernel_of_sign() {
        let s3 = obj(named::s3());
        let z2 = obj(Structure::cyclic(2, Kind::Group));
        let sign = Morphism::new(&s3, &z2, vec![0, 1, 1, 1, 0, 0]).unwrap();
        let (k, inc) = kernel(&sign);
        assert_eq!(k.order(), 3);
        assert_eq!(inc.map(), &[0, 4, 5]);
        assert!(k.validate().is_ok());
    }

    #[test]
    fn coequalizer_examples() {
        // pointed sets: d(1) = 1, c(1) = 2
        let c1 = obj(Structure::pointed_set(2));
        let c0 = obj(Structure::pointed_set(3));
        let d = Morphism::unchecked(&c1, &c0, vec![0, 1]);
        let c = Morphism::unchecked(&c1, &c0, vec![0, 2]);
        let q = Coequalizer::new(&d, &c).unwrap();
        assert_eq!(q.object.order(), 2);
        assert_eq!(q.sigma.map(), &[0, 1, 1]);
        // abelian groups: d - c = 2x on Z4
        let z4 = grp(4);
        let d = Morphism::new(&z4, &z4, vec![0, 3, 2, 1]).unwrap();
        let c = Morphism::new(&z4, &z4, vec![0, 1, 2, 3]).unwrap();
        let q = Coequalizer::new(&d, &c).unwrap();
        assert_eq!(q.object.order(), 2);
        // equal legs
        let q = Coequalizer::new(&c, &c).unwrap();
        assert!(q.sigma.is_identity());
    }

    #[test]
    fn group_coequalizer_takes_normal_closure() {
        // identify (12) with e in S3: the normal closure is all of S3
        let s3 = obj(named::s3());
        let z2 = obj(Structure::cyclic(2, Kind::Group));
        let d = Morphism::new(&z2, &s3, vec![0, 1]).unwrap();
        let c = Morphism::zero(&z2, &s3).unwrap();
        let q = Coequalizer::new(&d, &c).unwrap();
        assert_eq!(q.object.order(), 1);
    }
}
