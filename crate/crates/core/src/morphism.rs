use std::fmt;
use std::sync::Arc;

use crate::error::{IcatError, Result};
use crate::structure::{Obj, Structure};

/// A structure-preserving map stored as a value table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Obj,
    target: Obj,
    map: Vec<usize>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.source, self.target, self.map)
    }
}

impl Morphism {
    /// Validating constructor.
    pub fn new(source: &Obj, target: &Obj, map: Vec<usize>) -> Result<Morphism> {
        let m = Morphism::unchecked(source, target, map);
        m.validate()?;
        Ok(m)
    }

    pub fn unchecked(source: &Obj, target: &Obj, map: Vec<usize>) -> Morphism {
        Morphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            map,
        }
    }

    pub fn from_fn(source: &Obj, target: &Obj, f: impl Fn(usize) -> usize) -> Morphism {
        let map = source.elements().map(f).collect();
        Morphism::unchecked(source, target, map)
    }

    pub fn identity(x: &Obj) -> Morphism {
        Morphism::from_fn(x, x, |i| i)
    }

    pub fn zero(x: &Obj, y: &Obj) -> Result<Morphism> {
        if !x.kind().compatible(y.kind()) {
            return Err(IcatError::KindMismatch(x.kind(), y.kind()));
        }
        Ok(Morphism::from_fn(x, y, |_| 0))
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if !s.kind().compatible(t.kind()) {
            return Err(IcatError::KindMismatch(s.kind(), t.kind()));
        }
        if self.map.len() != s.order() {
            return Err(IcatError::InvalidMorphism(format!(
                "map has length {} but the source has {} elements",
                self.map.len(),
                s.order()
            )));
        }
        if let Some(&v) = self.map.iter().find(|&&v| v >= t.order()) {
            return Err(IcatError::InvalidMorphism(format!(
                "value {v} is outside the target"
            )));
        }
        if self.map[0] != 0 {
            return Err(IcatError::InvalidMorphism(
                "the distinguished element is not preserved".into(),
            ));
        }
        if let Some((x, y)) = self.first_non_homomorphic_pair() {
            return Err(IcatError::InvalidMorphism(format!(
                "f({x}.{y}) != f({x}).f({y})"
            )));
        }
        Ok(())
    }

    fn first_non_homomorphic_pair(&self) -> Option<(usize, usize)> {
        let (s, t) = (&self.source, &self.target);
        if !s.kind().has_table() {
            return None;
        }
        for x in s.elements() {
            for y in s.elements() {
                if self.map[s.op(x, y)] != t.op(self.map[x], self.map[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn source(&self) -> &Obj {
        &self.source
    }

    pub fn target(&self) -> &Obj {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn after(&self, f: &Morphism) -> Morphism {
        assert!(
            f.target.as_ref() == self.source.as_ref(),
            "composing {f:?} with {self:?}: codomain and domain differ"
        );
        Morphism::unchecked(
            &f.source,
            &self.target,
            f.map.iter().map(|&v| self.map[v]).collect(),
        )
    }

    /// `self ∘ f`, reporting an error instead of panicking on mismatched ends.
    pub fn try_after(&self, f: &Morphism) -> Result<Morphism> {
        if f.target.as_ref() != self.source.as_ref() {
            return Err(IcatError::InvalidDiagram(format!(
                "cannot compose {self:?} after {f:?}"
            )));
        }
        Ok(self.after(f))
    }

    /// Same map, reattached to equal-as-structures endpoints.
    pub fn retarget(&self, source: &Obj, target: &Obj) -> Morphism {
        debug_assert!(source.as_ref() == self.source.as_ref());
        debug_assert!(target.as_ref() == self.target.as_ref());
        Morphism::unchecked(source, target, self.map.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.source.as_ref() == self.target.as_ref()
            && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Bijective morphisms of finite structures have structure-preserving
    /// inverses, so bijectivity decides isomorphism.
    pub fn is_iso(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Morphism::unchecked(&self.target, &self.source, inv))
    }

    /// Image of the morphism as a membership vector on the target.
    pub fn image(&self) -> Vec<bool> {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen
    }

    /// Preimage of `y`, in increasing order.
    pub fn preimage(&self, y: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == y).collect()
    }
}

/// `g ∘ f`
pub fn compose(g: &Morphism, f: &Morphism) -> Morphism {
    g.after(f)
}

/// Convenience for building shared structures.
pub fn obj(s: Structure) -> Obj {
    Arc::new(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{named, Kind};

    #[test]
    fn zero_morphism_absorbs() {
        let z2 = obj(Structure::cyclic(2, Kind::Group));
        let z3 = obj(Structure::cyclic(3, Kind::Group));
        let s3 = obj(named::s3());
        assert_eq!(Morphism::zero(&z2, &z3).unwrap().map(), &[0, 0]);
        assert_eq!(Morphism::zero(&s3, &z2).unwrap().map(), &[0; 6]);
        let ps = obj(Structure::pointed_set(3));
        assert!(Morphism::zero(&ps, &z2).is_err());
    }

    #[test]
    fn validation_rejects_non_homomorphisms() {
        let z4 = obj(Structure::cyclic(4, Kind::Group));
        let z2 = obj(Structure::cyclic(2, Kind::Group));
        assert!(Morphism::new(&z4, &z2, vec![0, 1, 0, 1]).is_ok());
        assert!(Morphism::new(&z4, &z2, vec![0, 1, 1, 0]).is_err());
        assert!(Morphism::new(&z4, &z2, vec![1, 1, 0, 1]).is_err());
        assert!(Morphism::new(&z2, &z4, vec![0, 1]).is_err());
        assert!(Morphism::new(&z2, &z4, vec![0, 2]).is_ok());
    }

    #[test]
    fn inverse_of_automorphism() {
        let z5 = obj(Structure::cyclic(5, Kind::Group));
        let f = Morphism::new(&z5, &z5, vec![0, 2, 4, 1, 3]).unwrap();
        let g = f.inverse().unwrap();
        assert!(g.after(&f).is_identity());
        assert!(g.validate().is_ok());
    }
}
