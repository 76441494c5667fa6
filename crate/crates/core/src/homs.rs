//! Enumeration of morphisms between finite structures and isomorphism search.
//!
//! The search assigns images to a greedy generating set in element order and
//! propagates every product as soon as both factors have images, so partial
//! assignments that cannot extend to a morphism are cut immediately.

use std::ops::ControlFlow;

use crate::morphism::Morphism;
use crate::structure::{Obj, Structure};

const UNSET: usize = usize::MAX;

/// Restrictions on the morphisms produced by [`HomSearch`].
#[derive(Clone, Debug, Default)]
pub struct HomSearch {
    /// Only target elements marked `true` may appear as values.
    pub allowed: Option<Vec<bool>>,
    /// Pre-assigned values for some source elements.
    pub fixed: Vec<(usize, usize)>,
    /// Only injective maps.
    pub injective: bool,
    /// Prune with element signatures (sound only for isomorphisms).
    pub signatures: bool,
}

struct Search<'a> {
    s: &'a Structure,
    t: &'a Structure,
    img: Vec<usize>,
    used: Vec<bool>,
    known: Vec<usize>,
    trail: Vec<usize>,
    opts: &'a HomSearch,
    gens: Vec<usize>,
    sig_s: Vec<[usize; 4]>,
    sig_t: Vec<[usize; 4]>,
}

impl<'a> Search<'a> {
    fn allowed(&self, y: usize) -> bool {
        self.opts.allowed.as_ref().is_none_or(|a| a[y])
    }

    /// Assigns `x ↦ y` and propagates; returns false on conflict. All changes
    /// are recorded on the trail.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            let cur = self.img[x];
            if cur != UNSET {
                if cur != y {
                    return false;
                }
                continue;
            }
            if !self.allowed(y) || (self.opts.injective && self.used[y]) {
                return false;
            }
            if self.opts.signatures && self.sig_s[x] != self.sig_t[y] {
                return false;
            }
            self.img[x] = y;
            self.used[y] = true;
            self.trail.push(x);
            self.known.push(x);
            if !self.s.kind().has_table() {
                continue;
            }
            // every pair involving x and a known element, including (x, x)
            let count = self.known.len();
            for i in 0..count {
                let z = self.known[i];
                let iz = self.img[z];
                queue.push((self.s.op(x, z), self.t.op(y, iz)));
                queue.push((self.s.op(z, x), self.t.op(iz, y)));
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.used[self.img[x]] = false;
            self.img[x] = UNSET;
            self.known.pop();
        }
    }

    fn run<F>(&mut self, depth: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        // skip generators already reached by propagation
        let mut d = depth;
        while d < self.gens.len() && self.img[self.gens[d]] != UNSET {
            d += 1;
        }
        if d == self.gens.len() {
            debug_assert!(self.img.iter().all(|&v| v != UNSET));
            return f(&self.img);
        }
        let g = self.gens[d];
        for y in 0..self.t.order() {
            let mark = self.trail.len();
            if self.assign(g, y) {
                self.run(d + 1, f)?;
            }
            self.undo_to(mark);
        }
        ControlFlow::Continue(())
    }
}

impl HomSearch {
    pub fn all() -> HomSearch {
        HomSearch::default()
    }

    pub fn isomorphisms() -> HomSearch {
        HomSearch {
            injective: true,
            signatures: true,
            ..HomSearch::default()
        }
    }

    /// Calls `f` on the value table of every matching morphism, in
    /// lexicographic order of generator images.
    pub fn for_each<F>(&self, source: &Structure, target: &Structure, mut f: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.injective && source.order() > target.order() {
            return;
        }
        if source.kind().has_table() != target.kind().has_table() {
            return;
        }
        let mut gens = source.generators();
        // fixed elements first so their propagation prunes early
        let mut search = Search {
            s: source,
            t: target,
            img: vec![UNSET; source.order()],
            used: vec![false; target.order()],
            known: Vec::new(),
            trail: Vec::new(),
            opts: self,
            gens: Vec::new(),
            sig_s: Vec::new(),
            sig_t: Vec::new(),
        };
        if self.signatures {
            search.sig_s = source.elements().map(|x| source.signature(x)).collect();
            search.sig_t = target.elements().map(|y| target.signature(y)).collect();
        }
        if !search.assign(0, 0) {
            return;
        }
        for &(x, y) in &self.fixed {
            if !search.assign(x, y) {
                return;
            }
        }
        gens.retain(|&g| search.img[g] == UNSET);
        search.gens = gens;
        let _ = search.run(0, &mut f);
    }

    pub fn collect(&self, source: &Obj, target: &Obj) -> Vec<Morphism> {
        let mut out = Vec::new();
        self.for_each(source, target, |m| {
            out.push(Morphism::unchecked(source, target, m.to_vec()));
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first(&self, source: &Obj, target: &Obj) -> Option<Morphism> {
        let mut out = None;
        self.for_each(source, target, |m| {
            out = Some(Morphism::unchecked(source, target, m.to_vec()));
            ControlFlow::Break(())
        });
        out
    }

    pub fn count(&self, source: &Structure, target: &Structure) -> usize {
        let mut n = 0;
        self.for_each(source, target, |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

/// All morphisms `source → target`.
pub fn homs(source: &Obj, target: &Obj) -> Vec<Morphism> {
    HomSearch::all().collect(source, target)
}

/// An isomorphism `x → y`, trying the identity first.
pub fn find_isomorphism(x: &Obj, y: &Obj) -> Option<Morphism> {
    if x.order() != y.order() || x.kind().has_table() != y.kind().has_table() {
        return None;
    }
    if x.as_ref() == y.as_ref() {
        return Some(Morphism::identity(x).retarget(x, y));
    }
    if let (Some(mut a), Some(mut b)) = (x.invariant_factors(), y.invariant_factors()) {
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    HomSearch::isomorphisms().first(x, y)
}

pub fn isomorphic(x: &Obj, y: &Obj) -> bool {
    find_isomorphism(x, y).is_some()
}

/// All automorphisms of `x`.
pub fn automorphisms(x: &Obj) -> Vec<Morphism> {
    HomSearch::isomorphisms().collect(x, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::obj;
    use crate::structure::{named, Kind, Structure};

    fn brute_force_count(s: &Structure, t: &Structure) -> usize {
        // every pointed map, filtered by the homomorphism law
        let n = s.order();
        let m = t.order();
        let mut count = 0;
        let mut map = vec![0; n];
        loop {
            let ok = !s.kind().has_table()
                || (0..n).all(|x| (0..n).all(|y| map[s.op(x, y)] == t.op(map[x], map[y])));
            if ok {
                count += 1;
            }
            let mut i = 1;
            while i < n {
                map[i] += 1;
                if map[i] < m {
                    break;
                }
                map[i] = 0;
                i += 1;
            }
            if i == n {
                return count;
            }
        }
    }

    #[test]
    fn counts_agree_with_brute_force() {
        let objs = [
            Structure::cyclic(2, Kind::Group),
            Structure::cyclic(3, Kind::Group),
            Structure::cyclic(4, Kind::Group),
            named::cyclic_product(&[2, 2], Kind::Group),
            named::s3(),
            Structure::pointed_set(3),
        ];
        for s in &objs {
            for t in &objs {
                if s.kind().has_table() != t.kind().has_table() {
                    continue;
                }
                assert_eq!(
                    HomSearch::all().count(s, t),
                    brute_force_count(s, t),
                    "{s:?} -> {t:?}"
                );
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let z4 = obj(Structure::cyclic(4, Kind::AbelianGroup));
        let v4 = obj(named::cyclic_product(&[2, 2], Kind::AbelianGroup));
        assert!(find_isomorphism(&z4, &v4).is_none());
        assert!(find_isomorphism(&v4, &z4).is_none());
        let z6 = obj(Structure::cyclic(6, Kind::AbelianGroup));
        let z2z3 = obj(named::cyclic_product(&[2, 3], Kind::AbelianGroup));
        let iso = find_isomorphism(&z6, &z2z3).unwrap();
        assert!(iso.validate().is_ok() && iso.is_iso());
        assert!(find_isomorphism(&z6, &z6).unwrap().is_identity());
        assert_eq!(automorphisms(&obj(named::s3())).len(), 6);
        assert_eq!(automorphisms(&obj(named::quaternion())).len(), 24);
        assert_eq!(automorphisms(&v4).len(), 6);
    }

    #[test]
    fn constrained_search_respects_fixed_values() {
        let z4 = obj(Structure::cyclic(4, Kind::Group));
        let found = HomSearch {
            fixed: vec![(1, 3)],
            ..HomSearch::default()
        }
        .collect(&z4, &z4);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].map(), &[0, 3, 2, 1]);
    }
}
