//! Joint epimorphism tests.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::homs::HomSearch;
use crate::morphism::Morphism;
use crate::ops::{quotient, Partition};
use crate::structure::Obj;

/// Targets `C` against which parallel pairs `u, v: A → C` are tested.
#[derive(Clone, Debug)]
pub enum ProbeFamily {
    /// `A` itself together with all of its quotients.
    Quotients,
    /// A caller-supplied list of targets.
    Explicit(Vec<Obj>),
}

/// Whether the images of `maps` generate their common target.
pub fn images_generate(maps: &[&Morphism]) -> bool {
    let a = maps[0].target();
    let seeds = maps.iter().flat_map(|m| m.map().iter().copied());
    a.generated_by(seeds).into_iter().all(|b| b)
}

/// Decides whether `(f, g)` is jointly epic. Table-bearing kinds are decided by
/// generation; pointed sets by an exhaustive probe against all quotients.
pub fn jointly_epic(f: &Morphism, g: &Morphism) -> bool {
    assert!(
        f.target().as_ref() == g.target().as_ref(),
        "jointly_epic needs a common target"
    );
    if f.target().kind().has_table() {
        images_generate(&[f, g])
    } else {
        jointly_epic_by_probe(f, g, &ProbeFamily::Quotients)
    }
}

/// Definition-level check: no two distinct morphisms `A → C` agree on the
/// images of `f` and `g`, for every `C` in the probe family.
pub fn jointly_epic_by_probe(f: &Morphism, g: &Morphism, probes: &ProbeFamily) -> bool {
    let a = f.target();
    let mut support: Vec<usize> = f.map().iter().chain(g.map()).copied().collect();
    support.sort_unstable();
    support.dedup();
    let targets = match probes {
        ProbeFamily::Quotients => quotients(a),
        ProbeFamily::Explicit(list) => list.clone(),
    };
    targets.iter().all(|c| {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut distinct = true;
        HomSearch::all().for_each(a, c, |m| {
            let restriction: Vec<usize> = support.iter().map(|&x| m[x]).collect();
            if seen.insert(restriction) {
                ControlFlow::Continue(())
            } else {
                distinct = false;
                ControlFlow::Break(())
            }
        });
        distinct
    })
}

/// All quotients of `a` by congruences (for unital magmas, those with a
/// right-cancellative quotient), `a` itself first.
pub fn quotients(a: &Obj) -> Vec<Obj> {
    let n = a.order();
    let mut out: Vec<Obj> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    // restricted growth strings enumerate set partitions
    let mut rgs = vec![0usize; n];
    loop {
        let mut p = Partition::discrete(n);
        let mut first = vec![usize::MAX; n];
        for (x, &c) in rgs.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = x;
            } else {
                p.union(first[c], x);
            }
        }
        let mut closed = p.clone();
        closed.close_congruence(a);
        let (labels, _) = closed.labels();
        let (orig, _) = p.labels();
        if labels == orig && seen.insert(labels) {
            let (q, _) = quotient(a, &mut closed);
            out.push(q);
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                out.sort_by_key(|q| std::cmp::Reverse(q.order()));
                return out;
            }
            i -= 1;
            let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prev {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// The pair `(⟨1,0⟩, ⟨1,1⟩): B → B × B`.
pub fn product_injections_pair(b: &Obj) -> (Morphism, Morphism) {
    let p = crate::ops::Product::new(b, b).expect("square of a single kind");
    let zero = Morphism::zero(b, b).unwrap();
    let id = Morphism::identity(b);
    let left = p.pair(&id, &zero).unwrap();
    let diag = p.pair(&id, &id).unwrap();
    (left, diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shared(s: Structure) -> Obj {
        Arc::new(s)
    }
    use crate::ops::{kernel, Coproduct};
    use std::sync::Arc;

    use crate::structure::{named, Kind, Structure};

    #[test]
    fn wedge_injections_are_jointly_epic() {
        let x = shared(Structure::pointed_set(3));
        let b = shared(Structure::pointed_set(2));
        let w = Coproduct::new(&x, &b).unwrap();
        assert!(jointly_epic(&w.i1, &w.i2));
        let zero = Morphism::zero(&b, &w.object).unwrap();
        assert!(!jointly_epic(&w.i1, &zero));
    }

    #[test]
    fn kernel_and_section_of_sign_generate_s3() {
        let s3 = shared(named::s3());
        let z2 = shared(Structure::cyclic(2, Kind::Group));
        let sign = Morphism::new(&s3, &z2, vec![0, 1, 1, 1, 0, 0]).unwrap();
        let (_, k) = kernel(&sign);
        let beta = Morphism::new(&z2, &s3, vec![0, 1]).unwrap();
        assert!(jointly_epic(&k, &beta));
        assert!(jointly_epic_by_probe(&k, &beta, &ProbeFamily::Quotients));
    }

    #[test]
    fn quotient_counts() {
        // S3 has three normal subgroups
        assert_eq!(quotients(&shared(named::s3())).len(), 3);
        // a pointed set of size 4 has Bell(4) = 15 partitions
        assert_eq!(quotients(&shared(Structure::pointed_set(4))).len(), 15);
    }
}
