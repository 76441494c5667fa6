//! Deterministic corpora of small structures, one representative per
//! isomorphism class.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{IcatError, Result};
use crate::structure::{named, Kind, Obj, Structure};

/// Largest size accepted by [`enumerate`] for each kind.
pub fn hard_cap(kind: Kind) -> usize {
    match kind {
        Kind::PointedSet => 16,
        Kind::AbelianGroup => 64,
        Kind::Group => 12,
        Kind::UnitalMagma => 5,
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub kind: Kind,
    pub max_size: usize,
    pub items: Vec<Obj>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub max_size: usize,
}

impl Corpus {
    pub fn names(&self) -> Vec<String> {
        self.items.iter().map(|s| s.label()).collect()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// One structure per isomorphism class of the given kind, up to `max_size`
/// elements, in increasing order of size.
pub fn enumerate(kind: Kind, max_size: usize) -> Result<Corpus> {
    let cap = hard_cap(kind);
    if max_size > cap {
        return Err(IcatError::BoundTooLarge {
            what: format!("{kind} corpus"),
            requested: max_size,
            cap,
        });
    }
    let (items, generator): (Vec<Obj>, &str) = match kind {
        Kind::PointedSet => (
            (1..=max_size)
                .map(|n| Arc::new(Structure::pointed_set(n)))
                .collect(),
            "pointed-sets-by-size",
        ),
        Kind::AbelianGroup => (
            (1..=max_size)
                .flat_map(|n| {
                    invariant_factor_lists(n)
                        .into_iter()
                        .map(|f| Arc::new(named::cyclic_product(&f, Kind::AbelianGroup)))
                })
                .collect(),
            "invariant-factors",
        ),
        Kind::Group => (
            builtin_groups()
                .iter()
                .filter(|g| g.order() <= max_size)
                .cloned()
                .collect(),
            "builtin-group-tables",
        ),
        Kind::UnitalMagma => (
            right_cancellative_magmas()
                .iter()
                .filter(|g| g.order() <= max_size)
                .cloned()
                .collect(),
            "column-permutation-search",
        ),
    };
    Ok(Corpus {
        kind,
        max_size,
        items,
        provenance: Provenance {
            generator: generator.to_string(),
            max_size,
        },
    })
}

/// Invariant factor lists `d_1 | d_2 | ...` with product `n`, written with the
/// largest factor first; the cyclic group comes first.
pub fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        // next factor divides the previous one and the remaining order
        for d in (2..=max.min(rest)).rev() {
            if rest.is_multiple_of(d) && acc.last().is_none_or(|&p| p % d == 0) {
                acc.push(d);
                rec(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every group of order at most 12, one per isomorphism class.
pub fn builtin_groups() -> &'static [Obj] {
    static GROUPS: OnceLock<Vec<Obj>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let g = Kind::Group;
        let cyc = |n: usize| Structure::cyclic(n, g);
        let prod = |f: &[usize]| named::cyclic_product(f, g);
        let list = vec![
            cyc(1),
            cyc(2),
            cyc(3),
            cyc(4),
            prod(&[2, 2]),
            cyc(5),
            cyc(6),
            named::s3(),
            cyc(7),
            cyc(8),
            prod(&[4, 2]),
            prod(&[2, 2, 2]),
            named::dihedral(4),
            named::quaternion(),
            cyc(9),
            prod(&[3, 3]),
            cyc(10),
            named::dihedral(5),
            cyc(11),
            cyc(12),
            prod(&[6, 2]),
            named::a4(),
            named::dihedral(6),
            named::dicyclic3(),
        ];
        list.into_iter().map(Arc::new).collect()
    })
}

/// Looks up a built-in structure by name (`Z6`, `S3`, `Z2xZ2`, `D4`, `Q8`,
/// `A4`, `Dic3`, ...). Abelian names may carry an `ab:` prefix to get the
/// abelian-group kind, and `P<n>` names a pointed set.
pub fn by_name(name: &str) -> Result<Obj> {
    if let Some(rest) = name.strip_prefix("ab:") {
        let g = by_name(rest)?;
        return Ok(Arc::new(g.with_kind(Kind::AbelianGroup)?));
    }
    if let Some(n) = name.strip_prefix('P').and_then(|n| n.parse::<usize>().ok()) {
        if n > 0 {
            return Ok(Arc::new(Structure::pointed_set(n)));
        }
    }
    if let Some(g) = builtin_groups().iter().find(|g| g.name() == Some(name)) {
        return Ok(g.clone());
    }
    // any product of cyclic groups
    let factors: Option<Vec<usize>> = name
        .split('x')
        .map(|p| p.strip_prefix('Z').and_then(|n| n.parse().ok()).filter(|&n| n > 0))
        .collect();
    match factors {
        Some(f) if !f.is_empty() && f.iter().product::<usize>() <= 4096 => {
            Ok(Arc::new(named::cyclic_product(&f, Kind::Group)))
        }
        _ => Err(IcatError::UnknownName(name.to_string())),
    }
}

/// Unital magmas with right cancellation of size at most 5, up to isomorphism.
///
/// Column 0 is forced by unitality; every other column `c` is a permutation
/// sending 0 to `c`. A table is kept when it is the lexicographically smallest
/// among its relabelings fixing 0.
pub fn right_cancellative_magmas() -> &'static [Obj] {
    static MAGMAS: OnceLock<Vec<Obj>> = OnceLock::new();
    MAGMAS.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=hard_cap(Kind::UnitalMagma) {
            for (i, t) in canonical_magma_tables(n).into_iter().enumerate() {
                let s = Structure::from_flat_unchecked(Kind::UnitalMagma, n, t)
                    .with_name(format!("M{n}.{}", i + 1));
                out.push(Arc::new(s));
            }
        }
        out
    })
}

fn canonical_magma_tables(n: usize) -> Vec<Vec<usize>> {
    let relabelings: Vec<Vec<usize>> = named::permutations(n)
        .into_iter()
        .filter(|p| p[0] == 0)
        .collect();
    // for column c, all permutations of 0..n with row 0 ↦ c
    let columns: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|c| {
            named::permutations(n)
                .into_iter()
                .filter(|p| p[0] == c && (c != 0 || p.iter().enumerate().all(|(i, &v)| i == v)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    let mut table = vec![0usize; n * n];
    loop {
        for c in 0..n {
            let col = &columns[c][choice[c]];
            for r in 0..n {
                table[r * n + c] = col[r];
            }
        }
        if is_canonical(&table, n, &relabelings) {
            out.push(table.clone());
        }
        let mut c = 1;
        while c < n {
            choice[c] += 1;
            if choice[c] < columns[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
        if c >= n {
            break;
        }
    }
    out
}

fn is_canonical(table: &[usize], n: usize, relabelings: &[Vec<usize>]) -> bool {
    for p in relabelings {
        // compare relabeled table with the original, entry by entry in
        // row-major order of the new labels
        let mut inv = vec![0; n];
        for (i, &v) in p.iter().enumerate() {
            inv[v] = i;
        }
        for idx in 0..n * n {
            let (i, j) = (idx / n, idx % n);
            let relabeled = p[table[inv[i] * n + inv[j]]];
            let orig = table[idx];
            if relabeled < orig {
                return false;
            }
            if relabeled > orig {
                break;
            }
        }
    }
    true
}

/// Group tables of order `n` found by a Latin-square search with incremental
/// associativity checks, reduced up to isomorphism. Independent of the
/// built-in constructions and used to audit them.
pub fn search_group_tables(n: usize) -> Vec<Obj> {
    let mut found: Vec<Obj> = Vec::new();
    let mut t = vec![usize::MAX; n * n];
    for x in 0..n {
        t[x] = x;
        t[x * n] = x;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
    fn consistent(t: &[usize], n: usize, x: usize, y: usize, v: usize) -> bool {
        const U: usize = usize::MAX;
        let get = |a: usize, b: usize| if a == U || b == U { U } else { t[a * n + b] };
        for z in 0..n {
            // (x y) z = x (y z)
            let l = get(v, z);
            let r = get(x, get(y, z));
            if l != U && r != U && l != r {
                return false;
            }
            // (z x) y = z (x y)
            let l = get(get(z, x), y);
            let r = get(z, v);
            if l != U && r != U && l != r {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                // (a b) y with a b = x
                if get(a, b) == x {
                    let r = get(a, get(b, y));
                    if r != U && r != v {
                        return false;
                    }
                }
                // x (a b) with a b = y
                if get(a, b) == y {
                    let l = get(get(x, a), b);
                    if l != U && l != v {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec(
        t: &mut Vec<usize>,
        n: usize,
        cells: &[(usize, usize)],
        k: usize,
        found: &mut Vec<Obj>,
    ) {
        if k == cells.len() {
            let s = Arc::new(Structure::from_flat_unchecked(Kind::Group, n, t.clone()));
            if s.validate().is_ok() && !found.iter().any(|f| crate::homs::isomorphic(f, &s)) {
                found.push(s);
            }
            return;
        }
        let (x, y) = cells[k];
        for v in 0..n {
            let row_clash = (0..n).any(|c| t[x * n + c] == v);
            let col_clash = (0..n).any(|r| t[r * n + y] == v);
            if row_clash || col_clash {
                continue;
            }
            t[x * n + y] = v;
            if consistent(t, n, x, y, v) {
                rec(t, n, cells, k + 1, found);
            }
            t[x * n + y] = usize::MAX;
        }
    }
    if n == 1 {
        return vec![Arc::new(Structure::cyclic(1, Kind::Group))];
    }
    rec(&mut t, n, &cells, 0, &mut found);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homs::isomorphic;

    #[test]
    fn abelian_groups_up_to_eight() {
        let c = enumerate(Kind::AbelianGroup, 8).unwrap();
        assert_eq!(
            c.names(),
            vec![
                "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z4xZ2", "Z2xZ2xZ2"
            ]
        );
        for g in &c.items {
            assert!(g.validate().is_ok());
        }
    }

    #[test]
    fn groups_up_to_six() {
        let c = enumerate(Kind::Group, 6).unwrap();
        assert_eq!(
            c.names(),
            vec!["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3"]
        );
    }

    #[test]
    fn builtin_groups_are_pairwise_non_isomorphic() {
        let gs = builtin_groups();
        assert_eq!(gs.len(), 24);
        for (i, a) in gs.iter().enumerate() {
            assert!(a.validate().is_ok(), "{a:?}");
            for b in &gs[..i] {
                assert!(!isomorphic(a, b), "{a:?} ~ {b:?}");
            }
        }
    }

    #[test]
    fn hard_caps_are_enforced() {
        assert!(matches!(
            enumerate(Kind::Group, 13),
            Err(IcatError::BoundTooLarge { cap: 12, .. })
        ));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("S3").unwrap().order(), 6);
        assert_eq!(by_name("Z2xZ3").unwrap().order(), 6);
        assert_eq!(by_name("ab:Z4").unwrap().kind(), Kind::AbelianGroup);
        assert_eq!(by_name("P4").unwrap().kind(), Kind::PointedSet);
        assert!(by_name("nope").is_err());
    }
}
