//! Finite carriers with an optional binary operation.
//!
//! Elements are always `0..order`, and element `0` is the distinguished one:
//! the basepoint of a pointed set, the identity of a group or unital magma.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{IcatError, Result};

/// The ambient category a structure lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    PointedSet,
    AbelianGroup,
    Group,
    UnitalMagma,
}

impl Kind {
    pub fn has_table(self) -> bool {
        !matches!(self, Kind::PointedSet)
    }

    pub fn is_group(self) -> bool {
        matches!(self, Kind::Group | Kind::AbelianGroup)
    }

    /// Morphisms may only run between compatible kinds. Abelian groups sit
    /// inside groups; every other kind is only compatible with itself.
    pub fn compatible(self, other: Kind) -> bool {
        self == other || (self.is_group() && other.is_group())
    }

    /// Kind of a product of structures of kinds `self` and `other`.
    pub fn join(self, other: Kind) -> Result<Kind> {
        if !self.compatible(other) {
            return Err(IcatError::KindMismatch(self, other));
        }
        Ok(if self == other { self } else { Kind::Group })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::PointedSet => "pointed-set",
            Kind::AbelianGroup => "abelian-group",
            Kind::Group => "group",
            Kind::UnitalMagma => "unital-magma",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "pointed-set" | "ptset" => Ok(Kind::PointedSet),
            "abelian-group" | "ab" => Ok(Kind::AbelianGroup),
            "group" | "grp" => Ok(Kind::Group),
            "unital-magma" | "magma" => Ok(Kind::UnitalMagma),
            other => Err(IcatError::Format(format!("unknown kind {other:?}"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite structure. Equality compares carriers and tables only; the kind and
/// the name are metadata.
#[derive(Clone)]
pub struct Structure {
    kind: Kind,
    order: usize,
    table: Option<Vec<usize>>,
    inverses: Option<Vec<usize>>,
    name: Option<String>,
}

pub type Obj = Arc<Structure>;

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.table == other.table)
    }
}

impl Eq for Structure {}

impl std::hash::Hash for Structure {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}", self.kind, self.order)?;
        if let Some(name) = &self.name {
            write!(f, " {name}")?;
        }
        f.write_str("]")
    }
}

impl Structure {
    pub fn pointed_set(order: usize) -> Structure {
        assert!(order > 0, "a pointed set has at least its basepoint");
        Structure {
            kind: Kind::PointedSet,
            order,
            table: None,
            inverses: None,
            name: Some(format!("P{order}")),
        }
    }

    /// Cyclic group `Z_n` with `x . y = (x + y) mod n`.
    pub fn cyclic(n: usize, kind: Kind) -> Structure {
        assert!(n > 0);
        assert!(kind.has_table());
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Structure::from_flat_unchecked(kind, n, table).with_name(format!("Z{n}"))
    }

    /// Validating constructor from a row-major table.
    pub fn from_table(kind: Kind, rows: Vec<Vec<usize>>) -> Result<Structure> {
        let n = rows.len();
        if kind == Kind::PointedSet {
            return Err(IcatError::InvalidStructure(
                "pointed sets carry no table".into(),
            ));
        }
        if n == 0 {
            return Err(IcatError::InvalidStructure("empty carrier".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(IcatError::InvalidStructure(format!(
                    "row {i} has length {} instead of {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(IcatError::InvalidStructure(format!(
                        "entry {v} in row {i} is out of range"
                    )));
                }
                flat.push(v);
            }
        }
        let s = Structure::from_flat_unchecked(kind, n, flat);
        s.validate()?;
        Ok(s)
    }

    /// Builds a structure without checking the kind's axioms. Group inverses are
    /// still computed, so the table must at least be a quasigroup row-wise.
    pub fn from_flat_unchecked(kind: Kind, order: usize, table: Vec<usize>) -> Structure {
        debug_assert_eq!(table.len(), order * order);
        let inverses = if kind.is_group() {
            let mut inv = vec![usize::MAX; order];
            for x in 0..order {
                for y in 0..order {
                    if table[x * order + y] == 0 {
                        inv[x] = y;
                        break;
                    }
                }
            }
            Some(inv)
        } else {
            None
        };
        Structure {
            kind,
            order,
            table: Some(table),
            inverses,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Structure {
        self.name = Some(name.into());
        self
    }

    /// Same carrier and table, reinterpreted in a compatible kind.
    pub fn with_kind(&self, kind: Kind) -> Result<Structure> {
        if self.kind.has_table() != kind.has_table() {
            return Err(IcatError::KindMismatch(self.kind, kind));
        }
        let mut s = match &self.table {
            Some(t) => Structure::from_flat_unchecked(kind, self.order, t.clone()),
            None => Structure::pointed_set(self.order),
        };
        s.name = self.name.clone();
        s.validate()?;
        Ok(s)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("{}{}", self.kind.as_str(), self.order))
    }

    pub fn table(&self) -> Option<&[usize]> {
        self.table.as_deref()
    }

    pub fn rows(&self) -> Option<Vec<Vec<usize>>> {
        self.table
            .as_ref()
            .map(|t| t.chunks(self.order).map(|r| r.to_vec()).collect())
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The binary operation. Panics on pointed sets.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        let t = self.table.as_ref().expect("pointed sets have no operation");
        t[x * self.order + y]
    }

    /// Group inverse. Panics for non-group kinds.
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses.as_ref().expect("inverse requires a group")[x]
    }

    /// `x y x^-1`
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.op(self.op(x, y), self.inv(x))
    }

    pub fn is_commutative(&self) -> bool {
        match &self.table {
            None => true,
            Some(_) => (0..self.order).all(|x| (0..x).all(|y| self.op(x, y) == self.op(y, x))),
        }
    }

    pub fn is_associative(&self) -> bool {
        match &self.table {
            None => true,
            Some(_) => {
                let n = self.order;
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        let xy = self.op(x, y);
                        (0..n).all(|z| self.op(xy, z) == self.op(x, self.op(y, z)))
                    })
                })
            }
        }
    }

    pub fn is_right_cancellative(&self) -> bool {
        self.first_non_cancellative_column().is_none()
    }

    pub fn first_non_cancellative_column(&self) -> Option<usize> {
        let n = self.order;
        let mut seen = vec![false; n];
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let v = self.op(r, c);
                if seen[v] {
                    return Some(c);
                }
                seen[v] = true;
            }
        }
        None
    }

    /// Checks the axioms of the structure's kind.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(IcatError::InvalidStructure("empty carrier".into()));
        }
        let Some(t) = &self.table else {
            return Ok(());
        };
        if t.len() != n * n || t.iter().any(|&v| v >= n) {
            return Err(IcatError::InvalidStructure("malformed table".into()));
        }
        for x in 0..n {
            if self.op(0, x) != x || self.op(x, 0) != x {
                return Err(IcatError::InvalidStructure(format!(
                    "0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        match self.kind {
            Kind::PointedSet => unreachable!(),
            Kind::UnitalMagma => {
                if let Some(c) = self.first_non_cancellative_column() {
                    return Err(IcatError::RightCancellationViolated(c));
                }
            }
            Kind::Group | Kind::AbelianGroup => {
                if !self.is_associative() {
                    return Err(IcatError::InvalidStructure("table is not associative".into()));
                }
                let inv = self.inverses.as_ref().unwrap();
                if let Some(x) = (0..n).find(|&x| inv[x] == usize::MAX || self.op(inv[x], x) != 0)
                {
                    return Err(IcatError::InvalidStructure(format!(
                        "element {x} has no inverse"
                    )));
                }
                if self.kind == Kind::AbelianGroup && !self.is_commutative() {
                    return Err(IcatError::InvalidStructure(
                        "abelian-group table is not commutative".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Relabels elements through the bijection `perm` (old index -> new index).
    /// `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[usize]) -> Structure {
        assert_eq!(perm.len(), self.order);
        assert_eq!(perm[0], 0);
        let mut s = match &self.table {
            None => Structure::pointed_set(self.order),
            Some(_) => {
                let n = self.order;
                let mut t = vec![0; n * n];
                for x in 0..n {
                    for y in 0..n {
                        t[perm[x] * n + perm[y]] = perm[self.op(x, y)];
                    }
                }
                Structure::from_flat_unchecked(self.kind, n, t)
            }
        };
        s.name = self.name.clone();
        s
    }

    /// Closure of `seeds` (together with 0) under the operation.
    pub fn generated_by(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let n = self.order;
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        for s in seeds {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        if self.table.is_none() {
            return inside;
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            let mut j = 0;
            while j <= i {
                let b = members[j];
                for v in [self.op(a, b), self.op(b, a)] {
                    if !inside[v] {
                        inside[v] = true;
                        members.push(v);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        inside
    }

    /// A generating sequence, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        if self.table.is_none() {
            return (1..self.order).collect();
        }
        let mut gens = Vec::new();
        let mut inside = self.generated_by([]);
        while let Some(x) = (0..self.order).find(|&x| !inside[x]) {
            gens.push(x);
            inside = self.generated_by(gens.iter().copied());
        }
        gens
    }

    /// Order of an element in a group (smallest k >= 1 with x^k = 0).
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.op(p, x);
            k += 1;
            if k > self.order {
                break;
            }
        }
        k
    }

    /// Invariant summary of an element, preserved by every isomorphism.
    pub(crate) fn signature(&self, x: usize) -> [usize; 4] {
        if self.table.is_none() {
            return [usize::from(x == 0), 0, 0, 0];
        }
        // right powers x, x.x, (x.x).x, ... until repetition
        let n = self.order;
        let mut seen = vec![usize::MAX; n];
        let mut p = x;
        let mut step = 0;
        while seen[p] == usize::MAX {
            seen[p] = step;
            p = self.op(p, x);
            step += 1;
        }
        let tail = seen[p];
        let squares = (0..n).filter(|&y| self.op(y, y) == x).count();
        let central = (0..n).filter(|&y| self.op(x, y) == self.op(y, x)).count();
        [step, tail, squares, central]
    }

    /// Invariant factors of a finite abelian group, computed from element orders.
    pub fn invariant_factors(&self) -> Option<Vec<usize>> {
        if self.kind != Kind::AbelianGroup && !(self.kind == Kind::Group && self.is_commutative())
        {
            return None;
        }
        // For each prime p, the p-part is determined by counts of elements of order dividing p^k.
        let n = self.order;
        let orders: Vec<usize> = (0..n).map(|x| self.element_order(x)).collect();
        let mut factors: Vec<usize> = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            if rest.is_multiple_of(p) {
                let mut e = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    e += 1;
                }
                // number of elements with order dividing p^k
                let count = |k: u32| orders.iter().filter(|&&o| p.pow(k) % o == 0).count();
                // partition of e: lambda'_k = log_p(count(k)/count(k-1))
                let mut conj = Vec::new();
                for k in 1..=e {
                    let ratio = count(k) / count(k - 1);
                    let mut l = 0;
                    let mut r = ratio;
                    while r > 1 {
                        r /= p;
                        l += 1;
                    }
                    if l == 0 {
                        break;
                    }
                    conj.push(l);
                }
                // conj[k-1] = number of cyclic factors of order >= p^k
                let parts = conj.first().copied().unwrap_or(0);
                let mut exps = vec![0u32; parts];
                for (k, &c) in conj.iter().enumerate() {
                    for ex in exps.iter_mut().take(c) {
                        *ex = k as u32 + 1;
                    }
                }
                // merge into invariant factors: largest exponents go into the last factor
                exps.sort_unstable_by(|a, b| b.cmp(a));
                for (i, &ex) in exps.iter().enumerate() {
                    if factors.len() <= i {
                        factors.push(1);
                    }
                    factors[i] *= p.pow(ex);
                }
            }
            p += 1;
        }
        factors.reverse();
        Some(factors)
    }
}

/// Built-in structures used throughout tests and corpora.
pub mod named {
    use super::*;
    use crate::ops::Product;

    /// Symmetric group on three letters. Element numbering:
    /// `0 = e, 1 = (12), 2 = (13), 3 = (23), 4 = (123), 5 = (132)`.
    pub fn s3() -> Structure {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        from_permutations(&perms, Kind::Group).with_name("S3")
    }

    /// Alternating group on four letters.
    pub fn a4() -> Structure {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for p in permutations(4) {
            if parity(&p) == 0 {
                perms.push(p);
            }
        }
        from_permutations(&perms, Kind::Group).with_name("A4")
    }

    /// Dihedral group of order `2n`: index `i` is `r^i` for `i < n`, and
    /// `n + i` is `r^i s`.
    pub fn dihedral(n: usize) -> Structure {
        let m = 2 * n;
        let mut t = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                let (i, a) = (x % n, x / n);
                let (j, b) = (y % n, y / n);
                // r^i s^a r^j s^b = r^(i + (-1)^a j) s^(a+b)
                let k = if a == 0 { (i + j) % n } else { (i + n - j) % n };
                t[x * m + y] = k + n * ((a + b) % 2);
            }
        }
        Structure::from_flat_unchecked(Kind::Group, m, t).with_name(format!("D{n}"))
    }

    /// Quaternion group: index `2i + s` is `q_i` times `(-1)^s` with
    /// `q = [1, i, j, k]`.
    pub fn quaternion() -> Structure {
        // unit multiplication: (unit index, sign)
        let mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (x, 0),
                (x, y) if x == y => (0, 1),
                (1, 2) => (3, 0),
                (2, 1) => (3, 1),
                (2, 3) => (1, 0),
                (3, 2) => (1, 1),
                (3, 1) => (2, 0),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            }
        };
        let mut t = vec![0; 64];
        for x in 0..8 {
            for y in 0..8 {
                let (u, s) = mul(x / 2, y / 2);
                t[x * 8 + y] = 2 * u + (s + x % 2 + y % 2) % 2;
            }
        }
        Structure::from_flat_unchecked(Kind::Group, 8, t).with_name("Q8")
    }

    /// Dicyclic group of order 12: `<a, x | a^6 = 1, x^2 = a^3, x a x^-1 = a^-1>`.
    /// Index `i + 6j` is `a^i x^j`.
    pub fn dicyclic3() -> Structure {
        let mut t = vec![0; 144];
        for p in 0..12 {
            for q in 0..12 {
                let (i, a) = (p % 6, p / 6);
                let (j, b) = (q % 6, q / 6);
                // a^i x^a a^j x^b = a^(i + (-1)^a j) x^(a + b), with x^2 = a^3
                let mut k = if a == 0 { (i + j) % 6 } else { (i + 6 - j) % 6 };
                let mut e = a + b;
                if e == 2 {
                    k = (k + 3) % 6;
                    e = 0;
                }
                t[p * 12 + q] = k + 6 * e;
            }
        }
        Structure::from_flat_unchecked(Kind::Group, 12, t).with_name("Dic3")
    }

    /// Product of cyclic groups with the given factors, left-nested.
    pub fn cyclic_product(factors: &[usize], kind: Kind) -> Structure {
        let mut iter = factors.iter();
        let first = *iter.next().expect("at least one factor");
        let mut acc = Arc::new(Structure::cyclic(first, kind));
        let mut name = format!("Z{first}");
        for &f in iter {
            let p = Product::new(&acc, &Arc::new(Structure::cyclic(f, kind)))
                .expect("same kind");
            acc = p.object.clone();
            name.push_str(&format!("xZ{f}"));
        }
        Arc::try_unwrap(acc)
            .unwrap_or_else(|a| (*a).clone())
            .with_name(name)
    }

    pub fn from_permutations<P: AsRef<[usize]>>(perms: &[P], kind: Kind) -> Structure {
        let n = perms.len();
        let index = |p: &[usize]| {
            perms
                .iter()
                .position(|q| q.as_ref() == p)
                .expect("permutations must be closed under composition")
        };
        let mut t = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                // (x . y)(i) = x(y(i))
                let px = perms[x].as_ref();
                let py = perms[y].as_ref();
                let comp: Vec<usize> = py.iter().map(|&i| px[i]).collect();
                t[x * n + y] = index(&comp);
            }
        }
        Structure::from_flat_unchecked(kind, n, t)
    }

    pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == cur.len() {
                out.push(cur.clone());
                return;
            }
            for i in k..cur.len() {
                cur.swap(k, i);
                rec(k + 1, cur, out);
                cur.swap(k, i);
            }
        }
        rec(0, &mut cur, &mut out);
        out.sort();
        out
    }

    fn parity(p: &[usize]) -> usize {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_satisfy_group_axioms() {
        for s in [
            named::s3(),
            named::a4(),
            named::dihedral(4),
            named::dihedral(5),
            named::quaternion(),
            named::dicyclic3(),
            named::cyclic_product(&[6, 2], Kind::Group),
        ] {
            s.validate().unwrap_or_else(|e| panic!("{s:?}: {e}"));
        }
        assert!(!named::s3().is_commutative());
        assert_eq!(named::a4().order(), 12);
    }

    #[test]
    fn s3_numbering_matches_documentation() {
        let s3 = named::s3();
        // (12)(13) = (132) when composing right to left
        assert_eq!(s3.op(1, 2), 5);
        assert_eq!(s3.element_order(4), 3);
        assert_eq!(s3.element_order(3), 2);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let not_unital = vec![vec![1, 0], vec![0, 1]];
        assert!(Structure::from_table(Kind::Group, not_unital).is_err());
        // unital but column 1 repeats a value
        let bad = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 1, 1]];
        assert!(matches!(
            Structure::from_table(Kind::UnitalMagma, bad),
            Err(IcatError::RightCancellationViolated(1))
        ));
        // cyclic table declared abelian is fine; S3 declared abelian is not
        let s3 = named::s3().rows().unwrap();
        assert!(Structure::from_table(Kind::AbelianGroup, s3).is_err());
    }

    #[test]
    fn invariant_factors_of_small_abelian_groups() {
        let z4z2 = named::cyclic_product(&[4, 2], Kind::AbelianGroup);
        assert_eq!(z4z2.invariant_factors(), Some(vec![2, 4]));
        let z6 = named::cyclic_product(&[2, 3], Kind::AbelianGroup);
        assert_eq!(z6.invariant_factors(), Some(vec![6]));
        let z2cubed = named::cyclic_product(&[2, 2, 2], Kind::AbelianGroup);
        assert_eq!(z2cubed.invariant_factors(), Some(vec![2, 2, 2]));
        assert_eq!(named::s3().invariant_factors(), None);
    }

    #[test]
    fn generators_generate() {
        for s in [named::s3(), named::quaternion(), named::a4()] {
            let gens = s.generators();
            assert!(s.generated_by(gens).iter().all(|&b| b));
        }
        assert_eq!(Structure::pointed_set(4).generators(), vec![1, 2, 3]);
    }
}
