//! Concrete finitely generated amenable groups.
//!
//! Three families are realised exactly: free abelian groups `Z^d`, the
//! direct product `Z x Z/2`, and the discrete Heisenberg group of
//! upper-unitriangular integer matrices encoded as `(a, b, c)` with
//! `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexSet;
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    FreeAbelian(usize),
    ZCrossZ2,
    Heisenberg,
}

impl GroupKind {
    pub fn identity(self) -> GroupElement {
        match self {
            GroupKind::FreeAbelian(d) => GroupElement::FreeAbelian(SmallVec::from_elem(0, d)),
            GroupKind::ZCrossZ2 => GroupElement::ZCrossZ2 { n: 0, t: 0 },
            GroupKind::Heisenberg => GroupElement::Heisenberg { a: 0, b: 0, c: 0 },
        }
    }

    /// Number of integer coordinates in the serialized form.
    pub fn arity(self) -> usize {
        match self {
            GroupKind::FreeAbelian(d) => d,
            GroupKind::ZCrossZ2 => 2,
            GroupKind::Heisenberg => 3,
        }
    }

    pub fn element(self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.arity() {
            return Err(Error::param(format!(
                "{self} elements have {} coordinates, got {}",
                self.arity(),
                coords.len()
            )));
        }
        Ok(match self {
            GroupKind::FreeAbelian(_) => GroupElement::FreeAbelian(SmallVec::from_slice(coords)),
            GroupKind::ZCrossZ2 => {
                let t = coords[1];
                if t != 0 && t != 1 {
                    return Err(Error::param(format!(
                        "Z/2 component must be 0 or 1, got {t}"
                    )));
                }
                GroupElement::ZCrossZ2 {
                    n: coords[0],
                    t: t as u8,
                }
            }
            GroupKind::Heisenberg => GroupElement::Heisenberg {
                a: coords[0],
                b: coords[1],
                c: coords[2],
            },
        })
    }

    /// Parses `"(1,2)"`; whitespace around coordinates is ignored.
    pub fn parse_element(self, s: &str) -> Result<GroupElement> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::param(format!("group element must be parenthesized: {t:?}")))?;
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::param(format!("bad coordinate {c:?} in {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(&coords)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::FreeAbelian(1) => write!(f, "Z"),
            GroupKind::FreeAbelian(d) => write!(f, "Z^{d}"),
            GroupKind::ZCrossZ2 => write!(f, "ZxZ2"),
            GroupKind::Heisenberg => write!(f, "Heisenberg"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" => return Ok(GroupKind::FreeAbelian(1)),
            "ZxZ2" | "ZxZ/2" => return Ok(GroupKind::ZCrossZ2),
            "Heisenberg" | "H3" => return Ok(GroupKind::Heisenberg),
            _ => {}
        }
        if let Some(d) = s.strip_prefix("Z^") {
            if let Ok(d) = d.parse::<usize>() {
                if d >= 1 {
                    return Ok(GroupKind::FreeAbelian(d));
                }
            }
        }
        Err(Error::param(format!("unknown group {s:?}")))
    }
}

/// Element with a unique canonical form; equality is structural and the
/// derived order is lexicographic on coordinate tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    FreeAbelian(SmallVec<[i64; 3]>),
    ZCrossZ2 { n: i64, t: u8 },
    Heisenberg { a: i64, b: i64, c: i64 },
}

impl GroupElement {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupElement::FreeAbelian(v) => GroupKind::FreeAbelian(v.len()),
            GroupElement::ZCrossZ2 { .. } => GroupKind::ZCrossZ2,
            GroupElement::Heisenberg { .. } => GroupKind::Heisenberg,
        }
    }

    pub fn coords(&self) -> SmallVec<[i64; 3]> {
        match self {
            GroupElement::FreeAbelian(v) => v.clone(),
            GroupElement::ZCrossZ2 { n, t } => SmallVec::from_slice(&[*n, *t as i64]),
            GroupElement::Heisenberg { a, b, c } => SmallVec::from_slice(&[*a, *b, *c]),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::FreeAbelian(v) => v.iter().all(|&x| x == 0),
            GroupElement::ZCrossZ2 { n, t } => *n == 0 && *t == 0,
            GroupElement::Heisenberg { a, b, c } => *a == 0 && *b == 0 && *c == 0,
        }
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement> {
        use GroupElement::*;
        Ok(match (self, other) {
            (FreeAbelian(x), FreeAbelian(y)) if x.len() == y.len() => {
                FreeAbelian(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (ZCrossZ2 { n, t }, ZCrossZ2 { n: m, t: s }) => ZCrossZ2 { n: n + m, t: t ^ s },
            (
                Heisenberg { a, b, c },
                Heisenberg {
                    a: a2,
                    b: b2,
                    c: c2,
                },
            ) => Heisenberg {
                a: a + a2,
                b: b + b2,
                c: c + c2 + a * b2,
            },
            _ => return Err(Error::GroupMismatch(self.kind(), other.kind())),
        })
    }

    /// Group product.
    ///
    /// Panics when the operands come from different groups; use
    /// [`GroupElement::try_mul`] for untrusted input.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        self.try_mul(other)
            .unwrap_or_else(|e| panic!("group product: {e}"))
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::FreeAbelian(v) => {
                GroupElement::FreeAbelian(v.iter().map(|x| -x).collect())
            }
            GroupElement::ZCrossZ2 { n, t } => GroupElement::ZCrossZ2 { n: -n, t: *t },
            GroupElement::Heisenberg { a, b, c } => GroupElement::Heisenberg {
                a: -a,
                b: -b,
                c: a * b - c,
            },
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A group together with its fixed symmetric generating set (identity
/// included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    generators: FiniteSubset,
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> Self {
        let e = kind.identity();
        let mut gens = vec![e.clone()];
        match kind {
            GroupKind::FreeAbelian(d) => {
                for i in 0..d {
                    for s in [-1, 1] {
                        let mut v = SmallVec::from_elem(0, d);
                        v[i] = s;
                        gens.push(GroupElement::FreeAbelian(v));
                    }
                }
            }
            GroupKind::ZCrossZ2 => {
                gens.push(GroupElement::ZCrossZ2 { n: 1, t: 0 });
                gens.push(GroupElement::ZCrossZ2 { n: -1, t: 0 });
                gens.push(GroupElement::ZCrossZ2 { n: 0, t: 1 });
            }
            GroupKind::Heisenberg => {
                for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    gens.push(GroupElement::Heisenberg { a, b, c: 0 });
                }
            }
        }
        GroupSpec {
            kind,
            generators: FiniteSubset::from_iter(gens),
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn identity(&self) -> GroupElement {
        self.kind.identity()
    }

    pub fn generators(&self) -> &FiniteSubset {
        &self.generators
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        g.try_mul(h)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.kind() == self.kind {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.kind, g.kind()))
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        self.kind.parse_element(s)
    }

    /// Elements of `B_r(S)` grouped by word length: entry `k` holds the
    /// elements at distance exactly `k`, each layer in canonical order.
    pub fn ball_layers(&self, r: usize) -> Vec<Vec<GroupElement>> {
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let e = self.identity();
        seen.insert(e.clone());
        let mut layers = vec![vec![e]];
        for _ in 0..r {
            let mut next: Vec<GroupElement> = Vec::new();
            for g in layers.last().unwrap() {
                for s in self.generators.iter() {
                    let h = g.mul(s);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            next.sort();
            layers.push(next);
        }
        layers
    }

    /// `B_r(S)`: all products of at most `r` generators.
    pub fn ball(&self, r: usize) -> FiniteSubset {
        FiniteSubset::from_iter(self.ball_layers(r).into_iter().flatten())
    }
}

/// Finite set of group elements, stored in canonical order with
/// constant-time membership.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteSubset {
    elements: IndexSet<GroupElement>,
}

impl FiniteSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(g: GroupElement) -> Self {
        let mut elements = IndexSet::with_capacity(1);
        elements.insert(g);
        FiniteSubset { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &GroupElement> + '_ {
        self.elements.iter()
    }

    pub fn first(&self) -> Option<&GroupElement> {
        self.elements.first()
    }

    /// Group of the elements, if nonempty and homogeneous.
    pub fn kind(&self) -> Option<GroupKind> {
        self.first().map(|g| g.kind())
    }

    pub fn translate(&self, g: &GroupElement) -> FiniteSubset {
        FiniteSubset::from_iter(self.iter().map(|a| g.mul(a)))
    }

    /// Right translate `A g`.
    pub fn translate_right(&self, g: &GroupElement) -> FiniteSubset {
        FiniteSubset::from_iter(self.iter().map(|a| a.mul(g)))
    }

    /// `AB = {a b : a in A, b in B}`.
    pub fn product(&self, other: &FiniteSubset) -> FiniteSubset {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in self.iter() {
            for b in other.iter() {
                out.push(a.mul(b));
            }
        }
        FiniteSubset::from_iter(out)
    }

    pub fn inverse(&self) -> FiniteSubset {
        FiniteSubset::from_iter(self.iter().map(GroupElement::inverse))
    }

    pub fn union(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset::from_iter(self.iter().chain(other.iter()).cloned())
    }

    pub fn intersection(&self, other: &FiniteSubset) -> FiniteSubset {
        // canonical order is preserved by filtering
        FiniteSubset {
            elements: self.iter().filter(|g| other.contains(g)).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            elements: self
                .iter()
                .filter(|g| !other.contains(g))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &FiniteSubset) -> bool {
        self.len() <= other.len() && self.iter().all(|g| other.contains(g))
    }

    pub fn is_disjoint(&self, other: &FiniteSubset) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().all(|g| !large.contains(g))
    }

    pub fn intersection_len(&self, other: &FiniteSubset) -> usize {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().filter(|g| large.contains(g)).count()
    }

    pub fn to_vec(&self) -> Vec<GroupElement> {
        self.elements.iter().cloned().collect()
    }
}

impl FromIterator<GroupElement> for FiniteSubset {
    fn from_iter<I: IntoIterator<Item = GroupElement>>(iter: I) -> Self {
        let mut v: Vec<GroupElement> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FiniteSubset {
            elements: v.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a FiniteSubset {
    type Item = &'a GroupElement;
    type IntoIter = indexmap::set::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Display for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Integer interval `{lo..=hi}` in `Z`.
pub fn interval(lo: i64, hi: i64) -> FiniteSubset {
    FiniteSubset::from_iter((lo..=hi).map(z))
}

/// Element of `Z`.
pub fn z(n: i64) -> GroupElement {
    GroupElement::FreeAbelian(SmallVec::from_slice(&[n]))
}

/// Element of `Z^d`.
pub fn zd(coords: &[i64]) -> GroupElement {
    GroupElement::FreeAbelian(SmallVec::from_slice(coords))
}

pub fn zz2(n: i64, t: u8) -> GroupElement {
    GroupElement::ZCrossZ2 { n, t: t & 1 }
}

pub fn heis(a: i64, b: i64, c: i64) -> GroupElement {
    GroupElement::Heisenberg { a, b, c }
}
