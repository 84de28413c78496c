//! Finite-dimensional subspaces of free modules `K^(G x {1..r})`, with
//! coordinates labelled by `(group element, coordinate)` pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::echelon::{Echelon, SparseRow};
use super::field::{Field, Scalar};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupKind};

/// Coordinate label: group element and 1-based free-module coordinate.
pub type Label = (GroupElement, usize);

/// Finitely supported vector of a free module; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: BTreeMap<Label, Scalar>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sums duplicate labels and drops zero results.
    pub fn from_entries(field: &Field, entries: impl IntoIterator<Item = (Label, Scalar)>) -> Self {
        let mut v = SparseVector::zero();
        for (label, c) in entries {
            v.add_term(field, label, &c);
        }
        v
    }

    pub fn unit(field: &Field, g: GroupElement, coord: usize) -> Self {
        SparseVector::from_entries(field, [((g, coord), field.one())])
    }

    pub fn add_term(&mut self, field: &Field, label: Label, c: &Scalar) {
        use std::collections::btree_map::Entry;
        match self.entries.entry(label) {
            Entry::Vacant(slot) => {
                if !field.is_zero(c) {
                    slot.insert(c.clone());
                }
            }
            Entry::Occupied(mut slot) => {
                let s = field.add(slot.get(), c);
                if field.is_zero(&s) {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn insert_raw(&mut self, label: Label, c: Scalar) {
        self.entries.insert(label, c);
    }

    pub fn get(&self, label: &Label) -> Option<&Scalar> {
        self.entries.get(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Scalar)> + '_ {
        self.entries.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> + '_ {
        self.entries.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, field: &Field, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        for (l, c) in other.iter() {
            out.add_term(field, l.clone(), c);
        }
        out
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> SparseVector {
        SparseVector::from_entries(
            field,
            self.iter().map(|(l, v)| (l.clone(), field.mul(c, v))),
        )
    }

    pub fn max_coord(&self) -> usize {
        self.entries.keys().map(|(_, j)| *j).max().unwrap_or(0)
    }

    pub fn format(&self, field: &Field) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.iter()
            .map(|((g, j), c)| format!("{}*{g}|{j}", field.format(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Sorted label universe of one computation, mapping labels to column
/// indices.
#[derive(Clone, Debug)]
pub struct ColumnIndex {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl ColumnIndex {
    pub fn new<'a>(vectors: impl IntoIterator<Item = &'a SparseVector>) -> Result<Self> {
        let mut labels: Vec<Label> = vectors
            .into_iter()
            .flat_map(|v| v.labels().cloned())
            .collect();
        labels.sort_unstable();
        labels.dedup();
        let mut kind: Option<GroupKind> = None;
        for (g, j) in &labels {
            if *j == 0 {
                return Err(Error::InconsistentLabels(format!(
                    "coordinate 0 at {g}; coordinates are 1-based"
                )));
            }
            match kind {
                None => kind = Some(g.kind()),
                Some(k) if k != g.kind() => {
                    return Err(Error::InconsistentLabels(format!(
                        "{k} and {} labels mixed",
                        g.kind()
                    )))
                }
                _ => {}
            }
        }
        let index = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        Ok(ColumnIndex { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Row for `v`, shifted by `offset` columns. Panics on labels outside
    /// the universe.
    pub fn row(&self, v: &SparseVector, offset: usize) -> SparseRow {
        // BTreeMap order matches column order
        v.iter()
            .map(|(l, c)| (self.index[l] + offset, c.clone()))
            .collect()
    }

    pub fn vector(&self, field: &Field, row: &[(usize, Scalar)], offset: usize) -> SparseVector {
        SparseVector::from_entries(
            field,
            row.iter()
                .map(|(c, v)| (self.labels[c - offset].clone(), v.clone())),
        )
    }
}

fn check_scalars<'a>(
    field: &Field,
    vectors: impl IntoIterator<Item = &'a SparseVector>,
) -> Result<()> {
    for v in vectors {
        for (_, c) in v.iter() {
            if !field.contains(c) {
                return Err(Error::InvalidScalar(format!("{c:?} in {field}")));
            }
        }
    }
    Ok(())
}

/// Dimension of the span of `vectors`.
pub fn span_dim(field: &Field, vectors: &[SparseVector]) -> Result<usize> {
    check_scalars(field, vectors)?;
    let cols = ColumnIndex::new(vectors)?;
    let mut e = Echelon::new(*field);
    for v in vectors {
        e.insert(cols.row(v, 0));
    }
    Ok(e.rank())
}

/// Dimensions produced by one sum/intersection elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumIntersectionDims {
    pub dim_u: usize,
    pub dim_w: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
}

/// Zassenhaus elimination on rows `(w | 0)` followed by `(u | u)`: pivots
/// in the left half span `U + W`, pivots in the right half span `U ∩ W`.
/// `u` and `w` may be arbitrary spanning sets.
pub fn sum_intersection_dims(
    field: &Field,
    u: &[SparseVector],
    w: &[SparseVector],
) -> Result<SumIntersectionDims> {
    let (e, n, dim_w) = zassenhaus(field, u, w)?;
    let dim_intersection = e.rows().iter().filter(|r| r[0].0 >= n).count();
    let dim_sum = e.rank() - dim_intersection;
    Ok(SumIntersectionDims {
        dim_u: e.rank() - dim_w,
        dim_w,
        dim_sum,
        dim_intersection,
    })
}

fn zassenhaus(
    field: &Field,
    u: &[SparseVector],
    w: &[SparseVector],
) -> Result<(Echelon, usize, usize)> {
    check_scalars(field, u.iter().chain(w))?;
    let cols = ColumnIndex::new(u.iter().chain(w))?;
    let n = cols.len();
    let mut e = Echelon::new(*field);
    for v in w {
        e.insert(cols.row(v, 0));
    }
    let dim_w = e.rank();
    for v in u {
        let mut r = cols.row(v, 0);
        r.extend(cols.row(v, n));
        e.insert(r);
    }
    Ok((e, n, dim_w))
}

/// Subspace held as its reduced row echelon basis under the canonical
/// label order, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    basis: Vec<SparseVector>,
}

impl Subspace {
    pub fn zero(field: Field) -> Self {
        Subspace {
            field,
            basis: Vec::new(),
        }
    }

    pub fn span(field: &Field, vectors: &[SparseVector]) -> Result<Self> {
        check_scalars(field, vectors)?;
        let cols = ColumnIndex::new(vectors)?;
        let mut e = Echelon::new(*field);
        for v in vectors {
            e.insert(cols.row(v, 0));
        }
        let basis = e
            .into_rref()
            .iter()
            .map(|r| cols.vector(field, r, 0))
            .collect();
        Ok(Subspace {
            field: *field,
            basis,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.basis
    }

    fn same_field(&self, other: &Subspace) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn contains(&self, v: &SparseVector) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        check_scalars(&self.field, [v])?;
        let cols = ColumnIndex::new(self.basis.iter().chain([v]))?;
        let mut e = Echelon::new(self.field);
        for b in &self.basis {
            e.insert(cols.row(b, 0));
        }
        Ok(e.contains(cols.row(v, 0)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_field(other)?;
        let all: Vec<SparseVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(&self.field, &all)
    }

    /// `U ∩ V` by Zassenhaus elimination.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_field(other)?;
        let (e, n, _) = zassenhaus(&self.field, &self.basis, &other.basis)?;
        let cols = ColumnIndex::new(self.basis.iter().chain(&other.basis))?;
        let vectors: Vec<SparseVector> = e
            .rows()
            .iter()
            .filter(|r| r[0].0 >= n)
            .map(|r| cols.vector(&self.field, r, n))
            .collect();
        Subspace::span(&self.field, &vectors)
    }

    /// `dim((U + W) / W) = dim(U + W) - dim W`.
    pub fn quotient_dim(&self, w: &Subspace) -> Result<usize> {
        self.same_field(w)?;
        let d = sum_intersection_dims(&self.field, &self.basis, &w.basis)?;
        Ok(d.dim_sum - d.dim_w)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", b.format(&self.field))?;
        }
        write!(f, "}}")
    }
}
