//! Sparse row echelon forms over a [`Field`].

use std::collections::HashMap;

use super::field::{Field, Scalar};

/// Sparse row: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `x - c * y`.
pub(crate) fn sub_scaled(
    field: &Field,
    x: &[(usize, Scalar)],
    c: &Scalar,
    y: &[(usize, Scalar)],
) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, field.neg(&field.mul(c, &y[j].1))));
            j += 1;
        } else {
            let v = field.sub(&x[i].1, &field.mul(c, &y[j].1));
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn scale(field: &Field, x: &mut SparseRow, c: &Scalar) {
    for (_, v) in x.iter_mut() {
        *v = field.mul(v, c);
    }
}

/// Incremental semi-echelon basis: each stored row has a distinct pivot
/// (its leading column) with coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<SparseRow>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Eliminates leading entries against stored pivots until the leading
    /// column is free. The result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseRow) -> SparseRow {
        while let Some((col, coef)) = v.first() {
            let Some(&ri) = self.pivots.get(col) else {
                break;
            };
            let coef = coef.clone();
            v = sub_scaled(&self.field, &v, &coef, &self.rows[ri]);
        }
        v
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        self.insert_reduced(v).is_some()
    }

    /// Adds `v` and returns the pivot of the new row, or `None` when `v`
    /// was already in the span.
    pub fn insert_reduced(&mut self, v: SparseRow) -> Option<usize> {
        let mut r = self.reduce(v);
        let (col, lead) = r.first()?.clone();
        let inv = self.field.inv(&lead).expect("leading entry is nonzero");
        scale(&self.field, &mut r, &inv);
        self.pivots.insert(col, self.rows.len());
        self.rows.push(r);
        Some(col)
    }

    pub fn contains(&self, v: SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduced row echelon form, rows sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseRow> {
        let field = self.field;
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivot_of: HashMap<usize, usize> =
            rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        // back substitution from the last pivot upwards
        for i in (0..rows.len()).rev() {
            let mut row = std::mem::take(&mut rows[i]);
            let mut k = 1;
            while k < row.len() {
                let col = row[k].0;
                match pivot_of.get(&col) {
                    Some(&j) if j > i => {
                        let c = row[k].1.clone();
                        row = sub_scaled(&field, &row, &c, &rows[j]);
                        // entry k was eliminated; new entries only appear to the right
                    }
                    _ => k += 1,
                }
            }
            rows[i] = row;
        }
        rows
    }
}
