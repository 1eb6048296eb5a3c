//! Exact sparse linear algebra over the rationals.
//!
//! Everything reduces to one routine: incremental row echelon reduction with
//! pivot rows normalized to a leading 1, followed by back substitution into
//! reduced row echelon form when a kernel or a solution is needed. Reduced
//! echelon form is unique, so kernel bases and witnesses do not depend on the
//! order in which rows were fed in.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::numkit::Rat;

pub type SparseVec = BTreeMap<usize, Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Matrix whose `c`-th column is `columns[c]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, v) in row {
                t.data[c].insert(r, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(Rat::zero(), |acc, (&c, v)| acc + v * &x[c]))
            .collect()
    }

    /// Same matrix with columns reordered: new column `k` is old column
    /// `order[k]`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.cols);
        let mut inverse = vec![0; self.cols];
        for (k, &c) in order.iter().enumerate() {
            inverse[c] = k;
        }
        let mut m = Self::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, v) in row {
                m.data[r].insert(inverse[c], v.clone());
            }
        }
        m
    }
}

/// Echelon form built one row at a time. Pivot rows have leading entry 1 at
/// their key column.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(&c, v)| (c, v.clone()));
            let Some((c, factor)) = hit else {
                return row;
            };
            for (&k, pv) in &self.pivots[&c] {
                let entry = row.entry(k).or_insert_with(Rat::zero);
                *entry -= &factor * pv;
                if entry.is_zero() {
                    row.remove(&k);
                }
            }
            cursor = c + 1;
        }
    }

    /// Returns the new pivot column, if the row was independent.
    fn insert(&mut self, row: SparseVec) -> Option<usize> {
        let mut row = self.reduce(row);
        let (&lead, lv) = row.iter().next()?;
        let inv = lv.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.pivots.insert(lead, row);
        Some(lead)
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back substitution into reduced row echelon form.
    fn into_rref(mut self) -> BTreeMap<usize, SparseVec> {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let row = self.pivots.remove(&c).expect("pivot present");
            let mut reduced = SparseVec::new();
            reduced.insert(c, Rat::one());
            let tail: SparseVec = row.into_iter().filter(|(k, _)| *k != c).collect();
            // Tail columns exceed `c`, so only already-reduced pivots apply.
            reduced.extend(self.reduce(tail));
            self.pivots.insert(c, reduced);
        }
        self.pivots
    }
}

fn echelon_of_rows(m: &SparseMat) -> Echelon {
    let mut e = Echelon::default();
    for row in &m.data {
        if !row.is_empty() {
            e.insert(row.clone());
        }
    }
    e
}

pub fn rank(m: &SparseMat) -> usize {
    if m.rows <= m.cols {
        echelon_of_rows(m).rank()
    } else {
        echelon_of_rows(&m.transpose()).rank()
    }
}

/// Rank and a kernel basis. Kernel vectors are indexed by free columns of
/// the reduced echelon form: the vector for free column `f` has a 1 in
/// position `f`, zeros in the other free positions.
pub fn rank_kernel(m: &SparseMat) -> (usize, Vec<Vec<Rat>>) {
    let rref = echelon_of_rows(m).into_rref();
    let rank = rref.len();
    let mut kernel = Vec::with_capacity(m.cols - rank);
    for free in (0..m.cols).filter(|c| !rref.contains_key(c)) {
        let mut v = vec![Rat::zero(); m.cols];
        v[free] = Rat::one();
        for (&p, row) in &rref {
            if let Some(x) = row.get(&free) {
                v[p] = -x;
            }
        }
        kernel.push(v);
    }
    (rank, kernel)
}

/// A witness `x` with `m·x = b`, or `None` when `b` is not in the column
/// space of `m`.
pub fn solve_in_image(m: &SparseMat, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows, "right-hand side has wrong length");
    let aug = m.cols;
    let mut e = Echelon::default();
    for (row, rhs) in m.data.iter().zip(b) {
        let mut r = row.clone();
        if !rhs.is_zero() {
            r.insert(aug, rhs.clone());
        }
        if !r.is_empty() && e.insert(r) == Some(aug) {
            return None;
        }
    }
    let rref = e.into_rref();
    let mut x = vec![Rat::zero(); m.cols];
    for (&p, row) in &rref {
        if let Some(v) = row.get(&aug) {
            x[p] = v.clone();
        }
    }
    Some(x)
}

/// Indices of `candidates` whose span complements `base` in the space they
/// all live in: greedily keeps each candidate that is independent of `base`
/// and of the candidates kept so far.
pub fn extend_basis(base: &[SparseVec], candidates: &[SparseVec]) -> Vec<usize> {
    let mut e = Echelon::default();
    for v in base {
        e.insert(v.clone());
    }
    candidates
        .iter()
        .enumerate()
        .filter_map(|(i, v)| e.insert(v.clone()).map(|_| i))
        .collect()
}

pub fn to_sparse(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
