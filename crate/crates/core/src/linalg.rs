//! Deterministic exact linear algebra over ℚ and 𝔽_p.
//!
//! Everything is built on [`Echelon`], an incremental sparse row echelon
//! form. Rows are streamed in, semi-reduced against existing pivots on their
//! leading entry only, and back-substituted once at the end. Over ℚ the
//! forward phase is fraction-free (integer rows kept primitive); the rows are
//! normalized to rationals with leading 1 only in the final pass. Over 𝔽_p
//! rows carry `u64` residues with leading coefficient 1.
//!
//! The reduced row echelon form of a matrix is unique, so the result equals
//! what left-to-right, top-to-bottom pivot scanning on the dense matrix would
//! produce, regardless of the order rows are fed in.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A sparse vector: `(index, coefficient)` pairs, sorted, no zero entries.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Bracket list `(i, j, [e_i, e_j])`.
pub type Brackets = Vec<(usize, usize, SparseVec)>;

/// Default bound on the number of nonzero entries fed to one elimination.
pub const DEFAULT_ENTRY_CAP: usize = 2_000_000;

static ENTRY_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENTRY_CAP);

/// Set the process-wide cap on matrix entries per elimination.
pub fn set_entry_cap(cap: usize) {
    ENTRY_CAP.store(cap, Ordering::Relaxed);
}

pub fn entry_cap() -> usize {
    ENTRY_CAP.load(Ordering::Relaxed)
}

/// Sort by index, merge duplicates, drop zeros.
pub fn normalize_sparse(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = &*acc + &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Densify a sparse vector to length `len`.
pub fn to_dense(field: FieldSpec, v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// A matrix over one field, stored as sparse rows. Semantics are those of
/// the dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Matrix {
            field,
            cols: n,
            rows: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn from_dense(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_dense_with_cols(field, cols, rows)
    }

    pub fn from_dense_with_cols(
        field: FieldSpec,
        cols: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for c in &r {
                if c.field() != field {
                    return Err(Error::FieldMismatch(field, c.field()));
                }
            }
            out.push(to_sparse(&r));
        }
        Ok(Matrix {
            field,
            cols,
            rows: out,
        })
    }

    /// Build from sparse rows; entries may be unsorted or repeated (they are
    /// summed).
    pub fn from_sparse_rows(
        field: FieldSpec,
        cols: usize,
        rows: Vec<Vec<(usize, Scalar)>>,
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            for (j, c) in &r {
                if *j >= cols {
                    return Err(Error::DimensionMismatch {
                        expected: cols,
                        found: j + 1,
                    });
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch(field, c.field()));
                }
            }
            out.push(normalize_sparse(r));
        }
        Ok(Matrix {
            field,
            cols,
            rows: out,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(pos) => self.rows[r][pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                row.binary_search_by_key(&c, |(j, _)| *j)
                    .ok()
                    .map(|pos| (r, row[pos].1.clone()))
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| to_dense(self.field, r, self.cols))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Matrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        Matrix {
            field: self.field,
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, c)| (*j, c * s))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Matrix {
            field: self.field,
            cols: self.cols,
            rows,
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nrows() != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                found: other.nrows(),
            });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| normalize_sparse(a.iter().chain(b).cloned().collect()))
            .collect();
        Ok(Matrix {
            field: self.field,
            cols: self.cols,
            rows,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Vec::new();
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        acc.push((*j, a * b));
                    }
                }
                normalize_sparse(acc)
            })
            .collect();
        Ok(Matrix {
            field: self.field,
            cols: other.cols,
            rows,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        self.rows
            .iter()
            .map(|r| {
                r.iter().try_fold(self.field.zero(), |acc, (j, c)| {
                    acc.try_add(&c.try_mul(&v[*j])?)
                })
            })
            .collect()
    }

    /// Apply to a sparse vector, returning a sparse vector.
    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let t = self.transpose();
        let mut acc = Vec::new();
        for (j, c) in v {
            for (i, m) in &t.rows[*j] {
                acc.push((*i, m * c));
            }
        }
        normalize_sparse(acc)
    }

    /// Flatten row-major into a dense vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.to_dense().into_iter().flatten().collect()
    }

    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: v.len(),
            });
        }
        Self::from_dense_with_cols(
            field,
            cols,
            (0..rows)
                .map(|r| v[r * cols..(r + 1) * cols].to_vec())
                .collect(),
        )
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        let n = self.cols;
        if self.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.nrows(),
            });
        }
        let aug: Vec<SparseVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.push((n + i, self.field.one()));
                row
            })
            .collect();
        let red = rref(&Matrix {
            field: self.field,
            cols: 2 * n,
            rows: aug,
        })?;
        if red.pivots.len() < n || red.pivots.iter().take(n).enumerate().any(|(i, p)| *p != i) {
            return Ok(None);
        }
        let rows = red.reduced.rows[..n]
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|(j, _)| *j >= n)
                    .map(|(j, c)| (j - n, c.clone()))
                    .collect()
            })
            .collect();
        Ok(Some(Matrix {
            field: self.field,
            cols: n,
            rows,
        }))
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Reduced matrix, same shape as the input; zero rows at the bottom.
    pub reduced: Matrix,
}

enum Pivots {
    Modp {
        p: u64,
        rows: Vec<Option<Vec<(usize, u64)>>>,
    },
    Rational {
        rows: Vec<Option<Vec<(usize, BigInt)>>>,
    },
}

/// Incremental echelon form. Feed rows with [`Echelon::push`], then call
/// [`Echelon::finish`].
pub struct Echelon {
    field: FieldSpec,
    cols: usize,
    pivots: Pivots,
    rank: usize,
    entries: usize,
    cap: usize,
}

impl Echelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        let pivots = if field.is_rational() {
            Pivots::Rational {
                rows: vec![None; cols],
            }
        } else {
            Pivots::Modp {
                p: field.characteristic(),
                rows: vec![None; cols],
            }
        };
        Echelon {
            field,
            cols,
            pivots,
            rank: 0,
            entries: 0,
            cap: entry_cap(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Add a row (entries may be unsorted or repeated). Returns whether the
    /// rank grew.
    pub fn push(&mut self, row: Vec<(usize, Scalar)>) -> Result<bool> {
        self.entries += row.len();
        if self.entries > self.cap {
            return Err(Error::ResourceCap {
                needed: self.entries,
                cap: self.cap,
            });
        }
        for (j, c) in &row {
            if *j >= self.cols {
                return Err(Error::DimensionMismatch {
                    expected: self.cols,
                    found: j + 1,
                });
            }
            if c.field() != self.field {
                return Err(Error::FieldMismatch(self.field, c.field()));
            }
        }
        let grew = match &mut self.pivots {
            Pivots::Modp { p, rows } => {
                let p = *p;
                let mut acc: Vec<(usize, u64)> = row
                    .iter()
                    .map(|(j, c)| (*j, c.residue().expect("residue")))
                    .collect();
                acc.sort_by_key(|(j, _)| *j);
                let acc = merge_modp(acc, p);
                let reduced = semi_reduce_modp(acc, rows, p);
                match reduced.first() {
                    None => false,
                    Some(&(lead, v)) => {
                        let inv = crate::scalar::inv_mod(v, p);
                        let normalized =
                            reduced.into_iter().map(|(j, c)| (j, c * inv % p)).collect();
                        rows[lead] = Some(normalized);
                        true
                    }
                }
            }
            Pivots::Rational { rows } => {
                let ints = integer_row(&row);
                let reduced = semi_reduce_rational(ints, rows);
                match reduced.first() {
                    None => false,
                    Some((lead, _)) => {
                        let lead = *lead;
                        rows[lead] = Some(primitive(reduced));
                        true
                    }
                }
            }
        };
        if grew {
            self.rank += 1;
        }
        Ok(grew)
    }

    /// Back-substitute and return the reduced rows (leading 1, zeros in all
    /// other pivot columns), ordered by pivot column.
    pub fn finish(self) -> (Vec<usize>, Vec<SparseVec>) {
        match self.pivots {
            Pivots::Modp { p, rows } => {
                let pivots: Vec<usize> = (0..self.cols).filter(|c| rows[*c].is_some()).collect();
                let is_pivot = pivot_mask(self.cols, &pivots);
                let mut done: Vec<Option<Vec<(usize, u64)>>> = vec![None; self.cols];
                for &c in pivots.iter().rev() {
                    let row = rows[c].as_ref().unwrap();
                    let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
                    for &(j, v) in row {
                        if j == c || !is_pivot[j] {
                            *acc.entry(j).or_insert(0) += v;
                        }
                    }
                    for &(j, v) in row {
                        if j != c && is_pivot[j] {
                            let f = p - v;
                            for &(k, w) in done[j].as_ref().unwrap() {
                                if k != j {
                                    let e = acc.entry(k).or_insert(0);
                                    *e = (*e + f * w) % p;
                                }
                            }
                        }
                    }
                    let out: Vec<(usize, u64)> = acc
                        .into_iter()
                        .map(|(j, v)| (j, v % p))
                        .filter(|(_, v)| *v != 0)
                        .collect();
                    done[c] = Some(out);
                }
                let reduced = pivots
                    .iter()
                    .map(|&c| {
                        done[c]
                            .take()
                            .unwrap()
                            .into_iter()
                            .map(|(j, v)| (j, Scalar::residue_of(v, p)))
                            .collect()
                    })
                    .collect();
                (pivots, reduced)
            }
            Pivots::Rational { rows } => {
                let pivots: Vec<usize> = (0..self.cols).filter(|c| rows[*c].is_some()).collect();
                let is_pivot = pivot_mask(self.cols, &pivots);
                let mut done: Vec<Option<Vec<(usize, BigRational)>>> = vec![None; self.cols];
                for &c in pivots.iter().rev() {
                    let row = rows[c].as_ref().unwrap();
                    let lead = row[0].1.clone();
                    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                    for (j, v) in row {
                        if *j == c || !is_pivot[*j] {
                            *acc.entry(*j).or_insert_with(BigRational::zero) +=
                                BigRational::new(v.clone(), lead.clone());
                        }
                    }
                    for (j, v) in row {
                        if *j != c && is_pivot[*j] {
                            let f = BigRational::new(v.clone(), lead.clone());
                            for (k, w) in done[*j].as_ref().unwrap() {
                                if k != j {
                                    *acc.entry(*k).or_insert_with(BigRational::zero) -= &f * w;
                                }
                            }
                        }
                    }
                    let out: Vec<(usize, BigRational)> =
                        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    done[c] = Some(out);
                }
                let reduced = pivots
                    .iter()
                    .map(|&c| {
                        done[c]
                            .take()
                            .unwrap()
                            .into_iter()
                            .map(|(j, v)| (j, Scalar::from_rational(v)))
                            .collect()
                    })
                    .collect();
                (pivots, reduced)
            }
        }
    }

    /// Basis of the solution space of the rows pushed so far, one vector per
    /// free column (ascending), with a 1 in that coordinate.
    pub fn nullspace(self) -> Vec<Vec<Scalar>> {
        let field = self.field;
        let cols = self.cols;
        let (pivots, reduced) = self.finish();
        nullspace_from_reduced(field, cols, &pivots, &reduced)
    }
}

fn pivot_mask(cols: usize, pivots: &[usize]) -> Vec<bool> {
    let mut m = vec![false; cols];
    for &c in pivots {
        m[c] = true;
    }
    m
}

fn nullspace_from_reduced(
    field: FieldSpec,
    cols: usize,
    pivots: &[usize],
    reduced: &[SparseVec],
) -> Vec<Vec<Scalar>> {
    let is_pivot = pivot_mask(cols, pivots);
    let mut basis: Vec<Vec<Scalar>> = (0..cols)
        .filter(|c| !is_pivot[*c])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            v
        })
        .collect();
    let mut free_pos = vec![usize::MAX; cols];
    for (pos, f) in (0..cols).filter(|c| !is_pivot[*c]).enumerate() {
        free_pos[f] = pos;
    }
    for (r, row) in reduced.iter().enumerate() {
        let pc = pivots[r];
        for (j, c) in row {
            if *j != pc {
                basis[free_pos[*j]][pc] = -c;
            }
        }
    }
    basis
}

fn merge_modp(sorted: Vec<(usize, u64)>, p: u64) -> Vec<(usize, u64)> {
    let mut out: Vec<(usize, u64)> = Vec::with_capacity(sorted.len());
    for (j, v) in sorted {
        match out.last_mut() {
            Some((k, acc)) if *k == j => *acc = (*acc + v) % p,
            _ => out.push((j, v % p)),
        }
    }
    out.retain(|(_, v)| *v != 0);
    out
}

// row + f * other, both sorted
fn axpy_modp(row: &[(usize, u64)], f: u64, other: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < other.len() {
        let next = match (row.get(a), other.get(b)) {
            (Some(&(i, x)), Some(&(j, y))) if i == j => {
                a += 1;
                b += 1;
                (i, (x + f * y) % p)
            }
            (Some(&(i, x)), Some(&(j, _))) if i < j => {
                a += 1;
                (i, x)
            }
            (Some(_), Some(&(j, y))) => {
                b += 1;
                (j, f * y % p)
            }
            (Some(&(i, x)), None) => {
                a += 1;
                (i, x)
            }
            (None, Some(&(j, y))) => {
                b += 1;
                (j, f * y % p)
            }
            (None, None) => unreachable!(),
        };
        if next.1 != 0 {
            out.push(next);
        }
    }
    out
}

fn semi_reduce_modp(
    mut row: Vec<(usize, u64)>,
    pivots: &[Option<Vec<(usize, u64)>>],
    p: u64,
) -> Vec<(usize, u64)> {
    while let Some(&(lead, v)) = row.first() {
        match &pivots[lead] {
            Some(prow) => row = axpy_modp(&row, p - v, prow, p),
            None => break,
        }
    }
    row
}

/// Clear denominators of a rational row, yielding a sorted integer row.
fn integer_row(row: &[(usize, Scalar)]) -> Vec<(usize, BigInt)> {
    let mut sorted: Vec<(usize, BigRational)> = Vec::with_capacity(row.len());
    let mut tmp: Vec<(usize, &BigRational)> = row
        .iter()
        .map(|(j, c)| (*j, c.as_rational().expect("rational")))
        .collect();
    tmp.sort_by_key(|(j, _)| *j);
    for (j, q) in tmp {
        match sorted.last_mut() {
            Some((k, acc)) if *k == j => *acc += q,
            _ => sorted.push((j, q.clone())),
        }
    }
    sorted.retain(|(_, q)| !q.is_zero());
    let lcm = sorted
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let ints = sorted
        .into_iter()
        .map(|(j, q)| (j, q.numer() * (&lcm / q.denom())))
        .collect();
    primitive(ints)
}

/// Divide by the content and make the leading coefficient positive.
fn primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let Some(first) = row.first() else {
        return row;
    };
    let mut g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    row
}

// a * row - b * other
fn combine_int(
    a: &BigInt,
    row: &[(usize, BigInt)],
    b: &BigInt,
    other: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < other.len() {
        let next = match (row.get(i), other.get(k)) {
            (Some((x, u)), Some((y, w))) if x == y => {
                i += 1;
                k += 1;
                (*x, a * u - b * w)
            }
            (Some((x, u)), Some((y, _))) if x < y => {
                i += 1;
                (*x, a * u)
            }
            (Some(_), Some((y, w))) => {
                k += 1;
                (*y, -(b * w))
            }
            (Some((x, u)), None) => {
                i += 1;
                (*x, a * u)
            }
            (None, Some((y, w))) => {
                k += 1;
                (*y, -(b * w))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn semi_reduce_rational(
    mut row: Vec<(usize, BigInt)>,
    pivots: &[Option<Vec<(usize, BigInt)>>],
) -> Vec<(usize, BigInt)> {
    while let Some((lead, b)) = row.first() {
        match &pivots[*lead] {
            Some(prow) => {
                let a = &prow[0].1;
                let g = a.gcd(b);
                let (a, b) = (a / &g, b / &g);
                row = primitive(combine_int(&a, &row, &b, prow));
            }
            None => break,
        }
    }
    row
}

/// Reduced row echelon form.
pub fn rref(m: &Matrix) -> Result<Rref> {
    let mut e = Echelon::new(m.field, m.cols);
    for r in &m.rows {
        e.push(r.clone())?;
    }
    let (pivots, mut reduced) = e.finish();
    let rank = pivots.len();
    reduced.resize(m.nrows().max(rank), Vec::new());
    Ok(Rref {
        rank,
        pivots,
        reduced: Matrix {
            field: m.field,
            cols: m.cols,
            rows: reduced,
        },
    })
}

pub fn rank(m: &Matrix) -> Result<usize> {
    let mut e = Echelon::new(m.field, m.cols);
    for r in &m.rows {
        e.push(r.clone())?;
    }
    Ok(e.rank())
}

/// Echelonized basis of `{v : m·v = 0}`.
pub fn nullspace(m: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let mut e = Echelon::new(m.field, m.cols);
    for r in &m.rows {
        e.push(r.clone())?;
    }
    Ok(e.nullspace())
}

/// Nullspace of a system given as a stream of sparse rows.
pub fn solve_homogeneous<I>(field: FieldSpec, unknowns: usize, rows: I) -> Result<Vec<Vec<Scalar>>>
where
    I: IntoIterator<Item = Vec<(usize, Scalar)>>,
{
    let mut e = Echelon::new(field, unknowns);
    for r in rows {
        if !r.is_empty() {
            e.push(r)?;
        }
    }
    Ok(e.nullspace())
}

/// Rank of a family of dense vectors of length `len`.
pub fn rank_of(field: FieldSpec, len: usize, vectors: &[Vec<Scalar>]) -> Result<usize> {
    let mut e = Echelon::new(field, len);
    for v in vectors {
        if v.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: v.len(),
            });
        }
        e.push(to_sparse(v))?;
    }
    Ok(e.rank())
}

/// Reduced echelon basis (dense rows) of the span of `vectors`.
pub fn echelon_basis(
    field: FieldSpec,
    len: usize,
    vectors: &[Vec<Scalar>],
) -> Result<(Vec<usize>, Vec<Vec<Scalar>>)> {
    let mut e = Echelon::new(field, len);
    for v in vectors {
        if v.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: v.len(),
            });
        }
        e.push(to_sparse(v))?;
    }
    let (pivots, rows) = e.finish();
    Ok((
        pivots,
        rows.iter().map(|r| to_dense(field, r, len)).collect(),
    ))
}

/// How two spans relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SpanRelation {
    Equal,
    AContainsB,
    BContainsA,
    Incomparable,
}

/// Compare `span(a)` with `span(b)` via the ranks of the stacked families.
pub fn span_compare(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<SpanRelation> {
    let Some(first) = a.iter().chain(b).next() else {
        return Ok(SpanRelation::Equal);
    };
    let len = first.len();
    let field = first.first().map(|s| s.field());
    for v in a.iter().chain(b) {
        if v.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    let Some(field) = field else {
        // all vectors have length zero
        return Ok(SpanRelation::Equal);
    };
    let ra = rank_of(field, len, a)?;
    let rb = rank_of(field, len, b)?;
    let stacked: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    let rab = rank_of(field, len, &stacked)?;
    Ok(match (rab == ra, rab == rb) {
        (true, true) => SpanRelation::Equal,
        (true, false) => SpanRelation::AContainsB,
        (false, true) => SpanRelation::BContainsA,
        (false, false) => SpanRelation::Incomparable,
    })
}

/// Coordinates of `v` with respect to the nullspace-style basis produced by
/// [`Echelon::nullspace`], or `None` if `v` is not in the span.
pub fn coordinates(
    field: FieldSpec,
    basis: &[Vec<Scalar>],
    v: &[Scalar],
) -> Result<Option<Vec<Scalar>>> {
    // Solve sum_b t_b basis[b] = v as an augmented system in (t, -1).
    let n = basis.len();
    let len = v.len();
    let mut e = Echelon::new(field, n + 1);
    for i in 0..len {
        let mut row: Vec<(usize, Scalar)> = Vec::new();
        for (b, vec) in basis.iter().enumerate() {
            if vec.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: vec.len(),
                });
            }
            if !vec[i].is_zero() {
                row.push((b, vec[i].clone()));
            }
        }
        if !v[i].is_zero() {
            row.push((n, -&v[i]));
        }
        if !row.is_empty() {
            e.push(row)?;
        }
    }
    let null = e.nullspace();
    // a solution has last coordinate 1; the basis of the kernel has exactly
    // one vector with free column n when v is in the span
    match null.iter().find(|w| !w[n].is_zero()) {
        None => Ok(None),
        Some(w) => {
            let s = w[n].inv()?;
            Ok(Some(w[..n].iter().map(|c| c * &s).collect()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        let f = FieldSpec::rationals();
        Matrix::from_dense(
            f,
            rows.iter()
                .map(|r| r.iter().map(|x| f.int(*x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn qv(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|x| FieldSpec::rationals().int(*x)).collect()
    }

    #[test]
    fn identity_rref() {
        let r = rref(&qm(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn zero_matrix_rref() {
        let m = Matrix::zeros(FieldSpec::rationals(), 3, 4);
        let r = rref(&m).unwrap();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(nullspace(&m).unwrap().len(), 4);
    }

    #[test]
    fn dependent_rows() {
        let r = rref(&qm(&[&[1, 2], &[2, 4]])).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced.to_dense()[0], qv(&[1, 2]));
        assert_eq!(r.reduced.to_dense()[1], qv(&[0, 0]));
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = Matrix::identity(FieldSpec::rationals(), 5);
        assert!(nullspace(&m).unwrap().is_empty());
    }

    #[test]
    fn single_row_kernel() {
        // hand elimination: x0 = -x1, x2 free
        let ns = nullspace(&qm(&[&[1, 1, 0]])).unwrap();
        assert_eq!(ns, vec![qv(&[-1, 1, 0]), qv(&[0, 0, 1])]);
    }

    #[test]
    fn rational_back_substitution() {
        let m = qm(&[&[2, 4, 6, 1], &[1, 3, 5, 0], &[3, 7, 11, 1]]);
        let r = rref(&m).unwrap();
        assert_eq!(r.rank, 2);
        let f = FieldSpec::rationals();
        let half = Scalar::from_fraction(f, &1.into(), &2.into()).unwrap();
        let d = r.reduced.to_dense();
        assert_eq!(d[0], vec![f.int(1), f.int(0), f.int(-1), f.int(3) * &half]);
        assert_eq!(d[1], vec![f.int(0), f.int(1), f.int(2), -half.clone()]);
    }

    #[test]
    fn modp_rref() {
        let f = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_dense(f, vec![vec![f.int(2), f.int(4)], vec![f.int(1), f.int(2)]])
            .unwrap();
        let r = rref(&m).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced.get(0, 1), f.int(2));
    }

    #[test]
    fn span_relations() {
        let e1 = qv(&[1, 0]);
        let e2 = qv(&[0, 1]);
        assert_eq!(
            span_compare(std::slice::from_ref(&e1), &[qv(&[2, 0])]).unwrap(),
            SpanRelation::Equal
        );
        assert_eq!(
            span_compare(&[e1.clone(), e2.clone()], std::slice::from_ref(&e1)).unwrap(),
            SpanRelation::AContainsB
        );
        assert_eq!(
            span_compare(std::slice::from_ref(&e1), &[e1.clone(), e2.clone()]).unwrap(),
            SpanRelation::BContainsA
        );
        assert_eq!(
            span_compare(&[e1], &[e2]).unwrap(),
            SpanRelation::Incomparable
        );
        assert!(matches!(
            span_compare(&[qv(&[1])], &[qv(&[1, 0])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(
            m.mul(&inv).unwrap(),
            Matrix::identity(FieldSpec::rationals(), 2)
        );
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = vec![qv(&[1, 0, 2]), qv(&[0, 1, 1])];
        let c = coordinates(FieldSpec::rationals(), &basis, &qv(&[3, -1, 5])).unwrap();
        assert_eq!(c, Some(qv(&[3, -1])));
        assert_eq!(
            coordinates(FieldSpec::rationals(), &basis, &qv(&[0, 0, 1])).unwrap(),
            None
        );
    }

    #[test]
    fn entry_cap_is_enforced() {
        let f = FieldSpec::prime(5).unwrap();
        let mut e = Echelon::new(f, 3);
        e.cap = 4;
        e.push(vec![(0, f.one()), (1, f.one())]).unwrap();
        assert!(e
            .push(vec![(0, f.one()), (1, f.one()), (2, f.one())])
            .is_err());
    }
}
