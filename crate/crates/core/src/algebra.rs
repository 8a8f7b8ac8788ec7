//! Finite-dimensional algebras given by structure constants, and the
//! Lie-theoretic operations built on them.

use crate::error::{Error, Result};
use crate::forms::{BilinearForm, LinearMapSpace};
use crate::linalg::{
    self, echelon_basis, normalize_sparse, solve_homogeneous, to_dense, to_sparse, Matrix,
    SparseVec,
};
use crate::scalar::{FieldSpec, Scalar};

/// Structural flags claimed for an algebra. They are checked when the algebra
/// is built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub lie: bool,
    pub assoc_comm: bool,
    pub unit: Option<usize>,
}

/// Result of [`Algebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub commutative: bool,
    pub associative: bool,
    pub unit_index: Option<usize>,
    /// First failing basis tuple for each failed property, in the order above.
    pub witnesses: Vec<(&'static str, Vec<usize>)>,
}

/// A finite-dimensional algebra: `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    names: Vec<String>,
    // row-major dim x dim table of sparse products
    table: Vec<SparseVec>,
    flags: Flags,
}

impl Algebra {
    /// Build from a full product table (`table[i * dim + j] = e_i e_j`) and
    /// verify every claimed flag.
    pub fn from_table(
        field: FieldSpec,
        names: Vec<String>,
        table: Vec<Vec<(usize, Scalar)>>,
        flags: Flags,
    ) -> Result<Self> {
        let dim = names.len();
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: table.len(),
            });
        }
        let mut norm = Vec::with_capacity(table.len());
        for entry in table {
            for (k, c) in &entry {
                if *k >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: k + 1,
                    });
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch(field, c.field()));
                }
            }
            norm.push(normalize_sparse(entry));
        }
        if let Some(u) = flags.unit {
            if u >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u + 1,
                });
            }
        }
        let alg = Algebra {
            field,
            names,
            table: norm,
            flags,
        };
        alg.check_flags()?;
        Ok(alg)
    }

    /// Lie algebra from brackets `[e_i, e_j]` with `i < j`; the rest of the
    /// table follows by antisymmetry.
    pub fn lie(
        field: FieldSpec,
        names: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    ) -> Result<Self> {
        let dim = names.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: i.max(j) + 1,
                });
            }
            if i == j {
                if normalize_sparse(v).is_empty() {
                    continue;
                }
                return Err(Error::Validation {
                    property: "antisymmetry",
                    witness: vec![i, j],
                });
            }
            let neg: Vec<(usize, Scalar)> = v.iter().map(|(k, c)| (*k, -c)).collect();
            let (a, b, fwd, back) = if i < j {
                (i, j, v, neg)
            } else {
                (j, i, neg, v)
            };
            table[a * dim + b].extend(fwd);
            table[b * dim + a].extend(back);
        }
        Self::from_table(
            field,
            names,
            table,
            Flags {
                lie: true,
                ..Flags::default()
            },
        )
    }

    /// Commutative algebra from products `e_i e_j` with `i ≤ j`, claimed
    /// associative; `unit` names the basis element claimed to be the unit.
    pub fn commutative(
        field: FieldSpec,
        names: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
        unit: Option<usize>,
    ) -> Result<Self> {
        let dim = names.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, v) in products {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: i.max(j) + 1,
                });
            }
            let (a, b) = (i.min(j), i.max(j));
            if a != b {
                table[b * dim + a].extend(v.iter().cloned());
            }
            table[a * dim + b].extend(v);
        }
        Self::from_table(
            field,
            names,
            table,
            Flags {
                lie: false,
                assoc_comm: true,
                unit,
            },
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_lie(&self) -> bool {
        self.flags.lie
    }

    pub fn is_assoc_comm(&self) -> bool {
        self.flags.assoc_comm
    }

    pub fn unit(&self) -> Option<usize> {
        self.flags.unit
    }

    /// `e_i e_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product(i, j)
            .iter()
            .find(|(m, _)| *m == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub(crate) fn require_lie(&self) -> Result<()> {
        if self.flags.lie {
            Ok(())
        } else {
            Err(Error::NotLie)
        }
    }

    pub(crate) fn require_assoc_comm(&self) -> Result<()> {
        if self.flags.assoc_comm {
            Ok(())
        } else {
            Err(Error::NotAssocComm)
        }
    }

    /// Product of two sparse vectors.
    pub fn mul_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.product(*i, *j) {
                    acc.push((*k, &ab * c));
                }
            }
        }
        normalize_sparse(acc)
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
            if let Some(c) = v.iter().find(|c| c.field() != self.field) {
                return Err(Error::FieldMismatch(self.field, c.field()));
            }
        }
        let p = self.mul_sparse(&to_sparse(x), &to_sparse(y));
        Ok(to_dense(self.field, &p, self.dim()))
    }

    /// Left multiplication by `e_i` (`ad e_i` for Lie algebras); column `j`
    /// holds `e_i e_j`.
    pub fn left_mul_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut rows = vec![Vec::new(); n];
        for j in 0..n {
            for (k, c) in self.product(i, j) {
                rows[*k].push((j, c.clone()));
            }
        }
        Matrix::from_sparse_rows(self.field, n, rows).expect("indices in range")
    }

    fn unit_works(&self, u: usize) -> Option<usize> {
        for i in 0..self.dim() {
            let expect = vec![(i, self.field.one())];
            if self.product(u, i) != expect.as_slice() || self.product(i, u) != expect.as_slice() {
                return Some(i);
            }
        }
        None
    }

    fn antisymmetry_witness(&self) -> Option<Vec<usize>> {
        let n = self.dim();
        for i in 0..n {
            if !self.product(i, i).is_empty() {
                return Some(vec![i, i]);
            }
            for j in i + 1..n {
                let neg: SparseVec = self.product(j, i).iter().map(|(k, c)| (*k, -c)).collect();
                if self.product(i, j) != neg.as_slice() {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    }

    fn jacobi_witness(&self, antisymmetric: bool) -> Option<Vec<usize>> {
        let n = self.dim();
        let single = |i: usize| vec![(i, self.field.one())];
        let check = |i: usize, j: usize, k: usize| {
            let a = self.mul_sparse(self.product(i, j), &single(k));
            let b = self.mul_sparse(self.product(j, k), &single(i));
            let c = self.mul_sparse(self.product(k, i), &single(j));
            normalize_sparse(a.into_iter().chain(b).chain(c).collect()).is_empty()
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let reduced = antisymmetric && !(i < j && j < k);
                    if !reduced && !check(i, j, k) {
                        return Some(vec![i, j, k]);
                    }
                }
            }
        }
        None
    }

    fn commutativity_witness(&self) -> Option<Vec<usize>> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.product(i, j) != self.product(j, i) {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    }

    fn associativity_witness(&self) -> Option<Vec<usize>> {
        let n = self.dim();
        let single = |i: usize| vec![(i, self.field.one())];
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let left = self.mul_sparse(ij, &single(k));
                    let right = self.mul_sparse(&single(i), self.product(j, k));
                    if left != right {
                        return Some(vec![i, j, k]);
                    }
                }
            }
        }
        None
    }

    fn check_flags(&self) -> Result<()> {
        if self.flags.lie {
            if let Some(w) = self.antisymmetry_witness() {
                return Err(Error::Validation {
                    property: "antisymmetry",
                    witness: w,
                });
            }
            if let Some(w) = self.jacobi_witness(true) {
                return Err(Error::Validation {
                    property: "Jacobi identity",
                    witness: w,
                });
            }
        }
        if self.flags.assoc_comm {
            if let Some(w) = self.commutativity_witness() {
                return Err(Error::Validation {
                    property: "commutativity",
                    witness: w,
                });
            }
            if let Some(w) = self.associativity_witness() {
                return Err(Error::Validation {
                    property: "associativity",
                    witness: w,
                });
            }
        }
        if let Some(u) = self.flags.unit {
            if let Some(i) = self.unit_works(u) {
                return Err(Error::Validation {
                    property: "unit",
                    witness: vec![u, i],
                });
            }
        }
        Ok(())
    }

    /// Check every structural property exhaustively over basis tuples,
    /// independent of the claimed flags.
    pub fn validate(&self) -> ValidationReport {
        let mut witnesses = Vec::new();
        let anti = self.antisymmetry_witness();
        let jac = self.jacobi_witness(anti.is_none());
        let comm = self.commutativity_witness();
        let assoc = self.associativity_witness();
        for (name, w) in [
            ("antisymmetry", &anti),
            ("Jacobi identity", &jac),
            ("commutativity", &comm),
            ("associativity", &assoc),
        ] {
            if let Some(w) = w {
                witnesses.push((name, w.clone()));
            }
        }
        ValidationReport {
            antisymmetric: anti.is_none(),
            jacobi: jac.is_none(),
            commutative: comm.is_none(),
            associative: assoc.is_none(),
            unit_index: (0..self.dim()).find(|u| self.unit_works(*u).is_none()),
            witnesses,
        }
    }

    /// The same structure constants read in another field (ℚ → 𝔽_p).
    pub fn reduce_to(&self, field: FieldSpec) -> Result<Algebra> {
        if field == self.field {
            return Ok(self.clone());
        }
        let table = self
            .table
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(k, c)| Ok((*k, c.reduce_into(field)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::from_table(field, self.names.clone(), table, self.flags)
    }

    /// Copy with different basis labels.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }
}

/// A subspace of an algebra's underlying space, stored as reduced echelon
/// rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    pivots: Vec<usize>,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let (pivots, basis) = echelon_basis(field, ambient_dim, vectors)?;
        Ok(Subspace {
            field,
            ambient_dim,
            pivots,
            basis,
        })
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            pivots: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn whole(field: FieldSpec, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![field.zero(); ambient_dim];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field,
            ambient_dim,
            pivots: (0..ambient_dim).collect(),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots: a basis of a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|i| !self.pivots.contains(i))
            .collect()
    }

    /// `v` minus its component along the subspace (reduction by the echelon
    /// rows); zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = &*o - &(&f * r);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn contains_sparse(&self, v: &[(usize, Scalar)]) -> bool {
        self.contains(&to_dense(self.field, v, self.ambient_dim))
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim
    }
}

/// `[L, L]`.
pub fn derived_subalgebra(l: &Algebra) -> Result<Subspace> {
    l.require_lie()?;
    let n = l.dim();
    let vectors: Vec<Vec<Scalar>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| to_dense(l.field, l.product(i, j), n))
        .collect();
    Subspace::span(l.field, n, &vectors)
}

pub fn is_ideal(l: &Algebra, s: &Subspace) -> Result<bool> {
    l.require_lie()?;
    check_ambient(l, s)?;
    for v in s.basis() {
        let sv = to_sparse(v);
        for i in 0..l.dim() {
            let w = l.mul_sparse(&[(i, l.field.one())], &sv);
            if !s.contains_sparse(&w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closure of `s` under the product.
pub fn is_subalgebra(l: &Algebra, s: &Subspace) -> Result<bool> {
    check_ambient(l, s)?;
    for a in s.basis() {
        let sa = to_sparse(a);
        for b in s.basis() {
            if !s.contains_sparse(&l.mul_sparse(&sa, &to_sparse(b))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_ambient(l: &Algebra, s: &Subspace) -> Result<()> {
    if s.field() != l.field() {
        return Err(Error::FieldMismatch(l.field(), s.field()));
    }
    if s.ambient_dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: s.ambient_dim(),
        });
    }
    Ok(())
}

/// `{x : [x, L] = 0}`.
pub fn center(l: &Algebra) -> Result<Subspace> {
    l.require_lie()?;
    let n = l.dim();
    // unknown x_i; equation for each (j, k): sum_i x_i c[i][j][k] = 0
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in l.product(i, j) {
                rows[j * n + k].push((i, c.clone()));
            }
        }
    }
    let basis = solve_homogeneous(l.field, n, rows)?;
    Subspace::span(l.field, n, &basis)
}

/// A quotient algebra together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    /// `dim(L/I) x dim(L)` matrix of the projection.
    pub projection: Matrix,
    /// Coordinates of `L` whose images form the quotient basis.
    pub complement: Vec<usize>,
}

/// `L / I`, with basis the images of the non-pivot coordinates of `I`.
pub fn quotient(l: &Algebra, ideal: &Subspace) -> Result<Quotient> {
    if !is_ideal(l, ideal)? {
        return Err(Error::NotAnIdeal);
    }
    let n = l.dim();
    let comp = ideal.complement_indices();
    let q = comp.len();
    let mut pos = vec![usize::MAX; n];
    for (a, &c) in comp.iter().enumerate() {
        pos[c] = a;
    }
    let project = |v: &[Scalar]| -> SparseVec {
        let r = ideal.reduce(v);
        comp.iter()
            .enumerate()
            .filter(|(_, &c)| !r[c].is_zero())
            .map(|(a, &c)| (a, r[c].clone()))
            .collect()
    };
    let mut proj_rows = vec![Vec::new(); q];
    for i in 0..n {
        let mut e = vec![l.field.zero(); n];
        e[i] = l.field.one();
        for (a, c) in project(&e) {
            proj_rows[a].push((i, c));
        }
    }
    let projection = Matrix::from_sparse_rows(l.field, n, proj_rows)?;
    let mut brackets = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            let v = to_dense(l.field, l.product(comp[a], comp[b]), n);
            brackets.push((a, b, project(&v)));
        }
    }
    let names = comp.iter().map(|&c| l.names()[c].clone()).collect();
    let algebra = Algebra::lie(l.field, names, brackets)?;
    Ok(Quotient {
        algebra,
        projection,
        complement: comp,
    })
}

/// The subalgebra `s` as an algebra in its own right, on the echelon basis of
/// `s`. Basis labels are `s0, s1, ...`.
pub fn subalgebra(l: &Algebra, s: &Subspace) -> Result<Algebra> {
    if !is_subalgebra(l, s)? {
        return Err(Error::NotASubalgebra);
    }
    let m = s.dim();
    let coords = |v: &[Scalar]| -> SparseVec {
        // echelon rows: coordinate b is the entry at pivot b
        s.pivots()
            .iter()
            .enumerate()
            .filter(|(_, &p)| !v[p].is_zero())
            .map(|(b, &p)| (b, v[p].clone()))
            .collect()
    };
    let mut table = vec![Vec::new(); m * m];
    for a in 0..m {
        for b in 0..m {
            let prod = l.mul_sparse(&to_sparse(&s.basis()[a]), &to_sparse(&s.basis()[b]));
            table[a * m + b] = coords(&to_dense(l.field, &prod, l.dim()));
        }
    }
    let flags = Flags {
        lie: l.is_lie(),
        assoc_comm: l.is_assoc_comm(),
        unit: None,
    };
    Algebra::from_table(
        l.field,
        (0..m).map(|i| format!("s{i}")).collect(),
        table,
        flags,
    )
}

/// Span of the values of the degree-5 standard Lie word, with the ideal test.
#[derive(Clone, Debug)]
pub struct S4Span {
    pub span: Subspace,
    pub is_ideal: bool,
}

/// Span of `s4(x1, x2, x3, x4, y)` over basis tuples.
///
/// The word is alternating in `x1..x4`, so only strictly increasing
/// quadruples of basis indices contribute. For each quadruple and each `y`
/// the alternating sum over orderings is computed by recursion on subsets:
/// `f(S) = Σ_{x∈S} (-1)^{#{s∈S : s > x}} [f(S \ {x}), x]`, `f(∅) = y`.
/// Enumeration stops early once the span is all of `L`.
pub fn s4_span(l: &Algebra) -> Result<S4Span> {
    l.require_lie()?;
    let n = l.dim();
    let field = l.field;
    let mut echelon = linalg::Echelon::new(field, n);
    'outer: for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let xs = [a, b, c, d];
                    for y in 0..n {
                        let v = s4_value(l, &xs, y);
                        if !v.is_empty() {
                            echelon.push(v)?;
                            if echelon.rank() == n {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    let (_, rows) = echelon.finish();
    let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| to_dense(field, r, n)).collect();
    let span = Subspace::span(field, n, &dense)?;
    let ideal = is_ideal(l, &span)?;
    Ok(S4Span {
        span,
        is_ideal: ideal,
    })
}

/// `s4(x1..x4, y)` for basis elements `xs` (distinct) and `y`.
pub fn s4_value(l: &Algebra, xs: &[usize; 4], y: usize) -> SparseVec {
    let field = l.field;
    let mut f: Vec<SparseVec> = vec![Vec::new(); 16];
    f[0] = vec![(y, field.one())];
    for mask in 1usize..16 {
        let mut acc = Vec::new();
        for t in 0..4 {
            if mask & (1 << t) == 0 {
                continue;
            }
            let greater = (t + 1..4).filter(|u| mask & (1 << u) != 0).count();
            let inner = l.mul_sparse(&f[mask & !(1 << t)], &[(xs[t], field.one())]);
            let sign = greater % 2 == 1;
            acc.extend(
                inner
                    .into_iter()
                    .map(|(k, c)| (k, if sign { -c } else { c })),
            );
        }
        f[mask] = normalize_sparse(acc);
    }
    f[15].clone()
}

pub fn satisfies_std_identity5(l: &Algebra) -> Result<bool> {
    Ok(s4_span(l)?.span.dim() == 0)
}

/// A representation of a Lie algebra: one `module_dim x module_dim` matrix per
/// basis element.
#[derive(Clone, Debug)]
pub struct Representation {
    field: FieldSpec,
    algebra_dim: usize,
    module_dim: usize,
    action: Vec<Matrix>,
}

impl Representation {
    /// Checks `ρ([e_i, e_j]) = ρ(e_i)ρ(e_j) − ρ(e_j)ρ(e_i)` on all basis pairs.
    pub fn new(l: &Algebra, module_dim: usize, action: Vec<Matrix>) -> Result<Self> {
        l.require_lie()?;
        if action.len() != l.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "{} action matrices for a {}-dimensional algebra",
                action.len(),
                l.dim()
            )));
        }
        for m in &action {
            if m.nrows() != module_dim || m.ncols() != module_dim || m.field() != l.field() {
                return Err(Error::InvalidRepresentation(
                    "action matrix has the wrong shape or field".into(),
                ));
            }
        }
        let rep = Representation {
            field: l.field(),
            algebra_dim: l.dim(),
            module_dim,
            action,
        };
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let lhs = rep.act_sparse(l.product(i, j));
                let rhs = rep.action[i]
                    .mul(&rep.action[j])?
                    .sub(&rep.action[j].mul(&rep.action[i])?)?;
                if lhs != rhs {
                    return Err(Error::InvalidRepresentation(format!(
                        "homomorphism property fails on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub fn trivial(l: &Algebra, module_dim: usize) -> Result<Self> {
        Self::new(
            l,
            module_dim,
            vec![Matrix::zeros(l.field(), module_dim, module_dim); l.dim()],
        )
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// `ρ(x)` for `x` given sparsely.
    pub fn act_sparse(&self, x: &[(usize, Scalar)]) -> Matrix {
        x.iter().fold(
            Matrix::zeros(self.field, self.module_dim, self.module_dim),
            |acc, (i, c)| acc.add(&self.action[*i].scale(c)).expect("same shape"),
        )
    }
}

/// The coadjoint module `L*`: `(x•f)(y) = −f([x, y])`, so `ρ(x) = −(ad x)ᵀ`
/// in the dual basis.
pub fn coadjoint_rep(l: &Algebra) -> Result<Representation> {
    l.require_lie()?;
    let minus = -l.field.one();
    let action = (0..l.dim())
        .map(|i| l.left_mul_matrix(i).transpose().scale(&minus))
        .collect();
    Representation::new(l, l.dim(), action)
}

/// Derivations `d(e_i e_j) = d(e_i) e_j + e_i d(e_j)`, as `dim x dim`
/// matrices (column `i` is `d(e_i)`).
pub fn derivations(a: &Algebra) -> Result<LinearMapSpace> {
    let n = a.dim();
    let field = a.field;
    // unknown D[m][i] at index m * n + i
    let var = |m: usize, i: usize| m * n + i;
    let pairs: Vec<(usize, usize)> = if a.is_lie() {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect()
    } else if a.is_assoc_comm() {
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
    } else {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    };
    let mut rows = Vec::new();
    for (i, j) in pairs {
        let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        // D(e_i e_j)
        for (k, c) in a.product(i, j) {
            for (m, eq) in eqs.iter_mut().enumerate() {
                eq.push((var(m, *k), c.clone()));
            }
        }
        // - D(e_i) e_j - e_i D(e_j)
        for k in 0..n {
            for (m, c) in a.product(k, j) {
                eqs[*m].push((var(k, i), -c));
            }
            for (m, c) in a.product(i, k) {
                eqs[*m].push((var(k, j), -c));
            }
        }
        rows.extend(eqs);
    }
    let sol = solve_homogeneous(field, n * n, rows)?;
    let basis = sol
        .iter()
        .map(|v| Matrix::from_flat(field, n, n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearMapSpace::new(field, n, n, basis))
}

/// Lie algebra spanned by a family of endomorphisms closed under the
/// commutator, on the given basis order. Basis labels are supplied.
pub fn linear_lie_algebra(
    field: FieldSpec,
    maps: &[Matrix],
    names: Vec<String>,
) -> Result<Algebra> {
    let flat: Vec<Vec<Scalar>> = maps.iter().map(|m| m.flatten()).collect();
    if linalg::rank_of(field, flat.first().map_or(0, |v| v.len()), &flat)? != maps.len() {
        return Err(Error::PreconditionFailed(
            "endomorphisms are linearly dependent".into(),
        ));
    }
    let mut brackets = Vec::new();
    for a in 0..maps.len() {
        for b in a + 1..maps.len() {
            let comm = maps[a].mul(&maps[b])?.sub(&maps[b].mul(&maps[a])?)?;
            let coords = linalg::coordinates(field, &flat, &comm.flatten())?.ok_or_else(|| {
                Error::PreconditionFailed("endomorphisms are not closed under commutator".into())
            })?;
            brackets.push((a, b, to_sparse(&coords)));
        }
    }
    Algebra::lie(field, names, brackets)
}

/// The derivation algebra of `a` with its commutator bracket.
pub fn derivation_algebra(a: &Algebra) -> Result<(Algebra, LinearMapSpace)> {
    let der = derivations(a)?;
    let names = (0..der.dim()).map(|i| format!("der{i}")).collect();
    let alg = linear_lie_algebra(a.field(), der.basis(), names)?;
    Ok((alg, der))
}

/// `(D•φ)(x, y) = φ(Dx, y) + φ(x, Dy)`, i.e. `Dᵀ Φ + Φ D`.
pub fn act_on_form(d: &Matrix, phi: &BilinearForm) -> Result<BilinearForm> {
    let m = phi.matrix();
    if d.nrows() != m.nrows() || d.ncols() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: d.nrows().max(d.ncols()),
        });
    }
    let out = d.transpose().mul(m)?.add(&m.mul(d)?)?;
    BilinearForm::infer(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{abelian, heisenberg3, sl, two_dim_nonabelian};
    use crate::forms::invariant_forms;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![q().zero(); n];
        v[i] = q().one();
        v
    }

    #[test]
    fn sl2_h_e_bracket() {
        // sl(2) basis order: e, h, f
        let l = sl(2, q()).unwrap();
        assert_eq!(l.names(), &["e(1,2)", "h1", "e(2,1)"]);
        let he = l.multiply(&e(3, 1), &e(3, 0)).unwrap();
        assert_eq!(he, vec![q().int(2), q().zero(), q().zero()]);
    }

    #[test]
    fn multiply_by_zero() {
        let l = sl(3, q()).unwrap();
        let zero = vec![q().zero(); 8];
        let y: Vec<Scalar> = (0..8).map(|i| q().int(i as i64 - 3)).collect();
        assert!(l.multiply(&zero, &y).unwrap().iter().all(|c| c.is_zero()));
        assert!(matches!(
            l.multiply(&zero[..3], &y),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn symmetric_bracket_is_not_antisymmetric() {
        let f = q();
        let table = vec![vec![], vec![(0, f.one())], vec![(0, f.one())], vec![]];
        let alg = Algebra::from_table(
            f,
            vec!["a".into(), "b".into()],
            table.clone(),
            Flags::default(),
        )
        .unwrap();
        let rep = alg.validate();
        assert!(!rep.antisymmetric);
        let claimed = Algebra::from_table(
            f,
            vec!["a".into(), "b".into()],
            table,
            Flags {
                lie: true,
                ..Flags::default()
            },
        );
        assert!(matches!(
            claimed,
            Err(Error::Validation {
                property: "antisymmetry",
                ..
            })
        ));
    }

    #[test]
    fn derived_and_center() {
        let l = sl(2, q()).unwrap();
        assert!(derived_subalgebra(&l).unwrap().is_whole());
        let t = two_dim_nonabelian(q()).unwrap();
        let d = derived_subalgebra(&t).unwrap();
        assert_eq!(d.basis(), &[e(2, 1)]);
        assert!(is_ideal(&t, &d).unwrap());
        let h = heisenberg3(q()).unwrap();
        assert_eq!(center(&h).unwrap().basis(), &[e(3, 2)]);
        assert_eq!(center(&l).unwrap().dim(), 0);
    }

    #[test]
    fn quotients() {
        let h = heisenberg3(q()).unwrap();
        let z = center(&h).unwrap();
        let quo = quotient(&h, &z).unwrap();
        assert_eq!(quo.algebra.dim(), 2);
        assert!(quo.algebra.product(0, 1).is_empty());
        let l = sl(2, q()).unwrap();
        let whole = Subspace::whole(q(), 3);
        assert_eq!(quotient(&l, &whole).unwrap().algebra.dim(), 0);
        let t = two_dim_nonabelian(q()).unwrap();
        let line = Subspace::span(q(), 2, &[e(2, 0)]).unwrap();
        assert!(matches!(quotient(&t, &line), Err(Error::NotAnIdeal)));
    }

    #[test]
    fn s4_vanishes_on_small_algebras() {
        assert_eq!(s4_span(&sl(2, q()).unwrap()).unwrap().span.dim(), 0);
        assert!(satisfies_std_identity5(&abelian(5, q()).unwrap()).unwrap());
    }

    #[test]
    fn s4_fills_sl3() {
        let s = s4_span(&sl(3, q()).unwrap()).unwrap();
        assert_eq!(s.span.dim(), 8);
        assert!(s.is_ideal);
    }

    #[test]
    fn coadjoint_is_minus_transpose() {
        let l = sl(2, q()).unwrap();
        let rep = coadjoint_rep(&l).unwrap();
        // h is index 1; ad h = diag(2, 0, -2) on (e, h, f)
        let rho = rep.action(1);
        let diag: Vec<Scalar> = (0..3).map(|i| rho.get(i, i)).collect();
        assert_eq!(diag, vec![q().int(-2), q().zero(), q().int(2)]);
        let t = two_dim_nonabelian(q()).unwrap();
        let rep = coadjoint_rep(&t).unwrap();
        let expect = t.left_mul_matrix(0).transpose().scale(&q().int(-1));
        assert_eq!(rep.action(0), &expect);
        let a = abelian(3, q()).unwrap();
        assert!(coadjoint_rep(&a).unwrap().action(2).is_zero());
    }

    #[test]
    fn bad_representation_rejected() {
        let t = two_dim_nonabelian(q()).unwrap();
        let f = q();
        let id = Matrix::identity(f, 1);
        // rho(x) = 1, rho(y) = 1 but [x, y] = y needs rho(y) = 0
        let res = Representation::new(&t, 1, vec![id.clone(), id]);
        assert!(matches!(res, Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn derivations_of_sl2_are_inner() {
        let l = sl(2, q()).unwrap();
        let der = derivations(&l).unwrap();
        assert_eq!(der.dim(), 3);
        let inner: Vec<Vec<Scalar>> = (0..3).map(|i| l.left_mul_matrix(i).flatten()).collect();
        assert_eq!(linalg::rank_of(q(), 9, &inner).unwrap(), 3);
        let all: Vec<Vec<Scalar>> = der.basis().iter().map(|m| m.flatten()).collect();
        assert_eq!(
            linalg::span_compare(&all, &inner).unwrap(),
            linalg::SpanRelation::Equal
        );
    }

    #[test]
    fn act_on_form_basics() {
        let l = sl(2, q()).unwrap();
        let b = invariant_forms(&l).unwrap();
        let kil = &b.basis()[0];
        let zero = Matrix::zeros(q(), 3, 3);
        assert!(act_on_form(&zero, kil).unwrap().matrix().is_zero());
        let twice = act_on_form(&Matrix::identity(q(), 3), kil).unwrap();
        assert_eq!(twice.matrix(), &kil.matrix().scale(&q().int(2)));
        let adh = l.left_mul_matrix(1);
        assert!(act_on_form(&adh, kil).unwrap().matrix().is_zero());
    }
}
