//! Spaces of bilinear forms and linear maps cut out by linear identities,
//! computed as exact nullspaces.

use crate::algebra::{derived_subalgebra, Algebra, Representation};
use crate::error::{Error, Result};
use crate::linalg::{self, solve_homogeneous, Matrix};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Skew,
    None,
}

/// A bilinear form given by its Gram matrix `φ(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
    symmetry: Symmetry,
}

fn is_symmetric(m: &Matrix) -> bool {
    m.transpose() == *m
}

fn is_skew(m: &Matrix) -> bool {
    let n = m.nrows();
    m.transpose() == m.scale(&-m.field().one()) && (0..n).all(|i| m.get(i, i).is_zero())
}

impl BilinearForm {
    pub fn new(matrix: Matrix, symmetry: Symmetry) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let ok = match symmetry {
            Symmetry::Symmetric => is_symmetric(&matrix),
            Symmetry::Skew => is_skew(&matrix),
            Symmetry::None => true,
        };
        if !ok {
            return Err(Error::PreconditionFailed(format!(
                "matrix does not match symmetry tag {symmetry:?}"
            )));
        }
        Ok(BilinearForm { matrix, symmetry })
    }

    /// Tag the matrix as symmetric if it is, else skew if it is, else none.
    /// The zero form is tagged symmetric.
    pub fn infer(matrix: Matrix) -> Result<Self> {
        let symmetry = if is_symmetric(&matrix) {
            Symmetry::Symmetric
        } else if is_skew(&matrix) {
            Symmetry::Skew
        } else {
            Symmetry::None
        };
        Self::new(matrix, symmetry)
    }

    pub fn zero(field: FieldSpec, n: usize, symmetry: Symmetry) -> Self {
        BilinearForm {
            matrix: Matrix::zeros(field, n, n),
            symmetry,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.matrix)
    }

    pub fn is_skew(&self) -> bool {
        is_skew(&self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.matrix.get(i, j)
    }

    /// `φ(x, y)` for sparse arguments.
    pub fn eval_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Scalar {
        let mut acc = self.field().zero();
        for (i, a) in x {
            for (j, b) in y {
                let g = self.matrix.get(*i, *j);
                if !g.is_zero() {
                    acc = &acc + &(&(a * b) * &g);
                }
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FormKind {
    Z2Comm,
    Cyclic,
    Invariant,
    Trivial,
    HC1,
    Generic,
}

/// A space of forms with an echelonized basis.
#[derive(Clone, Debug)]
pub struct FormSpace {
    kind: FormKind,
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<BilinearForm>,
}

impl FormSpace {
    pub fn new(
        kind: FormKind,
        field: FieldSpec,
        ambient_dim: usize,
        basis: Vec<BilinearForm>,
    ) -> Self {
        FormSpace {
            kind,
            field,
            ambient_dim,
            basis,
        }
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BilinearForm] {
        &self.basis
    }

    /// Basis members flattened row-major.
    pub fn flat_basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|f| f.matrix().flatten()).collect()
    }

    pub fn contains(&self, form: &BilinearForm) -> Result<bool> {
        if form.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: form.dim(),
            });
        }
        Ok(
            linalg::coordinates(self.field, &self.flat_basis(), &form.matrix().flatten())?
                .is_some(),
        )
    }
}

/// A space of linear maps `source -> target`, each a `target x source`
/// matrix whose column `i` is the image of `e_i`.
#[derive(Clone, Debug)]
pub struct LinearMapSpace {
    field: FieldSpec,
    source_dim: usize,
    target_dim: usize,
    basis: Vec<Matrix>,
}

impl LinearMapSpace {
    pub fn new(field: FieldSpec, source_dim: usize, target_dim: usize, basis: Vec<Matrix>) -> Self {
        LinearMapSpace {
            field,
            source_dim,
            target_dim,
            basis,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn flat_basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|m| m.flatten()).collect()
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        if m.nrows() != self.target_dim || m.ncols() != self.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim * self.source_dim,
                found: m.nrows() * m.ncols(),
            });
        }
        Ok(linalg::coordinates(self.field, &self.flat_basis(), &m.flatten())?.is_some())
    }
}

/// Index of the unknown `φ(e_i, e_j)`, `i ≤ j`, in the row-major upper
/// triangle.
pub fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Index of the unknown `φ(e_i, e_j)`, `i < j`, in the strict upper triangle.
pub fn skew_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * (n - 1) - i * i.saturating_sub(1) / 2 + (j - i - 1)
}

fn sym_unknowns(n: usize) -> usize {
    n * (n + 1) / 2
}

fn skew_unknowns(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Unknown index and sign for `φ(e_i, e_j)` of a skew form, `None` on the
/// diagonal.
fn skew_term(n: usize, i: usize, j: usize) -> Option<(usize, bool)> {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => Some((skew_index(n, i, j), false)),
        Greater => Some((skew_index(n, j, i), true)),
        Equal => None,
    }
}

fn sym_form(field: FieldSpec, n: usize, sol: &[Scalar]) -> Result<BilinearForm> {
    let mut rows = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = sol[sym_index(n, i, j)].clone();
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
    }
    BilinearForm::new(
        Matrix::from_dense_with_cols(field, n, rows)?,
        Symmetry::Symmetric,
    )
}

fn skew_form(field: FieldSpec, n: usize, sol: &[Scalar]) -> Result<BilinearForm> {
    let mut rows = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = sol[skew_index(n, i, j)].clone();
            rows[j][i] = -&v;
            rows[i][j] = v;
        }
    }
    BilinearForm::new(
        Matrix::from_dense_with_cols(field, n, rows)?,
        Symmetry::Skew,
    )
}

/// `φ(u, e_k)` for `u = Σ c_m e_m` as linear terms in the symmetric unknowns.
fn sym_terms(
    n: usize,
    u: &[(usize, Scalar)],
    k: usize,
    sign: bool,
    out: &mut Vec<(usize, Scalar)>,
) {
    for (m, c) in u {
        out.push((sym_index(n, *m, k), if sign { -c } else { c.clone() }));
    }
}

fn skew_terms(
    n: usize,
    u: &[(usize, Scalar)],
    k: usize,
    sign: bool,
    out: &mut Vec<(usize, Scalar)>,
) {
    for (m, c) in u {
        if let Some((idx, flip)) = skew_term(n, *m, k) {
            out.push((idx, if sign ^ flip { -c } else { c.clone() }));
        }
    }
}

fn solve_sym(
    kind: FormKind,
    field: FieldSpec,
    n: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
) -> Result<FormSpace> {
    let sol = solve_homogeneous(field, sym_unknowns(n), rows)?;
    let basis = sol
        .iter()
        .map(|v| sym_form(field, n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(FormSpace::new(kind, field, n, basis))
}

fn solve_skew(
    kind: FormKind,
    field: FieldSpec,
    n: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
) -> Result<FormSpace> {
    let sol = solve_homogeneous(field, skew_unknowns(n), rows)?;
    let basis = sol
        .iter()
        .map(|v| skew_form(field, n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(FormSpace::new(kind, field, n, basis))
}

/// Commutative 2-cocycles: symmetric `φ` with
/// `φ([x,y],z) + φ([z,x],y) + φ([y,z],x) = 0`.
///
/// For symmetric `φ` the left side is alternating, so basis triples
/// `i < j < k` suffice.
pub fn z2_comm(l: &Algebra) -> Result<FormSpace> {
    l.require_lie()?;
    let n = l.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut eq = Vec::new();
                sym_terms(n, l.product(i, j), k, false, &mut eq);
                sym_terms(n, l.product(k, i), j, false, &mut eq);
                sym_terms(n, l.product(j, k), i, false, &mut eq);
                rows.push(eq);
            }
        }
    }
    solve_sym(FormKind::Z2Comm, l.field(), n, rows)
}

/// Cyclic forms `C(L)`: skew `φ` with `φ([x,y],z) = φ([z,x],y)`.
pub fn cyclic_forms(l: &Algebra) -> Result<FormSpace> {
    l.require_lie()?;
    let n = l.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut eq = Vec::new();
                skew_terms(n, l.product(i, j), k, false, &mut eq);
                skew_terms(n, l.product(k, i), j, true, &mut eq);
                rows.push(eq);
            }
        }
    }
    solve_skew(FormKind::Cyclic, l.field(), n, rows)
}

/// Invariant forms `B(L)`: symmetric `φ` with `φ([x,y],z) = φ(x,[y,z])`.
pub fn invariant_forms(l: &Algebra) -> Result<FormSpace> {
    l.require_lie()?;
    let n = l.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut eq = Vec::new();
                sym_terms(n, l.product(i, j), k, false, &mut eq);
                sym_terms(n, l.product(j, k), i, true, &mut eq);
                rows.push(eq);
            }
        }
    }
    solve_sym(FormKind::Invariant, l.field(), n, rows)
}

/// Symmetric forms vanishing on `[L, L] x L`.
pub fn trivial_cocycles(l: &Algebra) -> Result<FormSpace> {
    let d = derived_subalgebra(l)?;
    let n = l.dim();
    let mut rows = Vec::new();
    for v in d.basis() {
        let sv = linalg::to_sparse(v);
        for k in 0..n {
            let mut eq = Vec::new();
            sym_terms(n, &sv, k, false, &mut eq);
            rows.push(eq);
        }
    }
    solve_sym(FormKind::Trivial, l.field(), n, rows)
}

/// `HC^1(A)`: skew `α` with `α(ab,c) + α(ca,b) + α(bc,a) = 0`. For unital
/// `A` every basis member is checked to satisfy `α(1, A) = 0`.
pub fn hc1(a: &Algebra) -> Result<FormSpace> {
    a.require_assoc_comm()?;
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut eq = Vec::new();
                skew_terms(n, a.product(i, j), k, false, &mut eq);
                skew_terms(n, a.product(k, i), j, false, &mut eq);
                skew_terms(n, a.product(j, k), i, false, &mut eq);
                rows.push(eq);
            }
        }
    }
    let space = solve_skew(FormKind::HC1, a.field(), n, rows)?;
    if let Some(u) = a.unit() {
        for (s, f) in space.basis().iter().enumerate() {
            if (0..n).any(|k| !f.get(u, k).is_zero()) {
                return Err(Error::PostconditionFailed(format!(
                    "HC^1 basis member {s} does not vanish on the unit"
                )));
            }
        }
    }
    Ok(space)
}

/// Antiderivations `d: L -> M`, `d([x,y]) = y•d(x) - x•d(y)`: the negative
/// of the derivation rule. For `M = L*` with `(x•f)(y) = -f([x,y])` this is
/// the space `u` maps commutative cocycles into. Unknowns are ordered by
/// (source, target): `d(e_i)_m` sits at `i * dim M + m`.
pub fn antiderivations(l: &Algebra, rep: &Representation) -> Result<LinearMapSpace> {
    l.require_lie()?;
    if rep.algebra_dim() != l.dim() || rep.field() != l.field() {
        return Err(Error::InvalidRepresentation(
            "representation belongs to a different algebra".into(),
        ));
    }
    let n = l.dim();
    let md = rep.module_dim();
    let field = l.field();
    let var = |i: usize, m: usize| i * md + m;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); md];
            for (k, c) in l.product(i, j) {
                for (m, eq) in eqs.iter_mut().enumerate() {
                    eq.push((var(*k, m), c.clone()));
                }
            }
            // - ρ(e_j) d(e_i) + ρ(e_i) d(e_j)
            for (m, row) in rep.action(j).rows().iter().enumerate() {
                for (t, c) in row {
                    eqs[m].push((var(i, *t), -c));
                }
            }
            for (m, row) in rep.action(i).rows().iter().enumerate() {
                for (t, c) in row {
                    eqs[m].push((var(j, *t), c.clone()));
                }
            }
            rows.extend(eqs);
        }
    }
    let sol = solve_homogeneous(field, n * md, rows)?;
    let basis = sol
        .iter()
        .map(|v| {
            let mut dense = vec![vec![field.zero(); n]; md];
            for i in 0..n {
                for (m, row) in dense.iter_mut().enumerate() {
                    row[i] = v[var(i, m)].clone();
                }
            }
            Matrix::from_dense_with_cols(field, n, dense)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearMapSpace::new(field, n, md, basis))
}

/// `u(φ): L -> L*`, `u(φ)(x)(y) = φ(x, y)`; its matrix is `Φᵀ`.
pub fn seq_u(phi: &BilinearForm) -> Matrix {
    phi.matrix().transpose()
}

/// `v(d)(x, y) = d(x)(y) - d(y)(x)` for `d: L -> L*`.
pub fn seq_v(d: &Matrix) -> Result<BilinearForm> {
    if d.nrows() != d.ncols() {
        return Err(Error::DimensionMismatch {
            expected: d.ncols(),
            found: d.nrows(),
        });
    }
    // v(d)(e_i, e_j) = D[j][i] - D[i][j]
    BilinearForm::new(d.transpose().sub(d)?, Symmetry::Skew)
}

/// Members of `space` annihilated by `ad e_i` for every basis element.
pub fn space_invariants_under(l: &Algebra, space: &FormSpace) -> Result<FormSpace> {
    l.require_lie()?;
    if space.ambient_dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: space.ambient_dim(),
        });
    }
    let ads: Vec<Matrix> = (0..l.dim()).map(|i| l.left_mul_matrix(i)).collect();
    annihilated_by(space, &ads)
}

/// Members `φ` of `space` with `D•φ = 0` for every `D` in `maps`.
pub fn annihilated_by(space: &FormSpace, maps: &[Matrix]) -> Result<FormSpace> {
    let n = space.ambient_dim();
    let field = space.field();
    let s = space.dim();
    // unknowns λ_s; equations: Σ_s λ_s (ad e_i • φ_s)[a][b] = 0
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for ad in maps {
        let mut block: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for (t, phi) in space.basis().iter().enumerate() {
            let moved = crate::algebra::act_on_form(ad, phi)?;
            for (a, row) in moved.matrix().rows().iter().enumerate() {
                for (b, c) in row {
                    block[a * n + b].push((t, c.clone()));
                }
            }
        }
        rows.extend(block.into_iter().filter(|r| !r.is_empty()));
    }
    let sol = solve_homogeneous(field, s, rows)?;
    let basis = sol
        .iter()
        .map(|lam| {
            let m = lam
                .iter()
                .zip(space.basis())
                .fold(Matrix::zeros(field, n, n), |acc, (c, phi)| {
                    acc.add(&phi.matrix().scale(c)).expect("same shape")
                });
            BilinearForm::infer(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let (_, reduced) = linalg::echelon_basis(
        field,
        n * n,
        &basis
            .iter()
            .map(|f| f.matrix().flatten())
            .collect::<Vec<_>>(),
    )?;
    let basis = reduced
        .iter()
        .map(|v| BilinearForm::infer(Matrix::from_flat(field, n, n, v)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FormSpace::new(FormKind::Generic, field, n, basis))
}

/// Auxiliary dimensions for forms on current algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CurrAuxDims {
    /// Kernel of the multiplication `S^2(A) -> A`.
    pub dim_ker_s2mul: usize,
    /// Span of `ab∧c + ca∧b + bc∧a` in `∧^2 A`.
    pub dim_alia_wedge_span: usize,
}

pub fn curr_aux_dims(a: &Algebra) -> Result<CurrAuxDims> {
    a.require_assoc_comm()?;
    let n = a.dim();
    let field = a.field();
    // S^2(A) -> A: images of e_i e_j for i ≤ j
    let images: Vec<Vec<Scalar>> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| linalg::to_dense(field, a.product(i, j), n))
        .collect();
    let rank = linalg::rank_of(field, n, &images)?;
    // wedge of two sparse vectors in strict-upper coordinates
    let wedge = |u: &[(usize, Scalar)], k: usize, out: &mut Vec<(usize, Scalar)>| {
        for (m, c) in u {
            if let Some((idx, flip)) = skew_term(n, *m, k) {
                out.push((idx, if flip { -c } else { c.clone() }));
            }
        }
    };
    // the expression is symmetric in (a, b, c), so i ≤ j ≤ k suffices
    let mut ech = linalg::Echelon::new(field, skew_unknowns(n));
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let mut v = Vec::new();
                wedge(a.product(i, j), k, &mut v);
                wedge(a.product(k, i), j, &mut v);
                wedge(a.product(j, k), i, &mut v);
                ech.push(linalg::normalize_sparse(v))?;
            }
        }
    }
    Ok(CurrAuxDims {
        dim_ker_s2mul: sym_unknowns(n) - rank,
        dim_alia_wedge_span: ech.rank(),
    })
}

fn triple_value(phi: &BilinearForm, l: &Algebra, i: usize, j: usize, k: usize) -> Scalar {
    let e = |t: usize| vec![(t, l.field().one())];
    phi.eval_sparse(l.product(i, j), &e(k))
}

/// Exhaustive check of the commutative cocycle identity on all basis
/// triples.
pub fn is_commutative_cocycle(l: &Algebra, phi: &BilinearForm) -> Result<bool> {
    check_dims(l, phi)?;
    if !phi.is_symmetric() {
        return Ok(false);
    }
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = &(&triple_value(phi, l, i, j, k) + &triple_value(phi, l, k, i, j))
                    + &triple_value(phi, l, j, k, i);
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn is_cyclic_form(l: &Algebra, phi: &BilinearForm) -> Result<bool> {
    check_dims(l, phi)?;
    if !phi.is_skew() {
        return Ok(false);
    }
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if triple_value(phi, l, i, j, k) != triple_value(phi, l, k, i, j) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn is_invariant_form(l: &Algebra, phi: &BilinearForm) -> Result<bool> {
    check_dims(l, phi)?;
    if !phi.is_symmetric() {
        return Ok(false);
    }
    let n = l.dim();
    let e = |t: usize| vec![(t, l.field().one())];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = phi.eval_sparse(l.product(i, j), &e(k));
                let rhs = phi.eval_sparse(&e(i), l.product(j, k));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn is_hc1(a: &Algebra, alpha: &BilinearForm) -> Result<bool> {
    check_dims(a, alpha)?;
    if !alpha.is_skew() {
        return Ok(false);
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = &(&triple_value(alpha, a, i, j, k) + &triple_value(alpha, a, k, i, j))
                    + &triple_value(alpha, a, j, k, i);
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Exhaustive check that `d` (columns `d(e_i)`) is an antiderivation.
pub fn is_antiderivation(l: &Algebra, rep: &Representation, d: &Matrix) -> Result<bool> {
    let n = l.dim();
    if d.ncols() != n || d.nrows() != rep.module_dim() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.ncols(),
        });
    }
    let col = |i: usize| linalg::to_dense(l.field(), &d.column(i), rep.module_dim());
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply_sparse(l.product(i, j));
            let lhs = linalg::to_dense(l.field(), &lhs, rep.module_dim());
            let a = rep.action(j).mul_vec(&col(i))?;
            let b = rep.action(i).mul_vec(&col(j))?;
            for m in 0..rep.module_dim() {
                if lhs[m] != &a[m] - &b[m] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn check_dims(l: &Algebra, phi: &BilinearForm) -> Result<()> {
    if phi.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: phi.dim(),
        });
    }
    if phi.field() != l.field() {
        return Err(Error::FieldMismatch(l.field(), phi.field()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coadjoint_rep;
    use crate::constructors::{
        abelian, divided_power, heisenberg3, one_dim_unital, sl, two_dim_nonabelian,
    };

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn index_layouts() {
        let n = 4;
        let mut seen = Vec::new();
        for i in 0..n {
            for j in i..n {
                seen.push(sym_index(n, i, j));
            }
        }
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
        let mut seen = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                seen.push(skew_index(n, i, j));
            }
        }
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn sl2_spaces() {
        let l = sl(2, q()).unwrap();
        assert_eq!(z2_comm(&l).unwrap().dim(), 5);
        assert_eq!(cyclic_forms(&l).unwrap().dim(), 0);
        assert_eq!(invariant_forms(&l).unwrap().dim(), 1);
        assert_eq!(trivial_cocycles(&l).unwrap().dim(), 0);
    }

    #[test]
    fn abelian_spaces() {
        let a = abelian(4, q()).unwrap();
        assert_eq!(z2_comm(&a).unwrap().dim(), 10);
        assert_eq!(cyclic_forms(&a).unwrap().dim(), 6);
        assert_eq!(invariant_forms(&a).unwrap().dim(), 10);
        assert_eq!(trivial_cocycles(&a).unwrap().dim(), 10);
    }

    #[test]
    fn small_algebra_spaces() {
        let t = two_dim_nonabelian(q()).unwrap();
        assert_eq!(cyclic_forms(&t).unwrap().dim(), 0);
        assert_eq!(trivial_cocycles(&t).unwrap().dim(), 1);
        assert_eq!(
            trivial_cocycles(&heisenberg3(q()).unwrap()).unwrap().dim(),
            3
        );
    }

    #[test]
    fn sl3_has_no_cocycles() {
        assert_eq!(z2_comm(&sl(3, q()).unwrap()).unwrap().dim(), 0);
    }

    #[test]
    fn hc1_small_cases() {
        assert_eq!(hc1(&one_dim_unital(q()).unwrap()).unwrap().dim(), 0);
        let f = FieldSpec::prime(5).unwrap();
        let a = divided_power(f, 1).unwrap();
        let h = hc1(&a).unwrap();
        for alpha in h.basis() {
            assert!(is_hc1(&a, alpha).unwrap());
        }
        let aux = curr_aux_dims(&a).unwrap();
        assert_eq!(aux.dim_ker_s2mul, 10);
        assert_eq!(aux.dim_alia_wedge_span + h.dim(), 10);
        let k = curr_aux_dims(&one_dim_unital(q()).unwrap()).unwrap();
        assert_eq!((k.dim_ker_s2mul, k.dim_alia_wedge_span), (0, 0));
    }

    #[test]
    fn sl2_antiderivations_match_cocycles() {
        let l = sl(2, q()).unwrap();
        let rep = coadjoint_rep(&l).unwrap();
        let ader = antiderivations(&l, &rep).unwrap();
        assert_eq!(ader.dim(), 5);
        for d in ader.basis() {
            assert!(is_antiderivation(&l, &rep, d).unwrap());
        }
        for phi in z2_comm(&l).unwrap().basis() {
            assert!(ader.contains(&seq_u(phi)).unwrap());
        }
    }

    #[test]
    fn trivial_module_antiderivations_of_abelian() {
        let a = abelian(3, q()).unwrap();
        let rep = Representation::trivial(&a, 2).unwrap();
        assert_eq!(antiderivations(&a, &rep).unwrap().dim(), 6);
    }

    #[test]
    fn seq_maps_on_zero_and_symmetric() {
        let z = BilinearForm::zero(q(), 3, Symmetry::Symmetric);
        assert!(seq_u(&z).is_zero());
        assert!(seq_v(&Matrix::zeros(q(), 3, 3)).unwrap().is_zero());
        let s = Matrix::from_dense(
            q(),
            vec![vec![q().int(1), q().int(2)], vec![q().int(2), q().int(5)]],
        )
        .unwrap();
        assert!(seq_v(&s).unwrap().is_zero());
    }

    #[test]
    fn invariants_of_zero_space() {
        let l = sl(2, q()).unwrap();
        let zero = FormSpace::new(FormKind::Generic, q(), 3, vec![]);
        assert_eq!(space_invariants_under(&l, &zero).unwrap().dim(), 0);
        let z = z2_comm(&l).unwrap();
        assert_eq!(space_invariants_under(&l, &z).unwrap().dim(), 0);
    }

    #[test]
    fn bad_symmetry_tag_rejected() {
        let m = Matrix::from_dense(
            q(),
            vec![vec![q().zero(), q().one()], vec![q().zero(), q().zero()]],
        )
        .unwrap();
        assert!(BilinearForm::new(m.clone(), Symmetry::Symmetric).is_err());
        assert_eq!(BilinearForm::infer(m).unwrap().symmetry(), Symmetry::None);
    }
}
