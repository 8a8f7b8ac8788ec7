//! Builders for the algebras used throughout: matrix algebras, divided
//! powers, Zassenhaus algebras, Chevalley algebras of rank 2, current
//! algebras and their extensions, plus a few small fixtures.

mod chevalley;

pub use chevalley::{chevalley_rank2, RootSystem, RootType};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::algebra::{derivations, Algebra, Flags};
use crate::error::{Error, Result};
use crate::forms::{is_hc1, is_invariant_form, BilinearForm};
use crate::linalg::{self, normalize_sparse, Brackets, Matrix, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

fn sparse_unit(field: FieldSpec, k: usize) -> SparseVec {
    vec![(k, field.one())]
}

/// `sl(n)` on the basis `e(i,j)` (`i < j`), then `h1..h(n-1)` with
/// `h_t = E_tt - E_(t+1)(t+1)`, then `e(i,j)` (`i > j`). Labels are 1-based.
pub fn sl(n: usize, field: FieldSpec) -> Result<Algebra> {
    if n < 2 {
        return Err(Error::PreconditionFailed("sl(n) needs n >= 2".into()));
    }
    // each basis element as a list of (row, col, coefficient) entries
    let mut mats: Vec<Vec<(usize, usize, i64)>> = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            mats.push(vec![(i, j, 1)]);
            names.push(format!("e({},{})", i + 1, j + 1));
        }
    }
    let h0 = mats.len();
    for t in 0..n - 1 {
        mats.push(vec![(t, t, 1), (t + 1, t + 1, -1)]);
        names.push(format!("h{}", t + 1));
    }
    for i in 0..n {
        for j in 0..i {
            mats.push(vec![(i, j, 1)]);
            names.push(format!("e({},{})", i + 1, j + 1));
        }
    }
    let index_of = |r: usize, c: usize| -> usize {
        mats.iter()
            .position(|m| m.len() == 1 && m[0].0 == r && m[0].1 == c)
            .expect("off-diagonal basis element")
    };
    let mul = |a: &[(usize, usize, i64)], b: &[(usize, usize, i64)]| {
        let mut out = Vec::new();
        for &(r1, c1, x) in a {
            for &(r2, c2, y) in b {
                if c1 == r2 {
                    out.push((r1, c2, x * y));
                }
            }
        }
        out
    };
    let mut brackets = Vec::new();
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            let mut dense = vec![vec![0i64; n]; n];
            for (r, c, v) in mul(&mats[a], &mats[b]) {
                dense[r][c] += v;
            }
            for (r, c, v) in mul(&mats[b], &mats[a]) {
                dense[r][c] -= v;
            }
            let mut terms = Vec::new();
            for (r, row) in dense.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    if r != c && v != 0 {
                        terms.push((index_of(r, c), field.int(v)));
                    }
                }
            }
            // diagonal part: coefficient of h_t is the partial sum d_1 + ... + d_t
            let mut partial = 0i64;
            for (t, row) in dense.iter().enumerate().take(n - 1) {
                partial += row[t];
                if partial != 0 {
                    terms.push((h0 + t, field.int(partial)));
                }
            }
            brackets.push((a, b, terms));
        }
    }
    Algebra::lie(field, names, brackets)
}

/// The associative algebra of `n x n` matrices on the basis `E(i,j)`.
pub fn full_matrix_algebra(n: usize, field: FieldSpec) -> Result<Algebra> {
    let dim = n * n;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // E_ij E_jk = E_ik
                table[(i * n + j) * dim + (j * n + k)] = sparse_unit(field, i * n + k);
            }
        }
    }
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E({},{})", i + 1, j + 1)))
        .collect();
    Algebra::from_table(field, names, table, Flags::default())
}

/// `A^(-)`: the commutator algebra of an associative algebra.
pub fn minus_algebra(a: &Algebra) -> Result<Algebra> {
    if !a.validate().associative {
        return Err(Error::NotAssociative);
    }
    let n = a.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v: Vec<(usize, Scalar)> = a.product(i, j).to_vec();
            v.extend(a.product(j, i).iter().map(|(k, c)| (*k, -c)));
            brackets.push((i, j, normalize_sparse(v)));
        }
    }
    Algebra::lie(a.field(), a.names().to_vec(), brackets)
}

fn require_prime(field: FieldSpec) -> Result<u64> {
    if field.is_rational() {
        return Err(Error::InvalidCharacteristic(
            "a prime field is required, got Q".into(),
        ));
    }
    Ok(field.characteristic())
}

fn pow_dim(p: u64, n: u32) -> Result<usize> {
    p.checked_pow(n)
        .and_then(|d| usize::try_from(d).ok())
        .filter(|d| *d <= 1 << 16)
        .ok_or_else(|| Error::PreconditionFailed(format!("p^n = {p}^{n} is too large")))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// Divided powers `O_1(n)` over `F_p`: basis `x^0..x^(p^n - 1)`,
/// `x^i x^j = binom(i+j, j) x^(i+j)`, zero once the exponent reaches `p^n`.
pub fn divided_power(field: FieldSpec, n: u32) -> Result<Algebra> {
    let p = require_prime(field)?;
    if n == 0 {
        return Err(Error::PreconditionFailed("O_1(n) needs n >= 1".into()));
    }
    let dim = pow_dim(p, n)?;
    let mut products = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            if i + j >= dim {
                continue;
            }
            let c = binomial((i + j) as u64, j as u64) % BigUint::from(p);
            let c = c.to_u64().expect("reduced below p");
            if c != 0 {
                products.push((i, j, vec![(i + j, field.int(c as i64))]));
            }
        }
    }
    let names = (0..dim).map(|i| format!("x^{i}")).collect();
    Algebra::commutative(field, names, products, Some(0))
}

/// `O_n = K[x_1..x_n]/(x_i^p)` on monomials ordered lexicographically by
/// exponent vector. For `n = 1` the labels are `x^i`, otherwise
/// `x^(a1,...,an)`.
pub fn reduced_polynomial(field: FieldSpec, n: u32) -> Result<Algebra> {
    let p = require_prime(field)? as usize;
    if n == 0 {
        return Err(Error::PreconditionFailed("O_n needs n >= 1".into()));
    }
    let dim = pow_dim(p as u64, n)?;
    let n = n as usize;
    let exps = |mut idx: usize| -> Vec<usize> {
        let mut e = vec![0; n];
        for slot in e.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        e
    };
    let index = |e: &[usize]| e.iter().fold(0, |acc, a| acc * p + a);
    let mut products = Vec::new();
    for i in 0..dim {
        let ei = exps(i);
        for j in i..dim {
            let ej = exps(j);
            let sum: Vec<usize> = ei.iter().zip(&ej).map(|(a, b)| a + b).collect();
            if sum.iter().all(|s| *s < p) {
                products.push((i, j, sparse_unit(field, index(&sum))));
            }
        }
    }
    let names = (0..dim)
        .map(|i| {
            if n == 1 {
                format!("x^{i}")
            } else {
                let e: Vec<String> = exps(i).iter().map(|a| a.to_string()).collect();
                format!("x^({})", e.join(","))
            }
        })
        .collect();
    Algebra::commutative(field, names, products, Some(0))
}

/// `W_1(n) = O_1(n)∂` together with its carrier and `∂`.
#[derive(Clone, Debug)]
pub struct Zassenhaus {
    pub algebra: Algebra,
    pub carrier: Algebra,
    /// `∂` on the carrier: `∂x^i = x^(i-1)`.
    pub partial: Matrix,
}

/// `W_1(n)` on the basis `x^i d` with `[a∂, b∂] = (a∂(b) - b∂(a))∂`.
pub fn zassenhaus_der(field: FieldSpec, n: u32) -> Result<Zassenhaus> {
    let carrier = divided_power(field, n)?;
    let dim = carrier.dim();
    let mut rows = vec![Vec::new(); dim];
    for i in 1..dim {
        rows[i - 1].push((i, field.one()));
    }
    let partial = Matrix::from_sparse_rows(field, dim, rows)?;
    let mut brackets = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let mut v: Vec<(usize, Scalar)> = Vec::new();
            if b > 0 {
                v.extend(carrier.product(a, b - 1).iter().cloned());
            }
            if a > 0 {
                v.extend(carrier.product(b, a - 1).iter().map(|(k, c)| (*k, -c)));
            }
            brackets.push((a, b, normalize_sparse(v)));
        }
    }
    let names = (0..dim).map(|i| format!("x^{i} d")).collect();
    let algebra = Algebra::lie(field, names, brackets)?;
    Ok(Zassenhaus {
        algebra,
        carrier,
        partial,
    })
}

/// `W_1(1)` as `[e_a, e_b] = (b - a) e_(a+b)` with indices in `F_p`.
pub fn zassenhaus_group(field: FieldSpec) -> Result<Algebra> {
    let p = require_prime(field)? as usize;
    let mut brackets = Vec::new();
    for a in 0..p {
        for b in a + 1..p {
            brackets.push((a, b, vec![((a + b) % p, field.int((b - a) as i64))]));
        }
    }
    let names = (0..p).map(|a| format!("e{a}")).collect();
    Algebra::lie(field, names, brackets)
}

/// `L ⊗ A` with `[x⊗a, y⊗b] = [x,y]⊗ab`, basis `x_i⊗a_m` at index
/// `i * dim A + m`, labelled `x@a`.
pub fn current(l: &Algebra, a: &Algebra) -> Result<Algebra> {
    l.require_lie()?;
    a.require_assoc_comm()?;
    if l.field() != a.field() {
        return Err(Error::FieldMismatch(l.field(), a.field()));
    }
    let (n, m) = (l.dim(), a.dim());
    let mut names = Vec::with_capacity(n * m);
    for x in l.names() {
        for y in a.names() {
            names.push(format!("{x}@{y}"));
        }
    }
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i..n {
            let lij = l.product(i, j);
            if lij.is_empty() {
                continue;
            }
            for s in 0..m {
                for t in 0..m {
                    let (u, v) = (i * m + s, j * m + t);
                    if u >= v {
                        continue;
                    }
                    let mut terms = Vec::new();
                    for (k, c) in lij {
                        for (r, d) in a.product(s, t) {
                            terms.push((k * m + r, c * d));
                        }
                    }
                    brackets.push((u, v, normalize_sparse(terms)));
                }
            }
        }
    }
    Algebra::lie(l.field(), names, brackets)
}

fn check_derivations_closed(a: &Algebra, derivs: &[Matrix]) -> Result<Vec<Vec<Scalar>>> {
    let der = derivations(a)?;
    for (s, d) in derivs.iter().enumerate() {
        if d.nrows() != a.dim() || d.ncols() != a.dim() || d.field() != a.field() {
            return Err(Error::SpecViolation(format!(
                "derivation {s} has the wrong shape or field"
            )));
        }
        if !der.contains(d)? {
            return Err(Error::SpecViolation(format!(
                "map {s} is not a derivation of A"
            )));
        }
    }
    let flat: Vec<Vec<Scalar>> = derivs.iter().map(|d| d.flatten()).collect();
    if linalg::rank_of(a.field(), a.dim() * a.dim(), &flat)? != derivs.len() {
        return Err(Error::SpecViolation(
            "derivations are linearly dependent".into(),
        ));
    }
    let mut brackets = Vec::new();
    for s in 0..derivs.len() {
        for t in s + 1..derivs.len() {
            let comm = derivs[s]
                .mul(&derivs[t])?
                .sub(&derivs[t].mul(&derivs[s])?)?;
            let coords =
                linalg::coordinates(a.field(), &flat, &comm.flatten())?.ok_or_else(|| {
                    Error::SpecViolation("derivations are not closed under commutator".into())
                })?;
            brackets.push(coords);
        }
    }
    Ok(brackets)
}

/// Brackets of `L ⊗ A` extended by `D`, with `D` placed after the first
/// `offset` basis vectors. `[d, x⊗a] = x⊗d(a)`, `[d, d'] = dd' - d'd`.
fn push_derivation_brackets(
    l: &Algebra,
    a: &Algebra,
    derivs: &[Matrix],
    d_brackets: &[Vec<Scalar>],
    offset: usize,
    brackets: &mut Brackets,
) {
    let m = a.dim();
    for i in 0..l.dim() {
        for s in 0..m {
            for (di, d) in derivs.iter().enumerate() {
                // [x⊗a, d] = -x⊗d(a)
                let terms = d
                    .column(s)
                    .into_iter()
                    .map(|(r, c)| (i * m + r, -c))
                    .collect();
                brackets.push((i * m + s, offset + di, terms));
            }
        }
    }
    let mut it = d_brackets.iter();
    for s in 0..derivs.len() {
        for t in s + 1..derivs.len() {
            let coords = it.next().expect("one entry per pair");
            let terms = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(u, c)| (offset + u, c.clone()))
                .collect();
            brackets.push((offset + s, offset + t, terms));
        }
    }
}

fn derivation_names(k: usize) -> Vec<String> {
    (0..k).map(|s| format!("D{s}")).collect()
}

/// `(L ⊗ A) ⊕ D` for a family `D` of derivations of `A` closed under the
/// commutator, with `[d, x⊗a] = x⊗d(a)`.
pub fn derivation_extension(l: &Algebra, a: &Algebra, derivs: &[Matrix]) -> Result<Algebra> {
    let la = current(l, a)?;
    let d_brackets = check_derivations_closed(a, derivs)?;
    let mut brackets = current_brackets(&la);
    push_derivation_brackets(l, a, derivs, &d_brackets, la.dim(), &mut brackets);
    let mut names = la.names().to_vec();
    names.extend(derivation_names(derivs.len()));
    Algebra::lie(la.field(), names, brackets).map_err(jacobi_error)
}

fn current_brackets(la: &Algebra) -> Brackets {
    let n = la.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = la.product(i, j);
            if !v.is_empty() {
                out.push((i, j, v.to_vec()));
            }
        }
    }
    out
}

fn jacobi_error(e: Error) -> Error {
    match e {
        Error::Validation { witness, .. } => Error::JacobiFailure(witness),
        other => other,
    }
}

/// Data for `(L ⊗ A) ⊕ Kz ⊕ D`.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    /// Symmetric invariant form on `L`.
    pub form: Matrix,
    /// Skew form on `A` in `HC^1(A)`, invariant under `D`.
    pub xi: Matrix,
    /// Derivations of `A`, closed under the commutator.
    pub derivations: Vec<Matrix>,
}

/// `(L ⊗ A) ⊕ Kz ⊕ D` with
/// `[x⊗a, y⊗b] = [x,y]⊗ab + <x,y> ξ(a,b) z`, `z` central and
/// `[d, x⊗a] = x⊗d(a)`. The basis is `L ⊗ A`, then `z`, then `D`.
///
/// Besides invariance of the form, `ξ ∈ HC^1(A)` and each `d` being a
/// derivation, the Jacobi identity on `(d, x⊗a, y⊗b)` needs
/// `ξ(d(a), b) + ξ(a, d(b)) = 0` whenever `<·,·>` and `L` are nonzero, so that
/// is checked too.
pub fn central_derivation_extension(
    l: &Algebra,
    a: &Algebra,
    spec: &ExtensionSpec,
) -> Result<Algebra> {
    l.require_lie()?;
    a.require_assoc_comm()?;
    let form = BilinearForm::infer(spec.form.clone())
        .map_err(|_| Error::SpecViolation("invariant form has the wrong shape".into()))?;
    if form.matrix().nrows() != l.dim() || !form.is_symmetric() {
        return Err(Error::SpecViolation("form on L is not symmetric".into()));
    }
    if !is_invariant_form(l, &form)? {
        return Err(Error::SpecViolation("form on L is not invariant".into()));
    }
    let xi = BilinearForm::infer(spec.xi.clone())
        .map_err(|_| Error::SpecViolation("xi has the wrong shape".into()))?;
    if xi.matrix().nrows() != a.dim() || !xi.is_skew() {
        return Err(Error::SpecViolation("xi is not a skew form on A".into()));
    }
    if !is_hc1(a, &xi)? {
        return Err(Error::SpecViolation("xi is not in HC^1(A)".into()));
    }
    let derivs = &spec.derivations;
    let d_brackets = check_derivations_closed(a, derivs)?;
    for (s, d) in derivs.iter().enumerate() {
        let moved = d.transpose().mul(xi.matrix())?.add(&xi.matrix().mul(d)?)?;
        if !moved.is_zero() && !form.matrix().is_zero() {
            return Err(Error::SpecViolation(format!(
                "xi is not invariant under derivation {s}"
            )));
        }
    }
    let la = current(l, a)?;
    let m = a.dim();
    let z = la.dim();
    let field = l.field();
    let mut brackets = Vec::new();
    for u in 0..la.dim() {
        for v in u + 1..la.dim() {
            let mut terms = la.product(u, v).to_vec();
            let (i, s) = (u / m, u % m);
            let (j, t) = (v / m, v % m);
            let c = &form.matrix().get(i, j) * &xi.matrix().get(s, t);
            if !c.is_zero() {
                terms.push((z, c));
            }
            if !terms.is_empty() {
                brackets.push((u, v, terms));
            }
        }
    }
    push_derivation_brackets(l, a, derivs, &d_brackets, z + 1, &mut brackets);
    let mut names = la.names().to_vec();
    names.push("z".into());
    names.extend(derivation_names(derivs.len()));
    Algebra::lie(field, names, brackets).map_err(jacobi_error)
}

/// Two-dimensional nonabelian: `[x, y] = y`.
pub fn two_dim_nonabelian(field: FieldSpec) -> Result<Algebra> {
    Algebra::lie(
        field,
        vec!["x".into(), "y".into()],
        [(0, 1, sparse_unit(field, 1))],
    )
}

/// Heisenberg algebra: `[x, y] = z`.
pub fn heisenberg3(field: FieldSpec) -> Result<Algebra> {
    Algebra::lie(
        field,
        vec!["x".into(), "y".into(), "z".into()],
        [(0, 1, sparse_unit(field, 2))],
    )
}

pub fn abelian(n: usize, field: FieldSpec) -> Result<Algebra> {
    Algebra::lie(field, (1..=n).map(|i| format!("a{i}")).collect(), [])
}

/// The ground field as a one-dimensional unital algebra.
pub fn one_dim_unital(field: FieldSpec) -> Result<Algebra> {
    Algebra::commutative(
        field,
        vec!["1".into()],
        [(0, 0, sparse_unit(field, 0))],
        Some(0),
    )
}

/// Fixtures by name: `two_dim_nonabelian`, `heisenberg3`, `abelian<n>`,
/// `one_dim_unital`.
pub fn small_zoo(name: &str, field: FieldSpec) -> Result<Algebra> {
    match name {
        "two_dim_nonabelian" => two_dim_nonabelian(field),
        "heisenberg3" | "h3" => heisenberg3(field),
        "one_dim_unital" | "K" => one_dim_unital(field),
        _ => match name.strip_prefix("abelian").map(str::parse::<usize>) {
            Some(Ok(n)) => abelian(n, field),
            _ => Err(Error::UnknownName(name.to_string())),
        },
    }
}
