//! Default fixture sets behind `cocycles verify`.

use std::collections::BTreeMap;

use cocycles_core::algebra::{center, Subspace};
use cocycles_core::constructors::{
    abelian, central_derivation_extension, current, derivation_extension, divided_power,
    full_matrix_algebra, heisenberg3, minus_algebra, one_dim_unital, sl, two_dim_nonabelian,
    zassenhaus_der, ExtensionSpec, RootType,
};
use cocycles_core::document::serialize_algebra;
use cocycles_core::forms::{annihilated_by, hc1, invariant_forms};
use cocycles_core::linalg::Matrix;
use cocycles_core::verify::{self, CheckReport};
use cocycles_core::{Algebra, FieldSpec, Result, Scalar};
use sha2::{Digest, Sha256};

pub const CHECKS: [&str; 12] = [
    "exact-seq",
    "invariance",
    "dichotomy",
    "cor-curr",
    "lemma6",
    "perfect",
    "lemma-ad",
    "semisimple",
    "yaya-yoyo",
    "codim1",
    "deg5",
    "char3-rank2",
];

/// Parameters shared by all checks. `p` is the characteristic of the
/// modular fixtures; rational fixtures stay over `Q`.
#[derive(Clone, Debug)]
pub struct Options {
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub root_type: Option<RootType>,
    pub seed: u64,
    pub trials: usize,
    pub allow_small_char: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            p: None,
            n: None,
            root_type: None,
            seed: 0,
            trials: 8,
            allow_small_char: false,
        }
    }
}

impl Options {
    fn modular_field(&self) -> Result<FieldSpec> {
        FieldSpec::prime_with_override(self.p.unwrap_or(5), self.allow_small_char)
    }
}

/// Reports plus the digests of every fixture they were computed on.
#[derive(Default)]
pub struct Outcome {
    pub reports: Vec<CheckReport>,
    pub digests: BTreeMap<String, String>,
}

impl Outcome {
    fn note(&mut self, label: &str, a: &Algebra) {
        let key = format!("{label}/{}", a.field());
        let digest = hex::encode(Sha256::digest(serialize_algebra(a).as_bytes()));
        self.digests.insert(key, digest);
    }

    fn push(&mut self, r: CheckReport) {
        self.reports.push(r);
    }

    pub fn extend(&mut self, other: Outcome) {
        self.reports.extend(other.reports);
        self.digests.extend(other.digests);
    }
}

pub fn run(check: &str, opts: &Options) -> Result<Outcome> {
    match check {
        "all" => {
            let mut out = Outcome::default();
            for c in CHECKS {
                out.extend(run(c, opts)?);
            }
            Ok(out)
        }
        "exact-seq" => exact_seq(opts),
        "invariance" => invariance(opts),
        "dichotomy" => dichotomy(opts),
        "cor-curr" => cor_curr(opts),
        "lemma6" => lemma6(opts),
        "perfect" => perfect(opts),
        "lemma-ad" => lemma_ad(opts),
        "semisimple" => semisimple(opts),
        "yaya-yoyo" => yaya_yoyo(opts),
        "codim1" => codim1(opts),
        "deg5" => deg5(opts),
        "char3-rank2" => char3_rank2(opts),
        other => Err(cocycles_core::Error::UnknownName(other.to_string())),
    }
}

/// sl(2), sl(3), h3, the 2-dim nonabelian algebra and abelian(3) over
/// `field`, plus `W_1(1)` when the field is prime.
pub fn standard_fixtures(field: FieldSpec) -> Result<Vec<(String, Algebra)>> {
    let mut v = vec![
        ("sl2".to_string(), sl(2, field)?),
        ("sl3".to_string(), sl(3, field)?),
        ("h3".to_string(), heisenberg3(field)?),
        ("two_dim_nonabelian".to_string(), two_dim_nonabelian(field)?),
        ("abelian3".to_string(), abelian(3, field)?),
    ];
    if !field.is_rational() {
        v.push(("w1(1)".to_string(), zassenhaus_der(field, 1)?.algebra));
    }
    Ok(v)
}

/// Rational fixtures plus `W_1(1)` over the modular field.
fn mixed_fixtures(opts: &Options) -> Result<Vec<(String, Algebra)>> {
    let mut v = standard_fixtures(FieldSpec::rationals())?;
    v.push((
        "w1(1)".to_string(),
        zassenhaus_der(opts.modular_field()?, 1)?.algebra,
    ));
    Ok(v)
}

fn exact_seq(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (name, l) in mixed_fixtures(opts)? {
        out.note(&name, &l);
        out.push(verify::check_exact_sequence(&name, &l)?);
    }
    Ok(out)
}

fn invariance(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (name, l) in mixed_fixtures(opts)? {
        out.note(&name, &l);
        out.push(verify::check_invariance(&name, &l, opts.trials, opts.seed)?);
    }
    Ok(out)
}

fn dichotomy(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let f3 = FieldSpec::prime_with_override(3, true)?;
    let mut fields = vec![FieldSpec::rationals(), opts.modular_field()?];
    if !fields.contains(&f3) {
        fields.push(f3);
    }
    for field in fields {
        for (name, l) in standard_fixtures(field)? {
            out.note(&name, &l);
            out.push(verify::check_dichotomy(&name, &l)?);
        }
    }
    Ok(out)
}

fn cor_curr(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let field = opts.modular_field()?;
    let ls = [
        ("sl2", sl(2, field)?),
        ("sl3", sl(3, field)?),
        ("h3", heisenberg3(field)?),
        ("two_dim_nonabelian", two_dim_nonabelian(field)?),
        ("abelian2", abelian(2, field)?),
    ];
    let mut as_: Vec<(String, Algebra)> = Vec::new();
    match opts.n {
        Some(n) => as_.push((format!("O1({n})"), divided_power(field, n)?)),
        None => {
            as_.push(("K".into(), one_dim_unital(field)?));
            as_.push(("O1(1)".into(), divided_power(field, 1)?));
            as_.push(("O1(2)".into(), divided_power(field, 2)?));
        }
    }
    for (an, a) in &as_ {
        out.note(an, a);
    }
    for (ln, l) in &ls {
        out.note(ln, l);
        for (an, a) in &as_ {
            out.push(verify::check_corollary_current(ln, l, an, a)?);
        }
    }
    if opts.p.is_none() && opts.n.is_none() {
        let f7 = FieldSpec::prime(7)?;
        let (l, a) = (sl(2, f7)?, divided_power(f7, 1)?);
        out.note("sl2", &l);
        out.note("O1(1)", &a);
        out.push(verify::check_corollary_current("sl2", &l, "O1(1)", &a)?);
    }
    Ok(out)
}

fn unit_vectors(
    field: FieldSpec,
    dim: usize,
    idx: impl IntoIterator<Item = usize>,
) -> Vec<Vec<Scalar>> {
    idx.into_iter()
        .map(|i| {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            v
        })
        .collect()
}

/// First member of `HC¹(A)` killed by every derivation in `derivs`, if any.
pub fn invariant_xi(a: &Algebra, derivs: &[Matrix]) -> Result<Option<Matrix>> {
    let space = annihilated_by(&hc1(a)?, derivs)?;
    Ok(space.basis().first().map(|f| f.matrix().clone()))
}

fn lemma6(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let field = opts.modular_field()?;
    let h = heisenberg3(field)?;
    let z = center(&h)?;
    out.note("h3", &h);
    out.push(verify::check_quotient_embedding("h3", &h, &z)?);

    let l = sl(2, field)?;
    let w = zassenhaus_der(field, 1)?;
    let a = &w.carrier;
    let m = a.dim();
    let la = current(&l, a)?;
    // L ⊗ (x^1, ..., x^(p-1)), the current over the augmentation ideal
    let aug = (0..l.dim()).flat_map(|i| (1..m).map(move |k| i * m + k));
    let ideal = Subspace::span(field, la.dim(), &unit_vectors(field, la.dim(), aug))?;
    out.note("sl2@O1(1)", &la);
    out.push(verify::check_quotient_embedding("sl2@O1(1)", &la, &ideal)?);

    let derivs = vec![w.partial.clone()];
    let de = derivation_extension(&l, a, &derivs)?;
    let core = Subspace::span(field, de.dim(), &unit_vectors(field, de.dim(), 0..la.dim()))?;
    out.note("sl2@O1(1)+d", &de);
    out.push(verify::check_quotient_embedding("sl2@O1(1)+d", &de, &core)?);

    if let Some(xi) = invariant_xi(a, &derivs)? {
        let form = invariant_forms(&l)?.basis()[0].matrix().clone();
        let spec = ExtensionSpec {
            form,
            xi,
            derivations: derivs,
        };
        let ext = central_derivation_extension(&l, a, &spec)?;
        let z = Subspace::span(
            field,
            ext.dim(),
            &unit_vectors(field, ext.dim(), [la.dim()]),
        )?;
        out.note("sl2@O1(1)+z+d", &ext);
        out.push(verify::check_quotient_embedding("sl2@O1(1)+z+d", &ext, &z)?);
    }
    Ok(out)
}

fn perfect(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let field = opts.modular_field()?;
    // gl(2) ⊃ sl(2) on the basis E(1,1), E(1,2), E(2,1), E(2,2)
    let gl = minus_algebra(&full_matrix_algebra(2, field)?)?;
    let mut h = vec![field.zero(); 4];
    h[0] = field.one();
    h[3] = -field.one();
    let mut sl_basis = unit_vectors(field, 4, [1, 2]);
    sl_basis.push(h);
    let ideal = Subspace::span(field, 4, &sl_basis)?;
    out.note("gl2", &gl);
    out.push(verify::check_perfect_ideal_bound("gl2", &gl, &ideal)?);

    let l = sl(2, field)?;
    let w = zassenhaus_der(field, 1)?;
    let de = derivation_extension(&l, &w.carrier, std::slice::from_ref(&w.partial))?;
    let core = Subspace::span(
        field,
        de.dim(),
        &unit_vectors(field, de.dim(), 0..de.dim() - 1),
    )?;
    out.note("sl2@O1(1)+d", &de);
    out.push(verify::check_perfect_ideal_bound(
        "sl2@O1(1)+d",
        &de,
        &core,
    )?);
    Ok(out)
}

fn lemma_ad(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let cases: Vec<(u64, u32)> = if opts.p.is_some() || opts.n.is_some() {
        vec![(opts.p.unwrap_or(5), opts.n.unwrap_or(1))]
    } else {
        vec![(5, 1), (7, 1), (5, 2)]
    };
    for (p, n) in cases {
        let field = FieldSpec::prime_with_override(p, opts.allow_small_char)?;
        out.note(&format!("w1({n})"), &zassenhaus_der(field, n)?.algebra);
        out.push(verify::check_lemma_ad(field, n)?);
    }
    Ok(out)
}

fn semisimple(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n = opts.n.unwrap_or(1);
    let cases: Vec<(&str, usize, u64)> = match opts.p {
        Some(p) => vec![("sl2", 2, p), ("sl3", 3, p)],
        None => vec![("sl2", 2, 5), ("sl2", 2, 7), ("sl3", 3, 5)],
    };
    for (name, rank, p) in cases {
        let field = FieldSpec::prime_with_override(p, opts.allow_small_char)?;
        let s = sl(rank, field)?;
        out.note(name, &s);
        out.push(verify::check_semisimple_theorem(name, &s, n)?);
    }
    Ok(out)
}

fn yaya_yoyo(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let field = opts.modular_field()?;
    let l = sl(2, field)?;
    let w = zassenhaus_der(field, 1)?;
    let a = &w.carrier;
    out.note("sl2", &l);
    out.note("O1(1)", a);
    let all = cocycles_core::algebra::derivations(a)?.basis().to_vec();
    for derivs in [vec![], vec![w.partial.clone()], all] {
        let xi = invariant_xi(a, &derivs)?;
        out.push(verify::check_yaya_yoyo(
            "sl2",
            &l,
            "O1(1)",
            a,
            &derivs,
            xi.as_ref(),
        )?);
    }
    Ok(out)
}

fn codim1(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let q = FieldSpec::rationals();
    let s2 = sl(2, q)?;
    let borel = Subspace::span(q, 3, &unit_vectors(q, 3, [0, 1]))?;
    out.note("sl2", &s2);
    out.push(verify::check_codim1_lemma("sl2", &s2, &borel)?);

    let t = two_dim_nonabelian(q)?;
    let sx = Subspace::span(q, 2, &unit_vectors(q, 2, [0]))?;
    out.note("two_dim_nonabelian", &t);
    out.push(verify::check_codim1_lemma("two_dim_nonabelian", &t, &sx)?);

    let field = opts.modular_field()?;
    let w = zassenhaus_der(field, 1)?.algebra;
    let d = w.dim();
    // W_1(1)_(0): x^1 d, ..., x^(p-1) d
    let s = Subspace::span(field, d, &unit_vectors(field, d, 1..d))?;
    out.note("w1(1)", &w);
    out.push(verify::check_codim1_lemma("w1(1)", &w, &s)?);
    Ok(out)
}

fn deg5(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let q = FieldSpec::rationals();
    let cases = [
        ("sl2", sl(2, q)?, true),
        ("sl3", sl(3, q)?, true),
        (
            "w1(1)",
            zassenhaus_der(opts.modular_field()?, 1)?.algebra,
            true,
        ),
        ("h3", heisenberg3(q)?, false),
        ("two_dim_nonabelian", two_dim_nonabelian(q)?, false),
    ];
    for (name, l, simple) in cases {
        out.note(name, &l);
        out.push(verify::check_theorem_deg5_necessity(name, &l, simple)?);
    }
    Ok(out)
}

fn char3_rank2(opts: &Options) -> Result<Outcome> {
    let mut out = Outcome::default();
    let types = match opts.root_type {
        Some(t) => vec![t],
        None => vec![RootType::A2, RootType::B2, RootType::G2],
    };
    for t in types {
        out.push(verify::check_char3_rank2(t)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_has_a_runner() {
        let opts = Options::default();
        for c in ["lemma-ad", "codim1", "perfect"] {
            let out = run(c, &opts).unwrap();
            assert!(!out.reports.is_empty());
            assert!(out.reports.iter().all(|r| r.passed()), "{c}");
        }
        assert!(run("nope", &opts).is_err());
    }

    #[test]
    fn lemma_ad_single_case() {
        let opts = Options {
            p: Some(5),
            n: Some(2),
            ..Options::default()
        };
        let out = run("lemma-ad", &opts).unwrap();
        assert_eq!(out.reports.len(), 1);
        assert_eq!(out.reports[0].measured["dim_z2comm"], 25);
    }
}
