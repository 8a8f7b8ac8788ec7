//! Command-line surface: build algebras, validate documents, solve for
//! form spaces and run the structural checks.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use cocycles_core::algebra::{coadjoint_rep, derivations};
use cocycles_core::constructors::{
    self, central_derivation_extension, chevalley_rank2, current, derivation_extension,
    divided_power, full_matrix_algebra, minus_algebra, reduced_polynomial, sl, zassenhaus_der,
    zassenhaus_group, ExtensionSpec, RootType,
};
use cocycles_core::document::{canonical_json, parse_algebra, serialize_algebra, ReportDocument};
use cocycles_core::forms::{
    antiderivations, cyclic_forms, hc1, invariant_forms, trivial_cocycles, z2_comm,
};
use cocycles_core::linalg::{self, Matrix};
use cocycles_core::verify::Verdict;
use cocycles_core::{Algebra, Error, FieldSpec, Scalar};

pub mod suite;

/// Environment variable overriding the per-elimination entry cap.
pub const CAP_ENV: &str = "COCYCLES_MAX_ENTRIES";

const AFTER_HELP: &str = "Exit codes: 0 success or pass, 1 failed check or invalid input, \
2 usage error, 3 resource cap exceeded.\n\
Environment: COCYCLES_MAX_ENTRIES overrides the cap on nonzero matrix entries per \
elimination (default 2000000).";

#[derive(Parser, Debug)]
#[command(name = "cocycles", version, about = "Exact commutative 2-cocycle computations", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named algebra and write its document.
    Construct {
        /// sl, matrix, gl, divided-power, reduced-polynomial, w1, w1-group,
        /// chevalley, two_dim_nonabelian, heisenberg3, one_dim_unital, abelian
        name: String,
        #[arg(long)]
        n: Option<u32>,
        /// Shorthand for --field Fp:<p>.
        #[arg(long)]
        p: Option<u64>,
        /// Root system for chevalley: A2, B2 or G2.
        #[arg(long = "type")]
        root_type: Option<String>,
        /// Q or Fp:<p>.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        allow_small_char: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parse and validate an algebra document.
    Check {
        file: PathBuf,
        #[arg(long)]
        allow_small_char: bool,
    },
    /// Solve for a space of forms or maps on the algebra in a document.
    Space {
        kind: SpaceKind,
        file: PathBuf,
        /// Read the structure constants in another field (Q or Fp:<p>).
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        allow_small_char: bool,
        /// Also print a basis.
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build the current algebra L ⊗ A, optionally extended.
    Tensor {
        l_file: PathBuf,
        a_file: PathBuf,
        /// `all` for every derivation of A, or a JSON file
        /// `{"derivations": [matrix, ...]}`; column j of a matrix is d(e_j).
        #[arg(long)]
        extend_d: Option<String>,
        /// Add a central element z using the given member of the
        /// derivation-invariant part of HC1(A) and the first invariant form of L.
        #[arg(long)]
        central: Option<usize>,
        #[arg(long)]
        allow_small_char: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run structural checks on the built-in fixtures.
    Verify {
        /// all, exact-seq, invariance, dichotomy, cor-curr, lemma6, perfect,
        /// lemma-ad, semisimple, yaya-yoyo, codim1, deg5, char3-rank2
        check: String,
        /// Characteristic of the modular fixtures (default 5).
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long = "type")]
        root_type: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long)]
        allow_small_char: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SpaceKind {
    Z2comm,
    Cyclic,
    Invariant,
    Trivial,
    Hc1,
    AderCoadjoint,
    Derivations,
}

impl SpaceKind {
    fn label(self) -> &'static str {
        match self {
            SpaceKind::Z2comm => "z2comm",
            SpaceKind::Cyclic => "cyclic",
            SpaceKind::Invariant => "invariant",
            SpaceKind::Trivial => "trivial",
            SpaceKind::Hc1 => "hc1",
            SpaceKind::AderCoadjoint => "ader-coadjoint",
            SpaceKind::Derivations => "derivations",
        }
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invalid(_) => 1,
            Failure::Core(Error::ResourceCap { .. }) => 3,
            Failure::Core(Error::InvalidCharacteristic(_) | Error::UnknownName(_)) => 2,
            Failure::Core(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) => m.clone(),
            Failure::Core(e @ Error::InvalidCharacteristic(_)) => format!(
                "{e}\n  characteristic 3 needs --allow-small-char; characteristic 2 is never supported"
            ),
            Failure::Core(e @ Error::ResourceCap { .. }) => {
                format!("{e}\n  raise the cap with {CAP_ENV}=<entries>")
            }
            Failure::Core(e) => e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Run the command line `args` (including the program name). Returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    if let Err(f) = apply_cap_override() {
        let _ = writeln!(err, "error: {}", f.message());
        return f.code();
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn apply_cap_override() -> std::result::Result<(), Failure> {
    if let Ok(v) = std::env::var(CAP_ENV) {
        let cap = v.trim().parse::<usize>().map_err(|_| {
            Failure::Usage(format!("{CAP_ENV} must be a positive integer, got {v:?}"))
        })?;
        linalg::set_entry_cap(cap);
    }
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Construct {
            name,
            n,
            p,
            root_type,
            field,
            allow_small_char,
            output,
        } => {
            let field = resolve_field(field.as_deref(), p, allow_small_char)?;
            let a = construct(&name, n, root_type.as_deref(), field)?;
            emit(&serialize_algebra(&a), output.as_deref(), out)?;
            Ok(0)
        }
        Command::Check {
            file,
            allow_small_char,
        } => check(&file, allow_small_char, out),
        Command::Space {
            kind,
            file,
            field,
            allow_small_char,
            basis,
            json,
        } => space(
            kind,
            &file,
            field.as_deref(),
            allow_small_char,
            basis,
            json,
            out,
        ),
        Command::Tensor {
            l_file,
            a_file,
            extend_d,
            central,
            allow_small_char,
            output,
        } => {
            let l = load(&l_file, allow_small_char)?.1;
            let a = load(&a_file, allow_small_char)?.1;
            let t = tensor(&l, &a, extend_d.as_deref(), central)?;
            emit(&serialize_algebra(&t), output.as_deref(), out)?;
            Ok(0)
        }
        Command::Verify {
            check,
            p,
            n,
            root_type,
            seed,
            trials,
            allow_small_char,
            json,
        } => {
            let opts = suite::Options {
                p,
                n,
                root_type: root_type.as_deref().map(parse_root_type).transpose()?,
                seed,
                trials,
                allow_small_char,
            };
            verify(&check, &opts, json, out)
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Invalid(format!("cannot write output: {e}")))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => write_out(out, text),
    }
}

/// Parse `Q` or `Fp:<p>`; `--p` is shorthand for the latter.
fn resolve_field(
    spec: Option<&str>,
    p: Option<u64>,
    allow_small_char: bool,
) -> std::result::Result<FieldSpec, Failure> {
    let from_spec = spec.map(|s| parse_field(s, allow_small_char)).transpose()?;
    let from_p = p
        .map(|p| FieldSpec::prime_with_override(p, allow_small_char))
        .transpose()?;
    match (from_spec, from_p) {
        (Some(a), Some(b)) if a != b => Err(Failure::Usage(format!(
            "--field {a} conflicts with --p {}",
            b.characteristic()
        ))),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(FieldSpec::rationals()),
    }
}

fn parse_field(s: &str, allow_small_char: bool) -> std::result::Result<FieldSpec, Failure> {
    if s == "Q" {
        return Ok(FieldSpec::rationals());
    }
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Failure::Usage(format!("field must be Q or Fp:<p>, got {s:?}")))?;
    Ok(FieldSpec::prime_with_override(p, allow_small_char)?)
}

fn parse_root_type(s: &str) -> std::result::Result<RootType, Failure> {
    s.parse::<RootType>()
        .map_err(|_| Failure::Usage(format!("root type must be A2, B2 or G2, got {s:?}")))
}

fn construct(
    name: &str,
    n: Option<u32>,
    root_type: Option<&str>,
    field: FieldSpec,
) -> std::result::Result<Algebra, Failure> {
    let size = |default: u32| n.unwrap_or(default) as usize;
    let a = match name {
        "sl" => sl(size(2), field)?,
        "matrix" => full_matrix_algebra(size(2), field)?,
        "gl" => minus_algebra(&full_matrix_algebra(size(2), field)?)?,
        "divided-power" => divided_power(field, n.unwrap_or(1))?,
        "reduced-polynomial" => reduced_polynomial(field, n.unwrap_or(1))?,
        "w1" => zassenhaus_der(field, n.unwrap_or(1))?.algebra,
        "w1-group" => zassenhaus_group(field)?,
        "chevalley" => {
            let t = root_type
                .ok_or_else(|| Failure::Usage("chevalley needs --type A2|B2|G2".into()))?;
            chevalley_rank2(parse_root_type(t)?, field)?
        }
        "abelian" => constructors::abelian(size(1), field)?,
        other => constructors::small_zoo(other, field)?,
    };
    Ok(a)
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Read and validate a document; returns its digest and the algebra. A
/// malformed document is a usage error outside `check`.
fn load(path: &Path, allow_small_char: bool) -> std::result::Result<(String, Algebra), Failure> {
    let text = read(path)?;
    let a = parse_algebra(&text, allow_small_char).map_err(|e| match e {
        Error::Parse { .. } | Error::Validation { .. } => {
            Failure::Usage(format!("{}: {e}", path.display()))
        }
        other => Failure::Core(other),
    })?;
    Ok((digest(&text), a))
}

fn check(path: &Path, allow_small_char: bool, out: &mut dyn Write) -> CmdResult {
    let text = read(path)?;
    match parse_algebra(&text, allow_small_char) {
        Ok(a) => {
            let f = a.flags();
            let mut kinds = Vec::new();
            if f.lie {
                kinds.push("lie".to_string());
            }
            if f.assoc_comm {
                kinds.push("associative commutative".to_string());
            }
            if let Some(u) = f.unit {
                kinds.push(format!("unit {}", a.names()[u]));
            }
            if kinds.is_empty() {
                kinds.push("general".to_string());
            }
            write_out(
                out,
                &format!(
                    "ok: dim {} over {}, {}\n",
                    a.dim(),
                    a.field(),
                    kinds.join(", ")
                ),
            )?;
            Ok(0)
        }
        Err(e @ Error::InvalidCharacteristic(_)) => Err(Failure::Core(e)),
        Err(e) => Err(Failure::Invalid(format!("{}: {e}", path.display()))),
    }
}

#[derive(Serialize)]
struct SpaceDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<Vec<Vec<String>>>>,
    dim: usize,
    field: String,
    input_digests: BTreeMap<String, String>,
    kind: &'static str,
    provenance: &'static str,
    tool_version: &'static str,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(Scalar::to_string).collect())
        .collect()
}

fn space(
    kind: SpaceKind,
    path: &Path,
    field: Option<&str>,
    allow_small_char: bool,
    with_basis: bool,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let (dig, a) = load(path, allow_small_char)?;
    let a = match field {
        Some(f) => a.reduce_to(parse_field(f, allow_small_char)?)?,
        None => a,
    };
    let basis: Vec<Matrix> = match kind {
        SpaceKind::Z2comm => forms(z2_comm(&a)?),
        SpaceKind::Cyclic => forms(cyclic_forms(&a)?),
        SpaceKind::Invariant => forms(invariant_forms(&a)?),
        SpaceKind::Trivial => forms(trivial_cocycles(&a)?),
        SpaceKind::Hc1 => forms(hc1(&a)?),
        SpaceKind::AderCoadjoint => antiderivations(&a, &coadjoint_rep(&a)?)?.basis().to_vec(),
        SpaceKind::Derivations => derivations(&a)?.basis().to_vec(),
    };
    if json {
        let doc = SpaceDocument {
            basis: with_basis.then(|| basis.iter().map(matrix_strings).collect()),
            dim: basis.len(),
            field: a.field().to_string(),
            input_digests: BTreeMap::from([(path.display().to_string(), dig)]),
            kind: kind.label(),
            provenance: "direct solve",
            tool_version: env!("CARGO_PKG_VERSION"),
        };
        write_out(out, &canonical_json(&doc))?;
    } else {
        let mut text = format!("dim {}\n", basis.len());
        if with_basis {
            for (t, m) in basis.iter().enumerate() {
                text.push_str(&format!("basis {t}:\n"));
                for row in matrix_strings(m) {
                    text.push_str(&format!("  {}\n", row.join(" ")));
                }
            }
        }
        write_out(out, &text)?;
    }
    Ok(0)
}

fn forms(space: cocycles_core::forms::FormSpace) -> Vec<Matrix> {
    space.basis().iter().map(|f| f.matrix().clone()).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DerivationFile {
    derivations: Vec<Vec<Vec<String>>>,
}

fn load_derivations(spec: &str, a: &Algebra) -> std::result::Result<Vec<Matrix>, Failure> {
    if spec == "all" {
        return Ok(derivations(a)?.basis().to_vec());
    }
    let path = Path::new(spec);
    let text = read(path)?;
    let file: DerivationFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    file.derivations
        .iter()
        .map(|m| {
            let rows = m
                .iter()
                .map(|r| r.iter().map(|c| Scalar::parse(a.field(), c)).collect())
                .collect::<cocycles_core::Result<Vec<Vec<Scalar>>>>()?;
            Ok(Matrix::from_dense_with_cols(a.field(), a.dim(), rows)?)
        })
        .collect()
}

fn tensor(
    l: &Algebra,
    a: &Algebra,
    extend_d: Option<&str>,
    central: Option<usize>,
) -> std::result::Result<Algebra, Failure> {
    let derivs = match extend_d {
        Some(spec) => load_derivations(spec, a)?,
        None => Vec::new(),
    };
    match central {
        None if extend_d.is_none() => Ok(current(l, a)?),
        None => Ok(derivation_extension(l, a, &derivs)?),
        Some(idx) => {
            let space = cocycles_core::forms::annihilated_by(&hc1(a)?, &derivs)?;
            let xi = space.basis().get(idx).ok_or_else(|| {
                Failure::Usage(format!(
                    "--central {idx}: the invariant part of HC1(A) has dimension {}",
                    space.dim()
                ))
            })?;
            let form = invariant_forms(l)?
                .basis()
                .first()
                .map(|f| f.matrix().clone())
                .unwrap_or_else(|| Matrix::zeros(l.field(), l.dim(), l.dim()));
            let spec = ExtensionSpec {
                form,
                xi: xi.matrix().clone(),
                derivations: derivs,
            };
            Ok(central_derivation_extension(l, a, &spec)?)
        }
    }
}

fn verify(check: &str, opts: &suite::Options, json: bool, out: &mut dyn Write) -> CmdResult {
    if check != "all" && !suite::CHECKS.contains(&check) {
        return Err(Failure::Usage(format!(
            "unknown check {check:?}; expected all or one of {}",
            suite::CHECKS.join(", ")
        )));
    }
    let outcome = suite::run(check, opts)?;
    let failed = outcome
        .reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .count();
    if json {
        let mut doc = ReportDocument::new(outcome.reports);
        doc.input_digests = outcome.digests;
        write_out(out, &canonical_json(&doc))?;
    } else {
        let mut text = String::new();
        for r in &outcome.reports {
            text.push_str(&r.to_table());
        }
        let recorded = outcome
            .reports
            .iter()
            .filter(|r| r.verdict == Verdict::Recorded)
            .count();
        text.push_str(&format!(
            "{} checks: {} pass, {} recorded, {} fail\n",
            outcome.reports.len(),
            outcome.reports.len() - failed - recorded,
            recorded,
            failed
        ));
        write_out(out, &text)?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
