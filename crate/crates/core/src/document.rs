//! JSON documents for algebras and check reports.
//!
//! Output is canonical: keys sorted, brackets sorted by `(i, j)`, terms by
//! `k`, coefficients in lowest terms (`Q`) or as residues in `[0, p)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Flags};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::verify::CheckReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsDoc {
    pub assoc_comm: bool,
    pub lie: bool,
    pub unit: Option<usize>,
}

/// Serialized algebra. Brackets list nonzero products `e_i e_j` with `i < j`
/// for Lie algebras, `i ≤ j` for commutative ones and every ordered pair
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub basis_names: Vec<String>,
    pub brackets: Vec<BracketDoc>,
    pub dim: usize,
    pub field: FieldDoc,
    pub flags: FlagsDoc,
    pub schema_version: u32,
}

fn semantic(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: message.into(),
    }
}

fn field_doc(f: FieldSpec) -> FieldDoc {
    if f.is_rational() {
        FieldDoc {
            kind: "Q".into(),
            p: None,
        }
    } else {
        FieldDoc {
            kind: "Fp".into(),
            p: Some(f.characteristic()),
        }
    }
}

fn field_from_doc(doc: &FieldDoc, allow_small_char: bool) -> Result<FieldSpec> {
    match (doc.kind.as_str(), doc.p) {
        ("Q", None) => Ok(FieldSpec::rationals()),
        ("Fp", Some(p)) => FieldSpec::prime_with_override(p, allow_small_char),
        _ => Err(semantic(format!(
            "field must be {{\"kind\":\"Q\"}} or {{\"kind\":\"Fp\",\"p\":<prime>}}, got kind {:?}",
            doc.kind
        ))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairRule {
    Strict,
    Upper,
    All,
}

fn pair_rule(flags: &Flags) -> PairRule {
    if flags.lie {
        PairRule::Strict
    } else if flags.assoc_comm {
        PairRule::Upper
    } else {
        PairRule::All
    }
}

pub fn to_document(a: &Algebra) -> AlgebraDocument {
    let flags = a.flags();
    let rule = pair_rule(&flags);
    let n = a.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let keep = match rule {
                PairRule::Strict => i < j,
                PairRule::Upper => i <= j,
                PairRule::All => true,
            };
            let p = a.product(i, j);
            if keep && !p.is_empty() {
                brackets.push(BracketDoc {
                    i,
                    j,
                    terms: p.iter().map(|(k, c)| (*k, c.to_string())).collect(),
                });
            }
        }
    }
    AlgebraDocument {
        basis_names: a.names().to_vec(),
        brackets,
        dim: n,
        field: field_doc(a.field()),
        flags: FlagsDoc {
            assoc_comm: flags.assoc_comm,
            lie: flags.lie,
            unit: flags.unit,
        },
        schema_version: SCHEMA_VERSION,
    }
}

/// Build and validate the algebra a document describes. Claimed flags are
/// re-verified.
pub fn from_document(doc: &AlgebraDocument, allow_small_char: bool) -> Result<Algebra> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(semantic(format!(
            "unsupported schema_version {}, expected {SCHEMA_VERSION}",
            doc.schema_version
        )));
    }
    let field = field_from_doc(&doc.field, allow_small_char)?;
    let n = doc.dim;
    if doc.basis_names.len() != n {
        return Err(semantic(format!(
            "dim is {n} but {} basis names are given",
            doc.basis_names.len()
        )));
    }
    let flags = Flags {
        lie: doc.flags.lie,
        assoc_comm: doc.flags.assoc_comm,
        unit: doc.flags.unit,
    };
    let rule = pair_rule(&flags);
    let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    let mut seen = vec![false; n * n];
    for (idx, b) in doc.brackets.iter().enumerate() {
        if b.i >= n || b.j >= n {
            return Err(semantic(format!("bracket {idx}: index out of range")));
        }
        let ok = match rule {
            PairRule::Strict => b.i < b.j,
            PairRule::Upper => b.i <= b.j,
            PairRule::All => true,
        };
        if !ok {
            return Err(semantic(format!(
                "bracket {idx}: pair ({}, {}) violates the pair convention",
                b.i, b.j
            )));
        }
        if std::mem::replace(&mut seen[b.i * n + b.j], true) {
            return Err(semantic(format!(
                "bracket {idx}: duplicate pair ({}, {})",
                b.i, b.j
            )));
        }
        let mut terms = Vec::with_capacity(b.terms.len());
        for (k, c) in &b.terms {
            if *k >= n {
                return Err(semantic(format!(
                    "bracket {idx}: term index {k} out of range"
                )));
            }
            let c = Scalar::parse(field, c).map_err(|e| match e {
                Error::Parse { message, .. } => semantic(format!("bracket {idx}: {message}")),
                other => other,
            })?;
            terms.push((*k, c));
        }
        let neg: Vec<(usize, Scalar)> = terms.iter().map(|(k, c)| (*k, -c)).collect();
        match rule {
            PairRule::Strict => {
                table[b.j * n + b.i] = neg;
            }
            PairRule::Upper => {
                table[b.j * n + b.i] = terms.clone();
            }
            PairRule::All => {}
        }
        table[b.i * n + b.j] = terms;
    }
    Algebra::from_table(field, doc.basis_names.clone(), table, flags)
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_algebra(text: &str, allow_small_char: bool) -> Result<Algebra> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(json_error)?;
    from_document(&doc, allow_small_char)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // going through Value sorts object keys
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn serialize_algebra(a: &Algebra) -> String {
    canonical_json(&to_document(a))
}

/// A batch of check reports with provenance of the run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    /// Optional form-space bases: name -> list of matrices of coefficients.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bases: BTreeMap<String, Vec<Vec<Vec<String>>>>,
    pub input_digests: BTreeMap<String, String>,
    pub reports: Vec<CheckReport>,
    pub tool_version: String,
}

impl ReportDocument {
    pub fn new(reports: Vec<CheckReport>) -> Self {
        ReportDocument {
            bases: BTreeMap::new(),
            input_digests: BTreeMap::new(),
            reports,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub fn serialize_report(r: &ReportDocument) -> String {
    canonical_json(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{abelian, divided_power, full_matrix_algebra, sl};

    #[test]
    fn round_trip_sl2() {
        let l = sl(2, FieldSpec::rationals()).unwrap();
        let text = serialize_algebra(&l);
        let back = parse_algebra(&text, false).unwrap();
        assert_eq!(back, l);
        assert_eq!(serialize_algebra(&back), text);
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn round_trip_commutative_and_general() {
        let f = FieldSpec::prime(5).unwrap();
        let a = divided_power(f, 1).unwrap();
        assert_eq!(parse_algebra(&serialize_algebra(&a), false).unwrap(), a);
        let m = full_matrix_algebra(2, FieldSpec::rationals()).unwrap();
        assert_eq!(parse_algebra(&serialize_algebra(&m), false).unwrap(), m);
    }

    #[test]
    fn zero_dim_round_trip() {
        let z = abelian(0, FieldSpec::rationals()).unwrap();
        let text = serialize_algebra(&z);
        assert_eq!(parse_algebra(&text, false).unwrap().dim(), 0);
    }

    #[test]
    fn empty_brackets_is_abelian() {
        let text = r#"{"schema_version":1,"field":{"kind":"Q"},"dim":4,
            "basis_names":["a","b","c","d"],"brackets":[],
            "flags":{"lie":true,"assoc_comm":false,"unit":null}}"#;
        let a = parse_algebra(text, false).unwrap();
        assert_eq!(
            a,
            abelian(4, FieldSpec::rationals())
                .unwrap()
                .with_names(["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect())
                .unwrap()
        );
    }

    #[test]
    fn non_jacobi_is_rejected_with_witness() {
        // [a,b] = c, [b,c] = a, [a,c] = a fails Jacobi
        let text = r#"{"schema_version":1,"field":{"kind":"Q"},"dim":3,
            "basis_names":["a","b","c"],
            "brackets":[{"i":0,"j":1,"terms":[[2,"1"]]},{"i":1,"j":2,"terms":[[0,"1"]]},
                        {"i":0,"j":2,"terms":[[0,"1"]]}],
            "flags":{"lie":true,"assoc_comm":false,"unit":null}}"#;
        match parse_algebra(text, false) {
            Err(Error::Validation { property, witness }) => {
                assert_eq!(property, "Jacobi identity");
                assert_eq!(witness.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_algebra("{\n  \"dim\": ,\n}", false) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_characteristic_needs_override() {
        let l = sl(2, FieldSpec::prime_with_override(3, true).unwrap()).unwrap();
        let text = serialize_algebra(&l);
        assert!(matches!(
            parse_algebra(&text, false),
            Err(Error::InvalidCharacteristic(_))
        ));
        assert!(parse_algebra(&text, true).is_ok());
    }
}
