//! JSON documents for root systems and affine presentations.
//!
//! The wire format keeps every number exact: integers are plain JSON numbers
//! and all other rationals are `"p/q"` strings.  Serialization is canonical —
//! roots and fibers are sorted — so `serialize ∘ parse` is the identity on
//! canonical documents and identical inputs always produce byte-identical
//! outputs.

use serde::{Deserialize, Serialize};

use crate::affine::{AffinePresentation, Fiber};
use crate::error::{Error, Result};
use crate::finite::FiniteRootSystem;
use crate::linalg::{FormSpace, Mat, Vector};
use crate::scalar::Scalar;

pub const FORMAT_VERSION: &str = "1";

/// An exact number on the wire: a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberDoc {
    Int(i64),
    Rat(String),
}

impl NumberDoc {
    pub fn from_scalar<S: Scalar>(s: &S) -> Self {
        if s.is_integer() {
            if let Some(i) = s.to_i64() {
                return NumberDoc::Int(i);
            }
        }
        NumberDoc::Rat(s.format_rat())
    }

    pub fn to_scalar<S: Scalar>(&self) -> Result<S> {
        match self {
            NumberDoc::Int(i) => Ok(S::from_int(*i)),
            NumberDoc::Rat(text) => S::parse_rat(text).map_err(Error::Parse),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocumentKind {
    Finite,
    Affine,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    /// Row-major `dim × dim` Gram matrix.
    pub gram: Vec<NumberDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDocument {
    /// The base root, in the coordinates of `space`.
    pub class: Vec<NumberDoc>,
    /// Lattice step of the δ offsets; `0` means the residue list is the fiber.
    pub step: NumberDoc,
    pub residues: Vec<NumberDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// The document: a finite system (`roots`) or an affine presentation
/// (`delta_label` + `fibers`) over an explicit quadratic space.
///
/// For the affine kind, `space` is the *base* space of classes; the δ
/// direction is implicit and named by `delta_label`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub format_version: String,
    pub kind: DocumentKind,
    pub space: SpaceDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<Vec<NumberDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<FiberDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// What a document decodes to.
#[derive(Clone, Debug)]
pub enum ParsedSystem<S> {
    Finite(FiniteRootSystem<S>),
    Affine(AffinePresentation<S>),
}

/// Parse JSON text into a validated document.
///
/// Errors carry the position for malformed JSON, and a description for
/// structurally invalid documents (wrong field combinations, dimension
/// mismatches, duplicate roots, malformed rationals, …).
pub fn parse(text: &str) -> Result<SystemDocument> {
    let doc: SystemDocument = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    validate_shape(&doc)?;
    Ok(doc)
}

/// Canonical serialization: two-space-indented JSON with a trailing newline.
pub fn serialize(doc: &SystemDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents always serialize");
    text.push('\n');
    text
}

fn validate_shape(doc: &SystemDocument) -> Result<()> {
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported format_version {:?}; this build reads {FORMAT_VERSION:?}",
            doc.format_version
        )));
    }
    let dim = doc.space.dim;
    if doc.space.basis_labels.len() != dim {
        return Err(Error::Parse(format!(
            "{} basis labels for a {dim}-dimensional space",
            doc.space.basis_labels.len()
        )));
    }
    if doc.space.gram.len() != dim * dim {
        return Err(Error::Parse(format!(
            "gram has {} entries; a {dim}-dimensional space needs {}",
            doc.space.gram.len(),
            dim * dim
        )));
    }
    match doc.kind {
        DocumentKind::Finite => {
            if doc.roots.is_none() {
                return Err(Error::Parse("finite document without roots".to_string()));
            }
            if doc.fibers.is_some() || doc.delta_label.is_some() {
                return Err(Error::Parse(
                    "finite document must not carry fibers or delta_label".to_string(),
                ));
            }
        }
        DocumentKind::Affine => {
            if doc.fibers.is_none() || doc.delta_label.is_none() {
                return Err(Error::Parse(
                    "affine document needs both fibers and delta_label".to_string(),
                ));
            }
            if doc.roots.is_some() {
                return Err(Error::Parse(
                    "affine document must not carry explicit roots".to_string(),
                ));
            }
        }
    }
    Ok(())
}

impl SystemDocument {
    /// Encode a finite system. Roots come out sorted because the system
    /// already stores them that way.
    pub fn from_finite<S: Scalar>(rs: &FiniteRootSystem<S>, metadata: Option<Metadata>) -> Self {
        let roots: Vec<Vec<NumberDoc>> = rs.roots().iter().map(encode_vector).collect();
        SystemDocument {
            format_version: FORMAT_VERSION.to_string(),
            kind: DocumentKind::Finite,
            space: encode_space(rs.space()),
            roots: Some(roots),
            delta_label: None,
            fibers: None,
            metadata,
        }
    }

    /// Encode an affine presentation over its base space. Fibers come out in
    /// class order because the presentation already stores them that way.
    pub fn from_affine<S: Scalar>(p: &AffinePresentation<S>, metadata: Option<Metadata>) -> Self {
        let fibers: Vec<FiberDocument> = p
            .fibers()
            .iter()
            .map(|f| FiberDocument {
                class: encode_vector(&f.class),
                step: NumberDoc::from_scalar(&f.step),
                residues: f.residues.iter().map(NumberDoc::from_scalar).collect(),
            })
            .collect();
        SystemDocument {
            format_version: FORMAT_VERSION.to_string(),
            kind: DocumentKind::Affine,
            space: encode_space(p.base().space()),
            roots: None,
            delta_label: Some(p.delta_label().to_string()),
            fibers: Some(fibers),
            metadata,
        }
    }

    /// Decode into a live system, validating every number exactly.
    pub fn to_system<S: Scalar>(&self) -> Result<ParsedSystem<S>> {
        validate_shape(self)?;
        let space = decode_space::<S>(&self.space)?;
        match self.kind {
            DocumentKind::Finite => {
                let rows = self.roots.as_ref().expect("validated");
                let mut roots = Vec::with_capacity(rows.len());
                for row in rows {
                    roots.push(decode_vector::<S>(row, self.space.dim)?);
                }
                let mut sorted = roots.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != roots.len() {
                    return Err(Error::Parse("duplicate roots in document".to_string()));
                }
                Ok(ParsedSystem::Finite(FiniteRootSystem::new(space, roots)?))
            }
            DocumentKind::Affine => {
                let fiber_docs = self.fibers.as_ref().expect("validated");
                let mut fibers = Vec::with_capacity(fiber_docs.len());
                for fd in fiber_docs {
                    let class = decode_vector::<S>(&fd.class, self.space.dim)?;
                    let step = fd.step.to_scalar::<S>()?;
                    let residues = fd
                        .residues
                        .iter()
                        .map(NumberDoc::to_scalar)
                        .collect::<Result<Vec<S>>>()?;
                    fibers.push(Fiber::new(class, step, residues)?);
                }
                let delta = self.delta_label.clone().expect("validated");
                Ok(ParsedSystem::Affine(AffinePresentation::new(
                    space, delta, fibers,
                )?))
            }
        }
    }
}

fn encode_space<S: Scalar>(space: &FormSpace<S>) -> SpaceDocument {
    let dim = space.dim();
    let mut gram = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            gram.push(NumberDoc::from_scalar(space.gram().at(i, j)));
        }
    }
    SpaceDocument {
        dim,
        basis_labels: space.labels().to_vec(),
        gram,
    }
}

fn decode_space<S: Scalar>(doc: &SpaceDocument) -> Result<FormSpace<S>> {
    let dim = doc.dim;
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut coords = Vec::with_capacity(dim);
        for j in 0..dim {
            coords.push(doc.gram[i * dim + j].to_scalar::<S>()?);
        }
        rows.push(Vector(coords));
    }
    FormSpace::new(doc.basis_labels.clone(), Mat::from_rows(&rows)?)
}

fn encode_vector<S: Scalar>(v: &Vector<S>) -> Vec<NumberDoc> {
    v.0.iter().map(NumberDoc::from_scalar).collect()
}

fn decode_vector<S: Scalar>(row: &[NumberDoc], dim: usize) -> Result<Vector<S>> {
    if row.len() != dim {
        return Err(Error::Parse(format!(
            "vector {row:?} has {} coordinates in a {dim}-dimensional space",
            row.len()
        )));
    }
    Ok(Vector(
        row.iter().map(NumberDoc::to_scalar).collect::<Result<Vec<S>>>()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build_affine;
    use crate::catalog::{finite_system, AffineFamily, FiniteFamily};
    use crate::Rat;

    #[test]
    fn finite_document_round_trips() {
        let rs = finite_system(&FiniteFamily::<Rat>::B0(2)).unwrap();
        let doc = SystemDocument::from_finite(
            &rs,
            Some(Metadata { tag: Some("B(0,2)".to_string()), notes: None }),
        );
        let text = serialize(&doc);
        let reparsed = parse(&text).unwrap();
        assert_eq!(doc, reparsed);
        assert_eq!(serialize(&reparsed), text);
        match reparsed.to_system::<Rat>().unwrap() {
            ParsedSystem::Finite(back) => {
                assert_eq!(back.roots(), rs.roots());
                assert_eq!(encode_space(back.space()), encode_space(rs.space()));
            }
            ParsedSystem::Affine(_) => panic!("expected a finite system"),
        }
    }

    #[test]
    fn affine_document_round_trips_rational_entries() {
        let p = build_affine(&AffineFamily::<Rat>::PeculiarQ { q: Rat::from_ratio(1, 3) })
            .unwrap();
        let doc = SystemDocument::from_affine(&p, None);
        let text = serialize(&doc);
        assert!(text.contains("1/3"));
        let reparsed = parse(&text).unwrap();
        match reparsed.to_system::<Rat>().unwrap() {
            ParsedSystem::Affine(back) => assert_eq!(&back, &p),
            ParsedSystem::Finite(_) => panic!("expected an affine presentation"),
        }
    }

    #[test]
    fn malformed_documents_are_rejected_with_positions() {
        let err = parse("{ not json").unwrap_err();
        assert!(matches!(err, Error::Parse(ref m) if m.contains("line 1")), "{err}");

        let rs = finite_system(&FiniteFamily::<Rat>::A(1)).unwrap();
        let mut doc = SystemDocument::from_finite(&rs, None);
        let dup = doc.roots.as_mut().unwrap().first().cloned().unwrap();
        doc.roots.as_mut().unwrap().push(dup);
        let text = serialize(&doc);
        let err = parse(&text).unwrap().to_system::<Rat>().unwrap_err();
        assert!(matches!(err, Error::Parse(ref m) if m.contains("duplicate")), "{err}");

        // Non-symmetric gram.
        let mut doc = SystemDocument::from_finite(&rs, None);
        doc.space.gram = vec![
            NumberDoc::Int(2),
            NumberDoc::Int(1),
            NumberDoc::Int(0),
            NumberDoc::Int(2),
        ];
        doc.space.dim = 2;
        doc.space.basis_labels = vec!["a".to_string(), "b".to_string()];
        let err = parse(&serialize(&doc)).unwrap().to_system::<Rat>().unwrap_err();
        assert!(err.to_string().contains("symmetric"), "{err}");

        // Malformed rational.
        let mut doc = SystemDocument::from_finite(&rs, None);
        doc.space.gram[0] = NumberDoc::Rat("2/".to_string());
        let err = parse(&serialize(&doc)).unwrap().to_system::<Rat>().unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");

        // Kind/field mismatch.
        let mut doc = SystemDocument::from_finite(&rs, None);
        doc.kind = DocumentKind::Affine;
        let err = parse(&serialize(&doc)).unwrap_err();
        assert!(err.to_string().contains("fibers"), "{err}");
    }
}
