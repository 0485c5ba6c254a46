//! JSON formats for algebras and modules.
//!
//! An algebra document carries a `kind` and kind-specific fields:
//!
//! ```json
//! {"format_version": 1, "kind": "structure_constants", "label": "k[x]/(x^2)",
//!  "p": 2, "dim": 2, "unit": [1, 0], "mul": [[0,0,0,1], [0,1,1,1], [1,0,1,1]]}
//! ```
//!
//! Composite kinds (`upper_triangular`, `matrix`, `product`) take their
//! base algebras either inline or as `{"file": "other.json"}`, resolved
//! relative to the referencing document.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{
    direct_product, from_group_table, from_quiver, matrix_algebra, upper_triangular, Algebra, Arrow,
    QuiverWithRelations, RelationTerm,
};
use crate::error::{Error, Result};
use crate::ext::FORMAT_VERSION;
use crate::linalg::Matrix;
use crate::module::RightModule;
use crate::subcat::uniserial_lambda;

#[derive(Debug, Deserialize)]
struct AlgebraDoc {
    format_version: Option<u32>,
    label: Option<String>,
    #[serde(flatten)]
    body: AlgebraBody,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum AlgebraBody {
    StructureConstants {
        p: u32,
        dim: usize,
        unit: Vec<u32>,
        mul: Vec<[u64; 4]>,
        basis_names: Option<Vec<String>>,
    },
    Quiver {
        p: u32,
        vertices: usize,
        arrows: Vec<(String, usize, usize)>,
        #[serde(default)]
        relations: Vec<Vec<(i64, Vec<String>)>>,
        cutoff: Option<usize>,
    },
    GroupTable {
        p: u32,
        table: Vec<Vec<usize>>,
    },
    UpperTriangular {
        n: usize,
        base: SubDoc,
    },
    Matrix {
        n: usize,
        base: SubDoc,
    },
    Product {
        factors: Vec<SubDoc>,
    },
    Uniserial {
        p: u32,
        n: usize,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SubDoc {
    File { file: String },
    Inline(Box<AlgebraDoc>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    format_version: Option<u32>,
    algebra: SubDoc,
    dim: usize,
    action: Vec<Vec<u64>>,
}

/// Where sub-documents come from: the file system or the bundled corpus.
pub trait Resolver {
    /// Text of the document `name` referenced from `origin`, and its own origin.
    fn resolve(&self, origin: &str, name: &str) -> Result<(String, String)>;
}

/// Resolves names relative to the directory of the referencing file.
pub struct FileResolver;

impl Resolver for FileResolver {
    fn resolve(&self, origin: &str, name: &str) -> Result<(String, String)> {
        let dir = Path::new(origin).parent().map(Path::to_path_buf).unwrap_or_default();
        let path = dir.join(name);
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(&path).map_err(|source| Error::Io { path: shown.clone(), source })?;
        Ok((text, shown))
    }
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_version(v: Option<u32>, origin: &str) -> Result<()> {
    match v {
        Some(v) if v != FORMAT_VERSION => {
            Err(Error::InvalidInput(format!("{origin}: unsupported format_version {v}, expected {FORMAT_VERSION}")))
        }
        _ => Ok(()),
    }
}

const MAX_DEPTH: usize = 16;

fn build_sub(doc: &SubDoc, origin: &str, resolver: &dyn Resolver, depth: usize) -> Result<Algebra> {
    match doc {
        SubDoc::Inline(d) => build(d, origin, resolver, depth + 1),
        SubDoc::File { file } => {
            let (text, sub_origin) = resolver.resolve(origin, file)?;
            let d: AlgebraDoc = parse_json(&text, &sub_origin)?;
            build(&d, &sub_origin, resolver, depth + 1)
        }
    }
}

fn build(doc: &AlgebraDoc, origin: &str, resolver: &dyn Resolver, depth: usize) -> Result<Algebra> {
    if depth > MAX_DEPTH {
        return Err(Error::InvalidInput(format!("{origin}: sub-documents nested too deeply")));
    }
    check_version(doc.format_version, origin)?;
    let alg = match &doc.body {
        AlgebraBody::StructureConstants { p, dim, unit, mul, basis_names } => {
            let mut consts = Vec::with_capacity(mul.len());
            for &[i, j, k, c] in mul {
                consts.push((i as usize, j as usize, k as usize, (c % *p as u64) as u32));
            }
            let a = Algebra::from_structure_constants("", *p, *dim, &consts, unit)?;
            match basis_names {
                Some(names) if names.len() != *dim => {
                    return Err(Error::InvalidInput(format!(
                        "{origin}: {} basis names for dimension {dim}",
                        names.len()
                    )))
                }
                Some(names) => a.with_basis_names(names.clone()),
                None => a,
            }
        }
        AlgebraBody::Quiver { p, vertices, arrows, relations, cutoff } => {
            let q = QuiverWithRelations {
                p: *p,
                vertex_count: *vertices,
                arrows: arrows
                    .iter()
                    .map(|(name, s, t)| Arrow { name: name.clone(), source: *s, target: *t })
                    .collect(),
                relations: relations
                    .iter()
                    .map(|rel| {
                        rel.iter()
                            .map(|(c, path)| RelationTerm { coeff: c.rem_euclid(*p as i64) as u32, path: path.clone() })
                            .collect()
                    })
                    .collect(),
                cutoff: cutoff.unwrap_or(usize::MAX),
                label: String::new(),
            };
            from_quiver(&q)?
        }
        AlgebraBody::GroupTable { p, table } => from_group_table(table, *p)?,
        AlgebraBody::UpperTriangular { n, base } => upper_triangular(*n, &build_sub(base, origin, resolver, depth)?)?,
        AlgebraBody::Matrix { n, base } => matrix_algebra(*n, &build_sub(base, origin, resolver, depth)?)?,
        AlgebraBody::Product { factors } => {
            let mut it = factors.iter();
            let first = it.next().ok_or_else(|| Error::InvalidInput(format!("{origin}: empty product")))?;
            let mut acc = build_sub(first, origin, resolver, depth)?;
            for f in it {
                acc = direct_product(&acc, &build_sub(f, origin, resolver, depth)?)?;
            }
            acc
        }
        AlgebraBody::Uniserial { p, n } => uniserial_lambda(*p, *n)?,
    };
    Ok(match &doc.label {
        Some(l) => alg.with_label(l.clone()),
        None if alg.label().is_empty() => {
            let stem = Path::new(origin).file_stem().and_then(|s| s.to_str()).unwrap_or("algebra");
            alg.with_label(stem)
        }
        None => alg,
    })
}

/// Parses an algebra document. The result is not yet checked for
/// associativity or unitality; see [`Algebra::validate`].
pub fn parse_algebra(text: &str, origin: &str, resolver: &dyn Resolver) -> Result<Algebra> {
    let doc: AlgebraDoc = parse_json(text, origin)?;
    build(&doc, origin, resolver, 0)
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<Algebra> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: shown.clone(), source })?;
    parse_algebra(&text, &shown, &FileResolver)
}

/// Whether a document describes a module rather than an algebra.
pub fn is_module_document(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("action").is_some() && v.get("algebra").is_some())
        .unwrap_or(false)
}

/// Parses a module document; the algebra must validate and the action
/// must satisfy the module axioms.
pub fn parse_module(text: &str, origin: &str, resolver: &dyn Resolver) -> Result<RightModule> {
    let doc: ModuleDoc = parse_json(text, origin)?;
    check_version(doc.format_version, origin)?;
    let algebra = build_sub(&doc.algebra, origin, resolver, 0)?.validated()?;
    if doc.action.len() != algebra.dim() {
        return Err(Error::InvalidModule(format!(
            "{} action matrices for an algebra of dimension {}",
            doc.action.len(),
            algebra.dim()
        )));
    }
    let p = algebra.p();
    let action = doc
        .action
        .iter()
        .map(|flat| Matrix::from_vec(p, doc.dim, doc.dim, flat).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    RightModule::new(Arc::new(algebra), doc.dim, action)
}

pub fn load_module(path: impl AsRef<Path>) -> Result<RightModule> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: shown.clone(), source })?;
    parse_module(&text, &shown, &FileResolver)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct NoFiles;

    impl Resolver for NoFiles {
        fn resolve(&self, _: &str, name: &str) -> Result<(String, String)> {
            Err(Error::InvalidInput(format!("no file {name}")))
        }
    }

    #[test]
    fn structure_constants_document() {
        let text = r#"{"format_version": 1, "kind": "structure_constants", "p": 2, "dim": 2,
            "unit": [1, 0], "mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1]]}"#;
        let a = parse_algebra(text, "dual.json", &NoFiles).unwrap();
        assert_eq!(a.label(), "dual");
        assert!(a.validate().passed());
    }

    #[test]
    fn parse_error_has_position() {
        let text = "{\n  \"kind\": \"uniserial\",\n  \"p\": 2,\n  \"n\": }";
        match parse_algebra(text, "bad.json", &NoFiles) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_version_rejected() {
        let text = r#"{"format_version": 2, "kind": "uniserial", "p": 2, "n": 2}"#;
        assert!(matches!(parse_algebra(text, "x", &NoFiles), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn composite_inline() {
        let text = r#"{"kind": "upper_triangular", "n": 2, "base": {"kind": "uniserial", "p": 3, "n": 1}}"#;
        let a = parse_algebra(text, "u.json", &NoFiles).unwrap();
        assert_eq!(a.dim(), 3);
        let text = r#"{"kind": "product", "factors": [{"file": "missing.json"}]}"#;
        assert!(parse_algebra(text, "u.json", &NoFiles).is_err());
    }

    #[test]
    fn quiver_document() {
        let text = r#"{"kind": "quiver", "p": 2, "vertices": 2, "arrows": [["a", 0, 1]], "relations": []}"#;
        let a = parse_algebra(text, "a2.json", &NoFiles).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn module_document() {
        let text = r#"{"format_version": 1, "algebra": {"kind": "uniserial", "p": 2, "n": 2},
            "dim": 2, "action": [[1,0,0,1],[0,1,0,0]]}"#;
        assert!(is_module_document(text));
        let m = parse_module(text, "m.json", &NoFiles).unwrap();
        assert_eq!(m.dim(), 2);
        let bad = r#"{"algebra": {"kind": "uniserial", "p": 2, "n": 2}, "dim": 2, "action": [[1,0,0,1],[1,1,0,0]]}"#;
        assert!(parse_module(bad, "m.json", &NoFiles).is_err());
    }
}
