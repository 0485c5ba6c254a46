//! Algebras bundled with the crate, loadable by file name.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::spec_file::{parse_algebra, Resolver};

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        /// `(file name, JSON text)` for every bundled algebra.
        pub const CORPUS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../corpus/", $name)))),*
        ];
    };
}

corpus!(
    "gf2.json",
    "gf2xgf2.json",
    "kx2.json",
    "kx3.json",
    "u2_f2.json",
    "u2_f3.json",
    "gf2_c3.json",
    "gf3_c3.json",
    "gf2_s3.json",
    "gf3_s3.json",
    "m2_f2.json",
    "m2_local.json",
    "a2_path.json",
    "commutative_local_2gen.json",
    "product_mixed.json",
);

/// Resolves sub-document references against the bundled files.
pub struct CorpusResolver;

impl Resolver for CorpusResolver {
    fn resolve(&self, _origin: &str, name: &str) -> Result<(String, String)> {
        text(name).map(|t| (t.to_string(), name.to_string()))
    }
}

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Result<&'static str> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::InvalidInput(format!("no bundled algebra named {name}")))
}

/// Loads and validates a bundled algebra.
pub fn load(name: &str) -> Result<Algebra> {
    parse_algebra(text(name)?, name, &CorpusResolver)?.validated()
}
