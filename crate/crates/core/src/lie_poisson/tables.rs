//! Built-in Lie algebras shipped as JSON data: `sl2`, `sl3`, `gl2`, `gl3`, `so3`.
//!
//! Each table carries the bracket table, a faithful matrix realization (used
//! for trace invariants), a regular `c₁`, the invariant degrees and, for
//! `sl_n`, Chevalley triples `(e_i, f_i, h_i)`.

use serde::Deserialize;

use super::{trace_invariants, Covector, InvariantPoly, LieAlgebraData};
use crate::error::{Error, Result};
use crate::io::{strings_to_scalars, LieAlgebraJson, MatJson};
use crate::exact_core::{Mat, Scalar};

pub const NAMES: [&str; 5] = ["sl2", "sl3", "gl2", "gl3", "so3"];

const SOURCES: [(&str, &str); 5] = [
    ("sl2", include_str!("../../data/sl2.json")),
    ("sl3", include_str!("../../data/sl3.json")),
    ("gl2", include_str!("../../data/gl2.json")),
    ("gl3", include_str!("../../data/gl3.json")),
    ("so3", include_str!("../../data/so3.json")),
];

#[derive(Deserialize)]
struct TripleJson {
    e: Vec<String>,
    f: Vec<String>,
    h: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    name: String,
    n: usize,
    basis_names: Vec<String>,
    brackets: Vec<crate::io::BracketJson>,
    matrices: Vec<MatJson>,
    c1: Vec<String>,
    invariant_degrees: Vec<usize>,
    #[serde(default)]
    cartan: Option<Vec<TripleJson>>,
}

pub type Triple = (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinTable {
    pub name: String,
    pub basis_names: Vec<String>,
    pub algebra: LieAlgebraData,
    pub matrices: Vec<Mat>,
    pub c1: Covector,
    pub invariant_degrees: Vec<usize>,
    pub cartan: Option<Vec<Triple>>,
}

impl BuiltinTable {
    /// `tr X(β)^m` for the shipped degrees.
    pub fn invariants(&self) -> Result<Vec<InvariantPoly>> {
        trace_invariants(&self.algebra, &self.matrices, &self.invariant_degrees)
    }
}

/// Parses a table in the shipped format.
pub fn parse_table(text: &str) -> Result<BuiltinTable> {
    let t: TableJson = crate::io::from_str(text)?;
    let algebra = LieAlgebraData::try_from(&LieAlgebraJson { n: t.n, brackets: t.brackets })?;
    if t.basis_names.len() != t.n || t.c1.len() != t.n || t.matrices.len() != t.n {
        return Err(Error::Schema(format!("table {} has inconsistent lengths", t.name)));
    }
    let matrices = t.matrices.iter().map(Mat::try_from).collect::<Result<Vec<_>>>()?;
    let cartan = t
        .cartan
        .map(|ts| {
            ts.iter()
                .map(|tr| Ok((strings_to_scalars(&tr.e)?, strings_to_scalars(&tr.f)?, strings_to_scalars(&tr.h)?)))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(BuiltinTable {
        name: t.name,
        basis_names: t.basis_names,
        algebra,
        matrices,
        c1: strings_to_scalars(&t.c1)?,
        invariant_degrees: t.invariant_degrees,
        cartan,
    })
}

pub fn builtin(name: &str) -> Result<BuiltinTable> {
    let (_, text) = SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown algebra {name:?}; known: {}", NAMES.join(", "))))?;
    parse_table(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_poisson::{algebra_rank, is_regular};

    #[test]
    fn tables_are_consistent() {
        for name in NAMES {
            let t = builtin(name).unwrap();
            assert_eq!(LieAlgebraData::from_matrices(&t.matrices).unwrap(), t.algebra, "{name}");
            assert!(is_regular(&t.algebra, &t.c1).unwrap(), "{name}");
            let r = algebra_rank(&t.algebra).rank;
            assert_eq!(t.invariant_degrees.len(), r, "{name}");
            assert_eq!(t.invariants().unwrap().len(), r);
        }
        assert!(builtin("e8").is_err());
    }
}
