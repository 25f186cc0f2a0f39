//! JSON forms of the library types. Rationals are strings `"p"` or `"p/q"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_core::scalar::{format_scalar, parse_scalar};
use crate::exact_core::{MPoly, Mat, Scalar, Subspace, UniPoly};
use crate::lie_poisson::LieAlgebraData;
use crate::relations::{LinearRelation, Pencil, ProjPoint};
use crate::skew_pairs::{BlockSpec, Decomposition, Eigenvalue, SkewPair};

pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_string_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types always serialize")
}

pub fn scalars_to_strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(format_scalar).collect()
}

pub fn strings_to_scalars(xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| parse_scalar(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl From<&Mat> for MatJson {
    fn from(m: &Mat) -> Self {
        MatJson { rows: m.rows(), cols: m.cols(), entries: scalars_to_strings(m.entries()) }
    }
}

impl TryFrom<&MatJson> for Mat {
    type Error = Error;
    fn try_from(j: &MatJson) -> Result<Mat> {
        if j.entries.len() != j.rows * j.cols {
            return Err(Error::Schema(format!(
                "matrix declares {}×{} but has {} entries",
                j.rows,
                j.cols,
                j.entries.len()
            )));
        }
        Ok(Mat::new(j.rows, j.cols, strings_to_scalars(&j.entries)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewPairJson {
    pub n: usize,
    pub h1: MatJson,
    pub h2: MatJson,
}

impl From<&SkewPair> for SkewPairJson {
    fn from(p: &SkewPair) -> Self {
        SkewPairJson { n: p.n(), h1: (&p.h1).into(), h2: (&p.h2).into() }
    }
}

impl TryFrom<&SkewPairJson> for SkewPair {
    type Error = Error;
    fn try_from(j: &SkewPairJson) -> Result<SkewPair> {
        let h1 = Mat::try_from(&j.h1)?;
        let h2 = Mat::try_from(&j.h2)?;
        if h1.shape() != (j.n, j.n) || h2.shape() != (j.n, j.n) {
            return Err(Error::Schema(format!("pair matrices must be {0}×{0}", j.n)));
        }
        SkewPair::new(h1, h2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub dim_v: usize,
    /// Columns span W ⊆ V ⊕ V.
    pub basis: MatJson,
}

impl From<&LinearRelation> for RelationJson {
    fn from(r: &LinearRelation) -> Self {
        RelationJson { dim_v: r.dim_v(), basis: r.w().basis().into() }
    }
}

impl TryFrom<&RelationJson> for LinearRelation {
    type Error = Error;
    fn try_from(j: &RelationJson) -> Result<LinearRelation> {
        let m = Mat::try_from(&j.basis)?;
        if m.rows() != 2 * j.dim_v {
            return Err(Error::Schema(format!(
                "relation basis must have 2·dim_v = {} rows, found {}",
                2 * j.dim_v,
                m.rows()
            )));
        }
        LinearRelation::new(j.dim_v, Subspace::span_of(&m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilJson {
    pub p1: MatJson,
    pub p2: MatJson,
}

impl From<&Pencil> for PencilJson {
    fn from(p: &Pencil) -> Self {
        PencilJson { p1: (&p.p1).into(), p2: (&p.p2).into() }
    }
}

impl TryFrom<&PencilJson> for Pencil {
    type Error = Error;
    fn try_from(j: &PencilJson) -> Result<Pencil> {
        Pencil::new(Mat::try_from(&j.p1)?, Mat::try_from(&j.p2)?)
    }
}

pub type ProjPointJson = [String; 2];

pub fn point_to_json(p: &ProjPoint) -> ProjPointJson {
    [format_scalar(p.lambda1()), format_scalar(p.lambda2())]
}

pub fn point_from_json(j: &ProjPointJson) -> Result<ProjPoint> {
    ProjPoint::new(parse_scalar(&j[0])?, parse_scalar(&j[1])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub n: usize,
    pub brackets: Vec<BracketJson>,
}

impl From<&LieAlgebraData> for LieAlgebraJson {
    fn from(g: &LieAlgebraData) -> Self {
        let brackets = g
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, cs)| BracketJson {
                i,
                j,
                coeffs: cs.iter().map(|(k, c)| (*k, format_scalar(c))).collect(),
            })
            .collect();
        LieAlgebraJson { n: g.n(), brackets }
    }
}

impl TryFrom<&LieAlgebraJson> for LieAlgebraData {
    type Error = Error;
    fn try_from(j: &LieAlgebraJson) -> Result<LieAlgebraData> {
        let mut entries = Vec::with_capacity(j.brackets.len());
        for b in &j.brackets {
            let cs = b
                .coeffs
                .iter()
                .map(|(k, c)| Ok((*k, parse_scalar(c)?)))
                .collect::<Result<Vec<_>>>()?;
            entries.push((b.i, b.j, cs));
        }
        LieAlgebraData::new(j.n, entries)
    }
}

/// Polynomial as monomial exponent vectors with coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<(Vec<u16>, String)>,
}

impl From<&MPoly> for PolyJson {
    fn from(p: &MPoly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            terms: p.terms().map(|(e, c)| (e.clone(), format_scalar(c))).collect(),
        }
    }
}

impl TryFrom<&PolyJson> for MPoly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<MPoly> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for (e, c) in &j.terms {
            if e.len() != j.nvars {
                return Err(Error::Schema(format!(
                    "monomial has {} exponents, expected {}",
                    e.len(),
                    j.nvars
                )));
            }
            terms.push((e.clone(), parse_scalar(c)?));
        }
        Ok(MPoly::from_terms(j.nvars, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueJson {
    /// Monic irreducible factor in μ, lowest degree first; empty at infinity.
    pub factor: Vec<String>,
    pub at_infinity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub kind: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalue: Option<EigenvalueJson>,
}

impl From<&BlockSpec> for BlockJson {
    fn from(b: &BlockSpec) -> Self {
        match b {
            BlockSpec::Kronecker { dim } => {
                BlockJson { kind: "Kronecker".into(), dim: *dim, eigenvalue: None }
            }
            BlockSpec::Jordan { dim, eigenvalue } => {
                let eigenvalue = Some(match eigenvalue {
                    Eigenvalue::Finite(q) => {
                        EigenvalueJson { factor: scalars_to_strings(q.coeffs()), at_infinity: false }
                    }
                    Eigenvalue::Infinity => EigenvalueJson { factor: Vec::new(), at_infinity: true },
                });
                BlockJson { kind: "Jordan".into(), dim: *dim, eigenvalue }
            }
        }
    }
}

impl TryFrom<&BlockJson> for BlockSpec {
    type Error = Error;
    fn try_from(j: &BlockJson) -> Result<BlockSpec> {
        match (j.kind.as_str(), &j.eigenvalue) {
            ("Kronecker", None) if j.dim % 2 == 1 => Ok(BlockSpec::Kronecker { dim: j.dim }),
            ("Jordan", Some(e)) if j.dim.is_multiple_of(2) && j.dim > 0 => {
                let eigenvalue = if e.at_infinity {
                    Eigenvalue::Infinity
                } else {
                    Eigenvalue::Finite(UniPoly::new(strings_to_scalars(&e.factor)?))
                };
                Ok(BlockSpec::Jordan { dim: j.dim, eigenvalue })
            }
            _ => Err(Error::Schema(format!("invalid block {} of dim {}", j.kind, j.dim))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub blocks: Vec<BlockJson>,
    pub basis: MatJson,
}

impl From<&Decomposition> for DecompositionJson {
    fn from(d: &Decomposition) -> Self {
        DecompositionJson { blocks: d.blocks.iter().map(Into::into).collect(), basis: (&d.basis).into() }
    }
}

/// Sign and degree conventions, echoed in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub pencil: String,
    pub relation_kernel: String,
    pub translation: String,
    pub web_degree: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            pencil: "member at (l1:l2) is l1*h1 + l2*h2".into(),
            relation_kernel: "Ker(l1:l2) = ker(l1*P1 - l2*P2) = {v : (l1*v, l2*v) in W}".into(),
            translation: "h1 = LP frozen at c1, h2 = LP(beta); h2 + t*h1 = LP(beta + t*c1)".into(),
            web_degree: "web_degree = deg - 1; dim g = 2*sum(web_degree) + rank".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::{int, ratio};
    use crate::skew_pairs::{decompose, make_kron_pair};

    #[test]
    fn mat_round_trip() {
        let m = Mat::new(1, 2, vec![ratio(-3, 4), int(7)]);
        let j = MatJson::from(&m);
        assert_eq!(j.entries, vec!["-3/4", "7"]);
        let text = serde_json::to_string(&j).unwrap();
        let back: MatJson = from_str(&text).unwrap();
        assert_eq!(Mat::try_from(&back).unwrap(), m);
    }

    #[test]
    fn bad_inputs_are_typed_errors() {
        assert!(matches!(from_str::<MatJson>("{"), Err(Error::Parse(_))));
        let j = MatJson { rows: 2, cols: 2, entries: vec!["1".into()] };
        assert!(matches!(Mat::try_from(&j), Err(Error::Schema(_))));
        let j = MatJson { rows: 1, cols: 1, entries: vec!["1/0".into()] };
        assert!(matches!(Mat::try_from(&j), Err(Error::Parse(_))));
    }

    #[test]
    fn pair_and_decomposition_json() {
        let p = make_kron_pair(2);
        let j = SkewPairJson::from(&p);
        assert_eq!(SkewPair::try_from(&j).unwrap(), p);
        let d = DecompositionJson::from(&decompose(&p).unwrap());
        assert_eq!(d.blocks, vec![BlockJson { kind: "Kronecker".into(), dim: 3, eigenvalue: None }]);
        let not_skew = SkewPairJson { n: 1, h1: (&Mat::identity(1)).into(), h2: (&Mat::zeros(1, 1)).into() };
        assert_eq!(SkewPair::try_from(&not_skew), Err(Error::NotSkew));
    }
}
