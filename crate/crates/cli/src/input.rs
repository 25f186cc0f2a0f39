//! Reading input files and turning them into library values.

use std::fs;
use std::io::Read;

use kronwebs::exact_core::scalar::parse_scalar;
use kronwebs::exact_core::MPoly;
use kronwebs::io::{self, strings_to_scalars, BracketJson, LieAlgebraJson, MatJson, PolyJson};
use kronwebs::lie_poisson::tables::{self, builtin};
use kronwebs::lie_poisson::{
    cartan_from_generators, check_antiinvolution, validate_invariants, AntiInvolutionData, Covector,
    InvariantPoly, LieAlgebraData,
};
use kronwebs::{Mat, Scalar};
use serde::Deserialize;
use serde_json::Value;

use crate::report::CliError;
use crate::{Common, LieArgs};

pub fn read_text(common: &Common) -> Result<String, CliError> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("--input is required".into()))?;
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(path.clone(), e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))
}

/// The input as a JSON object, for commands that accept several schemas.
pub fn read_object(common: &Common) -> Result<serde_json::Map<String, Value>, CliError> {
    match io::from_str::<Value>(&read_text(common)?)? {
        Value::Object(m) => Ok(m),
        _ => Err(kronwebs::Error::Schema("expected a JSON object".into()).into()),
    }
}

pub fn from_value<T: serde::de::DeserializeOwned>(m: serde_json::Map<String, Value>) -> Result<T, CliError> {
    serde_json::from_value(Value::Object(m)).map_err(|e| kronwebs::Error::Schema(e.to_string()).into())
}

pub fn parse_list(s: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',').map(|x| parse_scalar(x.trim()).map_err(CliError::from)).collect()
}

/// A Lie algebra with whatever optional data came with it.
pub struct Algebra {
    pub name: String,
    pub basis_names: Vec<String>,
    pub g: LieAlgebraData,
    pub c1: Option<Covector>,
    pub invariants: Option<Vec<InvariantPoly>>,
    pub involution: Option<AntiInvolutionData>,
}

impl Algebra {
    pub fn c1(&self) -> Result<&Covector, CliError> {
        self.c1
            .as_ref()
            .ok_or_else(|| CliError::Usage("no c1: pass --c1 or include \"c1\" in the input".into()))
    }

    pub fn invariants(&self) -> Result<&[InvariantPoly], CliError> {
        self.invariants
            .as_deref()
            .ok_or_else(|| CliError::Usage("no invariant polynomials: include \"invariants\" in the input".into()))
    }
}

/// Lie algebra file: the bracket table plus optional `c1`, invariant
/// polynomials and an anti-involution `iota` (by columns).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LieInput {
    #[serde(default)]
    name: Option<String>,
    n: usize,
    brackets: Vec<BracketJson>,
    #[serde(default)]
    basis_names: Option<Vec<String>>,
    #[serde(default)]
    c1: Option<Vec<String>>,
    #[serde(default)]
    invariants: Option<Vec<PolyJson>>,
    #[serde(default)]
    iota: Option<MatJson>,
}

fn from_table(t: tables::BuiltinTable) -> Result<Algebra, CliError> {
    let invariants = Some(t.invariants()?);
    let involution = match &t.cartan {
        Some(triples) => Some(cartan_from_generators(&t.algebra, triples)?),
        None => None,
    };
    Ok(Algebra {
        name: t.name,
        basis_names: t.basis_names,
        g: t.algebra,
        c1: Some(t.c1),
        invariants,
        involution,
    })
}

pub fn load_algebra(args: &LieArgs) -> Result<Algebra, CliError> {
    let mut alg = match &args.algebra {
        Some(name) => from_table(builtin(name)?)?,
        None => {
            let text = read_text(&args.common)?;
            let obj: Value = io::from_str(&text)?;
            if obj.get("matrices").is_some() {
                // a table in the shipped format
                from_table(tables::parse_table(&text)?)?
            } else {
                let inp: LieInput = from_value(match obj {
                    Value::Object(m) => m,
                    _ => return Err(kronwebs::Error::Schema("expected a JSON object".into()).into()),
                })?;
                let g = LieAlgebraData::try_from(&LieAlgebraJson { n: inp.n, brackets: inp.brackets })?;
                let basis_names = inp.basis_names.unwrap_or_else(|| (0..g.n()).map(|i| format!("x{i}")).collect());
                if basis_names.len() != g.n() {
                    return Err(kronwebs::Error::Schema(format!("basis_names must have {} entries", g.n())).into());
                }
                let c1 = inp.c1.as_deref().map(strings_to_scalars).transpose()?;
                let invariants = match inp.invariants {
                    Some(ps) => {
                        let polys = ps.iter().map(MPoly::try_from).collect::<Result<Vec<_>, _>>()?;
                        Some(validate_invariants(&g, polys)?)
                    }
                    None => None,
                };
                let involution = match &inp.iota {
                    Some(m) => Some(check_antiinvolution(&g, &Mat::try_from(m)?)?),
                    None => None,
                };
                Algebra {
                    name: inp.name.unwrap_or_else(|| "input".into()),
                    basis_names,
                    g,
                    c1,
                    invariants,
                    involution,
                }
            }
        }
    };
    if let Some(s) = &args.c1 {
        alg.c1 = Some(parse_list(s)?);
    }
    if let Some(c1) = &alg.c1 {
        if c1.len() != alg.g.n() {
            return Err(kronwebs::Error::DimensionMismatch(format!(
                "c1 has {} coordinates, the algebra has dimension {}",
                c1.len(),
                alg.g.n()
            ))
            .into());
        }
    }
    Ok(alg)
}
