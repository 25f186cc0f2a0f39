//! `relation-reconstruct` and `relation-analyze`.

use kronwebs::io::{point_from_json, point_to_json, scalars_to_strings, MatJson, PencilJson, ProjPointJson, RelationJson};
use kronwebs::random;
use kronwebs::relations::{
    ker_point, pencil_to_relation, quotient_pencil, reconstruct_from_kernels, relation_is_kronecker,
    relation_to_pencil, spectral_curve, LinearRelation, Pencil, ProjPoint,
};
use kronwebs::webtools::{isotypic_filtration, split_into_blocks};
use kronwebs::{Mat, Subspace};
use serde::{Deserialize, Serialize};

use crate::input::{from_value, read_object};
use crate::pairs::Exceptional;
use crate::report::{CliError, Output};
use crate::Common;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelJson {
    point: ProjPointJson,
    /// Columns span the kernel.
    basis: MatJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelData {
    dim_v: usize,
    kernels: Vec<KernelJson>,
}

#[derive(Serialize)]
struct KernelOut {
    point: ProjPointJson,
    dim: usize,
    basis: MatJson,
}

#[derive(Serialize)]
struct ReconstructReport {
    dim_v: usize,
    kernels: Vec<KernelOut>,
    relation: RelationJson,
    dim: usize,
    /// Present when a source relation was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    source_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equals_source: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contained_in_source: Option<bool>,
}

fn kernel_out(pt: &ProjPoint, k: &Subspace) -> KernelOut {
    KernelOut { point: point_to_json(pt), dim: k.dim(), basis: k.basis().into() }
}

/// Either explicit kernels `{dim_v, kernels: [{point, basis}]}`, or a relation
/// whose kernels are sampled at `--samples` seeded points (default `dim_v + 1`).
pub fn reconstruct_cmd(common: &Common) -> Result<Output, CliError> {
    let obj = read_object(common)?;
    let (dim_v, data, source) = if obj.contains_key("kernels") {
        let kd: KernelData = from_value(obj)?;
        let mut data = Vec::with_capacity(kd.kernels.len());
        for k in &kd.kernels {
            let m = Mat::try_from(&k.basis)?;
            if m.rows() != kd.dim_v {
                return Err(kronwebs::Error::Schema(format!(
                    "kernel basis has {} rows, expected dim_v = {}",
                    m.rows(),
                    kd.dim_v
                ))
                .into());
            }
            data.push((point_from_json(&k.point)?, Subspace::span_of(&m)));
        }
        (kd.dim_v, data, None)
    } else {
        let rj: RelationJson = from_value(obj)?;
        let r = LinearRelation::try_from(&rj)?;
        let mut rng = random::seeded(common.seed);
        let count = common.samples.unwrap_or(r.dim_v() + 1);
        let p = quotient_pencil(&r);
        let data = random::distinct_points(&mut rng, count)
            .into_iter()
            .map(|pt| {
                let k = ker_point(&p, &pt);
                (pt, k)
            })
            .collect();
        (r.dim_v(), data, Some(r))
    };
    let rec = reconstruct_from_kernels(dim_v, &data)?;
    let equals = source.as_ref().map(|s| *s == rec);
    let contained = source.as_ref().map(|s| s.w().contains(rec.w()));
    let mut text = format!("{} kernels in K^{dim_v}: reconstructed relation of dimension {}\n", data.len(), rec.dim());
    if let (Some(s), Some(eq)) = (&source, equals) {
        text.push_str(&format!(
            "source dimension {}; {}\n",
            s.dim(),
            if eq { "equal to the source" } else { "strictly smaller than the source" }
        ));
    }
    let report = ReconstructReport {
        dim_v,
        kernels: data.iter().map(|(pt, k)| kernel_out(pt, k)).collect(),
        relation: (&rec).into(),
        dim: rec.dim(),
        source_dim: source.as_ref().map(LinearRelation::dim),
        equals_source: equals,
        contained_in_source: contained,
    };
    Ok(Output::new("relation-reconstruct", common, contained.unwrap_or(true), &report, text))
}

#[derive(Serialize)]
struct KroneckerOut {
    kronecker: bool,
    rank: usize,
    degenerate: bool,
}

#[derive(Serialize)]
struct FiltrationOut {
    /// `[k, number of blocks of dimension k]`.
    block_counts: Vec<(usize, usize)>,
    max_block_dim: usize,
    step_dims: Vec<usize>,
}

#[derive(Serialize)]
struct BlockOut {
    dim: usize,
    /// W-chain `v₁, …, v_k` with `(v_i, v_{i+1}) ∈ W`.
    chain: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    dim_v: usize,
    dim: usize,
    bisurjective: bool,
    left_kernel_dim: usize,
    right_kernel_dim: usize,
    kronecker: KroneckerOut,
    /// `relation_to_pencil` when bisurjective, the quotient pencil otherwise.
    pencil: PencilJson,
    exceptional: Vec<Exceptional>,
    kernels: Vec<KernelOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    filtration: Option<FiltrationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<BlockOut>>,
}

/// Input is a relation `{dim_v, basis}` or a pencil `{p1, p2}`.
pub fn analyze_cmd(common: &Common) -> Result<Output, CliError> {
    let obj = read_object(common)?;
    let r = if obj.contains_key("p1") {
        let pj: PencilJson = from_value(obj)?;
        pencil_to_relation(&Pencil::try_from(&pj)?)
    } else {
        let rj: RelationJson = from_value(obj)?;
        LinearRelation::try_from(&rj)?
    };
    let check = relation_is_kronecker(&r);
    let bisurjective = r.is_bisurjective();
    let pencil = if bisurjective { relation_to_pencil(&r)? } else { quotient_pencil(&r) };
    let mut rng = random::seeded(common.seed);
    let pts = random::distinct_points(&mut rng, common.samples.unwrap_or(3));
    let curve = spectral_curve(&quotient_pencil(&r), &pts);

    let mut verified = true;
    let (filtration, blocks) = if check.kronecker {
        match (isotypic_filtration(&r), split_into_blocks(&r)) {
            (Ok(f), Ok(parts)) => {
                let dims: usize = parts.iter().map(|b| b.dim()).sum();
                verified &= dims == r.dim_v();
                let fo = FiltrationOut {
                    block_counts: f.block_counts(),
                    max_block_dim: f.max_block_dim(),
                    step_dims: f.steps.iter().map(Subspace::dim).collect(),
                };
                let bo = parts
                    .iter()
                    .map(|b| BlockOut {
                        dim: b.dim(),
                        chain: b.chain.vectors.iter().map(|v| scalars_to_strings(v)).collect(),
                    })
                    .collect();
                (Some(fo), Some(bo))
            }
            // Kronecker relations whose kernels do not span V have no filtration
            (Err(kronwebs::Error::NotKronecker), _) | (_, Err(kronwebs::Error::NotKronecker)) => (None, None),
            (Err(e), _) | (_, Err(e)) => return Err(e.into()),
        }
    } else {
        (None, None)
    };

    let mut text = format!(
        "relation of dimension {} on K^{}: {}bisurjective, {}\n",
        r.dim(),
        r.dim_v(),
        if bisurjective { "" } else { "not " },
        if check.kronecker {
            format!("Kronecker of rank {}", check.rank)
        } else if check.degenerate {
            "degenerate".into()
        } else {
            "not Kronecker".into()
        },
    );
    for (f, d) in &curve.exceptional {
        text.push_str(&format!("exceptional factor {f}: kernel dimension {d}\n"));
    }
    if let Some(f) = &filtration {
        let counts: Vec<String> = f.block_counts.iter().map(|(k, m)| format!("{m}×K{k}")).collect();
        text.push_str(&format!("blocks: {}\n", counts.join(" + ")));
    }
    let report = AnalyzeReport {
        dim_v: r.dim_v(),
        dim: r.dim(),
        bisurjective,
        left_kernel_dim: r.left_kernel().dim(),
        right_kernel_dim: r.right_kernel().dim(),
        kronecker: KroneckerOut { kronecker: check.kronecker, rank: check.rank, degenerate: check.degenerate },
        pencil: (&pencil).into(),
        exceptional: curve
            .exceptional
            .iter()
            .map(|(f, c)| Exceptional { factor: f.to_string(), corank: *c })
            .collect(),
        kernels: pts.iter().zip(&curve.kernels).map(|(pt, k)| kernel_out(pt, k)).collect(),
        filtration,
        blocks,
    };
    Ok(Output::new("relation-analyze", common, verified, &report, text))
}
