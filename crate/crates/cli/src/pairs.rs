//! `pair-decompose` and `pair-action`.

use kronwebs::io::{self, BlockJson, DecompositionJson, MatJson, RelationJson, SkewPairJson};
use kronwebs::random;
use kronwebs::relations::relation_is_kronecker;
use kronwebs::skew_pairs::{
    action_subspace, corank_profile, decompose, induced_relation, is_micro_kronecker, SkewPair,
};
use serde::Serialize;

use crate::input::read_text;
use crate::report::{CliError, Output};
use crate::Common;

fn load_pair(common: &Common) -> Result<SkewPair, CliError> {
    let j: SkewPairJson = io::from_str(&read_text(common)?)?;
    Ok(SkewPair::try_from(&j)?)
}

#[derive(Serialize)]
pub struct Exceptional {
    /// Irreducible factor of the minor gcd as a binary form in (l1, l2).
    pub factor: String,
    pub corank: usize,
}

#[derive(Serialize)]
struct DecomposeReport {
    n: usize,
    micro_kronecker: bool,
    rank: usize,
    exceptional: Vec<Exceptional>,
    decomposition: DecompositionJson,
    /// `basisᵀ·h_i·basis` equals the canonical model for both forms.
    conjugation_holds: bool,
}

pub fn decompose_cmd(common: &Common) -> Result<Output, CliError> {
    let p = load_pair(common)?;
    let mk = is_micro_kronecker(&p);
    let profile = corank_profile(&p);
    let d = decompose(&p)?;
    let can = d.canonical();
    let bt = d.basis.transpose();
    let conjugation_holds = &(&bt * &p.h1) * &d.basis == can.h1 && &(&bt * &p.h2) * &d.basis == can.h2;
    let blocks: Vec<String> = d.blocks.iter().map(ToString::to_string).collect();
    let mut text = format!(
        "n = {}, rank {}, {}\nblocks: {}\n",
        p.n(),
        mk.rank,
        if mk.flag { "micro-Kronecker" } else { "not micro-Kronecker" },
        if blocks.is_empty() { "(none)".to_string() } else { blocks.join(" + ") },
    );
    for (f, c) in &profile.exceptional {
        text.push_str(&format!("exceptional factor {f}: corank {c}\n"));
    }
    text.push_str(&format!("conjugation identity: {}\n", if conjugation_holds { "holds" } else { "FAILS" }));
    let report = DecomposeReport {
        n: p.n(),
        micro_kronecker: mk.flag,
        rank: mk.rank,
        exceptional: profile
            .exceptional
            .iter()
            .map(|(f, c)| Exceptional { factor: f.to_string(), corank: *c })
            .collect(),
        decomposition: (&d).into(),
        conjugation_holds,
    };
    Ok(Output::new("pair-decompose", common, conjugation_holds, &report, text))
}

#[derive(Serialize)]
struct ActionReport {
    n: usize,
    rank: usize,
    blocks: Vec<BlockJson>,
    dim: usize,
    /// `(n + rank) / 2`, the dimension of a maximal isotropic subspace.
    expected_dim: usize,
    basis: MatJson,
    /// Random pencil members on which the subspace was checked to be isotropic.
    isotropy_samples: usize,
    isotropic: bool,
    induced_relation: RelationJson,
    induced_relation_kronecker: bool,
}

pub fn action_cmd(common: &Common) -> Result<Output, CliError> {
    let p = load_pair(common)?;
    let mk = is_micro_kronecker(&p);
    let a = action_subspace(&p)?;
    let basis = a.basis();
    let mut rng = random::seeded(common.seed);
    let samples = common.samples.unwrap_or(10);
    let isotropic = (0..samples).all(|_| {
        let (l1, l2) = (random::scalar(&mut rng), random::scalar(&mut rng));
        (&(&basis.transpose() * &p.at(&l1, &l2)) * basis).is_zero()
    });
    let rel = induced_relation(&p)?;
    let rel_kron = relation_is_kronecker(&rel).kronecker;
    let expected_dim = (p.n() + mk.rank) / 2;
    let blocks = decompose(&p)?.blocks;
    let verified = isotropic && a.dim() == expected_dim && rel_kron;
    let text = format!(
        "n = {}, rank {}: action subspace of dimension {} (maximal isotropic: {})\nisotropic on {} random members: {}\ninduced relation on A: {}-dimensional, Kronecker: {}\n",
        p.n(),
        mk.rank,
        a.dim(),
        expected_dim,
        samples,
        isotropic,
        rel.dim(),
        rel_kron,
    );
    let report = ActionReport {
        n: p.n(),
        rank: mk.rank,
        blocks: blocks.iter().map(Into::into).collect(),
        dim: a.dim(),
        expected_dim,
        basis: basis.into(),
        isotropy_samples: samples,
        isotropic,
        induced_relation: (&rel).into(),
        induced_relation_kronecker: rel_kron,
    };
    Ok(Output::new("pair-action", common, verified, &report, text))
}
