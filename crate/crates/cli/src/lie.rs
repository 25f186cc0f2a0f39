//! `lie-validate`, `lie-scan` and `lie-web`.

use kronwebs::io::{scalars_to_strings, BlockJson, PolyJson};
use kronwebs::lie_poisson::{
    admissibility_probe, algebra_rank, casimir_web, fixed_subspace, is_regular, micro_kronecker_scan, Covector,
};
use kronwebs::par::default_threads;
use kronwebs::random;
use serde::Serialize;

use crate::input::{load_algebra, Algebra};
use crate::report::{CliError, Output};
use crate::LieArgs;

fn sample_points(alg: &Algebra, args: &LieArgs, default: usize) -> Vec<Covector> {
    let mut rng = random::seeded(args.common.seed);
    (0..args.common.samples.unwrap_or(default)).map(|_| random::vector(&mut rng, alg.g.n())).collect()
}

#[derive(Serialize)]
struct InvariantOut {
    degree: usize,
    web_degree: usize,
    poly: PolyJson,
    display: String,
}

#[derive(Serialize)]
struct DimensionIdentity {
    /// `2·Σ web_degree + rank`.
    web: usize,
    /// `2·Σ degree + rank`.
    literal: usize,
    holds: bool,
}

#[derive(Serialize)]
struct PlaneOut {
    a: Vec<String>,
    b: Vec<String>,
    minor_gcd: String,
}

#[derive(Serialize)]
struct InvolutionOut {
    fixed_dim: usize,
    /// The probe is heuristic: a certificate proves the codimension condition,
    /// its absence proves nothing.
    heuristic: bool,
    admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<PlaneOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Vec<String>>,
    transversal_points: usize,
    probed_points: usize,
}

#[derive(Serialize)]
struct ValidateReport {
    name: String,
    n: usize,
    basis_names: Vec<String>,
    abelian: bool,
    rank: usize,
    rank_certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1_regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<Vec<InvariantOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension_identity: Option<DimensionIdentity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    anti_involution: Option<InvolutionOut>,
}

/// Everything in the input has already been validated by loading it (Jacobi,
/// invariance, anti-involution axioms); this reports the derived data.
pub fn validate_cmd(args: &LieArgs) -> Result<Output, CliError> {
    let alg = load_algebra(args)?;
    let g = &alg.g;
    let rk = algebra_rank(g);
    let c1_regular = alg.c1.as_ref().map(|c| is_regular(g, c)).transpose()?;
    let invariants = alg.invariants.as_ref().map(|ps| {
        ps.iter()
            .map(|p| InvariantOut {
                degree: p.degree,
                web_degree: p.web_degree(),
                poly: (&p.poly).into(),
                display: p.poly.to_string(),
            })
            .collect::<Vec<_>>()
    });
    let identity = alg.invariants.as_ref().filter(|ps| ps.len() == rk.rank).map(|ps| {
        let web = 2 * ps.iter().map(|p| p.web_degree()).sum::<usize>() + rk.rank;
        let literal = 2 * ps.iter().map(|p| p.degree).sum::<usize>() + rk.rank;
        DimensionIdentity { web, literal, holds: web == g.n() }
    });
    let anti_involution = match &alg.involution {
        Some(inv) => {
            let mut rng = random::seeded(args.common.seed);
            let rep = admissibility_probe(g, inv, None, args.common.samples.unwrap_or(4), &mut rng)?;
            Some(InvolutionOut {
                fixed_dim: fixed_subspace(&inv.iota).dim(),
                heuristic: rep.heuristic,
                admissible: rep.passed,
                certificate: rep.certificate.as_ref().map(|c| PlaneOut {
                    a: scalars_to_strings(&c.a),
                    b: scalars_to_strings(&c.b),
                    minor_gcd: c.minor_gcd.to_string(),
                }),
                counterexample: rep.counterexample.as_deref().map(scalars_to_strings),
                transversal_points: rep.transversality.iter().filter(|t| t.transversal).count(),
                probed_points: rep.transversality.len(),
            })
        }
        None => None,
    };
    let verified = c1_regular.unwrap_or(true) && identity.as_ref().is_none_or(|d| d.holds);

    let mut text = format!(
        "{}: dimension {}, rank {}{}, Jacobi identity holds\n",
        alg.name,
        g.n(),
        rk.rank,
        if rk.certified { "" } else { " (sampled)" }
    );
    if let Some(reg) = c1_regular {
        text.push_str(&format!("c1 is {}regular\n", if reg { "" } else { "NOT " }));
    }
    if let Some(ps) = &invariants {
        for p in ps {
            text.push_str(&format!("invariant of degree {} (web degree {}): {}\n", p.degree, p.web_degree, p.display));
        }
    }
    if let Some(d) = &identity {
        text.push_str(&format!(
            "dimension identity: 2·Σ web_degree + rank = {} ({}), literal reading gives {}\n",
            d.web,
            if d.holds { "holds" } else { "FAILS" },
            d.literal
        ));
    }
    if let Some(a) = &anti_involution {
        text.push_str(&format!(
            "anti-involution: fixed subspace of dimension {}, admissibility probe {}\n",
            a.fixed_dim,
            if a.admissible { "certified" } else { "not certified" }
        ));
    }
    let report = ValidateReport {
        name: alg.name.clone(),
        n: g.n(),
        basis_names: alg.basis_names.clone(),
        abelian: g.is_abelian(),
        rank: rk.rank,
        rank_certified: rk.certified,
        c1: alg.c1.as_deref().map(scalars_to_strings),
        c1_regular,
        invariants,
        dimension_identity: identity,
        anti_involution,
    };
    Ok(Output::new("lie-validate", &args.common, verified, &report, text))
}

#[derive(Serialize)]
struct ScanPoint {
    beta: Vec<String>,
    compatible: bool,
    micro_kronecker: bool,
    rank: usize,
    blocks: Vec<BlockJson>,
}

#[derive(Serialize)]
struct ScanReport {
    name: String,
    n: usize,
    algebra_rank: usize,
    c1: Vec<String>,
    c1_regular: bool,
    points: Vec<ScanPoint>,
    compatible_points: usize,
    /// Every compatible point is micro-Kronecker with rank equal to the algebra's.
    compatible_points_full_rank: bool,
}

pub fn scan_cmd(args: &LieArgs) -> Result<Output, CliError> {
    let alg = load_algebra(args)?;
    let c1 = alg.c1()?;
    let g = &alg.g;
    let r = algebra_rank(g).rank;
    let pts = sample_points(&alg, args, 10);
    let entries = micro_kronecker_scan(g, c1, &pts, default_threads())?;
    let good = entries.iter().filter(|e| e.compatible).count();
    let full = entries.iter().filter(|e| e.compatible).all(|e| e.micro_kronecker && e.rank == r);
    let c1_regular = is_regular(g, c1)?;

    let mut text = format!("{}: rank {r}, c1 {}regular\n", alg.name, if c1_regular { "" } else { "not " });
    for (i, e) in entries.iter().enumerate() {
        let blocks: Vec<String> = e.blocks.iter().map(ToString::to_string).collect();
        text.push_str(&format!(
            "point {i}: {}, {}, rank {}, blocks {}\n",
            if e.compatible { "compatible" } else { "incompatible" },
            if e.micro_kronecker { "micro-Kronecker" } else { "not micro-Kronecker" },
            e.rank,
            blocks.join(" + ")
        ));
    }
    text.push_str(&format!("{good}/{} compatible points\n", entries.len()));
    let report = ScanReport {
        name: alg.name.clone(),
        n: g.n(),
        algebra_rank: r,
        c1: scalars_to_strings(c1),
        c1_regular,
        points: entries
            .iter()
            .map(|e| ScanPoint {
                beta: scalars_to_strings(&e.beta),
                compatible: e.compatible,
                micro_kronecker: e.micro_kronecker,
                rank: e.rank,
                blocks: e.blocks.iter().map(Into::into).collect(),
            })
            .collect(),
        compatible_points: good,
        compatible_points_full_rank: full,
    };
    Ok(Output::new("lie-scan", &args.common, full, &report, text))
}

#[derive(Serialize)]
struct LeafOut {
    poly_index: usize,
    /// `a_i0, …, a_i,deg` with `p_i(β + λc₁) = Σ_j a_ij(β) λ^j`.
    coefficients: Vec<PolyJson>,
}

#[derive(Serialize)]
struct WebPointOut {
    beta: Vec<String>,
    regular: bool,
    compatible: bool,
    jacobian_rank: usize,
}

#[derive(Serialize)]
struct WebReport {
    name: String,
    dim: usize,
    rank: usize,
    degrees: Vec<usize>,
    web_degrees: Vec<usize>,
    web_identity: usize,
    literal_identity: usize,
    expected_jacobian_rank: usize,
    generic_jacobian_rank: usize,
    affine: bool,
    expansion_matches: bool,
    flat: bool,
    leaves: Vec<LeafOut>,
    points: Vec<WebPointOut>,
}

pub fn web_cmd(args: &LieArgs) -> Result<Output, CliError> {
    let alg = load_algebra(args)?;
    let c1 = alg.c1()?;
    let polys = alg.invariants()?;
    let pts = sample_points(&alg, args, 10);
    let rep = casimir_web(&alg.g, c1, polys, &pts)?;
    let flat = rep.flat();
    let good = rep.good_points().count();
    let text = format!(
        "{}: dim {} = 2·Σ web_degree + rank = {} (degrees {:?}, literal reading {})\nleaf equations affine in the chart: {}\nJacobian rank {} at {good}/{} regular compatible points (generic {})\nflat: {flat}\n",
        alg.name,
        rep.dim,
        rep.web_identity,
        rep.degrees,
        rep.literal_identity,
        rep.affine,
        rep.expected_jacobian_rank,
        rep.points.len(),
        rep.generic_jacobian_rank,
    );
    let report = WebReport {
        name: alg.name.clone(),
        dim: rep.dim,
        rank: rep.rank,
        degrees: rep.degrees.clone(),
        web_degrees: rep.web_degrees.clone(),
        web_identity: rep.web_identity,
        literal_identity: rep.literal_identity,
        expected_jacobian_rank: rep.expected_jacobian_rank,
        generic_jacobian_rank: rep.generic_jacobian_rank,
        affine: rep.affine,
        expansion_matches: rep.expansion_matches,
        flat,
        leaves: rep
            .leaves
            .iter()
            .map(|l| LeafOut { poly_index: l.poly_index, coefficients: l.coefficients.iter().map(Into::into).collect() })
            .collect(),
        points: rep
            .points
            .iter()
            .map(|p| WebPointOut {
                beta: scalars_to_strings(&p.beta),
                regular: p.regular,
                compatible: p.compatible,
                jacobian_rank: p.jacobian_rank,
            })
            .collect(),
    };
    Ok(Output::new("lie-web", &args.common, flat, &report, text))
}
