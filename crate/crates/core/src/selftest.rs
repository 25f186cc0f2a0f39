//! The acceptance suite as a library function, so that the CLI and the test
//! harness run the same code. Reports carry no timings and are byte-identical
//! for a given seed regardless of the worker count.

use serde::Serialize;

use crate::error::Result;
use crate::exact_core::factor::linear_root;
use crate::exact_core::minors::all_minors;
use crate::exact_core::scalar::{format_scalar, int};
use crate::exact_core::{factor_binary_form, rank_at_form_root, Mat, MPoly, Scalar, Subspace};
use crate::io::Conventions;
use crate::lie_poisson::tables::builtin;
use crate::lie_poisson::{
    admissibility_probe, algebra_rank, casimir_web, cartan_from_generators, cocycle_matrix, compatible,
    frozen_matrix, is_regular, jacobi_compat_check, micro_kronecker_scan, semidirect_double, tensor_with_algebra,
    validate_invariants, CommAlgebra, Covector, InvariantPoly, LieAlgebraData,
};
use crate::par::par_map;
use crate::random::{self, Rng8};
use crate::relations::{
    is_kronecker, jordan_relation, ker_point, kronecker_relation, quotient_pencil, reconstruct_from_kernels,
    relation_direct_sum, LinearRelation, Pencil, ProjPoint,
};
use crate::skew_pairs::{
    action_subspace, conjugate, decompose, is_micro_kronecker, pair_direct_sum, sample_points, BlockSpec, SkewPair,
};
use crate::webtools::{isotypic_filtration_with, schedule};

pub const CRITERIA: usize = 10;
const MAX_LISTED_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub summary: String,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub conventions: Conventions,
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        crate::io::to_string_pretty(self)
    }

    /// One line per criterion.
    pub fn to_text(&self) -> String {
        self.criteria.iter().map(|c| format!("{}\n", c.line())).collect()
    }
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("[{status}] {:>2}. {}: {}", self.id, self.name, self.summary)
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn absorb(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                let msg = what();
                self.check(false, || format!("{msg}: {e}"));
            }
        }
    }

    fn finish(self, id: usize, name: &str, extra_ok: bool, summary: String) -> CriterionResult {
        CriterionResult {
            id,
            name: name.into(),
            passed: self.failed == 0 && extra_ok,
            cases: self.cases,
            summary: format!("{summary}; {} of {} checks failed", self.failed, self.cases),
            failures: self.failures,
        }
    }
}

fn sub_rng(seed: u64, criterion: u64) -> Rng8 {
    random::seeded(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ criterion)
}

fn sorted(mut bs: Vec<BlockSpec>) -> Vec<BlockSpec> {
    bs.sort_by(BlockSpec::canonical_cmp);
    bs
}

fn show_blocks(bs: &[BlockSpec]) -> String {
    let parts: Vec<String> = bs
        .iter()
        .map(|b| match b {
            BlockSpec::Kronecker { dim } => format!("K{dim}"),
            BlockSpec::Jordan { dim, eigenvalue } => format!("J{dim}[{eigenvalue}]"),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn show_vec(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(format_scalar).collect::<Vec<_>>().join(", "))
}

struct Suite1Case {
    specs: Vec<BlockSpec>,
    pair: SkewPair,
}

fn suite1(seed: u64) -> Vec<Suite1Case> {
    let mut rng = sub_rng(seed, 1);
    (0..200)
        .map(|_| {
            let specs = random::block_specs(&mut rng, 12);
            let src = pair_direct_sum(&specs.iter().map(BlockSpec::canonical_pair).collect::<Vec<_>>());
            let s = random::unimodular(&mut rng, src.n());
            let pair = conjugate(&src, &s).expect("unimodular matrices are invertible");
            Suite1Case { specs, pair }
        })
        .collect()
}

/// Decomposition round trip on conjugated block sums.
pub fn criterion_1(seed: u64, threads: usize) -> CriterionResult {
    let cases = suite1(seed);
    let outcomes = par_map(&cases, threads, |c| -> Result<bool> {
        let d = decompose(&c.pair)?;
        if d.blocks != sorted(c.specs.clone()) {
            return Ok(false);
        }
        let can = d.canonical();
        let bt = d.basis.transpose();
        Ok(&(&bt * &c.pair.h1) * &d.basis == can.h1 && &(&bt * &c.pair.h2) * &d.basis == can.h2)
    });
    let mut t = Tally::new();
    for (i, (c, o)) in cases.iter().zip(outcomes).enumerate() {
        t.absorb(o, || format!("case {i}: blocks {}", show_blocks(&c.specs)));
    }
    let jordan = cases.iter().filter(|c| c.specs.iter().any(|b| !b.is_kronecker())).count();
    t.finish(1, "decomposition round-trip", true, format!("{} pairs ({jordan} with Jordan blocks)", cases.len()))
}

fn random_kronecker_relation(rng: &mut Rng8, max_dim: usize) -> (Vec<usize>, LinearRelation) {
    let sizes = random::relation_block_sizes(rng, max_dim);
    let n: usize = sizes.iter().sum();
    let t = random::unimodular(rng, n);
    let src = relation_direct_sum(&sizes.iter().map(|&k| kronecker_relation(k)).collect::<Vec<_>>());
    (sizes, src.transform(&t).expect("unimodular matrices are invertible"))
}

/// Kernels at k + 1 points reconstruct a Kronecker relation; k points may not.
pub fn criterion_2(seed: u64, threads: usize) -> CriterionResult {
    let mut rng = sub_rng(seed, 2);
    let cases: Vec<(Vec<usize>, LinearRelation, Vec<ProjPoint>)> = (0..100)
        .map(|_| {
            let (sizes, r) = random_kronecker_relation(&mut rng, 10);
            let k = *sizes.iter().max().expect("at least one block");
            let pts = random::distinct_points(&mut rng, k + 1);
            (sizes, r, pts)
        })
        .collect();
    let outcomes = par_map(&cases, threads, |(_, r, pts)| -> Result<(bool, bool)> {
        let q = quotient_pencil(r);
        let data: Vec<(ProjPoint, Subspace)> = pts.iter().map(|p| (p.clone(), ker_point(&q, p))).collect();
        let full = reconstruct_from_kernels(r.dim_v(), &data)?;
        let short = reconstruct_from_kernels(r.dim_v(), &data[..data.len() - 1])?;
        let contained = r.w().contains(short.w());
        Ok((&full == r && contained, short.dim() < r.dim()))
    });
    let mut t = Tally::new();
    let mut smaller = 0;
    for (i, ((sizes, _, _), o)) in cases.iter().zip(outcomes).enumerate() {
        let o = o.map(|(ok, strict)| {
            smaller += usize::from(strict);
            ok
        });
        t.absorb(o, || format!("case {i}: block sizes {sizes:?}"));
    }
    let summary = format!("{} relations; k points gave a strictly smaller relation in {smaller}", cases.len());
    t.finish(2, "kernel reconstruction", smaller > 0, summary)
}

/// Action subspace dimension, isotropy and spanning by kernels.
pub fn criterion_3(seed: u64, threads: usize) -> CriterionResult {
    let cases: Vec<Suite1Case> = suite1(seed).into_iter().filter(|c| c.specs.iter().all(BlockSpec::is_kronecker)).collect();
    let mut rng = sub_rng(seed, 3);
    let lambdas: Vec<(Scalar, Scalar)> = (0..10).map(|_| (random::scalar(&mut rng), random::scalar(&mut rng))).collect();
    let outcomes = par_map(&cases, threads, |c| -> Result<bool> {
        let p = &c.pair;
        let n = p.n();
        let r = c.specs.len();
        let a = action_subspace(p)?;
        if a.dim() != (n + r) / 2 {
            return Ok(false);
        }
        let b = a.basis();
        let bt = b.transpose();
        if !lambdas.iter().all(|(l1, l2)| (&(&bt * &p.at(l1, l2)) * b).is_zero()) {
            return Ok(false);
        }
        let k = c.specs.iter().map(|s| s.dim().div_ceil(2)).max().unwrap_or(0);
        let span = |m: usize| {
            let ks: Vec<Subspace> = sample_points().take(m).map(|(l1, l2)| p.at(&l1, &l2).kernel()).collect();
            Subspace::sum_all(n, &ks)
        };
        if span(k) != a {
            return Ok(false);
        }
        Ok(c.specs.len() > 1 || k == 0 || span(k - 1) != a)
    });
    let mut t = Tally::new();
    for (i, (c, o)) in cases.iter().zip(outcomes).enumerate() {
        t.absorb(o, || format!("Kronecker case {i}: blocks {}", show_blocks(&c.specs)));
    }
    let singles = cases.iter().filter(|c| c.specs.len() == 1).count();
    t.finish(
        3,
        "action subspace",
        !cases.is_empty(),
        format!("{} Kronecker-only pairs ({singles} single blocks)", cases.len()),
    )
}

/// Corank-sampling oracle: rank at 50 random points and at every root of
/// every irreducible factor of every maximal nonvanishing minor.
fn oracle_constant_rank(a: &Mat, b: &Mat, degenerate_is_singular: bool, rng: &mut Rng8) -> bool {
    let (rows, cols) = a.shape();
    if degenerate_is_singular && rows > 0 && cols > 0 && a.is_zero() && b.is_zero() {
        return false;
    }
    let mut pts: Vec<(Scalar, Scalar)> = vec![(int(1), int(0)), (int(0), int(1))];
    pts.extend((0..50).map(|_| (random::scalar(rng), random::scalar(rng))));
    let ranks: Vec<usize> = pts.iter().map(|(l1, l2)| a.combine(l1, b, l2).rank()).collect();
    let generic = ranks.iter().copied().max().unwrap_or(0);
    if ranks.iter().any(|&r| r < generic) {
        return false;
    }
    let mut seen = Vec::new();
    for m in all_minors(a, b, generic) {
        if m.is_zero() {
            continue;
        }
        for (f, _) in factor_binary_form(&m) {
            if seen.contains(&f) {
                continue;
            }
            let rank = match linear_root(&f) {
                Some((l1, l2)) => a.combine(&l1, b, &l2).rank(),
                None => rank_at_form_root(a, b, &f),
            };
            if rank < generic {
                return false;
            }
            seen.push(f);
        }
    }
    true
}

enum Suite4Case {
    Pair(SkewPair),
    Pencil(Pencil),
}

fn random_relation_pencil(rng: &mut Rng8) -> Pencil {
    let mut parts = Vec::new();
    let mut total = 0;
    while total < 6 {
        let k = rand::Rng::gen_range(rng, 1..=3usize);
        parts.push(if rand::Rng::gen_bool(rng, 0.5) {
            kronecker_relation(k)
        } else {
            let pt = random::distinct_points(rng, 1).remove(0);
            jordan_relation(k, &pt)
        });
        total += k;
        if rand::Rng::gen_bool(rng, 0.4) {
            break;
        }
    }
    let r = relation_direct_sum(&parts);
    let t = random::unimodular(rng, r.dim_v());
    quotient_pencil(&r.transform(&t).expect("invertible"))
}

/// Gcd-of-minors certificate against the sampling oracle.
pub fn criterion_4(seed: u64, threads: usize) -> CriterionResult {
    let mut rng = sub_rng(seed, 4);
    let cases: Vec<(Suite4Case, u64)> = (0..200)
        .map(|i| {
            let case = match i % 4 {
                0 => {
                    let specs = random::block_specs(&mut rng, 8);
                    let src = pair_direct_sum(&specs.iter().map(BlockSpec::canonical_pair).collect::<Vec<_>>());
                    let s = random::unimodular(&mut rng, src.n());
                    Suite4Case::Pair(conjugate(&src, &s).expect("invertible"))
                }
                1 => {
                    let n = rand::Rng::gen_range(&mut rng, 1..=8usize);
                    let a = random::small_int_matrix(&mut rng, n, n, 2);
                    let b = random::small_int_matrix(&mut rng, n, n, 2);
                    Suite4Case::Pair(SkewPair::new(&a - &a.transpose(), &b - &b.transpose()).expect("skew"))
                }
                2 => {
                    // low-rank products make rank drops likely
                    let (m, n) = (rand::Rng::gen_range(&mut rng, 1..=6usize), rand::Rng::gen_range(&mut rng, 1..=6usize));
                    let k = rand::Rng::gen_range(&mut rng, 1..=m.min(n));
                    let l = random::small_int_matrix(&mut rng, m, k, 2);
                    let a = &l * &random::small_int_matrix(&mut rng, k, n, 2);
                    let b = &l * &random::small_int_matrix(&mut rng, k, n, 2);
                    Suite4Case::Pencil(Pencil::new(a, b).expect("shapes agree"))
                }
                _ => Suite4Case::Pencil(random_relation_pencil(&mut rng)),
            };
            (case, rand::Rng::gen(&mut rng))
        })
        .collect();
    let outcomes = par_map(&cases, threads, |(case, s)| {
        let mut rng = random::seeded(*s);
        match case {
            Suite4Case::Pair(p) => {
                let cert = is_micro_kronecker(p).flag;
                (cert, oracle_constant_rank(&p.h1, &p.h2, false, &mut rng))
            }
            Suite4Case::Pencil(p) => {
                let cert = is_kronecker(p).kronecker;
                let (a, b) = p.plus_form();
                (cert, oracle_constant_rank(&a, &b, true, &mut rng))
            }
        }
    });
    let mut t = Tally::new();
    let mut positives = 0;
    for (i, (cert, oracle)) in outcomes.into_iter().enumerate() {
        positives += usize::from(oracle);
        t.check(cert == oracle, || format!("case {i}: certificate {cert}, oracle {oracle}"));
    }
    t.finish(
        4,
        "Kronecker certificate vs oracle",
        true,
        format!("{} pencils/pairs, {positives} Kronecker by the oracle", cases.len()),
    )
}

fn random_points(rng: &mut Rng8, n: usize, count: usize) -> Vec<Covector> {
    (0..count).map(|_| random::vector(rng, n)).collect()
}

/// Micro-Kronecker scans of argument-translation pencils.
pub fn criterion_5(seed: u64, threads: usize) -> CriterionResult {
    let mut rng = sub_rng(seed, 5);
    let expected = [("sl2", vec![3]), ("sl3", vec![3, 5]), ("gl2", vec![1, 3])];
    let mut t = Tally::new();
    let mut parts = Vec::new();
    let mut all_nonempty = true;
    for (name, dims) in expected {
        let table = match builtin(name) {
            Ok(tb) => tb,
            Err(e) => {
                t.check(false, || format!("{name}: {e}"));
                continue;
            }
        };
        let g = &table.algebra;
        let r = algebra_rank(g).rank;
        let points = random_points(&mut rng, g.n(), 50);
        let want: Vec<BlockSpec> = dims.iter().map(|&dim| BlockSpec::Kronecker { dim }).collect();
        match micro_kronecker_scan(g, &table.c1, &points, threads) {
            Ok(entries) => {
                let good: Vec<_> = entries.iter().filter(|e| e.compatible).collect();
                all_nonempty &= !good.is_empty();
                for e in &good {
                    t.check(e.micro_kronecker && e.rank == r && sorted(e.blocks.clone()) == want, || {
                        format!("{name} at {}: blocks {}, rank {}", show_vec(&e.beta), show_blocks(&e.blocks), e.rank)
                    });
                }
                parts.push(format!("{name}: {}/50 compatible, blocks {}", good.len(), show_blocks(&want)));
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t.finish(5, "Lie-Poisson scans", all_nonempty, parts.join("; "))
}

fn sl2_casimir() -> MPoly {
    // β_h² + 4β_eβ_f in coordinates (e, f, h)
    MPoly::from_terms(3, [(vec![0, 0, 2], int(1)), (vec![1, 1, 0], int(4))])
}

fn good_points(g: &LieAlgebraData, c1: &[Scalar], rng: &mut Rng8, want: usize) -> Result<Vec<Covector>> {
    let mut out = Vec::with_capacity(want);
    for _ in 0..10 * want {
        if out.len() == want {
            break;
        }
        let b = random::vector(rng, g.n());
        if is_regular(g, &b)? && compatible(g, c1, &b)? {
            out.push(b);
        }
    }
    Ok(out)
}

/// Casimir web coordinates: dimension identity, Jacobian rank, affine leaves.
pub fn criterion_6(seed: u64, _threads: usize) -> CriterionResult {
    let mut rng = sub_rng(seed, 6);
    let mut t = Tally::new();
    let mut parts = Vec::new();
    let cases: [(&str, usize); 2] = [("sl2", 3), ("sl3", 8)];
    for (name, dim) in cases {
        let mut run = || -> Result<(bool, String)> {
            let table = builtin(name)?;
            let g = &table.algebra;
            let polys: Vec<InvariantPoly> = if name == "sl2" {
                validate_invariants(g, vec![sl2_casimir()])?
            } else {
                table.invariants()?
            };
            let pts = good_points(g, &table.c1, &mut rng, 20)?;
            let rep = casimir_web(g, &table.c1, &polys, &pts)?;
            let ok = rep.web_identity == dim
                && rep.dim == dim
                && pts.len() == 20
                && rep.good_points().count() == 20
                && rep.flat();
            let ranks: Vec<usize> = rep.good_points().map(|p| p.jacobian_rank).collect();
            Ok((
                ok,
                format!(
                    "{name}: {} = 2*{} + {} (literal {}), Jacobian rank {:?} at {} points (expected {}), affine {}",
                    rep.dim,
                    rep.web_degrees.iter().sum::<usize>(),
                    rep.rank,
                    rep.literal_identity,
                    {
                        let mut r = ranks.clone();
                        r.dedup();
                        r
                    },
                    ranks.len(),
                    rep.expected_jacobian_rank,
                    rep.affine
                ),
            ))
        };
        match run() {
            Ok((ok, s)) => {
                t.check(ok, || s.clone());
                parts.push(s);
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t.finish(6, "Casimir web", true, parts.join("; "))
}

/// The isotypic filtration does not depend on the sample points.
pub fn criterion_7(seed: u64, threads: usize) -> CriterionResult {
    let mut rng = sub_rng(seed, 7);
    let cases: Vec<(Vec<usize>, LinearRelation)> = (0..100).map(|_| random_kronecker_relation(&mut rng, 10)).collect();
    let outcomes = par_map(&cases, threads, |(_, r)| -> Result<bool> {
        let n = r.dim_v();
        let a = isotypic_filtration_with(r, &schedule(0, n + 1))?;
        let b = isotypic_filtration_with(r, &schedule(n as i64 + 1, n + 1))?;
        Ok(a == b)
    });
    let mut t = Tally::new();
    for (i, ((sizes, _), o)) in cases.iter().zip(outcomes).enumerate() {
        t.absorb(o, || format!("case {i}: block sizes {sizes:?}"));
    }
    t.finish(7, "isotypic filtration independence", true, format!("{} relations", cases.len()))
}

/// Cartan anti-involutions and admissibility certificates on sl2 and sl3.
pub fn criterion_8(seed: u64, _threads: usize) -> CriterionResult {
    let mut rng = sub_rng(seed, 8);
    let mut t = Tally::new();
    let mut parts = Vec::new();
    for name in ["sl2", "sl3"] {
        let run = |rng: &mut Rng8| -> Result<(bool, String)> {
            let table = builtin(name)?;
            let g = &table.algebra;
            let triples = table.cartan.clone().unwrap_or_default();
            let inv = cartan_from_generators(g, &triples)?;
            let rep = admissibility_probe(g, &inv, None, 8, rng)?;
            let Some(cert) = &rep.certificate else {
                return Ok((false, format!("{name}: no certified plane")));
            };
            let mut ok = rep.passed;
            if name == "sl2" {
                // ⟨H, E + F⟩ in coordinates (e, f, h)
                let plane = Subspace::from_vectors(3, &[vec![int(0), int(0), int(1)], vec![int(1), int(1), int(0)]]);
                ok &= Subspace::from_vectors(3, &[cert.a.clone(), cert.b.clone()]) == plane;
            }
            Ok((
                ok,
                format!("{name}: fixed dim {}, certificate plane {} {}", rep.fixed_dim, show_vec(&cert.a), show_vec(&cert.b)),
            ))
        };
        match run(&mut rng) {
            Ok((ok, s)) => {
                t.check(ok, || s.clone());
                parts.push(s);
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t.finish(8, "anti-involutions", true, parts.join("; "))
}

/// Mapping-algebra constructions and the compatibility check.
pub fn criterion_9(seed: u64, _threads: usize) -> CriterionResult {
    let mut rng = sub_rng(seed, 9);
    let mut t = Tally::new();
    let sl2 = match builtin("sl2") {
        Ok(tb) => tb.algebra,
        Err(e) => {
            t.check(false, || e.to_string());
            return t.finish(9, "constructions", false, "sl2 unavailable".into());
        }
    };
    let double = semidirect_double(&sl2);
    t.absorb(double.as_ref().map(|d| d.n() == 6 && algebra_rank(d).rank == 2).map_err(Clone::clone), || {
        "sl2 semidirect double".into()
    });
    let trunc = tensor_with_algebra(&sl2, &CommAlgebra::truncated(2));
    t.absorb(trunc.as_ref().map(|d| algebra_rank(d).rank == 3).map_err(Clone::clone), || "sl2 ⊗ K[z]/z³".into());

    let mut algebras: Vec<(String, LieAlgebraData)> = Vec::new();
    for name in crate::lie_poisson::tables::NAMES {
        if let Ok(tb) = builtin(name) {
            algebras.push((name.into(), tb.algebra));
        }
    }
    if let Ok(d) = double {
        algebras.push(("sl2 double".into(), d));
    }
    for (name, g) in &algebras {
        for _ in 0..5 {
            let c1 = random::vector(&mut rng, g.n());
            t.absorb(frozen_matrix(g, &c1).and_then(|h| jacobi_compat_check(&h, g)), || {
                format!("{name}: translation pencil at {}", show_vec(&c1))
            });
        }
    }

    // gl2 carries skew forms that are not coboundaries or cocycles
    let mut perturbed = String::from("no non-cocycle found");
    if let Ok(tb) = builtin("gl2") {
        let g = &tb.algebra;
        for _ in 0..20 {
            let m = random::small_int_matrix(&mut rng, 4, 4, 3);
            let skew = &m - &m.transpose();
            if cocycle_matrix(g, &skew).is_ok() {
                continue;
            }
            let h1 = frozen_matrix(g, &tb.c1).map(|f| &f + &skew);
            t.absorb(h1.and_then(|h| jacobi_compat_check(&h, g)).map(|ok| !ok), || {
                "gl2 non-cocycle perturbation accepted".into()
            });
            perturbed = "gl2 non-cocycle perturbation rejected".into();
            break;
        }
    }
    let found = perturbed != "no non-cocycle found";
    t.finish(
        9,
        "constructions",
        found,
        format!("sl2 double dim 6 rank 2, sl2⊗K[z]/z³ rank 3, {} algebras checked; {perturbed}", algebras.len()),
    )
}

pub fn run_criterion(id: usize, seed: u64, threads: usize) -> CriterionResult {
    match id {
        1 => criterion_1(seed, threads),
        2 => criterion_2(seed, threads),
        3 => criterion_3(seed, threads),
        4 => criterion_4(seed, threads),
        5 => criterion_5(seed, threads),
        6 => criterion_6(seed, threads),
        7 => criterion_7(seed, threads),
        8 => criterion_8(seed, threads),
        9 => criterion_9(seed, threads),
        10 => criterion_10(seed, threads),
        _ => panic!("criteria are numbered 1..={CRITERIA}"),
    }
}

fn run_core(seed: u64, threads: usize) -> Vec<CriterionResult> {
    (1..CRITERIA).map(|id| run_criterion(id, seed, threads)).collect()
}

/// Runs criteria 1–9 twice — once with the given worker count, once
/// single-threaded — and compares the serialized reports byte for byte.
pub fn criterion_10(seed: u64, threads: usize) -> CriterionResult {
    determinism(seed, &run_core(seed, threads))
}

fn determinism(seed: u64, first: &[CriterionResult]) -> CriterionResult {
    let again = run_core(seed, 1);
    let a = serde_json::to_string(first).expect("serializable");
    let b = serde_json::to_string(&again).expect("serializable");
    let mut t = Tally::new();
    t.check(a == b, || "reports differ between runs".into());
    t.finish(
        10,
        "determinism",
        true,
        format!("parallel and single-threaded runs, {} bytes each", a.len()),
    )
}

/// The whole suite.
pub fn run(seed: u64, threads: usize) -> SelftestReport {
    let mut criteria = run_core(seed, threads);
    let det = determinism(seed, &criteria);
    criteria.push(det);
    SelftestReport { seed, conventions: Conventions::default(), criteria }
}
