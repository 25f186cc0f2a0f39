//! Anti-involutions `ι` of g (`ι² = id`, `[ιX, ιY] = −ι[X, Y]`), their fixed
//! subspaces in g*, and linear probes of the admissibility conditions.
//!
//! `ι` is stored by columns: column `j` holds the coordinates of `ι(x_j)`.
//! The dual map on g* is then `ι* = ιᵀ`.

use num_traits::{One, Zero};

use super::{algebra_rank, is_regular, lie_poisson_matrix, Covector, LieAlgebraData};
use crate::error::{Error, Result};
use crate::exact_core::{gcd_of_minors, BinaryForm, Mat, Scalar, Subspace};
use crate::random::{self, Rng8};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiInvolutionData {
    pub iota: Mat,
}

impl AntiInvolutionData {
    /// `ι*` on covectors.
    pub fn dual(&self) -> Mat {
        self.iota.transpose()
    }

    pub fn apply_dual(&self, beta: &[Scalar]) -> Covector {
        self.dual().mul_vec(beta)
    }
}

/// Checks `ι² = id` and `[ιx_i, ιx_j] = −ι[x_i, x_j]` on all basis pairs.
pub fn check_antiinvolution(g: &LieAlgebraData, iota: &Mat) -> Result<AntiInvolutionData> {
    let n = g.n();
    if iota.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!("ι must be {n}×{n}")));
    }
    if (iota * iota) != Mat::identity(n) {
        return Err(Error::NotInvolution);
    }
    let cols = iota.columns();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = g.bracket(&cols[i], &cols[j]);
            let rhs = iota.mul_vec(g.structure(i, j));
            if lhs.iter().zip(&rhs).any(|(a, b)| !(a + b).is_zero()) {
                return Err(Error::NotAntiAutomorphism(i, j));
            }
        }
    }
    Ok(AntiInvolutionData { iota: iota.clone() })
}

/// Extends `ι(e_i) = f_i, ι(f_i) = e_i, ι(h_i) = h_i` through brackets using
/// `ι([X, Y]) = −[ιX, ιY]`, then verifies the result.
pub fn cartan_from_generators(
    g: &LieAlgebraData,
    triples: &[(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)],
) -> Result<AntiInvolutionData> {
    let n = g.n();
    for (e, f, h) in triples {
        if e.len() != n || f.len() != n || h.len() != n {
            return Err(Error::DimensionMismatch(format!("generators must have {n} coordinates")));
        }
    }
    // Independent pairs (X, ιX) spanning the graph of ι on the generated subalgebra.
    let mut pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut graph = Subspace::zero(2 * n);
    let mut push = |x: Vec<Scalar>, y: Vec<Scalar>, pairs: &mut Vec<_>| {
        let v: Vec<Scalar> = x.iter().chain(&y).cloned().collect();
        if !graph.contains_vec(&v) {
            graph = graph.sum(&Subspace::from_vectors(2 * n, &[v])).expect("same ambient");
            pairs.push((x, y));
        }
    };
    for (e, f, h) in triples {
        push(e.clone(), f.clone(), &mut pairs);
        push(f.clone(), e.clone(), &mut pairs);
        push(h.clone(), h.clone(), &mut pairs);
    }
    let mut done = 0;
    while done < pairs.len() {
        let (x, ix) = pairs[done].clone();
        for k in 0..=done {
            let (y, iy) = pairs[k].clone();
            let z = g.bracket(&x, &y);
            let iz: Vec<Scalar> = g.bracket(&ix, &iy).into_iter().map(|v| -v).collect();
            push(z, iz, &mut pairs);
        }
        done += 1;
    }
    let domain = Subspace::from_vectors(n, &pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
    if !domain.is_full() {
        return Err(Error::GeneratorsDontSpan(domain.dim()));
    }
    if graph.dim() != n {
        return Err(Error::InvalidArgument("generator images are inconsistent".into()));
    }
    // Graph basis [X; Y] with X invertible: ι = Y·X⁻¹.
    let b = graph.basis();
    let x = b.block(0, 0, n, n);
    let y = b.block(n, 0, n, n);
    let iota = &y * &x.inverse().expect("graph projects onto the domain");
    check_antiinvolution(g, &iota)
}

/// `Fix(ι*) = ker(ιᵀ − I)` in g*.
pub fn fixed_subspace(iota: &Mat) -> Subspace {
    let n = iota.rows();
    iota.transpose().combine(&Scalar::one(), &Mat::identity(n), &-Scalar::one()).kernel()
}

/// Relation of the parameter under `ι*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParameterSign {
    /// `ι*c₁ = c₁`: `ι` carries `ker(β + λc₁)` to `ker(ι*β + λc₁)`.
    Same,
    /// `ι*c₁ = −c₁`: the parameter flips, `ker(ι*β − λc₁)`.
    Flipped,
    /// Neither; the translation direction changes to `ι*c₁`.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    pub sign: ParameterSign,
    pub checked: usize,
    pub failures: usize,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Verifies `ι · ker LP(ι*β + λι*c₁) = ker LP(β + λc₁)`, a consequence of
/// `LP(ι*β) = −ιᵀ·LP(β)·ι`, at each given λ.
pub fn transport_check(
    g: &LieAlgebraData,
    inv: &AntiInvolutionData,
    c1: &[Scalar],
    beta: &[Scalar],
    lambdas: &[Scalar],
) -> Result<TransportReport> {
    let ic1 = inv.apply_dual(c1);
    let ib = inv.apply_dual(beta);
    let sign = if ic1 == c1 {
        ParameterSign::Same
    } else if ic1.iter().zip(c1).all(|(a, b)| (a + b).is_zero()) {
        ParameterSign::Flipped
    } else {
        ParameterSign::General
    };
    let shift = |base: &[Scalar], dir: &[Scalar], l: &Scalar| -> Covector {
        base.iter().zip(dir).map(|(b, d)| b + l * d).collect()
    };
    let mut failures = 0;
    for l in lambdas {
        let here = lie_poisson_matrix(g, &shift(beta, c1, l))?.kernel();
        let there = lie_poisson_matrix(g, &shift(&ib, &ic1, l))?.kernel();
        if there.image(&inv.iota) != here {
            failures += 1;
        }
    }
    Ok(TransportReport { sign, checked: lambdas.len(), failures })
}

/// One 2-plane `⟨a, b⟩` inside the probed subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneProbe {
    pub a: Covector,
    pub b: Covector,
    /// gcd of the maximal-rank minors of `s·LP(a) + t·LP(b)`.
    pub minor_gcd: BinaryForm,
    /// Nonzero constant gcd: no nonzero point of the plane (over the
    /// closure) is irregular.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityProbe {
    pub alpha: Covector,
    pub regular: bool,
    /// `rank [LP(α) | Fix basis] = n`.
    pub transversal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// Always true: codimension of the irregular locus is probed, not decided.
    pub heuristic: bool,
    pub fixed_dim: usize,
    pub vacuous: bool,
    pub planes: Vec<PlaneProbe>,
    /// First certified plane, if any.
    pub certificate: Option<PlaneProbe>,
    /// An irregular nonzero point (or the origin when no 2-plane fits).
    pub counterexample: Option<Covector>,
    pub transversality: Vec<TransversalityProbe>,
    pub passed: bool,
}

/// Probes the two conditions on `S = Fix(ι*)` (or on `within`, when given):
/// irregular points of `S` have codimension ≥ 2, and regular orbits meet `S`
/// transversally.
///
/// A 2-plane `P ⊆ S` whose Lie–Poisson minors of size `n − rk g` have a
/// nonzero constant gcd meets the irregular cone only at the origin, and a
/// cone of codimension 1 in `S` would meet every 2-plane in a line; such a
/// plane therefore certifies the codimension condition. The echelon pair of
/// `S` is tried first, then `samples` random planes.
pub fn admissibility_probe(
    g: &LieAlgebraData,
    inv: &AntiInvolutionData,
    within: Option<&Subspace>,
    samples: usize,
    rng: &mut Rng8,
) -> Result<AdmissibilityReport> {
    let n = g.n();
    let s = match within {
        Some(w) if w.ambient_dim() != n => {
            return Err(Error::DimensionMismatch(format!("probe subspace must live in {n} dimensions")));
        }
        Some(w) => w.clone(),
        None => fixed_subspace(&inv.iota),
    };
    let d = s.dim();
    let r = algebra_rank(g).rank;
    let mut report = AdmissibilityReport {
        heuristic: true,
        fixed_dim: d,
        vacuous: d == 0,
        planes: Vec::new(),
        certificate: None,
        counterexample: None,
        transversality: Vec::new(),
        passed: false,
    };
    if d == 0 {
        report.passed = true;
        return Ok(report);
    }
    let basis = s.basis();
    let combo = |coeffs: &[Scalar]| -> Covector { basis.mul_vec(coeffs) };
    let abelian = g.is_abelian();

    if d == 1 {
        // The only cone of codimension ≥ 2 in a line is empty, yet the origin
        // is irregular unless g is abelian.
        if !abelian {
            report.counterexample = Some(vec![Scalar::zero(); n]);
        }
    } else {
        let mut candidates: Vec<(Covector, Covector)> = vec![(basis.col(0), basis.col(1))];
        for _ in 0..samples {
            let u: Vec<Scalar> = (0..d).map(|_| random::small_int(rng, 5)).collect();
            let v: Vec<Scalar> = (0..d).map(|_| random::small_int(rng, 5)).collect();
            let (a, b) = (combo(&u), combo(&v));
            if Subspace::from_vectors(n, &[a.clone(), b.clone()]).dim() == 2 {
                candidates.push((a, b));
            }
        }
        for (a, b) in candidates {
            let la = lie_poisson_matrix(g, &a)?;
            let lb = lie_poisson_matrix(g, &b)?;
            let minor_gcd = gcd_of_minors(&la, &lb, n - r);
            if minor_gcd.is_zero() && report.counterexample.is_none() {
                report.counterexample = Some(a.clone());
            }
            let probe = PlaneProbe { certified: minor_gcd.is_nonzero_constant(), a, b, minor_gcd };
            if probe.certified && report.certificate.is_none() {
                report.certificate = Some(probe.clone());
            }
            report.planes.push(probe);
            if report.certificate.is_some() {
                break;
            }
        }
    }

    for _ in 0..samples.max(1) {
        let coeffs: Vec<Scalar> = (0..d).map(|_| random::scalar(rng)).collect();
        let alpha = combo(&coeffs);
        let regular = is_regular(g, &alpha)?;
        let transversal = regular && lie_poisson_matrix(g, &alpha)?.hstack(basis).rank() == n;
        report.transversality.push(TransversalityProbe { alpha, regular, transversal });
    }
    let codim_ok = report.counterexample.is_none() && (report.certificate.is_some() || (d == 1 && abelian));
    let transversal_ok = report.transversality.iter().all(|t| !t.regular || t.transversal)
        && report.transversality.iter().any(|t| t.regular);
    report.passed = codim_ok && transversal_ok;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;
    use crate::lie_poisson::tables::builtin;

    fn sl2() -> LieAlgebraData {
        builtin("sl2").unwrap().algebra
    }

    fn perm(n: usize, p: &[usize]) -> Mat {
        Mat::from_fn(n, n, |i, j| if p[j] == i { int(1) } else { int(0) })
    }

    #[test]
    fn sl2_cartan_swap() {
        let g = sl2();
        let e = vec![int(1), int(0), int(0)];
        let f = vec![int(0), int(1), int(0)];
        let h = vec![int(0), int(0), int(1)];
        let inv = cartan_from_generators(&g, &[(e, f, h)]).unwrap();
        assert_eq!(inv.iota, perm(3, &[1, 0, 2]));
        assert_eq!(fixed_subspace(&inv.iota).dim(), 2);
        assert_eq!(check_antiinvolution(&g, &Mat::identity(3)), Err(Error::NotAntiAutomorphism(0, 1)));
        assert_eq!(check_antiinvolution(&g, &perm(3, &[1, 2, 0])), Err(Error::NotInvolution));
    }

    #[test]
    fn minus_identity_on_abelian() {
        let g = LieAlgebraData::abelian(3);
        let inv = check_antiinvolution(&g, &Mat::identity(3).scale(&int(-1))).unwrap();
        let rep = admissibility_probe(&g, &inv, None, 3, &mut random::seeded(0)).unwrap();
        assert!(rep.vacuous && rep.passed);
    }

    #[test]
    fn generators_that_do_not_span() {
        let g = builtin("sl3").unwrap().algebra;
        let t = builtin("sl3").unwrap().cartan.unwrap();
        assert!(matches!(cartan_from_generators(&g, &t[..1]), Err(Error::GeneratorsDontSpan(3))));
    }

    #[test]
    fn probes_on_sl2() {
        let g = sl2();
        let inv = check_antiinvolution(&g, &perm(3, &[1, 0, 2])).unwrap();
        let mut rng = random::seeded(1);
        let rep = admissibility_probe(&g, &inv, None, 4, &mut rng).unwrap();
        assert!(rep.passed);
        let cert = rep.certificate.unwrap();
        // the plane ⟨e* + f*, h*⟩
        assert_eq!(cert.a, vec![int(1), int(1), int(0)]);
        assert_eq!(cert.b, vec![int(0), int(0), int(1)]);
        // restricted to a line the origin is an irregular point of codimension 1
        let line = Subspace::from_vectors(3, &[vec![int(0), int(0), int(1)]]);
        let rep = admissibility_probe(&g, &inv, Some(&line), 4, &mut rng).unwrap();
        assert!(!rep.passed && rep.counterexample.is_some());
    }

    #[test]
    fn heisenberg_fixed_plane_is_irregular() {
        // [x, y] = z with ι = diag(1, 1, −1): Fix(ι*) = ⟨x*, y*⟩ where the bracket vanishes
        let g = LieAlgebraData::new(3, [(0, 1, vec![(2, int(1))])]).unwrap();
        let iota = Mat::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let inv = check_antiinvolution(&g, &iota).unwrap();
        let rep = admissibility_probe(&g, &inv, None, 3, &mut random::seeded(2)).unwrap();
        assert!(!rep.passed);
        assert!(rep.certificate.is_none() && rep.counterexample.is_some());
    }

    #[test]
    fn transport_of_kernels() {
        let g = sl2();
        let inv = check_antiinvolution(&g, &perm(3, &[1, 0, 2])).unwrap();
        let lambdas = [int(0), int(3), int(-2)];
        let rep =
            transport_check(&g, &inv, &[int(0), int(0), int(1)], &[int(2), int(5), int(-1)], &lambdas).unwrap();
        assert_eq!(rep.sign, ParameterSign::Same);
        assert!(rep.holds());
        let rep =
            transport_check(&g, &inv, &[int(1), int(-1), int(0)], &[int(2), int(5), int(-1)], &lambdas).unwrap();
        assert_eq!(rep.sign, ParameterSign::Flipped);
        assert!(rep.holds());
    }
}
