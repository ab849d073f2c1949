//! Principal-parts bundles `P^kO(d)` on `P^n`: splitting type, the Taylor
//! truncation maps on global sections and their ranks, and fiberwise ranks
//! of `η^{k−d}`.
//!
//! For `d >= k` the truncation `H^0 P^kO(d) → H^0 P^hO(d)` is the map
//! `η^{k−h} = Σ_{|L| = k−h} binom(k−h, L) ∂^L ⊗ x^L` from
//! `S^kV ⊗ S^{d−k}V` to `S^hV ⊗ S^{d−h}V`. Matrices use tensor bases
//! `x^I ⊗ x^A`, left factor outer, both in graded-lex order; columns index
//! the domain.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bott::{h0_pp_dim, h0_q_twist};
use crate::diffop::derivative_coefficient;
use crate::error::{invalid, Error, Result};
use crate::linalg::{certified_rank, rank_exact, RankMethod, RankPolicy, RationalMatrix};
use crate::partitions::{binomial, monomial_basis, multinomial, MultiIndex};
use crate::quiver::{stability_q, IrreducibleSummand, StabilityVerdict};
use crate::schur::GModuleSum;

/// Environment variable capping the worker count of grid sweeps.
pub const THREADS_ENV: &str = "JETQUIVER_THREADS";

fn rank_p(n: usize, k: u32) -> u128 {
    binomial(k as u64 + n as u64, n as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SplittingCase {
    /// `d >= k` or `d < 0`: `P^kO(d) ≅ S^kV ⊗ O(d − k)`.
    Trivializing,
    /// `0 <= d < k`: `P^kO(d) ≅ Q_{k,d} ⊕ S^dV ⊗ O`.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub n: usize,
    pub k: u32,
    pub d: i64,
    #[serde(flatten)]
    pub case: SplittingCase,
    /// Human-readable direct summands.
    pub summands: Vec<String>,
    /// `gr P^kO(d) = ⊕_{i=0}^k S^iΩ(d)`.
    pub graded: Vec<IrreducibleSummand>,
    pub total_rank: u128,
    /// `gr Q_{k,d} = ⊕_{i=d+1}^k S^iΩ(d)` in the split case.
    pub q_graded: Vec<IrreducibleSummand>,
    pub q_rank: Option<u128>,
    /// Only for the split case with `n >= 2`.
    pub stability: Option<StabilityVerdict>,
}

/// `binom(k+n, n) − binom(d+n, n)` and `Σ_{i=0}^{k−d−1} binom(k−i+n−1, n−1)`.
pub fn q_rank_identity(n: usize, k: u32, d: u32) -> (u128, u128) {
    assert!(d < k && n >= 1);
    let lhs = rank_p(n, k) - rank_p(n, d);
    let rhs = (0..k - d)
        .map(|i| binomial((k - i) as u64 + n as u64 - 1, n as u64 - 1))
        .sum();
    (lhs, rhs)
}

pub fn splitting_type(n: usize, k: u32, d: i64) -> Result<SplittingReport> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    let graded: Vec<IrreducibleSummand> = (0..=k)
        .map(|i| IrreducibleSummand::sym_omega(n, i, d))
        .collect::<Result<_>>()?;
    let total_rank = rank_p(n, k);
    let graded_rank: u128 = graded.iter().map(IrreducibleSummand::rank).sum();
    assert_eq!(graded_rank, total_rank, "graded pieces must fill the rank");

    if d >= k as i64 || d < 0 {
        let twist = d - k as i64;
        return Ok(SplittingReport {
            n,
            k,
            d,
            case: SplittingCase::Trivializing,
            summands: vec![format!("S^{k}V ⊗ O({twist})")],
            graded,
            total_rank,
            q_graded: Vec::new(),
            q_rank: None,
            stability: None,
        });
    }
    let du = d as u32;
    let (q_rank, check) = q_rank_identity(n, k, du);
    assert_eq!(q_rank, check, "rank identity failed for n={n} k={k} d={d}");
    let q_graded = graded[du as usize + 1..].to_vec();
    assert_eq!(
        q_graded.iter().map(IrreducibleSummand::rank).sum::<u128>(),
        q_rank
    );
    let stability = if n >= 2 {
        Some(stability_q(n, k, d)?)
    } else {
        None
    };
    Ok(SplittingReport {
        n,
        k,
        d,
        case: SplittingCase::Split,
        summands: vec![format!("Q_({k},{d})"), format!("S^{d}V ⊗ O")],
        graded,
        total_rank,
        q_graded,
        q_rank: Some(q_rank),
        stability,
    })
}

/// Basis `x^I ⊗ x^A` of `S^{left}V ⊗ S^{right}V`.
pub fn tensor_basis(n: usize, left: u32, right: u32) -> Vec<(MultiIndex, MultiIndex)> {
    let rights = monomial_basis(n, right);
    monomial_basis(n, left)
        .into_iter()
        .flat_map(|i| rights.iter().map(move |a| (i.clone(), a.clone())))
        .collect()
}

fn check_order(n: usize, d: i64, k: u32, h: u32) -> Result<()> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    if !(d >= k as i64 && k >= h) {
        return invalid(format!(
            "truncation matrix needs d >= k >= h >= 0, got d={d} k={k} h={h}"
        ));
    }
    Ok(())
}

/// Matrix of `η^{k−h}: S^kV ⊗ S^{d−k}V → S^hV ⊗ S^{d−h}V`.
pub fn truncation_matrix(n: usize, d: i64, k: u32, h: u32) -> Result<RationalMatrix> {
    check_order(n, d, k, h)?;
    let du = d as u32;
    let domain = tensor_basis(n, k, du - k);
    let codomain = tensor_basis(n, h, du - h);
    let row_of: HashMap<&(MultiIndex, MultiIndex), usize> =
        codomain.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let step = k - h;
    let orders: Vec<(MultiIndex, BigInt)> = monomial_basis(n, step)
        .into_iter()
        .map(|l| {
            let c = BigInt::from(multinomial(step as u64, &l).expect("degree matches"));
            (l, c)
        })
        .collect();
    let mut m = RationalMatrix::zeros(codomain.len(), domain.len());
    for (col, (i, a)) in domain.iter().enumerate() {
        for (l, weight) in &orders {
            if !i.dominates(l) {
                continue;
            }
            let key = (i.sub(l), a.add(l));
            let row = row_of[&key];
            let v = weight * derivative_coefficient(i, l);
            m.add_to(row, col, BigRational::from_integer(v));
        }
    }
    Ok(m)
}

/// Matrix of `Σ_{|L|=m} binom(m, L) p^L ∂^L : S^kV → S^{k−m}V`, the fiber
/// of `η^m` at the point `p`.
pub fn fiber_matrix(n: usize, k: u32, m: u32, point: &[BigRational]) -> Result<RationalMatrix> {
    if point.len() != n + 1 {
        return invalid(format!("point must have {} coordinates", n + 1));
    }
    if point.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPoint);
    }
    if m > k {
        return invalid(format!("need m <= k, got m={m} k={k}"));
    }
    let domain = monomial_basis(n, k);
    let codomain = monomial_basis(n, k - m);
    let row_of: HashMap<&MultiIndex, usize> =
        codomain.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut out = RationalMatrix::zeros(codomain.len(), domain.len());
    for l in monomial_basis(n, m) {
        let weight = BigInt::from(multinomial(m as u64, &l).expect("degree matches"));
        let p_pow = point
            .iter()
            .zip(&l.0)
            .fold(BigRational::one(), |acc, (c, &e)| {
                acc * num_traits::pow(c.clone(), e as usize)
            });
        if p_pow.is_zero() {
            continue;
        }
        for (col, i) in domain.iter().enumerate() {
            if !i.dominates(&l) {
                continue;
            }
            let coeff = BigRational::from_integer(&weight * derivative_coefficient(i, &l));
            out.add_to(row_of[&i.sub(&l)], col, coeff * &p_pow);
        }
    }
    Ok(out)
}

/// A nonzero integer point with coordinates in `[-5, 5]`.
pub fn random_fiber_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<i64> {
    loop {
        let p: Vec<i64> = (0..=n).map(|_| rng.gen_range(-5..=5)).collect();
        if p.iter().any(|&c| c != 0) {
            return p;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub n: usize,
    pub k: u32,
    pub d: u32,
    /// `binom(d+n, n)`, the rank of `S^dV`.
    pub expected_rank: u128,
    pub points: Vec<Vec<i64>>,
    pub ranks: Vec<usize>,
    pub surjective_everywhere: bool,
}

/// Ranks of the fiber maps of `η^{k−d}: S^kV ⊗ O(d−k) → S^dV ⊗ O` at
/// `samples` seeded random points.
pub fn fiber_ranks(n: usize, k: u32, d: u32, samples: usize, seed: u64) -> Result<FiberReport> {
    if d >= k {
        return invalid(format!("need k > d, got k={k} d={d}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<i64>> = (0..samples)
        .map(|_| random_fiber_point(&mut rng, n))
        .collect();
    fiber_ranks_at(n, k, d, points)
}

pub fn fiber_ranks_at(n: usize, k: u32, d: u32, points: Vec<Vec<i64>>) -> Result<FiberReport> {
    let ranks = points
        .iter()
        .map(|p| {
            let q: Vec<BigRational> = p
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect();
            fiber_matrix(n, k, k - d, &q).map(|m| rank_exact(&m))
        })
        .collect::<Result<Vec<_>>>()?;
    let expected_rank = rank_p(n, d);
    Ok(FiberReport {
        n,
        k,
        d,
        expected_rank,
        surjective_everywhere: ranks.iter().all(|&r| r as u128 == expected_rank),
        points,
        ranks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Certification {
    Exact,
    Modular {
        primes: Vec<u64>,
    },
    /// `d < 0`: every space of sections vanishes.
    Vanishing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixParams {
    pub d: i64,
    pub k: u32,
    pub h: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    pub n: usize,
    pub d: i64,
    pub k: u32,
    pub h: u32,
    pub dim_domain: u128,
    pub dim_codomain: u128,
    pub rank: u128,
    pub maximal: bool,
    pub kernel_dim: u128,
    pub injective: bool,
    pub surjective: bool,
    /// The `η` matrix whose rank was taken. Differs from `(d, k, h)` when
    /// `k > d`: sections of `P^kO(d)` then factor through `P^dO(d)`.
    pub matrix: Option<MatrixParams>,
    pub certificate: Certification,
}

/// Rank of `H^0 P^kO(d) → H^0 P^hO(d)`.
pub fn truncation_rank(
    n: usize,
    d: i64,
    k: u32,
    h: u32,
    policy: &RankPolicy,
) -> Result<TruncationReport> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    if h > k {
        return invalid(format!("need h <= k, got h={h} k={k}"));
    }
    let dim_domain = h0_pp_dim(n, k, d);
    let dim_codomain = h0_pp_dim(n, h, d);
    let (rank, matrix, certificate) = if d < 0 {
        (0, None, Certification::Vanishing)
    } else {
        // for k > d the domain is H^0 P^dO(d) = S^dV; for h > d so is the target
        let params = MatrixParams {
            d,
            k: k.min(d as u32),
            h: h.min(d as u32),
        };
        let m = truncation_matrix(n, d, params.k, params.h)?;
        debug_assert_eq!(m.cols() as u128, dim_domain);
        debug_assert_eq!(m.rows() as u128, dim_codomain);
        let cert = certified_rank(&m, policy)?;
        let method = match cert.method {
            RankMethod::Exact => Certification::Exact,
            RankMethod::Modular { primes } => Certification::Modular { primes },
        };
        (cert.rank as u128, Some(params), method)
    };
    Ok(TruncationReport {
        n,
        d,
        k,
        h,
        dim_domain,
        dim_codomain,
        rank,
        maximal: rank == dim_domain.min(dim_codomain),
        kernel_dim: dim_domain - rank,
        injective: rank == dim_domain,
        surjective: rank == dim_codomain,
        matrix,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub kernel_dim: u128,
    pub bott_module: GModuleSum,
    pub bott_dim: u128,
    pub agrees: bool,
    pub certificate: Certification,
}

/// Compares the kernel of the truncation map with `H^0 Q_{k,h}(d−h)`.
pub fn cross_check_kernel(
    n: usize,
    d: i64,
    k: u32,
    h: u32,
    policy: &RankPolicy,
) -> Result<CrossCheckReport> {
    if !(d >= k as i64 && k > h) {
        return invalid(format!(
            "cross-check needs d >= k > h >= 0, got d={d} k={k} h={h}"
        ));
    }
    let report = truncation_rank(n, d, k, h, policy)?;
    let bott_module = h0_q_twist(n, k, h, d)?;
    let bott_dim = bott_module.dimension();
    Ok(CrossCheckReport {
        kernel_dim: report.kernel_dim,
        agrees: report.kernel_dim == bott_dim,
        bott_module,
        bott_dim,
        certificate: report.certificate,
    })
}

/// Checks that the `(d, d−h, d−k)` truncation matrix equals
/// `Δ⁻¹ · swap(Mᵀ) · Δ` for `M` the `(d, k, h)` one, where `swap`
/// exchanges the tensor factors and `Δ(x^I ⊗ x^A) = I! A!`.
pub fn verify_self_adjoint(n: usize, d: i64, k: u32, h: u32) -> Result<bool> {
    check_order(n, d, k, h)?;
    let du = d as u32;
    let m = truncation_matrix(n, d, k, h)?;
    let dual = truncation_matrix(n, d, du - h, du - k)?;
    if m.nnz() != dual.nnz() {
        return Ok(false);
    }
    let dom = tensor_basis(n, k, du - k);
    let cod = tensor_basis(n, h, du - h);
    let dual_dom: HashMap<_, usize> = tensor_basis(n, du - h, h)
        .into_iter()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    let dual_cod: HashMap<_, usize> = tensor_basis(n, du - k, k)
        .into_iter()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    let fact = |x: &MultiIndex| BigInt::from(x.factorial());
    for (row, col, v) in m.entries() {
        let (j, b) = &cod[row];
        let (i, a) = &dom[col];
        let scale = BigRational::new(fact(j) * fact(b), fact(i) * fact(a));
        let r = dual_cod[&(a.clone(), i.clone())];
        let c = dual_dom[&(b.clone(), j.clone())];
        if dual.get(r, c) != v * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GridPoint {
    pub n: usize,
    pub d: i64,
    pub k: u32,
    pub h: u32,
}

/// All `(n, d, k, h)` with `1 <= n <= max_n` and `0 <= h < k <= d <= max_d`.
pub fn truncation_grid(max_n: usize, max_d: u32) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for d in 0..=max_d {
            for k in 1..=d {
                for h in 0..k {
                    out.push(GridPoint {
                        n,
                        d: d as i64,
                        k,
                        h,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub point: GridPoint,
    pub report: TruncationReport,
    pub bott_dim: u128,
    /// Rank equals `min(dim_domain, dim_codomain)`.
    pub maximal_rank: bool,
    /// Kernel dimension equals `dim H^0 Q_{k,h}(d−h)`.
    pub kernel_matches_bott: bool,
    /// Injective exactly when `d <= h + k`.
    pub injectivity_boundary: bool,
    /// `dim_domain <= dim_codomain` exactly when `d − k <= h`.
    pub dimension_criterion: bool,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.maximal_rank
            && self.kernel_matches_bott
            && self.injectivity_boundary
            && self.dimension_criterion
    }
}

fn sweep_point(point: GridPoint, policy: &RankPolicy) -> Result<SweepRow> {
    let GridPoint { n, d, k, h } = point;
    let report = truncation_rank(n, d, k, h, policy)?;
    let bott_dim = h0_q_twist(n, k, h, d)?.dimension();
    Ok(SweepRow {
        point,
        maximal_rank: report.maximal,
        kernel_matches_bott: report.kernel_dim == bott_dim,
        injectivity_boundary: (report.kernel_dim == 0) == (d <= (h + k) as i64),
        dimension_criterion: (report.dim_domain <= report.dim_codomain)
            == (d - k as i64 <= h as i64),
        report,
        bott_dim,
    })
}

/// A rayon pool sized by [`THREADS_ENV`], or the machine default.
pub fn sweep_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Runs every grid point in parallel; rows come back sorted by point.
pub fn sweep(points: &[GridPoint], policy: &RankPolicy) -> Result<Vec<SweepRow>> {
    let mut rows: Vec<SweepRow> = sweep_pool().install(|| {
        points
            .par_iter()
            .map(|&p| sweep_point(p, policy))
            .collect::<Result<_>>()
    })?;
    rows.sort_by_key(|r| r.point);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn exact() -> RankPolicy {
        RankPolicy::default()
    }

    #[test]
    fn splitting_examples() {
        let r = splitting_type(2, 3, 5).unwrap();
        assert_eq!(r.case, SplittingCase::Trivializing);
        assert_eq!(r.summands, vec!["S^3V ⊗ O(2)"]);
        assert_eq!(r.total_rank, 10);

        let r = splitting_type(2, 2, 0).unwrap();
        assert_eq!(r.case, SplittingCase::Split);
        assert_eq!(r.q_rank, Some(5));
        assert_eq!(
            r.q_graded.iter().map(|s| s.rank()).collect::<Vec<_>>(),
            vec![2, 3]
        );
        assert!(r.stability.as_ref().unwrap().stable);

        let r = splitting_type(1, 2, 0).unwrap();
        assert_eq!(r.case, SplittingCase::Split);
        assert!(r.stability.is_none());
        let twists: Vec<i128> = r.q_graded.iter().map(|s| s.c1()).collect();
        assert_eq!(twists, vec![-2, -4]);

        let r = splitting_type(3, 2, -1).unwrap();
        assert_eq!(r.case, SplittingCase::Trivializing);
    }

    #[test]
    fn rank_identity_grid() {
        for n in 1..=4 {
            for k in 1..=10 {
                for d in 0..k {
                    let (a, b) = q_rank_identity(n, k, d);
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn truncation_matrix_examples() {
        let m = truncation_matrix(1, 1, 1, 0).unwrap();
        assert_eq!(m, RationalMatrix::identity(2));

        let m = truncation_matrix(1, 2, 2, 1).unwrap();
        // codomain x0⊗x0, x0⊗x1, x1⊗x0, x1⊗x1
        let expected = RationalMatrix::from_integers(&[
            vec![2, 0, 0],
            vec![0, 1, 0],
            vec![0, 1, 0],
            vec![0, 0, 2],
        ]);
        assert_eq!(m, expected);

        let m = truncation_matrix(2, 4, 3, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (30, 30));

        assert!(truncation_matrix(2, 2, 3, 1).is_err());
        assert!(truncation_matrix(2, 4, 1, 3).is_err());
    }

    #[test]
    fn truncation_rank_examples() {
        let r = truncation_rank(2, 6, 3, 1, &exact()).unwrap();
        assert_eq!(
            (r.dim_domain, r.dim_codomain, r.rank, r.kernel_dim),
            (100, 63, 63, 37)
        );
        assert!(r.maximal && r.surjective && !r.injective);

        let r = truncation_rank(1, 2, 2, 1, &exact()).unwrap();
        assert_eq!((r.dim_domain, r.dim_codomain, r.rank), (3, 4, 3));
        assert!(r.injective);

        for k in 0..4 {
            for h in 0..=k {
                let r = truncation_rank(3, -2, k, h, &exact()).unwrap();
                assert_eq!(r.rank, 0);
                assert_eq!(r.certificate, Certification::Vanishing);
            }
        }
        assert!(truncation_rank(2, 3, 1, 2, &exact()).is_err());
    }

    #[test]
    fn truncation_below_order_factors_through_sym() {
        // k > d >= h: sections are S^dV on the source side
        let r = truncation_rank(2, 2, 5, 1, &exact()).unwrap();
        assert_eq!(r.dim_domain, 6);
        assert_eq!(r.matrix, Some(MatrixParams { d: 2, k: 2, h: 1 }));
        assert_eq!(r.rank, 6);
        // d < h <= k: both sides are S^dV
        let r = truncation_rank(2, 1, 4, 3, &exact()).unwrap();
        assert_eq!((r.dim_domain, r.dim_codomain, r.rank), (3, 3, 3));
    }

    #[test]
    fn fiber_examples() {
        let m = fiber_matrix(1, 1, 1, &[q(1), q(0)]).unwrap();
        assert_eq!(m, RationalMatrix::from_integers(&[vec![1, 0]]));
        assert_eq!(rank_exact(&m), 1);

        let m = fiber_matrix(2, 2, 2, &[q(1), q(1), q(1)]).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 6));
        assert_eq!(rank_exact(&m), 1);

        let r = fiber_ranks(2, 3, 1, 20, 0).unwrap();
        assert!(r.surjective_everywhere);
        assert_eq!(r.expected_rank, 3);
        assert_eq!(r.ranks.len(), 20);

        assert_eq!(
            fiber_matrix(2, 2, 1, &[q(0), q(0), q(0)]),
            Err(Error::ZeroPoint)
        );
    }

    #[test]
    fn cross_check_examples() {
        let c = cross_check_kernel(2, 6, 3, 1, &exact()).unwrap();
        assert!(c.agrees);
        assert_eq!(c.kernel_dim, 37);
        let c = cross_check_kernel(2, 4, 3, 1, &exact()).unwrap();
        assert!(c.agrees);
        assert_eq!(c.kernel_dim, 0);
        assert!(cross_check_kernel(1, 3, 2, 1, &exact()).unwrap().agrees);
        assert!(cross_check_kernel(1, 3, 2, 2, &exact()).is_err());
    }

    #[test]
    fn factorization_through_single_steps() {
        for n in 1..=2 {
            for d in 1..=5i64 {
                for k in 1..=d as u32 {
                    for h in 0..k {
                        let direct = truncation_matrix(n, d, k, h).unwrap();
                        let mut composed = truncation_matrix(n, d, h + 1, h).unwrap();
                        for j in h + 2..=k {
                            composed = composed
                                .mul(&truncation_matrix(n, d, j, j - 1).unwrap())
                                .unwrap();
                        }
                        assert_eq!(direct, composed, "n={n} d={d} k={k} h={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn self_adjoint_scaling() {
        for n in 1..=3 {
            for d in 0..=5i64 {
                for k in 0..=d as u32 {
                    for h in 0..=k {
                        assert!(
                            verify_self_adjoint(n, d, k, h).unwrap(),
                            "n={n} d={d} k={k} h={h}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rank_symmetry_under_duality() {
        for n in 1..=3 {
            for d in 0..=6i64 {
                for k in 0..=d as u32 {
                    for h in 0..=k {
                        let du = d as u32;
                        let a = rank_exact(&truncation_matrix(n, d, k, h).unwrap());
                        let b = rank_exact(&truncation_matrix(n, d, du - h, du - k).unwrap());
                        assert_eq!(a, b, "n={n} d={d} k={k} h={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn modular_policy_agrees_with_exact() {
        let modular = RankPolicy {
            exact_limit: 0,
            ..RankPolicy::default()
        };
        for (n, d, k, h) in [(2, 6, 3, 1), (3, 5, 2, 1), (2, 4, 3, 1)] {
            let a = truncation_rank(n, d, k, h, &exact()).unwrap();
            let b = truncation_rank(n, d, k, h, &modular).unwrap();
            assert_eq!(a.rank, b.rank);
            assert!(matches!(b.certificate, Certification::Modular { .. }));
        }
    }

    #[test]
    fn small_sweep_is_sorted_and_green() {
        let points = truncation_grid(2, 4);
        let rows = sweep(&points, &exact()).unwrap();
        assert_eq!(rows.len(), points.len());
        assert!(rows.windows(2).all(|w| w[0].point < w[1].point));
        assert!(rows.iter().all(SweepRow::passed));
    }
}
