//! Cohomology of `S^iΩ(l)` on `P^n` from Bott's theorem, and the global
//! sections of `P^kO(d)` and of the truncation kernels `Q_{k,h}(d−h)`.
//!
//! Only the two Weyl-chamber positions that arise for symmetric powers of
//! `Ω` are handled: the weight `λ + g` is either strictly dominant (`H^0`),
//! or becomes so after the simple reflection `s_1` (`H^1`). Anything else
//! is either singular (all cohomology vanishes) or flagged as possibly
//! having `H^j`, `j >= 2`.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::partitions::{binomial, Partition};
use crate::schur::GModuleSum;

/// An `SL(n+1)` weight in the basis of fundamental weights `λ_1, …, λ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    /// `g = λ_1 + ⋯ + λ_n`.
    pub fn rho(n: usize) -> Self {
        Weight(vec![1; n])
    }

    /// Highest weight of the `P`-module giving `S^iΩ(l)`:
    /// `(l − 2i) λ_1 + i λ_2`, or `(l − 2i) λ_1` on `P^1`.
    pub fn sym_omega(n: usize, i: i64, l: i64) -> Self {
        let mut w = vec![0; n];
        w[0] = l - 2 * i;
        if n >= 2 {
            w[1] = i;
        }
        Weight(w)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Strictly inside the dominant chamber.
    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|&a| a > 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Simple reflection `s_j(λ) = λ − ⟨λ, α_j^∨⟩ α_j` with
    /// `α_j = 2λ_j − λ_{j−1} − λ_{j+1}` (zero-based `j`).
    pub fn reflect(&self, j: usize) -> Weight {
        let a = self.0[j];
        let mut out = self.0.clone();
        out[j] -= 2 * a;
        if j > 0 {
            out[j - 1] += a;
        }
        if j + 1 < out.len() {
            out[j + 1] += a;
        }
        Weight(out)
    }

    /// The partition with `p_j = Σ_{t >= j} a_t`, for dominant weights.
    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_dominant() {
            return None;
        }
        let mut parts = vec![0u32; self.0.len()];
        let mut acc = 0i64;
        for j in (0..self.0.len()).rev() {
            acc += self.0[j];
            parts[j] = u32::try_from(acc).ok()?;
        }
        Partition::new(parts).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymOmegaCohomology {
    pub n: usize,
    pub i: u32,
    pub l: i64,
    pub h0: GModuleSum,
    pub h1: GModuleSum,
    /// Both `H^0` and `H^1` vanish, the weight is not the singular
    /// `l = 2i − 1` one, and `l < i − 1`: some `H^j` with `j >= 2` may be
    /// nonzero and is not computed.
    pub higher_possible: bool,
}

/// `H^0` and `H^1` of `S^iΩ(l)` on `P^n`, as `SL(n+1)`-modules.
///
/// Modules are reported with the two-row partitions `(l−i, i)` and
/// `(i−1, l−i+1)`. On `P^1` every `S^iΩ(l) = O(l − 2i)` is a line bundle
/// with no higher cohomology, so `H^1` is also reported when `l < i − 1`
/// (as the one-row partition `(2i − l − 2)`).
pub fn cohomology_sym_omega(n: usize, i: u32, l: i64) -> Result<SymOmegaCohomology> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    let ambient = n + 1;
    let ii = i as i64;
    let shifted = Weight::sym_omega(n, ii, l).add(&Weight::rho(n));
    let mut h0 = GModuleSum::zero(ambient);
    let mut h1 = GModuleSum::zero(ambient);

    if shifted.is_regular_dominant() {
        let from_weight = shifted
            .sub(&Weight::rho(n))
            .to_partition()
            .expect("dominant");
        let lambda = Partition::two_rows(l - ii, ii).expect("l >= 2i here");
        assert_eq!(
            lambda.sl_normalized(ambient),
            from_weight,
            "weight/partition mismatch"
        );
        h0.add(lambda, 1)?;
    } else {
        let reflected = shifted.reflect(0);
        if reflected.is_regular_dominant() {
            let from_weight = reflected
                .sub(&Weight::rho(n))
                .to_partition()
                .expect("dominant");
            let nu = Partition::two_rows(ii - 1, l - ii + 1).unwrap_or_else(|| from_weight.clone());
            assert_eq!(
                nu.sl_normalized(ambient),
                from_weight,
                "weight/partition mismatch"
            );
            h1.add(nu, 1)?;
        }
    }
    let higher_possible = n >= 2 && h0.is_empty() && h1.is_empty() && l != 2 * ii - 1 && l < ii - 1;
    Ok(SymOmegaCohomology {
        n,
        i,
        l,
        h0,
        h1,
        higher_possible,
    })
}

/// `H^0(Q_{k,h}(d − h))`, the kernel of the truncation map on sections.
///
/// The graded pieces are `S^iΩ(d)` for `i = h+1, …, k`. A nonzero
/// `H^0 S^iΩ(d) = U` survives unless some `S^jΩ(d)` with `j <= k` has
/// `H^1 = U`.
pub fn h0_q_twist(n: usize, k: u32, h: u32, d: i64) -> Result<GModuleSum> {
    if k <= h {
        return invalid(format!("need k > h, got k={k} h={h}"));
    }
    let ambient = n + 1;
    let h1_modules: Vec<GModuleSum> = (0..=k)
        .map(|j| cohomology_sym_omega(n, j, d).map(|c| c.h1))
        .collect::<Result<_>>()?;
    let mut out = GModuleSum::zero(ambient);
    for i in h + 1..=k {
        let c = cohomology_sym_omega(n, i, d)?;
        for (u, mult) in c.h0.terms() {
            let cancelled = h1_modules.iter().any(|m| m.contains_sl(u));
            if !cancelled {
                out.add(u.clone(), *mult)?;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SectionsCase {
    /// `S^kV ⊗ S^{d−k}V`, `d >= k`.
    Tensor { left: u32, right: u32 },
    /// `S^dV`, `0 <= d < k`.
    Sym { degree: u32 },
    /// `d < 0`.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalPartsSections {
    #[serde(flatten)]
    pub case: SectionsCase,
    /// Irreducible decomposition; the tensor case is expanded by Pieri as
    /// `⊕_{j <= min(k, d−k)} S_{(d−j, j)}`.
    pub module: GModuleSum,
}

impl PrincipalPartsSections {
    pub fn dimension(&self) -> u128 {
        self.module.dimension()
    }
}

impl fmt::Display for PrincipalPartsSections {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.case {
            SectionsCase::Tensor { left, right } => write!(f, "S^{left}V ⊗ S^{right}V"),
            SectionsCase::Sym { degree } => write!(f, "S^{degree}V"),
            SectionsCase::Zero => write!(f, "0"),
        }
    }
}

/// `H^0(P^kO(d))`.
pub fn h0_pp(n: usize, k: u32, d: i64) -> Result<PrincipalPartsSections> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    let ambient = n + 1;
    let mut module = GModuleSum::zero(ambient);
    let case = if d >= k as i64 {
        let right = (d - k as i64) as u32;
        for j in 0..=k.min(right) as i64 {
            module.add(Partition::two_rows(d - j, j).expect("d - j >= j"), 1)?;
        }
        SectionsCase::Tensor { left: k, right }
    } else if d >= 0 {
        module.add(Partition::row(d as u32), 1)?;
        SectionsCase::Sym { degree: d as u32 }
    } else {
        SectionsCase::Zero
    };
    Ok(PrincipalPartsSections { case, module })
}

/// `dim H^0(P^kO(d))` from the closed form.
pub fn h0_pp_dim(n: usize, k: u32, d: i64) -> u128 {
    let (n64, k64) = (n as u64, k as u64);
    if d >= k as i64 {
        binomial(k64 + n64, n64) * binomial(d as u64 - k64 + n64, n64)
    } else if d >= 0 {
        binomial(d as u64 + n64, n64)
    } else {
        0
    }
}
