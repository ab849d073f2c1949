//! Exact action of the Euler operator `ξ = Σ x_i ⊗ ∂_i`, its powers, and the
//! partner operator `η = Σ ∂_i ⊗ x_i` on homogeneous Laurent expressions.
//!
//! Derivatives of Laurent monomials use falling factorials, so negative
//! exponents are fine: `∂^I x^A = ∏_j A_j (A_j − 1) ⋯ (A_j − i_j + 1) · x^{A−I}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{monomial_basis, multinomial, MultiIndex};

/// `a (a − 1) ⋯ (a − i + 1)`.
pub fn falling_factorial(a: i64, i: i64) -> BigInt {
    debug_assert!(i >= 0);
    (0..i).fold(BigInt::one(), |acc, t| acc * BigInt::from(a - t))
}

/// Coefficient `c` with `∂^I x^A = c · x^{A−I}`.
pub fn derivative_coefficient(exponent: &MultiIndex, order: &MultiIndex) -> BigInt {
    exponent
        .0
        .iter()
        .zip(&order.0)
        .fold(BigInt::one(), |acc, (&a, &i)| acc * falling_factorial(a, i))
}

/// A homogeneous rational combination of Laurent monomials in `x_0, …, x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentCombo {
    nvars: usize,
    degree: i64,
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl LaurentCombo {
    pub fn zero(nvars: usize, degree: i64) -> Self {
        LaurentCombo {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff · x^exponent`; the degree is read off the exponent.
    pub fn monomial(coeff: BigRational, exponent: MultiIndex) -> Self {
        let mut f = Self::zero(exponent.len(), exponent.degree());
        f.add_term(exponent, coeff)
            .expect("degree matches by construction");
        f
    }

    pub fn add_term(&mut self, exponent: MultiIndex, coeff: BigRational) -> Result<()> {
        if exponent.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "exponent {exponent} has length {}, expected {}",
                exponent.len(),
                self.nvars
            )));
        }
        if exponent.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: exponent.degree(),
            });
        }
        accumulate(&mut self.terms, exponent, coeff);
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, BigRational>, key: K, coeff: BigRational) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// An element of `S^kV ⊗ C(x)`: a combination of `x^I ⊗ x^A` with `|I| = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    nvars: usize,
    left_degree: u32,
    terms: BTreeMap<(MultiIndex, MultiIndex), BigRational>,
}

impl TensorElement {
    pub fn zero(nvars: usize, left_degree: u32) -> Self {
        TensorElement {
            nvars,
            left_degree,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ f`.
    pub fn unit(f: &LaurentCombo) -> Self {
        let mut t = Self::zero(f.nvars, 0);
        for (a, c) in &f.terms {
            accumulate(
                &mut t.terms,
                (MultiIndex::zero(f.nvars), a.clone()),
                c.clone(),
            );
        }
        t
    }

    pub fn add_term(
        &mut self,
        left: MultiIndex,
        right: MultiIndex,
        coeff: BigRational,
    ) -> Result<()> {
        if left.len() != self.nvars || right.len() != self.nvars {
            return Err(Error::InvalidArgument("exponent length mismatch".into()));
        }
        if !left.is_polynomial() {
            return Err(Error::InvalidArgument(format!(
                "left factor {left} must be a polynomial monomial"
            )));
        }
        if left.degree() != self.left_degree as i64 {
            return Err(Error::DegreeMismatch {
                expected: self.left_degree as i64,
                found: left.degree(),
            });
        }
        accumulate(&mut self.terms, (left, right), coeff);
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn left_degree(&self) -> u32 {
        self.left_degree
    }

    pub fn terms(&self) -> &BTreeMap<(MultiIndex, MultiIndex), BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &BigRational) -> TensorElement {
        let mut out = Self::zero(self.nvars, self.left_degree);
        for (key, c) in &self.terms {
            accumulate(&mut out.terms, key.clone(), c * s);
        }
        out
    }

    /// Terms where `self` and `other` differ, as `(left, right, self, other)`.
    pub fn diff(&self, other: &TensorElement) -> Vec<TermDiscrepancy> {
        let zero = BigRational::zero();
        let mut keys: Vec<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|key| {
                let a = self.terms.get(key).unwrap_or(&zero);
                let b = other.terms.get(key).unwrap_or(&zero);
                (a != b).then(|| TermDiscrepancy {
                    left: key.0.clone(),
                    right: key.1.clone(),
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                })
            })
            .collect()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((l, r), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) x^{l}⊗x^{r}")?;
        }
        Ok(())
    }
}

/// `ξ^k(f) = Σ_{|I|=k} binom(k, I) x^I ⊗ ∂^I f`.
pub fn xi_power(f: &LaurentCombo, k: u32) -> TensorElement {
    let n = f.nvars - 1;
    let mut out = TensorElement::zero(f.nvars, k);
    for index in monomial_basis(n, k) {
        let weight = BigInt::from(multinomial(k as u64, &index).expect("basis has degree k"));
        for (a, c) in &f.terms {
            let d = derivative_coefficient(a, &index);
            if d.is_zero() {
                continue;
            }
            let coeff = c * BigRational::from_integer(&weight * d);
            accumulate(&mut out.terms, (index.clone(), a.sub(&index)), coeff);
        }
    }
    out
}

/// One application of `ξ = Σ x_i ⊗ ∂_i` acting on the right factor.
pub fn xi_apply(t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.nvars, t.left_degree + 1);
    for ((l, r), c) in &t.terms {
        for j in 0..t.nvars {
            if r.0[j] == 0 {
                continue;
            }
            let e = MultiIndex::unit(t.nvars, j);
            let coeff = c * BigRational::from_integer(BigInt::from(r.0[j]));
            accumulate(&mut out.terms, (l.add(&e), r.sub(&e)), coeff);
        }
    }
    out
}

/// `ξ^k(f)` computed by applying `ξ` to `1 ⊗ f` a total of `k` times.
pub fn xi_power_iterated(f: &LaurentCombo, k: u32) -> TensorElement {
    (0..k).fold(TensorElement::unit(f), |t, _| xi_apply(&t))
}

/// `η(t) = Σ_i ∂_i(left) ⊗ x_i · right`.
pub fn eta_apply(t: &TensorElement) -> Result<TensorElement> {
    if t.left_degree == 0 {
        return Err(Error::LeftDegreeZero);
    }
    let mut out = TensorElement::zero(t.nvars, t.left_degree - 1);
    for ((l, r), c) in &t.terms {
        for j in 0..t.nvars {
            if l.0[j] == 0 {
                continue;
            }
            let e = MultiIndex::unit(t.nvars, j);
            let coeff = c * BigRational::from_integer(BigInt::from(l.0[j]));
            accumulate(&mut out.terms, (l.sub(&e), r.add(&e)), coeff);
        }
    }
    Ok(out)
}

/// `η^m(t)` by iteration.
pub fn eta_power(t: &TensorElement, m: u32) -> Result<TensorElement> {
    let mut cur = t.clone();
    for _ in 0..m {
        cur = eta_apply(&cur)?;
    }
    Ok(cur)
}

/// The scalar `∏_{j=k−m+1}^{k} j (deg − j + 1)` with
/// `η^m ξ^k f = scalar · ξ^{k−m} f`.
pub fn eta_xi_scalar(k: u32, m: u32, degree: i64) -> BigInt {
    assert!(m <= k);
    (0..m as i64).fold(BigInt::one(), |acc, i| {
        let j = k as i64 - i;
        acc * BigInt::from(j) * BigInt::from(degree - j + 1)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermDiscrepancy {
    pub left: MultiIndex,
    pub right: MultiIndex,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub k: u32,
    pub degree: i64,
    pub holds: bool,
    pub discrepancies: Vec<TermDiscrepancy>,
}

/// Checks `η(ξ^k f) = k (deg f − k + 1) ξ^{k−1} f` term by term.
pub fn verify_lemma(k: u32, f: &LaurentCombo) -> Result<LemmaReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("the identity needs k >= 1".into()));
    }
    let lhs = eta_apply(&xi_power(f, k))?;
    let scalar = BigInt::from(k) * BigInt::from(f.degree - k as i64 + 1);
    let rhs = xi_power(f, k - 1).scale(&BigRational::from_integer(scalar));
    let discrepancies = lhs.diff(&rhs);
    Ok(LemmaReport {
        k,
        degree: f.degree,
        holds: discrepancies.is_empty(),
        discrepancies,
    })
}

/// A random Laurent monomial in `n + 1` variables of the given degree, with
/// a nonzero rational coefficient. Free exponents lie in `[-spread, spread]`.
pub fn random_laurent_monomial<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    degree: i64,
    spread: i64,
) -> LaurentCombo {
    let mut exps: Vec<i64> = (0..n).map(|_| rng.gen_range(-spread..=spread)).collect();
    let last = degree - exps.iter().sum::<i64>();
    exps.push(last);
    // a random slot swap so the dependent exponent is not always last
    let j = rng.gen_range(0..=n);
    exps.swap(j, n);
    let num = loop {
        let v: i64 = rng.gen_range(-9..=9);
        if v != 0 {
            break v;
        }
    };
    let den: i64 = rng.gen_range(1..=9);
    LaurentCombo::monomial(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        MultiIndex(exps),
    )
}
