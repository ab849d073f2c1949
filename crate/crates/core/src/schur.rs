//! Formal sums of Schur modules `S_λ(C^m)` and their dimensions.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{horizontal_strips, Partition};

/// `dim S_λ(C^m)` by the Weyl dimension formula
/// `∏_{i<j} (λ_i − λ_j + j − i) / (j − i)`.
pub fn schur_dim(lambda: &Partition, m: usize) -> Result<u128> {
    if lambda.len() > m {
        return Err(Error::TooManyParts {
            partition: lambda.to_string(),
            parts: lambda.len(),
            ambient: m,
        });
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        for j in i + 1..m {
            let gap = (lambda.part(i) - lambda.part(j)) as u64 + (j - i) as u64;
            num *= gap;
            den *= (j - i) as u64;
        }
    }
    debug_assert!((&num % &den) == BigUint::from(0u32));
    (num / den).to_u128().ok_or(Error::Overflow("schur_dim"))
}

/// A direct sum `⊕ S_λ(C^m)^{⊕ mult}` over a fixed ambient dimension `m`.
/// Terms are kept sorted by partition, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GModuleSum {
    ambient: usize,
    terms: Vec<(Partition, u32)>,
}

impl GModuleSum {
    pub fn zero(ambient: usize) -> Self {
        GModuleSum {
            ambient,
            terms: Vec::new(),
        }
    }

    pub fn single(ambient: usize, lambda: Partition) -> Result<Self> {
        let mut sum = Self::zero(ambient);
        sum.add(lambda, 1)?;
        Ok(sum)
    }

    /// Adds `mult` copies of `S_λ`, merging with an existing term.
    pub fn add(&mut self, lambda: Partition, mult: u32) -> Result<()> {
        if lambda.len() > self.ambient {
            return Err(Error::TooManyParts {
                partition: lambda.to_string(),
                parts: lambda.len(),
                ambient: self.ambient,
            });
        }
        if mult == 0 {
            return Ok(());
        }
        match self.terms.binary_search_by(|(p, _)| lambda.cmp(p)) {
            Ok(pos) => self.terms[pos].1 += mult,
            Err(pos) => self.terms.insert(pos, (lambda, mult)),
        }
        Ok(())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn terms(&self) -> &[(Partition, u32)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dimension(&self) -> u128 {
        self.terms
            .iter()
            .map(|(p, mult)| {
                *mult as u128 * schur_dim(p, self.ambient).expect("parts checked on insert")
            })
            .sum()
    }

    /// Whether `S_λ` occurs, up to `SL(m)`-isomorphism.
    pub fn contains_sl(&self, lambda: &Partition) -> bool {
        let target = lambda.sl_normalized(self.ambient);
        self.terms
            .iter()
            .any(|(p, _)| p.sl_normalized(self.ambient) == target)
    }
}

impl fmt::Display for GModuleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, mult)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *mult > 1 {
                write!(f, "{mult}·")?;
            }
            write!(f, "S{p}")?;
        }
        Ok(())
    }
}

/// Restriction of `S_μ(C^{n+1})` to the Levi factor: the sum of `S_ν(C^n)`
/// over horizontal strips `μ / ν`, each once.
pub fn res_to_levi(mu: &Partition, n: usize) -> Result<GModuleSum> {
    if mu.len() > n + 1 {
        return Err(Error::TooManyParts {
            partition: mu.to_string(),
            parts: mu.len(),
            ambient: n + 1,
        });
    }
    let mut sum = GModuleSum::zero(n);
    for nu in horizontal_strips(mu, n) {
        sum.add(nu, 1)?;
    }
    Ok(sum)
}
