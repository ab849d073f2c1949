//! Quiver representations of homogeneous bundles on `P^n` whose multiplicity
//! spaces are all one-dimensional, and King slope stability for them.
//!
//! Vertices are irreducible bundles `S_μΩ(t)`. An arrow `S_μΩ(t) → S_{μ'}Ω(t')`
//! can only exist when `t = t'`, `μ ⊂ μ'` and `|μ' / μ| = 1`; each stored
//! arrow carries a flag saying whether the structure map along it is
//! nonzero.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::partitions::{horizontal_strips, Partition};
use crate::schur::schur_dim;

/// The bundle `S_μΩ(t)` on `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrreducibleSummand {
    pub n: usize,
    pub mu: Partition,
    pub twist: i64,
}

impl IrreducibleSummand {
    pub fn new(n: usize, mu: Partition, twist: i64) -> Result<Self> {
        if n == 0 {
            return invalid("projective dimension must be at least 1");
        }
        if mu.len() > n {
            return Err(Error::TooManyParts {
                partition: mu.to_string(),
                parts: mu.len(),
                ambient: n,
            });
        }
        Ok(IrreducibleSummand { n, mu, twist })
    }

    /// `S^iΩ(t)`.
    pub fn sym_omega(n: usize, i: u32, twist: i64) -> Result<Self> {
        Self::new(n, Partition::row(i), twist)
    }

    pub fn rank(&self) -> u128 {
        schur_dim(&self.mu, self.n).expect("part count checked in constructor")
    }

    /// `|μ| · μ(Ω) + t` with `μ(Ω) = −(n+1)/n`.
    pub fn slope(&self) -> BigRational {
        let omega = BigRational::new(-BigInt::from(self.n + 1), BigInt::from(self.n));
        omega * BigInt::from(self.mu.size()) + BigInt::from(self.twist)
    }

    /// `c_1 = rank · slope`, always an integer.
    pub fn c1(&self) -> i128 {
        let c1 = self.slope() * BigInt::from(self.rank());
        assert!(c1.is_integer(), "non-integral c1 for {self}");
        c1.to_integer().to_i128().expect("c1 fits in i128")
    }

    pub fn with_twist(&self, twist: i64) -> Self {
        IrreducibleSummand {
            twist,
            ..self.clone()
        }
    }
}

impl fmt::Display for IrreducibleSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.mu.parts() {
            [] => "O".to_string(),
            [1] => "Ω".to_string(),
            [k] => format!("S^{k}Ω"),
            _ => format!("S_{}Ω", self.mu),
        };
        if self.twist == 0 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}({})", self.twist)
        }
    }
}

/// Whether the quiver of `P^n` has an arrow `from → to`.
pub fn arrow_allowed(from: &IrreducibleSummand, to: &IrreducibleSummand) -> bool {
    from.n == to.n
        && from.twist == to.twist
        && to.mu.contains(&from.mu)
        && to.mu.size() == from.mu.size() + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub summand: IrreducibleSummand,
    pub multiplicity: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverRep {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
}

impl QuiverRep {
    pub fn empty(n: usize) -> Self {
        QuiverRep {
            n,
            vertices: Vec::new(),
            arrows: Vec::new(),
        }
    }

    pub fn push_vertex(&mut self, summand: IrreducibleSummand) -> usize {
        self.vertices.push(Vertex {
            summand,
            multiplicity: 1,
        });
        self.vertices.len() - 1
    }

    pub fn push_arrow(&mut self, from: usize, to: usize, nonzero: bool) -> Result<()> {
        let (a, b) = (&self.vertices[from].summand, &self.vertices[to].summand);
        if !arrow_allowed(a, b) {
            return invalid(format!("no arrow {a} -> {b} in the quiver of P^{}", self.n));
        }
        self.arrows.push(Arrow { from, to, nonzero });
        Ok(())
    }

    /// Graded pieces with multiplicities.
    pub fn graded(&self) -> Vec<(IrreducibleSummand, u32)> {
        self.vertices
            .iter()
            .map(|v| (v.summand.clone(), v.multiplicity))
            .collect()
    }

    pub fn rank(&self) -> u128 {
        self.vertices
            .iter()
            .map(|v| v.multiplicity as u128 * v.summand.rank())
            .sum()
    }

    /// Connected components of the graph of nonzero arrows, each sorted,
    /// ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp: Vec<usize> = (0..self.vertices.len()).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for a in self.arrows.iter().filter(|a| a.nonzero) {
                let m = comp[a.from].min(comp[a.to]);
                for v in [a.from, a.to] {
                    if comp[v] != m {
                        comp[v] = m;
                        changed = true;
                    }
                }
            }
        }
        let roots: BTreeSet<usize> = comp.iter().copied().collect();
        roots
            .into_iter()
            .map(|r| (0..comp.len()).filter(|&v| comp[v] == r).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex set and nonzero-arrow set as summands, independent of vertex
    /// numbering.
    #[allow(clippy::type_complexity)]
    pub fn shape(
        &self,
    ) -> (
        BTreeSet<(IrreducibleSummand, u32)>,
        BTreeSet<(IrreducibleSummand, IrreducibleSummand)>,
    ) {
        let vertices = self.graded().into_iter().collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| a.nonzero)
            .map(|a| {
                (
                    self.vertices[a.from].summand.clone(),
                    self.vertices[a.to].summand.clone(),
                )
            })
            .collect();
        (vertices, arrows)
    }

    /// Side-by-side union, with no arrows between the parts.
    pub fn disjoint_union(&self, other: &QuiverRep) -> QuiverRep {
        let offset = self.vertices.len();
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().cloned());
        out.arrows.extend(other.arrows.iter().map(|a| Arrow {
            from: a.from + offset,
            to: a.to + offset,
            nonzero: a.nonzero,
        }));
        out
    }

    /// Tensor with `O(t)`.
    pub fn retwist(&self, t: i64) -> QuiverRep {
        let mut out = self.clone();
        for v in &mut out.vertices {
            v.summand.twist += t;
        }
        out
    }

    /// The vertex order of a single chain `v_0 → v_1 → ⋯` of nonzero
    /// arrows, if the representation is one.
    pub fn chain_order(&self) -> Option<Vec<usize>> {
        let nonzero: Vec<&Arrow> = self.arrows.iter().filter(|a| a.nonzero).collect();
        let count = self.vertices.len();
        if count == 0 || nonzero.len() + 1 != count {
            return None;
        }
        let mut next = vec![None; count];
        let mut has_pred = vec![false; count];
        for a in nonzero {
            if next[a.from].is_some() || has_pred[a.to] {
                return None;
            }
            next[a.from] = Some(a.to);
            has_pred[a.to] = true;
        }
        let mut v = (0..count).find(|&v| !has_pred[v])?;
        let mut order = vec![v];
        while let Some(w) = next[v] {
            order.push(w);
            v = w;
        }
        (order.len() == count).then_some(order)
    }
}

impl fmt::Display for QuiverRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        for (ci, comp) in comps.iter().enumerate() {
            if ci > 0 {
                write!(f, "  ∪  ")?;
            }
            let sub = self.restrict(comp);
            match sub.chain_order() {
                Some(order) => {
                    let names: Vec<String> = order
                        .iter()
                        .map(|&v| format!("[{}]", sub.vertices[v].summand))
                        .collect();
                    write!(f, "{}", names.join("→"))?;
                }
                None => {
                    let names: Vec<String> = sub
                        .vertices
                        .iter()
                        .map(|v| format!("[{}]", v.summand))
                        .collect();
                    write!(f, "{{{}}}", names.join(", "))?;
                    for a in sub.arrows.iter().filter(|a| a.nonzero) {
                        write!(
                            f,
                            " [{}]→[{}]",
                            sub.vertices[a.from].summand, sub.vertices[a.to].summand
                        )?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl QuiverRep {
    fn restrict(&self, keep: &[usize]) -> QuiverRep {
        let index = |v: usize| keep.iter().position(|&k| k == v);
        QuiverRep {
            n: self.n,
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .filter_map(|a| {
                    Some(Arrow {
                        from: index(a.from)?,
                        to: index(a.to)?,
                        nonzero: a.nonzero,
                    })
                })
                .collect(),
        }
    }
}

/// The representation of `S_μV ⊗ O`: one vertex `S_νΩ(|μ|)` for each
/// horizontal strip `μ / ν` with `ν` of at most `n` rows, and a nonzero
/// arrow for every single-box inclusion among them.
pub fn quiver_schur(n: usize, mu: &Partition) -> Result<QuiverRep> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    if mu.len() > n + 1 {
        return Err(Error::TooManyParts {
            partition: mu.to_string(),
            parts: mu.len(),
            ambient: n + 1,
        });
    }
    let mut strips = horizontal_strips(mu, n);
    strips.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
    let mut rep = QuiverRep::empty(n);
    for nu in strips {
        rep.push_vertex(IrreducibleSummand::new(n, nu, mu.size() as i64)?);
    }
    for from in 0..rep.vertices.len() {
        for to in 0..rep.vertices.len() {
            if arrow_allowed(&rep.vertices[from].summand, &rep.vertices[to].summand) {
                rep.push_arrow(from, to, true)?;
            }
        }
    }
    Ok(rep)
}

fn sym_chain(n: usize, range: std::ops::RangeInclusive<u32>, twist: i64) -> Result<QuiverRep> {
    let mut rep = QuiverRep::empty(n);
    let mut prev = None;
    for i in range {
        let v = rep.push_vertex(IrreducibleSummand::sym_omega(n, i, twist)?);
        if let Some(p) = prev {
            rep.push_arrow(p, v, true)?;
        }
        prev = Some(v);
    }
    Ok(rep)
}

/// The representation of `P^kO(d)`: the chain `S^0Ω(d) → ⋯ → S^kΩ(d)`,
/// with the arrow `S^dΩ(d) → S^{d+1}Ω(d)` zero when `k > d >= 0`.
pub fn quiver_pp(n: usize, k: u32, d: i64) -> Result<QuiverRep> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    let mut rep = sym_chain(n, 0..=k, d)?;
    if d >= 0 && (k as i64) > d {
        let cut = d as usize;
        for a in &mut rep.arrows {
            if a.from == cut {
                a.nonzero = false;
            }
        }
    }
    Ok(rep)
}

/// The representation of `Q_{k,d}`: the chain `S^{d+1}Ω(d) → ⋯ → S^kΩ(d)`.
pub fn quiver_q(n: usize, k: u32, d: i64) -> Result<QuiverRep> {
    if n == 0 {
        return invalid("projective dimension must be at least 1");
    }
    if d < 0 || d >= k as i64 {
        return invalid(format!("Q_(k,d) needs k > d >= 0, got k={k} d={d}"));
    }
    sym_chain(n, (d as u32 + 1)..=k, d)
}

/// `μ_F(E') = c_1(F) rk(E') − rk(F) c_1(E')`, extended additively. `sub`
/// must be a sub-multiset of `full`.
pub fn mu_f(full: &[(IrreducibleSummand, u32)], sub: &[(IrreducibleSummand, u32)]) -> Result<i128> {
    for (s, _) in sub {
        let available: u32 = full.iter().filter(|(f, _)| f == s).map(|(_, m)| m).sum();
        let wanted: u32 = sub.iter().filter(|(t, _)| t == s).map(|(_, m)| m).sum();
        if wanted > available {
            return invalid(format!("{s} is not part of the ambient graded bundle"));
        }
    }
    let totals = |items: &[(IrreducibleSummand, u32)]| -> (i128, i128) {
        items.iter().fold((0, 0), |(rk, c1), (s, m)| {
            (rk + *m as i128 * s.rank() as i128, c1 + *m as i128 * s.c1())
        })
    };
    let (rk_f, c1_f) = totals(full);
    let (rk_e, c1_e) = totals(sub);
    Ok(c1_f * rk_e - rk_f * c1_e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuffixSlope {
    /// The subrepresentation `S^iΩ(d) → ⋯ → S^kΩ(d)`.
    pub i: u32,
    #[serde(rename = "muF")]
    pub mu_f: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub table: Vec<SuffixSlope>,
}

/// King stability of the representation of `Q_{k,d}` on `P^n`, `n >= 2`.
/// Its nonzero subrepresentations are the chain suffixes; the verdict is
/// stable when the full chain has `μ_F = 0` and every proper suffix has
/// `μ_F > 0`.
pub fn stability_q(n: usize, k: u32, d: i64) -> Result<StabilityVerdict> {
    if n < 2 {
        return invalid("stability of Q_(k,d) is only asserted for n >= 2");
    }
    let rep = quiver_q(n, k, d)?;
    let order = rep.chain_order().expect("Q_(k,d) is a chain");
    let full = rep.graded();
    let mut table = Vec::with_capacity(order.len());
    for start in 0..order.len() {
        let sub: Vec<_> = order[start..]
            .iter()
            .map(|&v| {
                (
                    rep.vertices[v].summand.clone(),
                    rep.vertices[v].multiplicity,
                )
            })
            .collect();
        table.push(SuffixSlope {
            i: rep.vertices[order[start]].summand.mu.size(),
            mu_f: mu_f(&full, &sub)?,
        });
    }
    let stable = table[0].mu_f.is_zero() && table[1..].iter().all(|row| row.mu_f > 0);
    Ok(StabilityVerdict { stable, table })
}

/// Slopes of `S^iΩ(d)` for `i = d+1, …, k`.
pub fn q_slope_chain(n: usize, k: u32, d: i64) -> Result<Vec<(u32, BigRational)>> {
    let rep = quiver_q(n, k, d)?;
    Ok(rep
        .vertices
        .iter()
        .map(|v| (v.summand.mu.size(), v.summand.slope()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sym(n: usize, i: u32, t: i64) -> IrreducibleSummand {
        IrreducibleSummand::sym_omega(n, i, t).unwrap()
    }

    #[test]
    fn summand_invariants() {
        let omega = sym(2, 1, 0);
        assert_eq!(omega.rank(), 2);
        assert_eq!(omega.c1(), -3);
        let s2 = sym(2, 2, 0);
        assert_eq!(s2.rank(), 3);
        assert_eq!(s2.c1(), -9);
        let det = IrreducibleSummand::new(2, p(&[1, 1]), 0).unwrap();
        assert_eq!(det.rank(), 1);
        assert_eq!(det.c1(), -3);
        assert!(IrreducibleSummand::new(2, p(&[1, 1, 1]), 0).is_err());
        for n in 1..=4 {
            for i in 0..=6 {
                for t in -4..=4 {
                    let _ = sym(n, i, t).c1();
                }
            }
        }
    }

    #[test]
    fn schur_quiver_examples() {
        let r = quiver_schur(2, &p(&[1])).unwrap();
        assert_eq!(r.to_string(), "[O(1)]→[Ω(1)]");
        let r = quiver_schur(2, &p(&[2])).unwrap();
        assert_eq!(r.to_string(), "[O(2)]→[Ω(2)]→[S^2Ω(2)]");
        let r = quiver_schur(2, &p(&[1, 1])).unwrap();
        assert_eq!(r.to_string(), "[Ω(2)]→[S_(1,1)Ω(2)]");
        let r = quiver_schur(3, &p(&[2, 1])).unwrap();
        assert!(r.is_connected());
        assert_eq!(r.vertices.len(), 4);
        assert!(r.arrows.iter().all(|a| a.nonzero));
    }

    #[test]
    fn schur_quiver_rank_is_restriction() {
        for n in 1..=4usize {
            for mu in [
                p(&[]),
                p(&[1]),
                p(&[3]),
                p(&[2, 1]),
                p(&[2, 2]),
                p(&[3, 1, 1]),
                p(&[1, 1]),
            ] {
                if mu.len() > n + 1 {
                    continue;
                }
                let r = quiver_schur(n, &mu).unwrap();
                assert_eq!(r.rank(), schur_dim(&mu, n + 1).unwrap(), "n={n} μ={mu}");
                assert!(r.is_connected());
            }
        }
    }

    #[test]
    fn pp_quiver_examples() {
        let r = quiver_pp(2, 1, 0).unwrap();
        assert_eq!(r.components().len(), 2);
        assert_eq!(r.to_string(), "[O]  ∪  [Ω]");
        let r = quiver_pp(2, 2, 3).unwrap();
        assert_eq!(r.to_string(), "[O(3)]→[Ω(3)]→[S^2Ω(3)]");
        let r = quiver_pp(3, 3, 1).unwrap();
        assert_eq!(r.to_string(), "[O(1)]→[Ω(1)]  ∪  [S^2Ω(1)]→[S^3Ω(1)]");
        let r = quiver_pp(2, 2, -2).unwrap();
        assert!(r.is_connected());
    }

    #[test]
    fn q_quiver_examples() {
        assert_eq!(quiver_q(2, 2, 0).unwrap().to_string(), "[Ω]→[S^2Ω]");
        assert_eq!(quiver_q(2, 1, 0).unwrap().to_string(), "[Ω]");
        assert_eq!(
            quiver_q(3, 4, 1).unwrap().to_string(),
            "[S^2Ω(1)]→[S^3Ω(1)]→[S^4Ω(1)]"
        );
        assert!(quiver_q(2, 2, 2).is_err());
        assert!(quiver_q(2, 2, -1).is_err());
    }

    #[test]
    fn pp_is_union_of_schur_and_q() {
        for n in 1..=3 {
            for k in 1..=6u32 {
                for d in 0..k as i64 {
                    let pp = quiver_pp(n, k, d).unwrap();
                    let union = quiver_schur(n, &Partition::row(d as u32))
                        .unwrap()
                        .disjoint_union(&quiver_q(n, k, d).unwrap());
                    assert_eq!(pp.shape(), union.shape());
                }
                for d in [k as i64, k as i64 + 3] {
                    let pp = quiver_pp(n, k, d).unwrap();
                    let schur = quiver_schur(n, &Partition::row(k))
                        .unwrap()
                        .retwist(d - k as i64);
                    assert_eq!(pp.shape(), schur.shape());
                }
            }
        }
    }

    #[test]
    fn arrows_respect_quiver_rule() {
        for n in 1..=3 {
            for k in 0..=5 {
                for d in -2..=6 {
                    let r = quiver_pp(n, k, d).unwrap();
                    for a in &r.arrows {
                        let (x, y) = (&r.vertices[a.from].summand, &r.vertices[a.to].summand);
                        assert_eq!(x.twist, y.twist);
                        assert_eq!(y.mu.size(), x.mu.size() + 1);
                    }
                }
            }
        }
        let mut r = QuiverRep::empty(2);
        let a = r.push_vertex(sym(2, 0, 1));
        let b = r.push_vertex(sym(2, 2, 1));
        let c = r.push_vertex(sym(2, 1, 2));
        assert!(r.push_arrow(a, b, true).is_err());
        assert!(r.push_arrow(a, c, true).is_err());
    }

    #[test]
    fn mu_f_examples() {
        let full = vec![(sym(2, 1, 0), 1), (sym(2, 2, 0), 1)];
        assert_eq!(mu_f(&full, &full).unwrap(), 0);
        assert_eq!(mu_f(&full, &[]).unwrap(), 0);
        assert_eq!(mu_f(&full, &[(sym(2, 2, 0), 1)]).unwrap(), 9);
        assert!(mu_f(&full, &[(sym(2, 3, 0), 1)]).is_err());
        assert!(mu_f(&full, &[(sym(2, 2, 0), 2)]).is_err());
    }

    #[test]
    fn stability_examples() {
        let v = stability_q(2, 2, 0).unwrap();
        assert!(v.stable);
        assert_eq!(
            v.table,
            vec![SuffixSlope { i: 1, mu_f: 0 }, SuffixSlope { i: 2, mu_f: 9 }]
        );
        let v = stability_q(2, 1, 0).unwrap();
        assert!(v.stable);
        assert_eq!(v.table, vec![SuffixSlope { i: 1, mu_f: 0 }]);
        let v = stability_q(3, 3, 1).unwrap();
        assert!(v.stable);
        assert!(v.table[1..].iter().all(|r| r.mu_f > 0));
        assert!(stability_q(1, 3, 1).is_err());
        assert!(stability_q(2, 1, 1).is_err());
    }

    #[test]
    fn slopes_strictly_decrease() {
        for n in 2..=4 {
            for k in 1..=8u32 {
                for d in 0..k as i64 {
                    let s = q_slope_chain(n, k, d).unwrap();
                    assert!(s.windows(2).all(|w| w[0].1 > w[1].1));
                }
            }
        }
    }
}
