//! Pushing `O(d)` through the degenerate diagonal `V(J)` on `P^n x P^n`.
//! The result is the cokernel of
//! `Phi: (H^0(O(d-1)) (x) O(-1))^{C(n+1,2)} -> H^0(O(d)) (x) O` sending
//! `m (x) s` in the `(i, j)` summand to `x_i m (x) y_j s`. It is modeled as a
//! graded module over `k[y_0..y_n]` with one block per degree-`d` monomial.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::complex::{cellular_complex, Grading};
use super::linalg::IntMatrix;
use super::poly::{exponent_vectors, Monomial, VarNames};
use super::yn::{j_ideal, yn_build};
use crate::error::{invalid, Result};

/// A column of `Phi`: the summand `(i, j)` and an `x`-monomial of degree
/// `d - 1`. Its image is `y_j` times the basis vector of `x_i m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiColumn {
    pub i: usize,
    pub j: usize,
    pub m: Monomial,
    pub target: Monomial,
}

pub fn phi_columns(n: usize, d: u32) -> Vec<PhiColumn> {
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            for e in exponent_vectors(n + 1, d - 1) {
                let m = Monomial(e);
                let target = m.mul(&Monomial::var(n + 1, i));
                out.push(PhiColumn { i, j, m, target });
            }
        }
    }
    out
}

/// Least variable index of an `x`-monomial, `n` for the constant.
pub fn min_index(n: usize, m: &Monomial) -> usize {
    m.0.iter().position(|&e| e > 0).unwrap_or(n)
}

/// The block `k[y] / (y_j : j in killed)` attached to a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub monomial: Monomial,
    pub killed: BTreeSet<usize>,
}

/// Blocks read off from the columns of `Phi`: the relations on the basis
/// vector of `m` are the `y_j` of the columns landing on it.
pub fn blocks(n: usize, d: u32) -> Vec<Block> {
    let mut killed: BTreeMap<Monomial, BTreeSet<usize>> = exponent_vectors(n + 1, d)
        .into_iter()
        .map(|e| (Monomial(e), BTreeSet::new()))
        .collect();
    for c in phi_columns(n, d) {
        killed.get_mut(&c.target).expect("target has degree d").insert(c.j);
    }
    killed
        .into_iter()
        .map(|(monomial, killed)| Block { monomial, killed })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    /// The block is `O / (y_n, ..., y_{n-i})`, `i = -1` giving `O`.
    pub i: i64,
    /// Dimension of the linear subspace `{y_{n-i} = ... = y_n = 0}`.
    pub plane_dim: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCheck {
    pub t: u32,
    /// `dim` of the cokernel computed from the rank of `Phi_t`.
    pub from_rank: u64,
    /// The sum over summands of multiplicity times the Hilbert function.
    pub closed_form: u64,
    /// `dim (S/J)_{(d,t)}` from the cellular resolution.
    pub from_resolution: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateObject {
    pub n: usize,
    pub d: u32,
    pub summands: Vec<Summand>,
    pub hilbert: Vec<HilbertCheck>,
}

impl DegenerateObject {
    pub fn hilbert_ok(&self) -> bool {
        self.hilbert
            .iter()
            .all(|h| h.from_rank == h.closed_form && h.from_rank == h.from_resolution)
    }
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        // C(-1, -1) = 1 keeps the d = 0 summand.
        return u64::from(n == -1 && k == -1);
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Expected multiplicity of `O / (y_n..y_{n-i})`.
pub fn closed_form_multiplicity(d: u32, i: i64) -> u64 {
    binomial(i64::from(d) + i, i64::from(d) - 1)
}

fn y_monomials(n: usize, t: u32) -> Vec<Monomial> {
    exponent_vectors(n + 1, t).into_iter().map(Monomial).collect()
}

/// Rank of `Phi` in `y`-degree `t`.
pub fn phi_rank(n: usize, d: u32, t: u32) -> usize {
    if t == 0 {
        return 0;
    }
    let rows: HashMap<(Monomial, Monomial), usize> = exponent_vectors(n + 1, d)
        .into_iter()
        .flat_map(|e| y_monomials(n, t).into_iter().map(move |s| (Monomial(e.clone()), s)))
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let sources = y_monomials(n, t - 1);
    let cols = phi_columns(n, d);
    let mut m = IntMatrix::new(rows.len(), cols.len() * sources.len());
    for (ci, c) in cols.iter().enumerate() {
        for (si, s) in sources.iter().enumerate() {
            let y = s.mul(&Monomial::var(n + 1, c.j));
            m.add(rows[&(c.target.clone(), y)], ci * sources.len() + si, 1);
        }
    }
    m.rank()
}

/// Builds `Phi`, reads off its blocks and checks the Hilbert function in
/// `y`-degrees `0..=d+n+2`.
pub fn degenerate_object(n: usize, d: u32) -> Result<DegenerateObject> {
    if n == 0 {
        return invalid("need n >= 1");
    }
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for b in blocks(n, d) {
        let c = n - b.killed.len();
        // The relations are exactly y_{c+1}..y_n.
        if b.killed != (c + 1..=n).collect() {
            return invalid(format!("unexpected relations on block {}", b.monomial));
        }
        *counts.entry(n as i64 - 1 - c as i64).or_default() += 1;
    }
    let summands: Vec<Summand> = (-1..n as i64)
        .map(|i| Summand {
            i,
            plane_dim: (n as i64 - i - 1) as usize,
            multiplicity: counts.get(&i).copied().unwrap_or(0),
        })
        .collect();
    let y = yn_build(n)?;
    let cell = cellular_complex(&y.complex, &j_ideal(n)?, y.names())?.regrade(Grading::Bi { split: n + 1 })?;
    let target_rank = binomial(i64::from(d) + n as i64, n as i64);
    let hilbert = (0..=d + n as u32 + 2)
        .map(|t| {
            let free = target_rank * binomial(i64::from(t) + n as i64, n as i64);
            let closed_form = summands
                .iter()
                .map(|s| {
                    let vars = n as i64 - s.i;
                    closed_form_multiplicity(d, s.i) * binomial(i64::from(t) + vars - 1, vars - 1)
                })
                .sum();
            HilbertCheck {
                t,
                from_rank: free - phi_rank(n, d, t) as u64,
                closed_form,
                from_resolution: cell.quotient_dim(&[d, t]) as u64,
            }
        })
        .collect();
    Ok(DegenerateObject { n, d, summands, hilbert })
}

/// Fiber dimension of the cokernel at the point `p` of the second factor.
pub fn stalk_dimension(n: usize, d: u32, p: &[i64]) -> Result<usize> {
    if p.len() != n + 1 || p.iter().all(|&c| c == 0) {
        return invalid("point needs n + 1 coordinates, not all zero");
    }
    let rows: HashMap<Monomial, usize> = exponent_vectors(n + 1, d)
        .into_iter()
        .enumerate()
        .map(|(i, e)| (Monomial(e), i))
        .collect();
    let cols = phi_columns(n, d);
    let mut m = IntMatrix::new(rows.len(), cols.len());
    for (ci, c) in cols.iter().enumerate() {
        m.add(rows[&c.target], ci, p[c.j]);
    }
    Ok(rows.len() - m.rank())
}

/// Homology of the pushed-forward complex in `x`-degree `d` and `y`-degree
/// `t`, for each `t` up to `t_max`. Every `F_h` term pushes forward without
/// higher cohomology for `d >= 0`, so these are the strands of the cellular
/// resolution.
pub fn higher_vanishing_audit(n: usize, d: u32, t_max: u32) -> Result<Vec<(u32, Vec<usize>)>> {
    let y = yn_build(n)?;
    let cell = cellular_complex(&y.complex, &j_ideal(n)?, y.names())?.regrade(Grading::Bi { split: n + 1 })?;
    Ok((0..=t_max).map(|t| (t, cell.strand_homology(&[d, t]))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Identity,
    Surjection,
}

/// The map between blocks induced by `x_k: O(e) -> O(e+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    pub source: Block,
    pub target: Block,
    pub kind: MapKind,
    /// Whether the map agrees with the rule "identity onto the block of
    /// `x_k m` iff `x_k` divides `m`, otherwise the natural surjection onto
    /// the block `O/(y_n, ..., y_{k+1})` of `x_k m`". `false` also covers the
    /// case where that surjection does not exist.
    pub matches_quoted_rule: bool,
}

impl BlockMap {
    pub fn display(&self, names: VarNames) -> String {
        let kind = match self.kind {
            MapKind::Identity => "identity",
            MapKind::Surjection => "surjection",
        };
        format!(
            "{} -> {} {kind}",
            names.monomial(&self.source.monomial),
            names.monomial(&self.target.monomial)
        )
    }
}

/// Every block map of `x_k` from degree `e` to `e + 1`.
pub fn degenerate_morphism(n: usize, e: u32, k: usize) -> Result<Vec<BlockMap>> {
    if k > n {
        return invalid(format!("variable index {k} exceeds {n}"));
    }
    let target: HashMap<Monomial, Block> = blocks(n, e + 1).into_iter().map(|b| (b.monomial.clone(), b)).collect();
    let var = Monomial::var(n + 1, k);
    Ok(blocks(n, e)
        .into_iter()
        .map(|source| {
            let t = target[&source.monomial.mul(&var)].clone();
            // Multiplication sends the basis vector of m to that of x_k m;
            // the induced map on blocks is the quotient map.
            debug_assert!(source.killed.is_subset(&t.killed));
            let kind = if source.killed == t.killed { MapKind::Identity } else { MapKind::Surjection };
            let quoted: BTreeSet<usize> = if source.monomial.0[k] > 0 {
                source.killed.clone()
            } else {
                (k + 1..=n).collect()
            };
            let matches_quoted_rule = source.killed.is_subset(&quoted) && quoted == t.killed;
            BlockMap { source, target: t, kind, matches_quoted_rule }
        })
        .collect())
}

/// `x_k` then `x_l` agrees with `x_l` then `x_k` on every block.
pub fn morphisms_commute(n: usize, e: u32, k: usize, l: usize) -> Result<bool> {
    let compose = |a: usize, b: usize| -> Result<Vec<(Monomial, Monomial, MapKind)>> {
        let first = degenerate_morphism(n, e, a)?;
        let second: HashMap<Monomial, BlockMap> = degenerate_morphism(n, e + 1, b)?
            .into_iter()
            .map(|m| (m.source.monomial.clone(), m))
            .collect();
        Ok(first
            .iter()
            .map(|f| {
                let g = &second[&f.target.monomial];
                let kind = if f.kind == MapKind::Identity && g.kind == MapKind::Identity {
                    MapKind::Identity
                } else {
                    MapKind::Surjection
                };
                (f.source.monomial.clone(), g.target.monomial.clone(), kind)
            })
            .collect())
    };
    Ok(compose(k, l)? == compose(l, k)?)
}
