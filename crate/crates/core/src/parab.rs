//! Parabolic subgroups, minimal coset representatives, Grassmannian index
//! tuples and Bruhat order.

use std::collections::{BTreeSet, HashSet};

use crate::error::{invalid, Error, Result};
use crate::rootsys::{RootSystem, WeylElement};
use crate::young::Partition;

/// A parabolic subgroup `P(I)` described by the simple roots it omits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicSpec {
    system: RootSystem,
    omitted: BTreeSet<usize>,
}

impl ParabolicSpec {
    pub fn new(system: RootSystem, omitted: impl IntoIterator<Item = usize>) -> Result<Self> {
        let omitted: BTreeSet<usize> = omitted.into_iter().collect();
        let max = system.simple_count();
        if let Some(&bad) = omitted.iter().find(|&&i| i == 0 || i > max) {
            return Err(Error::IndexOutOfRange { index: bad, max });
        }
        Ok(ParabolicSpec { system, omitted })
    }

    pub fn system(&self) -> RootSystem {
        self.system
    }

    pub fn omitted(&self) -> &BTreeSet<usize> {
        &self.omitted
    }

    /// Indices of the simple reflections generating the Levi Weyl group.
    pub fn levi_generators(&self) -> Vec<usize> {
        (1..=self.system.simple_count())
            .filter(|i| !self.omitted.contains(i))
            .collect()
    }

    /// Minimal length representatives of `W / W_P`.
    pub fn minimal_coset_reps(&self, budget: usize) -> Result<Vec<WeylElement>> {
        let simple = self.system.simple_roots();
        let levi = self.levi_generators();
        let els = self.system.elements(budget)?;
        Ok(els
            .into_iter()
            .filter(|w| {
                levi.iter()
                    .all(|&i| self.system.is_root_positive(&w.act_int(&simple[i - 1])))
            })
            .collect())
    }

    /// Number of Schubert cells of `G/P`.
    pub fn schubert_count(&self, budget: usize) -> Result<usize> {
        Ok(self.minimal_coset_reps(budget)?.len())
    }
}

/// A strictly increasing index tuple `1 <= i_1 < ... < i_k <= m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassIndex(Vec<usize>);

impl GrassIndex {
    pub fn new(idx: Vec<usize>, ambient: usize) -> Result<Self> {
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return invalid(format!("{idx:?} is not strictly increasing"));
        }
        if idx.iter().any(|&i| i == 0 || i > ambient) {
            return invalid(format!("{idx:?} leaves the range 1..={ambient}"));
        }
        Ok(GrassIndex(idx))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// No pair `i, 2n+1-i` with ambient dimension `2n`.
    pub fn is_isotropic(&self, n: usize) -> bool {
        let set: HashSet<usize> = self.0.iter().copied().collect();
        self.0.iter().all(|&i| !set.contains(&(2 * n + 1 - i)))
    }
}

/// All `k`-subsets of `1..=n`.
pub fn grass_indices(k: usize, n: usize) -> Vec<GrassIndex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<GrassIndex>) {
        if cur.len() == k {
            out.push(GrassIndex(cur.clone()));
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// Index tuples of Schubert cells on the isotropic Grassmannian of
/// `k`-planes in a `2n`-dimensional symplectic space.
pub fn isotropic_indices(k: usize, n: usize) -> Vec<GrassIndex> {
    grass_indices(k, 2 * n)
        .into_iter()
        .filter(|g| g.is_isotropic(n))
        .collect()
}

/// `lambda_t = i_{k-t+1} - (k-t+1)`: a partition in the `k x (n-k)` box.
pub fn grass_young_bijection(k: usize, n: usize, idx: &GrassIndex) -> Result<Partition> {
    if idx.0.len() != k || idx.0.iter().any(|&i| i > n) {
        return invalid(format!("{idx:?} is not a {k}-subset of 1..={n}"));
    }
    let parts: Vec<i64> = (1..=k).map(|t| (idx.0[k - t] - (k - t + 1)) as i64).collect();
    Partition::new(parts)
}

pub fn young_to_grass(k: usize, n: usize, p: &Partition) -> Result<GrassIndex> {
    let parts = p.parts();
    if parts.len() > k || parts.first().is_some_and(|&x| x as usize > n - k) {
        return invalid(format!("{p:?} does not fit in a {k}x{} box", n - k));
    }
    let mut full = parts.to_vec();
    full.resize(k, 0);
    let idx: Vec<usize> = (1..=k).map(|j| full[k - j] as usize + j).collect();
    GrassIndex::new(idx, n)
}

#[derive(Debug, Clone)]
pub enum BruhatOperand {
    Grass(GrassIndex),
    Weyl(WeylElement),
}

/// Bruhat order. Index tuples compare componentwise; Weyl elements use the
/// subword property over the Weyl group of `system`.
pub fn bruhat_leq(system: Option<RootSystem>, a: &BruhatOperand, b: &BruhatOperand) -> Result<bool> {
    match (a, b) {
        (BruhatOperand::Grass(x), BruhatOperand::Grass(y)) => {
            if x.0.len() != y.0.len() {
                return Err(Error::KindMismatch("index tuples of different length".into()));
            }
            Ok(x.0.iter().zip(&y.0).all(|(p, q)| p <= q))
        }
        (BruhatOperand::Weyl(x), BruhatOperand::Weyl(y)) => {
            let sys = system.ok_or_else(|| Error::KindMismatch("Weyl comparison needs a root system".into()))?;
            weyl_bruhat_leq(&sys, x, y)
        }
        _ => Err(Error::KindMismatch("cannot compare an index tuple with a Weyl element".into())),
    }
}

pub fn weyl_bruhat_leq(sys: &RootSystem, x: &WeylElement, w: &WeylElement) -> Result<bool> {
    if !sys.contains(x) || !sys.contains(w) {
        return invalid("elements do not belong to this Weyl group");
    }
    let word = sys.reduced_word(w)?;
    let mut below: HashSet<WeylElement> = HashSet::new();
    below.insert(WeylElement::identity(sys.rank()));
    for i in word {
        let s = sys.simple_reflection(i)?;
        let extra: Vec<WeylElement> = below.iter().map(|u| u.compose(&s)).collect();
        below.extend(extra);
    }
    Ok(below.contains(x))
}
