//! Classical root systems in epsilon coordinates, signed-permutation Weyl
//! groups, dominant reduction and the Weyl dimension formula.
//!
//! Family `A` of rank `r` is the `GL_r` system: weights have `r` coordinates,
//! the simple roots are `e_i - e_{i+1}` and `rho = (r-1, ..., 1, 0)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

pub type Q = Ratio<i64>;

/// Default cap on the number of Weyl group elements materialized at once.
pub const DEFAULT_WEYL_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => invalid(format!("unknown root system family {other:?}")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// A weight in epsilon coordinates with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| Q::from_integer(x)).collect())
    }

    /// Builds a weight from numerators over a common denominator of 2.
    pub fn from_halves(twice: &[i64]) -> Self {
        Weight(twice.iter().map(|&x| Q::new(x, 2)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// True when every coordinate lies in `1/2 + Z`.
    pub fn is_half_odd(&self) -> bool {
        self.0.iter().all(|c| !c.is_integer() && (c * 2).is_integer())
    }

    /// Integer coordinates, if the weight is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(Weight(Vec::new()));
        }
        body.split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

pub fn parse_rational(t: &str) -> Result<Q> {
    let bad = || Error::InvalidInput(format!("cannot parse rational {t:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => t.parse::<i64>().map(Q::from_integer).map_err(|_| bad()),
    }
}

/// An element of a classical Weyl group acting on epsilon coordinates by
/// `(w v)_i = signs[i] * v[perm[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(r: usize) -> Self {
        WeylElement {
            perm: (0..r).collect(),
            signs: vec![1; r],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let r = perm.len();
        if signs.len() != r {
            return invalid("permutation and sign vectors differ in length");
        }
        let mut seen = vec![false; r];
        for &p in &perm {
            if p >= r || seen[p] {
                return invalid(format!("{perm:?} is not a permutation"));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return invalid("signs must be +1 or -1");
        }
        Ok(WeylElement { perm, signs })
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn act(&self, v: &Weight) -> Weight {
        Weight(
            (0..self.rank())
                .map(|i| v.0[self.perm[i]] * i64::from(self.signs[i]))
                .collect(),
        )
    }

    pub fn act_int(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|i| v[self.perm[i]] * i64::from(self.signs[i]))
            .collect()
    }

    /// The product `self * other`, acting as `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let signs = (0..self.rank())
            .map(|i| self.signs[i] * other.signs[self.perm[i]])
            .collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let r = self.rank();
        let mut perm = vec![0; r];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        let signs = perm.iter().map(|&p| self.signs[p]).collect();
        WeylElement { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    Singular,
    Regular {
        element: WeylElement,
        length: usize,
        dominant: Weight,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystem {
    family: Family,
    rank: usize,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A | Family::B | Family::C => 1,
            Family::D => 2,
        };
        if rank < min {
            return invalid(format!("rank {rank} is too small for family {family}"));
        }
        Ok(RootSystem { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of epsilon coordinates.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_count(&self) -> usize {
        match self.family {
            Family::A => self.rank - 1,
            _ => self.rank,
        }
    }

    /// Positive roots as integer vectors.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let unit = |i: usize| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            v
        };
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let mut v = unit(i);
                v[j] = -1;
                out.push(v);
                if self.family != Family::A {
                    let mut v = unit(i);
                    v[j] = 1;
                    out.push(v);
                }
            }
        }
        for i in 0..r {
            match self.family {
                Family::B => out.push(unit(i)),
                Family::C => out.push(unit(i).into_iter().map(|x| 2 * x).collect()),
                _ => {}
            }
        }
        out
    }

    /// Simple roots, numbered `1..=simple_count()` in this order.
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut out: Vec<Vec<i64>> = (0..r - 1)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        let mut last = vec![0; r];
        match self.family {
            Family::A => {}
            Family::B => {
                last[r - 1] = 1;
                out.push(last);
            }
            Family::C => {
                last[r - 1] = 2;
                out.push(last);
            }
            Family::D => {
                last[r - 2] = 1;
                last[r - 1] = 1;
                out.push(last);
            }
        }
        out
    }

    pub fn simple_reflection(&self, index: usize) -> Result<WeylElement> {
        let n = self.simple_count();
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, max: n });
        }
        let r = self.rank;
        let mut perm: Vec<usize> = (0..r).collect();
        let mut signs = vec![1i8; r];
        if index < r {
            perm.swap(index - 1, index);
        } else {
            match self.family {
                Family::B | Family::C => signs[r - 1] = -1,
                Family::D => {
                    perm.swap(r - 2, r - 1);
                    signs[r - 2] = -1;
                    signs[r - 1] = -1;
                }
                Family::A => unreachable!(),
            }
        }
        Ok(WeylElement { perm, signs })
    }

    pub fn rho(&self) -> Weight {
        let r = self.rank as i64;
        match self.family {
            Family::A | Family::D => Weight::from_ints(&(0..r).rev().collect::<Vec<_>>()),
            Family::B => Weight::from_halves(&(0..r).map(|i| 2 * (r - i) - 1).collect::<Vec<_>>()),
            Family::C => Weight::from_ints(&(1..=r).rev().collect::<Vec<_>>()),
        }
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        if w.rank() != self.rank {
            return false;
        }
        match self.family {
            Family::A => w.negative_count() == 0,
            Family::B | Family::C => true,
            Family::D => w.negative_count().is_multiple_of(2),
        }
    }

    fn check_len(&self, v: &Weight) -> Result<()> {
        if v.len() != self.rank {
            return invalid(format!(
                "weight {v} has {} coordinates, expected {}",
                v.len(),
                self.rank
            ));
        }
        Ok(())
    }

    /// Coordinates must share a fractional part in {0, 1/2}; families A and
    /// C require integers.
    pub fn check_lattice(&self, v: &Weight) -> Result<()> {
        self.check_len(v)?;
        let ok = match self.family {
            Family::A | Family::C => v.is_integral(),
            Family::B | Family::D => v.is_integral() || v.is_half_odd(),
        };
        if !ok {
            return invalid(format!("{v} is not an integral weight of {}", self));
        }
        Ok(())
    }

    pub fn is_root_positive(&self, root: &[i64]) -> bool {
        // Pair with a strictly dominant regular vector.
        let r = self.rank as i64;
        root.iter()
            .enumerate()
            .map(|(i, &c)| c * (r - i as i64))
            .sum::<i64>()
            > 0
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots()
            .iter()
            .filter(|a| !self.is_root_positive(&w.act_int(a)))
            .count()
    }

    /// `<v, alpha^vee>` for a simple root.
    pub fn coroot_pairing(&self, v: &Weight, index: usize) -> Result<Q> {
        let simple = self.simple_roots();
        let a = simple
            .get(index.wrapping_sub(1))
            .ok_or(Error::IndexOutOfRange {
                index,
                max: simple.len(),
            })?;
        let dot: Q = v.0.iter().zip(a).map(|(c, &x)| c * x).sum();
        let norm: i64 = a.iter().map(|x| x * x).sum();
        Ok(dot * 2 / norm)
    }

    pub fn is_dominant(&self, v: &Weight) -> Result<bool> {
        self.check_lattice(v)?;
        for i in 1..=self.simple_count() {
            let p = self.coroot_pairing(v, i)?;
            if p.is_negative() || !p.is_integer() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Finds the Weyl element moving `delta` into the open dominant chamber,
    /// or reports that `delta` lies on a wall.
    pub fn dominant_reduce(&self, delta: &Weight) -> Result<ReductionOutcome> {
        self.check_len(delta)?;
        let pairs_zero = self.positive_roots().iter().any(|a| {
            let dot: Q = delta.0.iter().zip(a).map(|(c, &x)| c * x).sum();
            dot.is_zero()
        });
        if pairs_zero {
            return Ok(ReductionOutcome::Singular);
        }
        let r = self.rank;
        let mut perm: Vec<usize> = (0..r).collect();
        let element = match self.family {
            Family::A => {
                perm.sort_by(|&a, &b| delta.0[b].cmp(&delta.0[a]));
                WeylElement::new(perm, vec![1; r])?
            }
            _ => {
                perm.sort_by(|&a, &b| delta.0[b].abs().cmp(&delta.0[a].abs()));
                let mut signs: Vec<i8> = perm
                    .iter()
                    .map(|&p| if delta.0[p].is_negative() { -1 } else { 1 })
                    .collect();
                if self.family == Family::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
                    signs[r - 1] = -signs[r - 1];
                }
                WeylElement::new(perm, signs)?
            }
        };
        let dominant = element.act(delta);
        debug_assert!(self.is_strictly_dominant(&dominant));
        let length = self.length(&element);
        Ok(ReductionOutcome::Regular {
            element,
            length,
            dominant,
        })
    }

    fn is_strictly_dominant(&self, v: &Weight) -> bool {
        self.simple_roots().iter().all(|a| {
            let dot: Q = v.0.iter().zip(a).map(|(c, &x)| c * x).sum();
            dot.is_positive()
        })
    }

    /// Dimension of the irreducible representation with highest weight `nu`.
    pub fn weyl_dim(&self, nu: &Weight) -> Result<u128> {
        if !self.is_dominant(nu)? {
            return Err(Error::NotDominant(nu.to_string()));
        }
        let rho = self.rho();
        let shifted = nu.add(&rho);
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for a in self.positive_roots() {
            // Doubled pairings are integers for every family.
            let pair = |v: &Weight| -> BigInt {
                let q: Q = v.0.iter().zip(&a).map(|(c, &x)| c * x * 2).sum();
                BigInt::from(q.to_integer())
            };
            num *= pair(&shifted);
            den *= pair(&rho);
        }
        let (q, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::Overflow(format!("non-integral Weyl dimension for {nu}")));
        }
        q.to_u128()
            .ok_or_else(|| Error::Overflow(format!("Weyl dimension of {nu}")))
    }

    pub fn weyl_order(&self) -> u128 {
        let r = self.rank as u128;
        let fact: u128 = (1..=r).product();
        match self.family {
            Family::A => fact,
            Family::B | Family::C => fact << r,
            Family::D => fact << (r - 1),
        }
    }

    /// All elements of the Weyl group, subject to a size budget.
    pub fn elements(&self, budget: usize) -> Result<Vec<WeylElement>> {
        if self.weyl_order() > budget as u128 {
            return Err(Error::BudgetExceeded {
                what: format!("Weyl group of {self}"),
                budget,
            });
        }
        let r = self.rank;
        let mut out = Vec::with_capacity(self.weyl_order() as usize);
        let mut perm: Vec<usize> = (0..r).collect();
        permutations(&mut perm, 0, &mut |p| {
            let sign_sets: u32 = if self.family == Family::A { 1 } else { 1 << r };
            for mask in 0..sign_sets {
                let signs: Vec<i8> = (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                let w = WeylElement {
                    perm: p.to_vec(),
                    signs,
                };
                if self.contains(&w) {
                    out.push(w);
                }
            }
        });
        Ok(out)
    }

    /// Reduced word (simple reflection indices) obtained by greedy descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Result<Vec<usize>> {
        if !self.contains(w) {
            return invalid("element does not belong to this Weyl group");
        }
        let simple = self.simple_roots();
        let mut cur = w.clone();
        let mut word = Vec::new();
        while !cur.is_identity() {
            let i = (0..simple.len())
                .find(|&i| !self.is_root_positive(&cur.act_int(&simple[i])))
                .expect("non-identity element has a right descent");
            cur = cur.compose(&self.simple_reflection(i + 1)?);
            word.push(i + 1);
        }
        word.reverse();
        Ok(word)
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = WeylElement::identity(self.rank);
        for &i in word {
            w = w.compose(&self.simple_reflection(i)?);
        }
        Ok(w)
    }

    /// Subgroup generated by the given simple reflections.
    pub fn parabolic_subgroup(&self, generators: &[usize]) -> Result<HashSet<WeylElement>> {
        let gens = generators
            .iter()
            .map(|&i| self.simple_reflection(i))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = HashSet::new();
        let mut frontier = vec![WeylElement::identity(self.rank)];
        seen.insert(frontier[0].clone());
        while let Some(w) = frontier.pop() {
            for g in &gens {
                let x = w.compose(g);
                if seen.insert(x.clone()) {
                    frontier.push(x);
                }
            }
        }
        Ok(seen)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, r: usize) -> RootSystem {
        RootSystem::new(f, r).unwrap()
    }

    #[test]
    fn rho_values() {
        assert_eq!(rs(Family::C, 3).rho(), Weight::from_ints(&[3, 2, 1]));
        assert_eq!(rs(Family::B, 2).rho(), Weight::from_halves(&[3, 1]));
        assert_eq!(rs(Family::D, 3).rho(), Weight::from_ints(&[2, 1, 0]));
        assert_eq!(rs(Family::A, 3).rho(), Weight::from_ints(&[2, 1, 0]));
    }

    #[test]
    fn rho_is_half_sum_up_to_center() {
        for f in [Family::B, Family::C, Family::D] {
            for r in 2..5 {
                let sys = rs(f, r);
                let mut sum = vec![0i64; r];
                for a in sys.positive_roots() {
                    for (s, x) in sum.iter_mut().zip(a) {
                        *s += x;
                    }
                }
                assert_eq!(Weight::from_halves(&sum), sys.rho(), "{sys}");
            }
        }
    }

    #[test]
    fn sp6_dimensions() {
        let c3 = rs(Family::C, 3);
        assert_eq!(c3.weyl_dim(&Weight::from_ints(&[1, 0, 0])).unwrap(), 6);
        assert_eq!(c3.weyl_dim(&Weight::from_ints(&[1, 1, 0])).unwrap(), 14);
        assert_eq!(c3.weyl_dim(&Weight::from_ints(&[2, 0, 0])).unwrap(), 21);
        assert_eq!(c3.weyl_dim(&Weight::from_ints(&[0, 0, 0])).unwrap(), 1);
    }

    #[test]
    fn spin_and_gl_dimensions() {
        assert_eq!(rs(Family::B, 3).weyl_dim(&Weight::from_halves(&[1, 1, 1])).unwrap(), 8);
        assert_eq!(rs(Family::D, 4).weyl_dim(&Weight::from_halves(&[1, 1, 1, 1])).unwrap(), 8);
        assert_eq!(rs(Family::A, 3).weyl_dim(&Weight::from_ints(&[2, 1, 0])).unwrap(), 8);
        assert_eq!(rs(Family::A, 4).weyl_dim(&Weight::from_ints(&[1, 1, 0, 0])).unwrap(), 6);
    }

    #[test]
    fn non_dominant_rejected() {
        let c3 = rs(Family::C, 3);
        assert!(matches!(
            c3.weyl_dim(&Weight::from_ints(&[0, 1, 0])),
            Err(Error::NotDominant(_))
        ));
        assert!(c3.weyl_dim(&Weight::from_halves(&[1, 1, 1])).is_err());
    }

    #[test]
    fn reduction_examples() {
        let c3 = rs(Family::C, 3);
        let delta = Weight::from_ints(&[5, 2, -1]);
        match c3.dominant_reduce(&delta).unwrap() {
            ReductionOutcome::Regular { length, dominant, .. } => {
                assert_eq!(length, 1);
                assert_eq!(dominant, Weight::from_ints(&[5, 2, 1]));
            }
            ReductionOutcome::Singular => panic!(),
        }
        assert_eq!(
            c3.dominant_reduce(&Weight::from_ints(&[4, 2, 2])).unwrap(),
            ReductionOutcome::Singular
        );
        assert_eq!(
            c3.dominant_reduce(&Weight::from_ints(&[2, -1, 1])).unwrap(),
            ReductionOutcome::Singular
        );
    }

    #[test]
    fn d_type_keeps_sign_parity() {
        let d3 = rs(Family::D, 3);
        match d3.dominant_reduce(&Weight::from_ints(&[-3, 2, 1])).unwrap() {
            ReductionOutcome::Regular { element, dominant, .. } => {
                assert!(d3.contains(&element));
                assert_eq!(dominant, Weight::from_ints(&[3, 2, -1]));
            }
            ReductionOutcome::Singular => panic!(),
        }
    }

    #[test]
    fn group_orders() {
        for (f, r, n) in [
            (Family::A, 4, 24),
            (Family::B, 3, 48),
            (Family::C, 3, 48),
            (Family::D, 4, 192),
        ] {
            let sys = rs(f, r);
            let els = sys.elements(DEFAULT_WEYL_BUDGET).unwrap();
            assert_eq!(els.len(), n);
            assert_eq!(sys.weyl_order(), n as u128);
            let gens: Vec<usize> = (1..=sys.simple_count()).collect();
            assert_eq!(sys.parabolic_subgroup(&gens).unwrap().len(), n);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b8 = rs(Family::B, 8);
        assert!(matches!(b8.elements(1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn longest_element_length_counts_roots() {
        let c3 = rs(Family::C, 3);
        let w0 = WeylElement::new(vec![0, 1, 2], vec![-1, -1, -1]).unwrap();
        assert_eq!(c3.length(&w0), 9);
        assert_eq!(c3.reduced_word(&w0).unwrap().len(), 9);
    }

    #[test]
    fn parse_weights() {
        let w: Weight = "1/2,-1/2,3".parse().unwrap();
        assert_eq!(w, Weight(vec![Q::new(1, 2), Q::new(-1, 2), Q::from_integer(3)]));
        assert!("1/0".parse::<Weight>().is_err());
    }
}
