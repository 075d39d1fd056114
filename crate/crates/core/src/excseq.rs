//! Generating sets of homogeneous bundles and verification of exceptional,
//! strong and poset conditions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bott::{ext_flag12, ext_table, relative_bott_flag, Bundle, DirectImage, ExtTable, FlagBundle, Geometry};
use crate::error::{invalid, Error, Result};
use crate::parab::ParabolicSpec;
use crate::rootsys::{Family, RootSystem, Weight, DEFAULT_WEYL_BUDGET};
use crate::young::{GlWeight, Partition};

/// `Sigma^schur R (x) L^l_twist`, where `L` is the square root of `O(1)` on the
/// isotropic Grassmannian of 3-planes in a 7-dimensional orthogonal space.
/// With `O(1) = det R^vee` and `L^2 = O(1)`, the pair with `l_twist` in {0,1}
/// is a normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleLabel {
    pub schur: GlWeight,
    pub l_twist: u8,
}

impl BundleLabel {
    pub fn plain(schur: GlWeight) -> Self {
        BundleLabel { schur, l_twist: 0 }
    }

    /// Normal form of `Sigma^schur R (x) L^twist` for any integer twist.
    pub fn normalize(schur: &GlWeight, twist: i64) -> Self {
        let o_power = twist.div_euclid(2);
        BundleLabel {
            // O(1) = Sigma^(-1,...,-1) R
            schur: schur.det_twist(-o_power),
            l_twist: twist.rem_euclid(2) as u8,
        }
    }
}

impl fmt::Display for BundleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.schur.parts().iter().map(|x| x.to_string()).collect();
        write!(f, "schur={} twist={}", parts.join(","), self.l_twist)
    }
}

impl FromStr for BundleLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut schur = None;
        let mut twist = None;
        for tok in s.split_whitespace() {
            match tok.split_once('=') {
                Some(("schur", v)) => schur = Some(v.parse::<GlWeight>()?),
                Some(("twist", v)) => {
                    twist = Some(v.parse::<u8>().map_err(|_| Error::InvalidInput(format!("bad twist {v:?}")))?)
                }
                _ => return invalid(format!("unexpected token {tok:?}")),
            }
        }
        match (schur, twist) {
            (Some(schur), Some(l_twist)) if l_twist < 2 => Ok(BundleLabel { schur, l_twist }),
            _ => invalid(format!("malformed label {s:?}")),
        }
    }
}

/// Young diagrams with at most `k` rows, at most `2n - k` columns, and at
/// least `cols - 2(n - k)` rows, as labels `Sigma^nu R`.
pub fn enumerate_thm333(k: usize, n: usize) -> Result<Vec<GlWeight>> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got k={k} n={n}"));
    }
    let max_cols = 2 * n - k;
    let mut out = Vec::new();
    for p in partitions_in_box(k, max_cols) {
        let rows = p.rows() as i64;
        let cols = p.cols() as i64;
        if rows >= cols - 2 * (n - k) as i64 {
            out.push(p.as_weight());
        }
    }
    Ok(out)
}

/// The box `-2n + 2j - 1 <= lambda_j <= 0`.
pub fn enumerate_sharp(k: usize, n: usize) -> Result<Vec<Weight>> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got k={k} n={n}"));
    }
    let ranges: Vec<Vec<i64>> = (1..=k)
        .map(|j| (-(2 * n as i64) + 2 * j as i64 - 1..=0).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for r in &ranges {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                r.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    Ok(out.iter().map(|v| Weight::from_ints(v)).collect())
}

fn shifted(halves: [i64; 3], shift: [i64; 3]) -> Weight {
    Weight::from_halves(&[halves[0] + 2 * shift[0], halves[1] + 2 * shift[1], halves[2] + 2 * shift[2]])
}

/// The three weight families whose sums index the line bundles pushed
/// forward in the Spin(7) scan.
pub fn hearts_factors() -> [Vec<Weight>; 3] {
    let shift_a = [-5, 0, 0];
    let mut a: Vec<Weight> = [[1, 1, 1], [1, -1, -1], [1, -1, 1], [1, 1, -1]]
        .into_iter()
        .map(|h| shifted(h, shift_a))
        .collect();
    a.extend((0..=4).rev().map(|i| Weight::from_ints(&[-i, 0, 0])));
    let shift_b = [0, -3, 0];
    let mut b: Vec<Weight> = [[1, 1, 1], [1, 1, -1]].into_iter().map(|h| shifted(h, shift_b)).collect();
    b.extend((0..=2).rev().map(|i| Weight::from_ints(&[0, -i, 0])));
    let c = vec![shifted([1, 1, 1], [0, 0, -1]), Weight::from_ints(&[0, 0, 0])];
    [a, b, c]
}

pub fn enumerate_hearts_b3() -> Vec<Weight> {
    let [a, b, c] = hearts_factors();
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
    for x in &a {
        for y in &b {
            for z in &c {
                out.push(x.add(y).add(z));
            }
        }
    }
    out
}

/// Direct images of every scan weight, with the resulting canonical labels.
pub fn igrass37_scan_detailed() -> Result<Vec<(Weight, DirectImage, Option<BundleLabel>)>> {
    enumerate_hearts_b3()
        .into_par_iter()
        .map(|w| {
            let img = relative_bott_flag(3, &w)?;
            let label = match &img {
                DirectImage::Zero => None,
                DirectImage::Image { label, l_twist, .. } => {
                    Some(BundleLabel::normalize(&label.dualize(), i64::from(*l_twist)))
                }
            };
            Ok((w, img, label))
        })
        .collect()
}

pub fn igrass37_scan() -> Result<BTreeSet<BundleLabel>> {
    Ok(igrass37_scan_detailed()?
        .into_iter()
        .filter_map(|(_, _, l)| l)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Exceptional sequence in the given order.
    Sequence,
    /// Strong exceptional sequence in the given order.
    Strong,
    /// Strong set with an admissible partial order.
    Poset,
    /// Strong set with a very strong partial order.
    VeryStrongPoset,
}

impl FromStr for VerifyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequence" => Ok(VerifyMode::Sequence),
            "strong" => Ok(VerifyMode::Strong),
            "poset" => Ok(VerifyMode::Poset),
            "very-strong-poset" | "very_strong_poset" => Ok(VerifyMode::VeryStrongPoset),
            _ => invalid(format!("unknown mode {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OffenceKind {
    /// `E` is not exceptional.
    NotExceptional,
    /// `Ext^*(E_j, E_i) != 0` with `i` before `j`.
    WrongDirection,
    /// `Ext^l(E_i, E_j) != 0` for some `l != 0`.
    HigherExt,
    /// `Hom` nonzero against the partial order.
    OrderViolation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub dim: u128,
    pub kind: OffenceKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub is_exceptional_each: bool,
    pub is_exceptional_sequence: bool,
    pub is_strong: bool,
    pub admissible_poset_ok: Option<bool>,
    pub offenders: Vec<Offender>,
    pub length: usize,
    /// Number of Schubert cells, the length any complete sequence must have.
    pub schubert_count: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.offenders.is_empty()
    }
}

/// Ext tables for every ordered pair, indexed `[source][target]`.
pub fn pairwise_ext(geom: &Geometry, labels: &[Bundle]) -> Result<Vec<Vec<ExtTable>>> {
    let n = labels.len();
    let flat: Vec<ExtTable> = (0..n * n)
        .into_par_iter()
        .map(|ij| ext_table(geom, &labels[ij / n], &labels[ij % n]))
        .collect::<Result<_>>()?;
    Ok(flat.chunks(n).map(|c| c.to_vec()).collect())
}

pub fn schubert_count_of(geom: &Geometry) -> Result<usize> {
    let par = match *geom {
        Geometry::Grass { k, n } => ParabolicSpec::new(RootSystem::new(Family::A, n)?, [k])?,
        Geometry::IGrassC { k, n } => ParabolicSpec::new(RootSystem::new(Family::C, n)?, [k])?,
    };
    par.schubert_count(DEFAULT_WEYL_BUDGET)
}

/// Transitive closure of a strict order given by pairs `a < b`.
fn order_closure(n: usize, less: &[(usize, usize)]) -> Result<Vec<Vec<bool>>> {
    let mut lt = vec![vec![false; n]; n];
    for &(a, b) in less {
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                max: n.saturating_sub(1),
            });
        }
        lt[a][b] = true;
    }
    for m in 0..n {
        for a in 0..n {
            if lt[a][m] {
                for b in 0..n {
                    if lt[m][b] {
                        lt[a][b] = true;
                    }
                }
            }
        }
    }
    if (0..n).any(|a| lt[a][a]) {
        return invalid("order relations contain a cycle");
    }
    Ok(lt)
}

fn offenders_from(table: &ExtTable, source: usize, target: usize, kind: OffenceKind, skip_zero: bool) -> Vec<Offender> {
    table
        .degrees()
        .filter(|&d| !(skip_zero && d == 0))
        .map(|d| Offender {
            source,
            target,
            degree: d,
            dim: table.total_dim(d),
            kind,
        })
        .collect()
}

/// Checks the conditions claimed by `mode`. For poset modes `less` lists the
/// generating relations `a < b` of the partial order; sequence modes ignore it.
pub fn verify_collection(
    geom: &Geometry,
    labels: &[Bundle],
    mode: VerifyMode,
    less: &[(usize, usize)],
) -> Result<VerificationReport> {
    let n = labels.len();
    let ext = pairwise_ext(geom, labels)?;
    let is_zero_deg = |t: &ExtTable| t.vanishes_outside_zero();

    let mut self_off = Vec::new();
    for (i, row) in ext.iter().enumerate() {
        let t = &row[i];
        let ok = is_zero_deg(t) && t.total_dim(0) == 1;
        if !ok {
            self_off.push(Offender {
                source: i,
                target: i,
                degree: t.degrees().find(|&d| d != 0).unwrap_or(0),
                dim: t.total_dim(t.degrees().find(|&d| d != 0).unwrap_or(0)),
                kind: OffenceKind::NotExceptional,
            });
        }
    }
    let mut backward = Vec::new();
    let mut higher = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if i > j {
                backward.extend(offenders_from(&ext[i][j], i, j, OffenceKind::WrongDirection, false));
            }
            higher.extend(offenders_from(&ext[i][j], i, j, OffenceKind::HigherExt, true));
        }
    }
    let is_exceptional_each = self_off.is_empty();
    let is_exceptional_sequence = is_exceptional_each && backward.is_empty();
    let is_strong = higher.is_empty();

    let mut offenders = self_off;
    let mut admissible_poset_ok = None;
    match mode {
        VerifyMode::Sequence => offenders.extend(backward),
        VerifyMode::Strong => {
            offenders.extend(backward);
            offenders.extend(higher);
        }
        VerifyMode::Poset | VerifyMode::VeryStrongPoset => {
            let lt = order_closure(n, less)?;
            let mut order_off = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j || ext[j][i].total_dim(0) == 0 {
                        continue;
                    }
                    // Hom(E_j, E_i) != 0 is allowed only when E_i >= E_j, and
                    // in the admissible case only fails when E_i < E_j.
                    let bad = match mode {
                        VerifyMode::Poset => lt[i][j],
                        _ => !lt[j][i],
                    };
                    if bad {
                        order_off.push(Offender {
                            source: j,
                            target: i,
                            degree: 0,
                            dim: ext[j][i].total_dim(0),
                            kind: OffenceKind::OrderViolation,
                        });
                    }
                }
            }
            admissible_poset_ok = Some(order_off.is_empty());
            offenders.extend(higher);
            offenders.extend(order_off);
        }
    }
    Ok(VerificationReport {
        is_exceptional_each,
        is_exceptional_sequence,
        is_strong,
        admissible_poset_ok,
        offenders,
        length: n,
        schubert_count: schubert_count_of(geom)?,
    })
}

/// Orders in which the labels could possibly form an exceptional sequence.
/// Returns a compatible order, or the pairs with nonzero Ext in both
/// directions when none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderAnalysis {
    Compatible(Vec<usize>),
    TwoWayPairs(Vec<(usize, usize)>),
    Cyclic,
}

pub fn order_analysis(geom: &Geometry, labels: &[Bundle]) -> Result<OrderAnalysis> {
    let n = labels.len();
    let ext = pairwise_ext(geom, labels)?;
    let before = |a: usize, b: usize| !ext[a][b].is_zero();
    let two_way: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| before(a, b) && before(b, a))
        .collect();
    if !two_way.is_empty() {
        return Ok(OrderAnalysis::TwoWayPairs(two_way));
    }
    // Kahn's algorithm on edges a -> b whenever Ext^*(a, b) != 0.
    let mut indeg = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && before(a, b) {
                indeg[b] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for b in 0..n {
            if b != v && before(v, b) {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    if order.len() < n {
        return Ok(OrderAnalysis::Cyclic);
    }
    Ok(OrderAnalysis::Compatible(order))
}

/// `Hom(Sigma^lambda R, Sigma^mu R) != 0` on a Grassmannian iff
/// `lambda_i >= mu_i` for all `i`.
pub fn hom_criterion_grass(lambda: &GlWeight, mu: &GlWeight) -> Result<bool> {
    if lambda.len() != mu.len() {
        return invalid("labels have different lengths");
    }
    Ok(lambda.parts().iter().zip(mu.parts()).all(|(a, b)| a >= b))
}

/// Partitions with at most `rows` rows and at most `cols` columns.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(rows);
    fn rec(rows: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if cur.len() == rows {
            out.push(Partition::new(cur.clone()).expect("non-increasing by construction"));
            return;
        }
        for x in (0..=max).rev() {
            cur.push(x);
            rec(rows, x, cur, out);
            cur.pop();
        }
    }
    rec(rows, cols as i64, &mut cur, &mut out);
    out
}

/// Sorted by decreasing size so that Hom only points forward.
fn descending(mut v: Vec<GlWeight>) -> Vec<GlWeight> {
    v.sort_by(|a, b| b.size().cmp(&a.size()).then(b.cmp(a)));
    v
}

/// `Sigma^lambda R` for `lambda` in the `k x (n-k)` box on `Gr(k, n)`.
pub fn kapranov_collection(k: usize, n: usize) -> Vec<Bundle> {
    descending(partitions_in_box(k, n - k).iter().map(|p| p.as_weight()).collect())
        .into_iter()
        .map(Bundle::schur)
        .collect()
}

fn schur_list(v: &[&[i64]]) -> Vec<Bundle> {
    v.iter()
        .map(|p| Bundle::schur(GlWeight::new(p.to_vec()).expect("static label")))
        .collect()
}

/// `(O, O(1), ..., O(n))` on `P^n = Gr(1, n+1)`.
pub fn projective_line_bundles(n: usize) -> Vec<Bundle> {
    (0..=n as i64)
        .map(|d| Bundle::schur(GlWeight::new(vec![-d]).expect("line bundle label")))
        .collect()
}

/// `(Omega^n(n), ..., Omega^1(1), O)` on `P^n`, with `Omega^p(p)` the exterior
/// power `wedge^p Q^vee` of the dual tautological quotient.
pub fn projective_omega_sequence(n: usize) -> Vec<Bundle> {
    (0..=n)
        .rev()
        .map(|p| {
            let mut q = vec![0i64; n - p];
            q.extend(std::iter::repeat_n(-1, p));
            Bundle::new(
                GlWeight::new(q).expect("exterior power label"),
                GlWeight::new(vec![0]).expect("trivial label"),
            )
        })
        .collect()
}

/// `(O(-2), O(-1), R, O)` on the Lagrangian Grassmannian `IGr(2, 4)`.
pub fn lagrangian_igr24_sequence() -> Vec<Bundle> {
    schur_list(&[&[2, 2], &[1, 1], &[1, 0], &[0, 0]])
}

/// `(R(-3), O(-3), R(-2), O(-2), R(-1), O(-1), R, O)` on `IGr(3, 6)`.
pub fn igr36_sequence() -> Vec<Bundle> {
    schur_list(&[
        &[4, 3, 3],
        &[3, 3, 3],
        &[3, 2, 2],
        &[2, 2, 2],
        &[2, 1, 1],
        &[1, 1, 1],
        &[1, 0, 0],
        &[0, 0, 0],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagOrder {
    /// Lexicographic with the `R_2` label compared first.
    PlaneMajor,
    /// Lexicographic with the `R_1` label compared first.
    LineMajor,
}

/// `Sigma^l1 R_1 (x) Sigma^l2 R_2` on `Fl(1, 2; n)`, `l1` in `Y(1, 1)` and
/// `l2` in `Y(2, n - 2)`, each factor ordered by decreasing size.
pub fn flag12_collection(n: usize, order: FlagOrder) -> Vec<FlagBundle> {
    let planes = descending(partitions_in_box(2, n - 2).iter().map(|p| p.as_weight()).collect());
    let mut out = Vec::new();
    match order {
        FlagOrder::PlaneMajor => {
            for plane in &planes {
                for line in [1, 0] {
                    out.push(FlagBundle { line, plane: plane.clone() });
                }
            }
        }
        FlagOrder::LineMajor => {
            for line in [1, 0] {
                for plane in &planes {
                    out.push(FlagBundle { line, plane: plane.clone() });
                }
            }
        }
    }
    out
}

/// Pairwise checks for a collection on `Fl(1, 2; n)`: the same sequence and
/// strongness conditions as `verify_collection`.
pub fn verify_flag12(n: usize, labels: &[FlagBundle]) -> Result<VerificationReport> {
    let m = labels.len();
    let mut offenders = Vec::new();
    let mut each = true;
    let mut seq = true;
    let mut strong = true;
    for i in 0..m {
        for j in 0..m {
            let t = ext_flag12(n, &labels[i], &labels[j])?;
            if i == j {
                if !(t.vanishes_outside_zero() && t.total_dim(0) == 1) {
                    each = false;
                    offenders.extend(offenders_from(&t, i, j, OffenceKind::NotExceptional, false));
                }
                continue;
            }
            if i > j && !t.is_zero() {
                seq = false;
                offenders.extend(offenders_from(&t, i, j, OffenceKind::WrongDirection, false));
            }
            if !t.vanishes_outside_zero() {
                strong = false;
                offenders.extend(offenders_from(&t, i, j, OffenceKind::HigherExt, true));
            }
        }
    }
    let sys = RootSystem::new(Family::A, n)?;
    let cells = ParabolicSpec::new(sys, [1, 2])?.schubert_count(DEFAULT_WEYL_BUDGET)?;
    Ok(VerificationReport {
        is_exceptional_each: each,
        is_exceptional_sequence: each && seq,
        is_strong: strong,
        admissible_poset_ok: None,
        offenders,
        length: m,
        schubert_count: cells,
    })
}

/// Nonzero Ext groups in positive degree between all ordered pairs.
pub fn higher_ext_table(geom: &Geometry, labels: &[Bundle]) -> Result<Vec<(usize, usize, usize, Weight, u64, u128)>> {
    let ext = pairwise_ext(geom, labels)?;
    let mut out = Vec::new();
    for (i, row) in ext.iter().enumerate() {
        for (j, t) in row.iter().enumerate() {
            for (&d, group) in t.groups() {
                if d == 0 {
                    continue;
                }
                for (w, e) in group {
                    out.push((i, j, d, w.clone(), e.multiplicity, e.dim));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gw(v: &[i64]) -> GlWeight {
        GlWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn generator_counts() {
        assert_eq!(enumerate_thm333(2, 3).unwrap().len(), 14);
        assert_eq!(enumerate_thm333(2, 2).unwrap().len(), 5);
        let p1 = enumerate_thm333(1, 1).unwrap();
        assert_eq!(p1, vec![gw(&[1]), gw(&[0])]);
    }

    #[test]
    fn generators_are_sym_twists() {
        let got: BTreeSet<GlWeight> = enumerate_thm333(2, 3).unwrap().into_iter().collect();
        let mut want = BTreeSet::new();
        for a in 0..=3 {
            for b in 0..=4 - a {
                want.insert(gw(&[a + b, b]));
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn sharp_box_sizes() {
        assert_eq!(enumerate_sharp(1, 2).unwrap().len(), 4);
        assert_eq!(enumerate_sharp(2, 2).unwrap().len(), 8);
        assert_eq!(enumerate_sharp(3, 3).unwrap().len(), 48);
    }

    #[test]
    fn hearts_contents() {
        let h = enumerate_hearts_b3();
        assert_eq!(h.len(), 90);
        assert!(h.contains(&Weight::from_halves(&[-9, -1, -1])));
        assert!(h.contains(&Weight::from_ints(&[0, 0, 0])));
    }

    #[test]
    fn normalization() {
        assert_eq!(BundleLabel::normalize(&gw(&[0, 0, 0]), 2), BundleLabel::plain(gw(&[-1, -1, -1])));
        let l = BundleLabel::normalize(&gw(&[1, 0, 0]), -1);
        assert_eq!(l, BundleLabel { schur: gw(&[2, 1, 1]), l_twist: 1 });
        let s: BundleLabel = "schur=2,2,0 twist=1".parse().unwrap();
        assert_eq!(s.to_string(), "schur=2,2,0 twist=1");
    }

    #[test]
    fn hom_criterion_examples() {
        assert!(hom_criterion_grass(&gw(&[2, 1]), &gw(&[1, 0])).unwrap());
        assert!(hom_criterion_grass(&gw(&[1, 1]), &gw(&[1, 1])).unwrap());
        assert!(!hom_criterion_grass(&gw(&[1, 1]), &gw(&[2, 0])).unwrap());
    }

    #[test]
    fn kapranov_order_sensitivity() {
        let g = Geometry::grass(2, 4).unwrap();
        let mut labels = kapranov_collection(2, 4);
        let r = verify_collection(&g, &labels, VerifyMode::Strong, &[]).unwrap();
        assert!(r.passed() && r.is_strong);
        assert_eq!(r.length, r.schubert_count);
        labels.reverse();
        let r = verify_collection(&g, &labels, VerifyMode::Sequence, &[]).unwrap();
        assert!(!r.passed());
        assert!(r.offenders.iter().all(|o| o.kind == OffenceKind::WrongDirection));
    }

    #[test]
    fn poset_modes() {
        let g = Geometry::grass(1, 3).unwrap();
        // (O(-2), O(-1), O) on P^2.
        let labels = schur_list(&[&[2], &[1], &[0]]);
        let chain = [(0, 1), (1, 2)];
        let r = verify_collection(&g, &labels, VerifyMode::VeryStrongPoset, &chain).unwrap();
        assert!(r.passed());
        let r = verify_collection(&g, &labels, VerifyMode::VeryStrongPoset, &[(0, 1)]).unwrap();
        assert!(!r.passed());
        let r = verify_collection(&g, &labels, VerifyMode::Poset, &[(0, 1)]).unwrap();
        assert!(r.passed());
        let r = verify_collection(&g, &labels, VerifyMode::Poset, &[(2, 0)]).unwrap();
        assert_eq!(r.admissible_poset_ok, Some(false));
        assert!(verify_collection(&g, &labels, VerifyMode::Poset, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn flag_collection_orders() {
        let plane_major = flag12_collection(3, FlagOrder::PlaneMajor);
        assert_eq!(plane_major.len(), 6);
        let r = verify_flag12(3, &plane_major).unwrap();
        assert!(r.is_strong && r.is_exceptional_each);
        assert_eq!(r.schubert_count, 6);
        // Hom(R_1 (x) R_2, det R_2) contains the inclusion R_1 -> R_2.
        assert!(!r.is_exceptional_sequence);
        let pairs: Vec<(usize, usize)> = r.offenders.iter().map(|o| (o.source, o.target)).collect();
        assert_eq!(pairs, vec![(2, 1), (4, 3)]);
        let r = verify_flag12(3, &flag12_collection(3, FlagOrder::LineMajor)).unwrap();
        assert!(r.passed() && r.is_strong, "{:?}", r.offenders);
    }
}
