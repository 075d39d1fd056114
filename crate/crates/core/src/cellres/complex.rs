use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::linalg::IntMatrix;
use super::poly::{exponent_vectors, Monomial, Poly, PolyMatrix, VarNames};
use crate::error::{invalid, Error, Result};

/// Minimal monomial generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<Monomial>) -> Result<Self> {
        if generators.iter().any(|g| g.nvars() != nvars) {
            return invalid("generator has the wrong number of variables");
        }
        for (a, g) in generators.iter().enumerate() {
            for (b, h) in generators.iter().enumerate() {
                if a != b && g.divides(h) {
                    return invalid(format!("generator {h} is divisible by {g}"));
                }
            }
        }
        Ok(MonomialIdeal { nvars, generators })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Every lcm of a nonempty subset of generators.
    pub fn lcm_lattice(&self) -> BTreeSet<Monomial> {
        let mut points: BTreeSet<Monomial> = self.generators.iter().cloned().collect();
        let mut frontier: Vec<Monomial> = points.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in &self.generators {
                let q = p.lcm(g);
                if points.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        points
    }
}

/// A cell in a labeled regular cell complex. The empty face is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub label: Monomial,
    /// Facets with their incidence signs. Vertices list none; their
    /// incidence with the empty face is `+1`.
    pub facets: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
}

/// The position of a face below a cell, with `None` for the empty face.
type FaceRef = Option<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditViolation {
    /// A codimension-two face lies in a number of facets other than two.
    NotTwoFacets { cell: usize, lower: FaceRef, count: usize },
    /// The two incidence products do not cancel.
    SignSum { cell: usize, lower: FaceRef, via: (usize, usize), sum: i64 },
    /// A facet does not have dimension one less.
    BadDimension { cell: usize, facet: usize },
    /// A label is not the lcm of the labels of its vertices.
    BadLabel { cell: usize },
}

impl CellComplex {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        for (i, c) in cells.iter().enumerate() {
            for &(f, s) in &c.facets {
                if f >= cells.len() {
                    return Err(Error::IndexOutOfRange { index: f, max: cells.len() - 1 });
                }
                if s.abs() != 1 {
                    return invalid(format!("cell {i} has incidence {s} with {f}"));
                }
            }
        }
        Ok(CellComplex { cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dimension().map_or(0, |d| d + 1)];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn vertices(&self) -> impl Iterator<Item = (usize, &Cell)> {
        self.cells.iter().enumerate().filter(|(_, c)| c.dim == 0)
    }

    fn facets_of(&self, f: FaceRef) -> Vec<(FaceRef, i64)> {
        match f {
            None => Vec::new(),
            Some(i) if self.cells[i].dim == 0 => vec![(None, 1)],
            Some(i) => self.cells[i].facets.iter().map(|&(j, s)| (Some(j), s)).collect(),
        }
    }

    fn vertex_set(&self, i: usize) -> BTreeSet<usize> {
        let c = &self.cells[i];
        if c.dim == 0 {
            return BTreeSet::from([i]);
        }
        c.facets.iter().flat_map(|&(j, _)| self.vertex_set(j)).collect()
    }

    /// Checks labels, facet dimensions, the two-facet property for every
    /// codimension-two pair and the cancellation of incidence products.
    /// Returns the first violation found.
    pub fn incidence_audit(&self) -> Option<AuditViolation> {
        for (i, c) in self.cells.iter().enumerate() {
            for &(f, _) in &c.facets {
                if self.cells[f].dim + 1 != c.dim {
                    return Some(AuditViolation::BadDimension { cell: i, facet: f });
                }
            }
            if c.dim > 0 {
                let n = c.label.nvars();
                let lcm = self
                    .vertex_set(i)
                    .iter()
                    .fold(Monomial::one(n), |acc, &v| acc.lcm(&self.cells[v].label));
                if lcm != c.label {
                    return Some(AuditViolation::BadLabel { cell: i });
                }
            }
        }
        for i in 0..self.cells.len() {
            if self.cells[i].dim == 0 {
                continue;
            }
            let mut through: BTreeMap<FaceRef, Vec<(usize, i64)>> = BTreeMap::new();
            for (f, s) in self.facets_of(Some(i)) {
                let f = f.expect("positive-dimensional cell has cell facets");
                for (g, t) in self.facets_of(Some(f)) {
                    through.entry(g).or_default().push((f, s * t));
                }
            }
            for (lower, paths) in through {
                if paths.len() != 2 {
                    return Some(AuditViolation::NotTwoFacets { cell: i, lower, count: paths.len() });
                }
                let sum = paths[0].1 + paths[1].1;
                if sum != 0 {
                    return Some(AuditViolation::SignSum {
                        cell: i,
                        lower,
                        via: (paths[0].0, paths[1].0),
                        sum,
                    });
                }
            }
        }
        None
    }

    /// A copy with the sign of `(cell, facet)` negated.
    pub fn with_flipped_sign(&self, cell: usize, facet: usize) -> Result<Self> {
        let mut out = self.clone();
        let c = out
            .cells
            .get_mut(cell)
            .ok_or(Error::IndexOutOfRange { index: cell, max: self.cells.len().saturating_sub(1) })?;
        match c.facets.iter_mut().find(|(f, _)| *f == facet) {
            Some(entry) => entry.1 = -entry.1,
            None => return invalid(format!("{facet} is not a facet of {cell}")),
        }
        Ok(out)
    }

    /// Reduced homology of the subcomplex of cells whose labels divide `b`,
    /// indexed from degree -1.
    pub fn reduced_homology_below(&self, b: &Monomial) -> Vec<usize> {
        let keep: Vec<usize> = (0..self.cells.len()).filter(|&i| self.cells[i].label.divides(b)).collect();
        let top = keep.iter().map(|&i| self.cells[i].dim).max();
        let Some(top) = top else {
            return vec![1];
        };
        // Position in the chain group of each kept cell.
        let mut pos: HashMap<usize, usize> = HashMap::new();
        let mut counts = vec![0usize; top + 1];
        for &i in &keep {
            let d = self.cells[i].dim;
            pos.insert(i, counts[d]);
            counts[d] += 1;
        }
        // ranks[h] is the rank of the boundary from dimension h to h-1,
        // dimension -1 being the empty face.
        let mut ranks = vec![0usize; top + 2];
        for h in 0..=top {
            let rows = if h == 0 { 1 } else { counts[h - 1] };
            let mut m = IntMatrix::new(rows, counts[h]);
            for &i in keep.iter().filter(|&&i| self.cells[i].dim == h) {
                if h == 0 {
                    m.add(0, pos[&i], 1);
                } else {
                    for &(f, s) in &self.cells[i].facets {
                        m.add(pos[&f], pos[&i], s);
                    }
                }
            }
            ranks[h] = m.rank();
        }
        let mut out = vec![1 - ranks[0]];
        for h in 0..=top {
            out.push(counts[h] - ranks[h] - ranks[h + 1]);
        }
        out
    }
}

/// The grading used to split a complex into finite-dimensional strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// By exponent vector.
    Fine,
    /// By (degree in the first `split` variables, degree in the rest).
    Bi { split: usize },
}

impl Grading {
    pub fn grade(&self, m: &Monomial) -> Vec<u32> {
        match *self {
            Grading::Fine => m.0.clone(),
            Grading::Bi { split } => vec![m.0[..split].iter().sum(), m.0[split..].iter().sum()],
        }
    }

    /// Monomials of the given grade.
    fn monomials(&self, nvars: usize, g: &[u32]) -> Vec<Monomial> {
        match *self {
            Grading::Fine => vec![Monomial(g.to_vec())],
            Grading::Bi { split } => {
                let mut out = Vec::new();
                for a in exponent_vectors(split, g[0]) {
                    for b in exponent_vectors(nvars - split, g[1]) {
                        let mut v = a.clone();
                        v.extend(b);
                        out.push(Monomial(v));
                    }
                }
                out
            }
        }
    }
}

/// A complex `0 -> F_top -> ... -> F_0 -> S` of free modules over a
/// polynomial ring. `differentials[h]` maps `F_h` to `F_{h-1}`, with
/// `differentials[0]` the one-row augmentation into `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    pub nvars: usize,
    pub names: VarNames,
    pub grading: Grading,
    /// Degrees of the generators of each `F_h`, in the grading group.
    pub generator_degrees: Vec<Vec<Vec<u32>>>,
    pub differentials: Vec<PolyMatrix>,
}

impl GradedComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.generator_degrees.iter().map(|g| g.len()).collect()
    }

    pub fn top(&self) -> usize {
        self.generator_degrees.len().saturating_sub(1)
    }

    /// Every composite of consecutive maps, the augmentation included,
    /// vanishes.
    pub fn is_complex(&self) -> Result<bool> {
        for h in 1..self.differentials.len() {
            if !self.differentials[h - 1].mul(&self.differentials[h])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Each entry is homogeneous of the degree difference of its generators.
    pub fn is_homogeneous(&self) -> bool {
        let zero = |len| vec![0u32; len];
        self.differentials.iter().enumerate().all(|(h, d)| {
            d.entries().all(|(&(r, c), p)| {
                let target = if h == 0 {
                    zero(self.generator_degrees[0][c].len())
                } else {
                    self.generator_degrees[h - 1][r].clone()
                };
                let source = &self.generator_degrees[h][c];
                p.terms().all(|(m, _)| {
                    let g = self.grading.grade(m);
                    g.iter().zip(&target).map(|(a, b)| a + b).eq(source.iter().copied())
                })
            })
        })
    }

    /// A copy using a coarser grading.
    pub fn regrade(&self, grading: Grading) -> Result<Self> {
        if self.grading != Grading::Fine {
            return invalid("only a finely graded complex can be regraded");
        }
        let mut out = self.clone();
        out.grading = grading;
        for degs in &mut out.generator_degrees {
            for d in degs.iter_mut() {
                *d = grading.grade(&Monomial(d.clone()));
            }
        }
        Ok(out)
    }

    fn strand_basis(&self, h: usize, g: &[u32]) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (j, deg) in self.generator_degrees[h].iter().enumerate() {
            if deg.len() != g.len() || deg.iter().zip(g).any(|(a, b)| a > b) {
                continue;
            }
            let rest: Vec<u32> = g.iter().zip(deg).map(|(a, b)| a - b).collect();
            for m in self.grading.monomials(self.nvars, &rest) {
                out.push((j, m));
            }
        }
        out
    }

    /// The integer matrices of the strand at grade `g`, starting with the
    /// augmentation `F_0 -> S_g`. Also returns `dim S_g`.
    pub fn strand(&self, g: &[u32]) -> (usize, Vec<IntMatrix>) {
        let target_s: Vec<Monomial> = self.grading.monomials(self.nvars, g);
        let mut mats = Vec::new();
        let mut rows: Vec<(usize, Monomial)> = target_s.iter().map(|m| (0, m.clone())).collect();
        for h in 0..self.differentials.len() {
            let cols = self.strand_basis(h, g);
            let index: HashMap<&(usize, Monomial), usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
            let mut m = IntMatrix::new(rows.len(), cols.len());
            let by_col = column_entries(&self.differentials[h]);
            for (ci, (j, mono)) in cols.iter().enumerate() {
                for (r, p) in by_col.get(j).into_iter().flatten() {
                    for (u, c) in p.terms() {
                        let key = (*r, mono.mul(u));
                        let ri = index.get(&key).expect("homogeneous entry lands in the strand");
                        m.add(*ri, ci, c);
                    }
                }
            }
            mats.push(m);
            rows = cols;
        }
        (target_s.len(), mats)
    }

    /// `dim H_h` of the strand for `h = 0..=top`, where position `0` is the
    /// kernel of the augmentation modulo the image of `F_1`.
    pub fn strand_homology(&self, g: &[u32]) -> Vec<usize> {
        let (_, mats) = self.strand(g);
        let ranks: Vec<usize> = mats.iter().map(|m| m.rank()).collect();
        (0..mats.len())
            .map(|h| mats[h].ncols() - ranks[h] - ranks.get(h + 1).copied().unwrap_or(0))
            .collect()
    }

    /// `dim (S / image of the augmentation)_g`.
    pub fn quotient_dim(&self, g: &[u32]) -> usize {
        let (s, mats) = self.strand(g);
        s - mats.first().map_or(0, |m| m.rank())
    }

    /// Sparse triples of `differentials[h]`.
    pub fn export(&self, h: usize) -> Result<String> {
        self.differentials
            .get(h)
            .map(|d| d.export(self.names))
            .ok_or(Error::IndexOutOfRange { index: h, max: self.differentials.len().saturating_sub(1) })
    }
}

fn column_entries(d: &PolyMatrix) -> HashMap<usize, Vec<(usize, Poly)>> {
    let mut out: HashMap<usize, Vec<(usize, Poly)>> = HashMap::new();
    for (&(r, c), p) in d.entries() {
        out.entry(c).or_default().push((r, p.clone()));
    }
    out
}

/// The cellular complex of `x` with labels from `ideal`.
pub fn cellular_complex(x: &CellComplex, ideal: &MonomialIdeal, names: VarNames) -> Result<GradedComplex> {
    let gens: BTreeSet<&Monomial> = ideal.generators().iter().collect();
    let labels: BTreeSet<&Monomial> = x.vertices().map(|(_, c)| &c.label).collect();
    if gens != labels {
        return Err(Error::LabelMismatch("vertex labels differ from the ideal generators".into()));
    }
    let top = x.dimension().unwrap_or(0);
    let mut pos = vec![0usize; x.len()];
    let mut degrees: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    for (i, c) in x.cells.iter().enumerate() {
        pos[i] = degrees[c.dim].len();
        degrees[c.dim].push(c.label.0.clone());
    }
    let mut diffs: Vec<PolyMatrix> = (0..=top)
        .map(|h| PolyMatrix::new(if h == 0 { 1 } else { degrees[h - 1].len() }, degrees[h].len()))
        .collect();
    for (i, c) in x.cells.iter().enumerate() {
        if c.dim == 0 {
            diffs[0].add_to(0, pos[i], &Poly::term(1, c.label.clone()));
            continue;
        }
        for &(f, s) in &c.facets {
            let q = x.cells[f]
                .label
                .quotient_of(&c.label)
                .ok_or_else(|| Error::LabelMismatch(format!("label of {f} does not divide label of {i}")))?;
            diffs[c.dim].add_to(pos[f], pos[i], &Poly::term(s, q));
        }
    }
    Ok(GradedComplex {
        nvars: ideal.nvars(),
        names,
        grading: Grading::Fine,
        generator_degrees: degrees,
        differentials: diffs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub lattice_points: usize,
    /// The first lattice point with nonzero reduced homology, if any.
    pub failure: Option<(Monomial, Vec<usize>)>,
}

impl ResolutionReport {
    pub fn is_resolution(&self) -> bool {
        self.failure.is_none()
    }
}

/// Acyclicity of every `X_{<= b}` for `b` in the lcm lattice.
pub fn is_resolution(x: &CellComplex, ideal: &MonomialIdeal) -> Result<ResolutionReport> {
    let gens: BTreeSet<&Monomial> = ideal.generators().iter().collect();
    let labels: BTreeSet<&Monomial> = x.vertices().map(|(_, c)| &c.label).collect();
    if gens != labels {
        return Err(Error::LabelMismatch("vertex labels differ from the ideal generators".into()));
    }
    let points: Vec<Monomial> = ideal.lcm_lattice().into_iter().collect();
    let failure = points
        .par_iter()
        .map(|b| (b, x.reduced_homology_below(b)))
        .filter(|(_, h)| h.iter().any(|&d| d != 0))
        .min_by(|a, b| a.0.cmp(b.0))
        .map(|(b, h)| (b.clone(), h));
    Ok(ResolutionReport {
        lattice_points: points.len(),
        failure,
    })
}
