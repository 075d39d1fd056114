//! The cell complex supporting a resolution of `J = (x_i y_j : i < j)` on
//! `P^n x P^n`. An `h`-face is an index set `i_1 < ... < i_{h+2}` together
//! with a split `mu1 + mu2 = h`; its label uses `x` on the first `mu1 + 1`
//! indices and `y` on the remaining `mu2 + 1`.

use std::collections::HashMap;
use std::fmt;

use super::complex::{Cell, CellComplex, MonomialIdeal};
use super::poly::{Monomial, VarNames};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YnFace {
    pub indices: Vec<usize>,
    pub mu1: usize,
}

impl YnFace {
    pub fn new(indices: Vec<usize>, mu1: usize) -> Result<Self> {
        if indices.len() < 2 || indices.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("face indices must be strictly increasing with at least two entries");
        }
        if mu1 > indices.len() - 2 {
            return invalid("mu1 exceeds the face dimension");
        }
        Ok(YnFace { indices, mu1 })
    }

    pub fn dim(&self) -> usize {
        self.indices.len() - 2
    }

    pub fn mu2(&self) -> usize {
        self.dim() - self.mu1
    }

    pub fn label(&self, n: usize) -> Monomial {
        let mut e = vec![0u32; 2 * n + 2];
        for (pos, &i) in self.indices.iter().enumerate() {
            if pos <= self.mu1 {
                e[i] += 1;
            } else {
                e[n + 1 + i] += 1;
            }
        }
        Monomial(e)
    }

    fn without(&self, pos: usize, mu1: usize) -> YnFace {
        let mut indices = self.indices.clone();
        indices.remove(pos);
        YnFace { indices, mu1 }
    }

    /// Facets with incidence signs. Erasing the `l`-th `x` entry
    /// (`1 <= l <= mu1 + 1`, needs `mu1 >= 1`) has sign `(-1)^l`; erasing
    /// the `j`-th `y` entry (`1 <= j <= mu2 + 1`, needs `mu2 >= 1`) has sign
    /// `(-1)^(mu1 + j)`.
    pub fn facets(&self) -> Vec<(YnFace, i64)> {
        let sign = |p: usize| if p.is_multiple_of(2) { 1 } else { -1 };
        let mut out = Vec::new();
        if self.dim() == 0 {
            return out;
        }
        if self.mu1 >= 1 {
            for l in 1..=self.mu1 + 1 {
                out.push((self.without(l - 1, self.mu1 - 1), sign(l)));
            }
        }
        if self.mu2() >= 1 {
            for j in 1..=self.mu2() + 1 {
                out.push((self.without(self.mu1 + j, self.mu1), sign(self.mu1 + j)));
            }
        }
        out
    }
}

impl fmt::Display for YnFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}/{}", idx.join(","), self.mu1)
    }
}

/// All faces ordered by dimension, then index set, then decreasing `mu1`.
pub fn yn_faces(n: usize) -> Vec<YnFace> {
    let mut out = Vec::new();
    for h in 0..n {
        for set in combinations(n + 1, h + 2) {
            for mu1 in (0..=h).rev() {
                out.push(YnFace { indices: set.clone(), mu1 });
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YnComplex {
    pub n: usize,
    pub faces: Vec<YnFace>,
    pub complex: CellComplex,
}

impl YnComplex {
    pub fn index_of(&self, face: &YnFace) -> Option<usize> {
        self.faces.iter().position(|f| f == face)
    }

    pub fn names(&self) -> VarNames {
        VarNames::Doubled { n: self.n }
    }
}

pub fn yn_build(n: usize) -> Result<YnComplex> {
    if n == 0 {
        return invalid("Y^n needs n >= 1");
    }
    let faces = yn_faces(n);
    let index: HashMap<&YnFace, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let cells = faces
        .iter()
        .map(|f| Cell {
            dim: f.dim(),
            label: f.label(n),
            facets: f.facets().iter().map(|(g, s)| (index[g], *s)).collect(),
        })
        .collect();
    Ok(YnComplex {
        n,
        complex: CellComplex::new(cells)?,
        faces,
    })
}

/// `J = (x_i y_j)_{0 <= i < j <= n}` in `2n + 2` variables.
pub fn j_ideal(n: usize) -> Result<MonomialIdeal> {
    let gens = combinations(n + 1, 2)
        .into_iter()
        .map(|p| YnFace { indices: p, mu1: 0 }.label(n))
        .collect();
    MonomialIdeal::new(2 * n + 2, gens)
}

#[cfg(test)]
mod tests {
    use super::super::complex::{cellular_complex, is_resolution, AuditViolation};
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_pictures() {
        let y1 = yn_build(1).unwrap();
        assert_eq!(y1.complex.f_vector(), vec![1]);
        assert_eq!(y1.names().monomial(&y1.complex.cells[0].label), "x0*y1");
        let y2 = yn_build(2).unwrap();
        assert_eq!(y2.complex.f_vector(), vec![3, 2]);
        let labels: Vec<String> = y2.complex.vertices().map(|(_, c)| y2.names().monomial(&c.label)).collect();
        assert_eq!(labels, ["x0*y1", "x0*y2", "x1*y2"]);
        assert_eq!(yn_build(3).unwrap().complex.f_vector(), vec![6, 8, 3]);
    }

    #[test]
    fn f_vectors() {
        for n in 1..=6 {
            let f = yn_build(n).unwrap().complex.f_vector();
            let want: Vec<usize> = (0..n).map(|h| (h + 1) * binom(n + 1, h + 2)).collect();
            assert_eq!(f, want, "n={n}");
        }
    }

    #[test]
    fn incidence_audit_passes() {
        for n in 1..=5 {
            assert_eq!(yn_build(n).unwrap().complex.incidence_audit(), None, "n={n}");
        }
    }

    #[test]
    fn corrupted_sign_fails_audit() {
        let y = yn_build(2).unwrap();
        let edge = y.faces.iter().position(|f| f.dim() == 1).unwrap();
        let (facet, _) = y.complex.cells[edge].facets[0];
        let bad = y.complex.with_flipped_sign(edge, facet).unwrap();
        assert!(matches!(bad.incidence_audit(), Some(AuditViolation::SignSum { lower: None, .. })));
    }

    #[test]
    fn resolves_j() {
        for n in 1..=3 {
            let y = yn_build(n).unwrap();
            let r = is_resolution(&y.complex, &j_ideal(n).unwrap()).unwrap();
            assert!(r.is_resolution(), "n={n}: {:?}", r.failure);
        }
    }

    #[test]
    fn strands_are_chain_complexes_of_subcomplexes() {
        // The strand of the cellular complex at b is the augmented chain
        // complex of the cells with labels dividing b, so its homology is
        // the reduced homology shifted by one.
        let n = 2;
        let y = yn_build(n).unwrap();
        let j = j_ideal(n).unwrap();
        let f = cellular_complex(&y.complex, &j, y.names()).unwrap();
        for b in j.lcm_lattice() {
            let mut strand = vec![f.quotient_dim(&b.0)];
            strand.extend(f.strand_homology(&b.0));
            let reduced = y.complex.reduced_homology_below(&b);
            assert_eq!(&strand[..reduced.len()], &reduced[..], "b={b}");
        }
    }

    #[test]
    fn cellular_complex_is_homogeneous() {
        for n in 1..=4 {
            let y = yn_build(n).unwrap();
            let f = cellular_complex(&y.complex, &j_ideal(n).unwrap(), y.names()).unwrap();
            assert!(f.is_complex().unwrap() && f.is_homogeneous(), "n={n}");
        }
    }

    #[test]
    fn p1_resolution_map() {
        let y = yn_build(1).unwrap();
        let f = cellular_complex(&y.complex, &j_ideal(1).unwrap(), y.names()).unwrap();
        assert_eq!(f.export(0).unwrap(), "0\t0\tx0*y1\n");
    }
}
