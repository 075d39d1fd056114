//! The Eagon–Northcott complex of the `2 x (n+1)` matrix with rows `x` and
//! `y`, and its degeneration resolving `J`. Both use the basis
//! `f_I (x) xi^mu1 eta^mu2`, indexed like the faces of `Y^n`.

use std::collections::HashMap;

use super::complex::{GradedComplex, Grading};
use super::poly::{Monomial, Poly, PolyMatrix, VarNames};
use super::yn::{yn_faces, YnFace};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Resolves the ideal of 2-minors `x_i y_j - x_j y_i`.
    Full,
    /// Keeps only the `x` terms at positions `l <= mu1 + 1` and the `y`
    /// terms at positions `l >= mu1 + 2`; resolves `J`.
    Degenerate,
}

fn build(n: usize, variant: Variant) -> Result<GradedComplex> {
    if n == 0 {
        return invalid("the complex needs n >= 1");
    }
    let nvars = 2 * n + 2;
    let faces = yn_faces(n);
    let mut by_dim: Vec<Vec<&YnFace>> = vec![Vec::new(); n];
    for f in &faces {
        by_dim[f.dim()].push(f);
    }
    let pos: Vec<HashMap<&YnFace, usize>> = by_dim
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
        .collect();
    let x = |i: usize| Monomial::var(nvars, i);
    let y = |i: usize| Monomial::var(nvars, n + 1 + i);
    let sign = |l: usize| if l % 2 == 1 { 1 } else { -1 };

    let mut diffs = Vec::with_capacity(n);
    let mut aug = PolyMatrix::new(1, by_dim[0].len());
    for (c, f) in by_dim[0].iter().enumerate() {
        let (i, j) = (f.indices[0], f.indices[1]);
        let mut p = Poly::term(1, x(i).mul(&y(j)));
        if variant == Variant::Full {
            p.add_term(-1, x(j).mul(&y(i)));
        }
        aug.add_to(0, c, &p);
    }
    diffs.push(aug);
    for h in 1..n {
        let mut d = PolyMatrix::new(by_dim[h - 1].len(), by_dim[h].len());
        for (c, f) in by_dim[h].iter().enumerate() {
            let len = h + 2;
            for l in 1..=len {
                let mut rest = f.indices.clone();
                let j = rest.remove(l - 1);
                let x_used = variant == Variant::Full || l <= f.mu1 + 1;
                if f.mu1 >= 1 && x_used {
                    let g = YnFace { indices: rest.clone(), mu1: f.mu1 - 1 };
                    d.add_to(pos[h - 1][&g], c, &Poly::term(sign(l), x(j)));
                }
                let y_used = variant == Variant::Full || l >= f.mu1 + 2;
                if f.mu2() >= 1 && y_used {
                    let g = YnFace { indices: rest, mu1: f.mu1 };
                    d.add_to(pos[h - 1][&g], c, &Poly::term(sign(l), y(j)));
                }
            }
        }
        diffs.push(d);
    }
    let generator_degrees = by_dim
        .iter()
        .map(|fs| fs.iter().map(|f| vec![(f.mu1 + 1) as u32, (f.mu2() + 1) as u32]).collect())
        .collect();
    Ok(GradedComplex {
        nvars,
        names: VarNames::Doubled { n },
        grading: Grading::Bi { split: n + 1 },
        generator_degrees,
        differentials: diffs,
    })
}

pub fn eagon_northcott(n: usize) -> Result<GradedComplex> {
    build(n, Variant::Full)
}

pub fn degenerate_eagon_northcott(n: usize) -> Result<GradedComplex> {
    build(n, Variant::Degenerate)
}

/// A copy with generator `j` of `F_h` replaced by `signs[h][j]` times itself.
pub fn rescale(c: &GradedComplex, signs: &[Vec<i64>]) -> Result<GradedComplex> {
    if signs.len() != c.generator_degrees.len()
        || signs.iter().zip(&c.generator_degrees).any(|(s, g)| s.len() != g.len())
    {
        return invalid("sign vector shape does not match the complex");
    }
    let mut out = c.clone();
    for (h, d) in c.differentials.iter().enumerate() {
        let mut m = PolyMatrix::new(d.rows, d.cols);
        for (&(r, col), p) in d.entries() {
            let row_sign = if h == 0 { 1 } else { signs[h - 1][r] };
            m.add_to(r, col, &p.scale(row_sign * signs[h][col]));
        }
        out.differentials[h] = m;
    }
    Ok(out)
}

/// `(-1)^mu1` on each basis vector, in the face order of [`yn_faces`].
pub fn mu1_signs(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new(); n];
    for f in yn_faces(n) {
        out[f.dim()].push(if f.mu1 % 2 == 0 { 1 } else { -1 });
    }
    out
}
