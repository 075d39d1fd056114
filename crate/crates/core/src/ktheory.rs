//! The Euler form on the Grothendieck group in an exceptional basis and the
//! braid group action of mutations on classes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bott::{Bundle, Geometry};
use crate::error::{invalid, Error, Result};
use crate::excseq::pairwise_ext;

/// `G[i][j] = chi(E_i, E_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix(Vec<Vec<i64>>);

impl GramMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("Gram matrix must be square");
        }
        Ok(GramMatrix(rows))
    }

    pub fn identity(n: usize) -> Self {
        GramMatrix((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| self.0[i][i] == 1 && (0..i).all(|j| self.0[i][j] == 0))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.size();
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = self.0.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// `u^T G v`.
    pub fn chi(&self, u: &KClass, v: &KClass) -> Result<BigInt> {
        let n = self.size();
        if u.0.len() != n || v.0.len() != n {
            return invalid("class length does not match the Gram matrix");
        }
        let mut acc = BigInt::zero();
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let row: BigInt = (0..n).map(|j| &v.0[j] * self.0[i][j]).sum();
            acc += ui * row;
        }
        Ok(acc)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl FromStr for GramMatrix {
    type Err = Error;
    /// Rows separated by `;`, entries by `,`.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::InvalidInput(format!("bad matrix entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GramMatrix::new(rows)
    }
}

/// Coordinates of a class in the initial exceptional basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass(pub Vec<BigInt>);

impl KClass {
    pub fn basis(n: usize, i: usize) -> Self {
        KClass((0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        KClass(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `a * x - y`.
    fn combine(a: &BigInt, x: &KClass, y: &KClass) -> KClass {
        KClass(x.0.iter().zip(&y.0).map(|(p, q)| a * p - q).collect())
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Direction::Left),
            "right" | "r" => Ok(Direction::Right),
            _ => invalid(format!("unknown direction {s:?}")),
        }
    }
}

/// Classes tracked through mutations against a fixed Euler form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationState {
    pub classes: Vec<KClass>,
    pub gram: GramMatrix,
}

impl MutationState {
    /// The initial basis of a Gram matrix.
    pub fn initial(gram: GramMatrix) -> Self {
        let n = gram.size();
        MutationState {
            classes: (0..n).map(|i| KClass::basis(n, i)).collect(),
            gram,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn chi(&self, i: usize, j: usize) -> Result<BigInt> {
        self.gram.chi(&self.classes[i], &self.classes[j])
    }

    /// `chi(c_i, c_i) = 1` and `chi(c_j, c_i) = 0` for `j > i`.
    pub fn is_semi_orthonormal(&self) -> Result<bool> {
        let n = self.len();
        for i in 0..n {
            if !self.chi(i, i)?.is_one() {
                return Ok(false);
            }
            for j in i + 1..n {
                if !self.chi(j, i)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Gram matrix of the current classes.
    pub fn current_gram(&self) -> Result<Vec<Vec<BigInt>>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.chi(i, j)).collect())
            .collect()
    }
}

/// `L_{E}X = chi(E, X) E - X`.
fn left_of(gram: &GramMatrix, e: &KClass, x: &KClass) -> Result<KClass> {
    Ok(KClass::combine(&gram.chi(e, x)?, e, x))
}

/// `R_{E}X = chi(X, E) E - X`.
fn right_of(gram: &GramMatrix, e: &KClass, x: &KClass) -> Result<KClass> {
    Ok(KClass::combine(&gram.chi(x, e)?, e, x))
}

/// Mutation at positions `i, i+1` (1-based `i`). Left replaces the pair by
/// `(L_{E_i} E_{i+1}, E_i)`, right by `(E_{i+1}, R_{E_{i+1}} E_i)`.
pub fn mutate(state: &MutationState, i: usize, dir: Direction) -> Result<MutationState> {
    let n = state.len();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    let (a, b) = (&state.classes[i - 1], &state.classes[i]);
    let (first, second) = match dir {
        Direction::Left => (left_of(&state.gram, a, b)?, a.clone()),
        Direction::Right => (b.clone(), right_of(&state.gram, b, a)?),
    };
    let mut classes = state.classes.clone();
    classes[i - 1] = first;
    classes[i] = second;
    Ok(MutationState {
        classes,
        gram: state.gram.clone(),
    })
}

/// Applies `(i, dir)` steps left to right.
pub fn apply_word(state: &MutationState, word: &[(usize, Direction)]) -> Result<MutationState> {
    word.iter()
        .try_fold(state.clone(), |s, &(i, dir)| mutate(&s, i, dir))
}

/// Right dual `E_i^vee = L_{E_1} ... L_{E_{n-i}} E_{n-i+1}` or left dual
/// `^vee E_i = R_{E_n} ... R_{E_{n-i+2}} E_{n-i+1}`.
pub fn dual_sequence(state: &MutationState, side: Direction) -> Result<Vec<KClass>> {
    let n = state.len();
    let e = &state.classes;
    (1..=n)
        .map(|i| {
            let mut x = e[n - i].clone();
            match side {
                Direction::Right => {
                    for t in (0..n - i).rev() {
                        x = left_of(&state.gram, &e[t], &x)?;
                    }
                }
                Direction::Left => {
                    for t in n - i + 1..n {
                        x = right_of(&state.gram, &e[t], &x)?;
                    }
                }
            }
            Ok(x)
        })
        .collect()
}

pub fn kron_gram(gx: &GramMatrix, gy: &GramMatrix) -> GramMatrix {
    let (nx, ny) = (gx.size(), gy.size());
    let mut rows = vec![vec![0i64; nx * ny]; nx * ny];
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nx {
                for l in 0..ny {
                    rows[i * ny + j][k * ny + l] = gx.0[i][k] * gy.0[j][l];
                }
            }
        }
    }
    GramMatrix(rows)
}

pub fn gram_from_collection(geom: &Geometry, labels: &[Bundle]) -> Result<GramMatrix> {
    let ext = pairwise_ext(geom, labels)?;
    let rows = ext
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| {
                    i64::try_from(t.euler_characteristic()).map_err(|_| Error::Overflow("Euler characteristic".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GramMatrix::new(rows)
}
