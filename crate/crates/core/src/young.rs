//! Dominant `GL_k` weights, partitions and the Littlewood-Richardson rule.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A non-increasing integer vector: the highest weight of an irreducible
/// `GL_k` representation, i.e. a Schur functor label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlWeight(Vec<i64>);

impl GlWeight {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{v:?} is not non-increasing"));
        }
        Ok(GlWeight(v))
    }

    pub fn zero(k: usize) -> Self {
        GlWeight(vec![0; k])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Label of the dual representation.
    pub fn dualize(&self) -> GlWeight {
        GlWeight(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Tensor with the `c`-th power of the determinant.
    pub fn det_twist(&self, c: i64) -> GlWeight {
        GlWeight(self.0.iter().map(|x| x + c).collect())
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn max(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }
}

impl fmt::Display for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for GlWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(GlWeight(Vec::new()));
        }
        let v = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("cannot parse integer {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GlWeight::new(v)
    }
}

/// A Young diagram stored as its non-increasing, non-negative row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|&x| x < 0) {
            return invalid(format!("{v:?} has negative parts"));
        }
        GlWeight::new(v.clone())?;
        Ok(Partition(v))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.iter().filter(|&&x| x > 0).count()
    }

    pub fn cols(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(i, &x)| x <= self.0.get(i).copied().unwrap_or(0))
    }

    pub fn as_weight(&self) -> GlWeight {
        GlWeight(self.0.clone())
    }
}

/// Irreducible constituents of a tensor product with multiplicities.
pub type LrDecomposition = BTreeMap<GlWeight, u64>;

/// Decomposes `Sigma^lambda (x) Sigma^mu` for `GL_k`, `k = len(lambda)`.
pub fn lr_decompose(lambda: &GlWeight, mu: &GlWeight) -> Result<LrDecomposition> {
    let k = lambda.len();
    if mu.len() != k {
        return invalid(format!(
            "weights {lambda} and {mu} have different lengths"
        ));
    }
    if k == 0 {
        return Ok(BTreeMap::from([(GlWeight(Vec::new()), 1)]));
    }
    let sl = (-lambda.min()).max(0);
    let sm = (-mu.min()).max(0);
    let base: Vec<i64> = lambda.det_twist(sl).0;
    let labels: Vec<i64> = mu.det_twist(sm).0.into_iter().filter(|&x| x > 0).collect();
    let mut out = BTreeMap::new();
    let mut counts = vec![vec![0i64; labels.len()]; k];
    place_strips(&base, &labels, 0, &mut counts, &mut |shape| {
        *out.entry(GlWeight(shape.iter().map(|x| x - sl - sm).collect()))
            .or_insert(0) += 1;
    });
    Ok(out)
}

/// Adds horizontal strips labelled `label, label+1, ...` and reports every
/// final shape whose reading word is a lattice word.
fn place_strips(
    shape: &[i64],
    labels: &[i64],
    label: usize,
    counts: &mut Vec<Vec<i64>>,
    emit: &mut impl FnMut(&[i64]),
) {
    if label == labels.len() {
        emit(shape);
        return;
    }
    let mut next = shape.to_vec();
    strip_rows(shape, labels[label], 0, &mut next, counts, label, &mut |next, counts| {
        if lattice_ok(counts, label) {
            place_strips(next, labels, label + 1, counts, emit);
        }
    });
}

fn strip_rows(
    shape: &[i64],
    remaining: i64,
    row: usize,
    next: &mut Vec<i64>,
    counts: &mut Vec<Vec<i64>>,
    label: usize,
    f: &mut impl FnMut(&[i64], &mut Vec<Vec<i64>>),
) {
    if row == shape.len() {
        if remaining == 0 {
            f(next, counts);
        }
        return;
    }
    // No two boxes of one strip share a column.
    let cap = if row == 0 { remaining } else { (shape[row - 1] - shape[row]).min(remaining) };
    for add in (0..=cap).rev() {
        next[row] = shape[row] + add;
        counts[row][label] = add;
        strip_rows(shape, remaining - add, row + 1, next, counts, label, f);
    }
    next[row] = shape[row];
    counts[row][label] = 0;
}

/// Reading rows top to bottom and each row right to left, label `l` never
/// outnumbers label `l - 1`.
fn lattice_ok(counts: &[Vec<i64>], label: usize) -> bool {
    if label == 0 {
        return true;
    }
    let mut cur = 0;
    let mut prev = 0;
    for row in counts {
        cur += row[label];
        if cur > prev {
            return false;
        }
        prev += row[label - 1];
    }
    true
}

/// Dimension of the `GL_k` representation via the hook-content style product.
pub fn gl_dim(lambda: &GlWeight) -> u128 {
    let k = lambda.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        for j in i + 1..k {
            num *= (lambda.0[i] - lambda.0[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}
