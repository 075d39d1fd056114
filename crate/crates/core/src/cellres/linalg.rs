use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse matrix with integer entries, stored by column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: Vec<BTreeMap<usize, i64>>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols: vec![BTreeMap::new(); cols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        let e = self.cols[c].entry(r).or_insert(0);
        *e += v;
        if *e == 0 {
            self.cols[c].remove(&r);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c].get(&r).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        rank(self.rows, self.cols.iter().map(|c| c.iter().map(|(&r, &v)| (r, v))))
    }
}

/// Rank over the rationals of a sparse matrix given column by column.
pub fn rank<C, I>(_rows: usize, columns: C) -> usize
where
    C: IntoIterator<Item = I>,
    I: IntoIterator<Item = (usize, i64)>,
{
    // Pivot row -> reduced column with that leading row.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    let mut r = 0;
    for col in columns {
        let mut v: BTreeMap<usize, BigRational> = col
            .into_iter()
            .filter(|&(_, x)| x != 0)
            .map(|(i, x)| (i, BigRational::from_integer(BigInt::from(x))))
            .collect();
        while let Some((&lead, lead_val)) = v.iter().next() {
            match pivots.get(&lead) {
                None => {
                    let inv = BigRational::one() / lead_val;
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    pivots.insert(lead, v);
                    r += 1;
                    break;
                }
                Some(p) => {
                    let f = lead_val.clone();
                    for (&i, pv) in p {
                        let e = v.entry(i).or_insert_with(BigRational::zero);
                        *e -= &f * pv;
                        if e.is_zero() {
                            v.remove(&i);
                        }
                    }
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let mut m = IntMatrix::new(3, 3);
        for (r, c, v) in [(0, 0, 1), (1, 0, 2), (0, 1, 2), (1, 1, 4), (2, 2, 5)] {
            m.add(r, c, v);
        }
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::new(4, 0).rank(), 0);
        let mut id = IntMatrix::new(3, 3);
        for i in 0..3 {
            id.add(i, i, -1);
        }
        assert_eq!(id.rank(), 3);
    }
}
