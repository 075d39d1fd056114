use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Exponent vector over a fixed list of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// How variables are printed: `x0..xn, y0..yn` for the doubled projective
/// coordinates, otherwise `v0, v1, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarNames {
    Generic,
    Doubled { n: usize },
}

impl VarNames {
    pub fn name(&self, i: usize) -> String {
        match *self {
            VarNames::Generic => format!("v{i}"),
            VarNames::Doubled { n } if i <= n => format!("x{i}"),
            VarNames::Doubled { n } => format!("y{}", i - n - 1),
        }
    }

    pub fn monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.name(i) } else { format!("{}^{e}", self.name(i)) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn index(&self, name: &str) -> Option<usize> {
        let (head, num) = name.split_at(1);
        let i: usize = num.parse().ok()?;
        match (*self, head) {
            (VarNames::Generic, "v") => Some(i),
            (VarNames::Doubled { n }, "x") if i <= n => Some(i),
            (VarNames::Doubled { n }, "y") if i <= n => Some(n + 1 + i),
            _ => None,
        }
    }

    pub fn nvars(&self) -> Option<usize> {
        match *self {
            VarNames::Generic => None,
            VarNames::Doubled { n } => Some(2 * n + 2),
        }
    }

    /// Parses sums of terms like `-2*x0^2*y1`, the inverse of [`Self::poly`].
    pub fn parse_poly(&self, nvars: usize, s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return invalid("empty polynomial");
        }
        let mut p = Poly::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            if term.is_empty() {
                return invalid(format!("dangling sign in {s:?}"));
            }
            let mut coeff = sign;
            let mut mono = Monomial::one(nvars);
            for factor in term.split('*') {
                if let Ok(c) = factor.parse::<i64>() {
                    coeff *= c;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((a, b)) => (a, b.parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad exponent in {factor:?}")))?),
                    None => (factor, 1),
                };
                let i = self
                    .index(name)
                    .filter(|&i| i < nvars)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?}")))?;
                mono.0[i] += exp;
            }
            p.add_term(coeff, mono);
        }
        Ok(p)
    }

    pub fn poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest monomial first for a stable, readable order.
        for (i, (m, &c)) in p.terms.iter().rev().enumerate() {
            let body = self.monomial(m);
            let mag = c.unsigned_abs();
            let term = match (mag, body.as_str()) {
                (1, "1") => "1".to_string(),
                (1, _) => body,
                (_, "1") => mag.to_string(),
                _ => format!("{mag}*{body}"),
            };
            if c < 0 {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

/// Polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn term(c: i64, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(c, m);
        p
    }

    pub fn add_term(&mut self, c: i64, m: Monomial) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&mut self, other: &Poly) {
        for (m, &c) in &other.terms {
            self.add_term(c, m.clone());
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, &c) in &self.terms {
            for (b, &d) in &other.terms {
                out.add_term(c * d, a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Poly {
        let mut out = Poly::zero();
        for (m, &d) in &self.terms {
            out.add_term(c * d, m.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `m`.
    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }
}

/// Sparse matrix over the polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, p: &Poly) {
        let e = self.entries.entry((r, c)).or_default();
        e.add(p);
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Poly {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.entries.iter()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return invalid("matrix shapes do not compose");
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Poly)>> = BTreeMap::new();
        for (&(r, c), p) in &other.entries {
            by_row.entry(r).or_default().push((c, p));
        }
        let mut out = PolyMatrix::new(self.rows, other.cols);
        for (&(r, k), p) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, q) in row {
                    out.add_to(r, c, &p.mul(q));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Plain-text sparse triples `row<TAB>col<TAB>entry`, 0-based.
    pub fn export(&self, names: VarNames) -> String {
        let mut out = String::new();
        for (&(r, c), p) in &self.entries {
            out.push_str(&format!("{r}\t{c}\t{}\n", names.poly(p)));
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&VarNames::Generic.monomial(self))
    }
}

/// All exponent vectors of total degree `d` in `k` variables.
pub fn exponent_vectors(k: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}
