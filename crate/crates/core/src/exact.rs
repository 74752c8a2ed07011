//! Exact rational scalars, dense matrices over them, and sign utilities.
//!
//! Column and row indices of [`ExactMatrix`] are 0-based. Everything that
//! names an element of `[n]` (Plücker index sets, twistor labels, polygon
//! vertices) is 1-based, matching the combinatorial conventions used in the
//! rest of the crate.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// The rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `"n"` when the denominator is 1, `"n/d"` otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Argument(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Sign of a real number. The derived order `Neg < Zero < Pos` is the
/// canonical serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    /// `(-1)^e` as a sign.
    pub fn parity(e: usize) -> Sign {
        if e % 2 == 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// Number of sign changes of `v`, ignoring zeros.
pub fn sign_var(v: &[Rational]) -> usize {
    sign_var_of_signs(&v.iter().map(Sign::of).collect::<Vec<_>>())
}

pub fn sign_var_of_signs(v: &[Sign]) -> usize {
    let mut last = Sign::Zero;
    let mut count = 0;
    for &s in v {
        if s.is_zero() {
            continue;
        }
        if !last.is_zero() && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Maximum number of sign changes over all ways of replacing zeros by signs.
pub fn sign_var_bar(v: &[Rational]) -> usize {
    // best[s] = most changes so far for a completion ending in sign s (0 = -, 1 = +)
    let mut best: [Option<usize>; 2] = [Some(0), Some(0)];
    for (idx, x) in v.iter().enumerate() {
        let allowed = match Sign::of(x) {
            Sign::Neg => [true, false],
            Sign::Pos => [false, true],
            Sign::Zero => [true, true],
        };
        let mut next = [None, None];
        for s in 0..2 {
            if !allowed[s] {
                continue;
            }
            let stay = best[s];
            let change = if idx == 0 { None } else { best[1 - s].map(|c| c + 1) };
            next[s] = stay.max(change);
        }
        best = next;
    }
    best.iter().flatten().copied().max().unwrap_or(0)
}

/// Cyclic sign-flip positions (1-based): `i` such that `v_i` and `v_{i+1}`
/// (indices mod `n`) are nonzero with opposite signs.
pub fn flip_set(v: &[Sign]) -> Vec<usize> {
    let n = v.len();
    (0..n)
        .filter(|&i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            !a.is_zero() && !b.is_zero() && a != b
        })
        .map(|i| i + 1)
        .collect()
}

/// The cyclic interval `[a, b]` inside `[n]`; wraps past `n` when `a > b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicInterval {
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl CyclicInterval {
    /// Endpoints are reduced into `1..=n`, so `b = 0` means `n`.
    pub fn new(a: usize, b: usize, n: usize) -> Self {
        Self { a: cyc(a, n), b: cyc(b, n), n }
    }

    pub fn contains(&self, i: usize) -> bool {
        let i = cyc(i, self.n);
        if self.a <= self.b {
            self.a <= i && i <= self.b
        } else {
            i >= self.a || i <= self.b
        }
    }

    pub fn members(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn mask(&self) -> crate::subset::Subset {
        crate::subset::from_labels(self.members())
    }
}

/// Reduce an integer label into `1..=n`.
pub fn cyc(i: usize, n: usize) -> usize {
    (i + n - 1) % n + 1
}

/// Signed cyclic reduction into `1..=n`.
pub fn cyc_i(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize + 1
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Argument("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Empty matrix with a given column count (useful for `k = 0`).
    pub fn empty(cols: usize) -> Self {
        Self { rows: 0, cols, data: Vec::new() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Argument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale_row(&mut self, r: usize, s: &Rational) {
        for c in 0..self.cols {
            let v = self.get(r, c) * s;
            self.set(r, c, v);
        }
    }

    /// Columns at 0-based indices, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&r| self.row(r).iter().cloned()).collect();
        Self { rows: idx.len(), cols: self.cols, data }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Argument("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn push_row(&mut self, row: &[Rational]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().cloned());
        self.rows += 1;
    }

    /// Determinant by fraction-free Bareiss elimination after clearing row
    /// denominators.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let row = self.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = Rational::new(a[n - 1][n - 1].clone(), scale);
        if negate {
            -d
        } else {
            d
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of the right kernel `{v : self · v = 0}`.
    pub fn kernel(&self) -> Self {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            out.set(row, f, Rational::one());
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, -m.get(pr, f).clone());
            }
        }
        out
    }

    /// Solve `x · self = target` for a row vector `x`; `None` if `target` is
    /// not in the row space.
    pub fn solve_left(&self, target: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(target.len(), self.cols);
        // x · A = t  <=>  Aᵀ xᵀ = tᵀ; augment and eliminate.
        let at = self.transpose();
        let mut aug = Self::zeros(at.rows, at.cols + 1);
        for r in 0..at.rows {
            for c in 0..at.cols {
                aug.set(r, c, at.get(r, c).clone());
            }
            aug.set(r, at.cols, target[r].clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.contains(&at.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); at.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(pr, at.cols).clone();
        }
        Some(x)
    }

    /// Maximal minor on the 1-based column set `labels` (sorted by the caller).
    pub fn plucker(&self, labels: &[usize]) -> Result<Rational> {
        if labels.len() != self.rows {
            return Err(Error::Argument(format!(
                "plucker index of size {} for a matrix with {} rows",
                labels.len(),
                self.rows
            )));
        }
        if labels.iter().any(|&i| i == 0 || i > self.cols) {
            return Err(Error::Argument(format!("plucker index {labels:?} out of range")));
        }
        let idx: Vec<usize> = labels.iter().map(|&i| i - 1).collect();
        Ok(self.select_columns(&idx).det())
    }

    /// All maximal minors, keyed by sorted 1-based column sets in lex order.
    pub fn plucker_vector(&self) -> Vec<(Vec<usize>, Rational)> {
        (1..=self.cols)
            .combinations(self.rows)
            .map(|set| {
                let v = self.plucker(&set).expect("valid index set");
                (set, v)
            })
            .collect()
    }

    pub fn all_maximal_minors_positive(&self) -> bool {
        (1..=self.cols)
            .combinations(self.rows)
            .all(|set| self.plucker(&set).expect("valid").is_positive())
    }

    pub fn all_maximal_minors_nonnegative(&self) -> bool {
        (1..=self.cols)
            .combinations(self.rows)
            .all(|set| !self.plucker(&set).expect("valid").is_negative())
    }

    /// Every square minor of every size is strictly positive.
    pub fn is_totally_positive(&self) -> bool {
        let m = self.rows.min(self.cols);
        (1..=m).all(|s| {
            (0..self.rows).combinations(s).all(|rs| {
                let sub = self.select_rows(&rs);
                (0..self.cols).combinations(s).all(|cs| sub.select_columns(&cs).det().is_positive())
            })
        })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(rational_to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(rational_to_string).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ExactMatrix::from_rows(parsed).map_err(D::Error::custom)
    }
}

/// Serde helpers storing a [`Rational`] as `"p/q"`.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).map_err(D::Error::custom)
    }
}

/// Maximal minor of `m` on the 1-based column set `labels`.
pub fn plucker(m: &ExactMatrix, labels: &[usize]) -> Result<Rational> {
    m.plucker(labels)
}

/// `n × p` matrix with row `i` equal to `(1, i, i², …, i^{p-1})`.
pub fn vandermonde_positive(n: usize, p: usize) -> Result<ExactMatrix> {
    if p > n {
        return Err(Error::Argument(format!("vandermonde needs p <= n, got p={p}, n={n}")));
    }
    let rows = (1..=n as i64).map(|i| (0..p as u32).map(|e| rat(i.pow(e))).collect()).collect();
    ExactMatrix::from_rows(rows)
}

/// Twisted cyclic shift: row `i` becomes row `i + steps`, and every row that
/// wraps past `n` picks up a factor `(-1)^{p-1}`.
pub fn twisted_shift(z: &ExactMatrix, steps: usize) -> ExactMatrix {
    let (n, p) = (z.rows(), z.cols());
    let mut out = ExactMatrix::zeros(n, p);
    for i in 0..n {
        let src = i + steps;
        let wraps = src / n;
        let neg = (p - 1) * wraps % 2 == 1;
        for c in 0..p {
            let v = z.get(src % n, c).clone();
            out.set(i, c, if neg { -v } else { v });
        }
    }
    out
}

/// `R_{ij} = q^{(i-j)^2}`, strictly totally positive for `0 < q < 1`.
pub fn gaussian_tp_kernel(n: usize, q: &Rational) -> Result<ExactMatrix> {
    if !q.is_positive() || *q >= Rational::one() {
        return Err(Error::Argument(format!("kernel parameter must lie in (0,1), got {q}")));
    }
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = i.abs_diff(j);
            m.set(i, j, num_traits::pow(q.clone(), d * d));
        }
    }
    Ok(m)
}
