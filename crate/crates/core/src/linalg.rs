//! Dense matrices over the rationals.
//!
//! Elimination always pivots on the first column holding a nonzero entry and,
//! inside that column, on the smallest row index, so echelon forms and kernel
//! bases come out identical on every run.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{rat, Rational, Q};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// The matrix unit E_ij (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(RationalMatrix { rows: r, cols: c, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged integer matrix");
                row.iter().map(|&v| rat(v))
            })
            .collect();
        RationalMatrix { rows: r, cols: c, data }
    }

    pub fn column(entries: Vec<Rational>) -> Self {
        let n = entries.len();
        RationalMatrix { rows: n, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Reorders rows and columns: entry (i, j) of the result is entry
    /// (perm[i], perm[j]) of `self`. Equals P·self·Pᵀ for the permutation P.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(perm[i], perm[j])].clone();
            }
        }
        out
    }

    /// Entries as machine integers when every entry is an integer that fits.
    fn integer_entries(&self) -> Option<Vec<i128>> {
        self.data
            .iter()
            .map(|v| if v.is_integer() { crate::rational::as_integer(v).map(i128::from) } else { None })
            .collect()
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
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Q>> =
            (0..self.rows).map(|i| self.row(i).iter().cloned().map(Q).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Q>> = Vec::deserialize(d)?;
        let rows = rows.into_iter().map(|r| r.into_iter().map(|q| q.0).collect()).collect();
        RationalMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Rank over Q.
pub fn rank(m: &RationalMatrix) -> usize {
    if let Some(ints) = m.integer_entries() {
        if let Some(r) = bareiss_rank(m.rows, m.cols, ints) {
            return r;
        }
    }
    m.rref().1.len()
}

/// Fraction-free elimination on machine integers. `None` on overflow; every
/// intermediate value is a minor of the input, so the result is exact when it
/// returns.
fn bareiss_rank(rows: usize, cols: usize, mut a: Vec<i128>) -> Option<usize> {
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c];
        for i in r + 1..rows {
            let f = a[i * cols + c];
            for j in c..cols {
                let v = piv.checked_mul(a[i * cols + j])?.checked_sub(f.checked_mul(a[r * cols + j])?)?;
                a[i * cols + j] = v / prev;
            }
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

/// Basis of the right kernel, one free column per vector, in pivot order.
pub fn nullspace(m: &RationalMatrix) -> Vec<RationalMatrix> {
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[(r, f)].clone();
            }
            RationalMatrix::column(v)
        })
        .collect()
}

/// Solves a·c = b. Free variables are set to zero; `None` when b is outside
/// the column span.
pub fn solve_linear(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    if b.len() != a.rows {
        return None;
    }
    let mut aug = RationalMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[(r, a.cols)].clone();
    }
    Some(x)
}

/// Jordan type of a nilpotent matrix, read off from the ranks of its powers.
pub fn jordan_partition(x: &RationalMatrix) -> Result<Partition> {
    if !x.is_square() {
        return Err(Error::NotSquare { rows: x.rows, cols: x.cols });
    }
    let n = x.rows;
    let ranks = match x.integer_entries().and_then(|e| integer_rank_sequence(n, &e)) {
        Some(r) => r,
        None => rational_rank_sequence(x)?,
    };
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent);
    }
    let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 0).collect();
    Ok(Partition::from_conjugate(&conj))
}

/// [`jordan_partition`] for an n×n integer matrix given row-major.
pub fn jordan_partition_int(n: usize, x: &[i128]) -> Result<Partition> {
    match integer_rank_sequence(n, x) {
        Some(ranks) => {
            if *ranks.last().unwrap() != 0 {
                return Err(Error::NotNilpotent);
            }
            let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 0).collect();
            Ok(Partition::from_conjugate(&conj))
        }
        None => {
            let data = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
            jordan_partition(&RationalMatrix::from_vec(n, n, data)?)
        }
    }
}

/// rank(X^0), rank(X^1), ... stopping at 0 or when the rank stalls.
fn integer_rank_sequence(n: usize, x: &[i128]) -> Option<Vec<usize>> {
    let mut ranks = vec![n];
    let mut power = x.to_vec();
    loop {
        let r = bareiss_rank(n, n, power.clone())?;
        let stalled = r == *ranks.last().unwrap();
        ranks.push(r);
        if r == 0 || stalled {
            return Some(ranks);
        }
        power = int_mul(n, &power, x)?;
    }
}

fn int_mul(n: usize, a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; n * n];
    for i in 0..n {
        for k in 0..n {
            let v = a[i * n + k];
            if v == 0 {
                continue;
            }
            for j in 0..n {
                let w = b[k * n + j];
                if w != 0 {
                    out[i * n + j] = out[i * n + j].checked_add(v.checked_mul(w)?)?;
                }
            }
        }
    }
    Some(out)
}

fn rational_rank_sequence(x: &RationalMatrix) -> Result<Vec<usize>> {
    let n = x.rows;
    let mut ranks = vec![n];
    let mut power = x.clone();
    loop {
        let r = power.rref().1.len();
        let stalled = r == *ranks.last().unwrap();
        ranks.push(r);
        if r == 0 || stalled {
            return Ok(ranks);
        }
        power = power.checked_mul(x)?;
    }
}

/// Elementary nilpotent Jordan block of size k (ones on the superdiagonal).
pub fn jordan_block(k: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(k, k);
    for i in 0..k.saturating_sub(1) {
        m[(i, i + 1)] = Rational::one();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&RationalMatrix::identity(4)), 4);
        assert_eq!(rank(&jordan_block(3)), 2);
        let half = RationalMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(3, 2), rat(1)],
        ])
        .unwrap();
        assert_eq!(rank(&half), 1);
    }

    #[test]
    fn bareiss_agrees_with_rref() {
        let m = RationalMatrix::from_i64(&[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(m.rref().1.len(), 2);
    }

    #[test]
    fn jordan_examples() {
        let x = jordan_block(3).direct_sum(&RationalMatrix::zeros(1, 1));
        assert_eq!(jordan_partition(&x).unwrap().parts(), &[3, 1]);
        let x = jordan_block(2).direct_sum(&jordan_block(2));
        assert_eq!(jordan_partition(&x).unwrap().parts(), &[2, 2]);
        let x21 = jordan_block(2).direct_sum(&jordan_block(1));
        assert_eq!(jordan_partition(&x21).unwrap().parts(), &[2, 1]);
        assert_eq!(jordan_partition(&RationalMatrix::identity(2)), Err(Error::NotNilpotent));
        assert!(matches!(
            jordan_partition(&RationalMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn jordan_of_fractional_matrix() {
        let mut x = jordan_block(3);
        x[(0, 1)] = frac(1, 7);
        x[(0, 2)] = frac(-5, 3);
        assert_eq!(jordan_partition(&x).unwrap().parts(), &[3]);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&RationalMatrix::identity(2)).is_empty());
        let k = nullspace(&RationalMatrix::zeros(2, 2));
        assert_eq!(k, vec![RationalMatrix::column(vec![rat(1), rat(0)]), RationalMatrix::column(vec![rat(0), rat(1)])]);
        assert_eq!(nullspace(&jordan_block(2)), vec![RationalMatrix::column(vec![rat(1), rat(0)])]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![frac(1, 2), rat(-3)];
        assert_eq!(solve_linear(&RationalMatrix::identity(2), &b), Some(b.clone()));
        let a = RationalMatrix::from_i64(&[&[1], &[2]]);
        assert_eq!(solve_linear(&a, &[rat(2), rat(4)]), Some(vec![rat(2)]));
        let a = RationalMatrix::from_i64(&[&[1], &[0]]);
        assert_eq!(solve_linear(&a, &[rat(0), rat(1)]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RationalMatrix::identity(2));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn json_roundtrip() {
        let m = RationalMatrix::from_rows(vec![vec![frac(1, 2), rat(0)], vec![rat(-3), frac(2, 3)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","0"],["-3","2/3"]]"#);
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
