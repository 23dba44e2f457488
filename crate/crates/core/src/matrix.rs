//! Dense arbitrary-precision integer matrices and the shared text format.
//!
//! The text format is: a header line `m n`, then `m` lines of `n` signed
//! decimal integers. Blank lines and lines starting with `#` are skipped.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn column_vector(entries: &[BigInt]) -> Self {
        IntMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, c).clone());
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(a, b, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
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
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = self.get_mut(r, j);
            *v = -std::mem::take(v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = self.get_mut(i, c);
            *v = -std::mem::take(v);
        }
    }

    /// row[dst] += factor * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j) * factor;
            *self.get_mut(dst, j) += s;
        }
    }

    /// col[dst] += factor * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src) * factor;
            *self.get_mut(i, dst) += s;
        }
    }

    /// Replaces columns (i, j) by (x*ci + y*cj, z*ci + w*cj).
    pub fn combine_cols(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for r in 0..self.rows {
            let ci = self.get(r, i).clone();
            let cj = self.get(r, j).clone();
            self.set(r, i, x * &ci + y * &cj);
            self.set(r, j, z * &ci + w * &cj);
        }
    }

    /// Replaces rows (i, j) by (x*ri + y*rj, z*ri + w*rj).
    pub fn combine_rows(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for c in 0..self.cols {
            let ri = self.get(i, c).clone();
            let rj = self.get(j, c).clone();
            self.set(i, c, x * &ri + y * &rj);
            self.set(j, c, z * &ri + w * &rj);
        }
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(Zero::is_zero)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    /// Parses the shared matrix text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let m = parse_matrix_lines(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: "unexpected trailing content".into(),
            });
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", line.join(" "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_ints(line_no: usize, s: &str) -> Result<Vec<BigInt>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<BigInt>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid integer `{tok}`"),
            })
        })
        .collect()
}

pub(crate) fn parse_matrix_lines<'a, I>(lines: &mut I) -> Result<IntMatrix>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing `m n` header".into(),
    })?;
    let dims = parse_ints(hline, header)?;
    use num_traits::ToPrimitive;
    let (m, n) = match dims.as_slice() {
        [m, n] => match (m.to_usize(), n.to_usize()) {
            (Some(m), Some(n)) if m > 0 && n > 0 => (m, n),
            _ => {
                return Err(Error::Parse {
                    line: hline,
                    message: "dimensions must be positive".into(),
                })
            }
        },
        _ => {
            return Err(Error::Parse {
                line: hline,
                message: "header must be `m n`".into(),
            })
        }
    };
    let mut data = Vec::with_capacity(m * n);
    for r in 0..m {
        let (ln, text) = lines.next().ok_or(Error::Parse {
            line: hline,
            message: format!("expected {m} rows, found {r}"),
        })?;
        let row = parse_ints(ln, text)?;
        if row.len() != n {
            return Err(Error::Parse {
                line: ln,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        data.extend(row);
    }
    IntMatrix::from_vec(m, n, data)
}

/// Exact rational vector; entries are always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn from_ints(v: &[BigInt]) -> Self {
        RationalVector(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RationalVector(
            v.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

impl std::ops::Index<usize> for RationalVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

pub(crate) fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub(crate) fn rat_dot(a: &[BigInt], b: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += y * rat(x);
        }
    }
    s
}
