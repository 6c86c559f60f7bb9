//! Arbitrary-precision integer matrices, Smith normal form, exact inverses.

use super::bilaurent::AlgebraError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
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

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.cols != o.rows {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    r.data[i * o.cols + j] += a * &o[(k, j)];
                }
            }
        }
        Ok(r)
    }

    fn zip(&self, o: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self, AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(AlgebraError::Dimension("shape mismatch".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, k: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[j * self.cols + c] * k;
            self.data[i * self.cols + c] += v;
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + j] * k;
            self.data[r * self.cols + i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }

    /// Parses "rows cols" followed by rows of integers.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(AlgebraError::Parse { line: 1, msg: "empty input".into() })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| AlgebraError::Parse { line: ln, msg: format!("bad dimension {x:?}") }))
            .collect::<Result<_, _>>()?;
        if dims.len() != 2 {
            return Err(AlgebraError::Parse { line: ln, msg: "expected \"rows cols\"".into() });
        }
        let (r, c) = (dims[0], dims[1]);
        let mut rows = Vec::with_capacity(r);
        for (ln, l) in lines {
            let row: Vec<BigInt> = l
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| AlgebraError::Parse { line: ln, msg: format!("bad entry {x:?}") }))
                .collect::<Result<_, _>>()?;
            if row.len() != c {
                return Err(AlgebraError::Parse { line: ln, msg: format!("expected {c} entries, got {}", row.len()) });
            }
            rows.push(row);
        }
        if rows.len() != r {
            return Err(AlgebraError::Parse { line: 0, msg: format!("expected {r} rows, got {}", rows.len()) });
        }
        let mut m = Self::zeros(r, c);
        m.data = rows.into_iter().flatten().collect();
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Smith form with the unimodular transforms: `u * m * v == diag`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diag_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Invariant factors only.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    snf_impl(m, false).diagonal
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    snf_impl(m, true)
}

fn snf_impl(m: &IntMatrix, track: bool) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let (mut u, mut v) = if track {
        (IntMatrix::identity(r), IntMatrix::identity(c))
    } else {
        (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
    };
    let n = r.min(c);
    for t in 0..n {
        loop {
            // smallest nonzero magnitude in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if track {
                u.swap_rows(t, pi);
                v.swap_cols(t, pj);
            }
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                if track {
                    u.add_row(i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                if track {
                    v.add_col(j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let p = a[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    if track {
                        u.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if track {
                u.negate_row(t);
            }
        }
    }
    SmithForm { diagonal: (0..n).map(|i| a[(i, i)].clone()).collect(), u, v }
}

/// Rational matrix stored as an integer matrix over one positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub numer: IntMatrix,
    pub denom: BigInt,
}

impl RationalMatrix {
    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn to_integral(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.numer.clone())
    }
}

/// Exact inverse by Gauss-Jordan over Q.
pub fn inverse_exact(m: &IntMatrix) -> Result<RationalMatrix, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::Dimension("inverse of non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(AlgebraError::Singular)?;
        a.swap(k, p);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    let denom = a.iter().flat_map(|row| row[n..].iter()).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut numer = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &a[i][n + j];
            numer[(i, j)] = x.numer() * (&denom / x.denom());
        }
    }
    Ok(RationalMatrix { numer, denom })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn snf_small() {
        let d = smith_normal_form(&mat(&[&[2, 4], &[6, 8]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)), vec![BigInt::one(); 3]);
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 2)), vec![BigInt::zero(); 2]);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = mat(&[&[3, 5, 7], &[2, -4, 6], &[0, 9, 12]]);
        let s = smith_normal_form_with_transforms(&m);
        let d = s.u.mul(&m).unwrap().mul(&s.v).unwrap();
        assert_eq!(d, s.diag_matrix());
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn rotation_inverse() {
        let inv = inverse_exact(&mat(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(inv.to_integral().unwrap(), mat(&[&[0, -1], &[1, 0]]));
        assert_eq!(inverse_exact(&mat(&[&[1, 2], &[2, 4]])), Err(AlgebraError::Singular));
        let half = inverse_exact(&mat(&[&[2, 0], &[0, 1]])).unwrap();
        assert_eq!(half.denom, BigInt::from(2));
    }

    #[test]
    fn text_round_trip() {
        let m = mat(&[&[1, -2, 3], &[0, 5, -6]]);
        assert_eq!(IntMatrix::parse(&m.to_text()).unwrap(), m);
        assert!(IntMatrix::parse("2 2\n1 2\n3\n").is_err());
    }
}
