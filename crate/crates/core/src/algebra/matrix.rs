use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense integer matrix, row-major, arbitrary precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        }
    }

    /// An empty matrix with a fixed number of columns.
    pub fn empty(cols: usize) -> IntMatrix {
        IntMatrix { rows: 0, cols, data: Vec::new() }
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(d: &[T]) -> IntMatrix {
        let mut m = IntMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Rational::from).collect(),
        }
    }

    pub fn stack(&self, below: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != below.cols {
            return Err(Error::Dimension("stacking matrices with different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(IntMatrix { rows: self.rows + below.rows, cols: self.cols, data })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
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

    pub fn rank(&self) -> usize {
        rref_rational(&self.to_rational()).1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * f;
            self.data[dst * self.cols + j] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * f;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    /// Replace rows (a, b) by (s*a + t*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = s * &x + t * &y;
            self.data[b * self.cols + j] = u * &x + v * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> RatMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn empty(cols: usize) -> RatMatrix {
        RatMatrix { rows: 0, cols, data: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j].add_mul(a, &other[(k, j)]);
                }
            }
        }
        Ok(out)
    }

    pub fn stack(&self, below: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != below.cols {
            return Err(Error::Dimension("stacking matrices with different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(RatMatrix { rows: self.rows + below.rows, cols: self.cols, data })
    }

    pub fn rank(&self) -> usize {
        rref_rational(self).1.len()
    }

    /// Entries as integers if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let data: Option<Vec<BigInt>> = self.data.iter().map(|x| x.to_integer()).collect();
        data.map(|data| IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()))
    }

    pub fn scale(&self, f: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * f).collect(),
        }
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            let inv = piv.recip();
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] * &inv;
                for j in c..n {
                    let v = &f * &a[(c, j)];
                    a.data[r * n + j] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Solve x·self = b for a row vector x, if solvable; returns one solution.
    pub fn solve_left(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        // x·A = b  <=>  Aᵀ xᵀ = bᵀ
        let at = self.transpose();
        solve_right(&at, b)
    }
}

/// Solve A x = b (column vector) over the rationals.
pub fn solve_right(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows, b.len());
    let mut aug = RatMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let (r, piv) = rref_rational(&aug);
    if piv.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = r[(i, a.cols)].clone();
    }
    Some(x)
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form and pivot columns.
pub fn rref_rational(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = &f * &a[(r, j)];
                a.data[i * cols + j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Smith normal form `U·m·V = diag(d)` with unimodular `U`, `V`.
///
/// `d` has length `min(rows, cols)`, entries nonnegative, each dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (Vec<BigInt>, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let qt = a[(i, t)].div_floor(&a[(t, t)]);
                let f = -qt;
                a.add_row(i, t, &f);
                u.add_row(i, t, &f);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let qt = a[(t, j)].div_floor(&a[(t, t)]);
                let f = -qt;
                a.add_col(j, t, &f);
                v.add_col(j, t, &f);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let piv = a[(t, t)].clone();
            let mut bad = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[(i, j)] % &piv).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.neg_row(t);
            u.neg_row(t);
        }
    }
    let d = (0..n).map(|i| a[(i, i)].clone()).collect();
    (d, u, v)
}

/// Row-style Hermite normal form `H = U·m` with `U` unimodular.
///
/// Nonzero rows come first, pivots are positive and strictly move right, and
/// entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !h[(i, c)].is_zero()) else {
            continue;
        };
        h.swap_rows(r, p);
        u.swap_rows(r, p);
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let uu = -(&b / &g);
            let vv = &a / &g;
            h.combine_rows(r, i, &s, &t, &uu, &vv);
            u.combine_rows(r, i, &s, &t, &uu, &vv);
        }
        if h[(r, c)].is_negative() {
            h.neg_row(r);
            u.neg_row(r);
        }
        let piv = h[(r, c)].clone();
        for i in 0..r {
            let qt = h[(i, c)].div_floor(&piv);
            if !qt.is_zero() {
                let f = -qt;
                h.add_row(i, r, &f);
                u.add_row(i, r, &f);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Saturated basis of the integer left kernel `{x : x·m = 0}`, in Hermite normal form.
pub fn hermite_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let zero_rows: Vec<usize> =
        (0..h.rows).filter(|&i| h.row(i).iter().all(|x| x.is_zero())).collect();
    if zero_rows.is_empty() {
        return IntMatrix::empty(m.rows);
    }
    let k = IntMatrix::from_rows(
        &zero_rows.iter().map(|&i| u.row(i).to_vec()).collect::<Vec<_>>(),
    );
    hermite_normal_form(&k).0
}

/// Integer rows as `i64`, panicking on overflow (test and fixture convenience).
pub fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows)
        .map(|i| m.row(i).iter().map(|x| x.to_i64().expect("entry fits i64")).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_small() {
        let m = IntMatrix::from_rows(&[vec![4, -4], vec![-4, -10]]);
        assert_eq!(det_exact(&m).unwrap(), BigInt::from(-56));
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det_exact(&m).unwrap(), BigInt::from(-1));
        assert!(det_exact(&IntMatrix::zeros(2, 3)).is_err());
        assert_eq!(det_exact(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn snf_transforms() {
        let m = IntMatrix::from_rows(&[vec![15, 7, 6], vec![7, 4, 3], vec![6, 3, 5]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(1), BigInt::from(28)]);
        let prod = u.mul(&m).unwrap().mul(&v).unwrap();
        assert_eq!(prod, IntMatrix::diagonal(&d));
    }

    #[test]
    fn kernel_of_column() {
        let m = IntMatrix::from_rows(&[vec![2], vec![1]]);
        assert_eq!(to_i64_rows(&hermite_kernel(&m)), vec![vec![1, -2]]);
    }
}
