//! Exact integer matrices, fraction-free determinants, and the Smith normal
//! form used to solve binomial systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// Dense exact integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += prod;
                }
            }
        }
        m
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let swap = ((k + 1)..n).find(|&i| !a[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form X·A·Y = D of a nonsingular square integer matrix.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub x: IntegerMatrix,
    pub d: IntegerMatrix,
    pub y: IntegerMatrix,
}

impl SmithNormalForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct SnfState {
    a: IntegerMatrix,
    x: IntegerMatrix,
    y: IntegerMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.a.cols() {
            let tmp = self.a[(r1, j)].clone();
            self.a[(r1, j)] = self.a[(r2, j)].clone();
            self.a[(r2, j)] = tmp;
        }
        for j in 0..self.x.cols() {
            let tmp = self.x[(r1, j)].clone();
            self.x[(r1, j)] = self.x[(r2, j)].clone();
            self.x[(r2, j)] = tmp;
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for i in 0..self.a.rows() {
            let tmp = self.a[(i, c1)].clone();
            self.a[(i, c1)] = self.a[(i, c2)].clone();
            self.a[(i, c2)] = tmp;
        }
        for i in 0..self.y.rows() {
            let tmp = self.y[(i, c1)].clone();
            self.y[(i, c1)] = self.y[(i, c2)].clone();
            self.y[(i, c2)] = tmp;
        }
    }

    /// row r1 -= q * row r2
    fn row_op(&mut self, r1: usize, r2: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.a.cols() {
            let delta = q * &self.a[(r2, j)];
            self.a[(r1, j)] -= delta;
        }
        for j in 0..self.x.cols() {
            let delta = q * &self.x[(r2, j)];
            self.x[(r1, j)] -= delta;
        }
    }

    /// col c1 -= q * col c2
    fn col_op(&mut self, c1: usize, c2: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.a.rows() {
            let delta = q * &self.a[(i, c2)];
            self.a[(i, c1)] -= delta;
        }
        for i in 0..self.y.rows() {
            let delta = q * &self.y[(i, c2)];
            self.y[(i, c1)] -= delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.a.cols() {
            let v = -self.a[(r, j)].clone();
            self.a[(r, j)] = v;
        }
        for j in 0..self.x.cols() {
            let v = -self.x[(r, j)].clone();
            self.x[(r, j)] = v;
        }
    }
}

/// Computes unimodular X, Y and diagonal D with X·A·Y = D, d_i | d_{i+1},
/// d_i > 0, and Πd_i = |det A|. Pivots are chosen smallest-nonzero-magnitude
/// to limit entry growth.
pub fn smith_normal_form(a: &IntegerMatrix) -> Result<SmithNormalForm, AlgebraError> {
    assert_eq!(a.rows(), a.cols(), "SNF defined here for square matrices");
    let n = a.rows();
    if a.determinant().is_zero() {
        return Err(AlgebraError::SingularLattice);
    }
    let mut st = SnfState {
        a: a.clone(),
        x: IntegerMatrix::identity(n),
        y: IntegerMatrix::identity(n),
    };
    for k in 0..n {
        loop {
            // Smallest nonzero magnitude in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            let mut best: Option<BigInt> = None;
            for i in k..n {
                for j in k..n {
                    let v = st.a[(i, j)].abs();
                    if v.is_zero() {
                        continue;
                    }
                    if best.as_ref().map_or(true, |b| v < *b) {
                        best = Some(v);
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = pivot.expect("nonsingular matrix has a pivot");
            st.swap_rows(k, pi);
            st.swap_cols(k, pj);

            let mut clean = true;
            for i in (k + 1)..n {
                if !st.a[(i, k)].is_zero() {
                    let q = st.a[(i, k)].div_euclid(&st.a[(k, k)]);
                    st.row_op(i, k, &q);
                    if !st.a[(i, k)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in (k + 1)..n {
                if !st.a[(k, j)].is_zero() {
                    let q = st.a[(k, j)].div_euclid(&st.a[(k, k)]);
                    st.col_op(j, k, &q);
                    if !st.a[(k, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide every remaining entry for the chain to hold.
            let piv = st.a[(k, k)].clone();
            let offender = ((k + 1)..n)
                .flat_map(|i| ((k + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&st.a[(i, j)] % &piv).is_zero());
            match offender {
                Some((i, _)) => {
                    // Fold the offending row into the pivot row and repeat.
                    let minus_one = BigInt::from(-1);
                    st.row_op(k, i, &minus_one);
                }
                None => break,
            }
        }
        if st.a[(k, k)].is_negative() {
            st.negate_row(k);
        }
    }
    debug_assert!(st.a.is_diagonal());
    Ok(SmithNormalForm {
        x: st.x,
        d: st.a,
        y: st.y,
    })
}

trait DivEuclidExt {
    fn div_euclid(&self, other: &Self) -> Self;
}

impl DivEuclidExt for BigInt {
    fn div_euclid(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        if r.is_negative() {
            if other.is_negative() {
                q + BigInt::one()
            } else {
                q - BigInt::one()
            }
        } else {
            q
        }
    }
}
