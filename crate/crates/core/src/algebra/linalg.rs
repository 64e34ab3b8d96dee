//! Dense complex linear algebra: LU with partial pivoting, inversion, and
//! least-squares steps via the normal equations.

use num_complex::Complex64;

use crate::error::AlgebraError;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
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

    /// y = A·x.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul_mat(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting of a square matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: CMatrix,
    perm: Vec<usize>,
    /// Count of pivots above the singularity threshold.
    rank_estimate: usize,
    threshold: f64,
}

/// Relative pivot threshold below which a matrix is declared singular.
pub const DEFAULT_PIVOT_THRESHOLD: f64 = 1e-14;

impl LuFactors {
    /// Factors A = P·L·U, flagging singularity when a pivot falls below
    /// `threshold × max row norm`.
    pub fn new(a: &CMatrix, threshold: f64) -> Result<Self, AlgebraError> {
        let n = a.rows();
        assert_eq!(n, a.cols(), "LU requires a square matrix");
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = (0..n)
            .map(|i| (0..n).map(|j| lu[(i, j)].norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        let cutoff = threshold * scale.max(f64::MIN_POSITIVE);
        let mut rank = 0usize;
        let mut first_bad: Option<usize> = None;
        for k in 0..n {
            let mut best = k;
            let mut best_norm = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let v = lu[(i, k)].norm();
                if v > best_norm {
                    best_norm = v;
                    best = i;
                }
            }
            if best != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(best, j)];
                    lu[(best, j)] = tmp;
                }
                perm.swap(k, best);
            }
            if best_norm <= cutoff {
                if first_bad.is_none() {
                    first_bad = Some(k);
                }
                continue;
            }
            rank += 1;
            let piv = lu[(k, k)];
            for i in (k + 1)..n {
                let m = lu[(i, k)] / piv;
                lu[(i, k)] = m;
                if m.re == 0.0 && m.im == 0.0 {
                    continue;
                }
                for j in (k + 1)..n {
                    let v = lu[(k, j)];
                    lu[(i, j)] -= m * v;
                }
            }
        }
        if let Some(col) = first_bad {
            return Err(AlgebraError::SingularMatrix { column: col });
        }
        Ok(LuFactors {
            lu,
            perm,
            rank_estimate: rank,
            threshold,
        })
    }

    pub fn rank_estimate(&self) -> usize {
        self.rank_estimate
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.rows();
        assert_eq!(b.len(), n);
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let v = y[j];
                y[i] -= l * v;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let u = self.lu[(i, j)];
                let v = y[j];
                y[i] -= u * v;
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }

    /// A⁻¹ by solving against the identity columns.
    pub fn inverse(&self) -> CMatrix {
        let n = self.lu.rows();
        let mut inv = CMatrix::zeros(n, n);
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e);
            e[j] = Complex64::new(0.0, 0.0);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

/// Solves A·x = b with partial pivoting at the default threshold.
pub fn lu_solve(a: &CMatrix, b: &[Complex64]) -> Result<Vec<Complex64>, AlgebraError> {
    Ok(LuFactors::new(a, DEFAULT_PIVOT_THRESHOLD)?.solve(b))
}

/// Least-squares step: solves min ‖A·x − b‖₂ via the normal equations
/// Aᴴ A x = Aᴴ b. Adequate at the residual tolerances used here.
pub fn least_squares_solve(a: &CMatrix, b: &[Complex64]) -> Result<Vec<Complex64>, AlgebraError> {
    let ah = a.hermitian();
    let gram = ah.mul_mat(a);
    let rhs = ah.mul_vec(b);
    lu_solve(&gram, &rhs)
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_inf_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn vec_sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

pub fn vec_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_normal, Seed};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let a = CMatrix::identity(3);
        let b = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)];
        let x = lu_solve(&a, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn diagonal_solve() {
        let a = CMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(4.0, 0.0)]]);
        let x = lu_solve(&a, &[c(2.0, 0.0), c(8.0, 0.0)]).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((x[1] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn random_well_conditioned_solve_has_small_residual() {
        let mut rng = Seed(42).derive("lu", 0).rng();
        for _ in 0..20 {
            let n = 5;
            let mut a = CMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a[(i, j)] = complex_normal(&mut rng);
                }
                a[(i, i)] += c(4.0, 0.0); // keep it well conditioned
            }
            let x_true: Vec<Complex64> = (0..n).map(|_| complex_normal(&mut rng)).collect();
            let b = a.mul_vec(&x_true);
            let x = lu_solve(&a, &b).unwrap();
            let resid = vec_dist(&a.mul_vec(&x), &b);
            assert!(resid <= 1e-12, "residual {resid}");
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]]);
        match LuFactors::new(&a, DEFAULT_PIVOT_THRESHOLD) {
            Err(AlgebraError::SingularMatrix { .. }) => {}
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn least_squares_recovers_consistent_solution() {
        // Three proportional rows in one unknown: x = 1.
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![c(2.0, 0.0)], vec![c(3.0, 0.0)]]);
        let b = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let x = least_squares_solve(&a, &b).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-12);
    }
}
