//! Multivariate Laurent polynomials with complex coefficients.
//!
//! Terms are kept in a `BTreeMap` ordered by graded lexicographic order on
//! the exponent vectors, so evaluation, differentiation and printing all walk
//! the terms in one fixed deterministic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::AlgebraError;

/// Exponent vector of a Laurent monomial; entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of entries (the grade used by the term order).
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Total degree of the nonnegative part: max(Σ max(e_i, 0)).
    pub fn positive_total(&self) -> i64 {
        self.0.iter().map(|&e| e.max(0)).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn coeff_is_zero(c: Complex64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

/// z^e with a per-coordinate integer power; errors if a negative power meets
/// a zero coordinate.
pub fn monomial_value(z: &[Complex64], e: &Exponent) -> Result<Complex64, AlgebraError> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (zi, &ei) in z.iter().zip(e.0.iter()) {
        if ei == 0 {
            continue;
        }
        if ei < 0 && coeff_is_zero(*zi) {
            return Err(AlgebraError::DivisionByZero);
        }
        acc *= zi.powi(ei as i32);
    }
    Ok(acc)
}

/// Per-point power cache: powers of each coordinate (and of its reciprocal)
/// built once by sequential multiplication and shared across every term and
/// polynomial evaluated at the same point. Exponents beyond the table cap
/// fall back to binary exponentiation.
pub struct PowerTable {
    z: Vec<Complex64>,
    pos: Vec<Vec<Complex64>>,
    neg: Vec<Vec<Complex64>>,
}

/// Largest exponent tabulated eagerly; reparameterized homotopies can carry
/// very large parameter exponents that would make dense tables wasteful.
const POWER_TABLE_CAP: i64 = 48;

impl PowerTable {
    /// Builds powers 0..=max_pos[j] and reciprocal powers 0..=max_neg[j].
    /// A needed reciprocal of a zero coordinate is an error.
    pub fn new(z: &[Complex64], max_pos: &[i64], max_neg: &[i64]) -> Result<Self, AlgebraError> {
        let one = Complex64::new(1.0, 0.0);
        let mut pos = Vec::with_capacity(z.len());
        let mut neg = Vec::with_capacity(z.len());
        for (j, &zj) in z.iter().enumerate() {
            let cap_pos = max_pos[j].min(POWER_TABLE_CAP);
            let mut pj = Vec::with_capacity(cap_pos as usize + 1);
            pj.push(one);
            for _ in 0..cap_pos {
                let last = *pj.last().unwrap();
                pj.push(last * zj);
            }
            pos.push(pj);
            let cap_neg = max_neg[j].min(POWER_TABLE_CAP);
            let mut nj = Vec::with_capacity(cap_neg as usize + 1);
            nj.push(one);
            if max_neg[j] > 0 {
                if coeff_is_zero(zj) {
                    return Err(AlgebraError::DivisionByZero);
                }
                let inv = one / zj;
                for _ in 0..cap_neg {
                    let last = *nj.last().unwrap();
                    nj.push(last * inv);
                }
            }
            neg.push(nj);
        }
        Ok(PowerTable {
            z: z.to_vec(),
            pos,
            neg,
        })
    }

    /// Builds a table covering every exponent of every given polynomial.
    pub fn covering<'a>(
        z: &[Complex64],
        polys: impl Iterator<Item = &'a LaurentPolynomial>,
    ) -> Result<Self, AlgebraError> {
        let n = z.len();
        let mut max_pos = vec![0i64; n];
        let mut max_neg = vec![0i64; n];
        for p in polys {
            for (e, _) in p.terms() {
                for (j, &k) in e.0.iter().enumerate() {
                    if k > 0 {
                        max_pos[j] = max_pos[j].max(k);
                    } else if k < 0 {
                        max_neg[j] = max_neg[j].max(-k);
                    }
                }
            }
        }
        Self::new(z, &max_pos, &max_neg)
    }

    #[inline]
    pub fn monomial(&self, e: &Exponent) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, &k) in e.0.iter().enumerate() {
            if k > 0 {
                if (k as usize) < self.pos[j].len() {
                    acc *= self.pos[j][k as usize];
                } else {
                    acc *= self.z[j].powi(k as i32);
                }
            } else if k < 0 {
                if ((-k) as usize) < self.neg[j].len() {
                    acc *= self.neg[j][(-k) as usize];
                } else {
                    acc *= self.z[j].powi(k as i32);
                }
            }
        }
        acc
    }
}

/// A Laurent polynomial: graded-lex ordered map from exponents to nonzero
/// complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Complex64>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Exponent::zero(nvars), c);
        p
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Exponent::unit(nvars, var), Complex64::new(1.0, 0.0));
        p
    }

    pub fn monomial(nvars: usize, e: Exponent, c: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(e, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Complex64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Complex64 {
        self.terms.get(e).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Adds `c·x^e`, dropping the term if the combined coefficient vanishes.
    pub fn add_term(&mut self, e: Exponent, c: Complex64) {
        debug_assert_eq!(e.len(), self.nvars);
        if coeff_is_zero(c) {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if coeff_is_zero(s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Support: the set of exponents with nonzero coefficients.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Max total degree of the nonnegative-exponent interpretation.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.positive_total()).max().unwrap_or(0)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|e| e.has_negative())
    }

    /// Σ c_a z^a over terms in graded-lex order, one power product per term.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64, AlgebraError> {
        if z.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                got: z.len(),
            });
        }
        let table = PowerTable::covering(z, std::iter::once(self))?;
        Ok(self.eval_with(&table))
    }

    /// Evaluation against a prebuilt power table.
    pub fn eval_with(&self, table: &PowerTable) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c * table.monomial(e);
        }
        acc
    }

    /// Σ |c_a|·Π|z_j|^{a_j}: the attainable evaluation magnitude at z, used
    /// as the backward-error scale for residual tests.
    pub fn eval_abs(&self, z: &[Complex64]) -> f64 {
        let mut acc = 0.0f64;
        for (e, c) in &self.terms {
            let mut m = c.norm();
            for (zi, &ei) in z.iter().zip(e.0.iter()) {
                if ei != 0 {
                    m *= zi.norm().powi(ei as i32);
                }
            }
            if m.is_finite() {
                acc += m;
            } else {
                return f64::INFINITY;
            }
        }
        acc
    }

    /// Symbolic partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[var] = k - 1;
            out.add_term(d, c * k as f64);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn add(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = Exponent(ea.0.iter().zip(eb.0.iter()).map(|(a, b)| a + b).collect());
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Substitutes constants for a subset of variables, producing a
    /// polynomial in the remaining ones (in their original relative order).
    ///
    /// `binding[v] = Some(c)` fixes variable `v` to `c`.
    pub fn substitute(&self, binding: &[Option<Complex64>]) -> Result<LaurentPolynomial, AlgebraError> {
        debug_assert_eq!(binding.len(), self.nvars);
        let keep: Vec<usize> = (0..self.nvars).filter(|&v| binding[v].is_none()).collect();
        let mut out = LaurentPolynomial::zero(keep.len());
        for (e, c) in &self.terms {
            let mut coeff = *c;
            for (v, b) in binding.iter().enumerate() {
                if let Some(val) = b {
                    let k = e.0[v];
                    if k != 0 {
                        if k < 0 && coeff_is_zero(*val) {
                            return Err(AlgebraError::DivisionByZero);
                        }
                        coeff *= val.powi(k as i32);
                    }
                }
            }
            let reduced = Exponent(keep.iter().map(|&v| e.0[v]).collect());
            out.add_term(reduced, coeff);
        }
        Ok(out)
    }

    /// Substitutes the trailing parameter variables with affine functions of
    /// one new variable τ: parameter k becomes base[k] + τ·dir[k]. Returns a
    /// polynomial in the first `keep` variables plus τ last.
    pub fn substitute_affine_tau(
        &self,
        keep: usize,
        base: &[Complex64],
        dir: &[Complex64],
    ) -> LaurentPolynomial {
        let nparams = self.nvars - keep;
        debug_assert_eq!(base.len(), nparams);
        debug_assert_eq!(dir.len(), nparams);
        let mut out = LaurentPolynomial::zero(keep + 1);
        for (e, c) in &self.terms {
            // Expand Π_k (base_k + τ·dir_k)^{β_k} into powers of τ.
            let mut tau_coeffs: Vec<Complex64> = vec![*c];
            for k in 0..nparams {
                let beta = e.0[keep + k];
                debug_assert!(beta >= 0, "parameters appear polynomially");
                for _ in 0..beta {
                    let mut next = vec![Complex64::new(0.0, 0.0); tau_coeffs.len() + 1];
                    for (d, v) in tau_coeffs.iter().enumerate() {
                        next[d] += v * base[k];
                        next[d + 1] += v * dir[k];
                    }
                    tau_coeffs = next;
                }
            }
            for (d, v) in tau_coeffs.into_iter().enumerate() {
                let mut exp: Vec<i64> = e.0[..keep].to_vec();
                exp.push(d as i64);
                out.add_term(Exponent(exp), v);
            }
        }
        out
    }

    /// Reinterprets the polynomial in a larger variable set: variable `v`
    /// here becomes variable `map[v]` there.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> LaurentPolynomial {
        debug_assert_eq!(map.len(), self.nvars);
        let mut out = LaurentPolynomial::zero(nvars);
        for (e, c) in &self.terms {
            let mut big = vec![0i64; nvars];
            for (v, &ev) in e.0.iter().enumerate() {
                big[map[v]] = ev;
            }
            out.add_term(Exponent(big), *c);
        }
        out
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }
}

/// A system of Laurent polynomials sharing one variable set.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSystem {
    nvars: usize,
    polys: Vec<LaurentPolynomial>,
}

impl LaurentSystem {
    pub fn new(nvars: usize, polys: Vec<LaurentPolynomial>) -> Self {
        assert!(polys.iter().all(|p| p.nvars() == nvars));
        LaurentSystem { nvars, polys }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.nvars
    }

    pub fn polys(&self) -> &[LaurentPolynomial] {
        &self.polys
    }

    pub fn push(&mut self, p: LaurentPolynomial) {
        assert_eq!(p.nvars(), self.nvars);
        self.polys.push(p);
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>, AlgebraError> {
        if z.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                got: z.len(),
            });
        }
        let table = PowerTable::covering(z, self.polys.iter())?;
        Ok(self.polys.iter().map(|p| p.eval_with(&table)).collect())
    }

    pub fn is_real(&self) -> bool {
        self.polys.iter().all(|p| p.is_real())
    }

    /// Supports of all member polynomials.
    pub fn supports(&self) -> Vec<Vec<Exponent>> {
        self.polys.iter().map(|p| p.support()).collect()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.polys.iter().any(|p| p.has_negative_exponent())
    }

    /// Residual ∞-norm ‖F(z)‖∞, +∞ on evaluation error.
    pub fn residual(&self, z: &[Complex64]) -> f64 {
        match self.eval(z) {
            Ok(v) => v.iter().map(|c| c.norm()).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    }

    /// Backward-error residual: ‖F(z)‖∞ divided by the attainable evaluation
    /// magnitude. A zero computed in double precision satisfies this at a
    /// small multiple of machine epsilon regardless of the point's scale.
    pub fn scaled_residual(&self, z: &[Complex64]) -> f64 {
        let scale = self
            .polys
            .iter()
            .map(|p| p.eval_abs(z))
            .fold(1.0f64, f64::max);
        self.residual(z) / scale
    }
}

/// Jacobian matrix of symbolic partial derivatives, cached per system.
#[derive(Debug, Clone)]
pub struct SystemJacobian {
    system: LaurentSystem,
    partials: Vec<Vec<LaurentPolynomial>>,
}

impl SystemJacobian {
    pub fn new(system: LaurentSystem) -> Self {
        let partials = system
            .polys()
            .iter()
            .map(|p| (0..system.nvars()).map(|v| p.differentiate(v)).collect())
            .collect();
        SystemJacobian { system, partials }
    }

    pub fn system(&self) -> &LaurentSystem {
        &self.system
    }

    pub fn partials(&self) -> &[Vec<LaurentPolynomial>] {
        &self.partials
    }

    /// Returns (F(z), JF(z)) with JF in row-major order (rows = polynomials).
    pub fn eval(&self, z: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Vec<Complex64>>), AlgebraError> {
        let table = PowerTable::covering(
            z,
            self.system
                .polys()
                .iter()
                .chain(self.partials.iter().flatten()),
        )?;
        let values = self
            .system
            .polys()
            .iter()
            .map(|p| p.eval_with(&table))
            .collect();
        let jac = self
            .partials
            .iter()
            .map(|row| row.iter().map(|p| p.eval_with(&table)).collect())
            .collect();
        Ok((values, jac))
    }
}

/// Evaluates (F(z), JF(z)) for a square or rectangular system.
pub fn eval_jacobian(
    system: &LaurentSystem,
    z: &[Complex64],
) -> Result<(Vec<Complex64>, Vec<Vec<Complex64>>), AlgebraError> {
    SystemJacobian::new(system.clone()).eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // x²+y²−1 in two variables.
    fn circle() -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            2,
            [
                (Exponent(vec![2, 0]), c(1.0, 0.0)),
                (Exponent(vec![0, 2]), c(1.0, 0.0)),
                (Exponent(vec![0, 0]), c(-1.0, 0.0)),
            ],
        )
    }

    #[test]
    fn eval_on_unit_circle_point_is_zero() {
        let f = circle();
        let v = f.eval(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn laurent_monomial_eval() {
        // x1 * x2^-1 at (6, 3) = 2
        let f = LaurentPolynomial::monomial(2, Exponent(vec![1, -1]), c(1.0, 0.0));
        let v = f.eval(&[c(6.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_power_at_zero_errors() {
        let f = LaurentPolynomial::monomial(1, Exponent(vec![-1]), c(1.0, 0.0));
        assert!(matches!(
            f.eval(&[c(0.0, 0.0)]),
            Err(AlgebraError::DivisionByZero)
        ));
    }

    #[test]
    fn jacobian_of_x_squared_minus_one() {
        let f = LaurentPolynomial::from_terms(
            1,
            [
                (Exponent(vec![2]), c(1.0, 0.0)),
                (Exponent(vec![0]), c(-1.0, 0.0)),
            ],
        );
        let sys = LaurentSystem::new(1, vec![f]);
        let (v, j) = eval_jacobian(&sys, &[c(1.0, 0.0)]).unwrap();
        assert_eq!(v[0], c(0.0, 0.0));
        assert_eq!(j[0][0], c(2.0, 0.0));
    }

    #[test]
    fn constant_poly_has_zero_jacobian_row() {
        let f = LaurentPolynomial::constant(2, c(3.0, 1.0));
        let sys = LaurentSystem::new(2, vec![f]);
        let (_, j) = eval_jacobian(&sys, &[c(0.3, 0.0), c(0.7, 0.0)]).unwrap();
        assert_eq!(j[0], vec![c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn hand_differentiated_jacobian_of_circle_cubic() {
        // (x²+y²−1, x²−y³−y−1) at (1, 0): values (0,0), rows ((2,0),(2,−1)).
        let g = LaurentPolynomial::from_terms(
            2,
            [
                (Exponent(vec![2, 0]), c(1.0, 0.0)),
                (Exponent(vec![0, 3]), c(-1.0, 0.0)),
                (Exponent(vec![0, 1]), c(-1.0, 0.0)),
                (Exponent(vec![0, 0]), c(-1.0, 0.0)),
            ],
        );
        let sys = LaurentSystem::new(2, vec![circle(), g]);
        let (v, j) = eval_jacobian(&sys, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(v, vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(j[0], vec![c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(j[1], vec![c(2.0, 0.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn support_of_zero_poly_is_empty() {
        assert!(LaurentPolynomial::zero(3).support().is_empty());
    }

    #[test]
    fn graded_lex_orders_by_total_degree_first() {
        let a = Exponent(vec![0, 2]);
        let b = Exponent(vec![1, 0]);
        assert!(b < a); // total degree 1 < 2
        let c1 = Exponent(vec![1, 1]);
        let c2 = Exponent(vec![0, 2]);
        assert!(c2 < c1); // same grade, lex on entries
    }

    #[test]
    fn substitute_fixes_parameters() {
        // f = p·x² + q, fixing p=2, q=−8 leaves 2x²−8 in one variable.
        let f = LaurentPolynomial::from_terms(
            3,
            [
                (Exponent(vec![2, 1, 0]), c(1.0, 0.0)),
                (Exponent(vec![0, 0, 1]), c(1.0, 0.0)),
            ],
        );
        let g = f
            .substitute(&[None, Some(c(2.0, 0.0)), Some(c(-8.0, 0.0))])
            .unwrap();
        assert_eq!(g.nvars(), 1);
        assert_eq!(g.coefficient(&Exponent(vec![2])), c(2.0, 0.0));
        assert_eq!(g.coefficient(&Exponent(vec![0])), c(-8.0, 0.0));
    }
}
