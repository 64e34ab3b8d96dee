//! Rectangle complex interval arithmetic with next-value outward rounding,
//! and interval enclosures of polynomial systems.
//!
//! Every real-interval operation computes the double-precision endpoints and
//! then widens each bound outward by one representable step, so the exact
//! real result is always enclosed without switching rounding modes.

use num_complex::Complex64;

use crate::algebra::{Exponent, LaurentPolynomial, LaurentSystem, SystemJacobian};
use crate::error::CertifyError;

/// A compact real interval [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RealInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        RealInterval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        RealInterval { lo: v, hi: v }
    }

    fn widened(lo: f64, hi: f64) -> Self {
        RealInterval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn add(self, o: Self) -> Self {
        Self::widened(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::widened(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn neg(self) -> Self {
        RealInterval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        let p: [f64; 4] = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        Self::widened(
            p.iter().copied().fold(f64::INFINITY, f64::min),
            p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }

    pub fn div(self, o: Self) -> Result<Self, CertifyError> {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Err(CertifyError::IntervalDivisionByZero);
        }
        let p: [f64; 4] = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        Ok(Self::widened(
            p.iter().copied().fold(f64::INFINITY, f64::min),
            p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ))
    }

    pub fn contains(self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(self, o: Self) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn contains_interior(self, o: Self) -> bool {
        self.lo < o.lo && o.hi < self.hi
    }

    /// Largest absolute value over the interval, rounded up.
    pub fn abs_sup(self) -> f64 {
        self.lo.abs().max(self.hi.abs()).next_up()
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// A rectangle X + iY in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(z: Complex64) -> Self {
        ComplexInterval {
            re: RealInterval::point(z.re),
            im: RealInterval::point(z.im),
        }
    }

    /// Centered box z ± w on both components.
    pub fn centered(z: Complex64, w: f64) -> Self {
        ComplexInterval {
            re: RealInterval::new(z.re - w, z.re + w),
            im: RealInterval::new(z.im - w, z.im + w),
        }
    }

    pub fn one() -> Self {
        Self::point(Complex64::new(1.0, 0.0))
    }

    pub fn add(self, o: Self) -> Self {
        ComplexInterval {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn sub(self, o: Self) -> Self {
        ComplexInterval {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    /// (X·W − Y·Z) + i(X·Z + Y·W).
    pub fn mul(self, o: Self) -> Self {
        ComplexInterval {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    /// (X·W + Y·Z)/(W·W + Z·Z) + i(Y·W − X·Z)/(W·W + Z·Z).
    pub fn div(self, o: Self) -> Result<Self, CertifyError> {
        let den = o.re.mul(o.re).add(o.im.mul(o.im));
        Ok(ComplexInterval {
            re: self.re.mul(o.re).add(self.im.mul(o.im)).div(den)?,
            im: self.im.mul(o.re).sub(self.re.mul(o.im)).div(den)?,
        })
    }

    pub fn neg(self) -> Self {
        ComplexInterval {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    /// The conjugate rectangle {z̄ : z ∈ self}.
    pub fn conj(self) -> Self {
        ComplexInterval {
            re: self.re,
            im: self.im.neg(),
        }
    }

    pub fn contains(self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn contains_box(self, o: Self) -> bool {
        self.re.contains_interval(o.re) && self.im.contains_interval(o.im)
    }

    pub fn contains_box_interior(self, o: Self) -> bool {
        self.re.contains_interior(o.re) && self.im.contains_interior(o.im)
    }

    /// Upper bound for |z| over the rectangle.
    pub fn abs_sup(self) -> f64 {
        self.re.abs_sup().hypot(self.im.abs_sup()).next_up()
    }

    pub fn midpoint(self) -> Complex64 {
        Complex64::new(self.re.midpoint(), self.im.midpoint())
    }

    /// Integer power by repeated multiplication; negative powers divide one
    /// by the positive power.
    pub fn powi(self, k: i64) -> Result<Self, CertifyError> {
        if k == 0 {
            return Ok(Self::one());
        }
        let mut acc = self;
        for _ in 1..k.unsigned_abs() {
            acc = acc.mul(self);
        }
        if k > 0 {
            Ok(acc)
        } else {
            Self::one().div(acc)
        }
    }
}

fn scale_complex(c: Complex64, b: ComplexInterval) -> ComplexInterval {
    ComplexInterval::point(c).mul(b)
}

/// Interval enclosure of one polynomial over a box vector: the graded-lex
/// term sum with per-term powers, evaluated in rectangle arithmetic.
pub fn enclose_poly(
    p: &LaurentPolynomial,
    boxes: &[ComplexInterval],
) -> Result<ComplexInterval, CertifyError> {
    let mut acc = ComplexInterval::point(Complex64::new(0.0, 0.0));
    for (e, c) in p.terms() {
        let mut term = ComplexInterval::one();
        for (j, &k) in e.0.iter().enumerate() {
            if k != 0 {
                term = term.mul(boxes[j].powi(k)?);
            }
        }
        acc = acc.add(scale_complex(*c, term));
    }
    Ok(acc)
}

/// □F: componentwise enclosure of a system over a box vector.
pub fn enclose_system(
    f: &LaurentSystem,
    boxes: &[ComplexInterval],
) -> Result<Vec<ComplexInterval>, CertifyError> {
    f.polys().iter().map(|p| enclose_poly(p, boxes)).collect()
}

/// □JF: enclosure of the Jacobian over a box vector, row-major.
pub fn enclose_jacobian(
    jac: &SystemJacobian,
    boxes: &[ComplexInterval],
) -> Result<Vec<Vec<ComplexInterval>>, CertifyError> {
    jac.partials()
        .iter()
        .map(|row| row.iter().map(|p| enclose_poly(p, boxes)).collect())
        .collect()
}

/// ∞-norm upper bound of an interval matrix: max row sum of entry magnitudes.
pub fn interval_matrix_inf_norm(m: &[Vec<ComplexInterval>]) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|e| e.abs_sup()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Exponent retained in the public surface for support-style consumers.
pub type BoxVector = Vec<ComplexInterval>;

#[allow(unused)]
fn support_hint(_e: &Exponent) {}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    use crate::rng::Seed;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn factored_and_distributed_products_differ() {
        let x = RealInterval::new(0.0, 1.0);
        let a = RealInterval::new(-1.0, 0.0);
        let b = RealInterval::new(1.0, 1.0);
        // x·(a+b) = [0,1]
        let f = x.mul(a.add(b));
        assert!(close(f.lo, 0.0) && close(f.hi, 1.0));
        // x·a + x·b = [−1,1]
        let d = x.mul(a).add(x.mul(b));
        assert!(close(d.lo, -1.0) && close(d.hi, 1.0));
        assert!(d.contains_interval(f));
    }

    #[test]
    fn interval_sum() {
        let s = RealInterval::new(1.0, 2.0).add(RealInterval::new(3.0, 4.0));
        assert!(close(s.lo, 4.0) && close(s.hi, 6.0));
    }

    #[test]
    fn complex_square_of_one_plus_i_encloses_two_i() {
        let z = ComplexInterval::point(Complex64::new(1.0, 1.0));
        let sq = z.mul(z);
        assert!(sq.contains(Complex64::new(0.0, 2.0)));
        assert!(sq.re.width() < 1e-14 && sq.im.width() < 1e-14);
    }

    #[test]
    fn division_by_zero_straddling_interval_errors() {
        let a = ComplexInterval::point(Complex64::new(1.0, 0.0));
        let b = ComplexInterval::new(RealInterval::new(-1.0, 1.0), RealInterval::point(0.0));
        assert!(matches!(
            a.div(b),
            Err(CertifyError::IntervalDivisionByZero)
        ));
    }

    #[test]
    fn fuzzed_ops_enclose_sampled_results() {
        let mut rng = Seed(99).derive("interval-fuzz", 0).rng();
        let mut cases = 0;
        while cases < 10_000 {
            let bounds = |rng: &mut rand_chacha::ChaCha8Rng| {
                let a: f64 = rng.gen_range(-5.0..5.0);
                let b: f64 = rng.gen_range(-5.0..5.0);
                RealInterval::new(a.min(b), a.max(b))
            };
            let i = ComplexInterval::new(bounds(&mut rng), bounds(&mut rng));
            let j = ComplexInterval::new(bounds(&mut rng), bounds(&mut rng));
            let sample = |b: ComplexInterval, rng: &mut rand_chacha::ChaCha8Rng| {
                Complex64::new(
                    rng.gen_range(b.re.lo..=b.re.hi),
                    rng.gen_range(b.im.lo..=b.im.hi),
                )
            };
            let p = sample(i, &mut rng);
            let q = sample(j, &mut rng);
            assert!(i.add(j).contains(p + q));
            assert!(i.sub(j).contains(p - q));
            assert!(i.mul(j).contains(p * q));
            if let Ok(d) = i.div(j) {
                assert!(d.contains(p / q), "{i:?} / {j:?} at {p} / {q}");
            }
            cases += 1;
        }
    }

    #[test]
    fn polynomial_enclosure_contains_sampled_values() {
        use crate::text::system_from_lines;
        let f = system_from_lines(&["x", "y"], &["x^2*y - 3x + y^2 - 0.5", "x*y - 1"]);
        let mut rng = Seed(5).derive("enclosure", 0).rng();
        for _ in 0..100 {
            let cx = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let cy = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let w = rng.gen_range(0.0..0.3);
            let boxes = vec![ComplexInterval::centered(cx, w), ComplexInterval::centered(cy, w)];
            let enc = enclose_system(&f, &boxes).unwrap();
            for _ in 0..20 {
                let sx = Complex64::new(
                    rng.gen_range(boxes[0].re.lo..=boxes[0].re.hi),
                    rng.gen_range(boxes[0].im.lo..=boxes[0].im.hi),
                );
                let sy = Complex64::new(
                    rng.gen_range(boxes[1].re.lo..=boxes[1].re.hi),
                    rng.gen_range(boxes[1].im.lo..=boxes[1].im.hi),
                );
                let v = f.eval(&[sx, sy]).unwrap();
                for (vi, ei) in v.iter().zip(enc.iter()) {
                    assert!(ei.contains(*vi));
                }
            }
        }
    }
}
