//! A-posteriori certification of numerical zeros: a conservative
//! floating-point alpha test with provable upper bounds for the curvature
//! invariant, and the interval Krawczyk test for existence, uniqueness,
//! and reality.

pub mod interval;

use std::collections::HashMap;

use num_complex::Complex64;

use crate::algebra::{
    lu_solve, vec_norm, CMatrix, LaurentSystem, LuFactors, SystemJacobian,
    DEFAULT_PIVOT_THRESHOLD,
};
use crate::error::{AlgebraError, CertifyError};
use interval::{enclose_jacobian, enclose_system, interval_matrix_inf_norm, ComplexInterval};

/// Certification threshold (13 − 3√17)/4 ≈ 0.15767.
pub fn alpha_threshold() -> f64 {
    (13.0 - 3.0 * 17.0f64.sqrt()) / 4.0
}

/// Newton-step length, certified curvature bound, and their product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaData {
    /// β = ‖JF(x)⁻¹F(x)‖₂, the Newton step length.
    pub beta: f64,
    /// A finite upper bound for the curvature invariant γ(F, x).
    pub gamma_upper: f64,
    /// α ≤ β·γ_upper; below the threshold the point is an approximate zero.
    pub alpha_upper: f64,
}

/// Coefficients of f(x₀ + h) grouped by the total degree in h.
fn taylor_masses(
    f: &LaurentSystem,
    jinv: &CMatrix,
    x0: &[Complex64],
) -> Result<HashMap<i64, Vec<Vec<Complex64>>>, CertifyError> {
    // For each multi-index k with |k| ≥ 2, the vector over polynomials of the
    // h^k coefficient of f_i(x₀+h); binomially expanded per term.
    let n = f.nvars();
    let mut by_index: HashMap<Vec<i64>, Vec<Complex64>> = HashMap::new();
    for (pi, p) in f.polys().iter().enumerate() {
        for (e, c) in p.terms() {
            if e.has_negative() {
                return Err(CertifyError::Algebra(AlgebraError::DivisionByZero));
            }
            // Expand Π_j (x0_j + h_j)^{e_j} into Σ_k C(e,k) x0^{e−k} h^k.
            let mut partial: Vec<(Vec<i64>, Complex64)> = vec![(Vec::with_capacity(n), *c)];
            for (j, &ej) in e.0.iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (ej as usize + 1));
                for (kvec, coeff) in &partial {
                    let mut binom = 1.0f64;
                    for kj in 0..=ej {
                        if kj > 0 {
                            binom *= (ej - kj + 1) as f64 / kj as f64;
                        }
                        let pow = (ej - kj) as i32;
                        let scale = if pow == 0 {
                            Complex64::new(1.0, 0.0)
                        } else {
                            x0[j].powi(pow)
                        };
                        let mut kv = kvec.clone();
                        kv.push(kj);
                        next.push((kv, coeff * scale * binom));
                    }
                }
                partial = next;
            }
            for (kvec, coeff) in partial {
                if kvec.iter().sum::<i64>() >= 2 {
                    by_index
                        .entry(kvec)
                        .or_insert_with(|| vec![Complex64::new(0.0, 0.0); f.len()])[pi] += coeff;
                }
            }
        }
    }
    // Apply J⁻¹ and group by total order.
    let mut by_order: HashMap<i64, Vec<Vec<Complex64>>> = HashMap::new();
    for (kvec, tvec) in by_index {
        let order: i64 = kvec.iter().sum();
        by_order.entry(order).or_default().push(jinv.mul_vec(&tvec));
    }
    Ok(by_order)
}

/// Computes β exactly and a certified upper bound for γ: for each order
/// k ≥ 2, the total absolute coefficient mass of J⁻¹ applied to the order-k
/// Taylor coefficients dominates the operator norm of the corresponding
/// multilinear map on the unit ball.
pub fn alpha_data(f: &LaurentSystem, x: &[Complex64]) -> Result<AlphaData, CertifyError> {
    assert!(f.is_square(), "alpha certification needs a square system");
    let jac = SystemJacobian::new(f.clone());
    let (value, rows) = jac.eval(x)?;
    let jm = CMatrix::from_rows(&rows);
    let lu = LuFactors::new(&jm, DEFAULT_PIVOT_THRESHOLD)?;
    let step = lu.solve(&value);
    let beta = vec_norm(&step);
    let jinv = lu.inverse();

    let masses = taylor_masses(f, &jinv, x)?;
    let mut gamma_upper = 0.0f64;
    for (order, vectors) in masses {
        let mass: f64 = vectors
            .iter()
            .map(|v| v.iter().map(|c| c.norm()).sum::<f64>())
            .sum();
        if mass > 0.0 {
            gamma_upper = gamma_upper.max(mass.powf(1.0 / (order as f64 - 1.0)));
        }
    }
    Ok(AlphaData {
        beta,
        gamma_upper,
        alpha_upper: beta * gamma_upper,
    })
}

/// Which certification method produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMethod {
    Alpha,
    Krawczyk,
}

/// The certified region attached to a certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum CertifiedRegion {
    /// Ball of the given radius (2β) around the point.
    Ball { radius: f64 },
    /// Interval box per coordinate.
    Box(Vec<ComplexInterval>),
    /// Nothing certified.
    None,
}

/// Per-point certification record.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub method: CertificateMethod,
    pub point: Vec<Complex64>,
    pub certified: bool,
    pub region: CertifiedRegion,
    /// Krawczyk only: the region provably contains exactly one zero.
    pub unique: bool,
    /// Real-coefficient systems only.
    pub real: Option<bool>,
    /// Indices of other certified points proven to have different
    /// associated zeros.
    pub distinct_from: Vec<usize>,
    /// Alpha diagnostics when available.
    pub alpha: Option<AlphaData>,
}

/// Certifies each point by the alpha test: certified iff
/// α_upper < (13−3√17)/4. Pairwise distinctness uses the 2β separation
/// balls, and reality (real systems only) the conjugate-proximity test.
pub fn certify_alpha(f: &LaurentSystem, points: &[Vec<Complex64>]) -> Vec<Certificate> {
    let real_system = f.is_real();
    let data: Vec<Option<AlphaData>> = points
        .iter()
        .map(|x| alpha_data(f, x).ok())
        .collect();
    let threshold = alpha_threshold();
    let mut certs: Vec<Certificate> = points
        .iter()
        .zip(data.iter())
        .map(|(x, d)| {
            let (certified, region, real, alpha) = match d {
                Some(a) if a.alpha_upper < threshold => {
                    let real = if real_system {
                        // ‖x − x̄‖ = 2‖Im x‖; closer than 1/(20γ) forces a
                        // self-conjugate associated zero.
                        let im_norm =
                            2.0 * x.iter().map(|c| c.im * c.im).sum::<f64>().sqrt();
                        Some(im_norm < 1.0 / (20.0 * a.gamma_upper.max(f64::MIN_POSITIVE)))
                    } else {
                        None
                    };
                    (
                        true,
                        CertifiedRegion::Ball { radius: 2.0 * a.beta },
                        real,
                        Some(*a),
                    )
                }
                other => (false, CertifiedRegion::None, None, *other),
            };
            Certificate {
                method: CertificateMethod::Alpha,
                point: x.clone(),
                certified,
                region,
                unique: false,
                real,
                distinct_from: Vec::new(),
                alpha,
            }
        })
        .collect();

    for i in 0..certs.len() {
        for j in (i + 1)..certs.len() {
            if !(certs[i].certified && certs[j].certified) {
                continue;
            }
            let (bi, bj) = (
                certs[i].alpha.unwrap().beta,
                certs[j].alpha.unwrap().beta,
            );
            let dist = crate::algebra::vec_dist(&certs[i].point, &certs[j].point);
            if dist > 2.0 * bi + 2.0 * bj {
                certs[i].distinct_from.push(j);
                certs[j].distinct_from.push(i);
            }
        }
    }
    certs
}

/// Returns true when the points' associated zeros provably coincide:
/// ‖x₁−x₂‖ < 1/(20·γ_upper(x₁)).
pub fn same_zero(a1: &AlphaData, x1: &[Complex64], x2: &[Complex64]) -> bool {
    crate::algebra::vec_dist(x1, x2) < 1.0 / (20.0 * a1.gamma_upper.max(f64::MIN_POSITIVE))
}

/// Options for the Krawczyk interval test.
#[derive(Debug, Clone)]
pub struct KrawczykOptions {
    /// Initial per-coordinate half-width: max(`step_factor`·|Newton step|, floor).
    pub step_factor: f64,
    pub width_floor: f64,
    /// Multiplicative inflation per round.
    pub inflation: f64,
    pub max_rounds: usize,
}

impl Default for KrawczykOptions {
    fn default() -> Self {
        KrawczykOptions {
            step_factor: 8.0,
            width_floor: 1e-12,
            inflation: 4.0,
            max_rounds: 10,
        }
    }
}

/// Krawczyk interval certification of one point: builds a candidate box
/// around x, evaluates K(I) = x − Y·□F(x) + (1 − Y·□JF(I))(I − x), and
/// certifies existence when K(I) lands in the interior of I, uniqueness when
/// √2·‖1 − Y·□JF(I)‖∞ < 1, and reality via the conjugated-box test.
/// Failure is reported as an uncertified record, never an error.
pub fn krawczyk_certify(
    f: &LaurentSystem,
    x: &[Complex64],
    opts: &KrawczykOptions,
) -> Certificate {
    assert!(f.is_square(), "Krawczyk certification needs a square system");
    let failure = |point: &[Complex64]| Certificate {
        method: CertificateMethod::Krawczyk,
        point: point.to_vec(),
        certified: false,
        region: CertifiedRegion::None,
        unique: false,
        real: None,
        distinct_from: Vec::new(),
        alpha: None,
    };
    let jac = SystemJacobian::new(f.clone());
    let Ok((value, rows)) = jac.eval(x) else {
        return failure(x);
    };
    let jm = CMatrix::from_rows(&rows);
    let Ok(lu) = LuFactors::new(&jm, DEFAULT_PIVOT_THRESHOLD) else {
        return failure(x);
    };
    let y = lu.inverse();
    let step = lu.solve(&value);
    let n = f.nvars();
    let real_system = f.is_real();

    let mut widths: Vec<f64> = step
        .iter()
        .map(|s| (opts.step_factor * s.norm()).max(opts.width_floor))
        .collect();

    for _ in 0..opts.max_rounds {
        let boxes: Vec<ComplexInterval> = x
            .iter()
            .zip(widths.iter())
            .map(|(xi, w)| ComplexInterval::centered(*xi, *w))
            .collect();
        if let Some(cert) = krawczyk_round(&jac, f, x, &y, &boxes, real_system, n) {
            return cert;
        }
        for w in widths.iter_mut() {
            *w *= opts.inflation;
        }
    }
    failure(x)
}

fn krawczyk_round(
    jac: &SystemJacobian,
    f: &LaurentSystem,
    x: &[Complex64],
    y: &CMatrix,
    boxes: &[ComplexInterval],
    real_system: bool,
    n: usize,
) -> Option<Certificate> {
    let point_boxes: Vec<ComplexInterval> = x.iter().map(|xi| ComplexInterval::point(*xi)).collect();
    let fx = enclose_system(f, &point_boxes).ok()?;
    let jf = enclose_jacobian(jac, boxes).ok()?;

    // R = 1_n − Y·□JF(I)
    let mut r = vec![vec![ComplexInterval::point(Complex64::new(0.0, 0.0)); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = if i == j {
                ComplexInterval::one()
            } else {
                ComplexInterval::point(Complex64::new(0.0, 0.0))
            };
            for k in 0..n {
                acc = acc.sub(ComplexInterval::point(y[(i, k)]).mul(jf[k][j]));
            }
            r[i][j] = acc;
        }
    }

    // K = x − Y·□F(x) + R·(I − x)
    let mut k_box = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = ComplexInterval::point(x[i]);
        for j in 0..n {
            acc = acc.sub(ComplexInterval::point(y[(i, j)]).mul(fx[j]));
        }
        for j in 0..n {
            let delta = boxes[j].sub(ComplexInterval::point(x[j]));
            acc = acc.add(r[i][j].mul(delta));
        }
        k_box.push(acc);
    }

    let contained = k_box
        .iter()
        .zip(boxes.iter())
        .all(|(k, b)| b.contains_box_interior(*k));
    if !contained {
        return None;
    }
    let unique = 2.0f64.sqrt() * interval_matrix_inf_norm(&r) < 1.0;
    let real = if real_system {
        Some(
            k_box
                .iter()
                .zip(boxes.iter())
                .all(|(k, b)| b.contains_box(k.conj())),
        )
    } else {
        None
    };
    Some(Certificate {
        method: CertificateMethod::Krawczyk,
        point: x.to_vec(),
        certified: true,
        region: CertifiedRegion::Box(boxes.to_vec()),
        unique,
        real,
        distinct_from: Vec::new(),
        alpha: None,
    })
}

/// Certifies a batch of points with Krawczyk and marks pairwise-disjoint
/// certified unique boxes as distinct.
pub fn krawczyk_certify_all(
    f: &LaurentSystem,
    points: &[Vec<Complex64>],
    opts: &KrawczykOptions,
) -> Vec<Certificate> {
    let mut certs: Vec<Certificate> = points
        .iter()
        .map(|x| krawczyk_certify(f, x, opts))
        .collect();
    for i in 0..certs.len() {
        for j in (i + 1)..certs.len() {
            if !(certs[i].certified && certs[j].certified) {
                continue;
            }
            let (CertifiedRegion::Box(bi), CertifiedRegion::Box(bj)) =
                (&certs[i].region, &certs[j].region)
            else {
                continue;
            };
            let disjoint = bi.iter().zip(bj.iter()).any(|(a, b)| {
                a.re.hi < b.re.lo || b.re.hi < a.re.lo || a.im.hi < b.im.lo || b.im.hi < a.im.lo
            });
            if disjoint && certs[i].unique && certs[j].unique {
                certs[i].distinct_from.push(j);
                certs[j].distinct_from.push(i);
            }
        }
    }
    certs
}

/// Convenience wrapper around `lu_solve` retained for callers that only need
/// a Newton step length.
pub fn newton_step_norm(f: &LaurentSystem, x: &[Complex64]) -> Result<f64, CertifyError> {
    let jac = SystemJacobian::new(f.clone());
    let (value, rows) = jac.eval(x)?;
    let jm = CMatrix::from_rows(&rows);
    Ok(vec_norm(&lu_solve(&jm, &value)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::system_from_lines;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn alpha_of_exact_zero_is_zero() {
        let f = system_from_lines(&["x"], &["x^2 - 1"]);
        let a = alpha_data(&f, &[c(1.0, 0.0)]).unwrap();
        assert_eq!(a.beta, 0.0);
        assert_eq!(a.alpha_upper, 0.0);
    }

    #[test]
    fn alpha_matches_univariate_closed_form() {
        // x²−1 at 1.1: β = |(1.1²−1)/2.2|, γ = |f''/(2f')| = 1/2.2.
        let f = system_from_lines(&["x"], &["x^2 - 1"]);
        let a = alpha_data(&f, &[c(1.1, 0.0)]).unwrap();
        assert!((a.beta - 0.21 / 2.2).abs() < 1e-14);
        assert!((a.gamma_upper - 1.0 / 2.2).abs() < 1e-14);
        assert!(a.alpha_upper < alpha_threshold());
        assert!((a.alpha_upper - 0.0434).abs() < 5e-4);
    }

    #[test]
    fn singular_jacobian_is_an_error() {
        let f = system_from_lines(&["x"], &["x^2"]);
        assert!(alpha_data(&f, &[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn threshold_value() {
        assert!((alpha_threshold() - 0.15767).abs() < 1e-5);
    }

    #[test]
    fn far_point_is_not_certified() {
        let f = system_from_lines(&["x", "y"], &["x^2 + y^2 - 1", "x^2 - y^3 - y - 1"]);
        let certs = certify_alpha(&f, &[vec![c(10.0, 3.0), c(-7.0, 2.0)]]);
        assert!(!certs[0].certified);
    }

    #[test]
    fn krawczyk_certifies_sqrt_two() {
        let f = system_from_lines(&["x"], &["x^2 - 2"]);
        let cert = krawczyk_certify(&f, &[c(1.41421356, 0.0)], &KrawczykOptions::default());
        assert!(cert.certified);
        assert!(cert.unique);
        assert_eq!(cert.real, Some(true));
        let CertifiedRegion::Box(b) = &cert.region else {
            panic!("expected a box");
        };
        assert!(b[0].contains(c(2.0f64.sqrt(), 0.0)));
    }

    #[test]
    fn krawczyk_detects_nonreal_zero_of_real_system() {
        let f = system_from_lines(&["x"], &["x^2 + 1"]);
        let cert = krawczyk_certify(&f, &[c(0.0, 1.0)], &KrawczykOptions::default());
        assert!(cert.certified);
        assert!(cert.unique);
        assert_eq!(cert.real, Some(false));
    }

    #[test]
    fn krawczyk_reports_failure_without_panicking() {
        let f = system_from_lines(&["x"], &["x^2"]);
        let cert = krawczyk_certify(&f, &[c(0.0, 0.0)], &KrawczykOptions::default());
        assert!(!cert.certified);
    }

    #[test]
    fn conservativeness_on_low_degree_univariate() {
        // Exact γ for f at x is max over k of |f^(k)/(k! f')|^(1/(k−1)).
        for (line, x0) in [
            ("x^2 - 1", 1.3),
            ("x^3 - 2x + 1", 1.6),
            ("x^4 - x - 1", 1.2),
        ] {
            let f = system_from_lines(&["x"], &[line]);
            let a = alpha_data(&f, &[c(x0, 0.0)]).unwrap();
            let p = &f.polys()[0];
            let d1 = p.differentiate(0);
            let mut exact = 0.0f64;
            let mut deriv = d1.clone();
            let mut fact = 1.0;
            for k in 2..=4i32 {
                deriv = deriv.differentiate(0);
                fact *= k as f64;
                let num = deriv.eval(&[c(x0, 0.0)]).unwrap().norm() / fact;
                let den = d1.eval(&[c(x0, 0.0)]).unwrap().norm();
                if num > 0.0 {
                    exact = exact.max((num / den).powf(1.0 / (k as f64 - 1.0)));
                }
            }
            assert!(
                a.gamma_upper >= exact - 1e-12,
                "{line} at {x0}: bound {} < exact {exact}",
                a.gamma_upper
            );
        }
    }
}
