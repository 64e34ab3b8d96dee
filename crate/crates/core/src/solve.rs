//! Start-system construction and top-level solvers: the total-degree
//! homotopy, squaring up overdetermined systems, least-squares Newton
//! filtering, and parameter homotopies through a family.

use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{
    least_squares_solve, vec_norm, CMatrix, Exponent, LaurentPolynomial, LaurentSystem,
    SystemJacobian,
};
use crate::error::{AlgebraError, SolveError};
use crate::rng::{complex_normal, unit_scaled, Seed};
use crate::tracker::{
    track_all, Homotopy, LinearBlend, PathResult, PathStatus, TrackerOptions,
};

/// Product of the total degrees of a square polynomial system.
pub fn bezout_number(f: &LaurentSystem) -> Result<u128, SolveError> {
    if !f.is_square() {
        return Err(SolveError::NotSquare {
            rows: f.len(),
            cols: f.nvars(),
        });
    }
    if f.has_negative_exponent() {
        return Err(SolveError::LaurentUnsupported);
    }
    Ok(f.polys()
        .iter()
        .map(|p| p.total_degree().max(0) as u128)
        .product())
}

/// The start system b₀·x_i^{d_i} − b_i with its d₁···d_n known zeros.
#[derive(Debug, Clone)]
pub struct TotalDegreeStart {
    pub degrees: Vec<i64>,
    /// b₀ first, then b₁..b_n; all nonzero, drawn on the unit circle scaled
    /// by a modulus in [0.5, 2].
    pub constants: Vec<Complex64>,
    pub system: LaurentSystem,
    pub start_solutions: Vec<Vec<Complex64>>,
}

impl TotalDegreeStart {
    pub fn new(target: &LaurentSystem, seed: Seed) -> Result<Self, SolveError> {
        if !target.is_square() {
            return Err(SolveError::NotSquare {
                rows: target.len(),
                cols: target.nvars(),
            });
        }
        if target.has_negative_exponent() {
            return Err(SolveError::LaurentUnsupported);
        }
        let n = target.nvars();
        let degrees: Vec<i64> = target
            .polys()
            .iter()
            .map(|p| p.total_degree().max(1))
            .collect();
        let mut rng = seed.derive("total-degree-constants", 0).rng();
        let constants: Vec<Complex64> = (0..=n).map(|_| unit_scaled(&mut rng)).collect();
        let b0 = constants[0];
        let mut polys = Vec::with_capacity(n);
        for (i, &d) in degrees.iter().enumerate() {
            let mut e = vec![0i64; n];
            e[i] = d;
            let mut p = LaurentPolynomial::monomial(n, Exponent(e), b0);
            p.add_term(Exponent::zero(n), -constants[i + 1]);
            polys.push(p);
        }
        let system = LaurentSystem::new(n, polys);

        // Per-coordinate roots of x^d = b_i/b0, then their cartesian product.
        let roots_per_var: Vec<Vec<Complex64>> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let ratio = constants[i + 1] / b0;
                let r = ratio.norm().powf(1.0 / d as f64);
                let theta = ratio.arg();
                (0..d)
                    .map(|k| {
                        let ang = (theta + 2.0 * std::f64::consts::PI * k as f64) / d as f64;
                        Complex64::new(r * ang.cos(), r * ang.sin())
                    })
                    .collect()
            })
            .collect();
        let mut start_solutions = vec![Vec::new()];
        for roots in &roots_per_var {
            let mut next = Vec::with_capacity(start_solutions.len() * roots.len());
            for partial in &start_solutions {
                for r in roots {
                    let mut s = partial.clone();
                    s.push(*r);
                    next.push(s);
                }
            }
            start_solutions = next;
        }
        Ok(TotalDegreeStart {
            degrees,
            constants,
            system,
            start_solutions,
        })
    }
}

/// Distinct finite solutions recovered by a solver run.
#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub solutions: Vec<Vec<Complex64>>,
    pub paths_tracked: usize,
    pub path_results: Vec<PathResult>,
}

/// Sorts solution vectors lexicographically by (re, im) coordinates so solver
/// output is deterministic.
pub fn sort_solutions(mut sols: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    sols.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x
                .re
                .partial_cmp(&y.re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
            {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    });
    sols
}

/// Symmetric Hausdorff distance between two solution sets: the largest
/// distance from any point of one set to its nearest point in the other.
pub fn solution_set_distance(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one_way = |from: &[Vec<Complex64>], to: &[Vec<Complex64>]| {
        from.iter()
            .map(|p| {
                to.iter()
                    .map(|q| crate::algebra::vec_dist(p, q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Deduplicates Success endpoints into distinct solutions with residual at
/// most `residual_tol` against `target`.
pub fn distinct_solutions(
    target: &LaurentSystem,
    results: &[PathResult],
    clusters: &[crate::tracker::EndpointCluster],
    residual_tol: f64,
) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    for cl in clusters {
        let rep = &results[cl.indices[0]];
        if target.scaled_residual(&rep.endpoint) <= residual_tol {
            out.push(rep.endpoint.clone());
        }
    }
    sort_solutions(out)
}

/// Solves a square polynomial system by the total-degree homotopy
/// t·G + (1−t)·F, tracking all d₁···d_n start solutions.
pub fn total_degree_solve(
    target: &LaurentSystem,
    opts: &TrackerOptions,
    seed: Seed,
) -> Result<SolveOutput, SolveError> {
    let mut attempt_seed = seed;
    let mut best: Option<SolveOutput> = None;
    for round in 0..3 {
        let start = TotalDegreeStart::new(target, attempt_seed)?;
        let paths = start.start_solutions.len();
        let h = LinearBlend::plain(start.system.clone(), target.clone());
        let (results, clusters) = track_all(&h, &start.start_solutions, opts);
        // A stall in the interior of [0,1] points at a bad constant draw;
        // failures near t=0 are endpoint geometry (divergent or singular
        // solutions) that no re-roll can repair.
        let suspicious = results
            .iter()
            .filter(|r| r.status == PathStatus::StepSizeCollapse && r.t_reached > 1e-3)
            .count();
        let solutions = distinct_solutions(target, &results, &clusters, opts.residual_tolerance);
        let output = SolveOutput {
            solutions,
            paths_tracked: paths,
            path_results: results,
        };
        if suspicious == 0 {
            return Ok(output);
        }
        log::warn!(
            "total-degree solve: {suspicious} paths collapsed; resampling start constants (round {round})"
        );
        if best
            .as_ref()
            .map_or(true, |b| b.solutions.len() < output.solutions.len())
        {
            best = Some(output);
        }
        attempt_seed = attempt_seed.derive("total-degree-reroll", round as u64 + 1);
    }
    Ok(best.expect("at least one attempt ran"))
}

/// Replaces an overdetermined system F (m > n) by the square system
/// G = M·F with M a seeded random complex Gaussian n×m matrix.
pub fn square_up(
    f: &LaurentSystem,
    seed: Seed,
) -> Result<(LaurentSystem, CMatrix), SolveError> {
    let (m, n) = (f.len(), f.nvars());
    if m <= n {
        return Err(SolveError::AlreadySquare);
    }
    let mut rng = seed.derive("square-up", 0).rng();
    let mut mat = CMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            mat[(i, j)] = complex_normal(&mut rng);
        }
    }
    let g = combine_rows(f, &mat);
    Ok((g, mat))
}

/// Forms the system whose i-th polynomial is Σ_j M[i][j]·f_j.
pub fn combine_rows(f: &LaurentSystem, m: &CMatrix) -> LaurentSystem {
    assert_eq!(m.cols(), f.len());
    let mut polys = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut p = LaurentPolynomial::zero(f.nvars());
        for (j, fj) in f.polys().iter().enumerate() {
            let c = m[(i, j)];
            if c.re != 0.0 || c.im != 0.0 {
                p = p.add(&fj.scale(c));
            }
        }
        polys.push(p);
    }
    LaurentSystem::new(f.nvars(), polys)
}

/// Options for the least-squares Newton filter.
#[derive(Debug, Clone)]
pub struct GaussNewtonOptions {
    pub residual_tolerance: f64,
    pub max_iters: usize,
    /// Largest admissible first step relative to 1+‖x‖; candidates needing a
    /// bigger jump never came from a convergent basin.
    pub first_step_fraction: f64,
}

impl Default for GaussNewtonOptions {
    fn default() -> Self {
        GaussNewtonOptions {
            residual_tolerance: 1e-8,
            max_iters: 8,
            first_step_fraction: 1e-3,
        }
    }
}

/// One retained candidate: the refined point and its residual.
#[derive(Debug, Clone)]
pub struct RetainedPoint {
    pub index: usize,
    pub point: Vec<Complex64>,
    pub residual: f64,
}

/// Least-squares Newton on an overdetermined (or square) system from each
/// candidate; keeps those that contract quadratically onto a zero.
pub fn gauss_newton_filter(
    f: &LaurentSystem,
    candidates: &[Vec<Complex64>],
    opts: &GaussNewtonOptions,
) -> Vec<RetainedPoint> {
    let jac = SystemJacobian::new(f.clone());
    let mut retained = Vec::new();
    'cand: for (index, cand) in candidates.iter().enumerate() {
        let mut x = cand.clone();
        let scale = 1.0 + vec_norm(&x);
        let mut prev_step: Option<f64> = None;
        for _ in 0..opts.max_iters {
            let (value, rows) = match jac.eval(&x) {
                Ok(v) => v,
                Err(_) => continue 'cand,
            };
            let j = CMatrix::from_rows(&rows);
            let step = match least_squares_solve(&j, &value) {
                Ok(s) => s,
                Err(_) => continue 'cand,
            };
            let step_norm = vec_norm(&step);
            match prev_step {
                None => {
                    if step_norm > opts.first_step_fraction * scale {
                        continue 'cand;
                    }
                }
                Some(p) => {
                    // Quadratic contraction, allowing for the floating floor.
                    if step_norm > 0.5 * p && step_norm > 1e-14 * scale {
                        continue 'cand;
                    }
                }
            }
            for (xi, si) in x.iter_mut().zip(step.iter()) {
                *xi -= si;
            }
            prev_step = Some(step_norm);
            if step_norm <= 1e-12 * scale {
                break;
            }
        }
        let residual = f.scaled_residual(&x);
        if residual <= opts.residual_tolerance {
            retained.push(RetainedPoint {
                index,
                point: x,
                residual,
            });
        }
    }
    retained
}

/// A polynomial family F(x; p): a system over variables-then-parameters with
/// cached symbolic partials in both groups.
#[derive(Debug, Clone)]
pub struct ParametricFamily {
    template: Arc<SystemJacobian>,
    nvars: usize,
    nparams: usize,
}

impl ParametricFamily {
    /// `template` has `nvars + nparams` variables, the parameters last.
    pub fn new(template: LaurentSystem, nvars: usize) -> Self {
        assert!(template.nvars() >= nvars);
        let nparams = template.nvars() - nvars;
        ParametricFamily {
            template: Arc::new(SystemJacobian::new(template)),
            nvars,
            nparams,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn len(&self) -> usize {
        self.template.system().len()
    }

    pub fn is_empty(&self) -> bool {
        self.template.system().is_empty()
    }

    pub fn template(&self) -> &LaurentSystem {
        self.template.system()
    }

    /// Max total degree of any parameter variable across the template; 1
    /// means evaluation at fixed x is affine-linear in p.
    pub fn parameter_degree(&self) -> i64 {
        self.template
            .system()
            .polys()
            .iter()
            .flat_map(|p| p.support())
            .map(|e| e.0[self.nvars..].iter().map(|&k| k.max(0)).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Substitutes concrete parameter values, yielding a plain system in x.
    pub fn at(&self, params: &[Complex64]) -> Result<LaurentSystem, AlgebraError> {
        assert_eq!(params.len(), self.nparams);
        let mut binding = vec![None; self.nvars + self.nparams];
        for (k, p) in params.iter().enumerate() {
            binding[self.nvars + k] = Some(*p);
        }
        let polys = self
            .template
            .system()
            .polys()
            .iter()
            .map(|p| p.substitute(&binding))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentSystem::new(self.nvars, polys))
    }

    fn joined(&self, x: &[Complex64], p: &[Complex64]) -> Vec<Complex64> {
        let mut z = Vec::with_capacity(self.nvars + self.nparams);
        z.extend_from_slice(x);
        z.extend_from_slice(p);
        z
    }

    /// F(x; p).
    pub fn eval(&self, x: &[Complex64], p: &[Complex64]) -> Result<Vec<Complex64>, AlgebraError> {
        self.template.system().eval(&self.joined(x, p))
    }

    /// Jacobian in the x-variables only (rows = polynomials).
    pub fn jacobian_x(&self, x: &[Complex64], p: &[Complex64]) -> Result<CMatrix, AlgebraError> {
        let z = self.joined(x, p);
        let m = self.len();
        let mut out = CMatrix::zeros(m, self.nvars);
        for (i, row) in self.template.partials().iter().enumerate() {
            for j in 0..self.nvars {
                out[(i, j)] = row[j].eval(&z)?;
            }
        }
        Ok(out)
    }

    /// Jacobian in the parameters (rows = polynomials, cols = parameters).
    pub fn jacobian_p(&self, x: &[Complex64], p: &[Complex64]) -> Result<CMatrix, AlgebraError> {
        let z = self.joined(x, p);
        let m = self.len();
        let mut out = CMatrix::zeros(m, self.nparams);
        for (i, row) in self.template.partials().iter().enumerate() {
            for k in 0..self.nparams {
                out[(i, k)] = row[self.nvars + k].eval(&z)?;
            }
        }
        Ok(out)
    }
}

/// Homotopy along one straight parameter segment: H(x,t) = F(x; p(t)) with
/// p(t) = p_end + t·(p_start − p_end), so t=1 sits at `p_start`. The family
/// is specialized once into polynomials in (x, τ) at construction time.
pub struct ParameterPath {
    specialized: crate::tracker::PolyInT,
}

impl ParameterPath {
    pub fn new(family: ParametricFamily, p_start: Vec<Complex64>, p_end: Vec<Complex64>) -> Self {
        assert_eq!(family.nparams(), p_start.len());
        assert_eq!(family.nparams(), p_end.len());
        assert_eq!(
            family.len(),
            family.nvars(),
            "parameter tracking needs a square family"
        );
        let n = family.nvars();
        let dir: Vec<Complex64> = p_start
            .iter()
            .zip(p_end.iter())
            .map(|(a, b)| a - b)
            .collect();
        let polys: Vec<LaurentPolynomial> = family
            .template()
            .polys()
            .iter()
            .map(|p| p.substitute_affine_tau(n, &p_end, &dir))
            .collect();
        let system = LaurentSystem::new(n + 1, polys);
        ParameterPath {
            specialized: crate::tracker::PolyInT::new(system, 0.0, 1.0),
        }
    }
}

impl Homotopy for ParameterPath {
    fn nvars(&self) -> usize {
        self.specialized.nvars()
    }

    fn eval(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError> {
        self.specialized.eval(x, t)
    }

    fn jacobian_x(&self, x: &[Complex64], t: f64) -> Result<CMatrix, AlgebraError> {
        self.specialized.jacobian_x(x, t)
    }

    fn dt(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError> {
        self.specialized.dt(x, t)
    }

    fn eval_abs(&self, x: &[Complex64], t: f64) -> f64 {
        self.specialized.eval_abs(x, t)
    }

    fn eval_and_jacobian(
        &self,
        x: &[Complex64],
        t: f64,
    ) -> Result<(Vec<Complex64>, CMatrix), AlgebraError> {
        self.specialized.eval_and_jacobian(x, t)
    }
}

/// Tracks known solutions at `p_start` to `p_target` through one random
/// complex intermediate parameter point, which keeps the path off the real
/// branch locus with probability one.
pub fn parameter_solve(
    family: &ParametricFamily,
    p_start: &[Complex64],
    solutions_at_start: &[Vec<Complex64>],
    p_target: &[Complex64],
    opts: &TrackerOptions,
    seed: Seed,
) -> Result<SolveOutput, SolveError> {
    let mut rng = seed.derive("parameter-detour", 0).rng();
    let detour: Vec<Complex64> = p_start
        .iter()
        .zip(p_target.iter())
        .map(|(a, b)| 0.5 * (a + b) + complex_normal(&mut rng) * 0.5 * ((a - b).norm() + 1.0))
        .collect();

    let leg1 = ParameterPath::new(family.clone(), p_start.to_vec(), detour.clone());
    let (mid_results, _) = track_all(&leg1, solutions_at_start, opts);
    let mid_points: Vec<Vec<Complex64>> = mid_results
        .iter()
        .filter(|r| r.is_success())
        .map(|r| r.endpoint.clone())
        .collect();

    let leg2 = ParameterPath::new(family.clone(), detour, p_target.to_vec());
    let (results, clusters) = track_all(&leg2, &mid_points, opts);
    let target_system = family.at(p_target)?;
    let solutions = distinct_solutions(&target_system, &results, &clusters, opts.residual_tolerance);
    Ok(SolveOutput {
        solutions,
        paths_tracked: solutions_at_start.len(),
        path_results: results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_system, system_from_lines};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle_cubic() -> LaurentSystem {
        system_from_lines(&["x", "y"], &["x^2 + y^2 - 1", "x^2 - y^3 - y - 1"])
    }

    #[test]
    fn bezout_of_circle_cubic_is_six() {
        assert_eq!(bezout_number(&circle_cubic()).unwrap(), 6);
    }

    #[test]
    fn bezout_of_one_linear_equation_is_one() {
        let f = system_from_lines(&["x"], &["3x - 5"]);
        assert_eq!(bezout_number(&f).unwrap(), 1);
    }

    #[test]
    fn bezout_rejects_laurent_input() {
        let f = system_from_lines(&["x"], &["x^-1 - 2"]);
        assert!(matches!(
            bezout_number(&f),
            Err(SolveError::LaurentUnsupported)
        ));
    }

    #[test]
    fn start_system_solutions_are_regular_zeros() {
        let start = TotalDegreeStart::new(&circle_cubic(), Seed(3)).unwrap();
        assert_eq!(start.start_solutions.len(), 6);
        for s in &start.start_solutions {
            assert!(start.system.residual(s) < 1e-10);
        }
    }

    #[test]
    fn quadratic_solves_to_plus_minus_one() {
        let f = system_from_lines(&["x"], &["x^2 - 1"]);
        let out = total_degree_solve(&f, &TrackerOptions::default(), Seed(11)).unwrap();
        assert_eq!(out.solutions.len(), 2);
        let mut roots: Vec<f64> = out.solutions.iter().map(|s| s[0].re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0).abs() < 1e-9);
        assert!((roots[1] - 1.0).abs() < 1e-9);
        assert!(out.solutions.iter().all(|s| s[0].im.abs() < 1e-9));
    }

    #[test]
    fn circle_cubic_has_six_solutions() {
        let f = circle_cubic();
        let out = total_degree_solve(&f, &TrackerOptions::default(), Seed(20)).unwrap();
        assert_eq!(out.paths_tracked, 6);
        assert_eq!(out.solutions.len(), 6);
        for s in &out.solutions {
            assert!(f.residual(s) < 1e-8);
        }
    }

    #[test]
    fn square_up_rejects_square_input() {
        let f = system_from_lines(&["x"], &["x - 1"]);
        assert!(matches!(square_up(&f, Seed(0)), Err(SolveError::AlreadySquare)));
    }

    #[test]
    fn square_up_keeps_shared_zero() {
        let f = system_from_lines(&["x"], &["x - 1", "2x - 2", "3x - 3"]);
        let (g, m) = square_up(&f, Seed(9)).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(m.rows(), 1);
        assert_eq!(m.cols(), 3);
        assert!(g.residual(&[c(1.0, 0.0)]) < 1e-12);
    }

    #[test]
    fn gauss_newton_retains_exact_zero_with_zero_steps() {
        let f = system_from_lines(&["x"], &["x - 1", "2x - 2"]);
        let kept = gauss_newton_filter(&f, &[vec![c(1.0, 0.0)]], &GaussNewtonOptions::default());
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].point, vec![c(1.0, 0.0)]);
    }

    #[test]
    fn gauss_newton_rejects_far_candidate() {
        let f = system_from_lines(&["x"], &["x - 1", "2x - 2"]);
        let kept = gauss_newton_filter(&f, &[vec![c(5.0, 0.0)]], &GaussNewtonOptions::default());
        assert!(kept.is_empty());
    }

    #[test]
    fn parameter_family_substitution_and_linearity() {
        let file = parse_system("variables: x\nparameters: p\nx^2 - p\n").unwrap();
        let fam = ParametricFamily::new(file.system, 1);
        assert_eq!(fam.parameter_degree(), 1);
        let at4 = fam.at(&[c(4.0, 0.0)]).unwrap();
        assert!(at4.residual(&[c(2.0, 0.0)]) < 1e-12);
    }

    #[test]
    fn parameter_path_from_one_to_four() {
        let file = parse_system("variables: x\nparameters: p\nx^2 - p\n").unwrap();
        let fam = ParametricFamily::new(file.system, 1);
        let out = parameter_solve(
            &fam,
            &[c(1.0, 0.0)],
            &[vec![c(1.0, 0.0)], vec![c(-1.0, 0.0)]],
            &[c(4.0, 0.0)],
            &TrackerOptions::default(),
            Seed(2),
        )
        .unwrap();
        assert_eq!(out.solutions.len(), 2);
        let mut roots: Vec<f64> = out.solutions.iter().map(|s| s[0].re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 2.0).abs() < 1e-8);
        assert!((roots[1] - 2.0).abs() < 1e-8);
    }

    #[test]
    fn parameter_path_through_branch_point_takes_complex_detour() {
        // x² = p from p=1 to p=−1 passes through p=0 on the straight segment;
        // the detour must deliver {±i} anyway.
        let file = parse_system("variables: x\nparameters: p\nx^2 - p\n").unwrap();
        let fam = ParametricFamily::new(file.system, 1);
        for seed in 0..10u64 {
            let out = parameter_solve(
                &fam,
                &[c(1.0, 0.0)],
                &[vec![c(1.0, 0.0)], vec![c(-1.0, 0.0)]],
                &[c(-1.0, 0.0)],
                &TrackerOptions::default(),
                Seed(seed),
            )
            .unwrap();
            assert_eq!(out.solutions.len(), 2, "seed {seed}");
            let mut ims: Vec<f64> = out.solutions.iter().map(|s| s[0].im).collect();
            ims.sort_by(f64::total_cmp);
            assert!((ims[0] + 1.0).abs() < 1e-8);
            assert!((ims[1] - 1.0).abs() < 1e-8);
            assert!(out.solutions.iter().all(|s| s[0].re.abs() < 1e-8));
        }
    }
}
