//! Predictor-corrector continuation of solution paths x(t) of a homotopy
//! H(x,t)=0 from t=1 to t=0: Euler prediction, Newton correction, adaptive
//! multiplicative step control, and order-stable parallel tracking.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{
    vec_dist, vec_norm, CMatrix, LaurentSystem, LuFactors, SystemJacobian,
    DEFAULT_PIVOT_THRESHOLD,
};
use crate::error::AlgebraError;

/// An evaluatable family H(x,t) with partials ∂H/∂x and ∂H/∂t. Output
/// dimension equals `nvars` (square by construction).
pub trait Homotopy: Sync {
    fn nvars(&self) -> usize;
    fn eval(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError>;
    fn jacobian_x(&self, x: &[Complex64], t: f64) -> Result<CMatrix, AlgebraError>;
    fn dt(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError>;
    /// Attainable evaluation magnitude at (x, t); the backward-error scale
    /// for residual tests. At least 1.
    fn eval_abs(&self, x: &[Complex64], t: f64) -> f64;

    /// Value and x-Jacobian together; implementations sharing work between
    /// the two should override this.
    fn eval_and_jacobian(
        &self,
        x: &[Complex64],
        t: f64,
    ) -> Result<(Vec<Complex64>, CMatrix), AlgebraError> {
        Ok((self.eval(x, t)?, self.jacobian_x(x, t)?))
    }
}

/// Straight-line blend H(x,t) = t·γ·G(x) + (1−t)·F(x) between a start system
/// G at t=1 and a target F at t=0. γ=1 gives the plain pencil; a random
/// complex γ implements the generic-detour construction.
pub struct LinearBlend {
    start: SystemJacobian,
    target: SystemJacobian,
    gamma: Complex64,
}

impl LinearBlend {
    pub fn new(start: LaurentSystem, target: LaurentSystem, gamma: Complex64) -> Self {
        assert_eq!(start.nvars(), target.nvars());
        assert_eq!(start.len(), target.len());
        assert!(start.is_square(), "homotopies must be square");
        LinearBlend {
            start: SystemJacobian::new(start),
            target: SystemJacobian::new(target),
            gamma,
        }
    }

    pub fn plain(start: LaurentSystem, target: LaurentSystem) -> Self {
        Self::new(start, target, Complex64::new(1.0, 0.0))
    }
}

impl Homotopy for LinearBlend {
    fn nvars(&self) -> usize {
        self.start.system().nvars()
    }

    fn eval(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError> {
        let g = self.start.system().eval(x)?;
        let f = self.target.system().eval(x)?;
        let tg = self.gamma * t;
        Ok(g.iter()
            .zip(f.iter())
            .map(|(gi, fi)| tg * gi + (1.0 - t) * fi)
            .collect())
    }

    fn jacobian_x(&self, x: &[Complex64], t: f64) -> Result<CMatrix, AlgebraError> {
        let (_, jg) = self.start.eval(x)?;
        let (_, jf) = self.target.eval(x)?;
        let n = self.nvars();
        let mut m = CMatrix::zeros(n, n);
        let tg = self.gamma * t;
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = tg * jg[i][j] + (1.0 - t) * jf[i][j];
            }
        }
        Ok(m)
    }

    fn dt(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError> {
        let _ = t;
        let g = self.start.system().eval(x)?;
        let f = self.target.system().eval(x)?;
        Ok(g.iter()
            .zip(f.iter())
            .map(|(gi, fi)| self.gamma * gi - fi)
            .collect())
    }

    fn eval_abs(&self, x: &[Complex64], t: f64) -> f64 {
        let ga = self.gamma.norm() * t.abs();
        let fa = (1.0 - t).abs();
        self.start
            .system()
            .polys()
            .iter()
            .zip(self.target.system().polys().iter())
            .map(|(g, f)| ga * g.eval_abs(x) + fa * f.eval_abs(x))
            .fold(1.0f64, f64::max)
    }

    fn eval_and_jacobian(
        &self,
        x: &[Complex64],
        t: f64,
    ) -> Result<(Vec<Complex64>, CMatrix), AlgebraError> {
        let (gv, gj) = self.start.eval(x)?;
        let (fv, fj) = self.target.eval(x)?;
        let tg = self.gamma * t;
        let n = self.nvars();
        let mut m = CMatrix::zeros(n, n);
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(tg * gv[i] + (1.0 - t) * fv[i]);
            for j in 0..n {
                m[(i, j)] = tg * gj[i][j] + (1.0 - t) * fj[i][j];
            }
        }
        Ok((v, m))
    }
}

/// A square Laurent system in n+1 variables, the last being an internal
/// parameter τ related to the tracker time by τ = origin + slope·t.
///
/// Covers homotopies whose parameter enters polynomially, e.g. per-cell
/// reparameterized systems where τ runs 0 → 1 while t runs 1 → 0.
pub struct PolyInT {
    jac: SystemJacobian,
    tau_partials: Vec<crate::algebra::LaurentPolynomial>,
    origin: f64,
    slope: f64,
}

impl PolyInT {
    /// `system` has nvars+1 variables with τ last; τ = origin + slope·t.
    pub fn new(system: LaurentSystem, origin: f64, slope: f64) -> Self {
        assert_eq!(system.len() + 1, system.nvars());
        let tau = system.nvars() - 1;
        let tau_partials = system.polys().iter().map(|p| p.differentiate(tau)).collect();
        PolyInT {
            jac: SystemJacobian::new(system),
            tau_partials,
            origin,
            slope,
        }
    }

    fn point(&self, x: &[Complex64], t: f64) -> Vec<Complex64> {
        let mut z = x.to_vec();
        z.push(Complex64::new(self.origin + self.slope * t, 0.0));
        z
    }
}

impl Homotopy for PolyInT {
    fn nvars(&self) -> usize {
        self.jac.system().nvars() - 1
    }

    fn eval(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError> {
        self.jac.system().eval(&self.point(x, t))
    }

    fn jacobian_x(&self, x: &[Complex64], t: f64) -> Result<CMatrix, AlgebraError> {
        let z = self.point(x, t);
        let n = self.nvars();
        let mut m = CMatrix::zeros(n, n);
        for (i, row) in self.jac.partials().iter().enumerate() {
            for j in 0..n {
                m[(i, j)] = row[j].eval(&z)?;
            }
        }
        Ok(m)
    }

    fn dt(&self, x: &[Complex64], t: f64) -> Result<Vec<Complex64>, AlgebraError> {
        let z = self.point(x, t);
        self.tau_partials
            .iter()
            .map(|p| p.eval(&z).map(|v| v * self.slope))
            .collect()
    }

    fn eval_abs(&self, x: &[Complex64], t: f64) -> f64 {
        let z = self.point(x, t);
        self.jac
            .system()
            .polys()
            .iter()
            .map(|p| p.eval_abs(&z))
            .fold(1.0f64, f64::max)
    }

    fn eval_and_jacobian(
        &self,
        x: &[Complex64],
        t: f64,
    ) -> Result<(Vec<Complex64>, CMatrix), AlgebraError> {
        let z = self.point(x, t);
        let (values, rows) = self.jac.eval(&z)?;
        let n = self.nvars();
        let mut m = CMatrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                m[(i, j)] = row[j];
            }
        }
        Ok((values, m))
    }
}

/// Restriction of a homotopy to a sub-interval: tracker time s ∈ [1,0] maps
/// to inner time t = t_end + s·(t_start − t_end).
pub struct Subpath<'a, H: Homotopy + ?Sized> {
    pub inner: &'a H,
    pub t_start: f64,
    pub t_end: f64,
}

impl<'a, H: Homotopy + ?Sized> Subpath<'a, H> {
    fn map(&self, s: f64) -> f64 {
        self.t_end + s * (self.t_start - self.t_end)
    }
}

impl<'a, H: Homotopy + ?Sized> Homotopy for Subpath<'a, H> {
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    fn eval(&self, x: &[Complex64], s: f64) -> Result<Vec<Complex64>, AlgebraError> {
        self.inner.eval(x, self.map(s))
    }

    fn jacobian_x(&self, x: &[Complex64], s: f64) -> Result<CMatrix, AlgebraError> {
        self.inner.jacobian_x(x, self.map(s))
    }

    fn dt(&self, x: &[Complex64], s: f64) -> Result<Vec<Complex64>, AlgebraError> {
        let scale = self.t_start - self.t_end;
        Ok(self
            .inner
            .dt(x, self.map(s))?
            .into_iter()
            .map(|v| v * scale)
            .collect())
    }

    fn eval_abs(&self, x: &[Complex64], s: f64) -> f64 {
        self.inner.eval_abs(x, self.map(s))
    }

    fn eval_and_jacobian(
        &self,
        x: &[Complex64],
        s: f64,
    ) -> Result<(Vec<Complex64>, CMatrix), AlgebraError> {
        self.inner.eval_and_jacobian(x, self.map(s))
    }
}

/// Tracking tolerances and step-control constants.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackerOptions {
    pub corrector_tolerance: f64,
    pub max_corrector_iters: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub step_growth: f64,
    pub divergence_norm: f64,
    pub t_end_epsilon: f64,
    /// Residual bound a Success endpoint must satisfy after polish.
    pub residual_tolerance: f64,
}

impl Default for TrackerOptions {
    fn default() -> Self {
        TrackerOptions {
            corrector_tolerance: 1e-10,
            max_corrector_iters: 3,
            initial_step: 0.05,
            min_step: 1e-14,
            step_growth: 1.25,
            divergence_norm: 1e14,
            t_end_epsilon: 1e-14,
            residual_tolerance: 1e-8,
        }
    }
}

/// Terminal state of one tracked path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStatus {
    Success,
    Diverged,
    StepSizeCollapse,
    SingularEnd,
}

/// Outcome of tracking one path.
#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub status: PathStatus,
    pub endpoint: Vec<Complex64>,
    pub t_reached: f64,
    /// Backward-error residual at the endpoint (‖H‖ over the attainable
    /// evaluation magnitude).
    pub residual: f64,
    /// Count of clustered duplicates among Success endpoints; filled by
    /// endpoint clustering, 1 when unique.
    pub winding_hint: usize,
    pub steps_taken: usize,
}

impl PathResult {
    pub fn is_success(&self) -> bool {
        self.status == PathStatus::Success
    }
}

/// A square system frozen at a fixed t, so Newton's method applies directly.
pub struct FrozenSystem<'a, H: Homotopy + ?Sized> {
    pub homotopy: &'a H,
    pub t: f64,
}

impl<'a, H: Homotopy + ?Sized> FrozenSystem<'a, H> {
    pub fn eval(&self, x: &[Complex64]) -> Result<Vec<Complex64>, AlgebraError> {
        self.homotopy.eval(x, self.t)
    }

    pub fn jacobian(&self, x: &[Complex64]) -> Result<CMatrix, AlgebraError> {
        self.homotopy.jacobian_x(x, self.t)
    }
}

/// Result of a Newton correction run.
#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub point: Vec<Complex64>,
    pub converged: bool,
    pub last_step_norm: f64,
    pub iterations: usize,
}

/// Newton iteration z ← z − JE(z)⁻¹E(z) until the step norm falls below the
/// corrector tolerance or the iteration budget runs out. Convergence demands
/// observed contraction: each step at most half the previous one.
pub fn newton_correct<H: Homotopy + ?Sized>(
    target: &FrozenSystem<'_, H>,
    x0: &[Complex64],
    opts: &TrackerOptions,
) -> Result<NewtonOutcome, AlgebraError> {
    let mut x = x0.to_vec();
    let mut prev_step: Option<f64> = None;
    let mut contraction_ok = true;
    for iter in 0..opts.max_corrector_iters {
        let (value, jac) = target.homotopy.eval_and_jacobian(&x, target.t)?;
        let lu = LuFactors::new(&jac, DEFAULT_PIVOT_THRESHOLD)?;
        let step = lu.solve(&value);
        let step_norm = vec_norm(&step);
        for (xi, si) in x.iter_mut().zip(step.iter()) {
            *xi -= si;
        }
        if let Some(p) = prev_step {
            if step_norm > 0.5 * p {
                contraction_ok = false;
            }
        }
        prev_step = Some(step_norm);
        if step_norm <= opts.corrector_tolerance {
            return Ok(NewtonOutcome {
                point: x,
                converged: contraction_ok,
                last_step_norm: step_norm,
                iterations: iter + 1,
            });
        }
    }
    Ok(NewtonOutcome {
        point: x,
        converged: false,
        last_step_norm: prev_step.unwrap_or(f64::INFINITY),
        iterations: opts.max_corrector_iters,
    })
}

/// Euler prediction: x + dt·Δx where (∂H/∂x)Δx + ∂H/∂t = 0.
pub fn euler_predict<H: Homotopy + ?Sized>(
    h: &H,
    x: &[Complex64],
    t: f64,
    dt: f64,
) -> Result<Vec<Complex64>, AlgebraError> {
    let jac = h.jacobian_x(x, t)?;
    let rhs = h.dt(x, t)?;
    let lu = LuFactors::new(&jac, DEFAULT_PIVOT_THRESHOLD)?;
    let minus_dx = lu.solve(&rhs);
    Ok(x.iter()
        .zip(minus_dx.iter())
        .map(|(xi, di)| xi - di * dt)
        .collect())
}

/// Paths reaching this t before the step collapses are treated as endpoint
/// candidates and polished rather than reported as step failures.
const NEAR_END_T: f64 = 1e-6;

/// Tracks one path of H(x,t)=0 from t=1 down to t=0.
pub fn track_path<H: Homotopy + ?Sized>(
    h: &H,
    start: &[Complex64],
    opts: &TrackerOptions,
) -> PathResult {
    let mut x = start.to_vec();
    let mut t = 1.0f64;
    let mut dt = opts.initial_step.min(1.0);
    let mut steps = 0usize;

    loop {
        if vec_norm(&x) >= opts.divergence_norm || x.iter().any(|c| !c.is_finite()) {
            return PathResult {
                status: PathStatus::Diverged,
                endpoint: x,
                t_reached: t,
                residual: f64::INFINITY,
                winding_hint: 0,
                steps_taken: steps,
            };
        }
        if t <= opts.t_end_epsilon {
            return polish_end(h, &x, t, steps, opts);
        }
        if dt < opts.min_step {
            if t <= NEAR_END_T {
                return polish_end(h, &x, t, steps, opts);
            }
            return PathResult {
                status: PathStatus::StepSizeCollapse,
                endpoint: x.clone(),
                t_reached: t,
                residual: residual_at(h, &x, t),
                winding_hint: 0,
                steps_taken: steps,
            };
        }
        let step = dt.min(t);
        let t_next = if step >= t { 0.0 } else { t - step };
        let attempt = euler_predict(h, &x, t, -step).and_then(|pred| {
            let frozen = FrozenSystem { homotopy: h, t: t_next };
            newton_correct(&frozen, &pred, opts)
        });
        steps += 1;
        match attempt {
            Ok(out) if out.converged || out.last_step_norm <= opts.corrector_tolerance => {
                x = out.point;
                t = t_next;
                dt = (dt * opts.step_growth).min(opts.initial_step);
            }
            _ => {
                dt *= 0.5;
            }
        }
    }
}

/// Backward-error residual ‖H(x,t)‖ / scale(x,t).
fn residual_at<H: Homotopy + ?Sized>(h: &H, x: &[Complex64], t: f64) -> f64 {
    match h.eval(x, t) {
        Ok(v) => vec_norm(&v) / h.eval_abs(x, t).max(1.0),
        Err(_) => f64::INFINITY,
    }
}

/// Final Newton polish at t=0; failure to contract is a singular endpoint.
fn polish_end<H: Homotopy + ?Sized>(
    h: &H,
    x: &[Complex64],
    t_reached: f64,
    steps: usize,
    opts: &TrackerOptions,
) -> PathResult {
    let frozen = FrozenSystem { homotopy: h, t: 0.0 };
    let polish_opts = TrackerOptions {
        max_corrector_iters: 6,
        corrector_tolerance: opts.corrector_tolerance.min(1e-11),
        ..opts.clone()
    };
    match newton_correct(&frozen, x, &polish_opts) {
        Ok(out) if out.converged => {
            let residual = residual_at(h, &out.point, 0.0);
            if residual <= opts.residual_tolerance {
                PathResult {
                    status: PathStatus::Success,
                    endpoint: out.point,
                    t_reached: 0.0,
                    residual,
                    winding_hint: 1,
                    steps_taken: steps,
                }
            } else {
                PathResult {
                    status: PathStatus::SingularEnd,
                    endpoint: out.point,
                    t_reached,
                    residual,
                    winding_hint: 0,
                    steps_taken: steps,
                }
            }
        }
        Ok(out) => PathResult {
            status: PathStatus::SingularEnd,
            endpoint: out.point.clone(),
            t_reached,
            residual: residual_at(h, &out.point, 0.0),
            winding_hint: 0,
            steps_taken: steps,
        },
        Err(_) => PathResult {
            status: PathStatus::SingularEnd,
            endpoint: x.to_vec(),
            t_reached,
            residual: residual_at(h, x, 0.0),
            winding_hint: 0,
            steps_taken: steps,
        },
    }
}

/// Relative tolerance at which endpoints are considered the same point.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

/// Groups of path indices whose Success endpoints coincide at the cluster
/// tolerance. `indices` are ascending; the first is the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointCluster {
    pub indices: Vec<usize>,
}

fn same_point(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = vec_norm(a).max(vec_norm(b)).max(1.0);
    vec_dist(a, b) <= tol * scale
}

/// Clusters Success endpoints pairwise at `CLUSTER_TOLERANCE` (relative).
pub fn cluster_endpoints(results: &[PathResult]) -> Vec<EndpointCluster> {
    let succ: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_success())
        .map(|(i, _)| i)
        .collect();
    let mut parent: Vec<usize> = (0..succ.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for a in 0..succ.len() {
        for b in (a + 1)..succ.len() {
            if same_point(
                &results[succ[a]].endpoint,
                &results[succ[b]].endpoint,
                CLUSTER_TOLERANCE,
            ) {
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                if ra != rb {
                    parent[rb.max(ra)] = rb.min(ra);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..succ.len() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(succ[i]);
    }
    groups
        .into_values()
        .map(|indices| EndpointCluster { indices })
        .collect()
}

/// Tracks many starts of the same homotopy. Results are in input order
/// regardless of the execution schedule, and Success endpoints are clustered
/// to flag multiplicity (`winding_hint` = cluster size).
pub fn track_all<H: Homotopy + ?Sized>(
    h: &H,
    starts: &[Vec<Complex64>],
    opts: &TrackerOptions,
) -> (Vec<PathResult>, Vec<EndpointCluster>) {
    let mut results: Vec<PathResult> = starts
        .par_iter()
        .map(|s| track_path(h, s, opts))
        .collect();
    let clusters = cluster_endpoints(&results);
    for cl in &clusters {
        for &i in &cl.indices {
            results[i].winding_hint = cl.indices.len();
        }
    }
    (results, clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::system_from_lines;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn opts() -> TrackerOptions {
        TrackerOptions::default()
    }

    #[test]
    fn newton_map_of_square_root() {
        // x²−1 from 1.1: one iterate is (x + 1/x)/2 = 1.00454545...
        let sys = system_from_lines(&["x"], &["x^2 - 1"]);
        let h = LinearBlend::plain(sys.clone(), sys);
        let frozen = FrozenSystem { homotopy: &h, t: 0.0 };
        let one_iter = TrackerOptions {
            max_corrector_iters: 1,
            corrector_tolerance: 1e-30,
            ..opts()
        };
        let out = newton_correct(&frozen, &[c(1.1, 0.0)], &one_iter).unwrap();
        let expected = (1.1 + 1.0 / 1.1) / 2.0;
        assert!((out.point[0] - c(expected, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn newton_fixed_point_at_exact_zero() {
        let sys = system_from_lines(&["x"], &["x^2 - 1"]);
        let h = LinearBlend::plain(sys.clone(), sys);
        let frozen = FrozenSystem { homotopy: &h, t: 0.0 };
        let out = newton_correct(&frozen, &[c(1.0, 0.0)], &opts()).unwrap();
        assert!(out.converged);
        assert_eq!(out.last_step_norm, 0.0);
        assert_eq!(out.point, vec![c(1.0, 0.0)]);
    }

    #[test]
    fn newton_converges_to_complex_zero_of_circle_cubic() {
        let sys = system_from_lines(&["x", "y"], &["x^2 + y^2 - 1", "x^2 - y^3 - y - 1"]);
        let h = LinearBlend::plain(sys.clone(), sys.clone());
        let frozen = FrozenSystem { homotopy: &h, t: 0.0 };
        let many = TrackerOptions {
            max_corrector_iters: 10,
            corrector_tolerance: 1e-13,
            ..opts()
        };
        let out = newton_correct(&frozen, &[c(1.271, 0.341), c(-0.5, 0.866)], &many).unwrap();
        assert!(out.converged);
        assert!(sys.residual(&out.point) < 1e-12);
    }

    #[test]
    fn euler_on_linear_path_is_exact() {
        // H = t(x−2) + (1−t)(x−1); path x(t) = 1+t; predict from (2,1) with dt=−1.
        let g = system_from_lines(&["x"], &["x - 2"]);
        let f = system_from_lines(&["x"], &["x - 1"]);
        let h = LinearBlend::plain(g, f);
        let p = euler_predict(&h, &[c(2.0, 0.0)], 1.0, -1.0).unwrap();
        assert!((p[0] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn euler_slope_on_parabolic_path() {
        // H(x,t) = x²−t: dx/dt = 1/(2x); from (1,1), dt=−0.5 → 0.75.
        let sys = system_from_lines(&["x", "tau"], &["x^2 - tau"]);
        let h = PolyInT::new(sys, 0.0, 1.0);
        let p = euler_predict(&h, &[c(1.0, 0.0)], 1.0, -0.5).unwrap();
        assert!((p[0] - c(0.75, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn linear_homotopy_tracks_to_target() {
        let g = system_from_lines(&["x"], &["x - 2"]);
        let f = system_from_lines(&["x"], &["x - 1"]);
        let h = LinearBlend::plain(g, f);
        let r = track_path(&h, &[c(2.0, 0.0)], &opts());
        assert_eq!(r.status, PathStatus::Success);
        assert!((r.endpoint[0] - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn path_to_infinity_diverges() {
        // H(x,t) = t·x − (1−t): x(t) = (1−t)/t → ∞.
        let sys = system_from_lines(&["x", "tau"], &["tau*x - 1 + tau"]);
        let h = PolyInT::new(sys, 0.0, 1.0);
        let r = track_path(&h, &[c(0.0, 0.0)], &opts());
        assert_eq!(r.status, PathStatus::Diverged);
    }

    #[test]
    fn duplicate_starts_cluster_together() {
        let g = system_from_lines(&["x"], &["x - 2"]);
        let f = system_from_lines(&["x"], &["x - 1"]);
        let h = LinearBlend::plain(g, f);
        let starts = vec![vec![c(2.0, 0.0)], vec![c(2.0, 0.0)]];
        let (results, clusters) = track_all(&h, &starts, &opts());
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].indices, vec![0, 1]);
        assert_eq!(results[0].winding_hint, 2);
    }

    #[test]
    fn accepted_t_values_strictly_decrease_and_endpoint_residual_small() {
        let g = system_from_lines(&["x"], &["x^2 - 4"]);
        let f = system_from_lines(&["x"], &["x^2 - 9"]);
        let h = LinearBlend::plain(g, f);
        let r = track_path(&h, &[c(2.0, 0.0)], &opts());
        assert_eq!(r.status, PathStatus::Success);
        assert!(r.residual <= 1e-8);
        assert!((r.endpoint[0] - c(3.0, 0.0)).norm() < 1e-9);
    }
}
