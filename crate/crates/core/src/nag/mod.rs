//! Witness sets and the operations on them: slice moves, membership,
//! witness supersets, equidimensional filtering, monodromy orbits, the trace
//! test, the dimension-cascade irreducible decomposition, equation-by-equation
//! regeneration, and parameter-space monodromy solving.

use num_complex::Complex64;

use crate::algebra::{vec_dist, vec_norm, CMatrix, Exponent, LaurentPolynomial, LaurentSystem};
use crate::error::{NagError, SolveError};
use crate::rng::{complex_normal, Seed};
use crate::solve::{
    combine_rows, gauss_newton_filter, sort_solutions, total_degree_solve, GaussNewtonOptions,
    ParameterPath, ParametricFamily,
};
use crate::tracker::{track_all, LinearBlend, Subpath, TrackerOptions};

/// A generic affine-linear slice: `codim` independent degree-one forms.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSlice {
    nvars: usize,
    forms: Vec<LaurentPolynomial>,
}

impl AffineSlice {
    pub fn from_forms(nvars: usize, forms: Vec<LaurentPolynomial>) -> Self {
        assert!(forms.iter().all(|f| f.nvars() == nvars && f.total_degree() <= 1));
        AffineSlice { nvars, forms }
    }

    /// Seeded random complex slice of the given codimension.
    pub fn random(nvars: usize, codim: usize, seed: Seed) -> Self {
        let mut rng = seed.rng();
        let forms = (0..codim)
            .map(|_| {
                let mut p = LaurentPolynomial::constant(nvars, complex_normal(&mut rng));
                for v in 0..nvars {
                    p.add_term(Exponent::unit(nvars, v), complex_normal(&mut rng));
                }
                p
            })
            .collect();
        AffineSlice { nvars, forms }
    }

    /// Random slice passing through the given point: forms a·(x − x₀).
    pub fn random_through(nvars: usize, codim: usize, point: &[Complex64], seed: Seed) -> Self {
        let mut rng = seed.rng();
        let forms = (0..codim)
            .map(|_| {
                let coeffs: Vec<Complex64> = (0..nvars).map(|_| complex_normal(&mut rng)).collect();
                let constant: Complex64 =
                    -coeffs.iter().zip(point.iter()).map(|(a, x)| a * x).sum::<Complex64>();
                let mut p = LaurentPolynomial::constant(nvars, constant);
                for (v, a) in coeffs.iter().enumerate() {
                    p.add_term(Exponent::unit(nvars, v), *a);
                }
                p
            })
            .collect();
        AffineSlice { nvars, forms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn codim(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[LaurentPolynomial] {
        &self.forms
    }

    /// A parallel translate: the last form's constant term shifted by δ.
    /// Traces along the induced pencil are affine in the pencil parameter.
    pub fn translate_last(&self, delta: Complex64) -> AffineSlice {
        let mut forms = self.forms.clone();
        let last = forms.last_mut().expect("translate needs a form");
        let mut shifted = last.clone();
        shifted.add_term(Exponent::zero(self.nvars), delta);
        *last = shifted;
        AffineSlice {
            nvars: self.nvars,
            forms,
        }
    }

    /// Replaces the last form with t·(last) + (1−t)·other evaluated at the
    /// given complex pencil parameter.
    pub fn blend_last(&self, other: &LaurentPolynomial, t: Complex64) -> AffineSlice {
        let mut forms = self.forms.clone();
        let last = forms.last_mut().expect("blend needs a form");
        let one = Complex64::new(1.0, 0.0);
        *last = last.scale(t).add(&other.scale(one - t));
        AffineSlice {
            nvars: self.nvars,
            forms,
        }
    }

    pub fn residual(&self, x: &[Complex64]) -> f64 {
        self.forms
            .iter()
            .map(|f| f.eval(x).map(|v| v.norm()).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

/// Witness set: the defining system F, a square tracking subsystem, a generic
/// slice of complementary codimension, and the slice points.
#[derive(Debug, Clone)]
pub struct WitnessSet {
    /// The full (possibly overdetermined) defining system.
    pub system: LaurentSystem,
    /// n − dim random combinations of `system` used for square tracking.
    pub square_part: LaurentSystem,
    pub slice: AffineSlice,
    pub points: Vec<Vec<Complex64>>,
}

impl WitnessSet {
    /// Dimension of the represented component (= slice codimension).
    pub fn dim(&self) -> usize {
        self.slice.codim()
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    fn with_points(&self, slice: AffineSlice, points: Vec<Vec<Complex64>>) -> WitnessSet {
        WitnessSet {
            system: self.system.clone(),
            square_part: self.square_part.clone(),
            slice,
            points,
        }
    }
}

/// Tuning knobs shared by the witness-set machinery.
#[derive(Debug, Clone)]
pub struct NagOptions {
    pub tracker: TrackerOptions,
    /// Monodromy loop budget per dimension.
    pub loop_budget: usize,
    /// Point-matching tolerance (relative).
    pub match_tolerance: f64,
    /// Trace collinearity tolerance (relative to trace magnitude).
    pub trace_tolerance: f64,
}

impl Default for NagOptions {
    fn default() -> Self {
        NagOptions {
            tracker: TrackerOptions::default(),
            loop_budget: 50,
            match_tolerance: 1e-6,
            trace_tolerance: 1e-6,
        }
    }
}

fn points_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = vec_norm(a).max(vec_norm(b)).max(1.0);
    vec_dist(a, b) <= tol * scale
}

fn append_slice(base: &LaurentSystem, slice: &AffineSlice) -> LaurentSystem {
    let mut sys = base.clone();
    for f in slice.forms() {
        sys.push(f.clone());
    }
    sys
}

/// Random complex combinations of the system's polynomials.
pub fn random_combinations(f: &LaurentSystem, count: usize, seed: Seed) -> LaurentSystem {
    let mut rng = seed.rng();
    let mut m = CMatrix::zeros(count, f.len());
    for i in 0..count {
        for j in 0..f.len() {
            m[(i, j)] = complex_normal(&mut rng);
        }
    }
    combine_rows(f, &m)
}

/// Moves witness points from one slice to another through the square
/// tracking system; every path must succeed and cardinality is preserved.
fn move_points(
    square_part: &LaurentSystem,
    from: &AffineSlice,
    to: &AffineSlice,
    points: &[Vec<Complex64>],
    opts: &NagOptions,
) -> Result<Vec<Vec<Complex64>>, NagError> {
    let start = append_slice(square_part, from);
    let target = append_slice(square_part, to);
    let h = LinearBlend::plain(start, target);
    let (results, _) = track_all(&h, points, &opts.tracker);
    let mut out = Vec::with_capacity(points.len());
    for r in &results {
        if !r.is_success() {
            return Err(NagError::PathFailure);
        }
        out.push(r.endpoint.clone());
    }
    for i in 0..out.len() {
        for j in (i + 1)..out.len() {
            if points_match(&out[i], &out[j], opts.match_tolerance) {
                return Err(NagError::PathFailure);
            }
        }
    }
    Ok(out)
}

/// Moves a witness set onto a new slice of the same codimension. On a direct
/// path failure one random complex detour slice is tried before giving up.
pub fn move_witness(
    w: &WitnessSet,
    new_slice: &AffineSlice,
    opts: &NagOptions,
    seed: Seed,
) -> Result<WitnessSet, NagError> {
    assert_eq!(w.slice.codim(), new_slice.codim(), "codimension must match");
    match move_points(&w.square_part, &w.slice, new_slice, &w.points, opts) {
        Ok(points) => Ok(w.with_points(new_slice.clone(), points)),
        Err(_) => {
            let detour = AffineSlice::random(
                w.slice.nvars(),
                w.slice.codim(),
                seed.derive("move-detour", 0),
            );
            let mid = move_points(&w.square_part, &w.slice, &detour, &w.points, opts)?;
            let points = move_points(&w.square_part, &detour, new_slice, &mid, opts)?;
            Ok(w.with_points(new_slice.clone(), points))
        }
    }
}

/// Membership test: moves the witness set to a random slice through `x0` and
/// checks whether `x0` shows up among the endpoints.
pub fn membership_test(
    w: &WitnessSet,
    x0: &[Complex64],
    opts: &NagOptions,
    seed: Seed,
) -> Result<bool, NagError> {
    let through = AffineSlice::random_through(
        w.slice.nvars(),
        w.slice.codim(),
        x0,
        seed.derive("member-slice", 0),
    );
    let moved = move_witness(w, &through, opts, seed.derive("member-move", 0))?;
    Ok(moved
        .points
        .iter()
        .any(|p| points_match(p, x0, opts.match_tolerance)))
}

/// Computes a witness point superset for dimension `i`: a square system from
/// n−i random combinations of F plus the slice forms, solved by the
/// total-degree homotopy and filtered onto V(F) by least-squares Newton.
pub fn witness_superset_with_slice(
    f: &LaurentSystem,
    slice: &AffineSlice,
    opts: &NagOptions,
    seed: Seed,
) -> Result<WitnessSet, NagError> {
    let n = f.nvars();
    let i = slice.codim();
    assert!(i < n, "slice codimension must leave a square subsystem");
    let square_part = random_combinations(f, n - i, seed.derive("superset-combos", 0));
    let square = append_slice(&square_part, slice);
    let solved = total_degree_solve(&square, &opts.tracker, seed.derive("superset-solve", 0))?;
    let full = append_slice(f, slice);
    let retained = gauss_newton_filter(
        &full,
        &solved.solutions,
        &GaussNewtonOptions::default(),
    );
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    for r in retained {
        if !points
            .iter()
            .any(|p| points_match(p, &r.point, opts.match_tolerance))
        {
            points.push(r.point);
        }
    }
    Ok(WitnessSet {
        system: f.clone(),
        square_part,
        slice: slice.clone(),
        points: sort_solutions(points),
    })
}

/// Superset through a seeded random slice of codimension `i`.
pub fn witness_superset(
    f: &LaurentSystem,
    i: usize,
    opts: &NagOptions,
    seed: Seed,
) -> Result<WitnessSet, NagError> {
    let slice = AffineSlice::random(f.nvars(), i, seed.derive("superset-slice", 0));
    witness_superset_with_slice(f, &slice, opts, seed)
}

/// Removes from each superset the points lying on a higher-dimensional
/// component: descending over dimensions, every point must fail membership
/// against all already-confirmed higher slices.
pub fn equidimensional_filter(
    supersets: Vec<WitnessSet>,
    opts: &NagOptions,
    seed: Seed,
) -> Result<Vec<WitnessSet>, NagError> {
    let mut sorted = supersets;
    sorted.sort_by(|a, b| b.dim().cmp(&a.dim()));
    let mut confirmed: Vec<WitnessSet> = Vec::new();
    for (k, u) in sorted.into_iter().enumerate() {
        let mut kept = Vec::new();
        'point: for (pi, x0) in u.points.iter().enumerate() {
            for (wi, w) in confirmed.iter().enumerate() {
                if w.points.is_empty() {
                    continue;
                }
                let s = seed.derive("eqdim-member", (k * 1000 + pi * 10 + wi) as u64);
                if membership_test(w, x0, opts, s)? {
                    continue 'point;
                }
            }
            kept.push(x0.clone());
        }
        let filtered = u.with_points(u.slice.clone(), kept);
        confirmed.push(filtered);
    }
    Ok(confirmed)
}

/// One monodromy permutation record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRecord {
    pub dim: usize,
    pub permutation: Vec<usize>,
}

/// Runs `nloops` slice-triangle monodromy loops and returns the observed
/// permutations plus the orbit partition they generate. Failed loops are
/// discarded with fresh slices.
pub fn monodromy_action(
    w: &WitnessSet,
    nloops: usize,
    opts: &NagOptions,
    seed: Seed,
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>), NagError> {
    let mut perms = Vec::new();
    let mut uf = UnionFind::new(w.points.len());
    let mut loop_seed = 0u64;
    for _ in 0..nloops {
        let perm = loop {
            let s = seed.derive("monodromy-loop", loop_seed);
            loop_seed += 1;
            match monodromy_loop(w, opts, s) {
                Ok(p) => break p,
                Err(_) if loop_seed < (nloops as u64) * 4 + 8 => {
                    log::warn!("monodromy loop discarded; drawing fresh slices");
                    continue;
                }
                Err(e) => return Err(e),
            }
        };
        for (i, &j) in perm.iter().enumerate() {
            uf.union(i, j);
        }
        perms.push(perm);
    }
    Ok((perms, uf.partition()))
}

fn monodromy_loop(w: &WitnessSet, opts: &NagOptions, seed: Seed) -> Result<Vec<usize>, NagError> {
    let n = w.slice.nvars();
    let c = w.slice.codim();
    let l1 = AffineSlice::random(n, c, seed.derive("loop-slice", 1));
    let l2 = AffineSlice::random(n, c, seed.derive("loop-slice", 2));
    let a = move_points(&w.square_part, &w.slice, &l1, &w.points, opts)?;
    let b = move_points(&w.square_part, &l1, &l2, &a, opts)?;
    let back = move_points(&w.square_part, &l2, &w.slice, &b, opts)?;
    let mut perm = vec![usize::MAX; w.points.len()];
    for (i, endpoint) in back.iter().enumerate() {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (j, orig) in w.points.iter().enumerate() {
            let d = vec_dist(endpoint, orig);
            if d < best_d {
                best_d = d;
                best = j;
            }
        }
        let scale = vec_norm(endpoint).max(1.0);
        if best == usize::MAX || best_d > opts.match_tolerance * scale {
            return Err(NagError::PathFailure);
        }
        perm[i] = best;
    }
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if seen[j] {
            return Err(NagError::PathFailure);
        }
        seen[j] = true;
    }
    Ok(perm)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn partition(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = self.find(i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }
}

/// Trace test for a subset of witness points: tracks the subset along a
/// parallel pencil of the last slice form to the parameters 1, ½ and 0, and
/// reports whether the three traces are collinear. True exactly when the
/// subset is a complete union of component witness sets.
pub fn trace_test(
    w: &WitnessSet,
    subset: &[usize],
    opts: &NagOptions,
    seed: Seed,
) -> Result<bool, NagError> {
    assert!(!subset.is_empty(), "trace test needs a nonempty subset");
    assert!(w.slice.codim() >= 1, "trace test needs a positive-dimensional slice");
    let mut rng = seed.derive("trace-shift", 0).rng();
    let delta = complex_normal(&mut rng);
    let shifted = w.slice.translate_last(delta);
    let start = append_slice(&w.square_part, &w.slice);
    let target = append_slice(&w.square_part, &shifted);
    let h = LinearBlend::plain(start, target);

    let points: Vec<Vec<Complex64>> = subset.iter().map(|&i| w.points[i].clone()).collect();
    let first_leg = Subpath {
        inner: &h,
        t_start: 1.0,
        t_end: 0.5,
    };
    let (mid_results, _) = track_all(&first_leg, &points, &opts.tracker);
    if mid_results.iter().any(|r| !r.is_success()) {
        return Err(NagError::PathFailure);
    }
    let mids: Vec<Vec<Complex64>> = mid_results.iter().map(|r| r.endpoint.clone()).collect();
    let second_leg = Subpath {
        inner: &h,
        t_start: 0.5,
        t_end: 0.0,
    };
    let (end_results, _) = track_all(&second_leg, &mids, &opts.tracker);
    if end_results.iter().any(|r| !r.is_success()) {
        return Err(NagError::PathFailure);
    }
    let ends: Vec<Vec<Complex64>> = end_results.iter().map(|r| r.endpoint.clone()).collect();

    let trace = |pts: &[Vec<Complex64>]| -> Vec<Complex64> {
        let n = pts[0].len();
        let mut t = vec![Complex64::new(0.0, 0.0); n];
        for p in pts {
            for (ti, pi) in t.iter_mut().zip(p.iter()) {
                *ti += pi;
            }
        }
        let k = pts.len() as f64;
        t.iter_mut().for_each(|ti| *ti /= k);
        t
    };
    let t1 = trace(&points);
    let tm = trace(&mids);
    let t0 = trace(&ends);
    let midpoint: Vec<Complex64> = t1.iter().zip(t0.iter()).map(|(a, b)| 0.5 * (a + b)).collect();
    let scale = [&t1, &tm, &t0]
        .iter()
        .map(|t| vec_norm(t))
        .fold(1.0, f64::max);
    Ok(vec_dist(&tm, &midpoint) <= opts.trace_tolerance * scale)
}

/// A numerical irreducible decomposition: one witness set per component,
/// the monodromy permutations observed along the way, and a flag marking an
/// exhausted loop budget.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<WitnessSet>,
    pub permutations: Vec<PermutationRecord>,
    pub inconclusive: bool,
}

impl Decomposition {
    /// (dimension, degree) pairs sorted by descending dimension.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        let mut sig: Vec<(usize, usize)> = self
            .components
            .iter()
            .map(|w| (w.dim(), w.degree()))
            .collect();
        sig.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        sig
    }
}

/// Splits an equidimensional witness point set into irreducible pieces by
/// interleaving monodromy loops with trace tests; returns the component
/// witness sets, the permutations used, and whether the budget ran out.
pub fn decompose_equidimensional(
    w: &WitnessSet,
    opts: &NagOptions,
    seed: Seed,
) -> Result<(Vec<WitnessSet>, Vec<PermutationRecord>, bool), NagError> {
    let npoints = w.points.len();
    if npoints == 0 {
        return Ok((Vec::new(), Vec::new(), false));
    }
    if w.dim() == 0 {
        // Isolated points: each is its own component.
        let comps = w
            .points
            .iter()
            .map(|p| w.with_points(w.slice.clone(), vec![p.clone()]))
            .collect();
        return Ok((comps, Vec::new(), false));
    }

    let mut uf = UnionFind::new(npoints);
    let mut perms: Vec<PermutationRecord> = Vec::new();
    let mut verified: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut failed_loops = 0usize;
    let mut loops = 0usize;
    let mut loop_counter = 0u64;

    let all_verified = |uf: &mut UnionFind,
                        verified: &std::collections::BTreeSet<Vec<usize>>| {
        uf.partition().into_iter().all(|p| verified.contains(&p))
    };

    // Initial trace screen: single-orbit components found without loops.
    for part in uf.partition() {
        if trace_test(w, &part, opts, seed.derive("trace", loop_counter))? {
            verified.insert(part);
        }
        loop_counter += 1;
    }

    while loops < opts.loop_budget && !all_verified(&mut uf, &verified) {
        loops += 1;
        let s = seed.derive("decompose-loop", loop_counter);
        loop_counter += 1;
        let perm = match monodromy_loop(w, opts, s) {
            Ok(p) => p,
            Err(_) => {
                failed_loops += 1;
                if failed_loops > opts.loop_budget {
                    return Err(NagError::PathFailure);
                }
                continue;
            }
        };
        let before = uf.partition();
        for (i, &j) in perm.iter().enumerate() {
            uf.union(i, j);
        }
        perms.push(PermutationRecord {
            dim: w.dim(),
            permutation: perm,
        });
        let after = uf.partition();
        if after != before {
            // Re-test only parts that changed, smallest first.
            let mut changed: Vec<Vec<usize>> = after
                .into_iter()
                .filter(|p| !verified.contains(p))
                .collect();
            changed.sort_by_key(|p| p.len());
            for part in changed {
                if trace_test(w, &part, opts, seed.derive("trace", loop_counter))? {
                    verified.insert(part);
                }
                loop_counter += 1;
            }
        }
    }

    let mut parts = uf.partition();
    let inconclusive = !parts.iter().all(|p| verified.contains(p));
    if inconclusive {
        // Last resort: merge unverified parts smallest-first and retest.
        let mut unverified: Vec<Vec<usize>> = parts
            .iter()
            .filter(|p| !verified.contains(*p))
            .cloned()
            .collect();
        unverified.sort_by_key(|p| p.len());
        let merged: Vec<usize> = {
            let mut m: Vec<usize> = unverified.iter().flatten().copied().collect();
            m.sort_unstable();
            m
        };
        if !merged.is_empty()
            && trace_test(w, &merged, opts, seed.derive("trace", loop_counter))?
        {
            parts.retain(|p| verified.contains(p));
            parts.push(merged.clone());
            verified.insert(merged);
        }
    }
    let inconclusive = !parts.iter().all(|p| verified.contains(p));

    let comps = parts
        .into_iter()
        .map(|part| {
            let pts = part.iter().map(|&i| w.points[i].clone()).collect();
            w.with_points(w.slice.clone(), pts)
        })
        .collect();
    Ok((comps, perms, inconclusive))
}

/// The dimension cascade: witness supersets for every dimension, junk
/// removal by membership against higher dimensions, then monodromy plus
/// trace decomposition per dimension.
pub fn numerical_irreducible_decomposition(
    f: &LaurentSystem,
    opts: &NagOptions,
    seed: Seed,
) -> Result<Decomposition, NagError> {
    let n = f.nvars();
    // Shared slice forms: dimension i uses the first i of them.
    let pool = AffineSlice::random(n, n.saturating_sub(1), seed.derive("cascade-pool", 0));
    let mut supersets = Vec::new();
    for i in (0..n).rev() {
        let slice = AffineSlice::from_forms(n, pool.forms()[..i].to_vec());
        let u = witness_superset_with_slice(f, &slice, opts, seed.derive("cascade-dim", i as u64))?;
        if !u.points.is_empty() {
            supersets.push(u);
        }
    }
    let filtered = equidimensional_filter(supersets, opts, seed.derive("cascade-filter", 0))?;
    let mut components = Vec::new();
    let mut permutations = Vec::new();
    let mut inconclusive = false;
    for w in &filtered {
        if w.points.is_empty() {
            continue;
        }
        let (comps, perms, inc) =
            decompose_equidimensional(w, opts, seed.derive("cascade-split", w.dim() as u64))?;
        components.extend(comps);
        permutations.extend(perms);
        inconclusive |= inc;
    }
    components.sort_by(|a, b| {
        b.dim()
            .cmp(&a.dim())
            .then(a.degree().cmp(&b.degree()))
    });
    Ok(Decomposition {
        components,
        permutations,
        inconclusive,
    })
}

/// Outcome of a monodromy-based solve.
#[derive(Debug, Clone)]
pub struct MonodromyOutcome {
    pub base_parameters: Vec<Complex64>,
    pub solutions: Vec<Vec<Complex64>>,
    pub loops_used: usize,
    /// True when the run stopped on the stagnation budget rather than a
    /// known count.
    pub stalled: bool,
}

/// Discovers solutions of F(x; p₀) by tracking the known set around random
/// parameter-space triangle loops, starting from an explicitly provided
/// seed pair. Works for overdetermined families by squaring up once and
/// filtering endpoints against the full system.
pub fn monodromy_solve_seeded(
    family: &ParametricFamily,
    p0: &[Complex64],
    known: &[Vec<Complex64>],
    known_count: Option<usize>,
    opts: &NagOptions,
    seed: Seed,
    stagnation_budget: usize,
) -> Result<MonodromyOutcome, NagError> {
    let n = family.nvars();
    let overdetermined = family.len() > n;
    let tracking_family = if overdetermined {
        let mut rng = seed.derive("monodromy-square", 0).rng();
        let mut m = CMatrix::zeros(n, family.len());
        for i in 0..n {
            for j in 0..family.len() {
                m[(i, j)] = complex_normal(&mut rng);
            }
        }
        ParametricFamily::new(combine_rows(family.template(), &m), n)
    } else if family.len() == n {
        family.clone()
    } else {
        return Err(NagError::Solve(SolveError::NotSquare {
            rows: family.len(),
            cols: n,
        }));
    };
    let full_at_p0 = family.at(p0)?;

    let mut solutions: Vec<Vec<Complex64>> = Vec::new();
    for k in known {
        if !solutions
            .iter()
            .any(|s| points_match(s, k, opts.match_tolerance))
        {
            solutions.push(k.clone());
        }
    }
    let mut loops = 0usize;
    let mut silent = 0usize;
    let scale: f64 = 0.4 * p0.iter().map(|c| c.norm()).fold(1.0, f64::max);
    // Loop legs tolerate a slightly looser corrector; every endpoint is
    // polished at t=0 and then filtered against the full system.
    let leg_opts = NagOptions {
        tracker: TrackerOptions {
            corrector_tolerance: opts.tracker.corrector_tolerance.max(1e-8),
            ..opts.tracker.clone()
        },
        ..opts.clone()
    };
    while silent < stagnation_budget {
        if let Some(count) = known_count {
            if solutions.len() >= count {
                break;
            }
        }
        let mut rng = seed.derive("monodromy-loop", loops as u64).rng();
        let p1: Vec<Complex64> = p0.iter().map(|c| c + complex_normal(&mut rng) * scale).collect();
        let p2: Vec<Complex64> = p0.iter().map(|c| c + complex_normal(&mut rng) * scale).collect();
        loops += 1;

        let legs = [
            (p0.to_vec(), p1.clone()),
            (p1.clone(), p2.clone()),
            (p2.clone(), p0.to_vec()),
        ];
        let mut current = solutions.clone();
        let mut failed = false;
        for (from, to) in legs {
            let path = ParameterPath::new(tracking_family.clone(), from, to);
            let (results, _) = track_all(&path, &current, &leg_opts.tracker);
            current = results
                .iter()
                .filter(|r| r.is_success())
                .map(|r| r.endpoint.clone())
                .collect();
            if current.is_empty() {
                failed = true;
                break;
            }
        }
        if failed {
            silent += 1;
            continue;
        }
        let candidates = if overdetermined {
            gauss_newton_filter(&full_at_p0, &current, &GaussNewtonOptions::default())
                .into_iter()
                .map(|r| r.point)
                .collect()
        } else {
            current
                .into_iter()
                .filter(|x| full_at_p0.scaled_residual(x) <= opts.tracker.residual_tolerance)
                .collect::<Vec<_>>()
        };
        let before = solutions.len();
        for c in candidates {
            if !solutions
                .iter()
                .any(|s| points_match(s, &c, opts.match_tolerance))
            {
                solutions.push(c);
            }
        }
        if solutions.len() == before {
            silent += 1;
        } else {
            silent = 0;
        }
    }

    let stalled = match known_count {
        Some(count) => solutions.len() < count,
        None => true,
    };
    if let Some(count) = known_count {
        if solutions.len() < count {
            return Err(NagError::StalledBeforeCount {
                requested: count,
                found: solutions.len(),
            });
        }
    }
    Ok(MonodromyOutcome {
        base_parameters: p0.to_vec(),
        solutions: sort_solutions(solutions),
        loops_used: loops,
        stalled,
    })
}

/// Monodromy solving with self-seeding: requires a family whose evaluation
/// at fixed x is affine-linear in the parameters, samples a random point x₀,
/// solves the linear system (plus generic degree-one constraints) for a
/// parameter vector p₀ with F(x₀; p₀) = 0, and explores the fiber by loops.
pub fn monodromy_solve(
    family: &ParametricFamily,
    known_count: Option<usize>,
    opts: &NagOptions,
    seed: Seed,
    stagnation_budget: usize,
) -> Result<MonodromyOutcome, NagError> {
    if family.parameter_degree() > 1 {
        return Err(NagError::NotLinearInParameters);
    }
    let n = family.nvars();
    let k = family.nparams();
    let m = family.len();
    if k < m {
        return Err(NagError::Solve(SolveError::NotSquare { rows: m, cols: k }));
    }
    let mut rng = seed.derive("monodromy-seed-point", 0).rng();
    let x0: Vec<Complex64> = (0..n).map(|_| complex_normal(&mut rng)).collect();
    // F(x₀; p) = A·p + b with A, b exact from the partials; affine-linear
    // checked above symbolically.
    let zero_p = vec![Complex64::new(0.0, 0.0); k];
    let a = family.jacobian_p(&x0, &zero_p)?;
    let b = family.eval(&x0, &zero_p)?;
    let mut sys = CMatrix::zeros(k, k);
    let mut rhs = vec![Complex64::new(0.0, 0.0); k];
    for i in 0..m {
        for j in 0..k {
            sys[(i, j)] = a[(i, j)];
        }
        rhs[i] = -b[i];
    }
    for i in m..k {
        for j in 0..k {
            sys[(i, j)] = complex_normal(&mut rng);
        }
        rhs[i] = complex_normal(&mut rng);
    }
    let p0 = crate::algebra::lu_solve(&sys, &rhs).map_err(NagError::Algebra)?;
    monodromy_solve_seeded(family, &p0, &[x0], known_count, opts, seed, stagnation_budget)
}

mod regen;
pub use regen::regenerate;

#[cfg(test)]
mod tests;
