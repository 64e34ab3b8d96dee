//! Mixed cells, mixed volumes, and the sparse homotopy built from them:
//! generic integer liftings, exhaustive exact mixed-cell enumeration,
//! binomial start subsystems solved through the Smith normal form, per-cell
//! reparameterized homotopies, and the two-phase sparse solver.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::algebra::{
    smith_normal_form, vec_norm, Exponent, IntegerMatrix, LaurentPolynomial, LaurentSystem,
};
use crate::error::PolyhedralError;
use crate::rng::{complex_normal, unit_scaled, Seed};
use crate::solve::{distinct_solutions, sort_solutions};
use crate::tracker::{track_all, LinearBlend, PathStatus, PolyInT, TrackerOptions};

/// A support with integer heights attached to each point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedSupport {
    pub points: Vec<Exponent>,
    pub lifts: Vec<i64>,
}

impl LiftedSupport {
    pub fn new(points: Vec<Exponent>, lifts: Vec<i64>) -> Self {
        assert_eq!(points.len(), lifts.len());
        LiftedSupport { points, lifts }
    }
}

/// One mixed cell: an edge (point-index pair) per support, the primitive
/// upward normal (α, r), the per-support minima β, and the lattice volume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCell {
    pub edges: Vec<(usize, usize)>,
    pub alpha: Vec<i64>,
    pub r: i64,
    pub beta: Vec<i64>,
    pub volume: u64,
}

fn det_bigint(m: &[Vec<i128>]) -> BigInt {
    let n = m.len();
    let mut a = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = BigInt::from(m[i][j]);
        }
    }
    a.determinant()
}

/// Fraction-free determinant over i128, falling back to exact big integers
/// on overflow.
fn det_exact(m: &[Vec<i128>]) -> BigInt {
    fn try_i128(m: &[Vec<i128>]) -> Option<i128> {
        let n = m.len();
        if n == 0 {
            return Some(1);
        }
        let mut a: Vec<Vec<i128>> = m.to_vec();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let swap = ((k + 1)..n).find(|&i| a[i][k] != 0);
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Some(0),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let t1 = a[k][k].checked_mul(a[i][j])?;
                    let t2 = a[i][k].checked_mul(a[k][j])?;
                    a[i][j] = t1.checked_sub(t2)? / prev;
                }
            }
            prev = a[k][k];
        }
        Some(sign * a[n - 1][n - 1])
    }
    match try_i128(m) {
        Some(d) => BigInt::from(d),
        None => det_bigint(m),
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Per-tuple outcome of the exact normal solve.
enum TupleOutcome {
    NotACell,
    Tie,
    Cell(MixedCell),
}

fn examine_tuple(lifted: &[LiftedSupport], choice: &[(usize, usize)]) -> TupleOutcome {
    let n = lifted.len();
    // Edge-difference matrix M (rows a−b) and lift differences w.
    let mut m: Vec<Vec<i128>> = Vec::with_capacity(n);
    let mut w: Vec<i128> = Vec::with_capacity(n);
    for (i, &(ia, ib)) in choice.iter().enumerate() {
        let a = &lifted[i].points[ia];
        let b = &lifted[i].points[ib];
        m.push(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(x, y)| i128::from(x - y))
                .collect(),
        );
        w.push(i128::from(lifted[i].lifts[ia] - lifted[i].lifts[ib]));
    }
    let det_m = det_exact(&m);
    if det_m.is_zero() {
        return TupleOutcome::NotACell;
    }
    // Solve ⟨α, a−b⟩ + r(ω_a − ω_b) = 0 by Cramer: r = det(M),
    // α_i = −det(M with column i replaced by w).
    let mut alpha_big: Vec<BigInt> = Vec::with_capacity(n);
    for col in 0..n {
        let mut mc = m.clone();
        for (row, wi) in w.iter().enumerate() {
            mc[row][col] = *wi;
        }
        alpha_big.push(-det_exact(&mc));
    }
    let mut r_big = det_m.clone();
    if r_big.is_negative() {
        r_big = -r_big;
        for a in alpha_big.iter_mut() {
            *a = -a.clone();
        }
    }
    // Primitivize.
    let mut g = r_big.clone();
    for a in &alpha_big {
        g = num_integer::Integer::gcd(&g, a);
    }
    if !g.is_zero() {
        r_big /= &g;
        for a in alpha_big.iter_mut() {
            *a /= &g;
        }
    }
    let (Some(r), Some(alpha)) = (
        r_big.to_i64(),
        alpha_big
            .iter()
            .map(|a| a.to_i64())
            .collect::<Option<Vec<i64>>>(),
    ) else {
        // Astronomically unlikely with sane inputs; treat as non-cell.
        return TupleOutcome::NotACell;
    };

    // Minimality scan: β_i = min ⟨α,a⟩ + r·ω(a). The chosen edge must attain
    // the minimum in every support before a tie means anything: a tuple whose
    // edges are not all minimal is just not a cell, while a tying non-edge
    // point on an otherwise-minimal tuple makes the exposed face bigger than
    // a mixed parallelepiped, which a generic lifting never produces.
    let value = |i: usize, k: usize| -> i128 {
        let sup = &lifted[i];
        let p = &sup.points[k];
        let dot: i128 = p
            .0
            .iter()
            .zip(alpha.iter())
            .map(|(x, a)| i128::from(*x) * i128::from(*a))
            .sum();
        dot + i128::from(r) * i128::from(sup.lifts[k])
    };
    let mut beta = Vec::with_capacity(n);
    for (i, sup) in lifted.iter().enumerate() {
        let (ia, ib) = choice[i];
        let edge_val = value(i, ia);
        debug_assert_eq!(edge_val, value(i, ib));
        if (0..sup.points.len()).any(|k| value(i, k) < edge_val) {
            return TupleOutcome::NotACell;
        }
        beta.push(edge_val as i64);
    }
    for (i, sup) in lifted.iter().enumerate() {
        let (ia, ib) = choice[i];
        let edge_val = i128::from(beta[i]);
        for k in 0..sup.points.len() {
            if k != ia && k != ib && value(i, k) == edge_val {
                return TupleOutcome::Tie;
            }
        }
    }
    let vol = det_exact(&m).abs();
    let volume = vol.to_u64().unwrap_or(u64::MAX);
    TupleOutcome::Cell(MixedCell {
        edges: choice.to_vec(),
        alpha,
        r,
        beta,
        volume,
    })
}

/// Exhaustively enumerates the mixed cells induced by integer lifts: one
/// unordered point pair per support, the exposing normal solved in exact
/// integer arithmetic, and strict minimality demanded of all other points.
/// A tie anywhere reports a non-generic lifting.
pub fn enumerate_mixed_cells(lifted: &[LiftedSupport]) -> Result<Vec<MixedCell>, PolyhedralError> {
    let n = lifted.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    for sup in lifted {
        if let Some(p) = sup.points.first() {
            if p.len() != n {
                return Err(PolyhedralError::DegenerateSupports);
            }
        }
    }
    let pairs_per_support: Vec<Vec<(usize, usize)>> = lifted
        .iter()
        .map(|s| {
            let k = s.points.len();
            (0..k)
                .flat_map(|a| ((a + 1)..k).map(move |b| (a, b)))
                .collect()
        })
        .collect();
    if pairs_per_support.iter().any(|p| p.is_empty()) {
        return Ok(Vec::new());
    }

    let rest_count: usize = pairs_per_support[1..].iter().map(|p| p.len()).product();
    let cells: Result<Vec<Vec<MixedCell>>, PolyhedralError> = pairs_per_support[0]
        .par_iter()
        .map(|&first| {
            let mut found = Vec::new();
            let mut choice = vec![(0usize, 0usize); n];
            choice[0] = first;
            for mut idx in 0..rest_count {
                for (s, pairs) in pairs_per_support[1..].iter().enumerate() {
                    choice[s + 1] = pairs[idx % pairs.len()];
                    idx /= pairs.len();
                }
                match examine_tuple(lifted, &choice) {
                    TupleOutcome::Cell(c) => found.push(c),
                    TupleOutcome::Tie => return Err(PolyhedralError::NonGenericLifting),
                    TupleOutcome::NotACell => {}
                }
            }
            Ok(found)
        })
        .collect();
    let mut flat: Vec<MixedCell> = cells?.into_iter().flatten().collect();
    flat.sort_by(|a, b| (&a.alpha, a.r).cmp(&(&b.alpha, b.r)));
    Ok(flat)
}

/// Default height range for random lifts.
pub const DEFAULT_LIFT_BOUND: i64 = 65521;

/// Maximum resampling attempts before giving up on genericity.
pub const MAX_LIFT_ATTEMPTS: usize = 20;

/// Draws integer lifts uniform in [0, bound] and verifies genericity by
/// running the cell enumeration; resamples on ties, at most
/// `MAX_LIFT_ATTEMPTS` times. Returns the lifts together with their cells.
pub fn generic_lifting_with_cells(
    supports: &[Vec<Exponent>],
    bound: i64,
    seed: Seed,
) -> Result<(Vec<LiftedSupport>, Vec<MixedCell>), PolyhedralError> {
    assert!(bound >= 1);
    for attempt in 0..MAX_LIFT_ATTEMPTS {
        let mut rng = seed.derive("lift", attempt as u64).rng();
        let lifted: Vec<LiftedSupport> = supports
            .iter()
            .map(|pts| LiftedSupport {
                points: pts.clone(),
                lifts: pts.iter().map(|_| rng.gen_range(0..=bound)).collect(),
            })
            .collect();
        match enumerate_mixed_cells(&lifted) {
            Ok(cells) => return Ok((lifted, cells)),
            Err(PolyhedralError::NonGenericLifting) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(PolyhedralError::GenericityExhausted {
        attempts: MAX_LIFT_ATTEMPTS,
    })
}

/// Draws generic integer lifts (uniform in [0, bound], resampled until the
/// induced subdivision is generic).
pub fn random_lifting(
    supports: &[Vec<Exponent>],
    bound: i64,
    seed: Seed,
) -> Result<Vec<LiftedSupport>, PolyhedralError> {
    generic_lifting_with_cells(supports, bound, seed).map(|(l, _)| l)
}

/// Mixed volume of the given supports: the sum of mixed-cell volumes under
/// any generic lifting.
pub fn mixed_volume(supports: &[Vec<Exponent>], seed: Seed) -> Result<u128, PolyhedralError> {
    let (_, cells) = generic_lifting_with_cells(supports, DEFAULT_LIFT_BOUND, seed)?;
    Ok(cells.iter().map(|c| u128::from(c.volume)).sum())
}

/// Solves the binomial start subsystem attached to a mixed cell of F:
/// y^(a−b) = −c_b/c_a per edge, diagonalized by the Smith normal form and
/// solved by radicals. Returns exactly `cell.volume` torus points.
pub fn solve_binomial_start(
    cell: &MixedCell,
    f: &LaurentSystem,
) -> Result<Vec<Vec<Complex64>>, PolyhedralError> {
    let n = f.nvars();
    assert_eq!(cell.edges.len(), f.len());
    let supports = f.supports();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    let mut rhs: Vec<Complex64> = Vec::with_capacity(n);
    for (i, &(ia, ib)) in cell.edges.iter().enumerate() {
        let a = &supports[i][ia];
        let b = &supports[i][ib];
        let ca = f.polys()[i].coefficient(a);
        let cb = f.polys()[i].coefficient(b);
        rows.push(a.0.iter().zip(b.0.iter()).map(|(x, y)| x - y).collect());
        rhs.push(-cb / ca);
    }
    let a_mat = IntegerMatrix::from_rows_i64(&rows);
    let snf = smith_normal_form(&a_mat)?;
    let to_i64 = |v: &BigInt| -> i64 { v.to_i64().expect("unimodular entries fit in i64") };

    // Transformed right-hand sides b_i = Π_j rhs_j^{X_ij}.
    let mut diag_rhs = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, m) in rhs.iter().enumerate() {
            let e = to_i64(&snf.x[(i, j)]);
            if e != 0 {
                acc *= m.powi(e as i32);
            }
        }
        diag_rhs.push(acc);
    }
    let degrees: Vec<i64> = snf.diagonal().iter().map(|d| to_i64(d)).collect();

    // All d_i-th roots, coordinate by coordinate, in a fixed angular order.
    let mut partials: Vec<Vec<Complex64>> = vec![Vec::new()];
    for (i, &d) in degrees.iter().enumerate() {
        let b = diag_rhs[i];
        let r = b.norm().powf(1.0 / d as f64);
        let theta = b.arg();
        let mut next = Vec::with_capacity(partials.len() * d as usize);
        for partial in &partials {
            for k in 0..d {
                let ang = (theta + 2.0 * std::f64::consts::PI * k as f64) / d as f64;
                let mut s = partial.clone();
                s.push(Complex64::new(r * ang.cos(), r * ang.sin()));
                next.push(s);
            }
        }
        partials = next;
    }

    // Undo the unimodular change of coordinates: y_j = Π_k w_k^{Y_jk}.
    let solutions: Vec<Vec<Complex64>> = partials
        .iter()
        .map(|w| {
            (0..n)
                .map(|j| {
                    let mut acc = Complex64::new(1.0, 0.0);
                    for (k, wk) in w.iter().enumerate() {
                        let e = to_i64(&snf.y[(j, k)]);
                        if e != 0 {
                            acc *= wk.powi(e as i32);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    debug_assert_eq!(solutions.len() as u64, cell.volume);
    Ok(sort_solutions(solutions))
}

/// The reparameterized per-cell system: term (i, a) of F carries
/// s^(⟨α,a⟩ + r·ω_i(a) − β_i), an s-power that is zero exactly on the edge
/// terms. Realized as a homotopy over s = 1 − t.
pub fn build_cell_homotopy(cell: &MixedCell, f: &LaurentSystem, lifted: &[LiftedSupport]) -> PolyInT {
    let n = f.nvars();
    let mut polys = Vec::with_capacity(f.len());
    for (i, p) in f.polys().iter().enumerate() {
        let mut q = LaurentPolynomial::zero(n + 1);
        for (k, a) in lifted[i].points.iter().enumerate() {
            let c = p.coefficient(a);
            let dot: i64 = a.0.iter().zip(cell.alpha.iter()).map(|(x, al)| x * al).sum();
            let s_exp = dot + cell.r * lifted[i].lifts[k] - cell.beta[i];
            debug_assert!(s_exp >= 0);
            let mut e = a.0.clone();
            e.push(s_exp);
            q.add_term(Exponent(e), c);
        }
        polys.push(q);
    }
    PolyInT::new(LaurentSystem::new(n + 1, polys), 1.0, -1.0)
}

/// Output of a polyhedral solve: solutions, paths, and the cell data.
#[derive(Debug, Clone)]
pub struct PolyhedralOutput {
    pub solutions: Vec<Vec<Complex64>>,
    pub paths_tracked: usize,
    pub mixed_volume: u128,
    pub cells: Vec<MixedCell>,
    /// Start-phase paths lost before reaching the generic system; nonzero
    /// counts indicate a bad random draw rather than target geometry.
    pub start_phase_losses: usize,
}

fn torus_filter(solutions: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    solutions
        .into_iter()
        .filter(|s| {
            let scale = vec_norm(s).max(1.0);
            s.iter().all(|c| c.norm() > 1e-10 * scale)
        })
        .collect()
}

/// Two-phase sparse solve: (1) solve a random-coefficient system G with F's
/// supports by tracking every mixed-cell homotopy from its binomial start;
/// (2) a coefficient homotopy G → F carries those solutions to the target.
/// Returns the finite torus solutions of F.
pub fn polyhedral_solve(
    f: &LaurentSystem,
    opts: &TrackerOptions,
    seed: Seed,
) -> Result<PolyhedralOutput, PolyhedralError> {
    if !f.is_square() {
        return Err(PolyhedralError::Solve(crate::error::SolveError::NotSquare {
            rows: f.len(),
            cols: f.nvars(),
        }));
    }
    let supports = f.supports();
    if supports.iter().any(|s| s.is_empty()) {
        return Err(PolyhedralError::DegenerateSupports);
    }
    let mut attempt_seed = seed;
    let mut last_output: Option<PolyhedralOutput> = None;
    for round in 0..2 {
        let out = polyhedral_solve_once(f, &supports, opts, attempt_seed)?;
        if out.start_phase_losses == 0 || round == 1 {
            return Ok(out);
        }
        log::warn!(
            "polyhedral solve: {} start-phase paths lost; retrying with a fresh seed",
            out.start_phase_losses
        );
        last_output = Some(out);
        attempt_seed = attempt_seed.derive("polyhedral-reroll", round as u64 + 1);
    }
    Ok(last_output.expect("loop returns or stores"))
}

fn polyhedral_solve_once(
    f: &LaurentSystem,
    supports: &[Vec<Exponent>],
    opts: &TrackerOptions,
    seed: Seed,
) -> Result<PolyhedralOutput, PolyhedralError> {
    let n = f.nvars();
    // Phase 1: random-coefficient system with the same supports.
    let mut rng = seed.derive("phase1-coefficients", 0).rng();
    let g_polys: Vec<LaurentPolynomial> = supports
        .iter()
        .map(|sup| {
            LaurentPolynomial::from_terms(
                n,
                sup.iter().map(|e| (e.clone(), complex_normal(&mut rng))),
            )
        })
        .collect();
    let g = LaurentSystem::new(n, g_polys);

    let (lifted, cells) = generic_lifting_with_cells(supports, DEFAULT_LIFT_BOUND, seed)?;
    let mv: u128 = cells.iter().map(|c| u128::from(c.volume)).sum();

    let mut g_solutions: Vec<Vec<Complex64>> = Vec::new();
    let mut paths = 0usize;
    let mut losses = 0usize;
    for cell in &cells {
        let starts = solve_binomial_start(cell, &g)?;
        let homotopy = build_cell_homotopy(cell, &g, &lifted);
        let (results, _) = track_all(&homotopy, &starts, opts);
        paths += starts.len();
        for r in &results {
            if r.is_success() {
                g_solutions.push(r.endpoint.clone());
            } else {
                losses += 1;
                if r.status == PathStatus::StepSizeCollapse {
                    log::warn!("cell path stalled at t={}", r.t_reached);
                }
            }
        }
    }

    // Phase 2: coefficient homotopy from G to the target F.
    let mut rng2 = seed.derive("phase2-gamma", 0).rng();
    let gamma = unit_scaled(&mut rng2);
    let blend = LinearBlend::new(g, f.clone(), gamma);
    let (results, clusters) = track_all(&blend, &g_solutions, opts);
    let solutions = torus_filter(distinct_solutions(
        f,
        &results,
        &clusters,
        opts.residual_tolerance,
    ));
    Ok(PolyhedralOutput {
        solutions,
        paths_tracked: paths,
        mixed_volume: mv,
        cells,
        start_phase_losses: losses,
    })
}

/// Shoelace-style oracle helpers for two-dimensional cross-checks.
pub mod planar {
    use super::Exponent;

    /// Twice the area of the convex hull of integer points (monotone chain).
    pub fn hull_area_doubled(points: &[Exponent]) -> i128 {
        let mut pts: Vec<(i128, i128)> = points
            .iter()
            .map(|e| (i128::from(e.0[0]), i128::from(e.0[1])))
            .collect();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return 0;
        }
        let cross = |o: (i128, i128), a: (i128, i128), b: (i128, i128)| {
            (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
        };
        let mut lower: Vec<(i128, i128)> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(i128, i128)> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let hull = lower;
        let mut s: i128 = 0;
        for i in 0..hull.len() {
            let (x1, y1) = hull[i];
            let (x2, y2) = hull[(i + 1) % hull.len()];
            s += x1 * y2 - x2 * y1;
        }
        s.abs()
    }

    /// Pointwise Minkowski sum of two planar point sets.
    pub fn minkowski_sum(a: &[Exponent], b: &[Exponent]) -> Vec<Exponent> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for p in a {
            for q in b {
                out.push(Exponent(vec![p.0[0] + q.0[0], p.0[1] + q.0[1]]));
            }
        }
        out
    }

    /// Mixed volume of two polygons by the identity
    /// MV(P,Q) = vol(P+Q) − vol(P) − vol(Q).
    pub fn mixed_volume_by_areas(a: &[Exponent], b: &[Exponent]) -> i128 {
        let total = hull_area_doubled(&minkowski_sum(a, b));
        let va = hull_area_doubled(a);
        let vb = hull_area_doubled(b);
        let doubled = total - va - vb;
        debug_assert_eq!(doubled % 2, 0);
        doubled / 2
    }
}

#[allow(dead_code)]
fn unused_gcd_guard() {
    // gcd_i64 retained for primitive checks in tests.
    let _ = gcd_i64(4, 6);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::system_from_lines;
    use crate::tracker::Homotopy;

    fn exps(list: &[[i64; 2]]) -> Vec<Exponent> {
        list.iter().map(|p| Exponent(p.to_vec())).collect()
    }

    /// Supports of the running sparse pair: the square [0,2]² and the
    /// triangle-with-interior-point {(0,0),(1,1),(1,2),(2,1)}.
    fn square_triangle_supports() -> (Vec<Exponent>, Vec<Exponent>) {
        (
            exps(&[[0, 0], [0, 2], [2, 0], [2, 2]]),
            exps(&[[0, 0], [1, 1], [1, 2], [2, 1]]),
        )
    }

    fn sparse_pair_system() -> LaurentSystem {
        system_from_lines(
            &["x1", "x2"],
            &[
                "5 - 3x2^2 - 3x1^2 + x1^2*x2^2",
                "1 + 2x1*x2 - 5x1*x2^2 - 3x1^2*x2",
            ],
        )
    }

    /// The explicit lifts ω₁ ≡ 0 and ω₂(a,b) = a+b.
    fn explicit_lifts() -> Vec<LiftedSupport> {
        let (a1, a2) = square_triangle_supports();
        let l2: Vec<i64> = a2.iter().map(|e| e.0[0] + e.0[1]).collect();
        vec![
            LiftedSupport::new(a1.clone(), vec![0; a1.len()]),
            LiftedSupport::new(a2, l2),
        ]
    }

    #[test]
    fn explicit_lifts_give_two_cells_with_known_normals() {
        let cells = enumerate_mixed_cells(&explicit_lifts()).unwrap();
        assert_eq!(cells.len(), 2);
        // Sorted by (alpha, r): (−3,0) before (0,−3).
        assert_eq!(cells[0].alpha, vec![-3, 0]);
        assert_eq!(cells[0].r, 2);
        assert_eq!(cells[0].volume, 4);
        assert_eq!(cells[1].alpha, vec![0, -3]);
        assert_eq!(cells[1].r, 2);
        assert_eq!(cells[1].volume, 4);
        assert_eq!(cells[0].volume + cells[1].volume, 8);
    }

    #[test]
    fn lifted_facet_of_the_second_cell_has_minimal_value_minus_six() {
        let lifted = explicit_lifts();
        let cells = enumerate_mixed_cells(&lifted).unwrap();
        let cell = &cells[1]; // alpha = (0,−3), r = 2
        assert_eq!(cell.beta, vec![-6, 0]);
        assert_eq!(cell.beta.iter().sum::<i64>(), -6);
        // Facet vertices: Minkowski sums of the lifted edge endpoints.
        let mut verts: Vec<Vec<i64>> = Vec::new();
        let (e1, e2) = (cell.edges[0], cell.edges[1]);
        for &i in &[e1.0, e1.1] {
            for &j in &[e2.0, e2.1] {
                let p = &lifted[0].points[i];
                let q = &lifted[1].points[j];
                verts.push(vec![
                    p.0[0] + q.0[0],
                    p.0[1] + q.0[1],
                    lifted[0].lifts[i] + lifted[1].lifts[j],
                ]);
            }
        }
        verts.sort();
        let expected = {
            let mut v = vec![
                vec![0, 2, 0],
                vec![2, 2, 0],
                vec![1, 4, 3],
                vec![3, 4, 3],
            ];
            v.sort();
            v
        };
        assert_eq!(verts, expected);
        for v in &verts {
            assert_eq!(0 * v[0] - 3 * v[1] + 2 * v[2], -6);
        }
    }

    #[test]
    fn all_zero_lifts_are_rejected_as_non_generic() {
        let (a1, a2) = square_triangle_supports();
        let lifted = vec![
            LiftedSupport::new(a1.clone(), vec![0; a1.len()]),
            LiftedSupport::new(a2.clone(), vec![0; a2.len()]),
        ];
        assert!(matches!(
            enumerate_mixed_cells(&lifted),
            Err(PolyhedralError::NonGenericLifting)
        ));
    }

    #[test]
    fn axis_segments_have_one_unit_cell_under_any_lift() {
        let a1 = exps(&[[0, 0], [1, 0]]);
        let a2 = exps(&[[0, 0], [0, 1]]);
        for lifts in [[0i64, 0, 0, 0], [3, 1, 4, 1], [7, 7, 2, 9]] {
            let lifted = vec![
                LiftedSupport::new(a1.clone(), vec![lifts[0], lifts[1]]),
                LiftedSupport::new(a2.clone(), vec![lifts[2], lifts[3]]),
            ];
            let cells = enumerate_mixed_cells(&lifted).unwrap();
            assert_eq!(cells.len(), 1);
            assert_eq!(cells[0].volume, 1);
        }
    }

    #[test]
    fn mixed_volume_of_square_and_triangle_is_eight() {
        let (a1, a2) = square_triangle_supports();
        let mv = mixed_volume(&[a1, a2], Seed(4)).unwrap();
        assert_eq!(mv, 8);
    }

    #[test]
    fn mixed_volume_is_lifting_independent() {
        let (a1, a2) = square_triangle_supports();
        for seed in 0..5u64 {
            assert_eq!(mixed_volume(&[a1.clone(), a2.clone()], Seed(seed)).unwrap(), 8);
        }
    }

    #[test]
    fn unit_simplices_have_mixed_volume_one() {
        let simplex = exps(&[[0, 0], [1, 0], [0, 1]]);
        let mv = mixed_volume(&[simplex.clone(), simplex], Seed(1)).unwrap();
        assert_eq!(mv, 1);
    }

    #[test]
    fn polarization_identity_matches_lifting_computation() {
        let (a1, a2) = square_triangle_supports();
        let by_areas = planar::mixed_volume_by_areas(&a1, &a2);
        assert_eq!(by_areas, 8);
    }

    #[test]
    fn binomial_start_solutions_of_both_cells() {
        let f = sparse_pair_system();
        let lifted = explicit_lifts();
        let cells = enumerate_mixed_cells(&lifted).unwrap();

        // Cell with alpha = (0,−3): binomials −3y₂²+y₁²y₂² and 1−5y₁y₂².
        let sols = solve_binomial_start(&cells[1], &f).unwrap();
        assert_eq!(sols.len(), 4);
        let s3 = 3f64.sqrt();
        let q = 75f64.powf(-0.25);
        let expected = vec![
            vec![Complex64::new(s3, 0.0), Complex64::new(q, 0.0)],
            vec![Complex64::new(s3, 0.0), Complex64::new(-q, 0.0)],
            vec![Complex64::new(-s3, 0.0), Complex64::new(0.0, q)],
            vec![Complex64::new(-s3, 0.0), Complex64::new(0.0, -q)],
        ];
        assert!(crate::solve::solution_set_distance(&sols, &expected) < 1e-10);
        for s in &sols {
            assert!((s[0].norm() - s3).abs() < 1e-10);
            assert!((s[1].norm() - q).abs() < 1e-10);
        }

        // Cell with alpha = (−3,0): binomials −3y₁²+y₁²y₂² and 1−3y₁²y₂.
        let sols = solve_binomial_start(&cells[0], &f).unwrap();
        assert_eq!(sols.len(), 4);
        let q = 27f64.powf(-0.25);
        let expected = vec![
            vec![Complex64::new(q, 0.0), Complex64::new(s3, 0.0)],
            vec![Complex64::new(-q, 0.0), Complex64::new(s3, 0.0)],
            vec![Complex64::new(0.0, q), Complex64::new(-s3, 0.0)],
            vec![Complex64::new(0.0, -q), Complex64::new(-s3, 0.0)],
        ];
        assert!(crate::solve::solution_set_distance(&sols, &expected) < 1e-10);
    }

    #[test]
    fn single_binomial_square_roots() {
        // y² − 4 = 0 → {±2}.
        let f = system_from_lines(&["y"], &["y^2 - 4"]);
        let cell = MixedCell {
            edges: vec![(0, 1)],
            alpha: vec![0],
            r: 1,
            beta: vec![0],
            volume: 2,
        };
        let sols = solve_binomial_start(&cell, &f).unwrap();
        assert_eq!(sols.len(), 2);
        assert!((sols[0][0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((sols[1][0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cell_homotopy_matches_hand_transform() {
        // For alpha = (0,−3): h₁ = −3y₂² + y₁²y₂² + s⁶(5 − 3y₁²).
        let f = sparse_pair_system();
        let lifted = explicit_lifts();
        let cells = enumerate_mixed_cells(&lifted).unwrap();
        let cell = &cells[1];
        let h = build_cell_homotopy(cell, &f, &lifted);
        // At s=0 (tracker t=1) only the binomial terms survive.
        let y = [Complex64::new(0.7, 0.3), Complex64::new(-1.1, 0.2)];
        let at_start = h.eval(&y, 1.0).unwrap();
        let binom1 = -3.0 * y[1] * y[1] + y[0] * y[0] * y[1] * y[1];
        let binom2 = Complex64::new(1.0, 0.0) - 5.0 * y[0] * y[1] * y[1];
        assert!((at_start[0] - binom1).norm() < 1e-12);
        assert!((at_start[1] - binom2).norm() < 1e-12);
        // At s=1 (tracker t=0) the system equals F.
        let at_end = h.eval(&y, 0.0).unwrap();
        let f_val = f.eval(&y).unwrap();
        assert!((at_end[0] - f_val[0]).norm() < 1e-12);
        assert!((at_end[1] - f_val[1]).norm() < 1e-12);
    }

    #[test]
    fn sparse_pair_solves_to_eight_points() {
        let f = sparse_pair_system();
        let out = polyhedral_solve(&f, &TrackerOptions::default(), Seed(23)).unwrap();
        assert_eq!(out.mixed_volume, 8);
        assert_eq!(out.paths_tracked, 8);
        assert_eq!(out.solutions.len(), 8);
        for s in &out.solutions {
            assert!(f.residual(s) < 1e-8);
        }
    }

    #[test]
    fn generic_quadric_pair_matches_total_degree_count() {
        // Full-support quadrics in 2 vars: Bézout = MV = 4.
        let f = system_from_lines(
            &["x", "y"],
            &[
                "x^2 + 2x*y + 3y^2 + 0.5x - y + 2",
                "2x^2 - x*y + y^2 + x + 0.25y - 1",
            ],
        );
        let out = polyhedral_solve(&f, &TrackerOptions::default(), Seed(8)).unwrap();
        assert_eq!(out.mixed_volume, 4);
        assert_eq!(out.solutions.len(), 4);
        let td = crate::solve::total_degree_solve(&f, &TrackerOptions::default(), Seed(8)).unwrap();
        assert_eq!(td.solutions.len(), 4);
        for s in &td.solutions {
            let nearest = out
                .solutions
                .iter()
                .map(|t| crate::algebra::vec_dist(s, t))
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-6);
        }
    }
}

