//! Equation-by-equation solving: each new polynomial slices the current
//! components through a product of pencil positions of the last slice form,
//! followed by monodromy/trace decomposition and membership-based junk
//! removal.

use num_complex::Complex64;

use crate::algebra::{vec_norm, LaurentPolynomial, LaurentSystem};
use crate::error::NagError;
use crate::rng::{complex_normal, Seed};
use crate::solve::{gauss_newton_filter, sort_solutions, total_degree_solve, GaussNewtonOptions};
use crate::tracker::{track_all, LinearBlend};

use super::{
    append_slice, decompose_equidimensional, membership_test, move_witness, random_combinations,
    AffineSlice, Decomposition, NagOptions, PermutationRecord, WitnessSet,
};

fn vanishes_on(points: &[Vec<Complex64>], p: &LaurentPolynomial, degree: i64) -> bool {
    points.iter().all(|x| {
        let scale = (1.0 + vec_norm(x)).powi(degree as i32);
        p.eval(x).map(|v| v.norm()).unwrap_or(f64::INFINITY) <= 1e-6 * scale
    })
}

/// Witness sets for the irreducible components of the hypersurface {p = 0},
/// using the given slice-form pool.
fn hypersurface_decomposition(
    p: &LaurentPolynomial,
    pool: &AffineSlice,
    opts: &NagOptions,
    seed: Seed,
) -> Result<(Vec<WitnessSet>, Vec<PermutationRecord>, bool), NagError> {
    let n = p.nvars();
    let system = LaurentSystem::new(n, vec![p.clone()]);
    let slice = AffineSlice::from_forms(n, pool.forms()[..n - 1].to_vec());
    let square = append_slice(&system, &slice);
    let solved = total_degree_solve(&square, &opts.tracker, seed.derive("hyper-solve", 0))?;
    let w = WitnessSet {
        system: system.clone(),
        square_part: system,
        slice,
        points: sort_solutions(solved.solutions),
    };
    decompose_equidimensional(&w, opts, seed.derive("hyper-split", 0))
}

/// Intersects one positive-dimensional component with the next polynomial:
/// moves the last slice form through deg-many pencil positions, tracks the
/// union along the product-to-polynomial homotopy, and decomposes the
/// resulting superset at one dimension lower.
#[allow(clippy::too_many_arguments)]
fn slice_component_by(
    x: &WitnessSet,
    f_next: &LaurentPolynomial,
    system_through: &LaurentSystem,
    pool: &AffineSlice,
    opts: &NagOptions,
    seed: Seed,
) -> Result<(Vec<WitnessSet>, Vec<PermutationRecord>, bool), NagError> {
    let n = x.slice.nvars();
    let d = x.dim();
    let delta = f_next.total_degree().max(1);
    let mut rng = seed.derive("regen-pencil", 0).rng();
    let spare = {
        let mut p = LaurentPolynomial::constant(n, complex_normal(&mut rng));
        for v in 0..n {
            p.add_term(crate::algebra::Exponent::unit(n, v), complex_normal(&mut rng));
        }
        p
    };

    // Positions t₁ = 1 (the slice itself) and δ−1 random complex values.
    let mut union_points = x.points.clone();
    let last_form = x.slice.forms().last().expect("positive dimension").clone();
    let mut product = last_form.clone();
    for k in 1..delta {
        let t = complex_normal(&mut rng);
        let target = x.slice.blend_last(&spare, t);
        let moved = move_witness(x, &target, opts, seed.derive("regen-move", k as u64))?;
        union_points.extend(moved.points);
        let one = Complex64::new(1.0, 0.0);
        product = product.mul(&last_form.scale(t).add(&spare.scale(one - t)));
    }

    // Track t·(product of forms) + (1−t)·f_next with everything else fixed.
    let reduced_slice = AffineSlice::from_forms(n, x.slice.forms()[..d - 1].to_vec());
    let mut start = x.square_part.clone();
    start.push(product);
    let mut target = x.square_part.clone();
    target.push(f_next.clone());
    let start = append_slice(&start, &reduced_slice);
    let target = append_slice(&target, &reduced_slice);
    let h = LinearBlend::plain(start, target);
    let (results, _) = track_all(&h, &union_points, &opts.tracker);
    let candidates: Vec<Vec<Complex64>> = results
        .iter()
        .filter(|r| r.is_success())
        .map(|r| r.endpoint.clone())
        .collect();

    let full = append_slice(system_through, &reduced_slice);
    let retained = gauss_newton_filter(&full, &candidates, &GaussNewtonOptions::default());
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    for r in retained {
        if !points
            .iter()
            .any(|p| super::points_match(p, &r.point, opts.match_tolerance))
        {
            points.push(r.point);
        }
    }
    if points.is_empty() {
        return Ok((Vec::new(), Vec::new(), false));
    }
    let square_part = random_combinations(
        system_through,
        n - (d - 1),
        seed.derive("regen-combos", 0),
    );
    let w = WitnessSet {
        system: system_through.clone(),
        square_part,
        slice: AffineSlice::from_forms(n, pool.forms()[..d - 1].to_vec()),
        points: sort_solutions(points),
    };
    decompose_equidimensional(&w, opts, seed.derive("regen-split", 0))
}

/// Drops components whose generic point lies on a kept component of larger
/// (or equal, for duplicates) dimension.
fn junk_filter(
    mut comps: Vec<WitnessSet>,
    opts: &NagOptions,
    seed: Seed,
) -> Result<Vec<WitnessSet>, NagError> {
    comps.sort_by(|a, b| b.dim().cmp(&a.dim()).then(b.degree().cmp(&a.degree())));
    let mut kept: Vec<WitnessSet> = Vec::new();
    for (ci, c) in comps.into_iter().enumerate() {
        let Some(rep) = c.points.first() else {
            continue;
        };
        let mut junk = false;
        for (ki, k) in kept.iter().enumerate() {
            if k.dim() < c.dim() || k.dim() == 0 {
                continue;
            }
            if k.dim() == 0 {
                continue;
            }
            let s = seed.derive("junk-member", (ci * 100 + ki) as u64);
            if membership_test(k, rep, opts, s)? {
                junk = true;
                break;
            }
        }
        if !junk {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// Numerical irreducible decomposition built equation by equation. For a
/// square zero-dimensional input the dim-0 components carry the isolated
/// solutions.
pub fn regenerate(
    f: &LaurentSystem,
    opts: &NagOptions,
    seed: Seed,
) -> Result<Decomposition, NagError> {
    let n = f.nvars();
    assert!(n >= 1 && !f.is_empty());
    let pool = AffineSlice::random(n, n.saturating_sub(1), seed.derive("regen-pool", 0));

    let mut permutations: Vec<PermutationRecord> = Vec::new();
    let mut inconclusive = false;

    // First polynomial: hypersurface decomposition (or roots when n = 1).
    let first = &f.polys()[0];
    let mut comps: Vec<WitnessSet> = if n == 1 {
        let sys = LaurentSystem::new(1, vec![first.clone()]);
        let solved = total_degree_solve(&sys, &opts.tracker, seed.derive("regen-roots", 0))?;
        solved
            .solutions
            .into_iter()
            .map(|p| WitnessSet {
                system: sys.clone(),
                square_part: sys.clone(),
                slice: AffineSlice::from_forms(1, Vec::new()),
                points: vec![p],
            })
            .collect()
    } else {
        let (c, perms, inc) = hypersurface_decomposition(first, &pool, opts, seed.derive("regen-stage", 0))?;
        permutations.extend(perms);
        inconclusive |= inc;
        c
    };

    for (stage, f_next) in f.polys().iter().enumerate().skip(1) {
        let system_through = LaurentSystem::new(n, f.polys()[..=stage].to_vec());
        let degree = f_next.total_degree().max(1);
        let stage_seed = seed.derive("regen-stage", stage as u64);
        let mut next: Vec<WitnessSet> = Vec::new();
        for (xi, x) in comps.iter().enumerate() {
            if vanishes_on(&x.points, f_next, degree) {
                next.push(x.clone());
                continue;
            }
            if x.dim() == 0 {
                continue; // isolated point off the new hypersurface
            }
            let (c, perms, inc) = slice_component_by(
                x,
                f_next,
                &system_through,
                &pool,
                opts,
                stage_seed.derive("component", xi as u64),
            )?;
            permutations.extend(perms);
            inconclusive |= inc;
            next.extend(c);
        }
        comps = junk_filter(next, opts, stage_seed.derive("junk", 0))?;
    }

    // Report everything against the full input system.
    for c in comps.iter_mut() {
        c.system = f.clone();
    }
    comps.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.degree().cmp(&b.degree())));
    Ok(Decomposition {
        components: comps,
        permutations,
        inconclusive,
    })
}
