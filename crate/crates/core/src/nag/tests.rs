use num_complex::Complex64;

use super::*;
use crate::text::{parse_system, system_from_lines};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn folium() -> LaurentSystem {
    system_from_lines(&["x", "y"], &["x^3 + y^3 - 3x*y"])
}

fn folium_witness(seed: u64) -> WitnessSet {
    let f = folium();
    let w = witness_superset(&f, 1, &NagOptions::default(), Seed(seed)).unwrap();
    assert_eq!(w.degree(), 3, "a generic line meets the cubic in 3 points");
    w
}

#[test]
fn moving_to_the_same_slice_is_the_identity() {
    let w = folium_witness(1);
    let moved = move_witness(&w, &w.slice, &NagOptions::default(), Seed(2)).unwrap();
    for (a, b) in w.points.iter().zip(moved.points.iter()) {
        assert!(vec_dist(a, b) < 1e-8);
    }
}

#[test]
fn folium_witness_moves_across_parallel_lines() {
    let w = folium_witness(3);
    let opts = NagOptions::default();
    for k in 1..=4 {
        let target = w.slice.translate_last(c(0.37 * k as f64, 0.11 * k as f64));
        let moved = move_witness(&w, &target, &opts, Seed(40 + k as u64)).unwrap();
        assert_eq!(moved.degree(), 3);
        for p in &moved.points {
            assert!(moved.system.residual(p) < 1e-7);
            assert!(target.residual(p) < 1e-7);
        }
    }
}

#[test]
fn quadric_witness_has_two_points_and_one_orbit() {
    let f = system_from_lines(&["x", "y", "z"], &["0.05x*y - 0.025x^2 - z - 1"]);
    let opts = NagOptions::default();
    let w = witness_superset(&f, 2, &opts, Seed(7)).unwrap();
    assert_eq!(w.degree(), 2);
    let (_, partition) = monodromy_action(&w, 8, &opts, Seed(8)).unwrap();
    assert_eq!(partition.len(), 1, "irreducibility forces a single orbit");
    assert_eq!(partition[0].len(), 2);
}

#[test]
fn surface_witness_on_the_reported_line() {
    // The quadric-surface slice along the line (t, −t−2, −3+t/4).
    let file = parse_system(
        "variables: x, y, z\n\
         (0.05x*y - 0.025x^2 - z - 1)(x^4 - 4x^2 - y - 1)(x - 4)(x - 6)\n\
         (0.05x*y - 0.025x^2 - z - 1)(x^4 - 4x^2 - y - 1)(y - 3)(y - 5)\n\
         (0.05x*y - 0.025x^2 - z - 1)(z - 2)(z - 5)\n",
    )
    .unwrap();
    let f = file.system;
    let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    let l1 = crate::text::parse_polynomial("x + y + 2", &names, 1).unwrap();
    let l2 = crate::text::parse_polynomial("z + 3 - x/4", &names, 1).unwrap();
    let slice = AffineSlice::from_forms(3, vec![l1, l2]);
    let opts = NagOptions::default();
    let w = witness_superset_with_slice(&f, &slice, &opts, Seed(11)).unwrap();
    assert_eq!(w.degree(), 2);
    let expected = [
        vec![c(10.0 / 3.0, 0.0), c(-16.0 / 3.0, 0.0), c(-13.0 / 6.0, 0.0)],
        vec![c(-8.0, 0.0), c(6.0, 0.0), c(-5.0, 0.0)],
    ];
    for e in &expected {
        let nearest = w.points.iter().map(|p| vec_dist(p, e)).fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-6, "missing witness point {e:?}");
    }
    // Membership: a witness point is on the surface, a random point is not.
    assert!(membership_test(&w, &expected[1], &opts, Seed(12)).unwrap());
    assert!(!membership_test(&w, &[c(1.0, 0.3), c(0.5, 0.0), c(2.0, -0.1)], &opts, Seed(13)).unwrap());
}

#[test]
fn trace_test_passes_only_on_the_full_folium_witness() {
    let w = folium_witness(5);
    let opts = NagOptions::default();
    assert!(trace_test(&w, &[0, 1, 2], &opts, Seed(21)).unwrap());
    for subset in [
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![0, 2],
        vec![1, 2],
    ] {
        assert!(
            !trace_test(&w, &subset, &opts, Seed(22)).unwrap(),
            "{subset:?} must bend"
        );
    }
}

#[test]
fn folium_ellipse_union_splits_into_blocks_of_three_and_two() {
    // Product of the cubic folium with the ellipse 8(x+1)² + 3(2y+x+1)² − 8.
    let f = system_from_lines(
        &["x", "y"],
        &["(x^3 + y^3 - 3x*y)(8(x+1)^2 + 3(2y + x + 1)^2 - 8)"],
    );
    let opts = NagOptions::default();
    let decomp = numerical_irreducible_decomposition(&f, &opts, Seed(31)).unwrap();
    assert!(!decomp.inconclusive);
    assert_eq!(decomp.signature(), vec![(1, 2), (1, 3)]);
}

#[test]
fn decomposition_of_an_empty_variety_is_empty() {
    // 1 + x² and 2 + x² share no zeros.
    let f = system_from_lines(&["x", "y"], &["x^2 + 1", "x^2 + 2"]);
    let decomp = numerical_irreducible_decomposition(&f, &NagOptions::default(), Seed(1)).unwrap();
    assert!(decomp.components.is_empty());
}

#[test]
fn monodromy_discovers_all_six_solutions_of_the_coefficient_family() {
    // Coefficients of the circle-cubic pair as 7 linear parameters.
    let text = "variables: x, y\nparameters: a, b, c, d, e, f, g\n\
                a*x^2 + b*y^2 + c\n\
                d*x^2 + e*y^3 + f*y + g\n";
    let fam = ParametricFamily::new(parse_system(text).unwrap().system, 2);
    let opts = NagOptions::default();
    let out = monodromy_solve(&fam, Some(6), &opts, Seed(90), 20).unwrap();
    assert_eq!(out.solutions.len(), 6);
    // Specialize to the concrete system and cross-check via total degree.
    let p = [
        c(1.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(-1.0, 0.0),
        c(-1.0, 0.0),
    ];
    let concrete = fam.at(&p).unwrap();
    let direct =
        crate::solve::total_degree_solve(&concrete, &opts.tracker, Seed(91)).unwrap();
    let moved = crate::solve::parameter_solve(
        &fam,
        &out.base_parameters,
        &out.solutions,
        &p,
        &opts.tracker,
        Seed(92),
    )
    .unwrap();
    assert_eq!(moved.solutions.len(), 6);
    assert!(crate::solve::solution_set_distance(&moved.solutions, &direct.solutions) < 1e-6);
}

#[test]
fn monodromy_on_a_linear_family_stalls_at_one_solution() {
    let text = "variables: x\nparameters: p\nx - p\n";
    let fam = ParametricFamily::new(parse_system(text).unwrap().system, 1);
    let out = monodromy_solve(&fam, None, &NagOptions::default(), Seed(77), 5).unwrap();
    assert_eq!(out.solutions.len(), 1);
    assert!(out.stalled);
}

#[test]
fn monodromy_requires_linear_parameters() {
    let text = "variables: x\nparameters: p\nx - p^2\n";
    let fam = ParametricFamily::new(parse_system(text).unwrap().system, 1);
    assert!(matches!(
        monodromy_solve(&fam, None, &NagOptions::default(), Seed(1), 3),
        Err(NagError::NotLinearInParameters)
    ));
}

#[test]
fn regeneration_matches_total_degree_on_the_circle_cubic() {
    let f = system_from_lines(&["x", "y"], &["x^2 + y^2 - 1", "x^2 - y^3 - y - 1"]);
    let opts = NagOptions::default();
    let decomp = regenerate(&f, &opts, Seed(55)).unwrap();
    assert!(!decomp.inconclusive);
    let points: Vec<Vec<Complex64>> = decomp
        .components
        .iter()
        .filter(|w| w.dim() == 0)
        .flat_map(|w| w.points.clone())
        .collect();
    assert_eq!(points.len(), 6);
    let direct = crate::solve::total_degree_solve(&f, &opts.tracker, Seed(56)).unwrap();
    assert!(crate::solve::solution_set_distance(&points, &direct.solutions) < 1e-6);
}

#[test]
fn regeneration_of_a_single_cubic_gives_one_degree_three_witness() {
    let decomp = regenerate(&folium(), &NagOptions::default(), Seed(58)).unwrap();
    assert_eq!(decomp.signature(), vec![(1, 3)]);
}

#[test]
fn identity_loop_fixes_every_point() {
    let w = folium_witness(9);
    let opts = NagOptions::default();
    let same = move_points(&w.square_part, &w.slice, &w.slice, &w.points, &opts).unwrap();
    for (i, p) in same.iter().enumerate() {
        assert!(vec_dist(p, &w.points[i]) < 1e-8);
    }
}

