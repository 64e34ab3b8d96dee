//! Cross-module invariants: algebra identities, tracker determinism and
//! convergence, solver counting laws, and certificate soundness.

use num_complex::Complex64;
use rand::Rng;

use polytrace::algebra::{eval_jacobian, vec_dist, vec_norm, Exponent, LaurentPolynomial, LaurentSystem};
use polytrace::certify::{alpha_data, certify_alpha, krawczyk_certify_all, KrawczykOptions};
use polytrace::polyhedral::{mixed_volume, polyhedral_solve};
use polytrace::rng::{complex_normal, Seed};
use polytrace::solve::{
    bezout_number, gauss_newton_filter, solution_set_distance, square_up, total_degree_solve,
    GaussNewtonOptions,
};
use polytrace::text::{format_polynomial, parse_polynomial, system_from_lines};
use polytrace::tracker::{newton_correct, track_all, FrozenSystem, Homotopy, LinearBlend, TrackerOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_poly(nvars: usize, terms: usize, max_deg: i64, rng: &mut rand_chacha::ChaCha8Rng) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero(nvars);
    for _ in 0..terms {
        let e = Exponent((0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect());
        p.add_term(e, complex_normal(rng));
    }
    p
}

#[test]
fn evaluation_is_linear_in_coefficients() {
    let mut rng = Seed(1).derive("lin", 0).rng();
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let f = random_poly(n, 5, 4, &mut rng);
        let g = random_poly(n, 5, 4, &mut rng);
        let z: Vec<Complex64> = (0..n).map(|_| complex_normal(&mut rng)).collect();
        let lhs = f.add(&g).eval(&z).unwrap();
        let rhs = f.eval(&z).unwrap() + g.eval(&z).unwrap();
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        assert!((lhs - rhs).norm() <= 1e-12 * scale);
    }
}

#[test]
fn jacobian_matches_central_finite_differences() {
    let mut rng = Seed(2).derive("fd", 0).rng();
    for _ in 0..25 {
        let n = rng.gen_range(1..=3);
        let polys: Vec<LaurentPolynomial> = (0..n).map(|_| random_poly(n, 4, 3, &mut rng)).collect();
        let sys = LaurentSystem::new(n, polys);
        let z: Vec<Complex64> = (0..n)
            .map(|_| c(rng.gen_range(0.4..1.2), rng.gen_range(-0.4..0.4)))
            .collect();
        let (_, jac) = eval_jacobian(&sys, &z).unwrap();
        let h = 1e-6;
        for j in 0..n {
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[j] += c(h, 0.0);
            zm[j] -= c(h, 0.0);
            let fp = sys.eval(&zp).unwrap();
            let fm = sys.eval(&zm).unwrap();
            for i in 0..n {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                let scale = jac[i][j].norm().max(1.0);
                assert!(
                    (jac[i][j] - fd).norm() <= 1e-6 * scale,
                    "entry ({i},{j}): {} vs {}",
                    jac[i][j],
                    fd
                );
            }
        }
    }
}

#[test]
fn support_survives_print_and_reparse() {
    let names: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    let mut rng = Seed(3).derive("roundtrip", 0).rng();
    for _ in 0..60 {
        let n = rng.gen_range(1..=3usize);
        let mut p = LaurentPolynomial::zero(n);
        for _ in 0..rng.gen_range(1..=6) {
            let e = Exponent((0..n).map(|_| rng.gen_range(-3..=5i64)).collect());
            // Integer coefficients print exactly.
            let re = rng.gen_range(-9..=9i64) as f64;
            let im = rng.gen_range(-9..=9i64) as f64;
            p.add_term(e, c(re, im));
        }
        if p.is_zero() {
            continue;
        }
        let text = format_polynomial(&p, &names[..n]);
        let q = parse_polynomial(&text, &names[..n], 1).unwrap();
        assert_eq!(p.support(), q.support(), "text was `{text}`");
        assert_eq!(p, q);
    }
}

#[test]
fn tracker_is_bitwise_deterministic_across_thread_counts() {
    let f = system_from_lines(&["x", "y"], &["x^2 + y^2 - 1", "x^2 - y^3 - y - 1"]);
    let start = polytrace::solve::TotalDegreeStart::new(&f, Seed(11)).unwrap();
    let h = LinearBlend::plain(start.system.clone(), f.clone());
    let opts = TrackerOptions::default();
    let run = |threads: usize| -> Vec<Vec<(u64, u64)>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let (results, _) = track_all(&h, &start.start_solutions, &opts);
            results
                .iter()
                .map(|r| {
                    r.endpoint
                        .iter()
                        .map(|z| (z.re.to_bits(), z.im.to_bits()))
                        .collect()
                })
                .collect()
        })
    };
    let one = run(1);
    let two = run(2);
    let eight = run(8);
    assert_eq!(one, two);
    assert_eq!(one, eight);
}

#[test]
fn success_endpoints_contract_quadratically_under_extra_newton() {
    let f = system_from_lines(&["x", "y"], &["x^2 + y^2 - 1", "x^2 - y^3 - y - 1"]);
    let out = total_degree_solve(&f, &TrackerOptions::default(), Seed(4)).unwrap();
    let h = LinearBlend::plain(f.clone(), f.clone());
    for s in &out.solutions {
        let frozen = FrozenSystem { homotopy: &h, t: 0.0 };
        let one_step = TrackerOptions {
            max_corrector_iters: 1,
            corrector_tolerance: 0.0,
            ..TrackerOptions::default()
        };
        let r1 = newton_correct(&frozen, s, &one_step).unwrap();
        let r2 = newton_correct(&frozen, &r1.point, &one_step).unwrap();
        let floor = 1e-13 * (1.0 + vec_norm(s));
        assert!(
            r1.last_step_norm <= floor || r2.last_step_norm <= r1.last_step_norm / 10.0,
            "steps {} then {}",
            r1.last_step_norm,
            r2.last_step_norm
        );
    }
}

#[test]
fn dense_random_systems_meet_their_bezout_count() {
    let mut rng = Seed(5).derive("dense", 0).rng();
    for trial in 0..6u64 {
        let d1 = rng.gen_range(1..=3i64);
        let d2 = rng.gen_range(1..=3i64);
        let dense = |d: i64, rng: &mut rand_chacha::ChaCha8Rng| {
            let mut p = LaurentPolynomial::zero(2);
            for a in 0..=d {
                for b in 0..=(d - a) {
                    p.add_term(Exponent(vec![a, b]), complex_normal(rng));
                }
            }
            p
        };
        let f = LaurentSystem::new(2, vec![dense(d1, &mut rng), dense(d2, &mut rng)]);
        let out = total_degree_solve(&f, &TrackerOptions::default(), Seed(600 + trial)).unwrap();
        assert_eq!(
            out.solutions.len() as u128,
            bezout_number(&f).unwrap(),
            "degrees ({d1},{d2})"
        );
    }
}

#[test]
fn squaring_up_recovers_exactly_the_known_zero_set() {
    // Common zeros of an overdetermined consistent system: x²+y²−5, xy−2,
    // and their sum; zeros are (±1,±2),(±2,±1) with matching signs.
    let f = system_from_lines(
        &["x", "y"],
        &["x^2 + y^2 - 5", "x*y - 2", "x^2 + y^2 + x*y - 7"],
    );
    let expected: Vec<Vec<Complex64>> = vec![
        vec![c(1.0, 0.0), c(2.0, 0.0)],
        vec![c(2.0, 0.0), c(1.0, 0.0)],
        vec![c(-1.0, 0.0), c(-2.0, 0.0)],
        vec![c(-2.0, 0.0), c(-1.0, 0.0)],
    ];
    for trial in 0..20u64 {
        let (g, _) = square_up(&f, Seed(trial)).unwrap();
        let out = total_degree_solve(&g, &TrackerOptions::default(), Seed(1000 + trial)).unwrap();
        let kept = gauss_newton_filter(&f, &out.solutions, &GaussNewtonOptions::default());
        let mut points: Vec<Vec<Complex64>> = Vec::new();
        for r in kept {
            if !points.iter().any(|p| vec_dist(p, &r.point) < 1e-6) {
                points.push(r.point);
            }
        }
        assert_eq!(points.len(), 4, "trial {trial}");
        assert!(solution_set_distance(&points, &expected) < 1e-8, "trial {trial}");
    }
}

#[test]
fn sparse_random_systems_meet_the_mixed_volume_count() {
    let mut rng = Seed(6).derive("sparse", 0).rng();
    let mut done = 0u64;
    let mut trial = 0u64;
    while done < 20 {
        trial += 1;
        let n = rng.gen_range(2..=3usize);
        let polys: Vec<LaurentPolynomial> = (0..n)
            .map(|_| {
                let mut p = LaurentPolynomial::zero(n);
                // Always include a constant so the torus count is clean.
                p.add_term(Exponent::zero(n), complex_normal(&mut rng));
                for _ in 0..rng.gen_range(2..=5) {
                    let e = Exponent((0..n).map(|_| rng.gen_range(0..=2i64)).collect());
                    p.add_term(e, complex_normal(&mut rng));
                }
                p
            })
            .collect();
        let f = LaurentSystem::new(n, polys);
        let mv = mixed_volume(&f.supports(), Seed(3000 + trial)).unwrap();
        if mv == 0 || mv > 18 {
            continue;
        }
        let out = polyhedral_solve(&f, &TrackerOptions::default(), Seed(4000 + trial)).unwrap();
        assert_eq!(out.mixed_volume, mv);
        assert_eq!(out.solutions.len() as u128, mv, "trial {trial}");
        if let Ok(bez) = bezout_number(&f) {
            assert!(mv <= bez, "sparse bound must not exceed the dense bound");
        }
        done += 1;
    }
}

#[test]
fn per_cell_binomial_count_equals_cell_volume() {
    use polytrace::polyhedral::{generic_lifting_with_cells, solve_binomial_start, DEFAULT_LIFT_BOUND};
    let f = system_from_lines(
        &["x1", "x2"],
        &[
            "5 - 3x2^2 - 3x1^2 + x1^2*x2^2",
            "1 + 2x1*x2 - 5x1*x2^2 - 3x1^2*x2",
        ],
    );
    for seed in 0..5u64 {
        let (_, cells) =
            generic_lifting_with_cells(&f.supports(), DEFAULT_LIFT_BOUND, Seed(seed)).unwrap();
        for cell in &cells {
            let sols = solve_binomial_start(cell, &f).unwrap();
            assert_eq!(sols.len() as u64, cell.volume);
        }
    }
}

#[test]
fn alpha_and_krawczyk_agree_on_certified_fixtures() {
    let f = system_from_lines(&["x", "y"], &["x^2 + y^2 - 1", "x^2 - y^3 - y - 1"]);
    let out = total_degree_solve(&f, &TrackerOptions::default(), Seed(8)).unwrap();
    let alpha = certify_alpha(&f, &out.solutions);
    let kraw = krawczyk_certify_all(&f, &out.solutions, &KrawczykOptions::default());
    for (a, k) in alpha.iter().zip(kraw.iter()) {
        assert!(a.certified && k.certified);
        assert_eq!(a.real, k.real, "reality verdicts must agree");
    }
}

#[test]
fn no_false_certificates_on_a_triangular_oracle() {
    // x³ = 8 and y² = x with exactly known zeros.
    let f = system_from_lines(&["x", "y"], &["x^3 - 8", "y^2 - x"]);
    let mut oracle: Vec<Vec<Complex64>> = Vec::new();
    for k in 0..3 {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        let x = 2.0 * c(ang.cos(), ang.sin());
        let y = x.sqrt();
        oracle.push(vec![x, y]);
        oracle.push(vec![x, -y]);
    }
    let certs = krawczyk_certify_all(&f, &oracle, &KrawczykOptions::default());
    for (cert, z) in certs.iter().zip(oracle.iter()) {
        assert!(cert.certified && cert.unique);
        let polytrace::certify::CertifiedRegion::Box(b) = &cert.region else {
            panic!("expected box")
        };
        for (bi, zi) in b.iter().zip(z.iter()) {
            assert!(bi.contains(*zi), "certified box must contain the true zero");
        }
    }
    let alpha = certify_alpha(&f, &oracle);
    for (cert, z) in alpha.iter().zip(oracle.iter()) {
        assert!(cert.certified);
        let a = cert.alpha.unwrap();
        // The 2β ball around an exact zero collapses onto it.
        assert!(2.0 * a.beta < 1e-10, "ball radius {} at {z:?}", a.beta);
    }
}

#[test]
fn exact_univariate_gamma_is_dominated_by_the_bound() {
    // deg-2: f = x²−1 at 1.1, closed form γ = |1/(2·1.1)|.
    let f = system_from_lines(&["x"], &["x^2 - 1"]);
    let a = alpha_data(&f, &[c(1.1, 0.0)]).unwrap();
    assert!(a.gamma_upper >= 1.0 / 2.2 - 1e-15);
}

#[test]
fn extra_monodromy_loops_never_merge_verified_components() {
    use polytrace::nag::{monodromy_action, numerical_irreducible_decomposition, NagOptions};
    let f = system_from_lines(
        &["x", "y"],
        &["(x^3 + y^3 - 3x*y)(8(x+1)^2 + 3(2y + x + 1)^2 - 8)"],
    );
    let opts = NagOptions::default();
    let decomp = numerical_irreducible_decomposition(&f, &opts, Seed(31)).unwrap();
    assert_eq!(decomp.signature(), vec![(1, 2), (1, 3)]);
    // Re-run loops on the combined slice points: orbits must refine the
    // output partition (never merge points across the two components).
    let mut all = decomp.components[0].clone();
    let offset = all.points.len();
    let second = &decomp.components[1];
    let mut points = all.points.clone();
    points.extend(second.points.clone());
    // Both components share the same slice by construction of the cascade.
    all.points = points;
    let (_, partition) = monodromy_action(&all, 10, &opts, Seed(77)).unwrap();
    for orbit in &partition {
        let in_first = orbit.iter().all(|&i| i < offset);
        let in_second = orbit.iter().all(|&i| i >= offset);
        assert!(
            in_first || in_second,
            "an orbit crossed a trace-verified component boundary: {orbit:?}"
        );
    }
}

#[test]
fn rank_one_matrix_pencil_fixture() {
    // The 2×3 matrix family A + Bx + Cy and its three rank-degeneracy
    // minors: the leftover minor evaluates to -963/98 at the spurious
    // square-subsystem solution, and the three true common zeros pass the
    // least-squares Newton filter.
    let m12 = "(1 + 2x + y)(4 + 5x + 3y) - (3 + 3x - y)(2 + 2x - 2y)";
    let m13 = "(1 + 2x + y)(6 - 11x - 7y) - (5 + 7x + y)(2 + 2x - 2y)";
    let m23 = "(3 + 3x - y)(6 - 11x - 7y) - (5 + 7x + y)(4 + 5x + 3y)";
    let names = vec!["x".to_string(), "y".to_string()];
    let f13 = parse_polynomial(m13, &names, 1).unwrap();
    let at = f13
        .eval(&[c(-13.0 / 14.0, 0.0), c(3.0 / 14.0, 0.0)])
        .unwrap();
    assert!((at - c(-963.0 / 98.0, 0.0)).norm() < 1e-12);

    let square = system_from_lines(&["x", "y"], &[m12, m23]);
    let full = system_from_lines(&["x", "y"], &[m12, m13, m23]);
    let out = total_degree_solve(&square, &TrackerOptions::default(), Seed(12)).unwrap();
    assert_eq!(out.solutions.len(), 4, "the square subsystem has 4 zeros");
    let spurious = vec![c(-13.0 / 14.0, 0.0), c(3.0 / 14.0, 0.0)];
    assert!(
        out.solutions.iter().any(|s| vec_dist(s, &spurious) < 1e-8),
        "the spurious square-subsystem zero must show up"
    );
    let kept = gauss_newton_filter(&full, &out.solutions, &GaussNewtonOptions::default());
    assert_eq!(kept.len(), 3, "exactly the three true zeros survive");
    let known = vec![c(-0.8, 0.0), c(0.6, 0.0)];
    assert!(kept.iter().any(|r| vec_dist(&r.point, &known) < 1e-8));
    assert!(kept.iter().all(|r| vec_dist(&r.point, &spurious) > 1e-3));
}

#[test]
fn krawczyk_boxes_for_the_sparse_pair_are_disjoint_and_unique() {
    let f = system_from_lines(
        &["x1", "x2"],
        &[
            "5 - 3x2^2 - 3x1^2 + x1^2*x2^2",
            "1 + 2x1*x2 - 5x1*x2^2 - 3x1^2*x2",
        ],
    );
    let out = polyhedral_solve(&f, &TrackerOptions::default(), Seed(23)).unwrap();
    assert_eq!(out.solutions.len(), 8);
    let certs = krawczyk_certify_all(&f, &out.solutions, &KrawczykOptions::default());
    assert!(certs.iter().all(|c| c.certified && c.unique));
    for c1 in &certs {
        // Unique boxes pairwise disjoint: every other certificate listed.
        assert_eq!(c1.distinct_from.len(), 7);
    }
}
