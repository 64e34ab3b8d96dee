use num_complex::Complex64;
use polytrace::bench::five_point_system;
use polytrace::nag::{monodromy_solve_seeded, NagOptions};
use polytrace::polyhedral::polyhedral_solve;
use polytrace::rng::Seed;
use polytrace::solve::{bezout_number, solution_set_distance, total_degree_solve};
use polytrace::text::system_from_lines;
use polytrace::tracker::TrackerOptions;

fn main() {
    // Lagrange critical-point system for the distance to a biquadratic curve.
    let f = system_from_lines(
        &["x1", "x2", "lam"],
        &[
            "5 - 3x2^2 - 3x1^2 + x1^2*x2^2",
            "lam*(x1 - 0.025) + 6x1 - 2x1*x2^2",
            "lam*(x2 - 0.2) + 6x2 - 2x1^2*x2",
        ],
    );
    println!("bezout = {}", bezout_number(&f).unwrap());
    let t0 = std::time::Instant::now();
    let poly = polyhedral_solve(&f, &TrackerOptions::default(), Seed(3)).unwrap();
    println!(
        "polyhedral: mv={} paths={} found={} in {:?}",
        poly.mixed_volume, poly.paths_tracked, poly.solutions.len(), t0.elapsed()
    );
    let t0 = std::time::Instant::now();
    let td = total_degree_solve(&f, &TrackerOptions::default(), Seed(3)).unwrap();
    println!(
        "total-degree: paths={} found={} in {:?}   set-distance={:.2e}",
        td.paths_tracked,
        td.solutions.len(),
        t0.elapsed(),
        solution_set_distance(&poly.solutions, &td.solutions)
    );

    // Five-point relative pose by seeded monodromy over the image data.
    let t0 = std::time::Instant::now();
    let inst = five_point_system(Seed(21)).unwrap();
    let truth: Vec<Complex64> = inst.true_depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
    let out = monodromy_solve_seeded(
        &inst.family,
        &inst.image_parameters,
        &[truth.clone()],
        Some(20),
        &NagOptions::default(),
        Seed(22),
        40,
    );
    match out {
        Ok(o) => {
            let nearest = o
                .solutions
                .iter()
                .map(|s| polytrace::algebra::vec_dist(s, &truth))
                .fold(f64::INFINITY, f64::min);
            println!(
                "5pt: {} solutions in {} loops, truth-dist {:.2e}, {:?}",
                o.solutions.len(), o.loops_used, nearest, t0.elapsed()
            );
        }
        Err(e) => println!("5pt FAILED: {e} after {:?}", t0.elapsed()),
    }
}
