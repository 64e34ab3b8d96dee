use num_complex::Complex64;
use polytrace::algebra::vec_dist;
use polytrace::bench::five_point_system;
use polytrace::rng::Seed;
use polytrace::solve::{gauss_newton_filter, square_up, total_degree_solve, GaussNewtonOptions};
use polytrace::tracker::TrackerOptions;

fn main() {
    let inst = five_point_system(Seed(21)).unwrap();
    let truth: Vec<Complex64> = inst.true_depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
    let (g, _) = square_up(&inst.system, Seed(77)).unwrap();
    let t0 = std::time::Instant::now();
    let out = total_degree_solve(&g, &TrackerOptions::default(), Seed(78)).unwrap();
    eprintln!("squared solve: {} candidates from {} paths in {:?}",
        out.solutions.len(), out.paths_tracked, t0.elapsed());
    let kept = gauss_newton_filter(&inst.system, &out.solutions, &GaussNewtonOptions::default());
    let mut uniq: Vec<Vec<Complex64>> = Vec::new();
    for r in kept {
        if !uniq.iter().any(|s| vec_dist(s, &r.point) < 1e-6) {
            uniq.push(r.point);
        }
    }
    let nearest = uniq.iter().map(|s| vec_dist(s, &truth)).fold(f64::INFINITY, f64::min);
    eprintln!("true solution count: {}  truth-dist {nearest:.2e}", uniq.len());
}
