use num_complex::Complex64;
use polytrace::algebra::{vec_dist, LaurentSystem};
use polytrace::bench::five_point_system;
use polytrace::rng::Seed;
use polytrace::solve::{gauss_newton_filter, square_up, total_degree_solve, GaussNewtonOptions};
use polytrace::tracker::TrackerOptions;

fn main() {
    let inst = five_point_system(Seed(21)).unwrap();
    let truth: Vec<Complex64> = inst.true_depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
    // The ten same-distance equations alone (drop the orientation cubic).
    let distance_only = LaurentSystem::new(9, inst.system.polys()[..10].to_vec());
    let orientation = inst.system.polys()[10].clone();
    let (g, _) = square_up(&distance_only, Seed(5)).unwrap();
    let t0 = std::time::Instant::now();
    let opts = TrackerOptions {
        divergence_norm: 1e8,
        min_step: 1e-12,
        max_corrector_iters: 4,
        ..TrackerOptions::default()
    };
    let out = total_degree_solve(&g, &opts, Seed(6)).unwrap();
    eprintln!("distance-only squared: {} candidates from {} paths in {:?}",
        out.solutions.len(), out.paths_tracked, t0.elapsed());
    let kept = gauss_newton_filter(&distance_only, &out.solutions, &GaussNewtonOptions::default());
    let mut uniq: Vec<Vec<Complex64>> = Vec::new();
    for r in kept {
        if !uniq.iter().any(|s| vec_dist(s, &r.point) < 1e-6) {
            uniq.push(r.point);
        }
    }
    eprintln!("distance-system solutions: {}", uniq.len());
    let mut full = 0usize;
    let mut nearest = f64::INFINITY;
    for s in &uniq {
        let scale = orientation.eval_abs(s).max(1.0);
        let v = orientation.eval(s).unwrap().norm() / scale;
        if v < 1e-7 {
            full += 1;
            nearest = nearest.min(vec_dist(s, &truth));
        }
    }
    eprintln!("full-system (orientation-consistent) solutions: {full}, truth-dist {nearest:.2e}");
}
