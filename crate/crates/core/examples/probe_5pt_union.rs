use num_complex::Complex64;
use polytrace::algebra::{vec_dist, LaurentSystem};
use polytrace::bench::five_point_system;
use polytrace::rng::Seed;
use polytrace::solve::{gauss_newton_filter, square_up, total_degree_solve, GaussNewtonOptions};
use polytrace::tracker::TrackerOptions;

fn main() {
    let inst = five_point_system(Seed(21)).unwrap();
    let truth: Vec<Complex64> = inst.true_depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
    let distance_only = LaurentSystem::new(9, inst.system.polys()[..10].to_vec());
    let orientation = inst.system.polys()[10].clone();
    let opts = TrackerOptions {
        divergence_norm: 1e8,
        min_step: 1e-12,
        max_corrector_iters: 4,
        ..TrackerOptions::default()
    };
    let mut uniq: Vec<Vec<Complex64>> = Vec::new();
    for sq_seed in [5u64, 105, 205] {
        let (g, _) = square_up(&distance_only, Seed(sq_seed)).unwrap();
        let out = total_degree_solve(&g, &opts, Seed(sq_seed + 1)).unwrap();
        let failures = out
            .path_results
            .iter()
            .filter(|r| !r.is_success() && r.status != polytrace::tracker::PathStatus::Diverged)
            .count();
        let kept = gauss_newton_filter(&distance_only, &out.solutions, &GaussNewtonOptions::default());
        let mut new = 0;
        for r in kept {
            if !uniq.iter().any(|s| vec_dist(s, &r.point) < 1e-6) {
                uniq.push(r.point);
                new += 1;
            }
        }
        eprintln!("seed {sq_seed}: {} non-divergent failures, +{new} -> {} distance solutions", failures, uniq.len());
    }
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
    eprintln!("union: {} distance solutions, {} orientation-consistent, truth-dist {nearest:.2e}", uniq.len(), full);
}
