use num_complex::Complex64;
use polytrace::algebra::vec_dist;
use polytrace::bench::five_point_system;
use polytrace::rng::{complex_normal, Seed};
use polytrace::solve::{combine_rows, gauss_newton_filter, GaussNewtonOptions, ParameterPath, ParametricFamily};
use polytrace::tracker::{track_all, TrackerOptions};

fn main() {
    let inst = five_point_system(Seed(21)).unwrap();
    let truth: Vec<Complex64> = inst.true_depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
    let p0 = inst.image_parameters.clone();
    let mut rng = Seed(22).rng();
    let n = inst.family.nvars();
    let mut m = polytrace::algebra::CMatrix::zeros(n, inst.family.len());
    for i in 0..n { for j in 0..inst.family.len() { m[(i, j)] = complex_normal(&mut rng); } }
    let sq = ParametricFamily::new(combine_rows(inst.family.template(), &m), n);
    let full = inst.family.at(&p0).unwrap();
    let scale: f64 = 0.4 * p0.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let mut opts = TrackerOptions::default();
    opts.corrector_tolerance = 1e-8;
    opts.max_corrector_iters = 4;
    let mut solutions = vec![truth.clone()];
    for lp in 0..40 {
        let t0 = std::time::Instant::now();
        let p1: Vec<Complex64> = p0.iter().map(|c| c + complex_normal(&mut rng) * scale).collect();
        let p2: Vec<Complex64> = p0.iter().map(|c| c + complex_normal(&mut rng) * scale).collect();
        let mut current = solutions.clone();
        let mut steps = 0usize;
        for (from, to) in [(p0.clone(), p1.clone()), (p1.clone(), p2.clone()), (p2.clone(), p0.clone())] {
            let path = ParameterPath::new(sq.clone(), from, to);
            let (results, _) = track_all(&path, &current, &opts);
            steps += results.iter().map(|r| r.steps_taken).sum::<usize>();
            current = results.iter().filter(|r| r.is_success()).map(|r| r.endpoint.clone()).collect();
            if current.is_empty() { break; }
        }
        let kept = gauss_newton_filter(&full, &current, &GaussNewtonOptions::default());
        let before = solutions.len();
        for r in kept {
            if !solutions.iter().any(|s| vec_dist(s, &r.point) <= 1e-6 * 10.0) {
                solutions.push(r.point);
            }
        }
        eprintln!("loop {lp}: tracked {} pts, {} steps, {} -> {} solutions, {:?}",
            current.len(), steps, before, solutions.len(), t0.elapsed());
        if solutions.len() >= 20 { break; }
    }
    let nearest = solutions.iter().map(|s| vec_dist(s, &truth)).fold(f64::INFINITY, f64::min);
    eprintln!("final: {} solutions, truth-dist {nearest:.2e}", solutions.len());
}
