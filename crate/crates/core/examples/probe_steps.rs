use num_complex::Complex64;
use polytrace::bench::five_point_system;
use polytrace::rng::{complex_normal, Seed};
use polytrace::solve::{combine_rows, ParameterPath, ParametricFamily};
use polytrace::tracker::{euler_predict, newton_correct, FrozenSystem, Homotopy, TrackerOptions};

fn main() {
    let inst = five_point_system(Seed(21)).unwrap();
    let truth: Vec<Complex64> = inst.true_depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
    let mut rng = Seed(1234).rng();
    let p1: Vec<Complex64> = inst.image_parameters.iter().map(|c| c + complex_normal(&mut rng)).collect();
    let n = inst.family.nvars();
    let mut m = polytrace::algebra::CMatrix::zeros(n, inst.family.len());
    for i in 0..n { for j in 0..inst.family.len() { m[(i, j)] = complex_normal(&mut rng); } }
    let sq = ParametricFamily::new(combine_rows(inst.family.template(), &m), n);
    let path = ParameterPath::new(sq, inst.image_parameters.clone(), p1);
    // manual tracking loop with diagnostics
    let opts = TrackerOptions::default();
    let mut x = truth.clone();
    let mut t = 1.0f64;
    let mut dt = opts.initial_step;
    let (mut accepted, mut rejected) = (0usize, 0usize);
    let mut min_dt = 1.0f64;
    while t > opts.t_end_epsilon {
        let step = dt.min(t);
        let t_next = if step >= t { 0.0 } else { t - step };
        let ok = euler_predict(&path, &x, t, -step).and_then(|pred| {
            let frozen = FrozenSystem { homotopy: &path, t: t_next };
            newton_correct(&frozen, &pred, &opts)
        });
        match ok {
            Ok(out) if out.converged || out.last_step_norm <= opts.corrector_tolerance => {
                x = out.point; t = t_next; dt = (dt * opts.step_growth).min(opts.initial_step);
                accepted += 1;
            }
            _ => { dt *= 0.5; rejected += 1; min_dt = min_dt.min(dt); }
        }
        if accepted + rejected > 2000 { break; }
    }
    eprintln!("accepted {accepted} rejected {rejected} min_dt {min_dt:.2e}");
}
