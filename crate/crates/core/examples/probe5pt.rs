use num_complex::Complex64;
use polytrace::bench::five_point_system;
use polytrace::nag::{monodromy_solve_seeded, NagOptions};
use polytrace::rng::Seed;

fn main() {
    let t0 = std::time::Instant::now();
    let inst = five_point_system(Seed(21)).unwrap();
    eprintln!("instance built in {:?}", t0.elapsed());
    let truth: Vec<Complex64> = inst.true_depths.iter().map(|&d| Complex64::new(d, 0.0)).collect();
    // Single-leg probe first.
    {
        use polytrace::solve::ParameterPath;
        use polytrace::tracker::{track_all, TrackerOptions};
        use polytrace::rng::complex_normal;
        let t1 = std::time::Instant::now();
        let mut rng = Seed(1234).rng();
        let p1: Vec<Complex64> = inst.image_parameters.iter().map(|c| c + complex_normal(&mut rng)).collect();
        // square up once like the solver does
        let n = inst.family.nvars();
        let mut m = polytrace::algebra::CMatrix::zeros(n, inst.family.len());
        for i in 0..n { for j in 0..inst.family.len() { m[(i, j)] = complex_normal(&mut rng); } }
        let sq = polytrace::solve::ParametricFamily::new(
            polytrace::solve::combine_rows(inst.family.template(), &m), n);
        eprintln!("squared family in {:?}", t1.elapsed());
        let t1 = std::time::Instant::now();
        let path = ParameterPath::new(sq.clone(), inst.image_parameters.clone(), p1.clone());
        eprintln!("path specialization in {:?}", t1.elapsed());
        let t1 = std::time::Instant::now();
        let (res, _) = track_all(&path, &[truth.clone()], &TrackerOptions::default());
        eprintln!("one path tracked: {:?} steps {} in {:?}", res[0].status, res[0].steps_taken, t1.elapsed());
    }
    let t0 = std::time::Instant::now();
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
            let nearest = o.solutions.iter()
                .map(|s| polytrace::algebra::vec_dist(s, &truth))
                .fold(f64::INFINITY, f64::min);
            eprintln!("5pt: {} solutions, {} loops, truth-dist {:.2e}, {:?}",
                o.solutions.len(), o.loops_used, nearest, t0.elapsed());
        }
        Err(e) => eprintln!("5pt FAILED: {e} after {:?}", t0.elapsed()),
    }
}
