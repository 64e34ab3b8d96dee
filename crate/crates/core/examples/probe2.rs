use polytrace::rng::Seed;
use polytrace::solve::{bezout_number, total_degree_solve};
use polytrace::polyhedral::{mixed_volume, polyhedral_solve};
use polytrace::text::system_from_lines;
use polytrace::tracker::TrackerOptions;

fn main() {
    let f = system_from_lines(
        &["x1", "x2", "lam"],
        &[
            "5 - 3x2^2 - 3x1^2 + x1^2*x2^2",
            "lam*(x1 - 0.025) + 6x1 - 2x1*x2^2",
            "lam*(x2 - 0.2) + 6x2 - 2x1^2*x2",
        ],
    );
    eprintln!("bezout = {}", bezout_number(&f).unwrap());
    let t = std::time::Instant::now();
    eprintln!("mv = {} in {:?}", mixed_volume(&f.supports(), Seed(3)).unwrap(), t.elapsed());
    let t = std::time::Instant::now();
    let td = total_degree_solve(&f, &TrackerOptions::default(), Seed(3)).unwrap();
    eprintln!("total-degree: {} from {} paths in {:?}", td.solutions.len(), td.paths_tracked, t.elapsed());
    let t = std::time::Instant::now();
    let poly = polyhedral_solve(&f, &TrackerOptions::default(), Seed(3)).unwrap();
    eprintln!("polyhedral: {} from {} paths in {:?}", poly.solutions.len(), poly.paths_tracked, t.elapsed());
}
