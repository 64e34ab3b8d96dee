use polytrace::bench::{kuramoto_count, kuramoto_system, Graph};
use polytrace::polyhedral::polyhedral_solve;
use polytrace::rng::Seed;
use polytrace::tracker::TrackerOptions;

fn main() {
    for (name, g) in [
        ("K3", Graph::complete(3)),
        ("T3", Graph::path(3)),
        ("C4", Graph::cycle(4)),
    ] {
        let count = kuramoto_count(&g, Seed(5)).unwrap();
        let inst = kuramoto_system(&g, Seed(7)).unwrap();
        let t0 = std::time::Instant::now();
        let out = polyhedral_solve(&inst.system, &TrackerOptions::default(), Seed(9)).unwrap();
        println!(
            "{name}: predicted {count}, MV_of_sc_system {}, paths {}, found {} ({:?})",
            out.mixed_volume,
            out.paths_tracked,
            out.solutions.len(),
            t0.elapsed()
        );
    }
}
