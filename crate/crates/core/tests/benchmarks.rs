use cuckoo_core::benchmarks::benchmark_registry;
use cuckoo_core::RngState;

#[test]
fn random_samples_never_beat_known_optimum() {
    for e in benchmark_registry().iter().filter(|e| !e.stochastic) {
        let p = e.problem(None).unwrap();
        let f_star = e.optimum_value(p.dim());
        let mut rng = RngState::new(u64::from(e.id));
        let samples = if p.dim() > 32 { 100_000 } else { 1_000_000 };
        for _ in 0..samples {
            let x = p.bounds().sample(&mut rng);
            let f = p.objective_uncounted(&x, &mut rng);
            assert!(f >= f_star - 1e-6, "{} at {x:?}: {f} < {f_star}", e.name);
        }
    }
}

#[test]
fn optimum_point_attains_optimum_value() {
    for e in benchmark_registry() {
        for dim in [2, 5, 16] {
            if e.check_dim(dim).is_err() {
                continue;
            }
            let x = e.optimum_point(dim);
            let eps = vec![0.37; dim];
            let f = e.value_with_noise(&x, &eps);
            assert!(
                (f - e.optimum_value(dim)).abs() <= 1e-5,
                "{} d={dim}: {f}",
                e.name
            );
        }
    }
}
