use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use dampwave::decay::{alpha_sup, norm_at, AlphaQuery, ProblemSetup, Quantity};
use dampwave::spectral::kernels_with_mu;
use dampwave::{RadialProfile, SymbolSpec, ZoneSelect};

fn kernel_regimes(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernels");
    for (label, r, mu) in [("oscillatory", 0.3, 1.0), ("confluent", 2.0, 1.0), ("overdamped", 50.0, 1.0), ("stiff", 1e6, 1e6)] {
        g.bench_function(label, |b| b.iter(|| kernels_with_mu(black_box(7.5), black_box(r), black_box(mu))));
    }
    g.finish();
}

fn zone_norms(c: &mut Criterion) {
    let sym = SymbolSpec::power_law(1.0).unwrap();
    let p = ProblemSetup::new(sym, 3, RadialProfile::gaussian(1.0), RadialProfile::gaussian(1.0));
    let mut g = c.benchmark_group("radial_l2");
    g.sample_size(20);
    for zone in [ZoneSelect::Interior, ZoneSelect::Exterior] {
        g.bench_function(zone.as_str(), |b| b.iter(|| norm_at(&p, Quantity::SolutionItself, zone, black_box(1e3)).unwrap()));
    }
    g.finish();
}

fn alpha(c: &mut Criterion) {
    let q = AlphaQuery::new(SymbolSpec::parse("logarithmic:gamma=1").unwrap(), 3, 0.0);
    c.bench_function("alpha_sup/logarithmic", |b| b.iter(|| alpha_sup(black_box(&q)).unwrap()));
}

criterion_group!(benches, kernel_regimes, zone_norms, alpha);
criterion_main!(benches);
