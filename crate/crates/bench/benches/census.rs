use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use spexlab::census::{census, CensusOptions, Mode};
use spexlab::constructions::complete;

fn census_cliques(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    let opts = CensusOptions { workers: 1, ..CensusOptions::default() };
    for (r, n, mode) in [(3usize, 7usize, Mode::Full), (3, 8, Mode::Full), (4, 7, Mode::Full), (3, 9, Mode::Maximal)] {
        let family = vec![complete(r).unwrap()];
        let id = BenchmarkId::new(format!("k{r}_{mode}"), n);
        group.bench_with_input(id, &n, |b, &n| {
            b.iter(|| census(black_box(n), &family, mode, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, census_cliques);
criterion_main!(benches);
