use criterion::{criterion_group, criterion_main, Criterion};
use lamina_core::lamination::Leaf;
use lamina_core::vistree::visibility_tree_of;
use lamina_core::{context_of, SublimbDesc};

fn desc(leaf: &str, p: u32, q: u32) -> SublimbDesc {
    let s = Leaf::checked(leaf.parse().unwrap()).unwrap();
    SublimbDesc::new(&context_of(&s).unwrap(), p, q).unwrap()
}

fn bench_trees(c: &mut Criterion) {
    let third = desc("13/31-18/31", 1, 3);
    c.bench_function("visibility_tree/13-31/third", |b| {
        b.iter(|| visibility_tree_of(&third).unwrap())
    });
    let half = desc("5/31-6/31", 1, 2);
    c.bench_function("visibility_tree/5-31/half", |b| {
        b.iter(|| visibility_tree_of(&half).unwrap())
    });
}

fn bench_pairs(c: &mut Criterion) {
    let d = desc("13/31-18/31", 1, 3);
    c.bench_function("pairs_behind/gateway/15", |b| {
        b.iter(|| d.ctx.pairs_behind(&d.r_b, d.qm()).unwrap())
    });
}

criterion_group!(benches, bench_trees, bench_pairs);
criterion_main!(benches);
