use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cmpair::divisor::ZDivisor;
use cmpair::example::{eisenstein_211, gaussian_401};
use cmpair::miller::miller_h;
use cmpair::PairingContext;

fn gaussian(c: &mut Criterion) {
    let ctx = PairingContext::new(gaussian_401().unwrap(), 0).unwrap();
    let e = ctx.curve();
    let o = ctx.order();
    let p = e.point(204, 283).unwrap();
    let q = e.point(56, 137).unwrap();
    let s = e.point(0, 0).unwrap();
    let alpha = o.elem(1, -2);
    let five = o.int(5);
    let r = ctx.cm().kernel_of(alpha).unwrap()[1];
    let d = ZDivisor::from_terms([(e.add(q, s), 1), (s, -1)]);

    c.bench_function("t_hat alpha = 1-2i, fixed S", |b| {
        b.iter(|| {
            ctx.t_hat_with_aux(black_box(p), black_box(q), alpha, s)
                .unwrap()
        })
    });
    c.bench_function("t_hat n = 5, seeded S", |b| {
        b.iter(|| ctx.t_hat(black_box(p), black_box(q), five).unwrap())
    });
    c.bench_function("w_hat alpha = 1-2i", |b| {
        b.iter(|| ctx.w_hat(black_box(p), black_box(r), alpha).unwrap())
    });
    c.bench_function("miller_h n = 400", |b| {
        b.iter(|| miller_h(e, black_box(p), 400, &d).unwrap())
    });
    c.bench_function("dlog in F_401^*", |b| {
        b.iter(|| ctx.logs().log(black_box(ctx.field().elem(175))).unwrap())
    });
}

fn eisenstein(c: &mut Criterion) {
    let ctx = PairingContext::new(eisenstein_211().unwrap(), 0).unwrap();
    let e = ctx.curve();
    let p = e.point(43, 50).unwrap();
    let q = e.point(18, 96).unwrap();
    let alpha = ctx.order().elem(3, 1);
    c.bench_function("t_hat alpha = 3+zeta", |b| {
        b.iter(|| ctx.t_hat(black_box(p), black_box(q), alpha).unwrap())
    });
}

criterion_group!(benches, gaussian, eisenstein);
criterion_main!(benches);
