use cmpair::example::{eisenstein_211, gaussian_401, worked_example, ExampleOptions};
use cmpair::{PairingContext, Point, QuadInt};
use proptest::prelude::*;
use proptest::sample::Index;

struct Instance {
    ctx: PairingContext,
    alpha: QuadInt,
    left: Vec<Point>,
    right: Vec<Point>,
}

fn instance(eisenstein: bool, seed: u64) -> Instance {
    let (cm, alpha) = if eisenstein {
        let cm = eisenstein_211().unwrap();
        let a = cm.order().elem(3, 1);
        (cm, a)
    } else {
        let cm = gaussian_401().unwrap();
        let a = cm.order().elem(1, -2);
        (cm, a)
    };
    let left = cm.kernel_of(alpha.conj()).unwrap();
    let right = cm.kernel_of(alpha).unwrap();
    Instance {
        ctx: PairingContext::new(cm, seed).unwrap(),
        alpha,
        left,
        right,
    }
}

fn small() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -6i64..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn t_hat_is_sesquilinear(
        eis in any::<bool>(),
        g in small(),
        d in small(),
        i in any::<Index>(),
        j in any::<Index>(),
    ) {
        let inst = instance(eis, 1);
        let c = &inst.ctx;
        let o = c.order();
        let (gamma, delta) = (o.elem(g.0, g.1), o.elem(d.0, d.1));
        let pts = c.curve().points().unwrap();
        let p = *i.get(&inst.left);
        let q = *j.get(pts);
        let lhs = c.t_hat(c.cm().apply_r(gamma, p).unwrap(), c.cm().apply_r(delta, q).unwrap(), inst.alpha).unwrap();
        let base = c.t_hat(p, q, inst.alpha).unwrap();
        let rhs = c.pow_value(&base, gamma.conj() * delta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_hat_ignores_the_auxiliary_point(
        eis in any::<bool>(),
        i in any::<Index>(),
        j in any::<Index>(),
        s in any::<Index>(),
        t in any::<Index>(),
    ) {
        let inst = instance(eis, 2);
        let c = &inst.ctx;
        let pts = c.curve().points().unwrap();
        let p = *i.get(&inst.left);
        let q = *j.get(pts);
        let a = c.t_hat_with_aux(p, q, inst.alpha, *s.get(pts));
        let b = c.t_hat_with_aux(p, q, inst.alpha, *t.get(pts));
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.reduced, b.reduced);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn w_hat_is_torsion_and_skew_hermitian(
        eis in any::<bool>(),
        i in any::<Index>(),
        j in any::<Index>(),
    ) {
        let inst = instance(eis, 3);
        let c = &inst.ctx;
        let o = c.order();
        let p = *i.get(&inst.left);
        let q = *j.get(&inst.right);
        let w = c.w_hat(p, q, inst.alpha).unwrap();
        prop_assert!(w.raw.pow(inst.alpha).is_identity());
        let back = c.w_hat(q, p, inst.alpha.conj()).unwrap();
        prop_assert!(w.raw.mul(&back.raw.conj(o)).is_identity());
    }

    #[test]
    fn worked_example_holds_for_any_seed(seed in any::<u64>()) {
        let r = worked_example(ExampleOptions { seed, ..Default::default() }).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }
}

#[test]
fn t_hat_of_the_point_at_infinity_is_trivial() {
    let inst = instance(false, 0);
    let c = &inst.ctx;
    let p = inst.left[1];
    assert!(c
        .t_hat(p, Point::Infinity, inst.alpha)
        .unwrap()
        .is_identity());
    assert!(c
        .t_hat(Point::Infinity, p, inst.alpha)
        .unwrap()
        .is_identity());
}
