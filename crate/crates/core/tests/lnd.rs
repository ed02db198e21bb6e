mod common;

use common::{poly, scalar};
use proptest::prelude::*;
use singclass_core::exactmath::{vars, Field, Poly, Vars};
use singclass_core::lnd::{
    build_suspension, default_cap, exp_flow, homogeneous_parts, is_locally_nilpotent, orbit_avoids, Derivation,
    NilpotencyStatus,
};
use singclass_core::quotients::{descend_lnd, CyclicQuotient};

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

fn derivation() -> impl Strategy<Value = Derivation> {
    prop::collection::vec(poly(Field::Rational, xyz(), 3, 3), 3)
        .prop_map(|images| Derivation::new(Field::Rational, xyz(), images).unwrap())
}

/// Up to four variables, total degree at most 6, with a power of `x1`
/// added so that `∂v = ∂p/∂x1` is usually nonzero.
fn suspension_input() -> impl Strategy<Value = Poly> {
    (1usize..=4).prop_flat_map(|n| {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let v: Vars = names.into_iter().collect();
        (poly(Field::Rational, v.clone(), 4, 2), 1u32..=6, 1i64..=4).prop_map(move |(p, k, c)| {
            let lead = Poly::var(Field::Rational, v.clone(), 0).pow(k).unwrap().scale(&scalar(Field::Rational, c, 0)).unwrap();
            &p + &lead
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(
        d in derivation(),
        f in poly(Field::Rational, xyz(), 4, 3),
        g in poly(Field::Rational, xyz(), 4, 3),
    ) {
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &d.apply(&g).unwrap()) + &(&g * &d.apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(d.apply(&(&f + &g)).unwrap(), &d.apply(&f).unwrap() + &d.apply(&g).unwrap());
    }

    #[test]
    fn homogeneous_parts_reconstruct(d in derivation(), w in prop::collection::vec(1u64..5, 3)) {
        let parts = homogeneous_parts(&d, &w).unwrap();
        let mut sum = Derivation::zero(Field::Rational, xyz());
        for (deg, part) in &parts {
            sum = sum.try_add(part).unwrap();
            for j in 0..3 {
                for (wdeg, _) in part.image(j).homogeneous_components(&w) {
                    prop_assert_eq!(wdeg as i128, w[j] as i128 + deg);
                }
            }
        }
        prop_assert_eq!(sum, d);
    }

    #[test]
    fn suspensions_are_nilpotent_and_kill_relation(p in suspension_input()) {
        prop_assume!(!p.is_constant());
        let s = build_suspension(&p).unwrap();
        prop_assert!(s.derivation.apply(&s.relation).unwrap().is_zero());
        let cap = 2 + p.total_degree().unwrap() as usize;
        let v = is_locally_nilpotent(&s.derivation, cap).unwrap();
        prop_assert_eq!(v.status, NilpotencyStatus::Nilpotent);
    }
}

#[test]
fn suspension_flows_and_group_law() {
    let cases: [&[i64]; 3] = [&[0, 0, 1], &[0, 0, 0, 1], &[0, 1, 0, 0, 0, 1]];
    for coeffs in cases {
        let p = Poly::univariate(Field::Rational, "x1", coeffs);
        let s = build_suspension(&p).unwrap();
        let flow = exp_flow(&s.derivation, default_cap(&s.derivation)).unwrap();
        assert!(flow.is_identity_at_zero().unwrap(), "{p}");
        assert!(flow.satisfies_group_law().unwrap(), "{p}");
        assert!(flow.preserves(&s.relation).unwrap(), "{p}");
    }
}

#[test]
fn descended_a2_flow() {
    let r = descend_lnd(&CyclicQuotient::new(3, 2).unwrap()).unwrap();
    let p = r.presentation().unwrap();
    let flow = exp_flow(&p.derivation, default_cap(&p.derivation)).unwrap();
    let shown: Vec<String> = flow.images().iter().map(ToString::to_string).collect();
    assert_eq!(shown, ["u", "u*t + w", "u^2*t^3 + 3*u*w*t^2 + 3*w^2*t + v"]);
    assert!(flow.preserves(&p.relations[0]).unwrap());

    let q = Field::Rational;
    let origin = [scalar(q, 0, 0), scalar(q, 0, 0), scalar(q, 0, 0)];
    let start = [scalar(q, 1, 0), scalar(q, 0, 0), scalar(q, 0, 0)];
    let report = orbit_avoids(&flow, &p.relations, &origin, &start).unwrap();
    assert!(report.on_variety);
    assert!(report.avoids);
}

#[test]
fn non_nilpotent_flow_is_refused() {
    let v = vars(&["x", "y"]);
    let y = Poly::var(Field::Rational, v.clone(), 1);
    let d = Derivation::new(Field::Rational, v.clone(), vec![Poly::zero(Field::Rational, v), y]).unwrap();
    assert!(exp_flow(&d, 20).is_err());
}
