use proptest::prelude::*;

use taut_core::partition::{enumerate_partitions, Partition};
use taut_core::polyring::{q, Poly, Q};
use taut_core::presentation::{poly_from_json, poly_to_json, Flags, Presentation};
use taut_core::quotient::GradedQuotient;
use taut_core::symmetry::{act_on_poly, GroupAction};
use taut_core::partition::Permutation;

const NV: usize = 3;

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u8..3, NV), -5i64..6, 1i64..4), 0..5)
        .prop_map(|terms| Poly::from_terms(NV, terms.into_iter().map(|(m, n, d)| (m, q(n, d)))))
}

fn rational() -> impl Strategy<Value = Q> {
    (-7i64..8, 1i64..5).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn poly_json_round_trips(a in small_poly()) {
        prop_assert_eq!(poly_from_json(NV, &poly_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn partition_text_round_trips(d in 2u8..7, pick in any::<prop::sample::Index>()) {
        let parts = enumerate_partitions(d).unwrap();
        let p = parts[pick.index(parts.len())];
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }
}

/// Quotient data shared by the slower properties.
struct P13 {
    pres: Presentation,
    quot: GradedQuotient,
}

fn p13() -> &'static P13 {
    use std::sync::OnceLock;
    static CELL: OnceLock<P13> = OnceLock::new();
    CELL.get_or_init(|| {
        let pres = Presentation::build(1, 3, Flags::default()).unwrap();
        let quot = GradedQuotient::new(&pres, pres.dim + 2).unwrap();
        P13 { pres, quot }
    })
}

/// Random homogeneous element of degree `k` in the `(1,3)` ring.
fn homogeneous(k: u32) -> impl Strategy<Value = Poly> {
    let monos = p13().pres.ring().monomials(k);
    let n = p13().pres.ring().nvars();
    prop::collection::vec((prop::sample::select(monos), rational()), 0..6)
        .prop_map(move |terms| Poly::from_terms(n, terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_linear(
        (a, b, x, y) in (0u32..6).prop_flat_map(|k| (homogeneous(k), homogeneous(k), rational(), rational()))
    ) {
        let quot = &p13().quot;
        let lhs = quot.normal_form(&(&(&a * &x) + &(&b * &y))).unwrap();
        let rhs = &(&quot.normal_form(&a).unwrap() * &x) + &(&quot.normal_form(&b).unwrap() * &y);
        prop_assert_eq!(lhs, rhs);
        // Normal forms are fixed points.
        let nf = quot.normal_form(&a).unwrap();
        prop_assert_eq!(quot.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn reynolds_is_a_projection(a in homogeneous(3)) {
        let ctx = p13().pres.context();
        let action = GroupAction::new(ctx);
        let r = action.reynolds(&a);
        prop_assert_eq!(action.reynolds(&r), r.clone());
        for s in Permutation::all(3) {
            prop_assert_eq!(act_on_poly(ctx, &s, &r), r.clone());
        }
    }

    #[test]
    fn relabelling_preserves_hilbert(
        vars in Just((0..p13().pres.ring().nvars()).collect::<Vec<usize>>()).prop_shuffle(),
        rels in Just((0..p13().pres.relations.len()).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let (ring, gens) = p13().pres.permuted(&rels, &vars);
        let top = p13().quot.max_degree();
        prop_assert_eq!(GradedQuotient::from_gens(ring, &gens, top).hilbert(), p13().quot.hilbert());
    }
}
