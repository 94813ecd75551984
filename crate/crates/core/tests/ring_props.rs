use num_bigint::BigInt;
use proptest::prelude::*;
use tmfres::ring::{normalize, normalize_with, Gen, RawExpression, RawTerm, RingElement, RingId, Strategy as Rewrite};

fn raw_term(max_x: u32, max_y: u32) -> impl Strategy<Value = RawTerm> {
    (-6i64..=6, -20i64..=20, -20i64..=20, 0..=max_x, 0..=max_y).prop_map(|(c, s, t, x, y)| RawTerm {
        s_exp: s,
        t_exp: t,
        x_exp: x,
        y_exp: y,
        coeff: BigInt::from(c),
    })
}

fn raw(ring: RingId) -> impl Strategy<Value = RawExpression> {
    let max_y = if ring.has_y() { 5 } else { 0 };
    prop::collection::vec(raw_term(8, max_y), 0..5).prop_map(RawExpression)
}

fn element(ring: RingId) -> impl Strategy<Value = RingElement> {
    let gens: Vec<Gen> = Gen::ALL.iter().copied().filter(|g| ring.has_y() || *g != Gen::Y).collect();
    prop::collection::vec((prop::sample::select(gens), -12i64..=12, -12i64..=12, -4i64..=4), 0..5).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(RingElement::zero(ring), |acc, (g, s, t, c)| &acc + &RingElement::monomial(ring, s, t, g, c))
    })
}

fn any_ring() -> impl Strategy<Value = RingId> {
    prop::sample::select(vec![RingId::R, RingId::RPrime, RingId::RModY])
}

fn raw_product(a: &RawExpression, b: &RawExpression) -> RawExpression {
    let mut out = Vec::new();
    for p in &a.0 {
        for q in &b.0 {
            out.push(RawTerm {
                s_exp: p.s_exp + q.s_exp,
                t_exp: p.t_exp + q.t_exp,
                x_exp: p.x_exp + q.x_exp,
                y_exp: p.y_exp + q.y_exp,
                coeff: &p.coeff * &q.coeff,
            });
        }
    }
    RawExpression(out)
}

fn is_canonical(e: &RingElement) -> bool {
    e.terms().iter().all(|(m, c)| {
        *c != BigInt::ZERO
            && (e.ring().has_y() || m.gen != Gen::Y)
            && (!e.ring().is_periodic() || (0..8).contains(&m.s_exp))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rewriting_strategies_agree((ring, e) in any_ring().prop_flat_map(|r| (Just(r), raw(r)))) {
        let a = normalize_with(&e, ring, Rewrite::MeasureFirst).unwrap();
        let b = normalize_with(&e, ring, Rewrite::EagerWindow).unwrap();
        prop_assert!(is_canonical(&a));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normal_form_is_multiplicative((ring, a, b) in any_ring().prop_flat_map(|r| (Just(r), raw(r), raw(r)))) {
        let whole = normalize(&raw_product(&a, &b), ring).unwrap();
        let parts = &normalize(&a, ring).unwrap() * &normalize(&b, ring).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn ring_axioms((a, b, c) in (element(RingId::R), element(RingId::R), element(RingId::R))) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &RingElement::one(RingId::R), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn duality_is_an_involutive_homomorphism(
        (_ring, a, b) in prop::sample::select(vec![RingId::R, RingId::RPrime])
            .prop_flat_map(|r| (Just(r), element(r), element(r)))
    ) {
        prop_assert_eq!(a.dualize().dualize(), a.clone());
        prop_assert_eq!((&a * &b).dualize(), &a.dualize() * &b.dualize());
        prop_assert_eq!((&a + &b).dualize(), &a.dualize() + &b.dualize());
        prop_assert!(is_canonical(&a.dualize()));
    }

    #[test]
    fn maps_to_r_mod_y_are_homomorphisms(
        (a, b) in (element(RingId::R), element(RingId::R)),
        (c, d) in (element(RingId::RPrime), element(RingId::RPrime)),
    ) {
        prop_assert_eq!((&a * &b).project_mod_y(), &a.project_mod_y() * &b.project_mod_y());
        prop_assert_eq!((&a + &b).project_mod_y(), &a.project_mod_y() + &b.project_mod_y());
        prop_assert_eq!((&c * &d).embed_gprime(), &c.embed_gprime() * &d.embed_gprime());
    }

    #[test]
    fn normalization_is_idempotent_and_display_round_trips((ring, e) in any_ring().prop_flat_map(|r| (Just(r), element(r)))) {
        let text = e.to_string();
        prop_assert_eq!(RingElement::parse(&text, ring).unwrap(), e.clone());
        prop_assert_eq!(RingElement::parse(&RingElement::parse(&text, ring).unwrap().to_string(), ring).unwrap(), e);
    }

    #[test]
    fn powers_agree_with_repeated_products(k in 0u32..12) {
        let x = RingElement::x(RingId::R);
        let slow = (0..k).fold(RingElement::one(RingId::R), |acc, _| &acc * &x);
        prop_assert_eq!(x.pow(k), slow);
    }

    #[test]
    fn parser_never_panics(text in "[-+ 0-9stxy^*{}()]{0,24}") {
        let _ = RingElement::parse(&text, RingId::R);
    }
}

#[test]
fn y_terms_rejected_outside_r() {
    for ring in [RingId::RPrime, RingId::RModY] {
        let err = normalize(&RawExpression::term(1, 0, 0, 0, 1), ring).unwrap_err();
        assert_eq!(err.code(), "Y_IN_Y_FREE_RING");
    }
}
