use proptest::prelude::*;
use steenrod::ext::bar::{BarComplex, DEFAULT_BAR_BUDGET};
use steenrod::ext::{ext_dims, minimal_resolution, ExtChart, Resolver, Strategy as Build};
use steenrod::{a1, a2, build_standard, SteenrodModule};

#[test]
fn change_of_rings() {
    let a2a1 = build_standard("A2modA1").unwrap();
    let over_a2 = minimal_resolution(&a2a1, 13, 12).unwrap().generator_counts();
    let over_a1 = BarComplex::new(a1(), &SteenrodModule::trivial())
        .dimensions(12, DEFAULT_BAR_BUDGET)
        .unwrap();
    let nonzero = |m: std::collections::BTreeMap<(u32, i32), usize>| -> Vec<_> { m.into_iter().filter(|(_, d)| *d > 0).collect() };
    assert_eq!(nonzero(over_a2), nonzero(over_a1));
}

#[test]
fn padded_resolutions_minimize_to_the_same_counts() {
    for name in ["F2", "M1", "A2modA1"] {
        let m = build_standard(name).unwrap();
        let minimal = minimal_resolution(&m, 6, 16).unwrap();
        assert!(minimal.is_minimal() && minimal.check_d_squared());
        let padded = Resolver::new(a2(), m, 6, 16).strategy(Build::Padded).run().unwrap();
        let mut expected = minimal.generator_counts();
        expected.retain(|&(s, _), _| s < 6);
        assert_eq!(padded.ext_from_cochains(), expected, "{name}");
    }
}

#[test]
fn suspension_shifts_the_chart() {
    let bo1 = build_standard("BO(1)").unwrap();
    let base = ext_dims(&bo1, 6, 20).unwrap();
    let shifted = ext_dims(&bo1.suspend(8), 6, 28).unwrap();
    for s in 0..=6 {
        for n in 0..=14 {
            assert_eq!(base.dim_at(n, s), shifted.dim_at(n + 8, s), "(n, s) = ({n}, {s})");
        }
    }
}

#[test]
fn direct_sums_add() {
    let a = build_standard("BO(1)").unwrap();
    let b = build_standard("M1").unwrap();
    let sum = ext_dims(&SteenrodModule::direct_sum(&a, &b), 5, 16).unwrap().dims();
    let (da, db) = (ext_dims(&a, 5, 16).unwrap().dims(), ext_dims(&b, 5, 16).unwrap().dims());
    for (k, d) in &sum {
        assert_eq!(*d, da.get(k).unwrap_or(&0) + db.get(k).unwrap_or(&0), "{k:?}");
    }
}

fn chart_text(m: &SteenrodModule) -> String {
    ExtChart::from_resolution(&minimal_resolution(m, 5, 18).unwrap()).to_csv()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn chart_ignores_generator_order(
        (m, p) in prop::sample::select(vec!["BO(1)", "A2modA1", "M1"])
            .prop_map(|n| build_standard(n).unwrap())
            .prop_flat_map(|m| { let n = m.dim(); (Just(m), Just((0..n).collect::<Vec<_>>()).prop_shuffle()) })
    ) {
        prop_assert_eq!(chart_text(&m.permute(&p)), chart_text(&m));
    }
}
