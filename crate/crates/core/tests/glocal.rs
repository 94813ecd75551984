use proptest::prelude::*;
use steenrod::ext::ext_dims;
use steenrod::{build_standard, SteenrodModule};
use tmfres::decomposition::{decompose_bo, DecompositionReport, Locality, Source};
use tmfres::glocal::{census_cross_check, census_window, homotopy_series_glocal, report_generators, BigradedSeries, Window};

fn window() -> Window {
    Window {
        n_min: 0,
        n_max: 80,
        s_min: 0,
        s_max: 6,
        v2_8_max: 1,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_is_additive(a in 0u64..24, b in 0u64..24) {
        let ra = decompose_bo(a, Locality::G).unwrap();
        let rb = decompose_bo(b, Locality::G).unwrap();
        let both = DecompositionReport::from_summands(
            Locality::G,
            Source::Element("sum".into()),
            ra.summands.iter().chain(&rb.summands).cloned(),
        )
        .unwrap();
        let sa = homotopy_series_glocal(&ra, window()).unwrap();
        let sb = homotopy_series_glocal(&rb, window()).unwrap();
        let sum = homotopy_series_glocal(&both, window()).unwrap();
        for n in 0..=80 {
            for s in 0..=6 {
                prop_assert_eq!(sum.total_dim(n, s), sa.total_dim(n, s) + sb.total_dim(n, s));
            }
        }
    }

    #[test]
    fn series_is_h21_periodic_above_the_generators(j in 0u64..16) {
        let r = decompose_bo(j, Locality::G).unwrap();
        let gens = report_generators(&r, 0).unwrap();
        let s = BigradedSeries::from_generators(&gens, window());
        let top = gens.iter().map(|g| g.s).max().unwrap_or(0);
        for n in 0..=70 {
            for f in top..6 {
                prop_assert_eq!(s.total_dim(n + 5, f + 1), s.total_dim(n, f));
            }
        }
    }
}

#[test]
fn census_agrees_with_bo_side() {
    let checks = census_cross_check(40, census_window(40), &[-3]).unwrap();
    assert!(checks[0].matches(), "{}", checks[0]);
}

/// The g-local bo1^2 generator sits at reduced stem 11 with one nonzero v1-multiple;
/// in A(2)-Ext of BO(1)^2 it shows up as h21-translates (31,4) and (33,5) of those classes,
/// with (35,6) empty.
#[test]
fn bo1_squared_generator_in_the_chart() {
    let bo1 = build_standard("BO(1)").unwrap();
    let chart = ext_dims(&SteenrodModule::tensor(&bo1, &bo1), 7, 42).unwrap();
    assert!(chart.dim_at(31, 4) >= 1);
    assert!(chart.dim_at(33, 5) >= 1);
    assert_eq!(chart.dim_at(35, 6), 0);
}
