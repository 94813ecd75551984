//! Infinite `h_0`-towers in an Ext chart, compared with the monomial count
//! of `F2[v_1^4, v_2^2]` on a set of generator offsets.

use std::fmt;

use crate::error::{Result, SteenrodError};
use crate::gf2::{self, BitVec};

use super::chart::ExtChart;

/// Number of stable rows inspected above the non-tower region.
const STABLE_ROWS: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRow {
    pub n: i32,
    pub observed: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub offsets: Vec<i32>,
    pub rows: Vec<TowerRow>,
}

impl TowerReport {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(|r| r.observed == r.expected)
    }

    /// Stems carrying at least one tower, with multiplicity.
    pub fn tower_positions(&self) -> Vec<(i32, usize)> {
        self.rows
            .iter()
            .filter(|r| r.observed > 0)
            .map(|r| (r.n, r.observed))
            .collect()
    }
}

impl fmt::Display for TowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "   n  towers  expected")?;
        for r in &self.rows {
            let mark = if r.observed == r.expected { "" } else { "  <- differs" };
            writeln!(f, "{:>4}  {:>6}  {:>8}{mark}", r.n, r.observed, r.expected)?;
        }
        Ok(())
    }
}

/// `#{(a, b) : 8a + 12b = n - o}` summed over the offsets `o`.
pub fn expected_towers(n: i32, offsets: &[i32]) -> usize {
    offsets
        .iter()
        .map(|&o| {
            let m = n - o;
            if m < 0 {
                return 0;
            }
            (0..=m / 12).filter(|b| (m - 12 * b) % 8 == 0).count()
        })
        .sum()
}

/// Lowest filtration guaranteed to lie above the non-tower classes in stem `n`.
fn tower_floor(n: i32) -> u32 {
    ((n.max(0) + 3) / 2 + 2) as u32
}

/// Counts towers in stems `0..=n_max` and compares with the generator offsets.
///
/// In each stem, the top three filtrations available in the chart must sit
/// above the non-tower region, have equal dimension, and be joined by
/// injective `h_0` multiplications.
pub fn v0_tower_report(chart: &ExtChart, n_max: i32, offsets: &[i32]) -> Result<TowerReport> {
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let s_top = chart.s_max.min((chart.t_max - n).max(0) as u32);
        let floor = tower_floor(n);
        if s_top + 1 < floor + STABLE_ROWS {
            return Err(SteenrodError::WindowTooSmall(format!(
                "stem {n} needs filtration {} (t = {}), chart reaches s = {s_top}",
                floor + STABLE_ROWS - 1,
                n + (floor + STABLE_ROWS - 1) as i32
            )));
        }
        let lo = s_top + 1 - STABLE_ROWS;
        let dim = chart.dim_at(n, lo);
        for s in lo..s_top {
            if chart.dim_at(n, s + 1) != dim || h0_rank(chart, n, s) != dim {
                return Err(SteenrodError::WindowTooSmall(format!(
                    "stem {n} has not stabilized by filtration {s_top}"
                )));
            }
        }
        rows.push(TowerRow {
            n,
            observed: dim,
            expected: expected_towers(n, offsets),
        });
    }
    Ok(TowerReport {
        offsets: offsets.to_vec(),
        rows,
    })
}

fn h0_rank(chart: &ExtChart, n: i32, s: u32) -> usize {
    let sources = chart.classes_at(n, s);
    let targets = chart.classes_at(n, s + 1);
    let images: Vec<BitVec> = sources
        .iter()
        .map(|&k| {
            BitVec::from_ones(
                targets.len(),
                chart
                    .h_product(0, s, k)
                    .iter()
                    .filter_map(|t| targets.iter().position(|x| x == t)),
            )
        })
        .collect();
    if images.is_empty() {
        0
    } else {
        gf2::rank(&images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::chart::ext_dims;
    use crate::SteenrodModule;

    #[test]
    fn monomial_counts() {
        let counts: Vec<usize> = [0, 8, 12, 16, 20, 24].iter().map(|&n| expected_towers(n, &[0])).collect();
        assert_eq!(counts, vec![1, 1, 1, 1, 1, 2]);
        assert_eq!(expected_towers(4, &[0]), 0);
    }

    #[test]
    fn zero_module_has_no_towers() {
        let chart = ext_dims(&SteenrodModule::zero(), 12, 20).unwrap();
        let r = v0_tower_report(&chart, 4, &[]).unwrap();
        assert!(r.tower_positions().is_empty());
        assert!(r.matches());
    }

    #[test]
    fn small_window_is_rejected() {
        let chart = ext_dims(&SteenrodModule::trivial(), 4, 10).unwrap();
        let err = v0_tower_report(&chart, 8, &[0]).unwrap_err();
        assert_eq!(err.code(), "WINDOW_TOO_SMALL");
    }

    #[test]
    fn trivial_module_low_stems() {
        let chart = ext_dims(&SteenrodModule::trivial(), 12, 24).unwrap();
        let r = v0_tower_report(&chart, 12, &[0]).unwrap();
        assert!(r.matches(), "{r}");
    }
}
