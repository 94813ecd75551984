//! Reproduction checks: golden tables, worked decompositions, series and
//! duality identities, the fixture modules, and the Ext computations.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use steenrod::ext::bar::BarComplex;
use steenrod::ext::towers::v0_tower_report;
use steenrod::ext::{ExtChart, Resolver};
use steenrod::group_ring::verify_sigma3_idempotents;
use steenrod::hom::{find_ses, SesOutcome};
use steenrod::{a2, build_standard, SteenrodModule};

use crate::brown_gitler::{verify_parity_of, BgTable};
use crate::decomposition::{
    brute_force_weight, decompose_power, dualize_report, summand_map, DecompositionReport, Locality,
    TruncatedSeries,
};
use crate::error::Result;
use crate::glocal::{census_cross_check, census_window, DEFAULT_Q1_SHIFT};
use crate::ring::{Gen, RingElement, RingId};
use crate::tables::{check_bg_table, check_power_table, TABLE1, TABLE2};

pub const F_MODULE: &str = include_str!("../../../fixtures/F.module");
pub const E_MODULE: &str = include_str!("../../../fixtures/E.module");

/// Environment variable overriding the resolution cell budget.
pub const CELL_BUDGET_VAR: &str = "TMFRES_CELL_BUDGET";
/// Environment variable overriding the bar-complex cell budget.
pub const BAR_BUDGET_VAR: &str = "TMFRES_BAR_BUDGET";

/// Resolution and bar-complex budgets, overridable from the environment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub cells: usize,
    pub bar: usize,
}

impl Budgets {
    pub fn from_env() -> Self {
        let read = |var: &str, default: usize| {
            std::env::var(var)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        };
        Self {
            cells: read(CELL_BUDGET_VAR, steenrod::ext::resolution::DEFAULT_CELL_BUDGET),
            bar: read(BAR_BUDGET_VAR, steenrod::ext::bar::DEFAULT_BAR_BUDGET),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

fn timed(id: u32, name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error {}: {e}", e.code())));
    Check {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn power_table_check() -> Check {
    timed(1, "x^k table", || {
        let r = check_power_table(TABLE1)?;
        let bad: Vec<String> = r.mismatches().map(|m| m.label.clone()).collect();
        Ok((
            r.all_match() && r.rows.len() == 14,
            if bad.is_empty() {
                format!("{} rows match", r.rows.len())
            } else {
                format!("rows differ: {}\n{r}", bad.join(", "))
            },
        ))
    })
}

pub fn bg_table_check() -> Check {
    timed(2, "f_j table", || {
        let r = check_bg_table(TABLE2)?;
        let bad: Vec<String> = r.mismatches().map(|m| m.label.clone()).collect();
        Ok((
            r.all_match() && r.rows.len() == 16,
            if bad.is_empty() {
                format!("{} rows match", r.rows.len())
            } else {
                format!("rows differ: {}\n{r}", bad.join(", "))
            },
        ))
    })
}

/// Worked decompositions of `v2^-1 bo1^{⊗k}` as printed, before window normalization.
pub const PRINTED_POWER_DECOMPOSITIONS: [(u32, &str); 4] = [
    (3, "2 Σ^{16,1} bo1 + Σ^{24,2} TMF"),
    (4, "2 Σ^{16,1} bo1^2 + Σ^{48,5} TMF + Σ^{64,8} TMF"),
    (5, "4 Σ^{32,2} bo1 + Σ^{24} TMF + 4 Σ^{40,3} TMF + Σ^{56,6} TMF"),
    (6, "4 Σ^{32,2} bo1^2 + Σ^{48,3} TMF + 5 Σ^{64,6} TMF + 5 Σ^{32,1} TMF + Σ^{48,4} TMF"),
];

pub fn power_decomposition_check() -> Check {
    timed(3, "worked decompositions", || {
        let mut bad = Vec::new();
        for (k, text) in PRINTED_POWER_DECOMPOSITIONS {
            let printed = DecompositionReport::parse(text, Locality::V2)?;
            let computed = decompose_power(k, Locality::V2)?;
            if summand_map(&printed) != summand_map(&computed) {
                bad.push(format!("k = {k}: printed {printed}, computed {computed}"));
            }
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                "k = 3, 4, 5, 6 agree".to_string()
            } else {
                bad.join("; ")
            },
        ))
    })
}

pub fn series_check(n_max: u32, j_max: u64) -> Check {
    timed(4, "generating series", || {
        let mut compared = 0;
        let mut bad = Vec::new();
        for ring in [RingId::R, RingId::RPrime] {
            let h = TruncatedSeries::h(ring, j_max as usize);
            let mut hn = TruncatedSeries::one(ring, j_max as usize);
            for n in 1..=n_max {
                hn = hn.mul(&h);
                for j in 0..=j_max {
                    let c = hn.coefficient(j as usize);
                    if j < n as u64 {
                        if !c.is_zero() {
                            bad.push(format!("w^{j} of h^{n} is nonzero in {ring}"));
                        }
                        continue;
                    }
                    compared += 1;
                    if *c != brute_force_weight(n, j, ring) {
                        bad.push(format!("(n, j) = ({n}, {j}) in {ring}"));
                    }
                    if c.terms().values().any(|m| m <= &BigInt::ZERO) {
                        bad.push(format!("nonpositive multiplicity at (n, j) = ({n}, {j}) in {ring}"));
                    }
                }
            }
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                format!("{compared} coefficients in R and R' equal the composition sums, all multiplicities positive")
            } else {
                format!("differ at {}", bad.join(", "))
            },
        ))
    })
}

pub fn structure_check(j_max: u64) -> Check {
    timed(5, "parity and mod-y comparison", || {
        let mut r = BgTable::new(RingId::R);
        let mut rp = BgTable::new(RingId::RPrime);
        let mut bad = Vec::new();
        for j in 0..=j_max {
            let (f, fp) = (r.get(j), rp.get(j));
            let parity = verify_parity_of(j, &fp);
            if !parity.holds() {
                bad.push(format!("parity j = {j}: {}", parity.violations.join(", ")));
            }
            if f.project_mod_y() != fp.embed_gprime() {
                bad.push(format!("mod y j = {j}"));
            }
            if f.terms().values().any(|c| c <= &BigInt::ZERO) {
                bad.push(format!("nonpositive coefficient in f_{j}"));
            }
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                format!("j = 0..={j_max} pass")
            } else {
                bad.join("; ")
            },
        ))
    })
}

/// Random element with up to four terms and small exponents.
pub fn random_element(rng: &mut impl Rng, ring: RingId) -> RingElement {
    let gens: &[Gen] = if ring.has_y() { &Gen::ALL } else { &Gen::ALL[..3] };
    let mut e = RingElement::zero(ring);
    for _ in 0..rng.random_range(1..=4) {
        let g = gens[rng.random_range(0..gens.len())];
        let c: i64 = rng.random_range(-5..=5);
        e = &e + &RingElement::monomial(ring, rng.random_range(-9..=9), rng.random_range(-9..=9), g, c);
    }
    e
}

pub fn duality_check(samples: usize, seed: u64) -> Check {
    timed(6, "duality", || {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut bad = Vec::new();
        for ring in [RingId::R, RingId::RPrime] {
            for _ in 0..samples {
                let a = random_element(&mut rng, ring);
                let b = random_element(&mut rng, ring);
                if a.dualize().dualize() != a {
                    bad.push(format!("D(D({a})) in {ring}"));
                }
                if (&a * &b).dualize() != &a.dualize() * &b.dualize() {
                    bad.push(format!("D({a} * {b}) in {ring}"));
                }
                if (&a + &b).dualize() != &a.dualize() + &b.dualize() {
                    bad.push(format!("D({a} + {b}) in {ring}"));
                }
                if bad.len() > 5 {
                    break;
                }
            }
        }
        let r = |t: &str, ring| RingElement::parse(t, ring);
        let dx = RingElement::x(RingId::R).dualize();
        let dy = RingElement::y().dualize();
        let stable = dx.pow(3) == r("2 t^2 s x + t^3 s^2 y", RingId::R)?.dualize()
            && &dx * &dy == r("t^3 s^3 y + t^5 s^6 y", RingId::R)?.dualize()
            && r("t^6 s^8", RingId::R)?.dualize() == RingElement::one(RingId::R)
            && RingElement::x(RingId::RPrime).dualize().pow(3) == r("2 t^2 s x", RingId::RPrime)?.dualize();
        if !stable {
            bad.push("relations are not D-stable".into());
        }
        let bo1 = DecompositionReport::parse("Σ^{0,0} bo1", Locality::V2)?;
        let dual = dualize_report(&bo1)?;
        let expected = DecompositionReport::parse("Σ^{-16,-1} bo1", Locality::V2)?;
        if dual.summands != expected.summands {
            bad.push(format!("D(Σ^{{0,0}} bo1) = {dual}"));
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                format!("{samples} random pairs per ring; relations D-stable; D(Σ^{{0,0}} bo1) = {dual} = Σ^{{-16,-1}} bo1")
            } else {
                bad.join("; ")
            },
        ))
    })
}

pub fn module_data_check() -> Check {
    timed(7, "fixture modules", || {
        let mut notes = Vec::new();
        let mut ok = true;
        let f = SteenrodModule::parse_bruner(F_MODULE)?;
        let e = SteenrodModule::parse_bruner(E_MODULE)?;
        for (name, m) in [("F", &f), ("E", &e)] {
            let v = m.validate();
            if !v.is_valid() {
                ok = false;
                notes.push(format!("{name} invalid: {v}"));
            }
        }
        let bo1 = build_standard("BO(1)")?;
        let cube = SteenrodModule::tensor(&SteenrodModule::tensor(&bo1, &bo1), &bo1);
        let total = 2 * f.dim() + e.dim();
        if (f.dim(), e.dim(), total, cube.dim()) != (20, 24, 64, 64) {
            ok = false;
        }
        notes.push(format!("{} + {} + {} = {total} = dim BO(1)^3 ({})", f.dim(), f.dim(), e.dim(), cube.dim()));
        let ids = verify_sigma3_idempotents();
        let held = ids.iter().filter(|c| c.holds).count();
        ok &= held == ids.len();
        notes.push(format!("{held}/{} idempotent identities", ids.len()));
        let a2a1 = build_standard("A2modA1")?;
        let ses = find_ses(&bo1.dual().suspend(17), &a2a1, &bo1);
        ok &= ses.found();
        notes.push(format!(
            "Σ^17 D BO(1) -> A2modA1 -> BO(1): {}",
            if ses.found() { "found" } else { "not found" }
        ));
        let middle = SteenrodModule::tensor(&a2a1.suspend(4), &build_standard("M1")?);
        let certified = find_ses(&bo1.suspend(17), &middle, &e);
        let mismatched = certified.mismatched_degrees();
        notes.push(match certified.outcome {
            SesOutcome::Found { .. } => "Σ^17 BO(1) -> Σ^4 A2modA1 ⊗ M1 -> E: found".to_string(),
            _ => format!(
                "Σ^17 BO(1) -> Σ^4 A2modA1 ⊗ M1 -> E: dimensions {} vs {} + {}, mismatch in degrees {:?}",
                middle.dim(),
                bo1.dim(),
                e.dim(),
                mismatched.iter().map(|c| c.degree).collect::<Vec<_>>()
            ),
        });
        ok &= !certified.certificate.is_empty();
        Ok((ok, notes.join("; ")))
    })
}

/// Modules and windows of the resolution/bar-complex comparison.
pub fn oracle_cases() -> Result<Vec<(&'static str, SteenrodModule, i32)>> {
    let bo1 = build_standard("BO(1)")?;
    Ok(vec![
        ("F2", SteenrodModule::trivial(), 20),
        ("BO(1)", bo1.clone(), 20),
        ("BO(1)^2", SteenrodModule::tensor(&bo1, &bo1), 14),
        ("M1", build_standard("M1")?, 20),
        ("A2modA1", build_standard("A2modA1")?, 20),
        ("E", SteenrodModule::parse_bruner(E_MODULE)?, 20),
    ])
}

pub fn ext_oracle_check(budgets: Budgets) -> Check {
    timed(8, "resolution vs bar complex", || {
        let mut notes = Vec::new();
        let mut ok = true;
        for (name, m, t) in oracle_cases()? {
            let bar = BarComplex::new(a2(), &m).dimensions(t, budgets.bar)?;
            let s_max = (t - m.min_degree().unwrap_or(0)).max(0) as u32 + 1;
            let res = Resolver::new(a2(), m, s_max, t)
                .budget(budgets.cells)
                .run()
                .map_err(|p| p.error)?;
            let equal = res.generator_counts() == bar;
            ok &= equal;
            notes.push(format!(
                "{name} t<={t}: {} ({} classes)",
                if equal { "equal" } else { "DIFFER" },
                bar.values().sum::<usize>()
            ));
        }
        Ok((ok, notes.join("; ")))
    })
}

/// `(name, module, tower offsets)` for the `v0`-tower comparison.
pub fn tower_cases() -> Result<Vec<(&'static str, SteenrodModule, Vec<i32>)>> {
    let bo1 = build_standard("BO(1)")?;
    Ok(vec![
        ("F2", SteenrodModule::trivial(), vec![0]),
        ("BO(1)", bo1.clone(), vec![0, 4]),
        ("Σ^8 BO(1)", bo1.suspend(8), vec![8, 12]),
    ])
}

pub fn tower_check(budgets: Budgets) -> Check {
    timed(9, "v0 towers", || {
        let mut notes = Vec::new();
        let mut ok = true;
        for (name, m, offsets) in tower_cases()? {
            let res = Resolver::new(a2(), m, 18, 42)
                .budget(budgets.cells)
                .run()
                .map_err(|p| p.error)?;
            let report = v0_tower_report(&ExtChart::from_resolution(&res), 24, &offsets)?;
            ok &= report.matches();
            let pos: Vec<String> = report
                .tower_positions()
                .iter()
                .map(|(n, k)| if *k == 1 { n.to_string() } else { format!("{n}x{k}") })
                .collect();
            notes.push(format!(
                "{name}: towers at {} {}",
                pos.join(","),
                if report.matches() { "as predicted" } else { "DIFFER" }
            ));
        }
        Ok((ok, notes.join("; ")))
    })
}

pub fn census_check(weight_max: u64) -> Check {
    timed(10, "g-local census", || {
        let checks = census_cross_check(weight_max, census_window(weight_max), &[DEFAULT_Q1_SHIFT, -DEFAULT_Q1_SHIFT])?;
        let ok = checks[0].matches();
        let notes: Vec<String> = checks.iter().map(|c| c.to_string()).collect();
        Ok((ok, format!("weight <= {weight_max}; {}", notes.join("; "))))
    })
}

/// Groups of checks selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Decompositions,
    Series,
    Structure,
    Duality,
    Modules,
    Oracle,
    Towers,
    Census,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Tables,
        Suite::Decompositions,
        Suite::Series,
        Suite::Structure,
        Suite::Duality,
        Suite::Modules,
        Suite::Oracle,
        Suite::Towers,
        Suite::Census,
    ];

    pub fn run(self, budgets: Budgets) -> Vec<Check> {
        match self {
            Suite::Tables => vec![power_table_check(), bg_table_check()],
            Suite::Decompositions => vec![power_decomposition_check()],
            Suite::Series => vec![series_check(4, 12)],
            Suite::Structure => vec![structure_check(64)],
            Suite::Duality => vec![duality_check(10_000, 0x5eed)],
            Suite::Modules => vec![module_data_check()],
            Suite::Oracle => vec![ext_oracle_check(budgets)],
            Suite::Towers => vec![tower_check(budgets)],
            Suite::Census => vec![census_check(64)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        for c in [power_table_check(), bg_table_check(), power_decomposition_check(), structure_check(16)] {
            assert!(c.passed, "{c}");
        }
        assert!(series_check(2, 6).passed);
        assert!(duality_check(50, 1).passed);
    }

    #[test]
    fn budgets_default_without_environment() {
        let b = Budgets::from_env();
        assert!(b.cells > 0 && b.bar > 0);
    }
}
