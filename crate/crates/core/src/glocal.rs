//! g-local homotopy as modules over `F2[h21^±, v1, v2^8]`.
//!
//! Both sides of the census comparison are lists of module generators, each
//! with a v1-action type. A generator at `(n, s)` spans the classes
//! `h21^k v1^b v2^{8c}` at `(n + 5k + 2b + 48c, s + k + b + 8c)`. Since `h21` is
//! invertible every bidegree is infinite; series are therefore counted with
//! `c <= v2_8_max`, i.e. modulo a power of `v2^8`.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::decomposition::{decompose_bo, DecompositionReport, Locality, Source, SummandKind};
use crate::error::{Error, Result};
use crate::ring::RingId;

/// Bidegree of `h21`.
pub const H21: (i64, i64) = (5, 1);
/// Bidegree of `v1`.
pub const V1: (i64, i64) = (2, 1);
/// Bidegree of `v2^8`.
pub const V2_8: (i64, i64) = (48, 8);

/// Index-set budget for the census enumeration.
pub const DEFAULT_CENSUS_BUDGET: usize = 1 << 20;

/// Degree change of `Q1` on homology used when none is given.
pub const DEFAULT_Q1_SHIFT: i64 = -3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum V1Action {
    /// `F2[v1]`.
    Free,
    /// `v1` acts by zero.
    Trivial,
    /// `F2[v1]/v1^2`.
    Truncated2,
}

impl V1Action {
    fn max_power(self) -> Option<i64> {
        match self {
            V1Action::Free => None,
            V1Action::Trivial => Some(0),
            V1Action::Truncated2 => Some(1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalGenerator {
    pub n: i64,
    pub s: i64,
    pub weight: u64,
    pub v1: V1Action,
}

impl LocalGenerator {
    /// Representative in filtration 0 of the `h21`-orbit: `(n - 5s, v1, weight)`.
    pub fn reduced(&self) -> (i64, V1Action, u64) {
        (self.n - H21.0 * self.s, self.v1, self.weight)
    }
}

/// Module generators of `g^-1 F2`, `g^-1 bo1` and `g^-1 bo1^2` at `Σ^{0,0}`.
pub fn base_generator(kind: SummandKind) -> Result<(i64, i64, V1Action)> {
    match kind {
        SummandKind::F2 => Ok((0, 0, V1Action::Free)),
        SummandKind::BO1 => Ok((4, 0, V1Action::Trivial)),
        SummandKind::BO1SQ => Ok((11, 0, V1Action::Truncated2)),
        SummandKind::TMF03 => Err(Error::UnsupportedKind(kind)),
    }
}

/// Generators of the g-local homotopy of a report, all tagged with `weight`.
pub fn report_generators(r: &DecompositionReport, weight: u64) -> Result<Vec<LocalGenerator>> {
    if r.locality != Locality::G {
        return Err(Error::RingMismatch {
            left: RingId::R,
            right: RingId::RPrime,
        });
    }
    let mut out = Vec::new();
    for s in &r.summands {
        let (n0, s0, v1) = base_generator(s.kind)?;
        let count = u64::try_from(&s.multiplicity).expect("multiplicity fits in u64");
        for _ in 0..count {
            out.push(LocalGenerator {
                n: n0 + s.internal_shift,
                s: s0 + s.filtration_shift,
                weight,
                v1,
            });
        }
    }
    Ok(out)
}

/// Finite window in stem, filtration, and `v2^8`-power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub n_min: i64,
    pub n_max: i64,
    pub s_min: i64,
    pub s_max: i64,
    pub v2_8_max: u32,
}

impl Window {
    pub fn new(n_max: i64, s_max: i64) -> Self {
        Self {
            n_min: 0,
            n_max,
            s_min: 0,
            s_max,
            v2_8_max: 0,
        }
    }
}

/// Dimensions by `(n, s, weight)` inside a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedSeries {
    pub window: Window,
    pub dims: BTreeMap<(i64, i64, u64), u64>,
}

impl BigradedSeries {
    pub fn empty(window: Window) -> Self {
        Self {
            window,
            dims: BTreeMap::new(),
        }
    }

    pub fn from_generators(gens: &[LocalGenerator], window: Window) -> Self {
        let mut out = Self::empty(window);
        for g in gens {
            out.add_generator(g);
        }
        out
    }

    fn add_generator(&mut self, g: &LocalGenerator) {
        let w = self.window;
        for c in 0..=w.v2_8_max as i64 {
            for s in w.s_min..=w.s_max {
                // h21^k v1^b v2^{8c} g lands in filtration s when k = s - g.s - b - 8c
                let mut b = 0;
                loop {
                    if g.v1.max_power().is_some_and(|m| b > m) {
                        break;
                    }
                    let n = g.n + H21.0 * (s - g.s) + (V1.0 - H21.0) * b + (V2_8.0 - H21.0 * V2_8.1) * c;
                    if n < w.n_min {
                        break;
                    }
                    if n <= w.n_max {
                        *self.dims.entry((n, s, g.weight)).or_insert(0) += 1;
                    }
                    b += 1;
                }
            }
        }
    }

    pub fn dim(&self, n: i64, s: i64, weight: u64) -> u64 {
        self.dims.get(&(n, s, weight)).copied().unwrap_or(0)
    }

    /// Dimension at `(n, s)` summed over weights.
    pub fn total_dim(&self, n: i64, s: i64) -> u64 {
        self.dims
            .iter()
            .filter(|((a, b, _), _)| *a == n && *b == s)
            .map(|(_, d)| d)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Entries that differ: `((n, s, weight), self, other)`.
    pub fn diff(&self, other: &Self) -> Vec<((i64, i64, u64), u64, u64)> {
        let mut keys: Vec<_> = self.dims.keys().chain(other.dims.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let (a, b) = (self.dims.get(&k).copied().unwrap_or(0), other.dims.get(&k).copied().unwrap_or(0));
                (a != b).then_some((k, a, b))
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,s,weight,dim\n");
        for ((n, s, w), d) in &self.dims {
            let _ = writeln!(out, "{n},{s},{w},{d}");
        }
        out
    }
}

/// Homotopy series of a g-local report inside `window`, at the report's weight.
pub fn homotopy_series_glocal(r: &DecompositionReport, window: Window) -> Result<BigradedSeries> {
    let weight = match r.source {
        Source::Tmfbar { weight, .. } => 8 * weight,
        _ => 0,
    };
    Ok(BigradedSeries::from_generators(&report_generators(r, weight)?, window))
}

/// `(J, J')` data of one census term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusTerm {
    pub j: Vec<(u32, u32)>,
    pub j_prime: Vec<(u32, u32)>,
    pub count: u64,
    pub generator: LocalGenerator,
}

fn x_degree(i: u32) -> i64 {
    (1 << (i + 3)) - 1
}

fn t_degree(i: u32) -> i64 {
    4 * ((1 << (i + 1)) - 1)
}

fn x_weight(i: u32) -> u64 {
    1 << (i + 2)
}

/// Number of elements of `T_J` when `|J| = k`.
pub fn t_j_size(k: usize) -> u64 {
    match k {
        0 => 1,
        _ if k % 2 == 1 => 1 << ((k - 1) / 2),
        _ => 1 << ((k - 2) / 2),
    }
}

/// Enumerates the module generators of g-local homotopy of `tmf^{⊗n}` in weights
/// `<= weight_max`. `q1_shift` is the degree change of `Q1` on homology.
pub fn census_bbt(n: u32, weight_max: u64, q1_shift: i64, budget: usize) -> Result<Vec<CensusTerm>> {
    let mut i_max = 0;
    while x_weight(i_max + 1) <= weight_max {
        i_max += 1;
    }
    let indices: Vec<(u32, u32)> = (1..=i_max).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut visited = 0usize;
    let mut j = Vec::new();
    let mut jp = Vec::new();
    census_walk(&indices, 0, weight_max, 0, &mut j, &mut jp, &mut visited, budget, &mut |j, jp, weight| {
        let k = j.len();
        let mut degree: i64 = j.iter().map(|&(i, _)| x_degree(i)).sum();
        degree += jp.iter().map(|&(i, _)| x_degree(i) + t_degree(i)).sum::<i64>();
        let q1_count = match k {
            0 => 0,
            _ if k % 2 == 1 => (k as i64 + 1) / 2,
            _ => k as i64 / 2,
        };
        degree += q1_shift * q1_count;
        let v1 = match k {
            0 => V1Action::Free,
            _ if k % 2 == 1 => V1Action::Trivial,
            _ => V1Action::Truncated2,
        };
        out.push(CensusTerm {
            j: j.to_vec(),
            j_prime: jp.to_vec(),
            count: t_j_size(k),
            generator: LocalGenerator { n: degree, s: 0, weight, v1 },
        });
    })?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn census_walk(
    indices: &[(u32, u32)],
    pos: usize,
    weight_max: u64,
    weight: u64,
    j: &mut Vec<(u32, u32)>,
    jp: &mut Vec<(u32, u32)>,
    visited: &mut usize,
    budget: usize,
    emit: &mut impl FnMut(&[(u32, u32)], &[(u32, u32)], u64),
) -> Result<()> {
    if pos == indices.len() {
        *visited += 1;
        if *visited > budget {
            return Err(Error::WindowTooLarge {
                needed: *visited,
                limit: budget,
            });
        }
        emit(j, jp, weight);
        return Ok(());
    }
    let idx = indices[pos];
    let w = x_weight(idx.0);
    census_walk(indices, pos + 1, weight_max, weight, j, jp, visited, budget, emit)?;
    if weight + w <= weight_max {
        j.push(idx);
        census_walk(indices, pos + 1, weight_max, weight + w, j, jp, visited, budget, emit)?;
        j.pop();
    }
    if weight + 2 * w <= weight_max {
        jp.push(idx);
        census_walk(indices, pos + 1, weight_max, weight + 2 * w, j, jp, visited, budget, emit)?;
        jp.pop();
    }
    Ok(())
}

/// Expands census terms into generators, repeating each by `|T_J|`.
pub fn census_generators(terms: &[CensusTerm]) -> Vec<LocalGenerator> {
    terms
        .iter()
        .flat_map(|t| std::iter::repeat_n(t.generator, t.count as usize))
        .collect()
}

/// Generators of `Σ_j Σ^{8j} g^-1 bo_j` for `8j <= weight_max`, from `f'_j`.
pub fn bo_generators(weight_max: u64) -> Result<Vec<LocalGenerator>> {
    let mut out = Vec::new();
    for j in 0..=weight_max / 8 {
        let r = decompose_bo(j, Locality::G)?.shifted(8 * j as i64, 0);
        out.extend(report_generators(&r, 8 * j)?);
    }
    Ok(out)
}

/// Census of one `Q1` convention against the f'_j side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusCheck {
    pub q1_shift: i64,
    pub census: BigradedSeries,
    pub from_bo: BigradedSeries,
}

impl CensusCheck {
    pub fn matches(&self) -> bool {
        self.census == self.from_bo
    }
}

/// Compares the `n = 1` census with the f'_j decompositions for each candidate `Q1` shift.
pub fn census_cross_check(weight_max: u64, window: Window, q1_shifts: &[i64]) -> Result<Vec<CensusCheck>> {
    let from_bo = BigradedSeries::from_generators(&bo_generators(weight_max)?, window);
    q1_shifts
        .iter()
        .map(|&q| {
            let terms = census_bbt(1, weight_max, q, DEFAULT_CENSUS_BUDGET)?;
            Ok(CensusCheck {
                q1_shift: q,
                census: BigradedSeries::from_generators(&census_generators(&terms), window),
                from_bo: from_bo.clone(),
            })
        })
        .collect()
}

/// Window that contains every generator of weight `<= weight_max` in filtration 0.
pub fn census_window(weight_max: u64) -> Window {
    Window {
        n_min: 0,
        n_max: 2 * weight_max as i64 + 16,
        s_min: 0,
        s_max: 4,
        v2_8_max: 1,
    }
}

impl fmt::Display for CensusCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.census.diff(&self.from_bo);
        write!(f, "Q1 shift {:+}: ", self.q1_shift)?;
        if d.is_empty() {
            return write!(f, "census equals the f'_j series ({} nonzero entries)", self.census.dims.len());
        }
        write!(f, "{} entries differ", d.len())?;
        for ((n, s, w), a, b) in d.iter().take(5) {
            write!(f, "; (n={n}, s={s}, weight={w}) census {a} vs {b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::DecompositionReport;

    fn g(text: &str) -> DecompositionReport {
        DecompositionReport::parse(text, Locality::G).unwrap()
    }

    #[test]
    fn unit_series() {
        let s = homotopy_series_glocal(&g("Σ^{0,0} F2"), Window::new(10, 2)).unwrap();
        assert_eq!(s.dim(0, 0, 0), 1);
        assert_eq!(s.dim(5, 1, 0), 1);
        assert_eq!(s.dim(2, 1, 0), 1);
        assert_eq!(s.dim(1, 0, 0), 0);
    }

    #[test]
    fn empty_and_unsupported() {
        let empty = DecompositionReport::from_summands(Locality::G, Source::Element(String::new()), []).unwrap();
        assert!(homotopy_series_glocal(&empty, Window::new(10, 2)).unwrap().is_zero());
        let v2 = DecompositionReport::parse("Σ^{0,0} TMF", Locality::V2).unwrap();
        let mut as_g = v2.clone();
        as_g.locality = Locality::G;
        assert_eq!(report_generators(&as_g, 0).unwrap_err().code(), "UNSUPPORTED_KIND");
    }

    #[test]
    fn bo1_is_v1_torsion() {
        let s = homotopy_series_glocal(&g("Σ^{0,0} bo1"), Window::new(20, 2)).unwrap();
        assert_eq!(s.dim(4, 0, 0), 1);
        assert_eq!(s.dim(9, 1, 0), 1);
        assert_eq!(s.dim(6, 1, 0), 0);
    }

    #[test]
    fn t_j_sizes() {
        assert_eq!((1..=6).map(t_j_size).collect::<Vec<_>>(), vec![1, 1, 2, 2, 4, 4]);
    }

    #[test]
    fn census_low_weights() {
        let terms = census_bbt(1, 16, DEFAULT_Q1_SHIFT, 1000).unwrap();
        let mut gens: Vec<_> = census_generators(&terms).into_iter().map(|g| (g.weight, g.n, g.v1)).collect();
        gens.sort();
        assert_eq!(
            gens,
            vec![(0, 0, V1Action::Free), (8, 12, V1Action::Trivial), (16, 27, V1Action::Free), (16, 28, V1Action::Trivial)]
        );
    }

    #[test]
    fn census_budget() {
        assert_eq!(census_bbt(4, 64, -3, 10).unwrap_err().code(), "WINDOW_TOO_LARGE");
    }

    #[test]
    fn census_matches_bo_side_at_low_weight() {
        let checks = census_cross_check(24, census_window(24), &[-3, 3]).unwrap();
        assert!(checks[0].matches(), "{}", checks[0]);
        assert!(!checks[1].matches());
    }
}
