//! Independent Ext oracle: homology of the normalized bar complex
//! `B_s = Abar^{(x)s} (x) M` with
//! `d[a_1|...|a_s]m = sum_i [..|a_i a_{i+1}|..]m + [a_1|...|a_{s-1}] a_s m`.
//! Its homology is `Tor^A_{s,t}(F2, M)`, dual to `Ext^{s,t}_A(M, F2)`.
//!
//! Cells of one internal degree are ranked lexicographically, so no cell
//! table is stored. Ranks of the differentials come from sparse column
//! reduction with clearing, working from the top homological degree down.

use std::collections::BTreeMap;

use crate::error::{Result, SteenrodError};
use crate::milnor::{a2, Algebra, MilnorElement};
use crate::module::SteenrodModule;

/// Default cap on the number of cells in one internal degree.
pub const DEFAULT_BAR_BUDGET: usize = 12_000_000;

/// Bar-complex Ext dimensions over A(2) for `t <= t_max`, keyed by `(s, t)`.
pub fn bar_oracle(module: &SteenrodModule, t_max: i32) -> Result<BTreeMap<(u32, i32), usize>> {
    BarComplex::new(a2(), module).dimensions(t_max, DEFAULT_BAR_BUDGET)
}

pub struct BarComplex<'a> {
    alg: &'static Algebra,
    module: &'a SteenrodModule,
    t_min: i32,
    abar: Vec<MilnorElement>,
    abar_degree: Vec<usize>,
    abar_position: [u8; 64],
    /// module generators by degree relative to `t_min`
    module_by_degree: Vec<Vec<usize>>,
    module_position: Vec<u32>,
}

/// Counting tables for one relative internal degree.
struct Ranker {
    /// `count[k][d]`: cells with `k` bar factors in relative degree `d`.
    count: Vec<Vec<u64>>,
    /// `cum[k][d][p]`: cells of length `k` in degree `d` whose first factor precedes position `p`.
    cum: Vec<Vec<Vec<u64>>>,
}

impl<'a> BarComplex<'a> {
    pub fn new(alg: &'static Algebra, module: &'a SteenrodModule) -> Self {
        let mut abar: Vec<MilnorElement> = alg
            .basis()
            .iter()
            .copied()
            .filter(|&m| m != MilnorElement::ONE)
            .collect();
        abar.sort_by_key(|m| (m.degree(), m.index()));
        let abar_degree = abar.iter().map(|m| m.degree() as usize).collect();
        let mut abar_position = [u8::MAX; 64];
        for (p, m) in abar.iter().enumerate() {
            abar_position[m.index()] = p as u8;
        }
        let t_min = module.min_degree().unwrap_or(0);
        let span = module.max_degree().map_or(0, |t| (t - t_min) as usize + 1);
        let mut module_by_degree = vec![Vec::new(); span];
        let mut module_position = vec![0; module.dim()];
        for g in 0..module.dim() {
            let d = (module.degree(g) - t_min) as usize;
            module_position[g] = module_by_degree[d].len() as u32;
            module_by_degree[d].push(g);
        }
        Self {
            alg,
            module,
            t_min,
            abar,
            abar_degree,
            abar_position,
            module_by_degree,
            module_position,
        }
    }

    fn module_dim(&self, d: usize) -> u64 {
        self.module_by_degree.get(d).map_or(0, |v| v.len() as u64)
    }

    fn ranker(&self, top: usize) -> Ranker {
        let kmax = top;
        let mut count = vec![vec![0u64; top + 1]; kmax + 1];
        for d in 0..=top {
            count[0][d] = self.module_dim(d);
        }
        let mut cum = vec![vec![Vec::new(); top + 1]; kmax + 1];
        for k in 1..=kmax {
            for d in 0..=top {
                let mut acc = 0u64;
                let mut row = Vec::with_capacity(self.abar.len() + 1);
                for &deg in &self.abar_degree {
                    row.push(acc);
                    if deg <= d {
                        acc += count[k - 1][d - deg];
                    }
                }
                row.push(acc);
                count[k][d] = acc;
                cum[k][d] = row;
            }
        }
        Ranker { count, cum }
    }

    /// Number of cells `(s, t)` for every `s`, for a given relative degree.
    pub fn cell_counts(&self, t: i32) -> Vec<u64> {
        let d = (t - self.t_min).max(0) as usize;
        let r = self.ranker(d);
        (0..=d).map(|k| r.count[k][d]).collect()
    }

    /// Tor dimensions for `t <= t_max`.
    pub fn dimensions(&self, t_max: i32, budget: usize) -> Result<BTreeMap<(u32, i32), usize>> {
        let mut out = BTreeMap::new();
        if self.module.is_zero() {
            return Ok(out);
        }
        for t in self.t_min..=t_max {
            for (s, dim) in self.dimensions_in_degree(t, budget)?.into_iter().enumerate() {
                if dim > 0 {
                    out.insert((s as u32, t), dim);
                }
            }
        }
        Ok(out)
    }

    /// Tor dimensions in internal degree `t`, indexed by `s`.
    pub fn dimensions_in_degree(&self, t: i32, budget: usize) -> Result<Vec<usize>> {
        let top = (t - self.t_min) as usize;
        let ranker = self.ranker(top);
        let sizes: Vec<u64> = (0..=top).map(|k| ranker.count[k][top]).collect();
        let total: u64 = sizes.iter().sum();
        if total > budget as u64 {
            return Err(SteenrodError::BudgetExceeded {
                what: format!("bar complex in internal degree {t}"),
                needed: total as usize,
                limit: budget,
            });
        }
        // rank[s] = rank of d_s : B_s -> B_{s-1}
        let mut rank = vec![0usize; top + 2];
        let mut cleared: Vec<bool> = Vec::new();
        for s in (1..=top).rev() {
            let (r, lows) = self.reduce(s, top, &ranker, &cleared);
            rank[s] = r;
            cleared = vec![false; sizes[s - 1] as usize];
            for low in lows {
                cleared[low as usize] = true;
            }
        }
        Ok((0..=top)
            .map(|s| sizes[s] as usize - rank[s] - rank[s + 1])
            .collect())
    }

    fn rank_of(&self, ranker: &Ranker, top: usize, factors: &[u8], m: usize) -> u32 {
        let mut r = 0u64;
        let mut rem = top;
        let k = factors.len();
        for (i, &p) in factors.iter().enumerate() {
            r += ranker.cum[k - i][rem][p as usize];
            rem -= self.abar_degree[p as usize];
        }
        (r + self.module_position[m] as u64) as u32
    }

    /// Reduces the columns of `d_s` in degree `top`; returns the rank and the pivots.
    fn reduce(&self, s: usize, top: usize, ranker: &Ranker, cleared: &[bool]) -> (usize, Vec<u32>) {
        let target_size = ranker.count[s - 1][top] as usize;
        let mut pivot_of: Vec<u32> = vec![u32::MAX; target_size];
        let mut columns: Vec<Vec<u32>> = Vec::new();
        let mut lows = Vec::new();
        let mut factors = vec![0u8; s];
        let mut scratch = vec![0u8; s];
        let mut index = 0u32;
        let mut col: Vec<u32> = Vec::new();
        let mut merged: Vec<u32> = Vec::new();
        self.enumerate(s, 0, top, &mut factors, &mut |factors, m| {
            let this = index;
            index += 1;
            if cleared.get(this as usize).copied().unwrap_or(false) {
                return;
            }
            self.boundary(ranker, top, factors, m, &mut scratch, &mut col);
            while let Some(&low) = col.last() {
                let p = pivot_of[low as usize];
                if p == u32::MAX {
                    break;
                }
                symmetric_difference(&col, &columns[p as usize], &mut merged);
                std::mem::swap(&mut col, &mut merged);
            }
            if let Some(&low) = col.last() {
                pivot_of[low as usize] = columns.len() as u32;
                lows.push(low);
                columns.push(std::mem::take(&mut col));
            }
        });
        (columns.len(), lows)
    }

    /// Calls `f(factors, m)` for every cell of length `factors.len()` in rank order.
    fn enumerate(
        &self,
        len: usize,
        i: usize,
        rem: usize,
        factors: &mut Vec<u8>,
        f: &mut impl FnMut(&[u8], usize),
    ) {
        if i == len {
            if let Some(gens) = self.module_by_degree.get(rem) {
                for &m in gens {
                    f(factors, m);
                }
            }
            return;
        }
        for (p, &deg) in self.abar_degree.iter().enumerate() {
            if deg > rem {
                break;
            }
            factors[i] = p as u8;
            self.enumerate(len, i + 1, rem - deg, factors, f);
        }
    }

    /// Sorted, reduced mod 2 list of target ranks of `d[factors]m`.
    fn boundary(&self, ranker: &Ranker, top: usize, factors: &[u8], m: usize, scratch: &mut Vec<u8>, out: &mut Vec<u32>) {
        out.clear();
        let s = factors.len();
        for i in 0..s.saturating_sub(1) {
            let a = self.abar[factors[i] as usize];
            let b = self.abar[factors[i + 1] as usize];
            let product = self.alg.mul_basis(a, b);
            if product.is_zero() {
                continue;
            }
            scratch.clear();
            scratch.extend_from_slice(&factors[..i]);
            scratch.push(0);
            scratch.extend_from_slice(&factors[i + 2..]);
            for c in product.terms() {
                scratch[i] = self.abar_position[c.index()];
                out.push(self.rank_of(ranker, top, scratch, m));
            }
        }
        let last = self.abar[factors[s - 1] as usize];
        let image = self.module.act(last, m);
        for m2 in image.ones() {
            out.push(self.rank_of(ranker, top, &factors[..s - 1], m2));
        }
        out.sort_unstable();
        // cancel equal pairs
        let mut w = 0;
        let mut r = 0;
        while r < out.len() {
            if r + 1 < out.len() && out[r] == out[r + 1] {
                r += 2;
            } else {
                out[w] = out[r];
                w += 1;
                r += 1;
            }
        }
        out.truncate(w);
    }
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::resolution::{minimal_resolution, Resolver};
    use crate::milnor::a1;
    use crate::standard::build_standard;

    #[test]
    fn trivial_module_h1() {
        let dims = bar_oracle(&SteenrodModule::trivial(), 4).unwrap();
        assert_eq!(dims.get(&(1, 2)), Some(&1));
        assert_eq!(dims.get(&(0, 0)), Some(&1));
        assert_eq!(dims.get(&(1, 3)), None);
    }

    #[test]
    fn agrees_with_resolution_small_window() {
        for m in [SteenrodModule::trivial(), build_standard("BO(1)").unwrap(), build_standard("M1").unwrap()] {
            let t_max = 10 + m.min_degree().unwrap();
            let bar = bar_oracle(&m, t_max).unwrap();
            let res = minimal_resolution(&m, 12, t_max).unwrap();
            assert_eq!(bar, res.generator_counts());
        }
    }

    #[test]
    fn a1_oracle_matches_a1_resolution() {
        let m = SteenrodModule::trivial();
        let bar = BarComplex::new(a1(), &m).dimensions(12, DEFAULT_BAR_BUDGET).unwrap();
        let res = Resolver::new(a1(), m.clone(), 13, 12).run().unwrap();
        assert_eq!(bar, res.generator_counts());
    }

    #[test]
    fn cells_are_ranked_consecutively() {
        let m = build_standard("M1").unwrap();
        let bar = BarComplex::new(a2(), &m);
        let top = 6;
        let ranker = bar.ranker(top);
        for s in 0..=top {
            let mut seen = Vec::new();
            let mut factors = vec![0u8; s];
            bar.enumerate(s, 0, top, &mut factors, &mut |f, g| {
                seen.push(bar.rank_of(&ranker, top, f, g));
            });
            let expected: Vec<u32> = (0..ranker.count[s][top] as u32).collect();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = BarComplex::new(a2(), &SteenrodModule::trivial())
            .dimensions(12, 100)
            .unwrap_err();
        assert_eq!(err.code(), "BUDGET_EXCEEDED");
    }
}
