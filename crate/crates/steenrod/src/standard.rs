//! Standard modules: Brown-Gitler pieces of A//A(1)_* and A//A(2)_*, the
//! quotient A(2)//A(1), and a few small modules.
//!
//! Comodules are built on monomials in the conjugate generators
//! `zeta_k = chi(xi_k)`, with coproduct
//! `Delta zeta_k = sum_i zeta_i (x) zeta_{k-i}^{2^i}`. Left factors are pushed
//! into `A(2)_* = F2[xi_1, xi_2, xi_3]/(xi_1^8, xi_2^4, xi_3^2)` and the
//! resulting coaction is dualized to a left A(2)-module action.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, SteenrodError};
use crate::gf2::BitVec;
use crate::milnor::MilnorElement;
use crate::module::SteenrodModule;

/// Default cap on the number of monomials in a constructed comodule.
pub const DEFAULT_MONOMIAL_BUDGET: usize = 4096;

/// Elements of `A(2)_*` as bitmasks over monomials `xi^R`, using the same
/// indexing as the Milnor basis (which is dual to the monomial basis).
type DualElement = u64;

fn dual_mul(a: DualElement, b: DualElement) -> DualElement {
    let mut out = 0;
    for i in ones(a) {
        let ri = MilnorElement::from_index(i).r;
        for j in ones(b) {
            let rj = MilnorElement::from_index(j).r;
            if let Some(m) = MilnorElement::new(ri[0] + rj[0], ri[1] + rj[1], ri[2] + rj[2]) {
                out ^= 1 << m.index();
            }
        }
    }
    out
}

fn dual_square(a: DualElement) -> DualElement {
    let mut out = 0;
    for i in ones(a) {
        let r = MilnorElement::from_index(i).r;
        if let Some(m) = MilnorElement::new(2 * r[0], 2 * r[1], 2 * r[2]) {
            out ^= 1 << m.index();
        }
    }
    out
}

fn dual_pow2(a: DualElement, k: u32) -> DualElement {
    (0..k).fold(a, |x, _| dual_square(x))
}

fn ones(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            return None;
        }
        let b = w.trailing_zeros() as usize;
        w &= w - 1;
        Some(b)
    })
}

/// `xi_k` in `A(2)_*` (zero for `k >= 4`).
fn xi(k: usize) -> DualElement {
    match k {
        0 => 1,
        1 => 1 << MilnorElement::new(1, 0, 0).unwrap().index(),
        2 => 1 << MilnorElement::new(0, 1, 0).unwrap().index(),
        3 => 1 << MilnorElement::new(0, 0, 1).unwrap().index(),
        _ => 0,
    }
}

/// `zeta_0, ..., zeta_n` in `A(2)_*`, from `sum_i xi_{k-i}^{2^i} zeta_i = 0`.
fn zetas(n: usize) -> Vec<DualElement> {
    let mut z = vec![1u64];
    for k in 1..=n {
        let mut acc = 0;
        for (i, &zi) in z.iter().enumerate() {
            acc ^= dual_mul(dual_pow2(xi(k - i), i as u32), zi);
        }
        z.push(acc);
    }
    z
}

/// Which subalgebra of conjugate monomials a comodule lives in.
#[derive(Clone, Copy, Debug)]
struct Family {
    /// `zeta_k` enters with exponents divisible by `step[k-1]` (1 beyond the list).
    step: &'static [u32],
    /// Truncate the comodule itself to `A(2)_*` (for `A(2)//A(1)_*`).
    truncate: bool,
}

const BO: Family = Family {
    step: &[4, 2],
    truncate: false,
};
const TMF: Family = Family {
    step: &[8, 4, 2],
    truncate: false,
};
const A2_MOD_A1: Family = Family {
    step: &[4, 2],
    truncate: true,
};

fn zeta_degree(k: usize) -> i32 {
    (1 << k) - 1
}

fn zeta_weight(k: usize) -> u32 {
    1 << (k - 1)
}

/// Exponent vectors (index k-1 holds the exponent of `zeta_k`) of weight at most `max_weight`.
fn monomials(family: Family, max_weight: u32, budget: usize) -> Result<Vec<Vec<u32>>> {
    let kmax = (1..).take_while(|&k| zeta_weight(k) <= max_weight.max(1)).last().unwrap_or(1);
    let mut out = Vec::new();
    let mut cur = vec![0u32; kmax];
    fn go(
        k: usize,
        rem: u32,
        family: Family,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        budget: usize,
    ) -> Result<()> {
        if k == cur.len() {
            if family.truncate && !in_a2_profile(cur) {
                return Ok(());
            }
            if out.len() == budget {
                return Err(SteenrodError::BudgetExceeded {
                    what: "comodule monomials".into(),
                    needed: budget + 1,
                    limit: budget,
                });
            }
            let mut v = cur.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
            return Ok(());
        }
        let step = family.step.get(k).copied().unwrap_or(1);
        let mut e = 0;
        while e * zeta_weight(k + 1) <= rem {
            cur[k] = e;
            go(k + 1, rem - e * zeta_weight(k + 1), family, cur, out, budget)?;
            e += step;
        }
        cur[k] = 0;
        Ok(())
    }
    go(0, max_weight, family, &mut cur, &mut out, budget)?;
    out.sort_by_key(|e| (degree_of(e), e.clone()));
    Ok(out)
}

fn degree_of(e: &[u32]) -> i32 {
    e.iter()
        .enumerate()
        .map(|(k, &x)| x as i32 * zeta_degree(k + 1))
        .sum()
}

fn in_a2_profile(e: &[u32]) -> bool {
    const BOUNDS: [u32; 3] = [8, 4, 2];
    e.iter()
        .enumerate()
        .all(|(k, &x)| x == 0 || BOUNDS.get(k).is_some_and(|&b| x < b))
}

/// Coaction of a conjugate monomial: pairs (right monomial, left factor).
fn coaction(e: &[u32], z: &[DualElement], family: Family) -> HashMap<Vec<u32>, DualElement> {
    let mut acc: HashMap<Vec<u32>, DualElement> = HashMap::new();
    acc.insert(Vec::new(), 1);
    for (k0, &ek) in e.iter().enumerate() {
        let k = k0 + 1;
        for b in 0..32 {
            if ek >> b & 1 == 0 {
                continue;
            }
            // (Delta zeta_k)^{2^b} = sum_i zeta_i^{2^b} (x) zeta_{k-i}^{2^{i+b}}
            let mut next: HashMap<Vec<u32>, DualElement> = HashMap::new();
            for (right, left) in &acc {
                for i in 0..=k {
                    let l = dual_pow2(z[i], b);
                    if l == 0 {
                        continue;
                    }
                    let prod = dual_mul(*left, l);
                    if prod == 0 {
                        continue;
                    }
                    let mut r = right.clone();
                    if k > i {
                        let slot = k - i - 1;
                        if r.len() <= slot {
                            r.resize(slot + 1, 0);
                        }
                        r[slot] += 1 << (i as u32 + b);
                    }
                    *next.entry(r).or_insert(0) ^= prod;
                }
            }
            acc = next;
        }
    }
    acc.retain(|r, left| *left != 0 && (!family.truncate || in_a2_profile(r)));
    acc
}

fn from_comodule(family: Family, max_weight: u32, budget: usize) -> Result<SteenrodModule> {
    let basis = monomials(family, max_weight, budget)?;
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let kmax = basis.iter().map(Vec::len).max().unwrap_or(0);
    let z = zetas(kmax.max(1));
    let n = basis.len();
    // table[R][m] = image of m* under Sq(R)
    let mut table = vec![vec![BitVec::zeros(n); n]; 64];
    for (target, e) in basis.iter().enumerate() {
        for (right, left) in coaction(e, &z, family) {
            let source = *index
                .get(&right)
                .expect("right factors of the coaction stay in the comodule");
            for r in ones(left) {
                table[r][source].flip(target);
            }
        }
    }
    let degrees = basis.iter().map(|e| degree_of(e)).collect();
    Ok(SteenrodModule::from_action(degrees, |m, g| table[m.index()][g].clone()))
}

/// Names accepted by [`build_standard`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardModule {
    Trivial,
    Bo(u32),
    Tmf(u32),
    A2ModA1,
    M1,
    DualBo1,
}

impl FromStr for StandardModule {
    type Err = SteenrodError;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = t.to_ascii_uppercase();
        let indexed = |prefix: &str| -> Option<u32> {
            let rest = upper.strip_prefix(prefix)?;
            let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            rest.parse().ok()
        };
        Ok(match upper.as_str() {
            "F2" | "TRIVIAL" => StandardModule::Trivial,
            "A2MODA1" | "A2//A1" => StandardModule::A2ModA1,
            "M1" => StandardModule::M1,
            "DUAL_BO1" | "DUALBO1" | "DBO1" => StandardModule::DualBo1,
            _ => {
                if let Some(j) = indexed("BO") {
                    StandardModule::Bo(j)
                } else if let Some(j) = indexed("TMF") {
                    StandardModule::Tmf(j)
                } else {
                    return Err(SteenrodError::UnknownModule(s.to_string()));
                }
            }
        })
    }
}

impl fmt::Display for StandardModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardModule::Trivial => write!(f, "F2"),
            StandardModule::Bo(j) => write!(f, "BO({j})"),
            StandardModule::Tmf(j) => write!(f, "TMF({j})"),
            StandardModule::A2ModA1 => write!(f, "A2modA1"),
            StandardModule::M1 => write!(f, "M1"),
            StandardModule::DualBo1 => write!(f, "DUAL_BO1"),
        }
    }
}

impl StandardModule {
    pub fn build(self) -> Result<SteenrodModule> {
        self.build_with_budget(DEFAULT_MONOMIAL_BUDGET)
    }

    pub fn build_with_budget(self, budget: usize) -> Result<SteenrodModule> {
        match self {
            StandardModule::Trivial => Ok(SteenrodModule::trivial()),
            StandardModule::Bo(j) => from_comodule(BO, 4 * j, budget),
            StandardModule::Tmf(j) => from_comodule(TMF, 8 * j, budget),
            StandardModule::A2ModA1 => from_comodule(A2_MOD_A1, 12, budget),
            StandardModule::M1 => Ok(m1()),
            StandardModule::DualBo1 => Ok(from_comodule(BO, 4, budget)?.dual()),
        }
    }
}

/// Parses a module name and builds it.
pub fn build_standard(name: &str) -> Result<SteenrodModule> {
    name.parse::<StandardModule>()?.build()
}

/// Three classes in degrees 0, 2, 3 with `Sq^2 x0 = x2`, `Sq^1 x2 = x3`.
fn m1() -> SteenrodModule {
    SteenrodModule::parse_bruner("3\n0 2 3\n0 2 1 1\n0 3 1 2\n1 1 1 2\n")
        .expect("static module text")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zetas_in_terms_of_xi() {
        let z = zetas(3);
        let m = |a, b, c| 1u64 << MilnorElement::new(a, b, c).unwrap().index();
        assert_eq!(z[1], m(1, 0, 0));
        assert_eq!(z[2], m(0, 1, 0) ^ m(3, 0, 0));
        assert_eq!(z[3], m(0, 0, 1) ^ m(1, 2, 0) ^ m(4, 1, 0) ^ m(7, 0, 0));
    }

    #[test]
    fn bo1_structure() {
        let bo1 = build_standard("BO(1)").unwrap();
        assert_eq!(bo1.degrees(), &[0, 4, 6, 7]);
        assert!(bo1.validate().is_valid());
        let sq = |i| MilnorElement::sq(i);
        assert_eq!(bo1.act(sq(4), 0), &BitVec::unit(4, 1));
        assert_eq!(bo1.act(sq(2), 1), &BitVec::unit(4, 2));
        assert_eq!(bo1.act(sq(1), 2), &BitVec::unit(4, 3));
        assert_eq!(bo1.act(sq(6), 0), &BitVec::unit(4, 2));
        assert_eq!(bo1.act(sq(7), 0), &BitVec::unit(4, 3));
        let p21 = MilnorElement::new(0, 2, 0).unwrap();
        assert_eq!(bo1.act(p21, 0), &BitVec::unit(4, 2));
    }

    #[test]
    fn a2moda1_structure() {
        let m = build_standard("A2modA1").unwrap();
        assert_eq!(m.degrees(), &[0, 4, 6, 7, 10, 11, 13, 17]);
        assert!(m.validate().is_valid());
    }

    #[test]
    fn m1_structure() {
        let m = build_standard("M1").unwrap();
        assert_eq!(m.degrees(), &[0, 2, 3]);
        assert_eq!(m.act(MilnorElement::sq(3), 0), &BitVec::unit(3, 2));
        assert!(m.validate().is_valid());
    }

    #[test]
    fn dual_bo1_degrees() {
        let d = build_standard("DUAL_BO1").unwrap();
        let mut degs = d.degrees().to_vec();
        degs.sort();
        assert_eq!(degs, vec![-7, -6, -4, 0]);
        assert!(d.validate().is_valid());
    }

    #[test]
    fn larger_pieces_are_modules() {
        for name in ["BO(2)", "BO(3)", "TMF(1)", "TMF(2)"] {
            let m = build_standard(name).unwrap();
            assert!(m.validate().is_valid(), "{name}");
        }
        assert_eq!(build_standard("TMF(1)").unwrap().degrees(), &[0, 8, 12, 14, 15]);
        // 1, three of weight 4, six products of those and zeta_4
        assert_eq!(build_standard("BO(2)").unwrap().dim(), 11);
    }

    #[test]
    fn budget_is_enforced() {
        let err = StandardModule::Bo(6).build_with_budget(10).unwrap_err();
        assert_eq!(err.code(), "BUDGET_EXCEEDED");
    }

    #[test]
    fn names_parse() {
        assert_eq!("bo(3)".parse::<StandardModule>().unwrap(), StandardModule::Bo(3));
        assert_eq!("TMF2".parse::<StandardModule>().unwrap(), StandardModule::Tmf(2));
        assert!("XYZ".parse::<StandardModule>().is_err());
    }
}
