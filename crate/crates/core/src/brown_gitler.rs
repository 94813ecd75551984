//! bo-Brown-Gitler polynomials
//!
//! `f_0 = 1`, `f_1 = x`, `f_{2j+1} = t^j x f_j`, `f_{2j} = t^j f_j + t^{j+1} s f_{j-1}`,
//! evaluated in `R` (giving `f_j`) or `R'` (giving `f'_j`).

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::ring::{Gen, RingElement, RingId};

pub const DEFAULT_MEMO_BOUND: u64 = 256;

/// Memoized recursion in one ring. Indices above the bound are computed but not stored.
#[derive(Clone, Debug)]
pub struct BgTable {
    ring: RingId,
    bound: u64,
    memo: BTreeMap<u64, RingElement>,
}

impl BgTable {
    pub fn new(ring: RingId) -> Self {
        Self::with_bound(ring, DEFAULT_MEMO_BOUND)
    }

    pub fn with_bound(ring: RingId, bound: u64) -> Self {
        assert!(ring != RingId::RModY, "the recursion lives in R or R'");
        Self {
            ring,
            bound,
            memo: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn get(&mut self, j: u64) -> RingElement {
        if let Some(f) = self.memo.get(&j) {
            return f.clone();
        }
        let ring = self.ring;
        let f = match j {
            0 => RingElement::one(ring),
            1 => RingElement::x(ring),
            _ if j % 2 == 1 => {
                let h = j / 2;
                self.get(h).shift(0, h as i64).try_mul(&RingElement::x(ring)).expect("same ring")
            }
            _ => {
                let h = j / 2;
                let a = self.get(h).shift(0, h as i64);
                let b = self.get(h - 1).shift(1, h as i64 + 1);
                &a + &b
            }
        };
        if j <= self.bound {
            self.memo.insert(j, f.clone());
        }
        f
    }
}

/// `f_j` in `R`.
pub fn bg_poly(j: u64) -> RingElement {
    BgTable::new(RingId::R).get(j)
}

/// `f'_j` in `R'`.
pub fn bg_poly_gloc(j: u64) -> RingElement {
    BgTable::new(RingId::RPrime).get(j)
}

/// `x^k` in `R` for `3 <= k <= k_max`.
pub fn power_table(k_max: u32) -> Vec<(u32, RingElement)> {
    let x = RingElement::x(RingId::R);
    let mut out = Vec::new();
    let mut p = x.pow(2);
    for k in 3..=k_max {
        p = &p * &x;
        out.push((k, p.clone()));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub j: u64,
    pub violations: Vec<String>,
}

impl ParityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `f'_j` has the shape `a s^i t^j + b s^i t^{j-1} x + c s^i t^{j-2} x^2`
/// with nonnegative coefficients, and no constant terms for odd `j`.
pub fn verify_parity(j: u64) -> ParityReport {
    verify_parity_of(j, &bg_poly_gloc(j))
}

pub fn verify_parity_of(j: u64, f: &RingElement) -> ParityReport {
    let mut violations = Vec::new();
    for (m, c) in f.terms() {
        let xdeg = m.gen.exponents().0 as i64;
        if !c.is_positive() {
            violations.push(format!("coefficient {c} on {m}"));
        }
        if m.t_exp != j as i64 - xdeg {
            violations.push(format!("{m} has t-exponent {} instead of {}", m.t_exp, j as i64 - xdeg));
        }
        if m.gen == Gen::One && j % 2 == 1 {
            violations.push(format!("constant term {m} for odd j"));
        }
        if m.gen == Gen::Y {
            violations.push(format!("y-term {m}"));
        }
    }
    ParityReport { j, violations }
}

/// `f_j = phi(f'_j)` modulo `y`.
pub fn compare_mod_y(j: u64) -> bool {
    bg_poly(j).project_mod_y() == bg_poly_gloc(j).embed_gprime()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> RingElement {
        RingElement::parse(text, RingId::R).unwrap()
    }

    fn rp(text: &str) -> RingElement {
        RingElement::parse(text, RingId::RPrime).unwrap()
    }

    #[test]
    fn low_polynomials() {
        assert_eq!(bg_poly(0), RingElement::one(RingId::R));
        assert_eq!(bg_poly(2), r("t x + s t^2"));
        assert_eq!(bg_poly(7), r("s^2 t^7 y + 2 s t^6 x"));
        assert_eq!(bg_poly(6), r("t^4 x^2 + s t^5 x + s^2 t^6"));
    }

    #[test]
    fn glocal_polynomials() {
        assert_eq!(bg_poly_gloc(0), RingElement::one(RingId::RPrime));
        assert_eq!(bg_poly_gloc(3), rp("t x^2"));
        assert_eq!(bg_poly_gloc(7), rp("2 s t^6 x"));
    }

    #[test]
    fn power_rows() {
        let rows = power_table(8);
        assert_eq!(rows[0], (3, r("s^2 t^3 y + 2 s t^2 x")));
        assert_eq!(rows[2].1, r("s^6 t^7 y + 4 s^3 t^5 y + t^3 y + 4 s^2 t^4 x"));
        assert_eq!(rows[5].1.coeff(0, 4, Gen::Y), 1.into());
    }

    #[test]
    fn parity_and_mod_y() {
        for j in [0, 1, 2, 7, 12] {
            assert!(verify_parity(j).holds(), "{:?}", verify_parity(j));
            assert!(compare_mod_y(j), "j = {j}");
        }
        let bad = verify_parity_of(3, &rp("s t^3"));
        assert!(!bad.holds());
    }

    #[test]
    fn memo_bound_does_not_change_values() {
        let mut small = BgTable::with_bound(RingId::R, 4);
        let mut big = BgTable::new(RingId::R);
        for j in [5, 17, 40] {
            assert_eq!(small.get(j), big.get(j));
        }
    }
}
