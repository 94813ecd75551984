//! The group ring of the symmetric group on three letters with 2-local
//! rational coefficients, and the idempotent splitting of its unit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;

/// A permutation of {1, 2, 3}, stored as the images of 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub [u8; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([1, 2, 3]);

    /// Parses cycle notation such as `(12)`, `(123)` or `()`.
    pub fn cycle(cycle: &str) -> Option<Perm> {
        let digits: Vec<u8> = cycle
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ' '))
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()?;
        if digits.iter().any(|&d| !(1..=3).contains(&d)) {
            return None;
        }
        let mut images = [1, 2, 3];
        for (k, &d) in digits.iter().enumerate() {
            images[d as usize - 1] = digits[(k + 1) % digits.len()];
        }
        Some(Perm(images))
    }

    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize - 1]
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(self, other: Perm) -> Perm {
        Perm([1, 2, 3].map(|i| self.apply(other.apply(i))))
    }

    pub fn all() -> [Perm; 6] {
        [
            Perm([1, 2, 3]),
            Perm([2, 1, 3]),
            Perm([3, 2, 1]),
            Perm([1, 3, 2]),
            Perm([2, 3, 1]),
            Perm([3, 1, 2]),
        ]
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 3];
        let mut out = String::new();
        for start in 1..=3u8 {
            if seen[start as usize - 1] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            while !seen[i as usize - 1] {
                seen[i as usize - 1] = true;
                out.push(char::from(b'0' + i));
                i = self.apply(i);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push('1');
        }
        f.write_str(&out)
    }
}

/// An element of `Q[S_3]`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Perm, Rational64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Perm::IDENTITY)
    }

    pub fn basis(p: Perm) -> Self {
        Self::zero().plus_term(p, Rational64::from_integer(1))
    }

    fn plus_term(mut self, p: Perm, c: Rational64) -> Self {
        let entry = self.terms.entry(p).or_insert_with(|| Rational64::from_integer(0));
        *entry += c;
        if *entry == Rational64::from_integer(0) {
            self.terms.remove(&p);
        }
        self
    }

    /// `sum c_i * p_i` from cycle-notation permutations.
    pub fn from_terms(terms: &[(i64, &str)], denominator: i64) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(c, cycle)| {
            let p = Perm::cycle(cycle).expect("valid cycle notation");
            acc.plus_term(p, Rational64::new(c, denominator))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if every coefficient has odd denominator.
    pub fn is_two_local(&self) -> bool {
        self.terms.values().all(|c| c.denom() % 2 != 0)
    }

    pub fn coefficient(&self, p: Perm) -> Rational64 {
        self.terms.get(&p).copied().unwrap_or_else(|| Rational64::from_integer(0))
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        rhs.terms.iter().fold(self.clone(), |acc, (&p, &c)| acc.plus_term(p, c))
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(&p, &c)| (p, -c)).collect(),
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (&p, &a) in &self.terms {
            for (&q, &b) in &rhs.terms {
                out = out.plus_term(p.compose(q), a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c}){p}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `f1 = (1 + (12) - (13) - (123))/3`.
pub fn f1() -> GroupRingElement {
    GroupRingElement::from_terms(&[(1, "()"), (1, "(12)"), (-1, "(13)"), (-1, "(123)")], 3)
}

/// `f2 = (1 + (13) - (12) - (132))/3`.
pub fn f2() -> GroupRingElement {
    GroupRingElement::from_terms(&[(1, "()"), (1, "(13)"), (-1, "(12)"), (-1, "(132)")], 3)
}

/// `e = (1 + (123) + (132))/3`.
pub fn e() -> GroupRingElement {
    GroupRingElement::from_terms(&[(1, "()"), (1, "(123)"), (1, "(132)")], 3)
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub holds: bool,
}

/// Checks that `f1`, `f2`, `e` are 2-local orthogonal idempotents summing to 1.
pub fn verify_sigma3_idempotents() -> Vec<IdentityCheck> {
    let (f1, f2, e) = (f1(), f2(), e());
    let idempotent = |x: &GroupRingElement| &(x * x) - x == GroupRingElement::zero();
    let orthogonal = [(&f1, &f2), (&f1, &e), (&f2, &e)]
        .iter()
        .all(|(a, b)| (*a * *b).is_zero() && (*b * *a).is_zero());
    vec![
        IdentityCheck { identity: "f1^2 = f1", holds: idempotent(&f1) },
        IdentityCheck { identity: "f2^2 = f2", holds: idempotent(&f2) },
        IdentityCheck { identity: "e^2 = e", holds: idempotent(&e) },
        IdentityCheck {
            identity: "f1 + f2 + e = 1",
            holds: &(&f1 + &f2) + &e == GroupRingElement::one(),
        },
        IdentityCheck {
            identity: "pairwise products vanish",
            holds: orthogonal,
        },
        IdentityCheck {
            identity: "coefficients are 2-local",
            holds: [&f1, &f2, &e].iter().all(|x| x.is_two_local()),
        },
    ]
}
