//! The rings `R`, `R'` and `R/(y)` of Laurent polynomials in `s, t` over the
//! integers with generators `x, y`, their canonical forms and the duality `D`.
//!
//! `R` has relations `x^3 = 2t^2 s x + t^3 s^2 y`, `xy = (t^3 s^3 + t^5 s^6) y`
//! and `t^6 s^8 = 1`. `R'` keeps only `x^3 = 2t^2 s x`. `R/(y)` is `R'` with
//! the periodicity `t^6 s^8 = 1`.
//!
//! Canonical monomials are `s^i t^l m` with `m` one of `1, x, x^2, y`; in the
//! periodic rings `0 <= i < 8`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingId {
    #[serde(rename = "R")]
    R,
    #[serde(rename = "RPRIME")]
    RPrime,
    #[serde(rename = "R_MOD_Y")]
    RModY,
}

impl RingId {
    pub fn has_y(self) -> bool {
        self == RingId::R
    }

    pub fn is_periodic(self) -> bool {
        self != RingId::RPrime
    }

    fn index(self) -> usize {
        match self {
            RingId::R => 0,
            RingId::RPrime => 1,
            RingId::RModY => 2,
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingId::R => "R",
            RingId::RPrime => "R'",
            RingId::RModY => "R/(y)",
        })
    }
}

impl FromStr for RingId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(RingId::R),
            "rp" | "r'" | "rprime" => Ok(RingId::RPrime),
            "rmody" | "r_mod_y" | "r/(y)" | "r/y" => Ok(RingId::RModY),
            _ => Err(format!("unknown ring `{s}` (expected R, Rp or RmodY)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "x^2")]
    X2,
    #[serde(rename = "y")]
    Y,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::One, Gen::X, Gen::X2, Gen::Y];

    /// `(x-degree, y-degree)`.
    pub fn exponents(self) -> (u32, u32) {
        match self {
            Gen::One => (0, 0),
            Gen::X => (1, 0),
            Gen::X2 => (2, 0),
            Gen::Y => (0, 1),
        }
    }

    fn from_exponents(a: u32, b: u32) -> Option<Gen> {
        match (a, b) {
            (0, 0) => Some(Gen::One),
            (1, 0) => Some(Gen::X),
            (2, 0) => Some(Gen::X2),
            (0, 1) => Some(Gen::Y),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::One => "1",
            Gen::X => "x",
            Gen::X2 => "x^2",
            Gen::Y => "y",
        })
    }
}

/// `s^s_exp t^t_exp gen`. Field order gives the serialization sort key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub gen: Gen,
    pub s_exp: i64,
    pub t_exp: i64,
}

impl Monomial {
    pub fn new(s_exp: i64, t_exp: i64, gen: Gen) -> Self {
        Self { gen, s_exp, t_exp }
    }

    /// Representative with `0 <= s_exp < 8`, using `t^6 s^8 = 1`.
    pub fn windowed(self) -> Self {
        let (s, t) = window(self.s_exp, self.t_exp);
        Self { s_exp: s, t_exp: t, ..self }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        push_power(&mut parts, "s", self.s_exp);
        push_power(&mut parts, "t", self.t_exp);
        if self.gen != Gen::One || parts.is_empty() {
            parts.push(self.gen.to_string());
        }
        f.write_str(&parts.join(" "))
    }
}

fn push_power(parts: &mut Vec<String>, var: &str, e: i64) {
    match e {
        0 => {}
        1 => parts.push(var.to_string()),
        _ => parts.push(format!("{var}^{e}")),
    }
}

fn window(s: i64, t: i64) -> (i64, i64) {
    let k = s.div_euclid(8);
    (s - 8 * k, t - 6 * k)
}

/// One term of an unreduced expression `coeff s^s t^t x^x y^y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub s_exp: i64,
    pub t_exp: i64,
    pub x_exp: u32,
    pub y_exp: u32,
    pub coeff: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawExpression(pub Vec<RawTerm>);

impl RawExpression {
    pub fn term(coeff: impl Into<BigInt>, s_exp: i64, t_exp: i64, x_exp: u32, y_exp: u32) -> Self {
        RawExpression(vec![RawTerm {
            s_exp,
            t_exp,
            x_exp,
            y_exp,
            coeff: coeff.into(),
        }])
    }
}

/// Order in which the rewrite rules are applied. Both reach the same normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Highest `x`-degree + 2 `y`-degree first, rules `x^3, xy, y^2`, window once at the end.
    MeasureFirst,
    /// Lowest measure first, rules `y^2, xy, x^3`, window after every step.
    EagerWindow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct RawKey {
    measure: u32,
    x: u32,
    y: u32,
    s: i64,
    t: i64,
}

impl RawKey {
    fn new(x: u32, y: u32, s: i64, t: i64) -> Self {
        Self { measure: x + 2 * y, x, y, s, t }
    }
}

#[derive(Clone, Copy)]
enum Rule {
    X3,
    XY,
    Y2,
}

/// `(coeff, ds, dt, dx, dy)` summands replacing the matched factor.
fn rule_output(rule: Rule, ring: RingId) -> &'static [(i64, i64, i64, i32, i32)] {
    match rule {
        Rule::X3 if ring.has_y() => &[(2, 1, 2, -2, 0), (1, 2, 3, -3, 1)],
        Rule::X3 => &[(2, 1, 2, -2, 0)],
        Rule::XY => &[(1, 3, 3, -1, 0), (1, 6, 5, -1, 0)],
        Rule::Y2 => &[(1, 0, 0, 0, -1), (1, -1, 0, 0, -1), (1, 2, 2, 0, -1), (1, 5, 4, 0, -1)],
    }
}

fn applies(rule: Rule, x: u32, y: u32) -> bool {
    match rule {
        Rule::X3 => x >= 3,
        Rule::XY => x >= 1 && y >= 1,
        Rule::Y2 => y >= 2,
    }
}

/// Rewrites `e` to canonical form in `ring`.
pub fn normalize(e: &RawExpression, ring: RingId) -> Result<RingElement> {
    normalize_with(e, ring, Strategy::MeasureFirst)
}

pub fn normalize_with(e: &RawExpression, ring: RingId, strategy: Strategy) -> Result<RingElement> {
    if !ring.has_y() && e.0.iter().any(|t| t.y_exp > 0 && !t.coeff.is_zero()) {
        return Err(Error::YInYFreeRing(ring));
    }
    let eager = strategy == Strategy::EagerWindow && ring.is_periodic();
    let rules = match strategy {
        Strategy::MeasureFirst => [Rule::X3, Rule::XY, Rule::Y2],
        Strategy::EagerWindow => [Rule::Y2, Rule::XY, Rule::X3],
    };
    let mut pending: BTreeMap<RawKey, BigInt> = BTreeMap::new();
    let insert = |pending: &mut BTreeMap<RawKey, BigInt>, key: RawKey, c: BigInt| {
        let key = if eager {
            let (s, t) = window(key.s, key.t);
            RawKey { s, t, ..key }
        } else {
            key
        };
        add_into(pending, key, c);
    };
    for term in &e.0 {
        insert(
            &mut pending,
            RawKey::new(term.x_exp, term.y_exp, term.s_exp, term.t_exp),
            term.coeff.clone(),
        );
    }
    let mut out = RingElement::zero(ring);
    loop {
        let next = match strategy {
            Strategy::MeasureFirst => pending.pop_last(),
            Strategy::EagerWindow => pending.pop_first(),
        };
        let Some((key, c)) = next else { break };
        if c.is_zero() {
            continue;
        }
        match rules.iter().find(|&&r| applies(r, key.x, key.y)) {
            None => {
                let gen = Gen::from_exponents(key.x, key.y).expect("irreducible exponents");
                out.add_term(Monomial::new(key.s, key.t, gen), c);
            }
            Some(&rule) => {
                for &(k, ds, dt, dx, dy) in rule_output(rule, ring) {
                    let nk = RawKey::new(
                        (key.x as i32 + dx) as u32,
                        (key.y as i32 + dy) as u32,
                        key.s + ds,
                        key.t + dt,
                    );
                    insert(&mut pending, nk, &c * k);
                }
            }
        }
    }
    Ok(out)
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Integer combination of canonical monomials in one of the three rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingId,
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElement {
    pub fn zero(ring: RingId) -> Self {
        Self {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: RingId) -> Self {
        Self::monomial(ring, 0, 0, Gen::One, 1)
    }

    pub fn x(ring: RingId) -> Self {
        Self::monomial(ring, 0, 0, Gen::X, 1)
    }

    /// `y` in `R`.
    pub fn y() -> Self {
        Self::monomial(RingId::R, 0, 0, Gen::Y, 1)
    }

    /// `coeff s^s t^t gen`, windowed. Panics if `gen` is `y` outside `R`.
    pub fn monomial(ring: RingId, s: i64, t: i64, gen: Gen, coeff: impl Into<BigInt>) -> Self {
        assert!(gen != Gen::Y || ring.has_y(), "y does not exist in {ring}");
        let mut e = Self::zero(ring);
        e.add_term(Monomial::new(s, t, gen), coeff.into());
        e
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: i64, t: i64, gen: Gen) -> BigInt {
        let m = self.canonical(Monomial::new(s, t, gen));
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    fn canonical(&self, m: Monomial) -> Monomial {
        if self.ring.is_periodic() {
            m.windowed()
        } else {
            m
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let m = self.canonical(m);
        add_into(&mut self.terms, m, c);
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            add_into(&mut out.terms, m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let table = product_table(self.ring);
        let mut out = Self::zero(self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for (m, k) in &table[a.gen.index()][b.gen.index()] {
                    let m = Monomial::new(m.s_exp + a.s_exp + b.s_exp, m.t_exp + a.t_exp + b.t_exp, m.gen);
                    out.add_term(m, &c * k);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplication by `s^s t^t`.
    pub fn shift(&self, s: i64, t: i64) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(m.s_exp + s, m.t_exp + t, m.gen), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.ring);
        }
        Self {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// The duality `t -> t^-1, s -> s^-1, x -> t^-2 s^-1 x, y -> s y`.
    pub fn dualize(&self) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let (ds, dt) = match m.gen {
                Gen::One => (0, 0),
                Gen::X => (-1, -2),
                Gen::X2 => (-2, -4),
                Gen::Y => (1, 0),
            };
            out.add_term(Monomial::new(ds - m.s_exp, dt - m.t_exp, m.gen), c.clone());
        }
        out
    }

    /// Reduction `R -> R/(y)`.
    pub fn project_mod_y(&self) -> Self {
        assert_eq!(self.ring, RingId::R, "project_mod_y takes an element of R");
        Self {
            ring: RingId::RModY,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.gen != Gen::Y)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The map `R' -> R/(y)` fixing `s, t, x`.
    pub fn embed_gprime(&self) -> Self {
        assert_eq!(self.ring, RingId::RPrime, "embed_gprime takes an element of R'");
        let mut out = Self::zero(RingId::RModY);
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    /// Parses `text` and normalizes it in `ring`.
    pub fn parse(text: &str, ring: RingId) -> Result<Self> {
        normalize(&parse_expression(text)?, ring)
    }

    /// Terms in display order: generator descending, then `s`, then `t`, all descending.
    pub fn display_terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v.into_iter()
    }

    /// Stable term list sorted by `(gen, s, t)`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "gen": m.gen,
                    "s": m.s_exp,
                    "t": m.t_exp,
                    "coeff": bigint_json(c),
                })
            })
            .collect();
        serde_json::json!({ "ring": self.ring, "terms": terms })
    }
}

/// Integer as a JSON number when it fits in 64 bits, otherwise a decimal string.
pub fn bigint_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

type ProductTable = [[Vec<(Monomial, BigInt)>; 4]; 4];

/// Canonical products `g * h` of generators.
fn product_table(ring: RingId) -> &'static ProductTable {
    static TABLES: [OnceLock<ProductTable>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[ring.index()].get_or_init(|| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let (a1, b1) = Gen::ALL[i].exponents();
                let (a2, b2) = Gen::ALL[j].exponents();
                if !ring.has_y() && b1 + b2 > 0 {
                    return Vec::new();
                }
                let raw = RawExpression::term(1, 0, 0, a1 + a2, b1 + b2);
                let e = normalize(&raw, ring).expect("generator product");
                e.terms.into_iter().collect()
            })
        })
    })
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mono = m.to_string();
            if a.is_one() {
                f.write_str(&mono)?;
            } else if mono == "1" {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a} {mono}")?;
            }
        }
        Ok(())
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    /// Panics on a ring mismatch; use [`RingElement::try_add`] to handle it.
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

/// Reads the textual form, e.g. `s^2 t^3 y + 2 s t^2 x` or `t^{-6} s^7 * y - x^3`.
pub fn parse_expression(text: &str) -> Result<RawExpression> {
    Parser { src: text.as_bytes(), pos: 0 }.expression()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<RawExpression> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            None => return self.err("empty expression"),
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(RawExpression(terms))
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut t = RawTerm {
            s_exp: 0,
            t_exp: 0,
            x_exp: 0,
            y_exp: 0,
            coeff: BigInt::one(),
        };
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(b'*') if factors > 0 => {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit() || b"stxy".contains(&c)) {
                        return self.err("expected a factor after `*`");
                    }
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.digits()?;
                    t.coeff *= n;
                }
                Some(c @ (b's' | b't' | b'x' | b'y')) => {
                    self.pos += 1;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    match c {
                        b's' => t.s_exp += e,
                        b't' => t.t_exp += e,
                        _ => {
                            if e < 0 {
                                return self.err(format!("negative power of {}", c as char));
                            }
                            let e = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
                            if c == b'x' {
                                t.x_exp += e;
                            } else {
                                t.y_exp += e;
                            }
                        }
                    }
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return match self.peek() {
                None => self.err("expected a term"),
                Some(c) => self.err(format!("expected a term, found `{}`", c as char)),
            };
        }
        Ok(t)
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<i64> {
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
        }
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let n = self.digits()?;
        let n = i64::try_from(&n).or_else(|_| {
            self.pos = start;
            self.err("exponent too large")
        })?;
        if braced {
            if self.peek() != Some(b'}') {
                return self.err("expected `}`");
            }
            self.pos += 1;
        }
        Ok(if neg { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> RingElement {
        RingElement::parse(text, RingId::R).unwrap()
    }

    #[test]
    fn cube_of_x() {
        assert_eq!(r("x^3").to_string(), "s^2 t^3 y + 2 s t^2 x");
        let rp = RingElement::parse("x^3", RingId::RPrime).unwrap();
        assert_eq!(rp.to_string(), "2 s t^2 x");
    }

    #[test]
    fn y_squared() {
        assert_eq!(r("y^2"), r("y + s^7 t^6 y + s^2 t^2 y + s^5 t^4 y"));
        assert_eq!(r("y^2"), r("y + s^-1 y + t^2 s^2 y + t^4 s^5 y"));
    }

    #[test]
    fn powers_of_x() {
        let x = RingElement::x(RingId::R);
        assert_eq!(x.pow(4), r("s^5 t^6 y + t^2 y + 2 s t^2 x^2"));
        assert_eq!(x.pow(6), r("5 s^6 t^8 y + s^4 t^6 y + s^3 t^6 y + 5 s t^4 y + 4 s^2 t^4 x^2"));
        assert_eq!(x.pow(16).coeff(7, 14, Gen::X2), BigInt::from(128));
        assert_eq!(x.pow(1), x);
        assert_eq!(x.pow(0), RingElement::one(RingId::R));
    }

    #[test]
    fn products_match_normalization() {
        let x = RingElement::x(RingId::R);
        let x2 = r("x^2");
        assert_eq!(&x * &x2, r("x^3"));
        assert_eq!(&r("x^3") * &x, r("x^4"));
        assert_eq!(&x * &RingElement::y(), r("x y"));
        assert_eq!(&RingElement::y() * &RingElement::y(), r("y^2"));
    }

    #[test]
    fn addition() {
        let a = r("t x");
        let b = r("s t^2");
        assert_eq!((&a + &b).to_string(), "t x + s t^2");
        assert!((&a - &a).is_zero());
        assert_eq!(&a + &RingElement::zero(RingId::R), a);
        let err = a.try_add(&RingElement::x(RingId::RPrime)).unwrap_err();
        assert_eq!(err.code(), "RING_MISMATCH");
    }

    #[test]
    fn y_rejected_in_y_free_rings() {
        for ring in [RingId::RPrime, RingId::RModY] {
            let err = RingElement::parse("x y", ring).unwrap_err();
            assert_eq!(err.code(), "Y_IN_Y_FREE_RING");
        }
    }

    #[test]
    fn duality() {
        let x = RingElement::x(RingId::R);
        assert_eq!(x.dualize().to_string(), "s^7 t^4 x");
        assert_eq!(RingElement::y().dualize().to_string(), "s y");
        assert_eq!(x.dualize().dualize(), x);
        let rp = RingElement::x(RingId::RPrime).dualize();
        assert_eq!(rp.to_string(), "s^-1 t^-2 x");
    }

    #[test]
    fn relations_are_dual_stable() {
        let x = RingElement::x(RingId::R);
        let y = RingElement::y();
        let lhs = x.dualize().pow(3);
        let rhs = r("2 t^2 s x + t^3 s^2 y").dualize();
        assert_eq!(lhs, rhs);
        assert_eq!(&x.dualize() * &y.dualize(), r("t^3 s^3 y + t^5 s^6 y").dualize());
    }

    #[test]
    fn maps_to_r_mod_y() {
        let f7 = r("s^2 t^7 y + 2 s t^6 x");
        assert_eq!(f7.project_mod_y().to_string(), "2 s t^6 x");
        assert!(RingElement::y().project_mod_y().is_zero());
        let p = RingElement::parse("s^8 t^6", RingId::RPrime).unwrap();
        assert_eq!(p.embed_gprime(), RingElement::one(RingId::RModY));
    }

    #[test]
    fn parser_forms() {
        assert_eq!(r("1"), RingElement::one(RingId::R));
        assert_eq!(r("0"), RingElement::zero(RingId::R));
        assert_eq!(r("2 * s * t^{17} * y"), r("2 s t^17 y"));
        assert_eq!(r("-x + x"), RingElement::zero(RingId::R));
        assert_eq!(r("s s t"), r("s^2 t"));
        assert_eq!(r("3x"), r("3 x"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        for (text, pos) in [("", 0), ("x +", 3), ("2 s ^ ", 6), ("x^{2", 4), ("q", 0), ("x^-1", 4), ("x * + y", 4)] {
            match parse_expression(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trip() {
        let e = r("-3 s^3 t^-4 x^2 + 7 y - 1 + x");
        assert_eq!(r(&e.to_string()), e);
        assert_eq!(e.to_string(), "7 y - 3 s^3 t^-4 x^2 + x - 1");
    }

    #[test]
    fn strategies_agree_on_high_powers() {
        for ring in [RingId::R, RingId::RPrime, RingId::RModY] {
            for a in 0..12 {
                let b = if ring.has_y() { a % 4 } else { 0 };
                let raw = RawExpression::term(3, -2, 5, a, b);
                let p = normalize_with(&raw, ring, Strategy::MeasureFirst).unwrap();
                let q = normalize_with(&raw, ring, Strategy::EagerWindow).unwrap();
                assert_eq!(p, q, "x^{a} y^{b} in {ring}");
            }
        }
    }
}
