//! Decomposition reports: ring elements read as sums of shifted summands
//! `Σ^{8l,i} F2`, `Σ^{8l,i} bo1`, `Σ^{8l,i} bo1^2` and `Σ^{8l,i} TMF0(3)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::brown_gitler::BgTable;
use crate::error::{Error, Result};
use crate::ring::{bigint_json, Gen, Monomial, RingElement, RingId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SummandKind {
    F2,
    BO1,
    BO1SQ,
    TMF03,
}

impl SummandKind {
    pub fn gen(self) -> Gen {
        match self {
            SummandKind::F2 => Gen::One,
            SummandKind::BO1 => Gen::X,
            SummandKind::BO1SQ => Gen::X2,
            SummandKind::TMF03 => Gen::Y,
        }
    }

    pub fn from_gen(g: Gen) -> Self {
        match g {
            Gen::One => SummandKind::F2,
            Gen::X => SummandKind::BO1,
            Gen::X2 => SummandKind::BO1SQ,
            Gen::Y => SummandKind::TMF03,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            SummandKind::F2 => "F2",
            SummandKind::BO1 => "BO1",
            SummandKind::BO1SQ => "BO1SQ",
            SummandKind::TMF03 => "TMF03",
        }
    }
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandKind::F2 => "F2",
            SummandKind::BO1 => "bo1",
            SummandKind::BO1SQ => "bo1^2",
            SummandKind::TMF03 => "TMF0(3)",
        })
    }
}

impl FromStr for SummandKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "f2" => Ok(SummandKind::F2),
            "bo1" => Ok(SummandKind::BO1),
            "bo1^2" | "bo1sq" | "bo1^{2}" => Ok(SummandKind::BO1SQ),
            "tmf" | "tmf0(3)" | "tmf03" => Ok(SummandKind::TMF03),
            _ => Err(format!("unknown summand kind `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Locality {
    V2,
    G,
}

impl Locality {
    pub fn ring(self) -> RingId {
        match self {
            Locality::V2 => RingId::R,
            Locality::G => RingId::RPrime,
        }
    }
}

impl FromStr for Locality {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "v2" => Ok(Locality::V2),
            "g" => Ok(Locality::G),
            _ => Err(format!("unknown locality `{s}` (expected v2 or g)")),
        }
    }
}

impl fmt::Display for Locality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Locality::V2 => "v2",
            Locality::G => "g",
        })
    }
}

/// `multiplicity · Σ^{internal_shift, filtration_shift} kind`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub kind: SummandKind,
    pub internal_shift: i64,
    pub filtration_shift: i64,
    pub multiplicity: BigInt,
}

impl Summand {
    pub fn new(kind: SummandKind, internal_shift: i64, filtration_shift: i64, multiplicity: impl Into<BigInt>) -> Self {
        Self {
            kind,
            internal_shift,
            filtration_shift,
            multiplicity: multiplicity.into(),
        }
    }

    fn key(&self) -> (SummandKind, i64, i64) {
        (self.kind, self.internal_shift, self.filtration_shift)
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.filtration_shift, self.internal_shift / 8, self.kind.gen())
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.multiplicity.is_one() {
            write!(f, "{} ", self.multiplicity)?;
        }
        write!(f, "Σ^{{{},{}}} {}", self.internal_shift, self.filtration_shift, self.kind)
    }
}

/// `s^i t^l m` with positive coefficient `c` to `c · Σ^{8l,i}` of the matching kind.
pub fn monomial_to_summand(m: &Monomial, coeff: &BigInt) -> Result<Summand> {
    if !coeff.is_positive() {
        return Err(Error::NegativeMultiplicity {
            monomial: m.to_string(),
            coeff: coeff.to_string(),
        });
    }
    Ok(Summand {
        kind: SummandKind::from_gen(m.gen),
        internal_shift: 8 * m.t_exp,
        filtration_shift: m.s_exp,
        multiplicity: coeff.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Bo(u64),
    Power(u32),
    Tmfbar { n: u32, weight: u64 },
    Element(String),
    Dual(Box<Source>),
}

impl Source {
    fn to_json(&self) -> serde_json::Value {
        match self {
            Source::Bo(j) => serde_json::json!({"type": "bo", "j": j}),
            Source::Power(k) => serde_json::json!({"type": "power", "k": k}),
            Source::Tmfbar { n, weight } => serde_json::json!({"type": "tmfbar", "n": n, "j": weight}),
            Source::Element(e) => serde_json::json!({"type": "element", "expr": e}),
            Source::Dual(s) => serde_json::json!({"type": "dual", "of": s.to_json()}),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Bo(j) => write!(f, "bo_{j}"),
            Source::Power(k) => write!(f, "bo1^{k}"),
            Source::Tmfbar { n, weight } => write!(f, "tmfbar^{n} weight {}", 8 * weight),
            Source::Element(e) => write!(f, "{e}"),
            Source::Dual(s) => write!(f, "D({s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionReport {
    pub locality: Locality,
    pub source: Source,
    pub summands: Vec<Summand>,
}

impl DecompositionReport {
    /// Reads every term of `e` as a summand. `e` must live in `R` (v2) or `R'` (g).
    pub fn from_element(e: &RingElement, locality: Locality, source: Source) -> Result<Self> {
        if e.ring() != locality.ring() {
            return Err(Error::RingMismatch {
                left: e.ring(),
                right: locality.ring(),
            });
        }
        let mut summands = e
            .terms()
            .iter()
            .map(|(m, c)| monomial_to_summand(m, c))
            .collect::<Result<Vec<_>>>()?;
        summands.sort_by_key(Summand::key);
        Ok(Self {
            locality,
            source,
            summands,
        })
    }

    /// Builds a report from arbitrary summands, normalizing shifts and merging duplicates.
    pub fn from_summands(locality: Locality, source: Source, summands: impl IntoIterator<Item = Summand>) -> Result<Self> {
        let e = Self {
            locality,
            source: source.clone(),
            summands: summands.into_iter().collect(),
        }
        .to_element();
        Self::from_element(&e, locality, source)
    }

    /// The ring element `Σ mult · s^i t^{n/8} gen`.
    pub fn to_element(&self) -> RingElement {
        let ring = self.locality.ring();
        let mut e = RingElement::zero(ring);
        for s in &self.summands {
            let m = s.monomial();
            e = &e + &RingElement::monomial(ring, m.s_exp, m.t_exp, m.gen, s.multiplicity.clone());
        }
        e
    }

    pub fn total_multiplicity(&self, kind: SummandKind) -> BigInt {
        self.summands.iter().filter(|s| s.kind == kind).map(|s| &s.multiplicity).sum()
    }

    /// Shifts every summand by `Σ^{n,s}`.
    pub fn shifted(&self, n: i64, s: i64) -> Self {
        assert_eq!(n % 8, 0, "internal shifts are multiples of 8");
        let e = self.to_element().shift(s, n / 8);
        Self::from_element(&e, self.locality, self.source.clone()).expect("shifting keeps multiplicities")
    }

    /// Parses `2 Σ^{16,1} bo1 + Σ^{24,2} TMF` (also `S^{..}`, `Sigma^{..}`, and `Σ^{24}` for `Σ^{24,0}`).
    pub fn parse(text: &str, locality: Locality) -> Result<Self> {
        let mut summands = Vec::new();
        let mut offset = 0;
        for piece in text.split(['+', '⊕']) {
            let here = offset + (piece.len() - piece.trim_start().len());
            offset += piece.len() + 1;
            let p = piece.trim();
            if p.is_empty() {
                return Err(parse_err(here, "empty summand"));
            }
            let (mult, rest) = match p.find(|c: char| !c.is_ascii_digit()) {
                Some(0) => (BigInt::one(), p),
                Some(i) => (p[..i].parse().expect("digits"), p[i..].trim_start()),
                None => return Err(parse_err(here, "missing Σ-shift")),
            };
            let rest = ["Σ^", "S^", "Sigma^"]
                .iter()
                .find_map(|pre| rest.strip_prefix(pre))
                .ok_or_else(|| parse_err(here, "expected Σ^{n,s}"))?;
            let (shift, kind) = if let Some(r) = rest.strip_prefix('{') {
                let close = r.find('}').ok_or_else(|| parse_err(here, "expected `}`"))?;
                (&r[..close], r[close + 1..].trim())
            } else {
                let end = r_end(rest);
                (&rest[..end], rest[end..].trim())
            };
            let mut parts = shift.split(',').map(|v| v.trim().parse::<i64>());
            let n = parts
                .next()
                .and_then(|v| v.ok())
                .ok_or_else(|| parse_err(here, "bad internal shift"))?;
            let s = match parts.next() {
                None => 0,
                Some(v) => v.map_err(|_| parse_err(here, "bad filtration shift"))?,
            };
            if parts.next().is_some() || n % 8 != 0 {
                return Err(parse_err(here, "shift must be Σ^{n,s} with n divisible by 8"));
            }
            let kind: SummandKind = kind.parse().map_err(|m: String| parse_err(here, m))?;
            summands.push(Summand::new(kind, n, s, mult));
        }
        Self::from_summands(locality, Source::Element(text.trim().to_string()), summands)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "locality": self.locality,
            "source": self.source.to_json(),
            "summands": self.summands.iter().map(|s| serde_json::json!({
                "kind": s.kind.tag(),
                "shift": [s.internal_shift, s.filtration_shift],
                "mult": bigint_json(&s.multiplicity),
            })).collect::<Vec<_>>(),
        })
    }
}

fn r_end(s: &str) -> usize {
    s.find(|c: char| !(c.is_ascii_digit() || c == '-')).unwrap_or(s.len())
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.summands.iter().map(Summand::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn decompose_bo(j: u64, locality: Locality) -> Result<DecompositionReport> {
    let f = BgTable::new(locality.ring()).get(j);
    DecompositionReport::from_element(&f, locality, Source::Bo(j))
}

pub fn decompose_power(k: u32, locality: Locality) -> Result<DecompositionReport> {
    let p = RingElement::x(locality.ring()).pow(k);
    DecompositionReport::from_element(&p, locality, Source::Power(k))
}

/// Applies the duality to the underlying element.
pub fn dualize_report(r: &DecompositionReport) -> Result<DecompositionReport> {
    let source = match &r.source {
        Source::Dual(inner) => (**inner).clone(),
        other => Source::Dual(Box::new(other.clone())),
    };
    DecompositionReport::from_element(&r.to_element().dualize(), r.locality, source)
}

/// Power series in `w` with coefficients in one ring, truncated above degree `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub bound: usize,
    pub coefficients: Vec<RingElement>,
}

impl TruncatedSeries {
    /// `h = Σ_{1 <= j <= bound} t^j f_j w^j`.
    pub fn h(ring: RingId, bound: usize) -> Self {
        let mut table = BgTable::new(ring);
        let mut coefficients = vec![RingElement::zero(ring)];
        for j in 1..=bound {
            coefficients.push(table.get(j as u64).shift(0, j as i64));
        }
        Self { bound, coefficients }
    }

    pub fn one(ring: RingId, bound: usize) -> Self {
        let mut coefficients = vec![RingElement::zero(ring); bound + 1];
        coefficients[0] = RingElement::one(ring);
        Self { bound, coefficients }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let ring = self.coefficients[0].ring();
        let mut coefficients = vec![RingElement::zero(ring); bound + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(bound + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(bound + 1 - i) {
                if !b.is_zero() {
                    coefficients[i + j] = &coefficients[i + j] + &(a * b);
                }
            }
        }
        Self { bound, coefficients }
    }

    pub fn pow(&self, n: u32) -> Self {
        let ring = self.coefficients[0].ring();
        (0..n).fold(Self::one(ring, self.bound), |acc, _| acc.mul(self))
    }

    pub fn coefficient(&self, j: usize) -> &RingElement {
        &self.coefficients[j]
    }
}

/// Weight-`8j` summand reports of `tmfbar^{⊗n}` for `n <= j <= j_max`.
pub fn tmfbar_series(n: u32, j_max: u64, locality: Locality) -> Result<BTreeMap<u64, DecompositionReport>> {
    let hn = TruncatedSeries::h(locality.ring(), j_max as usize).pow(n);
    let mut out = BTreeMap::new();
    for j in 0..=j_max {
        let c = hn.coefficient(j as usize);
        if j < n as u64 && !c.is_zero() {
            unreachable!("h^n has no terms below w^n");
        }
        if j >= n as u64 {
            out.insert(
                j,
                DecompositionReport::from_element(c, locality, Source::Tmfbar { n, weight: j })?,
            );
        }
    }
    Ok(out)
}

/// `Σ t^j f_{i_1} ... f_{i_n}` over compositions `i_1 + ... + i_n = j` with all parts positive.
pub fn brute_force_weight(n: u32, j: u64, ring: RingId) -> RingElement {
    let mut table = BgTable::new(ring);
    let f: Vec<RingElement> = (0..=j).map(|i| table.get(i)).collect();
    let mut total = RingElement::zero(ring);
    let mut parts = Vec::with_capacity(n as usize);
    compositions(n, j, &mut parts, &mut |p| {
        let prod = p.iter().fold(RingElement::one(ring), |acc, &i| &acc * &f[i as usize]);
        total = &total + &prod;
    });
    total.shift(0, j as i64)
}

fn compositions(n: u32, j: u64, parts: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
    if n == 0 {
        if j == 0 {
            visit(parts);
        }
        return;
    }
    let max = j.saturating_sub(n as u64 - 1);
    for i in 1..=max {
        parts.push(i);
        compositions(n - 1, j - i, parts, visit);
        parts.pop();
    }
}

/// Merges multiplicities by summand position.
pub fn summand_map(r: &DecompositionReport) -> BTreeMap<(SummandKind, i64, i64), BigInt> {
    let mut out: BTreeMap<_, BigInt> = BTreeMap::new();
    for s in &r.summands {
        *out.entry(s.key()).or_insert_with(BigInt::zero) += &s.multiplicity;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2(text: &str) -> DecompositionReport {
        DecompositionReport::parse(text, Locality::V2).unwrap()
    }

    #[test]
    fn monomial_rule() {
        let m = Monomial::new(2, 3, Gen::Y);
        assert_eq!(
            monomial_to_summand(&m, &BigInt::one()).unwrap(),
            Summand::new(SummandKind::TMF03, 24, 2, 1)
        );
        let err = monomial_to_summand(&m, &BigInt::from(-1)).unwrap_err();
        assert_eq!(err.code(), "NEGATIVE_MULTIPLICITY");
        let sq = monomial_to_summand(&Monomial::new(1, 2, Gen::X2), &2.into()).unwrap();
        assert_eq!(sq.to_string(), "2 Σ^{16,1} bo1^2");
    }

    #[test]
    fn bo_reports() {
        let r = decompose_bo(6, Locality::V2).unwrap();
        assert_eq!(r.summands, v2("Σ^{32,0} bo1^2 + Σ^{40,1} bo1 + Σ^{48,2} F2").summands);
        assert_eq!(decompose_bo(1, Locality::V2).unwrap().to_string(), "Σ^{0,0} bo1");
        assert_eq!(decompose_bo(7, Locality::G).unwrap().to_string(), "2 Σ^{48,1} bo1");
    }

    #[test]
    fn power_reports() {
        let r = decompose_power(4, Locality::V2).unwrap();
        assert_eq!(r.summands, v2("2 Σ^{16,1} bo1^2 + Σ^{48,5} TMF + Σ^{64,8} TMF").summands);
        assert_eq!(decompose_power(3, Locality::G).unwrap().to_string(), "2 Σ^{16,1} bo1");
        assert_eq!(decompose_power(0, Locality::V2).unwrap().to_string(), "Σ^{0,0} F2");
    }

    #[test]
    fn report_parser() {
        let r = v2("4 Σ^{32,2} bo1 + Σ^{24} TMF0(3) + 4 S^{40,3} tmf + Sigma^{56,6} TMF");
        assert_eq!(r, DecompositionReport { source: r.source.clone(), ..decompose_power(5, Locality::V2).unwrap() });
        for bad in ["", "Σ^{3,1} bo1", "Σ^{8,1} ko", "2 bo1", "Σ^{8,1 bo1"] {
            assert!(DecompositionReport::parse(bad, Locality::V2).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn duality_on_reports() {
        let bo1 = v2("Σ^{0,0} bo1");
        assert_eq!(dualize_report(&bo1).unwrap().summands, v2("Σ^{-16,-1} bo1").summands);
        assert_eq!(dualize_report(&bo1).unwrap().to_string(), "Σ^{32,7} bo1");
        let f2 = v2("Σ^{0,0} F2");
        assert_eq!(dualize_report(&f2).unwrap().summands, f2.summands);
        let tmf = v2("Σ^{0,0} TMF");
        assert_eq!(dualize_report(&tmf).unwrap().summands, v2("Σ^{0,1} TMF").summands);
        let back = dualize_report(&dualize_report(&bo1).unwrap()).unwrap();
        assert_eq!(back, DecompositionReport { source: back.source.clone(), ..bo1 });
    }

    #[test]
    fn tmfbar_low_weights() {
        let one = tmfbar_series(1, 6, Locality::V2).unwrap();
        for j in 1..=6 {
            assert_eq!(one[&j].summands, decompose_bo(j, Locality::V2).unwrap().shifted(8 * j as i64, 0).summands);
        }
        let two = tmfbar_series(2, 2, Locality::V2).unwrap();
        assert_eq!(two[&2].summands, v2("Σ^{16,0} bo1^2").summands);
        let three = tmfbar_series(3, 3, Locality::V2).unwrap();
        assert_eq!(three[&3].summands, v2("2 Σ^{40,1} bo1 + Σ^{48,2} TMF").summands);
    }

    #[test]
    fn brute_force_small() {
        let r = |t: &str| RingElement::parse(t, RingId::R).unwrap();
        assert_eq!(brute_force_weight(2, 2, RingId::R), r("t^2 x^2"));
        assert_eq!(brute_force_weight(2, 3, RingId::R), r("2 t^4 x^2 + 2 s t^5 x"));
    }
}
