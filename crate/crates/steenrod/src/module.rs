//! Finite modules over A(2), stored as explicit action tables on an
//! F2-basis ("generators" in module-file terminology).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Result, SteenrodError};
use crate::gf2::BitVec;
use crate::milnor::{a2, AlgebraElement, MilnorElement};

/// A finite A(2)-module with a chosen homogeneous basis.
#[derive(Clone, Debug)]
pub struct SteenrodModule {
    degrees: Vec<i32>,
    /// `Sq^i` actions as written in the source, keyed by `(i, generator)`.
    listed: BTreeMap<(u32, usize), BitVec>,
    /// `action[m.index()][g]` is `Sq(R) g` for every Milnor basis element of A(2).
    action: Vec<Vec<BitVec>>,
}

/// Equality of degrees and actions; the source listing is ignored.
impl PartialEq for SteenrodModule {
    fn eq(&self, other: &Self) -> bool {
        self.degrees == other.degrees && self.action == other.action
    }
}

impl Eq for SteenrodModule {}

impl SteenrodModule {
    /// The zero module.
    pub fn zero() -> Self {
        Self::from_action(Vec::new(), |_, _| unreachable!())
    }

    /// The trivial module F2 concentrated in degree 0.
    pub fn trivial() -> Self {
        Self::from_action(vec![0], |_, _| BitVec::zeros(1))
    }

    /// Builds a module from the action of every Milnor basis element on every generator.
    ///
    /// `f(m, g)` is only called for `m != 1`.
    pub fn from_action(degrees: Vec<i32>, mut f: impl FnMut(MilnorElement, usize) -> BitVec) -> Self {
        let n = degrees.len();
        let mut action = vec![Vec::new(); 64];
        for &m in a2().basis() {
            action[m.index()] = (0..n)
                .map(|g| {
                    if m == MilnorElement::ONE {
                        BitVec::unit(n, g)
                    } else {
                        f(m, g)
                    }
                })
                .collect();
        }
        let mut module = Self {
            degrees,
            listed: BTreeMap::new(),
            action,
        };
        module.listed = module.derived_listing();
        module
    }

    /// Builds a module from `Sq^i` listings. The action of A(2) is generated
    /// by the `Sq^1, Sq^2, Sq^4` entries; the other entries are kept for
    /// [`SteenrodModule::validate`].
    pub fn from_listing(degrees: Vec<i32>, listed: BTreeMap<(u32, usize), BitVec>) -> Self {
        let n = degrees.len();
        let alg = a2();
        let mut action: Vec<Vec<BitVec>> = vec![Vec::new(); 64];
        action[MilnorElement::ONE.index()] = (0..n).map(|g| BitVec::unit(n, g)).collect();
        for &gen in alg.generators() {
            let i = gen.r[0] as u32;
            action[gen.index()] = (0..n)
                .map(|g| listed.get(&(i, g)).cloned().unwrap_or_else(|| BitVec::zeros(n)))
                .collect();
        }
        let mut order: Vec<MilnorElement> = alg.basis().to_vec();
        order.sort_by_key(|m| m.degree());
        for m in order {
            if !action[m.index()].is_empty() {
                continue;
            }
            let mut images = vec![BitVec::zeros(n); n];
            for &(g, b) in alg.decomposition(m) {
                for (x, img) in images.iter_mut().enumerate() {
                    let inner = &action[b.index()][x];
                    img.add_assign(&apply_table(&action[g.index()], inner));
                }
            }
            action[m.index()] = images;
        }
        Self {
            degrees,
            listed,
            action,
        }
    }

    fn derived_listing(&self) -> BTreeMap<(u32, usize), BitVec> {
        let mut listed = BTreeMap::new();
        for i in 1..8u8 {
            let m = MilnorElement::sq(i);
            for g in 0..self.dim() {
                let v = &self.action[m.index()][g];
                if !v.is_zero() {
                    listed.insert((i as u32, g), v.clone());
                }
            }
        }
        listed
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, g: usize) -> i32 {
        self.degrees[g]
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    /// Generators of the given degree, in index order.
    pub fn basis_in_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&g| self.degrees[g] == d).collect()
    }

    /// Dimension in each degree.
    pub fn graded_dimension(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// `Sq(R) g` as a vector over the generators.
    pub fn act(&self, m: MilnorElement, g: usize) -> &BitVec {
        &self.action[m.index()][g]
    }

    /// `Sq(R) v` for an arbitrary vector `v`.
    pub fn act_on(&self, m: MilnorElement, v: &BitVec) -> BitVec {
        apply_table(&self.action[m.index()], v)
    }

    /// `a v` for an algebra element `a`.
    pub fn act_element(&self, a: AlgebraElement, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.dim());
        for m in a.terms() {
            out.add_assign(&self.act_on(m, v));
        }
        out
    }

    /// The `Sq^i` listing (as parsed, or derived for constructed modules).
    pub fn listed(&self) -> &BTreeMap<(u32, usize), BitVec> {
        &self.listed
    }

    /// Checks degrees, the module axioms and consistency of the listed
    /// non-generator operations.
    pub fn validate(&self) -> ValidationReport {
        let alg = a2();
        let mut report = ValidationReport::default();
        let n = self.dim();
        for (&(i, g), v) in &self.listed {
            for t in v.ones() {
                if self.degrees[t] != self.degrees[g] + i as i32 {
                    report.degree_errors.push(format!(
                        "Sq^{i} g{g} (degree {}) lists g{t} of degree {}",
                        self.degrees[g], self.degrees[t]
                    ));
                }
            }
        }
        for &m in alg.basis() {
            for g in 0..n {
                for t in self.action[m.index()][g].ones() {
                    if self.degrees[t] != self.degrees[g] + m.degree() as i32 {
                        report
                            .degree_errors
                            .push(format!("{m} g{g} hits g{t} in the wrong degree"));
                    }
                }
            }
        }
        for &gen in alg.generators() {
            for &b in alg.basis() {
                let product = alg.mul_basis(gen, b);
                for x in 0..n {
                    let composite = self.act_on(gen, self.act(b, x));
                    let direct = self.act_element(product, &BitVec::unit(n, x));
                    if composite != direct {
                        report.relation_violations.push(RelationViolation {
                            left: gen,
                            right: b,
                            product,
                            generator: x,
                        });
                    }
                }
            }
        }
        let lists_composites = self
            .listed
            .keys()
            .any(|&(i, _)| i < 8 && !i.is_power_of_two());
        if lists_composites {
            for i in (3..8u32).filter(|i| !i.is_power_of_two()) {
                let m = MilnorElement::sq(i as u8);
                for g in 0..n {
                    let given = self
                        .listed
                        .get(&(i, g))
                        .cloned()
                        .unwrap_or_else(|| BitVec::zeros(n));
                    if &given != self.act(m, g) {
                        report.listing_mismatches.push(format!(
                            "Sq^{i} g{g}: listed {:?}, generated {:?}",
                            given.ones().collect::<Vec<_>>(),
                            self.act(m, g).ones().collect::<Vec<_>>()
                        ));
                    }
                }
            }
        }
        report
    }

    /// Shifts all degrees by `k`.
    pub fn suspend(&self, k: i32) -> Self {
        let mut out = self.clone();
        for d in &mut out.degrees {
            *d += k;
        }
        out
    }

    /// The F2-linear dual, with `(a f)(x) = f(chi(a) x)`.
    pub fn dual(&self) -> Self {
        let alg = a2();
        let n = self.dim();
        let degrees = self.degrees.iter().map(|d| -d).collect();
        Self::from_action(degrees, |m, g| {
            // m g* = sum over x of <g*, chi(m) x> x*
            let chi = alg.chi(m);
            BitVec::from_ones(
                n,
                (0..n).filter(|&x| self.act_element(chi, &BitVec::unit(n, x)).get(g)),
            )
        })
    }

    /// Tensor product with the diagonal (Cartan) action. Basis is `a`-major:
    /// `a_i (x) b_j` has index `i * b.dim() + j`.
    pub fn tensor(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        let degrees = (0..na)
            .flat_map(|i| (0..nb).map(move |j| (i, j)))
            .map(|(i, j)| a.degrees[i] + b.degrees[j])
            .collect();
        Self::from_action(degrees, |m, g| {
            let (i, j) = (g / nb, g % nb);
            let mut out = BitVec::zeros(na * nb);
            for r1 in 0..=m.r[0] {
                for r2 in 0..=m.r[1] {
                    for r3 in 0..=m.r[2] {
                        let left = MilnorElement { r: [r1, r2, r3] };
                        let right = MilnorElement {
                            r: [m.r[0] - r1, m.r[1] - r2, m.r[2] - r3],
                        };
                        let va = a.act(left, i);
                        if va.is_zero() {
                            continue;
                        }
                        let vb = b.act(right, j);
                        for x in va.ones() {
                            for y in vb.ones() {
                                out.flip(x * nb + y);
                            }
                        }
                    }
                }
            }
            out
        })
    }

    /// Direct sum, basis of `a` first.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        let degrees = a.degrees.iter().chain(&b.degrees).copied().collect();
        Self::from_action(degrees, |m, g| {
            if g < na {
                BitVec::from_ones(na + nb, a.act(m, g).ones())
            } else {
                BitVec::from_ones(na + nb, b.act(m, g - na).ones().map(|x| x + na))
            }
        })
    }

    /// Relabels generators: old generator `g` becomes `perm[g]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        let mut inverse = vec![0; n];
        for (g, &p) in perm.iter().enumerate() {
            inverse[p] = g;
        }
        let mut degrees = vec![0; n];
        for g in 0..n {
            degrees[perm[g]] = self.degrees[g];
        }
        let relabel = |v: &BitVec| BitVec::from_ones(n, v.ones().map(|x| perm[x]));
        let mut out = Self::from_action(degrees, |m, g| relabel(self.act(m, inverse[g])));
        out.listed = self
            .listed
            .iter()
            .map(|(&(i, g), v)| ((i, perm[g]), relabel(v)))
            .collect();
        out
    }

    /// Parses a Bruner module definition file.
    pub fn parse_bruner(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line: usize, message: String| SteenrodError::Parse { line, message };
        let (count_line, count_text) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty module file".into()))?;
        let n: usize = count_text
            .parse()
            .map_err(|_| parse_err(count_line, format!("expected generator count, found `{count_text}`")))?;
        let mut degrees = Vec::with_capacity(n);
        let mut last_line = count_line;
        while degrees.len() < n {
            let (line, text) = lines
                .next()
                .ok_or_else(|| parse_err(last_line, format!("expected {n} degrees")))?;
            last_line = line;
            for tok in text.split_whitespace() {
                let d: i32 = tok
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad degree `{tok}`")))?;
                degrees.push(d);
            }
            if degrees.len() > n {
                return Err(parse_err(
                    line,
                    format!("found {} degrees for {n} generators", degrees.len()),
                ));
            }
        }
        let mut listed: BTreeMap<(u32, usize), BitVec> = BTreeMap::new();
        for (line, text) in lines {
            let nums: Vec<i64> = text
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("bad token `{t}`"))))
                .collect::<Result<_>>()?;
            if nums.len() < 3 {
                return Err(parse_err(line, "action line needs `g i k targets...`".into()));
            }
            let (g, i, k) = (nums[0], nums[1], nums[2]);
            if g < 0 || g as usize >= n {
                return Err(parse_err(line, format!("generator {g} out of range")));
            }
            if i < 1 {
                return Err(parse_err(line, format!("operation Sq^{i} must be positive")));
            }
            if k < 0 || nums.len() != 3 + k as usize {
                return Err(parse_err(
                    line,
                    format!("expected {k} targets, found {}", nums.len() as i64 - 3),
                ));
            }
            let (g, i) = (g as usize, i as u32);
            let entry = listed
                .entry((i, g))
                .or_insert_with(|| BitVec::zeros(n));
            for &t in &nums[3..] {
                if t < 0 || t as usize >= n {
                    return Err(parse_err(line, format!("target {t} out of range")));
                }
                let t = t as usize;
                if degrees[t] != degrees[g] + i as i32 {
                    return Err(SteenrodError::DegreeMismatch {
                        line,
                        op: i,
                        source_gen: g,
                        source_degree: degrees[g],
                        target: t,
                        target_degree: degrees[t],
                    });
                }
                entry.flip(t);
            }
        }
        listed.retain(|_, v| !v.is_zero());
        Ok(Self::from_listing(degrees, listed))
    }

    /// Writes the module in Bruner's format, listing `Sq^i` for every `i`
    /// that acts nontrivially.
    pub fn emit_bruner(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.dim());
        let _ = writeln!(out);
        let degs: Vec<String> = self.degrees.iter().map(i32::to_string).collect();
        let _ = writeln!(out, "{}", degs.join(" "));
        let _ = writeln!(out);
        let mut by_gen: BTreeMap<usize, Vec<(u32, &BitVec)>> = BTreeMap::new();
        for (&(i, g), v) in &self.listed {
            by_gen.entry(g).or_default().push((i, v));
        }
        for (g, entries) in by_gen {
            for (i, v) in entries {
                let targets: Vec<String> = v.ones().map(|t| t.to_string()).collect();
                let _ = writeln!(out, "{g} {i} {} {}", targets.len(), targets.join(" "));
            }
            let _ = writeln!(out);
        }
        out
    }
}

fn apply_table(table: &[BitVec], v: &BitVec) -> BitVec {
    let n = table.len();
    let mut out = BitVec::zeros(n);
    for x in v.ones() {
        out.add_assign(&table[x]);
    }
    out
}

/// An instance of `rho(a) rho(b) != rho(a b)` on a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub left: MilnorElement,
    pub right: MilnorElement,
    pub product: AlgebraElement,
    pub generator: usize,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * {} = {} fails on g{}",
            self.left, self.right, self.product, self.generator
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub degree_errors: Vec<String>,
    pub relation_violations: Vec<RelationViolation>,
    pub listing_mismatches: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.degree_errors.is_empty()
            && self.relation_violations.is_empty()
            && self.listing_mismatches.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for e in &self.degree_errors {
            writeln!(f, "degree: {e}")?;
        }
        for v in &self.relation_violations {
            writeln!(f, "relation: {v}")?;
        }
        for e in &self.listing_mismatches {
            writeln!(f, "listing: {e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const F_MODULE: &str = include_str!("../../../fixtures/F.module");
    pub(crate) const E_MODULE: &str = include_str!("../../../fixtures/E.module");

    #[test]
    fn f_module_header() {
        let m = SteenrodModule::parse_bruner(F_MODULE).unwrap();
        assert_eq!(
            m.degrees(),
            &[0, 2, 3, 4, 6, 6, 7, 7, 8, 9, 9, 10, 10, 11, 12, 13, 13, 14, 15, 16]
        );
        assert_eq!(m.act(MilnorElement::sq(2), 0), &BitVec::unit(20, 1));
    }

    #[test]
    fn e_module_header() {
        let m = SteenrodModule::parse_bruner(E_MODULE).unwrap();
        assert_eq!(m.dim(), 24);
        assert_eq!(m.min_degree(), Some(0));
        assert_eq!(m.max_degree(), Some(21));
    }

    #[test]
    fn fixture_modules_validate() {
        for text in [F_MODULE, E_MODULE] {
            let m = SteenrodModule::parse_bruner(text).unwrap();
            let report = m.validate();
            assert!(report.is_valid(), "{report}");
        }
    }

    #[test]
    fn sq1_sq1_nonzero_is_flagged() {
        let mut listed = BTreeMap::new();
        listed.insert((1, 0), BitVec::unit(3, 1));
        listed.insert((1, 1), BitVec::unit(3, 2));
        let m = SteenrodModule::from_listing(vec![0, 1, 2], listed);
        let report = m.validate();
        assert!(!report.is_valid());
        assert!(report
            .relation_violations
            .iter()
            .any(|v| v.left == MilnorElement::sq(1) && v.right == MilnorElement::sq(1)));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = SteenrodModule::parse_bruner("2\n0 1\n0 1 1 x\n").unwrap_err();
        assert_eq!(err.code(), "PARSE_ERROR");
        assert!(matches!(err, SteenrodError::Parse { line: 3, .. }));
        let err = SteenrodModule::parse_bruner("2\n0 2\n0 1 1 1\n").unwrap_err();
        assert!(matches!(err, SteenrodError::DegreeMismatch { line: 3, .. }));
    }

    #[test]
    fn emit_round_trip() {
        let m = SteenrodModule::parse_bruner(F_MODULE).unwrap();
        let again = SteenrodModule::parse_bruner(&m.emit_bruner()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn listing_mismatch_is_reported() {
        // Sq^3 listed as zero although Sq^1 Sq^2 is not.
        let mut listed = BTreeMap::new();
        listed.insert((2, 0), BitVec::unit(3, 1));
        listed.insert((1, 1), BitVec::unit(3, 2));
        listed.insert((6, 0), BitVec::zeros(3));
        listed.insert((3, 1), BitVec::zeros(3));
        let m = SteenrodModule::from_listing(vec![0, 2, 3], listed.clone());
        // only a zero composite is listed: the (3,1) key is present but zero,
        // so the listing counts as a full listing and Sq^3 g0 is missing.
        let report = m.validate();
        assert!(!report.listing_mismatches.is_empty());
    }

    #[test]
    fn tensor_and_dual_dimensions() {
        let f = SteenrodModule::parse_bruner(F_MODULE).unwrap();
        let t = SteenrodModule::tensor(&SteenrodModule::trivial().suspend(3), &f);
        assert_eq!(t.dim(), 20);
        assert!(t.validate().is_valid());
        let d = f.dual();
        assert!(d.validate().is_valid());
        assert_eq!(d.dual(), f);
    }
}
