//! Milnor-basis arithmetic in the finite sub-Hopf algebras A(1) and A(2) of
//! the mod 2 Steenrod algebra.
//!
//! Basis elements are `Sq(r1, r2, r3)` with `r1 < 8`, `r2 < 4`, `r3 < 2`
//! (the A(2) profile). Every element of A(2) fits in a `u64` bitmask indexed
//! by [`MilnorElement::index`]; A(1) uses the subset with `r1 < 4`, `r2 < 2`,
//! `r3 = 0`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::gf2::{self, BitVec};

/// Degrees of the Milnor generators `xi_1, xi_2, xi_3`.
const XI_DEGREES: [u32; 3] = [1, 3, 7];

/// A Milnor basis element `Sq(r1, r2, r3)` of A(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MilnorElement {
    pub r: [u8; 3],
}

impl MilnorElement {
    pub const ONE: MilnorElement = MilnorElement { r: [0, 0, 0] };

    pub fn new(r1: u8, r2: u8, r3: u8) -> Option<Self> {
        (r1 < 8 && r2 < 4 && r3 < 2).then_some(Self { r: [r1, r2, r3] })
    }

    pub fn sq(i: u8) -> Self {
        Self::new(i, 0, 0).expect("Sq^i lies in A(2) only for i < 8")
    }

    pub fn degree(self) -> u32 {
        self.r
            .iter()
            .zip(XI_DEGREES)
            .map(|(&r, d)| r as u32 * d)
            .sum()
    }

    pub fn index(self) -> usize {
        self.r[0] as usize + 8 * self.r[1] as usize + 32 * self.r[2] as usize
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 64);
        Self {
            r: [(i % 8) as u8, ((i / 8) % 4) as u8, (i / 32) as u8],
        }
    }
}

impl fmt::Display for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.r.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        if len == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.r[..len].iter().map(u8::to_string).collect();
        write!(f, "Sq({})", parts.join(","))
    }
}

/// A sum of Milnor basis elements, as a bitmask over [`MilnorElement::index`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub u64);

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement(0);

    pub fn basis(m: MilnorElement) -> Self {
        Self(1 << m.index())
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, m: MilnorElement) -> bool {
        self.0 >> m.index() & 1 == 1
    }

    pub fn terms(self) -> impl Iterator<Item = MilnorElement> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(MilnorElement::from_index(b))
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

// addition over F2 is symmetric difference of basis sets
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for AlgebraElement {
    fn add_assign(&mut self, rhs: AlgebraElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of two Milnor basis elements by the Milnor matrix formula.
///
/// Only valid for arguments inside A(2); the result is then inside A(2) as
/// well since A(2) is a subalgebra.
pub fn milnor_product(a: MilnorElement, b: MilnorElement) -> AlgebraElement {
    let r = a.r.map(u32::from);
    let s = b.r.map(u32::from);
    let mut acc: HashMap<[u32; 6], bool> = HashMap::new();
    // x[i][j] for i, j in 1..=3; row i uses weight 2^j, column j unit weight.
    let mut x = [[0u32; 3]; 3];
    enumerate(&r, &s, &mut x, 0, &mut acc);
    let mut out = AlgebraElement::ZERO;
    for (t, odd) in acc {
        if !odd {
            continue;
        }
        let inside = t[3..].iter().all(|&v| v == 0) && t[0] < 8 && t[1] < 4 && t[2] < 2;
        debug_assert!(inside, "product left A(2): {t:?}");
        if inside {
            out += AlgebraElement::basis(MilnorElement {
                r: [t[0] as u8, t[1] as u8, t[2] as u8],
            });
        }
    }
    out
}

fn enumerate(
    r: &[u32; 3],
    s: &[u32; 3],
    x: &mut [[u32; 3]; 3],
    slot: usize,
    acc: &mut HashMap<[u32; 6], bool>,
) {
    if slot == 9 {
        let mut x0j = [0u32; 3];
        for j in 0..3 {
            let used: u32 = (0..3).map(|i| x[i][j]).sum();
            if used > s[j] {
                return;
            }
            x0j[j] = s[j] - used;
        }
        let mut xi0 = [0u32; 3];
        for i in 0..3 {
            let used: u32 = (0..3).map(|j| x[i][j] << (j + 1)).sum();
            if used > r[i] {
                return;
            }
            xi0[i] = r[i] - used;
        }
        // Entry of the full matrix at (row, col), rows/cols indexed from 0.
        let entry = |row: usize, col: usize| -> u32 {
            match (row, col) {
                (0, 0) => 0,
                (0, c) => x0j[c - 1],
                (r_, 0) => xi0[r_ - 1],
                (r_, c) => x[r_ - 1][c - 1],
            }
        };
        let mut t = [0u32; 6];
        for (n, tn) in t.iter_mut().enumerate() {
            let diag = n + 1;
            let mut or = 0u32;
            let mut sum = 0u32;
            for row in 0..=diag.min(3) {
                let col = diag - row;
                if col > 3 {
                    continue;
                }
                let v = entry(row, col);
                if or & v != 0 {
                    return; // multinomial coefficient even
                }
                or |= v;
                sum += v;
            }
            *tn = sum;
        }
        let e = acc.entry(t).or_insert(false);
        *e = !*e;
        return;
    }
    let (i, j) = (slot / 3, slot % 3);
    let row_used: u32 = (0..j).map(|jj| x[i][jj] << (jj + 1)).sum();
    let col_used: u32 = (0..i).map(|ii| x[ii][j]).sum();
    if row_used > r[i] || col_used > s[j] {
        return;
    }
    let max = ((r[i] - row_used) >> (j + 1)).min(s[j] - col_used);
    for v in 0..=max {
        x[i][j] = v;
        enumerate(r, s, x, slot + 1, acc);
    }
    x[i][j] = 0;
}

/// One of the finite sub-Hopf algebras A(n), n = 1, 2, with precomputed tables.
#[derive(Debug)]
pub struct Algebra {
    name: &'static str,
    bounds: [u8; 3],
    members: Vec<MilnorElement>,
    by_degree: Vec<Vec<MilnorElement>>,
    table: Vec<[AlgebraElement; 64]>,
    generators: Vec<MilnorElement>,
    decomposition: Vec<Vec<(MilnorElement, MilnorElement)>>,
    chi: Vec<AlgebraElement>,
}

impl Algebra {
    fn build(name: &'static str, bounds: [u8; 3]) -> Self {
        let members: Vec<MilnorElement> = (0..64)
            .map(MilnorElement::from_index)
            .filter(|m| m.r.iter().zip(bounds).all(|(&r, b)| r < b))
            .collect();
        let top = members.iter().map(|m| m.degree()).max().unwrap_or(0);
        let mut by_degree = vec![Vec::new(); top as usize + 1];
        for &m in &members {
            by_degree[m.degree() as usize].push(m);
        }
        let mut table = vec![[AlgebraElement::ZERO; 64]; 64];
        for &a in &members {
            for &b in &members {
                table[a.index()][b.index()] = milnor_product(a, b);
            }
        }
        let generators: Vec<MilnorElement> = (0..3)
            .map(|k| MilnorElement::sq(1 << k))
            .filter(|g| g.r[0] < bounds[0])
            .collect();
        let mut alg = Self {
            name,
            bounds,
            members,
            by_degree,
            table,
            generators,
            decomposition: vec![Vec::new(); 64],
            chi: vec![AlgebraElement::ZERO; 64],
        };
        alg.decomposition = alg.compute_decompositions();
        alg.chi = alg.compute_chi();
        alg
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dimension(&self) -> usize {
        self.members.len()
    }

    pub fn top_degree(&self) -> u32 {
        self.by_degree.len() as u32 - 1
    }

    pub fn basis(&self) -> &[MilnorElement] {
        &self.members
    }

    pub fn basis_in_degree(&self, d: i64) -> &[MilnorElement] {
        if d < 0 || d as usize >= self.by_degree.len() {
            return &[];
        }
        &self.by_degree[d as usize]
    }

    pub fn contains(&self, m: MilnorElement) -> bool {
        m.r.iter().zip(self.bounds).all(|(&r, b)| r < b)
    }

    /// The algebra generators `Sq^1, Sq^2, Sq^4` (only `Sq^1, Sq^2` for A(1)).
    pub fn generators(&self) -> &[MilnorElement] {
        &self.generators
    }

    pub fn mul_basis(&self, a: MilnorElement, b: MilnorElement) -> AlgebraElement {
        self.table[a.index()][b.index()]
    }

    /// `a * x` for a basis element `a` and an arbitrary element `x`.
    pub fn left_mul(&self, a: MilnorElement, x: AlgebraElement) -> AlgebraElement {
        let row = &self.table[a.index()];
        let mut out = AlgebraElement::ZERO;
        let mut w = x.0;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            out += row[b];
        }
        out
    }

    pub fn mul(&self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement {
        x.terms().fold(AlgebraElement::ZERO, |acc, a| acc + self.left_mul(a, y))
    }

    /// Expression `m = sum g * b` with `g` an algebra generator, used to build
    /// module actions from generator actions.
    pub fn decomposition(&self, m: MilnorElement) -> &[(MilnorElement, MilnorElement)] {
        &self.decomposition[m.index()]
    }

    /// The antipode (conjugation).
    pub fn chi(&self, m: MilnorElement) -> AlgebraElement {
        self.chi[m.index()]
    }

    pub fn chi_element(&self, x: AlgebraElement) -> AlgebraElement {
        x.terms().fold(AlgebraElement::ZERO, |acc, m| acc + self.chi(m))
    }

    /// Coordinates of a homogeneous element with respect to the basis of its degree.
    fn coordinates(&self, x: AlgebraElement, degree: u32) -> BitVec {
        let basis = self.basis_in_degree(degree as i64);
        BitVec::from_ones(
            basis.len(),
            basis
                .iter()
                .enumerate()
                .filter(|(_, m)| x.contains(**m))
                .map(|(k, _)| k),
        )
    }

    fn compute_decompositions(&self) -> Vec<Vec<(MilnorElement, MilnorElement)>> {
        let mut out = vec![Vec::new(); 64];
        for d in 1..=self.top_degree() {
            let mut products = Vec::new();
            let mut columns = Vec::new();
            for &g in &self.generators {
                let gd = g.degree();
                if gd > d {
                    continue;
                }
                for &b in self.basis_in_degree((d - gd) as i64) {
                    products.push((g, b));
                    columns.push(self.coordinates(self.mul_basis(g, b), d));
                }
            }
            for &m in self.basis_in_degree(d as i64) {
                let target = self.coordinates(AlgebraElement::basis(m), d);
                let x = gf2::solve(&columns, &target)
                    .expect("A(n) is generated by Sq^1, Sq^2, Sq^4");
                out[m.index()] = x.ones().map(|k| products[k]).collect();
            }
        }
        out
    }

    fn compute_chi(&self) -> Vec<AlgebraElement> {
        let mut chi = vec![AlgebraElement::ZERO; 64];
        let mut order = self.members.clone();
        order.sort_by_key(|m| m.degree());
        for m in order {
            if m == MilnorElement::ONE {
                chi[m.index()] = AlgebraElement::basis(m);
                continue;
            }
            // sum over R' + R'' = R with R' != 0 of Sq(R') chi(Sq(R''))
            let mut acc = AlgebraElement::ZERO;
            for a in 0..=m.r[0] {
                for b in 0..=m.r[1] {
                    for c in 0..=m.r[2] {
                        let first = MilnorElement { r: [a, b, c] };
                        if first == MilnorElement::ONE {
                            continue;
                        }
                        let rest = MilnorElement {
                            r: [m.r[0] - a, m.r[1] - b, m.r[2] - c],
                        };
                        acc += self.left_mul(first, chi[rest.index()]);
                    }
                }
            }
            chi[m.index()] = acc;
        }
        chi
    }

    /// Admissible monomials `Sq^{a_1} ... Sq^{a_k}` (`a_i >= 2 a_{i+1}`, all
    /// `a_i <= 7`) of the given degree.
    pub fn admissible_monomials(&self, degree: u32) -> Vec<Vec<u8>> {
        // Build sequences right to left: each new (left) entry at least twice the previous.
        fn build(rem: u32, min_next: u32, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>, cap: u32) {
            if rem == 0 {
                let mut seq = cur.clone();
                seq.reverse();
                out.push(seq);
                return;
            }
            for a in min_next.max(1)..=cap.min(rem) {
                cur.push(a as u8);
                build(rem - a, 2 * a, cur, out, cap);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        let cap = (self.bounds[0] - 1) as u32;
        build(degree, 1, &mut Vec::new(), &mut out, cap);
        out.retain(|s| !s.is_empty() || degree == 0);
        out.sort();
        out
    }

    /// Milnor expansion of a monomial `Sq^{a_1} ... Sq^{a_k}`.
    pub fn monomial(&self, seq: &[u8]) -> AlgebraElement {
        seq.iter().fold(AlgebraElement::basis(MilnorElement::ONE), |acc, &a| {
            self.mul(acc, AlgebraElement::basis(MilnorElement::sq(a)))
        })
    }

    /// Writes `m` as a sum of admissible monomials, if possible.
    pub fn admissible_expansion(&self, m: MilnorElement) -> Option<Vec<Vec<u8>>> {
        let d = m.degree();
        let monomials = self.admissible_monomials(d);
        let columns: Vec<BitVec> = monomials
            .iter()
            .map(|s| self.coordinates(self.monomial(s), d))
            .collect();
        let target = self.coordinates(AlgebraElement::basis(m), d);
        let x = gf2::solve(&columns, &target)?;
        Some(x.ones().map(|k| monomials[k].clone()).collect())
    }
}

/// The 64-dimensional algebra A(2).
pub fn a2() -> &'static Algebra {
    static A2: OnceLock<Algebra> = OnceLock::new();
    A2.get_or_init(|| Algebra::build("A(2)", [8, 4, 2]))
}

/// The 8-dimensional algebra A(1).
pub fn a1() -> &'static Algebra {
    static A1: OnceLock<Algebra> = OnceLock::new();
    A1.get_or_init(|| Algebra::build("A(1)", [4, 2, 1]))
}

/// Milnor primitives and the element `P^1_2 = Sq(0,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MargolisOp {
    Q0,
    Q1,
    Q2,
    P21,
}

impl MargolisOp {
    pub fn element(self) -> MilnorElement {
        match self {
            MargolisOp::Q0 => MilnorElement { r: [1, 0, 0] },
            MargolisOp::Q1 => MilnorElement { r: [0, 1, 0] },
            MargolisOp::Q2 => MilnorElement { r: [0, 0, 1] },
            MargolisOp::P21 => MilnorElement { r: [0, 2, 0] },
        }
    }

    pub fn degree(self) -> u32 {
        self.element().degree()
    }
}

impl std::str::FromStr for MargolisOp {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "Q0" => Ok(MargolisOp::Q0),
            "Q1" => Ok(MargolisOp::Q1),
            "Q2" => Ok(MargolisOp::Q2),
            "P21" => Ok(MargolisOp::P21),
            _ => Err(format!("unknown operation `{s}` (expected Q0, Q1, Q2 or P21)")),
        }
    }
}

impl fmt::Display for MargolisOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MargolisOp::Q0 => "Q0",
            MargolisOp::Q1 => "Q1",
            MargolisOp::Q2 => "Q2",
            MargolisOp::P21 => "P21",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(r1: u8, r2: u8, r3: u8) -> MilnorElement {
        MilnorElement::new(r1, r2, r3).unwrap()
    }

    fn el(m: MilnorElement) -> AlgebraElement {
        AlgebraElement::basis(m)
    }

    #[test]
    fn sq1_squares_to_zero() {
        assert!(milnor_product(sq(1, 0, 0), sq(1, 0, 0)).is_zero());
    }

    #[test]
    fn sq2_sq2_is_sq_1_1() {
        assert_eq!(milnor_product(sq(2, 0, 0), sq(2, 0, 0)), el(sq(1, 1, 0)));
    }

    #[test]
    fn degrees() {
        assert_eq!(sq(0, 2, 0).degree(), 6);
        assert_eq!(sq(7, 3, 1).degree(), 23);
        assert_eq!(a2().dimension(), 64);
        assert_eq!(a1().dimension(), 8);
        assert_eq!(a1().top_degree(), 6);
    }

    #[test]
    fn adem_relations_hold() {
        let a = a2();
        let m = |s: &[u8]| a.monomial(s);
        // Sq^1 Sq^2 = Sq^3, Sq^2 Sq^2 = Sq^3 Sq^1, Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1
        assert_eq!(m(&[1, 2]), m(&[3]));
        assert_eq!(m(&[2, 2]), m(&[3, 1]));
        assert_eq!(m(&[2, 3]), m(&[5]) + m(&[4, 1]));
        // Sq^3 Sq^3 = Sq^5 Sq^1
        assert_eq!(m(&[3, 3]), m(&[5, 1]));
        // Sq^2 Sq^4 = Sq^6 + Sq^5 Sq^1
        assert_eq!(m(&[2, 4]), m(&[6]) + m(&[5, 1]));
    }

    #[test]
    fn associative_and_unital_exhaustively() {
        let a = a2();
        let one = el(MilnorElement::ONE);
        for &x in a.basis() {
            assert_eq!(a.mul(one, el(x)), el(x));
            assert_eq!(a.mul(el(x), one), el(x));
            for &y in a.basis() {
                let xy = a.mul_basis(x, y);
                for &z in a.basis() {
                    let left = a.mul(xy, el(z));
                    let right = a.left_mul(x, a.mul_basis(y, z));
                    assert_eq!(left, right, "({x} {y}) {z}");
                }
            }
        }
    }

    #[test]
    fn margolis_elements_square_to_zero() {
        let a = a2();
        for op in [MargolisOp::Q0, MargolisOp::Q1, MargolisOp::Q2, MargolisOp::P21] {
            let e = op.element();
            assert!(a.mul_basis(e, e).is_zero(), "{op}");
        }
    }

    #[test]
    fn q_recursion() {
        let a = a2();
        let q0 = el(MargolisOp::Q0.element());
        let q1 = el(MargolisOp::Q1.element());
        let q2 = el(MargolisOp::Q2.element());
        let sq2 = el(MilnorElement::sq(2));
        let sq4 = el(MilnorElement::sq(4));
        assert_eq!(a.mul(sq2, q0) + a.mul(q0, sq2), q1);
        assert_eq!(a.mul(sq4, q1) + a.mul(q1, sq4), q2);
    }

    #[test]
    fn q1_admissible_expansion() {
        let mut e = a2().admissible_expansion(MargolisOp::Q1.element()).unwrap();
        e.sort();
        assert_eq!(e, vec![vec![2, 1], vec![3]]);
    }

    #[test]
    fn p21_admissible_expansion_is_consistent() {
        let a = a2();
        let e = a.admissible_expansion(MargolisOp::P21.element()).unwrap();
        let sum = e
            .iter()
            .fold(AlgebraElement::ZERO, |acc, s| acc + a.monomial(s));
        assert_eq!(sum, el(MargolisOp::P21.element()));
    }

    #[test]
    fn chi_is_an_involutive_antihomomorphism() {
        let a = a2();
        for &x in a.basis() {
            assert_eq!(a.chi_element(a.chi(x)), el(x));
            for &y in a.basis() {
                let lhs = a.chi_element(a.mul_basis(x, y));
                let rhs = a.mul(a.chi(y), a.chi(x));
                assert_eq!(lhs, rhs);
            }
        }
        // chi(Sq^4) = Sq^4 + Sq^3 Sq^1
        assert_eq!(
            a.chi(MilnorElement::sq(4)),
            a.monomial(&[4]) + a.monomial(&[3, 1])
        );
    }

    #[test]
    fn decompositions_reassemble() {
        for alg in [a1(), a2()] {
            for &m in alg.basis() {
                if m == MilnorElement::ONE {
                    continue;
                }
                let sum = alg
                    .decomposition(m)
                    .iter()
                    .fold(AlgebraElement::ZERO, |acc, &(g, b)| acc + alg.mul_basis(g, b));
                assert_eq!(sum, el(m));
            }
        }
    }

    #[test]
    fn a1_is_closed() {
        let a = a1();
        for &x in a.basis() {
            for &y in a.basis() {
                assert!(a.mul_basis(x, y).terms().all(|t| a.contains(t)));
            }
        }
    }
}
