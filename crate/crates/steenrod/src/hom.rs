//! Degree-preserving module maps: Hom spaces, isomorphism search and
//! short exact sequence search.

use std::collections::BTreeSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::gf2::{self, BitVec, Matrix, Subspace};
use crate::milnor::{a2, MilnorElement};
use crate::module::SteenrodModule;

/// Default number of candidate maps tried by the searches.
pub const DEFAULT_SEARCH_CAP: usize = 1 << 16;

const SEED: u64 = 0x05ee_d0a2;

/// Basis of `Hom_{A(2)}(a, b)` in degree zero. A map is a `b.dim() x a.dim()`
/// matrix whose column `x` is the image of generator `x`.
pub fn hom_basis(a: &SteenrodModule, b: &SteenrodModule) -> Vec<Matrix> {
    let unknowns: Vec<(usize, usize)> = (0..b.dim())
        .flat_map(|y| (0..a.dim()).map(move |x| (y, x)))
        .filter(|&(y, x)| a.degree(x) == b.degree(y))
        .collect();
    if unknowns.is_empty() {
        return Vec::new();
    }
    let slot = |y: usize, x: usize| y * a.dim() + x;
    let mut equation_of = vec![usize::MAX; a.dim() * b.dim()];
    for (k, &(y, x)) in unknowns.iter().enumerate() {
        equation_of[slot(y, x)] = k;
    }
    // equation (gen, x, y): sum_{x' in gen x} f[y][x'] + sum_{y' : y in gen y'} f[y'][x] = 0
    let gens = a2().generators();
    let mut equations: Vec<BitVec> = Vec::new();
    for &gen in gens {
        let k = gen.degree() as i32;
        for x in 0..a.dim() {
            for y in b.basis_in_degree(a.degree(x) + k) {
                let mut eq = BitVec::zeros(unknowns.len());
                for x2 in a.act(gen, x).ones() {
                    eq.flip(equation_of[slot(y, x2)]);
                }
                for y2 in b.basis_in_degree(a.degree(x)) {
                    if b.act(gen, y2).get(y) {
                        eq.flip(equation_of[slot(y2, x)]);
                    }
                }
                if !eq.is_zero() {
                    equations.push(eq);
                }
            }
        }
    }
    // kernel of the map unknown -> equation values
    let images: Vec<BitVec> = (0..unknowns.len())
        .map(|u| BitVec::from_ones(equations.len(), (0..equations.len()).filter(|&e| equations[e].get(u))))
        .collect();
    gf2::eliminate(&images, equations.len())
        .kernel
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(b.dim(), a.dim());
            for u in v.ones() {
                let (y, x) = unknowns[u];
                m.set(y, x, true);
            }
            m
        })
        .collect()
}

/// Checks that `f` commutes with `Sq^1, Sq^2, Sq^4` and preserves degrees.
pub fn is_module_map(f: &Matrix, a: &SteenrodModule, b: &SteenrodModule) -> bool {
    for x in 0..a.dim() {
        let fx = f.column(x);
        if fx.ones().any(|y| b.degree(y) != a.degree(x)) {
            return false;
        }
        for &gen in a2().generators() {
            if f.apply(a.act(gen, x)) != b.act_on(gen, &fx) {
                return false;
            }
        }
    }
    true
}

/// Visits linear combinations of `basis`: all of them by Gray code when
/// there are few, otherwise `cap` seeded random ones. Stops when `visit` returns true.
fn search_combinations(
    basis: &[Matrix],
    rows: usize,
    cols: usize,
    cap: usize,
    mut visit: impl FnMut(&Matrix) -> bool,
) -> Option<Matrix> {
    let k = basis.len();
    let mut current = Matrix::zeros(rows, cols);
    if k < usize::BITS as usize && (1usize << k) <= cap {
        if visit(&current) {
            return Some(current);
        }
        for i in 1..(1usize << k) {
            current.add_assign(&basis[i.trailing_zeros() as usize]);
            if visit(&current) {
                return Some(current);
            }
        }
        return None;
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    for _ in 0..cap {
        let mut m = Matrix::zeros(rows, cols);
        for b in basis {
            if rng.random::<bool>() {
                m.add_assign(b);
            }
        }
        if visit(&m) {
            return Some(m);
        }
    }
    None
}

/// Looks for an isomorphism `a -> b`.
pub fn iso_test(a: &SteenrodModule, b: &SteenrodModule) -> Option<Matrix> {
    iso_test_with_cap(a, b, DEFAULT_SEARCH_CAP)
}

pub fn iso_test_with_cap(a: &SteenrodModule, b: &SteenrodModule, cap: usize) -> Option<Matrix> {
    if a.graded_dimension() != b.graded_dimension() {
        return None;
    }
    if a.dim() == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let basis = hom_basis(a, b);
    search_combinations(&basis, b.dim(), a.dim(), cap, |m| m.rank() == a.dim())
}

/// Dimensions of the three modules in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeCount {
    pub degree: i32,
    pub sub: usize,
    pub middle: usize,
    pub quotient: usize,
}

impl DegreeCount {
    pub fn balanced(&self) -> bool {
        self.middle == self.sub + self.quotient
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SesOutcome {
    /// `injection: sub -> middle` and an isomorphism `coker -> quotient`.
    Found { injection: Matrix, iso: Matrix },
    /// Degreewise dimensions cannot fit into a short exact sequence.
    DimensionMismatch,
    /// Dimensions fit but no candidate map worked.
    NotFound { hom_dimension: usize, tried: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesReport {
    pub certificate: Vec<DegreeCount>,
    pub outcome: SesOutcome,
}

impl SesReport {
    pub fn found(&self) -> bool {
        matches!(self.outcome, SesOutcome::Found { .. })
    }

    pub fn mismatched_degrees(&self) -> Vec<DegreeCount> {
        self.certificate.iter().filter(|c| !c.balanced()).copied().collect()
    }
}

impl fmt::Display for SesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  sub  middle  quotient")?;
        for c in &self.certificate {
            let mark = if c.balanced() { "" } else { "  <- mismatch" };
            writeln!(f, "{:>6}  {:>3}  {:>6}  {:>8}{mark}", c.degree, c.sub, c.middle, c.quotient)?;
        }
        let total = |g: fn(&DegreeCount) -> usize| self.certificate.iter().map(g).sum::<usize>();
        writeln!(
            f,
            "total   {:>3}  {:>6}  {:>8}",
            total(|c| c.sub),
            total(|c| c.middle),
            total(|c| c.quotient)
        )?;
        match &self.outcome {
            SesOutcome::Found { .. } => writeln!(f, "short exact sequence found"),
            SesOutcome::DimensionMismatch => writeln!(f, "impossible: dimension count fails"),
            SesOutcome::NotFound { hom_dimension, tried } => writeln!(
                f,
                "no sequence found (Hom dimension {hom_dimension}, {tried} candidates tried)"
            ),
        }
    }
}

/// Quotient of `b` by the image of `f`, together with the projection.
pub fn cokernel(f: &Matrix, b: &SteenrodModule) -> (SteenrodModule, Vec<usize>) {
    let mut image = Subspace::new(b.dim());
    for x in 0..f.ncols() {
        image.insert(f.column(x));
    }
    let pivots: BTreeSet<usize> = image.pivots().collect();
    let complement: Vec<usize> = (0..b.dim()).filter(|y| !pivots.contains(y)).collect();
    let position = |y: usize| complement.iter().position(|&c| c == y);
    let degrees = complement.iter().map(|&y| b.degree(y)).collect();
    let quotient = SteenrodModule::from_action(degrees, |m: MilnorElement, g| {
        let mut v = b.act(m, complement[g]).clone();
        image.reduce(&mut v);
        BitVec::from_ones(complement.len(), v.ones().filter_map(position))
    });
    (quotient, complement)
}

/// Searches for `0 -> a -> b -> c -> 0`.
pub fn find_ses(a: &SteenrodModule, b: &SteenrodModule, c: &SteenrodModule) -> SesReport {
    find_ses_with_cap(a, b, c, DEFAULT_SEARCH_CAP)
}

pub fn find_ses_with_cap(
    a: &SteenrodModule,
    b: &SteenrodModule,
    c: &SteenrodModule,
    cap: usize,
) -> SesReport {
    let (da, db, dc) = (a.graded_dimension(), b.graded_dimension(), c.graded_dimension());
    let degrees: BTreeSet<i32> = da.keys().chain(db.keys()).chain(dc.keys()).copied().collect();
    let certificate: Vec<DegreeCount> = degrees
        .into_iter()
        .map(|d| DegreeCount {
            degree: d,
            sub: da.get(&d).copied().unwrap_or(0),
            middle: db.get(&d).copied().unwrap_or(0),
            quotient: dc.get(&d).copied().unwrap_or(0),
        })
        .collect();
    if !certificate.iter().all(DegreeCount::balanced) {
        return SesReport {
            certificate,
            outcome: SesOutcome::DimensionMismatch,
        };
    }
    let basis = hom_basis(a, b);
    let mut tried = 0;
    let mut iso = None;
    let injection = search_combinations(&basis, b.dim(), a.dim(), cap, |f| {
        tried += 1;
        if f.rank() != a.dim() {
            return false;
        }
        let (q, _) = cokernel(f, b);
        iso = iso_test_with_cap(&q, c, cap);
        iso.is_some()
    });
    let outcome = match (injection, iso) {
        (Some(injection), Some(iso)) => SesOutcome::Found { injection, iso },
        _ => SesOutcome::NotFound {
            hom_dimension: basis.len(),
            tried,
        },
    };
    SesReport { certificate, outcome }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::build_standard;

    const F_MODULE: &str = include_str!("../../../fixtures/F.module");

    #[test]
    fn identity_is_found() {
        let f = SteenrodModule::parse_bruner(F_MODULE).unwrap();
        let iso = iso_test(&f, &f).unwrap();
        assert!(is_module_map(&iso, &f, &f));
        assert_eq!(iso.rank(), 20);
    }

    #[test]
    fn shifted_copy_is_not_isomorphic() {
        let f = SteenrodModule::parse_bruner(F_MODULE).unwrap();
        assert!(iso_test(&f, &f.suspend(1)).is_none());
    }

    #[test]
    fn permuted_copy_is_isomorphic() {
        let f = SteenrodModule::parse_bruner(F_MODULE).unwrap();
        let perm: Vec<usize> = (0..20).map(|i| (i * 7 + 3) % 20).collect();
        let g = f.permute(&perm);
        assert!(g.validate().is_valid());
        let iso = iso_test(&f, &g).unwrap();
        assert!(is_module_map(&iso, &f, &g));
    }

    #[test]
    fn bo1_is_not_a_sum_of_trivial_modules() {
        let bo1 = build_standard("BO(1)").unwrap();
        let split = (0..4).fold(SteenrodModule::zero(), |acc, g| {
            SteenrodModule::direct_sum(&acc, &SteenrodModule::trivial().suspend(bo1.degree(g)))
        });
        assert!(iso_test(&bo1, &split).is_none());
    }

    #[test]
    fn trivial_ses() {
        let m = build_standard("BO(1)").unwrap();
        let report = find_ses(&m, &m, &SteenrodModule::zero());
        assert!(report.found(), "{report}");
    }

    #[test]
    fn bo1_sits_in_a2moda1_as_a_quotient() {
        let bo1 = build_standard("BO(1)").unwrap();
        let a2a1 = build_standard("A2modA1").unwrap();
        let top = bo1.dual().suspend(17);
        let report = find_ses(&top, &a2a1, &bo1);
        assert!(report.found(), "{report}");
        let reversed = find_ses(&bo1, &a2a1, &top);
        assert!(!reversed.found());
    }

    #[test]
    fn dimension_certificate() {
        let bo1 = build_standard("BO(1)").unwrap();
        let report = find_ses(&bo1, &bo1, &bo1);
        assert_eq!(report.outcome, SesOutcome::DimensionMismatch);
        assert_eq!(report.mismatched_degrees().len(), 4);
    }
}
