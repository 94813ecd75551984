//! Margolis homology `ker(op) / im(op)` for square-zero elements of A(2).

use std::collections::BTreeMap;

use crate::error::{Result, SteenrodError};
use crate::gf2::{self, BitVec};
use crate::milnor::MargolisOp;
use crate::module::SteenrodModule;

/// Finite graded vector space, recorded by dimension per degree (zero entries omitted).
pub type GradedVectorSpace = BTreeMap<i32, usize>;

/// Margolis homology of `m` with respect to `op`.
pub fn margolis_homology(m: &SteenrodModule, op: MargolisOp) -> Result<GradedVectorSpace> {
    let e = op.element();
    let k = op.degree() as i32;
    let n = m.dim();
    for g in 0..n {
        if !m.act_on(e, m.act(e, g)).is_zero() {
            return Err(SteenrodError::NotExterior { op });
        }
    }
    let mut out = GradedVectorSpace::new();
    for &d in m.graded_dimension().keys() {
        let here = m.basis_in_degree(d);
        let above = m.basis_in_degree(d + k);
        let below = m.basis_in_degree(d - k);
        let restrict = |v: &BitVec, coords: &[usize]| {
            BitVec::from_ones(coords.len(), coords.iter().enumerate().filter(|(_, &c)| v.get(c)).map(|(i, _)| i))
        };
        let out_images: Vec<BitVec> = here.iter().map(|&g| restrict(m.act(e, g), &above)).collect();
        let kernel = gf2::eliminate(&out_images, above.len()).kernel.len();
        let in_images: Vec<BitVec> = below.iter().map(|&g| restrict(m.act(e, g), &here)).collect();
        let image = gf2::rank(&in_images);
        if kernel > image {
            out.insert(d, kernel - image);
        }
    }
    Ok(out)
}

/// Total dimension of a graded vector space.
pub fn total_dimension(v: &GradedVectorSpace) -> usize {
    v.values().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::build_standard;

    fn free_a2() -> SteenrodModule {
        // A(2) itself, acting on the left on the Milnor basis.
        let alg = crate::milnor::a2();
        let basis = alg.basis().to_vec();
        let pos = |m: crate::MilnorElement| basis.iter().position(|&b| b == m).unwrap();
        let degrees = basis.iter().map(|m| m.degree() as i32).collect();
        SteenrodModule::from_action(degrees, |m, g| {
            BitVec::from_ones(64, alg.mul_basis(m, basis[g]).terms().map(pos))
        })
    }

    #[test]
    fn free_module_is_acyclic() {
        let a = free_a2();
        assert!(a.validate().is_valid());
        for op in [MargolisOp::Q0, MargolisOp::Q1, MargolisOp::Q2, MargolisOp::P21] {
            assert!(margolis_homology(&a, op).unwrap().is_empty(), "{op}");
        }
    }

    #[test]
    fn bo1_q0_homology() {
        // Sq^1 pairs the classes in degrees 6 and 7.
        let bo1 = build_standard("BO(1)").unwrap();
        let h = margolis_homology(&bo1, MargolisOp::Q0).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (4, 1)]));
    }

    #[test]
    fn bo1_q1_and_p21_homology() {
        let bo1 = build_standard("BO(1)").unwrap();
        let q1 = margolis_homology(&bo1, MargolisOp::Q1).unwrap();
        assert_eq!(q1, BTreeMap::from([(0, 1), (6, 1)]));
        let p21 = margolis_homology(&bo1, MargolisOp::P21).unwrap();
        assert_eq!(p21, BTreeMap::from([(4, 1), (7, 1)]));
    }

    #[test]
    fn non_exterior_is_rejected() {
        let mut listed = BTreeMap::new();
        listed.insert((1, 0), BitVec::unit(3, 1));
        listed.insert((1, 1), BitVec::unit(3, 2));
        let bad = SteenrodModule::from_listing(vec![0, 1, 2], listed);
        let err = margolis_homology(&bad, MargolisOp::Q0).unwrap_err();
        assert_eq!(err.code(), "NOT_EXTERIOR");
    }
}
