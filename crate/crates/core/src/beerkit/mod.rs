//! The algebras `U(yb_G)` for the three series: the printed relation lists,
//! reduced monomials of the duals, their reduction algorithm and the
//! verification report.

mod algorithm;
mod monomials;
mod relations;
mod report;

pub use algorithm::{
    algorithm_reduce, algorithm_reduce_with, exhaustive_agreement, Agreement, AgreementTally, NormalFormOracle,
    Reduction, Signs,
};
pub use monomials::{reduced_monomials, Block, ReducedMonomial};
pub use relations::{dual_lists, generating_lists, paper_relations, RelationList};
pub use report::{
    printed_dual_polynomial, printed_series, verification_report, CheckRecord, CheckStatus, ReportOptions, VerificationReport};

use crate::error::Result;
use crate::exactla::PairingConvention;
use crate::quadpres::{
    explicit_presentation, lambda_part, quad_kernel_presentation, quadratic_dual, QuadraticPresentation, Relation,
};
use crate::reflgroups::{GroupSpec, Series};
use crate::ydbraid::{build_yd_with, BraidedSpace, RLabelSign};

/// Everything built from one group: the braided space, the cover, `U(yb_G)`
/// and its duals under both pairings.
#[derive(Debug, Clone)]
pub struct BeerAlgebra {
    pub spec: GroupSpec,
    pub space: BraidedSpace,
    pub cover: QuadraticPresentation,
    pub algebra: QuadraticPresentation,
    pub dual_straight: QuadraticPresentation,
    pub dual_reversed: QuadraticPresentation,
}

pub fn build_beer(spec: &GroupSpec) -> Result<BeerAlgebra> {
    build_beer_with(spec, RLabelSign::Plus)
}

pub fn build_beer_with(spec: &GroupSpec, r_sign: RLabelSign) -> Result<BeerAlgebra> {
    let space = build_yd_with(spec, r_sign);
    let cover = quad_kernel_presentation(&space);
    let algebra = lambda_part(&cover)?;
    let dual_straight = quadratic_dual(&algebra, PairingConvention::Straight)?;
    let dual_reversed = quadratic_dual(&algebra, PairingConvention::Reversed)?;
    Ok(BeerAlgebra { spec: *spec, space, cover, algebra, dual_straight, dual_reversed })
}

impl BeerAlgebra {
    /// The dual under the straight pairing.
    pub fn dual(&self) -> &QuadraticPresentation {
        &self.dual_straight
    }

    pub fn dual_for(&self, c: PairingConvention) -> &QuadraticPresentation {
        match c {
            PairingConvention::Straight => &self.dual_straight,
            PairingConvention::Reversed => &self.dual_reversed,
        }
    }

    /// Series A: does `U(yb)` have exactly the relations of `U(tr_n)`?
    pub fn trace_span_equal(&self) -> Result<Option<bool>> {
        if self.spec.series != Series::A {
            return Ok(None);
        }
        let rels: Vec<Relation> = paper_relations(&self.spec, RelationList::Trace)?;
        let p = explicit_presentation(&self.space, &rels)?;
        Ok(Some(p.relations() == self.algebra.relations()))
    }

    /// The provenance chain cover → antisymmetric part → duals.
    pub fn provenance_intact(&self) -> bool {
        use crate::quadpres::Provenance::*;
        *self.cover.provenance() == QuadKernel
            && *self.algebra.provenance() == LambdaPart
            && *self.dual_straight.provenance() == DualOf(Box::new(LambdaPart), PairingConvention::Straight)
            && *self.dual_reversed.provenance() == DualOf(Box::new(LambdaPart), PairingConvention::Reversed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldTag;

    #[test]
    fn c2_is_a_polynomial_ring() {
        let b = build_beer(&"B:1".parse().unwrap()).unwrap();
        assert!(b.provenance_intact());
        assert_eq!(b.algebra.hilbert(10, FieldTag::Rational).unwrap().dims, vec![1; 11]);
        assert_eq!(b.dual().hilbert(4, FieldTag::Rational).unwrap().trimmed(), vec![1, 1]);
    }

    #[test]
    fn series_a_matches_the_trace_presentation() {
        for n in 2..=5 {
            let b = build_beer(&GroupSpec::new(Series::A, n).unwrap()).unwrap();
            assert_eq!(b.trace_span_equal().unwrap(), Some(true), "A:{n}");
        }
        let a3 = build_beer(&"A:3".parse().unwrap()).unwrap();
        assert_eq!(a3.algebra.relations().dim(), 1);
    }

    #[test]
    fn d2_decouples() {
        // two commuting copies of the one-generator case: Λ-part is zero
        let b = build_beer(&"D:2".parse().unwrap()).unwrap();
        assert_eq!(b.cover.relations().dim(), 3);
        assert_eq!(b.algebra.relations().dim(), 0);
        let psi = b.space.braiding();
        // the braiding never mixes u(1,2) with uu(1,2)
        for (c, (_, t)) in psi.iter().enumerate() {
            let (a, bb) = (c / 2, c % 2);
            assert_eq!(*t, bb * 2 + a);
        }
    }

    #[test]
    fn pairings_give_the_same_dual() {
        for s in ["A:4", "D:4", "B:3"] {
            let b = build_beer(&s.parse().unwrap()).unwrap();
            assert_eq!(b.dual_straight.relations(), b.dual_reversed.relations(), "{s}");
        }
    }
}
