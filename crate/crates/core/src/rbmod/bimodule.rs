use std::sync::Arc;

use super::module::{RbModule, Side};
use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::AxiomReport;

/// An `(R,P)`-`(S,α)`-bimodule: a left `(R,P)`-module structure with operator
/// `p^R`, a right `(S,α)`-module structure with operator `p^S`, commuting
/// actions, and the compatibilities
/// `p^S(rm) = r·p^S(m)`, `p^R(ms) = p^R(m)·s`, `p^S∘p^R = p^R∘p^S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    left: RbModule,
    right: RbModule,
    verified: bool,
}

impl Bimodule {
    pub fn new(left: RbModule, right: RbModule) -> Result<Bimodule> {
        left.require_side(Side::Left)?;
        right.require_side(Side::Right)?;
        if left.dim() != right.dim() {
            return Err(Error::Dimension(
                "the two structures live on different spaces".into(),
            ));
        }
        if left.algebra().weight() != right.algebra().weight() {
            return Err(Error::Mismatch(
                "bimodule over algebras of different weights".into(),
            ));
        }
        for (i, l) in left.action().iter().enumerate() {
            for (j, r) in right.action().iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::NotAModule(format!(
                        "left action of {} does not commute with right action of {}",
                        left.algebra().label(i),
                        right.algebra().label(j)
                    )));
                }
            }
        }
        Ok(Bimodule {
            left,
            right,
            verified: false,
        })
    }

    /// `(R, P)` over itself on both sides.
    pub fn regular(algebra: Arc<AlgebraPresentation>) -> Bimodule {
        Bimodule::new(
            RbModule::regular(algebra.clone(), Side::Left),
            RbModule::regular(algebra, Side::Right),
        )
        .expect("left and right multiplication commute")
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn left_algebra(&self) -> &Arc<AlgebraPresentation> {
        self.left.algebra()
    }

    pub fn right_algebra(&self) -> &Arc<AlgebraPresentation> {
        self.right.algebra()
    }

    /// `p^R`, the operator of the left structure.
    pub fn left_operator(&self) -> &Matrix {
        self.left.operator()
    }

    /// `p^S`, the operator of the right structure.
    pub fn right_operator(&self) -> &Matrix {
        self.right.operator()
    }

    /// The left `(R,P)`-module underlying the bimodule.
    pub fn as_left(&self) -> &RbModule {
        &self.left
    }

    /// The right `(S,α)`-module underlying the bimodule.
    pub fn as_right(&self) -> &RbModule {
        &self.right
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified)
        }
    }

    /// Both one-sided Rota-Baxter identities plus the three compatibilities.
    pub fn check(&self) -> AxiomReport {
        let mut report = AxiomReport::new("Rota-Baxter bimodule");
        report.merge(self.left.check());
        report.merge(self.right.check());
        let (pl, pr) = (self.left_operator(), self.right_operator());
        let n = self.dim();
        for (i, l) in self.left.action().iter().enumerate() {
            let (lhs, rhs) = (pr.mul(l), l.mul(pr));
            for j in 0..n {
                report.compare(
                    || {
                        format!(
                            "p^S(r·m) = r·p^S(m) at (r, m) = ({}, v{j})",
                            self.left_algebra().label(i)
                        )
                    },
                    lhs.column(j),
                    rhs.column(j),
                );
            }
        }
        for (i, r) in self.right.action().iter().enumerate() {
            let (lhs, rhs) = (pl.mul(r), r.mul(pl));
            for j in 0..n {
                report.compare(
                    || {
                        format!(
                            "p^R(m·s) = p^R(m)·s at (m, s) = (v{j}, {})",
                            self.right_algebra().label(i)
                        )
                    },
                    lhs.column(j),
                    rhs.column(j),
                );
            }
        }
        let (lhs, rhs) = (pr.mul(pl), pl.mul(pr));
        for j in 0..n {
            report.compare(
                || format!("p^S∘p^R = p^R∘p^S at v{j}"),
                lhs.column(j),
                rhs.column(j),
            );
        }
        report
    }

    pub fn verify(mut self) -> Result<Bimodule> {
        let report = self.check();
        if !report.passed() {
            return Err(Error::AxiomFailure {
                what: "bimodule check".into(),
                report,
            });
        }
        self.left = self.left.mark_verified();
        self.right = self.right.mark_verified();
        self.verified = true;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn scalar_operator_self_bimodule() {
        let lam = q().from_i64(2);
        let alg = Arc::new(AlgebraPresentation::scalar_operator(
            Algebra::unitized_line(&lam),
            &lam,
        ));
        assert!(Bimodule::regular(alg).check().passed());
    }

    #[test]
    fn zero_operator_self_bimodule() {
        let lam = q().from_i64(4);
        let alg = Arc::new(AlgebraPresentation::zero_operator(
            Algebra::truncated_polynomials(q(), 2),
            &lam,
        ));
        assert!(Bimodule::regular(alg).check().passed());
    }

    #[test]
    fn example_e_is_a_self_bimodule() {
        // P = left multiplication by u1 on a commutative algebra, so every
        // compatibility holds even though P(1) ∉ {0, −λ}.
        let alg = Arc::new(AlgebraPresentation::example_e(&q().one()));
        assert!(Bimodule::regular(alg.clone()).check().passed());
        assert!(!alg.check_bimodule_self().passed());
    }

    #[test]
    fn integration_is_not_a_self_bimodule() {
        let alg = Arc::new(AlgebraPresentation::integration(q(), 2));
        let report = Bimodule::regular(alg).check();
        assert!(!report.passed());
    }

    #[test]
    fn mixed_weights_rejected() {
        let a = Arc::new(AlgebraPresentation::example_e(&q().one()));
        let b = Arc::new(AlgebraPresentation::example_e(&q().from_i64(2)));
        let r = Bimodule::new(
            RbModule::regular(a, Side::Left),
            RbModule::regular(b, Side::Right),
        );
        assert!(matches!(r, Err(Error::Mismatch(_))));
    }
}
