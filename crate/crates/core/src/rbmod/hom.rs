use std::sync::Arc;

use super::bimodule::Bimodule;
use super::equations::{vectorize, MatrixEquations};
use super::maps::ModuleMap;
use super::module::{RbModule, Side};
use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// `Hom_(R,P)(M, N)` as a subspace of all `dim N × dim M` matrices
/// (vectorized row-major).
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: RbModule,
    target: RbModule,
    space: Subspace,
}

impl HomSpace {
    pub fn source(&self) -> &RbModule {
        &self.source
    }

    pub fn target(&self) -> &RbModule {
        &self.target
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn to_matrix(&self, v: &[Scalar]) -> Matrix {
        Matrix::from_fn(
            self.source.field(),
            self.target.dim(),
            self.source.dim(),
            |r, c| v[r * self.source.dim() + c].clone(),
        )
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.space
            .basis()
            .iter()
            .map(|b| self.to_matrix(b))
            .collect()
    }

    pub fn basis_maps(&self) -> Vec<ModuleMap> {
        self.basis_matrices()
            .into_iter()
            .map(|m| {
                ModuleMap::new(self.source.clone(), self.target.clone(), m)
                    .expect("solution is a homomorphism")
            })
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.space.contains(&vectorize(m))
    }

    pub fn coordinates(&self, m: &Matrix) -> Option<Vector> {
        self.space.coordinates(&vectorize(m))
    }

    /// The matrix with the given coordinates in the basis.
    pub fn combine(&self, coords: &[Scalar]) -> Matrix {
        self.to_matrix(&self.space.combine(coords))
    }

    /// Matrix (in basis coordinates) of a linear endomorphism of the space of
    /// maps; fails if the endomorphism leaves the Hom space.
    pub fn induced_endomorphism(
        &self,
        op: impl Fn(&Matrix) -> Matrix,
        what: &str,
    ) -> Result<Matrix> {
        let cols: Option<Vec<Vector>> = self
            .basis_matrices()
            .iter()
            .map(|f| self.coordinates(&op(f)))
            .collect();
        let cols = cols.ok_or_else(|| Error::NotStable(format!("{what} leaves the Hom space")))?;
        Ok(Matrix::from_columns(self.source.field(), self.dim(), &cols))
    }
}

fn hom_equations(source: &RbModule, target: &RbModule) -> MatrixEquations {
    let mut eq = MatrixEquations::new(source.field(), target.dim(), source.dim());
    for (a, b) in source.action().iter().zip(target.action()) {
        eq.intertwine(a, b);
    }
    eq.intertwine(source.operator(), target.operator());
    eq
}

/// Solves `f·(eᵢ on M) = (eᵢ on N)·f` for all `i` and `f∘p_M = p_N∘f`.
pub fn hom_space(source: &RbModule, target: &RbModule) -> Result<HomSpace> {
    source.require_same_base(target)?;
    source.require_verified()?;
    target.require_verified()?;
    let space = hom_equations(source, target).kernel();
    Ok(HomSpace {
        source: source.clone(),
        target: target.clone(),
        space,
    })
}

/// Homomorphisms that vanish on every given source vector.
pub fn homs_vanishing_on(
    source: &RbModule,
    target: &RbModule,
    vectors: &[Vector],
) -> Result<Subspace> {
    source.require_same_base(target)?;
    let mut eq = hom_equations(source, target);
    let zero = target.zero_vector();
    for v in vectors {
        eq.maps_to(v, &zero);
    }
    Ok(eq.kernel())
}

/// Some homomorphism taking each `vectors[k]` to `images[k]`, if one exists.
pub fn hom_with_values(
    source: &RbModule,
    target: &RbModule,
    vectors: &[Vector],
    images: &[Vector],
) -> Result<Option<ModuleMap>> {
    source.require_same_base(target)?;
    let mut eq = hom_equations(source, target);
    for (v, w) in vectors.iter().zip(images) {
        eq.maps_to(v, w);
    }
    match eq.solve()? {
        Some(m) => Ok(Some(ModuleMap::new(source.clone(), target.clone(), m)?)),
        None => Ok(None),
    }
}

/// The four ways a Hom space inherits a Rota-Baxter module structure from a
/// bimodule on one side.
#[derive(Clone, Copy, Debug)]
pub enum HomStructure<'a> {
    /// `M` right `(R,P)`, `N` a `(T,γ)`-`(R,P)`-bimodule: left `(T,γ)`-module
    /// with `(t·f)(m) = t·f(m)` and `q(f) = p_N^T∘f`.
    TargetLeft {
        source: &'a RbModule,
        target: &'a Bimodule,
    },
    /// `M` left `(R,P)`, `N` an `(R,P)`-`(T,γ)`-bimodule: right `(T,γ)`-module
    /// with `(f·t)(m) = f(m)·t` and `q(f) = p_N^T∘f`.
    TargetRight {
        source: &'a RbModule,
        target: &'a Bimodule,
    },
    /// `M` an `(R,P)`-`(S,α)`-bimodule, `N` left `(R,P)`: left `(S,α)`-module
    /// with `(s·f)(m) = f(m·s)` and `q(f) = f∘p_M^S`.
    SourceLeft {
        source: &'a Bimodule,
        target: &'a RbModule,
    },
    /// `M` an `(S,α)`-`(R,P)`-bimodule, `N` right `(R,P)`: right `(S,α)`-module
    /// with `(f·s)(m) = f(s·m)` and `q(f) = f∘p_M^S`.
    SourceRight {
        source: &'a Bimodule,
        target: &'a RbModule,
    },
}

impl HomStructure<'_> {
    /// Case number 1–4 in the order listed above.
    pub fn case(&self) -> u8 {
        match self {
            HomStructure::TargetLeft { .. } => 1,
            HomStructure::TargetRight { .. } => 2,
            HomStructure::SourceLeft { .. } => 3,
            HomStructure::SourceRight { .. } => 4,
        }
    }
}

/// A Hom space together with its induced Rota-Baxter module structure.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub space: HomSpace,
    pub module: RbModule,
}

/// Builds the induced module on `Hom_(R,P)(M, N)`. The result is returned
/// unverified; running its side's check re-derives the structure theorem on
/// the given instance.
pub fn hom_module(structure: HomStructure<'_>) -> Result<HomModule> {
    let (space, algebra, side, action_ops, operator): (
        HomSpace,
        Arc<AlgebraPresentation>,
        Side,
        Vec<MatrixOp>,
        MatrixOp,
    ) = match structure {
        HomStructure::TargetLeft { source, target } => {
            source.require_side(Side::Right)?;
            target.require_verified()?;
            let space = hom_space(source, target.as_right())?;
            let acts = target
                .as_left()
                .action()
                .iter()
                .cloned()
                .map(|t| boxed(move |f: &Matrix| t.mul(f)))
                .collect();
            let p = target.left_operator().clone();
            (
                space,
                target.left_algebra().clone(),
                Side::Left,
                acts,
                boxed(move |f: &Matrix| p.mul(f)),
            )
        }
        HomStructure::TargetRight { source, target } => {
            source.require_side(Side::Left)?;
            target.require_verified()?;
            let space = hom_space(source, target.as_left())?;
            let acts = target
                .as_right()
                .action()
                .iter()
                .cloned()
                .map(|t| boxed(move |f: &Matrix| t.mul(f)))
                .collect();
            let p = target.right_operator().clone();
            (
                space,
                target.right_algebra().clone(),
                Side::Right,
                acts,
                boxed(move |f: &Matrix| p.mul(f)),
            )
        }
        HomStructure::SourceLeft { source, target } => {
            target.require_side(Side::Left)?;
            source.require_verified()?;
            let space = hom_space(source.as_left(), target)?;
            let acts = source
                .as_right()
                .action()
                .iter()
                .cloned()
                .map(|s| boxed(move |f: &Matrix| f.mul(&s)))
                .collect();
            let p = source.right_operator().clone();
            (
                space,
                source.right_algebra().clone(),
                Side::Left,
                acts,
                boxed(move |f: &Matrix| f.mul(&p)),
            )
        }
        HomStructure::SourceRight { source, target } => {
            target.require_side(Side::Right)?;
            source.require_verified()?;
            let space = hom_space(source.as_right(), target)?;
            let acts = source
                .as_left()
                .action()
                .iter()
                .cloned()
                .map(|s| boxed(move |f: &Matrix| f.mul(&s)))
                .collect();
            let p = source.left_operator().clone();
            (
                space,
                source.left_algebra().clone(),
                Side::Right,
                acts,
                boxed(move |f: &Matrix| f.mul(&p)),
            )
        }
    };
    let action = action_ops
        .iter()
        .map(|op| space.induced_endomorphism(op, "the induced action"))
        .collect::<Result<Vec<_>>>()?;
    let q = space.induced_endomorphism(&*operator, "the induced operator")?;
    let module = RbModule::new(algebra, side, action, q)?;
    Ok(HomModule { space, module })
}

type MatrixOp = Box<dyn Fn(&Matrix) -> Matrix>;

fn boxed(f: impl Fn(&Matrix) -> Matrix + 'static) -> MatrixOp {
    Box::new(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn e1() -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::example_e(&q().one()))
    }

    fn scalar(lam: i64) -> Arc<AlgebraPresentation> {
        let l = q().from_i64(lam);
        Arc::new(AlgebraPresentation::scalar_operator(
            Algebra::unitized_line(&l),
            &l,
        ))
    }

    #[test]
    fn endomorphisms_contain_identity_and_zero() {
        let m = RbModule::regular(e1(), Side::Left).verify().unwrap();
        let h = hom_space(&m, &m).unwrap();
        assert!(h.contains(&Matrix::identity(q(), 2)));
        assert!(h.contains(&Matrix::zeros(q(), 2, 2)));
        for f in h.basis_maps() {
            assert!(f.matrix().mul(m.operator()) == m.operator().mul(f.matrix()));
        }
    }

    #[test]
    fn maps_into_zero_module() {
        let m = RbModule::regular(e1(), Side::Left).verify().unwrap();
        let z = RbModule::zero(e1(), Side::Left);
        assert_eq!(hom_space(&m, &z).unwrap().dim(), 0);
    }

    #[test]
    fn hom_space_requires_verified_modules() {
        let m = RbModule::regular(e1(), Side::Left);
        assert!(matches!(hom_space(&m, &m), Err(Error::Unverified)));
    }

    #[test]
    fn all_four_structures_over_example_e() {
        let alg = e1();
        let bi = Bimodule::regular(alg.clone()).verify().unwrap();
        let left = RbModule::regular(alg.clone(), Side::Left).verify().unwrap();
        let right = RbModule::regular(alg, Side::Right).verify().unwrap();
        let cases = [
            HomStructure::TargetLeft {
                source: &right,
                target: &bi,
            },
            HomStructure::TargetRight {
                source: &left,
                target: &bi,
            },
            HomStructure::SourceLeft {
                source: &bi,
                target: &left,
            },
            HomStructure::SourceRight {
                source: &bi,
                target: &right,
            },
        ];
        for case in cases {
            let hm = hom_module(case).unwrap();
            assert!(hm.module.check().passed(), "case {}", case.case());
            let expected = if case.case() % 2 == 1 {
                Side::Left
            } else {
                Side::Right
            };
            assert_eq!(hm.module.side(), expected);
        }
    }

    #[test]
    fn scalar_operator_structures_reduce_to_minus_lambda() {
        let alg = scalar(2);
        let bi = Bimodule::regular(alg.clone()).verify().unwrap();
        let left = RbModule::regular(alg, Side::Left).verify().unwrap();
        let hm = hom_module(HomStructure::SourceLeft {
            source: &bi,
            target: &left,
        })
        .unwrap();
        assert!(hm.module.check().passed());
        let minus_lambda = Matrix::scalar(q(), hm.module.dim(), &q().from_i64(-2));
        assert_eq!(hm.module.operator(), &minus_lambda);
    }
}
