//! The bundled corpus of named algebras and modules.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::freemod::{free_rb_module, restricted_free};
use crate::linalg::{vector, Field, Matrix, Subspace};
use crate::opring::OpRing;
use crate::rbmod::{direct_sum, RbModule, Side};

/// What an algebra fixture is for, which decides the checks it takes part in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    ExampleE,
    ScalarOperator,
    ZeroOperator,
    PolynomialExtension,
    Integration,
}

#[derive(Clone, Debug)]
pub struct AlgebraFixture {
    pub name: String,
    pub kind: AlgebraKind,
    pub provenance: String,
    pub algebra: Arc<AlgebraPresentation>,
}

#[derive(Clone, Debug)]
pub struct ModuleFixture {
    pub name: String,
    pub algebra_ref: String,
    pub provenance: String,
    pub module: RbModule,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    field: Field,
    algebras: Vec<AlgebraFixture>,
    modules: Vec<ModuleFixture>,
}

/// Weights of the two-dimensional example family.
pub const EXAMPLE_E_WEIGHTS: [&str; 6] = ["0", "1", "-1", "2", "3", "1/2"];

impl Corpus {
    /// Every fixture that makes sense over `field`; those needing a
    /// denominator the field cannot invert are left out.
    pub fn bundled(field: Field) -> Result<Corpus> {
        let mut corpus = Corpus {
            field,
            algebras: Vec::new(),
            modules: Vec::new(),
        };
        let weight = |text: &str| field.parse(text).ok();
        for lam in EXAMPLE_E_WEIGHTS {
            if let Some(l) = weight(lam) {
                corpus.add_algebra(
                    format!("E({lam})"),
                    AlgebraKind::ExampleE,
                    "two-dimensional algebra u1² = −λu1 with P(u0) = u1, P(u1) = −λu1",
                    AlgebraPresentation::example_e(&l),
                );
            }
        }
        let one = field.one();
        let two = field.from_i64(2);
        corpus.add_algebra(
            "scalar(k, 1)",
            AlgebraKind::ScalarOperator,
            "P = −λ·id on the base field",
            AlgebraPresentation::scalar_operator(Algebra::base_field(field), &one),
        );
        corpus.add_algebra(
            "scalar(E, 2)",
            AlgebraKind::ScalarOperator,
            "P = −λ·id on the algebra underlying E(λ); the flat-iso example",
            AlgebraPresentation::scalar_operator(Algebra::unitized_line(&two), &two),
        );
        corpus.add_algebra(
            "scalar(k[x]/x^3, 1)",
            AlgebraKind::ScalarOperator,
            "P = −λ·id on truncated polynomials",
            AlgebraPresentation::scalar_operator(Algebra::truncated_polynomials(field, 2), &one),
        );
        corpus.add_algebra(
            "zero(k, 0)",
            AlgebraKind::ZeroOperator,
            "P = 0 of weight 0 on the base field; its operator ring is k[Q]/Q²",
            AlgebraPresentation::zero_operator(Algebra::base_field(field), &field.zero()),
        );
        corpus.add_algebra(
            "zero(k[x]/x^2, 3)",
            AlgebraKind::ZeroOperator,
            "P = 0 on dual numbers, weight 3",
            AlgebraPresentation::zero_operator(
                Algebra::truncated_polynomials(field, 1),
                &field.from_i64(3),
            ),
        );
        let e1 = AlgebraPresentation::example_e(&one);
        for degree in [1, 2] {
            corpus.add_algebra(
                format!("E(1)[x]/x^{}", degree + 1),
                AlgebraKind::PolynomialExtension,
                "coefficientwise extension of E(1) to truncated polynomials",
                e1.polynomial_extension(degree),
            );
        }
        let s1 = AlgebraPresentation::scalar_operator(Algebra::base_field(field), &one);
        corpus.add_algebra(
            "scalar(k, 1)[x]/x^3",
            AlgebraKind::PolynomialExtension,
            "coefficientwise extension of the scalar operator on k",
            s1.polynomial_extension(2),
        );
        if weight("1/2").is_some() && weight("1/3").is_some() {
            corpus.add_algebra(
                "integration(k[x]/x^3)",
                AlgebraKind::Integration,
                "weight-zero integration on truncated polynomials",
                AlgebraPresentation::integration(field, 2),
            );
        }
        corpus.add_standard_modules()?;
        Ok(corpus)
    }

    fn add_algebra(
        &mut self,
        name: impl Into<String>,
        kind: AlgebraKind,
        provenance: &str,
        algebra: AlgebraPresentation,
    ) {
        self.algebras.push(AlgebraFixture {
            name: name.into(),
            kind,
            provenance: provenance.into(),
            algebra: Arc::new(algebra),
        });
    }

    fn add_module(
        &mut self,
        algebra_ref: &str,
        suffix: &str,
        provenance: &str,
        module: RbModule,
    ) -> Result<()> {
        let module = if module.is_verified() {
            module
        } else {
            module.verify()?
        };
        self.modules.push(ModuleFixture {
            name: format!("{algebra_ref}/{suffix}"),
            algebra_ref: algebra_ref.into(),
            provenance: provenance.into(),
            module,
        });
        Ok(())
    }

    fn add_standard_modules(&mut self) -> Result<()> {
        let f = self.field;
        let algebras = self.algebras.clone();
        for a in &algebras {
            let alg = &a.algebra;
            if a.kind == AlgebraKind::Integration {
                continue;
            }
            self.add_module(
                &a.name,
                "left",
                "the algebra over itself on the left",
                RbModule::regular(alg.clone(), Side::Left),
            )?;
            self.add_module(
                &a.name,
                "right",
                "the algebra over itself on the right",
                RbModule::regular(alg.clone(), Side::Right),
            )?;
            if alg.dim() <= 3 {
                let free = free_rb_module(alg, vec!["x".into()])?;
                self.add_module(
                    &a.name,
                    "free(x)",
                    "free module on one generator",
                    free.module().clone(),
                )?;
                let ring = OpRing::new(alg.clone());
                self.add_module(
                    &a.name,
                    "free-right(x)",
                    "free right module on one generator",
                    ring.right_module()?,
                )?;
                let rf = restricted_free(alg, vec!["x".into(), "y".into()])?;
                self.add_module(
                    &a.name,
                    "restricted(x,y)",
                    "direct sum of two regular left modules",
                    rf.module().clone(),
                )?;
            }
        }
        for name in ["E(1)", "E(2)", "scalar(k, 1)", "zero(k, 0)"] {
            let Ok(alg) = self.algebra(name).cloned() else {
                continue;
            };
            let free = free_rb_module(&alg, vec!["x".into(), "y".into()])?;
            self.add_module(
                name,
                "free(x,y)",
                "free module on two generators",
                free.module().clone(),
            )?;
        }
        if let Ok(alg) = self.algebra("E(1)").cloned() {
            let left = RbModule::regular(alg.clone(), Side::Left).verify()?;
            let ideal = Subspace::span(f, 2, [vector::unit(f, 2, 1)]);
            let (sub, _) = left.submodule(&ideal)?;
            self.add_module("E(1)", "ideal(u1)", "the ideal spanned by u1", sub)?;
            let (quot, _) = left.quotient(&ideal)?;
            self.add_module(
                "E(1)",
                "left/(u1)",
                "quotient of the regular module by the ideal spanned by u1",
                quot,
            )?;
            let free = free_rb_module(&alg, vec!["x".into()])?;
            let sum = direct_sum(&alg, Side::Left, &[left, free.module().clone()])?.module;
            self.add_module(
                "E(1)",
                "left+free(x)",
                "regular module plus a free module",
                sum,
            )?;
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn algebras(&self) -> &[AlgebraFixture] {
        &self.algebras
    }

    pub fn modules(&self) -> &[ModuleFixture] {
        &self.modules
    }

    pub fn algebra_fixture(&self, name: &str) -> Result<&AlgebraFixture> {
        self.algebras
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::UnknownFixture(name.into()))
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<AlgebraPresentation>> {
        Ok(&self.algebra_fixture(name)?.algebra)
    }

    pub fn module_fixture(&self, name: &str) -> Result<&ModuleFixture> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::UnknownFixture(name.into()))
    }

    pub fn module(&self, name: &str) -> Result<&RbModule> {
        Ok(&self.module_fixture(name)?.module)
    }

    pub fn algebras_of(&self, kind: AlgebraKind) -> impl Iterator<Item = &AlgebraFixture> {
        self.algebras.iter().filter(move |a| a.kind == kind)
    }

    pub fn modules_over<'a>(&'a self, algebra: &'a str) -> impl Iterator<Item = &'a ModuleFixture> {
        self.modules
            .iter()
            .filter(move |m| m.algebra_ref == algebra)
    }

    /// Replaces one algebra's operator, as a fault-injection hook. Modules
    /// over it are dropped since they were verified against the original.
    pub fn with_corrupted_operator(&self, name: &str, operator: Matrix) -> Result<Corpus> {
        let mut out = self.clone();
        let fixture = out
            .algebras
            .iter_mut()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::UnknownFixture(name.into()))?;
        let alg = &fixture.algebra;
        fixture.algebra = Arc::new(AlgebraPresentation::new(
            alg.algebra().clone(),
            alg.weight().clone(),
            operator,
        )?);
        out.modules.retain(|m| m.algebra_ref != name);
        Ok(out)
    }
}
