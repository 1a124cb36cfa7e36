//! Free modules: the free operated module `⊕ₙ R^{⊗n}X` (truncated), the free
//! Rota-Baxter module realized in operator-ring coordinates, and the
//! restricted free module `F(X)` with the coefficientwise operator.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Scalar, Vector};
use crate::opring::{OpRing, Word};
use crate::rbmod::{
    direct_sum, homs_vanishing_on, module_constant_violation, ModuleMap, RbModule, Side,
};

pub const DEFAULT_N_MAX: usize = 6;

/// A pure term `(e_{i₁}⊗⋯⊗e_{iₙ})x` in basis coordinates.
pub type Term = (Vec<usize>, usize);

/// A finite combination of pure basis terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeOperatedElement {
    terms: BTreeMap<Term, Scalar>,
}

impl FreeOperatedElement {
    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest tensor word, 0 for the zero element.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    fn add_term(&mut self, key: Term, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &FreeOperatedElement) -> FreeOperatedElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FreeOperatedElement {
        let mut out = FreeOperatedElement::default();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), c * x);
        }
        out
    }

    pub fn sub(&self, other: &FreeOperatedElement) -> FreeOperatedElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

/// `𝓜_R(X)` truncated at tensor length `n_max`, with `p_X` and `j_X`.
#[derive(Clone, Debug)]
pub struct FreeOperated {
    algebra: Arc<AlgebraPresentation>,
    generators: Vec<String>,
    n_max: usize,
}

impl FreeOperated {
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        generators: Vec<String>,
        n_max: usize,
    ) -> FreeOperated {
        FreeOperated {
            algebra,
            generators,
            n_max,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn zero(&self) -> FreeOperatedElement {
        FreeOperatedElement::default()
    }

    fn check_generator(&self, x: usize) -> Result<()> {
        if x < self.generators.len() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "generator index {x} out of range"
            )))
        }
    }

    /// `(r₁⊗⋯⊗rₙ)x`, expanded multilinearly into basis terms.
    pub fn pure(&self, tensors: &[Vector], x: usize) -> Result<FreeOperatedElement> {
        self.check_generator(x)?;
        if tensors.is_empty() {
            return Err(Error::MalformedWord(
                "tensor words have length at least 1".into(),
            ));
        }
        if tensors.len() > self.n_max {
            return Err(Error::Truncation(self.n_max));
        }
        let d = self.algebra.dim();
        if tensors.iter().any(|t| t.len() != d) {
            return Err(Error::Dimension(format!(
                "tensor factors must have length {d}"
            )));
        }
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), self.algebra.field().one())];
        for t in tensors {
            let mut next = Vec::new();
            for (idx, c) in &partial {
                for (i, ti) in t.iter().enumerate() {
                    if !ti.is_zero() {
                        let mut w = idx.clone();
                        w.push(i);
                        next.push((w, c * ti));
                    }
                }
            }
            partial = next;
        }
        let mut out = self.zero();
        for (w, c) in partial {
            out.add_term((w, x), c);
        }
        Ok(out)
    }

    /// `j_X(x) = (1_R)x`
    pub fn j(&self, x: usize) -> Result<FreeOperatedElement> {
        self.pure(std::slice::from_ref(self.algebra.unit()), x)
    }

    /// `p_X`: prepends `1_R` to every tensor word. Refuses to exceed `n_max`.
    pub fn shift(&self, e: &FreeOperatedElement) -> Result<FreeOperatedElement> {
        if e.max_len() >= self.n_max {
            return Err(Error::Truncation(self.n_max));
        }
        let mut out = self.zero();
        for ((w, x), c) in &e.terms {
            for (i, u) in self.algebra.unit().iter().enumerate() {
                if !u.is_zero() {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push(i);
                    nw.extend_from_slice(w);
                    out.add_term((nw, *x), c * u);
                }
            }
        }
        Ok(out)
    }

    /// `r·(r₁⊗⋯⊗rₙ)x = (rr₁⊗⋯⊗rₙ)x`
    pub fn act(&self, r: &[Scalar], e: &FreeOperatedElement) -> FreeOperatedElement {
        let alg = self.algebra.algebra();
        let mut out = self.zero();
        for ((w, x), c) in &e.terms {
            let first = alg.multiply(r, &alg.basis(w[0]));
            for (i, a) in first.iter().enumerate() {
                if !a.is_zero() {
                    let mut nw = w.clone();
                    nw[0] = i;
                    out.add_term((nw, *x), c * a);
                }
            }
        }
        out
    }

    /// `P(r)p_X(y) − p_X(P(r)y) − p_X(r·p_X(y)) − λp_X(ry)`, a generator of
    /// the relations cut out by the free Rota-Baxter module.
    pub fn relation(&self, r: &[Scalar], y: &FreeOperatedElement) -> Result<FreeOperatedElement> {
        let pr = self.algebra.apply(r);
        let lam = self.algebra.weight();
        let a = self.act(&pr, &self.shift(y)?);
        let b = self.shift(&self.act(&pr, y))?;
        let c = self.shift(&self.act(r, &self.shift(y)?))?;
        let d = self.shift(&self.act(r, y))?.scale(lam);
        Ok(a.sub(&b).sub(&c).sub(&d))
    }

    /// Every pure basis term with tensor length in `1..=max_len`.
    pub fn basis_terms(&self, max_len: usize) -> Vec<FreeOperatedElement> {
        let d = self.algebra.dim();
        let mut out = Vec::new();
        for x in 0..self.generators.len() {
            for len in 1..=max_len.min(self.n_max) {
                let mut index = vec![0usize; len];
                loop {
                    let mut e = self.zero();
                    e.add_term((index.clone(), x), self.algebra.field().one());
                    out.push(e);
                    if !crate::opring::advance(&mut index, d) {
                        break;
                    }
                }
            }
        }
        out
    }

    /// The unique operated-module map `f̃` with `f̃∘j_X = f` and
    /// `f̃∘p_X = q∘f̃`, given by `f̃(r₁x) = r₁f(x)` and
    /// `f̃((r₁⊗⋯⊗rₙ)x) = r₁·q(f̃((r₂⊗⋯⊗rₙ)x))`. Any left module with any
    /// operator will do.
    pub fn universal_map<'a>(
        &'a self,
        images: &'a [Vector],
        target: &'a RbModule,
    ) -> Result<OperatedMap<'a>> {
        target.require_side(Side::Left)?;
        check_images(&self.algebra, &self.generators, images, target)?;
        Ok(OperatedMap {
            free: self,
            images,
            target,
        })
    }

    pub fn render(&self, e: &FreeOperatedElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        vector::render_combination(e.terms.iter().map(|((w, x), c)| {
            let word: Vec<&str> = w.iter().map(|&i| self.algebra.label(i)).collect();
            (c, format!("({}){}", word.join("⊗"), self.generators[*x]))
        }))
    }
}

fn check_images(
    algebra: &Arc<AlgebraPresentation>,
    generators: &[String],
    images: &[Vector],
    target: &RbModule,
) -> Result<()> {
    if !AlgebraPresentation::same_algebra(target.algebra(), algebra) {
        return Err(Error::Mismatch(
            "target module lives over a different algebra".into(),
        ));
    }
    if images.len() != generators.len() || images.iter().any(|v| v.len() != target.dim()) {
        return Err(Error::Dimension(format!(
            "need {} images of length {}",
            generators.len(),
            target.dim()
        )));
    }
    Ok(())
}

/// `f̃` evaluated by the defining recursion.
pub struct OperatedMap<'a> {
    free: &'a FreeOperated,
    images: &'a [Vector],
    target: &'a RbModule,
}

impl OperatedMap<'_> {
    pub fn apply(&self, e: &FreeOperatedElement) -> Vector {
        let alg = &self.free.algebra;
        let mut out = self.target.zero_vector();
        for ((w, x), c) in &e.terms {
            let mut v = self
                .target
                .act(&alg.basis(*w.last().expect("nonempty")), &self.images[*x]);
            for &i in w.iter().rev().skip(1) {
                v = self.target.act(&alg.basis(i), &self.target.apply(&v));
            }
            vector::axpy(&mut out, c, &v);
        }
        out
    }
}

/// The free left `(R,P)`-module on `X`: one copy of the operator ring per
/// generator, coordinates `{eᵢx} ∪ {eᵢQeⱼx}`.
#[derive(Clone, Debug)]
pub struct FreeRbModule {
    ring: OpRing,
    generators: Vec<String>,
    module: RbModule,
}

pub fn free_rb_module(
    algebra: &Arc<AlgebraPresentation>,
    generators: Vec<String>,
) -> Result<FreeRbModule> {
    let ring = OpRing::new(algebra.clone());
    let copies = if generators.is_empty() {
        Vec::new()
    } else {
        vec![ring.left_module()?; generators.len()]
    };
    let module = direct_sum(algebra, Side::Left, &copies)?.module.verify()?;
    Ok(FreeRbModule {
        ring,
        generators,
        module,
    })
}

impl FreeRbModule {
    pub fn module(&self) -> &RbModule {
        &self.module
    }

    pub fn ring(&self) -> &OpRing {
        &self.ring
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    fn block(&self) -> usize {
        self.ring.dim()
    }

    /// Places an operator-ring element in the block of generator `x`.
    pub fn element(&self, x: usize, e: &crate::opring::OpRingElement) -> Vector {
        let mut v = self.module.zero_vector();
        let b = self.block();
        for (k, c) in e.to_vector().into_iter().enumerate() {
            v[x * b + k] = c;
        }
        v
    }

    /// `j(x) = 1_R·x`
    pub fn j(&self, x: usize) -> Vector {
        self.element(x, &self.ring.one())
    }

    pub fn basis_label(&self, k: usize) -> String {
        let b = self.block();
        format!(
            "({}){}",
            self.ring.basis_label(k % b),
            self.generators[k / b]
        )
    }

    /// `π((r₁⊗⋯⊗rₙ)x) = (r₁Qr₂Q⋯Qrₙ, reduced)·x`, extended linearly.
    pub fn pi(&self, e: &FreeOperatedElement) -> Result<Vector> {
        let alg = self.ring.algebra();
        let mut out = self.module.zero_vector();
        for ((w, x), c) in e.terms() {
            if *x >= self.generators.len() {
                return Err(Error::Dimension(format!(
                    "generator index {x} out of range"
                )));
            }
            let word = Word::new(c.clone(), w.iter().map(|&i| alg.basis(i)).collect())?;
            let reduced = self.ring.reduce(&word)?;
            out = vector::add(&out, &self.element(*x, &reduced));
        }
        Ok(out)
    }

    /// `f̄`: `(eᵢ)x ↦ eᵢ·f(x)`, `(eᵢQeⱼ)x ↦ eᵢ·p(eⱼ·f(x))`. The result is
    /// validated as a module map.
    pub fn universal_map(&self, images: &[Vector], target: &RbModule) -> Result<ModuleMap> {
        target.require_side(Side::Left)?;
        target.require_verified()?;
        check_images(self.ring.algebra(), &self.generators, images, target)?;
        let b = self.block();
        let mut cols = Vec::with_capacity(self.module.dim());
        for fx in images {
            for k in 0..b {
                cols.push(self.ring.act(&self.ring.basis_element(k), target, fx)?);
            }
        }
        let matrix = Matrix::from_columns(target.field(), target.dim(), &cols);
        ModuleMap::new(self.module.clone(), target.clone(), matrix)
    }

    /// Dimension of the space of homomorphisms into `target` that vanish on
    /// every `j(x)`; zero is the uniqueness half of the universal property.
    pub fn homs_vanishing_on_generators(&self, target: &RbModule) -> Result<usize> {
        let gens: Vec<Vector> = (0..self.generators.len()).map(|x| self.j(x)).collect();
        Ok(homs_vanishing_on(&self.module, target, &gens)?.dim())
    }
}

/// `F(X) = ⊕_X R` with `p̃(Σ r_x x) = Σ P(r_x)x`.
#[derive(Clone, Debug)]
pub struct RestrictedFree {
    algebra: Arc<AlgebraPresentation>,
    generators: Vec<String>,
    module: RbModule,
}

/// Builds `(F(X), p̃)` and runs the left Rota-Baxter check on it; a failure
/// comes back as an error carrying the witnesses.
pub fn restricted_free(
    algebra: &Arc<AlgebraPresentation>,
    generators: Vec<String>,
) -> Result<RestrictedFree> {
    let copies = vec![RbModule::regular(algebra.clone(), Side::Left); generators.len()];
    let module = direct_sum(algebra, Side::Left, &copies)?.module.verify()?;
    Ok(RestrictedFree {
        algebra: algebra.clone(),
        generators,
        module,
    })
}

impl RestrictedFree {
    pub fn module(&self) -> &RbModule {
        &self.module
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// `ι(x) = 1_R·x`
    pub fn iota(&self, x: usize) -> Vector {
        let d = self.algebra.dim();
        let mut v = self.module.zero_vector();
        v[x * d..(x + 1) * d].clone_from_slice(self.algebra.unit());
        v
    }

    /// `Σ r_x x ↦ Σ r_x·f(x)`, provided every `f(x)` is a module constant.
    pub fn universal_map(&self, images: &[Vector], target: &RbModule) -> Result<ModuleMap> {
        target.require_side(Side::Left)?;
        target.require_verified()?;
        check_images(&self.algebra, &self.generators, images, target)?;
        for (x, fx) in images.iter().enumerate() {
            if let Some((i, lhs, rhs)) = module_constant_violation(target, fx) {
                return Err(Error::NotModuleConstant {
                    generator: self.generators[x].clone(),
                    detail: format!(
                        "p(r·f(x)) = {} but P(r)·f(x) = {} at r = {}",
                        vector::render(&lhs),
                        vector::render(&rhs),
                        self.algebra.label(i)
                    ),
                });
            }
        }
        let cols: Vec<Vector> = images
            .iter()
            .flat_map(|fx| {
                (0..self.algebra.dim()).map(move |i| target.act(&self.algebra.basis(i), fx))
            })
            .collect();
        let matrix = Matrix::from_columns(target.field(), target.dim(), &cols);
        ModuleMap::new(self.module.clone(), target.clone(), matrix)
    }
}

impl fmt::Display for FreeOperatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&vector::render_combination(self.terms.iter().map(
            |((w, x), c)| {
                let word: Vec<String> = w.iter().map(|i| format!("e{i}")).collect();
                (c, format!("({})x{x}", word.join("⊗")))
            },
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;
    use crate::rbmod::module_constants;

    fn q() -> Field {
        Field::Rational
    }

    fn e1() -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::example_e(&q().one()))
    }

    fn gens(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn shift_prepends_unit() {
        let alg = e1();
        let free = FreeOperated::new(alg.clone(), gens(1), 3);
        let y = free.pure(&[alg.basis(1), alg.basis(1)], 0).unwrap();
        let shifted = free.shift(&y).unwrap();
        assert_eq!(
            shifted,
            free.pure(&[alg.basis(0), alg.basis(1), alg.basis(1)], 0)
                .unwrap()
        );
        assert!(matches!(free.shift(&shifted), Err(Error::Truncation(3))));
        assert!(free.shift(&free.zero()).unwrap().is_zero());
    }

    #[test]
    fn operated_universal_map_recursion() {
        let alg = e1();
        let free = FreeOperated::new(alg.clone(), gens(1), DEFAULT_N_MAX);
        let m = RbModule::regular(alg.clone(), Side::Left).verify().unwrap();
        let images = vec![alg.basis(1)];
        let f = free.universal_map(&images, &m).unwrap();
        // u₁·P(u₀·u₁) = u₁·P(u₁) = −u₁² = u₁ at λ = 1
        let t = free.pure(&[alg.basis(1), alg.basis(0)], 0).unwrap();
        assert_eq!(f.apply(&t), alg.basis(1));
        assert_eq!(f.apply(&free.j(0).unwrap()), alg.basis(1));
        for y in free.basis_terms(DEFAULT_N_MAX - 1) {
            assert_eq!(f.apply(&free.shift(&y).unwrap()), m.apply(&f.apply(&y)));
        }
    }

    #[test]
    fn free_module_dimensions() {
        let alg = e1();
        assert_eq!(free_rb_module(&alg, gens(1)).unwrap().module().dim(), 6);
        assert_eq!(free_rb_module(&alg, gens(2)).unwrap().module().dim(), 12);
        assert_eq!(free_rb_module(&alg, gens(0)).unwrap().module().dim(), 0);
    }

    #[test]
    fn free_module_over_base_field() {
        let lam = q().from_i64(5);
        let alg = Arc::new(AlgebraPresentation::zero_operator(
            Algebra::base_field(q()),
            &lam,
        ));
        let free = free_rb_module(&alg, gens(1)).unwrap();
        let p = free.module().operator();
        // p(1·x) = Q·x, p(Q·x) = −λQ·x
        assert_eq!(p.column(0), vec![q().zero(), q().one()]);
        assert_eq!(p.column(1), vec![q().zero(), -&lam]);
    }

    #[test]
    fn pi_examples_and_relations() {
        let alg = e1();
        let free = FreeOperated::new(alg.clone(), gens(1), DEFAULT_N_MAX);
        let rb = free_rb_module(&alg, gens(1)).unwrap();
        let ring = rb.ring();
        let r = alg.basis(1);
        assert_eq!(
            rb.pi(&free.pure(std::slice::from_ref(&r), 0).unwrap())
                .unwrap(),
            rb.element(0, &ring.eta(&r))
        );
        let qr = free.pure(&[alg.unit().clone(), r.clone()], 0).unwrap();
        assert_eq!(
            rb.pi(&qr).unwrap(),
            rb.element(0, &ring.rqs(alg.unit(), &r))
        );
        let y = free.pure(&[alg.basis(1), alg.basis(1)], 0).unwrap();
        let lhs = rb.pi(&free.shift(&y).unwrap()).unwrap();
        let rhs = rb.module().apply(&rb.pi(&y).unwrap());
        assert_eq!(lhs, rhs);
        for y in free.basis_terms(2) {
            for i in 0..alg.dim() {
                let rel = free.relation(&alg.basis(i), &y).unwrap();
                assert!(vector::is_zero(&rb.pi(&rel).unwrap()));
            }
        }
    }

    #[test]
    fn free_universal_map() {
        let alg = e1();
        let rb = free_rb_module(&alg, gens(1)).unwrap();
        let m = RbModule::regular(alg.clone(), Side::Left).verify().unwrap();
        let f = rb.universal_map(&[alg.basis(0)], &m).unwrap();
        // (u₀Qu₀)x ↦ P(u₀) = u₁; its coordinate index is d + 0·d + 0 = 2
        assert_eq!(f.matrix().column(2), alg.basis(1));
        assert_eq!(f.matrix().mul_vec(&rb.j(0)), alg.basis(0));
        let zero = rb.universal_map(&[m.zero_vector()], &m).unwrap();
        assert!(zero.matrix().is_zero());
        let id = rb.universal_map(&[rb.j(0)], rb.module()).unwrap();
        assert!(id.matrix().is_identity());
        assert_eq!(rb.homs_vanishing_on_generators(&m).unwrap(), 0);
    }

    #[test]
    fn restricted_free_modules() {
        let alg = e1();
        let rf = restricted_free(&alg, gens(2)).unwrap();
        assert_eq!(rf.module().dim(), 4);
        let id = rf
            .universal_map(&[rf.iota(0), rf.iota(1)], rf.module())
            .unwrap();
        assert!(id.matrix().is_identity());
        assert_eq!(restricted_free(&alg, gens(0)).unwrap().module().dim(), 0);
    }

    #[test]
    fn restricted_universal_map_refuses_non_constants() {
        // In the free module, 1·x is not a module constant: p(u₀·x) = Q·x but P(u₀)·x = u₁·x.
        let alg = e1();
        let rf = restricted_free(&alg, gens(1)).unwrap();
        let rb = free_rb_module(&alg, gens(1)).unwrap();
        assert!(!module_constants(rb.module()).unwrap().contains(&rb.j(0)));
        let err = rf.universal_map(&[rb.j(0)], rb.module()).unwrap_err();
        assert!(matches!(err, Error::NotModuleConstant { .. }));
    }
}
