use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Quotient, Scalar, Subspace, Vector};
use crate::rbmod::equations::MatrixEquations;
use crate::rbmod::{hom_module, hom_space, Bimodule, HomStructure, ModuleMap, RbModule, Side};
use crate::report::AxiomReport;

/// `M ⊗_(R,P) N` as `(M ⊗_k N) / W`, where `W` is spanned by
/// `(m·eᵢ)⊗n − m⊗(eᵢ·n)` and `p_M(m)⊗n − m⊗p_N(n)`.
///
/// The ambient index of `v_a ⊗ w_b` is `a·dim N + b`. Over a field the
/// `k`-balancing relations follow from the `R`-balancing ones through the
/// unit, so this quotient is the tensor product.
#[derive(Clone, Debug)]
pub struct TensorPresentation {
    left: RbModule,
    right: RbModule,
    quotient: Quotient,
    projection: Matrix,
    section: Matrix,
}

pub fn tensor_product(m: &RbModule, n: &RbModule) -> Result<TensorPresentation> {
    m.require_side(Side::Right)?;
    n.require_side(Side::Left)?;
    m.require_verified()?;
    n.require_verified()?;
    if !AlgebraPresentation::same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Mismatch(
            "tensor factors live over different algebras".into(),
        ));
    }
    let f = m.field();
    let (im, inn) = (Matrix::identity(f, m.dim()), Matrix::identity(f, n.dim()));
    let mut generators = Vec::new();
    for (r, l) in m.action().iter().zip(n.action()) {
        generators.extend(r.kron(&inn).sub(&im.kron(l)).columns());
    }
    generators.extend(
        m.operator()
            .kron(&inn)
            .sub(&im.kron(n.operator()))
            .columns(),
    );
    let relations = Subspace::span(f, m.dim() * n.dim(), generators);
    let quotient = relations.quotient();
    let projection = quotient.projection_matrix();
    let section = quotient.section_matrix();
    Ok(TensorPresentation {
        left: m.clone(),
        right: n.clone(),
        quotient,
        projection,
        section,
    })
}

impl TensorPresentation {
    pub fn left(&self) -> &RbModule {
        &self.left
    }

    pub fn right(&self) -> &RbModule {
        &self.right
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient(&self) -> usize {
        self.quotient.ambient()
    }

    pub fn relations(&self) -> &Subspace {
        self.quotient.relations()
    }

    /// `Π`: ambient coordinates to quotient coordinates.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// Canonical representatives of the quotient basis.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// `ι(m, n)`, the class of `m ⊗ n`.
    pub fn iota(&self, m: &[Scalar], n: &[Scalar]) -> Vector {
        self.projection.mul_vec(&vector::kron(m, n))
    }

    /// The quotient basis as `v_a⊗w_b` labels.
    pub fn basis_labels(&self) -> Vec<String> {
        let nd = self.right.dim();
        self.quotient
            .basis_indices()
            .iter()
            .map(|&k| format!("v{}⊗w{}", k / nd, k % nd))
            .collect()
    }

    /// Bi-additivity, `R`-balancing and operator balancing of `ι` on basis
    /// elements.
    pub fn bilinearity_report(&self) -> AxiomReport {
        let mut report = AxiomReport::new("ι is (R,P)-bilinear");
        let (m, n) = (&self.left, &self.right);
        let alg = m.algebra();
        for a in 0..m.dim() {
            let va = m.basis(a);
            for b in 0..n.dim() {
                let wb = n.basis(b);
                for i in 0..alg.dim() {
                    report.compare(
                        || {
                            format!(
                                "ι(v{a}·{}, w{b}) = ι(v{a}, {}·w{b})",
                                alg.label(i),
                                alg.label(i)
                            )
                        },
                        self.iota(&m.action()[i].mul_vec(&va), &wb),
                        self.iota(&va, &n.action()[i].mul_vec(&wb)),
                    );
                }
                report.compare(
                    || format!("ι(p(v{a}), w{b}) = ι(v{a}, p(w{b}))"),
                    self.iota(&m.apply(&va), &wb),
                    self.iota(&va, &n.apply(&wb)),
                );
                for a2 in 0..m.dim() {
                    let sum = vector::add(&va, &m.basis(a2));
                    report.compare(
                        || format!("ι(v{a} + v{a2}, w{b}) = ι(v{a}, w{b}) + ι(v{a2}, w{b})"),
                        self.iota(&sum, &wb),
                        vector::add(&self.iota(&va, &wb), &self.iota(&m.basis(a2), &wb)),
                    );
                }
                for b2 in 0..n.dim() {
                    let sum = vector::add(&wb, &n.basis(b2));
                    report.compare(
                        || format!("ι(v{a}, w{b} + w{b2}) = ι(v{a}, w{b}) + ι(v{a}, w{b2})"),
                        self.iota(&va, &sum),
                        vector::add(&self.iota(&va, &wb), &self.iota(&va, &n.basis(b2))),
                    );
                }
            }
        }
        report
    }

    /// Linear functionals on `M ⊗_k N` that vanish on the relations; a
    /// bilinear map into `k^t` is any `t` of them stacked as rows.
    pub fn bilinear_functionals(&self) -> Subspace {
        let f = self.field();
        let n = self.ambient();
        if self.relations().dim() == 0 {
            return Subspace::full(f, n);
        }
        self.relations().basis_matrix().kernel()
    }

    /// Solves `X·Π = B` for a bilinear map given on `M ⊗_k N`. Returns the
    /// solution (if any) and the dimension of the solution space of the
    /// homogeneous system, which is zero exactly when factorizations are
    /// unique.
    pub fn factor(&self, bilinear: &Matrix) -> Result<(Option<Matrix>, usize)> {
        if bilinear.cols() != self.ambient() {
            return Err(Error::Dimension(format!(
                "bilinear map must have {} columns",
                self.ambient()
            )));
        }
        let t = bilinear.rows();
        // Πᵀ·Xᵀ = Bᵀ with unknown Xᵀ of shape dim × t.
        let mut eq = MatrixEquations::new(self.field(), self.dim(), t);
        eq.left_factor_equals(&self.projection.transpose(), &bilinear.transpose());
        let solution = eq.solve()?.map(|xt| xt.transpose());
        Ok((solution, eq.kernel().dim()))
    }

    /// Matrix on quotients induced by `f ⊗ g : M ⊗ N → M' ⊗ N'`; refuses if
    /// `f ⊗ g` does not carry the relations into the target relations.
    pub fn map_to(&self, target: &TensorPresentation, f: &Matrix, g: &Matrix) -> Result<Matrix> {
        let k = f.kron(g);
        if k.cols() != self.ambient() || k.rows() != target.ambient() {
            return Err(Error::Dimension(
                "maps do not match the tensor factors".into(),
            ));
        }
        for w in self.relations().basis() {
            if !target.relations().contains(&k.mul_vec(w)) {
                return Err(Error::NotStable(
                    "the induced map does not preserve the relations".into(),
                ));
            }
        }
        Ok(target.projection.mul(&k).mul(&self.section))
    }
}

/// `id_M ⊗ g` for a map `g: N → L` of left modules.
pub fn induced_map(
    mn: &TensorPresentation,
    ml: &TensorPresentation,
    g: &ModuleMap,
) -> Result<Matrix> {
    if mn.left != ml.left || g.source() != &mn.right || g.target() != &ml.right {
        return Err(Error::Mismatch(
            "map does not connect the given tensor products".into(),
        ));
    }
    mn.map_to(ml, &Matrix::identity(mn.field(), mn.left.dim()), g.matrix())
}

/// `g ⊗ id_M` for a map `g: N → L` of right modules.
pub fn induced_map_left(
    nm: &TensorPresentation,
    lm: &TensorPresentation,
    g: &ModuleMap,
) -> Result<Matrix> {
    if nm.right != lm.right || g.source() != &nm.left || g.target() != &lm.left {
        return Err(Error::Mismatch(
            "map does not connect the given tensor products".into(),
        ));
    }
    nm.map_to(
        lm,
        g.matrix(),
        &Matrix::identity(nm.field(), nm.right.dim()),
    )
}

/// A module structure carried by a tensor quotient.
#[derive(Clone, Debug)]
pub struct ScalarExtension {
    pub tensor: TensorPresentation,
    /// Returned unverified; its side's check is the content of the
    /// construction.
    pub module: RbModule,
}

/// `B ⊗_(R,P) N` for an `(S,α)`-`(R,P)`-bimodule `B` and a left
/// `(R,P)`-module `N`, as a left `(S,α)`-module with `s(m⊗n) = (sm)⊗n` and
/// `q(m⊗n) = p^S(m)⊗n`.
pub fn scalar_extension(b: &Bimodule, n: &RbModule) -> Result<ScalarExtension> {
    b.require_verified()?;
    let tensor = tensor_product(b.as_right(), n)?;
    let id = Matrix::identity(n.field(), n.dim());
    let action = b
        .as_left()
        .action()
        .iter()
        .map(|s| tensor.map_to(&tensor, s, &id))
        .collect::<Result<Vec<_>>>()?;
    let operator = tensor.map_to(&tensor, b.left_operator(), &id)?;
    let module = RbModule::new(b.left_algebra().clone(), Side::Left, action, operator)?;
    Ok(ScalarExtension { tensor, module })
}

/// `N ⊗_(R,P) B` for a right `(R,P)`-module `N` and an `(R,P)`-`(S,α)`-bimodule
/// `B`, as a right `(S,α)`-module with `(n⊗m)s = n⊗(ms)` and
/// `q(n⊗m) = n⊗p^S(m)`.
pub fn scalar_extension_right(n: &RbModule, b: &Bimodule) -> Result<ScalarExtension> {
    b.require_verified()?;
    let tensor = tensor_product(n, b.as_left())?;
    let id = Matrix::identity(n.field(), n.dim());
    let action = b
        .as_right()
        .action()
        .iter()
        .map(|s| tensor.map_to(&tensor, &id, s))
        .collect::<Result<Vec<_>>>()?;
    let operator = tensor.map_to(&tensor, &id, b.right_operator())?;
    let module = RbModule::new(b.right_algebra().clone(), Side::Right, action, operator)?;
    Ok(ScalarExtension { tensor, module })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AdjunctionReport {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// `τ` in the bases of the two Hom spaces.
    pub tau: Matrix,
    pub report: AxiomReport,
}

/// `τ: Hom_(S,α)(M⊗N, L) → Hom_(R,P)(M, Hom_(S,α)(N, L))`,
/// `τ(f)(m) = (n ↦ f(m⊗n))`, built on a basis and checked to be bijective.
/// `M` is a right `(R,P)`-module, `N` an `(R,P)`-`(S,α)`-bimodule and `L` a
/// right `(S,α)`-module.
pub fn adjunction_check(m: &RbModule, n: &Bimodule, l: &RbModule) -> Result<AdjunctionReport> {
    let ext = scalar_extension_right(m, n)?;
    let mn = ext.module.verify()?;
    let lhs = hom_space(&mn, l)?;
    let inner = hom_module(HomStructure::SourceRight {
        source: n,
        target: l,
    })?;
    let inner_module = inner.module.clone().verify()?;
    let rhs = hom_space(m, &inner_module)?;
    let f = m.field();
    let mut report = AxiomReport::new("τ is a bijection Hom(M⊗N, L) → Hom(M, Hom(N, L))");
    let mut columns = Vec::new();
    for (k, phi) in lhs.basis_matrices().iter().enumerate() {
        let mut tau_cols = Vec::new();
        for a in 0..m.dim() {
            let cols: Vec<Vector> = (0..n.dim())
                .map(|b| phi.mul_vec(&ext.tensor.iota(&m.basis(a), &n.as_left().basis(b))))
                .collect();
            let partial = Matrix::from_columns(f, l.dim(), &cols);
            let coords = inner
                .space
                .coordinates(&partial)
                .ok_or_else(|| Error::NotStable(format!("τ(f{k})(v{a}) is not a homomorphism")))?;
            tau_cols.push(coords);
        }
        let tau_f = Matrix::from_columns(f, inner_module.dim(), &tau_cols);
        match rhs.coordinates(&tau_f) {
            Some(c) => columns.push(c),
            None => {
                report.fail(
                    format!("τ(f{k}) is not a module map"),
                    vector::zeros(f, 0),
                    vector::zeros(f, 0),
                );
                columns.push(vector::zeros(f, rhs.dim()));
            }
        }
    }
    let tau = Matrix::from_columns(f, rhs.dim(), &columns);
    if lhs.dim() != rhs.dim() {
        report.fail(
            "dimensions of the two Hom spaces",
            vec![f.from_i64(lhs.dim() as i64)],
            vec![f.from_i64(rhs.dim() as i64)],
        );
    } else if tau.rank() != lhs.dim() {
        report.fail(
            "rank of τ",
            vec![f.from_i64(tau.rank() as i64)],
            vec![f.from_i64(lhs.dim() as i64)],
        );
    }
    Ok(AdjunctionReport {
        lhs_dim: lhs.dim(),
        rhs_dim: rhs.dim(),
        tau,
        report,
    })
}

/// `M⊗N′ → M⊗N → M⊗N″ → 0` is exact for `0 → N′ → N → N″ → 0`.
pub fn right_exactness_check(
    m: &RbModule,
    inclusion: &ModuleMap,
    projection: &ModuleMap,
) -> Result<AxiomReport> {
    let t1 = tensor_product(m, inclusion.source())?;
    let t2 = tensor_product(m, inclusion.target())?;
    let t3 = tensor_product(m, projection.target())?;
    let f = induced_map(&t1, &t2, inclusion)?;
    let g = induced_map(&t2, &t3, projection)?;
    let field = m.field();
    let num = |x: usize| vec![field.from_i64(x as i64)];
    let mut report = AxiomReport::new("tensoring preserves exactness at the middle and right");
    report.compare(
        || "g*∘f* = 0".into(),
        num(usize::from(!g.mul(&f).is_zero())),
        num(0),
    );
    report.compare(|| "rank g* = dim M⊗N″".into(), num(g.rank()), num(t3.dim()));
    report.compare(
        || "dim ker g* = rank f*".into(),
        num(t2.dim() - g.rank()),
        num(f.rank()),
    );
    Ok(report)
}
