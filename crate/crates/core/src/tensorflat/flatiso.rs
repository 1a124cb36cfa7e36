use serde::Serialize;

use super::flat::ExactnessReport;
use super::tensor::scalar_extension_right;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix};
use crate::rbmod::{Bimodule, RbModule, Side};
use crate::report::AxiomReport;

/// Injectivity of `R → R_RB⟨Q⟩` is not decided here; callers state it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "justification")]
pub enum EtaHypothesis {
    Unset,
    Asserted(String),
}

/// Builds `μ: M⊗R → M, m⊗r ↦ m·r` and `ν: M → M⊗R, m ↦ m⊗1` and checks
/// that both are well defined, mutually inverse and right `R`-linear.
pub fn flat_iso_check(
    m: &RbModule,
    eta: &EtaHypothesis,
    flatness: &ExactnessReport,
) -> Result<AxiomReport> {
    if let EtaHypothesis::Unset = eta {
        return Err(Error::Precondition(
            "injectivity of the inclusion R → R_RB⟨Q⟩ must be asserted by the caller".into(),
        ));
    }
    if !flatness.verdict {
        return Err(Error::Precondition(format!(
            "flatness evidence failed: {}",
            flatness.summary()
        )));
    }
    m.require_side(Side::Right)?;
    m.require_verified()?;
    let algebra = m.algebra();
    let f = m.field();
    let (n, d) = (m.dim(), algebra.dim());
    let regular = Bimodule::regular(algebra.clone()).verify()?;
    let ext = scalar_extension_right(m, &regular)?;
    let t = &ext.tensor;
    let t_mod = ext.module.verify()?;
    let mut report = AxiomReport::new("M⊗R ≅ M as right R-modules");

    let mu_hat = Matrix::from_fn(f, n, n * d, |row, col| {
        m.action()[col % d].get(row, col / d).clone()
    });
    for (k, w) in t.relations().basis().iter().enumerate() {
        report.compare(
            || format!("m·r vanishes on relation {k}"),
            mu_hat.mul_vec(w),
            vector::zeros(f, n),
        );
    }
    let mu = mu_hat.mul(t.section());
    let nu = Matrix::from_columns(
        f,
        t.dim(),
        &(0..n)
            .map(|a| t.iota(&m.basis(a), algebra.unit()))
            .collect::<Vec<_>>(),
    );

    let mu_nu = mu.mul(&nu);
    for a in 0..n {
        report.compare(|| format!("μ(ν(v{a})) = v{a}"), mu_nu.column(a), m.basis(a));
    }
    let nu_mu = nu.mul(&mu);
    for c in 0..t.dim() {
        report.compare(
            || format!("ν(μ(t{c})) = t{c}"),
            nu_mu.column(c),
            vector::unit(f, t.dim(), c),
        );
    }
    for (i, (act_t, act_m)) in t_mod.action().iter().zip(m.action()).enumerate() {
        let (lhs, rhs) = (mu.mul(act_t), act_m.mul(&mu));
        for c in 0..t.dim() {
            report.compare(
                || {
                    format!(
                        "μ(t{c}·{}) = μ(t{c})·{}",
                        algebra.label(i),
                        algebra.label(i)
                    )
                },
                lhs.column(c),
                rhs.column(c),
            );
        }
        let (lhs, rhs) = (nu.mul(act_m), act_t.mul(&nu));
        for a in 0..n {
            report.compare(
                || {
                    format!(
                        "ν(v{a}·{}) = ν(v{a})·{}",
                        algebra.label(i),
                        algebra.label(i)
                    )
                },
                lhs.column(a),
                rhs.column(a),
            );
        }
    }
    Ok(report)
}
