use serde::Serialize;

use crate::linalg::{vector, Scalar, Vector};

/// One failing instance of an identity: where it was evaluated and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub instance: String,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Outcome of checking an identity on every basis instance.
///
/// `verdict` is true exactly when `witnesses` is empty; only the methods
/// below mutate a report, which keeps the two in step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub identity: String,
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub fn new(identity: impl Into<String>) -> AxiomReport {
        AxiomReport {
            identity: identity.into(),
            verdict: true,
            witnesses: Vec::new(),
        }
    }

    /// Records a witness if the two sides differ. Returns whether they agreed.
    pub fn compare(&mut self, instance: impl FnOnce() -> String, lhs: Vector, rhs: Vector) -> bool {
        if lhs == rhs {
            return true;
        }
        self.fail(instance(), lhs, rhs);
        false
    }

    /// Records a witness unconditionally.
    pub fn fail(&mut self, instance: impl Into<String>, lhs: Vector, rhs: Vector) {
        self.witnesses.push(Witness {
            instance: instance.into(),
            lhs,
            rhs,
        });
        self.verdict = false;
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.verdict &= other.verdict;
        self.witnesses.extend(other.witnesses);
    }

    pub fn passed(&self) -> bool {
        self.verdict
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {}",
            self.identity,
            if self.verdict { "holds" } else { "FAILS" }
        );
        for w in &self.witnesses {
            out.push_str(&format!(
                "\n  at {}: lhs = {}, rhs = {}",
                w.instance,
                vector::render(&w.lhs),
                vector::render(&w.rhs)
            ));
        }
        out
    }
}

/// Scalar-only witnesses (for identities whose sides are single numbers).
pub fn scalar_vec(x: &Scalar) -> Vector {
    vec![x.clone()]
}
