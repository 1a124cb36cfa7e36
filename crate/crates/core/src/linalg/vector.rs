//! Dense coordinate vectors as plain `Vec<Scalar>`.

use super::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zeros(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `acc += c * a`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    assert_eq!(acc.len(), a.len(), "vector length mismatch");
    if c.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Concatenation of coordinate blocks.
pub fn concat(parts: &[&[Scalar]]) -> Vector {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Coordinates of the simple tensor `a ⊗ b` in the basis ordered `(i, j) ↦ i·len(b) + j`.
pub fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
    let field = a
        .first()
        .or(b.first())
        .map(Scalar::field)
        .unwrap_or_default();
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        if x.is_zero() {
            out.extend(std::iter::repeat_n(field.zero(), b.len()));
        } else {
            out.extend(b.iter().map(|y| x * y));
        }
    }
    out
}

pub fn render(a: &[Scalar]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// `Σ cᵢ·labelᵢ` with unit coefficients dropped and negative ones shown as
/// subtraction, e.g. `u0 - 2·u1`; zero terms are skipped.
pub fn render_combination<'a>(terms: impl IntoIterator<Item = (&'a Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.to_string().starts_with('-');
        let magnitude = if negative { -c } else { c.clone() };
        let sign = match (out.is_empty(), negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out.push_str(sign);
        if magnitude.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{magnitude}·{label}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
