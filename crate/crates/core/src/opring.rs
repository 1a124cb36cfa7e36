//! The ring of Rota-Baxter operators over `(R, P)`: words `r₀ Q r₁ Q ⋯ Q rₙ`
//! reduced with `QrQ → P(r)Q − QP(r) − λQr` to coordinates in `R ⊕ R⊗R`.
//!
//! Normal-form equality is sound for proving two elements equal. Different
//! normal forms are only reported as distinct *as normal forms*: nothing here
//! shows that `{eᵢ} ∪ {eᵢQeⱼ}` is linearly independent in the ring.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, RawScalar, Scalar, Vector};
use crate::rbmod::{RbModule, Side};
use crate::report::AxiomReport;

/// `coeff · r₀ Q r₁ Q ⋯ Q rₙ`, stored as the segments `[r₀, …, rₙ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    coeff: Scalar,
    segments: Vec<Vector>,
}

impl Word {
    pub fn new(coeff: Scalar, segments: Vec<Vector>) -> Result<Word> {
        let Some(first) = segments.first() else {
            return Err(Error::MalformedWord(
                "a word needs at least one segment".into(),
            ));
        };
        if segments.iter().any(|s| s.len() != first.len()) {
            return Err(Error::MalformedWord(
                "segments have different lengths".into(),
            ));
        }
        Ok(Word { coeff, segments })
    }

    pub fn coeff(&self) -> &Scalar {
        &self.coeff
    }

    pub fn segments(&self) -> &[Vector] {
        &self.segments
    }

    pub fn q_count(&self) -> usize {
        self.segments.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.coeff.is_zero() || self.segments.iter().any(|s| vector::is_zero(s))
    }
}

/// One token of the JSON word syntax: a coefficient vector or the marker `"Q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Token {
    Marker(String),
    Element(Vec<RawScalar>),
}

/// `a + Σ tᵢⱼ eᵢQeⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpRingElement {
    pub scalar_part: Vector,
    pub q_part: Matrix,
}

impl Serialize for OpRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            scalar_part: &'a Vector,
            q_part: &'a Matrix,
        }
        Repr {
            scalar_part: &self.scalar_part,
            q_part: &self.q_part,
        }
        .serialize(s)
    }
}

impl OpRingElement {
    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.scalar_part) && self.q_part.is_zero()
    }

    pub fn add(&self, other: &OpRingElement) -> OpRingElement {
        OpRingElement {
            scalar_part: vector::add(&self.scalar_part, &other.scalar_part),
            q_part: self.q_part.add(&other.q_part),
        }
    }

    pub fn sub(&self, other: &OpRingElement) -> OpRingElement {
        OpRingElement {
            scalar_part: vector::sub(&self.scalar_part, &other.scalar_part),
            q_part: self.q_part.sub(&other.q_part),
        }
    }

    pub fn scale(&self, c: &Scalar) -> OpRingElement {
        OpRingElement {
            scalar_part: vector::scale(c, &self.scalar_part),
            q_part: self.q_part.scale(c),
        }
    }

    /// Coordinates `[scalar_part, q_part row-major]`.
    pub fn to_vector(&self) -> Vector {
        let mut v = self.scalar_part.clone();
        v.extend_from_slice(self.q_part.entries());
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Counters from one reduction. Every rewrite removes exactly one `Q` from
/// the word it acts on, so `longest_path ≤ initial_q_count − 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionStats {
    pub rewrites: usize,
    pub initial_q_count: usize,
    pub longest_path: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalFormEquality {
    Equal,
    DistinctAsNormalForms,
}

impl NormalFormEquality {
    pub fn of(x: &OpRingElement, y: &OpRingElement) -> NormalFormEquality {
        if x == y {
            NormalFormEquality::Equal
        } else {
            NormalFormEquality::DistinctAsNormalForms
        }
    }
}

/// `R_RB⟨Q⟩` for a fixed `(R, P, λ)`.
#[derive(Clone, Debug)]
pub struct OpRing {
    algebra: Arc<AlgebraPresentation>,
}

impl OpRing {
    pub fn new(algebra: Arc<AlgebraPresentation>) -> OpRing {
        OpRing { algebra }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Number of normal-form coordinates, `d + d²`.
    pub fn dim(&self) -> usize {
        let d = self.algebra.dim();
        d + d * d
    }

    pub fn zero(&self) -> OpRingElement {
        let d = self.algebra.dim();
        OpRingElement {
            scalar_part: vector::zeros(self.field(), d),
            q_part: Matrix::zeros(self.field(), d, d),
        }
    }

    /// `η(r)`: `r` with no `Q` part.
    pub fn eta(&self, r: &[Scalar]) -> OpRingElement {
        OpRingElement {
            scalar_part: r.to_vec(),
            ..self.zero()
        }
    }

    pub fn one(&self) -> OpRingElement {
        self.eta(self.algebra.unit())
    }

    /// `r Q s`
    pub fn rqs(&self, r: &[Scalar], s: &[Scalar]) -> OpRingElement {
        let mut x = self.zero();
        add_outer(&mut x.q_part, &self.field().one(), r, s);
        x
    }

    /// `Q = 1·Q·1`
    pub fn q(&self) -> OpRingElement {
        self.rqs(self.algebra.unit(), self.algebra.unit())
    }

    pub fn from_vector(&self, v: &[Scalar]) -> Result<OpRingElement> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates",
                self.dim()
            )));
        }
        let d = self.algebra.dim();
        Ok(OpRingElement {
            scalar_part: v[..d].to_vec(),
            q_part: Matrix::from_fn(self.field(), d, d, |i, j| v[d + i * d + j].clone()),
        })
    }

    /// Basis element `k` of the coordinates: `eₖ` for `k < d`, else `eᵢQeⱼ`.
    pub fn basis_element(&self, k: usize) -> OpRingElement {
        self.from_vector(&vector::unit(self.field(), self.dim(), k))
            .expect("in range")
    }

    pub fn basis_label(&self, k: usize) -> String {
        let d = self.algebra.dim();
        if k < d {
            self.algebra.label(k).to_string()
        } else {
            let (i, j) = ((k - d) / d, (k - d) % d);
            format!("{}·Q·{}", self.algebra.label(i), self.algebra.label(j))
        }
    }

    /// Builds a word from tokens. Adjacent elements multiply; an empty
    /// segment (leading, trailing, or between two markers) is `1`.
    pub fn parse_word(&self, tokens: &[Token]) -> Result<Word> {
        let mut segments = Vec::new();
        let mut current: Option<Vector> = None;
        for token in tokens {
            match token {
                Token::Marker(m) if m == "Q" => {
                    segments.push(
                        current
                            .take()
                            .unwrap_or_else(|| self.algebra.unit().clone()),
                    );
                }
                Token::Marker(m) => {
                    return Err(Error::MalformedWord(format!("unknown marker {m:?}")))
                }
                Token::Element(raw) => {
                    if raw.len() != self.algebra.dim() {
                        return Err(Error::MalformedWord(format!(
                            "element has {} coordinates, algebra has dimension {}",
                            raw.len(),
                            self.algebra.dim()
                        )));
                    }
                    let v = raw
                        .iter()
                        .map(|x| x.resolve(self.field()))
                        .collect::<Result<Vector>>()?;
                    current = Some(match current {
                        Some(c) => self.algebra.multiply(&c, &v),
                        None => v,
                    });
                }
            }
        }
        segments.push(current.unwrap_or_else(|| self.algebra.unit().clone()));
        Word::new(self.field().one(), segments)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.segments[0].len() != self.algebra.dim() {
            return Err(Error::MalformedWord(format!(
                "segments have length {}, algebra has dimension {}",
                w.segments[0].len(),
                self.algebra.dim()
            )));
        }
        if w.coeff.field() != self.field() {
            return Err(Error::FieldMismatch(
                w.coeff.field().name(),
                self.field().name(),
            ));
        }
        Ok(())
    }

    /// Leftmost-first reduction to normal form.
    pub fn reduce(&self, w: &Word) -> Result<OpRingElement> {
        Ok(self.reduce_with(w, Strategy::Leftmost)?.0)
    }

    pub fn reduce_with(
        &self,
        w: &Word,
        strategy: Strategy,
    ) -> Result<(OpRingElement, ReductionStats)> {
        self.check_word(w)?;
        let lam = self.algebra.weight();
        let mut out = self.zero();
        let mut stats = ReductionStats {
            initial_q_count: w.q_count(),
            ..Default::default()
        };
        let mut stack = vec![(w.clone(), 0usize)];
        while let Some((word, depth)) = stack.pop() {
            if word.is_zero() {
                continue;
            }
            stats.longest_path = stats.longest_path.max(depth);
            match word.q_count() {
                0 => vector::axpy(&mut out.scalar_part, &word.coeff, &word.segments[0]),
                1 => add_outer(
                    &mut out.q_part,
                    &word.coeff,
                    &word.segments[0],
                    &word.segments[1],
                ),
                n => {
                    let k = match strategy {
                        Strategy::Leftmost => 1,
                        Strategy::Rightmost => n - 1,
                    };
                    stats.rewrites += 1;
                    let s = &word.segments;
                    let pr = self.algebra.apply(&s[k]);
                    let splice = |left: Vector, right: Vector, coeff: Scalar| {
                        let mut segments = s[..k - 1].to_vec();
                        segments.push(left);
                        segments.push(right);
                        segments.extend_from_slice(&s[k + 2..]);
                        Word { coeff, segments }
                    };
                    let next = [
                        splice(
                            self.algebra.multiply(&s[k - 1], &pr),
                            s[k + 1].clone(),
                            word.coeff.clone(),
                        ),
                        splice(
                            s[k - 1].clone(),
                            self.algebra.multiply(&pr, &s[k + 1]),
                            -&word.coeff,
                        ),
                        splice(
                            s[k - 1].clone(),
                            self.algebra.multiply(&s[k], &s[k + 1]),
                            -&(lam * &word.coeff),
                        ),
                    ];
                    for w in next {
                        debug_assert_eq!(w.q_count() + 1, n);
                        stack.push((w, depth + 1));
                    }
                }
            }
        }
        Ok((out, stats))
    }

    /// `r₀Q⋯Qrₙ · s₀Q⋯Qsₘ = r₀Q⋯Q(rₙs₀)Q⋯Qsₘ`
    pub fn concat(&self, a: &Word, b: &Word) -> Word {
        let mut segments = a.segments[..a.segments.len() - 1].to_vec();
        segments.push(
            self.algebra
                .multiply(a.segments.last().expect("nonempty"), &b.segments[0]),
        );
        segments.extend_from_slice(&b.segments[1..]);
        Word {
            coeff: &a.coeff * &b.coeff,
            segments,
        }
    }

    /// One word per nonzero coordinate.
    pub fn to_words(&self, x: &OpRingElement) -> Vec<Word> {
        let alg = &self.algebra;
        let mut words = Vec::new();
        for (i, c) in x.scalar_part.iter().enumerate() {
            if !c.is_zero() {
                words.push(Word {
                    coeff: c.clone(),
                    segments: vec![alg.basis(i)],
                });
            }
        }
        let d = alg.dim();
        for i in 0..d {
            for j in 0..d {
                let c = x.q_part.get(i, j);
                if !c.is_zero() {
                    words.push(Word {
                        coeff: c.clone(),
                        segments: vec![alg.basis(i), alg.basis(j)],
                    });
                }
            }
        }
        words
    }

    /// Closed-form product. For the `Q`-parts,
    /// `(rQs)(r′Qs′) = r·P(sr′)·Q·s′ − r·Q·P(sr′)s′ − λ·r·Q·sr′s′`.
    pub fn multiply(&self, x: &OpRingElement, y: &OpRingElement) -> OpRingElement {
        let alg = self.algebra.algebra();
        let lam = self.algebra.weight();
        let d = alg.dim();
        let scalar_part = alg.multiply(&x.scalar_part, &y.scalar_part);
        let mut q = alg.left_mul(&x.scalar_part).mul(&y.q_part);
        q = q.add(&x.q_part.mul(&alg.right_mul(&y.scalar_part).transpose()));
        let rows: Vec<Vector> = x.q_part.row_vectors();
        let cols: Vec<Vector> = y.q_part.columns();
        for (i, s) in rows.iter().enumerate() {
            if vector::is_zero(s) {
                continue;
            }
            for (l, r2) in cols.iter().enumerate() {
                if vector::is_zero(r2) {
                    continue;
                }
                let m = alg.multiply(s, r2);
                if vector::is_zero(&m) {
                    continue;
                }
                let pm = self.algebra.apply(&m);
                let first = alg.left_basis_mul(i).mul_vec(&pm);
                let second = alg.right_basis_mul(l).mul_vec(&pm);
                let third = alg.right_basis_mul(l).mul_vec(&m);
                for k in 0..d {
                    let v = q.get(k, l) + &first[k];
                    q.set(k, l, v);
                    let v = q.get(i, k) - &second[k] - lam * &third[k];
                    q.set(i, k, v);
                }
            }
        }
        OpRingElement {
            scalar_part,
            q_part: q,
        }
    }

    fn require_left_module(&self, module: &RbModule) -> Result<()> {
        module.require_side(Side::Left)?;
        module.require_verified()?;
        if !AlgebraPresentation::same_algebra(module.algebra(), &self.algebra) {
            return Err(Error::Mismatch(
                "module lives over a different algebra".into(),
            ));
        }
        Ok(())
    }

    /// `(a + Σ tᵢⱼ eᵢQeⱼ)·m = a·m + Σ tᵢⱼ eᵢ·p(eⱼ·m)`.
    pub fn act(&self, x: &OpRingElement, module: &RbModule, m: &[Scalar]) -> Result<Vector> {
        self.require_left_module(module)?;
        let mut out = module.act(&x.scalar_part, m);
        let images: Vec<Vector> = module
            .action()
            .iter()
            .map(|a| module.apply(&a.mul_vec(m)))
            .collect();
        for i in 0..self.algebra.dim() {
            let mut inner = module.zero_vector();
            for (j, w) in images.iter().enumerate() {
                let c = x.q_part.get(i, j);
                if !c.is_zero() {
                    vector::axpy(&mut inner, c, w);
                }
            }
            if !vector::is_zero(&inner) {
                out = vector::add(&out, &module.action()[i].mul_vec(&inner));
            }
        }
        Ok(out)
    }

    /// `r₀·p(r₁·p(⋯p(rₙ·m)))`, evaluated from the right without reduction.
    pub fn act_word(&self, w: &Word, module: &RbModule, m: &[Scalar]) -> Result<Vector> {
        self.require_left_module(module)?;
        self.check_word(w)?;
        let mut segments = w.segments.iter().rev();
        let mut v = module.act(segments.next().expect("nonempty"), m);
        for r in segments {
            v = module.act(r, &module.apply(&v));
        }
        Ok(vector::scale(&w.coeff, &v))
    }

    /// The ring as a left `(R, P)`-module: `r` acts by left multiplication
    /// with `η(r)`, the operator is left multiplication by `Q`. The
    /// Rota-Baxter identity is checked, not assumed.
    pub fn left_module(&self) -> Result<RbModule> {
        let n = self.dim();
        let f = self.field();
        let basis: Vec<OpRingElement> = (0..n).map(|k| self.basis_element(k)).collect();
        let left_mul = |x: &OpRingElement| {
            let cols: Vec<Vector> = basis
                .iter()
                .map(|b| self.multiply(x, b).to_vector())
                .collect();
            Matrix::from_columns(f, n, &cols)
        };
        let action = (0..self.algebra.dim())
            .map(|i| left_mul(&self.eta(&self.algebra.basis(i))))
            .collect();
        let operator = left_mul(&self.q());
        RbModule::new(self.algebra.clone(), Side::Left, action, operator)?.verify()
    }

    /// The ring as a right `(R, P)`-module: `r` acts by right multiplication
    /// with `η(r)`, the operator is right multiplication by `Q`.
    pub fn right_module(&self) -> Result<RbModule> {
        let n = self.dim();
        let f = self.field();
        let basis: Vec<OpRingElement> = (0..n).map(|k| self.basis_element(k)).collect();
        let right_mul = |x: &OpRingElement| {
            let cols: Vec<Vector> = basis
                .iter()
                .map(|b| self.multiply(b, x).to_vector())
                .collect();
            Matrix::from_columns(f, n, &cols)
        };
        let action = (0..self.algebra.dim())
            .map(|i| right_mul(&self.eta(&self.algebra.basis(i))))
            .collect();
        let operator = right_mul(&self.q());
        RbModule::new(self.algebra.clone(), Side::Right, action, operator)?.verify()
    }

    pub fn render(&self, x: &OpRingElement) -> String {
        let coords = x.to_vector();
        vector::render_combination(
            coords
                .iter()
                .enumerate()
                .map(|(k, c)| (c, self.basis_label(k))),
        )
    }

    pub fn render_word(&self, w: &Word) -> String {
        let body: Vec<String> = w
            .segments
            .iter()
            .map(|s| format!("({})", self.algebra.render(s)))
            .collect();
        let body = body.join("·Q·");
        if w.coeff.is_one() {
            body
        } else {
            format!("{}·{body}", w.coeff)
        }
    }

    /// A word with `1..=max_segments` segments; each segment is `1`, a basis
    /// element, or a small random combination.
    pub fn random_word(&self, rng: &mut impl Rng, max_segments: usize) -> Word {
        let n = rng.gen_range(1..=max_segments.max(1));
        let segments = (0..n).map(|_| self.random_segment(rng)).collect();
        Word {
            coeff: nonzero_small(self.field(), rng),
            segments,
        }
    }

    fn random_segment(&self, rng: &mut impl Rng) -> Vector {
        let d = self.algebra.dim();
        match rng.gen_range(0..3) {
            0 => self.algebra.unit().clone(),
            1 => vector::scale(
                &nonzero_small(self.field(), rng),
                &self.algebra.basis(rng.gen_range(0..d)),
            ),
            _ => random_vector(self.field(), rng, d, 2),
        }
    }

    /// A sparse random element with small integer coordinates.
    pub fn random_element(&self, rng: &mut impl Rng) -> OpRingElement {
        let f = self.field();
        let v: Vector = (0..self.dim())
            .map(|_| {
                if rng.gen_bool(0.35) {
                    f.from_i64(rng.gen_range(-2..=2))
                } else {
                    f.zero()
                }
            })
            .collect();
        self.from_vector(&v).expect("right length")
    }
}

fn add_outer(q: &mut Matrix, c: &Scalar, r: &[Scalar], s: &[Scalar]) {
    for (i, ri) in r.iter().enumerate() {
        if ri.is_zero() {
            continue;
        }
        let cri = c * ri;
        for (j, sj) in s.iter().enumerate() {
            if !sj.is_zero() {
                let v = q.get(i, j) + &(&cri * sj);
                q.set(i, j, v);
            }
        }
    }
}

pub(crate) fn nonzero_small(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let c = field.from_i64(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

pub(crate) fn random_vector(field: Field, rng: &mut impl Rng, n: usize, bound: i64) -> Vector {
    (0..n)
        .map(|_| field.from_i64(rng.gen_range(-bound..=bound)))
        .collect()
}

/// Normal-form action against the direct recursive action of random words
/// on random vectors.
pub fn check_action_consistency(
    ring: &OpRing,
    module: &RbModule,
    trials: usize,
    max_segments: usize,
    rng: &mut impl Rng,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("reduce(w)·m equals the direct action of w on m");
    for _ in 0..trials {
        let w = ring.random_word(rng, max_segments);
        let m = random_vector(module.field(), rng, module.dim(), 3);
        let lhs = ring.act(&ring.reduce(&w)?, module, &m)?;
        let rhs = ring.act_word(&w, module, &m)?;
        report.compare(
            || format!("w = {}, m = {}", ring.render_word(&w), vector::render(&m)),
            lhs,
            rhs,
        );
    }
    Ok(report)
}

/// Closed-form `multiply` against reduction of concatenated words.
pub fn check_multiply_consistency(
    ring: &OpRing,
    pairs: usize,
    rng: &mut impl Rng,
) -> Result<AxiomReport> {
    let mut report =
        AxiomReport::new("multiply(x, y) equals the reduction of the concatenated words");
    for _ in 0..pairs {
        let (x, y) = (ring.random_element(rng), ring.random_element(rng));
        let mut oracle = ring.zero();
        for a in ring.to_words(&x) {
            for b in ring.to_words(&y) {
                oracle = oracle.add(&ring.reduce(&ring.concat(&a, &b))?);
            }
        }
        let product = ring.multiply(&x, &y);
        report.compare(
            || format!("x = {}, y = {}", ring.render(&x), ring.render(&y)),
            product.to_vector(),
            oracle.to_vector(),
        );
    }
    Ok(report)
}

/// `(xy)z = x(yz)` on random triples.
pub fn check_associativity(ring: &OpRing, triples: usize, rng: &mut impl Rng) -> AxiomReport {
    let mut report = AxiomReport::new("(xy)z = x(yz)");
    for _ in 0..triples {
        let (x, y, z) = (
            ring.random_element(rng),
            ring.random_element(rng),
            ring.random_element(rng),
        );
        let lhs = ring.multiply(&ring.multiply(&x, &y), &z);
        let rhs = ring.multiply(&x, &ring.multiply(&y, &z));
        report.compare(
            || {
                format!(
                    "x = {}, y = {}, z = {}",
                    ring.render(&x),
                    ring.render(&y),
                    ring.render(&z)
                )
            },
            lhs.to_vector(),
            rhs.to_vector(),
        );
    }
    report
}

/// `(xy)·m = x·(y·m)` on random triples.
pub fn check_ring_action(
    ring: &OpRing,
    module: &RbModule,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("(xy)·m = x·(y·m)");
    for _ in 0..trials {
        let (x, y) = (ring.random_element(rng), ring.random_element(rng));
        let m = random_vector(module.field(), rng, module.dim(), 3);
        let lhs = ring.act(&ring.multiply(&x, &y), module, &m)?;
        let rhs = ring.act(&x, module, &ring.act(&y, module, &m)?)?;
        report.compare(
            || {
                format!(
                    "x = {}, y = {}, m = {}",
                    ring.render(&x),
                    ring.render(&y),
                    vector::render(&m)
                )
            },
            lhs,
            rhs,
        );
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub word: String,
    pub leftmost: OpRingElement,
    pub rightmost: OpRingElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub verdict: bool,
    pub words_checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

/// Reduces every word with `3..=max_q` markers and basis-element segments
/// both leftmost-first and rightmost-first, and compares the results.
pub fn check_local_confluence(ring: &OpRing, max_q: usize) -> Result<ConfluenceReport> {
    let alg = ring.algebra();
    let d = alg.dim();
    let mut discrepancies = Vec::new();
    let mut words_checked = 0;
    for q in 3..=max_q {
        let mut index = vec![0usize; q + 1];
        loop {
            let segments = index.iter().map(|&i| alg.basis(i)).collect();
            let w = Word::new(ring.field().one(), segments)?;
            let (left, _) = ring.reduce_with(&w, Strategy::Leftmost)?;
            let (right, _) = ring.reduce_with(&w, Strategy::Rightmost)?;
            words_checked += 1;
            if left != right {
                discrepancies.push(Discrepancy {
                    word: ring.render_word(&w),
                    leftmost: left,
                    rightmost: right,
                });
            }
            if !advance(&mut index, d) {
                break;
            }
        }
    }
    Ok(ConfluenceReport {
        verdict: discrepancies.is_empty(),
        words_checked,
        discrepancies,
    })
}

/// Odometer increment; false once every index has wrapped.
pub(crate) fn advance(index: &mut [usize], base: usize) -> bool {
    for slot in index.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaInstance {
    pub r: String,
    pub q_times_r: OpRingElement,
    pub eta_of_p_r: OpRingElement,
    pub equality: NormalFormEquality,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaCompatibility {
    /// `"equal"` when every instance agrees as normal forms, otherwise
    /// `"inconclusive at normal-form level"`.
    pub verdict: String,
    pub instances: Vec<EtaInstance>,
}

impl EtaCompatibility {
    pub fn holds(&self) -> bool {
        self.instances
            .iter()
            .all(|i| i.equality == NormalFormEquality::Equal)
    }
}

/// Compares `Q·η(r)` with `η(P(r))` on basis elements.
pub fn eta_compatibility(ring: &OpRing) -> EtaCompatibility {
    let alg = ring.algebra();
    let instances: Vec<EtaInstance> = (0..alg.dim())
        .map(|i| {
            let r = alg.basis(i);
            let q_times_r = ring.multiply(&ring.q(), &ring.eta(&r));
            let eta_of_p_r = ring.eta(&alg.apply(&r));
            let equality = NormalFormEquality::of(&q_times_r, &eta_of_p_r);
            EtaInstance {
                r: alg.label(i).to_string(),
                q_times_r,
                eta_of_p_r,
                equality,
            }
        })
        .collect();
    let all_equal = instances
        .iter()
        .all(|i| i.equality == NormalFormEquality::Equal);
    let verdict = if all_equal {
        "equal"
    } else {
        "inconclusive at normal-form level"
    };
    EtaCompatibility {
        verdict: verdict.into(),
        instances,
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.segments.iter().map(|s| vector::render(s)).collect();
        write!(f, "{}·{}", self.coeff, body.join("·Q·"))
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::Algebra;

    fn q() -> Field {
        Field::Rational
    }

    fn e(lam: i64) -> OpRing {
        OpRing::new(Arc::new(AlgebraPresentation::example_e(&q().from_i64(lam))))
    }

    fn word(ring: &OpRing, segments: &[usize]) -> Word {
        let alg = ring.algebra();
        Word::new(q().one(), segments.iter().map(|&i| alg.basis(i)).collect()).unwrap()
    }

    /// Hand-expanded normal forms in `E(λ)`: `u₁Q u₀` etc.
    fn q_only(ring: &OpRing, entries: &[(usize, usize, i64)]) -> OpRingElement {
        let mut x = ring.zero();
        for &(i, j, c) in entries {
            x.q_part.set(i, j, q().from_i64(c));
        }
        x
    }

    #[test]
    fn words_without_q_are_normal() {
        let ring = e(2);
        let w = Word::new(q().one(), vec![vec![q().from_i64(3), q().from_i64(-1)]]).unwrap();
        let x = ring.reduce(&w).unwrap();
        assert_eq!(x.scalar_part, vec![q().from_i64(3), q().from_i64(-1)]);
        assert!(x.q_part.is_zero());
    }

    #[test]
    fn q_u1_q() {
        for lam in [0, 1, 2, -1, 3] {
            let ring = e(lam);
            // P(u₁)Q − QP(u₁) − λQu₁ with P(u₁) = −λu₁ collapses to −λ·u₁Qu₀.
            let got = ring.reduce(&word(&ring, &[0, 1, 0])).unwrap();
            assert_eq!(got, q_only(&ring, &[(1, 0, -lam)]), "λ = {lam}");
        }
    }

    #[test]
    fn q_q() {
        for lam in [0, 1, 2, -1] {
            let ring = e(lam);
            let got = ring.reduce(&word(&ring, &[0, 0, 0])).unwrap();
            assert_eq!(got, q_only(&ring, &[(1, 0, 1), (0, 1, -1), (0, 0, -lam)]));
        }
    }

    #[test]
    fn closed_form_examples() {
        let ring = e(2);
        let u = |i| ring.algebra().basis(i);
        let x = ring.rqs(&u(0), &u(1));
        let y = ring.rqs(&u(0), &u(0));
        assert_eq!(ring.multiply(&x, &y), q_only(&ring, &[(1, 0, -2)]));
        assert_eq!(
            ring.multiply(&y, &y),
            q_only(&ring, &[(1, 0, 1), (0, 1, -1), (0, 0, -2)])
        );
        assert_eq!(ring.multiply(&ring.one(), &x), x);
        assert_eq!(ring.multiply(&x, &ring.one()), x);
    }

    #[test]
    fn parse_word_tokens() {
        let ring = e(1);
        let tokens: Vec<Token> = serde_json::from_str(r#"["Q", "Q"]"#).unwrap();
        let w = ring.parse_word(&tokens).unwrap();
        assert_eq!(w.q_count(), 2);
        let tokens: Vec<Token> =
            serde_json::from_str(r#"[[0, 1], [0, 1], "Q", ["1/2", 0]]"#).unwrap();
        let w = ring.parse_word(&tokens).unwrap();
        assert_eq!(w.segments()[0], vec![q().zero(), q().from_i64(-1)]);
        assert_eq!(w.segments()[1], vec![q().ratio(1, 2), q().zero()]);
        let bad: Vec<Token> = serde_json::from_str(r#"["P"]"#).unwrap();
        assert!(ring.parse_word(&bad).is_err());
        let short: Vec<Token> = serde_json::from_str(r#"[[1]]"#).unwrap();
        assert!(ring.parse_word(&short).is_err());
    }

    #[test]
    fn action_of_q_is_the_operator() {
        let ring = e(1);
        let m = RbModule::regular(ring.algebra().clone(), Side::Left)
            .verify()
            .unwrap();
        for j in 0..2 {
            let v = m.basis(j);
            assert_eq!(ring.act(&ring.q(), &m, &v).unwrap(), m.apply(&v));
            assert_eq!(ring.act(&ring.one(), &m, &v).unwrap(), v);
        }
    }

    #[test]
    fn act_of_reduced_q_u1_q_on_u0() {
        for lam in [1, 2, -3] {
            let ring = e(lam);
            let m = RbModule::regular(ring.algebra().clone(), Side::Left)
                .verify()
                .unwrap();
            let w = word(&ring, &[0, 1, 0]);
            let expected = vec![q().zero(), q().from_i64(lam * lam)];
            assert_eq!(
                ring.act(&ring.reduce(&w).unwrap(), &m, &m.basis(0))
                    .unwrap(),
                expected
            );
            assert_eq!(ring.act_word(&w, &m, &m.basis(0)).unwrap(), expected);
        }
    }

    #[test]
    fn act_refuses_unverified_modules() {
        let ring = e(1);
        let m = RbModule::regular(ring.algebra().clone(), Side::Left);
        assert!(matches!(
            ring.act(&ring.q(), &m, &m.basis(0)),
            Err(Error::Unverified)
        ));
    }

    #[test]
    fn reduction_path_length_is_bounded() {
        let ring = e(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let w = ring.random_word(&mut rng, 6);
            let (_, stats) = ring.reduce_with(&w, Strategy::Leftmost).unwrap();
            assert!(stats.longest_path <= stats.initial_q_count.saturating_sub(1));
        }
    }

    #[test]
    fn consistency_checks_pass_on_example_e() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for lam in [0, 1, 2] {
            let ring = e(lam);
            let m = RbModule::regular(ring.algebra().clone(), Side::Left)
                .verify()
                .unwrap();
            assert!(check_action_consistency(&ring, &m, 40, 6, &mut rng)
                .unwrap()
                .passed());
            assert!(check_multiply_consistency(&ring, 40, &mut rng)
                .unwrap()
                .passed());
            assert!(check_associativity(&ring, 40, &mut rng).passed());
            assert!(check_ring_action(&ring, &m, 40, &mut rng).unwrap().passed());
        }
    }

    #[test]
    fn confluence() {
        let base = OpRing::new(Arc::new(AlgebraPresentation::zero_operator(
            Algebra::base_field(q()),
            &q().zero(),
        )));
        assert!(check_local_confluence(&base, 4).unwrap().verdict);
        let report = check_local_confluence(&e(1), 4).unwrap();
        assert_eq!(report.words_checked, 16 + 32);
        assert!(report.verdict);
    }

    #[test]
    fn eta_is_multiplicative_but_q_does_not_collapse() {
        let ring = e(2);
        let u = |i| ring.algebra().basis(i);
        let prod = ring.multiply(&ring.eta(&u(0)), &ring.eta(&u(1)));
        assert_eq!(prod, ring.eta(&ring.algebra().multiply(&u(0), &u(1))));
        let lam = q().from_i64(2);
        let scalar = OpRing::new(Arc::new(AlgebraPresentation::scalar_operator(
            Algebra::unitized_line(&lam),
            &lam,
        )));
        let report = eta_compatibility(&scalar);
        assert_eq!(report.verdict, "inconclusive at normal-form level");
        assert!(!report.holds());
    }

    #[test]
    fn op_ring_is_a_left_module() {
        for lam in [0, 1, 2] {
            assert_eq!(e(lam).left_module().unwrap().dim(), 6);
            assert_eq!(e(lam).right_module().unwrap().dim(), 6);
        }
    }
}
