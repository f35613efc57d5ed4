//! Piecewise trigonometric support functions on the circle.
//!
//! A support function `h(θ)` defines the family of lines `⟨x, ξ(θ)⟩ = h(θ)`
//! with `ξ(θ) = (cos θ, sin θ)`. Its envelope is the hedgehog; the point of
//! tangency with the line at `θ` is
//!
//! ```text
//! X(θ) = (h cos θ − h′ sin θ, h sin θ + h′ cos θ) = h ξ + h′ ξ⊥
//! ```
//!
//! Each piece is a finite trigonometric polynomial, so it is real analytic on
//! the whole circle and can be evaluated (extended) outside its own arc.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::Point;
use crate::tolerance::ToleranceConfig;

/// A unit direction `ξ = (cos θ, sin θ)` stored by its angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Direction {
    theta: f64,
}

impl Direction {
    pub fn new(theta: f64) -> Self {
        Self {
            theta: normalize_angle(theta),
        }
    }

    pub fn e1() -> Self {
        Self { theta: 0.0 }
    }

    pub fn e2() -> Self {
        Self { theta: PI / 2.0 }
    }

    pub fn from_vector(v: Point) -> Self {
        Self::new(v.y.atan2(v.x))
    }

    #[inline]
    pub fn theta(self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn unit(self) -> Point {
        let (s, c) = self.theta.sin_cos();
        Point::new(c, s)
    }

    /// `ξ⊥ = dξ/dθ = (−sin θ, cos θ)`.
    #[inline]
    pub fn perp(self) -> Point {
        let (s, c) = self.theta.sin_cos();
        Point::new(-s, c)
    }

    pub fn opposite(self) -> Self {
        Self::new(self.theta + PI)
    }

    pub fn rotated(self, by: f64) -> Self {
        Self::new(self.theta + by)
    }

    /// Shortest angular distance on the circle.
    pub fn angular_distance(self, other: Direction) -> f64 {
        let d = (self.theta - other.theta).abs();
        d.min(TAU - d)
    }
}

/// Maps any finite angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// `a₀ + Σₖ (aₖ cos kθ + bₖ sin kθ)`, k = 1..=N.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TrigPolynomial {
    constant: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigPolynomial {
    /// Coefficient lists of unequal length are zero-padded to the longer one.
    pub fn new(constant: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        let mut p = Self { constant, cos, sin };
        let n = p.cos.len().max(p.sin.len());
        p.cos.resize(n, 0.0);
        p.sin.resize(n, 0.0);
        p
    }

    pub fn constant(c: f64) -> Self {
        Self::new(c, Vec::new(), Vec::new())
    }

    /// `c₁ cos θ + c₂ sin θ`: every line of this family passes through `(c₁, c₂)`.
    pub fn first_harmonic(c1: f64, c2: f64) -> Self {
        Self::new(0.0, vec![c1], vec![c2])
    }

    /// `amplitude · sin(kθ)`.
    pub fn sine(k: usize, amplitude: f64) -> Self {
        assert!(k >= 1, "harmonic index starts at 1");
        let mut sin = vec![0.0; k];
        sin[k - 1] = amplitude;
        Self::new(0.0, Vec::new(), sin)
    }

    /// `amplitude · cos(kθ)`.
    pub fn cosine(k: usize, amplitude: f64) -> Self {
        assert!(k >= 1, "harmonic index starts at 1");
        let mut cos = vec![0.0; k];
        cos[k - 1] = amplitude;
        Self::new(0.0, cos, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    pub fn const_term(&self) -> f64 {
        self.constant
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.constant;
        for (i, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let (s, c) = ((i + 1) as f64 * theta).sin_cos();
            acc += a * c + b * s;
        }
        acc
    }

    /// Term-by-term derivative; same degree, zero constant term.
    pub fn derivative(&self) -> Self {
        let mut cos = Vec::with_capacity(self.degree());
        let mut sin = Vec::with_capacity(self.degree());
        for (i, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = (i + 1) as f64;
            cos.push(k * b);
            sin.push(-k * a);
        }
        Self {
            constant: 0.0,
            cos,
            sin,
        }
    }

    /// Value of the `order`-th derivative at `theta`.
    pub fn eval_derivative(&self, theta: f64, order: u32) -> f64 {
        if order == 0 {
            return self.eval(theta);
        }
        let mut acc = 0.0;
        for (i, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = (i + 1) as f64;
            let (s, c) = (k * theta).sin_cos();
            let scale = k.powi(order as i32);
            // d/dθ cycles (cos, sin) → (−sin, cos) → (−cos, −sin) → (sin, −cos)
            let (dc, ds) = match order % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            acc += scale * (a * dc + b * ds);
        }
        acc
    }

    fn harmonics(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(|(i, (a, b))| (i + 1, *a, *b))
    }

    pub fn is_first_harmonic(&self, tol: f64) -> bool {
        self.constant.abs() <= tol
            && self
                .harmonics()
                .all(|(k, a, b)| k == 1 || (a.abs() <= tol && b.abs() <= tol))
    }

    /// `p(θ + π) = p(θ)` holds exactly when every odd harmonic vanishes.
    pub fn odd_harmonics_vanish(&self, tol: f64) -> bool {
        self.harmonics()
            .all(|(k, a, b)| k % 2 == 0 || (a.abs() <= tol && b.abs() <= tol))
    }

    fn coeff_mut(&mut self, k: usize) -> (&mut f64, &mut f64) {
        if k > self.degree() {
            self.cos.resize(k, 0.0);
            self.sin.resize(k, 0.0);
        }
        (&mut self.cos[k - 1], &mut self.sin[k - 1])
    }

    /// Adds `a cos(kθ) + b sin(kθ)` for any integer `k`.
    fn add_term(&mut self, k: i64, a: f64, b: f64) {
        match k {
            0 => self.constant += a,
            k if k > 0 => {
                let (ca, cb) = self.coeff_mut(k as usize);
                *ca += a;
                *cb += b;
            }
            k => {
                let (ca, cb) = self.coeff_mut((-k) as usize);
                *ca += a;
                *cb -= b;
            }
        }
    }
}

impl Add for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn add(self, rhs: &TrigPolynomial) -> TrigPolynomial {
        let mut out = self.clone();
        out.constant += rhs.constant;
        for (k, a, b) in rhs.harmonics() {
            out.add_term(k as i64, a, b);
        }
        out
    }
}

impl Neg for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn neg(self) -> TrigPolynomial {
        self * -1.0
    }
}

impl Sub for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn sub(self, rhs: &TrigPolynomial) -> TrigPolynomial {
        self + &(-rhs)
    }
}

impl Mul<f64> for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn mul(self, s: f64) -> TrigPolynomial {
        TrigPolynomial {
            constant: self.constant * s,
            cos: self.cos.iter().map(|c| c * s).collect(),
            sin: self.sin.iter().map(|c| c * s).collect(),
        }
    }
}

impl Mul for &TrigPolynomial {
    type Output = TrigPolynomial;

    /// Product via the product-to-sum identities.
    fn mul(self, rhs: &TrigPolynomial) -> TrigPolynomial {
        let terms = |p: &TrigPolynomial| {
            std::iter::once((0_i64, p.constant, 0.0))
                .chain(p.harmonics().map(|(k, a, b)| (k as i64, a, b)))
                .collect::<Vec<_>>()
        };
        let (lhs_terms, rhs_terms) = (terms(self), terms(rhs));
        let mut out = TrigPolynomial::default();
        for &(j, a1, b1) in &lhs_terms {
            for &(k, a2, b2) in &rhs_terms {
                // cos·cos, sin·sin, sin·cos and cos·sin
                out.add_term(j - k, 0.5 * (a1 * a2 + b1 * b2), 0.5 * (b1 * a2 - a1 * b2));
                out.add_term(j + k, 0.5 * (a1 * a2 - b1 * b2), 0.5 * (b1 * a2 + a1 * b2));
            }
        }
        out
    }
}

/// One analytic piece of a support function, active on `[start, end)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub poly: TrigPolynomial,
}

/// A junction between consecutive pieces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Breakpoint {
    pub direction: Direction,
    /// Whether the one-sided derivatives agree within tolerance.
    pub smooth: bool,
}

/// The line `⟨x, ξ⟩ = offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportingLine {
    pub direction: Direction,
    pub offset: f64,
}

impl SupportingLine {
    pub fn new(direction: Direction, offset: f64) -> Self {
        Self { direction, offset }
    }

    /// `⟨x, ξ⟩ − offset`.
    pub fn residual(&self, x: Point) -> f64 {
        x.dot(self.direction.unit()) - self.offset
    }

    pub fn contains(&self, x: Point, tol: f64) -> bool {
        self.residual(x).abs() <= tol
    }

    /// The point `offset·ξ + t·ξ⊥`.
    pub fn point_at(&self, t: f64) -> Point {
        self.direction.unit() * self.offset + self.direction.perp() * t
    }

    /// Coordinate of `x` along the line, measured in the `ξ⊥` direction.
    pub fn coordinate(&self, x: Point) -> f64 {
        x.dot(self.direction.perp())
    }
}

/// A continuous, piecewise trigonometric support function.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportFunction {
    pieces: Vec<Piece>,
    breakpoints: Vec<Breakpoint>,
    tol: ToleranceConfig,
}

impl SupportFunction {
    /// A single analytic piece covering the whole circle.
    pub fn analytic(poly: TrigPolynomial) -> Self {
        Self {
            pieces: vec![Piece {
                start: 0.0,
                end: TAU,
                poly,
            }],
            breakpoints: Vec::new(),
            tol: ToleranceConfig::default(),
        }
    }

    /// `h ≡ t`, the disk of radius `t` about the origin.
    pub fn disk(radius: f64) -> Self {
        Self::analytic(TrigPolynomial::constant(radius))
    }

    /// Builds from contiguous arcs `[start, end)` whose total length is `2π`.
    ///
    /// The first arc may start anywhere; lookup is relative to it. Values must
    /// agree across every junction (including the wrap-around) within
    /// `tol.geometric`; derivative agreement is recorded per breakpoint.
    pub fn piecewise(pieces: Vec<Piece>, tol: ToleranceConfig) -> Result<Self> {
        let invalid = |msg: String| GeomError::InvalidSupportFunction(msg);
        if pieces.is_empty() {
            return Err(invalid("no pieces".into()));
        }
        if !tol.is_valid() {
            return Err(invalid("tolerances must be positive".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            if !(p.start.is_finite() && p.end.is_finite() && p.end > p.start) {
                return Err(invalid(format!("piece {i} has an empty or invalid arc")));
            }
        }
        for (i, w) in pieces.windows(2).enumerate() {
            if (w[1].start - w[0].end).abs() > 1e-12 {
                return Err(invalid(format!("gap or overlap between pieces {i} and {}", i + 1)));
            }
        }
        let span = pieces.last().unwrap().end - pieces[0].start;
        if (span - TAU).abs() > tol.geometric {
            return Err(invalid(format!("arcs cover {span} radians, not 2π")));
        }

        let mut breakpoints = Vec::new();
        if pieces.len() > 1 {
            let n = pieces.len();
            for i in 0..n {
                let prev = &pieces[(i + n - 1) % n];
                let next = &pieces[i];
                let at = next.start;
                let left = prev.poly.eval(at);
                let right = next.poly.eval(at);
                if (left - right).abs() > tol.geometric {
                    return Err(invalid(format!(
                        "value jump {:e} at θ = {at}",
                        (left - right).abs()
                    )));
                }
                let dl = prev.poly.eval_derivative(at, 1);
                let dr = next.poly.eval_derivative(at, 1);
                breakpoints.push(Breakpoint {
                    direction: Direction::new(at),
                    smooth: (dl - dr).abs() <= tol.geometric,
                });
            }
        }

        Ok(Self {
            pieces,
            breakpoints,
            tol,
        })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn tolerances(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn is_single_piece(&self) -> bool {
        self.pieces.len() == 1
    }

    /// Index of the piece whose half-open arc contains `d`.
    pub fn piece_index(&self, d: Direction) -> usize {
        if self.pieces.len() == 1 {
            return 0;
        }
        let origin = self.pieces[0].start;
        let t = origin + (d.theta() - origin).rem_euclid(TAU);
        let idx = self.pieces.partition_point(|p| p.start <= t);
        idx.saturating_sub(1)
    }

    /// Evaluates the analytic extension of piece `index` at any direction.
    pub fn extend_piece(&self, index: usize, d: Direction) -> f64 {
        self.pieces[index].poly.eval(d.theta())
    }

    pub fn evaluate(&self, d: Direction) -> f64 {
        self.pieces[self.piece_index(d)].poly.eval(d.theta())
    }

    /// The non-smooth breakpoint within tolerance of `d`, if any.
    pub fn nearby_kink(&self, d: Direction) -> Option<&Breakpoint> {
        self.breakpoints
            .iter()
            .find(|b| !b.smooth && b.direction.angular_distance(d) <= self.tol.geometric)
    }

    /// `order`-th derivative in `θ` of the active piece.
    pub fn nth_derivative(&self, d: Direction, order: u32) -> Result<f64> {
        if order > 0 && self.nearby_kink(d).is_some() {
            return Err(GeomError::NonDifferentiableAt { theta: d.theta() });
        }
        Ok(self.pieces[self.piece_index(d)]
            .poly
            .eval_derivative(d.theta(), order))
    }

    pub fn derivative(&self, d: Direction) -> Result<f64> {
        self.nth_derivative(d, 1)
    }

    /// The point of tangency `h ξ + h′ ξ⊥`.
    pub fn support_point(&self, d: Direction) -> Result<Point> {
        let h = self.evaluate(d);
        let dh = self.derivative(d)?;
        let (s, c) = d.theta().sin_cos();
        Ok(Point::new(h * c - dh * s, h * s + dh * c))
    }

    /// `(F, ∂F/∂θ)` for `F(θ, x) = ⟨x, ξ(θ)⟩ − h(θ)`.
    pub fn envelope_residual(&self, d: Direction, x: Point) -> Result<(f64, f64)> {
        let dh = self.derivative(d)?;
        let f = x.dot(d.unit()) - self.evaluate(d);
        let df = x.dot(d.perp()) - dh;
        Ok((f, df))
    }

    pub fn supporting_line(&self, d: Direction) -> SupportingLine {
        SupportingLine::new(d, self.evaluate(d))
    }

    /// A point hedgehog: `h = c₁ cos θ + c₂ sin θ` globally.
    pub fn is_trivial(&self) -> bool {
        let tol = 1e-12;
        let first = &self.pieces[0].poly;
        if !first.is_first_harmonic(tol) {
            return false;
        }
        let (c1, c2) = (
            first.cos_coeffs().first().copied().unwrap_or(0.0),
            first.sin_coeffs().first().copied().unwrap_or(0.0),
        );
        self.pieces.iter().all(|p| {
            p.poly.is_first_harmonic(tol)
                && (p.poly.cos_coeffs().first().copied().unwrap_or(0.0) - c1).abs() <= tol
                && (p.poly.sin_coeffs().first().copied().unwrap_or(0.0) - c2).abs() <= tol
        })
    }

    /// The single point every supporting line passes through, for a trivial hedgehog.
    pub fn trivial_point(&self) -> Option<Point> {
        self.is_trivial().then(|| {
            let p = &self.pieces[0].poly;
            Point::new(
                p.cos_coeffs().first().copied().unwrap_or(0.0),
                p.sin_coeffs().first().copied().unwrap_or(0.0),
            )
        })
    }

    /// `h(θ) = h(θ + π)` for all `θ`.
    ///
    /// Exact on coefficients for a single piece, otherwise sampled on a
    /// 4096-point grid with tolerance 1e−9.
    pub fn is_centrally_symmetric(&self) -> bool {
        if self.is_single_piece() {
            return self.pieces[0].poly.odd_harmonics_vanish(1e-12);
        }
        const GRID: usize = 4096;
        (0..GRID).all(|k| {
            let d = Direction::new(TAU * k as f64 / GRID as f64);
            (self.evaluate(d) - self.evaluate(d.opposite())).abs() <= 1e-9
        })
    }

    /// Breakpoint directions that are not C¹.
    pub fn kinks(&self) -> impl Iterator<Item = Direction> + '_ {
        self.breakpoints
            .iter()
            .filter(|b| !b.smooth)
            .map(|b| b.direction)
    }
}

#[derive(Serialize, Deserialize)]
struct PieceRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arc: Option<[f64; 2]>,
    #[serde(rename = "const", default)]
    constant: f64,
    #[serde(default)]
    cos: Vec<f64>,
    #[serde(default)]
    sin: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SupportFunctionRepr {
    pieces: Vec<PieceRepr>,
}

impl TryFrom<SupportFunctionRepr> for SupportFunction {
    type Error = GeomError;

    fn try_from(repr: SupportFunctionRepr) -> Result<Self> {
        let single = repr.pieces.len() == 1;
        let mut pieces = Vec::with_capacity(repr.pieces.len());
        for (i, p) in repr.pieces.into_iter().enumerate() {
            let [start, end] = match p.arc {
                Some(arc) => arc,
                None if single => [0.0, TAU],
                None => {
                    return Err(GeomError::InvalidSupportFunction(format!(
                        "piece {i} needs an arc"
                    )))
                }
            };
            pieces.push(Piece {
                start,
                end,
                poly: TrigPolynomial::new(p.constant, p.cos, p.sin),
            });
        }
        Self::piecewise(pieces, ToleranceConfig::default())
    }
}

impl From<&SupportFunction> for SupportFunctionRepr {
    fn from(h: &SupportFunction) -> Self {
        let single = h.is_single_piece();
        SupportFunctionRepr {
            pieces: h
                .pieces
                .iter()
                .map(|p| PieceRepr {
                    arc: (!single).then_some([p.start, p.end]),
                    constant: p.poly.constant,
                    cos: p.poly.cos.clone(),
                    sin: p.poly.sin.clone(),
                })
                .collect(),
        }
    }
}

impl Serialize for SupportFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SupportFunctionRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SupportFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SupportFunctionRepr::deserialize(d)?;
        SupportFunction::try_from(repr).map_err(serde::de::Error::custom)
    }
}
