//! The normal bundle `E_{k,n}`, the skew-operator bundle over `G(2,8)`,
//! their canonical metric connections, covariant derivatives along curves
//! and parallel transport.
//!
//! Both bundles share the same shape: a fiber value attached to a point of
//! the Grassmannian, a linear fiber projection, and the covariant
//! derivative "ambient derivative followed by fiber projection". The
//! [`Fiber`] trait captures exactly that and lets the downstream covariant
//! calculus treat the vector and skew-operator cases uniformly.

use nalgebra::{DMatrix, DVector};

use crate::grassmann::OrientedSubspace;
use crate::{Error, Result};

/// Residual below which a fiber constraint counts as satisfied.
pub const FIBER_TOL: f64 = 1e-10;

/// Values that support the linear combinations needed by numerical
/// differentiation.
pub trait LinComb: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, c: f64) -> Self;
    fn norm(&self) -> f64;
}

impl LinComb for DVector<f64> {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
    fn norm(&self) -> f64 {
        nalgebra::Matrix::norm(self)
    }
}

impl LinComb for DMatrix<f64> {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
    fn norm(&self) -> f64 {
        nalgebra::Matrix::norm(self)
    }
}

/// A fiber value of one of the two canonical bundles: knows its inner
/// product, its projection onto the fiber over a point, and how the
/// second-derivative jet of a surface combines into a covariant second
/// derivative.
pub trait Fiber: LinComb {
    /// Orthogonal projection onto the fiber over `p`.
    fn project_at(&self, p: &OrientedSubspace) -> Self;

    /// The fiber inner product.
    fn inner(&self, other: &Self) -> f64;

    fn fiber_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Distance from satisfying the fiber constraint over `p`.
    fn constraint_residual(&self, p: &OrientedSubspace) -> f64;

    /// Combines the first/second ambient derivatives `s1`, `s2` of a
    /// fiber curve over a surface with the projector `pi0` and its
    /// derivative `pi0p` into the covariant mixed second derivative at
    /// the surface origin.
    fn second_jet(pi0: &DMatrix<f64>, pi0p: &DMatrix<f64>, s1: &Self, s2: &Self) -> Self;
}

/// Normal-vector fiber: `v` orthogonal to the subspace; the inner product
/// is the ambient Euclidean one.
impl Fiber for DVector<f64> {
    fn project_at(&self, p: &OrientedSubspace) -> Self {
        // pi_P v = v - F (F^t v), cheaper than forming the projector.
        self - p.frame() * (p.frame().transpose() * self)
    }

    fn inner(&self, other: &Self) -> f64 {
        self.dot(other)
    }

    fn constraint_residual(&self, p: &OrientedSubspace) -> f64 {
        (p.frame().transpose() * self).abs().max()
    }

    fn second_jet(pi0: &DMatrix<f64>, pi0p: &DMatrix<f64>, s1: &Self, s2: &Self) -> Self {
        pi0 * (pi0p * s1 + s2)
    }
}

/// A skew-symmetric operator fiber value, with the inner product
/// `<S,T> = tr(S^t T) / 6` fixed by the unit norm of orthogonal complex
/// structures on six dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewOp(pub DMatrix<f64>);

impl SkewOp {
    /// Wraps a matrix, rejecting non-skew input.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        let res = (&m + m.transpose()).abs().max();
        if res > 1e-10 {
            return Err(Error::NotSkew(res));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Applies the operator to a vector.
    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.0 * v
    }
}

impl LinComb for SkewOp {
    fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }
    fn scale(&self, c: f64) -> Self {
        Self(&self.0 * c)
    }
    fn norm(&self) -> f64 {
        self.fiber_norm()
    }
}

impl Fiber for SkewOp {
    fn project_at(&self, p: &OrientedSubspace) -> Self {
        let pi = p.projector_perp();
        Self(&pi * &self.0 * &pi)
    }

    fn inner(&self, other: &Self) -> f64 {
        (self.0.transpose() * &other.0).trace() / 6.0
    }

    fn constraint_residual(&self, p: &OrientedSubspace) -> f64 {
        (&self.0 * p.frame()).abs().max()
    }

    fn second_jet(pi0: &DMatrix<f64>, pi0p: &DMatrix<f64>, s1: &Self, s2: &Self) -> Self {
        Self(pi0 * (pi0p * &s1.0 + &s2.0 + &s1.0 * pi0p) * pi0)
    }
}

/// An element of the normal bundle `E_{k,n}`: a point together with an
/// ambient vector orthogonal to it.
#[derive(Debug, Clone)]
pub struct NormalElement {
    pub base: OrientedSubspace,
    pub vec: DVector<f64>,
}

impl NormalElement {
    pub fn new(base: OrientedSubspace, vec: DVector<f64>) -> Result<Self> {
        let res = vec.constraint_residual(&base);
        if res > FIBER_TOL {
            return Err(Error::FiberConstraint(res));
        }
        Ok(Self { base, vec })
    }

    /// Membership in the sphere subbundle.
    pub fn is_unit(&self) -> bool {
        (self.vec.norm() - 1.0).abs() <= FIBER_TOL
    }
}

/// An element of the skew-operator bundle over `G(2,8)` (or its `G(1,7)`
/// analogue): a point together with a skew operator vanishing on it.
#[derive(Debug, Clone)]
pub struct SkewElement {
    pub base: OrientedSubspace,
    pub op: SkewOp,
}

impl SkewElement {
    pub fn new(base: OrientedSubspace, op: SkewOp) -> Result<Self> {
        let res = op.constraint_residual(&base);
        if res > FIBER_TOL {
            return Err(Error::FiberConstraint(res));
        }
        // Vanishing on P plus skewness forces invariance of P-perp;
        // asserted anyway.
        debug_assert!(
            (base.frame().transpose() * op.matrix() * base.projector_perp())
                .abs()
                .max()
                < 1e-9
        );
        Ok(Self { base, op })
    }

    pub fn is_unit(&self) -> bool {
        (self.op.fiber_norm() - 1.0).abs() <= FIBER_TOL
    }
}

/// Projects an ambient vector into the fiber over `p`.
pub fn fiber_project_normal(p: &OrientedSubspace, x: &DVector<f64>) -> NormalElement {
    NormalElement {
        vec: x.project_at(p),
        base: p.clone(),
    }
}

/// Projects a skew operator into the fiber over `p`:
/// `Pi_P(T) = pi_P T pi_P`, the orthogonal projection of the skew
/// operators onto those vanishing on `p`.
pub fn fiber_project_skew(p: &OrientedSubspace, t: &DMatrix<f64>) -> Result<SkewElement> {
    let op = SkewOp::new(t.clone())?;
    Ok(SkewElement {
        op: op.project_at(p),
        base: p.clone(),
    })
}

/// A curve in one of the bundles: a base curve in the Grassmannian plus a
/// fiber curve satisfying the fiber constraint at every parameter.
pub struct FiberPath<'a, F: Fiber> {
    pub base: Box<dyn Fn(f64) -> OrientedSubspace + 'a>,
    pub fiber: Box<dyn Fn(f64) -> F + 'a>,
}

impl<'a, F: Fiber> FiberPath<'a, F> {
    pub fn new(
        base: impl Fn(f64) -> OrientedSubspace + 'a,
        fiber: impl Fn(f64) -> F + 'a,
    ) -> Self {
        Self {
            base: Box::new(base),
            fiber: Box::new(fiber),
        }
    }

    /// Largest constraint violation over sampled parameters.
    pub fn constraint_residual(&self, ts: impl IntoIterator<Item = f64>) -> f64 {
        ts.into_iter()
            .map(|t| (self.fiber)(t).constraint_residual(&(self.base)(t)))
            .fold(0.0, f64::max)
    }
}

/// Central-difference first derivative with two-level Richardson
/// extrapolation. Accepts when consecutive extrapolants differ by less
/// than `tol`.
pub fn richardson_derivative<V: LinComb>(f: impl Fn(f64) -> V, h: f64, tol: f64) -> Result<V> {
    let central = |hh: f64| f(hh).sub(&f(-hh)).scale(0.5 / hh);
    let d1 = central(h);
    let d2 = central(h / 2.0);
    let d3 = central(h / 4.0);
    let r1 = d2.scale(4.0 / 3.0).sub(&d1.scale(1.0 / 3.0));
    let r2 = d3.scale(4.0 / 3.0).sub(&d2.scale(1.0 / 3.0));
    let err = r2.sub(&r1).norm();
    if err > tol {
        return Err(Error::DifferentiationFailed { err, tol });
    }
    Ok(r2)
}

/// Covariant derivative of a fiber path at `t`:
/// `D/dt (Q_t, x_t) = (Q_t, pi_t(x_t'))` with the ambient derivative
/// computed by Richardson-extrapolated central differences.
pub fn covariant_derivative<F: Fiber>(
    path: &FiberPath<F>,
    t: f64,
    step: f64,
    tol: f64,
) -> Result<(OrientedSubspace, F)> {
    let raw = richardson_derivative(|dt| (path.fiber)(t + dt), step, tol)?;
    let base = (path.base)(t);
    let value = raw.project_at(&base);
    Ok((base, value))
}

/// Covariant derivative in the normal bundle, packaged as an element.
pub fn covariant_derivative_normal(
    path: &FiberPath<DVector<f64>>,
    t: f64,
    step: f64,
    tol: f64,
) -> Result<NormalElement> {
    let (base, vec) = covariant_derivative(path, t, step, tol)?;
    Ok(NormalElement { base, vec })
}

/// Covariant derivative in the skew bundle, packaged as an element.
pub fn covariant_derivative_skew(
    path: &FiberPath<SkewOp>,
    t: f64,
    step: f64,
    tol: f64,
) -> Result<SkewElement> {
    let (base, op) = covariant_derivative(path, t, step, tol)?;
    Ok(SkewElement { base, op })
}

/// Options for the projected transport integrator.
#[derive(Debug, Clone)]
pub struct TransportOptions {
    /// Initial integrator step.
    pub step: f64,
    /// Bound on the per-step pre-renormalization norm drift; the step is
    /// halved until it is met.
    pub drift_tol: f64,
    /// Maximum number of halvings before giving up.
    pub max_halvings: u32,
}

impl Default for TransportOptions {
    fn default() -> Self {
        Self {
            step: 1e-3,
            drift_tol: 1e-9,
            max_halvings: 6,
        }
    }
}

/// Parallel transport in the normal bundle along a base curve: solves
/// `pi_t(x') = 0` by an explicit midpoint rule on `x' = pi'(t) x` with
/// per-step fiber projection and norm renormalization.
pub fn parallel_transport_normal(
    curve: impl Fn(f64) -> OrientedSubspace,
    x0: &DVector<f64>,
    t_end: f64,
    opts: &TransportOptions,
) -> Result<NormalElement> {
    let start = curve(0.0);
    let res = x0.constraint_residual(&start);
    if res > FIBER_TOL {
        return Err(Error::FiberConstraint(res));
    }
    let norm0 = x0.norm();
    let mut step = opts.step;
    for _ in 0..=opts.max_halvings {
        let (x, drift) = transport_once(&curve, x0, t_end, step, norm0);
        if drift <= opts.drift_tol {
            let base = curve(t_end);
            let vec = x.project_at(&base);
            let vec = &vec * (norm0 / vec.norm());
            return Ok(NormalElement { base, vec });
        }
        step /= 2.0;
    }
    Err(Error::TransportFailed(format!(
        "norm drift above {:.1e} after {} halvings",
        opts.drift_tol, opts.max_halvings
    )))
}

fn transport_once(
    curve: &impl Fn(f64) -> OrientedSubspace,
    x0: &DVector<f64>,
    t_end: f64,
    step: f64,
    norm0: f64,
) -> (DVector<f64>, f64) {
    let projector = |t: f64| curve(t).projector_perp();
    // pi'(t) by central differences; the base curves are analytic.
    let dpi = |t: f64| {
        let d = 1e-5;
        (projector(t + d) - projector(t - d)) / (2.0 * d)
    };
    let n_steps = ((t_end.abs() / step).ceil() as usize).max(1);
    let h = t_end / n_steps as f64;
    let mut x = x0.clone();
    let mut t = 0.0;
    let mut max_drift: f64 = 0.0;
    for _ in 0..n_steps {
        let k1 = dpi(t) * &x;
        let mid = &x + &k1 * (h / 2.0);
        let k2 = dpi(t + h / 2.0) * mid;
        let mut next = &x + k2 * h;
        // Project to the fiber over the new point, then renormalize.
        let q = curve(t + h);
        next = next.project_at(&q);
        let drift = (next.norm() - norm0).abs();
        max_drift = max_drift.max(drift);
        next *= norm0 / next.norm();
        x = next;
        t += h;
    }
    (x, max_drift)
}

/// The totally geodesic embedding `phi : G(2,7) -> G(3,8)`,
/// `phi(u ^ v) = e0 ^ u ^ v`, with `R^7` included as the last seven
/// coordinates of `R^8`.
pub fn phi(p: &OrientedSubspace) -> Result<OrientedSubspace> {
    if p.n() != 7 || p.k() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "phi expects a point of G(2,7), got G({},{})",
            p.k(),
            p.n()
        )));
    }
    let mut frame = DMatrix::zeros(8, 3);
    frame[(0, 0)] = 1.0;
    for c in 0..2 {
        for r in 0..7 {
            frame[(r + 1, c + 1)] = p.frame()[(r, c)];
        }
    }
    OrientedSubspace::new(frame)
}

/// Embeds a vector of `R^7` into `R^8` as the last seven coordinates.
pub fn embed_vector(v: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(8);
    for i in 0..7 {
        out[i + 1] = v[i];
    }
    out
}

/// The bundle morphism `Phi : E_{2,7} -> E_{3,8}` covering [`phi`]:
/// the base maps by `phi`, the fiber vector is re-indexed into `R^8`.
/// Preserves fiber inner products.
pub fn bundle_morphism_phi(e: &NormalElement) -> Result<NormalElement> {
    let base = phi(&e.base)?;
    NormalElement::new(base, embed_vector(&e.vec))
}
