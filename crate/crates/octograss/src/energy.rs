//! Total bending and Sasaki energy estimation by Monte Carlo over the
//! Grassmannian, first-variation criticality tests against random
//! admissible variations, and the parallel-transport obstruction.
//!
//! All reported quantities are densities (per unit volume); absolute
//! Grassmannian volumes never enter. For a section of a sphere bundle the
//! Sasaki energy density at a point is `(dim M + |nabla sigma|^2) / 2`:
//! the horizontal contribution of each base direction is 1 and the
//! vertical one is the squared covariant derivative.

use std::sync::Arc;

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundles::{
    covariant_derivative_normal, parallel_transport_normal, Fiber, FiberPath, SkewOp,
    TransportOptions,
};
use crate::diffops::{nabla, DiffCfg};
use crate::grassmann::{
    exp_action, random_matrix, random_point, tangent_basis, OrientedSubspace,
};
use crate::sections::Section;
use crate::{Error, Result};

/// Monte Carlo summary of the bending/energy densities of a section.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EnergyEstimate {
    pub section: String,
    pub samples: usize,
    /// Mean over sampled points of `sum_a |nabla_{e_a} sigma|^2`.
    pub mean_bending: f64,
    /// Sample standard deviation of the bending density.
    pub std_dev: f64,
    /// `(dim M + mean_bending) / 2`.
    pub energy_density: f64,
    pub seed: u64,
}

/// Pointwise bending density `sum_a |nabla_{e_a} sigma|^2` over an
/// orthonormal tangent basis at `p`.
pub fn bending_density<F: Fiber>(
    sec: &Section<F>,
    p: &OrientedSubspace,
    cfg: &DiffCfg,
) -> Result<f64> {
    let mut total = 0.0;
    for dir in tangent_basis(p) {
        let g = nabla(sec, p, &dir, cfg)?;
        total += g.inner(&g);
    }
    Ok(total)
}

/// Monte Carlo estimate of the bending and energy densities over
/// Haar-random points.
pub fn estimate_energy<F: Fiber>(
    sec: &Section<F>,
    samples: usize,
    seed: u64,
    cfg: &DiffCfg,
) -> Result<EnergyEstimate> {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(samples);
    for _ in 0..samples {
        let p = random_point(sec.n(), sec.k(), &mut rng);
        values.push(bending_density(sec, &p, cfg)?);
    }
    let mean = values.iter().sum::<f64>() / samples as f64;
    let var = if samples > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (samples as f64 - 1.0)
    } else {
        0.0
    };
    Ok(EnergyEstimate {
        section: sec.name().to_string(),
        samples,
        mean_bending: mean,
        std_dev: var.sqrt(),
        energy_density: (sec.dim_base() as f64 + mean) / 2.0,
        seed,
    })
}

/// A variation field: at each point a vector tangent to the fiber sphere
/// at the section value (in the fiber and orthogonal to the value).
#[derive(Clone)]
pub struct Variation<F: Fiber + 'static> {
    pub field: Arc<dyn Fn(&OrientedSubspace) -> F + Send + Sync>,
}

impl<F: Fiber + 'static> Variation<F> {
    /// Builds an admissible variation of `sec` from a raw smooth field:
    /// the raw value is projected to the fiber and orthogonalized against
    /// the section value.
    pub fn admissible(
        sec: &Section<F>,
        raw: impl Fn(&OrientedSubspace) -> F + Send + Sync + 'static,
    ) -> Self {
        let sec = sec.clone();
        Self {
            field: Arc::new(move |p| {
                let v = raw(p).project_at(p);
                let s = sec.value(p);
                v.sub(&s.scale(v.inner(&s) / s.inner(&s)))
            }),
        }
    }

    pub fn at(&self, p: &OrientedSubspace) -> F {
        (self.field)(p)
    }
}

/// Random admissible variation of a normal-vector section. The raw field
/// is a low-order polynomial in the frame entries through the (frame
/// invariant) subspace projector `Q = F F^t`:
/// `a0 + A1 Q a1 + A2 Q A3 Q a2`.
pub fn random_variation_normal(
    sec: &Section<DVector<f64>>,
    rng: &mut ChaCha8Rng,
) -> Variation<DVector<f64>> {
    let n = sec.n();
    let a0 = random_vec(n, rng);
    let a1 = random_vec(n, rng);
    let a2 = random_vec(n, rng);
    let m1 = random_matrix(n, n, rng);
    let m2 = random_matrix(n, n, rng);
    let m3 = random_matrix(n, n, rng);
    Variation::admissible(sec, move |p| {
        let q = p.projector_onto();
        &a0 + &m1 * (&q * &a1) + &m2 * (&q * (&m3 * (&q * &a2)))
    })
}

/// Random admissible variation of a skew-operator section, polynomial in
/// the subspace projector and skew-symmetrized.
pub fn random_variation_skew(sec: &Section<SkewOp>, rng: &mut ChaCha8Rng) -> Variation<SkewOp> {
    let n = sec.n();
    let k0 = random_matrix(n, n, rng);
    let k1 = random_matrix(n, n, rng);
    let k2 = random_matrix(n, n, rng);
    let k3 = random_matrix(n, n, rng);
    Variation::admissible(sec, move |p| {
        let q = p.projector_onto();
        let raw = &k0 + &q * &k1 * &q + &k2 * &q * &k3;
        SkewOp((&raw - raw.transpose()) * 0.5)
    })
}

fn random_vec(n: usize, rng: &mut impl Rng) -> DVector<f64> {
    use rand_distr::{Distribution, StandardNormal};
    DVector::from_fn(n, |_, _| Distribution::<f64>::sample(&StandardNormal, rng))
}

/// First-variation estimate of the energy at `t = 0` along a variation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FirstVariation {
    /// Central-difference estimate of `dE/dt(0)` (density units).
    pub estimate: f64,
    /// Monte Carlo standard error of the estimate.
    pub std_error: f64,
    pub samples: usize,
    /// `|estimate| / std_error`.
    pub z_score: f64,
}

impl FirstVariation {
    /// True when the Monte Carlo noise exceeds the estimate itself, so
    /// the sign of the derivative cannot be concluded. For a critical
    /// section this is the expected verdict.
    pub fn inconclusive(&self) -> bool {
        self.std_error >= self.estimate.abs()
    }
}

/// Estimates `dE/dt at t = 0` for the family
/// `sigma_t = normalize(sigma + t W)` by central differences of the
/// discrete energy density, reusing one sample set across all `t`
/// (common random numbers).
///
/// The horizontal term of the Sasaki energy is carried along (the base
/// map stays the identity, so only the vertical term varies).
pub fn first_variation<F: Fiber>(
    sec: &Section<F>,
    variation: &Variation<F>,
    t_step: f64,
    samples: usize,
    seed: u64,
    cfg: &DiffCfg,
) -> Result<FirstVariation> {
    assert!(samples >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = sec.dim_base() as f64;
    let offsets = fd_offsets(cfg.step);
    let mut derivs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let p = random_point(sec.n(), sec.k(), &mut rng);
        let dirs = tangent_basis(&p);
        // Cache section and variation values on the finite-difference
        // stencil once; every t reuses them.
        let mut stencil: Vec<[(F, F); 4]> = Vec::with_capacity(dirs.len());
        for dir in &dirs {
            let vals: Vec<(F, F)> = offsets
                .iter()
                .map(|&u| {
                    let q = exp_action(dir, u, &p);
                    (sec.value(&q), variation.at(&q))
                })
                .collect();
            stencil.push(vals.try_into().ok().expect("four stencil offsets"));
        }
        let energy_at = |t: f64| -> f64 {
            let mut bending = 0.0;
            for vals in &stencil {
                let perturbed: Vec<F> = vals
                    .iter()
                    .map(|(s, w)| {
                        let u = s.add(&w.scale(t));
                        u.scale(1.0 / u.fiber_norm())
                    })
                    .collect();
                let grad = stencil_derivative(&perturbed, cfg.step).project_at(&p);
                bending += grad.inner(&grad);
            }
            (dim + bending) / 2.0
        };
        // Richardson-extrapolated central difference in t.
        let d1 = (energy_at(t_step) - energy_at(-t_step)) / (2.0 * t_step);
        let d2 = (energy_at(t_step / 2.0) - energy_at(-t_step / 2.0)) / t_step;
        derivs.push((4.0 * d2 - d1) / 3.0);
    }
    let mean = derivs.iter().sum::<f64>() / samples as f64;
    let var = derivs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (samples as f64 - 1.0);
    let std_error = (var / samples as f64).sqrt();
    if !std_error.is_finite() || std_error == 0.0 {
        return Err(Error::Inconclusive(
            "degenerate Monte Carlo spread in first variation".to_string(),
        ));
    }
    Ok(FirstVariation {
        estimate: mean,
        std_error,
        samples,
        z_score: mean.abs() / std_error,
    })
}

/// Stencil offsets `±h/2, ±h/4` used by the cached derivative.
fn fd_offsets(h: f64) -> [f64; 4] {
    [-h / 2.0, h / 2.0, -h / 4.0, h / 4.0]
}

/// Richardson-extrapolated central difference from values on
/// [`fd_offsets`].
fn stencil_derivative<F: Fiber>(vals: &[F], h: f64) -> F {
    let d2 = vals[1].sub(&vals[0]).scale(1.0 / h);
    let d3 = vals[3].sub(&vals[2]).scale(2.0 / h);
    d3.scale(4.0 / 3.0).sub(&d2.scale(1.0 / 3.0))
}

/// A deliberately non-critical control: the section rotated pointwise in
/// the fiber by a fixed angle towards a fixed ambient direction. Used to
/// confirm that the first-variation test has power.
pub struct Control {
    pub section: Section<DVector<f64>>,
    pub rotation_direction: Variation<DVector<f64>>,
}

/// Builds the control by pushing the section along an admissible
/// variation field and renormalizing: `normalize(sigma + beta w)`. This
/// rotates each fiber value towards `w(P)` by a smooth, bounded angle, so
/// the perturbed section is smooth and genuinely non-critical. The
/// matching variation is the derivative of the family in `beta`.
pub fn perturbed_control(
    sec: &Section<DVector<f64>>,
    w0: &Variation<DVector<f64>>,
    beta: f64,
) -> Control {
    let section = Section::from_fn(format!("{}-perturbed", sec.name()), sec.k(), sec.n(), {
        let sec = sec.clone();
        let w0 = w0.clone();
        move |p: &OrientedSubspace| {
            let g = sec.value(p) + w0.at(p) * beta;
            &g / g.norm()
        }
    });
    let rotation_direction = Variation {
        field: Arc::new({
            let sec = sec.clone();
            let w0 = w0.clone();
            move |p: &OrientedSubspace| {
                let w = w0.at(p);
                let g = sec.value(p) + &w * beta;
                let norm = g.norm();
                let tilde = &g / norm;
                (&w - &tilde * w.dot(&tilde)) / norm
            }
        }),
    };
    Control {
        section,
        rotation_direction,
    }
}

/// The loop construction that rules out parallel sections: reports the
/// transported field along `gamma_a`, the covariant derivative of the
/// transported family around the loop `a -> gamma_a(t)`, and the closed
/// forms they must match.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ObstructionReport {
    pub t: f64,
    /// Largest deviation of numerically transported vectors from the
    /// closed form `-sin t u_a + cos t v` over sampled `a`.
    pub transport_residual: f64,
    /// Largest deviation of the numerical loop covariant derivative from
    /// the closed form `pi_a(-sin t v_a)` over sampled `a`.
    pub derivative_residual: f64,
    /// Largest deviation of the loop-derivative norm from `sin^2 t`.
    pub norm_residual: f64,
    /// The smallest loop-derivative norm observed (positive obstruction).
    pub min_obstruction: f64,
}

/// The curves of the obstruction construction over `G(3,8)`:
/// `gamma_a(t) = e0 ^ (cos t u_a + sin t v) ^ (cos t v_a + sin t w)` with
/// `u_a = cos a e1 + sin a e2`, `v_a = -sin a e1 + cos a e2`.
pub fn obstruction_curve(
    v: &DVector<f64>,
    w: &DVector<f64>,
    a: f64,
    t: f64,
) -> OrientedSubspace {
    let n = 8;
    let e = |i: usize| DVector::<f64>::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
    let u_a = &e(1) * a.cos() + &e(2) * a.sin();
    let v_a = &e(1) * (-a.sin()) + &e(2) * a.cos();
    let z1 = &u_a * t.cos() + v * t.sin();
    let z2 = &v_a * t.cos() + w * t.sin();
    OrientedSubspace::from_columns(&[e(0), z1, z2]).expect("orthonormal by construction")
}

/// Runs the parallel-obstruction construction at the given `t` values.
///
/// `v` and `w` must be orthonormal and orthogonal to `span{e0,e1,e2}`.
pub fn parallel_obstruction_report(
    ts: &[f64],
    v: &DVector<f64>,
    w: &DVector<f64>,
    cfg: &DiffCfg,
    transport: &TransportOptions,
) -> Result<Vec<ObstructionReport>> {
    let a_samples = [0.0f64, 0.9, 2.3, 3.9, 5.4];
    let e = |i: usize| DVector::<f64>::from_fn(8, |r, _| if r == i { 1.0 } else { 0.0 });
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let mut transport_residual: f64 = 0.0;
        let mut derivative_residual: f64 = 0.0;
        let mut norm_residual: f64 = 0.0;
        let mut min_obstruction = f64::INFINITY;
        for &a in &a_samples {
            let u_a = &e(1) * a.cos() + &e(2) * a.sin();
            let v_a = &e(1) * (-a.sin()) + &e(2) * a.cos();
            // 1. Transport v along s -> gamma_a(s) up to t; closed form
            //    -sin t u_a + cos t v.
            let transported =
                parallel_transport_normal(|s| obstruction_curve(v, w, a, s), v, t, transport)?;
            let closed = &u_a * (-t.sin()) + v * t.cos();
            transport_residual = transport_residual.max((transported.vec - &closed).norm());
            // 2. Covariant derivative of the transported family around
            //    the loop a -> gamma_a(t).
            let vv = v.clone();
            let ww = w.clone();
            let path = FiberPath::new(
                move |aa| obstruction_curve(&vv, &ww, aa, t),
                {
                    let v = v.clone();
                    move |aa: f64| {
                        let u_aa = &e(1) * aa.cos() + &e(2) * aa.sin();
                        &u_aa * (-t.sin()) + &v * t.cos()
                    }
                },
            );
            let deriv = covariant_derivative_normal(&path, a, cfg.step, cfg.richardson_tol)?;
            let expected = (&v_a * (-t.sin())).project_at(&obstruction_curve(v, w, a, t));
            derivative_residual = derivative_residual.max((&deriv.vec - &expected).norm());
            let norm = deriv.vec.norm();
            norm_residual = norm_residual.max((norm - t.sin().powi(2)).abs());
            min_obstruction = min_obstruction.min(norm);
        }
        out.push(ObstructionReport {
            t,
            transport_residual,
            derivative_residual,
            norm_residual,
            min_obstruction,
        });
    }
    Ok(out)
}

/// Convenience: fixed choice `v = e3`, `w = e4` for the obstruction.
pub fn default_obstruction_vectors() -> (DVector<f64>, DVector<f64>) {
    let v = DVector::from_fn(8, |r, _| if r == 3 { 1.0 } else { 0.0 });
    let w = DVector::from_fn(8, |r, _| if r == 4 { 1.0 } else { 0.0 });
    (v, w)
}
