//! The individual verification suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::closed_form;
use super::{run_check, Config, VerificationReport};
use crate::bundles::{
    bundle_morphism_phi, fiber_project_normal, parallel_transport_normal, phi, Fiber,
    TransportOptions,
};
use crate::diffops::{
    criticality_form_basis, rough_laplacian, wedge_sign,
};
use crate::energy::{
    bending_density, estimate_energy, first_variation, parallel_obstruction_report,
    perturbed_control, random_variation_normal, random_variation_skew,
    default_obstruction_vectors,
};
use crate::grassmann::{geodesic, random_point};
use crate::octonion::{cross2, cross3, epsilon, mul, Octonion, POSITIVE_TRIPLES};
use crate::sections::{acs6, hopf, section_j, sigma2, sigma3, Section};
use crate::Result;

fn rng_for(cfg: &Config, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(salt.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn random_octonion(rng: &mut impl Rng) -> Octonion {
    let mut coeffs = [0.0; 8];
    for c in &mut coeffs {
        *c = rng.gen_range(-1.0..1.0);
    }
    Octonion::new(coeffs)
}

fn random_orthonormal_octonions(rng: &mut impl Rng, m: usize) -> Vec<Octonion> {
    'outer: loop {
        let mut frame: Vec<Octonion> = Vec::with_capacity(m);
        for _ in 0..m {
            let mut v = random_octonion(rng);
            for u in &frame {
                v = v.sub(&u.scale(v.dot(u)));
            }
            let n = v.norm();
            if n < 1e-3 {
                continue 'outer;
            }
            frame.push(v.scale(1.0 / n));
        }
        return frame;
    }
}

// ---------------------------------------------------------------------
// octonion
// ---------------------------------------------------------------------

pub fn octonion_suite(cfg: &Config) -> Vec<VerificationReport> {
    let exact = 1e-12;
    let mut checks = Vec::new();

    checks.push(run_check(
        "octonion.epsilon-table",
        "eps_ijk: antisymmetric expansion of the seven positive triples",
        "343 entries: +1/-1 on the 42 triple permutations, 0 elsewhere [definition]",
        0.0,
        || {
            let table = epsilon();
            let mut mismatches = 0usize;
            for i in 1..=7usize {
                for j in 1..=7usize {
                    for k in 1..=7usize {
                        // Independent expansion: locate {i,j,k} among the
                        // positive triples and count the permutation parity
                        // by explicit inversion count.
                        let mut expected = 0i8;
                        let distinct = i != j && j != k && i != k;
                        for t in POSITIVE_TRIPLES {
                            let mut sorted = [i, j, k];
                            sorted.sort_unstable();
                            let mut t_sorted = t;
                            t_sorted.sort_unstable();
                            if distinct && sorted == t_sorted {
                                // Parity of the permutation taking t to (i,j,k).
                                let pos =
                                    [i, j, k].map(|x| t.iter().position(|&y| y == x).unwrap());
                                let mut inv = 0;
                                for a in 0..3 {
                                    for b in (a + 1)..3 {
                                        if pos[a] > pos[b] {
                                            inv += 1;
                                        }
                                    }
                                }
                                expected = if inv % 2 == 0 { 1 } else { -1 };
                            }
                        }
                        if table.get(i, j, k) != expected {
                            mismatches += 1;
                        }
                    }
                }
            }
            Ok((mismatches as f64, format!("{mismatches} mismatching entries")))
        },
    ));

    checks.push(run_check(
        "octonion.unit-element",
        "e0 x = x e0 = x",
        "exact identity on random octonions [definition]",
        0.0,
        || {
            let mut rng = rng_for(cfg, 1);
            let mut worst: f64 = 0.0;
            for _ in 0..200 {
                let x = random_octonion(&mut rng);
                let l = mul(&Octonion::e(0), &x).sub(&x).norm();
                let r = mul(&x, &Octonion::e(0)).sub(&x).norm();
                worst = worst.max(l).max(r);
            }
            Ok((worst, format!("max deviation {worst:.1e}")))
        },
    ));

    checks.push(run_check(
        "octonion.basis-products",
        "e_i e_j = -delta_ij e0 + eps_ijk e_k on all 64 basis pairs",
        "table-generated products [definition]",
        0.0,
        || {
            let table = epsilon();
            let mut worst: f64 = 0.0;
            for i in 0..8usize {
                for j in 0..8usize {
                    let got = mul(&Octonion::e(i), &Octonion::e(j));
                    let mut want = [0.0f64; 8];
                    if i == 0 {
                        want[j] += 1.0;
                    } else if j == 0 {
                        want[i] += 1.0;
                    } else {
                        if i == j {
                            want[0] -= 1.0;
                        } else {
                            for k in 1..8 {
                                want[k] += f64::from(table.get(i, j, k));
                            }
                        }
                    }
                    let diff: f64 = got
                        .coeffs
                        .iter()
                        .zip(want.iter())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    worst = worst.max(diff);
                }
            }
            Ok((worst, format!("max deviation {worst:.1e}")))
        },
    ));

    checks.push(run_check(
        "octonion.norm-multiplicative",
        "|ab| = |a| |b|",
        "relative residual < 1e-12 on 1000 random pairs [definition]",
        exact,
        || {
            let mut rng = rng_for(cfg, 2);
            let mut worst: f64 = 0.0;
            for _ in 0..1000 {
                let a = random_octonion(&mut rng);
                let b = random_octonion(&mut rng);
                let lhs = mul(&a, &b).norm();
                let rhs = a.norm() * b.norm();
                worst = worst.max((lhs - rhs).abs() / rhs.max(1e-300));
            }
            Ok((worst, format!("max relative residual {worst:.2e}")))
        },
    ));

    checks.push(run_check(
        "octonion.triple-skew-adjoint",
        "<X(u,v,w), z> = -<X(z,v,w), u> on orthonormal 4-frames",
        "residual < 1e-12 on 1000 random frames [closed-form]",
        exact,
        || {
            let mut rng = rng_for(cfg, 3);
            let mut worst: f64 = 0.0;
            for _ in 0..1000 {
                let f = random_orthonormal_octonions(&mut rng, 4);
                let lhs = cross3(&f[1], &f[2], &f[3]).dot(&f[0]);
                let rhs = -cross3(&f[0], &f[2], &f[3]).dot(&f[1]);
                worst = worst.max((lhs - rhs).abs());
            }
            Ok((worst, format!("max residual {worst:.2e}")))
        },
    ));

    checks.push(run_check(
        "octonion.cross-axioms",
        "cross products are orthogonal to their arguments with Gram-determinant norm",
        "residual < 1e-11 on 1000 random tuples [definition]",
        1e-11,
        || {
            let mut rng = rng_for(cfg, 4);
            let mut worst: f64 = 0.0;
            for _ in 0..1000 {
                let mut u = random_octonion(&mut rng);
                let mut v = random_octonion(&mut rng);
                let w = random_octonion(&mut rng);
                // cross2 on imaginary parts.
                u.coeffs[0] = 0.0;
                v.coeffs[0] = 0.0;
                let x2 = cross2(&u, &v).expect("imaginary");
                worst = worst.max(x2.dot(&u).abs()).max(x2.dot(&v).abs());
                let gram2 = u.dot(&u) * v.dot(&v) - u.dot(&v).powi(2);
                worst = worst.max((x2.dot(&x2) - gram2).abs());
                let x3 = cross3(&u, &v, &w);
                worst = worst
                    .max(x3.dot(&u).abs())
                    .max(x3.dot(&v).abs())
                    .max(x3.dot(&w).abs());
                let g = [
                    [u.dot(&u), u.dot(&v), u.dot(&w)],
                    [u.dot(&v), v.dot(&v), v.dot(&w)],
                    [u.dot(&w), v.dot(&w), w.dot(&w)],
                ];
                let gram3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
                    - g[0][1] * (g[0][1] * g[2][2] - g[1][2] * g[0][2])
                    + g[0][2] * (g[0][1] * g[1][2] - g[1][1] * g[0][2]);
                worst = worst.max((x3.dot(&x3) - gram3).abs());
            }
            Ok((worst, format!("max residual {worst:.2e}")))
        },
    ));

    checks.push(run_check(
        "octonion.double-from-triple",
        "X(e0, e_i, e_j) = e_i x e_j for all i, j >= 1",
        "exact coordinate identity [closed-form]",
        0.0,
        || {
            let mut worst: f64 = 0.0;
            for i in 1..8 {
                for j in 1..8 {
                    let lhs = cross3(&Octonion::e(0), &Octonion::e(i), &Octonion::e(j));
                    let rhs = cross2(&Octonion::e(i), &Octonion::e(j)).expect("imaginary");
                    worst = worst.max(lhs.sub(&rhs).norm());
                }
            }
            Ok((worst, format!("max deviation {worst:.1e}")))
        },
    ));

    checks
}

// ---------------------------------------------------------------------
// lemma reproduction
// ---------------------------------------------------------------------

fn family_checks(
    build: impl FnOnce() -> Result<Vec<closed_form::LemmaCase>>,
    anchor_of: impl Fn(&str) -> String,
    tol: f64,
) -> Vec<VerificationReport> {
    let start = std::time::Instant::now();
    let cases = match build() {
        Ok(c) => c,
        Err(e) => {
            return vec![run_check("lemma-cases", "lemma case evaluation", "", tol, || {
                Err(e)
            })]
        }
    };
    let batch_seconds = start.elapsed().as_secs_f64();
    let mut families: Vec<&'static str> = Vec::new();
    for c in &cases {
        if !families.contains(&c.family) {
            families.push(c.family);
        }
    }
    let total = cases.len();
    families
        .into_iter()
        .map(|family| {
            let of_family: Vec<_> = cases.iter().filter(|c| c.family == family).collect();
            let worst = of_family
                .iter()
                .map(|c| c.residual)
                .fold(0.0f64, f64::max);
            let count = of_family.len();
            let expected = format!("{} [closed-form]", of_family[0].expected);
            let mut check = run_check(family, &anchor_of(family), &expected, tol, move || {
                Ok((worst, format!("max residual over {count} index combinations")))
            });
            // The cases are computed as one batch; attribute the batch
            // time proportionally so the per-check timings add up.
            check.wall_time = batch_seconds * count as f64 / total as f64;
            check
        })
        .collect()
}

pub fn lemmas_sigma3_suite(cfg: &Config) -> Vec<VerificationReport> {
    let dc = cfg.diff_cfg();
    family_checks(
        move || closed_form::sigma3_cases(&dc),
        |family| format!("covariant derivatives of sigma3 along canonical surfaces ({family})"),
        cfg.tol,
    )
}

pub fn lemmas_j_suite(cfg: &Config) -> Vec<VerificationReport> {
    let dc = cfg.diff_cfg();
    family_checks(
        move || closed_form::j_cases(&dc),
        |family| format!("covariant derivatives of J along canonical surfaces ({family})"),
        cfg.tol,
    )
}

// ---------------------------------------------------------------------
// laplacians
// ---------------------------------------------------------------------

fn laplacian_base_check<F: Fiber>(
    sec: &Section<F>,
    eigenvalue: f64,
    cfg: &Config,
) -> VerificationReport {
    let id = format!("laplacian.{}.base", sec.name());
    let anchor = format!(
        "Delta {} = {} {} at the canonical base point",
        sec.name(),
        eigenvalue,
        sec.name()
    );
    let expected = format!("eigenvalue {eigenvalue} with zero residual [closed-form]");
    let sec = sec.clone();
    let dc = cfg.diff_cfg();
    run_check(&id, &anchor, &expected, cfg.tol, move || {
        let lap = rough_laplacian(&sec, &sec.base_point(), &dc)?;
        let sigma = sec.value(&sec.base_point());
        let deviation = lap.value.sub(&sigma.scale(eigenvalue)).norm();
        let residual = deviation.max((lap.eigen_estimate - eigenvalue).abs());
        Ok((
            residual,
            format!(
                "f = {:.9}, |Delta sigma - f sigma| = {:.2e}",
                lap.eigen_estimate, lap.residual
            ),
        ))
    })
}

fn laplacian_spread_check<F: Fiber>(
    sec: &Section<F>,
    points: usize,
    cfg: &Config,
    salt: u64,
) -> VerificationReport {
    let id = format!("laplacian.{}.random-spread", sec.name());
    let anchor = format!(
        "the eigenvalue of Delta {} is constant over the Grassmannian",
        sec.name()
    );
    let expected = format!("spread of f over {points} random points < sampled tolerance [statistical]");
    let sec = sec.clone();
    let dc = cfg.diff_cfg();
    let tol = cfg.sampled_tol();
    let mut rng = rng_for(cfg, salt);
    let (n, k) = (sec.n(), sec.k());
    run_check(&id, &anchor, &expected, tol, move || {
        let mut min_f = f64::INFINITY;
        let mut max_f = f64::NEG_INFINITY;
        let mut max_parallel_residual: f64 = 0.0;
        for _ in 0..points {
            let p = random_point(n, k, &mut rng);
            let lap = rough_laplacian(&sec, &p, &dc)?;
            min_f = min_f.min(lap.eigen_estimate);
            max_f = max_f.max(lap.eigen_estimate);
            max_parallel_residual = max_parallel_residual.max(lap.residual);
        }
        let spread = max_f - min_f;
        Ok((
            spread.max(max_parallel_residual),
            format!(
                "f in [{min_f:.8}, {max_f:.8}], max |Delta sigma - f sigma| = {max_parallel_residual:.2e}"
            ),
        ))
    })
}

pub fn laplacians_suite(cfg: &Config) -> Vec<VerificationReport> {
    let mut checks = vec![
        laplacian_base_check(&sigma3(), -12.0, cfg),
        laplacian_base_check(&sigma2(), -8.0, cfg),
        laplacian_base_check(&section_j(), -8.0, cfg),
        laplacian_spread_check(&sigma3(), 100, cfg, 10),
        laplacian_spread_check(&sigma2(), 100, cfg, 11),
        laplacian_spread_check(&section_j(), 100, cfg, 12),
    ];
    // Pointwise <Delta sigma, sigma> = -sum |nabla sigma|^2, the two
    // sides coming from independent code paths.
    let dc = cfg.diff_cfg();
    let mut rng = rng_for(cfg, 13);
    checks.push(run_check(
        "laplacian.bending-identity",
        "<Delta sigma, sigma> = -sum_a |nabla_{e_a} sigma|^2 for unit sections",
        "pointwise residual < 1e-5 [oracle]",
        1e-5,
        move || {
            let mut worst: f64 = 0.0;
            let s3 = sigma3();
            let s2 = sigma2();
            let sj = section_j();
            for _ in 0..3 {
                let p = random_point(8, 3, &mut rng);
                let lap = rough_laplacian(&s3, &p, &dc)?;
                let b = bending_density(&s3, &p, &dc)?;
                worst = worst.max((lap.value.inner(&s3.value(&p)) + b).abs());
                let q = random_point(7, 2, &mut rng);
                let lap = rough_laplacian(&s2, &q, &dc)?;
                let b = bending_density(&s2, &q, &dc)?;
                worst = worst.max((lap.value.inner(&s2.value(&q)) + b).abs());
                let r = random_point(8, 2, &mut rng);
                let lap = rough_laplacian(&sj, &r, &dc)?;
                let b = bending_density(&sj, &r, &dc)?;
                worst = worst.max((lap.value.inner(&sj.value(&r)) + b).abs());
            }
            Ok((worst, format!("max residual {worst:.2e}")))
        },
    ));
    checks
}

// ---------------------------------------------------------------------
// curvature
// ---------------------------------------------------------------------

pub fn curvature_suite(cfg: &Config) -> Vec<VerificationReport> {
    let dc = cfg.diff_cfg();
    let mut checks = family_checks(
        {
            let dc = dc.clone();
            move || closed_form::sigma3_curvature_cases(&dc)
        },
        |family| format!("bundle curvature of sigma3 on basis pairs ({family})"),
        cfg.tol,
    );
    checks.extend(family_checks(
        move || closed_form::j_curvature_cases(&dc),
        |family| format!("bundle curvature of J on basis pairs ({family})"),
        cfg.tol,
    ));
    checks.push(run_check(
        "curvature.wedge-sign-antisymmetry",
        "r_{l,k} = -r_{k,l}, which cancels the distinct-column curvature",
        "exact sign identity [closed-form]",
        0.0,
        || {
            let mut worst: f64 = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    if k != l {
                        worst = worst.max((wedge_sign(l, k) + wedge_sign(k, l)).abs());
                    }
                }
            }
            Ok((worst, format!("max |r_lk + r_kl| = {worst}")))
        },
    ));
    checks
}

// ---------------------------------------------------------------------
// criticality
// ---------------------------------------------------------------------

fn criticality_check<F: Fiber>(
    sec: &Section<F>,
    at_random: Option<usize>,
    cfg: &Config,
    salt: u64,
) -> VerificationReport {
    let sec = sec.clone();
    let dc = cfg.diff_cfg();
    let (n, k) = (sec.n(), sec.k());
    match at_random {
        None => {
            let id = format!("criticality.{}.base", sec.name());
            let anchor = format!(
                "the criticality 1-form of {} vanishes on every basis direction at the base point",
                sec.name()
            );
            run_check(
                &id,
                &anchor,
                "all basis values 0 [closed-form]",
                cfg.tol,
                move || {
                    let vals = criticality_form_basis(&sec, &sec.base_point(), &dc)?;
                    let worst = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                    Ok((worst, format!("max |R_sigma(e)| over {} directions", vals.len())))
                },
            )
        }
        Some(points) => {
            let id = format!("criticality.{}.random", sec.name());
            let anchor = format!(
                "the criticality 1-form of {} vanishes at random points",
                sec.name()
            );
            let expected = format!("basis values < sampled tolerance at {points} points [statistical]");
            let tol = cfg.sampled_tol();
            let mut rng = rng_for(cfg, salt);
            run_check(&id, &anchor, &expected, tol, move || {
                let mut worst: f64 = 0.0;
                for _ in 0..points {
                    let p = random_point(n, k, &mut rng);
                    let vals = criticality_form_basis(&sec, &p, &dc)?;
                    worst = vals.iter().fold(worst, |m, v| m.max(v.abs()));
                }
                Ok((worst, format!("max |R_sigma| = {worst:.2e}")))
            })
        }
    }
}

pub fn criticality_suite(cfg: &Config) -> Vec<VerificationReport> {
    vec![
        criticality_check(&sigma3(), None, cfg, 0),
        criticality_check(&sigma2(), None, cfg, 0),
        criticality_check(&section_j(), None, cfg, 0),
        criticality_check(&sigma3(), Some(25), cfg, 20),
        criticality_check(&sigma2(), Some(25), cfg, 21),
        criticality_check(&section_j(), Some(25), cfg, 22),
    ]
}

// ---------------------------------------------------------------------
// parallel obstruction
// ---------------------------------------------------------------------

pub fn parallel_obstruction_suite(cfg: &Config) -> Vec<VerificationReport> {
    use std::f64::consts::PI;
    let dc = cfg.diff_cfg();
    let topts = TransportOptions::default();
    let (v, w) = default_obstruction_vectors();
    let reports = parallel_obstruction_report(&[PI / 6.0, PI / 4.0, PI / 3.0], &v, &w, &dc, &topts);
    let mut checks = Vec::new();
    match reports {
        Err(e) => checks.push(run_check(
            "transport.obstruction",
            "loop obstruction construction",
            "",
            cfg.tol,
            move || Err(e),
        )),
        Ok(reports) => {
            let max_transport = reports
                .iter()
                .map(|r| r.transport_residual)
                .fold(0.0f64, f64::max);
            checks.push(run_check(
                "transport.closed-form",
                "parallel transport along the tilting curves matches -sin t u_a + cos t v",
                "residual < 1e-7 at t in {pi/6, pi/4, pi/3} [oracle]",
                1e-7,
                move || Ok((max_transport, format!("max residual {max_transport:.2e}"))),
            ));
            let max_deriv = reports
                .iter()
                .map(|r| r.derivative_residual)
                .fold(0.0f64, f64::max);
            let max_norm = reports
                .iter()
                .map(|r| r.norm_residual)
                .fold(0.0f64, f64::max);
            let obstruction_at = reports
                .iter()
                .map(|r| format!("t={:.3}: |D/da| in [{:.6}, ...]", r.t, r.min_obstruction))
                .collect::<Vec<_>>()
                .join("; ");
            checks.push(run_check(
                "transport.loop-derivative",
                "the loop covariant derivative equals pi_a(-sin t v_a) with norm sin^2 t",
                "norm residual < 1e-5 [oracle]",
                1e-5,
                move || {
                    Ok((
                        max_deriv.max(max_norm),
                        format!("max vector residual {max_deriv:.2e}, max norm residual {max_norm:.2e}"),
                    ))
                },
            ));
            let min_obs = reports
                .iter()
                .map(|r| r.min_obstruction)
                .fold(f64::INFINITY, f64::min);
            checks.push(run_check(
                "transport.obstruction-positive",
                "no parallel section: the loop derivative never vanishes for t in (0, pi)",
                "min obstruction = min sin^2 t > 0.2 on the tested grid [oracle]",
                0.0,
                move || {
                    let residual = if min_obs > 0.2 { 0.0 } else { 1.0 };
                    Ok((residual, format!("min obstruction {min_obs:.6}; {obstruction_at}")))
                },
            ));
        }
    }
    // Norm preservation over a span of length pi with the default step.
    checks.push(run_check(
        "transport.norm-preservation",
        "projected transport preserves the fiber norm",
        "norm drift < 1e-8 over a span of length pi [definition]",
        1e-8,
        move || {
            let (v, w) = default_obstruction_vectors();
            let out = parallel_transport_normal(
                |s| crate::energy::obstruction_curve(&v, &w, 0.7, s),
                &v,
                PI,
                &TransportOptions::default(),
            )?;
            Ok((
                (out.vec.norm() - 1.0).abs(),
                format!("final norm {:.12}", out.vec.norm()),
            ))
        },
    ));
    checks
}

// ---------------------------------------------------------------------
// energy
// ---------------------------------------------------------------------

fn energy_check<F: Fiber>(
    sec: &Section<F>,
    expected_bending: f64,
    cfg: &Config,
    salt: u64,
) -> VerificationReport {
    let id = format!("energy.bending.{}", sec.name());
    let anchor = format!(
        "the bending density of {} is constant, with Sasaki energy density (dim + bending)/2",
        sec.name()
    );
    let expected_density = (sec.dim_base() as f64 + expected_bending) / 2.0;
    let expected = format!(
        "mean bending {expected_bending}, spread < 1e-4, energy density {expected_density} [oracle]"
    );
    let sec = sec.clone();
    let dc = cfg.diff_cfg();
    let samples = cfg.samples;
    let seed = cfg.seed.wrapping_add(salt);
    let tol = cfg.sampled_tol();
    run_check(&id, &anchor, &expected, tol, move || {
        let est = estimate_energy(&sec, samples, seed, &dc)?;
        let residual = (est.mean_bending - expected_bending)
            .abs()
            .max(est.std_dev)
            .max((est.energy_density - expected_density).abs());
        Ok((
            residual,
            format!(
                "mean {:.8} +- {:.1e}, energy density {:.6} over {} samples",
                est.mean_bending, est.std_dev, est.energy_density, est.samples
            ),
        ))
    })
}

pub fn energy_suite(cfg: &Config) -> Vec<VerificationReport> {
    let mut checks = vec![
        energy_check(&sigma3(), 12.0, cfg, 30),
        energy_check(&sigma2(), 8.0, cfg, 31),
        energy_check(&section_j(), 8.0, cfg, 32),
    ];

    let dc = cfg.diff_cfg();
    let variations = 20;
    // sigma3 and sigma2 variations.
    for (salt, sec, name) in [(40u64, sigma3(), "sigma3"), (41, sigma2(), "sigma2")] {
        let id = format!("energy.first-variation.{name}");
        let anchor = format!("{name} is critical: dE/dt(0) = 0 for admissible variations");
        let expected = format!("|dE/dt| < 3 standard errors for {variations} random variations [statistical]");
        let dc = dc.clone();
        let cfgc = cfg.clone();
        checks.push(run_check(&id, &anchor, &expected, 3.0, move || {
            let mut rng = rng_for(&cfgc, salt);
            let mut worst_z: f64 = 0.0;
            for v in 0..variations {
                let var = random_variation_normal(&sec, &mut rng);
                let fv = first_variation(
                    &sec,
                    &var,
                    1e-3,
                    cfgc.samples,
                    cfgc.seed.wrapping_add(salt * 100 + v as u64),
                    &dc,
                )?;
                worst_z = worst_z.max(fv.z_score);
            }
            Ok((worst_z, format!("max |dE/dt| / SE = {worst_z:.3}")))
        }));
    }
    {
        let id = "energy.first-variation.J";
        let anchor = "J is critical: dE/dt(0) = 0 for admissible variations";
        let expected =
            format!("|dE/dt| < 3 standard errors for {variations} random variations [statistical]");
        let dc = dc.clone();
        let cfgc = cfg.clone();
        checks.push(run_check(id, anchor, &expected, 3.0, move || {
            let sec = section_j();
            let mut rng = rng_for(&cfgc, 42);
            let mut worst_z: f64 = 0.0;
            for v in 0..variations {
                let var = random_variation_skew(&sec, &mut rng);
                let fv = first_variation(
                    &sec,
                    &var,
                    1e-3,
                    cfgc.samples,
                    cfgc.seed.wrapping_add(4200 + v as u64),
                    &dc,
                )?;
                worst_z = worst_z.max(fv.z_score);
            }
            Ok((worst_z, format!("max |dE/dt| / SE = {worst_z:.3}")))
        }));
    }
    {
        let dc = dc.clone();
        let cfgc = cfg.clone();
        checks.push(run_check(
            "energy.first-variation.control",
            "a deliberately perturbed section is detected as non-critical",
            "|dE/dt| > 5 standard errors for the exhibited variation [oracle]",
            0.0,
            move || {
                let sec = sigma3();
                let mut rng = rng_for(&cfgc, 43);
                let w0 = random_variation_normal(&sec, &mut rng);
                let control = perturbed_control(&sec, &w0, 0.2);
                let fv = first_variation(
                    &control.section,
                    &control.rotation_direction,
                    1e-3,
                    cfgc.samples * 2,
                    cfgc.seed.wrapping_add(4300),
                    &dc,
                )?;
                let residual = if fv.z_score > 5.0 { 0.0 } else { 5.0 - fv.z_score };
                Ok((
                    residual,
                    format!("dE/dt = {:.4} ({:.1} standard errors)", fv.estimate, fv.z_score),
                ))
            },
        ));
    }
    {
        let dc = dc.clone();
        let cfgc = cfg.clone();
        checks.push(run_check(
            "energy.determinism",
            "estimates are bitwise reproducible under the same seed",
            "identical bit patterns [definition]",
            0.0,
            move || {
                let sec = sigma3();
                let a = estimate_energy(&sec, 20, cfgc.seed, &dc)?;
                let b = estimate_energy(&sec, 20, cfgc.seed, &dc)?;
                let same = a.mean_bending.to_bits() == b.mean_bending.to_bits()
                    && a.std_dev.to_bits() == b.std_dev.to_bits();
                Ok((
                    if same { 0.0 } else { 1.0 },
                    format!("mean {:.12}", a.mean_bending),
                ))
            },
        ));
    }
    checks
}

// ---------------------------------------------------------------------
// diagram phi
// ---------------------------------------------------------------------

pub fn diagram_phi_suite(cfg: &Config) -> Vec<VerificationReport> {
    let mut checks = Vec::new();
    {
        let cfgc = cfg.clone();
        checks.push(run_check(
            "diagram.phi-commutes",
            "Phi(sigma2(P)) = sigma3(phi(P)) on G(2,7)",
            "residual < 1e-10 at 200 random points [closed-form]",
            1e-10,
            move || {
                let s2 = sigma2();
                let s3 = sigma3();
                let mut rng = rng_for(&cfgc, 50);
                let mut worst: f64 = 0.0;
                for _ in 0..200 {
                    let p = random_point(7, 2, &mut rng);
                    let down = fiber_project_normal(&p, &s2.value(&p));
                    let lifted = bundle_morphism_phi(&down)?;
                    let upstairs = s3.value(&phi(&p)?);
                    worst = worst.max((lifted.vec - upstairs).norm());
                }
                Ok((worst, format!("max residual {worst:.2e}")))
            },
        ));
    }
    {
        let cfgc = cfg.clone();
        checks.push(run_check(
            "diagram.phi-isometric",
            "Phi preserves fiber inner products",
            "exact re-indexing of coordinates [definition]",
            1e-14,
            move || {
                let mut rng = rng_for(&cfgc, 51);
                let mut worst: f64 = 0.0;
                for _ in 0..100 {
                    let p = random_point(7, 2, &mut rng);
                    let x = fiber_project_normal(&p, &crate::grassmann::random_unit_vector(7, &mut rng));
                    let y = fiber_project_normal(&p, &crate::grassmann::random_unit_vector(7, &mut rng));
                    let fx = bundle_morphism_phi(&x)?;
                    let fy = bundle_morphism_phi(&y)?;
                    worst = worst.max((fx.vec.dot(&fy.vec) - x.vec.dot(&y.vec)).abs());
                }
                Ok((worst, format!("max residual {worst:.2e}")))
            },
        ));
    }
    checks.push(run_check(
        "diagram.phi-totally-geodesic",
        "phi maps geodesics of G(2,7) to geodesics of G(3,8)",
        "point residual < 1e-9 along sampled parameters [closed-form]",
        1e-9,
        move || {
            let mut worst: f64 = 0.0;
            for l in 0..2usize {
                for j in 2..7usize {
                    for step in -4..=4 {
                        let t = step as f64 * 0.35;
                        let down = geodesic(2, 7, l, j, t)?;
                        let up = phi(&down)?;
                        let up_geo = geodesic(3, 8, l + 1, j + 1, t)?;
                        let diff = (up.projector_onto() - up_geo.projector_onto())
                            .abs()
                            .max();
                        let orient =
                            (up.frame().transpose() * up_geo.frame()).determinant();
                        worst = worst.max(diff).max(if orient > 0.0 { 0.0 } else { 1.0 });
                    }
                }
            }
            Ok((worst, format!("max projector residual {worst:.2e}")))
        },
    ));
    checks
}

// ---------------------------------------------------------------------
// extensions: hopf and acs6
// ---------------------------------------------------------------------

fn extension_checks<F: Fiber>(
    sec: &Section<F>,
    points: usize,
    cfg: &Config,
    salt: u64,
) -> Vec<VerificationReport> {
    let tol = cfg.sampled_tol();
    let dc = cfg.diff_cfg();
    let (n, k) = (sec.n(), sec.k());
    let mut checks = Vec::new();
    {
        let sec = sec.clone();
        let dc = dc.clone();
        let mut rng = rng_for(cfg, salt);
        let id = format!("extensions.{}.laplacian-parallel", sec.name());
        let anchor = format!(
            "Delta sigma is proportional to sigma for {} (eigenvalue measured, not asserted)",
            sec.name()
        );
        checks.push(run_check(
            &id,
            &anchor,
            "parallelism residual < sampled tolerance at random points [measured]",
            tol,
            move || {
                let mut worst: f64 = 0.0;
                let mut min_f = f64::INFINITY;
                let mut max_f = f64::NEG_INFINITY;
                for _ in 0..points {
                    let p = random_point(n, k, &mut rng);
                    let lap = rough_laplacian(&sec, &p, &dc)?;
                    worst = worst.max(lap.residual);
                    min_f = min_f.min(lap.eigen_estimate);
                    max_f = max_f.max(lap.eigen_estimate);
                }
                Ok((
                    worst,
                    format!("measured eigenvalue in [{min_f:.6}, {max_f:.6}], max residual {worst:.2e}"),
                ))
            },
        ));
    }
    {
        let sec = sec.clone();
        let dc = dc.clone();
        let mut rng = rng_for(cfg, salt + 1);
        let id = format!("extensions.{}.criticality", sec.name());
        let anchor = format!("the criticality 1-form of {} vanishes", sec.name());
        checks.push(run_check(
            &id,
            &anchor,
            "basis values < sampled tolerance at random points [measured]",
            tol,
            move || {
                let mut worst: f64 = 0.0;
                for _ in 0..points {
                    let p = random_point(n, k, &mut rng);
                    let vals = criticality_form_basis(&sec, &p, &dc)?;
                    worst = vals.iter().fold(worst, |m, v| m.max(v.abs()));
                }
                Ok((worst, format!("max |R_sigma| = {worst:.2e}")))
            },
        ));
    }
    {
        let sec = sec.clone();
        let dc = dc.clone();
        let id = format!("extensions.{}.density-constancy", sec.name());
        let anchor = format!("the bending density of {} is constant", sec.name());
        let samples = cfg.samples.min(100);
        let seed = cfg.seed.wrapping_add(salt + 2);
        checks.push(run_check(
            &id,
            &anchor,
            "sample standard deviation < 1e-4 [statistical]",
            1e-4,
            move || {
                let est = estimate_energy(&sec, samples, seed, &dc)?;
                Ok((
                    est.std_dev,
                    format!(
                        "mean bending {:.8} +- {:.1e} ({} samples)",
                        est.mean_bending, est.std_dev, est.samples
                    ),
                ))
            },
        ));
    }
    checks
}

pub fn extensions_suite(cfg: &Config) -> Vec<VerificationReport> {
    let mut checks = extension_checks(&hopf(2), 25, cfg, 60);
    checks.extend(extension_checks(&acs6(), 25, cfg, 70));
    checks
}
