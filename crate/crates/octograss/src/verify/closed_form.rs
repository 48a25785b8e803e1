//! Closed-form values of the first and second covariant derivatives and
//! curvatures of `sigma3` and `J` along canonical surfaces, built from
//! exact octonion arithmetic. The verification suites reproduce each of
//! them numerically, for every index combination.

use nalgebra::{DMatrix, DVector};

use crate::bundles::SkewOp;
use crate::diffops::{
    second_nabla, third_index, wedge_sign, curvature_basis, nabla, DiffCfg,
};
use crate::grassmann::{basis_tangent, skew_unit, surface};
use crate::octonion::{cross3, Octonion};
use crate::sections::{j_basis, section_j, sigma3};
use crate::Result;

fn oct_vec(o: &Octonion) -> DVector<f64> {
    DVector::from_row_slice(&o.coeffs)
}

fn basis_proj(n: usize, i: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, i)] = 1.0;
    m
}

/// `nabla_{e_j^l} sigma3 = X(e_j, e_{l+1}, e_{l+2}) + delta_{j3} e_l`
/// (indices mod 3); vanishes for `j = 3`.
pub fn expected_sigma3_nabla(l: usize, j: usize) -> DVector<f64> {
    let mut v = oct_vec(&cross3(
        &Octonion::e(j),
        &Octonion::e((l + 1) % 3),
        &Octonion::e((l + 2) % 3),
    ));
    if j == 3 {
        v[l] += 1.0;
    }
    v
}

/// Repeated direction: `(delta_{j3} - 1) e3`.
pub fn expected_sigma3_dd_repeat(j: usize) -> DVector<f64> {
    let coef = if j == 3 { 0.0 } else { -1.0 };
    oct_vec(&Octonion::e(3)) * coef
}

/// Distinct normal directions in the same frame column: `delta_{j3} e_i`.
pub fn expected_sigma3_dd_shared(i: usize, j: usize) -> DVector<f64> {
    let coef = if j == 3 { 1.0 } else { 0.0 };
    oct_vec(&Octonion::e(i)) * coef
}

/// Distinct frame columns `k != l`:
/// `r_{k,l} (id - e_k e^k - e_l e^l) X(e_i, e_j, e_m)`.
pub fn expected_sigma3_dd_distinct(i: usize, k: usize, j: usize, l: usize) -> DVector<f64> {
    let m = third_index(k, l);
    let mut v = oct_vec(&cross3(&Octonion::e(i), &Octonion::e(j), &Octonion::e(m)));
    v[k] = 0.0;
    v[l] = 0.0;
    v * wedge_sign(k, l)
}

/// Curvature of `sigma3`: `delta_{i3} e_j - delta_{j3} e_i` for equal
/// columns, zero otherwise.
pub fn expected_sigma3_curvature(i: usize, k: usize, j: usize, l: usize) -> DVector<f64> {
    let mut v = DVector::zeros(8);
    if k == l {
        if i == 3 {
            v[j] += 1.0;
        }
        if j == 3 {
            v[i] -= 1.0;
        }
    }
    v
}

/// `nabla_{e_j^l} J = (-1)^l (J' - (e_l e^l) J' - J' (e_l e^l))` with
/// `J' = J_{e_j ^ e_{l+1}}`, indices mod 2.
pub fn expected_j_nabla(l: usize, j: usize) -> DMatrix<f64> {
    let jp = j_basis(j, (l + 1) % 2);
    let ell = basis_proj(8, l);
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    (&jp - (&ell * &jp + &jp * &ell)) * sign
}

/// Repeated direction: `-J0 + (e_j e^j) J0 + J0 (e_j e^j)`.
pub fn expected_j_dd_repeat(j: usize) -> DMatrix<f64> {
    let j0 = j_basis(0, 1);
    let ejj = basis_proj(8, j);
    -&j0 + (&ejj * &j0 + &j0 * &ejj)
}

/// Distinct normal directions in the same frame column:
/// `(e_i e^j) J0 + J0 (e_j e^i)`.
pub fn expected_j_dd_shared(i: usize, j: usize) -> DMatrix<f64> {
    let j0 = j_basis(0, 1);
    let mut eij = DMatrix::zeros(8, 8);
    eij[(i, j)] = 1.0;
    let mut eji = DMatrix::zeros(8, 8);
    eji[(j, i)] = 1.0;
    &eij * &j0 + &j0 * &eji
}

/// Distinct frame columns (`l+1` against `l`):
/// `(-1)^{l+1} pi0 J_{e_i ^ e_j} pi0`.
pub fn expected_j_dd_distinct(l: usize, i: usize, j: usize) -> DMatrix<f64> {
    let base = crate::grassmann::OrientedSubspace::base_point(2, 8);
    let pi0 = base.projector_perp();
    let sign = if (l + 1) % 2 == 0 { 1.0 } else { -1.0 };
    (&pi0 * j_basis(i, j) * &pi0) * sign
}

/// Curvature of `J`: zero across distinct columns,
/// `[J0, A^{i,j}]` within a column.
pub fn expected_j_curvature(i: usize, k: usize, j: usize, l: usize) -> DMatrix<f64> {
    if k != l {
        return DMatrix::zeros(8, 8);
    }
    let j0 = j_basis(0, 1);
    let a = skew_unit(8, i, j);
    &j0 * &a - &a * &j0
}

/// One reproduced closed-form value: the family, the indices that select
/// it, a descriptor of the expected value, and the numerical residual.
#[derive(Debug, Clone)]
pub struct LemmaCase {
    pub family: &'static str,
    /// `(i, k)` of the outer direction, when applicable.
    pub outer: Option<(usize, usize)>,
    /// `(j, l)` of the inner direction.
    pub inner: (usize, usize),
    pub expected: String,
    pub residual: f64,
}

/// Reproduces every closed-form value for `sigma3`: first derivatives,
/// all three second-derivative families and the curvature table.
pub fn sigma3_cases(cfg: &DiffCfg) -> Result<Vec<LemmaCase>> {
    let sec = sigma3();
    let base = sec.base_point();
    let mut out = Vec::new();
    for l in 0..3 {
        for j in 3..8 {
            let dir = basis_tangent(3, 8, l, j)?;
            let got = nabla(&sec, &base, &dir, cfg)?;
            let want = expected_sigma3_nabla(l, j);
            out.push(LemmaCase {
                family: "sigma3.first-derivative",
                outer: None,
                inner: (j, l),
                expected: "X(e_j, e_{l+1}, e_{l+2}) + delta_{j3} e_l".into(),
                residual: (got - want).norm(),
            });
        }
    }
    for l in 0..3 {
        for j in 3..8 {
            let surf = surface(3, 8, j, l, j, l)?;
            let got = second_nabla(&sec, &surf, cfg)?;
            let want = expected_sigma3_dd_repeat(j);
            out.push(LemmaCase {
                family: "sigma3.second-derivative.repeated",
                outer: Some((j, l)),
                inner: (j, l),
                expected: "(delta_{j3} - 1) e3".into(),
                residual: (got - want).norm(),
            });
        }
    }
    for l in 0..3 {
        for i in 3..8 {
            for j in 3..8 {
                if i == j {
                    continue;
                }
                let surf = surface(3, 8, i, l, j, l)?;
                let got = second_nabla(&sec, &surf, cfg)?;
                let want = expected_sigma3_dd_shared(i, j);
                out.push(LemmaCase {
                    family: "sigma3.second-derivative.shared-column",
                    outer: Some((i, l)),
                    inner: (j, l),
                    expected: "delta_{j3} e_i".into(),
                    residual: (got - want).norm(),
                });
            }
        }
    }
    for k in 0..3 {
        for l in 0..3 {
            if k == l {
                continue;
            }
            for i in 3..8 {
                for j in 3..8 {
                    let surf = surface(3, 8, i, k, j, l)?;
                    let got = second_nabla(&sec, &surf, cfg)?;
                    let want = expected_sigma3_dd_distinct(i, k, j, l);
                    out.push(LemmaCase {
                        family: "sigma3.second-derivative.distinct-columns",
                        outer: Some((i, k)),
                        inner: (j, l),
                        expected: "r_{k,l} (id - e_k e^k - e_l e^l) X(e_i, e_j, e_m)".into(),
                        residual: (got - want).norm(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Curvature table of `sigma3` for all index combinations.
pub fn sigma3_curvature_cases(cfg: &DiffCfg) -> Result<Vec<LemmaCase>> {
    let sec = sigma3();
    let mut out = Vec::new();
    for k in 0..3 {
        for l in 0..3 {
            for i in 3..8 {
                for j in 3..8 {
                    let got = curvature_basis(&sec, i, k, j, l, cfg)?;
                    let want = expected_sigma3_curvature(i, k, j, l);
                    let family = if k == l {
                        "sigma3.curvature.shared-column"
                    } else {
                        "sigma3.curvature.distinct-columns"
                    };
                    out.push(LemmaCase {
                        family,
                        outer: Some((i, k)),
                        inner: (j, l),
                        expected: if k == l {
                            "delta_{i3} e_j - delta_{j3} e_i".into()
                        } else {
                            "0".into()
                        },
                        residual: (got - want).norm(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Reproduces every closed-form value for `J`.
pub fn j_cases(cfg: &DiffCfg) -> Result<Vec<LemmaCase>> {
    let sec = section_j();
    let base = sec.base_point();
    let mut out = Vec::new();
    for l in 0..2 {
        for j in 2..8 {
            let dir = basis_tangent(2, 8, l, j)?;
            let got = nabla(&sec, &base, &dir, cfg)?;
            let want = SkewOp(expected_j_nabla(l, j));
            out.push(LemmaCase {
                family: "J.first-derivative",
                outer: None,
                inner: (j, l),
                expected: "(-1)^l (J' - (e_l e^l). J')".into(),
                residual: (got.matrix() - want.matrix()).norm(),
            });
        }
    }
    for l in 0..2 {
        for j in 2..8 {
            let surf = surface(2, 8, j, l, j, l)?;
            let got = second_nabla(&sec, &surf, cfg)?;
            let want = expected_j_dd_repeat(j);
            out.push(LemmaCase {
                family: "J.second-derivative.repeated",
                outer: Some((j, l)),
                inner: (j, l),
                expected: "-J0 + (e_j e^j) . J0".into(),
                residual: (got.matrix() - want).norm(),
            });
        }
    }
    for l in 0..2 {
        for i in 2..8 {
            for j in 2..8 {
                if i == j {
                    continue;
                }
                let surf = surface(2, 8, i, l, j, l)?;
                let got = second_nabla(&sec, &surf, cfg)?;
                let want = expected_j_dd_shared(i, j);
                out.push(LemmaCase {
                    family: "J.second-derivative.shared-column",
                    outer: Some((i, l)),
                    inner: (j, l),
                    expected: "(e_i e^j) J0 + J0 (e_j e^i)".into(),
                    residual: (got.matrix() - want).norm(),
                });
            }
        }
    }
    for l in 0..2 {
        for i in 2..8 {
            for j in 2..8 {
                let surf = surface(2, 8, i, (l + 1) % 2, j, l)?;
                let got = second_nabla(&sec, &surf, cfg)?;
                let want = expected_j_dd_distinct(l, i, j);
                out.push(LemmaCase {
                    family: "J.second-derivative.distinct-columns",
                    outer: Some((i, (l + 1) % 2)),
                    inner: (j, l),
                    expected: "(-1)^{l+1} pi0 J_{e_i ^ e_j} pi0".into(),
                    residual: (got.matrix() - want).norm(),
                });
            }
        }
    }
    Ok(out)
}

/// Curvature table of `J` for all index combinations.
pub fn j_curvature_cases(cfg: &DiffCfg) -> Result<Vec<LemmaCase>> {
    let sec = section_j();
    let mut out = Vec::new();
    for k in 0..2 {
        for l in 0..2 {
            for i in 2..8 {
                for j in 2..8 {
                    let got = curvature_basis(&sec, i, k, j, l, cfg)?;
                    let want = expected_j_curvature(i, k, j, l);
                    let family = if k == l {
                        "J.curvature.shared-column"
                    } else {
                        "J.curvature.distinct-columns"
                    };
                    out.push(LemmaCase {
                        family,
                        outer: Some((i, k)),
                        inner: (j, l),
                        expected: if k == l {
                            "[J0, A^{i,j}]".into()
                        } else {
                            "0".into()
                        },
                        residual: (got.matrix() - want).norm(),
                    });
                }
            }
        }
    }
    Ok(out)
}
