//! The distinguished unit sections: `sigma2` on `G(2,7)`, `sigma3` on
//! `G(3,8)`, the orthogonal-complex-structure section `J` on `G(2,8)`,
//! plus the Hopf field (the `(1,2m)` cross-product case) and the `S^6`
//! almost complex structure (the `(1,7)` case).
//!
//! Every section evaluates through the cross products, so it is invariant
//! under right `SO(k)` change of frame: two frames of the same oriented
//! subspace produce identical fiber values.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::bundles::{Fiber, SkewOp};
use crate::grassmann::OrientedSubspace;
use crate::octonion::{cross2, cross3, Octonion};
use crate::{Error, Result};

/// A section of one of the sphere bundles: a named evaluator attached to
/// its domain `G(k,n)`.
#[derive(Clone)]
pub struct Section<F: Fiber> {
    name: String,
    k: usize,
    n: usize,
    eval: Arc<dyn Fn(&OrientedSubspace) -> F + Send + Sync>,
}

impl<F: Fiber> Section<F> {
    pub fn from_fn(
        name: impl Into<String>,
        k: usize,
        n: usize,
        eval: impl Fn(&OrientedSubspace) -> F + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            k,
            n,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the base manifold, `k (n - k)`.
    pub fn dim_base(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// Evaluates the fiber value at a point.
    pub fn value(&self, p: &OrientedSubspace) -> F {
        assert_eq!(
            (p.k(), p.n()),
            (self.k, self.n),
            "section {} lives on G({},{}), got a point of G({},{})",
            self.name,
            self.k,
            self.n,
            p.k(),
            p.n()
        );
        (self.eval)(p)
    }

    /// The canonical base point of the domain.
    pub fn base_point(&self) -> OrientedSubspace {
        OrientedSubspace::base_point(self.k, self.n)
    }
}

fn column_octonion(p: &OrientedSubspace, c: usize) -> Octonion {
    let col = p.frame().column(c);
    if p.n() == 8 {
        let mut coeffs = [0.0; 8];
        for i in 0..8 {
            coeffs[i] = col[i];
        }
        Octonion::new(coeffs)
    } else {
        debug_assert_eq!(p.n(), 7, "octonion sections live on R^7 or R^8");
        let mut v = [0.0; 7];
        for i in 0..7 {
            v[i] = col[i];
        }
        Octonion::from_imaginary(&v)
    }
}

fn octonion_to_r7(o: &Octonion) -> DVector<f64> {
    DVector::from_row_slice(&o.imaginary())
}

fn octonion_to_r8(o: &Octonion) -> DVector<f64> {
    DVector::from_row_slice(&o.coeffs)
}

/// `sigma2(u ^ v) = u x v` on `G(2,7)`, `R^7` identified with the
/// imaginary octonions.
pub fn sigma2() -> Section<DVector<f64>> {
    Section::from_fn("sigma2", 2, 7, |p| {
        let u = column_octonion(p, 0);
        let v = column_octonion(p, 1);
        let x = cross2(&u, &v).expect("frame columns of G(2,7) are imaginary");
        octonion_to_r7(&x)
    })
}

/// `sigma3(u ^ v ^ w) = X(u,v,w)` on `G(3,8)`.
pub fn sigma3() -> Section<DVector<f64>> {
    Section::from_fn("sigma3", 3, 8, |p| {
        let u = column_octonion(p, 0);
        let v = column_octonion(p, 1);
        let w = column_octonion(p, 2);
        octonion_to_r8(&cross3(&u, &v, &w))
    })
}

/// The matrix of `w -> X(u, v, w)` for a pair of octonions.
pub fn j_operator(u: &Octonion, v: &Octonion) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(8, 8);
    for c in 0..8 {
        let col = cross3(u, v, &Octonion::e(c));
        for r in 0..8 {
            m[(r, c)] = col.coeffs[r];
        }
    }
    m
}

/// The matrix of `w -> X(e_a, e_b, w)` for basis octonions; the operator
/// `J_{e_a ^ e_b}`.
pub fn j_basis(a: usize, b: usize) -> DMatrix<f64> {
    j_operator(&Octonion::e(a), &Octonion::e(b))
}

/// The section `J(u ^ v) = X(u, v, .)` on `G(2,8)`: an orthogonal complex
/// structure on the orthogonal complement of each plane, of unit
/// `(1/6)`-trace norm.
pub fn section_j() -> Section<SkewOp> {
    Section::from_fn("J", 2, 8, |p| {
        let u = column_octonion(p, 0);
        let v = column_octonion(p, 1);
        SkewOp(j_operator(&u, &v))
    })
}

/// Standard block-diagonal complex structure on `R^{2m}` pairing
/// consecutive coordinates `(e_{2i}, e_{2i+1})`.
pub fn standard_complex_structure(m: usize) -> DMatrix<f64> {
    let n = 2 * m;
    let mut j = DMatrix::zeros(n, n);
    for i in 0..m {
        j[(2 * i + 1, 2 * i)] = 1.0;
        j[(2 * i, 2 * i + 1)] = -1.0;
    }
    j
}

/// The Hopf field as a normal section of `G(1,2m)`: `p -> J_std p`, a
/// unit vector orthogonal to `p`.
pub fn hopf(m: usize) -> Section<DVector<f64>> {
    assert!(m >= 2, "hopf needs 2m >= 4");
    let j = standard_complex_structure(m);
    Section::from_fn(format!("hopf{}", 2 * m), 1, 2 * m, move |p| &j * p.column(0))
}

/// The Hopf field applied to a single unit vector.
pub fn hopf_vector(m: usize, p: &DVector<f64>) -> DVector<f64> {
    standard_complex_structure(m) * p
}

/// The canonical almost complex structure of `S^6`, packaged as a
/// skew-operator section over `G(1,7)`: `u -> (v -> u x v)`, a 7-by-7
/// skew matrix vanishing on `span(u)` that squares to minus the identity
/// on `u`-perp.
pub fn acs6() -> Section<SkewOp> {
    Section::from_fn("acs6", 1, 7, |p| {
        let u = column_octonion(p, 0);
        let mut mat = DMatrix::zeros(7, 7);
        for c in 0..7 {
            let mut basis = [0.0; 7];
            basis[c] = 1.0;
            let v = Octonion::from_imaginary(&basis);
            let col = cross2(&u, &v).expect("imaginary inputs").imaginary();
            for r in 0..7 {
                mat[(r, c)] = col[r];
            }
        }
        SkewOp(mat)
    })
}

/// A section of either bundle kind, addressable by name.
pub enum AnySection {
    Normal(Section<DVector<f64>>),
    Skew(Section<SkewOp>),
}

/// Looks up the distinguished sections by name: `sigma2`, `sigma3`, `J`,
/// `hopf` (the `R^4` Hopf field) and `acs6`.
pub fn by_name(name: &str) -> Result<AnySection> {
    match name {
        "sigma2" => Ok(AnySection::Normal(sigma2())),
        "sigma3" => Ok(AnySection::Normal(sigma3())),
        "J" => Ok(AnySection::Skew(section_j())),
        "hopf" => Ok(AnySection::Normal(hopf(2))),
        "acs6" => Ok(AnySection::Skew(acs6())),
        other => Err(Error::UnknownSection(other.to_string())),
    }
}

/// Residual of frame invariance: evaluates the section on `frame * r` and
/// on `frame` and returns the difference norm. Zero (up to round-off) for
/// a well-defined section and `r` in `SO(k)`.
pub fn frame_invariance_residual<F: Fiber>(
    section: &Section<F>,
    p: &OrientedSubspace,
    r: &DMatrix<f64>,
) -> Result<f64> {
    let rotated = p.rotate_frame(r)?;
    Ok(section.value(&rotated).sub(&section.value(p)).norm())
}
