//! Points, tangent vectors, geodesics and parametrized geodesic surfaces
//! of the oriented Grassmannian `G(k,n)`.
//!
//! A point is an n-by-k column-orthonormal frame; the column order fixes
//! the orientation. `G(k,n)` carries the normal homogeneous metric of
//! `SO(n)/(SO(k) x SO(n-k))`, normalized so that the tangent basis
//! `e_j^l = e_j (x) e^l - e_l (x) e^j` is orthonormal, i.e.
//! `<A,B> = tr(A^t B) / 2` on the Cartan complement.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

/// Residual below which a frame counts as column-orthonormal.
pub const FRAME_TOL: f64 = 1e-12;

/// Tolerance for deciding that two frames span the same oriented point.
pub const POINT_TOL: f64 = 1e-9;

/// An oriented k-dimensional subspace of `R^n`, represented by an
/// orthonormal frame. Two frames represent the same point exactly when
/// they differ by right multiplication by an element of `SO(k)`.
#[derive(Debug, Clone)]
pub struct OrientedSubspace {
    frame: DMatrix<f64>,
}

impl OrientedSubspace {
    /// Wraps a column-orthonormal n-by-k frame.
    pub fn new(frame: DMatrix<f64>) -> Result<Self> {
        let k = frame.ncols();
        let n = frame.nrows();
        if k == 0 || k >= n {
            return Err(Error::DimensionMismatch(format!(
                "need 0 < k < n, got k={k}, n={n}"
            )));
        }
        let gram = frame.transpose() * &frame;
        let residual = (&gram - DMatrix::identity(k, k)).abs().max();
        if residual > FRAME_TOL {
            return Err(Error::NotOrthonormal(residual));
        }
        Ok(Self { frame })
    }

    /// The canonical base point `e0 ^ ... ^ e_{k-1}`.
    pub fn base_point(k: usize, n: usize) -> Self {
        let mut frame = DMatrix::zeros(n, k);
        for c in 0..k {
            frame[(c, c)] = 1.0;
        }
        Self { frame }
    }

    /// Builds a point of `G(k,n)` from column vectors, orthonormalizing is
    /// not performed; the columns must already be orthonormal.
    pub fn from_columns(cols: &[DVector<f64>]) -> Result<Self> {
        let n = cols[0].len();
        let mut frame = DMatrix::zeros(n, cols.len());
        for (c, v) in cols.iter().enumerate() {
            frame.set_column(c, v);
        }
        Self::new(frame)
    }

    pub fn n(&self) -> usize {
        self.frame.nrows()
    }

    pub fn k(&self) -> usize {
        self.frame.ncols()
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    pub fn column(&self, c: usize) -> DVector<f64> {
        self.frame.column(c).into_owned()
    }

    /// Orthogonal projection of `R^n` onto the orthogonal complement of
    /// the subspace: `pi_P = I - F F^t`. Idempotent, symmetric, rank n-k.
    pub fn projector_perp(&self) -> DMatrix<f64> {
        DMatrix::identity(self.n(), self.n()) - &self.frame * self.frame.transpose()
    }

    /// Orthogonal projection onto the subspace itself, `F F^t`.
    pub fn projector_onto(&self) -> DMatrix<f64> {
        &self.frame * self.frame.transpose()
    }

    /// Oriented point equality: the unoriented subspaces coincide
    /// (projectors match) and the orientations agree
    /// (`det(F^t G) > 0`).
    pub fn same_point(&self, other: &Self) -> bool {
        if self.n() != other.n() || self.k() != other.k() {
            return false;
        }
        let proj_diff = (self.projector_onto() - other.projector_onto()).abs().max();
        if proj_diff >= POINT_TOL {
            return false;
        }
        (self.frame.transpose() * other.frame()).determinant() > 0.0
    }

    /// Rotates the frame on the right by `r` (k-by-k). For `r` in `SO(k)`
    /// this does not change the point.
    pub fn rotate_frame(&self, r: &DMatrix<f64>) -> Result<Self> {
        Self::new(&self.frame * r)
    }

    /// Completes the frame to a rotation `g = [F | F_perp]` in `SO(n)`
    /// whose first k columns are exactly the frame columns. Deterministic.
    pub fn adapted_rotation(&self) -> DMatrix<f64> {
        let n = self.n();
        let k = self.k();
        let mut cols: Vec<DVector<f64>> = (0..k).map(|c| self.column(c)).collect();
        for i in 0..n {
            if cols.len() == n {
                break;
            }
            let mut v = DVector::zeros(n);
            v[i] = 1.0;
            for u in &cols {
                let c = u.dot(&v);
                v -= u * c;
            }
            let norm = v.norm();
            if norm > 0.3 {
                // Re-orthogonalize once for numerical cleanliness.
                v /= norm;
                for u in &cols {
                    let c = u.dot(&v);
                    v -= u * c;
                }
                v /= v.norm();
                cols.push(v);
            }
        }
        debug_assert_eq!(cols.len(), n);
        let mut g = DMatrix::zeros(n, n);
        for (c, v) in cols.iter().enumerate() {
            g.set_column(c, v);
        }
        if g.determinant() < 0.0 {
            let last = n - 1;
            let col = -g.column(last);
            g.set_column(last, &col);
        }
        g
    }
}

/// A tangent vector of `G(k,n)`, stored as an n-by-n skew matrix in the
/// Cartan complement at its base point: it maps the subspace into its
/// orthogonal complement and vice versa.
#[derive(Debug, Clone)]
pub struct TangentVector {
    pub base: OrientedSubspace,
    pub mat: DMatrix<f64>,
}

impl TangentVector {
    pub fn new(base: OrientedSubspace, mat: DMatrix<f64>) -> Result<Self> {
        let skew_res = (&mat + mat.transpose()).abs().max();
        if skew_res > 1e-12 {
            return Err(Error::NotSkew(skew_res));
        }
        let block = base.frame().transpose() * &mat * base.frame();
        let res = block.abs().max();
        if res > 1e-10 {
            return Err(Error::FiberConstraint(res));
        }
        Ok(Self { base, mat })
    }

    /// Metric on the tangent space: `<A,B> = tr(A^t B) / 2`, the unique
    /// scaling making the basis `e_j^l` orthonormal.
    pub fn inner(&self, other: &Self) -> f64 {
        (self.mat.transpose() * &other.mat).trace() / 2.0
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            base: self.base.clone(),
            mat: &self.mat * c,
        }
    }
}

/// The skew basis matrix `e_a (x) e^b - e_b (x) e^a` (entry +1 at row a,
/// column b).
pub fn skew_unit(n: usize, a: usize, b: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    if a != b {
        m[(a, b)] = 1.0;
        m[(b, a)] = -1.0;
    }
    m
}

/// The tangent basis vector `e_j^l = e_j (x) e^l - e_l (x) e^j` at the
/// canonical base point of `G(k,n)`, for `0 <= l < k <= j < n`.
pub fn basis_tangent(k: usize, n: usize, l: usize, j: usize) -> Result<TangentVector> {
    if l >= k || j < k || j >= n {
        return Err(Error::IndexOutOfRange(format!(
            "basis_tangent needs 0 <= l < k <= j < n, got l={l}, j={j}, k={k}, n={n}"
        )));
    }
    TangentVector::new(OrientedSubspace::base_point(k, n), skew_unit(n, j, l))
}

/// Orthonormal tangent basis at an arbitrary point: the canonical basis
/// conjugated by the adapted rotation `g = [F | F_perp]`.
pub fn tangent_basis(p: &OrientedSubspace) -> Vec<TangentVector> {
    let g = p.adapted_rotation();
    let gt = g.transpose();
    let mut out = Vec::with_capacity(p.k() * (p.n() - p.k()));
    for l in 0..p.k() {
        for j in p.k()..p.n() {
            let mat = &g * skew_unit(p.n(), j, l) * &gt;
            out.push(TangentVector {
                base: p.clone(),
                mat,
            });
        }
    }
    out
}

/// The geodesic `gamma_j^l(t)`: the base-point frame with column `l`
/// replaced by `cos t e_l + sin t e_j`. Unit speed, with initial velocity
/// `e_j^l`.
pub fn geodesic(k: usize, n: usize, l: usize, j: usize, t: f64) -> Result<OrientedSubspace> {
    if l >= k || j < k || j >= n {
        return Err(Error::IndexOutOfRange(format!(
            "geodesic needs 0 <= l < k <= j < n, got l={l}, j={j}, k={k}, n={n}"
        )));
    }
    let mut frame = DMatrix::zeros(n, k);
    for c in 0..k {
        if c == l {
            frame[(l, c)] = t.cos();
            frame[(j, c)] = t.sin();
        } else {
            frame[(c, c)] = 1.0;
        }
    }
    Ok(OrientedSubspace { frame })
}

/// Closed-form exponential of `t * skew_unit(n, a, b)`: the rotation by
/// angle t in the coordinate 2-plane `span{e_a, e_b}`.
pub fn plane_rotation(n: usize, a: usize, b: usize, t: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(n, n);
    m[(a, a)] = t.cos();
    m[(b, b)] = t.cos();
    m[(a, b)] = t.sin();
    m[(b, a)] = -t.sin();
    m
}

/// Matrix exponential of a skew matrix, by scaling and squaring with Pade
/// approximation.
pub fn expm(mat: &DMatrix<f64>) -> DMatrix<f64> {
    mat.clone().exp()
}

/// Applies the one-parameter rotation group of `z` to a point:
/// `P -> exp(t Z) P` column by column. The result is re-orthonormalized
/// only to absorb round-off.
pub fn exp_action(z: &TangentVector, t: f64, p: &OrientedSubspace) -> OrientedSubspace {
    let rot = expm(&(&z.mat * t));
    let frame = rot * p.frame();
    OrientedSubspace {
        frame: orthonormalize(frame),
    }
}

/// Modified Gram-Schmidt with positive normalization: never flips column
/// signs, so the oriented point is unchanged for near-orthonormal input.
fn orthonormalize(mut frame: DMatrix<f64>) -> DMatrix<f64> {
    let k = frame.ncols();
    for c in 0..k {
        let mut v = frame.column(c).into_owned();
        for prev in 0..c {
            let u = frame.column(prev);
            let coef = u.dot(&v);
            v -= u * coef;
        }
        v /= v.norm();
        frame.set_column(c, &v);
    }
    frame
}

/// The parametrized geodesic surface `P_{t,s} = exp(t A) exp(s B) P`.
///
/// For the canonical choices `A = e_i^kk`, `B = e_j^l` at the base point
/// this is the surface `exp(t e_i^kk) gamma_j^l(s)` whose frames have
/// closed trigonometric form.
#[derive(Debug, Clone)]
pub struct GeodesicSurface {
    pub base: OrientedSubspace,
    pub outer: TangentVector,
    pub inner: TangentVector,
    /// Canonical index quadruple `(i, k, j, l)` when built from basis
    /// directions at the base point.
    pub indices: Option<(usize, usize, usize, usize)>,
}

impl GeodesicSurface {
    /// Surface through an arbitrary point along two tangent directions.
    pub fn from_directions(
        base: OrientedSubspace,
        outer: TangentVector,
        inner: TangentVector,
    ) -> Self {
        Self {
            base,
            outer,
            inner,
            indices: None,
        }
    }

    /// Evaluates the surface at `(t, s)`.
    pub fn at(&self, t: f64, s: f64) -> OrientedSubspace {
        let inner_pt = exp_action(&self.inner, s, &self.base);
        exp_action(&self.outer, t, &inner_pt)
    }
}

/// The canonical surface `P_{t,s} = exp(t e_i^kk) gamma_j^l(s)` on
/// `G(k,n)`, with `kk, l < k <= i, j < n`.
pub fn surface(
    k: usize,
    n: usize,
    i: usize,
    kk: usize,
    j: usize,
    l: usize,
) -> Result<GeodesicSurface> {
    let outer = basis_tangent(k, n, kk, i)?;
    let inner = basis_tangent(k, n, l, j)?;
    Ok(GeodesicSurface {
        base: OrientedSubspace::base_point(k, n),
        outer,
        inner,
        indices: Some((i, kk, j, l)),
    })
}

/// Haar-distributed random point of `G(k,n)`: Gram-Schmidt applied to an
/// n-by-k matrix of independent standard Gaussians. Redraws in the
/// (measure-zero) degenerate case.
pub fn random_point(n: usize, k: usize, rng: &mut ChaCha8Rng) -> OrientedSubspace {
    assert!(k < n, "random_point needs k < n");
    loop {
        let mut m = DMatrix::zeros(n, k);
        for c in 0..k {
            for r in 0..n {
                m[(r, c)] = Distribution::<f64>::sample(&StandardNormal, rng);
            }
        }
        if let Some(p) = try_orthonormalize(m) {
            return p;
        }
    }
}

/// Seeded convenience wrapper around [`random_point`].
pub fn random_point_seeded(n: usize, k: usize, seed: u64) -> OrientedSubspace {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_point(n, k, &mut rng)
}

fn try_orthonormalize(mut m: DMatrix<f64>) -> Option<OrientedSubspace> {
    let k = m.ncols();
    for c in 0..k {
        let mut v = m.column(c).into_owned();
        for prev in 0..c {
            let u = m.column(prev);
            let coef = u.dot(&v);
            v -= u * coef;
        }
        let norm = v.norm();
        if norm < 1e-8 {
            return None;
        }
        v /= norm;
        // Second pass: full precision orthogonality.
        for prev in 0..c {
            let u = m.column(prev);
            let coef = u.dot(&v);
            v -= u * coef;
        }
        v /= v.norm();
        m.set_column(c, &v);
    }
    Some(OrientedSubspace { frame: m })
}

/// Random rotation in `SO(k)`, for frame-invariance tests.
pub fn random_so(k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    loop {
        let mut m = DMatrix::zeros(k, k);
        for c in 0..k {
            for r in 0..k {
                m[(r, c)] = Distribution::<f64>::sample(&StandardNormal, rng);
            }
        }
        if let Some(p) = try_orthonormalize_square(m) {
            return p;
        }
    }
}

fn try_orthonormalize_square(mut m: DMatrix<f64>) -> Option<DMatrix<f64>> {
    let k = m.ncols();
    for c in 0..k {
        let mut v = m.column(c).into_owned();
        for prev in 0..c {
            let u = m.column(prev);
            let coef = u.dot(&v);
            v -= u * coef;
        }
        let norm = v.norm();
        if norm < 1e-8 {
            return None;
        }
        v /= norm;
        m.set_column(c, &v);
    }
    if m.determinant() < 0.0 {
        let col = -m.column(0);
        m.set_column(0, &col);
    }
    Some(m)
}

/// Uniform random unit vector in `R^n`.
pub fn random_unit_vector(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| Distribution::<f64>::sample(&StandardNormal, rng));
        let norm = v.norm();
        if norm > 1e-8 {
            return v / norm;
        }
    }
}

/// Gaussian random n-by-m matrix.
pub fn random_matrix(n: usize, m: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    DMatrix::from_fn(n, m, |_, _| Distribution::<f64>::sample(&StandardNormal, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn projector_of_coordinate_subspace() {
        let p = OrientedSubspace::base_point(3, 8);
        let pi = p.projector_perp();
        for i in 0..8 {
            let want = if i < 3 { 0.0 } else { 1.0 };
            assert_eq!(pi[(i, i)], want);
        }
        assert_eq!(pi.abs().sum(), 5.0);
    }

    #[test]
    fn projector_idempotent_and_rank() {
        let p = random_point_seeded(8, 3, 11);
        let pi = p.projector_perp();
        assert!(((&pi * &pi) - &pi).abs().max() < 1e-13);
        assert!((pi.trace() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn basis_tangent_entries_and_norms() {
        let t = basis_tangent(3, 8, 0, 3).unwrap();
        assert_eq!(t.mat[(3, 0)], 1.0);
        assert_eq!(t.mat[(0, 3)], -1.0);
        assert_eq!(t.mat.abs().sum(), 2.0);
        assert!((t.norm() - 1.0).abs() < 1e-15);
        let u = basis_tangent(3, 8, 1, 4).unwrap();
        assert_eq!(t.inner(&u), 0.0);
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        for (k, n) in [(3, 8), (2, 8), (2, 7)] {
            let basis = tangent_basis(&OrientedSubspace::base_point(k, n));
            assert_eq!(basis.len(), k * (n - k));
            for (a, ta) in basis.iter().enumerate() {
                for (b, tb) in basis.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((ta.inner(tb) - want).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn tangent_basis_at_random_point() {
        let p = random_point_seeded(8, 3, 5);
        let basis = tangent_basis(&p);
        for (a, ta) in basis.iter().enumerate() {
            // Skew, maps P into P-perp.
            assert!((&ta.mat + ta.mat.transpose()).abs().max() < 1e-12);
            assert!((p.frame().transpose() * &ta.mat * p.frame()).abs().max() < 1e-12);
            for (b, tb) in basis.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ta.inner(tb) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn geodesic_examples() {
        let base = OrientedSubspace::base_point(3, 8);
        assert!(geodesic(3, 8, 0, 3, 0.0).unwrap().same_point(&base));

        // Quarter turn moves e0 onto e3.
        let q = geodesic(3, 8, 0, 3, std::f64::consts::FRAC_PI_2).unwrap();
        let want = OrientedSubspace::from_columns(&[
            DVector::from_fn(8, |i, _| if i == 3 { 1.0 } else { 0.0 }),
            DVector::from_fn(8, |i, _| if i == 1 { 1.0 } else { 0.0 }),
            DVector::from_fn(8, |i, _| if i == 2 { 1.0 } else { 0.0 }),
        ])
        .unwrap();
        assert!(q.same_point(&want));

        // G(2,8): gamma_2^1(t) = e0 ^ (cos t e1 + sin t e2).
        let g = geodesic(2, 8, 1, 2, 0.7).unwrap();
        assert_eq!(g.frame()[(0, 0)], 1.0);
        assert!((g.frame()[(1, 1)] - 0.7f64.cos()).abs() < 1e-15);
        assert!((g.frame()[(2, 1)] - 0.7f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn orientation_sensitive_equality() {
        // gamma_3^0(pi) has frame (-e0, e1, e2): same unoriented subspace
        // as the base point but opposite orientation in coordinate 0.
        let p = geodesic(3, 8, 0, 3, std::f64::consts::PI).unwrap();
        let base = OrientedSubspace::base_point(3, 8);
        assert!(!p.same_point(&base));
        let mut flipped = base.frame().clone();
        flipped[(0, 0)] = -1.0;
        let flipped = OrientedSubspace::new(flipped).unwrap();
        assert!(p.same_point(&flipped));
    }

    #[test]
    fn exp_action_matches_geodesic() {
        let base = OrientedSubspace::base_point(3, 8);
        let z = basis_tangent(3, 8, 1, 5).unwrap();
        for i in -6..=6 {
            let t = i as f64 * std::f64::consts::PI / 6.0;
            let via_exp = exp_action(&z, t, &base);
            let closed = geodesic(3, 8, 1, 5, t).unwrap();
            let diff = (via_exp.frame() - closed.frame()).abs().max();
            assert!(diff < 1e-10, "t={t}: frame residual {diff}");
        }
    }

    #[test]
    fn exp_action_identity_and_period() {
        let p = random_point_seeded(8, 3, 3);
        let z = tangent_basis(&p)[4].clone();
        assert!(exp_action(&z, 0.0, &p).same_point(&p));
        let base = OrientedSubspace::base_point(3, 8);
        let e30 = basis_tangent(3, 8, 0, 3).unwrap();
        let looped = exp_action(&e30, 2.0 * std::f64::consts::PI, &base);
        assert!(looped.same_point(&base));
    }

    #[test]
    fn expm_agrees_with_plane_rotation() {
        for t in [-1.3, -0.2, 0.0, 0.4, 2.9] {
            let closed = plane_rotation(8, 5, 1, t);
            let pade = expm(&(skew_unit(8, 5, 1) * t));
            assert!((closed - pade).abs().max() < 1e-12);
        }
    }

    #[test]
    fn surface_collapses_to_geodesic_when_directions_match() {
        let s = surface(3, 8, 3, 0, 3, 0).unwrap();
        for (t, u) in [(0.3, 0.5), (-0.7, 0.2), (1.1, -0.4)] {
            let p = s.at(t, u);
            let g = geodesic(3, 8, 0, 3, t + u).unwrap();
            assert!((p.frame() - g.frame()).abs().max() < 1e-12);
        }
    }

    #[test]
    fn surface_closed_form_same_plane() {
        // exp(t e_i^l) gamma_j^l(s) with i != j has first frame column
        // cos t cos s e_l + sin t cos s e_i + sin s e_j.
        let (i, l, j) = (4, 0, 5);
        let s = surface(3, 8, i, l, j, l).unwrap();
        let (t, u) = (0.6, -0.35);
        let p = s.at(t, u);
        let mut col0 = DVector::zeros(8);
        col0[l] = t.cos() * u.cos();
        col0[i] = t.sin() * u.cos();
        col0[j] = u.sin();
        assert!((p.column(0) - col0).abs().max() < 1e-12);
        assert!((p.column(1) - DVector::from_fn(8, |r, _| if r == 1 { 1.0 } else { 0.0 }))
            .abs()
            .max()
            < 1e-12);
        assert_eq!(s.at(0.0, 0.0).frame(), OrientedSubspace::base_point(3, 8).frame());
    }

    #[test]
    fn random_point_is_orthonormal_and_seed_dependent() {
        let p = random_point_seeded(8, 3, 17);
        let gram = p.frame().transpose() * p.frame();
        assert!((gram - DMatrix::identity(3, 3)).abs().max() < 1e-12);
        let q = random_point_seeded(8, 3, 18);
        assert!(!p.same_point(&q));
    }

    #[test]
    fn random_point_mean_projector() {
        // Invariance of the construction under O(n): the mean of F F^t
        // over the invariant measure is (k/n) I. 1e5 samples, each entry
        // within 3 standard errors.
        let (n, k, samples) = (8, 3, 100_000);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut mean = DMatrix::<f64>::zeros(n, n);
        let mut m2 = DMatrix::<f64>::zeros(n, n);
        for idx in 0..samples {
            let p = random_point(n, k, &mut rng);
            let proj = p.projector_onto();
            // Welford update, entrywise.
            let count = (idx + 1) as f64;
            let delta = &proj - &mean;
            mean += &delta / count;
            m2 += delta.component_mul(&(&proj - &mean));
        }
        let target = k as f64 / n as f64;
        for r in 0..n {
            for c in 0..n {
                let sd = (m2[(r, c)] / (samples as f64 - 1.0)).sqrt();
                let se = sd / (samples as f64).sqrt();
                let want = if r == c { target } else { 0.0 };
                let dev = (mean[(r, c)] - want).abs();
                assert!(
                    dev <= 3.0 * se,
                    "entry ({r},{c}): dev {dev:.2e} vs 3se {:.2e}",
                    3.0 * se
                );
            }
        }
    }

    #[test]
    fn adapted_rotation_extends_frame() {
        let p = random_point_seeded(8, 3, 23);
        let g = p.adapted_rotation();
        assert!((g.transpose() * &g - DMatrix::identity(8, 8)).abs().max() < 1e-12);
        assert!((g.determinant() - 1.0).abs() < 1e-10);
        for c in 0..3 {
            assert!((g.column(c) - p.frame().column(c)).abs().max() < 1e-13);
        }
    }

    #[test]
    fn index_validation() {
        assert!(basis_tangent(3, 8, 3, 4).is_err());
        assert!(basis_tangent(3, 8, 0, 2).is_err());
        assert!(geodesic(3, 8, 0, 8, 0.1).is_err());
    }
}
