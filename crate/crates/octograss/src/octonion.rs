//! Exact octonion arithmetic over `R^8` and the double/triple cross
//! products.
//!
//! The octonions are Euclidean `R^8` with the canonical inner product and
//! the bilinear multiplication generated on the basis `e0..e7` by
//!
//! ```text
//! e0 ei = ei e0 = ei,      ei ej = -delta_ij e0 + eps_ijk ek   (i,j,k >= 1)
//! ```
//!
//! where `eps` is the completely antisymmetric tensor with value `+1` on
//! `123, 145, 176, 246, 257, 347, 365`. Everything here is exact over
//! machine reals: no tolerances enter until numerical differentiation
//! downstream.

use std::sync::OnceLock;

use crate::{Error, Result};

/// The seven index triples on which the epsilon tensor equals `+1`.
pub const POSITIVE_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// Fully expanded antisymmetric tensor `eps_ijk`, `1 <= i,j,k <= 7`.
///
/// Stored as all 343 entries, generated from [`POSITIVE_TRIPLES`] by
/// antisymmetry; zero elsewhere. Index with [`EpsilonTable::get`].
#[derive(Debug, Clone)]
pub struct EpsilonTable {
    entries: [i8; 343],
}

impl EpsilonTable {
    /// Expands the seven positive triples into all 343 entries.
    pub fn new() -> Self {
        let mut entries = [0i8; 343];
        for t in POSITIVE_TRIPLES {
            // All six permutations of a positive triple, with the
            // permutation sign.
            let perms: [([usize; 3], i8); 6] = [
                ([t[0], t[1], t[2]], 1),
                ([t[1], t[2], t[0]], 1),
                ([t[2], t[0], t[1]], 1),
                ([t[1], t[0], t[2]], -1),
                ([t[0], t[2], t[1]], -1),
                ([t[2], t[1], t[0]], -1),
            ];
            for (p, sign) in perms {
                entries[Self::flat(p[0], p[1], p[2])] = sign;
            }
        }
        Self { entries }
    }

    #[inline]
    fn flat(i: usize, j: usize, k: usize) -> usize {
        debug_assert!((1..=7).contains(&i) && (1..=7).contains(&j) && (1..=7).contains(&k));
        (i - 1) * 49 + (j - 1) * 7 + (k - 1)
    }

    /// `eps_ijk` for `1 <= i,j,k <= 7`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.entries[Self::flat(i, j, k)]
    }

    /// Iterator over `((i,j,k), eps_ijk)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), i8)> + '_ {
        (1..=7).flat_map(move |i| {
            (1..=7).flat_map(move |j| (1..=7).map(move |k| ((i, j, k), self.get(i, j, k))))
        })
    }
}

impl Default for EpsilonTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Shared epsilon table.
pub fn epsilon() -> &'static EpsilonTable {
    static TABLE: OnceLock<EpsilonTable> = OnceLock::new();
    TABLE.get_or_init(EpsilonTable::new)
}

/// An octonion, as coordinates over the canonical basis `e0..e7`.
///
/// `e0` is the unit; the imaginary part is the span of `e1..e7`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Octonion {
    pub coeffs: [f64; 8],
}

impl Octonion {
    pub const ZERO: Octonion = Octonion { coeffs: [0.0; 8] };

    pub fn new(coeffs: [f64; 8]) -> Self {
        Self { coeffs }
    }

    /// The basis octonion `e_i`.
    pub fn e(i: usize) -> Self {
        assert!(i < 8, "basis index {i} out of range");
        let mut coeffs = [0.0; 8];
        coeffs[i] = 1.0;
        Self { coeffs }
    }

    /// Embeds a vector of `R^7` as an imaginary octonion (coordinates
    /// `1..7` of `R^8`).
    pub fn from_imaginary(v: &[f64]) -> Self {
        assert_eq!(v.len(), 7, "imaginary part has 7 coordinates");
        let mut coeffs = [0.0; 8];
        coeffs[1..].copy_from_slice(v);
        Self { coeffs }
    }

    /// The imaginary coordinates `1..7`.
    pub fn imaginary(&self) -> [f64; 7] {
        let mut v = [0.0; 7];
        v.copy_from_slice(&self.coeffs[1..]);
        v
    }

    pub fn real_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0] == 0.0
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut coeffs = self.coeffs;
        for x in &mut coeffs {
            *x *= c;
        }
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs;
        for (x, y) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *x += y;
        }
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Conjugation: fixes `e0`, negates `e1..e7`.
    ///
    /// Satisfies `mul(a, conj(a)) = |a|^2 e0`.
    pub fn conj(&self) -> Self {
        let mut coeffs = self.coeffs;
        for x in coeffs.iter_mut().skip(1) {
            *x = -*x;
        }
        Self { coeffs }
    }
}

/// Octonion multiplication from the epsilon table.
///
/// Bilinear; `e0` is a two-sided unit; `|ab| = |a||b|`.
pub fn mul(a: &Octonion, b: &Octonion) -> Octonion {
    let eps = epsilon();
    let mut out = [0.0; 8];
    // Unit components.
    out[0] = a.coeffs[0] * b.coeffs[0];
    for i in 1..8 {
        out[0] -= a.coeffs[i] * b.coeffs[i];
        out[i] = a.coeffs[0] * b.coeffs[i] + a.coeffs[i] * b.coeffs[0];
    }
    // Imaginary-by-imaginary part through the table.
    for i in 1..8 {
        let ai = a.coeffs[i];
        if ai == 0.0 {
            continue;
        }
        for j in 1..8 {
            let bj = b.coeffs[j];
            if bj == 0.0 || i == j {
                continue;
            }
            for k in 1..8 {
                let s = eps.get(i, j, k);
                if s != 0 {
                    out[k] += f64::from(s) * ai * bj;
                }
            }
        }
    }
    Octonion::new(out)
}

/// Double cross product `u x v = uv + <u,v> e0` on the imaginary octonions.
///
/// Both inputs must be imaginary; the result is imaginary, orthogonal to
/// `u` and `v`, with `|u x v|^2` the Gram determinant of `(u, v)`.
pub fn cross2(u: &Octonion, v: &Octonion) -> Result<Octonion> {
    if !u.is_imaginary() {
        return Err(Error::NonImaginary(u.real_part()));
    }
    if !v.is_imaginary() {
        return Err(Error::NonImaginary(v.real_part()));
    }
    let mut out = mul(u, v);
    out.coeffs[0] += u.dot(v);
    Ok(out)
}

/// Triple cross product on `R^8`:
///
/// ```text
/// X(u,v,w) = -u (conj(v) w) + <u,v> w + <v,w> u - <w,u> v
/// ```
///
/// Orthogonal to each argument, alternating, with `|X|^2` the Gram
/// determinant of `(u, v, w)`.
pub fn cross3(u: &Octonion, v: &Octonion, w: &Octonion) -> Octonion {
    let mut out = mul(u, &mul(&v.conj(), w)).scale(-1.0);
    out = out.add(&w.scale(u.dot(v)));
    out = out.add(&u.scale(v.dot(w)));
    out = out.add(&v.scale(-w.dot(u)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent multiplication oracle: the full 8x8 basis product table
    /// written out by hand from the seven positive triples. `SIGN[i][j]`
    /// and `IDX[i][j]` encode `e_i e_j = SIGN[i][j] * e_{IDX[i][j]}`.
    const SIGN: [[i8; 8]; 8] = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, -1, 1, -1, 1, -1, -1, 1],
        [1, -1, -1, 1, 1, 1, -1, -1],
        [1, 1, -1, -1, 1, -1, 1, -1],
        [1, -1, -1, -1, -1, 1, 1, 1],
        [1, 1, -1, 1, -1, -1, -1, 1],
        [1, 1, 1, -1, -1, 1, -1, -1],
        [1, -1, 1, 1, -1, -1, 1, -1],
    ];
    const IDX: [[usize; 8]; 8] = [
        [0, 1, 2, 3, 4, 5, 6, 7],
        [1, 0, 3, 2, 5, 4, 7, 6],
        [2, 3, 0, 1, 6, 7, 4, 5],
        [3, 2, 1, 0, 7, 6, 5, 4],
        [4, 5, 6, 7, 0, 1, 2, 3],
        [5, 4, 7, 6, 1, 0, 3, 2],
        [6, 7, 4, 5, 2, 3, 0, 1],
        [7, 6, 5, 4, 3, 2, 1, 0],
    ];

    fn oracle_mul(a: &Octonion, b: &Octonion) -> Octonion {
        let mut out = [0.0; 8];
        for i in 0..8 {
            for j in 0..8 {
                out[IDX[i][j]] += f64::from(SIGN[i][j]) * a.coeffs[i] * b.coeffs[j];
            }
        }
        Octonion::new(out)
    }

    fn random_octonion(rng: &mut impl rand::Rng) -> Octonion {
        let mut coeffs = [0.0; 8];
        for c in &mut coeffs {
            *c = rng.gen_range(-1.0..1.0);
        }
        Octonion::new(coeffs)
    }

    fn random_imaginary(rng: &mut impl rand::Rng) -> Octonion {
        let mut o = random_octonion(rng);
        o.coeffs[0] = 0.0;
        o
    }

    /// Gram-Schmidt an orthonormal m-frame out of random octonions.
    fn random_orthonormal(rng: &mut impl rand::Rng, m: usize) -> Vec<Octonion> {
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

    #[test]
    fn table_matches_hand_oracle_on_all_basis_pairs() {
        for i in 0..8 {
            for j in 0..8 {
                let got = mul(&Octonion::e(i), &Octonion::e(j));
                let want = oracle_mul(&Octonion::e(i), &Octonion::e(j));
                assert_eq!(got, want, "e{i} * e{j}");
            }
        }
    }

    #[test]
    fn epsilon_positive_triples_and_count() {
        let eps = epsilon();
        for [i, j, k] in POSITIVE_TRIPLES {
            assert_eq!(eps.get(i, j, k), 1);
        }
        let nonzero = eps.iter().filter(|&(_, s)| s != 0).count();
        assert_eq!(nonzero, 42); // 7 triples x 6 permutations
    }

    #[test]
    fn epsilon_total_antisymmetry() {
        let eps = epsilon();
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    let s = eps.get(i, j, k);
                    assert_eq!(eps.get(j, i, k), -s);
                    assert_eq!(eps.get(i, k, j), -s);
                    assert_eq!(eps.get(k, j, i), -s);
                }
            }
        }
    }

    #[test]
    fn unit_and_basis_products() {
        assert_eq!(mul(&Octonion::e(1), &Octonion::e(2)), Octonion::e(3));
        assert_eq!(mul(&Octonion::e(1), &Octonion::e(1)), Octonion::e(0).scale(-1.0));
        assert_eq!(mul(&Octonion::e(1), &Octonion::e(7)), Octonion::e(6));
        let mut rng = rand::rngs::mock::StepRng::new(7, 13);
        let x = random_octonion(&mut rng);
        assert_eq!(mul(&Octonion::e(0), &x), x);
        assert_eq!(mul(&x, &Octonion::e(0)), x);
    }

    #[test]
    fn conjugation() {
        assert_eq!(Octonion::e(0).conj(), Octonion::e(0));
        assert_eq!(Octonion::e(5).conj(), Octonion::e(5).scale(-1.0));
        let a = Octonion::e(0).scale(2.0).add(&Octonion::e(4).scale(3.0));
        assert_eq!(a.conj(), Octonion::e(0).scale(2.0).add(&Octonion::e(4).scale(-3.0)));
        // a * conj(a) = |a|^2 e0
        let p = mul(&a, &a.conj());
        assert!((p.coeffs[0] - a.dot(&a)).abs() < 1e-14);
        assert!(p.coeffs[1..].iter().all(|&c| c.abs() < 1e-14));
    }

    #[test]
    fn cross2_basis_values() {
        let got = cross2(&Octonion::e(1), &Octonion::e(2)).unwrap();
        assert_eq!(got, Octonion::e(3));
        // Frozen oracle value: e1 e4 = e5 by the 145 triple.
        let got = cross2(&Octonion::e(1), &Octonion::e(4)).unwrap();
        assert_eq!(got, Octonion::e(5));
    }

    #[test]
    fn cross2_rejects_non_imaginary() {
        let err = cross2(&Octonion::e(0), &Octonion::e(2));
        assert!(matches!(err, Err(Error::NonImaginary(_))));
    }

    #[test]
    fn cross3_basis_values() {
        assert_eq!(
            cross3(&Octonion::e(0), &Octonion::e(1), &Octonion::e(2)),
            Octonion::e(3)
        );
        assert_eq!(
            cross3(&Octonion::e(3), &Octonion::e(1), &Octonion::e(2)),
            Octonion::e(0).scale(-1.0)
        );
        // Frozen value, derived by expanding the formula with the hand
        // table: -e4(conj(e1) e2) = e4 e3 = -e7.
        assert_eq!(
            cross3(&Octonion::e(4), &Octonion::e(1), &Octonion::e(2)),
            Octonion::e(7).scale(-1.0)
        );
        // Cross-check the frozen value against the independent oracle.
        let v_bar_w = oracle_mul(&Octonion::e(1).conj(), &Octonion::e(2));
        let want = oracle_mul(&Octonion::e(4), &v_bar_w).scale(-1.0);
        assert_eq!(
            cross3(&Octonion::e(4), &Octonion::e(1), &Octonion::e(2)),
            want
        );
    }

    #[test]
    fn double_equals_triple_with_unit() {
        for i in 1..8 {
            for j in 1..8 {
                let lhs = cross3(&Octonion::e(0), &Octonion::e(i), &Octonion::e(j));
                let rhs = cross2(&Octonion::e(i), &Octonion::e(j)).unwrap();
                assert_eq!(lhs, rhs, "i={i} j={j}");
            }
        }
    }

    fn gram_det2(u: &Octonion, v: &Octonion) -> f64 {
        u.dot(u) * v.dot(v) - u.dot(v).powi(2)
    }

    fn gram_det3(u: &Octonion, v: &Octonion, w: &Octonion) -> f64 {
        let (a, b, c) = (u.dot(u), u.dot(v), u.dot(w));
        let (d, e) = (v.dot(v), v.dot(w));
        let f = w.dot(w);
        a * (d * f - e * e) - b * (b * f - c * e) + c * (b * e - c * d)
    }

    proptest! {
        #[test]
        fn mul_matches_oracle(seed in 0u64..500) {
            let mut rng = rand_seeded(seed);
            let a = random_octonion(&mut rng);
            let b = random_octonion(&mut rng);
            let got = mul(&a, &b);
            let want = oracle_mul(&a, &b);
            for k in 0..8 {
                prop_assert!((got.coeffs[k] - want.coeffs[k]).abs() < 1e-13);
            }
        }

        #[test]
        fn norm_multiplicativity(seed in 0u64..500) {
            let mut rng = rand_seeded(seed);
            let a = random_octonion(&mut rng);
            let b = random_octonion(&mut rng);
            let lhs = mul(&a, &b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn cross2_axioms(seed in 0u64..500) {
            let mut rng = rand_seeded(seed);
            let u = random_imaginary(&mut rng);
            let v = random_imaginary(&mut rng);
            let x = cross2(&u, &v).unwrap();
            prop_assert!(x.is_imaginary());
            prop_assert!(x.dot(&u).abs() < 1e-12);
            prop_assert!(x.dot(&v).abs() < 1e-12);
            prop_assert!((x.dot(&x) - gram_det2(&u, &v)).abs() < 1e-12);
        }

        #[test]
        fn cross2_antisymmetry_on_orthogonal(seed in 0u64..200) {
            let mut rng = rand_seeded(seed);
            let frame = random_orthonormal(&mut rng, 2);
            let (mut u, mut v) = (frame[0], frame[1]);
            u.coeffs[0] = 0.0;
            v.coeffs[0] = 0.0;
            // Imaginary projections of an orthonormal pair need not stay
            // orthogonal; re-orthogonalize inside Im O.
            let vv = v.sub(&u.scale(v.dot(&u) / u.dot(&u).max(1e-12)));
            let a = cross2(&u, &vv).unwrap();
            let b = cross2(&vv, &u).unwrap();
            for k in 0..8 {
                prop_assert!((a.coeffs[k] + b.coeffs[k]).abs() < 1e-12);
            }
        }

        #[test]
        fn cross3_axioms(seed in 0u64..500) {
            let mut rng = rand_seeded(seed);
            let u = random_octonion(&mut rng);
            let v = random_octonion(&mut rng);
            let w = random_octonion(&mut rng);
            let x = cross3(&u, &v, &w);
            prop_assert!(x.dot(&u).abs() < 1e-11);
            prop_assert!(x.dot(&v).abs() < 1e-11);
            prop_assert!(x.dot(&w).abs() < 1e-11);
            prop_assert!((x.dot(&x) - gram_det3(&u, &v, &w)).abs() < 1e-11);
        }

        #[test]
        fn cross3_alternating(seed in 0u64..200) {
            let mut rng = rand_seeded(seed);
            let u = random_octonion(&mut rng);
            let v = random_octonion(&mut rng);
            let w = random_octonion(&mut rng);
            let x = cross3(&u, &v, &w);
            let y = cross3(&v, &u, &w);
            let z = cross3(&u, &w, &v);
            for k in 0..8 {
                prop_assert!((x.coeffs[k] + y.coeffs[k]).abs() < 1e-12);
                prop_assert!((x.coeffs[k] + z.coeffs[k]).abs() < 1e-12);
            }
        }

        #[test]
        fn triple_product_skew_adjoint(seed in 0u64..500) {
            let mut rng = rand_seeded(seed);
            let f = random_orthonormal(&mut rng, 4);
            let (z, u, v, w) = (f[0], f[1], f[2], f[3]);
            let lhs = cross3(&u, &v, &w).dot(&z);
            let rhs = -cross3(&z, &v, &w).dot(&u);
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn alternativity_on_orthogonal_imaginary(seed in 0u64..200) {
            let mut rng = rand_seeded(seed);
            let mut u = random_imaginary(&mut rng);
            u = u.scale(1.0 / u.norm());
            let mut v = random_imaginary(&mut rng);
            v = v.sub(&u.scale(v.dot(&u)));
            v = v.scale(1.0 / v.norm().max(1e-12));
            // uv = -vu and u(uv) = -v for orthonormal imaginary u, v.
            let uv = mul(&u, &v);
            let vu = mul(&v, &u);
            let uuv = mul(&u, &uv);
            for k in 0..8 {
                prop_assert!((uv.coeffs[k] + vu.coeffs[k]).abs() < 1e-12);
                prop_assert!((uuv.coeffs[k] + v.coeffs[k]).abs() < 1e-12);
            }
        }

        #[test]
        fn conjugate_shuffle_on_orthogonal(seed in 0u64..200) {
            let mut rng = rand_seeded(seed);
            let f = random_orthonormal(&mut rng, 3);
            let (u, v, w) = (f[0], f[1], f[2]);
            // -(conj(w) v) conj(u) = (conj(u) v) conj(w) for orthogonal u,v,w.
            let lhs = mul(&mul(&w.conj(), &v), &u.conj()).scale(-1.0);
            let rhs = mul(&mul(&u.conj(), &v), &w.conj());
            for k in 0..8 {
                prop_assert!((lhs.coeffs[k] - rhs.coeffs[k]).abs() < 1e-12);
            }
        }
    }

    fn rand_seeded(seed: u64) -> impl rand::Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }
}
