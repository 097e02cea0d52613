//! Matrix models of the compact Lie algebras su(n), u(n), sp(n) and so(m).
//!
//! Every element is stored as a complex square matrix in a fixed faithful
//! representation. Sp(n) lives in its 2n x 2n complex embedding
//! `B + jC -> [[B, -conj C], [C, conj B]]`, so a single matrix backend serves
//! all families. The bi-invariant form is `Q(A, B) = -1/2 Re tr(AB)` for every
//! family.

mod frame;
mod roots;

pub use frame::Frame;
pub use roots::{root_decomposition, RootDecomposition, RootSpace};

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{BiqError, Result};

pub type CMat = DMatrix<Complex64>;

/// Absolute tolerance for structural invariants on unit-scale inputs.
pub const STRUCTURAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "SU")]
    Su,
    #[serde(rename = "Sp")]
    Sp,
    #[serde(rename = "SO")]
    So,
    #[serde(rename = "U")]
    U,
}

/// A classical compact group family together with its size parameter.
///
/// `n` is the matrix size for SU, U and SO, and the quaternionic rank for Sp
/// (the complex matrices are then 2n x 2n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFamily {
    pub family: Family,
    pub n: usize,
}

impl GroupFamily {
    pub fn su(n: usize) -> Self {
        Self { family: Family::Su, n }
    }
    pub fn u(n: usize) -> Self {
        Self { family: Family::U, n }
    }
    pub fn sp(n: usize) -> Self {
        Self { family: Family::Sp, n }
    }
    pub fn so(m: usize) -> Self {
        Self { family: Family::So, n: m }
    }

    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::Sp => 2 * self.n,
            _ => self.n,
        }
    }

    pub fn dimension(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::Su => n * n - 1,
            Family::U => n * n,
            Family::Sp => n * (2 * n + 1),
            Family::So => n * (n - 1) / 2,
        }
    }

    pub fn rank(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::Su => n - 1,
            Family::U | Family::Sp => n,
            Family::So => n / 2,
        }
    }

    /// Whether SO(m) has even m. False for other families.
    pub fn is_even_orthogonal(&self) -> bool {
        self.family == Family::So && self.n % 2 == 0
    }

    pub fn check_supported(&self) -> Result<()> {
        let ok = match self.family {
            Family::Su => self.n >= 2,
            Family::U | Family::Sp => self.n >= 1,
            Family::So => self.n >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(BiqError::Unsupported(*self, "size too small".into()))
        }
    }

    /// The standard symplectic form matrix `J = [[0, -I], [I, 0]]` of size 2n.
    pub fn symplectic_j(n: usize) -> CMat {
        let mut j = CMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            j[(i, n + i)] = Complex64::new(-1.0, 0.0);
            j[(n + i, i)] = Complex64::new(1.0, 0.0);
        }
        j
    }

    /// Draws an algebra element with independent Gaussian entries projected
    /// onto the algebra.
    pub fn random_algebra<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        let m = self.matrix_size();
        let raw = CMat::from_fn(m, m, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        AlgebraElement::project(*self, &raw)
    }

    /// A random group element `exp(A)` with `A` a Gaussian algebra element.
    pub fn random_group<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        exp_map(&self.random_algebra(rng).scale(1.5))
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Su => "SU",
            Family::Sp => "Sp",
            Family::So => "SO",
            Family::U => "U",
        };
        write!(f, "{}({})", name, self.n)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn skew_hermitian_part(m: &CMat) -> CMat {
    (m - m.adjoint()) * c(0.5)
}

/// `-1/2 Re tr(AB)` without forming the product.
pub fn q_form(a: &CMat, b: &CMat) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    -0.5 * acc
}

/// An element of the Lie algebra of a classical family.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub family: GroupFamily,
    pub mat: CMat,
}

impl AlgebraElement {
    /// Wraps a matrix after checking the family invariants.
    pub fn new(family: GroupFamily, mat: CMat) -> Result<Self> {
        let el = Self { family, mat };
        let residual = el.invariant_residual();
        if residual > STRUCTURAL_TOL {
            return Err(BiqError::InvalidInput(format!(
                "matrix is not in the Lie algebra of {family} (residual {residual:e})"
            )));
        }
        Ok(el)
    }

    pub fn from_matrix_unchecked(family: GroupFamily, mat: CMat) -> Self {
        Self { family, mat }
    }

    pub fn zero(family: GroupFamily) -> Self {
        let m = family.matrix_size();
        Self { family, mat: CMat::zeros(m, m) }
    }

    /// Orthogonal projection (with respect to Re tr) of an arbitrary complex
    /// matrix onto the algebra.
    pub fn project(family: GroupFamily, raw: &CMat) -> Self {
        let m = family.matrix_size();
        assert_eq!(raw.nrows(), m, "matrix size does not match {family}");
        let mat = match family.family {
            Family::U => skew_hermitian_part(raw),
            Family::Su => {
                let mut s = skew_hermitian_part(raw);
                let tr = s.trace() / c(m as f64);
                for i in 0..m {
                    s[(i, i)] -= tr;
                }
                s
            }
            Family::So => {
                let real = raw.map(|z| c(z.re));
                skew_hermitian_part(&real)
            }
            Family::Sp => {
                let j = GroupFamily::symplectic_j(family.n);
                let jt = j.transpose();
                let sym = (raw + &j * raw.map(|z| z.conj()) * &jt) * c(0.5);
                skew_hermitian_part(&sym)
            }
        };
        Self { family, mat }
    }

    /// Largest violation of the family's defining relations.
    pub fn invariant_residual(&self) -> f64 {
        let m = &self.mat;
        let size = self.family.matrix_size();
        if m.nrows() != size || m.ncols() != size {
            return f64::INFINITY;
        }
        let mut r = (m + m.adjoint()).camax();
        match self.family.family {
            Family::Su => r = r.max(m.trace().norm()),
            Family::So => r = r.max(m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)),
            Family::Sp => {
                let j = GroupFamily::symplectic_j(self.family.n);
                let lhs = &j * m.map(|z| z.conj());
                let rhs = m * &j;
                r = r.max((lhs - rhs).camax());
            }
            Family::U => {}
        }
        r
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { family: self.family, mat: &self.mat * c(s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { family: self.family, mat: &self.mat + &other.mat }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { family: self.family, mat: &self.mat - &other.mat }
    }

    pub fn norm_q(&self) -> f64 {
        q_form(&self.mat, &self.mat).max(0.0).sqrt()
    }
}

fn check_same(a: GroupFamily, b: GroupFamily) -> Result<()> {
    if a != b {
        return Err(BiqError::FamilyMismatch(a, b));
    }
    Ok(())
}

/// The commutator `AB - BA`.
pub fn bracket(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    check_same(a.family, b.family)?;
    Ok(AlgebraElement {
        family: a.family,
        mat: &a.mat * &b.mat - &b.mat * &a.mat,
    })
}

/// The bi-invariant form `Q(A, B) = -1/2 Re tr(AB)`.
pub fn inner_q(a: &AlgebraElement, b: &AlgebraElement) -> Result<f64> {
    check_same(a.family, b.family)?;
    Ok(q_form(&a.mat, &b.mat))
}

/// Matrix exponential of an algebra element.
pub fn exp_map(a: &AlgebraElement) -> GroupElement {
    GroupElement {
        family: a.family,
        mat: a.mat.clone().exp(),
    }
}

/// An element of a compact classical group in its defining representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub family: GroupFamily,
    pub mat: CMat,
}

impl GroupElement {
    pub fn identity(family: GroupFamily) -> Self {
        let m = family.matrix_size();
        Self { family, mat: CMat::identity(m, m) }
    }

    pub fn new(family: GroupFamily, mat: CMat) -> Result<Self> {
        let g = Self { family, mat };
        let residual = g.invariant_residual();
        if residual > STRUCTURAL_TOL {
            return Err(BiqError::InvalidInput(format!(
                "matrix is not in {family} (residual {residual:e})"
            )));
        }
        Ok(g)
    }

    pub fn invariant_residual(&self) -> f64 {
        let m = &self.mat;
        let size = self.family.matrix_size();
        if m.nrows() != size || m.ncols() != size {
            return f64::INFINITY;
        }
        let id = CMat::identity(size, size);
        let mut r = (m * m.adjoint() - id).camax();
        match self.family.family {
            Family::Su => r = r.max((m.determinant() - c(1.0)).norm()),
            Family::So => {
                r = r.max(m.iter().map(|z| z.im.abs()).fold(0.0, f64::max));
                r = r.max((m.determinant() - c(1.0)).norm());
            }
            Family::Sp => {
                let j = GroupFamily::symplectic_j(self.family.n);
                r = r.max((&j * m.map(|z| z.conj()) - m * &j).camax());
            }
            Family::U => {}
        }
        r
    }

    pub fn inverse(&self) -> Self {
        Self { family: self.family, mat: self.mat.adjoint() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { family: self.family, mat: &self.mat * &other.mat }
    }

    /// `Ad_g X = g X g^{-1}`.
    pub fn ad(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            family: x.family,
            mat: &self.mat * &x.mat * self.mat.adjoint(),
        }
    }

    /// `Ad_{g^{-1}} X = g^{-1} X g`.
    pub fn ad_inv(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            family: x.family,
            mat: self.mat.adjoint() * &x.mat * &self.mat,
        }
    }
}

/// Complex block form of a quaternionic matrix `B + jC`:
/// `[[B, -conj C], [C, conj B]]`.
pub fn quaternionic_block(b: &CMat, cpart: &CMat) -> Result<CMat> {
    let n = b.nrows();
    if b.ncols() != n || cpart.nrows() != n || cpart.ncols() != n {
        return Err(BiqError::InvalidInput(
            "quaternionic pair must consist of two square matrices of equal size".into(),
        ));
    }
    let mut out = CMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = b[(i, j)];
            out[(i, n + j)] = -cpart[(i, j)].conj();
            out[(n + i, j)] = cpart[(i, j)];
            out[(n + i, n + j)] = b[(i, j)].conj();
        }
    }
    Ok(out)
}

/// Embeds the quaternionic algebra element `B + jC` into sp(n).
pub fn embed_sp_algebra(b: &CMat, cpart: &CMat) -> Result<AlgebraElement> {
    let n = b.nrows();
    AlgebraElement::new(GroupFamily::sp(n), quaternionic_block(b, cpart)?)
}

/// Embeds the quaternionic group element `B + jC` into Sp(n).
pub fn embed_sp_group(b: &CMat, cpart: &CMat) -> Result<GroupElement> {
    let n = b.nrows();
    GroupElement::new(GroupFamily::sp(n), quaternionic_block(b, cpart)?)
}

/// Splits a quaternion `a0 + a1 i + a2 j + a3 k` as `b + j c` with `b, c`
/// complex.
pub fn quaternion_parts(q: [f64; 4]) -> (Complex64, Complex64) {
    (Complex64::new(q[0], q[1]), Complex64::new(q[2], -q[3]))
}

/// Builds the sp(n) (or Sp(n)) block matrix of a quaternionic n x n matrix
/// given entrywise as `[re, i, j, k]`.
pub fn quaternionic_matrix(entries: &[Vec<[f64; 4]>]) -> Result<CMat> {
    let n = entries.len();
    let mut b = CMat::zeros(n, n);
    let mut cc = CMat::zeros(n, n);
    for (r, row) in entries.iter().enumerate() {
        if row.len() != n {
            return Err(BiqError::InvalidInput("quaternionic matrix must be square".into()));
        }
        for (s, q) in row.iter().enumerate() {
            let (bq, cq) = quaternion_parts(*q);
            b[(r, s)] = bq;
            cc[(r, s)] = cq;
        }
    }
    quaternionic_block(&b, &cc)
}

/// Realification `x + iy -> [[x, -y], [y, x]]` of a complex n x n matrix.
pub fn realify(a: &CMat) -> CMat {
    let n = a.nrows();
    let mut out = CMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            out[(2 * i, 2 * j)] = c(z.re);
            out[(2 * i, 2 * j + 1)] = c(-z.im);
            out[(2 * i + 1, 2 * j)] = c(z.im);
            out[(2 * i + 1, 2 * j + 1)] = c(z.re);
        }
    }
    out
}

/// The usual embedding U(n) -> SO(2n).
pub fn embed_u_in_so(a: &CMat) -> Result<GroupElement> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(BiqError::InvalidInput("matrix must be square".into()));
    }
    let res = (a * a.adjoint() - CMat::identity(n, n)).camax();
    if res > STRUCTURAL_TOL {
        return Err(BiqError::InvalidInput(format!(
            "matrix is not unitary (residual {res:e})"
        )));
    }
    GroupElement::new(GroupFamily::so(2 * n), realify(a))
}

/// The corresponding Lie algebra embedding u(n) -> so(2n).
pub fn embed_u_in_so_algebra(a: &CMat) -> Result<AlgebraElement> {
    AlgebraElement::new(GroupFamily::so(2 * a.nrows()), realify(a))
}

/// Places `a` as the top-left block of a larger identity-padded (group) or
/// zero-padded (algebra) matrix.
pub fn pad_block(a: &CMat, size: usize, offset: usize, pad_identity: bool) -> CMat {
    let mut out = if pad_identity {
        CMat::identity(size, size)
    } else {
        CMat::zeros(size, size)
    };
    let k = a.nrows();
    for i in 0..k {
        for j in 0..k {
            out[(offset + i, offset + j)] = a[(i, j)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ci(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn families() -> Vec<GroupFamily> {
        vec![
            GroupFamily::su(2),
            GroupFamily::su(3),
            GroupFamily::su(4),
            GroupFamily::sp(1),
            GroupFamily::sp(2),
            GroupFamily::sp(3),
            GroupFamily::so(3),
            GroupFamily::so(5),
            GroupFamily::so(6),
            GroupFamily::u(3),
        ]
    }

    #[test]
    fn dimensions_and_ranks() {
        assert_eq!(GroupFamily::su(3).dimension(), 8);
        assert_eq!(GroupFamily::sp(2).dimension(), 10);
        assert_eq!(GroupFamily::so(5).dimension(), 10);
        assert_eq!(GroupFamily::u(2).dimension(), 4);
        assert_eq!(GroupFamily::su(5).rank(), 4);
        assert_eq!(GroupFamily::sp(3).rank(), 3);
        assert_eq!(GroupFamily::so(6).rank(), 3);
        assert_eq!(GroupFamily::so(7).rank(), 3);
    }

    #[test]
    fn diagonal_brackets_vanish() {
        let f = GroupFamily::su(3);
        let a = AlgebraElement::new(
            f,
            CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![ci(0., 1.), ci(0., 2.), ci(0., -3.)])),
        )
        .unwrap();
        let b = AlgebraElement::new(
            f,
            CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![ci(0., -0.5), ci(0., 2.5), ci(0., -2.)])),
        )
        .unwrap();
        assert!(bracket(&a, &b).unwrap().mat.camax() < 1e-15);
    }

    #[test]
    fn su2_bracket_by_hand() {
        let f = GroupFamily::su(2);
        let x = AlgebraElement::new(f, CMat::from_row_slice(2, 2, &[ci(0., 1.), c(0.), c(0.), ci(0., -1.)])).unwrap();
        let y = AlgebraElement::new(f, CMat::from_row_slice(2, 2, &[c(0.), c(1.), c(-1.), c(0.)])).unwrap();
        let z = bracket(&x, &y).unwrap();
        let expected = CMat::from_row_slice(2, 2, &[c(0.), ci(0., 2.), ci(0., 2.), c(0.)]);
        assert!((z.mat - expected).camax() < 1e-15);
    }

    #[test]
    fn self_bracket_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in families() {
            for _ in 0..5 {
                let a = f.random_algebra(&mut rng);
                assert!(bracket(&a, &a).unwrap().mat.camax() < 1e-12);
            }
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = AlgebraElement::zero(GroupFamily::su(3));
        let b = AlgebraElement::zero(GroupFamily::so(3));
        assert!(matches!(bracket(&a, &b), Err(BiqError::FamilyMismatch(..))));
        assert!(inner_q(&a, &b).is_err());
    }

    #[test]
    fn q_of_diag_i_minus_i() {
        let f = GroupFamily::su(2);
        let a = AlgebraElement::new(f, CMat::from_row_slice(2, 2, &[ci(0., 1.), c(0.), c(0.), ci(0., -1.)])).unwrap();
        assert!((inner_q(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        let off = AlgebraElement::new(f, CMat::from_row_slice(2, 2, &[c(0.), c(1.), c(-1.), c(0.)])).unwrap();
        assert!(inner_q(&a, &off).unwrap().abs() < 1e-15);
    }

    #[test]
    fn random_elements_satisfy_invariants_and_brackets_close() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in families() {
            let a = f.random_algebra(&mut rng);
            let b = f.random_algebra(&mut rng);
            assert!(a.invariant_residual() < 1e-12, "{f}");
            assert!(bracket(&a, &b).unwrap().invariant_residual() < 1e-10, "{f}");
            let g = f.random_group(&mut rng);
            assert!(g.invariant_residual() < 1e-10, "{f}");
            let lhs = inner_q(&g.ad(&a), &g.ad(&b)).unwrap();
            let rhs = inner_q(&a, &b).unwrap();
            assert!((lhs - rhs).abs() < 1e-10, "{f}");
        }
    }

    #[test]
    fn exp_examples() {
        let f = GroupFamily::su(3);
        assert!((exp_map(&AlgebraElement::zero(f)).mat - CMat::identity(3, 3)).camax() < 1e-15);
        let pi = std::f64::consts::PI;
        let a = AlgebraElement::new(
            f,
            CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![ci(0., pi), ci(0., -pi), c(0.)])),
        )
        .unwrap();
        let g = exp_map(&a);
        let expected = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(-1.), c(-1.), c(1.)]));
        assert!((g.mat - expected).camax() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for fam in families() {
            let a = fam.random_algebra(&mut rng);
            let prod = exp_map(&a).mul(&exp_map(&a.scale(-1.0)));
            assert!((prod.mat - CMat::identity(fam.matrix_size(), fam.matrix_size())).camax() < 1e-10);
        }
    }

    #[test]
    fn sp_embedding_examples() {
        let id = CMat::identity(2, 2);
        let zero = CMat::zeros(2, 2);
        let g = embed_sp_group(&id, &zero).unwrap();
        assert!((g.mat - CMat::identity(4, 4)).camax() < 1e-15);
        let j = embed_sp_algebra(&CMat::zeros(1, 1), &CMat::identity(1, 1)).unwrap();
        let expected = CMat::from_row_slice(2, 2, &[c(0.), c(-1.), c(1.), c(0.)]);
        assert!((j.mat - &expected).camax() < 1e-15);
        let q = quaternionic_matrix(&[vec![[0., 0., 1., 0.]]]).unwrap();
        assert!((q - expected).camax() < 1e-15);
    }

    #[test]
    fn sp_embedding_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 2;
        for _ in 0..10 {
            let mk = |rng: &mut ChaCha8Rng| {
                let raw = CMat::from_fn(n, n, |_, _| ci(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
                raw
            };
            // skew-hermitian B and symmetric C give an sp(n) element
            let b1 = mk(&mut rng);
            let b1 = (&b1 - b1.adjoint()) * c(0.5);
            let c1 = mk(&mut rng);
            let c1 = (&c1 + c1.transpose()) * c(0.5);
            let b2 = mk(&mut rng);
            let b2 = (&b2 - b2.adjoint()) * c(0.5);
            let c2 = mk(&mut rng);
            let c2 = (&c2 + c2.transpose()) * c(0.5);
            let x = embed_sp_algebra(&b1, &c1).unwrap();
            let y = embed_sp_algebra(&b2, &c2).unwrap();
            // quaternionic bracket computed blockwise: (B + jC)(B' + jC') = (BB' - conj(C)C') + j(conj(B)C' + CB')
            let prod_b = |b: &CMat, cc: &CMat, bb: &CMat, ccc: &CMat| b * bb - cc.map(|z| z.conj()) * ccc;
            let prod_c = |b: &CMat, cc: &CMat, bb: &CMat, ccc: &CMat| b.map(|z| z.conj()) * ccc + cc * bb;
            let br_b = prod_b(&b1, &c1, &b2, &c2) - prod_b(&b2, &c2, &b1, &c1);
            let br_c = prod_c(&b1, &c1, &b2, &c2) - prod_c(&b2, &c2, &b1, &c1);
            let img = quaternionic_block(&br_b, &br_c).unwrap();
            let br = bracket(&x, &y).unwrap();
            assert!((img - br.mat).camax() < 1e-12);
        }
    }

    #[test]
    fn u_in_so_examples() {
        let g = embed_u_in_so(&CMat::identity(2, 2)).unwrap();
        assert!((g.mat - CMat::identity(4, 4)).camax() < 1e-15);
        let g = embed_u_in_so(&CMat::from_element(1, 1, ci(0., 1.))).unwrap();
        let expected = CMat::from_row_slice(2, 2, &[c(0.), c(-1.), c(1.), c(0.)]);
        assert!((g.mat - expected).camax() < 1e-15);
        assert!(embed_u_in_so(&CMat::from_element(1, 1, c(2.0))).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let u = GroupFamily::u(3).random_group(&mut rng);
            let g = embed_u_in_so(&u.mat).unwrap();
            assert!((g.mat.determinant() - c(1.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn invalid_elements_rejected() {
        let f = GroupFamily::su(2);
        assert!(AlgebraElement::new(f, CMat::identity(2, 2)).is_err());
        assert!(GroupElement::new(f, CMat::identity(2, 2) * c(2.0)).is_err());
    }
}
