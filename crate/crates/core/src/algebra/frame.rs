//! Q-orthonormal coordinates adapted to the root decomposition.
//!
//! Coordinates are ordered as the Cartan basis followed by `(x_r, y_r)` for
//! each root `r`. Because the basis is Q-orthonormal, `Q(u, v)` is the
//! Euclidean dot product of coordinate vectors, and brackets are evaluated
//! through precomputed structure constants.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{q_form, root_decomposition, AlgebraElement, CMat, GroupElement, GroupFamily, RootDecomposition};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Frame {
    pub decomposition: RootDecomposition,
    basis: Vec<CMat>,
    /// Nonzero `(i, j, k, c)` with `[e_i, e_j] = sum_k c e_k`.
    structure: Vec<(usize, usize, usize, f64)>,
}

impl Frame {
    pub fn new(family: GroupFamily) -> Result<Self> {
        Ok(Self::from_decomposition(root_decomposition(family)?))
    }

    pub fn from_decomposition(decomposition: RootDecomposition) -> Self {
        let mut basis: Vec<CMat> = decomposition.cartan_basis.iter().map(|z| z.mat.clone()).collect();
        for r in &decomposition.roots {
            basis.push(r.x.mat.clone());
            basis.push(r.y.mat.clone());
        }
        let dim = basis.len();
        let mut structure = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let br = &basis[i] * &basis[j] - &basis[j] * &basis[i];
                if br.camax() < 1e-14 {
                    continue;
                }
                for (k, e) in basis.iter().enumerate() {
                    let c = q_form(e, &br);
                    if c.abs() > 1e-13 {
                        structure.push((i, j, k, c));
                        structure.push((j, i, k, -c));
                    }
                }
            }
        }
        Self { decomposition, basis, structure }
    }

    pub fn family(&self) -> GroupFamily {
        self.decomposition.family
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.decomposition.cartan_basis.len()
    }

    pub fn n_roots(&self) -> usize {
        self.decomposition.roots.len()
    }

    /// Coordinate indices `(x, y)` of root space `r`.
    pub fn root_indices(&self, r: usize) -> (usize, usize) {
        let base = self.rank() + 2 * r;
        (base, base + 1)
    }

    pub fn basis_matrix(&self, i: usize) -> &CMat {
        &self.basis[i]
    }

    pub fn unit(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[i] = 1.0;
        v
    }

    pub fn coords_of_matrix(&self, m: &CMat) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.basis.iter().map(|e| q_form(e, m)))
    }

    pub fn coords(&self, x: &AlgebraElement) -> DVector<f64> {
        self.coords_of_matrix(&x.mat)
    }

    pub fn matrix_of(&self, u: &DVector<f64>) -> CMat {
        let size = self.family().matrix_size();
        let mut m = CMat::zeros(size, size);
        for (c, e) in u.iter().zip(&self.basis) {
            if *c != 0.0 {
                m += e * Complex64::new(*c, 0.0);
            }
        }
        m
    }

    pub fn element(&self, u: &DVector<f64>) -> AlgebraElement {
        AlgebraElement::from_matrix_unchecked(self.family(), self.matrix_of(u))
    }

    pub fn bracket(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for &(i, j, k, c) in &self.structure {
            let a = u[i] * v[j];
            if a != 0.0 {
                out[k] += c * a;
            }
        }
        out
    }

    /// Matrix of `ad_u` in frame coordinates.
    pub fn ad_matrix(&self, u: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for &(i, j, k, c) in &self.structure {
            m[(k, j)] += c * u[i];
        }
        m
    }

    /// Coordinates of `Ad_{g^{-1}} X`.
    pub fn ad_inv(&self, g: &GroupElement, u: &DVector<f64>) -> DVector<f64> {
        let m = g.mat.adjoint() * self.matrix_of(u) * &g.mat;
        self.coords_of_matrix(&m)
    }

    /// Coordinates of `Ad_g X`.
    pub fn ad(&self, g: &GroupElement, u: &DVector<f64>) -> DVector<f64> {
        let m = &g.mat * self.matrix_of(u) * g.mat.adjoint();
        self.coords_of_matrix(&m)
    }

    /// Projection of a coordinate vector onto the Cartan subalgebra.
    pub fn cartan_part(&self, u: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for i in 0..self.rank() {
            out[i] = u[i];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bracket;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn families() -> Vec<GroupFamily> {
        vec![
            GroupFamily::su(2),
            GroupFamily::su(3),
            GroupFamily::su(4),
            GroupFamily::sp(1),
            GroupFamily::sp(2),
            GroupFamily::so(3),
            GroupFamily::so(5),
            GroupFamily::so(6),
            GroupFamily::u(2),
        ]
    }

    #[test]
    fn coordinates_round_trip_and_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for f in families() {
            let fr = Frame::new(f).unwrap();
            let a = f.random_algebra(&mut rng);
            let u = fr.coords(&a);
            let back = fr.matrix_of(&u);
            assert!((back - &a.mat).camax() < 1e-10, "{f}");
        }
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for f in families() {
            let fr = Frame::new(f).unwrap();
            let a = f.random_algebra(&mut rng);
            let b = f.random_algebra(&mut rng);
            let direct = fr.coords(&bracket(&a, &b).unwrap());
            let via = fr.bracket(&fr.coords(&a), &fr.coords(&b));
            assert!((direct - &via).amax() < 1e-10, "{f}");
            let adm = fr.ad_matrix(&fr.coords(&a)) * fr.coords(&b);
            assert!((adm - via).amax() < 1e-10, "{f}");
        }
    }

    #[test]
    fn jacobi_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for f in families() {
            let fr = Frame::new(f).unwrap();
            for _ in 0..5 {
                let a = fr.coords(&f.random_algebra(&mut rng));
                let b = fr.coords(&f.random_algebra(&mut rng));
                let c = fr.coords(&f.random_algebra(&mut rng));
                let j = fr.bracket(&a, &fr.bracket(&b, &c))
                    + fr.bracket(&b, &fr.bracket(&c, &a))
                    + fr.bracket(&c, &fr.bracket(&a, &b));
                assert!(j.amax() < 1e-9, "{f}");
            }
        }
    }

    #[test]
    fn ad_is_skew_for_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for f in families() {
            let fr = Frame::new(f).unwrap();
            let z = fr.coords(&f.random_algebra(&mut rng));
            let m = fr.ad_matrix(&z);
            assert!((&m + m.transpose()).amax() < 1e-10, "{f}");
        }
    }
}
