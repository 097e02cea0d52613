//! Left-invariant metrics encoded by a positive Q-self-adjoint operator `P`
//! with `<X, Y> = Q(X, P Y)`.
//!
//! The torus-invariant family is block diagonal over the root decomposition:
//! an arbitrary positive form on the Cartan subalgebra plus one positive
//! scalar per root space. Metrics that are constant on a caller-supplied
//! orthogonal splitting (used for actions whose right factor is larger than a
//! torus) share the same operator type.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Frame, STRUCTURAL_TOL};
use crate::error::{BiqError, Result};

#[derive(Debug, Clone)]
pub struct MetricOperator {
    frame: Arc<Frame>,
    p: DMatrix<f64>,
    p_inv: DMatrix<f64>,
}

/// JSON form of a torus-invariant metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSpec {
    pub t_block: Vec<Vec<f64>>,
    pub alphas: Vec<f64>,
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    m.clone().symmetric_eigen().eigenvalues.min()
}

fn check_spd(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(BiqError::InvalidInput(format!("{what} must be square")));
    }
    let asym = (m - m.transpose()).amax();
    if asym > STRUCTURAL_TOL * (1.0 + m.amax()) {
        return Err(BiqError::InvalidInput(format!("{what} is not symmetric (asymmetry {asym:e})")));
    }
    let lam = min_eigenvalue(m);
    if lam <= 1e-12 * (1.0 + m.amax()) {
        return Err(BiqError::NotPositiveDefinite(lam));
    }
    Ok(())
}

impl MetricOperator {
    /// The bi-invariant metric `P = identity`.
    pub fn identity(frame: Arc<Frame>) -> Self {
        let d = frame.dim();
        Self {
            frame,
            p: DMatrix::identity(d, d),
            p_inv: DMatrix::identity(d, d),
        }
    }

    /// Torus-invariant metric from a form on the Cartan subalgebra (in the
    /// Q-orthonormal Cartan basis) and one scalar per root space.
    pub fn torus_invariant(frame: Arc<Frame>, t_block: &DMatrix<f64>, alphas: &[f64]) -> Result<Self> {
        let rank = frame.rank();
        if t_block.nrows() != rank || t_block.ncols() != rank {
            return Err(BiqError::InvalidInput(format!(
                "t_block must be {rank}x{rank}, got {}x{}",
                t_block.nrows(),
                t_block.ncols()
            )));
        }
        if alphas.len() != frame.n_roots() {
            return Err(BiqError::InvalidInput(format!(
                "expected {} root scalars, got {}",
                frame.n_roots(),
                alphas.len()
            )));
        }
        if let Some(bad) = alphas.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
            return Err(BiqError::InvalidInput(format!("root scalar {bad} is not positive")));
        }
        check_spd(t_block, "t_block")?;
        let d = frame.dim();
        let mut p = DMatrix::zeros(d, d);
        p.view_mut((0, 0), (rank, rank)).copy_from(t_block);
        for (r, a) in alphas.iter().enumerate() {
            let (ix, iy) = frame.root_indices(r);
            p[(ix, ix)] = *a;
            p[(iy, iy)] = *a;
        }
        Self::from_matrix(frame, p)
    }

    pub fn from_spec(frame: Arc<Frame>, spec: &MetricSpec) -> Result<Self> {
        let rank = frame.rank();
        if spec.t_block.len() != rank || spec.t_block.iter().any(|r| r.len() != rank) {
            return Err(BiqError::InvalidInput(format!("t_block must be {rank}x{rank}")));
        }
        let t = DMatrix::from_fn(rank, rank, |i, j| spec.t_block[i][j]);
        Self::torus_invariant(frame, &t, &spec.alphas)
    }

    /// A random torus-invariant metric with eigenvalues in roughly
    /// `[0.3, 3]`.
    pub fn random_torus_invariant<R: Rng + ?Sized>(frame: Arc<Frame>, rng: &mut R) -> Self {
        let rank = frame.rank();
        let t = random_spd(rank, rng);
        let alphas: Vec<f64> = (0..frame.n_roots()).map(|_| 0.3 + 2.7 * rng.random::<f64>()).collect();
        Self::torus_invariant(frame, &t, &alphas).expect("random parameters are valid")
    }

    /// Metric constant on an orthogonal splitting of the algebra. Each block
    /// is a Q-orthonormal basis (frame coordinates) together with a symmetric
    /// positive-definite matrix giving the metric in that basis.
    pub fn from_blocks(frame: Arc<Frame>, blocks: &[(Vec<DVector<f64>>, DMatrix<f64>)]) -> Result<Self> {
        let d = frame.dim();
        let mut cols = Vec::new();
        let mut p = DMatrix::zeros(d, d);
        for (basis, m) in blocks {
            if m.nrows() != basis.len() {
                return Err(BiqError::InvalidInput("block matrix size does not match its basis".into()));
            }
            check_spd(m, "block")?;
            let b = DMatrix::from_columns(basis);
            p += &b * m * b.transpose();
            cols.extend(basis.iter().cloned());
        }
        if cols.len() != d {
            return Err(BiqError::InvalidInput(format!(
                "blocks span {} dimensions, algebra has {d}",
                cols.len()
            )));
        }
        let all = DMatrix::from_columns(&cols);
        let gram = all.transpose() * &all;
        let err = (gram - DMatrix::identity(d, d)).amax();
        if err > 1e-9 {
            return Err(BiqError::InvalidInput(format!(
                "block bases are not jointly Q-orthonormal (error {err:e})"
            )));
        }
        Self::from_matrix(frame, p)
    }

    /// Wraps an arbitrary symmetric positive-definite matrix in frame
    /// coordinates.
    pub fn from_matrix(frame: Arc<Frame>, p: DMatrix<f64>) -> Result<Self> {
        if p.nrows() != frame.dim() {
            return Err(BiqError::InvalidInput("metric matrix has wrong size".into()));
        }
        check_spd(&p, "metric")?;
        let p = (&p + p.transpose()) * 0.5;
        let p_inv = p.clone().try_inverse().ok_or(BiqError::NotPositiveDefinite(0.0))?;
        let p_inv = (&p_inv + p_inv.transpose()) * 0.5;
        Ok(Self { frame, p, p_inv })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn apply(&self, u: &DVector<f64>) -> DVector<f64> {
        &self.p * u
    }

    pub fn apply_inv(&self, u: &DVector<f64>) -> DVector<f64> {
        &self.p_inv * u
    }

    pub fn apply_element(&self, x: &AlgebraElement) -> AlgebraElement {
        self.frame.element(&self.apply(&self.frame.coords(x)))
    }

    pub fn apply_inv_element(&self, x: &AlgebraElement) -> AlgebraElement {
        self.frame.element(&self.apply_inv(&self.frame.coords(x)))
    }

    /// `<u, v> = Q(u, P v)`.
    pub fn inner(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        u.dot(&(&self.p * v))
    }

    pub fn norm(&self, u: &DVector<f64>) -> f64 {
        self.inner(u, u).max(0.0).sqrt()
    }

    /// `(ad_a)^* = -P^{-1} ad_a P`, the adjoint of `ad_a` for `<,>`.
    pub fn ad_star(&self, a: &DVector<f64>) -> DMatrix<f64> {
        -(&self.p_inv * self.frame.ad_matrix(a) * &self.p)
    }

    pub fn ad_star_apply(&self, a: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        -(&self.p_inv * self.frame.bracket(a, &self.apply(y)))
    }

    /// `(ad_a)^*(b) - (ad_b)^*(a) + [a, b]`, the tensor whose pairing with the
    /// left-invariant part of an action field gives the vertical part of the
    /// bracket of horizontal extensions. Reduces to `-[a, b]` for `P = id`.
    pub fn l_tensor(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        self.ad_star_apply(a, b) - self.ad_star_apply(b, a) + self.frame.bracket(a, b)
    }

    /// Largest `|P ad_Z - ad_Z P|` over the Cartan basis.
    pub fn torus_invariance_residual(&self) -> f64 {
        (0..self.frame.rank())
            .map(|i| {
                let ad = self.frame.ad_matrix(&self.frame.unit(i));
                (&self.p * &ad - &ad * &self.p).amax()
            })
            .fold(0.0, f64::max)
    }

    /// Whether `P` maps the span of `basis` into itself, returning the
    /// largest residual of the orthogonal complement component.
    pub fn invariance_residual(&self, basis: &[DVector<f64>]) -> f64 {
        let proj = orthonormal_projector(basis, self.frame.dim());
        basis
            .iter()
            .map(|b| {
                let pb = self.apply(b);
                (&pb - &proj * &pb).amax()
            })
            .fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.p.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }
}

/// Q-orthogonal projector onto the span of (not necessarily orthonormal)
/// vectors.
pub fn orthonormal_projector(basis: &[DVector<f64>], dim: usize) -> DMatrix<f64> {
    let onb = orthonormalize(basis, |u, v| u.dot(v));
    let mut p = DMatrix::zeros(dim, dim);
    for b in &onb {
        p += b * b.transpose();
    }
    p
}

/// Gram-Schmidt with respect to an arbitrary inner product, dropping
/// dependent vectors.
pub fn orthonormalize<F>(vectors: &[DVector<f64>], inner: F) -> Vec<DVector<f64>>
where
    F: Fn(&DVector<f64>, &DVector<f64>) -> f64,
{
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let scale = inner(v, v).sqrt();
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = inner(&w, u);
                w -= u * c;
            }
        }
        let n = inner(&w, &w).max(0.0).sqrt();
        if n > 1e-10 * scale.max(1.0) {
            out.push(w / n);
        }
    }
    out
}

pub fn random_spd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
    a.transpose() * &a + DMatrix::identity(n, n) * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{exp_map, GroupFamily};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frame(f: GroupFamily) -> Arc<Frame> {
        Arc::new(Frame::new(f).unwrap())
    }

    #[test]
    fn identity_is_bi_invariant() {
        let fr = frame(GroupFamily::su(3));
        let t = DMatrix::identity(2, 2);
        let p = MetricOperator::torus_invariant(fr.clone(), &t, &[1.0, 1.0, 1.0]).unwrap();
        assert!((p.matrix() - DMatrix::<f64>::identity(8, 8)).amax() < 1e-15);
    }

    #[test]
    fn root_block_scaling() {
        let fr = frame(GroupFamily::su(3));
        let p = MetricOperator::torus_invariant(fr.clone(), &DMatrix::identity(2, 2), &[1.0, 2.0, 3.0]).unwrap();
        let (ix, _) = fr.root_indices(1);
        let v = fr.unit(ix);
        assert!((p.apply(&v) - &v * 2.0).amax() < 1e-15);
        let x = fr.decomposition.roots[2].y.clone();
        let px = p.apply_element(&x);
        assert!((px.mat - x.mat * num_complex::Complex64::new(3.0, 0.0)).camax() < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        let fr = frame(GroupFamily::su(3));
        let t = DMatrix::identity(2, 2);
        assert!(MetricOperator::torus_invariant(fr.clone(), &t, &[1.0, 0.0, 1.0]).is_err());
        assert!(MetricOperator::torus_invariant(fr.clone(), &t, &[1.0, 1.0]).is_err());
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(
            MetricOperator::torus_invariant(fr, &bad, &[1.0, 1.0, 1.0]),
            Err(BiqError::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn inverse_and_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for f in [GroupFamily::su(3), GroupFamily::sp(2), GroupFamily::so(5)] {
            let fr = frame(f);
            let p = MetricOperator::random_torus_invariant(fr.clone(), &mut rng);
            for _ in 0..10 {
                let x = fr.coords(&f.random_algebra(&mut rng));
                let y = fr.coords(&f.random_algebra(&mut rng));
                assert!((p.apply_inv(&p.apply(&x)) - &x).amax() < 1e-10);
                assert!(p.inner(&x, &x) > 0.0);
                assert!((p.apply(&x).dot(&y) - x.dot(&p.apply(&y))).abs() < 1e-10);
            }
            assert!(p.torus_invariance_residual() < 1e-10, "{f}");
        }
    }

    #[test]
    fn eigenvalues_are_block_eigenvalues() {
        let fr = frame(GroupFamily::su(3));
        let t = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let p = MetricOperator::torus_invariant(fr, &t, &[0.7, 1.3, 4.0]).unwrap();
        let mut expected: Vec<f64> = t.symmetric_eigen().eigenvalues.iter().copied().collect();
        expected.extend([0.7, 0.7, 1.3, 1.3, 4.0, 4.0]);
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in p.eigenvalues().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ad_star_is_the_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for f in [GroupFamily::su(3), GroupFamily::sp(2), GroupFamily::so(5)] {
            let fr = frame(f);
            let p = MetricOperator::random_torus_invariant(fr.clone(), &mut rng);
            for _ in 0..100 {
                let a = fr.coords(&f.random_algebra(&mut rng));
                let x = fr.coords(&f.random_algebra(&mut rng));
                let y = fr.coords(&f.random_algebra(&mut rng));
                let lhs = p.inner(&fr.bracket(&a, &x), &y);
                let rhs = p.inner(&x, &p.ad_star_apply(&a, &y));
                assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
                let via_matrix = p.ad_star(&a) * &y;
                assert!((via_matrix - p.ad_star_apply(&a, &y)).amax() < 1e-10);
            }
        }
    }

    #[test]
    fn ad_star_for_identity_and_torus() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let f = GroupFamily::sp(2);
        let fr = frame(f);
        let id = MetricOperator::identity(fr.clone());
        let a = fr.coords(&f.random_algebra(&mut rng));
        assert!((id.ad_star(&a) + fr.ad_matrix(&a)).amax() < 1e-12);
        let p = MetricOperator::random_torus_invariant(fr.clone(), &mut rng);
        let mut z = fr.coords(&f.random_algebra(&mut rng));
        z = fr.cartan_part(&z);
        assert!((p.ad_star(&z) + fr.ad_matrix(&z)).amax() < 1e-10);
    }

    #[test]
    fn l_tensor_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let f = GroupFamily::su(3);
        let fr = frame(f);
        let id = MetricOperator::identity(fr.clone());
        let a = fr.coords(&f.random_algebra(&mut rng));
        let b = fr.coords(&f.random_algebra(&mut rng));
        assert!((id.l_tensor(&a, &b) + fr.bracket(&a, &b)).amax() < 1e-12);
        let p = MetricOperator::random_torus_invariant(fr.clone(), &mut rng);
        assert!(p.l_tensor(&a, &a).amax() < 1e-12);
        let z1 = fr.cartan_part(&a);
        let z2 = fr.cartan_part(&b);
        assert!(p.l_tensor(&z1, &z2).amax() < 1e-12);
    }

    #[test]
    fn torus_conjugation_preserves_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let f = GroupFamily::sp(2);
        let fr = frame(f);
        let p = MetricOperator::random_torus_invariant(fr.clone(), &mut rng);
        for _ in 0..10 {
            let z = fr.cartan_part(&fr.coords(&f.random_algebra(&mut rng)));
            let t = exp_map(&fr.element(&z));
            let x = fr.coords(&f.random_algebra(&mut rng));
            let y = fr.coords(&f.random_algebra(&mut rng));
            let lhs = p.inner(&fr.ad(&t, &x), &fr.ad(&t, &y));
            assert!((lhs - p.inner(&x, &y)).abs() < 1e-9);
        }
    }

    #[test]
    fn spec_round_trip() {
        let fr = frame(GroupFamily::su(3));
        let spec: MetricSpec = serde_json::from_str(r#"{"t_block":[[1,0],[0,1]],"alphas":[1,2,3]}"#).unwrap();
        let p = MetricOperator::from_spec(fr, &spec).unwrap();
        assert_eq!(p.eigenvalues().last().copied(), Some(3.0));
    }
}
