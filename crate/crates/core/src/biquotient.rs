//! Biquotient actions `(u_L, u_R) . g = u_L g u_R^{-1}`: vertical and
//! horizontal spaces (left-translated to the Lie algebra), the O'Neill term
//! and quotient sectional curvature.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, CMat, Frame, GroupElement, GroupFamily};
use crate::curvature::sectional_coords;
use crate::error::{BiqError, Result};
use crate::freeness::{FreenessMode, TorusActionWeights};
use crate::metric::{orthonormalize, MetricOperator};

pub const HORIZONTAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct BiquotientAction {
    frame: Arc<Frame>,
    pub u_basis: Vec<(AlgebraElement, AlgebraElement)>,
    pub torus_weights: Option<TorusActionWeights>,
    pub mode: FreenessMode,
    left: Vec<DVector<f64>>,
    right: Vec<DVector<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    N1,
    N2,
    N3,
    #[serde(rename = "numeric")]
    Numeric,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::N1 => "N1",
            CertificateKind::N2 => "N2",
            CertificateKind::N3 => "N3",
            CertificateKind::Numeric => "numeric",
            CertificateKind::None => "none",
        })
    }
}

/// Real and imaginary parts of a complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &CMat) -> Self {
        let rows = |f: fn(&num_complex::Complex64) -> f64| {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect()
        };
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> CMat {
        let n = self.re.len();
        let m = self.re.first().map(|r| r.len()).unwrap_or(0);
        CMat::from_fn(n, m, |i, j| num_complex::Complex64::new(self.re[i][j], self.im[i][j]))
    }
}

/// A horizontal plane at a point with its quotient curvature. `x`, `y` are
/// frame coordinates of a `<,>`-orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneReport {
    pub point: MatrixRecord,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub sec_g: f64,
    pub oneill_term: f64,
    pub sec_quotient: f64,
    pub certificate: CertificateKind,
}

impl PlaneReport {
    pub fn x_element(&self, frame: &Frame) -> AlgebraElement {
        frame.element(&DVector::from_vec(self.x.clone()))
    }

    pub fn y_element(&self, frame: &Frame) -> AlgebraElement {
        frame.element(&DVector::from_vec(self.y.clone()))
    }
}

fn check_family(frame: &Frame, x: &AlgebraElement) -> Result<()> {
    if x.family != frame.family() {
        return Err(BiqError::FamilyMismatch(x.family, frame.family()));
    }
    Ok(())
}

fn check_point(frame: &Frame, g: &GroupElement) -> Result<()> {
    if g.family != frame.family() {
        return Err(BiqError::FamilyMismatch(g.family, frame.family()));
    }
    Ok(())
}

impl BiquotientAction {
    /// Action generated by pairs `(X_L, X_R)` spanning the Lie algebra of U.
    pub fn new(frame: Arc<Frame>, u_basis: Vec<(AlgebraElement, AlgebraElement)>, mode: FreenessMode) -> Result<Self> {
        for (l, r) in &u_basis {
            check_family(&frame, l)?;
            check_family(&frame, r)?;
        }
        let left: Vec<DVector<f64>> = u_basis.iter().map(|(l, _)| frame.coords(l)).collect();
        let right: Vec<DVector<f64>> = u_basis.iter().map(|(_, r)| frame.coords(r)).collect();
        let d = frame.dim();
        if !u_basis.is_empty() {
            let stacked = DMatrix::from_fn(2 * d, u_basis.len(), |i, j| if i < d { left[j][i] } else { right[j][i - d] });
            let sv = stacked.singular_values();
            let smax = sv.max();
            let smin = sv.min();
            if smin <= 1e-9 * smax.max(1.0) {
                return Err(BiqError::InvalidInput("u_basis is linearly dependent in g + g".into()));
            }
        }
        Ok(Self {
            frame,
            u_basis,
            torus_weights: None,
            mode,
            left,
            right,
        })
    }

    pub fn from_torus(frame: Arc<Frame>, weights: TorusActionWeights, mode: FreenessMode) -> Result<Self> {
        if weights.group != frame.family() {
            return Err(BiqError::FamilyMismatch(weights.group, frame.family()));
        }
        let gens = weights.generators()?;
        let mut act = Self::new(frame, gens, mode)?;
        act.torus_weights = Some(weights);
        Ok(act)
    }

    pub fn trivial(frame: Arc<Frame>) -> Self {
        Self::new(frame, vec![], FreenessMode::Strict).expect("empty basis is valid")
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn group(&self) -> GroupFamily {
        self.frame.family()
    }

    pub fn dim_u(&self) -> usize {
        self.u_basis.len()
    }

    pub fn left_coords(&self) -> &[DVector<f64>] {
        &self.left
    }

    pub fn right_coords(&self) -> &[DVector<f64>] {
        &self.right
    }

    /// `v_j = Ad_{g^-1} X_L^(j) - X_R^(j)` in frame coordinates.
    pub fn vertical_vectors(&self, g: &GroupElement) -> Vec<DVector<f64>> {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| self.frame.ad_inv(g, l) - r)
            .collect()
    }

    /// Q-orthonormal basis of the vertical space; its length drops below
    /// `dim_u` at non-free points.
    pub fn vertical_space(&self, g: &GroupElement) -> Vec<DVector<f64>> {
        orthonormalize(&self.vertical_vectors(g), |u, v| u.dot(v))
    }

    /// `N_jk = <v_j, v_k>`.
    pub fn action_gram(&self, g: &GroupElement, p: &MetricOperator) -> DMatrix<f64> {
        let v = self.vertical_vectors(g);
        let n = v.len();
        DMatrix::from_fn(n, n, |i, j| p.inner(&v[i], &v[j]))
    }

    fn gram_inverse(&self, n: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if n.nrows() == 0 {
            return Ok(n.clone());
        }
        let ev = n.clone().symmetric_eigen().eigenvalues;
        let lam = ev.min();
        if lam <= 1e-10 * ev.max().max(1.0) {
            return Err(BiqError::SingularGram(lam));
        }
        n.clone().try_inverse().ok_or(BiqError::SingularGram(lam))
    }

    /// `<,>`-orthonormal basis of the `<,>`-orthogonal complement of the
    /// vertical space.
    pub fn horizontal_space(&self, g: &GroupElement, p: &MetricOperator) -> Vec<DVector<f64>> {
        let d = self.frame.dim();
        let pv: Vec<DVector<f64>> = self.vertical_vectors(g).iter().map(|v| p.apply(v)).collect();
        let pv = orthonormalize(&pv, |u, v| u.dot(v));
        let mut comp = Vec::new();
        for i in 0..d {
            let mut e = self.frame.unit(i);
            for u in &pv {
                let c = e.dot(u);
                e -= u * c;
            }
            comp.push(e);
        }
        orthonormalize(&comp, |u, v| p.inner(u, v))
    }

    /// `<,>`-orthogonal projection onto the horizontal space.
    pub fn project_horizontal(&self, g: &GroupElement, p: &MetricOperator, x: &DVector<f64>) -> Result<DVector<f64>> {
        let v = self.vertical_vectors(g);
        if v.is_empty() {
            return Ok(x.clone());
        }
        let ninv = self.gram_inverse(&self.action_gram(g, p))?;
        let c = DVector::from_iterator(v.len(), v.iter().map(|vj| p.inner(vj, x)));
        let coef = ninv * c;
        let mut out = x.clone();
        for (vj, a) in v.iter().zip(coef.iter()) {
            out -= vj * *a;
        }
        Ok(out)
    }

    /// Largest `|<v_j, x>| / (|v_j| |x|)`.
    pub fn horizontality_residual(&self, g: &GroupElement, p: &MetricOperator, x: &DVector<f64>) -> f64 {
        let nx = p.norm(x);
        if nx == 0.0 {
            return 0.0;
        }
        self.vertical_vectors(g)
            .iter()
            .map(|v| {
                let nv = p.norm(v);
                if nv == 0.0 {
                    0.0
                } else {
                    p.inner(v, x).abs() / (nv * nx)
                }
            })
            .fold(0.0, f64::max)
    }

    /// `c_j = <Ad_{g^-1} X_L^(j), L(a,b)> - <X_R^(j), [a,b]>`.
    pub fn oneill_pairings(&self, g: &GroupElement, p: &MetricOperator, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        let l = p.l_tensor(a, b);
        let ab = self.frame.bracket(a, b);
        DVector::from_iterator(
            self.left.len(),
            self.left
                .iter()
                .zip(&self.right)
                .map(|(xl, xr)| p.inner(&self.frame.ad_inv(g, xl), &l) - p.inner(xr, &ab)),
        )
    }

    /// `z(a,b;g) = sqrt(c^T N^-1 c)`, the norm of the vertical part of the
    /// bracket of horizontal extensions of `a` and `b`.
    pub fn z_term_coords(&self, g: &GroupElement, p: &MetricOperator, a: &DVector<f64>, b: &DVector<f64>) -> Result<f64> {
        if self.left.is_empty() {
            return Ok(0.0);
        }
        let ninv = self.gram_inverse(&self.action_gram(g, p))?;
        let c = self.oneill_pairings(g, p, a, b);
        Ok(c.dot(&(ninv * &c)).max(0.0).sqrt())
    }

    pub fn z_term(&self, g: &GroupElement, p: &MetricOperator, a: &AlgebraElement, b: &AlgebraElement) -> Result<f64> {
        check_point(&self.frame, g)?;
        check_family(&self.frame, a)?;
        check_family(&self.frame, b)?;
        self.z_term_coords(g, p, &self.frame.coords(a), &self.frame.coords(b))
    }

    /// Precomputes the point-dependent data for repeated plane evaluations.
    pub fn at<'a>(&'a self, g: &GroupElement, p: &'a MetricOperator) -> Result<PointEval<'a>> {
        check_point(&self.frame, g)?;
        let ninv = self.gram_inverse(&self.action_gram(g, p))?;
        let ad_left = self.left.iter().map(|l| self.frame.ad_inv(g, l)).collect();
        Ok(PointEval {
            act: self,
            p,
            point: g.clone(),
            ad_left,
            ninv,
        })
    }

    pub fn quotient_sectional_coords(
        &self,
        g: &GroupElement,
        p: &MetricOperator,
        a: &DVector<f64>,
        b: &DVector<f64>,
    ) -> Result<PlaneReport> {
        check_point(&self.frame, g)?;
        for x in [a, b] {
            let r = self.horizontality_residual(g, p, x);
            if r > HORIZONTAL_TOL {
                return Err(BiqError::NotHorizontal(r));
            }
        }
        let a = self.project_horizontal(g, p, a)?;
        let b = self.project_horizontal(g, p, b)?;
        self.at(g, p)?.plane(&a, &b)
    }

    pub fn quotient_sectional(
        &self,
        g: &GroupElement,
        p: &MetricOperator,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<PlaneReport> {
        check_family(&self.frame, a)?;
        check_family(&self.frame, b)?;
        self.quotient_sectional_coords(g, p, &self.frame.coords(a), &self.frame.coords(b))
    }
}

/// Point-dependent data of an action for fast evaluation of many planes.
pub struct PointEval<'a> {
    act: &'a BiquotientAction,
    p: &'a MetricOperator,
    point: GroupElement,
    ad_left: Vec<DVector<f64>>,
    ninv: DMatrix<f64>,
}

impl PointEval<'_> {
    pub fn point(&self) -> &GroupElement {
        &self.point
    }

    pub fn z_term(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        if self.ad_left.is_empty() {
            return 0.0;
        }
        let fr = self.act.frame();
        let l = self.p.l_tensor(a, b);
        let ab = fr.bracket(a, b);
        let c = DVector::from_iterator(
            self.ad_left.len(),
            self.ad_left
                .iter()
                .zip(self.act.right_coords())
                .map(|(xl, xr)| self.p.inner(xl, &l) - self.p.inner(xr, &ab)),
        );
        c.dot(&(&self.ninv * &c)).max(0.0).sqrt()
    }

    /// Quotient curvature of the plane spanned by horizontal `a`, `b`
    /// (horizontality is the caller's responsibility).
    pub fn plane(&self, a: &DVector<f64>, b: &DVector<f64>) -> Result<PlaneReport> {
        let onb = orthonormalize(&[a.clone(), b.clone()], |u, v| self.p.inner(u, v));
        if onb.len() < 2 {
            return Err(BiqError::DegeneratePlane(0.0));
        }
        let (x, y) = (&onb[0], &onb[1]);
        let sec_g = sectional_coords(self.p, x, y)?.sectional;
        let z = self.z_term(x, y);
        let oneill = 0.75 * z * z;
        Ok(PlaneReport {
            point: MatrixRecord::from_matrix(&self.point.mat),
            x: x.iter().copied().collect(),
            y: y.iter().copied().collect(),
            sec_g,
            oneill_term: oneill,
            sec_quotient: sec_g + oneill,
            certificate: CertificateKind::None,
        })
    }
}
