//! Sectional curvature of a left-invariant metric `Q(., P .)` using
//! Püttmann's formula.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{BiqError, Result};
use crate::metric::MetricOperator;

/// Default threshold for calling a unit-area plane flat.
pub const FLAT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureValue {
    /// `<R(X,Y)Y, X>`
    pub numerator: f64,
    /// `<X,X><Y,Y> - <X,Y>^2`
    pub area: f64,
    pub sectional: f64,
}

impl CurvatureValue {
    pub fn is_flat(&self, tol: f64) -> bool {
        self.sectional.abs() < tol
    }
}

fn coords(p: &MetricOperator, x: &AlgebraElement) -> Result<DVector<f64>> {
    let fam = p.frame().family();
    if x.family != fam {
        return Err(BiqError::FamilyMismatch(x.family, fam));
    }
    Ok(p.frame().coords(x))
}

/// `B(X,Y) = 1/2 ([X, PY] - [PX, Y])` in frame coordinates.
pub fn b_tensor_coords(p: &MetricOperator, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
    let fr = p.frame();
    (fr.bracket(x, &p.apply(y)) - fr.bracket(&p.apply(x), y)) * 0.5
}

pub fn b_tensor(p: &MetricOperator, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    let (x, y) = (coords(p, x)?, coords(p, y)?);
    Ok(p.frame().element(&b_tensor_coords(p, &x, &y)))
}

/// The four-term numerator
/// `1/2 Q([PX,Y]+[X,PY],[X,Y]) - 3/4 Q(P[X,Y],[X,Y]) + Q(B(X,Y), P^-1 B(X,Y)) - Q(B(X,X), P^-1 B(Y,Y))`.
pub fn puttmann_numerator_coords(p: &MetricOperator, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let fr = p.frame();
    let px = p.apply(x);
    let py = p.apply(y);
    let xy = fr.bracket(x, y);
    let t1 = 0.5 * (fr.bracket(&px, y) + fr.bracket(x, &py)).dot(&xy);
    let t2 = -0.75 * p.apply(&xy).dot(&xy);
    let bxy = b_tensor_coords(p, x, y);
    let t3 = bxy.dot(&p.apply_inv(&bxy));
    let bxx = fr.bracket(x, &px);
    let byy = fr.bracket(y, &py);
    let t4 = -bxx.dot(&p.apply_inv(&byy));
    t1 + t2 + t3 + t4
}

pub fn puttmann_numerator(p: &MetricOperator, x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
    Ok(puttmann_numerator_coords(p, &coords(p, x)?, &coords(p, y)?))
}

pub fn sectional_coords(p: &MetricOperator, x: &DVector<f64>, y: &DVector<f64>) -> Result<CurvatureValue> {
    let xx = p.inner(x, x);
    let yy = p.inner(y, y);
    let xy = p.inner(x, y);
    let area = xx * yy - xy * xy;
    let rel = if xx * yy > 0.0 { area / (xx * yy) } else { 0.0 };
    if !(rel > 1e-12) {
        return Err(BiqError::DegeneratePlane(rel));
    }
    let numerator = puttmann_numerator_coords(p, x, y);
    Ok(CurvatureValue {
        numerator,
        area,
        sectional: numerator / area,
    })
}

pub fn sectional(p: &MetricOperator, x: &AlgebraElement, y: &AlgebraElement) -> Result<CurvatureValue> {
    sectional_coords(p, &coords(p, x)?, &coords(p, y)?)
}
