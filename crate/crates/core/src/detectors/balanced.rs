//! Points of SU(3) where the vertical vector of an Eschenburg circle action
//! is Q-orthogonal to `Y_k = i·diag(1,1,1) - 3i·E_kk`.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{exp_map, AlgebraElement, CMat, Frame, GroupElement, GroupFamily};
use crate::biquotient::BiquotientAction;
use crate::error::{BiqError, Result};
use crate::freeness::{FreenessMode, TorusActionWeights};

pub const BALANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub enum BalanceMethod {
    Identity,
    Rotation { plane: (usize, usize), angle: f64 },
    RandomPath { restarts: usize },
}

#[derive(Debug, Clone)]
pub struct BalancedPoint {
    pub g: GroupElement,
    pub residual: f64,
    pub method: BalanceMethod,
}

/// `Y_k` in su(3): `i` on the diagonal except `-2i` at position `k`.
pub fn eschenburg_y(k: usize) -> AlgebraElement {
    let f = GroupFamily::su(3);
    let mut m = CMat::zeros(3, 3);
    for i in 0..3 {
        m[(i, i)] = Complex64::new(0.0, if i == k { -2.0 } else { 1.0 });
    }
    AlgebraElement::from_matrix_unchecked(f, m)
}

fn rotation(j: usize, k: usize, t: f64) -> GroupElement {
    let mut m = CMat::identity(3, 3);
    let (c, s) = (t.cos(), t.sin());
    m[(j, j)] = Complex64::new(c, 0.0);
    m[(k, k)] = Complex64::new(c, 0.0);
    m[(j, k)] = Complex64::new(-s, 0.0);
    m[(k, j)] = Complex64::new(s, 0.0);
    GroupElement {
        family: GroupFamily::su(3),
        mat: m,
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || hi - lo < 1e-16 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves `Q(Ad_{g^-1} X_L - X_R, Y_k) = 0` for an Eschenburg circle.
///
/// A rotation in the `(j, k)` plane moves the `k`-th diagonal entry of
/// `Ad_{g^-1} X_L` between `p_k` and `p_j`, so a root exists on that path
/// whenever `q_k` lies between them. Otherwise random one-parameter paths
/// through random starting points are scanned for a sign change.
pub fn find_balanced_point<R: Rng + ?Sized>(
    weights: &TorusActionWeights,
    k: usize,
    restarts: usize,
    rng: &mut R,
) -> Result<BalancedPoint> {
    if weights.group != GroupFamily::su(3) || weights.k != 1 {
        return Err(BiqError::InvalidInput("balanced points need a circle action on SU(3)".into()));
    }
    if k >= 3 {
        return Err(BiqError::InvalidInput(format!("target index {k} out of range")));
    }
    weights.validate()?;
    let frame = Arc::new(Frame::new(weights.group)?);
    let act = BiquotientAction::from_torus(frame.clone(), weights.clone(), FreenessMode::Strict)?;
    let y = frame.coords(&eschenburg_y(k));
    let f = |g: &GroupElement| act.vertical_vectors(g)[0].dot(&y);

    let id = GroupElement::identity(weights.group);
    let r0 = f(&id);
    if r0.abs() < BALANCE_TOL {
        return Ok(BalancedPoint {
            g: id,
            residual: r0.abs(),
            method: BalanceMethod::Identity,
        });
    }
    let p = TorusActionWeights::column(&weights.w_l, 0);
    let qk = weights.w_r[k][0];
    for j in (0..3).filter(|&j| j != k && (p[j] - qk) * (p[k] - qk) <= 0) {
        let h = |t: f64| f(&rotation(j, k, t));
        if h(0.0) * h(FRAC_PI_2) > 0.0 {
            continue;
        }
        let t = bisect(h, 0.0, FRAC_PI_2);
        let g = rotation(j, k, t);
        let residual = f(&g).abs();
        if residual < BALANCE_TOL {
            return Ok(BalancedPoint {
                g,
                residual,
                method: BalanceMethod::Rotation { plane: (j, k), angle: t },
            });
        }
    }

    let fam = weights.group;
    for attempt in 0..restarts {
        let g0 = fam.random_group(rng);
        let a = fam.random_algebra(rng);
        let path = |t: f64| g0.mul(&exp_map(&a.scale(t)));
        let h = |t: f64| f(&path(t));
        let steps = 32;
        let mut prev = h(0.0);
        for s in 1..=steps {
            let t = s as f64 * std::f64::consts::PI / steps as f64;
            let cur = h(t);
            if prev * cur <= 0.0 {
                let t0 = t - std::f64::consts::PI / steps as f64;
                let ts = bisect(h, t0, t);
                let g = path(ts);
                let residual = f(&g).abs();
                if residual < BALANCE_TOL {
                    return Ok(BalancedPoint {
                        g,
                        residual,
                        method: BalanceMethod::RandomPath { restarts: attempt + 1 },
                    });
                }
            }
            prev = cur;
        }
    }
    Err(BiqError::SolverFailed(format!(
        "no balanced point for p = {p:?}, q_{k} = {qk} after {restarts} restarts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interval_case_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let w = TorusActionWeights::circle(GroupFamily::su(3), &[0, 0, 2], &[1, -1, 2]).unwrap();
        // q_3 = p_3, so the form vanishes at the identity.
        let b = find_balanced_point(&w, 2, 4, &mut rng).unwrap();
        assert!(b.residual < BALANCE_TOL);
        let w = TorusActionWeights::circle(GroupFamily::su(3), &[-1, 0, 3], &[0, 1, 1]).unwrap();
        let b = find_balanced_point(&w, 2, 4, &mut rng).unwrap();
        assert!(b.residual < BALANCE_TOL);
        assert!(matches!(b.method, BalanceMethod::Rotation { .. }));
        assert!(b.g.invariant_residual() < 1e-12);
    }

    #[test]
    fn degenerate_case_uses_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        let w = TorusActionWeights::circle(GroupFamily::su(3), &[1, 1, 1], &[0, 2, 1]).unwrap();
        let b = find_balanced_point(&w, 2, 0, &mut rng).unwrap();
        assert!(matches!(b.method, BalanceMethod::Identity));
    }

    #[test]
    fn positive_flag_parameters_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let w = TorusActionWeights::circle(GroupFamily::su(3), &[1, 1, 1], &[0, 0, 3]).unwrap();
        for k in 0..3 {
            assert!(matches!(find_balanced_point(&w, k, 8, &mut rng), Err(BiqError::SolverFailed(_))));
        }
    }
}
