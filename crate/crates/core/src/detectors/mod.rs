//! Sufficient criteria (N1)-(N3) for zero-curvature planes in a biquotient,
//! a numerical flat-plane search, and the worked example fixtures.

mod balanced;
pub mod fixtures;
mod search;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Frame, GroupElement};
use crate::biquotient::{BiquotientAction, CertificateKind, MatrixRecord, PlaneReport};
use crate::metric::{orthonormalize, MetricOperator};

pub use balanced::{eschenburg_y, find_balanced_point, BalanceMethod, BalancedPoint, BALANCE_TOL};
pub use search::{numeric_flat_search, SearchBudget, SearchResult};

/// Residual threshold for criterion hypotheses and certificate conditions.
pub const CERT_TOL: f64 = 1e-9;

/// A subspace of the Lie algebra with a Q-orthonormal basis in frame
/// coordinates.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub basis: Vec<DVector<f64>>,
    pub label: String,
}

impl Subspace {
    pub fn from_coords(vectors: &[DVector<f64>], label: impl Into<String>) -> Self {
        Self {
            basis: orthonormalize(vectors, |u, v| u.dot(v)),
            label: label.into(),
        }
    }

    pub fn from_elements(frame: &Frame, elements: &[AlgebraElement], label: impl Into<String>) -> Self {
        let v: Vec<DVector<f64>> = elements.iter().map(|e| frame.coords(e)).collect();
        Self::from_coords(&v, label)
    }

    /// Root space of the root with the given functional.
    pub fn root_space(frame: &Frame, functional: &[i64]) -> Option<Self> {
        let r = frame.decomposition.roots.iter().position(|r| r.functional == functional)?;
        let (ix, iy) = frame.root_indices(r);
        Some(Self::from_coords(&[frame.unit(ix), frame.unit(iy)], format!("E({functional:?})")))
    }

    pub fn cartan(frame: &Frame) -> Self {
        let v: Vec<DVector<f64>> = (0..frame.rank()).map(|i| frame.unit(i)).collect();
        Self::from_coords(&v, "t")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, dim: usize) -> DMatrix<f64> {
        if self.basis.is_empty() {
            return DMatrix::zeros(dim, 0);
        }
        DMatrix::from_columns(&self.basis)
    }

    /// Norm of the component of `x` orthogonal to the subspace.
    pub fn residual(&self, x: &DVector<f64>) -> f64 {
        let mut r = x.clone();
        for b in &self.basis {
            r -= b * b.dot(x);
        }
        r.norm()
    }

    pub fn orthonormality_error(&self) -> f64 {
        let n = self.basis.len();
        let mut e: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                e = e.max((self.basis[i].dot(&self.basis[j]) - target).abs());
            }
        }
        e
    }

    /// Largest norm of `[a, b]` over basis pairs drawn from `self` and `other`.
    pub fn bracket_residual(&self, frame: &Frame, other: &Subspace) -> f64 {
        let mut r: f64 = 0.0;
        for a in &self.basis {
            for b in &other.basis {
                r = r.max(frame.bracket(a, b).norm());
            }
        }
        r
    }

    pub fn p_invariance_residual(&self, p: &MetricOperator) -> f64 {
        self.basis.iter().map(|b| self.residual(&p.apply(b))).fold(0.0, f64::max)
    }
}

/// Orthonormal basis of the null space of `m` (columns), by singular values
/// below `tol * max(1, |m|)`.
pub fn nullspace(m: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let cols = m.ncols();
    if cols == 0 {
        return vec![];
    }
    let rows = m.nrows().max(cols);
    let mut padded = DMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let scale = svd.singular_values.max().max(1.0);
    (0..cols)
        .filter(|&i| svd.singular_values[i] <= tol * scale)
        .map(|i| vt.row(i).transpose())
        .collect()
}

/// Horizontal part of a subspace: `S ∩ V_g^⊥` with respect to `<,>`.
pub fn horizontal_intersection(
    s: &Subspace,
    act: &BiquotientAction,
    g: &GroupElement,
    p: &MetricOperator,
) -> Vec<DVector<f64>> {
    let v = act.vertical_vectors(g);
    if s.basis.is_empty() {
        return vec![];
    }
    let m = DMatrix::from_fn(v.len(), s.dim(), |j, k| p.inner(&v[j], &s.basis[k]));
    let d = act.frame().dim();
    let b = s.matrix(d);
    let combos: Vec<DVector<f64>> = nullspace(&m, 1e-10).into_iter().map(|c| &b * c).collect();
    orthonormalize(&combos, |x, y| x.dot(y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Criterion {
    N1,
    N2,
    N3,
}

impl From<Criterion> for CertificateKind {
    fn from(c: Criterion) -> Self {
        match c {
            Criterion::N1 => CertificateKind::N1,
            Criterion::N2 => CertificateKind::N2,
            Criterion::N3 => CertificateKind::N3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlatCertificate {
    pub criterion: Criterion,
    pub point: MatrixRecord,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub checked_conditions: Vec<(String, f64)>,
}

impl FlatCertificate {
    pub fn x(&self) -> DVector<f64> {
        DVector::from_vec(self.x.clone())
    }

    pub fn y(&self) -> DVector<f64> {
        DVector::from_vec(self.y.clone())
    }

    pub fn max_residual(&self) -> f64 {
        self.checked_conditions.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    /// Evaluates the certified plane with the curvature engine.
    pub fn evaluate(&self, act: &BiquotientAction, g: &GroupElement, p: &MetricOperator) -> crate::Result<PlaneReport> {
        let mut rep = act.quotient_sectional_coords(g, p, &self.x(), &self.y())?;
        rep.certificate = self.criterion.into();
        Ok(rep)
    }
}

/// Result of a criterion check. Failed hypotheses are kept apart from an
/// unsuccessful witness search.
#[derive(Debug, Clone)]
pub enum DetectorOutcome {
    Certified(FlatCertificate),
    HypothesisFailed(Vec<(String, f64)>),
    NotFound(String),
}

impl DetectorOutcome {
    pub fn certificate(&self) -> Option<&FlatCertificate> {
        match self {
            DetectorOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, DetectorOutcome::Certified(_))
    }
}

fn failed(conds: &[(String, f64)]) -> Option<DetectorOutcome> {
    let bad: Vec<(String, f64)> = conds.iter().filter(|(_, r)| !(*r < CERT_TOL)).cloned().collect();
    (!bad.is_empty()).then_some(DetectorOutcome::HypothesisFailed(bad))
}

fn certificate(
    criterion: Criterion,
    act: &BiquotientAction,
    g: &GroupElement,
    p: &MetricOperator,
    x: &DVector<f64>,
    y: &DVector<f64>,
    mut conds: Vec<(String, f64)>,
) -> DetectorOutcome {
    conds.push(("X horizontal".into(), act.horizontality_residual(g, p, x)));
    conds.push(("Y horizontal".into(), act.horizontality_residual(g, p, y)));
    let gram = x.dot(x) * y.dot(y) - x.dot(y).powi(2);
    conds.push(("X, Y independent (1 - normalized area)".into(), 1.0 - gram / (x.dot(x) * y.dot(y))));
    if let Some(DetectorOutcome::HypothesisFailed(bad)) = failed(&conds[conds.len() - 3..conds.len() - 1]) {
        return DetectorOutcome::NotFound(format!("witness not horizontal: {bad:?}"));
    }
    let independence = conds.pop().unwrap();
    if independence.1 > 1.0 - 1e-6 {
        return DetectorOutcome::NotFound("witness vectors are dependent".into());
    }
    DetectorOutcome::Certified(FlatCertificate {
        criterion,
        point: MatrixRecord::from_matrix(&g.mat),
        x: x.iter().copied().collect(),
        y: y.iter().copied().collect(),
        checked_conditions: conds,
    })
}

/// (N1): `A` abelian and P-invariant with two independent horizontal vectors.
pub fn check_n1(p: &MetricOperator, a: &Subspace, act: &BiquotientAction, g: &GroupElement) -> DetectorOutcome {
    let fr = act.frame();
    let hyp = vec![
        ("A abelian".to_string(), a.bracket_residual(fr, a)),
        ("A P-invariant".to_string(), a.p_invariance_residual(p)),
    ];
    if let Some(f) = failed(&hyp) {
        return f;
    }
    let h = horizontal_intersection(a, act, g, p);
    if h.len() < 2 {
        return DetectorOutcome::NotFound(format!("A ∩ H has dimension {}", h.len()));
    }
    let mut conds = hyp;
    conds.push(("[X,Y]".into(), fr.bracket(&h[0], &h[1]).norm()));
    certificate(Criterion::N1, act, g, p, &h[0], &h[1], conds)
}

/// Default N2 candidates: a basis of `W2 ∩ H` and 20 random unit
/// combinations of it.
pub fn n2_candidates<R: Rng + ?Sized>(
    w2: &Subspace,
    act: &BiquotientAction,
    g: &GroupElement,
    p: &MetricOperator,
    rng: &mut R,
) -> Vec<DVector<f64>> {
    let h = horizontal_intersection(w2, act, g, p);
    let mut out = h.clone();
    if !h.is_empty() {
        for _ in 0..20 {
            let mut v = DVector::zeros(h[0].len());
            for b in &h {
                v += b * (rng.random::<f64>() * 2.0 - 1.0);
            }
            let n = v.norm();
            if n > 1e-8 {
                out.push(v / n);
            }
        }
    }
    out
}

/// (N2): `W1`, `W2` P-invariant with `[W1, W2] = 0`; horizontal `X ∈ W1`,
/// `Y ∈ W2` with `[Y, PY] ∈ W2`.
pub fn check_n2_with(
    p: &MetricOperator,
    w1: &Subspace,
    w2: &Subspace,
    act: &BiquotientAction,
    g: &GroupElement,
    candidates: &[DVector<f64>],
) -> DetectorOutcome {
    let fr = act.frame();
    let hyp = vec![
        ("W1 P-invariant".to_string(), w1.p_invariance_residual(p)),
        ("W2 P-invariant".to_string(), w2.p_invariance_residual(p)),
        ("[W1,W2] = 0".to_string(), w1.bracket_residual(fr, w2)),
    ];
    if let Some(f) = failed(&hyp) {
        return f;
    }
    let h1 = horizontal_intersection(w1, act, g, p);
    let Some(x) = h1.first() else {
        return DetectorOutcome::NotFound("W1 ∩ H is zero".into());
    };
    for y in candidates {
        if w2.residual(y) > CERT_TOL || act.horizontality_residual(g, p, y) > CERT_TOL {
            continue;
        }
        let r = w2.residual(&fr.bracket(y, &p.apply(y)));
        if r < CERT_TOL {
            let mut conds = hyp.clone();
            conds.push(("[Y,PY] in W2".into(), r));
            conds.push(("Y in W2".into(), w2.residual(y)));
            conds.push(("X in W1".into(), w1.residual(x)));
            let out = certificate(Criterion::N2, act, g, p, x, y, conds);
            if out.is_certified() {
                return out;
            }
        }
    }
    DetectorOutcome::NotFound(format!("no candidate among {} satisfied [Y,PY] in W2", candidates.len()))
}

pub fn check_n2<R: Rng + ?Sized>(
    p: &MetricOperator,
    w1: &Subspace,
    w2: &Subspace,
    act: &BiquotientAction,
    g: &GroupElement,
    rng: &mut R,
) -> DetectorOutcome {
    let cands = n2_candidates(w2, act, g, p, rng);
    check_n2_with(p, w1, w2, act, g, &cands)
}

/// (N3): `V` an `Ad(K)`-invariant eigenspace of `P` orthogonal to the right
/// factor; horizontal `X ∈ k`, `Y ∈ V` with `[PX, Y] = 0`.
pub fn check_n3<R: Rng + ?Sized>(
    p: &MetricOperator,
    k_alg: &Subspace,
    v: &Subspace,
    act: &BiquotientAction,
    g: &GroupElement,
    rng: &mut R,
) -> DetectorOutcome {
    let fr = act.frame();
    let eig = v.basis.first().map(|b| b.dot(&p.apply(b))).unwrap_or(0.0);
    let eig_res = v.basis.iter().map(|b| (p.apply(b) - b * eig).norm()).fold(0.0, f64::max);
    let ur_res = act
        .right_coords()
        .iter()
        .flat_map(|r| v.basis.iter().map(move |b| b.dot(r).abs()))
        .fold(0.0, f64::max);
    let inv_res = k_alg
        .basis
        .iter()
        .flat_map(|k| v.basis.iter().map(move |b| (k, b)))
        .map(|(k, b)| v.residual(&fr.bracket(k, b)))
        .fold(0.0, f64::max);
    let hyp = vec![
        ("V eigenspace of P".to_string(), eig_res),
        ("V ⊥ u_R".to_string(), ur_res),
        ("[k, V] ⊂ V".to_string(), inv_res),
    ];
    if let Some(f) = failed(&hyp) {
        return f;
    }
    let hk = horizontal_intersection(k_alg, act, g, p);
    let hv = horizontal_intersection(v, act, g, p);
    if hk.is_empty() || hv.is_empty() {
        return DetectorOutcome::NotFound(format!("k ∩ H: {}, V ∩ H: {}", hk.len(), hv.len()));
    }
    let mut xs = hk.clone();
    for _ in 0..20 {
        let mut c = DVector::zeros(hk[0].len());
        for b in &hk {
            c += b * (rng.random::<f64>() * 2.0 - 1.0);
        }
        if c.norm() > 1e-8 {
            xs.push(c.normalize());
        }
    }
    let d = fr.dim();
    let hv_mat = DMatrix::from_columns(&hv);
    for x in &xs {
        let px = p.apply(x);
        let ad = fr.ad_matrix(&px) * &hv_mat;
        for c in nullspace(&ad, 1e-10) {
            let y = &hv_mat * c;
            let mut conds = hyp.clone();
            conds.push(("[PX,Y]".into(), fr.bracket(&px, &y).norm()));
            conds.push(("Y in V".into(), v.residual(&y)));
            conds.push(("X in k".into(), k_alg.residual(x)));
            debug_assert_eq!(y.len(), d);
            let out = certificate(Criterion::N3, act, g, p, x, &y, conds);
            if out.is_certified() {
                return out;
            }
        }
    }
    DetectorOutcome::NotFound("no X in k ∩ H with [PX, Y] = 0 for Y in V ∩ H".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupFamily;
    use crate::freeness::{FreenessMode, TorusActionWeights};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn frame(f: GroupFamily) -> Arc<Frame> {
        Arc::new(Frame::new(f).unwrap())
    }

    #[test]
    fn nullspace_basics() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let n = nullspace(&m, 1e-12);
        assert_eq!(n.len(), 2);
        for v in &n {
            assert!((m.clone() * v).norm() < 1e-12);
        }
        assert!(nullspace(&DMatrix::<f64>::identity(2, 2), 1e-12).is_empty());
    }

    #[test]
    fn n1_commuting_roots_trivial_action() {
        // e1 - e2 and e3 - e4 in su(4): their sum and difference are not roots.
        let fr = frame(GroupFamily::su(4));
        let act = BiquotientAction::trivial(fr.clone());
        let p = MetricOperator::identity(fr.clone());
        let r1 = fr.decomposition.roots.iter().position(|r| r.functional == [-1, 1, 0, 0]).unwrap();
        let r2 = fr.decomposition.roots.iter().position(|r| r.functional == [0, 0, -1, 1]).unwrap();
        let a = Subspace::from_coords(&[fr.unit(fr.root_indices(r1).0), fr.unit(fr.root_indices(r2).0)], "A");
        let g = GroupElement::identity(GroupFamily::su(4));
        let out = check_n1(&p, &a, &act, &g);
        let cert = out.certificate().expect("certificate");
        let rep = cert.evaluate(&act, &g, &p).unwrap();
        assert!(rep.sec_quotient.abs() < 1e-12);
    }

    #[test]
    fn n1_torus_is_vertical_for_one_sided_torus() {
        let f = GroupFamily::su(3);
        let fr = frame(f);
        let zero = AlgebraElement::zero(f);
        let basis = fr.decomposition.cartan_basis.iter().map(|z| (z.clone(), zero.clone())).collect();
        let act = BiquotientAction::new(fr.clone(), basis, FreenessMode::Strict).unwrap();
        let p = MetricOperator::identity(fr.clone());
        let out = check_n1(&p, &Subspace::cartan(&fr), &act, &GroupElement::identity(f));
        assert!(matches!(out, DetectorOutcome::NotFound(_)));
    }

    #[test]
    fn n1_rejects_nonabelian() {
        let fr = frame(GroupFamily::su(3));
        let act = BiquotientAction::trivial(fr.clone());
        let p = MetricOperator::identity(fr.clone());
        let a = Subspace::from_coords(&[fr.unit(2), fr.unit(3)], "root space");
        let out = check_n1(&p, &a, &act, &GroupElement::identity(GroupFamily::su(3)));
        assert!(matches!(out, DetectorOutcome::HypothesisFailed(_)));
    }

    #[test]
    fn n2_same_root_space_fails() {
        let fr = frame(GroupFamily::sp(2));
        let act = BiquotientAction::trivial(fr.clone());
        let p = MetricOperator::identity(fr.clone());
        let w = Subspace::root_space(&fr, &[2, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let out = check_n2(&p, &w, &w, &act, &GroupElement::identity(GroupFamily::sp(2)), &mut rng);
        assert!(matches!(out, DetectorOutcome::HypothesisFailed(_)));
    }

    #[test]
    fn n3_rejects_non_eigenspace() {
        let f = GroupFamily::su(3);
        let fr = frame(f);
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let w = TorusActionWeights::circle(f, &[0, 0, 2], &[1, -1, 2]).unwrap();
        let act = BiquotientAction::from_torus(fr.clone(), w, FreenessMode::Strict).unwrap();
        let p = MetricOperator::torus_invariant(fr.clone(), &DMatrix::identity(2, 2), &[1.0, 2.0, 3.0]).unwrap();
        let (a, _) = fr.root_indices(0);
        let (b, _) = fr.root_indices(1);
        let v = Subspace::from_coords(&[fr.unit(a), fr.unit(b)], "mixed");
        let out = check_n3(&p, &Subspace::cartan(&fr), &v, &act, &GroupElement::identity(f), &mut rng);
        match out {
            DetectorOutcome::HypothesisFailed(bad) => assert!(bad.iter().any(|(n, _)| n.contains("eigenspace"))),
            other => panic!("unexpected {other:?}"),
        }
    }
}
