//! Worked examples as reusable fixtures, addressable by name.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    check_n1, check_n2, check_n2_with, check_n3, find_balanced_point, numeric_flat_search, nullspace, BalancedPoint,
    DetectorOutcome, SearchBudget, Subspace,
};
use crate::algebra::{quaternionic_matrix, AlgebraElement, CMat, Frame, GroupElement, GroupFamily};
use crate::biquotient::{BiquotientAction, PlaneReport};
use crate::error::{BiqError, Result};
use crate::freeness::{eschenburg_free, is_free_exact, FreenessMode, TorusActionWeights};
use crate::metric::{random_spd, MetricOperator};

/// Flatness bound for certified planes.
pub const FLAT_BOUND: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub bound: f64,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    /// A few representative planes.
    pub planes: Vec<PlaneReport>,
}

impl FixtureReport {
    fn new(fixture: &str, seed: u64, checks: Vec<CheckRecord>, planes: Vec<PlaneReport>) -> Self {
        Self {
            fixture: fixture.into(),
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
            planes,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FixtureConfig {
    pub seed: u64,
    pub search: SearchBudget,
}

impl Default for FixtureConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            search: SearchBudget::default(),
        }
    }
}

pub trait Fixture: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, cfg: &FixtureConfig) -> Result<FixtureReport>;
}

pub fn fixtures() -> Vec<Box<dyn Fixture>> {
    vec![
        Box::new(Example1Fixture),
        Box::new(Example2Fixture),
        Box::new(Example3Fixture),
        Box::new(Example4Fixture),
    ]
}

pub fn fixture(name: &str) -> Result<Box<dyn Fixture>> {
    fixtures()
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| BiqError::InvalidInput(format!("unknown fixture '{name}'")))
}

/// Tracks the worst flatness value over many certified planes.
#[derive(Default)]
struct FlatTally {
    trials: usize,
    certified: usize,
    worst: f64,
    failures: Vec<String>,
}

impl FlatTally {
    fn record(&mut self, outcome: &Result<(DetectorOutcome, Option<PlaneReport>)>) {
        self.trials += 1;
        match outcome {
            Ok((_, Some(rep))) => {
                self.certified += 1;
                self.worst = self.worst.max(rep.sec_quotient.abs());
            }
            Ok((out, None)) => self.failures.push(format!("{out:?}")),
            Err(e) => self.failures.push(e.to_string()),
        }
    }

    fn checks(&self, label: &str) -> Vec<CheckRecord> {
        vec![
            CheckRecord {
                name: format!("{label}: certificate emitted"),
                passed: self.certified == self.trials,
                trials: self.trials,
                worst: (self.trials - self.certified) as f64,
                bound: 0.0,
                note: self.failures.first().cloned(),
            },
            CheckRecord {
                name: format!("{label}: |sec_quotient| of certified plane"),
                passed: self.certified > 0 && self.worst < FLAT_BOUND,
                trials: self.certified,
                worst: self.worst,
                bound: FLAT_BOUND,
                note: None,
            },
        ]
    }
}

fn evaluate(
    out: DetectorOutcome,
    act: &BiquotientAction,
    g: &GroupElement,
    p: &MetricOperator,
) -> Result<(DetectorOutcome, Option<PlaneReport>)> {
    let rep = match out.certificate() {
        Some(c) => Some(c.evaluate(act, g, p)?),
        None => None,
    };
    Ok((out, rep))
}

// Example 1: Sp(2) with a circle acting on both sides.

/// The root spaces of `2e_1` and `2e_2` in sp(2).
pub fn example1_subspaces(frame: &Frame) -> (Subspace, Subspace) {
    let w1 = Subspace::root_space(frame, &[2, 0]).expect("sp(2) long root");
    let w2 = Subspace::root_space(frame, &[0, 2]).expect("sp(2) long root");
    (w1, w2)
}

/// Random circle weights on `group` with entries in `[-bound, bound]` that
/// act freely in the strict sense.
pub fn random_free_circle<R: Rng + ?Sized>(group: GroupFamily, bound: i64, rng: &mut R) -> TorusActionWeights {
    let rows = crate::freeness::torus_rows(group);
    loop {
        let p: Vec<i64> = (0..rows).map(|_| rng.random_range(-bound..=bound)).collect();
        let mut q: Vec<i64> = (0..rows).map(|_| rng.random_range(-bound..=bound)).collect();
        if matches!(group.family, crate::algebra::Family::Su) {
            q[0] += p.iter().sum::<i64>() - q.iter().sum::<i64>();
        }
        let Ok(w) = TorusActionWeights::circle(group, &p, &q) else {
            continue;
        };
        if matches!(is_free_exact(&w, FreenessMode::Strict), Ok(v) if v.free) {
            return w;
        }
    }
}

pub fn example1_trial<R: Rng + ?Sized>(
    act: &BiquotientAction,
    p: &MetricOperator,
    g: &GroupElement,
    rng: &mut R,
) -> Result<(DetectorOutcome, Option<PlaneReport>)> {
    let (w1, w2) = example1_subspaces(act.frame());
    evaluate(check_n2(p, &w1, &w2, act, g, rng), act, g, p)
}

pub struct Example1Fixture;

impl Fixture for Example1Fixture {
    fn name(&self) -> &'static str {
        "example1"
    }

    fn summary(&self) -> &'static str {
        "Sp(2)//S^1: N2 flat plane at random points for random circles and torus-invariant metrics"
    }

    fn run(&self, cfg: &FixtureConfig) -> Result<FixtureReport> {
        let f = GroupFamily::sp(2);
        let frame = Arc::new(Frame::new(f)?);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut tally = FlatTally::default();
        let mut planes = Vec::new();
        for _ in 0..20 {
            let w = random_free_circle(f, 5, &mut rng);
            let act = BiquotientAction::from_torus(frame.clone(), w, FreenessMode::Strict)?;
            for _ in 0..20 {
                let p = MetricOperator::random_torus_invariant(frame.clone(), &mut rng);
                for _ in 0..20 {
                    let g = f.random_group(&mut rng);
                    let r = example1_trial(&act, &p, &g, &mut rng);
                    if planes.is_empty() {
                        if let Ok((_, Some(rep))) = &r {
                            planes.push(rep.clone());
                        }
                    }
                    tally.record(&r);
                }
            }
        }
        Ok(FixtureReport::new(self.name(), cfg.seed, tally.checks("N2"), planes))
    }
}

// Example 2: Eschenburg spaces with q_k between the p's.

/// Free Eschenburg weights with entries in `[-bound, bound]` and
/// `min p <= q_k <= max p`, excluding the case where the form vanishes
/// identically along the rotation path.
pub fn random_interval_eschenburg<R: Rng + ?Sized>(k: usize, bound: i64, rng: &mut R) -> TorusActionWeights {
    loop {
        let p: [i64; 3] = std::array::from_fn(|_| rng.random_range(-bound..=bound));
        let mut q: [i64; 3] = std::array::from_fn(|_| rng.random_range(-bound..=bound));
        let (lo, hi) = (*p.iter().min().unwrap(), *p.iter().max().unwrap());
        let others: i64 = (0..3).filter(|&i| i != k).map(|i| q[i]).sum();
        q[k] = p.iter().sum::<i64>() - others;
        if q[k] < lo || q[k] > hi || q[k].abs() > bound || p == q {
            continue;
        }
        if eschenburg_free(p, q).unwrap_or(false) {
            return TorusActionWeights::circle(GroupFamily::su(3), &p, &q).expect("valid circle");
        }
    }
}

/// The root space of su(3) whose root vanishes on `Y_k`.
pub fn example2_root_space(frame: &Frame, k: usize) -> Subspace {
    let y = super::eschenburg_y(k);
    let dec = &frame.decomposition;
    let r = (0..dec.roots.len())
        .find(|&r| dec.root_value(r, &y).abs() < 1e-12)
        .expect("su(3) has a root vanishing on Y_k");
    let (ix, iy) = frame.root_indices(r);
    Subspace::from_coords(&[frame.unit(ix), frame.unit(iy)], format!("E({:?})", dec.roots[r].functional))
}

pub struct Example2Outcome {
    pub balanced: BalancedPoint,
    pub outcome: DetectorOutcome,
    pub plane: Option<PlaneReport>,
    /// Q-distance of the certified X from the line of `P^-1 Y_k`.
    pub x_alignment: f64,
}

pub fn example2_trial<R: Rng + ?Sized>(
    weights: &TorusActionWeights,
    p: &MetricOperator,
    k: usize,
    rng: &mut R,
) -> Result<Example2Outcome> {
    let frame = p.frame().clone();
    let balanced = find_balanced_point(weights, k, 16, rng)?;
    let act = BiquotientAction::from_torus(frame.clone(), weights.clone(), FreenessMode::Strict)?;
    let k_alg = Subspace::cartan(&frame);
    let v = example2_root_space(&frame, k);
    let (outcome, plane) = evaluate(check_n3(p, &k_alg, &v, &act, &balanced.g, rng), &act, &balanced.g, p)?;
    let x_alignment = match outcome.certificate() {
        Some(c) => {
            let target = p.apply_inv(&frame.coords(&super::eschenburg_y(k))).normalize();
            let x = c.x().normalize();
            (&x - &target * target.dot(&x)).norm()
        }
        None => f64::NAN,
    };
    Ok(Example2Outcome {
        balanced,
        outcome,
        plane,
        x_alignment,
    })
}

pub struct Example2Fixture;

impl Fixture for Example2Fixture {
    fn name(&self) -> &'static str {
        "example2"
    }

    fn summary(&self) -> &'static str {
        "Eschenburg spaces with q_3 in [min p, max p]: balanced point and N3 flat plane"
    }

    fn run(&self, cfg: &FixtureConfig) -> Result<FixtureReport> {
        let frame = Arc::new(Frame::new(GroupFamily::su(3))?);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let k = 2;
        let mut tally = FlatTally::default();
        let mut worst_res: f64 = 0.0;
        let mut solved = 0;
        let mut planes = Vec::new();
        let mut notes = Vec::new();
        for _ in 0..10 {
            let w = random_interval_eschenburg(k, 6, &mut rng);
            let p = MetricOperator::random_torus_invariant(frame.clone(), &mut rng);
            match example2_trial(&w, &p, k, &mut rng) {
                Ok(o) => {
                    solved += 1;
                    worst_res = worst_res.max(o.balanced.residual);
                    if planes.is_empty() {
                        planes.extend(o.plane.clone());
                    }
                    tally.record(&Ok((o.outcome, o.plane)));
                }
                Err(e) => {
                    notes.push(format!("{:?}: {e}", w.to_file()));
                    tally.record(&Err(e));
                }
            }
        }
        let mut checks = vec![CheckRecord {
            name: "balanced point residual".into(),
            passed: solved == 10 && worst_res < super::BALANCE_TOL,
            trials: 10,
            worst: worst_res,
            bound: super::BALANCE_TOL,
            note: notes.first().cloned(),
        }];
        checks.extend(tally.checks("N3"));
        Ok(FixtureReport::new(self.name(), cfg.seed, checks, planes))
    }
}

// Example 3: the Gromoll-Meyer sphere Sp(2)//Sp(1).

pub struct GromollMeyer {
    pub frame: Arc<Frame>,
    pub act: BiquotientAction,
    /// `diag(x, 0)`, `x` imaginary.
    pub w1: Vec<DVector<f64>>,
    /// `diag(0, y)`, `y` imaginary.
    pub w2: Vec<DVector<f64>>,
    /// Off-diagonal `[[0, v], [-conj(v), 0]] / sqrt(2)`.
    pub w3: Vec<DVector<f64>>,
}

const QUNITS: [[f64; 4]; 4] = [[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 1., 0.], [0., 0., 0., 1.]];

fn quat(entries: [[[f64; 4]; 2]; 2]) -> CMat {
    quaternionic_matrix(&[entries[0].to_vec(), entries[1].to_vec()]).expect("2x2 quaternionic matrix")
}

impl GromollMeyer {
    pub fn new() -> Result<Self> {
        let f = GroupFamily::sp(2);
        let frame = Arc::new(Frame::new(f)?);
        let z = [0.0; 4];
        let el = |m: CMat| AlgebraElement::new(f, m);
        let mut basis = Vec::new();
        let (mut w1, mut w2, mut w3) = (Vec::new(), Vec::new(), Vec::new());
        for x in &QUNITS[1..] {
            let l = el(quat([[*x, z], [z, *x]]))?;
            let r = el(quat([[*x, z], [z, z]]))?;
            w1.push(frame.coords(&r));
            w2.push(frame.coords(&el(quat([[z, z], [z, *x]]))?));
            basis.push((l, r));
        }
        for v in &QUNITS {
            let conj = [-v[0], v[1], v[2], v[3]];
            let m = quat([[z, *v], [conj, z]]) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            w3.push(frame.coords(&el(m)?));
        }
        let act = BiquotientAction::new(frame.clone(), basis, FreenessMode::Strict)?;
        Ok(Self { frame, act, w1, w2, w3 })
    }

    /// `(1/sqrt 2) [[1, i], [i, 1]]`.
    pub fn point(&self) -> GroupElement {
        let one = [1.0, 0.0, 0.0, 0.0];
        let i = [0.0, 1.0, 0.0, 0.0];
        let m = quat([[one, i], [i, one]]) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        GroupElement {
            family: GroupFamily::sp(2),
            mat: m,
        }
    }

    /// Metric `l1` on W1, `b2` on W2 and `l3` on W3; invariant under the
    /// right Sp(1) factor.
    pub fn metric(&self, l1: f64, b2: &DMatrix<f64>, l3: f64) -> Result<MetricOperator> {
        MetricOperator::from_blocks(
            self.frame.clone(),
            &[
                (self.w1.clone(), DMatrix::identity(3, 3) * l1),
                (self.w2.clone(), b2.clone()),
                (self.w3.clone(), DMatrix::identity(4, 4) * l3),
            ],
        )
    }

    pub fn random_metric<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<MetricOperator> {
        let l1 = 0.3 + 2.7 * rng.random::<f64>();
        let l3 = 0.3 + 2.7 * rng.random::<f64>();
        self.metric(l1, &random_spd(3, rng), l3)
    }

    /// `X = diag(i, 0)`, `Y = diag(0, b)` with `b` the part of `j` that is
    /// `<,>`-orthogonal to `i` inside W2.
    pub fn flat_plane(&self, p: &MetricOperator) -> (DVector<f64>, DVector<f64>) {
        let x = self.w1[0].clone();
        let (wi, wj) = (&self.w2[0], &self.w2[1]);
        let y = wj - wi * (p.inner(wj, wi) / p.inner(wi, wi));
        (x, y)
    }

    pub fn subspaces(&self) -> (Subspace, Subspace) {
        (Subspace::from_coords(&self.w1, "W1"), Subspace::from_coords(&self.w2, "W2"))
    }
}

pub struct Example3Fixture;

impl Fixture for Example3Fixture {
    fn name(&self) -> &'static str {
        "example3"
    }

    fn summary(&self) -> &'static str {
        "Gromoll-Meyer sphere: positivity sample at the identity and a flat plane at (1/sqrt 2)[[1,i],[i,1]]"
    }

    fn run(&self, cfg: &FixtureConfig) -> Result<FixtureReport> {
        let gm = GromollMeyer::new()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let id = GroupElement::identity(GroupFamily::sp(2));
        let p0 = MetricOperator::identity(gm.frame.clone());
        let search = numeric_flat_search(&gm.act, &id, &p0, cfg.search, &mut rng)?;
        let mut checks = vec![CheckRecord {
            name: "minimum sampled sec_quotient at identity (sampling bound, not a proof)".into(),
            passed: search.best.sec_quotient > 0.01,
            trials: search.evaluations,
            worst: search.best.sec_quotient,
            bound: 0.01,
            note: None,
        }];
        let g = gm.point();
        let (w1, w2) = gm.subspaces();
        let mut worst: f64 = 0.0;
        let mut certified = 0;
        let mut failures = Vec::new();
        let mut planes = vec![search.best];
        for _ in 0..20 {
            let p = gm.random_metric(&mut rng)?;
            let (x, y) = gm.flat_plane(&p);
            match gm.act.quotient_sectional_coords(&g, &p, &x, &y) {
                Ok(rep) => {
                    worst = worst.max(rep.sec_quotient.abs());
                    if planes.len() < 2 {
                        planes.push(rep);
                    }
                }
                Err(e) => {
                    worst = f64::INFINITY;
                    failures.push(e.to_string());
                }
            }
            let out = check_n2_with(&p, &w1, &w2, &gm.act, &g, &[y.clone()]);
            if let Some(c) = out.certificate() {
                let rep = c.evaluate(&gm.act, &g, &p)?;
                if rep.sec_quotient.abs() < FLAT_BOUND {
                    certified += 1;
                }
            } else {
                failures.push(format!("{out:?}"));
            }
        }
        checks.push(CheckRecord {
            name: "|sec_quotient| of the specified plane".into(),
            passed: worst < 1e-9,
            trials: 20,
            worst,
            bound: 1e-9,
            note: failures.first().cloned(),
        });
        checks.push(CheckRecord {
            name: "N2 certificate for the specified plane".into(),
            passed: certified == 20,
            trials: 20,
            worst: (20 - certified) as f64,
            bound: 0.0,
            note: None,
        });
        Ok(FixtureReport::new(self.name(), cfg.seed, checks, planes))
    }
}

// Example 4: ΔSO(2) \ SO(2n+1) / SO(2n-1).

pub struct Example4 {
    pub n: usize,
    pub frame: Arc<Frame>,
    pub act: BiquotientAction,
    pub so_block: Vec<DVector<f64>>,
    /// Column `2n-1` of the upper block.
    pub v: Vec<DVector<f64>>,
    /// Column `2n` of the upper block.
    pub w: Vec<DVector<f64>>,
    pub r: DVector<f64>,
    /// The left generator: `J` in each plane `(2i, 2i+1)`, `i < n`.
    pub j: DVector<f64>,
}

fn elementary(size: usize, a: usize, b: usize) -> CMat {
    let mut m = CMat::zeros(size, size);
    m[(a, b)] = Complex64::new(1.0, 0.0);
    m[(b, a)] = Complex64::new(-1.0, 0.0);
    m
}

impl Example4 {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(BiqError::InvalidInput("example 4 needs n >= 2".into()));
        }
        let f = GroupFamily::so(2 * n + 1);
        let size = 2 * n + 1;
        let frame = Arc::new(Frame::new(f)?);
        let el = |m: CMat| AlgebraElement::new(f, m);
        let mut jm = CMat::zeros(size, size);
        for i in 0..n {
            jm += elementary(size, 2 * i, 2 * i + 1);
        }
        let jel = el(jm)?;
        let zero = AlgebraElement::zero(f);
        let mut basis = vec![(jel.clone(), zero.clone())];
        let mut so_block = Vec::new();
        let top = 2 * n - 1;
        for a in 0..top {
            for b in a + 1..top {
                let e = el(elementary(size, a, b))?;
                so_block.push(frame.coords(&e));
                basis.push((zero.clone(), e));
            }
        }
        let v = (0..top).map(|i| el(elementary(size, i, top)).map(|e| frame.coords(&e))).collect::<Result<Vec<_>>>()?;
        let w = (0..top).map(|i| el(elementary(size, i, top + 1)).map(|e| frame.coords(&e))).collect::<Result<Vec<_>>>()?;
        let r = frame.coords(&el(elementary(size, top, top + 1))?);
        let j = frame.coords(&jel);
        let act = BiquotientAction::new(frame.clone(), basis, FreenessMode::Strict)?;
        Ok(Self { n, frame, act, so_block, v, w, r, j })
    }

    /// `lambda` on so(2n-1), `M ⊗ I` on `V ⊕ W`, `mu` on the last plane.
    pub fn metric(&self, lambda: f64, m: &DMatrix<f64>, mu: f64) -> Result<MetricOperator> {
        let k = self.v.len();
        let vw: Vec<DVector<f64>> = self.v.iter().chain(&self.w).cloned().collect();
        MetricOperator::from_blocks(
            self.frame.clone(),
            &[
                (self.so_block.clone(), DMatrix::identity(self.so_block.len(), self.so_block.len()) * lambda),
                (vw, m.kronecker(&DMatrix::identity(k, k))),
                (vec![self.r.clone()], DMatrix::from_element(1, 1, mu)),
            ],
        )
    }

    pub fn random_metric<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(MetricOperator, DMatrix<f64>)> {
        let lambda = 0.3 + 2.7 * rng.random::<f64>();
        let mu = 0.3 + 2.7 * rng.random::<f64>();
        let m = random_spd(2, rng);
        Ok((self.metric(lambda, &m, mu)?, m))
    }

    fn tensor(&self, x: &DVector<f64>, e: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.frame.dim());
        for i in 0..x.len() {
            out += &self.v[i] * (x[i] * e[0]) + &self.w[i] * (x[i] * e[1]);
        }
        out
    }

    /// `A = span{x ⊗ e1, y ⊗ e2}` with `e1, e2` eigenvectors of `M`,
    /// `x ⊥ y`, and both vectors horizontal at `h`.
    pub fn flat_subspace(&self, h: &GroupElement, m: &DMatrix<f64>) -> Result<Subspace> {
        let eig = m.clone().symmetric_eigen();
        let e1 = eig.eigenvectors.column(0).into_owned();
        let e2 = eig.eigenvectors.column(1).into_owned();
        let u = self.frame.ad_inv(h, &self.j);
        let k = self.v.len();
        let pair = |e: &DVector<f64>| {
            DVector::from_fn(k, |i, _| (&self.v[i] * e[0] + &self.w[i] * e[1]).dot(&u))
        };
        let (c1, c2) = (pair(&e1), pair(&e2));
        let x = nullspace(&DMatrix::from_row_slice(1, k, c1.as_slice()), 1e-12)
            .into_iter()
            .next()
            .ok_or_else(|| BiqError::SolverFailed("no x orthogonal to the pairing".into()))?;
        let mut rows = DMatrix::zeros(2, k);
        rows.row_mut(0).copy_from(&c2.transpose());
        rows.row_mut(1).copy_from(&x.transpose());
        let y = nullspace(&rows, 1e-12)
            .into_iter()
            .next()
            .ok_or_else(|| BiqError::SolverFailed("no y orthogonal to the pairing and x".into()))?;
        Ok(Subspace::from_coords(&[self.tensor(&x, &e1), self.tensor(&y, &e2)], "x⊗e1 + y⊗e2"))
    }

    pub fn trial(&self, p: &MetricOperator, m: &DMatrix<f64>, h: &GroupElement) -> Result<(DetectorOutcome, Option<PlaneReport>)> {
        let a = self.flat_subspace(h, m)?;
        evaluate(check_n1(p, &a, &self.act, h), &self.act, h, p)
    }
}

pub struct Example4Fixture;

impl Fixture for Example4Fixture {
    fn name(&self) -> &'static str {
        "example4"
    }

    fn summary(&self) -> &'static str {
        "ΔSO(2)\\SO(2n+1)/SO(2n-1), n = 2, 3: N1 flat plane at random points"
    }

    fn run(&self, cfg: &FixtureConfig) -> Result<FixtureReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut checks = Vec::new();
        let mut planes = Vec::new();
        for n in [2, 3] {
            let ex = Example4::new(n)?;
            let mut tally = FlatTally::default();
            for _ in 0..5 {
                let (p, m) = ex.random_metric(&mut rng)?;
                for _ in 0..50 {
                    let h = ex.frame.family().random_group(&mut rng);
                    let r = ex.trial(&p, &m, &h);
                    if planes.len() < 2 && planes.len() < n - 1 {
                        if let Ok((_, Some(rep))) = &r {
                            planes.push(rep.clone());
                        }
                    }
                    tally.record(&r);
                }
            }
            checks.extend(tally.checks(&format!("N1, n = {n}")));
        }
        Ok(FixtureReport::new(self.name(), cfg.seed, checks, planes))
    }
}
