//! Numerical minimization of quotient curvature over horizontal planes.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::GroupElement;
use crate::biquotient::{BiquotientAction, CertificateKind, PlaneReport, PointEval};
use crate::error::{BiqError, Result};
use crate::metric::MetricOperator;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Random planes sampled up front.
    pub samples: usize,
    /// Best samples refined by compass descent.
    pub starts: usize,
    /// Step halvings per descent.
    pub halvings: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            samples: 10_000,
            starts: 8,
            halvings: 24,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub best: PlaneReport,
    pub evaluations: usize,
}

fn eval(pe: &PointEval<'_>, h: &DMatrix<f64>, c: &DVector<f64>) -> f64 {
    let m = h.ncols();
    let a = h * c.rows(0, m);
    let b = h * c.rows(m, m);
    pe.plane(&a, &b).map(|r| r.sec_quotient).unwrap_or(f64::INFINITY)
}

const MAX_SWEEPS: usize = 64;

fn descend(pe: &PointEval<'_>, h: &DMatrix<f64>, start: DVector<f64>, halvings: usize) -> (DVector<f64>, f64, usize) {
    let mut c = start;
    let mut best = eval(pe, h, &c);
    let mut evals = 1;
    let mut step = 0.25;
    for _ in 0..halvings {
        for _ in 0..MAX_SWEEPS {
            let mut improved = false;
            for i in 0..c.len() {
                for s in [step, -step] {
                    let mut t = c.clone();
                    t[i] += s;
                    let v = eval(pe, h, &t);
                    evals += 1;
                    if v < best - 1e-14 * (1.0 + best.abs()) {
                        best = v;
                        c = t;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        step *= 0.5;
    }
    (c, best, evals)
}

/// Best horizontal plane found by random sampling followed by compass
/// descent from the lowest samples. A sampling bound, not a proof.
pub fn numeric_flat_search<R: Rng + ?Sized>(
    act: &BiquotientAction,
    g: &GroupElement,
    p: &MetricOperator,
    budget: SearchBudget,
    rng: &mut R,
) -> Result<SearchResult> {
    let hs = act.horizontal_space(g, p);
    if hs.len() < 2 {
        return Err(BiqError::Precondition(format!("horizontal space has dimension {}", hs.len())));
    }
    let pe = act.at(g, p)?;
    let h = DMatrix::from_columns(&hs);
    let n = 2 * hs.len();
    let samples: Vec<DVector<f64>> = (0..budget.samples.max(1))
        .map(|_| DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal)))
        .collect();
    let mut scored: Vec<(usize, f64)> = samples.par_iter().map(|c| eval(&pe, &h, c)).enumerate().collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let refined: Vec<(DVector<f64>, f64, usize)> = scored
        .iter()
        .take(budget.starts)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(i, _)| descend(&pe, &h, samples[*i].clone(), budget.halvings))
        .collect();
    let mut evaluations = samples.len() + refined.iter().map(|r| r.2).sum::<usize>();
    let (c, _) = refined
        .into_iter()
        .map(|(c, v, _)| (c, v))
        .chain(scored.first().map(|(i, v)| (samples[*i].clone(), *v)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one sample");
    let m = hs.len();
    let mut best = pe.plane(&(&h * c.rows(0, m)), &(&h * c.rows(m, m)))?;
    evaluations += 1;
    best.certificate = CertificateKind::Numeric;
    Ok(SearchResult { best, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Frame, GroupFamily};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn trivial_action_bi_invariant_reaches_zero() {
        let f = GroupFamily::su(3);
        let fr = Arc::new(Frame::new(f).unwrap());
        let act = BiquotientAction::trivial(fr.clone());
        let p = MetricOperator::identity(fr);
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let budget = SearchBudget {
            samples: 200,
            starts: 2,
            halvings: 30,
        };
        let r = numeric_flat_search(&act, &GroupElement::identity(f), &p, budget, &mut rng).unwrap();
        assert!(r.best.sec_quotient >= -1e-12);
        assert!(r.best.sec_quotient < 1e-6, "{}", r.best.sec_quotient);
    }
}
