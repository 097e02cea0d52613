//! Equivalence of torus actions up to the family's eigenvalue symmetries.
//!
//! Two weight systems are identified when the rational spans of their
//! stacked columns `[W_L; W_R]` agree after independent row symmetries on
//! each side and an optional side swap. For SU the scalar direction
//! `(1,...,1 | 1,...,1)` is added, since scalar pairs act trivially.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::exact::{symmetry_group, SignedPerm};
use super::weights::TorusActionWeights;
use crate::algebra::Family;

pub type SpanKey = Vec<Vec<BigRational>>;

/// Reduced row echelon form of the span of `vectors`, without zero rows.
pub fn rref(vectors: &[Vec<i64>]) -> SpanKey {
    let mut m: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| BigRational::from_integer(BigInt::from(*x))).collect())
        .collect();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = BigRational::one() / m[row][c].clone();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    m
}

fn generators(family: Family, w_l: &[Vec<i64>], w_r: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = w_l.first().map(|r| r.len()).unwrap_or(0);
    let mut gens: Vec<Vec<i64>> = (0..k)
        .map(|j| w_l.iter().chain(w_r).map(|row| row[j]).collect())
        .collect();
    if matches!(family, Family::Su | Family::U) {
        gens.push(vec![1; w_l.len() + w_r.len()]);
    }
    gens
}

pub fn span_key(w: &TorusActionWeights) -> SpanKey {
    rref(&generators(w.group.family, &w.w_l, &w.w_r))
}

/// Span keys of every image of `w` under the symmetry group.
pub fn orbit_keys(w: &TorusActionWeights) -> HashSet<SpanKey> {
    let group: Vec<SignedPerm> = symmetry_group(w.group.family, w.rows());
    let mut out = HashSet::new();
    for (a, b) in [(&w.w_l, &w.w_r), (&w.w_r, &w.w_l)] {
        for s in &group {
            let la = s.apply(a);
            for t in &group {
                out.insert(rref(&generators(w.group.family, &la, &t.apply(b))));
            }
        }
    }
    out
}

fn project(gens: &[Vec<i64>], range: std::ops::Range<usize>) -> SpanKey {
    let p: Vec<Vec<i64>> = gens.iter().map(|g| g[range.clone()].to_vec()).collect();
    rref(&p)
}

/// Orthonormal basis of the span of `key`, for a fast containment test.
fn float_basis(key: &SpanKey) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for row in key {
        let mut v: Vec<f64> = row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        for _ in 0..2 {
            for b in &out {
                let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        out.push(v.into_iter().map(|x| x / n).collect());
    }
    out
}

fn contained(basis: &[Vec<f64>], v: &[i64]) -> bool {
    let mut r: Vec<f64> = v.iter().map(|x| *x as f64).collect();
    let scale = r.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for b in basis {
        let d: f64 = r.iter().zip(b).map(|(x, y)| x * y).sum();
        r.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
    }
    r.iter().map(|x| x * x).sum::<f64>().sqrt() < 1e-9 * scale
}

/// Whether some image of `a` under the symmetry group (independent row
/// symmetries per side, optional side swap) spans the same rational
/// subspace as `b`. Each side is matched on its own projection first.
pub fn lattice_equivalent(a: &TorusActionWeights, b: &TorusActionWeights) -> bool {
    if a.group != b.group || a.k != b.k {
        return false;
    }
    let family = a.group.family;
    let rows = a.rows();
    let gb = generators(family, &b.w_l, &b.w_r);
    let key_b = rref(&gb);
    if rref(&generators(family, &a.w_l, &a.w_r)).len() != key_b.len() {
        return false;
    }
    let left_b = project(&gb, 0..rows);
    let right_b = project(&gb, rows..2 * rows);
    let basis = float_basis(&key_b);
    let group: Vec<SignedPerm> = symmetry_group(family, rows);
    let zero = vec![vec![0; a.k]; rows];
    let matching = |m: &Vec<Vec<i64>>, left: bool| -> Vec<Vec<Vec<i64>>> {
        group
            .iter()
            .map(|s| s.apply(m))
            .filter(|img| {
                if left {
                    project(&generators(family, img, &zero), 0..rows) == left_b
                } else {
                    project(&generators(family, &zero, img), rows..2 * rows) == right_b
                }
            })
            .collect()
    };
    for (x, y) in [(&a.w_l, &a.w_r), (&a.w_r, &a.w_l)] {
        let lefts = matching(x, true);
        if lefts.is_empty() {
            continue;
        }
        let rights = matching(y, false);
        for l in &lefts {
            for r in &rights {
                let g = generators(family, l, r);
                if g.iter().all(|v| contained(&basis, v)) && rref(&g) == key_b {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether both sides act nontrivially: neither projection lies in the
/// scalar direction (SU/U) or vanishes.
pub fn two_sided(w: &TorusActionWeights) -> bool {
    let scalar_ok = matches!(w.group.family, Family::Su | Family::U);
    let side = |m: &[Vec<i64>]| {
        (0..w.k).any(|j| {
            let col: Vec<i64> = m.iter().map(|r| r[j]).collect();
            if scalar_ok {
                col.iter().any(|x| *x != col[0])
            } else {
                col.iter().any(|x| *x != 0)
            }
        })
    };
    side(&w.w_l) && side(&w.w_r)
}
