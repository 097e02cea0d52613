//! Exhaustive scan of two-dimensional torus actions with bounded weights,
//! compared against the rank-two normal forms.
//!
//! For a 2-torus with stacked weights `M = [W_L; W_R]`, the elements acting
//! like conjugation under `sigma` form the group `{t : D_sigma t in Z^r}`,
//! `D_sigma = W_L - sigma W_R`, whose order is the gcd of the 2x2 minors of
//! `D_sigma` (zero when the group is positive-dimensional). The elements
//! acting trivially form a subgroup of it, cut out the same way by the
//! differences of the rows of `M` (plus `2 L_1` on Sp). The action is free
//! modulo the center iff both orders agree for every `sigma`.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::tori::{corollary_sp2, corollary_su3};
use crate::algebra::{Family, GroupFamily};
use crate::error::{BiqError, Result};
use crate::freeness::{symmetry_group, SignedPerm, TorusActionWeights};

type Col = Vec<i64>;
type Key = Vec<i64>;

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub group: String,
    pub bound: i64,
    pub columns: usize,
    pub pairs: u64,
    pub maximal_rank: u64,
    pub free: u64,
    pub free_two_sided: u64,
    pub equivalent: u64,
    pub distinct_lattices: usize,
    /// One representative per inequivalent lattice.
    pub inequivalent: Vec<TorusActionWeights>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.inequivalent.is_empty() && self.equivalent > 0
    }
}

fn gcd_minors2(rows: &[[i64; 2]]) -> i64 {
    let mut g = 0i64;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            g = g.gcd(&(rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

struct Setup {
    group: GroupFamily,
    rows: usize,
    sigmas: Vec<SignedPerm>,
    images: Vec<(SignedPerm, SignedPerm, bool)>,
    targets: HashSet<Key>,
}

impl Setup {
    fn new(group: GroupFamily, target: &TorusActionWeights) -> Self {
        let rows = target.rows();
        let sigmas = symmetry_group(group.family, rows);
        let mut images = Vec::new();
        for a in &sigmas {
            for b in &sigmas {
                for swap in [false, true] {
                    images.push((a.clone(), b.clone(), swap));
                }
            }
        }
        let mut s = Self {
            group,
            rows,
            sigmas,
            images,
            targets: HashSet::new(),
        };
        let targets = s.images.iter().map(|img| s.key_of(&s.apply(img, &target.w_l, &target.w_r))).collect();
        s.targets = targets;
        s
    }

    fn su(&self) -> bool {
        matches!(self.group.family, Family::Su | Family::U)
    }

    fn apply(&self, (a, b, swap): &(SignedPerm, SignedPerm, bool), wl: &[Vec<i64>], wr: &[Vec<i64>]) -> Vec<[i64; 2]> {
        let (x, y) = if *swap { (wr, wl) } else { (wl, wr) };
        a.apply(x).into_iter().chain(b.apply(y)).map(|r| [r[0], r[1]]).collect()
    }

    /// Normalized Plücker coordinates of the span of the two columns of
    /// `m` (and the all-ones vector on SU).
    fn key_of(&self, m: &[[i64; 2]]) -> Key {
        let n = m.len();
        let mut key = Vec::new();
        if self.su() {
            for i in 0..n {
                for j in i + 1..n {
                    for l in j + 1..n {
                        let r = [[m[i][0], m[i][1], 1], [m[j][0], m[j][1], 1], [m[l][0], m[l][1], 1]];
                        key.push(
                            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]),
                        );
                    }
                }
            }
        } else {
            for i in 0..n {
                for j in i + 1..n {
                    key.push(m[i][0] * m[j][1] - m[i][1] * m[j][0]);
                }
            }
        }
        let g = key.iter().fold(0i64, |g, x| g.gcd(x));
        if g != 0 {
            let s = key.iter().find(|x| **x != 0).map(|x| x.signum()).unwrap_or(1);
            key.iter_mut().for_each(|x| *x /= g * s);
        }
        key
    }

    /// Order of the trivially acting subgroup, 0 if the torus is not of
    /// rank two modulo it.
    fn central_order(&self, wl: &[[i64; 2]], wr: &[[i64; 2]]) -> i64 {
        let base = wl[0];
        let mut e: Vec<[i64; 2]> = wl[1..]
            .iter()
            .chain(wr)
            .map(|r| [r[0] - base[0], r[1] - base[1]])
            .collect();
        if !self.su() {
            e.push([2 * base[0], 2 * base[1]]);
        }
        gcd_minors2(&e)
    }

    fn free(&self, wl: &[[i64; 2]], wr: &[[i64; 2]], central: i64) -> bool {
        let wr_v: Vec<Vec<i64>> = wr.iter().map(|r| r.to_vec()).collect();
        self.sigmas.iter().all(|s| {
            let d: Vec<[i64; 2]> = wl
                .iter()
                .zip(s.apply(&wr_v))
                .map(|(a, b)| [a[0] - b[0], a[1] - b[1]])
                .collect();
            gcd_minors2(&d) == central
        })
    }

    fn two_sided(&self, side: &[[i64; 2]]) -> bool {
        (0..2).any(|j| {
            if self.su() {
                side.iter().any(|r| r[j] != side[0][j])
            } else {
                side.iter().any(|r| r[j] != 0)
            }
        })
    }
}

/// Whether the 2-torus acts freely modulo the center, by the minor test.
pub fn free_rank2_i64(w: &TorusActionWeights) -> Result<bool> {
    if w.k != 2 {
        return Err(BiqError::InvalidInput("the minor test needs a 2-torus".into()));
    }
    let s = Setup::new(w.group, w);
    let to = |m: &[Vec<i64>]| m.iter().map(|r| [r[0], r[1]]).collect::<Vec<_>>();
    let (wl, wr) = (to(&w.w_l), to(&w.w_r));
    let c = s.central_order(&wl, &wr);
    Ok(c != 0 && s.free(&wl, &wr, c))
}

fn columns(s: &Setup, bound: i64) -> Vec<Col> {
    let vals: Vec<i64> = (-bound..=bound).collect();
    let mut out: Vec<Col> = vec![vec![]];
    for _ in 0..2 * s.rows {
        out = out
            .into_iter()
            .flat_map(|c| {
                vals.iter().map(move |v| {
                    let mut c = c.clone();
                    c.push(*v);
                    c
                })
            })
            .collect();
    }
    if s.su() {
        out.retain(|c| c[..s.rows].iter().sum::<i64>() == c[s.rows..].iter().sum::<i64>());
    }
    out
}

#[derive(Default)]
struct Acc {
    pairs: u64,
    maximal_rank: u64,
    free: u64,
    free_two_sided: u64,
    equivalent: u64,
    lattices: HashSet<Key>,
    inequivalent: BTreeMap<Key, (usize, usize)>,
}

impl Acc {
    fn merge(mut self, o: Acc) -> Acc {
        self.pairs += o.pairs;
        self.maximal_rank += o.maximal_rank;
        self.free += o.free;
        self.free_two_sided += o.free_two_sided;
        self.equivalent += o.equivalent;
        self.lattices.extend(o.lattices);
        for (k, v) in o.inequivalent {
            let e = self.inequivalent.entry(k).or_insert(v);
            *e = (*e).min(v);
        }
        self
    }
}

fn scan(group: GroupFamily, target: &TorusActionWeights, bound: i64) -> Result<ScanReport> {
    if bound < 1 {
        return Err(BiqError::InvalidInput("bound must be at least 1".into()));
    }
    let s = Setup::new(group, target);
    let cols = columns(&s, bound);
    let r = s.rows;
    let acc = (0..cols.len())
        .into_par_iter()
        .fold(Acc::default, |mut acc, i| {
            for j in i + 1..cols.len() {
                acc.pairs += 1;
                let (a, b) = (&cols[i], &cols[j]);
                let m: Vec<[i64; 2]> = (0..2 * r).map(|t| [a[t], b[t]]).collect();
                let (wl, wr) = m.split_at(r);
                let c = s.central_order(wl, wr);
                if c == 0 {
                    continue;
                }
                acc.maximal_rank += 1;
                if !s.free(wl, wr, c) {
                    continue;
                }
                acc.free += 1;
                if !(s.two_sided(wl) && s.two_sided(wr)) {
                    continue;
                }
                acc.free_two_sided += 1;
                let key = s.key_of(&m);
                if s.targets.contains(&key) {
                    acc.equivalent += 1;
                } else {
                    acc.inequivalent.entry(key.clone()).and_modify(|e| *e = (*e).min((i, j))).or_insert((i, j));
                }
                acc.lattices.insert(key);
            }
            acc
        })
        .reduce(Acc::default, Acc::merge);
    // Inequivalent lattices up to symmetry: keep one per orbit.
    let mut seen: HashSet<Key> = HashSet::new();
    let mut inequivalent = Vec::new();
    let mut reps: Vec<(Key, (usize, usize))> = acc.inequivalent.into_iter().collect();
    reps.sort_by_key(|(_, ij)| *ij);
    for (key, (i, j)) in reps {
        if seen.contains(&key) {
            continue;
        }
        let (a, b) = (&cols[i], &cols[j]);
        let wl: Vec<Vec<i64>> = (0..r).map(|t| vec![a[t], b[t]]).collect();
        let wr: Vec<Vec<i64>> = (r..2 * r).map(|t| vec![a[t], b[t]]).collect();
        for img in &s.images {
            seen.insert(s.key_of(&s.apply(img, &wl, &wr)));
        }
        inequivalent.push(TorusActionWeights::new(group, wl, wr)?);
    }
    Ok(ScanReport {
        group: group.to_string(),
        bound,
        columns: cols.len(),
        pairs: acc.pairs,
        maximal_rank: acc.maximal_rank,
        free: acc.free,
        free_two_sided: acc.free_two_sided,
        equivalent: acc.equivalent,
        distinct_lattices: acc.lattices.len(),
        inequivalent,
    })
}

/// All 2-torus actions on SU(3) with weights in `[-bound, bound]`.
pub fn scan_su3_two_tori(bound: i64) -> Result<ScanReport> {
    scan(GroupFamily::su(3), &corollary_su3().weights, bound)
}

/// All 2-torus actions on Sp(2) with weights in `[-bound, bound]`.
pub fn scan_sp2_two_tori(bound: i64) -> Result<ScanReport> {
    scan(GroupFamily::sp(2), &corollary_sp2().weights, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness::{is_free_exact, FreenessMode};

    #[test]
    fn minor_test_agrees_with_exact_checker() {
        // Every pair of bound-1 columns.
        for (group, target) in [(GroupFamily::su(3), corollary_su3()), (GroupFamily::sp(2), corollary_sp2())] {
            let s = Setup::new(group, &target.weights);
            let cols = columns(&s, 1);
            let r = s.rows;
            let (mut free, mut tested) = (0, 0);
            for i in 0..cols.len() {
                for j in i + 1..cols.len() {
                    let wl: Vec<Vec<i64>> = (0..r).map(|t| vec![cols[i][t], cols[j][t]]).collect();
                    let wr: Vec<Vec<i64>> = (r..2 * r).map(|t| vec![cols[i][t], cols[j][t]]).collect();
                    let w = TorusActionWeights::new(group, wl, wr).unwrap();
                    let fast = free_rank2_i64(&w).unwrap();
                    match is_free_exact(&w, FreenessMode::ModCenter) {
                        Ok(v) => {
                            let to = |m: &[Vec<i64>]| m.iter().map(|r| [r[0], r[1]]).collect::<Vec<_>>();
                            if s.central_order(&to(&w.w_l), &to(&w.w_r)) == 0 {
                                continue;
                            }
                            tested += 1;
                            free += usize::from(v.free);
                            assert_eq!(fast, v.free, "{w:?}");
                        }
                        Err(_) => assert!(!fast),
                    }
                }
            }
            assert!(free > 0 && tested > free, "{group}: {free} of {tested}");
        }
        for t in [corollary_su3(), corollary_sp2()] {
            assert!(free_rank2_i64(&t.weights).unwrap());
        }
    }

    #[test]
    fn small_scans() {
        let r = scan_su3_two_tori(1).unwrap();
        assert!(r.passed(), "{:?}", r.inequivalent);
        let r = scan_sp2_two_tori(1).unwrap();
        assert!(r.passed(), "{:?}", r.inequivalent);
    }
}
