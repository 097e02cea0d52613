//! Eschenburg and Bazaikin parameter families.

use std::collections::BTreeSet;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::freeness::{bazaikin_free, eschenburg_free, eschenburg_positive_flag};

/// dim SU(3) - 1
pub const ESCHENBURG_DIM: usize = 7;
/// dim SU(5) - dim(Sp(2)·S^1)
pub const BAZAIKIN_DIM: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EschenburgRecord {
    pub p: [i64; 3],
    pub q: [i64; 3],
    pub free: bool,
    pub positive_flag: bool,
    pub canonical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BazaikinRecord {
    pub p: [i64; 5],
    pub free: bool,
    pub canonical: bool,
}

fn sorted_desc<const N: usize>(mut a: [i64; N]) -> [i64; N] {
    a.sort_unstable_by(|x, y| y.cmp(x));
    a
}

fn neg<const N: usize>(a: [i64; N]) -> [i64; N] {
    a.map(|x| -x)
}

/// Lexicographically largest of the images of `(p, q)` under negation and
/// side swap, each side sorted descending.
pub fn canonical_eschenburg(p: [i64; 3], q: [i64; 3]) -> ([i64; 3], [i64; 3]) {
    [(p, q), (q, p), (neg(p), neg(q)), (neg(q), neg(p))]
        .into_iter()
        .map(|(a, b)| (sorted_desc(a), sorted_desc(b)))
        .max()
        .unwrap()
}

pub fn canonical_bazaikin(p: [i64; 5]) -> [i64; 5] {
    sorted_desc(p).max(sorted_desc(neg(p)))
}

fn tuples<const N: usize>(values: &[i64]) -> Vec<[i64; N]> {
    let mut out = vec![[0; N]];
    for i in 0..N {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |&v| {
                    let mut t = t;
                    t[i] = v;
                    t
                })
            })
            .collect();
    }
    out
}

/// The positivity flag is taken over both orientations, since the side
/// swap `g -> g^-1` identifies the two quotients.
pub fn eschenburg_record(p: [i64; 3], q: [i64; 3]) -> Result<EschenburgRecord> {
    let free = eschenburg_free(p, q)?;
    let positive_flag = free && (eschenburg_positive_flag(p, q)? || eschenburg_positive_flag(q, p)?);
    Ok(EschenburgRecord {
        p,
        q,
        free,
        positive_flag,
        canonical: canonical_eschenburg(p, q) == (p, q),
    })
}

/// All `(p, q)` with entries in `[-bound, bound]` and equal sums, one
/// record per canonical class, sorted.
pub fn enumerate_eschenburg(bound: u32) -> Vec<EschenburgRecord> {
    let b = i64::from(bound);
    let values: Vec<i64> = (-b..=b).collect();
    let ps: Vec<[i64; 3]> = tuples::<3>(&values).into_iter().filter(|p| *p == sorted_desc(*p)).collect();
    let qs = ps.clone();
    let classes: BTreeSet<([i64; 3], [i64; 3])> = ps
        .par_iter()
        .flat_map_iter(|p| {
            let sp: i64 = p.iter().sum();
            qs.iter()
                .filter(move |q| q.iter().sum::<i64>() == sp)
                .map(move |q| canonical_eschenburg(*p, *q))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    classes
        .into_par_iter()
        .map(|(p, q)| eschenburg_record(p, q).expect("sums agree"))
        .collect()
}

/// Odd 5-tuples with `|p_i| <= bound` up to sorting and global sign.
pub fn enumerate_bazaikin(bound: u32) -> Vec<BazaikinRecord> {
    let b = i64::from(bound);
    let values: Vec<i64> = (-b..=b).filter(|x| x % 2 != 0).collect();
    let classes: BTreeSet<[i64; 5]> = tuples::<5>(&values)
        .into_iter()
        .filter(|p| *p == sorted_desc(*p))
        .map(canonical_bazaikin)
        .collect();
    classes
        .into_par_iter()
        .map(|p| BazaikinRecord {
            p,
            free: bazaikin_free(p),
            canonical: true,
        })
        .collect()
}

/// Flat rows for the CSV summary.
pub trait CsvRow {
    fn header() -> &'static str;
    fn row(&self) -> String;
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

impl CsvRow for EschenburgRecord {
    fn header() -> &'static str {
        "p,q,free,positive_flag,canonical,quotient_dim"
    }
    fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            join(&self.p),
            join(&self.q),
            self.free,
            self.positive_flag,
            self.canonical,
            ESCHENBURG_DIM
        )
    }
}

impl CsvRow for BazaikinRecord {
    fn header() -> &'static str {
        "p,free,canonical,quotient_dim"
    }
    fn row(&self) -> String {
        format!("{},{},{},{}", join(&self.p), self.free, self.canonical, BAZAIKIN_DIM)
    }
}

pub fn write_jsonl<T: Serialize, W: Write>(records: &[T], mut out: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv<T: CsvRow, W: Write>(records: &[T], mut out: W) -> Result<()> {
    writeln!(out, "{}", T::header())?;
    for r in records {
        writeln!(out, "{}", r.row())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupFamily;
    use crate::catalog::tori::theorem2_torus;
    use crate::freeness::{is_free_exact, FreenessMode, TorusActionWeights};
    use std::collections::HashSet;

    #[test]
    fn eschenburg_free_flag_matches_exact_checker() {
        let recs = enumerate_eschenburg(2);
        assert!(!recs.is_empty());
        for r in &recs {
            assert!(r.canonical);
            let w = TorusActionWeights::circle(GroupFamily::su(3), &r.p, &r.q).unwrap();
            match is_free_exact(&w, FreenessMode::Strict) {
                Ok(v) => assert_eq!(r.free, v.free, "{r:?}"),
                // the circle acts trivially
                Err(_) => assert!(!r.free && r.p.iter().zip(&r.q).all(|(a, b)| a - b == r.p[0] - r.q[0]), "{r:?}"),
            }
            assert!(r.free || !r.positive_flag);
        }
        let (p, q) = canonical_eschenburg([1, 1, 1], [0, 0, 3]);
        assert_eq!((p, q), ([3, 0, 0], [1, 1, 1]));
        let recs3 = enumerate_eschenburg(3);
        assert!(recs3.iter().any(|r| r.p == p && r.q == q && r.free && r.positive_flag));
    }

    #[test]
    fn eschenburg_classes_are_orbits() {
        // Independent count: orbits of the raw pairs under the same group,
        // formed by union of orbit sets.
        let b = 1i64;
        let vals: Vec<i64> = (-b..=b).collect();
        let mut seen: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
        let mut count = 0;
        for p in tuples::<3>(&vals) {
            for q in tuples::<3>(&vals) {
                if p.iter().sum::<i64>() != q.iter().sum::<i64>() {
                    continue;
                }
                let key = |a: [i64; 3], c: [i64; 3]| {
                    let (mut a, mut c) = (a.to_vec(), c.to_vec());
                    a.sort();
                    c.sort();
                    (a, c)
                };
                if seen.contains(&key(p, q)) {
                    continue;
                }
                count += 1;
                for (a, c) in [(p, q), (q, p), (neg(p), neg(q)), (neg(q), neg(p))] {
                    seen.insert(key(a, c));
                }
            }
        }
        assert_eq!(enumerate_eschenburg(1).len(), count);
    }

    #[test]
    fn enumeration_is_deterministic() {
        assert_eq!(enumerate_eschenburg(2), enumerate_eschenburg(2));
    }

    #[test]
    fn theorem2_circles_appear() {
        let t = theorem2_torus();
        let recs: HashSet<([i64; 3], [i64; 3])> = enumerate_eschenburg(3).into_iter().map(|r| (r.p, r.q)).collect();
        let mut found = 0;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let w = &t.weights;
                let p: Vec<i64> = w.w_l.iter().map(|r| r[0] * a + r[1] * b).collect();
                let q: Vec<i64> = w.w_r.iter().map(|r| r[0] * a + r[1] * b).collect();
                if p.iter().chain(&q).any(|x| x.abs() > 3) {
                    continue;
                }
                let (p, q) = ([p[0], p[1], p[2]], [q[0], q[1], q[2]]);
                assert!(recs.contains(&canonical_eschenburg(p, q)), "{p:?} {q:?}");
                found += 1;
            }
        }
        assert!(found > 5);
    }

    #[test]
    fn bazaikin_examples_and_count() {
        let recs = enumerate_bazaikin(3);
        let one = recs.iter().find(|r| r.p == [1, 1, 1, 1, 1]).unwrap();
        assert!(one.free);
        let r = recs.iter().find(|r| r.p == [3, 1, 1, 1, 1]).unwrap();
        assert_eq!(r.free, bazaikin_free([1, 1, 1, 1, 3]));
        // All 4^5 raw tuples, identified with their negatives as multisets.
        let mut classes: HashSet<Vec<i64>> = HashSet::new();
        for t in tuples::<5>(&[-3, -1, 1, 3]) {
            let mut a = t.to_vec();
            a.sort();
            let mut b: Vec<i64> = t.iter().map(|x| -x).collect();
            b.sort();
            classes.insert(a.min(b));
        }
        assert_eq!(recs.len(), classes.len());
    }

    #[test]
    fn exports() {
        let recs = enumerate_bazaikin(1);
        let mut buf = Vec::new();
        write_jsonl(&recs, &mut buf).unwrap();
        let line = String::from_utf8(buf).unwrap();
        let back: BazaikinRecord = serde_json::from_str(line.lines().next().unwrap()).unwrap();
        assert_eq!(back, recs[0]);
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("p,free"));
        assert!(s.contains("1 1 1 1 1,true,true,13"));
    }
}
