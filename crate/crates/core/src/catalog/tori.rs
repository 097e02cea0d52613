//! Normal forms of maximal tori acting freely on both sides.

use serde::Serialize;

use crate::algebra::GroupFamily;
use crate::error::{BiqError, Result};
use crate::freeness::TorusActionWeights;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TorusName {
    S1,
    S2,
    P1,
    P2,
    P3,
    /// The rank 2 normal forms of the corollary and Theorem 2 style tori.
    Rank2,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusNormalForm {
    pub name: TorusName,
    pub label: String,
    /// `ℓ` for the SU families, `n` for the Sp families.
    pub param: usize,
    pub weights: TorusActionWeights,
}

impl TorusNormalForm {
    /// The same weights on another family with the same number of torus
    /// rows, e.g. Sp(n) tori on SO(2n) or SO(2n+1) through U(n).
    pub fn on_group(&self, group: GroupFamily) -> Result<Self> {
        let w = TorusActionWeights::new(group, self.weights.w_l.clone(), self.weights.w_r.clone())?;
        Ok(Self {
            weights: w,
            label: format!("{} on {group}", self.label),
            ..self.clone()
        })
    }
}

/// A character `z^a w_1^b ...` as sparse `(coordinate, exponent)` pairs;
/// coordinate 0 is `z`, coordinate `i` is `w_i`.
type Char = Vec<(usize, i64)>;

fn rows(k: usize, chars: &[Char]) -> Vec<Vec<i64>> {
    chars
        .iter()
        .map(|c| {
            let mut r = vec![0; k];
            for (i, e) in c {
                r[*i] += e;
            }
            r
        })
        .collect()
}

fn bar_product(range: std::ops::RangeInclusive<usize>) -> Char {
    range.map(|i| (i, -1)).collect()
}

fn build(name: TorusName, label: String, param: usize, group: GroupFamily, k: usize, l: &[Char], r: &[Char]) -> Result<TorusNormalForm> {
    Ok(TorusNormalForm {
        name,
        label,
        param,
        weights: TorusActionWeights::new(group, rows(k, l), rows(k, r))?,
    })
}

/// `S_{1,ℓ}` (variant 1) or `S_{2,ℓ}` (variant 2) on SU(n), coordinates
/// `z, w_1, ..., w_{n-2}`.
pub fn su_tori(n: usize, l: usize, variant: u8) -> Result<TorusNormalForm> {
    if n < 3 || l < 1 || 2 * l > n {
        return Err(BiqError::InvalidInput(format!("need n >= 3 and 1 <= l <= n/2, got n = {n}, l = {l}")));
    }
    let k = n - 1;
    let group = GroupFamily::su(n);
    match variant {
        1 => {
            let left: Vec<Char> = (0..n).map(|i| if i < l { vec![(0, 2)] } else { vec![] }).collect();
            let mut right = Vec::with_capacity(n);
            let mut first = vec![(0, 1)];
            first.extend(bar_product(1..=n - 2));
            right.push(first);
            for i in 1..l {
                right.push(vec![(0, 2), (i, 1)]);
            }
            for i in l..=n - 2 {
                right.push(vec![(i, 1)]);
            }
            right.push(vec![(0, 1)]);
            build(TorusName::S1, format!("S_1,{l} on SU({n})"), l, group, k, &left, &right)
        }
        2 => {
            let left: Vec<Char> = (0..n).map(|i| if i == n - 1 { vec![(0, 2)] } else { vec![] }).collect();
            let mut right = Vec::with_capacity(n);
            let mut first = vec![(0, 1)];
            first.extend(bar_product(1..=l - 1));
            right.push(first);
            for i in 1..=n - 2 {
                right.push(vec![(i, 1)]);
            }
            let mut last = vec![(0, 1)];
            last.extend(bar_product(l..=n - 2));
            right.push(last);
            build(TorusName::S2, format!("S_2,{l} on SU({n})"), l, group, k, &left, &right)
        }
        v => Err(BiqError::InvalidInput(format!("variant must be 1 or 2, got {v}"))),
    }
}

/// The rewritten form of `S_{1,m}` on SU(2m): `(z,...,z, z̄,...,z̄)` on the
/// left and `(w̄_1...w̄_{n-2}, w_1, ..., w_{n-2}, 1)` on the right.
pub fn su_tori_rewritten(m: usize) -> Result<TorusNormalForm> {
    if m < 2 {
        return Err(BiqError::InvalidInput(format!("need m >= 2, got {m}")));
    }
    let n = 2 * m;
    let k = n - 1;
    let left: Vec<Char> = (0..n).map(|i| vec![(0, if i < m { 1 } else { -1 })]).collect();
    let mut right = vec![bar_product(1..=n - 2)];
    for i in 1..=n - 2 {
        right.push(vec![(i, 1)]);
    }
    right.push(vec![]);
    build(TorusName::S1, format!("S_1,{m} on SU({n}), rewritten"), m, GroupFamily::su(n), k, &left, &right)
}

/// `P_1^n` (variant 1) or `P_2^n` (variant 2) on Sp(n), coordinates
/// `z, w_1, ..., w_{n-1}`.
pub fn sp_tori(n: usize, variant: u8) -> Result<TorusNormalForm> {
    if n < 2 {
        return Err(BiqError::InvalidInput(format!("need n >= 2, got {n}")));
    }
    let group = GroupFamily::sp(n);
    match variant {
        1 => {
            let left: Vec<Char> = (0..n).map(|i| if i == n - 1 { vec![(0, 1)] } else { vec![] }).collect();
            let mut right: Vec<Char> = (1..n).map(|i| vec![(i, 1)]).collect();
            right.push(bar_product(1..=n - 1));
            build(TorusName::P1, format!("P_1^{n}"), n, group, n, &left, &right)
        }
        2 => {
            let left: Vec<Char> = (0..n).map(|_| vec![(0, 1)]).collect();
            let mut right: Vec<Char> = (1..n).map(|i| vec![(i, 1)]).collect();
            right.push(vec![]);
            build(TorusName::P2, format!("P_2^{n}"), n, group, n, &left, &right)
        }
        v => Err(BiqError::InvalidInput(format!("variant must be 1 or 2, got {v}"))),
    }
}

/// `P_3^3 = {diag(z,z,z); diag(z w_1, w_2, w̄_1 w̄_2)}` on SO(6) through
/// U(3) ⊂ SO(6).
pub fn spin6_extra() -> TorusNormalForm {
    let left: Vec<Char> = vec![vec![(0, 1)]; 3];
    let right: Vec<Char> = vec![vec![(0, 1), (1, 1)], vec![(2, 1)], vec![(1, -1), (2, -1)]];
    build(TorusName::P3, "P_3^3 on SO(6)".into(), 3, GroupFamily::so(6), 3, &left, &right).expect("fixed weights")
}

/// `{diag(1,1,z^2 w^2); diag(z,w,zw)}` on SU(3).
pub fn corollary_su3() -> TorusNormalForm {
    let left: Vec<Char> = vec![vec![], vec![], vec![(0, 2), (1, 2)]];
    let right: Vec<Char> = vec![vec![(0, 1)], vec![(1, 1)], vec![(0, 1), (1, 1)]];
    build(TorusName::Rank2, "S_1,1^2 = S_2,1^2 on SU(3)".into(), 1, GroupFamily::su(3), 2, &left, &right)
        .expect("fixed weights")
}

/// `{diag(z,w,zw); diag(1,1,z^2 w^2)}` on SU(3): the corollary torus with
/// the sides exchanged.
pub fn theorem2_torus() -> TorusNormalForm {
    let c = corollary_su3();
    TorusNormalForm {
        label: "T^2 of the even-dimensional SU(3) biquotient".into(),
        weights: c.weights.swapped(),
        ..c
    }
}

/// `{diag(z,z); diag(w,1)}` on Sp(2).
pub fn corollary_sp2() -> TorusNormalForm {
    sp_tori(2, 2).expect("n = 2 is valid")
}

/// Every normal form covered by the "if" direction check: `S_{i,ℓ}` for
/// `3 <= n <= max_su`, `P_i^n` for `2 <= n <= max_sp`, and `P_3^3`.
pub fn all_normal_forms(max_su: usize, max_sp: usize) -> Vec<TorusNormalForm> {
    let mut out = Vec::new();
    for n in 3..=max_su {
        for l in 1..=n / 2 {
            for v in [1, 2] {
                out.push(su_tori(n, l, v).expect("valid range"));
            }
        }
    }
    for n in 2..=max_sp {
        for v in [1, 2] {
            out.push(sp_tori(n, v).expect("valid range"));
        }
    }
    out.push(spin6_extra());
    out
}
