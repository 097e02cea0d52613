//! Maximal free actions of maximal rank (Tables A and B) and their
//! verification at small parameters.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tori::{sp_tori, su_tori, su_tori_rewritten, TorusNormalForm};
use crate::algebra::{embed_u_in_so_algebra, pad_block, quaternionic_matrix, AlgebraElement, CMat, Frame, GroupFamily};
use crate::detectors::nullspace;
use crate::error::{BiqError, Result};
use crate::freeness::{is_free_exact, FreenessMode};
use crate::metric::orthonormalize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Table {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    Full,
    TorusOnly,
    Recorded,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub row: u8,
    pub table: Table,
    pub group: String,
    pub constraint: String,
    pub torus: String,
    pub u1: String,
    pub u2: String,
    /// Table A only.
    pub quotient: Option<String>,
    pub verified: Verification,
    pub note: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn entry(
    row: u8,
    table: Table,
    group: &str,
    constraint: &str,
    torus: &str,
    u1: &str,
    u2: &str,
    quotient: Option<&str>,
    verified: Verification,
    note: Option<&str>,
) -> ClassificationEntry {
    ClassificationEntry {
        row,
        table,
        group: group.into(),
        constraint: constraint.into(),
        torus: torus.into(),
        u1: u1.into(),
        u2: u2.into(),
        quotient: quotient.map(Into::into),
        verified,
        note: note.map(Into::into),
    }
}

pub fn table_entries(table: Table) -> Vec<ClassificationEntry> {
    use Table::*;
    use Verification::*;
    match table {
        A => vec![
            entry(1, A, "SU(n)", "n >= 5", "S_1,l, 2 <= l < n/2", "S^1_l semidirect", "SU(n-1)", Some("CP^{n-1}"), Full,
                Some("U = S^1 ⋉ SU(n-1); the circle diag(z^2,...,z^2,1,...,1; z,z^2,...,z^2,1,...,1,z) acts on both sides and normalizes {e} x diag(A,1)")),
            entry(2, A, "SU(2n)", "n >= 2", "S_1,n", "ΔSU(2)", "SU(2n-1)", Some("HP^{n-1}"), Full, None),
            entry(3, A, "Spin(7)", "", "P_1^3", "Spin(3)", "G_2", Some("S^4"), TorusOnly,
                Some("G_2 embedded in SO(7) and lifted to Spin(7)")),
            entry(4, A, "Spin(8)", "", "P_1^4", "Spin(3)", "Spin(7)'", Some("S^4"), TorusOnly, Some("spin embedding")),
            entry(5, A, "Spin(9)", "", "P_1^4", "Spin(3)", "Spin(7)'", Some("HP^3"), TorusOnly, Some("spin embedding")),
            entry(6, A, "SO(2n)", "n >= 3", "P_2^n", "ΔSO(2)", "SO(2n-1)", Some("CP^{n-1}"), Full,
                Some("ΔSO(2) acts as the Hopf action on S^{2n-1} = SO(2n)/SO(2n-1)")),
            entry(7, A, "SO(4n)", "", "P_2^{2n}", "ΔSU(2)", "SO(4n-1)", Some("HP^{n-1}"), Full,
                Some("ΔSU(2) acts as the Hopf action on S^{4n-1} = SO(4n)/SO(4n-1)")),
            entry(8, A, "Sp(n)", "n >= 2", "P_2^n", "ΔSp(1)", "Sp(n-1)", Some("HP^{n-1}"), Full, None),
        ],
        B => vec![
            entry(9, B, "SU(n)", "n >= 5", "S_2,l, 2 <= l < n/2", "S^1 semidirect", "SU(l)SU(n-l)", None, Full,
                Some("the circle diag(1,...,1,z^2; z,1,...,1,z) acts on both sides")),
            entry(10, B, "SU(2n)", "n >= 2", "S_2,n", "S^1", "SU(n)SU(n)", None, Full,
                Some("the circle acts only on the left; printed as diag(z,...,z,z^{n-1}), which has the wrong determinant; implemented as diag(z^-1,...,z^-1,z^{2n-1})")),
            entry(11, B, "SO(2n)", "n >= 5", "P_1^n", "SO(3)", "SU(n)", None, Full, Some("U_1 standard block embedding")),
            entry(12, B, "SO(2n+1)", "n >= 5", "P_1^n", "SO(3)", "SU(n)", None, Full, Some("U_1 standard block embedding")),
            entry(13, B, "SO(2n+1)", "n >= 3", "P_2^n", "ΔSO(2)", "SO(2n-1)", None, Full,
                Some("ΔSO(2) through SO(2n) ⊂ SO(2n+1)")),
            entry(14, B, "SO(2n)", "2n = p + q >= 2, p, q odd", "P_2^n", "ΔSO(2)", "SO(p)SO(q)", None, Full,
                Some("entry 14 was missing in its full generality in the original classification; completeness of the list is not certain")),
            entry(15, B, "SO(4n+1)", "n >= 2", "P_2^{2n}", "ΔSU(2)", "SO(4n-1)", None, Full,
                Some("ΔSU(2) through SO(4n) ⊂ SO(4n+1)")),
            entry(16, B, "Sp(n)", "n >= 3", "P_1^n", "Sp(1)", "SU(n)", None, Full, Some("U_1 standard block embedding")),
            entry(17, B, "Sp(4)", "", "P_1^4", "Sp(1)", "SU(2)^3", None, TorusOnly,
                Some("SU(2)^3 ⊂ Sp(4) through the exterior tensor product of the three tautological representations")),
        ],
    }
}

pub fn all_entries() -> Vec<ClassificationEntry> {
    let mut v = table_entries(Table::A);
    v.extend(table_entries(Table::B));
    v
}

pub fn entry_by_row(row: u8) -> Result<ClassificationEntry> {
    all_entries()
        .into_iter()
        .find(|e| e.row == row)
        .ok_or_else(|| BiqError::InvalidInput(format!("no table row {row}")))
}

/// Smallest legal parameter of a row.
pub fn smallest_parameter(row: u8) -> usize {
    match row {
        1 | 9 => 5,
        2 | 10 | 7 | 8 | 15 => 2,
        6 | 13 | 14 | 16 => 3,
        11 | 12 => 5,
        _ => 0,
    }
}

/// The group of a fully verified row at parameter `n`.
pub fn group_of(row: u8, n: usize) -> Option<GroupFamily> {
    Some(match row {
        1 | 9 => GroupFamily::su(n),
        2 | 10 => GroupFamily::su(2 * n),
        6 | 11 | 14 => GroupFamily::so(2 * n),
        12 | 13 => GroupFamily::so(2 * n + 1),
        7 => GroupFamily::so(4 * n),
        15 => GroupFamily::so(4 * n + 1),
        8 | 16 => GroupFamily::sp(n),
        _ => return None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub row: u8,
    pub parameter: usize,
    pub group: String,
    pub verified: Verification,
    pub dim_g: usize,
    pub dim_u: Option<usize>,
    pub rank_g: usize,
    pub rank_u: Option<usize>,
    pub expected_quotient_dim: usize,
    pub torus: String,
    pub torus_free: bool,
    pub checks: Vec<EntryCheck>,
    pub passed: bool,
}

/// Lie algebra of `U ⊂ G x G` as pairs `(X_L, X_R)`.
struct Construction {
    group: GroupFamily,
    torus: TorusNormalForm,
    /// Torus with coordinates aligned with the generators, when it is.
    aligned_torus: Option<TorusNormalForm>,
    gens: Vec<(AlgebraElement, AlgebraElement)>,
    /// Indices into `gens` of a circle acting on both sides and of the
    /// right factor it must normalize.
    normalizer: Option<(usize, Vec<usize>)>,
    expected_dim: usize,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn el(f: GroupFamily, m: CMat) -> Result<AlgebraElement> {
    AlgebraElement::new(f, m)
}

/// su on the index set `idx` of n x n complex matrices.
fn su_block(n: usize, idx: &[usize]) -> Vec<CMat> {
    let mut out = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let mut x = CMat::zeros(n, n);
            x[(i, j)] = c(1.0, 0.0);
            x[(j, i)] = c(-1.0, 0.0);
            out.push(x);
            let mut y = CMat::zeros(n, n);
            y[(i, j)] = c(0.0, 1.0);
            y[(j, i)] = c(0.0, 1.0);
            out.push(y);
        }
        if a > 0 {
            let mut h = CMat::zeros(n, n);
            h[(idx[0], idx[0])] = c(0.0, 1.0);
            h[(i, i)] = c(0.0, -1.0);
            out.push(h);
        }
    }
    out
}

fn so_block(size: usize, idx: &[usize]) -> Vec<CMat> {
    let mut out = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let mut x = CMat::zeros(size, size);
            x[(i, j)] = c(1.0, 0.0);
            x[(j, i)] = c(-1.0, 0.0);
            out.push(x);
        }
    }
    out
}

const QI: [f64; 4] = [0.0, 1.0, 0.0, 0.0];
const QJ: [f64; 4] = [0.0, 0.0, 1.0, 0.0];
const QK: [f64; 4] = [0.0, 0.0, 0.0, 1.0];

fn quat_matrix(n: usize, entries: &[(usize, usize, [f64; 4])]) -> CMat {
    let mut q = vec![vec![[0.0; 4]; n]; n];
    for (i, j, v) in entries {
        for t in 0..4 {
            q[*i][*j][t] += v[t];
        }
    }
    quaternionic_matrix(&q).expect("square quaternionic matrix")
}

/// sp on the quaternionic index set `idx` of Sp(n).
fn sp_block(n: usize, idx: &[usize]) -> Vec<CMat> {
    let mut out = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for u in [QI, QJ, QK] {
            out.push(quat_matrix(n, &[(i, i, u)]));
        }
        for &j in &idx[a + 1..] {
            for u in [[1.0, 0.0, 0.0, 0.0], QI, QJ, QK] {
                let conj = [-u[0], u[1], u[2], u[3]];
                out.push(quat_matrix(n, &[(i, j, u), (j, i, conj)]));
            }
        }
    }
    out
}

/// Left multiplication by i, j, k on each quaternionic 4-block of R^{4m}.
fn delta_su2_in_so(m: usize, size: usize) -> Vec<CMat> {
    // Columns are the images of 1, i, j, k.
    let mats: [[[f64; 4]; 4]; 3] = [
        [[0., -1., 0., 0.], [1., 0., 0., 0.], [0., 0., 0., -1.], [0., 0., 1., 0.]],
        [[0., 0., -1., 0.], [0., 0., 0., 1.], [1., 0., 0., 0.], [0., -1., 0., 0.]],
        [[0., 0., 0., -1.], [0., 0., -1., 0.], [0., 1., 0., 0.], [1., 0., 0., 0.]],
    ];
    mats.iter()
        .map(|l| {
            let mut x = CMat::zeros(size, size);
            for b in 0..m {
                for r in 0..4 {
                    for s in 0..4 {
                        x[(4 * b + r, 4 * b + s)] = c(l[r][s], 0.0);
                    }
                }
            }
            x
        })
        .collect()
}

fn hopf_circle_so(n_planes: usize, size: usize) -> CMat {
    let mut j = CMat::zeros(size, size);
    for i in 0..n_planes {
        j[(2 * i, 2 * i + 1)] = c(1.0, 0.0);
        j[(2 * i + 1, 2 * i)] = c(-1.0, 0.0);
    }
    j
}

fn diag_i(entries: &[f64]) -> CMat {
    let n = entries.len();
    let mut m = CMat::zeros(n, n);
    for (k, v) in entries.iter().enumerate() {
        m[(k, k)] = c(0.0, *v);
    }
    m
}

fn left(f: GroupFamily, ms: Vec<CMat>) -> Result<Vec<(AlgebraElement, AlgebraElement)>> {
    ms.into_iter().map(|m| Ok((el(f, m)?, AlgebraElement::zero(f)))).collect()
}

fn right(f: GroupFamily, ms: Vec<CMat>) -> Result<Vec<(AlgebraElement, AlgebraElement)>> {
    ms.into_iter().map(|m| Ok((AlgebraElement::zero(f), el(f, m)?))).collect()
}

fn so_dim(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

fn construct(row: u8, n: usize) -> Result<Construction> {
    let bad = || BiqError::InvalidInput(format!("parameter {n} is not legal for row {row}"));
    match row {
        1 | 9 => {
            if n < 5 {
                return Err(bad());
            }
            let l = 2;
            let f = GroupFamily::su(n);
            let (lw, rw): (Vec<f64>, Vec<f64>) = if row == 1 {
                (
                    (0..n).map(|i| if i < l { 2.0 } else { 0.0 }).collect(),
                    (0..n).map(|i| if i == 0 || i == n - 1 { 1.0 } else if i < l { 2.0 } else { 0.0 }).collect(),
                )
            } else {
                (
                    (0..n).map(|i| if i == n - 1 { 2.0 } else { 0.0 }).collect(),
                    (0..n).map(|i| if i == 0 || i == n - 1 { 1.0 } else { 0.0 }).collect(),
                )
            };
            let circle = (AlgebraElement::project(f, &diag_i(&lw)), AlgebraElement::project(f, &diag_i(&rw)));
            let blocks: Vec<CMat> = if row == 1 {
                su_block(n, &(0..n - 1).collect::<Vec<_>>())
            } else {
                let mut b = su_block(n, &(0..l).collect::<Vec<_>>());
                b.extend(su_block(n, &(l..n).collect::<Vec<_>>()));
                b
            };
            let mut gens = vec![circle];
            gens.extend(right(f, blocks)?);
            let rest: Vec<usize> = (1..gens.len()).collect();
            let torus = su_tori(n, l, if row == 1 { 1 } else { 2 })?;
            let dim_g = n * n - 1;
            let dim_u = if row == 1 { 1 + (n - 1) * (n - 1) - 1 } else { 1 + (l * l - 1) + ((n - l) * (n - l) - 1) };
            Ok(Construction {
                group: f,
                aligned_torus: Some(torus.clone()),
                torus,
                gens,
                normalizer: Some((0, rest)),
                expected_dim: if row == 1 { 2 * (n - 1) } else { dim_g - dim_u },
            })
        }
        2 => {
            let f = GroupFamily::su(2 * n);
            let size = 2 * n;
            let id = |v: Complex64, off: Complex64| {
                let mut m = CMat::zeros(size, size);
                for i in 0..n {
                    m[(i, i)] = v;
                    m[(n + i, n + i)] = v.conj();
                    m[(i, n + i)] = off;
                    m[(n + i, i)] = -off.conj();
                }
                m
            };
            let h = {
                let mut m = CMat::zeros(size, size);
                for i in 0..n {
                    m[(i, i)] = c(0.0, 1.0);
                    m[(n + i, n + i)] = c(0.0, -1.0);
                }
                m
            };
            let lefts = vec![h, id(c(0.0, 0.0), c(1.0, 0.0)), id(c(0.0, 0.0), c(0.0, 1.0))];
            let mut gens = left(f, lefts)?;
            gens.extend(right(f, su_block(size, &(0..size - 1).collect::<Vec<_>>()))?);
            Ok(Construction {
                group: f,
                torus: su_tori(size, n, 1)?,
                aligned_torus: Some(su_tori_rewritten(n)?),
                gens,
                normalizer: None,
                expected_dim: 4 * (n - 1),
            })
        }
        10 => {
            let f = GroupFamily::su(2 * n);
            let size = 2 * n;
            let lw: Vec<f64> = (0..size).map(|i| if i == size - 1 { (size - 1) as f64 } else { -1.0 }).collect();
            let mut gens = left(f, vec![diag_i(&lw)])?;
            let mut b = su_block(size, &(0..n).collect::<Vec<_>>());
            b.extend(su_block(size, &(n..size).collect::<Vec<_>>()));
            gens.extend(right(f, b)?);
            let torus = su_tori(size, n, 2)?;
            Ok(Construction {
                group: f,
                aligned_torus: Some(torus.clone()),
                torus,
                gens,
                normalizer: None,
                expected_dim: (size * size - 1) - (1 + 2 * (n * n - 1)),
            })
        }
        6 | 13 | 14 => {
            if n < 3 {
                return Err(bad());
            }
            let size = if row == 13 { 2 * n + 1 } else { 2 * n };
            let f = GroupFamily::so(size);
            let mut gens = left(f, vec![hopf_circle_so(n, size)])?;
            let (blocks, dim_u2) = if row == 14 {
                let (p, q) = (3, 2 * n - 3);
                let mut b = so_block(size, &(0..p).collect::<Vec<_>>());
                b.extend(so_block(size, &(p..size).collect::<Vec<_>>()));
                (b, so_dim(p) + so_dim(q))
            } else {
                (so_block(size, &(0..2 * n - 1).collect::<Vec<_>>()), so_dim(2 * n - 1))
            };
            gens.extend(right(f, blocks)?);
            let torus = sp_tori(n, 2)?.on_group(f)?;
            let expected = match row {
                6 => 2 * (n - 1),
                _ => so_dim(size) - 1 - dim_u2,
            };
            Ok(Construction {
                group: f,
                aligned_torus: (row != 14).then(|| torus.clone()),
                torus,
                gens,
                normalizer: None,
                expected_dim: expected,
            })
        }
        7 | 15 => {
            let size = if row == 7 { 4 * n } else { 4 * n + 1 };
            let f = GroupFamily::so(size);
            let mut gens = left(f, delta_su2_in_so(n, size))?;
            gens.extend(right(f, so_block(size, &(0..4 * n - 1).collect::<Vec<_>>()))?);
            let torus = sp_tori(2 * n, 2)?.on_group(f)?;
            Ok(Construction {
                group: f,
                aligned_torus: Some(torus.clone()),
                torus,
                gens,
                normalizer: None,
                expected_dim: if row == 7 { 4 * (n - 1) } else { so_dim(size) - 3 - so_dim(4 * n - 1) },
            })
        }
        8 | 16 => {
            if (row == 8 && n < 2) || (row == 16 && n < 3) {
                return Err(bad());
            }
            let f = GroupFamily::sp(n);
            let (lefts, rights, variant, expected) = if row == 8 {
                let l: Vec<CMat> = [QI, QJ, QK]
                    .iter()
                    .map(|u| quat_matrix(n, &(0..n).map(|i| (i, i, *u)).collect::<Vec<_>>()))
                    .collect();
                (l, sp_block(n, &(0..n - 1).collect::<Vec<_>>()), 2, 4 * (n - 1))
            } else {
                let su: Vec<CMat> = su_block(n, &(0..n).collect::<Vec<_>>())
                    .iter()
                    .map(|m| {
                        let entries: Vec<(usize, usize, [f64; 4])> = (0..n)
                            .flat_map(|i| (0..n).map(move |j| (i, j)))
                            .map(|(i, j)| (i, j, [m[(i, j)].re, m[(i, j)].im, 0.0, 0.0]))
                            .collect();
                        quat_matrix(n, &entries)
                    })
                    .collect();
                (sp_block(n, &[n - 1]), su, 1, n * (2 * n + 1) - 3 - (n * n - 1))
            };
            let mut gens = left(f, lefts)?;
            gens.extend(right(f, rights)?);
            let torus = sp_tori(n, variant)?;
            Ok(Construction {
                group: f,
                aligned_torus: Some(torus.clone()),
                torus,
                gens,
                normalizer: None,
                expected_dim: expected,
            })
        }
        11 | 12 => {
            if n < 5 {
                return Err(bad());
            }
            let size = if row == 11 { 2 * n } else { 2 * n + 1 };
            let f = GroupFamily::so(size);
            let so3: Vec<usize> = if row == 11 { vec![2 * n - 3, 2 * n - 2, 2 * n - 1] } else { vec![2 * n - 2, 2 * n - 1, 2 * n] };
            let mut gens = left(f, so_block(size, &so3))?;
            let su: Vec<CMat> = su_block(n, &(0..n).collect::<Vec<_>>())
                .iter()
                .map(|m| embed_u_in_so_algebra(m).map(|e| pad_block(&e.mat, size, 0, false)))
                .collect::<Result<_>>()?;
            gens.extend(right(f, su)?);
            let torus = sp_tori(n, 1)?.on_group(f)?;
            Ok(Construction {
                group: f,
                aligned_torus: Some(torus.clone()),
                torus,
                gens,
                normalizer: None,
                expected_dim: so_dim(size) - 3 - (n * n - 1),
            })
        }
        _ => Err(BiqError::InvalidInput(format!("row {row} is verified on its torus only"))),
    }
}

/// Torus-only data for rows 3, 4, 5, 17: the torus on a classical model
/// group and the dimension count from the printed factors.
fn torus_only(row: u8) -> Result<(TorusNormalForm, usize, usize)> {
    // (torus, dim G, dim U)
    Ok(match row {
        3 => (sp_tori(3, 1)?.on_group(GroupFamily::so(7))?, 21, 3 + 14),
        4 => (sp_tori(4, 1)?.on_group(GroupFamily::so(8))?, 28, 3 + 21),
        5 => (sp_tori(4, 1)?.on_group(GroupFamily::so(9))?, 36, 3 + 21),
        17 => (sp_tori(4, 1)?, 36, 3 + 9),
        _ => return Err(BiqError::InvalidInput(format!("row {row} is not torus-only"))),
    })
}

fn quotient_dim(label: &str) -> Option<usize> {
    match label {
        "S^4" => Some(4),
        "HP^3" => Some(12),
        _ => None,
    }
}

fn check(name: &str, passed: bool, detail: String) -> EntryCheck {
    EntryCheck {
        name: name.into(),
        passed,
        detail,
    }
}

fn stacked(frame: &Frame, g: &[(AlgebraElement, AlgebraElement)]) -> Vec<DVector<f64>> {
    let d = frame.dim();
    g.iter()
        .map(|(l, r)| {
            let (a, b) = (frame.coords(l), frame.coords(r));
            DVector::from_fn(2 * d, |i, _| if i < d { a[i] } else { b[i - d] })
        })
        .collect()
}

fn bracket2(frame: &Frame, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
    let d = frame.dim();
    let l = frame.bracket(&u.rows(0, d).into_owned(), &v.rows(0, d).into_owned());
    let r = frame.bracket(&u.rows(d, d).into_owned(), &v.rows(d, d).into_owned());
    DVector::from_fn(2 * d, |i, _| if i < d { l[i] } else { r[i - d] })
}

fn residual(basis: &[DVector<f64>], v: &DVector<f64>) -> f64 {
    let mut r = v.clone();
    for b in basis {
        r -= b * b.dot(v);
    }
    r.norm()
}

pub fn verify_entry(e: &ClassificationEntry, n: Option<usize>) -> Result<EntryReport> {
    let row = e.row;
    if e.verified == Verification::TorusOnly {
        let (torus, dim_g, dim_u) = torus_only(row)?;
        let v = is_free_exact(&torus.weights, FreenessMode::ModCenter)?;
        let expected = e.quotient.as_deref().and_then(quotient_dim).unwrap_or(dim_g - dim_u);
        let checks = vec![
            check("torus acts freely (free mod center)", v.free, format!("{} via {}", torus.label, v.method)),
            check(
                "dimension count from the printed factors",
                dim_g - dim_u == expected,
                format!("{dim_g} - {dim_u} = {} (expected {expected})", dim_g - dim_u),
            ),
        ];
        return Ok(EntryReport {
            row,
            parameter: 0,
            group: torus.weights.group.to_string(),
            verified: e.verified,
            dim_g,
            dim_u: None,
            rank_g: torus.weights.group.rank(),
            rank_u: None,
            expected_quotient_dim: expected,
            torus: torus.label.clone(),
            torus_free: v.free,
            passed: checks.iter().all(|c| c.passed),
            checks,
        });
    }
    let n = n.unwrap_or_else(|| smallest_parameter(row));
    let con = construct(row, n)?;
    let frame = Arc::new(Frame::new(con.group)?);
    let d = frame.dim();
    let mut checks = Vec::new();

    let v = is_free_exact(&con.torus.weights, FreenessMode::ModCenter)?;
    checks.push(check("torus acts freely (free mod center)", v.free, format!("{} via {}", con.torus.label, v.method)));

    let raw = stacked(&frame, &con.gens);
    let basis = orthonormalize(&raw, |a, b| a.dot(b));
    let dim_u = basis.len();
    let closure = raw
        .iter()
        .flat_map(|a| raw.iter().map(move |b| (a, b)))
        .map(|(a, b)| residual(&basis, &bracket2(&frame, a, b)))
        .fold(0.0, f64::max);
    checks.push(check("generators close under the bracket", closure < 1e-9, format!("residual {closure:.1e}")));

    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(row));
    let x: DVector<f64> = basis.iter().fold(DVector::zeros(2 * d), |acc, b| acc + b * rng.random_range(-1.0..1.0));
    let ad = DMatrix::from_columns(&basis.iter().map(|b| bracket2(&frame, &x, b)).collect::<Vec<_>>());
    let rank_u = nullspace(&ad, 1e-9).len();
    let rank_g = con.group.rank();
    checks.push(check("rank(U) = rank(G)", rank_u == rank_g, format!("{rank_u} vs {rank_g}")));

    let dim_g = con.group.dimension();
    checks.push(check(
        "dim G - dim U equals the quotient dimension",
        group_of(row, n) == Some(con.group) && dim_g >= dim_u && dim_g - dim_u == con.expected_dim,
        format!("{dim_g} - {dim_u} = {} (expected {})", dim_g as i64 - dim_u as i64, con.expected_dim),
    ));

    if let Some(t) = &con.aligned_torus {
        let tg = stacked(&frame, &t.weights.generators()?);
        let r = tg.iter().map(|v| residual(&basis, v)).fold(0.0, f64::max);
        checks.push(check("torus lies in U", r < 1e-9, format!("{}: residual {r:.1e}", t.label)));
    }

    if let Some((ci, rest)) = &con.normalizer {
        let rb = orthonormalize(&rest.iter().map(|i| raw[*i].clone()).collect::<Vec<_>>(), |a, b| a.dot(b));
        let r = rest
            .iter()
            .map(|i| residual(&rb, &bracket2(&frame, &raw[*ci], &raw[*i])))
            .fold(0.0, f64::max);
        checks.push(check("circle normalizes the right factor", r < 1e-9, format!("residual {r:.1e}")));
    }

    Ok(EntryReport {
        row,
        parameter: n,
        group: con.group.to_string(),
        verified: e.verified,
        dim_g,
        dim_u: Some(dim_u),
        rank_g,
        rank_u: Some(rank_u),
        expected_quotient_dim: con.expected_dim,
        torus: con.torus.label.clone(),
        torus_free: v.free,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts_and_samples() {
        assert_eq!(table_entries(Table::A).len(), 8);
        assert_eq!(table_entries(Table::B).len(), 9);
        let r8 = entry_by_row(8).unwrap();
        assert_eq!((r8.group.as_str(), r8.torus.as_str(), r8.u1.as_str(), r8.u2.as_str()), ("Sp(n)", "P_2^n", "ΔSp(1)", "Sp(n-1)"));
        assert_eq!(r8.quotient.as_deref(), Some("HP^{n-1}"));
        let r10 = entry_by_row(10).unwrap();
        assert_eq!((r10.group.as_str(), r10.torus.as_str(), r10.u2.as_str()), ("SU(2n)", "S_2,n", "SU(n)SU(n)"));
        assert!(entry_by_row(14).unwrap().constraint.contains("p, q odd"));
        assert!(entry_by_row(14).unwrap().note.unwrap().contains("missing in its full generality"));
    }

    #[test]
    fn row6_dimension() {
        let r = verify_entry(&entry_by_row(6).unwrap(), None).unwrap();
        assert_eq!((r.dim_g, r.dim_u), (15, Some(11)));
        assert_eq!(r.expected_quotient_dim, 4);
        assert!(r.passed, "{:#?}", r.checks);
    }

    #[test]
    fn torus_only_rows() {
        for row in [3, 4, 5, 17] {
            let r = verify_entry(&entry_by_row(row).unwrap(), None).unwrap();
            assert_eq!(r.verified, Verification::TorusOnly);
            assert!(r.passed, "row {row}: {:#?}", r.checks);
        }
    }

    #[test]
    fn illegal_parameter() {
        assert!(verify_entry(&entry_by_row(1).unwrap(), Some(4)).is_err());
    }
}
