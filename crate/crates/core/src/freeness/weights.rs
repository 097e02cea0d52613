use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{exp_map, root_decomposition, AlgebraElement, Family, GroupElement, GroupFamily};
use crate::error::{BiqError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum FreenessMode {
    #[serde(rename = "strict")]
    #[value(name = "strict")]
    Strict,
    #[serde(rename = "mod-center")]
    #[value(name = "mod-center")]
    ModCenter,
}

impl fmt::Display for FreenessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreenessMode::Strict => "strict",
            FreenessMode::ModCenter => "mod-center",
        })
    }
}

impl FromStr for FreenessMode {
    type Err = BiqError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Self::Strict),
            "mod-center" => Ok(Self::ModCenter),
            _ => Err(BiqError::InvalidInput(format!("unknown mode '{s}'"))),
        }
    }
}

/// A k-torus acting on `G` from both sides by diagonal characters.
///
/// Row `i` of `w_l` gives the exponents of the `i`-th standard torus
/// coordinate of the left factor; columns index the circle factors. For SO
/// the rows are the rotation planes `(2i, 2i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusActionWeights {
    pub group: GroupFamily,
    pub k: usize,
    #[serde(rename = "W_L")]
    pub w_l: Vec<Vec<i64>>,
    #[serde(rename = "W_R")]
    pub w_r: Vec<Vec<i64>>,
}

/// On-disk form `{"group":"SU","n":3,"k":1,"W_L":[[..]],"W_R":[[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightsFile {
    pub group: Family,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "W_L")]
    pub w_l: Vec<Vec<i64>>,
    #[serde(rename = "W_R")]
    pub w_r: Vec<Vec<i64>>,
}

/// Number of standard torus coordinates (rows of a weight matrix).
pub fn torus_rows(group: GroupFamily) -> usize {
    match group.family {
        Family::Su | Family::U | Family::Sp => group.n,
        Family::So => group.n / 2,
    }
}

impl TorusActionWeights {
    pub fn new(group: GroupFamily, w_l: Vec<Vec<i64>>, w_r: Vec<Vec<i64>>) -> Result<Self> {
        let k = w_l.first().map(|r| r.len()).unwrap_or(0);
        let w = Self { group, k, w_l, w_r };
        w.validate()?;
        Ok(w)
    }

    /// One-circle weights from two exponent vectors.
    pub fn circle(group: GroupFamily, p: &[i64], q: &[i64]) -> Result<Self> {
        Self::new(
            group,
            p.iter().map(|a| vec![*a]).collect(),
            q.iter().map(|a| vec![*a]).collect(),
        )
    }

    pub fn from_file(f: WeightsFile) -> Result<Self> {
        let group = GroupFamily { family: f.group, n: f.n };
        let w = Self {
            group,
            k: f.k,
            w_l: f.w_l,
            w_r: f.w_r,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn to_file(&self) -> WeightsFile {
        WeightsFile {
            group: self.group.family,
            n: self.group.n,
            k: self.k,
            w_l: self.w_l.clone(),
            w_r: self.w_r.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        torus_rows(self.group)
    }

    pub fn validate(&self) -> Result<()> {
        self.group.check_supported()?;
        let r = self.rows();
        if self.k == 0 {
            return Err(BiqError::InvalidInput("torus rank k must be positive".into()));
        }
        for (name, w) in [("W_L", &self.w_l), ("W_R", &self.w_r)] {
            if w.len() != r {
                return Err(BiqError::InvalidInput(format!(
                    "{name} must have {r} rows for {}, got {}",
                    self.group,
                    w.len()
                )));
            }
            if w.iter().any(|row| row.len() != self.k) {
                return Err(BiqError::InvalidInput(format!("{name} rows must have k = {} entries", self.k)));
            }
        }
        if self.group.family == Family::Su {
            for j in 0..self.k {
                let sl: i64 = self.w_l.iter().map(|row| row[j]).sum();
                let sr: i64 = self.w_r.iter().map(|row| row[j]).sum();
                if sl != sr {
                    return Err(BiqError::InvalidInput(format!(
                        "column {j}: left sum {sl} differs from right sum {sr} (determinants must agree)"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn column(w: &[Vec<i64>], j: usize) -> Vec<i64> {
        w.iter().map(|row| row[j]).collect()
    }

    /// Infinitesimal generators `(X_L, X_R)` of the circle factors. For SU
    /// the common trace is removed from both sides, which leaves the action
    /// unchanged because equal determinants make the scalar parts cancel.
    pub fn generators(&self) -> Result<Vec<(AlgebraElement, AlgebraElement)>> {
        let dec = root_decomposition(self.group)?;
        let make = |w: &[Vec<i64>], j: usize| {
            let coords: Vec<f64> = Self::column(w, j).iter().map(|a| *a as f64).collect();
            let z = dec.cartan_element(&coords);
            AlgebraElement::project(self.group, &z.mat)
        };
        Ok((0..self.k).map(|j| (make(&self.w_l, j), make(&self.w_r, j))).collect())
    }

    /// Angles of the left and right torus coordinates at `t` in `R^k`, for
    /// the parametrisation `z_j = exp(2 pi i t_j)`.
    pub fn angles(&self, t: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let ang = |w: &[Vec<i64>]| -> Vec<f64> {
            w.iter()
                .map(|row| TAU * row.iter().zip(t).map(|(a, b)| *a as f64 * b).sum::<f64>())
                .collect()
        };
        (ang(&self.w_l), ang(&self.w_r))
    }

    /// Eigenvalues of the defining representation of a torus element with
    /// the given coordinate angles.
    pub fn eigenvalues(&self, angles: &[f64]) -> Vec<Complex64> {
        let mut ev = Vec::new();
        for a in angles {
            ev.push(Complex64::from_polar(1.0, *a));
            if matches!(self.group.family, Family::Sp | Family::So) {
                ev.push(Complex64::from_polar(1.0, -*a));
            }
        }
        if self.group.family == Family::So && self.group.n % 2 == 1 {
            ev.push(Complex64::new(1.0, 0.0));
        }
        ev
    }

    /// Group elements `(u_L(t), u_R(t))` as unitary matrices. For SU the
    /// untraced exponentials are returned, which lie in U(n).
    pub fn torus_pair(&self, t: &[f64]) -> Result<(GroupElement, GroupElement)> {
        let dec = root_decomposition(self.group)?;
        let (al, ar) = self.angles(t);
        let fam = match self.group.family {
            Family::Su => GroupFamily::u(self.group.n),
            _ => self.group,
        };
        let mk = |a: &[f64]| {
            let z = dec.cartan_element(a);
            exp_map(&AlgebraElement::from_matrix_unchecked(fam, z.mat))
        };
        Ok((mk(&al), mk(&ar)))
    }

    /// Swaps the two sides.
    pub fn swapped(&self) -> Self {
        Self {
            group: self.group,
            k: self.k,
            w_l: self.w_r.clone(),
            w_r: self.w_l.clone(),
        }
    }
}
