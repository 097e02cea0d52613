//! Root-space decomposition with respect to the standard maximal torus.

use num_complex::Complex64;

use super::{AlgebraElement, CMat, Family, GroupFamily};
use crate::error::Result;

/// A two-dimensional root space `E(r)` with basis `(x, y)` such that
/// `[Z, x] = -r(Z) y` and `[Z, y] = r(Z) x` for every `Z` in the torus.
#[derive(Debug, Clone)]
pub struct RootSpace {
    /// Integer coefficients of `r` in the standard diagonal torus coordinates.
    pub functional: Vec<i64>,
    pub x: AlgebraElement,
    pub y: AlgebraElement,
}

#[derive(Debug, Clone)]
pub struct RootDecomposition {
    pub family: GroupFamily,
    /// Q-orthonormal basis of the Cartan subalgebra.
    pub cartan_basis: Vec<AlgebraElement>,
    pub roots: Vec<RootSpace>,
}

fn cz(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl RootDecomposition {
    /// Number of standard diagonal torus coordinates.
    pub fn torus_coords(&self) -> usize {
        match self.family.family {
            Family::Su | Family::U | Family::Sp => self.family.n,
            Family::So => self.family.n / 2,
        }
    }

    /// Standard diagonal coordinates of an element of the Cartan subalgebra.
    pub fn diag_coords(&self, z: &AlgebraElement) -> Vec<f64> {
        let m = &z.mat;
        match self.family.family {
            Family::Su | Family::U | Family::Sp => (0..self.torus_coords()).map(|k| m[(k, k)].im).collect(),
            Family::So => (0..self.torus_coords()).map(|k| m[(2 * k, 2 * k + 1)].re).collect(),
        }
    }

    /// Builds the Cartan element with the given standard diagonal coordinates.
    pub fn cartan_element(&self, coords: &[f64]) -> AlgebraElement {
        let f = self.family;
        let size = f.matrix_size();
        let mut m = CMat::zeros(size, size);
        match f.family {
            Family::Su | Family::U => {
                for (k, a) in coords.iter().enumerate() {
                    m[(k, k)] = cz(0.0, *a);
                }
            }
            Family::Sp => {
                let n = f.n;
                for (k, a) in coords.iter().enumerate() {
                    m[(k, k)] = cz(0.0, *a);
                    m[(n + k, n + k)] = cz(0.0, -*a);
                }
            }
            Family::So => {
                for (k, a) in coords.iter().enumerate() {
                    m[(2 * k, 2 * k + 1)] = cz(*a, 0.0);
                    m[(2 * k + 1, 2 * k)] = cz(-*a, 0.0);
                }
            }
        }
        AlgebraElement::from_matrix_unchecked(f, m)
    }

    /// Evaluates root `r` on a Cartan element.
    pub fn root_value(&self, root: usize, z: &AlgebraElement) -> f64 {
        let a = self.diag_coords(z);
        self.roots[root]
            .functional
            .iter()
            .zip(&a)
            .map(|(r, a)| *r as f64 * a)
            .sum()
    }

    pub fn dimension(&self) -> usize {
        self.cartan_basis.len() + 2 * self.roots.len()
    }
}

fn unit(size: usize, entries: &[(usize, usize, Complex64)], scale: f64) -> CMat {
    let mut m = CMat::zeros(size, size);
    for &(i, j, v) in entries {
        m[(i, j)] += v * scale;
    }
    m
}

fn gram_schmidt(vectors: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for mut v in vectors {
        for u in &out {
            let d: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= d * ui;
            }
        }
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        out.push(v.into_iter().map(|a| a / n).collect());
    }
    out
}

/// Decomposes the Lie algebra of `family` into the standard Cartan
/// subalgebra and Q-orthonormal root spaces.
pub fn root_decomposition(family: GroupFamily) -> Result<RootDecomposition> {
    family.check_supported()?;
    let n = family.n;
    let size = family.matrix_size();
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut dec = RootDecomposition {
        family,
        cartan_basis: Vec::new(),
        roots: Vec::new(),
    };
    let el = |m: CMat| AlgebraElement::from_matrix_unchecked(family, m);
    let functional = |len: usize, terms: &[(usize, i64)]| {
        let mut v = vec![0i64; len];
        for &(k, c) in terms {
            v[k] += c;
        }
        v
    };

    match family.family {
        Family::Su | Family::U => {
            // Q(i diag a, i diag b) = a.b / 2
            let raw: Vec<Vec<f64>> = if family.family == Family::Su {
                (0..n - 1)
                    .map(|k| {
                        let mut v = vec![0.0; n];
                        v[k] = 1.0;
                        v[k + 1] = -1.0;
                        v
                    })
                    .collect()
            } else {
                (0..n)
                    .map(|k| {
                        let mut v = vec![0.0; n];
                        v[k] = 1.0;
                        v
                    })
                    .collect()
            };
            for v in gram_schmidt(raw) {
                let scaled: Vec<f64> = v.iter().map(|a| a * std::f64::consts::SQRT_2).collect();
                let z = dec.cartan_element(&scaled);
                dec.cartan_basis.push(z);
            }
            for i in 0..n {
                for j in i + 1..n {
                    let x = unit(size, &[(i, j, cz(1., 0.)), (j, i, cz(-1., 0.))], 1.0);
                    let y = unit(size, &[(i, j, cz(0., 1.)), (j, i, cz(0., 1.))], 1.0);
                    dec.roots.push(RootSpace {
                        functional: functional(n, &[(j, 1), (i, -1)]),
                        x: el(x),
                        y: el(y),
                    });
                }
            }
        }
        Family::Sp => {
            for k in 0..n {
                let mut v = vec![0.0; n];
                v[k] = 1.0;
                let z = dec.cartan_element(&v);
                dec.cartan_basis.push(z);
            }
            // block layout [[B, -conj C], [C, conj B]]
            for i in 0..n {
                for j in i + 1..n {
                    let x = unit(
                        size,
                        &[
                            (i, j, cz(1., 0.)),
                            (j, i, cz(-1., 0.)),
                            (n + i, n + j, cz(1., 0.)),
                            (n + j, n + i, cz(-1., 0.)),
                        ],
                        s2,
                    );
                    let y = unit(
                        size,
                        &[
                            (i, j, cz(0., 1.)),
                            (j, i, cz(0., 1.)),
                            (n + i, n + j, cz(0., -1.)),
                            (n + j, n + i, cz(0., -1.)),
                        ],
                        s2,
                    );
                    dec.roots.push(RootSpace {
                        functional: functional(n, &[(j, 1), (i, -1)]),
                        x: el(x),
                        y: el(y),
                    });
                }
            }
            for i in 0..n {
                for j in i..n {
                    let (scale, pairs): (f64, Vec<(usize, usize)>) = if i == j {
                        (1.0, vec![(i, i)])
                    } else {
                        (s2, vec![(i, j), (j, i)])
                    };
                    let mut xe = Vec::new();
                    let mut ye = Vec::new();
                    for (a, b) in pairs {
                        // C = S real symmetric
                        xe.push((n + a, b, cz(1., 0.)));
                        xe.push((a, n + b, cz(-1., 0.)));
                        // C = iS
                        ye.push((n + a, b, cz(0., 1.)));
                        ye.push((a, n + b, cz(0., 1.)));
                    }
                    dec.roots.push(RootSpace {
                        functional: functional(n, &[(i, 1), (j, 1)]),
                        x: el(unit(size, &xe, scale)),
                        y: el(unit(size, &ye, scale)),
                    });
                }
            }
        }
        Family::So => {
            let r = n / 2;
            for k in 0..r {
                let mut v = vec![0.0; r];
                v[k] = 1.0;
                let z = dec.cartan_element(&v);
                dec.cartan_basis.push(z);
            }
            // block (k,l) = A, block (l,k) = -A^T
            let block = |k: usize, l: usize, a: [[f64; 2]; 2]| {
                let mut e = Vec::new();
                for p in 0..2 {
                    for q in 0..2 {
                        if a[p][q] != 0.0 {
                            e.push((2 * k + p, 2 * l + q, cz(a[p][q], 0.)));
                            e.push((2 * l + q, 2 * k + p, cz(-a[p][q], 0.)));
                        }
                    }
                }
                unit(size, &e, s2)
            };
            let ident = [[1., 0.], [0., 1.]];
            let jm = [[0., 1.], [-1., 0.]];
            let km = [[1., 0.], [0., -1.]];
            let lm = [[0., -1.], [-1., 0.]];
            for k in 0..r {
                for l in k + 1..r {
                    dec.roots.push(RootSpace {
                        functional: functional(r, &[(l, 1), (k, -1)]),
                        x: el(block(k, l, ident)),
                        y: el(block(k, l, jm)),
                    });
                    dec.roots.push(RootSpace {
                        functional: functional(r, &[(k, -1), (l, -1)]),
                        x: el(block(k, l, km)),
                        y: el(block(k, l, lm)),
                    });
                }
            }
            if n % 2 == 1 {
                let last = n - 1;
                for k in 0..r {
                    let x = unit(size, &[(2 * k, last, cz(1., 0.)), (last, 2 * k, cz(-1., 0.))], 1.0);
                    let y = unit(size, &[(2 * k + 1, last, cz(1., 0.)), (last, 2 * k + 1, cz(-1., 0.))], 1.0);
                    dec.roots.push(RootSpace {
                        functional: functional(r, &[(k, 1)]),
                        x: el(x),
                        y: el(y),
                    });
                }
            }
        }
    }
    Ok(dec)
}
