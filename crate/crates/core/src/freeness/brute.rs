//! Independent falsifier: enumerates finite-order torus elements and compares
//! eigenvalue multisets numerically.

use num_complex::Complex64;
use num_integer::Integer;

use super::exact::{symmetry_group, FreenessVerdict, Witness};
use super::weights::{FreenessMode, TorusActionWeights};
use crate::algebra::Family;

pub const EIGEN_TOL: f64 = 1e-8;

/// Greedy multiset comparison of unit complex numbers.
pub fn multisets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (j, y) in b.iter().enumerate() {
            if !used[j] && (x - y).norm() < tol {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Whether `u_L = u_R` is a central element, judged from eigenvalues.
fn central_pair(w: &TorusActionWeights, left: &[Complex64], right: &[Complex64]) -> bool {
    let c = left[0];
    if left.iter().chain(right).any(|x| (x - c).norm() > EIGEN_TOL) {
        return false;
    }
    match w.group.family {
        Family::Su | Family::U => true,
        Family::Sp => (c.re.abs() - 1.0).abs() < EIGEN_TOL,
        Family::So => (c.re - 1.0).abs() < EIGEN_TOL || (w.group.n % 2 == 0 && (c.re + 1.0).abs() < EIGEN_TOL),
    }
}

/// SO(2n): equal eigenvalue multisets give conjugacy in SO(2n) when some
/// eigenvalue is `±1`, otherwise only through an even sign pattern.
fn so_even_conjugate(al: &[f64], ar: &[f64]) -> bool {
    let e = |x: f64| Complex64::from_polar(1.0, x);
    if ar.iter().any(|x| (e(*x).im).abs() < EIGEN_TOL) {
        return true;
    }
    symmetry_group(Family::So, ar.len())
        .iter()
        .filter(|s| !s.odd_signed())
        .any(|s| (0..al.len()).all(|i| (e(al[i]) - e(s.signs[i] as f64 * ar[s.perm[i]])).norm() < EIGEN_TOL))
}

fn for_each_point<F: FnMut(&[i64], i64) -> bool>(k: usize, max_order: usize, mut f: F) -> bool {
    for m in 2..=max_order as i64 {
        let mut a = vec![0i64; k];
        loop {
            let g = a.iter().fold(m, |g, x| g.gcd(x));
            if g == 1 && f(&a, m) {
                return true;
            }
            let mut i = 0;
            while i < k {
                a[i] += 1;
                if a[i] < m {
                    break;
                }
                a[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    false
}

/// Returns not-free with a witness if some nontrivial element of order at
/// most `max_order` has `u_L` conjugate to `u_R`; otherwise reports that no
/// violation was found.
pub fn is_free_bruteforce(w: &TorusActionWeights, max_order: usize, mode: FreenessMode) -> FreenessVerdict {
    let mut witness = None;
    for_each_point(w.k, max_order, |a, m| {
        let t: Vec<f64> = a.iter().map(|x| *x as f64 / m as f64).collect();
        let (al, ar) = w.angles(&t);
        let left = w.eigenvalues(&al);
        let right = w.eigenvalues(&ar);
        if !multisets_match(&left, &right, EIGEN_TOL) {
            return false;
        }
        if w.group.is_even_orthogonal() && !so_even_conjugate(&al, &ar) {
            return false;
        }
        if mode == FreenessMode::ModCenter && central_pair(w, &left, &right) {
            return false;
        }
        witness = Some(Witness {
            sigma: None,
            t: a.iter().map(|x| format!("{}/{}", x / x.gcd(&m), m / x.gcd(&m))).collect(),
            t_float: t,
            invariant_factors: vec![],
            continuous: false,
        });
        true
    });
    let free = witness.is_none();
    FreenessVerdict {
        free,
        mode,
        method: format!("bruteforce(max_order={max_order})"),
        witness,
        only_odd_signed: None,
        note: free.then(|| format!("no violation found up to order {max_order}")),
    }
}

/// Numerical check that a witness really pairs conjugate torus elements.
pub fn witness_residual(w: &TorusActionWeights, t: &[f64]) -> bool {
    let (al, ar) = w.angles(t);
    multisets_match(&w.eigenvalues(&al), &w.eigenvalues(&ar), EIGEN_TOL)
        && (!w.group.is_even_orthogonal() || so_even_conjugate(&al, &ar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupFamily;

    #[test]
    fn even_weights_found_at_order_two() {
        let w = TorusActionWeights::circle(GroupFamily::su(3), &[2, 2, 0], &[0, 0, 4]).unwrap();
        let v = is_free_bruteforce(&w, 2, FreenessMode::Strict);
        assert!(!v.free);
        assert_eq!(v.witness.unwrap().t, vec!["1/2".to_string()]);
    }

    #[test]
    fn corollary_torus_no_violation() {
        let w = TorusActionWeights::new(
            GroupFamily::su(3),
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 0], vec![2, 2]],
        )
        .unwrap();
        assert!(is_free_bruteforce(&w, 12, FreenessMode::Strict).free);
    }

    #[test]
    fn order_one_checks_nothing() {
        let w = TorusActionWeights::circle(GroupFamily::su(3), &[1, 1, 1], &[1, 1, 1]).unwrap();
        assert!(is_free_bruteforce(&w, 1, FreenessMode::Strict).free);
        assert!(!is_free_bruteforce(&w, 2, FreenessMode::Strict).free);
    }

    #[test]
    fn multiset_matching() {
        let a = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        let b = [Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)];
        assert!(multisets_match(&a, &b, 1e-12));
        assert!(!multisets_match(&a, &[a[0], a[0]], 1e-12));
    }
}
