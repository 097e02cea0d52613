//! Closed-form conditions for the Eschenburg and Bazaikin families.

use num_integer::Integer;

use super::exact::permutations;
use crate::error::{BiqError, Result};

/// Freeness of `S^1_{p,q}` on SU(3): `gcd(p_1 - q_s(1), p_2 - q_s(2)) = 1`
/// for every permutation `s`.
pub fn eschenburg_free(p: [i64; 3], q: [i64; 3]) -> Result<bool> {
    let (sp, sq): (i64, i64) = (p.iter().sum(), q.iter().sum());
    if sp != sq {
        return Err(BiqError::InvalidInput(format!("sum of p ({sp}) differs from sum of q ({sq})")));
    }
    Ok(permutations(3)
        .iter()
        .all(|s| (p[0] - q[s[0]]).gcd(&(p[1] - q[s[1]])) == 1))
}

/// All `p_i` odd and `gcd(p_s(1) + p_s(2), p_s(3) + p_s(4)) = 2` for every
/// permutation `s` of five entries.
pub fn bazaikin_free(p: [i64; 5]) -> bool {
    if p.iter().any(|x| x % 2 == 0) {
        return false;
    }
    permutations(5)
        .iter()
        .all(|s| (p[s[0]] + p[s[1]]).gcd(&(p[s[2]] + p[s[3]])) == 2)
}

/// `q_i` outside `[min p, max p]` for all `i`. Requires a free action.
pub fn eschenburg_positive_flag(p: [i64; 3], q: [i64; 3]) -> Result<bool> {
    if !eschenburg_free(p, q)? {
        return Err(BiqError::Precondition(format!("({p:?}, {q:?}) does not act freely")));
    }
    let lo = *p.iter().min().unwrap();
    let hi = *p.iter().max().unwrap();
    Ok(q.iter().all(|x| *x < lo || *x > hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eschenburg_examples() {
        assert!(eschenburg_free([1, 1, 1], [0, 0, 3]).unwrap());
        assert!(!eschenburg_free([2, 2, 0], [0, 0, 4]).unwrap());
        assert!(eschenburg_free([1, 1, 1], [0, 0, 2]).is_err());
    }

    #[test]
    fn bazaikin_examples() {
        assert!(bazaikin_free([1, 1, 1, 1, 1]));
        assert!(bazaikin_free([1, 1, 1, 1, 3]));
        assert!(!bazaikin_free([1, 1, 1, 3, 3]));
        assert!(!bazaikin_free([1, 1, 1, 1, 2]));
    }

    #[test]
    fn positivity_flag() {
        assert!(eschenburg_positive_flag([1, 1, 1], [0, 0, 3]).unwrap());
        assert!(eschenburg_positive_flag([1, 2, 3], [0, 0, 6]).unwrap());
        assert!(!eschenburg_positive_flag([0, 0, 2], [1, -1, 2]).unwrap());
        assert!(matches!(
            eschenburg_positive_flag([2, 2, 0], [0, 0, 4]),
            Err(BiqError::Precondition(_))
        ));
    }
}
