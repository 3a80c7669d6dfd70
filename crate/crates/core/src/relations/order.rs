use crate::error::{Error, Result};
use crate::fockspace::FockParams;

/// `1` if `j > k > i`, `-1` if `j < k < i`, `0` otherwise.
pub fn epsilon(j: i64, k: i64, i: i64) -> i64 {
    if j > k && k > i {
        1
    } else if j < k && k < i {
        -1
    } else {
        0
    }
}

/// A positive root `eps_i - eps_j`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    pub i: usize,
    pub j: usize,
}

impl PositiveRoot {
    pub fn new(i: usize, j: usize, params: &FockParams) -> Result<Self> {
        if i >= j || j > params.rank() {
            return Err(Error::MalformedRoot(i as i64, j as i64));
        }
        Ok(Self { i, j })
    }

    /// All positive roots for indices `0..=n+m`.
    pub fn all(params: &FockParams) -> Vec<Self> {
        let top = params.rank();
        (0..=top)
            .flat_map(|i| (i + 1..=top).map(move |j| Self { i, j }))
            .collect()
    }
}

/// The normal order on positive roots: `(i, j) < (k, l)` iff `j < l`, or
/// `j = l` and `i < k`.
pub fn root_order_less(a: (i64, i64), b: (i64, i64)) -> Result<bool> {
    for (x, y) in [a, b] {
        if x < 0 || x >= y {
            return Err(Error::MalformedRoot(x, y));
        }
    }
    let ((i, j), (k, l)) = (a, b);
    Ok(j < l || (j == l && i < k))
}

/// Cartan matrix entry
/// `alpha_ij = (1 + (-1)^{theta_{i-1,i}}) delta_ij - (-1)^{theta_{i-1,i}} delta_{i,j-1} - delta_{i-1,j}`
/// with `theta_{i-1,i} = theta_{i-1} + theta_i`.
pub fn cartan_entry(params: &FockParams, i: usize, j: usize) -> Result<i64> {
    params.check_generator(i)?;
    params.check_generator(j)?;
    let theta_sum = params.theta(i - 1)? + params.theta(i)?;
    let sign = if theta_sum % 2 == 0 { 1 } else { -1 };
    let delta = |a: usize, b: usize| i64::from(a == b);
    Ok((1 + sign) * delta(i, j) - sign * delta(i + 1, j) - delta(i - 1, j))
}

pub fn cartan_matrix(params: &FockParams) -> Vec<Vec<i64>> {
    let r = params.rank();
    (1..=r)
        .map(|i| (1..=r).map(|j| cartan_entry(params, i, j).unwrap()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(3, 2, 1), 1);
        assert_eq!(epsilon(1, 2, 3), -1);
        assert_eq!(epsilon(1, 1, 2), 0);
        for j in -3..=3 {
            for k in -3..=3 {
                for i in -3..=3 {
                    assert_eq!(epsilon(j, k, i), -epsilon(i, k, j));
                }
            }
        }
    }

    #[test]
    fn root_order_examples() {
        assert!(root_order_less((0, 1), (0, 2)).unwrap());
        assert!(root_order_less((0, 2), (1, 2)).unwrap());
        assert!(!root_order_less((0, 1), (0, 1)).unwrap());
        assert!(matches!(root_order_less((2, 1), (0, 1)), Err(Error::MalformedRoot(2, 1))));
        assert!(root_order_less((0, 1), (-1, 1)).is_err());
    }

    #[test]
    fn root_order_is_strict_total() {
        let params = FockParams::new(2, 2, 1).unwrap();
        let roots: Vec<(i64, i64)> = PositiveRoot::all(&params).iter().map(|r| (r.i as i64, r.j as i64)).collect();
        assert_eq!(roots.len(), 10);
        let lt = |a, b| root_order_less(a, b).unwrap();
        for &a in &roots {
            assert!(!lt(a, a));
            for &b in &roots {
                if a != b {
                    assert!(lt(a, b) ^ lt(b, a));
                }
                for &c in &roots {
                    if lt(a, b) && lt(b, c) {
                        assert!(lt(a, c));
                    }
                }
            }
        }
        assert!(PositiveRoot::new(1, 1, &params).is_err());
        assert!(PositiveRoot::new(0, 5, &params).is_err());
    }

    #[test]
    fn cartan_matrix_examples() {
        let p11 = FockParams::new(1, 1, 1).unwrap();
        assert_eq!(cartan_matrix(&p11), vec![vec![2, -1], vec![-1, 0]]);
        let p12 = FockParams::new(1, 2, 1).unwrap();
        assert_eq!(cartan_matrix(&p12), vec![vec![2, -1, 0], vec![-1, 0, 1], vec![0, -1, 2]]);
        let p30 = FockParams::new(3, 0, 1).unwrap();
        assert_eq!(cartan_matrix(&p30), vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let p01 = FockParams::new(0, 1, 1).unwrap();
        assert_eq!(cartan_matrix(&p01), vec![vec![0]]);
    }
}
