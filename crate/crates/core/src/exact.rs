//! Rational scalars, points of `E` over `Q`, and dense exact linear algebra.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;
/// A point of `E = Q^d`.
pub type QVec = Vec<Q>;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("floor out of i64 range")
}

pub fn q_ceil_i64(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

/// Parse `p`, `-p`, or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Q::from_integer(n))
        }
    }
}

/// Render as `p` or `p/q`, always reduced.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn qvec_from_i(v: &[i64]) -> QVec {
    v.iter().map(|&c| qi(c)).collect()
}

pub fn qvec_is_integral(v: &[Q]) -> bool {
    v.iter().all(|c| c.denom().is_one())
}

pub fn qvec_to_i64(v: &[Q]) -> Option<Vec<i64>> {
    v.iter()
        .map(|c| if c.denom().is_one() { c.numer().to_i64() } else { None })
        .collect()
}

/// Pairing of a rational point against an integer covector.
pub fn dot_iq(p: &[Q], v: &[i64]) -> Q {
    debug_assert_eq!(p.len(), v.len());
    let mut acc = Q::zero();
    for (a, &b) in p.iter().zip(v.iter()) {
        if b != 0 {
            acc += a * qi(b);
        }
    }
    acc
}

pub fn dot_ii(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub fn fmt_qvec(p: &[Q]) -> String {
    let parts: Vec<String> = p.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}

/// Rank of a rational matrix given as rows.
pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].clone();
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &inv;
                for c in col..ncols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Solve `A x = b` exactly. Deterministic: columns are consumed left to
/// right, the pivot is the first row with a nonzero entry, and free
/// variables are set to zero. Returns `None` if inconsistent.
pub fn solve_q(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].clone();
        for c in col..=ncols {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=ncols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    // Inconsistent row: all coefficients zero, nonzero rhs.
    for r in rank..nrows {
        if m[r][..ncols].iter().all(|x| x.is_zero()) && !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Q::zero(); ncols];
    for col in 0..ncols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = m[r][ncols].clone();
        }
    }
    // With free variables pinned to zero the candidate must be re-checked
    // only when rank < nrows, which the consistency scan above already covers
    // in reduced form; pivot rows are exact by construction.
    Some(x)
}

/// Inverse of a square rational matrix, if nonsingular.
pub fn invert_q(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Q::one() } else { Q::zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] / &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "3", "-1/2", "7/3"] {
            let q = parse_q(s).unwrap();
            assert_eq!(fmt_q(&q), s);
        }
        assert!(parse_q("1/0").is_none());
        assert_eq!(fmt_q(&parse_q("2/4").unwrap()), "1/2");
    }

    #[test]
    fn solve_deterministic_free_vars_zero() {
        // x + y = 2 with free y -> x = 2, y = 0.
        let a = vec![vec![qi(1), qi(1)]];
        let b = vec![qi(2)];
        let x = solve_q(&a, &b).unwrap();
        assert_eq!(x, vec![qi(2), qi(0)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        let b = vec![qi(1), qi(3)];
        assert!(solve_q(&a, &b).is_none());
    }

    #[test]
    fn rank_and_inverse() {
        let m = vec![vec![qi(1), qi(2)], vec![qi(3), qi(4)]];
        assert_eq!(rank_q(&m), 2);
        let inv = invert_q(&m).unwrap();
        assert_eq!(inv[0][0], qi(-2));
        assert_eq!(inv[0][1], qi(1));
        let singular = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert_eq!(rank_q(&singular), 1);
        assert!(invert_q(&singular).is_none());
    }
}
