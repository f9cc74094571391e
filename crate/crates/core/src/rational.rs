//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Decimal points are rejected.
pub fn parse_q(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// `p/q` rendering, integers without denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.numer()).ok()
    } else {
        None
    }
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

/// Solves `m · x = b` over the rationals; `None` if `m` is singular.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= y * &f;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Determinant by fraction-exact elimination.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &p;
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= y * &f;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_q("1/6").unwrap(), q(1, 6));
        assert_eq!(parse_q("-3/10").unwrap(), q(-3, 10));
        assert_eq!(parse_q("4").unwrap(), qi(4));
        assert_eq!(parse_q(" 2/4 ").unwrap(), q(1, 2));
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn solves_small_system() {
        let m = vec![vec![qi(2), qi(-1)], vec![qi(-1), qi(2)]];
        let x = solve(&m, &[qi(1), qi(1)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        assert_eq!(det(&m), qi(3));
    }
}
