//! Truncated-series cross-check of the matching counts: the exponential
//! generating function of `f_k(n)` is the determinant of a matrix of
//! differences of hyperbolic Bessel series,
//! `det[ I_{a_i - b_j}(2x) - I_{a_i + b_j}(2x) ]` with
//! `a = b = (k-1, ..., 1)` and `I_r(2x) = Σ_j x^{2j+r} / (j! (r+j)!)`.
//!
//! Everything here is exact rational arithmetic on truncated power series;
//! no floating point.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

type Coeff = Ratio<BigInt>;
/// Coefficients `c[0..=trunc]` of a truncated power series.
type Series = Vec<Coeff>;

/// The requested coefficient lies beyond the configured truncation degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationTooSmall {
    pub n: usize,
    pub truncation: usize,
}

impl fmt::Display for TruncationTooSmall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient {} requested but series are truncated at degree {}",
            self.n, self.truncation
        )
    }
}

fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= BigInt::from(i);
    }
    out
}

/// `I_r(2x)` truncated at `trunc`; `I_{-r} = I_r`.
fn bessel_series(r: usize, trunc: usize) -> Series {
    let mut c = vec![Coeff::zero(); trunc + 1];
    let mut j = 0usize;
    while 2 * j + r <= trunc {
        c[2 * j + r] = Ratio::new(BigInt::one(), factorial(j) * factorial(r + j));
        j += 1;
    }
    c
}

fn series_sub(a: &Series, b: &Series) -> Series {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn series_mul(a: &Series, b: &Series, trunc: usize) -> Series {
    let mut out = vec![Coeff::zero(); trunc + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > trunc {
                break;
            }
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn series_neg(a: &Series) -> Series {
    a.iter().map(|x| -x).collect()
}

fn series_add_assign(a: &mut Series, b: &Series) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Cofactor expansion along the first row.
fn determinant(matrix: &[Vec<Series>], trunc: usize) -> Series {
    let d = matrix.len();
    if d == 1 {
        return matrix[0][0].clone();
    }
    let mut out = vec![Coeff::zero(); trunc + 1];
    for col in 0..d {
        let minor: Vec<Vec<Series>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect();
        let mut term = series_mul(&matrix[0][col], &determinant(&minor, trunc), trunc);
        if col % 2 == 1 {
            term = series_neg(&term);
        }
        series_add_assign(&mut out, &term);
    }
    out
}

/// `n! · [x^n]` of the Bessel determinant: the number of k-noncrossing
/// perfect matchings on `n` vertices, computed along a route entirely
/// independent of the transfer recursion.
pub fn egf_matching_count(
    k: usize,
    n: usize,
    truncation: usize,
) -> Result<BigUint, TruncationTooSmall> {
    assert!(k >= 2);
    if truncation < n {
        return Err(TruncationTooSmall { n, truncation });
    }
    let dim = k - 1;
    let matrix: Vec<Vec<Series>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let diff = i.abs_diff(j);
                    let sum = 2 * k - 2 - i - j;
                    series_sub(&bessel_series(diff, truncation), &bessel_series(sum, truncation))
                })
                .collect()
        })
        .collect();
    let det = determinant(&matrix, truncation);
    let value = &det[n] * Ratio::from_integer(factorial(n));
    assert!(value.is_integer(), "n! [x^n] det must be an integer");
    let int = value.to_integer();
    assert!(!int.is_negative(), "matching count must be nonnegative");
    Ok(int.to_biguint().expect("nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{CountTable, TableClass};

    #[test]
    fn hand_expanded_coefficient() {
        // det = 1 + x^2/2 + ..., so the n = 2 count is 2! * (1/2) = 1.
        assert_eq!(egf_matching_count(3, 2, 4).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn matches_oscillating_table() {
        assert_eq!(egf_matching_count(3, 6, 8).unwrap(), BigUint::from(14u32));
        for k in [3usize, 4] {
            let osc = CountTable::build(k, 12, TableClass::Oscillating);
            for n in 0..=12 {
                assert_eq!(
                    &egf_matching_count(k, n, n + 2).unwrap(),
                    osc.entry(0, n),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn odd_lengths_vanish() {
        assert!(egf_matching_count(3, 5, 7).unwrap().is_zero());
    }

    #[test]
    fn truncation_guard() {
        assert_eq!(
            egf_matching_count(3, 6, 5),
            Err(TruncationTooSmall { n: 6, truncation: 5 })
        );
    }
}
