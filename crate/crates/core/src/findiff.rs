//! Exact central finite differences and the level normalization `1/(m (r+1)!)`.

use std::fmt;

use crate::rational::{half, pow, q, Q};

/// Dense univariate polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Q>) -> Self {
        Polynomial { coeffs }
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![q(0); n + 1];
        coeffs[n] = q(1);
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: Q) -> Q {
        self.coeffs.iter().rev().fold(q(0), |acc, &c| acc * x + c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != q(0))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != q(0))
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * i64::from(n - j) / i64::from(j + 1))
}

fn factorial(n: u32) -> i64 {
    (1..=i64::from(n)).product()
}

/// `D^r f(x) = sum_k (-1)^k C(r,k) f(x + (r/2 - k) h)`.
///
/// With `h = 1` this is the unit stencil `{x-1, x, x+1}` for `r = 2` and the
/// half-offset stencils `{x +- 1/2}` and `{x +- 1/2, x +- 3/2}` for odd `r`.
pub fn central_difference(r: u32, step: Q, f: &Polynomial, x: Q) -> Q {
    assert!(r >= 1, "difference order must be at least 1");
    (0..=r)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let at = x + (half(i64::from(r)) - q(i64::from(k))) * step;
            q(sign * binomial(r, k)) * f.eval(at)
        })
        .sum()
}

/// Sample points of the order-`r` stencil, highest first, with coefficients.
pub fn stencil(r: u32, x: Q) -> Vec<(Q, i64)> {
    (0..=r)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            (
                x + half(i64::from(r)) - q(i64::from(k)),
                sign * binomial(r, k),
            )
        })
        .collect()
}

/// `1 / (m (r+1)!)`
pub fn normalization(r: u32, m: u32) -> Q {
    assert!(r >= 1 && m >= 1, "normalization needs r >= 1 and m >= 1");
    Q::new(1, i64::from(m) * factorial(r + 1))
}

/// The (order, multiplicity) pairs used across the curve and surface levels.
pub const LEVEL_PAIRS: [(u32, u32); 5] = [(1, 1), (2, 1), (1, 3), (2, 3), (3, 1)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub r: u32,
    pub x: Q,
    pub value: Q,
    pub expected: Q,
}

impl SweepRow {
    pub fn pass(&self) -> bool {
        self.value == self.expected
    }
}

/// `D^r(x^{r+1}) = (r+1)! x` for `r = 1, 2, 3` over half-integers and
/// integers in `[-range/2, range/2]`.
pub fn sweep(range: i64) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for r in 1..=3u32 {
        let f = Polynomial::monomial(r as usize + 1);
        for k in -range..=range {
            let x = half(k);
            rows.push(SweepRow {
                r,
                x,
                value: central_difference(r, q(1), &f, x),
                expected: q(factorial(r + 1)) * x,
            });
        }
    }
    rows
}

/// `D^r x^n` written out from the stencil, kept separate from `Polynomial`.
pub fn difference_of_power(r: u32, n: u32, x: Q) -> Q {
    stencil(r, x)
        .into_iter()
        .map(|(t, c)| q(c) * pow(t, n))
        .sum()
}
