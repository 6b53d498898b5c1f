//! Exact rational helpers. Every quantity in the engine has a power-of-two
//! denominator, so `Ratio<i64>` is more than wide enough for desk-scale inputs.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// `n / 2`.
pub fn half(n: i64) -> Q {
    Q::new(n, 2)
}

pub fn pow(x: Q, e: u32) -> Q {
    let mut acc = q(1);
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Integer power sum `sum sign_k * value_k^e`.
pub fn signed_power_sum<I>(terms: I, e: u32) -> Q
where
    I: IntoIterator<Item = (i64, Q)>,
{
    terms
        .into_iter()
        .fold(Q::zero(), |acc, (s, v)| acc + q(s) * pow(v, e))
}

pub fn is_integer(x: &Q) -> bool {
    *x.denom() == 1
}

/// True for values in `Z + 1/2`.
pub fn is_half_odd(x: &Q) -> bool {
    *x.denom() == 2
}

pub fn parse_q(s: &str) -> Option<Q> {
    s.trim().parse::<Q>().ok()
}

pub fn sign_str(s: i64) -> &'static str {
    if s > 0 {
        "+1"
    } else if s < 0 {
        "-1"
    } else {
        "0"
    }
}

pub fn abs(x: Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_q("-3/2"), Some(half(-3)));
        assert_eq!(parse_q("4"), Some(q(4)));
        assert_eq!(parse_q("x"), None);
        assert_eq!(half(-3).to_string(), "-3/2");
        assert_eq!(q(2).to_string(), "2");
    }

    #[test]
    fn power_sum() {
        let v = signed_power_sum([(1, q(3)), (-1, q(1)), (-1, q(1)), (1, q(-1))], 3);
        assert_eq!(v, q(27 - 1 - 1 - 1));
        assert!(is_half_odd(&half(5)));
        assert!(is_integer(&half(4)));
    }
}
