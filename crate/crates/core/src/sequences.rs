//! Integer sequences: k-generalized Fibonacci, Tribonacci, Pell, Catalan and
//! binomial coefficients, plus the restriction-set recurrence.
//!
//! The linear recurrences are extended by zero to negative indices, so
//! `fibonacci(-1) == 0` and `pell(-1) == 0`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::families::RestrictionSpec;
use crate::perm::factorial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("unknown sequence {0:?} (expected fibonacci, tribonacci, pell or catalan)")]
    UnknownName(String),
}

/// `F_{k,n}`: zero for `n <= 0`, `F_{k,1} = 1`, and each later term the
/// sum of the previous `k`.
pub fn kgen_fib(k: u32, n: i64) -> BigInt {
    if n <= 0 {
        return BigInt::zero();
    }
    // the last k terms and their sum
    let mut window: VecDeque<BigInt> = VecDeque::with_capacity(k as usize + 1);
    let mut sum = BigInt::zero();
    let mut current = BigInt::one();
    for _ in 1..n {
        sum += &current;
        window.push_back(current);
        if window.len() > k as usize {
            sum -= window.pop_front().unwrap();
        }
        current = sum.clone();
    }
    current
}

pub fn fibonacci(n: i64) -> BigInt {
    kgen_fib(2, n)
}

/// `T_0 = 0`, `T_1 = T_2 = 1`, `T_n = T_{n-1} + T_{n-2} + T_{n-3}`.
pub fn tribonacci(n: i64) -> BigInt {
    kgen_fib(3, n)
}

/// `p_0 = 0`, `p_1 = 1`, `p_n = 2 p_{n-1} + p_{n-2}`.
pub fn pell(n: i64) -> BigInt {
    if n <= 0 {
        return BigInt::zero();
    }
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 1..n {
        let next = &b * 2 + &a;
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// `C(n, k)`, zero when `k < 0` or `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `C_n = C(2n, n) / (n + 1)`; zero for negative `n`.
pub fn catalan(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binomial(2 * n, n) / (n + 1)
}

/// `C_0 ..= C_upto` from the convolution `C_{n+1} = sum C_i C_{n-i}`.
pub fn catalan_by_convolution(upto: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for n in 0..upto {
        let next = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSequence {
    Fibonacci,
    Tribonacci,
    Pell,
    Catalan,
}

impl NamedSequence {
    pub fn value(self, n: i64) -> BigInt {
        match self {
            NamedSequence::Fibonacci => fibonacci(n),
            NamedSequence::Tribonacci => tribonacci(n),
            NamedSequence::Pell => pell(n),
            NamedSequence::Catalan => catalan(n),
        }
    }
}

impl FromStr for NamedSequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, SequenceError> {
        match s {
            "fibonacci" => Ok(NamedSequence::Fibonacci),
            "tribonacci" => Ok(NamedSequence::Tribonacci),
            "pell" => Ok(NamedSequence::Pell),
            "catalan" => Ok(NamedSequence::Catalan),
            _ => Err(SequenceError::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for NamedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedSequence::Fibonacci => "fibonacci",
            NamedSequence::Tribonacci => "tribonacci",
            NamedSequence::Pell => "pell",
            NamedSequence::Catalan => "catalan",
        })
    }
}

pub fn named_sequence(name: &str, n: i64) -> Result<BigInt, SequenceError> {
    Ok(name.parse::<NamedSequence>()?.value(n))
}

/// `|S_n(R^k_a)|` from the recurrence: `n!` for `n < k`, then
/// `sum_j (k - a_j - eta_j) |S_{n-j}|`.
pub fn recurrence_count(spec: &RestrictionSpec, n: usize) -> BigInt {
    recurrence_counts(spec, n).pop().unwrap()
}

/// `|S_0(R^k_a)| ..= |S_upto(R^k_a)|` by the same recurrence.
pub fn recurrence_counts(spec: &RestrictionSpec, upto: usize) -> Vec<BigInt> {
    let k = spec.k() as usize;
    let coeffs = spec.recurrence_coefficients();
    let mut out: Vec<BigInt> = Vec::with_capacity(upto + 1);
    for n in 0..=upto {
        let value = if n < k {
            factorial(n)
        } else {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| &out[n - j - 1] * c)
                .sum()
        };
        out.push(value);
    }
    out
}
