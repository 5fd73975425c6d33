//! Rational generating functions: exact arithmetic in lowest terms and
//! power-series coefficient extraction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::Coefficient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("division by the zero generating function")]
    DivisionByZero,
    #[error("denominator vanishes at x = 0; not expandable as a power series")]
    NotExpandable,
    #[error("series coefficient {index} is not exact in the coefficient ring")]
    NonIntegralSeries { index: usize },
    #[error("{0}")]
    Unsupported(String),
}

/// Arithmetic operation selector for [`rational_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A ratio `num / den` of polynomials with `den(0) != 0`, kept in lowest
/// terms with a positive constant term in the denominator.
#[derive(Clone, Debug)]
pub struct RationalGf<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Coefficient> RationalGf<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self, GfError> {
        if den.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let reduced = Self::reduce(num, den);
        if reduced.den.constant_term().is_zero() {
            return Err(GfError::NotExpandable);
        }
        Ok(reduced)
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<Self, GfError> {
        Self::new(Polynomial::from_i64s(num), Polynomial::from_i64s(den))
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        RationalGf {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    /// `x^k`
    pub fn x_pow(k: usize) -> Self {
        Self::from_poly(Polynomial::x_pow(k))
    }

    /// `1 / p`; `p(0)` must be nonzero.
    pub fn recip_poly(p: Polynomial<T>) -> Result<Self, GfError> {
        Self::new(Polynomial::one(), p)
    }

    fn reduce(num: Polynomial<T>, den: Polynomial<T>) -> Self {
        let (num, den) = if num.is_zero() {
            (num, Polynomial::one())
        } else {
            let g = num.gcd(&den);
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.constant_term().is_negative() {
            RationalGf {
                num: -&num,
                den: -&den,
            }
        } else {
            RationalGf { num, den }
        }
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, GfError> {
        if rhs.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Multiplies by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial<T>) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    /// Divides by the polynomial `p`, which must have `p(0) != 0`.
    pub fn div_poly(&self, p: &Polynomial<T>) -> Result<Self, GfError> {
        Self::new(self.num.clone(), &self.den * p)
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(num, &self.den * &self.den)
    }

    /// Coefficients `c_0 ..= c_upto` of the power-series expansion, from the
    /// linear recurrence `den(0) c_n = num_n - sum_{i>=1} den_i c_{n-i}`.
    pub fn series_coeffs(&self, upto: usize) -> Result<Vec<T>, GfError> {
        let d0 = self.den.constant_term();
        let den = self.den.coeffs();
        let mut out: Vec<T> = Vec::with_capacity(upto + 1);
        for n in 0..=upto {
            let mut acc = self.num.coeff(n);
            for i in 1..den.len().min(n + 1) {
                acc = acc - den[i].clone() * out[n - i].clone();
            }
            let c = acc
                .exact_div(&d0)
                .ok_or(GfError::NonIntegralSeries { index: n })?;
            out.push(c);
        }
        Ok(out)
    }

    /// `(num_coeffs)/(den_coeffs)`, lowest degree first.
    pub fn to_list_string(&self) -> String {
        format!("{}/{}", self.num.to_list_string(), self.den.to_list_string())
    }
}

/// Exact field operation on two generating functions.
pub fn rational_arith<T: Coefficient>(
    a: &RationalGf<T>,
    b: &RationalGf<T>,
    op: ArithOp,
) -> Result<RationalGf<T>, GfError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// Equality as rational functions: `num_a * den_b == num_b * den_a`.
impl<T: Coefficient> PartialEq for RationalGf<T> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<T: Coefficient> fmt::Display for RationalGf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<T: Coefficient> From<Polynomial<T>> for RationalGf<T> {
    fn from(p: Polynomial<T>) -> Self {
        Self::from_poly(p)
    }
}

// Sums and products of expandable functions stay expandable: the new
// denominator's constant term is a product of nonzero constant terms.
impl<T: Coefficient> Add for &RationalGf<T> {
    type Output = RationalGf<T>;

    fn add(self, rhs: Self) -> RationalGf<T> {
        if self.den == rhs.den {
            return RationalGf::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalGf::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Coefficient> Sub for &RationalGf<T> {
    type Output = RationalGf<T>;

    fn sub(self, rhs: Self) -> RationalGf<T> {
        self + &(-rhs)
    }
}

impl<T: Coefficient> Mul for &RationalGf<T> {
    type Output = RationalGf<T>;

    fn mul(self, rhs: Self) -> RationalGf<T> {
        RationalGf::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Coefficient> Neg for &RationalGf<T> {
    type Output = RationalGf<T>;

    fn neg(self) -> RationalGf<T> {
        RationalGf {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Coefficient> $tr for RationalGf<T> {
            type Output = RationalGf<T>;
            fn $m(self, rhs: Self) -> RationalGf<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type G = RationalGf<BigInt>;

    fn g(num: &[i64], den: &[i64]) -> G {
        G::from_i64s(num, den).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn sum_over_common_denominator() {
        let s = &g(&[1], &[1, -1]) + &g(&[0, 1], &[1, -1]);
        assert_eq!(s, g(&[1, 1], &[1, -1]));
        assert_eq!(s.numerator(), &Polynomial::from_i64s(&[1, 1]));
    }

    #[test]
    fn fibonacci_partial_sums() {
        // x/(1-x-x^2) * 1/(1-x): partial sums of 0,1,1,2,3,5,...
        let p = &g(&[0, 1], &[1, -1, -1]) * &g(&[1], &[1, -1]);
        let expected = ints(&[0, 1, 2, 4, 7, 12, 20, 33, 54, 88]);
        assert_eq!(p.series_coeffs(9).unwrap(), expected);
    }

    #[test]
    fn difference_with_itself_is_zero() {
        let a = g(&[3, -1, 2], &[1, -2, 0, 1]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn fibonacci_series() {
        let fib = g(&[0, 1], &[1, -1, -1]);
        assert_eq!(fib.series_coeffs(8).unwrap(), ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21]));
        assert_eq!(g(&[1], &[1, -1]).series_coeffs(4).unwrap(), ints(&[1; 5]));
    }

    #[test]
    fn shifted_fibonacci_identity() {
        // sum F_{n+4} x^n = (F_3 x + F_4)/(1 - x - x^2) = (3 + 2x)/(1 - x - x^2)
        let s = g(&[3, 2], &[1, -1, -1]).series_coeffs(8).unwrap();
        assert_eq!(s, ints(&[3, 5, 8, 13, 21, 34, 55, 89, 144]));
    }

    #[test]
    fn errors() {
        assert_eq!(G::from_i64s(&[1], &[]).unwrap_err(), GfError::DivisionByZero);
        assert_eq!(G::from_i64s(&[1], &[0, 1]).unwrap_err(), GfError::NotExpandable);
        // x / x reduces to 1, which is fine
        assert_eq!(G::from_i64s(&[0, 1], &[0, 1]).unwrap(), G::one());
        let one = G::one();
        assert_eq!(one.checked_div(&G::zero()).unwrap_err(), GfError::DivisionByZero);
        let x = G::x_pow(1);
        assert_eq!(one.checked_div(&x).unwrap_err(), GfError::NotExpandable);
        assert_eq!(
            rational_arith(&one, &x, ArithOp::Div).unwrap_err(),
            GfError::NotExpandable
        );
    }

    #[test]
    fn non_unit_constant_term() {
        let half = G::from_i64s(&[1], &[2]).unwrap();
        assert_eq!(
            half.series_coeffs(2).unwrap_err(),
            GfError::NonIntegralSeries { index: 0 }
        );
        let q = RationalGf::<BigRational>::from_i64s(&[1], &[2, -1]).unwrap();
        let c = q.series_coeffs(2).unwrap();
        assert_eq!(c[2], BigRational::new(1.into(), 8.into()));
    }

    #[test]
    fn normal_form_has_positive_constant_denominator() {
        let a = g(&[2, 2], &[-2, 2]);
        assert_eq!(a.denominator().constant_term(), BigInt::from(1));
        assert_eq!(a.to_list_string(), "(-1,-1)/(1,-1)");
    }

    #[test]
    fn derivative_of_geometric() {
        // d/dx 1/(1-x) = 1/(1-x)^2
        let d = g(&[1], &[1, -1]).derivative();
        assert_eq!(d, g(&[1], &[1, -2, 1]));
    }

    fn small_gf() -> impl Strategy<Value = G> {
        (
            prop::collection::vec(-4i64..=4, 0..4),
            prop::collection::vec(-3i64..=3, 0..3),
            prop::sample::select(vec![1i64, -1]),
        )
            .prop_map(|(num, mut tail, d0)| {
                tail.insert(0, d0);
                g(&num, &tail)
            })
    }

    fn convolve(a: &[BigInt], b: &[BigInt], upto: usize) -> Vec<BigInt> {
        (0..=upto)
            .map(|n| (0..=n).map(|i| &a[i] * &b[n - i]).sum())
            .collect()
    }

    proptest! {
        #[test]
        fn series_respects_ring_ops(a in small_gf(), b in small_gf()) {
            let n = 12;
            let (ca, cb) = (a.series_coeffs(n).unwrap(), b.series_coeffs(n).unwrap());
            let prod = (&a * &b).series_coeffs(n).unwrap();
            prop_assert_eq!(prod, convolve(&ca, &cb, n));
            let sum = (&a + &b).series_coeffs(n).unwrap();
            let direct: Vec<BigInt> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
            prop_assert_eq!(sum, direct);
        }

        #[test]
        fn division_inverts_multiplication(a in small_gf(), b in small_gf()) {
            let prod = &a * &b;
            if !b.is_zero() && b.numerator().constant_term() != BigInt::from(0) {
                prop_assert_eq!(prod.checked_div(&b).unwrap(), a);
            }
        }
    }
}
