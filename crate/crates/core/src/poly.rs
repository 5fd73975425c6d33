//! Dense univariate polynomials with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Coefficient;

/// A polynomial in `x`, stored lowest degree first with no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: T, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial { coeffs }
    }

    /// `x^degree`
    pub fn x_pow(degree: usize) -> Self {
        Self::monomial(T::one(), degree)
    }

    /// `1 - x - x^2 - ... - x^k`; for `k = 0` this is `1`.
    pub fn one_minus_powers(k: usize) -> Self {
        let mut coeffs = vec![-T::one(); k + 1];
        coeffs[0] = T::one();
        Self::new(coeffs)
    }

    /// `(1 - x)^k`
    pub fn one_minus_x_pow(k: u32) -> Self {
        Self::from_i64s(&[1, -1]).pow(k)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    /// Drops every term of degree `>= n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// The gcd of the coefficients, with the sign of the leading coefficient.
    pub fn content(&self) -> T {
        let g = self
            .coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc.gcd_with(c));
        match self.leading() {
            Some(lc) if lc.is_negative() && !g.is_negative() => -g,
            _ => g,
        }
    }

    /// `self / content(self)`; the result has a positive leading coefficient
    /// over ordered integer rings.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.div_scalar(&c).expect("content divides every coefficient")
    }

    pub fn div_scalar(&self, c: &T) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|a| a.exact_div(c))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo-remainder by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = &r.scale(&lc) - &divisor.scale(&lr).shift(dr - dd);
        }
        r
    }

    /// Exact polynomial division; `None` if `divisor` does not divide `self`
    /// within the coefficient ring.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Some(Self::zero());
        };
        if dr < dd {
            return None;
        }
        let mut q = vec![T::zero(); dr - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let c = r.leading().unwrap().exact_div(lc)?;
            r = &r - &divisor.scale(&c).shift(dr - dd);
            q[dr - dd] = c;
        }
        Some(Self::new(q))
    }

    /// Greatest common divisor by the primitive remainder sequence. Over the
    /// integers the result is primitive times the gcd of the contents, with a
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let content = self.content().gcd_with(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content).normalize_sign()
    }

    fn normalize_sign(&self) -> Self {
        match self.leading() {
            Some(lc) if lc.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Renders the coefficient list, lowest degree first: `(1,-2,0,1)`.
    pub fn to_list_string(&self) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl<T: Coefficient> fmt::Display for Polynomial<T> {
    /// Human-readable form, e.g. `1 - 2x + x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{abs}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{abs}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coefficient> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Coefficient> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Coefficient> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Coefficient> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Coefficient> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
