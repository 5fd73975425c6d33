//! Generating functions for the pattern families: the determinant formula
//! for `S_n(132, 213, tau_r)`, the recurrences for `gamma`, `omega` and `mu`,
//! the restriction-set recurrence and the extension transform.

use std::collections::HashMap;

use crate::det::GfMatrix;
use crate::families::{alpha_rsequence, beta_rsequence, FamilySpec, RSequence, RestrictionSpec};
use crate::gf::{GfError, RationalGf};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

fn poly<T: Coefficient>(c: &[i64]) -> Polynomial<T> {
    Polynomial::from_i64s(c)
}

fn gf_over<T: Coefficient>(num: Polynomial<T>, den: Polynomial<T>) -> RationalGf<T> {
    RationalGf::new(num, den).expect("denominator has constant term 1")
}

/// `1 - 2x + x^i`
fn mansour_den<T: Coefficient>(i: u32) -> Polynomial<T> {
    &poly(&[1, -2]) + &Polynomial::x_pow(i as usize)
}

/// `f_i(x) = (1 - x) / (1 - 2x + x^i)`
pub fn mansour_f<T: Coefficient>(i: u32) -> RationalGf<T> {
    gf_over(poly(&[1, -1]), mansour_den(i))
}

/// `g_i(x) = x^i / (1 - 2x + x^i)`
pub fn mansour_g<T: Coefficient>(i: u32) -> RationalGf<T> {
    gf_over(Polynomial::x_pow(i as usize), mansour_den(i))
}

/// The `m x m` matrix whose determinant is the generating function of
/// `S_n(132, 213, tau_r)`.
pub fn mansour_matrix<T: Coefficient>(r: &RSequence) -> GfMatrix<T> {
    let gaps = r.gaps();
    let m = gaps.len();
    let mut mat = GfMatrix::zeros(m);
    for (j, &d) in gaps.iter().enumerate() {
        mat.set(j, 0, mansour_f(d));
        if j >= 1 {
            mat.set(j, j, RationalGf::one());
        }
        if j + 1 < m {
            mat.set(j, j + 1, -&mansour_g(d));
        }
    }
    mat
}

pub fn mansour_gf<T: Coefficient>(r: &RSequence) -> RationalGf<T> {
    mansour_matrix(r).det()
}

/// `x / (1 - x - ... - x^k)`, the generating function of `F_{k,n}`.
pub fn kfib_gf<T: Coefficient>(k: usize) -> RationalGf<T> {
    gf_over(Polynomial::x_pow(1), Polynomial::one_minus_powers(k))
}

/// `f_{a,b,c}(x) = sum |S_n(123, 132, gamma_{a,b,c})| x^n`.
///
/// Defined for `a = b = 0`, for `a = 0`, and for `b >= 1`; the remaining
/// case `a >= 1, b = 0` has no recurrence and is rejected.
pub fn gamma_gf<T: Coefficient>(a: u32, b: u32, c: u32) -> Result<RationalGf<T>, GfError> {
    if a >= 1 && b == 0 {
        return Err(GfError::Unsupported(format!(
            "no recurrence for gamma_{{{a},0,{c}}} with a >= 1"
        )));
    }
    let mut table = GammaTable {
        memo: HashMap::new(),
    };
    Ok(table.get(a, b, c))
}

struct GammaTable<T> {
    memo: HashMap<(u32, u32, u32), RationalGf<T>>,
}

impl<T: Coefficient> GammaTable<T> {
    fn get(&mut self, a: u32, b: u32, c: u32) -> RationalGf<T> {
        if let Some(g) = self.memo.get(&(a, b, c)) {
            return g.clone();
        }
        let g = self.compute(a, b, c);
        self.memo.insert((a, b, c), g.clone());
        g
    }

    fn compute(&mut self, a: u32, b: u32, c: u32) -> RationalGf<T> {
        let x = |k: u32| RationalGf::<T>::x_pow(k as usize);
        match (a, b, c) {
            (0, 0, 0) => RationalGf::one(),
            (0, 0, c) => {
                let mut acc = &RationalGf::one() + &(&x(1) * &self.get(0, 0, c - 1));
                for r in 2..=c + 1 {
                    acc = &acc + &(&x(r) * &self.get(0, 0, c + 1 - r));
                }
                acc
            }
            (0, b, 0) => RationalGf::recip_poly(Polynomial::one_minus_powers(b as usize))
                .expect("constant term 1"),
            (0, b, c) => {
                let num = &(&RationalGf::from_poly(poly(&[1, -1]))
                    + &(&x(b + 1) * &self.get(0, 0, c - 1)));
                let den = &poly::<T>(&[1, -1]) * &Polynomial::one_minus_powers(b as usize);
                num.div_poly(&den).expect("constant term 1")
            }
            (a, b, c) => {
                let mut acc = &RationalGf::one() + &(&x(1) * &self.get(a - 1, b, c));
                for r in 2..=a {
                    acc = &acc + &(&x(r) * &self.get(a - r + 1, b, c));
                }
                let tail = (&x(a + 1) * &self.get(0, b, c))
                    .div_poly(&poly(&[1, -1]))
                    .expect("constant term 1");
                &acc + &tail
            }
        }
    }
}

/// `g_k(x) = sum |S_n(132, 2341, omega_k)| x^n` for `k >= 3`.
pub fn omega_gf<T: Coefficient>(k: u32) -> Result<RationalGf<T>, GfError> {
    if k < 3 {
        return Err(GfError::Unsupported(format!("omega_{k} needs k >= 3")));
    }
    let one = RationalGf::<T>::one();
    let one_minus_x = poly::<T>(&[1, -1]);
    let g3 = gf_over(
        poly(&[1, -1, 0, 1]),
        &one_minus_x * &Polynomial::one_minus_powers(2),
    );
    // table[i] = g_{i+3}
    let mut table = vec![g3.clone()];
    for k in 4..=k as usize {
        let g = |j: usize| &table[j - 3] - &one;
        let mut inner = &one + &(&RationalGf::x_pow(1) * &g(k - 1));
        for r in 2..=k - 2 {
            inner = &inner + &(&RationalGf::x_pow(r) * &g(k - r + 1));
        }
        let tail = (&RationalGf::x_pow(k - 1) * &(&g3 - &one))
            .div_poly(&one_minus_x)
            .expect("constant term 1");
        let next = (&inner + &tail).div_poly(&one_minus_x).expect("constant term 1");
        table.push(next);
    }
    Ok(table.pop().unwrap())
}

/// `h_{a,b}(x) = sum |S_n(132, 3241, mu_{a,b})| x^n` for `b >= 1`.
pub fn mu_gf<T: Coefficient>(a: u32, b: u32) -> Result<RationalGf<T>, GfError> {
    if b == 0 {
        return Err(GfError::Unsupported(format!(
            "no recurrence for mu_{{{a},0}}"
        )));
    }
    let one = RationalGf::<T>::one();
    let mut h = one.clone();
    for j in 2..=b as usize {
        h = &one
            + &(&RationalGf::x_pow(1) * &h)
                .div_poly(&Polynomial::one_minus_powers(j - 1))
                .expect("constant term 1");
    }
    let base = RationalGf::from_poly(poly::<T>(&[1, -2]));
    for _ in 0..a {
        h = (&base + &(&RationalGf::x_pow(1) * &h))
            .div_poly(&Polynomial::one_minus_x_pow(2))
            .expect("constant term 1");
    }
    Ok(h)
}

/// The generating function of `|S_n(R^k_a)|`: `n!` for `n < k`, then the
/// order-`l` recurrence with coefficients `k - a_j - eta_j`.
pub fn recurrence_gf<T: Coefficient>(spec: &RestrictionSpec) -> RationalGf<T> {
    let k = spec.k() as usize;
    let mut den = vec![T::one()];
    den.extend(
        spec.recurrence_coefficients()
            .into_iter()
            .map(|c| -T::from_i64(c)),
    );
    let den = Polynomial::new(den);
    let seeds = Polynomial::new(factorials::<T>(k));
    gf_over((&den * &seeds).truncate(k), den)
}

/// `0!, 1!, ..., (k-1)!`
fn factorials<T: Coefficient>(k: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(k);
    let mut f = T::one();
    for n in 0..k {
        if n > 0 {
            f = f * T::from_i64(n as i64);
        }
        out.push(f.clone());
    }
    out
}

/// Given `A(x) = sum |S_n(R)| x^n`, the generating function of
/// `|S_n(E^k(R))|`: `n!` below `k`, and `n!/(n-k)! |S_{n-k}(R)|` from `k` on.
/// The second part is `x^k D^k (x^k A(x))`.
pub fn extension_gf<T: Coefficient>(base: &RationalGf<T>, k: u32) -> RationalGf<T> {
    let k = k as usize;
    let mut g = base.mul_poly(&Polynomial::x_pow(k));
    for _ in 0..k {
        g = g.derivative();
    }
    let head = RationalGf::from_poly(Polynomial::new(factorials::<T>(k)));
    &head + &g.mul_poly(&Polynomial::x_pow(k))
}

/// The generating function of `|S_n(C)|` where `C` is `spec.class()`.
/// Plain pattern lists have no construction and are rejected.
pub fn family_gf<T: Coefficient>(spec: &FamilySpec) -> Result<RationalGf<T>, GfError> {
    let bad = |e: crate::families::FamilyError| GfError::Unsupported(e.to_string());
    Ok(match spec {
        FamilySpec::Tau(r) => mansour_gf(r),
        FamilySpec::Alpha(s, t) => mansour_gf(&alpha_rsequence(*s, *t).map_err(bad)?),
        FamilySpec::Beta(a, b, c) => mansour_gf(&beta_rsequence(*a, *b, *c).map_err(bad)?),
        FamilySpec::Increasing(k) => {
            let r = RSequence::new(vec![k + 1, 1]).map_err(bad)?;
            mansour_gf(&r)
        }
        FamilySpec::Gamma(a, b, c) => gamma_gf(*a, *b, *c)?,
        FamilySpec::Omega(k) => omega_gf(*k)?,
        FamilySpec::Mu(a, b) => mu_gf(*a, *b)?,
        FamilySpec::Restriction(r) => recurrence_gf(r),
        // every West class has the generating function of F_{2n-1}
        FamilySpec::West(_) => gf_over(poly(&[1, -2]), poly(&[1, -3, 1])),
        FamilySpec::Extension(k, inner) => extension_gf(&family_gf(inner)?, *k),
        FamilySpec::List(set) => {
            return Err(GfError::Unsupported(format!(
                "no generating function construction for the plain list {set}"
            )))
        }
    })
}
