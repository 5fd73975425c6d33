//! Square matrices of generating functions and their determinants.

use crate::gf::RationalGf;
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

#[derive(Clone, Debug)]
pub struct GfMatrix<T> {
    dim: usize,
    entries: Vec<RationalGf<T>>,
}

impl<T: Coefficient> GfMatrix<T> {
    /// The `dim x dim` zero matrix.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        GfMatrix {
            dim,
            entries: vec![RationalGf::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<RationalGf<T>>>) -> Self {
        let dim = rows.len();
        assert!(dim >= 1, "matrix dimension must be positive");
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        GfMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &RationalGf<T> {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: RationalGf<T>) {
        self.entries[row * self.dim + col] = value;
    }

    /// Determinant by Gaussian elimination over the field of rational
    /// functions. Intermediate quotients may leave the power-series ring,
    /// the final product never does.
    pub fn det(&self) -> RationalGf<T> {
        let n = self.dim;
        let mut m: Vec<Vec<Frac<T>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Frac::from_gf(self.get(i, j)))
                    .collect()
            })
            .collect();
        let mut acc = Frac::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return RationalGf::zero();
            };
            if p != col {
                m.swap(p, col);
                acc = acc.neg();
            }
            let pivot = m[col][col].clone();
            acc = acc.mul(&pivot);
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].div(&pivot);
                for c in col + 1..n {
                    if m[col][c].is_zero() {
                        continue;
                    }
                    m[r][c] = m[r][c].sub(&factor.mul(&m[col][c]));
                }
                m[r][col] = Frac::zero();
            }
        }
        RationalGf::new(acc.num, acc.den)
            .expect("determinant of power-series entries is a power series")
    }

    /// Determinant by Laplace expansion along the first column, skipping
    /// zero entries. Exponential in general; fine for sparse matrices.
    pub fn det_cofactor(&self) -> RationalGf<T> {
        let rows: Vec<usize> = (0..self.dim).collect();
        let cols: Vec<usize> = (0..self.dim).collect();
        self.minor_det(&rows, &cols)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> RationalGf<T> {
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let mut total = RationalGf::zero();
        for (k, &r) in rows.iter().enumerate() {
            let entry = self.get(r, cols[0]);
            if entry.is_zero() {
                continue;
            }
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let term = entry * &self.minor_det(&sub_rows, &cols[1..]);
            total = if k % 2 == 0 {
                &total + &term
            } else {
                &total - &term
            };
        }
        total
    }
}

/// Unrestricted fraction of polynomials, reduced by the polynomial gcd.
#[derive(Clone, Debug)]
struct Frac<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Coefficient> Frac<T> {
    fn new(num: Polynomial<T>, den: Polynomial<T>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        Frac {
            num: num.div_exact(&g).expect("gcd divides numerator"),
            den: den.div_exact(&g).expect("gcd divides denominator"),
        }
    }

    fn from_gf(g: &RationalGf<T>) -> Self {
        Frac {
            num: g.numerator().clone(),
            den: g.denominator().clone(),
        }
    }

    fn zero() -> Self {
        Frac {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    fn one() -> Self {
        Frac {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn neg(&self) -> Self {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    fn div(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type G = RationalGf<BigInt>;

    fn g(num: &[i64], den: &[i64]) -> G {
        G::from_i64s(num, den).unwrap()
    }

    #[test]
    fn one_by_one() {
        let e = g(&[1, 2], &[1, -1, -1]);
        let m = GfMatrix::from_rows(vec![vec![e.clone()]]);
        assert_eq!(m.det(), e);
        assert_eq!(m.det_cofactor(), e);
    }

    #[test]
    fn needs_row_swap() {
        // [[0, 1], [1, 0]] has determinant -1
        let m = GfMatrix::from_rows(vec![
            vec![G::zero(), G::one()],
            vec![G::one(), G::zero()],
        ]);
        assert_eq!(m.det(), g(&[-1], &[1]));
        assert_eq!(m.det_cofactor(), g(&[-1], &[1]));
    }

    #[test]
    fn pivot_outside_power_series_ring() {
        // [[x, 1], [1, 1]]: elimination divides by x on the way; det = x - 1
        let m = GfMatrix::from_rows(vec![
            vec![G::x_pow(1), G::one()],
            vec![G::one(), G::one()],
        ]);
        assert_eq!(m.det(), g(&[-1, 1], &[1]));
    }

    #[test]
    fn singular_matrix() {
        let a = g(&[1], &[1, -1]);
        let m = GfMatrix::from_rows(vec![vec![a.clone(), a.clone()], vec![a.clone(), a]]);
        assert!(m.det().is_zero());
        assert!(m.det_cofactor().is_zero());
    }

    #[test]
    fn dense_three_by_three_routes_agree() {
        let rows: Vec<Vec<G>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| g(&[i as i64 + 1, j as i64 - 1], &[1, -(i as i64), j as i64]))
                    .collect()
            })
            .collect();
        let m = GfMatrix::from_rows(rows);
        assert_eq!(m.det(), m.det_cofactor());
    }
}
