//! Dense square-or-rectangular matrices over [`Scalar`].

use std::fmt;

use crate::exactnum::Scalar;

#[derive(Clone, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    zero: Scalar,
}

impl Matrix {
    /// All-zero matrix; `zero` fixes the backend and field of the entries.
    pub fn zeros(rows: usize, cols: usize, zero: &Scalar) -> Self {
        let z = zero.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![z.clone(); rows * cols],
            zero: z,
        }
    }

    pub fn identity(n: usize, zero: &Scalar) -> Self {
        let mut m = Self::zeros(n, n, zero);
        let one = zero.one_like();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn diagonal(entries: Vec<Scalar>, zero: &Scalar) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n, zero);
        for (i, v) in entries.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Build from row vectors; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self, String> {
        let zero = rows
            .iter()
            .flatten()
            .next()
            .map(Scalar::zero_like)
            .ok_or_else(|| "empty matrix".to_string())?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(format!("row {i} has {} entries, expected {cols}", r.len()));
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
            zero,
        })
    }

    pub fn rows_len(&self) -> usize {
        self.rows
    }

    pub fn cols_len(&self) -> usize {
        self.cols
    }

    pub fn zero_scalar(&self) -> &Scalar {
        &self.zero
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|v| v * c)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: self.zero.clone(),
        }
    }

    /// Product; structurally zero entries (exact zeros) are skipped.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if is_structural_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if is_structural_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.rows, &self.zero);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().map(Scalar::conj)
    }

    pub fn to_approx(&self, digits: u32) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| Scalar::Approx(v.to_approx(digits))).collect(),
            zero: Scalar::Approx(self.zero.to_approx(digits)),
        }
    }

    /// Every entry zero: exactly, or within the default approximate tolerance.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_zero_within(&self, tol_exp: u32) -> bool {
        self.data.iter().all(|v| v.is_zero_within(tol_exp))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// The common diagonal value when the matrix is a multiple of the identity.
    pub fn scalar_value(&self) -> Option<Scalar> {
        if self.rows != self.cols || !self.is_diagonal() {
            return None;
        }
        if self.rows == 0 {
            return Some(self.zero.clone());
        }
        let first = self.get(0, 0).clone();
        (1..self.rows)
            .all(|i| (self.get(i, i) - &first).is_zero())
            .then_some(first)
    }

    /// Largest entry modulus as an `f64` (0 for exact zero matrices).
    pub fn max_abs_f64(&self) -> f64 {
        self.data
            .iter()
            .filter(|v| !is_structural_zero(v))
            .map(|v| {
                let a = v.to_approx(20);
                a.re_f64().hypot(a.im_f64())
            })
            .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }
}

fn is_structural_zero(v: &Scalar) -> bool {
    match v {
        Scalar::Exact(x) => x.is_zero(),
        Scalar::Approx(a) => a.re().is_zero() && a.im().is_zero(),
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(12);
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols)
                .map(|j| {
                    let v = self.get(i, j);
                    if is_structural_zero(v) {
                        "0".to_string()
                    } else {
                        match v {
                            Scalar::Exact(x) => match x.as_rational() {
                                Some(r) => r.to_string(),
                                None => format!("{:.*}", prec, v.to_approx(prec as u32 + 4)),
                            },
                            Scalar::Approx(a) => format!("{a:.prec$}"),
                        }
                    }
                })
                .collect();
            writeln!(f, "[ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CyclotomicField;

    #[test]
    fn identity_products_and_scalars() {
        let f = CyclotomicField::new(8);
        let z = Scalar::Exact(f.zero());
        let id = Matrix::identity(3, &z);
        let mut a = Matrix::zeros(3, 3, &z);
        a.set(0, 1, Scalar::Exact(f.zeta_pow(1)));
        a.set(2, 0, Scalar::Exact(f.from_integer(4)));
        let p = id.mul(&a);
        assert!(p.sub(&a).is_zero());
        assert!(id.scale(&Scalar::Exact(f.zeta_pow(3))).scalar_value().is_some());
        assert!(a.scalar_value().is_none());
        assert!(a.pow(3).mul(&a).sub(&a.pow(4)).is_zero());
        assert!(a.adjoint().adjoint().sub(&a).is_zero());
        assert_eq!(a.transpose().get(1, 0), a.get(0, 1));
    }
}
