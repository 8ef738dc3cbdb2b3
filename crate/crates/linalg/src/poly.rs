//! Univariate polynomials over Q, just enough for minimal polynomials and
//! squarefree testing.

use std::fmt;

use crate::{solve, LinalgError, Matrix, Rational};

/// Dense polynomial, coefficients from the constant term upward. The leading
/// coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lc) => {
                let inv = lc.recip().expect("leading coefficient is nonzero");
                Polynomial::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i as i64))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        let d = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.leading().and_then(Rational::recip).expect("nonzero leading");
        let mut r = self.coeffs.clone();
        while r.len() > d && !r.is_empty() {
            let top = r.len() - 1;
            let f = &r[top] * &lc_inv;
            if !f.is_zero() {
                let shift = top - d;
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] -= &(&f * c);
                }
            }
            r.pop();
            while r.last().is_some_and(Rational::is_zero) {
                r.pop();
            }
        }
        Polynomial::new(r)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(a)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        assert!(a.is_square(), "polynomial of non-square matrix");
        let n = a.rows();
        let mut out = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            out = &(&out * a) + &Matrix::identity(n).scale(c);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic polynomial of least degree annihilating the square matrix `a`.
///
/// Finds the first power `a^k` that is a linear combination of
/// `I, a, …, a^(k-1)`.
pub fn minimal_polynomial(a: &Matrix) -> Result<Polynomial, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Polynomial::from_i64(&[1]));
    }
    let mut powers: Vec<Vec<Rational>> = vec![Matrix::identity(n).entries().to_vec()];
    let mut current = Matrix::identity(n);
    for _ in 0..=n {
        current = &current * a;
        let target = current.entries().to_vec();
        let system = Matrix::from_cols(&powers, n * n)?;
        if let Some(c) = solve(&system, &target)? {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            return Ok(Polynomial::new(coeffs));
        }
        powers.push(target);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Whether `p` has no repeated factor, i.e. `gcd(p, p')` is constant.
pub fn is_squarefree(p: &Polynomial) -> Result<bool, LinalgError> {
    if p.is_zero() {
        return Err(LinalgError::ZeroPolynomial);
    }
    Ok(p.gcd(&p.derivative()).degree() == Some(0))
}
