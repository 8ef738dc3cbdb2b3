use crate::{LinalgError, Matrix, Rational};

/// Exact exponential `Σ a^i / i!` of a nilpotent matrix.
///
/// The series stops at the nilpotency index, so the result is exact and
/// unipotent.
pub fn exp_nilpotent(a: &Matrix) -> Result<Matrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for i in 1..=n {
        term = (&term * a).scale(&Rational::new(1, i as i64));
        if term.is_zero() {
            return Ok(sum);
        }
        sum = &sum + &term;
    }
    if (&term * a).is_zero() {
        Ok(sum)
    } else {
        Err(LinalgError::NotNilpotent)
    }
}
