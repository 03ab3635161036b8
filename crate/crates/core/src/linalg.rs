//! Dense complex matrix helpers: exponential, logarithm, group projections.
//!
//! Matrices here are small (2x2 .. ~10x10), so plain scaling-and-squaring
//! with a Taylor tail and a Gregory-series log are accurate to rounding;
//! the exp/log round-trip invariant is the contract, not the method.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn frobenius(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Matrix exponential by scaling-and-squaring with a Taylor tail.
pub fn expm(a: &CMat) -> CMat {
    let norm = frobenius(a);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let mut sum = identity(a.nrows());
    let mut term = identity(a.nrows());
    for k in 1..32 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        sum += &term;
        if frobenius(&term) < 1e-18 * frobenius(&sum) {
            break;
        }
    }
    let mut out = sum;
    for _ in 0..squarings {
        out = &out * &out;
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum LogmError {
    #[error("matrix square root did not converge (outside the injectivity region)")]
    SqrtDiverged,
    #[error("singular matrix in logarithm")]
    Singular,
}

/// Principal matrix logarithm by inverse scaling-and-squaring: repeated
/// Denman-Beavers square roots until close to the identity, then the
/// Gregory series `log A = 2 atanh((A-I)(A+I)^{-1})`.
pub fn logm(a: &CMat) -> Result<CMat, LogmError> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut scale = 1.0;
    for _ in 0..40 {
        if frobenius(&(&y - identity(n))) < 0.3 {
            break;
        }
        y = sqrtm(&y)?;
        scale *= 2.0;
    }
    if frobenius(&(&y - identity(n))) >= 0.3 {
        return Err(LogmError::SqrtDiverged);
    }
    let num = &y - identity(n);
    let den = (&y + identity(n))
        .try_inverse()
        .ok_or(LogmError::Singular)?;
    let x = num * den;
    // 2 * (x + x^3/3 + x^5/5 + ...)
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut sum = x.clone();
    for k in 1..60 {
        term *= &x2;
        let contrib = &term / Complex64::new((2 * k + 1) as f64, 0.0);
        sum += &contrib;
        if frobenius(&contrib) < 1e-18 {
            break;
        }
    }
    Ok(sum * Complex64::new(2.0 * scale, 0.0))
}

/// Denman-Beavers iteration for the principal square root.
fn sqrtm(a: &CMat) -> Result<CMat, LogmError> {
    let mut y = a.clone();
    let mut z = identity(a.nrows());
    for _ in 0..60 {
        let yi = y.clone().try_inverse().ok_or(LogmError::Singular)?;
        let zi = z.clone().try_inverse().ok_or(LogmError::Singular)?;
        let y_next = (&y + zi) * Complex64::new(0.5, 0.0);
        let z_next = (&z + yi) * Complex64::new(0.5, 0.0);
        let delta = frobenius(&(&y_next - &y));
        y = y_next;
        z = z_next;
        if delta < 1e-15 {
            return Ok(y);
        }
    }
    Err(LogmError::SqrtDiverged)
}

/// Project a near-unitary matrix onto the unitary group with special
/// determinant, via the Newton polar iteration followed by a phase fix.
pub fn project_special_unitary(a: &CMat) -> CMat {
    let mut u = a.clone();
    for _ in 0..4 {
        if let Some(inv) = u.clone().try_inverse() {
            u = (&u + inv.adjoint()) * Complex64::new(0.5, 0.0);
        } else {
            break;
        }
    }
    let n = u.nrows() as f64;
    let det = u.determinant();
    // principal n-th root of the determinant phase
    let phase = Complex64::from_polar(det.norm().powf(-1.0 / n), -det.arg() / n);
    u * phase
}

/// Project a near-orthogonal real-entried matrix onto SO(n).
pub fn project_special_orthogonal(a: &CMat) -> CMat {
    let mut u = a.map(|z| Complex64::new(z.re, 0.0));
    for _ in 0..4 {
        if let Some(inv) = u.clone().try_inverse() {
            u = (&u + inv.transpose()) * Complex64::new(0.5, 0.0);
        } else {
            break;
        }
    }
    u
}

pub fn unitarity_residual(a: &CMat) -> f64 {
    let n = a.nrows();
    frobenius(&(a.adjoint() * a - identity(n)))
}

pub fn orthogonality_residual(a: &CMat) -> f64 {
    let n = a.nrows();
    let imag: f64 = a.iter().map(|z| z.im.abs()).sum();
    frobenius(&(a.transpose() * a - identity(n))) + imag
}
