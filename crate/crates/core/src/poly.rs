//! Dense integer polynomials in one variable `n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Coefficients stored constant term first, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![c])
    }

    /// `a*n + b`
    pub fn linear(a: i64, b: i64) -> Self {
        IntPoly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, n: i64) -> i128 {
        self.0.iter().rev().fold(0i128, |acc, &c| acc * n as i128 + c as i128)
    }

    /// Bound on the absolute value of every real root.
    pub fn root_bound(&self) -> Option<i64> {
        let lead = *self.0.last()?;
        let m = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| (c.unsigned_abs() as f64) / (lead.unsigned_abs() as f64))
            .fold(0.0, f64::max);
        Some(1 + m.ceil() as i64)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.0.len().max(rhs.0.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.0.len().max(rhs.0.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    f.write_str("n")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = IntPoly::new(vec![4, -5, 2]);
        let q = IntPoly::linear(1, -2);
        assert_eq!((&p * &q).coeffs(), &[-8, 14, -9, 2]);
        assert_eq!((&p - &p).degree(), None);
        assert_eq!((&p + &q).coeffs(), &[2, -4, 2]);
        assert_eq!(p.eval(7), 67);
        assert_eq!(IntPoly::new(vec![1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::new(vec![4, -5, 2]).to_string(), "2n^2 - 5n + 4");
        assert_eq!(IntPoly::new(vec![-5, 3]).to_string(), "3n - 5");
        assert_eq!(IntPoly::new(vec![0, -1]).to_string(), "-n");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn roots_bounded() {
        let p = &IntPoly::linear(1, -6) * &IntPoly::linear(1, 3);
        let b = p.root_bound().unwrap();
        assert!(b >= 6);
        assert_eq!(IntPoly::zero().root_bound(), None);
    }
}
