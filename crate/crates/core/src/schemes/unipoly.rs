//! Dense univariate polynomials over Q, just enough for gcds.

use num_traits::{One, Zero};

use crate::exact::Q;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly(Vec<Q>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.0
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => UniPoly(self.0.iter().map(|c| c / lead).collect()),
        }
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = &r[k] / &lead;
            if !c.is_zero() {
                for (i, dc) in divisor.0.iter().enumerate() {
                    r[k - dd + i] -= &c * dc;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_some_and(|d| d == 0)
    }

    pub fn one() -> Self {
        UniPoly(vec![Q::one()])
    }

    /// a + b·λ.
    pub fn linear(a: Q, b: Q) -> Self {
        UniPoly::new(vec![a, b])
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let get = |v: &[Q], i: usize| v.get(i).cloned().unwrap_or_else(Q::zero);
        UniPoly::new((0..n).map(|i| get(&self.0, i) + get(&other.0, i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        UniPoly::new(self.0.iter().map(|x| x * c).collect())
    }
}
