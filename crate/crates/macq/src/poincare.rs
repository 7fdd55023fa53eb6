//! Reduced Poincaré polynomials: integer Betti bookkeeping in one variable.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial `Σ b_d t^d` with nonnegative integer coefficients and no
/// constant term, recording reduced Betti numbers over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PoincarePolynomial {
    coeffs: BTreeMap<usize, u64>,
}

impl PoincarePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(degree: usize, coeff: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    /// `t^a + t^{a+step} + ... + t^b` (used for `CP^n`: degrees 2,4,..,2n).
    pub fn range(from: usize, to: usize, step: usize) -> Self {
        let mut p = Self::zero();
        let mut d = from;
        while d <= to {
            p.add_term(d, 1);
            d += step;
        }
        p
    }

    /// `(1+t)^b - 1`, the reduced Poincaré polynomial of the `b`-torus.
    pub fn torus(b: usize) -> Self {
        let mut p = Self::zero();
        for i in 1..=b {
            p.add_term(i, binomial(b as u64, i as u64));
        }
        p
    }

    pub fn add_term(&mut self, degree: usize, coeff: u64) {
        assert!(degree >= 1 || coeff == 0, "reduced polynomial: degree >= 1");
        if coeff != 0 {
            *self.coeffs.entry(degree).or_insert(0) += coeff;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, &c) in &other.coeffs {
            out.add_term(d, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&d1, &c1) in &self.coeffs {
            for (&d2, &c2) in &other.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero();
        for (&d, &v) in &self.coeffs {
            out.add_term(d, v * c);
        }
        out
    }

    /// Multiplication by `t^s` (suspension `s` times).
    pub fn shift(&self, s: usize) -> Self {
        let mut out = Self::zero();
        for (&d, &v) in &self.coeffs {
            out.add_term(d + s, v);
        }
        out
    }

    pub fn coefficient(&self, degree: usize) -> u64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree with a nonzero coefficient; `None` for the zero
    /// polynomial.
    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    /// Total rank `Σ b_d`.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, &c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "t^{d}")?;
            } else {
                write!(f, "{c}t^{d}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for PoincarePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (d, c) in &self.coeffs {
            map.serialize_entry(&d.to_string(), c)?;
        }
        map.end()
    }
}

/// Exact binomial coefficient, small enough for every parameter range the
/// formulas reach.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_is_binomial_expansion() {
        let t3 = PoincarePolynomial::torus(3);
        assert_eq!(t3.coefficient(1), 3);
        assert_eq!(t3.coefficient(2), 3);
        assert_eq!(t3.coefficient(3), 1);
        assert_eq!(t3.coefficient(0), 0);
        assert_eq!(PoincarePolynomial::torus(0), PoincarePolynomial::zero());
    }

    #[test]
    fn arithmetic() {
        let a = PoincarePolynomial::monomial(1, 1);
        let b = PoincarePolynomial::monomial(2, 3);
        assert_eq!(a.mul(&b), PoincarePolynomial::monomial(3, 3));
        assert_eq!(a.add(&a), PoincarePolynomial::monomial(1, 2));
        assert_eq!(a.shift(4), PoincarePolynomial::monomial(5, 1));
        assert_eq!(b.scale(0), PoincarePolynomial::zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(52, 5), 2_598_960);
    }

    #[test]
    fn json_shape() {
        let p = PoincarePolynomial::monomial(2, 1).add(&PoincarePolynomial::monomial(5, 3));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"2":1,"5":3}"#);
    }
}
