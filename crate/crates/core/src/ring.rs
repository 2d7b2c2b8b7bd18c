//! Coefficient rings for truncated series: exact rationals and polynomials in `z`
//! over the rationals.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p/q" or "p".
pub fn rat_parse(s: &str) -> Result<Rational, String> {
    s.parse::<BigRational>()
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// What the series engine needs from a coefficient ring.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse when the element is a unit of the ring.
    fn inv_unit(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    /// Exact division by a nonzero integer (series integration needs it).
    fn div_int(&self, n: i64) -> Self;
    fn ring_label() -> &'static str;
    fn coeff_to_json(&self) -> serde_json::Value;
    fn coeff_from_json(v: &serde_json::Value) -> Result<Self, String>;
}

impl Ring for Rational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv_unit(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0);
        self / rat_int(n)
    }
    fn ring_label() -> &'static str {
        "Q"
    }
    fn coeff_to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn coeff_from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::String(s) => rat_parse(s),
            other => Err(format!("expected rational string, got {other}")),
        }
    }
}

/// Polynomial in `z` with rational coefficients, stored dense without trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    coeffs: Vec<Rational>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn z() -> Self {
        ZPoly::new(vec![rat_int(0), rat_int(1)])
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(<Rational as Zero>::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = <Rational as Zero>::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "{c}*z")?,
                _ if c.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Ring for ZPoly {
    fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }
    fn one() -> Self {
        ZPoly::constant(rat_int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        ZPoly::new(out)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return <ZPoly as Ring>::zero();
        }
        let mut out = vec![<Rational as Zero>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
    fn inv_unit(&self) -> Option<Self> {
        // units of Q[z] are the nonzero constants
        if self.coeffs.len() == 1 {
            self.coeffs[0].inv_unit().map(ZPoly::constant)
        } else {
            None
        }
    }
    fn from_int(n: i64) -> Self {
        ZPoly::constant(rat_int(n))
    }
    fn div_int(&self, n: i64) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| c.div_int(n)).collect(),
        }
    }
    fn ring_label() -> &'static str {
        "Q[z]"
    }
    fn coeff_to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
    fn coeff_from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::Array(items) => {
                let mut coeffs = Vec::with_capacity(items.len());
                for item in items {
                    coeffs.push(Rational::coeff_from_json(item)?);
                }
                Ok(ZPoly::new(coeffs))
            }
            other => Err(format!("expected coefficient array, got {other}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zpoly_canonical_form_drops_trailing_zeros() {
        let p = ZPoly::new(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(ZPoly::new(vec![]).degree(), None);
    }

    #[test]
    fn zpoly_eval_and_mul() {
        // (1 + z)(2 + 3z) = 2 + 5z + 3z^2
        let a = ZPoly::new(vec![rat_int(1), rat_int(1)]);
        let b = ZPoly::new(vec![rat_int(2), rat_int(3)]);
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), &[rat_int(2), rat_int(5), rat_int(3)]);
        assert_eq!(p.eval(&rat_int(2)), rat_int(24));
    }

    #[test]
    fn zpoly_units() {
        assert!(ZPoly::z().inv_unit().is_none());
        assert_eq!(
            ZPoly::constant(rat(2, 3)).inv_unit(),
            Some(ZPoly::constant(rat(3, 2)))
        );
        assert!(<ZPoly as Ring>::zero().inv_unit().is_none());
    }

    #[test]
    fn rational_display_round_trip() {
        let r = rat(-7, 2);
        assert_eq!(rat_parse(&r.to_string()).unwrap(), r);
    }
}
