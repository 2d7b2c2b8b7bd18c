//! Truncated formal power series in the edge weight `g`, exact in the coefficient ring.
//!
//! A series of order `N` keeps coefficients of `g^0..g^N`; products discard the tail.
//! All operations are exact; there is no floating point anywhere in this module.

use std::fmt;

use serde_json::json;

use crate::ring::{Rational, Ring, ZPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<R: Ring> {
    order: usize,
    coeffs: Vec<R>, // length order + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// Division by a series whose constant term is not a unit of the ring.
    NonUnitDivisor(String),
    /// Logarithm of a series whose constant term is not 1.
    LogConstantNotOne(String),
    Parse(String),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonUnitDivisor(c) => {
                write!(f, "division requires an invertible constant term, got {c}")
            }
            SeriesError::LogConstantNotOne(c) => {
                write!(f, "log requires constant term 1, got {c}")
            }
            SeriesError::Parse(m) => write!(f, "bad series encoding: {m}"),
        }
    }
}

impl std::error::Error for SeriesError {}

impl<R: Ring> Series<R> {
    pub fn zero(order: usize) -> Self {
        Series {
            order,
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c * g^k` (zero series if `k` exceeds the order).
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `g`.
    pub fn g(order: usize) -> Self {
        Series::monomial(R::one(), 1, order)
    }

    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty());
        Series {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs: Vec<R> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, R::zero());
        Series { order, coeffs }
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(
            self.order, rhs.order,
            "series operands must share the truncation order"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        Series {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        Series {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        let n = self.order;
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Series {
            order: n,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplication by `g^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order;
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i + k <= n {
                out[i + k] = a.clone();
            }
        }
        Series {
            order: n,
            coeffs: out,
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Series::one(self.order);
        let mut base = self.clone();
        let mut e = e;
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

    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs);
        let inv0 = rhs.coeffs[0]
            .inv_unit()
            .ok_or_else(|| SeriesError::NonUnitDivisor(rhs.coeffs[0].to_string()))?;
        let n = self.order;
        let mut out = vec![R::zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !rhs.coeffs[j].is_zero() {
                    acc = acc.sub(&rhs.coeffs[j].mul(&out[k - j]));
                }
            }
            out[k] = acc.mul(&inv0);
        }
        Ok(Series {
            order: n,
            coeffs: out,
        })
    }

    /// log of a series with constant term 1, via log' = a'/a integrated termwise.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != R::one() {
            return Err(SeriesError::LogConstantNotOne(self.coeffs[0].to_string()));
        }
        let n = self.order;
        let mut da = vec![R::zero(); n + 1];
        for k in 1..=n {
            da[k - 1] = self.coeffs[k].mul(&R::from_int(k as i64));
        }
        let q = Series {
            order: n,
            coeffs: da,
        }
        .div(self)?;
        let mut out = vec![R::zero(); n + 1];
        for k in 1..=n {
            out[k] = q.coeffs[k - 1].div_int(k as i64);
        }
        Ok(Series {
            order: n,
            coeffs: out,
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "order": self.order,
            "ring": R::ring_label(),
            "coeffs": self.coeffs.iter().map(|c| c.coeff_to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let order = v
            .get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| SeriesError::Parse("missing order".into()))? as usize;
        let ring = v
            .get("ring")
            .and_then(|r| r.as_str())
            .ok_or_else(|| SeriesError::Parse("missing ring".into()))?;
        if ring != R::ring_label() {
            return Err(SeriesError::Parse(format!(
                "ring mismatch: expected {}, got {ring}",
                R::ring_label()
            )));
        }
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| SeriesError::Parse("missing coeffs".into()))?;
        if coeffs.len() != order + 1 {
            return Err(SeriesError::Parse(format!(
                "expected {} coefficients, got {}",
                order + 1,
                coeffs.len()
            )));
        }
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            out.push(R::coeff_from_json(c).map_err(SeriesError::Parse)?);
        }
        Ok(Series {
            order,
            coeffs: out,
        })
    }
}

impl Series<ZPoly> {
    /// Substitutes a rational value for z, collapsing to a rational series.
    pub fn eval_z(&self, at: &Rational) -> Series<Rational> {
        self.map(|p| p.eval(at))
    }

    /// Extracts the coefficient of z^k from every g-coefficient.
    pub fn z_coeff(&self, k: usize) -> Series<Rational> {
        self.map(|p| p.coeff(k))
    }
}

impl<R: Ring> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*g")?,
                _ => write!(f, "({c})*g^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
