//! Seifert invariants `(g, n; r_1, ..., r_k)`.
//!
//! The manifold is obtained from the circle bundle of Euler number `n` over a
//! closed genus `g` surface by `-1/r_i` surgeries on `k` distinct fibers. The
//! eligible class handled by the constructions in this crate is `n <= 0` and
//! `r_i = -1/p_i` with `p_i` a positive integer.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("coefficients[{0}]: Seifert coefficient must be nonzero")]
    ZeroCoefficient(usize),
    #[error("not in eligible class: {0}")]
    Ineligible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertInvariants {
    genus: u32,
    euler: i64,
    coefficients: Vec<Rational>,
}

impl SeifertInvariants {
    pub fn new(genus: u32, euler: i64, coefficients: Vec<Rational>) -> Result<Self, SeifertError> {
        if let Some(i) = coefficients.iter().position(Zero::is_zero) {
            return Err(SeifertError::ZeroCoefficient(i));
        }
        Ok(SeifertInvariants { genus, euler, coefficients })
    }

    /// Invariants `(g, n; -1/p_1, ..., -1/p_k)`. Each `p_i` must be nonzero.
    pub fn from_multiplicities(genus: u32, euler: i64, ps: &[i64]) -> Result<Self, SeifertError> {
        if let Some(i) = ps.iter().position(|&p| p == 0) {
            return Err(SeifertError::ZeroCoefficient(i));
        }
        let coefficients = ps.iter().map(|&p| exact::rational(-1, p)).collect();
        Self::new(genus, euler, coefficients)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Number of exceptional surgery coefficients `k`.
    pub fn k(&self) -> usize {
        self.coefficients.len()
    }

    pub fn validate_eligible(&self) -> EligibilityReport {
        let mut reasons = Vec::new();
        if self.euler > 0 {
            reasons.push(Ineligibility::PositiveEuler(self.euler));
        }
        let mut multiplicities = Vec::with_capacity(self.k());
        for (index, r) in self.coefficients.iter().enumerate() {
            match unit_fraction_multiplicity(r) {
                Some(p) => multiplicities.push(p),
                None => reasons.push(Ineligibility::Coefficient { index, value: r.clone() }),
            }
        }
        let eligible = reasons.is_empty();
        EligibilityReport {
            eligible,
            multiplicities: if eligible { multiplicities } else { Vec::new() },
            reasons,
        }
    }

    /// Multiplicities `p_i` of an eligible tuple.
    pub fn multiplicities(&self) -> Result<Vec<u64>, SeifertError> {
        let report = self.validate_eligible();
        if report.eligible {
            Ok(report.multiplicities)
        } else {
            Err(SeifertError::Ineligible(report.to_string()))
        }
    }

    /// Absorbs every `p_i = 1` coefficient into the Euler number. Each removal
    /// is the blow-down of a `+1` leaf and lowers `n` by one.
    pub fn canonicalize(&self) -> Result<SeifertInvariants, SeifertError> {
        let ps = self.multiplicities()?;
        let absorbed = ps.iter().filter(|&&p| p == 1).count() as i64;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&ps)
            .filter(|(_, &p)| p != 1)
            .map(|(r, _)| r.clone())
            .collect();
        Ok(SeifertInvariants { genus: self.genus, euler: self.euler - absorbed, coefficients })
    }

    /// `e = n + sum r_i`.
    pub fn rational_euler(&self) -> Rational {
        self.coefficients.iter().fold(exact::integer(self.euler), |acc, r| acc + r)
    }
}

/// `p` with `r = -1/p`, `p >= 1`, if `r` has that form.
fn unit_fraction_multiplicity(r: &Rational) -> Option<u64> {
    if *r.numer() == -BigInt::one() && r.denom().is_positive() {
        r.denom().to_u64()
    } else {
        None
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {};", self.genus, self.euler)?;
        for (i, r) in self.coefficients.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{r}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ineligibility {
    PositiveEuler(i64),
    Coefficient { index: usize, value: Rational },
}

impl fmt::Display for Ineligibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ineligibility::PositiveEuler(n) => write!(f, "n > 0 (n = {n})"),
            Ineligibility::Coefficient { index, value } => {
                write!(f, "coefficients[{index}] = {value} is not -1/p with p a positive integer")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EligibilityReport {
    pub eligible: bool,
    /// The `p_i`, filled in only when eligible.
    pub multiplicities: Vec<u64>,
    pub reasons: Vec<Ineligibility>,
}

impl EligibilityReport {
    /// Indices of the coefficients that break eligibility.
    pub fn offending_indices(&self) -> Vec<usize> {
        self.reasons
            .iter()
            .filter_map(|r| match r {
                Ineligibility::Coefficient { index, .. } => Some(*index),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for EligibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eligible {
            return write!(f, "eligible, p = {:?}", self.multiplicities);
        }
        for (i, r) in self.reasons.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeifertDoc {
    genus: u32,
    euler: i64,
    #[serde(with = "crate::exact::bigint_vec_vec")]
    coefficients: Vec<Vec<BigInt>>,
}

impl Serialize for SeifertInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeifertDoc {
            genus: self.genus,
            euler: self.euler,
            coefficients: self.coefficients.iter().map(|r| exact::to_pair(r).to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertInvariants {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = SeifertDoc::deserialize(d)?;
        let mut coefficients = Vec::with_capacity(doc.coefficients.len());
        for (i, pair) in doc.coefficients.iter().enumerate() {
            let r = exact::parse_pair(pair)
                .map_err(|e| D::Error::custom(format!("coefficients[{i}]: {e}")))?;
            coefficients.push(r);
        }
        SeifertInvariants::new(doc.genus, doc.euler, coefficients).map_err(D::Error::custom)
    }
}
