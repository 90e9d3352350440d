//! Horizontal open books on Seifert fibered 3-manifolds.
//!
//! For eligible invariants `(g, n; -1/p_1, ..., -1/p_k)` the page is a genus
//! `g` surface with `k + |n|` boundary components and the monodromy is a
//! product of right-handed twists along boundary-parallel curves: exponent 1
//! on `|n|` components and `p_i` on the others. Conversely a page with
//! monodromy `prod t_{delta_i}^{m_i}` gives a Seifert fibered manifold, and
//! the open book is horizontal exactly when every `m_i > 0`.

mod surgery;
mod word;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, Rational};
use crate::homology::IntegerMatrix;
use crate::seifert::{Ineligibility, SeifertError, SeifertInvariants};

pub use surgery::{boundary_curve, surgery_presentation, Sign, SurgeryPresentation};
pub use word::{
    Curve, FreshCurves, LanternConfig, LanternDirection, Letter, Rewrite, TwistWord, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpenBookError {
    #[error("gluing map needs p >= 1, got {0}")]
    NonPositiveMultiplicity(i64),
    #[error("trivial bundle: no binding")]
    TrivialBundle,
    #[error(
        "coefficients[{index}] = {value}: p = {p} < 0 gives left-handed Dehn twists along boundary \
         and a binding oriented against the fibers, so the open book is not horizontal"
    )]
    NegativeSurgery { index: usize, value: Rational, p: BigInt },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("page needs at least one boundary component")]
    NoBoundary,
    #[error("boundary exponent {index} is {value}; horizontal construction needs exponents >= 1")]
    NonPositiveExponent { index: usize, value: i64 },
    #[error("boundary exponent {0} is zero")]
    ZeroExponent(usize),
    #[error("pairing needs a, b >= 1, got a = {a}, b = {b}")]
    NonPositivePairing { a: i64, b: i64 },
}

/// Page genus, boundary twist exponents `m_1..m_r` and an optional word of
/// twists along interior curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenBook {
    pub genus: u32,
    pub boundary_exponents: Vec<i64>,
    #[serde(default)]
    pub extra_word: TwistWord,
}

impl OpenBook {
    pub fn boundary_count(&self) -> usize {
        self.boundary_exponents.len()
    }

    /// `chi = 2 - 2g - r`.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.boundary_count() as i64
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    /// Full monodromy: the boundary twists followed by the extra word.
    pub fn monodromy(&self) -> TwistWord {
        let mut w = TwistWord::default();
        for (i, &m) in self.boundary_exponents.iter().enumerate() {
            w.push(boundary_curve(i + 1), m);
        }
        w.concat(&self.extra_word)
    }

    /// Sorted boundary exponents, for comparisons up to reordering.
    pub fn exponent_multiset(&self) -> Vec<i64> {
        let mut m = self.boundary_exponents.clone();
        m.sort_unstable();
        m
    }
}

impl fmt::Display for OpenBook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "page genus {}, {} boundary components, boundary exponents {:?}",
            self.genus,
            self.boundary_count(),
            self.boundary_exponents
        )?;
        if !self.extra_word.is_empty() {
            write!(f, ", extra word {}", self.extra_word)?;
        }
        Ok(())
    }
}

/// The surgery gluing map in `(m, l)` coordinates: columns are the images of
/// `mu = p m + l` and `lambda = (p^2 - 1) m + p l`.
pub fn gluing_matrix(p: i64) -> Result<IntegerMatrix, OpenBookError> {
    if p < 1 {
        return Err(OpenBookError::NonPositiveMultiplicity(p));
    }
    let p = BigInt::from(p);
    let entries = vec![p.clone(), &p * &p - 1, BigInt::from(1), p];
    Ok(IntegerMatrix::new(2, 2, entries).expect("2x2"))
}

/// Horizontal open book of eligible invariants with `k + |n| >= 1`.
/// Exponents are `|n|` ones followed by `p_1..p_k` in input order.
pub fn construct_horizontal_open_book(inv: &SeifertInvariants) -> Result<OpenBook, OpenBookError> {
    let report = inv.validate_eligible();
    if !report.eligible {
        // r = -1/p with p < 0 is the left-twist, non-horizontal route
        for reason in &report.reasons {
            if let Ineligibility::Coefficient { index, value } = reason {
                if *value.numer() == BigInt::from(1) {
                    let p = -value.denom().clone();
                    return Err(OpenBookError::NegativeSurgery { index: *index, value: value.clone(), p });
                }
            }
        }
        return Err(SeifertError::Ineligible(report.to_string()).into());
    }
    if inv.k() == 0 && inv.euler() == 0 {
        return Err(OpenBookError::TrivialBundle);
    }
    let mut exponents = vec![1; inv.euler().unsigned_abs() as usize];
    for &p in &report.multiplicities {
        exponents.push(i64::try_from(p).map_err(|_| {
            SeifertError::Ineligible(format!("multiplicity {p} out of range"))
        })?);
    }
    Ok(OpenBook { genus: inv.genus(), boundary_exponents: exponents, extra_word: TwistWord::default() })
}

/// Seifert invariants `(g, 0; -1/m_1, ..., -1/m_r)` of the boundary-twist open
/// book with positive exponents.
pub fn seifert_from_boundary_word(genus: u32, exponents: &[i64]) -> Result<SeifertInvariants, OpenBookError> {
    if exponents.is_empty() {
        return Err(OpenBookError::NoBoundary);
    }
    if let Some((index, &value)) = exponents.iter().enumerate().find(|(_, &m)| m <= 0) {
        return Err(OpenBookError::NonPositiveExponent { index, value });
    }
    let coefficients = exponents.iter().map(|&m| exact::rational(-1, m)).collect();
    Ok(SeifertInvariants::new(genus, 0, coefficients)?)
}

/// What the boundary-twist monodromy `prod t_{delta_i}^{m_i}` says about the
/// manifold and its compatible contact structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub seifert_fibered: bool,
    pub horizontal_realizable: bool,
    pub stein_fillable: bool,
    /// Some exponent is negative and the page is not a disk or an annulus:
    /// the monodromy is not right-veering.
    pub tight_incompatible: bool,
    /// Some exponent is negative on a planar page with one or two boundary
    /// components; tightness is left undetermined.
    pub exceptional_case: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "seifert_fibered       {}", mark(self.seifert_fibered))?;
        writeln!(f, "horizontal_realizable {}", mark(self.horizontal_realizable))?;
        writeln!(f, "stein_fillable        {}", mark(self.stein_fillable))?;
        writeln!(f, "tight_incompatible    {}", mark(self.tight_incompatible))?;
        writeln!(f, "exceptional_case      {}", mark(self.exceptional_case))
    }
}

pub fn classify_boundary_word(genus: u32, exponents: &[i64]) -> Result<Classification, OpenBookError> {
    if exponents.is_empty() {
        return Err(OpenBookError::NoBoundary);
    }
    if let Some(i) = exponents.iter().position(|&m| m == 0) {
        return Err(OpenBookError::ZeroExponent(i));
    }
    let all_positive = exponents.iter().all(|&m| m > 0);
    let small_planar = genus == 0 && matches!(exponents.len(), 1 | 2);
    let exceptional_case = !all_positive && small_planar;
    Ok(Classification {
        seifert_fibered: true,
        horizontal_realizable: all_positive,
        stein_fillable: all_positive,
        tight_incompatible: !all_positive && !exceptional_case,
        exceptional_case,
    })
}

/// `a r^2 + b`: the contact form `dz + r^2 dtheta` evaluated on the fiber
/// direction `a d_theta + b d_z` at radius `r`.
pub fn contact_fiber_pairing(a: i64, b: i64, radius: &Rational) -> Result<Rational, OpenBookError> {
    if a < 1 || b < 1 {
        return Err(OpenBookError::NonPositivePairing { a, b });
    }
    Ok(exact::integer(a) * radius * radius + exact::integer(b))
}

/// Adds a 1-handle to the page and a right-handed twist along a fresh curve
/// through it. The boundary count is unchanged.
pub fn positive_stabilization(ob: &OpenBook, fresh: &mut FreshCurves) -> OpenBook {
    let mut out = ob.clone();
    let curve = fresh.fresh(&ob.monodromy());
    out.genus += 1;
    out.extra_word.push(curve, 1);
    out
}
