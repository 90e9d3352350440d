//! Contact `(+-1)`-surgery presentations.
//!
//! A monodromy word on a page with `r` boundary components splits as
//! `phi = phi' . psi` where `psi = prod t_{delta_i}^{m_i}` collects the
//! boundary-parallel twists. The boundary open book `psi` lives on a Seifert
//! fibered manifold, and every letter of `phi'` becomes a contact surgery on
//! a Legendrian realization of its curve: `-1` for a right-handed twist, `+1`
//! for a left-handed one.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Curve, TwistWord};
use super::OpenBook;

/// Symbol of the curve parallel to the `i`-th boundary component (1-based).
pub fn boundary_curve(i: usize) -> Curve {
    Curve(format!("delta{i}"))
}

/// Contact surgery coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `(+1)`: a left-handed twist.
    Plus,
    /// `(-1)`: a right-handed twist.
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Exponent of the Dehn twist the surgery realizes.
    pub fn twist_exponent(self) -> i64 {
        -self.value()
    }

    fn for_twist(exponent: i64) -> Sign {
        if exponent > 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            v => Err(serde::de::Error::custom(format!("surgery sign must be 1 or -1, found {v}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryPresentation {
    pub base: OpenBook,
    pub surgeries: Vec<(Curve, Sign)>,
}

impl SurgeryPresentation {
    /// Surgery twists in order, then the boundary twists of the base.
    pub fn recombine(&self) -> TwistWord {
        let mut w = TwistWord::default();
        for (c, s) in &self.surgeries {
            w.push(c.clone(), s.twist_exponent());
        }
        for (i, &m) in self.base.boundary_exponents.iter().enumerate() {
            w.push(boundary_curve(i + 1), m);
        }
        w
    }

    /// Whether the surgeries and base recombine to `word` modulo free
    /// reduction and disjoint transpositions, with boundary curves central.
    pub fn recombines_to(&self, word: &TwistWord) -> bool {
        with_central_boundary(word, self.base.boundary_count()).equivalent(&self.recombine())
    }
}

impl fmt::Display for SurgeryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base: {}", self.base)?;
        if self.surgeries.is_empty() {
            return writeln!(f, "surgeries: none");
        }
        writeln!(f, "surgeries:")?;
        for (c, s) in &self.surgeries {
            let coeff = match s {
                Sign::Plus => "+1",
                Sign::Minus => "-1",
            };
            writeln!(f, "  ({coeff}) on {c}")?;
        }
        Ok(())
    }
}

/// Copy of `word` with `delta_1..delta_r` declared disjoint from every curve
/// of the word and from each other.
pub fn with_central_boundary(word: &TwistWord, r: usize) -> TwistWord {
    let mut w = word.clone();
    let boundary: Vec<Curve> = (1..=r).map(boundary_curve).collect();
    let others: Vec<Curve> = word.curves().into_iter().cloned().collect();
    for d in &boundary {
        for c in others.iter().chain(&boundary) {
            w.declare_disjoint(d.clone(), c.clone());
        }
    }
    w
}

/// Splits `word` into a boundary open book and a list of contact surgeries.
///
/// Boundary twists commute with everything, so they are collected into
/// `psi` with `m_i` the total exponent of `delta_i`. A boundary component
/// with `m_i = 0` gets the canceling pair `t_{delta_i} t_{delta_i}^-1`: the
/// first factor joins `psi`, the second is emitted as a `(+1)` surgery. Every
/// other letter `t_c^m` becomes `|m|` surgeries on `c`.
pub fn surgery_presentation(genus: u32, r: usize, word: &TwistWord) -> SurgeryPresentation {
    let boundary: Vec<Curve> = (1..=r).map(boundary_curve).collect();
    let mut exponents = vec![0i64; r];
    let mut interior = TwistWord::default();
    for l in word.letters() {
        match boundary.iter().position(|d| *d == l.curve) {
            Some(i) => exponents[i] += l.exponent,
            None => interior.push(l.curve.clone(), l.exponent),
        }
    }

    let mut surgeries = Vec::new();
    for l in interior.letters() {
        let sign = Sign::for_twist(l.exponent);
        surgeries.extend(std::iter::repeat_n((l.curve.clone(), sign), l.exponent.unsigned_abs() as usize));
    }
    for (i, m) in exponents.iter_mut().enumerate() {
        if *m == 0 {
            *m = 1;
            surgeries.push((boundary[i].clone(), Sign::Plus));
        }
    }

    SurgeryPresentation {
        base: OpenBook { genus, boundary_exponents: exponents, extra_word: TwistWord::default() },
        surgeries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> TwistWord {
        TwistWord::parse(text).unwrap()
    }

    #[test]
    fn pure_boundary_word() {
        let word = w("delta1^3");
        let p = surgery_presentation(0, 1, &word);
        assert_eq!(p.base.boundary_exponents, vec![3]);
        assert!(p.surgeries.is_empty());
        assert!(p.recombines_to(&word));
    }

    #[test]
    fn repaired_boundary() {
        let word = w("a");
        let p = surgery_presentation(1, 1, &word);
        assert_eq!(p.base.genus, 1);
        assert_eq!(p.base.boundary_exponents, vec![1]);
        assert_eq!(p.surgeries, vec![(Curve::from("a"), Sign::Minus), (boundary_curve(1), Sign::Plus)]);
        assert_eq!(p.recombine().letters(), word.letters());
        assert!(p.recombines_to(&word));
    }

    #[test]
    fn negative_base_exponent() {
        let word = w("delta1^-2 b");
        let p = surgery_presentation(1, 1, &word);
        assert_eq!(p.base.boundary_exponents, vec![-2]);
        assert_eq!(p.surgeries, vec![(Curve::from("b"), Sign::Minus)]);
        assert!(p.recombines_to(&word));
    }

    #[test]
    fn interleaved_boundary_letters() {
        let word = w("a delta2 b^-2 delta1^-1 a delta2 delta1");
        let p = surgery_presentation(2, 2, &word);
        assert_eq!(p.base.boundary_exponents, vec![1, 2]);
        assert_eq!(p.surgeries.len(), 1 + 2 + 1 + 1);
        assert_eq!(p.surgeries[1], (Curve::from("b"), Sign::Plus));
        assert!(p.recombines_to(&word));
        assert!(!p.recombines_to(&w("b^-2 a^2 delta2^2")));
    }

    #[test]
    fn presentation_json() {
        let p = surgery_presentation(1, 1, &w("a^-1"));
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"base":{"genus":1,"boundary_exponents":[1],"extra_word":[]},"surgeries":[["a",1],["delta1",1]]}"#
        );
        assert_eq!(serde_json::from_str::<SurgeryPresentation>(&text).unwrap(), p);
        assert!(serde_json::from_str::<SurgeryPresentation>(
            r#"{"base":{"genus":1,"boundary_exponents":[1]},"surgeries":[["a",2]]}"#
        )
        .is_err());
    }
}
