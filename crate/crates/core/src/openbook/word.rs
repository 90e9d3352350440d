//! Formal Dehn twist words.
//!
//! A word is a product of powers `t_c^m` over symbolic curves. Words are
//! compared modulo an explicit rewrite system: free reduction, transposition
//! of letters whose curves are declared disjoint, and declared lantern
//! configurations. There is no mapping class group word problem here.
//!
//! Equality modulo free reduction and disjoint transpositions is the word
//! problem of a right-angled Artin group and is decided exactly: both words
//! are reduced by cancelling `t_c^e ... t_c^-e` pairs whose interior commutes
//! with `t_c`, and the reduced words are compared through their projections
//! onto every pair of non-commuting curves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0}: exponent must be nonzero")]
    ZeroExponent(usize),
    #[error("lantern configuration {0} is not declared on this word")]
    UndeclaredLantern(Box<LanternConfig>),
    #[error("lantern configuration must use 7 distinct curves: {0}")]
    DegenerateLantern(Box<LanternConfig>),
    #[error("pattern {pattern} not present at position {position}")]
    PatternNotPresent { pattern: String, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Curve(pub String);

impl Curve {
    pub fn new(name: impl Into<String>) -> Self {
        Curve(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for Curve {
    fn from(s: String) -> Self {
        Curve(s)
    }
}

impl From<&str> for Curve {
    fn from(s: &str) -> Self {
        Curve(s.to_string())
    }
}

/// `t_curve^exponent`, exponent nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub curve: Curve,
    pub exponent: i64,
}

impl Letter {
    pub fn new(curve: impl Into<Curve>, exponent: i64) -> Self {
        Letter { curve: curve.into(), exponent }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.curve, self.exponent).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (curve, exponent) = <(Curve, i64)>::deserialize(d)?;
        if exponent == 0 {
            return Err(serde::de::Error::custom(format!("curve {curve}: exponent must be nonzero")));
        }
        Ok(Letter { curve, exponent })
    }
}

/// Four boundary curves `a, b, c, d` of a 4-holed sphere and three interior
/// curves `x, y, z` with `t_a t_b t_c t_d = t_x t_y t_z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LanternConfig {
    pub boundary: [Curve; 4],
    pub interior: [Curve; 3],
}

impl LanternConfig {
    pub fn new(boundary: [&str; 4], interior: [&str; 3]) -> Self {
        LanternConfig { boundary: boundary.map(Curve::from), interior: interior.map(Curve::from) }
    }

    fn distinct(&self) -> bool {
        let all: BTreeSet<&Curve> = self.boundary.iter().chain(&self.interior).collect();
        all.len() == 7
    }
}

impl fmt::Display for LanternConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.boundary;
        let [x, y, z] = &self.interior;
        write!(f, "({a},{b},{c},{d} | {x},{y},{z})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LanternDirection {
    /// `t_a t_b t_c t_d -> t_x t_y t_z`
    Forward,
    /// `t_x t_y t_z -> t_a t_b t_c t_d`
    Inverse,
}

/// One applied rewrite, kept in the word's provenance log.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rewrite {
    pub config: LanternConfig,
    pub direction: LanternDirection,
    pub position: usize,
}

/// A unit twist `t_c^{+-1}`.
type Unit<'a> = (&'a Curve, i8);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwistWord {
    letters: Vec<Letter>,
    disjoint: BTreeSet<(Curve, Curve)>,
    lanterns: Vec<LanternConfig>,
    provenance: Vec<Rewrite>,
}

impl TwistWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(i) = letters.iter().position(|l| l.exponent == 0) {
            return Err(WordError::ZeroExponent(i));
        }
        let mut w = TwistWord::default();
        for l in letters {
            w.push_letter(l);
        }
        Ok(w)
    }

    /// Shorthand for tests and fixtures: `"a b^-1 c^3"`.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let letters = text
            .split_whitespace()
            .map(|tok| match tok.split_once('^') {
                Some((c, e)) => Letter::new(c, e.parse().expect("integer exponent")),
                None => Letter::new(tok, 1),
            })
            .collect();
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn provenance(&self) -> &[Rewrite] {
        &self.provenance
    }

    pub fn lanterns(&self) -> &[LanternConfig] {
        &self.lanterns
    }

    pub fn disjoint_pairs(&self) -> impl Iterator<Item = (&Curve, &Curve)> {
        self.disjoint.iter().map(|(a, b)| (a, b))
    }

    /// Appends `t_curve^exponent`, merging with the last letter when the
    /// curves agree.
    pub fn push(&mut self, curve: impl Into<Curve>, exponent: i64) {
        if exponent != 0 {
            self.push_letter(Letter::new(curve, exponent));
        }
    }

    fn push_letter(&mut self, l: Letter) {
        match self.letters.last_mut() {
            Some(last) if last.curve == l.curve => {
                last.exponent += l.exponent;
                if last.exponent == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(l),
        }
    }

    pub fn declare_disjoint(&mut self, a: impl Into<Curve>, b: impl Into<Curve>) {
        let (a, b) = (a.into(), b.into());
        if a != b {
            self.disjoint.insert(if a < b { (a, b) } else { (b, a) });
        }
    }

    pub fn declare_lantern(&mut self, config: LanternConfig) -> Result<(), WordError> {
        if !config.distinct() {
            return Err(WordError::DegenerateLantern(Box::new(config)));
        }
        if !self.lanterns.contains(&config) {
            self.lanterns.push(config);
        }
        Ok(())
    }

    /// Copies the disjointness and lantern declarations of `other`.
    pub fn inherit_declarations(&mut self, other: &TwistWord) {
        self.disjoint.extend(other.disjoint.iter().cloned());
        for c in &other.lanterns {
            if !self.lanterns.contains(c) {
                self.lanterns.push(c.clone());
            }
        }
    }

    pub fn are_disjoint(&self, a: &Curve, b: &Curve) -> bool {
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.disjoint.contains(&key)
    }

    fn commute(&self, a: &Curve, b: &Curve) -> bool {
        a == b || self.are_disjoint(a, b)
    }

    /// Distinct curves in order of first appearance.
    pub fn curves(&self) -> Vec<&Curve> {
        let mut seen = BTreeSet::new();
        self.letters.iter().map(|l| &l.curve).filter(|c| seen.insert(*c)).collect()
    }

    /// Total exponent of every curve; curves summing to zero are omitted.
    pub fn exponent_vector(&self) -> BTreeMap<Curve, i64> {
        let mut out = BTreeMap::new();
        for l in &self.letters {
            *out.entry(l.curve.clone()).or_insert(0) += l.exponent;
        }
        out.retain(|_, e| *e != 0);
        out
    }

    /// Number of unit twists.
    pub fn unit_len(&self) -> usize {
        self.letters.iter().map(|l| l.exponent.unsigned_abs() as usize).sum()
    }

    fn units(&self) -> Vec<Unit<'_>> {
        self.letters
            .iter()
            .flat_map(|l| {
                let s = if l.exponent > 0 { 1 } else { -1 };
                std::iter::repeat_n((&l.curve, s), l.exponent.unsigned_abs() as usize)
            })
            .collect()
    }

    fn with_units(&self, units: &[(Curve, i8)]) -> TwistWord {
        let mut w = TwistWord {
            letters: Vec::new(),
            disjoint: self.disjoint.clone(),
            lanterns: self.lanterns.clone(),
            provenance: self.provenance.clone(),
        };
        for (c, s) in units {
            w.push_letter(Letter::new(c.clone(), i64::from(*s)));
        }
        w
    }

    /// Cancels `t_c^e ... t_c^-e` pairs whose interior commutes with `t_c`
    /// until none remain.
    fn reduce<'a>(&self, mut units: Vec<Unit<'a>>) -> Vec<Unit<'a>> {
        'outer: loop {
            for i in 0..units.len() {
                let (c, s) = units[i];
                for j in i + 1..units.len() {
                    let (d, t) = units[j];
                    if d == c {
                        if t == -s {
                            units.remove(j);
                            units.remove(i);
                            continue 'outer;
                        }
                        break;
                    }
                    if !self.commute(c, d) {
                        break;
                    }
                }
            }
            return units;
        }
    }

    /// Equality modulo free reduction and transposition of letters on curves
    /// declared disjoint in `self`.
    pub fn equivalent(&self, other: &TwistWord) -> bool {
        let u = self.reduce(self.units());
        let v = self.reduce(other.units());
        if u.len() != v.len() {
            return false;
        }
        let mut curves: BTreeSet<&Curve> = u.iter().map(|(c, _)| *c).collect();
        let other_curves: BTreeSet<&Curve> = v.iter().map(|(c, _)| *c).collect();
        if curves != other_curves {
            return false;
        }
        let curves: Vec<&Curve> = std::mem::take(&mut curves).into_iter().collect();
        // projection onto each dependent pair (including a curve with itself)
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i..] {
                if a != b && self.are_disjoint(a, b) {
                    continue;
                }
                let proj = |w: &[Unit<'_>]| -> Vec<(Curve, i8)> {
                    w.iter()
                        .filter(|(c, _)| c == a || c == b)
                        .map(|(c, s)| ((*c).clone(), *s))
                        .collect()
                };
                if proj(&u) != proj(&v) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks whether the units in `window` can be brought to the order
    /// `target` by transposing adjacent letters on disjoint curves. All curves
    /// are distinct, so this holds iff the window is a permutation of the
    /// target that keeps every non-commuting pair in target order.
    fn reorderable(&self, window: &[Unit<'_>], target: &[Curve]) -> bool {
        if window.len() != target.len() || window.iter().any(|(_, s)| *s != 1) {
            return false;
        }
        let pos: Option<Vec<usize>> =
            target.iter().map(|t| window.iter().position(|(c, _)| *c == t)).collect();
        let Some(pos) = pos else { return false };
        let distinct: BTreeSet<usize> = pos.iter().copied().collect();
        if distinct.len() != target.len() {
            return false;
        }
        for i in 0..target.len() {
            for j in i + 1..target.len() {
                if pos[i] > pos[j] && !self.commute(&target[i], &target[j]) {
                    return false;
                }
            }
        }
        true
    }

    fn replace_block(
        &self,
        config: &LanternConfig,
        position: usize,
        direction: LanternDirection,
    ) -> Result<TwistWord, WordError> {
        if !self.lanterns.contains(config) {
            return Err(WordError::UndeclaredLantern(Box::new(config.clone())));
        }
        let (from, to): (&[Curve], &[Curve]) = match direction {
            LanternDirection::Forward => (&config.boundary, &config.interior),
            LanternDirection::Inverse => (&config.interior, &config.boundary),
        };
        let units = self.units();
        let end = position + from.len();
        let present = end <= units.len()
            && match direction {
                LanternDirection::Forward => self.reorderable(&units[position..end], from),
                // the interior curves of a lantern pairwise intersect
                LanternDirection::Inverse => {
                    units[position..end].iter().zip(from).all(|((c, s), f)| *c == f && *s == 1)
                }
            };
        if !present {
            let pattern = from.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" ");
            return Err(WordError::PatternNotPresent { pattern, position });
        }
        let mut out: Vec<(Curve, i8)> = Vec::with_capacity(units.len() + 1);
        out.extend(units[..position].iter().map(|(c, s)| ((*c).clone(), *s)));
        out.extend(to.iter().map(|c| (c.clone(), 1)));
        out.extend(units[end..].iter().map(|(c, s)| ((*c).clone(), *s)));
        let mut w = self.with_units(&out);
        w.provenance.push(Rewrite { config: config.clone(), direction, position });
        Ok(w)
    }

    /// Rewrites `t_a t_b t_c t_d` (each exponent +1, in any order reachable by
    /// declared transpositions) starting at unit position `position` into
    /// `t_x t_y t_z`. Positions count unit twists, so `t_a^2` occupies two.
    pub fn lantern_rewrite(&self, config: &LanternConfig, position: usize) -> Result<TwistWord, WordError> {
        self.replace_block(config, position, LanternDirection::Forward)
    }

    /// Rewrites `t_x t_y t_z` at unit position `position` back into
    /// `t_a t_b t_c t_d`.
    pub fn lantern_unrewrite(&self, config: &LanternConfig, position: usize) -> Result<TwistWord, WordError> {
        self.replace_block(config, position, LanternDirection::Inverse)
    }

    /// The word followed by `other`, keeping the declarations of both.
    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut w = self.clone();
        for l in &other.letters {
            w.push_letter(l.clone());
        }
        w.inherit_declarations(other);
        w
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l.exponent {
                1 => write!(f, "t_{}", l.curve)?,
                e => write!(f, "t_{}^{}", l.curve, e)?,
            }
        }
        Ok(())
    }
}

/// Only the letters are serialized: `[[curve, exponent], ...]`.
impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let letters = Vec::<Letter>::deserialize(d)?;
        TwistWord::new(letters).map_err(serde::de::Error::custom)
    }
}

/// Caller-owned generator of fresh curve symbols `s1, s2, ...`.
#[derive(Debug, Clone)]
pub struct FreshCurves {
    prefix: String,
    next: u64,
}

impl Default for FreshCurves {
    fn default() -> Self {
        FreshCurves::new("s")
    }
}

impl FreshCurves {
    pub fn new(prefix: impl Into<String>) -> Self {
        FreshCurves { prefix: prefix.into(), next: 1 }
    }

    /// Next symbol not already used by `word`.
    pub fn fresh(&mut self, word: &TwistWord) -> Curve {
        loop {
            let c = Curve(format!("{}{}", self.prefix, self.next));
            self.next += 1;
            if !word.letters.iter().any(|l| l.curve == c) {
                return c;
            }
        }
    }
}
