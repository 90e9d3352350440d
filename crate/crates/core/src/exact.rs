//! Exact number helpers shared by every module.
//!
//! Rationals are `num_rational::BigRational`, which keeps values in lowest
//! terms with a positive denominator. Integers that can grow (determinants,
//! matrix entries) are `BigInt` and are written to JSON as plain numbers of
//! arbitrary length.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `[num, den]` pair of a reduced rational.
pub fn to_pair(r: &Rational) -> [BigInt; 2] {
    [r.numer().clone(), r.denom().clone()]
}

/// Serializes a `BigInt` as a JSON number with no precision loss.
pub fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let num = serde_json::Number::from_str(&n.to_string()).map_err(serde::ser::Error::custom)?;
    num.serialize(s)
}

pub fn deserialize_bigint<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let num = serde_json::Number::deserialize(d)?;
    BigInt::from_str(&num.to_string())
        .map_err(|_| D::Error::custom(format!("expected an integer, found {num}")))
}

/// Serde adapter for a single `BigInt` field.
pub mod bigint {
    pub use super::deserialize_bigint as deserialize;
    pub use super::serialize_bigint as serialize;
}

/// Serde adapter for `Vec<BigInt>`.
pub mod bigint_vec {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(serde::Serialize)]
    struct Wrap<'a>(#[serde(serialize_with = "super::serialize_bigint")] &'a BigInt);

    #[derive(serde::Deserialize)]
    struct Own(#[serde(deserialize_with = "super::deserialize_bigint")] BigInt);

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&Wrap(n))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<Own>::deserialize(d)?.into_iter().map(|o| o.0).collect())
    }
}

/// Serde adapter for `Vec<Vec<BigInt>>` (matrix rows, rational pairs).
pub mod bigint_vec_vec {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(serde::Serialize)]
    struct Row<'a>(#[serde(with = "super::bigint_vec")] &'a [BigInt]);

    #[derive(serde::Deserialize)]
    struct OwnRow(#[serde(with = "super::bigint_vec")] Vec<BigInt>);

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for row in v {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Ok(Vec::<OwnRow>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

/// Serde adapter for a rational written as `[num, den]`. Deserialization
/// rejects non-positive denominators and unreduced fractions.
pub mod rational_pair {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        bigint_vec::serialize(&to_pair(r), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = bigint_vec::deserialize(d)?;
        parse_pair(&v).map_err(D::Error::custom)
    }
}

/// Validates a `[num, den]` pair: exactly two entries, positive denominator,
/// coprime numerator and denominator.
pub fn parse_pair(v: &[BigInt]) -> Result<Rational, String> {
    use num_integer::Integer;
    use num_traits::{One, Signed};

    let [num, den] = v else {
        return Err(format!("expected [numerator, denominator], found {} entries", v.len()));
    };
    if !den.is_positive() {
        return Err(format!("denominator must be positive, found {den}"));
    }
    if !num.gcd(den).is_one() {
        return Err(format!("fraction {num}/{den} is not in lowest terms"));
    }
    Ok(BigRational::new_raw(num.clone(), den.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_validation() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(parse_pair(&[b(-1), b(3)]).unwrap(), rational(-1, 3));
        assert!(parse_pair(&[b(1), b(-3)]).is_err());
        assert!(parse_pair(&[b(2), b(4)]).is_err());
        assert!(parse_pair(&[b(2)]).is_err());
        assert_eq!(parse_pair(&[b(0), b(1)]).unwrap(), integer(0));
    }

    #[test]
    fn bigint_json_is_a_plain_number() {
        #[derive(Serialize, Deserialize, PartialEq, Debug)]
        struct W(#[serde(with = "bigint")] BigInt);
        let huge: BigInt = num_traits::pow(BigInt::from(10), 40) + 7;
        let text = serde_json::to_string(&W(huge.clone())).unwrap();
        assert_eq!(text, "10000000000000000000000000000000000000007");
        assert_eq!(serde_json::from_str::<W>(&text).unwrap(), W(huge));
    }
}
