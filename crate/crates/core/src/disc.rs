//! Factored discriminants: a sign and a sorted list of (prime, exponent)
//! pairs. This is the canonical interchange form; raw integers are
//! best-effort via trial division only.

use crate::arith::{factor_small, is_prime, DEFAULT_FACTOR_BOUND};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// sign * prod p^e, never 0 and never +-1. Primes strictly increasing and
/// certified prime at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredDiscriminant {
    sign: i8,
    factors: Vec<(BigUint, u32)>,
}

impl FactoredDiscriminant {
    pub fn new(sign: i8, factors: Vec<(BigUint, u32)>) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidDiscriminant(format!(
                "sign must be 1 or -1, got {sign}"
            )));
        }
        if factors.is_empty() {
            return Err(Error::InvalidDiscriminant(
                "empty factor list: discriminant +-1 is not admissible".into(),
            ));
        }
        let mut prev: Option<&BigUint> = None;
        for (p, e) in &factors {
            if *e == 0 {
                return Err(Error::InvalidDiscriminant(format!(
                    "exponent of {p} must be positive"
                )));
            }
            if let Some(q) = prev {
                if q >= p {
                    return Err(Error::InvalidDiscriminant(
                        "primes must be strictly increasing".into(),
                    ));
                }
            }
            if !is_prime(p) {
                return Err(Error::InvalidDiscriminant(format!("{p} is not prime")));
            }
            prev = Some(p);
        }
        Ok(Self { sign, factors })
    }

    /// Factor a raw integer by trial division (default bound 10^12).
    pub fn from_integer(n: &BigInt) -> Result<Self> {
        Self::from_integer_bounded(n, &BigUint::from(DEFAULT_FACTOR_BOUND))
    }

    pub fn from_integer_bounded(n: &BigInt, bound: &BigUint) -> Result<Self> {
        let (sign, factors) = factor_small(n, bound)?;
        if factors.is_empty() {
            return Err(Error::InvalidDiscriminant(
                "discriminant +-1 is not admissible".into(),
            ));
        }
        // factor_small certifies primality by construction
        Ok(Self { sign, factors })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// The integer sign * prod p^e.
    pub fn value(&self) -> BigInt {
        let mag = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        let v = BigInt::from(mag);
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Squarefree integer with the same sign and prime support.
    pub fn radical(&self) -> BigInt {
        let mag = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, _)| acc * p);
        let v = BigInt::from(mag);
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Exponent of p in the factorization (0 if p is not a factor).
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

impl std::fmt::Display for FactoredDiscriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

const MAX_SAFE_JSON_INT: u64 = (1u64 << 53) - 1;

fn biguint_to_json(n: &BigUint) -> serde_json::Value {
    match n.to_u64() {
        Some(v) if v <= MAX_SAFE_JSON_INT => serde_json::Value::from(v),
        _ => serde_json::Value::from(n.to_string()),
    }
}

fn biguint_from_json(v: &serde_json::Value) -> Option<BigUint> {
    match v {
        serde_json::Value::Number(n) => n.as_u64().map(BigUint::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for FactoredDiscriminant {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let factors: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|(p, e)| {
                serde_json::Value::Array(vec![
                    biguint_to_json(p),
                    serde_json::Value::from(*e as u64),
                ])
            })
            .collect();
        let mut map = serde_json::Map::new();
        map.insert("sign".into(), serde_json::Value::from(self.sign as i64));
        map.insert("factors".into(), serde_json::Value::Array(factors));
        serde_json::Value::Object(map).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FactoredDiscriminant {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        let obj = v
            .as_object()
            .ok_or_else(|| D::Error::custom("discriminant must be a JSON object"))?;
        let sign = obj
            .get("sign")
            .and_then(|s| s.as_i64())
            .ok_or_else(|| D::Error::custom("missing or invalid \"sign\""))?;
        let sign = i8::try_from(sign).map_err(|_| D::Error::custom("sign out of range"))?;
        let raw = obj
            .get("factors")
            .and_then(|f| f.as_array())
            .ok_or_else(|| D::Error::custom("missing or invalid \"factors\""))?;
        let mut factors = Vec::with_capacity(raw.len());
        for pair in raw {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| D::Error::custom("factor entries must be [prime, exponent]"))?;
            let p = biguint_from_json(&pair[0])
                .ok_or_else(|| D::Error::custom("invalid prime in factors"))?;
            let e = biguint_from_json(&pair[1])
                .and_then(|e| e.to_u32())
                .ok_or_else(|| D::Error::custom("invalid exponent in factors"))?;
            factors.push((p, e));
        }
        FactoredDiscriminant::new(sign, factors).map_err(|e| D::Error::custom(e.to_string()))
    }
}
