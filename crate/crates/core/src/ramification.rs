//! Ramification data of a purported tame cyclic discriminant: the index
//! e_p = m/(m - v_p), the per-divisor prime sets, and the derived w_d, f_d.

use crate::arith::{divisors, valuation};
use crate::disc::FactoredDiscriminant;
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Validation mode. Strict gates on the necessary conditions for an actual
/// tame cyclic field (tameness, p = 1 mod e_p, sign of the discriminant);
/// permissive only enforces integrality of e_p and f_d so the coefficient
/// formulas can be explored on inputs that are not field discriminants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    Permissive,
}

/// Exact ramification index m/(m - vp). The caller decides integrality;
/// vp = m is rejected (the index is undefined there).
pub fn ramification_index(m: u64, vp: u64) -> Result<Ratio<i64>> {
    if vp == m {
        return Err(Error::InvalidArgument(format!(
            "ramification index undefined: v_p = m = {m}"
        )));
    }
    Ok(Ratio::new(m as i64, m as i64 - vp as i64))
}

/// Per-divisor ramification data for a validated (m, disc) pair.
#[derive(Debug, Clone)]
pub struct RamificationProfile {
    m: u64,
    disc: FactoredDiscriminant,
    mode: Mode,
    /// p -> e_p, ascending primes.
    assignment: BTreeMap<BigUint, u64>,
    /// d -> (primes of P_d, w_d, f_d) for every divisor d > 1 of m.
    per_divisor: BTreeMap<u64, (Vec<BigUint>, BigUint, BigUint)>,
}

impl RamificationProfile {
    /// Derive and validate the profile of (m, disc).
    pub fn validate(m: u64, disc: &FactoredDiscriminant, mode: Mode) -> Result<Self> {
        if m < 2 {
            return Err(Error::DegreeTooSmall { m });
        }
        if mode == Mode::Strict && disc.sign() < 0 {
            if m % 2 == 1 {
                return Err(Error::SignInconsistentOdd { m });
            }
            if m % 4 == 0 {
                return Err(Error::SignInconsistentMod4 { m });
            }
        }
        let value = disc.value();
        let mut assignment = BTreeMap::new();
        for p in disc.primes() {
            let vp = valuation(p, &value)?;
            let divides_m = p.to_u64().map(|p| m % p == 0).unwrap_or(false);
            if vp == m {
                return Err(Error::RamificationIndexUndefined { prime: p.clone() });
            }
            if vp > m {
                return Err(Error::RamificationIndexNegative {
                    prime: p.clone(),
                    valuation: vp,
                    m,
                });
            }
            let den = m - vp;
            if m % den != 0 {
                // non-integral index; at p | m this is wild ramification
                return Err(if divides_m {
                    Error::WildRamification { prime: p.clone() }
                } else {
                    Error::NonIntegralRamificationIndex {
                        prime: p.clone(),
                        m,
                        denominator: den,
                    }
                });
            }
            let e = m / den;
            if divides_m && mode == Mode::Strict {
                return Err(Error::WildRamification { prime: p.clone() });
            }
            if mode == Mode::Strict && (p % e) != BigUint::one() {
                return Err(Error::PrimeIncongruent {
                    prime: p.clone(),
                    e,
                });
            }
            assignment.insert(p.clone(), e);
        }
        let mut per_divisor = BTreeMap::new();
        for d in divisors(m).into_iter().skip(1) {
            let primes: Vec<BigUint> = assignment
                .iter()
                .filter(|(_, e)| **e == d)
                .map(|(p, _)| p.clone())
                .collect();
            let w = primes.iter().fold(BigUint::one(), |acc, p| acc * p);
            let (f, rem) = (&w - BigUint::one()).div_rem(&BigUint::from(d));
            if !rem.is_zero() {
                return Err(Error::NonIntegralF { divisor: d, w });
            }
            per_divisor.insert(d, (primes, w, f));
        }
        Ok(Self {
            m,
            disc: disc.clone(),
            mode,
            assignment,
            per_divisor,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn disc(&self) -> &FactoredDiscriminant {
        &self.disc
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn ramification_of(&self, p: &BigUint) -> Option<u64> {
        self.assignment.get(p).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<BigUint, u64> {
        &self.assignment
    }

    /// The primes with e_p = d (empty for most divisors).
    pub fn prime_set(&self, d: u64) -> Result<&[BigUint]> {
        self.per_divisor
            .get(&d)
            .map(|(ps, _, _)| ps.as_slice())
            .ok_or(Error::NotADivisor(d))
    }

    /// (w_d, f_d) for a divisor d > 1 of m; (1, 0) when P_d is empty.
    pub fn w_and_f(&self, d: u64) -> Result<(BigInt, BigInt)> {
        self.per_divisor
            .get(&d)
            .map(|(_, w, f)| (BigInt::from(w.clone()), BigInt::from(f.clone())))
            .ok_or(Error::NotADivisor(d))
    }

    pub(crate) fn w_unsigned(&self, d: u64) -> &BigUint {
        &self.per_divisor[&d].1
    }

    /// {"m":..., "assignment":{...}, "w":{...}, "f":{...}} with w/f values
    /// as decimal strings, covering every divisor d > 1 of m.
    pub fn report_json(&self) -> serde_json::Value {
        let mut assignment = serde_json::Map::new();
        for (p, e) in &self.assignment {
            assignment.insert(p.to_string(), serde_json::Value::from(*e));
        }
        let mut w = serde_json::Map::new();
        let mut f = serde_json::Map::new();
        for (d, (_, wd, fd)) in &self.per_divisor {
            w.insert(d.to_string(), serde_json::Value::from(wd.to_string()));
            f.insert(d.to_string(), serde_json::Value::from(fd.to_string()));
        }
        serde_json::json!({
            "m": self.m,
            "disc": serde_json::to_value(&self.disc).unwrap(),
            "mode": match self.mode { Mode::Strict => "strict", Mode::Permissive => "permissive" },
            "assignment": assignment,
            "w": w,
            "f": f,
        })
    }
}
