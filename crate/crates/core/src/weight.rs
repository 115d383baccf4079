//! Exact node weights.
//!
//! Weights are positive rationals. Solvers work on integers: all weights of
//! an instance are multiplied by the least common multiple of their
//! denominators, which keeps every comparison exact.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(Ratio<i64>);

impl Weight {
    pub const ZERO: Weight = Weight(Ratio::new_raw(0, 1));
    pub const ONE: Weight = Weight(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Weight {
        Weight(Ratio::new(numer, denom))
    }

    pub fn integer(value: i64) -> Weight {
        Weight(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Ratio::zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_add(&self, other: &Weight) -> Option<Weight> {
        self.0.checked_add(&other.0).map(Weight)
    }

    pub fn checked_mul(&self, other: &Weight) -> Option<Weight> {
        self.0.checked_mul(&other.0).map(Weight)
    }

    pub fn as_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }
}

impl From<i64> for Weight {
    fn from(v: i64) -> Self {
        Weight::integer(v)
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl std::ops::Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        Weight(self.0 * rhs.0)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        let bad = || Error::Format(format!("cannot parse weight {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Weight::new(n, d))
            }
            None => {
                if let Ok(v) = s.parse::<i64>() {
                    return Ok(Weight::integer(v));
                }
                parse_decimal(s).ok_or_else(bad)
            }
        }
    }
}

fn parse_decimal(s: &str) -> Option<Weight> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let scale = 10i64.checked_pow(frac.len() as u32)?;
    let frac: i64 = frac.parse().ok()?;
    let numer = int.checked_mul(scale)?.checked_add(frac)?;
    Some(Weight::new(if neg { -numer } else { numer }, scale))
}

/// Node weights brought to a common integer scale: `weight(v) = units[v] / denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledWeights {
    pub units: Vec<i64>,
    pub denom: i64,
}

impl ScaledWeights {
    pub fn from_weights(weights: &[Weight]) -> Result<ScaledWeights> {
        let mut denom: i64 = 1;
        for w in weights {
            let g = denom.gcd(&w.denom());
            denom = (denom / g).checked_mul(w.denom()).ok_or(Error::WeightOverflow)?;
        }
        let mut units = Vec::with_capacity(weights.len());
        let mut total: i64 = 0;
        for w in weights {
            let u = w
                .numer()
                .checked_mul(denom / w.denom())
                .ok_or(Error::WeightOverflow)?;
            total = total.checked_add(u).ok_or(Error::WeightOverflow)?;
            units.push(u);
        }
        Ok(ScaledWeights { units, denom })
    }

    pub fn unit(n: usize) -> ScaledWeights {
        ScaledWeights {
            units: vec![1; n],
            denom: 1,
        }
    }

    pub fn to_weight(&self, units: i64) -> Weight {
        Weight::new(units, self.denom)
    }

    pub fn sum<I: IntoIterator<Item = usize>>(&self, nodes: I) -> i64 {
        nodes.into_iter().map(|v| self.units[v]).sum()
    }
}

impl One for Weight {
    fn one() -> Self {
        Weight::ONE
    }
}

impl Zero for Weight {
    fn zero() -> Self {
        Weight::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.serialize_i64(self.numer())
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

impl<'de> serde::Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Weight, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n.to_string().parse().map_err(D::Error::custom),
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("weight must be a number or string, got {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!("3".parse::<Weight>().unwrap(), Weight::integer(3));
        assert_eq!("6/4".parse::<Weight>().unwrap(), Weight::new(3, 2));
        assert_eq!("0.25".parse::<Weight>().unwrap(), Weight::new(1, 4));
        assert!("1/0".parse::<Weight>().is_err());
        assert!("abc".parse::<Weight>().is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(Weight::new(4, 2).to_string(), "2");
        assert_eq!(Weight::new(2, 6).to_string(), "1/3");
    }

    #[test]
    fn scaling_uses_lcm_of_denominators() {
        let ws = [Weight::new(1, 2), Weight::new(2, 3), Weight::integer(5)];
        let s = ScaledWeights::from_weights(&ws).unwrap();
        assert_eq!(s.denom, 6);
        assert_eq!(s.units, vec![3, 4, 30]);
        assert_eq!(s.to_weight(7), Weight::new(7, 6));
    }

    #[test]
    fn scaling_overflow_is_reported() {
        let primes = [1_000_003i64, 1_000_033, 1_000_037, 1_000_039];
        let ws: Vec<Weight> = primes.iter().map(|&p| Weight::new(1, p)).collect();
        assert!(matches!(
            ScaledWeights::from_weights(&ws),
            Err(Error::WeightOverflow)
        ));
    }
}
