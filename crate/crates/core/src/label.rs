//! Labels in `G = Q/2Z`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// An element of `Q/2Z`, stored by its representative in `[0, 2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Rat);

fn wrap(v: Rat) -> Rat {
    let two = Rat::from_integer(2);
    let k = (v / two).floor();
    v - k * two
}

impl Label {
    pub const ZERO: Label = Label(Rat::new_raw(0, 1));

    pub fn new(v: Rat) -> Label {
        Label(wrap(v))
    }

    pub fn from_frac(num: i64, den: i64) -> Label {
        Label::new(Rat::new(num, den))
    }

    pub fn from_int(n: i64) -> Label {
        Label::new(Rat::from_integer(n))
    }

    /// Canonical representative in `[0, 2)`.
    pub fn value(&self) -> Rat {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `k * self` for an integer `k`.
    pub fn times(&self, k: i64) -> Label {
        Label::new(self.0 * Rat::from_integer(k))
    }

    /// True when the canonical representative has denominator dividing `d`.
    pub fn fits_denominator(&self, d: u32) -> bool {
        (d as i64) % self.0.denom() == 0
    }

    /// All labels `k/d`, `0 <= k < 2d`.
    pub fn all_with_denominator(d: u32) -> Vec<Label> {
        (0..2 * d as i64).map(|k| Label::from_frac(k, d as i64)).collect()
    }
}

impl Default for Label {
    fn default() -> Self {
        Label::ZERO
    }
}

impl Add for Label {
    type Output = Label;
    fn add(self, rhs: Label) -> Label {
        Label::new(self.0 + rhs.0)
    }
}

impl Sub for Label {
    type Output = Label;
    fn sub(self, rhs: Label) -> Label {
        Label::new(self.0 - rhs.0)
    }
}

impl Neg for Label {
    type Output = Label;
    fn neg(self) -> Label {
        Label::new(-self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `p`, `p/q`, or a negative form of either.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Label(format!("cannot parse rational '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Label> {
        Ok(Label::new(parse_rational(s)?))
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Label, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_mod_two() {
        assert_eq!(Label::from_frac(5, 2), Label::from_frac(1, 2));
        assert_eq!(Label::from_frac(-1, 4), Label::from_frac(7, 4));
        assert_eq!(Label::from_int(2), Label::ZERO);
        assert_eq!(-Label::from_frac(1, 2), Label::from_frac(3, 2));
        assert_eq!(Label::from_frac(3, 2) + Label::from_frac(3, 4), Label::from_frac(1, 4));
    }

    #[test]
    fn parse_and_print() {
        let l: Label = "-1/2".parse().unwrap();
        assert_eq!(l.to_string(), "3/2");
        assert_eq!("1".parse::<Label>().unwrap().to_string(), "1");
        assert!("1/0".parse::<Label>().is_err());
        assert!("x".parse::<Label>().is_err());
    }

    #[test]
    fn enumerates_subgroup() {
        let all = Label::all_with_denominator(4);
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|l| l.fits_denominator(4)));
        assert!(!Label::from_frac(1, 3).fits_denominator(4));
    }
}
