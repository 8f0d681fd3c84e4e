//! Sparse bivariate polynomials in `y` and `z` with non-negative big-integer
//! coefficients.
//!
//! Every generating function in this crate is a [`BiPoly`]: `y` marks vertices
//! (or the vertices of one parity class) and `z` marks edges. Evaluating at
//! `y = z = 1` recovers plain counts.
//!
//! The canonical text form lists terms by ascending `z` exponent, then ascending
//! `y` exponent, as `c*y^a*z^b` with exponent `1` and zero-exponent factors
//! dropped, joined by ` + `. The empty polynomial renders as `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent pair of a term. Field order gives the canonical term order:
/// `z` exponent first, then `y` exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub dz: u32,
    pub dy: u32,
}

impl Monomial {
    pub fn new(dy: u32, dz: u32) -> Self {
        Monomial { dz, dy }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            dz: self.dz + other.dz,
            dy: self.dy + other.dy,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    // invariant: no stored coefficient is zero
    terms: BTreeMap<Monomial, BigUint>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(1u32, 0, 0)
    }

    /// The vertex marker `y`.
    pub fn y() -> Self {
        BiPoly::monomial(1u32, 1, 0)
    }

    /// The edge marker `z`.
    pub fn z() -> Self {
        BiPoly::monomial(1u32, 0, 1)
    }

    /// `c * y^dy * z^dz`.
    pub fn monomial(c: impl Into<BigUint>, dy: u32, dz: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(dy, dz), c);
        }
        BiPoly { terms }
    }

    /// Builds a polynomial from `(coefficient, dy, dz)` triples; repeated
    /// exponent pairs are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, u32, u32)>,
        C: Into<BigUint>,
    {
        let mut p = BiPoly::zero();
        for (c, dy, dz) in terms {
            p.add_term(Monomial::new(dy, dz), c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigUint)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Coefficient of `y^dy * z^dz`, zero when absent.
    pub fn coefficient(&self, dy: u32, dz: u32) -> BigUint {
        self.terms
            .get(&Monomial::new(dy, dz))
            .cloned()
            .unwrap_or_default()
    }

    /// Sum of all coefficients, i.e. the value at `y = z = 1`.
    pub fn eval_counts(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Termwise `self - other`. Fails if any coefficient of `other` exceeds
    /// the matching coefficient of `self`.
    pub fn subtract_nonneg(&self, other: &BiPoly) -> Result<BiPoly> {
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            let negative = Error::NegativeCoefficient { dy: m.dy, dz: m.dz };
            let slot = out.get_mut(m).ok_or(negative.clone())?;
            if *slot < *c {
                return Err(negative);
            }
            *slot -= c;
            if slot.is_zero() {
                out.remove(m);
            }
        }
        Ok(BiPoly { terms: out })
    }

    fn add_term(&mut self, m: Monomial, c: BigUint) {
        if c.is_zero() {
            return;
        }
        *self.terms.entry(m).or_default() += c;
    }

    /// Canonical JSON value: a list of `{"y", "z", "c"}` records.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("term records always serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<BiPoly> {
        BiPoly::deserialize(value).map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;

    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            *self.terms.entry(*m).or_default() += c;
        }
    }
}

impl AddAssign for BiPoly {
    fn add_assign(&mut self, rhs: BiPoly) {
        *self += &rhs;
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *out.terms.entry(ma.times(*mb)).or_default() += ca * cb;
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a BiPoly> for BiPoly {
    fn sum<I: Iterator<Item = &'a BiPoly>>(iter: I) -> BiPoly {
        let mut acc = BiPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl Product for BiPoly {
    fn product<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::one(), |acc, p| &acc * &p)
    }
}

impl<'a> Product<&'a BiPoly> for BiPoly {
    fn product<I: Iterator<Item = &'a BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::one(), |acc, p| &acc * p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (var, exp) in [('y', m.dy), ('z', m.dz)] {
                match exp {
                    0 => {}
                    1 => write!(f, "*{var}")?,
                    e => write!(f, "*{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = Error;

    /// Accepts the canonical form and looser variants such as `y + 2*y^2*z`.
    fn from_str(s: &str) -> Result<BiPoly> {
        let bad = |what: &str| Error::InvalidArgument(format!("bad polynomial {what} in `{s}`"));
        let mut poly = BiPoly::zero();
        if s.trim().is_empty() {
            return Err(bad("text"));
        }
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("term"));
            }
            let mut coeff = BigUint::one();
            let mut mono = Monomial::new(0, 0);
            for factor in term.split('*') {
                let factor = factor.trim();
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad("exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "y" => mono.dy += exp,
                    "z" => mono.dz += exp,
                    digits if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                        let c: BigUint = digits.parse().map_err(|_| bad("coefficient"))?;
                        coeff *= num_traits::pow(c, exp as usize);
                    }
                    _ => return Err(bad("factor")),
                }
            }
            poly.add_term(mono, coeff);
        }
        Ok(poly)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    y: u32,
    z: u32,
    c: String,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord {
                y: m.dy,
                z: m.dz,
                c: c.to_string(),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut poly = BiPoly::zero();
        for r in records {
            let c: BigUint = r
                .c
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient `{}`", r.c)))?;
            poly.add_term(Monomial::new(r.y, r.z), c);
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&BiPoly::y() + &BiPoly::z(), p("y + z"));
        assert_eq!(&p("y^2*z") + &p("y^2*z"), p("2*y^2*z"));
        assert_eq!(&BiPoly::zero() + &BiPoly::y(), BiPoly::y());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("y + z") * &BiPoly::y(), p("y^2 + y*z"));
        assert_eq!(&BiPoly::y() * &BiPoly::one(), BiPoly::y());
        let a = p("y + y*z");
        assert_eq!(&a * &a, p("y^2 + 2*y^2*z + y^2*z^2"));
        assert!((&a * &BiPoly::zero()).is_zero());
    }

    #[test]
    fn subtract_examples() {
        let a = p("4*y + 3*y^2*z");
        assert!(a.subtract_nonneg(&a).unwrap().is_zero());
        let star_le3 = p("4*y + 3*y^2*z + 3*y^3*z^2 + y^4*z^3");
        let star_le2 = p("4*y + 3*y^2*z + 3*y^3*z^2");
        assert_eq!(star_le3.subtract_nonneg(&star_le2).unwrap(), p("y^4*z^3"));
        assert_eq!(
            p("4*y + 3*y^2*z + y^3*z^2").subtract_nonneg(&a).unwrap(),
            p("y^3*z^2")
        );
        assert_eq!(
            BiPoly::y().subtract_nonneg(&p("2*y")),
            Err(Error::NegativeCoefficient { dy: 1, dz: 0 })
        );
        assert_eq!(
            BiPoly::y().subtract_nonneg(&BiPoly::z()),
            Err(Error::NegativeCoefficient { dy: 0, dz: 1 })
        );
    }

    #[test]
    fn eval_and_coefficient() {
        assert_eq!(p("3*y + 2*y^2*z + y^3*z^2").eval_counts(), BigUint::from(6u32));
        assert_eq!(BiPoly::zero().eval_counts(), BigUint::zero());
        assert_eq!(p("23*y^2*z^2 + 13*y^3*z^3").eval_counts(), BigUint::from(36u32));
        let q = p("11*y + 10*y^2*z");
        assert_eq!(q.coefficient(1, 0), BigUint::from(11u32));
        assert_eq!(q.coefficient(2, 1), BigUint::from(10u32));
        assert_eq!(BiPoly::y().coefficient(5, 5), BigUint::zero());
    }

    #[test]
    fn canonical_text() {
        let q = p("24*y^8*z^7 + 52*y^7*z^6 + y^3*z^2 + 8*y^4*z^3");
        assert_eq!(q.to_string(), "1*y^3*z^2 + 8*y^4*z^3 + 52*y^7*z^6 + 24*y^8*z^7");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(BiPoly::one().to_string(), "1");
        assert_eq!(p("3*y + z + 7").to_string(), "7 + 3*y + 1*z");
        // same z exponent: ascending y
        assert_eq!(p("y^3*z + y*z").to_string(), "1*y*z + 1*y^3*z");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "y +", "x", "2*y^", "y^-1", "3y"] {
            assert!(bad.parse::<BiPoly>().is_err(), "{bad}");
        }
        assert!(p("0*y + 0").is_zero());
    }

    #[test]
    fn json_form() {
        let big: BiPoly = p("340282366920938463463374607431768211457*y^2*z + y");
        let v = big.to_json();
        assert_eq!(
            v,
            serde_json::json!([
                {"y": 1, "z": 0, "c": "1"},
                {"y": 2, "z": 1, "c": "340282366920938463463374607431768211457"}
            ])
        );
        assert_eq!(BiPoly::from_json(&v).unwrap(), big);
        assert!(BiPoly::from_json(&serde_json::json!([{"y": 1, "z": 0, "c": "x"}])).is_err());
    }
}
