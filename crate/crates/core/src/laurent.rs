//! Laurent polynomials in `t^{1/2}` with arbitrary-precision integer
//! coefficients. Exponents are stored doubled. The same ring is used for `v^{1/2}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// A half-integer, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(k: i64) -> Self {
        HalfInt(2 * k)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c · t^{e/2}`.
    pub fn monomial(doubled_exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(doubled_exp, c);
        }
        HalfLaurent { coeffs }
    }

    /// `t^{e/2}`.
    pub fn t_half(doubled_exp: i64) -> Self {
        Self::monomial(doubled_exp, 1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &BigInt::from(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, doubled_exp: i64) -> BigInt {
        self.coeffs.get(&doubled_exp).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add_term(&mut self, doubled_exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(doubled_exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&doubled_exp);
        }
    }

    /// Multiplies by `t^{e/2}`.
    pub fn shift(&self, doubled_exp: i64) -> Self {
        HalfLaurent { coeffs: self.coeffs.iter().map(|(e, c)| (e + doubled_exp, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        HalfLaurent { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// `t^{1/2} ↦ t^{-1/2}`.
    pub fn bar(&self) -> Self {
        HalfLaurent { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// If this is `±t^{e/2}`, returns `(sign, e)`.
    pub fn as_unit(&self) -> Option<(i64, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next().unwrap();
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    /// Exact division by a unit `±t^{e/2}`.
    pub fn div_unit(&self, unit: &HalfLaurent) -> Result<Self> {
        let (s, e) = unit.as_unit().ok_or_else(|| Error::Domain(format!("{unit} is not a unit")))?;
        Ok(self.shift(-e).scale(&BigInt::from(s)))
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    /// Coefficients are nonnegative and exponents integral.
    pub fn in_nat_laurent(&self) -> bool {
        self.has_integer_exponents() && self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Writes `c = λ + q` with `λ` bar-invariant and `q ∈ t⁻¹ℤ[t⁻¹]`; returns `q`.
    /// Fails when `c` has half-integral exponents.
    pub fn negative_part_for_bar(&self) -> Result<Self> {
        if !self.has_integer_exponents() {
            return Err(Error::Verification(format!("{self} has half-integral exponents")));
        }
        let negs: std::collections::BTreeSet<i64> =
            self.coeffs.keys().filter(|&&e| e != 0).map(|e| -e.abs()).collect();
        let mut q = Self::zero();
        for e in negs {
            q.add_term(e, &(self.coeff(e) - self.coeff(-e)));
        }
        Ok(q)
    }

    /// Every exponent is negative (`t^{-1/2}ℤ[t^{-1/2}]`) and integral.
    pub fn in_negative_integer_part(&self) -> bool {
        self.has_integer_exponents() && self.coeffs.keys().all(|&e| e < 0)
    }

    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.coeffs.iter().map(|(e, c)| (*e, c.to_string())).collect()
    }

    pub fn from_pairs(pairs: &[(i64, String)]) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))?;
            out.add_term(*e, &c);
        }
        Ok(out)
    }

    /// Text form in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let pow = match *e {
                0 => String::new(),
                2 => var.to_string(),
                e if e % 2 == 0 => format!("{var}^{}", e / 2),
                e => format!("{var}^({e}/2)"),
            };
            if pow.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                }
                s.push_str(&pow);
            }
        }
        s
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl Serialize for HalfLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i64, String)>::deserialize(d)?;
        HalfLaurent::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, &-c);
        }
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl One for HalfLaurent {
    fn one() -> Self {
        HalfLaurent::one()
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: HalfLaurent) -> HalfLaurent {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb() -> impl Strategy<Value = HalfLaurent> {
        prop::collection::vec((-6i64..6, -3i64..4), 0..5).prop_map(HalfLaurent::from_terms)
    }

    #[test]
    fn rendering() {
        let x = HalfLaurent::from_terms([(-1, 1), (3, -1)]);
        assert_eq!(x.to_string(), "t^(-1/2) - t^(3/2)");
        assert_eq!(HalfLaurent::from_terms([(0, 1), (2, 2)]).render("v"), "1 + 2v");
        assert_eq!(HalfInt(-1).to_string(), "-1/2");
        assert_eq!(HalfInt(-2).to_string(), "-1");
    }

    #[test]
    fn bar_split() {
        let c = HalfLaurent::from_terms([(2, 1)]);
        let q = c.negative_part_for_bar().unwrap();
        assert_eq!(q, HalfLaurent::from_terms([(-2, -1)]));
        assert!((&c - &q).is_bar_invariant());
        assert!(HalfLaurent::t_half(1).negative_part_for_bar().is_err());
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn serde_round_trip(a in arb()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: HalfLaurent = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn negative_part_splits(a in arb()) {
            let a = HalfLaurent::from_terms(a.terms().map(|(e, c)| (2 * e, i64::try_from(c.clone()).unwrap())));
            let q = a.negative_part_for_bar().unwrap();
            prop_assert!(q.in_negative_integer_part() || q.is_zero());
            prop_assert!((&a - &q).is_bar_invariant());
        }
    }
}
