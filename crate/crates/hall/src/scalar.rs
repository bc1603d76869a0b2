//! Exact arithmetic in `ℚ(√q)`, where `u = √q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use qgroth::error::{Error, Result};
use qgroth::HalfLaurent;

/// `a + b√q`. When `q` is a perfect square `b` is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    q: u8,
    a: BigRational,
    b: BigRational,
}

fn isqrt(q: u8) -> Option<i64> {
    (0..=q as i64).find(|r| r * r == q as i64)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ScalarQ {
    pub fn from_parts(q: u8, a: BigRational, b: BigRational) -> Self {
        match isqrt(q) {
            Some(r) => ScalarQ { q, a: a + b * rat(r), b: BigRational::zero() },
            None => ScalarQ { q, a, b },
        }
    }

    pub fn zero(q: u8) -> Self {
        Self::from_int(q, 0)
    }

    pub fn one(q: u8) -> Self {
        Self::from_int(q, 1)
    }

    pub fn from_int(q: u8, n: i64) -> Self {
        Self::from_parts(q, rat(n), BigRational::zero())
    }

    pub fn from_ratio(q: u8, num: i64, den: i64) -> Self {
        Self::from_parts(q, BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    /// `u = √q`.
    pub fn u(q: u8) -> Self {
        Self::from_parts(q, BigRational::zero(), BigRational::one())
    }

    /// `u^k` for any integer `k`.
    pub fn u_pow(q: u8, k: i64) -> Self {
        let half = k.div_euclid(2);
        let qk = rat(q as i64).pow(half as i32);
        if k.rem_euclid(2) == 0 {
            Self::from_parts(q, qk, BigRational::zero())
        } else {
            Self::from_parts(q, BigRational::zero(), qk)
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        // (a − b√q) / (a² − q b²)
        let norm = &self.a * &self.a - &self.b * &self.b * rat(self.q as i64);
        if norm.is_zero() {
            return Err(Error::Domain("division by zero in Q(sqrt q)".into()));
        }
        Ok(Self::from_parts(self.q, &self.a / &norm, -&self.b / &norm))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Evaluates a Laurent polynomial with integer exponents at `t = u`.
    pub fn eval_at_u(q: u8, p: &HalfLaurent) -> Result<Self> {
        let mut out = Self::zero(q);
        for (e, c) in p.terms() {
            if e % 2 != 0 {
                return Err(Error::Domain(format!("half-integer power of t in {} cannot be specialised", p.render("t"))));
            }
            let c = Self::from_parts(q, BigRational::from_integer(c.clone()), BigRational::zero());
            out = &out + &(&c * &Self::u_pow(q, e / 2));
        }
        Ok(out)
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}·√{}", self.b, self.q),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}·√{}", self.a, sign, self.b.abs(), self.q)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    q: u8,
    rational: String,
    sqrt: String,
}

impl Serialize for ScalarQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { q: self.q, rational: self.a.to_string(), sqrt: self.b.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScalarQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        let parse = |x: &str| x.parse::<BigRational>().map_err(serde::de::Error::custom);
        Ok(ScalarQ::from_parts(r.q, parse(&r.rational)?, parse(&r.sqrt)?))
    }
}

impl<'a> Add<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn add(self, o: &ScalarQ) -> ScalarQ {
        debug_assert_eq!(self.q, o.q);
        ScalarQ { q: self.q, a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn sub(self, o: &ScalarQ) -> ScalarQ {
        debug_assert_eq!(self.q, o.q);
        ScalarQ { q: self.q, a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn mul(self, o: &ScalarQ) -> ScalarQ {
        debug_assert_eq!(self.q, o.q);
        let q = rat(self.q as i64);
        ScalarQ {
            q: self.q,
            a: &self.a * &o.a + &self.b * &o.b * q,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { q: self.q, a: -&self.a, b: -&self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_u() {
        for q in [2u8, 3, 4] {
            let u = ScalarQ::u(q);
            assert_eq!(&u * &u, ScalarQ::from_int(q, q as i64));
            assert_eq!(ScalarQ::u_pow(q, 3), &(&u * &u) * &u);
            assert_eq!(&ScalarQ::u_pow(q, -3) * &ScalarQ::u_pow(q, 3), ScalarQ::one(q));
            assert_eq!(u.inv().unwrap(), ScalarQ::u_pow(q, -1));
        }
        assert_eq!(ScalarQ::u(4), ScalarQ::from_int(4, 2));
        assert_eq!(ScalarQ::u(2).to_string(), "1·√2");
    }

    #[test]
    fn evaluation() {
        let p = HalfLaurent::from_terms([(0, 1), (-4, -1)]);
        let v = ScalarQ::eval_at_u(3, &p).unwrap();
        assert_eq!(v, ScalarQ::from_ratio(3, 2, 3));
        assert!(ScalarQ::eval_at_u(3, &HalfLaurent::t_half(1)).is_err());
        assert!(ScalarQ::zero(2).inv().is_err());
    }

    #[test]
    fn json_round_trip() {
        for x in [ScalarQ::from_ratio(3, -2, 3), &ScalarQ::u(2) + &ScalarQ::from_int(2, 5), ScalarQ::u_pow(4, -3)] {
            let text = serde_json::to_string(&x).unwrap();
            assert_eq!(serde_json::from_str::<ScalarQ>(&text).unwrap(), x);
        }
    }
}
