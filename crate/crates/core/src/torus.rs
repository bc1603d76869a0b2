//! Quantum tori: finite linear combinations of commutative monomials with
//! coefficients in `ℤ[t^{±1/2}]`, multiplied by `a * b = t^{tw(a,b)/2} ab`.
//!
//! Two kinds of key are used: [`Monomial`] in the variables `Y_{i,p}`
//! (twisted by the pairing built from `C̃`), and [`XVec`], exponent vectors
//! over a fixed set of generators (twisted by an antisymmetric matrix).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::HalfLaurent;
use crate::monomial::Monomial;
use crate::qcartan::CtildeTable;

/// Group structure on keys. `Ord` must be translation invariant.
pub trait TorusKey: Ord + Clone + fmt::Debug {
    fn key_one(&self) -> Self;
    fn key_mul(&self, other: &Self) -> Self;
    fn key_inv(&self) -> Self;
    fn key_is_one(&self) -> bool;
    fn key_render(&self) -> String;
}

/// Doubled exponent of the twist: `a * b = t^{twist(a,b)/2} ab`.
pub trait Twist<K> {
    fn twist(&self, a: &K, b: &K) -> i64;
}

impl TorusKey for Monomial {
    fn key_one(&self) -> Self {
        Monomial::one()
    }
    fn key_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn key_inv(&self) -> Self {
        self.inv()
    }
    fn key_is_one(&self) -> bool {
        self.is_one()
    }
    fn key_render(&self) -> String {
        self.render()
    }
}

/// Exponent vector `𝐚 ∈ ℤ^r`, standing for the normalized monomial `X^𝐚`.
///
/// Ordered by comparing from the last coordinate down; the larger entry wins.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XVec(pub Vec<i64>);

impl XVec {
    pub fn zero(r: usize) -> Self {
        XVec(vec![0; r])
    }

    pub fn unit(r: usize, k: usize) -> Self {
        let mut v = vec![0; r];
        v[k] = 1;
        XVec(v)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        XVec(self.0.iter().map(|x| x * k).collect())
    }
}

impl Ord for XVec {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for XVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TorusKey for XVec {
    fn key_one(&self) -> Self {
        XVec::zero(self.0.len())
    }
    fn key_mul(&self, other: &Self) -> Self {
        XVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
    fn key_inv(&self) -> Self {
        XVec(self.0.iter().map(|a| -a).collect())
    }
    fn key_is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
    fn key_render(&self) -> String {
        if self.key_is_one() {
            return "1".into();
        }
        let mut s = String::new();
        for (k, &a) in self.0.iter().enumerate() {
            if a != 0 {
                s.push_str(&format!("X{}", k + 1));
                if a != 1 {
                    s.push_str(&format!("^{a}"));
                }
            }
        }
        s
    }
}

/// `t^{D(m1,m2)/2}` with `D(m1,m2) = Σ u_{i,p}(m1) u_{j,s}(m2) N(i,p;j,s)`.
#[derive(Clone, Debug)]
pub struct YTwist {
    table: Arc<CtildeTable>,
}

impl YTwist {
    pub fn new(table: Arc<CtildeTable>) -> Self {
        YTwist { table }
    }

    pub fn table(&self) -> &CtildeTable {
        &self.table
    }

    /// `N(i,p;j,s) = C̃_ij(p−s−1) − C̃_ij(p−s+1) − C̃_ij(s−p−1) + C̃_ij(s−p+1)`.
    pub fn n(&self, i: usize, p: i64, j: usize, s: i64) -> i64 {
        let c = |m: i64| self.table.get(i, j, m);
        c(p - s - 1) - c(p - s + 1) - c(s - p - 1) + c(s - p + 1)
    }

    pub fn pairing(&self, a: &Monomial, b: &Monomial) -> i64 {
        let mut d = 0;
        for ((i, p), u) in a.factors() {
            for ((j, s), w) in b.factors() {
                if p != s {
                    d += u * w * self.n(i, p, j, s);
                }
            }
        }
        d
    }
}

impl Twist<Monomial> for YTwist {
    fn twist(&self, a: &Monomial, b: &Monomial) -> i64 {
        self.pairing(a, b)
    }
}

/// `g^𝐚 g^𝐛 = v^{𝐚ᵀC𝐛/2} g^{𝐚+𝐛}` for generators with `g_k g_l = v^{C_kl} g_l g_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTwist {
    pub commutation: Vec<Vec<i64>>,
}

impl FormTwist {
    pub fn new(commutation: Vec<Vec<i64>>) -> Self {
        FormTwist { commutation }
    }

    pub fn rank(&self) -> usize {
        self.commutation.len()
    }
}

impl Twist<XVec> for FormTwist {
    fn twist(&self, a: &XVec, b: &XVec) -> i64 {
        let mut s = 0;
        for (k, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (l, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    s += x * y * self.commutation[k][l];
                }
            }
        }
        s
    }
}

/// A finite sum `Σ c_m · m` over commutative monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<K: Ord> {
    terms: BTreeMap<K, HalfLaurent>,
}

impl<K: Ord> Default for Element<K> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<K: TorusKey> Element<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(key: K) -> Self {
        Self::term(key, HalfLaurent::one())
    }

    pub fn term(key: K, c: HalfLaurent) -> Self {
        let mut e = Self::zero();
        e.add_term(key, &c);
        e
    }

    pub fn from_terms(it: impl IntoIterator<Item = (K, HalfLaurent)>) -> Self {
        let mut e = Self::zero();
        for (k, c) in it {
            e.add_term(k, &c);
        }
        e
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&K, &HalfLaurent)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> HalfLaurent {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn contains(&self, k: &K) -> bool {
        self.terms.contains_key(k)
    }

    /// Largest key and its coefficient.
    pub fn lead(&self) -> Option<(&K, &HalfLaurent)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, k: K, c: &HalfLaurent) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &HalfLaurent) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element::from_terms(self.terms.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    /// Multiplies every coefficient by `t^{e/2}`.
    pub fn shift_t(&self, doubled_exp: i64) -> Self {
        Element { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.shift(doubled_exp))).collect() }
    }

    /// `t^{1/2} ↦ t^{-1/2}` on coefficients; commutative monomials are fixed.
    pub fn bar(&self) -> Self {
        Element { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.bar())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.values().all(|c| c.is_bar_invariant())
    }

    pub fn map_keys<L: TorusKey>(&self, mut f: impl FnMut(&K) -> Result<L>) -> Result<Element<L>> {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k)?, c);
        }
        Ok(out)
    }

    pub fn filter_keys(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Element { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    /// The twisted product `self * other`.
    pub fn mul(&self, other: &Self, tw: &impl Twist<K>) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = (ca * cb).shift(tw.twist(a, b));
                out.add_term(a.key_mul(b), &c);
            }
        }
        out
    }

    /// Ordered product of a list of factors; `one` for the empty list.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>, one: K, tw: &impl Twist<K>) -> Self
    where
        K: 'a,
    {
        let mut acc = Self::monomial(one);
        for f in factors {
            acc = acc.mul(f, tw);
        }
        acc
    }

    pub fn pow(&self, k: u32, one: K, tw: &impl Twist<K>) -> Self {
        let mut acc = Self::monomial(one);
        for _ in 0..k {
            acc = acc.mul(self, tw);
        }
        acc
    }

    /// Inverse of a single term `c·m` with `c = ±t^{e/2}`.
    pub fn invert_term(&self, tw: &impl Twist<K>) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::Domain("only single terms are invertible".into()));
        }
        let (k, c) = self.terms.iter().next().unwrap();
        let inv = k.key_inv();
        // (c m) * (c' m^{-1}) = c c' t^{tw(m,m^{-1})/2} = 1
        let denom = c.shift(tw.twist(k, &inv));
        let one = HalfLaurent::one();
        Ok(Self::term(inv, one.div_unit(&denom)?))
    }

    /// Solves `y * divisor = self` for `y`, exactly. Requires the leading
    /// coefficient of `divisor` to be a unit.
    pub fn right_divide(&self, divisor: &Self, tw: &impl Twist<K>) -> Result<Self> {
        self.divide(divisor, tw, true)
    }

    /// Solves `divisor * y = self` for `y`, exactly.
    pub fn left_divide(&self, divisor: &Self, tw: &impl Twist<K>) -> Result<Self> {
        self.divide(divisor, tw, false)
    }

    fn divide(&self, divisor: &Self, tw: &impl Twist<K>, right: bool) -> Result<Self> {
        let (dk, dc) = divisor.lead().ok_or_else(|| Error::Domain("division by zero".into()))?;
        let (dk, dc) = (dk.clone(), dc.clone());
        if dc.as_unit().is_none() {
            return Err(Error::Domain(format!("leading coefficient {dc} of divisor is not a unit")));
        }
        let lowest = match (self.terms.keys().next(), divisor.terms.keys().next()) {
            (Some(a), Some(b)) => a.key_mul(&b.key_inv()),
            _ => return Ok(Self::zero()),
        };
        let cap = 64 * (self.len() + 1) * (divisor.len() + 1) + 4096;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        for _ in 0..cap {
            let (rk, rc) = match rem.lead() {
                None => return Ok(quot),
                Some((k, c)) => (k.clone(), c.clone()),
            };
            let qk = rk.key_mul(&dk.key_inv());
            if qk < lowest {
                return Err(Error::Verification(format!(
                    "inexact division: quotient term {} lies below {}",
                    qk.key_render(),
                    lowest.key_render()
                )));
            }
            let t = if right { tw.twist(&qk, &dk) } else { tw.twist(&dk, &qk) };
            let qc = rc.div_unit(&dc.shift(t))?;
            let step = Self::term(qk, qc);
            let prod = if right { step.mul(divisor, tw) } else { divisor.mul(&step, tw) };
            rem = rem.sub(&prod);
            quot = quot.add(&step);
        }
        Err(Error::ResourceCap("division did not terminate".into()))
    }

    /// Text form, highest key first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.terms.iter().rev() {
            let mono = k.key_render();
            let s = if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else if mono == "1" {
                format!("({})", c.render(var))
            } else {
                format!("({}) {mono}", c.render(var))
            };
            parts.push(s);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }

    pub fn to_pairs(&self) -> Vec<(K, HalfLaurent)> {
        self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }

    /// Coefficient-wise map.
    pub fn map_coeffs(&self, mut f: impl FnMut(&K, &HalfLaurent) -> HalfLaurent) -> Self {
        Element::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), f(k, c))))
    }

    /// Specialization `t^{1/2} = 1` of every coefficient.
    pub fn at_t_equals_one(&self) -> BTreeMap<K, BigInt> {
        self.terms.iter().map(|(k, c)| (k.clone(), c.terms().map(|(_, x)| x.clone()).sum())).collect()
    }
}

impl<K: TorusKey + Serialize> Serialize for Element<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de, K: TorusKey + Deserialize<'de>> Deserialize<'de> for Element<K> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(K, HalfLaurent)>::deserialize(d)?;
        Ok(Element::from_terms(pairs))
    }
}

pub type YElement = Element<Monomial>;
pub type XElement = Element<XVec>;
