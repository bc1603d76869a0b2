//! Commutative Laurent monomials in the variables `Y_{i,p}` and the
//! monomials `A_{i,p}`.
//!
//! Variables are keyed by `(p, i)` so that the canonical sorted form lists
//! spectral parameters in increasing order. The total order on monomials
//! compares exponents at the smallest differing key; the larger exponent wins.
//! It is a group order refining the Nakajima order: `m > m·A_{i,p}^{-1}`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, i64, i64)>", into = "Vec<(usize, i64, i64)>")]
pub struct Monomial {
    /// `((p, i), exponent)`, sorted by `(p, i)`, no zero exponents.
    exps: Vec<((i64, usize), i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The variable `Y_{i,p}` (vertex `i` is 0-based).
    pub fn y(i: usize, p: i64) -> Self {
        Monomial { exps: vec![((p, i), 1)] }
    }

    pub fn from_exponents(it: impl IntoIterator<Item = ((usize, i64), i64)>) -> Self {
        let mut map: BTreeMap<(i64, usize), i64> = BTreeMap::new();
        for ((i, p), e) in it {
            *map.entry((p, i)).or_insert(0) += e;
        }
        Monomial { exps: map.into_iter().filter(|&(_, e)| e != 0).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// `u_{i,p}(m)`.
    pub fn exponent(&self, i: usize, p: i64) -> i64 {
        self.exps.binary_search_by(|(k, _)| k.cmp(&(p, i))).map(|ix| self.exps[ix].1).unwrap_or(0)
    }

    /// `((i, p), exponent)` in increasing `(p, i)` order.
    pub fn factors(&self) -> impl Iterator<Item = ((usize, i64), i64)> + '_ {
        self.exps.iter().map(|&((p, i), e)| ((i, p), e))
    }

    pub fn num_factors(&self) -> usize {
        self.exps.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e > 0)
    }

    /// No negative powers of `Y_{j,*}`.
    pub fn is_j_dominant(&self, j: usize) -> bool {
        self.exps.iter().all(|&((_, i), e)| i != j || e > 0)
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn min_p(&self) -> Option<i64> {
        self.exps.first().map(|&((p, _), _)| p)
    }

    pub fn max_p(&self) -> Option<i64> {
        self.exps.last().map(|&((p, _), _)| p)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.combine(other, -1)
    }

    pub fn inv(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&(k, e)| (k, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|&(key, e)| (key, e * k)).collect() }
    }

    fn combine(&self, other: &Monomial, sign: i64) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (0, 0);
        while a < self.exps.len() || b < other.exps.len() {
            let ka = self.exps.get(a).map(|x| x.0);
            let kb = other.exps.get(b).map(|x| x.0);
            match (ka, kb) {
                (Some(x), Some(y)) if x == y => {
                    let e = self.exps[a].1 + sign * other.exps[b].1;
                    if e != 0 {
                        out.push((x, e));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(self.exps[a]);
                    a += 1;
                }
                (Some(_), None) => {
                    out.push(self.exps[a]);
                    a += 1;
                }
                _ => {
                    let (k, e) = other.exps[b];
                    out.push((k, sign * e));
                    b += 1;
                }
            }
        }
        Monomial { exps: out }
    }

    /// Shifts every spectral parameter by `d`.
    pub fn shift(&self, d: i64) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&((p, i), e)| ((p + d, i), e)).collect() }
    }

    /// Applies a vertex permutation.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        Monomial::from_exponents(self.factors().map(|((i, p), e)| ((perm[i], p), e)))
    }

    /// Whether every variable `(i, p)` satisfies `keep`.
    pub fn all_vars(&self, mut keep: impl FnMut(usize, i64) -> bool) -> bool {
        self.exps.iter().all(|&((p, i), _)| keep(i, p))
    }

    /// `A_{i,p} = Y_{i,p-1} Y_{i,p+1} Π_{j∼i} Y_{j,p}^{-1}`.
    pub fn a_monomial(cartan: &CartanDatum, i: usize, p: i64) -> Monomial {
        let mut f = vec![((i, p - 1), 1), ((i, p + 1), 1)];
        for j in cartan.neighbors(i) {
            f.push(((j, p), -1));
        }
        Monomial::from_exponents(f)
    }

    /// Renders with 1-based vertices, e.g. `Y[1,0]Y[2,1]^-1`; `1` for the unit.
    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut s = String::new();
        for ((i, p), e) in self.factors() {
            s.push_str(&format!("Y[{},{}]", i + 1, p));
            if e != 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (0, 0);
        loop {
            let x = self.exps.get(a);
            let y = other.exps.get(b);
            match (x, y) {
                (None, None) => return Ordering::Equal,
                (Some(&(kx, ex)), Some(&(ky, ey))) => match kx.cmp(&ky) {
                    Ordering::Equal => {
                        if ex != ey {
                            return ex.cmp(&ey);
                        }
                        a += 1;
                        b += 1;
                    }
                    Ordering::Less => return ex.cmp(&0),
                    Ordering::Greater => return 0.cmp(&ey),
                },
                (Some(&(_, ex)), None) => return ex.cmp(&0),
                (None, Some(&(_, ey))) => return 0.cmp(&ey),
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl From<Monomial> for Vec<(usize, i64, i64)> {
    fn from(m: Monomial) -> Self {
        m.factors().map(|((i, p), e)| (i, p, e)).collect()
    }
}

impl TryFrom<Vec<(usize, i64, i64)>> for Monomial {
    type Error = Error;
    fn try_from(v: Vec<(usize, i64, i64)>) -> Result<Self> {
        Ok(Monomial::from_exponents(v.into_iter().map(|(i, p, e)| ((i, p), e))))
    }
}

/// Parses `Y[1,0]Y[2,1]^-1` (1-based vertices, optional spaces and `*`), or `1`.
impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact == "1" || compact.is_empty() {
            return Ok(Monomial::one());
        }
        let bad = || Error::Parse(format!("bad monomial '{s}'"));
        let mut rest = compact.as_str();
        let mut f = Vec::new();
        while !rest.is_empty() {
            rest = rest.strip_prefix('Y').ok_or_else(bad)?;
            let rest2 = rest.strip_prefix('[').or_else(|| rest.strip_prefix('_')).ok_or_else(bad)?;
            let close = rest2.find(|c| c == ']' || c == '}').ok_or_else(bad)?;
            let inner = &rest2[..close];
            let inner = inner.strip_prefix('{').unwrap_or(inner);
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let i: usize = a.parse().map_err(|_| bad())?;
            let p: i64 = b.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            rest = &rest2[close + 1..];
            let mut e = 1i64;
            if let Some(r) = rest.strip_prefix('^') {
                let r = r.strip_prefix('{').unwrap_or(r);
                let end = r
                    .char_indices()
                    .find(|&(k, c)| !(c.is_ascii_digit() || (k == 0 && c == '-')))
                    .map(|(k, _)| k)
                    .unwrap_or(r.len());
                e = r[..end].parse().map_err(|_| bad())?;
                rest = r[end..].strip_prefix('}').unwrap_or(&r[end..]);
            }
            f.push(((i - 1, p), e));
        }
        Ok(Monomial::from_exponents(f))
    }
}

/// Writes `upper · lower^{-1}` as `Π A_{i,p}^{n_{i,p}}`. Returns the
/// multiplicities `((i, p), n)` in increasing `(p, i)` order when they exist
/// and are all nonnegative, i.e. when `lower ≤ upper` in the Nakajima order.
pub fn nakajima_decomposition(
    cartan: &CartanDatum,
    lower: &Monomial,
    upper: &Monomial,
) -> Option<Vec<((usize, i64), i64)>> {
    let mut r = upper.div(lower);
    let top = r.max_p();
    let mut out = Vec::new();
    while let Some(&((p, i), e)) = r.exps.first() {
        // Y_{i,p} is the lowest variable; only A_{i,p+1} can cancel it
        if e < 0 || p + 2 > top.unwrap() {
            return None;
        }
        r = r.div(&Monomial::a_monomial(cartan, i, p + 1).pow(e));
        out.push(((i, p + 1), e));
    }
    Some(out)
}

/// `lower ≤ upper` in the Nakajima order.
pub fn nakajima_leq(cartan: &CartanDatum, lower: &Monomial, upper: &Monomial) -> bool {
    nakajima_decomposition(cartan, lower, upper).is_some()
}

/// Renders A-multiplicities as `A[1,1]A[3,2]^2`.
pub fn render_a_monomial(factors: &[((usize, i64), i64)]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors
        .iter()
        .map(|&((i, p), e)| if e == 1 { format!("A[{},{}]", i + 1, p) } else { format!("A[{},{}]^{e}", i + 1, p) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_render_round_trip() {
        let x = m("Y[1,2]^-1 Y[2,1]");
        assert_eq!(x.render(), "Y[2,1]Y[1,2]^-1");
        assert_eq!(m(&x.render()), x);
        assert_eq!(m("1"), Monomial::one());
        assert_eq!(m("Y_{1,0}Y_{2,1}^{-1}"), m("Y[1,0]Y[2,1]^-1"));
        assert!("Y[0,1]".parse::<Monomial>().is_err());
        assert!("X[1,1]".parse::<Monomial>().is_err());
    }

    #[test]
    fn a_monomials() {
        let a3: CartanDatum = "A3".parse().unwrap();
        assert_eq!(Monomial::a_monomial(&a3, 1, 1), m("Y[2,0]Y[2,2]Y[1,1]^-1Y[3,1]^-1"));
        let a1: CartanDatum = "A1".parse().unwrap();
        assert_eq!(Monomial::a_monomial(&a1, 0, 1), m("Y[1,0]Y[1,2]"));
    }

    #[test]
    fn nakajima_order_examples() {
        let d4: CartanDatum = "D4".parse().unwrap();
        let top = m("Y[1,0]Y[2,0]Y[3,5]Y[4,0]");
        let low = m("Y[3,1]");
        let dec = nakajima_decomposition(&d4, &low, &top).unwrap();
        assert_eq!(render_a_monomial(&dec), "A[1,1]A[2,1]A[4,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]");
        assert!(nakajima_leq(&d4, &top, &top));
        let a3: CartanDatum = "A3".parse().unwrap();
        assert!(!nakajima_leq(&a3, &m("Y[1,0]"), &m("Y[2,1]")));
        assert!(!nakajima_leq(&a3, &m("Y[2,1]"), &m("Y[1,0]")));
    }

    #[test]
    fn order_refines_nakajima() {
        let d5: CartanDatum = "D5".parse().unwrap();
        let x = m("Y[1,0]Y[3,1]Y[5,4]");
        for i in 0..5 {
            for p in -1..6 {
                let lower = x.div(&Monomial::a_monomial(&d5, i, p));
                assert!(lower < x);
            }
        }
    }

    fn arb() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(((0usize..3, -3i64..4), -2i64..3), 0..5).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #[test]
        fn order_is_translation_invariant(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).div(&b), a.clone());
            prop_assert_eq!(a.mul(&a.inv()), Monomial::one());
        }

        #[test]
        fn serde_and_text_round_trip(a in arb()) {
            let s = serde_json_round(&a);
            prop_assert_eq!(&s, &a);
            prop_assert_eq!(a.render().parse::<Monomial>().unwrap(), a);
        }
    }

    fn serde_json_round(a: &Monomial) -> Monomial {
        serde_json::from_str(&serde_json::to_string(a).unwrap()).unwrap()
    }
}
