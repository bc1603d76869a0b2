//! The twisted derived Hall algebra `DH(Q)`: elements are combinations of
//! normal-ordered words `z_{X_1}^{[m_1]} ⋯ z_{X_s}^{[m_s]}` with
//! `m_1 > ⋯ > m_s`, multiplied by rewriting adjacent pairs.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use qgroth::error::{Error, Result};

use crate::hall::HallContext;
use crate::rep::IsoClass;
use crate::scalar::ScalarQ;

/// A word of `(degree, isoclass)` letters.
pub type Word = Vec<(i64, IsoClass)>;

/// Rewriting depth after which normal ordering is abandoned.
const MAX_REWRITE_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DHElement {
    q: u8,
    terms: BTreeMap<Word, ScalarQ>,
}

impl DHElement {
    pub fn zero(q: u8) -> Self {
        DHElement { q, terms: BTreeMap::new() }
    }

    pub fn one(q: u8) -> Self {
        Self::term(q, vec![], ScalarQ::one(q))
    }

    pub fn term(q: u8, word: Word, c: ScalarQ) -> Self {
        let mut out = Self::zero(q);
        out.add_term(word, &c);
        out
    }

    /// `z_X^{[m]}`; the zero class gives the unit.
    pub fn generator(q: u8, m: i64, x: IsoClass) -> Self {
        let word = if x.is_zero() { vec![] } else { vec![(m, x)] };
        Self::term(q, word, ScalarQ::one(q))
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ScalarQ)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> ScalarQ {
        self.terms.get(word).cloned().unwrap_or_else(|| ScalarQ::zero(self.q))
    }

    fn add_term(&mut self, word: Word, c: &ScalarQ) {
        let sum = &self.coefficient(&word) + c;
        if sum.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ScalarQ::from_int(self.q, -1)))
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = Self::zero(self.q);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// `2·z_(α1)^[1] z_(α2)^[0] + 1/2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| {
                if w.is_empty() {
                    format!("({c})")
                } else {
                    let word: Vec<String> = w.iter().map(|(m, x)| format!("z_{}^[{m}]", x.render())).collect();
                    format!("({c})·{}", word.join(" "))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn is_normal(word: &Word) -> bool {
    word.windows(2).all(|p| p[0].0 > p[1].0)
}

impl HallContext {
    /// `z_X^{[m]} z_Y^{[p]}` for a single pair of letters, as a sum of words of length ≤ 2.
    fn rewrite_pair(&self, (m, x): &(i64, IsoClass), (p, y): &(i64, IsoClass)) -> Result<Vec<(Word, ScalarQ)>> {
        let q = self.q();
        let u = |k: i64| ScalarQ::u_pow(q, k);
        let word = |letters: Vec<(i64, IsoClass)>| -> Word { letters.into_iter().filter(|(_, c)| !c.is_zero()).collect() };
        if p == m {
            let twist = u(self.euler(y, x));
            return Ok(self
                .hall_expansion(x, y)?
                .into_iter()
                .map(|(w, g)| (word(vec![(*m, w)]), &twist * &ScalarQ::from_int(q, g as i64)))
                .collect());
        }
        if *p == m + 1 {
            let outer = -self.euler(y, x);
            return Ok(self
                .toen_expansion(x, y)?
                .into_iter()
                .map(|(t, w, gamma)| {
                    let c = ScalarQ::from_parts(q, gamma, BigRational::from_integer(BigInt::from(0)));
                    let e = outer - self.euler(&w, &t);
                    (word(vec![(m + 1, t), (*m, w)]), &u(e) * &c)
                })
                .collect());
        }
        if *p > m + 1 {
            let sign = if (p - m) % 2 == 0 { 1 } else { -1 };
            return Ok(vec![(vec![(*p, y.clone()), (*m, x.clone())], u(sign * self.symmetric(x, y)))]);
        }
        Err(Error::Domain("letters are already in normal order".into()))
    }

    /// Normal form of a word.
    pub fn normalize(&self, word: &Word) -> Result<DHElement> {
        self.normalize_at(word, 0)
    }

    fn normalize_at(&self, word: &Word, depth: usize) -> Result<DHElement> {
        let q = self.q();
        let word: Word = word.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        if is_normal(&word) {
            return Ok(DHElement::term(q, word, ScalarQ::one(q)));
        }
        if let Some(e) = self.normal_forms.lock().get(&word) {
            return Ok(e.clone());
        }
        if depth > MAX_REWRITE_DEPTH {
            return Err(Error::ResourceCap("normal ordering did not terminate".into()));
        }
        let k = word.windows(2).position(|p| p[0].0 <= p[1].0).unwrap();
        let mut out = DHElement::zero(q);
        for (middle, c) in self.rewrite_pair(&word[k], &word[k + 1])? {
            let next: Word = word[..k].iter().cloned().chain(middle).chain(word[k + 2..].iter().cloned()).collect();
            out = out.add(&self.normalize_at(&next, depth + 1)?.scale(&c));
        }
        self.normal_forms.lock().insert(word, out.clone());
        Ok(out)
    }

    pub fn dh_product(&self, a: &DHElement, b: &DHElement) -> Result<DHElement> {
        let q = self.q();
        let mut out = DHElement::zero(q);
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let word: Word = wa.iter().chain(wb).cloned().collect();
                out = out.add(&self.normalize(&word)?.scale(&(ca * cb)));
            }
        }
        Ok(out)
    }

    pub fn dh_product_all(&self, factors: &[DHElement]) -> Result<DHElement> {
        factors.iter().try_fold(DHElement::one(self.q()), |acc, f| self.dh_product(&acc, f))
    }

    /// `z_{i,m} = z_{S_i}^{[m]}`.
    pub fn z(&self, i: usize, m: i64) -> DHElement {
        DHElement::generator(self.q(), m, IsoClass::simple(self.rank(), i))
    }

    /// Checks the presentation of `DH(Q)` by the `z_{i,m}` on the given degrees.
    pub fn verify_dh_relations(&self, levels: RangeInclusive<i64>) -> Result<DhRelationReport> {
        let q = self.q();
        let n = self.rank();
        let (lo, hi) = (*levels.start(), *levels.end());
        let u = |k: i64| ScalarQ::u_pow(q, k);
        let cmat = self.quiver().cartan().cartan_matrix().to_vec();
        let mul = |fs: &[&DHElement]| -> Result<DHElement> {
            self.dh_product_all(&fs.iter().map(|&f| f.clone()).collect::<Vec<_>>())
        };
        let mut failures = vec![];
        let mut checked = 0;
        let mut record = |relation: &str, i: usize, j: usize, m: i64, p: i64, residual: DHElement| {
            checked += 1;
            if !residual.is_zero() {
                failures.push(DhRelationFailure { relation: relation.into(), i, j, m, p, residual: residual.render() });
            }
        };
        let serre = &u(1) + &u(-1);
        for m in lo..=hi {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let (zi, zj) = (self.z(i, m), self.z(j, m));
                    let residual = match cmat[i][j] {
                        0 => mul(&[&zi, &zj])?.sub(&mul(&[&zj, &zi])?),
                        -1 => mul(&[&zi, &zi, &zj])?
                            .sub(&mul(&[&zi, &zj, &zi])?.scale(&serre))
                            .add(&mul(&[&zj, &zi, &zi])?),
                        _ => continue,
                    };
                    record("H1", i, j, m, m, residual);
                }
            }
        }
        let constant = u(-1).div(&(&u(2) - &ScalarQ::one(q)))?;
        for m in lo..hi {
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (self.z(i, m), self.z(j, m + 1));
                    let mut rhs = mul(&[&b, &a])?.scale(&u(-cmat[i][j]));
                    if i == j {
                        rhs = rhs.add(&DHElement::one(q).scale(&constant));
                    }
                    record("H2", i, j, m, m + 1, mul(&[&a, &b])?.sub(&rhs));
                }
            }
        }
        for m in lo..=hi {
            for p in m + 2..=hi {
                let sign = if (p - m) % 2 == 0 { 1 } else { -1 };
                for i in 0..n {
                    for j in 0..n {
                        let (a, b) = (self.z(i, m), self.z(j, p));
                        let residual = mul(&[&a, &b])?.sub(&mul(&[&b, &a])?.scale(&u(sign * cmat[i][j])));
                        record("H3", i, j, m, p, residual);
                    }
                }
            }
        }
        Ok(DhRelationReport {
            type_name: self.quiver().cartan().name(),
            q,
            arrows: self.quiver().arrows().iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
            levels: (lo, hi),
            checked,
            failures,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhRelationFailure {
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub m: i64,
    pub p: i64,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhRelationReport {
    pub type_name: String,
    pub q: u8,
    /// 1-based arrows `a → b`.
    pub arrows: Vec<(usize, usize)>,
    pub levels: (i64, i64),
    pub checked: usize,
    pub failures: Vec<DhRelationFailure>,
}

impl DhRelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgroth::{CartanDatum, QuiverDatum};

    fn a2(q: u8) -> HallContext {
        let c: CartanDatum = "A2".parse().unwrap();
        HallContext::new(QuiverDatum::from_arrows(c, vec![(0, 1)]).unwrap(), q).unwrap()
    }

    #[test]
    fn same_degree_product_is_twisted_ringel() {
        let h = a2(3);
        let (z1, z2) = (h.z(0, 0), h.z(1, 0));
        // S_2 ⊂ W with quotient S_1 exists only for the indecomposable and the split module
        let p = h.dh_product(&z2, &z1).unwrap();
        assert_eq!(p.len(), 2);
        let split = vec![(0, IsoClass::simple(2, 0).add(&IsoClass::simple(2, 1)))];
        let ind = vec![(0, IsoClass::indecomposable(&[1, 1]))];
        // ⟨S_1, S_2⟩ = −1
        assert_eq!(p.coefficient(&split), ScalarQ::u_pow(3, -1));
        assert_eq!(p.coefficient(&ind), ScalarQ::u_pow(3, -1));
        let r = h.dh_product(&z1, &z2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(&split), ScalarQ::one(3));
    }

    #[test]
    fn adjacent_degree_constant() {
        for q in [2u8, 3, 4] {
            let h = a2(q);
            let p = h.dh_product(&h.z(0, 0), &h.z(0, 1)).unwrap();
            let u = |k| ScalarQ::u_pow(q, k);
            assert_eq!(p.coefficient(&vec![]), u(-1).div(&(&u(2) - &ScalarQ::one(q))).unwrap());
            assert_eq!(p.coefficient(&vec![(1, IsoClass::simple(2, 0)), (0, IsoClass::simple(2, 0))]), u(-2));
        }
    }

    #[test]
    fn far_degrees_commute_up_to_power() {
        let h = a2(2);
        let p = h.dh_product(&h.z(0, 0), &h.z(1, 3)).unwrap();
        // (α1, α2) = −1 and p − m = 3
        assert_eq!(p.coefficient(&vec![(3, IsoClass::simple(2, 1)), (0, IsoClass::simple(2, 0))]), ScalarQ::u_pow(2, 1));
    }
}
