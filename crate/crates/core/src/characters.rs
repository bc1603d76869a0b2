//! q-characters and (q,t)-characters.
//!
//! Fundamental characters come from the Frenkel–Mukhin algorithm and are
//! lifted verbatim when multiplicity free. Truncated Kirillov–Reshetikhin
//! characters come from the quantum T-system. Standard classes are ordered
//! products of fundamentals; simple classes are obtained from them by the
//! usual bar-inversion recursion.

use num_bigint::BigInt;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cartan::{format_root, CartanDatum};
use crate::error::{domain, Error, Result};
use crate::laurent::{HalfInt, HalfLaurent};
use crate::monomial::{nakajima_decomposition, Monomial};
use crate::qcartan::{ctilde_table, CtildeTable};
use crate::quiver::QuiverDatum;
use crate::torus::{Element, YElement, YTwist};

/// Monomials processed by one run of the Frenkel–Mukhin algorithm.
pub const FM_MONOMIAL_CAP: usize = 200_000;
/// Largest total degree accepted for standard and simple classes.
pub const DEGREE_CAP: i64 = 16;

/// Whether characters live in the full torus or in its truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Full,
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterKind {
    Fundamental,
    KirillovReshetikhin,
    Standard,
    Simple,
    Truncated,
}

/// A torus element tagged with what it is the character of.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterElement {
    pub kind: CharacterKind,
    pub label: Monomial,
    pub element: YElement,
}

/// A classical q-character: monomials with multiplicities.
pub type ClassicalCharacter = BTreeMap<Monomial, i64>;

/// One decomposition of a dimension vector into positive roots, with its
/// dominant monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominantPair {
    /// Multiplicity `a_k` of each `β_k`, in word order.
    pub multiplicities: Vec<i64>,
    pub monomial: Monomial,
    /// `top · m⁻¹` as `((i, p), n)` factors `A_{i,p}^n`, when it exists.
    pub a_factors: Option<Vec<((usize, i64), i64)>>,
    /// Roots of the decomposition, in display order.
    pub roots: Vec<Vec<i64>>,
}

impl DominantPair {
    pub fn render_decomposition(&self) -> String {
        self.roots.iter().map(|r| format!("({})", format_root(r))).collect::<Vec<_>>().join("+")
    }

    /// The A-monomial column, factors ordered by spectral parameter then vertex.
    pub fn render_a_factors(&self) -> Option<String> {
        let mut f = self.a_factors.clone()?;
        f.sort_by_key(|&((i, p), _)| (p, i));
        Some(crate::monomial::render_a_monomial(&f))
    }

    pub fn depth(&self) -> Option<i64> {
        self.a_factors.as_ref().map(|f| f.iter().map(|(_, n)| n).sum())
    }
}

/// Quiver-bound character computations with memo caches.
pub struct CharacterContext {
    quiver: QuiverDatum,
    table: Arc<CtildeTable>,
    twist: YTwist,
    fm_cache: Mutex<HashMap<(usize, i64), Arc<ClassicalCharacter>>>,
    kr_cache: Mutex<HashMap<(usize, i64, i64), YElement>>,
    simple_cache: Mutex<HashMap<(Mode, Monomial), YElement>>,
}

impl CharacterContext {
    pub fn new(quiver: QuiverDatum) -> Self {
        let table = ctilde_table(quiver.cartan());
        let twist = YTwist::new(table.clone());
        CharacterContext {
            quiver,
            table,
            twist,
            fm_cache: Mutex::new(HashMap::new()),
            kr_cache: Mutex::new(HashMap::new()),
            simple_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &QuiverDatum {
        &self.quiver
    }

    pub fn cartan(&self) -> &CartanDatum {
        self.quiver.cartan()
    }

    pub fn twist(&self) -> &YTwist {
        &self.twist
    }

    pub fn table(&self) -> &CtildeTable {
        &self.table
    }

    /// `a * b` in the quantum torus of the `Y` variables.
    pub fn mul(&self, a: &YElement, b: &YElement) -> YElement {
        a.mul(b, &self.twist)
    }

    fn check_vertex(&self, i: usize, p: i64) -> Result<()> {
        if i >= self.quiver.rank() {
            return domain(format!("vertex {} out of range", i + 1));
        }
        if (p - self.quiver.xi()[i]).rem_euclid(2) != 0 {
            return domain(format!("({}, {p}) is not a vertex of the repetition quiver", i + 1));
        }
        Ok(())
    }

    /// Classical q-character of the fundamental module `L(Y_{i,p})`.
    pub fn fm_classical(&self, i: usize, p: i64) -> Result<ClassicalCharacter> {
        self.check_vertex(i, p)?;
        let base = p.rem_euclid(2);
        let cached = self.fm_cache.lock().get(&(i, base)).cloned();
        let ch = match cached {
            Some(c) => c,
            None => {
                let c = Arc::new(frenkel_mukhin(self.cartan(), i, base)?);
                self.fm_cache.lock().entry((i, base)).or_insert(c).clone()
            }
        };
        Ok(ch.iter().map(|(m, &n)| (m.shift(p - base), n)).collect())
    }

    /// `F(Y_{i,p})`: the classical character lifted with coefficients 1.
    /// Refused when some monomial has multiplicity above one.
    pub fn fm_fundamental(&self, i: usize, p: i64) -> Result<YElement> {
        let ch = self.fm_classical(i, p)?;
        if let Some((m, n)) = ch.iter().find(|(_, &n)| n != 1) {
            return Err(Error::NotMultiplicityFree(format!(
                "monomial {} has multiplicity {n} in the q-character of L(Y[{},{p}])",
                m.render(),
                i + 1
            )));
        }
        Ok(Element::from_terms(ch.into_keys().map(|m| (m, HalfLaurent::one()))))
    }

    /// Keeps only monomials whose variables all lie in the slice.
    pub fn truncate(&self, x: &YElement) -> YElement {
        x.filter_keys(|m| m.all_vars(|i, p| self.quiver.in_slice(i, p)))
    }

    /// `(α(i,k), γ(i,k))` of the quantum T-system.
    pub fn tsystem_exponents(&self, i: usize, k: i64) -> Result<(HalfInt, HalfInt)> {
        if k < 1 {
            return domain("T-system index must be at least 1");
        }
        if i >= self.quiver.rank() {
            return domain(format!("vertex {} out of range", i + 1));
        }
        let a = -2 + self.table.get(i, i, 2 * k - 1) + self.table.get(i, i, 2 * k + 1);
        Ok((HalfInt(a), HalfInt(a + 2)))
    }

    /// Largest `s` with `W^{(i)}_{s,p}` in the truncated category.
    pub fn kr_max_length(&self, i: usize, p: i64) -> Result<i64> {
        if i >= self.quiver.rank() || !self.quiver.in_slice(i, p) {
            return domain(format!("({}, {p}) is not in the slice", i + 1));
        }
        Ok(1 + (self.quiver.xi()[i] - p) / 2)
    }

    /// Truncated character of the Kirillov–Reshetikhin module `W^{(i)}_{s,p}`.
    pub fn kr_truncated(&self, i: usize, s: i64, p: i64) -> Result<YElement> {
        let smax = self.kr_max_length(i, p)?;
        if s < 0 || s > smax {
            return domain(format!("length {s} out of range 0..={smax} at ({}, {p})", i + 1));
        }
        if s == 0 {
            return Ok(Element::monomial(Monomial::one()));
        }
        if let Some(x) = self.kr_cache.lock().get(&(i, s, p)) {
            return Ok(x.clone());
        }
        let x = if s == smax {
            Element::monomial(Monomial::from_exponents((0..s).map(|k| ((i, p + 2 * k), 1))))
        } else {
            let (alpha, gamma) = self.tsystem_exponents(i, s)?;
            let first = self.mul(&self.kr_truncated(i, s - 1, p + 2)?, &self.kr_truncated(i, s + 1, p)?);
            let mut second = Element::monomial(Monomial::one());
            for j in self.cartan().neighbors(i) {
                second = self.mul(&second, &self.kr_truncated(j, s, p + 1)?);
            }
            let rhs = first.shift_t(alpha.doubled()).add(&second.shift_t(gamma.doubled()));
            rhs.right_divide(&self.kr_truncated(i, s, p + 2)?, &self.twist)?
        };
        self.kr_cache.lock().insert((i, s, p), x.clone());
        Ok(x)
    }

    /// Checks the quantum T-system at `(i, s, p)` from independently cached pieces.
    pub fn verify_tsystem(&self, i: usize, s: i64, p: i64) -> Result<bool> {
        let (alpha, gamma) = self.tsystem_exponents(i, s)?;
        let lhs = self.mul(&self.kr_truncated(i, s, p)?, &self.kr_truncated(i, s, p + 2)?);
        let first = self.mul(&self.kr_truncated(i, s - 1, p + 2)?, &self.kr_truncated(i, s + 1, p)?);
        let mut second = Element::monomial(Monomial::one());
        for j in self.cartan().neighbors(i) {
            second = self.mul(&second, &self.kr_truncated(j, s, p + 1)?);
        }
        Ok(lhs == first.shift_t(alpha.doubled()).add(&second.shift_t(gamma.doubled())))
    }

    /// The character of `L(Y_{i,p})` in the requested torus.
    pub fn fundamental(&self, i: usize, p: i64, mode: Mode) -> Result<YElement> {
        match mode {
            Mode::Full => self.fm_fundamental(i, p),
            Mode::Truncated => match self.fm_fundamental(i, p) {
                Ok(x) => Ok(self.truncate(&x)),
                Err(Error::NotMultiplicityFree(_)) => self.kr_truncated(i, 1, p),
                Err(e) => Err(e),
            },
        }
    }

    fn check_label(&self, m: &Monomial, mode: Mode) -> Result<()> {
        if !m.is_dominant() {
            return domain(format!("{} is not dominant", m.render()));
        }
        if m.degree() > DEGREE_CAP {
            return Err(Error::ResourceCap(format!("degree of {} exceeds {DEGREE_CAP}", m.render())));
        }
        for ((i, p), _) in m.factors() {
            self.check_vertex(i, p)?;
            if mode == Mode::Truncated && !self.quiver.in_slice(i, p) {
                return domain(format!("Y[{},{p}] is not in the slice", i + 1));
            }
        }
        Ok(())
    }

    /// `[M(m)]_t` and `α(m)`: the product of fundamentals over decreasing
    /// `p` (vertex index increasing within a level), rescaled so that `m`
    /// has coefficient 1.
    pub fn standard_character(&self, m: &Monomial, mode: Mode) -> Result<(YElement, HalfInt)> {
        self.check_label(m, mode)?;
        let mut factors: Vec<((usize, i64), i64)> = m.factors().collect();
        factors.sort_by(|a, b| b.0 .1.cmp(&a.0 .1).then(a.0 .0.cmp(&b.0 .0)));
        let mut x = Element::monomial(Monomial::one());
        for ((i, p), e) in factors {
            let f = self.fundamental(i, p, mode)?;
            for _ in 0..e {
                x = self.mul(&x, &f);
            }
        }
        let c = x.coeff(m);
        let Some((1, e)) = c.as_unit() else {
            return Err(Error::Verification(format!(
                "coefficient {c} of {} in the standard product is not a power of t",
                m.render()
            )));
        };
        Ok((x.shift_t(-e), HalfInt(-e)))
    }

    /// `[L(m)]_t`: the bar-invariant element equal to `[M(m)]_t` modulo
    /// `Σ_{m'<m} t⁻¹ℤ[t⁻¹][M(m')]_t`.
    pub fn simple_character(&self, m: &Monomial, mode: Mode) -> Result<YElement> {
        self.check_label(m, mode)?;
        if m.is_one() {
            return Ok(Element::monomial(Monomial::one()));
        }
        if let Some(x) = self.simple_cache.lock().get(&(mode, m.clone())) {
            return Ok(x.clone());
        }
        let (mut x, _) = self.standard_character(m, mode)?;
        if x.lead().map(|(k, _)| k != m).unwrap_or(true) {
            return Err(Error::Verification(format!("{} is not the highest monomial of its standard class", m.render())));
        }
        loop {
            let mut found = None;
            for (k, c) in x.terms().rev() {
                if k == m || !k.is_dominant() {
                    continue;
                }
                let q = c.negative_part_for_bar()?;
                if !q.is_zero() {
                    found = Some((k.clone(), q));
                    break;
                }
            }
            let Some((k, q)) = found else { break };
            let lower = self.simple_character(&k, mode)?;
            x = x.sub(&lower.scale(&q));
        }
        if !x.is_bar_invariant() {
            return Err(Error::Verification(format!("simple class of {} is not bar invariant", m.render())));
        }
        self.simple_cache.lock().insert((mode, m.clone()), x.clone());
        Ok(x)
    }

    /// The expansion `[M(m)]_t = Σ P_{m,m'}(t) [L(m')]_t` over dominant `m' ≤ m`.
    pub fn standard_to_simple(&self, m: &Monomial, mode: Mode) -> Result<Vec<(Monomial, HalfLaurent)>> {
        let (mut x, _) = self.standard_character(m, mode)?;
        let mut out = vec![];
        loop {
            let next = x.terms().rev().find(|(k, _)| k.is_dominant()).map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { break };
            x = x.sub(&self.simple_character(&k, mode)?.scale(&c));
            out.push((k, c));
        }
        if !x.is_zero() {
            return Err(Error::Verification("standard class is not a combination of simple classes".into()));
        }
        Ok(out)
    }

    /// The `k` with `[L(m1)] * [L(m2)] = t^k [L(m1 m2)]`, if it exists.
    pub fn tensor_simple_check(&self, m1: &Monomial, m2: &Monomial, mode: Mode) -> Result<Option<HalfInt>> {
        let prod = self.mul(&self.simple_character(m1, mode)?, &self.simple_character(m2, mode)?);
        let m = m1.mul(m2);
        let simple = self.simple_character(&m, mode)?;
        let Some((1, e)) = prod.coeff(&m).as_unit() else { return Ok(None) };
        Ok((prod == simple.shift_t(e)).then_some(HalfInt(e)))
    }

    /// Decompositions of `d` into positive roots and their dominant monomials,
    /// ordered by depth below the top monomial.
    pub fn dominant_pairs(&self, d: &[i64]) -> Result<Vec<DominantPair>> {
        let n = self.quiver.rank();
        if d.len() != n || d.iter().any(|&x| x < 0) {
            return domain(format!("dimension vector must have {n} nonnegative entries"));
        }
        let r = self.quiver.num_positions();
        let word = self.quiver.adapted_word();
        let mut found = vec![];
        let mut a = vec![0i64; r];
        knapsack(&word.betas, 0, &mut d.to_vec(), &mut a, &mut found);
        let top = Monomial::from_exponents((0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            (self.quiver.phi_inverse(&e, 0).expect("simple roots lie in the slice"), d[i])
        }));
        let mut pairs: Vec<DominantPair> = found
            .into_iter()
            .map(|a| {
                let monomial = Monomial::from_exponents(a.iter().enumerate().map(|(k, &x)| (word.vertices[k], x)));
                let a_factors = nakajima_decomposition(self.cartan(), &monomial, &top);
                let mut roots: Vec<Vec<i64>> = vec![];
                for (k, &x) in a.iter().enumerate() {
                    for _ in 0..x {
                        roots.push(word.betas[k].clone());
                    }
                }
                roots.sort_by(|x, y| {
                    let (hx, hy) = (x.iter().sum::<i64>(), y.iter().sum::<i64>());
                    hy.cmp(&hx).then(y.cmp(x))
                });
                DominantPair { multiplicities: a, monomial, a_factors, roots }
            })
            .collect();
        pairs.sort_by(|x, y| {
            x.depth().unwrap_or(i64::MAX).cmp(&y.depth().unwrap_or(i64::MAX)).then(y.roots.cmp(&x.roots))
        });
        Ok(pairs)
    }
}

fn knapsack(betas: &[Vec<i64>], k: usize, rest: &mut Vec<i64>, a: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if rest.iter().all(|&x| x == 0) {
        out.push(a.clone());
        return;
    }
    if k == betas.len() {
        return;
    }
    knapsack(betas, k + 1, rest, a, out);
    let mut used = 0;
    while rest.iter().zip(&betas[k]).all(|(x, b)| x >= b) {
        for (x, b) in rest.iter_mut().zip(&betas[k]) {
            *x -= b;
        }
        used += 1;
        a[k] = used;
        knapsack(betas, k + 1, rest, a, out);
    }
    for (x, b) in rest.iter_mut().zip(&betas[k]) {
        *x += used * b;
    }
    a[k] = 0;
}

/// Expansion of the `sl_2` q-character at vertex `j` of a `j`-dominant
/// monomial, as multiplicities of products of `A_{j,b}^{-1}`.
fn sl2_expansion(cartan: &CartanDatum, m: &Monomial, j: usize) -> BTreeMap<Monomial, i64> {
    let mut points: BTreeMap<i64, i64> = m.factors().filter(|((i, _), _)| *i == j).map(|((_, p), e)| (p, e)).collect();
    let mut out: BTreeMap<Monomial, i64> = BTreeMap::from([(Monomial::one(), 1)]);
    while let Some((&start, _)) = points.iter().next() {
        let mut len = 0;
        while points.get(&(start + 2 * len)).copied().unwrap_or(0) > 0 {
            let e = points.get_mut(&(start + 2 * len)).unwrap();
            *e -= 1;
            if *e == 0 {
                points.remove(&(start + 2 * len));
            }
            len += 1;
        }
        // string {start, ..., start+2len-2}: Σ_l Π_{t=1..l} A_{j, start+2len-2t+1}^{-1}
        let mut string_terms = vec![Monomial::one()];
        let mut acc = Monomial::one();
        for t in 1..=len {
            acc = acc.div(&Monomial::a_monomial(cartan, j, start + 2 * len - 2 * t + 1));
            string_terms.push(acc.clone());
        }
        let mut next = BTreeMap::new();
        for (x, c) in &out {
            for s in &string_terms {
                *next.entry(x.mul(s)).or_insert(0) += c;
            }
        }
        out = next;
    }
    out
}

/// Frenkel–Mukhin algorithm for `L(Y_{i,p})`.
pub fn frenkel_mukhin(cartan: &CartanDatum, i: usize, p: i64) -> Result<ClassicalCharacter> {
    let n = cartan.rank();
    let h = cartan.coxeter_number() as i64;
    // monomial -> (multiplicity, colours)
    let mut state: BTreeMap<Monomial, (i64, Vec<i64>)> = BTreeMap::new();
    state.insert(Monomial::y(i, p), (1, vec![0; n]));
    let mut cursor: Option<Monomial> = None;
    loop {
        let next = match &cursor {
            None => state.keys().next_back().cloned(),
            Some(c) => state.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
        };
        let Some(m) = next else { break };
        if state.len() > FM_MONOMIAL_CAP {
            return Err(Error::ResourceCap(format!("more than {FM_MONOMIAL_CAP} monomials")));
        }
        if !m.all_vars(|_, q| q >= p && q <= p + h) {
            return Err(Error::Verification(format!("monomial {} leaves the window [{p}, {}]", m.render(), p + h)));
        }
        let (s, colours) = state[&m].clone();
        for j in 0..n {
            if m.is_j_dominant(j) {
                let k = s - colours[j];
                if k < 0 {
                    return Err(Error::Verification(format!("colour {} exceeds multiplicity at {}", j + 1, m.render())));
                }
                if k == 0 {
                    continue;
                }
                for (a, c) in sl2_expansion(cartan, &m, j) {
                    let target = m.mul(&a);
                    let entry = state.entry(target).or_insert_with(|| (0, vec![0; n]));
                    entry.1[j] += k * c;
                    entry.0 = entry.0.max(entry.1[j]);
                }
            } else if colours[j] != s {
                return Err(Error::Verification(format!(
                    "algorithm fails at {}: colour {} is {} but multiplicity is {s}",
                    m.render(),
                    j + 1,
                    colours[j]
                )));
            }
        }
        cursor = Some(m);
    }
    Ok(state.into_iter().map(|(m, (s, _))| (m, s)).collect())
}

/// Sum of the coefficients of a character at `t = 1`, over all monomials.
pub fn dimension_at_one(x: &YElement) -> BigInt {
    x.at_t_equals_one().values().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(name: &str, xi: Vec<i64>) -> CharacterContext {
        let c: CartanDatum = name.parse().unwrap();
        CharacterContext::new(QuiverDatum::from_xi(c, xi).unwrap())
    }

    fn y(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn el(terms: &[(&str, &[(i64, i64)])]) -> YElement {
        Element::from_terms(terms.iter().map(|(m, c)| (y(m), HalfLaurent::from_terms(c.iter().copied()))))
    }

    #[test]
    fn sl2_fundamental() {
        let c = ctx("A1", vec![0]);
        let f = c.fm_fundamental(0, 0).unwrap();
        assert_eq!(f, el(&[("Y[1,0]", &[(0, 1)]), ("Y[1,2]^-1", &[(0, 1)])]));
    }

    #[test]
    fn a3_fundamental_and_truncation() {
        let c = ctx("A3", vec![2, 3, 2]);
        let f = c.fm_fundamental(0, 0).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.contains(&y("Y[3,4]^-1")));
        let t = c.truncate(&f);
        let one = &[(0, 1)][..];
        assert_eq!(t, el(&[("Y[1,0]", one), ("Y[1,2]^-1Y[2,1]", one), ("Y[2,3]^-1Y[3,2]", one)]));
    }

    #[test]
    fn exponents() {
        let a1 = ctx("A1", vec![0]);
        for k in 1..6 {
            assert_eq!(a1.tsystem_exponents(0, k).unwrap(), (HalfInt(-2), HalfInt(0)));
        }
        let a3 = ctx("A3", vec![2, 3, 2]);
        assert_eq!(a3.tsystem_exponents(0, 1).unwrap(), (HalfInt(-1), HalfInt(1)));
    }

    #[test]
    fn kr_examples() {
        let c = ctx("A3", vec![2, 3, 2]);
        let one = &[(0, 1)][..];
        assert_eq!(c.kr_truncated(1, 1, 1).unwrap(), el(&[("Y[2,1]", one), ("Y[1,2]Y[2,3]^-1Y[3,2]", one)]));
        assert_eq!(
            c.kr_truncated(2, 1, 0).unwrap(),
            el(&[("Y[3,0]", one), ("Y[3,2]^-1Y[2,1]", one), ("Y[2,3]^-1Y[1,2]", one)])
        );
        assert_eq!(c.kr_truncated(0, 2, 0).unwrap(), el(&[("Y[1,0]Y[1,2]", one)]));
        assert!(c.kr_truncated(0, 3, 0).is_err());
        assert!(c.kr_truncated(0, 1, 4).is_err());
    }

    #[test]
    fn sl2_standard_minus_simple() {
        let c = ctx("A1", vec![2]);
        let m = y("Y[1,0]Y[1,2]");
        let (std, alpha) = c.standard_character(&m, Mode::Full).unwrap();
        assert_eq!(std.coeff(&m), HalfLaurent::one());
        assert!(alpha.0 != 0 || std.coeff(&Monomial::one()) != HalfLaurent::zero());
        let simple = c.simple_character(&m, Mode::Full).unwrap();
        let diff = std.sub(&simple);
        assert_eq!(diff, el(&[("1", &[(-2, 1)])]));
        assert_eq!(
            c.standard_to_simple(&m, Mode::Full).unwrap(),
            vec![(m.clone(), HalfLaurent::one()), (Monomial::one(), HalfLaurent::t_half(-2))]
        );
        assert_eq!(c.tensor_simple_check(&y("Y[1,0]"), &y("Y[1,2]"), Mode::Full).unwrap(), None);
    }

    #[test]
    fn minuscule_simple_is_fundamental() {
        let c = ctx("A3", vec![2, 3, 2]);
        for (i, p) in [(0, 0), (1, 1), (2, 2)] {
            let f = c.fm_fundamental(i, p).unwrap();
            assert_eq!(c.simple_character(&Monomial::y(i, p), Mode::Full).unwrap(), f);
        }
    }

    #[test]
    fn d4_pairs() {
        let c = ctx("D4", vec![4, 4, 5, 4]);
        let pairs = c.dominant_pairs(&[1, 1, 1, 1]).unwrap();
        let rows: Vec<(String, String)> = pairs.iter().map(|p| (p.render_decomposition(), p.monomial.render())).collect();
        let expected = [
            ("(α1)+(α2)+(α3)+(α4)", "Y[1,0]Y[2,0]Y[4,0]Y[3,5]"),
            ("(α1+α3)+(α2)+(α4)", "Y[2,0]Y[4,0]Y[1,4]"),
            ("(α2+α3)+(α1)+(α4)", "Y[1,0]Y[4,0]Y[2,4]"),
            ("(α3+α4)+(α1)+(α2)", "Y[1,0]Y[2,0]Y[4,4]"),
            ("(α1+α2+α3)+(α4)", "Y[4,0]Y[4,2]"),
            ("(α1+α3+α4)+(α2)", "Y[2,0]Y[2,2]"),
            ("(α2+α3+α4)+(α1)", "Y[1,0]Y[1,2]"),
            ("(α1+α2+α3+α4)", "Y[3,1]"),
        ];
        let expected: Vec<(String, String)> = expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(rows, expected);
        assert_eq!(pairs.iter().map(|p| p.depth().unwrap()).collect::<Vec<_>>(), vec![0, 5, 5, 5, 8, 8, 8, 9]);
    }
}
