//! The quantum-group side: the quantum torus generated by flag minors,
//! rescaled generators `X_k`, quantum minors `D(b, d)` from the
//! determinantal identities, dual PBW and dual canonical bases, and the
//! isomorphism `Φ` with the truncated quantum torus of `Y` variables.

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::cartan::{CartanDatum, Weight};
use crate::characters::{CharacterContext, Mode};
use crate::error::{domain, Error, Result};
use crate::laurent::HalfLaurent;
use crate::monomial::Monomial;
use crate::quiver::QuiverDatum;
use crate::torus::{Element, FormTwist, Twist, XElement, XVec, YElement};

/// Iteration cap of the dual canonical recursion, per weight space.
pub const CANONICAL_STEP_CAP: usize = 10_000;

/// `N(γ) = (γ,γ)/2 − deg γ` and `deg γ`, for `γ` in simple-root coordinates.
pub fn n_gamma(cartan: &CartanDatum, gamma: &[i64]) -> (i64, i64) {
    let c = cartan.cartan_matrix();
    let mut norm = 0;
    for (i, &x) in gamma.iter().enumerate() {
        for (j, &y) in gamma.iter().enumerate() {
            norm += x * c[i][j] * y;
        }
    }
    let deg: i64 = gamma.iter().sum();
    (norm / 2 - deg, deg)
}

/// One row of the comparison between simple classes and the rescaled dual
/// canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainRow {
    pub multiplicities: Vec<i64>,
    pub monomial: Monomial,
    pub standard_matches: bool,
    pub simple_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainReport {
    pub degree_bound: i64,
    pub rows: Vec<MainRow>,
}

impl MainReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.standard_matches && r.simple_matches)
    }
}

/// A failed quantum Serre relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreWitness {
    pub i: usize,
    pub j: usize,
    pub side: String,
    pub residual: String,
}

pub struct QuantumGroupSide {
    quiver: QuiverDatum,
    x_twist: FormTwist,
    d_twist: FormTwist,
    minors: Mutex<HashMap<(usize, usize), XElement>>,
    canonical: Mutex<HashMap<Vec<i64>, XElement>>,
}

impl QuantumGroupSide {
    pub fn new(quiver: QuiverDatum) -> Result<Self> {
        let r = quiver.num_positions();
        let cartan = quiver.cartan();
        let mut m = vec![vec![0; r]; r];
        let mut l = vec![vec![0; r]; r];
        for k in 1..=r {
            for s in k + 1..=r {
                let bb = quiver.root_scalar(quiver.beta(k), quiver.beta(s));
                m[k - 1][s - 1] = -bb;
                m[s - 1][k - 1] = bb;
                let (ik, is) = (quiver.letter(k), quiver.letter(s));
                let left = &cartan.fundamental(ik) - quiver.mu(k, ik);
                let right = &cartan.fundamental(is) + quiver.mu(s, is);
                let mu = cartan.scalar_product(&left, &right)?;
                l[k - 1][s - 1] = mu;
                l[s - 1][k - 1] = -mu;
            }
        }
        Ok(QuantumGroupSide {
            quiver,
            x_twist: FormTwist::new(m),
            d_twist: FormTwist::new(l),
            minors: Mutex::new(HashMap::new()),
            canonical: Mutex::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &QuiverDatum {
        &self.quiver
    }

    pub fn cartan(&self) -> &CartanDatum {
        self.quiver.cartan()
    }

    pub fn rank(&self) -> usize {
        self.quiver.num_positions()
    }

    /// `X_k X_l = v^{M_kl} X_l X_k`, with `M_kl = −(β_k, β_l)` for `k < l`.
    pub fn x_commutation(&self) -> &[Vec<i64>] {
        &self.x_twist.commutation
    }

    /// `D(0,k) D(0,l) = v^{L_kl} D(0,l) D(0,k)`, with
    /// `L_kl = (ϖ_{i_k} − λ_k, ϖ_{i_l} + λ_l)` for `k < l`.
    pub fn flag_commutation(&self) -> &[Vec<i64>] {
        &self.d_twist.commutation
    }

    pub fn x_twist(&self) -> &FormTwist {
        &self.x_twist
    }

    pub fn mul(&self, a: &XElement, b: &XElement) -> XElement {
        a.mul(b, &self.x_twist)
    }

    fn one(&self) -> XElement {
        Element::monomial(XVec::zero(self.rank()))
    }

    fn scalar(&self, a: &Weight, b: &Weight) -> i64 {
        self.cartan().scalar_product(a, b).expect("one argument lies in the root lattice")
    }

    /// Doubled exponent `e_k` in `X_k = v^{e_k/2} D(0,k) D(0,k⁻)⁻¹`.
    pub fn rescaling_exponent(&self, k: usize) -> i64 {
        let i = self.quiver.letter(k);
        let km = self.quiver.kminus(k, None);
        self.rescaling_exponent_with(k, km, i)
    }

    fn rescaling_exponent_with(&self, k: usize, previous: usize, i: usize) -> i64 {
        let beta = self.quiver.beta(k);
        let diff = &self.cartan().fundamental(i) - self.quiver.mu(previous, i);
        n_gamma(self.cartan(), beta).0 + 2 * self.cartan().pair_root(beta, &diff)
    }

    /// The rescaling exponent with the offset `k − n` in place of `k⁻`
    /// (index clamped to 0), for comparison.
    pub fn rescaling_exponent_offset(&self, k: usize) -> i64 {
        let i = self.quiver.letter(k);
        let n = self.quiver.rank();
        let previous = k.saturating_sub(n);
        let diff = &self.cartan().fundamental(i) - self.quiver.mu(previous, i);
        let beta = self.quiver.beta(k);
        n_gamma(self.cartan(), beta).0 + 2 * self.cartan().pair_root(beta, &diff)
    }

    /// `σ(X_k) = X_k`, checked by writing `X_k` in the torus of flag minors,
    /// where `σ(D(0,k)) = v^{N(ϖ_{i_k} − λ_k)} D(0,k)`.
    pub fn sigma_fixes_generator(&self, k: usize, doubled_exp: i64) -> Result<bool> {
        let r = self.rank();
        let dk = Element::monomial(XVec::unit(r, k - 1));
        let km = self.quiver.kminus(k, None);
        let inv = if km == 0 {
            Element::monomial(XVec::zero(r))
        } else {
            Element::monomial(XVec::unit(r, km - 1)).invert_term(&self.d_twist)?
        };
        let x = dk.mul(&inv, &self.d_twist).shift_t(doubled_exp);
        let norms: Vec<i64> = (1..=r)
            .map(|s| {
                let i = self.quiver.letter(s);
                let gamma = &self.cartan().fundamental(i) - self.quiver.mu(s, i);
                let coords = self.cartan().root_coords(&gamma).expect("ϖ − λ lies in the root lattice");
                n_gamma(self.cartan(), &coords).0
            })
            .collect();
        let sigma = Element::from_terms(x.terms().map(|(a, c)| {
            let shift: i64 = a.0.iter().zip(&norms).map(|(x, n)| x * n).sum();
            (a.clone(), c.bar().shift(2 * shift))
        }));
        Ok(sigma == x)
    }

    /// `D(0,k)` in the `X` basis.
    pub fn flag_minor(&self, k: usize) -> XElement {
        let r = self.rank();
        if k == 0 {
            return self.one();
        }
        let km = self.quiver.kminus(k, None);
        let xk = Element::monomial(XVec::unit(r, k - 1)).shift_t(-self.rescaling_exponent(k));
        self.mul(&xk, &self.flag_minor(km))
    }

    fn check_minor(&self, b: usize, d: usize) -> Result<()> {
        let r = self.rank();
        if d > r || b > d {
            return domain(format!("minor D({b},{d}) needs 0 ≤ b ≤ d ≤ {r}"));
        }
        if b > 0 && self.quiver.letter(b) != self.quiver.letter(d) {
            return domain(format!("minor D({b},{d}) needs equal letters"));
        }
        Ok(())
    }

    /// `D(b, d)` in the `X` basis, from the determinantal identities.
    pub fn minor(&self, b: usize, d: usize) -> Result<XElement> {
        self.check_minor(b, d)?;
        if b == d {
            return Ok(self.one());
        }
        if b == 0 {
            return Ok(self.flag_minor(d));
        }
        if let Some(x) = self.minors.lock().get(&(b, d)) {
            return Ok(x.clone());
        }
        let q = &self.quiver;
        let i = q.letter(b);
        let (bm, dm) = (q.kminus(b, None), q.kminus(d, None));
        let a = self.scalar(q.mu(d, i), &(q.mu(bm, i) - q.mu(dm, i)));
        let bb = self.scalar(q.mu(dm, i), &(q.mu(bm, i) - q.mu(d, i)));
        let nbrs = self.cartan().neighbors(i);
        let mut c = 0;
        for (x, &j) in nbrs.iter().enumerate() {
            for &k in &nbrs[x + 1..] {
                c += self.scalar(q.mu(d, j), &(q.mu(b, k) - q.mu(d, k)));
            }
        }
        let first = self.mul(&self.minor(b, dm)?, &self.minor(bm, d)?).shift_t(2 * (bb - 1));
        let mut second = self.one();
        for &j in &nbrs {
            second = self.mul(&second, &self.minor(q.kminus(b, Some(j)), q.kminus(d, Some(j)))?);
        }
        let rhs = first.add(&second.shift_t(2 * c)).shift_t(-2 * a);
        let x = rhs.right_divide(&self.minor(bm, dm)?, &self.x_twist)?;
        self.minors.lock().insert((b, d), x.clone());
        Ok(x)
    }

    /// The exponents `(A, B, C)` of the identity at `(b, d)`.
    pub fn identity_exponents(&self, b: usize, d: usize) -> Result<(i64, i64, i64)> {
        self.check_minor(b, d)?;
        if b == 0 || b == d {
            return domain("exponents are defined for 1 ≤ b < d");
        }
        let q = &self.quiver;
        let i = q.letter(b);
        let (bm, dm) = (q.kminus(b, None), q.kminus(d, None));
        let a = self.scalar(q.mu(d, i), &(q.mu(bm, i) - q.mu(dm, i)));
        let bb = self.scalar(q.mu(dm, i), &(q.mu(bm, i) - q.mu(d, i)));
        let nbrs = self.cartan().neighbors(i);
        let mut c = 0;
        for (x, &j) in nbrs.iter().enumerate() {
            for &k in &nbrs[x + 1..] {
                c += self.scalar(q.mu(d, j), &(q.mu(b, k) - q.mu(d, k)));
            }
        }
        Ok((a, bb, c))
    }

    /// `β(𝐚) = Σ a_k β_k`, in simple-root coordinates.
    pub fn weight(&self, a: &[i64]) -> Vec<i64> {
        let mut w = vec![0; self.quiver.rank()];
        for (k, &x) in a.iter().enumerate() {
            for (wi, b) in w.iter_mut().zip(self.quiver.beta(k + 1)) {
                *wi += x * b;
            }
        }
        w
    }

    /// `E*(β_k) = D(k⁻, k)`.
    pub fn root_vector(&self, k: usize) -> Result<XElement> {
        self.minor(self.quiver.kminus(k, None), k)
    }

    fn check_index(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.rank() || a.iter().any(|&x| x < 0) {
            return domain(format!("PBW index must have {} nonnegative entries", self.rank()));
        }
        Ok(())
    }

    /// `E*(𝐚) = v^{−Σ a_k(a_k−1)/2} E*(β_1)^{a_1} ⋯ E*(β_r)^{a_r}`.
    pub fn dual_pbw(&self, a: &[i64]) -> Result<XElement> {
        self.check_index(a)?;
        let mut x = self.one();
        let mut shift = 0;
        for (k, &e) in a.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let f = self.root_vector(k + 1)?;
            for _ in 0..e {
                x = self.mul(&x, &f);
            }
            shift += e * (e - 1) / 2;
        }
        Ok(x.shift_t(-2 * shift))
    }

    /// `Ẽ*(𝐚) = v^{N(β(𝐚))/2} E*(𝐚)`.
    pub fn rescaled_dual_pbw(&self, a: &[i64]) -> Result<XElement> {
        let n = n_gamma(self.cartan(), &self.weight(a)).0;
        Ok(self.dual_pbw(a)?.shift_t(n))
    }

    /// PBW indices of the weight space `β(𝐜) = γ`.
    pub fn weight_space(&self, gamma: &[i64]) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut out = vec![];
        let mut a = vec![0; r];
        let betas: Vec<Vec<i64>> = (1..=r).map(|k| self.quiver.beta(k).to_vec()).collect();
        pbw_knapsack(&betas, 0, &mut gamma.to_vec(), &mut a, &mut out);
        out.sort_by(|x, y| XVec(y.clone()).cmp(&XVec(x.clone())));
        out
    }

    /// `B̃*(𝐚) = v^{N(β(𝐚))/2} B*(𝐚)`: the σ-invariant element of
    /// `Ẽ*(𝐚) + Σ_{𝐜≠𝐚} v⁻¹ℤ[v⁻¹] Ẽ*(𝐜)`.
    pub fn rescaled_dual_canonical(&self, a: &[i64]) -> Result<XElement> {
        self.check_index(a)?;
        if let Some(x) = self.canonical.lock().get(a) {
            return Ok(x.clone());
        }
        let target = XVec(a.to_vec());
        let gamma = self.weight(a);
        let mut x = self.rescaled_dual_pbw(a)?;
        match x.lead() {
            Some((k, c)) if *k == target && c.is_one() => {}
            _ => return Err(Error::Verification(format!("leading term of the dual PBW vector {a:?} is not X^a"))),
        }
        let mut steps = 0;
        loop {
            let found = x
                .terms()
                .rev()
                .find(|(k, c)| **k != target && !c.is_bar_invariant())
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((c_idx, coeff)) = found else { break };
            if !c_idx.is_nonnegative() || self.weight(&c_idx.0) != gamma {
                return Err(Error::Verification(format!(
                    "non-invariant term X^{:?} is not a PBW index of weight {gamma:?}",
                    c_idx.0
                )));
            }
            let q = coeff.negative_part_for_bar()?;
            x = x.sub(&self.rescaled_dual_canonical(&c_idx.0)?.scale(&q));
            steps += 1;
            if steps > CANONICAL_STEP_CAP {
                return Err(Error::ResourceCap("dual canonical recursion did not terminate".into()));
            }
        }
        self.canonical.lock().insert(a.to_vec(), x.clone());
        Ok(x)
    }

    /// `B*(𝐚)`, without the rescaling.
    pub fn dual_canonical(&self, a: &[i64]) -> Result<XElement> {
        let n = n_gamma(self.cartan(), &self.weight(a)).0;
        Ok(self.rescaled_dual_canonical(a)?.shift_t(-n))
    }

    /// Coordinates in the basis `{Ẽ*(𝐜)}` of one weight space, by
    /// leading-term elimination.
    pub fn pbw_coordinates(&self, x: &XElement) -> Result<Vec<(Vec<i64>, HalfLaurent)>> {
        let mut rest = x.clone();
        let mut out = vec![];
        while let Some((k, c)) = rest.lead().map(|(k, c)| (k.clone(), c.clone())) {
            if !k.is_nonnegative() {
                return Err(Error::Verification(format!("X^{:?} is not a PBW index", k.0)));
            }
            rest = rest.sub(&self.rescaled_dual_pbw(&k.0)?.scale(&c));
            out.push((k.0, c));
        }
        Ok(out)
    }

    /// `Φ` on a commutative monomial of the slice.
    pub fn phi_monomial(&self, m: &Monomial) -> Result<XVec> {
        let mut a = vec![0; self.rank()];
        for ((i, p), e) in m.factors() {
            let Some(k) = self.quiver.position(i, p) else {
                return domain(format!("Y[{},{p}] is not in the slice", i + 1));
            };
            a[k - 1] = e;
        }
        Ok(XVec(a))
    }

    pub fn phi_inverse_vector(&self, a: &XVec) -> Monomial {
        let vertices = &self.quiver.adapted_word().vertices;
        Monomial::from_exponents(a.0.iter().enumerate().map(|(k, &e)| (vertices[k], e)))
    }

    /// `Φ(t^{1/2}) = v^{1/2}`, `Φ(Y_{i,p}) = X_k`.
    pub fn phi(&self, y: &YElement) -> Result<XElement> {
        y.map_keys(|m| self.phi_monomial(m))
    }

    pub fn phi_inverse(&self, x: &XElement) -> Result<YElement> {
        x.map_keys(|a| Ok(self.phi_inverse_vector(a)))
    }

    /// Compares `Φ` of truncated standard and simple classes with the
    /// rescaled dual PBW and dual canonical bases, over every dominant
    /// monomial of weight height at most `degree_bound`.
    pub fn verify_mainth(&self, chars: &CharacterContext, degree_bound: i64) -> Result<MainReport> {
        if chars.quiver() != &self.quiver {
            return domain("character context belongs to a different quiver");
        }
        let n = self.quiver.rank();
        let mut rows = vec![];
        for d in dimension_vectors(n, degree_bound) {
            for pair in chars.dominant_pairs(&d)? {
                let (standard, _) = chars.standard_character(&pair.monomial, Mode::Truncated)?;
                let simple = chars.simple_character(&pair.monomial, Mode::Truncated)?;
                let a = &pair.multiplicities;
                rows.push(MainRow {
                    multiplicities: a.clone(),
                    monomial: pair.monomial.clone(),
                    standard_matches: self.phi(&standard)? == self.rescaled_dual_pbw(a)?,
                    simple_matches: self.phi(&simple)? == self.rescaled_dual_canonical(a)?,
                });
            }
        }
        Ok(MainReport { degree_bound, rows })
    }
}

fn pbw_knapsack(betas: &[Vec<i64>], k: usize, rest: &mut Vec<i64>, a: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if rest.iter().all(|&x| x == 0) {
        out.push(a.clone());
        return;
    }
    if k == betas.len() {
        return;
    }
    pbw_knapsack(betas, k + 1, rest, a, out);
    let mut used = 0;
    while rest.iter().zip(&betas[k]).all(|(x, b)| x >= b) {
        for (x, b) in rest.iter_mut().zip(&betas[k]) {
            *x -= b;
        }
        used += 1;
        a[k] = used;
        pbw_knapsack(betas, k + 1, rest, a, out);
    }
    for (x, b) in rest.iter_mut().zip(&betas[k]) {
        *x += used * b;
    }
    a[k] = 0;
}

/// Nonzero dimension vectors of height at most `bound`.
pub fn dimension_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let mut cur = vec![0; n];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// Quantum Serre relations, checked for the generators `Φ⁻¹(E*(α_i))` in
/// the truncated `Y` torus and for `E*(α_i)` in the `X` torus.
pub fn serre_check(side: &QuantumGroupSide, chars: &CharacterContext) -> Result<Vec<SerreWitness>> {
    let cartan = side.cartan();
    let n = cartan.rank();
    let mut gens_y = vec![];
    let mut gens_x = vec![];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let (k, p) = side.quiver().phi_inverse(&e, 0)?;
        gens_y.push(chars.simple_character(&Monomial::y(k, p), Mode::Truncated)?);
        let pos = side.quiver().position(k, p).expect("simple roots lie in the slice");
        gens_x.push(side.root_vector(pos)?);
    }
    let mut witnesses = vec![];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ry = serre_residual(&gens_y[i], &gens_y[j], cartan.adjacent(i, j), chars.twist());
            if !ry.is_zero() {
                witnesses.push(SerreWitness { i, j, side: "Y".into(), residual: ry.render("") });
            }
            let rx = serre_residual(&gens_x[i], &gens_x[j], cartan.adjacent(i, j), side.x_twist());
            if !rx.is_zero() {
                witnesses.push(SerreWitness { i, j, side: "X".into(), residual: rx.render("") });
            }
        }
    }
    Ok(witnesses)
}

fn serre_residual<K: crate::torus::TorusKey>(
    xi: &Element<K>,
    xj: &Element<K>,
    adjacent: bool,
    tw: &impl Twist<K>,
) -> Element<K> {
    if !adjacent {
        return xi.mul(xj, tw).sub(&xj.mul(xi, tw));
    }
    let xii = xi.mul(xi, tw);
    let t_sum = HalfLaurent::from_terms([(2, 1), (-2, 1)]);
    xii.mul(xj, tw).sub(&xi.mul(xj, tw).mul(xi, tw).scale(&t_sum)).add(&xj.mul(&xii, tw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> QuantumGroupSide {
        let c: CartanDatum = "A3".parse().unwrap();
        QuantumGroupSide::new(QuiverDatum::from_xi(c, vec![2, 3, 2]).unwrap()).unwrap()
    }

    #[test]
    fn a3_matrices() {
        let g = a3();
        assert_eq!(g.quiver().adapted_word().word, vec![1, 0, 2, 1, 0, 2]);
        let m = vec![
            vec![0, -1, -1, 0, 1, 1],
            vec![1, 0, 0, -1, 1, -1],
            vec![1, 0, 0, -1, -1, 1],
            vec![0, 1, 1, 0, -1, -1],
            vec![-1, -1, 1, 1, 0, 0],
            vec![-1, 1, -1, 1, 0, 0],
        ];
        assert_eq!(g.x_commutation(), m.as_slice());
        let l = vec![
            vec![0, -1, -1, 0, 0, 0],
            vec![1, 0, 0, 0, 1, -1],
            vec![1, 0, 0, 0, -1, 1],
            vec![0, 0, 0, 0, 0, 0],
            vec![0, -1, 1, 0, 0, 0],
            vec![0, 1, -1, 0, 0, 0],
        ];
        assert_eq!(g.flag_commutation(), l.as_slice());
    }

    #[test]
    fn a3_flag_minors() {
        let g = a3();
        let x = |v: Vec<i64>, e: i64| Element::term(XVec(v), HalfLaurent::t_half(e));
        assert_eq!(g.flag_minor(1), x(vec![1, 0, 0, 0, 0, 0], 0));
        assert_eq!(g.flag_minor(2), x(vec![0, 1, 0, 0, 0, 0], 1));
        assert_eq!(g.flag_minor(3), x(vec![0, 0, 1, 0, 0, 0], 1));
        // Φ(Y21 Y23) = v⁻¹ D(0,4), Φ(Y10 Y12) = v⁻¹ D(0,5), Φ(Y30 Y32) = v⁻¹ D(0,6)
        assert_eq!(g.flag_minor(4), x(vec![1, 0, 0, 1, 0, 0], 2));
        assert_eq!(g.flag_minor(5), x(vec![0, 1, 0, 0, 1, 0], 2));
        assert_eq!(g.flag_minor(6), x(vec![0, 0, 1, 0, 0, 1], 2));
    }

    #[test]
    fn a3_minor_identity_exponents() {
        let g = a3();
        assert_eq!(g.identity_exponents(1, 4).unwrap(), (-1, 0, 0));
    }

    #[test]
    fn n_gamma_values() {
        let c: CartanDatum = "A2".parse().unwrap();
        assert_eq!(n_gamma(&c, &[1, 0]), (0, 1));
        assert_eq!(n_gamma(&c, &[1, 1]), (-1, 2));
    }

    #[test]
    fn dimension_vector_count() {
        assert_eq!(dimension_vectors(2, 2).len(), 5);
    }
}
