//! The generators `x_{i,m}` of the quantum Grothendieck ring, the shift
//! automorphism `Σ`, and exact checks of the defining relations on a
//! finite range of levels.

use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;

use crate::characters::CharacterContext;
use crate::error::Result;
use crate::laurent::HalfLaurent;
use crate::monomial::Monomial;
use crate::torus::{Element, YElement};

/// `ν`: `w_0(α_i) = −α_{ν(i)}`.
pub fn nu(ctx: &CharacterContext) -> Vec<usize> {
    ctx.cartan().nu()
}

/// `(ν^m(k_i), p_i + m h)` where `(k_i, p_i) = φ⁻¹(α_i, 0)`.
pub fn generator_vertex(ctx: &CharacterContext, i: usize, m: i64) -> Result<(usize, i64)> {
    let n = ctx.quiver().rank();
    let mut e = vec![0; n];
    e[i] = 1;
    let (k, p) = ctx.quiver().phi_inverse(&e, 0)?;
    let nu = nu(ctx);
    let vertex = if m.rem_euclid(2) == 1 { nu[k] } else { k };
    Ok((vertex, p + m * ctx.cartan().coxeter_number() as i64))
}

/// `x_{i,m} = χ_{q,t}(L(Y_{ν^m(k_i), p_i + m h}))`.
pub fn x_generator(ctx: &CharacterContext, i: usize, m: i64) -> Result<YElement> {
    let (k, p) = generator_vertex(ctx, i, m)?;
    ctx.fm_fundamental(k, p)
}

/// `Σ`: `Y_{i,p} ↦ Y_{ν(i), p+h}` on every monomial.
pub fn shift_automorphism(ctx: &CharacterContext, x: &YElement) -> YElement {
    let nu = nu(ctx);
    let h = ctx.cartan().coxeter_number() as i64;
    Element::from_terms(x.terms().map(|(m, c)| (m.permute(&nu).shift(h), c.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub m: i64,
    pub p: i64,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub type_name: String,
    pub xi: Vec<i64>,
    pub levels: (i64, i64),
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the quantum Serre relations at each level, the adjacent-level
/// relation `x_{i,m} x_{j,m+1} = t^{−(α_i,α_j)} x_{j,m+1} x_{i,m} + δ_ij (1 − t⁻²)`
/// and the far-level relation `x_{i,m} x_{j,p} = t^{(−1)^{p−m}(α_i,α_j)} x_{j,p} x_{i,m}`.
pub fn verify_relations(ctx: &CharacterContext, levels: RangeInclusive<i64>) -> Result<PresentationReport> {
    let n = ctx.quiver().rank();
    let cmat = ctx.cartan().cartan_matrix().to_vec();
    let (lo, hi) = (*levels.start(), *levels.end());
    let mut gens = vec![];
    for m in lo..=hi {
        gens.push((0..n).map(|i| x_generator(ctx, i, m)).collect::<Result<Vec<_>>>()?);
    }
    let x = |i: usize, m: i64| &gens[(m - lo) as usize][i];
    let mul = |a: &YElement, b: &YElement| ctx.mul(a, b);
    let t_sum = HalfLaurent::from_terms([(2, 1), (-2, 1)]);
    let mut failures = vec![];
    let mut checked = 0;
    let mut record = |relation: &str, i: usize, j: usize, m: i64, p: i64, residual: YElement| {
        checked += 1;
        if !residual.is_zero() {
            failures.push(RelationFailure { relation: relation.into(), i, j, m, p, residual: residual.render("t") });
        }
    };
    for m in lo..=hi {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (xi, xj) = (x(i, m), x(j, m));
                let residual = if cmat[i][j] == 0 {
                    mul(xi, xj).sub(&mul(xj, xi))
                } else {
                    let xii = mul(xi, xi);
                    mul(&xii, xj).sub(&mul(&mul(xi, xj), xi).scale(&t_sum)).add(&mul(xj, &xii))
                };
                record("R1", i, j, m, m, residual);
            }
        }
    }
    for m in lo..hi {
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (x(i, m), x(j, m + 1));
                let mut rhs = mul(b, a).shift_t(-2 * cmat[i][j]);
                if i == j {
                    rhs = rhs.add(&Element::term(Monomial::one(), HalfLaurent::from_terms([(0, 1), (-4, -1)])));
                }
                record("R2", i, j, m, m + 1, mul(a, b).sub(&rhs));
            }
        }
    }
    for m in lo..=hi {
        for p in m + 2..=hi {
            let sign = if (p - m) % 2 == 0 { 1 } else { -1 };
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (x(i, m), x(j, p));
                    let residual = mul(a, b).sub(&mul(b, a).shift_t(2 * sign * cmat[i][j]));
                    record("R3", i, j, m, p, residual);
                }
            }
        }
    }
    Ok(PresentationReport {
        type_name: ctx.cartan().name(),
        xi: ctx.quiver().xi().to_vec(),
        levels: (lo, hi),
        checked,
        failures,
    })
}

/// `χ(L(Y_{i,p})) χ(L(Y_{j,p+h})) = t^{−(α_i,α_{ν(j)})} χ(L(Y_{j,p+h})) χ(L(Y_{i,p})) + δ_{i,ν(j)}(1 − t⁻²)`.
pub fn verify_dual_pair(ctx: &CharacterContext, i: usize, p: i64, j: usize) -> Result<bool> {
    let nu = nu(ctx);
    let h = ctx.cartan().coxeter_number() as i64;
    let a = ctx.fm_fundamental(i, p)?;
    let b = ctx.fm_fundamental(j, p + h)?;
    let c = ctx.cartan().cartan_matrix()[i][nu[j]];
    let mut rhs = ctx.mul(&b, &a).shift_t(-2 * c);
    if i == nu[j] {
        rhs = rhs.add(&Element::term(Monomial::one(), HalfLaurent::from_terms([(0, 1), (-4, -1)])));
    }
    Ok(ctx.mul(&a, &b) == rhs)
}
