//! Inverse of the quantum Cartan matrix `C(z)`: the coefficients `C̃_ij(m)`
//! by power-series expansion and by the Auslander–Reiten formula, and a
//! periodic lookup table.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::cartan::CartanDatum;
use crate::quiver::QuiverDatum;

/// `C̃_ij(m)` for `0 ≤ m ≤ m_max`, indexed `[i][j][m]`, from
/// `C̃(z) = Σ_k (z+z⁻¹)^{-k-1} A^k` with `(z+z⁻¹)^{-k-1} = z^{k+1} Σ_j (-1)^j C(k+j, j) z^{2j}`.
pub fn ctilde_series(cartan: &CartanDatum, m_max: usize) -> Vec<Vec<Vec<i64>>> {
    let n = cartan.rank();
    let adj: Vec<Vec<BigInt>> =
        cartan.adjacency().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut out = vec![vec![vec![BigInt::zero(); m_max + 1]; n]; n];
    let mut power: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    for k in 0..m_max {
        // binomial C(k+j, j), updated in j
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while k + 1 + 2 * j <= m_max {
            let m = k + 1 + 2 * j;
            let signed = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
            for a in 0..n {
                for b in 0..n {
                    if !power[a][b].is_zero() {
                        out[a][b][m] += &signed * &power[a][b];
                    }
                }
            }
            j += 1;
            binom = binom * BigInt::from(k + j) / BigInt::from(j);
        }
        let next: Vec<Vec<BigInt>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).filter(|&c| !adj[c][b].is_zero()).map(|c| &power[a][c] * &adj[c][b]).sum())
                    .collect()
            })
            .collect();
        power = next;
    }
    out.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|s| s.into_iter().map(|x| x.to_i64().expect("C̃ coefficients are small")).collect())
                .collect()
        })
        .collect()
}

/// `C̃_ij(m)` from the orientation: zero when `m + ξ_i − ξ_j − 1` is odd,
/// otherwise the `α_j`-coefficient of `τ^{(m+ξ_i−ξ_j−1)/2}(γ_i)`.
pub fn ctilde_ar(q: &QuiverDatum, i: usize, j: usize, m: i64) -> i64 {
    if m <= 0 {
        return 0;
    }
    let e = m + q.xi()[i] - q.xi()[j] - 1;
    if e.rem_euclid(2) != 0 {
        return 0;
    }
    q.tau_power_root(q.gamma_coords(i), e / 2)[j]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseWitness {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub value: i64,
}

impl fmt::Display for InverseWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected = (self.i == self.j && self.m == 0) as i64;
        write!(
            f,
            "(C·C̃)_{{{},{}}} has coefficient {} at z^{}, expected {}",
            self.i + 1,
            self.j + 1,
            self.value,
            self.m,
            expected
        )
    }
}

/// One period (`1 ≤ m ≤ 2h`) of `C̃_ij(m)`, extended by zero for `m ≤ 0`
/// and periodically above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CtildeTable {
    pub version: u32,
    pub type_name: String,
    n: usize,
    h: usize,
    adjacency: Vec<Vec<u8>>,
    entries: Vec<i64>,
}

impl CtildeTable {
    pub const VERSION: u32 = 1;

    pub fn new(cartan: &CartanDatum) -> Self {
        let n = cartan.rank();
        let h = cartan.coxeter_number();
        let series = ctilde_series(cartan, 2 * h);
        let mut entries = vec![0; n * n * 2 * h];
        for i in 0..n {
            for j in 0..n {
                for m in 1..=2 * h {
                    entries[(i * n + j) * 2 * h + m - 1] = series[i][j][m];
                }
            }
        }
        CtildeTable {
            version: Self::VERSION,
            type_name: cartan.name(),
            n,
            h,
            adjacency: cartan.adjacency().to_vec(),
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn coxeter_number(&self) -> usize {
        self.h
    }

    pub fn get(&self, i: usize, j: usize, m: i64) -> i64 {
        if m <= 0 {
            return 0;
        }
        let period = 2 * self.h as i64;
        let r = ((m - 1).rem_euclid(period)) as usize;
        self.entries[(i * self.n + j) * 2 * self.h + r]
    }

    /// Overwrites one stored coefficient (used for negative controls).
    pub fn set(&mut self, i: usize, j: usize, m: usize, value: i64) {
        let r = (m - 1) % (2 * self.h);
        self.entries[(i * self.n + j) * 2 * self.h + r] = value;
    }

    /// Checks `Σ_k C_ik(z) C̃_kj(z) = δ_ij` through order `z^{m_max}`, where
    /// `C_ii(z) = z + z⁻¹` and `C_ik(z) = −1` for adjacent `i, k`.
    pub fn verify_inverse(&self, m_max: usize) -> Result<(), InverseWitness> {
        for i in 0..self.n {
            for j in 0..self.n {
                for m in 0..=m_max {
                    let mi = m as i64;
                    let mut v = self.get(i, j, mi - 1) + self.get(i, j, mi + 1);
                    for k in 0..self.n {
                        if self.adjacency[i][k] == 1 {
                            v -= self.get(k, j, mi);
                        }
                    }
                    let expected = (i == j && m == 0) as i64;
                    if v != expected {
                        return Err(InverseWitness { i, j, m, value: v });
                    }
                }
            }
        }
        Ok(())
    }

    /// Series through `z^{m_max}` of `C̃_ij`, as `(exponent, coefficient)` pairs.
    pub fn series(&self, i: usize, j: usize, m_max: usize) -> Vec<(usize, i64)> {
        (1..=m_max).map(|m| (m, self.get(i, j, m as i64))).filter(|&(_, c)| c != 0).collect()
    }
}

/// Renders `z − z^9 + z^11` style series.
pub fn format_series(terms: &[(usize, i64)]) -> String {
    let mut s = String::new();
    for &(m, c) in terms {
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        if m == 1 {
            s.push('z');
        } else {
            s.push_str(&format!("z^{m}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

static TABLES: Lazy<Mutex<HashMap<String, Arc<CtildeTable>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Shared table for a Cartan type; computed once per process.
pub fn ctilde_table(cartan: &CartanDatum) -> Arc<CtildeTable> {
    let key = cartan.name();
    if let Some(t) = TABLES.lock().get(&key) {
        return t.clone();
    }
    let t = Arc::new(CtildeTable::new(cartan));
    TABLES.lock().entry(key).or_insert(t).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a4_series() {
        let c: CartanDatum = "A4".parse().unwrap();
        let t = CtildeTable::new(&c);
        assert_eq!(t.series(0, 0, 19), vec![(1, 1), (9, -1), (11, 1), (19, -1)]);
        assert_eq!(t.series(0, 3, 19), vec![(4, 1), (6, -1), (14, 1), (16, -1)]);
        assert_eq!(format_series(&t.series(1, 1, 19)), "z + z^3 - z^7 - z^9 + z^11 + z^13 - z^17 - z^19");
        assert_eq!(t.get(0, 0, 0), 0);
        assert_eq!(t.get(0, 0, -3), 0);
    }

    #[test]
    fn ar_route_example() {
        let c: CartanDatum = "A4".parse().unwrap();
        let q = QuiverDatum::from_xi(c, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(ctilde_ar(&q, 1, 2, 6), -1);
        assert_eq!(ctilde_ar(&q, 0, 0, 2), 0);
        assert_eq!(ctilde_ar(&q, 0, 2, 1), 0);
        assert_eq!(ctilde_ar(&q, 0, 0, 1), 1);
    }

    #[test]
    fn inverse_and_negative_control() {
        for name in ["A2", "D4", "E6"] {
            let c: CartanDatum = name.parse().unwrap();
            let t = CtildeTable::new(&c);
            assert!(t.verify_inverse(4 * c.coxeter_number()).is_ok());
        }
        let c: CartanDatum = "A2".parse().unwrap();
        let mut t = CtildeTable::new(&c);
        t.set(0, 1, 4, 7);
        let w = t.verify_inverse(20).unwrap_err();
        assert_eq!((w.i, w.m), (0, 3));
    }

    #[test]
    fn periodicity_and_symmetry_against_long_series() {
        for name in ["A3", "D5", "E7"] {
            let c: CartanDatum = name.parse().unwrap();
            let h = c.coxeter_number();
            let t = CtildeTable::new(&c);
            let long = ctilde_series(&c, 4 * h);
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    for m in 1..=4 * h {
                        assert_eq!(long[i][j][m], t.get(i, j, m as i64));
                        assert_eq!(long[i][j][m], long[j][i][m]);
                    }
                }
            }
        }
    }
}
