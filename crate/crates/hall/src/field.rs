//! Finite fields with 2, 3 or 4 elements and dense linear algebra over them.

use qgroth::error::{Error, Result};

/// `GF(q)` for `q ∈ {2, 3, 4}`, elements encoded as `0..q`. For `q = 4`
/// the element `b1 b0` stands for `b0 + b1·ω` with `ω² = ω + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    q: u8,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
}

pub type Mat = Vec<Vec<u8>>;

impl Field {
    pub fn new(q: u8) -> Result<Self> {
        let (add, mul): (Mat, Mat) = match q {
            2 | 3 => {
                let add = (0..q).map(|a| (0..q).map(|b| (a + b) % q).collect()).collect();
                let mul = (0..q).map(|a| (0..q).map(|b| (a * b) % q).collect()).collect();
                (add, mul)
            }
            4 => {
                let add = (0..4u8).map(|a| (0..4u8).map(|b| a ^ b).collect()).collect();
                let mul = (0..4u8).map(|a| (0..4u8).map(|b| gf4_mul(a, b)).collect()).collect();
                (add, mul)
            }
            _ => return Err(Error::Domain(format!("field size {q} is not supported (use 2, 3 or 4)"))),
        };
        Ok(Field { q, add, mul })
    }

    pub fn size(&self) -> u8 {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn zeros(&self, rows: usize, cols: usize) -> Mat {
        vec![vec![0; cols]; rows]
    }

    pub fn identity(&self, n: usize) -> Mat {
        (0..n).map(|i| (0..n).map(|j| (i == j) as u8).collect()).collect()
    }

    /// `a · b` for an `r × k` and a `k × c` matrix; `cols` fixes the width when `k = 0`.
    pub fn mat_mul(&self, a: &Mat, b: &Mat, cols: usize) -> Mat {
        let mut out = self.zeros(a.len(), cols);
        for (i, row) in a.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for j in 0..cols {
                    out[i][j] = self.add(out[i][j], self.mul(x, b[k][j]));
                }
            }
        }
        out
    }

    pub fn apply(&self, a: &Mat, v: &[u8]) -> Vec<u8> {
        a.iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y))))
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, m: &Mat, cols: usize) -> (Mat, Vec<usize>) {
        let mut a: Mat = m.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            let inv = self.inv(a[r][c]).unwrap();
            for x in a[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self, m: &Mat, cols: usize) -> usize {
        self.rref(m, cols).1.len()
    }

    /// Basis of `{x : m x = 0}`.
    pub fn nullspace(&self, m: &Mat, cols: usize) -> Vec<Vec<u8>> {
        let (r, pivots) = self.rref(m, cols);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &p) in r.iter().zip(&pivots) {
                    v[p] = self.neg(row[f]);
                }
                v
            })
            .collect()
    }

    /// Every `F_q`-combination of the given basis vectors.
    pub fn span(&self, basis: &[Vec<u8>], len: usize) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0; len]];
        for b in basis {
            let mut next = Vec::with_capacity(out.len() * self.q as usize);
            for v in &out {
                for c in 0..self.q {
                    next.push(v.iter().zip(b).map(|(&x, &y)| self.add(x, self.mul(c, y))).collect());
                }
            }
            out = next;
        }
        out
    }

    /// All `k`-dimensional subspaces of `F_q^n`, as RREF bases.
    pub fn subspaces(&self, n: usize, k: usize) -> Vec<Mat> {
        let mut out = vec![];
        for pivots in combinations(n, k) {
            // free entries: row r, column c > pivots[r], c not a pivot
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = (self.q as usize).pow(slots.len() as u32);
            for mut code in 0..total {
                let mut m = self.zeros(k, n);
                for (r, &p) in pivots.iter().enumerate() {
                    m[r][p] = 1;
                }
                for &(r, c) in &slots {
                    m[r][c] = (code % self.q as usize) as u8;
                    code /= self.q as usize;
                }
                out.push(m);
            }
        }
        out
    }

    /// Reduces `v` modulo the row space of an RREF basis.
    pub fn reduce(&self, basis: &Mat, pivots: &[usize], v: &[u8]) -> Vec<u8> {
        let mut w = v.to_vec();
        for (row, &p) in basis.iter().zip(pivots) {
            let f = w[p];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = self.sub(*x, self.mul(f, y));
                }
            }
        }
        w
    }
}

fn gf4_mul(a: u8, b: u8) -> u8 {
    // carry-less product reduced by ω² = ω + 1
    let mut p = 0u8;
    for i in 0..2 {
        if b & (1 << i) != 0 {
            p ^= a << i;
        }
    }
    if p & 4 != 0 {
        p ^= 0b111;
    }
    p
}

/// Increasing `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
