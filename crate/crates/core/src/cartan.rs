//! Cartan data of simply-laced Dynkin diagrams: weight lattice, scalar
//! product, simple reflections, positive roots and Coxeter numbers.
//!
//! Vertex labels (1-based, as printed):
//!
//! | type | edges |
//! |------|-------|
//! | A_n  | 1-2, 2-3, ..., (n-1)-n |
//! | D_n  | 1-3, 2-3, 3-4, 4-5, ..., (n-1)-n  (D_4: central node 3) |
//! | E_n  | 1-3, 3-4, 4-5, ..., (n-1)-n, 2-4 |

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
    E,
}

/// A weight, in coordinates with respect to the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "CartanRepr", try_from = "CartanRepr")]
pub struct CartanDatum {
    kind: Kind,
    n: usize,
    cartan: Vec<Vec<i64>>,
    adjacency: Vec<Vec<u8>>,
    inverse: Vec<Vec<Ratio<i64>>>,
    roots: Vec<Vec<i64>>,
    coxeter: usize,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n
    }
}

impl Eq for CartanDatum {}

#[derive(Serialize, Deserialize)]
struct CartanRepr {
    kind: Kind,
    rank: usize,
    cartan: Vec<Vec<i64>>,
}

impl From<CartanDatum> for CartanRepr {
    fn from(c: CartanDatum) -> Self {
        CartanRepr { kind: c.kind, rank: c.n, cartan: c.cartan }
    }
}

impl TryFrom<CartanRepr> for CartanDatum {
    type Error = Error;
    fn try_from(r: CartanRepr) -> Result<Self> {
        let c = CartanDatum::new(r.kind, r.rank)?;
        if c.cartan != r.cartan {
            return domain("Cartan matrix does not match the declared type");
        }
        Ok(c)
    }
}

fn edges(kind: Kind, n: usize) -> Result<Vec<(usize, usize)>> {
    match kind {
        Kind::A if (1..=8).contains(&n) => Ok((0..n - 1).map(|i| (i, i + 1)).collect()),
        Kind::D if (4..=8).contains(&n) => {
            let mut e = vec![(0, 2), (1, 2)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            Ok(e)
        }
        Kind::E if (6..=8).contains(&n) => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            Ok(e)
        }
        _ => domain(format!("unsupported type {kind:?}{n}")),
    }
}

fn root_order(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let ha: i64 = a.iter().sum();
    let hb: i64 = b.iter().sum();
    ha.cmp(&hb).then_with(|| b.cmp(a))
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Ratio<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl CartanDatum {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        let e = edges(kind, n)?;
        let mut cartan = vec![vec![0i64; n]; n];
        let mut adjacency = vec![vec![0u8; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &e {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
            adjacency[i][j] = 1;
            adjacency[j][i] = 1;
        }
        let inverse = invert(&cartan);
        let mut c = CartanDatum { kind, n, cartan, adjacency, inverse, roots: vec![], coxeter: 0 };
        c.roots = c.enumerate_roots();
        c.coxeter = c.compute_coxeter();
        Ok(c)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.kind, self.n)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn adjacency(&self) -> &[Vec<u8>] {
        &self.adjacency
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j] == 1
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.adjacent(i, j)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = vec![];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adjacent(i, j) {
                    e.push((i, j));
                }
            }
        }
        e
    }

    pub fn alpha(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.n);
        w.0[i] = 1;
        w
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.n {
            return domain(format!("weight of rank {} used with {}", w.rank(), self.name()));
        }
        Ok(())
    }

    pub fn scalar_product_rational(&self, l: &Weight, m: &Weight) -> Result<Ratio<i64>> {
        self.check_rank(l)?;
        self.check_rank(m)?;
        let mut s = Ratio::zero();
        for i in 0..self.n {
            if l.0[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += self.inverse[i][j] * (l.0[i] * m.0[j]);
            }
        }
        Ok(s)
    }

    /// Integral scalar product; at least one argument must make the value integral
    /// (e.g. lie in the root lattice).
    pub fn scalar_product(&self, l: &Weight, m: &Weight) -> Result<i64> {
        let s = self.scalar_product_rational(l, m)?;
        if !s.is_integer() {
            return domain(format!("scalar product {s} is not integral"));
        }
        Ok(s.to_integer())
    }

    /// Scalar product with one argument in the root lattice, given in root coordinates.
    pub fn pair_root(&self, root_coords: &[i64], m: &Weight) -> i64 {
        root_coords.iter().zip(&m.0).map(|(a, b)| a * b).sum()
    }

    pub fn simple_reflection(&self, i: usize, l: &Weight) -> Weight {
        let k = l.0[i];
        let mut out = l.clone();
        if k != 0 {
            for (x, c) in out.0.iter_mut().zip(&self.cartan[i]) {
                *x -= k * c;
            }
        }
        out
    }

    /// Applies `s_{w_1} s_{w_2} ... s_{w_k}` (rightmost reflection first).
    pub fn apply_word(&self, word: &[usize], l: &Weight) -> Weight {
        word.iter().rev().fold(l.clone(), |acc, &i| self.simple_reflection(i, &acc))
    }

    pub fn root_coords(&self, l: &Weight) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut s = Ratio::<i64>::zero();
            for j in 0..self.n {
                s += self.inverse[i][j] * l.0[j];
            }
            if !s.is_integer() {
                return None;
            }
            out.push(s.to_integer());
        }
        Some(out)
    }

    pub fn from_root_coords(&self, c: &[i64]) -> Weight {
        Weight((0..self.n).map(|j| (0..self.n).map(|i| c[i] * self.cartan[i][j]).sum()).collect())
    }

    fn enumerate_roots(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| b[j] * self.cartan[j][i]).sum();
                let mut c = b.clone();
                c[i] -= pairing;
                if c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0) && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            root_order(a, b)
        });
        roots
    }

    fn compute_coxeter(&self) -> usize {
        let word: Vec<usize> = (0..self.n).collect();
        let start: Vec<Weight> = (0..self.n).map(|i| self.fundamental(i)).collect();
        let mut cur = start.clone();
        let mut k = 0;
        loop {
            cur = cur.iter().map(|w| self.apply_word(&word, w)).collect();
            k += 1;
            if cur == start {
                return k;
            }
        }
    }

    /// Positive roots in simple-root coordinates, graded by height and then
    /// ordered lexicographically (decreasing) within a height.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        self.roots.iter().map(|c| self.from_root_coords(c)).collect()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn is_positive_root_coords(&self, c: &[i64]) -> bool {
        self.roots.binary_search_by(|r| root_order(r, c)).is_ok()
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter
    }

    /// A reduced word for the longest Weyl group element.
    pub fn longest_word(&self) -> Vec<usize> {
        // drive ρ to −ρ, recording the reflections
        let mut l = Weight(vec![1; self.n]);
        let mut word = vec![];
        while let Some(i) = (0..self.n).find(|&i| l.0[i] > 0) {
            l = self.simple_reflection(i, &l);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// The involution with `w_0(α_i) = −α_{ν(i)}`.
    pub fn nu(&self) -> Vec<usize> {
        let w0 = self.longest_word();
        (0..self.n)
            .map(|i| {
                let image = self.apply_word(&w0, &self.alpha(i));
                (0..self.n).find(|&j| image == -&self.alpha(j)).expect("w0 maps simple roots to negative simple roots")
            })
            .collect()
    }
}

impl FromStr for CartanDatum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (k, n) = s.split_at(1.min(s.len()));
        let kind = match k {
            "A" | "a" => Kind::A,
            "D" | "d" => Kind::D,
            "E" | "e" => Kind::E,
            _ => return Err(Error::Parse(format!("unknown Dynkin type '{s}'"))),
        };
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?;
        CartanDatum::new(kind, n)
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Renders a root-lattice vector `Σ c_i α_i` as `α1+α2+2α3`.
pub fn format_root(c: &[i64]) -> String {
    let mut s = String::new();
    for (i, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if x < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if x.abs() != 1 {
            s.push_str(&x.abs().to_string());
        }
        s.push_str(&format!("α{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
