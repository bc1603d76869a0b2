//! Dynkin quivers with a height function: the adapted Coxeter element,
//! the labelling of the repetition quiver by root copies, the adapted
//! reduced word of the longest element and the Ringel form.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::cartan::{CartanDatum, Weight};
use crate::error::{domain, Error, Result};

/// A vertex `(i, p)` of the repetition quiver.
pub type IhatVertex = (usize, i64);

/// A root copy `(β, m)`, the root in simple-root coordinates.
pub type RootCopy = (Vec<i64>, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedWord {
    pub word: Vec<usize>,
    /// `β_k` in simple-root coordinates.
    pub betas: Vec<Vec<i64>>,
    pub lambdas: Vec<Weight>,
    /// The vertex of the slice labelled by `(β_k, 0)`.
    pub vertices: Vec<IhatVertex>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "QuiverRepr", try_from = "QuiverRepr")]
pub struct QuiverDatum {
    cartan: CartanDatum,
    arrows: Vec<(usize, usize)>,
    xi: Vec<i64>,
    gammas: Vec<Vec<i64>>,
    tau_word: Vec<usize>,
    columns: Vec<Vec<RootCopy>>,
    root_index: HashMap<Vec<i64>, Vec<(usize, usize, i64)>>,
    word: AdaptedWord,
    mu: Vec<Vec<Weight>>,
    position: HashMap<IhatVertex, usize>,
}

#[derive(Serialize, Deserialize)]
struct QuiverRepr {
    cartan: CartanDatum,
    arrows: Vec<(usize, usize)>,
    xi: Vec<i64>,
}

impl From<QuiverDatum> for QuiverRepr {
    fn from(q: QuiverDatum) -> Self {
        QuiverRepr { cartan: q.cartan, arrows: q.arrows, xi: q.xi }
    }
}

impl TryFrom<QuiverRepr> for QuiverDatum {
    type Error = Error;
    fn try_from(r: QuiverRepr) -> Result<Self> {
        QuiverDatum::new(r.cartan, r.arrows, r.xi)
    }
}

impl PartialEq for QuiverDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.arrows == other.arrows && self.xi == other.xi
    }
}

fn arrows_from_xi(cartan: &CartanDatum, xi: &[i64]) -> Result<Vec<(usize, usize)>> {
    if xi.len() != cartan.rank() {
        return domain(format!("height function has {} entries, expected {}", xi.len(), cartan.rank()));
    }
    let mut arrows = vec![];
    for (i, j) in cartan.edges() {
        match xi[i] - xi[j] {
            1 => arrows.push((i, j)),
            -1 => arrows.push((j, i)),
            _ => return domain(format!("heights of adjacent vertices {} and {} must differ by 1", i + 1, j + 1)),
        }
    }
    arrows.sort();
    Ok(arrows)
}

fn xi_from_arrows(cartan: &CartanDatum, arrows: &[(usize, usize)]) -> Result<Vec<i64>> {
    let n = cartan.rank();
    let mut seen = vec![vec![false; n]; n];
    for &(i, j) in arrows {
        if i >= n || j >= n || !cartan.adjacent(i, j) {
            return domain(format!("arrow {}->{} is not a Dynkin edge", i + 1, j + 1));
        }
        if seen[i][j] || seen[j][i] {
            return domain(format!("edge {}-{} oriented twice", i + 1, j + 1));
        }
        seen[i][j] = true;
    }
    if arrows.len() != cartan.edges().len() {
        return domain("every Dynkin edge needs exactly one arrow");
    }
    let sink = (0..n).find(|&i| arrows.iter().all(|&(a, _)| a != i)).expect("a tree quiver has a sink");
    let mut xi: Vec<Option<i64>> = vec![None; n];
    xi[sink] = Some(0);
    let mut stack = vec![sink];
    while let Some(v) = stack.pop() {
        for &(a, b) in arrows {
            if a == v && xi[b].is_none() {
                xi[b] = Some(xi[v].unwrap() - 1);
                stack.push(b);
            } else if b == v && xi[a].is_none() {
                xi[a] = Some(xi[v].unwrap() + 1);
                stack.push(a);
            }
        }
    }
    Ok(xi.into_iter().map(|x| x.unwrap()).collect())
}

impl QuiverDatum {
    pub fn from_xi(cartan: CartanDatum, xi: Vec<i64>) -> Result<Self> {
        let arrows = arrows_from_xi(&cartan, &xi)?;
        Self::build(cartan, arrows, xi)
    }

    /// Heights are normalised to 0 at the smallest-index sink.
    pub fn from_arrows(cartan: CartanDatum, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let xi = xi_from_arrows(&cartan, &arrows)?;
        let mut arrows = arrows;
        arrows.sort();
        Self::build(cartan, arrows, xi)
    }

    pub fn new(cartan: CartanDatum, arrows: Vec<(usize, usize)>, xi: Vec<i64>) -> Result<Self> {
        let derived = arrows_from_xi(&cartan, &xi)?;
        let mut arrows = arrows;
        arrows.sort();
        if derived != arrows {
            return domain("arrows and height function disagree");
        }
        Self::build(cartan, arrows, xi)
    }

    /// All orientations of the diagram, with the default height normalisation.
    pub fn all_orientations(cartan: &CartanDatum) -> Result<Vec<Self>> {
        let edges = cartan.edges();
        let mut out = vec![];
        for mask in 0..(1u32 << edges.len()) {
            let arrows: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .map(|(k, &(i, j))| if mask >> k & 1 == 1 { (j, i) } else { (i, j) })
                .collect();
            out.push(Self::from_arrows(cartan.clone(), arrows)?);
        }
        Ok(out)
    }

    fn build(cartan: CartanDatum, arrows: Vec<(usize, usize)>, xi: Vec<i64>) -> Result<Self> {
        let n = cartan.rank();
        let h = cartan.coxeter_number();

        let mut gammas = vec![];
        for i in 0..n {
            let mut reach = vec![false; n];
            reach[i] = true;
            let mut stack = vec![i];
            while let Some(v) = stack.pop() {
                for &(a, b) in &arrows {
                    if b == v && !reach[a] {
                        reach[a] = true;
                        stack.push(a);
                    }
                }
            }
            gammas.push(reach.iter().map(|&x| x as i64).collect::<Vec<i64>>());
        }

        let mut tau_word: Vec<usize> = (0..n).collect();
        tau_word.sort_by(|&a, &b| xi[b].cmp(&xi[a]).then(a.cmp(&b)));

        let mut q = QuiverDatum {
            cartan,
            arrows,
            xi,
            gammas,
            tau_word,
            columns: vec![],
            root_index: HashMap::new(),
            word: AdaptedWord { word: vec![], betas: vec![], lambdas: vec![], vertices: vec![] },
            mu: vec![],
            position: HashMap::new(),
        };

        for i in 0..n {
            let mut col = vec![(q.gammas[i].clone(), 0)];
            for _ in 0..h {
                let (b, m) = col.last().unwrap().clone();
                let t = q.tau_root(&b);
                if t.iter().any(|&x| x > 0) {
                    col.push((t, m));
                } else {
                    col.push((t.iter().map(|x| -x).collect(), m - 1));
                }
            }
            if col[h].0 != q.gammas[i] || col[h].1 >= 0 {
                return Err(Error::Verification(format!("τ-orbit of γ_{} does not close up", i + 1)));
            }
            for (r, (b, m)) in col[..h].iter().enumerate() {
                q.root_index.entry(b.clone()).or_default().push((i, r, *m));
            }
            q.columns.push(col);
        }

        q.word = q.compute_word()?;
        let r = q.word.word.len();
        q.mu = (0..=r)
            .map(|b| (0..n).map(|j| q.cartan.apply_word(&q.word.word[..b], &q.cartan.fundamental(j))).collect())
            .collect();
        for (k, v) in q.word.vertices.iter().enumerate() {
            q.position.insert(*v, k + 1);
        }
        Ok(q)
    }

    fn compute_word(&self) -> Result<AdaptedWord> {
        let n = self.rank();
        let slice = self.ihat_q()?;
        let mut count = vec![0usize; n];
        for &(i, _) in &slice {
            count[i] += 1;
        }
        let mut height = self.xi.clone();
        let mut used = vec![0usize; n];
        let mut word = vec![];
        let mut vertices = vec![];
        for _ in 0..slice.len() {
            let src = (0..n).find(|&i| {
                used[i] < count[i] && self.cartan.neighbors(i).iter().all(|&j| height[j] == height[i] - 1)
            });
            let Some(i) = src else {
                return Err(Error::Verification("no admissible source while building the adapted word".into()));
            };
            word.push(i);
            vertices.push((i, height[i]));
            height[i] -= 2;
            used[i] += 1;
        }
        let mut betas = vec![];
        let mut lambdas = vec![];
        for k in 0..word.len() {
            let a = self.cartan.alpha(word[k]);
            let b = self.cartan.apply_word(&word[..k], &a);
            betas.push(self.cartan.root_coords(&b).unwrap());
            lambdas.push(self.cartan.apply_word(&word[..=k], &self.cartan.fundamental(word[k])));
        }
        for (k, v) in vertices.iter().enumerate() {
            let (b, m) = self.phi(v.0, v.1)?;
            if m != 0 || b != betas[k] {
                return Err(Error::Verification(format!(
                    "position {} of the adapted word does not match the labelling",
                    k + 1
                )));
            }
        }
        Ok(AdaptedWord { word, betas, lambdas, vertices })
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    pub fn coxeter_number(&self) -> usize {
        self.cartan.coxeter_number()
    }

    pub fn is_sink_source(&self) -> bool {
        (0..self.rank()).all(|i| {
            let nb = self.cartan.neighbors(i);
            nb.iter().all(|&j| self.xi[j] < self.xi[i]) || nb.iter().all(|&j| self.xi[j] > self.xi[i])
        })
    }

    pub fn gamma_coords(&self, i: usize) -> &[i64] {
        &self.gammas[i]
    }

    pub fn gamma(&self, i: usize) -> Weight {
        self.cartan.from_root_coords(&self.gammas[i])
    }

    /// `τ = s_{j_1} ... s_{j_n}` with vertices listed by decreasing height.
    pub fn tau_word(&self) -> &[usize] {
        &self.tau_word
    }

    fn reflect_root(&self, j: usize, c: &[i64]) -> Vec<i64> {
        let cm = self.cartan.cartan_matrix();
        let pairing: i64 = (0..c.len()).map(|k| c[k] * cm[k][j]).sum();
        let mut out = c.to_vec();
        out[j] -= pairing;
        out
    }

    /// `τ` acting on root coordinates.
    pub fn tau_root(&self, c: &[i64]) -> Vec<i64> {
        self.tau_word.iter().rev().fold(c.to_vec(), |acc, &j| self.reflect_root(j, &acc))
    }

    pub fn tau_inv_root(&self, c: &[i64]) -> Vec<i64> {
        self.tau_word.iter().fold(c.to_vec(), |acc, &j| self.reflect_root(j, &acc))
    }

    pub fn tau_power_root(&self, c: &[i64], l: i64) -> Vec<i64> {
        let h = self.coxeter_number() as i64;
        let l = l.rem_euclid(h);
        (0..l).fold(c.to_vec(), |acc, _| self.tau_root(&acc))
    }

    pub fn tau(&self, w: &Weight) -> Weight {
        self.cartan.apply_word(&self.tau_word, w)
    }

    pub fn phi(&self, i: usize, p: i64) -> Result<RootCopy> {
        if i >= self.rank() {
            return domain(format!("vertex {} out of range", i + 1));
        }
        if (p - self.xi[i]).rem_euclid(2) != 0 {
            return domain(format!("({}, {p}) is not a vertex of the repetition quiver", i + 1));
        }
        let h = self.coxeter_number() as i64;
        let l = (self.xi[i] - p) / 2;
        let (q, r) = (l.div_euclid(h), l.rem_euclid(h) as usize);
        let period = -self.columns[i][h as usize].1;
        let (b, m) = &self.columns[i][r];
        Ok((b.clone(), m - q * period))
    }

    pub fn phi_inverse(&self, beta: &[i64], m: i64) -> Result<IhatVertex> {
        let h = self.coxeter_number() as i64;
        let Some(entries) = self.root_index.get(beta) else {
            return domain(format!("{beta:?} is not a positive root"));
        };
        let mut found = vec![];
        for &(i, r, mr) in entries {
            let period = -self.columns[i][h as usize].1;
            if (mr - m).rem_euclid(period) == 0 {
                let q = (mr - m) / period;
                found.push((i, self.xi[i] - 2 * (q * h + r as i64)));
            }
        }
        match found.as_slice() {
            [v] => Ok(*v),
            _ => Err(Error::Verification(format!("labelling is not bijective at ({beta:?}, {m})"))),
        }
    }

    /// The slice `φ⁻¹(Δ_+ × {0})`, listed in the order of the positive roots.
    pub fn ihat_q(&self) -> Result<Vec<IhatVertex>> {
        self.cartan.positive_root_coords().iter().map(|b| self.phi_inverse(b, 0)).collect()
    }

    pub fn in_slice(&self, i: usize, p: i64) -> bool {
        self.position.contains_key(&(i, p))
    }

    /// The position `k` with `φ(i, p) = (β_k, 0)`, if `(i, p)` lies in the slice.
    pub fn position(&self, i: usize, p: i64) -> Option<usize> {
        self.position.get(&(i, p)).copied()
    }

    pub fn adapted_word(&self) -> &AdaptedWord {
        &self.word
    }

    pub fn num_positions(&self) -> usize {
        self.word.word.len()
    }

    /// Letter `i_k` (1-based position).
    pub fn letter(&self, k: usize) -> usize {
        self.word.word[k - 1]
    }

    pub fn beta(&self, k: usize) -> &[i64] {
        &self.word.betas[k - 1]
    }

    /// `λ_k`, with `λ_0` read as the fundamental weight of the given letter.
    pub fn lambda(&self, k: usize) -> &Weight {
        &self.word.lambdas[k - 1]
    }

    /// `μ(b, j) = s_{i_1} ... s_{i_b}(ϖ_j)`.
    pub fn mu(&self, b: usize, j: usize) -> &Weight {
        &self.mu[b][j]
    }

    /// Largest `s < k` with `i_s = j` (default `j = i_k`), or 0.
    pub fn kminus(&self, k: usize, j: Option<usize>) -> usize {
        if k == 0 {
            return 0;
        }
        let letter = j.unwrap_or_else(|| self.letter(k));
        (1..k).rev().find(|&s| self.letter(s) == letter).unwrap_or(0)
    }

    /// `k^{(-s)}`: the `s`-fold iterate of `k ↦ k⁻`.
    pub fn kminus_iter(&self, k: usize, s: usize) -> usize {
        (0..s).fold(k, |acc, _| self.kminus(acc, None))
    }

    /// Euler form `Σ d_i e_i − Σ_{i→j} d_i e_j`.
    pub fn ringel_form(&self, d: &[i64], e: &[i64]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        diag - self.arrows.iter().map(|&(i, j)| d[i] * e[j]).sum::<i64>()
    }

    /// Symmetrised Euler form, equal to the scalar product on the root lattice.
    pub fn root_scalar(&self, d: &[i64], e: &[i64]) -> i64 {
        self.ringel_form(d, e) + self.ringel_form(e, d)
    }

    /// Rows of `(i, p, β, m)` over a window of heights `p ∈ [lo, hi]`.
    pub fn phi_table(&self, lo: i64, hi: i64) -> Vec<(usize, i64, Vec<i64>, i64)> {
        let mut rows = vec![];
        for p in (lo..=hi).rev() {
            for i in 0..self.rank() {
                if (p - self.xi[i]).rem_euclid(2) == 0 {
                    let (b, m) = self.phi(i, p).unwrap();
                    rows.push((i, p, b, m));
                }
            }
        }
        rows
    }
}
