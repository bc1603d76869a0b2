//! Representations of a type A quiver over `F_q`, morphism spaces, and
//! isomorphism classes as multisets of positive roots.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use qgroth::cartan::format_root;
use qgroth::error::{Error, Result};
use qgroth::{Kind, QuiverDatum};

use crate::field::{Field, Mat};

/// Largest rank handled by the brute-force enumerators.
pub const MAX_RANK: usize = 3;

/// A representation: one `d_b × d_a` matrix for each arrow `a → b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqRep {
    pub q: u8,
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    pub mats: Vec<Mat>,
}

impl FqRep {
    pub fn new(q: u8, dims: Vec<usize>, arrows: Vec<(usize, usize)>, mats: Vec<Mat>) -> Result<Self> {
        if mats.len() != arrows.len() {
            return Err(Error::Domain("one matrix per arrow is required".into()));
        }
        for (&(a, b), m) in arrows.iter().zip(&mats) {
            if a >= dims.len() || b >= dims.len() {
                return Err(Error::Domain(format!("arrow {}->{} out of range", a + 1, b + 1)));
            }
            if m.len() != dims[b] || m.iter().any(|row| row.len() != dims[a] || row.iter().any(|&x| x >= q)) {
                return Err(Error::Domain(format!(
                    "matrix for arrow {}->{} must be {}x{} over F_{q}",
                    a + 1,
                    b + 1,
                    dims[b],
                    dims[a]
                )));
            }
        }
        Ok(FqRep { q, dims, arrows, mats })
    }

    pub fn zero(q: u8, quiver: &QuiverDatum) -> Self {
        let arrows = quiver.arrows().to_vec();
        let mats = arrows.iter().map(|_| vec![]).collect();
        FqRep { q, dims: vec![0; quiver.rank()], arrows, mats }
    }

    /// The thin indecomposable supported on the interval of `root`.
    pub fn interval(q: u8, quiver: &QuiverDatum, root: &[i64]) -> Self {
        let dims: Vec<usize> = root.iter().map(|&c| c as usize).collect();
        let arrows = quiver.arrows().to_vec();
        let mats = arrows
            .iter()
            .map(|&(a, b)| (0..dims[b]).map(|_| vec![1; dims[a]]).collect())
            .collect();
        FqRep { q, dims, arrows, mats }
    }

    pub fn direct_sum(&self, other: &FqRep) -> FqRep {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self
            .arrows
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let mut m = vec![vec![0u8; dims[a]]; dims[b]];
                for (r, row) in self.mats[k].iter().enumerate() {
                    m[r][..self.dims[a]].copy_from_slice(row);
                }
                for (r, row) in other.mats[k].iter().enumerate() {
                    m[self.dims[b] + r][self.dims[a]..].copy_from_slice(row);
                }
                m
            })
            .collect();
        FqRep { q: self.q, dims, arrows: self.arrows.clone(), mats }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }
}

/// A morphism: one matrix per vertex.
pub type Morphism = Vec<Mat>;

/// `Hom(M, N)` as the solution space of the intertwining equations.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Vec<u8>>,
    shapes: Vec<(usize, usize)>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn unflatten(&self, v: &[u8]) -> Morphism {
        let mut off = 0;
        self.shapes
            .iter()
            .map(|&(r, c)| {
                let m = (0..r).map(|i| v[off + i * c..off + (i + 1) * c].to_vec()).collect();
                off += r * c;
                m
            })
            .collect()
    }

    /// Every element of the space.
    pub fn elements(&self, field: &Field) -> Vec<Morphism> {
        let len = self.shapes.iter().map(|(r, c)| r * c).sum();
        field.span(&self.basis, len).iter().map(|v| self.unflatten(v)).collect()
    }
}

pub fn hom_space(field: &Field, m: &FqRep, n: &FqRep) -> HomSpace {
    let shapes: Vec<(usize, usize)> = n.dims.iter().zip(&m.dims).map(|(&r, &c)| (r, c)).collect();
    let mut offsets = vec![0];
    for &(r, c) in &shapes {
        offsets.push(offsets.last().unwrap() + r * c);
    }
    let unknowns = *offsets.last().unwrap();
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * shapes[v].1 + c;
    let mut rows: Mat = vec![];
    for (k, &(a, b)) in m.arrows.iter().enumerate() {
        // n_ab f_a − f_b m_ab = 0, an n.dims[b] × m.dims[a] system
        for r in 0..n.dims[b] {
            for c in 0..m.dims[a] {
                let mut row = vec![0u8; unknowns];
                for t in 0..n.dims[a] {
                    let x = n.mats[k][r][t];
                    let idx = var(a, t, c);
                    row[idx] = field.add(row[idx], x);
                }
                for t in 0..m.dims[b] {
                    let x = m.mats[k][t][c];
                    let idx = var(b, r, t);
                    row[idx] = field.sub(row[idx], x);
                }
                rows.push(row);
            }
        }
    }
    HomSpace { basis: field.nullspace(&rows, unknowns), shapes }
}

/// `g ∘ f`, where `f` starts at a representation of dimension `source_dims`.
pub fn compose(field: &Field, g: &Morphism, f: &Morphism, source_dims: &[usize]) -> Morphism {
    g.iter().zip(f).zip(source_dims).map(|((gv, fv), &c)| field.mat_mul(gv, fv, c)).collect()
}

pub fn ranks(field: &Field, f: &Morphism, source_dims: &[usize]) -> Vec<usize> {
    f.iter().zip(source_dims).map(|(m, &c)| field.rank(m, c)).collect()
}

/// An isomorphism class, recorded by the multiplicity of each indecomposable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoClass(pub BTreeMap<Vec<i64>, usize>);

impl IsoClass {
    pub fn zero() -> Self {
        IsoClass::default()
    }

    pub fn indecomposable(root: &[i64]) -> Self {
        IsoClass(BTreeMap::from([(root.to_vec(), 1)]))
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::indecomposable(&e)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim_vector(&self, n: usize) -> Vec<i64> {
        let mut d = vec![0; n];
        for (root, &m) in &self.0 {
            for (x, r) in d.iter_mut().zip(root) {
                *x += r * m as i64;
            }
        }
        d
    }

    pub fn add(&self, other: &IsoClass) -> IsoClass {
        let mut out = self.0.clone();
        for (r, &m) in &other.0 {
            *out.entry(r.clone()).or_default() += m;
        }
        IsoClass(out)
    }

    /// `(α1+α2)⊕(α3)^2`, or `0`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.0
            .iter()
            .rev()
            .map(|(r, &m)| if m == 1 { format!("({})", format_root(r)) } else { format!("({})^{m}", format_root(r)) })
            .collect::<Vec<_>>()
            .join("⊕")
    }

    pub fn representative(&self, q: u8, quiver: &QuiverDatum) -> FqRep {
        let mut rep = FqRep::zero(q, quiver);
        for (root, &m) in &self.0 {
            for _ in 0..m {
                rep = rep.direct_sum(&FqRep::interval(q, quiver, root));
            }
        }
        rep
    }
}

/// Rejects anything other than a type A quiver of rank at most three.
pub fn check_quiver(quiver: &QuiverDatum) -> Result<()> {
    if quiver.cartan().kind() != Kind::A || quiver.rank() > MAX_RANK {
        return Err(Error::Domain(format!(
            "Hall enumeration supports type A of rank at most {MAX_RANK}, got {}",
            quiver.cartan().name()
        )));
    }
    Ok(())
}

/// Every multiset of positive roots with the given dimension vector.
pub fn iso_classes_of_dim(quiver: &QuiverDatum, dims: &[i64]) -> Vec<IsoClass> {
    let roots = quiver.cartan().positive_root_coords().to_vec();
    let mut out = vec![];
    fn rec(roots: &[Vec<i64>], start: usize, rest: Vec<i64>, cur: &mut IsoClass, out: &mut Vec<IsoClass>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for k in start..roots.len() {
            let r = &roots[k];
            if r.iter().zip(&rest).all(|(a, b)| a <= b) {
                let next: Vec<i64> = rest.iter().zip(r).map(|(a, b)| a - b).collect();
                *cur.0.entry(r.clone()).or_default() += 1;
                rec(roots, k, next, cur, out);
                let e = cur.0.get_mut(r).unwrap();
                *e -= 1;
                if *e == 0 {
                    cur.0.remove(r);
                }
            }
        }
    }
    if dims.iter().all(|&d| d >= 0) {
        rec(&roots, 0, dims.to_vec(), &mut IsoClass::zero(), &mut out);
    }
    out.sort();
    out
}

/// Classifies representations by `dim Hom(I_β, −)` over all indecomposables `I_β`.
#[derive(Clone, Debug)]
pub struct Classifier {
    roots: Vec<Vec<i64>>,
    indecomposables: Vec<FqRep>,
    /// `hom[b][c] = dim Hom(I_b, I_c)`
    hom: Vec<Vec<usize>>,
}

impl Classifier {
    pub fn new(field: &Field, quiver: &QuiverDatum) -> Self {
        let roots = quiver.cartan().positive_root_coords().to_vec();
        let indecomposables: Vec<FqRep> = roots.iter().map(|r| FqRep::interval(field.size(), quiver, r)).collect();
        let hom = indecomposables
            .iter()
            .map(|a| indecomposables.iter().map(|b| hom_space(field, a, b).dim()).collect())
            .collect();
        Classifier { roots, indecomposables, hom }
    }

    fn index(&self, root: &[i64]) -> usize {
        self.roots.iter().position(|r| r == root).expect("positive root")
    }

    pub fn hom_dim(&self, x: &IsoClass, y: &IsoClass) -> usize {
        let mut d = 0;
        for (a, &m) in &x.0 {
            for (b, &n) in &y.0 {
                d += m * n * self.hom[self.index(a)][self.index(b)];
            }
        }
        d
    }

    fn fingerprint_of_class(&self, x: &IsoClass) -> Vec<usize> {
        (0..self.roots.len())
            .map(|b| x.0.iter().map(|(r, &m)| m * self.hom[b][self.index(r)]).sum())
            .collect()
    }

    pub fn fingerprint(&self, field: &Field, rep: &FqRep) -> Vec<usize> {
        self.indecomposables.iter().map(|ind| hom_space(field, ind, rep).dim()).collect()
    }

    pub fn iso_class(&self, field: &Field, quiver: &QuiverDatum, rep: &FqRep) -> IsoClass {
        let fp = self.fingerprint(field, rep);
        iso_classes_of_dim(quiver, &rep.dim_vector())
            .into_iter()
            .find(|c| self.fingerprint_of_class(c) == fp)
            .expect("fingerprints separate isomorphism classes in finite type")
    }
}

/// `|GL_m(F_q)|`.
pub fn gl_order(q: u64, m: usize) -> u64 {
    let qm = q.pow(m as u32);
    (0..m).map(|k| qm - q.pow(k as u32)).product()
}

/// `|Aut X| = q^{dim End X − Σ m_β²} Π_β |GL_{m_β}(F_q)|`, since every
/// indecomposable has endomorphism ring `F_q`.
pub fn aut_order(classifier: &Classifier, q: u8, x: &IsoClass) -> u64 {
    let end = classifier.hom_dim(x, x);
    let square: usize = x.0.values().map(|m| m * m).sum();
    let q = q as u64;
    q.pow((end - square) as u32) * x.0.values().map(|&m| gl_order(q, m)).product::<u64>()
}

pub fn parse_iso_class(s: &str, n: usize) -> Result<IsoClass> {
    // "0", "S1", "S1+S2" (direct sum of simples), or "[1,1,0]+[0,0,1]" (roots)
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(IsoClass::zero());
    }
    let mut out = IsoClass::zero();
    for part in split_top(s) {
        let part = part.trim();
        let (body, mult) = match part.rsplit_once('^') {
            Some((b, m)) => (b, m.parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in {part}")))?),
            None => (part, 1),
        };
        let root = if let Some(k) = body.strip_prefix('S') {
            let i: usize = k.parse().map_err(|_| Error::Parse(format!("bad simple {body}")))?;
            if i == 0 || i > n {
                return Err(Error::Parse(format!("simple {body} out of range")));
            }
            let mut e = vec![0; n];
            e[i - 1] = 1;
            e
        } else {
            let inner = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("cannot parse summand {body}")))?;
            let v: Vec<i64> = inner
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad root {body}"))))
                .collect::<Result<_>>()?;
            if v.len() != n {
                return Err(Error::Parse(format!("root {body} has wrong length")));
            }
            v
        };
        *out.0.entry(root).or_default() += mult;
    }
    Ok(out)
}

fn split_top(s: &str) -> Vec<&str> {
    let mut parts = vec![];
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgroth::CartanDatum;

    fn a2() -> QuiverDatum {
        let c: CartanDatum = "A2".parse().unwrap();
        QuiverDatum::from_arrows(c, vec![(0, 1)]).unwrap()
    }

    #[test]
    fn a2_classification() {
        let q = a2();
        let f = Field::new(3).unwrap();
        let cl = Classifier::new(&f, &q);
        let generic = FqRep::new(3, vec![1, 1], vec![(0, 1)], vec![vec![vec![2]]]).unwrap();
        assert_eq!(cl.iso_class(&f, &q, &generic), IsoClass::indecomposable(&[1, 1]));
        let split = FqRep::new(3, vec![1, 1], vec![(0, 1)], vec![vec![vec![0]]]).unwrap();
        assert_eq!(cl.iso_class(&f, &q, &split), IsoClass::simple(2, 0).add(&IsoClass::simple(2, 1)));
        assert_eq!(cl.iso_class(&f, &q, &FqRep::zero(3, &q)), IsoClass::zero());
    }

    #[test]
    fn aut_orders_match_enumeration() {
        let q = a2();
        for size in [2u8, 3] {
            let f = Field::new(size).unwrap();
            let cl = Classifier::new(&f, &q);
            for x in iso_classes_of_dim(&q, &[2, 1]).into_iter().chain(iso_classes_of_dim(&q, &[1, 2])) {
                let rep = x.representative(size, &q);
                let brute = hom_space(&f, &rep, &rep)
                    .elements(&f)
                    .iter()
                    .filter(|m| ranks(&f, m, &rep.dims) == rep.dims)
                    .count() as u64;
                assert_eq!(aut_order(&cl, size, &x), brute, "{}", x.render());
            }
        }
    }

    #[test]
    fn parse_classes() {
        let x = parse_iso_class("S1+[0,1,1]^2", 3).unwrap();
        assert_eq!(x.dim_vector(3), vec![1, 2, 2]);
        assert_eq!(x.render(), "(α1)⊕(α2+α3)^2");
        assert!(parse_iso_class("S4", 3).is_err());
    }
}
