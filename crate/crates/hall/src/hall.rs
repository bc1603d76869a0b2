//! Ringel Hall numbers and Toën's structure constants by exhaustive
//! enumeration of subrepresentations and exact sequences.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use qgroth::error::{Error, Result};
use qgroth::QuiverDatum;

use crate::field::{Field, Mat};
use crate::rep::{
    aut_order, check_quiver, compose, hom_space, iso_classes_of_dim, ranks, Classifier, FqRep, IsoClass, Morphism,
};

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest total dimension of `W` when enumerating its subrepresentations.
    pub submodule_dim: usize,
    /// Largest total dimension of either middle term of a four-term exact sequence.
    pub ex_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { submodule_dim: 4, ex_dim: 3 }
    }
}

type Histogram = BTreeMap<(IsoClass, IsoClass), u64>;

/// Hall numbers and exact-sequence counts for one quiver over one field, cached.
pub struct HallContext {
    quiver: QuiverDatum,
    field: Field,
    classifier: Classifier,
    caps: Caps,
    histograms: Mutex<HashMap<(IsoClass, Vec<i64>), Arc<Histogram>>>,
    exact: Mutex<HashMap<[IsoClass; 4], u64>>,
    pub(crate) normal_forms: Mutex<HashMap<crate::dh::Word, crate::dh::DHElement>>,
}

impl HallContext {
    pub fn new(quiver: QuiverDatum, q: u8) -> Result<Self> {
        Self::with_caps(quiver, q, Caps::default())
    }

    pub fn with_caps(quiver: QuiverDatum, q: u8, caps: Caps) -> Result<Self> {
        check_quiver(&quiver)?;
        let field = Field::new(q)?;
        let classifier = Classifier::new(&field, &quiver);
        Ok(HallContext {
            quiver,
            field,
            classifier,
            caps,
            histograms: Mutex::default(),
            exact: Mutex::default(),
            normal_forms: Mutex::default(),
        })
    }

    pub fn q(&self) -> u8 {
        self.field.size()
    }

    pub fn quiver(&self) -> &QuiverDatum {
        &self.quiver
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn dim(&self, x: &IsoClass) -> Vec<i64> {
        x.dim_vector(self.rank())
    }

    /// Euler form `⟨X, Y⟩ = dim Hom(X, Y) − dim Ext¹(X, Y)`.
    pub fn euler(&self, x: &IsoClass, y: &IsoClass) -> i64 {
        self.quiver.ringel_form(&self.dim(x), &self.dim(y))
    }

    /// Symmetrised Euler form `(X, Y)`.
    pub fn symmetric(&self, x: &IsoClass, y: &IsoClass) -> i64 {
        self.quiver.root_scalar(&self.dim(x), &self.dim(y))
    }

    pub fn hom_dim(&self, x: &IsoClass, y: &IsoClass) -> usize {
        self.classifier.hom_dim(x, y)
    }

    pub fn aut(&self, x: &IsoClass) -> u64 {
        aut_order(&self.classifier, self.q(), x)
    }

    pub fn iso_class(&self, rep: &FqRep) -> Result<IsoClass> {
        if rep.q != self.q() || rep.dims.len() != self.rank() || rep.arrows != self.quiver.arrows() {
            return Err(Error::Domain("representation does not match the quiver or field".into()));
        }
        Ok(self.classifier.iso_class(&self.field, &self.quiver, rep))
    }

    pub fn classes_of_dim(&self, dims: &[i64]) -> Vec<IsoClass> {
        iso_classes_of_dim(&self.quiver, dims)
    }

    fn representative(&self, x: &IsoClass) -> FqRep {
        x.representative(self.q(), &self.quiver)
    }

    fn check_class(&self, x: &IsoClass) -> Result<()> {
        for root in x.0.keys() {
            if !self.quiver.cartan().is_positive_root_coords(root) {
                return Err(Error::Domain(format!("{root:?} is not a positive root")));
            }
        }
        Ok(())
    }

    /// Counts submodules `T ⊂ W` of dimension `dims` by the pair `(T, W/T)`.
    fn histogram(&self, w: &IsoClass, dims: &[i64]) -> Result<Arc<Histogram>> {
        let key = (w.clone(), dims.to_vec());
        if let Some(h) = self.histograms.lock().get(&key) {
            return Ok(h.clone());
        }
        let rep = self.representative(w);
        if rep.total_dim() > self.caps.submodule_dim {
            return Err(Error::ResourceCap(format!(
                "submodule enumeration needs total dimension {} > {}",
                rep.total_dim(),
                self.caps.submodule_dim
            )));
        }
        let f = &self.field;
        let choices: Vec<Vec<(Mat, Vec<usize>)>> = rep
            .dims
            .iter()
            .zip(dims)
            .map(|(&n, &k)| {
                f.subspaces(n, k as usize)
                    .into_iter()
                    .map(|m| {
                        let pivots = m.iter().map(|row| row.iter().position(|&x| x != 0).unwrap()).collect();
                        (m, pivots)
                    })
                    .collect()
            })
            .collect();
        let mut hist = Histogram::new();
        let mut idx = vec![0usize; choices.len()];
        'outer: loop {
            let pick: Vec<&(Mat, Vec<usize>)> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
            if let Some((sub, quot)) = self.split(&rep, &pick) {
                let key = (self.classifier.iso_class(f, &self.quiver, &sub), self.classifier.iso_class(f, &self.quiver, &quot));
                *hist.entry(key).or_default() += 1;
            }
            for v in 0..idx.len() {
                idx[v] += 1;
                if idx[v] < choices[v].len() {
                    continue 'outer;
                }
                idx[v] = 0;
            }
            break;
        }
        let hist = Arc::new(hist);
        self.histograms.lock().insert(key, hist.clone());
        Ok(hist)
    }

    /// The subrepresentation spanned by the chosen subspaces and its quotient,
    /// or `None` if the subspaces are not stable under the arrows.
    fn split(&self, rep: &FqRep, pick: &[&(Mat, Vec<usize>)]) -> Option<(FqRep, FqRep)> {
        let f = &self.field;
        let sub_dims: Vec<usize> = pick.iter().map(|(m, _)| m.len()).collect();
        let free: Vec<Vec<usize>> =
            pick.iter().zip(&rep.dims).map(|((_, p), &n)| (0..n).filter(|c| !p.contains(c)).collect()).collect();
        let mut sub_mats = vec![];
        let mut quot_mats = vec![];
        for (k, &(a, b)) in rep.arrows.iter().enumerate() {
            let (basis_a, _) = pick[a];
            let (basis_b, piv_b) = pick[b];
            let mut sm = vec![vec![0u8; sub_dims[a]]; sub_dims[b]];
            for (c, v) in basis_a.iter().enumerate() {
                let img = f.apply(&rep.mats[k], v);
                if f.reduce(basis_b, piv_b, &img).iter().any(|&x| x != 0) {
                    return None;
                }
                for (r, &p) in piv_b.iter().enumerate() {
                    sm[r][c] = img[p];
                }
            }
            sub_mats.push(sm);
            let mut qm = vec![vec![0u8; free[a].len()]; free[b].len()];
            for (c, &j) in free[a].iter().enumerate() {
                let col: Vec<u8> = rep.mats[k].iter().map(|row| row[j]).collect();
                let red = f.reduce(basis_b, piv_b, &col);
                for (r, &p) in free[b].iter().enumerate() {
                    qm[r][c] = red[p];
                }
            }
            quot_mats.push(qm);
        }
        let q = self.q();
        let sub = FqRep { q, dims: sub_dims, arrows: rep.arrows.clone(), mats: sub_mats };
        let quot = FqRep { q, dims: free.iter().map(Vec::len).collect(), arrows: rep.arrows.clone(), mats: quot_mats };
        Some((sub, quot))
    }

    /// `g^W_{X,Y}`: submodules `T ⊂ W` with `T ≅ X` and `W/T ≅ Y`.
    pub fn hall_number(&self, x: &IsoClass, y: &IsoClass, w: &IsoClass) -> Result<u64> {
        for c in [x, y, w] {
            self.check_class(c)?;
        }
        let (dx, dy, dw) = (self.dim(x), self.dim(y), self.dim(w));
        if dx.iter().zip(&dy).zip(&dw).any(|((a, b), c)| a + b != *c) {
            return Err(Error::Domain(format!(
                "dimension vectors do not add up: {} + {} != {}",
                x.render(),
                y.render(),
                w.render()
            )));
        }
        Ok(self.histogram(w, &dx)?.get(&(x.clone(), y.clone())).copied().unwrap_or(0))
    }

    /// `Σ_W g^W_{X,Y} [W]`, over all `W` with nonzero Hall number.
    pub fn hall_expansion(&self, x: &IsoClass, y: &IsoClass) -> Result<Vec<(IsoClass, u64)>> {
        let dw: Vec<i64> = self.dim(x).iter().zip(self.dim(y)).map(|(a, b)| a + b).collect();
        let mut out = vec![];
        for w in self.classes_of_dim(&dw) {
            let g = self.hall_number(x, y, &w)?;
            if g > 0 {
                out.push((w, g));
            }
        }
        Ok(out)
    }

    /// `|Ex(W, Y, X, T)|`: exact sequences `0 → W → Y → X → T → 0`.
    pub fn exact_sequences(&self, w: &IsoClass, y: &IsoClass, x: &IsoClass, t: &IsoClass) -> Result<u64> {
        for c in [w, y, x, t] {
            self.check_class(c)?;
        }
        let key = [w.clone(), y.clone(), x.clone(), t.clone()];
        if let Some(&n) = self.exact.lock().get(&key) {
            return Ok(n);
        }
        let (dw, dy, dx, dt) = (self.dim(w), self.dim(y), self.dim(x), self.dim(t));
        let middle = dx.iter().sum::<i64>().max(dy.iter().sum::<i64>()) as usize;
        if middle > self.caps.ex_dim {
            return Err(Error::ResourceCap(format!(
                "exact-sequence enumeration needs dimension {middle} > {}",
                self.caps.ex_dim
            )));
        }
        let balanced = (0..self.rank()).all(|v| dw[v] - dy[v] + dx[v] - dt[v] == 0);
        let count = if balanced { self.count_exact(w, y, x, t) } else { 0 };
        self.exact.lock().insert(key, count);
        Ok(count)
    }

    fn count_exact(&self, w: &IsoClass, y: &IsoClass, x: &IsoClass, t: &IsoClass) -> u64 {
        let f = &self.field;
        let (rw, ry, rx, rt) = (self.representative(w), self.representative(y), self.representative(x), self.representative(t));
        let is_zero = |m: &Morphism| m.iter().all(|mat| mat.iter().all(|row| row.iter().all(|&e| e == 0)));
        let injections: Vec<Morphism> = hom_space(f, &rw, &ry)
            .elements(f)
            .into_iter()
            .filter(|m| ranks(f, m, &rw.dims) == rw.dims)
            .collect();
        let surjections: Vec<Morphism> = hom_space(f, &rx, &rt)
            .elements(f)
            .into_iter()
            .filter(|m| ranks(f, m, &rx.dims) == rt.dims)
            .collect();
        let mut total = 0u64;
        for g in hom_space(f, &ry, &rx).elements(f) {
            let rk = ranks(f, &g, &ry.dims);
            // ker g has the dimension of W and im g that of ker h
            if (0..self.rank()).any(|v| ry.dims[v] - rk[v] != rw.dims[v] || rk[v] + rt.dims[v] != rx.dims[v]) {
                continue;
            }
            let nf = injections.iter().filter(|fm| is_zero(&compose(f, &g, fm, &rw.dims))).count() as u64;
            if nf == 0 {
                continue;
            }
            let nh = surjections.iter().filter(|hm| is_zero(&compose(f, hm, &g, &ry.dims))).count() as u64;
            total += nf * nh;
        }
        total
    }

    /// `γ^{T,W}_{X,Y} = |Ex| / (|Aut X| |Aut Y|)`, counting exact sequences
    /// `0 → T → Y → X → W → 0`: `T` is the kernel, kept in the higher degree,
    /// and `W` the cokernel.
    pub fn toen_gamma(&self, x: &IsoClass, y: &IsoClass, t: &IsoClass, w: &IsoClass) -> Result<BigRational> {
        let ex = self.exact_sequences(t, y, x, w)?;
        Ok(BigRational::new(BigInt::from(ex), BigInt::from(self.aut(x)) * BigInt::from(self.aut(y))))
    }

    /// All `(T, W, γ^{T,W}_{X,Y})` with nonzero constant.
    pub fn toen_expansion(&self, x: &IsoClass, y: &IsoClass) -> Result<Vec<(IsoClass, IsoClass, BigRational)>> {
        let (dx, dy) = (self.dim(x), self.dim(y));
        let mut out = vec![];
        let mut tdims = vec![vec![]];
        for &c in &dy {
            tdims = tdims.into_iter().flat_map(|p: Vec<i64>| (0..=c).map(move |k| [p.clone(), vec![k]].concat())).collect();
        }
        for dt in tdims {
            let dw: Vec<i64> = (0..self.rank()).map(|v| dx[v] - dy[v] + dt[v]).collect();
            if dw.iter().zip(&dx).any(|(&a, &b)| a < 0 || a > b) {
                continue;
            }
            for w in self.classes_of_dim(&dw) {
                for t in self.classes_of_dim(&dt) {
                    let g = self.toen_gamma(x, y, &t, &w)?;
                    if !g.is_zero() {
                        out.push((t.clone(), w.clone(), g));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks `Σ_W g^W_{X,Y} |Aut X||Aut Y| / |Aut W| = |Ext¹(Y,X)| / |Hom(Y,X)| = q^{−⟨Y,X⟩}`
    /// and, for each `W`, that short exact sequences `0→X→W→Y→0` number
    /// `g^W_{X,Y} |Aut X| |Aut Y|`.
    pub fn riedtmann_check(&self, x: &IsoClass, y: &IsoClass) -> Result<RiedtmannReport> {
        let (ax, ay) = (self.aut(x), self.aut(y));
        let mut rows = vec![];
        let mut weighted = BigRational::zero();
        for (w, g) in self.hall_expansion(x, y)? {
            let aw = self.aut(&w);
            weighted += BigRational::new(BigInt::from(g * ax * ay), BigInt::from(aw));
            let sequences = self.exact_sequences(x, &w, y, &IsoClass::zero())?;
            rows.push(RiedtmannRow { w: w.render(), hall_number: g, aut_w: aw, sequences, consistent: sequences == g * ax * ay });
        }
        let e = -self.euler(y, x);
        let q = BigRational::from_integer(BigInt::from(self.q()));
        let expected = q.pow(e as i32);
        Ok(RiedtmannReport {
            x: x.render(),
            y: y.render(),
            consistent: weighted == expected && rows.iter().all(|r| r.consistent),
            weighted_sum: weighted.to_string(),
            expected: expected.to_string(),
            rows,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiedtmannRow {
    pub w: String,
    pub hall_number: u64,
    pub aut_w: u64,
    pub sequences: u64,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiedtmannReport {
    pub x: String,
    pub y: String,
    pub rows: Vec<RiedtmannRow>,
    pub weighted_sum: String,
    pub expected: String,
    pub consistent: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgroth::CartanDatum;

    fn a2(q: u8) -> HallContext {
        let c: CartanDatum = "A2".parse().unwrap();
        HallContext::new(QuiverDatum::from_arrows(c, vec![(0, 1)]).unwrap(), q).unwrap()
    }

    #[test]
    fn a2_hall_numbers() {
        let h = a2(2);
        let (s1, s2) = (IsoClass::simple(2, 0), IsoClass::simple(2, 1));
        let p = IsoClass::indecomposable(&[1, 1]);
        assert_eq!(h.hall_number(&s2, &s1, &p).unwrap(), 1);
        assert_eq!(h.hall_number(&s1, &s2, &p).unwrap(), 0);
        assert_eq!(h.hall_number(&s1, &s2, &s1.add(&s2)).unwrap(), 1);
        assert_eq!(h.hall_number(&p, &IsoClass::zero(), &p).unwrap(), 1);
        assert!(h.hall_number(&s1, &s1, &p).is_err());
    }

    #[test]
    fn toen_constants_on_simples() {
        for q in [2u8, 3, 4] {
            let h = a2(q);
            let (s1, s2) = (IsoClass::simple(2, 0), IsoClass::simple(2, 1));
            let z = IsoClass::zero();
            let one = BigRational::from_integer(1.into());
            assert_eq!(h.toen_gamma(&s1, &s2, &s2, &s1).unwrap(), one);
            assert_eq!(h.toen_gamma(&s2, &s1, &s1, &s2).unwrap(), one);
            assert_eq!(h.exact_sequences(&s2, &s2, &s1, &s1).unwrap(), (q as u64 - 1).pow(2));
            assert_eq!(h.exact_sequences(&s1, &s2, &s1, &s2).unwrap(), 0);
            assert_eq!(h.toen_gamma(&s1, &s1, &s1, &s1).unwrap(), one);
            assert_eq!(h.toen_gamma(&s1, &s1, &z, &z).unwrap(), BigRational::new(1.into(), (q as i64 - 1).into()));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let c: CartanDatum = "A2".parse().unwrap();
        let q = QuiverDatum::from_arrows(c, vec![(0, 1)]).unwrap();
        let h = HallContext::with_caps(q, 2, Caps { submodule_dim: 2, ex_dim: 1 }).unwrap();
        let s1 = IsoClass::simple(2, 0);
        let big = s1.add(&s1).add(&IsoClass::simple(2, 1));
        assert!(matches!(h.hall_number(&s1, &s1.add(&IsoClass::simple(2, 1)), &big), Err(Error::ResourceCap(_))));
        assert!(matches!(h.toen_gamma(&big, &s1, &s1, &s1), Err(Error::ResourceCap(_))));
    }
}
