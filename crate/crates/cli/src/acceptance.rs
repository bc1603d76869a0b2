//! The acceptance suite: eleven end-to-end checks against the worked
//! examples, each reported as a single pass/fail line.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use qgroth::characters::{CharacterContext, Mode};
use qgroth::presentation::verify_relations;
use qgroth::qcartan::{ctilde_ar, ctilde_series, format_series, CtildeTable};
use qgroth::qgroup::QuantumGroupSide;
use qgroth::torus::YElement;
use qgroth::{CartanDatum, Element, Error, HalfInt, HalfLaurent, Monomial, QuiverDatum, XVec};
use qgroth_hall::{iota, iota_check, HallContext, IsoClass};

/// Outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
    pub budget_ms: Option<u64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("[{status}] criterion {:>2}: {} ({} ms; {})", self.id, self.title, self.elapsed_ms, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptanceReport {
    pub criteria: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s: String = self.criteria.iter().map(|c| c.line() + "\n").collect();
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        s.push_str(&format!("{passed}/{} criteria passed\n", self.criteria.len()));
        s
    }
}

type Check = std::result::Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "A4 inverse quantum Cartan series", budget: Some(Duration::from_secs(1)), run: criterion_1 },
    Criterion { id: 2, title: "two-route agreement and periodicity", budget: Some(Duration::from_secs(30)), run: criterion_2 },
    Criterion { id: 3, title: "D4 labelling of the repetition quiver", budget: Some(Duration::from_secs(1)), run: criterion_3 },
    Criterion { id: 4, title: "quantum T-system exponents", budget: None, run: criterion_4 },
    Criterion { id: 5, title: "A3 minors, matrices and truncated fundamentals", budget: None, run: criterion_5 },
    Criterion { id: 6, title: "A2 T-system, elimination and Serre identities", budget: None, run: criterion_6 },
    Criterion { id: 7, title: "simple classes map to the dual canonical basis", budget: Some(Duration::from_secs(300)), run: criterion_7 },
    Criterion { id: 8, title: "D4 dominant monomials for d = (1,1,1,1)", budget: None, run: criterion_8 },
    Criterion { id: 9, title: "presentation relations in types A1-A3", budget: None, run: criterion_9 },
    Criterion { id: 10, title: "derived Hall algebra over F_2 and F_3", budget: Some(Duration::from_secs(120)), run: criterion_10 },
    Criterion { id: 11, title: "property suite", budget: None, run: criterion_11 },
];

pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Runs one criterion. Errors and panics inside a check count as failures.
pub fn run_criterion(id: u8) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("check panicked".into()));
    let elapsed = start.elapsed();
    let over_budget = c.budget.is_some_and(|b| elapsed > b);
    let (passed, mut detail) = match outcome {
        Ok(d) => (!over_budget, d),
        Err(e) => (false, e),
    };
    if over_budget {
        detail = format!("{detail}; exceeded budget of {} ms", c.budget.unwrap().as_millis());
    }
    Some(CriterionResult {
        id,
        title: c.title.into(),
        passed,
        detail,
        elapsed_ms: elapsed.as_millis() as u64,
        budget_ms: c.budget.map(|b| b.as_millis() as u64),
    })
}

pub fn run_all() -> AcceptanceReport {
    AcceptanceReport { criteria: CRITERIA.iter().filter_map(|c| run_criterion(c.id)).collect() }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn cartan(name: &str) -> std::result::Result<CartanDatum, String> {
    name.parse().map_err(err)
}

fn orientations(name: &str) -> std::result::Result<Vec<QuiverDatum>, String> {
    QuiverDatum::all_orientations(&cartan(name)?).map_err(err)
}

fn with_xi(name: &str, xi: &[i64]) -> std::result::Result<QuiverDatum, String> {
    QuiverDatum::from_xi(cartan(name)?, xi.to_vec()).map_err(err)
}

fn y(s: &str) -> Monomial {
    s.parse().expect("well-formed monomial literal")
}

/// Sum of commutative monomials, each with coefficient one.
fn commutative(monomials: &[&str]) -> YElement {
    Element::from_terms(monomials.iter().map(|m| (y(m), HalfLaurent::one())))
}

fn t_pow(doubled: i64) -> HalfLaurent {
    HalfLaurent::t_half(doubled)
}

fn criterion_1() -> Check {
    let t = CtildeTable::new(&cartan("A4")?);
    let expected = [
        ((1, 1), "z - z^9 + z^11 - z^19"),
        ((1, 2), "z^2 - z^8 + z^12 - z^18"),
        ((1, 3), "z^3 - z^7 + z^13 - z^17"),
        ((1, 4), "z^4 - z^6 + z^14 - z^16"),
        ((2, 1), "z^2 - z^8 + z^12 - z^18"),
        ((2, 2), "z + z^3 - z^7 - z^9 + z^11 + z^13 - z^17 - z^19"),
        ((2, 3), "z^2 + z^4 - z^6 - z^8 + z^12 + z^14 - z^16 - z^18"),
        ((2, 4), "z^3 - z^7 + z^13 - z^17"),
    ];
    for ((i, j), series) in expected {
        let got = format_series(&t.series(i - 1, j - 1, 19));
        ensure(got == series, || format!("C~_{i}{j} = {got}, expected {series}"))?;
    }
    Ok("8 series match up to z^19".into())
}

fn criterion_2() -> Check {
    let mut compared = 0usize;
    for name in ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6"] {
        let c = cartan(name)?;
        let h = c.coxeter_number();
        let long = ctilde_series(&c, 4 * h);
        for quiver in orientations(name)? {
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    for m in 1..=4 * h {
                        let ar = ctilde_ar(&quiver, i, j, m as i64);
                        ensure(ar == long[i][j][m], || {
                            format!("{name} xi={:?}: C~_{}{}({m}) is {} by recursion, {ar} by AR quiver", quiver.xi(), i + 1, j + 1, long[i][j][m])
                        })?;
                        compared += 1;
                    }
                }
            }
        }
        for i in 0..c.rank() {
            for j in 0..c.rank() {
                for m in 1..=2 * h {
                    ensure(long[i][j][m + 2 * h] == long[i][j][m], || format!("{name}: C~_{}{} not 2h-periodic at {m}", i + 1, j + 1))?;
                }
            }
        }
    }
    Ok(format!("{compared} coefficients agree; 2h-periodic"))
}

fn criterion_3() -> Check {
    let q = with_xi("D4", &[0, 0, 1, 2])?;
    // arrows 4→3, 3→1, 3→2
    ensure(q.arrows() == [(2, 0), (2, 1), (3, 2)], || format!("unexpected orientation {:?}", q.arrows()))?;
    let root = |s: &[usize]| {
        let mut v = vec![0i64; 4];
        for &k in s {
            v[k - 1] += 1;
        }
        v
    };
    let table: [(usize, i64, Vec<i64>, i64); 17] = [
        (3, 3, root(&[1, 2, 3]), 1),
        (1, 2, root(&[1]), 1),
        (2, 2, root(&[2]), 1),
        (4, 2, root(&[4]), 0),
        (3, 1, root(&[3, 4]), 0),
        (1, 0, root(&[1, 3, 4]), 0),
        (2, 0, root(&[2, 3, 4]), 0),
        (4, 0, root(&[3]), 0),
        (3, -1, root(&[1, 2, 3, 3, 4]), 0),
        (1, -2, root(&[2, 3]), 0),
        (2, -2, root(&[1, 3]), 0),
        (4, -2, root(&[1, 2, 3, 4]), 0),
        (3, -3, root(&[1, 2, 3]), 0),
        (1, -4, root(&[1]), 0),
        (2, -4, root(&[2]), 0),
        (4, -4, root(&[4]), -1),
        (3, -5, root(&[3, 4]), -1),
    ];
    for (i, p, beta, m) in &table {
        let got = q.phi(i - 1, *p).map_err(err)?;
        ensure(got == (beta.clone(), *m), || format!("phi({i},{p}) = {got:?}"))?;
        let back = q.phi_inverse(beta, *m).map_err(err)?;
        ensure(back == (i - 1, *p), || format!("phi^-1({beta:?},{m}) = {back:?}"))?;
    }
    Ok(format!("{} labels and their inverses match", table.len()))
}

fn criterion_4() -> Check {
    let a1 = CharacterContext::new(with_xi("A1", &[0])?);
    for k in 1..=5 {
        let e = a1.tsystem_exponents(0, k).map_err(err)?;
        ensure(e.0 == HalfInt(-2), || format!("A1 k={k}: alpha = {}/2", e.0 .0))?;
    }
    let a3 = CharacterContext::new(with_xi("A3", &[2, 3, 2])?);
    let e = a3.tsystem_exponents(0, 1).map_err(err)?;
    ensure(e == (HalfInt(-1), HalfInt(1)), || format!("A3 (1,1): (alpha, gamma) = ({}/2, {}/2)", e.0 .0, e.1 .0))?;
    for (i, p) in a3.quiver().ihat_q().map_err(err)? {
        for s in 1..a3.kr_max_length(i, p).map_err(err)? {
            ensure(a3.verify_tsystem(i, s, p).map_err(err)?, || format!("A3 T-system fails at ({}, {s}, {p})", i + 1))?;
        }
    }
    Ok("A1 alpha = -1 for k = 1..5; A3 (alpha, gamma)(1,1) = (-1/2, 1/2)".into())
}

fn criterion_5() -> Check {
    let quiver = with_xi("A3", &[2, 3, 2])?;
    let g = QuantumGroupSide::new(quiver.clone()).map_err(err)?;
    let ch = CharacterContext::new(quiver);
    let l = [
        [0, -1, -1, 0, 0, 0],
        [1, 0, 0, 0, 1, -1],
        [1, 0, 0, 0, -1, 1],
        [0, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0],
        [0, 1, -1, 0, 0, 0],
    ];
    let m = [
        [0, -1, -1, 0, 1, 1],
        [1, 0, 0, -1, 1, -1],
        [1, 0, 0, -1, -1, 1],
        [0, 1, 1, 0, -1, -1],
        [-1, -1, 1, 1, 0, 0],
        [-1, 1, -1, 1, 0, 0],
    ];
    ensure(g.flag_commutation().iter().zip(&l).all(|(a, b)| a.as_slice() == b), || format!("L = {:?}", g.flag_commutation()))?;
    ensure(g.x_commutation().iter().zip(&m).all(|(a, b)| a.as_slice() == b), || format!("M = {:?}", g.x_commutation()))?;

    let fundamentals: [(&str, &[&str]); 6] = [
        ("Y[1,2]", &["Y[1,2]"]),
        ("Y[1,0]", &["Y[1,0]", "Y[1,2]^-1Y[2,1]", "Y[2,3]^-1Y[3,2]"]),
        ("Y[2,1]", &["Y[2,1]", "Y[1,2]Y[2,3]^-1Y[3,2]"]),
        ("Y[2,3]", &["Y[2,3]"]),
        ("Y[3,2]", &["Y[3,2]"]),
        ("Y[3,0]", &["Y[3,0]", "Y[3,2]^-1Y[2,1]", "Y[2,3]^-1Y[1,2]"]),
    ];
    for (label, terms) in fundamentals {
        let expected = commutative(terms);
        let simple = ch.simple_character(&y(label), Mode::Truncated).map_err(err)?;
        ensure(simple == expected, || format!("truncated chi({label}) = {}", simple.render("t")))?;
        let ((i, p), _) = y(label).factors().next().expect("one factor");
        let kr = ch.kr_truncated(i, 1, p).map_err(err)?;
        ensure(kr == expected, || format!("T-system route for {label} gives {}", kr.render("t")))?;
    }
    for label in ["Y[1,0]Y[1,2]", "Y[2,1]Y[2,3]", "Y[3,0]Y[3,2]"] {
        let simple = ch.simple_character(&y(label), Mode::Truncated).map_err(err)?;
        ensure(simple == commutative(&[label]), || format!("truncated chi({label}) = {}", simple.render("t")))?;
    }

    // D(0,k) as monomials in the X_j, with their powers of v = t
    let x = |v: [i64; 6], doubled: i64| Element::term(XVec(v.to_vec()), t_pow(doubled));
    let flags = [
        x([1, 0, 0, 0, 0, 0], 0),
        x([0, 1, 0, 0, 0, 0], 1),
        x([0, 0, 1, 0, 0, 0], 1),
        x([1, 0, 0, 1, 0, 0], 2),
        x([0, 1, 0, 0, 1, 0], 2),
        x([0, 0, 1, 0, 0, 1], 2),
    ];
    for (k, expected) in flags.iter().enumerate() {
        let d = g.flag_minor(k + 1);
        ensure(&d == expected, || format!("D(0,{}) = {}", k + 1, d.render("v")))?;
    }
    // Φ(Y23) = D(0,1), Φ(Y12) = v^{-1/2}D(0,2), ..., Φ(Y30Y32) = v^{-1}D(0,6)
    let images = [("Y[2,3]", 1, 0), ("Y[1,2]", 2, -1), ("Y[3,2]", 3, -1), ("Y[2,1]Y[2,3]", 4, -2), ("Y[1,0]Y[1,2]", 5, -2), ("Y[3,0]Y[3,2]", 6, -2)];
    for (label, k, doubled) in images {
        let image = g.phi(&commutative(&[label])).map_err(err)?;
        ensure(image == g.flag_minor(k).shift_t(doubled), || format!("Phi({label}) = {}", image.render("v")))?;
    }
    // Φ⁻¹(v⁻¹D(1,4)) = χ̃(Y21), Φ⁻¹(D(2,5)) = χ̃(Y10), Φ⁻¹(D(3,6)) = χ̃(Y30)
    for ((b, d), doubled, label) in [((1, 4), -2, "Y[2,1]"), ((2, 5), 0, "Y[1,0]"), ((3, 6), 0, "Y[3,0]")] {
        let minor = g.minor(b, d).map_err(err)?.shift_t(doubled);
        let back = g.phi_inverse(&minor).map_err(err)?;
        let expected = ch.simple_character(&y(label), Mode::Truncated).map_err(err)?;
        ensure(back == expected, || format!("Phi^-1 of D({b},{d}) = {}", back.render("t")))?;
    }
    Ok("L, M, 6 truncated fundamentals, 6 flag minors, 6 Phi-images and D(1,4), D(2,5), D(3,6)".into())
}

fn criterion_6() -> Check {
    let ctx = CharacterContext::new(with_xi("A2", &[2, 1])?);
    for mode in [Mode::Full, Mode::Truncated] {
        let chi = |s: &str| ctx.simple_character(&y(s), mode).map_err(err);
        let (c10, c12, c21, c1012) = (chi("Y[1,0]")?, chi("Y[1,2]")?, chi("Y[2,1]")?, chi("Y[1,0]Y[1,2]")?);
        let a = ctx.mul(&c10, &c12);
        let b = ctx.mul(&c12, &c10);
        ensure(a == c1012.shift_t(-1).add(&c21.shift_t(1)), || format!("{mode:?}: chi(Y10)*chi(Y12) = {}", a.render("t")))?;
        ensure(b == c1012.shift_t(1).add(&c21.shift_t(-1)), || format!("{mode:?}: chi(Y12)*chi(Y10) = {}", b.render("t")))?;
        let prefactor = HalfLaurent::from_terms([(-1, 1), (3, -1)]);
        ensure(c21.scale(&prefactor) == b.sub(&a.shift_t(2)), || format!("{mode:?}: elimination identity fails"))?;
        ensure(ctx.mul(&c21, &c10) == ctx.mul(&c10, &c21).shift_t(-2), || format!("{mode:?}: chi(Y21) and chi(Y10) do not t-commute"))?;
        let t_sum = HalfLaurent::from_terms([(2, 1), (-2, 1)]);
        for (xi, xj, name) in [(&c10, &c12, "first"), (&c12, &c10, "second")] {
            let xii = ctx.mul(xi, xi);
            let serre = ctx.mul(xj, &xii).sub(&ctx.mul(&ctx.mul(xi, xj), xi).scale(&t_sum)).add(&ctx.mul(&xii, xj));
            ensure(serre.is_zero(), || format!("{mode:?}: {name} Serre relation leaves {}", serre.render("t")))?;
        }
    }
    Ok("both T-system identities, elimination, t-commutation and both Serre relations, full and truncated".into())
}

fn criterion_7() -> Check {
    let mut quivers = orientations("A2")?;
    quivers.extend(orientations("A3")?);
    quivers.push(with_xi("D4", &[0, 0, 1, 2])?);
    let mut rows = 0;
    for quiver in quivers {
        let g = QuantumGroupSide::new(quiver.clone()).map_err(err)?;
        let ch = CharacterContext::new(quiver.clone());
        let report = g.verify_mainth(&ch, 4).map_err(err)?;
        if let Some(bad) = report.rows.iter().find(|r| !(r.standard_matches && r.simple_matches)) {
            return Err(format!("{} xi={:?}: {} (a = {:?})", quiver.cartan().name(), quiver.xi(), bad.monomial.render(), bad.multiplicities));
        }
        rows += report.rows.len();
    }
    Ok(format!("{rows} dominant monomials over 7 quivers"))
}

fn criterion_8() -> Check {
    let ctx = CharacterContext::new(with_xi("D4", &[4, 4, 5, 4])?);
    let pairs = ctx.dominant_pairs(&[1, 1, 1, 1]).map_err(err)?;
    let table = [
        ("(α1)+(α2)+(α3)+(α4)", "Y[1,0]Y[2,0]Y[3,5]Y[4,0]", "1"),
        ("(α1+α3)+(α2)+(α4)", "Y[1,4]Y[2,0]Y[4,0]", "A[1,1]A[3,2]A[2,3]A[4,3]A[3,4]"),
        ("(α2+α3)+(α1)+(α4)", "Y[2,4]Y[1,0]Y[4,0]", "A[2,1]A[3,2]A[1,3]A[4,3]A[3,4]"),
        ("(α3+α4)+(α1)+(α2)", "Y[4,4]Y[1,0]Y[2,0]", "A[4,1]A[3,2]A[1,3]A[2,3]A[3,4]"),
        ("(α1+α2+α3)+(α4)", "Y[4,2]Y[4,0]", "A[1,1]A[2,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]"),
        ("(α1+α3+α4)+(α2)", "Y[2,2]Y[2,0]", "A[1,1]A[4,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]"),
        ("(α2+α3+α4)+(α1)", "Y[1,2]Y[1,0]", "A[2,1]A[4,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]"),
        ("(α1+α2+α3+α4)", "Y[3,1]", "A[1,1]A[2,1]A[4,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]"),
    ];
    ensure(pairs.len() == table.len(), || format!("{} rows", pairs.len()))?;
    for (row, (decomposition, monomial, a_column)) in pairs.iter().zip(table) {
        ensure(row.render_decomposition() == decomposition, || format!("row {} for {decomposition}", row.render_decomposition()))?;
        ensure(row.monomial == y(monomial), || format!("{decomposition}: monomial {}", row.monomial.render()))?;
        let a = row.render_a_factors().unwrap_or_else(|| "none".into());
        ensure(a == a_column, || format!("{decomposition}: A-monomial {a}"))?;
    }
    Ok("8 rows with monomials and A-monomials".into())
}

fn criterion_9() -> Check {
    let mut checked = 0;
    for name in ["A1", "A2", "A3"] {
        for quiver in orientations(name)? {
            let ctx = CharacterContext::new(quiver.clone());
            let report = verify_relations(&ctx, 0..=3).map_err(err)?;
            ensure(report.passed(), || format!("{name} xi={:?}: {:?}", quiver.xi(), report.failures.first()))?;
            checked += report.checked;
        }
    }
    // y_m = χ(L(Y_{1,2m})) for sl_2
    let ctx = CharacterContext::new(with_xi("A1", &[0])?);
    let ys: Vec<YElement> = (0..4).map(|m| ctx.simple_character(&Monomial::y(0, 2 * m), Mode::Full)).collect::<Result<_, _>>().map_err(err)?;
    let constant = Element::term(Monomial::one(), HalfLaurent::from_terms([(0, 1), (-4, -1)]));
    for m in 0..4usize {
        for p in m + 1..4 {
            let lhs = ctx.mul(&ys[m], &ys[p]);
            let rhs = if p == m + 1 {
                ctx.mul(&ys[p], &ys[m]).shift_t(-4).add(&constant)
            } else {
                let sign = if (p - m) % 2 == 0 { 1 } else { -1 };
                ctx.mul(&ys[p], &ys[m]).shift_t(4 * sign)
            };
            ensure(lhs == rhs, || format!("sl2: y_{m} y_{p} = {}", lhs.render("t")))?;
        }
    }
    Ok(format!("{checked} relation instances over all orientations; sl2 ladder matches"))
}

fn criterion_10() -> Check {
    let ratio = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let mut relations = 0;
    for name in ["A2", "A3"] {
        for quiver in orientations(name)? {
            for q in [2u8, 3] {
                let h = HallContext::new(quiver.clone(), q).map_err(err)?;
                let n = quiver.rank();
                let zero = IsoClass::zero();
                for i in 0..n {
                    let si = IsoClass::simple(n, i);
                    let g = h.toen_gamma(&si, &si, &zero, &zero).map_err(err)?;
                    ensure(g == ratio(1, q as i64 - 1), || format!("{name} q={q}: gamma_(S{0},S{0})^(0,0) = {g}", i + 1))?;
                    for j in (0..n).filter(|&j| j != i) {
                        let sj = IsoClass::simple(n, j);
                        let g = h.toen_gamma(&si, &sj, &sj, &si).map_err(err)?;
                        ensure(g == ratio(1, 1), || format!("{name} q={q}: gamma_(S{},S{})^(S{1},S{0}) = {g}", i + 1, j + 1))?;
                    }
                }
                let report = h.verify_dh_relations(0..=3).map_err(err)?;
                ensure(report.passed(), || format!("{name} {:?} q={q}: {:?}", quiver.arrows(), report.failures.first()))?;
                relations += report.checked;
                let identity = iota::constant_identity(q).map_err(err)?;
                ensure(identity.holds, || format!("q={q}: {} vs {}", identity.grothendieck_side, identity.hall_side))?;
                let iota_report = iota_check(&quiver, q, 3).map_err(err)?;
                ensure(iota_report.passed(), || format!("{name} xi={:?} q={q}: rescaled generators differ", quiver.xi()))?;
            }
        }
    }
    Ok(format!("gamma values, {relations} H1-H3 instances, constant identity and rescaled generators"))
}

fn criterion_11() -> Check {
    let mut notes = vec![];
    notes.push(antisymmetry()?);
    notes.push(products()?);
    notes.push(positivity_and_triangularity()?);
    notes.push(dual_route()?);
    Ok(notes.join("; "))
}

fn antisymmetry() -> Check {
    let mut count = 0;
    for name in ["A1", "A2", "A3", "A4", "D4", "E6"] {
        let quiver = orientations(name)?.remove(0);
        let ctx = CharacterContext::new(quiver);
        let n = ctx.cartan().rank();
        let h = ctx.cartan().coxeter_number() as i64;
        let tw = ctx.twist();
        for i in 0..n {
            for j in 0..n {
                for p in -2 * h..=2 * h {
                    for s in -2 * h..=2 * h {
                        ensure(tw.n(i, p, j, s) == -tw.n(j, s, i, p), || format!("{name}: N({},{p};{},{s})", i + 1, j + 1))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("N antisymmetric on {count} pairs"))
}

fn products() -> Check {
    let mut count = 0;
    for (name, xi) in [("A2", vec![2, 1]), ("A3", vec![2, 3, 2]), ("D4", vec![0, 0, 1, 2])] {
        let ctx = CharacterContext::new(with_xi(name, &xi)?);
        let mut elements = vec![];
        for (i, p) in ctx.quiver().ihat_q().map_err(err)?.into_iter().take(5) {
            elements.push(ctx.fundamental(i, p, Mode::Truncated).map_err(err)?);
        }
        elements.push(Element::term(y("Y[1,0]^-1Y[2,3]"), HalfLaurent::from_terms([(1, 2), (-2, -1)])));
        for a in &elements {
            for b in &elements {
                let ab = ctx.mul(a, b);
                ensure(ab.bar() == ctx.mul(&b.bar(), &a.bar()), || format!("{name}: bar is not an anti-automorphism"))?;
                for c in elements.iter().take(3) {
                    ensure(ctx.mul(&ab, c) == ctx.mul(a, &ctx.mul(b, c)), || format!("{name}: star product not associative"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("associativity on {count} triples, bar anti-automorphism"))
}

fn positivity_and_triangularity() -> Check {
    let mut simples = 0;
    let mut canonical = 0;
    for (name, xi) in [("A2", vec![2, 1]), ("A3", vec![2, 3, 2])] {
        let quiver = with_xi(name, &xi)?;
        let ctx = CharacterContext::new(quiver.clone());
        let g = QuantumGroupSide::new(quiver.clone()).map_err(err)?;
        let n = quiver.rank();
        for d in qgroth::qgroup::dimension_vectors(n, 3) {
            let modes: &[Mode] = if name == "A2" { &[Mode::Full, Mode::Truncated] } else { &[Mode::Truncated] };
            for pair in ctx.dominant_pairs(&d).map_err(err)? {
                let m = &pair.monomial;
                for &mode in modes {
                    let l = ctx.simple_character(m, mode).map_err(err)?;
                    ensure(l.terms().all(|(_, c)| c.in_nat_laurent() && c.has_integer_exponents()), || {
                        format!("{name}: chi(L({})) has a coefficient outside N[t^+-1]", m.render())
                    })?;
                    let expansion = ctx.standard_to_simple(m, mode).map_err(err)?;
                    ensure(expansion.first() == Some(&(m.clone(), HalfLaurent::one())), || format!("{name}: M({}) has no leading L", m.render()))?;
                    ensure(expansion[1..].iter().all(|(_, c)| c.in_negative_integer_part()), || {
                        format!("{name}: M({}) is not unitriangular", m.render())
                    })?;
                    simples += 1;
                }
                let b = g.rescaled_dual_canonical(&pair.multiplicities).map_err(err)?;
                let coords = g.pbw_coordinates(&b).map_err(err)?;
                ensure(coords.first() == Some(&(pair.multiplicities.clone(), HalfLaurent::one())), || format!("{name}: B*({:?}) leading term", pair.multiplicities))?;
                ensure(coords[1..].iter().all(|(_, c)| c.in_negative_integer_part()), || format!("{name}: B*({:?}) not unitriangular", pair.multiplicities))?;
                canonical += 1;
            }
        }
    }
    Ok(format!("{simples} simple classes positive and unitriangular, {canonical} dual canonical elements unitriangular"))
}

fn dual_route() -> Check {
    let mut count = 0;
    for name in ["A1", "A2", "A3", "A4", "D4"] {
        for quiver in orientations(name)? {
            let ctx = CharacterContext::new(quiver.clone());
            for (i, p) in quiver.ihat_q().map_err(err)? {
                let kr = ctx.kr_truncated(i, 1, p).map_err(err)?;
                match ctx.fm_fundamental(i, p) {
                    Ok(fm) => ensure(ctx.truncate(&fm) == kr, || format!("{name} xi={:?} at ({}, {p})", quiver.xi(), i + 1))?,
                    Err(Error::NotMultiplicityFree(_)) => {
                        // the graded lift only exists on the T-system side; compare at t = 1
                        let classical: BTreeMap<Monomial, BigInt> = ctx
                            .fm_classical(i, p)
                            .map_err(err)?
                            .into_iter()
                            .filter(|(m, _)| m.all_vars(|j, s| quiver.in_slice(j, s)))
                            .map(|(m, c)| (m, BigInt::from(c)))
                            .collect();
                        ensure(classical == kr.at_t_equals_one() && kr.is_bar_invariant(), || {
                            format!("{name} xi={:?} at ({}, {p}) classically", quiver.xi(), i + 1)
                        })?
                    }
                    Err(e) => return Err(err(e)),
                }
                count += 1;
            }
        }
    }
    Ok(format!("FM and T-system agree on {count} fundamentals"))
}
