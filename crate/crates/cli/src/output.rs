//! Serializable command results and their text rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use qgroth::cartan::format_root;
use qgroth::characters::CharacterKind;
use qgroth::presentation::PresentationReport;
use qgroth::qcartan::format_series;
use qgroth::qgroup::MainReport;
use qgroth::torus::{XElement, YElement};
use qgroth::{HalfLaurent, Mode};
use qgroth_hall::{DhRelationReport, IotaReport};

use crate::acceptance::AcceptanceReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub i: usize,
    pub j: usize,
    /// `(m, C̃_ij(m))` for the nonzero coefficients.
    pub terms: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QcartanOutput {
    pub type_name: String,
    pub m_max: usize,
    pub series: Vec<SeriesRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiRow {
    pub i: usize,
    pub p: i64,
    pub root: Vec<i64>,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiOutput {
    pub type_name: String,
    pub xi: Vec<i64>,
    pub arrows: Vec<(usize, usize)>,
    pub rows: Vec<PhiRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterOutput {
    pub type_name: String,
    pub xi: Vec<i64>,
    pub kind: CharacterKind,
    pub label: String,
    pub mode: Mode,
    pub element: YElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsystemOutput {
    pub type_name: String,
    pub xi: Vec<i64>,
    pub vertex: usize,
    pub length: i64,
    pub p: i64,
    /// Doubled exponents `2α`, `2γ`.
    pub alpha_doubled: i64,
    pub gamma_doubled: i64,
    /// Whether the truncated identity holds; `None` past the truncation.
    pub identity_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub decomposition: String,
    pub multiplicities: Vec<i64>,
    pub monomial: String,
    pub a_monomial: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominantPairsOutput {
    pub type_name: String,
    pub xi: Vec<i64>,
    pub d: Vec<i64>,
    pub rows: Vec<PairRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalRow {
    pub multiplicities: Vec<i64>,
    pub monomial: String,
    pub element: XElement,
    pub pbw: Vec<(Vec<i64>, HalfLaurent)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalOutput {
    pub type_name: String,
    pub xi: Vec<i64>,
    pub rows: Vec<CanonicalRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallNumberOutput {
    pub type_name: String,
    pub arrows: Vec<(usize, usize)>,
    pub q: u8,
    pub x: String,
    pub y: String,
    pub w: String,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaOutput {
    pub type_name: String,
    pub arrows: Vec<(usize, usize)>,
    pub q: u8,
    pub x: String,
    pub y: String,
    pub t: String,
    pub w: String,
    /// Exact rational, e.g. `1/2`.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainthOutput {
    pub type_name: String,
    pub xi: Vec<i64>,
    pub report: MainReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Output {
    Qcartan(QcartanOutput),
    Phi(PhiOutput),
    Character(CharacterOutput),
    Tsystem(TsystemOutput),
    DominantPairs(DominantPairsOutput),
    Canonical(CanonicalOutput),
    HallNumber(HallNumberOutput),
    HallGamma(GammaOutput),
    HallRelations(DhRelationReport),
    HallIota(IotaReport),
    Presentation(PresentationReport),
    Mainth(MainthOutput),
    Acceptance(AcceptanceReport),
}

fn character_name(kind: CharacterKind) -> &'static str {
    match kind {
        CharacterKind::Fundamental | CharacterKind::Simple => "L",
        CharacterKind::KirillovReshetikhin => "W",
        CharacterKind::Standard => "M",
        CharacterKind::Truncated => "L",
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}

impl Output {
    /// Whether a verification command found everything consistent.
    pub fn passed(&self) -> bool {
        match self {
            Output::Tsystem(t) => t.identity_holds != Some(false),
            Output::HallRelations(r) => r.passed(),
            Output::HallIota(r) => r.passed(),
            Output::Presentation(r) => r.passed(),
            Output::Mainth(r) => r.report.passed(),
            Output::Acceptance(r) => r.passed(),
            _ => true,
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        match self {
            Output::Qcartan(o) => {
                for r in &o.series {
                    let _ = writeln!(s, "C~_{}{}(z) = {}", r.i, r.j, format_series(&r.terms));
                }
            }
            Output::Phi(o) => {
                let _ = writeln!(s, "(i,p)\tbeta\tm");
                for r in &o.rows {
                    let _ = writeln!(s, "({},{})\t{}\t{}", r.i, r.p, format_root(&r.root), r.level);
                }
            }
            Output::Character(o) => {
                let side = if o.mode == Mode::Truncated { "chi~" } else { "chi" };
                let _ = writeln!(s, "{side}({}({})) = {}", character_name(o.kind), o.label, o.element.render("t"));
            }
            Output::Tsystem(o) => {
                let half = |d: i64| if d % 2 == 0 { (d / 2).to_string() } else { format!("{d}/2") };
                let _ = writeln!(s, "alpha = {}, gamma = {}", half(o.alpha_doubled), half(o.gamma_doubled));
                match o.identity_holds {
                    Some(ok) => {
                        let _ = writeln!(s, "T-system at ({}, {}, {}): {}", o.vertex, o.length, o.p, verdict(ok));
                    }
                    None => {
                        let _ = writeln!(s, "T-system at ({}, {}, {}): beyond the truncation", o.vertex, o.length, o.p);
                    }
                }
            }
            Output::DominantPairs(o) => {
                for r in &o.rows {
                    let a = r.a_monomial.as_deref().unwrap_or("-");
                    let _ = writeln!(s, "{}  <->  {}  <->  {}", r.decomposition, r.monomial, a);
                }
            }
            Output::Canonical(o) => {
                for r in &o.rows {
                    let a: Vec<String> = r.multiplicities.iter().map(i64::to_string).collect();
                    let _ = writeln!(s, "B~*({}) = Phi(chi~(L({}))) = {}", a.join(","), r.monomial, r.element.render("v"));
                }
            }
            Output::HallNumber(o) => {
                let _ = writeln!(s, "g^{{{}}}_{{{},{}}} = {}", o.w, o.x, o.y, o.value);
            }
            Output::HallGamma(o) => {
                let _ = writeln!(s, "gamma^{{{},{}}}_{{{},{}}} = {}", o.t, o.w, o.x, o.y, o.value);
            }
            Output::HallRelations(r) => {
                let _ = writeln!(s, "{} q={} levels {}..{}: {} relations checked, {} failures", r.type_name, r.q, r.levels.0, r.levels.1, r.checked, r.failures.len());
                for f in &r.failures {
                    let _ = writeln!(s, "  {} (i={}, j={}, m={}, p={}): residual {}", f.relation, f.i, f.j, f.m, f.p, f.residual);
                }
            }
            Output::HallIota(r) => {
                let c = &r.constant_identity;
                let _ = writeln!(s, "{} xi={:?} q={}", r.type_name, r.xi, r.q);
                let _ = writeln!(s, "constant identity {}: {} = {}", verdict(c.holds), c.grothendieck_side, c.hall_side);
                for k in &r.commutations {
                    let _ = writeln!(
                        s,
                        "x_{},{} x_{},{} = t^{} x_{2},{3} x_{0},{1} + {}: {}",
                        k.i,
                        k.m,
                        k.j,
                        k.p,
                        k.t_exponent,
                        k.constant_hall,
                        verdict(k.holds)
                    );
                }
                for k in &r.serre {
                    let _ = writeln!(s, "{}: {}", k.label, verdict(k.holds));
                }
                for f in &r.fundamentals {
                    let _ = writeln!(
                        s,
                        "iota(chi(L({}))) = u^({}/2) * {} * z_({})^[0]: {}",
                        f.monomial,
                        f.half_power,
                        f.scalar,
                        f.root,
                        verdict(f.single_term && f.matches_root)
                    );
                }
            }
            Output::Presentation(r) => {
                let _ = writeln!(s, "{} xi={:?} levels {}..{}: {} relations checked, {} failures", r.type_name, r.xi, r.levels.0, r.levels.1, r.checked, r.failures.len());
                for f in &r.failures {
                    let _ = writeln!(s, "  {} (i={}, j={}, m={}, p={}): residual {}", f.relation, f.i, f.j, f.m, f.p, f.residual);
                }
            }
            Output::Mainth(o) => {
                let bad = o.report.rows.iter().filter(|r| !(r.standard_matches && r.simple_matches)).count();
                let _ = writeln!(s, "{} xi={:?} degree <= {}: {} dominant monomials, {} mismatches", o.type_name, o.xi, o.report.degree_bound, o.report.rows.len(), bad);
                for r in o.report.rows.iter().filter(|r| !(r.standard_matches && r.simple_matches)) {
                    let _ = writeln!(s, "  {} a={:?} standard {} simple {}", r.monomial.render(), r.multiplicities, verdict(r.standard_matches), verdict(r.simple_matches));
                }
            }
            Output::Acceptance(r) => s.push_str(&r.render()),
        }
        s
    }
}
