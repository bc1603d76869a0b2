//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use qgroth::characters::CharacterKind;
use qgroth::presentation::verify_relations;
use qgroth::qcartan::CtildeTable;
use qgroth::torus::YElement;
use qgroth::{CharacterContext, Mode, Monomial, QuantumGroupSide, QuiverDatum, XVec};
use qgroth_hall::{iota_check, parse_iso_class, HallContext};

use crate::acceptance;
use crate::cache::Cache;
use crate::config::{parse_list, ConfigFile, Flags, Format, RunConfig};
use crate::error::{usage, CliError};
use crate::output::*;

#[derive(Debug, Parser)]
#[command(name = "qgroth", version, about = "t-deformed Grothendieck rings, dual canonical bases and derived Hall algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Dynkin type, e.g. A3, D4, E6.
    #[arg(long = "type", global = true)]
    pub type_name: Option<String>,
    /// Orientation as 1-based arrows, e.g. 2-1,2-3.
    #[arg(long, global = true)]
    pub arrows: Option<String>,
    /// Height function, e.g. 2,3,2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file whose keys mirror these flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for memo tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Field size for the Hall side.
    #[arg(long, global = true)]
    pub q: Option<u8>,
    /// Largest power of z shown by qcartan
    #[arg(long, global = true)]
    pub mmax: Option<usize>,
    /// Lowest spectral parameter for phi
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lo: Option<i64>,
    /// Highest spectral parameter for phi
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hi: Option<i64>,
    /// Bound on the sum of coordinates of a dimension vector.
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Level range, e.g. 0..3.
    #[arg(long, global = true)]
    pub levels: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Inverse quantum Cartan matrix coefficients as series in z.
    Qcartan {
        /// Restrict to one row (1-based).
        #[arg(long)]
        i: Option<usize>,
        /// Restrict to one column (1-based).
        #[arg(long)]
        j: Option<usize>,
    },
    /// Labels of the repetition quiver by roots and levels.
    Phi,
    /// (q,t)-characters.
    Qchar {
        #[command(subcommand)]
        which: QcharCommand,
    },
    /// Quantum T-system exponents and identity.
    Tsystem {
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value_t = 1)]
        length: i64,
        /// Spectral parameter; defaults to the height of the vertex.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
    },
    /// Decompositions of a dimension vector and their dominant monomials.
    DominantPairs {
        #[arg(long)]
        d: String,
    },
    /// Rescaled dual canonical basis elements.
    Canonical {
        /// PBW multiplicities in adapted-word order.
        #[arg(long, conflicts_with = "weight")]
        a: Option<String>,
        /// All elements of a weight, as root coordinates.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Ringel and derived Hall algebras over F_q.
    Hall {
        #[command(subcommand)]
        which: HallCommand,
    },
    /// Verification runs.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum QcharCommand {
    /// chi(L(Y_{i,p})).
    Fundamental {
        /// Vertex, 1-based
        #[arg(long)]
        vertex: usize,
        /// Spectral parameter
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        /// Truncate to the slice
        #[arg(long)]
        truncated: bool,
    },
    /// Truncated Kirillov-Reshetikhin character from the T-system.
    Kr {
        /// Vertex, 1-based
        #[arg(long)]
        vertex: usize,
        /// Length of the KR string
        #[arg(long)]
        length: i64,
        /// Spectral parameter
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
    },
    /// Standard class chi(M(m)).
    Standard {
        /// Dominant monomial, e.g. Y[1,0]Y[3,2]
        #[arg(long)]
        monomial: String,
        /// Truncate to the slice
        #[arg(long)]
        truncated: bool,
    },
    /// Simple class chi(L(m)).
    Simple {
        /// Dominant monomial, e.g. Y[1,0]Y[3,2]
        #[arg(long)]
        monomial: String,
        /// Truncate to the slice
        #[arg(long)]
        truncated: bool,
    },
    /// Truncation of chi(L(m)) to the slice.
    Truncate {
        /// Dominant monomial, e.g. Y[1,0]Y[3,2]
        #[arg(long)]
        monomial: String,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum HallCommand {
    /// Ringel Hall number g^W_{X,Y}.
    Number {
        /// Iso class, e.g. S1, S1^2 or [1,1]+S3
        #[arg(long)]
        x: String,
        /// Iso class
        #[arg(long)]
        y: String,
        /// Iso class
        #[arg(long)]
        w: String,
    },
    /// Derived Hall constant gamma^{T,W}_{X,Y}.
    Gamma {
        /// Iso class, e.g. S1, S1^2 or [1,1]+S3
        #[arg(long)]
        x: String,
        /// Iso class
        #[arg(long)]
        y: String,
        /// Iso class
        #[arg(long)]
        t: String,
        /// Iso class
        #[arg(long)]
        w: String,
    },
    /// Relations of the derived Hall algebra.
    Relations,
    /// Comparison with the t-deformed Grothendieck ring at t = sqrt(q).
    Iota {
        #[arg(long, default_value_t = 2)]
        max_level: i64,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum VerifyCommand {
    /// The full acceptance suite.
    All {
        /// Desk-scale sizes (the only scale provided).
        #[arg(long)]
        desk: bool,
    },
    /// One acceptance criterion.
    Criterion { id: u8 },
    /// Presentation relations in the Grothendieck ring.
    Presentation,
    /// Simple classes against the dual canonical basis.
    Mainth,
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exit {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Exit { code, stdout: text, stderr: String::new() } } else { Exit { code, stdout: String::new(), stderr: text } };
        }
    };
    let result = config(&cli).and_then(|cfg| execute(&cli.command, &cfg).map(|out| (cfg.format, out)));
    match result {
        Ok((format, out)) => {
            let stdout = match format {
                Format::Text => out.render_text(),
                Format::Json => serde_json::to_string_pretty(&out).expect("outputs serialize") + "\n",
            };
            let code = if out.passed() { 0 } else { 2 };
            Exit { code, stdout, stderr: String::new() }
        }
        Err(e) => Exit { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    let c = &cli.common;
    let file = match &c.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = Flags {
        type_name: c.type_name.clone(),
        arrows: c.arrows.clone(),
        xi: c.xi.clone(),
        format: c.format,
        q: c.q,
        mmax: c.mmax,
        lo: c.lo,
        hi: c.hi,
        bound: c.bound,
        levels: c.levels.clone(),
        cache_dir: c.cache_dir.clone(),
    };
    RunConfig::merge(flags, file)
}

fn vertex_index(quiver: &QuiverDatum, vertex: usize) -> Result<usize, CliError> {
    if vertex == 0 || vertex > quiver.rank() {
        return usage(format!("vertex must lie in 1..={}", quiver.rank()));
    }
    Ok(vertex - 1)
}

fn monomial(s: &str) -> Result<Monomial, CliError> {
    Ok(s.parse()?)
}

fn arrows_1based(quiver: &QuiverDatum) -> Vec<(usize, usize)> {
    quiver.arrows().iter().map(|&(a, b)| (a + 1, b + 1)).collect()
}

fn character(quiver: &QuiverDatum, kind: CharacterKind, label: &Monomial, mode: Mode, element: YElement) -> Output {
    Output::Character(CharacterOutput {
        type_name: quiver.cartan().name(),
        xi: quiver.xi().to_vec(),
        kind,
        label: label.render(),
        mode,
        element,
    })
}

fn mode(truncated: bool) -> Mode {
    if truncated {
        Mode::Truncated
    } else {
        Mode::Full
    }
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Output, CliError> {
    let cache = Cache::new(cfg.cache_dir.as_deref());
    match command {
        Command::Qcartan { i, j } => {
            let cartan = cfg.cartan()?;
            let n = cartan.rank();
            let m_max = cfg.mmax.unwrap_or(4 * cartan.coxeter_number());
            for k in [i, j].into_iter().flatten() {
                if *k == 0 || *k > n {
                    return usage(format!("--i/--j must lie in 1..={n}"));
                }
            }
            let series: Vec<Vec<Vec<(usize, i64)>>> = cache.get_or("qcartan", &format!("{}:{m_max}", cartan.name()), || {
                let t = CtildeTable::new(&cartan);
                Ok::<_, CliError>((0..n).map(|a| (0..n).map(|b| t.series(a, b, m_max)).collect()).collect())
            })?;
            let mut rows = vec![];
            for a in 0..n {
                for b in 0..n {
                    if i.is_some_and(|i| i != a + 1) || j.is_some_and(|j| j != b + 1) {
                        continue;
                    }
                    rows.push(SeriesRow { i: a + 1, j: b + 1, terms: series[a][b].clone() });
                }
            }
            Ok(Output::Qcartan(QcartanOutput { type_name: cartan.name(), m_max, series: rows }))
        }
        Command::Phi => {
            let quiver = cfg.quiver()?;
            // default window: the slice plus one row on either side
            let slice = quiver.ihat_q()?;
            let hi = cfg.hi.unwrap_or(slice.iter().map(|v| v.1).max().unwrap_or(0) + 1);
            let lo = cfg.lo.unwrap_or(slice.iter().map(|v| v.1).min().unwrap_or(0) - 1);
            let rows = quiver.phi_table(lo, hi).into_iter().map(|(i, p, root, level)| PhiRow { i: i + 1, p, root, level }).collect();
            Ok(Output::Phi(PhiOutput { type_name: quiver.cartan().name(), xi: quiver.xi().to_vec(), arrows: arrows_1based(&quiver), rows }))
        }
        Command::Qchar { which } => {
            let quiver = cfg.quiver()?;
            let ctx = CharacterContext::new(quiver.clone());
            match which {
                QcharCommand::Fundamental { vertex, p, truncated } => {
                    let i = vertex_index(&quiver, *vertex)?;
                    let x = ctx.fundamental(i, *p, mode(*truncated))?;
                    Ok(character(&quiver, CharacterKind::Fundamental, &Monomial::y(i, *p), mode(*truncated), x))
                }
                QcharCommand::Kr { vertex, length, p } => {
                    let i = vertex_index(&quiver, *vertex)?;
                    let x = ctx.kr_truncated(i, *length, *p)?;
                    let label = Monomial::from_exponents((0..*length).map(|k| ((i, p + 2 * k), 1)));
                    Ok(character(&quiver, CharacterKind::KirillovReshetikhin, &label, Mode::Truncated, x))
                }
                QcharCommand::Standard { monomial: m, truncated } => {
                    let m = monomial(m)?;
                    let (x, _) = ctx.standard_character(&m, mode(*truncated))?;
                    Ok(character(&quiver, CharacterKind::Standard, &m, mode(*truncated), x))
                }
                QcharCommand::Simple { monomial: m, truncated } => {
                    let m = monomial(m)?;
                    let x = ctx.simple_character(&m, mode(*truncated))?;
                    Ok(character(&quiver, CharacterKind::Simple, &m, mode(*truncated), x))
                }
                QcharCommand::Truncate { monomial: m } => {
                    let m = monomial(m)?;
                    let x = ctx.truncate(&ctx.simple_character(&m, Mode::Full)?);
                    Ok(character(&quiver, CharacterKind::Truncated, &m, Mode::Truncated, x))
                }
            }
        }
        Command::Tsystem { vertex, length, p } => {
            let quiver = cfg.quiver()?;
            let ctx = CharacterContext::new(quiver.clone());
            let i = vertex_index(&quiver, *vertex)?;
            let p = p.unwrap_or(quiver.xi()[i]);
            let (alpha, gamma) = ctx.tsystem_exponents(i, *length)?;
            let identity_holds = if quiver.in_slice(i, p) && *length < ctx.kr_max_length(i, p)? { Some(ctx.verify_tsystem(i, *length, p)?) } else { None };
            Ok(Output::Tsystem(TsystemOutput {
                type_name: quiver.cartan().name(),
                xi: quiver.xi().to_vec(),
                vertex: *vertex,
                length: *length,
                p,
                alpha_doubled: alpha.doubled(),
                gamma_doubled: gamma.doubled(),
                identity_holds,
            }))
        }
        Command::DominantPairs { d } => {
            let quiver = cfg.quiver()?;
            let ctx = CharacterContext::new(quiver.clone());
            let d = parse_list(d)?;
            let rows = ctx
                .dominant_pairs(&d)?
                .into_iter()
                .map(|p| PairRow {
                    decomposition: p.render_decomposition(),
                    monomial: p.monomial.render(),
                    a_monomial: p.render_a_factors(),
                    multiplicities: p.multiplicities,
                })
                .collect();
            Ok(Output::DominantPairs(DominantPairsOutput { type_name: quiver.cartan().name(), xi: quiver.xi().to_vec(), d, rows }))
        }
        Command::Canonical { a, weight } => {
            let quiver = cfg.quiver()?;
            let g = QuantumGroupSide::new(quiver.clone())?;
            let r = quiver.num_positions();
            let vectors = match (a, weight) {
                (Some(a), None) => {
                    let a = parse_list(a)?;
                    if a.len() != r || a.iter().any(|&x| x < 0) {
                        return usage(format!("--a needs {r} nonnegative entries"));
                    }
                    vec![a]
                }
                (None, Some(w)) => {
                    let w = parse_list(w)?;
                    if w.len() != quiver.rank() || w.iter().any(|&x| x < 0) {
                        return usage(format!("--weight needs {} nonnegative entries", quiver.rank()));
                    }
                    g.weight_space(&w)
                }
                _ => return usage("give one of --a or --weight"),
            };
            let mut rows = vec![];
            for a in vectors {
                let element = g.rescaled_dual_canonical(&a)?;
                let pbw = g.pbw_coordinates(&element)?;
                rows.push(CanonicalRow { monomial: g.phi_inverse_vector(&XVec(a.clone())).render(), multiplicities: a, element, pbw });
            }
            Ok(Output::Canonical(CanonicalOutput { type_name: quiver.cartan().name(), xi: quiver.xi().to_vec(), rows }))
        }
        Command::Hall { which } => hall(which, cfg, &cache),
        Command::Verify { which } => match which {
            VerifyCommand::All { .. } => Ok(Output::Acceptance(acceptance::run_all())),
            VerifyCommand::Criterion { id } => {
                let result = acceptance::run_criterion(*id).ok_or_else(|| CliError::Usage(format!("criteria are numbered {:?}", acceptance::criterion_ids())))?;
                Ok(Output::Acceptance(acceptance::AcceptanceReport { criteria: vec![result] }))
            }
            VerifyCommand::Presentation => {
                let ctx = CharacterContext::new(cfg.quiver()?);
                let (lo, hi) = cfg.levels.unwrap_or((0, 3));
                Ok(Output::Presentation(verify_relations(&ctx, lo..=hi)?))
            }
            VerifyCommand::Mainth => {
                let quiver = cfg.quiver()?;
                let g = QuantumGroupSide::new(quiver.clone())?;
                let ctx = CharacterContext::new(quiver.clone());
                let report = g.verify_mainth(&ctx, cfg.bound.unwrap_or(4))?;
                Ok(Output::Mainth(MainthOutput { type_name: quiver.cartan().name(), xi: quiver.xi().to_vec(), report }))
            }
        },
    }
}

fn hall(which: &HallCommand, cfg: &RunConfig, cache: &Cache) -> Result<Output, CliError> {
    let quiver = cfg.quiver()?;
    let q = cfg.require_q()?;
    let h = HallContext::new(quiver.clone(), q)?;
    let n = quiver.rank();
    let arrows = arrows_1based(&quiver);
    let type_name = quiver.cartan().name();
    let table = format!("hall-{type_name}-{}-q{q}", arrows.iter().map(|(a, b)| format!("{a}{b}")).collect::<Vec<_>>().join("_"));
    let class = |s: &str| parse_iso_class(s, n);
    match which {
        HallCommand::Number { x, y, w } => {
            let (cx, cy, cw) = (class(x)?, class(y)?, class(w)?);
            let key = format!("g:{}|{}|{}", cx.render(), cy.render(), cw.render());
            let value = cache.get_or(&table, &key, || h.hall_number(&cx, &cy, &cw))?;
            Ok(Output::HallNumber(HallNumberOutput { type_name, arrows, q, x: cx.render(), y: cy.render(), w: cw.render(), value }))
        }
        HallCommand::Gamma { x, y, t, w } => {
            let (cx, cy, ct, cw) = (class(x)?, class(y)?, class(t)?, class(w)?);
            let key = format!("gamma:{}|{}|{}|{}", cx.render(), cy.render(), ct.render(), cw.render());
            let value: String = cache.get_or(&table, &key, || h.toen_gamma(&cx, &cy, &ct, &cw).map(|g| g.to_string()))?;
            Ok(Output::HallGamma(GammaOutput { type_name, arrows, q, x: cx.render(), y: cy.render(), t: ct.render(), w: cw.render(), value }))
        }
        HallCommand::Relations => {
            let (lo, hi) = cfg.levels.unwrap_or((0, 3));
            Ok(Output::HallRelations(h.verify_dh_relations(lo..=hi)?))
        }
        HallCommand::Iota { max_level } => {
            if *max_level < 0 {
                return usage("--max-level must be nonnegative");
            }
            Ok(Output::HallIota(iota_check(&quiver, q, *max_level)?))
        }
    }
}
