mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use brauer_core::forms::{invariant_symmetric_forms, Representation};
use brauer_core::group::{CentralInvolution, FiniteGroup};
use brauer_core::rational::QMatrix;
use brauer_core::sharp::{bm_group, h2_sharp, FieldDescriptor};
use brauer_core::supergroup::{self, CheckReport, SupergroupAlgebra};
use brauer_core::weyl::{self, RootSystemType, WeylOptions};
use brauer_core::{Budgets, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::{CocycleFile, ElementRef, GroupFile, MatrixFile, RepFile};
use report::{Document, GroupHeader};

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Brauer groups of modified supergroup algebras, twisted and lazy cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Field descriptor.
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Closed)]
    field: FieldArg,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for random projections and sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest group produced by closure.
    #[arg(long, global = true)]
    budget_enumeration: Option<usize>,
    /// Largest (|G|-1)^2 for a cohomology computation.
    #[arg(long, global = true)]
    budget_unknowns: Option<u64>,
    /// Largest enumerated group of classes.
    #[arg(long, global = true)]
    budget_classes: Option<u64>,
    /// Largest Hopf algebra dimension checked exhaustively.
    #[arg(long, global = true)]
    budget_hopf_dim: Option<usize>,
    /// Sampled tuples above the exhaustive dimension.
    #[arg(long, global = true)]
    budget_hopf_samples: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Closed,
    Real,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Where the group datum comes from.
#[derive(Args, Debug, Clone, Default)]
struct Source {
    /// Group file (JSON).
    #[arg(long)]
    group: Option<PathBuf>,
    /// Root system type, e.g. B3, for the Weyl datum G(Φ).
    #[arg(long = "type")]
    root_type: Option<RootSystemType>,
    /// Central involution: element index or word such as "g0 g1".
    #[arg(long)]
    u: Option<String>,
    /// Representation file (JSON).
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Allow the E7 construction.
    #[arg(long)]
    allow_e7: bool,
    /// Write the resolved group as a table file with the same element indexing.
    #[arg(long)]
    emit_group: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H²(G, k·), or H²(G, ℤ_N) with --coeff.
    H2 {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        coeff: Option<u64>,
        /// Classify this cocycle file.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// H²♯(G, k·) under the ♯-product.
    H2sharp {
        #[command(flatten)]
        source: Source,
    },
    /// BM(k, k[G]⋉ΛV, R_u).
    Bm {
        #[command(flatten)]
        source: Source,
    },
    /// Lazy cohomology H²_L(k[G]⋉ΛV).
    Lazy {
        #[command(flatten)]
        source: Source,
    },
    /// Invariant symmetric bilinear forms of a representation.
    Invforms {
        #[command(flatten)]
        source: Source,
    },
    /// Lazy cohomology and BM rows for root system types.
    WeylTable {
        /// Comma-separated types.
        #[arg(long, value_delimiter = ',', default_value = "A1,A2,A3,A4,B2,B3,B4,D4,D5,G2,F4,E6,E7,E8")]
        types: Vec<RootSystemType>,
        #[arg(long)]
        compute_b4: bool,
        #[arg(long)]
        allow_e7: bool,
    },
    /// Hopf, R-matrix and cocycle checks.
    Verify {
        /// E<n> for E(n).
        #[arg(long)]
        algebra: Option<String>,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        check: Check,
        /// Matrix A for R_A: a file, "identity" or "zero".
        #[arg(long = "A")]
        a: Option<String>,
        /// Matrix Σ: a file or "identity"; defaults to the first invariant form.
        #[arg(long)]
        sigma: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Hopf,
    Quasitriangular,
    Triangular,
    Omega,
    Lambda,
    LambdaUnchecked,
}

impl Common {
    fn budgets(&self) -> Budgets {
        let mut b = Budgets::default();
        if let Some(x) = self.budget_enumeration {
            b.enumeration_cap = x;
        }
        if let Some(x) = self.budget_unknowns {
            b.cohomology_unknowns = x;
        }
        if let Some(x) = self.budget_classes {
            b.class_enumeration = x;
        }
        if let Some(x) = self.budget_hopf_dim {
            b.hopf_dim = x;
        }
        if let Some(x) = self.budget_hopf_samples {
            b.hopf_samples = x;
        }
        if let Some(s) = self.seed {
            b.seed = s;
        }
        b
    }

    fn field(&self) -> FieldDescriptor {
        match self.field {
            FieldArg::Closed => FieldDescriptor::CLOSED,
            FieldArg::Real => FieldDescriptor::REAL,
        }
    }
}

/// A resolved group datum.
struct Datum {
    group: FiniteGroup,
    u: Option<usize>,
    rep: Option<Representation>,
}

fn parse_element_ref(s: &str) -> ElementRef {
    s.trim().parse().map(ElementRef::Index).unwrap_or_else(|_| ElementRef::Word(s.to_string()))
}

fn load(source: &Source, budgets: &Budgets) -> Result<Datum> {
    let mut datum = match (&source.group, source.root_type) {
        (Some(path), None) => {
            let file: GroupFile = input::read_json(path)?;
            let loaded = file.load(budgets.enumeration_cap)?;
            let rep = match &loaded.matrices {
                Some(m) => Some(Representation::from_elements(&loaded.group, m.clone())?),
                None => None,
            };
            Datum { group: loaded.group, u: loaded.u, rep }
        }
        (None, Some(t)) => {
            let options = WeylOptions { allow_e7: source.allow_e7, compute_b4: true };
            let d = weyl::group_datum(t, budgets, &options)?;
            Datum { group: d.group, u: Some(d.inv.u), rep: Some(d.rep) }
        }
        (Some(_), Some(_)) => return Err(Error::Invalid("give either --group or --type, not both".into())),
        (None, None) => return Err(Error::Invalid("a group is required (--group FILE or --type TYPE)".into())),
    };
    if let Some(u) = &source.u {
        datum.u = Some(input::resolve_element(&datum.group, &parse_element_ref(u))?);
    }
    if let Some(path) = &source.rep {
        let file: RepFile = input::read_json(path)?;
        let rep = match (&file.generators, &file.elements) {
            (Some(gens), None) => {
                Representation::new(&datum.group, gens.iter().map(input::to_qmatrix).collect::<Result<_>>()?)?
            }
            (None, Some(els)) => {
                Representation::from_elements(&datum.group, els.iter().map(input::to_qmatrix).collect::<Result<_>>()?)?
            }
            _ => return Err(Error::Invalid("representation file needs exactly one of generators, elements".into())),
        };
        datum.rep = Some(rep);
    }
    if let Some(path) = &source.emit_group {
        let file = GroupFile::from_group(&datum.group, datum.u);
        let text = serde_json::to_string(&file).expect("serializable");
        std::fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(datum)
}

fn header(d: &Datum) -> GroupHeader {
    GroupHeader::new(&d.group, d.u)
}

fn involution(d: &Datum) -> Result<CentralInvolution> {
    input::involution(&d.group, d.u)
}

fn rep_or_err(d: &Datum) -> Result<&Representation> {
    d.rep.as_ref().ok_or_else(|| Error::Invalid("a representation is required (--rep, a matrix group or --type)".into()))
}

fn matrix_arg(s: &str, n: usize) -> Result<QMatrix> {
    match s {
        "identity" | "I" => Ok(QMatrix::identity(n)),
        "zero" | "0" => Ok(QMatrix::zeros(n, n)),
        path => {
            let f: MatrixFile = input::read_json(std::path::Path::new(path))?;
            input::to_qmatrix(&f.matrix)
        }
    }
}

/// Outcome of a command: the result document body, an optional group header and
/// whether a verification failed.
struct Outcome {
    result: Value,
    group: Option<GroupHeader>,
    failed: bool,
}

fn ok(result: Value, group: Option<GroupHeader>) -> Result<Outcome> {
    Ok(Outcome { result, group, failed: false })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let budgets = cli.common.budgets();
    let field = cli.common.field();
    match &cli.command {
        Command::H2 { source, coeff, cocycle } => {
            let d = load(source, &budgets)?;
            let h = match coeff {
                Some(n) => brauer_core::cohomology::h2(&d.group, brauer_core::cohomology::CoefficientModule::new(*n), &budgets)?,
                None => field.cohomology(&d.group, &budgets)?,
            };
            let class = match cocycle {
                Some(path) => {
                    let f: CocycleFile = input::read_json(path)?;
                    let c = f.to_cochain(&d.group)?;
                    Some(h.class_of(&c)?.coords)
                }
                None => None,
            };
            let reps: Vec<CocycleFile> = h.reps().iter().map(CocycleFile::from_cochain).collect();
            ok(
                json!({
                    "realization": format!("{:?}", h.kind()),
                    "modulus": h.modulus(),
                    "invariants": h.invariants(),
                    "order": h.size(),
                    "representatives": reps,
                    "class": class,
                }),
                Some(header(&d)),
            )
        }
        Command::H2sharp { source } => {
            let d = load(source, &budgets)?;
            let inv = involution(&d)?;
            let s = h2_sharp(&d.group, &inv, field, &budgets)?;
            let gens: Vec<Value> = s
                .group
                .basis
                .iter()
                .map(|&i| {
                    json!({
                        "class": s.classes[i].coords,
                        "order": s.group.element_order(i),
                        "representative": CocycleFile::from_cochain(&s.reps[i]),
                    })
                })
                .collect();
            ok(
                json!({
                    "invariants": s.group.invariants,
                    "order": s.group.order(),
                    "cohomology_invariants": s.cohomology.invariants(),
                    "generators": gens,
                    "elements": s.group.labels,
                    "cayley_table": report::small_table(&s.group.table),
                    "associativity_check": s.group.associativity_check,
                }),
                Some(header(&d)),
            )
        }
        Command::Bm { source } => {
            let d = load(source, &budgets)?;
            let inv = involution(&d)?;
            let (bm, linear) = match &d.rep {
                Some(rep) if rep.dim() > 0 => {
                    let b = supergroup::bm_supergroup(&inv, rep, field, &budgets)?;
                    let basis: Vec<_> = b.linear_basis.basis.iter().map(input::from_qmatrix).collect();
                    (b.finite, Some((b.linear_dim, basis)))
                }
                _ => (bm_group(&d.group, &inv, field, &budgets)?, None),
            };
            let gens: Vec<Value> = bm
                .group
                .basis
                .iter()
                .map(|&i| {
                    let e = &bm.elements[i];
                    json!({
                        "label": bm.group.labels[i],
                        "order": bm.group.element_order(i),
                        "brauer": e.brauer,
                        "class": e.class,
                        "parity": e.parity,
                    })
                })
                .collect();
            let (linear_dim, linear_basis) = linear.unwrap_or((0, Vec::new()));
            ok(
                json!({
                    "invariants": bm.group.invariants,
                    "order": bm.order(),
                    "split": bm.split,
                    "extension": bm.extension,
                    "cohomology_invariants": bm.cohomology.invariants(),
                    "linear_dim": linear_dim,
                    "linear_basis": linear_basis,
                    "generators": gens,
                    "elements": bm.group.labels,
                    "cayley_table": report::small_table(&bm.group.table),
                    "associativity_check": bm.group.associativity_check,
                }),
                Some(header(&d)),
            )
        }
        Command::Lazy { source } => {
            let d = load(source, &budgets)?;
            let inv = involution(&d)?;
            let trivial;
            let rep = match &d.rep {
                Some(r) => r,
                None => {
                    trivial = Representation::trivial(&d.group, 0);
                    &trivial
                }
            };
            let l = supergroup::lazy_cohomology_parts(&inv, rep, &budgets)?;
            let basis: Vec<_> = l.linear_basis.basis.iter().map(input::from_qmatrix).collect();
            ok(
                json!({
                    "linear_dim": l.linear_dim,
                    "linear_basis": basis,
                    "group_part_of": l.group_part_of,
                    "group_part_invariants": l.group_part.invariants(),
                    "k_trivial": l.k_trivial,
                }),
                Some(header(&d)),
            )
        }
        Command::Invforms { source } => {
            let d = load(source, &budgets)?;
            let rep = rep_or_err(&d)?;
            let space = invariant_symmetric_forms(rep);
            let basis: Vec<_> = space.basis.iter().map(input::from_qmatrix).collect();
            ok(json!({ "dim": space.dim(), "basis": basis }), Some(header(&d)))
        }
        Command::WeylTable { types, compute_b4, allow_e7 } => {
            let options = WeylOptions { allow_e7: *allow_e7, compute_b4: *compute_b4 };
            let mut rows = Vec::new();
            for &t in types {
                rows.push(weyl::table_row(t, field, &budgets, &options)?);
            }
            ok(json!({ "rows": rows }), None)
        }
        Command::Verify { algebra, source, check, a, sigma } => {
            let h = verify_algebra(algebra.as_deref(), source, &budgets)?;
            let report = verify(&h, *check, a.as_deref(), sigma.as_deref(), &budgets)?;
            let failed = !report.passed;
            let head = GroupHeader::new(h.group(), Some(h.involution().u));
            Ok(Outcome {
                result: json!({ "dim": h.dim(), "rank": h.rank(), "report": report }),
                group: Some(head),
                failed,
            })
        }
    }
}

fn verify_algebra(algebra: Option<&str>, source: &Source, budgets: &Budgets) -> Result<SupergroupAlgebra> {
    if let Some(name) = algebra {
        let n: usize = name
            .strip_prefix('E')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Invalid(format!("algebra must look like E2, got {name:?}")))?;
        if n > 8 {
            return Err(Error::BudgetExceeded { what: "E(n) rank", needed: n as u64, limit: 8 });
        }
        return Ok(supergroup::e_n(n));
    }
    let d = load(source, budgets)?;
    let inv = involution(&d)?;
    supergroup::build_supergroup(&d.group, &inv, rep_or_err(&d)?)
}

fn verify(h: &SupergroupAlgebra, check: Check, a: Option<&str>, sigma: Option<&str>, budgets: &Budgets) -> Result<CheckReport> {
    let n = h.rank();
    let sigma_matrix = || -> Result<QMatrix> {
        match sigma {
            Some(s) => matrix_arg(s, n),
            None => invariant_symmetric_forms(h.representation())
                .basis
                .into_iter()
                .next()
                .ok_or_else(|| Error::Invalid("no invariant form; pass --sigma".into())),
        }
    };
    match check {
        Check::Hopf => Ok(h.verify_hopf(budgets)),
        Check::Quasitriangular | Check::Triangular => {
            let r = match a {
                Some(s) => supergroup::r_matrix_ra(h, &matrix_arg(s, n)?)?,
                None => supergroup::r_matrix_u(h),
            };
            Ok(if check == Check::Triangular { h.verify_triangular(&r, budgets) } else { h.verify_quasitriangular(&r, budgets) })
        }
        Check::Omega | Check::Lambda | Check::LambdaUnchecked => {
            let s = sigma_matrix()?;
            let c = match check {
                Check::Omega => supergroup::omega_sigma(h, &s)?,
                Check::Lambda => supergroup::lambda_cocycle(h, &s)?,
                _ => supergroup::lambda_cocycle_unchecked(h, &s)?,
            };
            let mut parts = vec![supergroup::is_left_cocycle(h, &c, budgets)?, supergroup::is_lazy(h, &c, budgets)?];
            let mut inv = CheckReport {
                check: "convolution invertible".into(),
                passed: supergroup::is_convolution_invertible(h, &c, budgets)?,
                mode: "exhaustive".into(),
                checked: 1,
                counterexample: None,
            };
            if !inv.passed {
                inv.counterexample = Some("no convolution inverse".into());
            }
            parts.push(inv);
            Ok(report::merge_reports(parts, "lazy cocycle"))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } | Error::E8Refused => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = cli.common.budgets();
    let field = cli.common.field();
    let command = report::command_name(&format!("{:?}", cli.command));
    match run(&cli) {
        Ok(out) => {
            let doc = Document::new(&command, field, budgets, out.group, out.result, if out.failed { "failed" } else { "ok" });
            emit(&render(&doc, cli.common.format));
            if out.failed {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let doc = Document::error(&command, field, budgets, &e.to_string());
            match cli.common.format {
                Format::Json => emit(&render(&doc, Format::Json)),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable"),
        Format::Text => report::to_text(&serde_json::to_value(doc).expect("serializable")),
    }
}
