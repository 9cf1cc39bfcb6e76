use std::fmt::Display;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use eqob::complex::{join_cell_count, orbit_join, GSimplicialComplex, DEFAULT_CELL_BUDGET};
use eqob::decide::{classify, tverberg_report, DichotomyVerdict, TverbergReport};
use eqob::group::{coset_gset, left_regular_gset, subgroups, FiniteGroup, GSet, GroupSpec, Subgroup};
use eqob::homology::{
    bredon_cohomology, cohehdn_verify, group_cohomology, join_trusted_max, parse_constant, trivial_module, Budgets,
    CoefficientSystem, CohehdnReport, CohomologyResult, GroupCohomologyMethod, TabulatedJson, TabulatedSystem,
    DEFAULT_RESOLUTION_RANK_BUDGET,
};
use eqob::rep::{euler_class, fixed_dim, parse_rep, subgroup_shape, EulerClassValue, RealRep, RepFamily};
use eqob::Error;
use serde::Serialize;

const DEFAULT_MAX_DEPTH: usize = 6;

/// Exact equivariant cohomology and Borsuk-Ulam / Tverberg decisions for
/// cyclic, dihedral and elementary abelian groups.
#[derive(Parser, Debug)]
#[command(name = "eqob", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Simplex budget for join complexes [default: 1000000, or EQOB_BUDGET].
    #[arg(long, global = true, value_name = "N")]
    max_cells: Option<u128>,
    /// Depth budget for free resolutions [default: 6, or EQOB_BUDGET].
    #[arg(long, global = true, value_name = "D")]
    max_depth: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bredon cohomology of a finite join skeleton of a universal space.
    Cohomology {
        /// Group literal: C<n>, D<n> or L<n>.
        #[arg(long)]
        group: String,
        /// Coefficients: Z, Z/m, 0, or @file.json for a tabulated system.
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Highest degree to report.
        #[arg(long, default_value_t = 3)]
        max_i: usize,
        /// Number of join factors [default: max-i + 2].
        #[arg(long)]
        skeleton: Option<usize>,
        /// Vertex set of each join factor [default: y-cosets for D, regular otherwise].
        #[arg(long, value_enum)]
        space: Option<Space>,
    },
    /// Group cohomology with trivial coefficients.
    GroupCohomology {
        #[arg(long)]
        group: String,
        /// Z, Z/m or 0.
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long, default_value_t = 4)]
        max_i: usize,
        /// milnor, periodic or resolution.
        #[arg(long, default_value = "milnor")]
        method: String,
    },
    /// Borsuk-Ulam / anti-Borsuk-Ulam verdict for a representation.
    Classify {
        #[arg(long)]
        group: String,
        /// Sum of irreducibles, e.g. "xi^2 + 2*sigma" or "xihat^3 + xihat^5".
        #[arg(long)]
        rep: String,
    },
    /// Existence report for equivariant maps out of the deleted join.
    Tverberg {
        #[arg(long)]
        group: String,
        #[arg(long = "N", value_name = "N")]
        big_n: u64,
        #[arg(long)]
        d: u64,
    },
    /// Fixed-space dimensions over every conjugacy class of subgroups.
    FixedPoints {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep: String,
    },
    /// Euler class of a cyclic representation.
    Euler {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep: String,
    },
    /// Compare Bredon cohomology of E_H D_n with Ext of the augmentation kernel.
    VerifyCohehdn {
        /// Odd n for D_n.
        #[arg(long)]
        n: usize,
        /// Z, Z/m, 0, or @file.json.
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value_t = 4)]
        max_i: usize,
    },
    /// Cell and orbit counts of a join skeleton.
    JoinInfo {
        #[arg(long)]
        group: String,
        #[arg(long)]
        skeleton: usize,
        #[arg(long, value_enum)]
        space: Option<Space>,
        /// Include every simplex and orbit in the JSON output.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Space {
    /// The group acting on itself (models EG).
    Regular,
    /// D_n acting on the cosets of <y> (models E_H D_n).
    YCosets,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(flag: &str, e: impl Display) -> Self {
        Failure { code: 2, message: format!("invalid value for {flag}: {e}") }
    }

    /// Errors raised while computing: budget exhaustion exits with 1, the
    /// rest are blamed on `flag`.
    fn compute(flag: &str, e: Error) -> Self {
        if e.is_budget() {
            Failure { code: 1, message: format!("budget exhausted: {e}") }
        } else {
            Self::invalid(flag, e)
        }
    }
}

type CliResult<T> = Result<T, Failure>;

#[derive(Clone, Copy, Debug)]
struct Limits {
    max_cells: u128,
    max_depth: usize,
}

fn parse_budget_env(raw: &str) -> CliResult<(Option<u128>, Option<usize>)> {
    let bad = |what: &str| Failure::invalid("EQOB_BUDGET", format!("`{raw}`: {what}"));
    if let Ok(cells) = raw.trim().parse::<u128>() {
        return Ok((Some(cells), None));
    }
    let (mut cells, mut depth) = (None, None);
    for part in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| bad("expected key=value pairs"))?;
        match key.trim() {
            "cells" | "max_cells" => cells = Some(value.trim().parse().map_err(|_| bad("cells must be an integer"))?),
            "depth" | "max_depth" => depth = Some(value.trim().parse().map_err(|_| bad("depth must be an integer"))?),
            other => return Err(bad(&format!("unknown key `{other}`"))),
        }
    }
    Ok((cells, depth))
}

fn limits(cli: &Cli) -> CliResult<Limits> {
    let (env_cells, env_depth) = match std::env::var("EQOB_BUDGET") {
        Ok(raw) => parse_budget_env(&raw)?,
        Err(_) => (None, None),
    };
    Ok(Limits {
        max_cells: cli.max_cells.or(env_cells).unwrap_or(DEFAULT_CELL_BUDGET),
        max_depth: cli.max_depth.or(env_depth).unwrap_or(DEFAULT_MAX_DEPTH),
    })
}

fn budgets(l: Limits) -> Budgets {
    Budgets { max_cells: l.max_cells, resolution_rank: DEFAULT_RESOLUTION_RANK_BUDGET }
}

fn check_depth(needed: usize, l: Limits) -> CliResult<()> {
    if needed > l.max_depth {
        return Err(Failure {
            code: 1,
            message: format!("budget exhausted: resolution depth {needed} exceeds --max-depth {}", l.max_depth),
        });
    }
    Ok(())
}

fn parse_group(s: &str) -> CliResult<(GroupSpec, Arc<FiniteGroup>)> {
    let spec: GroupSpec = s.parse().map_err(|e| Failure::invalid("--group", e))?;
    let g = spec.build().map_err(|e| Failure::invalid("--group", e))?;
    Ok((spec, Arc::new(g)))
}

fn family_of(spec: GroupSpec) -> RepFamily {
    match spec {
        GroupSpec::C(_) => RepFamily::Cyclic,
        GroupSpec::D(_) => RepFamily::Dihedral,
        GroupSpec::L(_) => RepFamily::ElemAb,
    }
}

fn parse_representation(spec: GroupSpec, s: &str) -> CliResult<RealRep> {
    parse_rep(family_of(spec), spec.n() as u64, s).map_err(|e| Failure::invalid("--rep", e))
}

fn load_coefficients(group: &Arc<FiniteGroup>, s: &str) -> CliResult<Box<dyn CoefficientSystem>> {
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid("--coeff", format!("{path}: {e}")))?;
        let j: TabulatedJson =
            serde_json::from_str(&text).map_err(|e| Failure::invalid("--coeff", format!("{path}: {e}")))?;
        let sys = TabulatedSystem::from_json(group.clone(), &j).map_err(|e| Failure::invalid("--coeff", e))?;
        return Ok(Box::new(sys));
    }
    Ok(Box::new(parse_constant(group.clone(), s).map_err(|e| Failure::invalid("--coeff", e))?))
}

/// `0` for `Z`, `m` for `Z/m`, `1` for the zero group.
fn trivial_modulus(s: &str) -> CliResult<u64> {
    match s.trim() {
        "Z" => Ok(0),
        "0" => Ok(1),
        t => t
            .strip_prefix("Z/")
            .and_then(|m| m.parse::<u64>().ok())
            .filter(|&m| m >= 1)
            .ok_or_else(|| Failure::invalid("--coeff", format!("`{t}`: expected Z, Z/m or 0"))),
    }
}

fn vertex_set(spec: GroupSpec, g: &Arc<FiniteGroup>, space: Option<Space>) -> CliResult<(Space, GSet)> {
    let space = space.unwrap_or(if matches!(spec, GroupSpec::D(_)) { Space::YCosets } else { Space::Regular });
    let set = match space {
        Space::Regular => left_regular_gset(g.clone()),
        Space::YCosets => {
            let y = g
                .generator("y")
                .ok_or_else(|| Failure::invalid("--space", "y-cosets needs a dihedral group"))?;
            coset_gset(g.clone(), &Subgroup::generated(g, &[y])).map_err(|e| Failure::invalid("--space", e))?
        }
    };
    Ok((space, set))
}

fn build_join(set: &GSet, k: usize, l: Limits) -> CliResult<GSimplicialComplex> {
    if k == 0 {
        return Err(Failure::invalid("--skeleton", "need at least one join factor"));
    }
    orbit_join(set, k, l.max_cells).map_err(|e| Failure::compute("--skeleton", e))
}

const SCHEMA: &str = "eqob/v1";

#[derive(Serialize)]
struct CohomologyOut<'a> {
    schema: &'static str,
    command: &'static str,
    group: String,
    coefficients: String,
    space: Space,
    skeleton: usize,
    cells: usize,
    #[serde(flatten)]
    result: &'a CohomologyResult,
}

#[derive(Serialize)]
struct GroupCohomologyOut<'a> {
    schema: &'static str,
    command: &'static str,
    group: String,
    coefficients: String,
    method: GroupCohomologyMethod,
    #[serde(flatten)]
    result: &'a CohomologyResult,
}

#[derive(Serialize)]
struct ClassifyOut<'a> {
    schema: &'static str,
    command: &'static str,
    group: String,
    rep: String,
    #[serde(flatten)]
    verdict: &'a DichotomyVerdict,
}

#[derive(Serialize)]
struct TverbergOut<'a> {
    schema: &'static str,
    command: &'static str,
    #[serde(flatten)]
    report: &'a TverbergReport,
}

#[derive(Serialize)]
struct FixedRow {
    order: usize,
    class_size: usize,
    elements: Vec<String>,
    fixed_dim: u64,
}

#[derive(Serialize)]
struct FixedOut {
    schema: &'static str,
    command: &'static str,
    group: String,
    rep: String,
    dim: u64,
    subgroups: Vec<FixedRow>,
}

#[derive(Serialize)]
struct EulerOut {
    euler: EulerClassValue,
    nonzero: bool,
    #[serde(skip_serializing_if = "is_zero")]
    folded_sign_pairs: u64,
    schema: &'static str,
    command: &'static str,
}

fn is_zero(v: &u64) -> bool {
    *v == 0
}

#[derive(Serialize)]
struct CohehdnOut<'a> {
    schema: &'static str,
    command: &'static str,
    all_isomorphic: bool,
    vanishing_consistent: bool,
    #[serde(flatten)]
    report: &'a CohehdnReport,
}

#[derive(Serialize)]
struct JoinInfoOut {
    schema: &'static str,
    command: &'static str,
    group: String,
    space: Space,
    skeleton: usize,
    vertices: usize,
    simplices: Vec<usize>,
    orbits: Vec<usize>,
    total: usize,
    euler_characteristic: i64,
    trusted_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complex: Option<eqob::complex::ComplexJson>,
}

enum Output {
    Json(String),
    Text(String),
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Output {
    if json {
        Output::Json(serde_json::to_string(value).expect("serializable output"))
    } else {
        Output::Text(text())
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n")
}

fn cohomology_rows(r: &CohomologyResult) -> Vec<Vec<String>> {
    r.degrees
        .iter()
        .map(|d| vec![d.degree.to_string(), d.group.to_string(), if d.trusted { "yes" } else { "no" }.into()])
        .collect()
}

fn run(cli: &Cli) -> CliResult<Output> {
    let l = limits(cli)?;
    let json = cli.json;
    match &cli.command {
        Command::Cohomology { group, coeff, max_i, skeleton, space } => {
            let (spec, g) = parse_group(group)?;
            let m = load_coefficients(&g, coeff)?;
            let (space, set) = vertex_set(spec, &g, *space)?;
            let k = skeleton.unwrap_or(max_i + 2);
            let x = build_join(&set, k, l)?;
            let r = bredon_cohomology(&x, m.as_ref(), *max_i, join_trusted_max(k))
                .map_err(|e| Failure::compute("--coeff", e))?;
            let out = CohomologyOut {
                schema: SCHEMA,
                command: "cohomology",
                group: g.name(),
                coefficients: m.describe(),
                space,
                skeleton: k,
                cells: x.complex().total(),
                result: &r,
            };
            Ok(emit(json, &out, || {
                format!(
                    "{} on {k}-fold join, {} cells, coefficients {}\n{}",
                    g.name(),
                    out.cells,
                    out.coefficients,
                    table(&["degree", "group", "trusted"], &cohomology_rows(&r))
                )
            }))
        }
        Command::GroupCohomology { group, coeff, max_i, method } => {
            let (_, g) = parse_group(group)?;
            let method: GroupCohomologyMethod = method.parse().map_err(|e| Failure::invalid("--method", e))?;
            let modulus = trivial_modulus(coeff)?;
            if method == GroupCohomologyMethod::Resolution {
                check_depth(max_i + 1, l)?;
            }
            let m = trivial_module(g.clone(), modulus);
            let r = group_cohomology(&m, *max_i, method, budgets(l)).map_err(|e| Failure::compute("--method", e))?;
            let out = GroupCohomologyOut {
                schema: SCHEMA,
                command: "group-cohomology",
                group: g.name(),
                coefficients: coeff.trim().to_string(),
                method,
                result: &r,
            };
            Ok(emit(json, &out, || {
                format!("H^*({}; {}) by {method}\n{}", g.name(), out.coefficients, table(&["degree", "group", "trusted"], &cohomology_rows(&r)))
            }))
        }
        Command::Classify { group, rep } => {
            let (spec, g) = parse_group(group)?;
            let v = parse_representation(spec, rep)?;
            let verdict = classify(&v).map_err(|e| Failure::compute("--rep", e))?;
            let out = ClassifyOut { schema: SCHEMA, command: "classify", group: g.name(), rep: v.to_string(), verdict: &verdict };
            Ok(emit(json, &out, || verdict_text(&g, &v, &verdict)))
        }
        Command::Tverberg { group, big_n, d } => {
            let (spec, _) = parse_group(group)?;
            let r = tverberg_report(family_of(spec), spec.n() as u64, *big_n, *d).map_err(|e| Failure::invalid("--group", e))?;
            let out = TverbergOut { schema: SCHEMA, command: "tverberg", report: &r };
            Ok(emit(json, &out, || {
                let mut s = format!("{:?} (n = {}, N = {}, d = {}, threshold {})", r.verdict, r.n, r.big_n, r.d, r.threshold);
                if let Some(c) = r.citation {
                    s += &format!("\ncitation: {}", serde_json::to_value(c).unwrap().as_str().unwrap_or_default());
                }
                if let Some(n) = &r.note {
                    s += &format!("\nnote: {n}");
                }
                s
            }))
        }
        Command::FixedPoints { group, rep } => {
            let (spec, g) = parse_group(group)?;
            let v = parse_representation(spec, rep)?;
            let classes = subgroups(&g).map_err(|e| Failure::compute("--group", e))?;
            let mut rows = Vec::new();
            for (idx, k) in classes.representatives().enumerate() {
                subgroup_shape(v.family(), v.n(), k).map_err(|e| Failure::invalid("--group", e))?;
                rows.push(FixedRow {
                    order: k.order(),
                    class_size: classes.all().filter(|h| classes.class_of(h) == Some(idx)).count(),
                    elements: k.elements().iter().map(|&a| g.element_label(a)).collect(),
                    fixed_dim: fixed_dim(&v, k).map_err(|e| Failure::invalid("--rep", e))?,
                });
            }
            let out = FixedOut { schema: SCHEMA, command: "fixed-points", group: g.name(), rep: v.to_string(), dim: v.dim(), subgroups: rows };
            Ok(emit(json, &out, || {
                let rows: Vec<Vec<String>> = out
                    .subgroups
                    .iter()
                    .map(|r| vec![r.order.to_string(), r.class_size.to_string(), r.fixed_dim.to_string(), format!("{{{}}}", r.elements.join(", "))])
                    .collect();
                format!("V = {} (dim {}) over {}\n{}", out.rep, out.dim, out.group, table(&["order", "class", "dim V^K", "K"], &rows))
            }))
        }
        Command::Euler { group, rep } => {
            let (spec, _) = parse_group(group)?;
            let v = parse_representation(spec, rep)?;
            let e = euler_class(&v).map_err(|e| Failure::compute("--rep", e))?;
            let out = EulerOut {
                euler: e.value,
                nonzero: e.is_nonzero(),
                folded_sign_pairs: e.folded_sign_pairs,
                schema: SCHEMA,
                command: "euler",
            };
            Ok(emit(json, &out, || {
                let value = match e.value {
                    EulerClassValue::ModN(r) => format!("{r} mod {}", v.n()),
                    EulerClassValue::ZeroByParity => "zero (parity)".into(),
                    EulerClassValue::NonZeroByParity => "nonzero (parity)".into(),
                };
                format!("e({v}) = {value}, {}", if e.is_nonzero() { "nonzero" } else { "zero" })
            }))
        }
        Command::VerifyCohehdn { n, coeff, max_i } => {
            if n % 2 == 0 {
                return Err(Failure::invalid("--n", format!("{n} is even; the comparison needs n odd")));
            }
            let g = Arc::new(GroupSpec::D(*n).build().map_err(|e| Failure::invalid("--n", e))?);
            let m = load_coefficients(&g, coeff)?;
            check_depth(*max_i, l)?;
            let cells = join_cell_count(*n, max_i + 2);
            if cells.is_none_or(|c| c > l.max_cells) {
                let c = cells.map_or("overflow".to_string(), |c| c.to_string());
                return Err(Failure { code: 1, message: format!("budget exhausted: {c} simplices exceed --max-cells {}", l.max_cells) });
            }
            let r = cohehdn_verify(m.as_ref(), *max_i, budgets(l)).map_err(|e| Failure::compute("--coeff", e))?;
            let out = CohehdnOut {
                schema: SCHEMA,
                command: "verify-cohehdn",
                all_isomorphic: r.all_isomorphic(),
                vanishing_consistent: r.vanishing_consistent(),
                report: &r,
            };
            Ok(emit(json, &out, || {
                let rows: Vec<Vec<String>> = r
                    .rows
                    .iter()
                    .map(|row| {
                        vec![
                            row.i.to_string(),
                            row.bredon.to_string(),
                            row.ext.to_string(),
                            if row.isomorphic { "yes" } else { "NO" }.into(),
                            if row.vanishing_predicted { "yes" } else { "no" }.into(),
                            row.vanishing_holds.map_or("-".into(), |b| if b { "yes" } else { "NO" }.into()),
                        ]
                    })
                    .collect();
                format!(
                    "D{n}, coefficients {}, join of {} copies, resolution ranks {:?}\n{}",
                    r.coefficients,
                    r.join_copies,
                    r.resolution_ranks,
                    table(&["i", "Bredon", "Ext^{i-1}", "iso", "vanish predicted", "vanishes"], &rows)
                )
            }))
        }
        Command::JoinInfo { group, skeleton, space, full } => {
            let (spec, g) = parse_group(group)?;
            let (space, set) = vertex_set(spec, &g, *space)?;
            let x = build_join(&set, *skeleton, l)?;
            let cx = x.complex();
            let dims = cx.dim().map_or(0, |d| d + 1);
            let out = JoinInfoOut {
                schema: SCHEMA,
                command: "join-info",
                group: g.name(),
                space,
                skeleton: *skeleton,
                vertices: set.size() * skeleton,
                simplices: cx.counts(),
                orbits: (0..dims).map(|d| x.orbits(d).len()).collect(),
                total: cx.total(),
                euler_characteristic: cx.euler_characteristic(),
                trusted_max: join_trusted_max(*skeleton),
                complex: full.then(|| x.to_json()),
            };
            Ok(emit(json, &out, || {
                let rows: Vec<Vec<String>> = (0..dims).map(|d| vec![d.to_string(), out.simplices[d].to_string(), out.orbits[d].to_string()]).collect();
                format!(
                    "{}-fold join over {} ({} points), {} simplices, Euler characteristic {}\n{}",
                    skeleton,
                    g.name(),
                    set.size(),
                    out.total,
                    out.euler_characteristic,
                    table(&["dim", "simplices", "orbits"], &rows)
                )
            }))
        }
    }
}

fn verdict_text(g: &FiniteGroup, v: &RealRep, verdict: &DichotomyVerdict) -> String {
    let head = format!("{} on {}: {}", v, g.name(), verdict.tag());
    let detail = match verdict {
        DichotomyVerdict::BorsukUlam { euler, .. } => format!("Euler class {:?}", euler.value),
        DichotomyVerdict::AntiBorsukUlam { fixed_dims, provenance, .. } => {
            let dims: Vec<String> = fixed_dims.iter().map(|f| format!("C{}: {}", f.prime_power, f.fixed_dim)).collect();
            let mut s = format!("prime-power fixed dims {}", dims.join(", "));
            if let Some(p) = provenance {
                s += &format!("\nnote: {p}");
            }
            s
        }
        DichotomyVerdict::SullivanObstructed { prime_power, caveat, .. } => {
            format!("V^C{prime_power} = 0\nnote: {caveat}")
        }
        DichotomyVerdict::OutOfPaperScope { reason } => reason.clone(),
    };
    format!("{head}\n{detail}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match out {
                Output::Json(s) => s,
                Output::Text(t) => t,
            };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
