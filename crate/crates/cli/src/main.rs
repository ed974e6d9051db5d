//! `wittforge` — exact arithmetic for metric groups and their Witt classes,
//! affine-level central charges, table verification, and Frobenius–Perron
//! dimensions.
//!
//! Exit codes: 0 all OK, 1 verification failures, 2 usage or parse errors,
//! 3 precondition/domain errors.

mod datafmt;
mod render;
mod input;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wittforge_core::abelian::FiniteAbelianGroup;
use wittforge_core::affine::verify::{
    relation_charge, sl2_suite, verify_coset, verify_embedding, verify_relation, Charge,
    ChargeTerm, ParamRange,
};
use wittforge_core::affine::{
    plus_sector_charge, virasoro_charge, AffineError, Resolution,
};
use wittforge_core::charge::{additive_charge, multiplicative_charge, ChargeError};
use wittforge_core::fusionring::{FusionError, FusionRing};
use wittforge_core::rational::format_rational;
use wittforge_core::report::VerificationReport;
use wittforge_core::witt::{
    generated_subgroup_with_caps, reduce_anisotropic, WittClass, WittError, DEFAULT_SPAN_CAP,
};

/// Classified command failure; decides the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, specs, or data files (exit 2).
    Usage(String),
    /// Well-formed input outside the computable domain (exit 3).
    Domain(String),
}

/// Successful command result: text plus a verification verdict.
struct Outcome {
    output: String,
    failed: bool,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome { output, failed: false }
    }
}

#[derive(Parser)]
#[command(
    name = "wittforge",
    version,
    about = "Exact Witt-group arithmetic for metric groups, affine central charges, and fusion-ring dimensions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a single metric group (classify, reduce, charge, isometric).
    Metric {
        #[command(subcommand)]
        cmd: MetricCmd,
    },
    /// Witt-class arithmetic (order, add, eq, span).
    Witt {
        #[command(subcommand)]
        cmd: WittCmd,
    },
    /// Affine-level central charges and period-8 relations.
    Affine {
        #[command(subcommand)]
        cmd: AffineCmd,
    },
    /// Verify embedding/coset/relation tables.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Frobenius–Perron dimensions of a builtin or user fusion ring.
    Fpdim {
        /// `fib`, `ising`, `sl2:<k>`, `group:<orders>`, or a ring file path.
        source: String,
    },
}

/// Inline metric-group flags: `--group 2,4 --q 1/4,1/8 --b 1,2=1/2`.
#[derive(Args)]
struct MetricArgs {
    /// Comma-separated cyclic orders.
    #[arg(long)]
    group: String,
    /// Comma-separated exact form values on the generators.
    #[arg(long)]
    q: String,
    /// Off-diagonal pairing `i,j=frac` (repeatable, 1-based indices).
    #[arg(long = "b")]
    b: Vec<String>,
}

#[derive(Subcommand)]
enum MetricCmd {
    /// Non-degeneracy, anisotropy, exact charge, and prime parts.
    Classify(MetricArgs),
    /// Anisotropic reduction of the form.
    Reduce(MetricArgs),
    /// Normalised Gauss sum and exact additive charge.
    Charge(MetricArgs),
    /// Exact isometry test between two generator specs.
    Isometric {
        /// First form, as `orders:q-values[;i,j=frac...]`.
        #[arg(long)]
        a: String,
        /// Second form, same format.
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum WittCmd {
    /// Additive order of the Witt class of the given form.
    Order(MetricArgs),
    /// Sum of two classes, printed as its anisotropic representative.
    Add {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Equality of two classes.
    Eq {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Subgroup of the Witt group generated by the given classes.
    Span {
        /// Generator spec (repeatable), e.g. `--gen "2:1/4"`.
        #[arg(long = "gen", required = true)]
        gen: Vec<String>,
    },
}

#[derive(Subcommand)]
enum AffineCmd {
    /// Exact central charge of one symbol (e.g. `A1:28`, `su(6):1`,
    /// `u1:1`, `Vir:m=2`, `sl2plus:3`).
    Charge { symbol: String },
    /// Evaluate a period-8 relation such as `"A1:6^2 * A1:2^-3"`.
    Relation { expr: String },
    /// Built-in consistency suite tying low `sl(2)` levels to pointed
    /// metric-group models.
    #[command(name = "sl2-suite")]
    Sl2Suite,
}

#[derive(Args, Clone)]
struct VerifyOpts {
    /// Treat SKIPPED entries as failures for the exit code.
    #[arg(long)]
    strict: bool,
    /// Clamp every named parameter range to `LO..HI`.
    #[arg(long)]
    range: Option<String>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check conformal-embedding central charges (shipped table by default).
    Embeddings {
        file: Option<PathBuf>,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Check coset central charges (shipped table by default).
    Cosets {
        file: Option<PathBuf>,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Check period-8 charge relations (shipped table by default).
    Relations {
        file: Option<PathBuf>,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Run every shipped table plus the sl(2) suite.
    All {
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.cmd {
        Command::Metric { cmd } => run_metric(cmd),
        Command::Witt { cmd } => run_witt(cmd),
        Command::Affine { cmd } => run_affine(cmd),
        Command::Verify { cmd } => run_verify(cmd),
        Command::Fpdim { source } => run_fpdim(&source),
    }
}

fn charge_domain(e: ChargeError) -> CliError {
    CliError::Domain(e.to_string())
}

fn witt_domain(e: WittError) -> CliError {
    CliError::Domain(e.to_string())
}

fn run_metric(cmd: MetricCmd) -> Result<Outcome, CliError> {
    match cmd {
        MetricCmd::Classify(args) => {
            let pm = input::metric_from_flags(&args.group, &args.q, &args.b)?;
            Ok(Outcome::ok(render::classification(&pm)))
        }
        MetricCmd::Reduce(args) => {
            let pm = input::metric_from_flags(&args.group, &args.q, &args.b)?;
            Ok(Outcome::ok(render::representative(&reduce_anisotropic(&pm))))
        }
        MetricCmd::Charge(args) => {
            let pm = input::metric_from_flags(&args.group, &args.q, &args.b)?;
            let xi = multiplicative_charge(&pm).map_err(charge_domain)?;
            let c = additive_charge(&pm).map_err(charge_domain)?;
            Ok(Outcome::ok(render::xi_line(xi, &c)))
        }
        MetricCmd::Isometric { a, b } => {
            let pa = input::parse_generator_spec(&a)?;
            let pb = input::parse_generator_spec(&b)?;
            let cap = input::max_group_order()?;
            let same = pa
                .isometric_with_cap(&pb, cap)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            Ok(Outcome::ok(format!(
                "{}\n",
                if same { "isometric" } else { "not isometric" }
            )))
        }
    }
}

fn run_witt(cmd: WittCmd) -> Result<Outcome, CliError> {
    match cmd {
        WittCmd::Order(args) => {
            let pm = input::metric_from_flags(&args.group, &args.q, &args.b)?;
            let class = WittClass::from_metric(&pm).map_err(witt_domain)?;
            let order = class.order().map_err(witt_domain)?;
            Ok(Outcome::ok(format!("{order}\n")))
        }
        WittCmd::Add { a, b } => {
            let ca = class_from_spec(&a)?;
            let cb = class_from_spec(&b)?;
            let sum = ca.add(&cb);
            Ok(Outcome::ok(render::representative(sum.representative())))
        }
        WittCmd::Eq { a, b } => {
            let ca = class_from_spec(&a)?;
            let cb = class_from_spec(&b)?;
            let cap = input::max_group_order()?;
            let same = ca.equals_with_cap(&cb, cap).map_err(witt_domain)?;
            Ok(Outcome::ok(format!(
                "{}\n",
                if same { "equal" } else { "distinct" }
            )))
        }
        WittCmd::Span { gen } => {
            let classes: Vec<WittClass> = gen
                .iter()
                .map(|g| class_from_spec(g))
                .collect::<Result<_, _>>()?;
            let cap = input::max_group_order()?;
            let span = generated_subgroup_with_caps(&classes, DEFAULT_SPAN_CAP, cap)
                .map_err(witt_domain)?;
            let mut out = format!("{} classes\n", span.len());
            for class in &span {
                out.push_str(&render::class_line(class));
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn class_from_spec(s: &str) -> Result<WittClass, CliError> {
    let pm = input::parse_generator_spec(s)?;
    WittClass::from_metric(&pm).map_err(witt_domain)
}

/// Hard symbol errors are usage errors (exit 2) per the exit-code contract.
fn affine_usage(e: AffineError) -> CliError {
    CliError::Usage(e.to_string())
}

fn run_affine(cmd: AffineCmd) -> Result<Outcome, CliError> {
    match cmd {
        AffineCmd::Charge { symbol } => {
            let term = datafmt::parse_charge_symbol(&symbol)?;
            let env = BTreeMap::new();
            let value = match term {
                ChargeTerm::Affine(factor) => match factor.resolve(&env).map_err(affine_usage)? {
                    Resolution::Unsupported(reason) => {
                        return Err(CliError::Domain(format!("unsupported: {reason}")));
                    }
                    resolved => resolved
                        .central_charge()
                        .expect("resolved symbols carry a charge"),
                },
                ChargeTerm::PlusSector(k) => {
                    let k = k.eval(&env).map_err(|e| CliError::Usage(e.to_string()))?;
                    plus_sector_charge(k).map_err(affine_usage)?.value().clone()
                }
                ChargeTerm::Virasoro(m) => {
                    let m = m.eval(&env).map_err(|e| CliError::Usage(e.to_string()))?;
                    virasoro_charge(m).map_err(affine_usage)?
                }
                ChargeTerm::Metric(_) => unreachable!("inline symbols are never metric"),
            };
            Ok(Outcome::ok(format!("{}\n", format_rational(&value))))
        }
        AffineCmd::Relation { expr } => {
            let (marked, terms) = datafmt::parse_inline_relation(&expr)?;
            let conjectural = marked || datafmt::matches_shipped_conjectural(&terms);
            let suffix = if conjectural { " (conjectural)" } else { "" };
            match relation_charge(&terms, &BTreeMap::new()).map_err(affine_usage)? {
                Charge::Unsupported(reason) => {
                    Err(CliError::Domain(format!("unsupported: {reason}")))
                }
                Charge::Value(c) => {
                    if c.is_zero() {
                        Ok(Outcome::ok(format!("0 mod 8 → OK{suffix}\n")))
                    } else {
                        Ok(Outcome {
                            output: format!("{c} mod 8 → FAIL{suffix}\n"),
                            failed: true,
                        })
                    }
                }
            }
        }
        AffineCmd::Sl2Suite => {
            let report = sl2_suite();
            let mut out = render::section("sl2 suite", &report);
            out.push_str(&render::footer(&report));
            Ok(Outcome {
                output: out,
                failed: report.has_fail_or_error(),
            })
        }
    }
}

/// Loads a table either from a user path or from the embedded default.
fn load_table(
    file: &Option<PathBuf>,
    default_name: &str,
    default_text: &str,
) -> Result<(String, String), CliError> {
    match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read {}: {e}", path.display()))
            })?;
            Ok((display_name(path), text))
        }
        None => Ok((default_name.to_string(), default_text.to_string())),
    }
}

fn display_name(path: &Path) -> String {
    path.display().to_string()
}

fn parse_range(range: &Option<String>) -> Result<Option<(i64, i64)>, CliError> {
    let Some(r) = range else { return Ok(None) };
    let bad = || {
        CliError::Usage(format!(
            "--range needs the form LO..HI with integers, got {r:?}"
        ))
    };
    let (lo, hi) = r.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(Some((lo, hi)))
}

fn apply_range(params: &mut [ParamRange], range: Option<(i64, i64)>) {
    if let Some((lo, hi)) = range {
        datafmt::clamp_params(params, lo, hi);
    }
}

fn verify_embeddings_report(
    file: &Option<PathBuf>,
    range: Option<(i64, i64)>,
) -> Result<(String, VerificationReport), CliError> {
    let (name, text) = load_table(file, datafmt::EMBEDDINGS_NAME, datafmt::EMBEDDINGS_TEXT)?;
    let mut entries = datafmt::parse_embeddings(&name, &text)?;
    let mut report = VerificationReport::new();
    for entry in &mut entries {
        apply_range(&mut entry.params, range);
        report.push(verify_embedding(entry));
    }
    Ok((format!("embeddings: {name}"), report))
}

fn verify_cosets_report(
    file: &Option<PathBuf>,
    range: Option<(i64, i64)>,
) -> Result<(String, VerificationReport), CliError> {
    let (name, text) = load_table(file, datafmt::COSETS_NAME, datafmt::COSETS_TEXT)?;
    let mut entries = datafmt::parse_cosets(&name, &text)?;
    let mut report = VerificationReport::new();
    for entry in &mut entries {
        apply_range(&mut entry.params, range);
        report.push(verify_coset(entry));
    }
    Ok((format!("cosets: {name}"), report))
}

fn verify_relations_report(
    file: &Option<PathBuf>,
    range: Option<(i64, i64)>,
) -> Result<(String, VerificationReport), CliError> {
    let (name, text) = load_table(file, datafmt::RELATIONS_NAME, datafmt::RELATIONS_TEXT)?;
    let mut entries = datafmt::parse_relations(&name, &text)?;
    let mut report = VerificationReport::new();
    for entry in &mut entries {
        apply_range(&mut entry.params, range);
        report.push(verify_relation(entry));
    }
    Ok((format!("relations: {name}"), report))
}

fn run_verify(cmd: VerifyCmd) -> Result<Outcome, CliError> {
    let (sections, opts) = match cmd {
        VerifyCmd::Embeddings { file, opts } => {
            let range = parse_range(&opts.range)?;
            (vec![verify_embeddings_report(&file, range)?], opts)
        }
        VerifyCmd::Cosets { file, opts } => {
            let range = parse_range(&opts.range)?;
            (vec![verify_cosets_report(&file, range)?], opts)
        }
        VerifyCmd::Relations { file, opts } => {
            let range = parse_range(&opts.range)?;
            (vec![verify_relations_report(&file, range)?], opts)
        }
        VerifyCmd::All { opts } => {
            let range = parse_range(&opts.range)?;
            (
                vec![
                    verify_embeddings_report(&None, range)?,
                    verify_cosets_report(&None, range)?,
                    verify_relations_report(&None, range)?,
                    (String::from("sl2 suite"), sl2_suite()),
                ],
                opts,
            )
        }
    };
    let mut merged = VerificationReport::new();
    let mut out = String::new();
    for (title, report) in sections {
        out.push_str(&render::section(&title, &report));
        merged.merge(report);
    }
    out.push_str(&render::footer(&merged));
    let failed =
        merged.has_fail_or_error() || (opts.strict && merged.has_skipped());
    Ok(Outcome { output: out, failed })
}

/// Worst absolute residual of `N_j R = d_j R` over all entries, where `R`
/// is the computed regular element.
fn regular_residual(ring: &FusionRing, dims: &[f64]) -> Result<f64, FusionError> {
    let reg = ring.regular_object()?;
    let mut worst = 0.0f64;
    for (j, &dj) in dims.iter().enumerate() {
        for (i, &ri) in reg.iter().enumerate() {
            let mut acc = 0.0;
            for (k, r) in reg.iter().enumerate() {
                acc += ring.constant(j, i, k) as f64 * r;
            }
            worst = worst.max((acc - dj * ri).abs());
        }
    }
    Ok(worst)
}

fn run_fpdim(source: &str) -> Result<Outcome, CliError> {
    let ring = build_ring(source)?;
    let fp = ring
        .fpdims()
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let residual =
        regular_residual(&ring, &fp.dims).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(Outcome::ok(render::fpdims(&ring, &fp, residual)))
}

fn build_ring(source: &str) -> Result<FusionRing, CliError> {
    if source == "fib" {
        return Ok(FusionRing::fib());
    }
    if source == "ising" {
        return Ok(FusionRing::ising());
    }
    if let Some(level) = source.strip_prefix("sl2:") {
        let k: u64 = level.trim().parse().map_err(|_| {
            CliError::Usage(format!("sl2:<k> needs a non-negative integer level, got {level:?}"))
        })?;
        input::check_ring_rank(k as usize + 1)?;
        return Ok(FusionRing::verlinde_sl2(k));
    }
    if let Some(orders) = source.strip_prefix("group:") {
        let orders = input::parse_orders(orders)?;
        let mut product: u64 = 1;
        for &n in &orders {
            product = product.saturating_mul(n);
        }
        let cap = input::max_group_order()?;
        if product > cap {
            return Err(CliError::Domain(format!(
                "group order {product} exceeds the enumeration cap {cap} (raise {} to allow it)",
                input::MAX_GROUP_ORDER_VAR
            )));
        }
        input::check_ring_rank(product as usize)?;
        let group =
            FiniteAbelianGroup::new(&orders).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(FusionRing::pointed_ring(&group));
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {source}: {e}")))?;
    let (labels, table) = datafmt::parse_ring_file(&display_name(path), &text)?;
    FusionRing::new(labels, table).map_err(|e| {
        CliError::Domain(format!("fusion-ring axioms fail: {e}"))
    })
}
