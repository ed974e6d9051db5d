//! Command-line input parsing: exact fractions, metric groups given by
//! Gram data on the command line, compact generator specs such as
//! `"4:1/8"` or `"2,2:0,0;1,2=1/2"`, and the enumeration limits.

use wittforge_core::abelian::FiniteAbelianGroup;
use wittforge_core::qform::{PreMetricGroup, QformError};
use wittforge_core::rational::QmodZ;

use crate::CliError;

/// Default cap on enumerated group orders; override with the environment
/// variable named by [`MAX_GROUP_ORDER_VAR`].
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 4096;

/// Environment variable that bounds group enumeration and isometry search.
pub const MAX_GROUP_ORDER_VAR: &str = "WITTFORGE_MAX_GROUP_ORDER";

/// Reads the enumeration cap from the environment (default 4096).
pub fn max_group_order() -> Result<u64, CliError> {
    let raw = match std::env::var(MAX_GROUP_ORDER_VAR) {
        Ok(s) => s,
        Err(std::env::VarError::NotPresent) => return Ok(DEFAULT_MAX_GROUP_ORDER),
        Err(std::env::VarError::NotUnicode(_)) => {
            return Err(CliError::Usage(format!(
                "{MAX_GROUP_ORDER_VAR} is not valid UTF-8"
            )));
        }
    };
    match raw.trim().parse::<u64>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(CliError::Usage(format!(
            "{MAX_GROUP_ORDER_VAR} must be a positive integer, got {raw:?}"
        ))),
    }
}

/// Parses `p/q` or a bare integer into an exact value of `Q/Z`.
pub fn parse_fraction(s: &str) -> Result<QmodZ, CliError> {
    let trimmed = s.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad_fraction(trimmed))?;
    let den: i64 = den.parse().map_err(|_| bad_fraction(trimmed))?;
    QmodZ::new(num, den).ok_or_else(|| bad_fraction(trimmed))
}

fn bad_fraction(s: &str) -> CliError {
    CliError::Usage(format!(
        "expected a fraction like 1/4 or an integer, got {s:?}"
    ))
}

/// Parses a comma-separated list of cyclic orders (each at least 1).
pub fn parse_orders(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| {
                    CliError::Usage(format!("cyclic orders must be integers >= 1, got {t:?}"))
                })
        })
        .collect()
}

/// Parses one `i,j=frac` off-diagonal pairing (1-based indices).
pub fn parse_off_diagonal(s: &str) -> Result<(usize, usize, QmodZ), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "expected an off-diagonal entry like 1,2=1/2, got {s:?}"
        ))
    };
    let (pair, frac) = s.split_once('=').ok_or_else(bad)?;
    let (i, j) = pair.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 {
        return Err(CliError::Usage(format!(
            "off-diagonal indices are 1-based, got {s:?}"
        )));
    }
    Ok((i - 1, j - 1, parse_fraction(frac)?))
}

/// Largest basis the dense fusion-table representation will materialize:
/// a ring on `r` objects stores `r^3` structure constants.
pub const MAX_RING_RANK: usize = 128;

/// Rejects fusion-ring requests whose dense table would not fit in memory.
pub fn check_ring_rank(rank: usize) -> Result<(), CliError> {
    if rank > MAX_RING_RANK {
        return Err(CliError::Domain(format!(
            "a fusion ring on {rank} objects needs a dense table of {rank}^3 structure constants; the limit is {MAX_RING_RANK}"
        )));
    }
    Ok(())
}

fn check_order_cap(orders: &[u64], cap: u64) -> Result<(), CliError> {
    let mut product: u64 = 1;
    for &n in orders {
        product = product.saturating_mul(n);
    }
    if product > cap {
        return Err(CliError::Domain(format!(
            "group order {product} exceeds the enumeration cap {cap} (raise {MAX_GROUP_ORDER_VAR} to allow it)"
        )));
    }
    Ok(())
}

/// Maps a Gram-construction failure to the exit-code contract: malformed
/// addressing is a usage error, while a well-formed presentation that fails
/// the quadratic-form axioms is a domain error.
fn classify_gram_error(e: QformError) -> CliError {
    match e {
        QformError::GramIndex { .. }
        | QformError::GramDiagonalLength { .. }
        | QformError::TableLength { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    }
}

fn build_metric(
    orders: &[u64],
    diag: &[QmodZ],
    off: &[(usize, usize, QmodZ)],
) -> Result<PreMetricGroup, CliError> {
    check_order_cap(orders, max_group_order()?)?;
    let group =
        FiniteAbelianGroup::new(orders).map_err(|e| CliError::Usage(e.to_string()))?;
    PreMetricGroup::from_gram(group, diag, off).map_err(classify_gram_error)
}

/// Builds a metric group from the `--group`, `--q`, and repeatable `--b`
/// flags.
pub fn metric_from_flags(
    group: &str,
    q: &str,
    b: &[String],
) -> Result<PreMetricGroup, CliError> {
    let orders = parse_orders(group)?;
    let diag: Vec<QmodZ> = q.split(',').map(parse_fraction).collect::<Result<_, _>>()?;
    let off: Vec<(usize, usize, QmodZ)> = b
        .iter()
        .map(|s| parse_off_diagonal(s))
        .collect::<Result<_, _>>()?;
    build_metric(&orders, &diag, &off)
}

/// Parses a compact generator spec `orders:q-values[;i,j=frac...]`, e.g.
/// `"2:1/4"` or `"2,2:0,0;1,2=1/2"`.
pub fn parse_generator_spec(s: &str) -> Result<PreMetricGroup, CliError> {
    let (orders_part, rest) = s.split_once(':').ok_or_else(|| {
        CliError::Usage(format!(
            "generator spec needs the form \"orders:q-values[;i,j=frac...]\", got {s:?}"
        ))
    })?;
    let mut sections = rest.split(';');
    let q_part = sections.next().unwrap_or("");
    let orders = parse_orders(orders_part)?;
    let diag: Vec<QmodZ> = q_part
        .split(',')
        .map(parse_fraction)
        .collect::<Result<_, _>>()?;
    let off: Vec<(usize, usize, QmodZ)> = sections
        .map(|sec| parse_off_diagonal(sec.trim()))
        .collect::<Result<_, _>>()?;
    build_metric(&orders, &diag, &off)
}
