//! Deterministic plain-text rendering: classification lines, anisotropic
//! representatives, Witt-class listings, verification reports, and
//! Frobenius–Perron dimension tables. All rational values print exactly as
//! `p/q`; the only floating-point output is the normalised Gauss sum (nine
//! decimals) and Frobenius–Perron data.

use std::fmt::Write as _;

use wittforge_core::charge::{additive_charge, CentralCharge, Complex64};
use wittforge_core::fusionring::{FPData, FusionRing};
use wittforge_core::qform::PreMetricGroup;
use wittforge_core::rational::format_rational;
use wittforge_core::report::{EntryReport, Status, VerificationReport};
use wittforge_core::witt::WittClass;

/// Formats one exact `Q/Z` value.
fn frac(v: &wittforge_core::rational::QmodZ) -> String {
    format_rational(v.representative())
}

fn charge_label(pm: &PreMetricGroup) -> String {
    if pm.is_nondegenerate() {
        match additive_charge(pm) {
            Ok(c) => c.to_string(),
            Err(e) => format!("unavailable ({e})"),
        }
    } else {
        String::from("undefined")
    }
}

/// Generator values of the form, in presentation order.
fn generator_values(pm: &PreMetricGroup) -> Vec<String> {
    let group = pm.group();
    (0..group.rank())
        .map(|k| frac(&pm.q(&group.generator(k))))
        .collect()
}

/// The `metric classify` body: verdict line, shape, and per-prime parts.
pub fn classification(pm: &PreMetricGroup) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}, {}, c={}",
        if pm.is_nondegenerate() { "nondegenerate" } else { "degenerate" },
        if pm.is_anisotropic() { "anisotropic" } else { "isotropic" },
        charge_label(pm)
    );
    let _ = writeln!(out, "group: {}", pm.group().shape_string());
    let primes = pm.primes();
    if primes.is_empty() {
        let _ = writeln!(out, "primes: none");
    } else {
        let list: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "primes: {}", list.join(", "));
        if primes.len() > 1 {
            for &p in &primes {
                let part = pm.prime_part(p);
                let _ = writeln!(
                    out,
                    "part at {p}: {}; q: {}",
                    part.group().shape_string(),
                    generator_values(&part).join(", ")
                );
            }
        }
    }
    out
}

/// Renders a form by its Gram data on the presentation generators; the
/// trivial form prints as `trivial`.
pub fn representative(pm: &PreMetricGroup) -> String {
    let group = pm.group();
    if group.is_trivial() {
        return String::from("trivial\n");
    }
    let mut out = String::new();
    let _ = writeln!(out, "{}", group.shape_string());
    for k in 0..group.rank() {
        let _ = writeln!(out, "q(g{}) = {}", k + 1, frac(&pm.q(&group.generator(k))));
    }
    for i in 0..group.rank() {
        for j in (i + 1)..group.rank() {
            let b = pm.bilinear(&group.generator(i), &group.generator(j));
            if !b.is_zero() {
                let _ = writeln!(out, "b(g{},g{}) = {}", i + 1, j + 1, frac(&b));
            }
        }
    }
    let _ = writeln!(out, "c={}", charge_label(pm));
    out
}

/// One-line summary of a Witt class for span listings.
pub fn class_line(class: &WittClass) -> String {
    let rep = class.representative();
    if rep.group().is_trivial() {
        return String::from("- trivial; c=0\n");
    }
    let c = match class.charge() {
        Ok(c) => c.to_string(),
        Err(e) => format!("unavailable ({e})"),
    };
    format!(
        "- {}; q: {}; c={}\n",
        rep.group().shape_string(),
        generator_values(rep).join(", "),
        c
    )
}

/// The `metric charge` line: normalised Gauss sum to nine decimals and the
/// exact additive charge.
pub fn xi_line(xi: Complex64, c: &CentralCharge) -> String {
    format!("xi={}, c={c}\n", format_complex(xi))
}

fn format_complex(z: Complex64) -> String {
    // Normalise negative zero so reruns are byte-identical.
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im < 0.0 {
        format!("{re:.9}-{:.9}i", -im)
    } else {
        format!("{re:.9}+{im:.9}i")
    }
}

/// One rendered report entry: status, source, summary, and detail lines.
pub fn entry_lines(e: &EntryReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[{}] {} — {}", e.status, e.source_id, e.summary);
    for d in &e.details {
        let _ = writeln!(out, "  {d}");
    }
    out
}

/// A titled report section.
pub fn section(title: &str, report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    for e in &report.entries {
        out.push_str(&entry_lines(e));
    }
    out.push('\n');
    out
}

/// The final tally over all sections.
pub fn footer(report: &VerificationReport) -> String {
    format!(
        "summary: {} ok, {} failed, {} skipped, {} errors\n",
        report.count(Status::Ok),
        report.count(Status::Fail),
        report.count(Status::Skipped),
        report.count(Status::Error)
    )
}

/// Frobenius–Perron dimensions: one line with the non-unit objects and the
/// total (collapsed when every dimension is 1), then the worst residual of
/// the regular-element eigen-equation.
pub fn fpdims(ring: &FusionRing, fp: &FPData, residual: f64) -> String {
    let mut out = String::new();
    let all_one = fp.dims.iter().all(|d| (d - 1.0).abs() <= 1e-9);
    if all_one {
        let _ = writeln!(out, "total: {:.9}, all dims 1", fp.total);
    } else {
        let mut parts: Vec<String> = Vec::new();
        for (i, label) in ring.labels().iter().enumerate() {
            if i == ring.unit() {
                continue;
            }
            parts.push(format!("{label}: {:.9}", fp.dims[i]));
        }
        parts.push(format!("total: {:.9}", fp.total));
        let _ = writeln!(out, "{}", parts.join(", "));
    }
    let _ = writeln!(out, "residual: {residual:.2e}");
    out
}
