use std::ops::RangeInclusive;

use anyhow::{bail, Result};
use moddecomp_core::decomp::{anderson_table, duality_verdict_of, TMF_CAVEAT};
use moddecomp_core::hasse::{build_character, eisenstein_e, lift_f};
use moddecomp_core::{
    base_divisibility, decompose, duality_scan, k2_sequence, k3_sequence, l_sequence, profile,
    tmf_splitting_report, verify_hasse_lift, Base, CongruenceGroup, FormDimensions,
    GroupKind, PrimeClass, WeightOneTable,
};
use serde_json::{json, Value};

use crate::output::{csv_line, text_table, Output};

/// A rendered result plus whether any value in it is unknown.
pub struct Report {
    pub output: Output,
    pub unknown: bool,
}

impl From<Output> for Report {
    fn from(output: Output) -> Self {
        Report {
            output,
            unknown: false,
        }
    }
}

const MAX_WEIGHTS: i64 = 100_000;

/// `a..b` (inclusive) or a single weight `k`.
pub fn parse_weights(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim_start_matches('=').trim()),
        None => (s.trim(), s.trim()),
    };
    let lo: i64 = lo.parse().map_err(|_| format!("bad weight {lo:?}"))?;
    let hi: i64 = hi.parse().map_err(|_| format!("bad weight {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty weight range {lo}..{hi}"));
    }
    if hi - lo >= MAX_WEIGHTS {
        return Err(format!("weight range wider than {MAX_WEIGHTS}"));
    }
    Ok(lo..=hi)
}

pub fn dims(
    group: CongruenceGroup,
    weights: RangeInclusive<i64>,
    cusp: bool,
    table: &WeightOneTable,
) -> Result<Report> {
    let dims = FormDimensions::new(group, table)?;
    let (lo, hi) = (*weights.start(), *weights.end());
    let values = if cusp {
        dims.s_range(weights)
    } else {
        dims.m_range(weights)
    };
    let unknown = values.iter().any(|v| v.is_unknown());
    let label = if cusp { "S_k" } else { "M_k" };
    let column = if cusp { "s" } else { "m" };
    let text = format!(
        "{group}: dim {label} for k = {lo}..{hi}\n{}",
        csv_line(values.iter())
    );
    let mut csv = csv_line(["k", column]);
    for (k, v) in (lo..=hi).zip(&values) {
        csv.push_str(&csv_line([k.to_string(), v.to_string()]));
    }
    let json = json!({
        "group": group_json(group),
        "kind": column,
        "weights": { "from": lo, "to": hi },
        "values": values,
    });
    Ok(Report {
        output: Output { text, csv, json },
        unknown,
    })
}

fn group_json(group: CongruenceGroup) -> Value {
    json!({ "kind": group.kind().as_str(), "level": group.level() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Table {
    B1,
    B2,
    B3,
}

pub fn tables(which: Table, table: &WeightOneTable) -> Result<Report> {
    let (name, levels, width, with_genus) = match which {
        Table::B1 => ("B1", 2..=42u64, 12, true),
        Table::B2 => ("B2", 4..=23, 8, false),
        Table::B3 => ("B3", 5..=23, 6, false),
    };
    let prefix = if which == Table::B1 { "l" } else { "k" };
    let mut header = vec!["n".to_string()];
    if with_genus {
        header.push("genus".into());
    }
    header.extend((0..width).map(|i| format!("{prefix}{i}")));

    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in levels {
        let group = CongruenceGroup::gamma1(n);
        let seq = match which {
            Table::B1 => l_sequence(group, table)?,
            Table::B2 => k2_sequence(group, table)?,
            Table::B3 => k3_sequence(group, table)?,
        };
        let mut row = vec![n.to_string()];
        let mut obj = json!({ "n": n, "coeffs": seq.coeffs() });
        if with_genus {
            let genus = profile(group)?.genus;
            row.push(genus.to_string());
            obj["genus"] = json!(genus);
        }
        row.extend(seq.coeffs().iter().map(u64::to_string));
        rows.push(row);
        json_rows.push(obj);
    }
    let mut csv = csv_line(&header);
    for r in &rows {
        csv.push_str(&csv_line(r));
    }
    let json = json!({ "table": name, "columns": header, "rows": json_rows });
    Ok(Output {
        text: text_table(&header, &rows),
        csv,
        json,
    }
    .into())
}

pub fn duality(bound: u64) -> Result<Report> {
    let scan = duality_scan(bound)?;
    let solutions: Vec<String> = scan.solutions.iter().map(u64::to_string).collect();
    let header = vec!["p".to_string(), "k".into(), "g/f".into()];
    let rows: Vec<Vec<String>> = scan
        .ratios
        .iter()
        .map(|r| vec![r.p.to_string(), r.k.to_string(), r.ratio.to_string()])
        .collect();
    let text = format!(
        "n ≤ {bound} with f(n) = 12 g(n): {}\n\n{}",
        if solutions.is_empty() { "none".to_string() } else { solutions.join(", ") },
        text_table(&header, &rows)
    );
    let mut csv = csv_line(["n"]);
    for s in &solutions {
        csv.push_str(&csv_line([s]));
    }
    csv.push('\n');
    csv.push_str(&csv_line(["p", "k", "ratio"]));
    for r in &rows {
        csv.push_str(&csv_line(r));
    }
    Ok(Output {
        text,
        csv,
        json: serde_json::to_value(&scan)?,
    }
    .into())
}

pub fn anderson(max_level: u64, table: &WeightOneTable) -> Result<Report> {
    let pairs = anderson_table(max_level, table)?;
    let header = vec!["n".to_string(), "shift".into()];
    let rows: Vec<Vec<String>> = pairs
        .iter()
        .map(|(n, s)| vec![n.to_string(), s.to_string()])
        .collect();
    let mut csv = csv_line(&header);
    for r in &rows {
        csv.push_str(&csv_line(r));
    }
    let json = json!({
        "max_level": max_level,
        "self_dual": pairs.iter().map(|(n, s)| json!({ "n": n, "shift": s })).collect::<Vec<_>>(),
    });
    Ok(Output {
        text: text_table(&header, &rows),
        csv,
        json,
    }
    .into())
}

pub fn hasse(p: u64, precision: usize, emit_q: bool) -> Result<Report> {
    let report = verify_hasse_lift(p, precision)?;
    let alternative = report
        .alternative_v2
        .as_ref()
        .map(|a| format!("; exponent m−2 would give {a}"))
        .unwrap_or_default();
    let mut text = format!(
        "p = {p}: p − 1 = 2^{} · {}, generator {}\n\
         F ≡ 1 mod 2 through q^{precision}: pass\n\
         L(0, χ) = {}\n\
         v2(L(0, χ)) = {} (expected {}{alternative})\n",
        report.m, report.odd_part, report.generator, report.l_value, report.v2_l_value, report.expected_v2,
    );
    let mut csv = csv_line(["field", "value"]);
    for (k, v) in [
        ("p", p.to_string()),
        ("m", report.m.to_string()),
        ("generator", report.generator.to_string()),
        ("precision", precision.to_string()),
        ("passed", report.passed.to_string()),
        ("v2_l_value", report.v2_l_value.to_string()),
        ("expected_v2", report.expected_v2.to_string()),
    ] {
        csv.push_str(&csv_line([k.to_string(), v]));
    }
    let mut json = serde_json::to_value(&report)?;
    if emit_q {
        let e = eisenstein_e(&build_character(p)?, precision)?;
        let f = lift_f(&e);
        text.push_str("\nn  F_n  E_n\n");
        csv.push('\n');
        csv.push_str(&csv_line(
            ["n".to_string(), "F".to_string()]
                .into_iter()
                .chain((0..e.coeff(0).coords().len()).map(|i| format!("e{i}"))),
        ));
        for (n, (fc, ec)) in f.coeffs().iter().zip(e.coeffs()).enumerate() {
            text.push_str(&format!("{n}  {fc}  {ec}\n"));
            csv.push_str(&csv_line(
                [n.to_string(), fc.to_string()]
                    .into_iter()
                    .chain(ec.coords().iter().map(ToString::to_string)),
            ));
        }
        json["e"] = serde_json::to_value(&e)?;
        json["f"] = serde_json::to_value(&f)?;
    }
    Ok(Output { text, csv, json }.into())
}

pub fn decompose_cmd(
    group: CongruenceGroup,
    base: Base,
    tmf_prime: Option<PrimeClass>,
    table: &WeightOneTable,
) -> Result<Report> {
    let seq = decompose(group, base, table)?;
    let coeffs = csv_line(seq.coeffs());
    let mut text = format!("{group} over {base}: {coeffs}");
    for d in seq.diagnostics() {
        let mark = if d.passed { "pass" } else { "FAIL" };
        text.push_str(&format!("  {mark}  {}: {}\n", d.name, d.detail));
    }
    let mut csv = csv_line(["i", "multiplicity"]);
    for (i, c) in seq.coeffs().iter().enumerate() {
        csv.push_str(&csv_line([i.to_string(), c.to_string()]));
    }
    let mut json = json!({
        "group": group_json(group),
        "base": base,
        "coeffs": seq.coeffs(),
        "diagnostics": seq.diagnostics(),
    });

    if base == Base::Omega {
        let v = duality_verdict_of(&seq);
        let note = if v.symmetric {
            format!(
                "symmetric; dualizing power {}; Anderson shift {}",
                v.dualizing_power,
                v.anderson_shift.expect("symmetric")
            )
        } else {
            "not symmetric".to_string()
        };
        text.push_str(&note);
        text.push('\n');
        json["duality"] = serde_json::to_value(v)?;
        json["note"] = json!(note);
    }
    if base.level() >= 4 && group.kind() == GroupKind::Gamma1 {
        let verdict = base_divisibility(group.level(), base.level())?;
        text.push_str(&format!("rank test: {verdict}\n"));
        json["divisibility"] = serde_json::to_value(verdict)?;
    }
    if let Some(class) = tmf_prime {
        if group.kind() != GroupKind::Gamma1 {
            bail!(moddecomp_core::Error::Domain(format!(
                "TMF splitting is reported for Γ₁(n) only, got {group}"
            )));
        }
        let report = tmf_splitting_report(group.level(), class, table)?;
        let terms: Vec<String> = report
            .summands
            .iter()
            .map(|s| format!("{} Σ^{} {}", s.multiplicity, s.suspension, s.summand))
            .collect();
        text.push_str(&format!(
            "Tmf_1({}) at l = {class}: {}\ncaveat: {TMF_CAVEAT}\n",
            group.level(),
            terms.join(" ⊕ ")
        ));
        json["tmf"] = serde_json::to_value(report)?;
    }
    Ok(Output { text, csv, json }.into())
}
