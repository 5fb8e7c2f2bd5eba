//! Text and JSON rendering of scores and rankings.

use std::fmt::Write;

use serde::Serialize;

use crate::dominance::OrderingMethod;
use crate::fmt::{sig6, sig6_list};
use crate::measures::LinguisticScale;
use crate::pipeline::{AlternativeScore, RankingReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn heading(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[1m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

fn method(m: OrderingMethod) -> &'static str {
    match m {
        OrderingMethod::Dominance => "dominance",
        OrderingMethod::Surrogate => "surrogate",
    }
}

/// Full-precision JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn table(out: &mut String, columns: usize, rows: &[(String, Vec<f64>)], head: &str) {
    let label_w = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .max()
        .unwrap_or(0)
        .max(4);
    let _ = write!(out, "    {:label_w$}", "");
    for j in 1..=columns {
        let _ = write!(out, " {:>10}", format!("{head}{j}"));
    }
    out.push('\n');
    for (label, values) in rows {
        let _ = write!(out, "    {label:label_w$}");
        for v in values {
            let _ = write!(out, " {:>10}", sig6(*v));
        }
        out.push('\n');
    }
}

pub fn score_text(score: &AlternativeScore, scale: &LinguisticScale, style: Style) -> String {
    let mut out = String::new();
    let n = scale.len();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!("Alternative {}", score.name))
    );
    let _ = writeln!(
        out,
        "  criterion order: {} (by {})",
        score.trace.order.join(" > "),
        method(score.criterion_ordering.method)
    );
    let _ = writeln!(out, "  OWA weights: {}", sig6_list(&score.trace.weights));

    let _ = writeln!(out, "  cumulative measures μ_k(H_j):");
    let rows: Vec<_> = score
        .trace
        .criteria
        .iter()
        .map(|c| (c.criterion.clone(), c.cumulative.clone()))
        .collect();
    table(&mut out, n, &rows, "H");

    let _ = writeln!(out, "  increments V_kj = μ_k(H_j) − μ_k(H_j−1):");
    let rows: Vec<_> = score
        .trace
        .criteria
        .iter()
        .map(|c| (c.criterion.clone(), c.deltas.clone()))
        .collect();
    table(&mut out, n, &rows, "V");

    if let Some(surrogates) = &score.criterion_ordering.surrogates {
        let _ = writeln!(out, "  criterion surrogates M(μ_k):");
        for (c, s) in score.trace.criteria.iter().zip(surrogates) {
            let _ = writeln!(
                out,
                "    {}: {}  centroid {}",
                c.criterion,
                s,
                sig6(s.centroid().x0)
            );
        }
    }
    let _ = writeln!(
        out,
        "  aggregate μ(H_j): {}",
        sig6_list(score.aggregate.values())
    );
    let _ = writeln!(
        out,
        "  aggregate surrogate: {}  centroid {}",
        score.surrogate,
        sig6(score.centroid)
    );
    out
}

pub fn ranking_text(report: &RankingReport, scale: &LinguisticScale, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!(
            "Ranking (winner by {}, fuzzy ranking {})",
            method(report.comparison_method),
            report.ranking_method
        ))
    );
    let name_w = report
        .alternatives
        .iter()
        .map(|a| a.name.chars().count())
        .max()
        .unwrap_or(0);
    for a in &report.alternatives {
        let _ = writeln!(
            out,
            "  {:>3}. {:name_w$}  centroid {:<10} surrogate {}  [{}{}]",
            a.rank,
            a.name,
            sig6(a.score.centroid),
            a.score.surrogate,
            method(a.decided_by),
            if a.tied { ", tied" } else { "" }
        );
    }
    for a in &report.alternatives {
        out.push('\n');
        out.push_str(&score_text(&a.score, scale, style));
    }
    if !report.warnings.is_empty() {
        out.push('\n');
        let _ = writeln!(out, "{}", style.heading("Warnings"));
        for w in &report.warnings {
            let _ = writeln!(out, "  - {w}");
        }
    }
    out
}
