//! The JSON problem-file format.
//!
//! ```text
//! {
//!   "scale": { "labels": ["perfect", …], "values": [[0.75, 1, 1], …] },
//!   "criteria": ["C1", "C2", "C3"],
//!   "quantifier": "power:2",                 // or [[0, 0], [0.5, 0], [1, 1]]
//!   "importances": { "C1": 1, "C2": 2, … },  // optional
//!   "alternatives": {
//!     "x": {
//!       "C1": { "probability": [0, 0.2, 0.5, 0.2, 0.1] },
//!       "C2": { "possibility": [0.4, 0.2, 0.6, 0.8, 1] },
//!       "C3": { "certain": 4 }               // also "interval": [2, 4]
//!     }                                      // and "interval_bounds": [0.3, 0.8]
//!   },
//!   "options": { "ranking": "centroid", "grid": 1001, "tnorm": "minimum" },
//!   "reference_aggregates": { "x": [ … ] }   // optional cross-check
//! }
//! ```
//!
//! Scale positions are 1-based in the file. Lines whose first non-blank
//! characters are `//` are comments.

use serde_json::{json, Map, Value};

use crate::diag::Diagnostic;
use crate::dominance::RankingMethod;
use crate::fuzzy::Tfn;
use crate::lattice::{LatticeOptions, TNorm};
use crate::measures::{LinguisticScale, UncertainSatisfaction};
use crate::owa::{ImportanceVector, Quantifier};
use crate::pipeline::{Alternative, DecisionProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Unknown fields are errors.
    #[default]
    Strict,
    /// Unknown fields are reported as warnings and ignored.
    Lenient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub problem: DecisionProblem,
    pub warnings: Vec<Diagnostic>,
}

const TOP_KEYS: &[&str] = &[
    "scale",
    "criteria",
    "quantifier",
    "importances",
    "alternatives",
    "options",
    "reference_aggregates",
];

struct Ctx {
    strictness: Strictness,
    errors: Vec<Diagnostic>,
    warnings: Vec<Diagnostic>,
}

impl Ctx {
    fn err(&mut self, at: impl Into<String>, msg: impl Into<String>) {
        self.errors.push(Diagnostic::new(at, msg));
    }

    fn check_keys(&mut self, at: &str, obj: &Map<String, Value>, known: &[&str]) {
        for key in obj.keys().filter(|k| !known.contains(&k.as_str())) {
            let loc = if at.is_empty() {
                key.clone()
            } else {
                format!("{at}.{key}")
            };
            let d = Diagnostic::new(loc, "unknown field");
            match self.strictness {
                Strictness::Strict => self.errors.push(d),
                Strictness::Lenient => self.warnings.push(d),
            }
        }
    }

    fn number(&mut self, at: &str, v: &Value) -> Option<f64> {
        let n = v.as_f64();
        if n.is_none() {
            self.err(at, format!("expected a number, got {v}"));
        }
        n
    }

    fn numbers(&mut self, at: &str, v: &Value) -> Option<Vec<f64>> {
        let Some(items) = v.as_array() else {
            self.err(at, "expected an array of numbers");
            return None;
        };
        let out: Vec<Option<f64>> = items
            .iter()
            .enumerate()
            .map(|(i, x)| self.number(&format!("{at}[{i}]"), x))
            .collect();
        out.into_iter().collect()
    }

    fn position(&mut self, at: &str, v: &Value) -> Option<usize> {
        match v.as_u64() {
            Some(p) if p >= 1 => Some(p as usize - 1),
            _ => {
                self.err(at, format!("expected a 1-based scale position, got {v}"));
                None
            }
        }
    }

    fn strings(&mut self, at: &str, v: &Value) -> Option<Vec<String>> {
        let items = v
            .as_array()
            .map(|a| a.iter().map(|x| x.as_str().map(String::from)).collect());
        match items {
            Some(Some(s)) => Some(s),
            _ => {
                self.err(at, "expected an array of strings");
                None
            }
        }
    }
}

/// Blanks out `//` comment lines, keeping line numbers intact.
fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| {
            if l.trim_start().starts_with("//") {
                ""
            } else {
                l
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_problem(text: &str, strictness: Strictness) -> Result<Parsed, Vec<Diagnostic>> {
    let cleaned = strip_comments(text);
    let value: Value = if cleaned.trim().is_empty() {
        Value::Object(Map::new())
    } else {
        serde_json::from_str(&cleaned).map_err(|e| {
            vec![Diagnostic::new(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )]
        })?
    };
    let Value::Object(doc) = value else {
        return Err(vec![Diagnostic::new("", "document must be a JSON object")]);
    };
    let mut cx = Ctx {
        strictness,
        errors: Vec::new(),
        warnings: Vec::new(),
    };
    cx.check_keys("", &doc, TOP_KEYS);

    let scale = match doc.get("scale") {
        None => {
            cx.err("", "missing scale");
            None
        }
        Some(v) => parse_scale(&mut cx, v),
    };
    let criteria = match doc.get("criteria") {
        None => {
            cx.err("", "missing criteria");
            None
        }
        Some(v) => cx.strings("criteria", v),
    };
    let quantifier = match doc.get("quantifier") {
        None => {
            cx.err("", "missing quantifier");
            None
        }
        Some(v) => match serde_json::from_value::<Quantifier>(v.clone()) {
            Ok(q) => Some(q),
            Err(e) => {
                cx.err("quantifier", e.to_string());
                None
            }
        },
    };
    let ranking = doc
        .get("options")
        .map_or(Some(RankingMethod::Centroid), |v| parse_options(&mut cx, v));

    let importances = match (doc.get("importances"), &criteria) {
        (Some(v), Some(criteria)) => parse_importances(&mut cx, v, criteria),
        _ => None,
    };
    let alternatives = match (doc.get("alternatives"), &criteria, &scale) {
        (None, ..) => {
            cx.err("", "missing alternatives");
            None
        }
        (Some(v), Some(criteria), Some(scale)) => parse_alternatives(&mut cx, v, criteria, scale),
        _ => None,
    };
    let references = match doc.get("reference_aggregates") {
        None => Some(vec![]),
        Some(Value::Object(m)) => m
            .iter()
            .map(|(name, v)| {
                cx.numbers(&format!("reference_aggregates.{name}"), v)
                    .map(|xs| (name.clone(), xs))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect(),
        Some(_) => {
            cx.err(
                "reference_aggregates",
                "expected an object of alternative name → array",
            );
            None
        }
    };

    if !cx.errors.is_empty() {
        return Err(cx.errors);
    }
    let (
        Some(scale),
        Some(criteria),
        Some(quantifier),
        Some(alternatives),
        Some(ranking),
        Some(references),
    ) = (
        scale,
        criteria,
        quantifier,
        alternatives,
        ranking,
        references,
    )
    else {
        unreachable!("every missing part records an error");
    };
    let problem = DecisionProblem {
        scale,
        criteria,
        quantifier,
        importances: importances.flatten(),
        alternatives,
        ranking,
        references,
    };
    let diags = problem.diagnostics();
    if !diags.is_empty() {
        return Err(diags);
    }
    Ok(Parsed {
        problem,
        warnings: cx.warnings,
    })
}

fn parse_scale(cx: &mut Ctx, v: &Value) -> Option<LinguisticScale> {
    let Some(obj) = v.as_object() else {
        cx.err("scale", "expected an object with labels and values");
        return None;
    };
    cx.check_keys("scale", obj, &["labels", "values"]);
    let labels = match obj.get("labels") {
        Some(l) => cx.strings("scale.labels", l),
        None => {
            cx.err("scale", "missing labels");
            None
        }
    };
    let values = match obj.get("values").map(|v| v.as_array()) {
        Some(Some(items)) => items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                let at = format!("scale.values[{i}]");
                let xs = cx.numbers(&at, item)?;
                let Ok(triple) = <[f64; 3]>::try_from(xs) else {
                    cx.err(&at, "expected [a, b, c]");
                    return None;
                };
                Tfn::try_from(triple)
                    .map_err(|e| cx.err(&at, e.to_string()))
                    .ok()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Option<Vec<_>>>(),
        Some(None) => {
            cx.err("scale.values", "expected an array of [a, b, c] triples");
            None
        }
        None => {
            cx.err("scale", "missing values");
            None
        }
    };
    match LinguisticScale::new(labels?, values?) {
        Ok(s) => Some(s),
        Err(e) => {
            cx.err("scale", e.to_string());
            None
        }
    }
}

fn parse_options(cx: &mut Ctx, v: &Value) -> Option<RankingMethod> {
    let Some(obj) = v.as_object() else {
        cx.err("options", "expected an object");
        return None;
    };
    cx.check_keys("options", obj, &["ranking", "grid", "tnorm"]);
    let mut lattice = LatticeOptions::default();
    if let Some(g) = obj.get("grid") {
        match g.as_u64() {
            Some(n) if n >= 2 => lattice.grid_points = n as usize,
            _ => cx.err(
                "options.grid",
                format!("grid must be an integer >= 2, got {g}"),
            ),
        }
    }
    if let Some(t) = obj.get("tnorm") {
        match t.as_str().map(str::parse::<TNorm>) {
            Some(Ok(t)) => lattice.tnorm = t,
            Some(Err(e)) => cx.err("options.tnorm", e),
            None => cx.err("options.tnorm", "expected a string"),
        }
    }
    match obj.get("ranking").map(|r| r.as_str()) {
        None | Some(Some("centroid")) => Some(RankingMethod::Centroid),
        Some(Some("lattice-ini")) => Some(RankingMethod::LatticeIni(lattice)),
        Some(other) => {
            cx.err(
                "options.ranking",
                format!(
                    "expected \"centroid\" or \"lattice-ini\", got {}",
                    other.unwrap_or("a non-string")
                ),
            );
            None
        }
    }
}

fn parse_importances(
    cx: &mut Ctx,
    v: &Value,
    criteria: &[String],
) -> Option<Option<ImportanceVector>> {
    let Some(obj) = v.as_object() else {
        cx.err(
            "importances",
            "expected an object of criterion → importance",
        );
        return None;
    };
    for key in obj.keys().filter(|k| !criteria.contains(k)) {
        cx.err(format!("importances.{key}"), "not a declared criterion");
    }
    let mut lambdas = Vec::with_capacity(criteria.len());
    for c in criteria {
        match obj.get(c) {
            Some(x) => lambdas.push(cx.number(&format!("importances.{c}"), x)?),
            None => {
                cx.err("importances", format!("missing importance for '{c}'"));
                return None;
            }
        }
    }
    match ImportanceVector::new(lambdas) {
        Ok(imp) => Some(Some(imp)),
        Err(e) => {
            cx.err("importances", e.to_string());
            None
        }
    }
}

fn parse_alternatives(
    cx: &mut Ctx,
    v: &Value,
    criteria: &[String],
    scale: &LinguisticScale,
) -> Option<Vec<Alternative>> {
    let Some(obj) = v.as_object() else {
        cx.err(
            "alternatives",
            "expected an object of alternative name → satisfactions",
        );
        return None;
    };
    let mut out = Vec::with_capacity(obj.len());
    let mut ok = true;
    for (name, sats) in obj {
        let at = format!("alternatives.{name}");
        let Some(sats) = sats.as_object() else {
            cx.err(&at, "expected an object of criterion → satisfaction");
            ok = false;
            continue;
        };
        for key in sats.keys().filter(|k| !criteria.contains(k)) {
            cx.err(format!("{at}.{key}"), "not a declared criterion");
            ok = false;
        }
        let mut satisfactions = Vec::with_capacity(criteria.len());
        for c in criteria {
            let at = format!("{at}.{c}");
            match sats.get(c) {
                None => {
                    cx.err(&at, "missing satisfaction");
                    ok = false;
                }
                Some(s) => match parse_satisfaction(cx, &at, s, scale) {
                    Some(s) => satisfactions.push(s),
                    None => ok = false,
                },
            }
        }
        out.push(Alternative {
            name: name.clone(),
            satisfactions,
        });
    }
    ok.then_some(out)
}

fn parse_satisfaction(
    cx: &mut Ctx,
    at: &str,
    v: &Value,
    scale: &LinguisticScale,
) -> Option<UncertainSatisfaction> {
    const KINDS: &str = "probability, possibility, interval, interval_bounds or certain";
    let entry = v
        .as_object()
        .filter(|o| o.len() == 1)
        .and_then(|o| o.iter().next());
    let Some((kind, body)) = entry else {
        cx.err(
            at,
            format!("expected an object with exactly one of {KINDS}"),
        );
        return None;
    };
    let sat = match kind.as_str() {
        "probability" => UncertainSatisfaction::Probability(cx.numbers(at, body)?),
        "possibility" => UncertainSatisfaction::Possibility(cx.numbers(at, body)?),
        "certain" => UncertainSatisfaction::Certain(cx.position(at, body)?),
        "interval" => match body.as_array().map(Vec::as_slice) {
            Some([lo, hi]) => UncertainSatisfaction::Interval {
                lo: cx.position(at, lo)?,
                hi: cx.position(at, hi)?,
            },
            _ => {
                cx.err(at, "interval expects [lo, hi] scale positions");
                return None;
            }
        },
        "interval_bounds" => match cx.numbers(at, body)?.as_slice() {
            &[lo, hi] => match UncertainSatisfaction::interval_from_bounds(lo, hi, scale) {
                Ok(s) => s,
                Err(e) => {
                    cx.err(at, e.to_string());
                    return None;
                }
            },
            _ => {
                cx.err(at, "interval_bounds expects [lo, hi]");
                return None;
            }
        },
        other => {
            cx.err(
                at,
                format!("unknown satisfaction kind '{other}' (expected {KINDS})"),
            );
            return None;
        }
    };
    if let Err(issues) = sat.validate(scale.len()) {
        for issue in issues {
            cx.err(at, issue.to_string());
        }
        return None;
    }
    Some(sat)
}

fn satisfaction_json(s: &UncertainSatisfaction) -> Value {
    match s {
        UncertainSatisfaction::Probability(p) => json!({ "probability": p }),
        UncertainSatisfaction::Possibility(t) => json!({ "possibility": t }),
        UncertainSatisfaction::Interval { lo, hi } => json!({ "interval": [lo + 1, hi + 1] }),
        UncertainSatisfaction::Certain(k) => json!({ "certain": k + 1 }),
    }
}

/// Renders `problem` back into the problem-file format.
pub fn to_problem_text(problem: &DecisionProblem) -> String {
    let mut doc = Map::new();
    doc.insert(
        "scale".into(),
        json!({
            "labels": problem.scale.labels(),
            "values": problem.scale.values(),
        }),
    );
    doc.insert("criteria".into(), json!(problem.criteria));
    doc.insert(
        "quantifier".into(),
        serde_json::to_value(&problem.quantifier).expect("serializable"),
    );
    if let Some(imp) = &problem.importances {
        let m: Map<String, Value> = problem
            .criteria
            .iter()
            .zip(imp.as_slice())
            .map(|(c, l)| (c.clone(), json!(l)))
            .collect();
        doc.insert("importances".into(), Value::Object(m));
    }
    let alts: Map<String, Value> = problem
        .alternatives
        .iter()
        .map(|a| {
            let sats: Map<String, Value> = problem
                .criteria
                .iter()
                .zip(&a.satisfactions)
                .map(|(c, s)| (c.clone(), satisfaction_json(s)))
                .collect();
            (a.name.clone(), Value::Object(sats))
        })
        .collect();
    doc.insert("alternatives".into(), Value::Object(alts));
    let options = match problem.ranking {
        RankingMethod::Centroid => json!({ "ranking": "centroid" }),
        RankingMethod::LatticeIni(o) => json!({
            "ranking": "lattice-ini",
            "grid": o.grid_points,
            "tnorm": o.tnorm,
        }),
    };
    doc.insert("options".into(), options);
    if !problem.references.is_empty() {
        let refs: Map<String, Value> = problem
            .references
            .iter()
            .map(|(n, v)| (n.clone(), json!(v)))
            .collect();
        doc.insert("reference_aggregates".into(), Value::Object(refs));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
    text.push('\n');
    text
}
