//! Stable textual forms for reports: numbers as decimal strings with 12
//! significant digits, keys sorted by `serde_json`'s default map.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::oracle::{GridSpec, UnmatchedLevel, VerificationReport, VerificationRow};
use crate::potential::{SymmetryReport, Variant};
use crate::qes::{
    Adjudication, ClosedFormWavefunction, ConditionRow, ReferenceTables, Parity, QesLevel, Quantity,
    TableEntry,
};
use crate::qhj::{QesClassification, QesSet, Rational};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`: shortest of fixed and scientific notation, trailing zeros
/// dropped, negative zero printed as `0`.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn num(x: f64) -> Value {
    Value::String(number(x))
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| num(*x)).collect())
}

fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn complex(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

fn parity(p: Parity) -> Value {
    Value::String(p.to_string())
}

fn opt<T, F: Fn(T) -> Value>(v: Option<T>, f: F) -> Value {
    v.map_or(Value::Null, f)
}

pub fn params(v1: f64, v2: f64, alpha: f64, variant: Variant) -> Value {
    json!({
        "v1": num(v1),
        "v2": num(v2),
        "alpha": num(alpha),
        "variant": variant.tag(),
    })
}

pub fn symmetry(r: &SymmetryReport) -> Value {
    json!({
        "variant": r.variant.tag(),
        "pt_symmetric": r.pt_symmetric,
        "lambda": complex(r.lambda_value),
        "lambda_candidates": r.lambda_candidates.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
        "physical_qes_possible": r.physical_qes_possible,
        "note": r.note,
    })
}

pub fn qes_set(s: &QesSet) -> Value {
    json!({
        "set": s.set_index,
        "n": s.n,
        "b1": rational(&s.b1),
        "b1_prime": rational(&s.b1_prime),
        "levels": s.n + 1,
    })
}

pub fn classification(c: &QesClassification) -> Value {
    json!({
        "lambda": num(c.lambda),
        "m": num(2.0 * c.lambda),
        "sets": c.sets.iter().map(qes_set).collect::<Vec<_>>(),
        "total_levels": c.total_levels,
    })
}

fn wavefunction_descriptor(wf: &ClosedFormWavefunction) -> Value {
    json!({
        "p1": rational(&wf.p1),
        "p2": rational(&wf.p2),
        "c": num(wf.c),
        "alpha": num(wf.alpha),
        "coefficients": nums(&wf.coefficients),
        "form": "(y-1)^p1 (y+1)^p2 exp(c y) P(y), y = cosh(alpha x)",
    })
}

pub fn level(l: &QesLevel, wf: &ClosedFormWavefunction) -> Value {
    json!({
        "set": l.set.set_index,
        "n": l.set.n,
        "energy": num(l.energy),
        "coefficients": nums(&l.coefficients),
        "parity": parity(l.parity),
        "nodes": l.node_count,
        "wavefunction": wavefunction_descriptor(wf),
    })
}

pub fn grid(g: &GridSpec) -> Value {
    json!({
        "half_width": num(g.half_width),
        "points": g.points,
        "step": num(g.step()),
    })
}

fn row(r: &VerificationRow) -> Value {
    json!({
        "label": r.label,
        "set": r.set_index,
        "n": r.n,
        "e_analytic": num(r.e_analytic),
        "e_oracle": num(r.e_oracle),
        "abs_gap": num(r.abs_gap),
        "oracle_index": r.oracle_index,
        "e_coarse": num(r.e_coarse),
        "e_fine": num(r.e_fine),
        "error_ratio": num(r.error_ratio),
        "convergence_order": num(r.convergence_order),
        "convergence_ok": r.convergence_ok,
        "node_count_analytic": r.node_count_analytic,
        "node_count_oracle": r.node_count_oracle,
        "parity_analytic": opt(r.parity_analytic, parity),
        "parity_oracle": opt(r.parity_oracle, parity),
        "parity_match": r.parity_match,
    })
}

fn unmatched(u: &UnmatchedLevel) -> Value {
    json!({
        "oracle_index": u.index,
        "energy": num(u.energy),
        "node_count": u.node_count,
    })
}

pub fn verification(r: &VerificationReport) -> Value {
    json!({
        "tolerance": num(r.tolerance),
        "grid": grid(&r.grid),
        "refined_grid": grid(&r.refined_grid),
        "rows": r.rows.iter().map(row).collect::<Vec<_>>(),
        "unmatched": r.unmatched.iter().map(unmatched).collect::<Vec<_>>(),
        "convergence_order_estimate": num(r.convergence_order_estimate),
        "overall_pass": r.overall_pass,
    })
}

fn condition_row(c: &ConditionRow) -> Value {
    json!({
        "set": c.set_index,
        "printed_b1": rational(&c.printed_b1),
        "printed_b1_prime": rational(&c.printed_b1_prime),
        "b1": rational(&c.b1),
        "b1_prime": rational(&c.b1_prime),
        "printed_n": c.printed_n,
        "printed_condition": c.printed_condition,
        "printed_qes_condition": c.printed_qes_condition,
        "m_printed_definition": c.m_printed_definition,
        "m_reconciled_definition": c.m_reconciled_definition,
        "lambda_at_n0": num(c.lambda_at_n0),
        "m_reconciled_at_n0": num(c.m_reconciled_at_n0),
        "m_printed_at_n0": num(c.m_printed_at_n0),
        "v2_at_n0": num(c.v2_at_n0),
    })
}

fn flag(a: Adjudication) -> &'static str {
    match a {
        Adjudication::MatchesPaper => "matches-paper",
        Adjudication::PaperTypoSuspected => "paper-typo-suspected",
    }
}

fn entry(e: &TableEntry) -> Value {
    json!({
        "table": e.table,
        "sets": e.sets,
        "quantity": match e.quantity {
            Quantity::Energy => "energy",
            Quantity::Wavefunction => "wavefunction",
        },
        "lambda": num(e.lambda),
        "v2": num(e.v2),
        "printed": e.printed,
        "computed": e.computed,
        "printed_value": opt(e.printed_value, num),
        "computed_values": nums(&e.computed_values),
        "flag": flag(e.flag),
        "note": e.note,
    })
}

pub fn tables(t: &ReferenceTables) -> Value {
    json!({
        "v1": num(t.v1),
        "alpha": num(t.alpha),
        "conditions": t.conditions.iter().map(condition_row).collect::<Vec<_>>(),
        "entries": t.entries.iter().map(entry).collect::<Vec<_>>(),
        "typo_count": t.flagged(Adjudication::PaperTypoSuspected).count(),
    })
}

/// `{"command": …, "error": {"kind": …, "message": …}}`.
pub fn error(command: Option<&str>, kind: &str, message: &str) -> Value {
    let mut doc = Map::new();
    if let Some(c) = command {
        doc.insert("command".into(), Value::String(c.into()));
    }
    doc.insert("error".into(), json!({ "kind": kind, "message": message }));
    Value::Object(doc)
}

pub fn library_error(command: Option<&str>, e: &Error) -> Value {
    error(command, e.kind(), &e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(number(-1.0), "-1");
        assert_eq!(number(-0.0), "0");
        assert_eq!(number(1.5), "1.5");
        assert_eq!(number(-2.561_552_812_808_830_3), "-2.56155281281");
        assert_eq!(number(1e-9), "1e-09");
        assert_eq!(number(1.234_567_890_123_4e-7), "1.23456789012e-07");
        assert_eq!(number(123_456_789_012.0), "123456789012");
        assert_eq!(number(1_234_567_890_123.0), "1.23456789012e+12");
        assert_eq!(number(0.000_123), "0.000123");
        assert_eq!(number(4.381_870_348_040_067), "4.38187034804");
        assert_eq!(number(f64::NAN), "nan");
    }

    #[test]
    fn rounding_carries_into_the_exponent() {
        assert_eq!(number(9.999_999_999_999_9), "10");
        assert_eq!(number(0.000_099_999_999_999_99), "0.0001");
    }
}
