//! JSON encodings. Big integers and rationals are strings.

use coxstat_core::interplab::{RationalFormula, SummaryRow};
use coxstat_core::limits::{DesCltReport, InvCltReport, LindebergReport, LltReport, TrendReport};
use coxstat_core::moments::DistributionSummary;
use coxstat_core::numeric::rational_string;
use coxstat_core::polynomials::coeff_strings;
use coxstat_core::ExactPolynomial;
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// `["1", "4", "1"]`, constant term first.
pub fn poly_to_json(f: &ExactPolynomial) -> Value {
    json!(coeff_strings(f))
}

/// Accepts strings or plain non-negative integers.
pub fn poly_from_json(v: &Value) -> Result<ExactPolynomial> {
    let arr = v.as_array().ok_or_else(|| Error::Json {
        line: 0,
        message: "expected an array of coefficients".into(),
    })?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for (i, c) in arr.iter().enumerate() {
        let parsed = match c {
            Value::String(s) => s.trim().parse::<BigUint>().ok(),
            Value::Number(n) => n.as_u64().map(BigUint::from),
            _ => None,
        };
        coeffs.push(parsed.ok_or_else(|| Error::Json {
            line: 0,
            message: format!("coefficient {i} is not a non-negative integer: {c}"),
        })?);
    }
    Ok(ExactPolynomial::new(coeffs))
}

pub fn poly_from_str(text: &str) -> Result<ExactPolynomial> {
    poly_from_json(&serde_json::from_str(text)?)
}

pub fn summary_json(group: &str, statistic: &str, s: &DistributionSummary) -> Value {
    json!({
        "group": group,
        "statistic": statistic,
        "mean": rational_string(&s.mean),
        "variance": rational_string(&s.variance),
        "central_moments": s.central_moments.iter().map(rational_string).collect::<Vec<_>>(),
        "cumulants": s.cumulants.iter().map(rational_string).collect::<Vec<_>>(),
        "normalized_cumulants": s.normalized_cumulants,
    })
}

fn trend_json(t: &TrendReport) -> Value {
    json!({
        "fitted_exponent": finite(t.fitted_exponent),
        "verdict": t.verdict.name(),
        "rationale": t.rationale,
    })
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn inv_report_json(r: &InvCltReport) -> Value {
    json!({
        "spec": r.spec,
        "statistic": "inv",
        "note": "finite-range diagnostic, not a proof",
        "verdict": r.verdict.name(),
        "symbolic_verdict": r.symbolic.map(|v| v.name()),
        "clt_holds": r.clt_holds,
        "rank_increasing": r.rank_increasing,
        "rank_equals_n": r.rank_equals_n,
        "ratio_d_over_s": trend_json(&r.ratio),
        "ratio_m_over_s": trend_json(&r.m_ratio),
        "points": r.points.iter().map(|p| json!({
            "n": p.n,
            "rank": p.rank,
            "d_n": p.max_degree.to_string(),
            "m_n": p.m_max.as_ref().map(|m| m.to_string()),
            "s_n_squared": rational_string(&p.variance),
            "d_over_s": finite(p.ratio()),
            "m_over_s": finite(p.m_ratio()),
        })).collect::<Vec<_>>(),
    })
}

pub fn des_report_json(r: &DesCltReport) -> Value {
    json!({
        "spec": r.spec,
        "statistic": "des",
        "note": "finite-range diagnostic, not a proof",
        "verdict": r.verdict.name(),
        "symbolic_verdict": r.symbolic.map(|v| v.name()),
        "clt_holds": r.clt_holds,
        "rank_increasing": r.rank_increasing,
        "rank_equals_n": r.rank_equals_n,
        "s_n": trend_json(&r.s),
        "conditions": {
            "A1": r.conditions.a1,
            "A2": r.conditions.a2,
            "B": r.conditions.b,
            "implications_consistent": r.implications_consistent,
        },
        "points": r.points.iter().map(|p| json!({
            "n": p.n,
            "rank": p.rank,
            "s_n_squared": rational_string(&p.variance),
            "s_n": finite(coxstat_core::numeric::rational_sqrt_f64(&p.variance)),
            "non_dihedral_rank": p.non_dihedral_rank,
            "inverse_m_sum": rational_string(&p.inverse_m_sum),
        })).collect::<Vec<_>>(),
    })
}

pub fn lindeberg_json(r: &LindebergReport) -> Value {
    let mut v = json!({
        "statistic": r.statistic.name(),
        "epsilon": r.epsilon,
        "summand_variances": r.summand_variances,
        "total_variance": r.total_variance,
        "max_ratio": r.max_ratio,
        "lindeberg_sum": r.lindeberg_sum,
    });
    if let Some(e) = &r.exact {
        v["exact"] = json!({
            "summand_variances": e.summand_variances.iter().map(rational_string).collect::<Vec<_>>(),
            "total_variance": rational_string(&e.total_variance),
            "max_ratio": rational_string(&e.max_ratio),
            "lindeberg_sum": rational_string(&e.lindeberg_sum),
        });
    }
    v
}

pub fn llt_json(group: &str, statistic: &str, r: &LltReport) -> Value {
    json!({
        "group": group,
        "statistic": statistic,
        "distance": r.distance,
        "argmax": r.argmax,
        "degenerate": r.degenerate,
    })
}

pub fn summary_rows_json(name: &str, rows: &[SummaryRow]) -> Value {
    json!({
        "statistic": name,
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "mean": rational_string(&r.mean),
            "variance": rational_string(&r.variance),
            "zero_variance": r.zero_variance(),
            "normalized_cumulants": r.normalized_cumulants,
            "formatted": r.formatted(),
        })).collect::<Vec<_>>(),
    })
}

pub fn formula_json(f: &RationalFormula) -> Value {
    json!({
        "formula": f.to_string(),
        "numerator": f.numerator.iter().map(rational_string).collect::<Vec<_>>(),
        "a": f.a,
        "b": f.b,
        "c": f.c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let f = ExactPolynomial::new(vec![BigUint::from(1u8), BigUint::from(u128::MAX), BigUint::from(3u8)]);
        let text = poly_to_json(&f).to_string();
        assert!(text.contains("\"340282366920938463463374607431768211455\""));
        assert_eq!(poly_from_str(&text).unwrap(), f);
        assert_eq!(poly_from_str("[1, \"4\", 1]").unwrap(), ExactPolynomial::from_u64(&[1, 4, 1]));
        assert!(poly_from_str("[-1]").is_err());
    }
}
