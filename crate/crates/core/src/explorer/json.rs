//! JSON rendering. Field elements are strings (`"p/q"` in lowest terms,
//! integers without a denominator, residues for prime fields); monomials are
//! exponent vectors; polynomials are term arrays in descending grevlex
//! order.

use serde::Serialize;
use serde_json::{json, Value};

use crate::groebner::{HilbertFunctionTable, Ideal};
use crate::resolution::{BettiTable, GradedMatrix};
use crate::ring::{Coeff, Monomial, Polynomial, Ring};
use crate::strength::{DecompositionWitness, NuValue};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One command's output. `timings` is only filled on request, so reports
/// are byte-identical across runs by default.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub engine_version: String,
    pub seed: u64,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Value>,
}

impl Report {
    pub fn new(command: &str, seed: u64, inputs: Value, results: Value) -> Self {
        Report {
            command: command.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
            seed,
            inputs,
            results,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn coeff(c: &Coeff) -> Value {
    Value::String(c.to_string())
}

pub fn monomial(m: &Monomial) -> Value {
    json!(m.exponents())
}

pub fn polynomial(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|t| json!({"coeff": coeff(&t.coeff), "exp": monomial(&t.monomial)}))
            .collect(),
    )
}

pub fn polynomials(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(polynomial).collect())
}

pub fn ring(r: &Ring) -> Value {
    let mut v = json!({
        "field": r.field().name(),
        "variables": r.var_names(),
    });
    if let Some(w) = r.weights() {
        v["weights"] = json!(w);
    }
    v
}

pub fn ideal(i: &Ideal) -> Value {
    json!({
        "ring": ring(i.ring()),
        "generators": polynomials(i.generators()),
    })
}

pub fn hilbert(h: &HilbertFunctionTable) -> Value {
    json!(h.values)
}

pub fn betti(t: &BettiTable) -> Value {
    serde_json::to_value(t).expect("betti table serializes")
}

pub fn matrix(m: &GradedMatrix) -> Value {
    json!({
        "row_degrees": m.row_degrees(),
        "col_degrees": m.col_degrees(),
        "entries": m.entries().iter().map(|row| Value::Array(row.iter().map(polynomial).collect())).collect::<Vec<_>>(),
    })
}

pub fn nu(v: NuValue) -> Value {
    match v {
        NuValue::Finite(n) => json!(n),
        NuValue::Infinite => json!("inf"),
    }
}

pub fn witness(w: &DecompositionWitness) -> Value {
    json!({
        "outer": polynomial(&w.outer),
        "outer_ring": ring(w.outer.ring()),
        "inner": polynomials(&w.inner),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, RingContext};

    #[test]
    fn polynomial_terms_and_rationals() {
        let r = RingContext::standard(FieldSpec::Rationals, 2).unwrap();
        let f = crate::explorer::parse_polynomial(&r, "x1^2 - 3/6*x1*x2 + 4").unwrap();
        assert_eq!(
            polynomial(&f),
            json!([
                {"coeff": "1", "exp": [2, 0]},
                {"coeff": "-1/2", "exp": [1, 1]},
                {"coeff": "4", "exp": [0, 0]}
            ])
        );
        assert_eq!(nu(NuValue::Infinite), json!("inf"));
    }
}
