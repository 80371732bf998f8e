use cyclic_shape::{CoefficientTable, Error, FactoredDiscriminant, IntMatrix, LatticeFingerprint};
use num_bigint::BigUint;

pub fn error_json(err: &Error) -> serde_json::Value {
    let mut detail = serde_json::Map::new();
    detail.insert("kind".into(), err.kind().into());
    detail.insert("message".into(), err.to_string().into());
    detail.insert("exit".into(), err.exit_code().into());
    match err {
        Error::WildRamification { prime }
        | Error::RamificationIndexUndefined { prime }
        | Error::PrimeIncongruent { prime, .. }
        | Error::NonIntegralRamificationIndex { prime, .. }
        | Error::RamificationIndexNegative { prime, .. } => {
            detail.insert("prime".into(), big_json(prime));
        }
        Error::NonIntegralF { divisor, .. }
        | Error::ProfileInconsistent { divisor }
        | Error::LiteralSystemMismatch { divisor, .. } => {
            detail.insert("divisor".into(), (*divisor).into());
        }
        _ => {}
    }
    serde_json::json!({ "error": detail })
}

fn big_json(n: &BigUint) -> serde_json::Value {
    // decimal string above 53 bits, plain number below
    match n.to_string().parse::<u64>() {
        Ok(v) if v < (1 << 53) => v.into(),
        _ => n.to_string().into(),
    }
}

/// {"a": {"1": "...", ...}, "provenance": {"1": "literal", ...}} with keys
/// in ascending numeric order.
pub fn coeff_table_json(table: &CoefficientTable) -> serde_json::Value {
    let mut a = serde_json::Map::new();
    let mut provenance = serde_json::Map::new();
    for (d, value, prov) in table.iter() {
        a.insert(d.to_string(), value.to_string().into());
        provenance.insert(d.to_string(), prov.as_str().into());
    }
    serde_json::json!({ "a": a, "provenance": provenance })
}

pub fn coeff_table_text(table: &CoefficientTable) -> String {
    let mut out = String::new();
    for (d, value, prov) in table.iter() {
        out.push_str(&format!("a_{d} = {value} ({})\n", prov.as_str()));
    }
    out
}

pub fn fingerprint_json(fp: &LatticeFingerprint) -> serde_json::Value {
    let mut theta = serde_json::Map::new();
    for (norm, count) in &fp.theta {
        theta.insert(norm.to_string(), (*count).into());
    }
    serde_json::json!({
        "dimension": fp.dimension,
        "determinant": fp.determinant.to_string(),
        "minimum": fp.minimum.to_string(),
        "theta": theta,
    })
}

pub fn build_json(
    m: u64,
    disc: &FactoredDiscriminant,
    mode: &str,
    gram: &IntMatrix,
    full: Option<&IntMatrix>,
    fingerprint: Option<&LatticeFingerprint>,
) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    map.insert("m".into(), m.into());
    map.insert("disc".into(), serde_json::to_value(disc).unwrap());
    map.insert("mode".into(), mode.into());
    map.insert("trace_zero".into(), gram.to_json());
    if let Some(f) = full {
        map.insert("full_trace".into(), f.to_json());
    }
    if let Some(fp) = fingerprint {
        map.insert("fingerprint".into(), fingerprint_json(fp));
    }
    serde_json::Value::Object(map)
}
