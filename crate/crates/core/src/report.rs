//! Structured records pairing a computed quantity with a bound.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

/// One inequality instance: `lhs ≤ rhs` with `slack = rhs − lhs`.
///
/// When the comparison was decided exactly (on rationals), `holds` is the
/// exact verdict and `slack` is clamped so that its sign agrees with it.
/// Monte-Carlo comparisons carry their tolerance in `inputs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub inputs: Value,
}

impl BoundReport {
    /// Report whose verdict was decided exactly by the caller.
    pub fn exact(name: &str, lhs: f64, rhs: f64, holds: bool, inputs: Value) -> Self {
        let mut slack = rhs - lhs;
        if holds && slack < 0.0 {
            slack = 0.0;
        } else if !holds && slack >= 0.0 {
            slack = -f64::MIN_POSITIVE;
        }
        BoundReport {
            name: name.to_string(),
            lhs,
            rhs,
            slack,
            holds,
            inputs,
        }
    }

    /// Report on floating-point sides, accepted when `slack ≥ −tolerance`.
    pub fn with_tolerance(name: &str, lhs: f64, rhs: f64, tolerance: f64, mut inputs: Value) -> Self {
        if let Value::Object(map) = &mut inputs {
            map.insert("tolerance".into(), Value::from(tolerance));
        }
        let slack = rhs - lhs;
        BoundReport {
            name: name.to_string(),
            lhs,
            rhs,
            slack,
            holds: slack >= -tolerance,
            inputs,
        }
    }

    /// Informational record that asserts nothing.
    pub fn info(name: &str, lhs: f64, rhs: f64, inputs: Value) -> Self {
        let slack = rhs - lhs;
        let mut r = Self::exact(name, lhs, rhs, slack >= 0.0, inputs);
        if let Value::Object(map) = &mut r.inputs {
            map.insert("asserted".into(), Value::from(false));
        }
        r
    }

    /// Whether a failure of this report should fail a batch run.
    pub fn is_asserted(&self) -> bool {
        self.inputs.get("asserted").and_then(Value::as_bool).unwrap_or(true)
    }

    pub fn failed(&self) -> bool {
        self.is_asserted() && !self.holds
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Writes reports as a CSV table with the inputs column JSON-encoded.
pub fn write_csv<W: std::io::Write>(reports: &[BoundReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| crate::error::Error::Parse(e.to_string());
    w.write_record(["name", "lhs", "rhs", "slack", "holds", "inputs"])
        .map_err(io)?;
    for r in reports {
        w.write_record([
            r.name.clone(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.slack.to_string(),
            r.holds.to_string(),
            r.inputs.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| crate::error::Error::Parse(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exact_verdict_controls_slack_sign() {
        let r = BoundReport::exact("x", 1.0, 1.0 - 1e-17, true, json!({}));
        assert!(r.holds && r.slack >= 0.0);
        let r = BoundReport::exact("x", 1.0, 1.0, false, json!({}));
        assert!(!r.holds && r.slack < 0.0);
    }

    #[test]
    fn tolerance_and_info() {
        let r = BoundReport::with_tolerance("mc", 1.0, 0.99, 0.02, json!({}));
        assert!(r.holds);
        assert_eq!(r.inputs["tolerance"], json!(0.02));
        let i = BoundReport::info("c", 20.0, 10.0, json!({}));
        assert!(!i.failed());
        assert!(i.slack < 0.0);
    }

    #[test]
    fn json_line_shape() {
        let r = BoundReport::exact("n", 0.0, 1.0, true, json!({"d": 2}));
        let v: Value = serde_json::from_str(&r.to_json_line()).unwrap();
        for k in ["name", "lhs", "rhs", "slack", "holds", "inputs"] {
            assert!(v.get(k).is_some());
        }
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("name,lhs,rhs,slack,holds,inputs"));
    }
}
