use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

/// A named sub-result (collinear part, chain link, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub value: f64,
}

/// One evaluated series. Field order is the JSON output order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub series: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub truncation: String,
    pub method: String,
    pub value: f64,
    pub reference_value: Option<f64>,
    pub abs_error: Option<f64>,
    pub rel_error: Option<f64>,
    pub terms: u64,
    pub elapsed_ms: f64,
    /// Heuristic size of the omitted tail; not a rigorous bound.
    pub tail_hint: Option<f64>,
    pub axis_ray_subtotal: Option<f64>,
    pub components: Vec<Component>,
}

impl Report {
    pub fn new(series: &str, truncation: String, method: &str, value: f64, terms: u64) -> Self {
        Self {
            series: series.to_string(),
            params: BTreeMap::new(),
            truncation,
            method: method.to_string(),
            value,
            reference_value: None,
            abs_error: None,
            rel_error: None,
            terms,
            elapsed_ms: 0.0,
            tail_hint: None,
            axis_ray_subtotal: None,
            components: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn component(mut self, name: &str, value: f64) -> Self {
        self.components.push(Component {
            name: name.to_string(),
            value,
        });
        self
    }

    pub fn reference(mut self, reference: Option<f64>) -> Self {
        self.reference_value = reference;
        self.abs_error = reference.map(|r| (self.value - r).abs());
        self.rel_error = reference
            .filter(|&r| r != 0.0)
            .map(|r| (self.value - r).abs() / r.abs());
        self
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        w.write_record([
            "series",
            "params",
            "truncation",
            "method",
            "value",
            "reference_value",
            "abs_error",
            "rel_error",
            "terms",
            "elapsed_ms",
            "tail_hint",
            "axis_ray_subtotal",
        ])?;
        w.write_record([
            self.series.clone(),
            params.join(";"),
            self.truncation.clone(),
            self.method.clone(),
            self.value.to_string(),
            opt(self.reference_value),
            opt(self.abs_error),
            opt(self.rel_error),
            self.terms.to_string(),
            self.elapsed_ms.to_string(),
            opt(self.tail_hint),
            opt(self.axis_ray_subtotal),
        ])?;
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report::new(
            "theorem1",
            "box:10".into(),
            "boundary",
            3.0683006058457627,
            61,
        )
        .param("box", 10)
        .reference(Some(std::f64::consts::PI))
        .component("quadrant_sum", 0.7670751514614407)
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let text = sample().to_json().unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn arbitrary_floats_round_trip() {
        let mut state = 1u64;
        for _ in 0..2000 {
            state = state
                .wrapping_mul(6_364_136_223_846_793_005)
                .wrapping_add(1_442_695_040_888_963_407);
            let x = f64::from_bits(state);
            if !x.is_finite() {
                continue;
            }
            let r = Report::new("x", "box:1".into(), "direct", x, 1)
                .param("p", x)
                .reference(Some(x / 3.0));
            let text = r.to_json().unwrap();
            let back: Report = serde_json::from_str(&text).unwrap();
            assert_eq!(back.value.to_bits(), x.to_bits());
            assert_eq!(back.to_json().unwrap(), text);
        }
    }

    #[test]
    fn field_order_is_fixed() {
        let text = sample().to_json().unwrap();
        let keys = [
            "\"series\"",
            "\"params\"",
            "\"truncation\"",
            "\"value\"",
            "\"rel_error\"",
            "\"components\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rel_error_needs_nonzero_reference() {
        let r = Report::new("x", "box:1".into(), "direct", 1.0, 1).reference(Some(0.0));
        assert_eq!(r.abs_error, Some(1.0));
        assert_eq!(r.rel_error, None);
    }

    #[test]
    fn csv_has_header_and_row() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("series,params,truncation"));
        assert!(lines[1].starts_with("theorem1,box=10,box:10,boundary,3.0683006058457627"));
    }
}
