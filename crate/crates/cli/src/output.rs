//! Row and document formats shared by the subcommands.

use std::io::Write;
use std::str::FromStr;

use mpbt::{report, trace_residual, PerformanceReport, ProtocolParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use partitions::YoungDiagram;
use serde::Serialize;
use serde_json::Number;

/// `x` with 12 significant digits in fixed notation.
pub fn significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// An arbitrary-size integer as an exact JSON number.
fn exact(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

#[derive(Debug, Serialize)]
pub struct Fraction {
    pub num: Number,
    pub den: Number,
}

impl From<&BigRational> for Fraction {
    fn from(q: &BigRational) -> Self {
        Self { num: exact(q.numer()), den: exact(q.denom()) }
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsDoc {
    #[serde(rename = "N")]
    pub ports: usize,
    pub k: usize,
    pub d: usize,
}

impl From<&ProtocolParams> for ParamsDoc {
    fn from(p: &ProtocolParams) -> Self {
        Self { ports: p.ports(), k: p.teleported(), d: p.dim() }
    }
}

#[derive(Debug, Serialize)]
pub struct SpectrumDoc {
    pub alpha: Vec<usize>,
    pub mu: Vec<usize>,
    pub lambda: Fraction,
    pub mult: Number,
}

/// One instance in the JSON schema `{params, fidelity, probability, spectrum}`.
#[derive(Debug, Serialize)]
pub struct InstanceDoc {
    pub params: ParamsDoc,
    pub fidelity: f64,
    pub probability: Fraction,
    pub spectrum: Vec<SpectrumDoc>,
}

fn rows(d: &YoungDiagram) -> Vec<usize> {
    d.rows().to_vec()
}

impl From<&PerformanceReport> for InstanceDoc {
    fn from(r: &PerformanceReport) -> Self {
        Self {
            params: ParamsDoc::from(&r.params),
            fidelity: r.fidelity,
            probability: Fraction::from(&r.probability.value),
            spectrum: r
                .spectrum
                .iter()
                .map(|e| SpectrumDoc {
                    alpha: rows(&e.alpha),
                    mu: rows(&e.mu),
                    lambda: Fraction::from(&e.eigenvalue),
                    mult: exact(&BigInt::from(e.multiplicity.clone())),
                })
                .collect(),
        }
    }
}

pub const CSV_HEADER: [&str; 8] = ["N", "k", "d", "F", "p_num", "p_den", "num_eigs", "trace_residual"];

/// One sweep row: the instance, its fidelity, the exact probability, the
/// number of `(alpha, mu)` eigenspaces and the exact trace-identity residual.
pub fn csv_record(r: &PerformanceReport) -> [String; 8] {
    let p = &r.params;
    let q = &r.probability.value;
    [
        p.ports().to_string(),
        p.teleported().to_string(),
        p.dim().to_string(),
        significant(r.fidelity),
        q.numer().to_string(),
        q.denom().to_string(),
        r.spectrum.len().to_string(),
        trace_residual(p, &r.spectrum).to_string(),
    ]
}

pub fn write_csv<W: Write>(out: W, params: &[ProtocolParams]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in params {
        w.write_record(csv_record(&report(p)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, params: &[ProtocolParams]) -> std::io::Result<()> {
    let docs: Vec<InstanceDoc> = params.iter().map(|p| InstanceDoc::from(&report(p))).collect();
    serde_json::to_writer_pretty(&mut out, &docs)?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(significant(0.4665063509461097), "0.466506350946");
        assert_eq!(significant(1.0), "1.00000000000");
        assert_eq!(significant(0.001234567890123456), "0.00123456789012");
        assert_eq!(significant(0.0), "0");
    }

    #[test]
    fn smallest_instance_row() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        let row = csv_record(&report(&p));
        assert_eq!(row, ["2", "1", "2", "0.466506350946", "1", "3", "2", "0"].map(String::from));
    }

    #[test]
    fn json_keeps_rationals_exact() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        let doc = serde_json::to_value(InstanceDoc::from(&report(&p))).unwrap();
        assert_eq!(doc["params"]["N"], 2);
        assert_eq!(doc["probability"]["num"], 1);
        assert_eq!(doc["probability"]["den"], 3);
        assert_eq!(doc["spectrum"][0]["alpha"], serde_json::json!([1]));
        assert_eq!(doc["spectrum"][0]["lambda"]["num"], 3);
        assert_eq!(doc["spectrum"][0]["mult"], 2);
    }
}
