//! Run reports and their serialisation.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub role: String,
    pub source: String,
    /// SHA-256 of the file contents; absent for built-in fixtures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ tol`.
    pub fn residual(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value: Some(value),
            tol: Some(tol),
            pass: value <= tol,
        }
    }

    /// Passes when `value ≥ −tol`.
    pub fn lower_bound(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value: Some(value),
            tol: Some(tol),
            pass: value >= -tol,
        }
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            value: None,
            tol: None,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Value,
    pub inputs: Vec<Input>,
    pub checks: Vec<Check>,
    pub data: Value,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: Value, inputs: Vec<Input>, checks: Vec<Check>, data: Value) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        Self {
            command,
            inputs,
            checks,
            data,
            passed,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter::default());
        self.serialize(&mut ser).expect("report serialises");
        buf.push(b'\n');
        String::from_utf8(buf).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        flatten(&self.command, "command", &mut out);
        for i in &self.inputs {
            match &i.sha256 {
                Some(h) => out.push_str(&format!("input {}: {} sha256={h}\n", i.role, i.source)),
                None => out.push_str(&format!("input {}: {} (built-in)\n", i.role, i.source)),
            }
        }
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            match (c.value, c.tol) {
                (Some(v), Some(t)) => out.push_str(&format!("{verdict} {} = {} (tol {})\n", c.name, num(v), num(t))),
                _ => out.push_str(&format!("{verdict} {}\n", c.name)),
            }
        }
        flatten(&self.data, "", &mut out);
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed_ms = {ms:.3}\n"));
        }
        out.push_str(if self.passed {
            "result: pass\n"
        } else {
            "result: fail\n"
        });
        out
    }
}

/// Seventeen significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => num(f),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(x, &p, out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::Null => {}
        other => out.push_str(&format!("{prefix} = {}\n", scalar(other))),
    }
}

/// Pretty JSON with every float written as `{:.16e}`.
#[derive(Default)]
pub struct SigFormatter {
    inner: PrettyFormatter<'static>,
}

impl Formatter for SigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(num(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}
