//! Text, JSON and CSV renderings of command results.

use hitprob::quotient::BasisExport;
use serde_json::{json, Value};

use crate::Format;

#[derive(Debug)]
pub enum Rendered {
    Basis(BasisExport),
    Certificates(Value),
    Value(Value),
}

impl Rendered {
    pub fn basis(b: BasisExport) -> Self {
        Rendered::Basis(b)
    }

    pub fn certificates(v: Value) -> Self {
        Rendered::Certificates(v)
    }

    pub fn value(v: Value) -> Self {
        Rendered::Value(v)
    }

    pub fn json(&self) -> Value {
        match self {
            Rendered::Basis(b) => serde_json::to_value(b).expect("basis serializes"),
            Rendered::Certificates(v) | Rendered::Value(v) => v.clone(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json()).expect("json")),
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        match self {
            Rendered::Basis(b) => {
                let mut s = match &b.omega {
                    Some(w) => format!("k = {}, degree = {}, omega = {w}: {} monomials\n", b.k, b.n, b.monomials.len()),
                    None => format!("k = {}, degree = {}: {} monomials\n", b.k, b.n, b.monomials.len()),
                };
                for m in &b.monomials {
                    s.push_str(&format!("{m}\n"));
                }
                s
            }
            Rendered::Certificates(v) => {
                let mut s = format!(
                    "{} of {} verified, {} failed, {} malformed\n",
                    v["passed"], v["total"], v["failed"], v["errors"]
                );
                for e in v["entries"].as_array().into_iter().flatten() {
                    let status = if e["verified"] == json!(true) { "PASS" } else { "FAIL" };
                    s.push_str(&format!("{status} {} (degree {})", plain(&e["name"]), e["degree"]));
                    if let Some(err) = e.get("error") {
                        s.push_str(&format!(": {}", plain(err)));
                    } else if let Some(bad) = e.get("offending") {
                        s.push_str(&format!(": residual terms {}", bad));
                    }
                    s.push('\n');
                }
                for c in v["cross_check"].as_array().into_iter().flatten() {
                    let status = if c["agrees"] == json!(true) { "agrees" } else { "DISAGREES" };
                    s.push_str(&format!("elimination {status} with {}\n", plain(&c["name"])));
                }
                s
            }
            Rendered::Value(v) => match v.as_object() {
                Some(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", plain(v))).collect(),
                None => format!("{}\n", plain(v)),
            },
        }
    }

    fn csv(&self) -> String {
        match self {
            Rendered::Basis(b) => {
                let header: Vec<String> = (1..=b.k).map(|i| format!("x{i}")).collect();
                format!("{}\n{}", header.join(","), b.to_csv())
            }
            Rendered::Certificates(v) => {
                let mut s = String::from("name,locus,kind,k,degree,verified\n");
                for e in v["entries"].as_array().into_iter().flatten() {
                    let row: Vec<String> =
                        ["name", "locus", "kind", "k", "degree", "verified"].iter().map(|f| cell(&e[*f])).collect();
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            Rendered::Value(v) => {
                let mut s = String::from("field,value\n");
                if let Some(map) = v.as_object() {
                    for (k, v) in map {
                        s.push_str(&format!("{k},{}\n", cell(v)));
                    }
                }
                s
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cell(v: &Value) -> String {
    let s = plain(v);
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}
