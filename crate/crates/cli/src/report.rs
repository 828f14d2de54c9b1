//! Report records. Field order is the serialization order.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Context {
    pub p: u32,
    pub q: u32,
    pub residue: String,
    pub prec: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_prec: Option<i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NormalForm {
    #[serde(rename = "type")]
    pub kind: String,
    pub a: Option<String>,
    pub b: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Valuation {
    pub d: u64,
    pub e: u64,
    pub e_prime: u64,
    pub f: u64,
    pub n: u64,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Extras {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leading_symbol: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moves: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unram_remainder: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<Valuation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// `([l:k]_s, [l:k]_i)`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue_degrees: Option<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1_sw: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_part: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_symbol: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub context: Context,
    pub input: String,
    pub sw: Option<i64>,
    pub zero_status: Option<String>,
    pub normal_form: Option<NormalForm>,
    pub per: Option<u64>,
    pub ind: Option<u64>,
    pub splitting: Vec<String>,
    pub obstruction: Option<String>,
    pub certificate_status: Option<String>,
    pub assumptions: Vec<String>,
    #[serde(flatten)]
    pub extras: Extras,
}

impl Report {
    pub fn new(command: &str, context: Context, input: String) -> Self {
        Report {
            command: command.to_string(),
            context,
            input,
            sw: None,
            zero_status: None,
            normal_form: None,
            per: None,
            ind: None,
            splitting: vec![],
            obstruction: None,
            certificate_status: None,
            assumptions: vec![],
            extras: Extras::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// `key: value` lines, nulls and empty lists dropped.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        render(&mut out, "", &v);
        out
    }
}

fn render(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Null => {}
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render(out, &key, x);
            }
        }
        Value::Array(xs) if xs.is_empty() => {}
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: {}\n", items.join("; ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                render(out, &format!("{prefix}[{i}]"), x);
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
