//! CSV and JSON emission. Every number leaves through `sig15`/`round15` so
//! reports carry 15 significant digits regardless of how they were computed.

use serde_json::{Map, Value};

/// Decimal text with 15 significant digits; exponent form outside [1e-5, 1e15).
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..15).contains(&e) {
        let decimals = (14 - e).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_zeros(&s)
    } else {
        let s = format!("{x:.14e}");
        match s.split_once('e') {
            Some((m, exp)) => format!("{}e{exp}", trim_zeros(m)),
            None => s,
        }
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn round15(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.14e}").parse().unwrap_or(x)
    } else {
        x
    }
}

/// Rounds every float in a JSON tree to 15 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|f| serde_json::Number::from_f64(round15(f)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => sig15(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(Cell::render).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    /// `key,value` rows from a flattened JSON object.
    pub fn from_json(v: &Value) -> Self {
        let mut t = Table::new(&["key", "value"]);
        let mut flat = Vec::new();
        flatten("", v, &mut flat);
        for (k, v) in flat {
            t.push(vec![Cell::Text(k), v]);
        }
        t
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Cell)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Number(n) => out.push((
            prefix.to_string(),
            n.as_i64().map_or_else(|| Cell::Num(n.as_f64().unwrap_or(f64::NAN)), Cell::Int),
        )),
        Value::Bool(b) => out.push((prefix.to_string(), Cell::Bool(*b))),
        Value::String(s) => out.push((prefix.to_string(), Cell::Text(s.clone()))),
        Value::Null => out.push((prefix.to_string(), Cell::Text("null".into()))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// What a command produced and whether its checks held.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub table: Option<Table>,
    pub json: Value,
    pub pass: bool,
    /// Written beside CSV output, since the table alone drops it.
    pub sidecar: Option<Value>,
}

impl Report {
    pub fn new(json: Value, table: Option<Table>, pass: bool) -> Self {
        Self {
            table,
            json: round_json(json),
            pass,
            sidecar: None,
        }
    }

    pub fn with_sidecar(mut self, v: Value) -> Self {
        self.sidecar = Some(round_json(v));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Format::Csv => match &self.table {
                Some(t) => t.to_csv(),
                None => Table::from_json(&self.json).to_csv(),
            },
        }
    }
}

/// An object from `(key, value)` pairs, keeping their order.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig15(-0.045970522609), "-0.045970522609");
        assert_eq!(sig15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(sig15(1234.5), "1234.5");
        assert_eq!(sig15(2.0f64.powi(60)), "1.15292150460685e18");
        assert_eq!(sig15(1e-9), "1e-9");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(round15(0.1 + 0.2), 0.3);
    }

    #[test]
    fn csv_quotes_text() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["x,y".into(), 1.5.into()]);
        assert_eq!(t.to_csv(), "a,b\n\"x,y\",1.5\n");
    }

    #[test]
    fn flattening() {
        let v = serde_json::json!({"a": {"b": 1, "c": [true, 0.5]}});
        let csv = Table::from_json(&v).to_csv();
        assert_eq!(csv, "key,value\na.b,1\na.c.0,true\na.c.1,0.5\n");
    }
}
