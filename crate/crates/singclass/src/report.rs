//! Reports rendered either as `key: value` text or as JSON.
//!
//! Both renderings come from the same list of entries, so they always carry
//! the same decisions. In JSON, integers are decimal strings and booleans
//! are booleans; in text, booleans read `yes` / `no`.

use std::fmt::Display;

use serde_json::{json, Map, Value as Json};

pub const SCHEMA: &str = "singclass/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Int(String),
    Text(String),
    List(Vec<Value>),
    None,
}

impl Value {
    pub fn int(n: impl Display) -> Value {
        Value::Int(n.to_string())
    }

    pub fn text(s: impl Display) -> Value {
        Value::Text(s.to_string())
    }

    pub fn ints<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
        Value::List(xs.into_iter().map(Value::int).collect())
    }

    pub fn texts<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
        Value::List(xs.into_iter().map(Value::text).collect())
    }

    pub fn opt(v: Option<Value>) -> Value {
        v.unwrap_or(Value::None)
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(s) | Value::Text(s) => Json::String(s.clone()),
            Value::List(xs) => Json::Array(xs.iter().map(Value::to_json).collect()),
            Value::None => Json::Null,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Value::Bool(true) => "yes".into(),
            Value::Bool(false) => "no".into(),
            Value::Int(s) | Value::Text(s) => s.clone(),
            Value::List(xs) => {
                let inner: Vec<String> = xs.iter().map(Value::to_text).collect();
                format!("[{}]", inner.join(", "))
            }
            Value::None => "none".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sep {
    Colon,
    Equals,
}

/// One block of entries, e.g. one identity in `schwartz all`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    entries: Vec<(String, Value, Option<Sep>)>,
}

impl Section {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `key: value`.
    pub fn put(mut self, key: &str, value: Value) -> Self {
        self.entries.push((key.to_string(), value, Some(Sep::Colon)));
        self
    }

    /// Adds `key = value`, for formula-like quantities.
    pub fn eq(mut self, key: &str, value: Value) -> Self {
        self.entries.push((key.to_string(), value, Some(Sep::Equals)));
        self
    }

    /// Multi-line value listed below its key in text mode.
    pub fn block(mut self, key: &str, lines: Vec<String>) -> Self {
        self.entries.push((key.to_string(), Value::texts(lines), None));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|e| e.0 == key).map(|e| &e.1)
    }

    fn to_json(&self) -> Json {
        let mut m = Map::new();
        for (k, v, _) in &self.entries {
            m.insert(k.clone(), v.to_json());
        }
        Json::Object(m)
    }

    fn to_text(&self, out: &mut String) {
        for (k, v, sep) in &self.entries {
            match sep {
                Some(Sep::Colon) => out.push_str(&format!("{k}: {}\n", v.to_text())),
                Some(Sep::Equals) => out.push_str(&format!("{k} = {}\n", v.to_text())),
                None => {
                    out.push_str(&format!("{k}:\n"));
                    if let Value::List(lines) = v {
                        for l in lines {
                            out.push_str(&format!("  {}\n", l.to_text()));
                        }
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn with(mut self, s: Section) -> Self {
        self.sections.push(s);
        self
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "results": self.sections.iter().map(Section::to_json).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            s.to_text(&mut out);
        }
        out
    }
}
