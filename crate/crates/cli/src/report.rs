use serde_json::{json, Map, Value};

use brauer_derive::Error;

pub const SCHEMA: &str = "brauer-derive/1";

/// Everything a command prints: text, a JSON body, and the error it ended
/// with, if any. Partial results stay in both renderings.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub body: Map<String, Value>,
    pub error: Option<Error>,
}

impl Output {
    pub fn new(command: &str) -> Self {
        let mut body = Map::new();
        body.insert("command".into(), json!(command));
        Output {
            body,
            ..Default::default()
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        if !self.text.ends_with('\n') {
            self.text.push('\n');
        }
    }

    pub fn field(&mut self, key: &str, v: impl serde::Serialize) {
        let v = serde_json::to_value(v).expect("report values serialize");
        self.body.insert(key.into(), v);
    }

    pub fn fail(&mut self, e: Error) {
        self.error = Some(e);
    }

    pub fn render(&self, as_json: bool) -> String {
        if !as_json {
            return self.text.clone();
        }
        let mut body = self.body.clone();
        body.insert("schema".into(), json!(SCHEMA));
        body.insert("ok".into(), json!(self.error.is_none()));
        if let Some(e) = &self.error {
            body.insert("error".into(), error_json(e));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(body)).expect("valid JSON");
        s.push('\n');
        s
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "kind": e.kind(), "message": e.to_string() });
    if let Error::CertificateFailure { step: Some(s), .. } = e {
        v["step"] = json!(s);
    }
    v
}
