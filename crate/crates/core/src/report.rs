//! Versioned JSON envelope for check reports.

use serde::Serialize;

pub const SCHEMA: &str = "lamina/1";

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: &'static str,
    pub kind: String,
    pub holds: bool,
    pub report: T,
}

pub fn envelope<T: Serialize>(kind: &str, holds: bool, report: T) -> Envelope<T> {
    Envelope {
        schema: SCHEMA,
        kind: kind.to_string(),
        holds,
        report,
    }
}

pub fn to_json<T: Serialize>(kind: &str, holds: bool, report: T) -> String {
    serde_json::to_string_pretty(&envelope(kind, holds, report)).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_field_first() {
        let s = to_json("demo", true, vec![1, 2]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], "lamina/1");
        assert_eq!(v["holds"], true);
        assert!(s.trim_start().starts_with("{\n  \"schema\""));
    }
}
