use serde_json::{json, Map, Value};

/// A structured error reported on stderr.
#[derive(Debug)]
pub struct Failure {
    pub exit: u8,
    pub code: String,
    pub message: String,
    pub context: Map<String, Value>,
}

impl Failure {
    pub fn invalid(code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            code: code.into(),
            message: message.into(),
            context: Map::new(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::invalid("usage", message)
    }

    pub fn cross_check(message: impl Into<String>) -> Self {
        Failure {
            exit: 3,
            code: "cross_check_failed".into(),
            message: message.into(),
            context: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.context.insert(key.into(), value.into());
        self
    }

    pub fn to_json(&self, command: Option<&str>) -> String {
        let mut context = self.context.clone();
        if let Some(c) = command {
            context.insert("command".into(), c.into());
        }
        json!({"error": self.code, "message": self.message, "context": context}).to_string()
    }
}

impl From<veronese::Error> for Failure {
    fn from(e: veronese::Error) -> Self {
        Failure::invalid(e.code(), e.to_string())
    }
}
