use std::fs;

use serde_json::Value;

use crate::CliError;

/// Routes human-readable text and the JSON document to their destinations.
pub struct Sink {
    json: Option<String>,
    quiet: bool,
}

impl Sink {
    pub fn new(json: Option<String>, quiet: bool) -> Self {
        Sink { json, quiet }
    }

    fn json_on_stdout(&self) -> bool {
        self.json.as_deref() == Some("-")
    }

    /// Text goes to stdout unless silenced or stdout carries JSON.
    pub fn line(&self, text: impl AsRef<str>) {
        if !self.quiet && !self.json_on_stdout() {
            println!("{}", text.as_ref());
        }
    }

    /// Raw rows (CSV) are printed even in quiet mode: they are the requested output.
    pub fn raw(&self, text: impl AsRef<str>) {
        print!("{}", text.as_ref());
    }

    pub fn document(&self, value: &Value) -> Result<(), CliError> {
        let Some(dest) = &self.json else { return Ok(()) };
        let mut body = serde_json::to_string_pretty(value).expect("JSON values always serialize");
        body.push('\n');
        if dest == "-" {
            print!("{body}");
            Ok(())
        } else {
            fs::write(dest, body).map_err(|source| CliError::Io { path: dest.clone(), source })
        }
    }
}
