//! Run reports: human-readable lines plus a JSON envelope with input hashes.
//! With identical inputs and seed the `results` payload is byte-identical;
//! only the timing fields vary between runs.

use std::time::Instant;

use serde_json::json;
use sha2::{Digest, Sha256};

pub struct RunReport {
    command: &'static str,
    inputs: Vec<(String, String)>,
    seed: Option<u64>,
    lines: Vec<String>,
    results: serde_json::Value,
}

impl RunReport {
    pub fn new(command: &'static str, inputs: Vec<(String, String)>) -> Self {
        RunReport {
            command,
            inputs,
            seed: None,
            lines: Vec::new(),
            results: serde_json::Value::Null,
        }
    }

    pub fn seed(&mut self, seed: Option<u64>) {
        self.seed = seed;
    }

    pub fn line(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn results(&mut self, results: serde_json::Value) {
        self.results = results;
    }

    pub fn emit(self, json_mode: bool, started: Instant) {
        if !json_mode {
            for line in &self.lines {
                println!("{line}");
            }
            return;
        }
        // files are hashed by content, inline values by their text
        let inputs: Vec<serde_json::Value> = self
            .inputs
            .iter()
            .map(|(name, value)| {
                let mut hasher = Sha256::new();
                let hashed_file = name.ends_with("_file") || name == "file";
                if hashed_file {
                    if let Ok(bytes) = std::fs::read(value) {
                        hasher.update(&bytes);
                    } else {
                        hasher.update(value.as_bytes());
                    }
                } else {
                    hasher.update(value.as_bytes());
                }
                json!({
                    "name": name,
                    "value": value,
                    "sha256": format!("{:x}", hasher.finalize()),
                })
            })
            .collect();
        let envelope = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": self.seed,
            "inputs": inputs,
            "results": self.results,
            "millis": started.elapsed().as_millis() as u64,
        });
        println!("{}", serde_json::to_string_pretty(&envelope).unwrap());
    }
}
