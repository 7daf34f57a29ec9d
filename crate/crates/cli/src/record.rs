//! The JSON record printed by every solving command.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub instance: String,
    pub command: String,
    pub k: Option<usize>,
    pub verdict: String,
    /// 1-indexed vertices.
    pub witness: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    pub certified: bool,
    pub stats: BTreeMap<String, Value>,
    pub wall_ms: f64,
}

impl ResultRecord {
    pub fn new(instance: String, command: &str, k: Option<usize>, verdict: &str) -> Self {
        ResultRecord {
            instance,
            command: command.to_string(),
            k,
            verdict: verdict.to_string(),
            witness: Vec::new(),
            weight: None,
            certified: true,
            stats: BTreeMap::new(),
            wall_ms: 0.0,
        }
    }

    pub fn stat(&mut self, key: &str, value: Value) {
        self.stats.insert(key.to_string(), value);
    }

    pub fn finish(&mut self, start: Instant) {
        self.wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "instance {}", self.instance).unwrap();
        writeln!(out, "command {}", self.command).unwrap();
        if let Some(k) = self.k {
            writeln!(out, "k {k}").unwrap();
        }
        writeln!(out, "verdict {}", self.verdict).unwrap();
        let w: Vec<String> = self.witness.iter().map(|v| v.to_string()).collect();
        writeln!(out, "witness {}", w.join(" ")).unwrap();
        if let Some(weight) = &self.weight {
            writeln!(out, "weight {weight}").unwrap();
        }
        writeln!(out, "certified {}", self.certified).unwrap();
        for (key, value) in &self.stats {
            writeln!(out, "{key} {value}").unwrap();
        }
        writeln!(out, "wall_ms {:.3}", self.wall_ms).unwrap();
        out
    }
}
