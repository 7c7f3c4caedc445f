use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use majorlab::json::{channel_from_json, prob_vec_from_json};
use majorlab::{Channel, ProbVec};
use serde_json::Value;

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_prob_vec(path: &Path) -> Result<ProbVec> {
    prob_vec_from_json(&read_json(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn read_channel(path: &Path) -> Result<Channel> {
    channel_from_json(&read_json(path)?).with_context(|| format!("in {}", path.display()))
}

/// Writes `text` to `path`, or to standard output for `-`.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        std::io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    write_text(path, &format!("{}\n", serde_json::to_string_pretty(v)?))
}
