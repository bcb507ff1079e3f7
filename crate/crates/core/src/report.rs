//! Machine-readable reports: one `key=value` per line, followed by named
//! text blocks. Reports never contain timings, so equal inputs give equal
//! bytes regardless of the worker count.

use std::fmt::Display;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
    blocks: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    /// A multi-line block, written between `begin <name>` and `end <name>`.
    pub fn block(&mut self, name: impl Into<String>, text: impl Into<String>) -> &mut Self {
        self.blocks.push((name.into(), text.into()));
        self
    }

    /// First value stored under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        for (name, text) in &self.blocks {
            out.push_str(&format!("begin {name}\n{text}"));
            if !text.ends_with('\n') && !text.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("end {name}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_entries_then_blocks() {
        let mut r = Report::new();
        r.set("value", 3).set("flag", true).block("witness", "R1: i1");
        assert_eq!(r.render(), "value=3\nflag=true\nbegin witness\nR1: i1\nend witness\n");
        assert_eq!(r.get("flag"), Some("true"));
    }
}
