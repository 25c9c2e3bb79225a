//! Flat key-value configuration with one level of section headers.
//!
//! ```text
//! [scenario]
//! kind = evolve
//! seed = 42
//!
//! [system]
//! levels = 0.0, 1.3
//! ```
//!
//! Keys and section names are case-insensitive; `#` or `;` start a comment
//! line. Validation is collect-everything: a bad config reports every
//! missing, ill-typed and unknown key at once, and nothing is computed or
//! written until the config is clean.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig, Vec<String>> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current: Option<String> = None;
        let mut problems = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(stripped) = line.strip_prefix('[') {
                match stripped.strip_suffix(']') {
                    Some(name) if !name.trim().is_empty() => {
                        let name = name.trim().to_ascii_lowercase();
                        if sections.contains_key(&name) {
                            problems.push(format!("line {lineno}: duplicate section [{name}]"));
                        } else {
                            sections.insert(name.clone(), BTreeMap::new());
                        }
                        current = Some(name);
                    }
                    _ => problems.push(format!("line {lineno}: malformed section header")),
                }
                continue;
            }
            match line.split_once('=') {
                Some((key, value)) => {
                    let key = key.trim().to_ascii_lowercase();
                    let value = value.trim().to_string();
                    if key.is_empty() {
                        problems.push(format!("line {lineno}: empty key"));
                        continue;
                    }
                    match &current {
                        None => problems.push(format!(
                            "line {lineno}: key '{key}' appears before any [section]"
                        )),
                        Some(section) => {
                            let entries = sections.get_mut(section).expect("section exists");
                            if let std::collections::btree_map::Entry::Vacant(slot) =
                                entries.entry(key.clone())
                            {
                                slot.insert(value);
                            } else {
                                problems.push(format!(
                                    "line {lineno}: duplicate key '{key}' in [{section}]"
                                ));
                            }
                        }
                    }
                }
                None => problems.push(format!(
                    "line {lineno}: expected 'key = value', got '{line}'"
                )),
            }
        }
        if problems.is_empty() {
            Ok(RawConfig { sections })
        } else {
            Err(problems)
        }
    }

    fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|s| s.as_str())
    }
}

/// Typed accessor that collects every problem instead of stopping at the
/// first. Missing keys return placeholder values; `finish` decides.
pub struct Validator<'a> {
    raw: &'a RawConfig,
    used: BTreeSet<(String, String)>,
    problems: Vec<String>,
}

impl<'a> Validator<'a> {
    pub fn new(raw: &'a RawConfig) -> Self {
        Self {
            raw,
            used: BTreeSet::new(),
            problems: Vec::new(),
        }
    }

    fn lookup(&mut self, section: &str, key: &str) -> Option<&'a str> {
        self.used.insert((section.to_string(), key.to_string()));
        self.raw.get(section, key)
    }

    fn missing(&mut self, section: &str, key: &str, kind: &str) {
        self.problems
            .push(format!("missing {kind} key '{key}' in [{section}]"));
    }

    fn ill_typed(&mut self, section: &str, key: &str, kind: &str, value: &str) {
        self.problems.push(format!(
            "key '{key}' in [{section}] must be {kind}, got '{value}'"
        ));
    }

    pub fn problem(&mut self, message: impl Into<String>) {
        self.problems.push(message.into());
    }

    pub fn f64(&mut self, section: &str, key: &str) -> f64 {
        match self.lookup(section, key) {
            None => {
                self.missing(section, key, "numeric");
                0.0
            }
            Some(v) => v.parse().unwrap_or_else(|_| {
                self.ill_typed(section, key, "a number", v);
                0.0
            }),
        }
    }

    pub fn f64_or(&mut self, section: &str, key: &str, default: f64) -> f64 {
        match self.lookup(section, key) {
            None => default,
            Some(v) => v.parse().unwrap_or_else(|_| {
                self.ill_typed(section, key, "a number", v);
                default
            }),
        }
    }

    pub fn u64(&mut self, section: &str, key: &str) -> u64 {
        match self.lookup(section, key) {
            None => {
                self.missing(section, key, "integer");
                0
            }
            Some(v) => v.parse().unwrap_or_else(|_| {
                self.ill_typed(section, key, "a nonnegative integer", v);
                0
            }),
        }
    }

    pub fn u64_or(&mut self, section: &str, key: &str, default: u64) -> u64 {
        match self.lookup(section, key) {
            None => default,
            Some(v) => v.parse().unwrap_or_else(|_| {
                self.ill_typed(section, key, "a nonnegative integer", v);
                default
            }),
        }
    }

    pub fn usize(&mut self, section: &str, key: &str) -> usize {
        self.u64(section, key) as usize
    }

    pub fn usize_or(&mut self, section: &str, key: &str, default: usize) -> usize {
        self.u64_or(section, key, default as u64) as usize
    }

    pub fn bool_or(&mut self, section: &str, key: &str, default: bool) -> bool {
        match self.lookup(section, key) {
            None => default,
            Some("true") => true,
            Some("false") => false,
            Some(v) => {
                let v = v.to_string();
                self.ill_typed(section, key, "true or false", &v);
                default
            }
        }
    }

    /// A value restricted to a fixed set of lowercase words.
    pub fn choice(&mut self, section: &str, key: &str, choices: &[&str]) -> String {
        match self.lookup(section, key) {
            None => {
                self.problems.push(format!(
                    "missing key '{key}' in [{section}] (one of {choices:?})"
                ));
                choices[0].to_string()
            }
            Some(v) => {
                let lowered = v.to_ascii_lowercase();
                if choices.contains(&lowered.as_str()) {
                    lowered
                } else {
                    let v = v.to_string();
                    self.ill_typed(section, key, &format!("one of {choices:?}"), &v);
                    choices[0].to_string()
                }
            }
        }
    }

    pub fn choice_or(&mut self, section: &str, key: &str, choices: &[&str], default: &str) -> String {
        match self.lookup(section, key) {
            None => default.to_string(),
            Some(v) => {
                let lowered = v.to_ascii_lowercase();
                if choices.contains(&lowered.as_str()) {
                    lowered
                } else {
                    let v = v.to_string();
                    self.ill_typed(section, key, &format!("one of {choices:?}"), &v);
                    default.to_string()
                }
            }
        }
    }

    /// Comma-separated list of numbers.
    pub fn f64_list(&mut self, section: &str, key: &str) -> Vec<f64> {
        match self.lookup(section, key) {
            None => {
                self.missing(section, key, "numeric-list");
                Vec::new()
            }
            Some(v) => {
                let mut out = Vec::new();
                let mut ok = true;
                for part in v.split(',') {
                    match part.trim().parse::<f64>() {
                        Ok(x) => out.push(x),
                        Err(_) => ok = false,
                    }
                }
                if !ok || out.is_empty() {
                    let v = v.to_string();
                    self.ill_typed(section, key, "a comma-separated list of numbers", &v);
                }
                out
            }
        }
    }

    /// Fails on any accumulated problem or any key the scenario never read.
    pub fn finish(mut self) -> Result<(), Vec<String>> {
        for (section, entries) in &self.raw.sections {
            for key in entries.keys() {
                if !self.used.contains(&(section.clone(), key.clone())) {
                    self.problems
                        .push(format!("unknown key '{key}' in [{section}]"));
                }
            }
        }
        if self.problems.is_empty() {
            Ok(())
        } else {
            Err(self.problems)
        }
    }
}
