//! The discrepancy ledger, one entry per line:
//!
//! ```text
//! L-le1 | field=F5 | seed=1 | scope=witness:w3 | group=all l_eq_r1=no l_eq_r2=yes match=R2
//! ```
//!
//! Values may not contain spaces or `|`; keys may contain neither `=` nor spaces.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LedgerEntry {
    pub theorem: String,
    pub field: String,
    pub seed: u64,
    pub scope: String,
    pub fields: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ledger line {line}: {msg}")]
pub struct LedgerError {
    pub line: usize,
    pub msg: String,
}

fn clean(s: &str) -> String {
    s.chars().map(|c| if c.is_whitespace() || c == '|' { '_' } else { c }).collect()
}

impl LedgerEntry {
    pub fn new(theorem: &str, field: &str, seed: u64, scope: &str, fields: Vec<(String, String)>) -> Self {
        LedgerEntry {
            theorem: clean(theorem),
            field: clean(field),
            seed,
            scope: clean(scope),
            fields: fields
                .into_iter()
                .map(|(k, v)| (clean(&k).replace('=', ":"), clean(&v)))
                .collect(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | field={} | seed={} | scope={} |",
            self.theorem, self.field, self.seed, self.scope
        )?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

pub fn parse_line(line: usize, text: &str) -> Result<LedgerEntry, LedgerError> {
    let bad = |msg: &str| LedgerError {
        line,
        msg: msg.to_string(),
    };
    let parts: Vec<&str> = text.split('|').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(bad("expected five `|`-separated columns"));
    }
    let kv = |s: &str, key: &str| -> Result<String, LedgerError> {
        s.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .map(str::to_string)
            .ok_or_else(|| bad(&format!("expected `{key}=`")))
    };
    if parts[0].is_empty() {
        return Err(bad("empty theorem id"));
    }
    let seed = kv(parts[2], "seed")?.parse().map_err(|_| bad("seed is not an integer"))?;
    let mut fields = Vec::new();
    for tok in parts[4].split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| bad(&format!("field `{tok}` lacks `=`")))?;
        fields.push((k.to_string(), v.to_string()));
    }
    Ok(LedgerEntry {
        theorem: parts[0].to_string(),
        field: kv(parts[1], "field")?,
        seed,
        scope: kv(parts[3], "scope")?,
        fields,
    })
}

/// Parse a whole ledger; blank lines and `#` comments are skipped.
pub fn parse_ledger(text: &str) -> Result<Vec<LedgerEntry>, LedgerError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_line(i + 1, l))
        .collect()
}

/// Replace every entry of the runs in `new` (same theorem, field, seed) and
/// emit in a stable order.
pub fn merge(old: Vec<LedgerEntry>, new: Vec<LedgerEntry>) -> String {
    let runs: std::collections::BTreeSet<(String, String, u64)> =
        new.iter().map(|e| (e.theorem.clone(), e.field.clone(), e.seed)).collect();
    let mut by_run: BTreeMap<(String, String, u64), Vec<LedgerEntry>> = BTreeMap::new();
    for e in old.into_iter().filter(|e| !runs.contains(&(e.theorem.clone(), e.field.clone(), e.seed))) {
        by_run.entry((e.theorem.clone(), e.field.clone(), e.seed)).or_default().push(e);
    }
    for e in new {
        by_run.entry((e.theorem.clone(), e.field.clone(), e.seed)).or_default().push(e);
    }
    let mut out = String::new();
    for (_, entries) in by_run {
        for e in entries {
            out.push_str(&e.to_string());
            out.push('\n');
        }
    }
    out
}
