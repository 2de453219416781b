//! Text formats for groups: JSON tables and permutation generator files.

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Permutation};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// One group in the table file format:
/// `{ "label": "...", "order": n, "table": [[...], ...] }`, 0-based entries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupRecord {
    pub label: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupRecord {
    pub fn into_group(self, limits: &Limits) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::InvalidTable(format!(
                "declared order {} but table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_table(self.table, Some(self.label), limits)
    }
}

impl FiniteGroup {
    pub fn to_record(&self) -> GroupRecord {
        GroupRecord {
            label: self.label().unwrap_or("G").to_string(),
            order: self.order(),
            table: self.rows(),
        }
    }

    /// Parses a group file: a single record, a JSON array of records, or
    /// whitespace-separated records. Any invalid record rejects the whole
    /// file, reporting the line where that record starts.
    pub fn parse_group_file(text: &str, limits: &Limits) -> Result<Vec<FiniteGroup>> {
        let line_of = |offset: usize| text[..offset.min(text.len())].matches('\n').count() + 1;
        let trimmed = text.trim_start();
        let mut out = Vec::new();
        if trimmed.starts_with('[') {
            let records: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
            // Recover per-record start lines by scanning top-level objects.
            let starts = top_level_object_starts(text);
            for (i, value) in records.into_iter().enumerate() {
                let line = starts.get(i).map(|&o| line_of(o)).unwrap_or(1);
                out.push(record_to_group(value, line, limits)?);
            }
        } else {
            let mut stream = serde_json::Deserializer::from_str(text).into_iter::<serde_json::Value>();
            loop {
                let start = stream.byte_offset();
                match stream.next() {
                    None => break,
                    Some(Err(e)) => {
                        return Err(Error::Parse { line: e.line(), message: e.to_string() });
                    }
                    Some(Ok(value)) => {
                        let skipped = text[start..].len() - text[start..].trim_start().len();
                        out.push(record_to_group(value, line_of(start + skipped), limits)?);
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Parse { line: 1, message: "no group records found".into() });
        }
        Ok(out)
    }
}

fn record_to_group(value: serde_json::Value, line: usize, limits: &Limits) -> Result<FiniteGroup> {
    let record: GroupRecord =
        serde_json::from_value(value).map_err(|e| Error::Parse { line, message: e.to_string() })?;
    let label = record.label.clone();
    record.into_group(limits).map_err(|e| match e {
        Error::InvalidTable(m) => Error::Parse { line, message: format!("group {label:?}: {m}") },
        other => other,
    })
}

fn top_level_object_starts(text: &str) -> Vec<usize> {
    let mut starts = Vec::new();
    let mut depth = 0i32;
    let mut in_string = false;
    let mut escaped = false;
    for (i, c) in text.char_indices() {
        if in_string {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_string = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_string = true,
            '[' | '{' => {
                if c == '{' && depth == 1 {
                    starts.push(i);
                }
                depth += 1;
            }
            ']' | '}' => depth -= 1,
            _ => {}
        }
    }
    starts
}

/// Parses disjoint-cycle notation over 0-based points, e.g. `(0 1 2)(3 4)`.
/// `()` is the identity.
pub fn parse_cycle_notation(s: &str) -> std::result::Result<Vec<Vec<usize>>, String> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| format!("expected '(' at {rest:?}"))?;
        let close = open.find(')').ok_or("unclosed cycle")?;
        let body = &open[..close];
        let cycle = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| format!("bad point {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Reads a permutation generator file: one permutation per line in cycle
/// notation; blank lines and `#` comments are skipped. The degree is one
/// more than the largest point mentioned (at least 1).
pub fn parse_permutation_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut parsed = Vec::new();
    let mut degree = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cycles = parse_cycle_notation(line).map_err(|message| Error::Parse { line: i + 1, message })?;
        for c in &cycles {
            degree = degree.max(c.iter().max().map_or(0, |&m| m + 1));
        }
        parsed.push((i + 1, cycles));
    }
    let mut perms = Vec::new();
    for (line, cycles) in parsed {
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        let p = Permutation::from_cycles(degree, &refs)
            .map_err(|_| Error::Parse { line, message: "cycles are not disjoint".into() })?;
        perms.push(p);
    }
    if perms.is_empty() {
        return Err(Error::Parse { line: 1, message: "no permutations found".into() });
    }
    Ok((degree, perms))
}
