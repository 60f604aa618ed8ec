//! Classical Gauss codes: parsing, validation, label normalization and the
//! whitespace-separated signed-integer text format.
//!
//! A code lists the crossings met while running once along the knot, each
//! tagged with whether the strand passes over (`+`) or under (`-`). Labels are
//! renumbered `1..=n` in order of first occurrence on construction, so two
//! codes compare equal exactly when they describe the same labelled
//! traversal.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Which way the strand passes a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pass {
    Over,
    Under,
}

impl Pass {
    pub fn flipped(self) -> Pass {
        match self {
            Pass::Over => Pass::Under,
            Pass::Under => Pass::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussEntry {
    pub label: u32,
    pub pass: Pass,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("label {label} occurs {count} time(s); every label must occur exactly twice")]
    LabelCount { label: String, count: usize },
    #[error("label {label} passes {pass:?} at both occurrences")]
    PassMismatch { label: String, pass: Pass },
    #[error("label 0 is not allowed")]
    ZeroLabel,
    #[error("syntax error: {0}")]
    Syntax(String),
}

/// A validated Gauss code with labels normalized to `1..=n` by first
/// occurrence. The empty code is the trivial diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussCode {
    entries: Vec<GaussEntry>,
}

impl GaussCode {
    /// The zero-crossing code.
    pub fn empty() -> Self {
        GaussCode {
            entries: Vec::new(),
        }
    }

    /// Validates raw `(label, pass)` pairs and normalizes the labels.
    /// Labels may be arbitrary positive integers.
    pub fn from_entries<I>(raw: I) -> Result<Self, GaussError>
    where
        I: IntoIterator<Item = (u64, Pass)>,
    {
        let raw: Vec<(u64, Pass)> = raw.into_iter().collect();
        if raw.iter().any(|&(l, _)| l == 0) {
            return Err(GaussError::ZeroLabel);
        }
        validate(raw.iter().map(|&(l, p)| (l, p)), |l| l.to_string())?;
        Ok(GaussCode {
            entries: normalize(raw.iter().map(|&(l, p)| (l, p))),
        })
    }

    pub fn entries(&self) -> &[GaussEntry] {
        &self.entries
    }

    /// Number of crossings, `crs`.
    pub fn crossing_count(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Moves the basepoint forward by `k` entries (taken modulo `2n`) and
    /// renormalizes labels. The diagram described is unchanged.
    pub fn rotate_basepoint(&self, k: usize) -> GaussCode {
        if self.entries.is_empty() {
            return self.clone();
        }
        let len = self.entries.len();
        let k = k % len;
        let rotated = self.entries[k..]
            .iter()
            .chain(self.entries[..k].iter())
            .map(|e| (e.label as u64, e.pass));
        GaussCode {
            entries: normalize(rotated),
        }
    }

    /// The same traversal read backwards from the basepoint.
    pub fn reversed(&self) -> GaussCode {
        let rev = self.entries.iter().rev().map(|e| (e.label as u64, e.pass));
        GaussCode {
            entries: normalize(rev),
        }
    }

    /// Classical necessary condition for planarity: between the two
    /// occurrences of every label lies an even number of entries.
    pub fn parity_check(&self) -> bool {
        let mut first: Vec<Option<usize>> = vec![None; self.crossing_count() + 1];
        for (i, e) in self.entries.iter().enumerate() {
            let slot = &mut first[e.label as usize];
            match *slot {
                None => *slot = Some(i),
                Some(j) => {
                    if (i - j - 1) % 2 != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Positions of the two occurrences of each label, indexed by `label - 1`.
    pub(crate) fn occurrences(&self) -> Vec<(usize, usize)> {
        let n = self.crossing_count();
        let mut occ = vec![(usize::MAX, usize::MAX); n];
        for (i, e) in self.entries.iter().enumerate() {
            let o = &mut occ[e.label as usize - 1];
            if o.0 == usize::MAX {
                o.0 = i;
            } else {
                o.1 = i;
            }
        }
        occ
    }
}

fn validate<L, F>(raw: impl Iterator<Item = (L, Pass)>, show: F) -> Result<(), GaussError>
where
    L: std::hash::Hash + Eq + Clone,
    F: Fn(&L) -> String,
{
    let mut seen: HashMap<L, (usize, Pass, bool)> = HashMap::new();
    let mut order: Vec<L> = Vec::new();
    for (label, pass) in raw {
        match seen.get_mut(&label) {
            None => {
                seen.insert(label.clone(), (1, pass, false));
                order.push(label);
            }
            Some(slot) => {
                slot.0 += 1;
                if slot.1 == pass {
                    slot.2 = true;
                }
            }
        }
    }
    for label in &order {
        let count = seen[label].0;
        if count != 2 {
            return Err(GaussError::LabelCount {
                label: show(label),
                count,
            });
        }
    }
    for label in &order {
        let (_, pass, clash) = seen[label];
        if clash {
            return Err(GaussError::PassMismatch {
                label: show(label),
                pass,
            });
        }
    }
    Ok(())
}

fn normalize(raw: impl Iterator<Item = (u64, Pass)>) -> Vec<GaussEntry> {
    let mut relabel: HashMap<u64, u32> = HashMap::new();
    raw.map(|(label, pass)| {
        let next = relabel.len() as u32 + 1;
        let label = *relabel.entry(label).or_insert(next);
        GaussEntry { label, pass }
    })
    .collect()
}

/// Parses either whitespace-separated nonzero integers (negative = under) or
/// the parenthesized letter form `(-A)(+B)...`.
pub fn parse_gauss(text: &str) -> Result<GaussCode, GaussError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(GaussCode::empty());
    }
    if trimmed.contains('(') {
        return parse_letter_form(trimmed);
    }
    let mut raw = Vec::new();
    for tok in trimmed.split_whitespace() {
        let value: i64 = tok
            .parse()
            .map_err(|_| GaussError::Syntax(format!("`{tok}` is not an integer")))?;
        if value == 0 {
            return Err(GaussError::ZeroLabel);
        }
        let pass = if value < 0 { Pass::Under } else { Pass::Over };
        raw.push((value.unsigned_abs(), pass));
    }
    GaussCode::from_entries(raw)
}

fn parse_letter_form(text: &str) -> Result<GaussCode, GaussError> {
    let mut raw: Vec<(String, Pass)> = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let Some(body) = rest.strip_prefix('(') else {
            return Err(GaussError::Syntax(format!("expected `(` at `{rest}`")));
        };
        let Some(close) = body.find(')') else {
            return Err(GaussError::Syntax("unclosed `(`".into()));
        };
        let inner = body[..close].trim();
        rest = &body[close + 1..];
        let (pass, name) = match inner.chars().next() {
            Some('+') => (Pass::Over, inner[1..].trim()),
            Some('-') | Some('−') => {
                let skip = inner.chars().next().unwrap().len_utf8();
                (Pass::Under, inner[skip..].trim())
            }
            _ => (Pass::Over, inner),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(GaussError::Syntax(format!("bad crossing name `{inner}`")));
        }
        raw.push((name.to_string(), pass));
    }
    validate(raw.iter().map(|(l, p)| (l.clone(), *p)), |l| l.clone())?;
    let mut ids: HashMap<&str, u64> = HashMap::new();
    let numeric: Vec<(u64, Pass)> = raw
        .iter()
        .map(|(name, pass)| {
            let next = ids.len() as u64 + 1;
            (*ids.entry(name.as_str()).or_insert(next), *pass)
        })
        .collect();
    GaussCode::from_entries(numeric)
}

/// Whitespace-separated signed integers; the empty code serializes to `""`.
pub fn serialize_gauss(code: &GaussCode) -> String {
    code.to_string()
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match e.pass {
                Pass::Over => write!(f, "{}", e.label)?,
                Pass::Under => write!(f, "-{}", e.label)?,
            }
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}

/// Rotates the basepoint; see [`GaussCode::rotate_basepoint`].
pub fn rotate_basepoint(code: &GaussCode, k: usize) -> GaussCode {
    code.rotate_basepoint(k)
}

/// See [`GaussCode::parity_check`].
pub fn parity_check(code: &GaussCode) -> bool {
    code.parity_check()
}
