//! Text and pattern file formats.
//!
//! Text: decimal non-negative integers separated by any whitespace.
//!
//! Pattern: one position per line, comma-separated class members with an
//! optional `@<bound>` suffix for the private local bound, e.g. `3,5,7@2`.
//! Blank lines and lines starting with `#` are ignored.

use modsearch::{CharacterClass, Error, PatternPosition, Result};

pub fn parse_text(src: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (idx, line) in src.lines().enumerate() {
        for token in line.split_whitespace() {
            let c = token.parse::<u32>().map_err(|_| Error::InputFormat {
                line: idx + 1,
                message: format!("invalid text symbol `{token}`"),
            })?;
            out.push(c);
        }
    }
    Ok(out)
}

pub fn write_text(text: &[u32]) -> String {
    let mut out = String::with_capacity(text.len() * 3);
    for (i, c) in text.iter().enumerate() {
        out.push_str(&c.to_string());
        out.push(if (i + 1) % 32 == 0 { '\n' } else { ' ' });
    }
    if !out.is_empty() && !out.ends_with('\n') {
        out.pop();
        out.push('\n');
    }
    out
}

pub fn parse_pattern(src: &str) -> Result<Vec<PatternPosition>> {
    let mut positions = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::InputFormat { line, message };
        let (members, bound) = match body.split_once('@') {
            Some((members, bound)) => {
                let bound = bound
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| bad(format!("invalid local bound `{}`", bound.trim())))?;
                (members, Some(bound))
            }
            None => (body, None),
        };
        let members = members
            .split(',')
            .map(|t| {
                let t = t.trim();
                if t.is_empty() {
                    return Err(bad(format!("empty class member in `{body}`")));
                }
                t.parse::<u32>()
                    .map_err(|_| bad(format!("invalid class member `{t}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        let class = CharacterClass::new(members).map_err(|e| bad(e.to_string()))?;
        positions.push(PatternPosition::new(class, bound));
    }
    if positions.is_empty() {
        return Err(Error::InputFormat {
            line: src.lines().count().max(1),
            message: "pattern has no positions".into(),
        });
    }
    Ok(positions)
}

pub fn write_pattern(positions: &[PatternPosition]) -> String {
    let mut out = String::new();
    for p in positions {
        let members: Vec<String> = p.class.members().iter().map(u32::to_string).collect();
        out.push_str(&members.join(","));
        if let Some(b) = p.local_bound {
            out.push_str(&format!("@{b}"));
        }
        out.push('\n');
    }
    out
}
