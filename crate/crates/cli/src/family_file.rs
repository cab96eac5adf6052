//! Plain-text family files: one subset per line as comma-separated,
//! strictly increasing 1-based elements; blank lines and `#` comments are
//! ignored.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use johnson_iso::{Family, Subset};

/// Subsets in file order, not yet placed in a graph.
pub fn parse(text: &str) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut prev = 0u32;
        let mut elems = Vec::new();
        for tok in line.split(',') {
            let tok = tok.trim();
            let e: u32 = tok
                .parse()
                .with_context(|| format!("line {lineno}: '{tok}' is not a positive integer"))?;
            if e == 0 {
                bail!("line {lineno}: elements are 1-based, found 0");
            }
            if e <= prev {
                bail!("line {lineno}: elements must be strictly increasing");
            }
            prev = e;
            elems.push(e);
        }
        let s = Subset::from_elements(elems).with_context(|| format!("line {lineno}"))?;
        out.push(s);
    }
    Ok(out)
}

/// Reads a family; `n` defaults to the largest element (at least `m + 1`).
pub fn read(path: &Path, n: Option<u32>) -> Result<Family> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let subsets = parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let Some(first) = subsets.first() else {
        bail!("{}: family is empty", path.display())
    };
    let m = first.len();
    if let Some((i, s)) = subsets.iter().enumerate().find(|(_, s)| s.len() != m) {
        bail!(
            "{}: subset {} has {} elements, the first has {m}",
            path.display(),
            i + 1,
            s.len()
        );
    }
    let support = subsets
        .iter()
        .map(|s| s.max_element().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let n = n.unwrap_or_else(|| support.max(m + 1));
    Ok(Family::new(n, m, subsets)?)
}

pub fn render(f: &Family) -> String {
    let mut out = String::new();
    for s in f {
        let elems: Vec<String> = s.elements().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", elems.join(","));
    }
    out
}
