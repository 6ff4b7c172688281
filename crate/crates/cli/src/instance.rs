//! The instance file: a JSON document
//!
//! ```json
//! {
//!   "elements": ["0", "a", "b", "1"],
//!   "plus": [
//!     ["a", "a", "1"],
//!     ["b", "b", "1"]
//!   ]
//! }
//! ```
//!
//! `elements` lists the labels. The first is the zero and the last the one
//! unless `zero` or `one` name other elements. Each `plus` triple
//! `[x, y, z]` says `x ⊕ y = z`; the table is symmetric and `x ⊕ 0 = x` is
//! implicit, every other pair is undefined. [`write`] emits the canonical
//! form: zero first, each unordered nonzero pair once in index order, `one`
//! only when it is not last.

use std::collections::HashMap;
use std::fmt::Write as _;

use lea_core::{EffectAlgebra, PartialSumTable};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    elements: Vec<String>,
    #[serde(default)]
    zero: Option<String>,
    #[serde(default)]
    one: Option<String>,
    plus: Vec<[String; 3]>,
}

/// A parsed but not yet validated instance, zero at index 0.
#[derive(Debug, Clone)]
pub struct RawInstance {
    pub labels: Vec<String>,
    pub table: PartialSumTable,
    pub one: usize,
}

impl RawInstance {
    pub fn algebra(&self) -> Result<EffectAlgebra, CliError> {
        Ok(EffectAlgebra::new(self.labels.clone(), self.table.clone(), self.one)?)
    }
}

fn bad(msg: String) -> CliError {
    CliError::Input(msg)
}

pub fn parse(src: &str) -> Result<RawInstance, CliError> {
    let doc: Document = serde_json::from_str(src)
        .map_err(|e| bad(format!("instance at line {} column {}: {e}", e.line(), e.column())))?;
    let n = doc.elements.len();
    if n < 2 {
        return Err(bad(format!("elements: need at least 2, got {n}")));
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, l) in doc.elements.iter().enumerate() {
        if l.is_empty() {
            return Err(bad(format!("elements[{i}]: empty label")));
        }
        if index.insert(l, i).is_some() {
            return Err(bad(format!("elements[{i}]: duplicate label {l:?}")));
        }
    }
    let find = |label: &str, at: &str| {
        index.get(label).copied().ok_or_else(|| bad(format!("{at}: unknown element {label:?}")))
    };
    let zero = doc.zero.as_deref().map_or(Ok(0), |z| find(z, "zero"))?;
    let one = doc.one.as_deref().map_or(Ok(n - 1), |o| find(o, "one"))?;
    // move the zero to index 0, keeping the others in file order
    let mut order: Vec<usize> = vec![zero];
    order.extend((0..n).filter(|&i| i != zero));
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let labels: Vec<String> = order.iter().map(|&i| doc.elements[i].clone()).collect();
    let mut table = PartialSumTable::new(n).map_err(|e| bad(e.to_string()))?;
    for x in 0..n {
        table.set(x, 0, Some(x)).map_err(|e| bad(e.to_string()))?;
    }
    let mut seen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (i, [x, y, z]) in doc.plus.iter().enumerate() {
        let at = |k: usize| format!("plus[{i}][{k}]");
        let (x, y, z) = (perm[find(x, &at(0))?], perm[find(y, &at(1))?], perm[find(z, &at(2))?]);
        let key = (x.min(y), x.max(y));
        if x == 0 || y == 0 {
            let other = x.max(y);
            if z != other {
                return Err(bad(format!("plus[{i}]: adding the zero must give {:?}", labels[other])));
            }
            continue;
        }
        match seen.get(&key) {
            Some(&(j, old)) if old != z => {
                return Err(bad(format!("plus[{i}]: contradicts plus[{j}] ({:?} vs {:?})", labels[z], labels[old])))
            }
            Some(_) => {}
            None => {
                seen.insert(key, (i, z));
                table.set(x, y, Some(z)).map_err(|e| bad(e.to_string()))?;
            }
        }
    }
    Ok(RawInstance { labels, table, one: perm[one] })
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// The canonical instance file of `e`.
pub fn write(e: &EffectAlgebra) -> String {
    let labels = e.labels();
    let mut out = String::from("{\n  \"elements\": [");
    out.push_str(&labels.iter().map(|l| quote(l)).collect::<Vec<_>>().join(", "));
    out.push_str("],\n");
    if e.one() != e.len() - 1 {
        let _ = writeln!(out, "  \"one\": {},", quote(&labels[e.one()]));
    }
    let triples: Vec<String> = e
        .table()
        .triples()
        .filter(|&(x, y, _)| x != 0 && y != 0 && x <= y)
        .map(|(x, y, z)| format!("    [{}, {}, {}]", quote(&labels[x]), quote(&labels[y]), quote(&labels[z])))
        .collect();
    if triples.is_empty() {
        out.push_str("  \"plus\": []\n}\n");
    } else {
        out.push_str("  \"plus\": [\n");
        out.push_str(&triples.join(",\n"));
        out.push_str("\n  ]\n}\n");
    }
    out
}
