//! Hasse diagrams in DOT. Zero at the bottom, atoms on one rank, sharp
//! elements drawn with a double border. A highlighted witness adds one node
//! group per interval: a cluster when the groups are disjoint, otherwise
//! filled wedges in the group colours.

use std::fmt::Write as _;

use lea_core::structure::{blocks, sharp_elements};
use lea_core::topology::{Interval, Witnesser};
use lea_core::{EffectAlgebra, ElemSet};

use crate::commands::{elem, iv_str};
use crate::CliError;

const COLOURS: [&str; 6] = ["lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon"];

fn parse_pair<'a>(args: &'a str, what: &str) -> Result<(&'a str, &'a str), CliError> {
    args.split_once(',')
        .ok_or_else(|| CliError::Usage(format!("--highlight {what}: expected two comma-separated arguments")))
}

/// Named element groups for a witness description.
fn groups(e: &EffectAlgebra, spec: &str) -> Result<Vec<(String, ElemSet)>, CliError> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--highlight: expected KIND:ARGS, got {spec:?}")))?;
    let l = e.as_lattice()?;
    let named = |name: &str, i: &Interval| (format!("{name} {}", iv_str(e, i)), i.members.clone());
    match kind {
        "separate" => {
            let (x, y) = parse_pair(args, kind)?;
            let w = Witnesser::new(l)?.separate(elem(e, x, "X")?, elem(e, y, "Y")?)?;
            Ok(vec![named("up", &w.up), named("down", &w.down)])
        }
        "cover" => {
            let (x, y) = parse_pair(args, kind)?;
            let w = Witnesser::new(l)?.blockfinite_cover(elem(e, x, "X")?, elem(e, y, "Y")?)?;
            Ok(w.per_block
                .iter()
                .flat_map(|c| [named(&format!("J{}", c.block), &c.j), named(&format!("K{}", c.block), &c.k)])
                .collect())
        }
        "partition" => {
            let (a, lvl) = parse_pair(args, kind)?;
            let lvl: usize =
                lvl.parse().map_err(|_| CliError::Usage(format!("--highlight partition: bad level {lvl:?}")))?;
            let w = Witnesser::new(l)?;
            let p = w.partition(elem(e, a, "ATOM")?, lvl)?;
            let mut out = vec![named("head", &p.head)];
            out.extend(p.tail.iter().enumerate().map(|(i, t)| named(&format!("tail{i}"), t)));
            Ok(out)
        }
        "block" => {
            let i: usize =
                args.parse().map_err(|_| CliError::Usage(format!("--highlight block: bad index {args:?}")))?;
            let d = blocks(l)?;
            let b = d.blocks.get(i).ok_or_else(|| CliError::Usage(format!("block {i} does not exist")))?;
            Ok(vec![(format!("block {i}"), b.clone())])
        }
        other => Err(CliError::Usage(format!("--highlight: unknown witness kind {other:?}"))),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(e: &EffectAlgebra, highlight: Option<&str>) -> Result<String, CliError> {
    let groups = match highlight {
        Some(h) => groups(e, h)?,
        None => Vec::new(),
    };
    let sharp = e.as_lattice().ok().and_then(|l| sharp_elements(l).ok());
    let disjoint = groups.iter().enumerate().all(|(i, (_, a))| groups[..i].iter().all(|(_, b)| a.is_disjoint(b)));
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for x in e.elems() {
        let mut attrs = vec![format!("label={}", quote(e.label(x)))];
        if sharp.as_ref().is_some_and(|s| s.contains(x)) {
            attrs.push("peripheries=2".into());
        }
        let colours: Vec<&str> = groups
            .iter()
            .enumerate()
            .filter(|(_, (_, g))| g.contains(x))
            .map(|(i, _)| COLOURS[i % COLOURS.len()])
            .collect();
        if !colours.is_empty() && !disjoint {
            attrs.push("style=wedged".into());
            attrs.push(format!("fillcolor={}", quote(&colours.join(":"))));
        }
        let _ = writeln!(out, "  n{x} [{}];", attrs.join(", "));
    }
    if !e.atoms().is_empty() {
        let atoms: Vec<String> = e.atoms().iter().map(|a| format!("n{a}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", atoms.join("; "));
    }
    if disjoint {
        for (i, (name, g)) in groups.iter().enumerate() {
            let nodes: Vec<String> = g.iter().map(|x| format!("n{x}")).collect();
            let _ = writeln!(
                out,
                "  subgraph cluster_{i} {{ label={}; style=filled; color={}; {}; }}",
                quote(name),
                COLOURS[i % COLOURS.len()],
                nodes.join("; ")
            );
        }
    } else {
        for (i, (name, _)) in groups.iter().enumerate() {
            let _ = writeln!(out, "  // {} = {name}", COLOURS[i % COLOURS.len()]);
        }
    }
    for (a, b) in e.poset().covers() {
        let _ = writeln!(out, "  n{a} -> n{b} [arrowhead=none];");
    }
    out.push_str("}\n");
    Ok(out)
}
