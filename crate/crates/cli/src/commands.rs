//! Argument parsing and the commands.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use lea_core::completion::{closedness, default_targets, dm_complete, mc_check};
use lea_core::generators::enumerate;
use lea_core::generators::family::{analyze_spec, parse_spec, Property};
use lea_core::states::{e1_subalgebra, extend_state, extreme_states, extreme_states_on, find_state, Rational};
use lea_core::structure::{almost_orthogonality, blocks, decompose, sharp_elements, Multiplicity};
use lea_core::suites::{check_all, Outcome};
use lea_core::topology::{phi_eval, topologies_agree, CoverCase, Interval, Witnesser};
use lea_core::{validate, Caps, EffectAlgebra, Elem, ElemSet, Error, LatticeEa};
use serde_json::json;

use crate::report::{Report, Section, Status};
use crate::{instance, parse_caps, CliError};

#[derive(Debug, Parser)]
#[command(name = "lea", version, about = "Finite lattice effect algebras and their interval topology")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the effect-algebra axioms.
    Verify { file: String },
    /// Full report on one instance.
    Analyze { file: String },
    /// Blocks and the sets S(E), B(E), C(E).
    Blocks { file: String },
    /// Decompose an element into atom multiples.
    Decompose { file: String, elem: String },
    /// Disjoint clopen intervals around two elements.
    Separate { file: String, x: String, y: String },
    /// Block-wise interval cover keeping two elements apart.
    Cover { file: String, x: String, y: String },
    /// The clopen partition at an atom and level.
    Partition { file: String, atom: String, level: usize },
    /// States: a lexicographically least one, the extreme ones, or extensions.
    States {
        file: String,
        #[arg(long)]
        extreme: bool,
        /// sharp, e1 or block:I
        #[arg(long)]
        extend_from: Option<String>,
    },
    /// Dedekind–MacNeille completion and closedness flags.
    Complete { file: String },
    /// Instance file of a finite family spec.
    Gen { spec: String },
    /// All effect algebras up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_size: usize,
    },
    /// Symbolic verdicts for a family spec.
    Family { spec: String },
    /// Run every check suite.
    CheckAll { file: String },
    /// Hasse diagram in DOT.
    Dot {
        file: String,
        /// separate:X,Y | cover:X,Y | partition:ATOM,L | block:I
        #[arg(long)]
        highlight: Option<String>,
    },
}

fn read_source(file: &str) -> Result<String, CliError> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| CliError::Input(format!("{file}: {e}")))
    }
}

pub fn load(file: &str) -> Result<EffectAlgebra, CliError> {
    instance::parse(&read_source(file)?)?.algebra()
}

pub fn elem(e: &EffectAlgebra, label: &str, what: &str) -> Result<Elem, CliError> {
    e.find(label).ok_or_else(|| CliError::Input(format!("{what}: unknown element {label:?}")))
}

fn lattice(e: &EffectAlgebra) -> Result<LatticeEa<'_>, CliError> {
    Ok(e.as_lattice()?)
}

pub fn set_str(e: &EffectAlgebra, s: &ElemSet) -> String {
    let labels: Vec<&str> = s.iter().map(|x| e.label(x)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn set_json(e: &EffectAlgebra, s: &ElemSet) -> serde_json::Value {
    json!(s.iter().map(|x| e.label(x)).collect::<Vec<_>>())
}

pub fn iv_str(e: &EffectAlgebra, i: &Interval) -> String {
    format!("[{},{}]", e.label(i.lo), e.label(i.hi))
}

fn iv_json(e: &EffectAlgebra, i: &Interval) -> serde_json::Value {
    json!([e.label(i.lo), e.label(i.hi)])
}

fn mult_str(e: &EffectAlgebra, a: Elem, k: usize) -> String {
    if k == 1 {
        e.label(a).to_string()
    } else {
        format!("{k}{}", e.label(a))
    }
}

fn ord_str(m: Multiplicity) -> String {
    match m {
        Multiplicity::Finite(k) => k.to_string(),
        Multiplicity::Infinite => "inf".into(),
    }
}

fn count(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn values_line(e: &EffectAlgebra, values: &[(Elem, Rational)]) -> String {
    values.iter().map(|(x, v)| format!("{}={v}", e.label(*x))).collect::<Vec<_>>().join(" ")
}

fn values_json(e: &EffectAlgebra, values: &[(Elem, Rational)]) -> serde_json::Value {
    values.iter().map(|(x, v)| (e.label(*x).to_string(), json!(v.to_string()))).collect()
}

/// Runs a command; returns the output and the exit code.
pub fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    let caps = match std::env::var("EA_CAPS") {
        Ok(s) => parse_caps(&s)?,
        Err(_) => Caps::default(),
    };
    let report = match &cli.command {
        Command::Gen { spec } => {
            let e = parse_spec(spec).map_err(|e| CliError::Input(format!("spec {e}")))?.build(&caps)?;
            return Ok((instance::write(&e), 0));
        }
        Command::Dot { file, highlight } => {
            let e = load(file)?;
            return Ok((crate::dot::render(&e, highlight.as_deref())?, 0));
        }
        Command::Verify { file } => verify(file)?,
        Command::Analyze { file } => analyze(&load(file)?, &caps)?,
        Command::Blocks { file } => blocks_cmd(&load(file)?)?,
        Command::Decompose { file, elem: x } => {
            let e = load(file)?;
            let x = elem(&e, x, "ELEM")?;
            decompose_cmd(&e, x)?
        }
        Command::Separate { file, x, y } => {
            let e = load(file)?;
            let (x, y) = (elem(&e, x, "X")?, elem(&e, y, "Y")?);
            separate_cmd(&e, x, y)?
        }
        Command::Cover { file, x, y } => {
            let e = load(file)?;
            let (x, y) = (elem(&e, x, "X")?, elem(&e, y, "Y")?);
            cover_cmd(&e, x, y)?
        }
        Command::Partition { file, atom, level } => {
            let e = load(file)?;
            let a = elem(&e, atom, "ATOM")?;
            partition_cmd(&e, a, *level)?
        }
        Command::States { file, extreme, extend_from } => {
            states_cmd(&load(file)?, *extreme, extend_from.as_deref(), &caps)?
        }
        Command::Complete { file } => complete_cmd(&load(file)?)?,
        Command::Enumerate { max_size } => enumerate_cmd(*max_size, &caps)?,
        Command::Family { spec } => family_cmd(spec)?,
        Command::CheckAll { file } => check_all_cmd(&load(file)?, &caps),
    };
    let code = if report.has(Status::Fail) { 2 } else { 0 };
    let text = match cli.format {
        Format::Human => report.human(),
        Format::Machine => report.machine(),
    };
    Ok((text, code))
}

fn verify(file: &str) -> Result<Report, CliError> {
    let raw = instance::parse(&read_source(file)?)?;
    let v = validate(&raw.table, 0, raw.one)?;
    let label = |x: Elem| raw.labels[x].as_str();
    let mut r = Report { command: "verify".into(), instance: None, sections: Vec::new() };
    let mut s = Section::new("axioms", if v.ok() { Status::Pass } else { Status::Fail });
    if v.ok() {
        let e = raw.algebra()?;
        r.instance = Some(crate::report::InstanceInfo::of(&e));
        s.push(format!("{} elements, one = {}", e.len(), e.label(e.one())));
        s.push(format!("lattice: {}", if e.is_lattice() { "yes" } else { "no" }));
    } else {
        s.push(count(v.violations.len(), "violation"));
        for x in v.violations.iter().take(20) {
            let w: Vec<&str> = x.witness.iter().map(|&i| label(i)).collect();
            s.push(format!("{}: [{}]", x.axiom.tag(), w.join(", ")));
        }
        let data: Vec<_> = v
            .violations
            .iter()
            .map(
                |x| json!({"axiom": x.axiom.tag(), "witness": x.witness.iter().map(|&i| label(i)).collect::<Vec<_>>()}),
            )
            .collect();
        s.data = json!(data);
    }
    r.add(s);
    Ok(r)
}

fn analyze(e: &EffectAlgebra, caps: &Caps) -> Result<Report, CliError> {
    let mut r = Report::new("analyze", Some(e));
    let defined = e.table().triples().count();
    r.add(Section::new("validation", Status::Pass).line(format!("{} elements, {defined} defined sums", e.len())));
    let mut order =
        Section::info("order").line(format!("lattice: {}", if e.is_lattice() { "yes" } else { "no" })).line(format!(
            "atoms: {}",
            e.atoms()
                .iter()
                .map(|&a| format!("{} (ord {})", e.label(a), ord_str(e.ord(a))))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    let Ok(l) = e.as_lattice() else {
        r.add(order);
        r.add(Section::new("structure", Status::NotApplicable).line("the order is not a lattice"));
        r.add(states_section(e, caps)?);
        return Ok(r);
    };
    order.push(format!("sharp: {}", set_str(e, &sharp_elements(l)?)));
    r.add(order);
    r.add(blocks_section(e, l)?);

    let ao = almost_orthogonality(l)?;
    let mut s = Section::new("almost orthogonality", Status::Pass);
    for (a, set) in &ao.per_atom {
        let names: Vec<&str> = set.iter().map(|&b| e.label(b)).collect();
        s.push(format!("A_{} = {{{}}}", e.label(*a), names.join(", ")));
    }
    for w in &ao.witnesses {
        let list: Vec<String> = w.witnesses.iter().map(|&(c, j)| mult_str(e, c, j)).collect();
        s.push(format!("({}, {}): {}", e.label(w.atom), w.level, list.join(", ")));
    }
    r.add(s);

    r.add(match topologies_agree(l, caps) {
        Ok(t) => Section::new("topologies", if t.agree { Status::Pass } else { Status::Fail })
            .line(format!("interval {}, order {}, phi {} closed sets", t.interval, t.order, t.phi)),
        Err(err) if err.is_cap() => {
            let phi = phi_eval(l)?;
            Section::new("topologies", Status::Skipped)
                .line(err.to_string())
                .line(format!("phi separates all points with |U| = {}", phi.u_set.len()))
        }
        Err(err) => return Err(err.into()),
    });
    r.add(
        Section::new("completion", if mc_check(e) { Status::Pass } else { Status::Fail })
            .line(format!("{} cuts, atoms preserved", dm_complete(e.poset()).len())),
    );
    r.add(states_section(e, caps)?);
    Ok(r)
}

fn states_section(e: &EffectAlgebra, caps: &Caps) -> Result<Section, CliError> {
    Ok(match extreme_states(e, caps) {
        Ok(v) => Section::info("states").line(count(v.len(), "extreme state")),
        Err(err) if err.is_cap() => Section::new("states", Status::Skipped).line(err.to_string()),
        Err(err) => return Err(err.into()),
    })
}

fn blocks_section(e: &EffectAlgebra, l: LatticeEa<'_>) -> Result<Section, CliError> {
    let d = blocks(l)?;
    let mut s = Section::info("blocks").line(format!(
        "{}, mv: {}, block-finite: {}",
        count(d.blocks.len(), "block"),
        if d.is_mv { "yes" } else { "no" },
        if d.is_block_finite { "yes" } else { "no" }
    ));
    for (i, b) in d.blocks.iter().enumerate() {
        s.push(format!("block {i}: {}", set_str(e, b)));
    }
    let sharp = sharp_elements(l)?;
    s.push(format!("S(E) = {}", set_str(e, &sharp)));
    s.push(format!("B(E) = {}", set_str(e, &d.b_e)));
    s.push(format!("C(E) = {}", set_str(e, &d.c_e)));
    s.data = json!({
        "blocks": d.blocks.iter().map(|b| set_json(e, b)).collect::<Vec<_>>(),
        "sharp": set_json(e, &sharp),
        "b_e": set_json(e, &d.b_e),
        "c_e": set_json(e, &d.c_e),
    });
    Ok(s)
}

fn blocks_cmd(e: &EffectAlgebra) -> Result<Report, CliError> {
    let mut r = Report::new("blocks", Some(e));
    r.add(blocks_section(e, lattice(e)?)?);
    Ok(r)
}

fn decompose_cmd(e: &EffectAlgebra, x: Elem) -> Result<Report, CliError> {
    let l = lattice(e)?;
    let d = decompose(l, x)?;
    let terms: Vec<String> = d.terms.iter().map(|&(a, k)| mult_str(e, a, k)).collect();
    let rhs = if terms.is_empty() { "0 (empty sum)".to_string() } else { terms.join(" + ") };
    let mut r = Report::new("decompose", Some(e));
    r.add(
        Section::new("decomposition", Status::Pass)
            .line(format!("{} = {rhs}", e.label(x)))
            .line("reconstructed by sum and by join")
            .line(format!("sharp: {}", if d.all_full(l) { "yes" } else { "no" }))
            .data(json!(d.terms.iter().map(|&(a, k)| json!([e.label(a), k])).collect::<Vec<_>>())),
    );
    Ok(r)
}

fn separate_cmd(e: &EffectAlgebra, x: Elem, y: Elem) -> Result<Report, CliError> {
    let w = Witnesser::new(lattice(e)?)?.separate(x, y)?;
    let mut r = Report::new("separate", Some(e));
    let mut s = Section::new("separation", Status::Pass)
        .line(format!("up={}, down={}", iv_str(e, &w.up), iv_str(e, &w.down)))
        .line(format!("up holds {}, down holds {}", e.label(w.x), e.label(w.y)))
        .line(format!("from {} and {}", mult_str(e, w.atom_b, w.k), mult_str(e, w.atom_a, w.l)));
    if w.swapped {
        s.push(format!("{} <= {}, so the pair was swapped", e.label(x), e.label(y)));
    }
    s.data = json!({"up": iv_json(e, &w.up), "down": iv_json(e, &w.down), "swapped": w.swapped});
    r.add(s);
    Ok(r)
}

fn cover_cmd(e: &EffectAlgebra, x: Elem, y: Elem) -> Result<Report, CliError> {
    let w = Witnesser::new(lattice(e)?)?.blockfinite_cover(x, y)?;
    let mut r = Report::new("cover", Some(e));
    let mut s = Section::new("cover", Status::Pass);
    for c in &w.per_block {
        let case = match c.case {
            CoverCase::Inside { atom, level } => format!("inside, {}", mult_str(e, atom, level)),
            CoverCase::XOutside { atom } => format!("x outside, {}", e.label(atom)),
            CoverCase::YOutside { atom } => format!("y outside, {}", e.label(atom)),
        };
        s.push(format!("block {}: J={} K={} ({case})", c.block, iv_str(e, &c.j), iv_str(e, &c.k)));
    }
    s.data = json!(w
        .per_block
        .iter()
        .map(|c| json!({"block": c.block, "j": iv_json(e, &c.j), "k": iv_json(e, &c.k)}))
        .collect::<Vec<_>>());
    r.add(s);
    Ok(r)
}

fn partition_cmd(e: &EffectAlgebra, a: Elem, level: usize) -> Result<Report, CliError> {
    let w = Witnesser::new(lattice(e)?)?;
    let p = w.partition(a, level)?;
    let mut r = Report::new("partition", Some(e));
    let tails: Vec<String> = p.tail.iter().map(|t| iv_str(e, t)).collect();
    r.add(
        Section::new("partition", Status::Pass)
            .line(format!("head={} {}", iv_str(e, &p.head), set_str(e, &p.head.members)))
            .line(format!("tail={}", tails.join(" ")))
            .data(
                json!({"head": iv_json(e, &p.head), "tail": p.tail.iter().map(|t| iv_json(e, t)).collect::<Vec<_>>()}),
            ),
    );
    Ok(r)
}

fn states_cmd(e: &EffectAlgebra, extreme: bool, extend_from: Option<&str>, caps: &Caps) -> Result<Report, CliError> {
    let mut r = Report::new("states", Some(e));
    let all = |values: &[Rational]| -> Vec<(Elem, Rational)> { values.iter().cloned().enumerate().collect() };
    if let Some(from) = extend_from {
        let l = lattice(e)?;
        let (name, sub) = match from {
            "sharp" => ("S(E)".to_string(), sharp_elements(l)?),
            "e1" => ("E1".to_string(), e1_subalgebra(l)?.e1),
            other => {
                let i: usize = other.strip_prefix("block:").and_then(|i| i.parse().ok()).ok_or_else(|| {
                    CliError::Usage(format!("--extend-from: expected sharp, e1 or block:I, got {other:?}"))
                })?;
                let d = blocks(l)?;
                let b = d
                    .blocks
                    .get(i)
                    .ok_or_else(|| CliError::Usage(format!("block {i} does not exist ({} blocks)", d.blocks.len())))?;
                (format!("block {i}"), b.clone())
            }
        };
        let mut s = Section::new(format!("extension from {name}"), Status::Pass);
        let mut data = Vec::new();
        for given in extreme_states_on(e, &sub, caps)? {
            let p = extend_state(l, &sub, &given)?;
            match &p.witness {
                Some(w) if p.feasible => {
                    s.push(format!("{}  ->  {}", values_line(e, &given), values_line(e, &all(&w.values))));
                    data.push(json!({"given": values_json(e, &given), "extension": values_json(e, &all(&w.values))}));
                }
                _ => {
                    s.status = Status::Fail;
                    s.push(format!("{}  ->  no extension", values_line(e, &given)));
                    data.push(json!({"given": values_json(e, &given), "extension": null}));
                }
            }
        }
        s.data = json!(data);
        r.add(s);
    } else if extreme {
        let v = extreme_states(e, caps)?;
        let mut s = Section::info("extreme states").line(count(v.len(), "extreme state"));
        for st in &v {
            s.push(values_line(e, &all(&st.values)));
        }
        s.data = json!(v.iter().map(|st| values_json(e, &all(&st.values))).collect::<Vec<_>>());
        r.add(s);
    } else {
        let s = match find_state(e)? {
            Some(st) => {
                Section::info("state").line(values_line(e, &all(&st.values))).data(values_json(e, &all(&st.values)))
            }
            None => Section::info("state").line("no state"),
        };
        r.add(s);
    }
    Ok(r)
}

fn complete_cmd(e: &EffectAlgebra) -> Result<Report, CliError> {
    let c = dm_complete(e.poset());
    let mut r = Report::new("complete", Some(e));
    let mut s = Section::info("completion").line(format!(
        "{} cuts, isomorphic to the source: {}",
        c.len(),
        if c.is_isomorphic_to_source { "yes" } else { "no" }
    ));
    for (i, (a, _)) in c.cuts.iter().enumerate() {
        s.push(format!("cut {i}: {}", set_str(e, a)));
    }
    let embedding: Vec<String> = e.elems().map(|x| format!("{}->{}", e.label(x), c.embedding[x])).collect();
    s.push(format!("embedding: {}", embedding.join(" ")));
    s.data = json!({
        "cuts": c.cuts.iter().map(|(a, _)| set_json(e, a)).collect::<Vec<_>>(),
        "embedding": c.embedding,
    });
    r.add(s);
    let Ok(l) = e.as_lattice() else {
        r.add(
            Section::new("closedness", Status::NotApplicable).line("the order is not a lattice; order completion only"),
        );
        return Ok(r);
    };
    r.add(Section::new("atoms preserved", if mc_check(e) { Status::Pass } else { Status::Fail }));
    let mut s = Section::new("closedness", Status::Pass);
    for (name, d) in default_targets(l)? {
        match closedness(l, &d) {
            Ok(c) => s.push(format!(
                "{name} {}: joins {}, meets {}, complete sublattice {}",
                set_str(e, &d),
                c.joins_closed,
                c.meets_closed,
                c.complete_sublattice
            )),
            Err(err) if err.is_falsification() => {
                s.status = Status::Fail;
                s.push(format!("{name}: {err}"));
            }
            Err(err) => return Err(err.into()),
        }
    }
    r.add(s);
    Ok(r)
}

fn compact_line(e: &EffectAlgebra) -> String {
    let sums: Vec<String> = e
        .table()
        .triples()
        .filter(|&(x, y, _)| x != 0 && y != 0)
        .map(|(x, y, z)| format!("{}+{}={}", e.label(x), e.label(y), e.label(z)))
        .collect();
    format!("{} | one={} | {}", e.labels().join(" "), e.label(e.one()), sums.join(" "))
}

fn enumerate_cmd(max_size: usize, caps: &Caps) -> Result<Report, CliError> {
    let all = enumerate(max_size, caps)?;
    let mut r = Report::new("enumerate", None);
    for n in 2..=max_size {
        let of_size: Vec<&EffectAlgebra> = all.iter().filter(|e| e.len() == n).collect();
        let lattices = of_size.iter().filter(|e| e.is_lattice()).count();
        let mut s = Section::info(format!("size {n}")).line(format!(
            "{}, {}",
            count(of_size.len(), "instance"),
            count(lattices, "lattice")
        ));
        for e in &of_size {
            s.push(compact_line(e));
        }
        s.data = json!(of_size
            .iter()
            .map(|e| serde_json::from_str::<serde_json::Value>(&instance::write(e)).expect("instance files are JSON"))
            .collect::<Vec<_>>());
        r.add(s);
    }
    Ok(r)
}

fn family_cmd(spec: &str) -> Result<Report, CliError> {
    let v = analyze_spec(spec).map_err(|e| match e {
        Error::InvalidArgument(m) => CliError::Input(format!("spec {m}")),
        other => other.into(),
    })?;
    let mut r = Report::new("family", None);
    r.add(Section::info("family").line(format!("spec: {spec}")).line(format!("kind: {:?}", v.kind)));
    let mut s = Section::info("verdicts");
    let mut data = serde_json::Map::new();
    for p in Property::ALL {
        let t = v.get(p);
        match v.justification(p) {
            Some(j) => s.push(format!("{}: {} ({})", p.name(), t.name(), j.statement())),
            None => s.push(format!("{}: {}", p.name(), t.name())),
        }
        data.insert(p.name().into(), json!(t.name()));
    }
    s.data = serde_json::Value::Object(data);
    r.add(s);
    Ok(r)
}

fn check_all_cmd(e: &EffectAlgebra, caps: &Caps) -> Report {
    let mut r = Report::new("check-all", Some(e));
    for res in check_all(e, caps) {
        let status = match res.outcome {
            Outcome::Pass => Status::Pass,
            Outcome::Fail(_) => Status::Fail,
            Outcome::Skipped(_) => Status::Skipped,
            Outcome::NotApplicable(_) => Status::NotApplicable,
        };
        let mut s = Section::new(res.suite.name(), status).line(format!("{} checked", count(res.checked, "claim")));
        if let Some(p) = &res.partial {
            s.push(format!("partial: {p}"));
        }
        if let Some(d) = res.outcome.detail() {
            s.push(d.to_string());
        }
        r.add(s);
    }
    r
}
