//! Exit codes, pipelines and error messages of the `lea` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use lea_cli::report::{Report, Status};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn lea(args: &[&str], stdin: Option<&str>, caps: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lea"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    match caps {
        Some(c) => cmd.env("EA_CAPS", c),
        None => cmd.env_remove("EA_CAPS"),
    };
    let mut child = cmd.spawn().expect("the binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn generated_instance_pipes_into_analyze() {
    let g = lea(&["gen", "hsum(chain:3 * 2)"], None, None);
    assert_eq!(g.status.code(), Some(0));
    let a = lea(&["--format", "machine", "analyze", "-"], Some(&stdout(&g)), None);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let r: Report = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(r.instance.as_ref().unwrap().elements.len(), 4);
    let blocks = r.sections.iter().find(|s| s.name == "blocks").unwrap();
    assert_eq!(blocks.data["blocks"].as_array().unwrap().len(), 2);
    let ao = r.sections.iter().find(|s| s.name == "almost orthogonality").unwrap();
    assert_eq!(ao.status, Status::Pass);
    assert!(ao.lines.contains(&"(a, 1): b, 2a".to_string()));
}

#[test]
fn separation_of_the_glued_chains() {
    let o = lea(&["separate", &path("hs2c3.json"), "a", "b"], None, None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("up=[a,1], down=[0,b]"));
}

#[test]
fn axiom_violation_exits_two_with_witness() {
    let o = lea(&["verify", &path("eiv_violation.json")], None, None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("Eiv: [1, a]"));
    // every other command refuses the table the same way
    let o = lea(&["analyze", &path("eiv_violation.json")], None, None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not an effect algebra"));
}

#[test]
fn input_errors_exit_one_with_positions() {
    let o = lea(&["separate", &path("hs2c3.json"), "a", "c"], None, None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Y: unknown element \"c\""));

    let o = lea(&["family", "hsum(chain:3, boolean:x)"], None, None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("column 23"), "{}", stderr(&o));
    let o = lea(&["gen", "chain:1"], None, None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("column 1"), "{}", stderr(&o));

    let bad = r#"{"elements": ["0", "a", "1"], "plus": [["a", "a", "1"], ["a", "z", "1"]]}"#;
    let o = lea(&["verify", "-"], Some(bad), None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("plus[1][1]: unknown element \"z\""));

    let o = lea(&["verify", "-"], Some("{\"elements\": [\"0\", \"1\"],\n  \"plus\": [}"), None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));

    let o = lea(&["verify", &path("no-such-file.json")], None, None);
    assert_eq!(o.status.code(), Some(1));
    let o = lea(&["frobnicate"], None, None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn caps_come_from_the_environment() {
    let o = lea(&["states", &path("b4.json"), "--extreme"], None, Some("states=2"));
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("exceeds the cap"));
    let o = lea(&["states", &path("b4.json"), "--extreme"], None, Some("states=nope"));
    assert_eq!(o.status.code(), Some(1));
    // below the topology cap the comparison is skipped, not failed
    let o = lea(&["check-all", &path("hs2c3.json")], None, Some("topology=2"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("partial: "), "{}", stdout(&o));
}

#[test]
fn machine_reports_round_trip() {
    for args in [
        vec!["--format", "machine", "analyze", "hsb4b4.json"],
        vec!["--format", "machine", "check-all", "c3xc2.json"],
        vec!["--format", "machine", "states", "hsb4b4.json", "--extend-from", "sharp"],
        vec!["--format", "machine", "family", "hsum(chain:3.., boolean:2)"],
    ] {
        let args: Vec<String> =
            args.iter().map(|a| if a.ends_with(".json") { path(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = lea(&args, None, None);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let r: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(r.machine(), text);
    }
}

#[test]
fn check_all_passes_on_the_corpus() {
    let en = lea(&["--format", "machine", "enumerate", "--max-size", "6"], None, None);
    let r: Report = serde_json::from_str(&stdout(&en)).unwrap();
    let mut files: Vec<String> =
        r.sections.iter().flat_map(|s| s.data.as_array().unwrap().iter().map(|v| v.to_string())).collect();
    assert_eq!(files.len(), 19);
    for spec in ["chain:64", "boolean:5", "hsum(chain:5 * 4, boolean:3)", "prod(chain:4, boolean:2)"] {
        files.push(stdout(&lea(&["gen", spec], None, None)));
    }
    for f in ["hs2c3.json", "b4.json", "c3.json", "hsb4b4.json", "c3xc2.json", "nonlattice6.json"] {
        files.push(std::fs::read_to_string(data(f)).unwrap());
    }
    for f in &files {
        let o = lea(&["check-all", "-"], Some(f), None);
        assert_eq!(o.status.code(), Some(0), "{f}\n{}{}", stdout(&o), stderr(&o));
        assert!(!stdout(&o).contains("[FAIL]"));
    }
}

#[test]
fn dot_output_is_a_hasse_diagram() {
    let o = lea(&["dot", &path("hsb4b4.json"), "--highlight", "partition:p_1,1"], None, None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("digraph hasse {") && text.ends_with("}\n"));
    assert_eq!(text.matches('{').count(), text.matches('}').count());
    // 4 atoms, each between 0 and 1
    assert_eq!(text.matches("arrowhead=none").count(), 8);
    assert!(text.contains("{ rank=same; n1; n2; n3; n4; }"));
    let o = lea(&["dot", &path("b4.json"), "--highlight", "bogus:1"], None, None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn infeasible_requests_are_usage_errors() {
    let o = lea(&["states", &path("hsb4b4.json"), "--extend-from", "block:7"], None, None);
    assert_eq!(o.status.code(), Some(1));
    let o = lea(&["blocks", &path("nonlattice6.json")], None, None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a lattice"));
    let o = lea(&["family", "prod(chain:3, chain:3)"], None, None);
    assert_eq!(o.status.code(), Some(1));
}
