use std::process::Command;

use serde_json::Value;

fn run_env(args: &[&str], seed: Option<&str>) -> (Vec<u8>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_merifold"));
    cmd.args(args);
    match seed {
        Some(s) => cmd.env("MERIFOLD_SEED", s),
        None => cmd.env_remove("MERIFOLD_SEED"),
    };
    let out = cmd.output().expect("binary runs");
    (out.stdout, out.status.code().expect("exit code"))
}

fn run(args: &[&str]) -> (Value, i32) {
    let (bytes, code) = run_env(args, None);
    (serde_json::from_slice(&bytes).expect("json report"), code)
}

fn text(args: &[&str]) -> String {
    String::from_utf8(run_env(args, None).0).unwrap()
}

#[test]
fn word_reduce_cancels() {
    let (r, code) = run(&["word", "reduce", "x1 X1"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "ok");
    assert_eq!(r["schemaVersion"], 1);
    assert_eq!(r["payload"]["word"], "1");
    let (r, _) = run(&["word", "reduce", "x2 x1 X1 x2"]);
    assert_eq!(r["payload"]["word"], "x2 x2");
}

#[test]
fn parse_errors_name_token_and_position() {
    let (r, code) = run(&["word", "reduce", "x1 q3"]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["error"], "parse");
    assert!(r["payload"]["position"].as_u64().is_some());
    let (r, code) = run(&["word", "reduce", "x3", "--rank", "2"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "error");
    let (r, code) = run(&["knot"]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["error"], "usage");
}

#[test]
fn braid_action_of_the_figure_braid() {
    let (r, code) = run(&["braid", "action", "s2 S1 s2 s2", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["braid"], "s2 S1 s2 s2");
    assert_eq!(r["payload"]["strands"], 3);
    assert_eq!(r["payload"]["images"].as_array().unwrap().len(), 3);
}

#[test]
fn bridge_numbers() {
    let (r, code) = run(&["bridge", "--pattern", "braid", "--n", "3", "--b1", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["bridgeNumber"], 6);
    let (r, _) = run(&["bridge", "--pattern", "whitehead", "--b1", "3"]);
    assert_eq!(r["payload"]["bridgeNumber"], 6);
    let (r, code) = run(&["bridge", "--pattern", "whitehead", "--b1", "0"]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["error"], "precondition");
}

#[test]
fn conjsep_reports_the_boundary_intersection() {
    // U_α ∩ U_ω = <m_V>: the literal statement fails and exit code 2 says so.
    let (r, code) = run(&["pattern", "conjsep"]);
    assert_eq!(code, 2);
    assert_eq!(r["verdict"], "falsified-axiom");
    assert_eq!(r["payload"]["axiom"], "Lemma 3");
    let rep = &r["payload"]["report"];
    assert_eq!(rep["literalTrivial"], false);
    assert_eq!(rep["peripheralOnly"], true);
    assert_eq!(rep["components"].as_array().unwrap().len(), 1);
}

#[test]
fn sg_intersect_of_the_boundary_subgroups() {
    let (r, code) = run(&["sg", "intersect", "-H", "x2 x1 X2,x1", "-K", "x2 X1 X2 x1 X2,x2"]);
    assert_eq!(code, 0);
    let comps = r["payload"]["intersections"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["rep"], "1");
    assert_eq!(r["payload"]["intersection"], serde_json::json!(["X1 x2 x1 X2"]));
}

#[test]
fn dot_of_u_alpha_has_two_nodes_and_three_edges() {
    let d = text(&["pattern", "subgroup", "--side", "alpha", "--format", "dot"]);
    let nodes = d.lines().filter(|l| l.contains("shape=")).count();
    let edges = d.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (2, 3));
    assert!(d.contains("doublecircle"));
}

#[test]
fn lemma_case_decision() {
    let (r, code) = run(&["pattern", "lemma", "--case", "2a", "--word", "x2 x1 x1 x1"]);
    assert_eq!(code, 0);
    assert!(r["payload"]["verdict"].is_boolean());
    let (_, code) = run(&["pattern", "lemma", "--case", "4a", "--word", "x1"]);
    assert_eq!(code, 1);
}

#[test]
fn fold_summary_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace");
    let dots = dir.path().join("dot");
    let json = dir.path().join("out.json");
    let args = [
        "satellite",
        "fold",
        "--pattern",
        "whitehead",
        "--companion",
        "torus:2,3",
        "--meridian",
        "x2 | e a | E x1",
        "--meridian",
        "1",
        "--format",
        "text",
        "--trace",
        trace.to_str().unwrap(),
        "--dot",
        dots.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ];
    let t = text(&args);
    assert!(t.contains("complexity trace length 1"), "{t}");
    let lines = std::fs::read_to_string(trace.join("satellite-fold.jsonl")).unwrap();
    for l in lines.lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        let before: Vec<u64> = serde_json::from_value(v["complexityBefore"].clone()).unwrap();
        let after: Vec<u64> = serde_json::from_value(v["complexityAfter"].clone()).unwrap();
        assert!(after < before);
    }
    assert!(dots.join("initial.dot").exists() && dots.join("final.dot").exists());
    let report: Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    assert_eq!(report["payload"]["verdict"], "FOLDED");
    assert_eq!(report["payload"]["certificates"]["proper"]["separator"], "l");
    assert_eq!(report["traceRef"], trace.join("satellite-fold.jsonl").display().to_string());
}

#[test]
fn cable_fold_carries_a_tameness_certificate() {
    let (r, code) =
        run(&["satellite", "fold", "--pattern", "cable:2,1", "--meridian", "x2 | e a | E x1", "--meridian", "x2"]);
    assert_eq!(code, 0);
    let p = &r["payload"];
    assert_eq!(p["verdict"], "FOLDED");
    assert_eq!(p["inputsWitnessed"], 2);
    assert_eq!(p["certificates"]["tameness"]["meridians"].as_array().unwrap().len(), 2);
}

#[test]
fn goodify_gap_exits_two() {
    // <L x2 l, L L x2 l l> meets A_v in <m_V>, which no edge-group type expresses.
    let (r, code) = run(&["pattern", "goodify", "--meridian", "x2:1 | E 1", "--meridian", "x2:1 | E 1 | E 1"]);
    assert_eq!(code, 2);
    assert_eq!(r["payload"]["axiom"], "Lemma 3");
}

#[test]
fn commands_are_byte_reproducible() {
    let cmds: [&[&str]; 4] = [
        &["pattern", "sample", "--count", "4"],
        &["pattern", "goodify", "--meridian", "x1 | e x2", "--meridian", "x2:1"],
        &["satellite", "fold", "--pattern", "cable:3,1", "--meridian", "x2 | e a | E x1", "--meridian", "x3"],
        &["sg", "graph", "-H", "x1 x2 X1,x2 x2", "--format", "dot"],
    ];
    for c in cmds {
        let a = run_env(c, Some("17"));
        let b = run_env(c, Some("17"));
        assert_eq!(a, b, "{c:?}");
        assert_eq!(a.1, 0, "{c:?}");
    }
    let x = run_env(&["pattern", "sample", "--count", "4"], Some("1"));
    let y = run_env(&["pattern", "sample", "--count", "4"], Some("2"));
    assert_ne!(x.0, y.0);
}
