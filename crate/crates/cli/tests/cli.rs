use std::path::Path;
use std::process::{Command, Output};

use intergroup::{all_subgroups, FiniteGroup, IntersectionGraph, Limits};
use serde_json::Value;

fn run_in(dir: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_intergroup"));
    cmd.args(args).env_remove("INTERGROUP_MAX_ORDER").env_remove("INTERGROUP_MAX_LATTICE");
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(None, args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(&o).trim()).unwrap()
}

#[test]
fn info_reports_structure() {
    let q8 = json(&["info", "Q8", "--json"]);
    assert_eq!(q8["order"], 8);
    assert_eq!(q8["order_length"], 3);
    assert_eq!(q8["vertices"], 4);
    assert_eq!(q8["frattini_order"], 2);
    assert_eq!(q8["center_order"], 2);

    let z6 = json(&["info", "Z6", "--json"]);
    assert_eq!(z6["vertices"], 2);
    assert_eq!(z6["kappa"], 0);

    let a5 = json(&["info", "A5", "--json"]);
    assert_eq!(a5["order"], 60);
    assert_eq!(a5["simple"], true);
    assert_eq!(a5["solvable"], false);

    let text = stdout(&run(&["info", "Q8"]));
    assert!(text.contains("order: 8\n") && text.contains("vertices: 4\n"));
}

#[test]
fn kappa_values_and_witnesses() {
    let z8 = json(&["kappa", "Z8", "--witness", "--json"]);
    assert_eq!(z8["kappa"], 1);
    let w = z8["witness"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0]["order"], 4);

    let k = json(&["kappa", "Z4xZ2", "--witness", "--json"]);
    assert_eq!(k["kappa"], 1);
    let w = k["witness"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    // the separating vertex is the Klein four subgroup: every element squares to 1
    let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2), &Limits::default()).unwrap();
    for x in w[0]["elements"].as_array().unwrap() {
        let x = x.as_u64().unwrap() as usize;
        assert_eq!(g.mul(x, x), g.identity());
    }

    assert_eq!(json(&["kappa", "Q16", "--json"])["kappa"], 8);
    assert_eq!(json(&["kappa", "Q8", "--json"])["kappa"], 3);
    assert_eq!(stdout(&run(&["kappa", "S3"])), "kappa: 0\n");
}

#[test]
fn witnesses_are_upward_closed() {
    let limits = Limits::default();
    for label in ["Z8", "Z12", "Z4xZ2", "D4", "A4", "S4", "F20", "SL(2,3)", "Z3wrZ3", "Z30", "Q8xZ3"] {
        let out = json(&["kappa", label, "--witness", "--json"]);
        let g = intergroup::catalog::by_label(label, &limits).unwrap();
        let l = all_subgroups(&g, &limits).unwrap();
        let graph = IntersectionGraph::build(&l);
        let set: Vec<usize> = out["witness"]
            .as_array()
            .unwrap()
            .iter()
            .map(|w| w["vertex"].as_u64().unwrap() as usize)
            .collect();
        assert!(graph.is_upward_closed(&l, &set), "{label}");
        if !graph.is_complete() {
            assert_eq!(set.len() as i64, out["kappa"].as_i64().unwrap(), "{label}");
        }
    }
}

#[test]
fn graph_exports() {
    let dot = stdout(&run(&["graph", "S3"]));
    assert!(dot.starts_with("graph intersection {"));
    assert_eq!(dot.matches("[label=").count(), 4);
    assert!(!dot.contains("--"));

    let q8 = json(&["graph", "Q8", "--format", "json"]);
    assert_eq!(q8["edges"].as_array().unwrap().len(), 6);

    let k = json(&["graph", "Z2xZ2", "--format", "json"]);
    assert_eq!(k["vertex_count"], 3);
    assert!(k["edges"].as_array().unwrap().is_empty());

    let lat = json(&["lattice", "S3"]);
    assert_eq!(lat["subgroups"].as_array().unwrap().len(), 6);
}

#[test]
fn default_audit_agrees_and_is_deterministic() {
    let a = run(&["audit"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert!(text.trim_end().ends_with("disagreements: 0"), "{text}");
    let b = run(&["audit", "--catalog", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn audit_tables_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let z6 = FiniteGroup::cyclic(6).with_label("Z6");
    let path = dir.path().join("z6.json");
    std::fs::write(&path, serde_json::to_string(&z6.to_record()).unwrap()).unwrap();
    let csv = dir.path().join("out.csv");
    let o = run(&["audit", "--tables", path.to_str().unwrap(), "--csv", csv.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(rec["case_a"], "1");
    assert_eq!(rec["kappa"], 0);
    assert_eq!(rec["agree_a"], true);

    let written = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = written.lines().collect();
    assert_eq!(lines[0], "#v1");
    assert_eq!(lines[1], "label,order,solvable,nilpotent,kappa,caseA,caseB,caseC,agreeA,agreeB,agreeC");
    assert_eq!(lines[2], "Z6,6,true,true,0,1,pq,pq,true,true,true");
}

#[test]
fn audit_manifest_subset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "# two groups\nQ8 quaternion 8\nA4 alternating 4\n").unwrap();
    let o = run(&["audit", "--manifest", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("groups: 2, disagreements: 0"));
}

#[test]
fn corrupted_table_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"label":"bad","order":2,"table":[[0,1],[1,1]]}"#).unwrap();
    let o = run(&["audit", "--tables", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["info", "no-such-group"]).status.code(), Some(2));
    assert_eq!(run(&["--max-order", "50", "info", "A5"]).status.code(), Some(3));
    assert_eq!(run(&["--max-lattice", "10", "kappa", "S4"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_intergroup"))
        .args(["info", "A5"])
        .env("INTERGROUP_MAX_ORDER", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn file_specs() {
    let dir = tempfile::tempdir().unwrap();
    let perm = dir.path().join("s4.perm");
    std::fs::write(&perm, "# S4\n(0 1 2 3)\n(0 1)\n").unwrap();
    assert_eq!(json(&["info", perm.to_str().unwrap(), "--json"])["order"], 24);

    let pres = dir.path().join("d4.pres");
    std::fs::write(&pres, "gens 2\na4\nb2\n(ab)2\n").unwrap();
    let d4 = json(&["kappa", pres.to_str().unwrap(), "--json"]);
    assert_eq!(d4["kappa"], 1);

    let other = dir.path().join("g.txt");
    std::fs::write(&other, "").unwrap();
    assert_eq!(run(&["info", other.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn label_shadowed_by_file_is_ambiguous() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("Q8"), "").unwrap();
    let o = run_in(Some(dir.path()), &["info", "Q8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("both"));
}

#[test]
fn catalog_manifest_round_trips() {
    let text = stdout(&run(&["catalog"]));
    let entries = intergroup::catalog::parse_manifest(&text).unwrap();
    assert!(entries.len() >= 100);
    assert!(!text.contains("typeII"));
    assert!(stdout(&run(&["catalog", "--all"])).contains("G625:typeII"));
}
