use std::process::Command;

use charfields::galois::field_of;
use charfields::tables::{CharTable, Group};
use charfields::{Cyclotomic, Rational};
use charfields_cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("charfields").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn field_query_example() {
    let v = json(&["field", "--group", "gl2", "--q", "7", "--order", "3"]);
    assert_eq!(v["conductor"], 3);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["names"][0], "Q(zeta_3)");
}

#[test]
fn field_query_echoes_factorization() {
    let (code, _, err) = call(&["field", "--group", "sl2", "--p", "3", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(err.contains("q = 9 = 3^2"), "{err}");
    let (_, out, _) = call(&["field", "--group", "sl2", "--q", "9", "--format", "text"]);
    assert!(out.starts_with("q = 9 = 3^2\n"), "{out}");
}

#[test]
fn sl2_q4_has_five_classes() {
    let v = json(&["table", "--group", "sl2", "--q", "4", "--format", "json"]);
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    assert_eq!(v["characters"].as_array().unwrap().len(), 5);
    assert_eq!(v["group_order"], 60);
}

#[test]
fn verify_thm4_passes_with_rational_field() {
    let v = json(&["verify", "--claim", "Thm4", "--q", "5", "--ell", "3", "--r", "1", "--format", "json"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["computed"]["degree"], 1);
    assert_eq!(v["computed"]["names"][0], "Q");
}

#[test]
fn glm_order_query() {
    let v = json(&["field", "--group", "glm", "--q", "2", "--m", "3", "--order", "7"]);
    assert_eq!((v["conductor"].as_u64(), v["degree"].as_u64()), (Some(7), Some(2)));
    let (code, _, err) = call(&["field", "--group", "glm", "--q", "2", "--m", "3", "--order", "21"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["selftest"]).0, 0);
    // usage errors
    assert_eq!(call(&[]).0, 2);
    assert_eq!(call(&["table", "--group", "gl2"]).0, 2);
    assert_eq!(call(&["table", "--group", "gl3", "--q", "3"]).0, 2);
    assert_eq!(call(&["table", "--group", "gl2", "--q", "6"]).0, 2);
    assert_eq!(call(&["table", "--group", "gl2", "--p", "4", "--n", "2"]).0, 2);
    assert_eq!(call(&["table", "--group", "gl2", "--q", "9", "--p", "3", "--n", "2"]).0, 2);
    assert_eq!(call(&["verify", "--claim", "Thm99", "--q", "5"]).0, 2);
    assert_eq!(call(&["field", "--group", "gl2", "--q", "7", "--order", "5"]).0, 2);
    // a claim that does not hold at these parameters
    let (code, out, _) = call(&["verify", "--claim", "Lemma3.1", "--q", "4", "--ell", "3", "--r", "2", "--m", "3"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
    // help goes to stdout with status 0
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("CHARFIELDS_MAX_TABLE_Q"));
}

#[test]
fn bounds_from_flags_and_environment() {
    let bin = env!("CARGO_BIN_EXE_charfields");
    let st = Command::new(bin).args(["--max-table-q", "5", "table", "--group", "gl2", "--q", "7"]).output().unwrap();
    assert_eq!(st.status.code(), Some(3));
    let st = Command::new(bin)
        .env("CHARFIELDS_MAX_TABLE_Q", "5")
        .args(["table", "--group", "sl2", "--q", "7"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(3));
    let st = Command::new(bin)
        .env("CHARFIELDS_MAX_M", "2")
        .args(["field", "--group", "glm", "--q", "2", "--m", "3"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(3));
    let st = Command::new(bin).args(["table", "--group", "sl2", "--q", "5"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["table", "--group", "gl2", "--q", "8", "--format", "json"],
        vec!["table", "--group", "sl2", "--q", "9"],
        vec!["sweep", "--claims", "Thm4,L2,K2", "--q-max", "9", "--format", "json"],
        vec!["selftest", "--format", "json"],
    ] {
        assert_eq!(call(&args), call(&args), "{args:?}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("charfields-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["table", "--group", "gl2", "--q", "4", "--format", "json", "--output", p]);
    assert_eq!((code, out.as_str()), (0, ""));
    let (_, direct, _) = call(&["table", "--group", "gl2", "--q", "4", "--format", "json"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn value_of(v: &Value) -> Cyclotomic {
    let level = v["level"].as_u64().unwrap();
    let coeffs: Vec<Rational> =
        v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse().unwrap()).collect();
    Cyclotomic::from_coeffs(level, coeffs).unwrap()
}

#[test]
fn table_json_round_trips_to_field_queries() {
    for (group, name, q) in [(Group::Gl2, "gl2", 5u64), (Group::Gl2, "gl2", 9), (Group::Sl2, "sl2", 7), (Group::Sl2, "sl2", 8)] {
        let q_arg = q.to_string();
        let v = json(&["table", "--group", name, "--q", &q_arg, "--format", "json"]);
        let classes = v["classes"].as_array().unwrap();
        let rows = v["values"].as_array().unwrap();
        let table = CharTable::build(group, q).unwrap();
        for (i, row) in rows.iter().enumerate() {
            for (j, cell) in row.as_array().unwrap().iter().enumerate() {
                assert_eq!(&value_of(cell), &table.value(i, j).to_cyclotomic(), "{name} q = {q}");
            }
        }
        let orders: std::collections::BTreeSet<u64> = classes.iter().map(|c| c["order"].as_u64().unwrap()).collect();
        for d in orders {
            let gens: Vec<Cyclotomic> = classes
                .iter()
                .enumerate()
                .filter(|(_, c)| c["order"] == d)
                .flat_map(|(j, _)| rows.iter().map(move |row| value_of(&row[j])))
                .collect();
            let from_dump = field_of(&gens).unwrap();
            let d_arg = d.to_string();
            let queried = json(&["field", "--group", name, "--q", &q_arg, "--order", &d_arg]);
            assert_eq!(serde_json::to_value(&from_dump).unwrap(), queried, "{name} q = {q} order {d}");
        }
    }
}
