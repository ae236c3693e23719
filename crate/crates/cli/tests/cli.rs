use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spliceknot"))
        .args(args)
        .env_remove("SPLICE_TORSION_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn riley_pretty_strings() {
    let o = run(&["--output", "pretty", "riley", "--q", "-1"]);
    assert_eq!(stdout(&o).trim_end(), "t^2 - (xi^2-5) t - xi^2 + 5");
    let o = run(&["--output", "pretty", "riley", "--q", "1"]);
    assert_eq!(stdout(&o).trim_end(), "t - xi^2 + 3");
}

#[test]
fn riley_json_round_trips_the_polynomial() {
    let v = json(&run(&["riley", "--q", "2"]));
    assert_eq!(v["riley_xi"]["vars"], serde_json::json!(["xi", "t"]));
    assert_eq!(v["q"], 2);
}

#[test]
fn trefoil_rt_set() {
    let v = json(&run(&["rt", "--q1", "1", "--q2", "1"]));
    assert_eq!(v["rt_set"], serde_json::json!([[4.0, 0.0]]));
    assert_eq!(v["convention"], "wada-fox-dy-over-x-minus-1");
    assert!(v["tolerances"]["root_cert"].is_number());
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["rt", "--q1", "-1", "--q2", "1"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_from_environment_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_spliceknot"))
        .args(["splice-eq", "--q1", "1", "--q2", "1"])
        .env("SPLICE_TORSION_SEED", "7")
        .output()
        .unwrap();
    assert!(o.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_spliceknot"))
        .args(["splice-eq", "--q1", "1", "--q2", "1"])
        .env("SPLICE_TORSION_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn splice_equation_of_trefoils_has_degree_36() {
    let v = json(&run(&["splice-eq", "--q1", "1", "--q2", "1"]));
    assert_eq!(v["degree"], 36);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 37);
    assert_eq!(c[0], "1");
    assert_eq!(v["roots"].as_array().unwrap().len(), 36);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["riley", "--q", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["--root-cert", "-1", "rt", "--q1", "1", "--q2", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--dedup", "0", "rt", "--q1", "1", "--q2", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["rt", "--q1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["newton", "--poly", "L + N"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "99"]).status.code(), Some(2));
}

#[test]
fn criterion_from_csv() {
    let dir = std::env::temp_dir().join(format!("spliceknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("apolys.csv");
    std::fs::write(
        &path,
        "name,vars,terms\n\
         trefoil,\"[\"\"L\"\",\"\"M\"\"]\",\"[[[2,0],\"\"1\"\"],[[1,6],\"\"1\"\"],[[1,0],\"\"-1\"\"],[[0,6],\"\"-1\"\"]]\"\n\
         other,x;y,\"[[[0,1],\"\"1\"\"],[[6,0],\"\"1\"\"]]\"\n",
    )
    .unwrap();
    let v = json(&run(&["criterion", "--input", path.to_str().unwrap()]));
    let pairs = v.as_array().unwrap();
    assert_eq!(pairs.len(), 3);
    assert_eq!(pairs[0]["pair"], serde_json::json!(["trefoil", "trefoil"]));
    // the second polynomial is compared transposed: M + L^6 becomes L + M^6,
    // a factor of the trefoil polynomial
    let mixed = &pairs[1];
    assert_eq!(mixed["pair"], serde_json::json!(["trefoil", "other"]));
    assert_eq!(mixed["coprime"], false);
    assert!(mixed["gcd"].is_object());
    std::fs::write(&path, "name,vars,terms\nbad,x;y;z,[]\n").unwrap();
    assert_eq!(
        run(&["criterion", "--input", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn criterion_for_twist_knots() {
    let v = json(&run(&["criterion", "--q1", "1", "--q2", "-1"]));
    assert_eq!(v["coprime"], true);
    assert_eq!(v["route"], "slopes");
    assert_eq!(v["pair"], serde_json::json!(["J(2,2)", "J(2,-2)"]));
}

#[test]
fn newton_slopes_of_a_given_polynomial() {
    let v = json(&run(&["newton", "--poly", "L^2*M^4 - L + 1"]));
    assert_eq!(v["newton"]["slopes"], serde_json::json!(["0", "2", "4"]));
}

#[test]
fn verify_single_criterion() {
    let o = run(&["--output", "pretty", "verify", "--only", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("[PASS]  1"));
}

#[test]
fn csv_outputs_have_headers() {
    let o = run(&["--output", "csv", "rt", "--q1", "1", "--q2", "1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("index,root_index,orientation"));
    assert_eq!(lines.count(), 35);
}
