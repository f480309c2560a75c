use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn k2norm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k2norm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("json on stdout")
}

#[test]
fn norm_and_non_norm_exit_codes() {
    let ext = data("qi.ext.json");
    let o = k2norm(&[
        "is-norm",
        path(&ext),
        path(&data("sym_31.json")),
        "--n",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("is_norm: true"), "{}", stdout(&o));

    let o = k2norm(&[
        "is-norm",
        path(&ext),
        path(&data("sym_m1m1.json")),
        "--n",
        "1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(10));
    let v = json(&o);
    assert_eq!(v["is_norm"], false);
    assert_eq!(v["failing_places"], serde_json::json!([0]));
    assert_eq!(v["Sr"], serde_json::json!([0]));
    assert_eq!(v["convention"], "ramified = no real place above");

    let o = k2norm(&[
        "is-norm",
        path(&ext),
        path(&data("sym_m1m1.json")),
        "--n",
        "2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["reason"], "trivial_torsion");
    assert_eq!(v["parity"], serde_json::Value::Null);
}

#[test]
fn verdict_over_real_quadratic_base() {
    // {−1, √2}: both entries negative only at the place x = −√2.
    let o = k2norm(&[
        "is-norm",
        path(&data("sqrt2_i.ext.json")),
        path(&data("sym_m1_sqrt2.json")),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(10));
    let v = json(&o);
    assert_eq!(v["Sr"], serde_json::json!([0, 1]));
    assert_eq!(v["parity"], serde_json::json!([1, 0]));
    assert_eq!(v["failing_places"], serde_json::json!([0]));
}

#[test]
fn places_signature_and_sign() {
    let f = data("sqrt2.field.json");
    let o = k2norm(&["places", path(&f), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["r1"].as_u64(), v["r2"].as_u64()), (Some(2), Some(0)));
    assert_eq!(v["places"].as_array().unwrap().len(), 2);

    let o = k2norm(&["signature", path(&data("qi.field.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0") && stdout(&o).contains("1"));

    let o = k2norm(&["sign", path(&f), "--element", "-1,1", "--place", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "+1");
    let o = k2norm(&[
        "sign",
        path(&f),
        "--element",
        "[\"-1\",\"1\"]",
        "--place",
        "0",
    ]);
    assert_eq!(stdout(&o).trim(), "-1");
    let o = k2norm(&["sign", path(&f), "--element", "0", "--place", "0"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = k2norm(&["sign", path(&f), "--element", "1", "--place", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn ramified_and_obstruction() {
    let ext = data("cbrt2_i.ext.json");
    let o = k2norm(&["ramified", path(&ext), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ramified = no real place above"));
    let o = k2norm(&["obstruction", path(&data("sqrt2_i.ext.json")), "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(Z/2)^2"), "{}", stdout(&o));
    let o = k2norm(&["obstruction", path(&data("sqrt2_i.ext.json")), "--n", "3"]);
    assert!(
        stdout(&o).lines().next().unwrap_or("").contains('0'),
        "{}",
        stdout(&o)
    );
}

#[test]
fn witness_round_trips_through_is_norm() {
    let dir = tempfile::tempdir().unwrap();
    let ext = data("sqrt2_i.ext.json");
    for place in ["0", "1"] {
        let o = k2norm(&["witness", path(&ext), "--place", place]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let sym = dir.path().join(format!("w{place}.json"));
        std::fs::write(&sym, &o.stdout).unwrap();
        let o = k2norm(&["is-norm", path(&ext), path(&sym), "--json"]);
        assert_eq!(o.status.code(), Some(10));
        let want: usize = place.parse().unwrap();
        assert_eq!(json(&o)["failing_places"], serde_json::json!([want]));
    }
    let o = k2norm(&["witness", path(&data("qi.ext.json")), "--place", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let reducible = write(
        "red.json",
        r#"{"name":"F","var":"x","min_poly":["-1","0","1"]}"#,
    );
    let o = k2norm(&["places", path(&reducible)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("min_poly"), "{}", stderr(&o));

    let zero_den = write(
        "zd.json",
        r#"{"name":"F","var":"x","min_poly":["3/0","1"]}"#,
    );
    let o = k2norm(&["places", path(&zero_den)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("min_poly[0]"), "{}", stderr(&o));

    let unknown = write(
        "uk.json",
        r#"{"name":"F","var":"x","min_poly":["0","1"],"extra":1}"#,
    );
    assert_eq!(k2norm(&["places", path(&unknown)]).status.code(), Some(2));

    let zero_entry = write("z.json", r#"[{"f":["0"],"g":["1"],"e":1}]"#);
    let o = k2norm(&["is-norm", path(&data("qi.ext.json")), path(&zero_entry)]);
    assert_eq!(o.status.code(), Some(3));

    let missing = dir.path().join("missing.json");
    assert_eq!(k2norm(&["places", path(&missing)]).status.code(), Some(2));
    assert_eq!(k2norm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(k2norm(&["--help"]).status.code(), Some(0));
}
