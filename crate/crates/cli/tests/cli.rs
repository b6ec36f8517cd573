use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn weyldft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyldft")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn a2_point_and_weight_counts() {
    let out = weyldft(&["points", "--algebra", "A2", "--sigma", "1", "--M", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["algebra"], "A2");
    assert_eq!(v["M"], 7);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 12);
    let eps: u64 = pts.iter().map(|p| p["eps"].as_u64().unwrap()).sum();
    assert_eq!(eps, 49);
    assert!(String::from_utf8_lossy(&out.stderr).contains("12 points"));

    let out = weyldft(&["weights", "--algebra", "A2", "--sigma", "e", "--M", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["weights"].as_array().unwrap().len(), 5);
}

#[test]
fn csv_grid_has_one_row_per_point() {
    let out = weyldft(&["points", "--algebra", "A2", "--M", "7", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kac,q,eps"));
    assert_eq!(lines.next(), Some("7 0 0,0 0,1"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn level_too_small_exits_3() {
    let out = weyldft(&["points", "--algebra", "A2", "--sigma", "e", "--M", "3"]);
    assert_eq!(code(&out), 3);
    let out = weyldft(&["points", "--algebra", "A2", "--sigma", "e", "--M", "3", "--relaxed-M"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["relaxed"], true);
}

#[test]
fn invalid_configuration_exits_2() {
    for args in [
        &["points", "--algebra", "Q3", "--M", "7"][..],
        &["points", "--algebra", "D4", "--sigma", "s", "--M", "9"][..],
        &["points", "--algebra", "A2", "--sigma", "x", "--M", "7"][..],
        &["points", "--algebra", "A2"][..],
    ] {
        assert_eq!(code(&weyldft(args)), 2, "{args:?}");
    }
}

#[test]
fn count_single_query_and_sweep() {
    let out = weyldft(&["count", "--algebra", "A2", "--sigma", "1", "--M", "7"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("A2,identity,7,12,12,12,12,true"));

    let out = weyldft(&["count", "--algebra", "A1..A4", "--M", "1..12"]);
    assert_eq!(code(&out), 3);
    let out = weyldft(&["count", "--algebra", "A1..A4", "--M", "1..12", "--relaxed-M"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 4 * 2 * 12);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn count_e7_without_weyl_enumeration() {
    let out = weyldft(&["count", "--algebra", "E7", "--sigma", "e", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["agree"] == true));
}

#[test]
fn roundtrip_on_random_samples() {
    let out = weyldft(&["transform", "--algebra", "C2", "--sigma", "s", "--M", "8", "--random", "11", "--roundtrip"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["transform"], "fourier");
    assert!(v["roundtrip_error"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn delta_sample_populates_every_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let grid = weyldft(&["points", "--algebra", "A2", "--M", "7", "--format", "csv"]);
    let text = String::from_utf8(grid.stdout).unwrap();
    let mut csv = String::from("kac,re,im\n");
    for (i, line) in text.lines().skip(1).enumerate() {
        let kac = line.split(',').next().unwrap();
        csv.push_str(&format!("{kac},{},0\n", if i == 1 { 1 } else { 0 }));
    }
    let input = dir.path().join("delta.csv");
    fs::write(&input, csv).unwrap();
    let out = weyldft(&["transform", "--algebra", "A2", "--M", "7", "--input", path(&input)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 12);
    for c in coeffs {
        let (re, im) = (c["value"]["re"].as_f64().unwrap(), c["value"]["im"].as_f64().unwrap());
        assert!(re.hypot(im) > 1e-6, "{c}");
    }
}

#[test]
fn hartley_spectrum_is_real() {
    let out = weyldft(&["transform", "--algebra", "G2", "--M", "9", "--random", "2", "--hartley", "--roundtrip"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["transform"], "hartley");
    assert!(v["coefficients"].as_array().unwrap().iter().all(|c| c["value"].is_f64()));
    assert!(v["roundtrip_error"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn saved_samples_reproduce_the_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("s.csv");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let base = ["transform", "--algebra", "B3", "--sigma", "l", "--M", "9"];
    let mut first = base.to_vec();
    first.extend(["--random", "5", "--save-samples", path(&samples), "--output", path(&a)]);
    assert_eq!(code(&weyldft(&first)), 0);
    let mut second = base.to_vec();
    second.extend(["--input", path(&samples), "--output", path(&b)]);
    assert_eq!(code(&weyldft(&second)), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn misaligned_samples_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("s.csv");
    let out = weyldft(&[
        "transform", "--algebra", "A2", "--M", "7", "--random", "1", "--save-samples", path(&samples),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&samples).unwrap();
    let lines: Vec<&str> = text.lines().collect();

    let short = dir.path().join("short.csv");
    fs::write(&short, lines[..lines.len() - 1].join("\n")).unwrap();
    assert_eq!(code(&weyldft(&["transform", "--algebra", "A2", "--M", "7", "--input", path(&short)])), 5);

    let dup = dir.path().join("dup.csv");
    let mut d = lines.clone();
    let last = d.len() - 1;
    d[last] = d[1];
    fs::write(&dup, d.join("\n")).unwrap();
    assert_eq!(code(&weyldft(&["transform", "--algebra", "A2", "--M", "7", "--input", path(&dup)])), 5);
}

#[test]
fn missing_input_file_exits_1() {
    let out = weyldft(&["transform", "--algebra", "A2", "--M", "7", "--input", "/nonexistent/samples.csv"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn large_weyl_group_exits_7() {
    let out = weyldft(&["transform", "--algebra", "E7", "--M", "19", "--random", "1"]);
    assert_eq!(code(&out), 7);
}

#[test]
fn verify_passes_and_detects_corruption() {
    let out = weyldft(&["verify", "--algebra", "A2", "--M", "7"]);
    assert_eq!(code(&out), 0);
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.lines().all(|l| l.starts_with("PASS")), "{report}");

    for sigma in ["1", "e", "s", "l"] {
        let ms = match sigma {
            "1" => 0,
            "e" => 5,
            _ => 3,
        };
        let m = (ms + 2).to_string();
        let out = weyldft(&["verify", "--algebra", "G2", "--sigma", sigma, "--M", &m]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains("PASS centre-free"));
    }

    let out = weyldft(&["verify", "--algebra", "A2", "--M", "7", "--corrupt-eps"]);
    assert_eq!(code(&out), 6);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let p = dir.path().join(format!("{i}.json"));
            let out = weyldft(&[
                "transform", "--algebra", "B3", "--M", "8", "--random", "9", "--roundtrip", "--output", path(&p),
            ]);
            assert_eq!(code(&out), 0);
            fs::read(&p).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}
