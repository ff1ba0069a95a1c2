//! The file formats behind the `sdlat` command line: distribution and flow
//! JSON documents, the tail-oracle CSV, and the exported `s,value` tables.
//! This example drives the same entry point as the binary.
//!
//! Run with `cargo run -p sdlattice --example file_formats`.

use sdlattice::cli;

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    std::fs::write(
        dir.path().join("spread.json"),
        r#"{"points":[{"x":0.0,"p":0.5},{"x":2.0,"p":0.5}]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("point.json"),
        r#"{"points":[{"x":1.5,"p":1.0}]}"#,
    )
    .unwrap();

    let mut tail = String::from("s,T,U\n");
    let mut s = 0.0;
    while s <= 10.0 {
        tail.push_str(&format!("{s},{},{}\n", (-s as f64).exp(), (s + 1.0) * (-s as f64).exp()));
        s += 0.01;
    }
    std::fs::write(dir.path().join("tail.csv"), tail).unwrap();

    let runs: Vec<Vec<String>> = vec![
        vec!["check".into(), "--order".into(), "st".into(), path("spread.json"), path("point.json")],
        vec!["join".into(), "--order".into(), "icx".into(), path("spread.json"), path("point.json")],
        vec!["w1".into(), path("spread.json"), path("point.json")],
        vec![
            "psi".into(),
            "--mode".into(),
            "tight".into(),
            "--levels".into(),
            "3".into(),
            "--tail".into(),
            path("tail.csv"),
            "--out".into(),
            path("psi.csv"),
        ],
    ];
    for args in runs {
        println!("$ sdlat {}", args.join(" "));
        let mut argv = vec!["sdlat".to_string()];
        argv.extend(args);
        let code = cli::run(argv);
        println!("  (exit code {code})");
    }

    println!("exported table head:");
    let table = std::fs::read_to_string(dir.path().join("psi.csv")).unwrap();
    for line in table.lines().take(5) {
        println!("  {line}");
    }
}
