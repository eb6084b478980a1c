use scsort_core::cli::{histogram_companion, run};
use scsort_core::Permutation;

fn scsort(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("scsort").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = scsort(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn documented_invocations() {
    assert_eq!(ok(&["map", "--sigma", "213", "--perm", "52413"]), "21345\n");
    assert_eq!(
        ok(&["fertility", "--sigma", "213", "--perm", "1243"]),
        "2\n"
    );
    assert_eq!(
        ok(&["construct", "--sigma", "123", "--n", "3", "--preimages"]),
        "3214\n4123\n4312\n4321\n"
    );
}

#[test]
fn map_trace_and_cro() {
    let out = ok(&["map", "--sigma", "123", "--perm", "321", "--trace"]);
    assert_eq!(
        out,
        "PUSH 3\nPUSH 2\nPOP_SIGMA 2\nPUSH 1\nPOP_DRAIN 1\nPOP_DRAIN 3\nOUTPUT 213\nCRO 1\n"
    );
    assert_eq!(
        ok(&["map", "--sigma", "213", "--perm", "52413", "--cro"]),
        "21345\nCRO 2\n"
    );
    let json = ok(&[
        "map", "--sigma", "213", "--perm", "52413", "--format", "json", "--trace",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["output"], "21345");
    assert_eq!(v["cro"], 2);
    assert_eq!(v["events"].as_array().unwrap().len(), 10);
}

#[test]
fn separated_permutations() {
    let out = ok(&["map", "--sigma", "123", "--perm", "10 3 1 2 4 5 6 7 8 9"]);
    let q: Permutation = out.trim().parse().unwrap();
    assert_eq!(q.len(), 10);
    assert_eq!(q.last(), 10);
    assert!(out.contains(' '));
}

#[test]
fn preimages_equals_fertility_list() {
    for (sigma, perm) in [
        ("213", "1234"),
        ("312", "1243"),
        ("123", "3214"),
        ("231", "12"),
    ] {
        let a = ok(&["preimages", "--sigma", sigma, "--perm", perm]);
        let b = ok(&["fertility", "--sigma", sigma, "--perm", perm, "--list"]);
        let c = ok(&[
            "fertility",
            "--sigma",
            sigma,
            "--perm",
            perm,
            "--list",
            "--no-prune",
        ]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        let count: usize = ok(&["fertility", "--sigma", sigma, "--perm", perm])
            .trim()
            .parse()
            .unwrap();
        assert_eq!(a.lines().count(), count);
    }
    assert_eq!(
        ok(&["preimages", "--sigma", "312", "--perm", "1243"]),
        "3142\n3214\n3421\n"
    );
}

#[test]
fn printed_permutations_reparse() {
    let outputs = [
        ok(&["construct", "--sigma", "231", "--n", "9", "--preimages"]),
        ok(&["preimages", "--sigma", "213", "--perm", "1243567"]),
        ok(&["witness", "--sigma", "132", "--n", "11"]),
    ];
    for out in outputs {
        for line in out.lines() {
            let q: Permutation = line.parse().unwrap();
            assert_eq!(q.to_string(), line);
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 8] = [
        &["map", "--sigma", "214", "--perm", "123"],
        &["map", "--sigma", "213", "--perm", "1224"],
        &["map", "--sigma", "213"],
        &[
            "fertility",
            "--sigma",
            "213",
            "--perm",
            "1 2 3 4 5 6 7 8 9 10 11 12",
        ],
        &["construct", "--sigma", "213", "--n", "5"],
        &["spectrum", "--sigma", "123", "--n", "0"],
        &["verify", "--max-n", "2"],
        &["verify", "--claims", "lemma9"],
    ];
    for args in cases {
        let (code, out, err) = scsort(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
    let (_, _, err) = scsort(&["map", "--sigma", "214", "--perm", "123"]);
    assert!(err.contains("--sigma"), "{err}");
    let (_, _, err) = scsort(&["map", "--sigma", "213", "--perm", "12x"]);
    assert!(err.contains("--perm"), "{err}");
    let (_, _, err) = scsort(&["construct", "--sigma", "213", "--n", "5"]);
    assert!(err.contains("n >= 6"), "{err}");
}

#[test]
fn force_lifts_the_guard() {
    let (code, out, _) = scsort(&[
        "fertility",
        "--sigma",
        "123",
        "--perm",
        "12 1 2 3 4 5 6 7 8 9 10 11",
        "--force",
    ]);
    assert_eq!(code, 0);
    assert!(out.trim().parse::<u64>().is_ok());
}

#[test]
fn spectrum_outputs() {
    let text = ok(&["spectrum", "--sigma", "213", "--n", "4"]);
    assert!(text.starts_with("sigma 213 n 4 total 24\nfertility count\n"));

    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("s213.csv");
    ok(&[
        "spectrum",
        "--sigma",
        "213",
        "--n",
        "4",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    let counts = std::fs::read_to_string(&csv_path).unwrap();
    assert!(counts.starts_with("permutation,fertility\n"));
    assert_eq!(counts.lines().count(), 25);
    assert!(counts.contains("\n4321,1\n"));
    assert!(counts.contains("\n1234,4\n"));
    let hist = std::fs::read_to_string(histogram_companion(&csv_path)).unwrap();
    assert!(hist.starts_with("fertility,count\n"));
    let total: u64 = hist
        .lines()
        .skip(1)
        .map(|l| {
            let (f, c) = l.split_once(',').unwrap();
            f.parse::<u64>().unwrap() * c.parse::<u64>().unwrap()
        })
        .sum();
    assert_eq!(total, 24);

    let json_path = dir.path().join("s.json");
    ok(&[
        "spectrum",
        "--sigma",
        "321",
        "--n",
        "3",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(v["sigma"], "321");
    assert_eq!(v["n"], 3);
    assert_eq!(v["counts"].as_object().unwrap().len(), 6);

    let stdout_csv = ok(&["spectrum", "--sigma", "123", "--n", "3", "--format", "csv"]);
    assert!(stdout_csv.contains("permutation,fertility"));
    assert!(stdout_csv.contains("fertility,count"));
}

#[test]
fn verify_exit_and_formats() {
    let out = ok(&[
        "verify",
        "--max-n",
        "5",
        "--claims",
        "figure1,table_small_213",
    ]);
    assert!(out.contains("figure1"));
    assert!(out.ends_with("2 claims, 0 failed\n"));
    let json = ok(&[
        "verify", "--max-n", "4", "--claims", "lemma5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["claim_id"], "lemma5");
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(
        json,
        ok(&["verify", "--max-n", "4", "--claims", "lemma5", "--format", "json"])
    );
}

#[test]
fn witness_subcommand() {
    assert_eq!(ok(&["witness", "--sigma", "213", "--n", "3"]), "13524\n");
    assert_eq!(ok(&["witness", "--sigma", "213", "--n", "5"]), "1243567\n");
    assert_eq!(ok(&["witness", "--sigma", "123", "--n", "2"]), "213\n");
    let (code, _, _) = scsort(&["witness", "--sigma", "213", "--n", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = scsort(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("spectrum"));
}
