use std::path::PathBuf;
use std::process::{Command, Output};

use dualstokes::movie::parse_movie;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualstokes"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dualstokes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn corpus_verifies() {
    let o = run(&["verify", "--corpus"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS:"));
}

#[test]
fn random_sweep_is_deterministic() {
    let args = [
        "verify", "--random", "40", "--max-n", "12", "--seed", "7", "--format", "records",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().last().unwrap().starts_with("summary\t"));
}

#[test]
fn broken_euler_count_is_named() {
    let bad = scratch(
        "bad.curve",
        "curve bad\nvertex 0 0 1 2 3\nvertex 1 4 5 6 7\ntwin 0 4\ntwin 1 5\ntwin 2 7\ntwin 3 6\n\
         strand 0 6\nstrand 6 1\nstrand 1 7\nstrand 7 0\nouter 0\n",
    );
    let o = run(&["verify", bad.to_str().unwrap(), "corpus/trefoil.curve"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("Euler check failed"), "{out}");
    assert!(
        out.contains("trefoil"),
        "the run continues past the bad file"
    );
    let o = run(&["curve", "parse", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Euler check"));
}

#[test]
fn curve_subcommands() {
    for sub in ["parse", "alexander", "stokes", "signs", "invariants"] {
        let o = run(&["curve", sub, "corpus/one-kink.curve"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(!o.stdout.is_empty());
    }
    let o = run(&["curve", "invariants", "corpus:one-kink"]);
    assert!(stdout(&o).contains("st1 point=1 edge=1 region=1 pass"));
    let p = run(&["curve", "invariants", "corpus:trefoil"]);
    let q = run(&[
        "--epsilon-convention",
        "opposite",
        "curve",
        "invariants",
        "corpus:trefoil",
    ]);
    assert!(stdout(&p).contains("st point=1 "));
    assert!(stdout(&q).contains("st point=-1 "));
    assert_eq!(
        run(&["curve", "parse", "missing.curve"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["--epsilon-convention", "sideways", "verify", "--corpus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn shipped_files_match_the_corpus() {
    for name in dualstokes::corpus::NAMES {
        let o = run(&["gen", "--corpus", name]);
        let file = std::fs::read_to_string(format!(
            "{}/corpus/{name}.curve",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap();
        assert_eq!(stdout(&o), file, "{name}");
    }
}

#[test]
fn surface_and_findiff() {
    for args in [["surface", "local-check"], ["findiff", "sweep"]] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("PASS:"));
    }
}

#[test]
fn movie_commands() {
    let o = run(&["movie", "st2", "movies/triple-segment.movie", "--frames"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("st2 1\n"));
    let frames = &out[out.find("\nmovie triple-segment").unwrap()..];
    assert_eq!(parse_movie(frames).unwrap().frames.len(), 9);

    let compare = |sigma: &str| {
        run(&[
            "movie",
            "compare",
            "movies/nested-no-pair.movie",
            "movies/nested-pair.movie",
            "--sigma",
            sigma,
            "--ds1",
            "3",
        ])
    };
    let o = compare("-1");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dst2 2\n"));
    assert_eq!(compare("+1").status.code(), Some(1));
    assert_eq!(compare("0").status.code(), Some(2));
}

#[test]
fn gen_is_seeded() {
    let a = run(&["gen", "-n", "6", "--seed", "11"]);
    let b = run(&["gen", "-n", "6", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, run(&["gen", "-n", "6", "--seed", "12"]).stdout);
    assert_eq!(run(&["gen", "-n", "0"]).status.code(), Some(2));
}
