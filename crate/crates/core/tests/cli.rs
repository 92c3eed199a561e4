use std::path::PathBuf;
use std::process::Command;

use polylog::cli::run;

fn polylog(args: &[&str]) -> (i32, String) {
    let mut full = vec!["polylog"];
    full.extend_from_slice(args);
    let out = run(full);
    (out.code, out.stdout + &out.stderr)
}

fn structured(args: &[&str]) -> (i32, String) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    polylog(&full)
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(' '))
}

fn scratch_dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("polylog-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn golden_expressions_round_trip() {
    let corpus = include_str!("golden/expressions.txt");
    let mut n = 0;
    for line in corpus.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let parts: Vec<&str> = line.split(" | ").collect();
        let [input, result, li] = parts[..] else { panic!("bad corpus line {line}") };
        let (code, out) = structured(&["normalize", input]);
        assert_eq!(code, 0, "{input}: {out}");
        assert_eq!(field(&out, "result"), Some(result), "{input}");
        assert_eq!(field(&out, "li").unwrap_or(result), li, "{input}");
        // the printed forms parse back to the same class
        for printed in [result, li] {
            let (_, again) = structured(&["normalize", printed]);
            assert_eq!(field(&again, "result"), Some(result), "{printed}");
        }
        n += 1;
    }
    assert!(n >= 20);
}

#[test]
fn exit_codes() {
    assert_eq!(polylog(&["verify", "five-term", "--a", "a", "--b", "b"]).0, 0);
    assert_eq!(polylog(&["verify", "stuffle-antipode", "--sym", "Li[2,2](x,y)"]).0, 2);
    assert_eq!(polylog(&["normalize", "cor(0,1"]).0, 1);
    assert_eq!(polylog(&["normalize"]).0, 1);
    assert_eq!(polylog(&["no-such-command"]).0, 1);
    assert_eq!(polylog(&["--help"]).0, 0);
    assert_eq!(polylog(&["--version"]).0, 0);
    assert_eq!(polylog(&["verify", "five-term", "--a", "1", "--b", "2"]).0, 1);
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["verify", "twenty-two", "--a", "2", "--b", "3", "--c", "5"];
    let (code, a) = structured(&args);
    let (_, b) = structured(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("polylog-report 1\ncommand verify twenty-two\n"), "{a}");
    assert!(a.ends_with("end\n"));
    assert!(code == 0 || code == 2);
    assert_eq!(field(&a, "stage1"), Some("zero"));
    assert!(field(&a, "stage2").is_some());
}

#[test]
fn human_output_uses_li_notation() {
    let (code, out) = polylog(&["normalize", "Li[2](x) + Li[2](1-x)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Li[2](-x+1) + Li[2](x)\n"), "{out}");
}

#[test]
fn commands_run() {
    for args in [
        vec!["cobracket", "Li[3](x)"],
        vec!["cobracket", "--truncated", "cor(0,1,x,y,z)"],
        vec!["specialize", "Li[2](t)", "--var", "t", "--at", "inf"],
        vec!["coproduct", "II(0;1,0;x)"],
        vec!["coproduct", "--reduced", "Li[3](x)"],
        vec!["li-expand", "Li[1,2](x,y)"],
        vec!["depth", "cor(a,b,c,d)"],
        vec!["weight1", "cor(0,x) - cor(0,x^2)"],
        vec!["verify", "shuffle", "--xs", "a,b,c", "--n1", "1"],
        vec!["verify", "reversal", "--xs", "1,2,3,5"],
        vec!["verify", "distribution", "--n", "2", "--xs", "x,y,z"],
        vec!["verify", "inversion-depth1", "--n", "2", "--x", "-1"],
        vec!["verify", "cyclic-depth", "--xs", "x,y,z", "--i", "1"],
        vec!["verify", "li-hom", "--w1", "Li[1](x)", "--w2", "Li[2](y)"],
        vec!["verify", "distribution-hopf", "--n", "2", "--sym", "II(0;x;y)"],
        vec!["verify", "inversion", "--sym", "Li[1,2](x,y)"],
        vec!["selftest", "--samples", "4"],
    ] {
        let (code, out) = polylog(&args);
        assert_eq!(code, 0, "{args:?}: {out}");
    }
}

#[test]
fn specialization_values() {
    let (_, out) = structured(&["specialize", "cor(0,1,t+2)", "--var", "t", "--at", "1"]);
    let (_, want) = structured(&["normalize", "cor(0,1,3)"]);
    assert_eq!(field(&out, "result"), field(&want, "result"));
}

#[test]
fn derive_save_and_replay() {
    let dir = scratch_dir("derive");
    let db = dir.join("rel.db");
    let fam = dir.join("dup.plg");
    std::fs::write(&fam, "Li[2](t^2) - 2*Li[2](t) - 2*Li[2](-t)\n").unwrap();
    let dbs = db.to_str().unwrap();
    let fams = fam.to_str().unwrap();
    let (code, out) = polylog(&["--db", dbs, "derive", "--family", fams, "--var", "t", "--from", "0", "--to", "1", "--save"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("2*Li[2](-1)"), "{out}");
    let saved = std::fs::read_to_string(&db).unwrap();
    let (code, out) = polylog(&["--db", dbs, "relations", "replay"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(std::fs::read_to_string(&db).unwrap(), saved);
    let (code, out) = polylog(&["--db", dbs, "relations", "list"]);
    assert_eq!(code, 0);
    assert!(out.contains("duplication") || out.contains("derived"), "{out}");
    std::fs::write(&db, saved.replace("element -2*", "element -3*")).unwrap();
    assert_eq!(polylog(&["--db", dbs, "relations", "replay"]).0, 1);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn seeded_database_file() {
    let dir = scratch_dir("seed");
    let db = dir.join("seeded.db");
    let dbs = db.to_str().unwrap();
    assert_eq!(polylog(&["--db", dbs, "relations", "seed"]).0, 0);
    let (code, out) = structured(&["--db", dbs, "verify", "reversal", "--xs", "x0,x1,x2,x3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(polylog(&["--db", dbs, "--order", "4", "relations", "list"]).0, 1);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn config_file_and_precedence() {
    let dir = scratch_dir("config");
    let cfg = dir.join("polylog.cfg");
    std::fs::write(&cfg, "polylog-config 1\nvars x, y\nformat structured\n").unwrap();
    let c = cfg.to_str().unwrap();
    let (code, out) = polylog(&["--config", c, "normalize", "Li[2](x)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("polylog-report 1"), "{out}");
    // flags beat the file
    let (_, out) = polylog(&["--config", c, "--format", "human", "normalize", "Li[2](x)"]);
    assert!(out.starts_with("Li[2](x)"), "{out}");
    // the file restricts the variables
    assert_eq!(polylog(&["--config", c, "normalize", "Li[2](z)"]).0, 1);
    assert_eq!(polylog(&["--vars", "z", "normalize", "Li[2](z)"]).0, 0);
    std::fs::write(&cfg, "polylog-config 9\n").unwrap();
    assert_eq!(polylog(&["--config", c, "normalize", "x"]).0, 1);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn database_from_the_environment() {
    let dir = scratch_dir("env");
    let db = dir.join("env.db");
    let bin = env!("CARGO_BIN_EXE_polylog");
    let out = Command::new(bin).args(["relations", "seed"]).env("POLYLOG_DB", &db).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(db.exists());
    // an explicit flag wins over the environment
    let other = dir.join("flag.db");
    let out = Command::new(bin).args(["--db", other.to_str().unwrap(), "relations", "seed"]).env("POLYLOG_DB", &db).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(other.exists());
    // nowhere to write the seed
    let out = Command::new(bin).args(["relations", "seed"]).env_remove("POLYLOG_DB").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(dir).ok();
}
