use std::path::Path;
use std::process::{Command, Output};

use rwsum::report::{parse_csv, ExperimentConfig, Mode};

fn rwsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rwsum")).args(args).output().unwrap()
}

fn small(dir: &Path, preset: &str, edit: impl Fn(&mut ExperimentConfig)) -> String {
    let path = dir.join(format!("{preset}.toml"));
    let p = path.to_str().unwrap();
    assert!(rwsum(&["preset", preset, "--samples", "20000", "--reps", "2", "--write-config", p]).status.success());
    let mut cfg = ExperimentConfig::load(&path).unwrap();
    edit(&mut cfg);
    cfg.save(&path).unwrap();
    p.to_owned()
}

#[test]
fn written_preset_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let p = small(dir.path(), "table1", |_| {});
    let cfg = ExperimentConfig::load(Path::new(&p)).unwrap();
    assert_eq!(cfg.mode, Mode::Joint);
    assert_eq!(cfg.mc.n_samples, 20_000);
}

#[test]
fn sum_to_stdout_and_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(dir.path(), "table2", |_| {});
    let out = rwsum(&["sum", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(header[0], "threshold");
    assert_eq!(rows.len(), 8);
    let file = dir.path().join("out.csv");
    assert!(rwsum(&["sum", "--config", &cfg, "--out", file.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read(&file).unwrap(), out.stdout);
}

#[test]
fn joint_markdown_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(dir.path(), "table1", |_| {});
    let a = rwsum(&["joint", "--config", &cfg, "--format", "markdown"]);
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("| (x,y) |"));
    assert_eq!(text.lines().count(), 10);
    let b = rwsum(&["joint", "--config", &cfg, "--format", "markdown", "--seed", "99"]);
    assert_ne!(String::from_utf8(b.stdout).unwrap(), text);
}

#[test]
fn subcommand_must_match_mode() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small(dir.path(), "table2", |_| {});
    let out = rwsum(&["joint", "--config", &cfg]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("mode"));
    assert!(!rwsum(&["risk", "--config", &cfg]).status.success());
    assert!(!rwsum(&["sum"]).status.success());
}

#[test]
fn empty_grid_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    let cfg = small(dir.path(), "table2", |_| {});
    let text = std::fs::read_to_string(&cfg).unwrap();
    let start = text.find("[grid]").unwrap();
    let end = text[start..].find("\n\n").map_or(text.len(), |i| start + i);
    std::fs::write(&path, format!("{}[grid]{}", &text[..start], &text[end..])).unwrap();
    let out_file = dir.path().join("never.csv");
    let out = rwsum(&["sum", "--config", path.to_str().unwrap(), "--out", out_file.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid.thresholds"));
    assert!(!out_file.exists());
}

#[test]
fn risk_and_diag_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let risk = small(dir.path(), "table1", |c| {
        c.mode = Mode::RiskSum;
        c.model.weights = rwsum::WeightModel::discount_product((0.9, 1.0), (0.85, 1.0), 2, 2).unwrap();
        c.grid.points = vec![[10.0, 12.0], [20.0, 25.0]];
    });
    let out = rwsum(&["risk", "--config", &risk]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(&header[..2], ["x", "y"]);
    assert_eq!(rows.len(), 2);

    let diag = small(dir.path(), "table2", |c| {
        c.mode = Mode::Diag;
        c.grid.thresholds = vec![50.0, 100.0];
    });
    let out = rwsum(&["diag", "--config", &diag]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("## Diagnostics"));
}

#[test]
fn rejects_bad_flags() {
    assert!(!rwsum(&["preset", "table3"]).status.success());
    assert!(!rwsum(&["preset", "table2", "--format", "json"]).status.success());
    assert!(!rwsum(&["preset", "table2", "--reps", "1"]).status.success());
    assert!(!rwsum(&["preset", "table2", "--threads", "0", "--samples", "1000", "--reps", "2"]).status.success());
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            ExperimentConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert_eq!(seen, 4);
}
