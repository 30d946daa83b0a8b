use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sqbath"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sqbath-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn value(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing {key}"))
        .parse()
        .unwrap()
}

#[test]
fn evolve_writes_csv_and_svg() {
    let out = scratch("evolve.csv");
    let svg = scratch("evolve.svg");
    let o = run(&["evolve", "--t-max", "1", "--dt", "0.1", "--out", out.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,c_rel,concurrence,discord,consonance,lqu,qfi,max_fidelity,fidelity_deviation,det_t,trace_err,min_eig"
    );
    assert_eq!(lines.count(), 11);
    assert!(!csv.contains('\r'));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn config_file_with_flag_override() {
    let cfg = scratch("sweep.cfg");
    std::fs::write(&cfg, "# sweep\nrange = 0.2:0.4:0.1\nt = 0.5\ntemp = 2\n").unwrap();
    let o = run(&["sweep-r12", "--config", cfg.to_str().unwrap(), "--range", "0.3:0.5:0.1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = String::from_utf8(o.stdout).unwrap();
    let first: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(first.len(), 3);
    assert!((first[0] - 0.3).abs() < 1e-12 && (first[2] - 0.5).abs() < 1e-12);
}

#[test]
fn config_errors_exit_with_two() {
    let cfg = scratch("typo.cfg");
    std::fs::write(&cfg, "r21 = 0.5\n").unwrap();
    assert_eq!(run(&["evolve", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["sweep-r12", "--range", "0.005:1:0.1"]).status.code(), Some(2));
    assert_eq!(run(&["evolve", "--dt", "-0.1"]).status.code(), Some(2));
    assert_eq!(run(&["evolve", "--coherence-basis", "energy"]).status.code(), Some(2));
    assert_eq!(run(&["state", "/nonexistent/state.txt"]).status.code(), Some(2));
}

#[test]
fn state_report_for_bell_state() {
    let file = scratch("bell.txt");
    std::fs::write(&file, "0.5 0 0 0.5\n0 0 0 0\n0 0 0 0\n0.5 0 0 0.5\n").unwrap();
    let o = run(&["state", file.to_str().unwrap(), "--coherence-basis", "computational"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = String::from_utf8(o.stdout).unwrap();
    for key in ["c_rel", "concurrence", "discord", "consonance", "lqu", "max_fidelity"] {
        assert!((value(&report, key) - 1.0).abs() < 1e-8, "{key}");
    }
    assert!(value(&report, "fidelity_deviation").abs() < 1e-12);
    assert!(report.contains("useful = true"));
}

#[test]
fn state_report_with_monte_carlo() {
    let file = scratch("eg.txt");
    std::fs::write(&file, "0 0 0 0\n0 1+0i 0 0\n0 0 0 0\n0 0 0 0\n").unwrap();
    let cfg = scratch("mc.cfg");
    std::fs::write(&cfg, "mc_samples = 20000\n").unwrap();
    let args = ["state", file.to_str().unwrap(), "--config", cfg.to_str().unwrap(), "--seed", "3"];
    let a = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let report = String::from_utf8(a.stdout.clone()).unwrap();
    assert!((value(&report, "mc_mean_fidelity") - 2.0 / 3.0).abs() < 0.01);
    assert_eq!(run(&args).stdout, a.stdout);
}

#[test]
fn malformed_state_files_are_config_errors() {
    for (name, text) in [
        ("short.txt", "1 0 0 0\n0 0 0 0\n0 0 0 0\n"),
        ("junk.txt", "1 0 0 0\n0 0 0 0\n0 0 x 0\n0 0 0 0\n"),
        ("trace.txt", "1 0 0 0\n0 1 0 0\n0 0 0 0\n0 0 0 0\n"),
        ("neg.txt", "1.5 0 0 0\n0 -0.5 0 0\n0 0 0 0\n0 0 0 0\n"),
    ] {
        let file = scratch(name);
        std::fs::write(&file, text).unwrap();
        let o = run(&["state", file.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn qfi_mode_reports_step_halving() {
    let o = run(&["qfi", "--r12", "0.5", "--t-max", "2", "--dt", "0.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("t,qfi,qfi_half_step,rel_change\n"));
    for line in csv.lines().skip(2) {
        let rel: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(rel <= 1e-4, "{line}");
    }
}

#[test]
fn sweep_temp_rows_are_physical() {
    let o = run(&["sweep-temp", "--range", "0.5:3:0.5", "--squeeze", "0.6", "--phi", "-1.0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = String::from_utf8(o.stdout).unwrap();
    for line in csv.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cells[10] <= 1e-10 && cells[11] >= -1e-9, "{line}");
    }
}
