//! End-to-end checks of the binary: determinism of emitted bytes, exit
//! codes, validation behavior, and the CSV round-trip contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use realclock_cli::table::{format_number, parse_csv};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_realclock")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("realclock-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).output().unwrap()
}

const SPIN_CONFIG: &str = "\
[scenario]
kind = spin-cavity
seed = 42

[cavity]
n_env = 3
b_field = 1.0
gamma1 = 2.0
gamma2 = 1.0
coupling = 0.8
tau_min = 0.0
tau_max = 1.5
tau_points = 31
theta = 0.02
amplitudes = random
";

#[test]
fn identical_config_and_seed_reproduce_every_byte() {
    let dir = scratch("determinism");
    let config = write_config(&dir, "run.cfg", SPIN_CONFIG);
    let out_a = dir.join("a");
    let out_b = dir.join("b");
    for out in [&out_a, &out_b] {
        let output = run(&[
            "spin-cavity",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{output:?}");
    }
    let mut names: Vec<String> = fs::read_dir(&out_a)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, vec!["manifest.txt", "spin_cavity.csv"]);
    for name in &names {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn seed_override_changes_random_draws_but_stays_deterministic() {
    let dir = scratch("seed-override");
    let config = write_config(&dir, "run.cfg", SPIN_CONFIG);
    let outs: Vec<PathBuf> = (0..3).map(|i| dir.join(format!("o{i}"))).collect();
    for (idx, out) in outs.iter().enumerate() {
        let seed = if idx == 2 { "42" } else { "7" };
        let output = run(&[
            "spin-cavity",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--seed",
            seed,
        ]);
        assert!(output.status.success());
    }
    let read = |i: usize| fs::read_to_string(outs[i].join("spin_cavity.csv")).unwrap();
    assert_eq!(read(0), read(1), "same override, same bytes");
    assert_ne!(read(0), read(2), "different seed must change random draws");
    assert!(read(2).contains("# seed = 42"), "seed echoed verbatim");
}

#[test]
fn invalid_config_exits_2_and_reports_every_problem() {
    let dir = scratch("validation");
    // Missing b_field/gamma2/tau_max, an ill-typed number, and a stray key.
    let config = write_config(
        &dir,
        "bad.cfg",
        "[scenario]\nkind = spin-cavity\nseed = 1\n\n[cavity]\nn_env = 3\ngamma1 = oops\ncoupling = 0.5\ntau_points = 31\nbanana = 1\n",
    );
    let out = dir.join("out");
    let output = run(&[
        "spin-cavity",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    let problems = stderr.lines().filter(|l| l.trim_start().starts_with("- ")).count();
    assert!(
        problems >= 5,
        "expected all problems listed, got {problems}:\n{stderr}"
    );
    assert!(stderr.contains("banana"), "unknown keys are reported");
    assert!(!out.exists(), "no partial outputs on config errors");
}

#[test]
fn mismatched_subcommand_is_a_validation_error() {
    let dir = scratch("kind-mismatch");
    let config = write_config(&dir, "run.cfg", SPIN_CONFIG);
    let output = run(&[
        "evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn numerical_guards_exit_3() {
    let dir = scratch("guard");
    // The step is far too large for the fastest phase of this system.
    let config = write_config(
        &dir,
        "guard.cfg",
        "[scenario]\nkind = evolve\nseed = 1\n\n[system]\nlevels = 0.0, 10.0\n\n[clock]\nprofile = gaussian\nt_planck = 0.01\n\n[grid]\nt_start = 0.1\nt_end = 2.0\npoints = 10\n\n[ode]\nstep = 0.5\n",
    );
    let out = dir.join("out");
    let output = run(&[
        "evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("step"), "guard message names the cause: {stderr}");
    assert!(!out.exists(), "no partial outputs on guard errors");
}

#[test]
fn missing_config_file_exits_4() {
    let dir = scratch("io");
    let output = run(&[
        "evolve",
        "--config",
        dir.join("nope.cfg").to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn emitted_numbers_parse_back_bit_exactly() {
    let dir = scratch("roundtrip");
    let config = write_config(&dir, "run.cfg", SPIN_CONFIG);
    let out = dir.join("out");
    let output = run(&[
        "spin-cavity",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let content = fs::read_to_string(out.join("spin_cavity.csv")).unwrap();
    let parsed = parse_csv(&content).unwrap();
    assert!(parsed.rows.len() >= 30);
    for row in &parsed.rows {
        for cell in row {
            let value: f64 = cell.parse().expect("numeric cell");
            // The shortest-form writer is the round-trip inverse of parse.
            assert_eq!(&format_number(value), cell);
        }
    }
    assert!(parsed
        .metadata
        .iter()
        .any(|(k, v)| k == "seed" && v == "42"));
}

#[test]
fn manifest_hashes_match_the_emitted_files() {
    use sha2::{Digest, Sha256};
    let dir = scratch("manifest");
    let config = write_config(&dir, "run.cfg", SPIN_CONFIG);
    let out = dir.join("out");
    let output = run(&[
        "spin-cavity",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    let mut seen = 0;
    for line in manifest.lines() {
        let (hash, name) = line.split_once("  ").unwrap();
        let bytes = fs::read(out.join(name)).unwrap();
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        assert_eq!(format!("{:x}", hasher.finalize()), hash, "{name}");
        seen += 1;
    }
    assert_eq!(seen, 1, "manifest lists every emitted table");
}

const SWEEP_CONFIG: &str = "\
[scenario]
kind = sweep
seed = 5

[sweep]
target = critical-n
param = tau
min = 0.1
max = 10.0
points = 24
scale = log

[target]
b_field = 1e26
gamma1 = 4.0
gamma2 = 1.0
";

#[test]
fn sweep_bytes_do_not_depend_on_worker_count() {
    let dir = scratch("sweep-threads");
    let config = write_config(&dir, "sweep.cfg", SWEEP_CONFIG);
    let mut outputs = Vec::new();
    for threads in ["1", "2"] {
        let out = dir.join(format!("t{threads}"));
        let output = Command::new(binary())
            .args([
                "sweep",
                "--config",
                config.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ])
            .env("REALCLOCK_THREADS", threads)
            .output()
            .unwrap();
        assert!(output.status.success(), "{output:?}");
        outputs.push(fs::read(out.join("sweep.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "worker count changed sweep bytes");
}

#[test]
fn shipped_reference_inputs_reproduce_the_recorded_critical_size() {
    // Self-regression baseline recorded at first release.
    const RECORDED_N_STAR: i64 = 10_826_505;
    let dir = scratch("nstar-regression");
    let config = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs/undecidability_reference.cfg");
    let out = dir.join("out");
    let output = run(&[
        "undecidability",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let content = fs::read_to_string(out.join("undecidability_nstar.csv")).unwrap();
    let parsed = parse_csv(&content).unwrap();
    let col = parsed.header.iter().position(|h| h == "n_star").unwrap();
    let n_star: i64 = parsed.rows[0][col].parse().unwrap();
    assert!(
        (n_star - RECORDED_N_STAR).abs() <= 1,
        "N* moved from the recorded baseline: {n_star} vs {RECORDED_N_STAR}"
    );
}

#[test]
fn evolve_with_an_ideal_clock_keeps_coherence_constant() {
    let dir = scratch("evolve-ideal");
    let config = write_config(
        &dir,
        "evolve.cfg",
        "[scenario]\nkind = evolve\nseed = 2\n\n[system]\nlevels = 0.0, 1.0\n\n[clock]\nprofile = ideal\n\n[grid]\nt_start = 0.0\nt_end = 4.0\npoints = 40\n\n[ode]\nstep = 0.01\n",
    );
    let out = dir.join("out");
    let output = run(&[
        "evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let content = fs::read_to_string(out.join("evolve.csv")).unwrap();
    let parsed = parse_csv(&content).unwrap();
    let col = parsed.header.iter().position(|h| h == "coh_0_1").unwrap();
    for row in &parsed.rows {
        let coh: f64 = row[col].parse().unwrap();
        assert!((coh - 0.5).abs() < 1e-12, "coherence drifted: {coh}");
    }
}
