use std::path::Path;
use std::process::{Command, Output};

use normsparse::bench::{read_records, sidecar, solve_problem, summarize, summary_csv, SolveParams, SolverKind};
use normsparse::numerics::{read_vector, write_matrix_bin, write_matrix_csv, write_vector, Matrix};
use normsparse::synth::{generate, ProblemSpec};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normsparse")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_identity_recovers_top_k() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let f = dir.path().join("f.bin");
    let out = dir.path().join("alpha.bin");
    write_matrix_csv(&a, &Matrix::identity(6)).unwrap();
    let obs = [0.0, 4.0, 0.0, -1.0, 0.0, 2.0];
    write_vector(&f, &obs).unwrap();
    let o = run(&["solve", "--matrix", s(&a), "--observation", s(&f), "--solver", "sp", "--k", "3", "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_vector(&out).unwrap(), obs.to_vec());
    assert!(String::from_utf8_lossy(&o.stdout).contains("residual"));
}

#[test]
fn solve_output_matches_in_process_bit_for_bit() {
    let p = generate(&ProblemSpec::new(120, 40, 4, 3).with_sigma(0.01)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("phi.bin");
    let f = dir.path().join("f.bin");
    write_matrix_bin(&a, &p.phi).unwrap();
    write_vector(&f, &p.f).unwrap();
    let tau = p.tau_star.to_string();
    for solver in SolverKind::ALL {
        let out = dir.path().join(format!("{solver}.bin"));
        let o = run(&[
            "solve", "--matrix", s(&a), "--observation", s(&f), "--solver", &solver.to_string(),
            "--k", "4", "--tau", &tau, "--out", s(&out),
        ]);
        assert!(o.status.success(), "{solver}: {}", String::from_utf8_lossy(&o.stderr));
        let params = SolveParams {
            k: Some(4),
            tau: Some(p.tau_star),
            rounds: None,
        };
        let direct = solve_problem(&p.phi, &p.f, solver, &params).unwrap();
        let from_file = read_vector(&out).unwrap();
        assert!(
            from_file.iter().zip(&direct.result.alpha).all(|(x, y)| x.to_bits() == y.to_bits()),
            "{solver} differs"
        );
    }
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bin");
    let f = dir.path().join("f.bin");
    let out = dir.path().join("x.bin");
    write_matrix_bin(&a, &Matrix::identity(3)).unwrap();
    write_vector(&f, &[1.0, 2.0, 3.0]).unwrap();
    let unknown = run(&["solve", "--matrix", s(&a), "--observation", s(&f), "--solver", "unknown", "--k", "1", "--out", s(&out)]);
    assert!(!unknown.status.success());
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown"));

    write_vector(&f, &[1.0, 2.0]).unwrap();
    let mismatch = run(&["solve", "--matrix", s(&a), "--observation", s(&f), "--solver", "sp", "--k", "1", "--out", s(&out)]);
    assert!(!mismatch.status.success());

    std::fs::write(&a, "1,2\n3\n").unwrap();
    let garbled = run(&["rip", "--matrix", s(&a), "--s", "1"]);
    assert!(!garbled.status.success());

    let unwritable = run(&["bench", "--trials", "1", "--n", "40", "--m", "20", "--k", "2", "--out", "/nonexistent/dir/out.csv"]);
    assert!(!unwritable.status.success());
    let bad_solver = run(&["bench", "--solver", "sp,magic", "--out", s(&dir.path().join("b.csv"))]);
    assert!(!bad_solver.status.success());
}

#[test]
fn rip_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bin");
    write_matrix_bin(&a, &Matrix::identity(20)).unwrap();
    let o = run(&["rip", "--matrix", s(&a), "--s", "1,5,10", "--trials", "50"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    assert!(text.contains("lower bound only"));
    assert_eq!(text.matches("not-observed").count(), 6);

    write_matrix_bin(&a, &Matrix::identity(20).scaled(2.0)).unwrap();
    let o = run(&["rip", "--matrix", s(&a), "--s", "3", "--q", "inf", "--trials", "10"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout).matches("exceeded").count(), 2);
}

#[test]
fn rip_grows_with_sparsity_on_a_gaussian_matrix() {
    let p = generate(&ProblemSpec::new(1000, 200, 5, 11)).unwrap();
    let report = normsparse::bench::rip_table(&p.phi, &[5, 10, 20, 40, 80], 2.0, 500, 0).unwrap();
    let eps: Vec<f64> = report.rows.iter().map(|r| r.lower_bound).collect();
    assert!(eps.windows(2).all(|w| w[0] <= w[1]), "{eps:?}");
    assert!(eps[2] < 0.5, "{eps:?}");
}

#[test]
fn bench_writes_consistent_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&[
        "bench", "--experiment", "custom", "--n", "80", "--m", "30", "--k", "2,3", "--sigma-grid", "0,0.01",
        "--tau-grid", "0.5,1", "--solver", "clash,sp,lasso-pg,game-l2", "--trials", "4", "--seed", "5",
        "--workers", "2", "--matrix-scaling", "unit", "--out", s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let records = read_records(&out).unwrap();
    // 4 trials x 4 scenarios x (3 tau-aware solvers x 2 taus + sp)
    assert_eq!(records.len(), 4 * 4 * 7);
    for r in &records {
        if matches!(r.solver, SolverKind::Sp | SolverKind::Clash) {
            assert!(r.l0 <= r.k);
        }
        if r.solver.uses_tau() {
            assert!(r.l1 <= r.tau + 1e-8);
        }
    }
    // the summary equals a recomputation from the raw rows
    let summary = std::fs::read_to_string(sidecar(&out, ".summary.csv")).unwrap();
    assert_eq!(summary, summary_csv(&summarize(&records)));
    let meta = std::fs::read_to_string(sidecar(&out, ".meta")).unwrap();
    assert!(meta.contains("seed=5") && meta.contains("scaling=unit") && meta.contains("normsparse"));
    assert!(sidecar(&out, ".timing.csv").exists());
}

#[test]
fn bench_plan_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.txt");
    std::fs::write(&plan, "experiment=tau-sweep\nn=100\nm=40\nscenarios=5:0.05;6:0\ntrials=2\ntau_grid=0.2,1,5\n").unwrap();
    let out = dir.path().join("t.csv");
    let o = run(&["bench", "--plan", s(&plan), "--out", s(&out), "--seed", "9"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let records = read_records(&out).unwrap();
    // clash at 3 taus plus sp once, per trial and scenario
    assert_eq!(records.len(), 2 * 2 * 4);
    assert!(records.iter().all(|r| r.seed != 0 && r.experiment.to_string() == "tau-sweep"));
    let conflict = run(&["bench", "--plan", s(&plan), "--experiment", "custom", "--out", s(&out)]);
    assert!(!conflict.status.success());
}
