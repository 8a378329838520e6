use std::path::{Path, PathBuf};
use std::process::Command;

use gossip_age::cli::config::OutputFormat;
use gossip_age::cli::table::parse_csv;
use gossip_age::cli::{execute, render, Command as Sub, RunConfig};

const BIN: &str = env!("CARGO_BIN_EXE_gossip-age");

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    parse_csv(csv).unwrap().1
}

const LINE: &str = "params.p_e = 0.3\nparams.beta = 0.6\nparams.p = 0.2\nparams.L = 10\n\
                    topology.class = line\n";

#[test]
fn analyze_line_reports_ages_and_spacing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.cfg", &format!("{LINE}topology.n = 5\n"));
    let (code, out, _) = run(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    let ages: Vec<(String, String)> = rows
        .iter()
        .filter(|r| r[2] == "line_node_age")
        .map(|r| (r[0].clone(), r[1].clone()))
        .collect();
    let expected = [
        ("0", "0.8"),
        ("1", "2.3"),
        ("2", "3.8"),
        ("3", "5.3"),
        ("4", "6.8"),
    ];
    assert_eq!(ages.len(), 5);
    for ((k, v), (ek, ev)) in ages.iter().zip(expected) {
        assert_eq!((k.as_str(), v.as_str()), (ek, ev));
    }
    assert!(rows.iter().any(|r| r[1] == "5" && r[2] == "line_k_star"));
}

#[test]
fn analyze_star_thresholds() {
    let cfg: RunConfig = "params.p_e = 0.3\nparams.beta = 0.7\nparams.p = 0.5\nparams.L = 2.5\n\
                          topology.class = star\ntopology.r = 3\n"
        .parse()
        .unwrap();
    let rows = execute(Sub::Analyze, &cfg).unwrap().table.rendered_rows();
    let get = |id: &str| -> Vec<(String, String)> {
        rows.iter()
            .filter(|r| r[2] == id)
            .map(|r| (r[1].clone(), r[3].clone()))
            .collect()
    };
    let beta_k = get("star_beta_k");
    assert_eq!(beta_k[0].0, "0.6");
    assert_eq!(beta_k[1].0, "0.8181818182");
    assert_eq!(beta_k[2], ("inf".into(), "nonpositive_denominator".into()));
    assert_eq!(get("star_beta_c")[0].0, "3");
}

#[test]
fn analyze_tree_fraction() {
    let cfg: RunConfig = "params.p_e = 0.3\nparams.beta = 0.6\nparams.p = 0.2\nparams.L = 10\n\
                          topology.class = tree\ntopology.r = 2\ntopology.depth = 6\n"
        .parse()
        .unwrap();
    let rows = execute(Sub::Analyze, &cfg).unwrap().table.rendered_rows();
    let f = rows.iter().find(|r| r[2] == "tree_fs").unwrap();
    assert_eq!(f[1], "0.03225806452");
}

#[test]
fn analyze_general_points_to_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "g.cfg",
        "params.p_e = 0.3\nparams.beta = 0.6\nparams.p = 0.2\nparams.L = 10\n\
         topology.class = general\ntopology.n = 2\ntopology.edges = 0-1\n",
    );
    let (code, _, err) = run(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("simulate"), "{err}");
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(
        dir.path(),
        "u.cfg",
        &format!("{LINE}topology.n = 5\nparams.gamma = 1\n"),
    );
    let (code, _, err) = run(&["analyze", "--config", unknown.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("params.gamma"));

    let missing = write(
        dir.path(),
        "m.cfg",
        "params.p_e = 0.3\nparams.p = 0.2\nparams.L = 10\n",
    );
    let (code, _, err) = run(&["analyze", "--config", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("topology.class"));
}

#[test]
fn divergent_simulation_exits_three_with_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "d.cfg",
        &format!("{LINE}topology.n = 3\nprofile.actions = 010\nsim.horizon = 500\nsim.replications = 20\n"),
    );
    let (code, out, _) = run(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 3);
    let flags: Vec<String> = rows(&out).iter().map(|r| r[3].clone()).collect();
    assert_eq!(flags, ["true", "false", "false"]);
}

#[test]
fn enumeration_cap_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.cfg",
        &format!("{LINE}topology.n = 20\nequilibria.cap = 12\n"),
    );
    let (code, _, err) = run(&["equilibria", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(err.contains("12"), "{err}");
}

#[test]
fn equilibria_examples() {
    let star: RunConfig = "params.p_e = 0.3\nparams.beta = 0.7\nparams.p = 0.5\nparams.L = 2.5\n\
                           topology.class = star\ntopology.r = 3\n"
        .parse()
        .unwrap();
    let rows = execute(Sub::Equilibria, &star)
        .unwrap()
        .table
        .rendered_rows();
    let preferred: Vec<_> = rows.iter().filter(|r| r[3] == "true").collect();
    assert_eq!(preferred.len(), 1);
    assert_eq!(preferred[0][2], "0.5");

    let pair: RunConfig = format!("{LINE}topology.n = 2\n").parse().unwrap();
    let rows = execute(Sub::Equilibria, &pair)
        .unwrap()
        .table
        .rendered_rows();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[0].starts_with('1')));

    let eleven: RunConfig = format!("{LINE}topology.n = 11\n").parse().unwrap();
    let rows = execute(Sub::Equilibria, &eleven)
        .unwrap()
        .table
        .rendered_rows();
    let best = rows.iter().find(|r| r[3] == "true").unwrap();
    assert_eq!(best[0], "10000100001");
}

#[test]
fn zero_cost_picks_largest_feasible_rate() {
    let cfg: RunConfig = format!("{LINE}topology.n = 5\ncost.kind = linear\ncost.c0 = 0\noptimize.k_min = 4\noptimize.k_max = 30\n")
        .parse()
        .unwrap();
    let rows = execute(Sub::Optimize, &cfg).unwrap().table.rendered_rows();
    let chosen = rows.iter().find(|r| r[6] == "true").unwrap();
    assert_eq!(chosen[2], "4");
    let max_beta = rows
        .iter()
        .map(|r| r[1].parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert_eq!(chosen[1].parse::<f64>().unwrap(), max_beta);
}

#[test]
fn tree_utility_never_beats_line() {
    let cfg: RunConfig = "params.p_e = 0.3\nparams.p = 0.2\nparams.L = 10\ntopology.class = line\n\
                          topology.n = 5\ncost.kind = quadratic\ncost.c0 = 80\noptimize.k_min = 4\n\
                          optimize.k_max = 1000\noptimize.compare = line,tree:2\n"
        .parse()
        .unwrap();
    let rows = execute(Sub::Optimize, &cfg).unwrap().table.rendered_rows();
    let (line, tree): (Vec<_>, Vec<_>) = rows.iter().partition(|r| r[0] == "line");
    assert_eq!(line.len(), tree.len());
    for (l, t) in line.iter().zip(&tree) {
        assert_eq!(l[1], t[1]);
        assert!(t[5].parse::<f64>().unwrap() <= l[5].parse::<f64>().unwrap());
    }
}

#[test]
fn sweep_reports_star_regimes() {
    let cfg: RunConfig =
        "params.p_e = 0.3\nparams.p = 0.5\nparams.L = 2.5\ntopology.class = star\n\
                          topology.r = 3\nsweep.variable = beta\nsweep.from = 0.5\nsweep.to = 0.9\n\
                          sweep.steps = 3\n"
            .parse()
            .unwrap();
    let rows = execute(Sub::Sweep, &cfg).unwrap().table.rendered_rows();
    let f: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(f, ["0.25", "0.5", "0.75"]);
}

#[test]
fn output_is_byte_identical_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let body =
        format!("{LINE}topology.n = 6\nsim.horizon = 1000\nsim.replications = 130\nseed = 3\n");
    let one = write(dir.path(), "one.cfg", &format!("{body}sim.workers = 1\n"));
    let two = write(dir.path(), "two.cfg", &format!("{body}sim.workers = 2\n"));
    let mut outputs = Vec::new();
    for (i, cfg) in [&one, &two, &one].iter().enumerate() {
        let out = dir.path().join(format!("out{i}.csv"));
        let (code, _, _) = run(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        outputs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);

    let (_, seeded, _) = run(&["simulate", "--config", one.to_str().unwrap(), "--seed", "4"]);
    assert_ne!(seeded.as_bytes(), outputs[0].as_slice());
}

#[test]
fn csv_round_trips_and_json_is_valid() {
    let cfg: RunConfig = "params.p_e = 0.3\nparams.beta = 0.7\nparams.p = 0.5\nparams.L = 2.5\n\
                          topology.class = star\ntopology.r = 3\n"
        .parse()
        .unwrap();
    for sub in [Sub::Analyze, Sub::Equilibria] {
        let outcome = execute(sub, &cfg).unwrap();
        let (header, body) = parse_csv(&render(&outcome, OutputFormat::Csv)).unwrap();
        assert_eq!(header, outcome.table.columns);
        assert_eq!(body, outcome.table.rendered_rows());
        let json: serde_json::Value =
            serde_json::from_str(&render(&outcome, OutputFormat::Json)).unwrap();
        assert_eq!(json.as_array().unwrap().len(), body.len());
    }
}
