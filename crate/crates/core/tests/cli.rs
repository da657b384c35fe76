use std::fs;

use pbt_core::cli::{run_args, EXIT_OK, EXIT_USAGE};
use pbt_core::resource::{make_family, ResourceFamily};
use pbt_core::resource_file::write_reduced;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run_args(std::iter::once("pbt").chain(args.iter().copied()), &mut o, &mut e);
    (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
}

#[test]
fn sweep_csv_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|k| dir.path().join(format!("s{k}.csv"))).collect();
    for p in &paths {
        let (code, _, err) = run(&[
            "ad-sweep",
            "--ports",
            "4",
            "--p0",
            "0.36",
            "--family",
            "choi",
            "--grid",
            "0:1:0.25",
            "--restarts",
            "8",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
    }
    let (a, b) = (fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "param,trace_norm,diamond_lower,diamond_upper,diamond_numeric");
    assert_eq!(
        lines.map(|l| l.split(',').next().unwrap().to_string()).collect::<Vec<_>>(),
        ["0", "0.25", "0.5", "0.75", "1"]
    );
}

#[test]
fn sweep_to_stdout_with_alternate_family() {
    let (code, out, _) = run(&[
        "ad-sweep",
        "--ports",
        "3",
        "--p0",
        "0.2",
        "--family",
        "alternate",
        "--grid",
        "0.4:0.6:0.1",
        "--restarts",
        "4",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn figures_are_written_to_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("figs");
    for id in ["1", "4"] {
        let (code, stdout, err) =
            run(&["figure", "--id", id, "--out", out.to_str().unwrap(), "--step", "0.25", "--restarts", "4"]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(stdout.lines().count(), 2);
    }
    let mut names: Vec<String> =
        fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into()).collect();
    names.sort();
    assert_eq!(names, ["fig1_p0_0.36.csv", "fig1_p0_0.7.csv", "fig4_left.csv", "fig4_right.csv"]);
    let left = fs::read_to_string(out.join("fig4_left.csv")).unwrap();
    assert!(left.starts_with("p0,choi_p1,"));
    assert_eq!(run(&["figure", "--id", "7", "--out", out.to_str().unwrap()]).0, EXIT_USAGE);
}

#[test]
fn verify_passes_up_to_four_ports() {
    let (code, out, _) = run(&["verify", "--max-ports", "4", "--random", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().last().unwrap().starts_with("max deviation"));
}

#[test]
fn choi_from_resource_file_matches_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("res.txt");
    write_reduced(&path, &make_family(&ResourceFamily::AdChoi(0.4), 3).unwrap()).unwrap();
    let from_file = run(&["choi", "--ports", "3", "--resource", path.to_str().unwrap()]);
    let from_family = run(&["choi", "--ports", "3", "--resource", "ad-choi:0.4"]);
    assert_eq!(from_file.0, EXIT_OK);
    assert_eq!(from_file.1, from_family.1);
    assert_eq!(run(&["choi", "--ports", "4", "--resource", path.to_str().unwrap()]).0, EXIT_USAGE);
    assert_eq!(run(&["choi", "--ports", "3", "--resource", "missing-file.txt"]).0, EXIT_USAGE);
}

#[test]
fn protocol_kraus_listing() {
    let (code, out, _) = run(&["protocol-kraus", "--ports", "2"]);
    assert_eq!(code, EXIT_OK);
    let first = out.lines().next().unwrap();
    assert!(first.starts_with("N=2 kernel="));
    assert!(out.contains("K2 m=") && out.contains("K1 s="));
}
