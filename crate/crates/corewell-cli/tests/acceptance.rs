//! Determinism gate: the same sweep, run twice, must reproduce its output
//! files byte for byte. Nothing in the pipeline may depend on time, pointer
//! values, or iteration order of anything unordered.

use std::fs;
use std::process::Command;

#[test]
fn repeated_sweeps_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg_path = tmp.path().join("sweep.ini");
    fs::write(
        &cfg_path,
        "[well]\nm1 = 1.5\nm2 = 1.75\nV0 = 1.0\nU0 = 0.4\n\
         r0_start = 1.0\nr0_stop = 2.0\nr0_step = 0.1\n\
         [output]\nplots = true\n",
    )
    .unwrap();
    let run = |out: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_corewell"))
            .args(["--config", cfg_path.to_str().unwrap(), "--command", "sweep"])
            .args(["--out", out, "--quiet"])
            .current_dir(tmp.path())
            .status()
            .expect("binary should launch");
        assert!(status.success(), "sweep run into {out} failed");
    };
    run("a");
    run("b");
    for name in ["levels.csv", "levels.svg"] {
        let first = fs::read(tmp.path().join("a").join(name)).unwrap();
        let second = fs::read(tmp.path().join("b").join(name)).unwrap();
        assert!(!first.is_empty());
        assert_eq!(first, second, "{name} differs between identical runs");
    }
    println!("acceptance repeated_sweeps_are_byte_identical: pass");
}
