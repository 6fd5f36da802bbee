use std::process::Command;

use gtbasis::export::Export;

fn gt(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gt"))
        .args(args)
        .output()
        .expect("gt runs")
}

#[test]
fn documented_invocations() {
    let o = gt(&["dims", "gl", "2,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "8\n");
    assert_eq!(
        String::from_utf8_lossy(&gt(&["dims", "gl", "0,0,0"]).stdout),
        "1\n"
    );
    let o = gt(&["verify", "gl", "2,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("0 failed"));
}

#[test]
fn exit_codes() {
    assert_eq!(gt(&["dims", "gl", "1/2,0"]).status.code(), Some(2));
    assert_eq!(gt(&["dims", "sp4", "0,1"]).status.code(), Some(2));
    assert_eq!(
        gt(&["patterns", "gl", "9,0,0", "--max-dim", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(gt(&["build", "sp8", "0,0,0,-1"]).status.code(), Some(3));
    assert_eq!(gt(&[]).status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["export", "so5", "-1/2,-1/2"][..],
        &["branch", "sp6", "0,-1,-1"],
        &["verify", "so4", "1,1", "--convention", "s4"],
    ] {
        let a = gt(args);
        let b = gt(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("gt-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gl.json");
    let o = gt(&["export", "gl", "2,1,0", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let e = Export::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(e.dim, 8);
    let stdout = gt(&["export", "gl", "2,1,0"]);
    let e2 = Export::from_json(&String::from_utf8_lossy(&stdout.stdout)).unwrap();
    assert_eq!(e.matrices().unwrap(), e2.matrices().unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
