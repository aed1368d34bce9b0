use std::process::Command;

fn fourfold() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fourfold"))
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn verify_writes_report() {
    let out = tmp("cli_report.json");
    let status = fourfold()
        .args(["verify", "--row", "dP5", "--seed", "3", "--out"])
        .arg(&out)
        .env_remove("FOURFOLD_PRIME")
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["prime"], 32003);
    assert_eq!(v["rows"][0]["seed"], 3);
}

#[test]
fn prime_from_environment() {
    let out = tmp("cli_env_prime.json");
    let status = fourfold()
        .args(["verify", "--row", "scroll4", "--out"])
        .arg(&out)
        .env("FOURFOLD_PRIME", "10000019")
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["prime"], 10000019);
}

#[test]
fn dump_surface_round_trips() {
    let out = tmp("dp5.ideal");
    let status = fourfold().args(["verify", "--dump-surface", "dP5"]).arg(&out).status().unwrap();
    assert!(status.success());
    let (ring, gens) = fourfold_core::text::read_ideal(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(ring.nvars(), 6);
    assert_eq!(gens.iter().filter(|g| g.degree() == Some(2)).count(), 5);
}

#[test]
fn unknown_row_is_rejected() {
    let status = fourfold().args(["verify", "--row", "nosuch"]).status().unwrap();
    assert!(!status.success());
}
