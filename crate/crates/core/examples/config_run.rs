//! Drives the command-line front end from a TOML configuration, the same
//! way the `cvkey` binary does.

fn main() {
    let dir = std::env::temp_dir().join("cvkey-config-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let cfg = dir.join("zpc.toml");
    std::fs::write(
        &cfg,
        r#"
[resource]
kind = "zpc-loss"
cosh2r = 50.0
t_bs = 0.9
p = 0.002

[mismatch]
delta = 0.01

[sweep]
start = 0.0
stop = 40.0
step = 5.0
"#,
    )
    .expect("write config");

    let code = cvkey::cli::run(["cvkey", "sweep-distance", "--config", cfg.to_str().unwrap()]);
    std::process::exit(code);
}
