use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

/// Path of a file in the repository's data directory.
pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn data_str(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

/// Run the CLI with the given arguments and optional stdin.
pub fn run_cli(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gperm"));
    cmd.args(args)
        .env_remove("GPERM_FIXTURES")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn gperm");
    if let Some(text) = stdin {
        use std::io::Write;
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("wait for gperm")
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn exit_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}
