//! Stamp the source revision into the binary so run manifests can record
//! which code produced an output file. Falls back to "unknown" when built
//! outside a checkout (e.g. from a source tarball).

use std::process::Command;

fn main() {
    let hash = Command::new("git")
        .args(["rev-parse", "--short=12", "HEAD"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string());
    println!("cargo:rustc-env=HYPERDOT_BUILD_HASH={hash}");
}
