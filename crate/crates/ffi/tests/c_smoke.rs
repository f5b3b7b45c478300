//! Compiles a C program against the generated header and the static
//! library. Skipped when no C compiler is on the path.

use std::path::{Path, PathBuf};
use std::process::Command;

/// The static library sits next to the test's `deps` directory.
fn staticlib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libcaputo_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_agrees() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let Some(lib) = staticlib() else {
        eprintln!("skipping: libcaputo_ffi.a not built");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("caputo_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((value - 0.846_056_786_724_152_9).abs() < 1e-15);
}
