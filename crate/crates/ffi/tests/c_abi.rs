//! Compiles a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(
        header_dir.join("jacobi_scattering.h").exists(),
        "header not generated"
    );

    // tests run from target/<profile>/deps; the static library sits one level up
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libjacobi_scattering_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());

    let out_dir = tempfile_dir();
    let binary = out_dir.join("smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&binary)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&binary).output().unwrap();
    assert!(
        run.status.success(),
        "smoke program exited with {:?}",
        run.status.code()
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jsc-c-abi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
