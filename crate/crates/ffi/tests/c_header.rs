use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "monogenic.h"

int main(void) {
    MonoAlgebra *alg = NULL;
    if (mono_algebra_new("octonion", 2, &alg) != MONO_STATUS_OK) return 10;
    unsigned k[2] = {1, 1};
    MonoPolynomial *p = NULL;
    if (mono_fueter_polynomial(alg, k, 2, &p) != MONO_STATUS_OK) return 11;
    bool mono = false;
    mono_polynomial_is_monogenic(p, false, &mono);
    if (!mono) return 12;

    double center[3] = {0, 0, 0};
    MonoRule *rule = NULL;
    if (mono_rule_new(MONO_RULE_KIND_SPHERE, center, 3, 1.0, 16, 42, &rule) != MONO_STATUS_OK) return 13;
    double x[3] = {0.1, -0.2, 0.3}, got[8], want[8];
    bool reliable = false;
    if (mono_cauchy_integral(rule, p, x, 3, got, 8, &reliable) != MONO_STATUS_OK) return 14;
    mono_polynomial_eval(p, x, 3, want, 8);
    for (int i = 0; i < 8; i++)
        if (fabs(got[i] - want[i]) > 1e-10) return 15;

    MonoAlgebra *bad = NULL;
    if (mono_algebra_new("nope", -1, &bad) != MONO_STATUS_INVALID_ARGUMENT) return 16;
    if (mono_last_error() == NULL) return 17;

    mono_rule_free(rule);
    mono_polynomial_free(p);
    mono_algebra_free(alg);
    printf("ok %s\n", mono_version());
    return 0;
}
"#;

/// `target/<profile>` for the running test binary.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let lib = profile_dir().join("libmonogenic_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c11", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
