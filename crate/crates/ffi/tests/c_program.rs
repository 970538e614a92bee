use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "folcoh.h"

int main(void) {
    FolModel *m = NULL;
    if (fol_model_load_bundled("s6", &m) != FOL_STATUS_OK) return 10;
    FolReport *r = NULL;
    FolOptions opts = fol_options_default();
    FolStatus st = fol_run(m, FOL_COMMAND_DDBAR, &opts, &r);
    if (st != FOL_STATUS_CHECK_FAILED) return 11;
    char *json = NULL;
    if (fol_report_render(r, FOL_FORMAT_JSON, &json) != FOL_STATUS_OK) return 12;
    int found = strstr(json, "\"verdict\":\"fail\"") != NULL;
    fputs(json, stdout);
    fol_string_free(json);
    fol_report_free(r);
    fol_model_free(m);
    if (fol_model_parse("model x\nend\ngarbage\n", &m) == FOL_STATUS_OK) return 13;
    if (strlen(fol_last_error()) == 0) return 14;
    return found ? 0 : 15;
}
"#;

fn target_dir() -> PathBuf {
    // <target>/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping the C link test");
        return;
    };
    let lib = target_dir().join("libfolcoh_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("folcoh_smoke.c");
    let exe = dir.join("folcoh_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("β1^β̄1"));
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
