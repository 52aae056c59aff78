use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn header() -> String {
    std::fs::read_to_string(crate_dir().join("include/macwilliams.h")).unwrap()
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for decl in [
        "typedef struct mw_code mw_code;",
        "typedef struct mw_poly mw_poly;",
        "MW_STATUS_OK = 0",
        "MW_STATUS_IDENTITY_FAILED = 1",
        "MW_STATUS_INVALID_INPUT = 2",
        "MW_STATUS_CAP_EXCEEDED = 3",
        "MW_STATUS_NULL_POINTER = 4",
        "MW_STATUS_UTF8 = 5",
        "MW_STATUS_PANIC = 6",
        "const char *mw_last_error_message(void);",
        "enum mw_status mw_code_named(const char *name, struct mw_code **out);",
        "enum mw_status mw_code_from_json(const char *json, struct mw_code **out);",
        "uint64_t mw_code_size(const struct mw_code *code);",
        "void mw_code_free(struct mw_code *code);",
        "void mw_poly_free(struct mw_poly *poly);",
        "void mw_string_free(char *s);",
    ] {
        assert!(h.contains(decl), "missing {decl}");
    }
    for f in ["mw_code_dual", "mw_code_to_json", "mw_code_length", "mw_enumerate", "mw_enumerate_dual", "mw_poly_render", "mw_poly_equal", "mw_verify"] {
        assert!(h.contains(&format!(" {f}(")), "missing {f}");
    }
}

fn staticlib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libmacwilliams_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = staticlib() else {
        eprintln!("libmacwilliams_ffi.a not found next to the test binary; C smoke test not run");
        return;
    };
    let out = std::env::temp_dir().join(format!("mw-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler; C smoke test not run");
        return;
    };
    assert!(status.success(), "cc failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
