#![allow(dead_code)]

/// Relative to the package root, which is the working directory of tests.
pub const GOLDEN: &str = "tests/golden";

/// Set to regenerate the golden reports.
pub const UPDATE_ENV: &str = "CONVSEMI_UPDATE_GOLDEN";

pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("convsemi").chain(args.iter().copied());
    let code = convsemi_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Run twice, require identical bytes, and compare with the stored report.
pub fn golden_compare(file: &str, args: &[&str]) -> Result<(), String> {
    let (code, first, err) = run(args);
    if code != 0 {
        return Err(format!("{file}: exit code {code}: {err}"));
    }
    let (_, second, _) = run(args);
    if first != second {
        return Err(format!("{file}: two runs differ"));
    }
    let path = format!("{GOLDEN}/{file}");
    if std::env::var_os(UPDATE_ENV).is_some() {
        std::fs::write(&path, &first).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let stored = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
    if stored != first {
        return Err(format!("{path}: report differs from the stored golden file"));
    }
    Ok(())
}

pub fn golden_check(file: &str, args: &[&str]) {
    if let Err(e) = golden_compare(file, args) {
        panic!("{e}");
    }
}
