//! Preset file override through the environment. Kept in its own test
//! binary because it mutates process environment.

use techrace::cli::dispatch;
use techrace::scenario::{PresetCatalog, PRESETS_ENV, SHIPPED_PRESETS};

#[test]
fn env_var_replaces_shipped_presets() {
    let path = std::env::temp_dir().join(format!("techrace-presets-{}.toml", std::process::id()));
    std::fs::write(&path, SHIPPED_PRESETS.replace("lambda0 = 0.05", "lambda0 = 0.10")).unwrap();
    std::env::set_var(PRESETS_ENV, &path);

    let catalog = PresetCatalog::load().unwrap();
    assert_eq!(catalog.build_preset("limited/baseline/no-opp").unwrap().lambda0, 0.10);
    let mut out = Vec::new();
    let code = dispatch(["techrace", "run", "--preset", "limited/baseline/no-opp"], &mut out, &mut Vec::new());
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "R(10)=0.323, P(10)=0.276\n");

    std::env::set_var(PRESETS_ENV, path.with_extension("missing"));
    let mut err = Vec::new();
    assert_ne!(dispatch(["techrace", "table", "--id", "table4"], &mut Vec::new(), &mut err), 0);
    assert!(String::from_utf8(err).unwrap().contains("preset configuration"));

    std::env::remove_var(PRESETS_ENV);
    std::fs::remove_file(&path).unwrap();
}
