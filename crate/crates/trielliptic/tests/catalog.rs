use std::path::PathBuf;

use trielliptic::census::build_sigma;
use trielliptic::lattice::catalog::{build_glued, builtin_entries, load_entries, validate_glued, CatalogEntry};
use trielliptic::qform::{builtin_forms, load_forms, FormEntry};

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

fn shipped_forms() -> Vec<FormEntry> {
    builtin_forms()
        .into_iter()
        .enumerate()
        .map(|(i, mut e)| {
            e.gram = Some(build_sigma(i as u8 + 1).unwrap().gram_i64().unwrap());
            e
        })
        .collect()
}

// TRIELLIPTIC_REGEN=1 rewrites the shipped files from the built-in tables.
fn regenerate() {
    if std::env::var_os("TRIELLIPTIC_REGEN").is_none() {
        return;
    }
    let dir = catalog_dir();
    let n = serde_json::to_string_pretty(&builtin_entries()).unwrap();
    std::fs::write(dir.join("niemeier.json"), n + "\n").unwrap();
    let f = serde_json::to_string_pretty(&shipped_forms()).unwrap();
    std::fs::write(dir.join("forms.json"), f + "\n").unwrap();
}

#[test]
fn shipped_niemeier_file_matches_builtin() {
    regenerate();
    let loaded: Vec<CatalogEntry> = load_entries(Some(&catalog_dir())).unwrap();
    assert_eq!(loaded, builtin_entries());
    for e in &loaded {
        validate_glued(&build_glued(e).unwrap()).unwrap();
    }
}

#[test]
fn shipped_forms_agree_with_gram_matrices() {
    regenerate();
    let loaded = load_forms(Some(&catalog_dir())).unwrap();
    assert_eq!(loaded, shipped_forms());
    for (e, b) in loaded.iter().zip(builtin_forms()) {
        // gram and generator data are cross-checked inside form()
        assert!(e.form().unwrap().is_isomorphic(&b.form().unwrap()), "{}", e.name);
    }
}
