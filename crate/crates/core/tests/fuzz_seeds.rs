//! Replays the checked-in fuzz corpora through the fuzz target bodies.

#[path = "../fuzz/src/lib.rs"]
mod checks;

use std::collections::BTreeMap;
use std::path::PathBuf;

fn corpus(target: &str) -> BTreeMap<String, bool> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let check: fn(&[u8]) -> bool = match target {
        "parse_quandle" => checks::quandle_text,
        "parse_catalog_id" => checks::catalog_id,
        "parse_root_type" => checks::root_type,
        _ => unreachable!(),
    };
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let data = std::fs::read(&path).unwrap();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        out.insert(name, check(&data));
    }
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

#[test]
fn quandle_seeds() {
    let results = corpus("parse_quandle");
    let accepted: Vec<&str> = results
        .iter()
        .filter(|(_, ok)| **ok)
        .map(|(k, _)| k.as_str())
        .collect();
    assert_eq!(
        accepted,
        [
            "bad_row.q",
            "comments.q",
            "crlf.q",
            "example_2_3.q",
            "s3_transpositions.q",
            "trivial_1.q",
            "unicode_names.q"
        ]
    );
}

#[test]
fn catalog_id_seeds() {
    let results = corpus("parse_catalog_id");
    let accepted = results.values().filter(|ok| **ok).count();
    assert_eq!(accepted, 14);
    assert_eq!(results.len(), 22);
}

#[test]
fn root_type_seeds() {
    let results = corpus("parse_root_type");
    let accepted = results.values().filter(|ok| **ok).count();
    assert_eq!(accepted, 8);
}
