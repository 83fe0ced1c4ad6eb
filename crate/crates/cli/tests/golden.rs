//! Byte-for-byte comparison of every fixture command against the checked-in
//! outputs. Run with `UPDATE_GOLDEN=1` to rewrite them after an intended
//! change.

mod common;

#[test]
fn outputs_match_golden_files() {
    if std::env::var("UPDATE_GOLDEN").as_deref() == Ok("1") {
        for (path, text) in common::all_outputs() {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, text).unwrap();
        }
    }
    let bad = common::golden_mismatches();
    assert!(bad.is_empty(), "outputs differ from golden files: {bad:?}");
}
