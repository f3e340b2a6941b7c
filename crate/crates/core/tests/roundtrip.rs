use qcover_core::catalog::finite_instances;
use qcover_core::format::{parse_quandle_v1, write_quandle_v1};

#[test]
fn every_catalog_quandle_survives_the_file_format() {
    for id in finite_instances() {
        let q = id.build_quandle().unwrap();
        let text = write_quandle_v1(&q);
        let again = parse_quandle_v1(&text).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert_eq!(again.table(), q.table(), "{id}");
        assert_eq!(again.inverses(), q.inverses(), "{id}");
        assert_eq!(write_quandle_v1(&again), text, "{id}");
        assert!(again.verify_ip().all_pass(), "{id}");
    }
}

#[test]
fn names_are_kept() {
    let q = qcover_core::catalog::example_2_3();
    let again = parse_quandle_v1(&write_quandle_v1(&q)).unwrap();
    assert_eq!(again.index_of_name("c'"), Some(5));
}
