//! Properties exercised by the fuzz targets. Shared with the seed
//! regression test in the parent crate.

use qcover_core::catalog::CatalogId;
use qcover_core::format::{parse_quandle_v1, write_quandle_v1};
use qcover_core::rootsys::RootType;

/// Tables up to this size also get the axiom check.
const VERIFY_LIMIT: usize = 48;

/// Parsing never panics, and accepted documents survive a write/read cycle
/// with identical tables.
pub fn quandle_text(data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else {
        return false;
    };
    let Ok(q) = parse_quandle_v1(text) else {
        return false;
    };
    let again = parse_quandle_v1(&write_quandle_v1(&q)).expect("written documents parse");
    assert_eq!(again.table(), q.table());
    assert_eq!(again.inverses(), q.inverses());
    assert_eq!(again.names(), q.names());
    if q.len() <= VERIFY_LIMIT {
        let _ = q.verify_ip();
    }
    true
}

/// Accepted identifiers print to a canonical form that parses back to the
/// same identifier.
pub fn catalog_id(data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else {
        return false;
    };
    let Ok(id) = text.parse::<CatalogId>() else {
        return false;
    };
    let canonical = id.to_string();
    assert_eq!(canonical.parse::<CatalogId>().as_ref(), Ok(&id));
    true
}

pub fn root_type(data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else {
        return false;
    };
    let Ok(t) = text.parse::<RootType>() else {
        return false;
    };
    assert_eq!(t.to_string().parse::<RootType>(), Ok(t));
    true
}
