use qcover_core::catalog::CatalogId;
use qcover_core::derham::Calculus;

fn calculus(id: &str) -> Calculus {
    let q = id.parse::<CatalogId>().unwrap().build_quandle().unwrap();
    Calculus::new(&q).unwrap()
}

/// (id, dim_closed, dim_exact, dim_h1), checked against an independent
/// dense rational computation.
const FIXTURES: &[(&str, usize, usize, usize)] = &[
    ("sym:3:2cycles", 6, 5, 1),
    ("sym:4:2cycles", 24, 23, 1),
    ("sym:4:ncycles", 24, 23, 1),
    ("klein4", 5, 3, 2),
    ("dihedral:4", 9, 7, 2),
    ("dihedral:6", 13, 11, 2),
    ("dihedral:9", 18, 17, 1),
    ("weyl:B:2", 9, 7, 2),
    ("weyl:G:2", 13, 11, 2),
];

#[test]
fn frozen_dimensions() {
    for &(id, closed, exact, h1) in FIXTURES {
        let c = calculus(id);
        let r = c.h1();
        assert_eq!(
            (r.dims.dim_closed, r.dims.dim_exact, r.dims.dim_h1),
            (closed, exact, h1),
            "{id}"
        );
        assert_eq!(r.basis.len(), h1, "{id}");
        for p in [3, 7] {
            assert_eq!(c.h1_mod_p(p).unwrap(), r.dims, "{id} mod {p}");
        }
    }
}

#[test]
fn basis_forms_are_closed_and_not_exact() {
    for id in ["klein4", "dihedral:4", "weyl:B:2"] {
        let c = calculus(id);
        for w in c.h1().basis {
            assert!(c.is_closed(&w), "{id}");
            assert!(c.is_closed_via_braiding(&w), "{id}");
            assert_eq!(c.is_exact(&w).unwrap(), None, "{id}");
        }
    }
}

#[test]
fn characteristic_two_is_rejected() {
    assert!(calculus("sym:3:2cycles").h1_mod_p(2).is_err());
}
