use proptest::prelude::*;
use spinorlab::subspace::matrix_units;
use spinorlab::{clifford, projections, Ambient, ComplexMatrix, SubspaceBasis, SubspaceMap, C64};
use spinorlab_cli::mapspec::{format_map_spec, parse_map_spec};

fn load(name: &str) -> SubspaceMap {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name);
    parse_map_spec(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn same_map(a: &SubspaceMap, b: &SubspaceMap) {
    assert_eq!(a.coeff_distance(b), 0.0);
    assert!(a.domain().elements() == b.domain().elements());
    assert!(a.codomain().elements() == b.codomain().elements());
}

#[test]
fn shipped_specs_match_library_maps() {
    same_map(&load("sym_s2.map"), &projections::proj_sym(2).unwrap().map);
    same_map(&load("tau_f1.map"), &clifford::tau(1).unwrap());
    let id = load("identity_s2.map");
    assert!(id.is_identity_coeffs(0.0));
    assert_eq!(id.domain().dim(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_then_parse_round_trips(
        side in 1usize..4,
        raw in proptest::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 81),
    ) {
        let units = matrix_units(side, side);
        let d = units.len();
        let basis = SubspaceBasis::new("units", Ambient::matrices(side, side), units).unwrap();
        let data: Vec<C64> = raw[..d * d].iter().map(|&(a, b)| C64::new(a, b)).collect();
        let coeffs = ComplexMatrix::from_vec(d, d, data).unwrap();
        let map = SubspaceMap::new(basis.clone(), basis, coeffs).unwrap();
        let back = parse_map_spec(&format_map_spec(&map).unwrap()).unwrap();
        prop_assert_eq!(back.coeff_distance(&map), 0.0);
    }
}
