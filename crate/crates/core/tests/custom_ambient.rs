use std::sync::Arc;

use hodge_ci::algebra::DiamondViolation;
use hodge_ci::io::{emit_custom_ambient, parse_ambient_file, parse_custom_ambient};
use hodge_ci::variety::{validate_custom_spec, SpecViolation};
use hodge_ci::{AmbientSpec, BigradedDims, CiSpec, CustomAmbient, Engine, HodgeDiamond};

fn quadric3() -> CustomAmbient {
    Engine::new().tower_of("quadric3", &CiSpec::in_projective(4, &[2]).unwrap()).unwrap()
}

#[test]
fn generated_tower_is_valid_and_canonical() {
    let tower = quadric3();
    assert_eq!((tower.dim, tower.degree, tower.sections.len()), (3, 2, 4));
    assert!(validate_custom_spec(&AmbientSpec::Custom(tower.clone())).is_empty());
    let text = emit_custom_ambient(&tower);
    let AmbientSpec::Custom(back) = parse_ambient_file(&text).unwrap() else { panic!() };
    assert_eq!(back, tower);
    assert_eq!(emit_custom_ambient(&back), text);
}

#[test]
fn hand_written_file_is_normalized() {
    let loose = r#"{
        "sections": [[[0,0,0,1],[2,1,1,2],[4,2,2,1]], [[0,0,0,1],[2,1,1,1]], [[0,0,0,2]]],
        "kind": "custom", "id": "quadric2", "dim": 2, "degree": 2
    }"#;
    let c = parse_custom_ambient(loose).unwrap();
    let canonical = emit_custom_ambient(&c);
    assert!(canonical.starts_with(r#"{"degree":2,"dim":2,"id":"quadric2","kind":"custom","#));
    assert_eq!(emit_custom_ambient(&parse_custom_ambient(&canonical).unwrap()), canonical);
}

#[test]
fn asymmetric_section_is_reported() {
    let mut tower = quadric3();
    let mut h3 = tower.sections[0].degree(3);
    h3.add_at(2, 1, 1).unwrap();
    let table = (0..=6).map(|k| if k == 3 { h3.clone() } else { tower.sections[0].degree(k) }).collect();
    tower.sections[0] = HodgeDiamond::unchecked(3, table);
    let report = validate_custom_spec(&AmbientSpec::Custom(tower.clone()));
    assert!(
        report.iter().any(|v| matches!(v, SpecViolation::Diamond { r: 0, violation: DiamondViolation::Conjugation { .. } })),
        "{report:?}"
    );
    assert!(AmbientSpec::custom(tower.clone()).is_err());
    assert!(parse_ambient_file(&emit_custom_ambient(&tower)).is_err());
}

#[test]
fn broken_chain_is_reported() {
    let mut tower = quadric3();
    tower.sections[2] = HodgeDiamond::points(2);
    let report = validate_custom_spec(&AmbientSpec::Custom(tower));
    assert!(report.contains(&SpecViolation::Chain { r: 2, expected: 1, found: 0 }), "{report:?}");
    assert!(!report.iter().any(|v| matches!(v, SpecViolation::Lefschetz { .. })));
}

#[test]
fn wrong_degree_is_reported() {
    let mut tower = quadric3();
    tower.degree = 3;
    let report = validate_custom_spec(&AmbientSpec::Custom(tower));
    assert_eq!(report, vec![SpecViolation::Degree { declared: 3, found: 2 }]);
}

#[test]
fn complete_intersections_in_custom_ambient() {
    let ambient = Arc::new(AmbientSpec::custom(quadric3()).unwrap());
    let e = Engine::new();
    for ds in [vec![2u32, 2], vec![3, 1], vec![2, 2, 2]] {
        let custom = e.compute_diamond(&CiSpec::new(ambient.clone(), ds.clone()).unwrap()).unwrap();
        let mut full = vec![2];
        full.extend(&ds);
        let direct = e.compute_diamond(&CiSpec::in_projective(4, &full).unwrap()).unwrap();
        assert_eq!(custom, direct, "{ds:?}");
    }
    let k3_like = e.compute_diamond(&CiSpec::new(ambient, vec![3]).unwrap()).unwrap();
    assert_eq!(k3_like.middle(), BigradedDims::from_entries([(2, 0, 1), (1, 1, 20), (0, 2, 1)]).unwrap());
}
