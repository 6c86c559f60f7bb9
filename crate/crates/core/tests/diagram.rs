use proptest::prelude::*;
use symknot::diagram::{canonical_form, same_diagram, Color, SudFile, SymmetryFailure};
use symknot::{Diagram, DiagramError};

mod common;
use common::*;

#[test]
fn free_loop_file() {
    let d = Diagram::parse(r#"{"free_loops": [{"crosses_axis": true}], "crossings": [], "orientation": []}"#).unwrap();
    assert_eq!(d.free_loops().len(), 1);
    assert_eq!(d.component_count(), 1);
    assert!(d.validate_symmetric_union().passed());
}

#[test]
fn trefoil_basics() {
    let t = trefoil();
    t.validate().unwrap();
    assert_eq!(t.faces().count(), 5);
    assert_eq!(t.component_count(), 1);
    let w = positive_trefoil().writhe();
    assert_eq!((w.p_off, w.n_off, w.p_axis, w.n_axis), (3, 0, 0, 0));
}

#[test]
fn trefoil_black_faces_are_the_petals() {
    let t = trefoil();
    let col = t.chequerboard().unwrap();
    let faces = &col.faces;
    // corners per face, counted directly from the rotation system
    let mut size = vec![0; faces.count()];
    for c in 0..t.len() {
        for k in 0..4 {
            size[faces.corner(c, k)] += 1;
        }
    }
    let black: Vec<usize> = (0..faces.count()).filter(|&f| col.color[f] == Color::Black).collect();
    assert_eq!(black.len(), 3);
    assert!(black.iter().all(|&f| size[f] == 2));
    assert!(col.outer.iter().all(|&f| col.color[f] == Color::White));
}

#[test]
fn chequerboard_is_proper() {
    for d in [trefoil(), d4(), d4_prime()] {
        let col = d.chequerboard().unwrap();
        for c in 0..d.len() {
            for k in 0..4u8 {
                assert_ne!(col.corner_color(c, k), col.corner_color(c, (k + 1) % 4));
            }
        }
    }
}

#[test]
fn region_counts() {
    assert_eq!(Diagram::unlink(1, false).region_count(), 2);
    assert_eq!(Diagram::unlink(3, true).region_count(), 4);
    assert_eq!(trefoil().region_count(), 5);
    let d = d4();
    assert_eq!(d.region_count(), d.len() + 2);
}

#[test]
fn unlink_components() {
    for m in 1..5 {
        assert_eq!(Diagram::unlink(m, true).component_count(), m);
    }
}

#[test]
fn axis_kink_writhe() {
    let k = axis_kink();
    let w = k.writhe();
    assert_eq!((w.p_off, w.n_off, w.p_axis + w.n_axis), (0, 0, 1));
    let positive = if w.p_axis == 1 { k } else { k.mirror_image() };
    let w = positive.writhe();
    assert_eq!((w.p_off, w.n_off, w.p_axis, w.n_axis), (0, 0, 1, 0));
}

#[test]
fn d4_fixture() {
    let d = d4();
    d.validate().unwrap();
    assert!(d.validate_symmetric_union().passed());
    let axis = d.axis_crossings().len();
    assert_eq!(axis, 4);
    assert_eq!(d.len() - axis, 12);
    let paired = d.crossings().iter().filter(|x| x.mirror.is_some()).count();
    assert_eq!(paired, 12);
    let w = d.writhe();
    assert_eq!(w.p_axis + w.n_axis, 4);
    assert_eq!(d.faces().count(), d.len() + 2);
}

#[test]
fn d4_prime_fixture() {
    let d = d4_prime();
    d.validate().unwrap();
    assert!(d.validate_symmetric_union().passed());
    assert_eq!(d.axis_crossings().len(), 2);
}

#[test]
fn trefoil_without_axis_data_is_not_symmetric() {
    assert!(!trefoil().validate_symmetric_union().passed());
}

#[test]
fn equal_signs_in_a_pair_are_reported() {
    let d = d4();
    let c = (0..d.len()).find(|&c| d.crossing(c).mirror.is_some()).unwrap();
    let bad = d.switched(&[c]);
    let report = bad.validate_symmetric_union();
    assert!(report.failures.iter().any(|f| matches!(f, SymmetryFailure::PairSameSign { .. })), "{report:?}");
}

#[test]
fn parse_errors() {
    match Diagram::parse("{\"crossings\": [") {
        Err(DiagramError::Parse { field, .. }) => assert!(field.contains("line")),
        other => panic!("{other:?}"),
    }
    // edge 3 appears once
    let bad = r#"{"free_loops": [], "crossings": [{"id": 1, "edges": [1, 2, 2, 3]}], "orientation": []}"#;
    assert!(Diagram::parse(bad).is_err());
}

#[test]
fn round_trip() {
    for d in [trefoil(), d4(), d4_prime(), axis_kink(), fixture("u1_kinks")] {
        let text = d.serialize();
        let back = Diagram::parse(&text).unwrap();
        assert_eq!(back.serialize(), text);
        assert!(same_diagram(&back, &d));
    }
}

#[test]
fn reversal_keeps_signs() {
    // flipping both strands at every crossing leaves each sign unchanged
    for d in [positive_trefoil(), d4()] {
        let r = d.reversed();
        for c in 0..d.len() {
            assert_eq!(r.crossing(c).sign(), d.crossing(c).sign());
        }
    }
}

/// Renumbers edge labels and crossing ids of a SUD file by the given permutations.
fn relabel(file: &SudFile, edge_perm: &[i64], id_shift: u32) -> SudFile {
    let mut f = file.clone();
    let e = |x: i64| edge_perm[(x - 1) as usize];
    for x in &mut f.crossings {
        x.edges = x.edges.map(e);
        x.id += id_shift;
        x.mirror_partner = x.mirror_partner.map(|m| m + id_shift);
    }
    for o in &mut f.orientation {
        o.edge = e(o.edge);
        o.from_crossing += id_shift;
    }
    if let Some(p) = &mut f.outer_face {
        p.crossing += id_shift;
    }
    f.crossings.reverse();
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn renumbering_invariance(seed in any::<u64>(), shift in 0u32..100, pick in 0usize..3) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let d = [d4(), d4_prime(), positive_trefoil()][pick].clone();
        let file = d.to_sud();
        let edges = 2 * d.len() as i64;
        let mut perm: Vec<i64> = (1..=edges).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let e = Diagram::from_sud(&relabel(&file, &perm, shift)).unwrap();
        prop_assert_eq!(e.component_count(), d.component_count());
        prop_assert_eq!(e.writhe(), d.writhe());
        prop_assert_eq!(e.faces().count(), d.faces().count());
        prop_assert_eq!(canonical_form(&e), canonical_form(&d));
        prop_assert_eq!(e.validate_symmetric_union().passed(), d.validate_symmetric_union().passed());
    }
}
