use symknot::bracket::jones;
use symknot::diagram::{canonical_form, same_diagram};
use symknot::moves::{
    apply_fingerprint, apply_move, composite_hosts, enumerate_sites, expand_composite, replay, replay_inverse, run_script,
    scramble, sites, sites_with_results, Direction, EquivClass, LogEntry, MoveError, MoveKind,
};
use symknot::refined::refined_w;
use symknot::spin::{potts_model, DEFAULT_TOL};
use symknot::{Diagram, RatFunc};

mod common;
use common::*;

const BOTH: [Direction; 2] = [Direction::Forward, Direction::Reverse];

#[test]
fn s1minus_on_the_kink() {
    let k = axis_kink();
    let s = enumerate_sites(&k, MoveKind::S1minus);
    assert_eq!(s.len(), 1);
    let u = apply_move(&k, MoveKind::S1minus, &s[0], Direction::Forward).unwrap();
    assert_eq!(u.len(), 0);
    assert_eq!(u.component_count(), 1);
    assert!(same_diagram(&u, &Diagram::unlink(1, true)));
    assert!(matches!(
        apply_move(&k, MoveKind::S1plus, &s[0], Direction::Forward),
        Err(MoveError::SiteMismatch(_))
    ));
    assert!(matches!(
        apply_move(&k, MoveKind::S1minus, &s[0], Direction::Reverse),
        Err(MoveError::SiteMismatch(_))
    ));
}

#[test]
fn r2_on_a_circle() {
    let c = Diagram::unlink(1, true);
    assert!(sites(&c, MoveKind::R2sym, Direction::Forward).is_empty());
    let ins = sites_with_results(&c, MoveKind::R2sym, Direction::Reverse);
    assert!(!ins.is_empty());
    for (_, r) in &ins {
        assert_eq!(r.len(), 4);
        assert!(r.validate_symmetric_union().passed());
    }
}

#[test]
fn s4_on_d4() {
    let d = d4();
    let found = sites_with_results(&d, MoveKind::S4, Direction::Forward)
        .into_iter()
        .chain(sites_with_results(&d, MoveKind::S4, Direction::Reverse))
        .collect::<Vec<_>>();
    assert!(!found.is_empty());
    let j = jones(&d).unwrap();
    for (_, r) in found {
        assert_eq!(jones(&r).unwrap(), j);
    }
}

#[test]
fn apply_then_undo() {
    for d in [axis_kink(), d4_prime(), fixture("u1_kinks")] {
        let before = canonical_form(&d);
        for kind in MoveKind::ELEMENTARY {
            for dir in BOTH {
                for (site, r) in sites_with_results(&d, kind, dir).into_iter().take(6) {
                    let back = sites_with_results(&r, kind, dir.inverse())
                        .into_iter()
                        .any(|(_, x)| canonical_form(&x) == before);
                    assert!(back, "{kind} {dir:?} {}", site.fingerprint());
                }
            }
        }
    }
}

#[test]
fn every_move_keeps_symmetry_and_jones() {
    let d = fixture("u1_kinks");
    let j = jones(&d).unwrap();
    let w = refined_w(&d).unwrap();
    for kind in MoveKind::ELEMENTARY {
        for dir in BOTH {
            for (_, r) in sites_with_results(&d, kind, dir) {
                r.validate().unwrap();
                assert!(r.validate_symmetric_union().passed(), "{kind} {dir:?}");
                assert_eq!(jones(&r).unwrap(), j, "{kind} {dir:?}");
                assert_eq!(refined_w(&r).unwrap(), w, "{kind} {dir:?}");
            }
        }
    }
}

#[test]
fn s2v_keeps_w() {
    let d = Diagram::unlink(2, true);
    let w = refined_w(&d).unwrap();
    let mut seen = 0;
    for dir in BOTH {
        for (_, r) in sites_with_results(&d, MoveKind::S2v, dir) {
            assert_eq!(r.axis_crossings().len(), 2);
            assert_eq!(refined_w(&r).unwrap(), w);
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn fingerprints_round_trip() {
    let d = d4_prime();
    for (site, r) in sites_with_results(&d, MoveKind::R3sym, Direction::Forward)
        .into_iter()
        .chain(sites_with_results(&d, MoveKind::S4, Direction::Reverse))
    {
        let (_, again) = apply_fingerprint(&d, site.kind, site.direction, &site.fingerprint()).unwrap();
        assert_eq!(canonical_form(&again), canonical_form(&r));
    }
    assert!(apply_fingerprint(&d, MoveKind::S4, Direction::Forward, "v9:x0.0").is_err());
}

#[test]
fn scramble_unknot_weak() {
    let u = Diagram::unlink(1, true);
    for seed in [1, 2, 3] {
        let (s, log) = scramble(&u, seed, 5, EquivClass::Weak);
        assert_eq!(log.len(), 5);
        assert_eq!(refined_w(&s).unwrap(), RatFunc::one());
        assert!(same_diagram(&replay_inverse(&s, &log).unwrap(), &u));
    }
}

#[test]
fn scramble_d4_keeps_i() {
    let d = d4();
    let m = potts_model(3, -1, 0, None, DEFAULT_TOL).unwrap();
    let i = m.normalized_i(&d).unwrap();
    let (s, log) = scramble(&d, 5, 8, EquivClass::Weak);
    assert_eq!(log.len(), 8);
    assert!(m.normalized_i(&s).unwrap().close(i, 1e-9));
    assert!(s.len() <= 40);
    assert!(same_diagram(&replay(&d, &log).unwrap(), &s));
    assert!(same_diagram(&replay_inverse(&s, &log).unwrap(), &d));
}

#[test]
fn symmetric_scramble_avoids_s2v() {
    let (_, log) = scramble(&Diagram::unlink(2, true), 9, 12, EquivClass::Symmetric);
    assert!(log.iter().all(|e| e.kind != MoveKind::S2v));
}

#[test]
fn scramble_is_deterministic() {
    let a = scramble(&d4_prime(), 42, 4, EquivClass::Weak);
    let b = scramble(&d4_prime(), 42, 4, EquivClass::Weak);
    assert_eq!(a.1, b.1);
    assert_eq!(a.0.serialize(), b.0.serialize());
}

#[test]
fn logs_serialize() {
    let (_, log) = scramble(&axis_kink(), 3, 3, EquivClass::Weak);
    let text = serde_json::to_string(&log).unwrap();
    let back: Vec<LogEntry> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, log);
    assert!(text.contains("\"direction\""));
}

#[test]
fn kind_names() {
    for k in MoveKind::ELEMENTARY {
        assert_eq!(MoveKind::parse(&k.to_string()), Some(k));
    }
    assert_eq!(MoveKind::parse("S4mn(2,-1)"), Some(MoveKind::S4mn(2, -1)));
    assert_eq!(MoveKind::parse("S2pmn(-1,-2)"), Some(MoveKind::S2pmn(-1, -2)));
    assert_eq!(MoveKind::parse("S2pmn(2,1)"), None);
    assert!(!MoveKind::S2v.allowed_in(EquivClass::Symmetric));
    assert!(MoveKind::S2v.allowed_in(EquivClass::Weak));
}

fn check_script(kind: MoveKind) -> Vec<(MoveKind, Direction)> {
    let sc = expand_composite(kind).unwrap();
    let ds = run_script(&sc.start, &sc.steps).unwrap();
    for d in &ds {
        assert!(d.validate_symmetric_union().passed(), "{kind}");
    }
    assert_eq!(canonical_form(ds.last().unwrap()), canonical_form(&sc.target));
    let (a, b) = composite_hosts(kind).unwrap();
    assert!(same_diagram(&a, &sc.start) && same_diagram(&b, &sc.target));
    sc.steps.iter().map(|s| (s.kind, s.direction)).collect()
}

#[test]
fn composite_examples() {
    assert_eq!(check_script(MoveKind::S4mn(1, 1)), vec![(MoveKind::S4, Direction::Forward)]);
    let r2 = check_script(MoveKind::S4mn(2, 0));
    assert_eq!(r2.len(), 2);
    assert!(r2.iter().all(|(k, _)| *k == MoveKind::R2sym));
    let s2 = check_script(MoveKind::S2pmn(-1, -2));
    assert_eq!(s2.iter().filter(|(k, _)| *k == MoveKind::S2pm).count(), 2);
    assert!(s2.iter().all(|(k, _)| matches!(k, MoveKind::S2pm | MoveKind::S4 | MoveKind::R1sym | MoveKind::R2sym | MoveKind::R3sym)));
    let s21 = check_script(MoveKind::S4mn(2, 1));
    assert!(s21.iter().all(|(k, _)| matches!(k, MoveKind::S4 | MoveKind::R2sym | MoveKind::R3sym)));
}

#[test]
fn composite_jones_is_preserved() {
    for kind in [MoveKind::S4mn(2, 2), MoveKind::S4mn(-1, 2), MoveKind::S2pmn(-1, -1)] {
        let (a, b) = composite_hosts(kind).unwrap();
        assert_eq!(jones(&a).unwrap(), jones(&b).unwrap(), "{kind}");
    }
}

#[test]
fn composite_errors() {
    assert!(matches!(expand_composite(MoveKind::S2pmn(1, -2)), Err(MoveError::UnsupportedSigns(_))));
    assert!(matches!(expand_composite(MoveKind::S4mn(5, 1)), Err(MoveError::OutOfBound(_))));
    assert!(matches!(expand_composite(MoveKind::S4), Err(MoveError::UnsupportedSigns(_))));
}
