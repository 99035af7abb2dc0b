use alloc::vec;
use super::*;
use crate::braidspace::{BraidSpaceGroup, BraidWord};

fn whitehead() -> Satellite<WhiteheadSide, TorusOracle> {
    Satellite::new(WhiteheadSide::new(), TorusOracle::new(2, 3).unwrap()).unwrap()
}

fn cable(n: u32, m: u32) -> Satellite<BraidSide, TorusOracle> {
    Satellite::new(BraidSide::new(BraidSpaceGroup::cable(n, m).unwrap()), TorusOracle::new(2, 3).unwrap()).unwrap()
}

#[test]
fn bridge_numbers() {
    assert_eq!(bridge_number(PatternKind::Whitehead, 2).unwrap(), 4);
    assert_eq!(bridge_number(PatternKind::Braid { n: 3 }, 2).unwrap(), 6);
    assert!(bridge_number(PatternKind::Whitehead, 1).is_err());
    assert_eq!(whitehead().bridge_number(), 4);
    assert_eq!(cable(2, 1).bridge_number(), 4);
}

#[test]
fn braid_pattern_builds() {
    let beta = BraidWord::parse("s1 s1 s1", 2).unwrap();
    let s = Satellite::new(BraidSide::new(BraidSpaceGroup::artin(&beta).unwrap()), TorusOracle::new(2, 3).unwrap()).unwrap();
    assert_eq!(s.pattern.group().tau(1), 2);
    assert_eq!(s.bridge_number(), 4);
    assert!(cable(2, 3).pattern.group().is_cable());
}

#[test]
fn path_grammar() {
    let s = whitehead();
    let p = s.parse_path("x1 | e ab | E x2 l").unwrap();
    assert_eq!(p.depth(), 1);
    assert_eq!(s.show_path(&p), "x1 | e ab | E x2 l");
    assert!(matches!(s.parse_path("x1 | E a | e 1"), Err(Error::Parse { .. })));
    assert!(matches!(s.parse_path("x1 | e a"), Err(Error::Parse { .. })));
    assert!(s.parse_path("x1 | e c | E 1").is_err());
}

#[test]
fn amalgam_word_problem() {
    let s = whitehead();
    // e λ_1 E = l_V and e m_1 E = m_V.
    let l = s.lift_companion(s.companion.longitude());
    assert!(s.path_equal(&l, &s.lift(s.pattern.peripheral(0, 1))));
    let m = s.lift_companion(s.companion.meridian());
    assert!(s.path_equal(&m, &s.lift(s.pattern.peripheral(1, 0))));
    let x = s.parse_path("x1 | e b | E x2").unwrap();
    assert!(!s.is_trivial(&x));
    assert!(s.is_trivial(&s.path_mul(&x, &s.path_inverse(&x))));
}

#[test]
fn single_meridian_is_folded() {
    let s = whitehead();
    let out = s.fold_meridional(&[s.parse_path("1").unwrap()]).unwrap();
    assert_eq!(out.verdict, Verdict::Folded);
    let cert = s.certify_proper(&out).unwrap();
    assert_eq!(cert.separator, "l");
    assert_eq!(out.inputs_witnessed, 1);
}

#[test]
fn too_many_meridians() {
    let s = whitehead();
    let one = s.parse_path("1").unwrap();
    assert!(s.fold_meridional(&vec![one; 4]).is_err());
}

#[test]
fn repeated_meridian_folds_away() {
    let s = cable(2, 1);
    let p = s.parse_path("x2 | e ab | E x1").unwrap();
    let out = s.fold_meridional(&[p.clone(), p]).unwrap();
    assert_eq!(out.verdict, Verdict::Folded);
    assert_eq!(s.complexity(&out.graph).0, 1);
    assert!(out.trace.windows(2).all(|w| w[1].after < w[0].after));
    let cert = s.extract_tameness(&out, 2).unwrap();
    assert_eq!(cert.meridians.len(), 1);
}

#[test]
fn full_edge_group_is_not_certified() {
    let s = whitehead();
    let mut out = s.fold_meridional(&[s.parse_path("x2 | e b | E 1").unwrap()]).unwrap();
    let f = out.graph.edge_ids()[0];
    out.graph.edges[f].as_mut().unwrap().group = SatEGroup::Full;
    assert!(matches!(s.certify_proper(&out), Err(Error::Precondition(_))));
}
