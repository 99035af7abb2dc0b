use std::collections::BTreeMap;
use std::time::Instant;

use merifold_core::braidspace::BraidSpaceGroup;
use merifold_core::satellites::{BraidSide, PatternSide, PeripheralVerdict, Satellite, TorusOracle, Verdict, WhiteheadSide};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn env(name: &str, default: u64) -> u64 {
    std::env::var(name).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn letters(rng: &mut ChaCha8Rng, alphabet: &[&str], max: usize) -> String {
    let len = rng.random_range(0..=max);
    let w: Vec<&str> = (0..len).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect();
    if w.is_empty() {
        "1".into()
    } else {
        w.join(" ")
    }
}

/// A-path with 0, 2 or 4 edges.
fn path(rng: &mut ChaCha8Rng, pattern: &[&str]) -> String {
    let depth = rng.random_range(0..=2);
    let mut s = letters(rng, pattern, 2);
    for _ in 0..depth {
        let c = letters(rng, &["a", "A", "b", "B"], 2);
        s = format!("{s} | e {c} | E {}", letters(rng, pattern, 2));
    }
    s
}

#[test]
fn whitehead_over_trefoil() {
    let s = Satellite::new(WhiteheadSide::new(), TorusOracle::new(2, 3).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(env("SATELLITE_SEED", 11));
    let rounds = env("SATELLITE_ROUNDS", 60);
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let start = Instant::now();
    for round in 0..rounds {
        let k = rng.random_range(1..=3);
        let texts: Vec<String> = (0..k).map(|_| path(&mut rng, &["x1", "X1", "x2", "X2", "l", "L"])).collect();
        let specs: Vec<_> = texts.iter().map(|t| s.parse_path(t).unwrap()).collect();
        match s.fold_meridional(&specs) {
            Ok(out) => {
                assert!(out.trace.windows(2).all(|w| w[1].before == w[0].after && w[1].after < w[1].before));
                match out.verdict {
                    Verdict::Folded => {
                        s.certify_proper(&out).unwrap_or_else(|e| panic!("round {round} {texts:?}: {e}"));
                        *tally.entry("folded".into()).or_default() += 1;
                        for st in &out.trace {
                            *tally.entry(st.kind.into()).or_default() += 1;
                        }
                    }
                    Verdict::BoundExceeded { .. } => *tally.entry("bound".into()).or_default() += 1,
                }
            }
            Err(e) if e.is_falsified() => {
                let key: String = format!("{e}").chars().take(60).collect();
                eprintln!("round {round} {texts:?}: {e}");
                *tally.entry(key).or_default() += 1;
            }
            Err(e) => panic!("round {round} {texts:?}: {e}"),
        }
    }
    println!("whitehead outcomes {tally:?} in {:?}", start.elapsed());
}

#[test]
fn cable_over_trefoil() {
    let s = Satellite::new(BraidSide::new(BraidSpaceGroup::cable(2, 1).unwrap()), TorusOracle::new(2, 3).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(env("SATELLITE_SEED", 11));
    let rounds = env("SATELLITE_ROUNDS", 60);
    let start = Instant::now();
    let mut ranks = BTreeMap::new();
    for round in 0..rounds {
        let k = rng.random_range(1..=3);
        let texts: Vec<String> = (0..k).map(|_| path(&mut rng, &["x1", "X1", "x2", "X2", "t", "T"])).collect();
        let specs: Vec<_> = texts.iter().map(|t| s.parse_path(t).unwrap()).collect();
        let out = s.fold_meridional(&specs).unwrap_or_else(|e| panic!("round {round} {texts:?}: {e}"));
        assert_eq!(out.verdict, Verdict::Folded, "round {round} {texts:?}");
        assert_eq!(out.inputs_witnessed, k);
        let cert = s.extract_tameness(&out, 3).unwrap_or_else(|e| panic!("round {round} {texts:?}: {e}"));
        *ranks.entry(cert.meridians.len()).or_insert(0usize) += 1;
        let m = s.lift(s.pattern.meridian());
        for row in &cert.peripheral {
            if let PeripheralVerdict::Meridian { index } = row.verdict {
                let i = index.unwrap_or_else(|| panic!("round {round} {texts:?}: unresolved row"));
                let c = row.witness.as_ref().unwrap();
                assert!(s.member(&out.graph, c).unwrap());
                let gm = s.path_conj(&row.conjugator, &m);
                assert!(s.path_equal(&s.path_conj(c, &cert.meridians[i].element), &gm), "round {round} {texts:?}");
            }
        }
        let _ = s.pattern.pipeline();
    }
    println!("cable ranks {ranks:?} in {:?}", start.elapsed());
}

#[test]
fn long_conjugator_row_is_resolved() {
    // The U-conjugator of this row passes through a^2 = l m^6 in the companion.
    let s = Satellite::new(BraidSide::new(BraidSpaceGroup::cable(2, 1).unwrap()), TorusOracle::new(2, 3).unwrap()).unwrap();
    let specs: Vec<_> = ["1", "T X1 | e b | E x1 X1", "t"].iter().map(|t| s.parse_path(t).unwrap()).collect();
    let out = s.fold_meridional(&specs).unwrap();
    let cert = s.extract_tameness(&out, 2).unwrap();
    let m = s.lift(s.pattern.meridian());
    let mut meridian_rows = 0;
    for row in &cert.peripheral {
        if let PeripheralVerdict::Meridian { index: Some(i) } = row.verdict {
            meridian_rows += 1;
            let c = row.witness.as_ref().unwrap();
            assert!(s.member(&out.graph, c).unwrap());
            let gm = s.path_conj(&row.conjugator, &m);
            assert!(s.path_equal(&s.path_conj(c, &cert.meridians[i].element), &gm));
        }
    }
    assert!(cert.peripheral.iter().all(|r| r.verdict != PeripheralVerdict::Meridian { index: None }));
    assert!(meridian_rows > 0);
}
