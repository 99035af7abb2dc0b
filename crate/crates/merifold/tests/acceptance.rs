//! Acceptance suite: one line per criterion with its pinned runtime limit.
//!
//! Runs without the libtest harness so the lines always reach stdout.
//! Randomized criteria draw from ChaCha8 seeded by `MERIFOLD_SEED`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use merifold_core::agraphs::{Engine, MeridianSpec};
use merifold_core::braidspace::{BraidSpaceGroup, BraidWord, C1Verdict, PeripheralClass, SemidirectElement};
use merifold_core::patternspace::{HnnWord, Lemma4Case, NormalFormStar, PatternGroup, Side};
use merifold_core::satellites::{
    bridge_number, BraidSide, PatternKind, PatternSide, PeripheralVerdict, SatEGroup, Satellite, TorusOracle, Verdict,
    WhiteheadSide,
};
use merifold_core::word::{reduced_words_up_to, Word};
use merifold_core::SubgroupGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that are red by analysis, with the reason printed under the line.
const DOCUMENTED_RED: &[(u8, &str)] = &[
    (1, "U_alpha ∩ U_omega = <m_V> (m_V = x2 X1 X2 x1 lies in both); only the peripheral form of the statement holds"),
    (6, "goodify meets an intersection conjugate to <m_V> that no edge-group type expresses; reported as Falsified"),
    (10, "merging pattern groups runs goodify and inherits the same <m_V> gap"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// Hand-folded core graphs: U_α = <x1, x2 x1 X2>, U_ω = <x2, X1 x2 x1>.
const U_ALPHA: [(usize, u32, usize); 3] = [(0, 1, 0), (0, 2, 1), (1, 1, 1)];
const U_OMEGA: [(usize, u32, usize); 3] = [(0, 2, 0), (1, 1, 0), (1, 2, 1)];

fn accepts(graph: &[(usize, u32, usize)], w: &Word) -> bool {
    let mut v = 0;
    for g in w.letters() {
        let next = if g.is_positive() {
            graph.iter().find(|e| e.0 == v && e.1 == g.index()).map(|e| e.2)
        } else {
            graph.iter().find(|e| e.2 == v && e.1 == g.index()).map(|e| e.0)
        };
        match next {
            Some(n) => v = n,
            None => return false,
        }
    }
    v == 0
}

fn c1_conjsep() -> Outcome {
    let r = PatternGroup::new().conjsep_check();
    let comps: Vec<String> = r.components.iter().map(|(rep, b)| format!("rep {rep}: <{}>", b[0])).collect();
    let detail = format!(
        "literal trivial: {}; components {comps:?}; every component a conjugate of <m_V>: {}",
        r.literal_trivial, r.peripheral_only
    );
    outcome(r.literal_trivial, detail)
}

fn c2_lemma4() -> Outcome {
    let group = PatternGroup::new();
    let words = reduced_words_up_to(2, 6);
    let sides = [(Side::Alpha, &U_ALPHA), (Side::Omega, &U_OMEGA)];
    let m_v = group.m_v().clone();
    let mut disagreements = Vec::new();
    let mut holds: BTreeMap<String, usize> = BTreeMap::new();
    let long = reduced_words_up_to(2, 12);
    for (side, graph) in &sides {
        // Nontrivial elements of U up to x-length 12, read off the hand automaton.
        let ball: Vec<&Word> = long.iter().filter(|v| !v.is_identity() && accepts(*graph, v)).collect();
        let x = group.meridian(*side);
        for a in &words {
            for case in Lemma4Case::ALL {
                let brute = match case {
                    Lemma4Case::Boundary => (1..=4).any(|k| accepts(*graph, &a.conjugate(&m_v.pow(k)))),
                    Lemma4Case::Meridian => (1..=4).any(|k| accepts(*graph, &a.conjugate(&x.pow(k)))),
                    // a^-1 U a ∩ U and U ∩ a U a^-1 are conjugate by a: test short v from both ends.
                    Lemma4Case::SelfConjugate => {
                        ball.iter().any(|v| accepts(*graph, &a.inverse().conjugate(v)) || accepts(*graph, &a.conjugate(v)))
                    }
                };
                let label = case.label(*side);
                match group.lemma4_decide(case, *side, a) {
                    Ok(d) => {
                        let recomposed = d.decomposition.as_ref().map(|dd| group.recompose(*side, dd) == *a).unwrap_or(true);
                        if d.holds != brute || !recomposed {
                            disagreements.push(format!("{label} a={a}"));
                        }
                        if d.holds {
                            *holds.entry(label).or_default() += 1;
                        }
                    }
                    Err(e) => disagreements.push(format!("{label} a={a}: {e}")),
                }
            }
        }
    }
    let detail = format!(
        "{} reduced words x 6 cases; holds per case {holds:?}; disagreements {} {:?}",
        words.len(),
        disagreements.len(),
        disagreements.iter().take(3).collect::<Vec<_>>()
    );
    outcome(words.len() == 1457 && disagreements.is_empty(), detail)
}

fn c3_normalizers() -> Outcome {
    let group = PatternGroup::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for (side, hand, name) in [(Side::Alpha, &U_ALPHA, "U_alpha"), (Side::Omega, &U_OMEGA, "U_omega")] {
        let u = group.subgroup(side);
        let n = u.normalizer();
        let same_as_hand = u.vertex_count() == 2
            && u.edge_count() == 3
            && hand.iter().all(|&(a, g, b)| u.step(a, merifold_core::Gen::pos(g)) == Some(b));
        ok &= &n == u && same_as_hand;
        parts.push(format!("N({name}) = {name}: {}", &n == u));
    }
    outcome(ok, parts.join(", "))
}

fn c4_star() -> Outcome {
    let group = PatternGroup::new();
    let u = group.subgroup(Side::Alpha);
    let words = reduced_words_up_to(2, 8);
    let mut members = 0;
    let mut bad = Vec::new();
    for a in &words {
        let m = u.contains(a);
        let star = NormalFormStar::recognize(a);
        let star_ok = star.as_ref().map(|s| s.word() == *a).unwrap_or(true);
        if m != accepts(&U_ALPHA, a) || m != star.is_some() || !star_ok {
            bad.push(a.to_string());
        }
        members += m as usize;
    }
    outcome(bad.is_empty(), format!("{} words, {members} in U_alpha, mismatches {} {:?}", words.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

fn c5_rank(seed: u64) -> Outcome {
    let eng = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let (mut graphs, mut draws, mut folded, mut bad) = (0, 0, 0, Vec::new());
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    while graphs < 200 && draws < 20_000 {
        draws += 1;
        let pieces = rng.random_range(1..=4);
        let mut pick = |n: usize| rng.random_range(0..n);
        let Some(b) = eng.sample_good(pieces, 3, &mut pick) else { continue };
        graphs += 1;
        let rank = eng.rank_good(&b);
        let gens = eng.extract_generators(&b);
        let grushko = eng.grushko_sum(&b);
        match (rank, gens, grushko) {
            (Ok(r), Ok(g), Ok(s))
                if r == g.len() && r == s && (!eng.is_folded(&b) || g.iter().all(|(_, x)| eng.contains(&b, x))) =>
            {
                // Membership reading is exact on folded graphs only.
                folded += eng.is_folded(&b) as usize;
                *ranks.entry(r).or_default() += 1;
            }
            other => bad.push(format!("{other:?}").chars().take(80).collect::<String>()),
        }
    }
    outcome(graphs == 200 && bad.is_empty(), format!("{graphs} graphs in {draws} draws ({folded} folded, membership checked); ranks {ranks:?}; mismatches {}", bad.len()))
}

fn random_word(rng: &mut ChaCha8Rng, max: usize) -> Word {
    let len = rng.random_range(0..=max);
    let ints: Vec<i32> = (0..len).map(|_| [1, -1, 2, -2][rng.random_range(0..4)]).collect();
    Word::from_ints(2, &ints)
}

fn c6_goodify(seed: u64) -> Outcome {
    let eng = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
    let (mut certified, mut gaps, mut other) = (0, 0, Vec::new());
    let mut moves = 0;
    for _ in 0..100 {
        let k = rng.random_range(1..=4);
        let specs: Vec<MeridianSpec> = (0..k)
            .map(|_| {
                let len = rng.random_range(0..=4);
                let pieces = (0..=len).map(|_| random_word(&mut rng, 2)).collect();
                let signs = (0..len).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
                MeridianSpec::new(HnnWord { pieces, signs }, rng.random_range(1..=2)).unwrap()
            })
            .collect();
        match eng.goodify(&specs) {
            Ok(out) => {
                let good = eng.classify(&out.graph).is_ok() && eng.is_folded(&out.graph);
                let descent = out.trace.iter().all(|t| t.after < t.before)
                    && out.trace.windows(2).all(|p| p[1].before == p[0].after)
                    && out.trace.first().map(|t| t.before == out.initial).unwrap_or(true);
                let members = specs.iter().all(|s| eng.contains(&out.graph, &s.element()));
                if good && descent && members && out.certificate.rank() <= k {
                    certified += 1;
                    moves += out.trace.len();
                } else {
                    other.push(format!("good {good} descent {descent} members {members}"));
                }
            }
            Err(e) if e.is_falsified() => gaps += 1,
            Err(e) => other.push(e.to_string()),
        }
    }
    outcome(
        certified == 100,
        format!("{certified}/100 certified ({moves} moves), {gaps} hit the <m_V> gap, {} other failures {:?}", other.len(), other.first()),
    )
}

fn c7_lemma2() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut commuting = 0;
    for (n, m) in [(2u32, 3u32), (3, 1)] {
        let g = BraidSpaceGroup::cable(n, m).unwrap();
        let x1 = Word::generator(n, 1);
        let span = 2 * n as i64;
        for fiber in reduced_words_up_to(n, 4) {
            for shift in -span..=span {
                let e = SemidirectElement::new(fiber.clone(), shift);
                let a = g.centralizer_of_meridian(&e).unwrap();
                let b = g.push_into_fiber(&e, 1) == x1;
                let c = shift % n as i64 == 0 && fiber.letters().iter().all(|l| l.index() == 1);
                checked += 1;
                commuting += a as usize;
                if a != b || b != c {
                    bad.push(format!("cable({n},{m}) {e}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} elements, {commuting} commute with x1, mismatches {} {:?}", bad.len(), bad.first()))
}

fn random_space(rng: &mut ChaCha8Rng) -> BraidSpaceGroup {
    loop {
        let n = rng.random_range(2..=4u32);
        let built = if rng.random_bool(0.5) {
            BraidSpaceGroup::cable(n, rng.random_range(1..=2 * n))
        } else {
            let len = rng.random_range(1..=6);
            let letters: Vec<(u32, i8)> =
                (0..len).map(|_| (rng.random_range(1..n), if rng.random_bool(0.5) { 1 } else { -1 })).collect();
            BraidWord::new(n, letters).and_then(|b| BraidSpaceGroup::artin(&b))
        };
        if let Ok(g) = built {
            return g;
        }
    }
}

fn c8_c1(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x8);
    let (mut passed, mut falsified, mut full) = (0, 0, 0);
    let mut bad = Vec::new();
    for _ in 0..100 {
        let g = random_space(&mut rng);
        let n = g.strands();
        let count = rng.random_range(1..=5);
        let conj: Vec<SemidirectElement> = (0..count)
            .map(|_| {
                let len = rng.random_range(0..=4);
                let mut e = g.identity();
                for _ in 0..len {
                    let tok = rng.random_range(0..2 * n + 2);
                    let step = if tok < 2 * n {
                        let i = tok / 2 + 1;
                        let x = Word::generator(n, i);
                        SemidirectElement::fiber(if tok % 2 == 0 { x } else { x.inverse() })
                    } else {
                        SemidirectElement::new(Word::identity(n), if tok == 2 * n { 1 } else { -1 })
                    };
                    e = g.multiply(&e, &step);
                }
                e
            })
            .collect();
        let pushed: Vec<Word> = conj.iter().map(|c| g.push_into_fiber(c, 1)).collect();
        let rank = SubgroupGraph::from_generators(n, &pushed).unwrap().rank();
        match g.verify_c1(&conj) {
            Ok(r) => {
                let graph = SubgroupGraph::from_generators(n, &pushed).unwrap();
                let table_ok = match &r.verdict {
                    C1Verdict::FullFiber { .. } => {
                        full += 1;
                        true
                    }
                    C1Verdict::Basis { basis, peripheral } => {
                        basis.iter().all(|b| graph.contains(&b.word(n)))
                            && peripheral.iter().all(|p| match p.class {
                                PeripheralClass::Trivial => true,
                                PeripheralClass::Meridian { basis_position } => basis_position < basis.len(),
                            })
                    }
                };
                if r.basis_size() == rank && r.rank == rank && table_ok {
                    passed += 1;
                } else {
                    bad.push(format!("n={n}: basis {} rank {rank}", r.basis_size()));
                }
            }
            Err(e) if e.is_falsified() => falsified += 1,
            Err(e) => bad.push(e.to_string()),
        }
    }
    outcome(
        passed == 100 && falsified == 0,
        format!("{passed}/100 verified ({full} full fiber), falsified {falsified}, other {} {:?}", bad.len(), bad.first()),
    )
}

fn c9_bridge() -> Outcome {
    let mut ok = true;
    for b1 in 2..=5usize {
        ok &= bridge_number(PatternKind::Whitehead, b1) == Ok(2 * b1);
        for n in 2..=5u32 {
            ok &= bridge_number(PatternKind::Braid { n }, b1) == Ok(n as usize * b1);
        }
    }
    ok &= bridge_number(PatternKind::Whitehead, 1).is_err();
    let sat = Satellite::new(WhiteheadSide::new(), TorusOracle::new(2, 3).unwrap()).unwrap();
    ok &= sat.bridge_number() == 4;
    outcome(ok, "b1 in 2..5, n in 2..5: 2 b1 and n b1; Whitehead double of T(2,3) has b = 4")
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

fn sat_path(rng: &mut ChaCha8Rng, pattern: &[&str]) -> String {
    let depth = rng.random_range(0..=2);
    let mut s = letters(rng, pattern, 2);
    for _ in 0..depth {
        let c = letters(rng, &["a", "A", "b", "B"], 2);
        s = format!("{s} | e {c} | E {}", letters(rng, pattern, 2));
    }
    s
}

fn c10_whitehead(seed: u64) -> Outcome {
    let s = Satellite::new(WhiteheadSide::new(), TorusOracle::new(2, 3).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x10);
    let (mut certified, mut gaps, mut moves) = (0, 0, 0);
    let mut bad = Vec::new();
    for _ in 0..100 {
        let k = rng.random_range(1..=3);
        let texts: Vec<String> = (0..k).map(|_| sat_path(&mut rng, &["x1", "X1", "x2", "X2", "l", "L"])).collect();
        let specs: Vec<_> = texts.iter().map(|t| s.parse_path(t).unwrap()).collect();
        match s.fold_meridional(&specs) {
            Ok(out) => {
                let descent = out.trace.iter().all(|t| t.after < t.before);
                let proper_edges = out.graph.edge_ids().iter().all(|&f| out.graph.edge(f).group != SatEGroup::Full);
                let cert = s.certify_proper(&out);
                if out.verdict == Verdict::Folded && descent && proper_edges && cert.is_ok() {
                    certified += 1;
                    moves += out.trace.len();
                } else {
                    bad.push(format!("{texts:?}: {:?} {:?}", out.verdict, cert.err()));
                }
            }
            Err(e) if e.is_falsified() => gaps += 1,
            Err(e) => bad.push(format!("{texts:?}: {e}")),
        }
    }
    outcome(
        certified == 100,
        format!("{certified}/100 folded and certified proper ({moves} moves), {gaps} hit the <m_V> gap, other {} {:?}", bad.len(), bad.first()),
    )
}

const REVALIDATE_LEN: usize = 4;

fn c11_cable(seed: u64) -> Outcome {
    let s = Satellite::new(BraidSide::new(BraidSpaceGroup::cable(2, 1).unwrap()), TorusOracle::new(2, 3).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
    let (mut certified, mut rows, mut conj_checks, mut witnessed, mut unresolved) = (0, 0, 0, 0, 0);
    let mut bad = Vec::new();
    for _ in 0..100 {
        let k = rng.random_range(1..=3);
        let texts: Vec<String> = (0..k).map(|_| sat_path(&mut rng, &["x1", "X1", "x2", "X2", "t", "T"])).collect();
        let specs: Vec<_> = texts.iter().map(|t| s.parse_path(t).unwrap()).collect();
        let out = match s.fold_meridional(&specs) {
            Ok(o) if o.verdict == Verdict::Folded => o,
            Ok(o) => {
                bad.push(format!("{texts:?}: {:?}", o.verdict));
                continue;
            }
            Err(e) => {
                bad.push(format!("{texts:?}: {e}"));
                continue;
            }
        };
        let cert = match s.extract_tameness(&out, REVALIDATE_LEN) {
            Ok(c) => c,
            Err(e) => {
                bad.push(format!("{texts:?}: {e}"));
                continue;
            }
        };
        // Independent re-validation with the amalgam word problem only.
        let gens: Vec<_> = cert.meridians.iter().map(|m| m.element.clone()).collect();
        let words = s.words_up_to(&gens, REVALIDATE_LEN);
        let mut ok = true;
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if i == j {
                    continue;
                }
                for u in &words {
                    conj_checks += 1;
                    if s.path_equal(&s.path_conj(u, &gens[j]), &gens[i]) {
                        ok = false;
                    }
                }
            }
        }
        let m = s.lift(s.pattern.meridian());
        let short = s.words_up_to(&gens, 2);
        for row in &cert.peripheral {
            rows += 1;
            let gm = s.path_conj(&row.conjugator, &m);
            match row.verdict {
                PeripheralVerdict::Trivial => {
                    // No short U-word hits a meridian of this peripheral conjugate.
                    ok &= !short.iter().any(|u| !s.is_trivial(u) && s.path_equal(u, &gm));
                }
                PeripheralVerdict::Meridian { index: Some(i) } => {
                    // The conjugator is checked with the word problem and the membership reading.
                    witnessed += 1;
                    ok &= row.witness.as_ref().is_some_and(|c| {
                        s.member(&out.graph, c).unwrap_or(false) && s.path_equal(&s.path_conj(c, &gens[i]), &gm)
                    });
                }
                PeripheralVerdict::Meridian { index: None } => {
                    unresolved += 1;
                    ok = false;
                }
            }
        }
        if ok && out.inputs_witnessed == specs.len() {
            certified += 1;
        } else {
            bad.push(format!("{texts:?}: re-validation failed"));
        }
    }
    outcome(
        certified == 100,
        format!(
            "{certified}/100 folded with re-validated certificates; {conj_checks} conjugacy checks, {rows} peripheral rows ({witnessed} meridian rows with checked conjugators, {unresolved} unresolved); failures {} {:?}",
            bad.len(),
            bad.first()
        ),
    )
}

fn c12_determinism(seed: u64) -> Outcome {
    let dir = std::env::temp_dir().join(format!("merifold-acceptance-{}", std::process::id()));
    let trace = dir.join("trace");
    let dots = dir.join("dot");
    let t = trace.to_str().unwrap().to_string();
    let d = dots.to_str().unwrap().to_string();
    let cmds: Vec<Vec<&str>> = vec![
        vec!["word", "reduce", "x1 x2 X2 X1 x2"],
        vec!["word", "inverse", "x1 x2"],
        vec!["word", "conj", "x1 x2", "x2 x1"],
        vec!["word", "cyclic", "x2 x1 x2 X2"],
        vec!["sg", "graph", "-H", "x2 x1 X2,x1", "--format", "dot"],
        vec!["sg", "member", "-H", "x2 x1 X2,x1", "x2 x1 x1 X2"],
        vec!["sg", "intersect", "-H", "x2 x1 X2,x1", "-K", "x2 X1 X2 x1 X2,x2"],
        vec!["sg", "normalizer", "-H", "x1 x1,x2"],
        vec!["pattern", "conjsep"],
        vec!["pattern", "lemma", "--case", "2a", "--word", "x2 x1 x1 x1"],
        vec!["pattern", "subgroup", "--side", "omega", "--format", "dot"],
        vec!["pattern", "star", "x2 x1 X2 x1"],
        vec!["pattern", "britton", "l x1 L x2"],
        vec!["pattern", "goodify", "--meridian", "x1 | e x2", "--meridian", "x2:x1 | E 1", "--trace", &t],
        vec!["pattern", "sample", "--count", "5", "--format", "text"],
        vec!["braid", "action", "s2 S1 s2 s2", "-n", "3"],
        vec!["braid", "c1", "--cable", "3,1", "--conj", "x2 t", "--conj", "x1 x2"],
        vec!["braid", "centralizer", "--cable", "2,3", "x1 t t"],
        vec!["satellite", "fold", "--pattern", "whitehead", "--meridian", "x2 | e a | E x1", "--meridian", "1", "--trace", &t, "--dot", &d],
        vec!["satellite", "fold", "--pattern", "cable:2,1", "--meridian", "x2 | e a | E x1", "--format", "text"],
        vec!["satellite", "reduce", "--pattern", "whitehead", "x1 | e a | E X1"],
        vec!["bridge", "--pattern", "whitehead", "--b1", "2"],
        vec!["bridge", "--pattern", "whitehead", "--b1", "0"],
    ];
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_merifold"))
            .args(args)
            .env("MERIFOLD_SEED", seed.to_string())
            .output()
            .expect("binary runs");
        let mut files = Vec::new();
        for p in [trace.join("pattern-goodify.jsonl"), trace.join("satellite-fold.jsonl"), dots.join("final.dot")] {
            files.push(std::fs::read(p).unwrap_or_default());
        }
        (out.stdout, out.status.code(), files)
    };
    let mut differing = Vec::new();
    for c in &cmds {
        if run(c) != run(c) {
            differing.push(c.join(" "));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(differing.is_empty(), format!("{} commands over all verbs run twice, {} differ {:?}", cmds.len(), differing.len(), differing))
}

fn main() {
    let seed = merifold::seed_from_env().unwrap_or(0);
    let criteria: Vec<(u8, &str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "boundary subgroups conjugacy-separated", 1, Box::new(c1_conjsep)),
        (2, "peripheral-intersection decisions vs brute force", 120, Box::new(c2_lemma4)),
        (3, "boundary subgroups self-normalizing", 1, Box::new(c3_normalizers)),
        (4, "normal form (*) equals membership in U_alpha", 60, Box::new(c4_star)),
        (5, "rank formula for good A-graphs", 60, Box::new(move || c5_rank(seed))),
        (6, "goodify pipeline on meridional inputs", 300, Box::new(move || c6_goodify(seed))),
        (7, "meridian centralizer in cable spaces", 60, Box::new(c7_lemma2)),
        (8, "meridional bases of braid/cable space groups", 300, Box::new(move || c8_c1(seed))),
        (9, "bridge number formulas", 1, Box::new(c9_bridge)),
        (10, "Whitehead double of T(2,3): folded and proper", 600, Box::new(move || c10_whitehead(seed))),
        (11, "cable(2,1) of T(2,3): folded and tame", 600, Box::new(move || c11_cable(seed))),
        (12, "CLI byte-determinism under MERIFOLD_SEED", 120, Box::new(move || c12_determinism(seed))),
    ];
    println!("acceptance (MERIFOLD_SEED={seed})");
    let mut unexpected = Vec::new();
    let mut red = Vec::new();
    for (id, name, limit, f) in &criteria {
        let start = Instant::now();
        let o = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = o.pass && in_time;
        let mut line = format!(
            "[{}] {id:>2} {name}: {} ({:.2} s, limit {limit} s)",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64()
        );
        if !pass {
            red.push(*id);
            match DOCUMENTED_RED.iter().find(|(d, _)| d == id) {
                Some((_, why)) if !o.pass && in_time => {
                    let _ = write!(line, "\n       documented: {why}");
                }
                _ => unexpected.push(*id),
            }
        }
        println!("{line}");
    }
    println!("acceptance: {}/{} pass; red {red:?}; undocumented red {unexpected:?}", criteria.len() - red.len(), criteria.len());
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
