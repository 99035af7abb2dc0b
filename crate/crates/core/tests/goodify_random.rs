use merifold_core::agraphs::{Engine, MeridianSpec};
use merifold_core::patternspace::HnnWord;
use merifold_core::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, max: usize) -> Word {
    let len = rng.random_range(0..=max);
    let ints: Vec<i32> = (0..len).map(|_| [1, -1, 2, -2][rng.random_range(0..4)]).collect();
    Word::from_ints(2, &ints)
}

fn random_spec(rng: &mut ChaCha8Rng) -> MeridianSpec {
    let k = rng.random_range(0..=4);
    let pieces = (0..=k).map(|_| random_word(rng, 2)).collect();
    let signs = (0..k).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    MeridianSpec::new(HnnWord { pieces, signs }, rng.random_range(1..=2)).unwrap()
}

#[test]
fn random_goodify_runs() {
    let seed = std::env::var("GOODIFY_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7);
    let rounds = std::env::var("GOODIFY_ROUNDS").ok().and_then(|s| s.parse().ok()).unwrap_or(400);
    let eng = Engine::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gaps = std::collections::BTreeMap::new();
    for round in 0..rounds {
        let k = rng.random_range(1..=4);
        let specs: Vec<MeridianSpec> = (0..k).map(|_| random_spec(&mut rng)).collect();
        let out = match eng.goodify(&specs) {
            Ok(o) => o,
            Err(e) if e.is_falsified() => {
                let key = e.to_string().split(':').next().unwrap_or_default().to_string();
                *gaps.entry(key).or_insert(0) += 1;
                continue;
            }
            Err(e) => {
                let shown: Vec<String> = specs.iter().map(|s| format!("({}, x{})", s.path, s.gen)).collect();
                panic!("round {round}: {e}\n specs {shown:?}");
            }
        };
        assert!(eng.is_folded(&out.graph));
        assert!(out.certificate.rank() <= k);
        for t in &out.trace {
            assert!(t.after < t.before);
        }
        for s in &specs {
            assert!(eng.contains(&out.graph, &s.element()));
        }
    }
    println!("falsified outcomes: {gaps:?}");
}

