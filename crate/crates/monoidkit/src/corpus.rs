//! Seeded corpora of small monoids and languages for the property suites:
//! random transformation monoids on up to 8 points with up to 3 generators,
//! and random small DFAs for syntactic-monoid checks. Everything is
//! deterministic in the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lang::Dfa;
use crate::monoid::{from_generators, FiniteMonoid, MonoidError, Transformation};

pub const CORPUS_ELEMENT_CAP: usize = 300;

/// Generate `count` transformation monoids with at most `cap` elements.
///
/// Candidates whose closure exceeds the cap are skipped, so the stream is
/// deterministic in `seed` regardless of how many candidates get discarded.
pub fn transformation_monoids(seed: u64, count: usize, cap: usize) -> Vec<FiniteMonoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let degree = rng.gen_range(2..=8usize);
        let gen_count = rng.gen_range(1..=3usize);
        let gens: Vec<Transformation> = (0..gen_count)
            .map(|_| {
                Transformation::new(
                    (0..degree)
                        .map(|_| rng.gen_range(0..degree as u32))
                        .collect(),
                )
            })
            .collect();
        match from_generators(&gens, cap) {
            Ok(tm) if tm.monoid.size() >= 2 => out.push(tm.monoid),
            Ok(_) => {}
            Err(MonoidError::ElementCap(_)) => {}
            Err(e) => unreachable!("corpus generation failed: {e}"),
        }
    }
    out
}

/// Generate `count` random complete DFAs over `alphabet` with `2..=max_states`
/// states, trimmed of trivial languages (empty or everything).
pub fn random_dfas(seed: u64, count: usize, alphabet: &[char], max_states: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = alphabet.len();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let states = rng.gen_range(2..=max_states);
        let delta: Vec<u32> = (0..states * letters)
            .map(|_| rng.gen_range(0..states as u32))
            .collect();
        let finals: Vec<bool> = (0..states).map(|_| rng.gen_bool(0.4)).collect();
        let dfa = Dfa::new(alphabet.to_vec(), states, 0, finals, delta).minimized();
        if dfa.states() >= 2 {
            out.push(dfa);
        }
    }
    out
}
