//! Syntactic ordered monoids of regular languages.
//!
//! The monoid is the transition monoid of the minimal complete DFA; the order
//! is the syntactic order oriented as `u <= v` iff every context accepting `u`
//! accepts `v` (`xuy` in `L` implies `xvy` in `L`). Note that part of the
//! literature uses the reverse orientation.

use super::{Dfa, LangError};
use crate::bits::BitMatrix;
use crate::monoid::{from_generators, FiniteMonoid, OrderedMonoid, Transformation};

/// Syntactic ordered monoid plus the data tying it back to the language.
#[derive(Clone, Debug)]
pub struct SyntacticResult {
    ordered: OrderedMonoid,
    accept: Vec<bool>,
    letter_map: Vec<usize>,
    alphabet: Vec<char>,
    transforms: Vec<Transformation>,
    minimal_dfa: Dfa,
}

impl SyntacticResult {
    pub fn monoid(&self) -> &FiniteMonoid {
        self.ordered.monoid()
    }

    pub fn ordered(&self) -> &OrderedMonoid {
        &self.ordered
    }

    /// Is `m` in the accept set `P` (the image of the language)?
    pub fn is_accepting(&self, m: usize) -> bool {
        self.accept[m]
    }

    pub fn accept_set(&self) -> &[bool] {
        &self.accept
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// The syntactic class of a single letter.
    pub fn letter_elem(&self, ch: char) -> Option<usize> {
        let i = self.alphabet.iter().position(|&a| a == ch)?;
        Some(self.letter_map[i])
    }

    pub fn letter_map(&self) -> &[usize] {
        &self.letter_map
    }

    /// Syntactic class of a word (identity for the empty word).
    pub fn word_elem(&self, word: &str) -> Option<usize> {
        let m = self.monoid();
        let mut acc = m.identity();
        for ch in word.chars() {
            acc = m.mul(acc, self.letter_elem(ch)?);
        }
        Some(acc)
    }

    /// The transformation of the minimal DFA realizing element `m`.
    pub fn transform(&self, m: usize) -> &Transformation {
        &self.transforms[m]
    }

    pub fn minimal_dfa(&self) -> &Dfa {
        &self.minimal_dfa
    }

    /// Membership of a word through the monoid (used to cross-check the DFA).
    pub fn accepts_via_monoid(&self, word: &str) -> Option<bool> {
        self.word_elem(word).map(|m| self.accept[m])
    }
}

/// Compute the syntactic ordered monoid of the language of `dfa`.
///
/// The element cap bounds the transition monoid closure.
pub fn syntactic_ordered_monoid(dfa: &Dfa, cap: usize) -> Result<SyntacticResult, LangError> {
    let min = dfa.minimized();
    let letters = min.alphabet().len();
    let states = min.states();

    let gens: Vec<Transformation> = (0..letters)
        .map(|a| Transformation::new((0..states).map(|q| min.step(q, a) as u32).collect()))
        .collect();
    let tm = from_generators(&gens, cap)?;
    let mut monoid = tm.monoid;
    monoid.set_gen_names(min.alphabet().to_vec());
    let transforms = tm.transforms;
    let n = monoid.size();

    let accept: Vec<bool> = transforms
        .iter()
        .map(|t| min.is_final(t.apply(min.initial())))
        .collect();
    let letter_map: Vec<usize> = monoid.generators().to_vec();

    // State preorder p <= q iff the right language of p is contained in that
    // of q; computed as the complement of backward-reachable "bad" pairs.
    let sim = state_simulation(&min);

    // m <= m' iff T_m(s) <= T_m'(s) for every state s. This realizes the
    // context-set containment definition because every context (x, y) factors
    // through a state delta(initial, x) and a residual word y.
    let mut leq = BitMatrix::new(n, n);
    for m1 in 0..n {
        'pair: for m2 in 0..n {
            for s in 0..states {
                if !sim.get(transforms[m1].apply(s), transforms[m2].apply(s)) {
                    continue 'pair;
                }
            }
            leq.set(m1, m2, true);
        }
    }

    // Antisymmetry is a theorem for the transition monoid of the minimal DFA;
    // a violation here means the minimization is broken.
    for m1 in 0..n {
        for m2 in (m1 + 1)..n {
            if leq.get(m1, m2) && leq.get(m2, m1) {
                return Err(LangError::Internal(format!(
                    "syntactic order failed antisymmetry on elements {m1}, {m2}"
                )));
            }
        }
    }

    let ordered = OrderedMonoid::from_parts_unchecked(monoid, leq);
    Ok(SyntacticResult {
        ordered,
        accept,
        letter_map,
        alphabet: min.alphabet().to_vec(),
        transforms,
        minimal_dfa: min,
    })
}

/// Pairs (p, q) such that every word accepted from p is accepted from q.
fn state_simulation(dfa: &Dfa) -> BitMatrix {
    let states = dfa.states();
    let letters = dfa.alphabet().len();
    let mut rev: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); states]; letters];
    for q in 0..states {
        for a in 0..letters {
            rev[a][dfa.step(q, a)].push(q as u32);
        }
    }
    // bad(p, q): exists w with delta(p, w) final and delta(q, w) not final
    let mut bad = BitMatrix::new(states, states);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for p in 0..states {
        for q in 0..states {
            if dfa.is_final(p) && !dfa.is_final(q) {
                bad.set(p, q, true);
                stack.push((p, q));
            }
        }
    }
    while let Some((p, q)) = stack.pop() {
        for rev_a in &rev {
            for &p0 in &rev_a[p] {
                for &q0 in &rev_a[q] {
                    if !bad.get(p0 as usize, q0 as usize) {
                        bad.set(p0 as usize, q0 as usize, true);
                        stack.push((p0 as usize, q0 as usize));
                    }
                }
            }
        }
    }
    let mut sim = BitMatrix::new(states, states);
    for p in 0..states {
        for q in 0..states {
            sim.set(p, q, !bad.get(p, q));
        }
    }
    sim
}
