//! Builders for the witness languages: the factor-complement languages `L_2`
//! and `L_n`, the cofinite power-insertion languages, and power progressions
//! of a fixed word.

use super::{Dfa, LangError};
use crate::words::has_power_suffix;

/// DFA accepting exactly the word `w` over `alphabet` (a chain plus sink).
pub fn word_dfa(w: &str, alphabet: &[char]) -> Dfa {
    let letters = alphabet.len();
    let chars: Vec<char> = w.chars().collect();
    let n = chars.len() + 2; // chain states plus sink
    let sink = n - 1;
    let mut delta = vec![sink as u32; n * letters];
    for (i, &c) in chars.iter().enumerate() {
        let a = alphabet
            .iter()
            .position(|&x| x == c)
            .expect("word letter not in alphabet");
        delta[i * letters + a] = (i + 1) as u32;
    }
    let mut finals = vec![false; n];
    finals[chars.len()] = true;
    Dfa::new(alphabet.to_vec(), n, 0, finals, delta)
}

/// The set of powers `w^(k + l*m)` for `m >= 0`; `l = 0` gives just `w^k`.
pub fn power_progression(w: &str, k: usize, l: usize, alphabet: &[char]) -> Dfa {
    let single = word_dfa(w, alphabet);
    let mut acc = epsilon_language(alphabet);
    for _ in 0..k {
        acc = acc.concat(&single);
    }
    if l == 0 {
        return acc;
    }
    let mut block = epsilon_language(alphabet);
    for _ in 0..l {
        block = block.concat(&single);
    }
    acc.concat(&block.star())
}

fn epsilon_language(alphabet: &[char]) -> Dfa {
    let letters = alphabet.len();
    let delta = vec![1u32; 2 * letters];
    Dfa::new(alphabet.to_vec(), 2, 0, vec![true, false], delta)
}

/// `L_2 = (A* \ F((abcacb)*)) ∪ (abcacb)^(1+2*)` over `{a, b, c}`.
pub fn lang_l2() -> Dfa {
    let alphabet = ['a', 'b', 'c'];
    let w = "abcacb";
    let factors = word_dfa(w, &alphabet).star().factor_closure();
    let odd_powers = power_progression(w, 1, 2, &alphabet);
    factors.complement().union(&odd_powers)
}

/// `L_n = (A* \ F(w*)) ∪ w^(1+n*)` with `w = (b^(n-1) a)^(n-1) (ab)^(n-1) a^2`
/// over `{a, b}`, for `n >= 3`.
pub fn lang_ln(n: usize) -> Result<Dfa, LangError> {
    if n < 3 {
        return Err(LangError::BadArgument(format!(
            "lang_ln requires n >= 3, got {n}"
        )));
    }
    let alphabet = ['a', 'b'];
    let w = witness_word(n);
    let factors = word_dfa(&w, &alphabet).star().factor_closure();
    let progression = power_progression(&w, 1, n, &alphabet);
    Ok(factors.complement().union(&progression))
}

/// The word `(b^(n-1) a)^(n-1) (ab)^(n-1) a^2` of length `n^2 + n`.
pub fn witness_word(n: usize) -> String {
    let mut w = String::new();
    for _ in 0..n - 1 {
        for _ in 0..n - 1 {
            w.push('b');
        }
        w.push('a');
    }
    for _ in 0..n - 1 {
        w.push('a');
        w.push('b');
    }
    w.push('a');
    w.push('a');
    w
}

/// The cofinite language `{p u^n q : u nonempty} ∪ {w : |w| >= bound}` where
/// the bound is `9` over `{x, y, z, t}` for `n = 2` and `(n+1)^2` over
/// `{x, y, t}` for `n >= 3`.
///
/// Built as the complement of the finite set of n-power-free words below the
/// length bound, realized as a trie.
pub fn lang_lemma32(n: usize) -> Result<Dfa, LangError> {
    if n < 2 {
        return Err(LangError::BadArgument(format!(
            "lang_lemma32 requires n >= 2, got {n}"
        )));
    }
    let (alphabet, bound): (Vec<char>, usize) = if n == 2 {
        (vec!['x', 'y', 'z', 't'], 9)
    } else {
        (vec!['x', 'y', 't'], (n + 1) * (n + 1))
    };
    let letters = alphabet.len();
    const NODE_CAP: usize = 50_000_000;

    // trie over n-power-free words of length < bound; node 0 is the root,
    // appending a letter that creates an n-power or reaches the bound leads
    // to the absorbing state DEAD (which accepts the target language)
    let mut node_words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut trans: Vec<u32> = Vec::new();

    let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    queue.push_back(0);
    trans.extend(std::iter::repeat_n(u32::MAX, letters));
    while let Some(node) = queue.pop_front() {
        let word = node_words[node].clone();
        for a in 0..letters {
            let mut next = word.clone();
            next.push(a as u8);
            let target = if next.len() >= bound || has_power_suffix(&next, n) {
                u32::MAX // dead
            } else {
                if node_words.len() >= NODE_CAP {
                    return Err(LangError::StateCap(NODE_CAP));
                }
                let id = node_words.len() as u32;
                node_words.push(next);
                trans.extend(std::iter::repeat_n(u32::MAX, letters));
                queue.push_back(id as usize);
                id
            };
            trans[node * letters + a] = target;
        }
    }

    let dead = node_words.len() as u32;
    let states = node_words.len() + 1;
    let mut delta = Vec::with_capacity(states * letters);
    for chunk in trans.chunks(letters) {
        for &t in chunk {
            delta.push(if t == u32::MAX { dead } else { t });
        }
    }
    delta.extend(std::iter::repeat_n(dead, letters));
    // accept = NOT an n-power-free short word, i.e. only the dead state
    let mut finals = vec![false; states];
    finals[dead as usize] = true;
    Ok(Dfa::new(alphabet, states, 0, finals, delta).minimized())
}
