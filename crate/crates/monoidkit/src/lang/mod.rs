//! Regular languages: complete DFAs, boolean combinations, factor closure,
//! minimization, transition monoids and syntactic ordered monoids.

mod builders;
mod nfa;
mod ops;
mod regex;
mod syntactic;

pub use builders::{lang_l2, lang_lemma32, lang_ln, power_progression, word_dfa};
pub use nfa::Nfa;
pub use regex::{compile, parse as parse_regex, pattern_letters, RegexNode};
pub use syntactic::{syntactic_ordered_monoid, SyntacticResult};

use std::fmt::Write as _;

use thiserror::Error;

use crate::monoid::MonoidError;

#[derive(Debug, Error)]
pub enum LangError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("letter {ch:?} at position {pos} is not in the declared alphabet")]
    UnknownLetter { pos: usize, ch: char },
    #[error("builder argument out of range: {0}")]
    BadArgument(String),
    #[error("state budget of {0} exceeded while constructing automaton")]
    StateCap(usize),
    #[error("malformed DFA file: {0}")]
    Format(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A complete deterministic automaton over an explicit ordered alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    states: usize,
    initial: usize,
    finals: Vec<bool>,
    /// `delta[q * |alphabet| + a]`
    delta: Vec<u32>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<char>,
        states: usize,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<u32>,
    ) -> Self {
        assert!(!alphabet.is_empty());
        assert_eq!(finals.len(), states);
        assert_eq!(delta.len(), states * alphabet.len());
        assert!(delta.iter().all(|&t| (t as usize) < states));
        assert!(initial < states);
        Dfa {
            alphabet,
            states,
            initial,
            finals,
            delta,
        }
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states).filter(|&q| self.finals[q])
    }

    #[inline]
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q * self.alphabet.len() + letter] as usize
    }

    pub fn letter_index(&self, ch: char) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == ch)
    }

    /// Membership; words with letters outside the alphabet are never accepted.
    pub fn accepts(&self, word: &str) -> bool {
        let mut q = self.initial;
        for ch in word.chars() {
            match self.letter_index(ch) {
                Some(a) => q = self.step(q, a),
                None => return false,
            }
        }
        self.finals[q]
    }

    pub fn accepts_letters(&self, word: &[usize]) -> bool {
        let mut q = self.initial;
        for &a in word {
            q = self.step(q, a);
        }
        self.finals[q]
    }

    /// Serialize in the line-based text format (exact round-trip).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let alpha: String = self.alphabet.iter().collect();
        let _ = writeln!(out, "alphabet {alpha}");
        let _ = writeln!(out, "states {}", self.states);
        let _ = writeln!(out, "initial {}", self.initial);
        let finals: Vec<String> = self.finals().map(|q| q.to_string()).collect();
        let _ = writeln!(out, "finals {}", finals.join(" "));
        for q in 0..self.states {
            let row: Vec<String> = (0..self.alphabet.len())
                .map(|a| self.step(q, a).to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LangError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let alpha_line = lines
            .next()
            .ok_or_else(|| LangError::Format("missing alphabet line".into()))?;
        let alphabet: Vec<char> = alpha_line
            .strip_prefix("alphabet ")
            .ok_or_else(|| LangError::Format("expected `alphabet ...`".into()))?
            .trim()
            .chars()
            .collect();
        if alphabet.is_empty() {
            return Err(LangError::EmptyAlphabet);
        }
        let states: usize = keyed(lines.next(), "states")?;
        let initial: usize = keyed(lines.next(), "initial")?;
        let finals_line = lines
            .next()
            .ok_or_else(|| LangError::Format("missing finals line".into()))?;
        let finals_body = finals_line
            .strip_prefix("finals")
            .ok_or_else(|| LangError::Format("expected `finals ...`".into()))?;
        let mut finals = vec![false; states];
        for tok in finals_body.split_whitespace() {
            let q: usize = tok
                .parse()
                .map_err(|_| LangError::Format(format!("bad final state {tok:?}")))?;
            if q >= states {
                return Err(LangError::Format(format!("final state {q} out of range")));
            }
            finals[q] = true;
        }
        let mut delta = Vec::with_capacity(states * alphabet.len());
        for q in 0..states {
            let line = lines
                .next()
                .ok_or_else(|| LangError::Format(format!("missing transition row {q}")))?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| LangError::Format(format!("bad target {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if row.len() != alphabet.len() {
                return Err(LangError::Format(format!(
                    "row {q} has {} targets, expected {}",
                    row.len(),
                    alphabet.len()
                )));
            }
            if row.iter().any(|&t| t as usize >= states) {
                return Err(LangError::Format(format!("target out of range in row {q}")));
            }
            delta.extend(row);
        }
        if initial >= states {
            return Err(LangError::Format("initial state out of range".into()));
        }
        Ok(Dfa::new(alphabet, states, initial, finals, delta))
    }
}

fn keyed(line: Option<&str>, key: &str) -> Result<usize, LangError> {
    let line = line.ok_or_else(|| LangError::Format(format!("missing {key} line")))?;
    line.strip_prefix(key)
        .ok_or_else(|| LangError::Format(format!("expected `{key} ...`")))?
        .trim()
        .parse()
        .map_err(|_| LangError::Format(format!("bad value in `{line}`")))
}
