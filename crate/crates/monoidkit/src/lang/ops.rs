//! Automaton operations: Hopcroft minimization, canonical numbering, boolean
//! combinations, concatenation, iteration and factor closure.

use std::collections::{HashMap, VecDeque};

use super::nfa::Nfa;
use super::Dfa;

impl Dfa {
    /// Restrict to the part reachable from the initial state (BFS order).
    fn reachable(&self) -> Dfa {
        let letters = self.alphabet.len();
        let mut map = vec![usize::MAX; self.states];
        let mut order = Vec::new();
        map[self.initial] = 0;
        order.push(self.initial);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for a in 0..letters {
                let t = self.step(q, a);
                if map[t] == usize::MAX {
                    map[t] = order.len();
                    order.push(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(order.len() * letters);
        let mut finals = Vec::with_capacity(order.len());
        for &q in &order {
            finals.push(self.finals[q]);
            for a in 0..letters {
                delta.push(map[self.step(q, a)] as u32);
            }
        }
        Dfa::new(self.alphabet.clone(), order.len(), 0, finals, delta)
    }

    /// Hopcroft partition refinement on the reachable part, followed by
    /// canonical BFS renumbering. The result is the unique minimal complete
    /// DFA of the language with deterministic state numbers.
    pub fn minimized(&self) -> Dfa {
        let dfa = self.reachable();
        let n = dfa.states;
        let letters = dfa.alphabet.len();
        if n <= 1 {
            return dfa;
        }

        // reverse transitions per letter
        let mut rev: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); n]; letters];
        for q in 0..n {
            for a in 0..letters {
                rev[a][dfa.step(q, a)].push(q as u32);
            }
        }

        let mut block_of: Vec<u32> = dfa.finals.iter().map(|&f| if f { 0 } else { 1 }).collect();
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(), Vec::new()];
        for q in 0..n {
            blocks[block_of[q] as usize].push(q as u32);
        }
        if blocks[1].is_empty() {
            blocks.pop();
        } else if blocks[0].is_empty() {
            blocks.remove(0);
            for b in block_of.iter_mut() {
                *b = 0;
            }
        }

        let mut worklist: VecDeque<(u32, u16)> = VecDeque::new();
        {
            let smaller = if blocks.len() == 2 && blocks[1].len() < blocks[0].len() {
                1
            } else {
                0
            };
            for a in 0..letters {
                worklist.push_back((smaller as u32, a as u16));
            }
        }

        // generation-stamped membership buffer for the current splitter
        let mut stamp = vec![0u32; n];
        let mut generation = 0u32;
        let mut touched: Vec<u32> = Vec::new();
        let mut touched_count: HashMap<u32, u32> = HashMap::new();
        while let Some((splitter, a)) = worklist.pop_front() {
            let a = a as usize;
            generation += 1;
            let members = blocks[splitter as usize].clone();
            for &q in &members {
                stamp[q as usize] = generation;
            }
            // blocks touched by the preimage of the splitter under letter a
            touched.clear();
            touched_count.clear();
            for &q in &members {
                for &p in &rev[a][q as usize] {
                    let b = block_of[p as usize];
                    let cnt = touched_count.entry(b).or_insert(0);
                    if *cnt == 0 {
                        touched.push(b);
                    }
                    *cnt += 1;
                }
            }
            touched.sort_unstable();
            for &b in &touched {
                let hit = touched_count[&b];
                let total = blocks[b as usize].len() as u32;
                if hit == total {
                    continue; // block maps entirely into the splitter
                }
                let mut hit_part = Vec::new();
                let mut rest = Vec::new();
                for &q in &blocks[b as usize] {
                    if stamp[dfa.step(q as usize, a)] == generation {
                        hit_part.push(q);
                    } else {
                        rest.push(q);
                    }
                }
                debug_assert_eq!(hit_part.len() as u32, hit);
                // the smaller part takes the fresh index and is always
                // enqueued; stale worklist entries for index b then denote the
                // larger part, which together realizes Hopcroft's replace rule
                let (stay, moved) = if hit_part.len() <= rest.len() {
                    (rest, hit_part)
                } else {
                    (hit_part, rest)
                };
                let new_idx = blocks.len() as u32;
                for &q in &moved {
                    block_of[q as usize] = new_idx;
                }
                blocks[b as usize] = stay;
                blocks.push(moved);
                for la in 0..letters {
                    worklist.push_back((new_idx, la as u16));
                }
            }
        }

        // quotient automaton
        let mut delta = vec![0u32; blocks.len() * letters];
        let mut finals = vec![false; blocks.len()];
        for (bi, block) in blocks.iter().enumerate() {
            let q = block[0] as usize;
            finals[bi] = dfa.finals[q];
            for a in 0..letters {
                delta[bi * letters + a] = block_of[dfa.step(q, a)];
            }
        }
        let quot = Dfa::new(
            dfa.alphabet.clone(),
            blocks.len(),
            block_of[dfa.initial] as usize,
            finals,
            delta,
        );
        quot.reachable() // canonical BFS numbering; every class is reachable
    }

    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for f in out.finals.iter_mut() {
            *f = !*f;
        }
        out.minimized()
    }

    fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(
            self.alphabet, other.alphabet,
            "product over mismatched alphabets"
        );
        let letters = self.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        index.insert((self.initial, other.initial), 0);
        pairs.push((self.initial, other.initial));
        let mut delta: Vec<u32> = Vec::new();
        let mut finals: Vec<bool> = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            head += 1;
            finals.push(keep(self.finals[p], other.finals[q]));
            for a in 0..letters {
                let pair = (self.step(p, a), other.step(q, a));
                let id = match index.get(&pair) {
                    Some(&id) => id,
                    None => {
                        let id = pairs.len();
                        index.insert(pair, id);
                        pairs.push(pair);
                        id
                    }
                };
                delta.push(id as u32);
            }
        }
        Dfa::new(self.alphabet.clone(), pairs.len(), 0, finals, delta).minimized()
    }

    pub fn intersection(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a || b)
    }

    pub fn concat(&self, other: &Dfa) -> Dfa {
        assert_eq!(self.alphabet, other.alphabet);
        let n1 = self.states;
        let mut nfa = Nfa::empty(self.alphabet.clone(), n1 + other.states);
        nfa.initials.push(self.initial);
        for q in 0..n1 {
            for a in 0..self.alphabet.len() {
                nfa.trans[q][a].push(self.step(q, a));
            }
            if self.finals[q] {
                nfa.eps[q].push(n1 + other.initial);
            }
        }
        for q in 0..other.states {
            for a in 0..self.alphabet.len() {
                nfa.trans[n1 + q][a].push(n1 + other.step(q, a));
            }
            nfa.finals[n1 + q] = other.finals[q];
        }
        nfa.determinize().minimized()
    }

    /// Kleene star; a fresh accepting start state keeps prefix loops honest.
    pub fn star(&self) -> Dfa {
        let n = self.states;
        let mut nfa = Nfa::empty(self.alphabet.clone(), n + 1);
        nfa.initials.push(n);
        nfa.finals[n] = true;
        nfa.eps[n].push(self.initial);
        for q in 0..n {
            for a in 0..self.alphabet.len() {
                nfa.trans[q][a].push(self.step(q, a));
            }
            if self.finals[q] {
                nfa.finals[q] = true;
                nfa.eps[q].push(self.initial);
            }
        }
        nfa.determinize().minimized()
    }

    pub fn plus(&self) -> Dfa {
        let mut nfa = Nfa::from_dfa(self);
        for q in 0..self.states {
            if self.finals[q] {
                nfa.eps[q].push(self.initial);
            }
        }
        nfa.determinize().minimized()
    }

    /// The language of all factors of members: `{u : exists x, y with xuy in L}`.
    ///
    /// Built as an NFA whose initial states are the useful states of the
    /// trimmed automaton and whose final states are the co-accessible ones.
    pub fn factor_closure(&self) -> Dfa {
        let letters = self.alphabet.len();
        let mut reach = vec![false; self.states];
        let mut stack = vec![self.initial];
        reach[self.initial] = true;
        while let Some(q) = stack.pop() {
            for a in 0..letters {
                let t = self.step(q, a);
                if !reach[t] {
                    reach[t] = true;
                    stack.push(t);
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.states];
        for q in 0..self.states {
            for a in 0..letters {
                rev[self.step(q, a)].push(q);
            }
        }
        let mut coacc = vec![false; self.states];
        let mut stack: Vec<usize> = (0..self.states).filter(|&q| self.finals[q]).collect();
        for &q in &stack {
            coacc[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !coacc[p] {
                    coacc[p] = true;
                    stack.push(p);
                }
            }
        }

        let mut nfa = Nfa::from_dfa(self);
        nfa.initials = (0..self.states).filter(|&q| reach[q] && coacc[q]).collect();
        nfa.finals = coacc;
        nfa.determinize().minimized()
    }

    /// Language equality via canonical minimal automata.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.minimized() == other.minimized()
    }

    pub fn is_empty_language(&self) -> bool {
        let m = self.minimized();
        m.states == 1 && !m.finals[0]
    }
}

#[cfg(test)]
mod tests {
    use super::super::builders::word_dfa;
    use super::super::Dfa;

    fn all_words(alphabet: &[char], max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &a in alphabet {
                    let mut s = w.clone();
                    s.push(a);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn word_star_membership() {
        let ab = word_dfa("ab", &['a', 'b']).star();
        assert!(ab.accepts(""));
        assert!(ab.accepts("abab"));
        assert!(!ab.accepts("aba"));
        assert!(!ab.accepts("ba"));
    }

    #[test]
    fn factor_closure_of_word_star() {
        let w = word_dfa("ab", &['a', 'b']).star();
        let f = w.factor_closure();
        assert!(f.accepts("ba"));
        assert!(!f.accepts("aa"));
        assert!(!f.accepts("bb"));
        // brute force on words up to length 6
        for u in all_words(&['a', 'b'], 6) {
            let expected = (0..6).any(|k| {
                let big = "ab".repeat(k + 4);
                big.contains(&u)
            });
            assert_eq!(f.accepts(&u), expected, "factor {u:?}");
        }
    }

    #[test]
    fn factor_closure_is_idempotent() {
        for pat in ["ab", "abcacb"] {
            let alpha: Vec<char> = {
                let mut v: Vec<char> = pat.chars().collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let l = word_dfa(pat, &alpha).star();
            let f = l.factor_closure();
            let ff = f.factor_closure();
            assert!(f.equivalent(&ff));
            // L is contained in F(L)
            let diff = l.intersection(&f.complement());
            assert!(diff.is_empty_language());
        }
    }

    #[test]
    fn factor_closure_of_full_star() {
        let a = word_dfa("a", &['a', 'b']).star();
        let f = a.factor_closure();
        assert!(f.equivalent(&a));
    }

    #[test]
    fn minimization_is_canonical_and_minimal() {
        // (ab)* built two different ways must give identical structures
        let d1 = word_dfa("ab", &['a', 'b']).star();
        let d2 = {
            let a = word_dfa("a", &['a', 'b']);
            let b = word_dfa("b", &['a', 'b']);
            a.concat(&b).star()
        };
        assert_eq!(d1.minimized(), d2.minimized());
        assert_eq!(d1.minimized().states(), 3); // cycle of 2 plus sink
    }

    #[test]
    fn text_round_trip() {
        let d = word_dfa("ab", &['a', 'b']).star();
        let text = d.to_text();
        let back = Dfa::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert!(back.equivalent(&d));
    }
}
