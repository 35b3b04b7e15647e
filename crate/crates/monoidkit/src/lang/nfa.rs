//! Nondeterministic automata with epsilon moves and multiple initial states;
//! only used as an intermediate for subset construction.

use std::collections::HashMap;

use super::Dfa;

#[derive(Clone, Debug)]
pub struct Nfa {
    pub alphabet: Vec<char>,
    pub states: usize,
    pub initials: Vec<usize>,
    pub finals: Vec<bool>,
    /// per state, per letter
    pub trans: Vec<Vec<Vec<usize>>>,
    pub eps: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn empty(alphabet: Vec<char>, states: usize) -> Self {
        let letters = alphabet.len();
        Nfa {
            alphabet,
            states,
            initials: Vec::new(),
            finals: vec![false; states],
            trans: vec![vec![Vec::new(); letters]; states],
            eps: vec![Vec::new(); states],
        }
    }

    pub fn from_dfa(dfa: &Dfa) -> Self {
        let mut nfa = Nfa::empty(dfa.alphabet().to_vec(), dfa.states());
        nfa.initials.push(dfa.initial());
        for q in 0..dfa.states() {
            nfa.finals[q] = dfa.is_final(q);
            for a in 0..dfa.alphabet().len() {
                nfa.trans[q][a].push(dfa.step(q, a));
            }
        }
        nfa
    }

    fn eps_closure(&self, set: &mut Vec<usize>) {
        let mut mark = vec![false; self.states];
        for &q in set.iter() {
            mark[q] = true;
        }
        let mut stack: Vec<usize> = set.clone();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if !mark[t] {
                    mark[t] = true;
                    set.push(t);
                    stack.push(t);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }

    /// Subset construction; the result is complete (the empty subset is a sink).
    pub fn determinize(&self) -> Dfa {
        let letters = self.alphabet.len();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut delta: Vec<u32> = Vec::new();
        let mut finals: Vec<bool> = Vec::new();

        let mut start = self.initials.clone();
        start.sort_unstable();
        start.dedup();
        self.eps_closure(&mut start);
        index.insert(start.clone(), 0);
        subsets.push(start);

        let mut next = 0usize;
        while next < subsets.len() {
            let current = subsets[next].clone();
            finals.push(current.iter().any(|&q| self.finals[q]));
            for a in 0..letters {
                let mut moved: Vec<usize> = current
                    .iter()
                    .flat_map(|&q| self.trans[q][a].iter().copied())
                    .collect();
                moved.sort_unstable();
                moved.dedup();
                self.eps_closure(&mut moved);
                let id = match index.get(&moved) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(moved.clone(), id);
                        subsets.push(moved);
                        id
                    }
                };
                delta.push(id as u32);
            }
            next += 1;
        }

        Dfa::new(self.alphabet.clone(), subsets.len(), 0, finals, delta)
    }
}
