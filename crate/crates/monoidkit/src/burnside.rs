//! Exact oracles for free Burnside groups `B(k, n)` of exponent `n` in
//! `{1, 2, 3}`: normal forms, multiplication, inverses and identity tests.
//!
//! Exponent 2 groups are elementary abelian, so elements are parity vectors.
//! Exponent 3 groups are nilpotent of class 3 and 2-Engel; elements are
//! exponent vectors over the basic commutators of weight 1 (generators),
//! weight 2 (`[a_j, a_i]`, `j > i`) and weight 3 (`[a_r, a_s, a_t]`,
//! `r > s > t`), multiplied by symbol collection. Exponents 4 and above are a
//! declared capability gap, surfaced as an error.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BurnsideError {
    #[error("no Burnside oracle for exponent {0}; supported exponents are 1, 2, 3")]
    UnsupportedExponent(u32),
    #[error("generator count {0} exceeds the supported maximum {1}")]
    TooManyGenerators(usize, usize),
    #[error("element does not belong to this oracle (exponent or generator count mismatch)")]
    ShapeMismatch,
    #[error("enumeration exceeded the cap of {0} elements")]
    EnumerationCap(usize),
    #[error("letter {0} is not a generator index below {1}")]
    BadLetter(usize, usize),
}

/// Normal form of a Burnside group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BurnsideElement {
    /// exponent 1: the trivial group
    One,
    /// exponent 2: parity per generator
    Parity(u64),
    /// exponent 3: exponents mod 3 over the basic commutator basis
    Vector(Vec<u8>),
}

/// Oracle fixing the exponent and an ordered generator set.
#[derive(Clone, Debug)]
pub struct BurnsideOracle {
    n: u32,
    k: usize,
    /// basis ids: 0..k generators, then weight-2 pairs, then weight-3 triples
    w2_base: usize,
    w3_base: usize,
    dim: usize,
}

const MAX_GENERATORS: usize = 64;

impl BurnsideOracle {
    pub fn new(n: u32, k: usize) -> Result<Self, BurnsideError> {
        if !(1..=3).contains(&n) {
            return Err(BurnsideError::UnsupportedExponent(n));
        }
        if k > MAX_GENERATORS {
            return Err(BurnsideError::TooManyGenerators(k, MAX_GENERATORS));
        }
        let c2 = k * k.saturating_sub(1) / 2;
        let c3 = if k >= 3 { k * (k - 1) * (k - 2) / 6 } else { 0 };
        Ok(BurnsideOracle {
            n,
            k,
            w2_base: k,
            w3_base: k + c2,
            dim: k + c2 + c3,
        })
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn generator_count(&self) -> usize {
        self.k
    }

    /// `|B(k, n)|` for the supported exponents.
    pub fn group_order(&self) -> u128 {
        match self.n {
            1 => 1,
            2 => 1u128 << self.k,
            _ => 3u128.pow(self.dim as u32),
        }
    }

    pub fn identity(&self) -> BurnsideElement {
        match self.n {
            1 => BurnsideElement::One,
            2 => BurnsideElement::Parity(0),
            _ => BurnsideElement::Vector(vec![0; self.dim]),
        }
    }

    pub fn generator(&self, i: usize) -> Result<BurnsideElement, BurnsideError> {
        if i >= self.k {
            return Err(BurnsideError::BadLetter(i, self.k));
        }
        Ok(match self.n {
            1 => BurnsideElement::One,
            2 => BurnsideElement::Parity(1 << i),
            _ => {
                let mut v = vec![0; self.dim];
                v[i] = 1;
                BurnsideElement::Vector(v)
            }
        })
    }

    pub fn is_identity(&self, a: &BurnsideElement) -> bool {
        match a {
            BurnsideElement::One => true,
            BurnsideElement::Parity(bits) => *bits == 0,
            BurnsideElement::Vector(v) => v.iter().all(|&e| e == 0),
        }
    }

    fn check_shape(&self, a: &BurnsideElement) -> Result<(), BurnsideError> {
        let ok = match (self.n, a) {
            (1, BurnsideElement::One) => true,
            (2, BurnsideElement::Parity(bits)) => self.k == 64 || *bits < (1u64 << self.k),
            (3, BurnsideElement::Vector(v)) => v.len() == self.dim,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(BurnsideError::ShapeMismatch)
        }
    }

    pub fn multiply(
        &self,
        a: &BurnsideElement,
        b: &BurnsideElement,
    ) -> Result<BurnsideElement, BurnsideError> {
        self.check_shape(a)?;
        self.check_shape(b)?;
        Ok(match (a, b) {
            (BurnsideElement::One, BurnsideElement::One) => BurnsideElement::One,
            (BurnsideElement::Parity(x), BurnsideElement::Parity(y)) => {
                BurnsideElement::Parity(x ^ y)
            }
            (BurnsideElement::Vector(x), BurnsideElement::Vector(y)) => {
                let mut syms = self.expand(x);
                syms.extend(self.expand(y));
                self.collect(syms)
            }
            _ => unreachable!("shapes checked above"),
        })
    }

    pub fn inverse(&self, a: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.check_shape(a)?;
        Ok(match a {
            BurnsideElement::One => BurnsideElement::One,
            BurnsideElement::Parity(x) => BurnsideElement::Parity(*x),
            BurnsideElement::Vector(x) => {
                // reverse the expansion and invert each symbol (s^-1 = s^2)
                let mut syms = self.expand(x);
                syms.reverse();
                let doubled: Vec<u16> = syms.iter().flat_map(|&s| [s, s]).collect();
                self.collect(doubled)
            }
        })
    }

    /// Image of a word over generator indices under the canonical projection.
    pub fn sigma(&self, word: &[usize]) -> Result<BurnsideElement, BurnsideError> {
        for &l in word {
            if l >= self.k {
                return Err(BurnsideError::BadLetter(l, self.k));
            }
        }
        Ok(match self.n {
            1 => BurnsideElement::One,
            2 => {
                let mut bits = 0u64;
                for &l in word {
                    bits ^= 1 << l;
                }
                BurnsideElement::Parity(bits)
            }
            _ => self.collect(word.iter().map(|&l| l as u16).collect()),
        })
    }

    /// All elements, by closure under right multiplication by generators.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<BurnsideElement>, BurnsideError> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        let id = self.identity();
        seen.insert(id.clone());
        out.push(id.clone());
        queue.push_back(id);
        let gens: Vec<BurnsideElement> = (0..self.k).map(|i| self.generator(i).unwrap()).collect();
        while let Some(e) = queue.pop_front() {
            for g in &gens {
                let next = self.multiply(&e, g)?;
                if seen.insert(next.clone()) {
                    if out.len() >= cap {
                        return Err(BurnsideError::EnumerationCap(cap));
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    /// Render a normal form over generator names, `"1"` for the identity.
    pub fn format(&self, a: &BurnsideElement, names: &[char]) -> String {
        match a {
            BurnsideElement::One => "1".to_string(),
            BurnsideElement::Parity(bits) => {
                let mut s = String::new();
                for (i, &name) in names.iter().enumerate().take(self.k) {
                    if bits >> i & 1 == 1 {
                        s.push(name);
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            }
            BurnsideElement::Vector(v) => {
                let mut s = String::new();
                for (id, &e) in v.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !s.is_empty() {
                        s.push(' ');
                    }
                    let _ = write!(s, "{}", self.symbol_name(id, names));
                    if e > 1 {
                        let _ = write!(s, "^{e}");
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            }
        }
    }

    fn symbol_name(&self, id: usize, names: &[char]) -> String {
        if id < self.w2_base {
            names[id].to_string()
        } else if id < self.w3_base {
            let (j, i) = self.w2_pair(id);
            format!("[{},{}]", names[j], names[i])
        } else {
            let (r, s, t) = self.w3_triple(id);
            format!("[{},{},{}]", names[r], names[s], names[t])
        }
    }

    fn w2_id(&self, hi: usize, lo: usize) -> usize {
        debug_assert!(hi > lo);
        self.w2_base + hi * (hi - 1) / 2 + lo
    }

    fn w2_pair(&self, id: usize) -> (usize, usize) {
        let mut rest = id - self.w2_base;
        let mut hi = 1;
        while rest >= hi {
            rest -= hi;
            hi += 1;
        }
        (hi, rest)
    }

    /// Combinatorial number system over descending triples.
    fn w3_id(&self, r: usize, s: usize, t: usize) -> usize {
        debug_assert!(r > s && s > t);
        self.w3_base + r * (r - 1) * (r - 2) / 6 + s * (s - 1) / 2 + t
    }

    fn w3_triple(&self, id: usize) -> (usize, usize, usize) {
        let mut rest = id - self.w3_base;
        let mut r = 2;
        while (r + 1) * r * (r - 1) / 6 <= rest {
            r += 1;
        }
        rest -= r * (r - 1) * (r - 2) / 6;
        let mut s = 1;
        while (s + 1) * s / 2 <= rest {
            s += 1;
        }
        rest -= s * (s - 1) / 2;
        (r, s, rest)
    }

    fn weight(&self, id: usize) -> u8 {
        if id < self.w2_base {
            1
        } else if id < self.w3_base {
            2
        } else {
            3
        }
    }

    fn expand(&self, v: &[u8]) -> Vec<u16> {
        let mut syms = Vec::new();
        for (id, &e) in v.iter().enumerate() {
            for _ in 0..e {
                syms.push(id as u16);
            }
        }
        syms
    }

    /// Commutator `[A, B]` of two basis symbols as a symbol sequence, empty
    /// when central. Weight-3 values follow the 2-Engel laws: `[x, y, z]`
    /// vanishes on repeated arguments and is alternating in its arguments.
    fn bracket(&self, a: u16, b: u16) -> Vec<u16> {
        let (wa, wb) = (self.weight(a as usize), self.weight(b as usize));
        if wa as usize + wb as usize > 3 {
            return Vec::new();
        }
        if wa == 1 && wb == 1 {
            let (j, i) = (a as usize, b as usize);
            debug_assert!(j > i);
            return vec![self.w2_id(j, i) as u16];
        }
        // weight 2 against weight 1 (the basis order guarantees wa >= wb here)
        debug_assert!(wa == 2 && wb == 1);
        let (j, i) = self.w2_pair(a as usize);
        let l = b as usize;
        if l == i || l == j {
            return Vec::new();
        }
        let mut sorted = [j, i, l];
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        let sign_positive = permutation_is_even(&[j, i, l], &sorted);
        let id = self.w3_id(sorted[0], sorted[1], sorted[2]) as u16;
        if sign_positive {
            vec![id]
        } else {
            vec![id, id] // inverse: s^-1 = s^2
        }
    }

    /// Bubble collection into the basis order, then reduce exponents mod 3.
    fn collect(&self, mut syms: Vec<u16>) -> BurnsideElement {
        let mut i = 0usize;
        while i + 1 < syms.len() {
            let (a, b) = (syms[i], syms[i + 1]);
            if a > b {
                // A B = B A [A, B]
                let correction = self.bracket(a, b);
                syms[i] = b;
                syms[i + 1] = a;
                if !correction.is_empty() {
                    let at = i + 2;
                    syms.splice(at..at, correction);
                }
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
        let mut v = vec![0u8; self.dim];
        for &s in &syms {
            v[s as usize] = (v[s as usize] + 1) % 3;
        }
        BurnsideElement::Vector(v)
    }
}

fn permutation_is_even(from: &[usize; 3], to: &[usize; 3]) -> bool {
    // positions of `to` entries inside `from`; parity by inversion count
    let perm: Vec<usize> = to
        .iter()
        .map(|x| from.iter().position(|y| y == x).unwrap())
        .collect();
    let mut inversions = 0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}
