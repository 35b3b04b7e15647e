//! Finite monoids from generator/relation presentations with zero, computed
//! by shortlex Knuth-Bendix completion of the induced string rewriting system.
//!
//! Completion either reaches a confluent system, in which case normal forms
//! enumerate the monoid exactly, or gives up within its caps with an explicit
//! "undecided" error. It never returns a wrong table: the resulting table is
//! revalidated (associativity, identity, generation) before being handed out.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::monoid::{FiniteMonoid, MonoidError, TableCheck};

#[derive(Debug, Error)]
pub enum PresentError {
    #[error("builder argument out of range: {0}")]
    BadArgument(String),
    #[error("completion undecided within caps ({0})")]
    Undecided(String),
    #[error("enumeration exceeded the cap of {0} congruence classes")]
    ClassCap(usize),
    #[error("malformed presentation file: {0}")]
    Format(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A monoid presentation; words in `zero_words` are equal to an absorbing zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<char>,
    pub relations: Vec<(String, String)>,
    pub zero_words: Vec<String>,
}

impl Presentation {
    pub fn has_zero(&self) -> bool {
        !self.zero_words.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let gens: String = self.generators.iter().collect();
        let _ = writeln!(out, "gens {gens}");
        for (l, r) in &self.relations {
            let l = if l.is_empty() { "1" } else { l };
            let r = if r.is_empty() { "1" } else { r };
            let _ = writeln!(out, "rel {l} = {r}");
        }
        for z in &self.zero_words {
            let _ = writeln!(out, "zero {z}");
        }
        out
    }

    /// Parse the line-based format: `gens ab`, `rel aab = a`, `zero aba`.
    /// `1` stands for the empty word inside relations.
    pub fn from_text(text: &str) -> Result<Self, PresentError> {
        let mut generators: Option<Vec<char>> = None;
        let mut relations = Vec::new();
        let mut zero_words = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(g) = line.strip_prefix("gens ") {
                generators = Some(g.trim().chars().collect());
            } else if let Some(rel) = line.strip_prefix("rel ") {
                let (l, r) = rel
                    .split_once('=')
                    .ok_or_else(|| PresentError::Format(format!("relation without `=`: {line}")))?;
                let clean = |s: &str| {
                    let s = s.trim();
                    if s == "1" {
                        String::new()
                    } else {
                        s.to_string()
                    }
                };
                relations.push((clean(l), clean(r)));
            } else if let Some(z) = line.strip_prefix("zero ") {
                zero_words.push(z.trim().to_string());
            } else {
                return Err(PresentError::Format(format!("unrecognized line: {line}")));
            }
        }
        let generators =
            generators.ok_or_else(|| PresentError::Format("missing `gens` line".into()))?;
        let p = Presentation {
            generators,
            relations,
            zero_words,
        };
        p.check_letters()?;
        Ok(p)
    }

    fn check_letters(&self) -> Result<(), PresentError> {
        let ok = |w: &str| w.chars().all(|c| self.generators.contains(&c));
        for (l, r) in &self.relations {
            if !ok(l) || !ok(r) {
                return Err(PresentError::Format(format!(
                    "relation uses unknown letters: {l} = {r}"
                )));
            }
        }
        for z in &self.zero_words {
            if !ok(z) {
                return Err(PresentError::Format(format!(
                    "zero word uses unknown letters: {z}"
                )));
            }
        }
        Ok(())
    }
}

/// `<a, b : a^n b^n a^n = a^n, b^n a^n b^n = b^n,
///  a^(n+1) = b^(n+1) = a b^i a = b a^i b = 0 (1 <= i < n)>`
pub fn builder_monoid_0(n: usize) -> Result<Presentation, PresentError> {
    if n < 2 {
        return Err(PresentError::BadArgument(format!(
            "builder requires n >= 2, got {n}"
        )));
    }
    let a = |k: usize| "a".repeat(k);
    let b = |k: usize| "b".repeat(k);
    let mut zero_words = vec![a(n + 1), b(n + 1)];
    for i in 1..n {
        zero_words.push(format!("a{}a", b(i)));
        zero_words.push(format!("b{}b", a(i)));
    }
    Ok(Presentation {
        generators: vec!['a', 'b'],
        relations: vec![
            (format!("{}{}{}", a(n), b(n), a(n)), a(n)),
            (format!("{}{}{}", b(n), a(n), b(n)), b(n)),
        ],
        zero_words,
    })
}

/// `<a, b : a^n b a^n = a^n, b a^n b = b, b a^i b = 0 (0 <= i < n),
///  a^(n+1) = 0>`
pub fn builder_monoid_1(n: usize) -> Result<Presentation, PresentError> {
    if n < 2 {
        return Err(PresentError::BadArgument(format!(
            "builder requires n >= 2, got {n}"
        )));
    }
    let a = |k: usize| "a".repeat(k);
    let mut zero_words = Vec::new();
    for i in 0..n {
        zero_words.push(format!("b{}b", a(i)));
    }
    zero_words.push(a(n + 1));
    Ok(Presentation {
        generators: vec!['a', 'b'],
        relations: vec![
            (format!("{}b{}", a(n), a(n)), a(n)),
            (format!("b{}b", a(n)), "b".to_string()),
        ],
        zero_words,
    })
}

/// Result of a successful enumeration.
#[derive(Clone, Debug)]
pub struct PresentationOutcome {
    pub monoid: FiniteMonoid,
    /// index of the absorbing zero, when the presentation has one
    pub zero: Option<usize>,
    /// irreducible word per element (over generators, `"0"` for the zero)
    pub normal_forms: Vec<String>,
}

// internal symbol representation: 0 = zero marker (shortlex-least), i+1 = generator i
type Sym = u8;
const THETA: Sym = 0;

/// Multiplication tables are quadratic; past this size they stop being a
/// sensible in-memory representation.
const MAX_TABLE_SIZE: usize = 20_000;

struct Rewriter {
    rules: Vec<(Vec<Sym>, Vec<Sym>)>,
}

impl Rewriter {
    fn normalize(&self, word: &[Sym]) -> Vec<Sym> {
        normalize(&self.rules, word)
    }
}

fn normalize(rules: &[(Vec<Sym>, Vec<Sym>)], word: &[Sym]) -> Vec<Sym> {
    let max_lhs = rules.iter().map(|(l, _)| l.len()).max().unwrap_or(1);
    let mut cur = word.to_vec();
    let mut i = 0;
    // after a rewrite at i only positions overlapping the change can hold a
    // fresh redex, so backtracking one window suffices
    while i < cur.len() {
        let mut rewritten = false;
        for (lhs, rhs) in rules {
            if cur.len() >= i + lhs.len() && &cur[i..i + lhs.len()] == lhs.as_slice() {
                cur.splice(i..i + lhs.len(), rhs.iter().copied());
                i = i.saturating_sub(max_lhs - 1);
                rewritten = true;
                break;
            }
        }
        if !rewritten {
            i += 1;
        }
    }
    cur
}

fn shortlex_less(a: &[Sym], b: &[Sym]) -> bool {
    a.len() < b.len() || (a.len() == b.len() && a < b)
}

struct CompletionCaps {
    max_rules: usize,
    max_rule_len: usize,
    max_pairs: usize,
}

impl Default for CompletionCaps {
    fn default() -> Self {
        CompletionCaps {
            max_rules: 600,
            max_rule_len: 80,
            max_pairs: 200_000,
        }
    }
}

/// Knuth-Bendix completion for string rewriting, shortlex-oriented.
fn complete(
    mut rules: Vec<(Vec<Sym>, Vec<Sym>)>,
    caps: &CompletionCaps,
) -> Result<Rewriter, PresentError> {
    // normalize the starting rules against each other as we go
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let add_rule = |rules: &mut Vec<(Vec<Sym>, Vec<Sym>)>,
                    queue: &mut VecDeque<(usize, usize)>,
                    lhs: Vec<Sym>,
                    rhs: Vec<Sym>|
     -> Result<(), PresentError> {
        if lhs == rhs {
            return Ok(());
        }
        let (lhs, rhs) = if shortlex_less(&rhs, &lhs) {
            (lhs, rhs)
        } else {
            (rhs, lhs)
        };
        if lhs.len() > caps.max_rule_len {
            return Err(PresentError::Undecided(format!(
                "rule length exceeded {}",
                caps.max_rule_len
            )));
        }
        if rules.iter().any(|(l, r)| *l == lhs && *r == rhs) {
            return Ok(());
        }
        let idx = rules.len();
        rules.push((lhs, rhs));
        if rules.len() > caps.max_rules {
            return Err(PresentError::Undecided(format!(
                "rule count exceeded {}",
                caps.max_rules
            )));
        }
        for i in 0..=idx {
            queue.push_back((i, idx));
            if i != idx {
                queue.push_back((idx, i));
            }
        }
        Ok(())
    };

    let seed = std::mem::take(&mut rules);
    for (l, r) in seed {
        add_rule(&mut rules, &mut queue, l, r)?;
    }

    let mut processed = 0usize;
    while let Some((i, j)) = queue.pop_front() {
        processed += 1;
        if processed > caps.max_pairs {
            return Err(PresentError::Undecided(format!(
                "critical pair budget exceeded {}",
                caps.max_pairs
            )));
        }
        let (l1, r1) = rules[i].clone();
        let (l2, r2) = rules[j].clone();
        let mut pairs: Vec<(Vec<Sym>, Vec<Sym>)> = Vec::new();
        // proper overlap: a suffix of l1 is a prefix of l2 (the case where l2
        // sits entirely inside l1 is handled below, and the case where l1 is
        // a prefix of l2 by the containment scan of the mirrored pair)
        for o in 1..l1.len().min(l2.len()) {
            if l1[l1.len() - o..] == l2[..o] {
                let mut left = r1.clone();
                left.extend_from_slice(&l2[o..]);
                let mut right = l1[..l1.len() - o].to_vec();
                right.extend_from_slice(&r2);
                pairs.push((left, right));
            }
        }
        // l2 occurs inside l1
        if l2.len() <= l1.len() && i != j {
            for p in 0..=l1.len() - l2.len() {
                if &l1[p..p + l2.len()] == l2.as_slice() {
                    let mut right = l1[..p].to_vec();
                    right.extend_from_slice(&r2);
                    right.extend_from_slice(&l1[p + l2.len()..]);
                    pairs.push((r1.clone(), right));
                }
            }
        }
        for (a, b) in pairs {
            let na = normalize(&rules, &a);
            let nb = normalize(&rules, &b);
            if na != nb {
                add_rule(&mut rules, &mut queue, na, nb)?;
            }
        }
    }
    Ok(Rewriter { rules })
}

/// Enumerate the monoid presented by `p`, failing with an explicit error when
/// completion stalls or the class count exceeds `cap`.
pub fn enumerate_presentation(
    p: &Presentation,
    cap: usize,
) -> Result<PresentationOutcome, PresentError> {
    if cap < 1 {
        return Err(PresentError::BadArgument("cap must be at least 1".into()));
    }
    p.check_letters()?;
    let k = p.generators.len();
    let sym = |c: char| -> Sym { (p.generators.iter().position(|&g| g == c).unwrap() + 1) as Sym };
    let word = |w: &str| -> Vec<Sym> { w.chars().map(sym).collect() };

    let mut rules: Vec<(Vec<Sym>, Vec<Sym>)> = Vec::new();
    for (l, r) in &p.relations {
        rules.push((word(l), word(r)));
    }
    if p.has_zero() {
        for z in &p.zero_words {
            rules.push((word(z), vec![THETA]));
        }
        for g in 1..=k as Sym {
            rules.push((vec![THETA, g], vec![THETA]));
            rules.push((vec![g, THETA], vec![THETA]));
        }
        rules.push((vec![THETA, THETA], vec![THETA]));
    }

    let rw = complete(rules, &CompletionCaps::default())?;

    // closure over normal forms under right multiplication by generators;
    // a volume guard cuts off infinite monoids whose normal forms keep
    // growing long before the class cap would be reached
    let volume_limit = 2_000_000usize.max(cap.saturating_mul(32));
    let mut volume = 0usize;
    let mut forms: Vec<Vec<Sym>> = vec![rw.normalize(&[])];
    let mut index: std::collections::HashMap<Vec<Sym>, usize> = std::collections::HashMap::new();
    index.insert(forms[0].clone(), 0);
    let mut head = 0;
    while head < forms.len() {
        let base = forms[head].clone();
        head += 1;
        for g in 1..=k as Sym {
            let mut w = base.clone();
            w.push(g);
            let nf = rw.normalize(&w);
            if !index.contains_key(&nf) {
                if forms.len() >= cap {
                    return Err(PresentError::ClassCap(cap));
                }
                volume += nf.len();
                if volume > volume_limit {
                    return Err(PresentError::Undecided(format!(
                        "normal forms exceeded {volume_limit} symbols before reaching {cap} classes"
                    )));
                }
                index.insert(nf.clone(), forms.len());
                forms.push(nf);
            }
        }
    }

    let size = forms.len();
    if size > MAX_TABLE_SIZE {
        return Err(PresentError::Undecided(format!(
            "{size} classes is too large to materialize a multiplication table (limit {MAX_TABLE_SIZE})"
        )));
    }
    let mut table = vec![0u32; size * size];
    for (i, u) in forms.iter().enumerate() {
        for (j, v) in forms.iter().enumerate() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            let nf = rw.normalize(&w);
            let target = index.get(&nf).ok_or_else(|| {
                PresentError::Undecided("product left the enumerated normal forms".into())
            })?;
            table[i * size + j] = *target as u32;
        }
    }

    let generator_elems: Vec<usize> = (1..=k as Sym).map(|g| index[&rw.normalize(&[g])]).collect();
    let mut monoid =
        FiniteMonoid::from_table(table, size, 0, generator_elems, TableCheck::Validate)?;
    monoid.set_gen_names(p.generators.clone());

    let zero = if p.has_zero() {
        index.get(&vec![THETA]).copied()
    } else {
        None
    };
    let normal_forms: Vec<String> = forms
        .iter()
        .map(|f| {
            if f.is_empty() {
                "1".to_string()
            } else {
                f.iter()
                    .map(|&s| {
                        if s == THETA {
                            '0'
                        } else {
                            p.generators[s as usize - 1]
                        }
                    })
                    .collect()
            }
        })
        .collect();

    // replay every input relation on the finished table
    let eval = |w: &str| monoid.eval_word(w).unwrap();
    for (l, r) in &p.relations {
        if eval(l) != eval(r) {
            return Err(PresentError::Undecided(format!(
                "relation {l} = {r} failed replay"
            )));
        }
    }
    if let Some(z) = zero {
        for w in &p.zero_words {
            if eval(w) != z {
                return Err(PresentError::Undecided(format!(
                    "zero word {w} failed replay"
                )));
            }
        }
        for s in monoid.elements() {
            if monoid.mul(s, z) != z || monoid.mul(z, s) != z {
                return Err(PresentError::Undecided("zero is not absorbing".into()));
            }
        }
    }

    Ok(PresentationOutcome {
        monoid,
        zero,
        normal_forms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::green_data;

    #[test]
    fn idempotent_generator() {
        let p = Presentation {
            generators: vec!['a'],
            relations: vec![("aa".into(), "a".into())],
            zero_words: vec![],
        };
        let out = enumerate_presentation(&p, 100).unwrap();
        assert_eq!(out.monoid.size(), 2);
        assert_eq!(out.zero, None);
        assert_eq!(out.normal_forms, vec!["1".to_string(), "a".to_string()]);
    }

    #[test]
    fn free_monogenic_hits_the_cap() {
        let p = Presentation {
            generators: vec!['a'],
            relations: vec![],
            zero_words: vec![],
        };
        assert!(matches!(
            enumerate_presentation(&p, 50),
            Err(PresentError::ClassCap(50))
        ));
    }

    #[test]
    fn builder_relations_match_the_quoted_ones() {
        let p1 = builder_monoid_1(2).unwrap();
        assert!(p1.zero_words.contains(&"bb".to_string())); // b a^0 b
        assert!(p1.zero_words.contains(&"bab".to_string())); // b a^1 b
        assert!(p1.zero_words.contains(&"aaa".to_string())); // a^(n+1)
        assert!(p1
            .relations
            .contains(&("aabaa".to_string(), "aa".to_string())));
        assert!(p1
            .relations
            .contains(&("baab".to_string(), "b".to_string())));

        let p0 = builder_monoid_0(2).unwrap();
        assert!(p0.zero_words.contains(&"aba".to_string()));
        assert!(p0.zero_words.contains(&"bab".to_string()));
        assert!(p0.zero_words.contains(&"aaa".to_string()));
        assert!(p0.zero_words.contains(&"bbb".to_string()));

        assert!(builder_monoid_0(1).is_err());
        assert!(builder_monoid_1(1).is_err());
    }

    #[test]
    fn monoid_1_structure_at_n2() {
        let out = enumerate_presentation(&builder_monoid_1(2).unwrap(), 10_000).unwrap();
        let m = &out.monoid;
        let zero = out.zero.unwrap();
        // elements: 1, a, 0 and the a^i b a^j family (a^2 = a^2 b a^2 included)
        let e = |w: &str| m.eval_word(w).unwrap();
        assert_ne!(e("aab"), e("baa"));
        assert!(m.is_idempotent(e("aab")));
        assert!(m.is_idempotent(e("baa")));
        assert!(m.is_idempotent(e("aba")));
        assert_eq!(e("aaa"), zero);
        assert_eq!(e("bb"), zero);
        assert_eq!(e("bab"), zero);
        assert_eq!(e("aabaa"), e("aa"));

        // idempotents of the non-singleton regular J-class are a^i b a^j, i+j=2
        let g = green_data(m);
        let family: Vec<usize> = vec![e("aab"), e("aba"), e("baa")];
        let class = g.j_class[family[0]];
        for &f in &family {
            assert_eq!(g.j_class[f], class);
        }
        let idems_in_class: Vec<usize> = g
            .idempotents
            .iter()
            .copied()
            .filter(|&i| g.j_class[i] == class)
            .collect();
        assert_eq!(idems_in_class.len(), 3);
        for i in idems_in_class {
            assert!(family.contains(&i));
        }
    }

    #[test]
    fn monoid_1_structure_at_n3() {
        let out = enumerate_presentation(&builder_monoid_1(3).unwrap(), 10_000).unwrap();
        let m = &out.monoid;
        let e = |w: &str| m.eval_word(w).unwrap();
        assert_ne!(e("aaab"), e("baaa"));
        // idempotents a^i b a^j with i + j = 3
        let g = green_data(m);
        let family = [e("aaab"), e("aaba"), e("abaa"), e("baaa")];
        for &f in &family {
            assert!(m.is_idempotent(f));
        }
        let class = g.j_class[family[0]];
        let idems_in_class: Vec<usize> = g
            .idempotents
            .iter()
            .copied()
            .filter(|&i| g.j_class[i] == class)
            .collect();
        assert_eq!(idems_in_class.len(), 4);
    }

    #[test]
    fn monoid_0_structure_at_n2() {
        let out = enumerate_presentation(&builder_monoid_0(2).unwrap(), 10_000).unwrap();
        let m = &out.monoid;
        let zero = out.zero.unwrap();
        let e = |w: &str| m.eval_word(w).unwrap();
        // three regular J-classes: {1}, {0} and the idempotent family
        let g = green_data(m);
        let regular_j: std::collections::BTreeSet<u32> =
            g.idempotents.iter().map(|&i| g.j_class[i]).collect();
        assert_eq!(regular_j.len(), 3);
        // product of distinct idempotents != 1 is zero
        for &e1 in &g.idempotents {
            for &e2 in &g.idempotents {
                if e1 != e2 && e1 != m.identity() && e2 != m.identity() {
                    assert_eq!(m.mul(e1, e2), zero);
                }
            }
        }
        // (a^2 b^2)^w = a^2 b^2 and differs from b^2 a^2
        let aabb = e("aabb");
        let bbaa = e("bbaa");
        assert!(m.is_idempotent(aabb));
        assert!(m.is_idempotent(bbaa));
        assert_ne!(aabb, bbaa);
        // aperiodic
        for s in m.elements() {
            assert_eq!(m.omega_power(s, 1), m.omega_power(s, 0));
        }
    }

    #[test]
    fn text_round_trip() {
        let p = builder_monoid_1(2).unwrap();
        let text = p.to_text();
        let back = Presentation::from_text(&text).unwrap();
        assert_eq!(back, p);
        assert!(Presentation::from_text("rel a = b").is_err());
        assert!(Presentation::from_text("gens ab\nrel a = c").is_err());
        assert!(Presentation::from_text("gens ab\nnonsense").is_err());
    }

    #[test]
    fn replayed_relations_hold() {
        for p in [
            builder_monoid_0(2).unwrap(),
            builder_monoid_1(2).unwrap(),
            builder_monoid_0(3).unwrap(),
        ] {
            let out = enumerate_presentation(&p, 10_000).unwrap();
            let m = &out.monoid;
            for (l, r) in &p.relations {
                assert_eq!(m.eval_word(l), m.eval_word(r), "{l} = {r}");
            }
            for z in &p.zero_words {
                assert_eq!(
                    m.eval_word(z),
                    out.zero.map(Some).unwrap_or(None),
                    "{z} = 0"
                );
            }
        }
    }
}
