//! Finite monoids: multiplication tables, generation from transformations,
//! omega-power arithmetic, Green's relations and stable quasiorder closure.
//!
//! Elements are dense indices `0..size`; every higher-level module speaks in
//! indices. The product convention is "left factor acts first": for transition
//! monoids, `mul(s, t)` is the action of the word `st` read left to right.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bits::BitMatrix;

/// Default cap on the number of elements produced by closure constructions.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Multiplication tables are quadratic in the element count; beyond this the
/// dense representation stops being sensible and construction refuses.
pub const MAX_TABLE_SIZE: usize = 20_000;

#[derive(Debug, Error)]
pub enum MonoidError {
    #[error("generators have mismatched degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("closure exceeded the element cap of {0}")]
    ElementCap(usize),
    #[error("{0} elements is too large to materialize a multiplication table (limit {1})")]
    TooLargeToMaterialize(usize, usize),
    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} violates the identity law")]
    BadIdentity(usize),
    #[error("element {0} is not a product of the marked generators")]
    NotGenerated(usize),
    #[error("table entry out of range at row {0}")]
    EntryOutOfRange(usize),
    #[error("malformed monoid file: {0}")]
    Format(String),
}

/// A total map `{0..degree} -> {0..degree}`; the carrier for transition monoids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation {
    images: Vec<u32>,
}

impl Transformation {
    pub fn new(images: Vec<u32>) -> Self {
        assert!(
            images.iter().all(|&i| (i as usize) < images.len()),
            "transformation image out of range"
        );
        Transformation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Transformation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` acts first, `then` second.
    pub fn compose(&self, then: &Transformation) -> Transformation {
        debug_assert_eq!(self.degree(), then.degree());
        Transformation {
            images: self
                .images
                .iter()
                .map(|&p| then.images[p as usize])
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }
}

/// A finite monoid given by its multiplication table.
///
/// `table[s * size + t]` is the product `s * t`. The generator list is part of
/// the structure: Green's relations, pair monoids and labels all refer to it.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
    /// Shortest generating word per element (entries are generator positions),
    /// present when the monoid was built by a closure construction.
    labels: Option<Vec<Vec<u8>>>,
    /// Display names for generators, defaults to 'a', 'b', ...
    gen_names: Vec<char>,
    // caches, filled at construction
    index: Vec<u32>,
    period: Vec<u32>,
    omega: Vec<u32>,
    omega_succ: Vec<u32>,
}

/// Validation level for [`FiniteMonoid::from_table`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableCheck {
    /// Full associativity loop for small tables, Light's test otherwise,
    /// plus identity and generation checks.
    Validate,
    /// Trust the caller (tables produced by closure are associative by construction).
    Trusted,
}

impl FiniteMonoid {
    pub fn from_table(
        table: Vec<u32>,
        size: usize,
        identity: usize,
        generators: Vec<usize>,
        check: TableCheck,
    ) -> Result<Self, MonoidError> {
        assert_eq!(table.len(), size * size, "table dimensions");
        let mut m = FiniteMonoid {
            size,
            table,
            identity,
            generators,
            labels: None,
            gen_names: default_gen_names(0),
            index: Vec::new(),
            period: Vec::new(),
            omega: Vec::new(),
            omega_succ: Vec::new(),
        };
        m.gen_names = default_gen_names(m.generators.len());
        if let TableCheck::Validate = check {
            m.validate()?;
        }
        m.fill_power_caches();
        if let TableCheck::Validate = check {
            m.labels = Some(m.compute_labels()?);
        }
        Ok(m)
    }

    fn validate(&self) -> Result<(), MonoidError> {
        let n = self.size;
        for (row, chunk) in self.table.chunks(n).enumerate() {
            if chunk.iter().any(|&e| e as usize >= n) {
                return Err(MonoidError::EntryOutOfRange(row));
            }
        }
        for s in 0..n {
            if self.mul(self.identity, s) != s || self.mul(s, self.identity) != s {
                return Err(MonoidError::BadIdentity(s));
            }
        }
        if n <= 500 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(MonoidError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            // Light's test: associativity against generators suffices when
            // every element is a product of generators.
            for &g in &self.generators {
                for a in 0..n {
                    let ag = self.mul(a, g);
                    for b in 0..n {
                        if self.mul(ag, b) != self.mul(a, self.mul(g, b)) {
                            return Err(MonoidError::NotAssociative(a, g, b));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// BFS over products of generators; also serves as the generation check.
    fn compute_labels(&self) -> Result<Vec<Vec<u8>>, MonoidError> {
        let mut labels: Vec<Option<Vec<u8>>> = vec![None; self.size];
        labels[self.identity] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self.identity);
        while let Some(s) = queue.pop_front() {
            let base = labels[s].clone().unwrap();
            for (gi, &g) in self.generators.iter().enumerate() {
                let t = self.mul(s, g);
                if labels[t].is_none() {
                    let mut w = base.clone();
                    w.push(gi as u8);
                    labels[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        labels
            .into_iter()
            .enumerate()
            .map(|(s, l)| l.ok_or(MonoidError::NotGenerated(s)))
            .collect()
    }

    fn fill_power_caches(&mut self) {
        let n = self.size;
        self.index = vec![0; n];
        self.period = vec![0; n];
        self.omega = vec![0; n];
        self.omega_succ = vec![0; n];
        for s in 0..n {
            // Walk s, s^2, ... until the first repeat; the prefix before the
            // repeat entry is the index, the cycle length the period.
            let mut seen: HashMap<usize, u32> = HashMap::new();
            let mut cur = s;
            let mut step = 1u32;
            let (index, period) = loop {
                if let Some(&first) = seen.get(&cur) {
                    break (first, step - first);
                }
                seen.insert(cur, step);
                cur = self.mul(cur, s);
                step += 1;
            };
            self.index[s] = index;
            self.period[s] = period;
            // smallest multiple of period that is >= index (index is always >= 1)
            let e = period * index.div_ceil(period);
            let om = self.pow(s, e as u64);
            self.omega[s] = om as u32;
            self.omega_succ[s] = self.mul(om, s) as u32;
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn gen_names(&self) -> &[char] {
        &self.gen_names
    }

    pub fn set_gen_names(&mut self, names: Vec<char>) {
        assert_eq!(names.len(), self.generators.len());
        self.gen_names = names;
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.size + t] as usize
    }

    /// Product of a slice of elements, left to right.
    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.identity, |acc, &e| self.mul(acc, e))
    }

    /// `s^k` for `k >= 0` (with `s^0` the identity).
    pub fn pow(&self, s: usize, k: u64) -> usize {
        let mut acc = self.identity;
        let mut base = s;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Least `e >= 1` with `s^e = s^(e + period)`.
    pub fn index_of(&self, s: usize) -> u32 {
        self.index[s]
    }

    /// Cycle length of the power sequence of `s`.
    pub fn period_of(&self, s: usize) -> u32 {
        self.period[s]
    }

    /// `s^(omega + k)`: the shift by `k` of the unique idempotent power of `s`.
    ///
    /// `k = 0` gives the idempotent itself; negative shifts land in the cyclic
    /// group part, so `omega_power(s, 1)` and `omega_power(s, -1)` multiply to
    /// the idempotent.
    #[inline]
    pub fn omega_power(&self, s: usize, k: i64) -> usize {
        match k {
            0 => self.omega[s] as usize,
            1 => self.omega_succ[s] as usize,
            _ => {
                let p = self.period[s] as i64;
                let r = k.rem_euclid(p) as u64;
                self.mul(self.omega[s] as usize, self.pow(s, r))
            }
        }
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&s| self.is_idempotent(s)).collect()
    }

    /// `true` when every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        self.elements()
            .all(|s| self.omega_power(s, 0) == self.identity)
    }

    pub fn labels(&self) -> Option<&Vec<Vec<u8>>> {
        self.labels.as_ref()
    }

    /// Render the shortest generating word of `s`, `"1"` for the identity.
    pub fn label_string(&self, s: usize) -> String {
        match &self.labels {
            Some(labels) => {
                let w = &labels[s];
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&g| self.gen_names[g as usize]).collect()
                }
            }
            None => format!("#{s}"),
        }
    }

    /// Evaluate a word over generator names, if all letters are known.
    pub fn eval_word(&self, word: &str) -> Option<usize> {
        let mut acc = self.identity;
        for ch in word.chars() {
            let gi = self.gen_names.iter().position(|&c| c == ch)?;
            acc = self.mul(acc, self.generators[gi]);
        }
        Some(acc)
    }

    /// Serialize in the line-based text format (exact round-trip).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "size {}", self.size);
        let _ = writeln!(out, "identity {}", self.identity);
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "generators {}", gens.join(" "));
        for row in self.table.chunks(self.size) {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, MonoidError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let size_line = lines
            .next()
            .ok_or_else(|| MonoidError::Format("missing size line".into()))?;
        let size: usize = parse_keyed(size_line, "size")?;
        let identity: usize = parse_keyed(
            lines
                .next()
                .ok_or_else(|| MonoidError::Format("missing identity line".into()))?,
            "identity",
        )?;
        let gen_line = lines
            .next()
            .ok_or_else(|| MonoidError::Format("missing generators line".into()))?;
        let gen_body = gen_line
            .strip_prefix("generators")
            .ok_or_else(|| MonoidError::Format("expected `generators ...`".into()))?;
        let generators: Vec<usize> = gen_body
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| MonoidError::Format(format!("bad generator index {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        let mut table = Vec::with_capacity(size * size);
        for row in 0..size {
            let line = lines
                .next()
                .ok_or_else(|| MonoidError::Format(format!("missing table row {row}")))?;
            let cells: Vec<u32> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| MonoidError::Format(format!("bad table entry {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if cells.len() != size {
                return Err(MonoidError::Format(format!(
                    "row {row} has {} entries, expected {size}",
                    cells.len()
                )));
            }
            table.extend(cells);
        }
        if identity >= size || generators.iter().any(|&g| g >= size) {
            return Err(MonoidError::Format(
                "identity or generator index out of range".into(),
            ));
        }
        FiniteMonoid::from_table(table, size, identity, generators, TableCheck::Validate)
    }
}

fn parse_keyed(line: &str, key: &str) -> Result<usize, MonoidError> {
    let body = line
        .strip_prefix(key)
        .ok_or_else(|| MonoidError::Format(format!("expected `{key} ...`")))?;
    body.trim()
        .parse()
        .map_err(|_| MonoidError::Format(format!("bad value in `{line}`")))
}

fn default_gen_names(n: usize) -> Vec<char> {
    (0..n).map(|i| (b'a' + (i % 26) as u8) as char).collect()
}

/// A transformation monoid: the abstract table plus the transformation
/// realizing each element.
#[derive(Clone, Debug)]
pub struct TransformationMonoid {
    pub monoid: FiniteMonoid,
    pub transforms: Vec<Transformation>,
}

/// Closure of a set of transformations under composition, identity adjoined.
///
/// Numbering is deterministic: BFS over products in length-lex word order, so
/// the identity is element 0 and labels are the shortest generating words with
/// lexicographic tie-break by generator order.
pub fn from_generators(
    gens: &[Transformation],
    cap: usize,
) -> Result<TransformationMonoid, MonoidError> {
    assert!(!gens.is_empty(), "at least one generator required");
    let degree = gens[0].degree();
    for g in gens {
        if g.degree() != degree {
            return Err(MonoidError::DegreeMismatch(degree, g.degree()));
        }
    }

    let mut transforms: Vec<Transformation> = Vec::new();
    let mut seen: HashMap<Transformation, usize> = HashMap::new();
    let mut labels: Vec<Vec<u8>> = Vec::new();

    let id = Transformation::identity(degree);
    seen.insert(id.clone(), 0);
    transforms.push(id);
    labels.push(Vec::new());

    // generator element indices, discovered in order
    let mut gen_elems = Vec::with_capacity(gens.len());
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);

    // Seed the generators first so their indices are 1, 2, ... in input order
    // (unless one equals the identity or a duplicate).
    for (gi, g) in gens.iter().enumerate() {
        let idx = match seen.get(g) {
            Some(&i) => i,
            None => {
                let i = transforms.len();
                if i >= cap {
                    return Err(MonoidError::ElementCap(cap));
                }
                seen.insert(g.clone(), i);
                transforms.push(g.clone());
                labels.push(vec![gi as u8]);
                queue.push_back(i);
                i
            }
        };
        gen_elems.push(idx);
    }

    while let Some(s) = queue.pop_front() {
        if s == 0 {
            continue; // products 1*g were seeded above
        }
        for (gi, g) in gens.iter().enumerate() {
            let t = transforms[s].compose(g);
            if !seen.contains_key(&t) {
                let i = transforms.len();
                if i >= cap {
                    return Err(MonoidError::ElementCap(cap));
                }
                let mut w = labels[s].clone();
                w.push(gi as u8);
                seen.insert(t.clone(), i);
                transforms.push(t);
                labels.push(w);
                queue.push_back(i);
            }
        }
    }

    let size = transforms.len();
    if size > MAX_TABLE_SIZE {
        return Err(MonoidError::TooLargeToMaterialize(size, MAX_TABLE_SIZE));
    }
    let mut table = vec![0u32; size * size];
    for s in 0..size {
        for t in 0..size {
            let prod = transforms[s].compose(&transforms[t]);
            table[s * size + t] = seen[&prod] as u32;
        }
    }
    let mut monoid = FiniteMonoid::from_table(table, size, 0, gen_elems, TableCheck::Trusted)?;
    monoid.labels = Some(labels);
    monoid.gen_names = default_gen_names(gens.len());
    Ok(TransformationMonoid { monoid, transforms })
}

/// Green's relations as partition labels per element.
#[derive(Clone, Debug)]
pub struct GreenData {
    pub r_class: Vec<u32>,
    pub l_class: Vec<u32>,
    pub j_class: Vec<u32>,
    pub h_class: Vec<u32>,
    pub n_r: usize,
    pub n_l: usize,
    pub n_j: usize,
    pub n_h: usize,
    pub idempotents: Vec<usize>,
    pub r_idem_counts: Vec<u32>,
    pub l_idem_counts: Vec<u32>,
    pub j_idem_counts: Vec<u32>,
}

impl GreenData {
    pub fn is_j_trivial(&self) -> bool {
        self.n_j == self.j_class.len()
    }

    /// Block-group shape: at most one idempotent per R-class and per L-class.
    pub fn block_group_shape(&self) -> bool {
        self.r_idem_counts.iter().all(|&c| c <= 1) && self.l_idem_counts.iter().all(|&c| c <= 1)
    }
}

/// Compute Green's relations from Cayley-graph mutual reachability.
pub fn green_data(m: &FiniteMonoid) -> GreenData {
    let n = m.size();
    let right = cayley_scc(m, |m, s, g| m.mul(s, g));
    let left = cayley_scc(m, |m, s, g| m.mul(g, s));
    let two_sided = {
        use petgraph::graph::DiGraph;
        let mut graph = DiGraph::<(), ()>::with_capacity(n, 2 * n * m.generators().len());
        for _ in 0..n {
            graph.add_node(());
        }
        for s in 0..n {
            for &g in m.generators() {
                graph.add_edge((s as u32).into(), (m.mul(s, g) as u32).into(), ());
                graph.add_edge((s as u32).into(), (m.mul(g, s) as u32).into(), ());
            }
        }
        renumber_sccs(petgraph::algo::tarjan_scc(&graph), n)
    };

    let (r_class, n_r) = right;
    let (l_class, n_l) = left;
    let (j_class, n_j) = two_sided;

    // H = R meet L
    let mut h_map: HashMap<(u32, u32), u32> = HashMap::new();
    let mut h_class = vec![0u32; n];
    for s in 0..n {
        let key = (r_class[s], l_class[s]);
        let next = h_map.len() as u32;
        let id = *h_map.entry(key).or_insert(next);
        h_class[s] = id;
    }
    let n_h = h_map.len();

    let idempotents: Vec<usize> = (0..n).filter(|&s| m.is_idempotent(s)).collect();
    let mut r_idem_counts = vec![0u32; n_r];
    let mut l_idem_counts = vec![0u32; n_l];
    let mut j_idem_counts = vec![0u32; n_j];
    for &e in &idempotents {
        r_idem_counts[r_class[e] as usize] += 1;
        l_idem_counts[l_class[e] as usize] += 1;
        j_idem_counts[j_class[e] as usize] += 1;
    }

    GreenData {
        r_class,
        l_class,
        j_class,
        h_class,
        n_r,
        n_l,
        n_j,
        n_h,
        idempotents,
        r_idem_counts,
        l_idem_counts,
        j_idem_counts,
    }
}

fn cayley_scc(
    m: &FiniteMonoid,
    step: impl Fn(&FiniteMonoid, usize, usize) -> usize,
) -> (Vec<u32>, usize) {
    use petgraph::graph::DiGraph;
    let n = m.size();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, n * m.generators().len());
    for _ in 0..n {
        graph.add_node(());
    }
    for s in 0..n {
        for &g in m.generators() {
            graph.add_edge((s as u32).into(), (step(m, s, g) as u32).into(), ());
        }
    }
    renumber_sccs(petgraph::algo::tarjan_scc(&graph), n)
}

/// Class ids ordered by first occurrence over elements 0..n, for reproducible reports.
fn renumber_sccs(sccs: Vec<Vec<petgraph::graph::NodeIndex>>, n: usize) -> (Vec<u32>, usize) {
    let mut raw = vec![u32::MAX; n];
    for (ci, comp) in sccs.iter().enumerate() {
        for &node in comp {
            raw[node.index()] = ci as u32;
        }
    }
    let mut remap: HashMap<u32, u32> = HashMap::new();
    let mut out = vec![0u32; n];
    for s in 0..n {
        let next = remap.len() as u32;
        out[s] = *remap.entry(raw[s]).or_insert(next);
    }
    let count = remap.len();
    (out, count)
}

#[derive(Debug, Error)]
pub enum OrderError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("relation is not antisymmetric on {0}, {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not stable: {0} <= {1} but {2} !<= {3} after multiplication")]
    NotStable(usize, usize, usize, usize),
}

/// A finite monoid with a compatible (stable) partial order.
#[derive(Clone, Debug)]
pub struct OrderedMonoid {
    monoid: FiniteMonoid,
    leq: BitMatrix,
}

impl OrderedMonoid {
    /// Validates reflexivity, transitivity, antisymmetry and stability.
    pub fn new(monoid: FiniteMonoid, leq: BitMatrix) -> Result<Self, OrderError> {
        let n = monoid.size();
        assert_eq!(leq.rows(), n);
        for a in 0..n {
            if !leq.get(a, a) {
                return Err(OrderError::NotReflexive(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !leq.get(a, b) {
                    continue;
                }
                if a != b && leq.get(b, a) {
                    return Err(OrderError::NotAntisymmetric(a, b));
                }
                if !leq.row_subset(b, a) {
                    // b's up-set must sit inside a's up-set (a <= b <= c gives a <= c)
                    for c in 0..n {
                        if leq.get(b, c) && !leq.get(a, c) {
                            return Err(OrderError::NotTransitive(a, b, c));
                        }
                    }
                }
                for &g in monoid.generators() {
                    let (ga, gb) = (monoid.mul(g, a), monoid.mul(g, b));
                    if !leq.get(ga, gb) {
                        return Err(OrderError::NotStable(a, b, ga, gb));
                    }
                    let (ag, bg) = (monoid.mul(a, g), monoid.mul(b, g));
                    if !leq.get(ag, bg) {
                        return Err(OrderError::NotStable(a, b, ag, bg));
                    }
                }
            }
        }
        Ok(OrderedMonoid { monoid, leq })
    }

    /// The equality (trivial) order.
    pub fn discrete(monoid: FiniteMonoid) -> Self {
        let n = monoid.size();
        let mut leq = BitMatrix::new(n, n);
        for a in 0..n {
            leq.set(a, a, true);
        }
        OrderedMonoid { monoid, leq }
    }

    pub(crate) fn from_parts_unchecked(monoid: FiniteMonoid, leq: BitMatrix) -> Self {
        OrderedMonoid { monoid, leq }
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    pub fn leq_matrix(&self) -> &BitMatrix {
        &self.leq
    }

    /// Number of non-reflexive related pairs.
    pub fn strict_pair_count(&self) -> usize {
        self.leq.count_ones() - self.monoid.size()
    }
}

/// Result of closing a set of required pairs into a stable quasiorder.
#[derive(Clone, Debug)]
pub struct StableClosure {
    pub relation: BitMatrix,
    /// The first offending pair when the closure fails antisymmetry.
    pub antisymmetry_violation: Option<(usize, usize)>,
}

impl StableClosure {
    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violation.is_none()
    }

    /// Package as an ordered monoid when the closure is a partial order.
    pub fn into_ordered(self, monoid: FiniteMonoid) -> Result<OrderedMonoid, (usize, usize)> {
        match self.antisymmetry_violation {
            Some(pair) => Err(pair),
            None => Ok(OrderedMonoid::from_parts_unchecked(monoid, self.relation)),
        }
    }
}

/// Least reflexive, transitive relation containing `required` and closed under
/// two-sided multiplication: `(a, b)` forces `(xay, xby)` for all `x, y`.
///
/// Used to decide whether a monoid admits a compatible order satisfying a set
/// of inequalities such as `1 <= s^n` for all `s`.
pub fn stable_closure(m: &FiniteMonoid, required: &[(usize, usize)]) -> StableClosure {
    let n = m.size();
    let mut rel = BitMatrix::new(n, n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    let push = |rel: &mut BitMatrix, work: &mut Vec<(usize, usize)>, a: usize, b: usize| {
        if !rel.get(a, b) {
            rel.set(a, b, true);
            work.push((a, b));
        }
    };
    for a in 0..n {
        push(&mut rel, &mut work, a, a);
    }
    for &(a, b) in required {
        push(&mut rel, &mut work, a, b);
    }
    while let Some((a, b)) = work.pop() {
        // closure under generator multiplication on both sides; stability
        // under arbitrary x, y follows by composing generator steps
        for &g in m.generators() {
            push(&mut rel, &mut work, m.mul(g, a), m.mul(g, b));
            push(&mut rel, &mut work, m.mul(a, g), m.mul(b, g));
        }
        // transitivity: c <= a <= b and a <= b <= c
        for c in 0..n {
            if rel.get(c, a) {
                push(&mut rel, &mut work, c, b);
            }
            if rel.get(b, c) {
                push(&mut rel, &mut work, a, c);
            }
        }
    }
    let mut violation = None;
    'search: for a in 0..n {
        for b in (a + 1)..n {
            if rel.get(a, b) && rel.get(b, a) {
                violation = Some((a, b));
                break 'search;
            }
        }
    }
    StableClosure {
        relation: rel,
        antisymmetry_violation: violation,
    }
}
