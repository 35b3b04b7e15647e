//! Omega-terms: AST, parser, evaluation in finite monoids, and exhaustive
//! pseudoidentity / inequality checking with witness extraction.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::monoid::{FiniteMonoid, OrderedMonoid};

/// Exponents are positive integers or `omega + k` with `k` any integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Int(u32),
    OmegaPlus(i32),
}

/// Term over single-letter variables; `One` is the empty product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaTerm {
    One,
    Var(char),
    Concat(Vec<OmegaTerm>),
    Power(Box<OmegaTerm>, Exponent),
}

impl OmegaTerm {
    pub fn var(c: char) -> Self {
        OmegaTerm::Var(c)
    }

    pub fn concat(parts: Vec<OmegaTerm>) -> Self {
        match parts.len() {
            0 => OmegaTerm::One,
            1 => parts.into_iter().next().unwrap(),
            _ => OmegaTerm::Concat(parts),
        }
    }

    pub fn pow(self, e: Exponent) -> Self {
        OmegaTerm::Power(Box::new(self), e)
    }

    pub fn omega(self) -> Self {
        self.pow(Exponent::OmegaPlus(0))
    }

    /// Term for a plain word.
    pub fn word(w: &str) -> Self {
        OmegaTerm::concat(w.chars().map(OmegaTerm::Var).collect())
    }

    pub fn variables(&self) -> BTreeSet<char> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        set
    }

    fn collect_vars(&self, set: &mut BTreeSet<char>) {
        match self {
            OmegaTerm::One => {}
            OmegaTerm::Var(c) => {
                set.insert(*c);
            }
            OmegaTerm::Concat(parts) => parts.iter().for_each(|p| p.collect_vars(set)),
            OmegaTerm::Power(base, _) => base.collect_vars(set),
        }
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::One => write!(f, "1"),
            OmegaTerm::Var(c) => write!(f, "{c}"),
            OmegaTerm::Concat(parts) => {
                for p in parts {
                    if matches!(p, OmegaTerm::Concat(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            OmegaTerm::Power(base, e) => {
                match **base {
                    OmegaTerm::Var(c) => write!(f, "{c}")?,
                    _ => write!(f, "({base})")?,
                }
                match e {
                    Exponent::Int(k) => write!(f, "^{k}"),
                    Exponent::OmegaPlus(0) => write!(f, "^w"),
                    Exponent::OmegaPlus(k) if *k > 0 => write!(f, "^(w+{k})"),
                    Exponent::OmegaPlus(k) => write!(f, "^(w-{})", -k),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    Equality,
    Inequality,
}

/// A formal equality `lhs = rhs` or inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pseudoidentity {
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
    pub kind: IdentityKind,
}

impl Pseudoidentity {
    pub fn equality(lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        Pseudoidentity {
            lhs,
            rhs,
            kind: IdentityKind::Equality,
        }
    }

    pub fn inequality(lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        Pseudoidentity {
            lhs,
            rhs,
            kind: IdentityKind::Inequality,
        }
    }

    pub fn variables(&self) -> Vec<char> {
        let mut set = self.lhs.variables();
        set.extend(self.rhs.variables());
        set.into_iter().collect()
    }
}

impl fmt::Display for Pseudoidentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            IdentityKind::Equality => "=",
            IdentityKind::Inequality => "<=",
        };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Error)]
pub enum TermError {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponent 0 at position {pos}")]
    ZeroExponent { pos: usize },
    #[error("unbound variable {0:?}")]
    UnboundVariable(char),
    #[error("substitution space {0} exceeds the budget of {1} (pass an override to force)")]
    Budget(u128, u64),
}

/// Grammar: `term := factor+`, `factor := atom ['^' exp]`,
/// `atom := letter | '1' | '(' term ')'`,
/// `exp := integer | 'w' | '(' 'w' ('+'|'-') integer ')'`.
pub fn parse_term(text: &str) -> Result<OmegaTerm, TermError> {
    let mut p = TermParser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

struct TermParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl TermParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn byte_pos(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> TermError {
        TermError::Parse {
            pos: self.byte_pos(),
            msg: msg.into(),
        }
    }

    fn term(&mut self) -> Result<OmegaTerm, TermError> {
        let mut parts = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                _ => parts.push(self.factor()?),
            }
        }
        if parts.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok(OmegaTerm::concat(parts))
    }

    fn factor(&mut self) -> Result<OmegaTerm, TermError> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            let e = self.exponent()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<OmegaTerm, TermError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let t = self.term()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(t)
            }
            Some('1') => {
                self.bump();
                Ok(OmegaTerm::One)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                Ok(OmegaTerm::Var(c))
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, TermError> {
        self.skip_ws();
        match self.peek() {
            Some('w') => {
                self.bump();
                Ok(Exponent::OmegaPlus(0))
            }
            Some(c) if c.is_ascii_digit() => {
                let pos = self.byte_pos();
                let k = self.integer()?;
                if k == 0 {
                    return Err(TermError::ZeroExponent { pos });
                }
                Ok(Exponent::Int(k))
            }
            Some('(') => {
                self.bump();
                self.skip_ws();
                if self.bump() != Some('w') {
                    return Err(self.err("expected `w`"));
                }
                self.skip_ws();
                let sign = match self.bump() {
                    Some('+') => 1i32,
                    Some('-') => -1i32,
                    _ => return Err(self.err("expected `+` or `-`")),
                };
                let k = self.integer()? as i32;
                self.skip_ws();
                if self.bump() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(Exponent::OmegaPlus(sign * k))
            }
            _ => Err(self.err("expected an exponent")),
        }
    }

    fn integer(&mut self) -> Result<u32, TermError> {
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(c) = self.peek() {
            if let Some(d) = c.to_digit(10) {
                any = true;
                value = value * 10 + d as u64;
                if value > u32::MAX as u64 {
                    return Err(self.err("exponent too large"));
                }
                self.bump();
            } else {
                break;
            }
        }
        if !any {
            return Err(self.err("expected an integer"));
        }
        Ok(value as u32)
    }
}

/// Evaluate a term under a substitution given as `(variable, element)` pairs.
pub fn eval(
    term: &OmegaTerm,
    m: &FiniteMonoid,
    subst: &[(char, usize)],
) -> Result<usize, TermError> {
    let compiled = CompiledTerm::compile(term, &subst.iter().map(|&(c, _)| c).collect::<Vec<_>>())
        .map_err(TermError::UnboundVariable)?;
    let values: Vec<usize> = subst.iter().map(|&(_, e)| e).collect();
    Ok(compiled.eval(m, &values))
}

/// Term with variables resolved to slots, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub(crate) enum CompiledTerm {
    One,
    Slot(usize),
    Concat(Vec<CompiledTerm>),
    Power(Box<CompiledTerm>, Exponent),
}

impl CompiledTerm {
    pub(crate) fn compile(term: &OmegaTerm, vars: &[char]) -> Result<CompiledTerm, char> {
        Ok(match term {
            OmegaTerm::One => CompiledTerm::One,
            OmegaTerm::Var(c) => CompiledTerm::Slot(vars.iter().position(|v| v == c).ok_or(*c)?),
            OmegaTerm::Concat(parts) => CompiledTerm::Concat(
                parts
                    .iter()
                    .map(|p| CompiledTerm::compile(p, vars))
                    .collect::<Result<_, _>>()?,
            ),
            OmegaTerm::Power(base, e) => {
                CompiledTerm::Power(Box::new(CompiledTerm::compile(base, vars)?), *e)
            }
        })
    }

    pub(crate) fn eval(&self, m: &FiniteMonoid, values: &[usize]) -> usize {
        match self {
            CompiledTerm::One => m.identity(),
            CompiledTerm::Slot(i) => values[*i],
            CompiledTerm::Concat(parts) => parts
                .iter()
                .fold(m.identity(), |acc, p| m.mul(acc, p.eval(m, values))),
            CompiledTerm::Power(base, e) => {
                let b = base.eval(m, values);
                match e {
                    Exponent::Int(k) => m.pow(b, *k as u64),
                    Exponent::OmegaPlus(k) => m.omega_power(b, *k as i64),
                }
            }
        }
    }
}

/// Outcome of an exhaustive check; a failed check carries the first witness
/// in the odometer order (variables alphabetical, last variable fastest).
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub holds: bool,
    pub witness: Option<Vec<(char, usize)>>,
    pub substitutions: u64,
}

pub const DEFAULT_CHECK_BUDGET: u64 = 1_000_000_000;

pub fn check_identity(m: &FiniteMonoid, id: &Pseudoidentity) -> Result<CheckOutcome, TermError> {
    check_identity_budgeted(m, id, DEFAULT_CHECK_BUDGET)
}

pub fn check_identity_budgeted(
    m: &FiniteMonoid,
    id: &Pseudoidentity,
    budget: u64,
) -> Result<CheckOutcome, TermError> {
    debug_assert_eq!(id.kind, IdentityKind::Equality);
    exhaustive_check(m, id, budget, |a, b| a == b)
}

pub fn check_inequality(
    om: &OrderedMonoid,
    id: &Pseudoidentity,
) -> Result<CheckOutcome, TermError> {
    check_inequality_budgeted(om, id, DEFAULT_CHECK_BUDGET)
}

pub fn check_inequality_budgeted(
    om: &OrderedMonoid,
    id: &Pseudoidentity,
    budget: u64,
) -> Result<CheckOutcome, TermError> {
    debug_assert_eq!(id.kind, IdentityKind::Inequality);
    exhaustive_check(om.monoid(), id, budget, |a, b| om.leq(a, b))
}

fn exhaustive_check(
    m: &FiniteMonoid,
    id: &Pseudoidentity,
    budget: u64,
    ok: impl Fn(usize, usize) -> bool,
) -> Result<CheckOutcome, TermError> {
    let vars = id.variables();
    let n = m.size();
    let space = (n as u128).pow(vars.len() as u32);
    if space > budget as u128 {
        return Err(TermError::Budget(space, budget));
    }
    let lhs = CompiledTerm::compile(&id.lhs, &vars).map_err(TermError::UnboundVariable)?;
    let rhs = CompiledTerm::compile(&id.rhs, &vars).map_err(TermError::UnboundVariable)?;

    let mut values = vec![0usize; vars.len()];
    let mut count = 0u64;
    loop {
        count += 1;
        if !ok(lhs.eval(m, &values), rhs.eval(m, &values)) {
            let witness = vars.iter().copied().zip(values.iter().copied()).collect();
            return Ok(CheckOutcome {
                holds: false,
                witness: Some(witness),
                substitutions: count,
            });
        }
        // odometer: last variable is the fastest digit
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(CheckOutcome {
                    holds: true,
                    witness: None,
                    substitutions: count,
                });
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{from_generators, stable_closure, Transformation};

    fn cyclic(n: usize) -> FiniteMonoid {
        let mut images: Vec<u32> = (1..n as u32).collect();
        images.push(0);
        from_generators(&[Transformation::new(images)], 1000)
            .unwrap()
            .monoid
    }

    #[test]
    fn parse_examples() {
        let t = parse_term("(x y^w z)^(w+1)").unwrap();
        let expected = OmegaTerm::concat(vec![
            OmegaTerm::var('x'),
            OmegaTerm::var('y').omega(),
            OmegaTerm::var('z'),
        ])
        .pow(Exponent::OmegaPlus(1));
        assert_eq!(t, expected);

        assert_eq!(
            parse_term("x^(w-1)").unwrap(),
            OmegaTerm::var('x').pow(Exponent::OmegaPlus(-1))
        );
        assert_eq!(parse_term("x^w").unwrap(), OmegaTerm::var('x').omega());
        assert_eq!(parse_term("1").unwrap(), OmegaTerm::One);
        assert!(matches!(
            parse_term("x^0"),
            Err(TermError::ZeroExponent { pos: 2 })
        ));
        assert!(matches!(parse_term("x^"), Err(TermError::Parse { .. })));
        assert!(matches!(parse_term(""), Err(TermError::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in ["(xy^wz)^(w+1)", "x^(w-1)", "x^3y", "1", "(xy)^w"] {
            let t = parse_term(text).unwrap();
            let shown = t.to_string();
            assert_eq!(parse_term(&shown).unwrap(), t, "display {shown}");
        }
    }

    #[test]
    fn eval_omega_on_idempotent_is_fixed() {
        let m = cyclic(4);
        let t = parse_term("x^w").unwrap();
        let e = m.identity();
        assert_eq!(eval(&t, &m, &[('x', e)]).unwrap(), e);
    }

    #[test]
    fn eval_in_c2_matches_brute_force() {
        // (x y^2 z)^(w+1) evaluates to x*z in a group of exponent 2
        let m = cyclic(2);
        let t = parse_term("(x y^2 z)^(w+1)").unwrap();
        for x in m.elements() {
            for y in m.elements() {
                for z in m.elements() {
                    let direct = {
                        // brute force: compute x y y z then find idempotent power times itself
                        let base = m.product(&[x, y, y, z]);
                        let mut pows = vec![base];
                        for _ in 0..4 {
                            let last = *pows.last().unwrap();
                            pows.push(m.mul(last, base));
                        }
                        let idem = *pows.iter().find(|&&p| m.is_idempotent(p)).unwrap();
                        m.mul(idem, base)
                    };
                    let got = eval(&t, &m, &[('x', x), ('y', y), ('z', z)]).unwrap();
                    assert_eq!(got, direct);
                    assert_eq!(got, m.mul(x, z));
                }
            }
        }
    }

    #[test]
    fn eval_in_trivial_monoid() {
        let m = from_generators(&[Transformation::identity(1)], 10)
            .unwrap()
            .monoid;
        let t = parse_term("(xy^wz)^(w-3)x^5").unwrap();
        let sub: Vec<(char, usize)> = vec![('x', 0), ('y', 0), ('z', 0)];
        assert_eq!(eval(&t, &m, &sub).unwrap(), 0);
    }

    #[test]
    fn unbound_variable_is_reported() {
        let m = cyclic(2);
        let t = parse_term("xy").unwrap();
        assert!(matches!(
            eval(&t, &m, &[('x', 0)]),
            Err(TermError::UnboundVariable('y'))
        ));
    }

    #[test]
    fn identity_checks_on_c2() {
        let m = cyclic(2);
        // x^(w+1) = x^w fails with witness x = g
        let id =
            Pseudoidentity::equality(parse_term("x^(w+1)").unwrap(), parse_term("x^w").unwrap());
        let out = check_identity(&m, &id).unwrap();
        assert!(!out.holds);
        let g = m.generators()[0];
        assert_eq!(out.witness, Some(vec![('x', g)]));

        // commutative monoid satisfies (x^w y)^w = (y x^w)^w
        let id = Pseudoidentity::equality(
            parse_term("(x^wy)^w").unwrap(),
            parse_term("(yx^w)^w").unwrap(),
        );
        assert!(check_identity(&m, &id).unwrap().holds);

        // t = t is always true
        let id =
            Pseudoidentity::equality(parse_term("(xy)^w").unwrap(), parse_term("(xy)^w").unwrap());
        assert!(check_identity(&m, &id).unwrap().holds);
    }

    #[test]
    fn inequality_checks() {
        let m = cyclic(2);
        let om = crate::monoid::OrderedMonoid::discrete(m);
        // x <= x holds by reflexivity
        let id = Pseudoidentity::inequality(parse_term("x").unwrap(), parse_term("x").unwrap());
        assert!(check_inequality(&om, &id).unwrap().holds);
        // 1 <= x fails under the equality order: 1 and g are incomparable
        let id = Pseudoidentity::inequality(parse_term("1").unwrap(), parse_term("x").unwrap());
        let out = check_inequality(&om, &id).unwrap();
        assert!(!out.holds);
        let g = om.monoid().generators()[0];
        assert_eq!(out.witness, Some(vec![('x', g)]));
    }

    #[test]
    fn ordered_inequality_on_nilpotent_example() {
        // {1, a, 0} with a^2 = 0 admits an order with 1 <= x^2
        let a = Transformation::new(vec![1, 2, 2]);
        let m = from_generators(&[a], 10).unwrap().monoid;
        let required: Vec<(usize, usize)> =
            m.elements().map(|s| (m.identity(), m.mul(s, s))).collect();
        let om = stable_closure(&m, &required).into_ordered(m).unwrap();
        let id = Pseudoidentity::inequality(parse_term("1").unwrap(), parse_term("x^2").unwrap());
        assert!(check_inequality(&om, &id).unwrap().holds);
    }

    #[test]
    fn omega_power_term_laws() {
        let m = cyclic(6);
        for s in m.elements() {
            let idem = eval(&parse_term("x^w").unwrap(), &m, &[('x', s)]).unwrap();
            assert!(m.is_idempotent(idem));
            let lhs = eval(&parse_term("x^(w+1)x^(w-1)").unwrap(), &m, &[('x', s)]).unwrap();
            assert_eq!(lhs, idem);
        }
    }

    #[test]
    fn budget_guard_triggers() {
        let m = cyclic(6);
        let id = Pseudoidentity::equality(
            parse_term("abcdefghijkl").unwrap(),
            parse_term("a").unwrap(),
        );
        assert!(matches!(
            check_identity_budgeted(&m, &id, 1000),
            Err(TermError::Budget(_, 1000))
        ));
    }

    #[test]
    fn exhaustive_agrees_with_sampling() {
        // a sampler over random substitutions must never find a witness the
        // exhaustive pass missed
        use rand::{Rng, SeedableRng};
        let m = cyclic(4);
        let ids = [
            Pseudoidentity::equality(parse_term("(xy)^w").unwrap(), parse_term("(yx)^w").unwrap()),
            Pseudoidentity::equality(parse_term("x^(w+2)").unwrap(), parse_term("x^w").unwrap()),
            Pseudoidentity::equality(parse_term("x^2y^2").unwrap(), parse_term("(xy)^2").unwrap()),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for id in &ids {
            let exhaustive = check_identity(&m, id).unwrap();
            let vars = id.variables();
            let mut sampled_witness = false;
            for _ in 0..500 {
                let sub: Vec<(char, usize)> = vars
                    .iter()
                    .map(|&v| (v, rng.gen_range(0..m.size())))
                    .collect();
                let l = eval(&id.lhs, &m, &sub).unwrap();
                let r = eval(&id.rhs, &m, &sub).unwrap();
                if l != r {
                    sampled_witness = true;
                }
            }
            if sampled_witness {
                assert!(!exhaustive.holds, "sampler found witness for {id}");
            }
        }
    }
}
