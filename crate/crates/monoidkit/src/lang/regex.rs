//! Pattern syntax for building DFAs: literals, concatenation, `|`, `&`, `*`,
//! `+`, `.` (any letter), `~` (complement) and parentheses. `()` denotes the
//! empty language, so `~()` is all of `A*`. Complement and intersection are
//! performed directly on DFAs.

use super::builders::word_dfa;
use super::{Dfa, LangError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexNode {
    Empty,
    Letter(char),
    Any,
    Concat(Vec<RegexNode>),
    Union(Vec<RegexNode>),
    Inter(Vec<RegexNode>),
    Star(Box<RegexNode>),
    Plus(Box<RegexNode>),
    Not(Box<RegexNode>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn byte_pos(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.src.len())
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

    fn err(&self, msg: impl Into<String>) -> LangError {
        LangError::Parse {
            pos: self.byte_pos(),
            msg: msg.into(),
        }
    }

    fn union(&mut self) -> Result<RegexNode, LangError> {
        let mut parts = vec![self.inter()?];
        loop {
            self.skip_ws();
            if self.peek() == Some('|') {
                self.bump();
                parts.push(self.inter()?);
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RegexNode::Union(parts)
        })
    }

    fn inter(&mut self) -> Result<RegexNode, LangError> {
        let mut parts = vec![self.concat()?];
        loop {
            self.skip_ws();
            if self.peek() == Some('&') {
                self.bump();
                parts.push(self.concat()?);
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RegexNode::Inter(parts)
        })
    }

    fn concat(&mut self) -> Result<RegexNode, LangError> {
        let mut parts = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some('|') | Some('&') | Some(')') => break,
                _ => parts.push(self.prefixed()?),
            }
        }
        Ok(match parts.len() {
            0 => RegexNode::Empty,
            1 => parts.pop().unwrap(),
            _ => RegexNode::Concat(parts),
        })
    }

    fn prefixed(&mut self) -> Result<RegexNode, LangError> {
        self.skip_ws();
        if self.peek() == Some('~') {
            self.bump();
            let inner = self.prefixed()?;
            return Ok(RegexNode::Not(Box::new(inner)));
        }
        self.postfixed()
    }

    fn postfixed(&mut self) -> Result<RegexNode, LangError> {
        let mut node = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    node = RegexNode::Star(Box::new(node));
                }
                Some('+') => {
                    self.bump();
                    node = RegexNode::Plus(Box::new(node));
                }
                _ => break,
            }
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<RegexNode, LangError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.union()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some('.') => {
                self.bump();
                Ok(RegexNode::Any)
            }
            Some(c) if c.is_alphanumeric() => {
                self.bump();
                Ok(RegexNode::Letter(c))
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of pattern")),
        }
    }
}

pub fn parse(pattern: &str) -> Result<RegexNode, LangError> {
    let mut p = Parser::new(pattern);
    let node = p.union()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(node)
}

/// Letters occurring literally in a pattern, in sorted order.
pub fn pattern_letters(pattern: &str) -> Vec<char> {
    let mut letters: Vec<char> = pattern.chars().filter(|c| c.is_alphanumeric()).collect();
    letters.sort_unstable();
    letters.dedup();
    letters
}

/// Compile a pattern to the minimal complete DFA over `alphabet`.
pub fn compile(pattern: &str, alphabet: &[char]) -> Result<Dfa, LangError> {
    if alphabet.is_empty() {
        return Err(LangError::EmptyAlphabet);
    }
    let node = parse(pattern)?;
    check_letters(pattern, alphabet)?;
    Ok(build(&node, alphabet).minimized())
}

fn check_letters(pattern: &str, alphabet: &[char]) -> Result<(), LangError> {
    for (pos, c) in pattern.char_indices() {
        if c.is_alphanumeric() && !alphabet.contains(&c) {
            return Err(LangError::UnknownLetter { pos, ch: c });
        }
    }
    Ok(())
}

fn build(node: &RegexNode, alphabet: &[char]) -> Dfa {
    match node {
        RegexNode::Empty => empty_language(alphabet),
        RegexNode::Letter(c) => word_dfa(&c.to_string(), alphabet),
        RegexNode::Any => {
            let mut dfa = empty_language(alphabet);
            for c in alphabet {
                dfa = dfa.union(&word_dfa(&c.to_string(), alphabet));
            }
            dfa
        }
        RegexNode::Concat(parts) => parts
            .iter()
            .map(|p| build(p, alphabet))
            .reduce(|a, b| a.concat(&b))
            .unwrap(),
        RegexNode::Union(parts) => parts
            .iter()
            .map(|p| build(p, alphabet))
            .reduce(|a, b| a.union(&b))
            .unwrap(),
        RegexNode::Inter(parts) => parts
            .iter()
            .map(|p| build(p, alphabet))
            .reduce(|a, b| a.intersection(&b))
            .unwrap(),
        RegexNode::Star(inner) => build(inner, alphabet).star(),
        RegexNode::Plus(inner) => build(inner, alphabet).plus(),
        RegexNode::Not(inner) => build(inner, alphabet).complement(),
    }
}

fn empty_language(alphabet: &[char]) -> Dfa {
    Dfa::new(
        alphabet.to_vec(),
        1,
        0,
        vec![false],
        vec![0; alphabet.len()],
    )
}
