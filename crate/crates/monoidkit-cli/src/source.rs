//! Loading monoids and languages from the various input flags.

use std::path::PathBuf;

use clap::Args;
use monoidkit::lang::{
    compile, lang_l2, lang_lemma32, lang_ln, pattern_letters, syntactic_ordered_monoid, Dfa,
    SyntacticResult,
};
use monoidkit::monoid::FiniteMonoid;
use monoidkit::presentations::{
    builder_monoid_0, builder_monoid_1, enumerate_presentation, Presentation,
};

use crate::{element_cap, AppError};

/// Where a monoid or language comes from; exactly one flag must be given.
#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Regular expression pattern for the language.
    #[arg(long)]
    pub regex: Option<String>,
    /// Alphabet for --regex (defaults to the letters of the pattern).
    #[arg(long)]
    pub alphabet: Option<String>,
    /// DFA in the line-based text format.
    #[arg(long)]
    pub dfa_file: Option<PathBuf>,
    /// Monoid multiplication table in the line-based text format.
    #[arg(long)]
    pub monoid_file: Option<PathBuf>,
    /// Built-in language: L2, L3, L4, ..., lemma32-2, lemma32-3, ...
    #[arg(long)]
    pub lang: Option<String>,
    /// Shorthand for `--lang L2`.
    #[arg(long)]
    pub regex_l2: bool,
    /// Built-in presentation monoid: ex0 or ex1 (requires --n >= 2).
    #[arg(long)]
    pub builder: Option<String>,
}

pub enum Source {
    Language(Dfa, String),
    Monoid(FiniteMonoid, String),
}

impl SourceArgs {
    pub fn describe_inputs(&self) -> Vec<(String, String)> {
        let mut inputs = Vec::new();
        if let Some(r) = &self.regex {
            inputs.push(("regex".into(), r.clone()));
        }
        if let Some(a) = &self.alphabet {
            inputs.push(("alphabet".into(), a.clone()));
        }
        if let Some(f) = &self.dfa_file {
            inputs.push(("dfa_file".into(), f.display().to_string()));
        }
        if let Some(f) = &self.monoid_file {
            inputs.push(("monoid_file".into(), f.display().to_string()));
        }
        if let Some(l) = &self.lang {
            inputs.push(("lang".into(), l.clone()));
        }
        if self.regex_l2 {
            inputs.push(("lang".into(), "L2".into()));
        }
        if let Some(b) = &self.builder {
            inputs.push(("builder".into(), b.clone()));
        }
        inputs
    }

    pub fn load(&self, n: u32) -> Result<Source, AppError> {
        let mut given = 0;
        for present in [
            self.regex.is_some(),
            self.dfa_file.is_some(),
            self.monoid_file.is_some(),
            self.lang.is_some(),
            self.regex_l2,
            self.builder.is_some(),
        ] {
            given += present as usize;
        }
        if given != 1 {
            return Err(AppError::usage(
                "exactly one of --regex, --dfa-file, --monoid-file, --lang, --regex-l2, --builder is required",
            ));
        }
        if let Some(pattern) = &self.regex {
            let alphabet: Vec<char> = match &self.alphabet {
                Some(a) => a.chars().collect(),
                None => pattern_letters(pattern),
            };
            let dfa = compile(pattern, &alphabet).map_err(AppError::usage_from)?;
            return Ok(Source::Language(dfa, format!("regex {pattern}")));
        }
        if let Some(path) = &self.dfa_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| AppError::usage(format!("cannot read {}: {e}", path.display())))?;
            let dfa = Dfa::from_text(&text).map_err(AppError::usage_from)?;
            return Ok(Source::Language(dfa, format!("dfa {}", path.display())));
        }
        if let Some(path) = &self.monoid_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| AppError::usage(format!("cannot read {}: {e}", path.display())))?;
            let m = FiniteMonoid::from_text(&text).map_err(AppError::usage_from)?;
            return Ok(Source::Monoid(m, format!("monoid {}", path.display())));
        }
        if self.regex_l2 {
            return Ok(Source::Language(lang_l2(), "L2".into()));
        }
        if let Some(name) = &self.lang {
            let dfa = builtin_language(name)?;
            return Ok(Source::Language(dfa, name.clone()));
        }
        if let Some(name) = &self.builder {
            let p = builtin_presentation(name, n)?;
            let out = enumerate_presentation(&p, element_cap()).map_err(AppError::usage_from)?;
            return Ok(Source::Monoid(out.monoid, format!("builder {name} n={n}")));
        }
        unreachable!("argument count checked above");
    }
}

pub fn builtin_language(name: &str) -> Result<Dfa, AppError> {
    if name == "L2" {
        return Ok(lang_l2());
    }
    if let Some(k) = name.strip_prefix('L') {
        let k: usize = k
            .parse()
            .map_err(|_| AppError::usage(format!("unknown language {name:?}")))?;
        return lang_ln(k).map_err(AppError::usage_from);
    }
    if let Some(k) = name.strip_prefix("lemma32-") {
        let k: usize = k
            .parse()
            .map_err(|_| AppError::usage(format!("unknown language {name:?}")))?;
        return lang_lemma32(k).map_err(AppError::usage_from);
    }
    Err(AppError::usage(format!("unknown language {name:?}")))
}

pub fn builtin_presentation(name: &str, n: u32) -> Result<Presentation, AppError> {
    match name {
        "ex0" => builder_monoid_0(n as usize).map_err(AppError::usage_from),
        "ex1" => builder_monoid_1(n as usize).map_err(AppError::usage_from),
        _ => Err(AppError::usage(format!(
            "unknown builder {name:?} (expected ex0 or ex1)"
        ))),
    }
}

impl Source {
    /// The underlying monoid, computing the syntactic one for languages.
    pub fn into_monoid(self) -> Result<(FiniteMonoid, Option<SyntacticResult>, String), AppError> {
        match self {
            Source::Monoid(m, desc) => Ok((m, None, desc)),
            Source::Language(dfa, desc) => {
                let s =
                    syntactic_ordered_monoid(&dfa, element_cap()).map_err(AppError::from_lang)?;
                Ok((s.monoid().clone(), Some(s), desc))
            }
        }
    }
}
