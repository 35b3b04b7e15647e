//! Command-line workbench for finite monoids and regular languages:
//! syntactic ordered monoids, omega-term identity checking, pseudovariety
//! membership, insertion provability, presentations and Burnside oracles.

mod report;
mod source;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use monoidkit::lang::LangError;
use monoidkit::monoid::green_data;
use monoidkit::presentations::enumerate_presentation;
use monoidkit::provability::provable_leq;
use monoidkit::pseudovar::{membership, survey, PseudovarError, PseudovarOptions, Variety};
use monoidkit::terms::{
    check_identity_budgeted, check_inequality_budgeted, parse_term, Pseudoidentity, TermError,
};
use serde_json::json;

use report::RunReport;
use source::{Source, SourceArgs};

/// Default element cap for closure constructions, overridable through the
/// `MONOIDKIT_ELEMENT_CAP` environment variable.
pub fn element_cap() -> usize {
    std::env::var("MONOIDKIT_ELEMENT_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(monoidkit::monoid::DEFAULT_ELEMENT_CAP)
}

/// Errors with the documented exit codes: 1 usage, 2 budget, 3 internal.
#[derive(Debug)]
pub struct AppError {
    pub code: u8,
    pub message: String,
}

impl AppError {
    pub fn usage(msg: impl Into<String>) -> Self {
        AppError {
            code: 1,
            message: msg.into(),
        }
    }

    pub fn usage_from(e: impl std::fmt::Display) -> Self {
        AppError::usage(e.to_string())
    }

    pub fn budget(e: impl std::fmt::Display) -> Self {
        AppError {
            code: 2,
            message: e.to_string(),
        }
    }

    pub fn internal(e: impl std::fmt::Display) -> Self {
        AppError {
            code: 3,
            message: e.to_string(),
        }
    }

    pub fn from_lang(e: LangError) -> Self {
        match e {
            LangError::Internal(_) => AppError::internal(e),
            _ => AppError::usage_from(e),
        }
    }

    pub fn from_term(e: TermError) -> Self {
        match e {
            TermError::Budget(..) => AppError::budget(e),
            _ => AppError::usage_from(e),
        }
    }

    pub fn from_pseudovar(e: PseudovarError) -> Self {
        match e {
            PseudovarError::Budget { .. } | PseudovarError::PairCap(_) => AppError::budget(e),
            PseudovarError::Term(t) => AppError::from_term(t),
            PseudovarError::Burnside(b) => AppError::usage_from(b),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "monoidkit",
    version,
    about = "workbench for finite monoids and regular languages"
)]
struct Cli {
    /// Emit a JSON run report on stdout instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Syntactic ordered monoid of a language.
    Synt(SyntArgs),
    /// Check an omega-term identity or inequality on a monoid.
    Check(CheckArgs),
    /// Decide membership in one pseudovariety.
    Member(MemberArgs),
    /// All membership columns for one monoid, or for the built-in witnesses.
    Survey(SurveyArgs),
    /// Insertion provability of a word inequality from 1 <= x^n.
    Provable(ProvableArgs),
    /// Enumerate a finite monoid from a presentation.
    Present(PresentArgs),
    /// Burnside group normal forms.
    Burnside(BurnsideArgs),
}

#[derive(Args, Debug)]
struct SyntArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Also compute order data and the 1 <= x^n verdict.
    #[arg(long)]
    order: bool,
    /// Exponent for the 1 <= x^n verdict.
    #[arg(long, default_value_t = 2)]
    n: u32,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Left-hand term.
    #[arg(long)]
    lhs: String,
    /// Right-hand term.
    #[arg(long)]
    rhs: String,
    /// Check the inequality lhs <= rhs in the syntactic order instead of equality.
    #[arg(long)]
    leq: bool,
    /// Exponent threaded to builders that need one.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Substitution budget.
    #[arg(long, default_value_t = monoidkit::terms::DEFAULT_CHECK_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct MemberArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Variety name: J, A, Gn, BG, BGn, BGnU, BGnV, BGnW, EJn, BHn, JmB, JsB, Ord.
    #[arg(long)]
    variety: String,
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Substitution budget for identity checks.
    #[arg(long, default_value_t = monoidkit::terms::DEFAULT_CHECK_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    #[command(flatten)]
    source: SurveySourceArgs,
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Substitution budget for identity checks.
    #[arg(long, default_value_t = monoidkit::terms::DEFAULT_CHECK_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug, Clone)]
struct SurveySourceArgs {
    /// Survey the built-in witness monoids.
    #[arg(long)]
    builtin_witnesses: bool,
    /// Survey a seeded corpus of random transformation monoids.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for --samples.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    single: SourceArgs,
}

#[derive(Args, Debug)]
struct ProvableArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Source word (may be empty).
    #[arg(long, default_value = "")]
    from: String,
    /// Target word.
    #[arg(long)]
    to: String,
}

#[derive(Args, Debug)]
struct PresentArgs {
    /// Built-in presentation: ex0 or ex1.
    #[arg(long)]
    builder: Option<String>,
    /// Presentation file (gens / rel / zero lines).
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Cap on the number of congruence classes.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Args, Debug)]
struct BurnsideArgs {
    /// Exponent n in {1, 2, 3}.
    #[arg(long)]
    n: u32,
    /// Generator names, one character each, e.g. `xy`.
    #[arg(long)]
    gens: String,
    /// Word over the generators.
    #[arg(long)]
    word: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let started = Instant::now();
    let json = cli.json;
    let outcome = run(cli);
    match outcome {
        Ok(report) => {
            report.emit(json, started);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<RunReport, AppError> {
    match cli.command {
        Command::Synt(args) => cmd_synt(args),
        Command::Check(args) => cmd_check(args),
        Command::Member(args) => cmd_member(args),
        Command::Survey(args) => cmd_survey(args),
        Command::Provable(args) => cmd_provable(args),
        Command::Present(args) => cmd_present(args),
        Command::Burnside(args) => cmd_burnside(args),
    }
}

fn cmd_synt(args: SyntArgs) -> Result<RunReport, AppError> {
    let mut report = RunReport::new("synt", args.source.describe_inputs());
    let source = args.source.load(args.n)?;
    let Source::Language(dfa, desc) = source else {
        return Err(AppError::usage(
            "synt expects a language source (--regex, --dfa-file, --lang)",
        ));
    };
    let s = monoidkit::lang::syntactic_ordered_monoid(&dfa, element_cap())
        .map_err(AppError::from_lang)?;
    let m = s.monoid();
    let green = green_data(m);

    let letters: Vec<(String, usize, String)> = s
        .alphabet()
        .iter()
        .map(|&c| {
            let e = s.letter_elem(c).unwrap();
            (c.to_string(), e, m.label_string(e))
        })
        .collect();

    let block_group = green.block_group_shape();
    report.line(format!("language: {desc}"));
    report.line(format!("minimal dfa states: {}", s.minimal_dfa().states()));
    report.line(format!("syntactic monoid size: {}", m.size()));
    report.line(format!("idempotents: {}", green.idempotents.len()));
    report.line(format!(
        "green classes: R={} L={} J={} H={}",
        green.n_r, green.n_l, green.n_j, green.n_h
    ));
    report.line(format!(
        "block group: {} (at most one idempotent per R- and per L-class)",
        if block_group { "yes" } else { "no" }
    ));
    for (c, e, label) in &letters {
        report.line(format!("letter {c} -> element {e} ({label})"));
    }

    let mut results = json!({
        "dfa_states": s.minimal_dfa().states(),
        "size": m.size(),
        "idempotents": green.idempotents.len(),
        "green": {"r": green.n_r, "l": green.n_l, "j": green.n_j, "h": green.n_h},
        "block_group": block_group,
        "letters": letters.iter().map(|(c, e, label)| json!({"letter": c, "element": e, "label": label})).collect::<Vec<_>>(),
    });

    if args.order {
        // syntactic order: u <= v when every context accepting u accepts v
        let strict = s.ordered().strict_pair_count();
        let id = Pseudoidentity::inequality(
            parse_term("1").unwrap(),
            parse_term(&format!("x^{}", args.n)).unwrap(),
        );
        let out =
            check_inequality_budgeted(s.ordered(), &id, monoidkit::terms::DEFAULT_CHECK_BUDGET)
                .map_err(AppError::from_term)?;
        report.line(format!("strict order pairs: {strict}"));
        report.line(format!(
            "1 <= x^{}: {}",
            args.n,
            verdict_str(out.holds, &out.witness, m)
        ));
        results["order"] = json!({
            "strict_pairs": strict,
            "leq_power": {"n": args.n, "holds": out.holds, "witness": witness_json(&out.witness, m)},
        });
    }

    report.results(results);
    Ok(report)
}

fn verdict_str(
    holds: bool,
    witness: &Option<Vec<(char, usize)>>,
    m: &monoidkit::monoid::FiniteMonoid,
) -> String {
    match (holds, witness) {
        (true, _) => "TRUE".to_string(),
        (false, Some(w)) => {
            let parts: Vec<String> = w
                .iter()
                .map(|(v, e)| format!("{v} = {e} ({})", m.label_string(*e)))
                .collect();
            format!("FALSE  witness: {}", parts.join(", "))
        }
        (false, None) => "FALSE".to_string(),
    }
}

fn witness_json(
    witness: &Option<Vec<(char, usize)>>,
    m: &monoidkit::monoid::FiniteMonoid,
) -> serde_json::Value {
    match witness {
        None => serde_json::Value::Null,
        Some(w) => json!(w
            .iter()
            .map(|(v, e)| json!({"var": v.to_string(), "element": e, "label": m.label_string(*e)}))
            .collect::<Vec<_>>()),
    }
}

fn cmd_check(args: CheckArgs) -> Result<RunReport, AppError> {
    let mut inputs = args.source.describe_inputs();
    inputs.push(("lhs".into(), args.lhs.clone()));
    inputs.push(("rhs".into(), args.rhs.clone()));
    let mut report = RunReport::new("check", inputs);

    let lhs = parse_term(&args.lhs).map_err(AppError::from_term)?;
    let rhs = parse_term(&args.rhs).map_err(AppError::from_term)?;
    let source = args.source.load(args.n)?;

    let out;
    let monoid;
    if args.leq {
        let Source::Language(dfa, _) = source else {
            return Err(AppError::usage(
                "--leq needs a language source: the syntactic order comes from the language",
            ));
        };
        let s = monoidkit::lang::syntactic_ordered_monoid(&dfa, element_cap())
            .map_err(AppError::from_lang)?;
        let id = Pseudoidentity::inequality(lhs, rhs);
        out = check_inequality_budgeted(s.ordered(), &id, args.budget)
            .map_err(AppError::from_term)?;
        monoid = s.monoid().clone();
    } else {
        let (m, _, _) = source.into_monoid()?;
        let id = Pseudoidentity::equality(lhs, rhs);
        out = check_identity_budgeted(&m, &id, args.budget).map_err(AppError::from_term)?;
        monoid = m;
    }

    let op = if args.leq { "<=" } else { "=" };
    report.line(format!(
        "{} {} {}: {}",
        args.lhs,
        op,
        args.rhs,
        verdict_str(out.holds, &out.witness, &monoid)
    ));
    report.line(format!("substitutions tested: {}", out.substitutions));
    report.results(json!({
        "lhs": args.lhs,
        "rhs": args.rhs,
        "kind": if args.leq { "inequality" } else { "equality" },
        "holds": out.holds,
        "witness": witness_json(&out.witness, &monoid),
        "substitutions": out.substitutions,
    }));
    Ok(report)
}

fn certificate_json(
    cert: &Option<monoidkit::pseudovar::Certificate>,
    m: &monoidkit::monoid::FiniteMonoid,
) -> serde_json::Value {
    use monoidkit::pseudovar::Certificate;
    match cert {
        None => serde_json::Value::Null,
        Some(Certificate::Identity {
            lhs,
            rhs,
            kind,
            witness,
        }) => json!({
            "type": "identity",
            "lhs": lhs,
            "rhs": rhs,
            "kind": match kind { monoidkit::terms::IdentityKind::Equality => "=", _ => "<=" },
            "witness": witness.iter().map(|(v, e)| json!({"var": v.to_string(), "element": e, "label": m.label_string(*e)})).collect::<Vec<_>>(),
        }),
        Some(Certificate::Structural { reason, elements }) => json!({
            "type": "structural",
            "reason": reason,
            "elements": elements.iter().map(|&e| json!({"element": e, "label": m.label_string(e)})).collect::<Vec<_>>(),
        }),
        Some(Certificate::Constrained {
            identity,
            witness_words,
            lhs_value,
            rhs_value,
        }) => json!({
            "type": "constrained",
            "identity": identity,
            "witness_words": witness_words.iter().map(|(v, w)| json!({"var": v.to_string(), "word": w})).collect::<Vec<_>>(),
            "lhs": {"element": lhs_value, "label": m.label_string(*lhs_value)},
            "rhs": {"element": rhs_value, "label": m.label_string(*rhs_value)},
        }),
    }
}

fn certificate_text(
    cert: &monoidkit::pseudovar::Certificate,
    m: &monoidkit::monoid::FiniteMonoid,
) -> String {
    use monoidkit::pseudovar::Certificate;
    match cert {
        Certificate::Identity {
            lhs,
            rhs,
            kind,
            witness,
        } => {
            let op = match kind {
                monoidkit::terms::IdentityKind::Equality => "=",
                _ => "<=",
            };
            let parts: Vec<String> = witness
                .iter()
                .map(|(v, e)| format!("{v} = {e} ({})", m.label_string(*e)))
                .collect();
            format!("{lhs} {op} {rhs} fails at {}", parts.join(", "))
        }
        Certificate::Structural { reason, elements } => {
            let parts: Vec<String> = elements
                .iter()
                .map(|&e| format!("{e} ({})", m.label_string(e)))
                .collect();
            format!("{reason}: {}", parts.join(", "))
        }
        Certificate::Constrained {
            identity,
            witness_words,
            lhs_value,
            rhs_value,
        } => {
            let parts: Vec<String> = witness_words
                .iter()
                .map(|(v, w)| format!("{v} = {w}"))
                .collect();
            format!(
                "{identity} fails at {} giving {} ({}) != {} ({})",
                parts.join(", "),
                lhs_value,
                m.label_string(*lhs_value),
                rhs_value,
                m.label_string(*rhs_value)
            )
        }
    }
}

fn membership_row_json(
    r: &monoidkit::pseudovar::MembershipReport,
    m: &monoidkit::monoid::FiniteMonoid,
) -> serde_json::Value {
    // row timing is zeroed so the results payload is byte-identical across
    // runs; the envelope carries the real wall-clock total
    json!({
        "variety": r.variety.tag(),
        "verdict": match r.verdict {
            monoidkit::pseudovar::Verdict::Member => "member",
            monoidkit::pseudovar::Verdict::NonMember => "non-member",
            monoidkit::pseudovar::Verdict::Unsupported => "unsupported",
        },
        "certificate": certificate_json(&r.certificate, m),
        "note": r.note,
        "millis": 0,
    })
}

fn membership_row_text(
    r: &monoidkit::pseudovar::MembershipReport,
    m: &monoidkit::monoid::FiniteMonoid,
) -> String {
    let verdict = match r.verdict {
        monoidkit::pseudovar::Verdict::Member => "member".to_string(),
        monoidkit::pseudovar::Verdict::NonMember => match &r.certificate {
            Some(c) => format!("non-member  [{}]", certificate_text(c, m)),
            None => "non-member".to_string(),
        },
        monoidkit::pseudovar::Verdict::Unsupported => {
            format!("unsupported ({})", r.note.as_deref().unwrap_or("-"))
        }
    };
    format!("{:<8} {}", r.variety.tag(), verdict)
}

fn cmd_member(args: MemberArgs) -> Result<RunReport, AppError> {
    let mut inputs = args.source.describe_inputs();
    inputs.push(("variety".into(), args.variety.clone()));
    inputs.push(("n".into(), args.n.to_string()));
    let mut report = RunReport::new("member", inputs);

    let variety = Variety::parse(&args.variety, args.n)
        .ok_or_else(|| AppError::usage(format!("unknown variety {:?}", args.variety)))?;
    let (m, _, desc) = args.source.load(args.n)?.into_monoid()?;
    let opts = PseudovarOptions {
        check_budget: args.budget,
        ..PseudovarOptions::default()
    };
    let r = membership(&m, variety, &opts).map_err(AppError::from_pseudovar)?;

    report.line(format!("monoid: {desc} ({} elements)", m.size()));
    report.line(membership_row_text(&r, &m));
    report.results(json!({
        "monoid": {"description": desc, "size": m.size()},
        "report": membership_row_json(&r, &m),
    }));
    Ok(report)
}

fn builtin_witnesses(n: u32) -> Result<Vec<(String, monoidkit::monoid::FiniteMonoid)>, AppError> {
    use monoidkit::monoid::{from_generators, Transformation};
    let mut out = Vec::new();
    out.push((
        "trivial".to_string(),
        from_generators(&[Transformation::identity(1)], 10)
            .unwrap()
            .monoid,
    ));
    out.push((
        "C2".to_string(),
        from_generators(&[Transformation::new(vec![1, 0])], 10)
            .unwrap()
            .monoid,
    ));
    out.push((
        "C3".to_string(),
        from_generators(&[Transformation::new(vec![1, 2, 0])], 10)
            .unwrap()
            .monoid,
    ));
    let synt =
        |pattern: &str, alphabet: &[char]| -> Result<monoidkit::monoid::FiniteMonoid, AppError> {
            let dfa = monoidkit::lang::compile(pattern, alphabet).map_err(AppError::from_lang)?;
            Ok(
                monoidkit::lang::syntactic_ordered_monoid(&dfa, element_cap())
                    .map_err(AppError::from_lang)?
                    .monoid()
                    .clone(),
            )
        };
    out.push((
        "Synt((abcdbdc)*)".to_string(),
        synt("(abcdbdc)*", &['a', 'b', 'c', 'd'])?,
    ));
    out.push((
        "Synt(L2)".to_string(),
        monoidkit::lang::syntactic_ordered_monoid(&monoidkit::lang::lang_l2(), element_cap())
            .map_err(AppError::from_lang)?
            .monoid()
            .clone(),
    ));
    for (name, builder) in [("presentation(0)", "ex0"), ("presentation(1)", "ex1")] {
        let p = source::builtin_presentation(builder, n)?;
        let m = enumerate_presentation(&p, element_cap())
            .map_err(AppError::usage_from)?
            .monoid;
        out.push((format!("{name} n={n}"), m));
    }
    Ok(out)
}

fn cmd_survey(args: SurveyArgs) -> Result<RunReport, AppError> {
    let mut inputs = args.source.single.describe_inputs();
    inputs.push(("n".into(), args.n.to_string()));
    if args.source.builtin_witnesses {
        inputs.push(("corpus".into(), "builtin-witnesses".into()));
    }
    if let Some(k) = args.source.samples {
        inputs.push(("samples".into(), k.to_string()));
        inputs.push(("seed".into(), args.source.seed.to_string()));
    }
    let mut report = RunReport::new("survey", inputs);
    report.seed(args.source.samples.map(|_| args.source.seed));

    let monoids: Vec<(String, monoidkit::monoid::FiniteMonoid)> = if args.source.builtin_witnesses {
        builtin_witnesses(args.n)?
    } else if let Some(k) = args.source.samples {
        monoidkit::corpus::transformation_monoids(args.source.seed, k, 300)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("sample-{i}"), m))
            .collect()
    } else {
        let (m, _, desc) = args.source.single.load(args.n)?.into_monoid()?;
        vec![(desc, m)]
    };

    let opts = PseudovarOptions {
        check_budget: args.budget,
        ..PseudovarOptions::default()
    };
    let mut rows = Vec::new();
    for (name, m) in &monoids {
        report.line(format!("== {name} ({} elements)", m.size()));
        let reports = survey(m, args.n, &opts);
        for r in &reports {
            report.line(format!("  {}", membership_row_text(r, m)));
        }
        rows.push(json!({
            "monoid": name,
            "size": m.size(),
            "reports": reports.iter().map(|r| membership_row_json(r, m)).collect::<Vec<_>>(),
        }));
    }
    report.results(json!({"n": args.n, "rows": rows}));
    Ok(report)
}

fn cmd_provable(args: ProvableArgs) -> Result<RunReport, AppError> {
    if args.n < 1 {
        return Err(AppError::usage("--n must be at least 1"));
    }
    let inputs = vec![
        ("n".into(), args.n.to_string()),
        ("from".into(), args.from.clone()),
        ("to".into(), args.to.clone()),
    ];
    let mut report = RunReport::new("provable", inputs);
    let out = provable_leq(&args.from, &args.to, args.n);
    if out.provable {
        let proof = out.proof.as_ref().unwrap();
        report.line(format!(
            "PROVABLE: {:?} <= {:?} from 1 <= x^{} in {} insertion(s)",
            args.from,
            args.to,
            args.n,
            proof.steps.len()
        ));
        for (pos, base) in &proof.steps {
            report.line(format!("  insert ({base})^{} at position {pos}", args.n));
        }
    } else {
        report.line(format!(
            "NOT PROVABLE: {:?} <= {:?} from 1 <= x^{}",
            args.from, args.to, args.n
        ));
    }
    report.line(format!("search nodes: {}", out.nodes));
    if out.nodes > 250_000 {
        report.line("warning: large insertion search; worst-case time is exponential".into());
    }
    report.results(json!({
        "provable": out.provable,
        "n": args.n,
        "from": args.from,
        "to": args.to,
        "steps": out.proof.as_ref().map(|p| p.steps.iter().map(|(pos, base)| json!({"position": pos, "base": base})).collect::<Vec<_>>()),
        "nodes": out.nodes,
    }));
    Ok(report)
}

fn cmd_present(args: PresentArgs) -> Result<RunReport, AppError> {
    let mut inputs = Vec::new();
    if let Some(b) = &args.builder {
        inputs.push(("builder".into(), b.clone()));
        inputs.push(("n".into(), args.n.to_string()));
    }
    if let Some(f) = &args.file {
        inputs.push(("file".into(), f.display().to_string()));
    }
    let mut report = RunReport::new("present", inputs);

    let presentation = match (&args.builder, &args.file) {
        (Some(name), None) => source::builtin_presentation(name, args.n)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| AppError::usage(format!("cannot read {}: {e}", path.display())))?;
            monoidkit::presentations::Presentation::from_text(&text)
                .map_err(AppError::usage_from)?
        }
        _ => {
            return Err(AppError::usage(
                "exactly one of --builder, --file is required",
            ))
        }
    };
    let out = enumerate_presentation(&presentation, args.cap).map_err(|e| match e {
        monoidkit::presentations::PresentError::ClassCap(_) => AppError::budget(e),
        monoidkit::presentations::PresentError::Undecided(_) => AppError::budget(e),
        other => AppError::usage_from(other),
    })?;

    report.line(format!("elements: {}", out.monoid.size()));
    report.line(format!(
        "zero: {}",
        out.zero
            .map(|z| z.to_string())
            .unwrap_or_else(|| "none".into())
    ));
    let shown = out
        .normal_forms
        .iter()
        .take(30)
        .cloned()
        .collect::<Vec<_>>()
        .join(", ");
    report.line(format!(
        "normal forms: {shown}{}",
        if out.monoid.size() > 30 { ", ..." } else { "" }
    ));
    report.results(json!({
        "size": out.monoid.size(),
        "zero": out.zero,
        "normal_forms": out.normal_forms,
        "monoid_text": out.monoid.to_text(),
    }));
    Ok(report)
}

fn cmd_burnside(args: BurnsideArgs) -> Result<RunReport, AppError> {
    let inputs = vec![
        ("n".into(), args.n.to_string()),
        ("gens".into(), args.gens.clone()),
        ("word".into(), args.word.clone()),
    ];
    let mut report = RunReport::new("burnside", inputs);
    let names: Vec<char> = args.gens.chars().collect();
    let oracle = monoidkit::burnside::BurnsideOracle::new(args.n, names.len())
        .map_err(AppError::usage_from)?;
    let letters: Vec<usize> = args
        .word
        .chars()
        .map(|c| {
            names.iter().position(|&g| g == c).ok_or_else(|| {
                AppError::usage(format!(
                    "letter {c:?} is not among the generators {:?}",
                    args.gens
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let elem = oracle.sigma(&letters).map_err(AppError::usage_from)?;
    let normal = oracle.format(&elem, &names);
    let is_id = oracle.is_identity(&elem);
    report.line(format!(
        "B({}, {}) has order {}",
        names.len(),
        args.n,
        oracle.group_order()
    ));
    report.line(format!("normal form: {normal}"));
    report.line(format!("is identity: {}", if is_id { "yes" } else { "no" }));
    report.results(json!({
        "n": args.n,
        "generators": args.gens,
        "word": args.word,
        "group_order": oracle.group_order().to_string(),
        "normal_form": normal,
        "is_identity": is_id,
    }));
    Ok(report)
}
